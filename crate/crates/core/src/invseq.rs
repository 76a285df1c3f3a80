//! s-inversion sequences and their brute-force generating polynomials.
//!
//! Everything here is computed straight from the definitions by enumerating
//! every sequence, and serves as the reference the fast paths are checked
//! against. Ratio comparisons `e_i/s_i` vs `e_{i+1}/s_{i+1}` are done by
//! cross-multiplication. The boundary conventions `e_0 = e_{n+1} = 0`,
//! `s_0 = s_{n+1} = 1` apply, so a sequence of length `n` has `n + 1`
//! comparison pairs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::poly::{poly_from_histogram, IntPoly};

/// A sequence `s = (s_1, ..., s_n)` of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SVec(Vec<usize>);

impl SVec {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|&x| x == 0) {
            return Err(Error::InvalidParameter(format!(
                "s entries must be positive (s_{} = 0)",
                i + 1
            )));
        }
        Ok(SVec(entries))
    }

    pub fn empty() -> Self {
        SVec(Vec::new())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `s_i` with the conventions `s_0 = s_{n+1} = 1`.
    pub fn get(&self, i: usize) -> usize {
        if i == 0 || i > self.0.len() {
            1
        } else {
            self.0[i - 1]
        }
    }

    /// `s_n`, when the sequence is nonempty.
    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Number of s-inversion sequences, `None` on overflow.
    pub fn count(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(1u64, |acc, &x| acc.checked_mul(x as u64))
    }

    /// `(2, 3, ..., n)`
    pub fn staircase(n: usize) -> Self {
        SVec((2..=n).collect())
    }

    /// `(rn, r(n-1), ..., r)`
    pub fn colored(n: usize, r: usize) -> Result<Self> {
        Self::new((1..=n).rev().map(|i| i * r).collect())
    }

    /// `(r, ..., r)` with `m` entries.
    pub fn constant(m: usize, r: usize) -> Result<Self> {
        Self::new(vec![r; m])
    }
}

impl TryFrom<Vec<usize>> for SVec {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        SVec::new(v)
    }
}

impl From<SVec> for Vec<usize> {
    fn from(s: SVec) -> Self {
        s.0
    }
}

impl fmt::Display for SVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An s-inversion sequence `(e_1, ..., e_n)` with `0 <= e_i < s_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvSeq(Vec<usize>);

impl InvSeq {
    pub fn new(values: Vec<usize>, s: &SVec) -> Result<Self> {
        if values.len() != s.len() {
            return domain(format!(
                "sequence of length {} does not match s of length {}",
                values.len(),
                s.len()
            ));
        }
        if let Some(i) = values.iter().zip(s.entries()).position(|(e, s)| e >= s) {
            return domain(format!(
                "e_{} = {} is not below s_{}",
                i + 1,
                values[i],
                i + 1
            ));
        }
        Ok(InvSeq(values))
    }

    pub(crate) fn new_unchecked(values: Vec<usize>) -> Self {
        InvSeq(values)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Ascent, collision and descent counts over the `n + 1` pairs, and
/// collisions over the first `n` pairs only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct StatTuple {
    pub asc: usize,
    pub col: usize,
    pub des: usize,
    pub col_prime: usize,
}

/// Compares `e_i/s_i` with `e_{i+1}/s_{i+1}` at every pair index `i in [0, n]`.
fn pair_comparisons<'a>(
    values: &'a [usize],
    s: &'a [usize],
) -> impl Iterator<Item = Ordering> + 'a {
    let n = values.len();
    let e = move |i: usize| if i == 0 || i > n { 0 } else { values[i - 1] };
    let sv = move |i: usize| if i == 0 || i > n { 1 } else { s[i - 1] };
    (0..=n).map(move |i| (e(i) * sv(i + 1)).cmp(&(e(i + 1) * sv(i))))
}

fn stats_raw(values: &[usize], s: &[usize]) -> StatTuple {
    let n = values.len();
    let mut st = StatTuple::default();
    for (i, ord) in pair_comparisons(values, s).enumerate() {
        match ord {
            Ordering::Less => st.asc += 1,
            Ordering::Greater => st.des += 1,
            Ordering::Equal => {
                st.col += 1;
                if i < n {
                    st.col_prime += 1;
                }
            }
        }
    }
    st
}

pub fn stats(e: &InvSeq, s: &SVec) -> Result<StatTuple> {
    if e.len() != s.len() {
        return domain(format!(
            "sequence length {} vs s length {}",
            e.len(),
            s.len()
        ));
    }
    Ok(stats_raw(&e.0, &s.0))
}

/// Odometer over all s-inversion sequences in lexicographic order.
pub struct InversionSequences {
    s: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl Iterator for InversionSequences {
    type Item = InvSeq;

    fn next(&mut self) -> Option<InvSeq> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.s[i] {
                break;
            }
            cur[i] = 0;
        }
        Some(InvSeq(out))
    }
}

pub fn enumerate_inversion_sequences(s: &SVec) -> InversionSequences {
    InversionSequences {
        s: s.0.clone(),
        current: Some(vec![0; s.len()]),
    }
}

/// Visits every sequence without allocating per item.
pub(crate) fn for_each_sequence(s: &[usize], mut visit: impl FnMut(&[usize])) {
    let mut cur = vec![0usize; s.len()];
    loop {
        visit(&cur);
        let mut i = cur.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < s[i] {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// `sum_e (1+z)^col(e) z^asc(e)`
pub fn brute_binomial_eulerian(s: &SVec) -> IntPoly {
    let n = s.len();
    let mut table = vec![vec![0u64; n + 2]; n + 2];
    for_each_sequence(&s.0, |e| {
        let st = stats_raw(e, &s.0);
        table[st.col][st.asc] += 1;
    });
    poly_from_histogram(&table)
}

/// `sum_e z^asc(e)`
pub fn brute_s_eulerian(s: &SVec) -> IntPoly {
    let mut counts = vec![0u64; s.len() + 2];
    for_each_sequence(&s.0, |e| counts[stats_raw(e, &s.0).asc] += 1);
    IntPoly::from_counts(&counts)
}

/// `sum_{col(e) = 0} z^asc(e)`
pub fn brute_s_derangement(s: &SVec) -> IntPoly {
    let mut counts = vec![0u64; s.len() + 2];
    for_each_sequence(&s.0, |e| {
        let st = stats_raw(e, &s.0);
        if st.col == 0 {
            counts[st.asc] += 1;
        }
    });
    IntPoly::from_counts(&counts)
}

/// `(p_{n,0}, ..., p_{n,s_n - 1})` with
/// `p_{n,k} = sum_{e_n = k} (1+z)^col'(e) z^asc(e)`.
pub fn brute_refined(s: &SVec) -> Result<Vec<IntPoly>> {
    let Some(last) = s.last() else {
        return domain("refined polynomials need a nonempty s");
    };
    let n = s.len();
    let mut tables = vec![vec![vec![0u64; n + 1]; n + 1]; last];
    for_each_sequence(&s.0, |e| {
        let st = stats_raw(e, &s.0);
        tables[e[n - 1]][st.col_prime][st.asc] += 1;
    });
    Ok(tables.iter().map(|t| poly_from_histogram(t)).collect())
}

/// `f(e)_i = -e_i mod s_i`
pub fn involution_f(e: &InvSeq, s: &SVec) -> Result<InvSeq> {
    if e.len() != s.len() {
        return domain(format!(
            "sequence length {} vs s length {}",
            e.len(),
            s.len()
        ));
    }
    Ok(InvSeq(
        e.0.iter().zip(&s.0).map(|(&x, &m)| (m - x) % m).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn sv(v: &[usize]) -> SVec {
        SVec::new(v.to_vec()).unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn st(asc: usize, col: usize, des: usize, col_prime: usize) -> StatTuple {
        StatTuple {
            asc,
            col,
            des,
            col_prime,
        }
    }

    #[test]
    fn enumeration() {
        let all: Vec<_> = enumerate_inversion_sequences(&sv(&[2]))
            .map(|e| e.0)
            .collect();
        assert_eq!(all, vec![vec![0], vec![1]]);
        let all: Vec<_> = enumerate_inversion_sequences(&sv(&[2, 3])).collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let all: Vec<_> = enumerate_inversion_sequences(&SVec::empty()).collect();
        assert_eq!(all, vec![InvSeq(vec![])]);
        assert_eq!(enumerate_inversion_sequences(&sv(&[1, 1, 1])).count(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SVec::new(vec![2, 0]),
            Err(Error::InvalidParameter(_))
        ));
        assert!(InvSeq::new(vec![2], &sv(&[2])).is_err());
        assert!(InvSeq::new(vec![0, 0], &sv(&[2])).is_err());
        assert!(stats(&InvSeq(vec![0]), &sv(&[2, 3])).is_err());
        assert!(involution_f(&InvSeq(vec![0]), &sv(&[2, 3])).is_err());
        assert!(brute_refined(&SVec::empty()).is_err());
    }

    #[test]
    fn statistic_examples() {
        let s = sv(&[2]);
        assert_eq!(
            stats(&InvSeq::new(vec![0], &s).unwrap(), &s).unwrap(),
            st(0, 2, 0, 1)
        );
        let s = sv(&[2, 3]);
        assert_eq!(
            stats(&InvSeq::new(vec![1, 2], &s).unwrap(), &s).unwrap(),
            st(2, 0, 1, 0)
        );
        for n in 0..6 {
            let s = SVec::new((2..n + 2).collect()).unwrap();
            let z = InvSeq(vec![0; n]);
            assert_eq!(stats(&z, &s).unwrap(), st(0, n + 1, 0, n));
        }
    }

    #[test]
    fn brute_polynomials() {
        assert_eq!(brute_binomial_eulerian(&sv(&[2])), p(&[1, 3, 1]));
        assert_eq!(brute_binomial_eulerian(&sv(&[2, 3])), p(&[1, 7, 7, 1]));
        assert_eq!(brute_binomial_eulerian(&SVec::empty()), p(&[1, 1]));

        assert_eq!(brute_s_eulerian(&sv(&[2])), p(&[1, 1]));
        assert_eq!(brute_s_eulerian(&sv(&[1, 2, 3])), p(&[1, 4, 1]));
        assert_eq!(brute_s_eulerian(&SVec::empty()), p(&[1]));

        assert_eq!(brute_s_derangement(&sv(&[2])), p(&[0, 1]));
        assert_eq!(brute_s_derangement(&sv(&[2, 3])), p(&[0, 1, 1]));
        assert_eq!(brute_s_derangement(&SVec::empty()), IntPoly::zero());

        assert_eq!(
            brute_refined(&sv(&[2])).unwrap(),
            vec![p(&[1, 1]), p(&[0, 1])]
        );
        let refined = brute_refined(&sv(&[2, 3])).unwrap();
        assert_eq!(refined, vec![p(&[1, 3, 1]), p(&[0, 2, 1]), p(&[0, 1, 2])]);
        let recombined =
            &(&IntPoly::one_plus_z() * &refined[0]) + &refined[1..].iter().sum::<IntPoly>();
        assert_eq!(recombined, p(&[1, 7, 7, 1]));
    }

    #[test]
    fn involution_examples() {
        let s = sv(&[2, 3]);
        let e = InvSeq::new(vec![1, 2], &s).unwrap();
        let fe = involution_f(&e, &s).unwrap();
        assert_eq!(fe.values(), &[1, 1]);
        assert_eq!(stats(&fe, &s).unwrap().des, 2);
        let z = InvSeq(vec![0, 0]);
        assert_eq!(involution_f(&z, &s).unwrap(), z);
    }

    fn small_s() -> impl Strategy<Value = SVec> {
        prop::collection::vec(1usize..=6, 0..=5).prop_map(|v| SVec::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn statistics_invariants(s in small_s()) {
            let n = s.len();
            let mut weighted = BigInt::from(0);
            for e in enumerate_inversion_sequences(&s) {
                let t = stats(&e, &s).unwrap();
                prop_assert_eq!(t.asc + t.col + t.des, n + 1);
                let last_zero = e.values().last().is_none_or(|&x| x == 0);
                prop_assert_eq!(t.col, t.col_prime + usize::from(last_zero));
                let fe = involution_f(&e, &s).unwrap();
                prop_assert_eq!(&involution_f(&fe, &s).unwrap(), &e);
                let ft = stats(&fe, &s).unwrap();
                prop_assert_eq!((ft.asc, ft.des, ft.col, ft.col_prime), (t.des, t.asc, t.col, t.col_prime));
                weighted += BigInt::from(1u64 << t.col);
            }
            let count = s.count().unwrap();
            prop_assert_eq!(brute_s_eulerian(&s).eval(&BigInt::from(1)), BigInt::from(count));
            prop_assert_eq!(brute_binomial_eulerian(&s).eval(&BigInt::from(1)), weighted);
            if n > 0 {
                let refined = brute_refined(&s).unwrap();
                let recombined = &(&IntPoly::one_plus_z() * &refined[0]) + &refined[1..].iter().sum::<IntPoly>();
                prop_assert_eq!(recombined, brute_binomial_eulerian(&s));
            }
        }
    }
}
