//! Colored permutations `Z_r wr S_n`: descents, excedances, bad elements,
//! the map onto inversion sequences over `(rn, ..., 2r, r)`, and the
//! symmetric decomposition of the colored binomial Eulerian polynomial.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::invseq::{InvSeq, SVec};
use crate::perms::{all_perms, Perm};
use crate::poly::{binomial, one_plus_z_powers, poly_from_histogram, IntPoly};
use crate::recurrence::refined_polys;

/// Exhaustive colored sums are skipped above this many elements.
pub const DEFAULT_ORACLE_CAP: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColoredPerm {
    perm: Perm,
    colors: Vec<usize>,
    r: usize,
}

impl ColoredPerm {
    pub fn new(perm: Perm, colors: Vec<usize>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be positive".into()));
        }
        if colors.len() != perm.len() {
            return domain(format!(
                "{} colors for a permutation of length {}",
                colors.len(),
                perm.len()
            ));
        }
        if let Some(&c) = colors.iter().find(|&&c| c >= r) {
            return domain(format!("color {c} is not below r = {r}"));
        }
        Ok(ColoredPerm { perm, colors, r })
    }

    /// Builds from `(value, color)` pairs.
    pub fn from_pairs(pairs: &[(usize, usize)], r: usize) -> Result<Self> {
        let perm = Perm::new(pairs.iter().map(|p| p.0).collect())?;
        Self::new(perm, pairs.iter().map(|p| p.1).collect(), r)
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

impl fmt::Display for ColoredPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .perm
            .word()
            .iter()
            .zip(&self.colors)
            .map(|(v, c)| format!("{v}^{c}"));
        write!(f, "{}", parts.format(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignClass {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredStats {
    pub des: usize,
    pub exc: usize,
    pub is_derangement: bool,
    /// Bad elements (values, not positions) in increasing order.
    pub bad_set: Vec<usize>,
    pub sign_class: SignClass,
}

fn stats_of(w: &[usize], c: &[usize]) -> ColoredStats {
    let n = w.len();
    let mut des = 0;
    for i in 0..n {
        let (nw, nc) = if i + 1 < n {
            (w[i + 1], c[i + 1])
        } else {
            (n + 1, 0)
        };
        if c[i] > nc || (c[i] == nc && w[i] > nw) {
            des += 1;
        }
    }
    let exc = (0..n)
        .filter(|&i| w[i] > i + 1 || (w[i] == i + 1 && c[i] > 0))
        .count();
    let is_derangement = (0..n).all(|i| !(w[i] == i + 1 && c[i] == 0));

    // suffix_min[j] = min of w[j..], with n + 1 past the end
    let mut suffix_min = vec![n + 1; n + 1];
    for j in (0..n).rev() {
        suffix_min[j] = suffix_min[j + 1].min(w[j]);
    }
    let mut bad_set: Vec<usize> = (0..n)
        .filter(|&j| {
            let (pw, pc) = if j == 0 { (0, 0) } else { (w[j - 1], c[j - 1]) };
            w[j] < suffix_min[j + 1] && pw < suffix_min[j] && pc == c[j]
        })
        .map(|j| w[j])
        .collect();
    bad_set.sort_unstable();
    let sign_class = match c.last() {
        Some(&x) if x > 0 => SignClass::Minus,
        _ => SignClass::Plus,
    };
    ColoredStats {
        des,
        exc,
        is_derangement,
        bad_set,
        sign_class,
    }
}

pub fn colored_stats(sigma: &ColoredPerm) -> ColoredStats {
    stats_of(sigma.perm.word(), &sigma.colors)
}

/// Every element of `Z_r wr S_n`.
pub fn all_colored(n: usize, r: usize) -> Result<Vec<ColoredPerm>> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let colorings: Vec<Vec<usize>> = if n == 0 {
        vec![Vec::new()]
    } else {
        (0..n).map(|_| 0..r).multi_cartesian_product().collect()
    };
    Ok(all_perms(n)
        .flat_map(|p| {
            colorings.iter().map(move |c| ColoredPerm {
                perm: p.clone(),
                colors: c.clone(),
                r,
            })
        })
        .collect())
}

/// `r^n n!`, if it fits.
pub fn colored_count(n: usize, r: usize) -> Option<u64> {
    let mut total: u64 = 1;
    for i in 1..=n {
        total = total.checked_mul(i as u64)?.checked_mul(r as u64)?;
    }
    Some(total)
}

/// `Psi(sigma)_i = (n - i + 1) c_i + t_i` over `(rn, ..., r)`.
pub fn psi(sigma: &ColoredPerm) -> InvSeq {
    let n = sigma.len();
    let code = sigma.perm.lehmer_code();
    let values = (0..n)
        .map(|i| (n - i) * sigma.colors[i] + code[i])
        .collect();
    InvSeq::new_unchecked(values)
}

pub fn psi_inv(e: &InvSeq, r: usize) -> Result<ColoredPerm> {
    let n = e.len();
    InvSeq::new(e.values().to_vec(), &SVec::colored(n, r)?)?;
    let (colors, code): (Vec<usize>, Vec<usize>) = e
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| (x / (n - i), x % (n - i)))
        .unzip();
    ColoredPerm::new(Perm::from_lehmer_code(&code)?, colors, r)
}

/// `A_{n,r}(z) = sum z^des`.
pub fn colored_eulerian(n: usize, r: usize) -> Result<IntPoly> {
    let mut counts = vec![0u64; n + 1];
    for s in all_colored(n, r)? {
        counts[colored_stats(&s).des] += 1;
    }
    Ok(IntPoly::from_counts(&counts))
}

/// `d_{n,r}(z) = sum z^exc` over colored derangements.
pub fn colored_derangement(n: usize, r: usize) -> Result<IntPoly> {
    let mut counts = vec![0u64; n + 1];
    for s in all_colored(n, r)? {
        let st = colored_stats(&s);
        if st.is_derangement {
            counts[st.exc] += 1;
        }
    }
    Ok(IntPoly::from_counts(&counts))
}

/// Descent sums over bad-free elements of each class; `(1, 0)` at `n = 0`.
pub fn d_plus_minus(n: usize, r: usize) -> Result<(IntPoly, IntPoly)> {
    let mut plus = vec![0u64; n + 1];
    let mut minus = vec![0u64; n + 1];
    for s in all_colored(n, r)? {
        let st = colored_stats(&s);
        if st.bad_set.is_empty() {
            match st.sign_class {
                SignClass::Plus => plus[st.des] += 1,
                SignClass::Minus => minus[st.des] += 1,
            }
        }
    }
    Ok((IntPoly::from_counts(&plus), IntPoly::from_counts(&minus)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ATildeParts {
    pub plus: IntPoly,
    pub minus: IntPoly,
    pub total: IntPoly,
}

/// The decomposition from the refined polynomials over `(rn, ..., r)`.
pub fn a_tilde_fast(n: usize, r: usize) -> Result<ATildeParts> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let fam = refined_polys(&SVec::colored(n, r)?)?;
    let plus = fam.polys[0].clone();
    let minus: IntPoly = fam.polys[1..].iter().sum();
    let total = &plus + &minus;
    Ok(ATildeParts { plus, minus, total })
}

/// Parts from `sum_k C(n,k) (1+z)^{n-k} d^pm_{k,r}`.
pub fn a_tilde_by_derangements(n: usize, r: usize) -> Result<ATildeParts> {
    let powers = one_plus_z_powers(n);
    let mut plus = IntPoly::zero();
    let mut minus = IntPoly::zero();
    for k in 0..=n {
        let (dp, dm) = d_plus_minus(k, r)?;
        let w = powers[n - k].scale(&binomial(n, k));
        plus += &w * &dp;
        minus += &w * &dm;
    }
    let total = &plus + &minus;
    Ok(ATildeParts { plus, minus, total })
}

/// Parts from `sum (1+z)^bad z^des` over each class.
pub fn a_tilde_by_bad_des(n: usize, r: usize) -> Result<ATildeParts> {
    let mut plus = vec![vec![0u64; n + 1]; n + 1];
    let mut minus = vec![vec![0u64; n + 1]; n + 1];
    for s in all_colored(n, r)? {
        let st = colored_stats(&s);
        let table = match st.sign_class {
            SignClass::Plus => &mut plus,
            SignClass::Minus => &mut minus,
        };
        table[st.bad_set.len()][st.des] += 1;
    }
    let plus = poly_from_histogram(&plus);
    let minus = poly_from_histogram(&minus);
    let total = &plus + &minus;
    Ok(ATildeParts { plus, minus, total })
}

/// `sum_m C(n,m) z^{n-m} A_{m,r}`.
pub fn a_tilde_by_definition(n: usize, r: usize) -> Result<IntPoly> {
    let mut total = IntPoly::zero();
    for m in 0..=n {
        total += colored_eulerian(m, r)?.shift(n - m).scale(&binomial(n, m));
    }
    Ok(total)
}

/// The fast decomposition, cross-checked against the enumerative routes when
/// `r^n n!` is at most `cap`.
pub fn a_tilde_parts(n: usize, r: usize, cap: u64) -> Result<ATildeParts> {
    let fast = a_tilde_fast(n, r)?;
    if colored_count(n, r).is_some_and(|c| c <= cap) {
        let by_der = a_tilde_by_derangements(n, r)?;
        let by_bad = a_tilde_by_bad_des(n, r)?;
        let by_def = a_tilde_by_definition(n, r)?;
        if by_der != fast || by_bad != fast || by_def != fast.total {
            return Err(Error::Consistency(format!(
                "colored binomial Eulerian routes disagree at n = {n}, r = {r}"
            )));
        }
    }
    Ok(fast)
}

/// Relabels `sigma0` onto `[n] \ T` and inserts the elements of `T` so that
/// they become exactly the bad elements.
pub fn bad_insertion_construct(sigma0: &ColoredPerm, t: &[usize], n: usize) -> Result<ColoredPerm> {
    let k = sigma0.len();
    if !colored_stats(sigma0).bad_set.is_empty() {
        return domain(format!("{sigma0} has bad elements"));
    }
    if t.len() + k != n {
        return domain(format!(
            "|T| = {} but n - k = {}",
            t.len(),
            n as isize - k as isize
        ));
    }
    if t.windows(2).any(|p| p[0] >= p[1]) || t.iter().any(|&x| x == 0 || x > n) {
        return domain(format!("T = {t:?} is not an increasing subset of [{n}]"));
    }
    let rest: Vec<usize> = (1..=n).filter(|x| t.binary_search(x).is_err()).collect();
    let mut word: Vec<usize> = sigma0.perm.word().iter().map(|&j| rest[j - 1]).collect();
    let mut colors = sigma0.colors.clone();
    for &i in t {
        if i == 1 {
            word.insert(0, 1);
            colors.insert(0, 0);
            continue;
        }
        // rightmost right-to-left minimum below i
        let mut suffix_min = usize::MAX;
        let mut pos = None;
        for j in (0..word.len()).rev() {
            if word[j] < suffix_min {
                suffix_min = word[j];
                if word[j] < i {
                    pos = Some(j);
                    break;
                }
            }
        }
        let j = pos.expect("1 precedes every other insertion");
        word.insert(j + 1, i);
        colors.insert(j + 1, colors[j]);
    }
    ColoredPerm::new(Perm::new(word)?, colors, sigma0.r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invseq::stats;
    use crate::perms::eulerian_poly;
    use crate::realroot::{interlaces, is_real_rooted};
    use crate::recurrence::binomial_eulerian;
    use num_traits::Signed;
    use std::collections::HashSet;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn cp(pairs: &[(usize, usize)], r: usize) -> ColoredPerm {
        ColoredPerm::from_pairs(pairs, r).unwrap()
    }

    #[test]
    fn stat_examples() {
        let st = colored_stats(&cp(&[(1, 1)], 2));
        assert_eq!((st.des, st.exc, st.is_derangement), (1, 1, true));
        assert!(st.bad_set.is_empty());
        assert_eq!(st.sign_class, SignClass::Minus);

        let st = colored_stats(&cp(&[(1, 0)], 2));
        assert_eq!((st.des, st.exc, st.is_derangement), (0, 0, false));
        assert_eq!(st.bad_set, vec![1]);
        assert_eq!(st.sign_class, SignClass::Plus);

        let st = colored_stats(&cp(&[(2, 1), (1, 0)], 2));
        assert_eq!((st.des, st.exc, st.is_derangement), (1, 1, true));
        assert!(st.bad_set.is_empty());

        assert!(ColoredPerm::from_pairs(&[(1, 2)], 2).is_err());
        assert!(ColoredPerm::from_pairs(&[(2, 0)], 2).is_err());
        assert!(ColoredPerm::new(Perm::identity(1), vec![0], 0).is_err());
    }

    #[test]
    fn psi_examples() {
        let e = psi(&cp(&[(2, 1), (1, 0)], 2));
        assert_eq!(e.values(), &[3, 0]);
        let s = SVec::colored(2, 2).unwrap();
        assert_eq!(s.entries(), &[4, 2]);
        assert_eq!(stats(&e, &s).unwrap().des, 1);
        let id = ColoredPerm::new(Perm::identity(3), vec![0; 3], 3).unwrap();
        assert_eq!(psi(&id).values(), &[0, 0, 0]);
        let wide = SVec::new(vec![9, 9]).unwrap();
        assert!(psi_inv(&InvSeq::new(vec![5, 0], &wide).unwrap(), 2).is_err());
    }

    #[test]
    fn psi_transports_statistics() {
        for r in 1..=3 {
            for n in 1..=4 {
                let s = SVec::colored(n, r).unwrap();
                let mut seen = HashSet::new();
                for sigma in all_colored(n, r).unwrap() {
                    let e = psi(&sigma);
                    let e = InvSeq::new(e.values().to_vec(), &s).unwrap();
                    let st = colored_stats(&sigma);
                    let es = stats(&e, &s).unwrap();
                    assert_eq!(st.des, es.des, "{sigma}");
                    assert_eq!(st.bad_set.len(), es.col_prime, "{sigma}");
                    assert_eq!(st.sign_class == SignClass::Plus, e.values()[n - 1] == 0);
                    assert_eq!(psi_inv(&e, r).unwrap(), sigma);
                    seen.insert(e);
                }
                assert_eq!(seen.len() as u64, colored_count(n, r).unwrap());
            }
        }
    }

    #[test]
    fn colored_polys() {
        assert_eq!(colored_eulerian(1, 2).unwrap(), p(&[1, 1]));
        assert_eq!(colored_derangement(2, 2).unwrap(), p(&[0, 4, 1]));
        for n in 0..=5 {
            assert_eq!(colored_eulerian(n, 1).unwrap(), eulerian_poly(n));
        }
        assert_eq!(d_plus_minus(1, 2).unwrap(), (IntPoly::zero(), p(&[0, 1])));
        for r in 1..=3 {
            assert_eq!(
                d_plus_minus(0, r).unwrap(),
                (IntPoly::one(), IntPoly::zero())
            );
            for n in 0..=4 {
                let (dp, dm) = d_plus_minus(n, r).unwrap();
                assert_eq!(
                    &dp + &dm,
                    colored_derangement(n, r).unwrap(),
                    "n = {n}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn decomposition_routes() {
        let parts = a_tilde_parts(1, 2, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(parts.plus, p(&[1, 1]));
        assert_eq!(parts.minus, p(&[0, 1]));
        assert_eq!(parts.total, p(&[1, 2]));
        for r in 1..=3 {
            for n in 1..=4 {
                let parts = a_tilde_parts(n, r, DEFAULT_ORACLE_CAP).unwrap();
                let head =
                    SVec::new(SVec::colored(n, r).unwrap().entries()[..n - 1].to_vec()).unwrap();
                assert_eq!(parts.plus, binomial_eulerian(&head), "n = {n}, r = {r}");
                if r == 1 {
                    assert!(parts.minus.is_zero());
                }
            }
        }
        assert!(a_tilde_parts(0, 2, DEFAULT_ORACLE_CAP).is_err());
    }

    #[test]
    fn decomposition_shape() {
        for r in 2..=3 {
            for n in 1..=5 {
                let parts = a_tilde_parts(n, r, DEFAULT_ORACLE_CAP).unwrap();
                assert!(
                    interlaces(&parts.plus, &parts.minus).holds,
                    "n = {n}, r = {r}"
                );
                assert!(is_real_rooted(&parts.total));
                let reduced = parts.minus.unshift(1).unwrap();
                assert_eq!(
                    parts.total.symmetric_decompose(n).unwrap(),
                    (parts.plus.clone(), reduced.clone())
                );
                let g_plus = parts.plus.gamma_expand(n).unwrap();
                let g_minus = reduced.gamma_expand(n - 1).unwrap();
                assert!(g_plus.iter().chain(&g_minus).all(|g| !g.is_negative()));
            }
        }
    }

    #[test]
    fn insertion_examples() {
        let empty = ColoredPerm::new(Perm::identity(0), vec![], 2).unwrap();
        let sigma = bad_insertion_construct(&empty, &[1], 1).unwrap();
        assert_eq!(sigma, cp(&[(1, 0)], 2));
        assert_eq!(colored_stats(&sigma).bad_set, vec![1]);

        let one = cp(&[(1, 1)], 2);
        assert_eq!(bad_insertion_construct(&one, &[], 1).unwrap(), one);
        assert!(bad_insertion_construct(&cp(&[(1, 0)], 2), &[], 1).is_err());
        assert!(bad_insertion_construct(&one, &[1], 1).is_err());
        assert!(bad_insertion_construct(&one, &[3, 2], 3).is_err());
    }

    #[test]
    fn insertion_is_a_bijection() {
        let r = 2;
        for n in 0..=3 {
            let mut seen = HashSet::new();
            for k in 0..=n {
                let bases: Vec<ColoredPerm> = all_colored(k, r)
                    .unwrap()
                    .into_iter()
                    .filter(|s| colored_stats(s).bad_set.is_empty())
                    .collect();
                for t in (1..=n).combinations(n - k) {
                    for base in &bases {
                        let sigma = bad_insertion_construct(base, &t, n).unwrap();
                        let st = colored_stats(&sigma);
                        assert_eq!(st.bad_set, t, "{base} + {t:?} -> {sigma}");
                        assert_eq!(st.des, colored_stats(base).des);
                        assert!(seen.insert(sigma));
                    }
                }
            }
            assert_eq!(seen.len() as u64, colored_count(n, r).unwrap());
        }
    }
}
