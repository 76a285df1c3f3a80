//! h-polynomials attached to the r-th edgewise subdivision of a simplex:
//! the `E_r` closed forms, local h-polynomials, word enumerators and the
//! interlacing family of r-sections of `(1 + z + ... + z^r)^n`.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::poly::{binomial, one_plus_z_powers, poly_from_histogram, IntPoly};
use crate::recurrence::{apply_thresholds, Marker};

/// A word `w_0 ... w_m` over `[0, r-1]` with `w_0 = w_m = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Word {
    letters: Vec<usize>,
    r: usize,
}

impl Word {
    pub fn new(letters: Vec<usize>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("r must be positive".into()));
        }
        if letters.first() != Some(&0) || letters.last() != Some(&0) {
            return domain(format!("{letters:?} must start and end with 0"));
        }
        if let Some(&x) = letters.iter().find(|&&x| x >= r) {
            return domain(format!("letter {x} is not below r = {r}"));
        }
        Ok(Word { letters, r })
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `(asc, col)` over consecutive pairs.
    pub fn asc_col(&self) -> (usize, usize) {
        self.letters
            .windows(2)
            .fold((0, 0), |(a, c), p| match p[0].cmp(&p[1]) {
                std::cmp::Ordering::Less => (a + 1, c),
                std::cmp::Ordering::Equal => (a, c + 1),
                std::cmp::Ordering::Greater => (a, c),
            })
    }

    pub fn is_smirnov(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1])
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letters.iter().join(","))
    }
}

/// All words `w_0 ... w_m` (so `m + 1` letters), optionally only those
/// without equal neighbours.
pub fn enumerate_words(m: usize, r: usize, smirnov: bool) -> Result<impl Iterator<Item = Word>> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let inner: Vec<Vec<usize>> = match m {
        0 => vec![vec![0]],
        1 => vec![vec![0, 0]],
        _ => (1..m)
            .map(|_| 0..r)
            .multi_cartesian_product()
            .map(|mid| {
                let mut w = Vec::with_capacity(m + 1);
                w.push(0);
                w.extend(mid);
                w.push(0);
                w
            })
            .collect(),
    };
    Ok(inner
        .into_iter()
        .map(move |letters| Word { letters, r })
        .filter(move |w| !smirnov || w.is_smirnov()))
}

/// `sum (1+z)^col z^asc` over words with `m` free letters.
pub fn word_enumerator(m: usize, r: usize) -> Result<IntPoly> {
    let mut table = vec![vec![0u64; m + 2]; m + 2];
    for w in enumerate_words(m + 1, r, false)? {
        let (asc, col) = w.asc_col();
        table[col][asc] += 1;
    }
    Ok(poly_from_histogram(&table))
}

/// `E_r((z + ... + z^{r-1})^k)`.
pub fn local_h_esd(k: usize, r: usize) -> Result<IntPoly> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let inner = IntPoly::from_i64s(&(0..r).map(|i| i64::from(i > 0)).collect::<Vec<_>>());
    inner.pow(k as u32).er_apply(r)
}

/// `sum z^asc` over Smirnov words `w_0 ... w_k`.
pub fn local_h_by_words(k: usize, r: usize) -> Result<IntPoly> {
    let mut counts = vec![0u64; k + 1];
    for w in enumerate_words(k, r, true)? {
        counts[w.asc_col().0] += 1;
    }
    Ok(IntPoly::from_counts(&counts))
}

fn fan(r: usize) -> IntPoly {
    IntPoly::from_i64s(&vec![1; r + 1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HDeltaRoutes {
    pub by_er: IntPoly,
    pub by_binomial_sum: IntPoly,
    /// Absent for `n = 0` or when `r^{n-1}` exceeds the enumeration cap.
    pub by_words: Option<IntPoly>,
}

impl HDeltaRoutes {
    pub fn agree(&self) -> bool {
        self.by_er == self.by_binomial_sum
            && self.by_words.as_ref().is_none_or(|w| *w == self.by_er)
    }
}

/// `h(Delta(esd_r(2^[n])), z)` three ways. Words are enumerated only when
/// there are at most `cap` of them.
pub fn h_delta_routes(n: usize, r: usize, cap: u64) -> Result<HDeltaRoutes> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let by_er = fan(r).pow(n as u32).er_apply(r)?;
    let powers = one_plus_z_powers(n);
    let mut by_binomial_sum = IntPoly::zero();
    for k in 0..=n {
        by_binomial_sum += (&powers[n - k] * &local_h_esd(k, r)?).scale(&binomial(n, k));
    }
    let words = (r as u64).checked_pow(n.saturating_sub(1) as u32);
    let by_words = match n {
        0 => None,
        _ if words.is_some_and(|w| w <= cap) => Some(word_enumerator(n - 1, r)?),
        _ => None,
    };
    Ok(HDeltaRoutes {
        by_er,
        by_binomial_sum,
        by_words,
    })
}

/// The closed form, after checking the routes agree.
pub fn h_delta_esd(n: usize, r: usize, cap: u64) -> Result<IntPoly> {
    let routes = h_delta_routes(n, r, cap)?;
    if !routes.agree() {
        return Err(Error::Consistency(format!(
            "h-polynomial routes disagree at n = {n}, r = {r}: {routes:?}"
        )));
    }
    Ok(routes.by_er)
}

/// `(h_{n,r-1}, ..., h_{n,0})`, the r-sections of `(1 + ... + z^r)^n` from
/// the top index down.
pub fn h_sections(n: usize, r: usize) -> Result<Vec<IntPoly>> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    let mut parts = fan(r).pow(n as u32).r_sections(r)?;
    parts.reverse();
    Ok(parts)
}

/// Maps the r-sections of `f` (index 0 first) to those of
/// `(1 + ... + z^r) f`. In top-down order this is the matrix with `1+z` on
/// the diagonal, `1` above and `z` below.
pub fn sections_transform(sections: &[IntPoly], r: usize) -> Result<Vec<IntPoly>> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be positive".into()));
    }
    if sections.len() != r {
        return domain(format!("expected {r} sections, got {}", sections.len()));
    }
    let top_down: Vec<IntPoly> = sections.iter().rev().cloned().collect();
    let t: Vec<usize> = (1..=r).collect();
    let mut out = apply_thresholds(&top_down, &t, &vec![Marker::OnePlusZ; r]);
    out.reverse();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invseq::SVec;
    use crate::realroot::{is_interlacing_sequence, is_real_rooted};
    use crate::recurrence::{binomial_eulerian, threshold_transform, ThresholdSpec};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn letters(m: usize, r: usize, smirnov: bool) -> Vec<Vec<usize>> {
        enumerate_words(m, r, smirnov)
            .unwrap()
            .map(|w| w.letters().to_vec())
            .collect()
    }

    #[test]
    fn word_examples() {
        assert_eq!(letters(2, 2, false), vec![vec![0, 0, 0], vec![0, 1, 0]]);
        assert_eq!(letters(2, 2, true), vec![vec![0, 1, 0]]);
        for r in 1..4 {
            assert!(letters(1, r, true).is_empty());
            assert_eq!(letters(1, r, false), vec![vec![0, 0]]);
            assert_eq!(letters(0, r, false), vec![vec![0]]);
        }
        assert_eq!(letters(4, 3, false).len(), 27);
        assert!(Word::new(vec![0, 2, 0], 2).is_err());
        assert!(Word::new(vec![1, 0], 2).is_err());
        assert_eq!(Word::new(vec![0, 1, 1, 0], 2).unwrap().asc_col(), (1, 1));
    }

    #[test]
    fn enumerator_examples() {
        assert_eq!(word_enumerator(1, 2).unwrap(), p(&[1, 3, 1]));
        assert_eq!(word_enumerator(2, 2).unwrap(), p(&[1, 6, 6, 1]));
        for r in 1..4 {
            assert_eq!(word_enumerator(0, r).unwrap(), p(&[1, 1]));
        }
        for m in 0..=6 {
            for r in 1..=4 {
                assert_eq!(
                    word_enumerator(m, r).unwrap(),
                    binomial_eulerian(&SVec::constant(m, r).unwrap()),
                    "m = {m}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn local_h() {
        assert_eq!(local_h_esd(2, 2).unwrap(), p(&[0, 1]));
        assert!(local_h_esd(3, 2).unwrap().is_zero());
        for r in 1..=4 {
            assert_eq!(local_h_esd(0, r).unwrap(), IntPoly::one());
            for k in 0..=4 {
                assert_eq!(
                    local_h_esd(k, r).unwrap(),
                    local_h_by_words(k, r).unwrap(),
                    "k = {k}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn h_delta() {
        assert_eq!(h_delta_esd(2, 2, u64::MAX).unwrap(), p(&[1, 3, 1]));
        let routes = h_delta_routes(3, 2, u64::MAX).unwrap();
        assert!(routes.agree());
        assert!(routes.by_words.is_some());
        assert!(h_delta_routes(0, 3, u64::MAX).unwrap().by_words.is_none());
        assert!(h_delta_routes(9, 4, 10).unwrap().by_words.is_none());
        for n in 0..=6 {
            assert_eq!(
                h_delta_esd(n, 1, u64::MAX).unwrap(),
                IntPoly::one_plus_z().pow(n as u32)
            );
        }
        for n in 0..=7 {
            for r in 1..=4 {
                assert!(
                    h_delta_routes(n, r, u64::MAX).unwrap().agree(),
                    "n = {n}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn sections() {
        assert_eq!(h_sections(2, 2).unwrap(), vec![p(&[2, 2]), p(&[1, 3, 1])]);
        assert_eq!(
            h_sections(1, 3).unwrap(),
            vec![p(&[1]), p(&[1]), p(&[1, 1])]
        );
        assert_eq!(
            h_sections(0, 3).unwrap(),
            vec![IntPoly::zero(), IntPoly::zero(), p(&[1])]
        );
        for n in 0..=8 {
            for r in 1..=5 {
                let hs = h_sections(n, r).unwrap();
                assert!(is_interlacing_sequence(&hs).holds, "n = {n}, r = {r}");
                let h0 = hs.last().unwrap();
                assert!(is_real_rooted(h0));
                assert_eq!(*h0, h_delta_esd(n, r, 0).unwrap());
            }
        }
    }

    #[test]
    fn sections_transform_examples() {
        assert_eq!(
            sections_transform(&[p(&[1]), IntPoly::zero()], 2).unwrap(),
            vec![p(&[1, 1]), p(&[1])]
        );
        assert_eq!(
            sections_transform(&vec![IntPoly::zero(); 3], 3).unwrap(),
            vec![IntPoly::zero(); 3]
        );
        assert!(sections_transform(&[p(&[1])], 2).is_err());

        for r in 1..=4 {
            let mut secs = IntPoly::one().r_sections(r).unwrap();
            for n in 1..=6 {
                secs = sections_transform(&secs, r).unwrap();
                let mut expected = h_sections(n, r).unwrap();
                expected.reverse();
                assert_eq!(secs, expected);
            }
        }

        let f = p(&[3, 1, 4, 1, 5, 9, 2, 6]);
        for r in 1..=4 {
            let secs = f.r_sections(r).unwrap();
            let out = sections_transform(&secs, r).unwrap();
            assert_eq!(out, (&fan(r) * &f).r_sections(r).unwrap());
            let spec = ThresholdSpec::new((1..=r).collect(), vec![Marker::OnePlusZ; r], r).unwrap();
            let top_down: Vec<IntPoly> = secs.iter().rev().cloned().collect();
            let mut via_spec = threshold_transform(&top_down, &spec).unwrap();
            via_spec.reverse();
            assert_eq!(out, via_spec);
        }
    }
}
