//! Classical permutations: descents, excedances, fixed points and bad
//! elements, the Eulerian and derangement polynomials, the Lehmer-code map
//! onto inversion sequences and the `A^alpha` transfer recurrence.

use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::invseq::{InvSeq, SVec};
use crate::poly::{binomial, one_plus_z_powers, poly_from_histogram, IntPoly};
use crate::recurrence::binomial_eulerian;

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return domain(format!("{word:?} is not a permutation of [{n}]"));
            }
            seen[x] = true;
        }
        Ok(Perm(word))
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n).collect())
    }

    pub fn word(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `t_i = #{j > i : pi_j < pi_i}`.
    pub fn lehmer_code(&self) -> Vec<usize> {
        let w = &self.0;
        (0..w.len())
            .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count())
            .collect()
    }

    /// Rebuilds a permutation from its Lehmer code.
    pub fn from_lehmer_code(code: &[usize]) -> Result<Self> {
        let n = code.len();
        let mut pool: Vec<usize> = (1..=n).collect();
        let mut word = Vec::with_capacity(n);
        for (i, &t) in code.iter().enumerate() {
            if t >= n - i {
                return domain(format!("Lehmer digit {t} too large at position {}", i + 1));
            }
            word.push(pool.remove(t));
        }
        Ok(Perm(word))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.len() > 9 { " " } else { "" };
        write!(f, "{}", self.0.iter().join(sep))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PermStats {
    pub des: usize,
    pub exc: usize,
    pub fix: usize,
    pub bad: usize,
    pub bad_prime: usize,
}

/// Positions `k` (0-based) with `pi_{k-1} < pi_k < pi_m` for all `m > k`,
/// reading `pi_0 = 0`.
fn bad_count(w: &[usize]) -> usize {
    let n = w.len();
    let mut suffix_min = usize::MAX;
    let mut bad = 0;
    for k in (0..n).rev() {
        let prev = if k == 0 { 0 } else { w[k - 1] };
        if w[k] < suffix_min && prev < w[k] {
            bad += 1;
        }
        suffix_min = suffix_min.min(w[k]);
    }
    bad
}

fn stats_of(w: &[usize]) -> PermStats {
    let des = w.windows(2).filter(|p| p[0] > p[1]).count();
    let exc = w.iter().enumerate().filter(|&(i, &x)| x > i + 1).count();
    let fix = w.iter().enumerate().filter(|&(i, &x)| x == i + 1).count();
    let bad = bad_count(w);
    let bad_prime = if w.first() == Some(&1) { bad - 1 } else { bad };
    PermStats {
        des,
        exc,
        fix,
        bad,
        bad_prime,
    }
}

pub fn perm_stats(p: &Perm) -> PermStats {
    stats_of(&p.0)
}

/// All of `S_n` in lexicographic order.
pub fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    (1..=n).permutations(n).map(Perm)
}

/// `Theta(pi) = (t_{n-1}, ..., t_1)`, an inversion sequence over `(2, ..., n)`.
pub fn theta(p: &Perm) -> Result<InvSeq> {
    if p.is_empty() {
        return domain("theta needs n >= 1");
    }
    let code = p.lehmer_code();
    let values: Vec<usize> = code[..code.len() - 1].iter().rev().copied().collect();
    Ok(InvSeq::new_unchecked(values))
}

pub fn theta_inverse(e: &InvSeq) -> Result<Perm> {
    let n = e.len() + 1;
    InvSeq::new(e.values().to_vec(), &SVec::staircase(n))?;
    let mut code: Vec<usize> = e.values().iter().rev().copied().collect();
    code.push(0);
    Perm::from_lehmer_code(&code)
}

/// Histogram of `(x, des)` over `S_n` for a statistic `x`.
fn histogram(n: usize, key: impl Fn(&PermStats) -> Option<usize>) -> Vec<Vec<u64>> {
    let mut table = vec![vec![0u64; n.max(1)]; n + 1];
    for p in all_perms(n) {
        let st = stats_of(&p.0);
        if let Some(x) = key(&st) {
            table[x][st.des] += 1;
        }
    }
    table
}

/// `A_n(z) = sum z^des`; `A_0 = 1`.
pub fn eulerian_poly(n: usize) -> IntPoly {
    let mut counts = vec![0u64; n.max(1)];
    for p in all_perms(n) {
        counts[stats_of(&p.0).des] += 1;
    }
    IntPoly::from_counts(&counts)
}

/// `d_n(z) = sum z^exc` over derangements; `d_0 = 1`.
pub fn derangement_poly(n: usize) -> IntPoly {
    let mut counts = vec![0u64; n.max(1)];
    for p in all_perms(n) {
        let st = stats_of(&p.0);
        if st.fix == 0 {
            counts[st.exc] += 1;
        }
    }
    IntPoly::from_counts(&counts)
}

/// The binomial Eulerian polynomial computed four independent ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicRoutes {
    pub by_definition: IntPoly,
    pub by_fix_exc: IntPoly,
    pub by_bad_des: IntPoly,
    pub by_svec: IntPoly,
}

impl ClassicRoutes {
    pub fn agree(&self) -> bool {
        self.by_definition == self.by_fix_exc
            && self.by_definition == self.by_bad_des
            && self.by_definition == self.by_svec
    }
}

pub fn binomial_eulerian_routes(n: usize) -> Result<ClassicRoutes> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "binomial Eulerian routes need n >= 1".into(),
        ));
    }
    let by_definition = &IntPoly::one()
        + &(1..=n)
            .map(|m| eulerian_poly(m).scale(&binomial(n, m)))
            .sum::<IntPoly>()
            .shift(1);

    let mut fix_exc = vec![vec![0u64; n + 1]; n + 1];
    for p in all_perms(n) {
        let st = stats_of(&p.0);
        fix_exc[st.fix][st.exc] += 1;
    }
    let by_fix_exc = poly_from_histogram(&fix_exc);
    let by_bad_des = poly_from_histogram(&histogram(n, |st| Some(st.bad)));
    let by_svec = binomial_eulerian(&SVec::staircase(n));
    Ok(ClassicRoutes {
        by_definition,
        by_fix_exc,
        by_bad_des,
        by_svec,
    })
}

/// `A~_n` by every route; disagreement is a consistency error.
pub fn binomial_eulerian_classic(n: usize) -> Result<IntPoly> {
    let routes = binomial_eulerian_routes(n)?;
    if !routes.agree() {
        return Err(Error::Consistency(format!(
            "binomial Eulerian routes disagree at n = {n}: {routes:?}"
        )));
    }
    Ok(routes.by_svec)
}

/// `sum_k C(n,k) (1+z)^{n-k} d_k`.
pub fn derangement_binomial_sum(n: usize) -> IntPoly {
    let powers = one_plus_z_powers(n);
    (0..=n)
        .map(|k| (&powers[n - k] * &derangement_poly(k)).scale(&binomial(n, k)))
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alpha {
    Zero,
    One,
    OnePlusZ,
}

impl Alpha {
    pub const ALL: [Alpha; 3] = [Alpha::Zero, Alpha::One, Alpha::OnePlusZ];

    pub fn poly(self) -> IntPoly {
        match self {
            Alpha::Zero => IntPoly::zero(),
            Alpha::One => IntPoly::one(),
            Alpha::OnePlusZ => IntPoly::one_plus_z(),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Alpha::Zero => "0",
            Alpha::One => "1",
            Alpha::OnePlusZ => "1+z",
        })
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" | "zero" => Ok(Alpha::Zero),
            "1" | "one" => Ok(Alpha::One),
            "1+z" | "one-plus-z" => Ok(Alpha::OnePlusZ),
            other => Err(Error::InvalidParameter(format!(
                "alpha must be 0, 1 or 1+z, got {other:?}"
            ))),
        }
    }
}

/// `(A^alpha_{n,i})_{i<n}`: level `n + 1` is the `(n+1) x n` matrix with
/// `alpha` in the corner, `1` on and above the diagonal and `z` below it,
/// applied to level `n`.
pub fn alpha_recurrence(n: usize, alpha: Alpha) -> Result<Vec<IntPoly>> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "alpha recurrence needs n >= 1".into(),
        ));
    }
    let a = alpha.poly();
    let mut level = vec![IntPoly::one()];
    for _ in 1..n {
        let m = level.len();
        // row i: z * (prefix below i) + (suffix from i), corner replaced by alpha
        let mut suffix = vec![IntPoly::zero(); m + 1];
        for j in (0..m).rev() {
            suffix[j] = &suffix[j + 1] + &level[j];
        }
        let mut prefix = IntPoly::zero();
        let mut next = Vec::with_capacity(m + 1);
        for i in 0..=m {
            let row = if i == 0 {
                &(&a * &level[0]) + &suffix[1]
            } else {
                &prefix.shift(1) + &suffix[i]
            };
            next.push(row);
            if i < m {
                prefix += level[i].clone();
            }
        }
        level = next;
    }
    Ok(level)
}

/// `A^alpha_{n,i} = sum over pi in S_n with pi_1 = i+1 of alpha^{bad'} z^{des}`.
pub fn brute_alpha(n: usize, alpha: Alpha) -> Vec<IntPoly> {
    let a = alpha.poly();
    let powers: Vec<IntPoly> = (0..=n)
        .scan(IntPoly::one(), |acc, _| {
            let cur = acc.clone();
            *acc = &*acc * &a;
            Some(cur)
        })
        .collect();
    (0..n)
        .map(|i| {
            let mut table = vec![vec![0u64; n]; n + 1];
            for p in all_perms(n).filter(|p| p.0[0] == i + 1) {
                let st = stats_of(&p.0);
                table[st.bad_prime][st.des] += 1;
            }
            table
                .iter()
                .zip(&powers)
                .map(|(row, w)| w * &IntPoly::from_counts(row))
                .sum()
        })
        .collect()
}
