//! The fast path for the refined polynomials `p_{m,k}` and the
//! interlacing-preserving threshold transform behind it.
//!
//! A [`ThresholdSpec`] describes the `p x q` matrix whose row `i` is `z` left
//! of column `t_i`, `a_i` at column `t_i` and `1` right of it (columns are
//! 1-based). Level `m` of the refined family is one such transform of level
//! `m - 1`, with `t = ceil(k s_{m-1} / s_m) + 1` and `a = 1 + z` exactly when
//! the ceiling is attained.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::invseq::SVec;
use crate::poly::IntPoly;
use crate::realroot::{is_interlacing_sequence, InterlacingVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Marker {
    One,
    OnePlusZ,
}

impl Marker {
    pub fn poly(self) -> IntPoly {
        match self {
            Marker::One => IntPoly::one(),
            Marker::OnePlusZ => IntPoly::one_plus_z(),
        }
    }
}

/// Thresholds `1 <= t_1 <= ... <= t_p <= q` with markers `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdSpec {
    t: Vec<usize>,
    a: Vec<Marker>,
    q: usize,
}

impl ThresholdSpec {
    pub fn new(t: Vec<usize>, a: Vec<Marker>, q: usize) -> Result<Self> {
        if t.len() != a.len() {
            return domain(format!("{} thresholds but {} markers", t.len(), a.len()));
        }
        if let Some(&bad) = t.iter().find(|&&x| x == 0 || x > q) {
            return domain(format!("threshold {bad} outside [1, {q}]"));
        }
        for i in 1..t.len() {
            if t[i] < t[i - 1] {
                return domain(format!("thresholds decrease at position {}", i + 1));
            }
            // within a run of equal thresholds a `1` may never follow a `1+z`
            if t[i] == t[i - 1] && a[i - 1] == Marker::OnePlusZ && a[i] == Marker::One {
                return domain(format!(
                    "markers 1+z then 1 share threshold {} at positions {} and {}",
                    t[i],
                    i,
                    i + 1
                ));
            }
        }
        Ok(ThresholdSpec { t, a, q })
    }

    pub fn thresholds(&self) -> &[usize] {
        &self.t
    }

    pub fn markers(&self) -> &[Marker] {
        &self.a
    }

    /// Number of input polynomials.
    pub fn q(&self) -> usize {
        self.q
    }

    /// Number of output polynomials.
    pub fn p(&self) -> usize {
        self.t.len()
    }

    /// The transform as an explicit `p x q` matrix.
    pub fn matrix(&self) -> Vec<Vec<IntPoly>> {
        self.t
            .iter()
            .zip(&self.a)
            .map(|(&t, &a)| {
                (1..=self.q)
                    .map(|j| match j.cmp(&t) {
                        std::cmp::Ordering::Less => IntPoly::z(),
                        std::cmp::Ordering::Equal => a.poly(),
                        std::cmp::Ordering::Greater => IntPoly::one(),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Row evaluation `g_i = z sum_{j<t_i} f_j + a_i f_{t_i} + sum_{j>t_i} f_j`
/// using prefix sums. Performs no validation beyond `1 <= t_i <= q`.
pub fn apply_thresholds(fs: &[IntPoly], t: &[usize], a: &[Marker]) -> Vec<IntPoly> {
    let mut prefix = Vec::with_capacity(fs.len() + 1);
    prefix.push(IntPoly::zero());
    for f in fs {
        let next = prefix.last().unwrap() + f;
        prefix.push(next);
    }
    let total = prefix.last().unwrap();
    t.iter()
        .zip(a)
        .map(|(&ti, &ai)| {
            assert!(ti >= 1 && ti <= fs.len(), "threshold {ti} out of range");
            let below = prefix[ti - 1].shift(1);
            let at = match ai {
                Marker::One => fs[ti - 1].clone(),
                Marker::OnePlusZ => &fs[ti - 1] + &fs[ti - 1].shift(1),
            };
            let above = total - &prefix[ti];
            &(&below + &at) + &above
        })
        .collect()
}

/// Applies a validated spec to a sequence with nonnegative coefficients.
pub fn threshold_transform(fs: &[IntPoly], spec: &ThresholdSpec) -> Result<Vec<IntPoly>> {
    if fs.len() != spec.q {
        return domain(format!("spec expects {} inputs, got {}", spec.q, fs.len()));
    }
    if let Some(i) = fs.iter().position(|f| !f.has_nonnegative_coeffs()) {
        return domain(format!("input {} has a negative coefficient", i + 1));
    }
    Ok(apply_thresholds(fs, &spec.t, &spec.a))
}

/// `(ceil(k s_{m-1} / s_m), s_m | k s_{m-1})` for `k = 0, ..., s_m - 1`; `m` is 1-based.
pub fn thresholds(s: &SVec, m: usize) -> Result<Vec<(usize, bool)>> {
    if m < 2 || m > s.len() {
        return domain(format!("level {m} outside [2, {}]", s.len()));
    }
    let prev = s.get(m - 1);
    let cur = s.get(m);
    Ok((0..cur)
        .map(|k| {
            let num = k * prev;
            (num.div_ceil(cur), num.is_multiple_of(cur))
        })
        .collect())
}

/// The refined polynomials `(p_{m,k})_{k < s_m}` at one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedFamily {
    pub level: usize,
    pub polys: Vec<IntPoly>,
}

fn first_level(s1: usize) -> Vec<IntPoly> {
    let mut polys = vec![IntPoly::z(); s1];
    polys[0] = IntPoly::one_plus_z();
    polys
}

/// Level `m` from level `m - 1`. A threshold equal to `s_{m-1}` leaves no
/// column for `a_i f_{t_i}`; the input is then padded with a zero polynomial
/// so the row reads `z (f_1 + ... + f_q)`.
fn next_level(prev: &[IntPoly], s: &SVec, m: usize) -> Result<Vec<IntPoly>> {
    let th = thresholds(s, m)?;
    let mut fs = prev.to_vec();
    if th.iter().any(|&(t, _)| t == prev.len()) {
        fs.push(IntPoly::zero());
    }
    let spec = ThresholdSpec::new(
        th.iter().map(|&(t, _)| t + 1).collect(),
        th.iter()
            .map(|&(_, d)| if d { Marker::OnePlusZ } else { Marker::One })
            .collect(),
        fs.len(),
    )?;
    threshold_transform(&fs, &spec)
}

/// Every level `1..=n` of the refined family.
pub fn refined_levels(s: &SVec) -> Result<Vec<RefinedFamily>> {
    let Some(&s1) = s.entries().first() else {
        return domain("refined polynomials need a nonempty s");
    };
    let mut levels = vec![RefinedFamily {
        level: 1,
        polys: first_level(s1),
    }];
    for m in 2..=s.len() {
        let polys = next_level(&levels.last().unwrap().polys, s, m)?;
        levels.push(RefinedFamily { level: m, polys });
    }
    Ok(levels)
}

/// `(p_{n,k})_{k < s_n}` at the top level.
pub fn refined_polys(s: &SVec) -> Result<RefinedFamily> {
    let Some(&s1) = s.entries().first() else {
        return domain("refined polynomials need a nonempty s");
    };
    let mut polys = first_level(s1);
    for m in 2..=s.len() {
        polys = next_level(&polys, s, m)?;
    }
    Ok(RefinedFamily {
        level: s.len(),
        polys,
    })
}

/// `(1+z) p_{n,0} + sum_{k>=1} p_{n,k}`; `1 + z` for empty `s`.
pub fn binomial_eulerian(s: &SVec) -> IntPoly {
    if s.is_empty() {
        return IntPoly::one_plus_z();
    }
    let fam = refined_polys(s).expect("nonempty s");
    recombine(&fam.polys)
}

pub(crate) fn recombine(polys: &[IntPoly]) -> IntPoly {
    let head = &IntPoly::one_plus_z() * &polys[0];
    &head + &polys[1..].iter().sum::<IntPoly>()
}

/// 2x2 polynomial matrix, row-major.
pub type Matrix2 = [[IntPoly; 2]; 2];

fn mat(entries: [[&[i64]; 2]; 2]) -> Matrix2 {
    entries.map(|row| row.map(IntPoly::from_i64s))
}

pub fn mat_mul(x: &Matrix2, y: &Matrix2) -> Matrix2 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]))
    })
}

pub fn mat_apply(x: &Matrix2, v: &[IntPoly; 2]) -> [IntPoly; 2] {
    std::array::from_fn(|i| &(&x[i][0] * &v[0]) + &(&x[i][1] * &v[1]))
}

fn fmt_matrix(m: &Matrix2) -> String {
    format!("[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
}

const ONE: &[i64] = &[1];
const ZERO: &[i64] = &[];
const Z: &[i64] = &[0, 1];
const OPZ: &[i64] = &[1, 1];

/// The eight `(lhs, left, right)` factorizations `lhs = left * right`.
pub fn factorizations() -> Vec<(Matrix2, Matrix2, Matrix2)> {
    vec![
        (
            mat([[OPZ, ONE], [Z, ONE]]),
            mat([[ONE, ONE], [ZERO, ONE]]),
            mat([[ONE, ZERO], [Z, ONE]]),
        ),
        (
            mat([[ONE, ONE], [OPZ, ONE]]),
            mat([[ONE, ZERO], [ONE, ONE]]),
            mat([[ONE, ONE], [Z, ZERO]]),
        ),
        (
            mat([[OPZ, ONE], [Z, Z]]),
            mat([[ONE, ONE], [Z, ZERO]]),
            mat([[ONE, ONE], [Z, ZERO]]),
        ),
        (
            mat([[ONE, ONE], [Z, OPZ]]),
            mat([[ONE, ZERO], [Z, ONE]]),
            mat([[ONE, ONE], [ZERO, ONE]]),
        ),
        (
            mat([[Z, OPZ], [Z, Z]]),
            mat([[ONE, ONE], [ZERO, ONE]]),
            mat([[ZERO, ONE], [Z, Z]]),
        ),
        (
            mat([[Z, ONE], [Z, OPZ]]),
            mat([[ONE, ZERO], [ONE, ONE]]),
            mat([[Z, ONE], [ZERO, Z]]),
        ),
        (
            mat([[Z, OPZ], [Z, OPZ]]),
            mat([[ONE, ONE], [ONE, ONE]]),
            mat([[Z, ONE], [ZERO, Z]]),
        ),
        (
            mat([[OPZ, ONE], [OPZ, ONE]]),
            mat([[ONE, ONE], [ONE, ONE]]),
            mat([[ONE, ZERO], [Z, ONE]]),
        ),
    ]
}

/// The matrix `[[1+z, 1], [z, 1+z]]`, handled without a factorization.
pub fn direct_case() -> Matrix2 {
    mat([[OPZ, ONE], [Z, OPZ]])
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationCheck {
    pub matrix: String,
    pub factors: String,
    /// `left * right` equals the matrix entrywise.
    pub product_matches: bool,
    /// The matrix mapped every sampled interlacing pair to an interlacing pair.
    pub preserves_samples: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub identities: Vec<FactorizationCheck>,
    pub direct_case_preserves_samples: bool,
    pub samples: usize,
    pub seed: u64,
    pub holds: bool,
}

fn preserves_on(m: &Matrix2, pairs: &[[IntPoly; 2]]) -> bool {
    pairs
        .iter()
        .all(|v| is_interlacing_sequence(&mat_apply(m, v)).holds)
}

/// Symbolic check of all eight factorizations, plus sampled
/// interlacing-preservation for every left-hand matrix and the direct case.
pub fn factorization_checks() -> FactorizationReport {
    factorization_checks_seeded(0, 40)
}

pub fn factorization_checks_seeded(seed: u64, samples: usize) -> FactorizationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<[IntPoly; 2]> = (0..samples)
        .map(|_| {
            let seq = random_interlacing_sequence(&mut rng, 2, 4);
            [seq[0].clone(), seq[1].clone()]
        })
        .collect();
    let identities: Vec<FactorizationCheck> = factorizations()
        .iter()
        .map(|(lhs, left, right)| FactorizationCheck {
            matrix: fmt_matrix(lhs),
            factors: format!("{} * {}", fmt_matrix(left), fmt_matrix(right)),
            product_matches: mat_mul(left, right) == *lhs,
            preserves_samples: preserves_on(lhs, &pairs),
        })
        .collect();
    let direct = preserves_on(&direct_case(), &pairs);
    let holds = direct
        && identities
            .iter()
            .all(|c| c.product_matches && c.preserves_samples);
    FactorizationReport {
        identities,
        direct_case_preserves_samples: direct,
        samples,
        seed,
        holds,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleCase {
    pub matrix: String,
    pub input: [IntPoly; 2],
    pub output: [IntPoly; 2],
    pub expected: [IntPoly; 2],
    pub input_verdict: InterlacingVerdict,
    pub output_verdict: InterlacingVerdict,
}

impl CounterexampleCase {
    pub fn confirmed(&self) -> bool {
        self.input_verdict.holds && self.output == self.expected && !self.output_verdict.holds
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub cases: Vec<CounterexampleCase>,
    pub holds: bool,
}

/// The two matrices that map an interlacing pair to a non-interlacing one.
pub fn counterexample_check() -> CounterexampleReport {
    let p = IntPoly::from_i64s;
    let data = [
        (
            mat([[OPZ, ONE], [OPZ, OPZ]]),
            [p(OPZ), p(Z)],
            [p(&[1, 3, 1]), p(&[1, 3, 2])],
        ),
        (
            mat([[OPZ, OPZ], [Z, OPZ]]),
            [p(ONE), p(Z)],
            [p(&[1, 2, 1]), p(&[0, 2, 1])],
        ),
    ];
    let cases: Vec<CounterexampleCase> = data
        .into_iter()
        .map(|(m, input, expected)| {
            let output = mat_apply(&m, &input);
            CounterexampleCase {
                matrix: fmt_matrix(&m),
                input_verdict: is_interlacing_sequence(&input),
                output_verdict: is_interlacing_sequence(&output),
                input,
                output,
                expected,
            }
        })
        .collect();
    let holds = cases.iter().all(CounterexampleCase::confirmed);
    CounterexampleReport { cases, holds }
}

/// An interlacing sequence of `q` polynomials with nonnegative coefficients.
///
/// Roots are drawn from disjoint windows on the nonpositive axis. Inside each
/// window the roots of later polynomials are never smaller, and polynomials
/// after a random cut get one extra root in a window left of all others.
/// Occasional zero polynomials and positive scalings are mixed in.
pub fn random_interlacing_sequence<R: Rng>(
    rng: &mut R,
    q: usize,
    max_degree: usize,
) -> Vec<IntPoly> {
    const WIDTH: i64 = 6;
    let denom: i64 = rng.gen_range(1..=3);
    let d = rng.gen_range(0..=max_degree);
    let cut = rng.gen_range(0..=q);
    // window k (1-based) covers [-(k) WIDTH, -(k-1) WIDTH] in units of 1/denom
    let mut roots: Vec<Vec<i64>> = vec![Vec::new(); q];
    for k in 1..=d + 1 {
        let members: Vec<usize> = if k <= d {
            (0..q).collect()
        } else {
            (cut..q).collect()
        };
        let hi = -(k as i64 - 1) * WIDTH;
        let mut draws: Vec<i64> = members
            .iter()
            .map(|_| rng.gen_range(hi - WIDTH..=hi))
            .collect();
        draws.sort_unstable();
        for (&i, r) in members.iter().zip(draws) {
            roots[i].push(r);
        }
    }
    roots
        .into_iter()
        .map(|rs| {
            if rng.gen_ratio(1, 12) {
                return IntPoly::zero();
            }
            let scale = num_bigint::BigInt::from(rng.gen_range(1..=3));
            rs.iter()
                .fold(IntPoly::one(), |acc, &r| {
                    &acc * &IntPoly::from_i64s(&[-r, denom])
                })
                .scale(&scale)
        })
        .collect()
}

/// A valid spec with `q` inputs and between 1 and `max_p` outputs.
pub fn random_threshold_spec<R: Rng>(rng: &mut R, q: usize, max_p: usize) -> ThresholdSpec {
    let p = rng.gen_range(1..=max_p);
    let mut rows: Vec<(usize, Marker)> = (0..p)
        .map(|_| {
            let m = if rng.gen_bool(0.5) {
                Marker::One
            } else {
                Marker::OnePlusZ
            };
            (rng.gen_range(1..=q), m)
        })
        .collect();
    // One sorts before OnePlusZ, which rules out the forbidden pattern
    rows.sort_by_key(|&(t, m)| (t, m == Marker::OnePlusZ));
    let (t, a) = rows.into_iter().unzip();
    ThresholdSpec::new(t, a, q).expect("sorted rows form a valid spec")
}

#[derive(Clone, Debug, Serialize)]
pub struct TransformTrialReport {
    pub seed: u64,
    pub trials: usize,
    pub failures: Vec<String>,
}

impl TransformTrialReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Random valid specs applied to random interlacing inputs; every output
/// sequence must be interlacing again.
pub fn random_transform_trials(seed: u64, trials: usize) -> TransformTrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for trial in 0..trials {
        let q = rng.gen_range(1..=5);
        let fs = random_interlacing_sequence(&mut rng, q, 4);
        debug_assert!(is_interlacing_sequence(&fs).holds);
        let spec = random_threshold_spec(&mut rng, q, 6);
        let gs = threshold_transform(&fs, &spec).expect("valid inputs");
        let verdict = is_interlacing_sequence(&gs);
        if !verdict.holds {
            failures.push(format!(
                "trial {trial}: t = {:?}, a = {:?}, verdict {}",
                spec.t, spec.a, verdict.reason
            ));
        }
    }
    TransformTrialReport {
        seed,
        trials,
        failures,
    }
}

impl fmt::Display for RefinedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.polys.iter().enumerate() {
            writeln!(f, "p[{},{}] = {}", self.level, k, p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::invseq::brute_refined;
    use crate::realroot::{interlaces, is_real_rooted};
    use proptest::prelude::*;
    use rand::Rng;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn sv(v: &[usize]) -> SVec {
        SVec::new(v.to_vec()).unwrap()
    }

    #[test]
    fn threshold_values() {
        assert_eq!(
            thresholds(&sv(&[2, 3]), 2).unwrap(),
            vec![(0, true), (1, false), (2, false)]
        );
        assert_eq!(thresholds(&sv(&[2, 4]), 2).unwrap()[2], (1, true));
        for s in [sv(&[3, 5, 2]), sv(&[6, 4, 4])] {
            for m in 2..=3 {
                assert_eq!(thresholds(&s, m).unwrap()[0], (0, true));
            }
        }
        assert!(thresholds(&sv(&[2, 3]), 1).is_err());
        assert!(thresholds(&sv(&[2, 3]), 3).is_err());
    }

    #[test]
    fn spec_validation() {
        use Marker::*;
        assert!(ThresholdSpec::new(vec![1, 2], vec![One, One], 2).is_ok());
        assert!(ThresholdSpec::new(vec![2, 1], vec![One, One], 2).is_err());
        assert!(ThresholdSpec::new(vec![0], vec![One], 2).is_err());
        assert!(ThresholdSpec::new(vec![3], vec![One], 2).is_err());
        assert!(ThresholdSpec::new(vec![1], vec![One, One], 2).is_err());
        assert!(ThresholdSpec::new(vec![1, 1], vec![One, OnePlusZ], 2).is_ok());
        assert!(matches!(
            ThresholdSpec::new(vec![1, 1, 2], vec![OnePlusZ, One, One], 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn transform_rows() {
        use Marker::*;
        let fs = [p(&[1, 1]), p(&[0, 1])];
        // the row values of t = (1,1,2), a = (1+z,1,1); the spec itself is rejected
        let raw = apply_thresholds(&fs, &[1, 1, 2], &[OnePlusZ, One, One]);
        assert_eq!(raw, vec![p(&[1, 3, 1]), p(&[1, 2]), p(&[0, 2, 1])]);
        assert!(!is_interlacing_sequence(&raw).holds);

        let f = p(&[2, 7, 1]);
        let spec = ThresholdSpec::new(vec![1], vec![One], 1).unwrap();
        assert_eq!(
            threshold_transform(std::slice::from_ref(&f), &spec).unwrap(),
            vec![f]
        );

        // s = (2,3): t = (1, 2, 3) over the padded input (1+z, z, 0)
        let padded = [p(&[1, 1]), p(&[0, 1]), IntPoly::zero()];
        let spec = ThresholdSpec::new(vec![1, 2, 3], vec![OnePlusZ, One, One], 3).unwrap();
        assert_eq!(
            threshold_transform(&padded, &spec).unwrap(),
            vec![p(&[1, 3, 1]), p(&[0, 2, 1]), p(&[0, 1, 2])]
        );

        assert!(threshold_transform(
            &[p(&[1, -1])],
            &ThresholdSpec::new(vec![1], vec![One], 1).unwrap()
        )
        .is_err());
        assert!(
            threshold_transform(&fs, &ThresholdSpec::new(vec![1], vec![One], 1).unwrap()).is_err()
        );
    }

    #[test]
    fn matrix_form_agrees_with_rows() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let q = rng.gen_range(1..=4);
            let fs = random_interlacing_sequence(&mut rng, q, 3);
            let spec = random_threshold_spec(&mut rng, q, 5);
            let by_matrix: Vec<IntPoly> = spec
                .matrix()
                .iter()
                .map(|row| row.iter().zip(&fs).map(|(a, f)| a * f).sum())
                .collect();
            assert_eq!(threshold_transform(&fs, &spec).unwrap(), by_matrix);
        }
    }

    #[test]
    fn refined_examples() {
        assert_eq!(
            refined_polys(&sv(&[2])).unwrap().polys,
            vec![p(&[1, 1]), p(&[0, 1])]
        );
        assert_eq!(
            refined_polys(&sv(&[2, 3])).unwrap().polys,
            vec![p(&[1, 3, 1]), p(&[0, 2, 1]), p(&[0, 1, 2])]
        );
        let s = sv(&[2, 3, 4]);
        assert_eq!(refined_polys(&s).unwrap().polys, brute_refined(&s).unwrap());
        assert!(refined_polys(&SVec::empty()).is_err());

        assert_eq!(binomial_eulerian(&sv(&[2, 3])), p(&[1, 7, 7, 1]));
        assert_eq!(binomial_eulerian(&sv(&[2])), p(&[1, 3, 1]));
        assert_eq!(binomial_eulerian(&SVec::empty()), p(&[1, 1]));

        let levels = refined_levels(&s).unwrap();
        assert_eq!(levels.len(), 3);
        assert_eq!(levels[2].polys, refined_polys(&s).unwrap().polys);
        assert_eq!(levels[1].polys, brute_refined(&sv(&[2, 3])).unwrap());
    }

    #[test]
    fn factorizations_hold() {
        let first = &factorizations()[0];
        assert_eq!(mat_mul(&first.1, &first.2), mat([[OPZ, ONE], [Z, ONE]]));
        let seventh = &factorizations()[6];
        assert_eq!(mat_mul(&seventh.1, &seventh.2), mat([[Z, OPZ], [Z, OPZ]]));
        let report = factorization_checks();
        assert_eq!(report.identities.len(), 8);
        assert!(report.holds, "{report:?}");
    }

    #[test]
    fn counterexamples() {
        let report = counterexample_check();
        assert!(report.holds, "{report:?}");
        assert_eq!(report.cases[0].output, [p(&[1, 3, 1]), p(&[1, 3, 2])]);
        assert_eq!(report.cases[1].output, [p(&[1, 2, 1]), p(&[0, 2, 1])]);
    }

    #[test]
    fn random_inputs_are_interlacing() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let q = rng.gen_range(1..=5);
            let fs = random_interlacing_sequence(&mut rng, q, 4);
            assert!(fs.iter().all(IntPoly::has_nonnegative_coeffs));
            assert!(is_interlacing_sequence(&fs).holds, "{fs:?}");
        }
    }

    #[test]
    fn transform_preserves_interlacing() {
        let report = random_transform_trials(2024, 60);
        assert!(report.holds(), "{:?}", report.failures);
    }

    fn small_s() -> impl Strategy<Value = SVec> {
        prop::collection::vec(1usize..=5, 1..=4).prop_map(|v| SVec::new(v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn engine_matches_oracle(s in small_s()) {
            let levels = refined_levels(&s).unwrap();
            for fam in &levels {
                let prefix = SVec::new(s.entries()[..fam.level].to_vec()).unwrap();
                prop_assert_eq!(&fam.polys, &brute_refined(&prefix).unwrap());
                prop_assert!(is_interlacing_sequence(&fam.polys).holds);
                prop_assert!(fam.polys.iter().all(|q| q.degree().is_none_or(|d| d <= fam.level)));
            }
            let e = binomial_eulerian(&s);
            prop_assert!(is_real_rooted(&e));
            if s.entries().iter().all(|&x| x >= 2) {
                prop_assert_eq!(e.degree(), Some(s.len() + 1));
            }
            let top = &levels.last().unwrap().polys;
            // p_{n,k} << z p_{n,0} is what makes the recombination real-rooted
            for q in top {
                prop_assert!(interlaces(q, &top[0].shift(1)).holds);
            }
        }
    }
}
