//! Exact real-root decisions: Sturm counts, real-rootedness, nonnegativity on
//! the real line and weak interlacing.
//!
//! Interlacing convention: `g << f` holds when both are real-rooted with
//! positive leading coefficients, `deg f - deg g` is 0 or 1, and the
//! Wronskian `f' g - f g'` is nonnegative on all of R. The anchor case is
//! `1 << z + 1`, whose Wronskian is the constant 1. In root terms the largest
//! root belongs to `f`: `v_d <= u_d <= ... <= v_1 <= u_1` for roots `v` of
//! `g` and `u` of `f`. [`interlaces_by_roots`] decides the same relation from
//! isolated roots and is kept as an independent cross-check.
//!
//! All arithmetic is over the integers or the rationals; pseudo-remainders
//! are sign-corrected so Sturm sign sequences stay valid.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::poly::IntPoly;

/// Pseudo-division: returns `(q, r)` with `lc(b)^(deg a - deg b + 1) a = q b + r`.
fn pseudo_divide(a: &IntPoly, b: &IntPoly) -> (IntPoly, IntPoly) {
    let db = b.degree().expect("division by the zero polynomial");
    let lb = b.leading_coeff().unwrap().clone();
    let da = match a.degree() {
        Some(d) if d >= db => d,
        _ => return (IntPoly::zero(), a.clone()),
    };
    let delta = da - db;
    let mut q = IntPoly::zero();
    let mut r = a.clone();
    let mut steps = 0usize;
    while let Some(dr) = r.degree().filter(|&d| d >= db) {
        let t = IntPoly::monomial(r.leading_coeff().unwrap().clone(), dr - db);
        q = &q.scale(&lb) + &t;
        r = &r.scale(&lb) - &(&t * b);
        steps += 1;
    }
    // bring both up to the common factor lc(b)^(delta+1)
    let missing = delta + 1 - steps;
    if missing > 0 {
        let f = num_traits::pow(lb, missing);
        q = q.scale(&f);
        r = r.scale(&f);
    }
    (q, r)
}

/// Remainder of `a` by `b` up to a positive factor.
fn positive_remainder(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.degree().expect("division by the zero polynomial");
    let delta = match a.degree() {
        Some(d) if d >= db => d - db,
        _ => return a.clone(),
    };
    let (_, r) = pseudo_divide(a, b);
    let negative_factor = b.leading_coeff().unwrap().is_negative() && delta % 2 == 0;
    let r = if negative_factor { -r } else { r };
    let c = r.content();
    if c.is_zero() || c.is_one() {
        r
    } else {
        IntPoly::from_coeffs(r.coeffs().iter().map(|x| x / &c).collect())
    }
}

/// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut x = a.primitive_part();
    let mut y = b.primitive_part();
    while !y.is_zero() {
        let (_, r) = pseudo_divide(&x, &y);
        x = y;
        y = r.primitive_part();
    }
    x.primitive_part()
}

/// Quotient `a / b` up to a nonzero scalar, as a primitive polynomial.
fn quotient_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (q, r) = pseudo_divide(a, b);
    debug_assert!(r.is_zero(), "inexact division");
    q.primitive_part()
}

/// `f / gcd(f, f')`, primitive, positive leading coefficient.
pub fn square_free_part(f: &IntPoly) -> Result<IntPoly> {
    if f.is_zero() {
        return domain("square-free part of the zero polynomial");
    }
    let g = gcd(f, &f.derivative());
    Ok(quotient_primitive(f, &g))
}

/// Factors `a_1, a_2, ...` (primitive, possibly constant) where the roots of
/// `a_k` are exactly the distinct roots of `f` of multiplicity `k`.
fn multiplicity_layers(f: &IntPoly) -> Vec<IntPoly> {
    // g_0 = f, g_{k+1} = gcd(g_k, g_k'); h_k = g_{k-1}/g_k carries roots of multiplicity >= k
    let mut gs = vec![f.primitive_part()];
    while gs.last().unwrap().degree().unwrap_or(0) > 0 {
        let last = gs.last().unwrap();
        gs.push(gcd(last, &last.derivative()));
    }
    let hs: Vec<IntPoly> = gs
        .windows(2)
        .map(|w| quotient_primitive(&w[0], &w[1]))
        .collect();
    let mut layers = Vec::with_capacity(hs.len());
    for k in 0..hs.len() {
        let next = hs.get(k + 1).cloned().unwrap_or_else(IntPoly::one);
        layers.push(quotient_primitive(&hs[k], &next));
    }
    layers
}

/// Real-line region for [`sturm_count`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Interval {
    RealLine,
    /// Half-open `(a, b]`.
    HalfOpen(BigRational, BigRational),
}

struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// `f` must be nonzero.
    fn new(f: &IntPoly) -> Self {
        let mut chain = vec![f.clone(), f.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = -positive_remainder(&chain[n - 2], &chain[n - 1]);
            chain.push(r);
        }
        chain.pop();
        SturmChain { chain }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut count = 0;
        let mut prev = Ordering::Equal;
        for s in signs.filter(|&s| s != Ordering::Equal) {
            if prev != Ordering::Equal && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let lc = p.leading_coeff().unwrap().sign();
            let odd = p.degree().unwrap() % 2 == 1;
            let s = if !positive && odd { -lc } else { lc };
            match s {
                num_bigint::Sign::Minus => Ordering::Less,
                num_bigint::Sign::NoSign => Ordering::Equal,
                num_bigint::Sign::Plus => Ordering::Greater,
            }
        }))
    }

    fn count(&self, interval: &Interval) -> usize {
        match interval {
            Interval::RealLine => {
                self.variations_at_infinity(false) - self.variations_at_infinity(true)
            }
            Interval::HalfOpen(a, b) => {
                if a >= b {
                    return 0;
                }
                self.variations_at(a) - self.variations_at(b)
            }
        }
    }
}

/// Number of distinct real roots of `f` in the interval.
pub fn sturm_count(f: &IntPoly, interval: &Interval) -> Result<usize> {
    let p = square_free_part(f)?;
    Ok(SturmChain::new(&p).count(interval))
}

/// True for the zero polynomial, nonzero constants, and polynomials whose
/// roots are all real (counted with multiplicity).
pub fn is_real_rooted(f: &IntPoly) -> bool {
    match f.degree() {
        None | Some(0) => true,
        Some(_) => {
            let p = square_free_part(f).expect("nonzero");
            let d = p.degree().unwrap();
            SturmChain::new(&p).count(&Interval::RealLine) == d
        }
    }
}

/// Decides `f(x) >= 0` for every real `x`.
pub fn is_nonnegative_on_reals(f: &IntPoly) -> bool {
    let Some(d) = f.degree() else { return true };
    if f.leading_coeff().unwrap().is_negative() || d % 2 == 1 {
        return false;
    }
    if d == 0 {
        return true;
    }
    let odd_part = multiplicity_layers(f)
        .iter()
        .enumerate()
        .filter(|(i, _)| i % 2 == 0)
        .fold(IntPoly::one(), |acc, (_, a)| &acc * a);
    match odd_part.degree() {
        Some(0) => true,
        _ => SturmChain::new(&odd_part).count(&Interval::RealLine) == 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    Ok,
    NotRealRootedLeft,
    NotRealRootedRight,
    DegreeGap,
    LeadingSign,
    WronskianSign,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Reason::Ok => "ok",
            Reason::NotRealRootedLeft => "not-real-rooted-left",
            Reason::NotRealRootedRight => "not-real-rooted-right",
            Reason::DegreeGap => "degree-gap",
            Reason::LeadingSign => "leading-sign",
            Reason::WronskianSign => "wronskian-sign",
        };
        f.write_str(s)
    }
}

/// Outcome of an interlacing decision. `holds` is true exactly when `reason` is `Ok`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InterlacingVerdict {
    pub holds: bool,
    pub reason: Reason,
}

impl InterlacingVerdict {
    pub const OK: Self = InterlacingVerdict {
        holds: true,
        reason: Reason::Ok,
    };

    pub fn fail(reason: Reason) -> Self {
        debug_assert_ne!(reason, Reason::Ok);
        InterlacingVerdict {
            holds: false,
            reason,
        }
    }

    fn from_reason(reason: Reason) -> Self {
        if reason == Reason::Ok {
            Self::OK
        } else {
            Self::fail(reason)
        }
    }
}

/// Checks shared by both interlacing routes, everything except the final
/// ordering test. `None` means the ordering test still has to run.
fn preliminary(g: &IntPoly, f: &IntPoly, g_rr: bool, f_rr: bool) -> Option<Reason> {
    let negative = |p: &IntPoly| p.leading_coeff().is_some_and(Signed::is_negative);
    if negative(g) || negative(f) {
        return Some(Reason::LeadingSign);
    }
    if !g_rr {
        return Some(Reason::NotRealRootedLeft);
    }
    if !f_rr {
        return Some(Reason::NotRealRootedRight);
    }
    let (Some(dg), Some(df)) = (g.degree(), f.degree()) else {
        // 0 << f and f << 0 for real-rooted f
        return Some(Reason::Ok);
    };
    if df != dg && df != dg + 1 {
        return Some(Reason::DegreeGap);
    }
    None
}

fn interlaces_known(g: &IntPoly, f: &IntPoly, g_rr: bool, f_rr: bool) -> InterlacingVerdict {
    if let Some(reason) = preliminary(g, f, g_rr, f_rr) {
        return InterlacingVerdict::from_reason(reason);
    }
    let w = &(&f.derivative() * g) - &(f * &g.derivative());
    if is_nonnegative_on_reals(&w) {
        InterlacingVerdict::OK
    } else {
        InterlacingVerdict::fail(Reason::WronskianSign)
    }
}

/// Decides the weak relation `g << f` via the Wronskian.
pub fn interlaces(g: &IntPoly, f: &IntPoly) -> InterlacingVerdict {
    interlaces_known(g, f, is_real_rooted(g), is_real_rooted(f))
}

/// First pair `(i, j)`, `i < j`, with `fs[i] << fs[j]` failing.
pub fn interlacing_failure(fs: &[IntPoly]) -> Option<(usize, usize, InterlacingVerdict)> {
    let rr: Vec<bool> = fs.iter().map(is_real_rooted).collect();
    for j in 0..fs.len() {
        for i in 0..j {
            let v = interlaces_known(&fs[i], &fs[j], rr[i], rr[j]);
            if !v.holds {
                return Some((i, j, v));
            }
        }
    }
    None
}

/// `fs[i] << fs[j]` for every `i < j`.
pub fn is_interlacing_sequence(fs: &[IntPoly]) -> InterlacingVerdict {
    interlacing_failure(fs).map_or(InterlacingVerdict::OK, |(_, _, v)| v)
}

/// Disjoint half-open intervals `(lo, hi]`, sorted, each holding exactly one
/// real root of the square-free polynomial `p`.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<(BigRational, BigRational)> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let lc = p.leading_coeff().unwrap().abs();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| BigRational::new(c.abs(), lc.clone()))
        .max()
        .unwrap()
        + BigRational::one();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((lo, hi)) = stack.pop() {
        match chain.count(&Interval::HalfOpen(lo.clone(), hi.clone())) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort();
    out
}

/// Multiplicity of the root of `p` isolated in `(lo, hi]` as a root of `h`.
fn multiplicity_in(h: &IntPoly, p: &IntPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let mut k = 0;
    let mut cur = h.clone();
    while !cur.is_zero() {
        let g = gcd(&cur, p);
        if g.degree().unwrap_or(0) == 0 {
            break;
        }
        let hits = SturmChain::new(&g).count(&Interval::HalfOpen(lo.clone(), hi.clone()));
        if hits == 0 {
            break;
        }
        k += 1;
        cur = cur.derivative();
    }
    k
}

/// Decides `g << f` by isolating the roots of both polynomials and checking
/// the alternation chain directly. Same conventions as [`interlaces`].
pub fn interlaces_by_roots(g: &IntPoly, f: &IntPoly) -> InterlacingVerdict {
    if let Some(reason) = preliminary(g, f, is_real_rooted(g), is_real_rooted(f)) {
        return InterlacingVerdict::from_reason(reason);
    }
    let p = square_free_part(&(f * g)).expect("nonzero");
    let roots = isolate_real_roots(&p);
    // descending root lists, each root named by the index of its interval
    let mut u = Vec::new();
    let mut v = Vec::new();
    for (idx, (lo, hi)) in roots.iter().enumerate().rev() {
        u.extend(std::iter::repeat_n(idx, multiplicity_in(f, &p, lo, hi)));
        v.extend(std::iter::repeat_n(idx, multiplicity_in(g, &p, lo, hi)));
    }
    debug_assert_eq!(u.len(), f.degree().unwrap());
    debug_assert_eq!(v.len(), g.degree().unwrap());
    // u_1 >= v_1 >= u_2 >= v_2 >= ...
    let mut merged = Vec::with_capacity(u.len() + v.len());
    for (i, &x) in u.iter().enumerate() {
        merged.push(x);
        if let Some(&x) = v.get(i) {
            merged.push(x);
        }
    }
    if merged.windows(2).all(|w| w[0] >= w[1]) {
        InterlacingVerdict::OK
    } else {
        InterlacingVerdict::fail(Reason::WronskianSign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(
            sturm_count(&p(&[-1, 0, 1]), &Interval::RealLine).unwrap(),
            2
        );
        assert_eq!(sturm_count(&p(&[1, 0, 1]), &Interval::RealLine).unwrap(), 0);
        assert_eq!(sturm_count(&p(&[1, 3, 1]), &Interval::RealLine).unwrap(), 2);
        assert!(sturm_count(&IntPoly::zero(), &Interval::RealLine).is_err());
        // (a, b] excludes a, includes b
        let f = p(&[-1, 0, 1]);
        assert_eq!(
            sturm_count(&f, &Interval::HalfOpen(q(-1, 1), q(1, 1))).unwrap(),
            1
        );
        assert_eq!(
            sturm_count(&f, &Interval::HalfOpen(q(-2, 1), q(1, 2))).unwrap(),
            1
        );
        assert_eq!(
            sturm_count(&f, &Interval::HalfOpen(q(-2, 1), q(2, 1))).unwrap(),
            2
        );
        // distinct roots only
        assert_eq!(
            sturm_count(&p(&[1, 3, 3, 1]), &Interval::RealLine).unwrap(),
            1
        );
    }

    #[test]
    fn real_rootedness() {
        assert!(is_real_rooted(&p(&[1, 3, 1])));
        assert!(!is_real_rooted(&p(&[1, 0, 1])));
        assert!(is_real_rooted(&p(&[1, 3, 3, 1])));
        assert!(is_real_rooted(&IntPoly::zero()));
        assert!(is_real_rooted(&p(&[-5])));
        // (z^2+1)(z+1)^2 has a repeated real root and two complex roots
        assert!(!is_real_rooted(&(&p(&[1, 0, 1]) * &p(&[1, 2, 1]))));
    }

    #[test]
    fn square_free_examples() {
        assert_eq!(square_free_part(&p(&[1, 3, 3, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(square_free_part(&p(&[-1, 0, 1])).unwrap(), p(&[-1, 0, 1]));
        assert_eq!(square_free_part(&p(&[0, 1, 2, 1])).unwrap(), p(&[0, 1, 1]));
        assert_eq!(square_free_part(&p(&[0, 0, -6])).unwrap(), p(&[0, 1]));
        assert!(square_free_part(&IntPoly::zero()).is_err());
    }

    #[test]
    fn nonnegativity() {
        assert!(is_nonnegative_on_reals(&p(&[2, 2, 1])));
        assert!(!is_nonnegative_on_reals(&p(&[0, 1])));
        assert!(is_nonnegative_on_reals(&p(&[1, 2, 1])));
        assert!(is_nonnegative_on_reals(&IntPoly::zero()));
        assert!(is_nonnegative_on_reals(&p(&[3])));
        assert!(!is_nonnegative_on_reals(&p(&[-3])));
        assert!(!is_nonnegative_on_reals(&p(&[-1, 0, 1])));
        // z^3 (z-1) changes sign at 0 and 1; z^2 (z-1)^2 does not
        assert!(!is_nonnegative_on_reals(&p(&[0, 0, 0, -1, 1])));
        assert!(is_nonnegative_on_reals(&p(&[0, 0, 1, -2, 1])));
        // (z+1)^3 (z+2) is negative on (-2, -1)
        assert!(!is_nonnegative_on_reals(&(&p(&[1, 3, 3, 1]) * &p(&[2, 1]))));
    }

    #[test]
    fn interlacing_examples() {
        assert_eq!(interlaces(&p(&[1]), &p(&[1, 1])), InterlacingVerdict::OK);
        assert_eq!(interlaces(&p(&[2, 1]), &p(&[1, 1])), InterlacingVerdict::OK);
        assert_eq!(
            interlaces(&p(&[1, 1]), &p(&[2, 1])),
            InterlacingVerdict::fail(Reason::WronskianSign)
        );
        let g = p(&[1, 3, 1]);
        let f = p(&[1, 3, 2]);
        assert!(!interlaces(&g, &f).holds);
        assert!(!interlaces(&f, &g).holds);

        assert_eq!(
            interlaces(&p(&[1, 0, 1]), &p(&[1, 1])).reason,
            Reason::NotRealRootedLeft
        );
        assert_eq!(
            interlaces(&p(&[1, 1]), &p(&[1, 0, 1])).reason,
            Reason::NotRealRootedRight
        );
        assert_eq!(
            interlaces(&p(&[1]), &p(&[1, 2, 1])).reason,
            Reason::DegreeGap
        );
        assert_eq!(
            interlaces(&IntPoly::zero(), &p(&[1, 2, 1])),
            InterlacingVerdict::OK
        );
        assert_eq!(
            interlaces(&p(&[1, 2, 1]), &p(&[1, 1])).reason,
            Reason::DegreeGap
        );
        assert_eq!(
            interlaces(&p(&[-1, -1]), &p(&[1, 1])).reason,
            Reason::LeadingSign
        );
        assert_eq!(
            interlaces(&IntPoly::zero(), &p(&[1, 0, 1])).reason,
            Reason::NotRealRootedRight
        );
        assert!(interlaces(&p(&[0, 1]), &IntPoly::zero()).holds);
    }

    #[test]
    fn interlacing_sequences() {
        let seq = [p(&[1, 1]), p(&[0, 1]), p(&[0, 1])];
        assert!(is_interlacing_sequence(&seq).holds);
        let seq = [p(&[1, 3, 1]), p(&[0, 2, 1]), p(&[0, 1, 2])];
        assert!(is_interlacing_sequence(&seq).holds);
        let bad = [p(&[1, 3, 1]), p(&[1, 3, 2])];
        assert!(!is_interlacing_sequence(&bad).holds);
        assert_eq!(
            interlacing_failure(&bad).map(|(i, j, _)| (i, j)),
            Some((0, 1))
        );
        assert!(is_interlacing_sequence(&[]).holds);
    }

    #[test]
    fn verdict_json() {
        let s = serde_json::to_string(&InterlacingVerdict::fail(Reason::WronskianSign)).unwrap();
        assert_eq!(s, r#"{"holds":false,"reason":"wronskian-sign"}"#);
        assert_eq!(
            Reason::NotRealRootedLeft.to_string(),
            "not-real-rooted-left"
        );
    }

    #[test]
    fn isolation_brackets_roots() {
        let f = p(&[6, -5, -2, 1]); // (z-1)(z+2)(z-3)
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 3);
        for ((lo, hi), r) in roots.iter().zip([-2i64, 1, 3]) {
            let r = BigRational::from_integer(BigInt::from(r));
            assert!(lo < &r && &r <= hi);
        }
    }

    fn linear_product(roots: &[(i64, i64)]) -> IntPoly {
        roots
            .iter()
            .fold(IntPoly::one(), |acc, &(num, den)| &acc * &p(&[num, den]))
    }

    fn root_list() -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-4i64..=4, 1i64..=3), 0..4)
    }

    proptest! {
        #[test]
        fn real_rooted_products(roots in root_list()) {
            let f = linear_product(&roots);
            prop_assert!(is_real_rooted(&f));
            prop_assert!(interlaces(&f, &f).holds);
            let sq = &f * &f;
            prop_assert!(is_nonnegative_on_reals(&sq));
            prop_assert_eq!(is_nonnegative_on_reals(&-&sq), sq.is_zero());
        }

        #[test]
        fn wronskian_matches_roots(a in root_list(), b in root_list(), s in 1i64..4) {
            let g = linear_product(&a).scale(&BigInt::from(s));
            let f = linear_product(&b);
            prop_assert_eq!(interlaces(&g, &f), interlaces_by_roots(&g, &f));
            prop_assert_eq!(interlaces(&f, &g), interlaces_by_roots(&f, &g));
        }

        #[test]
        fn nonnegativity_of_f_and_neg_f(c in prop::collection::vec(-4i64..=4, 0..6)) {
            let f = IntPoly::from_i64s(&c);
            let both = is_nonnegative_on_reals(&f) && is_nonnegative_on_reals(&-&f);
            prop_assert_eq!(both, f.is_zero());
        }
    }
}
