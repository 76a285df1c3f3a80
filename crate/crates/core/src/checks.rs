//! Verification drivers. Each returns a [`Report`] counting the individual
//! assertions it made; the acceptance suite and the `verify` command both
//! run these.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::colored::{
    a_tilde_by_bad_des, a_tilde_by_definition, a_tilde_by_derangements, a_tilde_fast, all_colored,
    colored_derangement, colored_stats, d_plus_minus, psi, psi_inv, SignClass,
};
use crate::invseq::{
    brute_refined, enumerate_inversion_sequences, involution_f, stats, InvSeq, SVec,
};
use crate::perms::{
    all_perms, binomial_eulerian_routes, derangement_binomial_sum, perm_stats, theta, theta_inverse,
};
use crate::poly::IntPoly;
use crate::realroot::{interlaces, interlaces_by_roots, is_interlacing_sequence, is_real_rooted};
use crate::recurrence::{
    binomial_eulerian, counterexample_check, factorization_checks, random_interlacing_sequence,
    random_threshold_spec, refined_levels, threshold_transform,
};
use crate::subdivision::{h_delta_esd, h_delta_routes, h_sections, sections_transform};
use num_traits::Signed;

/// Pairs above this degree are not collected for cross-validation.
pub const PAIR_DEGREE_LIMIT: usize = 8;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
    /// Ordered pairs `(g, f)` whose interlacing was decided along the way.
    #[serde(skip)]
    pub pairs: Vec<(IntPoly, IntPoly)>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    /// Logs every ordered pair of distinct positions, both directions.
    pub fn record_sequence(&mut self, fs: &[IntPoly]) {
        let small = |p: &IntPoly| p.degree().is_none_or(|d| d <= PAIR_DEGREE_LIMIT);
        for (i, g) in fs.iter().enumerate() {
            for (j, f) in fs.iter().enumerate() {
                if i != j && small(g) && small(f) {
                    self.pairs.push((g.clone(), f.clone()));
                }
            }
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.holds() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {} checks, {} failures",
            self.name,
            self.checks,
            self.failures.len()
        )
    }
}

/// `count` random s-vectors with lengths in `1..=max_len` and entries in `lo..=hi`.
pub fn random_s_corpus(seed: u64, count: usize, max_len: usize, lo: usize, hi: usize) -> Vec<SVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_len);
            SVec::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect()).expect("positive entries")
        })
        .collect()
}

/// `(2..n)` for `n <= 7`, `(rn, ..., r)` for `n <= 4, r <= 3` and
/// `(r, ..., r)` for up to six entries with `r <= 4`.
pub fn structured_s_corpus() -> Vec<SVec> {
    let mut out: Vec<SVec> = (2..=7).map(SVec::staircase).collect();
    for r in 1..=3 {
        for n in 1..=4 {
            out.push(SVec::colored(n, r).unwrap());
        }
    }
    for r in 1..=4 {
        for m in 1..=6 {
            out.push(SVec::constant(m, r).unwrap());
        }
    }
    out
}

/// Fifty random vectors with entries in `2..=6` and length at most 6, then
/// the structured families.
pub fn acceptance_s_corpus(seed: u64) -> Vec<SVec> {
    let mut out = random_s_corpus(seed, 50, 6, 2, 6);
    out.extend(structured_s_corpus());
    out
}

/// Fast engine against exhaustive enumeration at every level.
pub fn check_oracle(corpus: &[SVec], cap: u64) -> Report {
    let mut rep = Report::new("oracle equivalence");
    for s in corpus {
        if s.count().is_none_or(|c| c > cap) {
            rep.check(false, || format!("s = {s}: enumeration exceeds cap {cap}"));
            continue;
        }
        match refined_levels(s) {
            Ok(levels) => {
                for fam in levels {
                    let prefix = SVec::new(s.entries()[..fam.level].to_vec()).unwrap();
                    let brute = brute_refined(&prefix).unwrap();
                    rep.check(fam.polys == brute, || {
                        format!("s = {prefix}: engine differs from enumeration")
                    });
                }
            }
            Err(e) => rep.check(false, || format!("s = {s}: {e}")),
        }
    }
    rep
}

/// Each level of the refined family is interlacing and the recombination is
/// real-rooted.
pub fn check_refined_interlacing(corpus: &[SVec]) -> Report {
    let mut rep = Report::new("refined interlacing");
    for s in corpus {
        let Ok(levels) = refined_levels(s) else {
            rep.check(false, || format!("s = {s}: empty"));
            continue;
        };
        for fam in &levels {
            let v = is_interlacing_sequence(&fam.polys);
            rep.check(v.holds, || {
                format!("s = {s}, level {}: {}", fam.level, v.reason)
            });
            rep.record_sequence(&fam.polys);
        }
        let e = binomial_eulerian(s);
        rep.check(is_real_rooted(&e), || {
            format!("s = {s}: {e} is not real-rooted")
        });
    }
    rep
}

/// Real-rootedness and gamma-positivity of the classical binomial Eulerian
/// polynomials, and the first three values.
pub fn check_binomial_eulerian(n_max: usize) -> Report {
    let mut rep = Report::new("binomial Eulerian real roots and gamma");
    let expected = [vec![1, 1], vec![1, 3, 1], vec![1, 7, 7, 1]];
    for (i, c) in expected.iter().enumerate() {
        let n = i + 1;
        let got = binomial_eulerian_routes(n).map(|r| r.by_definition);
        rep.check(got.as_ref().ok() == Some(&IntPoly::from_i64s(c)), || {
            format!("n = {n}: got {got:?}")
        });
    }
    for n in 1..=n_max {
        let a = binomial_eulerian(&SVec::staircase(n));
        rep.check(is_real_rooted(&a), || {
            format!("n = {n}: {a} is not real-rooted")
        });
        match a.gamma_expand(n) {
            Ok(g) => rep.check(g.iter().all(|x| !x.is_negative()), || {
                format!("n = {n}: gamma {g:?}")
            }),
            Err(e) => rep.check(false, || format!("n = {n}: {e}")),
        }
    }
    rep
}

/// Four routes to the binomial Eulerian polynomial and the derangement sum.
pub fn check_classic_routes(n_max: usize) -> Report {
    let mut rep = Report::new("binomial Eulerian routes");
    for n in 1..=n_max {
        let routes = binomial_eulerian_routes(n).unwrap();
        rep.check(routes.agree(), || format!("n = {n}: {routes:?}"));
        let sum = derangement_binomial_sum(n);
        rep.check(sum == routes.by_definition, || {
            format!("n = {n}: derangement sum {sum}")
        });
    }
    rep
}

/// Lehmer map up to `theta_n`, colored map up to `(psi_n, psi_r)`, and the
/// involution on every corpus vector with at most `cap` sequences.
pub fn check_bijections(
    theta_n: usize,
    psi_n: usize,
    psi_r: usize,
    corpus: &[SVec],
    cap: u64,
) -> Report {
    let mut rep = Report::new("bijections");
    for n in 1..=theta_n {
        let s = SVec::staircase(n);
        let mut seen = std::collections::HashSet::new();
        for pi in all_perms(n) {
            let e = InvSeq::new(theta(&pi).unwrap().values().to_vec(), &s).unwrap();
            let st = stats(&e, &s).unwrap();
            let ps = perm_stats(&pi);
            rep.check(ps.des == st.asc && ps.bad == st.col, || {
                format!("theta({pi}) statistics")
            });
            rep.check(theta_inverse(&e).ok() == Some(pi.clone()), || {
                format!("theta({pi}) inverse")
            });
            seen.insert(e);
        }
        rep.check(Some(seen.len() as u64) == s.count(), || {
            format!("theta not onto at n = {n}")
        });
    }
    for r in 1..=psi_r {
        for n in 1..=psi_n {
            let s = SVec::colored(n, r).unwrap();
            let mut seen = std::collections::HashSet::new();
            for sigma in all_colored(n, r).unwrap() {
                let Ok(e) = InvSeq::new(psi(&sigma).values().to_vec(), &s) else {
                    rep.check(false, || format!("psi({sigma}) out of range"));
                    continue;
                };
                let cs = colored_stats(&sigma);
                let st = stats(&e, &s).unwrap();
                let plus = cs.sign_class == SignClass::Plus;
                rep.check(
                    cs.des == st.des
                        && cs.bad_set.len() == st.col_prime
                        && plus == (e.values()[n - 1] == 0),
                    || format!("psi({sigma}) statistics"),
                );
                rep.check(psi_inv(&e, r).ok() == Some(sigma.clone()), || {
                    format!("psi({sigma}) inverse")
                });
                seen.insert(e);
            }
            rep.check(Some(seen.len() as u64) == s.count(), || {
                format!("psi not onto at n = {n}, r = {r}")
            });
        }
    }
    for s in corpus
        .iter()
        .filter(|s| s.count().is_some_and(|c| c <= cap))
    {
        let mut ok = true;
        for e in enumerate_inversion_sequences(s) {
            let f = involution_f(&e, s).unwrap();
            let (a, b) = (stats(&e, s).unwrap(), stats(&f, s).unwrap());
            ok &= a.asc == b.des
                && a.des == b.asc
                && a.col == b.col
                && involution_f(&f, s).unwrap() == e;
        }
        rep.check(ok, || format!("involution fails on s = {s}"));
    }
    rep
}

/// The colored decomposition for `n <= n_max` and each `r`, and
/// `d^+ + d^- = d` for `n <= der_n, r <= der_r`.
pub fn check_colored(n_max: usize, rs: &[usize], der_n: usize, der_r: usize) -> Report {
    let mut rep = Report::new("colored decomposition");
    for &r in rs {
        for n in 1..=n_max {
            let fast = match a_tilde_fast(n, r) {
                Ok(f) => f,
                Err(e) => {
                    rep.check(false, || format!("n = {n}, r = {r}: {e}"));
                    continue;
                }
            };
            let v = interlaces(&fast.plus, &fast.minus);
            rep.check(v.holds, || {
                format!("n = {n}, r = {r}: plus/minus {}", v.reason)
            });
            rep.record_sequence(&[fast.plus.clone(), fast.minus.clone()]);
            rep.check(is_real_rooted(&fast.total), || {
                format!("n = {n}, r = {r}: total not real-rooted")
            });
            let by_der = a_tilde_by_derangements(n, r).unwrap();
            let by_bad = a_tilde_by_bad_des(n, r).unwrap();
            let by_def = a_tilde_by_definition(n, r).unwrap();
            rep.check(
                by_der == fast && by_bad == fast && by_def == fast.total,
                || format!("n = {n}, r = {r}: routes disagree"),
            );
            let reduced = fast.minus.unshift(1);
            let decomposed = fast.total.symmetric_decompose(n).ok();
            rep.check(
                reduced.is_some() && decomposed == reduced.map(|m| (fast.plus.clone(), m)),
                || format!("n = {n}, r = {r}: symmetric decomposition"),
            );
        }
    }
    for r in 1..=der_r {
        for n in 0..=der_n {
            let (dp, dm) = d_plus_minus(n, r).unwrap();
            rep.check(&dp + &dm == colored_derangement(n, r).unwrap(), || {
                format!("n = {n}, r = {r}: d+ + d- != d")
            });
        }
    }
    rep
}

/// Factorizations, counterexamples and `trials` random threshold transforms.
pub fn check_matrices(seed: u64, trials: usize) -> Report {
    let mut rep = Report::new("matrix suite");
    let fact = factorization_checks();
    for c in &fact.identities {
        rep.check(c.product_matches, || {
            format!("{} != {}", c.matrix, c.factors)
        });
        rep.check(c.preserves_samples, || {
            format!("{} broke a sampled pair", c.matrix)
        });
    }
    rep.check(fact.direct_case_preserves_samples, || {
        "direct case broke a sampled pair".into()
    });
    let ce = counterexample_check();
    for case in &ce.cases {
        rep.check(case.confirmed(), || {
            format!("counterexample {} not confirmed", case.matrix)
        });
        rep.record_sequence(&case.input);
        rep.record_sequence(&case.output);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let q = rng.gen_range(1..=5);
        let fs = random_interlacing_sequence(&mut rng, q, 4);
        let spec = random_threshold_spec(&mut rng, q, 6);
        let gs = threshold_transform(&fs, &spec).expect("generated inputs are valid");
        let v = is_interlacing_sequence(&gs);
        rep.check(v.holds, || {
            format!("seed {seed}, trial {trial}: {}", v.reason)
        });
        rep.record_sequence(&fs);
        rep.record_sequence(&gs);
    }
    rep
}

/// Route agreement of the subdivision h-polynomial, interlacing of its
/// sections and the section transform.
pub fn check_subdivision(routes_n: usize, routes_r: usize, sec_n: usize, sec_r: usize) -> Report {
    let mut rep = Report::new("edgewise subdivision");
    for n in 0..=routes_n {
        for r in 1..=routes_r {
            let routes = h_delta_routes(n, r, u64::MAX).unwrap();
            rep.check(
                routes.agree() && (n == 0 || routes.by_words.is_some()),
                || format!("n = {n}, r = {r}: {routes:?}"),
            );
        }
    }
    let h22 = h_delta_esd(2, 2, u64::MAX).unwrap();
    rep.check(h22 == IntPoly::from_i64s(&[1, 3, 1]), || {
        format!("h(2,2) = {h22}")
    });
    for n in 0..=routes_n {
        let h = h_delta_esd(n, 1, u64::MAX).unwrap();
        rep.check(h == IntPoly::one_plus_z().pow(n as u32), || {
            format!("h({n},1) = {h}")
        });
    }
    for r in 1..=sec_r {
        let mut secs = IntPoly::one().r_sections(r).unwrap();
        for n in 0..=sec_n {
            if n > 0 {
                secs = sections_transform(&secs, r).unwrap();
            }
            let hs = h_sections(n, r).unwrap();
            let v = is_interlacing_sequence(&hs);
            rep.check(v.holds, || {
                format!("sections n = {n}, r = {r}: {}", v.reason)
            });
            rep.check(is_real_rooted(hs.last().unwrap()), || {
                format!("h({n},{r}) not real-rooted")
            });
            let top_down: Vec<IntPoly> = secs.iter().rev().cloned().collect();
            rep.check(top_down == hs, || {
                format!("iterated transform differs at n = {n}, r = {r}")
            });
            rep.record_sequence(&hs);
        }
    }
    rep
}

/// Wronskian decisions against root-isolation decisions.
pub fn check_interlacing_decisions(pairs: &[(IntPoly, IntPoly)]) -> Report {
    let mut rep = Report::new("interlacing cross-validation");
    for (g, f) in pairs {
        let (a, b) = (interlaces(g, f), interlaces_by_roots(g, f));
        rep.check(a == b, || {
            format!("({g}) vs ({f}): wronskian {} roots {}", a.reason, b.reason)
        });
    }
    rep
}
