//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::sync::Arc;
use std::time::Instant;

use ::vahlen::census::orbit_census;
use ::vahlen::sample::{derive_seed, rng_from_seed};
use ::vahlen::vahlen::{enumerate_vahlen_group, verify_equivalence_exhaustive};
use ::vahlen::verify::{boundary_candidates, boundary_translation, run_property, run_structural, sample_pair, Outcome, VerifyConfig};
use ::vahlen::{CliffordAlgebra, FieldDesc, HalfSpace, Point, QuadraticSpace, Scalar, VahlenKind};
use rand::seq::SliceRandom;
use rayon::prelude::*;

const KINDS: [VahlenKind; 2] = [VahlenKind::Vector, VahlenKind::Paravector];

struct Verdict {
    pass: bool,
    detail: String,
}

fn algebra(field: FieldDesc, diag: &[i64]) -> Arc<CliffordAlgebra> {
    CliffordAlgebra::new(QuadraticSpace::diagonal(field, diag)).unwrap()
}

fn f3() -> FieldDesc {
    FieldDesc::prime(3).unwrap()
}

fn equivalence(kind: VahlenKind) -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, diag) in [("x^2", 1), ("0", 0)] {
        let r = verify_equivalence_exhaustive(&algebra(f3(), &[diag]), kind).unwrap();
        let ok = r.matrices == 6561 && r.consistent() && (!r.t_star_invariant || r.condition_sets_equal);
        pass &= ok;
        parts.push(format!(
            "q={name}: {} matrices, counts {:?}, T-transposition-invariant={}, sets equal={}",
            r.matrices,
            r.counts,
            r.t_star_invariant,
            r.condition_sets_equal
        ));
    }
    Verdict {
        pass,
        detail: parts.join("; "),
    }
}

/// Rational spaces for the sampled criteria, with a degenerate form in every positive dimension.
fn rational_spaces() -> Vec<(String, Arc<CliffordAlgebra>)> {
    let q = FieldDesc::Rationals;
    let mut out: Vec<(String, Arc<CliffordAlgebra>)> = [
        &[][..],
        &[1][..],
        &[0][..],
        &[1, -1][..],
        &[1, 0][..],
        &[1, 1, -1][..],
        &[1, -1, 0][..],
    ]
    .iter()
    .map(|d| (format!("{d:?}"), algebra(q, d)))
    .collect();
    let skew = QuadraticSpace::diagonal(q, &[1, -2]).with_pair(0, 1, q.from_i64(1)).unwrap();
    out.push(("[1,-2; (e1,e2)=1]".into(), CliffordAlgebra::new(skew).unwrap()));
    out
}

struct Sampled {
    configs: usize,
    samples: usize,
    boundary_samples: usize,
    equivariance_failures: Vec<String>,
    identity_failures: Vec<String>,
    missing_boundary: Vec<String>,
}

const SAMPLES: u64 = 500;

fn sampled_action() -> Sampled {
    let mut configs = Vec::new();
    for (name, alg) in rational_spaces() {
        for c in [0, 1, -1] {
            for kind in KINDS {
                configs.push((name.clone(), alg.clone(), c, kind));
            }
        }
    }
    let results: Vec<(String, usize, usize, usize, bool, usize)> = configs
        .par_iter()
        .enumerate()
        .map(|(ci, (name, alg, c, kind))| {
            let cfg = VerifyConfig {
                c: FieldDesc::Rationals.from_i64(*c),
                kind: *kind,
                seed: 2024,
                samples: SAMPLES as usize,
                gen_length: 8,
            };
            let h = HalfSpace::new(alg, cfg.c.clone(), *kind).unwrap();
            let cands = boundary_candidates(&h).unwrap();
            let (mut eq_bad, mut id_bad, mut bd) = (0, 0, 0);
            for i in 0..SAMPLES {
                let mut rng = rng_from_seed(derive_seed(ci as u64, i));
                let (m, p) = sample_pair(&h, &cfg, &cands, &mut rng);
                let img = h.mobius_apply(&m, &p);
                if p.is_boundary() || img.as_ref().is_ok_and(Point::is_boundary) {
                    bd += 1;
                }
                if !h.equivariance_check(&m, &p).unwrap_or(false) {
                    eq_bad += 1;
                }
                if !h.value_identity_check(&m, &p).unwrap_or(false) {
                    id_bad += 1;
                }
            }
            (format!("{name} c={c} {kind}"), eq_bad, id_bad, bd, !cands.is_empty(), SAMPLES as usize)
        })
        .collect();
    let mut s = Sampled {
        configs: results.len(),
        samples: 0,
        boundary_samples: 0,
        equivariance_failures: vec![],
        identity_failures: vec![],
        missing_boundary: vec![],
    };
    for (name, eq_bad, id_bad, bd, represented, n) in results {
        s.samples += n;
        s.boundary_samples += bd;
        if eq_bad > 0 {
            s.equivariance_failures.push(format!("{name} ({eq_bad})"));
        }
        if id_bad > 0 {
            s.identity_failures.push(format!("{name} ({id_bad})"));
        }
        if represented && bd == 0 {
            s.missing_boundary.push(name);
        }
    }
    s
}

fn structural_spaces() -> Vec<(String, Arc<CliffordAlgebra>)> {
    let q = FieldDesc::Rationals;
    let skew = QuadraticSpace::diagonal(q, &[1, -2, 0]).with_pair(0, 1, q.from_i64(1)).unwrap();
    vec![
        ("Q []".into(), algebra(q, &[])),
        ("Q [1,-1]".into(), algebra(q, &[1, -1])),
        ("Q [1,0]".into(), algebra(q, &[1, 0])),
        ("Q [1,-2,0; (e1,e2)=1]".into(), CliffordAlgebra::new(skew).unwrap()),
        ("F3 [1,2]".into(), algebra(f3(), &[1, 2])),
        ("F5 [2,0,1]".into(), algebra(FieldDesc::prime(5).unwrap(), &[2, 0, 1])),
    ]
}

fn structural(suite: &str) -> Verdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, alg) in structural_spaces() {
        for kind in KINDS {
            let cfg = VerifyConfig {
                c: alg.field().one(),
                kind,
                seed: 99,
                samples: 200,
                gen_length: 6,
            };
            for p in run_structural(&alg, &cfg).into_iter().filter(|p| p.suite == suite) {
                checked += p.checked;
                if !p.passed {
                    failures.push(format!("{name} {kind} {}: {}", p.name, p.counterexample.unwrap()));
                }
            }
        }
    }
    Verdict {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checked} checks over {} spaces, both kinds", structural_spaces().len())
        } else {
            failures.join("; ")
        },
    }
}

fn finite_configs() -> Vec<(u64, Vec<i64>, i64, VahlenKind)> {
    let mut out = Vec::new();
    for p in [3u64, 5] {
        let forms: [&[i64]; 8] = [&[], &[1], &[2], &[0], &[1, 1], &[1, 2], &[1, 0], &[0, 0]];
        for diag in forms {
            for c in 0..p as i64 {
                for kind in KINDS {
                    out.push((p, diag.to_vec(), c, kind));
                }
            }
        }
    }
    out
}

fn census() -> Verdict {
    let results: Vec<(String, bool)> = finite_configs()
        .par_iter()
        .map(|(p, diag, c, kind)| {
            let f = FieldDesc::prime(*p).unwrap();
            let h = HalfSpace::new(&algebra(f, diag), f.from_i64(*c), *kind).unwrap();
            let r = orbit_census(&h).unwrap();
            let note = format!(
                "F{p} {diag:?} c={c} {kind}: {}",
                r.mismatches.join(", ")
            );
            (note, r.prediction_holds)
        })
        .collect();
    let total = results.len();
    let bad: Vec<&String> = results.iter().filter(|r| !r.1).map(|r| &r.0).collect();
    Verdict {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{total} configurations match")
        } else {
            format!("{}/{} configurations match; mismatches: {}", total - bad.len(), total, bad.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" | "))
        },
    }
}

fn boundary_closed_forms() -> Verdict {
    let finite: Vec<(String, usize, usize)> = finite_configs()
        .par_iter()
        .map(|(p, diag, c, kind)| {
            let f = FieldDesc::prime(*p).unwrap();
            let h = HalfSpace::new(&algebra(f, diag), f.from_i64(*c), *kind).unwrap();
            let els = f.elements().unwrap();
            let mut xis: Vec<Vec<Scalar>> = (0..els.len().pow(h.coord_len() as u32))
                .map(|mut idx| {
                    (0..h.coord_len())
                        .map(|_| {
                            let s = els[idx % els.len()].clone();
                            idx /= els.len();
                            s
                        })
                        .collect()
                })
                .collect();
            xis.shuffle(&mut rng_from_seed(*p * 1000 + *c as u64));
            xis.truncate(25);
            let (mut n, mut bad) = (0, 0);
            for pt in h.enumerate_points(1_000_000).unwrap().into_iter().filter(Point::is_boundary) {
                for a in els.iter().skip(1) {
                    for xi in &xis {
                        let (m, expected) = boundary_translation(&h, a, xi, &pt).unwrap();
                        n += 1;
                        if h.mobius_apply(&m, &pt).ok() != Some(expected) {
                            bad += 1;
                        }
                    }
                }
            }
            (format!("F{p} {diag:?} c={c} {kind}"), n, bad)
        })
        .collect();
    let mut rational_checked = 0;
    let mut failures: Vec<String> = finite.iter().filter(|r| r.2 > 0).map(|r| format!("{} ({})", r.0, r.2)).collect();
    for (name, alg) in rational_spaces() {
        for c in [0, 1, -1] {
            for kind in KINDS {
                let h = HalfSpace::new(&alg, FieldDesc::Rationals.from_i64(c), kind).unwrap();
                let cands = boundary_candidates(&h).unwrap();
                if cands.is_empty() {
                    continue;
                }
                let r = run_property("acceptance", "boundary-translation", (c + 10) as u64, 100, |rng| {
                    let u = cands.choose(rng).unwrap().clone();
                    let field = FieldDesc::Rationals;
                    let pt = Point::Boundary {
                        u,
                        b: ::vahlen::sample::small_scalar(field, rng),
                    };
                    if h.validate(&pt).is_err() {
                        return Ok(Outcome::Skip);
                    }
                    let a = ::vahlen::sample::nonzero_scalar(field, rng);
                    let xi = ::vahlen::sample::small_vector(field, h.coord_len(), rng);
                    let (m, expected) = boundary_translation(&h, &a, &xi, &pt)?;
                    Ok(if h.mobius_apply(&m, &pt)? == expected {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(serde_json::json!({}))
                    })
                });
                rational_checked += r.checked;
                if !r.passed {
                    failures.push(format!("Q {name} c={c} {kind}"));
                }
            }
        }
    }
    let finite_checked: usize = finite.iter().map(|r| r.1).sum();
    Verdict {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{finite_checked} finite-field checks over every boundary point, {rational_checked} rational samples")
        } else {
            failures.join("; ")
        },
    }
}

fn stabilizer() -> Verdict {
    let mut checked = 0;
    let mut failures = Vec::new();
    for diag in [1, 2, 0] {
        let alg = algebra(f3(), &[diag]);
        for kind in KINDS {
            let group = enumerate_vahlen_group(&alg, kind).unwrap();
            for c in 0..3 {
                let h = HalfSpace::new(&alg, f3().from_i64(c), kind).unwrap();
                let bad = group
                    .par_iter()
                    .filter(|m| {
                        let (fixes, shape) = h.stabilizer_shape_check(m).unwrap();
                        fixes != shape
                    })
                    .count();
                checked += group.len();
                if bad > 0 {
                    failures.push(format!("q={diag}x^2 c={c} {kind}: {bad} disagreements"));
                }
            }
        }
    }
    Verdict {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{checked} Vahlen matrices checked (three forms, every c, both kinds)")
        } else {
            failures.join("; ")
        },
    }
}

fn report(number: u32, name: &str, start: Instant, o: Verdict) -> bool {
    println!(
        "criterion {number} [{name}]: {} ({:.1}s) {}",
        if o.pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64(),
        o.detail
    );
    o.pass
}

fn main() {
    let mut passed = 0;
    let mut run = |n: u32, name: &str, f: &dyn Fn() -> Verdict| {
        let t = Instant::now();
        if report(n, name, t, f()) {
            passed += 1;
        }
    };
    run(1, "exhaustive vector Vahlen conditions", &|| equivalence(VahlenKind::Vector));
    run(2, "exhaustive paravector Vahlen conditions", &|| equivalence(VahlenKind::Paravector));

    let t = Instant::now();
    let s = sampled_action();
    let base = format!("{} configurations, {} samples, {} involving boundary points", s.configs, s.samples, s.boundary_samples);
    let eq = Verdict {
        pass: s.equivariance_failures.is_empty() && s.missing_boundary.is_empty(),
        detail: if s.equivariance_failures.is_empty() && s.missing_boundary.is_empty() {
            base.clone()
        } else {
            format!("{base}; failing: {:?}; no boundary samples: {:?}", s.equivariance_failures, s.missing_boundary)
        },
    };
    if report(3, "equivariance", t, eq) {
        passed += 1;
    }
    let id = Verdict {
        pass: s.identity_failures.is_empty(),
        detail: if s.identity_failures.is_empty() {
            base
        } else {
            format!("{base}; failing: {:?}", s.identity_failures)
        },
    };
    if report(4, "value identity", t, id) {
        passed += 1;
    }
    let mut run = |n: u32, name: &str, f: &dyn Fn() -> Verdict| {
        let t = Instant::now();
        if report(n, name, t, f()) {
            passed += 1;
        }
    };
    run(5, "matrix isomorphisms", &|| structural("iso"));
    run(6, "group structure", &|| structural("groups"));
    run(7, "orbit census", &census);
    run(8, "boundary closed forms", &boundary_closed_forms);
    run(9, "stabilizer shape", &stabilizer);
    println!("{passed}/9 criteria passed");
    if passed != 9 {
        std::process::exit(1);
    }
}
