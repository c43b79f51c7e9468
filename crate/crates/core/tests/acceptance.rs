//! End-to-end acceptance: one `PASS`/`FAIL` line per criterion, then a
//! single assertion over all of them. Oracles here are brute force and
//! independent of the library's search strategies.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orthodual::lattice::Catalog;
use orthodual::morphism::{
    check_weak_p, dualize_hom, dualize_map, enumerate_homs, verify_square_lattice, verify_square_space,
    LatticeHom, WeakPMorphism,
};
use orthodual::qlogic::{
    check_derivation, consequence_alg, consequence_top, eval_alg, eval_top, parse, prove_bounded,
    random_formula, soundness_sweep, trial_rng, Formula, ProofSearch, SpaceValuation, SweepConfig, Valuation,
};
use orthodual::spectral::{perp_a, realization_map, representation_iso, Relation};
use orthodual::{build_dual_lattice, build_dual_space, DualSpace, FiniteOrtholattice, Limits, OrthoSpace, PointSet};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn lat(c: Catalog) -> FiniteOrtholattice {
    c.build(64).unwrap()
}

/// Every catalog orthomodular lattice with at most 32 elements that the
/// round-trip criteria name.
fn round_trip_family() -> Vec<Catalog> {
    let mut out: Vec<Catalog> = (1..=5).map(Catalog::Boolean).collect();
    out.extend((1..=8).map(Catalog::Mo));
    out.extend([Catalog::Oml6, Catalog::O2x2]);
    out
}

// ---------------------------------------------------------------- oracles

fn oracle_distributive(l: &FiniteOrtholattice) -> bool {
    l.elements().all(|a| {
        l.elements()
            .all(|b| l.elements().all(|c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c))))
    })
}

/// `a ≤ b ⇒ b = a + (−a · b)`.
fn oracle_orthomodular(l: &FiniteOrtholattice) -> bool {
    l.elements()
        .all(|a| l.elements().all(|b| !l.leq(a, b) || b == l.join(a, l.meet(l.ortho(a), b))))
}

/// Every subset of `X` that is open, closed, and ⊥-stable.
fn oracle_clopen_stable(x: &OrthoSpace) -> Vec<PointSet> {
    let m = x.len();
    let frame = x.frame();
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        let u = PointSet::from_fn(m, |i| mask >> i & 1 == 1);
        let uperp = PointSet::from_fn(m, |p| u.iter().all(|q| frame.perp(p, q)));
        let uperpperp = PointSet::from_fn(m, |p| uperp.iter().all(|q| frame.perp(p, q)));
        if uperpperp == u && x.topology().is_open(&u) && x.topology().is_closed(&u) {
            out.push(u);
        }
    }
    out
}

// ---------------------------------------------------------------- criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let o2x2 = lat(Catalog::O2x2);
    let o6 = lat(Catalog::O6);
    let oml6 = lat(Catalog::Oml6);
    let mut ok = o2x2.is_distributive() && o2x2.is_orthomodular();
    ok &= !o6.is_distributive() && !o6.is_orthomodular();
    ok &= !oml6.is_distributive() && oml6.is_orthomodular();
    let w = o6.check_orthomodular().unwrap_err();
    ok &= w.a != w.b && o6.leq(w.a, w.b) && o6.meet(o6.ortho(w.a), w.b) == o6.zero();
    let d = oml6.check_distributive().unwrap_err();
    let [a, b, c] = d;
    ok &= oml6.meet(a, oml6.join(b, c)) != oml6.join(oml6.meet(a, b), oml6.meet(a, c));
    for l in [&o2x2, &o6, &oml6] {
        ok &= oracle_distributive(l) == l.is_distributive();
        ok &= oracle_orthomodular(l) == l.is_orthomodular();
    }
    let t = start.elapsed();
    ok &= t < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "O6 witness (a, b) = ({}, {}); OML6 distributivity witness ({}, {}, {}); {t:.2?}",
            o6.label(w.a),
            o6.label(w.b),
            oml6.label(a),
            oml6.label(b),
            oml6.label(c)
        ),
    )
}

fn h_preserves(l: &FiniteOrtholattice, d: &DualSpace) -> bool {
    let x = d.space();
    let hs: Vec<PointSet> = l.elements().map(|a| d.h(a)).collect();
    let mut sorted = hs.clone();
    sorted.sort_by(|a, b| a.canonical_cmp(b));
    sorted.dedup();
    let mut family = x.clopen_stable().to_vec();
    family.sort_by(|a, b| a.canonical_cmp(b));
    let bijective = sorted.len() == l.len() && sorted == family;
    let zero = hs[l.zero()] == PointSet::singleton(x.len(), d.omega());
    let ops = l.elements().all(|a| {
        hs[l.ortho(a)] == x.frame().ortho_complement(&hs[a])
            && l.elements().all(|b| hs[l.meet(a, b)] == hs[a].intersection(&hs[b]))
    });
    bijective && zero && ops
}

fn criterion_2() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut failed = Vec::new();
    for c in round_trip_family() {
        let start = Instant::now();
        let l = lat(c);
        let ok = match representation_iso(&l) {
            Ok(r) => r.report.all_passed() && h_preserves(&l, &r.dual),
            Err(_) => false,
        };
        let t = start.elapsed();
        worst = worst.max(t);
        if !ok || t >= Duration::from_secs(10) {
            failed.push(c.to_string());
        }
    }
    outcome(
        failed.is_empty(),
        format!("{} lattices, slowest {worst:.2?}, failing {failed:?}", round_trip_family().len()),
    )
}

fn criterion_3() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut failed = Vec::new();
    for c in round_trip_family() {
        let x = build_dual_space(&lat(c)).unwrap().into_space();
        let start = Instant::now();
        let ok = match realization_map(&x) {
            Ok(r) => {
                let bx = r.bidual.space();
                let carrier = |p: usize| &r.bidual.filters()[r.map[p]].carrier;
                let m = x.len();
                let mut ok = r.report.all_passed();
                // bijective
                let mut image = r.map.clone();
                image.sort();
                image.dedup();
                ok &= image.len() == m && bx.len() == m;
                // f(x) = {U : x ∈ U}
                ok &= (0..m).all(|p| {
                    x.clopen_stable()
                        .iter()
                        .enumerate()
                        .all(|(i, u)| u.contains(p) == carrier(p).contains(i))
                });
                // relational isomorphism, both relations, every ordered pair
                ok &= (0..m).all(|p| {
                    (0..m).all(|q| {
                        x.frame().leq(p, q) == carrier(p).is_subset(carrier(q))
                            && x.frame().leq(p, q) == bx.frame().leq(r.map[p], r.map[q])
                            && x.frame().perp(p, q) == perp_a(&r.dual_lattice, carrier(p), carrier(q))
                            && x.frame().perp(p, q) == bx.frame().perp(r.map[p], r.map[q])
                    })
                });
                // bicontinuous against both materialised topologies; past the
                // materialisation cap the basis suffices, since f is a bijection
                // and images and preimages commute with unions
                let forward = |u: &PointSet| PointSet::from_fn(bx.len(), |t| (0..m).any(|p| r.map[p] == t && u.contains(p)));
                let backward = |v: &PointSet| PointSet::from_fn(m, |p| v.contains(r.map[p]));
                let opens = x.topology().materialize(1 << 16).unwrap_or_else(|_| x.topology().basis());
                let opens2 = bx.topology().materialize(1 << 16).unwrap_or_else(|_| bx.topology().basis());
                ok &= opens.iter().all(|u| bx.topology().is_open(&forward(u)));
                ok &= opens2.iter().all(|v| x.topology().is_open(&backward(v)));
                ok
            }
            Err(_) => false,
        };
        let t = start.elapsed();
        worst = worst.max(t);
        if !ok || t >= Duration::from_secs(10) {
            failed.push(c.to_string());
        }
    }
    outcome(
        failed.is_empty(),
        format!("{} spaces, slowest {worst:.2?}, failing {failed:?}", round_trip_family().len()),
    )
}

fn criterion_4() -> Outcome {
    let limits = Limits::default();
    let mut ok = true;
    let mut lowest = (1.0f64, String::new());
    let mut notes = Vec::new();
    for (s, c) in round_trip_family().into_iter().enumerate() {
        let x = build_dual_space(&lat(c)).unwrap().into_space();
        let report = x.check();
        if report.frame.checks.len() != 9 || report.space.checks.len() != 6 || !report.all_passed() {
            ok = false;
            notes.push(format!("{c}: unmutated space fails"));
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + s as u64);
        let m = x.len();
        let mut flipped = 0;
        for _ in 0..200 {
            let rel = if rng.random_bool(0.5) { Relation::Order } else { Relation::Perp };
            let (p, q) = (rng.random_range(0..m), rng.random_range(0..m));
            let Ok(y) = x.mutate(rel, p, q, &limits) else {
                // the mutated frame is too large to materialise; count as not flipped and invalid
                ok = false;
                continue;
            };
            let r = y.check();
            let failing: Vec<_> = r.frame.failures().chain(r.space.failures()).collect();
            if !failing.is_empty() {
                if failing.iter().any(|c| c.outcome.witness().is_none()) {
                    ok = false;
                    notes.push(format!("{c}: failure without witness"));
                }
                flipped += 1;
            } else {
                // a non-flipping mutation must still be a valid orthomodular space
                let valid = build_dual_lattice(&y).is_ok_and(|l| l.is_orthomodular())
                    && realization_map(&y).is_ok_and(|r| r.report.all_passed());
                if !valid {
                    ok = false;
                    notes.push(format!("{c}: silent mutation {rel:?} ({p}, {q}) is invalid"));
                }
            }
        }
        let rate = flipped as f64 / 200.0;
        if rate <= lowest.0 {
            lowest = (rate, c.to_string());
        }
        if rate < 0.95 {
            ok = false;
            notes.push(format!("{c}: flip rate {rate:.3}"));
        }
    }
    outcome(
        ok,
        format!("lowest flip rate {:.3} ({}); {:?}", lowest.0, lowest.1, notes),
    )
}

fn criterion_5() -> Outcome {
    let limits = Limits::default();
    let cats = Catalog::orthomodular_up_to(8);
    let lattices: Vec<Arc<FiniteOrtholattice>> = cats.iter().map(|&c| Arc::new(lat(c))).collect();
    let duals: Vec<DualSpace> = lattices.iter().map(|l| build_dual_space(l).unwrap()).collect();
    let mut ok = true;
    let mut count = 0;
    // homs[i][j]: every hom i → j with its dual map
    let mut homs: Vec<Vec<Vec<(LatticeHom, WeakPMorphism)>>> = Vec::new();
    for (i, l) in lattices.iter().enumerate() {
        let mut row = Vec::new();
        for (j, l2) in lattices.iter().enumerate() {
            let mut cell = Vec::new();
            for phi in enumerate_homs(l, l2, &limits).unwrap() {
                count += 1;
                let psi = dualize_hom(&phi).unwrap();
                ok &= check_weak_p(&psi).is_ok();
                let chi = dualize_map(&psi).unwrap();
                let (src, tgt) = (&duals[i], &duals[j]);
                let idx = |d: &DualSpace, a: usize| d.space().index_of_clopen_stable(&d.h(a)).unwrap();
                ok &= l.elements().all(|a| chi.apply(idx(src, a)) == idx(tgt, phi.apply(a)));
                ok &= verify_square_lattice(&phi).unwrap();
                ok &= verify_square_space(&psi).unwrap();
                cell.push((phi, psi));
            }
            row.push(cell);
        }
        homs.push(row);
    }
    // identities
    for (i, l) in lattices.iter().enumerate() {
        let id = LatticeHom::identity(l.clone());
        let psi = dualize_hom(&id).unwrap();
        ok &= psi.table().iter().enumerate().all(|(p, &q)| p == q);
        let x = Arc::new(duals[i].space().clone());
        let back = dualize_map(&WeakPMorphism::identity(x)).unwrap();
        ok &= back.table().iter().enumerate().all(|(p, &q)| p == q);
    }
    // composition, both directions of the duality
    let mut pairs = 0;
    let n = lattices.len();
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for (f, sf) in &homs[i][j] {
                    for (g, sg) in &homs[j][k] {
                        pairs += 1;
                        let gf = g.compose(f).unwrap();
                        let s_gf = dualize_hom(&gf).unwrap();
                        let composed = sf.compose(sg).unwrap();
                        ok &= s_gf.table() == composed.table();
                        let a_comp = dualize_map(&composed).unwrap();
                        let a_then = dualize_map(sg).unwrap().compose(&dualize_map(sf).unwrap()).unwrap();
                        ok &= a_comp.table() == a_then.table();
                    }
                }
            }
        }
    }
    outcome(
        ok,
        format!("{count} homomorphisms over {n} lattices, {pairs} composable pairs"),
    )
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut spaces = 0;
    for c in round_trip_family() {
        let x = build_dual_space(&lat(c)).unwrap().into_space();
        if x.len() > 12 {
            continue;
        }
        spaces += 1;
        let mut lib = x.clopen_stable().to_vec();
        lib.sort_by(|a, b| a.canonical_cmp(b));
        let mut oracle = oracle_clopen_stable(&x);
        oracle.sort_by(|a, b| a.canonical_cmp(b));
        ok &= lib == oracle;
    }
    outcome(ok && spaces > 0, format!("{spaces} spaces with at most 12 points"))
}

fn criterion_7() -> Outcome {
    let family: Vec<FiniteOrtholattice> = Catalog::orthomodular_up_to(16).into_iter().map(lat).collect();
    let cfg = SweepConfig {
        trials: 10_000,
        seed: 2024,
        ..SweepConfig::default()
    };
    let start = Instant::now();
    let r = soundness_sweep(&family, &cfg).unwrap();
    let t = start.elapsed();
    outcome(
        r.violations.is_empty() && r.per_rule.len() == 10 && t < Duration::from_secs(60),
        format!(
            "{} trials, {} sequents, {} algebraic + {} topological checks, {} violations, {t:.2?}",
            r.trials,
            r.sequents_checked,
            r.algebraic_checks,
            r.topological_checks,
            r.violations.len()
        ),
    )
}

/// Every formula over `{F, p1, p2}` with depth at most 3.
fn small_formulas() -> Vec<Formula> {
    let mut by_depth: Vec<Formula> = vec![Formula::Falsum, Formula::Var(1), Formula::Var(2)];
    for _ in 1..3 {
        let prev = by_depth.clone();
        let mut next = prev.clone();
        next.extend(prev.iter().map(|f| f.clone().neg()));
        for a in &prev {
            for b in &prev {
                next.push(a.clone().and(b.clone()));
            }
        }
        next.sort();
        next.dedup();
        by_depth = next;
    }
    by_depth
}

fn criterion_8() -> Outcome {
    let formulas = small_formulas();
    let cats = Catalog::orthomodular_up_to(8);
    let limits = Limits::default();
    let mut ok = formulas.len() == 243;
    let mut family_alg = vec![true; formulas.len() * formulas.len()];
    let mut family_top = family_alg.clone();
    let mut lattices = Vec::new();
    let mut spaces = Vec::new();
    for &c in &cats {
        let l = lat(c);
        let d = build_dual_space(&l).unwrap();
        let x = d.space().clone();
        let k = l.len();
        let co = x.clopen_stable().to_vec();
        // value tables over every valuation of p1, p2
        let alg: Vec<Vec<usize>> = formulas
            .iter()
            .map(|f| {
                (0..k * k)
                    .map(|v| eval_alg(f, &l, &Valuation::from([(1, v / k), (2, v % k)])).unwrap())
                    .collect()
            })
            .collect();
        let top: Vec<Vec<usize>> = formulas
            .iter()
            .map(|f| {
                (0..co.len() * co.len())
                    .map(|v| {
                        let w = SpaceValuation::from([(1, co[v / co.len()].clone()), (2, co[v % co.len()].clone())]);
                        let u = eval_top(f, &x, &w).unwrap();
                        co.iter().position(|c| *c == u).expect("value is clopen stable")
                    })
                    .collect()
            })
            .collect();
        let subset: Vec<Vec<bool>> = co.iter().map(|u| co.iter().map(|v| u.is_subset(v)).collect()).collect();
        let n = formulas.len();
        for a in 0..n {
            for b in 0..n {
                let va = alg[a].iter().zip(&alg[b]).all(|(&x, &y)| l.leq(x, y));
                let vt = top[a].iter().zip(&top[b]).all(|(&x, &y)| subset[x][y]);
                ok &= va == vt;
                family_alg[a * n + b] &= va;
                family_top[a * n + b] &= vt;
            }
        }
        lattices.push(l);
        spaces.push(x);
    }
    ok &= family_alg == family_top;
    // the library's consequence verdicts agree with the tables on a sample
    let n = formulas.len();
    let mut sampled = 0;
    for code in (0..n * n).step_by(97) {
        let (a, b) = (&formulas[code / n], &formulas[code % n]);
        let ca = consequence_alg(a, b, &lattices, &limits, 0).holds();
        let ct = consequence_top(a, b, &spaces, &limits, 0).holds();
        ok &= ca == family_alg[code] && ct == family_top[code];
        sampled += 1;
    }
    let holding = family_alg.iter().filter(|&&h| h).count();
    outcome(
        ok,
        format!(
            "{} formulas, {} sequents over {} lattices ({holding} valid), {sampled} cross-checked via the library",
            formulas.len(),
            n * n,
            cats.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let alpha = parse("p1 & (p2 | p3)").unwrap();
    let beta = parse("(p1 & p2) | (p1 & p3)").unwrap();
    let l = lat(Catalog::Oml6);
    let limits = Limits::default();
    let mut ok = true;
    let r = consequence_alg(&alpha, &beta, std::slice::from_ref(&l), &limits, 0);
    let labels = r.countermodel().map(|m| {
        (1..=3)
            .map(|p| l.label(m.valuation[&p]).to_string())
            .collect::<Vec<_>>()
    });
    ok &= labels.as_deref() == Some(&["a".to_string(), "b".to_string(), "-b".to_string()][..]);
    let start = Instant::now();
    let search = prove_bounded(&alpha, &beta, 6);
    let t = start.elapsed();
    ok &= matches!(search, ProofSearch::NotFoundWithinBound { depth: 6, .. });
    let comm = prove_bounded(&parse("p1 & p2").unwrap(), &parse("p2 & p1").unwrap(), 2);
    let height = comm.derivation().map(|d| d.height());
    ok &= comm.derivation().is_some_and(|d| check_derivation(d).is_ok() && d.height() <= 2);
    outcome(
        ok,
        format!("countermodel {labels:?}; depth-6 search {search:?} in {t:.2?}; commutation proof height {height:?}"),
    )
}

fn criterion_10() -> Outcome {
    let mut ok = true;
    for i in 0..1000 {
        let mut rng = trial_rng(10, i);
        let f = random_formula(&mut rng, 6, 4);
        ok &= f.depth() <= 6 && parse(&f.to_string()).as_ref() == Ok(&f);
    }
    let cases = [
        ("", 0),
        ("p", 1),
        ("p1 &", 4),
        ("(p1 & p2", 8),
        ("p1 p2", 3),
        ("q1", 0),
        ("~", 1),
        ("p1 & )", 5),
        ("p1 | | p2", 5),
        ("((p1)", 5),
        ("p1 & p2)", 7),
    ];
    for (text, pos) in cases {
        ok &= parse(text).is_err_and(|e| e.position == pos && !e.expected.is_empty());
    }
    outcome(ok, format!("1000 round trips, {} error cases", cases.len()))
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("catalog classification", criterion_1),
        ("representation round trip", criterion_2),
        ("realization round trip", criterion_3),
        ("frame and space condition suites", criterion_4),
        ("functorial duality", criterion_5),
        ("perp-stability oracle", criterion_6),
        ("logic soundness sweep", criterion_7),
        ("semantics agreement", criterion_8),
        ("quantum signature", criterion_9),
        ("parser", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        // straight to the stream: the criterion lines stay visible under capture
        let line = format!("[{}] {:>2} {name}: {}\n", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
        let _ = std::io::Write::write_all(&mut std::io::stderr(), line.as_bytes());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
