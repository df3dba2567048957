//! End-to-end acceptance checks. Runs without the libtest harness so the
//! PASS/FAIL line of every criterion is always printed; exits nonzero if
//! any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use sepdeg_core::gf::FieldSpec;
use sepdeg_core::invariants::{projective_points, InvariantEngine};
use sepdeg_core::linalg::{kernel_basis, MatrixFq};
use sepdeg_core::mpoly::Monomial;
use sepdeg_core::oracle::{
    self, classify_pm, klein_modules, lucas, pgroup_lower_bound, pm_modules, predict_epsilon_cyclic,
    predict_gamma_cyclic_sum, predict_klein, run_suite, VerifyOptions,
};
use sepdeg_core::reps::{build, dihedral_regular, dual, fixed_space, KleinVariant, Lambda, ModuleDescriptor};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn engine(desc: &ModuleDescriptor) -> InvariantEngine {
    let field = desc.default_field().unwrap();
    InvariantEngine::new(build(desc, &field).unwrap())
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut got = Vec::new();
    for n in 1..=4 {
        let e = engine(&ModuleDescriptor::jordan(2, 2, n));
        let eps = e.epsilon(&unit(n, n - 1), None).map_err(|e| e.to_string())?.degree_found as u64;
        let pred = predict_epsilon_cyclic(&[n], &[0], 2).unwrap().value;
        ensure(eps == pred, || format!("V{n}: brute {eps}, predicted {pred}"))?;
        got.push(eps);
    }
    ensure(got == [1, 2, 4, 4], || format!("Z4 epsilons {got:?}"))?;
    let e = engine(&ModuleDescriptor::jordan(3, 2, 4));
    let eps = e.epsilon(&unit(4, 3), None).map_err(|e| e.to_string())?.degree_found;
    let delta = e.delta_value().map_err(|e| e.to_string())?.value;
    ensure(eps == 9 && delta == 9, || format!("Z9 on V4: epsilon {eps}, delta {delta}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("Z4: epsilon(e_n) = {got:?}; Z9 on V4: epsilon = delta = 9 ({elapsed:.2?})"))
}

fn v3v2() -> ModuleDescriptor {
    ModuleDescriptor::sum(vec![ModuleDescriptor::jordan(2, 2, 3), ModuleDescriptor::jordan(2, 2, 2)])
}

fn criterion_2() -> Outcome {
    let e = engine(&v3v2());
    let fixed = fixed_space(e.rep()).unwrap();
    let classes = projective_points(e.field(), &fixed, 100).unwrap();
    ensure(classes.len() == 3, || format!("{} projective fixed classes", classes.len()))?;
    let cases =
        [(vec![0, 0, 1, 0, 0], vec![0], 4), (vec![0, 0, 0, 0, 1], vec![1], 2), (vec![0, 0, 1, 0, 1], vec![0, 1], 2)];
    for (v, support, want) in &cases {
        ensure(classes.contains(v), || format!("{v:?} is not a canonical class"))?;
        let eps = e.epsilon(v, None).map_err(|e| e.to_string())?.degree_found as u64;
        let pred = predict_epsilon_cyclic(&[3, 2], support, 2).unwrap().value;
        ensure(eps == *want && pred == *want, || format!("{v:?}: brute {eps}, predicted {pred}, want {want}"))?;
    }
    Ok("epsilon = 4, 2, 2 at e31, e22, e31+e22; predictor agrees".into())
}

fn criterion_3() -> Outcome {
    let e = engine(&v3v2());
    let mut checked = 0;
    for d in 1..=6 {
        let r = e.terminal_divisibility_check(d).map_err(|e| e.to_string())?;
        ensure(r.violations.is_empty(), || format!("degree {d}: {:?}", r.violations))?;
        checked += r.monomials_checked;
    }
    ensure(checked > 0, || "no terminal monomials were examined".into())?;
    Ok(format!("degrees 1..6: {checked} terminal monomials, 0 violations"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let e = engine(&ModuleDescriptor::w(2, 1, 3, 2, Lambda::Order { order: 3 }));
    let g = e.gamma_value().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(g.value == 6 && g.points == 5 && g.complete, || format!("{g:?}"))?;
    ensure(g.per_degree_dims.len() <= 6, || "searched past degree 6".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("gamma(Z6, W2,w) = 6 over F4, 5 points ({elapsed:.2?})"))
}

fn criterion_5() -> Outcome {
    let desc = ModuleDescriptor::sum(vec![
        ModuleDescriptor::w(2, 1, 3, 2, Lambda::Coords(vec![1])),
        ModuleDescriptor::w(2, 1, 3, 1, Lambda::Coords(vec![0, 1])),
    ]);
    let e = engine(&desc);
    ensure(e.field().q() == 4, || "field is not F4".into())?;
    let g = e.gamma_value().map_err(|e| e.to_string())?;
    ensure(g.value == 3 && g.points == 21 && g.complete, || format!("{g:?}"))?;
    let pred = predict_gamma_cyclic_sum(&desc, e.field()).unwrap().value;
    ensure(pred == 3, || format!("predicted {pred}"))?;
    Ok("gamma(W2,1 + W1,w) = 3 < |G| = 6, 21 points".into())
}

fn criterion_6() -> Outcome {
    let want = [4, 2, 4, 4, 4, 2, 4, 4, 4, 2, 2];
    let mut row = Vec::new();
    for ((name, desc), w) in klein_modules().into_iter().zip(want) {
        let e = engine(&desc);
        let d = e.delta_value().map_err(|e| e.to_string())?.value as u64;
        let g = e.gamma_value().map_err(|e| e.to_string())?.value as u64;
        let pred = predict_klein(&desc, e.field()).unwrap().value;
        ensure(d == w && g == w && pred == w, || format!("{name}: delta {d}, gamma {g}, predicted {pred}, want {w}"))?;
        row.push(format!("{name}={w}"));
        if let ModuleDescriptor::Klein { variant: KleinVariant::V2m { m: 2, .. } } = &desc {
            for deg in 1..=3u32 {
                let present = e.monomial_in_invariants(deg, &Monomial(vec![0, 0, 0, deg])).unwrap();
                ensure(!present, || format!("{name}: y2^{deg} occurs in an invariant"))?;
            }
        }
    }
    Ok(format!("{}; y2^d absent for d <= 3 on V4,0 and V4,w", row.join(" ")))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let f2 = FieldSpec::prime(2).unwrap();
    let e = InvariantEngine::new(build(&dihedral_regular(2), &f2).unwrap());
    let cl = e.closure().unwrap();
    let bound = pgroup_lower_bound(&cl, 2).unwrap().value;
    ensure(bound == 4, || format!("bound {bound}"))?;
    let basis = fixed_space(e.rep()).unwrap();
    let deadline = start + Duration::from_secs(180);
    let r = e.supremum_until(&basis, Some(deadline), bound as u32).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(r.value as u64 >= bound, || format!("delta {} below the bound", r.value))?;
    if r.complete {
        ensure(r.value <= 8, || format!("delta {} exceeds |G|", r.value))?;
        Ok(format!("bound 4 <= delta = {} <= 8 ({elapsed:.2?})", r.value))
    } else {
        Ok(format!("time budget reached; bound confirmed: delta >= {} ({elapsed:.2?})", r.value))
    }
}

fn criterion_8() -> Outcome {
    let want = [3, 3, 3, 3, 1, 0];
    for ((name, desc), w) in pm_modules().into_iter().zip(want) {
        let e = engine(&desc);
        let order = desc.group_order().unwrap_or_else(|| e.group_order().unwrap() as u64);
        let pred = classify_pm(&e, Some(order)).map_err(|e| e.to_string())?.value;
        let brute = e.delta_value().map_err(|e| e.to_string())?.value as u64;
        ensure(pred == w && brute == w, || format!("{name}: classified {pred}, brute {brute}, want {w}"))?;
    }
    let f3 = FieldSpec::prime(3).unwrap();
    let v2 = build(&ModuleDescriptor::sym(ModuleDescriptor::Borel { p: 3 }, 2), &f3).unwrap();
    let fixed_dual = fixed_space(&dual(&v2).unwrap()).unwrap();
    ensure(fixed_dual == vec![vec![0, 0, 1]], || format!("(V2*)^G = {fixed_dual:?}"))?;
    Ok("A3, S3, S^1, S^2 -> 3; trivial Z6 -> 1; W1,w -> 0; (V2*)^G = <z2>".into())
}

fn binomial_big(t: u64, s: u64) -> BigUint {
    if s > t {
        return BigUint::from(0u32);
    }
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..s {
        num *= BigUint::from(t - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

fn random_point(rng: &mut StdRng, q: u32, n: usize) -> Vec<u32> {
    loop {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

fn criterion_9() -> Outcome {
    // Lucas against exact binomials
    for p in [2u64, 3, 5] {
        for t in 0..=200u64 {
            for s in 0..=200u64 {
                let exact = binomial_big(t, s) % BigUint::from(p);
                let exact: u64 = exact.try_into().unwrap();
                ensure(lucas(t, s, p) == exact, || format!("lucas({t},{s},{p})"))?;
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let modules = [
        ModuleDescriptor::jordan(2, 2, 3),
        ModuleDescriptor::jordan(3, 1, 3),
        v3v2(),
        ModuleDescriptor::w(2, 1, 3, 2, Lambda::Order { order: 3 }),
        ModuleDescriptor::klein(KleinVariant::VOdd { m: 1 }),
        ModuleDescriptor::klein(KleinVariant::V2m { m: 1, lambda: Lambda::Coords(vec![0, 1]) }),
    ];
    let engines: Vec<InvariantEngine> = modules.iter().map(engine).collect();

    // scalar invariance of epsilon, with the Dade bound on every point
    for _ in 0..100 {
        let e = &engines[rng.gen_range(0..engines.len())];
        let q = e.field().q();
        let v = random_point(&mut rng, q, e.rep().dim());
        let c = rng.gen_range(1..q);
        let cv: Vec<u32> = v.iter().map(|&x| e.field().mul(c, x)).collect();
        let a = e.epsilon(&v, None).map_err(|e| e.to_string())?.degree_found;
        let b = e.epsilon(&cv, None).map_err(|e| e.to_string())?.degree_found;
        let order = e.group_order().unwrap() as u32;
        ensure(a == b, || format!("epsilon({v:?}) = {a} but epsilon({c} * v) = {b}"))?;
        ensure(a <= order, || format!("epsilon {a} exceeds |G| = {order}"))?;
    }

    // every emitted basis element is invariant under substitution
    let mut elements = 0;
    for e in &engines {
        for d in 0..=4 {
            for f in &e.invariant_basis(d).basis {
                ensure(e.is_invariant(f).unwrap(), || format!("{f} is not invariant"))?;
                elements += 1;
            }
        }
    }

    // rank-nullity and exactness of kernels on random matrices
    for _ in 0..50 {
        let f = FieldSpec::canonical([2, 3, 5][rng.gen_range(0..3)], 1).unwrap();
        let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let rows: Vec<Vec<u32>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(0..f.q())).collect()).collect();
        let a = MatrixFq::from_rows(&f, &rows).unwrap();
        let k = kernel_basis(&a);
        ensure(a.rank() + k.len() == c, || format!("rank-nullity fails on {a:?}"))?;
        for v in &k {
            ensure(a.apply(v).unwrap().iter().all(|&x| x == 0), || "A v != 0".into())?;
        }
    }

    // gamma of a two-summand cyclic module is the larger summand gamma
    for _ in 0..10 {
        let (p, r) = [(2u32, 2u32), (3, 1), (2, 1)][rng.gen_range(0..3)];
        let pr = p.pow(r) as usize;
        let (n1, n2) = (rng.gen_range(1..=pr), rng.gen_range(1..=pr));
        let gam = |d: &ModuleDescriptor| engine(d).gamma_value().map(|g| g.value).map_err(|e| e.to_string());
        let a = ModuleDescriptor::jordan(p, r, n1);
        let b = ModuleDescriptor::jordan(p, r, n2);
        let s = ModuleDescriptor::sum(vec![a.clone(), b.clone()]);
        let (ga, gb, gs) = (gam(&a)?, gam(&b)?, gam(&s)?);
        ensure(gs == ga.max(gb), || format!("gamma(V{n1}+V{n2}) = {gs}, summands {ga}, {gb} (p = {p})"))?;
    }
    Ok(format!(
        "Lucas t,s <= 200; 100 scalar triples; {elements} basis elements invariant; rank-nullity; 10 max-rule sums"
    ))
}

fn criterion_10() -> Outcome {
    let cases = oracle::reference_suite();
    let opts = VerifyOptions::default();
    let a = serde_json::to_string_pretty(&run_suite("paper", &cases, &opts).map_err(|e| e.to_string())?).unwrap();
    let b = serde_json::to_string_pretty(&run_suite("paper", &cases, &opts).map_err(|e| e.to_string())?).unwrap();
    ensure(a == b, || "reports differ between runs".into())?;
    let report: oracle::SuiteReport = serde_json::from_str(&a).unwrap();
    ensure(report.verdict.is_pass(), || {
        let failed: Vec<String> =
            report.reports.iter().filter(|r| !r.verdict.is_pass()).filter_map(|r| r.name.clone()).collect();
        format!("suite failures: {failed:?}")
    })?;
    let checks: usize = report.reports.iter().map(|r| r.checks.len()).sum();
    ensure(checks > 0, || "empty suite".into())?;
    Ok(format!("{} cases, {checks} checks, byte-identical JSON across two runs", report.reports.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "cyclic epsilon table", criterion_1),
        (2, "mixed-support epsilon", criterion_2),
        (3, "terminal exponent divisibility", criterion_3),
        (4, "gamma of W_(n,lambda)", criterion_4),
        (5, "direct-sum counterexample", criterion_5),
        (6, "Klein four classification", criterion_6),
        (7, "p-group lower bound on D8", criterion_7),
        (8, "{0,1,p} trichotomy", criterion_8),
        (9, "property suites", criterion_9),
        (10, "determinism", criterion_10),
    ];
    let mut failures = Vec::new();
    for (n, name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail}"),
            Err(why) => {
                println!("criterion {n:>2} FAIL  {name}: {why}");
                failures.push(n);
            }
        }
    }
    if failures.is_empty() {
        println!("all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failures:?}");
        ExitCode::FAILURE
    }
}
