//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use drgwb_core::exact::{big_pow, is_integral, rat, BigRational};
use drgwb_core::feasibility::{
    alpha_classification, conjecture_sweep, family1_eliminate, family2_eliminate, Certificate, FeasibilityReport,
    SweepOptions, Verdict,
};
use drgwb_core::graphs::{
    adjacency_spectrum, brute_intersection_numbers, generate, is_distance_regular, DrgMode, Graph,
};
use drgwb_core::params::{
    local_eig_candidates, p633_closed_form, spectrum, srg_from_local, ClassicalParams, Family, IntersectionArray,
};
use drgwb_core::talg::{build_context, decompose, irreducibility_test, Irreducibility, Mode, TModule};
use drgwb_core::uniform::{module_consistency, resubstitute, solve_uniform, supports_uniform};

type Outcome = Result<String, String>;

/// Number, title, time budget and body.
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn first_fail(r: &FeasibilityReport) -> Option<&str> {
    r.checks.iter().find(|c| c.verdict == Verdict::Fail).map(|c| c.name.as_str())
}

fn criterion1() -> Outcome {
    ensure(p633_closed_form(2) == rat(3_317_589), || format!("p633(2) = {}", p633_closed_form(2)))?;
    let ia = ClassicalParams::family(Family::One, 6, 2).unwrap().intersection_array().unwrap();
    ensure(ia.p(6, 3, 3) == rat(3_317_589), || format!("p^6_33 from the array = {}", ia.p(6, 3, 3)))?;
    let integral: Vec<i64> = (2..=1000).filter(|&q| is_integral(&p633_closed_form(q))).collect();
    ensure(integral == [2, 4], || format!("integral at {integral:?}"))?;
    Ok("p633(2) = 3317589; integral for q in {2, 4} only".into())
}

fn criterion2() -> Outcome {
    let mut cells = 0;
    for q in 2..=200i64 {
        for d in 4..=60u32 {
            let r = family1_eliminate(q, d).map_err(|e| format!("({q}, {d}): {e}"))?;
            ensure(r.is_eliminated() && r.certificates_verify(), || format!("({q}, {d}) not eliminated"))?;
            let special = q == 2 || q == 4;
            let expected = match d {
                4 => vec!["f2_divisibility", "f2_integral"],
                5 => vec!["k2_divisibility", "f2_integral"],
                6 | 7 if special => vec!["f2_integral"],
                _ if special => vec!["p844_integral"],
                _ => vec!["p633_divisibility"],
            };
            let got = first_fail(&r).unwrap_or("");
            ensure(expected.contains(&got), || format!("({q}, {d}) failed at {got}, expected {expected:?}"))?;
            if got == "p633_divisibility" {
                let ok = r.checks[0].certificates.iter().any(|c| {
                    matches!(c, Certificate::NotDivides { divisor, dividend, .. }
                        if *dividend == (40 * (3 * q + 1)).into() && *divisor == (q * q + 2 * q + 2).into())
                });
                ensure(ok, || format!("({q}, {d}): wrong divisibility certificate"))?;
            }
            if d == 5 && got == "k2_divisibility" {
                let ok = r.checks[0].certificates.iter().any(|c| {
                    matches!(c, Certificate::NotDivides { dividend, .. } if *dividend == 60720.into())
                });
                ensure(ok, || format!("({q}, 5): wrong k_2 certificate"))?;
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells eliminated along the expected case split"))
}

fn criterion3() -> Outcome {
    let mut cells = 0;
    for q in 2..=200i64 {
        for d in (4..=120u32).filter(|d| d % 6 != 0) {
            let r = family2_eliminate(q, d).map_err(|e| format!("({q}, {d}): {e}"))?;
            ensure(r.is_eliminated() && r.certificates_verify(), || format!("({q}, {d}) not eliminated"))?;
            let got = first_fail(&r).unwrap_or("");
            if d % 2 == 1 {
                let narrowed = q == 3 || q == 7;
                let expected = if narrowed { "f2_two_adic" } else { "f2_divisibility" };
                ensure(got == expected, || format!("({q}, {d}) failed at {got}, expected {expected}"))?;
            } else {
                ensure(got.starts_with("f3_"), || format!("({q}, {d}) failed at {got}"))?;
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells eliminated; odd D reaches the 2-adic step only for q in {{3, 7}}"))
}

fn criterion4() -> Outcome {
    let res = conjecture_sweep(300, 300, &SweepOptions::default()).map_err(|e| e.to_string())?;
    ensure(res.entries.len() == 299 * 50, || format!("{} cells", res.entries.len()))?;
    ensure(res.counterexamples_either.is_empty(), || {
        format!("integral cells: {:?}", res.counterexamples_either)
    })?;
    Ok(format!("{} cells, no integral k_D or f_D", res.entries.len()))
}

fn criterion5() -> Outcome {
    for q in 2..=100i64 {
        for d in 4..=40u32 {
            let c = alpha_classification(q, d).map_err(|e| format!("({q}, {d}): {e}"))?;
            let mut got: Vec<(BigRational, u64)> = c.survivors.iter().map(|s| (s.alpha.clone(), s.mu)).collect();
            got.sort();
            let want = [(rat(q), (q * (q + 1)) as u64), (rat(q + 1), ((q + 1) * (q + 1)) as u64)];
            ensure(got == want, || format!("({q}, {d}): survivors {got:?}"))?;
        }
    }
    Ok("survivors are exactly {q, q+1}; mu = q(q+1) and (q+1)^2".into())
}

fn criterion6() -> Outcome {
    for q in 2..=50i64 {
        for d in 4..=20u32 {
            let qd = BigRational::from_integer(big_pow(q, d));
            let (qr, one) = (rat(q), rat(1));
            for alpha in [q, q + 1] {
                let a = rat(alpha);
                let beta = &a * (BigRational::from_integer(big_pow(q, d + 1) - 1) / rat(q - 1)) - &qr;
                let cp = ClassicalParams::new(d, q, a.clone(), beta).unwrap();
                let ia = cp.intersection_array().map_err(|e| e.to_string())?;
                let srg = srg_from_local(&cp).map_err(|e| e.to_string())?.srg;
                // The displays in closed form.
                let qm1 = &qr - &one;
                let n_disp = (&qd - &one) * (&a * &qd * &qr - &qr * &qr + &qr - &a) / (&qm1 * &qm1);
                let k_disp = (&qr + &one) * (&a * &qd - &qr - &a + &one) / &qm1;
                let l_disp = (&a * &qd + &a * &qr * &qr - &qr * &qr - &a * &qr - &qr - &a + rat(2)) / &qm1;
                let mu_disp = &a * (&qr + &one);
                // Recomputed from the array and the local eigenvalues.
                let (n, k) = (ia.b(0), ia.a(1));
                let r = local_eig_candidates(&cp).eta[3].clone();
                let s = -&qr - &one;
                let mu = &k + &r * &s;
                let lambda = &mu + &r + &s;
                let agree = n_disp == n
                    && k_disp == k
                    && l_disp == lambda
                    && mu_disp == mu
                    && srg.n == n
                    && srg.k == k
                    && srg.lambda == lambda
                    && srg.mu == mu
                    && srg.is_consistent();
                ensure(agree, || format!("({q}, {d}, alpha {alpha}): displays disagree"))?;
            }
        }
    }
    Ok("n, k, lambda, mu agree with the array and eigenvalue relations".into())
}

const CORPUS: [(&str, &str); 11] = [
    ("cycle5", "cycle:5"),
    ("petersen", "petersen"),
    ("hypercube3", "hypercube:3"),
    ("hypercube4", "hypercube:4"),
    ("hypercube5", "hypercube:5"),
    ("hypercube6", "hypercube:6"),
    ("folded_hypercube5", "folded-hypercube:5"),
    ("folded_hypercube7", "folded-hypercube:7"),
    ("hamming3_3", "hamming:3,3"),
    ("johnson5_2", "johnson:5,2"),
    ("grassmann4_2_2", "grassmann:4,2,2"),
];

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load_corpus(name: &str) -> Result<Graph, String> {
    let path = corpus_dir().join(format!("{name}.el"));
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    Graph::from_edge_list(&text, name).map_err(|e| e.to_string())
}

/// Arrays from the standard formulas for each family.
fn expected_array(spec: &str) -> IntersectionArray {
    let arr = |b: Vec<i64>, c: Vec<i64>| IntersectionArray::from_i64(&b, &c).unwrap();
    match spec {
        "cycle:5" => arr(vec![2, 1], vec![1, 1]),
        "petersen" => arr(vec![3, 2], vec![1, 1]),
        "folded-hypercube:5" => arr(vec![5, 4], vec![1, 2]),
        "folded-hypercube:7" => arr(vec![7, 6, 5], vec![1, 2, 3]),
        "hamming:3,3" => arr((0..3).map(|i| (3 - i) * 2).collect(), (1..=3).collect()),
        "johnson:5,2" => arr((0..2).map(|i| (2 - i) * (3 - i)).collect(), (1..=2).map(|i| i * i).collect()),
        // Grassmann J_2(4, 2): b_i = q^(2i+1)[2-i][2-i], c_i = [i]^2 with [j] = (2^j - 1).
        "grassmann:4,2,2" => arr(vec![2 * 3 * 3, 8], vec![1, 9]),
        s => {
            let d: i64 = s.trim_start_matches("hypercube:").parse().unwrap();
            arr((0..d).map(|i| d - i).collect(), (1..=d).collect())
        }
    }
}

fn criterion7() -> Outcome {
    for (name, spec) in CORPUS {
        let g = load_corpus(name)?;
        let generated = generate(spec).map_err(|e| e.to_string())?;
        ensure(g.edges().eq(generated.edges()), || format!("{name}: corpus file differs from {spec}"))?;
        let ia = is_distance_regular(&g, DrgMode::Full)
            .map_err(|e| e.to_string())?
            .array()
            .cloned()
            .ok_or_else(|| format!("{name}: not distance-regular"))?;
        ensure(ia == expected_array(spec), || format!("{name}: array {ia}"))?;
        let brute = brute_intersection_numbers(&g)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{name}: brute force found no constant p^h_ij"))?;
        let d = ia.diameter();
        for h in 0..=d {
            for i in 0..=d {
                for j in 0..=d {
                    let want = rat(brute[h][i][j] as i64);
                    let got = ia.p(h as i64, i as i64, j as i64);
                    ensure(got == want, || format!("{name}: p^{h}_{i}{j} = {got}, brute {want}"))?;
                }
            }
        }
        let conc = adjacency_spectrum(&g).map_err(|e| e.to_string())?;
        ensure(conc.agrees_with(&spectrum(&ia)), || format!("{name}: spectrum mismatch"))?;
    }
    Ok(format!("{} graphs: p^h_ij and spectra agree", CORPUS.len()))
}

fn criterion8() -> Outcome {
    let mut checked = 0;
    for (name, _) in CORPUS {
        let g = load_corpus(name)?;
        let modes: &[Mode] = if g.is_bipartite() { &[Mode::Full] } else { &[Mode::Full, Mode::BipartiteQuotient] };
        for &mode in modes {
            for base in [0, g.n() - 1] {
                let ctx = build_context(&g, base, mode).map_err(|e| e.to_string())?;
                let dec = decompose(&ctx);
                ensure(dec.total_dim() == g.n(), || format!("{name}/{base}: dims sum to {}", dec.total_dim()))?;
                for w in &dec.modules {
                    for v in w.vectors() {
                        let mut images = vec![ctx.lower(v), ctx.raise(v)];
                        if ctx.uses_flat() {
                            images.push(ctx.flat(v));
                        }
                        ensure(images.iter().all(|u| w.contains(u)), || {
                            format!("{name}/{base}: module not closed under the generators")
                        })?;
                    }
                    ensure(w.is_contiguous(), || format!("{name}/{base}: module levels not contiguous"))?;
                    if w.is_thin() {
                        ensure(irreducibility_test(&ctx, w) == Irreducibility::Verified, || {
                            format!("{name}/{base}: thin module failed the irreducibility test")
                        })?;
                    }
                }
                // Negative control: the sum of two modules must be reported reducible.
                if dec.modules.len() >= 2 {
                    let (a, b) = (&dec.modules[0], &dec.modules[dec.modules.len() - 1]);
                    let seeds = vec![a.vectors().next().unwrap().clone(), b.vectors().next().unwrap().clone()];
                    let sum = TModule::closure(&ctx, &seeds);
                    ensure(sum.dim() == a.dim() + b.dim(), || format!("{name}/{base}: sum has wrong dimension"))?;
                    ensure(sum.irreducibility() == Irreducibility::Reducible, || {
                        format!("{name}/{base}: injected reducible module not split")
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} decompositions verified, negative controls split"))
}

fn criterion9() -> Outcome {
    for name in ["folded_hypercube5", "folded_hypercube7"] {
        let g = load_corpus(name)?;
        let v = supports_uniform(&g, 0).map_err(|e| e.to_string())?;
        ensure(v.is_uniform(), || format!("{name}: outcome {:?}", v.outcome))?;
        let ctx = build_context(&g, 0, Mode::BipartiteQuotient).map_err(|e| e.to_string())?;
        let r = resubstitute(&ctx, v.solution().unwrap()).map_err(|e| e.to_string())?;
        ensure(r.holds() && r.checked == g.n() - 1, || format!("{name}: resubstitution {r:?}"))?;
        let c = module_consistency(&ctx, &decompose(&ctx)).map_err(|e| e.to_string())?;
        ensure(c.all_thin && c.isomorphic_by_shape, || format!("{name}: module structure {c:?}"))?;
    }
    for d in 3..=6 {
        let g = load_corpus(&format!("hypercube{d}"))?;
        let ctx = build_context(&g, 0, Mode::Full).map_err(|e| e.to_string())?;
        let v = solve_uniform(&ctx).map_err(|e| e.to_string())?;
        ensure(v.is_uniform(), || format!("hypercube({d}): outcome {:?}", v.outcome))?;
        let r = resubstitute(&ctx, v.solution().unwrap()).map_err(|e| e.to_string())?;
        ensure(r.holds(), || format!("hypercube({d}): resubstitution failed"))?;
        let c = module_consistency(&ctx, &decompose(&ctx)).map_err(|e| e.to_string())?;
        ensure(c.all_thin && c.isomorphic_by_shape, || format!("hypercube({d}): module structure {c:?}"))?;
    }
    Ok("folded cubes 5 and 7 and hypercubes 3..6 uniform, resubstitution exact".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_drgwb"))
        .args(args)
        .env_remove("DRGWB_CHECKPOINT_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
    Ok(out.stdout)
}

fn criterion10() -> Outcome {
    let corpus = corpus_dir();
    let petersen = corpus.join("petersen.el");
    let runs: Vec<Vec<&str>> = vec![
        vec!["params", "-D", "4", "-q", "2", "--alpha", "2", "--beta", "60", "--format", "json"],
        vec!["feasibility", "--family", "2", "-q", "3", "-D", "5", "--format", "json"],
        vec!["sweep", "--q-max", "20", "--d-max", "36", "--format", "csv"],
        vec!["graph", "--file", petersen.to_str().unwrap(), "--format", "json"],
        vec!["modules", "--gen", "folded-hypercube:5", "-x", "3", "--mode", "quotient", "--format", "json"],
        vec!["uniform", "--gen", "hypercube:4", "--format", "json"],
    ];
    for args in &runs {
        let (a, b) = (run_cli(args)?, run_cli(args)?);
        ensure(a == b, || format!("{args:?}: two runs differ"))?;
    }
    // Interrupted-and-resumed sweep equals an uninterrupted one.
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (full, resumed) = (tmp.path().join("full"), tmp.path().join("resumed"));
    conjecture_sweep(40, 60, &SweepOptions { jobs: 2, store: Some(full.clone()) }).map_err(|e| e.to_string())?;
    conjecture_sweep(15, 60, &SweepOptions { jobs: 1, store: Some(resumed.clone()) }).map_err(|e| e.to_string())?;
    conjecture_sweep(40, 60, &SweepOptions { jobs: 3, store: Some(resumed.clone()) }).map_err(|e| e.to_string())?;
    let read = |p: &Path| std::fs::read(p.join("sweep.tsv")).map_err(|e| e.to_string());
    ensure(read(&full)? == read(&resumed)?, || "resumed sweep table differs".into())?;
    Ok(format!("{} reports byte-identical across runs; resumed sweep identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "p633 closed form", Duration::from_secs(10), criterion1),
        (2, "family 1 elimination", Duration::from_secs(120), criterion2),
        (3, "family 2 elimination", Duration::from_secs(120), criterion3),
        (4, "integrality sweep 300 x 300", Duration::from_secs(1800), criterion4),
        (5, "alpha classification", Duration::from_secs(60), criterion5),
        (6, "local strongly regular parameters", Duration::from_secs(10), criterion6),
        (7, "corpus oracles", Duration::from_secs(300), criterion7),
        (8, "Terwilliger decompositions", Duration::from_secs(300), criterion8),
        (9, "uniform verdicts", Duration::from_secs(300), criterion9),
        (10, "determinism", Duration::from_secs(300), criterion10),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for (n, title, budget, f) in criteria {
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > budget => Err(format!("{detail}; over budget ({budget:?})")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {title} ({:.2?}): {detail}", took),
            Err(why) => {
                failures += 1;
                println!("criterion {n:>2} FAIL  {title} ({:.2?}): {why}", took);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
