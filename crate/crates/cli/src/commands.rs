use std::path::{Path, PathBuf};

use anyhow::Context;
use drgwb_core::exact::{approx_f64, parse_rational, BigRational};
use drgwb_core::feasibility::{
    conjecture_sweep, family1_eliminate, family2_eliminate, integrality_screen, FeasibilityReport, SweepOptions,
    Verdict,
};
use drgwb_core::graphs::{adjacency_spectrum, diameter, is_distance_regular, DrgCheck, DrgMode, Graph};
use drgwb_core::params::{local_eig_candidates, spectrum, srg_from_local, ClassicalParams, Eigenvalue, SpectrumEntry};
use drgwb_core::talg::{build_context, decompose, thinness_report, Mode};
use drgwb_core::uniform::{resubstitute, solve_uniform, supports_uniform, Outcome, UniformVerdict, Witness};
use serde_json::{json, Value};

use crate::report::{list, num, num_json, strings, yes_no, Report};

fn eigenvalue_text(e: &Eigenvalue) -> String {
    match e {
        Eigenvalue::Rational { value } => num(value),
        Eigenvalue::Irrational { factor, lower, upper } => {
            let mid = (lower + upper) / BigRational::from_integer(2.into());
            match approx_f64(&mid) {
                Some(v) => format!("root of {factor} in ({lower}, {upper}) (~{v:.6})"),
                None => format!("root of {factor} in ({lower}, {upper})"),
            }
        }
    }
}

fn multiplicity_text(m: &Option<BigRational>) -> String {
    m.as_ref().map_or("not rational".into(), num)
}

fn spectrum_lines(rep: &mut Report, spec: &[SpectrumEntry]) {
    rep.line("spectrum:");
    for (i, e) in spec.iter().enumerate() {
        rep.line(format!(
            "  theta_{i} = {}  multiplicity {}",
            eigenvalue_text(&e.theta),
            multiplicity_text(&e.multiplicity)
        ));
    }
}

pub fn params(d: u32, q: i64, alpha: &str, beta: &str) -> anyhow::Result<Report> {
    let cp = ClassicalParams::new(d, q, parse_rational(alpha)?, parse_rational(beta)?)?;
    let ia = cp.intersection_array()?;
    let spec = spectrum(&ia);
    let eta = local_eig_candidates(&cp);
    let mut rep = Report::new("params", &["quantity", "value"]);
    rep.line(format!("parameters: D={d} q={q} alpha={} beta={}", cp.alpha(), cp.beta()));
    let family = cp.family_of().map(|f| f.to_string());
    rep.line(format!("family: {}", family.as_deref().unwrap_or("none")));
    rep.line(format!("array: {ia}"));
    rep.line(format!("a: {}", list(ia.a_list())));
    rep.line(format!("valencies: {}", list(ia.valencies())));
    rep.line(format!("order: {}", ia.order()));
    spectrum_lines(&mut rep, &spec);
    let local = match srg_from_local(&cp) {
        Ok(l) => {
            let s = &l.srg;
            rep.line(format!(
                "local srg: n={} k={} lambda={} mu={} r={} s={}",
                num(&s.n),
                num(&s.k),
                num(&s.lambda),
                num(&s.mu),
                num(&s.r),
                num(&s.s)
            ));
            rep.line(format!(
                "forced beta: {} (given beta {})",
                num(&l.forced_beta),
                if l.beta_matches { "matches" } else { "differs" }
            ));
            serde_json::to_value(&l)?
        }
        Err(e) => {
            rep.line(format!("local srg: not available ({e})"));
            json!({ "unavailable": e.to_string() })
        }
    };
    rep.line(format!("eta: {}", list(&eta.eta)));
    rep.row(["array", &ia.to_string()]);
    rep.row(["order", &ia.order().to_string()]);
    for (i, e) in spec.iter().enumerate() {
        rep.row([format!("theta_{i}"), eigenvalue_text(&e.theta)]);
        rep.row([format!("m_{i}"), multiplicity_text(&e.multiplicity)]);
    }
    for (i, x) in eta.eta.iter().enumerate() {
        rep.row([format!("eta_{}", i + 1), x.to_string()]);
    }
    let spec_json: Vec<Value> = spec
        .iter()
        .map(|e| {
            json!({
                "theta": e.theta,
                "approx": e.theta.rational().map(num_json),
                "multiplicity": e.multiplicity.as_ref().map(ToString::to_string),
            })
        })
        .collect();
    rep.json = json!({
        "params": cp,
        "family": family,
        "array": ia,
        "a": strings(ia.a_list()),
        "valencies": strings(ia.valencies()),
        "order": ia.order().to_string(),
        "spectrum": spec_json,
        "local_srg": local,
        "eta": eta,
    });
    Ok(rep)
}

fn feasibility_report(fr: &FeasibilityReport) -> Report {
    let mut rep = Report::new("feasibility", &["check", "verdict", "certificate"]);
    rep.line(format!("parameters: {}", fr.params));
    rep.line(format!(
        "verdict: {}",
        if fr.is_eliminated() { "eliminated" } else { "feasible so far" }
    ));
    for c in &fr.checks {
        let v = match c.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        };
        rep.line(format!("check {}: {v}", c.name));
        for cert in &c.certificates {
            rep.line(format!("  - {cert}"));
            rep.row([c.name.as_str(), v, &cert.to_string()]);
        }
        if c.certificates.is_empty() {
            rep.row([c.name.as_str(), v, ""]);
        }
    }
    rep.line(format!("certificates verify: {}", yes_no(fr.certificates_verify())));
    rep.json = json!({
        "report": fr,
        "eliminated": fr.is_eliminated(),
        "certificates_verify": fr.certificates_verify(),
    });
    rep
}

pub fn feasibility_family(family: u8, q: i64, d: u32) -> anyhow::Result<Report> {
    let fr = match family {
        1 => family1_eliminate(q, d)?,
        _ => family2_eliminate(q, d)?,
    };
    Ok(feasibility_report(&fr))
}

pub fn feasibility_params(d: u32, q: i64, alpha: &str, beta: &str) -> anyhow::Result<Report> {
    let cp = ClassicalParams::new(d, q, parse_rational(alpha)?, parse_rational(beta)?)?;
    Ok(feasibility_report(&integrality_screen(&cp)))
}

pub fn sweep(q_max: u64, d_max: u32, jobs: usize, store: Option<PathBuf>) -> anyhow::Result<Report> {
    let opts = SweepOptions { jobs, store: store.clone() };
    let res = conjecture_sweep(q_max, d_max, &opts)?;
    let mut rep = Report::new("sweep", &["q", "D", "kd_integer", "fd_integer"]);
    let kd = res.entries.iter().filter(|e| e.kd_integer).count();
    let fd = res.entries.iter().filter(|e| e.fd_integer).count();
    rep.line(format!("range: 2 <= q <= {q_max}, 6 <= D <= {d_max}, D = 0 (mod 6)"));
    rep.line(format!("cells: {}", res.entries.len()));
    rep.line(format!("k_D integral: {kd}"));
    rep.line(format!("f_D integral: {fd}"));
    rep.line(format!("counterexamples (both): {}", res.counterexamples_both.len()));
    rep.line(format!("counterexamples (either): {}", res.counterexamples_either.len()));
    for e in &res.counterexamples_either {
        rep.line(format!("  q={} D={} k_D integral: {} f_D integral: {}", e.q, e.d, yes_no(e.kd_integer), yes_no(e.fd_integer)));
    }
    if let Some(dir) = &store {
        rep.line(format!("table: {}", dir.join("sweep.tsv").display()));
    }
    for e in &res.entries {
        rep.row([e.q.to_string(), e.d.to_string(), (e.kd_integer as u8).to_string(), (e.fd_integer as u8).to_string()]);
    }
    rep.json = json!({
        "q_max": q_max,
        "d_max": d_max,
        "cells": res.entries.len(),
        "kd_integral": kd,
        "fd_integral": fd,
        "counterexamples_both": res.counterexamples_both,
        "counterexamples_either": res.counterexamples_either,
    });
    Ok(rep)
}

pub fn edge_list(g: &Graph) -> Report {
    let mut rep = Report::new("edge-list", &["u", "v"]);
    rep.text = g.to_edge_list();
    for (u, v) in g.edges() {
        rep.row([u, v]);
    }
    rep.json = json!({ "graph": graph_json(g) });
    rep
}

pub fn graph(g: &Graph, full: bool) -> anyhow::Result<Report> {
    let mut rep = Report::new("graph", &["quantity", "value"]);
    let mode = if full { DrgMode::Full } else { DrgMode::Cheap };
    let diam = diameter(g)?;
    let drg = is_distance_regular(g, mode)?;
    let conc = adjacency_spectrum(g)?;
    rep.line(format!("graph: {}", g.name()));
    rep.line(format!("vertices: {}", g.n()));
    rep.line(format!("edges: {}", g.edge_count()));
    rep.line(format!("bipartite: {}", yes_no(g.is_bipartite())));
    rep.line(format!("diameter: {diam}"));
    rep.row(["vertices", &g.n().to_string()]);
    rep.row(["edges", &g.edge_count().to_string()]);
    rep.row(["diameter", &diam.to_string()]);
    let mut drg_json = json!(null);
    let mut matches = None;
    match &drg {
        DrgCheck::Regular(ia) => {
            rep.line("distance-regular: yes");
            rep.line(format!("array: {ia}"));
            rep.row(["array", &ia.to_string()]);
            let agrees = conc.agrees_with(&spectrum(ia));
            matches = Some(agrees);
            drg_json = json!({ "array": ia });
        }
        DrgCheck::NotRegular(w) => {
            rep.line("distance-regular: no");
            rep.line(format!(
                "witness: vertices {} and {} give {} = {} (expected {})",
                w.x, w.y, w.quantity, w.value, w.expected
            ));
            rep.row(["array", "none"]);
            drg_json = json!({ "witness": w });
        }
    }
    rep.line("adjacency eigenvalues:");
    for (theta, alg, geo) in &conc.rational {
        rep.line(format!("  {}  multiplicity {alg} (eigenspace {geo})", num(theta)));
    }
    if conc.remainder.degree() > 0 {
        rep.line(format!("  irrational part: {}", conc.remainder));
    }
    if let Some(m) = matches {
        rep.line(format!("spectrum matches array: {}", yes_no(m)));
    }
    let eig: Vec<Value> = conc
        .rational
        .iter()
        .map(|(t, a, g)| json!({ "theta": t.to_string(), "multiplicity": a, "eigenspace": g }))
        .collect();
    rep.json = json!({
        "graph": g.name(),
        "vertices": g.n(),
        "edges": g.edge_count(),
        "bipartite": g.is_bipartite(),
        "diameter": diam,
        "distance_regular": drg.array().is_some(),
        "drg": drg_json,
        "char_poly": conc.char_poly.to_string(),
        "rational_eigenvalues": eig,
        "irrational_part": conc.remainder.to_string(),
        "spectrum_matches_array": matches,
    });
    Ok(rep)
}

pub fn modules(g: &Graph, x: usize, quotient: bool) -> anyhow::Result<Report> {
    let mode = if quotient { Mode::BipartiteQuotient } else { Mode::Full };
    let ctx = build_context(g, x, mode)?;
    let dec = decompose(&ctx);
    let sums = dec.summaries(&ctx);
    let thin = thinness_report(&dec);
    let mut rep = Report::new(
        "modules",
        &["endpoint", "diameter", "level_dims", "dimension", "thin", "local_eigenvalue", "level_products", "irreducibility"],
    );
    rep.line(format!("graph: {}  base: {x}  mode: {}", g.name(), if quotient { "quotient" } else { "full" }));
    rep.line("r  d  dims  thin  eta  products  irreducibility");
    for s in &sums {
        let dims = s.level_dims.iter().map(ToString::to_string).collect::<Vec<_>>().join("/");
        let eta = s.local_eigenvalue.as_ref().map_or("-".into(), num);
        let irr = serde_json::to_value(s.irreducibility)?.as_str().unwrap_or("").to_string();
        rep.line(format!(
            "{}  {}  {dims}  {}  {eta}  {}  {irr}",
            s.endpoint,
            s.diameter,
            yes_no(s.thin),
            list(&s.level_products)
        ));
        rep.row([
            s.endpoint.to_string(),
            s.diameter.to_string(),
            dims,
            s.dimension.to_string(),
            s.thin.to_string(),
            eta,
            list(&s.level_products),
            irr,
        ]);
    }
    rep.line(format!("modules: {}", sums.len()));
    rep.line(format!("total dimension: {} (n = {})", dec.total_dim(), g.n()));
    rep.line(format!("all thin: {}", yes_no(thin.all_thin)));
    rep.json = json!({
        "graph": g.name(),
        "base": x,
        "mode": mode,
        "modules": sums,
        "total_dimension": dec.total_dim(),
        "n": g.n(),
        "all_thin": thin.all_thin,
    });
    Ok(rep)
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Uniform => "yes",
        Outcome::NoUniform => "no",
        Outcome::UndeterminedValidation => "undetermined",
    }
}

fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    json!({ "name": g.name(), "n": g.n(), "edges": edges })
}

pub fn uniform(g: &Graph, x: usize) -> anyhow::Result<Report> {
    let (verdict, mode) = if g.is_bipartite() {
        (solve_uniform(&build_context(g, x, Mode::Full)?)?, Mode::Full)
    } else {
        (supports_uniform(g, x)?, Mode::BipartiteQuotient)
    };
    let ctx = build_context(g, x, mode)?;
    let mut rep = Report::new("uniform", &["level", "e_minus", "e_plus", "f"]);
    rep.line(format!("graph: {}  base: {x}", g.name()));
    rep.line(format!(
        "context: {}",
        if mode == Mode::Full { "bipartite graph" } else { "flat edges removed" }
    ));
    rep.line(format!("uniform: {}", outcome_word(verdict.outcome)));
    let mut resub = None;
    match &verdict.witness {
        Witness::Structure(s) => {
            for i in 1..=s.eps() {
                rep.line(format!(
                    "  level {i}: e- = {}  e+ = {}  f = {}",
                    num(s.u.minus(i)),
                    num(s.u.plus(i)),
                    num(&s.f[i - 1])
                ));
                rep.row([i.to_string(), s.u.minus(i).to_string(), s.u.plus(i).to_string(), s.f[i - 1].to_string()]);
            }
            let r = resubstitute(&ctx, s)?;
            rep.line(format!("resubstitution: {} on {} vectors", if r.holds() { "exact" } else { "FAILED" }, r.checked));
            resub = Some(r);
        }
        Witness::InfeasibleLevel(w) => {
            rep.line(format!(
                "infeasible at level {}: rank {} of targets, {} with the right-hand side",
                w.level, w.target_rank, w.augmented_rank
            ));
            rep.line(format!("witness verifies: {}", yes_no(w.verify(&ctx)?)));
        }
        Witness::InvalidParameterMatrix { check, .. } => {
            rep.line(format!(
                "parameter matrix: (ii) whole range {}, (ii) per index {}, singular block {:?}",
                yes_no(check.ii_whole_range),
                yes_no(check.ii_per_index),
                check.singular_block
            ));
        }
    }
    if let Some(t) = &verdict.metadata.thinness {
        rep.line(format!("all modules thin: {}", yes_no(t.all_thin)));
    }
    for n in &verdict.metadata.notes {
        rep.line(format!("note: {n}"));
    }
    rep.json = json!({
        "graph": graph_json(g),
        "uniform": outcome_word(verdict.outcome),
        "verdict": verdict,
        "resubstitution": resub,
    });
    Ok(rep)
}

/// Re-checks a saved `uniform` JSON report against its embedded graph.
pub fn verify_uniform(path: &Path) -> anyhow::Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: Value = serde_json::from_str(&text).context("report is not JSON")?;
    let graph = doc.get("graph").context("report has no graph")?;
    let n = graph["n"].as_u64().context("graph.n")? as usize;
    let edges: Vec<(usize, usize)> = serde_json::from_value::<Vec<[usize; 2]>>(graph["edges"].clone())?
        .into_iter()
        .map(|[u, v]| (u, v))
        .collect();
    let name = graph["name"].as_str().unwrap_or("graph");
    let g = Graph::new(n, &edges, name)?;
    let verdict: UniformVerdict = serde_json::from_value(doc.get("verdict").context("report has no verdict")?.clone())?;
    let ctx = build_context(&g, verdict.metadata.base, verdict.metadata.mode)?;
    let ok = match &verdict.witness {
        Witness::Structure(s) => resubstitute(&ctx, s)?.holds() && s.u.check().valid,
        Witness::InfeasibleLevel(w) => w.verify(&ctx)?,
        Witness::InvalidParameterMatrix { candidate, check } => {
            resubstitute(&ctx, candidate)?.holds() && candidate.u.check() == *check && !check.valid
        }
    };
    let mut rep = Report::new("uniform-verify", &["uniform", "verified"]);
    rep.line(format!("graph: {name}  base: {}", verdict.metadata.base));
    rep.line(format!("uniform: {}", outcome_word(verdict.outcome)));
    rep.line(format!("verified: {}", yes_no(ok)));
    rep.row([outcome_word(verdict.outcome), yes_no(ok)]);
    rep.json = json!({ "uniform": outcome_word(verdict.outcome), "verified": ok });
    Ok(rep)
}
