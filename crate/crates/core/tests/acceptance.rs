//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::{BTreeMap, HashSet};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use srreg_core::complexes::sr_ideal;
use srreg_core::graphs::{enumerate_graphs, GraphFilter};
use srreg_core::harness::{
    builtin_corpus, check_clique_order, check_graph_rigidity, check_regularity_oracle,
    check_symbolic_routes, criterion_in_power_tally, pendant_triangle_graph, property_suite,
    square_chain, verify_girth_formula, GirthClass, HarnessConfig,
};
use srreg_core::homology::Field;
use srreg_core::monomials::{minimalize, power, radical_colon, Exponent, MonomialIdeal};
use srreg_core::regularity::{reg_takayama, RegOptions};
use srreg_core::symbolic::{symbolic_power, IntermediateFamily};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

fn square_chain_cube() -> Outcome {
    let i = sr_ideal(&square_chain()).map_err(|e| e.to_string())?;
    let base = power(&i, 3);
    let extras = [[0, 1, 1, 1, 1, 1], [1, 1, 1, 1, 0, 1], [1, 1, 1, 1, 1, 0]];
    let family = IntermediateFamily::new(&i, 3, 10_000_000).map_err(|e| e.to_string())?;
    let mut regs = Vec::new();
    for k in 0..=3 {
        for f in &extras[..k] {
            if !family.extras.contains(&Exponent::new(f.to_vec())) {
                return Err(format!("{f:?} is not a minimal generator of I^(3)"));
            }
        }
        let j = minimalize(
            6,
            base.gens()
                .iter()
                .cloned()
                .chain(extras[..k].iter().map(|f| Exponent::new(f.to_vec()))),
        )
        .map_err(|e| e.to_string())?;
        let r = reg_takayama(&j, &RegOptions::default()).map_err(|e| e.to_string())?;
        regs.push(r.reg_ideal.unwrap_or(0));
    }
    if regs == [7, 7, 7, 7] {
        Ok(format!("regularities {regs:?}"))
    } else {
        Err(format!("regularities {regs:?}, expected all 7"))
    }
}

fn girth_formula_corpus(cfg: &HarnessConfig) -> Outcome {
    let corpus = builtin_corpus(cfg.seed);
    let mut per_class: BTreeMap<GirthClass, usize> = BTreeMap::new();
    for e in &corpus {
        if e.complex.n() > 8 {
            return Err(format!("{} has more than 8 vertices", e.name));
        }
        *per_class.entry(e.girth_class()).or_default() += 1;
    }
    for class in [GirthClass::Three, GirthClass::Four, GirthClass::FiveOrMore] {
        if per_class.get(&class).copied().unwrap_or(0) < 3 {
            return Err(format!("fewer than 3 complexes of {class}"));
        }
    }
    let mut checked = 0;
    let mut failures = Vec::new();
    for e in &corpus {
        for s in [2, 3] {
            let reports = verify_girth_formula(&e.name, &e.complex, s, None, cfg)
                .map_err(|x| x.to_string())?;
            checked += reports.len();
            failures.extend(
                reports
                    .into_iter()
                    .filter(|r| !r.passed())
                    .map(|r| r.to_string()),
            );
        }
    }
    if failures.is_empty() {
        Ok(format!(
            "{} complexes, {checked} intermediate ideals",
            corpus.len()
        ))
    } else {
        Err(format!(
            "{} mismatches, first: {}",
            failures.len(),
            failures[0]
        ))
    }
}

fn small_graph_rigidity(cfg: &HarnessConfig) -> Outcome {
    let summary = srreg_core::harness::scan_small_graphs(5, 2, None, false, cfg)
        .map_err(|e| e.to_string())?;
    if let Some(f) = summary.failures().next() {
        return Err(f.to_string());
    }
    let (count, r) =
        check_graph_rigidity("pendant triangle", &pendant_triangle_graph(), 3, None, cfg)
            .map_err(|e| e.to_string())?;
    if !r.passed() || r.expected != serde_json::json!(6) {
        return Err(format!("pendant triangle graph at s=3: {r}"));
    }
    Ok(format!(
        "{} graphs, {} intermediate ideals; pendant triangle graph s=3: {count} ideals with reg 6",
        summary.graphs, summary.intermediates
    ))
}

fn all_exponents(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

fn regularity_oracle() -> Outcome {
    let mut family: HashSet<MonomialIdeal> = HashSet::new();
    for n in 1..=3 {
        let monos: Vec<Vec<u32>> = all_exponents(n, 2)
            .into_iter()
            .filter(|v| v.iter().any(|&c| c > 0))
            .collect();
        let m = monos.len();
        for a in 0..m {
            for b in a..m {
                for c in b..m {
                    for d in c..m {
                        let gens = [a, b, c, d].map(|k| Exponent::new(monos[k].clone()));
                        family.insert(minimalize(n, gens).expect("same n"));
                    }
                }
            }
        }
    }
    let mut family: Vec<MonomialIdeal> = family.into_iter().collect();
    family.sort_by_key(|i| (i.n(), i.gens().to_vec()));
    let exhaustive = family.len();

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    while family.len() < exhaustive + 200 {
        let n = rng.gen_range(1..=5);
        let k = rng.gen_range(1..=6);
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect())
            .collect();
        let i = MonomialIdeal::from_coords(n, gens).expect("same n");
        if !i.is_unit() {
            family.push(i);
        }
    }
    let results: Vec<Option<String>> = family
        .par_iter()
        .map(|i| match check_regularity_oracle(i, Field::default()) {
            Ok(None) => None,
            Ok(Some(v)) => Some(v.to_string()),
            Err(e) => Some(format!("{i}: {e}")),
        })
        .collect();
    let bad: Vec<String> = results.into_iter().flatten().collect();
    if bad.is_empty() {
        Ok(format!("{exhaustive} exhaustive + 200 random ideals"))
    } else {
        Err(format!("{} mismatches, first: {}", bad.len(), bad[0]))
    }
}

fn symbolic_routes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut ideals = Vec::new();
    while ideals.len() < 24 {
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=5);
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect())
            .collect();
        let i = MonomialIdeal::from_coords(n, gens).expect("same n");
        if !i.is_unit() && !i.is_zero() {
            ideals.push(i);
        }
    }
    let mut checks = 0;
    for i in &ideals {
        let (c, bad) = check_symbolic_routes(i, 3, 3).map_err(|e| e.to_string())?;
        checks += c;
        if let Some(b) = bad.first() {
            return Err(b.to_string());
        }
    }
    Ok(format!("{} ideals, {checks} memberships", ideals.len()))
}

fn clique_order_formula() -> Outcome {
    let (checks, bad) = check_clique_order(4, 4);
    match bad.first() {
        None => Ok(format!("{checks} exponents")),
        Some(b) => Err(format!("{} mismatches, first: {b}", bad.len())),
    }
}

fn power_criterion() -> Outcome {
    let mut graphs = Vec::new();
    for n in 2..=5 {
        let filter = GraphFilter {
            min_edges: 1,
            ..GraphFilter::default()
        };
        graphs.extend(enumerate_graphs(n, filter).map_err(|e| e.to_string())?);
    }
    let results: Vec<(usize, Vec<serde_json::Value>)> = graphs
        .par_iter()
        .flat_map_iter(|g| (1..=3).map(move |s| criterion_in_power_tally(g, s, 2)))
        .collect();
    let checks: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<&serde_json::Value> = results.iter().flat_map(|r| &r.1).collect();
    match bad.first() {
        None => Ok(format!(
            "{} graphs, s = 1..3, {checks} checks",
            graphs.len()
        )),
        Some(b) => Err(format!("{} violations, first: {b}", bad.len())),
    }
}

fn colon_counterexample() -> Outcome {
    let i = MonomialIdeal::from_coords(
        5,
        [
            vec![1, 1, 0, 0, 0],
            vec![1, 0, 1, 0, 0],
            vec![0, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 0],
            vec![0, 0, 0, 1, 1],
        ],
    )
    .map_err(|e| e.to_string())?;
    let a = Exponent::new(vec![1, 1, 1, 1, 0]);
    let x5 = Exponent::new(vec![0, 0, 0, 0, 1]);
    let run = || -> srreg_core::Result<(bool, bool)> {
        let sym = symbolic_power(&i, 3, 10_000_000)?;
        Ok((
            radical_colon(&sym, &a)?.contains(&x5)?,
            radical_colon(&power(&i, 3), &a)?.contains(&x5)?,
        ))
    };
    match run().map_err(|e| e.to_string())? {
        (true, false) => Ok("x5 in the symbolic colon, not in the ordinary one".into()),
        other => Err(format!("(symbolic, ordinary) membership = {other:?}")),
    }
}

fn property_suites(cfg: &HarnessConfig) -> Outcome {
    let reports = property_suite(&builtin_corpus(cfg.seed), &[2, 3], cfg);
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect();
    if failed.is_empty() {
        Ok(format!(
            "{} checks, at least {} trials each",
            reports.len(),
            cfg.trials
        ))
    } else {
        Err(failed.join("; "))
    }
}

fn main() -> ExitCode {
    let cfg = HarnessConfig::default();
    let criteria: Vec<Criterion> = vec![
        (
            "square chain: I^3 through I^3+(f1,f2,f3) all have reg 7",
            Box::new(square_chain_cube),
        ),
        (
            "girth formula on the built-in corpus, s = 2, 3",
            Box::new(|| girth_formula_corpus(&cfg)),
        ),
        (
            "rigidity scan over graphs on at most 5 vertices",
            Box::new(|| small_graph_rigidity(&cfg)),
        ),
        (
            "regularity scan agrees with the polarization oracle",
            Box::new(regularity_oracle),
        ),
        (
            "three symbolic membership routes agree",
            Box::new(symbolic_routes),
        ),
        (
            "clique order formula matches explicit powers",
            Box::new(clique_order_formula),
        ),
        (
            "radical colon criterion for ordinary powers",
            Box::new(power_criterion),
        ),
        (
            "x5 separates symbolic and ordinary colons",
            Box::new(colon_counterexample),
        ),
        (
            "property suites with zero violations",
            Box::new(|| property_suites(&cfg)),
        ),
    ];
    let mut all = true;
    for (label, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {label} ({detail}; {secs:.1}s)"),
            Err(detail) => {
                all = false;
                println!("FAIL  {label} ({detail}; {secs:.1}s)");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
