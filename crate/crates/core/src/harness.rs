//! Verification suites over the built-in corpus, with reproducible reports.
//!
//! Every suite is deterministic for a fixed [`HarnessConfig`]: random
//! instances come from a seeded ChaCha stream and parallel work is collected
//! in input order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::complexes::{
    degree_complex, degree_complex_by_definition, sr_ideal, Girth, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::graphs::{edge_ideal, enumerate_graphs, Graph, GraphFilter};
use crate::homology::{self, boundary_matrix, reduced_homology, Field};
use crate::io::{complex_to_json, graph_to_json, ideal_to_json};
use crate::monomials::{
    clique_order, power, radical_colon, radical_colon_supports, Exponent, MonomialIdeal, PowerTable,
};
use crate::regularity::{
    reg_of_sums, reg_polarization_oracle, reg_takayama, reg_takayama_with_box, restrict_ideal,
    RegOptions, DEFAULT_MAX_POLARIZED_VARS,
};
use crate::symbolic::{
    criterion_in_sym_check, differential_membership, symbolic_power,
    symbolic_power_by_intersection, CoveringTest, IntermediateFamily, PowerCriterion, Selection,
};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub field: Field,
    pub seed: u64,
    /// Largest extras count enumerated exhaustively; larger families are sampled.
    pub max_intermediates: usize,
    pub sample_count: usize,
    pub box_limit: u128,
    /// Minimum number of instances per randomized check.
    pub trials: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            field: Field::default(),
            seed: 20_240_601,
            max_intermediates: crate::symbolic::DEFAULT_MAX_INTERMEDIATES,
            sample_count: 64,
            box_limit: crate::regularity::DEFAULT_BOX_LIMIT,
            trials: 100,
        }
    }
}

impl HarnessConfig {
    /// `All` when the family is small enough, otherwise a seeded sample.
    pub fn selection(&self, extras: usize) -> Selection {
        if extras <= self.max_intermediates {
            Selection::All
        } else {
            Selection::Sample {
                count: self.sample_count,
                seed: self.seed,
            }
        }
    }

    pub fn reg_options(&self) -> RegOptions {
        RegOptions {
            field: self.field,
            box_limit: self.box_limit,
        }
    }

    fn rng(&self, stream: &str) -> ChaCha8Rng {
        let salt = stream.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
            (h ^ b as u64).wrapping_mul(0x100_0000_01b3)
        });
        ChaCha8Rng::seed_from_u64(self.seed ^ salt)
    }

    fn payload(&self, input: Value, flags: Value) -> Value {
        json!({ "input": input, "seed": self.seed, "field": self.field, "flags": flags })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped(String),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "PASS"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skipped(why) => write!(f, "SKIPPED({why})"),
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selector: Option<String>,
    pub expected: Value,
    pub computed: Value,
    pub provenance: String,
    pub status: Status,
    pub elapsed_ms: u128,
    /// Reproduction data; always present on failures.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub payload: Option<Value>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} {}", self.status, self.suite, self.instance)?;
        if let Some(s) = self.s {
            write!(f, " s={s}")?;
        }
        if let Some(sel) = &self.selector {
            write!(f, " J={sel}")?;
        }
        write!(
            f,
            " expected={} computed={} ({}, {} ms)",
            self.expected, self.computed, self.provenance, self.elapsed_ms
        )
    }
}

pub fn all_passed(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}

/// Girth classes of one-dimensional complexes. Forests are kept apart from
/// the `≥ 5` class even though they share its prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GirthClass {
    Three,
    Four,
    FiveOrMore,
    Infinite,
}

impl GirthClass {
    pub fn of(delta: &SimplicialComplex) -> Result<Self> {
        let dim = delta.dim().unwrap_or(-2);
        if dim != 1 {
            return Err(Error::WrongDimension {
                expected: 1,
                found: dim,
            });
        }
        Ok(match delta.girth()? {
            Girth::Finite(3) => GirthClass::Three,
            Girth::Finite(4) => GirthClass::Four,
            Girth::Finite(_) => GirthClass::FiveOrMore,
            Girth::Infinite => GirthClass::Infinite,
        })
    }

    /// Predicted `reg J` for every intermediate ideal at power `s`.
    pub fn predicted_reg(self, s: u32) -> i64 {
        let s = s as i64;
        match self {
            GirthClass::Three => 3 * s,
            GirthClass::Four => 2 * s + 1,
            GirthClass::FiveOrMore | GirthClass::Infinite => 2 * s,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GirthClass::Three => "girth 3",
            GirthClass::Four => "girth 4",
            GirthClass::FiveOrMore => "girth >=5",
            GirthClass::Infinite => "forest",
        }
    }
}

impl fmt::Display for GirthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub complex: SimplicialComplex,
}

impl CorpusEntry {
    fn new(name: &str, n: usize, facets: &[&[usize]]) -> Self {
        let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
        CorpusEntry {
            name: name.to_string(),
            complex: SimplicialComplex::from_labels(n, &facets)
                .expect("built-in corpus is well formed"),
        }
    }

    pub fn girth_class(&self) -> GirthClass {
        GirthClass::of(&self.complex).expect("corpus complexes are one-dimensional")
    }
}

fn cycle(n: usize) -> Vec<Vec<usize>> {
    (1..=n).map(|v| vec![v, v % n + 1]).collect()
}

fn with_facets(
    name: &str,
    n: usize,
    mut facets: Vec<Vec<usize>>,
    more: &[&[usize]],
) -> CorpusEntry {
    facets.extend(more.iter().map(|f| f.to_vec()));
    CorpusEntry {
        name: name.to_string(),
        complex: SimplicialComplex::from_labels(n, &facets)
            .expect("built-in corpus is well formed"),
    }
}

/// The fixed complexes of the corpus, all on at most 8 vertices.
pub fn fixed_corpus() -> Vec<CorpusEntry> {
    let tri: &[&[usize]] = &[&[1, 2], &[1, 3], &[2, 3]];
    let sq = cycle(4);
    vec![
        CorpusEntry::new("triangle", 3, tri),
        with_facets(
            "triangle-pendant",
            4,
            Vec::new(),
            &[&[1, 2], &[1, 3], &[2, 3], &[3, 4]],
        ),
        with_facets(
            "triangle-two-pendants",
            5,
            Vec::new(),
            &[&[1, 2], &[1, 3], &[2, 3], &[1, 4], &[2, 5]],
        ),
        CorpusEntry::new(
            "bowtie",
            5,
            &[&[1, 2], &[1, 3], &[2, 3], &[3, 4], &[3, 5], &[4, 5]],
        ),
        CorpusEntry::new(
            "k4-skeleton",
            4,
            &[&[1, 2], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]],
        ),
        CorpusEntry::new("triangle-isolated", 4, &[&[1, 2], &[1, 3], &[2, 3], &[4]]),
        with_facets("square", 4, sq.clone(), &[]),
        CorpusEntry::new(
            "square-chain",
            6,
            &[
                &[1, 2],
                &[2, 3],
                &[3, 4],
                &[1, 4],
                &[4, 5],
                &[5, 6],
                &[2, 6],
            ],
        ),
        with_facets("square-two-pendants", 6, sq.clone(), &[&[1, 5], &[2, 6]]),
        CorpusEntry::new(
            "k23",
            5,
            &[&[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 4], &[2, 5]],
        ),
        with_facets("square-isolated", 5, sq, &[&[5]]),
        CorpusEntry::new(
            "square-tail",
            5,
            &[&[1, 4], &[1, 5], &[2, 4], &[2, 5], &[3, 5]],
        ),
        with_facets("pentagon", 5, cycle(5), &[]),
        with_facets("hexagon", 6, cycle(6), &[]),
        with_facets("heptagon", 7, cycle(7), &[]),
        with_facets("octagon", 8, cycle(8), &[]),
        with_facets("pentagon-pendant", 6, cycle(5), &[&[5, 6]]),
        with_facets("pentagon-isolated", 6, cycle(5), &[&[6]]),
        CorpusEntry::new("path-3", 3, &[&[1, 2], &[2, 3]]),
        CorpusEntry::new("path-4", 4, &[&[1, 2], &[2, 3], &[3, 4]]),
        CorpusEntry::new("star-4", 4, &[&[1, 2], &[1, 3], &[1, 4]]),
        CorpusEntry::new("two-edges", 4, &[&[1, 2], &[3, 4]]),
        CorpusEntry::new("path-3-isolated", 4, &[&[1, 2], &[2, 3], &[4]]),
    ]
}

/// A random one-dimensional complex on `n` vertices: random edges, and every
/// uncovered vertex as an isolated facet.
pub fn random_dim1_complex<R: Rng>(
    rng: &mut R,
    n: usize,
    edge_probability: f64,
) -> SimplicialComplex {
    loop {
        let mut facets = Vec::new();
        let mut covered = VertexSet::EMPTY;
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(edge_probability) {
                    facets.push(VertexSet::from_vertices([u, v]));
                    covered = covered.union(VertexSet::from_vertices([u, v]));
                }
            }
        }
        if facets.is_empty() {
            continue;
        }
        facets.extend(
            VertexSet::full(n)
                .difference(covered)
                .iter()
                .map(VertexSet::singleton),
        );
        return SimplicialComplex::new(n, facets).expect("n is small");
    }
}

/// Seeded random complexes, `per_class` for each girth class, on 5 to 7 vertices.
pub fn random_corpus(seed: u64, per_class: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<GirthClass, usize> = BTreeMap::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while counts.values().sum::<usize>() < 4 * per_class && attempts < 100_000 {
        attempts += 1;
        let n = rng.gen_range(5..=7);
        let p = rng.gen_range(0.2..0.6);
        let complex = random_dim1_complex(&mut rng, n, p);
        let class = GirthClass::of(&complex).expect("dimension one");
        let count = counts.entry(class).or_default();
        if *count < per_class {
            *count += 1;
            out.push(CorpusEntry {
                name: format!(
                    "random-{}-{}",
                    class.label().replace(' ', "").replace(">=", "ge"),
                    *count
                ),
                complex,
            });
        }
    }
    out
}

/// The fixed corpus plus two seeded random complexes per girth class.
pub fn builtin_corpus(seed: u64) -> Vec<CorpusEntry> {
    let mut out = fixed_corpus();
    out.extend(random_corpus(seed, 2));
    out
}

/// Small graphs used by the graph suites: the four non-bipartite graphs on
/// five vertices with independence number above two (a triangle plus two
/// nonadjacent vertices), named by the neighborhoods of vertices 4 and 5.
pub fn builtin_graphs() -> Vec<(String, Graph)> {
    let tri = [(1, 2), (1, 3), (2, 3)];
    let mk = |name: &str, extra: &[(usize, usize)]| {
        let edges: Vec<(usize, usize)> = tri.iter().chain(extra).copied().collect();
        (
            name.to_string(),
            Graph::from_labels(5, &edges).expect("well formed"),
        )
    };
    vec![
        mk("triangle-n4=1-n5=1", &[(1, 4), (1, 5)]),
        mk("triangle-n4=1-n5=2", &[(1, 4), (2, 5)]),
        mk("triangle-n4=1-n5=12", &[(1, 4), (1, 5), (2, 5)]),
        mk("triangle-n4=12-n5=12", &[(1, 4), (2, 4), (1, 5), (2, 5)]),
    ]
}

/// The five-vertex graph with edges 12, 13, 23, 24, 35.
pub fn pendant_triangle_graph() -> Graph {
    Graph::from_labels(5, &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 5)]).expect("well formed")
}

/// A labeled member of an intermediate family with its subset of extras.
pub type Member = (String, Vec<usize>, MonomialIdeal);

/// Selected members of the intermediate family, deduplicated, with a
/// human-readable selector for each.
pub fn family_members(
    family: &IntermediateFamily,
    selection: &Selection,
    cap: usize,
) -> Result<Vec<Member>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for sub in family.subsets(selection, cap)? {
        let j = family.member(&sub);
        if !seen.insert(j.clone()) {
            continue;
        }
        let label = if sub.is_empty() {
            "I^s".to_string()
        } else if sub.len() == family.extras.len() {
            "I^(s)".to_string()
        } else {
            let picks: Vec<String> = sub.iter().map(|k| format!("f{}", k + 1)).collect();
            format!("I^s+({})", picks.join(","))
        };
        out.push((label, sub, j));
    }
    Ok(out)
}

fn reg_ideal_of(j: &MonomialIdeal, cfg: &HarnessConfig) -> Result<i64> {
    Ok(reg_takayama(j, &cfg.reg_options())?.reg_ideal.unwrap_or(0))
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Checks `reg J` against the girth-class prediction for every selected
/// intermediate ideal of `I_Δ`.
///
/// At `s = 1` only the girth-3 prediction applies; other classes are compared
/// with the polarization oracle instead.
pub fn verify_girth_formula(
    name: &str,
    delta: &SimplicialComplex,
    s: u32,
    selection: Option<&Selection>,
    cfg: &HarnessConfig,
) -> Result<Vec<VerificationReport>> {
    if s == 0 {
        return Err(Error::NonPositivePower);
    }
    let class = GirthClass::of(delta)?;
    let i = sr_ideal(delta)?;
    let family = IntermediateFamily::new(&i, s, cfg.box_limit)?;
    let selection = selection
        .cloned()
        .unwrap_or_else(|| cfg.selection(family.extras.len()));
    let members = family_members(&family, &selection, cfg.max_intermediates)?;
    let use_oracle = s == 1 && class != GirthClass::Three;
    let start = Instant::now();
    let subsets: Vec<Vec<usize>> = members.iter().map(|(_, sub, _)| sub.clone()).collect();
    let regs = reg_of_sums(&family.base, &family.extras, &subsets, &cfg.reg_options())?;
    let elapsed = start.elapsed().as_millis();
    members
        .par_iter()
        .zip(regs)
        .map(|((label, sub, j), computed)| {
            let (expected, provenance) = if use_oracle {
                let r = reg_polarization_oracle(j, cfg.field, DEFAULT_MAX_POLARIZED_VARS)?;
                (r + 1, "polarization oracle".to_string())
            } else {
                (class.predicted_reg(s), format!("{class} formula"))
            };
            let ok = computed == expected;
            Ok(VerificationReport {
                suite: "girth-formula".into(),
                instance: format!("{name} ({class})"),
                s: Some(s),
                selector: Some(label.clone()),
                expected: json!(expected),
                computed: json!(computed),
                provenance,
                status: status(ok),
                // one family scan produces every value
                elapsed_ms: elapsed,
                payload: (!ok).then(|| {
                    cfg.payload(
                        complex_to_json(delta),
                        json!({
                            "s": s,
                            "extras": sub.iter().map(|&k| family.extras[k].coords().to_vec()).collect::<Vec<_>>(),
                        }),
                    )
                }),
            })
        })
        .collect()
}

/// Summary of a small-graph scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub max_vertices: usize,
    pub s: u32,
    pub graphs: usize,
    pub intermediates: usize,
    /// Wall time per vertex count.
    pub elapsed_ms_by_n: BTreeMap<usize, u128>,
    pub reports: Vec<VerificationReport>,
}

impl ScanSummary {
    pub fn failures(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| !r.passed())
    }
}

/// One graph of the scan: every selected `J` must have `reg J = reg I^s`.
pub fn check_graph_rigidity(
    name: &str,
    g: &Graph,
    s: u32,
    selection: Option<&Selection>,
    cfg: &HarnessConfig,
) -> Result<(usize, VerificationReport)> {
    let start = Instant::now();
    let i = edge_ideal(g)?;
    let family = IntermediateFamily::new(&i, s, cfg.box_limit)?;
    let selection = selection
        .cloned()
        .unwrap_or_else(|| cfg.selection(family.extras.len()));
    let members = family_members(&family, &selection, cfg.max_intermediates)?;
    let expected = reg_ideal_of(&family.base, cfg)?;
    let mut computed = BTreeMap::new();
    for (label, _, j) in &members {
        computed.insert(label.clone(), reg_ideal_of(j, cfg)?);
    }
    let top = reg_ideal_of(&family.top, cfg)?;
    computed.insert("I^(s)".into(), top);
    let ok = computed.values().all(|&r| r == expected);
    Ok((
        members.len(),
        VerificationReport {
            suite: "small-graph-rigidity".into(),
            instance: format!("{name} {g}"),
            s: Some(s),
            selector: Some(format!("{} members", members.len())),
            expected: json!(expected),
            computed: json!(computed),
            provenance: "reg I^s".into(),
            status: status(ok),
            elapsed_ms: start.elapsed().as_millis(),
            payload: (!ok).then(|| cfg.payload(graph_to_json(g), json!({ "s": s }))),
        },
    ))
}

/// All labeled graphs on `2..=max_vertices` vertices without isolated
/// vertices, each checked with [`check_graph_rigidity`].
pub fn scan_small_graphs(
    max_vertices: usize,
    s: u32,
    selection: Option<&Selection>,
    up_to_isomorphism: bool,
    cfg: &HarnessConfig,
) -> Result<ScanSummary> {
    if max_vertices > 5 {
        return Err(Error::Precondition(format!(
            "small-graph scan supports at most 5 vertices, got {max_vertices}"
        )));
    }
    let mut summary = ScanSummary {
        max_vertices,
        s,
        graphs: 0,
        intermediates: 0,
        elapsed_ms_by_n: BTreeMap::new(),
        reports: Vec::new(),
    };
    for n in 2..=max_vertices {
        let start = Instant::now();
        let filter = GraphFilter {
            no_isolated_vertices: true,
            min_edges: 1,
            up_to_isomorphism,
            ..GraphFilter::default()
        };
        let graphs: Vec<Graph> = enumerate_graphs(n, filter)?.collect();
        let results = graphs
            .par_iter()
            .map(|g| check_graph_rigidity(&format!("n={n}"), g, s, selection, cfg))
            .collect::<Result<Vec<_>>>()?;
        summary.graphs += results.len();
        for (count, report) in results {
            summary.intermediates += count;
            summary.reports.push(report);
        }
        summary
            .elapsed_ms_by_n
            .insert(n, start.elapsed().as_millis());
    }
    Ok(summary)
}

/// Counts instances and records the first few violations of one check.
#[derive(Default)]
struct Tally {
    trials: usize,
    skipped: usize,
    violations: usize,
    examples: Vec<Value>,
}

impl Tally {
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.trials += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < 5 {
                self.examples.push(detail());
            }
        }
    }

    fn error(&mut self, e: Error, detail: Value) {
        self.record(
            false,
            || json!({ "error": e.to_string(), "instance": detail }),
        );
    }

    fn absorb(&mut self, other: Tally) {
        self.trials += other.trials;
        self.skipped += other.skipped;
        self.violations += other.violations;
        for e in other.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
    }

    fn into_report(
        self,
        suite: &str,
        instance: &str,
        provenance: &str,
        min_trials: usize,
        cfg: &HarnessConfig,
        start: Instant,
    ) -> VerificationReport {
        let ok = self.violations == 0 && self.trials >= min_trials;
        VerificationReport {
            suite: suite.into(),
            instance: instance.into(),
            s: None,
            selector: None,
            expected: json!({ "violations": 0, "min_trials": min_trials }),
            computed: json!({ "trials": self.trials, "skipped": self.skipped, "violations": self.violations }),
            provenance: provenance.into(),
            status: status(ok),
            elapsed_ms: start.elapsed().as_millis(),
            payload: (!ok).then(|| {
                cfg.payload(
                    json!(self.examples),
                    json!({ "check": suite, "trials": min_trials }),
                )
            }),
        }
    }
}

fn random_squarefree<R: Rng>(rng: &mut R, n: usize, max_gens: usize) -> MonomialIdeal {
    loop {
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Exponent> = (0..k)
            .map(|_| Exponent::from_support(n, VertexSet(rng.gen_range(1..1u64 << n))))
            .collect();
        let i = crate::monomials::minimalize(n, gens).expect("same n");
        if !i.is_unit() && i.gens().iter().all(|g| g.degree() >= 2) {
            return i;
        }
    }
}

fn random_ideal<R: Rng>(rng: &mut R, n: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    loop {
        let k = rng.gen_range(1..=max_gens);
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=max_exp)).collect())
            .collect();
        let i = MonomialIdeal::from_coords(n, gens).expect("same n");
        if !i.is_unit() {
            return i;
        }
    }
}

fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        if !edges.is_empty() {
            return Graph::from_edges(n, &edges).expect("valid edges");
        }
    }
}

/// A random triangle-free graph with at least one edge.
fn random_triangle_free<R: Rng>(rng: &mut R, n: usize) -> Graph {
    loop {
        let g = random_graph(rng, n, 0.35);
        if g.girth() != Girth::Finite(3) {
            return g;
        }
    }
}

/// The graph whose edge ideal is `I_Δ` when `Δ` is a flag complex of dimension one.
fn complement_of_skeleton(delta: &SimplicialComplex) -> Graph {
    Graph::one_skeleton(delta).complement()
}

fn small_sample(seed: u64, count: usize) -> Selection {
    Selection::Sample { count, seed }
}

/// Exponents in the box `0 ≤ a_j < bounds_j`.
fn box_iter(bounds: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let total: u64 = bounds.iter().map(|&b| b as u64).product();
    (0..total).map(move |mut idx| {
        bounds
            .iter()
            .map(|&b| {
                let v = (idx % b as u64) as u32;
                idx /= b as u64;
                v
            })
            .collect()
    })
}

/// `x^F ∈ √(J : x^a)` read from the supports of the radical colon.
fn in_radical_colon(supports: &[VertexSet], f: VertexSet) -> bool {
    supports.iter().any(|m| m.is_subset(f))
}

fn flag_entries(corpus: &[CorpusEntry]) -> Vec<&CorpusEntry> {
    corpus
        .iter()
        .filter(|e| e.girth_class() != GirthClass::Three)
        .collect()
}

/// Generators of `I^(s)` have every exponent at most `s`, checked on the
/// independent intersection route.
fn check_symbolic_degree_bound(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("symbolic-degree-bound");
    let mut instances: Vec<MonomialIdeal> = corpus
        .iter()
        .filter(|e| e.complex.n() <= 5)
        .map(|e| sr_ideal(&e.complex).expect("non-void"))
        .collect();
    let mut k = 0;
    while t.trials < cfg.trials {
        if k >= instances.len() {
            let n = rng.gen_range(3..=5);
            instances.push(random_squarefree(&mut rng, n, 5));
        }
        let i = &instances[k];
        k += 1;
        for &s in s_values {
            match symbolic_power_by_intersection(i, s) {
                Ok(sym) => t.record(
                    sym.gens()
                        .iter()
                        .all(|g| g.coords().iter().all(|&c| c <= s)),
                    || json!({ "ideal": ideal_to_json(i), "s": s }),
                ),
                Err(e) => t.error(e, ideal_to_json(i)),
            }
        }
    }
    t
}

/// For independence number two, minimal generators of `I^(s)` satisfy
/// `a_i ≤ Σ_{j ∈ N(i)} a_j`.
fn check_neighborhood_degree_bound(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("neighborhood-degree-bound");
    let mut graphs: Vec<Graph> = flag_entries(corpus)
        .into_iter()
        .map(|e| complement_of_skeleton(&e.complex))
        .collect();
    let mut k = 0;
    while t.trials < cfg.trials {
        if k >= graphs.len() {
            let h = {
                let n = rng.gen_range(4..=7);
                random_triangle_free(&mut rng, n)
            };
            graphs.push(h.complement());
        }
        let g = graphs[k].clone();
        k += 1;
        if g.independence_number() != 2 || g.edge_count() == 0 {
            continue;
        }
        let i = edge_ideal(&g).expect("has edges");
        for &s in s_values {
            match symbolic_power(&i, s, cfg.box_limit) {
                Ok(sym) => {
                    let ok = sym.gens().iter().all(|a| {
                        let a = a.coords();
                        (0..g.n()).all(|v| a[v] <= g.neighbors(v).iter().map(|u| a[u]).sum())
                    });
                    t.record(ok, || json!({ "graph": graph_to_json(&g), "s": s }));
                }
                Err(e) => t.error(e, graph_to_json(&g)),
            }
        }
    }
    t
}

/// Girth 3: `a_i ≤ s` and `|a| ≥ 3s` force `x^a ∈ I^s`.
fn check_triangle_degree_bound(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("triangle-degree-bound");
    let mut complexes: Vec<SimplicialComplex> = corpus
        .iter()
        .filter(|e| e.girth_class() == GirthClass::Three)
        .map(|e| e.complex.clone())
        .collect();
    let mut k = 0;
    while t.trials < cfg.trials {
        if k >= complexes.len() {
            loop {
                let d = {
                    let n = rng.gen_range(3..=6);
                    random_dim1_complex(&mut rng, n, 0.5)
                };
                if GirthClass::of(&d).ok() == Some(GirthClass::Three) {
                    complexes.push(d);
                    break;
                }
            }
        }
        let delta = &complexes[k];
        k += 1;
        let i = sr_ideal(delta).expect("non-void");
        for &s in s_values {
            let is = power(&i, s);
            let bounds = vec![s + 1; i.n()];
            let ok = box_iter(&bounds)
                .filter(|a| a.iter().sum::<u32>() >= 3 * s)
                .all(|a| is.contains(&Exponent::new(a)).expect("same n"));
            t.record(ok, || json!({ "complex": complex_to_json(delta), "s": s }));
        }
    }
    t
}

/// Runs `check` over the fixed instances, then over batches of fresh ones
/// until at least `min_trials` instances have been recorded. Batches are
/// generated sequentially and absorbed in order, so the outcome does not
/// depend on the worker count.
fn tally_in_batches<T, G, C>(min_trials: usize, fixed: Vec<T>, mut fresh: G, check: C) -> Tally
where
    T: Send + Sync,
    G: FnMut() -> T,
    C: Fn(usize, &T) -> Tally + Sync,
{
    const BATCH: usize = 8;
    let mut total = Tally::default();
    let mut next = 0usize;
    let mut batch = fixed;
    loop {
        let start = next;
        let tallies: Vec<Tally> = batch
            .par_iter()
            .enumerate()
            .map(|(k, x)| check(start + k, x))
            .collect();
        next += batch.len();
        let before = total.trials;
        tallies.into_iter().for_each(|t| total.absorb(t));
        if total.trials >= min_trials || (next > 0 && total.trials == before && next > 100 * BATCH)
        {
            return total;
        }
        batch = (0..BATCH).map(|_| fresh()).collect();
    }
}

fn random_flag_complex(rng: &mut ChaCha8Rng) -> SimplicialComplex {
    loop {
        let n = rng.gen_range(4..=6);
        let d = random_dim1_complex(rng, n, 0.4);
        if GirthClass::of(&d).ok() != Some(GirthClass::Three) {
            return d;
        }
    }
}

fn fixed_flag_complexes(corpus: &[CorpusEntry]) -> Vec<SimplicialComplex> {
    flag_entries(corpus)
        .into_iter()
        .map(|e| e.complex.clone())
        .collect()
}

fn sampled_members(
    i: &MonomialIdeal,
    s: u32,
    seed: u64,
    per: usize,
    cfg: &HarnessConfig,
) -> Result<(IntermediateFamily, Vec<Member>)> {
    let family = IntermediateFamily::new(i, s, cfg.box_limit)?;
    let members = family_members(&family, &small_sample(seed, per), cfg.max_intermediates)?;
    Ok((family, members))
}

/// For extremal exponents `(a, 2)` of `J`, `(ℓ - 2)|a| ≤ ℓ(s - 1)` with `ℓ` the
/// girth of `Δ_a(J)`; hence `|a| ≤ 2s - 2` at girth 4 and `|a| ≤ 2s - 3` above.
fn check_cycle_degree_bound(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut rng = cfg.rng("cycle-degree-bound");
    let check = |idx: usize, delta: &SimplicialComplex| {
        let mut t = Tally::default();
        let class = GirthClass::of(delta).expect("dimension one");
        let i = sr_ideal(delta).expect("non-void");
        for &s in s_values {
            let members = match sampled_members(&i, s, cfg.seed + idx as u64, 6, cfg) {
                Ok((_, m)) => m,
                Err(e) => {
                    t.error(e, complex_to_json(delta));
                    continue;
                }
            };
            for (label, _, j) in members {
                let cert = match reg_takayama(&j, &cfg.reg_options()) {
                    Ok(c) => c,
                    Err(e) => {
                        t.error(e, complex_to_json(delta));
                        continue;
                    }
                };
                let mut ok = true;
                for w in cert.witnesses.iter().filter(|w| w.i == 2) {
                    let size = w.a.degree() as i64;
                    let dj = degree_complex(&j, &w.a).expect("same n");
                    let ell = match dj.girth() {
                        Ok(Girth::Finite(l)) => l as i64,
                        _ => {
                            ok = false;
                            continue;
                        }
                    };
                    let s = s as i64;
                    ok &= (ell - 2) * size <= ell * (s - 1);
                    ok &= match class {
                        GirthClass::Four => size <= 2 * s - 2,
                        GirthClass::FiveOrMore => size <= 2 * s - 3,
                        // forests have no one-dimensional homology anywhere
                        GirthClass::Infinite => false,
                        GirthClass::Three => true,
                    };
                }
                t.record(
                    ok,
                    || json!({ "complex": complex_to_json(delta), "s": s, "J": label }),
                );
            }
        }
        t
    };
    tally_in_batches(
        cfg.trials,
        fixed_flag_complexes(corpus),
        || random_flag_complex(&mut rng),
        check,
    )
}

/// For `x^a ∉ J` and `|a| ≥ 2s - 1`, `Δ_a(J) = Δ_a(I^s)`, over the box of `J`.
fn check_intermediate_reduction(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut rng = cfg.rng("intermediate-reduction");
    let check = |idx: usize, delta: &SimplicialComplex| {
        let mut t = Tally::default();
        let i = sr_ideal(delta).expect("non-void");
        for &s in s_values {
            let (family, members) = match sampled_members(&i, s, cfg.seed + idx as u64, 4, cfg) {
                Ok(x) => x,
                Err(e) => {
                    t.error(e, complex_to_json(delta));
                    continue;
                }
            };
            for (label, _, j) in members {
                let bounds: Vec<u32> = j.max_degrees().into_iter().map(|r| r.max(1)).collect();
                let mut bad = None;
                for a in box_iter(&bounds) {
                    if a.iter().sum::<u32>() + 1 < 2 * s {
                        continue;
                    }
                    let in_j = radical_colon_supports(&j, &a);
                    if in_j.first().is_some_and(|m| m.is_empty()) {
                        continue;
                    }
                    if in_j != radical_colon_supports(&family.base, &a) {
                        bad = Some(a);
                        break;
                    }
                }
                t.record(
                    bad.is_none(),
                    || json!({ "complex": complex_to_json(delta), "s": s, "J": label, "a": bad }),
                );
            }
        }
        t
    };
    tally_in_batches(
        cfg.trials,
        fixed_flag_complexes(corpus),
        || random_flag_complex(&mut rng),
        check,
    )
}

fn fixed_graphs(corpus: &[CorpusEntry], max_n: usize) -> Vec<Graph> {
    let mut out: Vec<Graph> = builtin_graphs().into_iter().map(|(_, g)| g).collect();
    out.push(pendant_triangle_graph());
    out.extend(
        flag_entries(corpus)
            .into_iter()
            .filter(|e| e.complex.n() <= max_n)
            .map(|e| complement_of_skeleton(&e.complex))
            .filter(|g| g.edge_count() > 0),
    );
    out
}

fn fresh_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(3..=max_n);
    let p = rng.gen_range(0.3..0.7);
    random_graph(rng, n, p)
}

/// For a maximal independent set `F` and `x^a ∉ J`:
/// `x_F ∈ √(J : x^a)` iff `x_F ∈ √(I^s : x^a)`.
fn check_maximal_independent_term(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut rng = cfg.rng("maximal-independent-term");
    let check = |idx: usize, g: &Graph| {
        let mut t = Tally::default();
        let i = edge_ideal(g).expect("has edges");
        let maximal = g.maximal_independent_sets();
        for &s in s_values {
            let (family, members) = match sampled_members(&i, s, cfg.seed + idx as u64, 4, cfg) {
                Ok(x) => x,
                Err(e) => {
                    t.error(e, graph_to_json(g));
                    continue;
                }
            };
            for (label, _, j) in members {
                let bounds = vec![s + 1; g.n()];
                let mut bad = None;
                'box_scan: for a in box_iter(&bounds) {
                    let sj = radical_colon_supports(&j, &a);
                    if sj.first().is_some_and(|m| m.is_empty()) {
                        continue;
                    }
                    let si = radical_colon_supports(&family.base, &a);
                    for &f in &maximal {
                        if in_radical_colon(&sj, f) != in_radical_colon(&si, f) {
                            bad = Some((a.clone(), f.to_labels()));
                            break 'box_scan;
                        }
                    }
                }
                t.record(
                    bad.is_none(),
                    || json!({ "graph": graph_to_json(g), "s": s, "J": label, "a_F": bad }),
                );
            }
        }
        t
    };
    tally_in_batches(
        cfg.trials,
        fixed_graphs(corpus, 5),
        || fresh_graph(&mut rng, 5),
        check,
    )
}

/// `reg J ≥ 2s + μ(G) - 1` for intermediate ideals of edge ideals.
fn check_induced_matching_bound(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut rng = cfg.rng("induced-matching-bound");
    let check = |idx: usize, g: &Graph| {
        let mut t = Tally::default();
        let i = edge_ideal(g).expect("has edges");
        let mu = g.induced_matching_number() as i64;
        for &s in s_values {
            let members = match sampled_members(&i, s, cfg.seed + idx as u64, 4, cfg) {
                Ok((_, m)) => m,
                Err(e) => {
                    t.error(e, graph_to_json(g));
                    continue;
                }
            };
            for (label, _, j) in members {
                match reg_ideal_of(&j, cfg) {
                    Ok(r) => t.record(r >= 2 * s as i64 + mu - 1, || {
                        json!({ "graph": graph_to_json(g), "s": s, "J": label, "reg": r, "mu": mu })
                    }),
                    Err(e) => t.error(e, graph_to_json(g)),
                }
            }
        }
        t
    };
    tally_in_batches(
        cfg.trials,
        fixed_graphs(corpus, 6),
        || fresh_graph(&mut rng, 6),
        check,
    )
}

/// `reg J_V ≤ reg J` for random vertex subsets `V` (zero restrictions skipped).
fn check_restriction_monotonicity(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Tally {
    let mut rng = cfg.rng("restriction-monotonicity");
    let fixed: Vec<(SimplicialComplex, u64)> = corpus
        .iter()
        .filter(|e| e.complex.n() <= 6)
        .map(|e| (e.complex.clone(), rng.gen()))
        .collect();
    let check = |_: usize, (delta, seed): &(SimplicialComplex, u64)| {
        let mut t = Tally::default();
        let mut local = ChaCha8Rng::seed_from_u64(*seed);
        let i = sr_ideal(delta).expect("non-void");
        let n = delta.n();
        for &s in s_values {
            let members = match sampled_members(&i, s, *seed, 3, cfg) {
                Ok((_, m)) => m,
                Err(e) => {
                    t.error(e, complex_to_json(delta));
                    continue;
                }
            };
            for (label, _, j) in members {
                let v = VertexSet(local.gen_range(1..(1u64 << n) - 1));
                let jv = restrict_ideal(&j, v);
                if jv.is_zero() {
                    t.skipped += 1;
                    continue;
                }
                match (reg_ideal_of(&jv, cfg), reg_ideal_of(&j, cfg)) {
                    (Ok(rv), Ok(r)) => t.record(rv <= r, || {
                        json!({ "complex": complex_to_json(delta), "s": s, "J": label, "V": v.to_labels() })
                    }),
                    (Err(e), _) | (_, Err(e)) => t.error(e, complex_to_json(delta)),
                }
            }
        }
        t
    };
    let fresh = || {
        let n = rng.gen_range(4..=6);
        (random_dim1_complex(&mut rng, n, 0.45), rng.gen())
    };
    tally_in_batches(cfg.trials, fixed, fresh, check)
}

fn random_complex<R: Rng>(rng: &mut R, n: usize) -> SimplicialComplex {
    let k = rng.gen_range(1..=6);
    let facets = (0..k)
        .map(|_| VertexSet(rng.gen_range(0..1u64 << n)))
        .collect();
    SimplicialComplex::new(n, facets).expect("n is small")
}

/// Cones are acyclic, and beyond `ρ_j` every non-void degree complex is a cone over `j`.
fn check_cone_acyclicity(cfg: &HarnessConfig) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("cone-acyclicity");
    while t.trials < cfg.trials {
        let n = rng.gen_range(2..=6);
        let d = random_complex(&mut rng, n);
        let coned = SimplicialComplex::new(n + 1, d.facets().iter().map(|f| f.with(n)).collect())
            .expect("n is small");
        let acyclic = reduced_homology(&coned, cfg.field).is_acyclic();

        let i = random_ideal(&mut rng, 4, 4, 3);
        let rho = i.max_degrees();
        let a: Vec<u32> = rho.iter().map(|&r| rng.gen_range(0..=r + 1)).collect();
        let e = Exponent::new(a.clone());
        let dc = degree_complex(&i, &e).expect("same n");
        let beyond_ok = dc.is_void() || (0..4).filter(|&j| a[j] >= rho[j]).all(|j| dc.is_cone(j));
        t.record(
            acyclic && beyond_ok,
            || json!({ "complex": complex_to_json(&d), "ideal": ideal_to_json(&i), "a": a }),
        );
    }
    t
}

/// `Σ (-1)^i dim H̃_i = Σ (-1)^i f_i` (reduced, from `f_{-1} = 1`).
fn check_euler_characteristic(cfg: &HarnessConfig) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("euler-characteristic");
    while t.trials < cfg.trials {
        let n = rng.gen_range(2..=7);
        let d = random_complex(&mut rng, n);
        let faces: i64 = d
            .faces()
            .iter()
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum::<i64>();
        let ok = [cfg.field, Field::Rational].iter().all(|&field| {
            let h = reduced_homology(&d, field);
            let chi: i64 = h
                .entries()
                .iter()
                .map(|&(i, dim)| {
                    if i % 2 == 0 {
                        dim as i64
                    } else {
                        -(dim as i64)
                    }
                })
                .sum();
            // faces counts +1 for odd size (even dimension), matching chi's sign convention
            chi == faces
        });
        t.record(ok, || json!({ "complex": complex_to_json(&d) }));
    }
    t
}

/// Enlarging the scan box by one in every direction changes nothing.
fn check_box_stability(corpus: &[CorpusEntry], cfg: &HarnessConfig) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("box-stability");
    let mut ideals: Vec<MonomialIdeal> = corpus
        .iter()
        .filter(|e| e.complex.n() <= 5)
        .map(|e| power(&sr_ideal(&e.complex).expect("non-void"), 2))
        .collect();
    while ideals.len() < cfg.trials {
        let n = rng.gen_range(1..=4);
        ideals.push(random_ideal(&mut rng, n, 4, 3));
    }
    let opts = cfg.reg_options();
    let results: Vec<(bool, Value)> = ideals
        .par_iter()
        .map(|i| {
            let ok = match (reg_takayama(i, &opts), reg_takayama_with_box(i, &opts, 1)) {
                (Ok(a), Ok(b)) => a.reg_module == b.reg_module,
                _ => false,
            };
            (ok, ideal_to_json(i))
        })
        .collect();
    for (ok, detail) in results {
        t.record(ok, || detail);
    }
    t
}

/// With `x^a ∉ J`, `f ∈ √(J : x^a)` squarefree outside `I`, and a facet `F ⊇ supp f`
/// of `Δ(I)`, the exponent mass outside `F` is at least `s`.
fn check_criterion_in_sym(s_values: &[u32], cfg: &HarnessConfig) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("criterion-in-sym");
    let mut attempts = 0;
    while t.trials < cfg.trials && attempts < 50 * cfg.trials {
        attempts += 1;
        let delta = {
            let n = rng.gen_range(3..=6);
            random_dim1_complex(&mut rng, n, 0.5)
        };
        let i = sr_ideal(&delta).expect("non-void");
        let s = *s_values.choose(&mut rng).unwrap_or(&2);
        let Ok(family) = IntermediateFamily::new(&i, s, cfg.box_limit) else {
            continue;
        };
        let sub: Vec<usize> = (0..family.extras.len())
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let j = family.member(&sub);
        let a: Vec<u32> = (0..i.n()).map(|_| rng.gen_range(0..=s)).collect();
        let e = Exponent::new(a.clone());
        if j.contains(&e).expect("same n") {
            continue;
        }
        let rc = radical_colon(&j, &e).expect("same n");
        let facets = crate::complexes::sr_complex(&i)
            .expect("squarefree")
            .facets()
            .to_vec();
        for f in rc.gens() {
            if i.contains(f).expect("same n") {
                continue;
            }
            let supp = f.support();
            let Some(&facet) = facets.iter().find(|g| supp.is_subset(**g)) else {
                continue;
            };
            match criterion_in_sym_check(&i, &j, s, &e, supp, facet) {
                Ok(ok) => t.record(ok, || json!({ "complex": complex_to_json(&delta), "s": s, "a": a, "f": f.to_string() })),
                Err(err) => t.error(err, complex_to_json(&delta)),
            }
        }
    }
    t
}

/// The inequality criterion is sufficient for `x_F ∈ √(I^s : x^a)` and holds
/// for every minimal generator. Exhaustive over `a_i ≤ max_exp`.
pub fn criterion_in_power_tally(g: &Graph, s: u32, max_exp: u32) -> (usize, Vec<Value>) {
    let crit = PowerCriterion::new(g.clone()).expect("graph has edges");
    let is = crit.powers().get(s);
    let independent = g.independent_sets();
    let mut checks = 0;
    let mut bad = Vec::new();
    for a in box_iter(&vec![max_exp + 1; g.n()]) {
        let e = Exponent::new(a.clone());
        let supports = radical_colon_supports(&is, &a);
        for &f in &independent {
            checks += 1;
            let predicted = crit.predict(s, &e, f).expect("independent set");
            if predicted && !in_radical_colon(&supports, f) {
                bad.push(json!({ "graph": graph_to_json(g), "s": s, "a": a, "F": f.to_labels(), "kind": "sufficiency" }));
            }
        }
        for &m in &supports {
            if m.is_empty() {
                continue;
            }
            checks += 1;
            if g.is_independent(m) && !crit.predict(s, &e, m).expect("independent set") {
                bad.push(json!({ "graph": graph_to_json(g), "s": s, "a": a, "F": m.to_labels(), "kind": "necessity" }));
            }
        }
    }
    (checks, bad)
}

fn check_criterion_in_power(s_values: &[u32], cfg: &HarnessConfig) -> Tally {
    let mut t = Tally::default();
    let mut rng = cfg.rng("criterion-in-power");
    while t.trials < cfg.trials {
        let g = {
            let n = rng.gen_range(2..=5);
            random_graph(&mut rng, n, 0.5)
        };
        let s = *s_values.choose(&mut rng).unwrap_or(&2);
        let (_, bad) = criterion_in_power_tally(&g, s, 2);
        t.record(bad.is_empty(), || json!(bad.first()));
    }
    t
}

type Check<'a> = (
    &'static str,
    &'static str,
    Box<dyn Fn() -> Tally + Sync + 'a>,
);

/// Runs every property check with at least `cfg.trials` instances each; one
/// report per check.
pub fn property_suite(
    corpus: &[CorpusEntry],
    s_values: &[u32],
    cfg: &HarnessConfig,
) -> Vec<VerificationReport> {
    let checks: Vec<Check> = vec![
        (
            "symbolic-degree-bound",
            "minimal generators of I^(s) have every exponent at most s",
            Box::new(|| check_symbolic_degree_bound(corpus, s_values, cfg)),
        ),
        (
            "neighborhood-degree-bound",
            "alpha(G) = 2: a_i <= sum of a_j over neighbors",
            Box::new(|| check_neighborhood_degree_bound(corpus, s_values, cfg)),
        ),
        (
            "triangle-degree-bound",
            "girth 3, a_i <= s, |a| >= 3s implies x^a in I^s",
            Box::new(|| check_triangle_degree_bound(corpus, s_values, cfg)),
        ),
        (
            "cycle-degree-bound",
            "(l-2)|a| <= l(s-1) for extremal (a, 2)",
            Box::new(|| check_cycle_degree_bound(corpus, s_values, cfg)),
        ),
        (
            "intermediate-reduction",
            "|a| >= 2s-1, x^a not in J: degree complexes of J and I^s agree",
            Box::new(|| check_intermediate_reduction(corpus, s_values, cfg)),
        ),
        (
            "maximal-independent-term",
            "maximal independent F: membership in J and I^s colons agree",
            Box::new(|| check_maximal_independent_term(corpus, s_values, cfg)),
        ),
        (
            "induced-matching-bound",
            "reg J >= 2s + mu(G) - 1",
            Box::new(|| check_induced_matching_bound(corpus, s_values, cfg)),
        ),
        (
            "restriction-monotonicity",
            "reg J_V <= reg J",
            Box::new(|| check_restriction_monotonicity(corpus, s_values, cfg)),
        ),
        (
            "cone-acyclicity",
            "cones are acyclic; degree complexes are cones beyond rho",
            Box::new(|| check_cone_acyclicity(cfg)),
        ),
        (
            "euler-characteristic",
            "reduced Euler characteristic from faces and from homology",
            Box::new(|| check_euler_characteristic(cfg)),
        ),
        (
            "box-stability",
            "enlarging the scan box leaves reg unchanged",
            Box::new(|| check_box_stability(corpus, cfg)),
        ),
        (
            "criterion-in-sym",
            "exponent mass outside a facet is at least s",
            Box::new(|| check_criterion_in_sym(s_values, cfg)),
        ),
        (
            "criterion-in-power",
            "inequality criterion for radical colon membership",
            Box::new(|| check_criterion_in_power(s_values, cfg)),
        ),
    ];
    checks
        .into_iter()
        .map(|(name, what, run)| {
            let start = Instant::now();
            let tally = run();
            tally.into_report(name, what, "property check", cfg.trials, cfg, start)
        })
        .collect()
}

/// `clique_order` against `ord` computed from explicit powers, for cliques of
/// size `2..=max_size` and exponents up to `max_exp`.
pub fn check_clique_order(max_size: usize, max_exp: u32) -> (usize, Vec<Value>) {
    let mut checks = 0;
    let mut bad = Vec::new();
    for t in 2..=max_size {
        let table = PowerTable::new(edge_ideal(&Graph::complete(t)).expect("has edges"));
        for a in box_iter(&vec![max_exp + 1; t]) {
            checks += 1;
            let brute = table.ord(&Exponent::new(a.clone())).expect("same n");
            if brute != clique_order(&a) {
                bad.push(json!({ "a": a, "brute": brute, "formula": clique_order(&a) }));
            }
        }
    }
    (checks, bad)
}

/// Covering, differential, and intersection membership agree on `a_i ≤ max_exp`.
pub fn check_symbolic_routes(
    i: &MonomialIdeal,
    s_max: u32,
    max_exp: u32,
) -> Result<(usize, Vec<Value>)> {
    let covering = CoveringTest::new(i)?;
    let mut checks = 0;
    let mut bad = Vec::new();
    for s in 1..=s_max {
        let inter = symbolic_power_by_intersection(i, s)?;
        for a in box_iter(&vec![max_exp + 1; i.n()]) {
            checks += 1;
            let e = Exponent::new(a.clone());
            let c = covering.contains(s, &a);
            let d = differential_membership(i, s, &e)?;
            let x = inter.contains(&e)?;
            if c != d || c != x {
                bad.push(json!({ "ideal": ideal_to_json(i), "s": s, "a": a, "covering": c, "differential": d, "intersection": x }));
            }
        }
    }
    Ok((checks, bad))
}

/// Scan against polarization oracle on one ideal: `Ok(None)` on agreement.
pub fn check_regularity_oracle(i: &MonomialIdeal, field: Field) -> Result<Option<Value>> {
    let scan = reg_takayama(i, &RegOptions::with_field(field))?.reg_module;
    let oracle = reg_polarization_oracle(i, field, DEFAULT_MAX_POLARIZED_VARS)?;
    Ok((scan != oracle)
        .then(|| json!({ "ideal": ideal_to_json(i), "scan": scan, "oracle": oracle })))
}

/// Integer check that `∂_i ∘ ∂_{i+1} = 0`.
pub fn boundary_squares_to_zero(delta: &SimplicialComplex) -> Result<bool> {
    let top = delta.dim().unwrap_or(-1);
    for i in 0..top {
        let lower = boundary_matrix(delta, i)?.to_dense();
        let upper = boundary_matrix(delta, i + 1)?.to_dense();
        let cols = upper.first().map_or(0, Vec::len);
        for row in &lower {
            for c in 0..cols {
                let v: i64 = row.iter().zip(&upper).map(|(x, u)| x * u[c]).sum();
                if v != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

struct FaultGuard(bool);

impl Drop for FaultGuard {
    fn drop(&mut self) {
        homology::set_fault_injection(self.0);
    }
}

#[allow(clippy::too_many_arguments)]
fn simple_report(
    suite: &str,
    instance: &str,
    expected: Value,
    computed: Value,
    provenance: &str,
    ok: bool,
    start: Instant,
    cfg: &HarnessConfig,
    input: Value,
) -> VerificationReport {
    VerificationReport {
        suite: suite.into(),
        instance: instance.into(),
        s: None,
        selector: None,
        expected,
        computed,
        provenance: provenance.into(),
        status: status(ok),
        elapsed_ms: start.elapsed().as_millis(),
        payload: (!ok).then(|| cfg.payload(input, json!({ "suite": suite }))),
    }
}

/// A complex of the fixed corpus by name.
pub fn fixed_complex(name: &str) -> SimplicialComplex {
    fixed_corpus()
        .into_iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("{name} is not in the fixed corpus"))
        .complex
}

/// A square 1234 with the path 4-5-6-2 attached.
pub fn square_chain() -> SimplicialComplex {
    fixed_complex("square-chain")
}

/// Oracle cross-checks and fixed examples. With `inject_fault`, boundary maps
/// carry a deliberate sign error for the duration of the run.
pub fn selftest(cfg: &HarnessConfig, inject_fault: bool) -> Vec<VerificationReport> {
    let _guard = FaultGuard(homology::fault_injection_enabled());
    homology::set_fault_injection(inject_fault);
    let mut reports = Vec::new();
    let mut rng = cfg.rng("selftest");

    // boundary maps
    let start = Instant::now();
    let mut complexes: Vec<SimplicialComplex> = vec![
        SimplicialComplex::from_labels(
            6,
            &[
                vec![1, 2, 3],
                vec![1, 3, 4],
                vec![1, 4, 5],
                vec![1, 5, 6],
                vec![1, 2, 6],
                vec![2, 3, 5],
                vec![3, 4, 6],
                vec![2, 4, 5],
                vec![3, 5, 6],
                vec![2, 4, 6],
            ],
        )
        .expect("well formed"),
        SimplicialComplex::from_labels(
            4,
            &[vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
        )
        .expect("well formed"),
    ];
    complexes.extend((0..20).map(|_| random_complex(&mut rng, 6)));
    let bad: Vec<Value> = complexes
        .iter()
        .filter(|d| !boundary_squares_to_zero(d).unwrap_or(false))
        .map(complex_to_json)
        .collect();
    reports.push(simple_report(
        "boundary-squares-to-zero",
        "integer boundary maps",
        json!(0),
        json!(bad.len()),
        "chain complex identity",
        bad.is_empty(),
        start,
        cfg,
        json!(bad),
    ));

    // regularity routes
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut errors = Vec::new();
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let i = random_ideal(&mut rng, n, 4, 3);
        match check_regularity_oracle(&i, cfg.field) {
            Ok(None) => {}
            Ok(Some(v)) => bad.push(v),
            Err(e) => errors.push(json!({ "ideal": ideal_to_json(&i), "error": e.to_string() })),
        }
    }
    let ok = bad.is_empty() && errors.is_empty();
    reports.push(simple_report(
        "regularity-oracle",
        "30 random ideals",
        json!(0),
        json!(bad.len() + errors.len()),
        "polarization oracle",
        ok,
        start,
        cfg,
        json!([bad, errors]),
    ));

    // symbolic membership routes
    let start = Instant::now();
    let mut bad = Vec::new();
    for _ in 0..5 {
        let i = random_squarefree(&mut rng, 3, 4);
        match check_symbolic_routes(&i, 3, 3) {
            Ok((_, b)) => bad.extend(b),
            Err(e) => bad.push(json!({ "ideal": ideal_to_json(&i), "error": e.to_string() })),
        }
    }
    reports.push(simple_report(
        "symbolic-routes",
        "5 random squarefree ideals",
        json!(0),
        json!(bad.len()),
        "three membership routes",
        bad.is_empty(),
        start,
        cfg,
        json!(bad),
    ));

    // degree complexes
    let start = Instant::now();
    let mut bad = Vec::new();
    for _ in 0..50 {
        let i = random_ideal(&mut rng, 4, 4, 3);
        let a = Exponent::new((0..4).map(|_| rng.gen_range(0..=3)).collect());
        let x = degree_complex(&i, &a).expect("same n");
        let y = degree_complex_by_definition(&i, &a).expect("same n");
        if x != y {
            bad.push(json!({ "ideal": ideal_to_json(&i), "a": a.coords() }));
        }
    }
    reports.push(simple_report(
        "degree-complex-routes",
        "50 random (I, a)",
        json!(0),
        json!(bad.len()),
        "definition",
        bad.is_empty(),
        start,
        cfg,
        json!(bad),
    ));

    // clique order
    let start = Instant::now();
    let (checks, bad) = check_clique_order(4, 3);
    reports.push(simple_report(
        "clique-order",
        &format!("{checks} exponents"),
        json!(0),
        json!(bad.len()),
        "explicit powers",
        bad.is_empty(),
        start,
        cfg,
        json!(bad),
    ));

    // fixed examples
    let opts = cfg.reg_options();
    type FixedExample<'a> = (&'a str, Box<dyn Fn() -> Result<(Value, Value)> + 'a>);
    let fixed: Vec<FixedExample> = vec![
        (
            "square-chain s=3 intermediates",
            Box::new(|| {
                let i = sr_ideal(&square_chain())?;
                let family = IntermediateFamily::new(&i, 3, cfg.box_limit)?;
                let picks: Vec<Exponent> =
                    [[0, 1, 1, 1, 1, 1], [1, 1, 1, 1, 0, 1], [1, 1, 1, 1, 1, 0]]
                        .iter()
                        .map(|c| Exponent::new(c.to_vec()))
                        .collect();
                let mut regs = Vec::new();
                for k in 0..=3 {
                    let idx: Vec<usize> =
                        picks[..k]
                            .iter()
                            .map(|p| {
                                family.extras.iter().position(|e| e == p).ok_or(
                                    Error::Precondition(format!("{p} is not an extra generator")),
                                )
                            })
                            .collect::<Result<_>>()?;
                    regs.push(reg_takayama(&family.member(&idx), &opts)?.reg_ideal);
                }
                Ok((json!([7, 7, 7, 7]), json!(regs)))
            }),
        ),
        (
            "complete intersection squared",
            Box::new(|| {
                let ci = MonomialIdeal::from_coords(4, [vec![1, 1, 0, 0], vec![0, 0, 1, 1]])?;
                Ok((
                    json!(5),
                    json!(reg_takayama(&power(&ci, 2), &opts)?.reg_ideal),
                ))
            }),
        ),
        (
            "pendant triangle graph s=3",
            Box::new(|| {
                let i = edge_ideal(&pendant_triangle_graph())?;
                Ok((
                    json!(6),
                    json!(reg_takayama(&power(&i, 3), &opts)?.reg_ideal),
                ))
            }),
        ),
        (
            "triangle s=2",
            Box::new(|| {
                let i = sr_ideal(&fixed_complex("triangle"))?;
                Ok((
                    json!(6),
                    json!(reg_takayama(&power(&i, 2), &opts)?.reg_ideal),
                ))
            }),
        ),
        (
            "pentagon s=2",
            Box::new(|| {
                let i = sr_ideal(&fixed_complex("pentagon"))?;
                Ok((
                    json!(4),
                    json!(reg_takayama(&power(&i, 2), &opts)?.reg_ideal),
                ))
            }),
        ),
        (
            "pendant triangle graph s=2",
            Box::new(|| {
                let i = edge_ideal(&pendant_triangle_graph())?;
                Ok((
                    json!(4),
                    json!(reg_takayama(&power(&i, 2), &opts)?.reg_ideal),
                ))
            }),
        ),
        (
            "x5 colon example",
            Box::new(|| {
                let i = MonomialIdeal::from_coords(
                    5,
                    [
                        vec![1, 1, 0, 0, 0],
                        vec![1, 0, 1, 0, 0],
                        vec![0, 1, 1, 0, 0],
                        vec![0, 0, 1, 1, 0],
                        vec![0, 0, 0, 1, 1],
                    ],
                )?;
                let a = Exponent::new(vec![1, 1, 1, 1, 0]);
                let x5 = Exponent::new(vec![0, 0, 0, 0, 1]);
                let sym = symbolic_power(&i, 3, cfg.box_limit)?;
                let in_sym = radical_colon(&sym, &a)?.contains(&x5)?;
                let in_pow = radical_colon(&power(&i, 3), &a)?.contains(&x5)?;
                Ok((json!([true, false]), json!([in_sym, in_pow])))
            }),
        ),
    ];
    for (name, run) in fixed {
        let start = Instant::now();
        let (expected, computed, input) = match run() {
            Ok((e, c)) => (e, c, json!(null)),
            Err(err) => (json!("value"), json!(err.to_string()), json!(null)),
        };
        let ok = expected == computed;
        reports.push(simple_report(
            "fixed-example",
            name,
            expected,
            computed,
            "reference value",
            ok,
            start,
            cfg,
            input,
        ));
    }
    reports
}
