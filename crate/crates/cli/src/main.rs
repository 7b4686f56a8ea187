use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use srreg_core::complexes::degree_complex;
use srreg_core::harness::{
    self, all_passed, builtin_corpus, CorpusEntry, HarnessConfig, VerificationReport,
};
use srreg_core::homology::Field;
use srreg_core::io::{self, certificate_to_json, complex_to_json, ideal_to_json, Object};
use srreg_core::monomials::{self, Exponent, MonomialIdeal};
use srreg_core::regularity::{reg_takayama, RegOptions};
use srreg_core::symbolic::{symbolic_power, IntermediateFamily, Selection};
use srreg_core::Error;

#[derive(Parser)]
#[command(
    name = "srreg",
    version,
    about = "Regularity of Stanley-Reisner and edge ideals"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Coefficient field for homology: gf2, gf<p>, or q
    #[arg(long, global = true, default_value = "gf2")]
    field: Field,
    /// Worker threads (defaults to the number of cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, default_value_t = HarnessConfig::default().seed)]
    seed: u64,
    /// Largest extras count enumerated exhaustively before sampling
    #[arg(long, global = true, default_value_t = HarnessConfig::default().max_intermediates)]
    max_intermediates: usize,
    /// Emit JSON (one object per line for reports)
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Regularity of an ideal (or of I_Δ, I(G)) by the degree-complex scan
    Reg {
        input: PathBuf,
        /// Include the extremal witnesses
        #[arg(long)]
        certificate: bool,
    },
    /// Ordinary power I^s
    Power {
        input: PathBuf,
        #[arg(long)]
        s: u32,
    },
    /// Symbolic power I^(s) of a squarefree ideal
    Symbolic {
        input: PathBuf,
        #[arg(long)]
        s: u32,
    },
    /// Colon ideal I : x^a
    Colon {
        input: PathBuf,
        /// Monomial as `x1^2*x3` or `[2,0,1]`
        #[arg(long)]
        a: String,
    },
    /// Radical √I, or √(I : x^a) with --a
    Radical {
        input: PathBuf,
        #[arg(long)]
        a: Option<String>,
    },
    /// Degree complex Δ_a(I)
    DegreeComplex {
        input: PathBuf,
        #[arg(long)]
        a: String,
    },
    /// Intermediate ideals between I^s and I^(s)
    Intermediates {
        input: PathBuf,
        #[arg(long)]
        s: u32,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        #[arg(long, default_value_t = 64)]
        count: usize,
    },
    /// Girth formula for intermediate ideals of one-dimensional complexes
    #[command(name = "verify-theorem1", visible_alias = "verify-girth-formula")]
    VerifyGirthFormula {
        /// A one-dimensional complex; the built-in corpus when omitted
        input: Option<PathBuf>,
        /// Powers to check (default 2,3)
        #[arg(long, value_delimiter = ',')]
        s: Vec<u32>,
        /// Also run s = 4
        #[arg(long)]
        include_s4: bool,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, default_value_t = 64)]
        count: usize,
    },
    /// Rigidity reg J = reg I^s over all small graphs
    ScanSmallGraphs {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        #[arg(long, default_value_t = 2)]
        s: u32,
        #[arg(long)]
        up_to_isomorphism: bool,
    },
    /// Randomized and exhaustive property checks
    #[command(name = "lemma-suite", visible_alias = "property-suite")]
    PropertySuite {
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        s: Vec<u32>,
        #[arg(long, default_value_t = HarnessConfig::default().trials)]
        trials: usize,
    },
    /// Oracle cross-checks and fixed examples
    Selftest {
        /// Corrupt boundary maps to confirm the selftest notices
        #[arg(long)]
        inject_fault: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    All,
    Sample,
}

fn read_input(path: &Path) -> anyhow::Result<Object> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    }
    Ok(io::parse_object(&text)?)
}

fn parse_exponent(n: usize, text: &str) -> anyhow::Result<Exponent> {
    let text = text.trim();
    if text.starts_with('[') {
        let v: Vec<u32> = serde_json::from_str(text).context("exponent array")?;
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: v.len(),
            }
            .into());
        }
        Ok(Exponent::new(v))
    } else {
        Ok(io::parse_monomial(n, text)?)
    }
}

fn emit_ideal(i: &MonomialIdeal, json_out: bool) {
    if json_out {
        println!("{}", ideal_to_json(i));
    } else {
        println!("{i}");
    }
}

fn emit_reports(reports: &[VerificationReport], json_out: bool) {
    for r in reports {
        if json_out {
            println!("{}", r.to_json());
        } else {
            println!("{r}");
            if let Some(p) = &r.payload {
                println!("  reproduce: {p}");
            }
        }
    }
    if !json_out {
        let failed = reports.iter().filter(|r| !r.passed()).count();
        println!("{} reports, {} failed", reports.len(), failed);
    }
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let g = &cli.global;
    let cfg = HarnessConfig {
        field: g.field,
        seed: g.seed,
        max_intermediates: g.max_intermediates,
        ..HarnessConfig::default()
    };
    let opts = RegOptions::with_field(g.field);
    match cli.command {
        Command::Reg { input, certificate } => {
            let i = read_input(&input)?.to_ideal()?;
            let cert = reg_takayama(&i, &opts)?;
            let mut out = certificate_to_json(&cert);
            if !certificate {
                out.as_object_mut().expect("object").remove("witnesses");
            }
            if g.json || certificate {
                println!("{out}");
            } else {
                match cert.reg_ideal {
                    Some(r) => println!("reg I = {r}, reg S/I = {}", cert.reg_module),
                    None => println!("zero ideal: reg S/I = {}", cert.reg_module),
                }
            }
        }
        Command::Power { input, s } => {
            let i = read_input(&input)?.to_ideal()?;
            emit_ideal(&monomials::power(&i, s), g.json);
        }
        Command::Symbolic { input, s } => {
            let i = read_input(&input)?.to_ideal()?;
            emit_ideal(&symbolic_power(&i, s, cfg.box_limit)?, g.json);
        }
        Command::Colon { input, a } => {
            let i = read_input(&input)?.to_ideal()?;
            let a = parse_exponent(i.n(), &a)?;
            emit_ideal(&monomials::colon(&i, &a)?, g.json);
        }
        Command::Radical { input, a } => {
            let i = read_input(&input)?.to_ideal()?;
            let r = match a {
                Some(a) => monomials::radical_colon(&i, &parse_exponent(i.n(), &a)?)?,
                None => monomials::radical(&i),
            };
            emit_ideal(&r, g.json);
        }
        Command::DegreeComplex { input, a } => {
            let i = read_input(&input)?.to_ideal()?;
            let d = degree_complex(&i, &parse_exponent(i.n(), &a)?)?;
            if g.json {
                println!("{}", complex_to_json(&d));
            } else {
                println!("{d}");
            }
        }
        Command::Intermediates {
            input,
            s,
            mode,
            count,
        } => {
            let i = read_input(&input)?.to_ideal()?;
            let family = IntermediateFamily::new(&i, s, cfg.box_limit)?;
            let selection = match mode {
                Mode::All => Selection::All,
                Mode::Sample => Selection::Sample {
                    count,
                    seed: g.seed,
                },
            };
            for (label, _, j) in
                harness::family_members(&family, &selection, cfg.max_intermediates)?
            {
                if g.json {
                    println!(
                        "{}",
                        json!({ "selector": label, "ideal": ideal_to_json(&j) })
                    );
                } else {
                    println!("{label}: {j}");
                }
            }
        }
        Command::VerifyGirthFormula {
            input,
            mut s,
            include_s4,
            mode,
            count,
        } => {
            if s.is_empty() {
                s = vec![2, 3];
            }
            if include_s4 && !s.contains(&4) {
                s.push(4);
            }
            if s.contains(&4) && !include_s4 {
                bail!(Error::Precondition("s = 4 requires --include-s4".into()));
            }
            let corpus: Vec<CorpusEntry> = match input {
                Some(path) => vec![CorpusEntry {
                    name: path.display().to_string(),
                    complex: read_input(&path)?.to_complex()?,
                }],
                None => builtin_corpus(g.seed),
            };
            let selection = mode.map(|m| match m {
                Mode::All => Selection::All,
                Mode::Sample => Selection::Sample {
                    count,
                    seed: g.seed,
                },
            });
            let mut reports = Vec::new();
            for entry in &corpus {
                for &si in &s {
                    reports.extend(harness::verify_girth_formula(
                        &entry.name,
                        &entry.complex,
                        si,
                        selection.as_ref(),
                        &cfg,
                    )?);
                }
            }
            emit_reports(&reports, g.json);
            return Ok(verdict(all_passed(&reports)));
        }
        Command::ScanSmallGraphs {
            max_vertices,
            s,
            up_to_isomorphism,
        } => {
            let summary =
                harness::scan_small_graphs(max_vertices, s, None, up_to_isomorphism, &cfg)?;
            let failures: Vec<&VerificationReport> = summary.failures().collect();
            let head = json!({
                "max_vertices": summary.max_vertices,
                "s": summary.s,
                "graphs": summary.graphs,
                "intermediates": summary.intermediates,
                "elapsed_ms_by_n": summary.elapsed_ms_by_n,
                "failures": failures.len(),
            });
            if g.json {
                println!("{head}");
                for f in &failures {
                    println!("{}", f.to_json());
                }
            } else {
                println!(
                    "{} graphs, {} intermediate ideals, {} failures; ms by n: {:?}",
                    summary.graphs,
                    summary.intermediates,
                    failures.len(),
                    summary.elapsed_ms_by_n
                );
                for f in &failures {
                    println!("{f}");
                }
            }
            return Ok(verdict(failures.is_empty()));
        }
        Command::PropertySuite { s, trials } => {
            let cfg = HarnessConfig { trials, ..cfg };
            let reports = harness::property_suite(&builtin_corpus(g.seed), &s, &cfg);
            emit_reports(&reports, g.json);
            return Ok(verdict(all_passed(&reports)));
        }
        Command::Selftest { inject_fault } => {
            let reports = harness::selftest(&cfg, inject_fault);
            emit_reports(&reports, g.json);
            return Ok(verdict(all_passed(&reports)));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let json_out = cli.global.json;
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            if json_out {
                let v: Value = json!({ "error": format!("{e:#}") });
                eprintln!("{v}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
