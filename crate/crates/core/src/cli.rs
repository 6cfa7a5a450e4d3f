//! The `localcert` command line.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bits::{all_strings_up_to, BitString};
use crate::certify::{
    run_all, soundness_search, Certificates, Scheme, SchemeRef, SearchConfig, SoundnessOutcome, Widened,
};
use crate::error::{Error, Result};
use crate::gadget::{
    decode_graph, encode_graph, encoded_vertex_count, labeled_size_bound, size_claim, unlabeled_size_bound,
    wrap_labeled, wrap_unlabeled,
};
use crate::graph::{
    certs_to_json, graph_to_json, graph_to_text, parse_certs, parse_graph, random_labels, GenSpec, Graph,
};
use crate::lowerbound::glue_demo;
use crate::paths::{compare_with_generic, path_order, shave, shaved_size_bound};
use crate::reduction::{check_lemmas, check_reconstruction, mutate, reduce, size_bound};
use crate::report::{Outcome, RunReport};
use crate::schemes::pdelta::lemma6_bound;
use crate::schemes::{pdelta_membership, registry, scheme_by_name};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "localcert", version, about = "Proof labeling schemes: certify, attack, reduce, encode")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Worker threads.
    #[arg(long, global = true, env = "LOCALCERT_JOBS")]
    pub jobs: Option<usize>,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    Path,
    Cycle,
    Star,
    RandomTree,
    RandomBoundedDegree,
    Pdelta,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Direction {
    ToUnlabeled,
    ToLabeled,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the scheme registry.
    Schemes,
    /// Generate a graph.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 3)]
        delta: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Half leaf string of a `P_Δ` instance; random when omitted.
        #[arg(long)]
        half: Option<BitString>,
        /// Permute `P_Δ` identifiers with the seed.
        #[arg(long)]
        permute: bool,
        /// Random labels of up to this many bits.
        #[arg(long, default_value_t = 0)]
        label_bits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a scheme on a graph, with honest or given certificates.
    Certify {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certs: Option<PathBuf>,
        /// Write the certificates used.
        #[arg(long)]
        emit_certs: Option<PathBuf>,
    },
    /// Search every certificate assignment up to a size for one the verifier accepts.
    Attack {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        max_bits: usize,
        /// Attack the scheme reduced by this many steps, searching over base
        /// assignments and their broadcasts.
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        #[arg(long)]
        deadline_secs: Option<u64>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Reduce a scheme's radius by `delta` and run it honestly.
    Reduce {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        emit_certs: Option<PathBuf>,
    },
    /// Run the reduced verifier with conditions and lemma checks, optionally on mutations.
    ReduceVerify {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certs: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        mutations: u64,
    },
    /// Find a fingerprint collision on `P_Δ`, glue, and run the verifier on the result.
    GlueDemo {
        #[arg(long, default_value_t = 3)]
        delta: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Payload cap; the full scheme when omitted.
        #[arg(long)]
        truncate_bits: Option<usize>,
        /// Write the glued graph and certificates here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Write g(G).
    EncodeLabels {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write g'(H).
    DecodeLabels {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a scheme through the gadget encoding.
    Wrap {
        #[arg(long)]
        scheme: String,
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Run a radius-`d` path scheme at radius 1.
    Shave {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        graph: PathBuf,
    },
    /// Graph and certificate statistics.
    Stats {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        certs: Option<PathBuf>,
        /// Also check membership in `P_Δ` for this `Δ`.
        #[arg(long)]
        delta: Option<usize>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?)
}

fn load_certs(path: &Path) -> Result<Certificates> {
    parse_certs(&read(path)?)
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn verdict_outcome(accepted: bool) -> (Outcome, &'static str) {
    if accepted {
        (Outcome::Ok, "accepted")
    } else {
        (Outcome::Rejected, "rejected")
    }
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Some(jobs) = cli.jobs {
        // Fails only if a pool already exists, which then keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    let base = RunReport::new(echo, cli.seed);
    let mut report = match execute(&cli, base.clone()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            base.verdict(Outcome::Error, "error").details(json!({ "error": e.to_string() }))
        }
    };
    report.wall_time_ms = started.elapsed().as_millis();
    let text = report.to_json();
    match &cli.report {
        Some(path) => {
            if let Err(e) = write(path, &text) {
                eprintln!("error: {e}");
                return 2;
            }
            println!("{}", report.verdict.as_deref().unwrap_or("done"));
        }
        None => println!("{text}"),
    }
    report.outcome.exit_code()
}

fn widened_to(scheme: SchemeRef, d: usize) -> Result<SchemeRef> {
    use std::cmp::Ordering;
    match scheme.radius().cmp(&d) {
        Ordering::Equal => Ok(scheme),
        Ordering::Less => Ok(std::sync::Arc::new(Widened::new(scheme, d)?)),
        Ordering::Greater => Err(Error::Input(format!("{} has radius {} > d = {d}", scheme.name(), scheme.radius()))),
    }
}

fn execute(cli: &Cli, report: RunReport) -> Result<RunReport> {
    let seed = cli.seed;
    match &cli.command {
        Command::Schemes => Ok(report.verdict(Outcome::Ok, "listed").details(registry())),

        Command::Gen { kind, n, max_degree, delta, depth, half, permute, label_bits, out, format } => {
            let spec = match kind {
                Kind::Path => GenSpec::Path { n: *n },
                Kind::Cycle => GenSpec::Cycle { n: *n },
                Kind::Star => GenSpec::Star { n: *n },
                Kind::RandomTree => GenSpec::RandomTree { n: *n, seed },
                Kind::RandomBoundedDegree => GenSpec::RandomBoundedDegree { n: *n, max_degree: *max_degree, seed },
                Kind::Pdelta => {
                    let len = crate::schemes::pdelta::half_len(*delta, *depth)
                        .filter(|&h| h <= 1 << 16)
                        .ok_or_else(|| Error::Input("P_Δ instance too large".into()))?;
                    let half = match half {
                        Some(h) => h.clone(),
                        None => {
                            use rand::{Rng, SeedableRng};
                            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                            (0..len).map(|_| rng.gen::<bool>()).collect()
                        }
                    };
                    GenSpec::PDelta { delta: *delta, depth: *depth, half, id_seed: permute.then_some(seed) }
                }
            };
            let mut g = spec.generate()?;
            if *label_bits > 0 {
                g = random_labels(&g, *label_bits, seed);
            }
            let text = match format {
                Format::Json => graph_to_json(&g),
                Format::Text => graph_to_text(&g),
            };
            let report = report.with_graph(&g).verdict(Outcome::Ok, "generated");
            match out {
                Some(path) => {
                    write(path, &text)?;
                    Ok(report.details(json!({ "spec": spec, "out": path })))
                }
                None => Ok(report.details(json!({ "spec": spec, "graph": crate::graph::GraphDoc::from(&g) }))),
            }
        }

        Command::Certify { scheme, graph, certs, emit_certs } => {
            let s = scheme_by_name(scheme)?;
            let g = load_graph(graph)?;
            let report = report.with_graph(&g).with_scheme(&*s);
            let certs = match certs {
                Some(path) => load_certs(path)?,
                None => match s.prove(&g) {
                    Ok(c) => c,
                    Err(Error::NotMember { reason, .. }) => {
                        return Ok(report
                            .verdict(Outcome::Rejected, "not-a-member")
                            .details(json!({ "reason": reason })));
                    }
                    Err(e) => return Err(e),
                },
            };
            if let Some(path) = emit_certs {
                write(path, &certs_to_json(&certs))?;
            }
            let verdict = run_all(&*s, &g, &certs)?;
            let (outcome, word) = verdict_outcome(verdict.accepted);
            let mut report = report.with_certs(&certs).verdict(outcome, word).details(&verdict);
            if let Some(p) = s.name().strip_prefix("pdelta:") {
                let mut parts = p.split(':').map(|x| x.parse::<usize>());
                if let (Some(Ok(delta)), Some(Ok(r))) = (parts.next(), parts.next()) {
                    report = report.bound("lemma6", lemma6_bound(delta, r, g.vertex_count()));
                }
            }
            Ok(report)
        }

        Command::Attack { scheme, graph, max_bits, delta, budget, deadline_secs, emit_witness } => {
            let s = scheme_by_name(scheme)?;
            let g = load_graph(graph)?;
            let config = SearchConfig { budget: *budget, deadline: deadline_secs.map(Duration::from_secs) };
            let (name, outcome) = match delta {
                None => (SchemeRef::clone(&s), soundness_search(&*s, &g, *max_bits, &config)?),
                Some(d) => {
                    let red = reduce(SchemeRef::clone(&s), *d)?;
                    let all: Vec<BitString> = all_strings_up_to(*max_bits).collect();
                    let space = g.vertices().map(|v| (v, all.clone())).collect();
                    let out = red.search_broadcasts(&g, &space, &config)?;
                    (std::sync::Arc::new(red) as SchemeRef, out)
                }
            };
            let report = report.with_graph(&g).with_scheme(&*name);
            Ok(match outcome {
                SoundnessOutcome::Sound { space_log2, steps } => report
                    .verdict(Outcome::Ok, format!("sound-up-to-{max_bits}"))
                    .details(json!({ "space_log2": space_log2, "steps": steps })),
                SoundnessOutcome::Fooled { witness, steps } => {
                    if let Some(path) = emit_witness {
                        write(path, &certs_to_json(&witness))?;
                    }
                    let doc: crate::graph::CertsDoc =
                        witness.iter().map(|(v, c)| (v, crate::graph::LabelDoc::from(c))).collect();
                    report
                        .with_certs(&witness)
                        .verdict(Outcome::Rejected, "fooled")
                        .details(json!({ "steps": steps, "witness": doc }))
                }
                SoundnessOutcome::BudgetExceeded { at } => {
                    report.verdict(Outcome::Error, "budget-exceeded").details(json!({ "steps": at }))
                }
            })
        }

        Command::Reduce { scheme, delta, graph, emit_certs } => {
            let s = scheme_by_name(scheme)?;
            let g = load_graph(graph)?;
            let red = reduce(SchemeRef::clone(&s), *delta)?;
            let base = s.prove(&g)?;
            let certs = red.prove(&g)?;
            if let Some(path) = emit_certs {
                write(path, &certs_to_json(&certs))?;
            }
            let verdict = run_all(&red, &g, &certs)?;
            let (outcome, word) = verdict_outcome(verdict.accepted);
            let bound = size_bound(g.max_degree(), *delta, g.max_id(), base.size(), g.max_label_bits());
            let counts: Vec<usize> = g.vertices().map(|v| red.codec().decode(certs.get(v).unwrap()).len()).collect();
            Ok(report
                .with_graph(&g)
                .with_scheme(&red)
                .with_certs(&certs)
                .verdict(outcome, word)
                .bound("size_bound", bound)
                .bound("base_size", base.size())
                .bound("packet_count_bound", crate::reduction::packet_count_bound(g.max_degree(), *delta))
                .details(json!({
                    "rejecting": verdict.rejecting,
                    "packets_per_vertex": counts,
                    "within_bound": certs.size() <= bound,
                })))
        }

        Command::ReduceVerify { scheme, delta, graph, certs, mutations } => {
            let s = scheme_by_name(scheme)?;
            let g = load_graph(graph)?;
            let red = reduce(SchemeRef::clone(&s), *delta)?;
            let certs = match certs {
                Some(path) => load_certs(path)?,
                None => red.prove(&g)?,
            };
            let verdict = run_all(&red, &g, &certs)?;
            let failed: Vec<_> = verdict
                .rejecting
                .iter()
                .map(|&v| {
                    let view = crate::graph::induced_view(&g, &certs, v, red.radius())?;
                    Ok(json!({ "vertex": v, "condition": format!("{:?}", red.failed_condition(&view)) }))
                })
                .collect::<Result<_>>()?;
            let violations = check_lemmas(&red, &g, &certs);
            let reconstruction = check_reconstruction(&red, &g).map(|v| v.len()).ok();
            let mut consistent = !verdict.accepted || violations.is_empty();
            let (mut rejected, mut harmless, mut broken) = (0u64, 0u64, 0u64);
            if *mutations > 0 {
                let honest = red.prove(&g)?;
                for i in 0..*mutations {
                    let (bad, _) = mutate(&red, &g, &honest, seed.wrapping_add(i));
                    if !run_all(&red, &g, &bad)?.accepted {
                        rejected += 1;
                    } else if check_lemmas(&red, &g, &bad).is_empty() {
                        harmless += 1;
                    } else {
                        broken += 1;
                    }
                }
                consistent &= broken == 0;
            }
            let outcome = if consistent { Outcome::Ok } else { Outcome::Rejected };
            let word = match (verdict.accepted, consistent) {
                (_, false) => "lemma-violation",
                (true, true) => "accepted",
                (false, true) => "rejected",
            };
            Ok(report
                .with_graph(&g)
                .with_scheme(&red)
                .with_certs(&certs)
                .verdict(outcome, word)
                .details(json!({
                    "rejecting": failed,
                    "lemma_violations": violations.iter().map(|v| json!({
                        "lemma": format!("{:?}", v.lemma), "vertex": v.vertex, "detail": v.detail,
                    })).collect::<Vec<_>>(),
                    "reconstruction_mismatches": reconstruction,
                    "mutations": { "tried": mutations, "rejected": rejected, "accepted_consistent": harmless, "accepted_inconsistent": broken },
                })))
        }

        Command::GlueDemo { delta, depth, r, truncate_bits, emit } => {
            let (demo, glued) = glue_demo(*delta, *depth, *r, *truncate_bits)?;
            if let (Some(dir), Some(g)) = (emit, &glued) {
                std::fs::create_dir_all(dir)?;
                write(&dir.join("glued.json"), &graph_to_json(&g.graph))?;
                write(&dir.join("glued.certs.json"), &certs_to_json(&g.certs))?;
            }
            let report = report.bound("fingerprint_space_bits", demo.fingerprint_space_bits);
            let report = match (&demo.collision, &glued) {
                (Some(c), Some(g)) if c.verdict.accepted => {
                    report.with_graph(&g.graph).with_certs(&g.certs).verdict(Outcome::Rejected, "fooled")
                }
                (Some(_), _) => report.verdict(Outcome::Ok, "collision-rejected"),
                (None, _) => report.verdict(Outcome::Ok, "exhausted"),
            };
            Ok(report.details(&demo))
        }

        Command::EncodeLabels { graph, out } => {
            let g = load_graph(graph)?;
            let h = encode_graph(&g);
            write(out, &graph_to_json(&h))?;
            Ok(report
                .with_graph(&g)
                .verdict(Outcome::Ok, "encoded")
                .bound("size_claim", size_claim(&g))
                .details(json!({ "encoded_vertices": h.vertex_count(), "exact_count": encoded_vertex_count(&g) })))
        }

        Command::DecodeLabels { graph, out } => {
            let h = load_graph(graph)?;
            let g = decode_graph(&h)?;
            g.check_host()?;
            write(out, &graph_to_json(&g))?;
            Ok(report
                .with_graph(&g)
                .verdict(Outcome::Ok, "decoded")
                .details(json!({ "encoded_vertices": h.vertex_count() })))
        }

        Command::Wrap { scheme, direction, graph } => {
            let s = scheme_by_name(scheme)?;
            let g = load_graph(graph)?;
            let report = report.with_graph(&g);
            match direction {
                Direction::ToUnlabeled => {
                    let h = encode_graph(&g);
                    let base = s.prove(&g)?;
                    let wrapped = wrap_unlabeled(SchemeRef::clone(&s));
                    let certs = wrapped.prove(&h)?;
                    let verdict = run_all(&wrapped, &h, &certs)?;
                    let (outcome, word) = verdict_outcome(verdict.accepted);
                    Ok(report
                        .with_scheme(&wrapped)
                        .with_certs(&certs)
                        .verdict(outcome, word)
                        .bound("unlabeled_size_bound", unlabeled_size_bound(g.max_label_bits(), base.size()))
                        .bound("base_size", base.size())
                        .details(json!({ "encoded_vertices": h.vertex_count(), "rejecting": verdict.rejecting })))
                }
                Direction::ToLabeled => {
                    let h = encode_graph(&g);
                    let inner = s.prove(&h)?;
                    let wrapped = wrap_labeled(SchemeRef::clone(&s));
                    let certs = wrapped.certificates_for(&g, &inner);
                    let verdict = run_all(&wrapped, &g, &certs)?;
                    let (outcome, word) = verdict_outcome(verdict.accepted);
                    Ok(report
                        .with_scheme(&wrapped)
                        .with_certs(&certs)
                        .verdict(outcome, word)
                        .bound(
                            "labeled_size_bound",
                            labeled_size_bound(g.max_label_bits(), inner.size(), h.vertex_count()),
                        )
                        .bound("inner_size", inner.size())
                        .details(json!({ "encoded_vertices": h.vertex_count(), "rejecting": verdict.rejecting })))
                }
            }
        }

        Command::Shave { scheme, d, graph } => {
            let base = widened_to(scheme_by_name(scheme)?, *d)?;
            let g = load_graph(graph)?;
            if path_order(&g).is_none() {
                return Err(Error::Input("shave works on paths only".into()));
            }
            let shaved = shave(SchemeRef::clone(&base))?;
            let certs = match shaved.prove(&g) {
                Ok(c) => c,
                Err(Error::NotMember { reason, .. }) => {
                    return Ok(report
                        .with_graph(&g)
                        .verdict(Outcome::Rejected, "not-a-member")
                        .details(json!({ "reason": reason })));
                }
                Err(e) => return Err(e),
            };
            let verdict = run_all(&shaved, &g, &certs)?;
            let (outcome, word) = verdict_outcome(verdict.accepted);
            let comparison = if *d >= 2 { Some(compare_with_generic(&base, &g)?) } else { None };
            let sizes: Vec<usize> = g.vertices().map(|v| certs.get(v).map_or(0, BitString::len)).collect();
            Ok(report
                .with_graph(&g)
                .with_scheme(&shaved)
                .with_certs(&certs)
                .verdict(outcome, word)
                .bound(
                    "shaved_size_bound",
                    comparison.as_ref().map_or_else(
                        || shaved_size_bound(*d, g.vertex_count(), 0, g.max_label_bits()),
                        |c| c.shaved_bound,
                    ),
                )
                .details(json!({ "per_vertex_bits": sizes, "rejecting": verdict.rejecting, "generic": comparison })))
        }

        Command::Stats { graph, certs, delta } => {
            let g = load_graph(graph)?;
            let mut report = report.with_graph(&g).verdict(Outcome::Ok, "stats");
            if let Some(path) = certs {
                report = report.with_certs(&load_certs(path)?);
            }
            let membership = delta.map(|d| pdelta_membership(&g, d));
            Ok(report.details(json!({
                "connected": g.is_connected(),
                "tree": g.edge_count() + 1 == g.vertex_count(),
                "path": path_order(&g).is_some(),
                "pdelta": membership,
            })))
        }
    }
}
