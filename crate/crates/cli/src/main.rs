//! `qc`: command-line front end for the quasicartan library.
//!
//! Vertices, arcs and mutation sequences are 1-based on the command line
//! and in every output. Exit status: 0 success, 1 usage or input error,
//! 2 property violation, 3 inconclusive.

mod input;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use input::{vertices, Sources};
use quasicartan::companion::{
    admissibility, compatibility_failures, enumerate_fully_compatible, is_fully_compatible, mismatches,
    mutate_companion, SearchOptions,
};
use quasicartan::fixtures;
use quasicartan::mutclass::{self, ClassOptions, TwinOptions, DEFAULT_MEMBER_CAP};
use quasicartan::{io, weyl, Companion, Error, Quiver};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "qc", version, about = "Quiver mutation, quasi-Cartan companions and surface triangulations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads for class exploration.
    #[arg(long, global = true, env = "QC_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate a quiver along a sequence of vertices.
    Mutate {
        #[command(flatten)]
        sources: Sources,
        /// Vertices to mutate at, in order.
        #[arg(long, required = true, value_delimiter = ',')]
        at: Vec<usize>,
    },
    /// Enumerate the mutation class up to isomorphism.
    Class {
        #[command(flatten)]
        sources: Sources,
        #[arg(long, default_value_t = DEFAULT_MEMBER_CAP)]
        cap: usize,
    },
    /// Decide whether the mutation class is finite.
    Finite {
        #[command(flatten)]
        sources: Sources,
    },
    /// Check a companion against a quiver.
    CompanionCheck {
        #[command(flatten)]
        sources: Sources,
    },
    /// Mutate a companion and check the result against the mutated quiver.
    CompanionMutate {
        #[command(flatten)]
        sources: Sources,
        #[arg(long, required = true, value_delimiter = ',')]
        at: Vec<usize>,
    },
    /// List all fully compatible companions up to sign changes.
    CompanionSearch {
        #[command(flatten)]
        sources: Sources,
        /// Keep only positive semi-definite companions.
        #[arg(long)]
        psd_only: bool,
    },
    /// Quiver of a triangulated surface.
    SurfaceQuiver {
        #[command(flatten)]
        sources: Sources,
        /// Arcs to flip first, in order.
        #[arg(long, value_delimiter = ',')]
        flip: Vec<usize>,
    },
    /// Companion basis of a triangulated surface.
    SurfaceBasis {
        #[command(flatten)]
        sources: Sources,
        /// Use `e_i + e_j` for every arc instead of the admissible signs.
        #[arg(long)]
        naive: bool,
    },
    /// Certify that a companion stays a companion under all mutations.
    TwinCertify {
        #[command(flatten)]
        sources: Sources,
        /// Also require admissibility at every state.
        #[arg(long)]
        admissible: bool,
        #[arg(long, default_value_t = DEFAULT_MEMBER_CAP)]
        cap: usize,
    },
    /// Check the relation catalog in the reflection representation.
    WeylVerify {
        #[command(flatten)]
        sources: Sources,
    },
    /// List fixtures, print one, or write them all to a directory.
    Fixtures {
        name: Option<String>,
        #[arg(long, value_name = "DIR", conflicts_with = "name")]
        out: Option<String>,
    },
}

/// Result of a command: what to print and how to exit.
struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn new(json: Value, text: String) -> Self {
        Self { json, text, code: 0 }
    }

    fn raw(text: String) -> Self {
        Self {
            json: Value::Null,
            text,
            code: 0,
        }
    }

    fn failing_if(mut self, violated: bool) -> Self {
        if violated {
            self.code = 2;
        }
        self
    }
}

fn doc(text: String) -> Value {
    serde_json::from_str(&text).expect("library output is valid JSON")
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn pairs(v: &[(usize, usize)]) -> Vec<[usize; 2]> {
    v.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
}

fn qcc(a: &Companion) -> String {
    io::companion_to_qcc(a, &[])
}

fn qvr(q: &Quiver) -> String {
    io::quiver_to_qvr(q, &[])
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json if out.json.is_null() => print!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let inconclusive = e.chain().any(|c| {
                matches!(
                    c.downcast_ref::<Error>(),
                    Some(Error::CapExceeded { .. } | Error::TooManyArrows { .. })
                )
            });
            ExitCode::from(if inconclusive { 3 } else { 1 })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let jobs = cli.jobs;
    match &cli.command {
        Command::Mutate { sources, at } => {
            let q = sources.quiver()?;
            let seq = vertices(at, q.n(), "vertex")?;
            let m = q.mutate_sequence(&seq)?;
            Ok(Outcome::new(doc(io::quiver_to_json(&m, None)), qvr(&m)))
        }
        Command::Class { sources, cap } => {
            let q = sources.quiver()?;
            let r = mutclass::enumerate_class(&q, ClassOptions { member_cap: *cap, jobs })?;
            let mut text = format!(
                "quotient: {}\nfinite: {}\nmembers: {}\n",
                r.quotient,
                r.finite,
                r.members.len()
            );
            if let Some(w) = &r.witness {
                text.push_str(&format!("witness: {:?}\n", one_based(w)));
            }
            for (i, m) in r.members.iter().enumerate() {
                text.push_str(&format!("\n# member {}\n{}", i + 1, qvr(m)));
            }
            Ok(Outcome::new(doc(io::class_report_to_json(&r)), text))
        }
        Command::Finite { sources } => {
            let q = sources.quiver()?;
            let f = mutclass::is_mutation_finite(&q, jobs)?;
            let mut text = format!("finite: {}\n", f.finite);
            if let Some(s) = f.class_size {
                text.push_str(&format!("class size: {s}\n"));
            }
            if let Some(w) = &f.witness {
                text.push_str(&format!("witness: {:?}\n", one_based(w)));
            }
            Ok(Outcome::new(doc(io::finiteness_to_json(&f)), text))
        }
        Command::CompanionCheck { sources } => {
            let q = sources.quiver()?;
            let a = sources.companion()?;
            if a.n() != q.n() {
                bail!("companion has {} rows, quiver has {} vertices", a.n(), q.n());
            }
            let bad = mismatches(&a, &q);
            let mut json = json!({
                "companion": bad.is_empty(),
                "mismatches": pairs(&bad),
                "inertia": a.inertia(),
            });
            let mut text = format!("companion: {}\ninertia: {}\n", bad.is_empty(), a.inertia());
            if bad.is_empty() {
                let triangles: Vec<Vec<usize>> = compatibility_failures(&a, &q)?.iter().map(|t| one_based(t)).collect();
                let adm = admissibility(&a, &q)?;
                let cycles: Vec<Value> = adm
                    .failures
                    .iter()
                    .map(|c| json!({"vertices": one_based(&c.vertices), "oriented": c.oriented, "product_sign": c.product_sign}))
                    .collect();
                text.push_str(&format!(
                    "fully compatible: {}\nadmissible: {} ({} chordless cycles)\n",
                    triangles.is_empty(),
                    adm.admissible,
                    adm.cycles_checked
                ));
                for t in &triangles {
                    text.push_str(&format!("incompatible triangle: {t:?}\n"));
                }
                for c in &adm.failures {
                    text.push_str(&format!("failing cycle: {:?}\n", one_based(&c.vertices)));
                }
                json["fully_compatible"] = json!(triangles.is_empty());
                json["incompatible_triangles"] = json!(triangles);
                json["admissible"] = json!(adm.admissible);
                json["cycles_checked"] = json!(adm.cycles_checked);
                json["cycle_failures"] = json!(cycles);
            } else {
                text.push_str(&format!("mismatches: {:?}\n", pairs(&bad)));
            }
            Ok(Outcome::new(json, text).failing_if(!bad.is_empty()))
        }
        Command::CompanionMutate { sources, at } => {
            let mut q = sources.quiver()?;
            let mut a = sources.companion()?;
            for k in vertices(at, q.n(), "vertex")? {
                a = mutate_companion(&a, &q, k)?;
                q = q.mutate(k)?;
                let bad = mismatches(&a, &q);
                if !bad.is_empty() {
                    let json = json!({
                        "companion": false,
                        "at": k + 1,
                        "mismatches": pairs(&bad),
                        "matrix": doc(io::companion_to_json(&a, None)),
                        "quiver": doc(io::quiver_to_json(&q, None)),
                    });
                    let text = format!(
                        "companion: false\nat: {}\nmismatches: {:?}\n{}",
                        k + 1,
                        pairs(&bad),
                        qcc(&a)
                    );
                    return Ok(Outcome::new(json, text).failing_if(true));
                }
            }
            let json = json!({
                "companion": true,
                "fully_compatible": is_fully_compatible(&a, &q)?,
                "matrix": doc(io::companion_to_json(&a, None)),
                "quiver": doc(io::quiver_to_json(&q, None)),
            });
            Ok(Outcome::new(json, format!("companion: true\n{}", qcc(&a))))
        }
        Command::CompanionSearch { sources, psd_only } => {
            let q = sources.quiver()?;
            let found = enumerate_fully_compatible(&q, SearchOptions { psd_only: *psd_only })?;
            let list: Vec<Value> = found.iter().map(|a| doc(io::companion_to_json(a, None))).collect();
            let mut text = format!("fully compatible companions up to sign changes: {}\n", found.len());
            for a in &found {
                text.push('\n');
                text.push_str(&qcc(a));
            }
            Ok(Outcome::new(json!({"count": found.len(), "companions": list}), text))
        }
        Command::SurfaceQuiver { sources, flip } => {
            let mut t = sources.require_triangulation()?;
            for arc in vertices(flip, t.arc_count(), "arc")? {
                t = t.flip(arc)?;
            }
            let q = t.quiver();
            let spec = t.spec();
            let json = json!({
                "surface": doc(io::surface_spec_to_json(&spec, None)),
                "triangulation": doc(io::triangulation_to_json(&t, None)),
                "quiver": doc(io::quiver_to_json(&q, None)),
            });
            Ok(Outcome::new(json, qvr(&q)))
        }
        Command::SurfaceBasis { sources, naive } => {
            let t = sources.require_triangulation()?;
            let q = t.quiver();
            let (basis, tree, cuts) = if *naive {
                (t.naive_companion_basis(), Vec::new(), Vec::new())
            } else {
                let ab = t.admissible_companion_basis()?;
                (ab.basis, ab.tree_arcs, ab.cut_arcs)
            };
            let a = basis.companion()?;
            let adm = admissibility(&a, &q)?;
            let json = json!({
                "basis": doc(io::basis_to_json(&basis, None)),
                "tree_arcs": one_based(&tree),
                "cut_arcs": one_based(&cuts),
                "companion": doc(io::companion_to_json(&a, None)),
                "inertia": a.inertia(),
                "admissible": adm.admissible,
            });
            let mut text = format!(
                "inertia: {}\nadmissible: {}\ncut arcs: {:?}\n",
                a.inertia(),
                adm.admissible,
                one_based(&cuts)
            );
            for (i, v) in basis.vectors().iter().enumerate() {
                let coords: Vec<String> = v.iter().map(ToString::to_string).collect();
                text.push_str(&format!("v{} = [{}]\n", i + 1, coords.join(", ")));
            }
            Ok(Outcome::new(json, text))
        }
        Command::TwinCertify {
            sources,
            admissible,
            cap,
        } => {
            let q = sources.quiver()?;
            let a = sources.companion()?;
            let r = mutclass::certify_symmetric_twin(
                &q,
                &a,
                TwinOptions {
                    require_admissible: *admissible,
                    state_cap: *cap,
                    jobs,
                },
            )?;
            let mut text = format!(
                "certified: {}\nmembers: {}\nstates: {}\n",
                r.certified(),
                r.members.len(),
                r.certificates.len()
            );
            if let Some(v) = &r.violation {
                text.push_str(&format!("violation after mutations {:?}\n", one_based(&v.path)));
                for f in &v.failures {
                    text.push_str(&format!(
                        "  direction {}: mismatches {:?}, failing cycles {}\n",
                        f.k + 1,
                        pairs(&f.mismatches),
                        f.cycle_failures.len()
                    ));
                }
            }
            Ok(Outcome::new(doc(io::class_report_to_json(&r)), text).failing_if(r.violation.is_some()))
        }
        Command::WeylVerify { sources } => {
            let q = sources.quiver()?;
            let b = sources.require_basis()?;
            let r = weyl::verify_relations(&q, &b)?;
            let mut text = format!("pass: {}\ninstances: {}\n", r.pass, r.instances.len());
            for i in &r.instances {
                text.push_str(&format!(
                    "{:<6} {:?} {}\n",
                    i.instance.pattern,
                    one_based(&i.instance.vertices),
                    if i.holds { "holds" } else { "FAILS" }
                ));
            }
            Ok(Outcome::new(doc(io::relation_report_to_json(&r)), text).failing_if(!r.pass))
        }
        Command::Fixtures { name, out } => fixtures_command(name.as_deref(), out.as_deref()),
    }
}

fn fixtures_command(name: Option<&str>, out: Option<&str>) -> Result<Outcome> {
    if let Some(name) = name {
        return Ok(Outcome::raw(fixtures::find(name)?.render()));
    }
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        let mut written = Vec::new();
        for f in fixtures::all() {
            let path = std::path::Path::new(dir).join(f.file_name());
            std::fs::write(&path, f.render())?;
            written.push(path.display().to_string());
        }
        let text = written.iter().map(|p| format!("{p}\n")).collect();
        return Ok(Outcome::new(json!(written), text));
    }
    let list: Vec<Value> = fixtures::all()
        .iter()
        .map(|f| {
            json!({
                "name": f.name,
                "kind": f.kind.as_str(),
                "file": f.file_name(),
                "summary": f.summary,
                "transcribed": f.transcribed,
            })
        })
        .collect();
    let text = fixtures::all()
        .iter()
        .map(|f| format!("{:<28} {:<9} {}\n", f.name, f.kind.as_str(), f.summary))
        .collect();
    Ok(Outcome::new(json!(list), text))
}
