//! Command-line front end. `run` parses arguments, executes one pipeline,
//! writes a report and returns the process exit code.

mod output;
mod spec;

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

pub use output::{document, emit_report, render_text, stable_digest, Format, SCHEMA_VERSION};
pub use spec::{BuildError, GroupSpec, SpecError};

use crate::character::character_table;
use crate::constructions::{
    amalgam_obstruction, center_sphere_family, corrupt_beta, verify_abelian, verify_rank3, verify_rank3_with_beta,
    beta_rank3, Check, VerificationReport,
};
use crate::group::{all_subgroups, center, classify_subgroup, find_normal_q, Group, DEFAULT_PERMUTATION_CAP};
use crate::zg::{find_spherical_classes, SphericalSearch};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "grpcert", version, about = "Exact verification of character and lattice constructions for p-groups")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Worker threads (defaults to the machine's parallelism).
    #[arg(long, global = true, env = "GRPCERT_THREADS")]
    pub threads: Option<usize>,
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_PERMUTATION_CAP)]
    pub max_order: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Named groups available through the --group grammar.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Subgroup conjugacy classes, optionally with their structural tags.
    Subgroups {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        classify: bool,
    },
    /// The character table.
    Table {
        #[arg(long)]
        group: GroupSpec,
    },
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
}

#[derive(Debug, Subcommand)]
pub enum VerifyTarget {
    /// The rank-3 class function on every subgroup meeting the center trivially.
    Rank3 {
        #[arg(long)]
        group: GroupSpec,
        /// Repeat for every valid Q instead of the least one.
        #[arg(long)]
        all_q: bool,
        /// Negative control: perturb β by +1 on one class.
        #[arg(long)]
        corrupt: bool,
    },
    /// The abelian-isotropy class function on the center-sphere model.
    Abelian {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        rank: usize,
    },
    /// The dimension-function obstruction for the amalgam of two p^{1+2}.
    Amalgam {
        #[arg(long)]
        p: usize,
        /// Defaults to 2p².
        #[arg(long)]
        degree_bound: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ComplexAction {
    /// Search for classes giving an algebraic free action on (S^{n−1})^r.
    Demo {
        #[arg(long)]
        group: GroupSpec,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 1)]
        bound: i128,
    },
}

/// The fully resolved configuration, recorded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub threads: usize,
    pub max_order: usize,
    pub degree_bound: Option<u64>,
    pub cocycle_bound: Option<i128>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    /// The parts of the configuration that can change results.
    fn stable(&self) -> serde_json::Value {
        json!({
            "max_order": self.max_order,
            "degree_bound": self.degree_bound,
            "cocycle_bound": self.cocycle_bound,
            "format": self.format,
        })
    }
}

#[derive(Debug, thiserror::Error)]
enum RunError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn input<E: std::fmt::Display>(e: E) -> RunError {
    RunError::Input(e.to_string())
}

/// Parses `args` (including the program name), runs the command, writes the
/// report to `stdout` (or `--out`) and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let threads = cli.config.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    // The global pool can only be configured once per process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    let mut config = RunConfig {
        threads,
        max_order: cli.config.max_order,
        degree_bound: None,
        cocycle_bound: None,
        out: cli.config.out.clone(),
        format: cli.config.format,
    };
    match execute(&cli.command, &mut config) {
        Ok((name, report)) => {
            if let Err(e) = emit_report(&name, &report, &config, stdout) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            if report.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn build(spec: &GroupSpec, config: &RunConfig) -> Result<Group, RunError> {
    Ok(Arc::new(spec.build(config.max_order)?))
}

fn execute(command: &Command, config: &mut RunConfig) -> Result<(String, VerificationReport), RunError> {
    let start = Instant::now();
    let (name, mut report) = match command {
        Command::Catalog { action: CatalogAction::List } => ("catalog list".to_string(), catalog()),
        Command::Subgroups { group, classify } => ("subgroups".into(), subgroups(&build(group, config)?, *classify)?),
        Command::Table { group } => ("table".into(), table(&build(group, config)?)?),
        Command::Verify { target } => match target {
            VerifyTarget::Rank3 { group, all_q, corrupt } => {
                let g = build(group, config)?;
                let report = if *corrupt {
                    let q = find_normal_q(&g).map_err(input)?;
                    let beta = beta_rank3(&g, &q).map_err(input)?;
                    let (bad, class) = corrupt_beta(&g, &q, &beta).map_err(input)?;
                    let mut r = verify_rank3_with_beta(&g, &q, &bad).map_err(input)?;
                    r.param("corrupted_class", class);
                    r
                } else {
                    verify_rank3(&g, *all_q).map_err(input)?
                };
                ("verify rank3".into(), report)
            }
            VerifyTarget::Abelian { group, rank } => {
                let g = build(group, config)?;
                let model = center_sphere_family(&g).map_err(input)?;
                ("verify abelian".into(), verify_abelian(&g, &model, *rank).map_err(input)?)
            }
            VerifyTarget::Amalgam { p, degree_bound } => {
                let d = degree_bound.unwrap_or(2 * (*p as u64) * (*p as u64));
                config.degree_bound = Some(d);
                ("verify amalgam".into(), amalgam_obstruction(*p, d).map_err(input)?)
            }
        },
        Command::Complex { action: ComplexAction::Demo { group, n, rank, bound } } => {
            config.cocycle_bound = Some(*bound);
            ("complex demo".into(), complex_demo(&build(group, config)?, *n, *rank, *bound)?)
        }
    };
    report.elapsed = start.elapsed();
    Ok((name, report))
}

fn catalog() -> VerificationReport {
    let mut r = VerificationReport::new("catalog", "-");
    let entries = [
        ("extraspecial:3:3:3", "3^{1+2}, exponent 3"),
        ("extraspecial:3:5:3", "3^{1+4}, exponent 3 (rank 3, cyclic center)"),
        ("extraspecial:5:3:5", "5^{1+2}, exponent 5"),
        ("extraspecial:5:5:5", "5^{1+4}, exponent 5 (rank 3, cyclic center)"),
        ("modular:3:3", "M(27)"),
        ("modular:3:4", "M(81)"),
        ("abelian:3,3", "(Z/3)^2"),
        ("cyclic:3", "Z/3"),
        ("product:extraspecial:3:3:3*cyclic:3", "3^{1+2} x Z/3 (rank 3, center of rank 2)"),
        ("centralproduct:extraspecial:3:3:3*cyclic:9", "3^{1+2} o Z/9 (rank 2, cyclic center of order 9)"),
    ];
    let list: Vec<_> = entries.iter().map(|(s, d)| json!({ "spec": s, "description": d })).collect();
    r.param("entries", list);
    r.conclusion = format!("{} catalog entries", entries.len());
    r
}

fn subgroups(g: &Group, classify: bool) -> Result<VerificationReport, RunError> {
    let lattice = all_subgroups(g).map_err(input)?;
    let mut r = VerificationReport::new("subgroups", g.label());
    let q = if classify { Some(find_normal_q(g).map_err(input)?) } else { None };
    let z = center(g);
    r.param("order", g.order());
    r.param("subgroups", lattice.len());
    r.param("classes", lattice.classes().len());
    for (cid, class) in lattice.classes().iter().enumerate() {
        let h = &lattice.records()[class[0]];
        let mut w = json!({
            "order": h.order,
            "generators": h.generators,
            "class_size": class.len(),
            "normal": h.is_normal,
            "abelian": h.is_abelian,
            "elementary_abelian": h.is_elementary_abelian,
            "rank": h.rank,
        });
        if let Some(q) = &q {
            let tag = if h.meets_trivially(&z) {
                match classify_subgroup(g, q, h) {
                    Ok(t) => serde_json::to_value(t).expect("serializable"),
                    Err(e) => {
                        r.push(Check::fail("classification", format!("class {cid}"), w.clone(), e.to_string()).with_class(cid));
                        continue;
                    }
                }
            } else {
                json!("meets_center")
            };
            w["classification"] = tag;
        }
        r.push(Check::observation("subgroup", format!("class {cid}"), w, format!("order {}", h.order)).with_class(cid));
    }
    r.conclusion = format!("{} subgroups in {} conjugacy classes", lattice.len(), lattice.classes().len());
    Ok(r)
}

fn table(g: &Group) -> Result<VerificationReport, RunError> {
    let t = character_table(g).map_err(input)?;
    let cl = g.classes();
    let mut r = VerificationReport::new("character_table", g.label());
    r.param("class_representatives", &cl.representatives);
    r.param("class_sizes", &cl.class_sizes);
    r.param("degrees", t.degrees());
    r.param("dixon_prime", t.prime());
    let rows: Vec<Vec<String>> = (0..t.len()).map(|i| t.row(i).iter().map(ToString::to_string).collect()).collect();
    r.param("rows", rows);
    let sum: u64 = t.degrees().iter().map(|d| d * d).sum();
    r.push(Check::from_bool(
        sum == g.order() as u64 && t.len() == cl.len(),
        "table_shape",
        g.label(),
        json!({ "sum_of_squares": sum, "irreducibles": t.len(), "classes": cl.len() }),
        "square table with Σ d² = |G| (orthogonality is verified exactly when the table is built)",
    ));
    r.conclusion = format!("{} irreducible characters", t.len());
    Ok(r)
}

fn complex_demo(g: &Group, n: usize, rank: usize, bound: i128) -> Result<VerificationReport, RunError> {
    let mut r = VerificationReport::new("spherical_classes", g.label());
    r.param("n", n);
    r.param("rank", rank);
    r.param("bound", bound);
    match find_spherical_classes(g, n, rank, bound).map_err(input)? {
        SphericalSearch::Found(cert) => {
            r.param("certificate", cert.summary_json());
            let valid = cert.complex.validate();
            r.push(Check::from_bool(
                valid.is_ok(),
                "chain_complex",
                "C",
                json!({ "error": valid.err().map(|e| e.to_string()) }),
                "d∘d = 0 and every boundary is equivariant",
            ));
            let euler_h: i64 = cert.homology.iter().enumerate().map(|(i, h)| if i % 2 == 0 { h.free_rank as i64 } else { -(h.free_rank as i64) }).sum();
            r.push(Check::from_bool(
                euler_h == cert.complex.euler_characteristic(),
                "euler_characteristic",
                "C",
                json!({ "chain": cert.complex.euler_characteristic(), "homology": euler_h }),
                "Σ(−1)^i rank C_i = Σ(−1)^i rank H_i",
            ));
            let expected = crate::zg::sphere_product_homology(n.saturating_sub(1), rank);
            r.push(Check::from_bool(
                cert.homology == expected,
                "homology",
                "C",
                json!({ "homology": cert.homology.iter().map(ToString::to_string).collect::<Vec<_>>() }),
                format!("homology of a product of {rank} sphere(s) of dimension {}", n.saturating_sub(1)),
            ));
            for (degree, t) in &cert.projectivity.reports {
                r.push(Check::from_bool(
                    t.projective,
                    "projective",
                    format!("C_{degree} over H = <{:?}>", t.subgroup),
                    serde_json::to_value(t).expect("serializable"),
                    format!("Tate cohomology in degrees -1 and 0 vanishes over a subgroup of order {}", t.subgroup_order),
                ));
            }
            r.conclusion = format!("certificate found: free action model on a product of {rank} sphere(s)");
        }
        SphericalSearch::Exhausted { candidates, tuples_tried } => {
            r.push(Check::observation(
                "search_exhausted",
                "cocycles",
                json!({ "candidates": candidates, "tuples_tried": tuples_tried }),
                "no tuple within the bound gives a certificate; a larger bound may succeed",
            ));
            r.conclusion = "search exhausted".into();
        }
    }
    Ok(r)
}
