//! Command-line frontend. Every subcommand reads JSON inputs and prints a JSON
//! report `{command, cached, ok, result}`; results are cached by input hash.
//!
//! Exit codes: 0 when the computation ran and every asserted check held,
//! 1 when a check failed or a cap was hit, 2 for malformed input.

pub mod cache;
pub mod input;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::acceptance;
use crate::algebra::{AlgebraMap, AlgebraSpec, BimoduleSpec, GradedAlgebra, GradedBimodule, MorphismSpec};
use crate::bg::{self, ActionSpec, FiniteGroupAction};
use crate::error::Error;
use crate::exact::vector::Acc;
use crate::exact::poly::Poly;
use crate::exact::{ChainComplex, Rational};
use crate::groups::{self, named, FiniteGroup, GModuleSpec, GroupSpec};
use crate::hochschild::{hochschild_homology, hochschild_homology_bar};
use crate::koszul::{is_koszul, koszul_complex, quadratic_dual_spaces, verify_kos_acyclic};
use crate::orbits::{self, WeightedDynkinDiagram};
use crate::rootdata::{self, CartanType, CharacterSpec, ParabolicType, RootDatum, RootDatumSpec, Scalar};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    Input(String),
    /// The computation failed a check or hit a cap; exit code 1.
    Compute(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Invalid(m) => CliError::Input(m),
            e => CliError::Compute(e),
        }
    }
}

fn in_field(field: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| match e {
        Error::Invalid(m) => CliError::Input(format!("{field}: {m}")),
        e => CliError::Compute(e),
    }
}

#[derive(Parser, Debug)]
#[command(name = "eqtrace", version, about = "Exact computations for Koszul algebras, twisted Hochschild homology, equivariant traces, Schur multipliers and root data")]
pub struct Cli {
    /// Recompute even when a cached result exists.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Cache directory (overrides EQTRACE_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// JSON output; always on, accepted for scripts that pass it.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Koszul complexes, quadratic duals and Koszulity certificates.
    Koszul {
        #[command(subcommand)]
        cmd: KoszulCmd,
    },
    /// Twisted Hochschild homology.
    Hh {
        #[command(subcommand)]
        cmd: HhCmd,
    },
    /// Equivariant trace complexes.
    Bg {
        #[command(subcommand)]
        cmd: BgCmd,
    },
    /// Root data, Weyl groups and flag varieties.
    Rootdata {
        #[command(subcommand)]
        cmd: RootdataCmd,
    },
    /// Gradings by weighted Dynkin diagrams.
    Orbit {
        #[command(subcommand)]
        cmd: OrbitCmd,
    },
    /// Cohomology and Schur multipliers of finite groups.
    Gcoh {
        #[command(subcommand)]
        cmd: GcohCmd,
    },
    /// Run the acceptance criteria.
    Accept {
        /// `all` or a comma separated list such as `3,7`.
        #[arg(long, default_value = "all")]
        select: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum KoszulCmd {
    /// Purity of Ext between simples, and acyclicity of the Koszul complex.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// The Koszul complex up to a cap.
    Resolve {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Dimensions of the quadratic dual spaces.
    Dual {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    /// Quiver with relations.
    #[arg(long)]
    pub algebra: PathBuf,
    /// Bimodule M; the regular bimodule when omitted.
    #[arg(long)]
    pub bimodule: Option<PathBuf>,
    /// Algebra endomorphism F; the identity when omitted.
    #[arg(long)]
    pub twist: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HhMethod {
    Resolution,
    Bar,
}

#[derive(Subcommand, Debug)]
pub enum HhCmd {
    /// `HH(A, M^F)` by weight in degrees `[-depth, 0]`.
    Compute {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = HhMethod::Resolution)]
        method: HhMethod,
    },
}

#[derive(Subcommand, Debug)]
pub enum BgCmd {
    /// Fibers and global sections of the pre-BG complex.
    Trace {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        action: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Use the Koszul model on `[-N, 0]` instead of the truncated bar complex;
        /// needs finite global dimension.
        #[arg(long)]
        bounded: bool,
    },
    /// `dim H^0` of global sections for `k^X` against the inertia orbit count.
    Inertia {
        #[arg(long)]
        group: PathBuf,
        /// Number of points; the degree of the group by default.
        #[arg(long)]
        points: Option<usize>,
    },
    /// The homotopy `d s + s d = R_{σ(r)} - L_r` for a central element `r`.
    Homotopy {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        action: PathBuf,
        /// Basis combination such as `x` or `2*x, -1*e1`.
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct DatumArgs {
    /// Root datum JSON `{type, X}`.
    #[arg(long)]
    pub datum: Option<PathBuf>,
    /// Cartan type such as `A2` or `A1xB2xT1`.
    #[arg(long = "type")]
    pub cartan_type: Option<String>,
    /// `root`, `weight`, or a JSON file with the rows of X (with --type).
    #[arg(long = "X", alias = "x", default_value = "root")]
    pub x: String,
}

#[derive(Args, Debug, Clone)]
pub struct FlagArgs {
    #[arg(long = "type")]
    pub cartan_type: String,
    /// Levi of P as 1-based simple roots (`1,3`), `borel` or `whole`.
    #[arg(long = "P", default_value = "borel")]
    pub p: String,
    /// Levi of Q, same format.
    #[arg(long = "Q", default_value = "whole")]
    pub q: String,
}

#[derive(Subcommand, Debug)]
pub enum RootdataCmd {
    /// `M(G) = Λ / X_der`.
    Schur {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// `π_1` of the derived group.
    Pi1 {
        #[command(flatten)]
        datum: DatumArgs,
    },
    /// `P_W(t)` and `P_{Q/P}(q)`.
    Poincare {
        #[command(flatten)]
        flag: FlagArgs,
    },
    /// Whether `P_{Q/P}` is nonzero at a scalar.
    Split {
        #[command(flatten)]
        flag: FlagArgs,
        /// `generic`, a rational such as `3/2`, or `cyclotomic:n:k` for `ζ_n^k`.
        #[arg(long = "q", alias = "at")]
        at: String,
    },
    /// Divisibility of `P_{G/B}` by `P_{Q/P}`, over all pairs unless --P/--Q are given.
    Brionpeyre {
        #[arg(long = "type")]
        cartan_type: String,
        #[arg(long = "P")]
        p: Option<String>,
        #[arg(long = "Q")]
        q: Option<String>,
    },
    /// Minuscule representative of a weight class in `Λ / ⟨Φ⟩`.
    Minuscule {
        #[command(flatten)]
        datum: DatumArgs,
        /// Weight in fundamental weight coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct DiagramArgs {
    #[arg(long = "type")]
    pub cartan_type: Option<String>,
    /// Weights on the simple roots, Bourbaki order, such as `0,2,0`.
    #[arg(long)]
    pub weights: Option<String>,
    /// `e6` or `e8`.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum OrbitCmd {
    /// `w -> dim g_w`.
    Grading {
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Centralizer, orbit and Slodowy slice dimensions.
    Dims {
        #[command(flatten)]
        diagram: DiagramArgs,
    },
    /// Dimension of the slice to the partial resolution for P.
    Slicedim {
        #[command(flatten)]
        diagram: DiagramArgs,
        /// Levi of P as 1-based simple roots, or `borel`.
        #[arg(long = "P", alias = "p", default_value = "borel")]
        parabolic: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GcohCmd {
    /// `H^n(G, M)`.
    Compute {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// `M(G) = H^3(G, Z)`.
    Schur {
        #[arg(long)]
        group: PathBuf,
    },
    /// The S4 and SL3 claims of the covering argument.
    Section4,
    /// `|M(A × B)| = |M(A)| |M(B)| |Hom(A^ab, B^ab)|`.
    Product {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Order relations for `N ⋊ Γ` with `N = ⊕ Z/orders`.
    Semidirect {
        #[arg(long)]
        orders: String,
        #[arg(long)]
        gamma: PathBuf,
        /// JSON list of integer matrices, one per generator of Γ.
        #[arg(long)]
        action: PathBuf,
    },
    /// Kernel of `M(G/Z) -> M(G)` against `[G, G] ∩ Z`.
    Central {
        #[arg(long)]
        group: PathBuf,
        /// Generators of the central subgroup, as a group on the same points.
        #[arg(long)]
        subgroup: PathBuf,
    },
}

/// What a subcommand computes: a cache key and the work itself.
struct Job {
    command: &'static str,
    params: Value,
    inputs: Vec<Value>,
    cacheable: bool,
    work: Box<dyn FnOnce() -> Result<(Value, bool), CliError>>,
}

impl Job {
    fn new(command: &'static str, params: Value, inputs: Vec<Value>, work: impl FnOnce() -> Result<(Value, bool), CliError> + 'static) -> Job {
        Job { command, params, inputs, cacheable: true, work: Box::new(work) }
    }
}

pub struct Outcome {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: Cli) -> Outcome {
    let fail = |e: CliError| Outcome { exit_code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") };
    let job = match prepare(cli.command) {
        Ok(j) => j,
        Err(e) => return fail(e),
    };
    let dir = if cli.no_cache || !job.cacheable { None } else { cli.cache_dir.clone().or_else(cache::default_dir) };
    let key = cache::key(job.command, &job.params, &job.inputs);
    let (result, ok, cached) = match dir.as_deref().and_then(|d| cache::lookup(d, &key)) {
        Some(entry) => (entry.result, entry.ok, true),
        None => match (job.work)() {
            Ok((result, ok)) => {
                if let Some(d) = dir.as_deref() {
                    cache::store(d, &cache::CacheEntry { version: cache::VERSION.to_string(), key, ok, result: result.clone() });
                }
                (result, ok, false)
            }
            Err(e) => return fail(e),
        },
    };
    let report = json!({ "command": job.command, "cached": cached, "ok": ok, "result": result });
    let text = serde_json::to_string_pretty(&report).expect("JSON values serialize") + "\n";
    let exit_code = if ok { 0 } else { 1 };
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { exit_code, stdout: String::new(), stderr: String::new() },
            Err(e) => fail(CliError::Input(format!("--output: cannot write {}: {e}", path.display()))),
        },
        None => Outcome { exit_code, stdout: text, stderr: String::new() },
    }
}

/// Entry point of the binary.
pub fn main() -> std::process::ExitCode {
    let out = run(Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::process::ExitCode::from(out.exit_code)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn algebra(path: &Path) -> Result<(GradedAlgebra, Value), CliError> {
    let (spec, raw) = input::load::<AlgebraSpec>(path, "algebra")?;
    Ok((spec.build().map_err(in_field("algebra"))?, raw))
}

struct Loaded {
    alg: GradedAlgebra,
    m: GradedBimodule,
    twist: AlgebraMap,
    raw: Vec<Value>,
}

fn algebra_with(args: &AlgebraArgs) -> Result<Loaded, CliError> {
    let (alg, a_raw) = algebra(&args.algebra)?;
    let (m, m_raw) = match &args.bimodule {
        Some(p) => {
            let (spec, raw) = input::load::<BimoduleSpec>(p, "bimodule")?;
            (spec.build(&alg).map_err(in_field("bimodule"))?, raw)
        }
        None => (GradedBimodule::regular(&alg), Value::Null),
    };
    let (twist, t_raw) = match &args.twist {
        Some(p) => {
            let (spec, raw) = input::load::<MorphismSpec>(p, "twist")?;
            (spec.build(&alg).map_err(in_field("twist"))?, raw)
        }
        None => (AlgebraMap::identity(&alg), Value::Null),
    };
    Ok(Loaded { alg, m, twist, raw: vec![a_raw, m_raw, t_raw] })
}

fn group(path: &Path, what: &str) -> Result<(FiniteGroup, Value), CliError> {
    let (spec, raw) = input::load::<GroupSpec>(path, what)?;
    Ok((spec.build().map_err(in_field(what))?, raw))
}

fn action(l: &Loaded, group_path: &Path, action_path: &Path) -> Result<(FiniteGroupAction, Vec<Value>), CliError> {
    let (g, g_raw) = group(group_path, "group")?;
    let (spec, a_raw) = input::load::<ActionSpec>(action_path, "action")?;
    let act = spec.build(&l.alg, &l.m, g, l.twist.clone()).map_err(in_field("action"))?;
    Ok((act, vec![g_raw, a_raw]))
}

fn betti(c: &ChainComplex) -> Result<BTreeMap<i64, usize>, CliError> {
    Ok(c.betti_numbers()?)
}

fn term_dims(c: &ChainComplex) -> BTreeMap<i64, usize> {
    (c.lo()..=c.hi()).map(|d| (d, c.term_dim(d))).collect()
}

fn cartan(s: &str) -> Result<CartanType, CliError> {
    s.parse().map_err(in_field("--type"))
}

fn parabolic(s: &str, t: &CartanType, flag: &str) -> Result<ParabolicType, CliError> {
    let p = match s.trim() {
        "borel" | "B" | "" => ParabolicType::borel(),
        "whole" | "G" => ParabolicType::whole(t),
        other => ParabolicType::parse_one_based(other).map_err(in_field(flag))?,
    };
    p.check(t).map_err(in_field(flag))?;
    Ok(p)
}

fn datum(args: &DatumArgs) -> Result<(RootDatum, Value), CliError> {
    let (spec, raw) = match (&args.datum, &args.cartan_type) {
        (Some(p), _) => input::load::<RootDatumSpec>(p, "datum")?,
        (None, Some(t)) => {
            let characters = match args.x.as_str() {
                "root" | "weight" => CharacterSpec::Named(args.x.clone()),
                path => CharacterSpec::Rows(input::load::<Vec<Vec<i64>>>(Path::new(path), "--X")?.0),
            };
            let spec = RootDatumSpec { cartan_type: t.clone(), characters };
            let raw = to_value(&spec);
            (spec, raw)
        }
        (None, None) => return Err(CliError::Input("give --datum or --type".into())),
    };
    Ok((spec.build().map_err(in_field("datum"))?, raw))
}

fn diagram(args: &DiagramArgs) -> Result<(CartanType, WeightedDynkinDiagram), CliError> {
    match (&args.builtin, &args.cartan_type, &args.weights) {
        (Some(b), None, None) => Ok(WeightedDynkinDiagram::builtin(b).map_err(in_field("--builtin"))?),
        (None, Some(t), Some(w)) => Ok((cartan(t)?, w.parse().map_err(in_field("--weights"))?)),
        _ => Err(CliError::Input("give either --builtin, or --type with --weights".into())),
    }
}

fn poly_coeffs(p: &Poly) -> Vec<Rational> {
    p.coeffs().to_vec()
}

fn prepare(command: Command) -> Result<Job, CliError> {
    match command {
        Command::Koszul { cmd } => koszul(cmd),
        Command::Hh { cmd: HhCmd::Compute { alg, depth, method } } => {
            let l = algebra_with(&alg)?;
            Ok(Job::new("hh compute", json!({ "depth": depth, "method": method }), l.raw.clone(), move || {
                let r = match method {
                    HhMethod::Resolution => hochschild_homology(&l.alg, &l.m, &l.twist, depth)?,
                    HhMethod::Bar => hochschild_homology_bar(&l.alg, &l.m, &l.twist, depth)?,
                };
                let dims: BTreeMap<i64, usize> = r.degrees.keys().map(|&d| (d, r.dim(d))).collect();
                Ok((json!({ "report": r, "dims": dims }), true))
            }))
        }
        Command::Bg { cmd } => bg_cmd(cmd),
        Command::Rootdata { cmd } => rootdata_cmd(cmd),
        Command::Orbit { cmd } => orbit_cmd(cmd),
        Command::Gcoh { cmd } => gcoh_cmd(cmd),
        Command::Accept { select } => {
            let ids = acceptance::parse_selector(&select)?;
            let mut job = Job::new("accept", json!({ "select": ids }), Vec::new(), move || {
                let results = acceptance::run(&ids)?;
                let ok = results.iter().all(|r| r.passed);
                Ok((to_value(&results), ok))
            });
            job.cacheable = false;
            Ok(job)
        }
    }
}

fn koszul(cmd: KoszulCmd) -> Result<Job, CliError> {
    match cmd {
        KoszulCmd::Check { algebra: path, depth } => {
            let (alg, raw) = algebra(&path)?;
            Ok(Job::new("koszul check", json!({ "depth": depth }), vec![raw], move || {
                let cert = is_koszul(&alg, depth)?;
                let acyclic = verify_kos_acyclic(&alg, depth)?;
                Ok((json!({ "koszul": cert.koszul, "verified_to": cert.verified_to, "violation": cert.violation, "kos_acyclicity": acyclic }), true))
            }))
        }
        KoszulCmd::Resolve { algebra: path, cap } => {
            let (alg, raw) = algebra(&path)?;
            Ok(Job::new("koszul resolve", json!({ "cap": cap }), vec![raw], move || {
                let k = koszul_complex(&alg, cap)?;
                let augmented = betti(&k.augmented)?;
                Ok((
                    json!({
                        "length": k.length,
                        "complete": k.complete,
                        "warning": k.warning,
                        "term_dims": term_dims(&k.complex),
                        "cohomology": betti(&k.complex)?,
                        "augmented_cohomology": augmented,
                    }),
                    true,
                ))
            }))
        }
        KoszulCmd::Dual { algebra: path, max_n } => {
            let (alg, raw) = algebra(&path)?;
            Ok(Job::new("koszul dual", json!({ "max_n": max_n }), vec![raw], move || {
                let d = quadratic_dual_spaces(&alg, max_n)?;
                let labels = alg.labels();
                let mut blocks = Vec::new();
                for n in 0..=max_n {
                    for i in 0..labels.len() {
                        for j in 0..labels.len() {
                            if d.dim(n, i, j) > 0 {
                                blocks.push(json!({ "n": n, "i": labels[i], "j": labels[j], "dim": d.dim(n, i, j) }));
                            }
                        }
                    }
                }
                let totals: Vec<usize> = (0..=max_n).map(|n| d.total_dim(n)).collect();
                Ok((json!({ "totals": totals, "blocks": blocks }), true))
            }))
        }
    }
}

fn bg_cmd(cmd: BgCmd) -> Result<Job, CliError> {
    match cmd {
        BgCmd::Trace { alg, group: gp, action: ap, depth, bounded: true } => {
            let l = algebra_with(&alg)?;
            let (act, mut raw) = action(&l, &gp, &ap)?;
            raw.extend(l.raw.iter().cloned());
            Ok(Job::new("bg trace", json!({ "depth": depth, "bounded": true }), raw, move || {
                let model = bg::bounded_trace_model(&l.alg, &l.m, &act, depth)?;
                let amp = bg::amplitude_report(&model)?;
                let ok = amp.within_bound && amp.connective;
                Ok((
                    json!({
                        "group_order": act.group.order(),
                        "length": model.length,
                        "term_dims": term_dims(&model.complex),
                        "global": betti(&model.complex)?,
                        "amplitude": amp.amplitude,
                        "bound": amp.bound,
                        "within_bound": amp.within_bound,
                        "connective": amp.connective,
                        "note": amp.note,
                    }),
                    ok,
                ))
            }))
        }
        BgCmd::Trace { alg, group: gp, action: ap, depth, bounded: false } => {
            let l = algebra_with(&alg)?;
            let (act, mut raw) = action(&l, &gp, &ap)?;
            raw.extend(l.raw.iter().cloned());
            Ok(Job::new("bg trace", json!({ "depth": depth }), raw, move || {
                let c = bg::pre_bg_complex(&l.alg, &l.m, &act, depth)?;
                let mut fibers = Vec::new();
                for g in 0..act.group.order() {
                    let f = bg::fiber_at(&c, g)?;
                    fibers.push(json!({ "element": g, "permutation": act.group.permutation(g), "cohomology": betti(&f)? }));
                }
                let global = bg::global_sections(&c)?;
                let reliable = |b: BTreeMap<i64, usize>| -> BTreeMap<i64, usize> { b.into_iter().filter(|&(d, _)| d > -(depth as i64)).collect() };
                let amplitude = {
                    let g = reliable(betti(&global)?);
                    let nz: Vec<i64> = g.iter().filter(|&(_, &v)| v > 0).map(|(&d, _)| d).collect();
                    nz.first().map(|&lo| (lo, *nz.last().unwrap()))
                };
                Ok((
                    json!({
                        "group_order": act.group.order(),
                        "reliable_from": -(depth as i64) + 1,
                        "term_dims": term_dims(&c.complex),
                        "fibers": fibers,
                        "global": betti(&global)?,
                        "amplitude": amplitude,
                    }),
                    true,
                ))
            }))
        }
        BgCmd::Inertia { group: gp, points } => {
            let (g, raw) = group(&gp, "group")?;
            let n = points.or(g.degree()).unwrap_or(1);
            Ok(Job::new("bg inertia", json!({ "points": n }), vec![raw], move || {
                let r = bg::verify_inertia(&g, n)?;
                Ok((to_value(&r), r.holds))
            }))
        }
        BgCmd::Homotopy { alg, group: gp, action: ap, element, depth } => {
            let l = algebra_with(&alg)?;
            let (act, mut raw) = action(&l, &gp, &ap)?;
            raw.extend(l.raw.iter().cloned());
            let mut acc = Acc::new();
            for (c, name) in input::combination(&element, "--element")? {
                let k = l.alg.basis_index(&name).ok_or_else(|| CliError::Input(format!("--element: unknown basis element {name}")))?;
                acc.add(k, &c);
            }
            let r = acc.finish();
            Ok(Job::new("bg homotopy", json!({ "depth": depth, "element": element }), raw, move || {
                let c = bg::pre_bg_complex(&l.alg, &l.m, &act, depth)?;
                let rep = bg::verify_homotopy(&c, &r)?;
                Ok((to_value(&rep), rep.holds))
            }))
        }
    }
}

fn scalar_value(at: &Scalar, value: &[Rational]) -> Value {
    match at {
        Scalar::Cyclotomic { conductor, .. } => json!({ "conductor": conductor, "coefficients": value }),
        Scalar::Rational { .. } => json!({ "conductor": 1, "coefficients": value }),
        Scalar::Generic => json!({ "polynomial": value }),
    }
}

fn rootdata_cmd(cmd: RootdataCmd) -> Result<Job, CliError> {
    match cmd {
        RootdataCmd::Schur { datum: d } => {
            let (d, raw) = datum(&d)?;
            Ok(Job::new("rootdata schur", Value::Null, vec![raw], move || {
                let m = rootdata::schur_multiplier_connected(&d)?;
                Ok((json!({ "multiplier": m, "display": m.to_string(), "order": m.order() }), true))
            }))
        }
        RootdataCmd::Pi1 { datum: d } => {
            let (d, raw) = datum(&d)?;
            Ok(Job::new("rootdata pi1", Value::Null, vec![raw], move || {
                let p = rootdata::fundamental_group(&d)?;
                Ok((json!({ "pi1": p, "display": p.to_string(), "order": p.order() }), true))
            }))
        }
        RootdataCmd::Poincare { flag } => {
            let t = cartan(&flag.cartan_type)?;
            let (p, q) = (parabolic(&flag.p, &t, "--P")?, parabolic(&flag.q, &t, "--Q")?);
            let params = json!({ "type": t.to_string(), "p": p.levi, "q": q.levi });
            Ok(Job::new("rootdata poincare", params, Vec::new(), move || {
                let w = rootdata::poincare_w(&t)?;
                let f = rootdata::poincare_flag(&t, &p, &q)?;
                let h = rootdata::weight_shear_cohomology(&t, &p, &q)?;
                Ok((json!({ "weyl": poly_coeffs(&w), "weyl_order": t.weyl_order().to_string(), "flag": poly_coeffs(&f), "cohomology_dims": h }), true))
            }))
        }
        RootdataCmd::Split { flag, at } => {
            let t = cartan(&flag.cartan_type)?;
            let (p, q) = (parabolic(&flag.p, &t, "--P")?, parabolic(&flag.q, &t, "--Q")?);
            let scalar: Scalar = at.parse().map_err(in_field("--at"))?;
            let params = json!({ "type": t.to_string(), "p": p.levi, "q": q.levi, "at": at });
            Ok(Job::new("rootdata split", params, Vec::new(), move || {
                let r = rootdata::splitting_criterion(&t, &p, &q, &scalar)?;
                Ok((json!({ "polynomial": r.polynomial, "value": scalar_value(&scalar, &r.value), "splits": r.splits }), true))
            }))
        }
        RootdataCmd::Brionpeyre { cartan_type, p, q } => {
            let t = cartan(&cartan_type)?;
            let pair = match (p, q) {
                (None, None) => None,
                (p, q) => Some((
                    parabolic(p.as_deref().unwrap_or("borel"), &t, "--P")?,
                    parabolic(q.as_deref().unwrap_or("whole"), &t, "--Q")?,
                )),
            };
            let params = json!({ "type": t.to_string(), "pair": pair.as_ref().map(|(p, q)| (p.levi.clone(), q.levi.clone())) });
            Ok(Job::new("rootdata brionpeyre", params, Vec::new(), move || match pair {
                Some((p, q)) => {
                    let ok = rootdata::brion_peyre_check(&t, &p, &q)?;
                    Ok((json!({ "pairs": 1, "divides": ok }), ok))
                }
                None => {
                    let (n, ok) = rootdata::brion_peyre_all_pairs(&t)?;
                    Ok((json!({ "pairs": n, "divides": ok }), ok))
                }
            }))
        }
        RootdataCmd::Minuscule { datum: d, weight } => {
            let (d, raw) = datum(&d)?;
            let lambda = input::int_list(&weight, "--weight")?;
            Ok(Job::new("rootdata minuscule", json!({ "weight": lambda }), vec![raw], move || {
                let lift = rootdata::minuscule_lift(&d, &lambda)?;
                let reps: Vec<Value> = d
                    .cartan_type
                    .factors
                    .iter()
                    .map(|f| json!({ "factor": f.to_string(), "minuscule": rootdata::minuscule_weights(*f) }))
                    .collect();
                Ok((json!({ "lift": lift, "representatives": reps }), true))
            }))
        }
    }
}

fn orbit_cmd(cmd: OrbitCmd) -> Result<Job, CliError> {
    let key = |t: &CartanType, d: &WeightedDynkinDiagram| json!({ "type": t.to_string(), "weights": d.weights });
    match cmd {
        OrbitCmd::Grading { diagram: args } => {
            let (t, d) = diagram(&args)?;
            Ok(Job::new("orbit grading", key(&t, &d), Vec::new(), move || {
                let p = orbits::grading_profile(&t, &d)?;
                Ok((json!({ "dims": p.dims, "total": p.total() }), true))
            }))
        }
        OrbitCmd::Dims { diagram: args } => {
            let (t, d) = diagram(&args)?;
            Ok(Job::new("orbit dims", key(&t, &d), Vec::new(), move || Ok((to_value(&orbits::orbit_dims(&t, &d)?), true))))
        }
        OrbitCmd::Slicedim { diagram: args, parabolic: p } => {
            let (t, d) = diagram(&args)?;
            let p = parabolic(&p, &t, "--P")?;
            let mut params = key(&t, &d);
            params["levi"] = json!(p.levi);
            Ok(Job::new("orbit slicedim", params, Vec::new(), move || {
                let r = orbits::partial_resolution_slice_dim(&t, &p, &d)?;
                let note = (!r.meets_image).then_some("orbit not in N_P");
                Ok((json!({ "value": r.value, "meets_image": r.meets_image, "note": note }), true))
            }))
        }
    }
}

fn gcoh_cmd(cmd: GcohCmd) -> Result<Job, CliError> {
    match cmd {
        GcohCmd::Compute { group: gp, module, degree } => {
            let (g, g_raw) = group(&gp, "group")?;
            let (spec, m_raw) = input::load::<GModuleSpec>(&module, "module")?;
            let m = spec.build(&g).map_err(in_field("module"))?;
            Ok(Job::new("gcoh compute", json!({ "degree": degree }), vec![g_raw, m_raw], move || {
                let h = groups::cohomology(&g, &m, degree)?;
                Ok((json!({ "cohomology": h.structure, "display": h.structure.to_string(), "generator_orders": h.generator_orders() }), true))
            }))
        }
        GcohCmd::Schur { group: gp } => {
            let (g, raw) = group(&gp, "group")?;
            Ok(Job::new("gcoh schur", Value::Null, vec![raw], move || {
                let m = groups::schur_multiplier(&g)?;
                Ok((json!({ "group_order": g.order(), "multiplier": m, "display": m.to_string() }), true))
            }))
        }
        GcohCmd::Section4 => Ok(Job::new("gcoh section4", Value::Null, Vec::new(), || {
            let r = groups::section4_report()?;
            Ok((to_value(&r), r.all_pass()))
        })),
        GcohCmd::Product { a, b } => {
            let (ga, ra) = group(&a, "a")?;
            let (gb, rb) = group(&b, "b")?;
            Ok(Job::new("gcoh product", Value::Null, vec![ra, rb], move || {
                let r = groups::product_formula_check(&ga, &gb)?;
                Ok((to_value(&r), r.holds))
            }))
        }
        GcohCmd::Semidirect { orders, gamma, action } => {
            let orders: Vec<u64> = input::int_list(&orders, "--orders")?
                .into_iter()
                .map(|o| u64::try_from(o).ok().filter(|&o| o > 0).ok_or_else(|| CliError::Input("--orders: orders must be positive".into())))
                .collect::<Result<_, _>>()?;
            let (gm, g_raw) = group(&gamma, "gamma")?;
            let (mats, a_raw) = input::load::<Vec<groups::module::IntMatrix>>(&action, "action")?;
            Ok(Job::new("gcoh semidirect", json!({ "orders": orders }), vec![g_raw, a_raw], move || {
                let r = groups::semidirect_sequence_check(&orders, &gm, &mats)?;
                Ok((to_value(&r), r.holds))
            }))
        }
        GcohCmd::Central { group: gp, subgroup } => {
            let (g, g_raw) = group(&gp, "group")?;
            let (z, z_raw) = group(&subgroup, "subgroup")?;
            let elements = named::embed(&g, &z).map_err(|e| CliError::Input(format!("subgroup: {e}")))?;
            Ok(Job::new("gcoh central", Value::Null, vec![g_raw, z_raw], move || {
                let r = groups::central_sequence_check(&g, &elements)?;
                Ok((to_value(&r), r.holds))
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut full = vec!["eqtrace", "--no-cache"];
        full.extend_from_slice(args);
        run(Cli::try_parse_from(full).unwrap())
    }

    fn result(out: &Outcome) -> Value {
        serde_json::from_str::<Value>(&out.stdout).unwrap()["result"].clone()
    }

    #[test]
    fn orbit_grading_builtin() {
        let out = run_args(&["orbit", "grading", "--builtin", "e8"]);
        assert_eq!(out.exit_code, 0, "{}", out.stderr);
        assert_eq!(result(&out)["total"], 248);
    }

    #[test]
    fn rootdata_commands() {
        let out = run_args(&["rootdata", "schur", "--type", "A2", "--X", "root"]);
        assert_eq!(result(&out)["display"], "Z/3");
        let out = run_args(&["rootdata", "split", "--type", "A1", "--q", "cyclotomic:4:1"]);
        assert_eq!(result(&out)["splits"], false);
        assert_eq!(result(&out)["value"]["conductor"], 4);
        let out = run_args(&["rootdata", "minuscule", "--type", "A2", "--X", "weight", "--weight", "0,2"]);
        assert_eq!(result(&out)["lift"], json!([1, 0]));
        let out = run_args(&["rootdata", "poincare", "--type", "A1"]);
        assert_eq!(result(&out)["flag"], json!([1, 0, 1]));
    }

    #[test]
    fn input_errors_exit_two() {
        let out = run_args(&["rootdata", "schur", "--type", "Q7"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.stderr.contains("Q7"), "{}", out.stderr);
        let out = run_args(&["orbit", "dims", "--type", "A2", "--weights", "2"]);
        assert_eq!(out.exit_code, 2);
        let out = run_args(&["accept", "--select", "99"]);
        assert_eq!(out.exit_code, 2);
    }

    #[test]
    fn failed_checks_exit_one() {
        // odd orbit dimension
        let out = run_args(&["orbit", "dims", "--type", "A1", "--weights", "1"]);
        assert_eq!(out.exit_code, 1, "{}", out.stderr);
    }
}
