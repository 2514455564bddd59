//! Batch front-end: a JSON config names a catalog problem and discretization,
//! a subcommand picks the pipeline (solve, drift, coeffs, orth, sweep-c), and
//! results land as CSV tables plus a meta.json in the output directory.
//!
//! Everything here is deterministic: rerunning a config produces
//! byte-identical CSV bodies. Wall-clock time is confined to meta.json.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::rc::Rc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::diagnostics::{
    absolute_drift, cheb_coeffs, drift_vs_exact, orthogonality_deficiency, relative_drift,
    sinc_coeffs, CoeffSpectrum, DriftReport,
};
use crate::eig::{eig_general, eig_symmetric, EigConfig, EigenSolution};
use crate::error::{Error, Result};
use crate::maps::AlgebraicMap;
use crate::matrix::Mat;
use crate::operator::{
    assemble_mapped_halfline, assemble_regular_dirichlet, assemble_sinc_line, DiscreteOperator,
    Method,
};
use crate::problems::{benchmark_cases, find_case, potential_with_params, PotentialSpec};

/// Name of the environment variable overriding the output directory.
pub const OUT_ENV: &str = "SPECSCHROD_OUT";

#[derive(Parser, Debug)]
#[command(
    name = "specschrod",
    version,
    about = "Spectral collocation eigensolver for regular and singular Schrodinger problems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve one discretization and write the eigenvalue table.
    Solve(RunArgs),
    /// Compare eigenvalues across a swept discretization parameter.
    Drift(RunArgs),
    /// Expansion coefficients of selected eigenvectors.
    Coeffs(RunArgs),
    /// Orthogonality deficiency of one eigenvector against the others.
    Orth(RunArgs),
    /// Drift across a list of half-line map parameters c.
    #[command(name = "sweep-c")]
    SweepC(RunArgs),
    /// List the benchmark catalog.
    #[command(name = "list-problems")]
    ListProblems,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (overrides SPECSCHROD_OUT and the config).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Grid size, or comma-separated list for drift.
    #[arg(long)]
    pub n: Option<String>,
    /// Map parameter, or comma-separated list for sweep-c.
    #[arg(long)]
    pub c: Option<String>,
    /// Sinc step size.
    #[arg(long)]
    pub h: Option<f64>,
    /// How many eigenvalues to report.
    #[arg(long)]
    pub ne: Option<usize>,
}

/// Entry point behind `main`: returns the human summary for stdout.
pub fn execute(cli: Cli) -> Result<String> {
    match cli.command {
        Command::ListProblems => Ok(list_problems_text()),
        Command::Solve(args) => run_command(&args, Artifact::Eigenvalues, None),
        Command::Drift(args) => run_command(&args, Artifact::Drift, None),
        Command::SweepC(args) => run_command(&args, Artifact::Drift, Some(Param::C)),
        Command::Coeffs(args) => run_command(&args, Artifact::Coeffs, None),
        Command::Orth(args) => run_command(&args, Artifact::Orthogonality, None),
    }
}

fn run_command(args: &RunArgs, implied: Artifact, forced: Option<Param>) -> Result<String> {
    let user = load_user_config(&args.config)?;
    let overrides = Overrides::from_args(args)?;
    let cfg = RunConfig::resolve(user, overrides, implied, forced)?;
    let bundle = run(&cfg)?;
    let names: Vec<String> = bundle
        .files
        .iter()
        .map(|p| {
            p.file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default()
        })
        .collect();
    Ok(format!(
        "{}: wrote {} in {}\n",
        cfg.problem,
        names.join(", "),
        cfg.output_dir.display()
    ))
}

// ---------------------------------------------------------------------------
// Configuration

/// Scalar-or-list JSON field.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(xs) => xs,
        }
    }
}

/// The JSON file as the user wrote it.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct UserConfig {
    problem: String,
    #[serde(default)]
    params: BTreeMap<String, f64>,
    method: Option<String>,
    n: Option<OneOrMany<usize>>,
    c: Option<OneOrMany<f64>>,
    h: Option<OneOrMany<f64>>,
    ne: Option<usize>,
    /// Eigenvector indices for the coeffs pipeline (positions among the
    /// real-flagged eigenpairs, ascending). Default: the first four.
    modes: Option<Vec<usize>>,
    /// Reference eigenvector for the orth pipeline. Default: 0.
    orth_index: Option<usize>,
    /// Extra artifacts beyond the subcommand's own.
    outputs: Option<Vec<String>>,
    output_dir: Option<PathBuf>,
}

fn load_user_config(path: &Path) -> Result<UserConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Usage(format!("config {}: {e}", path.display())))
}

/// Command-line overrides of config fields.
#[derive(Debug, Default)]
struct Overrides {
    out: Option<PathBuf>,
    n: Option<Vec<usize>>,
    c: Option<Vec<f64>>,
    h: Option<f64>,
    ne: Option<usize>,
}

impl Overrides {
    fn from_args(args: &RunArgs) -> Result<Self> {
        let n = args
            .n
            .as_deref()
            .map(|s| parse_list::<usize>(s, "--n"))
            .transpose()?;
        let c = args
            .c
            .as_deref()
            .map(|s| parse_list::<f64>(s, "--c"))
            .transpose()?;
        Ok(Overrides {
            out: args.out.clone(),
            n,
            c,
            h: args.h,
            ne: args.ne,
        })
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, flag: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::Usage(format!("flag {flag}: cannot parse '{t}'")))
        })
        .collect()
}

/// One output table family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Artifact {
    Eigenvalues,
    Drift,
    Coeffs,
    Orthogonality,
}

impl Artifact {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "eigenvalues" => Ok(Artifact::Eigenvalues),
            "drift" => Ok(Artifact::Drift),
            "coeffs" => Ok(Artifact::Coeffs),
            "orthogonality" => Ok(Artifact::Orthogonality),
            other => Err(Error::Usage(format!(
                "field 'outputs': unknown artifact '{other}' (expected eigenvalues, drift, coeffs, or orthogonality)"
            ))),
        }
    }
}

/// A sweepable discretization parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    N,
    C,
    H,
}

impl Param {
    fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::C => "c",
            Param::H => "h",
        }
    }
}

/// A fully resolved, validated run: catalog defaults applied, flags folded
/// in, list lengths checked.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem: String,
    pub potential: PotentialSpec,
    pub method: Method,
    pub n_values: Vec<usize>,
    /// Empty unless the method uses the half-line map.
    pub c_values: Vec<f64>,
    /// Empty unless the method is sinc.
    pub h_values: Vec<f64>,
    pub ne: usize,
    pub modes: Vec<usize>,
    pub orth_index: usize,
    pub artifacts: Vec<Artifact>,
    /// Which parameter list is being swept, when any has length > 1.
    pub swept: Option<Param>,
    pub output_dir: PathBuf,
    pub params: BTreeMap<String, f64>,
}

impl RunConfig {
    fn resolve(
        user: UserConfig,
        over: Overrides,
        implied: Artifact,
        forced: Option<Param>,
    ) -> Result<Self> {
        let usage = |e: Error| Error::Usage(e.to_string());
        let case = find_case(&user.problem).map_err(usage)?;
        let potential = potential_with_params(&user.problem, &user.params).map_err(usage)?;

        let method = match user.method.as_deref() {
            Some(s) => s
                .parse::<Method>()
                .map_err(|e| Error::Usage(format!("field 'method': {e}")))?,
            None => case.method,
        };
        let compatible = matches!(
            (method, &potential.domain_class),
            (Method::ChC, crate::problems::DomainClass::FiniteInterval(_, _))
                | (Method::MappedChC, crate::problems::DomainClass::HalfLine)
                | (Method::SiC, crate::problems::DomainClass::RealLine)
        );
        if !compatible {
            return Err(Error::Usage(format!(
                "field 'method': {method} cannot discretize {}",
                potential.domain_class
            )));
        }

        let n_values = over
            .n
            .or(user.n.map(OneOrMany::into_vec))
            .unwrap_or_else(|| vec![case.default_n]);
        let mut c_values = over
            .c
            .or(user.c.map(OneOrMany::into_vec))
            .or_else(|| case.default_c.map(|c| vec![c]))
            .unwrap_or_default();
        let mut h_values = over
            .h
            .map(|h| vec![h])
            .or(user.h.map(OneOrMany::into_vec))
            .or_else(|| case.default_h.map(|h| vec![h]))
            .unwrap_or_default();

        if n_values.is_empty() {
            return Err(Error::Usage("field 'n': empty list".into()));
        }
        match method {
            Method::MappedChC => {
                if c_values.is_empty() {
                    return Err(Error::Usage(
                        "field 'c': the mapped half-line method needs a map parameter".into(),
                    ));
                }
                h_values = Vec::new();
            }
            Method::SiC => {
                if h_values.is_empty() {
                    return Err(Error::Usage(
                        "field 'h': the sinc method needs a step size".into(),
                    ));
                }
                c_values = Vec::new();
            }
            Method::ChC => {
                c_values = Vec::new();
                h_values = Vec::new();
            }
        }

        let ne = over.ne.or(user.ne).unwrap_or(case.default_ne);
        if ne == 0 {
            return Err(Error::Usage("field 'ne': must be positive".into()));
        }
        let modes = user
            .modes
            .unwrap_or_else(|| (0..4.min(ne)).collect());
        let orth_index = user.orth_index.unwrap_or(0);

        let mut artifacts = vec![implied];
        for name in user.outputs.unwrap_or_default() {
            let a = Artifact::parse(&name)?;
            if !artifacts.contains(&a) {
                artifacts.push(a);
            }
        }
        // Canonical emission order regardless of config order.
        let order = [
            Artifact::Eigenvalues,
            Artifact::Drift,
            Artifact::Coeffs,
            Artifact::Orthogonality,
        ];
        let artifacts: Vec<Artifact> =
            order.into_iter().filter(|a| artifacts.contains(a)).collect();

        // At most one parameter may be a genuine list, and drift requires
        // exactly one.
        let mut long: Vec<Param> = Vec::new();
        if n_values.len() > 1 {
            long.push(Param::N);
        }
        if c_values.len() > 1 {
            long.push(Param::C);
        }
        if h_values.len() > 1 {
            long.push(Param::H);
        }
        if long.len() > 1 {
            return Err(Error::Usage(
                "at most one of the fields 'n', 'c', 'h' may list multiple values".into(),
            ));
        }
        let swept = long.first().copied();
        if artifacts.contains(&Artifact::Drift) {
            match (forced, swept) {
                (Some(Param::C), Some(Param::C)) => {}
                (Some(Param::C), _) => {
                    return Err(Error::Usage(
                        "field 'c': sweep-c needs at least two c values".into(),
                    ))
                }
                (Some(p), _) => {
                    return Err(Error::Usage(format!(
                        "field '{}': this sweep needs at least two values",
                        p.name()
                    )))
                }
                (None, Some(_)) => {}
                (None, None) => {
                    return Err(Error::Usage(
                        "drift needs one of the fields 'n', 'c', 'h' to list at least two values"
                            .into(),
                    ))
                }
            }
        } else if let Some(p) = swept {
            return Err(Error::Usage(format!(
                "field '{}': this command takes a single value",
                p.name()
            )));
        }

        let output_dir = over
            .out
            .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
            .or(user.output_dir)
            .unwrap_or_else(|| PathBuf::from("."));

        Ok(RunConfig {
            problem: user.problem,
            potential,
            method,
            n_values,
            c_values,
            h_values,
            ne,
            modes,
            orth_index,
            artifacts,
            swept,
            output_dir,
            params: user.params,
        })
    }

    fn base_point(&self) -> (usize, f64, f64) {
        (
            self.n_values[0],
            self.c_values.first().copied().unwrap_or(f64::NAN),
            self.h_values.first().copied().unwrap_or(f64::NAN),
        )
    }

    /// The sweep as (n, c, h, alpha) tuples, alpha being the swept value.
    fn sweep_points(&self) -> Vec<(usize, f64, f64, f64)> {
        let (n0, c0, h0) = self.base_point();
        match self.swept {
            Some(Param::N) => self
                .n_values
                .iter()
                .map(|&n| (n, c0, h0, n as f64))
                .collect(),
            Some(Param::C) => self
                .c_values
                .iter()
                .map(|&c| (n0, c, h0, c))
                .collect(),
            Some(Param::H) => self
                .h_values
                .iter()
                .map(|&h| (n0, c0, h, h))
                .collect(),
            None => vec![(n0, c0, h0, n0 as f64)],
        }
    }
}

// ---------------------------------------------------------------------------
// Pipelines

/// One eigenvalue table row.
#[derive(Debug, Clone)]
pub struct EigRow {
    pub index: usize,
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub real_flag: bool,
}

/// Everything a run produced, both as data and as written files.
#[derive(Debug, Default)]
pub struct ResultBundle {
    pub eigenvalue_rows: Vec<EigRow>,
    pub drift_reports: Vec<DriftReport>,
    pub exact_drift_reports: Vec<DriftReport>,
    pub coefficient_spectra: Vec<(usize, CoeffSpectrum)>,
    pub deficiencies: Vec<(usize, f64)>,
    pub meta: serde_json::Value,
    pub files: Vec<PathBuf>,
}

/// Run a pipeline with the eigenvalue table implied.
pub fn run_solve(cfg: &RunConfig) -> Result<ResultBundle> {
    run_with(cfg, Artifact::Eigenvalues)
}

/// Run a pipeline with drift implied (cfg must carry a swept list).
pub fn run_drift(cfg: &RunConfig) -> Result<ResultBundle> {
    run_with(cfg, Artifact::Drift)
}

/// Run a pipeline with eigenvector coefficients implied.
pub fn run_coeffs(cfg: &RunConfig) -> Result<ResultBundle> {
    run_with(cfg, Artifact::Coeffs)
}

/// Run a pipeline with orthogonality deficiency implied.
pub fn run_orth(cfg: &RunConfig) -> Result<ResultBundle> {
    run_with(cfg, Artifact::Orthogonality)
}

fn run_with(cfg: &RunConfig, implied: Artifact) -> Result<ResultBundle> {
    if cfg.artifacts.contains(&implied) {
        run(cfg)
    } else {
        let mut artifacts = cfg.artifacts.clone();
        artifacts.push(implied);
        let cfg = RunConfig {
            artifacts,
            ..cfg.clone()
        };
        run(&cfg)
    }
}

type Solved = Rc<(DiscreteOperator, EigenSolution)>;
type Cache = BTreeMap<(usize, u64, u64), Solved>;

fn solve_at(cfg: &RunConfig, cache: &mut Cache, n: usize, c: f64, h: f64) -> Result<Solved> {
    let key = (n, c.to_bits(), h.to_bits());
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.clone());
    }
    let op = match cfg.method {
        Method::ChC => assemble_regular_dirichlet(&cfg.potential, n)?,
        Method::MappedChC => {
            let map = AlgebraicMap::new(c)?;
            assemble_mapped_halfline(&cfg.potential, &map, n)?
        }
        Method::SiC => assemble_sinc_line(&cfg.potential, n, h)?,
    };
    let eig_cfg = EigConfig::default();
    let sol = if op.symmetric {
        eig_symmetric(&op, &eig_cfg)?
    } else {
        eig_general(&op, &eig_cfg)?
    };
    let solved: Solved = Rc::new((op, sol));
    cache.insert(key, solved.clone());
    Ok(solved)
}

/// Execute every artifact the config asks for and write the tables.
pub fn run(cfg: &RunConfig) -> Result<ResultBundle> {
    let t0 = Instant::now();
    fs::create_dir_all(&cfg.output_dir)?;
    let mut cache: Cache = Cache::new();
    let mut bundle = ResultBundle::default();
    let mut plateaus: Vec<(usize, f64)> = Vec::new();

    let (n0, c0, h0) = cfg.base_point();
    let base = solve_at(cfg, &mut cache, n0, c0, h0)?;

    for &artifact in &cfg.artifacts {
        match artifact {
            Artifact::Eigenvalues => emit_eigenvalues(cfg, &base, &mut bundle)?,
            Artifact::Drift => emit_drift(cfg, &mut cache, &mut bundle)?,
            Artifact::Coeffs => emit_coeffs(cfg, &base, &mut bundle, &mut plateaus)?,
            Artifact::Orthogonality => emit_orth(cfg, &base, &mut bundle)?,
        }
    }

    let (op, sol) = &*base;
    let mut meta = serde_json::json!({
        "version": env!("CARGO_PKG_VERSION"),
        "problem": cfg.problem,
        "method": cfg.method.to_string(),
        "params": cfg.params,
        "n": cfg.n_values,
        "c": cfg.c_values,
        "h": cfg.h_values,
        "ne": cfg.ne,
        "swept": cfg.swept.map(Param::name),
        "matrix_size": op.matrix.rows(),
        "real_count": sol.real_values().len(),
        "max_residual": sol.max_residual(),
        "wall_ms": t0.elapsed().as_millis() as u64,
        "files": bundle.files.iter().map(|p| file_name(p)).collect::<Vec<_>>(),
    });
    if !plateaus.is_empty() {
        let map: serde_json::Map<String, serde_json::Value> = plateaus
            .iter()
            .map(|&(mode, p)| (mode.to_string(), serde_json::json!(p)))
            .collect();
        meta["plateaus"] = serde_json::Value::Object(map);
    }
    if cfg.artifacts.contains(&Artifact::Orthogonality) {
        meta["orth_index"] = serde_json::json!(cfg.orth_index);
    }
    if cfg.artifacts.contains(&Artifact::Coeffs) {
        meta["modes"] = serde_json::json!(cfg.modes);
    }
    let meta_path = cfg.output_dir.join("meta.json");
    fs::write(&meta_path, format!("{:#}\n", meta))?;
    bundle.files.push(meta_path);
    bundle.meta = meta;
    Ok(bundle)
}

fn emit_eigenvalues(cfg: &RunConfig, base: &Solved, bundle: &mut ResultBundle) -> Result<()> {
    let (_, sol) = &**base;
    let mut rows = Vec::new();
    let mut reals = 0usize;
    for (j, &(re, im)) in sol.values.iter().enumerate() {
        if reals >= cfg.ne {
            break;
        }
        let flag = sol.real_flags[j];
        bundle.eigenvalue_rows.push(EigRow {
            index: j,
            re,
            im,
            residual: sol.residuals[j],
            real_flag: flag,
        });
        rows.push(format!(
            "{j},{},{},{},{flag}",
            f17(re),
            f17(im),
            f17(sol.residuals[j])
        ));
        if flag {
            reals += 1;
        }
    }
    let path = cfg.output_dir.join("eigenvalues.csv");
    write_csv(&path, "index,re,im,residual,real_flag", &rows)?;
    bundle.files.push(path);
    Ok(())
}

fn emit_drift(cfg: &RunConfig, cache: &mut Cache, bundle: &mut ResultBundle) -> Result<()> {
    let param = cfg
        .swept
        .expect("resolve() guarantees a swept parameter for drift");
    let points = cfg.sweep_points();
    let mut rows = Vec::new();
    let mut exact_rows = Vec::new();

    for pair in points.windows(2) {
        let (n1, c1, h1, a1) = pair[0];
        let (n2, c2, h2, a2) = pair[1];
        let s1 = solve_at(cfg, cache, n1, c1, h1)?;
        let s2 = solve_at(cfg, cache, n2, c2, h2)?;
        let lam1 = s1.1.real_values();
        let lam2 = s2.1.real_values();
        let ne_eff = cfg.ne.min(lam1.len()).min(lam2.len());

        let abs = absolute_drift(&lam1, &lam2, ne_eff)?.with_parameter(param.name(), a1, a2);
        for &(j, d) in &abs.drift {
            let rel = if lam1[j] != 0.0 {
                f17(d / lam1[j].abs())
            } else {
                String::new()
            };
            rows.push(format!("{},{},{},{j},{},{rel}", param.name(), f17(a1), f17(a2), f17(d)));
        }
        bundle.drift_reports.push(abs);
        // The relative report only exists when every reference entry is
        // nonzero; the CSV column above is simply left empty at zeros.
        if let Ok(rel) = relative_drift(&lam1, &lam2, ne_eff) {
            bundle
                .drift_reports
                .push(rel.with_parameter(param.name(), a1, a2));
        }
    }

    if let Some(exact) = &cfg.potential.exact_eigenvalues {
        for &(n, c, h, alpha) in &points {
            let s = solve_at(cfg, cache, n, c, h)?;
            let lam = s.1.real_values();
            let ne_eff = cfg.ne.min(lam.len());
            let rep = drift_vs_exact(&lam, &**exact, ne_eff)?
                .with_parameter(param.name(), alpha, alpha);
            for &(j, d) in &rep.drift {
                exact_rows.push(format!("{},{},{j},{}", param.name(), f17(alpha), f17(d)));
            }
            bundle.exact_drift_reports.push(rep);
        }
    }

    let path = cfg.output_dir.join("drift.csv");
    write_csv(
        &path,
        "param,alpha1,alpha2,index,delta_abs,delta_rel",
        &rows,
    )?;
    bundle.files.push(path);
    if !exact_rows.is_empty() {
        let path = cfg.output_dir.join("drift_vs_exact.csv");
        write_csv(&path, "param,alpha,index,delta", &exact_rows)?;
        bundle.files.push(path);
    }
    Ok(())
}

fn emit_coeffs(
    cfg: &RunConfig,
    base: &Solved,
    bundle: &mut ResultBundle,
    plateaus: &mut Vec<(usize, f64)>,
) -> Result<()> {
    let (op, sol) = &**base;
    let real_idx = sol.real_indices();
    let mut rows = Vec::new();
    for &mode in &cfg.modes {
        if mode >= cfg.ne || mode >= real_idx.len() {
            return Err(Error::Usage(format!(
                "field 'modes': mode {mode} out of range ({} real eigenvectors reported, ne = {})",
                real_idx.len(),
                cfg.ne
            )));
        }
        let col = sol.vectors.col(real_idx[mode]);
        let spectrum = match op.method {
            Method::SiC => sinc_coeffs(&col),
            // Dirichlet assemblies dropped the boundary rows; the full-grid
            // eigenvector has zeros there, and the transform needs them back.
            _ => {
                let mut padded = Vec::with_capacity(col.len() + 2);
                padded.push(0.0);
                padded.extend_from_slice(&col);
                padded.push(0.0);
                cheb_coeffs(&padded)?
            }
        };
        for (k, &a) in spectrum.coefficients.iter().enumerate() {
            rows.push(format!("{mode},{k},{}", f17(a.abs())));
        }
        plateaus.push((mode, spectrum.plateau));
        bundle.coefficient_spectra.push((mode, spectrum));
    }
    let path = cfg.output_dir.join("coeffs.csv");
    write_csv(&path, "mode,k,abs_coeff", &rows)?;
    bundle.files.push(path);
    Ok(())
}

fn emit_orth(cfg: &RunConfig, base: &Solved, bundle: &mut ResultBundle) -> Result<()> {
    let (_, sol) = &**base;
    let real_idx = sol.real_indices();
    let count = cfg.ne.min(real_idx.len());
    if cfg.orth_index >= count {
        return Err(Error::Usage(format!(
            "field 'orth_index': index {} out of range ({count} real eigenvectors reported)",
            cfg.orth_index
        )));
    }
    let m = sol.vectors.rows();
    let mut vectors = Mat::zeros(m, count);
    for (out, &j) in real_idx[..count].iter().enumerate() {
        vectors.set_col(out, &sol.vectors.col(j));
    }
    let dev = orthogonality_deficiency(&vectors, cfg.orth_index)?;
    let mut rows = Vec::new();
    let mut k = 0usize;
    for j in 0..count {
        if j == cfg.orth_index {
            continue;
        }
        rows.push(format!("{j},{}", f17(dev[k])));
        bundle.deficiencies.push((j, dev[k]));
        k += 1;
    }
    let path = cfg.output_dir.join("orth.csv");
    write_csv(&path, "j,abs_dot", &rows)?;
    bundle.files.push(path);
    Ok(())
}

// ---------------------------------------------------------------------------
// Output plumbing

/// 17 significant decimal digits: enough to round-trip any f64.
fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let mut text = String::with_capacity(header.len() + 1 + rows.iter().map(|r| r.len() + 1).sum::<usize>());
    text.push_str(header);
    text.push('\n');
    for row in rows {
        text.push_str(row);
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn list_problems_text() -> String {
    let mut out = String::from("name           method      domain                     defaults\n");
    for case in benchmark_cases() {
        let disc = match case.method {
            Method::ChC => format!("n={}", case.default_n),
            Method::MappedChC => {
                format!("n={} c={}", case.default_n, case.default_c.unwrap_or(f64::NAN))
            }
            Method::SiC => {
                format!("n={} h={}", case.default_n, case.default_h.unwrap_or(f64::NAN))
            }
        };
        let params = if case.potential.params.is_empty() {
            String::from("-")
        } else {
            case.potential
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        out.push_str(&format!(
            "{:<14} {:<11} {:<26} {} ne={} params: {}\n",
            case.name,
            case.method.to_string(),
            case.potential.domain_class.to_string(),
            disc,
            case.default_ne,
            params
        ));
    }
    out
}
