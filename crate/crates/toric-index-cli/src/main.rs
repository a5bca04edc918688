//! Command-line front end for the equivariant toric index library.
//!
//! Geometry comes from a built-in preset (`--preset cp1 --k 3 --m 1`, or the
//! compact `--preset cp1:3:1`) or a JSON file (`--file geometry.json` or a
//! bare file argument); results are printed as deterministic JSON on
//! stdout, or as short text with `--human`. Exit codes: 0 success, 1 a
//! verification batch found failures, 2 bad input, 3 a precondition on the
//! mathematics failed (non-Delzant geometry, critical level, too-coarse
//! grid), 4 numerically ambiguous kernel detection.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde::Serialize;

use toric_index::local_index::{localization_report, LocalIndexReport};
use toric_index::orbits::{enumerate_components, non_weight_acyclic_count, LevelComponent};
use toric_index::polytope::{CircleData, DelzantPolytope, Facet, MomentRange};
use toric_index::reduction::{qr_report, reduced_lattice_count, QrReport};
use toric_index::spectral::{cp1_spectral_index, RampShape, SpectralParams, SpectralReport};
use toric_index::verify::{
    verify_case, verify_cp1_spectral, verify_presets, verify_random_batch, BatchSummary,
    CaseReport,
};
use toric_index::{index, presets, Character, Error, ErrorKind};

#[derive(Parser)]
#[command(
    name = "toric-index",
    version,
    about = "Equivariant index characters of toric symplectic manifolds",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print short text instead of JSON.
    #[arg(long, global = true)]
    human: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Global equivariant character by both routes, with their agreement.
    Index(GeomArgs),
    /// Connected components of the integer level sets and their kinds.
    Classify {
        #[command(flatten)]
        geom: GeomArgs,
        /// Also count components that are not acyclic for this weight.
        #[arg(long)]
        weight: Option<i64>,
    },
    /// Per-component local characters and the localization/vanishing checks.
    Localize(GeomArgs),
    /// Lattice-point count of the reduced space at one regular level.
    Reduce {
        #[command(flatten)]
        geom: GeomArgs,
        /// Normalized integer level to reduce at.
        #[arg(long, allow_hyphen_values = true)]
        level: i64,
    },
    /// Compare reduced counts with index multiplicities at every level.
    QrCheck(GeomArgs),
    /// Spectral (finite-difference) local index for the segment geometry.
    Spectral(SpectralArgs),
    /// Replay every identity on the presets and a randomized batch, or on
    /// one space when a geometry source is given (cp1 presets also get a
    /// spectral cross-check).
    VerifyAll {
        #[command(flatten)]
        geom: GeomArgs,
        /// Seed for the randomized polytope suite.
        #[arg(long, default_value_t = 20260819)]
        seed: u64,
        /// Number of randomized cases.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

#[derive(Args)]
struct GeomArgs {
    /// Built-in space: a family name with parameter flags (--preset cp1
    /// --k 3 --m 1) or the compact form cp1:K:M, cp2:K, cp1xcp1:A:B,
    /// hirzebruch:A:B:C.
    #[arg(long, conflicts_with = "file", conflicts_with = "input")]
    preset: Option<String>,
    /// JSON file {"dim":N,"facets":[{"normal":[..],"offset":..},..],
    /// "xi":[..],"shift":S} (xi and shift optional).
    #[arg(long, conflicts_with = "input")]
    file: Option<PathBuf>,
    /// Geometry JSON file (same as --file), as a bare argument.
    input: Option<PathBuf>,
    /// Preset parameter K (cp1, cp2).
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Preset parameter M (cp1 character shift; default 0).
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Preset parameter A (cp1xcp1, hirzebruch).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    /// Preset parameter B (cp1xcp1, hirzebruch).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<i64>,
    /// Preset parameter C (hirzebruch).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<i64>,
    /// Circle direction inside the torus, comma-separated (overrides input).
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
    /// Integer character shift (overrides input).
    #[arg(long, allow_hyphen_values = true)]
    shift: Option<i64>,
}

impl GeomArgs {
    fn param_flags(&self) -> Vec<(&'static str, i64)> {
        [("k", self.k), ("m", self.m), ("a", self.a), ("b", self.b), ("c", self.c)]
            .into_iter()
            .filter_map(|(name, v)| v.map(|v| (name, v)))
            .collect()
    }
}

#[derive(Args)]
struct SpectralArgs {
    /// Segment length: the moment image is [0, K].
    #[arg(long)]
    k: i64,
    /// Character shift; normalized levels run from -M to K-M.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    m: i64,
    /// Level to analyze, as an exact rational like "2" or "1/2".
    #[arg(long, allow_hyphen_values = true)]
    level: String,
    /// Collar radius (exact rational in (0, 1/2)).
    #[arg(long, default_value = "1/4")]
    epsilon: String,
    /// Deformation strength.
    #[arg(long, default_value_t = 50.0)]
    t: f64,
    /// Domain half-width.
    #[arg(long, default_value_t = 6.0)]
    half_width: f64,
    /// Grid nodes, both ends inclusive.
    #[arg(long, default_value_t = 2001)]
    grid: usize,
    /// Modes center-window ..= center+window are scanned.
    #[arg(long, default_value_t = 5)]
    window: i64,
    /// Cutoff ramp smoothness: cubic or quintic.
    #[arg(long, default_value = "cubic")]
    ramp: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e.kind() {
                ErrorKind::Input => ExitCode::from(2),
                ErrorKind::Precondition => ExitCode::from(3),
                ErrorKind::Indeterminate => ExitCode::from(4),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Index(geom) => {
            let (p, c) = resolve_geometry(geom)?;
            let report = index_report(&p, &c)?;
            emit(cli, &report, render_index)?;
        }
        Command::Classify { geom, weight } => {
            let (p, c) = resolve_geometry(geom)?;
            let components = enumerate_components(&p, &c)?;
            let census = match weight {
                Some(w) => Some(CensusOut {
                    weight: *w,
                    non_acyclic_components: non_weight_acyclic_count(&p, &c, *w)?,
                }),
                None => None,
            };
            let report = ClassifyOut { components, census };
            emit(cli, &report, render_classify)?;
        }
        Command::Localize(geom) => {
            let (p, c) = resolve_geometry(geom)?;
            let report = localization_report(&p, &c)?;
            emit(cli, &report, render_localize)?;
        }
        Command::Reduce { geom, level } => {
            let (p, c) = resolve_geometry(geom)?;
            let count = reduced_lattice_count(&p, &c, *level)?;
            let report = ReduceOut { level: *level, reduced_count: count };
            emit(cli, &report, |r, out| {
                writeln!(out, "level {}: {} reduced lattice points", r.level, r.reduced_count)
                    .unwrap();
            })?;
        }
        Command::QrCheck(geom) => {
            let (p, c) = resolve_geometry(geom)?;
            let report = qr_report(&p, &c)?;
            emit(cli, &report, render_qr)?;
        }
        Command::Spectral(args) => {
            let params = SpectralParams {
                epsilon: parse_rational(&args.epsilon, "epsilon")?,
                t: args.t,
                half_width: args.half_width,
                grid: args.grid,
                window: args.window,
                ramp: parse_ramp(&args.ramp)?,
            };
            let level = parse_rational(&args.level, "level")?;
            let report = cp1_spectral_index(args.k, args.m, level, &params)?;
            emit(cli, &report, render_spectral)?;
        }
        Command::VerifyAll { geom, seed, count } => {
            let has_source =
                geom.preset.is_some() || geom.file.is_some() || geom.input.is_some();
            if has_source {
                let (p, c) = resolve_geometry(geom)?;
                let label = match (&geom.preset, geom.file.as_ref().or(geom.input.as_ref())) {
                    (Some(text), _) => text.clone(),
                    (None, Some(path)) => path.display().to_string(),
                    (None, None) => unreachable!("has_source checked above"),
                };
                let mut case = verify_case(&p, &c, &label);
                if let Some((k, m)) = segment_preset(geom) {
                    let check = verify_cp1_spectral(k, m);
                    case.passed = case.passed && check.passed;
                    case.checks.push(check);
                }
                let ok = case.passed;
                emit(cli, &case, render_case)?;
                if !ok {
                    return Ok(ExitCode::from(1));
                }
            } else {
                let presets = verify_presets();
                let random = verify_random_batch(*seed, *count);
                let ok = presets.iter().all(|r| r.passed) && random.failed == 0;
                let report = VerifyOut { presets, random, ok };
                emit(cli, &report, render_verify)?;
                if !ok {
                    return Ok(ExitCode::from(1));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---- input resolution ----

#[derive(serde::Deserialize)]
struct GeometryFile {
    dim: usize,
    facets: Vec<Facet>,
    #[serde(default)]
    xi: Option<Vec<i64>>,
    #[serde(default)]
    shift: Option<i64>,
}

fn resolve_geometry(geom: &GeomArgs) -> Result<(DelzantPolytope, CircleData), Error> {
    let file_path = geom.file.as_ref().or(geom.input.as_ref());
    let (p, xi, shift) = match (&geom.preset, file_path) {
        (Some(text), None) => {
            let (p, c) = build_preset(text, geom)?;
            (p, Some(c.xi), Some(c.shift))
        }
        (None, Some(path)) => {
            if let Some((name, _)) = geom.param_flags().first() {
                return Err(Error::BadInput(format!(
                    "--{name} is a preset parameter; it does not apply to a geometry file"
                )));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
            let file: GeometryFile = serde_json::from_str(&text)
                .map_err(|e| Error::BadInput(format!("bad geometry JSON: {e}")))?;
            let p = DelzantPolytope::from_facets(file.dim, file.facets)?;
            (p, file.xi, file.shift)
        }
        _ => {
            return Err(Error::BadInput(
                "give exactly one geometry source: --preset, --file, or a file argument".into(),
            ))
        }
    };
    let xi = match &geom.xi {
        Some(text) => parse_i64_list(text)?,
        None => xi.ok_or_else(|| {
            Error::BadInput("no circle direction: pass --xi or put \"xi\" in the file".into())
        })?,
    };
    let shift = geom.shift.or(shift).unwrap_or(0);
    let circle = CircleData::new(xi, shift)?;
    Ok((p, circle))
}

/// A preset is either self-contained ("cp1:3:1") or a bare family name whose
/// parameters arrive as flags ("cp1" with --k 3 --m 1).
fn build_preset(text: &str, geom: &GeomArgs) -> Result<(DelzantPolytope, CircleData), Error> {
    let flags = geom.param_flags();
    if text.contains(':') {
        if let Some((name, _)) = flags.first() {
            return Err(Error::BadInput(format!(
                "preset {text:?} already carries its parameters; drop --{name}"
            )));
        }
        return parse_preset(text);
    }
    let allowed: &[&str] = match text {
        "cp1" => &["k", "m"],
        "cp2" => &["k"],
        "cp1xcp1" => &["a", "b"],
        "hirzebruch" => &["a", "b", "c"],
        other => {
            return Err(Error::BadInput(format!(
                "unknown preset {other:?}; try cp1 --k K [--m M], cp2 --k K, \
                 cp1xcp1 --a A --b B, or hirzebruch --a A --b B --c C"
            )))
        }
    };
    for (name, _) in &flags {
        if !allowed.contains(name) {
            return Err(Error::BadInput(format!("preset {text} does not take --{name}")));
        }
    }
    let need = |v: Option<i64>, name: &str| {
        v.ok_or_else(|| Error::BadInput(format!("preset {text} needs --{name}")))
    };
    match text {
        "cp1" => presets::cp1(need(geom.k, "k")?, geom.m.unwrap_or(0)),
        "cp2" => presets::cp2(need(geom.k, "k")?),
        "cp1xcp1" => presets::cp1xcp1(need(geom.a, "a")?, need(geom.b, "b")?),
        "hirzebruch" => {
            presets::hirzebruch(need(geom.a, "a")?, need(geom.b, "b")?, need(geom.c, "c")?)
        }
        _ => unreachable!("family validated above"),
    }
}

fn parse_preset(text: &str) -> Result<(DelzantPolytope, CircleData), Error> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Result<Vec<i64>, _> = parts[1..].iter().map(|s| s.parse::<i64>()).collect();
    let nums = nums.map_err(|_| {
        Error::BadInput(format!("preset parameters in {text:?} must be integers"))
    })?;
    match (parts[0], nums.as_slice()) {
        ("cp1", [k, m]) => presets::cp1(*k, *m),
        ("cp2", [k]) => presets::cp2(*k),
        ("cp1xcp1", [a, b]) => presets::cp1xcp1(*a, *b),
        ("hirzebruch", [a, b, c]) => presets::hirzebruch(*a, *b, *c),
        (name @ ("cp1" | "cp2" | "cp1xcp1" | "hirzebruch"), args) => Err(Error::BadInput(format!(
            "preset {name} takes a different parameter count than {}",
            args.len()
        ))),
        (name, _) => Err(Error::BadInput(format!(
            "unknown preset {name:?}; try cp1:K:M, cp2:K, cp1xcp1:A:B, hirzebruch:A:B:C"
        ))),
    }
}

/// When the input is a cp1 preset with its own circle (no overrides), the
/// segment data (k, m) that the spectral model needs.
fn segment_preset(geom: &GeomArgs) -> Option<(i64, i64)> {
    if geom.xi.is_some() || geom.shift.is_some() {
        return None;
    }
    let text = geom.preset.as_deref()?;
    if let Some(rest) = text.strip_prefix("cp1:") {
        let nums: Option<Vec<i64>> = rest.split(':').map(|s| s.parse().ok()).collect();
        return match nums?.as_slice() {
            [k, m] => Some((*k, *m)),
            _ => None,
        };
    }
    if text == "cp1" {
        return Some((geom.k?, geom.m.unwrap_or(0)));
    }
    None
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>, Error> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::BadInput(format!("bad integer {:?} in list", s.trim())))
        })
        .collect()
}

fn parse_rational(text: &str, what: &str) -> Result<Rational64, Error> {
    text.trim()
        .parse::<Rational64>()
        .map_err(|_| Error::BadInput(format!("{what} must be a rational like 3 or 1/2, got {text:?}")))
}

fn parse_ramp(text: &str) -> Result<RampShape, Error> {
    match text {
        "cubic" => Ok(RampShape::Cubic),
        "quintic" => Ok(RampShape::Quintic),
        other => Err(Error::BadInput(format!("ramp must be cubic or quintic, got {other:?}"))),
    }
}

// ---- outputs ----

#[derive(Serialize)]
struct IndexOut {
    dim: usize,
    lattice_point_count: usize,
    moment_range: MomentRange,
    character: Character,
    total_multiplicity: String,
    routes_agree: bool,
    /// Present only when the two routes disagree, to show both answers.
    #[serde(skip_serializing_if = "Option::is_none")]
    fixed_point_character: Option<Character>,
}

fn index_report(p: &DelzantPolytope, c: &CircleData) -> Result<IndexOut, Error> {
    let lattice = index::global_circle_character(p, c)?;
    let fixed_point = index::atiyah_bott_character(p, c)?;
    let routes_agree = lattice == fixed_point;
    Ok(IndexOut {
        dim: p.dim(),
        lattice_point_count: p.lattice_points().len(),
        moment_range: p.moment_range(c)?,
        total_multiplicity: lattice.total_multiplicity().to_string(),
        routes_agree,
        fixed_point_character: (!routes_agree).then_some(fixed_point),
        character: lattice,
    })
}

#[derive(Serialize)]
struct CensusOut {
    weight: i64,
    non_acyclic_components: usize,
}

#[derive(Serialize)]
struct ClassifyOut {
    components: Vec<LevelComponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    census: Option<CensusOut>,
}

#[derive(Serialize)]
struct ReduceOut {
    level: i64,
    reduced_count: u64,
}

#[derive(Serialize)]
struct VerifyOut {
    presets: Vec<CaseReport>,
    random: BatchSummary,
    ok: bool,
}

fn emit<T: Serialize>(
    cli: &Cli,
    value: &T,
    render: impl Fn(&T, &mut String),
) -> Result<(), Error> {
    if cli.human {
        let mut out = String::new();
        render(value, &mut out);
        print!("{out}");
    } else {
        let json = serde_json::to_string(value)
            .map_err(|e| Error::BadInput(format!("serialization failed: {e}")))?;
        println!("{json}");
    }
    Ok(())
}

fn render_index(r: &IndexOut, out: &mut String) {
    writeln!(out, "dimension        {}", r.dim).unwrap();
    writeln!(out, "lattice points   {}", r.lattice_point_count).unwrap();
    writeln!(out, "level range      [{}, {}]", r.moment_range.min, r.moment_range.max).unwrap();
    writeln!(out, "character        {}", r.character).unwrap();
    writeln!(out, "total mult       {}", r.total_multiplicity).unwrap();
    writeln!(out, "routes agree     {}", r.routes_agree).unwrap();
    if let Some(other) = &r.fixed_point_character {
        writeln!(out, "fixed-point char {other}").unwrap();
    }
}

fn render_classify(r: &ClassifyOut, out: &mut String) {
    for comp in &r.components {
        let kind = if comp.is_fixed() { "fixed point" } else { "Bohr-Sommerfeld" };
        writeln!(out, "level {:>4}  {kind}", comp.level).unwrap();
    }
    if let Some(census) = &r.census {
        writeln!(
            out,
            "components not acyclic for weight {}: {}",
            census.weight, census.non_acyclic_components
        )
        .unwrap();
    }
}

fn render_localize(r: &LocalIndexReport, out: &mut String) {
    for comp in &r.components {
        writeln!(out, "level {:>4}  character {}", comp.level, comp.character).unwrap();
    }
    writeln!(out, "localization {}", if r.localization_ok { "ok" } else { "BROKEN" }).unwrap();
    writeln!(out, "vanishing    {}", if r.vanishing_ok { "ok" } else { "BROKEN" }).unwrap();
}

fn render_qr(r: &QrReport, out: &mut String) {
    for row in &r.rows {
        let reduced = match row.reduced_index {
            Some(n) => n.to_string(),
            None => "-".to_string(),
        };
        writeln!(
            out,
            "level {:>4}  {}  reduced {:>3}  multiplicity {:>3}  {}",
            row.level,
            if row.regular { "regular " } else { "critical" },
            reduced,
            row.multiplicity,
            if row.agree { "ok" } else { "MISMATCH" }
        )
        .unwrap();
    }
    writeln!(out, "all levels agree: {}", r.all_agree).unwrap();
}

fn render_spectral(r: &SpectralReport, out: &mut String) {
    writeln!(out, "level {}  model {:?}", r.level, r.model).unwrap();
    for probe in &r.modes {
        writeln!(
            out,
            "mode {:>4}  dims ({}, {})  sigmas ({:.3e}, {:.3e})  threshold {:.3e}",
            probe.mode, probe.dim0, probe.dim1, probe.sigma0, probe.sigma1, probe.threshold
        )
        .unwrap();
    }
    writeln!(out, "character {}", r.character).unwrap();
}

fn render_case(case: &CaseReport, out: &mut String) {
    writeln!(
        out,
        "{} (dim {}, {} lattice points)",
        case.family, case.dim, case.lattice_points
    )
    .unwrap();
    for check in &case.checks {
        writeln!(
            out,
            "  {:<24} {}  {}",
            check.name,
            if check.passed { "ok  " } else { "FAIL" },
            check.detail
        )
        .unwrap();
    }
    writeln!(out, "overall: {}", if case.passed { "pass" } else { "FAIL" }).unwrap();
}

fn render_verify(r: &VerifyOut, out: &mut String) {
    for case in &r.presets {
        writeln!(out, "{:<20} {}", case.family, if case.passed { "pass" } else { "FAIL" })
            .unwrap();
        for check in case.checks.iter().filter(|c| !c.passed) {
            writeln!(out, "    {}: {}", check.name, check.detail).unwrap();
        }
    }
    writeln!(
        out,
        "random batch: {} of {} passed",
        r.random.passed, r.random.cases
    )
    .unwrap();
    for case in &r.random.failures {
        writeln!(out, "{:<20} FAIL", case.family).unwrap();
        for check in case.checks.iter().filter(|c| !c.passed) {
            writeln!(out, "    {}: {}", check.name, check.detail).unwrap();
        }
    }
    writeln!(out, "overall: {}", if r.ok { "pass" } else { "FAIL" }).unwrap();
}
