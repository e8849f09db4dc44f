use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use sep3q::diagnostics::{ppt_report, Subsystem};
use sep3q::library::{self, DctParams};
use sep3q::mixed::{c_mixed, MixedVerdict, SearchConfig};
use sep3q::pure::{is_fully_separable_pure, lemma1_residuals, Separability};
use sep3q::states::{DensityMatrix, State, StateFile};
use sep3q::Complex64;

use crate::report::{sig10, ConfigEcho, Report, Verdict};
use crate::{DemoState, Format, GenState};

/// Certificate values reported for the two built-in examples.
pub const SHIFTS_REFERENCE: f64 = 0.1469;
pub const DCT_REFERENCE: f64 = 0.3747;

/// DCT inputs whose trace is off by at most this much (rounded decimals on
/// the command line) are rescaled to unit trace.
const DCT_RESCALE_TOL: f64 = 1e-6;

fn load(file: &Path) -> anyhow::Result<State> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    StateFile::parse(&text).with_context(|| format!("parsing {}", file.display()))
}

fn print_stdout(text: &str) -> anyhow::Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn emit(report: &Report, format: Format) -> anyhow::Result<()> {
    match format {
        Format::Json => print_stdout(&(report.to_json() + "\n")),
        Format::Text => print_stdout(&report.to_text()),
    }
}

pub fn pure_check(file: &Path, tol: f64, format: Format) -> anyhow::Result<u8> {
    let start = Instant::now();
    let psi = match load(file)? {
        State::Pure(psi) => psi,
        State::Density(_) => bail!(
            "{}: pure-check needs a state file of kind \"pure\"",
            file.display()
        ),
    };
    let (verdict, c) = is_fully_separable_pure(&psi, tol);
    let residuals = lemma1_residuals(&psi);
    let verdict = match verdict {
        Separability::Separable => Verdict::Separable,
        Separability::Entangled => Verdict::Entangled,
    };
    let mut report = Report::pure(
        file.display().to_string(),
        verdict,
        &c,
        &residuals,
        ConfigEcho::pure(tol),
    );
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    emit(&report, format)?;
    Ok(if verdict == Verdict::Entangled { 1 } else { 0 })
}

fn run_mixed(
    input: String,
    rho: &DensityMatrix,
    cfg: &SearchConfig,
    verdict_tol: f64,
    ppt: bool,
    reference: Option<f64>,
    format: Format,
) -> anyhow::Result<u8> {
    let start = Instant::now();
    let result = c_mixed(rho, cfg)?;
    let ppt = if ppt { Some(ppt_report(rho)?) } else { None };
    let verdict = match result.verdict(verdict_tol) {
        MixedVerdict::EntangledCertified => Verdict::Entangled,
        MixedVerdict::Inconclusive => Verdict::Inconclusive,
    };
    let mut report = Report::mixed(
        input,
        verdict,
        &result,
        ppt,
        ConfigEcho::search(cfg, verdict_tol),
    );
    report.reference_value = reference;
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    emit(&report, format)?;
    Ok(if verdict == Verdict::Entangled { 1 } else { 0 })
}

pub fn mixed_check(
    file: &Path,
    cfg: &SearchConfig,
    verdict_tol: f64,
    ppt: bool,
    format: Format,
) -> anyhow::Result<u8> {
    let rho = load(file)?.to_density();
    run_mixed(
        file.display().to_string(),
        &rho,
        cfg,
        verdict_tol,
        ppt,
        None,
        format,
    )
}

/// Validates DCT parameters, rescaling near-unit traces from rounded input.
pub fn dct_params(p: &DctParams) -> anyhow::Result<DctParams> {
    let trace = p.trace();
    let p =
        if trace.is_finite() && (trace - 1.0).abs() <= DCT_RESCALE_TOL && (trace - 1.0).abs() > 0.0
        {
            eprintln!("note: DCT parameters sum to {trace}; rescaling to unit trace");
            DctParams {
                a: p.a / trace,
                b: p.b / trace,
                c: p.c / trace,
                d: p.d / trace,
                e: p.e / trace,
            }
        } else {
            *p
        };
    p.validate()?;
    Ok(p)
}

fn is_reference_dct(p: &DctParams) -> bool {
    let r = DctParams::reference();
    [(p.a, r.a), (p.b, r.b), (p.c, r.c), (p.d, r.d), (p.e, r.e)]
        .iter()
        .all(|(x, y)| (x - y).abs() <= DCT_RESCALE_TOL)
}

pub fn demo(
    which: DemoState,
    dct: &DctParams,
    cfg: &SearchConfig,
    verdict_tol: f64,
    ppt: bool,
    format: Format,
) -> anyhow::Result<u8> {
    let (input, rho, reference) = match which {
        DemoState::Shifts => (
            "demo:shifts".to_string(),
            library::shifts_complement(),
            Some(SHIFTS_REFERENCE),
        ),
        DemoState::Dct => {
            let p = dct_params(dct)?;
            let reference = is_reference_dct(&p).then_some(DCT_REFERENCE);
            (
                format!(
                    "demo:dct(a={}, b={}, c={}, d={}, e={})",
                    p.a, p.b, p.c, p.d, p.e
                ),
                library::dct_state(&p)?,
                reference,
            )
        }
    };
    run_mixed(input, &rho, cfg, verdict_tol, ppt, reference, format)
}

fn parse_qubit(text: &str) -> anyhow::Result<[Complex64; 2]> {
    let nums: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("factor {text:?} is not a list of numbers"))?;
    match nums.as_slice() {
        [a, b] => Ok([Complex64::new(*a, 0.0), Complex64::new(*b, 0.0)]),
        [ar, ai, br, bi] => Ok([Complex64::new(*ar, *ai), Complex64::new(*br, *bi)]),
        _ => bail!("factor {text:?} must have 2 (real) or 4 (re,im,re,im) numbers"),
    }
}

pub fn gen(
    name: GenState,
    dct: &DctParams,
    seed: u64,
    k: usize,
    factors: [&str; 3],
    out: Option<&Path>,
) -> anyhow::Result<u8> {
    let state = match name {
        GenState::Ghz => State::Pure(library::ghz()),
        GenState::W => State::Pure(library::w()),
        GenState::Product => {
            let [u, v, t] = factors;
            State::Pure(library::product(
                parse_qubit(u)?,
                parse_qubit(v)?,
                parse_qubit(t)?,
            )?)
        }
        GenState::ShiftsComplement => State::Density(library::shifts_complement()),
        GenState::Dct => State::Density(library::dct_state(&dct_params(dct)?)?),
        GenState::RandomPure => State::Pure(library::random_pure(seed)),
        GenState::RandomProduct => State::Pure(library::random_product_pure(seed)),
        GenState::RandomSeparable => State::Density(library::random_separable_mixed(seed, k)?),
        GenState::RandomDensity => State::Density(library::random_density(seed)),
    };
    let json = StateFile::from_state(&state).to_json();
    match out {
        Some(path) => {
            fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?
        }
        None => print_stdout(&(json + "\n"))?,
    }
    Ok(0)
}

/// Parses `start:end:count` (inclusive, evenly spaced) or `x,y,z`.
pub fn parse_grid(text: &str) -> anyhow::Result<Vec<f64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        let [start, end, count] = parts.as_slice() else {
            bail!("grid {text:?} must look like start:end:count");
        };
        let start: f64 = start
            .trim()
            .parse()
            .with_context(|| format!("grid start in {text:?}"))?;
        let end: f64 = end
            .trim()
            .parse()
            .with_context(|| format!("grid end in {text:?}"))?;
        let count: usize = count
            .trim()
            .parse()
            .with_context(|| format!("grid count in {text:?}"))?;
        return Ok(match count {
            0 => Vec::new(),
            1 => vec![start],
            n => (0..n)
                .map(|i| start + (end - start) * i as f64 / (n - 1) as f64)
                .collect(),
        });
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| anyhow!("grid value {s:?} is not a number"))
        })
        .collect()
}

enum Fill {
    Fixed(f64),
    Auto,
}

fn parse_fill(name: &str, text: &str) -> anyhow::Result<Fill> {
    if text.trim().eq_ignore_ascii_case("auto") {
        Ok(Fill::Auto)
    } else {
        Ok(Fill::Fixed(text.trim().parse().with_context(|| {
            format!("--{name} must be a number or auto")
        })?))
    }
}

/// Fills `auto` entries of (b, c, d, e) so that `a + b + 2(c + d + e) = 1`,
/// splitting the remainder evenly across the auto entries.
fn grid_point(a: f64, fills: &[Fill; 4]) -> DctParams {
    const WEIGHTS: [f64; 4] = [1.0, 2.0, 2.0, 2.0];
    let fixed: f64 = fills
        .iter()
        .zip(WEIGHTS)
        .map(|(f, w)| if let Fill::Fixed(x) = f { w * x } else { 0.0 })
        .sum();
    let auto_weight: f64 = fills
        .iter()
        .zip(WEIGHTS)
        .map(|(f, w)| if let Fill::Auto = f { w } else { 0.0 })
        .sum();
    let auto_count = fills.iter().filter(|f| matches!(f, Fill::Auto)).count() as f64;
    let share = if auto_count > 0.0 {
        (1.0 - a - fixed) / auto_weight
    } else {
        0.0
    };
    let v = |f: &Fill| match f {
        Fill::Fixed(x) => *x,
        Fill::Auto => share,
    };
    DctParams {
        a,
        b: v(&fills[0]),
        c: v(&fills[1]),
        d: v(&fills[2]),
        e: v(&fills[3]),
    }
}

pub const SCAN_HEADER: [&str; 10] = [
    "a",
    "b",
    "c",
    "d",
    "e",
    "certificate",
    "ppt_A",
    "ppt_B",
    "ppt_C",
    "seconds",
];

pub fn scan_dct(
    a_grid: &str,
    fills: [&str; 4],
    cfg: &SearchConfig,
    out: Option<&Path>,
) -> anyhow::Result<u8> {
    let grid = parse_grid(a_grid)?;
    let fills = [
        parse_fill("b", fills[0])?,
        parse_fill("c", fills[1])?,
        parse_fill("d", fills[2])?,
        parse_fill("e", fills[3])?,
    ];

    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(SCAN_HEADER)?;

    let mut rows = 0;
    for a in grid {
        let p = grid_point(a, &fills);
        if let Err(err) = p.validate() {
            eprintln!("warning: skipping a = {a}: {err}");
            continue;
        }
        let start = Instant::now();
        let rho = library::dct_state(&p)?;
        let result = c_mixed(&rho, cfg)?;
        let ppt = ppt_report(&rho)?;
        let seconds = start.elapsed().as_secs_f64();
        let flag = |s: Subsystem| ppt.get(s).ppt.to_string();
        writer.write_record([
            sig10(p.a).to_string(),
            sig10(p.b).to_string(),
            sig10(p.c).to_string(),
            sig10(p.d).to_string(),
            sig10(p.e).to_string(),
            sig10(result.certificate).to_string(),
            flag(Subsystem::A),
            flag(Subsystem::B),
            flag(Subsystem::C),
            format!("{seconds:.3}"),
        ])?;
        rows += 1;
    }
    writer.flush()?;
    if rows == 0 {
        eprintln!("warning: the grid contains no valid parameter points");
    }
    Ok(0)
}
