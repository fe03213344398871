//! Experiment suites behind the command-line front end.
//!
//! A [`RunConfig`] is one flat JSON object whose keys mirror the command
//! line flags. Every suite writes its cells to a CSV file under the output
//! directory, row by row, and `summary.json` gathers per-cell reports, the
//! largest ratio with the cell that produced it, the config and the crate
//! version. Outputs depend only on the config and the crate version.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cayley::{enumerate_with_budget, fit_growth, LayeredBall};
use crate::error::{Error, Result};
use crate::geometry::{coarse_median_scan, correlation_rd_ratio, median_candidates, random_subset, InequalityReport};
use crate::group::{parse_spec, GroupModel};
use crate::harmonic::{
    cohen_pytlik, operator_norm_truncated, FiniteFunction, MeasureKind, NormMethod, NormOptions, RadialMeasure, Weight,
};
use crate::maximal::{auto_floor, corpus_sweep, dyadic_corpus, maximal_function, weak_type_ratio, MaximalProfile};
use crate::output::{fmt_real, json_line, write_json, CsvSink};
use crate::rng::Lcg;

pub const VERSION: &str = concat!("shellmax ", env!("CARGO_PKG_VERSION"));

/// Suites run by `all`, in order.
pub const ALL_SUITES: [&str; 6] = [
    "growth",
    "norm",
    "coarse-median",
    "correlation",
    "maximal",
    "dist-check",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// One of [`ALL_SUITES`], `median`, or `all`.
    pub suite: String,
    pub group: String,
    pub seed: u64,
    /// Output directory.
    pub out: String,
    /// Element budget for every enumeration.
    pub budget: usize,
    /// Enumeration radius for `growth` and `maximal`, truncation radius for
    /// `norm`.
    pub radius: usize,
    /// Measure radius for `norm`; largest swept radius for `dist-check`.
    pub r: Option<usize>,
    /// `norm` averages over the closed ball instead of the sphere.
    pub ball: bool,
    pub method: NormMethod,
    pub tol: f64,
    pub max_iters: usize,
    /// Largest radius for `coarse-median` and `correlation`.
    pub rmax: usize,
    pub d2: f64,
    pub b: f64,
    pub width: usize,
    pub pairs: usize,
    pub max_subset: usize,
    /// Defaults to `seed`.
    pub corpus_seed: Option<u64>,
    pub corpus_size: usize,
    pub corpus_radius: usize,
    pub max_exponent: u32,
    /// Function file for `maximal`: one `<word> <rational>` per line.
    pub function: Option<String>,
    /// Largest averaging radius for `maximal`; fixes the floor.
    pub n_max: Option<usize>,
    /// Also write `Mf` point by point.
    pub values: bool,
    pub x: Option<String>,
    pub y: Option<String>,
    pub z: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let norm = NormOptions::default();
        RunConfig {
            suite: "all".into(),
            group: String::new(),
            seed: 0,
            out: "out".into(),
            budget: crate::cayley::DEFAULT_BUDGET,
            radius: 8,
            r: None,
            ball: false,
            method: norm.method,
            tol: norm.tol,
            max_iters: norm.max_iters,
            rmax: 6,
            d2: 0.0,
            b: 0.0,
            width: 1,
            pairs: 200,
            max_subset: 32,
            corpus_seed: None,
            corpus_size: 100,
            corpus_radius: 4,
            max_exponent: 6,
            function: None,
            n_max: None,
            values: false,
            x: None,
            y: None,
            z: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::precondition(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    fn model(&self) -> Result<GroupModel> {
        if self.group.trim().is_empty() {
            return Err(Error::precondition("no group given"));
        }
        parse_spec(&self.group)
    }

    fn norm_options(&self) -> NormOptions {
        NormOptions {
            tol: self.tol,
            max_iters: self.max_iters,
            method: self.method,
            budget: self.budget,
            ..NormOptions::default()
        }
    }

    fn header(&self) -> Result<Vec<String>> {
        Ok(vec![VERSION.to_string(), format!("config {}", json_line(self)?)])
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub files: Vec<String>,
    pub cells: usize,
    #[serde(serialize_with = "crate::output::real")]
    pub max_ratio: f64,
    /// Coordinates of the cell attaining `max_ratio`.
    pub argmax: Option<String>,
    pub details: Value,
    pub reports: Vec<InequalityReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteFailure {
    pub suite: String,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub version: &'static str,
    pub config: RunConfig,
    pub suites: Vec<SuiteOutcome>,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteReport {
    pub fn outcome(&self, suite: &str) -> Option<&SuiteOutcome> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

fn outcome(suite: &str, files: Vec<String>, cells: usize, best: Option<(f64, String)>, details: Value) -> SuiteOutcome {
    let (max_ratio, argmax) = match best {
        Some((ratio, cell)) => (ratio, Some(cell)),
        None => (0.0, None),
    };
    SuiteOutcome {
        suite: suite.to_string(),
        files,
        cells,
        max_ratio,
        argmax,
        details,
        reports: Vec::new(),
    }
}

fn track(best: &mut Option<(f64, String)>, ratio: f64, cell: impl FnOnce() -> String) {
    if best.as_ref().is_none_or(|(b, _)| ratio > *b) {
        *best = Some((ratio, cell()));
    }
}

/// Runs the configured suite, or every suite for `all`, writing into
/// `config.out`. Completed suites keep their files when a later one fails;
/// the first failure is returned after `summary.json` is written.
pub fn run_suite(config: &RunConfig) -> Result<SuiteReport> {
    let model = config.model()?;
    let names: Vec<&str> = match config.suite.as_str() {
        "all" => ALL_SUITES.to_vec(),
        s if ALL_SUITES.contains(&s) || s == "median" => vec![s],
        s => return Err(Error::precondition(format!("unknown suite {s:?}"))),
    };
    let dir = PathBuf::from(&config.out);
    std::fs::create_dir_all(&dir)?;
    let mut report = SuiteReport {
        version: VERSION,
        config: config.clone(),
        suites: Vec::new(),
        failures: Vec::new(),
    };
    let mut first_error = None;
    for name in names {
        let result = match name {
            "growth" => growth(config, &model, &dir),
            "norm" => norm(config, &model, &dir),
            "coarse-median" => coarse_median(config, &model, &dir),
            "correlation" => correlation(config, &model, &dir),
            "maximal" => maximal(config, &model, &dir),
            "dist-check" => dist_check(config, &model, &dir),
            "median" => median(config, &model, &dir),
            _ => unreachable!("suite names are checked above"),
        };
        match result {
            Ok(o) => report.suites.push(o),
            Err(e) => {
                let e = if matches!(e, Error::Cell { .. }) {
                    e
                } else {
                    e.in_cell(name)
                };
                report.failures.push(SuiteFailure {
                    suite: name.to_string(),
                    error: e.to_string(),
                });
                first_error.get_or_insert(e);
            }
        }
    }
    write_json(&dir.join("summary.json"), &report)?;
    match first_error {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

fn ball(config: &RunConfig, model: &GroupModel, radius: usize) -> Result<LayeredBall> {
    enumerate_with_budget(model, radius, config.budget)
}

fn growth(config: &RunConfig, model: &GroupModel, dir: &Path) -> Result<SuiteOutcome> {
    let ball = ball(config, model, config.radius)?;
    let sizes = ball.sphere_sizes();
    let fit = fit_growth(&sizes)?;
    let mut header = config.header()?;
    header.push(format!("fit {}", json_line(&fit)?));
    let file = "growth.csv";
    let mut csv = CsvSink::create(
        &dir.join(file),
        &header,
        &["n", "sphere_size", "ball_size", "fitted_prediction", "ratio"],
    )?;
    let mut best = None;
    for (n, &s) in sizes.iter().enumerate() {
        let prediction = fit.prediction(n);
        let ratio = s as f64 / prediction;
        if n >= 1 {
            track(&mut best, ratio.max(1.0 / ratio), || format!("n={n}"));
        }
        csv.row(&[
            n.to_string(),
            s.to_string(),
            ball.ball_size(n).to_string(),
            fmt_real(prediction),
            fmt_real(ratio),
        ])?;
    }
    let details = json!({ "fit": fit, "bound_holds": fit.bound_holds(&sizes) });
    Ok(outcome("growth", vec![file.into()], sizes.len(), best, details))
}

fn norm(config: &RunConfig, model: &GroupModel, dir: &Path) -> Result<SuiteOutcome> {
    let r = config.r.unwrap_or(1);
    let kind = if config.ball {
        MeasureKind::Ball { radius: r }
    } else {
        MeasureKind::Sphere { radius: r }
    };
    let measure = RadialMeasure::<f64>::new(model, kind)?;
    let est = operator_norm_truncated(model, &measure, config.radius, &config.norm_options())?;
    let reference = match (model, config.ball) {
        (GroupModel::Free { rank }, false) => Some(cohen_pytlik(*rank, r)),
        _ => None,
    };
    let record = json!({
        "version": VERSION,
        "config": config,
        "r": r,
        "R": config.radius,
        "norm": est.norm,
        "converged": est.converged,
        "iters": est.iterations,
        "reference": reference,
        "method": est.method,
        "last_relative_change": crate::output::to_json(&est)?["last_relative_change"],
    });
    let file = "norm.json";
    write_json(&dir.join(file), &record)?;
    let best = reference.map(|c| (est.norm / c, format!("r={r},R={}", config.radius)));
    Ok(outcome(
        "norm",
        vec![file.into()],
        1,
        best,
        json!({ "estimate": est, "reference": reference }),
    ))
}

fn coarse_median(config: &RunConfig, model: &GroupModel, dir: &Path) -> Result<SuiteOutcome> {
    let ball = ball(config, model, config.rmax)?;
    let scan = coarse_median_scan(&ball, config.rmax, config.seed, config.d2)?;
    let file = "coarse_median.csv";
    let mut csv = CsvSink::create(
        &dir.join(file),
        &config.header()?,
        &["j", "i", "r", "m", "sizeE", "sizeF", "lhs", "rhs", "ratio", "family"],
    )?;
    let cell = |rep: &InequalityReport| {
        let p = |k: &str| rep.param(k).unwrap_or(f64::NAN) as usize;
        [p("j"), p("i"), p("r"), p("m")]
    };
    let mut best = None;
    for rep in &scan.reports {
        let [j, i, r, m] = cell(rep);
        let family = rep.digest.family.clone().unwrap_or_default();
        track(&mut best, rep.ratio, || format!("family={family},j={j},i={i},r={r}"));
        csv.row(&[
            j.to_string(),
            i.to_string(),
            r.to_string(),
            m.to_string(),
            rep.digest.size_a.to_string(),
            rep.digest.size_b.to_string(),
            rep.lhs.value().to_string(),
            fmt_real(rep.rhs),
            fmt_real(rep.ratio),
            family,
        ])?;
    }
    let mut o = outcome(
        "coarse-median",
        vec![file.into()],
        scan.reports.len(),
        best,
        json!({ "c0": scan.c0, "d2": config.d2 }),
    );
    o.reports = scan.reports;
    Ok(o)
}

fn correlation(config: &RunConfig, model: &GroupModel, dir: &Path) -> Result<SuiteOutcome> {
    let reach = config.rmax + config.width.max(1) - 1;
    let ball = ball(config, model, reach)?;
    let file = "correlation.csv";
    let mut csv = CsvSink::create(
        &dir.join(file),
        &config.header()?,
        &["pair", "r", "sizeA", "sizeB", "lhs", "rhs", "ratio"],
    )?;
    let mut rng = Lcg::new(config.seed);
    let mut best = None;
    let mut reports = Vec::new();
    for pair in 0..config.pairs {
        let a = random_subset(&ball, &mut rng, config.max_subset);
        let b = random_subset(&ball, &mut rng, config.max_subset);
        for r in 1..=config.rmax {
            let mut rep = correlation_rd_ratio(&ball, &a, &b, r, config.b, config.width)
                .map_err(|e| e.in_cell(format!("pair={pair},r={r}")))?;
            rep.digest.seed = Some(config.seed);
            track(&mut best, rep.ratio, || format!("pair={pair},r={r}"));
            csv.row(&[
                pair.to_string(),
                r.to_string(),
                rep.digest.size_a.to_string(),
                rep.digest.size_b.to_string(),
                rep.lhs.value().to_string(),
                fmt_real(rep.rhs),
                fmt_real(rep.ratio),
            ])?;
            reports.push(rep);
        }
    }
    let mut o = outcome(
        "correlation",
        vec![file.into()],
        reports.len(),
        best,
        json!({ "b": config.b }),
    );
    o.reports = reports;
    Ok(o)
}

/// Parses `<word> <rational>` lines; blank lines and `#` comments are
/// skipped. Rationals are integers, `p/q`, or decimals.
pub fn parse_function(model: &GroupModel, text: &str) -> Result<FiniteFunction<BigRational>> {
    let mut entries = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let start = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap_or("").trim_end();
        let lead = content.len() - content.trim_start().len();
        let mut parts = content.split_whitespace();
        let (Some(word), Some(value)) = (parts.next(), parts.next()) else {
            if content.trim().is_empty() {
                continue;
            }
            return Err(Error::parse(start + lead, "expected `<word> <value>`"));
        };
        if parts.next().is_some() {
            return Err(Error::parse(start + lead, "trailing fields after the value"));
        }
        let x = model.parse_element(word).map_err(|e| match e {
            Error::Parse { position, message } => Error::parse(start + lead + position, message),
            e => e,
        })?;
        let value_at = start + content.rfind(value).expect("value is in the line");
        let v = parse_rational(value).ok_or_else(|| Error::parse(value_at, format!("bad value {value:?}")))?;
        entries.push((x, v));
    }
    Ok(FiniteFunction::new(entries))
}

fn parse_rational(text: &str) -> Option<BigRational> {
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let whole = BigInt::from_str(int.trim_start_matches(['-', '+'])).ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let n = whole * &scale + BigInt::from_str(frac).ok()?;
        let n = if negative { -n } else { n };
        return Some(BigRational::new(n, scale));
    }
    let q = BigRational::from_str(text).ok()?;
    (!q.denom().is_zero()).then_some(q)
}

#[derive(Serialize)]
struct MaximalRecord {
    window: usize,
    n_max: usize,
    eta_floor: f64,
    mass: f64,
    weak_ratio: f64,
    argmax_eta: Option<f64>,
    level_set_size: usize,
    certificate: bool,
}

fn maximal_record<T: Weight>(p: &MaximalProfile<T>) -> MaximalRecord {
    let w = weak_type_ratio(p);
    MaximalRecord {
        window: p.window(),
        n_max: p.n_max(),
        eta_floor: p.eta_floor().to_f64(),
        mass: p.mass().to_f64(),
        weak_ratio: w.ratio,
        argmax_eta: w.argmax_eta,
        level_set_size: w.level_set_size,
        certificate: p.certificate_holds(),
    }
}

/// Indicators of `B_k` for `k <= 5` shrink the averaging range, keeping the
/// window inside `B_(k + n_max)`.
fn maximal_family(ball: &LayeredBall) -> Vec<(String, FiniteFunction<f64>)> {
    let model = ball.model();
    let mut out = vec![("delta_e".to_string(), FiniteFunction::delta(model.identity(), 1.0))];
    for k in 1..=5.min(ball.radius()) {
        let f = FiniteFunction::new(ball.elements()[..ball.ball_size(k)].iter().map(|x| (x.clone(), 1.0)));
        out.push((format!("ball_{k}"), f));
    }
    out
}

fn maximal(config: &RunConfig, model: &GroupModel, dir: &Path) -> Result<SuiteOutcome> {
    let n_max = config.n_max.unwrap_or(config.radius).max(1);
    let ball = ball(config, model, config.radius.max(n_max))?;
    if let Some(path) = &config.function {
        let f = parse_function(model, &std::fs::read_to_string(path)?)?;
        let profile = maximal_function(&ball, &f, &auto_floor(&ball, &f, n_max))?;
        let record = maximal_record(&profile);
        let mut files = vec!["maximal.json".to_string()];
        write_json(
            &dir.join(&files[0]),
            &json!({ "version": VERSION, "config": config, "result": record }),
        )?;
        if config.values {
            files.push("maximal_values.csv".into());
            let mut csv = CsvSink::create(&dir.join(&files[1]), &config.header()?, &["x", "distance", "Mf"])?;
            for (x, v) in profile.values() {
                csv.row(&[
                    model.format_element(x),
                    profile.support_distance(x).unwrap_or(0).to_string(),
                    v.to_string(),
                ])?;
            }
        }
        let best = Some((record.weak_ratio, path.clone()));
        return Ok(outcome("maximal", files, 1, best, crate::output::to_json(&record)?));
    }
    let file = "maximal.csv";
    let mut csv = CsvSink::create(
        &dir.join(file),
        &config.header()?,
        &[
            "function",
            "mass",
            "window",
            "n_max",
            "eta_floor",
            "weak_ratio",
            "argmax_eta",
            "level_set_size",
        ],
    )?;
    let family = maximal_family(&ball);
    let mut best = None;
    let mut records = Vec::new();
    for (name, f) in &family {
        // the support reaches radius k, so k + n_max stays near the ball
        let k = f.iter().map(|(x, _)| x.length()).max().unwrap_or(0);
        let n = n_max.min(k + 3).max(1);
        let profile =
            maximal_function(&ball, f, &auto_floor(&ball, f, n)).map_err(|e| e.in_cell(format!("function={name}")))?;
        let rec = maximal_record(&profile);
        track(&mut best, rec.weak_ratio, || format!("function={name}"));
        csv.row(&[
            name.clone(),
            fmt_real(rec.mass),
            rec.window.to_string(),
            rec.n_max.to_string(),
            fmt_real(rec.eta_floor),
            fmt_real(rec.weak_ratio),
            rec.argmax_eta.map_or("".into(), fmt_real),
            rec.level_set_size.to_string(),
        ])?;
        records.push(json!({ "function": name, "result": crate::output::to_json(&rec)? }));
    }
    Ok(outcome(
        "maximal",
        vec![file.into()],
        family.len(),
        best,
        Value::Array(records),
    ))
}

fn dist_check(config: &RunConfig, model: &GroupModel, dir: &Path) -> Result<SuiteOutcome> {
    let r_max = config.r.unwrap_or(6);
    if r_max == 0 {
        return Err(Error::precondition("dist-check needs r >= 1"));
    }
    let ball = ball(config, model, r_max.max(config.corpus_radius))?;
    let seed = config.corpus_seed.unwrap_or(config.seed);
    let corpus = dyadic_corpus(
        &ball,
        config.corpus_radius,
        config.corpus_size,
        config.max_exponent,
        seed,
    );
    let sweep = corpus_sweep(&ball, &corpus, r_max, config.b)?;
    let file = "dist_check.csv";
    let mut csv = CsvSink::create(
        &dir.join(file),
        &config.header()?,
        &["function", "r", "eta", "lhs", "rhs", "ratio"],
    )?;
    let mut best = None;
    for rep in &sweep.reports {
        let name = rep.digest.family.clone().unwrap_or_default();
        let r = rep.param("r").unwrap_or(0.0) as usize;
        track(&mut best, rep.ratio, || format!("function={name},r={r}"));
        csv.row(&[
            name,
            r.to_string(),
            fmt_real(rep.param("eta").unwrap_or(f64::NAN)),
            rep.lhs.value().to_string(),
            fmt_real(rep.rhs),
            fmt_real(rep.ratio),
        ])?;
    }
    let running: Vec<f64> = (1..=r_max).map(|r| sweep.running_max(r)).collect();
    let details = json!({ "corpus_seed": seed, "max_ratio": sweep.max_ratio, "running_max": running });
    let mut o = outcome("dist-check", vec![file.into()], sweep.reports.len(), best, details);
    o.reports = sweep.reports;
    Ok(o)
}

fn median(config: &RunConfig, model: &GroupModel, dir: &Path) -> Result<SuiteOutcome> {
    let word = |w: &Option<String>, name: &str| {
        let text = w
            .as_deref()
            .ok_or_else(|| Error::precondition(format!("median needs --{name}")))?;
        model.parse_element(text)
    };
    let (x, y, z) = (word(&config.x, "x")?, word(&config.y, "y")?, word(&config.z, "z")?);
    let radius = [model.distance(&x, &y), model.distance(&y, &z), model.distance(&x, &z)]
        .into_iter()
        .max()
        .unwrap_or(0);
    let ball = ball(config, model, radius)?;
    let candidates: BTreeSet<_> = median_candidates(&ball, &x, &y, &z)?;
    let words: Vec<String> = candidates.iter().map(|m| model.format_element(m)).collect();
    let file = "median.json";
    let record = json!({
        "version": VERSION,
        "config": config,
        "candidates": words,
        "singleton": words.len() == 1,
    });
    write_json(&dir.join(file), &record)?;
    Ok(outcome(
        "median",
        vec![file.into()],
        1,
        None,
        json!({ "candidates": words }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip_and_unknown_keys() {
        let c = RunConfig::from_json(r#"{"group":"free rank=2","radius":5}"#).unwrap();
        assert_eq!(c.radius, 5);
        assert_eq!(c.rmax, 6);
        assert_eq!(RunConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap(), c);
        let err = RunConfig::from_json(r#"{"group":"free rank=2","radiuss":5}"#).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn function_file_values() {
        let f2 = GroupModel::free(2);
        let f = parse_function(&f2, "e 1/2\n# comment\na.b 3\n\nb^-1 0.25\n").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(
            f.get(&f2.parse_element("b^-1").unwrap()),
            BigRational::new(1.into(), 4.into())
        );
        let err = parse_function(&f2, "e 1\na x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { position: 6, .. }));
    }
}
