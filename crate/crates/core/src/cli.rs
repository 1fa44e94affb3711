//! Command-line front end. Every exact value is printed as `num/den`
//! followed by a 15-place decimal.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::asymptotics::poisson_approximation;
use crate::automaton::{
    automaton_gf, automaton_series, build_clump_automaton, build_x_set, export_dot,
};
use crate::clump_gf::{
    clump_count_gf, clump_size_distribution, clump_statistics_gf, clump_text_gf,
    expected_clumps_gf, expected_coverage_gf, kclump_gf_any, moment_series, ClumpStatisticsGF,
};
use crate::correlation::{
    autocorrelation_set, correlation_matrix, extension_matrix, minimal_extension_matrix,
    prefix_code, prefix_code_by_trie, prefix_code_matrix, right_extension_set,
};
use crate::error::Error;
use crate::languages::{multi_occurrence_gf, occurrence_gf, single_word_languages};
use crate::model::{parse_model, Alphabet, ReducedWordSet, TextModel, Word};
use crate::oracle::{
    exhaustive_joint, monte_carlo, project, JointTable, Statistic, DEFAULT_BUDGET,
};
use crate::symbolic::{series_coefficients, Poly, RatFunc, SeriesTable, Var};
use crate::Q;

#[derive(Parser, Debug)]
#[command(
    name = "clumpstat",
    version,
    about = "Exact clump statistics of word sets in random texts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Correlation, right extension and prefix-code sets.
    Correlate(Common),
    /// Print generating functions.
    Gf(GfArgs),
    /// Mean and variance of clump count, occurrences and coverage.
    Moments(RangeArgs),
    /// Exact distribution of a statistic at one length.
    Distribution(DistributionArgs),
    /// Exact distribution of the number of k-clumps.
    Kclumps(KclumpArgs),
    /// Expected covered positions and coverage probability.
    Coverage(RangeArgs),
    /// Clump automaton as DOT, with its generating function.
    Automaton(AutomatonArgs),
    /// Compare every generating function with exhaustive enumeration.
    Verify(VerifyArgs),
    /// Monte Carlo law of a statistic.
    Simulate(SimulateArgs),
    /// Dominant root and the rare-word approximation of P(k clumps).
    Asymptotics(AsymptoticsArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Comma separated reduced word set.
    #[arg(long, visible_alias = "word", value_name = "W1,W2")]
    pub words: String,
    /// Text model file; defaults to the uniform model.
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Letters of the default uniform model; defaults to `ab` plus the
    /// letters of the words.
    #[arg(long)]
    pub alphabet: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Args, Debug)]
pub struct GfArgs {
    #[command(flatten)]
    pub common: Common,
    /// Only these generating functions (comma separated).
    #[arg(long)]
    pub name: Option<String>,
}

#[derive(Args, Debug)]
pub struct RangeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, conflicts_with = "n_range")]
    pub n: Option<usize>,
    /// Inclusive range `A..B`.
    #[arg(long, value_name = "A..B")]
    pub n_range: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    Clumps,
    Occurrences,
    Coverage,
}

#[derive(Args, Debug)]
pub struct DistributionArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = StatArg::Clumps)]
    pub stat: StatArg,
}

#[derive(Args, Debug)]
pub struct KclumpArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct AutomatonArgs {
    #[command(flatten)]
    pub common: Common,
    /// Write the DOT rendering here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub dot: Option<PathBuf>,
    /// Also print the generating function.
    #[arg(long)]
    pub gf: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Largest text length compared.
    #[arg(long, visible_alias = "horizon", default_value_t = 12)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = StatArg::Clumps)]
    pub stat: StatArg,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

/// Why a command failed; each kind has its own exit status.
#[derive(Debug)]
pub enum Failure {
    Parse(String),
    Validation(String),
    Mismatch(String),
    Other(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Validation(_) => 3,
            Failure::Other(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m)
            | Failure::Validation(m)
            | Failure::Mismatch(m)
            | Failure::Other(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse { .. } => Failure::Parse(msg),
            Error::MinLength(_)
            | Error::NotReduced { .. }
            | Error::Duplicate(_)
            | Error::Domain(_) => Failure::Validation(msg),
            _ => Failure::Other(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses arguments, runs the command and returns the exit status.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("clumpstat: {}", f.message());
            f.exit_code()
        }
    }
}

/// Exact decimal expansion rounded to 15 places.
pub fn decimal(q: &Q) -> String {
    let scale = BigInt::from(10u64.pow(15));
    let scaled = (q.abs() * Q::from_integer(scale.clone()))
        .round()
        .to_integer();
    let (int, frac) = (&scaled / &scale, &scaled % &scale);
    let sign = if q.is_negative() && !scaled.is_zero() {
        "-"
    } else {
        ""
    };
    format!("{sign}{int}.{frac:0>15}")
}

#[derive(Clone, Debug)]
enum Cell {
    Text(String),
    Int(u64),
    Exact(Q),
    Float(f64),
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Tsv => self.write_tsv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_tsv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let first = self.rows.first();
        let header: Vec<String> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(i, c)| match first.map(|r| &r[i]) {
                Some(Cell::Exact(_)) => vec![c.to_string(), format!("{c}_decimal")],
                _ => vec![c.to_string()],
            })
            .collect();
        writeln!(out, "{}", header.join("\t"))?;
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .flat_map(|c| match c {
                    Cell::Text(s) => vec![s.clone()],
                    Cell::Int(i) => vec![i.to_string()],
                    Cell::Exact(q) => vec![q.to_string(), decimal(q)],
                    Cell::Float(x) => vec![format!("{x:.15e}")],
                })
                .collect();
            writeln!(out, "{}", fields.join("\t"))?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (c, cell) in self.columns.iter().zip(row) {
                    match cell {
                        Cell::Text(s) => {
                            obj.insert(c.to_string(), s.clone().into());
                        }
                        Cell::Int(i) => {
                            obj.insert(c.to_string(), (*i).into());
                        }
                        Cell::Exact(q) => {
                            obj.insert(c.to_string(), q.to_string().into());
                            obj.insert(format!("{c}_decimal"), decimal(q).into());
                        }
                        Cell::Float(x) => {
                            obj.insert(
                                c.to_string(),
                                serde_json::Number::from_f64(*x)
                                    .map_or(serde_json::Value::Null, Into::into),
                            );
                        }
                    }
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *out, &rows)?;
        writeln!(out)
    }
}

fn text(s: impl Into<String>) -> Cell {
    Cell::Text(s.into())
}

fn word_list(words: &[Word]) -> String {
    let items: Vec<String> = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".into()
            } else {
                w.to_string()
            }
        })
        .collect();
    format!("{{{}}}", items.join(", "))
}

struct Context {
    set: ReducedWordSet,
    model: TextModel,
}

fn load(common: &Common) -> CliResult<Context> {
    let set = ReducedWordSet::parse(&common.words)?;
    let model = match &common.model {
        Some(path) => {
            let body = std::fs::read_to_string(path)
                .map_err(|e| Failure::Other(format!("cannot read {}: {e}", path.display())))?;
            parse_model(&body)?
        }
        None => {
            let letters = match &common.alphabet {
                Some(a) => a.clone(),
                None => {
                    let mut l: Vec<u8> = b"ab".to_vec();
                    l.extend(
                        set.words()
                            .iter()
                            .flat_map(|w| w.as_bytes().iter().copied()),
                    );
                    l.sort_unstable();
                    l.dedup();
                    String::from_utf8_lossy(&l).into_owned()
                }
            };
            TextModel::uniform(Alphabet::new(&letters)?)
        }
    };
    for w in set.words() {
        model.alphabet().check(w)?;
    }
    Ok(Context { set, model })
}

fn n_values(
    args: &RangeArgs,
    default: std::ops::RangeInclusive<usize>,
) -> CliResult<std::ops::RangeInclusive<usize>> {
    if let Some(n) = args.n {
        return Ok(n..=n);
    }
    let Some(r) = &args.n_range else {
        return Ok(default);
    };
    let (a, b) = r
        .split_once("..")
        .ok_or_else(|| Failure::Parse(format!("--n-range expects A..B, got '{r}'")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| Failure::Parse(format!("--n-range bound '{s}': {e}")))
    };
    let (a, b) = (parse(a)?, parse(b)?);
    if a > b {
        return Err(Failure::Validation(format!("empty range {a}..{b}")));
    }
    Ok(a..=b)
}

fn stat_mark(stat: StatArg) -> Var {
    match stat {
        StatArg::Clumps => Var::U,
        StatArg::Occurrences => Var::X,
        StatArg::Coverage => Var::T,
    }
}

fn marginal(stats: &ClumpStatisticsGF, stat: StatArg) -> CliResult<RatFunc> {
    Ok(match stat {
        StatArg::Clumps => stats.clump_count()?,
        StatArg::Occurrences => stats.total_occurrences()?,
        StatArg::Coverage => stats.coverage()?,
    })
}

/// Clump-count generating function, cheapest engine first.
fn clump_marginal(ctx: &Context) -> CliResult<RatFunc> {
    if ctx.set.len() == 1 && ctx.model.is_bernoulli() {
        Ok(clump_count_gf(&ctx.model, ctx.set.get(0))?)
    } else {
        Ok(clump_statistics_gf(&ctx.model, &ctx.set)?.clump_count()?)
    }
}

fn stat_marginal(ctx: &Context, stat: StatArg) -> CliResult<RatFunc> {
    match stat {
        StatArg::Clumps => clump_marginal(ctx),
        _ => marginal(&clump_statistics_gf(&ctx.model, &ctx.set)?, stat),
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Correlate(c) => correlate(c, out),
        Command::Gf(a) => gf(a, out),
        Command::Moments(a) => moments(a, out),
        Command::Distribution(a) => distribution(a, out),
        Command::Kclumps(a) => kclumps(a, out),
        Command::Coverage(a) => coverage(a, out),
        Command::Automaton(a) => automaton(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Simulate(a) => simulate(a, out),
        Command::Asymptotics(a) => asymptotics(a, out),
    }
}

fn correlate(c: &Common, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(c)?;
    let mut t = Table::new(&["set", "i", "j", "words"]);
    let cell = |i: usize| Cell::Int(i as u64 + 1);
    if ctx.set.len() == 1 {
        let w = ctx.set.get(0);
        let corr = autocorrelation_set(w);
        t.push(vec![
            text("C"),
            cell(0),
            cell(0),
            text(word_list(corr.words())),
        ]);
        t.push(vec![
            text("E"),
            cell(0),
            cell(0),
            text(word_list(right_extension_set(w, w).words())),
        ]);
        t.push(vec![
            text("K"),
            cell(0),
            cell(0),
            text(word_list(prefix_code(&corr).words())),
        ]);
        t.push(vec![
            text("K_trie"),
            cell(0),
            cell(0),
            text(word_list(prefix_code_by_trie(&corr).words())),
        ]);
    } else {
        let (cm, em, km, kmin) = (
            correlation_matrix(&ctx.set),
            extension_matrix(&ctx.set),
            prefix_code_matrix(&ctx.set),
            minimal_extension_matrix(&ctx.set),
        );
        for (name, rows) in [
            (
                "C",
                cm.iter()
                    .map(|r| r.iter().map(|c| c.words().to_vec()).collect())
                    .collect::<Vec<Vec<_>>>(),
            ),
            (
                "E",
                em.iter()
                    .map(|r| r.iter().map(|c| c.words().to_vec()).collect())
                    .collect(),
            ),
            (
                "K",
                km.iter()
                    .map(|r| r.iter().map(|c| c.words().to_vec()).collect())
                    .collect(),
            ),
            (
                "K_min",
                kmin.iter()
                    .map(|r| r.iter().map(|c| c.words().to_vec()).collect())
                    .collect(),
            ),
        ] {
            for (i, row) in rows.iter().enumerate() {
                for (j, words) in row.iter().enumerate() {
                    t.push(vec![text(name), cell(i), cell(j), text(word_list(words))]);
                }
            }
        }
    }
    t.write(c.format, out)?;
    Ok(())
}

fn gf(a: &GfArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    let mut named: Vec<(String, String)> = Vec::new();
    let show = |f: &RatFunc| f.to_string();
    if ctx.set.len() == 1 && ctx.model.is_bernoulli() {
        let w = ctx.set.get(0);
        let l = single_word_languages(&ctx.model, w)?;
        named.push(("C".into(), l.c.to_string()));
        named.push(("K".into(), l.k.to_string()));
        named.push(("D".into(), l.d.to_string()));
        named.push(("R".into(), show(&l.r)));
        named.push(("M".into(), show(&l.m)));
        named.push(("U".into(), show(&l.u)));
        named.push(("N".into(), show(&l.n)));
        named.push(("F".into(), show(&occurrence_gf(&ctx.model, w)?)));
        named.push(("O".into(), show(&clump_count_gf(&ctx.model, w)?)));
        named.push(("Gamma".into(), show(&expected_clumps_gf(&ctx.model, w)?)));
        named.push((
            "Coverage".into(),
            show(&expected_coverage_gf(&ctx.model, w)?),
        ));
        named.push(("G".into(), show(&clump_text_gf(&ctx.model, w)?.g)));
    } else {
        if ctx.model.is_bernoulli() {
            named.push((
                "F".into(),
                show(&multi_occurrence_gf(&ctx.model, &ctx.set)?),
            ));
        }
        let stats = clump_statistics_gf(&ctx.model, &ctx.set)?;
        named.push(("O".into(), show(&stats.clump_count()?)));
        named.push(("G".into(), show(&stats.g)));
    }
    if let Some(filter) = &a.name {
        let wanted: Vec<&str> = filter.split(',').map(str::trim).collect();
        if let Some(bad) = wanted.iter().find(|w| !named.iter().any(|(n, _)| n == *w)) {
            let known: Vec<&str> = named.iter().map(|(n, _)| n.as_str()).collect();
            return Err(Failure::Validation(format!(
                "unknown name '{bad}'; available: {}",
                known.join(", ")
            )));
        }
        named.retain(|(n, _)| wanted.contains(&n.as_str()));
    }
    let mut t = Table::new(&["name", "gf"]);
    for (n, f) in named {
        t.push(vec![text(n), text(f)]);
    }
    t.write(a.common.format, out)?;
    Ok(())
}

fn moments(a: &RangeArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    let range = n_values(a, 1..=20)?;
    let horizon = *range.end();
    let stats = clump_statistics_gf(&ctx.model, &ctx.set)?;
    let clumps = moment_series(&clump_marginal(&ctx)?, Var::U, horizon)?;
    let occ = moment_series(&stats.total_occurrences()?, Var::X, horizon)?;
    let cov = moment_series(&stats.coverage()?, Var::T, horizon)?;
    let mut t = Table::new(&[
        "n",
        "clumps_mean",
        "clumps_var",
        "occurrences_mean",
        "occurrences_var",
        "coverage_mean",
        "coverage_var",
    ]);
    for n in range {
        t.push(vec![
            Cell::Int(n as u64),
            Cell::Exact(clumps[n].0.clone()),
            Cell::Exact(clumps[n].1.clone()),
            Cell::Exact(occ[n].0.clone()),
            Cell::Exact(occ[n].1.clone()),
            Cell::Exact(cov[n].0.clone()),
            Cell::Exact(cov[n].1.clone()),
        ]);
    }
    t.write(a.common.format, out)?;
    Ok(())
}

fn law_table(
    series: &SeriesTable,
    n: usize,
    mark: Var,
    label: &'static str,
    format: Format,
    out: &mut dyn Write,
) -> CliResult<()> {
    let mut t = Table::new(&[label, "probability"]);
    for (i, p) in series.distribution(n, mark).into_iter().enumerate() {
        t.push(vec![Cell::Int(i as u64), Cell::Exact(p)]);
    }
    t.write(format, out)?;
    Ok(())
}

fn distribution(a: &DistributionArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    let f = stat_marginal(&ctx, a.stat)?;
    let s = series_coefficients(&f, a.n)?;
    law_table(&s, a.n, stat_mark(a.stat), "value", a.common.format, out)
}

fn kclumps(a: &KclumpArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    if !ctx.model.is_bernoulli() {
        return Err(Failure::Other(
            "k-clump generating functions need a Bernoulli model".into(),
        ));
    }
    let f = kclump_gf_any(&ctx.model, &ctx.set, a.k)?;
    let s = series_coefficients(&f, a.n)?;
    law_table(&s, a.n, Var::V, "kclumps", a.common.format, out)
}

fn coverage(a: &RangeArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    let range = n_values(a, 1..=20)?;
    let cov = clump_statistics_gf(&ctx.model, &ctx.set)?.coverage()?;
    let m = moment_series(&cov, Var::T, *range.end())?;
    let mut t = Table::new(&["n", "expected_covered", "coverage_probability"]);
    for n in range {
        if n == 0 {
            continue;
        }
        let h = &m[n].0 / Q::from_integer((n as i64).into());
        t.push(vec![
            Cell::Int(n as u64),
            Cell::Exact(m[n].0.clone()),
            Cell::Exact(h),
        ]);
    }
    t.write(a.common.format, out)?;
    Ok(())
}

fn automaton(a: &AutomatonArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    let aut = build_clump_automaton(&build_x_set(&ctx.set), ctx.model.alphabet())?;
    let dot = export_dot(&aut);
    match &a.dot {
        Some(path) => std::fs::write(path, &dot)?,
        None if !a.gf => {
            out.write_all(dot.as_bytes())?;
            return Ok(());
        }
        None => {}
    }
    let mut t = Table::new(&["key", "value"]);
    t.push(vec![text("states"), text(aut.num_states().to_string())]);
    t.push(vec![
        text("final_states"),
        text(word_list(
            &aut.final_states()
                .into_iter()
                .map(|s| aut.state(s).clone())
                .collect::<Vec<_>>(),
        )),
    ]);
    t.push(vec![text("x_set"), text(word_list(&aut.x_set().words))]);
    if a.gf {
        t.push(vec![
            text("gf"),
            text(automaton_gf(&aut, &ctx.model)?.g.to_string()),
        ]);
    }
    t.write(a.common.format, out)?;
    Ok(())
}

fn joint_poly(joint: &JointTable, markers: &[Var]) -> Poly {
    let mut p = Poly::zero();
    for (t, prob) in joint {
        let mut m = Poly::constant(prob.clone());
        for (i, &c) in t.occurrences.iter().enumerate() {
            m = &m * &Poly::var(markers[i]).pow(c);
        }
        m = &m * &Poly::var(Var::U).pow(t.clumps);
        m = &m * &Poly::var(Var::T).pow(t.coverage);
        p = &p + &m;
    }
    p
}

fn compare_laws(
    view: &str,
    series: &SeriesTable,
    mark: Var,
    joints: &[JointTable],
    stat: impl Fn(usize) -> Statistic,
) -> CliResult<()> {
    for (n, joint) in joints.iter().enumerate() {
        let gf = series.distribution(n, mark);
        let oracle = project(joint, n, stat(n)).to_vec();
        let len = gf.len().max(oracle.len());
        for i in 0..len {
            let a = gf.get(i).cloned().unwrap_or_else(Q::zero);
            let b = oracle.get(i).cloned().unwrap_or_else(Q::zero);
            if a != b {
                return Err(Failure::Mismatch(format!(
                    "{view}: n = {n}, value {i}: generating function {a}, enumeration {b}"
                )));
            }
        }
    }
    Ok(())
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    let n_max = a.n;
    let joints: Vec<JointTable> = (0..=n_max)
        .map(|n| exhaustive_joint(&ctx.model, &ctx.set, n, a.budget))
        .collect::<Result<_, _>>()?;
    let stats = clump_statistics_gf(&ctx.model, &ctx.set)?;
    let markers = stats.markers.clone();
    let mut t = Table::new(&["view", "n_max", "status"]);
    let pass =
        |view: &str, t: &mut Table| t.push(vec![text(view), Cell::Int(n_max as u64), text("ok")]);

    compare_laws(
        "clumps",
        &series_coefficients(&clump_marginal(&ctx)?, n_max)?,
        Var::U,
        &joints,
        |_| Statistic::ClumpCount,
    )?;
    pass("clumps", &mut t);
    if ctx.model.is_bernoulli() {
        for k in 1..=2 {
            let s = series_coefficients(&kclump_gf_any(&ctx.model, &ctx.set, k)?, n_max)?;
            compare_laws(&format!("{k}-clumps"), &s, Var::V, &joints, |_| {
                Statistic::KClumpCount(k)
            })?;
            pass(if k == 1 { "1-clumps" } else { "2-clumps" }, &mut t);
        }
    } else {
        t.push(vec![
            text("k-clumps"),
            Cell::Int(n_max as u64),
            text("skipped: Bernoulli models only"),
        ]);
    }
    let occ = series_coefficients(&stats.total_occurrences()?, n_max)?;
    compare_laws("occurrences", &occ, Var::X, &joints, |_| {
        Statistic::Occurrences
    })?;
    pass("occurrences", &mut t);
    compare_laws(
        "coverage",
        &series_coefficients(&stats.coverage()?, n_max)?,
        Var::T,
        &joints,
        |_| Statistic::Coverage,
    )?;
    pass("coverage", &mut t);

    let full = series_coefficients(&stats.g, n_max)?;
    let aut = build_clump_automaton(&build_x_set(&ctx.set), ctx.model.alphabet())?;
    let mut keep = aut.markers();
    keep.extend([Var::U, Var::T]);
    let by_automaton = automaton_series(&aut, &ctx.model, &keep, n_max)?;
    for (n, joint) in joints.iter().enumerate() {
        let expect = joint_poly(joint, &markers);
        if full.coeff(n) != &expect {
            return Err(Failure::Mismatch(format!(
                "joint: n = {n}: {} vs {expect}",
                full.coeff(n)
            )));
        }
        if by_automaton.coeff(n) != &expect {
            return Err(Failure::Mismatch(format!(
                "automaton: n = {n}: {} vs {expect}",
                by_automaton.coeff(n)
            )));
        }
    }
    pass("joint", &mut t);
    pass("automaton", &mut t);
    t.write(a.common.format, out)?;
    Ok(())
}

fn simulate(a: &SimulateArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    let stat = match a.stat {
        StatArg::Clumps => Statistic::ClumpCount,
        StatArg::Occurrences => Statistic::Occurrences,
        StatArg::Coverage => Statistic::Coverage,
    };
    let mc = monte_carlo(&ctx.model, &ctx.set, a.n, stat, a.samples, a.seed)?;
    let exact = if a.n <= 200 {
        let s = series_coefficients(&stat_marginal(&ctx, a.stat)?, a.n)?;
        Some(s.distribution(a.n, stat_mark(a.stat)))
    } else {
        None
    };
    let mut t = Table::new(&["value", "frequency", "standard_error", "exact"]);
    for &v in mc.counts.keys() {
        let ex = match &exact {
            Some(d) => Cell::Exact(d.get(v as usize).cloned().unwrap_or_else(Q::zero)),
            None => text("-"),
        };
        t.push(vec![
            Cell::Int(v as u64),
            Cell::Float(mc.frequency(v)),
            Cell::Float(mc.standard_error(v)),
            ex,
        ]);
    }
    t.write(a.common.format, out)?;
    Ok(())
}

fn asymptotics(a: &AsymptoticsArgs, out: &mut dyn Write) -> CliResult<()> {
    let ctx = load(&a.common)?;
    if ctx.set.len() != 1 || !ctx.model.is_bernoulli() {
        return Err(Failure::Other(
            "asymptotics need one word and a Bernoulli model".into(),
        ));
    }
    let w = ctx.set.get(0);
    let p = poisson_approximation(&ctx.model, w, a.n, a.k)?;
    if p.pre_asymptotic {
        eprintln!("clumpstat: n < |w|; the approximation is pre-asymptotic");
    } else if !p.rare_word {
        eprintln!(
            "clumpstat: warning: {w} is below the rare-word threshold for n = {}",
            a.n
        );
    }
    let mut t = Table::new(&["key", "value"]);
    t.push(vec![text("exact"), text(p.exact.to_string())]);
    t.push(vec![text("exact_decimal"), text(decimal(&p.exact))]);
    for (k, v) in [
        ("leading_term", p.leading_term),
        ("ratio", p.ratio()),
        ("closed_form", p.display),
        ("closed_form_ratio", p.display_ratio()),
        ("rho", p.rho),
        ("Q(rho)", p.q_rho),
        ("P(rho)", p.p_rho),
        ("K(rho)", p.k_rho),
    ] {
        t.push(vec![text(k), text(format!("{v:.15e}"))]);
    }
    if let Ok(law) = clump_size_distribution(&ctx.model, w, w.len()) {
        if let Some(c) = law.normalization {
            t.push(vec![
                text("clump_mass"),
                text(format!("{c} ({})", decimal(&c))),
            ]);
        }
    }
    t.write(a.common.format, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (CliResult<()>, String) {
        let cli =
            Cli::try_parse_from(std::iter::once("clumpstat").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let r = run(&cli, &mut buf);
        (r, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&Q::new(5.into(), 8.into())), "0.625000000000000");
        assert_eq!(
            decimal(&Q::new((-1).into(), 3.into())),
            "-0.333333333333333"
        );
        assert_eq!(decimal(&Q::new(2.into(), 3.into())), "0.666666666666667");
        assert_eq!(decimal(&Q::from_integer(3.into())), "3.000000000000000");
    }

    #[test]
    fn correlate_prints_prefix_code() {
        let (r, out) = run_args(&["correlate", "--word", "abaabaaba"]);
        r.unwrap();
        assert!(out.contains("K\t1\t1\t{aba, baabaaba}"), "{out}");
    }

    #[test]
    fn distribution_of_aa() {
        let (r, out) = run_args(&["distribution", "--words", "aa", "--n", "3"]);
        r.unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[1], "0\t5/8\t0.625000000000000");
        assert_eq!(lines[2], "1\t3/8\t0.375000000000000");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn verify_passes() {
        let (r, out) = run_args(&["verify", "--words", "aa", "--n", "10"]);
        r.unwrap();
        assert_eq!(out.matches("\tok").count(), 7);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(dispatch(["clumpstat", "gf", "--words", "a"]), 3);
        assert_eq!(dispatch(["clumpstat", "gf", "--words", "ab,aab"]), 3);
        assert_eq!(
            dispatch([
                "clumpstat",
                "gf",
                "--words",
                "aa",
                "--model",
                "/nonexistent/model"
            ]),
            4
        );
        assert_eq!(dispatch(["clumpstat", "frobnicate"]), 2);
        assert_eq!(
            dispatch(["clumpstat", "gf", "--words", "aa", "--name", "N"]),
            0
        );
    }

    #[test]
    fn json_mirrors_tsv() {
        let (r, out) = run_args(&[
            "distribution",
            "--words",
            "aa",
            "--n",
            "3",
            "--format",
            "json",
        ]);
        r.unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["probability"], "5/8");
        assert_eq!(v[1]["probability_decimal"], "0.375000000000000");
    }

    #[test]
    fn automaton_summary() {
        let (r, out) = run_args(&["automaton", "--words", "bababa"]);
        r.unwrap();
        assert!(out.starts_with("digraph"));
        assert_eq!(out.matches("[label=").count(), 11 + 22);
    }
}
