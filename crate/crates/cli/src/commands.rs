use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use mcskit::scaling::{measure_one_mcs_scaling, measure_scaling};
use mcskit::simgen::{write_corpus, CorpusMetadata, CORPUS_FILE};
use mcskit::{
    gen_planted, gen_random, lcs_dp, one_mcs, profile_csv, run_batch, McsError, Planted, PlantedSpec, RunSummary,
    StringSet, Subsequence, WeightingMode,
};
use serde::Serialize;
use thiserror::Error;

use crate::args::{
    Algorithm, BenchArgs, Command, EstimateArgs, InputArgs, LcsArgs, McsArgs, OneMcsArgs, PlantedArgs, ProfileArgs,
    RandomArgs, SearchArgs, SimulateCommand,
};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_GUARD: u8 = 3;
pub const EXIT_IO: u8 = 4;

/// Largest corpus `simulate` will write, in characters.
pub const MAX_CORPUS_CHARS: u128 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Mcs(#[from] McsError),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}: not valid UTF-8", path.display())]
    NotUtf8 { path: PathBuf },

    #[error("runtime does not scale linearly in the number of strings\n{0}")]
    ScalingViolation(String),

    #[error("broken pipe")]
    BrokenPipe,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mcs(e) => match e {
                McsError::GuardExceeded { .. } => EXIT_GUARD,
                McsError::Io(_) => EXIT_IO,
                McsError::Csv(c) if c.is_io_error() => EXIT_IO,
                McsError::Json(_) => EXIT_FAILURE,
                _ => EXIT_USAGE,
            },
            CliError::Io { .. } => EXIT_IO,
            CliError::NotUtf8 { .. } => EXIT_USAGE,
            CliError::ScalingViolation(_) => EXIT_FAILURE,
            CliError::BrokenPipe => 0,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            CliError::BrokenPipe
        } else {
            CliError::Io {
                path: PathBuf::from("<stdout>"),
                source: e,
            }
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

pub fn run(command: Command) -> CliResult {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Mcs(a) => mcs(a, &mut out)?,
        Command::Lcs(a) => lcs(a, &mut out)?,
        Command::OneMcs(a) => one(a, &mut out)?,
        Command::Estimate(a) => estimate(a, &mut out)?,
        Command::Simulate(SimulateCommand::Random(a)) => simulate_random(a, &mut out)?,
        Command::Simulate(SimulateCommand::Planted(a)) => simulate_planted(a, &mut out)?,
        Command::Bench(a) => bench(a, &mut out)?,
        Command::Profile(a) => profile(a, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn mode(weighted: bool) -> WeightingMode {
    if weighted {
        WeightingMode::FrequencyWeighted
    } else {
        WeightingMode::Uniform
    }
}

fn open(path: &Path) -> CliResult<Box<dyn Read>> {
    if path == Path::new("-") {
        return Ok(Box::new(io::stdin()));
    }
    let file = File::open(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    Ok(Box::new(file))
}

fn read_strings(args: &InputArgs) -> CliResult<StringSet> {
    let mut bytes = Vec::new();
    open(&args.input)?
        .read_to_end(&mut bytes)
        .map_err(|source| CliError::Io {
            path: args.input.clone(),
            source,
        })?;
    let text = String::from_utf8(bytes).map_err(|_| CliError::NotUtf8 {
        path: args.input.clone(),
    })?;
    let set = StringSet::parse_lines(&text)?;
    Ok(if args.dedup { set.dedup() } else { set })
}

fn outputs(set: &StringSet, search: &SearchArgs, runs: u64) -> CliResult<Vec<Subsequence>> {
    let start = search.constrain.as_deref().map(Subsequence::from);
    Ok(run_batch(
        set,
        runs,
        search.seed,
        mode(search.weighted),
        start.as_ref(),
    )?)
}

fn mcs(a: McsArgs, out: &mut impl Write) -> CliResult {
    let set = read_strings(&a.input)?;
    let outputs = outputs(&set, &a.search, a.runs)?;
    if a.longest {
        writeln!(out, "{}", RunSummary::from_outputs(outputs).longest)?;
    } else {
        for w in outputs {
            writeln!(out, "{w}")?;
        }
    }
    Ok(())
}

fn lcs(a: LcsArgs, out: &mut impl Write) -> CliResult {
    let set = read_strings(&a.input)?;
    let w = lcs_dp(&set)?;
    writeln!(out, "{w}")?;
    writeln!(out, "length {}", w.len())?;
    Ok(())
}

fn one(a: OneMcsArgs, out: &mut impl Write) -> CliResult {
    let set = read_strings(&a.input)?;
    let set = if a.reverse_order { set.reversed() } else { set };
    writeln!(out, "{}", one_mcs(&set))?;
    Ok(())
}

#[derive(Serialize)]
struct EstimateReport<'a> {
    seed: u64,
    mode: WeightingMode,
    constraint: Option<&'a str>,
    #[serde(flatten)]
    summary: RunSummary,
}

fn estimate(a: EstimateArgs, out: &mut impl Write) -> CliResult {
    let set = read_strings(&a.input)?;
    let summary = RunSummary::from_outputs(outputs(&set, &a.search, a.runs)?);
    let report = EstimateReport {
        seed: a.search.seed,
        mode: mode(a.search.weighted),
        constraint: a.search.constrain.as_deref(),
        summary,
    };
    serde_json::to_writer_pretty(&mut *out, &report).map_err(McsError::from)?;
    writeln!(out)?;
    Ok(())
}

fn check_corpus_size(num_strings: usize, length: usize) -> CliResult {
    let estimate = num_strings as u128 * length as u128;
    if estimate > MAX_CORPUS_CHARS {
        return Err(McsError::GuardExceeded {
            what: "corpus size in characters",
            estimate,
            limit: MAX_CORPUS_CHARS,
        }
        .into());
    }
    Ok(())
}

fn write_out(dir: &Path, strings: &StringSet, meta: &CorpusMetadata, out: &mut impl Write) -> CliResult {
    write_corpus(dir, strings, meta).map_err(|e| match e {
        McsError::Io(source) => CliError::Io {
            path: dir.to_owned(),
            source,
        },
        other => other.into(),
    })?;
    writeln!(out, "{}", dir.join(CORPUS_FILE).display())?;
    Ok(())
}

fn simulate_random(a: RandomArgs, out: &mut impl Write) -> CliResult {
    check_corpus_size(a.strings, a.length)?;
    let strings = gen_random(a.strings, a.length, a.alphabet, a.seed)?;
    let meta = CorpusMetadata::Random {
        num_strings: a.strings,
        string_length: a.length,
        alphabet_size: a.alphabet,
        seed: a.seed,
    };
    write_out(&a.out, &strings, &meta, out)
}

fn simulate_planted(a: PlantedArgs, out: &mut impl Write) -> CliResult {
    check_corpus_size(a.strings, a.length)?;
    let mut spec = PlantedSpec {
        num_strings: a.strings,
        string_length: a.length,
        planted: a.planted.iter().copied().map(Planted::Random).collect(),
        core_alphabet_size: a.core_alphabet,
        full_alphabet_size: a.full_alphabet,
        seed: a.seed,
    };
    if let Some(i) = a.single_char {
        if i >= spec.planted.len() {
            return Err(McsError::InvalidSpec(format!(
                "--single-char {i} is out of range for {} planted sequences",
                spec.planted.len()
            ))
            .into());
        }
        spec = spec.with_single_char(i);
    }
    let corpus = gen_planted(&spec)?;
    let meta = CorpusMetadata::Planted {
        spec: corpus.spec.clone(),
        planted: corpus.planted.clone(),
    };
    write_out(&a.out, &corpus.strings, &meta, out)
}

fn bench(a: BenchArgs, out: &mut impl Write) -> CliResult {
    if let Some(&l) = a.l_values.iter().max() {
        check_corpus_size(l, a.n)?;
    }
    let report = match a.algorithm {
        Algorithm::Random => measure_scaling(&a.l_values, a.n, a.runs, a.seed, mode(a.weighted))?,
        Algorithm::OneMcs => measure_one_mcs_scaling(&a.l_values, a.n, a.runs, a.seed)?,
    };
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(McsError::from)?;
        writeln!(out)?;
    } else {
        write!(out, "{}", report.to_table())?;
    }
    if !a.no_check && !report.is_linear() {
        return Err(CliError::ScalingViolation(report.to_table()));
    }
    Ok(())
}

fn profile(a: ProfileArgs, out: &mut impl Write) -> CliResult {
    if a.csv != Path::new("-") {
        // Surface a missing file as an I/O error with its path.
        fs::metadata(&a.csv).map_err(|source| CliError::Io {
            path: a.csv.clone(),
            source,
        })?;
    }
    let report = profile_csv(
        open(&a.csv)?,
        a.delimiter,
        a.column.as_deref(),
        a.runs,
        a.seed,
        mode(a.weighted),
    )?;
    if a.json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(McsError::from)?;
        writeln!(out)?;
    } else {
        write!(out, "{}", report.to_table())?;
    }
    Ok(())
}
