use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "mcskit", version, about = "Maximal common subsequences of many strings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Randomized maximal common subsequences, one per run.
    Mcs(McsArgs),
    /// Exact longest common subsequence (small inputs only).
    Lcs(LcsArgs),
    /// One maximal common subsequence from the deterministic search.
    OneMcs(OneMcsArgs),
    /// Output counts and empirical probabilities over many runs, as JSON.
    Estimate(EstimateArgs),
    /// Generate a synthetic corpus.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Time single runs for several string counts and check linear scaling.
    Bench(BenchArgs),
    /// Infer a wildcard pattern for each column of a CSV file.
    Profile(ProfileArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Newline-delimited strings, one per line; `-` reads standard input.
    #[arg(long, short)]
    pub input: PathBuf,
    /// Drop duplicate strings before searching.
    #[arg(long)]
    pub dedup: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Pick characters in proportion to their multiplicity.
    #[arg(long)]
    pub weighted: bool,
    /// Common subsequence that every output must contain.
    #[arg(long, value_name = "W0")]
    pub constrain: Option<String>,
}

#[derive(Debug, Args)]
pub struct McsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
    /// Print only the longest output.
    #[arg(long)]
    pub longest: bool,
}

#[derive(Debug, Args)]
pub struct LcsArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct OneMcsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Search with the strings in reverse order.
    #[arg(long)]
    pub reverse_order: bool,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value_t = 1_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
}

#[derive(Debug, Subcommand)]
pub enum SimulateCommand {
    /// Strings with i.i.d. uniform characters.
    Random(RandomArgs),
    /// Strings with planted common subsequences in random filler.
    Planted(PlantedArgs),
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    /// Number of strings.
    #[arg(long, short = 'l')]
    pub strings: usize,
    /// Length of each string.
    #[arg(long, short = 'n')]
    pub length: usize,
    #[arg(long, default_value_t = 4)]
    pub alphabet: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output directory for `corpus.txt` and `metadata.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlantedArgs {
    /// Number of strings.
    #[arg(long, short = 'l')]
    pub strings: usize,
    /// Length of each string.
    #[arg(long, short = 'n', default_value_t = 60)]
    pub length: usize,
    /// Planted sequence lengths, planted in this order.
    #[arg(long, value_delimiter = ',', default_value = "3,6,9,12")]
    pub planted: Vec<usize>,
    /// Make the planted sequence at this index one repeated character.
    #[arg(long, value_name = "INDEX")]
    pub single_char: Option<usize>,
    /// Symbols used by planted sequences.
    #[arg(long, default_value_t = 15)]
    pub core_alphabet: usize,
    /// Symbols used by filler.
    #[arg(long, default_value_t = 30)]
    pub full_alphabet: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output directory for `corpus.txt` and `metadata.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Random,
    OneMcs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// String counts to time.
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
    pub l_values: Vec<usize>,
    /// Length of each string.
    #[arg(long, default_value_t = 60)]
    pub n: usize,
    /// Timed runs per string count.
    #[arg(long, default_value_t = 21, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub weighted: bool,
    #[arg(long, value_enum, default_value_t = Algorithm::Random)]
    pub algorithm: Algorithm,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    pub json: bool,
    /// Report without failing on a scaling violation.
    #[arg(long)]
    pub no_check: bool,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// CSV file with a header row; `-` reads standard input.
    #[arg(long)]
    pub csv: PathBuf,
    /// Profile only this column.
    #[arg(long)]
    pub column: Option<String>,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub runs: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub weighted: bool,
    /// Field delimiter: a single ASCII character, or `tab`.
    #[arg(long, default_value = ",", value_parser = parse_delimiter)]
    pub delimiter: u8,
    /// Print the report as JSON instead of a table.
    #[arg(long)]
    pub json: bool,
}

fn parse_delimiter(s: &str) -> Result<u8, String> {
    match s {
        "tab" | "\\t" => Ok(b'\t'),
        _ => match s.as_bytes() {
            [b] if b.is_ascii() => Ok(*b),
            _ => Err(format!("expected one ASCII character, got `{s}`")),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn delimiter_parsing() {
        assert_eq!(parse_delimiter(";"), Ok(b';'));
        assert_eq!(parse_delimiter("tab"), Ok(b'\t'));
        assert!(parse_delimiter("ab").is_err());
        assert!(parse_delimiter("é").is_err());
    }
}
