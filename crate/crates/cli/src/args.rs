use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use koszul_core::operad::{Family, RankMode};

#[derive(Debug, Parser)]
#[command(
    name = "koszul",
    version,
    about = "Series inversion, operad dimensions and Koszulity evidence"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// exact, modular or auto (exact up to the column threshold).
    #[arg(long, global = true, default_value = "auto")]
    pub rank_mode: RankMode,
    /// Columns above which auto mode switches to modular rank.
    #[arg(long, global = true, default_value_t = 2000)]
    pub exact_threshold: usize,
    /// Independent primes that must agree in modular mode.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub primes: u32,
    #[arg(long, global = true, default_value_t = 0x6b6f_737a_756c)]
    pub seed: u64,
    #[arg(long, global = true, env = "KOSZUL_MAX_TREES", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_trees: Option<u64>,
    #[arg(long, global = true, env = "KOSZUL_MAX_ENTRIES", value_parser = clap::value_parser!(u64).range(1..))]
    pub max_entries: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long, global = true, env = "KOSZUL_TIME_BUDGET")]
    pub time_budget: Option<f64>,
    /// Seconds between progress lines on stderr for long searches (0 = off).
    #[arg(long, global = true, default_value_t = 5.0)]
    pub progress_every: f64,
    /// Compare against an embedded reference entry instead of printing;
    /// exits with status 4 on mismatch.
    #[arg(long, global = true, value_name = "ID")]
    pub reproduce: Option<String>,
}

impl Global {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Debug, Args, Clone, Copy)]
pub struct OperadArgs {
    #[arg(long, default_value = "partial")]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compositional inverse of a series.
    Invert {
        #[arg(long)]
        series: String,
        #[arg(long)]
        order: Option<usize>,
    },
    /// First negative coefficient in the inverse of t - t^n + t^{2n-1},
    /// or with --gp/--gdual the functional equation g_P(-g_dual(-t)) = t.
    Gk {
        #[arg(long, required_unless_present = "gp")]
        n: Option<usize>,
        #[arg(long, default_value_t = 2000)]
        bound: usize,
        #[arg(long, requires = "gdual")]
        gp: Option<String>,
        #[arg(long, requires = "gp")]
        gdual: Option<String>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Table of p with the first negative coefficient at t^{p(n-1)+1}.
    Table {
        #[arg(long, default_value = "2..7")]
        n: String,
        #[arg(long, default_value_t = 2000)]
        bound: usize,
        /// Also write the figure data as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write the figure as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Arity dimensions for p = 0..=max-p.
    Dims {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long)]
        max_p: usize,
    },
    /// Generating series sum (-1)^{pd} dim t^{p(n-1)+1}.
    Series {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long)]
        max_p: usize,
    },
    /// Koszul dual presentation.
    Dual {
        #[command(flatten)]
        operad: OperadArgs,
    },
    /// Generator series of the minimal model and its first zero run.
    Gap {
        #[command(flatten)]
        operad: OperadArgs,
        #[arg(long)]
        max_p: usize,
    },
    /// Evidence report over a range of arities.
    Scan {
        #[arg(long, default_value = "2..4")]
        n: String,
        /// Generator degree; by default opposite in parity to n.
        #[arg(long, allow_hyphen_values = true)]
        d: Option<i64>,
        #[arg(long, default_value_t = 2000)]
        bound: usize,
        /// Defaults to n + 2.
        #[arg(long)]
        max_p: Option<usize>,
    },
    /// Real critical points of z - z^n + z^{2n-1}.
    CriticalPoints {
        #[arg(long, default_value = "2..8")]
        n: String,
    },
    /// Figure of p against n as SVG (stdout unless --svg is given).
    Plot {
        #[arg(long, default_value = "2..7")]
        n: String,
        #[arg(long, default_value_t = 2000)]
        bound: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run embedded reference checks (all, or the given ids).
    Reproduce {
        ids: Vec<String>,
        /// List the manifest without computing.
        #[arg(long)]
        list: bool,
        /// Cap on search bounds of first-negative rows.
        #[arg(long)]
        search_cap: Option<usize>,
        /// Include entries marked as stretch goals.
        #[arg(long)]
        stretch: bool,
    },
}

/// `"4"`, `"2..7"`, `"2..=7"` or `"2,3,8"`.
pub fn parse_n_list(text: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("cannot read arity list {text:?}");
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let list = if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        (num(a)?..=num(b)?).collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    if list.is_empty() || list.iter().any(|&n| n < 2) {
        return Err(format!(
            "arity list {text:?} must be nonempty with every n >= 2"
        ));
    }
    Ok(list)
}
