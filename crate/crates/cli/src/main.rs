mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exact commutant computations for planar Newton derivations `(y, f(x))`.
#[derive(Debug, Parser)]
#[command(name = "ncomm", version, about)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis of the commutant of δ_f up to a y-degree bound.
    Commutant {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        max_deg_y: i64,
        /// Maximal x-degree of each coefficient (default from deg f and M).
        #[arg(long)]
        x_cap: Option<usize>,
    },
    /// Write γ as q(H)·δ_f.
    HDecompose {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma_dx: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma_dy: String,
    },
    /// Certify that the commutant up to y-degree M lies in K[H]·δ_f.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        max_deg_y: i64,
    },
    /// Build and solve one parity system.
    Parity {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        x_cap: Option<usize>,
    },
    /// Check the parity lemmas for all m up to a bound.
    Lemmas {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        m_max: usize,
        /// Run the checks even when deg f < 2.
        #[arg(long)]
        allow_degenerate: bool,
    },
    /// Obstruction polynomial P_m, its rational roots and the expected set.
    Pm {
        #[arg(long)]
        m: usize,
    },
    /// Commuting derivation whose h-degree is a root of P_m.
    PmWitness {
        #[arg(long)]
        m: usize,
        /// Laurent family index; omit for the (y, x) witness of the root 1.
        #[arg(long)]
        k: Option<u32>,
    },
    /// The commuting pair (α, β) over K[x^(±1/(2k-1)), y].
    LaurentFamily {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        a_top: String,
    },
    /// Commuting, transversal companion of a derivation of degree ≤ 1.
    Linearize {
        #[arg(long, allow_hyphen_values = true)]
        dx: String,
        #[arg(long, allow_hyphen_values = true)]
        dy: String,
    },
    /// Numeric check of the rectifying map of a commuting pair along a flow.
    FlowCheck {
        #[arg(long, allow_hyphen_values = true)]
        dx: String,
        #[arg(long, allow_hyphen_values = true)]
        dy: String,
        #[arg(long, allow_hyphen_values = true)]
        gx: String,
        #[arg(long, allow_hyphen_values = true)]
        gy: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, allow_hyphen_values = true)]
        y0: String,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        t_end: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
    },
    /// Run every acceptance criterion.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = commands::configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(commands::run(cli))
}
