//! `scalekit` — command-line front end for the scale/gauge/weight library.
//!
//! Every subcommand maps one-to-one onto a library operation; reports come
//! out as JSON (with an envelope), CSV (fixed header per subcommand) or
//! text (spelling out the checked condition).
//!
//! Exit codes: 0 when the condition holds or a value was computed, 1 when a
//! probe found a violation, 2 when the evidence was inconclusive, 3 for
//! usage errors.
//!
//! A `--config FILE` of `key = value` lines mirrors the long flags of the
//! chosen subcommand; flags given on the command line win.  Unknown keys
//! are rejected exactly like unknown flags.

mod handlers;
mod out;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use out::Format;

#[derive(Parser)]
#[command(name = "scalekit", version, about = "Scales, gauges and weights on groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Optional `key = value` config file mirroring the subcommand's flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Exact shell and ball sizes of the Cayley ball, optionally fitted to
    /// a polynomial or exponential growth model
    Growth {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        /// Fit `|B_n|` against the two growth models
        #[arg(long)]
        classify: bool,
    },
    /// BFS word gauge of one element
    Gauge {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long)]
        element: String,
    },
    /// Gauge/weight axioms of a scale on the enumerated ball
    CheckAxioms {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        /// Declared kind for `table:`-backed scales (gauge|weight|scale)
        #[arg(long, default_value = "scale")]
        scale_kind: String,
    },
    /// sigma1(g) <= C * sigma2(g)^m + D over the ball
    Dominates {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale1: String,
        #[arg(long)]
        scale2: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long, default_value_t = 8)]
        exp_max: u32,
        #[arg(long, default_value_t = 8)]
        d_max: u32,
    },
    /// tau1(g) <= C * tau2(g) + D over the ball
    StrongDominates {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale1: String,
        #[arg(long)]
        scale2: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long, default_value_t = 8)]
        d_max: u32,
    },
    /// Shifted scales sigma(g^-1 h) polynomially dominated by sigma
    TranslationEquiv {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        /// `;`-separated shift elements (default: standard generators)
        #[arg(long)]
        shifts: Option<String>,
        #[arg(long, default_value_t = 8)]
        exp_max: u32,
        #[arg(long, default_value_t = 8)]
        d_max: u32,
    },
    /// sigma(gh) <= C * ((1+sigma(g))(1+sigma(h)))^d over ball pairs
    Subpoly {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long, default_value_t = 8)]
        exp_max: u32,
    },
    /// Chain condition sigma(g1...gn) <= C^n * prod sigma(gi)^l
    Msubpoly {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        /// Ball radius backing word-based scales
        #[arg(long, default_value_t = 12)]
        radius: u32,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, default_value_t = 4)]
        lmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random chains per length once enumeration is too large
        #[arg(long, default_value_t = 200)]
        samples: u32,
    },
    /// Submultiplicative-seminorm search over the weighted group algebra
    MconvexProbe {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        /// Ball radius backing word-based scales
        #[arg(long, default_value_t = 20)]
        radius: u32,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, default_value_t = 4)]
        kmax: u32,
    },
    /// ||Ad_g|| <= C * sigma(g)^p + D on sampled elements
    BoundsAd {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        #[arg(long, default_value_t = 8)]
        levels: u32,
        /// Total sample budget (required; spread over the levels)
        #[arg(long)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        exp_max: u32,
        #[arg(long, default_value_t = 8)]
        d_max: u32,
    },
    /// Are all eigenvalues of Ad_g on the unit circle?
    TypeR {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 6)]
        levels: u32,
        /// Total sample budget (required; spread over the levels)
        #[arg(long)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = scalekit::adjoint::TYPE_R_TOL)]
        tol: f64,
    },
    /// max_entry(g) <= C * P_q(tau(g)) on the unitriangular ball
    UnipotentBound {
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long, default_value_t = 6)]
        radius: u32,
    },
    /// Bounded-parameter factorization of an affine element (a, b)
    AxbDecompose {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// The two canonical scales sigma and theta at one SL(2,R) element
    Sl2Scales {
        #[arg(long)]
        element: String,
    },
    /// Convolution of two finitely supported rational functions
    Convolve {
        #[arg(long)]
        group: String,
        /// File of `<element> <rational>` lines
        #[arg(long)]
        phi: PathBuf,
        /// File of `<element> <rational>` lines
        #[arg(long)]
        psi: PathBuf,
        /// Also check ||phi*psi||_m <= C ||phi||_dm ||psi||_dm
        #[arg(long)]
        scale: Option<String>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// Weighted seminorm ||f||_m = sum sigma^m |f|
    Seminorm {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        #[arg(long)]
        function: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// Involution f*(g) = conj(f(g^-1))
    Involution {
        #[arg(long)]
        group: String,
        #[arg(long)]
        function: PathBuf,
    },
    /// log of sigma^m(g1...gn) / prod sigma^k(gi) through delta convolutions
    DeltaRatio {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        /// `;`-separated chain of elements
        #[arg(long)]
        chain: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// Partial sums of a divergent weighted series at dyadic checkpoints
    DivergeDemo {
        /// `inverse-sqrt` or `superexp-square`
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 1024)]
        mmax: u64,
    },
    /// Exact tempered-but-not-strongly-tempered dilation demo
    TemperedDemo {
        /// Dilation factor as an exact rational (e.g. `10` or `5/2`)
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: u32,
    },
    /// Shell sums of sigma^-p with a convergence certificate when available
    Integrability {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        #[arg(long, default_value_t = 32)]
        radius: u32,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// ||sigma^m f||_r <= C^{1/r} ||sigma^{m+p} f||_inf for a certificate C
    HolderCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        scale: String,
        #[arg(long)]
        function: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Integrability certificate constant at exponent p
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 12)]
        radius: u32,
    },
    /// Weighted lower bound for convolution powers of the shifted bump
    ConvPower {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = 1.0 / 256.0)]
        spacing: f64,
    },
    /// sigma(g*m) <= C * (omega(g) * sigma(m))^l on a scaled group-space
    GspaceCheck {
        /// `z-line`, `z-line-trivial`, `axb-line` or `gl-conj:n`
        #[arg(long)]
        space: String,
        /// Samples per level pair (required)
        #[arg(long)]
        samples: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check per-shift translation equivalence instead
        #[arg(long)]
        translation: bool,
        #[arg(long, default_value_t = 8)]
        exp_max: u32,
    },
    /// Induced scale on the line extended over the circle
    InducedScale {
        #[arg(long, allow_hyphen_values = true)]
        r: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 5)]
        window: u32,
    },
}

/// Splices `key = value` lines from `--config FILE` into the argument list
/// as `--key value` pairs, skipping keys the command line already sets (so
/// explicit flags win).  Unknown keys then fail clap's normal validation.
fn splice_config(args: Vec<String>) -> Result<Vec<String>, String> {
    let path = match args.iter().position(|a| a == "--config") {
        Some(i) => match args.get(i + 1) {
            Some(p) => p.clone(),
            None => return Ok(args), // let clap report the missing value
        },
        None => match args.iter().find_map(|a| a.strip_prefix("--config=")) {
            Some(p) => p.to_string(),
            None => return Ok(args),
        },
    };
    // the subcommand must come first for its flags to be mirrorable
    if args.len() < 2 || args[1].starts_with('-') {
        return Ok(args);
    }
    let text = std::fs::read_to_string(&path).map_err(|e| format!("config `{path}`: {e}"))?;
    let mut extra = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config `{path}` line {}: expected `key = value`", i + 1))?;
        let flag = format!("--{}", key.trim());
        let already_set = args
            .iter()
            .any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if !already_set {
            // boolean switches take no value on the command line
            match value.trim() {
                "true" => extra.push(flag),
                "false" => {}
                v => {
                    extra.push(flag);
                    extra.push(v.to_string());
                }
            }
        }
    }
    let mut out = args;
    out.splice(2..2, extra);
    Ok(out)
}

fn main() {
    let args = match splice_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are successful exits; everything else is usage
            let code = if e.exit_code() == 0 { 0 } else { 3 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let start = Instant::now();
    match handlers::run(&cli.cmd) {
        Ok(out) => {
            let command = args[1..].join(" ");
            out.emit(&command, cli.format, start.elapsed().as_secs_f64() * 1e3);
            std::process::exit(out.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}
