//! Command-line front end. Exit codes: 0 pass, 1 mathematical mismatch, 2 usage or data error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, to_plain, to_pq, Rational};
use crate::frobdual::prepotential::e6_prepotential;
use crate::frobdual::{
    admissible_exponents, find_unit_and_eta, parse_flatmap, verify_duality, wdvv_residual, AwData, DualityOptions,
    DualityReport, FlatPoint, PointSampler, Prepotential,
};
use crate::lg::{verify_d_eta, verify_lemma, verify_mirror, CheckReport};
use crate::rootsys::{parse_family, Family, MarkedPair};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "weyl-mirror", version, about = "Exact checks of ADE mirror symmetry and Dubrovin duality")]
pub struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "WEYL_MIRROR_THREADS")]
    pub threads: Option<usize>,
    /// Also write the JSON report to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// Root-system family, optionally with the rank attached (E6, D5).
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Marked node, 1-based; type A defaults to 1, D and E use the trivalent node.
    #[arg(long)]
    pub kbar: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree bound D and the number of admissible exponents.
    Sadm {
        #[command(flatten)]
        target: Target,
    },
    /// LG dual structure constants against the GW ones (types A and D).
    Mirror {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        points: usize,
        /// Equivariant weight.
        #[arg(long, default_value = "1")]
        nu: String,
        /// Only the dual pairing (type D).
        #[arg(long)]
        eta_only: bool,
    },
    /// Initial-conditions comparison of the two product tensors (type E).
    Duality {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Prepotential file; E6 data is built in.
        #[arg(long)]
        prepotential: Option<PathBuf>,
        /// Flat-coordinate map file.
        #[arg(long)]
        flatmap: Option<PathBuf>,
        /// Compare at this many points without the Vandermonde certificate.
        #[arg(long)]
        points: Option<usize>,
        #[arg(long, default_value_t = crate::frobdual::initial::DEFAULT_RETRIES)]
        retries: usize,
        /// Record only mismatching entries.
        #[arg(long)]
        mismatches_only: bool,
    },
    /// WDVV residual of a prepotential at random rational points.
    Wdvv {
        /// Prepotential file; without it the built-in E6 data is used.
        #[arg(long)]
        prepotential: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Per-pole residues of the D-type integrand against their closed forms.
    LemmaD {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Re-render a saved JSON report.
    Report { file: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WdvvReport {
    pub rank: usize,
    pub seed: u64,
    pub unit_direction: usize,
    pub points: Vec<Vec<String>>,
    pub brackets: usize,
    pub nonzero: usize,
    pub pass: bool,
}

impl WdvvReport {
    fn render(&self) -> String {
        format!(
            "WDVV rank {}: unit t{}, {} points, {} brackets, {} nonzero: {}\n",
            self.rank,
            self.unit_direction + 1,
            self.points.len(),
            self.brackets,
            self.nonzero,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

enum Outcome {
    Text(String),
    Duality(DualityReport),
    Check(CheckReport),
    Wdvv(WdvvReport),
}

impl Outcome {
    fn pass(&self) -> bool {
        match self {
            Outcome::Text(_) => true,
            // sampled runs carry no certificate; exit status follows the comparison
            Outcome::Duality(r) => r.mismatches == 0,
            Outcome::Check(r) => r.pass,
            Outcome::Wdvv(r) => r.pass,
        }
    }

    fn json(&self) -> Option<String> {
        match self {
            Outcome::Text(_) => None,
            Outcome::Duality(r) => Some(r.to_json()),
            Outcome::Check(r) => Some(r.to_json()),
            Outcome::Wdvv(r) => Some(serde_json::to_string_pretty(r).expect("report serializes")),
        }
    }

    fn text(&self) -> String {
        match self {
            Outcome::Text(s) => s.clone(),
            Outcome::Duality(r) => r.render(),
            Outcome::Check(r) => r.render(),
            Outcome::Wdvv(r) => r.render(),
        }
    }
}

fn marked_pair(t: &Target) -> Result<MarkedPair> {
    let (family, attached) = parse_family(&t.family)?;
    let rank = match (attached, t.rank) {
        (Some(a), Some(r)) if a != r => return Err(Error::Invalid(format!("rank {r} conflicts with {}", t.family))),
        (Some(a), _) => a,
        (None, Some(r)) => r,
        (None, None) => return Err(Error::Invalid("--rank required".into())),
    };
    match family {
        Family::A => MarkedPair::new(family, rank, Some(t.kbar.unwrap_or(1))),
        _ => {
            let mp = MarkedPair::standard(family, rank)?;
            match t.kbar {
                Some(k) if k != mp.marked + 1 => Err(Error::Unsupported(format!(
                    "{}{rank} needs the trivalent marked node {}",
                    family,
                    mp.marked + 1
                ))),
                _ => Ok(mp),
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn sadm(t: &Target) -> Result<Outcome> {
    let mp = marked_pair(t)?;
    let (d, s) = admissible_exponents(&mp);
    Ok(Outcome::Text(format!("D={} |S_adm|={}\n", to_plain(&d), s.len())))
}

fn wdvv(path: Option<&Path>, points: usize, seed: u64) -> Result<Outcome> {
    let f = match path {
        Some(p) => Prepotential::parse(&read(p)?)?,
        None => e6_prepotential(),
    };
    let (unit, eta) = find_unit_and_eta(&f)?;
    let mut s = PointSampler::new(seed);
    let mut report = WdvvReport {
        rank: f.rank,
        seed,
        unit_direction: unit,
        points: Vec::new(),
        brackets: 0,
        nonzero: 0,
        pass: false,
    };
    for _ in 0..points {
        let t: Vec<Rational> = (0..f.rank).map(|_| s.rational()).collect();
        let mut fp = FlatPoint::new(t, s.positive_rational());
        fp.t_last = Some(s.rational());
        let r = wdvv_residual(&f, &eta, &fp)?;
        report.brackets += r.brackets;
        report.nonzero += r.nonzero;
        report.points.push(fp.t.iter().chain([&fp.s]).map(to_pq).collect());
    }
    report.pass = report.nonzero == 0;
    Ok(Outcome::Wdvv(report))
}

fn load_report(path: &Path) -> Result<Outcome> {
    let text = read(path)?;
    if let Ok(r) = serde_json::from_str::<DualityReport>(&text) {
        return Ok(Outcome::Duality(r));
    }
    if let Ok(r) = serde_json::from_str::<CheckReport>(&text) {
        return Ok(Outcome::Check(r));
    }
    if let Ok(r) = serde_json::from_str::<WdvvReport>(&text) {
        return Ok(Outcome::Wdvv(r));
    }
    Err(Error::Invalid(format!("{}: not a saved report", path.display())))
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Sadm { target } => sadm(target),
        Command::Mirror { target, seed, points, nu, eta_only } => {
            let mp = marked_pair(target)?;
            let nu = parse_rational(nu)?;
            if *eta_only {
                if mp.family() != Family::D {
                    return Err(Error::Unsupported("--eta-only is for type D".into()));
                }
                return Ok(Outcome::Check(verify_d_eta(mp.rank(), &nu, *points, *seed)?));
            }
            Ok(Outcome::Check(verify_mirror(&mp, &nu, *points, *seed)?))
        }
        Command::Duality { target, seed, prepotential, flatmap, points, retries, mismatches_only } => {
            let mp = marked_pair(target)?;
            let data = match (prepotential, flatmap) {
                (Some(p), Some(m)) => {
                    Some(AwData::new(&mp, Prepotential::parse(&read(p)?)?, parse_flatmap(&read(m)?)?)?)
                }
                (None, None) => None,
                _ => return Err(Error::Invalid("--prepotential and --flatmap go together".into())),
            };
            let opts = DualityOptions { seed: *seed, retries: *retries, record_all: !mismatches_only, points: *points };
            Ok(Outcome::Duality(verify_duality(&mp, data, &opts)?))
        }
        Command::Wdvv { prepotential, points, seed } => wdvv(prepotential.as_deref(), *points, *seed),
        Command::LemmaD { rank, points, seed } => Ok(Outcome::Check(verify_lemma(*rank, *points, *seed)?)),
        Command::Report { file } => load_report(file),
    }
}

/// Parse `argv` (program name first), run, print, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let outcome = match pool.install(|| dispatch(&cli.command)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let json = outcome.json();
    if let (Some(path), Some(j)) = (&cli.output, &json) {
        if let Err(e) = fs::write(path, format!("{j}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    match (&json, cli.json) {
        (Some(j), true) => println!("{j}"),
        _ => print!("{}", outcome.text()),
    }
    if outcome.pass() {
        EXIT_PASS
    } else {
        EXIT_MISMATCH
    }
}
