//! Batch driver behind the `lab` binary.
//!
//! ```text
//! lab run <config>...   run experiment configs, write CSV (and SVG for curves)
//! lab list              print groups, resolutions and experiments
//! lab verify-all        run every invariant suite at small sizes
//! ```
//!
//! Exit codes: 0 success, 2 invariant violated, 3 config error.

mod config;
mod experiments;
pub mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub use config::{Experiment, ExperimentConfig};
pub use experiments::{run_experiment, Outcome, ADJOINTNESS_TOL, ANNIHILATOR_TOL, HOLDER_SLACK};

use crate::error::{Error, Result};
use crate::groups::set_default_ball_cap;
use crate::resolutions::ResolutionName;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

pub const MAX_BALL_ENV: &str = "LAB_MAX_BALL";

/// Exit code for an error raised while running an experiment.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => EXIT_INVARIANT,
        Error::Io(_) | Error::Csv(_) => EXIT_IO,
        _ => EXIT_CONFIG,
    }
}

pub fn list_catalog() -> String {
    let mut out = String::new();
    out.push_str("groups:\n");
    for (name, note) in [
        ("trivial", "the trivial group"),
        ("cyclic:n", "finite cyclic group of order n, generator t"),
        ("Z", "infinite cyclic group, generator t"),
        ("Z^d", "free abelian group, generators t1..td"),
        ("free:k", "free group on x, y, z, w, g5, .."),
        ("dihedral-inf", "infinite dihedral group, rotation r and flip s"),
        ("heisenberg", "integer Heisenberg group, generators x, y; elements (a,b,c)"),
        ("S3", "symmetric group on 3 letters, transposition s and 3-cycle c"),
    ] {
        out.push_str(&format!("  {name:<14} {note}\n"));
    }
    out.push_str("resolutions:\n");
    for (name, note) in [
        ("cyclic-inf", "Z: 0 -> Z[Z] -(t-1)-> Z[Z]"),
        ("cyclic:n:N", "periodic resolution of C_n, length N (boundaries t-1 and the norm element)"),
        ("lattice:d", "Koszul resolution of Z^d, d <= 3"),
        ("fox:<group>", "partial resolution from the standard presentation via Fox derivatives"),
        ("bar:<group>:<degree>:<R>", "bar resolution tuple spaces, degree <= 3"),
    ] {
        out.push_str(&format!("  {name:<26} {note}\n"));
    }
    out.push_str("experiments:\n");
    for e in Experiment::ALL {
        out.push_str(&format!("  {:<20} {}\n", e.name(), e.usage()));
    }
    out.push_str("common keys: seed=<u64> output=<path> max_ball=<n>; lists accept a,b,c and a..b\n");
    out
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn env_ball_cap() -> Result<Option<usize>> {
    match std::env::var(MAX_BALL_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config { field: MAX_BALL_ENV.into(), message: format!("cannot parse `{v}`") }),
        Err(_) => Ok(None),
    }
}

/// Runs one config file; returns the exit code and prints a status line.
pub fn run_config(path: &Path, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let result = (|| -> Result<(Outcome, PathBuf)> {
        let cfg = ExperimentConfig::from_file(path)?;
        let cap = env_ball_cap()?.or(cfg.max_ball).unwrap_or(crate::groups::DEFAULT_BALL_CAP);
        set_default_ball_cap(cap);
        let outcome = run_experiment(&cfg)?;
        let csv_path = cfg.output.clone().expect("from_file sets an output path");
        write_atomic(&csv_path, &outcome.csv)?;
        if let Some(svg) = &outcome.svg {
            write_atomic(&csv_path.with_extension("svg"), svg.as_bytes())?;
        }
        Ok((outcome, csv_path))
    })();
    match result {
        Ok((o, csv_path)) => {
            let _ = writeln!(out, "{}: {} -> {}", path.display(), o.summary, csv_path.display());
            if o.failures.is_empty() {
                EXIT_OK
            } else {
                for f in &o.failures {
                    let _ = writeln!(err, "{}: invariant violated: {f}", path.display());
                }
                EXIT_INVARIANT
            }
        }
        Err(e) => {
            let _ = writeln!(err, "{}: {e}", path.display());
            exit_code(&e)
        }
    }
}

fn suite(e: Experiment, f: impl FnOnce(&mut ExperimentConfig)) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(e);
    f(&mut cfg);
    cfg
}

/// Invariant suites run by `lab verify-all`, at sizes that finish in seconds.
pub fn verification_suites() -> Vec<(String, ExperimentConfig)> {
    let res = |s: &str| Some(s.parse::<ResolutionName>().expect("catalog name"));
    let grp = |s: &str| Some(s.parse().expect("catalog group"));
    let mut out = vec![("resolution catalog".to_string(), suite(Experiment::VerifyResolutions, |_| {}))];
    for (g, h) in [("Z", "t"), ("heisenberg", "(0,0,1)"), ("cyclic:4", "t")] {
        out.push((
            format!("homotopy identity on {g}"),
            suite(Experiment::VerifyHomotopy, |c| {
                c.group = grp(g);
                c.element = Some(h.into());
                c.degrees = vec![1, 2];
                c.radii = vec![2];
                c.samples = Some(3);
            }),
        ));
    }
    out.push((
        "singleton class sum on heisenberg".into(),
        suite(Experiment::ClassSumHomotopy, |c| {
            c.group = grp("heisenberg");
            c.element = Some("(0,0,1)".into());
            c.degrees = vec![1];
            c.radii = vec![2];
            c.samples = Some(3);
        }),
    ));
    for r in ["cyclic-inf", "cyclic:4:3", "lattice:2"] {
        out.push((
            format!("duality on {r}"),
            suite(Experiment::PairingAdjointness, |c| {
                c.resolution = res(r);
                c.degrees = vec![1];
                c.radii = vec![1, 2, 3];
                c.p = vec![1.5, 2.0, 3.0];
                c.samples = Some(100);
            }),
        ));
    }
    out.push((
        "distance curve on Z".into(),
        suite(Experiment::DistanceCurve, |c| {
            c.resolution = res("cyclic-inf");
            c.degrees = vec![0];
            c.radii = (1..=8).collect();
            c.p = vec![1.5, 2.0, 3.0];
        }),
    ));
    for (g, idx) in [("Z", (-12..=12).collect::<Vec<i64>>()), ("dihedral-inf", (1..=10).collect())] {
        out.push((
            format!("translation decay on {g}"),
            suite(Experiment::TranslationDecay, |c| {
                c.group = grp(g);
                c.radii = vec![4];
                c.p = vec![1.5, 2.0, 3.0];
                c.indices = Some(idx.clone());
            }),
        ));
    }
    out.push((
        "finite group homology".into(),
        suite(Experiment::FiniteHomology, |c| {
            c.n = Some(4);
            c.top = Some(3);
            c.p = vec![1.5, 2.0, 3.0];
        }),
    ));
    out.push((
        "finite index".into(),
        suite(Experiment::FiniteIndex, |c| {
            c.n = Some(4);
            c.m = Some(2);
            c.p = vec![2.0];
        }),
    ));
    out
}

pub fn verify_all(out: &mut impl Write) -> i32 {
    let mut code = EXIT_OK;
    for (name, cfg) in verification_suites() {
        match run_experiment(&cfg) {
            Ok(o) if o.failures.is_empty() => {
                let _ = writeln!(out, "PASS {name}: {}", o.summary);
            }
            Ok(o) => {
                let _ = writeln!(out, "FAIL {name}: {}", o.failures.join("; "));
                code = code.max(EXIT_INVARIANT);
            }
            Err(e) => {
                let _ = writeln!(out, "FAIL {name}: {e}");
                code = code.max(exit_code(&e));
            }
        }
    }
    code
}

const USAGE: &str = "usage: lab run <config>... | lab list | lab verify-all";

/// Entry point; `args` excludes the program name.
pub fn main_with_args(args: &[String], out: &mut impl Write, err: &mut impl Write) -> i32 {
    match args.first().map(String::as_str) {
        Some("run") if args.len() > 1 => {
            if let Err(e) = env_ball_cap() {
                let _ = writeln!(err, "{e}");
                return EXIT_CONFIG;
            }
            args[1..].iter().map(|p| run_config(Path::new(p), out, err)).max().unwrap_or(EXIT_OK)
        }
        Some("list") => {
            let _ = write!(out, "{}", list_catalog());
            EXIT_OK
        }
        Some("verify-all") => {
            if let Ok(Some(cap)) = env_ball_cap() {
                set_default_ball_cap(cap);
            }
            verify_all(out)
        }
        _ => {
            let _ = writeln!(err, "{USAGE}");
            EXIT_CONFIG
        }
    }
}
