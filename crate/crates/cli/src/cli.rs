//! Argument handling behind the `qscope` binary.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Parser, ValueEnum};

use crate::config::Config;
use crate::run::{run, Command, RunOutcome};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sub {
    Forward,
    Synth,
    Reconstruct,
    Sweep,
    Probe,
    All,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Forward => Command::Forward,
            Sub::Synth => Command::Synth,
            Sub::Reconstruct => Command::Reconstruct,
            Sub::Sweep => Command::Sweep,
            Sub::Probe => Command::Probe,
            Sub::All => Command::All,
        }
    }
}

/// Forward solves, reconstructions, stability sweeps and inequality probes
/// for the zeroth-order coefficient problem with internal data.
#[derive(Debug, Parser)]
#[command(name = "qscope", version)]
struct Cli {
    #[arg(value_enum)]
    command: Sub,
    #[arg(long)]
    config: PathBuf,
    /// Overrides `[output] dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `[problem] seed`.
    #[arg(long)]
    seed: Option<u64>,
}

/// Parses `args` (program name first), loads the config and runs.
pub fn execute<I, T>(args: I) -> anyhow::Result<(Config, RunOutcome)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let text = std::fs::read_to_string(&cli.config)
        .with_context(|| format!("reading {}", cli.config.display()))?;
    let mut cfg = Config::parse(&text).with_context(|| format!("in {}", cli.config.display()))?;
    if let Some(out) = cli.out {
        cfg.out_dir = out;
    }
    if let Some(seed) = cli.seed {
        cfg.problem.seed = seed;
    }
    let outcome = run(cli.command.into(), &cfg)?;
    Ok((cfg, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn config_errors_carry_the_line() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("bad.cfg");
        fs::write(&cfg, "[stability]\ntheta = 0.3\n").unwrap();
        let err = execute([
            "qscope".as_ref(),
            "sweep".as_ref(),
            "--config".as_ref(),
            cfg.as_os_str(),
        ])
        .unwrap_err();
        assert!(format!("{err:#}").contains("line 2"), "{err:#}");
    }

    #[test]
    fn unknown_subcommand_rejected() {
        assert!(execute(["qscope", "solve", "--config", "x"]).is_err());
    }

    #[test]
    fn overrides_apply() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.cfg");
        fs::write(
            &cfg,
            "[grid]\nn = 17\n[problem]\ntag = k1\nnoise = random\nnoise_eps = 0.05\n",
        )
        .unwrap();
        let synth = |seed: &str, out: &str| {
            let out = dir.path().join(out);
            let args = [
                "qscope".into(),
                "synth".into(),
                "--seed".into(),
                seed.into(),
                "--config".into(),
                cfg.clone().into_os_string(),
                "--out".into(),
                out.clone().into_os_string(),
            ];
            let (c, _) = execute::<_, OsString>(args).unwrap();
            assert_eq!(c.out_dir, out);
            assert_eq!(c.problem.seed, seed.parse::<u64>().unwrap());
            fs::read(out.join("J.txt")).unwrap()
        };
        let a = synth("1", "a");
        assert_ne!(a, synth("2", "b"));
        assert_eq!(a, synth("1", "c"));
    }
}
