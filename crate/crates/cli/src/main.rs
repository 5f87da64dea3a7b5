use std::process::ExitCode;

use anyhow::Context;

fn init_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("QSCOPE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("QSCOPE_THREADS={v:?} is not a count"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let result = init_threads().and_then(|()| qscope::cli::execute(std::env::args_os()));
    match result {
        Ok((cfg, outcome)) => {
            for (stage, t) in &outcome.timings {
                eprintln!("{stage}: {t:.2}s");
            }
            println!(
                "{} files written to {}",
                outcome.manifest.files.len(),
                cfg.out_dir.display()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            // clap renders its own help and usage text.
            if let Some(c) = e.downcast_ref::<clap::Error>() {
                let _ = c.print();
                return if c.use_stderr() {
                    ExitCode::FAILURE
                } else {
                    ExitCode::SUCCESS
                };
            }
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
