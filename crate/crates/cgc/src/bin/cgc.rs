use cgc::io::{self, JobConfig, MeshPart};
use cgc::Error;
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cgc", version, about = "Dress constant Gauss curvature surfaces and verify them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the job: write the report and, when configured, the mesh.
    Run(JobArgs),
    /// Run the checks and print the report.
    Verify(JobArgs),
    /// Write the mesh only.
    Export(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    config: PathBuf,
    /// Export the real part of a complex surface.
    #[arg(long, conflicts_with = "imag_part")]
    real_part: bool,
    /// Export the imaginary part of a complex surface.
    #[arg(long)]
    imag_part: bool,
    /// Override a check tolerance, e.g. `flatness=1e-5`.
    #[arg(long = "tol-override", value_name = "K=V")]
    tol_override: Vec<String>,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "CGC_THREADS")]
    threads: Option<usize>,
}

impl JobArgs {
    fn part(&self) -> Option<MeshPart> {
        if self.real_part {
            Some(MeshPart::Real)
        } else if self.imag_part {
            Some(MeshPart::Imag)
        } else {
            None
        }
    }
}

fn load(args: &JobArgs) -> cgc::Result<JobConfig> {
    let mut cfg = io::load_config(&args.config)?;
    let overrides = args.tol_override.iter().map(|s| io::parse_override(s)).collect::<cgc::Result<Vec<_>>>()?;
    io::apply_overrides(&mut cfg, &overrides)?;
    Ok(cfg)
}

/// Output paths in the config are relative to the config file.
fn resolve(config: &Path, p: &Path) -> PathBuf {
    match config.parent() {
        Some(dir) if p.is_relative() => dir.join(p),
        _ => p.to_path_buf(),
    }
}

fn set_threads(n: Option<usize>) -> cgc::Result<()> {
    #[cfg(feature = "parallel")]
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::config("/threads", e.to_string()))?;
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn execute(cmd: &Command) -> cgc::Result<bool> {
    let args = match cmd {
        Command::Run(a) | Command::Verify(a) | Command::Export(a) => a,
    };
    set_threads(args.threads)?;
    let cfg = load(args)?;
    match cmd {
        Command::Export(_) => {
            let mesh = cfg
                .outputs
                .mesh
                .as_ref()
                .ok_or_else(|| Error::config("/outputs/mesh", "export needs a mesh path"))?;
            let out = io::run_job_with(&cfg, false)?;
            io::export_mesh(&out.surface, &resolve(&args.config, mesh), args.part(), io::real_tolerance(&cfg))?;
            Ok(true)
        }
        Command::Verify(_) => {
            let out = io::run_job(&cfg)?;
            print!("{}", io::report_to_string(&out.report));
            if let Some(p) = &cfg.outputs.report {
                io::write_report(&out.report, &resolve(&args.config, p))?;
            }
            Ok(out.report.pass)
        }
        Command::Run(_) => {
            let out = io::run_job(&cfg)?;
            match &cfg.outputs.report {
                Some(p) => io::write_report(&out.report, &resolve(&args.config, p))?,
                None => print!("{}", io::report_to_string(&out.report)),
            }
            if let Some(mesh) = &cfg.outputs.mesh {
                let tol = io::real_tolerance(&cfg);
                if args.part().is_none() && !out.surface.is_real(tol) {
                    eprintln!(
                        "cgc: surface is complex (imaginary sup {:.3e}); mesh skipped, pass --real-part or --imag-part",
                        out.surface.max_imag()
                    );
                } else {
                    io::export_mesh(&out.surface, &resolve(&args.config, mesh), args.part(), tol)?;
                }
            }
            Ok(out.report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("cgc: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("cgc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
