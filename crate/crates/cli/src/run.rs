//! Stage orchestration for the subcommands.

use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{bail, Context};
use rayon::prelude::*;

use qscope_core::forward_solver::{estimate_admissibility, residual_field, solve_forward, Problem};
use qscope_core::grid_fields::{
    dist_to_zero_set, load_field, make_grid, write_field, ScalarField, TensorField,
};
use qscope_core::inequality_probes::{
    caccioppoli_report, carleman_bump, carleman_report, delta_star_report, doubling_report,
    interior_lattice, muckenhoupt_report, reverse_holder_report, three_spheres_report, ucp_report,
    write_probe_csv, ProbeReport,
};
use qscope_core::internal_data::{
    add_noise, data_diff_h1, save_data, synthesize, InternalData, DATA_META, I_FILE, J_FILE,
};
use qscope_core::reconstruction::{band_sup_errors_with, reconstruct_w, ErrorSummary};
use qscope_core::stability_lab::{
    stability_sweep, write_interp_csv, write_stability_csv, Family, SweepOptions,
};
use qscope_core::Field;

use crate::config::{Config, FamilyKind, ProbeConfig, ProbeKind, ProblemSource, PsiKind};
use crate::manifest::{Manifest, OutputDir};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Forward,
    Synth,
    Reconstruct,
    Sweep,
    Probe,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Forward => "forward",
            Self::Synth => "synth",
            Self::Reconstruct => "reconstruct",
            Self::Sweep => "sweep",
            Self::Probe => "probe",
            Self::All => "all",
        }
    }

    fn stages(self) -> &'static [Stage] {
        use Stage::*;
        match self {
            Self::Forward => &[Forward],
            Self::Synth => &[Forward, Synth],
            Self::Reconstruct => &[Forward, Synth, Reconstruct],
            Self::Sweep => &[Sweep],
            Self::Probe => &[Forward, Probe],
            Self::All => &[Forward, Synth, Reconstruct, Sweep, Probe],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Stage {
    Forward,
    Synth,
    Reconstruct,
    Sweep,
    Probe,
}

impl Stage {
    fn name(self) -> &'static str {
        match self {
            Self::Forward => "forward",
            Self::Synth => "synth",
            Self::Reconstruct => "reconstruct",
            Self::Sweep => "sweep",
            Self::Probe => "probe",
        }
    }
}

pub const FORWARD_SUMMARY_HEADER: &str =
    "n,method,iterations,rel_residual,converged,residual_linf,exact_err_linf,\
resolvent_norm,q0,k,adm_distance,adm_threshold,adm_member";
pub const RECON_SUMMARY_HEADER: &str =
    "q_rel_linf_trust,q_rel_linf_all,w_linf_trust,trust_count,grid_count,\
sup_err_b0,sup_err_b1,sup_err_b2,sup_err_b3,data_err,iterations,converged,nonlinear_residual";
pub const PROBE_SUMMARY_HEADER: &str = "tag,rows,fitted,pass";

pub fn load_problem(cfg: &Config) -> anyhow::Result<Problem<f64>> {
    let grid = make_grid(cfg.n)?;
    match &cfg.problem.source {
        ProblemSource::Manufactured(m) => Ok(m.problem(grid)),
        ProblemSource::Files {
            a11,
            a12,
            a22,
            q,
            g,
        } => {
            let load = |p: &std::path::Path| -> anyhow::Result<Field> {
                let f: Field = load_field(p).with_context(|| format!("reading {}", p.display()))?;
                if *f.grid() != grid {
                    bail!(
                        "{} holds a {}x{} grid, config asks for n = {}",
                        p.display(),
                        f.grid().nx(),
                        f.grid().ny(),
                        cfg.n
                    );
                }
                Ok(f)
            };
            let a = TensorField::new(
                grid,
                load(a11)?.into_values(),
                load(a12)?.into_values(),
                load(a22)?.into_values(),
            )?;
            let p = Problem::new(a, load(q)?, load(g)?)?;
            p.require_nonzero_boundary()?;
            Ok(p)
        }
    }
}

fn field_bytes(f: &Field) -> anyhow::Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_field(&mut buf, f)?;
    Ok(buf)
}

fn e(v: f64) -> String {
    format!("{v:e}")
}

struct Run<'a> {
    cfg: &'a Config,
    problem: Problem<f64>,
    out: OutputDir,
    u: Option<Field>,
    clean: Option<InternalData<f64>>,
    data: Option<InternalData<f64>>,
}

impl Run<'_> {
    fn u(&self) -> anyhow::Result<&Field> {
        self.u.as_ref().context("forward stage has not run")
    }

    fn stage(&mut self, s: Stage) -> anyhow::Result<()> {
        match s {
            Stage::Forward => self.forward(),
            Stage::Synth => self.synth(),
            Stage::Reconstruct => self.reconstruct(),
            Stage::Sweep => self.sweep(),
            Stage::Probe => self.probe(),
        }
    }

    fn forward(&mut self) -> anyhow::Result<()> {
        let p = &self.problem;
        let (u, report) = solve_forward(p, self.cfg.problem.forward_tol)?;
        let residual = residual_field(&p.a, &p.q, &u)?.max_abs();
        let exact_err = match &self.cfg.problem.source {
            ProblemSource::Manufactured(m) => match m.exact_field::<f64>(*p.grid()) {
                Some(x) => x.sub(&u)?.max_abs(),
                None => f64::NAN,
            },
            ProblemSource::Files { .. } => f64::NAN,
        };
        let adm = &self.cfg.admissibility;
        let q_star = match adm.q_star {
            Some(v) => ScalarField::constant(*p.grid(), v),
            None => p.q.clone(),
        };
        let a = estimate_admissibility(&p.a, &p.q, &q_star, adm.q0, adm.k)?;
        let mut csv = format!("{FORWARD_SUMMARY_HEADER}\n");
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.cfg.n,
            report.method.name(),
            report.iterations,
            e(report.rel_residual),
            report.converged,
            e(residual),
            e(exact_err),
            e(a.resolvent_norm_estimate),
            e(a.q0),
            e(a.k),
            e(a.distance),
            e(a.threshold),
            a.member
        );
        self.out.write("u.txt", &field_bytes(&u)?)?;
        self.out.write("forward_summary.csv", csv.as_bytes())?;
        self.u = Some(u);
        Ok(())
    }

    fn synth(&mut self) -> anyhow::Result<()> {
        let clean = synthesize(&self.problem.q, self.u()?)?;
        let pc = &self.cfg.problem;
        let data = add_noise(&clean, pc.noise, pc.noise_eps, pc.seed)?;
        save_data(self.out.root(), &data)?;
        for name in [I_FILE, J_FILE, DATA_META] {
            self.out.record(name)?;
        }
        self.clean = Some(clean);
        self.data = Some(data);
        Ok(())
    }

    fn reconstruct(&mut self) -> anyhow::Result<()> {
        let (Some(clean), Some(data)) = (&self.clean, &self.data) else {
            bail!("synth stage has not run");
        };
        let p = &self.problem;
        let u = self.u()?;
        let recon = reconstruct_w(data, &p.a, &p.g, &self.cfg.recon)?;
        let data_err = data_diff_h1(data, clean)?;
        let mut s = ErrorSummary::compute(u, &p.q, &recon, data_err)?;
        let err = p.q.sub(&recon.q_rec)?;
        s.band_sup = band_sup_errors_with(&err, &dist_to_zero_set(u), &self.cfg.stability.bands)?;
        let mut csv = format!("{RECON_SUMMARY_HEADER}\n");
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            e(s.q_rel_linf_trust),
            e(s.q_rel_linf_all),
            e(s.w_linf_trust),
            s.trust_count,
            s.grid_count,
            e(s.band_sup[0]),
            e(s.band_sup[1]),
            e(s.band_sup[2]),
            e(s.band_sup[3]),
            e(s.data_err),
            s.iterations,
            s.converged,
            e(s.nonlinear_residual)
        );
        self.out.write("q_rec.txt", &field_bytes(&recon.q_rec)?)?;
        self.out.write("w.txt", &field_bytes(&recon.w)?)?;
        self.out
            .write("trust.txt", &field_bytes(&recon.trust.to_field())?)?;
        self.out.write("recon_summary.csv", csv.as_bytes())?;
        if !recon.converged {
            bail!(
                "Picard iteration stopped after {} iterations without converging",
                recon.iterations
            );
        }
        Ok(())
    }

    fn sweep(&mut self) -> anyhow::Result<()> {
        let st = &self.cfg.stability;
        let family = match st.family {
            FamilyKind::Noise => Family::Noise {
                model: st.noise,
                seed: self.cfg.problem.seed,
            },
            FamilyKind::Bump => Family::Bump,
            FamilyKind::Inset => Family::Inset {
                margin: st.inset_margin,
            },
        };
        let opts = SweepOptions {
            family,
            theta: st.theta,
            recon: self.cfg.recon,
            amplitude_cap: st.amplitude_cap,
            forward_tol: self.cfg.problem.forward_tol,
            bands: st.bands,
        };
        let mut eps = st.eps.clone();
        eps.sort_by(|a, b| b.total_cmp(a));
        let sweep = stability_sweep(&self.problem, &eps, &opts)?;
        let mut buf = Vec::new();
        write_stability_csv(&mut buf, &sweep)?;
        self.out.write("stability.csv", &buf)?;
        buf.clear();
        write_interp_csv(&mut buf, &sweep)?;
        self.out.write("interp.csv", &buf)?;
        Ok(())
    }

    fn probe(&mut self) -> anyhow::Result<()> {
        let pc = &self.cfg.probes;
        if pc.select.is_empty() {
            bail!("empty probe set");
        }
        let u = self.u()?;
        let reports = pc
            .select
            .par_iter()
            .map(|&k| run_probe(k, pc, u, &self.problem.a))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let mut summary = format!("{PROBE_SUMMARY_HEADER}\n");
        for rep in &reports {
            let mut buf = Vec::new();
            write_probe_csv(&mut buf, rep)?;
            self.out.write(&format!("probes_{}.csv", rep.tag), &buf)?;
            let _ = writeln!(
                summary,
                "{},{},{},{}",
                rep.tag,
                rep.rows.len(),
                e(rep.fitted),
                rep.pass
            );
        }
        self.out.write("probes_summary.csv", summary.as_bytes())?;
        Ok(())
    }
}

/// Runs one probe family with the configured geometry on `u` (and on the
/// Carleman bump for the Carleman probe).
pub fn run_probe(
    k: ProbeKind,
    pc: &ProbeConfig,
    u: &Field,
    a: &TensorField<f64>,
) -> anyhow::Result<ProbeReport> {
    let centers = interior_lattice(pc.lattice);
    let rep = match k {
        ProbeKind::Caccioppoli => caccioppoli_report(u, &centers, &pc.radii)?,
        ProbeKind::Doubling => doubling_report(u, &centers, &pc.radii)?,
        ProbeKind::ReverseHolder => reverse_holder_report(u, &centers, &pc.radii, pc.delta)?,
        ProbeKind::Muckenhoupt => muckenhoupt_report(u, &centers, &pc.radii, pc.kappa)?,
        ProbeKind::ThreeSpheres => three_spheres_report(u, &centers, pc.sphere_r)?,
        ProbeKind::Ucp => ucp_report(u, &centers, &pc.ucp_radii, pc.ucp_norm)?,
        ProbeKind::DeltaStar => delta_star_report(u, pc.r_star, pc.delta_lattice)?,
        ProbeKind::Carleman => carleman_family(pc, a)?,
    };
    Ok(rep)
}

const BUMP_SUPPORT: ((f64, f64), f64) = ((0.5, 0.5), 0.3);

fn carleman_family(pc: &ProbeConfig, a: &TensorField<f64>) -> anyhow::Result<ProbeReport> {
    let grid = *a.grid();
    let v: Field = carleman_bump(grid);
    let psi: Field = match pc.psi {
        PsiKind::Linear => ScalarField::from_fn(grid, |x, _| x),
        PsiKind::Radial => ScalarField::from_fn(grid, |x: f64, y: f64| {
            -((x + 0.5).powi(2) + (y - 0.5).powi(2))
        }),
    };
    let mut scales = vec![1.0];
    if pc.rescaled {
        scales.extend(pc.rescale_factors.iter().copied().filter(|&s| s != 1.0));
    }
    let mut rows = Vec::new();
    let mut pass = true;
    for s in scales {
        let op = if s == 1.0 {
            a.clone()
        } else {
            a.rescaled(BUMP_SUPPORT.0, s)?
        };
        let rep = carleman_report(
            &v,
            &op,
            &psi,
            pc.lambda,
            &pc.tau,
            BUMP_SUPPORT,
            pc.shift,
            "carleman",
        )?;
        pass &= rep.pass;
        rows.extend(rep.rows.into_iter().map(|mut r| {
            r.params.insert(0, s);
            r
        }));
    }
    let mut rep = ProbeReport::from_rows("carleman", &["scale", "lambda", "tau", "shifted"], rows);
    rep.pass = pass;
    Ok(rep)
}

/// Outcome of [`run`]: the manifest as written plus stage timings.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub manifest: Manifest,
    pub timings: Vec<(String, f64)>,
}

/// Runs `cmd`, writing outputs and finally the manifest into the configured
/// directory. On failure the manifest is still written, marked failed, and
/// the error is returned.
pub fn run(cmd: Command, cfg: &Config) -> anyhow::Result<RunOutcome> {
    let out = OutputDir::create(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let mut manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: cmd.name().to_string(),
        status: "ok".to_string(),
        stages: Vec::new(),
        config: cfg.to_text(),
        files: Default::default(),
    };
    let mut timings = Vec::new();
    let mut state = match load_problem(cfg) {
        Ok(problem) => Run {
            cfg,
            problem,
            out,
            u: None,
            clean: None,
            data: None,
        },
        Err(err) => {
            manifest.status = format!("failed: problem: {err:#}");
            out.write_manifest(&manifest)?;
            return Err(err);
        }
    };
    let mut failure = None;
    for &s in cmd.stages() {
        let t = Instant::now();
        let r = state.stage(s);
        timings.push((s.name().to_string(), t.elapsed().as_secs_f64()));
        manifest.stages.push(s.name().to_string());
        if let Err(err) = r {
            manifest.status = format!("failed: {}: {err:#}", s.name());
            failure = Some(err.context(format!("stage {}", s.name())));
            break;
        }
    }
    manifest.files = state.out.files().clone();
    state.out.write_timings(&timings)?;
    state.out.write_manifest(&manifest)?;
    match failure {
        Some(err) => Err(err),
        None => Ok(RunOutcome { manifest, timings }),
    }
}
