//! Flat `key = value` configuration with `[section]` headers.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use qscope_core::forward_solver::Manufactured;
use qscope_core::inequality_probes::BallNorm;
use qscope_core::internal_data::NoiseModel;
use qscope_core::reconstruction::{ReconOptions, DISTANCE_BANDS};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ConfigError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        line,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSource {
    Manufactured(Manufactured),
    /// Field dumps for the tensor entries, `q` and the boundary trace.
    Files {
        a11: PathBuf,
        a12: PathBuf,
        a22: PathBuf,
        q: PathBuf,
        g: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Noise,
    Bump,
    Inset,
}

impl FamilyKind {
    fn tag(self) -> &'static str {
        match self {
            Self::Noise => "noise",
            Self::Bump => "bump",
            Self::Inset => "inset",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProbeKind {
    Caccioppoli,
    Doubling,
    ReverseHolder,
    Muckenhoupt,
    ThreeSpheres,
    Ucp,
    DeltaStar,
    Carleman,
}

impl ProbeKind {
    pub const ALL: [ProbeKind; 8] = [
        Self::Caccioppoli,
        Self::Doubling,
        Self::ReverseHolder,
        Self::Muckenhoupt,
        Self::ThreeSpheres,
        Self::Ucp,
        Self::DeltaStar,
        Self::Carleman,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Caccioppoli => "caccioppoli",
            Self::Doubling => "doubling",
            Self::ReverseHolder => "reverse_holder",
            Self::Muckenhoupt => "muckenhoupt",
            Self::ThreeSpheres => "three_spheres",
            Self::Ucp => "ucp",
            Self::DeltaStar => "delta_star",
            Self::Carleman => "carleman",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.tag() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiKind {
    /// `ψ(x, y) = x`.
    Linear,
    /// `ψ = −|x − x₀|²` with `x₀ = (−1/2, 1/2)` outside the square.
    Radial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemConfig {
    pub source: ProblemSource,
    pub seed: u64,
    pub forward_tol: f64,
    /// Noise applied by `synth`.
    pub noise: NoiseModel,
    pub noise_eps: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityConfig {
    pub q0: f64,
    pub k: f64,
    /// Constant reference coefficient; `None` uses the problem's own `q`.
    pub q_star: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityConfig {
    pub eps: Vec<f64>,
    pub theta: f64,
    pub family: FamilyKind,
    pub noise: NoiseModel,
    pub inset_margin: f64,
    pub amplitude_cap: f64,
    pub bands: [f64; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    pub select: Vec<ProbeKind>,
    /// Side of the interior lattice of ball centres.
    pub lattice: usize,
    pub radii: Vec<f64>,
    pub delta: f64,
    pub kappa: f64,
    pub sphere_r: f64,
    pub ucp_radii: Vec<f64>,
    pub ucp_norm: BallNorm,
    pub r_star: f64,
    pub delta_lattice: usize,
    pub lambda: f64,
    pub lambda0: f64,
    pub tau: Vec<f64>,
    pub tau0: f64,
    pub psi: PsiKind,
    pub shift: bool,
    /// Also run the Carleman probe on `A(c + s(x − c))` for each factor.
    pub rescaled: bool,
    pub rescale_factors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub n: usize,
    pub problem: ProblemConfig,
    pub admissibility: AdmissibilityConfig,
    pub recon: ReconOptions,
    pub stability: StabilityConfig,
    pub probes: ProbeConfig,
    pub out_dir: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            n: 129,
            problem: ProblemConfig {
                source: ProblemSource::Manufactured(Manufactured::K1),
                seed: 0,
                forward_tol: 1e-12,
                noise: NoiseModel::None,
                noise_eps: 0.0,
            },
            admissibility: AdmissibilityConfig {
                q0: 1.0,
                k: 0.5,
                q_star: None,
            },
            recon: ReconOptions::default(),
            stability: StabilityConfig {
                eps: vec![1e-1, 1e-2, 1e-3, 1e-4],
                theta: 0.2,
                family: FamilyKind::Noise,
                noise: NoiseModel::Deterministic,
                inset_margin: 0.1,
                amplitude_cap: 1.0,
                bands: DISTANCE_BANDS,
            },
            probes: ProbeConfig {
                select: ProbeKind::ALL.to_vec(),
                lattice: 5,
                radii: vec![0.03, 0.06],
                delta: 1.0,
                kappa: 3.0,
                sphere_r: 0.05,
                ucp_radii: vec![0.02, 0.05],
                ucp_norm: BallNorm::H1,
                r_star: 0.3,
                delta_lattice: 11,
                lambda: 2.0,
                lambda0: 1.0,
                tau: vec![4.0, 8.0, 16.0, 32.0],
                tau0: 4.0,
                psi: PsiKind::Linear,
                shift: false,
                rescaled: false,
                rescale_factors: vec![0.5, 0.25],
            },
            out_dir: PathBuf::from("qscope-out"),
        }
    }
}

const SECTIONS: [&str; 7] = [
    "grid",
    "problem",
    "admissibility",
    "recon",
    "stability",
    "probes",
    "output",
];

fn scalar<T: FromStr>(line: usize, key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().or_else(|_| {
        err(
            line,
            format!(
                "{key}: cannot parse {v:?} as {}",
                std::any::type_name::<T>()
            ),
        )
    })
}

fn list<T: FromStr>(line: usize, key: &str, v: &str) -> Result<Vec<T>, ConfigError> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| scalar(line, key, s))
        .collect()
}

fn positive(line: usize, key: &str, v: f64) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        err(line, format!("{key} must be positive and finite, got {v}"))
    }
}

fn fmt_list<T: std::fmt::Debug>(v: &[T]) -> String {
    v.iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn noise_tag(m: NoiseModel) -> &'static str {
    m.tag()
}

fn norm_tag(n: BallNorm) -> &'static str {
    match n {
        BallNorm::H1 => "h1",
        BallNorm::L2 => "l2",
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Config::default();
        let mut section: Option<&str> = None;
        let mut seen = BTreeSet::new();
        // Line of each key for the cross-field checks.
        let mut at = std::collections::BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(name) = body.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim();
                match SECTIONS.iter().find(|&&s| s == name) {
                    Some(s) => section = Some(s),
                    None => return err(line, format!("unknown section [{name}]")),
                }
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return err(line, format!("expected `key = value`, got {body:?}"));
            };
            let (key, value) = (key.trim(), value.trim());
            let Some(sec) = section else {
                return err(line, format!("key {key:?} outside any section"));
            };
            if !seen.insert((sec, key.to_string())) {
                return err(line, format!("duplicate key {sec}.{key}"));
            }
            at.insert(format!("{sec}.{key}"), line);
            cfg.set(sec, key, value, line)?;
        }
        cfg.cross_check(|k| at.get(k).copied().unwrap_or(0))?;
        Ok(cfg)
    }

    fn set(&mut self, sec: &str, key: &str, v: &str, line: usize) -> Result<(), ConfigError> {
        let full = format!("{sec}.{key}");
        let f = |v: &str| scalar::<f64>(line, &full, v);
        let pos = |v: &str| f(v).and_then(|x| positive(line, &full, x));
        let unit = |v: &str| {
            f(v).and_then(|x| {
                if x > 0.0 && x < 1.0 {
                    Ok(x)
                } else {
                    err(line, format!("{full} must lie in (0, 1), got {x}"))
                }
            })
        };
        let pos_list = |v: &str| {
            let xs = list::<f64>(line, &full, v)?;
            if xs.is_empty() {
                return err(line, format!("{full} must not be empty"));
            }
            xs.into_iter()
                .map(|x| positive(line, &full, x))
                .collect::<Result<Vec<_>, _>>()
        };
        let noise =
            |v: &str| NoiseModel::from_tag(v).or_else(|e| err(line, format!("{full}: {e}")));
        let p = &mut self.probes;
        match (sec, key) {
            ("grid", "n") => {
                let n: usize = scalar(line, &full, v)?;
                if n < 3 {
                    return err(line, format!("grid.n must be at least 3, got {n}"));
                }
                self.n = n;
            }
            ("problem", "tag") => {
                self.problem.source = match v {
                    "files" => ProblemSource::Files {
                        a11: PathBuf::new(),
                        a12: PathBuf::new(),
                        a22: PathBuf::new(),
                        q: PathBuf::new(),
                        g: PathBuf::new(),
                    },
                    t => ProblemSource::Manufactured(
                        Manufactured::from_tag(t).or_else(|e| err(line, format!("{full}: {e}")))?,
                    ),
                };
            }
            ("problem", "a11" | "a12" | "a22" | "q" | "g") => {
                let ProblemSource::Files {
                    a11,
                    a12,
                    a22,
                    q,
                    g,
                } = &mut self.problem.source
                else {
                    return err(
                        line,
                        format!("{full} needs problem.tag = files on an earlier line"),
                    );
                };
                let slot = match key {
                    "a11" => a11,
                    "a12" => a12,
                    "a22" => a22,
                    "q" => q,
                    _ => g,
                };
                *slot = PathBuf::from(v);
            }
            ("problem", "seed") => self.problem.seed = scalar(line, &full, v)?,
            ("problem", "forward_tol") => self.problem.forward_tol = unit(v)?,
            ("problem", "noise") => self.problem.noise = noise(v)?,
            ("problem", "noise_eps") => {
                let e = f(v)?;
                if !(e >= 0.0 && e.is_finite()) {
                    return err(line, format!("{full} must be non-negative, got {e}"));
                }
                self.problem.noise_eps = e;
            }
            ("admissibility", "q0") => self.admissibility.q0 = pos(v)?,
            ("admissibility", "k") => self.admissibility.k = unit(v)?,
            ("admissibility", "q_star") => {
                self.admissibility.q_star = if v == "none" { None } else { Some(f(v)?) };
            }
            ("recon", "w_floor") => self.recon.w_floor = pos(v)?,
            ("recon", "damping") => self.recon.damping = f(v)?,
            ("recon", "max_picard") => self.recon.max_picard = scalar(line, &full, v)?,
            ("recon", "picard_tol") => self.recon.picard_tol = pos(v)?,
            ("recon", "trust_threshold") => self.recon.trust_threshold = f(v)?,
            ("recon", "q_min") => self.recon.q_min = f(v)?,
            ("recon", "q_max") => self.recon.q_max = f(v)?,
            ("recon", "sign_recovery") => self.recon.sign_recovery = scalar(line, &full, v)?,
            ("recon", "linear_tol") => self.recon.linear_tol = unit(v)?,
            ("stability", "eps") => self.stability.eps = pos_list(v)?,
            ("stability", "theta") => {
                let t = f(v)?;
                if !(t > 0.0 && t < 0.25) {
                    return err(
                        line,
                        format!("stability.theta must lie in (0, 1/4), got {t}"),
                    );
                }
                self.stability.theta = t;
            }
            ("stability", "family") => {
                self.stability.family = match v {
                    "noise" => FamilyKind::Noise,
                    "bump" => FamilyKind::Bump,
                    "inset" => FamilyKind::Inset,
                    _ => {
                        return err(
                            line,
                            format!("{full}: expected noise, bump or inset, got {v:?}"),
                        )
                    }
                }
            }
            ("stability", "noise") => self.stability.noise = noise(v)?,
            ("stability", "inset_margin") => {
                let m = f(v)?;
                if !(m > 0.0 && m < 0.5) {
                    return err(line, format!("{full} must lie in (0, 1/2), got {m}"));
                }
                self.stability.inset_margin = m;
            }
            ("stability", "amplitude_cap") => self.stability.amplitude_cap = pos(v)?,
            ("stability", "bands") => {
                let b = pos_list(v)?;
                if b.len() != 3 || !(b[0] < b[1] && b[1] < b[2]) {
                    return err(
                        line,
                        format!("{full} needs three increasing edges, got {v:?}"),
                    );
                }
                self.stability.bands = [b[0], b[1], b[2]];
            }
            ("probes", "select") => {
                let mut sel = Vec::new();
                for t in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    match ProbeKind::from_tag(t) {
                        Some(k) if !sel.contains(&k) => sel.push(k),
                        Some(_) => {}
                        None => return err(line, format!("{full}: unknown probe {t:?}")),
                    }
                }
                sel.sort();
                p.select = sel;
            }
            ("probes", "lattice") => {
                p.lattice = scalar(line, &full, v)?;
                if p.lattice == 0 {
                    return err(line, format!("{full} must be at least 1"));
                }
            }
            ("probes", "radii") => p.radii = pos_list(v)?,
            ("probes", "delta") => p.delta = pos(v)?,
            ("probes", "kappa") => {
                p.kappa = f(v)?;
                if !(p.kappa > 1.0) {
                    return err(line, format!("{full} must exceed 1, got {}", p.kappa));
                }
            }
            ("probes", "sphere_r") => p.sphere_r = pos(v)?,
            ("probes", "ucp_radii") => p.ucp_radii = pos_list(v)?,
            ("probes", "ucp_norm") => {
                p.ucp_norm = match v {
                    "h1" => BallNorm::H1,
                    "l2" => BallNorm::L2,
                    _ => return err(line, format!("{full}: expected h1 or l2, got {v:?}")),
                }
            }
            ("probes", "r_star") => p.r_star = pos(v)?,
            ("probes", "delta_lattice") => {
                p.delta_lattice = scalar(line, &full, v)?;
                if p.delta_lattice < 2 {
                    return err(line, format!("{full} must be at least 2"));
                }
            }
            ("probes", "lambda") => p.lambda = pos(v)?,
            ("probes", "lambda0") => p.lambda0 = pos(v)?,
            ("probes", "tau") => p.tau = pos_list(v)?,
            ("probes", "tau0") => p.tau0 = pos(v)?,
            ("probes", "psi") => {
                p.psi = match v {
                    "linear" => PsiKind::Linear,
                    "radial" => PsiKind::Radial,
                    _ => {
                        return err(
                            line,
                            format!("{full}: expected linear or radial, got {v:?}"),
                        )
                    }
                }
            }
            ("probes", "shift") => p.shift = scalar(line, &full, v)?,
            ("probes", "rescaled") => p.rescaled = scalar(line, &full, v)?,
            ("probes", "rescale_factors") => {
                p.rescale_factors = pos_list(v)?;
                if p.rescale_factors.iter().any(|&s| s > 1.0) {
                    return err(line, format!("{full}: factors must lie in (0, 1]"));
                }
            }
            ("output", "dir") => self.out_dir = PathBuf::from(v),
            _ => return err(line, format!("unknown key {full}")),
        }
        Ok(())
    }

    fn cross_check(&self, at: impl Fn(&str) -> usize) -> Result<(), ConfigError> {
        if let ProblemSource::Files {
            a11,
            a12,
            a22,
            q,
            g,
        } = &self.problem.source
        {
            for (name, path) in [("a11", a11), ("a12", a12), ("a22", a22), ("q", q), ("g", g)] {
                if path.as_os_str().is_empty() {
                    return err(
                        at("problem.tag"),
                        format!("problem.tag = files needs problem.{name}"),
                    );
                }
            }
        }
        if let Err(e) = self.recon.validate() {
            let line = [
                "recon.q_max",
                "recon.q_min",
                "recon.damping",
                "recon.trust_threshold",
                "recon.max_picard",
            ]
            .iter()
            .map(|k| at(k))
            .max()
            .unwrap_or(0);
            return err(line, e.to_string());
        }
        let p = &self.probes;
        let reach = 1.0 / (p.lattice as f64 + 1.0);
        if let Some(&r) = p.radii.iter().find(|&&r| !(2.0 * r < reach)) {
            return err(
                at("probes.radii").max(at("probes.lattice")),
                format!(
                    "probes.radii: 2r = {} must stay below the lattice margin {reach}",
                    2.0 * r
                ),
            );
        }
        if !(3.0 * p.sphere_r < reach) {
            return err(
                at("probes.sphere_r").max(at("probes.lattice")),
                format!(
                    "probes.sphere_r: 3r = {} must stay below the lattice margin {reach}",
                    3.0 * p.sphere_r
                ),
            );
        }
        if p.lambda < p.lambda0 {
            return err(
                at("probes.lambda").max(at("probes.lambda0")),
                format!(
                    "probes.lambda = {} is below lambda0 = {}",
                    p.lambda, p.lambda0
                ),
            );
        }
        if let Some(t) = p.tau.iter().find(|&&t| t < p.tau0) {
            return err(
                at("probes.tau").max(at("probes.tau0")),
                format!("probes.tau contains {t} below tau0 = {}", p.tau0),
            );
        }
        Ok(())
    }

    /// Canonical text form; [`Config::parse`] reads it back to an equal value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let p = &self.problem;
        let r = &self.recon;
        let st = &self.stability;
        let pr = &self.probes;
        let _ = writeln!(s, "[grid]\nn = {}\n", self.n);
        let _ = writeln!(s, "[problem]");
        match &p.source {
            ProblemSource::Manufactured(m) => {
                let _ = writeln!(s, "tag = {}", m.tag());
            }
            ProblemSource::Files {
                a11,
                a12,
                a22,
                q,
                g,
            } => {
                let _ = writeln!(s, "tag = files");
                for (k, v) in [("a11", a11), ("a12", a12), ("a22", a22), ("q", q), ("g", g)] {
                    let _ = writeln!(s, "{k} = {}", v.display());
                }
            }
        }
        let _ = writeln!(
            s,
            "seed = {}\nforward_tol = {:?}\nnoise = {}\nnoise_eps = {:?}\n",
            p.seed,
            p.forward_tol,
            noise_tag(p.noise),
            p.noise_eps
        );
        let a = &self.admissibility;
        let q_star = a.q_star.map_or("none".to_string(), |v| format!("{v:?}"));
        let _ = writeln!(
            s,
            "[admissibility]\nq0 = {:?}\nk = {:?}\nq_star = {q_star}\n",
            a.q0, a.k
        );
        let _ = writeln!(
            s,
            "[recon]\nw_floor = {:?}\ndamping = {:?}\nmax_picard = {}\npicard_tol = {:?}\ntrust_threshold = {:?}\n\
             q_min = {:?}\nq_max = {:?}\nsign_recovery = {}\nlinear_tol = {:?}\n",
            r.w_floor,
            r.damping,
            r.max_picard,
            r.picard_tol,
            r.trust_threshold,
            r.q_min,
            r.q_max,
            r.sign_recovery,
            r.linear_tol
        );
        let _ = writeln!(
            s,
            "[stability]\neps = {}\ntheta = {:?}\nfamily = {}\nnoise = {}\ninset_margin = {:?}\namplitude_cap = {:?}\nbands = {}\n",
            fmt_list(&st.eps),
            st.theta,
            st.family.tag(),
            noise_tag(st.noise),
            st.inset_margin,
            st.amplitude_cap,
            fmt_list(&st.bands)
        );
        let select: Vec<&str> = pr.select.iter().map(|k| k.tag()).collect();
        let _ = writeln!(
            s,
            "[probes]\nselect = {}\nlattice = {}\nradii = {}\ndelta = {:?}\nkappa = {:?}\nsphere_r = {:?}\n\
             ucp_radii = {}\nucp_norm = {}\nr_star = {:?}\ndelta_lattice = {}\nlambda = {:?}\nlambda0 = {:?}\n\
             tau = {}\ntau0 = {:?}\npsi = {}\nshift = {}\nrescaled = {}\nrescale_factors = {}\n",
            select.join(", "),
            pr.lattice,
            fmt_list(&pr.radii),
            pr.delta,
            pr.kappa,
            pr.sphere_r,
            fmt_list(&pr.ucp_radii),
            norm_tag(pr.ucp_norm),
            pr.r_star,
            pr.delta_lattice,
            pr.lambda,
            pr.lambda0,
            fmt_list(&pr.tau),
            pr.tau0,
            match pr.psi {
                PsiKind::Linear => "linear",
                PsiKind::Radial => "radial",
            },
            pr.shift,
            pr.rescaled,
            fmt_list(&pr.rescale_factors)
        );
        let _ = writeln!(s, "[output]\ndir = {}", self.out_dir.display());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let c = Config::parse("[grid]\nn = 129\n[problem]\ntag = k1\n").unwrap();
        assert_eq!(c, Config::default());
    }

    #[test]
    fn small_grid_rejected_at_its_line() {
        let e = Config::parse("# comment\n[grid]\nn = 2\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn theta_must_stay_below_quarter() {
        let e = Config::parse("[stability]\n\ntheta = 0.3\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("theta"));
    }

    #[test]
    fn unknown_key_and_section() {
        assert_eq!(Config::parse("[grid]\nm = 3\n").unwrap_err().line, 2);
        assert_eq!(Config::parse("[grids]\n").unwrap_err().line, 1);
        assert_eq!(Config::parse("n = 3\n").unwrap_err().line, 1);
        assert_eq!(Config::parse("[grid]\nn = 9\nn = 9\n").unwrap_err().line, 3);
    }

    #[test]
    fn type_mismatch_reported() {
        let e = Config::parse("[grid]\nn = lots\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(Config::parse("[recon]\nsign_recovery = maybe\n").is_err());
    }

    #[test]
    fn cross_field_checks() {
        let e = Config::parse("[recon]\nq_min = 5\nq_max = 2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(Config::parse("[probes]\nlambda = 0.5\n").is_err());
        assert!(Config::parse("[probes]\ntau = 2, 8\n").is_err());
        assert!(Config::parse("[probes]\nsphere_r = 0.1\n").is_err());
        assert!(Config::parse("[problem]\ntag = files\na11 = a.txt\n").is_err());
        assert!(Config::parse("[problem]\nq = q.txt\n").is_err());
    }

    #[test]
    fn empty_select_is_allowed() {
        let c = Config::parse("[probes]\nselect =\n").unwrap();
        assert!(c.probes.select.is_empty());
    }

    #[test]
    fn round_trip() {
        let mut c = Config::parse(
            "[grid]\nn = 65\n[problem]\ntag = k2\nseed = 7\nnoise = random\nnoise_eps = 0.001\n\
             [admissibility]\nq_star = 2.5\n[stability]\neps = 0.3, 1e-5\nfamily = inset\n\
             [probes]\nselect = ucp, caccioppoli\npsi = radial\nrescaled = true\n[output]\ndir = /tmp/x y\n",
        )
        .unwrap();
        assert_eq!(Config::parse(&c.to_text()).unwrap(), c);
        c.problem.source = ProblemSource::Files {
            a11: "a11.txt".into(),
            a12: "a12.txt".into(),
            a22: "a22.txt".into(),
            q: "q.txt".into(),
            g: "g.txt".into(),
        };
        c.probes.select.clear();
        assert_eq!(Config::parse(&c.to_text()).unwrap(), c);
    }
}
