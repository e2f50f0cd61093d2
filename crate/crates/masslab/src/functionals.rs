//! The four constrained energy functionals, their first variations, the
//! sharp interpolation inequality, and scaling-identity residuals.
//!
//! All models share the critical focusing exponent p = (2N+4)/N and the
//! focusing coefficient N/(2N+4):
//!
//! * `Sp`             E(u)     = A + B - C                     (N = 3)
//! * `SpConfined`     I(u)     = A + D + B - C                 (N = 3)
//! * `Nls`            F(u)     = A - C                         (N = 1..3)
//! * `NlsDecaying`    F_mu(u)  = A - mu D - C                  (N = 1..3)
//!
//! with A = (1/2) int |grad u|^2, B the Hartree energy, C the focusing
//! term, and D = (1/2) int V u^2.
//!
//! Gradients are exact Riesz representatives of the discrete energies under
//! the grid's quadrature inner product: the kinetic part is assembled as
//! D^T W D / W from the banded derivative, so directional derivatives of
//! `energy` match `<gradient, v>` to round-off, and the smooth interior
//! weights keep the same vector pointwise consistent with the continuum
//! Euler-Lagrange operator -Delta u (+ V u) (+ phi_u u) - |u|^(4/N) u.

use serde::Serialize;
use std::sync::Arc;

use crate::error::{MasslabError, Result};
use crate::grid::Field;
use crate::hartree;

/// External potential shapes admitted by the confined and decaying models.
#[derive(Debug, Clone, Serialize)]
pub enum Potential {
    /// V(r) = strength * r^2; vanishes at the origin and grows without
    /// bound.
    Harmonic { strength: f64 },
    /// V(r) = amplitude * exp(-(r/width)^2); nonnegative and decaying.
    GaussianDecay { amplitude: f64, width: f64 },
    /// Piecewise-linear table of nonnegative samples.
    Table { radii: Vec<f64>, values: Vec<f64> },
}

impl Potential {
    pub fn harmonic(strength: f64) -> Result<Self> {
        if !(strength.is_finite() && strength > 0.0) {
            return Err(MasslabError::Config(format!(
                "harmonic strength must be positive, got {strength}"
            )));
        }
        Ok(Self::Harmonic { strength })
    }

    pub fn gaussian_decay(amplitude: f64, width: f64) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude > 0.0 && width.is_finite() && width > 0.0) {
            return Err(MasslabError::Config(format!(
                "gaussian potential needs positive amplitude and width, got {amplitude}, {width}"
            )));
        }
        Ok(Self::GaussianDecay { amplitude, width })
    }

    pub fn table(radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.len() != values.len() || radii.len() < 2 {
            return Err(MasslabError::Config(
                "potential table needs matching radii/values with at least two entries".into(),
            ));
        }
        if radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(MasslabError::Config(
                "potential table radii must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|&v| !(v.is_finite() && v >= 0.0)) {
            return Err(MasslabError::Config(
                "potential table values must be nonnegative".into(),
            ));
        }
        Ok(Self::Table { radii, values })
    }

    /// V(r), linearly interpolated and end-clamped for tables.
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            Self::Harmonic { strength } => strength * r * r,
            Self::GaussianDecay { amplitude, width } => {
                let x = r / width;
                amplitude * (-x * x).exp()
            }
            Self::Table { radii, values } => {
                if r <= radii[0] {
                    return values[0];
                }
                if r >= radii[radii.len() - 1] {
                    return values[values.len() - 1];
                }
                let k = radii.partition_point(|&x| x <= r) - 1;
                let t = (r - radii[k]) / (radii[k + 1] - radii[k]);
                values[k] + t * (values[k + 1] - values[k])
            }
        }
    }

    /// Upper bound V0 with 0 <= V <= V0; unbounded for the harmonic kind.
    pub fn upper_bound(&self) -> f64 {
        match self {
            Self::Harmonic { .. } => f64::INFINITY,
            Self::GaussianDecay { amplitude, .. } => *amplitude,
            Self::Table { values, .. } => values.iter().copied().fold(0.0, f64::max),
        }
    }

    /// V -> +inf at infinity (compact sublevels).
    pub fn is_confining(&self) -> bool {
        matches!(self, Self::Harmonic { .. })
    }

    /// Bounded with V -> 0 at infinity.
    pub fn is_decaying(&self) -> bool {
        match self {
            Self::GaussianDecay { .. } => true,
            Self::Table { values, .. } => values[values.len() - 1] == 0.0,
            Self::Harmonic { .. } => false,
        }
    }
}

/// Which constrained functional is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModelKind {
    Sp,
    SpConfined,
    Nls,
    NlsDecaying,
}

/// A fully specified energy model: kind, dimension, potential, coupling.
#[derive(Debug, Clone, Serialize)]
pub struct Model {
    kind: ModelKind,
    dim: usize,
    potential: Option<Potential>,
    mu: Option<f64>,
}

impl Model {
    /// Free Schrodinger-Poisson energy in three dimensions.
    pub fn sp() -> Self {
        Self {
            kind: ModelKind::Sp,
            dim: 3,
            potential: None,
            mu: None,
        }
    }

    /// Schrodinger-Poisson energy with a confining potential.
    pub fn sp_confined(potential: Potential) -> Result<Self> {
        if !potential.is_confining() && !matches!(potential, Potential::Table { .. }) {
            return Err(MasslabError::Model(
                "the confined model needs a confining potential (harmonic or table)".into(),
            ));
        }
        Ok(Self {
            kind: ModelKind::SpConfined,
            dim: 3,
            potential: Some(potential),
            mu: None,
        })
    }

    /// Free critical Schrodinger energy in dimension `dim`.
    pub fn nls(dim: usize) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(MasslabError::Model(format!(
                "dimension must be 1, 2 or 3, got {dim}"
            )));
        }
        Ok(Self {
            kind: ModelKind::Nls,
            dim,
            potential: None,
            mu: None,
        })
    }

    /// Critical Schrodinger energy with an attractive decaying potential of
    /// coupling `mu`.
    pub fn nls_decaying(dim: usize, potential: Potential, mu: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(MasslabError::Model(format!(
                "dimension must be 1, 2 or 3, got {dim}"
            )));
        }
        if !potential.is_decaying() {
            return Err(MasslabError::Model(
                "the decaying model needs a bounded potential vanishing at infinity".into(),
            ));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(MasslabError::Model(format!(
                "coupling mu must be positive, got {mu}"
            )));
        }
        Ok(Self {
            kind: ModelKind::NlsDecaying,
            dim,
            potential: Some(potential),
            mu: Some(mu),
        })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn potential(&self) -> Option<&Potential> {
        self.potential.as_ref()
    }

    pub fn mu(&self) -> Option<f64> {
        self.mu
    }

    /// Critical focusing exponent p = (2N+4)/N.
    pub fn exponent(&self) -> f64 {
        (2 * self.dim + 4) as f64 / self.dim as f64
    }

    /// Focusing coefficient N/(2N+4).
    pub fn focusing_coefficient(&self) -> f64 {
        self.dim as f64 / (2 * self.dim + 4) as f64
    }

    pub fn has_hartree(&self) -> bool {
        matches!(self.kind, ModelKind::Sp | ModelKind::SpConfined)
    }

    fn check_field(&self, field: &Field) -> Result<()> {
        if field.dim() != self.dim {
            return Err(MasslabError::Model(format!(
                "field dimension {} does not match model dimension {}",
                field.dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Energy components of the model at `field`.
    pub fn energy(&self, field: &Field) -> Result<EnergyBreakdown> {
        self.check_field(field)?;
        let kinetic = kinetic_energy(field)?;
        let hartree_term = if self.has_hartree() {
            hartree::hartree_energy(field)?
        } else {
            0.0
        };
        let focusing = self.focusing_coefficient() * integral_power(field, self.exponent())?;
        let potential = self.signed_potential_term(field)?;
        Ok(EnergyBreakdown {
            kinetic,
            hartree: hartree_term,
            focusing,
            potential,
            total: kinetic + hartree_term + potential - focusing,
        })
    }

    /// Signed potential contribution: +D for the confined model,
    /// -mu D for the decaying model, 0 otherwise.
    fn signed_potential_term(&self, field: &Field) -> Result<f64> {
        match self.kind {
            ModelKind::SpConfined => Ok(self.raw_potential_term(field)?),
            ModelKind::NlsDecaying => Ok(-self.mu.unwrap() * self.raw_potential_term(field)?),
            _ => Ok(0.0),
        }
    }

    /// D(u) = (1/2) int V u^2 >= 0.
    pub fn raw_potential_term(&self, field: &Field) -> Result<f64> {
        let pot = self
            .potential
            .as_ref()
            .ok_or_else(|| MasslabError::Model("model carries no external potential".into()))?;
        let grid = field.grid();
        let integrand: Vec<f64> = grid
            .nodes()
            .iter()
            .zip(field.values())
            .map(|(&r, &u)| pot.eval(r) * u * u)
            .collect();
        Ok(0.5 * grid.integrate(&integrand)?)
    }

    /// Unconstrained first variation of the energy, as a field g with
    /// `<g, v> = d/d eps energy(u + eps v)` under the quadrature inner
    /// product.
    pub fn gradient(&self, field: &Field) -> Result<Field> {
        self.check_field(field)?;
        let grid = field.grid();
        let mut g = kinetic_gradient(field)?;
        if self.has_hartree() {
            let phi = hartree::coulomb_potential(field)?.potential;
            for (gi, (p, u)) in g.iter_mut().zip(phi.values().iter().zip(field.values())) {
                *gi += p * u;
            }
        }
        match self.kind {
            ModelKind::SpConfined => {
                let pot = self.potential.as_ref().unwrap();
                for (gi, (&r, &u)) in g.iter_mut().zip(grid.nodes().iter().zip(field.values())) {
                    *gi += pot.eval(r) * u;
                }
            }
            ModelKind::NlsDecaying => {
                let pot = self.potential.as_ref().unwrap();
                let mu = self.mu.unwrap();
                for (gi, (&r, &u)) in g.iter_mut().zip(grid.nodes().iter().zip(field.values())) {
                    *gi -= mu * pot.eval(r) * u;
                }
            }
            _ => {}
        }
        let nl_power = 4.0 / self.dim as f64;
        for (gi, &u) in g.iter_mut().zip(field.values()) {
            *gi -= nonlinear_term(u, nl_power);
        }
        Field::new(Arc::clone(grid), g)
    }

    /// Left-minus-right residual of the scaling identity every constrained
    /// critical point with multiplier `lambda` must satisfy.
    ///
    /// For the Schrodinger-Poisson kinds this is
    /// A + 5B - 3C - (3/2) lambda c (stated for vanishing external
    /// potential; with a potential it is a diagnostic only). For the
    /// Schrodinger kinds it is
    /// (N-2)/2 int |grad u|^2 - N^2/(2N+4) int |u|^p - (N/2) lambda c.
    pub fn pohozaev_residual(&self, field: &Field, lambda: f64) -> Result<f64> {
        self.check_field(field)?;
        let c = field.mass();
        match self.kind {
            ModelKind::Sp | ModelKind::SpConfined => {
                let a = kinetic_energy(field)?;
                let b = hartree::hartree_energy(field)?;
                let cc = self.focusing_coefficient() * integral_power(field, self.exponent())?;
                Ok(a + 5.0 * b - 3.0 * cc - 1.5 * lambda * c)
            }
            ModelKind::Nls | ModelKind::NlsDecaying => {
                let n = self.dim as f64;
                let grad_sq = 2.0 * kinetic_energy(field)?;
                let p_int = integral_power(field, self.exponent())?;
                Ok((n - 2.0) / 2.0 * grad_sq
                    - n * n / (2.0 * n + 4.0) * p_int
                    - n / 2.0 * lambda * c)
            }
        }
    }
}

/// Energy components A, B, C, D and the model total.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnergyBreakdown {
    /// A = (1/2) int |grad u|^2.
    pub kinetic: f64,
    /// B = (1/4) int phi_u u^2 (zero for the Schrodinger kinds).
    pub hartree: f64,
    /// C = N/(2N+4) int |u|^((2N+4)/N).
    pub focusing: f64,
    /// Signed potential contribution (+D confined, -mu D decaying, else 0).
    pub potential: f64,
    /// kinetic + hartree + potential - focusing.
    pub total: f64,
}

/// |u|^(4/N) u with the continuous extension 0 at u = 0.
fn nonlinear_term(u: f64, power: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    u.abs().powf(power) * u
}

/// int |u|^p over R^N.
pub fn integral_power(field: &Field, p: f64) -> Result<f64> {
    let grid = field.grid();
    let integrand: Vec<f64> = field.values().iter().map(|&u| u.abs().powf(p)).collect();
    grid.integrate(&integrand)
}

/// Kinetic energy A(u) = (1/2) int |grad u|^2 from the fourth-order
/// derivative and the grid quadrature.
pub fn kinetic_energy(field: &Field) -> Result<f64> {
    let grid = field.grid();
    let du = grid.derivative(field.values())?;
    let sq: Vec<f64> = du.iter().map(|d| d * d).collect();
    Ok(0.5 * grid.integrate(&sq)?)
}

/// Exact quadrature gradient of [`kinetic_energy`]: W^-1 D^T W D u, with
/// the flux-form origin value substituted where the origin carries zero
/// quadrature weight (N >= 2).
pub fn kinetic_gradient(field: &Field) -> Result<Vec<f64>> {
    let grid = field.grid();
    let w = grid.weights();
    let du = grid.derivative(field.values())?;
    let weighted: Vec<f64> = du.iter().zip(w).map(|(d, wi)| d * wi).collect();
    let mut g = grid.derivative_transpose(&weighted)?;
    for (gi, wi) in g.iter_mut().zip(w) {
        if *wi > 0.0 {
            *gi /= wi;
        }
    }
    if grid.dim() >= 2 {
        let u = field.values();
        let h = grid.step();
        g[0] = -2.0 * grid.dim() as f64 * (u[1] - u[0]) / (h * h);
    }
    Ok(g)
}

/// Sharp-constant gap of the interpolation inequality:
///
///   (N+2)/(N c*^(2/N)) int |grad u|^2 (int u^2)^(2/N) - int |u|^((2N+4)/N),
///
/// nonnegative for every field up to quadrature slack, and zero exactly on
/// rescaled dilates of the ground state.
pub fn gn_gap(field: &Field, cstar: f64) -> Result<f64> {
    if field.mass() <= 0.0 {
        return Err(MasslabError::Domain(
            "the sharp-constant gap needs a nonzero field".into(),
        ));
    }
    if !(cstar.is_finite() && cstar > 0.0) {
        return Err(MasslabError::Domain(format!(
            "threshold mass must be positive, got {cstar}"
        )));
    }
    let n = field.dim() as f64;
    let p = (2.0 * n + 4.0) / n;
    let grad_sq = 2.0 * kinetic_energy(field)?;
    let best = (n + 2.0) / (n * cstar.powf(2.0 / n));
    Ok(best * grad_sq * field.mass().powf(2.0 / n) - integral_power(field, p)?)
}
