//! Pseudospherical (K = −1) surfaces in asymptotic coordinates: sine-Gordon seeds,
//! real frames, real simple factors, and the Lie/Bäcklund decomposition.

use crate::backlund::procrustes_align;
use crate::dressing::{Dressing, SimpleFactor};
use crate::error::{Error, Result};
use crate::framing::{self, Case, IntegrationOptions, DEFAULT_DLAMBDA, FORMS_MARGIN};
use crate::grid::{Field, FrameField, Grid, ScalarField, SurfaceField};
use crate::linalg::{c, IsotropicLine, C64, I, ZERO};
use crate::par;
use crate::stencil::fornberg;
use std::f64::consts::PI;

/// Grid in asymptotic coordinates: `x` is ξ and `y` is η.
pub type LorentzGrid = Grid;

/// Tolerance for the reality pattern of a real factor.
const REALITY_TOL: f64 = 1e-12;

pub fn sg_seed_vacuum(grid: LorentzGrid) -> ScalarField {
    framing::seed_vacuum(grid)
}

/// Kink `ω = 4 arctan exp(aξ + η/a)`.
pub fn sg_seed_kink(grid: LorentzGrid, a: f64) -> Result<ScalarField> {
    grid.validate()?;
    if a == 0.0 || !a.is_finite() {
        return Err(Error::Domain("kink rapidity must be finite and nonzero".into()));
    }
    Ok(Field::from_fn(grid, |i, j| c(4.0 * (a * grid.x(i) + grid.y(j) / a).exp().atan(), 0.0)))
}

/// Max of `|ω_ξη − sin ω|` over nodes two away from the edge, with a fourth-order
/// mixed difference (second order on grids thinner than 5).
pub fn sine_gordon_residual(omega: &ScalarField) -> Result<f64> {
    let g = omega.grid;
    if g.nx < 3 || g.ny < 3 {
        return Err(Error::Precondition("residual needs at least a 3×3 grid".into()));
    }
    let width = if g.nx >= 5 && g.ny >= 5 { 5 } else { 3 };
    let r = width / 2;
    let xs: Vec<f64> = (0..width).map(|k| k as f64 - r as f64).collect();
    let w = fornberg(0.0, &xs, 1)[1].clone();
    let mut worst = 0.0f64;
    for (i, j) in g.interior(r) {
        let mut mixed = ZERO;
        for (a, wa) in w.iter().enumerate() {
            for (b, wb) in w.iter().enumerate() {
                mixed += omega.at(i + a - r, j + b - r) * (wa * wb);
            }
        }
        mixed /= g.hx * g.hy;
        worst = worst.max((mixed - omega.at(i, j).sin()).norm());
    }
    Ok(worst)
}

fn check_real_lambda(lambda: f64) -> Result<C64> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain("λ must be real and nonzero".into()));
    }
    Ok(c(lambda, 0.0))
}

/// Extended frame of the sine-Gordon Lax pair at real λ.
pub fn sg_lax_and_frame(omega: &ScalarField, lambda: f64, grid: LorentzGrid) -> Result<FrameField> {
    let lam = check_real_lambda(lambda)?;
    if !grid.same_shape(&omega.grid) {
        return Err(Error::Domain("grid does not match the seed".into()));
    }
    let mut om = omega.clone();
    om.grid = grid;
    framing::integrate_frame_with(Case::Negative, &om, lam, IntegrationOptions::default())
}

/// Sym surface `F = −λ∂_λΦ Φ⁻¹`.
pub fn sg_sym_surface(omega: &ScalarField, lambda: f64) -> Result<SurfaceField> {
    let lam = check_real_lambda(lambda)?;
    let [m, z, p] = framing::sym_frames(Case::Negative, omega, lam, DEFAULT_DLAMBDA, IntegrationOptions::default())?;
    framing::sym_from_frames(&m, &z, &p, DEFAULT_DLAMBDA)
}

/// A simple factor that commutes with complex conjugation: `α ∈ iℝ` and `conj(L) = QL`,
/// i.e. `a` and `b` purely imaginary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealSimpleFactor {
    pub alpha: C64,
    pub line: IsotropicLine,
}

impl RealSimpleFactor {
    pub fn new(alpha: C64, line: IsotropicLine) -> Result<Self> {
        line.validate()?;
        if alpha.re.abs() > REALITY_TOL * alpha.norm() || alpha.im == 0.0 {
            return Err(Error::Domain(format!("α = {alpha} is not a nonzero imaginary number")));
        }
        if line.a.re.abs() > REALITY_TOL || line.b.re.abs() > REALITY_TOL {
            return Err(Error::Domain("line does not satisfy conj(L) = QL".into()));
        }
        Ok(RealSimpleFactor { alpha, line })
    }

    /// `α = ir` with the line `(i cos t / 2, i sin t / 2)`.
    pub fn from_params(r: f64, t: f64) -> Result<Self> {
        let line = IsotropicLine::new(I * (0.5 * t.cos()), I * (0.5 * t.sin()))?;
        Self::new(c(0.0, r), line)
    }

    pub fn simple(&self) -> SimpleFactor {
        SimpleFactor { alpha: self.alpha, line: self.line }
    }

    /// The β of `B_β = L_β⁻¹ ∘ B₁ ∘ L_β` realized by this factor at real λ: `r/λ` for `α = ir`.
    /// The normal angle satisfies `tan(σ/2) = 1/β`, and the vacuum goes to the kink
    /// with rapidity `1/β`.
    pub fn lie_parameter(&self, lambda: f64) -> f64 {
        self.alpha.im / lambda
    }

    /// `cos σ = (r² − λ²)/(r² + λ²)` for `α = ir`.
    pub fn normal_angle_cos(&self, lambda: f64) -> f64 {
        let r = self.alpha.im;
        (r * r - lambda * lambda) / (r * r + lambda * lambda)
    }

    /// `|F̃ − F| = sin σ`.
    pub fn displacement_length(&self, lambda: f64) -> f64 {
        let r = self.alpha.im;
        (2.0 * r * lambda / (r * r + lambda * lambda)).abs()
    }
}

/// Dressing of a sine-Gordon seed by one real factor at real λ.
pub fn sg_dressing(sf: &RealSimpleFactor, omega: &ScalarField, lambda: f64) -> Result<Dressing> {
    let lam = check_real_lambda(lambda)?;
    Dressing::new(Case::Negative, omega, &[sf.simple()], lam, DEFAULT_DLAMBDA, IntegrationOptions::default())
}

/// Dressed frame `Φ̃_λ`; real for real λ.
pub fn sg_dress(sf: &RealSimpleFactor, omega: &ScalarField, lambda: f64) -> Result<FrameField> {
    sg_dressing(sf, omega, lambda)?.frame()
}

/// Angle between asymptotic directions, `ω = atan2(f, F)` from `F = cos ω` in I and
/// `f = sin ω` in II, on the grid shrunk by [`FORMS_MARGIN`] and unwrapped from the basepoint.
pub fn extract_omega(f: &SurfaceField, phi: &SurfaceField) -> Result<ScalarField> {
    let forms = framing::fundamental_forms(f, phi)?;
    let g = f.grid;
    let m = FORMS_MARGIN;
    if g.nx <= 2 * m || g.ny <= 2 * m || g.i0 < m || g.j0 < m || g.i0 + m >= g.nx || g.j0 + m >= g.ny {
        return Err(Error::Domain("grid too small to extract ω around the basepoint".into()));
    }
    let out = Grid::new(g.nx - 2 * m, g.ny - 2 * m, g.hx, g.hy, g.i0 - m, g.j0 - m)?;
    let mut raw = vec![0.0; out.len()];
    for (i, j) in out.nodes() {
        let fm = forms.at(i + m, j + m).expect("interior node has forms");
        raw[out.idx(i, j)] = fm.f.re.atan2(fm.f_big.re);
    }
    let unwrapped = unwrap_from_basepoint(out, &raw);
    Ok(Field { grid: out, data: unwrapped.into_iter().map(|v| c(v, 0.0)).collect() })
}

fn unwrap_step(prev: f64, next: f64) -> f64 {
    next - 2.0 * PI * ((next - prev) / (2.0 * PI)).round()
}

fn unwrap_from_basepoint(g: Grid, raw: &[f64]) -> Vec<f64> {
    let mut out = raw.to_vec();
    for i in g.i0 + 1..g.nx {
        out[g.idx(i, g.j0)] = unwrap_step(out[g.idx(i - 1, g.j0)], raw[g.idx(i, g.j0)]);
    }
    for i in (0..g.i0).rev() {
        out[g.idx(i, g.j0)] = unwrap_step(out[g.idx(i + 1, g.j0)], raw[g.idx(i, g.j0)]);
    }
    for i in 0..g.nx {
        for j in g.j0 + 1..g.ny {
            out[g.idx(i, j)] = unwrap_step(out[g.idx(i, j - 1)], raw[g.idx(i, j)]);
        }
        for j in (0..g.j0).rev() {
            out[g.idx(i, j)] = unwrap_step(out[g.idx(i, j + 1)], raw[g.idx(i, j)]);
        }
    }
    out
}

/// `ω^β(ξ, η) = ω(βξ, η/β)` on the largest same-spacing grid mapped into the source.
pub fn lie_reparam(omega: &ScalarField, beta: f64) -> Result<ScalarField> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain("Lie parameter must be positive".into()));
    }
    let g = omega.grid;
    let fit = |k: usize, scale: f64| (k as f64 / scale + 1e-9).floor() as usize;
    let (left, right) = (fit(g.i0, beta), fit(g.nx - 1 - g.i0, beta));
    let (down, up) = (fit(g.j0, 1.0 / beta), fit(g.ny - 1 - g.j0, 1.0 / beta));
    let out = Grid::new(left + right + 1, down + up + 1, g.hx, g.hy, left, down)
        .map_err(|_| Error::Domain("Lie reparametrization leaves no grid".into()))?;
    let data = par::try_map(out.len(), |k| {
        let (i, j) = (k % out.nx, k / out.nx);
        omega.interpolate(beta * out.x(i), out.y(j) / beta)
    })?;
    Ok(Field { grid: out, data })
}

/// Compares `B_β` with `L_β⁻¹ ∘ B₁ ∘ L_β` on a seed.
///
/// Since `Φ^{ω^β}_μ(ξ, η) = Φ^ω_{βμ}(βξ, η/β)`, `B_β` is dressing at λ = 1 by the real
/// factor `α = iβ`. The right side dresses `ω^β` by `α = i` and reads the result at
/// λ = 1/β, which undoes the Lie transform on surfaces. Both surfaces are compared at the
/// images of the reparametrized grid after rigid alignment; returns the max pointwise deviation.
pub fn lie_backlund_decomposition_check(omega: &ScalarField, beta: f64) -> Result<f64> {
    lie_backlund_decomposition_check_with(omega, beta, IsotropicLine::new(ZERO, c(0.0, 0.5))?)
}

pub fn lie_backlund_decomposition_check_with(omega: &ScalarField, beta: f64, line: IsotropicLine) -> Result<f64> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain("β must be positive".into()));
    }
    let lhs_factor = RealSimpleFactor::new(c(0.0, beta), line)?;
    let lhs = sg_dressing(&lhs_factor, omega, 1.0)?.surface()?;

    let reparam = lie_reparam(omega, beta)?;
    let rhs_factor = RealSimpleFactor::new(I, line)?;
    let rhs = sg_dressing(&rhs_factor, &reparam, 1.0 / beta)?.surface()?;

    let g = rhs.grid;
    let pulled = par::try_map(g.len(), |k| {
        let (i, j) = (k % g.nx, k / g.nx);
        lhs.interpolate(beta * g.x(i), g.y(j) / beta)
    })?;
    let pulled = Field { grid: g, data: pulled };
    Ok(procrustes_align(&rhs, &pulled)?.max_pointwise_error)
}
