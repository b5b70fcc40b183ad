//! Classical Bianchi–Bäcklund transforms of K = 1 surfaces, used as an oracle for dressing.

use crate::dressing::{bb_params, SimpleFactor};
use crate::error::{Error, Result};
use crate::framing::{self, Sampler};
use crate::grid::{Field, Grid, ScalarField, SurfaceField};
use crate::linalg::{c, inv_sqrtm, projectors, vee_unchecked, CMat3, CVec3, C64, I, ZERO};
use crate::par;
use crate::stencil::line_derivative;

const DERIV_WIDTH: usize = 7;
/// RK4 substeps per grid edge.
const THETA_SUBSTEPS: usize = 2;
pub const SEED_RESIDUAL_TOL: f64 = 1e-6;
/// Sinh-Gordon residual accepted for a θ produced by a previous transform.
pub const BACKLUND_OUTPUT_TOL: f64 = 1e-4;
pub const COMPATIBILITY_TOL: f64 = 1e-5;
const COMPAT_MARGIN: usize = DERIV_WIDTH / 2;
const DEGENERATE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BacklundInput {
    pub beta: C64,
    pub theta0: C64,
}

impl BacklundInput {
    pub fn new(beta: C64, theta0: C64) -> Result<Self> {
        let b = BacklundInput { beta, theta0 };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.theta0.is_finite()) {
            return Err(Error::Domain("non-finite Bäcklund parameters".into()));
        }
        if self.beta.sinh().norm() < 1e-12 {
            return Err(Error::Domain(format!("β = {} lies in iπℤ", self.beta)));
        }
        Ok(())
    }

    pub fn mu(&self) -> C64 {
        self.beta.sinh().inv()
    }
}

/// `(θ_x, θ_y)` from the Bäcklund system at one point, given `(ω, ω_x, ω_y)`.
pub fn theta_rhs(theta: C64, s: [C64; 3], beta: C64) -> (C64, C64) {
    let [w, wx, wy] = s;
    let (sb, cb) = (beta.sinh(), beta.cosh());
    let (st, ct) = (theta.sinh(), theta.cosh());
    let (sw, cw) = (w.sinh(), w.cosh());
    let tx = -I * wy + sb * st * cw + cb * ct * sw;
    let ty = I * (wx + sb * ct * sw + cb * st * cw);
    (tx, ty)
}

fn rk4_edge(sampler: &Sampler, beta: C64, theta: C64, from: f64, to: f64, line: usize, along_x: bool) -> C64 {
    let g = sampler.grid();
    let ds = (to - from) / THETA_SUBSTEPS as f64;
    let h = ds * if along_x { g.hx } else { g.hy };
    let f = |s: f64, t: C64| {
        let smp = if along_x { sampler.along_x(s, line) } else { sampler.along_y(line, s) };
        let (tx, ty) = theta_rhs(t, smp, beta);
        if along_x {
            tx
        } else {
            ty
        }
    };
    let mut t = theta;
    for k in 0..THETA_SUBSTEPS {
        let s = from + ds * k as f64;
        let k1 = f(s, t);
        let k2 = f(s + 0.5 * ds, t + k1 * (0.5 * h));
        let k3 = f(s + 0.5 * ds, t + k2 * (0.5 * h));
        let k4 = f(s + ds, t + k3 * h);
        t += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    t
}

/// Max of `|∂_y(θ_x) − ∂_x(θ_y)|` over nodes where the 7-point stencils are centered,
/// with `θ_x, θ_y` taken from the system.
pub fn compatibility_residual(omega: &ScalarField, theta: &ScalarField, beta: C64) -> Result<f64> {
    if !omega.grid.same_shape(&theta.grid) {
        return Err(Error::Domain("θ and ω live on different grids".into()));
    }
    let (tx, ty) = theta_node_derivatives(&Sampler::new(omega)?, theta, beta);
    Ok(compatibility_from(omega.grid, &tx, &ty))
}

fn theta_node_derivatives(sampler: &Sampler, theta: &ScalarField, beta: C64) -> (Vec<C64>, Vec<C64>) {
    let g = theta.grid;
    let mut tx = vec![ZERO; g.len()];
    let mut ty = vec![ZERO; g.len()];
    for (i, j) in g.nodes() {
        let (a, b) = theta_rhs(theta.at(i, j), sampler.node(i, j), beta);
        tx[g.idx(i, j)] = a;
        ty[g.idx(i, j)] = b;
    }
    (tx, ty)
}

fn compatibility_from(g: Grid, tx: &[C64], ty: &[C64]) -> f64 {
    let mut worst = 0.0f64;
    for (i, j) in g.interior(COMPAT_MARGIN) {
        let dy = line_derivative(g.ny, j, g.hy, DERIV_WIDTH, 1, |m| tx[g.idx(i, m)]);
        let dx = line_derivative(g.nx, i, g.hx, DERIV_WIDTH, 1, |m| ty[g.idx(m, j)]);
        worst = worst.max((dy - dx).norm());
    }
    worst
}

/// Solves the Bäcklund system for θ with `θ(z₀) = θ₀`.
///
/// RK4 along the basepoint row, then along every column.
pub fn integrate_theta(omega: &ScalarField, input: BacklundInput) -> Result<ScalarField> {
    let sampler = Sampler::new(omega)?;
    Ok(solve_theta(omega, &sampler, input, SEED_RESIDUAL_TOL)?.0)
}

/// θ with its node derivatives from the system.
fn solve_theta(
    omega: &ScalarField,
    sampler: &Sampler,
    input: BacklundInput,
    seed_tol: f64,
) -> Result<(ScalarField, Vec<C64>, Vec<C64>)> {
    input.validate()?;
    let res = framing::sinh_gordon_residual(omega)?;
    if !(res < seed_tol) {
        return Err(Error::Precondition(format!("seed sinh-Gordon residual {res:.3e}")));
    }
    let g = omega.grid;
    let beta = input.beta;
    let mut row = vec![ZERO; g.nx];
    row[g.i0] = input.theta0;
    for i in g.i0 + 1..g.nx {
        row[i] = rk4_edge(sampler, beta, row[i - 1], (i - 1) as f64, i as f64, g.j0, true);
    }
    for i in (0..g.i0).rev() {
        row[i] = rk4_edge(sampler, beta, row[i + 1], (i + 1) as f64, i as f64, g.j0, true);
    }
    let cols = par::map(g.nx, |i| {
        let mut col = vec![ZERO; g.ny];
        col[g.j0] = row[i];
        for j in g.j0 + 1..g.ny {
            col[j] = rk4_edge(sampler, beta, col[j - 1], (j - 1) as f64, j as f64, i, false);
        }
        for j in (0..g.j0).rev() {
            col[j] = rk4_edge(sampler, beta, col[j + 1], (j + 1) as f64, j as f64, i, false);
        }
        col
    });
    let theta = Field::from_fn(g, |i, j| cols[i][j]);
    if !theta.is_finite() {
        return Err(Error::Integration("θ blew up".into()));
    }
    let (tx, ty) = theta_node_derivatives(sampler, &theta, beta);
    let compat = compatibility_from(g, &tx, &ty);
    if !(compat < COMPATIBILITY_TOL) {
        return Err(Error::Integration(format!("compatibility residual {compat:.3e}")));
    }
    Ok((theta, tx, ty))
}

/// Orthonormal tangent frame `(F_x/cosh ω, F_y/sinh ω)` at a node.
pub fn tangent_frame(f: &SurfaceField, omega: &ScalarField, i: usize, j: usize) -> Result<(CVec3, CVec3)> {
    let g = f.grid;
    let w = omega.at(i, j);
    if w.sinh().norm() < DEGENERATE_TOL {
        return Err(Error::Degenerate(i, j));
    }
    let fx = line_derivative(g.nx, i, g.hx, DERIV_WIDTH, 1, |m| f.at(m, j));
    let fy = line_derivative(g.ny, j, g.hy, DERIV_WIDTH, 1, |m| f.at(i, m));
    Ok((fx * w.cosh().inv(), fy * w.sinh().inv()))
}

/// `F̃ = F + (cosh θ·e₁ + i sinh θ·e₂)/sinh β`.
pub fn classical_transform(f: &SurfaceField, omega: &ScalarField, theta: &ScalarField, beta: C64) -> Result<SurfaceField> {
    let g = f.grid;
    if !g.same_shape(&omega.grid) || !g.same_shape(&theta.grid) {
        return Err(Error::Domain("F, ω and θ live on different grids".into()));
    }
    let mu = BacklundInput::new(beta, ZERO)?.mu();
    let data = par::try_map(g.len(), |k| {
        let (i, j) = (k % g.nx, k / g.nx);
        let (e1, e2) = tangent_frame(f, omega, i, j)?;
        let t = theta.at(i, j);
        Ok(f.data[k] + (e1 * t.cosh() + e2 * (I * t.sinh())) * mu)
    })?;
    Ok(Field { grid: g, data })
}

/// A K = 1 surface in curvature-line coordinates with its angle ω and tangent frame.
///
/// Frames of transformed surfaces are not differentiated numerically: they follow from
/// the frame equations `e₁_x = −ω_y e₂ + sinh ω n`, `e₁_y = ω_x e₂`, `e₂_x = ω_y e₁`,
/// `e₂_y = −ω_x e₁ + cosh ω n` with `n = e₁ × e₂`.
#[derive(Debug, Clone)]
pub struct FramedSurface {
    pub surface: SurfaceField,
    pub omega: ScalarField,
    pub e1: SurfaceField,
    pub e2: SurfaceField,
    sampler: Sampler,
}

impl FramedSurface {
    /// Frame by finite differences of `F`.
    pub fn new(f: &SurfaceField, omega: &ScalarField) -> Result<Self> {
        let g = f.grid;
        if !g.same_shape(&omega.grid) {
            return Err(Error::Domain("F and ω live on different grids".into()));
        }
        let frames = par::try_map(g.len(), |k| tangent_frame(f, omega, k % g.nx, k / g.nx))?;
        let (e1, e2): (Vec<CVec3>, Vec<CVec3>) = frames.into_iter().unzip();
        Ok(FramedSurface {
            surface: f.clone(),
            omega: omega.clone(),
            e1: Field { grid: g, data: e1 },
            e2: Field { grid: g, data: e2 },
            sampler: Sampler::new(omega)?,
        })
    }

    pub fn normal(&self, i: usize, j: usize) -> CVec3 {
        self.e1.at(i, j).cross(&self.e2.at(i, j))
    }

    /// The transform with data `input`; `seed_tol` bounds the sinh-Gordon residual of ω.
    pub fn transform(&self, input: BacklundInput, seed_tol: f64) -> Result<FramedSurface> {
        let (theta, tx, ty) = solve_theta(&self.omega, &self.sampler, input, seed_tol)?;
        let g = theta.grid;
        let mu = input.mu();
        let out = par::try_map(g.len(), |k| {
            let (i, j) = (k % g.nx, k / g.nx);
            let [w, wx, wy] = self.sampler.node(i, j);
            let t = theta.data[k];
            let (st, ct) = (t.sinh(), t.cosh());
            if st.norm() < DEGENERATE_TOL || ct.norm() < DEGENERATE_TOL {
                return Err(Error::Degenerate(i, j));
            }
            let (e1, e2) = (self.e1.data[k], self.e2.data[k]);
            let n = e1.cross(&e2);
            let rot = e1 * st + e2 * (I * ct);
            let fx = e1 * w.cosh() + (rot * tx[k] + (n * w.sinh() - e2 * wy) * ct + e1 * (I * st * wy)) * mu;
            let fy = e2 * w.sinh() + (rot * ty[k] + e2 * (ct * wx) + (n * w.cosh() - e1 * wx) * (I * st)) * mu;
            let p = self.surface.data[k] + (e1 * ct + e2 * (I * st)) * mu;
            Ok((p, fx * ct.inv(), fy * st.inv()))
        })?;
        let mut pts = Vec::with_capacity(g.len());
        let mut e1 = Vec::with_capacity(g.len());
        let mut e2 = Vec::with_capacity(g.len());
        for (p, a, b) in out {
            pts.push(p);
            e1.push(a);
            e2.push(b);
        }
        Ok(FramedSurface {
            surface: Field { grid: g, data: pts },
            sampler: Sampler::from_node_data(&theta, tx, ty)?,
            omega: theta,
            e1: Field { grid: g, data: e1 },
            e2: Field { grid: g, data: e2 },
        })
    }
}

/// Initial angle θ₀ with `D = (cosh θ₀·e₁ + i sinh θ₀·e₂)/sinh β`.
pub fn theta0_from_displacement(d: CVec3, e1: CVec3, e2: CVec3, beta: C64) -> Result<C64> {
    let sb = beta.sinh();
    let ch = sb * d.dot(&e1);
    let sh = -I * sb * d.dot(&e2);
    let defect = (ch * ch - sh * sh - 1.0).norm();
    if defect > 1e-6 {
        return Err(Error::Consistency(format!("displacement is not of Bäcklund form (defect {defect:.3e})")));
    }
    // cosh² − sinh² = 1 keeps cosh θ₀ + sinh θ₀ away from zero
    Ok((ch + sh).ln())
}

/// Bäcklund data `(β, θ₀)` producing the same surface as dressing a K = 1 seed by `sf` at λ.
///
/// The displacement at the basepoint is `iλA(π_QL − π_L)` read as a vector, and β is
/// the classical parameter of [`crate::dressing::BBParams::classical_beta`].
pub fn dressing_to_backlund(f: &SurfaceField, omega: &ScalarField, sf: &SimpleFactor, lambda: C64) -> Result<BacklundInput> {
    let p = bb_params(sf.alpha, lambda)?;
    let pr = projectors(&sf.line)?;
    let d = vee_unchecked(&((pr.pi_ql - pr.pi_l) * (I * lambda * p.big_a_val)));
    let g = f.grid;
    let (e1, e2) = tangent_frame(f, omega, g.i0, g.j0)?;
    let beta = p.classical_beta();
    BacklundInput::new(beta, theta0_from_displacement(d, e1, e2, beta)?)
}

/// Result of composing two Bäcklund transforms.
#[derive(Debug, Clone)]
pub struct TwoStep {
    pub first: FramedSurface,
    /// Initial angle of the second transform, applied to the first surface.
    pub second_theta0: C64,
    pub last: FramedSurface,
}

impl TwoStep {
    pub fn surface(&self) -> &SurfaceField {
        &self.last.surface
    }
}

/// Applies `a`, then the transform with parameter `b.beta` chosen to close the Bianchi
/// quadrilateral with the `b`-transform of the seed.
///
/// `b.theta0` is the initial angle of the `b`-transform of the seed itself. The angle for
/// the second step is fixed at the basepoint by requiring the final point to be a
/// `a.beta`-transform of the `b`-surface: its offset is tangent there and has length `1/sinh a.beta`.
pub fn two_step(omega: &ScalarField, f: &SurfaceField, a: BacklundInput, b: BacklundInput) -> Result<TwoStep> {
    let g = f.grid;
    let seed = FramedSurface::new(f, omega)?;
    let sa = seed.transform(a, SEED_RESIDUAL_TOL)?;
    let sb = seed.transform(b, SEED_RESIDUAL_TOL)?;

    let (i0, j0) = (g.i0, g.j0);
    let (e1a, e2a) = (sa.e1.at(i0, j0), sa.e2.at(i0, j0));
    let nb = sb.normal(i0, j0);
    let (mu_a, mu_b) = (a.mu(), b.mu());
    let d = sa.surface.at(i0, j0) - sb.surface.at(i0, j0);
    // (P + Q)X² − 2RX + (P − Q) = 0 with X = e^t
    let p = mu_b * e1a.dot(&nb);
    let q = I * mu_b * e2a.dot(&nb);
    let r = -d.dot(&nb);
    let roots = quadratic_roots(p + q, r * -2.0, p - q)?;
    let mut best: Option<(C64, f64)> = None;
    for x in roots {
        if x.norm() < 1e-300 {
            continue;
        }
        let t = x.ln();
        let gap = d + (e1a * t.cosh() + e2a * (I * t.sinh())) * mu_b;
        let err = (gap.dot(&gap) - mu_a * mu_a).norm();
        if best.is_none_or(|(_, e)| err < e) {
            best = Some((t, err));
        }
    }
    let (t, err) = best.ok_or_else(|| Error::Consistency("no closing angle".into()))?;
    let scale = (mu_a * mu_a).norm().max(1.0);
    if err > 1e-6 * scale {
        return Err(Error::Consistency(format!("Bianchi quadrilateral does not close ({err:.3e})")));
    }
    // the first angle is itself a computed solution, so it is held to the output tolerance
    let last = sa.transform(BacklundInput::new(b.beta, t)?, BACKLUND_OUTPUT_TOL)?;
    Ok(TwoStep { first: sa, second_theta0: t, last })
}

fn quadratic_roots(a: C64, b: C64, c0: C64) -> Result<Vec<C64>> {
    let scale = a.norm().max(b.norm()).max(c0.norm());
    if scale == 0.0 {
        return Err(Error::Consistency("degenerate closing equation".into()));
    }
    if a.norm() < 1e-14 * scale {
        if b.norm() < 1e-14 * scale {
            return Err(Error::Consistency("degenerate closing equation".into()));
        }
        return Ok(vec![-c0 / b]);
    }
    let disc = (b * b - a * c0 * 4.0).sqrt();
    let q = if (b.conj() * disc).re >= 0.0 { (b + disc) * -0.5 } else { (b - disc) * -0.5 };
    let mut out = vec![q / a];
    if q.norm() > 0.0 {
        out.push(c0 / q);
    }
    Ok(out)
}

/// Real two-step transform: `(β, θ₀)` followed by the transform with `β* = iπ − conj β`.
///
/// The `β*`-transform of a real seed is the conjugate of the `β`-transform, with angle
/// `−conj θ₀`; the second step closes the quadrilateral spanned by the two.
pub fn two_step_real(omega: &ScalarField, f: &SurfaceField, beta: C64, theta0: C64) -> Result<SurfaceField> {
    if omega.max_imag() > 1e-12 || f.max_imag() > 1e-12 {
        return Err(Error::Precondition("real two-step transform needs a real seed".into()));
    }
    let a = BacklundInput::new(beta, theta0)?;
    let b = BacklundInput::new(c(0.0, std::f64::consts::PI) - beta.conj(), -theta0.conj())?;
    Ok(two_step(omega, f, a, b)?.last.surface)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignmentReport {
    pub rotation: CMat3,
    pub translation: CVec3,
    pub max_pointwise_error: f64,
}

/// Rigid motion `x ↦ Rx + t` taking `f1` onto `f2`, with `RᵀR = 1` for the bilinear form.
pub fn procrustes_align(f1: &SurfaceField, f2: &SurfaceField) -> Result<AlignmentReport> {
    procrustes_align_masked(f1, f2, |_, _| true)
}

/// [`procrustes_align`] restricted to nodes where `keep(i, j)` holds.
///
/// Solves the unconstrained least-squares problem `R₀ = M C⁻¹` (`C = Σ x xᵀ`, `M = Σ y xᵀ`
/// over centered points), then projects onto the orthogonal group by `R = R₀(R₀ᵀR₀)^{−1/2}`.
pub fn procrustes_align_masked(
    f1: &SurfaceField,
    f2: &SurfaceField,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<AlignmentReport> {
    let g = f1.grid;
    if !g.same_shape(&f2.grid) {
        return Err(Error::Domain("surfaces live on different grids".into()));
    }
    let nodes: Vec<(usize, usize)> = g.nodes().filter(|&(i, j)| keep(i, j)).collect();
    if nodes.len() < 4 {
        return Err(Error::Alignment("fewer than four points".into()));
    }
    let n = nodes.len() as f64;
    let mean = |f: &SurfaceField| nodes.iter().fold(CVec3::zero(), |acc, &(i, j)| acc + f.at(i, j)) * c(1.0 / n, 0.0);
    let (c1, c2) = (mean(f1), mean(f2));
    let mut cxx = CMat3::zero();
    let mut myx = CMat3::zero();
    for &(i, j) in &nodes {
        let x = f1.at(i, j) - c1;
        let y = f2.at(i, j) - c2;
        cxx += CMat3::outer(&x, &x);
        myx += CMat3::outer(&y, &x);
    }
    let scale = cxx.norm();
    if !(scale > 0.0) || cxx.det().norm() < 1e-24 * scale.powi(3) {
        return Err(Error::Alignment("rank-deficient cross-covariance".into()));
    }
    let r0 = myx * cxx.inverse().map_err(|_| Error::Alignment("rank-deficient cross-covariance".into()))?;
    let gram = r0.transpose() * r0;
    let rot = r0 * inv_sqrtm(&gram).map_err(|e| Error::Alignment(format!("polar projection failed: {e}")))?;
    let t = c2 - rot.mul_vec(&c1);
    let mut worst = 0.0f64;
    for &(i, j) in &nodes {
        worst = worst.max((rot.mul_vec(&f1.at(i, j)) + t - f2.at(i, j)).norm());
    }
    Ok(AlignmentReport { rotation: rot, translation: t, max_pointwise_error: worst })
}

/// `ω∘R_σ` on the largest centered grid of the same spacing whose rotated image stays
/// inside the source grid. Real σ only.
pub fn associated_family_reparam(omega: &ScalarField, sigma: C64) -> Result<ScalarField> {
    if sigma.im != 0.0 || !sigma.re.is_finite() {
        return Err(Error::Domain("only real σ can be resampled on a real grid".into()));
    }
    let g = omega.grid;
    let (cs, sn) = (sigma.re.cos(), sigma.re.sin());
    let half_x = g.x(0).abs().min(g.x(g.nx - 1));
    let half_y = g.y(0).abs().min(g.y(g.ny - 1));
    let reach = half_x.min(half_y) / (cs.abs() + sn.abs());
    let mx = (reach / g.hx + 1e-9).floor() as usize;
    let my = (reach / g.hy + 1e-9).floor() as usize;
    let out = Grid::new(2 * mx + 1, 2 * my + 1, g.hx, g.hy, mx, my)
        .map_err(|_| Error::Domain("rotated grid is empty".into()))?;
    let data = par::try_map(out.len(), |k| {
        let (x, y) = (out.x(k % out.nx), out.y(k / out.nx));
        omega.interpolate(x * cs - y * sn, x * sn + y * cs)
    })?;
    Ok(Field { grid: out, data })
}
