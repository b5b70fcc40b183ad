//! Seeds, the twisted Lax connection of the Gauss map, extended frames,
//! the Sym formula and surface diagnostics.

use crate::error::{Error, Result};
use crate::grid::{Field, FrameField, Grid, ScalarField, SurfaceField};
use crate::linalg::{c, expm, vee_unchecked, CMat3, CVec3, C64, I, ZERO};
use crate::par;
use crate::stencil::{line_derivative, Stencil};

/// Sign of the Gauss curvature, which fixes the Lax pair and the Sym formula.
///
/// For `Positive` the coordinates `(x, y)` are curvature-line coordinates and ω solves
/// `Δω + sinh ω cosh ω = 0`. For `Negative` they are asymptotic coordinates `(ξ, η)` and
/// ω solves `ω_ξη = sin ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    Positive,
    Negative,
}

impl Case {
    pub fn curvature(self) -> f64 {
        match self {
            Case::Positive => 1.0,
            Case::Negative => -1.0,
        }
    }
}

const DERIV_WIDTH: usize = 7;
const INTERP_WIDTH: usize = 6;
/// Stencil width for fundamental forms; nodes closer than `FORMS_WIDTH / 2` to the edge are skipped.
pub const FORMS_WIDTH: usize = 7;
pub const FORMS_MARGIN: usize = FORMS_WIDTH / 2;

/// Spectral offset used by [`sym_surface`].
pub const DEFAULT_DLAMBDA: f64 = 1e-4;

/// Knobs for frame integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationOptions {
    /// Magnus substeps per grid edge.
    pub substeps: usize,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions { substeps: 2 }
    }
}

/// Values `(ω, ω_x, ω_y)` off the grid nodes, along grid lines.
///
/// Node derivatives use 7-point stencils; values between nodes use 6-point Lagrange
/// interpolation of the node data.
#[derive(Debug, Clone)]
pub struct Sampler {
    grid: Grid,
    w: Vec<C64>,
    wx: Vec<C64>,
    wy: Vec<C64>,
}

impl Sampler {
    pub fn new(omega: &ScalarField) -> Result<Self> {
        if !omega.is_finite() {
            return Err(Error::Domain("non-finite seed".into()));
        }
        let g = omega.grid;
        let mut wx = vec![ZERO; g.len()];
        let mut wy = vec![ZERO; g.len()];
        for (i, j) in g.nodes() {
            let k = g.idx(i, j);
            wx[k] = line_derivative(g.nx, i, g.hx, DERIV_WIDTH, 1, |m| omega.at(m, j));
            wy[k] = line_derivative(g.ny, j, g.hy, DERIV_WIDTH, 1, |m| omega.at(i, m));
        }
        Ok(Sampler { grid: g, w: omega.data.clone(), wx, wy })
    }

    /// From node values and node derivatives known by other means.
    pub fn from_node_data(omega: &ScalarField, wx: Vec<C64>, wy: Vec<C64>) -> Result<Self> {
        let g = omega.grid;
        if wx.len() != g.len() || wy.len() != g.len() {
            return Err(Error::Domain("derivative data does not match the grid".into()));
        }
        if !(omega.is_finite() && wx.iter().chain(&wy).all(|z| z.is_finite())) {
            return Err(Error::Domain("non-finite seed".into()));
        }
        Ok(Sampler { grid: g, w: omega.data.clone(), wx, wy })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn node(&self, i: usize, j: usize) -> [C64; 3] {
        let k = self.grid.idx(i, j);
        [self.w[k], self.wx[k], self.wy[k]]
    }

    /// At fractional x-index `s` on row `j`.
    pub fn along_x(&self, s: f64, j: usize) -> [C64; 3] {
        if s.fract() == 0.0 {
            return self.node(s as usize, j);
        }
        let st = Stencil::at(s, self.grid.nx, INTERP_WIDTH, 0);
        let g = self.grid;
        [
            st.apply(|m| self.w[g.idx(m, j)]),
            st.apply(|m| self.wx[g.idx(m, j)]),
            st.apply(|m| self.wy[g.idx(m, j)]),
        ]
    }

    /// At fractional y-index `t` on column `i`.
    pub fn along_y(&self, i: usize, t: f64) -> [C64; 3] {
        if t.fract() == 0.0 {
            return self.node(i, t as usize);
        }
        let st = Stencil::at(t, self.grid.ny, INTERP_WIDTH, 0);
        let g = self.grid;
        [
            st.apply(|m| self.w[g.idx(i, m)]),
            st.apply(|m| self.wx[g.idx(i, m)]),
            st.apply(|m| self.wy[g.idx(i, m)]),
        ]
    }
}

/// Connection coefficients `α_λ = U dx + V dy` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxSample {
    pub u: CMat3,
    pub v: CMat3,
}

/// The Lax pair at one point, from `(ω, ω_x, ω_y)`.
///
/// K = 1: with `P = (m_x − i m_y)/2` and `P̄ = (m_x + i m_y)/2`,
/// `U = k_x + λ⁻¹P + λP̄`, `V = k_y + iλ⁻¹P − iλP̄`.
/// K = −1: `U = k_ξ + λ⁻¹m_ξ`, `V = k_η + λm_η`.
pub fn lax_matrices(case: Case, s: [C64; 3], lambda: C64) -> LaxSample {
    let [w, wx, wy] = s;
    let li = lambda.inv();
    match case {
        Case::Positive => {
            let mx = CMat3::skew_unit(0, 2, w.sinh());
            let my = CMat3::skew_unit(0, 1, w.cosh());
            let kx = CMat3::skew_unit(1, 2, -wy);
            let ky = CMat3::skew_unit(1, 2, wx);
            let p = (mx - my * I) * 0.5;
            let pb = (mx + my * I) * 0.5;
            LaxSample {
                u: kx + p * li + pb * lambda,
                v: ky + p * (I * li) - pb * (I * lambda),
            }
        }
        Case::Negative => {
            let (sh, ch) = ((w * 0.5).sin(), (w * 0.5).cos());
            let m_xi = CMat3::skew_unit(0, 1, ch) + CMat3::skew_unit(0, 2, -sh);
            let m_eta = CMat3::skew_unit(0, 1, -ch) + CMat3::skew_unit(0, 2, -sh);
            LaxSample {
                u: CMat3::skew_unit(1, 2, -wx * 0.5) + m_xi * li,
                v: CMat3::skew_unit(1, 2, wy * 0.5) + m_eta * lambda,
            }
        }
    }
}

fn check_lambda(lambda: C64) -> Result<()> {
    if lambda == ZERO || !lambda.is_finite() {
        return Err(Error::Domain("spectral parameter must be finite and nonzero".into()));
    }
    Ok(())
}

/// Lax pair of the seed at grid node `(i, j)` for K = 1.
pub fn lax_connection(omega: &ScalarField, lambda: C64, node: (usize, usize)) -> Result<LaxSample> {
    check_lambda(lambda)?;
    let s = Sampler::new(omega)?;
    Ok(lax_matrices(Case::Positive, s.node(node.0, node.1), lambda))
}

pub fn seed_vacuum(grid: Grid) -> ScalarField {
    Field::filled(grid, ZERO)
}

/// The y-independent solution `ω(x, y) = w(x)` with `w'' = −sinh w cosh w`,
/// `w(0) = omega0`, `w'(0) = omega0_prime`, by RK4 with 16 substeps per grid spacing.
pub fn seed_pendulum(grid: Grid, omega0: f64, omega0_prime: f64) -> Result<ScalarField> {
    grid.validate()?;
    if omega0 == 0.0 && omega0_prime == 0.0 {
        return Err(Error::Precondition("pendulum seed needs (omega0, omega0') ≠ (0, 0)".into()));
    }
    if !omega0.is_finite() || !omega0_prime.is_finite() {
        return Err(Error::Domain("non-finite pendulum data".into()));
    }
    let w = pendulum_profile(grid.nx, grid.i0, grid.hx, omega0, omega0_prime, 16)?;
    Ok(Field::from_fn(grid, |i, _| c(w[i].0, 0.0)))
}

/// Pendulum `(w, w')` at nodes `0..n` with spacing `h`, started at node `i0`.
pub fn pendulum_profile(
    n: usize,
    i0: usize,
    h: f64,
    w0: f64,
    wp0: f64,
    substeps: usize,
) -> Result<Vec<(f64, f64)>> {
    fn rhs(s: (f64, f64)) -> (f64, f64) {
        (s.1, -s.0.sinh() * s.0.cosh())
    }
    fn rk4(s: (f64, f64), dt: f64) -> (f64, f64) {
        let k1 = rhs(s);
        let k2 = rhs((s.0 + 0.5 * dt * k1.0, s.1 + 0.5 * dt * k1.1));
        let k3 = rhs((s.0 + 0.5 * dt * k2.0, s.1 + 0.5 * dt * k2.1));
        let k4 = rhs((s.0 + dt * k3.0, s.1 + dt * k3.1));
        (
            s.0 + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            s.1 + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        )
    }
    let check = |s: (f64, f64)| -> Result<(f64, f64)> {
        // sinh w cosh w overflows near |w| ≈ 355
        if !(s.0.abs() < 300.0 && s.0.is_finite() && s.1.is_finite()) {
            return Err(Error::Range("pendulum seed amplitude overflows cosh".into()));
        }
        Ok(s)
    };
    let mut out = vec![(0.0, 0.0); n];
    out[i0] = check((w0, wp0))?;
    let dt = h / substeps as f64;
    for i in i0 + 1..n {
        let mut s = out[i - 1];
        for _ in 0..substeps {
            s = rk4(s, dt);
        }
        out[i] = check(s)?;
    }
    for i in (0..i0).rev() {
        let mut s = out[i + 1];
        for _ in 0..substeps {
            s = rk4(s, -dt);
        }
        out[i] = check(s)?;
    }
    Ok(out)
}

/// Conserved energy of the pendulum reduction.
pub fn pendulum_energy(w: f64, wp: f64) -> f64 {
    0.5 * wp * wp + (2.0 * w).cosh() / 4.0
}

fn laplacian(omega: &ScalarField, i: usize, j: usize, fourth: bool) -> C64 {
    let g = omega.grid;
    let f = |a: usize, b: usize| omega.at(a, b);
    if fourth {
        let dxx = (-f(i - 2, j) + f(i - 1, j) * 16.0 - f(i, j) * 30.0 + f(i + 1, j) * 16.0 - f(i + 2, j))
            / (12.0 * g.hx * g.hx);
        let dyy = (-f(i, j - 2) + f(i, j - 1) * 16.0 - f(i, j) * 30.0 + f(i, j + 1) * 16.0 - f(i, j + 2))
            / (12.0 * g.hy * g.hy);
        dxx + dyy
    } else {
        (f(i - 1, j) - f(i, j) * 2.0 + f(i + 1, j)) / (g.hx * g.hx)
            + (f(i, j - 1) - f(i, j) * 2.0 + f(i, j + 1)) / (g.hy * g.hy)
    }
}

/// Max of `|Δω + sinh ω cosh ω|` over interior nodes.
///
/// Uses the five-point-per-axis fourth-order Laplacian on nodes two away from the edge;
/// grids thinner than 5 nodes fall back to the three-point stencil.
pub fn sinh_gordon_residual(omega: &ScalarField) -> Result<f64> {
    let g = omega.grid;
    if g.nx < 3 || g.ny < 3 {
        return Err(Error::Precondition("residual needs at least a 3×3 grid".into()));
    }
    let fourth = g.nx >= 5 && g.ny >= 5;
    let m = if fourth { 2 } else { 1 };
    let mut worst = 0.0f64;
    for (i, j) in g.interior(m) {
        let w = omega.at(i, j);
        let r = laplacian(omega, i, j, fourth) + w.sinh() * w.cosh();
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

/// Transport `Φ(end) = Φ(start)·T` across one grid edge.
fn edge_transport(
    case: Case,
    sampler: &Sampler,
    lambda: C64,
    substeps: usize,
    from: f64,
    to: f64,
    line: usize,
    along_x: bool,
) -> CMat3 {
    const G: f64 = 0.288_675_134_594_812_9; // √3/6
    const K: f64 = 0.144_337_567_297_406_43; // √3/12
    let g = sampler.grid();
    let h_node = if along_x { g.hx } else { g.hy };
    let m = substeps.max(1);
    let ds = (to - from) / m as f64;
    let h = ds * h_node;
    let coeff = |s: f64| {
        let smp = if along_x { sampler.along_x(s, line) } else { sampler.along_y(line, s) };
        let l = lax_matrices(case, smp, lambda);
        if along_x {
            l.u
        } else {
            l.v
        }
    };
    let mut t = CMat3::identity();
    for k in 0..m {
        let s0 = from + ds * k as f64;
        let a1 = coeff(s0 + ds * (0.5 - G));
        let a2 = coeff(s0 + ds * (0.5 + G));
        let omega = (a1 + a2) * (0.5 * h) + a1.commutator(&a2) * (K * h * h);
        t = t * expm(&omega);
    }
    t
}

/// Extended frame `Φ_λ` with `Φ_λ(z₀) = 1`.
///
/// The basepoint row is filled first, then each column is swept outward from that row.
/// Edges advance by a fourth-order Magnus step (two Gauss points) per substep.
pub fn integrate_frame_with(
    case: Case,
    omega: &ScalarField,
    lambda: C64,
    opts: IntegrationOptions,
) -> Result<FrameField> {
    check_lambda(lambda)?;
    let sampler = Sampler::new(omega)?;
    integrate_frame_sampled(case, &sampler, lambda, opts)
}

pub(crate) fn integrate_frame_sampled(
    case: Case,
    sampler: &Sampler,
    lambda: C64,
    opts: IntegrationOptions,
) -> Result<FrameField> {
    check_lambda(lambda)?;
    let g = sampler.grid();
    let n = opts.substeps;
    let mut row = vec![CMat3::identity(); g.nx];
    for i in g.i0 + 1..g.nx {
        row[i] = row[i - 1] * edge_transport(case, sampler, lambda, n, (i - 1) as f64, i as f64, g.j0, true);
    }
    for i in (0..g.i0).rev() {
        row[i] = row[i + 1] * edge_transport(case, sampler, lambda, n, (i + 1) as f64, i as f64, g.j0, true);
    }
    let cols: Vec<Vec<CMat3>> = par::map(g.nx, |i| {
        let mut col = vec![CMat3::identity(); g.ny];
        col[g.j0] = row[i];
        for j in g.j0 + 1..g.ny {
            col[j] = col[j - 1] * edge_transport(case, sampler, lambda, n, (j - 1) as f64, j as f64, i, false);
        }
        for j in (0..g.j0).rev() {
            col[j] = col[j + 1] * edge_transport(case, sampler, lambda, n, (j + 1) as f64, j as f64, i, false);
        }
        col
    });
    let field = Field::from_fn(g, |i, j| cols[i][j]);
    if !field.data.iter().all(|m| m.is_finite()) {
        return Err(Error::Integration("frame integration produced non-finite values".into()));
    }
    Ok(FrameField { lambda, field })
}

/// Extended frame of a K = 1 seed with default options.
pub fn integrate_frame(omega: &ScalarField, lambda: C64, grid: Grid) -> Result<FrameField> {
    if !grid.same_shape(&omega.grid) {
        return Err(Error::Domain("grid does not match the seed".into()));
    }
    let mut om = omega.clone();
    om.grid = grid;
    integrate_frame_with(Case::Positive, &om, lambda, IntegrationOptions::default())
}

/// Max over cells of `‖P − 1‖`, `P` the loop product of midpoint edge exponentials.
pub fn flatness_residual_with(case: Case, omega: &ScalarField, lambda: C64) -> Result<f64> {
    check_lambda(lambda)?;
    let g = omega.grid;
    let s = Sampler::new(omega)?;
    let (hx, hy) = (c(g.hx, 0.0), c(g.hy, 0.0));
    let rows = par::map(g.ny - 1, |j| {
        let mut worst = 0.0f64;
        for i in 0..g.nx - 1 {
            let ub = lax_matrices(case, s.along_x(i as f64 + 0.5, j), lambda).u;
            let ut = lax_matrices(case, s.along_x(i as f64 + 0.5, j + 1), lambda).u;
            let vl = lax_matrices(case, s.along_y(i, j as f64 + 0.5), lambda).v;
            let vr = lax_matrices(case, s.along_y(i + 1, j as f64 + 0.5), lambda).v;
            let p = expm(&(ub * hx)) * expm(&(vr * hy)) * expm(&(ut * -hx)) * expm(&(vl * -hy));
            worst = worst.max((p - CMat3::identity()).norm());
        }
        worst
    });
    Ok(rows.into_iter().fold(0.0, f64::max))
}

pub fn flatness_residual(omega: &ScalarField, lambda: C64) -> Result<f64> {
    flatness_residual_with(Case::Positive, omega, lambda)
}

/// Gauss map `φ = Φ·e₁`, the same as `vee(Φ·hat(e₁)·Φ⁻¹)` for orthogonal `Φ`.
pub fn gauss_map(frame: &FrameField) -> SurfaceField {
    frame.field.map(|m| m.column(0))
}

/// Spectral values `(λ₋, λ₊)` straddling `λ` for the Sym derivative.
///
/// K = 1 steps along the circle through λ, `λe^{±iδ}`, so that real frames on the unit
/// circle give exactly real surfaces. K = −1 steps along the ray, `λ(1 ± δ)`.
pub fn sym_offsets(case: Case, lambda: C64, dl: f64) -> (C64, C64) {
    match case {
        Case::Positive => (lambda * C64::from_polar(1.0, -dl), lambda * C64::from_polar(1.0, dl)),
        Case::Negative => (lambda * (1.0 - dl), lambda * (1.0 + dl)),
    }
}

/// Sym formula from frames at `λ₋, λ, λ₊` (see [`sym_offsets`]).
///
/// Both cases reduce to `F = −vee((Φ₊ − Φ₋)/(2δ)·Φ⁻¹)`: for K = 1 the step is in the
/// angle of λ, which turns `−iλ∂_λ` into `−∂_angle`; for K = −1 it is `−λ∂_λ` directly.
pub fn sym_from_frames(minus: &FrameField, center: &FrameField, plus: &FrameField, dl: f64) -> Result<SurfaceField> {
    let g = center.grid();
    let mut out = Vec::with_capacity(g.len());
    for k in 0..g.len() {
        let d = (plus.field.data[k] - minus.field.data[k]) * (-0.5 / dl);
        let inv = center.field.data[k].inverse()?;
        out.push(vee_unchecked(&(d * inv)));
    }
    Ok(Field { grid: g, data: out })
}

/// Frames at the three spectral values used by the Sym formula, integrated in parallel.
pub fn sym_frames(
    case: Case,
    omega: &ScalarField,
    lambda: C64,
    dl: f64,
    opts: IntegrationOptions,
) -> Result<[FrameField; 3]> {
    check_lambda(lambda)?;
    if !(dl > 0.0) {
        return Err(Error::Domain("dλ must be positive".into()));
    }
    let sampler = Sampler::new(omega)?;
    let (lm, lp) = sym_offsets(case, lambda, dl);
    let ls = [lm, lambda, lp];
    let mut frames = par::try_map(3, |k| integrate_frame_sampled(case, &sampler, ls[k], opts))?;
    let p = frames.pop().unwrap();
    let z = frames.pop().unwrap();
    let m = frames.pop().unwrap();
    Ok([m, z, p])
}

/// Sym surface of a K = 1 seed: `F = −iλ ∂_λΦ Φ⁻¹`, by a central difference in log λ.
pub fn sym_surface(omega: &ScalarField, lambda: C64, dl: f64) -> Result<SurfaceField> {
    let [m, z, p] = sym_frames(Case::Positive, omega, lambda, dl, IntegrationOptions::default())?;
    sym_from_frames(&m, &z, &p, dl)
}

/// First and second fundamental form coefficients at a node.
/// `I = E dx² + 2F dx dy + G dy²`, `II = e dx² + 2f dx dy + g dy²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Forms {
    pub e_big: C64,
    pub f_big: C64,
    pub g_big: C64,
    pub e: C64,
    pub f: C64,
    pub g: C64,
}

impl Forms {
    pub fn gauss_curvature(&self) -> C64 {
        (self.e * self.g - self.f * self.f) / (self.e_big * self.g_big - self.f_big * self.f_big)
    }

    pub fn first_det(&self) -> C64 {
        self.e_big * self.g_big - self.f_big * self.f_big
    }
}

/// Fundamental forms by central differences, complex-bilinear.
/// Nodes within [`FORMS_MARGIN`] of the edge get `None`.
pub fn fundamental_forms(f: &SurfaceField, phi: &SurfaceField) -> Result<Field<Option<Forms>>> {
    let g = f.grid;
    if !g.same_shape(&phi.grid) {
        return Err(Error::Domain("surface and normal grids differ".into()));
    }
    let r = FORMS_MARGIN;
    let w1 = crate::stencil::fornberg(0.0, &(0..FORMS_WIDTH).map(|k| k as f64 - r as f64).collect::<Vec<_>>(), 2);
    let d = |k: usize, get: &dyn Fn(isize) -> CVec3, h: f64| -> CVec3 {
        let mut acc = CVec3::zero();
        for (m, &w) in w1[k].iter().enumerate() {
            acc += get(m as isize - r as isize) * w;
        }
        acc * h.powi(-(k as i32))
    };
    let at = |i: isize, j: isize| f.at(i as usize, j as usize);
    let rows: Vec<Vec<Option<Forms>>> = par::map(g.ny, |j| {
        (0..g.nx)
            .map(|i| {
                if i < r || j < r || i + r >= g.nx || j + r >= g.ny {
                    return None;
                }
                let (ii, jj) = (i as isize, j as isize);
                let fx = d(1, &|m| at(ii + m, jj), g.hx);
                let fy = d(1, &|m| at(ii, jj + m), g.hy);
                let fxx = d(2, &|m| at(ii + m, jj), g.hx);
                let fyy = d(2, &|m| at(ii, jj + m), g.hy);
                let fxy = d(1, &|m| d(1, &|n| at(ii + n, jj + m), g.hx), g.hy);
                let n = phi.at(i, j);
                Some(Forms {
                    e_big: fx.dot(&fx),
                    f_big: fx.dot(&fy),
                    g_big: fy.dot(&fy),
                    e: fxx.dot(&n),
                    f: fxy.dot(&n),
                    g: fyy.dot(&n),
                })
            })
            .collect()
    });
    Ok(Field::from_fn(g, |i, j| rows[j][i]))
}

/// Summary of Gauss curvature over nodes where the first form is non-degenerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureStats {
    pub max_deviation: f64,
    pub used: usize,
    pub flagged: usize,
}

/// Max `|K − target|` over nodes with `|EG − F²| ≥ min_det`; the rest are flagged.
pub fn curvature_stats(forms: &Field<Option<Forms>>, target: f64, min_det: f64) -> CurvatureStats {
    let mut st = CurvatureStats { max_deviation: 0.0, used: 0, flagged: 0 };
    for fm in forms.data.iter().flatten() {
        if fm.first_det().norm() < min_det {
            st.flagged += 1;
            continue;
        }
        st.used += 1;
        st.max_deviation = st.max_deviation.max((fm.gauss_curvature() - c(target, 0.0)).norm());
    }
    st
}

/// Maurer–Cartan coefficients `Φ⁻¹Φ_x`, `Φ⁻¹Φ_y` by 9-point central differences,
/// on nodes four away from the edge.
pub fn maurer_cartan_fd(frame: &FrameField) -> Field<Option<(CMat3, CMat3)>> {
    let g = frame.grid();
    let r = 4;
    Field::from_fn(g, |i, j| {
        if i < r || j < r || i + r >= g.nx || j + r >= g.ny {
            return None;
        }
        let dx = line_derivative(g.nx, i, g.hx, 9, 1, |m| frame.at(m, j));
        let dy = line_derivative(g.ny, j, g.hy, 9, 1, |m| frame.at(i, m));
        let inv = frame.at(i, j).inverse().ok()?;
        Some((inv * dx, inv * dy))
    })
}

/// Spectral values `r·e^{2πik/6}`, `k = 0..6`, for the Laurent fit.
pub fn laurent_circle(radius: f64) -> Vec<C64> {
    (0..6).map(|k| C64::from_polar(radius, std::f64::consts::PI * k as f64 / 3.0)).collect()
}

/// Largest deviation of `Φ⁻¹dΦ` from its best fit in `span{λ⁻¹, 1, λ}`, given frames on
/// [`laurent_circle`]. On an equispaced circle the fit is the discrete Fourier projection.
pub fn laurent_fit_residual(frames: &[FrameField]) -> Result<f64> {
    let n = frames.len();
    if n < 4 {
        return Err(Error::Domain("Laurent fit needs at least four spectral samples".into()));
    }
    let lams: Vec<C64> = frames.iter().map(|f| f.lambda).collect();
    let mcs: Vec<_> = frames.iter().map(maurer_cartan_fd).collect();
    let g = frames[0].grid();
    let mut worst = 0.0f64;
    for k in 0..g.len() {
        for dir in 0..2 {
            let mut samples = Vec::with_capacity(n);
            for mc in &mcs {
                match mc.data[k] {
                    Some((ax, ay)) => samples.push(if dir == 0 { ax } else { ay }),
                    None => break,
                }
            }
            if samples.len() != n {
                continue;
            }
            let mut modes = [CMat3::zero(); 3];
            for (mi, p) in (-1i32..=1).enumerate() {
                for (a, l) in samples.iter().zip(&lams) {
                    modes[mi] += *a * (l.powi(-p) / n as f64);
                }
            }
            for (a, l) in samples.iter().zip(&lams) {
                let fit = modes[0] * l.inv() + modes[1] + modes[2] * *l;
                worst = worst.max((*a - fit).norm());
            }
        }
    }
    Ok(worst)
}

/// Laurent-fit residual of a seed's frames on the circle of the given radius.
pub fn extended_framing_residual(case: Case, omega: &ScalarField, radius: f64, opts: IntegrationOptions) -> Result<f64> {
    let sampler = Sampler::new(omega)?;
    let lams = laurent_circle(radius);
    let frames = par::try_map(lams.len(), |k| integrate_frame_sampled(case, &sampler, lams[k], opts))?;
    laurent_fit_residual(&frames)
}
