//! Simple factors and their closed-form dressing action on extended frames.

use crate::error::{Error, Result};
use crate::framing::{self, Case, IntegrationOptions, Sampler};
use crate::grid::{Field, FrameField, Grid, ScalarField, SurfaceField};
use crate::linalg::{
    c, projectors_unchecked, rotation_e1, transform_line, vee_unchecked, CMat3, CVec3, IsotropicLine, C64, GROUP_TOL,
    I, ONE, ZERO,
};
use crate::par;

const POLE_TOL: f64 = 1e-12;

/// `p_{α,L}(λ) = ((α−λ)/(α+λ))π_L + π_{L₀} + ((α+λ)/(α−λ))π_{QL}`, poles at `±α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleFactor {
    pub alpha: C64,
    pub line: IsotropicLine,
}

impl SimpleFactor {
    pub fn new(alpha: C64, line: IsotropicLine) -> Result<Self> {
        if alpha == ZERO || !alpha.is_finite() {
            return Err(Error::Domain("factor needs a finite nonzero alpha".into()));
        }
        line.validate()?;
        Ok(SimpleFactor { alpha, line })
    }

    pub fn check_pole(&self, lambda: C64) -> Result<()> {
        let tol = POLE_TOL * self.alpha.norm().max(1.0);
        if (lambda - self.alpha).norm() <= tol || (lambda + self.alpha).norm() <= tol {
            return Err(Error::Pole { lambda });
        }
        Ok(())
    }

    /// Ratio `(α−λ)/(α+λ)`, the eigenvalue on `L`.
    fn ratio(&self, lambda: C64) -> Result<C64> {
        self.check_pole(lambda)?;
        Ok((self.alpha - lambda) / (self.alpha + lambda))
    }

    pub fn eval(&self, lambda: C64) -> Result<CMat3> {
        let r = self.ratio(lambda)?;
        let p = projectors_unchecked(&self.line);
        Ok(p.pi_l * r + p.pi_l0 + p.pi_ql * r.inv())
    }

    /// `p(λ)⁻¹ = p(−λ)`.
    pub fn eval_inverse(&self, lambda: C64) -> Result<CMat3> {
        self.eval(-lambda)
    }

    /// `p(∞) = −π_L + π_{L₀} − π_{QL}`.
    pub fn at_infinity(&self) -> CMat3 {
        let p = projectors_unchecked(&self.line);
        p.pi_l0 - p.pi_l - p.pi_ql
    }

    /// `q(λ) = p(∞)p(λ)`.
    pub fn eval_q(&self, lambda: C64) -> Result<CMat3> {
        if lambda == ZERO {
            return Err(Error::Domain("q factor is evaluated away from λ = 0".into()));
        }
        let r = self.ratio(lambda)?;
        let p = projectors_unchecked(&self.line);
        Ok(p.pi_l * (-r) + p.pi_l0 + p.pi_ql * (-r.inv()))
    }

    /// `A_λ(α) = 2α/((α−λ)(α+λ))`.
    pub fn big_a(&self, lambda: C64) -> Result<C64> {
        self.check_pole(lambda)?;
        Ok(self.alpha * 2.0 / ((self.alpha - lambda) * (self.alpha + lambda)))
    }

    /// `p⁻¹∂_λp = A_λ(α)(π_{QL} − π_L)`.
    pub fn log_derivative(&self, lambda: C64) -> Result<CMat3> {
        let a = self.big_a(lambda)?;
        let p = projectors_unchecked(&self.line);
        Ok((p.pi_ql - p.pi_l) * a)
    }

    pub fn with_line(&self, line: IsotropicLine) -> SimpleFactor {
        SimpleFactor { alpha: self.alpha, line }
    }
}

pub fn eval_simple_factor(sf: &SimpleFactor, lambda: C64) -> Result<CMat3> {
    sf.eval(lambda)
}

pub fn eval_q_factor(sf: &SimpleFactor, lambda: C64) -> Result<CMat3> {
    sf.eval_q(lambda)
}

/// `R(γ)(λ) = conj(γ(1/conj λ))`.
pub fn reflect(gamma: impl Fn(C64) -> Result<CMat3>, lambda: C64) -> Result<CMat3> {
    Ok(gamma(lambda.conj().inv())?.conj())
}

/// A frame dressed by a sequence of simple factors.
///
/// Factor `k` acts on the frame already dressed by factors `1..k`, so the left multiplier
/// is `P = p_n ⋯ p_1` and the dressed frame is `Φ̃ = P Φ G⁻¹` with
/// `G(z) = p̃_n ⋯ p̃_1`, `p̃_k = p_{α_k, L̃_k(z)}`.
#[derive(Debug, Clone)]
pub struct Dressing {
    pub case: Case,
    pub lambda: C64,
    pub dlambda: f64,
    pub factors: Vec<SimpleFactor>,
    pub opts: IntegrationOptions,
    /// Seed frames at the Sym offsets and at λ: `[λ₋, λ, λ₊]`.
    pub seed_frames: [FrameField; 3],
    /// `L̃_k(z)` per node (row-major), per factor.
    pub lines: Vec<Vec<IsotropicLine>>,
    sampler: Sampler,
}

impl Dressing {
    pub fn new(
        case: Case,
        omega: &ScalarField,
        factors: &[SimpleFactor],
        lambda: C64,
        dlambda: f64,
        opts: IntegrationOptions,
    ) -> Result<Self> {
        for sf in factors {
            sf.check_pole(lambda)?;
            if sf.alpha == ZERO {
                return Err(Error::Domain("alpha must be nonzero".into()));
            }
        }
        let sampler = Sampler::new(omega)?;
        let (lm, lp) = framing::sym_offsets(case, lambda, dlambda);
        let mut spectral = vec![lm, lambda, lp];
        spectral.extend(factors.iter().map(|f| f.alpha));
        let mut frames = par::try_map(spectral.len(), |k| {
            framing::integrate_frame_sampled(case, &sampler, spectral[k], opts)
        })?;
        let alpha_frames = frames.split_off(3);
        let seed_frames: [FrameField; 3] = frames.try_into().expect("three seed frames");

        // constant left parts: L_k^left = P_{k-1}(α_k)⁻¹ L_k
        let mut left_lines = Vec::with_capacity(factors.len());
        for (k, sf) in factors.iter().enumerate() {
            let mut pinv = CMat3::identity();
            for prev in &factors[..k] {
                pinv = pinv * prev.eval_inverse(sf.alpha)?;
            }
            left_lines.push(transform_line(&pinv, &sf.line)?);
        }

        let g = omega.grid;
        let lines = par::try_map(g.len(), |idx| {
            let (i, j) = (idx % g.nx, idx / g.nx);
            let mut out: Vec<IsotropicLine> = Vec::with_capacity(factors.len());
            for (k, sf) in factors.iter().enumerate() {
                let phi_inv = alpha_frames[k].field.data[idx].inverse()?;
                let mut gk = CMat3::identity();
                for (m, prev) in factors[..k].iter().enumerate() {
                    gk = prev.with_line(out[m]).eval(sf.alpha)? * gk;
                }
                let l = transform_line(&(gk * phi_inv), &left_lines[k]).map_err(|e| match e {
                    Error::Admissibility { .. } => Error::Admissibility { node: Some((i, j)) },
                    other => other,
                })?;
                out.push(l);
            }
            Ok(out)
        })?;
        Ok(Dressing {
            case,
            lambda,
            dlambda,
            factors: factors.to_vec(),
            opts,
            seed_frames,
            lines,
            sampler,
        })
    }

    pub fn grid(&self) -> Grid {
        self.sampler.grid()
    }

    fn node_factors(&self, idx: usize) -> impl Iterator<Item = SimpleFactor> + '_ {
        self.factors.iter().zip(&self.lines[idx]).map(|(f, l)| f.with_line(*l))
    }

    /// `G_m(z, μ) = p̃_m ⋯ p̃_1` for the first `m` factors.
    pub fn right_factor(&self, idx: usize, m: usize, mu: C64) -> Result<CMat3> {
        let mut gm = CMat3::identity();
        for f in self.node_factors(idx).take(m) {
            gm = f.eval(mu)? * gm;
        }
        Ok(gm)
    }

    /// `P(μ) = p_n(μ) ⋯ p_1(μ)`.
    pub fn left_factor(&self, mu: C64) -> Result<CMat3> {
        let mut p = CMat3::identity();
        for f in &self.factors {
            p = f.eval(mu)? * p;
        }
        Ok(p)
    }

    /// Dressed frame `Φ̃_μ = P(μ)Φ_μ G(μ)⁻¹` from a seed frame at `μ`.
    pub fn dress_seed_frame(&self, seed: &FrameField) -> Result<FrameField> {
        let mu = seed.lambda;
        let p = self.left_factor(mu)?;
        let data = par::try_map(seed.field.data.len(), |idx| {
            let mut gi = CMat3::identity();
            for f in self.node_factors(idx) {
                gi = gi * f.eval(-mu)?;
            }
            Ok(p * seed.field.data[idx] * gi)
        })?;
        Ok(FrameField { lambda: mu, field: Field { grid: seed.grid(), data } })
    }

    /// Dressed frame at the working spectral value λ.
    pub fn frame(&self) -> Result<FrameField> {
        self.dress_seed_frame(&self.seed_frames[1])
    }

    /// Dressed frame at another spectral value; integrates the seed frame there.
    pub fn frame_at(&self, mu: C64) -> Result<FrameField> {
        let seed = framing::integrate_frame_sampled(self.case, &self.sampler, mu, self.opts)?;
        self.dress_seed_frame(&seed)
    }

    pub fn seed_surface(&self) -> Result<SurfaceField> {
        let [m, z, p] = &self.seed_frames;
        framing::sym_from_frames(m, z, p, self.dlambda)
    }

    pub fn seed_normal(&self) -> SurfaceField {
        framing::gauss_map(&self.seed_frames[1])
    }

    /// Sum `Σ_m G_{m−1}⁻¹ X_m G_{m−1}` with `X_m = p̃_m⁻¹∂_λp̃_m`, at node `idx`.
    fn correction(&self, idx: usize) -> Result<CMat3> {
        let lam = self.lambda;
        let mut acc = CMat3::zero();
        let mut gm = CMat3::identity();
        let mut gm_inv = CMat3::identity();
        for f in self.node_factors(idx) {
            acc += gm_inv * f.log_derivative(lam)? * gm;
            gm = f.eval(lam)? * gm;
            gm_inv = gm_inv * f.eval(-lam)?;
        }
        Ok(acc)
    }

    fn kappa(&self) -> C64 {
        match self.case {
            Case::Positive => I * self.lambda,
            Case::Negative => self.lambda,
        }
    }

    /// Displacement `F̃ − F` per node.
    ///
    /// The dressed Sym surface equals this plus `F`, up to the constant translation
    /// `P⁻¹∂_λP` and the rotation by `P(λ)`, both dropped here.
    pub fn displacement(&self) -> Result<SurfaceField> {
        let phi = &self.seed_frames[1];
        let kappa = self.kappa();
        let data = par::try_map(phi.field.data.len(), |idx| {
            let m = phi.field.data[idx];
            let x = m * self.correction(idx)? * m.inverse()?;
            Ok(vee_unchecked(&x) * kappa)
        })?;
        Ok(Field { grid: phi.grid(), data })
    }

    /// Canonical dressed surface `F̃ = F + κ vee(Φ Σ Φ⁻¹)`, `κ = iλ` for K = 1 and `λ` for K = −1.
    pub fn surface(&self) -> Result<SurfaceField> {
        let f = self.seed_surface()?;
        let d = self.displacement()?;
        Ok(Field { grid: f.grid, data: f.data.iter().zip(&d.data).map(|(a, b)| *a + *b).collect() })
    }

    /// Normal of the canonical dressed surface, `Φ_λ G(λ)⁻¹ e₁`.
    pub fn normal(&self) -> Result<SurfaceField> {
        let phi = &self.seed_frames[1];
        let lam = self.lambda;
        let data = par::try_map(phi.field.data.len(), |idx| {
            let mut gi = CMat3::identity();
            for f in self.node_factors(idx) {
                gi = gi * f.eval(-lam)?;
            }
            Ok(phi.field.data[idx] * (gi * CVec3::e1()))
        })?;
        Ok(Field { grid: phi.grid(), data })
    }

    /// Laurent-fit residual of the dressed frames on a circle of the given radius.
    pub fn laurent_residual(&self, radius: f64) -> Result<f64> {
        let lams = framing::laurent_circle(radius);
        let frames = par::try_map(lams.len(), |k| self.frame_at(lams[k]))?;
        framing::laurent_fit_residual(&frames)
    }
}

/// `Φ̃_λ = p_{α,L}(λ)Φ_λ p_{α,L̃}(λ)⁻¹`, `L̃(z) = Φ_α(z)⁻¹L`, for a K = 1 seed.
pub fn dress_frame(sf: &SimpleFactor, omega: &ScalarField, lambda: C64) -> Result<FrameField> {
    check_alpha(sf, lambda)?;
    let d = Dressing::new(
        Case::Positive,
        omega,
        &[*sf],
        lambda,
        framing::DEFAULT_DLAMBDA,
        IntegrationOptions::default(),
    )?;
    d.frame()
}

/// Canonical dressed K = 1 surface for one simple factor.
pub fn dressed_surface(omega: &ScalarField, sf: &SimpleFactor, lambda: C64) -> Result<SurfaceField> {
    check_alpha(sf, lambda)?;
    Dressing::new(
        Case::Positive,
        omega,
        &[*sf],
        lambda,
        framing::DEFAULT_DLAMBDA,
        IntegrationOptions::default(),
    )?
    .surface()
}

fn check_alpha(sf: &SimpleFactor, lambda: C64) -> Result<()> {
    if lambda == ZERO {
        return Err(Error::Domain("λ must be nonzero".into()));
    }
    sf.check_pole(lambda)
}

/// Parameters of the Bianchi–Bäcklund transform matched to a simple factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBParams {
    /// Principal `ln(α/λ)`.
    pub beta: C64,
    /// `1/sinh β = λA_λ(α)`.
    pub mu: C64,
    pub cos_sigma: C64,
    /// `a_λ(α) = (α+λ)/(α−λ)`.
    pub a_val: C64,
    /// `A_λ(α) = 2α/((α−λ)(α+λ))`.
    pub big_a_val: C64,
}

impl BBParams {
    /// Parameter for the Bäcklund system written with the normal `φ = Φe₁` of this
    /// crate's frames: `iπ − β`. It has the same `sinh` and the opposite `cosh`, which
    /// accounts for the opposite orientation of the normal.
    pub fn classical_beta(&self) -> C64 {
        c(0.0, std::f64::consts::PI) - self.beta
    }
}

pub fn bb_params(alpha: C64, lambda: C64) -> Result<BBParams> {
    if alpha == ZERO || lambda == ZERO {
        return Err(Error::Domain("α and λ must be nonzero".into()));
    }
    let tol = POLE_TOL * alpha.norm().max(1.0);
    if (alpha - lambda).norm() <= tol || (alpha + lambda).norm() <= tol {
        return Err(Error::Pole { lambda });
    }
    let a = (alpha + lambda) / (alpha - lambda);
    let big_a = alpha * 2.0 / ((alpha - lambda) * (alpha + lambda));
    Ok(BBParams {
        beta: (alpha / lambda).ln(),
        mu: lambda * big_a,
        cos_sigma: (a + a.inv()) * 0.5,
        a_val: a,
        big_a_val: big_a,
    })
}

/// Primed lines `L₁' = p_{α₂,L₂}(α₁)L₁`, `L₂' = p_{α₁,L₁}(α₂)L₂`.
pub fn primed_lines(sf1: &SimpleFactor, sf2: &SimpleFactor) -> Result<(IsotropicLine, IsotropicLine)> {
    let l1p = transform_line(&sf2.eval(sf1.alpha)?, &sf1.line)?;
    let l2p = transform_line(&sf1.eval(sf2.alpha)?, &sf2.line)?;
    Ok((l1p, l2p))
}

/// `max_λ ‖p_{α₁,L₁'}p_{α₂,L₂} − p_{α₂,L₂'}p_{α₁,L₁}‖ / max(1, ‖p_{α₁,L₁'}p_{α₂,L₂}‖)` over the
/// sampled λ. Products of order one give the plain difference; nearly degenerate primed
/// lines make the products large and the difference is measured relative to them.
pub fn permutability_check(sf1: &SimpleFactor, sf2: &SimpleFactor, lambdas: &[C64]) -> Result<f64> {
    let (a1, a2) = (sf1.alpha, sf2.alpha);
    if (a1 * a1 - a2 * a2).norm() <= POLE_TOL * (a1.norm_sqr() + a2.norm_sqr()) {
        return Err(Error::Domain("permutability needs α₁² ≠ α₂²".into()));
    }
    let (l1p, l2p) = primed_lines(sf1, sf2)?;
    let mut worst = 0.0f64;
    for &l in lambdas {
        let lhs = sf1.with_line(l1p).eval(l)? * sf2.eval(l)?;
        let rhs = sf2.with_line(l2p).eval(l)? * sf1.eval(l)?;
        worst = worst.max((lhs - rhs).norm() / lhs.norm().max(1.0));
    }
    Ok(worst)
}

/// The complex rotation angle ζ of an element of the stabilizer of e₁.
fn stabilizer_angle(p: &CMat3) -> Result<C64> {
    let off = [p[0][1], p[0][2], p[1][0], p[2][0]].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let tol = GROUP_TOL * p.norm().powi(2).max(1.0);
    if off > tol || (p[0][0] - ONE).norm() > tol || p.orthogonality_defect() > tol {
        return Err(Error::Domain("matrix is not a rotation fixing e₁".into()));
    }
    let cz = (p[1][1] + p[2][2]) * 0.5;
    let sz = (p[2][1] - p[1][2]) * 0.5;
    Ok(-I * (cz + I * sz).ln())
}

/// Solves `P = k⁻¹·conj(k)` for `k` in the stabilizer of e₁.
///
/// `P` must be a rotation by a purely imaginary angle `it`; then `k` is the rotation by
/// `−it/2`, the representative whose C*-parameter `e^{t/2}` is positive.
pub fn find_k(p: &CMat3) -> Result<CMat3> {
    let zeta = stabilizer_angle(p)?;
    if (*p * p.conj() - CMat3::identity()).norm() > GROUP_TOL * p.norm().powi(2).max(1.0) {
        return Err(Error::Precondition("P·conj(P) ≠ 1".into()));
    }
    if zeta.re.abs() > 1e-6 {
        // P·conj(P) = 1 also admits a real angle π, which has no square root of this kind
        return Err(Error::Consistency(format!("rotation angle {zeta} has no admissible half")));
    }
    let k = rotation_e1(c(0.0, -0.5 * zeta.im));
    Ok(k)
}

/// The two-factor loop `u = k·p_{α₂,L₂'}·p_{α₁,L₁}` fixed by `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealityPair {
    pub alpha1: C64,
    pub alpha2: C64,
    pub l1: IsotropicLine,
    pub l2: IsotropicLine,
    pub l1p: IsotropicLine,
    pub l2p: IsotropicLine,
    pub p_inf: CMat3,
    pub k: CMat3,
}

impl RealityPair {
    pub fn first(&self) -> SimpleFactor {
        SimpleFactor { alpha: self.alpha1, line: self.l1 }
    }

    pub fn second(&self) -> SimpleFactor {
        SimpleFactor { alpha: self.alpha2, line: self.l2 }
    }

    /// Factors in application order for [`Dressing`]: `(α₁, L₁)` then `(α₂, L₂')`.
    pub fn chain(&self) -> [SimpleFactor; 2] {
        [self.first(), SimpleFactor { alpha: self.alpha2, line: self.l2p }]
    }

    pub fn u(&self, lambda: C64) -> Result<CMat3> {
        let [f1, f2] = self.chain();
        Ok(self.k * f2.eval(lambda)? * f1.eval(lambda)?)
    }

    /// `max ‖R(u)(λ) − u(λ)‖` over the sampled λ.
    pub fn reality_residual(&self, lambdas: &[C64]) -> Result<f64> {
        let mut worst = 0.0f64;
        for &l in lambdas {
            let r = reflect(|m| self.u(m), l)?;
            worst = worst.max((r - self.u(l)?).norm());
        }
        Ok(worst)
    }
}

pub fn reality_factor(alpha: C64, line: IsotropicLine) -> Result<RealityPair> {
    let r = alpha.norm();
    if r == 0.0 || (r - 1.0).abs() < 1e-12 || !r.is_finite() {
        return Err(Error::Domain("reality pair needs |α| ∉ {0, 1}".into()));
    }
    line.validate()?;
    let sf1 = SimpleFactor::new(alpha, line)?;
    let sf2 = SimpleFactor::new(alpha.conj().inv(), line.conj())?;
    let (l1p, l2p) = primed_lines(&sf1, &sf2)?;
    let p_inf = sf1.with_line(l1p).at_infinity() * sf2.at_infinity();
    // roundoff in the product scales with ‖P‖²
    let defect = (p_inf * p_inf.conj() - CMat3::identity()).norm() / p_inf.norm().powi(2).max(1.0);
    if defect > GROUP_TOL {
        return Err(Error::Consistency(format!("P·conj(P) deviates from 1 by {defect:.3e}")));
    }
    let k = find_k(&p_inf)?;
    Ok(RealityPair {
        alpha1: sf1.alpha,
        alpha2: sf2.alpha,
        l1: sf1.line,
        l2: sf2.line,
        l1p,
        l2p,
        p_inf,
        k,
    })
}
