//! Complex bilinear geometry on C³.
//!
//! Everything here uses the complex-bilinear extension of the Euclidean dot
//! product, never the Hermitian one. The Hermitian norm only appears in
//! residual measurements.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance for exact algebraic identities.
pub const ALGEBRA_TOL: f64 = 1e-12;
/// Tolerance for group membership checks.
pub const GROUP_TOL: f64 = 1e-10;
/// Smallest acceptable e₁-component of a transformed generator, before renormalization.
pub const ADMISSIBILITY_TOL: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CVec3(pub [C64; 3]);

impl CVec3 {
    pub const fn new(x: C64, y: C64, z: C64) -> Self {
        CVec3([x, y, z])
    }

    pub fn real(x: f64, y: f64, z: f64) -> Self {
        CVec3([c(x, 0.0), c(y, 0.0), c(z, 0.0)])
    }

    pub fn zero() -> Self {
        CVec3([ZERO; 3])
    }

    pub fn e(k: usize) -> Self {
        let mut v = Self::zero();
        v.0[k] = ONE;
        v
    }

    pub fn e1() -> Self {
        Self::e(0)
    }
    pub fn e2() -> Self {
        Self::e(1)
    }
    pub fn e3() -> Self {
        Self::e(2)
    }

    pub fn dot(&self, o: &CVec3) -> C64 {
        bilinear(self, o)
    }

    pub fn cross(&self, o: &CVec3) -> CVec3 {
        cross(self, o)
    }

    pub fn scale(&self, s: C64) -> CVec3 {
        CVec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn conj(&self) -> CVec3 {
        CVec3([self.0[0].conj(), self.0[1].conj(), self.0[2].conj()])
    }

    /// Hermitian length, for residuals only.
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_imag(&self) -> f64 {
        self.0.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn re(&self) -> [f64; 3] {
        [self.0[0].re, self.0[1].re, self.0[2].re]
    }

    pub fn im(&self) -> [f64; 3] {
        [self.0[0].im, self.0[1].im, self.0[2].im]
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }
}

impl Index<usize> for CVec3 {
    type Output = C64;
    fn index(&self, k: usize) -> &C64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for CVec3 {
    fn index_mut(&mut self, k: usize) -> &mut C64 {
        &mut self.0[k]
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for CVec3 {
    fn add_assign(&mut self, o: CVec3) {
        *self = *self + o;
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        self.scale(-ONE)
    }
}

impl Mul<C64> for CVec3 {
    type Output = CVec3;
    fn mul(self, s: C64) -> CVec3 {
        self.scale(s)
    }
}

impl Mul<f64> for CVec3 {
    type Output = CVec3;
    fn mul(self, s: f64) -> CVec3 {
        self.scale(c(s, 0.0))
    }
}

/// 3×3 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CMat3(pub [[C64; 3]; 3]);

impl CMat3 {
    pub fn zero() -> Self {
        CMat3([[ZERO; 3]; 3])
    }

    pub fn identity() -> Self {
        Self::diag(ONE, ONE, ONE)
    }

    pub fn diag(a: C64, b: C64, d: C64) -> Self {
        let mut m = Self::zero();
        m.0[0][0] = a;
        m.0[1][1] = b;
        m.0[2][2] = d;
        m
    }

    pub fn from_real(r: [[f64; 3]; 3]) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = c(r[i][j], 0.0);
            }
        }
        m
    }

    /// Skew matrix with `m[i][j] = s`, `m[j][i] = -s`.
    pub fn skew_unit(i: usize, j: usize, s: C64) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = s;
        m.0[j][i] = -s;
        m
    }

    pub fn from_columns(a: &CVec3, b: &CVec3, d: &CVec3) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][0] = a[i];
            m.0[i][1] = b[i];
            m.0[i][2] = d[i];
        }
        m
    }

    pub fn column(&self, j: usize) -> CVec3 {
        CVec3([self.0[0][j], self.0[1][j], self.0[2][j]])
    }

    /// `u vᵀ`
    pub fn outer(u: &CVec3, v: &CVec3) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = u[i] * v[j];
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z = f(*z);
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn inverse(&self) -> Result<Self> {
        let m = &self.0;
        let d = self.det();
        if d.norm() < 1e-300 || !d.is_finite() {
            return Err(Error::Domain("singular matrix".into()));
        }
        let mut r = Self::zero();
        r.0[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
        r.0[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
        r.0[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
        r.0[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
        r.0[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
        r.0[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
        r.0[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
        r.0[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
        r.0[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        Ok(r.scale(d.inv()))
    }

    pub fn mul_vec(&self, v: &CVec3) -> CVec3 {
        let m = &self.0;
        CVec3([
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ])
    }

    pub fn commutator(&self, o: &CMat3) -> CMat3 {
        *self * *o - *o * *self
    }

    /// Hermitian Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max-row-sum norm (matrix 1-norm of the transpose); used to pick the scaling in `expm`.
    pub fn norm1(&self) -> f64 {
        (0..3)
            .map(|j| (0..3).map(|i| self.0[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    pub fn skew_part(&self) -> CMat3 {
        (*self - self.transpose()).scale(c(0.5, 0.0))
    }

    /// ‖MᵀM − 1‖ together with |det M − 1|, the larger of the two.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.transpose() * *self - CMat3::identity();
        g.norm().max((self.det() - ONE).norm())
    }
}

impl Index<usize> for CMat3 {
    type Output = [C64; 3];
    fn index(&self, i: usize) -> &[C64; 3] {
        &self.0[i]
    }
}

impl IndexMut<usize> for CMat3 {
    fn index_mut(&mut self, i: usize) -> &mut [C64; 3] {
        &mut self.0[i]
    }
}

impl Add for CMat3 {
    type Output = CMat3;
    fn add(self, o: CMat3) -> CMat3 {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] += o.0[i][j];
            }
        }
        m
    }
}

impl AddAssign for CMat3 {
    fn add_assign(&mut self, o: CMat3) {
        *self = *self + o;
    }
}

impl Sub for CMat3 {
    type Output = CMat3;
    fn sub(self, o: CMat3) -> CMat3 {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] -= o.0[i][j];
            }
        }
        m
    }
}

impl Neg for CMat3 {
    type Output = CMat3;
    fn neg(self) -> CMat3 {
        self.scale(-ONE)
    }
}

impl Mul for CMat3 {
    type Output = CMat3;
    fn mul(self, o: CMat3) -> CMat3 {
        let mut m = CMat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j];
            }
        }
        m
    }
}

impl Mul<CVec3> for CMat3 {
    type Output = CVec3;
    fn mul(self, v: CVec3) -> CVec3 {
        self.mul_vec(&v)
    }
}

impl Mul<C64> for CMat3 {
    type Output = CMat3;
    fn mul(self, s: C64) -> CMat3 {
        self.scale(s)
    }
}

impl Mul<f64> for CMat3 {
    type Output = CMat3;
    fn mul(self, s: f64) -> CMat3 {
        self.scale(c(s, 0.0))
    }
}

pub fn bilinear(u: &CVec3, v: &CVec3) -> C64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub fn cross(u: &CVec3, v: &CVec3) -> CVec3 {
    CVec3([
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ])
}

/// The skew matrix with `hat(u)·w = u × w`.
pub fn hat(u: &CVec3) -> CMat3 {
    let mut m = CMat3::zero();
    m.0[1][2] = -u[0];
    m.0[2][1] = u[0];
    m.0[0][2] = u[1];
    m.0[2][0] = -u[1];
    m.0[0][1] = -u[2];
    m.0[1][0] = u[2];
    m
}

/// Inverse of [`hat`]. Fails when `m` is not skew to [`ALGEBRA_TOL`] relative to its size.
pub fn vee(m: &CMat3) -> Result<CVec3> {
    let sym = (*m + m.transpose()).norm();
    if sym > ALGEBRA_TOL * (1.0 + m.norm()) {
        return Err(Error::Domain(format!("vee of non-skew matrix (symmetric part {sym:.3e})")));
    }
    Ok(vee_unchecked(m))
}

/// `vee` of the skew part, no check.
pub fn vee_unchecked(m: &CMat3) -> CVec3 {
    let s = m.skew_part();
    CVec3([s.0[2][1], s.0[0][2], s.0[1][0]])
}

/// Q = diag(1, −1, −1).
pub fn q_mat() -> CMat3 {
    CMat3::diag(ONE, -ONE, -ONE)
}

/// Conjugation by Q. Q is its own inverse.
pub fn tau(m: &CMat3) -> CMat3 {
    let mut r = *m;
    for i in 0..3 {
        for j in 0..3 {
            if (i == 0) != (j == 0) {
                r.0[i][j] = -r.0[i][j];
            }
        }
    }
    r
}

pub fn q_vec(v: &CVec3) -> CVec3 {
    CVec3([v[0], -v[1], -v[2]])
}

/// A null line in C³ with generator `v = (1/2, a, b)`, `a² + b² = −1/4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicLine {
    pub a: C64,
    pub b: C64,
}

impl IsotropicLine {
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let l = IsotropicLine { a, b };
        l.validate()?;
        Ok(l)
    }

    /// Line with the given `a`; `b` is the root with non-negative real part
    /// (positive imaginary part when the real part vanishes).
    pub fn from_a(a: C64) -> Self {
        let mut b = (c(-0.25, 0.0) - a * a).sqrt();
        if b.re < 0.0 || (b.re == 0.0 && b.im < 0.0) {
            b = -b;
        }
        IsotropicLine { a, b }
    }

    pub fn isotropy_defect(&self) -> f64 {
        (self.a * self.a + self.b * self.b + c(0.25, 0.0)).norm()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || !self.b.is_finite() {
            return Err(Error::Domain("non-finite isotropic line".into()));
        }
        let scale = 1.0 + self.a.norm_sqr() + self.b.norm_sqr();
        let d = self.isotropy_defect();
        if d > ALGEBRA_TOL * scale {
            return Err(Error::Domain(format!("a² + b² + 1/4 = {d:.3e}, line not isotropic")));
        }
        Ok(())
    }

    pub fn generator(&self) -> CVec3 {
        CVec3([c(0.5, 0.0), self.a, self.b])
    }

    pub fn q_generator(&self) -> CVec3 {
        CVec3([c(0.5, 0.0), -self.a, -self.b])
    }

    /// `w = v × Qv = (0, b, −a)`, spans the orthogonal complement of `L ⊕ QL`.
    pub fn w(&self) -> CVec3 {
        cross(&self.generator(), &self.q_generator())
    }

    /// The image line `QL`.
    pub fn q(&self) -> IsotropicLine {
        IsotropicLine { a: -self.a, b: -self.b }
    }

    pub fn conj(&self) -> IsotropicLine {
        IsotropicLine { a: self.a.conj(), b: self.b.conj() }
    }

    /// Line spanned by `v`, normalized to e₁-component 1/2.
    pub fn from_generator(v: &CVec3) -> Result<Self> {
        if v[0].norm() < ADMISSIBILITY_TOL {
            return Err(Error::Admissibility { node: None });
        }
        let s = c(0.5, 0.0) / v[0];
        Ok(IsotropicLine { a: v[1] * s, b: v[2] * s })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorTriple {
    pub pi_l: CMat3,
    pub pi_l0: CMat3,
    pub pi_ql: CMat3,
}

/// Projectors for `C³ = L ⊕ L₀ ⊕ QL`.
pub fn projectors(l: &IsotropicLine) -> Result<ProjectorTriple> {
    l.validate()?;
    Ok(projectors_unchecked(l))
}

pub(crate) fn projectors_unchecked(l: &IsotropicLine) -> ProjectorTriple {
    let v = l.generator();
    let qv = l.q_generator();
    let w = l.w();
    ProjectorTriple {
        pi_l: CMat3::outer(&v, &qv) * 2.0,
        pi_l0: CMat3::outer(&w, &w) * -4.0,
        pi_ql: CMat3::outer(&qv, &v) * 2.0,
    }
}

/// The line `g·L`, renormalized. Fails when the image has a vanishing e₁-component.
pub fn transform_line(g: &CMat3, l: &IsotropicLine) -> Result<IsotropicLine> {
    IsotropicLine::from_generator(&g.mul_vec(&l.generator()))
}

/// Matrix exponential by scaling and squaring with a degree-7 Padé approximant.
pub fn expm(a: &CMat3) -> CMat3 {
    const B: [f64; 8] = [
        17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
    ];
    const THETA7: f64 = 3.925_724_783_138_66;
    let nrm = a.norm1();
    let s = if nrm > THETA7 { (nrm / THETA7).log2().ceil() as i32 } else { 0 };
    let a = a.scale(c(0.5f64.powi(s), 0.0));
    let id = CMat3::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let u = a * (a6 * B[7] + a4 * B[5] + a2 * B[3] + id * B[1]);
    let v = a6 * B[6] + a4 * B[4] + a2 * B[2] + id * B[0];
    let mut r = (v - u)
        .inverse()
        .expect("Padé denominator is nonsingular after scaling")
        * (v + u);
    for _ in 0..s {
        r = r * r;
    }
    r
}

/// Rotation by the complex angle `zeta` in the (e₂, e₃) plane.
pub fn rotation_e1(zeta: C64) -> CMat3 {
    let (cz, sz) = (zeta.cos(), zeta.sin());
    let mut m = CMat3::identity();
    m.0[1][1] = cz;
    m.0[1][2] = -sz;
    m.0[2][1] = sz;
    m.0[2][2] = cz;
    m
}

/// Principal inverse square root of a matrix with no eigenvalues on the closed negative real axis,
/// by the Denman–Beavers iteration.
pub fn inv_sqrtm(a: &CMat3) -> Result<CMat3> {
    let mut y = *a;
    let mut z = CMat3::identity();
    for _ in 0..100 {
        let yi = y.inverse()?;
        let zi = z.inverse()?;
        let y1 = (y + zi) * 0.5;
        let z1 = (z + yi) * 0.5;
        let delta = (y1 - y).norm() / y1.norm().max(1e-300);
        y = y1;
        z = z1;
        if delta < 1e-15 {
            return Ok(z);
        }
    }
    if (z * z * *a - CMat3::identity()).norm() < 1e-9 {
        Ok(z)
    } else {
        Err(Error::Domain("matrix square root iteration did not converge".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_i2() -> IsotropicLine {
        IsotropicLine::new(c(0.0, 0.5), ZERO).unwrap()
    }

    #[test]
    fn bilinear_examples() {
        assert_eq!(bilinear(&CVec3::e1(), &CVec3::e1()), ONE);
        let v = line_i2().generator();
        assert!(bilinear(&v, &v).norm() < 1e-15);
        let l = IsotropicLine::from_a(c(0.3, -0.7));
        let vq = bilinear(&l.generator(), &l.q_generator());
        assert!((vq - c(0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(&CVec3::e1(), &CVec3::e2()), CVec3::e3());
        let l = line_i2();
        let v = l.generator();
        assert!(cross(&v, &v).norm() < 1e-15);
        let w = cross(&v, &l.q_generator());
        assert!((w - CVec3::new(ZERO, ZERO, c(0.0, -0.5))).norm() < 1e-15);
    }

    #[test]
    fn hat_vee_examples() {
        let h = hat(&CVec3::e1());
        assert_eq!(h[1][2], -ONE);
        assert_eq!(h[2][1], ONE);
        let u = CVec3::new(ONE, c(0.0, 2.0), c(3.0, 0.0));
        assert_eq!(vee(&hat(&u)).unwrap(), u);
        assert_eq!(h * CVec3::e2(), CVec3::e3());
        assert!(vee(&CMat3::identity()).is_err());
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&CMat3::identity()), CMat3::identity());
        assert_eq!(tau(&hat(&CVec3::e1())), hat(&CVec3::e1()));
        assert_eq!(tau(&hat(&CVec3::e2())), -hat(&CVec3::e2()));
        let m = CMat3::from_real([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0], [7.0, 8.0, 9.0]]);
        assert_eq!(tau(&m), q_mat() * m * q_mat());
    }

    #[test]
    fn projector_examples() {
        let l = line_i2();
        let p = projectors(&l).unwrap();
        let v = l.generator();
        assert!((p.pi_l * v - v).norm() < 1e-15);
        assert!((p.pi_l * l.q_generator()).norm() < 1e-15);
        let sum = p.pi_l + p.pi_l0 + p.pi_ql;
        assert!((sum - CMat3::identity()).norm() < 1e-15);
        // direct assembly for a = i/2, b = 0
        let expect_l = CMat3([
            [c(0.5, 0.0), c(0.0, -0.5), ZERO],
            [c(0.0, 0.5), c(0.5, 0.0), ZERO],
            [ZERO, ZERO, ZERO],
        ]);
        assert!((p.pi_l - expect_l).norm() < 1e-15);
        assert!((p.pi_ql - q_mat() * p.pi_l * q_mat()).norm() < 1e-15);
        assert!(projectors(&IsotropicLine { a: ONE, b: ONE }).is_err());
    }

    #[test]
    fn transform_line_examples() {
        let l = IsotropicLine::from_a(c(0.2, 0.9));
        let t = transform_line(&CMat3::identity(), &l).unwrap();
        assert!((t.a - l.a).norm() < 1e-15 && (t.b - l.b).norm() < 1e-15);
        let t = transform_line(&q_mat(), &l).unwrap();
        assert!((t.a + l.a).norm() < 1e-15 && (t.b + l.b).norm() < 1e-15);
        let rot = rotation_e1(c(std::f64::consts::FRAC_PI_2, 0.0));
        let t = transform_line(&rot, &line_i2()).unwrap();
        assert!(t.a.norm() < 1e-15 && (t.b - c(0.0, 0.5)).norm() < 1e-15);
        // an e₁-free image is inadmissible
        let kill = CMat3::from_real([[0.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(matches!(transform_line(&kill, &l), Err(Error::Admissibility { .. })));
    }

    #[test]
    fn expm_matches_rotation() {
        let t = c(0.7, -0.3);
        let e = expm(&hat(&CVec3::e1().scale(t)));
        assert!((e - rotation_e1(t)).norm() < 1e-14);
        let big = hat(&CVec3::real(30.0, -12.0, 5.0));
        let e = expm(&big);
        assert!(e.orthogonality_defect() < 1e-11);
        assert!((expm(&CMat3::zero()) - CMat3::identity()).norm() == 0.0);
    }

    #[test]
    fn inverse_sqrt() {
        let a = CMat3([
            [c(4.0, 1.0), c(0.5, 0.0), ZERO],
            [c(0.5, 0.0), c(3.0, -0.2), c(0.1, 0.1)],
            [ZERO, c(0.1, 0.1), c(2.0, 0.0)],
        ]);
        let z = inv_sqrtm(&a).unwrap();
        assert!((z * z * a - CMat3::identity()).norm() < 1e-12);
    }
}
