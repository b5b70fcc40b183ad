//! Browser bindings: three surface constructions returned as vertex grids for a canvas renderer.

use cgc::dressing::{reality_factor, Dressing};
use cgc::framing::{self, curvature_stats, fundamental_forms, Case, IntegrationOptions, DEFAULT_DLAMBDA};
use cgc::grid::{Grid, ScalarField, SurfaceField};
use cgc::linalg::{c, IsotropicLine, C64, ONE};
use cgc::pseudosphere as ps;
use wasm_bindgen::prelude::*;

/// A real surface sampled on an `nx × ny` grid, row-major.
#[wasm_bindgen]
pub struct Mesh {
    nx: usize,
    ny: usize,
    positions: Vec<f64>,
    max_imag: f64,
    curvature_deviation: f64,
}

#[wasm_bindgen]
impl Mesh {
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// `x, y, z` per node.
    pub fn positions(&self) -> Vec<f64> {
        self.positions.clone()
    }

    pub fn max_imag(&self) -> f64 {
        self.max_imag
    }

    /// Max deviation of the numeric Gauss curvature from its target.
    pub fn curvature_deviation(&self) -> f64 {
        self.curvature_deviation
    }
}

fn err(e: cgc::Error) -> JsError {
    JsError::new(&e.to_string())
}

fn grid(n: usize, h: f64) -> Result<Grid, JsError> {
    if !(5..=120).contains(&n) {
        return Err(JsError::new("grid size must lie in 5..=120"));
    }
    Grid::centered(n, h).map_err(err)
}

fn mesh(f: &SurfaceField, normal: &SurfaceField, target: f64) -> Result<Mesh, JsError> {
    let st = curvature_stats(&fundamental_forms(f, normal).map_err(err)?, target, 1e-6);
    Ok(Mesh {
        nx: f.grid.nx,
        ny: f.grid.ny,
        positions: f.data.iter().flat_map(|v| v.re()).collect(),
        max_imag: f.max_imag(),
        curvature_deviation: st.max_deviation,
    })
}

fn seed(omega0: f64, g: Grid) -> Result<ScalarField, JsError> {
    if omega0 == 0.0 {
        Ok(framing::seed_vacuum(g))
    } else {
        framing::seed_pendulum(g, omega0, 0.0).map_err(err)
    }
}

/// Sym surface of the pendulum seed (or the vacuum for `omega0 = 0`) on the unit circle.
#[wasm_bindgen]
pub fn seed_surface(omega0: f64, angle: f64, n: usize, h: f64) -> Result<Mesh, JsError> {
    let w = seed(omega0, grid(n, h)?)?;
    let d = Dressing::new(Case::Positive, &w, &[], C64::from_polar(1.0, angle), DEFAULT_DLAMBDA, IntegrationOptions::default())
        .map_err(err)?;
    mesh(&d.surface().map_err(err)?, &d.normal().map_err(err)?, 1.0)
}

/// Real two-factor dressing `(α, L)`, `(1/ᾱ, L̄')` of the pendulum or vacuum seed at λ = 1.
/// The line is `(a, b)` with `b = √(−1/4 − a²)`.
#[wasm_bindgen]
pub fn real_dressing(omega0: f64, alpha_re: f64, alpha_im: f64, a_re: f64, a_im: f64, n: usize, h: f64) -> Result<Mesh, JsError> {
    let w = seed(omega0, grid(n, h)?)?;
    let rp = reality_factor(c(alpha_re, alpha_im), IsotropicLine::from_a(c(a_re, a_im))).map_err(err)?;
    let d = Dressing::new(Case::Positive, &w, &rp.chain(), ONE, DEFAULT_DLAMBDA, IntegrationOptions::default()).map_err(err)?;
    mesh(&d.surface().map_err(err)?, &d.normal().map_err(err)?, 1.0)
}

/// Pseudospherical surface from one real factor `α = ir`, line `(i cos t/2, i sin t/2)`,
/// applied to the kink of the given rapidity (the vacuum when it is zero).
#[wasm_bindgen]
pub fn pseudosphere(rapidity: f64, r: f64, t: f64, n: usize, h: f64) -> Result<Mesh, JsError> {
    let g = grid(n, h)?;
    let w = if rapidity == 0.0 { ps::sg_seed_vacuum(g) } else { ps::sg_seed_kink(g, rapidity).map_err(err)? };
    let sf = ps::RealSimpleFactor::from_params(r, t).map_err(err)?;
    let d = ps::sg_dressing(&sf, &w, 1.0).map_err(err)?;
    mesh(&d.surface().map_err(err)?, &d.normal().map_err(err)?, -1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meshes_have_grid_shape() {
        let m = real_dressing(0.0, 2.0, 0.0, 0.0, 0.0, 11, 0.1).unwrap_or_else(|_| panic!("dressing failed"));
        assert_eq!(m.positions().len(), 3 * 11 * 11);
        assert!(m.max_imag() < 1e-8);
        let p = pseudosphere(0.0, 2.0, std::f64::consts::FRAC_PI_2, 11, 0.1).unwrap_or_else(|_| panic!("soliton failed"));
        assert!(p.curvature_deviation() < 1e-2);
        let s = seed_surface(0.5, 0.3, 9, 0.05).unwrap_or_else(|_| panic!("seed failed"));
        assert_eq!((s.nx(), s.ny()), (9, 9));
    }
}
