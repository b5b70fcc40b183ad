use cgc::backlund::*;
use cgc::dressing::*;
use cgc::framing::*;
use cgc::grid::*;
use cgc::linalg::*;
use cgc::Error;

fn setup(n: usize, h: f64) -> (ScalarField, SimpleFactor, Dressing) {
    let w = seed_pendulum(Grid::centered(n, h).unwrap(), 0.5, 0.0).unwrap();
    let sf = SimpleFactor::new(c(2.0, 0.0), IsotropicLine::from_a(c(0.3, 0.2))).unwrap();
    let d = Dressing::new(Case::Positive, &w, &[sf], ONE, DEFAULT_DLAMBDA, IntegrationOptions::default()).unwrap();
    (w, sf, d)
}

#[test]
fn dressing_matches_classical_transform() {
    let (w, sf, d) = setup(30, 0.02);
    let f = d.seed_surface().unwrap();
    let input = dressing_to_backlund(&f, &w, &sf, ONE).unwrap();
    let p = bb_params(sf.alpha, ONE).unwrap();
    assert!((input.beta.sinh() - p.beta.sinh()).norm() < 1e-12);
    assert!((input.beta - p.classical_beta()).norm() < 1e-12);
    let theta = integrate_theta(&w, input).unwrap();
    assert!(compatibility_residual(&w, &theta, input.beta).unwrap() < COMPATIBILITY_TOL);
    let fc = classical_transform(&f, &w, &theta, input.beta).unwrap();
    let report = procrustes_align(&fc, &d.surface().unwrap()).unwrap();
    assert!(report.max_pointwise_error < 1e-6, "{report:?}");
}

#[test]
fn theta0_dictionary_for_a_line() {
    // cosh θ₀ = 2ia, sinh θ₀ = −2b
    let (w, sf, d) = setup(12, 0.02);
    let input = dressing_to_backlund(&d.seed_surface().unwrap(), &w, &sf, ONE).unwrap();
    assert!((input.theta0.cosh() - I * sf.line.a * 2.0).norm() < 1e-6);
    assert!((input.theta0.sinh() + sf.line.b * 2.0).norm() < 1e-6);
}

#[test]
fn theta0_rejects_non_backlund_displacements() {
    let beta = c(0.5, 0.1);
    let r = theta0_from_displacement(CVec3::e1() * 3.0, CVec3::e1(), CVec3::e2(), beta);
    assert!(matches!(r, Err(Error::Consistency(_))));
}

#[test]
fn transformed_angle_solves_sinh_gordon() {
    let (w, sf, d) = setup(30, 0.02);
    let input = dressing_to_backlund(&d.seed_surface().unwrap(), &w, &sf, ONE).unwrap();
    let theta = integrate_theta(&w, input).unwrap();
    assert!(sinh_gordon_residual(&theta).unwrap() < BACKLUND_OUTPUT_TOL);
}

#[test]
fn real_two_step_matches_dressing() {
    let (w, _, d) = setup(30, 0.02);
    let f = d.seed_surface().unwrap();
    let rp = reality_factor(C64::from_polar(2.0, 0.3), IsotropicLine::from_a(c(0.3, 0.2))).unwrap();
    let dressed = Dressing::new(Case::Positive, &w, &rp.chain(), ONE, DEFAULT_DLAMBDA, IntegrationOptions::default())
        .unwrap()
        .surface()
        .unwrap();
    assert!(dressed.max_imag() < 1e-8);
    let input = dressing_to_backlund(&f, &w, &rp.first(), ONE).unwrap();
    let classical = two_step_real(&w, &f, input.beta, input.theta0).unwrap();
    assert!(classical.max_imag() < 1e-6, "{}", classical.max_imag());
    let report = procrustes_align(&classical, &dressed).unwrap();
    assert!(report.max_pointwise_error < 1e-6, "{report:?}");
    // other order
    let other = BacklundInput::new(c(0.0, std::f64::consts::PI) - input.beta.conj(), -input.theta0.conj()).unwrap();
    let swapped = two_step(&w, &f, other, input).unwrap();
    assert!(procrustes_align(swapped.surface(), &classical).unwrap().max_pointwise_error < 1e-6);
}

#[test]
fn two_step_real_needs_a_real_seed() {
    let g = Grid::centered(12, 0.05).unwrap();
    let w = Field::from_fn(g, |_, _| c(0.5, 0.1));
    let f = Field::filled(g, CVec3::zero());
    assert!(matches!(two_step_real(&w, &f, c(0.7, 0.0), c(0.1, 0.2)), Err(Error::Precondition(_))));
}

#[test]
fn procrustes_recovers_a_rigid_motion() {
    let g = Grid::centered(8, 0.1).unwrap();
    let f1 = Field::from_fn(g, |i, j| {
        let (x, y) = (g.x(i), g.y(j));
        CVec3::real(x, y, x * x - 0.3 * y * y + 0.1 * x * y)
    });
    let rot = expm(&hat(&CVec3([c(0.3, 0.1), c(-0.2, 0.05), c(0.7, -0.2)])));
    let shift = CVec3([c(1.0, 0.5), c(-2.0, 0.0), c(0.3, 0.3)]);
    let f2 = f1.map(|v| rot * v + shift);
    let r = procrustes_align(&f1, &f2).unwrap();
    assert!(r.max_pointwise_error < 1e-10, "{r:?}");
    assert!((r.rotation - rot).norm() < 1e-9);
    let flat = Field::from_fn(g, |i, _| CVec3::real(g.x(i), 0.0, 0.0));
    assert!(matches!(procrustes_align(&flat, &flat), Err(Error::Alignment(_))));
}

#[test]
fn associated_family_keeps_solutions() {
    let w = seed_pendulum(Grid::centered(40, 0.02).unwrap(), 0.5, 0.0).unwrap();
    for s in [0.3, std::f64::consts::FRAC_PI_2] {
        let r = associated_family_reparam(&w, c(s, 0.0)).unwrap();
        assert!(r.grid.nx >= 5 && sinh_gordon_residual(&r).unwrap() < 1e-6);
    }
    assert!(associated_family_reparam(&w, c(0.3, 0.1)).is_err());
}
