use cgc::dressing::*;
use cgc::io::{permutability_samples, reality_samples};
use cgc::linalg::*;
use cgc::Error;
use proptest::prelude::*;

fn cplx(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b))
}

fn alpha() -> impl Strategy<Value = C64> {
    (0.3f64..3.0, -3.2f64..3.2).prop_map(|(r, t)| C64::from_polar(r, t))
}

fn factor() -> impl Strategy<Value = SimpleFactor> {
    (alpha(), cplx(1.0)).prop_map(|(a, l)| SimpleFactor::new(a, IsotropicLine::from_a(l)).unwrap())
}

fn away_from_poles(sf: &SimpleFactor, lam: C64) -> bool {
    (lam - sf.alpha).norm() > 0.05 && (lam + sf.alpha).norm() > 0.05
}

proptest! {
    #[test]
    fn factor_is_twisted_orthogonal(sf in factor(), lam in cplx(2.0)) {
        prop_assume!(away_from_poles(&sf, lam));
        let p = sf.eval(lam).unwrap();
        let s = 1.0 + p.norm().powi(2);
        prop_assert!((p.det() - ONE).norm() < 1e-12 * s);
        prop_assert!(p.orthogonality_defect() < 1e-12 * s);
        prop_assert!((tau(&p) - sf.eval(-lam).unwrap()).norm() < 1e-12 * s);
        prop_assert!((sf.eval(ZERO).unwrap() - CMat3::identity()).norm() < 1e-12 * s);
    }

    #[test]
    fn factor_group_laws(sf in factor(), lam in cplx(2.0)) {
        prop_assume!(away_from_poles(&sf, lam));
        let p = sf.eval(lam).unwrap();
        let inv = sf.eval_inverse(lam).unwrap();
        let s = 1.0 + p.norm() * inv.norm();
        prop_assert!((p * inv - CMat3::identity()).norm() < 1e-12 * s);
        // p_{−α,L} = p_{α,L}⁻¹
        let neg = SimpleFactor::new(-sf.alpha, sf.line).unwrap();
        prop_assert!((neg.eval(lam).unwrap() - inv).norm() < 1e-12 * s);
        // q = p(∞)p, and p(∞) is an involution
        let pinf = sf.at_infinity();
        prop_assert!((pinf * pinf - CMat3::identity()).norm() < 1e-12 * (1.0 + pinf.norm().powi(2)));
        if lam != ZERO {
            let q = sf.eval_q(lam).unwrap();
            prop_assert!((q - pinf * p).norm() < 1e-12 * s * (1.0 + pinf.norm()));
        }
    }

    #[test]
    fn log_derivative_matches_difference(sf in factor(), lam in cplx(2.0)) {
        prop_assume!(away_from_poles(&sf, lam) && (lam - sf.alpha).norm() > 0.3 && (lam + sf.alpha).norm() > 0.3);
        let h = 1e-5;
        let dp = (sf.eval(lam + h).unwrap() - sf.eval(lam - h).unwrap()) * (0.5 / h);
        let lhs = sf.eval_inverse(lam).unwrap() * dp;
        let rhs = sf.log_derivative(lam).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-6 * (1.0 + rhs.norm()) * (1.0 + sf.eval(lam).unwrap().norm()).powi(2));
    }

    #[test]
    fn permutability_holds(sf1 in factor(), sf2 in factor()) {
        prop_assume!((sf1.alpha - sf2.alpha).norm() > 0.1 && (sf1.alpha + sf2.alpha).norm() > 0.1);
        let lams = permutability_samples();
        prop_assume!(lams.iter().all(|l| away_from_poles(&sf1, *l) && away_from_poles(&sf2, *l)));
        match permutability_check(&sf1, &sf2, &lams) {
            Ok(r) => prop_assert!(r < 1e-10, "residual {}", r),
            Err(Error::Admissibility { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn reality_pairs_are_real(sf in factor()) {
        prop_assume!((sf.alpha.norm() - 1.0).abs() > 0.1);
        let lams = reality_samples();
        let poles = [sf.alpha, -sf.alpha, sf.alpha.conj().inv(), -sf.alpha.conj().inv()];
        prop_assume!(lams.iter().all(|l| poles.iter().all(|p| (l - p).norm() > 0.05)));
        match reality_factor(sf.alpha, sf.line) {
            Ok(rp) => {
                let r = rp.reality_residual(&lams).unwrap();
                prop_assert!(r < 1e-10 * (1.0 + rp.k.norm()).powi(2), "residual {}", r);
            }
            Err(Error::Admissibility { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn constant_length_and_angle_values() {
    let p = bb_params(c(2.0, 0.0), ONE).unwrap();
    assert!((p.big_a_val * p.big_a_val - c(16.0 / 9.0, 0.0)).norm() < 1e-14);
    assert!((p.cos_sigma - c(5.0 / 3.0, 0.0)).norm() < 1e-14);
}
