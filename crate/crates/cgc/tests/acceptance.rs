//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use cgc::backlund::{classical_transform, dressing_to_backlund, integrate_theta, procrustes_align, two_step_real};
use cgc::dressing::{bb_params, permutability_check, reality_factor, Dressing, SimpleFactor};
use cgc::framing::{self, curvature_stats, fundamental_forms, Case, IntegrationOptions, DEFAULT_DLAMBDA};
use cgc::grid::{Grid, ScalarField};
use cgc::io;
use cgc::linalg::{c, tau, CMat3, IsotropicLine, C64, ONE, ZERO};
use cgc::pseudosphere as ps;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::path::Path;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(checks: &[(&str, f64, f64)], extra: &[(bool, String)]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(name, value, tol) in checks {
        let ok = value.is_finite() && value < tol;
        pass &= ok;
        parts.push(format!("{name} {value:.3e} (< {tol:.0e}{})", if ok { "" } else { " FAILED" }));
    }
    for (ok, text) in extra {
        pass &= *ok;
        parts.push(format!("{text}{}", if *ok { "" } else { " FAILED" }));
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn runtime(t: Instant, limit: f64) -> (bool, String) {
    let s = t.elapsed().as_secs_f64();
    (s < limit, format!("runtime {s:.2}s (< {limit}s)"))
}

fn pendulum(n: usize, h: f64) -> ScalarField {
    framing::seed_pendulum(Grid::centered(n, h).unwrap(), 0.5, 0.0).unwrap()
}

fn generic_line() -> IsotropicLine {
    IsotropicLine::from_a(c(0.3, 0.2))
}

fn random_factor(rng: &mut ChaCha8Rng) -> SimpleFactor {
    let alpha = C64::from_polar(rng.gen_range(0.5..3.0), rng.gen_range(-PI..PI));
    let a = C64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(-PI..PI));
    SimpleFactor::new(alpha, IsotropicLine::from_a(a)).unwrap()
}

fn criterion_1() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut det, mut orth, mut twist, mut at0) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut n = 0;
    while n < 100 {
        let sf = random_factor(&mut rng);
        let lam = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if (lam - sf.alpha).norm() < 0.1 || (lam + sf.alpha).norm() < 0.1 {
            continue;
        }
        let p = sf.eval(lam).unwrap();
        det = det.max((p.det() - ONE).norm());
        orth = orth.max(p.orthogonality_defect());
        twist = twist.max((tau(&p) - sf.eval(-lam).unwrap()).norm());
        at0 = at0.max((sf.eval(ZERO).unwrap() - CMat3::identity()).norm());
        n += 1;
    }
    outcome(
        &[("det", det, 1e-12), ("orthogonality", orth, 1e-12), ("twisting", twist, 1e-12), ("p(0)", at0, 1e-12)],
        &[runtime(t, 1.0)],
    )
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let coarse = pendulum(50, 0.02);
    let fine = pendulum(99, 0.01);
    let lams = [ONE, c(0.6, 0.0), C64::from_polar(1.0, PI / 5.0), c(2.0, 0.0)];
    let mut worst = 0.0f64;
    let mut quarter = true;
    let mut ratios = Vec::new();
    for l in lams {
        let r1 = framing::flatness_residual(&coarse, l).unwrap();
        let r2 = framing::flatness_residual(&fine, l).unwrap();
        worst = worst.max(r1);
        quarter &= r2 <= r1 / 4.0;
        ratios.push(format!("{:.1}", r1 / r2));
    }
    let sf = SimpleFactor::new(c(2.0, 0.0), generic_line()).unwrap();
    let d = Dressing::new(Case::Positive, &coarse, &[sf], ONE, DEFAULT_DLAMBDA, IntegrationOptions::default()).unwrap();
    let laurent = d.laurent_residual(1.0).unwrap();
    outcome(
        &[("plaquette", worst, 1e-6), ("dressed Laurent fit", laurent, 1e-7)],
        &[(quarter, format!("refinement ratios [{}] (>= 4)", ratios.join(", "))), runtime(t, 30.0)],
    )
}

fn criterion_3() -> Outcome {
    let w = pendulum(50, 0.02);
    let sf = SimpleFactor::new(c(2.0, 0.0), generic_line()).unwrap();
    let d = Dressing::new(Case::Positive, &w, &[sf], ONE, DEFAULT_DLAMBDA, IntegrationOptions::default()).unwrap();
    let (f, f0) = (d.surface().unwrap(), d.seed_surface().unwrap());
    let (n, n0) = (d.normal().unwrap(), d.seed_normal());
    let len = c(16.0 / 9.0, 0.0);
    let cs = c(5.0 / 3.0, 0.0);
    let p = bb_params(sf.alpha, ONE).unwrap();
    let (mut len_dev, mut ang_dev, mut orth) = (0.0f64, 0.0f64, d.frame().unwrap().max_orthogonality_defect());
    for k in 0..w.grid.len() {
        let disp = f.data[k] - f0.data[k];
        len_dev = len_dev.max((disp.dot(&disp) - len).norm());
        ang_dev = ang_dev.max((n.data[k].dot(&n0.data[k]) - cs).norm());
        orth = orth
            .max((n.data[k].dot(&n.data[k]) - ONE).norm())
            .max(disp.dot(&n.data[k]).norm())
            .max(disp.dot(&n0.data[k]).norm());
    }
    let forms = fundamental_forms(&f, &n).unwrap();
    let off = forms.data.iter().flatten().map(|fm| fm.f.norm()).fold(0.0, f64::max);
    let consts = ((p.big_a_val * p.big_a_val - len).norm() + (p.cos_sigma - cs).norm()) < 1e-14;
    outcome(
        &[
            ("length spread vs 16/9", len_dev, 1e-8),
            ("angle spread vs 5/3", ang_dev, 1e-8),
            ("orthogonality", orth, 1e-8),
            ("II off-diagonal", off, 1e-6),
        ],
        &[(consts, "closed-form 16/9 and 5/3".into())],
    )
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let w = pendulum(50, 0.02);
    let sf = SimpleFactor::new(c(2.0, 0.0), generic_line()).unwrap();
    let d = Dressing::new(Case::Positive, &w, &[sf], ONE, DEFAULT_DLAMBDA, IntegrationOptions::default()).unwrap();
    let f = d.seed_surface().unwrap();
    let input = dressing_to_backlund(&f, &w, &sf, ONE).unwrap();
    let theta = integrate_theta(&w, input).unwrap();
    let classical = classical_transform(&f, &w, &theta, input.beta).unwrap();
    let err = procrustes_align(&classical, &d.surface().unwrap()).unwrap().max_pointwise_error;
    outcome(&[("aligned deviation", err, 1e-4)], &[runtime(t, 60.0)])
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lams = io::permutability_samples();
    let mut worst = 0.0f64;
    let (mut used, mut skipped) = (0, 0);
    while used < 20 {
        let (s1, s2) = (random_factor(&mut rng), random_factor(&mut rng));
        let near = |a: C64| lams.iter().any(|l| (*l - a).norm() < 0.05 || (*l + a).norm() < 0.05);
        if (s1.alpha - s2.alpha).norm() < 0.1 || (s1.alpha + s2.alpha).norm() < 0.1 || near(s1.alpha) || near(s2.alpha) {
            continue;
        }
        match permutability_check(&s1, &s2, &lams) {
            Ok(r) => {
                worst = worst.max(r);
                used += 1;
            }
            Err(_) => skipped += 1,
        }
    }
    outcome(&[("residual over 20 pairs x 12 λ", worst, 1e-10)], &[(true, format!("{skipped} inadmissible pairs skipped"))])
}

fn criterion_6() -> Outcome {
    let w = pendulum(50, 0.02);
    let rp = reality_factor(C64::from_polar(2.0, 0.3), generic_line()).unwrap();
    let d = Dressing::new(Case::Positive, &w, &rp.chain(), ONE, DEFAULT_DLAMBDA, IntegrationOptions::default()).unwrap();
    let f = d.surface().unwrap();
    let n = d.normal().unwrap();
    let imag = f.max_imag();
    let ru = rp.reality_residual(&io::reality_samples()).unwrap();
    let seed = d.seed_surface().unwrap();
    let input = dressing_to_backlund(&seed, &w, &rp.first(), ONE).unwrap();
    let classical = two_step_real(&w, &seed, input.beta, input.theta0).unwrap();
    let align = procrustes_align(&classical, &f).unwrap().max_pointwise_error;
    let st = curvature_stats(&fundamental_forms(&f, &n).unwrap(), 1.0, 1e-6);
    outcome(
        &[
            ("imaginary sup", imag, 1e-8),
            ("R(u) = u", ru, 1e-10),
            ("classical two-step alignment", align, 1e-4),
            ("|K - 1|", st.max_deviation, 1e-3),
        ],
        &[(st.used > 0, format!("{} nodes used", st.used))],
    )
}

fn criterion_7() -> Outcome {
    let g = Grid::centered(81, 0.025).unwrap();
    let sf = ps::RealSimpleFactor::new(c(0.0, 2.0), IsotropicLine::new(ZERO, c(0.0, 0.5)).unwrap()).unwrap();
    let d = ps::sg_dressing(&sf, &ps::sg_seed_vacuum(g), 1.0).unwrap();
    let f = d.surface().unwrap();
    let n = d.normal().unwrap();
    let st = curvature_stats(&fundamental_forms(&f, &n).unwrap(), -1.0, 1e-6);
    let sg = ps::sine_gordon_residual(&ps::extract_omega(&f, &n).unwrap()).unwrap();
    let imag = f.max_imag();
    let kink = |n: usize, h: f64| ps::sg_seed_kink(Grid::centered(n, h).unwrap(), 0.8).unwrap();
    let coarse = ps::lie_backlund_decomposition_check(&kink(41, 0.05), 2.0).unwrap();
    let fine = ps::lie_backlund_decomposition_check(&kink(81, 0.025), 2.0).unwrap();
    outcome(
        &[
            ("|K + 1|", st.max_deviation, 1e-3),
            ("sine-Gordon", sg, 1e-4),
            ("imaginary sup", imag, 1e-9),
            ("Lie decomposition (h=0.05)", coarse, 1e-3),
        ],
        &[(fine < coarse, format!("refined (h=0.025) {fine:.3e} < coarse"))],
    )
}

fn criterion_8() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let cfg = io::load_config(&dir.join("bubbleton.json")).unwrap();
    let a = io::run_job(&cfg).unwrap();
    let b = io::run_job(&cfg).unwrap();
    let mesh_a = io::mesh_to_obj(&a.surface, io::MeshPart::Real).unwrap();
    let mesh_b = io::mesh_to_obj(&b.surface, io::MeshPart::Real).unwrap();
    let rep_a = io::report_to_string(&a.report);
    let rep_b = io::report_to_string(&b.report);
    let golden = std::fs::read_to_string(dir.join("bubbleton.golden.obj")).unwrap();
    let round_trip = io::read_report(&rep_a).map(|r| r == a.report).unwrap_or(false);
    outcome(
        &[],
        &[
            (mesh_a == mesh_b, "OBJ byte-identical across runs".into()),
            (rep_a == rep_b, "report byte-identical across runs".into()),
            (mesh_a == golden, "golden bubbleton OBJ byte-identical".into()),
            (round_trip, "report round-trip".into()),
            (a.report.pass, "bubbleton checks pass".into()),
        ],
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 simple-factor algebra", criterion_1),
        ("2 flatness and extended framing", criterion_2),
        ("3 dressing invariants", criterion_3),
        ("4 dressing vs classical Bäcklund", criterion_4),
        ("5 permutability", criterion_5),
        ("6 two-step reality", criterion_6),
        ("7 pseudospherical", criterion_7),
        ("8 determinism and I/O", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!("{} [{name}] {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
