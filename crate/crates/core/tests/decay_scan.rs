use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tribody::decay::{self, CouplingSet, DecayConfiguration, Interaction, RotationAxis};
use tribody::measures::full_report;
use tribody::scan::{self, OutputFormat};
use tribody::tristate::basis_index;
use tribody::Error;

const TOL: f64 = 1e-9;

fn random_physical(rng: &mut impl Rng) -> DecayConfiguration {
    loop {
        let (t2, t3) = (rng.random_range(0.0..=PI), rng.random_range(0.0..=PI));
        if t2 + t3 >= PI {
            let theta = rng.random_range(0.0..=PI);
            let phi = rng.random_range(0.0..2.0 * PI);
            return DecayConfiguration::new(t2, t3, theta, phi).unwrap();
        }
    }
}

fn random_couplings(rng: &mut impl Rng, kind: Interaction) -> CouplingSet {
    let g: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
    CouplingSet::new(kind, g).unwrap()
}

fn support(kind: Interaction) -> Vec<usize> {
    match kind {
        Interaction::Scalar => vec![
            basis_index(-1, -1, -1),
            basis_index(-1, 1, 1),
            basis_index(1, -1, -1),
            basis_index(1, 1, 1),
        ],
        Interaction::Vector => vec![
            basis_index(-1, 1, -1),
            basis_index(-1, -1, 1),
            basis_index(1, 1, -1),
            basis_index(1, -1, 1),
        ],
        Interaction::Tensor => vec![basis_index(1, 1, 1), basis_index(-1, -1, -1)],
    }
}

#[test]
fn helicity_support() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for kind in [Interaction::Scalar, Interaction::Vector, Interaction::Tensor] {
        let allowed = support(kind);
        for _ in 0..200 {
            let g = random_couplings(&mut rng, kind);
            let Ok(s) = decay::spin_state(&random_physical(&mut rng), &g) else {
                continue;
            };
            for (k, a) in s.amplitudes().iter().enumerate() {
                if !allowed.contains(&k) {
                    assert_eq!(a.norm(), 0.0, "{kind} has weight on basis state {k}");
                }
            }
        }
    }
}

#[test]
fn vector_rows_satisfy_monogamy_identity() {
    let g = CouplingSet::new(Interaction::Vector, [0.9, -0.2, 0.4, 0.7]).unwrap();
    let rows = scan::run_plane(&g, 37, 1.1, 4.0).unwrap();
    for rep in rows.iter().filter_map(|r| r.report) {
        let c2 = rep.c1_23 * rep.c1_23;
        assert!((rep.m1 - c2).abs() < TOL && (rep.m2 - c2).abs() < TOL && (rep.m3 - c2).abs() < TOL);
    }
}

#[test]
fn vector_pair_23_ignores_spin_rotation() {
    let g = CouplingSet::uniform(Interaction::Vector);
    for axis in [RotationAxis::X, RotationAxis::Y] {
        let rows = scan::run_spin(&g, 2.0 * PI / 3.0, 5.0 * PI / 6.0, axis, 73).unwrap();
        let first = rows[0].report.unwrap().c23;
        for row in &rows {
            assert!((row.report.unwrap().c23 - first).abs() < TOL);
        }
    }
}

#[test]
fn single_chirality_vector_couplings() {
    // With c_L = 0 particle 1 factors out: the one-to-other concurrence of 1
    // and F3 vanish, while the (23) pair stays entangled through d_L d_R.
    let cfg = DecayConfiguration::new(2.0 * PI / 3.0, 5.0 * PI / 6.0, 0.7, 1.9).unwrap();
    let g = CouplingSet::new(Interaction::Vector, [0.0, 1.0, 0.6, 0.8]).unwrap();
    let rep = full_report(&decay::vector_state(&cfg, &g).unwrap()).unwrap();
    let cf = decay::closed_form_vector(&cfg, &g).unwrap();
    assert!(rep.c1_23 < TOL && rep.f3 < TOL);
    assert!(rep.c23 > 0.1);
    assert!((rep.c23 - cf.c23).abs() < TOL);

    let g = CouplingSet::new(Interaction::Vector, [0.0, 1.0, 0.0, 1.0]).unwrap();
    let rep = full_report(&decay::vector_state(&cfg, &g).unwrap()).unwrap();
    assert!(rep.c23 < TOL);
}

#[test]
fn tensor_closed_form_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..500 {
        let g = random_couplings(&mut rng, Interaction::Tensor);
        let cfg = random_physical(&mut rng);
        let Ok(s) = decay::tensor_state(&cfg, &g) else {
            continue;
        };
        let rep = full_report(&s).unwrap();
        let (c, f3) = decay::closed_form_tensor(&cfg, &g).unwrap();
        assert!((rep.c1_23 - c).abs() < TOL && (rep.c2_13 - c).abs() < TOL && (rep.c3_12 - c).abs() < TOL);
        assert!((rep.f3 - f3).abs() < TOL);
        assert!(rep.c12 < TOL && rep.c13 < TOL && rep.c23 < TOL);
    }
}

#[test]
fn swapping_opening_angles_relabels_vector_state() {
    // Equal d couplings make the vector state symmetric under 2 <-> 3.
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let (cl, cr, d) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(0.1..1.0));
        let g = CouplingSet::new(Interaction::Vector, [cl, cr, d, d]).unwrap();
        let cfg = random_physical(&mut rng);
        let (Ok(a), Ok(b)) = (decay::vector_state(&cfg, &g), decay::vector_state(&cfg.swapped(), &g)) else {
            continue;
        };
        let (ra, rb) = (full_report(&a).unwrap(), full_report(&b).unwrap());
        assert!((ra.f3 - rb.f3).abs() < TOL);
        assert!((ra.c2_13 - rb.c3_12).abs() < TOL);
    }
}

#[test]
fn plane_shape() {
    let g = CouplingSet::uniform(Interaction::Tensor);
    for n in [2, 5, 31] {
        let rows = scan::run_plane(&g, n, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert_eq!(rows.len(), n * n);
        let unphysical = rows.iter().filter(|r| !r.physical).count();
        assert_eq!(unphysical, n * (n - 1) / 2);
        assert!(rows.iter().all(|r| r.physical == r.report.is_some()));
        assert_eq!(rows[1].theta2, Some(0.0));
        assert_eq!(rows[n * n - 1].theta3, Some(PI));
    }
    assert!(matches!(scan::run_plane(&g, 1, 0.0, 0.0), Err(Error::Request(_))));
}

#[test]
fn spin_shape_and_start() {
    let g = CouplingSet::uniform(Interaction::Vector);
    let rows = scan::run_spin(&g, 2.0, 2.5, RotationAxis::Y, 361).unwrap();
    assert_eq!(rows.len(), 361);
    assert_eq!(rows[0].alpha, Some(0.0));
    let point = scan::run_point(&DecayConfiguration::new(2.0, 2.5, 0.0, 0.0).unwrap(), &g).unwrap();
    assert_eq!(rows[0].report, point.report);
}

#[test]
fn unphysical_point_is_flagged_not_rejected() {
    let g = CouplingSet::uniform(Interaction::Scalar);
    let row = scan::run_point(&DecayConfiguration::new(0.5, 0.5, 1.0, 1.0).unwrap(), &g).unwrap();
    assert!(!row.physical);
    assert!(row.report.is_some());
}

#[test]
fn default_plane_scan_is_fast() {
    let start = Instant::now();
    let g = CouplingSet::uniform(Interaction::Vector);
    let rows = scan::run_plane(&g, scan::DEFAULT_GRID, FRAC_PI_2, FRAC_PI_2).unwrap();
    let mut sink = Vec::new();
    scan::serialize(&rows, OutputFormat::Csv, &mut sink).unwrap();
    assert!(start.elapsed() < Duration::from_secs(60));
}
