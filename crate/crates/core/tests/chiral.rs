use polydet::chiral::{
    assemble_field_matrix, axial_pair, axial_phase_law, build_generators, check_invariance,
    chiral_transform, enumerate_vertices, lagrangian_value, lorentz_contracted_polydet,
    lorentz_contracted_polydet_converting, project_fields, u1_pair, vector_pair, Couplings,
    FieldConfiguration, FieldId, LorentzIndexedFamily, Part, Variance,
};
use polydet::random::{MatrixKind, Sampler};
use polydet::{polydet, Complex, ComplexMatrix, ComplexTuple, Error};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[test]
fn generators_orthonormal_and_hermitian() {
    for n in 2..=5 {
        let b = build_generators(n).unwrap();
        assert_eq!(b.len(), n * n);
        for a in 0..b.len() {
            let t = b.get(a);
            assert!(t.max_abs_diff(&t.conj_transpose()) < 1e-15);
            if a > 0 {
                assert!(t.trace().norm() < 1e-12);
            }
            for d in 0..b.len() {
                let tr = t.matmul(b.get(d)).unwrap().trace();
                let expect = if a == d { 0.5 } else { 0.0 };
                assert!((tr - c(expect, 0.0)).norm() < 1e-12, "n={n} a={a} b={d}");
            }
        }
    }
}

#[test]
fn assemble_project_round_trip() {
    let b = build_generators(3).unwrap();
    let mut s = Sampler::new(4);
    let re: Vec<f64> = (0..9).map(|_| s.uniform()).collect();
    let im: Vec<f64> = (0..9).map(|_| s.uniform()).collect();
    let a = assemble_field_matrix(&b, &re, &im).unwrap();
    let phi = project_fields(&b, &a).unwrap();
    for k in 0..9 {
        assert!((phi[k] - c(re[k], im[k])).norm() < 1e-13);
    }
}

#[test]
fn transformation_examples() {
    let mut s = Sampler::new(9);
    let a = s.matrix(3, MatrixKind::General);
    let id = ComplexMatrix::identity(3);
    assert!(chiral_transform(&a, &id, &id).unwrap().max_abs_diff(&a) < 1e-15);

    // U(1)_L x U(1)_R reduces to exp(-i (theta_L - theta_R) / sqrt(2N))
    let (ul, ur) = u1_pair(3, 0.7, -0.2);
    let moved = chiral_transform(&a, &ul, &ur).unwrap();
    let phase = Complex::from_polar(1.0, -0.9 / 6f64.sqrt());
    assert!(moved.max_abs_diff(&a.scale(&phase)) < 1e-14);

    let t =
        ComplexTuple::new(vec![a.clone(), a.clone(), s.matrix(3, MatrixKind::General)]).unwrap();
    let (vl, vr) = vector_pair(3, 1.3);
    assert!((check_invariance(&t, &vl, &vr).unwrap().ratio - c(1.0, 0.0)).norm() < 1e-12);
    let (al, ar) = axial_pair(3, 0.4);
    let r = check_invariance(&t, &al, &ar).unwrap();
    assert!((r.ratio - Complex::from_polar(1.0, -0.4 * 6f64.sqrt())).norm() < 1e-12);
    assert!(!r.su_invariant);
}

#[test]
fn general_unitaries_pick_up_determinant_phases() {
    let mut s = Sampler::new(21);
    for n in 2..=4 {
        let t = s.tuple(n);
        let ul = s.matrix(n, MatrixKind::Unitary);
        let ur = s.matrix(n, MatrixKind::Unitary);
        let r = check_invariance(&t, &ul, &ur).unwrap();
        assert!(r.deviation_from_prediction() < 1e-9);
    }
}

#[test]
fn phase_law_values() {
    assert!((axial_phase_law(2, 0.3, 2) - Complex::from_polar(1.0, -0.6)).norm() < 1e-15);
    assert!(
        (axial_phase_law(3, 0.3, 3) - Complex::from_polar(1.0, -0.3 * 6f64.sqrt())).norm() < 1e-15
    );
    assert_eq!(axial_phase_law(4, 0.0, 4), c(1.0, 0.0));
}

#[test]
fn lagrangian_examples() {
    let zero = FieldConfiguration::zero(3, 2);
    let cpl = Couplings {
        c1: c(0.8, 2.0),
        c2: c(1.0, 1.0),
        c3: c(-1.0, 0.5),
        c4: c(0.3, 0.3),
        f0: 1.7,
    };
    assert_eq!(lagrangian_value(&zero, &cpl, false).unwrap(), 0.0);
    let shifted = lagrangian_value(&zero, &cpl, true).unwrap();
    let expect = 2.0 * 0.8 * 1.7f64.powi(3) / (6.0 * 6f64.sqrt());
    assert!((shifted - expect).abs() < 1e-12);

    let mut cfg = zero.clone();
    cfg.multiplets[0].s[3] = 2.0;
    assert!(matches!(
        lagrangian_value(&FieldConfiguration::zero(3, 3), &cpl, false),
        Err(Error::MultipletCount {
            expected: 2,
            found: 3
        })
    ));
    cfg.multiplets[1].p[8] = f64::NAN;
    assert!(lagrangian_value(&cfg, &cpl, false).is_err());
}

#[test]
fn c3_alone_gives_only_mixed_cubic_vertices() {
    let cpl = Couplings {
        c3: c(1.0, 0.0),
        ..Couplings::zero()
    };
    let v = enumerate_vertices(&cpl).unwrap();
    assert!(!v.is_empty());
    for vertex in &v {
        assert_eq!(vertex.degree(), 3);
        assert_eq!(vertex.multiplet_count(1), 2, "{vertex}");
    }
    assert!(enumerate_vertices(&Couplings::zero()).unwrap().is_empty());
}

#[test]
fn condensate_generates_mixing_and_tadpole() {
    let cpl = Couplings {
        c3: c(1.0, 0.0),
        f0: 1.0,
        ..Couplings::zero()
    };
    let v = enumerate_vertices(&cpl).unwrap();
    assert!(v.iter().any(|x| x.fields == [FieldId::s(2, 0)]));
    assert!(v
        .iter()
        .any(|x| x.degree() == 2 && x.multiplet_count(1) == 1 && x.multiplet_count(2) == 1));
    // c4 f0 (p2)^2 style masses from the fourth term
    let cpl = Couplings {
        c4: c(1.0, 0.0),
        f0: 1.0,
        ..Couplings::zero()
    };
    let v = enumerate_vertices(&cpl).unwrap();
    assert!(v
        .iter()
        .any(|x| x.fields == [FieldId::p(2, 3), FieldId::p(2, 3)]));
    assert!(v.iter().all(|x| x
        .fields
        .iter()
        .any(|f| f.multiplet == 2 && matches!(f.part, Part::S | Part::P))));
}

fn metric_tensor(b: &ComplexMatrix) -> LorentzIndexedFamily {
    let g = [1.0, -1.0, -1.0, -1.0];
    let comps = (0..16)
        .map(|k| {
            if k / 4 == k % 4 {
                b.scale(&c(g[k / 4], 0.0))
            } else {
                ComplexMatrix::zeros(3)
            }
        })
        .collect();
    LorentzIndexedFamily::new(vec![Variance::Upper; 2], comps).unwrap()
}

#[test]
fn lorentz_examples() {
    let mut s = Sampler::new(30);
    let a = s.matrix(3, MatrixKind::General);
    let b = s.matrix(3, MatrixKind::General);
    let z = ComplexMatrix::zeros(3);
    let v = LorentzIndexedFamily::vector(
        Variance::Lower,
        [a.clone(), z.clone(), z.clone(), z.clone()],
    )
    .unwrap();
    let t = metric_tensor(&b);
    let direct = polydet(
        &ComplexTuple::new(vec![a.clone(), a.clone(), b]).unwrap(),
        None,
    )
    .unwrap()
    .value;
    assert!((lorentz_contracted_polydet(&v, &t).unwrap() - direct).norm() < 1e-12);

    let zero_t = LorentzIndexedFamily::new(vec![Variance::Upper; 2], vec![z.clone(); 16]).unwrap();
    assert!(lorentz_contracted_polydet(&v, &zero_t).unwrap().norm() < 1e-12);

    // raising V_0 leaves it unchanged, so the converting variant agrees
    let up = v.with_variance(&[Variance::Upper]).unwrap();
    assert!((lorentz_contracted_polydet_converting(&up, &t).unwrap() - direct).norm() < 1e-12);
    assert!(matches!(
        lorentz_contracted_polydet(&up, &t),
        Err(Error::VarianceMismatch(_))
    ));
    assert!(LorentzIndexedFamily::new(vec![Variance::Upper], vec![z; 3]).is_err());
}
