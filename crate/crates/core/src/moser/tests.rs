use std::f64::consts::TAU;

use super::*;
use crate::error::Error;
use proptest::prelude::*;

const EPS: f64 = 0.05;

fn t2_family(eps: f64) -> FormFamily {
    let base = TwoFormField::constant(2, &[(1, 2, 1.0)]).unwrap();
    let mut a = OneFormField::zero(2);
    a.coeffs[1].push(TrigTerm::new(vec![1, 0], 0.0, eps));
    FormFamily::new(base, vec![a]).unwrap()
}

/// Ω⁺ varies in the (x₁,x₂) block only; Ω⁻ = dx³∧dx⁴ is fixed.
fn t4_pair() -> (FormFamily, FormFamily) {
    let mut gamma = OneFormField::zero(4);
    gamma.coeffs[1].push(TrigTerm::new(vec![1, 0, 0, 0], 0.0, EPS / 2.0));
    gamma.coeffs[0].push(TrigTerm::new(vec![0, 1, 0, 0], 0.0, EPS / 2.0));
    let w = TwoFormField::constant(4, &[(1, 2, 0.5), (3, 4, 0.5)]).unwrap();
    let e = TwoFormField::constant(4, &[(1, 2, 0.5), (3, 4, -0.5)]).unwrap();
    (
        FormFamily::new(w, vec![gamma.clone()]).unwrap(),
        FormFamily::new(e, vec![gamma]).unwrap(),
    )
}

fn finite_difference(p: &TrigPoly, x: &[f64], j: usize) -> f64 {
    let h = 1e-6;
    let mut a = x.to_vec();
    let mut b = x.to_vec();
    a[j] += h;
    b[j] -= h;
    (p.eval(&a) - p.eval(&b)) / (2.0 * h)
}

#[test]
fn single_term_derivative() {
    let mut a = OneFormField::zero(2);
    a.coeffs[1].push(TrigTerm::new(vec![1, 0], 0.0, 1.0));
    let d = exterior_derivative_field(&a);
    for x in [[0.1, 0.7], [0.35, 0.2], [0.9, 0.9]] {
        let expected = TAU * (TAU * x[0]).cos();
        assert!((d.coeff(0, 1).eval(&x) - expected).abs() < 1e-12);
    }
}

#[test]
fn constant_one_form_is_closed_to_zero() {
    let mut a = OneFormField::zero(3);
    a.coeffs[0] = TrigPoly::constant(3, 2.5);
    a.coeffs[2] = TrigPoly::constant(3, -1.0);
    assert!(exterior_derivative_field(&a).is_zero());
}

#[test]
fn two_frequencies_match_finite_differences() {
    let mut a = OneFormField::zero(3);
    a.coeffs[0].push(TrigTerm::new(vec![0, 2, 1], 0.3, -0.7));
    a.coeffs[1].push(TrigTerm::new(vec![1, 0, -1], 1.1, 0.4));
    a.coeffs[2].push(TrigTerm::new(vec![2, 1, 0], 0.0, 0.9));
    let d = exterior_derivative_field(&a);
    for x in sample_points(3, 20, 11) {
        for i in 0..3 {
            for j in i + 1..3 {
                let fd = finite_difference(&a.coeffs[j], &x, i) - finite_difference(&a.coeffs[i], &x, j);
                assert!((d.coeff(i, j).eval(&x) - fd).abs() < 1e-6, "({i},{j}) at {x:?}");
            }
        }
    }
}

#[test]
fn zero_primitive_gives_zero_field() {
    let fam = FormFamily::new(TwoFormField::constant(2, &[(1, 2, 1.0)]).unwrap(), vec![]).unwrap();
    let v = moser_vector_field(&fam, &[0.3, 0.4], 0.5).unwrap();
    assert_eq!(v.amax(), 0.0);
}

#[test]
fn t2_field_matches_hand_solution() {
    let fam = t2_family(EPS);
    for x in sample_points(2, 16, 3) {
        for t in [0.0, 0.3, 1.0] {
            let v = moser_vector_field(&fam, &x, t).unwrap();
            let (s, c) = (TAU * x[0]).sin_cos();
            // i_X ω = −α with ω = f dx¹∧dx² gives f X¹ = −ε sin.
            let expected = -EPS * s / (1.0 + TAU * EPS * t * c);
            assert!((v[0] - expected).abs() < 1e-14);
            assert_eq!(v[1], 0.0);
            assert!(field_residual(&fam, &x, t, &v) < 1e-12);
        }
    }
}

#[test]
fn omega_dot_is_d_alpha() {
    let fam = t2_family(EPS);
    let x = [0.21, 0.8];
    let h = 1e-5;
    let t = 0.4;
    let dt = (fam.omega(&x, t + h) - fam.omega(&x, t - h)) / (2.0 * h);
    assert!((dt - fam.d_alpha(&x, t)).amax() < 1e-8);
    assert!(fam.is_closed());
}

#[test]
fn t4_field_vanishes_on_fixed_block() {
    let (w, e) = t4_pair();
    for x in sample_points(4, 16, 5) {
        let v = moser_vector_field(&w, &x, 0.7).unwrap();
        let y = moser_vector_field(&e, &x, 0.7).unwrap();
        assert_eq!((v[2], v[3]), (0.0, 0.0));
        assert!((&v - &y).amax() < 1e-15);
    }
}

#[test]
fn intertwining_residuals() {
    let (w, e) = t4_pair();
    let xs = sample_points(4, 16, 9);
    let times = [0.0, 0.5, 1.0];
    let r = intertwining_check(&w, &e, &xs, &times).unwrap();
    assert!(r.within(1e-12), "{r:?}");

    let same = intertwining_check(&w, &w, &xs, &times).unwrap();
    assert!(same.alpha_residual < 1e-15 && same.a_drift < 1e-15);

    // β = 2α∘A⁻¹ is off by a factor of two.
    let doubled = e.scale_primitives(2.0).unwrap();
    let bad = intertwining_check(&w, &doubled, &xs, &times).unwrap();
    assert!(bad.alpha_residual > 1e-3);
}

#[test]
fn constant_family_flow_is_identity() {
    let fam = FormFamily::new(TwoFormField::constant(2, &[(1, 2, 1.0)]).unwrap(), vec![]).unwrap();
    let flow = FlowFamily {
        name: "constant".into(),
        omega: fam,
        eta: None,
    };
    let xs = sample_points(2, 4, 1);
    let r = integrate_flow(&flow, &xs, 8).unwrap();
    assert_eq!(r.final_error(), 0.0);
    for tr in &r.trajectories {
        assert_eq!(tr.positions.last().unwrap(), &tr.start);
    }
}

#[test]
fn degenerate_base_is_rejected() {
    let fam = FormFamily::new(TwoFormField::zero(2), vec![]).unwrap();
    assert!(matches!(
        moser_vector_field(&fam, &[0.1, 0.1], 0.0),
        Err(Error::DegenerateFamily { .. })
    ));
}

#[test]
fn large_epsilon_degenerates() {
    // 1 + 2πεt cos(2πx₁) vanishes at x₁ = 1/2, t = 1/π when ε = 1/2.
    let r = moser_vector_field(&t2_family(0.5), &[0.5, 0.0], 1.0 / std::f64::consts::PI);
    assert!(matches!(r, Err(Error::DegenerateFamily { .. })), "{r:?}");
}

#[test]
fn step_count_must_divide_checkpoints() {
    let flow = FlowFamily {
        name: "t2".into(),
        omega: t2_family(EPS),
        eta: None,
    };
    assert!(matches!(integrate_flow(&flow, &[vec![0.1, 0.1]], 10), Err(Error::Precondition(_))));
}

#[test]
fn t2_flow_small_errors_and_orientation() {
    let flow = FlowFamily {
        name: "t2".into(),
        omega: t2_family(EPS),
        eta: None,
    };
    let r = integrate_flow(&flow, &sample_points(2, 16, 2), 200).unwrap();
    for c in &r.checkpoints {
        assert!(c.omega_error < 1e-6, "{c:?}");
        assert!(c.min_det > 0.0);
        assert!(c.field_residual < 1e-12);
    }
}

#[test]
fn cohomology_class_constant() {
    let (w, e) = t4_pair();
    assert!(cohomology_drift(&w, &CHECKPOINTS) < 1e-10);
    assert!(cohomology_drift(&e, &CHECKPOINTS) < 1e-10);
    assert!(cohomology_drift(&t2_family(EPS), &CHECKPOINTS) < 1e-10);
}

fn trig_term(n: usize) -> impl Strategy<Value = TrigTerm> {
    (proptest::collection::vec(-3i64..=3, n), -2.0f64..2.0, -2.0f64..2.0)
        .prop_map(|(k, c, s)| TrigTerm::new(k, c, s))
}

fn one_form(n: usize) -> impl Strategy<Value = OneFormField> {
    proptest::collection::vec(proptest::collection::vec(trig_term(n), 0..3), n).prop_map(move |cs| OneFormField {
        coeffs: cs
            .into_iter()
            .map(|terms| {
                let mut p = TrigPoly::zero(n);
                for t in terms {
                    p.push(t);
                }
                p
            })
            .collect(),
    })
}

proptest! {
    #[test]
    fn d_squared_vanishes_exactly(a in one_form(4)) {
        prop_assert!(exterior_derivative_field(&a).is_closed());
    }

    #[test]
    fn evaluation_is_periodic(t in trig_term(3), x in proptest::collection::vec(0.0f64..1.0, 3), j in 0usize..3) {
        let mut p = TrigPoly::zero(3);
        p.push(t);
        let mut y = x.clone();
        y[j] += 1.0;
        prop_assert!((p.eval(&x) - p.eval(&y)).abs() < 1e-9);
    }

    #[test]
    fn partial_matches_finite_difference(t in trig_term(3), x in proptest::collection::vec(0.0f64..1.0, 3), j in 0usize..3) {
        let mut p = TrigPoly::zero(3);
        p.push(t);
        prop_assert!((p.partial(j).eval(&x) - finite_difference(&p, &x, j)).abs() < 1e-5);
    }
}
