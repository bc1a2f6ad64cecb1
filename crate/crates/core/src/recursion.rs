//! Recursion operator of a pair of 2-forms and the classification of pairs
//! by the square of that operator.

use num_traits::{One, Zero};

use crate::error::{Error, Operand, Result};
use crate::exterior::{form_matrix, pfaffian, rank_2form, wedge, KForm};
use crate::lie::Subspace;
use crate::matrix::Endo;
use crate::scalar::{Gaussian, Rational};

/// The unique `A` with `i_X ω = i_{AX} η`, i.e. `A = M_η⁻¹ M_ω`.
pub fn recursion_operator(omega: &KForm, eta: &KForm) -> Result<Endo> {
    check_pair(omega, eta)?;
    let mw = form_matrix(omega)?;
    let me = form_matrix(eta)?;
    for (m, who) in [(&mw, Operand::First), (&me, Operand::Second)] {
        if m.rows() % 2 == 1 || pfaffian(m)?.is_zero() {
            return Err(Error::DegenerateForm(who));
        }
    }
    let inv = me.inverse().map_err(|_| Error::DegenerateForm(Operand::Second))?;
    Endo::new(&inv * &*mw)
}

fn check_pair(omega: &KForm, eta: &KForm) -> Result<()> {
    for f in [omega, eta] {
        if f.degree() != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                found: f.degree(),
            });
        }
    }
    if omega.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: omega.dim(),
            found: eta.dim(),
        });
    }
    Ok(())
}

/// `η(AX, Y) = η(X, AY)`, i.e. `Aᵀ M_η = M_η A`.
pub fn eta_symmetry_check(eta: &KForm, a: &Endo) -> Result<bool> {
    let me = form_matrix(eta)?;
    if me.rows() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: me.rows(),
            found: a.dim(),
        });
    }
    Ok(&a.transpose() * &*me == &*me * &**a)
}

/// Data of a pair whose operator squares to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticPairData {
    pub operator: Endo,
    /// `D₊ = ker(ω − η)`, the +1 eigenspace.
    pub plus_eigenspace: Subspace,
    /// `D₋ = ker(ω + η)`, the −1 eigenspace.
    pub minus_eigenspace: Subspace,
    /// `Ω⁺ = ω + η`.
    pub omega_plus: KForm,
    /// `Ω⁻ = ω − η`.
    pub omega_minus: KForm,
    pub rank_plus: usize,
    pub rank_minus: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PairClassification {
    TrivialIdentity,
    TrivialNegation,
    SymplecticPair(SymplecticPairData),
    HolomorphicSymplectic { operator: Endo },
    Generic { operator: Endo, minimal_polynomial_degree: usize },
}

impl PairClassification {
    pub fn tag(&self) -> &'static str {
        match self {
            PairClassification::TrivialIdentity => "TrivialIdentity",
            PairClassification::TrivialNegation => "TrivialNegation",
            PairClassification::SymplecticPair(_) => "SymplecticPair",
            PairClassification::HolomorphicSymplectic { .. } => "HolomorphicSymplectic",
            PairClassification::Generic { .. } => "Generic",
        }
    }
}

/// Square class of an endomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SquareClass {
    Identity,
    MinusIdentity,
    Other,
}

pub fn square_class(a: &Endo) -> SquareClass {
    let sq = a.square();
    if sq.is_identity() {
        SquareClass::Identity
    } else if sq.is_neg_identity() {
        SquareClass::MinusIdentity
    } else {
        SquareClass::Other
    }
}

/// Classifies `(ω, η)` by its recursion operator. Trivial cases `A = ±Id`
/// are detected before squaring.
pub fn classify_pair(omega: &KForm, eta: &KForm) -> Result<PairClassification> {
    let a = recursion_operator(omega, eta)?;
    if a.is_identity() {
        return Ok(PairClassification::TrivialIdentity);
    }
    if a.is_neg_identity() {
        return Ok(PairClassification::TrivialNegation);
    }
    match square_class(&a) {
        SquareClass::Identity => symplectic_pair_data(omega, eta, a).map(PairClassification::SymplecticPair),
        SquareClass::MinusIdentity => Ok(PairClassification::HolomorphicSymplectic { operator: a }),
        SquareClass::Other => {
            let d = a.minimal_polynomial_degree();
            Ok(PairClassification::Generic {
                operator: a,
                minimal_polynomial_degree: d,
            })
        }
    }
}

fn symplectic_pair_data(omega: &KForm, eta: &KForm, a: Endo) -> Result<SymplecticPairData> {
    let n = a.dim();
    let omega_plus = omega + eta;
    let omega_minus = omega - eta;
    let plus = Subspace::new(n, form_matrix(&omega_minus)?.nullspace())?;
    let minus = Subspace::new(n, form_matrix(&omega_plus)?.nullspace())?;
    let e_plus = Subspace::new(n, a.eigenspace(&Rational::one()))?;
    let e_minus = Subspace::new(n, a.eigenspace(&-Rational::one()))?;
    if !plus.same_span(&e_plus) || !minus.same_span(&e_minus) || plus.dim() + minus.dim() != n {
        return Err(Error::Consistency("kernels of ω∓η differ from the ±1 eigenspaces".into()));
    }
    Ok(SymplecticPairData {
        rank_plus: rank_2form(&omega_plus)?,
        rank_minus: rank_2form(&omega_minus)?,
        operator: a,
        plus_eigenspace: plus,
        minus_eigenspace: minus,
        omega_plus,
        omega_minus,
    })
}

/// For every frame vector `u`, `X = u + i·Au` lies in the kernel of
/// `Ω = ω + iη` (exact Gaussian-rational arithmetic).
pub fn complex_kernel_check(omega: &KForm, eta: &KForm, a: &Endo) -> Result<bool> {
    check_pair(omega, eta)?;
    if !a.square().is_neg_identity() {
        return Err(Error::Precondition("A² = −Id required".into()));
    }
    let mw = form_matrix(omega)?;
    let me = form_matrix(eta)?;
    let n = a.dim();
    if mw.rows() != n {
        return Err(Error::DimensionMismatch {
            expected: mw.rows(),
            found: n,
        });
    }
    let big_omega: Vec<Gaussian> = (0..n * n)
        .map(|idx| Gaussian::new(mw[(idx / n, idx % n)].clone(), me[(idx / n, idx % n)].clone()))
        .collect();
    for k in 0..n {
        let au = a.col(k);
        let x: Vec<Gaussian> = (0..n)
            .map(|i| {
                let re = if i == k { Rational::one() } else { Rational::zero() };
                Gaussian::new(re, au[i].clone())
            })
            .collect();
        // (i_X Ω)_j = Σ_i X_i Ω_ij
        for j in 0..n {
            let c = (0..n).fold(Gaussian::zero(), |acc, i| acc + &x[i] * &big_omega[i * n + j]);
            if !c.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(ω∧ω = η∧η, ω∧η = 0)` in dimension 4.
pub fn couple_conditions(omega: &KForm, eta: &KForm) -> Result<(bool, bool)> {
    check_pair(omega, eta)?;
    if omega.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: omega.dim(),
        });
    }
    let ww = wedge(omega, omega)?;
    let ee = wedge(eta, eta)?;
    let we = wedge(omega, eta)?;
    Ok((ww == ee, we.is_zero()))
}

/// Restricts a pair of 2-forms to `basis` and recomputes its operator class;
/// used for the leaves of a holomorphic symplectic pair.
pub fn classify_restricted(omega: &KForm, eta: &KForm, basis: &[Vec<Rational>]) -> Result<PairClassification> {
    classify_pair(&omega.restrict(basis)?, &eta.restrict(basis)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn pair_example() -> (KForm, KForm) {
        let plus = KForm::basis(4, &[1, 2]).unwrap();
        let minus = KForm::basis(4, &[3, 4]).unwrap();
        let h = frac(1, 2);
        ((&plus + &minus).scale(&h), (&plus - &minus).scale(&h))
    }

    fn flat_holomorphic() -> (KForm, KForm) {
        (
            KForm::two_form_i64(4, &[(1, 2, 1), (3, 4, 1)]).unwrap(),
            KForm::two_form_i64(4, &[(1, 3, 1), (4, 2, 1)]).unwrap(),
        )
    }

    #[test]
    fn identity_when_equal() {
        let w = KForm::two_form_i64(4, &[(1, 2, 1), (3, 4, 1)]).unwrap();
        assert!(recursion_operator(&w, &w).unwrap().is_identity());
        assert_eq!(classify_pair(&w, &w).unwrap(), PairClassification::TrivialIdentity);
        assert_eq!(classify_pair(&w, &-&w).unwrap(), PairClassification::TrivialNegation);
    }

    #[test]
    fn scaling_gives_scalar_operator() {
        let eta = KForm::basis(2, &[1, 2]).unwrap();
        let omega = eta.scale(&int(3));
        let a = recursion_operator(&omega, &eta).unwrap();
        assert_eq!(*a, Matrix::identity(2).scale(&int(3)));
        // Defining equation i_X ω = i_{AX} η on the frame.
        let mw = form_matrix(&omega).unwrap();
        let me = form_matrix(&eta).unwrap();
        for k in 0..2 {
            let x = Matrix::identity(2).col(k);
            let lhs = crate::exterior::contract_covector(&x, &mw);
            let rhs = crate::exterior::contract_covector(&a.apply(&x), &me);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn symplectic_pair_example() {
        let (w, e) = pair_example();
        let a = recursion_operator(&w, &e).unwrap();
        assert_eq!(*a, Matrix::diagonal(&[int(1), int(1), int(-1), int(-1)]));
        let PairClassification::SymplecticPair(data) = classify_pair(&w, &e).unwrap() else {
            panic!("expected symplectic pair");
        };
        let e4 = |i| (1..=4).map(|k| int(i64::from(k == i))).collect::<Vec<_>>();
        assert_eq!(data.plus_eigenspace.basis(), &[e4(1), e4(2)]);
        assert_eq!(data.minus_eigenspace.basis(), &[e4(3), e4(4)]);
        assert_eq!((data.rank_plus, data.rank_minus), (2, 2));
        assert!(eta_symmetry_check(&e, &a).unwrap());
    }

    #[test]
    fn holomorphic_example() {
        let (w, e) = flat_holomorphic();
        let c = classify_pair(&w, &e).unwrap();
        let PairClassification::HolomorphicSymplectic { operator } = &c else {
            panic!("expected holomorphic symplectic, got {c:?}");
        };
        assert!(operator.square().is_neg_identity());
        assert!(complex_kernel_check(&w, &e, operator).unwrap());
        assert_eq!(couple_conditions(&w, &e).unwrap(), (true, true));
        // Sign-flipped operator fails.
        let bad = Endo::new(-&**operator).unwrap();
        assert!(!complex_kernel_check(&w, &e, &bad).unwrap());
        let id = Endo::identity(4);
        assert!(matches!(complex_kernel_check(&w, &e, &id), Err(Error::Precondition(_))));
    }

    #[test]
    fn generic_example() {
        let w = KForm::two_form_i64(4, &[(1, 2, 1), (3, 4, 1)]).unwrap();
        let e = KForm::two_form_i64(4, &[(1, 2, 1), (3, 4, 2)]).unwrap();
        match classify_pair(&w, &e).unwrap() {
            PairClassification::Generic {
                operator,
                minimal_polynomial_degree,
            } => {
                assert_eq!(*operator, Matrix::diagonal(&[int(1), int(1), frac(1, 2), frac(1, 2)]));
                assert_eq!(minimal_polynomial_degree, 2);
            }
            other => panic!("expected generic, got {other:?}"),
        }
        // The swapped pair gives diag(1,1,2,2).
        let a = recursion_operator(&e, &w).unwrap();
        assert_eq!(*a, Matrix::diagonal(&[int(1), int(1), int(2), int(2)]));
    }

    #[test]
    fn couple_conditions_examples() {
        let w = KForm::two_form_i64(4, &[(1, 2, 1), (3, 4, 1)]).unwrap();
        assert_eq!(couple_conditions(&w, &w).unwrap(), (true, false));
        // Symplectic pair: ω² = ½ Ω⁺∧Ω⁻ = −η², so the first condition fails.
        let (w, e) = pair_example();
        assert_eq!(couple_conditions(&w, &e).unwrap(), (false, true));
        let w6 = KForm::basis(6, &[1, 2]).unwrap();
        assert!(couple_conditions(&w6, &w6).is_err());
    }

    #[test]
    fn degenerate_inputs() {
        let w = KForm::two_form_i64(4, &[(1, 2, 1), (3, 4, 1)]).unwrap();
        let d = KForm::basis(4, &[1, 2]).unwrap();
        assert_eq!(recursion_operator(&d, &w), Err(Error::DegenerateForm(Operand::First)));
        assert_eq!(recursion_operator(&w, &d), Err(Error::DegenerateForm(Operand::Second)));
        let w2 = KForm::basis(2, &[1, 2]).unwrap();
        assert!(matches!(recursion_operator(&w, &w2), Err(Error::DimensionMismatch { .. })));
        let odd = KForm::basis(3, &[1, 2]).unwrap();
        assert_eq!(recursion_operator(&odd, &odd), Err(Error::DegenerateForm(Operand::First)));
    }

    fn arb_nondegenerate(n: usize) -> impl Strategy<Value = KForm> {
        proptest::collection::vec((-3i64..=3, 1i64..=2), n * (n - 1) / 2)
            .prop_map(move |cs| {
                let mut f = KForm::zero(n, 2);
                let mut it = cs.into_iter();
                for i in 1..=n {
                    for j in i + 1..=n {
                        let (p, q) = it.next().unwrap();
                        f.add_term(&[i, j], frac(p, q)).unwrap();
                    }
                }
                f
            })
            .prop_filter("non-degenerate", |f| crate::exterior::is_nondegenerate(f).unwrap())
    }

    // Oracle: η(AX, Y) − η(X, AY) evaluated on every frame pair.
    fn eta_symmetric_by_frame(eta: &KForm, a: &Endo) -> bool {
        let n = a.dim();
        let frame = Matrix::identity(n);
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = frame.col(i);
                let y = frame.col(j);
                eta.evaluate(&[a.apply(&x), y.clone()]).unwrap() == eta.evaluate(&[x, a.apply(&y)]).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn operator_round_trip_and_symmetry(w in arb_nondegenerate(6), e in arb_nondegenerate(6)) {
            let a = recursion_operator(&w, &e).unwrap();
            let b = recursion_operator(&e, &w).unwrap();
            prop_assert!(a.compose(&b).is_identity());
            prop_assert!(eta_symmetry_check(&e, &a).unwrap());
            prop_assert!(eta_symmetric_by_frame(&e, &a));
        }
    }
}
