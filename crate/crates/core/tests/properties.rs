//! Randomized structural invariants (proptest, exact arithmetic throughout).

use num::{BigRational, Zero};
use proptest::prelude::*;
use ulat_core::embed::complex_structure;
use ulat_core::field::QuadraticField;
use ulat_core::hermlat::HermitianLattice;
use ulat_core::linalg::{f_identity, f_mul, f_mul_vec};
use ulat_core::qseries::{delta, eisenstein, serre_derivative};
use ulat_core::reflections::{reflection_matrix, ReflectionSpec};
use ulat_core::taylorforms::{jacobian, TaylorForm};
use ulat_core::{FourierSeries, RationalTaylorForm, UnitElement};

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// A random diagonal Hermitian lattice of signature (rank-1, 1).
fn lattice_strategy() -> impl Strategy<Value = HermitianLattice> {
    (
        prop::sample::select(vec![-1i64, -2, -3, -7]),
        prop::collection::vec(1i64..=3, 1..=2),
        1i64..=3,
    )
        .prop_map(|(d, pos, neg)| {
            let k = QuadraticField::new(d).unwrap();
            let rank = pos.len() + 1;
            let mut gram = vec![vec![k.zero(); rank]; rank];
            for (i, p) in pos.iter().enumerate() {
                gram[i][i] = k.elem_i64(*p, 0);
            }
            gram[rank - 1][rank - 1] = k.elem_i64(-neg, 0);
            HermitianLattice::new(k, gram, None).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// J^2 = -Id, J is an isometry with det 1 compatible with zeta, and the
    /// Hermitian form is reconstructed from (trace form, J).
    #[test]
    fn complex_structure_invariants(l in lattice_strategy()) {
        let cs = complex_structure(&l);
        prop_assert!(cs.j_squared_is_minus_identity());
        prop_assert!(cs.is_isometry_of(&l.trace_form().gram_z));
        prop_assert!(cs.has_unit_determinant());
        prop_assert!(cs.zeta_compatible(&l));
        prop_assert!(cs.reconstructs_hermitian_form(&l));
        let split = cs.hol_split();
        prop_assert!(split.is_complementary());
        prop_assert!(split.j_acts_as_i(&cs));
    }

    /// sigma_{r,alpha} sigma_{r,beta} = sigma_{r,alpha beta}, and every
    /// reflection matrix preserves the Hermitian form.
    #[test]
    fn sigma_composition_and_isometry(
        l in lattice_strategy(),
        coords in prop::collection::vec((-2i64..=2, -2i64..=2), 3),
        ai in 0usize..6,
        bi in 0usize..6,
    ) {
        let k = l.field();
        let r: Vec<_> = (0..l.rank())
            .map(|i| {
                let (a, b) = coords[i % coords.len()];
                &k.elem_i64(a, 0) + &(&k.elem_i64(b, 0) * &k.omega_z())
            })
            .collect();
        prop_assume!(!l.herm(&r, &r).is_zero());
        let units = k.units();
        let alpha = units[ai % units.len()].clone();
        let beta = units[bi % units.len()].clone();
        prop_assume!(alpha.order() > 1 && beta.order() > 1);
        let ga = reflection_matrix(&l, &ReflectionSpec { r: r.clone(), alpha: alpha.clone() }).unwrap();
        let gb = reflection_matrix(&l, &ReflectionSpec { r: r.clone(), alpha: beta.clone() }).unwrap();
        let prod = f_mul(&ga, &gb);
        let ab = UnitElement::new(alpha.value() * beta.value()).unwrap();
        if ab.order() == 1 {
            prop_assert_eq!(prod, f_identity(k, l.rank()));
        } else {
            let gab = reflection_matrix(&l, &ReflectionSpec { r: r.clone(), alpha: ab }).unwrap();
            prop_assert_eq!(prod, gab);
        }
        // conj(G)^T gram G = gram, checked as <G e_i, G e_j> = <e_i, e_j>
        for i in 0..l.rank() {
            for j in 0..l.rank() {
                let ei: Vec<_> = (0..l.rank())
                    .map(|t| if t == i { k.one() } else { k.zero() })
                    .collect();
                let ej: Vec<_> = (0..l.rank())
                    .map(|t| if t == j { k.one() } else { k.zero() })
                    .collect();
                prop_assert_eq!(
                    l.herm(&f_mul_vec(&ga, &ei), &f_mul_vec(&ga, &ej)),
                    l.herm(&ei, &ej)
                );
            }
        }
    }

    /// E4^3 - E6^2 = 1728 Delta at arbitrary truncation.
    #[test]
    fn weight_twelve_identity(order in 5u32..40) {
        let lhs = eisenstein(4, order).pow(3).sub(&eisenstein(6, order).pow(2));
        let rhs = delta(order).scale_rational(&rat_i(1728));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    /// The Serre derivative is a weight-graded derivation.
    #[test]
    fn serre_leibniz(a in 0u32..=2, b in 0u32..=2, c in 0u32..=2, d in 0u32..=2, order in 8u32..24) {
        let f = eisenstein(4, order).pow(a).mul(&eisenstein(6, order).pow(b));
        let g = eisenstein(4, order).pow(c).mul(&eisenstein(6, order).pow(d));
        let wf = rat_i((4 * a + 6 * b) as i64);
        let wg = rat_i((4 * c + 6 * d) as i64);
        let lhs = serre_derivative(&f.mul(&g), &(&wf + &wg));
        let rhs = serre_derivative(&f, &wf).mul(&g).add(&f.mul(&serre_derivative(&g, &wg)));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    /// The modular Jacobian is antisymmetric in its inputs and scales
    /// linearly in each argument.
    #[test]
    fn jacobian_antisymmetry_and_scaling(
        seeds in prop::collection::vec((0u32..=3, 0u32..=2, -5i64..=5), 3),
        scale_num in 1i64..=7,
    ) {
        let order = 10u32;
        let degree = 5u32;
        let forms: Vec<RationalTaylorForm> = seeds
            .iter()
            .enumerate()
            .map(|(i, (alpha, base, sc))| {
                let series = match base {
                    0 => eisenstein(4, order),
                    1 => eisenstein(6, order),
                    _ => delta(order),
                }
                .scale_rational(&rat_i(if *sc == 0 { 1 } else { *sc }));
                TaylorForm::new(
                    rat_i((i + 1) as i64),
                    1,
                    degree,
                    vec![(vec![*alpha], series)],
                )
            })
            .collect();
        let j = jacobian(&forms).unwrap();
        // antisymmetry: swapping the first two inputs negates the value
        let swapped = vec![forms[1].clone(), forms[0].clone(), forms[2].clone()];
        let mut js = jacobian(&swapped).unwrap();
        // restore the weight bookkeeping order for comparison
        js.input_weights.swap(0, 1);
        prop_assert_eq!(&js.value, &j.value.neg());
        // scaling the first input by a nonzero rational scales the Jacobian
        let cform = TaylorForm::constant_in_z(
            FourierSeries::constant(rat_i(scale_num), rat_i(order as i64)),
            BigRational::zero(),
            1,
            degree,
        );
        let scaled = vec![cform.mul(&forms[0]).unwrap(), forms[1].clone(), forms[2].clone()];
        let jc = jacobian(&scaled).unwrap();
        prop_assert_eq!(jc.value, cform.mul(&j.value).unwrap());
    }
}
