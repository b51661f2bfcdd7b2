mod common;

use parind::arith::padic::PrimeContext;
use parind::arith::rational::{int, pow_p, rat};
use parind::arith::{RationalMatrix, RootP};
use parind::characters::*;
use parind::error::{Error, DEFAULT_GUARD};
use parind::group::{BlockParabolic, Orientation};
use parind::hecke::*;
use parind::orbital::*;
use proptest::prelude::*;

fn ctx(p: u64) -> PrimeContext {
    PrimeContext::new(p, 1).unwrap()
}

fn chars() -> Vec<UnramifiedCharacter> {
    [(1, 1), (3, 5), (-2, 7), (5, -3)]
        .iter()
        .map(|&(a, b)| UnramifiedCharacter::new(vec![int(a), int(b)]).unwrap())
        .collect()
}

#[test]
fn trace_equals_pairing_on_gl2_basis() {
    let basis = level_one_basis(2, 2, DEFAULT_GUARD).unwrap();
    for o in [Orientation::Upper, Orientation::Lower] {
        let model = InducedModel::new(&BlockParabolic::borel(2, o), ctx(2), DEFAULT_GUARD).unwrap();
        for h in &basis {
            for chi in chars() {
                let c = induction_check(h, &chi, &model).unwrap();
                assert!(c.holds(), "{o}: {c:?}");
            }
        }
    }
}

#[test]
fn normalized_traces_agree_for_opposite_borels() {
    let basis = level_one_basis(2, 2, DEFAULT_GUARD).unwrap();
    let up = InducedModel::new(
        &BlockParabolic::borel(2, Orientation::Upper),
        ctx(2),
        DEFAULT_GUARD,
    )
    .unwrap();
    let lo = InducedModel::new(
        &BlockParabolic::borel(2, Orientation::Lower),
        ctx(2),
        DEFAULT_GUARD,
    )
    .unwrap();
    for h in &basis {
        for chi in chars() {
            let t = InducingCharacter::normalized(chi.clone());
            assert_eq!(
                trace_induced(h, &t, &up).unwrap(),
                trace_induced(h, &t, &lo).unwrap()
            );
        }
    }
}

// The spherical Hecke operator T_p acts on the unramified principal series
// with eigenvalue p^{1/2}(z₁ + z₂) on its one-dimensional K₀-fixed line.
#[test]
fn hecke_operator_trace_is_classical_eigenvalue() {
    for p in [2u64, 3] {
        let t = RationalMatrix::diagonal(&[int(p as i64), int(1)]);
        let h = double_coset_indicator(&t, ctx(p), DEFAULT_GUARD).unwrap();
        let model = InducedModel::new(
            &BlockParabolic::borel(2, Orientation::Upper),
            ctx(p),
            DEFAULT_GUARD,
        )
        .unwrap();
        for chi in chars() {
            let z = &chi.params()[0] + &chi.params()[1];
            let expected = RootP::new(int(0), z, p);
            let tau = InducingCharacter::normalized(chi);
            assert_eq!(trace_induced(&h, &tau, &model).unwrap(), expected);
        }
        let unit =
            HeckeMeasure::unit(parind::hecke::Ambient::general(2), ctx(p), DEFAULT_GUARD).unwrap();
        let tau = InducingCharacter::normalized(UnramifiedCharacter::trivial(2));
        assert_eq!(trace_induced(&unit, &tau, &model).unwrap(), RootP::one(p));
    }
}

#[test]
fn trace_equals_pairing_for_gl3_maximal_parabolic() {
    let c = ctx(2);
    let unit = HeckeMeasure::unit(Ambient::general(3), c, DEFAULT_GUARD).unwrap();
    let t = RationalMatrix::diagonal(&[int(2), int(1), int(1)]);
    let h = double_coset_indicator(&t, c, DEFAULT_GUARD).unwrap();
    for o in [Orientation::Upper, Orientation::Lower] {
        let p = BlockParabolic::new(vec![2, 1], o).unwrap();
        let model = InducedModel::new(&p, c, DEFAULT_GUARD).unwrap();
        let chi = UnramifiedCharacter::new(vec![int(3), rat(1, 2)]).unwrap();
        for m in [&unit, &h] {
            assert!(induction_check(m, &chi, &model).unwrap().holds());
        }
    }
}

#[test]
fn wrong_modulus_twist_breaks_identity() {
    let t = RationalMatrix::diagonal(&[int(2), int(1)]);
    let h = double_coset_indicator(&t, ctx(2), DEFAULT_GUARD).unwrap();
    let model = InducedModel::new(
        &BlockParabolic::borel(2, Orientation::Upper),
        ctx(2),
        DEFAULT_GUARD,
    )
    .unwrap();
    let chi = UnramifiedCharacter::new(vec![int(3), int(5)]).unwrap();
    let c = induction_check(&h, &chi, &model).unwrap();
    assert_ne!(c.trace, c.pairing_normalized);
}

#[test]
fn induction_rejects_measures_without_invariance() {
    let d = HeckeMeasure::delta(
        Ambient::general(2),
        ctx(2),
        &RationalMatrix::from_ints(&[&[1, 1], &[0, 1]]),
    )
    .unwrap();
    let model = InducedModel::new(
        &BlockParabolic::borel(2, Orientation::Upper),
        ctx(2),
        DEFAULT_GUARD,
    )
    .unwrap();
    let chi = UnramifiedCharacter::trivial(2);
    assert!(matches!(
        induction_check(&d, &chi, &model),
        Err(Error::Domain(_))
    ));
}

#[test]
fn descent_holds_on_basis_and_grid() {
    let basis = level_one_basis(2, 2, DEFAULT_GUARD).unwrap();
    let grid = regular_grid(2, -2, 2, &int(-1)).unwrap();
    for o in [Orientation::Upper, Orientation::Lower] {
        let b = BlockParabolic::borel(2, o);
        let mut wrong_power_failures = 0;
        for h in &basis {
            let r = res_normalized(h, &b, DEFAULT_GUARD).unwrap();
            for g in &grid {
                let s = descent_sides_with(h, &r, g, &b, 1, DEFAULT_GUARD).unwrap();
                assert_eq!(s.group_side, s.levi_side, "{o} {g}");
                let s2 = descent_sides_with(h, &r, g, &b, 2, DEFAULT_GUARD).unwrap();
                if s2.group_side != s2.levi_side {
                    wrong_power_failures += 1;
                }
            }
        }
        assert!(wrong_power_failures > 0);
    }
}

#[test]
fn orbital_integrals_are_weyl_symmetric() {
    let basis = level_one_basis(2, 2, DEFAULT_GUARD).unwrap();
    for g in regular_grid(2, -1, 2, &int(-1)).unwrap() {
        for h in &basis {
            assert_eq!(
                orbital_integral(h, &g, DEFAULT_GUARD).unwrap().value,
                orbital_integral(h, &g.swapped(), DEFAULT_GUARD)
                    .unwrap()
                    .value
            );
        }
    }
}

#[test]
fn orbital_integral_is_invariant_under_integral_conjugation() {
    let c = ctx(3);
    let t = RationalMatrix::diagonal(&[int(3), int(1)]);
    let h = double_coset_indicator(&t, c, DEFAULT_GUARD).unwrap();
    let k = RationalMatrix::from_ints(&[&[1, 4], &[2, 3]]);
    let moved = h.ad_pullback(&k).unwrap().into_biinvariant().unwrap();
    for g in regular_grid(3, 0, 1, &int(2)).unwrap() {
        assert_eq!(
            orbital_integral(&h, &g, DEFAULT_GUARD).unwrap(),
            orbital_integral(&moved, &g, DEFAULT_GUARD).unwrap()
        );
    }
}

#[test]
fn gl2_orbital_of_hecke_operator_matches_torus_side() {
    // For the spherical operator the descent identity can be read off the
    // constant term: O_γ(T_p) = |D(γ)|^{1/2} · r(T_p)(γ)
    for p in [2u64, 3] {
        let t = RationalMatrix::diagonal(&[int(p as i64), int(1)]);
        let h = double_coset_indicator(&t, ctx(p), DEFAULT_GUARD).unwrap();
        let g = RegularElement::new(vec![int(p as i64), int(1)]).unwrap();
        let o = orbital_integral(&h, &g, DEFAULT_GUARD).unwrap().value;
        let oracle = common::constant_term_oracle(p);
        let coeff = oracle.get(&(1, 0, 1, 1)).unwrap();
        let delta = RootP::half_power(p, 1);
        assert_eq!(o, &delta * coeff);
    }
}

#[test]
fn orbital_guard_is_respected() {
    let h = level_one_basis(2, 2, DEFAULT_GUARD).unwrap().pop().unwrap();
    let tiny = orbital_integral(&h, &RegularElement::new(vec![int(1), int(-1)]).unwrap(), 3);
    assert!(matches!(tiny, Err(Error::Resource { .. })));
}

#[test]
fn gl3_orbital_integrals_are_unsupported() {
    let u = HeckeMeasure::unit(Ambient::general(3), ctx(2), DEFAULT_GUARD).unwrap();
    let g = RegularElement::new(vec![int(1), int(2), int(4)]).unwrap();
    assert!(matches!(
        orbital_integral(&u, &g, DEFAULT_GUARD),
        Err(Error::Unsupported(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orbital_integral_is_linear(a in -5i64..=5, b in -5i64..=5, i in -1i64..=2, j in -1i64..=2) {
        let basis = level_one_basis(2, 2, DEFAULT_GUARD).unwrap();
        let (x, y) = (&basis[0], &basis[basis.len() - 1]);
        let combo = x.scale(&RootP::rational(int(a), 2)).try_add(&y.scale(&RootP::rational(int(b), 2))).unwrap();
        prop_assume!(i != j);
        let g = RegularElement::new(vec![pow_p(2, i), pow_p(2, j)]).unwrap();
        let lhs = orbital_integral(&combo, &g, DEFAULT_GUARD).unwrap().value;
        let rhs = &orbital_integral(x, &g, DEFAULT_GUARD).unwrap().value.scale(&int(a))
            + &orbital_integral(y, &g, DEFAULT_GUARD).unwrap().value.scale(&int(b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pairing_is_multiplicative_in_characters(a in 1i64..6, b in 1i64..6) {
        let c = ctx(2);
        let b2 = BlockParabolic::borel(2, Orientation::Upper);
        let t = RationalMatrix::diagonal(&[int(2), int(1)]);
        let d = HeckeMeasure::delta(Ambient::levi_of(&b2), c, &t).unwrap();
        let chi = UnramifiedCharacter::new(vec![int(a), int(b)]).unwrap();
        prop_assert_eq!(character_pairing(&chi, &d).unwrap(), RootP::rational(int(a), 2));
        prop_assert!(!character_pairing(&chi, &d).unwrap().is_zero());
    }
}
