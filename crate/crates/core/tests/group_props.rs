use num_traits::{One, Zero};
use parind::arith::finite_field::{enumerate_gln_fq, FFMatrix};
use parind::arith::padic::gln_zp_membership;
use parind::arith::{Rational, RationalMatrix};
use parind::error::DEFAULT_GUARD;
use parind::group::*;
use proptest::prelude::*;
use std::collections::{BTreeMap, HashSet};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn invertible(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(small_rational(), n * n)
        .prop_map(move |v| RationalMatrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

fn levi_element(p: &BlockParabolic) -> impl Strategy<Value = RationalMatrix> {
    let blocks: Vec<_> = p.blocks().iter().map(|&b| invertible(b)).collect();
    let n = p.n();
    blocks.prop_map(move |bs| {
        let mut m = RationalMatrix::zero(n);
        let mut off = 0;
        for b in bs {
            for i in 0..b.n() {
                for j in 0..b.n() {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.n();
        }
        m
    })
}

fn diagonal(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(nonzero_rational(), n).prop_map(|d| RationalMatrix::diagonal(&d))
}

fn parabolic() -> impl Strategy<Value = BlockParabolic> {
    (2usize..=4, any::<prop::sample::Index>(), any::<bool>()).prop_map(|(n, idx, up)| {
        let comps = BlockParabolic::compositions(n);
        let o = if up {
            Orientation::Upper
        } else {
            Orientation::Lower
        };
        BlockParabolic::new(idx.get(&comps).clone(), o).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn discriminant_square_identity(m in parabolic().prop_flat_map(|p| (Just(p.clone()), levi_element(&p)))) {
        let (p, g) = m;
        prop_assert!(discriminant_square_check(&p, &g).unwrap());
    }

    #[test]
    fn chevalley_map_is_conjugation_invariant(g in invertible(3), x in invertible(3)) {
        let conj = g.conjugate_by(&x).unwrap();
        prop_assert_eq!(chevalley_map(&conj).unwrap(), chevalley_map(&g).unwrap());
    }

    #[test]
    fn discriminant_transitivity(t in diagonal(4), idx in any::<prop::sample::Index>()) {
        let comps = BlockParabolic::compositions(4);
        let p = BlockParabolic::new(idx.get(&comps).clone(), Orientation::Upper).unwrap();
        let torus = SubgroupSpec::Torus(4);
        let levi = SubgroupSpec::Levi(p);
        let whole = discriminant_delta(&torus, &t).unwrap();
        let inner = relative_discriminant(&torus, Some(&levi), &t).unwrap();
        let outer = discriminant_delta(&levi, &t).unwrap();
        prop_assert_eq!(whole, inner * outer);
    }

    #[test]
    fn modulus_of_opposite_is_inverse(m in parabolic().prop_flat_map(|p| (Just(p.clone()), levi_element(&p)))) {
        let (p, g) = m;
        let up = modulus_lambda(&p, &g).unwrap();
        let down = modulus_lambda(&p.opposite(), &g).unwrap();
        prop_assert_eq!(&up * &down, Rational::one());
        prop_assert_eq!(modulus_lambda_blocks(&p, &g), up);
    }

    #[test]
    fn levi_and_parabolic_regularity_agree(m in parabolic().prop_flat_map(|p| (Just(p.clone()), levi_element(&p)))) {
        let (p, g) = m;
        let a = is_regular(&SubgroupSpec::Levi(p.clone()), &g).unwrap();
        let b = is_regular(&SubgroupSpec::Parabolic(p), &g).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn iwasawa_postconditions(g in invertible(3), up in any::<bool>(), prime in prop::sample::select(vec![2u64, 3, 5])) {
        let o = if up { Orientation::Upper } else { Orientation::Lower };
        for blocks in BlockParabolic::compositions(3) {
            let par = BlockParabolic::new(blocks, o).unwrap();
            let (q, k) = iwasawa_decompose(&g, &par, prime).unwrap();
            prop_assert_eq!(&q * &k, g.clone());
            prop_assert!(par.contains(&q));
            prop_assert!(gln_zp_membership(&k, prime));
        }
    }
}

#[test]
fn modulus_on_unipotent_radical_is_one() {
    let p = BlockParabolic::new(vec![1, 2], Orientation::Upper).unwrap();
    let u = RationalMatrix::from_ints(&[&[1, 4, -2], &[0, 1, 0], &[0, 0, 1]]);
    assert!(p.unipotent_contains(&u));
    assert_eq!(modulus_lambda(&p, &u).unwrap(), Rational::one());
}

#[test]
fn gl2_borel_discriminant_square() {
    let b = BlockParabolic::borel(2, Orientation::Upper);
    let g = RationalMatrix::from_ints(&[&[5, 0], &[0, -3]]);
    let r = Rational::new(5.into(), (-3).into());
    let lhs = (&r - Rational::one()) * (&r - Rational::one());
    let rhs = -(r.recip() - Rational::one()) * (&r - Rational::one()) * &r;
    assert_eq!(lhs, rhs);
    assert!(discriminant_square_check(&b, &g).unwrap());
}

// Unipotent conjugacy classes of GL_3(F_2) by direct orbit enumeration,
// compared with the rank formula for Jordan types.
#[test]
fn jordan_types_match_conjugacy_orbits() {
    let group = enumerate_gln_fq(3, 2, DEFAULT_GUARD).unwrap();
    let inverses: Vec<FFMatrix> = group.iter().map(|g| g.inverse().unwrap()).collect();
    let unipotents: Vec<&FFMatrix> = group.iter().filter(|g| g.is_unipotent()).collect();
    let mut seen: HashSet<FFMatrix> = HashSet::new();
    let mut orbit_sizes: BTreeMap<Partition, usize> = BTreeMap::new();
    for u in &unipotents {
        if seen.contains(*u) {
            continue;
        }
        let orbit: HashSet<FFMatrix> = group
            .iter()
            .zip(&inverses)
            .map(|(g, gi)| u.conjugate(g, gi))
            .collect();
        let types: HashSet<Partition> = orbit.iter().map(|x| jordan_type(x).unwrap()).collect();
        assert_eq!(types.len(), 1, "an orbit mixes Jordan types");
        let t = types.into_iter().next().unwrap();
        assert!(
            orbit_sizes.insert(t, orbit.len()).is_none(),
            "two orbits share a Jordan type"
        );
        seen.extend(orbit);
    }
    assert_eq!(seen.len(), unipotents.len());
    let sizes: Vec<(String, usize)> = orbit_sizes
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect();
    assert_eq!(
        sizes,
        vec![
            ("(1,1,1)".into(), 1),
            ("(2,1)".into(), 21),
            ("(3)".into(), 42)
        ]
    );
}
