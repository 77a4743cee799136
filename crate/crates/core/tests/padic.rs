use ncc_core::group::is_isomorphic;
use ncc_core::invariants::{nac, ncc};
use ncc_core::padic::{
    build_quotient, check_graded_structure, check_sl_pgl_iso, index_p_subgroups, line_subgroups,
    QuaternionIntegral, QuotientGroupSpec, UnramifiedQuadraticInt,
};
use ncc_core::pgroup::elementary_abelian;
use ncc_core::{Error, Limits};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn lim() -> Limits {
    Limits::default()
}

fn spec(s: &str) -> QuotientGroupSpec {
    s.parse().unwrap()
}

fn w(p: u64, m: u32, a0: u64, a1: u64) -> UnramifiedQuadraticInt {
    UnramifiedQuadraticInt::new(p, m, a0, a1).unwrap()
}

#[test]
fn frobenius_is_the_p_power_map_mod_p() {
    for p in [2, 3, 5, 7, 11] {
        for a0 in 0..p {
            for a1 in 0..p {
                let x = w(p, 1, a0, a1);
                let mut xp = w(p, 1, 1, 0);
                for _ in 0..p {
                    xp = xp.mul(&x).unwrap();
                }
                assert_eq!(x.frobenius(), xp, "p={p}, x={a0}+{a1}ω");
                assert_eq!(x.frobenius().frobenius(), x);
            }
        }
    }
}

#[test]
fn frobenius_is_a_ring_automorphism() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for p in [2, 3, 5] {
        let q = p * p * p;
        for _ in 0..500 {
            let x = w(p, 3, rng.random_range(0..q), rng.random_range(0..q));
            let y = w(p, 3, rng.random_range(0..q), rng.random_range(0..q));
            let s = |z: UnramifiedQuadraticInt| z.frobenius();
            assert_eq!(s(x.mul(&y).unwrap()), s(x).mul(&s(y)).unwrap());
            assert_eq!(s(x.add(&y).unwrap()), s(x).add(&s(y)).unwrap());
            assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            if x.is_unit() {
                assert_eq!(x.mul(&x.inverse().unwrap()).unwrap(), w(p, 3, 1, 0));
            }
        }
    }
}

#[test]
fn mismatched_precision_is_rejected() {
    let x = QuaternionIntegral::one(3, 3).unwrap();
    let y = QuaternionIntegral::one(3, 4).unwrap();
    assert!(matches!(x.mul(&y), Err(Error::Precision(_))));
    assert!(w(3, 2, 1, 1).mul(&w(3, 3, 1, 1)).is_err());
}

#[test]
fn quaternion_examples() {
    for p in [2, 3, 5, 7] {
        let pi = QuaternionIntegral::pi(p, 4).unwrap();
        assert_eq!(pi.mul(&pi).unwrap(), QuaternionIntegral::from_int(p, 4, p).unwrap());
        let omega = QuaternionIntegral::from_coords(p, 4, [0, 1, 0, 0]).unwrap();
        let sigma_omega = w(p, 2, 0, 1).frobenius();
        assert_eq!(
            omega.mul(&pi).unwrap(),
            QuaternionIntegral::from_coords(p, 4, [0, 0, sigma_omega.a0, sigma_omega.a1]).unwrap()
        );
        let x = QuaternionIntegral::from_coords(p, 4, [2, 1, 1, 1]).unwrap();
        let one = QuaternionIntegral::one(p, 4).unwrap();
        assert_eq!(one.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&one).unwrap(), x);
    }
    // with ω² = c and σ(ω) = −ω the product ωπ is (0, −ω)
    let omega = QuaternionIntegral::from_coords(5, 4, [0, 1, 0, 0]).unwrap();
    let pi = QuaternionIntegral::pi(5, 4).unwrap();
    assert_eq!(omega.mul(&pi).unwrap().coords(), [0, 0, 0, 24]);
}

#[test]
fn norm_and_trace_examples() {
    for p in [3, 5, 7] {
        let k = 5;
        let q = p * p * p;
        let pi = QuaternionIntegral::pi(p, k).unwrap();
        assert_eq!(pi.reduced_norm(), q - p);
        for alpha in [1, 2, p + 1, 7] {
            let x = QuaternionIntegral::from_int(p, k, alpha).unwrap();
            assert_eq!(x.reduced_norm(), alpha * alpha % q);
        }
        let one = QuaternionIntegral::one(p, k).unwrap();
        assert_eq!(one.reduced_norm(), 1);
        assert_eq!(one.reduced_trace(), 2);
    }
}

#[test]
fn valuation_examples() {
    for p in [2, 3, 5] {
        assert_eq!(QuaternionIntegral::one(p, 6).unwrap().valuation(), Some(0));
        assert_eq!(QuaternionIntegral::pi(p, 6).unwrap().valuation(), Some(1));
        assert_eq!(QuaternionIntegral::from_int(p, 6, p).unwrap().valuation(), Some(2));
        assert_eq!(QuaternionIntegral::from_int(p, 6, 0).unwrap().valuation(), None);
        assert_eq!(QuaternionIntegral::from_int(p, 2, p).unwrap().valuation(), None);
    }
}

fn random_element(rng: &mut impl Rng, p: u64, k: u32) -> QuaternionIntegral {
    let qa = p.pow(k.div_ceil(2));
    let qb = p.pow(k / 2);
    QuaternionIntegral::from_coords(
        p,
        k,
        [
            rng.random_range(0..qa),
            rng.random_range(0..qa),
            rng.random_range(0..qb),
            rng.random_range(0..qb),
        ],
    )
    .unwrap()
}

#[test]
fn norm_and_valuation_are_multiplicative() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for p in [2, 3, 5, 7] {
        for k in 1..=6 {
            for _ in 0..10_000 {
                let x = random_element(&mut rng, p, k);
                let y = random_element(&mut rng, p, k);
                let xy = x.mul(&y).unwrap();
                let q = p.pow(k.div_ceil(2));
                assert_eq!(xy.reduced_norm(), x.reduced_norm() * y.reduced_norm() % q);
                match (x.valuation(), y.valuation()) {
                    (Some(a), Some(b)) if a + b < k => assert_eq!(xy.valuation(), Some(a + b)),
                    _ => assert_eq!(xy.valuation(), None),
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn multiplication_is_associative(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        k in 1u32..7,
        seed in any::<u64>(),
    ) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&mut rng, p, k);
        let y = random_element(&mut rng, p, k);
        let z = random_element(&mut rng, p, k);
        prop_assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn norm_is_multiplicative(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        k in 1u32..7,
        seed in any::<u64>(),
    ) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&mut rng, p, k);
        let y = random_element(&mut rng, p, k);
        let q = p.pow(k.div_ceil(2));
        prop_assert_eq!(x.mul(&y).unwrap().reduced_norm(), x.reduced_norm() * y.reduced_norm() % q);
    }
}

#[test]
fn spec_strings_round_trip() {
    for s in ["quat:p=5,k=3,variant=PGL1,i=1", "quat:p=3,k=4,variant=SL1,i=2", "quat:p=2,k=3,variant=GL,i=0"] {
        assert_eq!(spec(s).to_string(), s);
    }
    assert!("quat:p=4,k=3,variant=GL,i=0".parse::<QuotientGroupSpec>().is_err());
    assert!("quat:p=5,k=3,variant=PGL1,i=0".parse::<QuotientGroupSpec>().is_err());
    assert!("quat:p=5,k=3,variant=XL,i=0".parse::<QuotientGroupSpec>().is_err());
    assert!(matches!(
        "quat:p=2,k=3,variant=SL1,i=1".parse::<QuotientGroupSpec>(),
        Err(Error::Unsupported(_))
    ));
    assert!(matches!(
        "quat:p=2,k=3,variant=PGL,i=0".parse::<QuotientGroupSpec>(),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn quotient_orders() {
    assert_eq!(build_quotient(&spec("quat:p=5,k=1,variant=GL,i=0"), &lim()).unwrap().group.order(), 24);
    assert_eq!(build_quotient(&spec("quat:p=5,k=3,variant=GL1,i=1"), &lim()).unwrap().group.order(), 625);
    assert_eq!(build_quotient(&spec("quat:p=5,k=3,variant=PGL1,i=1"), &lim()).unwrap().group.order(), 125);
    // brute-force orders of the full quotients
    for (s, n) in [
        ("quat:p=3,k=2,variant=GL,i=0", 72),
        ("quat:p=3,k=3,variant=GL,i=0", 648),
        ("quat:p=5,k=2,variant=GL,i=0", 600),
        ("quat:p=5,k=3,variant=GL,i=0", 15000),
        ("quat:p=3,k=2,variant=PGL,i=0", 36),
        ("quat:p=3,k=3,variant=PGL,i=0", 108),
        ("quat:p=5,k=2,variant=PGL,i=0", 150),
        ("quat:p=2,k=1,variant=GL,i=0", 3),
        ("quat:p=2,k=4,variant=GL1,i=1", 64),
    ] {
        let q = build_quotient(&spec(s), &lim()).unwrap();
        assert_eq!(q.group.order(), n, "{s}");
        assert_eq!(q.spec.predicted_order(), Some(n as u64));
    }
}

#[test]
fn built_quotients_are_groups() {
    for s in ["quat:p=3,k=3,variant=GL,i=0", "quat:p=5,k=3,variant=PGL1,i=1", "quat:p=3,k=4,variant=SL1,i=1", "quat:p=2,k=4,variant=GL,i=0"] {
        let q = build_quotient(&spec(s), &lim()).unwrap();
        q.group.verify_axioms(100_000, 5).unwrap();
        for (x, f) in q.forms.iter().enumerate() {
            assert!(f.is_unit(), "{s}: element {x}");
            assert!(f.is_congruent_to_one(q.spec.i));
        }
    }
}

#[test]
fn quotient_cap() {
    let limits = Limits {
        max_order: 1000,
        ..Limits::default()
    };
    assert!(matches!(
        build_quotient(&spec("quat:p=5,k=4,variant=PGL1,i=1"), &limits),
        Err(Error::OrderCap { .. })
    ));
}

#[test]
fn graded_pieces() {
    for (p, i, k) in [(5, 1, 2), (3, 2, 3), (7, 1, 2), (3, 1, 4)] {
        let r = check_graded_structure(p, i, k, &lim()).unwrap();
        assert!(r.holds(), "{r:?}");
    }
}

#[test]
fn norm_one_and_projective_agree() {
    for (p, i, k) in [(5, 1, 3), (3, 1, 3), (3, 2, 4), (3, 1, 4)] {
        let r = check_sl_pgl_iso(p, i, k, &lim()).unwrap();
        assert_eq!(r.sl_order, r.pgl_order);
        assert!(r.isomorphic, "p={p}, i={i}, k={k}");
    }
    assert!(matches!(check_sl_pgl_iso(2, 1, 3, &lim()), Err(Error::Unsupported(_))));
}

#[test]
fn index_p_examples() {
    let v = elementary_abelian(3, 2, &lim()).unwrap();
    assert_eq!(index_p_subgroups(&v, 3, &lim()).unwrap().len(), 4);
    let c9 = ncc_core::pgroup::cyclic(9, &lim()).unwrap();
    assert_eq!(index_p_subgroups(&c9, 3, &lim()).unwrap().len(), 1);
    for k in 2..=4 {
        let q = build_quotient(&spec(&format!("quat:p=3,k={k},variant=PGL1,i=1")), &lim()).unwrap();
        let generic = index_p_subgroups(&q.group, 3, &lim()).unwrap();
        assert_eq!(generic.len(), 4);
        let lines = line_subgroups(&q).unwrap();
        assert_eq!(lines.len(), 4);
        for l in &lines {
            assert_eq!(l.subgroup.index(), 3);
            assert!(generic.contains(&l.subgroup), "{}", l.label());
        }
    }
}

/// Values from an exhaustive search in the i, j, k basis of the algebra,
/// computed outside this crate.
#[test]
fn small_quotient_invariants() {
    for (s, v) in [
        ("quat:p=3,k=2,variant=PGL1,i=1", 4),
        ("quat:p=3,k=3,variant=PGL1,i=1", 5),
        ("quat:p=3,k=4,variant=PGL1,i=1", 11),
        ("quat:p=5,k=2,variant=PGL1,i=1", 6),
        ("quat:p=5,k=3,variant=PGL1,i=1", 7),
        ("quat:p=3,k=2,variant=PGL,i=0", 3),
        ("quat:p=3,k=3,variant=PGL,i=0", 3),
        ("quat:p=5,k=2,variant=PGL,i=0", 3),
    ] {
        assert_eq!(ncc(&build_quotient(&spec(s), &lim()).unwrap().group).value, v, "{s}");
    }
    for (s, v) in [
        ("quat:p=3,k=2,variant=PGL,i=0", 2),
        ("quat:p=3,k=3,variant=PGL,i=0", 3),
        ("quat:p=5,k=2,variant=PGL,i=0", 2),
    ] {
        assert_eq!(nac(&build_quotient(&spec(s), &lim()).unwrap().group, &lim()).unwrap().value, v, "{s}");
    }
    let q = build_quotient(&spec("quat:p=3,k=4,variant=PGL1,i=1"), &lim()).unwrap();
    let mut values: Vec<usize> = line_subgroups(&q)
        .unwrap()
        .iter()
        .map(|l| ncc(&l.subgroup.to_group("H", &lim()).unwrap().0).value)
        .collect();
    values.sort();
    assert_eq!(values, [9, 9, 16, 16]);
}

#[test]
fn p_equals_two_gl_quotients() {
    let a = build_quotient(&spec("quat:p=2,k=2,variant=GL1,i=1"), &lim()).unwrap();
    assert_eq!(a.group.order(), 4);
    let b = build_quotient(&spec("quat:p=2,k=1,variant=GL,i=0"), &lim()).unwrap();
    assert!(b.group.is_cyclic());
    let v = elementary_abelian(2, 2, &lim()).unwrap();
    assert!(is_isomorphic(&a.group, &v, &lim()).unwrap());
}
