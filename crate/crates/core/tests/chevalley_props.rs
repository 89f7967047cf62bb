mod common;

use std::sync::OnceLock;

use joyce::chevalley::{Algebra, Component, LieElement, Subalgebra};
use joyce::joyce::{construct, ConstructOptions};
use joyce::roots::{Series, SimpleType};
use joyce::scalar::{ratio, Surd};
use joyce::verify::verify;
use common::{bracket, jacobiator, unit};
use proptest::prelude::*;

fn algebra(s: Series, n: usize) -> Algebra {
    Algebra::new(&[Component::Simple(SimpleType::new(s, n).unwrap())]).unwrap()
}

macro_rules! cached {
    ($name:ident, $s:expr, $n:expr) => {
        fn $name() -> &'static Algebra {
            static A: OnceLock<Algebra> = OnceLock::new();
            A.get_or_init(|| algebra($s, $n))
        }
    };
}

cached!(d4, Series::D, 4);
cached!(f4, Series::F, 4);
cached!(e6, Series::E, 6);
cached!(b5, Series::B, 5);
cached!(b3, Series::B, 3);
cached!(c3, Series::C, 3);

fn triple_in(dim: usize) -> impl Strategy<Value = (usize, usize, usize)> {
    (0..dim, 0..dim, 0..dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn jacobi_d4((a, b, c) in triple_in(28)) {
        let alg = d4();
        prop_assert!(jacobiator(alg, a, b, c).is_empty());
    }

    #[test]
    fn jacobi_f4((a, b, c) in triple_in(52)) {
        let alg = f4();
        prop_assert!(jacobiator(alg, a, b, c).is_empty());
    }

    #[test]
    fn jacobi_e6((a, b, c) in triple_in(78)) {
        let alg = e6();
        prop_assert!(jacobiator(alg, a, b, c).is_empty());
    }

    #[test]
    fn jacobi_b5((a, b, c) in triple_in(55)) {
        let alg = b5();
        prop_assert!(jacobiator(alg, a, b, c).is_empty());
    }

    #[test]
    fn form_is_ad_invariant((a, b, c) in triple_in(21)) {
        let alg = b3();
        let scales = alg.unit_scales();
        let e = |i: usize| LieElement::<Surd>::basis(i);
        let lhs = alg.form(&alg.bracket(&e(a), &e(b)), &e(c), &scales);
        let rhs = alg.form(&e(a), &alg.bracket(&e(b), &e(c)), &scales);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn centralizers_are_subalgebras(picks in prop::collection::vec(0usize..21, 1..4)) {
        let alg = c3();
        let gens: Vec<_> = picks.iter().map(|&i| LieElement::<Surd>::basis(i)).collect();
        let generated = Subalgebra::from_elements(alg, &gens).unwrap();
        let c = Subalgebra::full(alg).centralizer(alg, &generated.elements(alg)).unwrap();
        prop_assert!(c.is_closed(alg));
        let full = Subalgebra::full(alg);
        let cc = full.centralizer(alg, &c.elements(alg)).unwrap();
        let ccc = full.centralizer(alg, &cc.elements(alg)).unwrap();
        prop_assert_eq!(ccc.dim(), c.dim());
        prop_assert!(generated.basis().iter().all(|v| cc.contains(v)));
    }
}

#[test]
fn form_invariance_exhaustive() {
    for (s, n) in [(Series::A, 3), (Series::B, 3), (Series::C, 3), (Series::G, 2)] {
        let alg = algebra(s, n);
        let scales = alg.unit_scales();
        let e = |i: usize| LieElement::<Surd>::basis(i);
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                let xy = alg.bracket(&e(x), &e(y));
                for z in 0..alg.dim() {
                    let xz = alg.bracket(&e(x), &e(z));
                    let sum = alg.form(&xy, &e(z), &scales) + alg.form(&e(y), &xz, &scales);
                    assert!(num_traits::Zero::is_zero(&sum), "{s:?}{n}: {x} {y} {z}");
                }
            }
        }
    }
}

#[test]
fn bracket_is_antisymmetric() {
    let alg = algebra(Series::G, 2);
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let mut s = bracket(&alg, &unit(i), &unit(j));
            for (k, v) in bracket(&alg, &unit(j), &unit(i)) {
                *s.entry(k).or_insert(0) += v;
            }
            s.retain(|_, v| *v != 0);
            assert!(s.is_empty(), "[{i},{j}]");
        }
    }
}

/// Rescaling the metric on each summand changes neither the complex
/// structures nor any verdict.
#[test]
fn scale_covariance() {
    let alg = Algebra::new(&[
        Component::Simple(SimpleType::new(Series::A, 1).unwrap()),
        Component::Simple(SimpleType::new(Series::A, 2).unwrap()),
        Component::Torus(1),
    ])
    .unwrap();
    let (d0, t0) = construct::<Surd>(&alg, &ConstructOptions::default()).unwrap();
    assert!(verify(&d0, &t0).unwrap().passed());
    for scales in [vec![ratio(2, 1), ratio(1, 3), ratio(5, 1)], vec![ratio(7, 2), ratio(7, 2), ratio(1, 1)]] {
        let opts = ConstructOptions {
            scales: Some(scales.clone()),
            ..Default::default()
        };
        let (d, t) = construct::<Surd>(&alg, &opts).unwrap();
        let rep = verify(&d, &t).unwrap();
        assert!(rep.passed(), "{scales:?}: {:?}", rep.failures());
        assert_eq!(t.i, t0.i, "{scales:?}");
        assert_eq!(d.m_dim(), d0.m_dim());
    }
}
