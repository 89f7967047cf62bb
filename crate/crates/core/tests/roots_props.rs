use std::collections::BTreeSet;

use joyce::roots::{Root, RootSystem, Series, SimpleType};
use proptest::prelude::*;

fn all_types() -> Vec<SimpleType> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(SimpleType::new(Series::A, n).unwrap());
    }
    for n in 2..=5 {
        out.push(SimpleType::new(Series::B, n).unwrap());
        out.push(SimpleType::new(Series::C, n).unwrap());
    }
    for n in 4..=6 {
        out.push(SimpleType::new(Series::D, n).unwrap());
    }
    for n in 6..=8 {
        out.push(SimpleType::new(Series::E, n).unwrap());
    }
    out.push(SimpleType::new(Series::F, 4).unwrap());
    out.push(SimpleType::new(Series::G, 2).unwrap());
    out
}

fn system(t: SimpleType) -> RootSystem {
    RootSystem::build(&[t]).unwrap()
}

#[test]
fn root_counts() {
    let expected = |t: SimpleType| match (t.series, t.rank) {
        (Series::A, n) => n * (n + 1),
        (Series::B | Series::C, n) => 2 * n * n,
        (Series::D, n) => 2 * n * (n - 1),
        (Series::E, 6) => 72,
        (Series::E, 7) => 126,
        (Series::E, 8) => 240,
        (Series::F, 4) => 48,
        (Series::G, 2) => 12,
        _ => unreachable!(),
    };
    for t in all_types() {
        assert_eq!(system(t).len(), expected(t), "{t}");
    }
}

#[test]
fn highest_roots() {
    let cases: [(Series, usize, &[i64]); 9] = [
        (Series::A, 4, &[1, 1, 1, 1]),
        (Series::B, 4, &[1, 2, 2, 2]),
        (Series::C, 4, &[2, 2, 2, 1]),
        (Series::D, 5, &[1, 2, 2, 1, 1]),
        (Series::E, 6, &[1, 2, 2, 3, 2, 1]),
        (Series::E, 7, &[2, 2, 3, 4, 3, 2, 1]),
        (Series::E, 8, &[2, 3, 4, 6, 5, 4, 3, 2]),
        (Series::F, 4, &[2, 3, 4, 2]),
        (Series::G, 2, &[3, 2]),
    ];
    for (s, n, coeffs) in cases {
        let rs = system(SimpleType::new(s, n).unwrap());
        assert_eq!(rs.highest_root(0), Root(coeffs.to_vec()), "{s:?}{n}");
    }
}

#[test]
fn highest_root_dominates() {
    for t in all_types() {
        let rs = system(t);
        let top = rs.highest_root(0);
        assert!(rs.is_long(&top), "{t}");
        for r in rs.positive_roots() {
            assert!(!rs.contains(&top.add(r)), "{t}: {top} + {r}");
            assert!(top.coeffs().iter().zip(r.coeffs()).all(|(a, b)| a >= b), "{t}: {r}");
        }
        for i in 0..t.rank {
            assert!(rs.cartan_int(&top, &rs.simple_root(i)) >= 0, "{t}");
        }
    }
}

#[test]
fn simple_reflections_permute_roots() {
    for t in all_types() {
        let rs = system(t);
        let all: BTreeSet<Root> = rs.roots().iter().cloned().collect();
        for i in 0..t.rank {
            let image: BTreeSet<Root> = rs.roots().iter().map(|r| rs.reflect_simple(i, r)).collect();
            assert_eq!(image, all, "{t} s{}", i + 1);
            let a = rs.simple_root(i);
            for r in rs.roots() {
                assert_eq!(rs.norm2(&rs.reflect_simple(i, r)), rs.norm2(r));
                if *r != a && *r != a.neg() {
                    assert_eq!(rs.reflect_simple(i, r).is_positive(), r.is_positive(), "{t}");
                }
            }
        }
    }
}

fn small_types() -> Vec<SimpleType> {
    all_types().into_iter().filter(|t| t.rank <= 4).collect()
}

#[test]
fn every_reflection_permutes_roots() {
    for t in small_types() {
        let rs = system(t);
        let all: BTreeSet<Root> = rs.roots().iter().cloned().collect();
        for a in rs.roots() {
            let image: BTreeSet<Root> = rs.roots().iter().map(|r| rs.reflect(a, r)).collect();
            assert_eq!(image, all, "{t} s_{a}");
        }
    }
}

#[test]
fn root_strings_exhaustive() {
    for t in small_types() {
        let rs = system(t);
        for a in rs.roots() {
            for b in rs.roots() {
                if b == a || *b == a.neg() {
                    continue;
                }
                let (p, q) = rs.root_string(a, b);
                let expected = num_rational::Rational64::from(2) * rs.pairing(b, a) / rs.norm2(a);
                assert_eq!(num_rational::Rational64::from(p - q), expected, "{t}: {a} through {b}");
            }
        }
    }
}

fn type_and_pair() -> impl Strategy<Value = (SimpleType, usize, usize)> {
    prop::sample::select(all_types()).prop_flat_map(|t| {
        let n = system(t).len();
        (Just(t), 0..n, 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn reflections_preserve_the_pairing((t, a, b) in type_and_pair()) {
        let rs = system(t);
        let (x, y) = (rs.root(a).clone(), rs.root(b).clone());
        for i in 0..t.rank {
            let (sx, sy) = (rs.reflect_simple(i, &x), rs.reflect_simple(i, &y));
            prop_assert_eq!(rs.pairing(&sx, &sy), rs.pairing(&x, &y));
        }
        prop_assert!(rs.contains(&rs.reflect(&x, &y)));
    }

    #[test]
    fn root_strings_are_unbroken((t, a, b) in type_and_pair()) {
        let rs = system(t);
        let (alpha, beta) = (rs.root(a).clone(), rs.root(b).clone());
        prop_assume!(beta != alpha && beta != alpha.neg());
        let (p, q) = rs.root_string(&alpha, &beta);
        prop_assert_eq!(p - q, rs.cartan_int(&beta, &alpha));
        prop_assert!(p + q <= 3);
        for k in -p..=q {
            prop_assert!(rs.contains(&beta.add(&alpha.scaled(k))));
        }
    }
}
