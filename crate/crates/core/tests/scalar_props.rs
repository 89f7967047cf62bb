use joyce::scalar::{ratio, Approx, Scalar, Surd};
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

const RADICANDS: [i64; 5] = [1, 2, 3, 5, 6];

fn surd() -> impl Strategy<Value = Surd> {
    prop::collection::vec((-6i64..=6, -6i64..=6, 1i64..=4), RADICANDS.len()).prop_map(|cs| {
        cs.iter().zip(RADICANDS).fold(Surd::zero(), |acc, (&(re, im, den), r)| {
            let c = Surd::from_gaussian(&ratio(re, den), &ratio(im, den));
            acc + c * Surd::sqrt_rational(&ratio(r, 1)).unwrap()
        })
    })
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #[test]
    fn ring_axioms(a in surd(), b in surd(), c in surd()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Surd::zero());
        prop_assert_eq!(a.clone() * Surd::one(), a.clone());
    }

    #[test]
    fn inverses(a in surd()) {
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.clone() * inv, Surd::one());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in surd(), b in surd()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert!((a.clone() * a.conj()).is_real());
    }

    #[test]
    fn complex_image_is_a_homomorphism(a in surd(), b in surd()) {
        prop_assert!(close((a.clone() * b.clone()).to_c64(), a.to_c64() * b.to_c64()));
        prop_assert!(close((a.clone() + b.clone()).to_c64(), a.to_c64() + b.to_c64()));
    }

    #[test]
    fn exact_repr_round_trips(a in surd()) {
        prop_assert_eq!(Surd::parse_repr(&a.to_repr()).unwrap(), a);
    }

    #[test]
    fn square_roots_square_back(n in 1i64..500, d in 1i64..50) {
        let r = ratio(n, d);
        let s = Surd::sqrt_rational(&r).unwrap();
        prop_assert_eq!(s.clone() * s.clone(), Surd::from_rational(&r));
        prop_assert_eq!(s.real_sign(), Some(std::cmp::Ordering::Greater));
    }

    #[test]
    fn float_repr_round_trips(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let x = Approx::<f64>::new(re, im);
        prop_assert_eq!(Approx::<f64>::parse_repr(&x.to_repr()).unwrap(), x);
    }

    #[test]
    fn float_backend_tracks_exact(a in surd(), b in surd()) {
        let fa = Approx::<f64>::new(a.to_c64().re, a.to_c64().im);
        let fb = Approx::<f64>::new(b.to_c64().re, b.to_c64().im);
        prop_assert!(close((fa * fb).to_c64(), (a * b).to_c64()));
    }
}

fn two_radicand_surd() -> impl Strategy<Value = Surd> {
    (prop::sample::subsequence(RADICANDS.to_vec(), 2), prop::collection::vec((-5i64..=5, -5i64..=5, 1i64..=3), 2))
        .prop_map(|(rs, cs)| {
            rs.iter().zip(cs).fold(Surd::zero(), |acc, (&r, (re, im, den))| {
                acc + Surd::from_gaussian(&ratio(re, den), &ratio(im, den)) * Surd::sqrt_rational(&ratio(r, 1)).unwrap()
            })
        })
}

proptest! {
    #[test]
    fn two_radicand_field_axioms(a in two_radicand_surd(), b in two_radicand_surd(), c in two_radicand_surd()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * a.inv().unwrap(), Surd::one());
        }
    }

    #[test]
    fn long_products_agree_with_float(xs in prop::collection::vec(two_radicand_surd(), 1..=8)) {
        let exact = xs.iter().cloned().fold(Surd::one(), |acc, x| acc * x);
        let float = xs
            .iter()
            .map(|x| Approx::<f64>::new(x.to_c64().re, x.to_c64().im))
            .fold(Approx::<f64>::one(), |acc, x| acc * x);
        let (e, f) = (exact.to_c64(), float.to_c64());
        prop_assert!((e - f).norm() <= 1e-9 * e.norm().max(1e-300), "{e} vs {f}");
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(Surd::zero().inv().is_err());
    assert!(Surd::sqrt_rational(&ratio(-2, 1)).is_err());
}
