use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;
use crate::error::ScalarError;

/// Gaussian rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::new(&self.re / &norm, -&self.im / &norm))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "({}-{}i)", self.re, -&self.im)
        } else {
            write!(f, "({}+{}i)", self.re, self.im)
        }
    }
}

/// Exact element `Σ c_r · √r` with `c_r` Gaussian rational and `r` a
/// squarefree positive integer (`r = 1` is the rational part).
///
/// Terms are kept sorted by radicand with no zero coefficients, so equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: Vec<(u64, GaussRat)>,
}

fn from_map(map: BTreeMap<u64, GaussRat>) -> Surd {
    Surd {
        terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

/// Splits `n` into `(s, r)` with `n = s²·r` and `r` squarefree.
fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= p;
        }
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= n;
    (square, free)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Surd {
    pub fn terms(&self) -> &[(u64, GaussRat)] {
        &self.terms
    }

    pub fn gaussian(c: GaussRat) -> Self {
        if c.is_zero() {
            Self::default()
        } else {
            Self { terms: vec![(1, c)] }
        }
    }

    /// `c · √r` for an arbitrary positive integer `r`.
    pub fn radical(c: GaussRat, r: u64) -> Self {
        let (s, free) = squarefree_split(r);
        let c = c.scale(&BigRational::from_integer(BigInt::from(s)));
        if c.is_zero() {
            Self::default()
        } else {
            Self { terms: vec![(free, c)] }
        }
    }

    /// Rational part only, when no radicals and no imaginary part are present.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(1, c)] if c.im.is_zero() => Some(c.re.clone()),
            _ => None,
        }
    }

    fn largest_prime(&self) -> Option<u64> {
        self.terms
            .iter()
            .filter(|(r, _)| *r > 1)
            .flat_map(|(r, _)| prime_factors(*r))
            .max()
    }

    /// Writes `self = x + y·√p` where neither `x` nor `y` involves `√p`.
    fn split_on(&self, p: u64) -> (Surd, Surd) {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for (r, c) in &self.terms {
            if r % p == 0 {
                y.push((r / p, c.clone()));
            } else {
                x.push((*r, c.clone()));
            }
        }
        (Surd { terms: x }, Surd { terms: y })
    }

    /// Conjugation `√p ↦ −√p`.
    fn flip(&self, p: u64) -> Surd {
        Surd {
            terms: self
                .terms
                .iter()
                .map(|(r, c)| if r % p == 0 { (*r, c.neg()) } else { (*r, c.clone()) })
                .collect(),
        }
    }

    fn exact_sign(&self) -> Option<Ordering> {
        if self.terms.iter().any(|(_, c)| !c.im.is_zero()) {
            return None;
        }
        let Some(p) = self.largest_prime() else {
            return Some(match self.terms.first() {
                None => Ordering::Equal,
                Some((_, c)) => c.re.cmp(&BigRational::zero()),
            });
        };
        let (x, y) = self.split_on(p);
        let sx = x.exact_sign()?;
        let sy = y.exact_sign()?;
        if sy == Ordering::Equal {
            return Some(sx);
        }
        if sx == Ordering::Equal || sx == sy {
            return Some(sy);
        }
        // opposite signs: compare x² against p·y²
        let pr = Surd::from_rational(&BigRational::from_integer(BigInt::from(p)));
        let d = x.clone() * x - pr * y.clone() * y;
        match d.exact_sign()? {
            Ordering::Greater => Some(sx),
            Ordering::Less => Some(sy),
            Ordering::Equal => Some(Ordering::Equal),
        }
    }

    fn radicand_repr(r: u64) -> String {
        prime_factors(r)
            .into_iter()
            .map(|p| format!("*sqrt({p})"))
            .collect()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_repr())
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        if rhs.terms.is_empty() {
            return self;
        }
        if self.terms.is_empty() {
            return rhs;
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut a = self.terms.into_iter().peekable();
        let mut b = rhs.terms.into_iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ra, _)), Some((rb, _))) => match ra.cmp(rb) {
                    Ordering::Less => out.push(a.next().unwrap()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (r, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = ca.add(&cb);
                        if !c.is_zero() {
                            out.push((r, c));
                        }
                    }
                },
            }
        }
        Surd { terms: out }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.into_iter().map(|(r, c)| (r, c.neg())).collect(),
        }
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Surd::default();
        }
        if let ([(1, a)], [(1, b)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            return Surd::gaussian(a.mul(b));
        }
        let mut acc: BTreeMap<u64, GaussRat> = BTreeMap::new();
        for (ra, ca) in &self.terms {
            for (rb, cb) in &rhs.terms {
                let g = ra.gcd(rb);
                let r = (ra / g) * (rb / g);
                let mut c = ca.mul(cb);
                if g > 1 {
                    c = c.scale(&BigRational::from_integer(BigInt::from(g)));
                }
                let slot = acc.entry(r).or_default();
                *slot = slot.add(&c);
            }
        }
        from_map(acc)
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::gaussian(GaussRat::real(BigRational::one()))
    }
}

fn to_u64(n: &BigInt, what: &BigRational) -> Result<u64, ScalarError> {
    n.to_u64()
        .filter(|v| *v < (1u64 << 62))
        .ok_or_else(|| ScalarError::RadicandTooLarge(what.to_string()))
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

fn parse_gaussian(s: &str) -> Option<GaussRat> {
    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
    let body = inner.strip_suffix('i')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| bytes[k] == b'+' || bytes[k] == b'-')?;
    let re = parse_rational(&body[..split])?;
    let im_abs = parse_rational(&body[split + 1..])?;
    let im = if bytes[split] == b'-' { -im_abs } else { im_abs };
    Some(GaussRat::new(re, im))
}

impl Scalar for Surd {
    const EXACT: bool = true;
    const BACKEND: &'static str = "exact";

    fn from_rational(r: &BigRational) -> Self {
        Surd::gaussian(GaussRat::real(r.clone()))
    }

    fn from_gaussian(re: &BigRational, im: &BigRational) -> Self {
        Surd::gaussian(GaussRat::new(re.clone(), im.clone()))
    }

    fn imag_unit() -> Self {
        Surd::gaussian(GaussRat::new(BigRational::zero(), BigRational::one()))
    }

    fn conj(&self) -> Self {
        Surd {
            terms: self.terms.iter().map(|(r, c)| (*r, c.conj())).collect(),
        }
    }

    fn inv(&self) -> Result<Self, ScalarError> {
        if self.terms.is_empty() {
            return Err(ScalarError::DivisionByZero);
        }
        match self.largest_prime() {
            None => Ok(Surd::gaussian(self.terms[0].1.inv()?)),
            Some(p) => {
                // a⁻¹ = ā_p · (a·ā_p)⁻¹, where a·ā_p no longer involves √p
                let flipped = self.flip(p);
                let norm = self.clone() * flipped.clone();
                Ok(flipped * norm.inv()?)
            }
        }
    }

    fn sqrt_real(&self) -> Result<Self, ScalarError> {
        let r = self
            .as_rational()
            .ok_or_else(|| ScalarError::NonPositiveRadicand(self.to_repr()))?;
        Self::sqrt_rational(&r)
    }

    fn sqrt_rational(r: &BigRational) -> Result<Self, ScalarError> {
        if !r.is_positive() {
            return Err(ScalarError::NonPositiveRadicand(r.to_string()));
        }
        // √(p/q) = √(pq)/q
        let pq = r.numer() * r.denom();
        let n = to_u64(&pq, r)?;
        let (s, free) = squarefree_split(n);
        let coeff = BigRational::new(BigInt::from(s), r.denom().clone());
        Ok(Surd {
            terms: vec![(free, GaussRat::real(coeff))],
        })
    }

    fn to_c64(&self) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (r, c)| {
            let s = (*r as f64).sqrt();
            acc + Complex64::new(
                c.re.to_f64().unwrap_or(f64::NAN) * s,
                c.im.to_f64().unwrap_or(f64::NAN) * s,
            )
        })
    }

    fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.im.is_zero())
    }

    fn real_sign(&self) -> Option<Ordering> {
        self.exact_sign()
    }

    fn negligible(&self) -> bool {
        self.terms.is_empty()
    }

    fn to_repr(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(r, c)| format!("{c}{}", Surd::radicand_repr(*r)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn parse_repr(s: &str) -> Result<Self, ScalarError> {
        let err = |reason: &str| ScalarError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s_trim = s.trim();
        if s_trim == "0" {
            return Ok(Surd::zero());
        }
        let mut total = Surd::zero();
        for term in s_trim.split(" + ") {
            let close = term.find(')').ok_or_else(|| err("missing `)`"))?;
            let coeff = parse_gaussian(&term[..=close]).ok_or_else(|| err("bad coefficient"))?;
            let mut radicand: u64 = 1;
            let mut rest = &term[close + 1..];
            while !rest.is_empty() {
                let after = rest.strip_prefix("*sqrt(").ok_or_else(|| err("expected `*sqrt(`"))?;
                let end = after.find(')').ok_or_else(|| err("missing `)`"))?;
                let r: u64 = after[..end].parse().map_err(|_| err("bad radicand"))?;
                if r == 0 {
                    return Err(err("zero radicand"));
                }
                radicand = radicand.checked_mul(r).ok_or_else(|| err("radicand overflow"))?;
                rest = &after[end + 1..];
            }
            total = total + Surd::radical(coeff, radicand);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn q(n: i64, d: i64) -> Surd {
        Surd::from_ratio(n, d)
    }

    fn sqrt(n: i64) -> Surd {
        Surd::sqrt_rational(&ratio(n, 1)).unwrap()
    }

    #[test]
    fn cancellation() {
        let a = q(1, 1) + sqrt(2);
        let b = q(2, 1) - sqrt(2);
        assert_eq!(a + b, q(3, 1));
        assert_eq!(Surd::zero() + sqrt(5), sqrt(5));
    }

    #[test]
    fn radicand_normalization() {
        // (1/2)√8 = √2
        let lhs = q(1, 2) * sqrt(8) + sqrt(2);
        assert_eq!(lhs, q(2, 1) * sqrt(2));
        assert_eq!(sqrt(8).terms().len(), 1);
        assert_eq!(sqrt(8).terms()[0].0, 2);
    }

    #[test]
    fn products() {
        assert_eq!((q(1, 1) + sqrt(2)) * (q(1, 1) - sqrt(2)), q(-1, 1));
        assert_eq!(sqrt(2) * sqrt(3), sqrt(6));
        let i = Surd::imag_unit();
        assert_eq!(i.clone() * i, q(-1, 1));
        assert_eq!(sqrt(6) * sqrt(10), q(2, 1) * sqrt(15));
    }

    #[test]
    fn inverse_and_conjugate() {
        let one_plus_i = q(1, 1) + Surd::imag_unit();
        let expected = (q(1, 1) - Surd::imag_unit()) * q(1, 2);
        assert_eq!(one_plus_i.inv().unwrap(), expected);

        let z = q(2, 1) + q(3, 1) * Surd::imag_unit() * sqrt(2);
        let zbar = q(2, 1) - q(3, 1) * Surd::imag_unit() * sqrt(2);
        assert_eq!(z.conj(), zbar);

        assert_eq!(sqrt(2).inv().unwrap(), sqrt(2) * q(1, 2));
        assert_eq!(Surd::zero().inv(), Err(ScalarError::DivisionByZero));

        let w = q(1, 1) + sqrt(2) + sqrt(3) + Surd::imag_unit() * sqrt(6);
        assert_eq!(w.clone() * w.inv().unwrap(), Surd::one());
    }

    #[test]
    fn sqrt_of_fractions() {
        // √(2/3) = √6/3
        let s = Surd::sqrt_rational(&ratio(2, 3)).unwrap();
        assert_eq!(s, q(1, 3) * sqrt(6));
        assert_eq!(s.clone() * s, q(2, 3));
        assert!(Surd::sqrt_rational(&ratio(-1, 1)).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!((sqrt(2) - q(1, 1)).real_sign(), Some(Ordering::Greater));
        assert_eq!((sqrt(2) - q(3, 2)).real_sign(), Some(Ordering::Less));
        assert_eq!((sqrt(3) - sqrt(2) - q(1, 3)).real_sign(), Some(Ordering::Less));
        assert_eq!((sqrt(3) - sqrt(2) - q(1, 4)).real_sign(), Some(Ordering::Greater));
        assert_eq!(Surd::imag_unit().real_sign(), None);
    }

    #[test]
    fn repr_format() {
        let x = q(1, 2) + Surd::imag_unit() * q(-3, 1) + q(2, 1) * sqrt(6);
        assert_eq!(x.to_repr(), "(1/2-3i) + (2+0i)*sqrt(2)*sqrt(3)");
        assert_eq!(Surd::parse_repr(&x.to_repr()).unwrap(), x);
        assert_eq!(Surd::zero().to_repr(), "0");
        assert_eq!(Surd::parse_repr("(0+1i)*sqrt(8)").unwrap(), Surd::imag_unit() * q(2, 1) * sqrt(2));
        assert!(Surd::parse_repr("(1+2)").is_err());
    }
}
