use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::roots::{Root, RootSystem};

/// Signed integer structure constants `N_{α,β}` of a Chevalley basis,
/// `[E_α, E_β] = N_{α,β} E_{α+β}`.
///
/// Signs follow the extraspecial-pair convention: for every non-simple
/// positive root ξ, the pair (α, β) with α + β = ξ and α minimal in the root
/// order gets `N_{α,β} = +(p+1)`; every other constant is then forced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    table: Vec<i64>,
}

impl StructureConstants {
    pub fn compute(rs: &RootSystem) -> Result<Self> {
        let n = rs.len();
        let mut sc = StructureConstants {
            n,
            table: vec![0; n * n],
        };
        let positives: Vec<usize> = (0..n).filter(|&i| rs.root(i).is_positive()).collect();

        for &xi in &positives {
            let xi_root = rs.root(xi);
            let pairs: Vec<(usize, usize)> = positives
                .iter()
                .filter_map(|&a| {
                    let b = rs.index_of(&xi_root.sub(rs.root(a)))?;
                    (rs.root(b).is_positive() && a < b).then_some((a, b))
                })
                .collect();
            let Some(&(g, d)) = pairs.first() else {
                continue;
            };
            let (p, _) = rs.root_string(rs.root(g), rs.root(d));
            sc.set_pair(g, d, p + 1);

            let xi_norm = rs.norm2(xi_root);
            let n_gd = Rational64::from(p + 1);
            for &(a, b) in &pairs[1..] {
                let (ra, rb, rg, rd) = (rs.root(a), rs.root(b), rs.root(g), rs.root(d));
                let mut sum = Rational64::zero();
                let b_minus_g = rb.sub(rg);
                if rs.contains(&b_minus_g) {
                    let t = Rational64::from(
                        sc.general(rs, rb, &rg.neg())? * sc.general(rs, ra, &rd.neg())?,
                    );
                    sum += t / rs.norm2(&b_minus_g);
                }
                let a_minus_g = ra.sub(rg);
                if rs.contains(&a_minus_g) {
                    let t = Rational64::from(
                        sc.general(rs, &rg.neg(), ra)? * sc.general(rs, rb, &rd.neg())?,
                    );
                    sum += t / rs.norm2(&a_minus_g);
                }
                let value = xi_norm / n_gd * sum;
                let (pa, _) = rs.root_string(ra, rb);
                if !value.is_integer() || value.to_integer().abs() != pa + 1 {
                    return Err(Error::Invariant(format!(
                        "structure constant N({ra},{rb}) = {value}, expected ±{}",
                        pa + 1
                    )));
                }
                sc.set_pair(a, b, value.to_integer());
            }
        }

        // fill every remaining summable pair from the positive table
        let mut full = sc.table.clone();
        for a in 0..n {
            for b in 0..n {
                let sum = rs.root(a).add(rs.root(b));
                if rs.contains(&sum) {
                    full[a * n + b] = sc.general(rs, rs.root(a), rs.root(b))?;
                }
            }
        }
        sc.table = full;
        sc.check_invariants(rs)?;
        Ok(sc)
    }

    fn set_pair(&mut self, a: usize, b: usize, v: i64) {
        self.table[a * self.n + b] = v;
        self.table[b * self.n + a] = -v;
    }

    /// `N_{α,β}` for arbitrary roots with α + β a root, derived from the
    /// positive-pair table through the relations for α + β + γ = 0:
    /// `N_{α,β}/(γ,γ) = N_{β,γ}/(α,α) = N_{γ,α}/(β,β)` and `N_{−α,−β} = −N_{α,β}`.
    fn general(&self, rs: &RootSystem, a: &Root, b: &Root) -> Result<i64> {
        let c = a.add(b).neg();
        let lookup = |x: &Root, y: &Root| -> Result<i64> {
            let (sign, x, y) = if x.is_positive() {
                (1, x.clone(), y.clone())
            } else {
                (-1, x.neg(), y.neg())
            };
            let ix = rs.index_of(&x).ok_or_else(|| Error::Invariant(format!("{x} not a root")))?;
            let iy = rs.index_of(&y).ok_or_else(|| Error::Invariant(format!("{y} not a root")))?;
            let v = self.table[ix * self.n + iy];
            if v == 0 {
                return Err(Error::Invariant(format!("N({x},{y}) requested before it was set")));
            }
            Ok(sign * v)
        };
        let same = |x: &Root, y: &Root| x.is_positive() == y.is_positive();
        let (value, num, den) = if same(a, b) {
            (lookup(a, b)?, Rational64::from(1), Rational64::from(1))
        } else if same(b, &c) {
            (lookup(b, &c)?, rs.norm2(&c), rs.norm2(a))
        } else {
            (lookup(&c, a)?, rs.norm2(&c), rs.norm2(b))
        };
        let v = Rational64::from(value) * num / den;
        if !v.is_integer() {
            return Err(Error::Invariant(format!("non-integral N({a},{b}) = {v}")));
        }
        Ok(v.to_integer())
    }

    fn check_invariants(&self, rs: &RootSystem) -> Result<()> {
        for a in 0..self.n {
            for b in 0..self.n {
                let v = self.get(a, b);
                let ra = rs.root(a);
                let rb = rs.root(b);
                let summable = rs.contains(&ra.add(rb));
                if summable != (v != 0) {
                    return Err(Error::Invariant(format!("N({ra},{rb}) support mismatch")));
                }
                if !summable {
                    continue;
                }
                let na = rs.index_of(&ra.neg()).unwrap();
                let nb = rs.index_of(&rb.neg()).unwrap();
                let (p, _) = rs.root_string(ra, rb);
                if self.get(b, a) != -v || self.get(na, nb) != -v || v.abs() != p + 1 {
                    return Err(Error::Invariant(format!("N({ra},{rb}) = {v} violates symmetry")));
                }
            }
        }
        Ok(())
    }

    /// `N_{α,β}` by root index; zero when α + β is not a root.
    pub fn get(&self, a: usize, b: usize) -> i64 {
        self.table[a * self.n + b]
    }

    pub fn max_abs(&self) -> i64 {
        self.table.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    /// TSV rows `α-coeffs, β-coeffs, N` over all summable pairs.
    pub fn to_tsv(&self, rs: &RootSystem) -> String {
        let mut out = String::from("alpha\tbeta\tN\n");
        for a in 0..self.n {
            for b in 0..self.n {
                let v = self.get(a, b);
                if v != 0 {
                    out.push_str(&format!("{}\t{}\t{}\n", rs.root(a), rs.root(b), v));
                }
            }
        }
        out
    }
}
