//! Root systems of the compact simple types and their direct sums.
//!
//! Roots are integer coefficient vectors over the concatenated simple roots of
//! all components. The invariant pairing is normalized so that long roots of
//! every simple component have squared length 2.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }

    /// Number of roots of the simple system of this type and rank.
    pub fn root_count(self, n: usize) -> usize {
        match self {
            Series::A => n * (n + 1),
            Series::B | Series::C => 2 * n * n,
            Series::D => 2 * n * (n - 1),
            Series::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Series::F => 48,
            Series::G => 12,
        }
    }
}

/// A simple summand: series letter, rank, and offset of its first simple root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if !series.valid_rank(rank) {
            return Err(Error::Config(format!(
                "invalid rank {rank} for series {}",
                series.letter()
            )));
        }
        Ok(SimpleType { series, rank })
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Root) -> Root {
        Root(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> Root {
        Root(self.0.iter().map(|c| c * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Symmetrized pairing `(α_i, α_j)` of the simple roots of one simple type,
/// Bourbaki numbering, long roots of squared length 2.
fn simple_pairing(series: Series, n: usize) -> Vec<Vec<Rational64>> {
    let r = |a: i64, b: i64| Rational64::new(a, b);
    let mut m = vec![vec![Rational64::zero(); n]; n];
    let link = |m: &mut Vec<Vec<Rational64>>, i: usize, j: usize, v: Rational64| {
        m[i][j] = v;
        m[j][i] = v;
    };
    match series {
        Series::A | Series::D | Series::E => {
            for i in 0..n {
                m[i][i] = r(2, 1);
            }
            match series {
                Series::A => (0..n - 1).for_each(|i| link(&mut m, i, i + 1, r(-1, 1))),
                Series::D => {
                    (0..n - 2).for_each(|i| link(&mut m, i, i + 1, r(-1, 1)));
                    link(&mut m, n - 3, n - 1, r(-1, 1));
                }
                _ => {
                    // 1-3-4-5-...-n chain with 2 attached to 4
                    link(&mut m, 0, 2, r(-1, 1));
                    link(&mut m, 1, 3, r(-1, 1));
                    (2..n - 1).for_each(|i| link(&mut m, i, i + 1, r(-1, 1)));
                }
            }
        }
        Series::B => {
            for i in 0..n - 1 {
                m[i][i] = r(2, 1);
            }
            m[n - 1][n - 1] = r(1, 1);
            (0..n - 1).for_each(|i| link(&mut m, i, i + 1, r(-1, 1)));
        }
        Series::C => {
            for i in 0..n - 1 {
                m[i][i] = r(1, 1);
            }
            m[n - 1][n - 1] = r(2, 1);
            (0..n - 2).for_each(|i| link(&mut m, i, i + 1, r(-1, 2)));
            link(&mut m, n - 2, n - 1, r(-1, 1));
        }
        Series::F => {
            m[0][0] = r(2, 1);
            m[1][1] = r(2, 1);
            m[2][2] = r(1, 1);
            m[3][3] = r(1, 1);
            link(&mut m, 0, 1, r(-1, 1));
            link(&mut m, 1, 2, r(-1, 1));
            link(&mut m, 2, 3, r(-1, 2));
        }
        Series::G => {
            m[0][0] = r(2, 3);
            m[1][1] = r(2, 1);
            link(&mut m, 0, 1, r(-1, 1));
        }
    }
    m
}

/// Root datum of a semisimple algebra given as a list of simple summands.
#[derive(Clone, Debug)]
pub struct RootSystem {
    types: Vec<SimpleType>,
    offsets: Vec<usize>,
    rank: usize,
    pairing: Vec<Vec<Rational64>>,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    component: Vec<usize>,
}

impl RootSystem {
    pub fn build(types: &[SimpleType]) -> Result<Self> {
        for t in types {
            if !t.series.valid_rank(t.rank) {
                return Err(Error::Config(format!("invalid type {t}")));
            }
        }
        let rank: usize = types.iter().map(|t| t.rank).sum();
        let mut pairing = vec![vec![Rational64::zero(); rank]; rank];
        let mut offsets = Vec::with_capacity(types.len());
        let mut off = 0;
        for t in types {
            offsets.push(off);
            let block = simple_pairing(t.series, t.rank);
            for i in 0..t.rank {
                for j in 0..t.rank {
                    pairing[off + i][off + j] = block[i][j];
                }
            }
            off += t.rank;
        }

        let simple: Vec<Root> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                Root(v)
            })
            .collect();
        let mut seen: HashSet<Root> = simple.iter().cloned().collect();
        let mut queue: VecDeque<Root> = simple.iter().cloned().collect();
        let mut partial = RootSystem {
            types: types.to_vec(),
            offsets,
            rank,
            pairing,
            roots: Vec::new(),
            index: HashMap::new(),
            component: Vec::new(),
        };
        while let Some(beta) = queue.pop_front() {
            for i in 0..rank {
                let image = partial.reflect_simple(i, &beta);
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        partial.index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        partial.component = roots.iter().map(|r| partial.component_of(r)).collect();
        partial.roots = roots;

        let expected: usize = types.iter().map(|t| t.series.root_count(t.rank)).sum();
        if partial.roots.len() != expected {
            return Err(Error::Invariant(format!(
                "root count {} differs from expected {expected}",
                partial.roots.len()
            )));
        }
        Ok(partial)
    }

    pub fn types(&self) -> &[SimpleType] {
        &self.types
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.is_positive())
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        Root(v)
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    /// Component index of a root (all nonzero coefficients lie in one block).
    pub fn component_of(&self, r: &Root) -> usize {
        let first = r.0.iter().position(|&c| c != 0).unwrap_or(0);
        self.offsets
            .iter()
            .rposition(|&o| o <= first)
            .unwrap_or(0)
    }

    pub fn component_of_index(&self, i: usize) -> usize {
        self.component[i]
    }

    pub fn component_range(&self, c: usize) -> std::ops::Range<usize> {
        self.offsets[c]..self.offsets[c] + self.types[c].rank
    }

    pub fn simple_pairing(&self, i: usize, j: usize) -> Rational64 {
        self.pairing[i][j]
    }

    /// Normalized invariant pairing `(α, β)`.
    pub fn pairing(&self, a: &Root, b: &Root) -> Rational64 {
        let mut s = Rational64::zero();
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj != 0 && !self.pairing[i][j].is_zero() {
                    s += self.pairing[i][j] * Rational64::from(ai * bj);
                }
            }
        }
        s
    }

    pub fn norm2(&self, a: &Root) -> Rational64 {
        self.pairing(a, a)
    }

    /// `2(β, α)/(α, α)`, an integer for roots.
    pub fn cartan_int(&self, beta: &Root, alpha: &Root) -> i64 {
        let v = self.pairing(beta, alpha) * Rational64::from(2) / self.norm2(alpha);
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// `β(α_i^∨)`: eigenvalue of the i-th simple coroot on `E_β`.
    pub fn eval_coroot(&self, beta: &Root, i: usize) -> i64 {
        let mut s = Rational64::zero();
        for (j, &bj) in beta.0.iter().enumerate() {
            if bj != 0 {
                s += self.pairing[i][j] * Rational64::from(bj);
            }
        }
        let v = s * Rational64::from(2) / self.pairing[i][i];
        debug_assert!(v.is_integer());
        v.to_integer()
    }

    /// Coefficients of the coroot `α^∨ = 2α/(α,α)` in the simple coroot basis.
    pub fn coroot_coeffs(&self, a: &Root) -> Vec<i64> {
        let n2 = self.norm2(a);
        a.0.iter()
            .enumerate()
            .map(|(i, &c)| {
                let v = Rational64::from(c) * self.pairing[i][i] / n2;
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect()
    }

    pub fn reflect_simple(&self, i: usize, beta: &Root) -> Root {
        let k = self.eval_coroot(beta, i);
        let mut v = beta.0.clone();
        v[i] -= k;
        Root(v)
    }

    pub fn reflect(&self, alpha: &Root, beta: &Root) -> Root {
        beta.sub(&alpha.scaled(self.cartan_int(beta, alpha)))
    }

    /// `(p, q)` with `β − pα, …, β + qα` the α-string through β.
    pub fn root_string(&self, alpha: &Root, beta: &Root) -> (i64, i64) {
        let mut p = 0;
        while self.contains(&beta.sub(&alpha.scaled(p + 1))) {
            p += 1;
        }
        let mut q = 0;
        while self.contains(&beta.add(&alpha.scaled(q + 1))) {
            q += 1;
        }
        (p, q)
    }

    /// Highest root of a simple component: the positive root of maximal height.
    pub fn highest_root(&self, component: usize) -> Root {
        self.positive_roots()
            .filter(|r| self.component_of(r) == component)
            .max_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)))
            .cloned()
            .expect("nonempty component")
    }

    /// Roots of `set` orthogonal to θ whose difference with θ is not a root.
    pub fn c_set(&self, theta: &Root, set: &[Root]) -> Vec<Root> {
        set.iter()
            .filter(|a| self.pairing(theta, a).is_zero() && !self.contains(&theta.sub(a)))
            .cloned()
            .collect()
    }

    /// No sum or difference of two distinct members is a root.
    pub fn strongly_orthogonal(&self, set: &[Root]) -> bool {
        set.iter().enumerate().all(|(i, a)| {
            set[i + 1..]
                .iter()
                .all(|b| !self.contains(&a.add(b)) && !self.contains(&a.sub(b)))
        })
    }

    /// Root table as TSV: coefficients, height, squared length, positivity.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("coeffs\theight\tlength2\tpositive\n");
        for r in &self.roots {
            let n = self.norm2(r);
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                r,
                r.height(),
                n,
                if r.is_positive() { 1 } else { 0 }
            ));
        }
        out
    }

    pub fn is_long(&self, a: &Root) -> bool {
        self.norm2(a) == Rational64::from(2)
    }
}
