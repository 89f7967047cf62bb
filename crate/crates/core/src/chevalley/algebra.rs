use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::StructureConstants;
use crate::error::{Error, Result};
use crate::roots::{Root, RootSystem, SimpleType};
use crate::scalar::Scalar;

/// One summand of a reductive algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Component {
    Simple(SimpleType),
    /// Abelian summand of the given dimension.
    Torus(usize),
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Simple(t) => write!(f, "{t}"),
            Component::Torus(k) => write!(f, "T{k}"),
        }
    }
}

/// Basis symbols of the complexified algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisSymbol {
    /// Simple coroot `α_i^∨`.
    H(usize),
    /// Root vector, by root index.
    E(usize),
    /// Generator of an abelian summand.
    Z(usize),
}

fn rat(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub(crate) fn rat_scalar<F: Scalar>(r: Rational64) -> F {
    F::from_rational(&rat(r))
}

/// Sparse element of the complexified algebra over the Chevalley basis
/// `{H_i, E_α, Z_a}`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LieElement<F> {
    coeffs: BTreeMap<usize, F>,
}

impl<F: Scalar> Default for LieElement<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> LieElement<F> {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(i: usize) -> Self {
        Self::term(i, F::one())
    }

    pub fn term(i: usize, c: F) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    pub fn from_dense(v: &[F]) -> Self {
        let mut e = Self::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(i, c.clone());
        }
        e
    }

    pub fn to_dense(&self, dim: usize) -> Vec<F> {
        let mut v = vec![F::zero(); dim];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn add_term(&mut self, i: usize, c: F) {
        if c.is_zero() {
            return;
        }
        let next = match self.coeffs.remove(&i) {
            Some(old) => old + c,
            None => c,
        };
        if !next.is_zero() {
            self.coeffs.insert(i, next);
        }
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(&i).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&i, c) in &o.coeffs {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut out = Self::zero();
        for (&i, c) in &self.coeffs {
            out.add_term(i, c.clone() * s.clone());
        }
        out
    }

    /// Linear combination `Σ c_k v_k`.
    pub fn combination(coeffs: &[F], vectors: &[LieElement<F>]) -> Self {
        let mut out = Self::zero();
        for (c, v) in coeffs.iter().zip(vectors) {
            if c.is_zero() {
                continue;
            }
            for (&i, x) in &v.coeffs {
                out.add_term(i, c.clone() * x.clone());
            }
        }
        out
    }

    /// Largest coefficient magnitude (residual size).
    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn is_negligible(&self) -> bool {
        self.coeffs.values().all(Scalar::negligible)
    }
}

/// A compact reductive Lie algebra given through the Chevalley basis of its
/// complexification: semisimple summands plus central abelian summands.
#[derive(Clone, Debug)]
pub struct Algebra {
    components: Vec<Component>,
    roots: RootSystem,
    constants: StructureConstants,
    torus_dim: usize,
    /// Component index owning each abelian generator.
    torus_owner: Vec<usize>,
    /// Component index owning each simple root.
    simple_owner: Vec<usize>,
    neg: Vec<usize>,
    table: Vec<Vec<(usize, i64)>>,
}

impl Algebra {
    pub fn new(components: &[Component]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Config("empty algebra".into()));
        }
        let simple: Vec<SimpleType> = components
            .iter()
            .filter_map(|c| match c {
                Component::Simple(t) => Some(*t),
                Component::Torus(_) => None,
            })
            .collect();
        let roots = RootSystem::build(&simple)?;
        let constants = StructureConstants::compute(&roots)?;
        let mut torus_owner = Vec::new();
        let mut simple_owner = Vec::new();
        for (ci, c) in components.iter().enumerate() {
            match c {
                Component::Simple(t) => simple_owner.extend(std::iter::repeat_n(ci, t.rank)),
                Component::Torus(k) => {
                    if *k == 0 {
                        return Err(Error::Config("torus summand of dimension 0".into()));
                    }
                    torus_owner.extend(std::iter::repeat_n(ci, *k));
                }
            }
        }
        let neg = (0..roots.len())
            .map(|i| roots.index_of(&roots.root(i).neg()).expect("closed under negation"))
            .collect();
        let mut alg = Algebra {
            components: components.to_vec(),
            torus_dim: torus_owner.len(),
            torus_owner,
            simple_owner,
            roots,
            constants,
            neg,
            table: Vec::new(),
        };
        let dim = alg.dim();
        let mut table = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                table.push(alg.bracket_symbols(alg.symbol(i), alg.symbol(j)));
            }
        }
        alg.table = table;
        Ok(alg)
    }

    /// Appends `a` one-dimensional central generators.
    pub fn augment_with_torus(&self, a: usize) -> Result<Self> {
        if a == 0 {
            return Ok(self.clone());
        }
        let mut comps = self.components.clone();
        comps.push(Component::Torus(a));
        Algebra::new(&comps)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn descriptor(&self) -> String {
        self.components
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn dim(&self) -> usize {
        self.roots.rank() + self.roots.len() + self.torus_dim
    }

    pub fn is_semisimple(&self) -> bool {
        self.torus_dim == 0
    }

    pub fn h_index(&self, i: usize) -> usize {
        i
    }

    pub fn e_index(&self, root: usize) -> usize {
        self.rank() + root
    }

    pub fn z_index(&self, a: usize) -> usize {
        self.rank() + self.roots.len() + a
    }

    pub fn symbol(&self, i: usize) -> BasisSymbol {
        let r = self.rank();
        let n = self.roots.len();
        if i < r {
            BasisSymbol::H(i)
        } else if i < r + n {
            BasisSymbol::E(i - r)
        } else {
            BasisSymbol::Z(i - r - n)
        }
    }

    pub fn neg_root(&self, root: usize) -> usize {
        self.neg[root]
    }

    /// Root vector `E_α` as an element.
    pub fn e<F: Scalar>(&self, root: &Root) -> Result<LieElement<F>> {
        let idx = self
            .roots
            .index_of(root)
            .ok_or_else(|| Error::Argument(format!("{root} is not a root")))?;
        Ok(LieElement::basis(self.e_index(idx)))
    }

    /// Coroot `α^∨` as a combination of simple coroots.
    pub fn coroot<F: Scalar>(&self, root: &Root) -> LieElement<F> {
        let mut out = LieElement::zero();
        for (i, c) in self.roots.coroot_coeffs(root).into_iter().enumerate() {
            out.add_term(self.h_index(i), F::from_int(c));
        }
        out
    }

    /// Form-dual `H_α`, characterized by `form(H_α, H) = α(H)` at unit scale;
    /// equals `(α,α)/2 · α^∨`.
    pub fn form_dual<F: Scalar>(&self, root: &Root) -> LieElement<F> {
        let half = rat_scalar::<F>(self.roots.norm2(root) / Rational64::from(2));
        self.coroot::<F>(root).scale(&half)
    }

    fn bracket_symbols(&self, a: BasisSymbol, b: BasisSymbol) -> Vec<(usize, i64)> {
        use BasisSymbol::*;
        match (a, b) {
            (H(i), E(k)) => {
                let v = self.roots.eval_coroot(self.roots.root(k), i);
                if v == 0 {
                    vec![]
                } else {
                    vec![(self.e_index(k), v)]
                }
            }
            (E(_), H(_)) => self
                .bracket_symbols(b, a)
                .into_iter()
                .map(|(i, v)| (i, -v))
                .collect(),
            (E(k), E(l)) => {
                if self.neg[k] == l {
                    self.roots
                        .coroot_coeffs(self.roots.root(k))
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| *c != 0)
                        .map(|(i, c)| (self.h_index(i), c))
                        .collect()
                } else {
                    let sum = self.roots.root(k).add(self.roots.root(l));
                    match self.roots.index_of(&sum) {
                        Some(s) => vec![(self.e_index(s), self.constants.get(k, l))],
                        None => vec![],
                    }
                }
            }
            _ => vec![],
        }
    }

    /// Bracket of two basis elements, by index.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket<F: Scalar>(&self, x: &LieElement<F>, y: &LieElement<F>) -> LieElement<F> {
        let mut out = LieElement::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let terms = self.bracket_basis(i, j);
                if terms.is_empty() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for &(k, v) in terms {
                    out.add_term(k, ab.scale_int(v));
                }
            }
        }
        out
    }

    /// Component owning a basis index.
    pub fn owner(&self, i: usize) -> usize {
        match self.symbol(i) {
            BasisSymbol::H(k) => self.simple_owner[k],
            BasisSymbol::E(k) => {
                let root = self.roots.root(k);
                let first = root.0.iter().position(|&c| c != 0).unwrap_or(0);
                self.simple_owner[first]
            }
            BasisSymbol::Z(a) => self.torus_owner[a],
        }
    }

    /// Unit scales for every component.
    pub fn unit_scales(&self) -> Vec<BigRational> {
        vec![BigRational::one(); self.components.len()]
    }

    /// Invariant form on basis elements at unit scale.
    pub fn form_basis(&self, i: usize, j: usize) -> Rational64 {
        use BasisSymbol::*;
        match (self.symbol(i), self.symbol(j)) {
            (H(a), H(b)) => {
                let p = self.roots.simple_pairing(a, b);
                if p.is_zero() {
                    return p;
                }
                p * Rational64::from(4)
                    / (self.roots.simple_pairing(a, a) * self.roots.simple_pairing(b, b))
            }
            (E(a), E(b)) if self.neg[a] == b => {
                Rational64::from(2) / self.roots.norm2(self.roots.root(a))
            }
            (Z(a), Z(b)) if a == b => Rational64::from(-1),
            _ => Rational64::zero(),
        }
    }

    fn form_partners(&self, i: usize) -> Vec<usize> {
        match self.symbol(i) {
            BasisSymbol::H(a) => {
                let owner = self.simple_owner[a];
                (0..self.rank())
                    .filter(|&b| self.simple_owner[b] == owner)
                    .map(|b| self.h_index(b))
                    .collect()
            }
            BasisSymbol::E(a) => vec![self.e_index(self.neg[a])],
            BasisSymbol::Z(_) => vec![i],
        }
    }

    /// Ad-invariant symmetric form: the normalized trace form of each simple
    /// summand times its scale, and `−scale·δ` on abelian generators, so that
    /// the form is negative definite on the compact real form.
    pub fn form<F: Scalar>(&self, x: &LieElement<F>, y: &LieElement<F>, scales: &[BigRational]) -> F {
        let mut acc = F::zero();
        for (i, a) in x.terms() {
            for j in self.form_partners(i) {
                let b = y.coeff(j);
                if b.is_zero() {
                    continue;
                }
                let v = self.form_basis(i, j);
                if v.is_zero() {
                    continue;
                }
                let s = &scales[self.owner(i)];
                let c = F::from_rational(&(rat(v) * s));
                acc = acc + a.clone() * b * c;
            }
        }
        acc
    }

    // --- compact real form ---

    /// Real basis of the compact form: `iH_j`, then `X_α = E_α − E_{−α}` and
    /// `Y_α = i(E_α + E_{−α})` for each positive α in root order, then `Z_a`.
    pub fn compact_basis<F: Scalar>(&self) -> Vec<LieElement<F>> {
        let i = F::imag_unit();
        let mut out = Vec::with_capacity(self.dim());
        for j in 0..self.rank() {
            out.push(LieElement::term(self.h_index(j), i.clone()));
        }
        for k in self.positive_root_indices() {
            let (e, f) = (self.e_index(k), self.e_index(self.neg[k]));
            let mut x = LieElement::basis(e);
            x.add_term(f, -F::one());
            let mut y = LieElement::term(e, i.clone());
            y.add_term(f, i.clone());
            out.push(x);
            out.push(y);
        }
        for a in 0..self.torus_dim {
            out.push(LieElement::basis(self.z_index(a)));
        }
        out
    }

    pub fn compact_labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.dim());
        for j in 0..self.rank() {
            out.push(format!("iH{}", j + 1));
        }
        for k in self.positive_root_indices() {
            let r = self.roots.root(k);
            out.push(format!("X{r}"));
            out.push(format!("Y{r}"));
        }
        for a in 0..self.torus_dim {
            out.push(format!("Z{}", a + 1));
        }
        out
    }

    pub fn positive_root_indices(&self) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&k| self.roots.root(k).is_positive())
            .collect()
    }

    /// Coordinates of `x` in the compact basis (real iff `x` is compact).
    pub fn compact_coords<F: Scalar>(&self, x: &LieElement<F>) -> Vec<F> {
        let i = F::imag_unit();
        let half = F::from_ratio(1, 2);
        let mut out = Vec::with_capacity(self.dim());
        for j in 0..self.rank() {
            // c·H = (−i c)·(iH)
            out.push(-(i.clone() * x.coeff(self.h_index(j))));
        }
        for k in self.positive_root_indices() {
            let a = x.coeff(self.e_index(k));
            let b = x.coeff(self.e_index(self.neg[k]));
            // aE_α + bE_{−α} = p X + q Y with p = (a−b)/2, q = −i(a+b)/2
            out.push((a.clone() - b.clone()) * half.clone());
            out.push(-(i.clone() * (a + b) * half.clone()));
        }
        for a in 0..self.torus_dim {
            out.push(x.coeff(self.z_index(a)));
        }
        out
    }

    pub fn from_compact_coords<F: Scalar>(&self, coords: &[F]) -> LieElement<F> {
        LieElement::combination(coords, &self.compact_basis())
    }

    /// Conjugation fixing the compact form: antilinear, `E_α ↦ −E_{−α}`,
    /// `H ↦ −H` on the coroot lattice, `Z ↦ Z`.
    pub fn conjugate<F: Scalar>(&self, x: &LieElement<F>) -> LieElement<F> {
        let mut out = LieElement::zero();
        for (idx, c) in x.terms() {
            let c = c.conj();
            match self.symbol(idx) {
                BasisSymbol::H(_) => out.add_term(idx, -c),
                BasisSymbol::E(k) => out.add_term(self.e_index(self.neg[k]), -c),
                BasisSymbol::Z(_) => out.add_term(idx, c),
            }
        }
        out
    }

    pub fn is_compact<F: Scalar>(&self, x: &LieElement<F>) -> bool {
        self.conjugate(x).sub(x).is_negligible()
    }

    /// Human-readable label of a Chevalley basis index.
    pub fn label(&self, i: usize) -> String {
        match self.symbol(i) {
            BasisSymbol::H(k) => format!("H{}", k + 1),
            BasisSymbol::E(k) => format!("E{}", self.roots.root(k)),
            BasisSymbol::Z(a) => format!("Z{}", a + 1),
        }
    }

    /// Largest Jacobi residual over the given basis triples (0 when exact).
    pub fn jacobi_defect<F: Scalar>(&self, triples: impl Iterator<Item = (usize, usize, usize)>) -> Option<(usize, usize, usize)> {
        for (a, b, c) in triples {
            let (x, y, z) = (
                LieElement::<F>::basis(a),
                LieElement::<F>::basis(b),
                LieElement::<F>::basis(c),
            );
            let j = self
                .bracket(&x, &self.bracket(&y, &z))
                .add(&self.bracket(&y, &self.bracket(&z, &x)))
                .add(&self.bracket(&z, &self.bracket(&x, &y)));
            if !j.is_negligible() {
                return Some((a, b, c));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::roots::Series;
    use crate::scalar::Surd;

    fn simple(s: Series, r: usize) -> Algebra {
        Algebra::new(&[Component::Simple(SimpleType::new(s, r).unwrap())]).unwrap()
    }

    fn small_types() -> Vec<Algebra> {
        use Series::*;
        [(A, 1), (A, 2), (B, 2), (G, 2), (A, 3), (B, 3), (C, 3)]
            .iter()
            .map(|&(s, r)| simple(s, r))
            .collect()
    }

    #[test]
    fn jacobi_small_ranks() {
        for alg in small_types() {
            let n = alg.dim();
            let triples = (0..n).flat_map(move |a| {
                (a..n).flat_map(move |b| (b..n).map(move |c| (a, b, c)))
            });
            assert_eq!(alg.jacobi_defect::<Surd>(triples), None, "{}", alg.descriptor());
        }
    }

    #[test]
    fn form_is_invariant() {
        for alg in small_types() {
            let n = alg.dim();
            let s = alg.unit_scales();
            for a in 0..n {
                for b in 0..n {
                    let xa = LieElement::<Surd>::basis(a);
                    let xb = LieElement::basis(b);
                    let ab = alg.bracket(&xa, &xb);
                    for c in 0..n {
                        let xc = LieElement::basis(c);
                        let lhs = alg.form(&ab, &xc, &s) + alg.form(&xb, &alg.bracket(&xa, &xc), &s);
                        assert!(lhs.is_zero(), "{} ({a},{b},{c})", alg.descriptor());
                    }
                }
            }
        }
    }

    #[test]
    fn compact_form_closed_and_negative_definite() {
        for alg in small_types() {
            let basis = alg.compact_basis::<Surd>();
            for x in &basis {
                assert!(alg.is_compact(x));
                for y in &basis {
                    let c = alg.compact_coords(&alg.bracket(x, y));
                    assert!(c.iter().all(Scalar::is_real));
                }
            }
            let s = alg.unit_scales();
            let gram = Matrix::from_rows(
                basis
                    .iter()
                    .map(|x| basis.iter().map(|y| -alg.form(x, y, &s)).collect())
                    .collect(),
            );
            assert!(gram.is_positive_definite(), "{}", alg.descriptor());
        }
    }

    #[test]
    fn coroot_brackets() {
        let alg = simple(Series::A, 2);
        let a1 = alg.roots().simple_root(0);
        let e = alg.e::<Surd>(&a1).unwrap();
        let f = alg.e::<Surd>(&a1.neg()).unwrap();
        let h = alg.coroot::<Surd>(&a1);
        assert_eq!(alg.bracket(&h, &e), e.scale(&Surd::from_int(2)));
        assert_eq!(alg.bracket(&e, &f), h);
        let s = alg.unit_scales();
        let x = alg.form_dual::<Surd>(&a1);
        for j in 0..alg.rank() {
            let hj = LieElement::basis(alg.h_index(j));
            let expect = alg.roots().cartan_int(&a1, &alg.roots().simple_root(j));
            assert_eq!(alg.form(&x, &hj, &s), Surd::from_int(expect));
        }
    }

    #[test]
    fn torus_is_central() {
        let alg = Algebra::new(&[
            Component::Simple(SimpleType::new(Series::A, 1).unwrap()),
            Component::Torus(1),
        ])
        .unwrap();
        assert_eq!(alg.dim(), 4);
        let z = LieElement::<Surd>::basis(alg.z_index(0));
        for i in 0..alg.dim() {
            assert!(alg.bracket(&z, &LieElement::basis(i)).is_zero());
        }
    }
}
