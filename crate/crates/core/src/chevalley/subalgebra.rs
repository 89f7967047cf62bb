use super::{Algebra, LieElement};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, RowSpace};
use crate::scalar::Scalar;

/// Subspace of an algebra, stored as a reduced echelon basis of vectors in
/// compact-basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Subalgebra<F> {
    width: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Scalar> Subalgebra<F> {
    /// Span of the given coordinate vectors.
    pub fn span(width: usize, vectors: impl IntoIterator<Item = Vec<F>>) -> Result<Self> {
        let mut rs = RowSpace::new(width);
        for v in vectors {
            if v.len() != width {
                return Err(Error::Invariant("coordinate vector of wrong length".into()));
            }
            rs.insert(v)?;
        }
        Ok(Subalgebra {
            width,
            basis: rs.basis(),
        })
    }

    pub fn full(alg: &Algebra) -> Self {
        let n = alg.dim();
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![F::zero(); n];
                v[i] = F::one();
                v
            })
            .collect();
        Subalgebra { width: n, basis }
    }

    pub fn zero(width: usize) -> Self {
        Subalgebra {
            width,
            basis: Vec::new(),
        }
    }

    pub fn from_elements(alg: &Algebra, elems: &[LieElement<F>]) -> Result<Self> {
        Self::span(alg.dim(), elems.iter().map(|e| alg.compact_coords(e)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn elements(&self, alg: &Algebra) -> Vec<LieElement<F>> {
        self.basis.iter().map(|v| alg.from_compact_coords(v)).collect()
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut rs = RowSpace::new(self.width);
        for b in &self.basis {
            // basis rows are already independent
            let _ = rs.insert(b.clone());
        }
        rs.contains(v)
    }

    pub fn contains_element(&self, alg: &Algebra, x: &LieElement<F>) -> bool {
        self.contains(&alg.compact_coords(x))
    }

    /// Span of all brackets of basis pairs.
    pub fn derived(&self, alg: &Algebra) -> Result<Self> {
        let elems = self.elements(alg);
        let mut brackets = Vec::new();
        for (i, x) in elems.iter().enumerate() {
            for y in &elems[i + 1..] {
                brackets.push(alg.compact_coords(&alg.bracket(x, y)));
            }
        }
        Self::span(self.width, brackets)
    }

    pub fn is_closed(&self, alg: &Algebra) -> bool {
        let elems = self.elements(alg);
        elems.iter().enumerate().all(|(i, x)| {
            elems[i + 1..]
                .iter()
                .all(|y| self.contains(&alg.compact_coords(&alg.bracket(x, y))))
        })
    }

    /// Elements of `self` commuting with every element of `set`.
    pub fn centralizer(&self, alg: &Algebra, set: &[LieElement<F>]) -> Result<Self> {
        if set.is_empty() || self.basis.is_empty() {
            return Ok(self.clone());
        }
        let elems = self.elements(alg);
        // column j stacks the coordinates of [s, b_j] over all s
        let columns: Vec<Vec<F>> = elems
            .iter()
            .map(|b| {
                set.iter()
                    .flat_map(|s| alg.compact_coords(&alg.bracket(s, b)))
                    .collect()
            })
            .collect();
        let m = Matrix::from_columns(&columns, set.len() * self.width);
        let kernel = m.nullspace()?;
        Self::span(
            self.width,
            kernel.into_iter().map(|c| {
                let mut v = vec![F::zero(); self.width];
                for (cj, b) in c.iter().zip(&self.basis) {
                    crate::linalg::axpy(&mut v, cj, b);
                }
                v
            }),
        )
    }

    pub fn center(&self, alg: &Algebra) -> Result<Self> {
        let elems = self.elements(alg);
        self.centralizer(alg, &elems)
    }

    pub fn intersect_is_trivial(&self, other: &Self) -> Result<bool> {
        let s = Self::span(self.width, self.basis.iter().chain(&other.basis).cloned())?;
        Ok(s.dim() == self.dim() + other.dim())
    }
}
