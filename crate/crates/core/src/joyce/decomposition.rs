use std::ops::Range;

use num_rational::BigRational;
use num_traits::Zero;

use super::ThetaSequence;
use crate::chevalley::{Algebra, LieElement, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Matrix};
use crate::roots::Root;
use crate::scalar::Scalar;

/// Positions of the summands inside the ordered basis of 𝔪.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    /// Start of each 4-block `(h_i, X_θi, Y_θi, u_i)`.
    pub q: Vec<usize>,
    /// Range of each 𝔣_i.
    pub f: Vec<Range<usize>>,
    /// Leftover torus.
    pub t_tilde: Range<usize>,
    pub dim: usize,
}

impl Layout {
    /// Positions lying in the Cartan part of 𝔪.
    pub fn torus_positions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.q.iter().flat_map(|&o| [o, o + 3]).collect();
        out.extend(self.t_tilde.clone());
        out
    }

    /// Positions spanning the root-space part 𝔫 of 𝔪.
    pub fn root_positions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.q.iter().flat_map(|&o| [o + 1, o + 2]).collect();
        out.extend(self.f.iter().flat_map(Clone::clone));
        out.sort_unstable();
        out
    }
}

/// Isotropy data: the split of z' into `u_i`, leftover torus and `z_l`, and
/// the resulting adapted basis of 𝔪 and 𝔩.
#[derive(Clone, Debug)]
pub struct Isotropy<F> {
    zl_dim: usize,
    u: Vec<Vec<F>>,
    t_tilde: Vec<Vec<F>>,
    z_l: Vec<Vec<F>>,
    l_basis: Vec<Vec<F>>,
    m_basis: Vec<Vec<F>>,
    m_labels: Vec<String>,
    layout: Layout,
    p_inv: Matrix<F>,
}

/// The splitting `𝔤 = 𝔟_k ⊕ ⊕𝔰_i ⊕ ⊕𝔣_i` attached to a strongly orthogonal
/// sequence, optionally completed by an isotropy choice.
#[derive(Clone, Debug)]
pub struct JoyceDecomposition<F> {
    algebra: Algebra,
    sequence: ThetaSequence,
    scales: Vec<BigRational>,
    s: Vec<[Vec<F>; 3]>,
    f_roots: Vec<Vec<usize>>,
    b: Subalgebra<F>,
    z_prime: Subalgebra<F>,
    isotropy: Option<Isotropy<F>>,
}

/// Metric `g = −form` on compact coordinates.
pub fn metric<F: Scalar>(alg: &Algebra, scales: &[BigRational], x: &[F], y: &[F]) -> F {
    -alg.form(&alg.from_compact_coords(x), &alg.from_compact_coords(y), scales)
}

fn gram_schmidt<F: Scalar>(alg: &Algebra, scales: &[BigRational], input: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let mut out: Vec<(Vec<F>, F)> = Vec::new();
    for w in input {
        let mut v = w.clone();
        for (b, nb) in &out {
            let c = metric(alg, scales, w, b).div(nb)?;
            axpy(&mut v, &-c, b);
        }
        let n = metric(alg, scales, &v, &v);
        out.push((v, n));
    }
    Ok(out.into_iter().map(|(v, _)| v).collect())
}

impl<F: Scalar> JoyceDecomposition<F> {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn sequence(&self) -> &ThetaSequence {
        &self.sequence
    }

    pub fn thetas(&self) -> &[Root] {
        self.sequence.thetas()
    }

    pub fn k(&self) -> usize {
        self.sequence.len()
    }

    pub fn scales(&self) -> &[BigRational] {
        &self.scales
    }

    /// Compact coordinates of `(h_i, X_θi, Y_θi)`.
    pub fn s_basis(&self, i: usize) -> &[Vec<F>; 3] {
        &self.s[i]
    }

    /// Positive root indices spanning 𝔣_i.
    pub fn f_roots(&self, i: usize) -> &[usize] {
        &self.f_roots[i]
    }

    pub fn f_dim(&self, i: usize) -> usize {
        2 * self.f_roots[i].len()
    }

    pub fn b(&self) -> &Subalgebra<F> {
        &self.b
    }

    pub fn z_prime(&self) -> &Subalgebra<F> {
        &self.z_prime
    }

    pub fn isotropy(&self) -> Option<&Isotropy<F>> {
        self.isotropy.as_ref()
    }

    /// Condition that the center of the centralizer has dimension at least k.
    pub fn cnec(&self) -> bool {
        self.z_prime.dim() >= self.k()
    }

    /// Smallest number of central generators making `cnec` hold.
    pub fn suggested_augmentation(&self) -> usize {
        self.k().saturating_sub(self.z_prime.dim())
    }

    pub fn metric(&self, x: &[F], y: &[F]) -> F {
        metric(&self.algebra, &self.scales, x, y)
    }

    /// Splits the algebra along `seq`; rejects sequences that are not
    /// strongly orthogonal.
    pub fn decompose(alg: &Algebra, seq: ThetaSequence, scales: Vec<BigRational>) -> Result<Self> {
        let rs = alg.roots();
        if scales.len() != alg.components().len() {
            return Err(Error::Argument("one scale per component required".into()));
        }
        if scales.iter().any(|s| s <= &BigRational::zero()) {
            return Err(Error::Argument("scales must be positive".into()));
        }
        for t in seq.thetas() {
            if !rs.contains(t) || !t.is_positive() {
                return Err(Error::Construction(format!("{t} is not a positive root")));
            }
        }
        if !rs.strongly_orthogonal(seq.thetas()) {
            return Err(Error::Construction("sequence is not strongly orthogonal".into()));
        }
        let i = F::imag_unit();
        let mut s = Vec::new();
        let mut s_elems = Vec::new();
        for t in seq.thetas() {
            let h = alg.coroot::<F>(t).scale(&i);
            let e = alg.e::<F>(t)?;
            let f = alg.e::<F>(&t.neg())?;
            let x = e.sub(&f);
            let y = e.add(&f).scale(&i);
            s.push([alg.compact_coords(&h), alg.compact_coords(&x), alg.compact_coords(&y)]);
            s_elems.extend([h, x, y]);
        }
        let positives = alg.positive_root_indices();
        let f_roots: Vec<Vec<usize>> = seq
            .thetas()
            .iter()
            .enumerate()
            .map(|(j, t)| {
                positives
                    .iter()
                    .copied()
                    .filter(|&a| {
                        let r = rs.root(a);
                        r != t
                            && !rs.pairing(r, t).is_zero()
                            && seq.thetas()[..j].iter().all(|p| rs.pairing(r, p).is_zero())
                    })
                    .collect()
            })
            .collect();
        let b = Subalgebra::full(alg).centralizer(alg, &s_elems)?;
        let total = b.dim() + 3 * seq.len() + f_roots.iter().map(|f| 2 * f.len()).sum::<usize>();
        if total != alg.dim() {
            return Err(Error::Invariant(format!(
                "decomposition dimensions add to {total}, expected {}",
                alg.dim()
            )));
        }
        let z_prime = b.center(alg)?;
        Ok(JoyceDecomposition {
            algebra: alg.clone(),
            sequence: seq,
            scales,
            s,
            f_roots,
            b,
            z_prime,
            isotropy: None,
        })
    }

    /// Fixes `z_l` (default: the largest admissible dimension) and builds the
    /// adapted basis of 𝔪.
    pub fn choose_isotropy(mut self, zl_dim: Option<usize>) -> Result<Self> {
        let alg = &self.algebra;
        let k = self.k();
        let dz = self.z_prime.dim();
        if dz < k {
            return Err(Error::Admissibility {
                reason: format!("cnec: dim z_ℓ = {dz} < {k}"),
                suggestion: format!("+T{}", k - dz),
            });
        }
        let zl = zl_dim.unwrap_or(dz - k);
        if zl > dz - k || !(dz - k - zl).is_multiple_of(4) {
            let need = zl + k;
            let mut a = need.saturating_sub(dz);
            while !(dz + a - need).is_multiple_of(4) {
                a += 1;
            }
            return Err(Error::Admissibility {
                reason: format!("isotropy: dim z' - dim z_l - k = {dz} - {zl} - {k} is not a nonnegative multiple of 4"),
                suggestion: format!("+T{a}"),
            });
        }
        let ortho = gram_schmidt(alg, &self.scales, self.z_prime.basis())?;
        let mut u = Vec::with_capacity(k);
        for (j, v) in ortho[..k].iter().enumerate() {
            let h = &self.s[j][0];
            let ratio = self.metric(h, h).div(&self.metric(v, v))?;
            let c = ratio.sqrt_real()?;
            u.push(v.iter().map(|x| x.clone() * c.clone()).collect::<Vec<F>>());
        }
        let mut t_tilde = Vec::new();
        for v in &ortho[k..dz - zl] {
            let c = self.metric(v, v).sqrt_real()?.inv()?;
            t_tilde.push(v.iter().map(|x| x.clone() * c.clone()).collect::<Vec<F>>());
        }
        let z_l: Vec<Vec<F>> = ortho[dz - zl..].to_vec();

        let mut l_basis = self.b.derived(alg)?.basis().to_vec();
        l_basis.extend(z_l.iter().cloned());

        let labels = alg.compact_labels();
        let positives = alg.positive_root_indices();
        let compact_pos = |root: usize| -> usize {
            alg.rank() + 2 * positives.iter().position(|&p| p == root).expect("positive root")
        };
        let unit = |pos: usize| -> Vec<F> {
            let mut v = vec![F::zero(); alg.dim()];
            v[pos] = F::one();
            v
        };
        let mut m_basis = Vec::new();
        let mut m_labels = Vec::new();
        let mut layout = Layout {
            q: Vec::new(),
            f: Vec::new(),
            t_tilde: 0..0,
            dim: 0,
        };
        for j in 0..k {
            layout.q.push(m_basis.len());
            let t = &self.sequence.thetas()[j];
            m_basis.extend(self.s[j].iter().cloned());
            m_basis.push(u[j].clone());
            m_labels.extend([format!("h{t}"), format!("X{t}"), format!("Y{t}"), format!("u{}", j + 1)]);
            let start = m_basis.len();
            for &a in &self.f_roots[j] {
                let p = compact_pos(a);
                m_basis.push(unit(p));
                m_basis.push(unit(p + 1));
                m_labels.push(labels[p].clone());
                m_labels.push(labels[p + 1].clone());
            }
            layout.f.push(start..m_basis.len());
        }
        let start = m_basis.len();
        for (j, v) in t_tilde.iter().enumerate() {
            m_basis.push(v.clone());
            m_labels.push(format!("t{}", j + 1));
        }
        layout.t_tilde = start..m_basis.len();
        layout.dim = m_basis.len();

        if m_basis.len() + l_basis.len() != alg.dim() {
            return Err(Error::Invariant(format!(
                "dim m + dim l = {} + {} differs from dim g = {}",
                m_basis.len(),
                l_basis.len(),
                alg.dim()
            )));
        }
        if m_basis.len() % 4 != 0 {
            return Err(Error::Invariant(format!("dim m = {} is not divisible by 4", m_basis.len())));
        }
        let columns: Vec<Vec<F>> = m_basis.iter().chain(&l_basis).cloned().collect();
        let p_inv = Matrix::from_columns(&columns, alg.dim())
            .inverse()
            .map_err(|_| Error::Invariant("m and l do not span the algebra".into()))?;
        self.isotropy = Some(Isotropy {
            zl_dim: zl,
            u,
            t_tilde,
            z_l,
            l_basis,
            m_basis,
            m_labels,
            layout,
            p_inv,
        });
        Ok(self)
    }

    fn iso(&self) -> &Isotropy<F> {
        self.isotropy
            .as_ref()
            .expect("isotropy must be chosen before using the m basis")
    }

    pub fn zl_dim(&self) -> usize {
        self.iso().zl_dim
    }

    pub fn layout(&self) -> &Layout {
        &self.iso().layout
    }

    pub fn m_dim(&self) -> usize {
        self.iso().m_basis.len()
    }

    pub fn l_dim(&self) -> usize {
        self.iso().l_basis.len()
    }

    pub fn m_basis(&self) -> &[Vec<F>] {
        &self.iso().m_basis
    }

    pub fn l_basis(&self) -> &[Vec<F>] {
        &self.iso().l_basis
    }

    pub fn m_labels(&self) -> &[String] {
        &self.iso().m_labels
    }

    pub fn u_vectors(&self) -> &[Vec<F>] {
        &self.iso().u
    }

    pub fn t_tilde(&self) -> &[Vec<F>] {
        &self.iso().t_tilde
    }

    pub fn z_l(&self) -> &[Vec<F>] {
        &self.iso().z_l
    }

    pub fn m_element(&self, a: usize) -> LieElement<F> {
        self.algebra.from_compact_coords(&self.iso().m_basis[a])
    }

    pub fn l_elements(&self) -> Vec<LieElement<F>> {
        self.iso()
            .l_basis
            .iter()
            .map(|v| self.algebra.from_compact_coords(v))
            .collect()
    }

    /// Coordinates over the 𝔪 basis followed by the 𝔩 basis.
    pub fn adapted_coords(&self, x: &LieElement<F>) -> Vec<F> {
        self.iso().p_inv.apply(&self.algebra.compact_coords(x))
    }

    /// 𝔪-component of `x` in 𝔪 coordinates.
    pub fn m_coords(&self, x: &LieElement<F>) -> Vec<F> {
        let mut c = self.adapted_coords(x);
        c.truncate(self.m_dim());
        c
    }

    /// Element of the complexified algebra with the given 𝔪 coordinates.
    pub fn from_m_coords(&self, c: &[F]) -> LieElement<F> {
        let mut v = vec![F::zero(); self.algebra.dim()];
        for (ca, b) in c.iter().zip(&self.iso().m_basis) {
            axpy(&mut v, ca, b);
        }
        self.algebra.from_compact_coords(&v)
    }

    /// Gram matrix of the metric on the 𝔪 basis.
    pub fn metric_gram(&self) -> Matrix<F> {
        let basis = &self.iso().m_basis;
        Matrix::from_rows(
            basis
                .iter()
                .map(|x| basis.iter().map(|y| self.metric(x, y)).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::Component;
    use crate::joyce::{select_theta_sequence, TieBreak};
    use crate::roots::{Series, SimpleType};
    use crate::scalar::Surd;
    use num_traits::One;

    fn build(comps: &[Component]) -> JoyceDecomposition<Surd> {
        let alg = Algebra::new(comps).unwrap();
        let seq = select_theta_sequence(alg.roots(), TieBreak::Lex);
        let scales = alg.unit_scales();
        JoyceDecomposition::decompose(&alg, seq, scales).unwrap()
    }

    fn simple(s: Series, r: usize) -> Component {
        Component::Simple(SimpleType::new(s, r).unwrap())
    }

    #[test]
    fn su3_dimensions() {
        let d = build(&[simple(Series::A, 2)]);
        assert_eq!((d.k(), d.f_dim(0), d.b().dim(), d.z_prime().dim()), (1, 4, 1, 1));
        let d = d.choose_isotropy(None).unwrap();
        assert_eq!((d.m_dim(), d.l_dim(), d.zl_dim()), (8, 0, 0));
    }

    #[test]
    fn sp2_and_so5_dimensions() {
        let d = build(&[simple(Series::C, 2)]);
        assert_eq!((d.f_dim(0), d.f_dim(1), d.b().dim(), d.z_prime().dim()), (4, 0, 0, 0));
        let alg = Algebra::new(&[simple(Series::B, 2)]).unwrap();
        // e1 + e2 = α1 + 2α2, e1 − e2 = α1
        let seq = ThetaSequence::from_roots(vec![Root(vec![1, 2]), Root(vec![1, 0])], TieBreak::Lex);
        let d = JoyceDecomposition::<Surd>::decompose(&alg, seq, alg.unit_scales()).unwrap();
        assert_eq!((d.f_dim(0), d.f_dim(1), d.b().dim()), (4, 0, 0));
    }

    #[test]
    fn non_orthogonal_sequence_rejected() {
        let alg = Algebra::new(&[simple(Series::C, 2)]).unwrap();
        // e1 + e2 and e1 − e2 sum to the root 2e1
        let seq = ThetaSequence::from_roots(vec![Root(vec![1, 1]), Root(vec![1, 0])], TieBreak::Lex);
        assert!(matches!(
            JoyceDecomposition::<Surd>::decompose(&alg, seq, alg.unit_scales()),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn su4_needs_a_torus() {
        let d = build(&[simple(Series::A, 3)]);
        assert_eq!(d.z_prime().dim(), 1);
        assert_eq!(d.suggested_augmentation(), 1);
        match d.choose_isotropy(None) {
            Err(Error::Admissibility { reason, suggestion }) => {
                assert_eq!(reason, "cnec: dim z_ℓ = 1 < 2");
                assert_eq!(suggestion, "+T1");
            }
            other => panic!("unexpected {other:?}"),
        }
        let d = build(&[simple(Series::A, 3), Component::Torus(1)]).choose_isotropy(None).unwrap();
        assert_eq!((d.z_prime().dim(), d.m_dim()), (2, 16));
    }

    #[test]
    fn su5_center_and_isotropy() {
        let d = build(&[simple(Series::A, 4)]);
        assert_eq!(d.z_prime().dim(), 2);
        let d = d.choose_isotropy(None).unwrap();
        assert_eq!(d.m_dim(), 24);
        let d = build(&[simple(Series::A, 4)]);
        assert!(matches!(d.choose_isotropy(Some(1)), Err(Error::Admissibility { .. })));
    }

    #[test]
    fn adapted_coords_roundtrip() {
        let d = build(&[simple(Series::A, 2)]).choose_isotropy(None).unwrap();
        for a in 0..d.m_dim() {
            let c = d.m_coords(&d.m_element(a));
            for (b, x) in c.iter().enumerate() {
                assert_eq!(*x, if a == b { Surd::one() } else { Surd::zero() });
            }
        }
    }
}
