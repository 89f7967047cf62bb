use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{JoyceDecomposition, TieBreak};
use crate::chevalley::{rat_scalar, Algebra, LieElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots::Root;
use crate::scalar::Scalar;

/// Schema tag written at the top of every JSON artifact.
pub const SCHEMA: &str = "joyce/1";

/// Unit complex number `re + i·im` with rational parts, fixing the phase of
/// `k_θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    pub re: BigRational,
    pub im: BigRational,
}

impl Default for Phase {
    fn default() -> Self {
        Phase {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl Phase {
    pub fn new(re: BigRational, im: BigRational) -> Result<Self> {
        if &re * &re + &im * &im != BigRational::one() {
            return Err(Error::Argument(format!("phase {re} + {im}i does not have unit modulus")));
        }
        Ok(Phase { re, im })
    }

    /// Parses `a,b` with rational `a`, `b`.
    pub fn parse(s: &str) -> Result<Self> {
        let usage = |m: String| Error::Usage {
            position: 0,
            message: m,
        };
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| usage(format!("phase `{s}` must be written as a,b")))?;
        let parse = |x: &str| -> Result<BigRational> {
            x.trim()
                .parse::<BigRational>()
                .map_err(|_| usage(format!("`{x}` is not a rational number")))
        };
        Phase::new(parse(a)?, parse(b)?)
    }

    pub fn value<F: Scalar>(&self) -> F {
        F::from_gaussian(&self.re, &self.im)
    }

    pub fn to_pair(&self) -> [String; 2] {
        [self.re.to_string(), self.im.to_string()]
    }
}

/// `(σ_θ, τ_θ)` with `σ_θ = 2(k̄Ê_θ − kÊ_{−θ})` and `τ_θ = 2iH_θ/|θ|²`, where
/// `Ê_α = √(|α|²/2)·E_α` and `H_θ` is the form-dual of θ.
pub fn sigma_tau<F: Scalar>(alg: &Algebra, theta: &Root, k: &F) -> Result<(LieElement<F>, LieElement<F>)> {
    let n2 = alg.roots().norm2(theta);
    let expected = BigRational::new(
        BigInt::from(*n2.denom()),
        BigInt::from(2 * *n2.numer()),
    );
    if k.clone() * k.conj() != F::from_rational(&expected) {
        return Err(Error::Argument(format!(
            "|k|^2 must equal {expected} for the root {theta}"
        )));
    }
    let c = F::sqrt_rational(&BigRational::new(
        BigInt::from(*n2.numer()),
        BigInt::from(2 * *n2.denom()),
    ))?;
    let two = F::from_int(2);
    let e = alg.e::<F>(theta)?;
    let f = alg.e::<F>(&theta.neg())?;
    let sigma = e
        .scale(&(two.clone() * k.conj() * c.clone()))
        .sub(&f.scale(&(two.clone() * k.clone() * c)));
    let tau = alg
        .form_dual::<F>(theta)
        .scale(&(two * F::imag_unit() * rat_scalar::<F>(n2.recip())));
    Ok((sigma, tau))
}

/// `k_θ = ω/√(2|θ|²)`.
pub fn k_scalar<F: Scalar>(alg: &Algebra, theta: &Root, phase: &Phase) -> Result<F> {
    let n2 = alg.roots().norm2(theta);
    let r = BigRational::new(BigInt::from(*n2.denom()), BigInt::from(2 * *n2.numer()));
    Ok(phase.value::<F>() * F::sqrt_rational(&r)?)
}

/// Three complex structures on the ordered basis of 𝔪, with the metric.
/// Column `b` of each matrix holds the image of the `b`-th basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct HypercomplexTriple<F> {
    pub i: Matrix<F>,
    pub j: Matrix<F>,
    pub k: Matrix<F>,
    pub metric: Matrix<F>,
    pub k_scalars: Vec<F>,
    pub phase: Phase,
}

impl<F: Scalar> HypercomplexTriple<F> {
    pub fn dim(&self) -> usize {
        self.i.nrows()
    }

    /// Same triple with `J` replaced and `K = IJ` recomputed.
    pub fn with_j(&self, j: Matrix<F>) -> Self {
        let k = self.i.mul(&j);
        HypercomplexTriple {
            i: self.i.clone(),
            j,
            k,
            metric: self.metric.clone(),
            k_scalars: self.k_scalars.clone(),
            phase: self.phase.clone(),
        }
    }

    pub fn with_metric(&self, metric: Matrix<F>) -> Self {
        HypercomplexTriple {
            metric,
            ..self.clone()
        }
    }
}

/// Builds `(I, J, K)` on 𝔪: `ad(τ_i)`, `ad(σ_i)` on each 𝔣_i, a fixed
/// quaternionic frame on each `𝔰_i ⊕ ℝu_i`, and standard blocks on the
/// leftover torus.
pub fn assemble_structure<F: Scalar>(d: &JoyceDecomposition<F>, phase: &Phase) -> Result<HypercomplexTriple<F>> {
    if d.isotropy().is_none() {
        return Err(Error::Construction("isotropy has not been chosen".into()));
    }
    let alg = d.algebra();
    let n = d.m_dim();
    let layout = d.layout().clone();
    let mut i_mat = Matrix::<F>::zeros(n, n);
    let mut j_mat = Matrix::<F>::zeros(n, n);
    let one = F::one();
    let (a, b) = (F::from_rational(&phase.re), F::from_rational(&phase.im));
    let mut k_scalars = Vec::new();

    for (idx, theta) in d.thetas().iter().enumerate() {
        let k = k_scalar::<F>(alg, theta, phase)?;
        let (sigma, tau) = sigma_tau(alg, theta, &k)?;
        k_scalars.push(k);

        let o = layout.q[idx];
        let (h, x, y, u) = (o, o + 1, o + 2, o + 3);
        i_mat[(u, h)] = one.clone();
        i_mat[(h, u)] = -one.clone();
        i_mat[(y, x)] = one.clone();
        i_mat[(x, y)] = -one.clone();
        // JX = b·h + a·u, JY = a·h − b·u, and J = −(that block)^T on (h, u)
        j_mat[(h, x)] = b.clone();
        j_mat[(u, x)] = a.clone();
        j_mat[(h, y)] = a.clone();
        j_mat[(u, y)] = -b.clone();
        j_mat[(x, h)] = -b.clone();
        j_mat[(y, h)] = -a.clone();
        j_mat[(x, u)] = -a.clone();
        j_mat[(y, u)] = b.clone();

        for col in layout.f[idx].clone() {
            let e = d.m_element(col);
            let ie = d.m_coords(&alg.bracket(&tau, &e));
            let je = d.m_coords(&alg.bracket(&sigma, &e));
            for row in 0..n {
                i_mat[(row, col)] = ie[row].clone();
                j_mat[(row, col)] = je[row].clone();
            }
        }
    }

    let t = layout.t_tilde.clone();
    if !t.len().is_multiple_of(4) {
        return Err(Error::Invariant(format!("leftover torus of dimension {}", t.len())));
    }
    for o in t.step_by(4) {
        let (e1, e2, e3, e4) = (o, o + 1, o + 2, o + 3);
        for (to, from, s) in [(e2, e1, 1), (e1, e2, -1), (e4, e3, 1), (e3, e4, -1)] {
            i_mat[(to, from)] = F::from_int(s);
        }
        for (to, from, s) in [(e3, e1, 1), (e4, e2, -1), (e1, e3, -1), (e2, e4, 1)] {
            j_mat[(to, from)] = F::from_int(s);
        }
    }

    let k_mat = i_mat.mul(&j_mat);
    Ok(HypercomplexTriple {
        i: i_mat,
        j: j_mat,
        k: k_mat,
        metric: d.metric_gram(),
        k_scalars,
        phase: phase.clone(),
    })
}

/// Serialized decomposition and triple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleDocument {
    pub schema: String,
    pub algebra: String,
    pub backend: String,
    pub tie_break: TieBreak,
    pub thetas: Vec<Vec<i64>>,
    pub zl_dim: usize,
    pub phase: [String; 2],
    pub scales: Vec<String>,
    pub dims: Dimensions,
    pub compact_basis: Vec<String>,
    pub m_basis_labels: Vec<String>,
    /// Compact coordinates of each 𝔪 basis vector.
    pub m_basis: Vec<Vec<String>>,
    pub k_scalars: Vec<String>,
    #[serde(rename = "I")]
    pub i: Vec<Vec<String>>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
    #[serde(rename = "K")]
    pub k: Vec<Vec<String>>,
    pub metric: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dimensions {
    pub g: usize,
    pub k: usize,
    pub b: usize,
    pub z_prime: usize,
    pub l: usize,
    pub m: usize,
    pub f: Vec<usize>,
}

fn matrix_repr<F: Scalar>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(Scalar::to_repr).collect())
        .collect()
}

fn parse_matrix<F: Scalar>(rows: &[Vec<String>], n: usize, what: &str) -> Result<Matrix<F>> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Format(format!("{what} must be a {n}x{n} matrix")));
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| F::parse_repr(s).map_err(Error::from)).collect())
        .collect::<Result<Vec<Vec<F>>>>()?;
    Ok(Matrix::from_rows(parsed))
}

impl TripleDocument {
    pub fn new<F: Scalar>(d: &JoyceDecomposition<F>, t: &HypercomplexTriple<F>) -> Self {
        let alg = d.algebra();
        TripleDocument {
            schema: SCHEMA.to_string(),
            algebra: alg.descriptor(),
            backend: F::BACKEND.to_string(),
            tie_break: d.sequence().tie_break(),
            thetas: d.thetas().iter().map(|r| r.0.clone()).collect(),
            zl_dim: d.zl_dim(),
            phase: t.phase.to_pair(),
            scales: d.scales().iter().map(ToString::to_string).collect(),
            dims: Dimensions {
                g: alg.dim(),
                k: d.k(),
                b: d.b().dim(),
                z_prime: d.z_prime().dim(),
                l: d.l_dim(),
                m: d.m_dim(),
                f: (0..d.k()).map(|i| d.f_dim(i)).collect(),
            },
            compact_basis: alg.compact_labels(),
            m_basis_labels: d.m_labels().to_vec(),
            m_basis: d
                .m_basis()
                .iter()
                .map(|v| v.iter().map(Scalar::to_repr).collect())
                .collect(),
            k_scalars: t.k_scalars.iter().map(Scalar::to_repr).collect(),
            i: matrix_repr(&t.i),
            j: matrix_repr(&t.j),
            k: matrix_repr(&t.k),
            metric: matrix_repr(&t.metric),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TripleDocument =
            serde_json::from_str(s).map_err(|e| Error::Format(format!("invalid triple document: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::Format(format!("unsupported schema `{}`", doc.schema)));
        }
        Ok(doc)
    }

    pub fn phase(&self) -> Result<Phase> {
        Phase::parse(&self.phase.join(","))
    }

    pub fn scales(&self) -> Result<Vec<BigRational>> {
        self.scales
            .iter()
            .map(|s| {
                s.parse::<BigRational>()
                    .map_err(|_| Error::Format(format!("invalid scale `{s}`")))
            })
            .collect()
    }

    /// Rebuilds the triple stored in the document.
    pub fn triple<F: Scalar>(&self) -> Result<HypercomplexTriple<F>> {
        if self.backend != F::BACKEND {
            return Err(Error::Format(format!(
                "document was written by the {} backend, not {}",
                self.backend,
                F::BACKEND
            )));
        }
        let n = self.dims.m;
        Ok(HypercomplexTriple {
            i: parse_matrix(&self.i, n, "I")?,
            j: parse_matrix(&self.j, n, "J")?,
            k: parse_matrix(&self.k, n, "K")?,
            metric: parse_matrix(&self.metric, n, "metric")?,
            k_scalars: self
                .k_scalars
                .iter()
                .map(|s| F::parse_repr(s).map_err(Error::from))
                .collect::<Result<_>>()?,
            phase: self.phase()?,
        })
    }
}
