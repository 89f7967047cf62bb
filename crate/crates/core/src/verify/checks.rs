use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use rayon::prelude::*;

use super::report::{CheckResult, Residual, VerificationReport};
use crate::chevalley::LieElement;
use crate::error::Result;
use crate::joyce::{HypercomplexTriple, JoyceDecomposition};
use crate::linalg::{dot, Matrix, RowSpace};
use crate::roots::Root;
use crate::scalar::Scalar;

/// `ad(m_a)` projected to 𝔪, for every basis vector `m_a`.
#[derive(Clone, Debug)]
pub struct BracketTensor<F> {
    ad: Vec<Matrix<F>>,
}

impl<F: Scalar> BracketTensor<F> {
    pub fn new(d: &JoyceDecomposition<F>) -> Self {
        let n = d.m_dim();
        let elems: Vec<LieElement<F>> = (0..n).map(|a| d.m_element(a)).collect();
        let alg = d.algebra();
        let ad = (0..n)
            .into_par_iter()
            .map(|a| {
                let cols: Vec<Vec<F>> = (0..n)
                    .map(|b| d.m_coords(&alg.bracket(&elems[a], &elems[b])))
                    .collect();
                Matrix::from_columns(&cols, n)
            })
            .collect();
        BracketTensor { ad }
    }

    pub fn dim(&self) -> usize {
        self.ad.len()
    }

    pub fn ad(&self, a: usize) -> &Matrix<F> {
        &self.ad[a]
    }

    /// `Σ_a c_a ad(m_a)`.
    pub fn combine(&self, c: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n);
        for (ca, m) in c.iter().zip(&self.ad) {
            if !ca.is_zero() {
                out = out.add(&m.scale(ca));
            }
        }
        out
    }

    /// `[u, v]_𝔪` in 𝔪 coordinates.
    pub fn bracket(&self, u: &[F], v: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (ua, m) in u.iter().zip(&self.ad) {
            if ua.is_zero() {
                continue;
            }
            let w = m.apply(v);
            for (o, x) in out.iter_mut().zip(w) {
                if !x.is_zero() {
                    *o = o.clone() + ua.clone() * x;
                }
            }
        }
        out
    }
}

fn big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn merge_all(parts: Vec<Residual>) -> Residual {
    parts.into_iter().fold(Residual::default(), Residual::merge)
}

fn sub_vec<F: Scalar>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

fn scale_vec<F: Scalar>(s: &F, a: &[F]) -> Vec<F> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}

/// Checks of one triple against one decomposition.
pub struct Verifier<'a, F> {
    d: &'a JoyceDecomposition<F>,
    t: &'a HypercomplexTriple<F>,
    br: &'a BracketTensor<F>,
    labels: &'a [String],
}

/// Which structure a Nijenhuis check applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    I,
    J,
    K,
}

impl<'a, F: Scalar> Verifier<'a, F> {
    pub fn new(d: &'a JoyceDecomposition<F>, br: &'a BracketTensor<F>, t: &'a HypercomplexTriple<F>) -> Self {
        Verifier {
            d,
            t,
            br,
            labels: d.m_labels(),
        }
    }

    fn n(&self) -> usize {
        self.t.dim()
    }

    fn pair(&self, a: usize, b: usize) -> String {
        format!("({}, {})", self.labels[a], self.labels[b])
    }

    fn structure(&self, s: Structure) -> &Matrix<F> {
        match s {
            Structure::I => &self.t.i,
            Structure::J => &self.t.j,
            Structure::K => &self.t.k,
        }
    }

    /// Bilinear extension of the metric to complex 𝔪 coordinates.
    fn g(&self, x: &[F], y: &[F]) -> F {
        dot(x, &self.t.metric.apply(y))
    }

    pub fn quaternion(&self) -> CheckResult {
        let n = self.n();
        let id = Matrix::<F>::identity(n);
        let (i, j, k) = (&self.t.i, &self.t.j, &self.t.k);
        let rels = [
            ("I^2 + 1", i.mul(i).add(&id)),
            ("J^2 + 1", j.mul(j).add(&id)),
            ("K^2 + 1", k.mul(k).add(&id)),
            ("IJ - K", i.mul(j).sub(k)),
            ("JI + K", j.mul(i).add(k)),
        ];
        let mut r = Residual::default();
        for (name, m) in &rels {
            for a in 0..n {
                for b in 0..n {
                    r.observe(&m[(a, b)], || format!("{name} at ({}, {})", self.labels[a], self.labels[b]));
                }
            }
        }
        r.finish("quaternion")
    }

    /// `N_A(X,Y) = [AX,AY] − [X,Y] − A[AX,Y] − A[X,AY]` on basis pairs.
    pub fn nijenhuis(&self, which: Structure) -> CheckResult {
        let n = self.n();
        let a_mat = self.structure(which);
        let parts: Vec<Residual> = (0..n)
            .into_par_iter()
            .map(|a| {
                let ad = self.br.ad(a);
                let ad_a = self.br.combine(&a_mat.column(a));
                let m = ad_a
                    .mul(a_mat)
                    .sub(ad)
                    .sub(&a_mat.mul(&ad_a))
                    .sub(&a_mat.mul(&ad.mul(a_mat)));
                let mut r = Residual::default();
                for b in a + 1..n {
                    for row in 0..n {
                        r.observe(&m[(row, b)], || self.pair(a, b));
                    }
                }
                r
            })
            .collect();
        let name = match which {
            Structure::I => "nijenhuis_I",
            Structure::J => "nijenhuis_J",
            Structure::K => "nijenhuis_K",
        };
        merge_all(parts).finish(name)
    }

    /// Mixed tensor
    /// `[IX,JY] + [JX,IY] − I[JX,Y] − J[IX,Y] − I[X,JY] − J[X,IY]` projected
    /// to 𝔪, on basis pairs.
    pub fn nijenhuis_mixed(&self) -> CheckResult {
        let n = self.n();
        let (i, j) = (&self.t.i, &self.t.j);
        let tmats: Vec<Matrix<F>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let ad = self.br.ad(a);
                let adi = self.br.combine(&i.column(a));
                adi.mul(j).sub(&i.mul(&ad.mul(j))).sub(&j.mul(&ad.mul(i)))
            })
            .collect();
        let parts: Vec<Residual> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut r = Residual::default();
                for b in a + 1..n {
                    for row in 0..n {
                        let v = tmats[a][(row, b)].clone() - tmats[b][(row, a)].clone();
                        r.observe(&v, || self.pair(a, b));
                    }
                }
                r
            })
            .collect();
        merge_all(parts).finish("nijenhuis_mixed")
    }

    /// Spanning vectors `e − iIe` of the +i eigenspace of `I`, restricted to
    /// the given positions and made independent.
    fn holomorphic_basis(&self, positions: &[usize]) -> Vec<(usize, Vec<F>)> {
        let n = self.n();
        let i = F::imag_unit();
        let mut rs = RowSpace::new(n);
        let mut out = Vec::new();
        for &p in positions {
            let ie = self.t.i.column(p);
            let v: Vec<F> = (0..n)
                .map(|q| {
                    let e = if q == p { F::one() } else { F::zero() };
                    e - i.clone() * ie[q].clone()
                })
                .collect();
            if rs.insert(v.clone()).unwrap_or(false) {
                out.push((p, v));
            }
            if rs.rank() * 2 >= positions.len() {
                break;
            }
        }
        out
    }

    /// On `X ∈ 𝔪^{1,0}`, `Y ∈ 𝔪^{0,1}` the mixed tensor reduces to
    /// `i[X,JY] − i[JX,Y] − I[JX,Y] − I[X,JY]`.
    pub fn nijenhuis_mixed_reduced(&self) -> CheckResult {
        let all: Vec<usize> = (0..self.n()).collect();
        let hol = self.holomorphic_basis(&all);
        let i = F::imag_unit();
        let mut r = Residual::default();
        for (p, x) in &hol {
            let jx = self.t.j.apply(x);
            for (q, w) in &hol {
                let y: Vec<F> = w.iter().map(Scalar::conj).collect();
                let jy = self.t.j.apply(&y);
                let b1 = self.br.bracket(x, &jy);
                let b2 = self.br.bracket(&jx, &y);
                let ib1 = self.t.i.apply(&b1);
                let ib2 = self.t.i.apply(&b2);
                for row in 0..self.n() {
                    let v = i.clone() * b1[row].clone()
                        - i.clone() * b2[row].clone()
                        - ib2[row].clone()
                        - ib1[row].clone();
                    r.observe(&v, || format!("({}^(1,0), {}^(0,1))", self.labels[*p], self.labels[*q]));
                }
            }
        }
        r.finish("nijenhuis_mixed_reduced")
    }

    /// The +i eigenspace of `I` on the root part is closed under the bracket
    /// modulo the isotropy and Cartan parts.
    pub fn holomorphic_closure(&self) -> CheckResult {
        let layout = self.d.layout();
        let roots = layout.root_positions();
        let hol = self.holomorphic_basis(&roots);
        let i = F::imag_unit();
        let n = self.n();
        let mut r = Residual::default();
        for (x, (p, v)) in hol.iter().enumerate() {
            for (q, w) in &hol[x + 1..] {
                let z = self.br.bracket(v, w);
                let mut proj = vec![F::zero(); n];
                for &pos in &roots {
                    proj[pos] = z[pos].clone();
                }
                let ip = self.t.i.apply(&proj);
                for row in 0..n {
                    let v = ip[row].clone() - i.clone() * proj[row].clone();
                    r.observe(&v, || self.pair(*p, *q));
                }
            }
        }
        r.finish("holomorphic_closure")
    }

    /// `g([X,Y]_𝔪, Z) + g(Y, [X,Z]_𝔪) = 0`.
    pub fn natural_reductivity(&self) -> CheckResult {
        let n = self.n();
        let g = &self.t.metric;
        let parts: Vec<Residual> = (0..n)
            .into_par_iter()
            .map(|a| {
                let ga = g.mul(self.br.ad(a));
                let mut r = Residual::default();
                for b in 0..n {
                    for c in b..n {
                        let v = ga[(c, b)].clone() + ga[(b, c)].clone();
                        r.observe(&v, || format!("({}, {}, {})", self.labels[a], self.labels[b], self.labels[c]));
                    }
                }
                r
            })
            .collect();
        merge_all(parts).finish("natural_reductivity")
    }

    pub fn hermitian(&self, which: Structure) -> CheckResult {
        let a = self.structure(which);
        let g = &self.t.metric;
        let m = a.transpose().mul(&g.mul(a)).sub(g);
        let mut r = Residual::default();
        let n = self.n();
        for x in 0..n {
            for y in 0..n {
                r.observe(&m[(x, y)], || self.pair(x, y));
            }
        }
        let name = match which {
            Structure::I => "hermitian_I",
            Structure::J => "hermitian_J",
            Structure::K => "hermitian_K",
        };
        r.finish(name)
    }

    pub fn positive_definite(&self) -> CheckResult {
        let signs = self.t.metric.leading_minor_signs();
        let bad = match &signs {
            None => Some("metric is not real".to_string()),
            Some(s) => s
                .iter()
                .position(|o| *o != std::cmp::Ordering::Greater)
                .map(|k| format!("leading minor {} is not positive", k + 1)),
        };
        CheckResult::boolean("positive_definite", bad.is_none(), bad)
    }

    /// `g(t, n) = 0`.
    pub fn torus_orthogonality(&self) -> CheckResult {
        let layout = self.d.layout();
        let mut r = Residual::default();
        for &t in &layout.torus_positions() {
            for &p in &layout.root_positions() {
                r.observe(&self.t.metric[(t, p)], || self.pair(t, p));
            }
        }
        r.finish("torus_orthogonality")
    }

    /// Total antisymmetry of `(X,Y,Z) ↦ g(−[X,Y]_𝔪, Z)`.
    pub fn hkt_torsion(&self) -> CheckResult {
        let n = self.n();
        let g = &self.t.metric;
        let gads: Vec<Matrix<F>> = (0..n).into_par_iter().map(|a| g.mul(self.br.ad(a))).collect();
        // torsion(a, b, c) = −(G ad_a)[c][b]
        let tau = |a: usize, b: usize, c: usize| -> F { -gads[a][(c, b)].clone() };
        let parts: Vec<Residual> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut r = Residual::default();
                for b in 0..n {
                    for c in 0..n {
                        let t = tau(a, b, c);
                        let w = || format!("({}, {}, {})", self.labels[a], self.labels[b], self.labels[c]);
                        r.observe(&(t.clone() + tau(b, a, c)), w);
                        r.observe(&(t + tau(a, c, b)), w);
                    }
                }
                r
            })
            .collect();
        merge_all(parts).finish("hkt_torsion")
    }

    /// Cyclic sum of `g(JX, [Y,Z]_𝔪)` over triples from `𝔪^{1,0}`.
    pub fn cyclic_sum(&self) -> CheckResult {
        let all: Vec<usize> = (0..self.n()).collect();
        let hol = self.holomorphic_basis(&all);
        let m = hol.len();
        let jv: Vec<Vec<F>> = hol.iter().map(|(_, v)| self.t.j.apply(v)).collect();
        let brackets: Vec<Vec<Vec<F>>> = (0..m)
            .into_par_iter()
            .map(|q| (0..m).map(|r| if q < r { self.br.bracket(&hol[q].1, &hol[r].1) } else { Vec::new() }).collect())
            .collect();
        let br = |q: usize, r: usize| -> (F, &Vec<F>) {
            if q < r {
                (F::one(), &brackets[q][r])
            } else {
                (-F::one(), &brackets[r][q])
            }
        };
        let term = |p: usize, q: usize, r: usize| -> F {
            let (s, b) = br(q, r);
            s * self.g(&jv[p], b)
        };
        let mut res = Residual::default();
        for p in 0..m {
            for q in p + 1..m {
                for r in q + 1..m {
                    let v = term(p, q, r) + term(q, r, p) + term(r, p, q);
                    res.observe(&v, || {
                        format!(
                            "({}, {}, {})^(1,0)",
                            self.labels[hol[p].0], self.labels[hol[q].0], self.labels[hol[r].0]
                        )
                    });
                }
            }
        }
        res.finish("cyclic_sum")
    }

    /// Brackets of the isotropy data: `[𝔩,u_j] = 0`, `[u_j,u_m] = 0`,
    /// `[u_j,𝔣_j] ⊆ 𝔣_j`, and g-orthogonality of the summands.
    pub fn isotropy_relations(&self) -> CheckResult {
        let d = self.d;
        let alg = d.algebra();
        let layout = d.layout();
        let n = self.n();
        let us: Vec<LieElement<F>> = layout.q.iter().map(|&o| d.m_element(o + 3)).collect();
        let ls = d.l_elements();
        let mut r = Residual::default();
        for (j, u) in us.iter().enumerate() {
            for (b, l) in ls.iter().enumerate() {
                for (_, c) in alg.bracket(l, u).terms() {
                    r.observe(c, || format!("[l{b}, u{}]", j + 1));
                }
            }
            for (m, w) in us.iter().enumerate().skip(j + 1) {
                for (_, c) in alg.bracket(u, w).terms() {
                    r.observe(c, || format!("[u{}, u{}]", j + 1, m + 1));
                }
            }
            let f = layout.f[j].clone();
            for col in f.clone() {
                let c = d.adapted_coords(&alg.bracket(u, &d.m_element(col)));
                for (pos, x) in c.iter().enumerate() {
                    if !f.contains(&pos) {
                        r.observe(x, || format!("[u{}, {}]", j + 1, self.labels[col]));
                    }
                }
            }
        }
        // block structure of the metric on 𝔪, and 𝔩 ⊥ 𝔪
        let block_of = |p: usize| -> usize {
            if let Some(j) = layout.q.iter().position(|&o| (o..o + 4).contains(&p)) {
                return 2 * j;
            }
            if let Some(j) = layout.f.iter().position(|f| f.contains(&p)) {
                return 2 * j + 1;
            }
            usize::MAX
        };
        for a in 0..n {
            for b in 0..n {
                if block_of(a) != block_of(b) {
                    r.observe(&self.t.metric[(a, b)], || self.pair(a, b));
                }
            }
        }
        for (bi, l) in d.l_basis().iter().enumerate() {
            for (a, m) in d.m_basis().iter().enumerate() {
                r.observe(&d.metric(l, m), || format!("(l{bi}, {})", self.labels[a]));
            }
        }
        r.finish("isotropy_relations")
    }

    fn c_hat(&self, root: &Root) -> Result<F> {
        let n2 = self.d.algebra().roots().norm2(root);
        Ok(F::sqrt_rational(&(big(n2) / BigRational::from_integer(2.into())))?)
    }

    fn n_hat(&self, x: &Root, y: &Root) -> Result<F> {
        let alg = self.d.algebra();
        let rs = alg.roots();
        let (ix, iy) = (rs.index_of(x).expect("root"), rs.index_of(y).expect("root"));
        let n = F::from_int(alg.constants().get(ix, iy));
        Ok(n * self.c_hat(x)? * self.c_hat(y)? * self.c_hat(&x.add(y))?.inv()?)
    }

    /// 𝔪 coordinates of `Ê_α`.
    fn e_hat(&self, root: &Root) -> Result<Vec<F>> {
        let e = self.d.algebra().e::<F>(root)?;
        Ok(scale_vec(&self.c_hat(root)?, &self.d.m_coords(&e)))
    }

    /// Roots α with `α(θ_j^∨) = 1`, α ≠ θ_j, orthogonal to the earlier θ's.
    fn r_theta(&self, j: usize) -> Vec<Root> {
        let rs = self.d.algebra().roots();
        let thetas = self.d.thetas();
        let theta = &thetas[j];
        rs.roots()
            .iter()
            .filter(|a| {
                *a != theta
                    && rs.cartan_int(a, theta) == 1
                    && thetas[..j].iter().all(|p| rs.pairing(a, p) == Rational64::from(0))
            })
            .cloned()
            .collect()
    }

    /// Regression identities for `J` on root vectors, in the normalization
    /// `Ê_α = √(|α|²/2)·E_α`, `N̂_{α,β} = N_{α,β} c_α c_β / c_{α+β}`.
    pub fn lemma_regressions(&self) -> Result<Vec<CheckResult>> {
        let d = self.d;
        let alg = d.algebra();
        let rs = alg.roots();
        let (i_mat, j_mat) = (&self.t.i, &self.t.j);
        let iu = F::imag_unit();
        let layout = d.layout();
        let torus = layout.torus_positions();
        let mut k_mod = Residual::default();
        let mut je_theta = Residual::default();
        let mut centralized = Residual::default();
        let mut je_alpha = Residual::default();
        let mut in_n = Residual::default();
        let mut lambda = Residual::default();
        let ls = d.l_elements();

        for (j, theta) in d.thetas().iter().enumerate() {
            let Some(k) = self.t.k_scalars.get(j).cloned() else {
                continue;
            };
            let n2 = big(rs.norm2(theta));
            let two = F::from_int(2);
            let target = F::from_rational(&(BigRational::from_integer(1.into()) / (BigRational::from_integer(2.into()) * &n2)));
            k_mod.observe(&(k.clone() * k.conj() - target), || format!("k{}", j + 1));

            let e_theta = self.e_hat(theta)?;
            let h = d.m_coords(&alg.form_dual::<F>(theta));
            let ih = i_mat.apply(&h);
            let lhs = j_mat.apply(&e_theta);
            let rhs: Vec<F> = h
                .iter()
                .zip(&ih)
                .map(|(a, b)| k.clone() * (a.clone() + iu.clone() * b.clone()))
                .collect();
            je_theta.observe_all(&sub_vec(&lhs, &rhs), |p| format!("theta{} at {}", j + 1, self.labels[p]));

            let e_plain = alg.e::<F>(theta)?;
            for (b, l) in ls.iter().enumerate() {
                for (_, c) in alg.bracket(l, &e_plain).terms() {
                    centralized.observe(c, || format!("[l{b}, E{theta}]"));
                }
            }

            // ‖θ‖² = g(iH_θ, iH_θ)
            let ih_theta = scale_vec(&iu, &h);
            let norm_g = self.g(&ih_theta, &ih_theta);
            let n2f = F::from_rational(&n2);
            for alpha in self.r_theta(j) {
                let amt = alpha.sub(theta);
                let ea = self.e_hat(&alpha)?;
                let je = j_mat.apply(&ea);
                let coef = two.clone() * k.clone() * self.n_hat(&alpha, &theta.neg())?;
                let rhs = scale_vec(&coef, &self.e_hat(&amt)?);
                je_alpha.observe_all(&sub_vec(&je, &rhs), |p| format!("alpha {alpha} at {}", self.labels[p]));
                for &p in &torus {
                    in_n.observe(&je[p], || format!("alpha {alpha} at {}", self.labels[p]));
                }
                let tma = theta.sub(&alpha);
                let e_tma = self.e_hat(&tma)?;
                let lhs = self.g(&je, &e_tma);
                let expect = two.clone() * k.clone() * norm_g.clone() * n2f.inv()? * self.n_hat(&alpha, &tma)?;
                lambda.observe(&(lhs.clone() - expect), || format!("g(JE{alpha}, E{tma})"));
                let denom = self.g(&self.e_hat(&amt)?, &e_tma);
                if !denom.is_zero() {
                    let lam = lhs.div(&denom)?;
                    lambda.observe(&(lam - coef), || format!("lambda{alpha}"));
                }
            }
        }

        let mut root_norm = Residual::default();
        let mut checked = 0usize;
        let n = self.n();
        for k in alg.positive_root_indices() {
            let alpha = rs.root(k);
            let ih = alg.form_dual::<F>(alpha).scale(&iu);
            let c = d.adapted_coords(&ih);
            if c.iter().enumerate().any(|(p, x)| !x.is_zero() && !(p < n && torus.contains(&p))) {
                continue;
            }
            let ea = d.adapted_coords(&alg.e::<F>(alpha)?);
            let fa = d.adapted_coords(&alg.e::<F>(&alpha.neg())?);
            if ea[n..].iter().chain(&fa[n..]).any(|x| !x.is_zero()) {
                continue;
            }
            checked += 1;
            let ch = self.c_hat(alpha)?;
            let lhs = self.g(&scale_vec(&ch, &ea[..n]), &scale_vec(&ch, &fa[..n]));
            let norm = self.g(&c[..n], &c[..n]);
            let rhs = -(norm * F::from_rational(&big(rs.norm2(alpha))).inv()?);
            root_norm.observe(&(lhs - rhs), || format!("g(E{alpha}, E{})", alpha.neg()));
        }

        Ok(vec![
            k_mod.finish("lemma_k_modulus"),
            je_theta.finish("lemma_JE_theta"),
            centralized.finish("lemma_E_theta_centralized"),
            je_alpha.finish("lemma_JE_alpha"),
            in_n.finish("lemma_JE_in_n"),
            lambda.finish("lemma_lambda"),
            root_norm.finish("lemma_root_norm").with_note(format!("{checked} roots with iH in the torus part")),
        ])
    }
}

/// Runs every check on a triple.
pub fn verify_with<F: Scalar>(
    d: &JoyceDecomposition<F>,
    br: &BracketTensor<F>,
    t: &HypercomplexTriple<F>,
) -> Result<VerificationReport> {
    let v = Verifier::new(d, br, t);
    let mut rep = VerificationReport::new(&d.algebra().descriptor(), F::BACKEND);
    rep.push(v.quaternion());
    rep.push(v.nijenhuis(Structure::I));
    rep.push(v.nijenhuis(Structure::J));
    rep.push(v.nijenhuis(Structure::K));
    let mixed = v.nijenhuis_mixed();
    let mixed_ok = mixed.passed();
    rep.push(mixed);
    rep.push(v.nijenhuis_mixed_reduced());
    rep.push(v.holomorphic_closure());
    let nr = v.natural_reductivity();
    let hi = v.hermitian(Structure::I);
    let hj = v.hermitian(Structure::J);
    let precondition = nr.passed() && hi.passed() && hj.passed();
    rep.push(nr);
    rep.push(hi);
    rep.push(hj);
    rep.push(v.hermitian(Structure::K));
    rep.push(v.positive_definite());
    rep.push(v.torus_orthogonality());
    rep.push(v.hkt_torsion());
    if precondition {
        let cyc = v.cyclic_sum();
        let agree = cyc.passed() == mixed_ok;
        rep.push(cyc);
        rep.push(CheckResult::boolean(
            "cyclic_agreement",
            agree,
            Some("cyclic sum and mixed Nijenhuis tensor disagree".into()),
        ));
    } else {
        rep.push(CheckResult::skipped("cyclic_sum", "metric is not naturally reductive and Hermitian"));
        rep.push(CheckResult::skipped("cyclic_agreement", "metric is not naturally reductive and Hermitian"));
    }
    rep.push(v.isotropy_relations());
    for c in v.lemma_regressions()? {
        rep.push(c);
    }
    rep.push(CheckResult::boolean(
        "cnec",
        d.cnec(),
        Some(format!("dim z = {} < {}", d.z_prime().dim(), d.k())),
    ));
    Ok(rep)
}

pub fn verify<F: Scalar>(d: &JoyceDecomposition<F>, t: &HypercomplexTriple<F>) -> Result<VerificationReport> {
    let br = BracketTensor::new(d);
    verify_with(d, &br, t)
}

/// `(cyclic sum passes, mixed Nijenhuis passes)` for one triple.
pub fn cyclic_and_mixed<F: Scalar>(
    d: &JoyceDecomposition<F>,
    br: &BracketTensor<F>,
    t: &HypercomplexTriple<F>,
) -> (bool, bool) {
    let v = Verifier::new(d, br, t);
    (v.cyclic_sum().passed(), v.nijenhuis_mixed().passed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{Algebra, Component};
    use crate::joyce::{construct, Augment, ConstructOptions};
    use crate::roots::{Series, SimpleType};
    use crate::scalar::{Approx, Surd};
    use crate::verify::{flip_j_entry, perturb_j, Status};
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(cs: &[Component]) -> Algebra {
        Algebra::new(cs).unwrap()
    }

    fn a(n: usize) -> Component {
        Component::Simple(SimpleType::new(Series::A, n).unwrap())
    }

    #[test]
    fn exact_small_cases_pass_with_zero_residual() {
        for cs in [vec![a(1), Component::Torus(1)], vec![a(2)], vec![a(3), Component::Torus(1)]] {
            let (d, t) = construct::<Surd>(&alg(&cs), &ConstructOptions::default()).unwrap();
            let rep = verify(&d, &t).unwrap();
            for c in &rep.checks {
                assert!(c.status != Status::Fail, "{} failed on {:?}: {:?}", c.name, cs, c);
                assert_eq!(c.residual, 0.0, "{} on {:?}", c.name, cs);
            }
        }
    }

    #[test]
    fn flipped_entry_breaks_integrability() {
        let (d, t) = construct::<Surd>(&alg(&[a(2)]), &ConstructOptions::default()).unwrap();
        let (row, col) = (0..t.dim())
            .flat_map(|r| (0..t.dim()).map(move |c| (r, c)))
            .find(|&(r, c)| !t.j[(r, c)].is_zero())
            .unwrap();
        let bad = flip_j_entry(&t, row, col);
        let rep = verify(&d, &bad).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn perturbation_keeps_algebraic_identities() {
        let opts = ConstructOptions {
            augment: Augment::Auto,
            ..Default::default()
        };
        let (d, t) = construct::<Approx<f64>>(&alg(&[a(3)]), &opts).unwrap();
        let br = BracketTensor::new(&d);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = perturb_j(&t, &mut rng, 4).unwrap();
        let v = Verifier::new(&d, &br, &p);
        assert!(v.quaternion().passed());
        assert!(v.hermitian(Structure::J).passed());
        assert!(v.positive_definite().passed());
    }
}

#[cfg(test)]
mod flip_tests {
    use super::*;
    use crate::chevalley::{Algebra, Component};
    use crate::joyce::{construct, ConstructOptions};
    use crate::roots::{Series, SimpleType};
    use crate::scalar::Surd;

    /// `I` with the sign of its action on one root pair of an 𝔣 block reversed.
    fn flip_block(rank: usize, label: &str) -> bool {
        let alg = Algebra::new(&[Component::Simple(SimpleType::new(Series::A, rank).unwrap())]).unwrap();
        let (d, t) = construct::<Surd>(&alg, &ConstructOptions::default()).unwrap();
        let x = d.m_labels().iter().position(|l| l == &format!("X{label}")).unwrap();
        let y = d.m_labels().iter().position(|l| l == &format!("Y{label}")).unwrap();
        assert!(d.layout().f.iter().any(|f| f.contains(&x)));
        let mut bad = t.clone();
        for (r, c) in [(x, y), (y, x)] {
            bad.i[(r, c)] = -bad.i[(r, c)].clone();
        }
        let br = BracketTensor::new(&d);
        Verifier::new(&d, &br, &bad).holomorphic_closure().passed()
    }

    #[test]
    fn flipping_a_non_simple_root_breaks_closure() {
        assert!(!flip_block(4, "[1,1,0,0]"));
    }

    #[test]
    fn flipping_a_simple_root_of_su3_keeps_closure() {
        assert!(flip_block(2, "[1,0]"));
    }
}
