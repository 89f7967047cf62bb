use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::joyce::HypercomplexTriple;
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Seed used when `JOYCE_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x6a6f_7963;

/// Seed from `JOYCE_SEED`, or the default.
pub fn seed_from_env() -> u64 {
    std::env::var("JOYCE_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_env() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env())
}

/// Random `g`-orthogonal `P` commuting with `I`, as the Cayley transform of
/// `A = A₀ − IA₀I` with `A₀ = M − G⁻¹MᵀG` for a sparse random integer `M`.
pub fn random_isometry<F: Scalar>(
    t: &HypercomplexTriple<F>,
    rng: &mut impl Rng,
    entries: usize,
) -> Result<(Matrix<F>, Matrix<F>)> {
    let n = t.dim();
    let g = &t.metric;
    let g_inv = g.inverse()?;
    let id = Matrix::<F>::identity(n);
    for _ in 0..64 {
        let mut m = Matrix::<F>::zeros(n, n);
        for _ in 0..entries {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let v = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            m[(a, b)] = m[(a, b)].clone() + F::from_int(v);
        }
        let a0 = m.sub(&g_inv.mul(&m.transpose().mul(g)));
        let a = a0.sub(&t.i.mul(&a0.mul(&t.i)));
        if a.first_non_negligible().is_none() {
            continue;
        }
        let plus = id.add(&a);
        let minus = id.sub(&a);
        let p = minus.mul(&plus.inverse()?);
        let p_inv = plus.mul(&minus.inverse()?);
        return Ok((p, p_inv));
    }
    Err(Error::Argument("could not draw a nonzero perturbation".into()))
}

/// `J' = PJP⁻¹` for a random isometry `P` commuting with `I`; `I`, the
/// metric, `J'² = −1` and `IJ' = −J'I` are preserved.
pub fn perturb_j<F: Scalar>(
    t: &HypercomplexTriple<F>,
    rng: &mut impl Rng,
    entries: usize,
) -> Result<HypercomplexTriple<F>> {
    let (p, p_inv) = random_isometry(t, rng, entries)?;
    Ok(t.with_j(p.mul(&t.j.mul(&p_inv))))
}

/// `J` with the sign of its `(row, col)` entry flipped; `K` is recomputed.
pub fn flip_j_entry<F: Scalar>(t: &HypercomplexTriple<F>, row: usize, col: usize) -> HypercomplexTriple<F> {
    let mut j = t.j.clone();
    j[(row, col)] = -j[(row, col)].clone();
    t.with_j(j)
}
