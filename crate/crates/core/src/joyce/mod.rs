//! Greedy strongly orthogonal sequences, the induced splitting of the
//! algebra, and the hypercomplex triple on the tangent space.

mod decomposition;
mod sequence;
mod structure;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

pub use decomposition::{metric, Isotropy, JoyceDecomposition, Layout};
pub use sequence::{maximal_elements, select_theta_sequence, ThetaSequence, TieBreak};
pub use structure::{
    assemble_structure, k_scalar, sigma_tau, Dimensions, HypercomplexTriple, Phase, TripleDocument, SCHEMA,
};

use crate::chevalley::Algebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// How central generators are added before construction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Augment {
    /// Use the algebra as given.
    #[default]
    None,
    /// Add the suggested number of generators when the center is too small.
    Auto,
    /// Add exactly this many generators.
    Torus(usize),
}

impl fmt::Display for Augment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Augment::None => f.write_str("none"),
            Augment::Auto => f.write_str("auto"),
            Augment::Torus(k) => write!(f, "T{k}"),
        }
    }
}

impl FromStr for Augment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "none" => Ok(Augment::None),
            "auto" => Ok(Augment::Auto),
            _ => lower
                .strip_prefix('t')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .map(Augment::Torus)
                .ok_or_else(|| Error::Usage {
                    position: 0,
                    message: format!("augmentation `{s}` must be auto, none or Tk with k > 0"),
                }),
        }
    }
}

/// Parameters of a construction run.
#[derive(Clone, Debug, Default)]
pub struct ConstructOptions {
    pub tie_break: TieBreak,
    pub zl_dim: Option<usize>,
    pub phase: Phase,
    /// Per-component metric scales of the input algebra; unit when absent.
    pub scales: Option<Vec<BigRational>>,
    pub augment: Augment,
}

/// Appends `a` central generators.
pub fn augment_with_torus(alg: &Algebra, a: usize) -> Result<Algebra> {
    alg.augment_with_torus(a)
}

fn decompose_with<F: Scalar>(alg: &Algebra, opts: &ConstructOptions) -> Result<JoyceDecomposition<F>> {
    let mut scales = opts.scales.clone().unwrap_or_else(|| vec![BigRational::one(); alg.components().len()]);
    scales.resize(alg.components().len(), BigRational::one());
    let seq = select_theta_sequence(alg.roots(), opts.tie_break);
    JoyceDecomposition::decompose(alg, seq, scales)
}

/// Full pipeline: augmentation, sequence, splitting, isotropy, triple.
pub fn construct<F: Scalar>(
    alg: &Algebra,
    opts: &ConstructOptions,
) -> Result<(JoyceDecomposition<F>, HypercomplexTriple<F>)> {
    let alg = match opts.augment {
        Augment::Torus(a) => alg.augment_with_torus(a)?,
        _ => alg.clone(),
    };
    let mut d = decompose_with::<F>(&alg, opts)?;
    if opts.augment == Augment::Auto && d.suggested_augmentation() > 0 {
        let bigger = alg.augment_with_torus(d.suggested_augmentation())?;
        d = decompose_with::<F>(&bigger, opts)?;
    }
    let d = d.choose_isotropy(opts.zl_dim)?;
    let t = assemble_structure(&d, &opts.phase)?;
    Ok((d, t))
}
