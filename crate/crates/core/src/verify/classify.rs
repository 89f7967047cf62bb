use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chevalley::{Algebra, Component, LieElement, Subalgebra};
use crate::error::Result;
use crate::joyce::{JoyceDecomposition, SCHEMA};
use crate::roots::{Root, RootSystem, SimpleType};
use crate::scalar::Scalar;

/// One strongly orthogonal set with the dimension of the center of the
/// centralizer of its `𝔰(θ)` subalgebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub series: char,
    pub rank: usize,
    pub thetas: Vec<Vec<i64>>,
    pub ell: usize,
    pub dim_z: usize,
    pub satisfies_cnec: bool,
}

/// Enumeration limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Largest set size enumerated.
    pub max_len: usize,
    /// Largest number of sets enumerated before the result is flagged partial.
    pub budget: usize,
    /// Drop the requirement that the highest root belongs to the set.
    pub any_first: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_len: usize::MAX,
            budget: 100_000,
            any_first: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub simple_type: String,
    pub rows: Vec<ClassificationRow>,
    /// Some row has `dim z ≥ ℓ`.
    pub a_compatible: bool,
    /// Enumeration stopped at the budget.
    pub partial: bool,
}

impl Classification {
    pub fn verdict(&self) -> &'static str {
        verdict_label(self.a_compatible)
    }

    /// Largest `dim z − ℓ` over the rows.
    pub fn surplus(&self) -> Option<i64> {
        self.rows.iter().map(|r| r.dim_z as i64 - r.ell as i64).max()
    }
}

pub fn verdict_label(ok: bool) -> &'static str {
    if ok {
        "A-compatible"
    } else {
        "not A-compatible"
    }
}

/// Classification of a direct sum: per-summand tables and the combined
/// verdict. Centers of centralizers add over summands, so the sum admits a
/// set with `dim z ≥ ℓ` iff the best surpluses add up to a nonnegative value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumClassification {
    pub schema: String,
    pub algebra: String,
    pub components: Vec<Classification>,
    pub verdict: String,
    pub a_compatible: bool,
    pub partial: bool,
}

impl SumClassification {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("classification serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(TSV_HEADER);
        for c in &self.components {
            out.push_str(&rows_tsv(&c.rows));
        }
        out
    }
}

const TSV_HEADER: &str = "series\trank\tthetas\tell\tdim_z\tcnec\n";

fn rows_tsv(rows: &[ClassificationRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let thetas: Vec<String> = r.thetas.iter().map(|t| Root(t.clone()).to_string()).collect();
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\n",
            r.series,
            r.rank,
            thetas.join(";"),
            r.ell,
            r.dim_z,
            r.satisfies_cnec
        ));
    }
    out
}

/// Row table as TSV with header.
pub fn to_tsv(rows: &[ClassificationRow]) -> String {
    format!("{TSV_HEADER}{}", rows_tsv(rows))
}

/// Strongly orthogonal sets of positive roots, each listed once in
/// increasing root order after its first element. With `any_first` unset
/// the first element is the highest root. Returns the sets and whether the
/// budget cut the enumeration short.
pub fn strongly_orthogonal_sets(rs: &RootSystem, opts: &ClassifyOptions) -> (Vec<Vec<Root>>, bool) {
    let positives: Vec<Root> = rs.positive_roots().cloned().collect();
    let starts: Vec<usize> = if opts.any_first {
        (0..positives.len()).collect()
    } else {
        let top = rs.highest_root(0);
        vec![positives.iter().position(|r| *r == top).expect("highest root is positive")]
    };
    let mut walk = Walk {
        rs,
        positives: &positives,
        opts,
        out: Vec::new(),
        partial: false,
    };
    for s in starts {
        let mut current = vec![s];
        let from = if opts.any_first { s + 1 } else { 0 };
        walk.extend(&mut current, from, s);
        if walk.partial {
            break;
        }
    }
    (walk.out, walk.partial)
}

struct Walk<'a> {
    rs: &'a RootSystem,
    positives: &'a [Root],
    opts: &'a ClassifyOptions,
    out: Vec<Vec<Root>>,
    partial: bool,
}

impl Walk<'_> {
    fn compatible(&self, a: usize, b: usize) -> bool {
        let (a, b) = (&self.positives[a], &self.positives[b]);
        !self.rs.contains(&a.add(b)) && !self.rs.contains(&a.sub(b))
    }

    fn extend(&mut self, current: &mut Vec<usize>, from: usize, skip_below: usize) {
        if self.out.len() >= self.opts.budget {
            self.partial = true;
            return;
        }
        self.out.push(current.iter().map(|&i| self.positives[i].clone()).collect());
        if current.len() >= self.opts.max_len {
            return;
        }
        for next in from..self.positives.len() {
            if (self.opts.any_first && next <= skip_below) || current.contains(&next) {
                continue;
            }
            if current.iter().all(|&c| self.compatible(c, next)) {
                current.push(next);
                self.extend(current, next + 1, skip_below);
                current.pop();
                if self.partial {
                    return;
                }
            }
        }
    }
}

/// Dimension of the center of the centralizer of the `𝔰(θ)` subalgebras.
pub fn center_dimension<F: Scalar>(alg: &Algebra, thetas: &[Root]) -> Result<usize> {
    let mut gens: Vec<LieElement<F>> = Vec::new();
    for t in thetas {
        gens.push(alg.e::<F>(t)?);
        gens.push(alg.e::<F>(&t.neg())?);
    }
    let c = Subalgebra::full(alg).centralizer(alg, &gens)?;
    Ok(c.center(alg)?.dim())
}

/// Enumerates strongly orthogonal sets for a simple type and records
/// `dim z_ℓ` for each.
pub fn classify<F: Scalar>(t: SimpleType, opts: &ClassifyOptions) -> Result<Classification> {
    let alg = Algebra::new(&[Component::Simple(t)])?;
    let (sets, partial) = strongly_orthogonal_sets(alg.roots(), opts);
    let dims: Vec<Result<usize>> = sets.par_iter().map(|s| center_dimension::<F>(&alg, s)).collect();
    let mut rows = Vec::with_capacity(sets.len());
    for (s, d) in sets.iter().zip(dims) {
        let dim_z = d?;
        rows.push(ClassificationRow {
            series: t.series.letter(),
            rank: t.rank,
            thetas: s.iter().map(|r| r.0.clone()).collect(),
            ell: s.len(),
            dim_z,
            satisfies_cnec: dim_z >= s.len(),
        });
    }
    let a_compatible = rows.iter().any(|r| r.satisfies_cnec);
    Ok(Classification {
        simple_type: t.to_string(),
        rows,
        a_compatible,
        partial,
    })
}

/// Classifies every simple summand; abelian summands contribute their
/// dimension to the surplus.
pub fn classify_sum<F: Scalar>(components: &[Component], opts: &ClassifyOptions) -> Result<SumClassification> {
    let mut parts = Vec::new();
    let mut torus = 0i64;
    for c in components {
        match c {
            Component::Simple(t) => parts.push(classify::<F>(*t, opts)?),
            Component::Torus(k) => torus += *k as i64,
        }
    }
    let surplus: i64 = parts.iter().map(|c| c.surplus().unwrap_or(0)).sum::<i64>() + torus;
    let a_compatible = if parts.is_empty() { true } else { surplus >= 0 };
    let descriptor = components.iter().map(ToString::to_string).collect::<Vec<_>>().join("+");
    Ok(SumClassification {
        schema: SCHEMA.to_string(),
        algebra: descriptor,
        partial: parts.iter().any(|c| c.partial),
        components: parts,
        verdict: verdict_label(a_compatible).to_string(),
        a_compatible,
    })
}

/// `dim z' ≥ k` for a decomposition.
pub fn check_cnec<F: Scalar>(d: &JoyceDecomposition<F>) -> bool {
    d.cnec()
}
