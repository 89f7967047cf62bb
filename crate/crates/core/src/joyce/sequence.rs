use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::roots::{Root, RootSystem};

/// Choice among several maximal roots of a C-set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    /// Lexicographically largest coefficient vector.
    #[default]
    Lex,
    /// Largest coefficient vector compared from the last coordinate.
    Revlex,
}

impl TieBreak {
    fn key(self, r: &Root) -> Vec<i64> {
        match self {
            TieBreak::Lex => r.0.clone(),
            TieBreak::Revlex => r.0.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Lex => "lex",
            TieBreak::Revlex => "revlex",
        })
    }
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "lex" => Ok(TieBreak::Lex),
            "revlex" => Ok(TieBreak::Revlex),
            _ => Err(Error::Usage {
                position: 0,
                message: format!("unknown tie-break policy `{s}`"),
            }),
        }
    }
}

/// Strongly orthogonal roots chosen greedily, one component at a time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaSequence {
    thetas: Vec<Root>,
    /// C-set remaining after each choice, aligned with `thetas`.
    c_sets: Vec<Vec<Root>>,
    tie_break: TieBreak,
}

impl ThetaSequence {
    /// Wraps an explicit sequence; no maximality is implied.
    pub fn from_roots(thetas: Vec<Root>, tie_break: TieBreak) -> Self {
        let c_sets = vec![Vec::new(); thetas.len()];
        ThetaSequence {
            thetas,
            c_sets,
            tie_break,
        }
    }

    pub fn thetas(&self) -> &[Root] {
        &self.thetas
    }

    pub fn c_sets(&self) -> &[Vec<Root>] {
        &self.c_sets
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }
}

/// Elements θ of `set` with θ + α ∉ R for every α in `set`.
pub fn maximal_elements(rs: &RootSystem, set: &[Root]) -> Vec<Root> {
    set.iter()
        .filter(|t| set.iter().all(|a| !rs.contains(&t.add(a))))
        .cloned()
        .collect()
}

pub fn select_theta_sequence(rs: &RootSystem, tie_break: TieBreak) -> ThetaSequence {
    let mut thetas = Vec::new();
    let mut c_sets = Vec::new();
    for comp in 0..rs.types().len() {
        let positives: Vec<Root> = rs
            .positive_roots()
            .filter(|r| rs.component_of(r) == comp)
            .cloned()
            .collect();
        let mut live = positives;
        let mut theta = rs.highest_root(comp);
        loop {
            live = rs.c_set(&theta, &live);
            thetas.push(theta);
            c_sets.push(live.clone());
            let Some(next) = maximal_elements(rs, &live)
                .into_iter()
                .max_by_key(|r| tie_break.key(r))
            else {
                break;
            };
            theta = next;
        }
    }
    ThetaSequence {
        thetas,
        c_sets,
        tie_break,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{Series, SimpleType};

    fn seq(types: &[(Series, usize)], tb: TieBreak) -> Vec<Vec<i64>> {
        let t: Vec<SimpleType> = types.iter().map(|&(s, r)| SimpleType::new(s, r).unwrap()).collect();
        let rs = RootSystem::build(&t).unwrap();
        select_theta_sequence(&rs, tb)
            .thetas()
            .iter()
            .map(|r| r.0.clone())
            .collect()
    }

    #[test]
    fn small_sequences() {
        use Series::*;
        assert_eq!(seq(&[(A, 1)], TieBreak::Lex), vec![vec![1]]);
        assert_eq!(seq(&[(A, 2)], TieBreak::Lex), vec![vec![1, 1]]);
        // 2e1 = 2α1 + α2, then 2e2 = α2
        assert_eq!(seq(&[(C, 2)], TieBreak::Lex), vec![vec![2, 1], vec![0, 1]]);
        assert_eq!(seq(&[(A, 3)], TieBreak::Lex), vec![vec![1, 1, 1], vec![0, 1, 0]]);
        assert_eq!(seq(&[(A, 4)], TieBreak::Lex), vec![vec![1, 1, 1, 1], vec![0, 1, 1, 0]]);
    }

    #[test]
    fn direct_sums_are_per_component() {
        use Series::*;
        assert_eq!(seq(&[(A, 1), (A, 2)], TieBreak::Lex), vec![vec![1, 0, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn final_c_set_is_empty_and_choices_are_maximal() {
        use Series::*;
        for &(s, r) in &[(B, 3), (C, 3), (D, 4), (G, 2), (F, 4), (D, 5)] {
            let t = [SimpleType::new(s, r).unwrap()];
            let rs = RootSystem::build(&t).unwrap();
            for tb in [TieBreak::Lex, TieBreak::Revlex] {
                let q = select_theta_sequence(&rs, tb);
                assert!(q.c_sets().last().unwrap().is_empty());
                assert!(rs.strongly_orthogonal(q.thetas()));
                for (j, live) in q.c_sets().iter().enumerate().take(q.len() - 1) {
                    let next = &q.thetas()[j + 1];
                    assert!(live.contains(next));
                    assert!(live.iter().all(|a| !rs.contains(&next.add(a))));
                }
            }
        }
    }
}
