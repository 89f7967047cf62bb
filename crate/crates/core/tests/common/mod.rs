//! Oracles shared by the integration tests. They use only the integer
//! bracket table and plain coordinates, never the crate's linear algebra.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use joyce::chevalley::Algebra;
use num_rational::Rational64;

pub type Vector = BTreeMap<usize, i64>;

pub fn bracket(alg: &Algebra, x: &Vector, y: &Vector) -> Vector {
    let mut out = Vector::new();
    for (&i, &a) in x {
        for (&j, &b) in y {
            for &(k, c) in alg.bracket_basis(i, j) {
                *out.entry(k).or_insert(0) += a * b * c;
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

pub fn unit(i: usize) -> Vector {
    Vector::from([(i, 1)])
}

/// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` on basis vectors.
pub fn jacobiator(alg: &Algebra, a: usize, b: usize, c: usize) -> Vector {
    let (x, y, z) = (unit(a), unit(b), unit(c));
    let mut sum = Vector::new();
    for t in [
        bracket(alg, &x, &bracket(alg, &y, &z)),
        bracket(alg, &y, &bracket(alg, &z, &x)),
        bracket(alg, &z, &bracket(alg, &x, &y)),
    ] {
        for (k, v) in t {
            *sum.entry(k).or_insert(0) += v;
        }
    }
    sum.retain(|_, v| *v != 0);
    sum
}

/// Rank of a rational matrix by plain elimination.
pub fn rank(mut rows: Vec<Vec<Rational64>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != Rational64::from(0)) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != Rational64::from(0) {
                let f = rows[i][c] / rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Strongly orthogonal sets of su(4) containing e1 − e4, in the basis of
/// e_i − e_j, with the center dimension `3 − rank(Θ ∪ S)` where S are the
/// roots strongly orthogonal to every member of Θ.
pub fn su4_brute_force() -> BTreeSet<(BTreeSet<Vec<i64>>, usize, usize)> {
    let mut roots = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                let mut v = [0i64; 4];
                v[i] = 1;
                v[j] = -1;
                roots.push(v);
            }
        }
    }
    let is_root = |v: [i64; 4]| roots.contains(&v);
    let add = |a: [i64; 4], b: [i64; 4], s: i64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]];
    let so = |a: [i64; 4], b: [i64; 4]| !is_root(add(a, b, 1)) && !is_root(add(a, b, -1)) && a != b && a != add([0; 4], b, -1);
    let simple_coeffs = |v: [i64; 4]| vec![v[0], v[0] + v[1], v[0] + v[1] + v[2]];
    let positive: Vec<[i64; 4]> = roots.iter().copied().filter(|v| simple_coeffs(*v).iter().all(|&c| c >= 0)).collect();
    let top = [1, 0, 0, -1];
    let mut out = BTreeSet::new();
    let n = positive.len();
    for mask in 0..(1u32 << n) {
        let mut set: Vec<[i64; 4]> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| positive[i]).collect();
        if !set.contains(&top) || !set.iter().enumerate().all(|(i, a)| set[i + 1..].iter().all(|b| so(*a, *b))) {
            continue;
        }
        let s: Vec<[i64; 4]> = roots.iter().copied().filter(|b| set.iter().all(|t| so(*t, *b))).collect();
        let mut rows: Vec<Vec<Rational64>> = Vec::new();
        for v in set.iter().chain(&s) {
            rows.push(v.iter().map(|&x| Rational64::from(x)).collect());
        }
        let dim_z = 3 - rank(rows);
        set.sort();
        out.insert((set.iter().map(|v| simple_coeffs(*v)).collect(), set.len(), dim_z));
    }
    out
}

/// Parses the `thetas`, `ell` and `dim_z` columns of a classification TSV.
pub fn parse_table(text: &str) -> BTreeSet<(BTreeSet<Vec<i64>>, usize, usize)> {
    let mut rows = BTreeSet::new();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split('\t').collect();
        let thetas: BTreeSet<Vec<i64>> = f[2]
            .split(';')
            .map(|t| t.trim_matches(|c| c == '[' || c == ']').split(',').map(|x| x.parse().unwrap()).collect())
            .collect();
        rows.insert((thetas, f[3].parse().unwrap(), f[4].parse().unwrap()));
    }
    rows
}
