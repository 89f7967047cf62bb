use std::collections::BTreeSet;

use joyce::chevalley::{Algebra, Component};
use joyce::joyce::{construct, Augment, ConstructOptions, TieBreak};
use joyce::roots::{Root, Series, SimpleType};
use joyce::verify::{classify, verify, BracketTensor, ClassifyOptions, Verifier};
use joyce::{Error, Surd};
use proptest::prelude::*;

fn simple(s: Series, n: usize) -> Component {
    Component::Simple(SimpleType::new(s, n).unwrap())
}

fn shapes() -> Vec<Vec<Component>> {
    use Series::*;
    vec![
        vec![simple(A, 1)],
        vec![simple(A, 2)],
        vec![simple(A, 3)],
        vec![simple(A, 4)],
        vec![simple(B, 2)],
        vec![simple(C, 2)],
        vec![simple(G, 2)],
        vec![simple(B, 3)],
        vec![simple(C, 3)],
        vec![simple(A, 1), simple(A, 2)],
        vec![simple(A, 2), simple(A, 2)],
        vec![simple(A, 1), Component::Torus(3)],
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn decomposition_invariants(
        cs in prop::sample::select(shapes()),
        tb in prop::sample::select(vec![TieBreak::Lex, TieBreak::Revlex]),
    ) {
        let alg = Algebra::new(&cs).unwrap();
        let opts = ConstructOptions { tie_break: tb, augment: Augment::Auto, ..Default::default() };
        let (d, t) = construct::<Surd>(&alg, &opts).unwrap();
        let total = d.b().dim() + 3 * d.k() + (0..d.k()).map(|i| d.f_dim(i)).sum::<usize>();
        prop_assert_eq!(d.algebra().dim(), total);
        prop_assert_eq!(d.algebra().dim(), d.m_dim() + d.l_dim());

        let br = BracketTensor::new(&d);
        let v = Verifier::new(&d, &br, &t);
        prop_assert!(v.isotropy_relations().passed());
        prop_assert!(v.torus_orthogonality().passed());

        let rs = d.algebra().roots();
        let seq = d.sequence();
        for (j, theta) in seq.thetas().iter().enumerate() {
            let comp = rs.component_of(theta);
            let first = j == 0 || rs.component_of(&seq.thetas()[j - 1]) != comp;
            let live: Vec<Root> = if first {
                rs.positive_roots().filter(|r| rs.component_of(r) == comp).cloned().collect()
            } else {
                seq.c_sets()[j - 1].clone()
            };
            prop_assert!(live.contains(theta));
            for a in &live {
                prop_assert!(!rs.contains(&theta.add(a)), "{} + {}", theta, a);
            }
        }
        prop_assert!(seq.c_sets().last().unwrap().is_empty());
    }
}

/// When the greedy sequence appears in the classification with
/// `dim z ≥ ℓ`, construction without augmentation verifies; otherwise it is
/// refused as inadmissible.
#[test]
fn classifier_agrees_with_constructor() {
    use Series::*;
    for (s, n) in [(A, 1), (A, 2), (A, 3), (A, 4), (B, 2), (B, 3), (C, 2), (C, 3), (G, 2), (D, 4)] {
        let t = SimpleType::new(s, n).unwrap();
        let alg = Algebra::new(&[Component::Simple(t)]).unwrap();
        let table = classify::<Surd>(t, &ClassifyOptions::default()).unwrap();
        let r = construct::<Surd>(&alg, &ConstructOptions::default());
        let greedy: BTreeSet<Root> = joyce::joyce::select_theta_sequence(alg.roots(), TieBreak::Lex)
            .thetas()
            .iter()
            .cloned()
            .collect();
        let row = table
            .rows
            .iter()
            .find(|r| r.thetas.iter().map(|t| Root(t.clone())).collect::<BTreeSet<_>>() == greedy)
            .unwrap_or_else(|| panic!("{t}: greedy sequence missing from the table"));
        if row.satisfies_cnec {
            let (d, tr) = r.unwrap_or_else(|e| panic!("{t}: {e}"));
            assert!(verify(&d, &tr).unwrap().passed(), "{t}");
        } else {
            assert!(matches!(r, Err(Error::Admissibility { .. })), "{t}");
        }
    }
}
