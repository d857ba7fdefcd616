mod common;

use common::amb;
use sercode::error::Error;
use sercode::monmod::{
    box_condition, count_monomials, decompose, echelon_decompose, enumerate_covered,
    is_xn_regular, minimal_generators, xn_regular_profile, Block,
};
use sercode::poly::MonVec;

fn mv(exps: &[u32], comp: usize) -> MonVec {
    MonVec { exps: exps.to_vec(), comp }
}

fn example_ideal() -> Vec<MonVec> {
    // z^2, yz, y^2, x^4z over x, y, z
    vec![mv(&[0, 0, 2], 0), mv(&[0, 1, 1], 0), mv(&[0, 2, 0], 0), mv(&[4, 0, 1], 0)]
}

#[test]
fn minimal_generators_drop_multiples() {
    let gens = vec![mv(&[0, 0, 2], 0), mv(&[1, 0, 3], 0), mv(&[0, 1, 1], 0)];
    let min = minimal_generators(&gens);
    assert_eq!(min.len(), 2);
    assert!(!min.contains(&mv(&[1, 0, 3], 0)));
}

#[test]
fn regular_profile_detects_pure_powers() {
    let gens = vec![mv(&[0, 0, 2], 0), mv(&[0, 0, 3], 1)];
    assert_eq!(xn_regular_profile(&gens, 2), Some(vec![(0, 2), (1, 3)]));
    assert!(is_xn_regular(&gens, 2));
    assert!(!is_xn_regular(&example_ideal(), 2));
    // two pure powers in the same component reduce to one generator
    let same = vec![mv(&[0, 0, 2], 0), mv(&[0, 0, 5], 0)];
    assert_eq!(xn_regular_profile(&same, 2), Some(vec![(0, 2)]));
}

#[test]
fn echelon_of_example_ideal_has_published_scopes() {
    let a = amb(&["x", "y", "z"], 1);
    let dec = echelon_decompose(&a, &example_ideal()).unwrap();
    let mut got: Vec<(String, usize)> = dec
        .blocks
        .iter()
        .map(|b| (sercode::text::render_monvec(&b.base, &a), b.scope))
        .collect();
    got.sort();
    assert_eq!(
        got,
        vec![
            ("x^4*z".to_string(), 1),
            ("y*z".to_string(), 2),
            ("y^2".to_string(), 2),
            ("z^2".to_string(), 3),
        ]
    );
}

#[test]
fn complement_of_example_ideal() {
    let a = amb(&["x", "y", "z"], 1);
    let co = box_condition(&a, &example_ideal()).unwrap();
    let mut got: Vec<(String, usize)> = co
        .blocks
        .iter()
        .map(|b| (sercode::text::render_monvec(&b.base, &a), b.scope))
        .collect();
    got.sort();
    assert_eq!(
        got,
        vec![
            ("1".to_string(), 1),
            ("x*z".to_string(), 0),
            ("x^2*z".to_string(), 0),
            ("x^3*z".to_string(), 0),
            ("y".to_string(), 1),
            ("z".to_string(), 0),
        ]
    );
}

#[test]
fn box_condition_failure_names_a_witness() {
    let a = amb(&["x", "y", "z"], 1);
    let gens = vec![mv(&[1, 1, 0], 0), mv(&[1, 0, 1], 0), mv(&[0, 1, 1], 0)];
    match box_condition(&a, &gens) {
        Err(Error::BoxConditionFailed { witness, component, variable }) => {
            assert_eq!(witness, "y*z");
            assert_eq!(component, 1);
            assert_eq!(variable, "z");
        }
        other => panic!("expected box condition failure, got {other:?}"),
    }
}

#[test]
fn gabber_kashiwara_initial_fails_in_two_variables() {
    // in(I) = <xy> in K[[x,y]]: the complement K[[x]] + K[[y]] is not an
    // echelon direct sum
    let a = amb(&["x", "y"], 1);
    assert!(box_condition(&a, &[mv(&[1, 1], 0)]).is_err());
}

#[test]
fn block_membership_is_unambiguous() {
    // x^4z^2 belongs to the z^2 block (scope 3), not the x^4z block (scope 1)
    let a = amb(&["x", "y", "z"], 1);
    let dec = echelon_decompose(&a, &example_ideal()).unwrap();
    let m = mv(&[4, 0, 2], 0);
    let covers: Vec<&Block> = dec
        .blocks
        .iter()
        .filter(|b| {
            b.base.divides(&m) && (b.scope..3).all(|j| m.exps[j] == b.base.exps[j])
        })
        .collect();
    assert_eq!(covers.len(), 1);
    assert_eq!(sercode::text::render_monvec(&covers[0].base, &a), "z^2");
}

#[test]
fn counting_matches_enumeration() {
    let a = amb(&["x", "y", "z"], 1);
    let (dec, co) = decompose(&a, &example_ideal()).unwrap();
    for d in 0..=6 {
        let listed = enumerate_covered(&a, &dec.blocks, d);
        assert_eq!(count_monomials(&dec.blocks, d), listed.len() as u64);
        // module blocks and complement blocks tile everything exactly once
        let all: u64 = count_monomials(&dec.blocks, d) + count_monomials(&co.blocks, d);
        let total = enumerate_covered(
            &a,
            &[Block { base: mv(&[0, 0, 0], 0), scope: 3 }],
            d,
        )
        .len() as u64;
        assert_eq!(all, total);
    }
}

#[test]
fn module_blocks_are_disjoint() {
    let a = amb(&["x", "y", "z"], 1);
    let (dec, co) = decompose(&a, &example_ideal()).unwrap();
    let mut blocks = dec.blocks.clone();
    blocks.extend(co.blocks.clone());
    let mut seen = enumerate_covered(&a, &blocks, 5);
    let before = seen.len();
    seen.sort();
    seen.dedup();
    assert_eq!(before, seen.len());
}
