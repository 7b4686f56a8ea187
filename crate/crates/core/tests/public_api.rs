//! End-to-end use of each module through the public API.

use srreg_core::complexes::{degree_complex, sr_complex, sr_ideal, Girth, SimplicialComplex};
use srreg_core::graphs::{edge_ideal, enumerate_graphs, Graph, GraphFilter};
use srreg_core::homology::{reduced_homology, Field};
use srreg_core::monomials::{
    clique_order, colon, intersect, ord, power, radical, Exponent, MonomialIdeal,
};
use srreg_core::regularity::{
    reg_polarization_oracle, reg_squarefree_links, reg_takayama, verify_witness, RegOptions,
    DEFAULT_MAX_POLARIZED_VARS,
};
use srreg_core::symbolic::{
    differential_membership, intermediate_ideals, symbolic_membership, symbolic_power, Selection,
};
use srreg_core::vertex_set::VertexSet;
use srreg_core::Error;

fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::from_coords(n, gens.iter().map(|g| g.to_vec())).unwrap()
}

fn chain() -> SimplicialComplex {
    SimplicialComplex::from_labels(
        6,
        &[
            vec![1, 2],
            vec![2, 3],
            vec![3, 4],
            vec![1, 4],
            vec![4, 5],
            vec![5, 6],
            vec![2, 6],
        ],
    )
    .unwrap()
}

#[test]
fn monomial_arithmetic() {
    let ci = ideal(4, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
    assert_eq!(
        power(&ci, 2).to_string(),
        "(x1^2*x2^2, x1*x2*x3*x4, x3^2*x4^2)"
    );
    let i = ideal(3, &[&[1, 1, 0], &[0, 1, 1]]);
    assert_eq!(
        colon(&i, &Exponent::new(vec![0, 1, 0]))
            .unwrap()
            .to_string(),
        "(x1, x3)"
    );
    assert_eq!(radical(&ideal(2, &[&[2, 3]])).to_string(), "(x1*x2)");
    let meet = intersect(
        &ideal(3, &[&[1, 0, 0], &[0, 1, 0]]),
        &ideal(3, &[&[0, 1, 0], &[0, 0, 1]]),
    )
    .unwrap();
    assert_eq!(meet.to_string(), "(x2, x1*x3)");
    let k3 = edge_ideal(&Graph::complete(3)).unwrap();
    assert_eq!(ord(&k3, &Exponent::new(vec![3, 1, 1])).unwrap(), 2);
    assert_eq!(clique_order(&[2, 2, 2]), 3);
    assert_eq!(clique_order(&[5, 1]), 1);
}

#[test]
fn stanley_reisner_round_trip() {
    let gamma = chain();
    let i = sr_ideal(&gamma).unwrap();
    assert_eq!(sr_complex(&i).unwrap(), gamma);
    assert_eq!(gamma.girth().unwrap(), Girth::Finite(4));
    let square = gamma.restrict(VertexSet::from_vertices([0, 1, 2, 3]));
    assert_eq!(square.facets().len(), 4);
    assert!(degree_complex(&i, &Exponent::new(vec![1, 0, 1, 0, 0, 0]))
        .unwrap()
        .is_void());
}

#[test]
fn homology_of_small_complexes() {
    let hollow = SimplicialComplex::from_labels(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
    for field in [Field::default(), Field::Rational, Field::prime(3).unwrap()] {
        let h = reduced_homology(&hollow, field);
        assert_eq!(h.dim(1), 1);
        assert_eq!(h.dim(0), 0);
    }
    assert_eq!(reg_squarefree_links(&hollow, Field::default()).unwrap(), 2);
}

#[test]
fn graphs_and_enumeration() {
    let path = Graph::from_labels(3, &[(1, 2), (2, 3)]).unwrap();
    assert_eq!(
        path.neighborhood(VertexSet::singleton(0)).unwrap(),
        VertexSet::singleton(1)
    );
    assert_eq!(
        enumerate_graphs(3, GraphFilter::default()).unwrap().count(),
        8
    );
    let filter = GraphFilter {
        no_isolated_vertices: true,
        alpha_greater_than_two: true,
        non_bipartite: true,
        up_to_isomorphism: true,
        ..GraphFilter::default()
    };
    assert_eq!(enumerate_graphs(5, filter).unwrap().count(), 4);
}

#[test]
fn symbolic_powers() {
    let k3 = edge_ideal(&Graph::complete(3)).unwrap();
    let a = Exponent::new(vec![1, 1, 1]);
    assert!(symbolic_membership(&k3, 2, &a).unwrap());
    assert!(differential_membership(&k3, 2, &a).unwrap());
    assert!(!power(&k3, 2).contains(&a).unwrap());
    let sym = symbolic_power(&k3, 2, 1_000_000).unwrap();
    assert!(sym.gens().contains(&a));
    let members: Vec<_> = intermediate_ideals(&k3, 2, &Selection::All, 16)
        .unwrap()
        .collect();
    assert_eq!(members.len(), 2);
    assert_eq!(members[0], power(&k3, 2));
    assert_eq!(members[1], sym);
}

#[test]
fn regularity_certificates() {
    let i = sr_ideal(&chain()).unwrap();
    let cert = reg_takayama(&power(&i, 2), &RegOptions::default()).unwrap();
    assert_eq!(cert.reg_ideal, Some(5));
    for w in &cert.witnesses {
        assert!(verify_witness(&power(&i, 2), w, Field::default()).unwrap());
    }
    let small = ideal(3, &[&[2, 1, 0], &[0, 1, 2]]);
    assert_eq!(
        reg_takayama(&small, &RegOptions::default())
            .unwrap()
            .reg_module,
        reg_polarization_oracle(&small, Field::default(), DEFAULT_MAX_POLARIZED_VARS).unwrap()
    );
    assert!(matches!(
        reg_takayama(&MonomialIdeal::unit(2), &RegOptions::default()),
        Err(Error::UnitIdeal)
    ));
}
