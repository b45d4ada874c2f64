use super::*;
use crate::fixtures;
use crate::graph::WeightedGraph;
use num_traits::Zero;

fn w(vs: &[usize]) -> Walk {
    Walk::new(vs.to_vec()).unwrap()
}

fn all_fixtures() -> Vec<(&'static str, WeightedGraph)> {
    vec![
        ("k4", fixtures::k4()),
        ("petersen", fixtures::petersen()),
        ("two_k4_cut", fixtures::two_k4_cut()),
        ("k4_bridge", fixtures::k4_bridge()),
        ("chain", fixtures::chain_of_k4s(3)),
        ("star", fixtures::star_of_k4s()),
        ("ring", fixtures::ring_of_k4s()),
        ("bridge_tree", fixtures::bridge_tree()),
    ]
}

fn assert_sound(g: &WeightedGraph, cert: &RevealCertificate, home: VertexId) {
    assert_eq!(cert.home, home);
    assert!(cert.target_coefficient > BigInt::zero());
    for t in &cert.terms {
        assert!(g.graph().is_valid_nb_walk(&t.walk), "{} invalid", t.walk);
        assert!(t.walk.is_closed() && t.walk.first() == home && !t.walk.is_empty());
    }
}

#[test]
fn detour_cycles_match_examples() {
    let g = fixtures::k4();
    let bct = BlockCutTree::new(g.graph()).unwrap();
    let d = detour_cycle(g.graph(), &bct, 0, 0, None).unwrap();
    assert_eq!(d.cycle, w(&[0, 1, 2, 0]));
    assert_ne!(d.first_edge, d.last_edge);

    let g = fixtures::two_k4_cut();
    let bct = BlockCutTree::new(g.graph()).unwrap();
    let right = bct.block_of_edge(g.graph().edge_between(3, 4).unwrap());
    assert_eq!(
        detour_cycle(g.graph(), &bct, 3, right, None).unwrap().cycle,
        w(&[3, 4, 5, 3])
    );
    assert_eq!(
        detour_cycle(g.graph(), &bct, 3, right, Some(4))
            .unwrap()
            .cycle,
        w(&[3, 5, 6, 3])
    );
}

#[test]
fn walk_to_cut_through_entering_edge() {
    // approach from the left K4 into the right K4 at 3
    let g = fixtures::two_k4_cut();
    let bct = BlockCutTree::new(g.graph()).unwrap();
    let right = bct.block_of_edge(g.graph().edge_between(3, 4).unwrap());
    let mut r = Revealer::new(g.graph(), &bct, 0).unwrap();
    let approach = w(&[0, 1, 3]);
    let cert = r.reveal_walk_to_cut(&approach, 3, right).unwrap();
    assert_sound(&g, &cert, 0);
    assert!(cert.residual(g.graph()).unwrap().iter().all(Zero::is_zero));
    assert_eq!(
        cert.evaluate(&g).unwrap(),
        g.walk_weight(&approach).unwrap()
    );
    assert_eq!(r.doublings().len(), 1);
    assert_eq!(r.doublings()[0].cycle, w(&[3, 4, 5, 3]));
}

#[test]
fn walk_to_cut_inside_its_block() {
    // the last edge {1,3} lies in the left block: escape right and come back
    let g = fixtures::two_k4_cut();
    let bct = BlockCutTree::new(g.graph()).unwrap();
    let left = bct.block_of_edge(g.graph().edge_between(1, 3).unwrap());
    let mut r = Revealer::new(g.graph(), &bct, 0).unwrap();
    let approach = w(&[0, 1, 3]);
    let cert = r.reveal_walk_to_cut(&approach, 3, left).unwrap();
    assert_sound(&g, &cert, 0);
    assert!(cert.residual(g.graph()).unwrap().iter().all(Zero::is_zero));
    assert_eq!(
        cert.evaluate(&g).unwrap(),
        g.walk_weight(&approach).unwrap()
    );
}

#[test]
fn walk_to_bridge_only_cut_vertex() {
    let g = fixtures::star_of_k4s();
    let bct = BlockCutTree::new(g.graph()).unwrap();
    let mut r = Revealer::new(g.graph(), &bct, 1).unwrap();
    let approach = w(&[1, 0, 12]);
    let cert = r.reveal_walk_to_any_cut(&approach, 12).unwrap();
    assert_sound(&g, &cert, 1);
    assert!(cert.residual(g.graph()).unwrap().iter().all(Zero::is_zero));
    assert_eq!(
        cert.evaluate(&g).unwrap(),
        g.walk_weight(&approach).unwrap()
    );
}

#[test]
fn lifting_closed_walks_from_a_cut_vertex() {
    let g = fixtures::chain_of_k4s(3);
    let bct = BlockCutTree::new(g.graph()).unwrap();
    let mut r = Revealer::new(g.graph(), &bct, 0).unwrap();
    for closed in [
        w(&[6, 7, 8, 6]),
        w(&[6, 4, 5, 6, 7, 9, 6]),
        w(&[6, 4, 3, 5, 6]),
    ] {
        let cert = r.lift_closed_walk(6, &closed).unwrap();
        assert_sound(&g, &cert, 0);
        assert!(cert.residual(g.graph()).unwrap().iter().all(Zero::is_zero));
    }
    let lib = r.library().get(6).unwrap();
    assert_eq!(lib.len(), 2);
    assert_ne!(lib[0].final_edge, lib[1].final_edge);
}

#[test]
fn bridge_certificates() {
    for (name, g) in [
        ("k4_bridge", fixtures::k4_bridge()),
        ("bridge_tree", fixtures::bridge_tree()),
    ] {
        let bct = BlockCutTree::new(g.graph()).unwrap();
        for e in (0..g.graph().edge_count()).filter(|&e| bct.is_bridge(e)) {
            for home in [0, 5] {
                let mut r = Revealer::new(g.graph(), &bct, home).unwrap();
                let cert = r.reveal_bridge(e).unwrap();
                assert_sound(&g, &cert, home);
                assert_eq!(
                    &cert.evaluate(&g).unwrap(),
                    g.weight(e),
                    "{name} edge {e} home {home}"
                );
                assert!(cert.residual(g.graph()).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn reveal_block_from_every_anchor() {
    let g = fixtures::petersen();
    let bct = BlockCutTree::new(g.graph()).unwrap();
    for anchor in 0..10 {
        let certs = reveal_block(g.graph(), &bct, anchor, 0).unwrap();
        assert_eq!(certs.len(), 15);
        let flat = flatten_all(&certs).unwrap();
        for (e, cert) in &flat {
            assert!(cert.is_flat());
            assert_sound(&g, cert, anchor);
            assert_eq!(&cert.evaluate(&g).unwrap(), g.weight(*e));
        }
    }
}

#[test]
fn reveal_all_on_fixtures_from_every_start() {
    for (name, g) in all_fixtures() {
        for start in 0..g.graph().vertex_count() {
            let rev =
                reveal_all(g.graph(), start).unwrap_or_else(|e| panic!("{name} from {start}: {e}"));
            assert_eq!(rev.certificates.len(), g.graph().edge_count());
            for (e, cert) in &rev.certificates {
                assert_eq!(
                    &cert.evaluate(&g).unwrap(),
                    g.weight(*e),
                    "{name} from {start}, edge {e}"
                );
            }
            for (e, cert) in rev.flattened().unwrap() {
                assert!(cert.is_flat());
                assert_sound(&g, &cert, start);
                assert_eq!(cert.target, Target::Edge(e));
                assert!(cert.residual(g.graph()).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn recorded_doublings_are_valid() {
    let g = fixtures::bridge_tree();
    let rev = reveal_all(g.graph(), 3).unwrap();
    assert!(!rev.doublings.is_empty());
    for d in &rev.doublings {
        let (once, twice) = d.closed_walks().unwrap();
        assert!(g.graph().is_valid_nb_walk(&once) && g.graph().is_valid_nb_walk(&twice));
        assert_ne!(
            d.cycle.first_edge().map(unordered),
            d.cycle.last_edge().map(unordered)
        );
        let lhs = g.walk_weight(&d.approach).unwrap() * Rational::from_integer(2.into());
        let rhs = g.walk_weight(&once).unwrap() * Rational::from_integer(2.into())
            - g.walk_weight(&twice).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn rejects_low_degree_graphs() {
    let g = fixtures::cycle(5);
    assert!(matches!(
        reveal_all(g.graph(), 0),
        Err(RevealError::NotOdometric(_))
    ));
    let g = fixtures::subdivided_k4();
    assert!(matches!(
        reveal_all(g.graph(), 0),
        Err(RevealError::NotOdometric(Violation::LowDegree {
            vertex: 4,
            degree: 2
        }))
    ));
}

#[test]
fn rejects_walks_not_from_home() {
    let g = fixtures::two_k4_cut();
    let bct = BlockCutTree::new(g.graph()).unwrap();
    let mut r = Revealer::new(g.graph(), &bct, 0).unwrap();
    assert!(r.reveal_walk_to_cut(&w(&[1, 3]), 3, 0).is_err());
    assert!(r.reveal_walk_to_cut(&w(&[0, 1, 0, 3]), 3, 0).is_err());
    assert!(r.reveal_walk_to_cut(&w(&[0, 1]), 1, 0).is_err());
}
