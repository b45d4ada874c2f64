//! Named graphs and random generators shared by tests, benches and the CLI
//! acceptance suite.
//!
//! Unless stated otherwise the named fixtures carry weights `1, 2, 3, ...` in
//! edge-id order.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, VertexId, WeightedGraph};
use crate::Rational;

fn with_sequential_weights(vertex_count: usize, edges: Vec<(VertexId, VertexId)>) -> WeightedGraph {
    let graph = Graph::new(vertex_count, edges).expect("fixture is a simple graph");
    let weights = (1..=graph.edge_count())
        .map(|w| Rational::from_integer(BigInt::from(w)))
        .collect();
    WeightedGraph::new(graph, weights).expect("one weight per edge")
}

fn clique_edges(vertices: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for (i, &a) in vertices.iter().enumerate() {
        for &b in &vertices[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

/// K4 with `{0,1}=1, {0,2}=2, {0,3}=3, {1,2}=4, {1,3}=5, {2,3}=6`.
pub fn k4() -> WeightedGraph {
    with_sequential_weights(4, clique_edges(&[0, 1, 2, 3]))
}

pub fn petersen() -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
    }
    for i in 0..5 {
        edges.push((i, i + 5));
    }
    for i in 0..5 {
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    with_sequential_weights(10, edges)
}

pub fn cycle(n: usize) -> WeightedGraph {
    with_sequential_weights(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// Two K4s on `{0,1,2,3}` and `{3,4,5,6}` sharing the cut vertex 3.
pub fn two_k4_cut() -> WeightedGraph {
    let mut edges = clique_edges(&[0, 1, 2, 3]);
    edges.extend(clique_edges(&[3, 4, 5, 6]));
    with_sequential_weights(7, edges)
}

/// K4 on `{0,1,2,3}`, K4 on `{4,5,6,7}` and the bridge `{3,4}` (edge 12).
pub fn k4_bridge() -> WeightedGraph {
    let mut edges = clique_edges(&[0, 1, 2, 3]);
    edges.extend(clique_edges(&[4, 5, 6, 7]));
    edges.push((3, 4));
    with_sequential_weights(8, edges)
}

/// K4 with the edge `{2,3}` replaced by the path `2-4-3`.
pub fn subdivided_k4() -> WeightedGraph {
    with_sequential_weights(
        5,
        vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (4, 3)],
    )
}

/// `count` K4s in a row, K4 number `i` on `{3i, .., 3i+3}`, consecutive ones
/// sharing a cut vertex.
pub fn chain_of_k4s(count: usize) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..count {
        let b = 3 * i;
        edges.extend(clique_edges(&[b, b + 1, b + 2, b + 3]));
    }
    with_sequential_weights(3 * count + 1, edges)
}

/// Three K4s on `{0..3}`, `{4..7}`, `{8..11}` and a center vertex 12 joined
/// to vertices 0, 4 and 8 by bridges. Every edge at the center is a bridge.
pub fn star_of_k4s() -> WeightedGraph {
    let mut edges = Vec::new();
    for k in 0..3 {
        let b = 4 * k;
        edges.extend(clique_edges(&[b, b + 1, b + 2, b + 3]));
    }
    for k in 0..3 {
        edges.push((12, 4 * k));
    }
    with_sequential_weights(13, edges)
}

/// The 4-cycle `0-1-2-3-0` with a K4 hanging off every cycle vertex. The
/// cycle is a 2-connected block of its own.
pub fn ring_of_k4s() -> WeightedGraph {
    let mut edges: Vec<_> = (0..4).map(|i| (i, (i + 1) % 4)).collect();
    for i in 0..4 {
        let b = 4 + 3 * i;
        edges.extend(clique_edges(&[i, b, b + 1, b + 2]));
    }
    with_sequential_weights(16, edges)
}

/// Two hub vertices 0 and 1 joined by a bridge; hub 0 has bridges to K4s on
/// `{2..5}` and `{6..9}`, hub 1 to K4s on `{10..13}` and `{14..17}`. The hub
/// bridge is one hop away from every 2-connected block.
pub fn bridge_tree() -> WeightedGraph {
    let mut edges = Vec::new();
    for k in 0..4 {
        let b = 2 + 4 * k;
        edges.extend(clique_edges(&[b, b + 1, b + 2, b + 3]));
    }
    edges.extend([(0, 1), (0, 2), (0, 6), (1, 10), (1, 14)]);
    with_sequential_weights(18, edges)
}

/// Random rational weights `p/q` with `|p| <= 30`, `1 <= q <= 7`.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, graph: Graph) -> WeightedGraph {
    let weights = (0..graph.edge_count())
        .map(|_| {
            let p: i64 = rng.gen_range(-30..=30);
            let q: i64 = rng.gen_range(1..=7);
            Rational::new(BigInt::from(p), BigInt::from(q))
        })
        .collect();
    WeightedGraph::new(graph, weights).expect("one weight per edge")
}

/// Connected graph on `n` vertices: a random spanning tree plus each other
/// pair independently with probability `p`.
pub fn random_connected<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let (a, b) = (order[i], parent);
        edges.insert((a.min(b), a.max(b)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

/// Connected graph on `n >= 4` vertices with minimum degree at least 3.
pub fn random_odometric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 4, "minimum degree 3 needs at least four vertices");
    let base = random_connected(rng, n, 1.5 / n as f64);
    let mut edges: BTreeSet<(VertexId, VertexId)> = base.edges().iter().copied().collect();
    let mut degree = vec![0usize; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    for v in 0..n {
        while degree[v] < 3 {
            let candidates: Vec<VertexId> = (0..n)
                .filter(|&w| w != v && !edges.contains(&(v.min(w), v.max(w))))
                .collect();
            let w = *candidates
                .choose(rng)
                .expect("n >= 4 leaves a non-neighbor");
            edges.insert((v.min(w), v.max(w)));
            degree[v] += 1;
            degree[w] += 1;
        }
    }
    Graph::new(n, edges).expect("pairs are distinct")
}

/// Min-degree-3 graph with nontrivial block structure: small random pieces
/// glued along a random tree, by shared cut vertices, by bridges, or through
/// a degree-3 hub whose three edges are all bridges. At most `max_vertices`
/// vertices (which must be at least 8).
pub fn random_composite<R: Rng + ?Sized>(rng: &mut R, max_vertices: usize) -> Graph {
    assert!(max_vertices >= 8);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut n = 0usize;
    let mut pieces: Vec<Vec<VertexId>> = Vec::new();

    let add_piece = |rng: &mut R, n: &mut usize, edges: &mut Vec<_>, size: usize| {
        let piece = random_odometric(rng, size);
        let offset = *n;
        edges.extend(piece.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
        *n += size;
        (offset..offset + size).collect::<Vec<_>>()
    };

    let first = rng.gen_range(4..=5);
    pieces.push(add_piece(rng, &mut n, &mut edges, first));
    loop {
        let size = rng.gen_range(4..=5);
        let glue = rng.gen_range(0..3);
        let needed = match glue {
            0 => size - 1,
            1 => size,
            _ => 2 * size + 1,
        };
        if n + needed > max_vertices {
            break;
        }
        let host = pieces.choose(rng).expect("at least one piece").clone();
        let anchor = *host.choose(rng).expect("pieces are nonempty");
        match glue {
            0 => {
                // identify the new piece's vertex 0 with `anchor`
                let piece = random_odometric(rng, size);
                let offset = n;
                let map = |v: VertexId| if v == 0 { anchor } else { offset + v - 1 };
                edges.extend(piece.edges().iter().map(|&(a, b)| (map(a), map(b))));
                n += size - 1;
                let mut verts: Vec<_> = (offset..offset + size - 1).collect();
                verts.push(anchor);
                pieces.push(verts);
            }
            1 => {
                let verts = add_piece(rng, &mut n, &mut edges, size);
                edges.push((anchor, *verts.choose(rng).expect("nonempty")));
                pieces.push(verts);
            }
            _ => {
                let hub = n;
                n += 1;
                edges.push((anchor, hub));
                for _ in 0..2 {
                    let verts = add_piece(rng, &mut n, &mut edges, size);
                    edges.push((hub, *verts.choose(rng).expect("nonempty")));
                    pieces.push(verts);
                }
            }
        }
    }
    Graph::new(n, edges).expect("glued pieces stay simple")
}
