//! Measuring closed walks, and exhaustive checks on small graphs.
//!
//! [`Odometer`] holds hidden weights and answers only closed non-backtracking
//! walks from its home. [`revealable_span`] computes, without listing walks,
//! the span of the usage vectors of every closed non-backtracking walk from a
//! vertex up to a length cap, so identifiability can be decided independently
//! of the revealer.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId, Walk, WeightedGraph};
use crate::solver::{Echelon, ExactInt, Overflow};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    Empty,
    NotAWalk,
    Backtracking,
    NotClosed,
    WrongHome,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::Empty => "the empty walk is not a trip",
            Rejection::NotAWalk => "consecutive vertices are not adjacent",
            Rejection::Backtracking => "the walk turns around",
            Rejection::NotClosed => "the walk does not return to its start",
            Rejection::WrongHome => "the walk does not start at home",
        })
    }
}

/// The only error a measurement can produce. It carries the walk and the
/// reason, never a weight.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("rejected walk {walk}: {reason}")]
pub struct RejectedWalk {
    pub walk: Walk,
    pub reason: Rejection,
}

/// Answers walk-weight queries against hidden weights.
#[derive(Debug, Clone)]
pub struct Odometer {
    weighted: WeightedGraph,
    home: VertexId,
    query_count: u64,
}

impl Odometer {
    pub fn new(weighted: WeightedGraph, home: VertexId) -> Self {
        Odometer {
            weighted,
            home,
            query_count: 0,
        }
    }

    pub fn home(&self) -> VertexId {
        self.home
    }

    /// Successful measurements so far.
    pub fn query_count(&self) -> u64 {
        self.query_count
    }

    pub fn topology(&self) -> &Graph {
        self.weighted.graph()
    }

    fn check(&self, w: &Walk) -> Result<(), Rejection> {
        let g = self.weighted.graph();
        let vs = w.vertices();
        if w.is_empty() {
            return Err(Rejection::Empty);
        }
        if vs.windows(2).any(|p| g.edge_between(p[0], p[1]).is_none()) {
            return Err(Rejection::NotAWalk);
        }
        if !g.is_valid_nb_walk(w) {
            return Err(Rejection::Backtracking);
        }
        if !w.is_closed() {
            return Err(Rejection::NotClosed);
        }
        if w.first() != self.home {
            return Err(Rejection::WrongHome);
        }
        Ok(())
    }

    pub fn measure(&mut self, w: &Walk) -> Result<Rational, RejectedWalk> {
        self.check(w).map_err(|reason| RejectedWalk {
            walk: w.clone(),
            reason,
        })?;
        let value = self.weighted.walk_weight(w).expect("checked walk");
        self.query_count += 1;
        Ok(value)
    }
}

/// Every closed non-backtracking walk from `home` with at most `max_edges`
/// edges, in lexicographic order of vertex sequences.
pub fn enumerate_closed_nb_walks(g: &Graph, home: VertexId, max_edges: usize) -> Vec<Walk> {
    let mut out = Vec::new();
    if home >= g.vertex_count() {
        return out;
    }
    let mut path = vec![home];
    extend(g, home, max_edges, &mut path, &mut out);
    out
}

fn extend(
    g: &Graph,
    home: VertexId,
    max_edges: usize,
    path: &mut Vec<VertexId>,
    out: &mut Vec<Walk>,
) {
    if path.len() > max_edges {
        return;
    }
    let last = *path.last().expect("nonempty");
    let before = path.len().checked_sub(2).map(|i| path[i]);
    for &(next, _) in g.neighbors(last) {
        if Some(next) == before {
            continue;
        }
        path.push(next);
        if next == home {
            out.push(Walk::new(path.clone()).expect("nonempty"));
        }
        extend(g, home, max_edges, path, out);
        path.pop();
    }
}

/// Directed edge `a -> b` for the edge `e = {a, b}`: `2e` when `a < b`,
/// `2e + 1` otherwise.
fn arc(e: EdgeId, a: VertexId, b: VertexId) -> usize {
    2 * e + usize::from(a > b)
}

/// Number of closed non-backtracking walks from `home` with at most
/// `max_edges` edges.
pub fn count_closed_nb_walks(g: &Graph, home: VertexId, max_edges: usize) -> BigUint {
    let arcs = arc_heads(g);
    let mut total = BigUint::zero();
    let mut layer: Vec<BigUint> = vec![BigUint::zero(); arcs.len()];
    for &(b, e) in g.neighbors(home) {
        layer[arc(e, home, b)] = BigUint::one();
    }
    for _ in 1..=max_edges {
        for (d, count) in layer.iter().enumerate() {
            if arcs[d].1 == home {
                total += count;
            }
        }
        let mut next = vec![BigUint::zero(); arcs.len()];
        for (d, count) in layer.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let (a, b) = arcs[d];
            for &(c, f) in g.neighbors(b) {
                if c != a {
                    next[arc(f, b, c)] += count;
                }
            }
        }
        layer = next;
    }
    total
}

/// `(tail, head)` of every arc.
fn arc_heads(g: &Graph) -> Vec<(VertexId, VertexId)> {
    let mut arcs = vec![(0, 0); 2 * g.edge_count()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        arcs[arc(e, a, b)] = (a, b);
        arcs[arc(e, b, a)] = (b, a);
    }
    arcs
}

/// What closed walks from one vertex can observe, up to a length cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanReport {
    pub home: VertexId,
    pub max_edges: usize,
    pub edge_count: usize,
    /// Rank of the walk matrix over all enumerated walks.
    pub rank: usize,
    /// Integer basis of the span of all walk usage vectors.
    pub span_basis: Vec<Vec<BigInt>>,
    /// Integer basis of the weight directions no measurement can see.
    pub unobservable: Vec<Vec<BigInt>>,
    /// Groups of at least two edges whose walk-matrix rows coincide
    /// (excluding all-zero rows).
    pub identical_rows: Vec<Vec<EdgeId>>,
    /// Edges that no walk within the cap uses.
    pub zero_rows: Vec<EdgeId>,
}

impl SpanReport {
    pub fn is_full_rank(&self) -> bool {
        self.rank == self.edge_count
    }
}

/// Default cap for the exhaustive span: `2|E| + 3` edges.
pub fn default_cap(g: &Graph) -> usize {
    2 * g.edge_count() + 3
}

/// Span of usage vectors of all closed non-backtracking walks from `home`
/// with at most `max_edges` edges.
///
/// For every arc and length the affine hull of the usage vectors of walks
/// from `home` ending in that arc is tracked in homogeneous coordinates, so
/// appending an edge is a linear map and the hull at the next length is the
/// sum of mapped hulls. The search stops early once the closed walks span
/// every edge.
pub fn revealable_span(g: &Graph, home: VertexId, max_edges: usize) -> SpanReport {
    let span = match span_with::<i128>(g, home, max_edges) {
        Ok(span) => span.to_big(),
        Err(Overflow) => {
            span_with::<BigInt>(g, home, max_edges).expect("big integers do not overflow")
        }
    };
    report(g, home, max_edges, &span)
}

fn span_with<T: ExactInt + From<u8>>(
    g: &Graph,
    home: VertexId,
    max_edges: usize,
) -> Result<Echelon<T>, Overflow> {
    let m = g.edge_count();
    let mut closed = Echelon::<T>::new(m);
    if home >= g.vertex_count() || m == 0 {
        return Ok(closed);
    }
    let arcs = arc_heads(g);
    // hull[d]: span of (1, usage) over walks of the current length ending in d
    let mut hull: Vec<Option<Echelon<T>>> = vec![None; arcs.len()];
    for &(b, e) in g.neighbors(home) {
        let mut v = vec![T::zero(); m + 1];
        v[0] = T::one();
        v[e + 1] = T::one();
        let mut h = Echelon::new(m + 1);
        h.try_insert(v)?;
        hull[arc(e, home, b)] = Some(h);
    }
    for _ in 1..=max_edges {
        for (d, h) in hull.iter().enumerate() {
            if arcs[d].1 != home {
                continue;
            }
            for v in h.iter().flat_map(Echelon::basis) {
                closed.try_insert(v[1..].to_vec())?;
            }
        }
        if closed.is_full() {
            break;
        }
        let mut next: Vec<Option<Echelon<T>>> = vec![None; arcs.len()];
        for (d, h) in hull.iter().enumerate() {
            let Some(h) = h else { continue };
            let (a, b) = arcs[d];
            for &(c, f) in g.neighbors(b) {
                if c == a {
                    continue;
                }
                let target = next[arc(f, b, c)].get_or_insert_with(|| Echelon::new(m + 1));
                for v in h.basis() {
                    if target.is_full() {
                        break;
                    }
                    let mut moved = v.to_vec();
                    moved[f + 1] = moved[f + 1].clone() + moved[0].clone();
                    target.try_insert(moved)?;
                }
            }
        }
        hull = next;
    }
    Ok(closed)
}

fn report(g: &Graph, home: VertexId, max_edges: usize, span: &Echelon<BigInt>) -> SpanReport {
    let m = g.edge_count();
    let span_basis: Vec<Vec<BigInt>> = span.basis().map(<[BigInt]>::to_vec).collect();

    let mut by_column: BTreeMap<Vec<BigInt>, Vec<EdgeId>> = BTreeMap::new();
    for e in 0..m {
        let key: Vec<BigInt> = span_basis.iter().map(|row| row[e].clone()).collect();
        by_column.entry(key).or_default().push(e);
    }
    let mut zero_rows = Vec::new();
    let mut identical_rows = Vec::new();
    for (key, edges) in by_column {
        if key.iter().all(Zero::is_zero) {
            zero_rows = edges;
        } else if edges.len() > 1 {
            identical_rows.push(edges);
        }
    }
    identical_rows.sort();

    SpanReport {
        home,
        max_edges,
        edge_count: m,
        rank: span_basis.len(),
        unobservable: null_space(&span_basis, m),
        span_basis,
        identical_rows,
        zero_rows,
    }
}

/// Integer basis of `{x : row . x = 0 for every row}`.
fn null_space(rows: &[Vec<BigInt>], width: usize) -> Vec<Vec<BigInt>> {
    // reduced row echelon form over the rationals
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for x in m[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivot_cols.contains(c)) {
        let mut x = vec![Rational::zero(); width];
        x[free] = Rational::one();
        for (i, &p) in pivot_cols.iter().enumerate() {
            x[p] = -m[i][free].clone();
        }
        let lcm = x.iter().fold(BigInt::one(), |acc, q| {
            num_integer::Integer::lcm(&acc, q.denom())
        });
        basis.push(
            x.into_iter()
                .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
    }
    basis
}
