//! Constructive reveal certificates.
//!
//! Given a connected graph of minimum degree 3 and a start vertex, every edge
//! weight is written as a rational combination of weights of closed
//! non-backtracking walks from the start. The construction proceeds in
//! layers:
//!
//! 1. walks ending at a cut vertex of a 2-connected block are revealed with
//!    the doubling identity `2F(W) = 2F(W C W̄) - F(W C C W̄)`, where `C` is a
//!    detour cycle in the block ([`Revealer::reveal_walk_to_cut`]);
//! 2. walks ending at a cut vertex all of whose edges are bridges use a
//!    two-armed cycle through two different subtrees
//!    ([`Revealer::reveal_walk_to_any_cut`]);
//! 3. closed walks from such a cut vertex are conjugated by revealed approach
//!    walks to become closed walks from the start
//!    ([`Revealer::lift_closed_walk`]);
//! 4. the edges of one block are revealed from any vertex in it by
//!    breadth-first neighbor transfer ([`reveal_block`]);
//! 5. bridges come from the nearest 2-connected block ([`Revealer::reveal_bridge`]).
//!
//! [`reveal_all`] dispatches per edge and returns one certificate per edge.

mod certificate;
mod transfer;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

pub use certificate::{
    flatten, flatten_all, Combination, EdgeTerm, RevealCertificate, Target, Term,
};
pub use transfer::{split_at_visits, transfer_neighbor_walk};

use crate::decomposition::{
    leafward_escape, nearest_block_path, path_in_block_avoiding, shortest_path, BlockCutTree,
    BlockId, DecompositionError,
};
use crate::graph::{EdgeId, Graph, GraphError, VertexId, Violation, Walk, WalkError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RevealError {
    #[error("graph is not odometric: {0}")]
    NotOdometric(Violation),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no approach walk to {vertex} avoids the edge {{{}, {}}}", .blocked.0, .blocked.1)]
    LibraryExhausted {
        vertex: VertexId,
        blocked: (VertexId, VertexId),
    },
    #[error("certificate dependency cycle through edge {0}")]
    CyclicDependency(EdgeId),
    #[error("no certificate for edge {0}")]
    MissingCertificate(EdgeId),
    #[error("certificate based at {found} where {expected} was expected")]
    HomeMismatch { expected: VertexId, found: VertexId },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Walk(#[from] WalkError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

fn precondition(msg: impl Into<String>) -> RevealError {
    RevealError::Precondition(msg.into())
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

fn unordered((a, b): (VertexId, VertexId)) -> (VertexId, VertexId) {
    (a.min(b), a.max(b))
}

fn one() -> Rational {
    Rational::one()
}

/// A closed walk from `u` that stays inside one block and leaves and returns
/// on different edges, so it can be traversed twice in a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetourCycle {
    pub cycle: Walk,
    pub first_edge: EdgeId,
    pub last_edge: EdgeId,
}

/// `[u, x] ∘ P ∘ [y, u]` where `x < y` are the two lowest block neighbors of
/// `u` other than `exclude`, and `P` is a path from `x` to `y` inside the
/// block that avoids `u`.
pub fn detour_cycle(
    g: &Graph,
    bct: &BlockCutTree,
    u: VertexId,
    block: BlockId,
    exclude: Option<VertexId>,
) -> Result<DetourCycle, RevealError> {
    let mut ends = g
        .neighbors(u)
        .iter()
        .filter(|&&(w, e)| bct.block_of_edge(e) == block && Some(w) != exclude);
    let (Some(&(x, first_edge)), Some(&(y, last_edge))) = (ends.next(), ends.next()) else {
        return Err(precondition(format!(
            "{u} has fewer than two usable neighbors in block {block}"
        )));
    };
    let path = path_in_block_avoiding(g, bct, block, x, y, u)?;
    let cycle = Walk::chain(&Walk::edge(u, x), [&path, &Walk::edge(y, u)])?;
    Ok(DetourCycle {
        cycle,
        first_edge,
        last_edge,
    })
}

/// One use of the doubling identity
/// `2F(W) = 2F(W ∘ C ∘ W̄) - F(W ∘ C ∘ C ∘ W̄)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Doubling {
    pub approach: Walk,
    pub cycle: Walk,
}

impl Doubling {
    /// `(W ∘ C ∘ W̄, W ∘ C ∘ C ∘ W̄)`.
    pub fn closed_walks(&self) -> Result<(Walk, Walk), WalkError> {
        let back = self.approach.reverse();
        let once = Walk::chain(&self.approach, [&self.cycle, &back])?;
        let twice = Walk::chain(&self.approach, [&self.cycle, &self.cycle, &back])?;
        Ok((once, twice))
    }
}

/// A revealed walk from the home vertex to some cut vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approach {
    pub walk: Walk,
    /// Last edge as an unordered pair.
    pub final_edge: (VertexId, VertexId),
    pub value: Combination,
}

/// Revealed approach walks per target vertex, at least two final edges each.
#[derive(Debug, Clone, Default)]
pub struct ApproachLibrary {
    entries: BTreeMap<VertexId, Vec<Approach>>,
}

impl ApproachLibrary {
    pub fn get(&self, u: VertexId) -> Option<&[Approach]> {
        self.entries.get(&u).map(Vec::as_slice)
    }
}

/// Builds certificates made of closed walks from a fixed home vertex.
#[derive(Debug, Clone)]
pub struct Revealer<'g> {
    graph: &'g Graph,
    bct: &'g BlockCutTree,
    home: VertexId,
    library: ApproachLibrary,
    doublings: Vec<Doubling>,
}

impl<'g> Revealer<'g> {
    pub fn new(
        graph: &'g Graph,
        bct: &'g BlockCutTree,
        home: VertexId,
    ) -> Result<Self, RevealError> {
        if home >= graph.vertex_count() {
            return Err(precondition(format!("home vertex {home} out of range")));
        }
        Ok(Revealer {
            graph,
            bct,
            home,
            library: ApproachLibrary::default(),
            doublings: Vec::new(),
        })
    }

    pub fn home(&self) -> VertexId {
        self.home
    }

    pub fn library(&self) -> &ApproachLibrary {
        &self.library
    }

    /// Every doubling identity used so far.
    pub fn doublings(&self) -> &[Doubling] {
        &self.doublings
    }

    pub fn take_doublings(&mut self) -> Vec<Doubling> {
        std::mem::take(&mut self.doublings)
    }

    fn certificate(&self, value: Combination, target: Target) -> RevealCertificate {
        value.into_certificate(self.home, target)
    }

    fn check_walk_from_home(&self, w: &Walk, to: VertexId) -> Result<(), RevealError> {
        if !self.graph.is_valid_nb_walk(w) || w.first() != self.home || w.last() != to {
            return Err(precondition(format!(
                "{w} is not a non-backtracking walk from {} to {to}",
                self.home
            )));
        }
        Ok(())
    }

    fn check_closed_from_home(&self, w: &Walk) -> Result<(), RevealError> {
        if w.is_empty() {
            return Err(precondition("empty walks are never measured"));
        }
        self.check_walk_from_home(w, self.home)
    }

    /// Applies the doubling identity. Returns `(F(W), F(C))` in closed walks
    /// from home.
    fn double(&mut self, w: &Walk, c: &Walk) -> Result<(Combination, Combination), RevealError> {
        let doubling = Doubling {
            approach: w.clone(),
            cycle: c.clone(),
        };
        let (once, twice) = doubling.closed_walks()?;
        self.check_closed_from_home(&once)?;
        self.check_closed_from_home(&twice)?;
        self.doublings.push(doubling);

        let mut walk_value = Combination::walk(once.clone());
        walk_value.add_walk(twice.clone(), -half());
        let mut cycle_value = Combination::walk(twice);
        cycle_value.add_walk(once, -one());
        Ok((walk_value, cycle_value))
    }

    fn biconnected_cut(&self, u: VertexId, block: BlockId) -> Result<(), RevealError> {
        match self.bct.blocks().get(block) {
            Some(b) if b.is_biconnected() && b.contains_vertex(u) => {}
            _ => {
                return Err(precondition(format!(
                    "{u} is not in 2-connected block {block}"
                )))
            }
        }
        if !self.bct.is_cut_vertex(u) {
            return Err(precondition(format!("{u} is not a cut vertex")));
        }
        Ok(())
    }

    fn last_edge_in(&self, w: &Walk, block: BlockId) -> bool {
        w.penultimate()
            .and_then(|p| self.graph.edge_between(p, w.last()))
            .is_some_and(|e| self.bct.block_of_edge(e) == block)
    }

    /// Last edge outside `block`: double around a detour cycle in `block`.
    /// Returns `(F(W), F(C))`.
    fn reveal_entering(
        &mut self,
        w: &Walk,
        u: VertexId,
        block: BlockId,
    ) -> Result<(Combination, Combination), RevealError> {
        let detour = detour_cycle(self.graph, self.bct, u, block, None)?;
        self.double(w, &detour.cycle)
    }

    fn walk_to_cut(
        &mut self,
        w: &Walk,
        u: VertexId,
        block: BlockId,
    ) -> Result<Combination, RevealError> {
        self.check_walk_from_home(w, u)?;
        self.biconnected_cut(u, block)?;
        if w.is_empty() {
            return Ok(Combination::new());
        }
        if !self.last_edge_in(w, block) {
            return Ok(self.reveal_entering(w, u, block)?.0);
        }
        // Leave through another part of the tree, reveal there, come back.
        let escape = leafward_escape(self.graph, self.bct, u, block)?;
        let extended = w.concat(&escape.walk)?;
        let far_cycle = detour_cycle(self.graph, self.bct, escape.end, escape.block, None)?.cycle;
        let (extended_value, far_cycle_value) =
            self.reveal_entering(&extended, escape.end, escape.block)?;
        let round_trip = Walk::chain(&extended, [&far_cycle, &escape.walk.reverse()])?;
        let (round_trip_value, _) = self.reveal_entering(&round_trip, u, block)?;

        // F(W) = F(W W') - F(W'),  F(W') = F(W W' C' W̄') - F(W W') - F(C')
        let mut value = Combination::new();
        value.add_scaled(&extended_value, &Rational::from_integer(BigInt::from(2)));
        value.add_scaled(&far_cycle_value, &one());
        value.add_scaled(&round_trip_value, &-one());
        Ok(value)
    }

    /// Reveals a walk from home to a cut vertex `u` of the 2-connected block
    /// `block`.
    pub fn reveal_walk_to_cut(
        &mut self,
        w: &Walk,
        u: VertexId,
        block: BlockId,
    ) -> Result<RevealCertificate, RevealError> {
        let value = self.walk_to_cut(w, u, block)?;
        Ok(self.certificate(value, Target::Walk(w.clone())))
    }

    /// Closed walk from `x` that starts and ends away from the bridge block
    /// `avoid`: escape to a leaf block, go round a detour cycle, come back.
    fn closed_walk_beyond(&self, x: VertexId, avoid: BlockId) -> Result<Walk, RevealError> {
        let escape = leafward_escape(self.graph, self.bct, x, avoid)?;
        let cycle = detour_cycle(self.graph, self.bct, escape.end, escape.block, None)?.cycle;
        Ok(Walk::chain(&escape.walk, [&cycle, &escape.walk.reverse()])?)
    }

    fn walk_to_any_cut(&mut self, w: &Walk, u: VertexId) -> Result<Combination, RevealError> {
        self.check_walk_from_home(w, u)?;
        if !self.bct.is_cut_vertex(u) {
            return Err(precondition(format!("{u} is not a cut vertex")));
        }
        if let Some(block) = self.bct.biconnected_block_of(u) {
            return self.walk_to_cut(w, u, block);
        }
        let Some(before) = w.penultimate() else {
            return Ok(Combination::new());
        };
        let mut arms = self
            .graph
            .neighbors(u)
            .iter()
            .filter(|&&(x, _)| x != before);
        let (Some(&(x, e)), Some(&(y, f))) = (arms.next(), arms.next()) else {
            return Err(precondition(format!(
                "{u} needs two neighbors besides {before}"
            )));
        };
        let around_x = self.closed_walk_beyond(x, self.bct.block_of_edge(e))?;
        let around_y = self.closed_walk_beyond(y, self.bct.block_of_edge(f))?;
        let cycle = Walk::chain(
            &Walk::edge(u, x),
            [
                &around_x,
                &Walk::edge(x, u),
                &Walk::edge(u, y),
                &around_y,
                &Walk::edge(y, u),
            ],
        )?;
        Ok(self.double(w, &cycle)?.0)
    }

    /// Reveals a walk from home to any cut vertex `u`. When `u` lies in a
    /// 2-connected block this is [`Self::reveal_walk_to_cut`].
    pub fn reveal_walk_to_any_cut(
        &mut self,
        w: &Walk,
        u: VertexId,
    ) -> Result<RevealCertificate, RevealError> {
        let value = self.walk_to_any_cut(w, u)?;
        Ok(self.certificate(value, Target::Walk(w.clone())))
    }

    /// Two revealed walks from home to `u` with different final edges: a
    /// shortest path `P`, and `P` extended so that it re-enters `u` from the
    /// other side of `u`'s lowest 2-connected block.
    fn approaches(&mut self, u: VertexId) -> Result<Vec<Approach>, RevealError> {
        if let Some(found) = self.library.entries.get(&u) {
            return Ok(found.clone());
        }
        let block = self
            .bct
            .biconnected_block_of(u)
            .ok_or_else(|| precondition(format!("{u} lies in no 2-connected block")))?;
        self.biconnected_cut(u, block)?;
        let direct = shortest_path(self.graph, self.home, u)
            .ok_or_else(|| precondition(format!("{u} is unreachable from {}", self.home)))?;
        let detoured = if self.last_edge_in(&direct, block) {
            let escape = leafward_escape(self.graph, self.bct, u, block)?;
            let far_cycle =
                detour_cycle(self.graph, self.bct, escape.end, escape.block, None)?.cycle;
            Walk::chain(&direct, [&escape.walk, &far_cycle, &escape.walk.reverse()])?
        } else {
            let cycle = detour_cycle(self.graph, self.bct, u, block, None)?.cycle;
            direct.concat(&cycle)?
        };
        let mut found = Vec::new();
        for walk in [direct, detoured] {
            let value = self.walk_to_cut(&walk, u, block)?;
            let final_edge = unordered(walk.last_edge().expect("home differs from u"));
            found.push(Approach {
                walk,
                final_edge,
                value,
            });
        }
        debug_assert_ne!(found[0].final_edge, found[1].final_edge);
        self.library.entries.insert(u, found.clone());
        Ok(found)
    }

    fn lift_closed(&mut self, u: VertexId, closed: &Walk) -> Result<Combination, RevealError> {
        if !self.graph.is_valid_nb_walk(closed) || !closed.is_closed() || closed.first() != u {
            return Err(precondition(format!(
                "{closed} is not a closed non-backtracking walk from {u}"
            )));
        }
        if u == self.home {
            return Ok(Combination::walk(closed.clone()));
        }
        let approaches = self.approaches(u)?;
        let mut value = Combination::new();
        for piece in split_at_visits(closed) {
            let first = unordered(piece.first_edge().expect("pieces have edges"));
            let last = unordered(piece.last_edge().expect("pieces have edges"));
            let pick = |blocked: (VertexId, VertexId)| {
                approaches
                    .iter()
                    .find(|a| a.final_edge != blocked)
                    .ok_or(RevealError::LibraryExhausted { vertex: u, blocked })
            };
            let left = pick(first)?;
            let right = pick(last)?;
            let conjugate = Walk::chain(&left.walk, [&piece, &right.walk.reverse()])?;
            self.check_closed_from_home(&conjugate)?;
            // F(piece) = F(R piece R̄') - F(R) - F(R')
            value.add_walk(conjugate, one());
            value.add_scaled(&left.value, &-one());
            value.add_scaled(&right.value, &-one());
        }
        Ok(value)
    }

    /// Expresses a closed walk from the cut vertex `u` (of some 2-connected
    /// block) through closed walks from home.
    pub fn lift_closed_walk(
        &mut self,
        u: VertexId,
        closed: &Walk,
    ) -> Result<RevealCertificate, RevealError> {
        let value = self.lift_closed(u, closed)?;
        Ok(self.certificate(value, Target::Walk(closed.clone())))
    }

    /// Lifts every walk of a combination based at `u`; edge terms carry over.
    pub fn lift_combination(
        &mut self,
        u: VertexId,
        value: &Combination,
    ) -> Result<Combination, RevealError> {
        let mut lifted = Combination::new();
        for (walk, q) in value.walks() {
            let piece = self.lift_closed(u, walk)?;
            lifted.add_scaled(&piece, q);
        }
        for (e, q) in value.edges() {
            lifted.add_edge(e, q.clone());
        }
        Ok(lifted)
    }

    fn bridge(&mut self, e: EdgeId) -> Result<Combination, RevealError> {
        let path = nearest_block_path(self.graph, self.bct, e)?;
        let u = path.first();
        let (a, b) = self.graph.edge(e);
        let across = if a == u { b } else { a };
        let base = path.last();
        let mut local = Revealer::new(self.graph, self.bct, base)?;
        let value = if path.is_empty() {
            local.walk_to_any_cut(&Walk::edge(u, across), across)?
        } else {
            // w_e = F(P̄ ∘ e) - F(P̄), both revealed from the far end of P
            let back = path.reverse();
            let with_edge = back.concat(&Walk::edge(u, across))?;
            let mut value = local.walk_to_any_cut(&with_edge, across)?;
            value.add_scaled(&local.walk_to_any_cut(&back, u)?, &-one());
            value
        };
        self.doublings.append(&mut local.doublings);
        self.lift_combination(base, &value)
    }

    /// Reveals the bridge `e` from home.
    pub fn reveal_bridge(&mut self, e: EdgeId) -> Result<RevealCertificate, RevealError> {
        let value = self.bridge(e)?;
        Ok(self.certificate(value, Target::Edge(e)))
    }
}

/// Per-edge combinations for every edge of a 2-connected block, based at
/// `anchor`. Edge terms refer to other edges of the same block.
///
/// Vertices are visited breadth-first from the anchor. At vertex `p` each
/// unrevealed block edge `{p, q}` is revealed with closed walks from `p`,
/// then every walk is carried back to the anchor along the search tree with
/// [`transfer_neighbor_walk`]; each hop adds a multiple of the tree edge it
/// crosses, which was revealed earlier.
pub fn reveal_block_combinations(
    g: &Graph,
    bct: &BlockCutTree,
    anchor: VertexId,
    block: BlockId,
    doublings: &mut Vec<Doubling>,
) -> Result<BTreeMap<EdgeId, Combination>, RevealError> {
    match bct.blocks().get(block) {
        Some(b) if b.is_biconnected() && b.contains_vertex(anchor) => {}
        _ => {
            return Err(precondition(format!(
                "{anchor} is not in 2-connected block {block}"
            )))
        }
    }
    if let Some(v) = g.odometric_violation() {
        return Err(RevealError::NotOdometric(v));
    }
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([anchor]);
    parent.insert(anchor, anchor);
    let mut revealed: BTreeMap<EdgeId, Combination> = BTreeMap::new();

    while let Some(p) = queue.pop_front() {
        let mut local = Revealer::new(g, bct, p)?;
        for &(q, e) in g.neighbors(p) {
            if bct.block_of_edge(e) != block {
                continue;
            }
            if let Entry::Vacant(slot) = revealed.entry(e) {
                let edge_walk = Walk::edge(p, q);
                let value = if bct.is_cut_vertex(q) {
                    local.walk_to_cut(&edge_walk, q, block)?
                } else {
                    // 2 w_e = 2F(e C ē) - F(e C C ē), C a detour at q avoiding p
                    let cycle = detour_cycle(g, bct, q, block, Some(p))?.cycle;
                    local.double(&edge_walk, &cycle)?.0
                };
                slot.insert(carry_to_anchor(g, &parent, p, value)?);
            }
            if let Entry::Vacant(slot) = parent.entry(q) {
                slot.insert(p);
                queue.push_back(q);
            }
        }
        doublings.append(&mut local.doublings);
    }
    Ok(revealed)
}

/// Rebases a combination of closed walks from `from` onto the anchor by
/// following `parent` pointers.
fn carry_to_anchor(
    g: &Graph,
    parent: &BTreeMap<VertexId, VertexId>,
    from: VertexId,
    mut value: Combination,
) -> Result<Combination, RevealError> {
    let mut at = from;
    while parent[&at] != at {
        let up = parent[&at];
        let f = g.edge_between(up, at).expect("tree edges are graph edges");
        let mut moved = Combination::new();
        for (walk, q) in value.walks() {
            let (rebased, epsilon) = transfer_neighbor_walk(g, up, at, f, walk)?;
            // F(W) = F(W') - epsilon * w_f
            moved.add_walk(rebased, q.clone());
            moved.add_edge(f, -(q * Rational::from_integer(BigInt::from(epsilon))));
        }
        for (e, q) in value.edges() {
            moved.add_edge(e, q.clone());
        }
        value = moved;
        at = up;
    }
    Ok(value)
}

/// Certificates for every edge of a 2-connected block, based at `anchor`.
pub fn reveal_block(
    g: &Graph,
    bct: &BlockCutTree,
    anchor: VertexId,
    block: BlockId,
) -> Result<BTreeMap<EdgeId, RevealCertificate>, RevealError> {
    let mut doublings = Vec::new();
    Ok(
        reveal_block_combinations(g, bct, anchor, block, &mut doublings)?
            .into_iter()
            .map(|(e, value)| (e, value.into_certificate(anchor, Target::Edge(e))))
            .collect(),
    )
}

/// Everything [`reveal_all`] produces.
#[derive(Debug, Clone)]
pub struct Revelation {
    pub start: VertexId,
    /// One certificate per edge, based at `start`. Edge terms refer to other
    /// entries of this map.
    pub certificates: BTreeMap<EdgeId, RevealCertificate>,
    /// Every doubling identity the construction relied on.
    pub doublings: Vec<Doubling>,
}

impl Revelation {
    /// Certificates with all edge terms substituted away.
    pub fn flattened(&self) -> Result<BTreeMap<EdgeId, RevealCertificate>, RevealError> {
        flatten_all(&self.certificates)
    }
}

/// Reveals every edge of a connected graph of minimum degree 3 from `start`.
pub fn reveal_all(g: &Graph, start: VertexId) -> Result<Revelation, RevealError> {
    if let Some(v) = g.odometric_violation() {
        return Err(RevealError::NotOdometric(v));
    }
    let bct = BlockCutTree::new(g)?;
    let mut home = Revealer::new(g, &bct, start)?;
    let distance = hop_distances(g, start);
    let mut values: BTreeMap<EdgeId, Combination> = BTreeMap::new();
    let mut doublings = Vec::new();

    for (id, block) in bct.blocks().iter().enumerate() {
        if !block.is_biconnected() {
            let e = block.edges[0];
            values.insert(e, home.bridge(e)?);
        } else if block.contains_vertex(start) {
            values.extend(reveal_block_combinations(
                g,
                &bct,
                start,
                id,
                &mut doublings,
            )?);
        } else {
            let anchor = bct
                .block_cut_vertices(id)
                .into_iter()
                .min_by_key(|&c| (distance[c], c))
                .expect("a block of a connected graph with several blocks has a cut vertex");
            for (e, value) in reveal_block_combinations(g, &bct, anchor, id, &mut doublings)? {
                values.insert(e, home.lift_combination(anchor, &value)?);
            }
        }
    }
    doublings.append(&mut home.doublings);
    let certificates = values
        .into_iter()
        .map(|(e, value)| (e, value.into_certificate(start, Target::Edge(e))))
        .collect();
    Ok(Revelation {
        start,
        certificates,
        doublings,
    })
}

fn hop_distances(g: &Graph, from: VertexId) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests;
