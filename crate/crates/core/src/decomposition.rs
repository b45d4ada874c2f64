//! Block-cut tree and the path searches the reveal constructions need.
//!
//! Blocks are numbered by their smallest edge id, so every result here is
//! deterministic for a fixed graph. All searches count hops; neighbors are
//! scanned in increasing vertex order.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{EdgeId, Graph, VertexId, Walk};

pub type BlockId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {0} is not a bridge")]
    NotABridge(EdgeId),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Bridge,
    Biconnected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
}

impl Block {
    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_biconnected(&self) -> bool {
        self.kind == BlockKind::Biconnected
    }
}

/// Blocks, cut vertices and the bipartite tree joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    blocks: Vec<Block>,
    cut_vertices: Vec<VertexId>,
    edge_block: Vec<BlockId>,
    vertex_blocks: Vec<Vec<BlockId>>,
}

/// Hopcroft-Tarjan on edges, iterative.
fn biconnected_edge_sets(g: &Graph) -> Vec<Vec<EdgeId>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut components = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter it, next neighbor slot)
        let mut frames: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent_edge, slot) = *frame;
            if let Some(&(w, e)) = g.neighbors(v).get(slot) {
                frame.2 += 1;
                if Some(e) == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push(e);
                    frames.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            frames.pop();
            if let (Some(&(u, _, _)), Some(entry)) = (frames.last(), parent_edge) {
                low[u] = low[u].min(low[v]);
                if low[v] >= disc[u] {
                    let mut component = Vec::new();
                    while let Some(top) = edge_stack.pop() {
                        component.push(top);
                        if top == entry {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}

impl BlockCutTree {
    pub fn new(g: &Graph) -> Result<Self, DecompositionError> {
        if !g.is_connected() {
            return Err(DecompositionError::Disconnected);
        }
        let mut blocks: Vec<Block> = biconnected_edge_sets(g)
            .into_iter()
            .map(|mut edges| {
                edges.sort_unstable();
                let mut vertices: Vec<VertexId> = edges
                    .iter()
                    .flat_map(|&e| {
                        let (a, b) = g.edge(e);
                        [a, b]
                    })
                    .collect();
                vertices.sort_unstable();
                vertices.dedup();
                let kind = if edges.len() == 1 {
                    BlockKind::Bridge
                } else {
                    BlockKind::Biconnected
                };
                Block {
                    kind,
                    edges,
                    vertices,
                }
            })
            .collect();
        blocks.sort_by_key(|b| b.edges[0]);

        let mut edge_block = vec![0; g.edge_count()];
        let mut vertex_blocks = vec![Vec::new(); g.vertex_count()];
        for (id, block) in blocks.iter().enumerate() {
            for &e in &block.edges {
                edge_block[e] = id;
            }
            for &v in &block.vertices {
                vertex_blocks[v].push(id);
            }
        }
        let cut_vertices = (0..g.vertex_count())
            .filter(|&v| vertex_blocks[v].len() > 1)
            .collect();
        Ok(BlockCutTree {
            blocks,
            cut_vertices,
            edge_block,
            vertex_blocks,
        })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, id: BlockId) -> &Block {
        &self.blocks[id]
    }

    pub fn cut_vertices(&self) -> &[VertexId] {
        &self.cut_vertices
    }

    pub fn is_cut_vertex(&self, v: VertexId) -> bool {
        self.vertex_blocks[v].len() > 1
    }

    pub fn block_of_edge(&self, e: EdgeId) -> BlockId {
        self.edge_block[e]
    }

    pub fn is_bridge(&self, e: EdgeId) -> bool {
        self.blocks[self.edge_block[e]].kind == BlockKind::Bridge
    }

    /// Blocks containing `v`, ascending. In the tree these are the block
    /// nodes adjacent to the cut-vertex node `v`.
    pub fn blocks_of_vertex(&self, v: VertexId) -> &[BlockId] {
        &self.vertex_blocks[v]
    }

    /// Cut vertices of a block, ascending: its neighbors in the tree.
    pub fn block_cut_vertices(&self, b: BlockId) -> Vec<VertexId> {
        self.blocks[b]
            .vertices
            .iter()
            .copied()
            .filter(|&v| self.is_cut_vertex(v))
            .collect()
    }

    /// Lowest-id 2-connected block containing `v`.
    pub fn biconnected_block_of(&self, v: VertexId) -> Option<BlockId> {
        self.vertex_blocks[v]
            .iter()
            .copied()
            .find(|&b| self.blocks[b].is_biconnected())
    }

    fn require_biconnected(&self, b: BlockId) -> Result<&Block, DecompositionError> {
        match self.blocks.get(b) {
            Some(block) if block.is_biconnected() => Ok(block),
            Some(_) => Err(precondition(format!("block {b} is a bridge"))),
            None => Err(precondition(format!("no block {b}"))),
        }
    }
}

fn precondition(msg: String) -> DecompositionError {
    DecompositionError::Precondition(msg)
}

/// Shortest path from `from` to the first vertex accepted by `is_target`,
/// moving only along edges allowed by `edge_ok` and never entering `banned`.
fn bfs_path(
    g: &Graph,
    from: VertexId,
    edge_ok: impl Fn(EdgeId) -> bool,
    banned: Option<VertexId>,
    is_target: impl Fn(VertexId) -> bool,
) -> Option<Walk> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if is_target(v) {
            let mut path = vec![v];
            let mut cur = v;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(Walk::new(path).expect("nonempty"));
        }
        for &(w, e) in g.neighbors(v) {
            if parent[w] == usize::MAX && Some(w) != banned && edge_ok(e) {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree, DecompositionError> {
    BlockCutTree::new(g)
}

/// Shortest path from `from` to `to`, or `None` if `to` is unreachable.
pub fn shortest_path(g: &Graph, from: VertexId, to: VertexId) -> Option<Walk> {
    if from >= g.vertex_count() || to >= g.vertex_count() {
        return None;
    }
    bfs_path(g, from, |_| true, None, |v| v == to)
}

/// Shortest path inside `block` from `from` to `to`.
pub fn path_in_block(
    g: &Graph,
    bct: &BlockCutTree,
    block: BlockId,
    from: VertexId,
    to: VertexId,
) -> Result<Walk, DecompositionError> {
    let b = bct
        .blocks
        .get(block)
        .ok_or_else(|| precondition(format!("no block {block}")))?;
    if !b.contains_vertex(from) || !b.contains_vertex(to) {
        return Err(precondition(format!(
            "{from} and {to} must lie in block {block}"
        )));
    }
    bfs_path(g, from, |e| bct.edge_block[e] == block, None, |v| v == to)
        .ok_or_else(|| precondition(format!("no path from {from} to {to} in block {block}")))
}

/// A simple path from `x` to `y` inside a 2-connected block that never
/// visits `u`. Deleting one vertex from a 2-connected block leaves it
/// connected, so such a path always exists.
pub fn path_in_block_avoiding(
    g: &Graph,
    bct: &BlockCutTree,
    block: BlockId,
    x: VertexId,
    y: VertexId,
    u: VertexId,
) -> Result<Walk, DecompositionError> {
    let b = bct.require_biconnected(block)?;
    if x == y || x == u || y == u {
        return Err(precondition(format!("{x}, {y}, {u} must be distinct")));
    }
    if ![x, y, u].iter().all(|&v| b.contains_vertex(v)) {
        return Err(precondition(format!(
            "{x}, {y}, {u} must lie in block {block}"
        )));
    }
    let in_block = |e: EdgeId| bct.edge_block[e] == block;
    for w in [x, y] {
        match g.edge_between(w, u) {
            Some(e) if in_block(e) => {}
            _ => return Err(precondition(format!("{w} is not a block neighbor of {u}"))),
        }
    }
    bfs_path(g, x, in_block, Some(u), |v| v == y)
        .ok_or_else(|| precondition(format!("block {block} minus {u} is disconnected")))
}

/// Result of [`leafward_escape`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Escape {
    pub walk: Walk,
    /// Cut vertex of `block` where the walk ends.
    pub end: VertexId,
    /// The 2-connected leaf block reached.
    pub block: BlockId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TreeNode {
    Block(BlockId),
    Cut(VertexId),
}

/// From the cut vertex `u`, walks the block-cut tree away from `avoid_block`
/// to the nearest leaf 2-connected block (lowest id among equally near
/// leaves), threading a shortest path through every block passed.
///
/// The returned walk is a simple path from `u` to a cut vertex of the leaf,
/// shares no edge with `avoid_block`, and its last edge lies outside the leaf.
/// It is the empty walk at `u` when `u` itself belongs to the leaf.
pub fn leafward_escape(
    g: &Graph,
    bct: &BlockCutTree,
    u: VertexId,
    avoid_block: BlockId,
) -> Result<Escape, DecompositionError> {
    if avoid_block >= bct.blocks.len() || !bct.blocks[avoid_block].contains_vertex(u) {
        return Err(precondition(format!("{u} is not in block {avoid_block}")));
    }
    if !bct.is_cut_vertex(u) {
        return Err(precondition(format!("{u} is not a cut vertex")));
    }

    let mut block_parent: Vec<Option<VertexId>> = vec![None; bct.blocks.len()];
    let mut cut_parent: Vec<Option<BlockId>> = vec![None; g.vertex_count()];
    let mut visited_block = vec![false; bct.blocks.len()];
    visited_block[avoid_block] = true;
    let mut frontier = vec![TreeNode::Cut(u)];
    let mut leaf = None;
    while !frontier.is_empty() && leaf.is_none() {
        let mut next = Vec::new();
        let mut leaves = Vec::new();
        for node in frontier {
            match node {
                TreeNode::Cut(c) => {
                    for &b in bct.blocks_of_vertex(c) {
                        if !visited_block[b] {
                            visited_block[b] = true;
                            block_parent[b] = Some(c);
                            let is_leaf = bct.block_cut_vertices(b).len() == 1;
                            if is_leaf && bct.blocks[b].is_biconnected() {
                                leaves.push(b);
                            }
                            next.push(TreeNode::Block(b));
                        }
                    }
                }
                TreeNode::Block(b) => {
                    for c in bct.block_cut_vertices(b) {
                        if Some(c) != block_parent[b] && cut_parent[c].is_none() && c != u {
                            cut_parent[c] = Some(b);
                            next.push(TreeNode::Cut(c));
                        }
                    }
                }
            }
        }
        leaf = leaves.into_iter().min();
        frontier = next;
    }
    let leaf = leaf.ok_or_else(|| precondition(format!("no 2-connected leaf block beyond {u}")))?;

    // Tree path back from the leaf: leaf <- c_k <- b_k <- ... <- c_0 = u.
    let mut hops: Vec<(BlockId, VertexId)> = Vec::new(); // (block crossed, cut vertex reached)
    let end = block_parent[leaf].expect("leaf was reached from a cut vertex");
    let mut c = end;
    while c != u {
        let b = cut_parent[c].expect("every cut vertex but u has a parent block");
        hops.push((b, c));
        c = block_parent[b].expect("every reached block has a parent cut vertex");
    }
    hops.reverse();
    let mut walk = Walk::empty(u);
    let mut at = u;
    for (b, next) in hops {
        let segment = path_in_block(g, bct, b, at, next)?;
        walk = walk
            .concat(&segment)
            .expect("segments in distinct blocks form a simple path");
        at = next;
    }
    Ok(Escape {
        walk,
        end,
        block: leaf,
    })
}

/// For a bridge `e`, the shortest path from one of its endpoints to a vertex
/// of a 2-connected block that does not cross `e`. The path may be empty.
///
/// Ties go to the path with fewer edges, then the smaller starting endpoint,
/// then the lower block id, then the smaller final vertex.
pub fn nearest_block_path(
    g: &Graph,
    bct: &BlockCutTree,
    e: EdgeId,
) -> Result<Walk, DecompositionError> {
    if e >= g.edge_count() || !bct.is_bridge(e) {
        return Err(DecompositionError::NotABridge(e));
    }
    let (a, b) = g.edge(e);
    let mut best: Option<((usize, VertexId, BlockId, VertexId), Walk)> = None;
    for start in [a, b] {
        // Level-by-level so that every target at the minimal distance is seen.
        let mut parent = vec![usize::MAX; g.vertex_count()];
        parent[start] = start;
        let mut level = vec![start];
        let mut depth = 0;
        while !level.is_empty() {
            let found = level
                .iter()
                .filter_map(|&v| bct.biconnected_block_of(v).map(|blk| (blk, v)))
                .min();
            if let Some((blk, v)) = found {
                let mut path = vec![v];
                let mut cur = v;
                while cur != start {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                let key = (depth, start, blk, v);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, Walk::new(path).expect("nonempty")));
                }
                break;
            }
            let mut next = Vec::new();
            for &v in &level {
                for &(w, f) in g.neighbors(v) {
                    if f != e && parent[w] == usize::MAX {
                        parent[w] = v;
                        next.push(w);
                    }
                }
            }
            next.sort_unstable();
            level = next;
            depth += 1;
        }
    }
    best.map(|(_, walk)| walk)
        .ok_or_else(|| precondition(format!("no 2-connected block reachable from bridge {e}")))
}
