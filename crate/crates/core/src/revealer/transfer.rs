//! Moving closed walks between neighboring base vertices.

use super::RevealError;
use crate::graph::{EdgeId, Graph, VertexId, Walk};

/// Rebases a closed walk from `u` onto its neighbor `home` across the edge
/// `f = {home, u}`. Returns the new walk `W'` and `epsilon` with
/// `F(W') = F(W) + epsilon * w_f`:
///
/// * `home` is neither the second nor the penultimate vertex: wrap the walk
///   in `f` on both sides, `epsilon = 2`.
/// * exactly one of them is `home`: orient the walk so `home` comes second and
///   rotate its start to `home`, `epsilon = 0`.
/// * both are `home`: strip the first and last edge, `epsilon = -2`.
pub fn transfer_neighbor_walk(
    g: &Graph,
    home: VertexId,
    u: VertexId,
    f: EdgeId,
    closed: &Walk,
) -> Result<(Walk, i32), RevealError> {
    if f >= g.edge_count() || g.edge(f) != (home.min(u), home.max(u)) || home == u {
        return Err(RevealError::Precondition(format!(
            "edge {f} does not join {home} and {u}"
        )));
    }
    if !g.is_valid_nb_walk(closed) || !closed.is_closed() || closed.first() != u {
        return Err(RevealError::Precondition(format!(
            "{closed} is not a closed non-backtracking walk from {u}"
        )));
    }
    let (Some(second), Some(penultimate)) = (closed.second(), closed.penultimate()) else {
        return Err(RevealError::Precondition(
            "cannot transfer the empty walk".into(),
        ));
    };

    let (walk, epsilon) = match (second == home, penultimate == home) {
        (false, false) => {
            let wrapped = Walk::chain(&Walk::edge(home, u), [closed, &Walk::edge(u, home)])?;
            (wrapped, 2)
        }
        (true, true) => {
            let vs = closed.vertices();
            (Walk::new(vs[1..vs.len() - 1].to_vec())?, -2)
        }
        (starts_home, _) => {
            let oriented = if starts_home {
                closed.clone()
            } else {
                closed.reverse()
            };
            let mut vs = oriented.into_vertices();
            vs.remove(0);
            vs.push(home);
            (Walk::new(vs)?, 0)
        }
    };
    debug_assert!(g.is_valid_nb_walk(&walk) && walk.is_closed() && walk.first() == home);
    Ok((walk, epsilon))
}

/// Splits a closed walk at every visit to its base vertex. Each piece is a
/// closed walk from the base that does not pass through it in between.
pub fn split_at_visits(closed: &Walk) -> Vec<Walk> {
    let base = closed.first();
    let vs = closed.vertices();
    let mut pieces = Vec::new();
    let mut start = 0;
    for (i, &v) in vs.iter().enumerate().skip(1) {
        if v == base {
            pieces.push(Walk::new(vs[start..=i].to_vec()).expect("nonempty slice"));
            start = i;
        }
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    fn w(vs: &[usize]) -> Walk {
        Walk::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn three_cases_on_k4() {
        let g = fixtures::k4();
        let f = g.graph().edge_between(0, 1).unwrap();
        let cases = [
            (w(&[1, 2, 3, 1]), w(&[0, 1, 2, 3, 1, 0]), 2),
            (w(&[1, 0, 2, 3, 1]), w(&[0, 2, 3, 1, 0]), 0),
            (w(&[1, 0, 2, 3, 0, 1]), w(&[0, 2, 3, 0]), -2),
        ];
        for (input, expected, eps) in cases {
            let (out, e) = transfer_neighbor_walk(g.graph(), 0, 1, f, &input).unwrap();
            assert_eq!(out, expected);
            assert_eq!(e, eps);
            assert!(g.graph().is_valid_nb_walk(&out));
            let lhs = g.walk_weight(&out).unwrap();
            let rhs =
                g.walk_weight(&input).unwrap() + g.weight(f) * Rational::from_integer(e.into());
            assert_eq!(lhs, rhs);
            assert_eq!(out.len() as i64 - input.len() as i64, i64::from(e));
        }
    }

    #[test]
    fn penultimate_home_is_reoriented() {
        let g = fixtures::k4();
        let f = g.graph().edge_between(0, 1).unwrap();
        let (out, e) = transfer_neighbor_walk(g.graph(), 0, 1, f, &w(&[1, 2, 3, 0, 1])).unwrap();
        assert_eq!((out, e), (w(&[0, 3, 2, 1, 0]), 0));
    }

    #[test]
    fn rejects_bad_input() {
        let g = fixtures::k4();
        let f = g.graph().edge_between(0, 1).unwrap();
        assert!(transfer_neighbor_walk(g.graph(), 0, 2, f, &w(&[2, 1, 3, 2])).is_err());
        assert!(transfer_neighbor_walk(g.graph(), 0, 1, f, &w(&[2, 1, 3, 2])).is_err());
        assert!(transfer_neighbor_walk(g.graph(), 0, 1, f, &w(&[1])).is_err());
        assert!(transfer_neighbor_walk(g.graph(), 0, 1, f, &w(&[1, 2, 1])).is_err());
    }

    #[test]
    fn figure_eight_splits_in_two() {
        // two triangles through the cut vertex 3 of the shared-K4 fixture
        let eight = w(&[3, 0, 1, 3, 4, 5, 3]);
        let pieces = split_at_visits(&eight);
        assert_eq!(pieces, vec![w(&[3, 0, 1, 3]), w(&[3, 4, 5, 3])]);
        assert!(split_at_visits(&Walk::empty(3)).is_empty());
    }
}
