//! The cyclic side/passage sequence of a tree-like curve.
//!
//! The curve decomposes into building blocks, one per tree vertex; a block of
//! degree d is a curvilinear polygon with d corners (the double points on its
//! boundary) and d sides. Walking along the curve visits sides and crosses
//! one double point between consecutive sides. Combinatorially this walk is
//! the contour walk of the embedded tree: arriving at vertex `w` through edge
//! `e`, the walk continues through the angular sector after `e` and leaves
//! through the next edge of `w`'s rotation list.

use crate::tree::{EdgeDir, NcpdTree};

/// One side: the angular sector of `vertex` between rotation slots `sector`
/// and `sector + 1` (mod degree).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Side {
    pub vertex: usize,
    pub sector: usize,
}

/// One passage: the crossing of `edge` between consecutive sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Passage {
    pub edge: usize,
}

#[derive(Debug, Clone)]
pub struct CurveTraversal {
    /// Sides in curve order; `2(n-1)` of them for `n >= 2`, one degenerate
    /// side for the simple loop.
    pub sides: Vec<Side>,
    /// `passages[i]` crosses between `sides[i]` and `sides[(i+1) % len]`;
    /// empty for the simple loop.
    pub passages: Vec<Passage>,
}

impl CurveTraversal {
    pub fn new(t: &NcpdTree) -> Self {
        let base = t.base();
        let n = base.n();
        if n == 1 {
            return CurveTraversal {
                sides: vec![Side {
                    vertex: 0,
                    sector: 0,
                }],
                passages: vec![],
            };
        }
        let total = 2 * (n - 1);
        let mut sides = Vec::with_capacity(total);
        let mut passages = Vec::with_capacity(total);
        // darts (v, slot): crossing out of v through rotation[v][slot]
        let (mut v, mut slot) = (0usize, 0usize);
        for _ in 0..total {
            let w = base.rotation(v)[slot];
            let e = base.edge_id(v, w);
            passages.push(Passage { edge: e });
            let j = base.slot(w, v);
            sides.push(Side {
                vertex: w,
                sector: j,
            });
            v = w;
            slot = (j + 1) % base.degree(w);
        }
        debug_assert_eq!((v, slot), (0, 0));
        // passages[i] currently precedes sides[i]; shift so that passages[i]
        // follows sides[i].
        passages.rotate_left(1);
        CurveTraversal { sides, passages }
    }

    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }

    /// Indices of sides belonging to degree-1 vertices, in curve order.
    pub fn leaf_side_positions(&self, t: &NcpdTree) -> Vec<usize> {
        (0..self.sides.len())
            .filter(|&i| t.base().degree(self.sides[i].vertex) == 1)
            .collect()
    }

    /// Side indices of each vertex, in curve order.
    pub fn sides_of_vertex(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); n];
        for (i, s) in self.sides.iter().enumerate() {
            out[s.vertex].push(i);
        }
        out
    }

    /// Whether the passage at index `i` crosses a directed edge.
    pub fn passage_directed(&self, t: &NcpdTree, i: usize) -> bool {
        matches!(t.edge_dir(self.passages[i].edge), EdgeDir::From(_))
    }
}
