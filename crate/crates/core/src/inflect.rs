//! Nonflattening criterion, admissible local coorientations, inflection
//! counting, exact minimization and the reversing-pair / suspicious-joint
//! bounds.
//!
//! A local coorientation picks, for every side of the curve, the outward or
//! inward normal with respect to that side's building block. A passage
//! between consecutive sides creates an inflection exactly when the choice is
//! discontinuous as a plane field along the smooth branch through the double
//! point: equal block-relative signs across an undirected edge, or unequal
//! signs across a directed edge. The minimal number of inflection points of
//! the curve class is the minimum of created inflections over all admissible
//! local coorientations.

use serde::Serialize;
use thiserror::Error;

use crate::traversal::CurveTraversal;
use crate::tree::{EdgeDir, NcpdTree};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InflectError {
    #[error("tree has fewer than 2 leaves")]
    DegenerateLeafCount,
    #[error("standard local coorientation requested on a reversing path")]
    PathReversing,
}

/// Per-side sign: `+1` outward, `-1` inward, indexed by traversal side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCoorientation(pub Vec<i8>);

impl LocalCoorientation {
    /// The coorientation induced by continuous labels: every side of a block
    /// gets the block's label. Creates zero inflections by construction.
    pub fn continuous(t: &NcpdTree) -> Self {
        let labels = t.coorientation(0, 1);
        let trav = CurveTraversal::new(t);
        LocalCoorientation(trav.sides.iter().map(|s| labels[s.vertex]).collect())
    }
}

/// Decides whether the curve class contains a representative without
/// inflection points: for one of the two continuous coorientations, every
/// degree-1 and degree-2 block is outward and every inward block of degree
/// k >= 3 has at most k - 3 edges directed away from it.
pub fn is_nonflattening(t: &NcpdTree) -> bool {
    let labels = t.coorientation(0, 1);
    let check = |flip: i8| {
        (0..t.n()).all(|v| {
            let lab = labels[v] * flip;
            let deg = t.base().degree(v);
            match deg {
                0 => true, // simple loop
                1 | 2 => lab == 1,
                k => lab == 1 || t.out_degree(v) + 3 <= k,
            }
        })
    };
    check(1) || check(-1)
}

/// Realizability of a locally cooriented curve: (a) every 1-gon side is
/// outward; (b) every 2-gon has at least one outward side; (c) a block of
/// degree k with all sides inward has at most k - 3 edges directed away.
pub fn is_admissible(t: &NcpdTree, cc: &LocalCoorientation) -> bool {
    let trav = CurveTraversal::new(t);
    is_admissible_with(t, &trav, &cc.0)
}

fn is_admissible_with(t: &NcpdTree, trav: &CurveTraversal, sigma: &[i8]) -> bool {
    assert_eq!(sigma.len(), trav.len());
    let by_vertex = trav.sides_of_vertex(t.n());
    for v in 0..t.n() {
        let deg = t.base().degree(v);
        if deg == 0 {
            continue;
        }
        let all_inward = by_vertex[v].iter().all(|&i| sigma[i] == -1);
        match deg {
            1 | 2 => {
                if all_inward {
                    return false;
                }
            }
            k => {
                if all_inward && t.out_degree(v) + 3 > k {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of passages that create an inflection under `cc`.
pub fn count_inflections(t: &NcpdTree, cc: &LocalCoorientation) -> usize {
    let trav = CurveTraversal::new(t);
    count_inflections_with(t, &trav, &cc.0)
}

fn passage_creates(directed: bool, a: i8, b: i8) -> bool {
    if directed {
        a != b
    } else {
        a == b
    }
}

fn count_inflections_with(t: &NcpdTree, trav: &CurveTraversal, sigma: &[i8]) -> usize {
    let s = trav.len();
    (0..trav.passages.len())
        .filter(|&i| {
            passage_creates(
                trav.passage_directed(t, i),
                sigma[i],
                sigma[(i + 1) % s],
            )
        })
        .count()
}

/// One segment of the curve between cyclically consecutive 1-gon sides,
/// containing no other 1-gon side.
#[derive(Debug, Clone)]
pub struct ConnectingPath {
    pub start_leaf: usize,
    pub end_leaf: usize,
    /// Side indices along the segment, inclusive of both leaf sides.
    pub sides: Vec<usize>,
    /// Passage indices strictly inside the segment.
    pub passages: Vec<usize>,
    /// Whether the two leaf blocks carry opposite continuous labels.
    pub reversing: bool,
}

/// The connecting paths of the curve, one per cyclically consecutive pair of
/// leaves. Errors on trees with fewer than two leaves (the simple loop).
pub fn connecting_paths(t: &NcpdTree) -> Result<Vec<ConnectingPath>, InflectError> {
    let trav = CurveTraversal::new(t);
    connecting_paths_with(t, &trav)
}

fn connecting_paths_with(
    t: &NcpdTree,
    trav: &CurveTraversal,
) -> Result<Vec<ConnectingPath>, InflectError> {
    let leaf_pos = trav.leaf_side_positions(t);
    if leaf_pos.len() < 2 {
        return Err(InflectError::DegenerateLeafCount);
    }
    let labels = t.coorientation(0, 1);
    let s = trav.len();
    let mut out = Vec::with_capacity(leaf_pos.len());
    for j in 0..leaf_pos.len() {
        let from = leaf_pos[j];
        let to = leaf_pos[(j + 1) % leaf_pos.len()];
        let mut sides = vec![from];
        let mut passages = Vec::new();
        let mut i = from;
        while i != to {
            passages.push(i);
            i = (i + 1) % s;
            sides.push(i);
        }
        let start_leaf = trav.sides[from].vertex;
        let end_leaf = trav.sides[to].vertex;
        out.push(ConnectingPath {
            start_leaf,
            end_leaf,
            sides,
            passages,
            reversing: labels[start_leaf] != labels[end_leaf],
        });
    }
    Ok(out)
}

/// Lower bound for the minimal number of inflections: the number of sign
/// changes in the cyclic sequence of continuous labels of the 1-gon blocks,
/// taken in their natural cyclic order. Always even and independent of the
/// label choice.
pub fn lower_bound_rev(t: &NcpdTree) -> usize {
    let trav = CurveTraversal::new(t);
    let leaf_pos = trav.leaf_side_positions(t);
    if leaf_pos.len() < 2 {
        return 0;
    }
    let labels = t.coorientation(0, 1);
    let m = leaf_pos.len();
    (0..m)
        .filter(|&j| {
            let a = trav.sides[leaf_pos[j]].vertex;
            let b = trav.sides[leaf_pos[(j + 1) % m]].vertex;
            labels[a] != labels[b]
        })
        .count()
}

/// One of the two smooth runs of a joint through the curve.
#[derive(Debug, Clone)]
pub struct JointThread {
    /// Contiguous side indices in curve order.
    pub sides: Vec<usize>,
    /// Index of the connecting path containing this thread.
    pub path: usize,
}

/// A maximal chain of 2-gon blocks joined by undirected edges, crossed by
/// exactly two threads of the curve.
#[derive(Debug, Clone)]
pub struct Joint {
    pub vertices: Vec<usize>,
    pub threads: [JointThread; 2],
}

/// All joints of the curve. Requires at least 2 leaves to assign threads to
/// connecting paths; returns an empty list when there are no 2-gon blocks.
pub fn joints(t: &NcpdTree) -> Vec<Joint> {
    let trav = CurveTraversal::new(t);
    let paths = connecting_paths_with(t, &trav).unwrap_or_default();
    joints_with(t, &trav, &paths)
}

fn joints_with(t: &NcpdTree, trav: &CurveTraversal, paths: &[ConnectingPath]) -> Vec<Joint> {
    let n = t.n();
    let deg2: Vec<bool> = (0..n).map(|v| t.base().degree(v) == 2).collect();
    let mut comp = vec![usize::MAX; n];
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if !deg2[v] || comp[v] != usize::MAX {
            continue;
        }
        let id = chains.len();
        let mut members = Vec::new();
        let mut stack = vec![v];
        comp[v] = id;
        while let Some(u) = stack.pop() {
            members.push(u);
            for &w in t.base().rotation(u) {
                if deg2[w] && comp[w] == usize::MAX {
                    let e = t.base().edge_id(u, w);
                    if !t.edge_dir(e).is_directed() {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
        }
        chains.push(members);
    }
    if chains.is_empty() {
        return Vec::new();
    }
    // side -> containing path, for non-leaf sides (unique)
    let s = trav.len();
    let mut side_path = vec![usize::MAX; s];
    for (pi, p) in paths.iter().enumerate() {
        for &i in &p.sides {
            if t.base().degree(trav.sides[i].vertex) != 1 {
                side_path[i] = pi;
            }
        }
    }
    chains
        .into_iter()
        .map(|members| {
            let in_chain: Vec<bool> = (0..s)
                .map(|i| members.contains(&trav.sides[i].vertex))
                .collect();
            // maximal cyclic runs of chain sides; a chain of m blocks has 2m
            // sides forming exactly two runs
            let mut runs: Vec<Vec<usize>> = Vec::new();
            let mut i = 0;
            // start at a side outside the chain (leaf sides exist, so one does)
            while in_chain[i] {
                i += 1;
            }
            let start = i;
            loop {
                if in_chain[i] {
                    let mut run = Vec::new();
                    while in_chain[i] {
                        run.push(i);
                        i = (i + 1) % s;
                    }
                    runs.push(run);
                } else {
                    i = (i + 1) % s;
                }
                if i == start {
                    break;
                }
            }
            assert_eq!(runs.len(), 2, "a joint has exactly two threads");
            let threads = [
                JointThread {
                    path: side_path[runs[0][0]],
                    sides: std::mem::take(&mut runs[0]),
                },
                JointThread {
                    path: side_path[runs[1][0]],
                    sides: std::mem::take(&mut runs[1]),
                },
            ];
            Joint { vertices: members, threads }
        })
        .collect()
}

/// The standard local coorientation of a nonreversing connecting path: the
/// first 1-gon side is outward and the signs extend by continuity; the final
/// side comes out outward as well (asserted).
pub fn standard_local_coorientation(
    t: &NcpdTree,
    path: &ConnectingPath,
) -> Result<Vec<(usize, i8)>, InflectError> {
    let trav = CurveTraversal::new(t);
    standard_with(t, &trav, path)
}

fn standard_with(
    t: &NcpdTree,
    trav: &CurveTraversal,
    path: &ConnectingPath,
) -> Result<Vec<(usize, i8)>, InflectError> {
    if path.reversing {
        return Err(InflectError::PathReversing);
    }
    let mut out = Vec::with_capacity(path.sides.len());
    let mut sign = 1i8;
    out.push((path.sides[0], sign));
    for (step, &p) in path.passages.iter().enumerate() {
        if !trav.passage_directed(t, p) {
            sign = -sign;
        }
        out.push((path.sides[step + 1], sign));
    }
    assert_eq!(
        out.last().unwrap().1,
        1,
        "nonreversing path must end outward"
    );
    Ok(out)
}

/// Breakdown of the upper bound: `rev + 2 (jt + bl)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UpperBoundDetail {
    pub value: usize,
    pub rev: usize,
    pub jt: usize,
    pub bl: usize,
}

/// Upper bound for the minimal number of inflections via suspicious joints
/// and suspicious blocks under the standard local coorientations of the
/// nonreversing paths.
pub fn upper_bound(t: &NcpdTree) -> Result<UpperBoundDetail, InflectError> {
    let trav = CurveTraversal::new(t);
    let paths = connecting_paths_with(t, &trav)?;
    let rev = paths.iter().filter(|p| p.reversing).count();
    // side sign under the standard coorientation of each nonreversing path;
    // a leaf side can carry a sign from two different paths.
    let s = trav.len();
    let mut std_signs: Vec<Vec<(usize, i8)>> = vec![Vec::new(); s];
    for (pi, p) in paths.iter().enumerate() {
        if p.reversing {
            continue;
        }
        for (side, sign) in standard_with(t, &trav, p)? {
            std_signs[side].push((pi, sign));
        }
    }
    let joints = joints_with(t, &trav, &paths);
    let mut jt = 0usize;
    for joint in &joints {
        let nonrev: Vec<bool> = joint
            .threads
            .iter()
            .map(|th| !paths[th.path].reversing)
            .collect();
        let suspicious = match (nonrev[0], nonrev[1]) {
            (true, true) => {
                // some 2-gon of the joint has both sides inward
                joint.vertices.iter().any(|&v| {
                    joint.threads.iter().all(|th| {
                        th.sides.iter().any(|&i| {
                            trav.sides[i].vertex == v
                                && std_signs[i].iter().any(|&(_, sg)| sg == -1)
                        })
                    })
                })
            }
            (false, false) => true,
            _ => {
                // exactly one thread on a nonreversing path: some block's
                // side on that thread is inward
                let th = if nonrev[0] {
                    &joint.threads[0]
                } else {
                    &joint.threads[1]
                };
                th.sides
                    .iter()
                    .any(|&i| std_signs[i].iter().any(|&(_, sg)| sg == -1))
            }
        };
        if suspicious {
            jt += 1;
        }
    }
    // suspicious blocks, read literally including degree <= 2: at least
    // k - 3 leaving edges, and every side on a nonreversing path inward.
    let by_vertex = trav.sides_of_vertex(t.n());
    let mut bl = 0usize;
    for v in 0..t.n() {
        let deg = t.base().degree(v);
        if deg == 0 {
            continue;
        }
        if t.out_degree(v) + 3 < deg {
            continue;
        }
        let all_nonrev_sides_inward = by_vertex[v]
            .iter()
            .all(|&i| std_signs[i].iter().all(|&(_, sg)| sg == -1));
        if all_nonrev_sides_inward {
            bl += 1;
        }
    }
    Ok(UpperBoundDetail {
        value: rev + 2 * (jt + bl),
        rev,
        jt,
        bl,
    })
}

/// Result of the bound computation: `lower <= exact <= upper` whenever the
/// exhaustive search ran; `exact` is `None` when the side count exceeds the
/// budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub lower: usize,
    pub exact: Option<usize>,
    pub upper: usize,
    pub jt: usize,
    pub bl: usize,
    pub witness: Option<Vec<i8>>,
}

/// Default side-count limit for the exhaustive search.
pub const DEFAULT_BUDGET: usize = 26;

/// Exact minimal inflection count over all admissible local coorientations,
/// by depth-first search over per-side signs with branch-and-bound pruning.
/// The witness is the lexicographically smallest admissible optimum in
/// traversal order with outward before inward.
pub fn min_inflections(t: &NcpdTree, budget: usize) -> BoundReport {
    if t.n() == 1 {
        return BoundReport {
            lower: 0,
            exact: Some(0),
            upper: 0,
            jt: 0,
            bl: 0,
            witness: Some(vec![1]),
        };
    }
    let lower = lower_bound_rev(t);
    let ub = upper_bound(t).expect("trees with n >= 2 have >= 2 leaves");
    let trav = CurveTraversal::new(t);
    let s = trav.len();
    if s > budget {
        return BoundReport {
            lower,
            exact: None,
            upper: ub.value,
            jt: ub.jt,
            bl: ub.bl,
            witness: None,
        };
    }

    let n = t.n();
    let side_vertex: Vec<usize> = trav.sides.iter().map(|sd| sd.vertex).collect();
    let degree: Vec<usize> = (0..n).map(|v| t.base().degree(v)).collect();
    let out_deg: Vec<usize> = (0..n).map(|v| t.out_degree(v)).collect();
    let directed: Vec<bool> = (0..s).map(|i| trav.passage_directed(t, i)).collect();

    struct Search {
        s: usize,
        side_vertex: Vec<usize>,
        degree: Vec<usize>,
        out_deg: Vec<usize>,
        directed: Vec<bool>,
        sigma: Vec<i8>,
        remaining: Vec<usize>,
        minus_seen: Vec<usize>,
        best: Option<usize>,
        witness: Vec<i8>,
    }

    impl Search {
        fn admissible_on_completion(&self, v: usize) -> bool {
            if self.minus_seen[v] < self.degree[v] {
                return true;
            }
            match self.degree[v] {
                1 | 2 => false,
                k => self.out_deg[v] + 3 <= k,
            }
        }

        fn dfs(&mut self, i: usize, count: usize) {
            if let Some(b) = self.best {
                if count >= b {
                    return;
                }
            }
            if i == self.s {
                self.best = Some(count);
                self.witness = self.sigma.clone();
                return;
            }
            let v = self.side_vertex[i];
            for sign in [1i8, -1i8] {
                if sign == -1 && self.degree[v] == 1 {
                    continue; // 1-gon sides must be outward
                }
                self.sigma[i] = sign;
                self.remaining[v] -= 1;
                if sign == -1 {
                    self.minus_seen[v] += 1;
                }
                let mut added = 0usize;
                let mut ok = true;
                if i > 0 && passage_creates(self.directed[i - 1], self.sigma[i - 1], sign) {
                    added += 1;
                }
                if i == self.s - 1
                    && passage_creates(self.directed[self.s - 1], sign, self.sigma[0])
                {
                    added += 1;
                }
                if self.remaining[v] == 0 && !self.admissible_on_completion(v) {
                    ok = false;
                }
                if ok {
                    self.dfs(i + 1, count + added);
                }
                self.remaining[v] += 1;
                if sign == -1 {
                    self.minus_seen[v] -= 1;
                }
            }
            self.sigma[i] = 0;
        }
    }

    let mut search = Search {
        s,
        side_vertex,
        remaining: degree.clone(),
        degree,
        out_deg,
        directed,
        sigma: vec![0; s],
        minus_seen: vec![0; n],
        best: None,
        witness: vec![],
    };
    search.dfs(0, 0);
    let exact = search.best.expect("every ncpd-tree admits an admissible coorientation");
    debug_assert!(lower <= exact && exact <= ub.value);
    BoundReport {
        lower,
        exact: Some(exact),
        upper: ub.value,
        jt: ub.jt,
        bl: ub.bl,
        witness: Some(search.witness),
    }
}
