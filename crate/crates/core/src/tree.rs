//! Plane trees with rotation systems, noncolliding partially directed trees
//! (ncpd-trees), coorientation labels, Whitney index, canonical codes and
//! planar automorphism groups.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("rotation system is not a tree: {0}")]
    NotATree(String),
    #[error("direction map collides: two directed edges point at each other")]
    Colliding,
    #[error("direction map has wrong length: {got} states for {expected} edges")]
    BadDirectionLength { got: usize, expected: usize },
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

/// A tree embedded in the plane, recorded as a rotation system: for each
/// vertex, the cyclic sequence of its neighbors. Two embedded trees are the
/// same iff some relabeling matches rotation lists up to cyclic shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    rotation: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
}

impl PlaneTree {
    /// Builds a plane tree from per-vertex neighbor lists in cyclic order.
    /// Checks connectivity, acyclicity and mutual consistency of the lists.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, TreeError> {
        let n = rotation.len();
        if n == 0 {
            return Err(TreeError::NotATree("no vertices".into()));
        }
        let mut edges = Vec::new();
        let mut edge_index = HashMap::new();
        for (v, nbrs) in rotation.iter().enumerate() {
            for &w in nbrs {
                if w >= n {
                    return Err(TreeError::NotATree(format!(
                        "vertex {v} lists neighbor {w} out of range"
                    )));
                }
                if w == v {
                    return Err(TreeError::NotATree(format!("self-loop at {v}")));
                }
                let key = (v.min(w), v.max(w));
                if !edge_index.contains_key(&key) {
                    edge_index.insert(key, edges.len());
                    edges.push(key);
                }
            }
        }
        if edges.len() != n - 1 {
            return Err(TreeError::NotATree(format!(
                "{} distinct edges for {} vertices",
                edges.len(),
                n
            )));
        }
        // Each edge must appear exactly once in each endpoint's list.
        for &(u, v) in &edges {
            let cu = rotation[u].iter().filter(|&&x| x == v).count();
            let cv = rotation[v].iter().filter(|&&x| x == u).count();
            if cu != 1 || cv != 1 {
                return Err(TreeError::NotATree(format!(
                    "edge ({u},{v}) appears {cu}/{cv} times in rotation lists"
                )));
            }
        }
        // Connectivity: n-1 edges + connected => tree.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &rotation[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(TreeError::NotATree("disconnected".into()));
        }
        Ok(PlaneTree {
            rotation,
            edges,
            edge_index,
        })
    }

    /// Single vertex, no edges: the dual of the empty Gauss diagram.
    pub fn single_vertex() -> Self {
        PlaneTree {
            rotation: vec![vec![]],
            edges: vec![],
            edge_index: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, u: usize, v: usize) -> usize {
        self.edge_index[&(u.min(v), u.max(v))]
    }

    /// Position of `neighbor` in the rotation list of `v`.
    pub fn slot(&self, v: usize, neighbor: usize) -> usize {
        self.rotation[v]
            .iter()
            .position(|&w| w == neighbor)
            .expect("neighbor not in rotation list")
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// `{"n": ..., "rotation": [[neighbor ids in cyclic order], ...]}`
    pub fn to_json(&self) -> Value {
        json!({ "n": self.n(), "rotation": self.rotation })
    }

    /// Vertices of the component of `keep` after deleting edge `e`, as a bitmask.
    fn side_mask(&self, e: usize, keep: usize) -> u64 {
        let (a, b) = self.edges[e];
        let mut mask = 1u64 << keep;
        let mut stack = vec![keep];
        while let Some(v) = stack.pop() {
            for &w in &self.rotation[v] {
                if (v, w) == (a, b) || (v, w) == (b, a) {
                    continue;
                }
                if mask & (1 << w) == 0 {
                    mask |= 1 << w;
                    stack.push(w);
                }
            }
        }
        mask
    }

    /// Canonical code of the underlying embedded tree with every edge
    /// undirected; used as the census tree key.
    pub fn canonical_code(&self) -> String {
        canonical_code_impl(self, None, false)
    }
}

/// Direction state of one tree edge. `From(v)` means the edge is directed
/// away from endpoint `v`, i.e. the block of `v` contains the block at the
/// other end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeDir {
    Undirected,
    From(usize),
}

impl EdgeDir {
    pub fn is_directed(&self) -> bool {
        !matches!(self, EdgeDir::Undirected)
    }
}

/// True iff no simple path contains two directed edges pointing at each
/// other; equivalently some root exists from which every directed edge
/// points away. Returns the equivalence via a root-existence scan.
pub fn validate_noncolliding(base: &PlaneTree, dirs: &[EdgeDir]) -> bool {
    !valid_roots(base, dirs).is_empty()
}

/// All vertices that can serve as a common source: every directed edge
/// points away from them along tree paths.
pub fn valid_roots(base: &PlaneTree, dirs: &[EdgeDir]) -> Vec<usize> {
    assert_eq!(dirs.len(), base.edges().len());
    let n = base.n();
    debug_assert!(n <= 64, "bitmask root scan limited to 64 vertices");
    let mut mask = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
    for (e, d) in dirs.iter().enumerate() {
        if let EdgeDir::From(v) = *d {
            mask &= base.side_mask(e, v);
            if mask == 0 {
                return vec![];
            }
        }
    }
    (0..n).filter(|&v| mask & (1 << v) != 0).collect()
}

/// A plane tree together with a noncolliding direction state per edge: the
/// complete invariant of a tree-like curve class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcpdTree {
    base: PlaneTree,
    dirs: Vec<EdgeDir>,
}

impl NcpdTree {
    pub fn new(base: PlaneTree, dirs: Vec<EdgeDir>) -> Result<Self, TreeError> {
        if dirs.len() != base.edges().len() {
            return Err(TreeError::BadDirectionLength {
                got: dirs.len(),
                expected: base.edges().len(),
            });
        }
        for (e, d) in dirs.iter().enumerate() {
            if let EdgeDir::From(v) = *d {
                let (a, b) = base.edges()[e];
                if v != a && v != b {
                    return Err(TreeError::NotATree(format!(
                        "direction of edge {e} names non-endpoint {v}"
                    )));
                }
            }
        }
        if !validate_noncolliding(&base, &dirs) {
            return Err(TreeError::Colliding);
        }
        Ok(NcpdTree { base, dirs })
    }

    pub fn all_undirected(base: PlaneTree) -> Self {
        let dirs = vec![EdgeDir::Undirected; base.edges().len()];
        NcpdTree { base, dirs }
    }

    pub fn base(&self) -> &PlaneTree {
        &self.base
    }

    pub fn dirs(&self) -> &[EdgeDir] {
        &self.dirs
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn edge_dir(&self, e: usize) -> EdgeDir {
        self.dirs[e]
    }

    /// Number of edges directed away from `v`.
    pub fn out_degree(&self, v: usize) -> usize {
        self.dirs
            .iter()
            .filter(|d| matches!(d, EdgeDir::From(u) if *u == v))
            .count()
    }

    /// A vertex from which every directed edge points away; exists by the
    /// noncolliding invariant. Smallest id, for determinism.
    pub fn source_root(&self) -> usize {
        valid_roots(&self.base, &self.dirs)[0]
    }

    /// Continuous coorientation labels: `label[root] = sign`, flipping across
    /// undirected edges and persisting across directed ones.
    pub fn coorientation(&self, root: usize, sign: i8) -> Vec<i8> {
        assert!(sign == 1 || sign == -1);
        let n = self.n();
        let mut label = vec![0i8; n];
        label[root] = sign;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in self.base.rotation(v) {
                if label[w] != 0 {
                    continue;
                }
                let e = self.base.edge_id(v, w);
                label[w] = match self.dirs[e] {
                    EdgeDir::Undirected => -label[v],
                    EdgeDir::From(_) => label[v],
                };
                stack.push(w);
            }
        }
        label
    }

    /// Absolute value of the Whitney index: |sum of coorientation labels|.
    /// The signed value depends on the curve orientation.
    pub fn whitney_index(&self) -> usize {
        let label = self.coorientation(0, 1);
        label.iter().map(|&s| s as i64).sum::<i64>().unsigned_abs() as usize
    }

    /// Canonical string equal for two ncpd-trees iff they are related by an
    /// orientation-preserving homeomorphism of the plane. With `reflect`,
    /// additionally minimizes over the mirror image.
    pub fn canonical_code(&self, reflect: bool) -> String {
        canonical_code_impl(&self.base, Some(&self.dirs), reflect)
    }

    /// Nested-parenthesis text form rooted at vertex 0.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        encode_rooted(&self.base, Some(&self.dirs), 0, usize::MAX, 0, false, &mut out);
        out
    }

    /// Nested JSON mirror of the text form.
    pub fn to_json(&self) -> Value {
        fn node(t: &NcpdTree, v: usize, parent: usize) -> Value {
            let deg = t.base.degree(v);
            let start = if parent == usize::MAX {
                0
            } else {
                (t.base.slot(v, parent) + 1) % deg
            };
            let mut children = Vec::new();
            for i in 0..deg {
                let w = t.base.rotation(v)[(start + i) % deg];
                if w == parent {
                    continue;
                }
                let e = t.base.edge_id(v, w);
                let marker = match t.dirs[e] {
                    EdgeDir::Undirected => "-",
                    EdgeDir::From(u) if u == v => ">",
                    EdgeDir::From(_) => "<",
                };
                let mut obj = node(t, w, v);
                obj["edge"] = json!(marker);
                children.push(obj);
            }
            json!({ "children": children })
        }
        node(self, 0, usize::MAX)
    }

    /// Parses the nested-parenthesis format: `tree := '(' (marker tree)* ')'`
    /// with markers `>` (directed parent to child), `<` (child to parent),
    /// `-` (undirected). Validates the noncolliding property.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0usize;
        // rotation lists under construction; children appended in order,
        // parent inserted first for non-root vertices.
        let mut rotation: Vec<Vec<usize>> = Vec::new();
        let mut dir_of: Vec<(usize, usize, char)> = Vec::new();

        fn skip_ws(chars: &[char], pos: &mut usize) {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        }

        fn parse_node(
            chars: &[char],
            pos: &mut usize,
            parent: Option<usize>,
            rotation: &mut Vec<Vec<usize>>,
            dir_of: &mut Vec<(usize, usize, char)>,
        ) -> Result<usize, TreeError> {
            skip_ws(chars, pos);
            if *pos >= chars.len() || chars[*pos] != '(' {
                return Err(TreeError::Parse {
                    col: *pos + 1,
                    msg: "expected '('".into(),
                });
            }
            *pos += 1;
            let v = rotation.len();
            rotation.push(Vec::new());
            if let Some(p) = parent {
                rotation[v].push(p);
            }
            loop {
                skip_ws(chars, pos);
                match chars.get(*pos) {
                    Some(')') => {
                        *pos += 1;
                        return Ok(v);
                    }
                    Some(&m @ ('>' | '<' | '-')) => {
                        *pos += 1;
                        let w = parse_node(chars, pos, Some(v), rotation, dir_of)?;
                        rotation[v].push(w);
                        dir_of.push((v, w, m));
                    }
                    Some(c) => {
                        return Err(TreeError::Parse {
                            col: *pos + 1,
                            msg: format!("unexpected character {c:?}"),
                        })
                    }
                    None => {
                        return Err(TreeError::Parse {
                            col: *pos + 1,
                            msg: "unexpected end of input".into(),
                        })
                    }
                }
            }
        }

        let root = parse_node(&chars, &mut pos, None, &mut rotation, &mut dir_of)?;
        debug_assert_eq!(root, 0);
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(TreeError::Parse {
                col: pos + 1,
                msg: "trailing input after tree".into(),
            });
        }
        let base = PlaneTree::from_rotation(rotation)?;
        let mut dirs = vec![EdgeDir::Undirected; base.edges().len()];
        for (p, c, m) in dir_of {
            let e = base.edge_id(p, c);
            dirs[e] = match m {
                '>' => EdgeDir::From(p),
                '<' => EdgeDir::From(c),
                _ => EdgeDir::Undirected,
            };
        }
        NcpdTree::new(base, dirs)
    }
}

impl fmt::Display for NcpdTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Rooted encoding: children in rotation order starting just after the entry
/// edge (or at `start_slot` for the root), each prefixed by its direction
/// marker. `mirror` reverses all rotation lists.
fn encode_rooted(
    base: &PlaneTree,
    dirs: Option<&[EdgeDir]>,
    v: usize,
    parent: usize,
    start_slot: usize,
    mirror: bool,
    out: &mut String,
) {
    out.push('(');
    let deg = base.degree(v);
    for i in 0..deg {
        let slot = if mirror {
            (start_slot + deg - i) % deg
        } else {
            (start_slot + i) % deg
        };
        let w = base.rotation(v)[slot];
        if w == parent {
            continue;
        }
        match dirs {
            Some(d) => {
                let e = base.edge_id(v, w);
                out.push(match d[e] {
                    EdgeDir::Undirected => '-',
                    EdgeDir::From(u) if u == v => '>',
                    EdgeDir::From(_) => '<',
                });
            }
            None => out.push('-'),
        }
        let wdeg = base.degree(w);
        let wslot = base.slot(w, v);
        let wstart = if mirror {
            (wslot + wdeg - 1) % wdeg
        } else {
            (wslot + 1) % wdeg
        };
        encode_rooted(base, dirs, w, v, wstart, mirror, out);
    }
    out.push(')');
}

fn canonical_code_impl(base: &PlaneTree, dirs: Option<&[EdgeDir]>, reflect: bool) -> String {
    let n = base.n();
    if n == 1 {
        return "()".to_string();
    }
    let mut best: Option<String> = None;
    let mirrors: &[bool] = if reflect { &[false, true] } else { &[false] };
    for &mirror in mirrors {
        for v in 0..n {
            for start in 0..base.degree(v) {
                let mut code = String::new();
                encode_rooted(base, dirs, v, usize::MAX, start, mirror, &mut code);
                if best.as_deref().map_or(true, |b| code.as_str() < b) {
                    best = Some(code);
                }
            }
        }
    }
    best.unwrap()
}

/// Kind of fixed point of the rotation realizing the planar automorphism
/// group: a vertex or the midpoint of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterKind {
    Vertex(usize),
    EdgeMidpoint(usize),
}

impl CenterKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CenterKind::Vertex(_) => "vertex",
            CenterKind::EdgeMidpoint(_) => "edge",
        }
    }
}

/// The group of orientation-preserving plane symmetries of an embedded tree:
/// cyclic of order `order`, generated by `generator` as a vertex permutation,
/// rotating about `center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryInfo {
    pub order: usize,
    pub center: CenterKind,
    pub generator: Vec<usize>,
}

/// Tree center by leaf peeling: one vertex or one edge.
fn tree_center(base: &PlaneTree) -> CenterKind {
    let n = base.n();
    if n == 1 {
        return CenterKind::Vertex(0);
    }
    let mut deg: Vec<usize> = (0..n).map(|v| base.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut frontier: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        let mut next = Vec::new();
        for &v in &frontier {
            removed[v] = true;
            remaining -= 1;
            for &w in base.rotation(v) {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    match rest.as_slice() {
        [c] => CenterKind::Vertex(*c),
        [a, b] => CenterKind::EdgeMidpoint(base.edge_id(*a, *b)),
        _ => unreachable!("leaf peeling leaves 1 or 2 vertices"),
    }
}

/// Builds the vertex permutation mapping the rooted subtree at `(v1, from p1)`
/// onto the structurally identical subtree at `(v2, from p2)`.
fn match_subtrees(
    base: &PlaneTree,
    v1: usize,
    p1: usize,
    v2: usize,
    p2: usize,
    perm: &mut [usize],
) {
    perm[v1] = v2;
    let d1 = base.degree(v1);
    let d2 = base.degree(v2);
    debug_assert_eq!(d1, d2);
    let s1 = if p1 == usize::MAX { 0 } else { (base.slot(v1, p1) + 1) % d1 };
    let s2 = if p2 == usize::MAX { 0 } else { (base.slot(v2, p2) + 1) % d2 };
    for i in 0..d1 {
        let w1 = base.rotation(v1)[(s1 + i) % d1];
        let w2 = base.rotation(v2)[(s2 + i) % d2];
        if w1 == p1 || w2 == p2 {
            debug_assert!(w1 == p1 && w2 == p2);
            continue;
        }
        match_subtrees(base, w1, v1, w2, v2, perm);
    }
}

/// Computes the planar automorphism group of an embedded tree. The group is
/// cyclic; its rotation center is the tree center, a vertex for order > 2.
pub fn planar_automorphisms(base: &PlaneTree) -> SymmetryInfo {
    let n = base.n();
    let center = tree_center(base);
    let identity: Vec<usize> = (0..n).collect();
    match center {
        CenterKind::Vertex(c) => {
            let d = base.degree(c);
            if d == 0 {
                return SymmetryInfo {
                    order: 1,
                    center,
                    generator: identity,
                };
            }
            // Rooted code of each arm, in rotation order around the center.
            let arms: Vec<String> = (0..d)
                .map(|i| {
                    let w = base.rotation(c)[i];
                    let mut code = String::new();
                    let wdeg = base.degree(w);
                    let wstart = (base.slot(w, c) + 1) % wdeg;
                    encode_rooted(base, None, w, c, wstart, false, &mut code);
                    code
                })
                .collect();
            // Minimal cyclic period of the arm sequence.
            let mut period = d;
            for m in 1..d {
                if d % m == 0 && (0..d).all(|i| arms[i] == arms[(i + m) % d]) {
                    period = m;
                    break;
                }
            }
            let order = d / period;
            if order == 1 {
                return SymmetryInfo {
                    order: 1,
                    center,
                    generator: identity,
                };
            }
            let mut perm = vec![usize::MAX; n];
            perm[c] = c;
            for i in 0..d {
                let w1 = base.rotation(c)[i];
                let w2 = base.rotation(c)[(i + period) % d];
                match_subtrees(base, w1, c, w2, c, &mut perm);
            }
            SymmetryInfo {
                order,
                center,
                generator: perm,
            }
        }
        CenterKind::EdgeMidpoint(e) => {
            let (a, b) = base.edges()[e];
            let code = |v: usize, p: usize| {
                let mut s = String::new();
                let deg = base.degree(v);
                let start = (base.slot(v, p) + 1) % deg;
                encode_rooted(base, None, v, p, start, false, &mut s);
                s
            };
            if code(a, b) == code(b, a) {
                let mut perm = vec![usize::MAX; n];
                match_subtrees(base, a, b, b, a, &mut perm);
                let mut full = vec![usize::MAX; n];
                for v in 0..n {
                    if perm[v] != usize::MAX {
                        full[v] = perm[v];
                        full[perm[v]] = v;
                    }
                }
                SymmetryInfo {
                    order: 2,
                    center,
                    generator: full,
                }
            } else {
                SymmetryInfo {
                    order: 1,
                    center,
                    generator: identity,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: usize) -> PlaneTree {
        let mut rot = vec![Vec::new(); n];
        for v in 0..n - 1 {
            rot[v].push(v + 1);
            rot[v + 1].push(v);
        }
        PlaneTree::from_rotation(rot).unwrap()
    }

    pub(crate) fn star(n: usize) -> PlaneTree {
        let mut rot = vec![Vec::new(); n];
        for v in 1..n {
            rot[0].push(v);
            rot[v].push(0);
        }
        PlaneTree::from_rotation(rot).unwrap()
    }

    #[test]
    fn reject_cycles_and_disconnection() {
        // triangle
        let rot = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        assert!(matches!(
            PlaneTree::from_rotation(rot),
            Err(TreeError::NotATree(_))
        ));
    }

    #[test]
    fn noncolliding_path_head_on() {
        let t = path(3);
        // a->b and c->b point at each other
        let e01 = t.edge_id(0, 1);
        let e12 = t.edge_id(1, 2);
        let mut dirs = vec![EdgeDir::Undirected; 2];
        dirs[e01] = EdgeDir::From(0);
        dirs[e12] = EdgeDir::From(2);
        assert!(!validate_noncolliding(&t, &dirs));
        // all undirected is fine
        assert!(validate_noncolliding(&t, &vec![EdgeDir::Undirected; 2]));
    }

    #[test]
    fn noncolliding_star_out() {
        let t = star(4);
        let dirs: Vec<EdgeDir> = (0..3).map(|_| EdgeDir::From(0)).collect();
        assert!(validate_noncolliding(&t, &dirs));
        assert_eq!(valid_roots(&t, &dirs), vec![0]);
    }

    /// Oracle: pairwise-path definition of the noncolliding property.
    pub(crate) fn noncolliding_oracle(base: &PlaneTree, dirs: &[EdgeDir]) -> bool {
        let n = base.n();
        // parent-pointer paths via BFS from every vertex
        let path_between = |a: usize, b: usize| -> Vec<usize> {
            let mut prev = vec![usize::MAX; n];
            let mut stack = vec![a];
            let mut seen = vec![false; n];
            seen[a] = true;
            while let Some(v) = stack.pop() {
                for &w in base.rotation(v) {
                    if !seen[w] {
                        seen[w] = true;
                        prev[w] = v;
                        stack.push(w);
                    }
                }
            }
            let mut path = vec![b];
            let mut v = b;
            while v != a {
                v = prev[v];
                path.push(v);
            }
            path.reverse();
            path
        };
        for e1 in 0..dirs.len() {
            for e2 in 0..dirs.len() {
                if e1 == e2 {
                    continue;
                }
                let (EdgeDir::From(u1), EdgeDir::From(u2)) = (dirs[e1], dirs[e2]) else {
                    continue;
                };
                let (a1, b1) = base.edges()[e1];
                let v1 = if u1 == a1 { b1 } else { a1 };
                let (a2, b2) = base.edges()[e2];
                let v2 = if u2 == a2 { b2 } else { a2 };
                // e1 and e2 point at each other iff the path from u1 to u2
                // starts with v1 ... no wait: e1 = u1->v1 points toward e2's
                // side and e2 = u2->v2 points back. They collide iff the path
                // u1 .. u2 passes through v1 right after u1 and through v2
                // right before u2.
                let p = path_between(u1, u2);
                if p.len() >= 2 && p[1] == v1 && p[p.len() - 2] == v2 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn noncolliding_matches_pairwise_oracle_exhaustively() {
        // all trees up to 6 vertices x all 3^(n-1) direction maps
        for n in 2..=6usize {
            for t in crate::census::enumerate_plane_trees(n).unwrap() {
                let m = t.edges().len();
                let mut counter = vec![0u8; m];
                loop {
                    let dirs: Vec<EdgeDir> = (0..m)
                        .map(|e| match counter[e] {
                            0 => EdgeDir::Undirected,
                            1 => EdgeDir::From(t.edges()[e].0),
                            _ => EdgeDir::From(t.edges()[e].1),
                        })
                        .collect();
                    assert_eq!(
                        validate_noncolliding(&t, &dirs),
                        noncolliding_oracle(&t, &dirs),
                        "tree {} dirs {:?}",
                        t.canonical_code(),
                        dirs
                    );
                    // increment base-3 counter
                    let mut i = 0;
                    loop {
                        if i == m {
                            break;
                        }
                        counter[i] += 1;
                        if counter[i] < 3 {
                            break;
                        }
                        counter[i] = 0;
                        i += 1;
                    }
                    if i == m {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn coorientation_parity_rule() {
        // path a-b-c, both edges undirected, root a, +1 -> (+1,-1,+1)
        let t = NcpdTree::all_undirected(path(3));
        assert_eq!(t.coorientation(0, 1), vec![1, -1, 1]);
        // 2 vertices, directed edge: labels equal
        let base = path(2);
        let t = NcpdTree::new(base, vec![EdgeDir::From(0)]).unwrap();
        assert_eq!(t.coorientation(0, 1), vec![1, 1]);
        assert_eq!(t.coorientation(1, 1), vec![1, 1]);
    }

    #[test]
    fn coorientation_negation_and_pair_rule() {
        for n in 2..=5usize {
            for base in crate::census::enumerate_plane_trees(n).unwrap() {
                for dirs in crate::census::enumerate_ncpd(&base) {
                    let t = NcpdTree::new(base.clone(), dirs).unwrap();
                    let plus = t.coorientation(0, 1);
                    let minus = t.coorientation(0, -1);
                    assert!(plus.iter().zip(&minus).all(|(a, b)| *a == -*b));
                    // label(b1) = (-1)^q(b1,b2) label(b2) with q = number of
                    // undirected edges on the connecting path
                    for b1 in 0..n {
                        for b2 in 0..n {
                            let q = undirected_on_path(&t, b1, b2);
                            let want = if q % 2 == 0 { plus[b2] } else { -plus[b2] };
                            assert_eq!(plus[b1], want);
                        }
                    }
                }
            }
        }
    }

    fn undirected_on_path(t: &NcpdTree, a: usize, b: usize) -> usize {
        let n = t.n();
        let mut prev = vec![usize::MAX; n];
        let mut seen = vec![false; n];
        seen[a] = true;
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for &w in t.base().rotation(v) {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = v;
                    stack.push(w);
                }
            }
        }
        let mut q = 0;
        let mut v = b;
        while v != a {
            let p = prev[v];
            let e = t.base().edge_id(p, v);
            if !t.edge_dir(e).is_directed() {
                q += 1;
            }
            v = p;
        }
        q
    }

    #[test]
    fn whitney_examples() {
        let fig8 = NcpdTree::all_undirected(path(2));
        assert_eq!(fig8.whitney_index(), 0);
        let lima = NcpdTree::new(path(2), vec![EdgeDir::From(0)]).unwrap();
        assert_eq!(lima.whitney_index(), 2);
        let loop1 = NcpdTree::all_undirected(PlaneTree::single_vertex());
        assert_eq!(loop1.whitney_index(), 1);
    }

    #[test]
    fn whitney_parity_matches_vertex_count() {
        for n in 1..=6usize {
            for base in crate::census::enumerate_plane_trees(n).unwrap() {
                for dirs in crate::census::enumerate_ncpd(&base) {
                    let t = NcpdTree::new(base.clone(), dirs).unwrap();
                    assert_eq!(t.whitney_index() % 2, n % 2);
                }
            }
        }
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["()", "(>())", "(-())", "(-()-())", "(>()-())", "(-(<()))"] {
            let t = NcpdTree::parse(s).unwrap();
            assert_eq!(t.to_text(), s);
        }
    }

    #[test]
    fn parse_rejects_colliding() {
        assert_eq!(NcpdTree::parse("(>(<()))"), Err(TreeError::Colliding));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(matches!(
            NcpdTree::parse("(-("),
            Err(TreeError::Parse { .. })
        ));
        assert!(matches!(
            NcpdTree::parse("()x"),
            Err(TreeError::Parse { .. })
        ));
    }

    #[test]
    fn canonical_code_examples() {
        // two rooted encodings of the 2-vertex directed tree agree
        let t1 = NcpdTree::parse("(>())").unwrap();
        let t2 = NcpdTree::parse("(<())").unwrap();
        assert_eq!(t1.canonical_code(false), t2.canonical_code(false));
        // re-rooted path
        let p1 = NcpdTree::parse("(-(-()))").unwrap();
        let p2 = NcpdTree::parse("(-()-())").unwrap();
        assert_eq!(p1.canonical_code(false), p2.canonical_code(false));
        // direction distinguishes nesting
        let a = NcpdTree::parse("(>(-()))").unwrap();
        let b = NcpdTree::parse("(<(-()))").unwrap();
        assert_ne!(a.canonical_code(false), b.canonical_code(false));
        // single vertex
        let one = NcpdTree::all_undirected(PlaneTree::single_vertex());
        assert_eq!(one.canonical_code(false), "()");
    }

    #[test]
    fn canonical_code_invariant_under_rerepresentation() {
        // rotating internal rotation lists and renumbering vertices does not
        // change the code
        for n in 2..=7usize {
            for base in crate::census::enumerate_plane_trees(n).unwrap() {
                let code = base.canonical_code();
                // rotate every rotation list by 1 (same cyclic order)
                let mut rot: Vec<Vec<usize>> =
                    (0..n).map(|v| base.rotation(v).to_vec()).collect();
                for list in rot.iter_mut() {
                    if list.len() > 1 {
                        list.rotate_left(1);
                    }
                }
                let again = PlaneTree::from_rotation(rot).unwrap();
                assert_eq!(again.canonical_code(), code);
                // renumber: swap labels 0 <-> n-1
                let swap = |v: usize| {
                    if v == 0 {
                        n - 1
                    } else if v == n - 1 {
                        0
                    } else {
                        v
                    }
                };
                let mut rot2 = vec![Vec::new(); n];
                for v in 0..n {
                    rot2[swap(v)] = base.rotation(v).iter().map(|&w| swap(w)).collect();
                }
                let relabeled = PlaneTree::from_rotation(rot2).unwrap();
                assert_eq!(relabeled.canonical_code(), code);
            }
        }
    }

    #[test]
    fn reflection_flag_merges_mirror_images() {
        // center with arms leaf / path2 / path3 in the two mirror rotations
        let build = |order: [usize; 3]| {
            // arms: 0 = leaf, 1 = path of 2, 2 = path of 3
            let mut rot: Vec<Vec<usize>> = vec![Vec::new()];
            let mut next = 1usize;
            let mut arm_root = [0usize; 3];
            for (kind, slot) in order.iter().enumerate() {
                let len = [1, 2, 3][*slot];
                let _ = kind;
                let mut prev = 0usize;
                for j in 0..len {
                    let v = next;
                    next += 1;
                    rot.push(Vec::new());
                    if j == 0 {
                        arm_root[*slot] = v;
                        rot[0].push(v);
                        rot[v].push(0);
                    } else {
                        rot[v].push(prev);
                        rot[prev].push(v);
                    }
                    prev = v;
                }
            }
            let _ = arm_root;
            PlaneTree::from_rotation(rot).unwrap()
        };
        let t1 = build([0, 1, 2]);
        let t2 = build([0, 2, 1]);
        let a = NcpdTree::all_undirected(t1);
        let b = NcpdTree::all_undirected(t2);
        assert_ne!(a.canonical_code(false), b.canonical_code(false));
        assert_eq!(a.canonical_code(true), b.canonical_code(true));
    }

    #[test]
    fn symmetry_small_cases() {
        let p3 = planar_automorphisms(&path(3));
        assert_eq!(p3.order, 2);
        assert!(matches!(p3.center, CenterKind::Vertex(1)));
        let p4 = planar_automorphisms(&path(4));
        assert_eq!(p4.order, 2);
        assert!(matches!(p4.center, CenterKind::EdgeMidpoint(_)));
        let s4 = planar_automorphisms(&star(4));
        assert_eq!(s4.order, 3);
        assert!(matches!(s4.center, CenterKind::Vertex(0)));
        let s7 = planar_automorphisms(&star(7));
        assert_eq!(s7.order, 6);
    }

    #[test]
    fn symmetry_generator_has_declared_order_and_free_action() {
        for n in 2..=7usize {
            for base in crate::census::enumerate_plane_trees(n).unwrap() {
                let info = planar_automorphisms(&base);
                // generator order
                let mut perm: Vec<usize> = (0..n).collect();
                let mut steps = 0usize;
                loop {
                    perm = perm.iter().map(|&v| info.generator[v]).collect();
                    steps += 1;
                    if (0..n).all(|v| perm[v] == v) {
                        break;
                    }
                    assert!(steps <= info.order);
                }
                assert_eq!(steps, info.order, "tree {}", base.canonical_code());
                if info.order > 1 {
                    // p divides the number of leaves
                    assert_eq!(base.leaves().len() % info.order, 0);
                    // action free away from the center
                    for v in 0..n {
                        if info.generator[v] == v {
                            match info.center {
                                CenterKind::Vertex(c) => assert_eq!(v, c),
                                CenterKind::EdgeMidpoint(_) => {
                                    panic!("edge-center half-turn fixes vertex {v}")
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
