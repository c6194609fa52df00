//! Gauss codes, chord-diagram planarity and duality with plane trees.
//!
//! The Gauss diagram of a generic immersion of the circle records the two
//! preimages of each double point as a chord on the base circle. The curve is
//! tree-like exactly when the chord diagram is planar (no two chords
//! interleave cyclically). In that case the disk minus the chords has k+1
//! faces whose adjacency is a tree: the dual plane tree.

use std::collections::HashMap;

use serde_json::{json, Value};
use thiserror::Error;

use crate::tree::PlaneTree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaussError {
    #[error("gauss code has an odd number of tokens ({0})")]
    OddLength(usize),
    #[error("label {0:?} occurs {1} time(s), expected exactly 2")]
    BadMultiplicity(String, usize),
    #[error("gauss diagram is not tree-like (chords interleave)")]
    NotTreeLike,
}

/// A double-occurrence word read cyclically around the base circle. Labels
/// are normalized to first-occurrence order, so `word[i] < k` and label `j`
/// first appears before label `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    word: Vec<u32>,
    k: usize,
}

/// Parses a whitespace-separated Gauss code. Tokens are arbitrary strings;
/// they are renamed to dense integers in first-occurrence order.
pub fn parse_gauss_code(text: &str) -> Result<GaussDiagram, GaussError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    GaussDiagram::from_tokens(&tokens)
}

impl GaussDiagram {
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, GaussError> {
        if tokens.len() % 2 != 0 {
            return Err(GaussError::OddLength(tokens.len()));
        }
        let mut ids: HashMap<&str, u32> = HashMap::new();
        let mut word = Vec::with_capacity(tokens.len());
        for t in tokens {
            let t = t.as_ref();
            let next = ids.len() as u32;
            let id = *ids.entry(t).or_insert(next);
            word.push(id);
        }
        let k = ids.len();
        let mut counts = vec![0usize; k];
        for &c in &word {
            counts[c as usize] += 1;
        }
        for (label, &c) in counts.iter().enumerate() {
            if c != 2 {
                let name = ids
                    .iter()
                    .find(|(_, &v)| v == label as u32)
                    .map(|(s, _)| s.to_string())
                    .unwrap_or_default();
                return Err(GaussError::BadMultiplicity(name, c));
            }
        }
        Ok(GaussDiagram { word, k })
    }

    /// Builds a diagram from an integer word, renaming labels to
    /// first-occurrence order.
    pub fn from_word(word: &[u32]) -> Result<Self, GaussError> {
        let tokens: Vec<String> = word.iter().map(|w| w.to_string()).collect();
        Self::from_tokens(&tokens)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Planarity of the chord diagram: no two chords interleave cyclically.
    /// A single stack pass over the word decides this, because cutting a
    /// cyclically non-crossing diagram at any point leaves a well-nested
    /// linear word.
    pub fn is_tree_like(&self) -> bool {
        let mut stack: Vec<u32> = Vec::new();
        let mut open = vec![false; self.k];
        for &c in &self.word {
            if open[c as usize] {
                if stack.pop() != Some(c) {
                    return false;
                }
            } else {
                open[c as usize] = true;
                stack.push(c);
            }
        }
        debug_assert!(stack.is_empty());
        true
    }

    /// Minimal first-occurrence relabeling over all rotations: equal for two
    /// diagrams iff they agree up to cyclic rotation and renaming.
    pub fn canonical_word(&self) -> Vec<u32> {
        let m = self.word.len();
        if m == 0 {
            return Vec::new();
        }
        let mut best: Option<Vec<u32>> = None;
        for start in 0..m {
            let mut rename: HashMap<u32, u32> = HashMap::new();
            let mut cand = Vec::with_capacity(m);
            for i in 0..m {
                let c = self.word[(start + i) % m];
                let next = rename.len() as u32;
                cand.push(*rename.entry(c).or_insert(next));
            }
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
        best.unwrap()
    }

    pub fn equivalent(&self, other: &GaussDiagram) -> bool {
        self.k == other.k && self.canonical_word() == other.canonical_word()
    }

    /// `{"k": ..., "word": [...]}` with zero-based labels.
    pub fn to_json(&self) -> Value {
        json!({ "k": self.k, "word": self.word })
    }

    /// Human form with one-based labels, e.g. `1 2 2 1`.
    pub fn to_text(&self) -> String {
        self.word
            .iter()
            .map(|c| (c + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The dual plane tree of a planar Gauss diagram, together with the
/// correspondence between chords and tree edges and between disk faces and
/// tree vertices.
#[derive(Debug, Clone)]
pub struct DualTree {
    pub tree: PlaneTree,
    /// `chord_edge[c]` is the tree edge crossing chord `c`.
    pub chord_edge: Vec<usize>,
    /// `arc_vertex[i]` is the tree vertex of the face adjacent to the circle
    /// arc between word positions `i` and `i + 1`.
    pub arc_vertex: Vec<usize>,
}

/// Builds the dual tree: a vertex per face of the disk minus the chords, an
/// edge per chord, rotation order induced by the disk embedding.
pub fn gauss_to_plane_tree(gd: &GaussDiagram) -> Result<DualTree, GaussError> {
    if !gd.is_tree_like() {
        return Err(GaussError::NotTreeLike);
    }
    let m = gd.word().len();
    if m == 0 {
        return Ok(DualTree {
            tree: PlaneTree::single_vertex(),
            chord_edge: vec![],
            arc_vertex: vec![],
        });
    }
    let k = gd.k();
    // partner[i] = the other position of the chord at position i
    let mut first = vec![usize::MAX; k];
    let mut partner = vec![0usize; m];
    for (i, &c) in gd.word().iter().enumerate() {
        let c = c as usize;
        if first[c] == usize::MAX {
            first[c] = i;
        } else {
            partner[i] = first[c];
            partner[first[c]] = i;
        }
    }
    // Faces are the orbits of arc -> partner(arc + 1). Walking an orbit
    // traverses the face boundary counterclockwise, crossing its chords in
    // rotation order.
    let mut arc_vertex = vec![usize::MAX; m];
    let mut rotation_chords: Vec<Vec<u32>> = Vec::new();
    for arc0 in 0..m {
        if arc_vertex[arc0] != usize::MAX {
            continue;
        }
        let face = rotation_chords.len();
        let mut chords = Vec::new();
        let mut arc = arc0;
        loop {
            arc_vertex[arc] = face;
            let pos = (arc + 1) % m;
            chords.push(gd.word()[pos]);
            arc = partner[pos];
            if arc == arc0 {
                break;
            }
        }
        rotation_chords.push(chords);
    }
    let faces = rotation_chords.len();
    debug_assert_eq!(faces, k + 1);
    // chord -> its two faces: the face just inside (after the first
    // occurrence) and just outside (after the second occurrence).
    let mut chord_faces = vec![(usize::MAX, usize::MAX); k];
    for (i, &c) in gd.word().iter().enumerate() {
        let f = arc_vertex[i];
        let slot = &mut chord_faces[c as usize];
        if slot.0 == usize::MAX {
            slot.0 = f;
        } else {
            slot.1 = f;
        }
    }
    // rotation lists in terms of neighbor vertices
    let rotation: Vec<Vec<usize>> = rotation_chords
        .iter()
        .enumerate()
        .map(|(f, chords)| {
            chords
                .iter()
                .map(|&c| {
                    let (x, y) = chord_faces[c as usize];
                    if x == f {
                        y
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let tree = PlaneTree::from_rotation(rotation)
        .expect("dual of a planar chord diagram is a plane tree");
    let chord_edge = (0..k)
        .map(|c| {
            let (x, y) = chord_faces[c];
            tree.edge_id(x, y)
        })
        .collect();
    Ok(DualTree {
        tree,
        chord_edge,
        arc_vertex,
    })
}

/// Contour-walk encoding of an embedded tree: walking the unique face records
/// each edge twice, producing a double-occurrence word. Inverse of
/// `gauss_to_plane_tree` on equivalence classes.
pub fn plane_tree_to_gauss(tr: &PlaneTree) -> GaussDiagram {
    let n = tr.n();
    if n == 1 {
        return GaussDiagram { word: vec![], k: 0 };
    }
    let total = 2 * (n - 1);
    let mut word = Vec::with_capacity(total);
    let (mut v, mut slot) = (0usize, 0usize);
    for _ in 0..total {
        let w = tr.rotation(v)[slot];
        word.push(tr.edge_id(v, w) as u32);
        let j = tr.slot(w, v);
        v = w;
        slot = (j + 1) % tr.degree(w);
    }
    GaussDiagram::from_word(&word).expect("contour walk yields a double-occurrence word")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let gd = parse_gauss_code("1 2 2 1").unwrap();
        assert_eq!(gd.k(), 2);
        assert_eq!(gd.word(), &[0, 1, 1, 0]);
        let empty = parse_gauss_code("").unwrap();
        assert_eq!(empty.k(), 0);
        assert_eq!(parse_gauss_code("1 2 1"), Err(GaussError::OddLength(3)));
        assert_eq!(
            parse_gauss_code("1 1 2 3 3 2 2 2"),
            Err(GaussError::BadMultiplicity("2".into(), 4))
        );
    }

    /// Oracle: chords (a,a) and (b,b) interleave iff exactly one endpoint of
    /// b lies strictly between the endpoints of a in the linear order.
    pub(crate) fn tree_like_oracle(gd: &GaussDiagram) -> bool {
        let mut pos: Vec<Vec<usize>> = vec![Vec::new(); gd.k()];
        for (i, &c) in gd.word().iter().enumerate() {
            pos[c as usize].push(i);
        }
        for a in 0..gd.k() {
            for b in a + 1..gd.k() {
                let (a1, a2) = (pos[a][0], pos[a][1]);
                let inside = (pos[b][0] > a1 && pos[b][0] < a2) as u8
                    + (pos[b][1] > a1 && pos[b][1] < a2) as u8;
                if inside == 1 {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn tree_like_examples() {
        assert!(!parse_gauss_code("1 2 1 2").unwrap().is_tree_like());
        assert!(parse_gauss_code("1 2 2 1").unwrap().is_tree_like());
        assert!(parse_gauss_code("").unwrap().is_tree_like());
    }

    #[test]
    fn dual_tree_examples() {
        let d = gauss_to_plane_tree(&parse_gauss_code("1 1").unwrap()).unwrap();
        assert_eq!(d.tree.n(), 2);
        let d = gauss_to_plane_tree(&parse_gauss_code("1 2 2 1").unwrap()).unwrap();
        assert_eq!(d.tree.n(), 3);
        // middle vertex adjacent to both chords
        let degs: Vec<usize> = (0..3).map(|v| d.tree.degree(v)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 2).count(), 1);
        let d = gauss_to_plane_tree(&parse_gauss_code("").unwrap()).unwrap();
        assert_eq!(d.tree.n(), 1);
        assert_eq!(
            gauss_to_plane_tree(&parse_gauss_code("1 2 1 2").unwrap()),
            Err(GaussError::NotTreeLike)
        );
    }

    #[test]
    fn k_plus_one_vertices() {
        for text in ["1 1", "1 2 2 1", "1 1 2 2 3 3", "1 2 2 1 3 3"] {
            let gd = parse_gauss_code(text).unwrap();
            let d = gauss_to_plane_tree(&gd).unwrap();
            assert_eq!(d.tree.n(), gd.k() + 1);
        }
    }

    #[test]
    fn contour_walk_examples() {
        assert_eq!(plane_tree_to_gauss(&PlaneTree::single_vertex()).k(), 0);
        let two = PlaneTree::from_rotation(vec![vec![1], vec![0]]).unwrap();
        assert_eq!(plane_tree_to_gauss(&two).word(), &[0, 0]);
        let p3 =
            PlaneTree::from_rotation(vec![vec![1], vec![0, 2], vec![1]]).unwrap();
        let gd = plane_tree_to_gauss(&p3);
        assert!(gd.equivalent(&parse_gauss_code("1 2 2 1").unwrap()));
    }

    #[test]
    fn canonical_word_identifies_rotations() {
        let a = parse_gauss_code("1 2 2 1").unwrap();
        let b = parse_gauss_code("1 1 2 2").unwrap();
        assert!(a.equivalent(&b));
        let c = parse_gauss_code("1 2 1 2").unwrap();
        assert!(!a.equivalent(&c));
    }
}
