//! Combinatorics and geometry of tree-like plane curves.
//!
//! A tree-like curve is a generic immersion of the circle in the plane such
//! that removing any double point disconnects the image. Such curves are
//! encoded combinatorially: the Gauss code of the curve is a planar chord
//! diagram, its dual is a plane tree, and the full curve class is captured by
//! a noncolliding partially directed tree (ncpd-tree). On top of that
//! encoding this crate decides whether all inflection points of a curve class
//! can be removed by a diffeomorphism of the plane, computes the exact
//! minimal number of unremovable inflections together with lower and upper
//! bounds, counts curve classes per Gauss diagram, and draws explicit
//! realizations as SVG.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so everything here is safe to share across threads without
//! coordination.

pub mod census;
pub mod gauss;
pub mod inflect;
pub mod render;
pub mod svg;
pub mod traversal;
pub mod tree;

pub use census::{census_table, count_total_ncpd, enumerate_ncpd, enumerate_plane_trees, CensusRow};
pub use gauss::{gauss_to_plane_tree, parse_gauss_code, plane_tree_to_gauss, GaussDiagram};
pub use inflect::{min_inflections, BoundReport, LocalCoorientation};
pub use render::{realize, verify_gauss, RealizedCurve, RenderOptions};
pub use traversal::CurveTraversal;
pub use tree::{planar_automorphisms, validate_noncolliding, EdgeDir, NcpdTree, PlaneTree};
