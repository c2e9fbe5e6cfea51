//! Regular polygons that share a point-to-vertex distance multiset.
//!
//! Given the distances `d1..dn` from a point `M` to the vertices of a regular
//! n-gon, there are exactly two non-congruent regular n-gons producing the
//! same distances (unless `M` is on the circumcircle): one with `M` inside
//! its circumcircle and one with `M` outside. Their circumradius `R` and
//! center offset `L` swap roles between the two.
//!
//! - [`geometry`]: points, polygons, distance lists and multiset comparison.
//! - [`averages`]: cyclic averages of even powers and their identities.
//! - [`dual`]: both `(R, L)` solutions from a distance list.
//! - [`reconstruction`]: coordinates of the second polygon.
//! - [`pompeiu`]: the equilateral-triangle closed forms and constructions.
//! - [`two_points`]: the two points seeing two polygons with a shared vertex
//!   alike.
//! - [`oracle`]: closed-form-free brute-force search used for verification.
//! - [`cli`] and [`svg`]: the JSON job runner and figure output behind the
//!   `polydual` binary.

pub mod averages;
pub mod cli;
pub mod dual;
mod error;
pub mod geometry;
mod numeric;
pub mod oracle;
pub mod pompeiu;
pub mod reconstruction;
pub mod svg;
pub mod two_points;

pub use error::{Error, Result};
pub use geometry::{Distances, Point2, RegularPolygon};
