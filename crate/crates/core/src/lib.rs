//! Spindle convexity: r-hulls of random points, disc-caps, r-duals and the
//! Monte Carlo machinery used to check their asymptotic behaviour.
//!
//! Bodies are smooth convex discs given by a support function
//! ([`body::ConvexBody`]). The r-hull of a point set ([`hull::r_hull`]) is the
//! intersection of all radius-`r` discs containing it; its dual counterpart is
//! the intersection of radius-`r` discs centered at the points
//! ([`dual::disc_intersection`]).

pub mod asymptotics;
pub mod body;
pub mod cap;
pub mod dual;
pub mod error;
pub mod geom;
pub mod hull;
pub mod mc;
pub mod numeric;

pub use body::{BodySpec, ConvexBody};
pub use error::{Error, ErrorClass, Result};
pub use geom::Point2;
pub use hull::{r_hull, r_hull_oracle, DiscPolygon};
pub use mc::{ExperimentConfig, Model, SummaryStats};
