//! Exact planar geometry over the rationals: numbers, points, 2×2 matrices,
//! convex polygons and segments. No floating point is used anywhere.

mod matrix;
mod point;
mod polygon;
mod rational;

pub use matrix::Mat2;
pub use point::{orient, pt, Point2};
pub use polygon::{
    convex_hull, edge_line, primitive_direction, Closedness, EdgeLine, Hull, Location, RationalPolygon,
    Segment,
};
pub(crate) use polygon::integers_between;
pub use rational::{lcm_denominators, Rational};

impl RationalPolygon {
    /// Convex hull of the lattice points in the closed polygon.
    pub fn integral_hull(&self) -> Hull {
        let kernel = crate::lattice::ColumnKernel::new(self);
        let mut pts = Vec::new();
        kernel.for_each_column(1, |x, lo, hi| {
            pts.push(Point2::new(x.clone().into(), lo.into()));
            pts.push(Point2::new(x.into(), hi.into()));
        });
        convex_hull(&pts)
    }
}
