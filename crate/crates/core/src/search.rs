//! Exhaustive enumeration of convex lattice polygons in a box.
//!
//! Every polygon is produced once, as the counterclockwise cycle starting at
//! its lexicographically least vertex `v0`; the remaining vertices appear in
//! increasing angle about `v0`. A partial cycle is always convex, and any
//! completion contains it, so its interior and total lattice point counts
//! (from Pick's formula) only grow. Branches exceeding the limits are cut.

use std::ops::ControlFlow;

use num_integer::Integer;

/// Which polygons to visit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_interior: u64,
    /// Bound on interior plus boundary lattice points.
    pub max_total: u64,
}

/// Lattice point counts of an integral polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PickCounts {
    pub interior: u64,
    pub boundary: u64,
    /// Twice the area.
    pub area2: u64,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn lattice_steps(a: (i64, i64), b: (i64, i64)) -> i64 {
    (b.0 - a.0).gcd(&(b.1 - a.1))
}

/// Pick counts of a counterclockwise lattice polygon.
pub fn pick_counts(vertices: &[(i64, i64)]) -> PickCounts {
    let n = vertices.len();
    let mut area2 = 0;
    let mut boundary = 0;
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        area2 += a.0 * b.1 - a.1 * b.0;
        boundary += lattice_steps(a, b);
    }
    PickCounts {
        interior: ((area2 - boundary + 2) / 2) as u64,
        boundary: boundary as u64,
        area2: area2 as u64,
    }
}

struct Dfs<'a, F> {
    v0: (i64, i64),
    candidates: Vec<(i64, i64)>,
    limits: &'a SearchLimits,
    chain: Vec<(i64, i64)>,
    visit: &'a mut F,
}

impl<F: FnMut(&[(i64, i64)], PickCounts) -> ControlFlow<()>> Dfs<'_, F> {
    /// `area2` and `steps` cover the chain `v0 → … → last`, without the closing edge.
    fn extend(&mut self, start: usize, area2: i64, steps: i64) -> ControlFlow<()> {
        let last = *self.chain.last().expect("chain holds v0");
        let prev = (self.chain.len() >= 2).then(|| self.chain[self.chain.len() - 2]);
        for j in start..self.candidates.len() {
            let c = self.candidates[j];
            if self.chain.len() >= 2 && cross(self.v0, last, c) <= 0 {
                continue;
            }
            if let Some(prev) = prev {
                if cross(prev, last, c) <= 0 {
                    continue;
                }
            }
            let new_area2 = area2 + cross(self.v0, last, c);
            let new_steps = steps + lattice_steps(last, c);
            let boundary = new_steps + lattice_steps(c, self.v0);
            // a two-vertex chain is a segment: no interior, `steps + 1` points
            let (interior, total) = if new_area2 == 0 {
                (0, new_steps + 1)
            } else {
                let interior = (new_area2 - boundary + 2) / 2;
                (interior, interior + boundary)
            };
            if interior as u64 > self.limits.max_interior || total as u64 > self.limits.max_total {
                continue;
            }
            self.chain.push(c);
            if self.chain.len() >= 3 && new_area2 > 0 {
                let counts = PickCounts {
                    interior: interior as u64,
                    boundary: boundary as u64,
                    area2: new_area2 as u64,
                };
                (self.visit)(&self.chain, counts)?;
            }
            self.extend(j + 1, new_area2, new_steps)?;
            self.chain.pop();
        }
        ControlFlow::Continue(())
    }
}

/// Visits every convex lattice polygon with vertices in `[x_lo, x_hi] × [y_lo, y_hi]`
/// whose least vertex is one of `anchors` and whose counts are within `limits`.
///
/// Stops early when `visit` breaks.
pub fn for_each_lattice_polygon<F>(
    anchors: &[(i64, i64)],
    x_range: (i64, i64),
    y_range: (i64, i64),
    limits: &SearchLimits,
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[(i64, i64)], PickCounts) -> ControlFlow<()>,
{
    for &v0 in anchors {
        let mut candidates: Vec<(i64, i64)> = (x_range.0..=x_range.1)
            .flat_map(|x| (y_range.0..=y_range.1).map(move |y| (x, y)))
            .filter(|&p| p > v0)
            .collect();
        // all candidates lie in the half-plane right of v0, so the angle order is total
        candidates.sort_by(|&a, &b| {
            cross(v0, b, a)
                .cmp(&0)
                .then_with(|| lattice_steps(v0, a).cmp(&lattice_steps(v0, b)))
        });
        let mut dfs = Dfs {
            v0,
            candidates,
            limits,
            chain: vec![v0],
            visit: &mut visit,
        };
        dfs.extend(0, 0, 0)?;
    }
    ControlFlow::Continue(())
}

/// All points of a box, usable as anchors.
pub fn box_points(x_range: (i64, i64), y_range: (i64, i64)) -> Vec<(i64, i64)> {
    (x_range.0..=x_range.1)
        .flat_map(|x| (y_range.0..=y_range.1).map(move |y| (x, y)))
        .collect()
}
