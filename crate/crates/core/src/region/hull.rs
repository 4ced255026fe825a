use serde::{Deserialize, Serialize};

use crate::region::FrontierPoint;
use crate::tol;

/// A vertex of the convexified frontier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullPoint {
    pub r2: f64,
    pub r1: f64,
    /// Weight whose optimum produced this vertex.
    pub lambda: f64,
}

fn cross(o: &HullPoint, a: &HullPoint, b: &HullPoint) -> f64 {
    (a.r2 - o.r2) * (b.r1 - o.r1) - (a.r1 - o.r1) * (b.r2 - o.r2)
}

/// Lower convex hull in the `(r2, r1)` plane, cut at the minimum-`r1` vertex
/// so that `r1` strictly decreases along the result. Collinear and
/// within-tolerance duplicate vertices are dropped.
pub fn lower_left_hull(points: &[FrontierPoint]) -> Vec<HullPoint> {
    let mut pts: Vec<HullPoint> = points.iter().map(|p| HullPoint { r2: p.r2, r1: p.r1, lambda: p.lambda }).collect();
    pts.sort_by(|a, b| a.r2.total_cmp(&b.r2).then(a.r1.total_cmp(&b.r1)));

    let mut lower: Vec<HullPoint> = Vec::new();
    for p in pts {
        if let Some(last) = lower.last() {
            if (p.r2 - last.r2).abs() <= tol::ENT && p.r1 >= last.r1 - tol::ENT {
                continue;
            }
        }
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], &p) <= tol::ENT {
            lower.pop();
        }
        lower.push(p);
    }

    // keep the decreasing branch only
    let cut = lower
        .iter()
        .enumerate()
        .reduce(|best, cur| if cur.1.r1 < best.1.r1 - tol::ENT { cur } else { best })
        .map_or(0, |(i, _)| i);
    lower.truncate(cut + 1);
    lower
}

/// Piecewise-linear envelope of the hull; flat beyond the last vertex.
pub(crate) fn envelope_at(hull: &[HullPoint], r2: f64) -> Option<f64> {
    let first = hull.first()?;
    if r2 < first.r2 {
        return None;
    }
    for w in hull.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if r2 <= b.r2 {
            let t = (r2 - a.r2) / (b.r2 - a.r2);
            return Some(a.r1 + t * (b.r1 - a.r1));
        }
    }
    hull.last().map(|p| p.r1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{ChannelDims, ChannelParams};

    fn fp(r2: f64, r1: f64) -> FrontierPoint {
        FrontierPoint {
            lambda: 0.0,
            r1,
            r2,
            objective: 0.0,
            converged: true,
            iters: 0,
            restart: 0,
            params: ChannelParams::zeros(ChannelDims { dim_in: 1, dim_out: 1, dim_env: 1 }),
        }
    }

    #[test]
    fn drops_dominated_and_collinear_points() {
        let pts = vec![fp(0.0, 1.0), fp(0.5, 0.0), fp(1.0, -1.0), fp(0.4, 0.9), fp(1.2, -0.5), fp(0.0, 1.5)];
        let h = lower_left_hull(&pts);
        let coords: Vec<(f64, f64)> = h.iter().map(|p| (p.r2, p.r1)).collect();
        assert_eq!(coords, vec![(0.0, 1.0), (1.0, -1.0)]);
    }

    #[test]
    fn keeps_strictly_convex_vertices() {
        let pts = vec![fp(0.0, 1.0), fp(0.2, 0.3), fp(1.0, 0.0)];
        let h = lower_left_hull(&pts);
        assert_eq!(h.len(), 3);
        assert!(h.windows(2).all(|w| w[1].r1 < w[0].r1 && w[1].r2 > w[0].r2));
    }

    #[test]
    fn degenerate_flat_frontier_collapses() {
        let pts = vec![fp(0.0, 1.0), fp(0.3, 1.0), fp(0.7, 1.0 + 1e-12)];
        let h = lower_left_hull(&pts);
        assert_eq!(h.len(), 1);
        assert_eq!((h[0].r2, h[0].r1), (0.0, 1.0));
    }

    #[test]
    fn envelope_interpolates() {
        let h = lower_left_hull(&[fp(0.0, 1.0), fp(1.0, -1.0)]);
        assert_eq!(envelope_at(&h, -0.1), None);
        assert!((envelope_at(&h, 0.25).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(envelope_at(&h, 3.0), Some(-1.0));
    }
}
