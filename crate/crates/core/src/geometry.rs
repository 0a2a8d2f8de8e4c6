//! Image-space geometry: pixel points, normalized lines, the upper hull.
//!
//! Image convention throughout: x grows rightwards, y grows DOWNWARDS, so
//! "above" means smaller y.

use serde::{Deserialize, Serialize};

/// Integer pixel position. Column x from the left, row y from the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point2 {
    pub x: i32,
    pub y: i32,
}

impl Point2 {
    pub fn new(x: i32, y: i32) -> Point2 {
        Point2 { x, y }
    }

    pub fn as_f64(self) -> (f64, f64) {
        (self.x as f64, self.y as f64)
    }
}

/// A line in normal form `a*x + b*y + c = 0`, normalized so `a^2 + b^2 = 1`
/// and the first nonzero of `(a, b)` is positive. The representation is
/// unique for a given geometric line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line2 {
    /// Normalize arbitrary coefficients. Returns `None` when `(a, b)` is the
    /// zero vector (no line).
    pub fn new(a: f64, b: f64, c: f64) -> Option<Line2> {
        let norm = (a * a + b * b).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return None;
        }
        let (mut a, mut b, mut c) = (a / norm, b / norm, c / norm);
        let flip = if a != 0.0 { a < 0.0 } else { b < 0.0 };
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        // Canonicalize signed zeroes so equal lines compare equal bitwise.
        if a == 0.0 {
            a = 0.0;
        }
        if b == 0.0 {
            b = 0.0;
        }
        if c == 0.0 {
            c = 0.0;
        }
        Some(Line2 { a, b, c })
    }

    /// Line through two distinct points. `None` when they coincide.
    pub fn through(p: (f64, f64), q: (f64, f64)) -> Option<Line2> {
        let a = q.1 - p.1;
        let b = p.0 - q.0;
        let c = -(a * p.0 + b * p.1);
        Line2::new(a, b, c)
    }

    /// Perpendicular distance from a point, in pixels.
    pub fn distance_to(&self, p: (f64, f64)) -> f64 {
        (self.a * p.0 + self.b * p.1 + self.c).abs()
    }

    pub fn distance_to_point(&self, p: Point2) -> f64 {
        self.distance_to(p.as_f64())
    }

    /// Unit direction vector along the line.
    pub fn direction(&self) -> (f64, f64) {
        (-self.b, self.a)
    }

    /// Smallest angle between the two lines' directions, in radians
    /// (range `[0, pi/2]`).
    pub fn angle_to(&self, other: &Line2) -> f64 {
        let (dx1, dy1) = self.direction();
        let (dx2, dy2) = other.direction();
        let dot = (dx1 * dx2 + dy1 * dy2).abs().min(1.0);
        dot.acos()
    }

    /// Angle from the vertical image axis, in radians (range `[0, pi/2]`).
    pub fn angle_from_vertical(&self) -> f64 {
        // direction = (-b, a); |dot with (0, 1)| = |a|
        self.a.abs().min(1.0).acos()
    }

    /// Scalar position of `p` projected onto the line, measured along
    /// [`Self::direction`] from the point closest to the origin.
    pub fn project_parameter(&self, p: (f64, f64)) -> f64 {
        let (dx, dy) = self.direction();
        p.0 * dx + p.1 * dy
    }

    /// Point on the line at projection parameter `t`.
    pub fn point_at(&self, t: f64) -> (f64, f64) {
        let (dx, dy) = self.direction();
        let foot = (-self.c * self.a, -self.c * self.b);
        (foot.0 + t * dx, foot.1 + t * dy)
    }

    /// Solve for x at a given y. `None` for horizontal lines.
    pub fn x_at(&self, y: f64) -> Option<f64> {
        if self.a == 0.0 {
            None
        } else {
            Some(-(self.b * y + self.c) / self.a)
        }
    }

    /// Solve for y at a given x. `None` for vertical lines.
    pub fn y_at(&self, x: f64) -> Option<f64> {
        if self.b == 0.0 {
            None
        } else {
            Some(-(self.a * x + self.c) / self.b)
        }
    }
}

/// Perpendicular point-to-line distance in pixels.
pub fn point_line_distance(p: Point2, l: &Line2) -> f64 {
    l.distance_to_point(p)
}

/// Total-least-squares line through a point set: minimizes the sum of squared
/// perpendicular distances. `None` for fewer than 2 points or a degenerate
/// (single-location) set.
pub fn fit_line_total_least_squares(points: &[(f64, f64)]) -> Option<Line2> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (mut cx, mut cy) = (0.0, 0.0);
    for &(x, y) in points {
        cx += x;
        cy += y;
    }
    cx /= n;
    cy /= n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - cx;
        let dy = y - cy;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 && syy == 0.0 {
        return None;
    }
    // Major axis of the scatter; the line normal is perpendicular to it.
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let (dx, dy) = (theta.cos(), theta.sin());
    let (a, b) = (-dy, dx);
    let c = -(a * cx + b * cy);
    Line2::new(a, b, c)
}

/// Cross product of (p1 - origin) x (p2 - origin); sign gives turn direction.
fn cross(origin: Point2, p1: Point2, p2: Point2) -> i64 {
    let ox = origin.x as i64;
    let oy = origin.y as i64;
    (p1.x as i64 - ox) * (p2.y as i64 - oy) - (p1.y as i64 - oy) * (p2.x as i64 - ox)
}

/// Upper convex hull of points already sorted by strictly increasing x, one
/// monotone-chain pass. "Upper" is in the image sense: the returned chain
/// bounds the point set from above (every input point has y >= the chain's
/// interpolated y at its x). Collinear interior points are dropped.
pub fn upper_hull(points: &[Point2]) -> Vec<Point2> {
    debug_assert!(points.windows(2).all(|w| w[0].x < w[1].x));
    let mut chain: Vec<Point2> = Vec::with_capacity(points.len().min(8));
    for &p in points {
        while chain.len() >= 2 {
            let a = chain[chain.len() - 2];
            let b = chain[chain.len() - 1];
            // Pop b unless it lies strictly above the chord a->p.
            if cross(a, p, b) >= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    chain
}
