use serde::{Deserialize, Serialize};

/// Position on the simulation square, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Shortest displacement from `p` to `q` on a torus of side `side`.
pub fn wraparound_delta(p: Point, q: Point, side: f64) -> (f64, f64) {
    let wrap = |d: f64| {
        let d = d.rem_euclid(side);
        if d > side / 2.0 { d - side } else { d }
    };
    (wrap(q.x - p.x), wrap(q.y - p.y))
}

/// Torus metric on the square `[0, side)²`.
pub fn wraparound_distance(p: Point, q: Point, side: f64) -> f64 {
    let (dx, dy) = wraparound_delta(p, q, side);
    dx.hypot(dy)
}

/// Global direction of arrival/departure: azimuth from +x, elevation above the horizon (degrees).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    pub az_deg: f64,
    pub el_deg: f64,
}

impl Direction {
    pub fn from_vector(dx: f64, dy: f64, dz: f64) -> Self {
        Direction { az_deg: dy.atan2(dx).to_degrees(), el_deg: dz.atan2(dx.hypot(dy)).to_degrees() }
    }

    pub fn reverse(self) -> Self {
        Direction { az_deg: wrap_deg(self.az_deg + 180.0), el_deg: -self.el_deg }
    }

    fn unit(self) -> [f64; 3] {
        let (az, el) = (self.az_deg.to_radians(), self.el_deg.to_radians());
        [el.cos() * az.cos(), el.cos() * az.sin(), el.sin()]
    }
}

/// Angles of `dir` in the frame of a panel whose boresight points at `boresight`.
///
/// The panel is rotated by the boresight azimuth, then tilted by its
/// elevation, so the boresight itself maps to `(0, 0)`.
pub fn to_local(dir: Direction, boresight: Direction) -> Direction {
    let [x, y, z] = dir.unit();
    let (c, s) = (boresight.az_deg.to_radians().cos(), boresight.az_deg.to_radians().sin());
    let (x1, y1) = (c * x + s * y, -s * x + c * y);
    let (ct, st) = (boresight.el_deg.to_radians().cos(), boresight.el_deg.to_radians().sin());
    let x2 = x1 * ct + z * st;
    let z2 = -x1 * st + z * ct;
    Direction { az_deg: y1.atan2(x2).to_degrees(), el_deg: z2.clamp(-1.0, 1.0).asin().to_degrees() }
}

/// Wraps an angle to `(-180, 180]`.
pub fn wrap_deg(a: f64) -> f64 {
    let w = (a + 180.0).rem_euclid(360.0) - 180.0;
    if w == -180.0 { 180.0 } else { w }
}
