//! SVG rendering of disk base diagrams.
//!
//! The boundary is walked edge by edge (missing lengths default to 1), with
//! heavy strokes on the one-stratum. Each node draws as an asterisk at
//! slide-parameter distance along its eigenray together with a dashed
//! branch segment from the corner. When the walk fails to close, the gap
//! between its endpoints is the monodromy wedge and is drawn as a shaded
//! sector.
//!
//! Element counts are part of the contract: one `class="edge"` path per
//! edge, one `class="branch-curve"` and one `class="node-asterisk"` path
//! per node corner, and at most one `class="monodromy-wedge"` path.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::base::{Corner, DiskBase};
use crate::error::RenderError;
use crate::lattice::{cross, LatticeVector};

#[derive(Clone, Debug, PartialEq)]
struct RatPoint {
    x: BigRational,
    y: BigRational,
}

impl RatPoint {
    fn origin() -> Self {
        Self { x: BigRational::zero(), y: BigRational::zero() }
    }

    fn offset(&self, v: &LatticeVector, scale: &BigRational) -> Self {
        Self {
            x: &self.x + BigRational::from_integer(v.x.clone()) * scale,
            y: &self.y + BigRational::from_integer(v.y.clone()) * scale,
        }
    }
}

fn orient(a: &RatPoint, b: &RatPoint, c: &RatPoint) -> i8 {
    let v = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

fn on_segment(a: &RatPoint, b: &RatPoint, p: &RatPoint) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

fn segments_touch(p1: &RatPoint, p2: &RatPoint, p3: &RatPoint, p4: &RatPoint) -> bool {
    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    (d1 == 0 && on_segment(p3, p4, p1))
        || (d2 == 0 && on_segment(p3, p4, p2))
        || (d3 == 0 && on_segment(p1, p2, p3))
        || (d4 == 0 && on_segment(p1, p2, p4))
}

/// Render a validated disk base to an SVG 1.1 document.
pub fn render_svg(base: &DiskBase) -> Result<String, RenderError> {
    let report = base.validate();
    if !report.passed() {
        return Err(RenderError::Invalid { report });
    }
    let k = base.len();
    let one = BigRational::one();

    // boundary walk; the tangent of an inward normal is its clockwise perp
    let mut walk = Vec::with_capacity(k + 1);
    walk.push(RatPoint::origin());
    for edge in &base.edges {
        let len = edge.length.clone().unwrap_or_else(|| one.clone());
        let next = walk.last().unwrap().offset(&edge.normal.perp_cw(), &len);
        walk.push(next);
    }
    let closes = walk[0] == walk[k];

    // embeddability: no two non-adjacent boundary segments may meet
    for i in 0..k {
        for j in (i + 1)..k {
            let adjacent =
                j == i + 1 || (closes && i == 0 && j == k - 1);
            if adjacent {
                continue;
            }
            if segments_touch(&walk[i], &walk[i + 1], &walk[j], &walk[j + 1]) {
                return Err(RenderError::NonEmbeddable {
                    detail: format!("boundary segments {i} and {j} cross"),
                });
            }
        }
    }

    // nodes: asterisk at corner + t * perp of the defining-signed eigenvector
    let mut nodes = Vec::new();
    for i in 0..k {
        if let Corner::Node { eigen, slide, .. } = &base.corners[i] {
            let u = base.normal(i);
            let c = cross(u, eigen);
            let signed = if c.is_negative() {
                eigen.neg()
            } else if c.is_zero() {
                u.clone()
            } else {
                eigen.clone()
            };
            let pos = walk[i].offset(&signed.perp_cw(), slide);
            nodes.push((walk[i].clone(), pos));
        }
    }

    // bounding box over everything drawn
    let mut xs: Vec<BigRational> = Vec::new();
    let mut ys: Vec<BigRational> = Vec::new();
    for p in walk.iter().chain(nodes.iter().map(|(_, n)| n)) {
        xs.push(p.x.clone());
        ys.push(p.y.clone());
    }
    let min_x = xs.iter().min().unwrap().clone();
    let max_x = xs.iter().max().unwrap().clone();
    let min_y = ys.iter().min().unwrap().clone();
    let max_y = ys.iter().max().unwrap().clone();

    const SCALE: f64 = 80.0;
    const MARGIN: f64 = 24.0;
    let to_f = |r: &BigRational| r.to_f64().expect("rational converts to f64");
    let px = |p: &RatPoint| {
        let x = (to_f(&p.x) - to_f(&min_x)) * SCALE + MARGIN;
        let y = (to_f(&max_y) - to_f(&p.y)) * SCALE + MARGIN;
        (x, y)
    };
    let width = (to_f(&max_x) - to_f(&min_x)) * SCALE + 2.0 * MARGIN;
    let height = (to_f(&max_y) - to_f(&min_y)) * SCALE + 2.0 * MARGIN;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg version="1.1" xmlns="http://www.w3.org/2000/svg" width="{width:.3}" height="{height:.3}" viewBox="0 0 {width:.3} {height:.3}">"#
    );

    if !closes {
        let centroid = RatPoint {
            x: walk[..k].iter().map(|p| p.x.clone()).sum::<BigRational>()
                / BigRational::from_integer(BigInt::from(k)),
            y: walk[..k].iter().map(|p| p.y.clone()).sum::<BigRational>()
                / BigRational::from_integer(BigInt::from(k)),
        };
        let (ex, ey) = px(&walk[k]);
        let (sx, sy) = px(&walk[0]);
        let (cx, cy) = px(&centroid);
        let _ = writeln!(
            svg,
            r##"  <path class="monodromy-wedge" d="M {ex:.3} {ey:.3} L {sx:.3} {sy:.3} L {cx:.3} {cy:.3} Z" fill="#c8c8c8" fill-opacity="0.6" stroke="none"/>"##
        );
    }

    for i in 0..k {
        let (x1, y1) = px(&walk[i]);
        let (x2, y2) = px(&walk[i + 1]);
        let _ = writeln!(
            svg,
            r#"  <path class="edge" d="M {x1:.3} {y1:.3} L {x2:.3} {y2:.3}" stroke="black" stroke-width="4" fill="none"/>"#
        );
    }

    for (corner, node) in &nodes {
        let (x1, y1) = px(corner);
        let (x2, y2) = px(node);
        let _ = writeln!(
            svg,
            r#"  <path class="branch-curve" d="M {x1:.3} {y1:.3} L {x2:.3} {y2:.3}" stroke="black" stroke-width="1.5" stroke-dasharray="6 4" fill="none"/>"#
        );
    }
    for (_, node) in &nodes {
        let (x, y) = px(node);
        let r = 6.0;
        let s = r * std::f64::consts::FRAC_1_SQRT_2;
        let _ = writeln!(
            svg,
            r#"  <path class="node-asterisk" d="M {:.3} {y:.3} L {:.3} {y:.3} M {x:.3} {:.3} L {x:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="black" stroke-width="1.5" fill="none"/>"#,
            x - r,
            x + r,
            y - r,
            y + r,
            x - s,
            y - s,
            x + s,
            y + s,
            x - s,
            y + s,
            x + s,
            y - s,
            x = x,
            y = y
        );
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::moves::{nodal_trade, TradeDirection};

    fn count(haystack: &str, needle: &str) -> usize {
        haystack.matches(needle).count()
    }

    #[test]
    fn triangle_renders_three_heavy_edges() {
        let svg = render_svg(&corpus::cp2_triangle()).unwrap();
        assert_eq!(count(&svg, r#"class="edge""#), 3);
        assert_eq!(count(&svg, r#"class="node-asterisk""#), 0);
        assert_eq!(count(&svg, r#"class="branch-curve""#), 0);
        assert_eq!(count(&svg, r#"class="monodromy-wedge""#), 0);
    }

    #[test]
    fn traded_corner_renders_asterisk_and_branch() {
        let (base, _) =
            nodal_trade(&corpus::cp2_triangle(), 0, TradeDirection::VertexToNode).unwrap();
        let svg = render_svg(&base).unwrap();
        assert_eq!(count(&svg, r#"class="edge""#), 3);
        assert_eq!(count(&svg, r#"class="node-asterisk""#), 1);
        assert_eq!(count(&svg, r#"class="branch-curve""#), 1);
    }

    #[test]
    fn open_walk_draws_a_wedge() {
        // default unit lengths do not close the 4-edge Hirzebruch walk
        let svg = render_svg(&corpus::hirzebruch_one()).unwrap();
        assert_eq!(count(&svg, r#"class="monodromy-wedge""#), 1);
    }

    #[test]
    fn invalid_base_is_refused() {
        let base = DiskBase::from_fan([
            crate::lattice::vec2(1, 0),
            crate::lattice::vec2(0, 2),
            crate::lattice::vec2(-1, -1),
        ]);
        assert!(matches!(render_svg(&base), Err(RenderError::Invalid { .. })));
    }
}
