//! Deterministic SVG rendering of fans and complexes in ambient dimension
//! at most 2.
//!
//! Layout arithmetic is exact: world coordinates are clipped to the box
//! [-10, 10]^2 by polyhedral intersection and scaled to integer SVG units,
//! so output bytes depend only on the input object.

use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::exact::{self, Integer, RatMatrix, Rational};
use crate::fan::{Fan, PolyhedralComplex};
use crate::io::format_rational;
use crate::polyhedron::{HRep, Polyhedron};

const CANVAS: i64 = 400_000;
const CENTER: i64 = 200_000;
const UNIT: i64 = 18_000; // world units -> svg units
const WORLD: i64 = 10; // clip box half-width

const PALETTE: [&str; 10] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
    "#d9d9d9", "#bc80bd",
];

fn round_to_int(x: &Rational) -> Integer {
    // round half up, exactly
    let scaled = x + Rational::new(Integer::from(1), Integer::from(2));
    scaled.numer().div_floor(scaled.denom())
}

fn svg_x(x: &Rational) -> Integer {
    Integer::from(CENTER) + round_to_int(&(x * Rational::from_integer(Integer::from(UNIT))))
}

fn svg_y(y: &Rational) -> Integer {
    Integer::from(CENTER) - round_to_int(&(y * Rational::from_integer(Integer::from(UNIT))))
}

fn clip_box(dim: usize) -> Polyhedron {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    for i in 0..dim {
        for s in [1i64, -1] {
            let mut row = vec![Rational::zero(); dim];
            row[i] = exact::rat_int(s);
            rows.push(row);
            b.push(exact::rat_int(-WORLD));
        }
    }
    Polyhedron::from_hrep(&HRep::new(RatMatrix::from_rows(rows, dim), b))
}

/// Counterclockwise order around an interior point, decided exactly.
fn sort_polygon(vertices: &mut [Vec<Rational>]) {
    let n = vertices.len();
    if n < 3 {
        return;
    }
    let count = exact::rat_int(n as i64);
    let mut c = vec![Rational::zero(); 2];
    for v in vertices.iter() {
        c = exact::vec_add(&c, v);
    }
    c = c.iter().map(|x| x / &count).collect();
    let half = |v: &[Rational]| -> u8 {
        u8::from(v[1].is_negative() || (v[1].is_zero() && v[0].is_negative()))
    };
    vertices.sort_by(|p, q| {
        let a = exact::vec_sub(p, &c);
        let b = exact::vec_sub(q, &c);
        half(&a).cmp(&half(&b)).then_with(|| {
            let cross = &a[0] * &b[1] - &a[1] * &b[0];
            Rational::zero().cmp(&cross)
        })
    });
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn new() -> Self {
        let mut body = String::new();
        body.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {CANVAS} {CANVAS}\">\n"
        ));
        body.push_str(&format!(
            "<rect x=\"0\" y=\"0\" width=\"{CANVAS}\" height=\"{CANVAS}\" fill=\"#ffffff\"/>\n"
        ));
        // axes
        body.push_str(&format!(
            "<line x1=\"0\" y1=\"{CENTER}\" x2=\"{CANVAS}\" y2=\"{CENTER}\" stroke=\"#cccccc\" stroke-width=\"300\"/>\n"
        ));
        body.push_str(&format!(
            "<line x1=\"{CENTER}\" y1=\"0\" x2=\"{CENTER}\" y2=\"{CANVAS}\" stroke=\"#cccccc\" stroke-width=\"300\"/>\n"
        ));
        Canvas { body }
    }

    fn cell_2d(&mut self, clipped: &Polyhedron, color: &str) {
        let mut vs: Vec<Vec<Rational>> = clipped.vertices().to_vec();
        match vs.len() {
            0 => {}
            1 => {
                self.body.push_str(&format!(
                    "<circle cx=\"{}\" cy=\"{}\" r=\"2500\" fill=\"{color}\" stroke=\"#222222\" stroke-width=\"400\"/>\n",
                    svg_x(&vs[0][0]),
                    svg_y(&vs[0][1])
                ));
            }
            2 => {
                self.body.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"2000\"/>\n",
                    svg_x(&vs[0][0]),
                    svg_y(&vs[0][1]),
                    svg_x(&vs[1][0]),
                    svg_y(&vs[1][1])
                ));
            }
            _ => {
                sort_polygon(&mut vs);
                let pts: Vec<String> = vs
                    .iter()
                    .map(|v| format!("{},{}", svg_x(&v[0]), svg_y(&v[1])))
                    .collect();
                self.body.push_str(&format!(
                    "<polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.55\" stroke=\"#222222\" stroke-width=\"400\"/>\n",
                    pts.join(" ")
                ));
            }
        }
    }

    fn segment_1d(&mut self, clipped: &Polyhedron, color: &str) {
        let vs = clipped.vertices();
        let (x1, x2) = match vs.len() {
            1 => (vs[0][0].clone(), vs[0][0].clone()),
            2 => (vs[0][0].clone(), vs[1][0].clone()),
            _ => return,
        };
        if x1 == x2 {
            self.body.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{CENTER}\" r=\"3000\" fill=\"#222222\"/>\n",
                svg_x(&x1)
            ));
        } else {
            self.body.push_str(&format!(
                "<line x1=\"{}\" y1=\"{CENTER}\" x2=\"{}\" y2=\"{CENTER}\" stroke=\"{color}\" stroke-width=\"4000\"/>\n",
                svg_x(&x1),
                svg_x(&x2)
            ));
        }
    }

    fn label(&mut self, x: Integer, y: Integer, text: &str) {
        self.body.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" font-size=\"9000\" font-family=\"monospace\" fill=\"#000000\">{text}</text>\n"
        ));
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

fn coord_label(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// Point where the ray from the origin leaves the box scaled by `frac`
/// (numerator/denominator pair of the box half-width).
fn ray_tip(r: &[Rational], reach: i64) -> Vec<Rational> {
    let maxabs = r.iter().map(|x| x.abs()).max().expect("nonzero ray");
    let t = exact::rat_int(reach) / maxabs;
    exact::vec_scale(&t, r)
}

/// Render a fan with ambient dimension at most 2: cones as clipped sectors,
/// rays labeled with their primitive coordinates.
pub fn render_fan(fan: &Fan) -> Result<String, Error> {
    if fan.ambient_dim() > 2 {
        return Err(Error::RenderDimension(fan.ambient_dim()));
    }
    let mut canvas = Canvas::new();
    match fan.ambient_dim() {
        0 => {
            canvas.label(Integer::from(CENTER), Integer::from(CENTER), "(origin)");
        }
        1 => {
            let box1 = clip_box(1);
            for (i, cone) in fan.maximal_cones().iter().enumerate() {
                let clipped = cone.intersection(&box1);
                canvas.segment_1d(&clipped, PALETTE[i % PALETTE.len()]);
            }
            let mut labeled: Vec<Vec<Rational>> = Vec::new();
            for cone in fan.maximal_cones() {
                for r in cone.rays() {
                    if !labeled.contains(r) {
                        labeled.push(r.clone());
                        let tip = ray_tip(r, WORLD - 1);
                        canvas.label(
                            svg_x(&tip[0]),
                            Integer::from(CENTER - 6000),
                            &coord_label(r),
                        );
                    }
                }
            }
        }
        _ => {
            let box2 = clip_box(2);
            for (i, cone) in fan.maximal_cones().iter().enumerate() {
                let clipped = cone.intersection(&box2);
                canvas.cell_2d(&clipped, PALETTE[i % PALETTE.len()]);
            }
            let mut labeled: Vec<Vec<Rational>> = Vec::new();
            for cone in fan.maximal_cones() {
                for r in cone.rays() {
                    if !labeled.contains(r) {
                        labeled.push(r.clone());
                        let tip = ray_tip(r, WORLD - 1);
                        canvas.label(svg_x(&tip[0]), svg_y(&tip[1]), &coord_label(r));
                    }
                }
            }
        }
    }
    Ok(canvas.finish())
}

/// Render a polyhedral complex with ambient dimension at most 2: cells as
/// clipped polygons with labeled vertices.
pub fn render_complex(k: &PolyhedralComplex) -> Result<String, Error> {
    if k.ambient_dim() > 2 {
        return Err(Error::RenderDimension(k.ambient_dim()));
    }
    let mut canvas = Canvas::new();
    match k.ambient_dim() {
        0 => {
            canvas.label(Integer::from(CENTER), Integer::from(CENTER), "(point)");
        }
        1 => {
            let box1 = clip_box(1);
            for (i, cell) in k.maximal_cells().iter().enumerate() {
                let clipped = cell.intersection(&box1);
                canvas.segment_1d(&clipped, PALETTE[i % PALETTE.len()]);
            }
            let mut labeled: Vec<Vec<Rational>> = Vec::new();
            for cell in k.maximal_cells() {
                for v in cell.vertices() {
                    if !labeled.contains(v) {
                        labeled.push(v.clone());
                        canvas.label(
                            svg_x(&v[0]),
                            Integer::from(CENTER + 12_000),
                            &coord_label(v),
                        );
                    }
                }
            }
        }
        _ => {
            let box2 = clip_box(2);
            for (i, cell) in k.maximal_cells().iter().enumerate() {
                let clipped = cell.intersection(&box2);
                canvas.cell_2d(&clipped, PALETTE[i % PALETTE.len()]);
            }
            let mut labeled: Vec<Vec<Rational>> = Vec::new();
            for cell in k.maximal_cells() {
                for v in cell.vertices() {
                    if !labeled.contains(v) {
                        labeled.push(v.clone());
                        canvas.label(svg_x(&v[0]), svg_y(&v[1]), &coord_label(v));
                    }
                }
            }
        }
    }
    Ok(canvas.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;
    use crate::polyhedron::poly_from_ineqs;

    #[test]
    fn complete_1d_fan_renders_two_sectors() {
        let seg = poly_from_ineqs(&[&[1], &[-1]], &[0, -1]);
        let fan = normal_fan(&seg).unwrap();
        let svg = render_fan(&fan).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("(1)"));
        assert!(svg.contains("(-1)"));
        assert!(svg.matches("<line").count() >= 2);
    }

    #[test]
    fn quadrant_fan_renders_four_polygons() {
        let square = poly_from_ineqs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, -1, 0, -1]);
        let fan = normal_fan(&square).unwrap();
        let svg = render_fan(&fan).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 4);
        // deterministic output
        assert_eq!(svg, render_fan(&fan).unwrap());
    }

    #[test]
    fn dimension_guard() {
        let orthant = crate::polyhedron::cone_from_ineqs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let fan = normal_fan(&orthant).unwrap();
        assert!(matches!(render_fan(&fan), Err(Error::RenderDimension(3))));
    }
}
