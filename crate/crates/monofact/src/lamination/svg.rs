//! Deterministic SVG rendering of laminations.
//!
//! Output is byte-identical for identical input and options: chords are
//! emitted in the lamination's canonical order and every coordinate is
//! formatted with a fixed number of decimals.

use super::{Chord, Lamination};
use num_traits::ToPrimitive;

/// Rendering options; all lengths are in viewBox units (the disk has
/// radius 1 and the viewBox spans `[-1.1, 1.1]²`).
#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Pixel width and height of the image.
    pub size: u32,
    /// Stroke width for the circle and the chords.
    pub stroke_width: f64,
    /// Radius of the dot drawn for a trivial chord.
    pub point_radius: f64,
    /// Optional comment embedded after the opening tag.
    pub comment: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self { size: 600, stroke_width: 0.008, point_radius: 0.016, comment: None }
    }
}

fn xy(t: &crate::Rational) -> (f64, f64) {
    let theta = 2.0 * std::f64::consts::PI * t.to_f64().expect("endpoint in [0, 1]");
    (theta.cos(), -theta.sin())
}

fn push_chord(out: &mut String, c: &Chord, opts: &SvgOptions) {
    let (x1, y1) = xy(&c.u());
    if c.is_trivial() {
        out.push_str(&format!(
            "  <circle cx=\"{x1:.6}\" cy=\"{y1:.6}\" r=\"{:.6}\" fill=\"black\"/>\n",
            opts.point_radius
        ));
    } else {
        let (x2, y2) = xy(&c.v());
        out.push_str(&format!(
            "  <line x1=\"{x1:.6}\" y1=\"{y1:.6}\" x2=\"{x2:.6}\" y2=\"{y2:.6}\" stroke=\"black\" stroke-width=\"{:.6}\"/>\n",
            opts.stroke_width
        ));
    }
}

/// Renders the lamination as an SVG 1.1 document: the unit circle plus one
/// line (or dot, for trivial chords) per chord.
pub fn render_svg(l: &Lamination, opts: &SvgOptions) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n",
        opts.size
    ));
    if let Some(comment) = &opts.comment {
        out.push_str(&format!("  <!-- {} -->\n", comment.replace("--", "- -")));
    }
    out.push_str(&format!(
        "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"{:.6}\"/>\n",
        opts.stroke_width
    ));
    for chord in l.chords() {
        push_chord(&mut out, chord, opts);
    }
    out.push_str("</svg>\n");
    out
}
