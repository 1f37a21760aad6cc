//! Knuth diagrams as plain text or SVG. Channels run left to right as
//! horizontal lines, comparators are vertical connectors, and each layer
//! occupies one column group. Comparators of a layer whose spans overlap are
//! spread over separate columns inside the group.

use crate::error::Result;
use crate::net::{Comparator, ComparatorNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    Svg,
}

pub fn render(net: &ComparatorNetwork, format: RenderFormat) -> Result<String> {
    match format {
        RenderFormat::Text => render_text(net),
        RenderFormat::Svg => render_svg(net),
    }
}

/// Split a layer into columns of span-disjoint comparators (first fit).
fn columns(layer: &[Comparator]) -> Vec<Vec<Comparator>> {
    let mut cols: Vec<Vec<Comparator>> = Vec::new();
    let mut sorted = layer.to_vec();
    sorted.sort_unstable_by_key(|c| (c.min_channel(), c.max_channel()));
    for c in sorted {
        let (min, max) = (c.min_channel(), c.max_channel());
        let slot = cols.iter_mut().find(|col| {
            col.iter()
                .all(|o| o.max_channel() < min || o.min_channel() > max)
        });
        match slot {
            Some(col) => col.push(c),
            None => cols.push(vec![c]),
        }
    }
    cols
}

fn render_text(net: &ComparatorNetwork) -> Result<String> {
    let n = net.channels();
    let layer_cols: Vec<Vec<Vec<Comparator>>> = net
        .layers()
        .iter()
        .map(|l| columns(l.comparators()))
        .collect();
    let mut out = String::new();
    for ch in 1..=n {
        out.push_str(&format!("{ch:>3} -"));
        for (li, cols) in layer_cols.iter().enumerate() {
            if li > 0 {
                out.push_str("--");
            }
            for (ci, col) in cols.iter().enumerate() {
                if ci > 0 {
                    out.push('-');
                }
                let mark = col
                    .iter()
                    .find_map(|c| {
                        if c.uses(ch) {
                            Some('o')
                        } else if c.min_channel() < ch && ch < c.max_channel() {
                            Some('|')
                        } else {
                            None
                        }
                    })
                    .unwrap_or('-');
                out.push(mark);
            }
        }
        out.push('-');
        out.push('\n');
    }
    Ok(out)
}

fn render_svg(net: &ComparatorNetwork) -> Result<String> {
    const MARGIN: f64 = 24.0;
    const ROW: f64 = 22.0;
    const COL: f64 = 16.0;
    const LAYER_GAP: f64 = 14.0;
    const R: f64 = 3.2;

    let n = net.channels();
    let layer_cols: Vec<Vec<Vec<Comparator>>> = net
        .layers()
        .iter()
        .map(|l| columns(l.comparators()))
        .collect();
    let total_cols: usize = layer_cols.iter().map(|c| c.len()).sum();
    let width = 2.0 * MARGIN
        + total_cols as f64 * COL
        + layer_cols.len().saturating_sub(1) as f64 * LAYER_GAP
        + COL;
    let height = 2.0 * MARGIN + n.saturating_sub(1) as f64 * ROW;
    let y = |ch: usize| MARGIN + (ch - 1) as f64 * ROW;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    for ch in 1..=n {
        svg.push_str(&format!(
            "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"black\"/>\n",
            MARGIN / 2.0,
            y(ch),
            width - MARGIN / 2.0,
            y(ch)
        ));
    }
    let mut x = MARGIN + COL / 2.0;
    for cols in &layer_cols {
        for col in cols {
            for c in col {
                let (top, bottom) = (c.min_channel(), c.max_channel());
                svg.push_str(&format!(
                    "  <line x1=\"{x:.1}\" y1=\"{:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"black\" stroke-width=\"1.5\"/>\n",
                    y(top),
                    y(bottom)
                ));
                for ch in [top, bottom] {
                    svg.push_str(&format!(
                        "  <circle cx=\"{x:.1}\" cy=\"{:.1}\" r=\"{R}\"/>\n",
                        y(ch)
                    ));
                }
            }
            x += COL;
        }
        x += LAYER_GAP;
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
