use super::wtree::{Child, DecoratedTree, Node};
use crate::geometry::svg::SvgDoc;
use crate::geometry::Color;
use crate::operad_core::Operad;

const STEP_X: f64 = 60.0;
const STEP_Y: f64 = 80.0;
const MARGIN: f64 = 40.0;

struct Layout<'a, E> {
    leaves: usize,
    label: &'a dyn Fn(&E) -> String,
}

/// Draws a W-tree with the root at the top: vertices are labelled by
/// `label`, leaves by their color and index, edges by their length.
pub fn render_tree_svg<O: Operad>(
    op: &O,
    t: &DecoratedTree<O::Elem>,
    label: &dyn Fn(&O::Elem) -> String,
) -> String {
    let width_leaves = count_leaves(&t.root).max(1);
    let height = depth(&t.root);
    let mut doc = SvgDoc::new(
        2.0 * MARGIN + STEP_X * width_leaves as f64,
        2.0 * MARGIN + STEP_Y * (height as f64 + 1.0),
    );
    let mut layout = Layout { leaves: 0, label };
    let (x, y) = place(op, &mut doc, &mut layout, t.color, &t.root, 0);
    doc.line(x, y, x, MARGIN / 2.0, "edge");
    doc.finish()
}

fn count_leaves<E>(c: &Child<E>) -> usize {
    match c {
        Child::Leaf(_) => 1,
        Child::Edge { node, .. } => node.children.iter().map(count_leaves).sum::<usize>().max(1),
    }
}

fn depth<E>(c: &Child<E>) -> usize {
    match c {
        Child::Leaf(_) => 0,
        Child::Edge { node, .. } => 1 + node.children.iter().map(depth).max().unwrap_or(0),
    }
}

/// Draws the subtree at `c` and returns the position of its top point.
fn place<O: Operad>(
    op: &O,
    doc: &mut SvgDoc,
    layout: &mut Layout<'_, O::Elem>,
    color: Color,
    c: &Child<O::Elem>,
    level: usize,
) -> (f64, f64) {
    let y = MARGIN + STEP_Y * (level as f64 + 0.5);
    match c {
        Child::Leaf(l) => {
            let x = MARGIN + STEP_X * (layout.leaves as f64 + 0.5);
            layout.leaves += 1;
            let tag = if color == Color::Full { "f" } else { "h" };
            doc.text(x, y + 4.0, &format!("{tag}{l}"));
            (x, y - 8.0)
        }
        Child::Edge { node, .. } => place_node(op, doc, layout, node, level, y),
    }
}

fn place_node<O: Operad>(
    op: &O,
    doc: &mut SvgDoc,
    layout: &mut Layout<'_, O::Elem>,
    node: &Node<O::Elem>,
    level: usize,
    y: f64,
) -> (f64, f64) {
    let colors = op.input_colors(&node.label);
    let start = layout.leaves;
    let tops: Vec<(f64, f64)> =
        colors.iter().zip(&node.children).map(|(col, ch)| place(op, doc, layout, *col, ch, level + 1)).collect();
    if layout.leaves == start {
        layout.leaves += 1;
    }
    let x = MARGIN + STEP_X * ((start + layout.leaves) as f64 / 2.0);
    for ((cx, cy), ch) in tops.iter().zip(&node.children) {
        doc.line(x, y, *cx, *cy, "edge");
        if let Child::Edge { len, .. } = ch {
            doc.text((x + cx) / 2.0 + 10.0, (y + cy) / 2.0, &len.to_string());
        }
    }
    let class = if op.output_color(&node.label) == Color::Full { "full" } else { "half" };
    doc.circle(x, y, 14.0, class);
    doc.text(x, y + 4.0, &(layout.label)(&node.label));
    (x, y - 14.0)
}
