//! One entry point for every picture the crate can draw.

use crate::geometry::{render_config_svg, Color, Configuration, SvgError};
use crate::operad_core::DiscOperad;
use crate::schinf::{SChInfElement, SchLabel, SchOp};
use crate::trees::{render_tree_svg, DecoratedTree};

/// Anything [`render_svg`] accepts.
#[derive(Clone, Copy, Debug)]
pub enum Drawable<'a> {
    Config(&'a Configuration),
    /// A W-tree over `SC_d` with edge lengths.
    WTree { d: usize, tree: &'a DecoratedTree<Configuration> },
    SchInf(&'a SChInfElement),
}

/// `"SC2(2,1)"` style vertex caption: operad, then full and half input counts.
pub fn config_caption(cfg: &Configuration) -> String {
    let name = match cfg.target {
        Color::Full => "E",
        Color::Half => "SC",
    };
    format!("{name}{}({},{})", cfg.d, cfg.n_full(), cfg.n_half())
}

/// Configurations are drawn as discs (dimensions 1 and 2 only); trees as
/// diagrams with captioned vertices and length-labelled edges.
pub fn render_svg(x: Drawable<'_>) -> Result<String, SvgError> {
    match x {
        Drawable::Config(cfg) => render_config_svg(cfg),
        Drawable::WTree { d, tree } => Ok(render_tree_svg(&DiscOperad { d }, tree, &config_caption)),
        Drawable::SchInf(el) => {
            let label = |l: &SchLabel| match l {
                SchLabel::Disc(cfg) => config_caption(cfg),
                SchLabel::End(_) => "End".to_string(),
            };
            Ok(render_tree_svg(&SchOp { d: el.d }, &el.tree, &label))
        }
    }
}
