//! `render`, `verify` and `count`.

use std::path::Path;

use operad_forge::algebra_lab::{
    module_map_bijection, universal_cheese_discrete, AlgebraJson, AssocAlgebra, Fp, OKind,
};
use operad_forge::render::{render_svg, Drawable};
use operad_forge::suites::{run_suite, Suite, SuiteParams, SuiteReport, ENUMERATION_BOUND};
use serde_json::{json, Value};

use crate::compose::{load_config, load_schinf, load_wtree};
use crate::io::{parse_as, read_json, CliResult, Failure};

/// SVG for a configuration (`"discs"`), an `SC^{h∞}` element (`"d"` beside a tree)
/// or a W-tree over `SC_d` (`"vertex"` or `"leaf"`).
pub fn render(path: &Path) -> CliResult<String> {
    let v = read_json(path)?;
    let has = |k: &str| v.get(k).is_some();
    let unsupported = |e: &dyn std::fmt::Display| Failure::input("unsupported", Some(path), e);
    if has("discs") {
        let cfg = load_config(path, &v)?;
        render_svg(Drawable::Config(&cfg)).map_err(|e| unsupported(&e))
    } else if has("d") {
        let el = load_schinf(path, &v)?;
        render_svg(Drawable::SchInf(&el)).map_err(|e| unsupported(&e))
    } else if has("color") && (has("vertex") || has("leaf")) {
        let (d, tree) = load_wtree(path, &v)?;
        render_svg(Drawable::WTree { d, tree: &tree }).map_err(|e| unsupported(&e))
    } else {
        Err(unsupported(&"expected a configuration, a W-tree or an SC^{h∞} element"))
    }
}

pub fn verify(suite: Suite, params: &SuiteParams) -> CliResult<SuiteReport> {
    Fp::new(params.prime).map_err(|e| Failure::input("invalid", None, e))?;
    Ok(run_suite(suite, params))
}

/// Actions of `π₀SC₁` on `(B, A)` for `B` read from `path` and every
/// `dim A ≤ max_dim`, next to the number of right `B`-module structures
/// on `A`. The point of `A` is its first basis vector.
pub fn count(path: &Path, max_dim: usize, cutoff: usize) -> CliResult<Value> {
    let v = read_json(path)?;
    let raw: AlgebraJson = parse_as(path, &v)?;
    let b = AssocAlgebra::from_json(&raw).map_err(|e| Failure::input("validation", Some(path), e))?;
    let f = b.field();
    let mut rows = Vec::new();
    for dim_a in 0..=max_dim {
        let a0: Vec<u32> = (0..dim_a).map(|i| u32::from(i == 0)).collect();
        let data = universal_cheese_discrete(OKind::Assoc, &b, &a0, cutoff, ENUMERATION_BOUND)
            .map_err(|e| Failure::input("bound", Some(path), e))?;
        let report = data.report();
        let modules = module_map_bijection(&b.opposite(), dim_a, ENUMERATION_BOUND)
            .map_err(|e| Failure::input("bound", Some(path), e))?;
        rows.push(json!({
            "dim_a": dim_a,
            "actions": report.actions,
            "algebra_maps": report.maps,
            "module_structures": modules.maps.len(),
            "bijection": report.passed() && report.maps == modules.maps.len(),
        }));
    }
    Ok(json!({ "p": f.p(), "dim_b": b.dim(), "cutoff": cutoff, "counts": rows }))
}
