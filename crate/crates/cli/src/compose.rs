//! `compose` and `normalize`: parse, validate, operate, print canonical JSON.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use operad_forge::geometry::{self, validate_config, Color, Configuration, GeometryError};
use operad_forge::operad_core::{DiscOperad, Operad, OperadError};
use operad_forge::schinf::{compose_schinf, normalize_sch, rho_e, SChInfElement, SchError, SemiElem, Semidirect};
use operad_forge::trees::{
    check_tree, compose_le, normalize_le, normalize_w, Child, DecoratedTree, EOperad, ETree, LevelSequence, Node,
    TreeError,
};
use serde_json::{json, Value};

use crate::io::{parse_as, read_json, CliResult, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Little discs `E_d`: every configuration has a full target.
    Full,
    /// Swiss cheese `SC_d`: the outer configuration has a half target.
    Mixed,
    /// Level sequences, composed left to right.
    Le,
    /// `SC^{h∞}` elements along their half inputs.
    Schinf,
    /// `SC^{h∞} ⋊ E`: inputs are `{"full": ..}` or `{"half": ..}`.
    Semidirect,
}

fn geometry_failure(e: GeometryError) -> Failure {
    match e {
        GeometryError::ArityMismatch { .. }
        | GeometryError::ColorMismatch { .. }
        | GeometryError::DimensionMismatch { .. } => Failure::mismatch(e),
        other => Failure::input("invalid", None, other),
    }
}

fn operad_failure(e: OperadError) -> Failure {
    match e {
        OperadError::ArityMismatch { .. } | OperadError::ColorMismatch { .. } => Failure::mismatch(e),
        other => Failure::input("invalid", None, other),
    }
}

fn tree_failure(e: TreeError) -> Failure {
    match e {
        TreeError::ArityMismatch { .. } | TreeError::ColorMismatch { .. } => Failure::mismatch(e),
        TreeError::Geometry(g) => geometry_failure(g),
        TreeError::Operad(o) => operad_failure(o),
        other => Failure::input("invalid", None, other),
    }
}

fn sch_failure(e: SchError) -> Failure {
    match e {
        SchError::Arity { .. } => Failure::mismatch(e),
        SchError::Tree(t) => tree_failure(t),
        SchError::Operad(o) => operad_failure(o),
        other => Failure::input("invalid", None, other),
    }
}

/// Parses and validates a configuration, reporting every violated invariant.
pub fn load_config(path: &Path, v: &Value) -> CliResult<Configuration> {
    let cfg: Configuration = parse_as(path, v)?;
    let report = validate_config(&cfg);
    if !report.is_ok() {
        let violations = serde_json::to_value(&report.violations).expect("violations serialize");
        return Err(Failure::input("validation", Some(path), format!("{} violated invariant(s)", report.violations.len()))
            .with("violations", violations));
    }
    Ok(cfg)
}

pub fn load_sequence(path: &Path, v: &Value) -> CliResult<LevelSequence> {
    let s: LevelSequence = parse_as(path, v)?;
    s.check().map_err(|e| Failure::input("validation", Some(path), e))?;
    Ok(s)
}

pub fn load_schinf(path: &Path, v: &Value) -> CliResult<SChInfElement> {
    SChInfElement::from_json(v).map_err(|e| Failure::input("validation", Some(path), e))
}

fn vertices<'a>(child: &'a Child<Configuration>, out: &mut Vec<&'a Configuration>) {
    if let Child::Edge { node, .. } = child {
        let Node { label, children } = node.as_ref();
        out.push(label);
        for c in children {
            vertices(c, out);
        }
    }
}

/// A W-tree over `SC_d` whose vertices are valid configurations of one
/// dimension. Returns the dimension (1 for the bare unit tree).
pub fn load_wtree(path: &Path, v: &Value) -> CliResult<(usize, DecoratedTree<Configuration>)> {
    let tree = DecoratedTree::<Configuration>::from_json(v).map_err(|e| Failure::input("parse", Some(path), e))?;
    let mut labels = Vec::new();
    vertices(&tree.root, &mut labels);
    let d = labels.first().map_or(1, |c| c.d);
    for cfg in &labels {
        if cfg.d != d {
            return Err(Failure::input("validation", Some(path), "vertices have different dimensions"));
        }
        let report = validate_config(cfg);
        if !report.is_ok() {
            let violations = serde_json::to_value(&report.violations).expect("violations serialize");
            return Err(Failure::input("validation", Some(path), "a vertex is not a valid configuration")
                .with("violations", violations));
        }
    }
    check_tree(&DiscOperad { d }, &tree).map_err(|e| Failure::input("validation", Some(path), e))?;
    Ok((d, tree))
}

fn etree_dim(t: &ETree) -> Option<usize> {
    match t {
        ETree::Leaf(_) => None,
        ETree::Node { seq, .. } => Some(seq.d),
    }
}

enum Semi {
    Full(ETree),
    Half(SChInfElement),
}

fn load_semi(path: &Path, v: &Value) -> CliResult<Semi> {
    let obj = v.as_object().filter(|m| m.len() == 1);
    match obj.and_then(|m| m.iter().next()) {
        Some((k, inner)) if k == "full" => Ok(Semi::Full(parse_as(path, inner)?)),
        Some((k, inner)) if k == "half" => Ok(Semi::Half(load_schinf(path, inner)?)),
        _ => Err(Failure::input("parse", Some(path), "expected {\"full\": ..} or {\"half\": ..}")),
    }
}

fn semi_json(x: &SemiElem<ETree>) -> Value {
    match x {
        SemiElem::F(t) => json!({ "full": serde_json::to_value(t).expect("trees serialize") }),
        SemiElem::H(h) => json!({ "half": h.to_json() }),
    }
}

fn compose_semidirect(items: Vec<(PathBuf, Semi)>) -> CliResult<Value> {
    let dims: Vec<usize> = items
        .iter()
        .filter_map(|(_, x)| match x {
            Semi::Full(t) => etree_dim(t),
            Semi::Half(h) => Some(h.d),
        })
        .collect();
    let d = dims.first().copied().unwrap_or(1);
    if let Some(&other) = dims.iter().find(|&&e| e != d) {
        return Err(Failure::mismatch(format!("dimension mismatch: expected {d}, got {other}")));
    }
    let mut elems = Vec::with_capacity(items.len());
    for (path, x) in items {
        elems.push(match x {
            Semi::Full(t) => {
                t.check(d).map_err(|e| Failure::input("validation", Some(&path), e))?;
                SemiElem::F(t)
            }
            Semi::Half(h) => SemiElem::H(h),
        });
    }
    let op = Semidirect { d, o: EOperad { d }, rho: rho_e };
    let out = op.compose(&elems[0], &elems[1..]).map_err(operad_failure)?;
    Ok(semi_json(&out))
}

/// Composes `inputs[1..]` into `inputs[0]` (left to right for `le`).
pub fn compose(mode: Mode, inputs: &[PathBuf]) -> CliResult<Value> {
    let raw = inputs.iter().map(|p| read_json(p).map(|v| (p.clone(), v))).collect::<CliResult<Vec<_>>>()?;
    match mode {
        Mode::Full | Mode::Mixed => {
            let cfgs = raw.iter().map(|(p, v)| load_config(p, v)).collect::<CliResult<Vec<_>>>()?;
            let (outer, rest) = cfgs.split_first().expect("clap requires an input");
            let out = match mode {
                Mode::Full => {
                    if let Some(bad) = rest.iter().position(|c| c.target != Color::Full) {
                        return Err(geometry_failure(GeometryError::ColorMismatch {
                            slot: bad,
                            expected: Color::Full,
                            got: Color::Half,
                        }));
                    }
                    geometry::compose_full(outer, rest)
                }
                _ => {
                    if outer.target != Color::Half {
                        return Err(Failure::mismatch("mixed composition needs an outer configuration with a half target"));
                    }
                    let (full, half) = rest.split_at(outer.n_full().min(rest.len()));
                    geometry::compose_mixed(outer, full, half)
                }
            }
            .map_err(geometry_failure)?;
            Ok(out.to_json())
        }
        Mode::Le => {
            let seqs = raw.iter().map(|(p, v)| load_sequence(p, v)).collect::<CliResult<Vec<_>>>()?;
            let mut acc = normalize_le(&seqs[0]).map_err(tree_failure)?;
            for s in &seqs[1..] {
                acc = compose_le(&acc, s).map_err(tree_failure)?;
            }
            Ok(serde_json::to_value(&acc).expect("sequences serialize"))
        }
        Mode::Schinf => {
            let els = raw.iter().map(|(p, v)| load_schinf(p, v)).collect::<CliResult<Vec<_>>>()?;
            let (outer, rest) = els.split_first().expect("clap requires an input");
            if let Some(bad) = rest.iter().find(|x| x.d != outer.d) {
                return Err(Failure::mismatch(format!("dimension mismatch: expected {}, got {}", outer.d, bad.d)));
            }
            let out = compose_schinf(outer, rest).map_err(sch_failure)?;
            Ok(out.to_json())
        }
        Mode::Semidirect => {
            let items = raw.iter().map(|(p, v)| load_semi(p, v).map(|x| (p.clone(), x))).collect::<CliResult<Vec<_>>>()?;
            compose_semidirect(items)
        }
    }
}

/// Normal form of a W-tree over `SC_d`, a level sequence or an `SC^{h∞}`
/// element. A configuration is validated and echoed in canonical form.
pub fn normalize(path: &Path) -> CliResult<Value> {
    let v = read_json(path)?;
    let has = |k: &str| v.get(k).is_some();
    if has("discs") {
        Ok(load_config(path, &v)?.to_json())
    } else if has("labels") && has("lengths") {
        let s = load_sequence(path, &v)?;
        let n = normalize_le(&s).map_err(tree_failure)?;
        Ok(serde_json::to_value(&n).expect("sequences serialize"))
    } else if has("d") {
        let x = load_schinf(path, &v)?;
        Ok(normalize_sch(&x).map_err(sch_failure)?.to_json())
    } else if has("color") && (has("vertex") || has("leaf")) {
        let (d, tree) = load_wtree(path, &v)?;
        Ok(normalize_w(&DiscOperad { d }, &tree).map_err(tree_failure)?.to_json())
    } else {
        Err(Failure::input("unsupported", Some(path), "expected a configuration, a W-tree, a level sequence or an SC^{h∞} element"))
    }
}
