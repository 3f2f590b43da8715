use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::Fp;
use super::linalg::Mat;
use super::tensor::Tensor;
use super::{within_bound, AlgebraError};

/// A finite-dimensional unital associative algebra given by structure
/// constants: `e_i·e_j = Σ_k c_{ij}^k e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssocAlgebra {
    f: Fp,
    mul: Tensor,
    unit: Vec<u32>,
}

impl AssocAlgebra {
    /// Checks associativity and the unit laws.
    pub fn new(f: Fp, mul: Tensor, unit: Vec<u32>) -> Result<Self, AlgebraError> {
        let dim = unit.len();
        if mul.inputs != [dim, dim] || mul.out != dim {
            return Err(AlgebraError::Shape(format!("product of a {dim}-dimensional algebra")));
        }
        if mul.data.iter().chain(&unit).any(|&v| v >= f.p()) {
            return Err(AlgebraError::Shape("coefficient out of range".into()));
        }
        if !is_associative(f, &mul) {
            return Err(AlgebraError::NotAssociative);
        }
        if !is_unit(f, &mul, &unit) {
            return Err(AlgebraError::NotUnital);
        }
        Ok(AssocAlgebra { f, mul, unit })
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(f: Fp) -> Self {
        AssocAlgebra { f, mul: Tensor::from_fn(vec![1, 1], 1, |_| vec![1]), unit: vec![1] }
    }

    pub fn field(&self) -> Fp {
        self.f
    }

    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn mul_tensor(&self) -> &Tensor {
        &self.mul
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.mul.apply(self.f, &[a.to_vec(), b.to_vec()])
    }

    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    pub fn opposite(&self) -> Self {
        AssocAlgebra { f: self.f, mul: self.mul.permute(&[1, 0]), unit: self.unit.clone() }
    }

    /// Whether the linear map `m: self → target` preserves products and units.
    pub fn is_algebra_map(&self, target: &AssocAlgebra, m: &Mat) -> bool {
        let f = self.f;
        if m.rows != target.dim() || m.cols != self.dim() {
            return false;
        }
        if m.apply(f, &self.unit) != target.unit {
            return false;
        }
        let images: Vec<Vec<u32>> = (0..self.dim()).map(|i| m.column(i)).collect();
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                m.apply(f, self.mul.get(&[i, j])) == target.mul(&images[i], &images[j])
            })
        })
    }

    /// Every unital associative structure on `F_p^dim`, in enumeration order.
    pub fn enumerate_unital(f: Fp, dim: usize, bound: u128) -> Result<Vec<AssocAlgebra>, AlgebraError> {
        within_bound(f.p(), dim * dim * dim + dim, bound)?;
        let tables = f.count(dim * dim * dim).ok_or(AlgebraError::Dimension(dim))?;
        let units = f.count(dim).ok_or(AlgebraError::Dimension(dim))?;
        let found: Vec<AssocAlgebra> = (0..tables as u64)
            .into_par_iter()
            .filter_map(|idx| {
                let mul = Tensor { inputs: vec![dim, dim], out: dim, data: f.vector(dim * dim * dim, idx) };
                if !is_associative(f, &mul) {
                    return None;
                }
                (0..units).map(|u| f.vector(dim, u)).find(|u| is_unit(f, &mul, u)).map(|unit| AssocAlgebra {
                    f,
                    mul,
                    unit,
                })
            })
            .collect();
        Ok(found)
    }

    pub fn to_json(&self) -> AlgebraJson {
        let d = self.dim();
        let mul = (0..d * d)
            .map(|flat| {
                self.mul.data[flat * d..(flat + 1) * d]
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(k, &c)| (k, c))
                    .collect()
            })
            .collect();
        AlgebraJson { p: self.f.p(), dim: d, mul, unit: self.unit.clone() }
    }

    pub fn from_json(json: &AlgebraJson) -> Result<Self, AlgebraError> {
        let f = Fp::new(json.p)?;
        let d = json.dim;
        if json.mul.len() != d * d {
            return Err(AlgebraError::Shape(format!("expected {} products, got {}", d * d, json.mul.len())));
        }
        let mut mul = Tensor::zeros(vec![d, d], d);
        for (flat, terms) in json.mul.iter().enumerate() {
            for &(k, c) in terms {
                if k >= d {
                    return Err(AlgebraError::Shape(format!("basis index {k} out of range")));
                }
                let slot = &mut mul.data[flat * d + k];
                *slot = f.add(*slot, f.reduce(c as i64));
            }
        }
        let unit = json.unit.iter().map(|&c| f.reduce(c as i64)).collect();
        AssocAlgebra::new(f, mul, unit)
    }
}

/// Serialized algebra: `mul[i·dim + j]` lists the nonzero terms `[k, c]` of `e_i·e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub p: u32,
    pub dim: usize,
    pub mul: Vec<Vec<(usize, u32)>>,
    pub unit: Vec<u32>,
}

fn is_associative(f: Fp, mul: &Tensor) -> bool {
    let d = mul.out;
    let basis = |i: usize| {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    };
    (0..d).all(|i| {
        (0..d).all(|j| {
            let ij = mul.get(&[i, j]).to_vec();
            (0..d).all(|k| {
                let jk = mul.get(&[j, k]).to_vec();
                mul.apply(f, &[ij.clone(), basis(k)]) == mul.apply(f, &[basis(i), jk])
            })
        })
    })
}

fn is_unit(f: Fp, mul: &Tensor, unit: &[u32]) -> bool {
    let d = mul.out;
    (0..d).all(|i| {
        let mut e = vec![0; d];
        e[i] = 1;
        mul.apply(f, &[unit.to_vec(), e.clone()]) == e && mul.apply(f, &[e.clone(), unit.to_vec()]) == e
    })
}

/// `hom(A, A)` with composition `f·g = f∘g` and unit `id`. The basis vector
/// `i·dim + j` is the matrix unit `E_{ij}`.
pub fn end_algebra(f: Fp, dim: usize) -> AssocAlgebra {
    let n = dim * dim;
    let mul = Tensor::from_fn(vec![n, n], n, |t| {
        let (i, j) = (t[0] / dim, t[0] % dim);
        let (k, l) = (t[1] / dim, t[1] % dim);
        let mut v = vec![0; n];
        if j == k {
            v[i * dim + l] = 1;
        }
        v
    });
    let mut unit = vec![0; n];
    for i in 0..dim {
        unit[i * dim + i] = 1;
    }
    AssocAlgebra { f, mul, unit }
}

/// All linear maps `F_p^cols → F_p^rows`, in enumeration order.
pub fn enumerate_linear_maps(f: Fp, rows: usize, cols: usize, bound: u128) -> Result<Vec<Mat>, AlgebraError> {
    let count = within_bound(f.p(), rows * cols, bound)?;
    Ok((0..count as u64).map(|i| Mat { rows, cols, data: f.vector(rows * cols, i) }).collect())
}

/// A left module: `ρ(1, a) = a` and `ρ(b, ρ(b', a)) = ρ(bb', a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleStructure {
    pub algebra: AssocAlgebra,
    pub dim: usize,
    pub rho: Tensor,
}

impl ModuleStructure {
    pub fn new(algebra: AssocAlgebra, dim: usize, rho: Tensor) -> Result<Self, AlgebraError> {
        if rho.inputs != [algebra.dim(), dim] || rho.out != dim {
            return Err(AlgebraError::Shape("action tensor".into()));
        }
        if !is_left_module(&algebra, dim, &rho) {
            return Err(AlgebraError::NotAnAlgebra("module axioms fail".into()));
        }
        Ok(ModuleStructure { algebra, dim, rho })
    }

    /// `b ↦ ρ(b, −)` as a matrix whose column `k` lists `ρ(e_k, −)` row by row.
    pub fn to_map(&self) -> Mat {
        rho_to_map(self.algebra.dim(), self.dim, &self.rho)
    }
}

fn is_left_module(b: &AssocAlgebra, dim: usize, rho: &Tensor) -> bool {
    let f = b.field();
    let e = |i: usize, n: usize| {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    };
    let unit_ok = (0..dim).all(|a| rho.apply(f, &[b.unit().to_vec(), e(a, dim)]) == e(a, dim));
    unit_ok
        && (0..b.dim()).all(|i| {
            (0..b.dim()).all(|j| {
                (0..dim).all(|a| {
                    let inner = rho.get(&[j, a]).to_vec();
                    rho.apply(f, &[e(i, b.dim()), inner]) == rho.apply(f, &[b.mul_tensor().get(&[i, j]).to_vec(), e(a, dim)])
                })
            })
        })
}

pub(crate) fn rho_to_map(dim_b: usize, dim_a: usize, rho: &Tensor) -> Mat {
    let mut m = Mat::zeros(dim_a * dim_a, dim_b);
    for k in 0..dim_b {
        for j in 0..dim_a {
            for (i, &v) in rho.get(&[k, j]).iter().enumerate() {
                m.set(i * dim_a + j, k, v);
            }
        }
    }
    m
}

pub(crate) fn map_to_rho(dim_b: usize, dim_a: usize, m: &Mat) -> Tensor {
    Tensor::from_fn(vec![dim_b, dim_a], dim_a, |t| (0..dim_a).map(|i| m.get(i * dim_a + t[1], t[0])).collect())
}

/// Both sides of "a `B`-module structure on `A` is an algebra map `B → End(A)`",
/// enumerated independently, with the pairing between them.
#[derive(Clone, Debug)]
pub struct ModuleMapBijection {
    pub modules: Vec<ModuleStructure>,
    pub maps: Vec<Mat>,
    /// `to_map[i]` is the index in `maps` of `b ↦ ρ_i(b, −)`.
    pub to_map: Vec<Option<usize>>,
    /// `to_module[j]` is the index in `modules` of `(b, a) ↦ F_j(b)(a)`.
    pub to_module: Vec<Option<usize>>,
}

impl ModuleMapBijection {
    /// Equal counts and mutually inverse pairings.
    pub fn is_bijection(&self) -> bool {
        self.modules.len() == self.maps.len()
            && self.to_map.iter().enumerate().all(|(i, j)| j.is_some_and(|j| self.to_module[j] == Some(i)))
            && self.to_module.iter().enumerate().all(|(j, i)| i.is_some_and(|i| self.to_map[i] == Some(j)))
    }
}

/// Enumerates `B`-module structures on `F_p^dim_a` and algebra maps
/// `B → End(A)` by brute force over all `p^(dim B · dim_a²)` tensors each.
pub fn module_map_bijection(b: &AssocAlgebra, dim_a: usize, bound: u128) -> Result<ModuleMapBijection, AlgebraError> {
    let f = b.field();
    let n = b.dim() * dim_a * dim_a;
    let count = within_bound(f.p(), n, bound)?;
    let end = end_algebra(f, dim_a);
    let modules: Vec<ModuleStructure> = (0..count as u64)
        .into_par_iter()
        .filter_map(|i| {
            let rho = Tensor { inputs: vec![b.dim(), dim_a], out: dim_a, data: f.vector(n, i) };
            is_left_module(b, dim_a, &rho).then(|| ModuleStructure { algebra: b.clone(), dim: dim_a, rho })
        })
        .collect();
    let maps: Vec<Mat> = (0..count as u64)
        .into_par_iter()
        .filter_map(|i| {
            let m = Mat { rows: dim_a * dim_a, cols: b.dim(), data: f.vector(n, i) };
            b.is_algebra_map(&end, &m).then_some(m)
        })
        .collect();
    let map_index: HashMap<&Mat, usize> = maps.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let module_index: HashMap<&Tensor, usize> = modules.iter().enumerate().map(|(i, m)| (&m.rho, i)).collect();
    let to_map = modules.iter().map(|m| map_index.get(&m.to_map()).copied()).collect();
    let to_module = maps.iter().map(|m| module_index.get(&map_to_rho(b.dim(), dim_a, m)).copied()).collect();
    Ok(ModuleMapBijection { modules, maps, to_map, to_module })
}
