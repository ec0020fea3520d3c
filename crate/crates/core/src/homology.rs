//! Reduced simplicial homology over a field, and order complexes of finite posets.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{Field, SparseMatrix};
use crate::set::VertexSet;

/// A face as a set of integer vertices. Orientation is the ascending vertex order.
pub trait Face: Clone + Eq + Hash + Ord {
    fn from_vertices(vs: &[u32]) -> Self;
    /// Vertices in ascending order.
    fn vertices(&self) -> Vec<u32>;
}

impl Face for VertexSet {
    fn from_vertices(vs: &[u32]) -> Self {
        vs.iter().map(|&v| v as usize).collect()
    }

    fn vertices(&self) -> Vec<u32> {
        self.iter().map(|v| v as u32).collect()
    }
}

impl Face for Vec<u32> {
    fn from_vertices(vs: &[u32]) -> Self {
        let mut v = vs.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    }

    fn vertices(&self) -> Vec<u32> {
        let mut v = self.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// All nonempty faces of a complex, grouped by dimension and sorted within
/// each dimension. `by_dim[d]` holds the faces with `d + 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Faces<F> {
    pub by_dim: Vec<Vec<F>>,
}

impl<F: Face> Faces<F> {
    /// Number of faces in each dimension `0, 1, …`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Reduced Euler characteristic `Σ (−1)^i f_i − 1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.by_dim.iter().enumerate().map(|(i, fs)| if i % 2 == 0 { fs.len() as i64 } else { -(fs.len() as i64) }).sum::<i64>()
            - 1
    }
}

/// Faces of the complex with the given facets, up to `max_size` vertices.
pub fn faces_up_to<F: Face>(facets: &[F], max_size: usize, budget: usize) -> Result<Faces<F>> {
    let mut sets: Vec<HashSet<F>> = Vec::new();
    let mut total = 0usize;
    for f in facets {
        let vs = f.vertices();
        let top = vs.len().min(max_size);
        if sets.len() < top {
            sets.resize_with(top, HashSet::new);
        }
        let mut buf = Vec::with_capacity(top);
        collect_subsets(&vs, 0, top, &mut buf, &mut |s| {
            if sets[s.len() - 1].insert(F::from_vertices(s)) {
                total += 1;
                if total > budget {
                    return Err(Error::BudgetExceeded { what: "faces", limit: budget as u64 });
                }
            }
            Ok(())
        })?;
    }
    let by_dim = sets
        .into_iter()
        .map(|s| {
            let mut v: Vec<F> = s.into_iter().collect();
            v.sort();
            v
        })
        .collect();
    Ok(Faces { by_dim })
}

fn collect_subsets(
    vs: &[u32],
    start: usize,
    top: usize,
    buf: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if !buf.is_empty() {
        f(buf)?;
    }
    if buf.len() == top {
        return Ok(());
    }
    for i in start..vs.len() {
        buf.push(vs[i]);
        collect_subsets(vs, i + 1, top, buf, f)?;
        buf.pop();
    }
    Ok(())
}

/// All faces of a complex, subject to the global face budget.
pub fn faces_from_facets(c: &Complex) -> Result<Faces<VertexSet>> {
    faces_up_to(c.facets(), usize::MAX, Limits::global().faces)
}

/// Matrix of `δ_i : C_i → C_{i−1}` in the sorted face bases. Removing the
/// `j`-th vertex (counting from 0) carries the sign `(−1)^j`. `δ_0` is the
/// augmentation onto the single basis element of `C_{−1}`.
pub fn boundary_matrix<F: Face>(faces: &Faces<F>, i: usize) -> SparseMatrix {
    let Some(cols) = faces.by_dim.get(i) else {
        let nrows = if i == 0 { 1 } else { faces.by_dim.get(i - 1).map_or(0, Vec::len) };
        return SparseMatrix { nrows, cols: Vec::new() };
    };
    if i == 0 {
        return SparseMatrix { nrows: 1, cols: cols.iter().map(|_| vec![(0, 1)]).collect() };
    }
    let rows = &faces.by_dim[i - 1];
    let index: HashMap<&F, u32> = rows.iter().enumerate().map(|(k, f)| (f, k as u32)).collect();
    let cols = cols
        .iter()
        .map(|f| {
            let vs = f.vertices();
            let mut col: Vec<(u32, i64)> = (0..vs.len())
                .map(|j| {
                    let mut sub = vs.clone();
                    sub.remove(j);
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    (index[&F::from_vertices(&sub)], sign)
                })
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    SparseMatrix { nrows: rows.len(), cols }
}

/// A complex with no faces, or only the empty face, has `H̃_{−1} = 1`.
fn is_void<F: Face>(facets: &[F]) -> bool {
    facets.iter().all(|f| f.vertices().is_empty())
}

/// `dim H̃_i` for `i ≥ −1`, building faces only up to dimension `i + 1`.
pub fn reduced_homology_dim<F: Face>(facets: &[F], i: isize, field: Field, limits: &Limits) -> Result<usize> {
    if i < -1 {
        return Ok(0);
    }
    if is_void(facets) {
        return Ok(usize::from(i == -1));
    }
    let faces = faces_up_to(facets, (i + 2) as usize, limits.faces)?;
    // C_i has f_i basis elements, with C_{-1} one-dimensional.
    let f_i = if i == -1 { 1 } else { faces.by_dim.get(i as usize).map_or(0, Vec::len) };
    let rank_in = if i == -1 { 0 } else { boundary_matrix(&faces, i as usize).rank(field) };
    let rank_out = boundary_matrix(&faces, (i + 1) as usize).rank(field);
    Ok(f_i - rank_in - rank_out)
}

/// `[dim H̃_{−1}, dim H̃_0, …, dim H̃_{dim}]`.
pub fn reduced_homology_dims_of<F: Face>(facets: &[F], field: Field, limits: &Limits) -> Result<Vec<usize>> {
    if is_void(facets) {
        return Ok(vec![1]);
    }
    let faces = faces_up_to(facets, usize::MAX, limits.faces)?;
    let top = faces.by_dim.len();
    // ranks[d] = rank δ_d for d = 0..=top, with δ_top = 0.
    let ranks: Vec<usize> = (0..=top).map(|d| boundary_matrix(&faces, d).rank(field)).collect();
    let mut dims = vec![1 - ranks[0]];
    for d in 0..top {
        dims.push(faces.by_dim[d].len() - ranks[d] - ranks[d + 1]);
    }
    Ok(dims)
}

pub fn reduced_homology_dims(c: &Complex, field: Field) -> Result<Vec<usize>> {
    reduced_homology_dims_of(c.facets(), field, Limits::global())
}

/// Maximal chains of the strict order `less` on `0..n`, each listed as
/// ascending element ids. These are the facets of the order complex.
pub fn order_complex(n: usize, less: impl Fn(usize, usize) -> bool, limits: &Limits) -> Result<Vec<Vec<u32>>> {
    let rel: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| less(a, b)).collect()).collect();
    for a in 0..n {
        if rel[a][a] {
            return Err(Error::NotAPartialOrder(format!("{a} < {a}")));
        }
        for b in 0..n {
            if rel[a][b] {
                if let Some(c) = (0..n).find(|&c| rel[b][c] && !rel[a][c]) {
                    return Err(Error::NotAPartialOrder(format!("{a} < {b} < {c} but not {a} < {c}")));
                }
            }
        }
    }
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| rel[a][b] && !(0..n).any(|c| rel[a][c] && rel[c][b])).collect())
        .collect();
    let mut chains = Vec::new();
    let mut stack = Vec::new();
    for a in (0..n).filter(|&a| !(0..n).any(|b| rel[b][a])) {
        stack.push(a);
        extend_chains(&covers, &mut stack, &mut chains, limits.faces)?;
        stack.pop();
    }
    Ok(chains)
}

fn extend_chains(covers: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<u32>>, budget: usize) -> Result<()> {
    let top = *stack.last().unwrap();
    if covers[top].is_empty() {
        if out.len() >= budget {
            return Err(Error::BudgetExceeded { what: "maximal chains", limit: budget as u64 });
        }
        let ids: Vec<u32> = stack.iter().map(|&x| x as u32).collect();
        out.push(Vec::<u32>::from_vertices(&ids));
        return Ok(());
    }
    for &b in &covers[top] {
        stack.push(b);
        extend_chains(covers, stack, out, budget)?;
        stack.pop();
    }
    Ok(())
}
