//! Matchings of a simplicial complex and the numbers ν, ν₀ and ν₁.
//!
//! All three numbers are computed exactly by branch and bound. Every search
//! charges a [`NodeCounter`] and fails with `BudgetExceeded` instead of
//! returning an underestimate.

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::limits::{Limits, NodeCounter};
use crate::set::VertexSet;

/// A set of pairwise disjoint facets, kept as sorted facet indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    pub indices: Vec<usize>,
    pub facets: Vec<VertexSet>,
    /// For restricted matchings: the member forming a gap with all others.
    pub certificate: Option<usize>,
}

impl Matching {
    fn from_indices(c: &Complex, mut indices: Vec<usize>) -> Matching {
        indices.sort_unstable();
        let facets = indices.iter().map(|&i| c.facets()[i]).collect();
        Matching { indices, facets, certificate: None }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn support(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f))
    }
}

/// A matching number together with a matching that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnessed {
    pub value: usize,
    pub witness: Matching,
}

/// All `k`-matchings in lexicographic order of their sorted facet indices.
pub fn enumerate_matchings(c: &Complex, k: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    for_each_matching(c, k, |idx| out.push(Matching::from_indices(c, idx.to_vec())));
    out
}

/// Calls `f` on the sorted index list of every `k`-matching, in lexicographic order.
pub fn for_each_matching<F: FnMut(&[usize])>(c: &Complex, k: usize, mut f: F) {
    fn rec<F: FnMut(&[usize])>(fs: &[VertexSet], k: usize, start: usize, used: VertexSet, cur: &mut Vec<usize>, f: &mut F) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..fs.len() {
            if fs.len() - i < need {
                break;
            }
            if fs[i].is_disjoint(used) {
                cur.push(i);
                rec(fs, k, i + 1, used.union(fs[i]), cur, f);
                cur.pop();
            }
        }
    }
    rec(c.facets(), k, 0, VertexSet::EMPTY, &mut Vec::with_capacity(k), &mut f);
}

pub fn count_matchings(c: &Complex, k: usize) -> usize {
    let mut n = 0;
    for_each_matching(c, k, |_| n += 1);
    n
}

/// Maximum matching among the facets at `cands` (indices into `fs`).
struct MaxMatching<'a> {
    fs: &'a [VertexSet],
    best: Vec<usize>,
    cur: Vec<usize>,
    counter: &'a mut NodeCounter,
}

impl MaxMatching<'_> {
    fn upper_bound(&self, cands: &[usize]) -> usize {
        if cands.is_empty() {
            return 0;
        }
        let mut union = VertexSet::EMPTY;
        let mut min = usize::MAX;
        for &i in cands {
            union = union.union(self.fs[i]);
            min = min.min(self.fs[i].len().max(1));
        }
        cands.len().min(union.len() / min)
    }

    fn search(&mut self, cands: Vec<usize>) -> Result<()> {
        self.counter.tick()?;
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
        }
        if cands.is_empty() || self.cur.len() + self.upper_bound(&cands) <= self.best.len() {
            return Ok(());
        }
        // Branch on the vertex lying in the fewest candidate facets.
        let mut union = VertexSet::EMPTY;
        for &i in &cands {
            union = union.union(self.fs[i]);
        }
        let v = union
            .iter()
            .min_by_key(|&v| cands.iter().filter(|&&i| self.fs[i].contains(v)).count())
            .expect("nonempty candidates have a vertex");
        let (with_v, without_v): (Vec<usize>, Vec<usize>) = cands.iter().partition(|&&i| self.fs[i].contains(v));
        for &i in &with_v {
            let next: Vec<usize> = cands.iter().copied().filter(|&j| self.fs[j].is_disjoint(self.fs[i])).collect();
            self.cur.push(i);
            self.search(next)?;
            self.cur.pop();
        }
        self.search(without_v)
    }
}

fn max_matching_among(fs: &[VertexSet], cands: Vec<usize>, counter: &mut NodeCounter) -> Result<Vec<usize>> {
    // Greedy start gives the bound something to prune against.
    let mut greedy: Vec<usize> = Vec::new();
    let mut used = VertexSet::EMPTY;
    let mut order = cands.clone();
    order.sort_by_key(|&i| fs[i].len());
    for i in order {
        if fs[i].is_disjoint(used) {
            used = used.union(fs[i]);
            greedy.push(i);
        }
    }
    let mut mm = MaxMatching { fs, best: greedy, cur: Vec::new(), counter };
    mm.search(cands)?;
    Ok(mm.best)
}

/// ν(Δ): the largest number of pairwise disjoint facets.
pub fn matching_number(c: &Complex) -> Result<Witnessed> {
    matching_number_with(c, Limits::global())
}

pub fn matching_number_with(c: &Complex, limits: &Limits) -> Result<Witnessed> {
    let mut counter = NodeCounter::new(limits.nodes);
    let best = max_matching_among(c.facets(), (0..c.num_facets()).collect(), &mut counter)?;
    let witness = Matching::from_indices(c, best);
    Ok(Witnessed { value: witness.len(), witness })
}

/// ν₀(Δ): the largest matching containing a facet that forms a gap with
/// every other member. Singletons qualify, so ν₀ ≥ 1 on nonempty complexes.
///
/// A matching `{F} ∪ N` is restricted with certificate `F` exactly when every
/// member of `N` gaps `F`, so ν₀ = 1 + max over `F` of the matching number of
/// the facets gapping `F`.
pub fn restricted_matching_number(c: &Complex) -> Result<Witnessed> {
    restricted_matching_number_with(c, Limits::global())
}

pub fn restricted_matching_number_with(c: &Complex, limits: &Limits) -> Result<Witnessed> {
    let fs = c.facets();
    if fs.is_empty() {
        return Ok(Witnessed { value: 0, witness: Matching::from_indices(c, vec![]) });
    }
    let gaps = c.gap_matrix();
    let mut counter = NodeCounter::new(limits.nodes);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for f in 0..fs.len() {
        let cands: Vec<usize> = (0..fs.len()).filter(|&g| gaps[f][g]).collect();
        let best_len = best.as_ref().map_or(0, |(_, m)| m.len());
        // Cheap bound before the search.
        if cands.len() < best_len {
            continue;
        }
        let mut m = max_matching_among(fs, cands, &mut counter)?;
        m.push(f);
        if m.len() > best_len {
            best = Some((f, m));
        }
    }
    let (cert, idx) = best.expect("nonempty complex");
    let mut witness = Matching::from_indices(c, idx);
    witness.certificate = Some(cert);
    Ok(Witnessed { value: witness.len(), witness })
}

/// Whether the facets at `indices` form an induced matching: pairwise
/// disjoint, and no other facet lies inside their union.
pub fn is_induced_matching(c: &Complex, indices: &[usize]) -> bool {
    let fs = c.facets();
    let mut union = VertexSet::EMPTY;
    for &i in indices {
        if !fs[i].is_disjoint(union) {
            return false;
        }
        union = union.union(fs[i]);
    }
    fs.iter().enumerate().all(|(j, f)| !f.is_subset(union) || indices.contains(&j))
}

/// ν₁(Δ): the largest matching `M` whose union induces exactly `M`.
pub fn induced_matching_number(c: &Complex) -> Result<Witnessed> {
    induced_matching_number_with(c, Limits::global())
}

pub fn induced_matching_number_with(c: &Complex, limits: &Limits) -> Result<Witnessed> {
    let fs = c.facets();
    let gaps = c.gap_matrix();
    let mut counter = NodeCounter::new(limits.nodes);
    let mut best: Vec<usize> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();

    // Induced matchings are closed under taking subsets, so a depth-first
    // extension over pairwise-gapped candidates reaches every one of them.
    fn rec(
        c: &Complex,
        gaps: &[Vec<bool>],
        cands: Vec<usize>,
        cur: &mut Vec<usize>,
        best: &mut Vec<usize>,
        counter: &mut NodeCounter,
    ) -> Result<()> {
        counter.tick()?;
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        for (pos, &j) in cands.iter().enumerate() {
            if cur.len() + cands.len() - pos <= best.len() {
                break;
            }
            cur.push(j);
            if is_induced_matching(c, cur) {
                let next: Vec<usize> = cands[pos + 1..].iter().copied().filter(|&l| gaps[j][l]).collect();
                rec(c, gaps, next, cur, best, counter)?;
            }
            cur.pop();
        }
        Ok(())
    }

    rec(c, &gaps, (0..fs.len()).collect(), &mut cur, &mut best, &mut counter)?;
    let witness = Matching::from_indices(c, best);
    Ok(Witnessed { value: witness.len(), witness })
}

/// Returns the first member of `m` (in the given order) that forms a gap with
/// every other member, or `None` if there is none.
pub fn is_restricted_matching(c: &Complex, m: &[VertexSet]) -> Result<Option<VertexSet>> {
    for &f in m {
        c.require_facet(f)?;
    }
    for (a, &f) in m.iter().enumerate() {
        for &g in &m[a + 1..] {
            if !f.is_disjoint(g) {
                return Err(Error::NotAMatching(c.show(f), c.show(g)));
            }
        }
    }
    Ok(m.iter()
        .copied()
        .find(|&f| m.iter().all(|&g| g == f || c.gap_unchecked(f, g))))
}

/// (ν, ν₀, ν₁) in one call.
pub fn matching_invariants(c: &Complex) -> Result<(Witnessed, Witnessed, Witnessed)> {
    Ok((matching_number(c)?, restricted_matching_number(c)?, induced_matching_number(c)?))
}
