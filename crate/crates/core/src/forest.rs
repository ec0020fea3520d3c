//! Leaves, good leaves, good leaf orders and the intersection property.

use std::collections::VecDeque;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::set::VertexSet;

/// Outcome of a successful leaf test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Leaf {
    /// `F` is the only facet.
    OnlyFacet,
    /// A branch `G` with `H ∩ F ⊆ G ∩ F` for every other facet `H`.
    Branch(VertexSet),
}

/// Leaf test with non-strict containment. Returns the first branch found in
/// facet order.
pub fn is_leaf(c: &Complex, f: VertexSet) -> Result<Option<Leaf>> {
    c.require_facet(f)?;
    Ok(leaf_among(c.facets(), f))
}

fn leaf_among(fs: &[VertexSet], f: VertexSet) -> Option<Leaf> {
    if fs.iter().all(|&h| h == f) {
        return Some(Leaf::OnlyFacet);
    }
    fs.iter()
        .copied()
        .filter(|&g| g != f)
        .find(|&g| {
            let gf = g.intersection(f);
            fs.iter().all(|&h| h == f || h.intersection(f).is_subset(gf))
        })
        .map(Leaf::Branch)
}

/// The intersections `F ∩ H` over the other facets form a chain under inclusion.
fn intersections_form_chain(fs: &[VertexSet], f: VertexSet) -> bool {
    let mut ints: Vec<VertexSet> = fs.iter().filter(|&&h| h != f).map(|&h| h.intersection(f)).collect();
    ints.sort_by_key(|s| s.len());
    ints.windows(2).all(|w| w[0].is_subset(w[1]))
}

/// `F` is a leaf of every subcomplex containing it, tested through the chain
/// characterization of good leaves.
pub fn is_good_leaf(c: &Complex, f: VertexSet) -> Result<bool> {
    c.require_facet(f)?;
    Ok(intersections_form_chain(c.facets(), f))
}

/// Literal good-leaf test: enumerates every subcomplex that contains `F`.
/// Exponential in the number of facets; used to cross-check [`is_good_leaf`].
pub fn is_good_leaf_literal(c: &Complex, f: VertexSet) -> Result<bool> {
    let fi = c.require_facet(f)?;
    let others: Vec<VertexSet> = c.facets().iter().enumerate().filter(|&(i, _)| i != fi).map(|(_, &g)| g).collect();
    if others.len() > 20 {
        return Err(Error::BudgetExceeded { what: "literal subcomplex enumeration (facets)", limit: 20 });
    }
    for mask in 0u32..(1 << others.len()) {
        let mut sub: Vec<VertexSet> = vec![f];
        sub.extend((0..others.len()).filter(|i| mask >> i & 1 == 1).map(|i| others[i]));
        if leaf_among(&sub, f).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Facet indices `F₁, …, F_r` such that each `F_i` (i ≥ 2) is a good leaf of
/// `⟨F₁, …, F_i⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodLeafOrder {
    pub order: Vec<usize>,
}

impl GoodLeafOrder {
    /// Checks the defining property directly.
    pub fn verify(&self, c: &Complex) -> bool {
        let mut sorted = self.order.clone();
        sorted.sort_unstable();
        if sorted != (0..c.num_facets()).collect::<Vec<_>>() {
            return false;
        }
        (1..self.order.len()).all(|i| {
            let prefix: Vec<VertexSet> = self.order[..=i].iter().map(|&k| c.facets()[k]).collect();
            intersections_form_chain(&prefix, c.facets()[self.order[i]])
        })
    }
}

/// Peels good leaves off until nothing is left. `None` means peeling stalled,
/// which happens exactly when the complex is not a forest.
pub fn good_leaf_order(c: &Complex) -> Option<GoodLeafOrder> {
    let mut remaining: Vec<usize> = (0..c.num_facets()).collect();
    let mut peeled: Vec<usize> = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let current: Vec<VertexSet> = remaining.iter().map(|&i| c.facets()[i]).collect();
        let pos = (0..remaining.len()).rev().find(|&p| intersections_form_chain(&current, current[p]))?;
        peeled.push(remaining.remove(pos));
    }
    peeled.reverse();
    Some(GoodLeafOrder { order: peeled })
}

pub fn is_forest(c: &Complex) -> bool {
    good_leaf_order(c).is_some()
}

/// Literal forest test: every nonempty subcomplex has a leaf.
pub fn is_forest_literal(c: &Complex) -> Result<bool> {
    let fs = c.facets();
    if fs.len() > 20 {
        return Err(Error::BudgetExceeded { what: "literal subcomplex enumeration (facets)", limit: 20 });
    }
    for mask in 1u32..(1 << fs.len()) {
        let sub: Vec<VertexSet> = (0..fs.len()).filter(|i| mask >> i & 1 == 1).map(|i| fs[i]).collect();
        if !sub.iter().any(|&f| leaf_among(&sub, f).is_some()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Connected components of the facet intersection graph.
pub fn is_connected(c: &Complex) -> bool {
    let fs = c.facets();
    if fs.is_empty() {
        return true;
    }
    let mut seen = vec![false; fs.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..fs.len() {
            if !seen[j] && !fs[i].is_disjoint(fs[j]) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn codim1_adjacency(c: &Complex) -> Result<Vec<Vec<usize>>> {
    if !c.is_pure() {
        return Err(Error::NotPure);
    }
    let fs = c.facets();
    let d = fs.first().map_or(0, |f| f.len());
    let adj: Vec<Vec<usize>> = (0..fs.len())
        .map(|i| (0..fs.len()).filter(|&j| j != i && fs[i].intersection(fs[j]).len() + 1 == d).collect())
        .collect();
    Ok(adj)
}

fn bfs(adj: &[Vec<usize>], from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[from] = Some(0);
    let mut q = VecDeque::from([from]);
    while let Some(i) = q.pop_front() {
        let di = dist[i].unwrap();
        for &j in &adj[i] {
            if dist[j].is_none() {
                dist[j] = Some(di + 1);
                q.push_back(j);
            }
        }
    }
    dist
}

fn validated_adjacency(c: &Complex) -> Result<Vec<Vec<usize>>> {
    let adj = codim1_adjacency(c)?;
    if !adj.is_empty() && bfs(&adj, 0).iter().any(Option::is_none) {
        return Err(Error::NotCodim1Connected);
    }
    Ok(adj)
}

/// Length of the shortest proper chain from `F` to `G` in a pure complex
/// connected in codimension 1.
pub fn proper_chain_distance(c: &Complex, f: VertexSet, g: VertexSet) -> Result<usize> {
    let adj = validated_adjacency(c)?;
    let fi = c.require_facet(f)?;
    let gi = c.require_facet(g)?;
    Ok(bfs(&adj, fi)[gi].expect("connected"))
}

/// For every pair of facets of size `d`: `|F ∩ G| = d - k` forces distance `k`.
pub fn has_intersection_property(c: &Complex) -> Result<bool> {
    let adj = validated_adjacency(c)?;
    let fs = c.facets();
    let d = fs.first().map_or(0, |f| f.len());
    for i in 0..fs.len() {
        let dist = bfs(&adj, i);
        for j in i + 1..fs.len() {
            let k = d - fs[i].intersection(fs[j]).len();
            if dist[j] != Some(k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::make_complex;

    fn cx(lists: &[&[u32]]) -> Complex {
        let v: Vec<Vec<String>> = lists.iter().map(|f| f.iter().map(|x| x.to_string()).collect()).collect();
        make_complex(&v).unwrap()
    }

    fn path(n: u32, t: u32) -> Complex {
        let v: Vec<Vec<String>> = (1..=n - t + 1).map(|i| (i..i + t).map(|x| x.to_string()).collect()).collect();
        make_complex(&v).unwrap()
    }

    fn ex11() -> Complex {
        cx(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7], &[6, 7, 8], &[8, 9, 10], &[9, 10, 11], &[3, 11, 12]])
    }

    #[test]
    fn leaf_examples() {
        let single = cx(&[&[1, 2, 3]]);
        assert_eq!(is_leaf(&single, single.facets()[0]).unwrap(), Some(Leaf::OnlyFacet));
        let g = path(7, 3);
        assert_eq!(is_leaf(&g, g.facets()[0]).unwrap(), Some(Leaf::Branch(g.facets()[1])));
        let ex = ex11();
        let sub = ex.subcomplex(&[1, 2, 3, 4, 5, 6]);
        for &f in sub.facets() {
            assert_eq!(is_leaf(&sub, f).unwrap(), None, "{}", sub.show(f));
        }
    }

    #[test]
    fn good_leaf_examples() {
        let g = path(7, 3);
        assert!(is_good_leaf(&g, g.facets()[0]).unwrap());
        assert!(!is_good_leaf(&g, g.facets()[2]).unwrap());
        let two = cx(&[&[1, 2], &[2, 3]]);
        assert!(is_good_leaf(&two, two.facets()[0]).unwrap());
        for &f in g.facets() {
            assert_eq!(is_good_leaf(&g, f).unwrap(), is_good_leaf_literal(&g, f).unwrap());
        }
    }

    #[test]
    fn good_leaf_orders() {
        let g = path(9, 3);
        let o = good_leaf_order(&g).unwrap();
        assert!(o.verify(&g));
        // F_{n-t+1}, ..., F_1 as printed for path complexes.
        let printed = GoodLeafOrder { order: (0..g.num_facets()).rev().collect() };
        assert!(printed.verify(&g));
        assert!(good_leaf_order(&ex11()).is_none());
        let disjoint = cx(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert!(GoodLeafOrder { order: vec![2, 0, 1] }.verify(&disjoint));
    }

    #[test]
    fn forest_examples() {
        assert!(is_forest(&path(9, 3)));
        assert!(!is_forest(&ex11()));
        assert!(!is_forest_literal(&ex11()).unwrap());
        assert!(is_forest(&cx(&[&[1, 2, 3]])));
        let triangle = cx(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(!is_forest(&triangle));
        assert!(!is_forest_literal(&triangle).unwrap());
    }

    #[test]
    fn distances() {
        let g = path(9, 3);
        let f = g.facets();
        assert_eq!(proper_chain_distance(&g, f[0], f[0]).unwrap(), 0);
        for i in 0..f.len() - 1 {
            assert_eq!(proper_chain_distance(&g, f[i], f[i + 1]).unwrap(), 1);
        }
        assert_eq!(proper_chain_distance(&g, f[0], f[3]).unwrap(), 3);
        let nonpure = cx(&[&[1, 2], &[2, 3, 4]]);
        assert_eq!(proper_chain_distance(&nonpure, nonpure.facets()[0], nonpure.facets()[1]), Err(Error::NotPure));
        let apart = cx(&[&[1, 2], &[3, 4]]);
        assert_eq!(has_intersection_property(&apart), Err(Error::NotCodim1Connected));
    }

    #[test]
    fn intersection_property_on_paths() {
        for t in 2..=5 {
            assert!(has_intersection_property(&path(2 * t, t)).unwrap(), "t={t}");
            assert!(!has_intersection_property(&path(2 * t + 2, t)).unwrap(), "t={t}");
        }
    }
}
