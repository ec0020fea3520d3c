//! lcm-lattices, multigraded Betti numbers, regularity and the linearity
//! predicates (linear resolution, linearly related, linear quotients).

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{order_complex, reduced_homology_dim, reduced_homology_dims_of};
use crate::ideal::{Ideal, Monomial};
use crate::limits::{Limits, NodeCounter};
use crate::linalg::Field;
use crate::set::{maximalize, VertexSet};

/// The lcm-lattice of a monomial ideal, ordered by divisibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    /// Sorted by degree then bits; the first element is the bottom `1`.
    elements: Vec<Monomial>,
}

impl LcmLattice {
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.elements.binary_search_by_key(&(m.len(), m.bits()), |e| (e.len(), e.bits())).is_ok()
    }

    /// Elements strictly between `1` and `m`.
    pub fn open_interval(&self, m: Monomial) -> Vec<Monomial> {
        self.elements.iter().copied().filter(|&e| !e.is_empty() && e != m && e.is_subset(m)).collect()
    }
}

pub fn lcm_lattice(ideal: &Ideal) -> Result<LcmLattice> {
    lcm_lattice_with(ideal, Limits::global())
}

/// Closes the generators under lcm by repeatedly joining with generators.
pub fn lcm_lattice_with(ideal: &Ideal, limits: &Limits) -> Result<LcmLattice> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = ideal.generators();
    let mut seen: HashSet<Monomial> = gens.iter().copied().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while let Some(e) = frontier.pop() {
        for &g in gens {
            let j = e.union(g);
            if seen.insert(j) {
                if seen.len() + 1 > limits.lattice {
                    return Err(Error::BudgetExceeded { what: "lcm-lattice elements", limit: limits.lattice as u64 });
                }
                frontier.push(j);
            }
        }
    }
    seen.insert(VertexSet::EMPTY);
    let mut elements: Vec<Monomial> = seen.into_iter().collect();
    elements.sort_by_key(|e| (e.len(), e.bits()));
    Ok(LcmLattice { elements })
}

/// `β_{i,m}` as the reduced homology `H̃_{i−1}` of the order complex of the
/// open interval `(1, m)` in the lcm-lattice.
pub fn betti_gpw(ideal: &Ideal, i: usize, m: Monomial, field: Field) -> Result<usize> {
    let limits = Limits::global();
    let lattice = lcm_lattice_with(ideal, limits)?;
    betti_gpw_in(&lattice, i, m, field, limits)
}

pub fn betti_gpw_in(lattice: &LcmLattice, i: usize, m: Monomial, field: Field, limits: &Limits) -> Result<usize> {
    if m.is_empty() || !lattice.contains(m) {
        return Ok(0);
    }
    let inner = lattice.open_interval(m);
    let chains = order_complex(inner.len(), |a, b| inner[a] != inner[b] && inner[a].is_subset(inner[b]), limits)?;
    reduced_homology_dim(&chains, i as isize - 1, field, limits)
}

/// Facets `{W ∖ G : G ∈ G(I), G ⊆ W}`. `None` when no generator divides `x_W`,
/// in which case the complex has no faces at all and every Betti number at `W` vanishes.
fn upper_koszul_facets(ideal: &Ideal, w: VertexSet) -> Option<Vec<VertexSet>> {
    let facets: Vec<VertexSet> =
        ideal.generators().iter().filter(|g| g.is_subset(w)).map(|&g| w.difference(g)).collect();
    (!facets.is_empty()).then(|| maximalize(facets))
}

/// `β_{i,m}` for squarefree `m` through the complex of complements
/// `{supp(m) ∖ G : G ∈ G(I), G | m}`, whose `H̃_{i−1}` is `β_{i,m}`.
pub fn betti_koszul(ideal: &Ideal, i: usize, m: Monomial, field: Field) -> Result<usize> {
    betti_koszul_with(ideal, i, m, field, Limits::global())
}

pub fn betti_koszul_with(ideal: &Ideal, i: usize, m: Monomial, field: Field, limits: &Limits) -> Result<usize> {
    match upper_koszul_facets(ideal, m) {
        None => Ok(0),
        Some(facets) => reduced_homology_dim(&facets, i as isize - 1, field, limits),
    }
}

/// `β_{i,d}` as the sum over vertex sets `W` of size `d` that are the vertex
/// set of their induced subcomplex of `H̃_{i−1}` of the complement of that
/// subcomplex in `W`. Requires an equigenerated ideal.
pub fn betti_hochster(ideal: &Ideal, i: usize, d: usize, field: Field) -> Result<usize> {
    betti_hochster_with(ideal, i, d, field, Limits::global())
}

pub fn betti_hochster_with(ideal: &Ideal, i: usize, d: usize, field: Field, limits: &Limits) -> Result<usize> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if ideal.equigenerated_degree().is_none() {
        return Err(Error::NotEquigenerated);
    }
    let support = ideal.support();
    let mut counter = NodeCounter::new(limits.nodes);
    let mut total = 0;
    for w in support.subsets().filter(|w| w.len() == d) {
        counter.tick()?;
        let induced: Vec<VertexSet> = ideal.generators().iter().copied().filter(|g| g.is_subset(w)).collect();
        if induced.iter().fold(VertexSet::EMPTY, |a, &g| a.union(g)) != w {
            continue;
        }
        let complement: Vec<VertexSet> = induced.iter().map(|&g| w.difference(g)).collect();
        total += reduced_homology_dim(&complement, i as isize - 1, field, limits)?;
    }
    Ok(total)
}

/// Graded Betti numbers `β_{i,j}` of an ideal (not of its quotient ring).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub field: Field,
    /// Nonzero entries keyed by `(i, j)`.
    pub entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    i: usize,
    j: usize,
    value: usize,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    field: String,
    entries: Vec<Entry>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `max {j − i : β_{i,j} ≠ 0}`.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Total Betti number `β_i`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((a, _), _)| *a == i).map(|(_, v)| v).sum()
    }

    /// The `i = 0` row as degree → count.
    pub fn generator_row(&self) -> BTreeMap<usize, usize> {
        self.entries.iter().filter(|((i, _), _)| *i == 0).map(|(&(_, j), &v)| (j, v)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let t = TableJson {
            field: self.field.to_string(),
            entries: self.entries.iter().map(|(&(i, j), &value)| Entry { i, j, value }).collect(),
        };
        serde_json::to_value(t).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<BettiTable> {
        let t: TableJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(BettiTable {
            field: t.field.parse()?,
            entries: t.entries.into_iter().filter(|e| e.value > 0).map(|e| ((e.i, e.j), e.value)).collect(),
        })
    }
}

/// Grid with rows `j − i` and columns `i`, zeros shown as `.`.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(pd) = self.projective_dimension() else {
            return writeln!(f, "(zero ideal)");
        };
        let rows: Vec<usize> = {
            let mut r: Vec<usize> = self.entries.keys().map(|&(i, j)| j - i).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut grid: Vec<Vec<String>> = Vec::new();
        grid.push(std::iter::once(String::new()).chain((0..=pd).map(|i| i.to_string())).collect());
        grid.push(std::iter::once("total:".to_string()).chain((0..=pd).map(|i| cell(self.total(i)))).collect());
        for &r in &rows {
            grid.push(std::iter::once(format!("{r}:")).chain((0..=pd).map(|i| cell(self.get(i, i + r)))).collect());
        }
        let head = grid.iter().map(|r| r[0].len()).max().unwrap_or(0);
        let width = grid.iter().flat_map(|r| r[1..].iter()).map(String::len).max().unwrap_or(1);
        for row in grid {
            let mut line = format!("{:>head$}", row[0]);
            for c in &row[1..] {
                line.push_str(&format!(" {c:>width$}"));
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Which part of the table to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DegreeFilter {
    /// Only internal degrees `j` in this inclusive range.
    pub degrees: Option<(usize, usize)>,
}

impl DegreeFilter {
    pub fn only(j: usize) -> DegreeFilter {
        DegreeFilter { degrees: Some((j, j)) }
    }

    fn admits(&self, j: usize) -> bool {
        self.degrees.is_none_or(|(lo, hi)| lo <= j && j <= hi)
    }
}

pub fn betti_table(ideal: &Ideal, field: Field) -> Result<BettiTable> {
    betti_table_with(ideal, field, DegreeFilter::default(), Limits::global())
}

/// Sums `β_{i,m}` over the lcm-lattice. Only lattice elements can carry
/// nonzero multigraded Betti numbers.
pub fn betti_table_with(ideal: &Ideal, field: Field, filter: DegreeFilter, limits: &Limits) -> Result<BettiTable> {
    let lattice = lcm_lattice_with(ideal, limits)?;
    let per_element: Vec<Vec<(usize, usize, usize)>> = lattice
        .elements()
        .par_iter()
        .filter(|m| !m.is_empty() && filter.admits(m.len()))
        .map(|&m| {
            let facets = upper_koszul_facets(ideal, m).expect("lattice elements are divisible by a generator");
            let dims = reduced_homology_dims_of(&facets, field, limits)?;
            Ok(dims.into_iter().enumerate().filter(|&(_, h)| h > 0).map(|(i, h)| (i, m.len(), h)).collect())
        })
        .collect::<Result<_>>()?;
    let mut entries = BTreeMap::new();
    for (i, j, h) in per_element.into_iter().flatten() {
        *entries.entry((i, j)).or_insert(0) += h;
    }
    Ok(BettiTable { field, entries })
}

/// `reg(I)`; subtract one for `reg(R/I)`.
pub fn regularity(ideal: &Ideal, field: Field) -> Result<usize> {
    let t = betti_table(ideal, field)?;
    t.regularity().ok_or(Error::ZeroIdeal)
}

pub fn has_linear_resolution(ideal: &Ideal, field: Field) -> Result<bool> {
    let d = ideal.equigenerated_degree().ok_or(if ideal.is_zero() { Error::ZeroIdeal } else { Error::NotEquigenerated })?;
    Ok(betti_table(ideal, field)?.entries.keys().all(|&(i, j)| j == i + d))
}

/// Generators joined when their lcm has degree one more than theirs.
#[derive(Debug, Clone)]
pub struct SyzygyGapGraph {
    pub degree: usize,
    pub vertices: Vec<Monomial>,
    pub adjacency: Vec<Vec<usize>>,
}

impl SyzygyGapGraph {
    pub fn new(ideal: &Ideal) -> Result<SyzygyGapGraph> {
        let d = ideal.equigenerated_degree().ok_or(if ideal.is_zero() { Error::ZeroIdeal } else { Error::NotEquigenerated })?;
        let vertices = ideal.generators().to_vec();
        let adjacency = (0..vertices.len())
            .map(|a| (0..vertices.len()).filter(|&b| b != a && vertices[a].union(vertices[b]).len() == d + 1).collect())
            .collect();
        Ok(SyzygyGapGraph { degree: d, vertices, adjacency })
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Whether `a` reaches `b` using only vertices that divide `lcm(a, b)`.
    pub fn connected_below_lcm(&self, a: usize, b: usize) -> bool {
        let l = self.vertices[a].union(self.vertices[b]);
        let mut seen = vec![false; self.vertices.len()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                return true;
            }
            for &y in &self.adjacency[x] {
                if !seen[y] && self.vertices[y].is_subset(l) {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }
}

/// Result of the linearly-related test. `witness` is the first pair of
/// generators not connected below their lcm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRelation {
    pub related: bool,
    pub witness: Option<(Monomial, Monomial)>,
}

/// Combinatorial test for linear first syzygies of an equigenerated ideal.
pub fn is_linearly_related(ideal: &Ideal) -> Result<LinearRelation> {
    let g = SyzygyGapGraph::new(ideal)?;
    for a in 0..g.vertices.len() {
        for b in a + 1..g.vertices.len() {
            if !g.connected_below_lcm(a, b) {
                return Ok(LinearRelation { related: false, witness: Some((g.vertices[a], g.vertices[b])) });
            }
        }
    }
    Ok(LinearRelation { related: true, witness: None })
}

/// Checks that `(g_1, …, g_{i−1}) : g_i` is generated by variables for every `i`.
/// For squarefree monomials `(g_j) : (g_i) = (g_j ∖ g_i)`, so it suffices that
/// every `g_j ∖ g_i` meets the set of single variables arising this way.
pub fn verify_linear_quotient_order(order: &[Monomial]) -> bool {
    (1..order.len()).all(|i| admissible(&order[..i], order[i]))
}

fn admissible(prefix: &[Monomial], g: Monomial) -> bool {
    let linear = prefix.iter().map(|p| p.difference(g)).filter(|q| q.len() == 1).fold(VertexSet::EMPTY, |a, q| a.union(q));
    prefix.iter().all(|p| !p.difference(g).is_disjoint(linear))
}

pub fn has_linear_quotients(ideal: &Ideal, order: Option<&[Monomial]>) -> Result<Option<Vec<Monomial>>> {
    match order {
        Some(o) => {
            check_permutation(ideal, o)?;
            Ok(verify_linear_quotient_order(o).then(|| o.to_vec()))
        }
        None => find_linear_quotient_order(ideal, &[], Limits::global()),
    }
}

fn check_permutation(ideal: &Ideal, order: &[Monomial]) -> Result<()> {
    let mut a = order.to_vec();
    a.sort_by_key(|m| (m.len(), m.bits()));
    if a != ideal.generators() {
        return Err(Error::BadParameters("order is not a permutation of the minimal generators".into()));
    }
    Ok(())
}

/// Tries each hint, then degree-lexicographic orders, then a backtracking
/// search over admissible next generators. `Ok(None)` means the search was
/// exhaustive and no order exists.
pub fn find_linear_quotient_order(ideal: &Ideal, hints: &[Vec<Monomial>], limits: &Limits) -> Result<Option<Vec<Monomial>>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    for h in hints {
        check_permutation(ideal, h)?;
        if verify_linear_quotient_order(h) {
            return Ok(Some(h.clone()));
        }
    }
    let gens = ideal.generators();
    let lex: Vec<Monomial> = gens.to_vec();
    if verify_linear_quotient_order(&lex) {
        return Ok(Some(lex));
    }
    let mut revlex = gens.to_vec();
    revlex.sort_by_key(|m| (m.len(), std::cmp::Reverse(m.bits())));
    if verify_linear_quotient_order(&revlex) {
        return Ok(Some(revlex));
    }
    let mut search = LqSearch {
        gens,
        used: vec![false; gens.len()],
        order: Vec::with_capacity(gens.len()),
        dead: HashSet::new(),
        counter: NodeCounter::new(limits.nodes),
    };
    Ok(search.run()?.then(|| search.order.iter().map(|&k| gens[k]).collect()))
}

struct LqSearch<'a> {
    gens: &'a [Monomial],
    used: Vec<bool>,
    order: Vec<usize>,
    /// Prefix sets already known not to extend. Admissibility of the next
    /// generator depends only on the set of earlier ones.
    dead: HashSet<Vec<bool>>,
    counter: NodeCounter,
}

impl LqSearch<'_> {
    fn run(&mut self) -> Result<bool> {
        self.counter.tick()?;
        if self.order.len() == self.gens.len() {
            return Ok(true);
        }
        if self.dead.contains(&self.used) {
            return Ok(false);
        }
        let prefix: Vec<Monomial> = self.order.iter().map(|&k| self.gens[k]).collect();
        for k in 0..self.gens.len() {
            if self.used[k] || !admissible(&prefix, self.gens[k]) {
                continue;
            }
            self.used[k] = true;
            self.order.push(k);
            if self.run()? {
                return Ok(true);
            }
            self.order.pop();
            self.used[k] = false;
        }
        self.dead.insert(self.used.clone());
        Ok(false)
    }
}

/// Generators of `I^{[k]}` listed by the lexicographic order of the sorted
/// facet-index tuples of their matchings, for a given facet order. Each
/// generator takes the position of its first matching.
pub fn matching_lex_order(ideal: &Ideal, facet_order: &[VertexSet], k: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    let mut seen: HashMap<Monomial, ()> = HashMap::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(
        fs: &[VertexSet],
        k: usize,
        start: usize,
        used: VertexSet,
        stack: &mut Vec<usize>,
        emit: &mut dyn FnMut(VertexSet),
    ) {
        if stack.len() == k {
            emit(used);
            return;
        }
        for i in start..fs.len() {
            if fs[i].is_disjoint(used) {
                stack.push(i);
                rec(fs, k, i + 1, used.union(fs[i]), stack, emit);
                stack.pop();
            }
        }
    }
    rec(facet_order, k, 0, VertexSet::EMPTY, &mut stack, &mut |m| {
        if ideal.generators().binary_search_by_key(&(m.len(), m.bits()), |g| (g.len(), g.bits())).is_ok()
            && seen.insert(m, ()).is_none()
        {
            out.push(m);
        }
    });
    out
}
