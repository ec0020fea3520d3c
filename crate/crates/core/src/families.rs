//! Path, rooted-tree and broom t-path complexes, closed forms for paths, and
//! seeded generators of random forests, complexes and ideals.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::complex::{label_lists, make_complex, Complex};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, Monomial};
use crate::matching::for_each_matching;
use crate::set::{minimalize, VertexSet, MAX_UNIVERSE};

/// `Γ_{n,t}`: facets `{i, …, i+t−1}` for `i = 1, …, n−t+1` on vertices `1..=n`.
pub fn path_complex(n: usize, t: usize) -> Result<Complex> {
    if t < 2 || t > n {
        return Err(Error::BadParameters(format!("path complex needs 2 <= t <= n, got n={n}, t={t}")));
    }
    let facets: Vec<Vec<String>> = (1..=n - t + 1).map(|i| (i..i + t).map(|v| v.to_string()).collect()).collect();
    make_complex(&facets)
}

/// A tree with edges directed away from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    labels: Vec<String>,
    parent: Vec<Option<usize>>,
    root: usize,
}

impl RootedTree {
    /// Builds a tree from `(parent, child)` label pairs.
    pub fn from_edges<S: AsRef<str>>(root: &str, edges: &[(S, S)]) -> Result<RootedTree> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut intern = |l: &str, labels: &mut Vec<String>| -> usize {
            *index.entry(l.to_string()).or_insert_with(|| {
                labels.push(l.to_string());
                labels.len() - 1
            })
        };
        let root_id = intern(root.trim(), &mut labels);
        let mut parent_of: Vec<(usize, usize)> = Vec::new();
        for (p, c) in edges {
            let p = intern(p.as_ref().trim(), &mut labels);
            let c = intern(c.as_ref().trim(), &mut labels);
            parent_of.push((c, p));
        }
        let mut parent = vec![None; labels.len()];
        for (c, p) in parent_of {
            if c == root_id {
                return Err(Error::BadParameters(format!("root {} has a parent", labels[c])));
            }
            if parent[c].replace(p).is_some() {
                return Err(Error::BadParameters(format!("{} has two parents", labels[c])));
            }
        }
        let tree = RootedTree { labels, parent, root: root_id };
        for v in 0..tree.labels.len() {
            if v != root_id && tree.parent[v].is_none() {
                return Err(Error::BadParameters(format!("{} is not reachable from the root", tree.labels[v])));
            }
            if tree.depth_checked(v).is_none() {
                return Err(Error::BadParameters(format!("cycle through {}", tree.labels[v])));
            }
        }
        Ok(tree)
    }

    /// Reads `{"root": r, "edges": [[parent, child], ...]}`.
    pub fn from_json(v: &Value) -> Result<RootedTree> {
        let root = match v.get("root") {
            Some(Value::String(s)) => s.clone(),
            Some(Value::Number(n)) => n.to_string(),
            _ => return Err(Error::Parse("expected a `root` label".into())),
        };
        let edges = label_lists(v, "edges")?;
        let pairs = edges
            .into_iter()
            .map(|e| match <[String; 2]>::try_from(e) {
                Ok([p, c]) => Ok((p, c)),
                Err(_) => Err(Error::Parse("each edge must be a [parent, child] pair".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        RootedTree::from_edges(&root, &pairs)
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = (0..self.labels.len())
            .filter_map(|c| self.parent[c].map(|p| serde_json::json!([self.labels[p], self.labels[c]])))
            .collect();
        serde_json::json!({ "root": self.labels[self.root], "edges": edges })
    }

    fn depth_checked(&self, mut v: usize) -> Option<usize> {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            d += 1;
            if d > self.labels.len() {
                return None;
            }
            v = p;
        }
        (v == self.root).then_some(d)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn root(&self) -> &str {
        &self.labels[self.root]
    }

    /// Vertex sets of the directed paths on `t` vertices, one per bottom endpoint.
    pub fn t_paths(&self, t: usize) -> Vec<Vec<&str>> {
        let mut out = Vec::new();
        for v in 0..self.labels.len() {
            let mut path = vec![v];
            while path.len() < t {
                match self.parent[*path.last().unwrap()] {
                    Some(p) => path.push(p),
                    None => break,
                }
            }
            if path.len() == t && t > 0 {
                path.reverse();
                out.push(path.into_iter().map(|i| self.labels[i].as_str()).collect());
            }
        }
        out
    }
}

/// `Γ_t`: the complex of directed t-paths. Empty (over the tree's vertices)
/// when the tree has no such path.
pub fn rooted_tree_path_complex(tree: &RootedTree, t: usize) -> Result<Complex> {
    if t < 2 {
        return Err(Error::BadParameters(format!("t-paths need t >= 2, got {t}")));
    }
    let paths = tree.t_paths(t);
    if paths.is_empty() {
        let mut labels = tree.labels.clone();
        labels.sort();
        return Complex::from_labelled_sets(labels, Vec::new());
    }
    make_complex(&paths)
}

/// Height `h` and, for each `1 ≤ i ≤ h`, the number `l_i` of leaves hanging off
/// the handle vertex `x_{i−1,0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BroomSpec {
    pub leaf_counts: Vec<usize>,
}

impl BroomSpec {
    pub fn new(leaf_counts: Vec<usize>) -> Result<BroomSpec> {
        if leaf_counts.is_empty() {
            return Err(Error::BadParameters("a broom needs height >= 1".into()));
        }
        Ok(BroomSpec { leaf_counts })
    }

    pub fn height(&self) -> usize {
        self.leaf_counts.len()
    }
}

fn broom_label(i: usize, j: usize) -> String {
    format!("x{i},{j}")
}

fn parse_broom_label(l: &str) -> Option<(usize, usize)> {
    let (i, j) = l.strip_prefix('x')?.split_once(',')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

/// Handle `x_{0,0} → … → x_{h,0}` with leaves `x_{i,1}, …, x_{i,l_i}` below `x_{i−1,0}`.
pub fn broom_tree(spec: &BroomSpec) -> RootedTree {
    let mut edges = Vec::new();
    for i in 1..=spec.height() {
        edges.push((broom_label(i - 1, 0), broom_label(i, 0)));
        for j in 1..=spec.leaf_counts[i - 1] {
            edges.push((broom_label(i - 1, 0), broom_label(i, j)));
        }
    }
    RootedTree::from_edges(&broom_label(0, 0), &edges).expect("brooms are trees")
}

/// The coordinates `(i, j)` of a broom facet `{x_{i,0}, …, x_{i+t−2,0}, x_{i+t−1,j}}`.
fn broom_coordinates(c: &Complex, f: VertexSet) -> Result<(usize, usize)> {
    let bad = || Error::NotABroomComplex(c.show(f));
    let mut coords: Vec<(usize, usize)> =
        f.iter().map(|v| parse_broom_label(c.label(v)).ok_or_else(bad)).collect::<Result<_>>()?;
    coords.sort_unstable();
    let (i, _) = coords[0];
    let t = coords.len();
    let (last_i, j) = coords[t - 1];
    let handle_ok = coords[..t - 1].iter().enumerate().all(|(k, &(a, b))| a == i + k && b == 0);
    if !handle_ok || last_i != i + t - 1 {
        return Err(bad());
    }
    Ok((i, j))
}

/// Sort key realizing `F_{i,j} < F_{k,m}` iff `i < k`, or `i = k` and `m < j`.
fn broom_key(c: &Complex, f: VertexSet) -> Result<(usize, std::cmp::Reverse<usize>)> {
    broom_coordinates(c, f).map(|(i, j)| (i, std::cmp::Reverse(j)))
}

/// Facets of a broom t-path complex in ascending order.
pub fn broom_facet_order(c: &Complex) -> Result<Vec<VertexSet>> {
    let mut keyed: Vec<_> = c.facets().iter().map(|&f| broom_key(c, f).map(|k| (k, f))).collect::<Result<_>>()?;
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, f)| f).collect())
}

/// Generators of `I(Γ_t)^{[k]}` in descending order: matchings are compared at
/// the largest position where their ascending facet lists differ.
pub fn broom_generator_order(c: &Complex, k: usize) -> Result<Vec<Monomial>> {
    let asc = broom_facet_order(c)?;
    let rank: HashMap<VertexSet, usize> = asc.iter().enumerate().map(|(r, &f)| (f, r)).collect();
    let mut keyed: Vec<(Vec<usize>, Monomial)> = Vec::new();
    for_each_matching(c, k, |m| {
        let mut ranks: Vec<usize> = m.iter().map(|&i| rank[&c.facets()[i]]).collect();
        ranks.sort_unstable();
        ranks.reverse();
        let u = m.iter().fold(VertexSet::EMPTY, |a, &i| a.union(c.facets()[i]));
        keyed.push((ranks, u));
    });
    keyed.sort_by(|a, b| b.0.cmp(&a.0));
    let mut seen = std::collections::HashSet::new();
    Ok(keyed.into_iter().map(|(_, u)| u).filter(|u| seen.insert(*u)).collect())
}

/// Matching invariants of `Γ_{n,t}` from their closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosedInvariants {
    pub nu: usize,
    pub nu0: usize,
    pub nu1: usize,
    /// The `ν₀` formula holds only for `n ≥ t + 1`; at `n = t` it gives 0
    /// although the single facet is a restricted matching.
    pub nu0_valid: bool,
}

pub fn closed_invariants(n: usize, t: usize) -> Result<ClosedInvariants> {
    if t < 2 || t > n {
        return Err(Error::BadParameters(format!("need 2 <= t <= n, got n={n}, t={t}")));
    }
    Ok(ClosedInvariants { nu: n / t, nu0: (n - 1) / t, nu1: (n - t + 1).div_ceil(t + 1), nu0_valid: n > t })
}

/// `reg(R/I_{n,t}^{[k+1]}) = kt + (t−1)·ν₁(Γ_{n−kt,t})`.
pub fn closed_regularity(n: usize, t: usize, k: usize) -> Result<usize> {
    if t < 2 || t > n || k + 1 > n / t {
        return Err(Error::BadParameters(format!("need 1 <= k+1 <= n/t, got n={n}, t={t}, k={k}")));
    }
    let rest = n - k * t;
    Ok(k * t + (t - 1) * (rest + 1 - t).div_ceil(t + 1))
}

/// Largest `n` per `t` for exhaustive checks of the path closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCaps(pub BTreeMap<usize, usize>);

impl Default for PathCaps {
    fn default() -> Self {
        PathCaps(BTreeMap::from([(2, 18), (3, 21), (4, 24), (5, 25)]))
    }
}

impl PathCaps {
    /// Defaults, overridden by `SFP_PATH_CAPS="2:18,3:21"` when set.
    pub fn from_env() -> PathCaps {
        let mut caps = PathCaps::default();
        if let Ok(s) = std::env::var("SFP_PATH_CAPS") {
            for part in s.split(',') {
                if let Some((t, n)) = part.split_once(':') {
                    if let (Ok(t), Ok(n)) = (t.trim().parse(), n.trim().parse()) {
                        caps.0.insert(t, n);
                    }
                }
            }
        }
        caps
    }
}

/// Parses `path:n=14,t=3`, `broom:h=5,l=0.1.0.0.2,t=3` or `tree:@file.json,t=3`.
pub fn parse_generator(spec: &str) -> Result<Complex> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::Parse(format!("bad generator `{spec}`")))?;
    let mut file = None;
    let mut params: HashMap<&str, &str> = HashMap::new();
    for part in rest.split(',') {
        let part = part.trim();
        if let Some(f) = part.strip_prefix('@') {
            file = Some(f);
        } else if let Some((k, v)) = part.split_once('=') {
            params.insert(k.trim(), v.trim());
        } else if !part.is_empty() {
            return Err(Error::Parse(format!("bad parameter `{part}` in `{spec}`")));
        }
    }
    let num = |k: &str| -> Result<usize> {
        params
            .get(k)
            .ok_or_else(|| Error::Parse(format!("missing `{k}` in `{spec}`")))?
            .parse()
            .map_err(|_| Error::Parse(format!("`{k}` must be a number in `{spec}`")))
    };
    match kind.trim() {
        "path" => path_complex(num("n")?, num("t")?),
        "broom" => {
            let h = num("h")?;
            let leaves: Vec<usize> = match params.get("l") {
                Some(l) => l
                    .split('.')
                    .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad leaf counts `{l}`"))))
                    .collect::<Result<_>>()?,
                None => vec![0; h],
            };
            if leaves.len() != h {
                return Err(Error::BadParameters(format!("broom of height {h} needs {h} leaf counts")));
            }
            rooted_tree_path_complex(&broom_tree(&BroomSpec::new(leaves)?), num("t")?)
        }
        "tree" => {
            let f = file.ok_or_else(|| Error::Parse(format!("missing `@file` in `{spec}`")))?;
            let text = std::fs::read_to_string(Path::new(f)).map_err(|e| Error::Io(format!("{f}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            rooted_tree_path_complex(&RootedTree::from_json(&v)?, num("t")?)
        }
        other => Err(Error::Parse(format!("unknown generator kind `{other}`"))),
    }
}

/// Shape of fuzzed forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestParams {
    pub max_facets: usize,
    /// Facet sizes are drawn from `min_size..=max_size`.
    pub min_size: usize,
    pub max_size: usize,
    /// All facets of size `max_size`.
    pub pure: bool,
    /// Each new facet meets an existing one, so the result is a tree.
    pub connected: bool,
    /// Each new facet shares all but one vertex with its branch (pure trees
    /// connected in codimension one).
    pub codim_one: bool,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams { max_facets: 8, min_size: 2, max_size: 4, pure: false, connected: false, codim_one: false }
    }
}

fn intersections_chain(facets: &[VertexSet], s: VertexSet) -> bool {
    let mut ints: Vec<VertexSet> = facets.iter().map(|&h| h.intersection(s)).collect();
    ints.sort_by_key(|x| x.len());
    ints.windows(2).all(|w| w[0].is_subset(w[1]))
}

/// A random simplicial forest built by attaching good leaves.
///
/// Each new facet is `S ∪ N` with `N` fresh vertices and `S` a proper subset
/// of an existing facet chosen so that `{S ∩ H}` is a chain. The new facet is
/// then a good leaf, so the result has a good leaf order by construction.
pub fn fuzz_forest(seed: u64, p: &ForestParams) -> Complex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = if p.pure { p.max_size } else { p.min_size.max(1) };
    let hi = p.max_size.max(lo);
    let mut facets: Vec<VertexSet> = Vec::new();
    let mut next_vertex = 0usize;
    let target = rng.gen_range(1..=p.max_facets.max(1));
    let fresh = |k: usize, next: &mut usize| -> Option<VertexSet> {
        (*next + k <= MAX_UNIVERSE).then(|| {
            let s = VertexSet::range(*next, *next + k);
            *next += k;
            s
        })
    };
    let size = rng.gen_range(lo..=hi);
    facets.push(fresh(size, &mut next_vertex).expect("first facet fits"));
    while facets.len() < target {
        let size = rng.gen_range(lo..=hi);
        let g = *facets.choose(&mut rng).unwrap();
        let s = if p.codim_one {
            let mut vs = g.to_vec();
            vs.shuffle(&mut rng);
            match vs.iter().map(|&v| g.difference(VertexSet::singleton(v))).find(|&s| intersections_chain(&facets, s)) {
                Some(s) => s,
                None => continue,
            }
        } else {
            let attach = p.connected || rng.gen_bool(0.8);
            let max_shared = (g.len() - 1).min(size - 1);
            let want = if attach && max_shared > 0 { rng.gen_range(1..=max_shared) } else { 0 };
            let mut vs = g.to_vec();
            vs.shuffle(&mut rng);
            let mut s: VertexSet = vs.into_iter().take(want).collect();
            // Drop vertices until the intersections form a chain; a single
            // vertex always does.
            while !intersections_chain(&facets, s) {
                let mut members = s.to_vec();
                members.shuffle(&mut rng);
                s.remove(members[0]);
            }
            s
        };
        let Some(n) = fresh(size.saturating_sub(s.len()).max(1), &mut next_vertex) else { break };
        let f = s.union(n);
        if p.pure && f.len() != hi {
            continue;
        }
        facets.push(f);
    }
    Complex::from_sets(next_vertex, facets).expect("fuzzed facets form an antichain")
}

/// A random rooted tree on `n` vertices labelled `1..=n`, rooted at `1`.
pub fn fuzz_rooted_tree(seed: u64, n: usize) -> RootedTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(String, String)> =
        (2..=n.max(1)).map(|v| (rng.gen_range(1..v).to_string(), v.to_string())).collect();
    RootedTree::from_edges("1", &edges).expect("parents precede children")
}

/// A random pure complex with `facets` distinct `size`-subsets of `universe` vertices.
pub fn fuzz_pure_complex(seed: u64, universe: usize, size: usize, facets: usize) -> Complex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<usize> = (0..universe).collect();
    let sets: Vec<VertexSet> =
        (0..facets).map(|_| all.choose_multiple(&mut rng, size.min(universe)).copied().collect()).collect();
    let mut unique = minimalize(sets);
    unique.sort_by_key(|s| s.bits());
    Complex::from_sets(universe, unique).expect("equal-size distinct sets form an antichain")
}

/// A random squarefree ideal generated in degree `d` over `universe ≤ 64` variables.
pub fn fuzz_equigenerated_ideal(seed: u64, universe: usize, d: usize, gens: usize) -> Ideal {
    let c = fuzz_pure_complex(seed, universe, d, gens);
    Ideal::from_sets(universe, c.facets().to_vec()).expect("in range")
}
