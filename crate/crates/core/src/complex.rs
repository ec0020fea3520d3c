//! Simplicial complexes stored by their facets.

use std::collections::HashMap;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::set::{VertexSet, MAX_UNIVERSE};

/// A simplicial complex given by its inclusion-maximal facets.
///
/// Vertices are dense ids `0..universe`, each carrying its original label.
/// Facet order is preserved from construction, so `facets()[i]` is the
/// `i`-th input facet that survived minimalization.
///
/// A complex with zero facets is legal (the empty complex). The only way to
/// obtain a complex whose single facet is the empty set is
/// [`Complex::complement_complex`]; for homology both mean `{∅}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    universe: usize,
    facets: Vec<VertexSet>,
    labels: Vec<String>,
}

/// What [`make_complex_reported`] had to clean up.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConstructionReport {
    pub duplicates: usize,
    pub non_maximal: usize,
}

/// Builds a complex from facet label lists. See [`make_complex_reported`].
pub fn make_complex<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Complex> {
    make_complex_reported(facets).map(|(c, _)| c)
}

/// Interns labels (integers sorted numerically, then strings lexically),
/// merges duplicate facets and discards facets contained in others.
pub fn make_complex_reported<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<(Complex, ConstructionReport)> {
    if facets.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut labels: Vec<String> = Vec::new();
    for (k, f) in facets.iter().enumerate() {
        if f.is_empty() {
            return Err(Error::EmptyFacet(k));
        }
        labels.extend(f.iter().map(|s| s.as_ref().trim().to_string()));
    }
    sort_labels(&mut labels);
    labels.dedup();
    if labels.len() > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(labels.len(), MAX_UNIVERSE));
    }
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let sets: Vec<VertexSet> = facets
        .iter()
        .map(|f| f.iter().map(|s| index[s.as_ref().trim()]).collect())
        .collect();
    let universe = labels.len();
    Complex::from_sets_reported(universe, labels, sets)
}

fn sort_labels(labels: &mut [String]) {
    labels.sort_by(|a, b| match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    });
}

impl Complex {
    /// Complex over `universe` vertices labelled `0..universe`.
    pub fn from_sets(universe: usize, sets: Vec<VertexSet>) -> Result<Complex> {
        let labels = (0..universe).map(|i| i.to_string()).collect();
        Self::from_sets_reported(universe, labels, sets).map(|(c, _)| c)
    }

    pub fn from_labelled_sets(labels: Vec<String>, sets: Vec<VertexSet>) -> Result<Complex> {
        Self::from_sets_reported(labels.len(), labels, sets).map(|(c, _)| c)
    }

    fn from_sets_reported(
        universe: usize,
        labels: Vec<String>,
        sets: Vec<VertexSet>,
    ) -> Result<(Complex, ConstructionReport)> {
        if universe > MAX_UNIVERSE {
            return Err(Error::UniverseTooLarge(universe, MAX_UNIVERSE));
        }
        for s in &sets {
            if s.span() > universe {
                return Err(Error::UnknownVertex { id: s.span() - 1, universe });
            }
        }
        let mut report = ConstructionReport::default();
        let mut unique: Vec<VertexSet> = Vec::with_capacity(sets.len());
        for s in sets {
            if unique.contains(&s) {
                report.duplicates += 1;
            } else {
                unique.push(s);
            }
        }
        let facets: Vec<VertexSet> = unique
            .iter()
            .copied()
            .filter(|s| !unique.iter().any(|o| o != s && s.is_subset(*o)))
            .collect();
        report.non_maximal = unique.len() - facets.len();
        Ok((Complex { universe, facets, labels }, report))
    }

    /// The complex with no facets over the same universe.
    pub fn empty_like(&self) -> Complex {
        self.with_facets(Vec::new())
    }

    /// Same universe and labels, new facet list (assumed to be an antichain).
    pub(crate) fn with_facets(&self, facets: Vec<VertexSet>) -> Complex {
        Complex { universe: self.universe, facets, labels: self.labels.clone() }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Translates labels into a vertex set.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        labels
            .iter()
            .map(|l| self.id_of(l.as_ref().trim()).ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string())))
            .collect::<Result<Vec<_>>>()
            .map(VertexSet::from_ids)
    }

    /// Renders a vertex set with the original labels.
    pub fn show(&self, s: VertexSet) -> String {
        let parts: Vec<&str> = s.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Union of all facets.
    pub fn vertices(&self) -> VertexSet {
        self.facets.iter().fold(VertexSet::EMPTY, |a, &f| a.union(f))
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::range(0, self.universe)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Maximum facet cardinality minus one; -1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn facet_index(&self, f: VertexSet) -> Option<usize> {
        self.facets.iter().position(|&g| g == f)
    }

    pub(crate) fn require_facet(&self, f: VertexSet) -> Result<usize> {
        self.facet_index(f).ok_or_else(|| Error::NotAFacet(self.show(f)))
    }

    fn check_in_universe(&self, y: VertexSet) -> Result<()> {
        if y.span() > self.universe {
            Err(Error::UnknownVertex { id: y.span() - 1, universe: self.universe })
        } else {
            Ok(())
        }
    }

    /// Subcomplex generated by the facets at `indices` (in that order).
    pub fn subcomplex(&self, indices: &[usize]) -> Complex {
        self.with_facets(indices.iter().map(|&i| self.facets[i]).collect())
    }

    /// The complex generated by exactly the facets contained in `y`.
    pub fn induced_subcomplex(&self, y: VertexSet) -> Result<Complex> {
        self.check_in_universe(y)?;
        Ok(self.with_facets(self.facets.iter().copied().filter(|f| f.is_subset(y)).collect()))
    }

    /// `F` and `G` form a gap: they are disjoint and no third facet lies in `F ∪ G`.
    pub fn is_gap(&self, f: VertexSet, g: VertexSet) -> Result<bool> {
        self.require_facet(f)?;
        self.require_facet(g)?;
        Ok(self.gap_unchecked(f, g))
    }

    pub(crate) fn gap_unchecked(&self, f: VertexSet, g: VertexSet) -> bool {
        if !f.is_disjoint(g) {
            return false;
        }
        let u = f.union(g);
        self.facets.iter().all(|&h| h == f || h == g || !h.is_subset(u))
    }

    /// Gap relation between facet indices, as a dense boolean matrix.
    pub fn gap_matrix(&self) -> Vec<Vec<bool>> {
        let r = self.facets.len();
        let mut m = vec![vec![false; r]; r];
        for i in 0..r {
            for j in i + 1..r {
                let g = self.gap_unchecked(self.facets[i], self.facets[j]);
                m[i][j] = g;
                m[j][i] = g;
            }
        }
        m
    }

    /// The complex generated by `{y \ F}`, re-minimalized. May consist of the
    /// single empty face when some facet equals `y`.
    pub fn complement_complex(&self, y: VertexSet) -> Result<Complex> {
        self.check_in_universe(y)?;
        if let Some(f) = self.facets.iter().find(|f| !f.is_subset(y)) {
            return Err(Error::FacetOutsideY(self.show(*f)));
        }
        let sets = self.facets.iter().map(|f| y.difference(*f)).collect();
        Ok(self.with_facets(crate::set::maximalize(sets)))
    }

    /// `Δ \ F`: the facets of Δ disjoint from `F`.
    pub fn delete_facet_closed(&self, f: VertexSet) -> Result<Complex> {
        self.require_facet(f)?;
        Ok(self.with_facets(self.facets.iter().copied().filter(|g| g.is_disjoint(f)).collect()))
    }

    /// Facet label lists, in facet order.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets.iter().map(|f| f.iter().map(|i| self.labels[i].clone()).collect()).collect()
    }

    /// `{"facets": [[...], ...]}` with integer-looking labels written as numbers.
    pub fn to_json(&self) -> Value {
        let facets: Vec<Value> = self
            .facet_labels()
            .into_iter()
            .map(|f| Value::Array(f.into_iter().map(label_value).collect()))
            .collect();
        serde_json::json!({ "facets": facets })
    }

    pub fn from_json(v: &Value) -> Result<Complex> {
        let lists = label_lists(v, "facets")?;
        make_complex(&lists)
    }
}

pub(crate) fn label_value(l: String) -> Value {
    match l.parse::<i64>() {
        Ok(n) => Value::from(n),
        Err(_) => Value::String(l),
    }
}

/// Reads `{key: [[label, ...], ...]}` where labels are strings or integers.
pub(crate) fn label_lists(v: &Value, key: &str) -> Result<Vec<Vec<String>>> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse(format!("expected an object with a `{key}` array")))?;
    arr.iter()
        .map(|f| {
            f.as_array()
                .ok_or_else(|| Error::Parse(format!("each entry of `{key}` must be an array")))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    other => Err(Error::Parse(format!("bad label {other}"))),
                })
                .collect()
        })
        .collect()
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (k, s) in self.facets.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.show(*s))?;
        }
        write!(f, "⟩")
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(lists: &[&[u32]]) -> Complex {
        let v: Vec<Vec<String>> = lists.iter().map(|f| f.iter().map(|x| x.to_string()).collect()).collect();
        make_complex(&v).unwrap()
    }

    fn set(c: &Complex, labels: &[u32]) -> VertexSet {
        let l: Vec<String> = labels.iter().map(|x| x.to_string()).collect();
        c.set_of(&l).unwrap()
    }

    pub(crate) fn example_1_1() -> Complex {
        cx(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7], &[6, 7, 8], &[8, 9, 10], &[9, 10, 11], &[3, 11, 12]])
    }

    #[test]
    fn make_complex_basic() {
        let c = cx(&[&[1, 2], &[2, 3]]);
        assert_eq!(c.num_facets(), 2);
        assert_eq!(c.universe(), 3);
        let (c, rep) = make_complex_reported(&[vec!["1", "2"], vec!["1", "2", "3"], vec!["1", "2"]]).unwrap();
        assert_eq!(c.num_facets(), 1);
        assert_eq!(c.facets()[0].len(), 3);
        assert_eq!(rep, ConstructionReport { duplicates: 1, non_maximal: 1 });
        let ex = example_1_1();
        assert_eq!((ex.num_facets(), ex.universe()), (7, 12));
    }

    #[test]
    fn make_complex_errors() {
        let none: Vec<Vec<String>> = vec![];
        assert_eq!(make_complex(&none), Err(Error::EmptyInput));
        assert_eq!(make_complex(&[vec!["a"], vec![]]), Err(Error::EmptyFacet(1)));
    }

    #[test]
    fn make_complex_is_idempotent() {
        let ex = example_1_1();
        assert_eq!(make_complex(&ex.facet_labels()).unwrap(), ex);
    }

    #[test]
    fn induced_subcomplex_examples() {
        let ex = example_1_1();
        assert_eq!(ex.induced_subcomplex(ex.all_vertices()).unwrap(), ex);
        let y = set(&ex, &[1, 2, 3, 5, 6, 7]);
        let sub = ex.induced_subcomplex(y).unwrap();
        assert_eq!(sub.facets(), &[set(&ex, &[1, 2, 3]), set(&ex, &[5, 6, 7])]);
        let p = cx(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5]]);
        let sub = p.induced_subcomplex(set(&p, &[1, 2, 3])).unwrap();
        assert_eq!(sub.num_facets(), 2);
        assert!(matches!(p.induced_subcomplex(VertexSet::singleton(9)), Err(Error::UnknownVertex { .. })));
    }

    #[test]
    fn gap_examples() {
        let g93 = cx(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 6], &[5, 6, 7], &[6, 7, 8], &[7, 8, 9]]);
        let f = |i: u32| set(&g93, &[i, i + 1, i + 2]);
        assert!(g93.is_gap(f(1), f(5)).unwrap());
        assert!(!g93.is_gap(f(1), f(4)).unwrap());
        assert!(!g93.is_gap(f(1), f(2)).unwrap());
        assert_eq!(g93.is_gap(f(5), f(1)).unwrap(), g93.is_gap(f(1), f(5)).unwrap());
        assert!(matches!(g93.is_gap(set(&g93, &[1, 2]), f(5)), Err(Error::NotAFacet(_))));
    }

    #[test]
    fn complement_examples() {
        let c = cx(&[&[1, 2], &[3, 4]]);
        let y = c.all_vertices();
        let comp = c.complement_complex(y).unwrap();
        assert_eq!(comp.num_facets(), 2);
        assert!(comp.facets().contains(&set(&c, &[1, 2])));
        assert!(comp.facets().contains(&set(&c, &[3, 4])));

        let c = cx(&[&[1, 2], &[2, 3]]);
        let comp = c.complement_complex(c.all_vertices()).unwrap();
        assert_eq!(comp.num_facets(), 2);
        assert!(comp.facets().contains(&set(&c, &[1])));
        assert!(comp.facets().contains(&set(&c, &[3])));

        let single = cx(&[&[1, 2], &[5]]).induced_subcomplex(VertexSet::from_ids([0, 1])).unwrap();
        let comp = single.complement_complex(VertexSet::from_ids([0, 1, 2])).unwrap();
        assert_eq!(comp.facets(), &[VertexSet::singleton(2)]);
        assert!(matches!(
            c.complement_complex(set(&c, &[1, 2])),
            Err(Error::FacetOutsideY(_))
        ));
    }

    #[test]
    fn delete_facet_examples() {
        let g73 = cx(&[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[4, 5, 6], &[5, 6, 7]]);
        let d = g73.delete_facet_closed(set(&g73, &[1, 2, 3])).unwrap();
        assert_eq!(d.facets(), &[set(&g73, &[4, 5, 6]), set(&g73, &[5, 6, 7])]);
        let star = cx(&[&[1, 2], &[1, 3], &[1, 4]]);
        assert!(star.delete_facet_closed(set(&star, &[1, 2])).unwrap().is_empty());
        let ex22 = cx(&[
            &[1, 2, 4], &[1, 2, 5], &[1, 3, 6], &[1, 3, 7], &[2, 4, 8], &[2, 5, 9], &[3, 6, 10], &[3, 7, 11],
        ]);
        let d = ex22.delete_facet_closed(set(&ex22, &[1, 2, 4])).unwrap();
        assert_eq!(d.facets(), &[set(&ex22, &[3, 6, 10]), set(&ex22, &[3, 7, 11])]);
    }

    #[test]
    fn json_round_trip() {
        let v: Value = serde_json::from_str(r#"{"facets": [["a","b","c"], [3, "b"]]}"#).unwrap();
        let c = Complex::from_json(&v).unwrap();
        assert_eq!(c.num_facets(), 2);
        assert_eq!(c.labels(), &["3", "a", "b", "c"]);
        assert_eq!(Complex::from_json(&c.to_json()).unwrap(), c);
    }
}
