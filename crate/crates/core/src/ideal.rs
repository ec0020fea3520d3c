//! Squarefree monomial ideals and squarefree powers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::Value;

use crate::complex::{label_lists, label_value, make_complex, Complex};
use crate::error::{Error, Result};
use crate::matching::for_each_matching;
use crate::set::{minimalize, VertexSet};

/// A squarefree monomial, identified with its support.
pub type Monomial = VertexSet;

/// A squarefree monomial ideal given by its minimal generators.
///
/// Generators are kept in canonical order (degree, then bit pattern), so two
/// ideals over the same universe are equal exactly when their generator lists
/// are. The zero ideal has no generators; the unit ideal has the single
/// generator with empty support.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    labels: Vec<String>,
    generators: Vec<Monomial>,
}

impl Ideal {
    /// Minimalizes `gens` over a universe labelled by `labels`.
    pub fn new(labels: Vec<String>, gens: Vec<Monomial>) -> Result<Ideal> {
        let universe = labels.len();
        if let Some(g) = gens.iter().find(|g| g.span() > universe) {
            return Err(Error::UnknownVertex { id: g.span() - 1, universe });
        }
        Ok(Ideal { labels, generators: minimalize(gens) })
    }

    /// Ideal over `0..universe` with numeric labels.
    pub fn from_sets(universe: usize, gens: Vec<Monomial>) -> Result<Ideal> {
        Ideal::new((0..universe).map(|i| i.to_string()).collect(), gens)
    }

    pub fn zero_like(&self) -> Ideal {
        Ideal { labels: self.labels.clone(), generators: Vec::new() }
    }

    fn with_gens(&self, gens: Vec<Monomial>) -> Ideal {
        Ideal { labels: self.labels.clone(), generators: minimalize(gens) }
    }

    pub fn universe(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.first().is_some_and(|g| g.is_empty())
    }

    /// Whether the monomial lies in the ideal.
    pub fn contains(&self, m: Monomial) -> bool {
        self.generators.iter().any(|g| g.is_subset(m))
    }

    /// Number of minimal generators in each degree.
    pub fn degree_census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for g in &self.generators {
            *out.entry(g.len()).or_insert(0) += 1;
        }
        out
    }

    /// The common degree of all generators, if there is one.
    pub fn equigenerated_degree(&self) -> Option<usize> {
        let d = self.generators.first()?.len();
        self.generators.iter().all(|g| g.len() == d).then_some(d)
    }

    /// `I : (f)`, generated by `g / gcd(g, f)`.
    pub fn colon(&self, f: Monomial) -> Ideal {
        self.with_gens(self.generators.iter().map(|g| g.difference(f)).collect())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.labels != other.labels {
            return Err(Error::UniverseMismatch(self.universe(), other.universe()));
        }
        let mut gens = self.generators.clone();
        gens.extend_from_slice(&other.generators);
        Ok(self.with_gens(gens))
    }

    /// `I + (f)`.
    pub fn add_generator(&self, f: Monomial) -> Ideal {
        let mut gens = self.generators.clone();
        gens.push(f);
        self.with_gens(gens)
    }

    /// The complex whose facets are the supports of the minimal generators.
    pub fn facet_complex(&self) -> Result<Complex> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Complex::from_labelled_sets(self.labels.clone(), self.generators.clone())
    }

    /// Support of the lcm of all generators.
    pub fn support(&self) -> VertexSet {
        self.generators.iter().fold(VertexSet::EMPTY, |a, &g| a.union(g))
    }

    pub fn show(&self, m: Monomial) -> String {
        if m.is_empty() {
            return "1".to_string();
        }
        m.iter().map(|i| format!("x{}", self.labels[i])).collect::<Vec<_>>().join("")
    }

    pub fn generator_labels(&self) -> Vec<Vec<String>> {
        self.generators.iter().map(|g| g.iter().map(|i| self.labels[i].clone()).collect()).collect()
    }

    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .generator_labels()
            .into_iter()
            .map(|g| Value::Array(g.into_iter().map(label_value).collect()))
            .collect();
        serde_json::json!({ "generators": gens })
    }

    /// Reads `{"generators": [[...], ...]}`. Empty supports are rejected.
    pub fn from_json(v: &Value) -> Result<Ideal> {
        let lists = label_lists(v, "generators")?;
        if lists.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        // Interning is shared with complexes; the complex itself would drop
        // divisible generators the wrong way round, so only its labels are kept.
        let labels = make_complex(&lists)?.labels().to_vec();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let gens = lists.iter().map(|g| g.iter().map(|s| index[s.trim()]).collect()).collect();
        Ideal::new(labels, gens)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        let gens: Vec<String> = self.generators.iter().map(|&g| self.show(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// `I(Δ)`, one generator per facet.
pub fn facet_ideal(c: &Complex) -> Ideal {
    Ideal { labels: c.labels().to_vec(), generators: minimalize(c.facets().to_vec()) }
}

/// `I(Δ)^{[k]}`, generated by the supports of the k-matchings of Δ.
pub fn squarefree_power(c: &Complex, k: usize) -> Result<Ideal> {
    if k == 0 {
        return Err(Error::BadParameters("squarefree powers need k >= 1".into()));
    }
    let mut gens = Vec::new();
    for_each_matching(c, k, |m| {
        gens.push(m.iter().fold(VertexSet::EMPTY, |a, &i| a.union(c.facets()[i])));
    });
    Ok(Ideal { labels: c.labels().to_vec(), generators: minimalize(gens) })
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

    fn ex22() -> Complex {
        cx(&[&[1, 2, 4], &[1, 2, 5], &[1, 3, 6], &[1, 3, 7], &[2, 4, 8], &[2, 5, 9], &[3, 6, 10], &[3, 7, 11]])
    }

    /// Squarefree generators of the ordinary power, by multiplying exponent vectors.
    fn literal_power(c: &Complex, k: usize) -> Ideal {
        let n = c.universe();
        let mut prods: Vec<Vec<u32>> = vec![vec![0; n]];
        for _ in 0..k {
            let mut next = Vec::new();
            for p in &prods {
                for f in c.facets() {
                    let mut q = p.clone();
                    for v in f.iter() {
                        q[v] += 1;
                    }
                    next.push(q);
                }
            }
            next.sort();
            next.dedup();
            prods = next;
        }
        // Minimal generators of I^k, then the squarefree ones among them.
        let divides = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).all(|(x, y)| x <= y);
        let minimal: Vec<&Vec<u32>> =
            prods.iter().filter(|p| !prods.iter().any(|q| q != *p && divides(q, p))).collect();
        let gens = minimal
            .into_iter()
            .filter(|p| p.iter().all(|&e| e <= 1))
            .map(|p| (0..n).filter(|&i| p[i] == 1).collect())
            .collect();
        Ideal::new(c.labels().to_vec(), gens).unwrap()
    }

    #[test]
    fn facet_ideals() {
        let g = path(7, 3);
        let i = facet_ideal(&g);
        assert_eq!(i.num_generators(), 5);
        assert_eq!(i.equigenerated_degree(), Some(3));
        assert_eq!(facet_ideal(&ex22()).num_generators(), 8);
        assert_eq!(i.facet_complex().unwrap().facets().len(), 5);
        let single = cx(&[&[1, 2]]);
        assert_eq!(facet_ideal(&single).num_generators(), 1);
    }

    #[test]
    fn squarefree_powers() {
        let g = path(7, 3);
        assert_eq!(squarefree_power(&g, 1).unwrap(), facet_ideal(&g));
        assert!(squarefree_power(&g, 3).unwrap().is_zero());
        let e = ex22();
        let p2 = squarefree_power(&e, 2).unwrap();
        assert_eq!(p2.num_generators(), 12);
        assert_eq!(p2.equigenerated_degree(), Some(6));
        assert!(squarefree_power(&e, 3).unwrap().is_zero());
        let p = squarefree_power(&path(9, 3), 2).unwrap().facet_complex().unwrap();
        assert_eq!(p.num_facets(), 10);
        assert!(p.facets().iter().all(|f| f.len() == 6));
        assert!(squarefree_power(&g, 0).is_err());
    }

    #[test]
    fn powers_match_literal_filter() {
        let cases = [
            path(6, 2),
            path(7, 3),
            cx(&[&[1, 2], &[2, 3, 4], &[4, 5], &[1, 5], &[3, 6]]),
            cx(&[&[1], &[2, 3], &[3, 4, 5], &[5, 6]]),
        ];
        for c in &cases {
            for k in 1..=3 {
                assert_eq!(squarefree_power(c, k).unwrap(), literal_power(c, k), "{c:?} k={k}");
            }
        }
    }

    #[test]
    fn colon_and_sum() {
        let g = path(7, 3);
        let f1 = g.facets()[0];
        let i2 = squarefree_power(&g, 2).unwrap();
        assert_eq!(i2.num_generators(), 3);
        let col = i2.colon(f1);
        assert_eq!(col, facet_ideal(&g.delete_facet_closed(f1).unwrap()));
        assert_eq!(col.num_generators(), 2);
        assert_eq!(i2.colon(VertexSet::EMPTY), i2);
        let far = VertexSet::singleton(g.universe() + 5);
        assert_eq!(i2.colon(far), i2);

        let i = facet_ideal(&g);
        assert_eq!(i.sum(&i.zero_like()).unwrap(), i);
        assert_eq!(i.sum(&i).unwrap(), i);
        let a = Ideal::from_sets(3, vec![VertexSet::from_ids([1, 2])]).unwrap();
        let b = Ideal::from_sets(3, vec![VertexSet::from_ids([2])]).unwrap();
        assert_eq!(a.sum(&b).unwrap(), b);
        let other = Ideal::from_sets(4, vec![VertexSet::from_ids([2])]).unwrap();
        assert_eq!(a.sum(&other), Err(Error::UniverseMismatch(3, 4)));
        assert!(i.colon(f1).is_unit());
    }

    #[test]
    fn zero_ideal_has_no_complex() {
        let z = facet_ideal(&path(5, 2)).zero_like();
        assert_eq!(z.facet_complex(), Err(Error::ZeroIdeal));
    }

    #[test]
    fn json_round_trip() {
        let i = squarefree_power(&ex22(), 2).unwrap();
        let back = Ideal::from_json(&i.to_json()).unwrap();
        assert_eq!(back.generator_labels(), i.generator_labels());
        let v: Value = serde_json::json!({"generators": [["a", "b"], ["b"]]});
        assert_eq!(Ideal::from_json(&v).unwrap().num_generators(), 1);
    }
}
