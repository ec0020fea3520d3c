//! Library results against brute-force oracles written from the definitions.

use proptest::prelude::*;

use sqpow_core::betti::betti_table;
use sqpow_core::forest::is_forest;
use sqpow_core::matching::{induced_matching_number, matching_number, restricted_matching_number};
use sqpow_core::set::maximalize;
use sqpow_core::{facet_ideal, squarefree_power, Complex, Field, Ideal, VertexSet};

fn complex_from_masks(n: usize, masks: Vec<u64>) -> Complex {
    let sets = maximalize(masks.into_iter().map(VertexSet::from_bits).collect());
    Complex::from_sets(n, sets).unwrap()
}

fn small_complex(n: usize, max_facets: usize) -> impl Strategy<Value = Complex> {
    prop::collection::vec(1u64..(1 << n), 1..=max_facets).prop_map(move |m| complex_from_masks(n, m))
}

fn facet_subsets(c: &Complex) -> impl Iterator<Item = Vec<VertexSet>> + '_ {
    let r = c.num_facets();
    (0u32..1 << r).map(move |mask| (0..r).filter(|i| mask >> i & 1 == 1).map(|i| c.facets()[i]).collect())
}

fn pairwise_disjoint(m: &[VertexSet]) -> bool {
    m.iter().enumerate().all(|(a, f)| m[a + 1..].iter().all(|g| f.bits() & g.bits() == 0))
}

fn union(m: &[VertexSet]) -> VertexSet {
    VertexSet::from_bits(m.iter().fold(0, |a, f| a | f.bits()))
}

/// Facets of `c` lying inside `y`.
fn inside(c: &Complex, y: VertexSet) -> Vec<VertexSet> {
    c.facets().iter().copied().filter(|f| f.bits() & !y.bits() == 0).collect()
}

fn gap(c: &Complex, f: VertexSet, g: VertexSet) -> bool {
    f.bits() & g.bits() == 0 && inside(c, union(&[f, g])).len() == 2
}

fn brute_nu(c: &Complex) -> usize {
    facet_subsets(c).filter(|m| pairwise_disjoint(m)).map(|m| m.len()).max().unwrap()
}

fn brute_nu0(c: &Complex) -> usize {
    facet_subsets(c)
        .filter(|m| !m.is_empty() && pairwise_disjoint(m))
        .filter(|m| m.iter().any(|&f| m.iter().all(|&g| g == f || gap(c, f, g))))
        .map(|m| m.len())
        .max()
        .unwrap()
}

fn brute_nu1(c: &Complex) -> usize {
    facet_subsets(c)
        .filter(|m| pairwise_disjoint(m) && inside(c, union(m)).len() == m.len())
        .map(|m| m.len())
        .max()
        .unwrap()
}

/// Squarefree members of the generating set of `I^k`, read off exponent vectors.
fn literal_squarefree_power(gens: &[VertexSet], k: usize) -> Vec<VertexSet> {
    fn rec(gens: &[VertexSet], k: usize, start: usize, exps: &mut [u32; 64], out: &mut Vec<VertexSet>) {
        if k == 0 {
            if exps.iter().all(|&e| e <= 1) {
                out.push((0..64).filter(|&v| exps[v] == 1).collect());
            }
            return;
        }
        for i in start..gens.len() {
            for v in gens[i].iter() {
                exps[v] += 1;
            }
            rec(gens, k - 1, i, exps, out);
            for v in gens[i].iter() {
                exps[v] -= 1;
            }
        }
    }
    let mut out = vec![];
    rec(gens, k, 0, &mut [0; 64], &mut out);
    let mut minimal: Vec<VertexSet> =
        out.iter().copied().filter(|&m| !out.iter().any(|&o| o != m && o.is_subset(m))).collect();
    minimal.sort_by_key(|m| (m.len(), m.bits()));
    minimal.dedup();
    minimal
}

/// Some subcomplex without a leaf means not a forest.
fn literal_forest(c: &Complex) -> bool {
    facet_subsets(c).filter(|s| !s.is_empty()).all(|s| {
        s.len() == 1
            || s.iter().any(|&f| {
                s.iter().any(|&g| {
                    g != f && s.iter().all(|&h| h == f || f.intersection(h).is_subset(f.intersection(g)))
                })
            })
    })
}

fn rank_gf2(mut rows: Vec<Vec<bool>>) -> usize {
    let mut rank = 0;
    let ncols = rows.first().map_or(0, |r| r.len());
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced GF(2) homology of a subset-closed family of index sets (∅ included).
fn reduced_homology(faces: &[Vec<usize>], i: isize) -> usize {
    let of_size = |s: isize| -> Vec<&Vec<usize>> { faces.iter().filter(|f| f.len() as isize == s).collect() };
    let boundary_rank = |s: isize| -> usize {
        // Boundary from faces of size s to size s − 1.
        if s <= 0 {
            return 0;
        }
        let (hi, lo) = (of_size(s), of_size(s - 1));
        if hi.is_empty() || lo.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<bool>> = hi
            .iter()
            .map(|f| lo.iter().map(|g| g.iter().all(|v| f.contains(v))).collect())
            .collect();
        rank_gf2(rows)
    };
    let n = of_size(i + 1).len();
    n - boundary_rank(i + 1) - boundary_rank(i + 2)
}

/// `β_{i,m}(I) = H̃_{i−1}` of the simplex on generators dividing `m`, minus
/// the faces whose lcm is all of `m`.
fn taylor_betti(gens: &[VertexSet], i: usize, m: VertexSet) -> usize {
    let below: Vec<VertexSet> = gens.iter().copied().filter(|g| g.is_subset(m)).collect();
    let faces: Vec<Vec<usize>> = (0u32..1 << below.len())
        .map(|mask| (0..below.len()).filter(|b| mask >> b & 1 == 1).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| union(&s.iter().map(|&b| below[b]).collect::<Vec<_>>()) != m)
        .collect();
    reduced_homology(&faces, i as isize - 1)
}

fn lcm_lattice(gens: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = (1u32..1 << gens.len())
        .map(|mask| union(&(0..gens.len()).filter(|b| mask >> b & 1 == 1).map(|b| gens[b]).collect::<Vec<_>>()))
        .collect();
    out.sort_by_key(|m| m.bits());
    out.dedup();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matching_numbers_match_brute_force(c in small_complex(9, 9)) {
        prop_assert_eq!(matching_number(&c).unwrap().value, brute_nu(&c));
        prop_assert_eq!(restricted_matching_number(&c).unwrap().value, brute_nu0(&c));
        prop_assert_eq!(induced_matching_number(&c).unwrap().value, brute_nu1(&c));
    }

    #[test]
    fn squarefree_powers_match_literal_products(c in small_complex(10, 7), k in 1usize..4) {
        let power = squarefree_power(&c, k).unwrap();
        prop_assert_eq!(power.generators().to_vec(), literal_squarefree_power(c.facets(), k));
    }

    #[test]
    fn forest_test_matches_definition(c in small_complex(8, 7)) {
        prop_assert_eq!(is_forest(&c), literal_forest(&c));
    }

    #[test]
    fn betti_tables_match_taylor_oracle(c in small_complex(7, 6)) {
        let ideal = facet_ideal(&c);
        let table = betti_table(&ideal, Field::Gf2).unwrap();
        let gens = ideal.generators();
        let mut expected = std::collections::BTreeMap::new();
        for m in lcm_lattice(gens) {
            for i in 0..gens.len() {
                let b = taylor_betti(gens, i, m);
                if b > 0 {
                    *expected.entry((i, m.len())).or_insert(0) += b;
                }
            }
        }
        prop_assert_eq!(table.entries, expected);
    }
}

#[test]
fn taylor_oracle_on_a_complete_intersection() {
    let gens = vec![VertexSet::from_ids([0, 1]), VertexSet::from_ids([2, 3]), VertexSet::from_ids([4, 5])];
    let all = union(&gens);
    assert_eq!(taylor_betti(&gens, 2, all), 1);
    let ideal = Ideal::from_sets(6, gens).unwrap();
    assert_eq!(betti_table(&ideal, Field::Gf2).unwrap().get(2, 6), 1);
}
