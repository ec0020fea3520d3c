//! Named verification suites. Each suite recomputes a family of known results
//! and reports one row per check; expected values are embedded as data.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::betti::{
    betti_gpw_in, betti_hochster_with, betti_koszul_with, betti_table_with, find_linear_quotient_order,
    is_linearly_related, lcm_lattice_with, matching_lex_order, verify_linear_quotient_order, BettiTable,
    DegreeFilter,
};
use crate::complex::{make_complex, Complex};
use crate::error::{Error, Result};
use crate::families::{
    broom_generator_order, broom_tree, closed_invariants, closed_regularity, fuzz_equigenerated_ideal,
    fuzz_forest, fuzz_pure_complex, fuzz_rooted_tree, path_complex, rooted_tree_path_complex, BroomSpec,
    ForestParams, PathCaps, RootedTree,
};
use crate::forest::{good_leaf_order, has_intersection_property, is_forest};
use crate::homology::reduced_homology_dims_of;
use crate::ideal::{squarefree_power, Ideal};
use crate::limits::Limits;
use crate::linalg::Field;
use crate::matching::{
    induced_matching_number_with, is_restricted_matching, matching_invariants, matching_number_with,
    restricted_matching_number_with,
};
use crate::set::VertexSet;

/// Suite names accepted by [`run_suite`], in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "path-invariants",
    "path-regularity",
    "first-syzygies",
    "intersection-property",
    "broom",
    "linear-relatedness",
    "examples",
    "colon-identities",
    "regularity-lower-bound",
    "oracle",
    "homology-sanity",
    "second-highest-power",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub id: String,
    /// What the row asserts, in words.
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub millis: u64,
    /// Skip reason, counterexample or discrepancy remark.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRow {
    fn new(id: impl Into<String>, claim: &str, expected: impl ToString, computed: impl ToString, ok: bool) -> Self {
        CheckRow {
            id: id.into(),
            claim: claim.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            millis: 0,
            note: None,
        }
    }

    /// A row for a computation that errored: budget overruns skip, anything else fails.
    fn errored(id: impl Into<String>, claim: &str, expected: impl ToString, e: &Error) -> Self {
        let mut r = CheckRow::new(id, claim, expected, "error", false);
        if e.is_budget() {
            r.status = Status::Skip;
        }
        r.note = Some(e.to_string());
        r
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn timed(mut self, since: Instant) -> Self {
        self.millis = since.elapsed().as_millis() as u64;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<CheckRow>,
    pub notes: Vec<String>,
    /// Wall time of the whole suite; rows summarizing a fuzzed family carry 0.
    pub millis: u64,
}

impl SuiteReport {
    /// No failed rows. Skips are allowed but always carry a reason.
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.status != Status::Fail)
    }

    /// Every row passed; nothing skipped.
    pub fn passed_strict(&self) -> bool {
        self.rows.iter().all(|r| r.status == Status::Pass)
    }

    pub fn count(&self, s: Status) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v["passed"] = json!(self.passed());
        v
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let overall = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{} [{overall}] {} pass, {} fail, {} skip ({} ms)",
            self.suite,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip),
            self.millis
        )?;
        for r in &self.rows {
            write!(f, "  {} {}: expected {}, got {} ({} ms)", r.status, r.id, r.expected, r.computed, r.millis)?;
            if let Some(n) = &r.note {
                write!(f, "  # {n}")?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "  NOTE {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Include the slow checks (large path regularities, one high Betti number).
    pub extended: bool,
    /// Base seed for every fuzzed family.
    pub seed: u64,
    pub limits: Limits,
    pub caps: PathCaps,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { extended: false, seed: 0x5f9a_2024, limits: *Limits::global(), caps: PathCaps::from_env() }
    }
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let (rows, notes) = match name {
        "path-invariants" => path_invariants(opts),
        "path-regularity" => path_regularity(opts),
        "first-syzygies" => first_syzygies(opts),
        "intersection-property" => intersection_property(opts),
        "broom" => brooms(opts),
        "linear-relatedness" => linear_relatedness(opts),
        "examples" => examples(opts),
        "colon-identities" => colon_identities(opts),
        "regularity-lower-bound" => regularity_lower_bound(opts),
        "oracle" => oracle(opts),
        "homology-sanity" => homology_sanity(opts),
        "second-highest-power" => second_highest_power(opts),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    };
    Ok(SuiteReport { suite: name.to_string(), rows, notes, millis: start.elapsed().as_millis() as u64 })
}

/// Runs every suite, or one by name; `all` expands to [`SUITES`].
pub fn run_suites(name: &str, opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    if name == "all" {
        SUITES.iter().map(|s| run_suite(s, opts)).collect()
    } else {
        Ok(vec![run_suite(name, opts)?])
    }
}

type Rows = (Vec<CheckRow>, Vec<String>);
/// A per-instance measurement and the violations found on it.
type Tally = (usize, Vec<String>);

fn seed_for(opts: &VerifyOptions, salt: u64, i: u64) -> u64 {
    opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ i.wrapping_mul(0xd1b5_4a32_d192_ed03)
}

/// `reg(R/I)` over `field`, or 0 for the zero ideal.
fn quotient_regularity(ideal: &Ideal, field: Field, limits: &Limits) -> Result<usize> {
    if ideal.is_zero() {
        return Ok(0);
    }
    let t = betti_table_with(ideal, field, DegreeFilter::default(), limits)?;
    Ok(t.regularity().map_or(0, |r| r - 1))
}

/// Betti tables over GF(2) and ℚ; errors if they differ.
fn tables_both(ideal: &Ideal, limits: &Limits) -> Result<(BettiTable, bool)> {
    let a = betti_table_with(ideal, Field::Gf2, DegreeFilter::default(), limits)?;
    let b = betti_table_with(ideal, Field::Rationals, DegreeFilter::default(), limits)?;
    let agree = a.entries == b.entries;
    Ok((a, agree))
}

/// Summary row for a fuzzed family: at least `min` instances, no violations.
fn tally(id: &str, claim: &str, instances: usize, min: usize, violations: &[String]) -> CheckRow {
    let row = CheckRow::new(
        id,
        claim,
        format!(">= {min} instances, 0 violations"),
        format!("{instances} instances, {} violations", violations.len()),
        instances >= min && violations.is_empty(),
    );
    match violations.first() {
        Some(v) => row.with_note(format!("first violation: {v}")),
        None => row,
    }
}

fn path_invariants(opts: &VerifyOptions) -> Rows {
    let cells: Vec<(usize, usize)> =
        opts.caps.0.iter().filter(|(t, _)| (2..=5).contains(*t)).flat_map(|(&t, &cap)| (t + 1..=cap).map(move |n| (t, n))).collect();
    let claim = "matching numbers of the path complex match their closed forms";
    let rows = cells
        .par_iter()
        .map(|&(t, n)| {
            let start = Instant::now();
            let id = format!("t={t},n={n}");
            let want = closed_invariants(n, t).expect("t <= n");
            let expected = format!("({},{},{})", want.nu, want.nu0, want.nu1);
            let got = path_complex(n, t).and_then(|c| {
                Ok((
                    matching_number_with(&c, &opts.limits)?.value,
                    restricted_matching_number_with(&c, &opts.limits)?.value,
                    induced_matching_number_with(&c, &opts.limits)?.value,
                ))
            });
            match got {
                Ok(g) => {
                    let ok = g == (want.nu, want.nu0, want.nu1);
                    CheckRow::new(id, claim, expected, format!("({},{},{})", g.0, g.1, g.2), ok)
                }
                Err(e) => CheckRow::errored(id, claim, expected, &e),
            }
            .timed(start)
        })
        .collect();
    (rows, vec![])
}

/// `reg(I_{n,3}^{[3]})` for the path complex on `n` vertices.
const CUBE_REGULARITY: &[(usize, usize)] = &[(9, 9), (10, 9), (11, 9), (12, 9), (13, 11), (14, 11)];
const CUBE_REGULARITY_EXTENDED: &[(usize, usize)] = &[(15, 11), (16, 11), (17, 13), (18, 13), (19, 13), (20, 13)];

fn path_regularity(opts: &VerifyOptions) -> Rows {
    let mut cases: Vec<(usize, usize)> = CUBE_REGULARITY.to_vec();
    if opts.extended {
        cases.extend_from_slice(CUBE_REGULARITY_EXTENDED);
    }
    let claim = "reg of the third squarefree power of the 3-path ideal, over GF(2) and Q";
    let mut rows: Vec<CheckRow> = cases
        .iter()
        .map(|&(n, want)| {
            let start = Instant::now();
            let id = format!("cube,t=3,n={n}");
            let got = path_complex(n, 3).and_then(|c| squarefree_power(&c, 3)).and_then(|i| {
                let a = quotient_regularity(&i, Field::Gf2, &opts.limits)? + 1;
                let b = quotient_regularity(&i, Field::Rationals, &opts.limits)? + 1;
                Ok((a, b))
            });
            match got {
                Ok((a, b)) => CheckRow::new(id, claim, want, format!("{a} (Q: {b})"), a == want && b == want),
                Err(e) => CheckRow::errored(id, claim, want, &e),
            }
            .timed(start)
        })
        .collect();
    let mut notes = vec![];
    if opts.extended {
        let start = Instant::now();
        let claim = "beta_{4,17} of the third squarefree power of the 3-path ideal on 17 vertices is nonzero";
        let got = path_complex(17, 3).and_then(|c| squarefree_power(&c, 3)).and_then(|i| {
            let top = i.support();
            Ok((
                betti_koszul_with(&i, 4, top, Field::Gf2, &opts.limits)?,
                betti_koszul_with(&i, 4, top, Field::Rationals, &opts.limits)?,
            ))
        });
        rows.push(
            match got {
                Ok((a, b)) => CheckRow::new("beta4,17", claim, ">= 1", format!("{a} (Q: {b})"), a >= 1 && a == b),
                Err(e) => CheckRow::errored("beta4,17", claim, ">= 1", &e),
            }
            .timed(start),
        );
        notes.push("beta_{4,17} is read off the upper Koszul complex at the full support, which has the same homology as the lcm-lattice interval".into());
    } else {
        notes.push("n = 15..20 and beta_{4,17} run with --extended".into());
    }
    // The general closed form on a small grid.
    let grid: Vec<(usize, usize, usize)> = [2usize, 3]
        .into_iter()
        .flat_map(|t| (t..=14).flat_map(move |n| (1..n / t).map(move |k| (t, n, k))))
        .collect();
    let claim = "reg(R/I^[k+1]) of the path complex matches its closed form";
    rows.par_extend(grid.par_iter().map(|&(t, n, k)| {
        let start = Instant::now();
        let id = format!("closed,t={t},n={n},k+1={}", k + 1);
        let want = closed_regularity(n, t, k).expect("k+1 <= n/t");
        let got = path_complex(n, t)
            .and_then(|c| squarefree_power(&c, k + 1))
            .and_then(|i| quotient_regularity(&i, Field::Gf2, &opts.limits));
        match got {
            Ok(g) => CheckRow::new(id, claim, want, g, g == want),
            Err(e) => CheckRow::errored(id, claim, want, &e),
        }
        .timed(start)
    }));
    (rows, notes)
}

fn first_syzygies(opts: &VerifyOptions) -> Rows {
    let cells: Vec<(usize, usize, usize)> = [2usize, 3]
        .into_iter()
        .flat_map(|t| (1..=3).flat_map(move |k| (t..=14).filter(move |n| k <= n / t).map(move |n| (t, k, n))))
        .collect();
    let claim = "first syzygies of I^[k] of the path complex sit only in degrees kt+1 and (k+1)t";
    let rows = cells
        .par_iter()
        .map(|&(t, k, n)| {
            let start = Instant::now();
            let id = format!("t={t},k={k},n={n}");
            let allowed = [k * t + 1, (k + 1) * t];
            let expected = format!("degrees within {{{},{}}}", allowed[0], allowed[1]);
            let got = path_complex(n, t).and_then(|c| squarefree_power(&c, k)).and_then(|i| tables_both(&i, &opts.limits));
            match got {
                Ok((table, agree)) => {
                    let degrees: Vec<usize> =
                        table.entries.iter().filter(|((i, _), _)| *i == 1).map(|(&(_, j), _)| j).collect();
                    let ok = agree && degrees.iter().all(|j| allowed.contains(j));
                    let row = CheckRow::new(id, claim, expected, format!("degrees {degrees:?}"), ok);
                    if agree { row } else { row.with_note("GF(2) and Q tables differ") }
                }
                Err(e) => CheckRow::errored(id, claim, expected, &e),
            }
            .timed(start)
        })
        .collect();
    (rows, vec![])
}

/// Linear quotients for `I^{[k]}`, trying the matching-lex order of a good
/// leaf order (and its reverse) before searching.
fn linear_quotients_for(c: &Complex, k: usize, limits: &Limits) -> Result<bool> {
    let ideal = squarefree_power(c, k)?;
    if ideal.is_zero() {
        return Ok(false);
    }
    let mut hints = vec![];
    if let Some(o) = good_leaf_order(c) {
        let mut fs: Vec<VertexSet> = o.order.iter().map(|&i| c.facets()[i]).collect();
        hints.push(matching_lex_order(&ideal, &fs, k));
        fs.reverse();
        hints.push(matching_lex_order(&ideal, &fs, k));
    }
    Ok(find_linear_quotient_order(&ideal, &hints, limits)?.is_some())
}

fn intersection_property(opts: &VerifyOptions) -> Rows {
    const TRIALS: u64 = 400;
    let outcomes: Vec<Result<Option<Tally>>> = (0..TRIALS)
        .into_par_iter()
        .map(|i| {
            let s = seed_for(opts, 1, i);
            let p = ForestParams { max_facets: 8, min_size: 2, max_size: 2 + (i % 3) as usize, pure: true, connected: true, codim_one: true };
            let c = fuzz_forest(s, &p);
            if !has_intersection_property(&c)? {
                return Ok(None);
            }
            let nu = matching_number_with(&c, &opts.limits)?.value;
            let mut bad = vec![];
            if nu > 2 {
                bad.push(format!("nu={nu} on {}", c.to_json()));
            }
            for k in 1..=nu {
                if !linear_quotients_for(&c, k, &opts.limits)? {
                    bad.push(format!("no linear quotients for k={k} on {}", c.to_json()));
                }
            }
            Ok(Some((nu, bad)))
        })
        .collect();
    let mut rows = vec![];
    let (mut with_ip, mut skipped, mut violations, mut by_nu) = (0, 0, vec![], [0usize; 3]);
    for o in outcomes {
        match o {
            Ok(None) => {}
            Ok(Some((nu, bad))) => {
                with_ip += 1;
                by_nu[nu.min(2)] += 1;
                violations.extend(bad);
            }
            Err(e) if e.is_budget() => skipped += 1,
            Err(e) => violations.push(e.to_string()),
        }
    }
    let claim = "pure trees with the intersection property have nu <= 2 and linear quotients for every nonzero squarefree power";
    rows.push(tally("fuzzed-trees", claim, TRIALS as usize - skipped, 200, &violations));
    rows.push(CheckRow::new("with-intersection-property", "the fuzzed family exercises the property", ">= 1", with_ip, with_ip >= 1));
    let notes = vec![format!("{with_ip} trees had the intersection property ({} with nu=1, {} with nu=2); {skipped} skipped on budget", by_nu[1], by_nu[2])];
    (rows, notes)
}

fn brooms(opts: &VerifyOptions) -> Rows {
    let mut cases: Vec<(Vec<usize>, usize)> = vec![];
    for h in 1..=8usize {
        for code in 0..3usize.pow(h as u32) {
            let leaves: Vec<usize> = (0..h).map(|i| code / 3usize.pow(i as u32) % 3).collect();
            for t in 2..=4 {
                cases.push((leaves.clone(), t));
            }
        }
    }
    #[derive(Default)]
    struct Outcome {
        counted: bool,
        direct: bool,
        via_search: bool,
        path_checked: bool,
        path_ok: bool,
        error: Option<String>,
    }
    let outcomes: Vec<Outcome> = cases
        .par_iter()
        .map(|(leaves, t)| {
            let run = || -> Result<Outcome> {
                let tree = broom_tree(&BroomSpec::new(leaves.clone())?);
                let c = rooted_tree_path_complex(&tree, *t)?;
                if c.is_empty() {
                    return Ok(Outcome::default());
                }
                let nu = matching_number_with(&c, &opts.limits)?.value;
                let ideal = squarefree_power(&c, nu)?;
                let order = broom_generator_order(&c, nu)?;
                let mut sorted = order.clone();
                sorted.sort_by_key(|m| (m.len(), m.bits()));
                let direct = sorted == ideal.generators() && verify_linear_quotient_order(&order);
                let via_search = direct || find_linear_quotient_order(&ideal, &[], &opts.limits)?.is_some();
                let mut out = Outcome { counted: true, direct, via_search, ..Outcome::default() };
                if leaves.iter().all(|&l| l == 0) {
                    let nu0 = restricted_matching_number_with(&c, &opts.limits)?.value;
                    out.path_checked = true;
                    out.path_ok = linear_quotients_for(&c, nu0, &opts.limits)?;
                }
                Ok(out)
            };
            run().unwrap_or_else(|e| Outcome { counted: true, error: Some(format!("{leaves:?},t={t}: {e}")), ..Outcome::default() })
        })
        .collect();
    let counted = outcomes.iter().filter(|o| o.counted).count();
    let direct = outcomes.iter().filter(|o| o.direct).count();
    let failures: Vec<String> = cases
        .iter()
        .zip(&outcomes)
        .filter(|(_, o)| o.counted && !o.via_search)
        .map(|((l, t), o)| o.error.clone().unwrap_or_else(|| format!("leaves {l:?}, t={t}")))
        .collect();
    let paths: Vec<&Outcome> = outcomes.iter().filter(|o| o.path_checked).collect();
    let path_failures = paths.iter().filter(|o| !o.path_ok).count();
    let share = if counted == 0 { 0.0 } else { direct as f64 / counted as f64 };
    let rows = vec![
        tally("all-brooms", "the highest nonzero squarefree power of a broom path ideal has linear quotients", counted, 1, &failures),
        CheckRow::new(
            "explicit-order",
            "the explicit descending broom order works without search",
            ">= 95%",
            format!("{:.2}% ({direct}/{counted})", 100.0 * share),
            share >= 0.95,
        ),
        CheckRow::new(
            "paths-restricted-power",
            "for plain paths the power at the restricted matching number has linear quotients",
            "0 failures",
            format!("{path_failures} failures over {}", paths.len()),
            path_failures == 0 && !paths.is_empty(),
        ),
    ];
    (rows, vec![format!("{} broom cases, {counted} with a nonempty path complex", cases.len())])
}

fn linear_relatedness(opts: &VerifyOptions) -> Rows {
    const TRIALS: u64 = 300;
    // Below the restricted matching number no squarefree power is linearly related.
    let below: Vec<Result<(bool, Vec<String>)>> = (0..TRIALS)
        .into_par_iter()
        .map(|i| {
            let p = ForestParams { max_facets: 8, min_size: 2, max_size: 2 + (i % 3) as usize, pure: true, connected: false, codim_one: false };
            let c = fuzz_forest(seed_for(opts, 2, i), &p);
            let nu0 = restricted_matching_number_with(&c, &opts.limits)?.value;
            let mut bad = vec![];
            for k in 1..nu0 {
                if is_linearly_related(&squarefree_power(&c, k)?)?.related {
                    bad.push(format!("k={k} < nu0={nu0} linearly related on {}", c.to_json()));
                }
            }
            Ok((nu0 >= 2, bad))
        })
        .collect();
    // On trees linear relatedness, once reached, persists.
    let monotone: Vec<Result<Vec<String>>> = (0..TRIALS)
        .into_par_iter()
        .map(|i| {
            let p = ForestParams { max_facets: 8, min_size: 2, max_size: 2 + (i % 3) as usize, pure: true, connected: true, codim_one: i % 2 == 0 };
            let c = fuzz_forest(seed_for(opts, 3, i), &p);
            let nu = matching_number_with(&c, &opts.limits)?.value;
            let flags: Vec<bool> =
                (1..=nu).map(|k| Ok(is_linearly_related(&squarefree_power(&c, k)?)?.related)).collect::<Result<_>>()?;
            Ok(if flags.windows(2).any(|w| w[0] && !w[1]) {
                vec![format!("pattern {flags:?} on {}", c.to_json())]
            } else {
                vec![]
            })
        })
        .collect();
    let mut rows = vec![];
    let (mut n, mut nontrivial, mut violations) = (0, 0, vec![]);
    for r in below {
        match r {
            Ok((nt, bad)) => {
                n += 1;
                nontrivial += nt as usize;
                violations.extend(bad);
            }
            Err(e) if e.is_budget() => {}
            Err(e) => violations.push(e.to_string()),
        }
    }
    rows.push(tally("below-restricted", "forests: I^[k] is not linearly related for k below nu0", n, 200, &violations));
    let (mut n, mut violations) = (0, vec![]);
    for r in monotone {
        match r {
            Ok(bad) => {
                n += 1;
                violations.extend(bad);
            }
            Err(e) if e.is_budget() => {}
            Err(e) => violations.push(e.to_string()),
        }
    }
    rows.push(tally("monotone-on-trees", "trees: k -> linearly related is monotone", n, 200, &violations));
    (rows, vec![format!("{nontrivial} forests had nu0 >= 2")])
}

fn labelled(lists: &[&[u32]]) -> Result<Complex> {
    let v: Vec<Vec<String>> = lists.iter().map(|f| f.iter().map(|x| x.to_string()).collect()).collect();
    make_complex(&v)
}

/// The rooted tree with edges 1→2, 1→3, 2→4, 2→5, 3→6, 3→7, 4→8, 5→9, 6→10, 7→11.
pub fn example_rooted_tree() -> RootedTree {
    let edges = [(1, 2), (1, 3), (2, 4), (2, 5), (3, 6), (3, 7), (4, 8), (5, 9), (6, 10), (7, 11)];
    let e: Vec<(String, String)> = edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    RootedTree::from_edges("1", &e).expect("valid tree")
}

/// Fifteen triangles on nine vertices whose second squarefree power is linearly related.
pub fn example_triangles() -> Complex {
    labelled(&[
        &[1, 2, 3], &[4, 5, 6], &[7, 8, 9], &[4, 5, 7], &[2, 4, 8],
        &[3, 5, 7], &[4, 8, 9], &[5, 6, 7], &[1, 4, 7], &[2, 5, 8],
        &[3, 6, 9], &[4, 7, 9], &[6, 7, 9], &[6, 8, 9], &[4, 6, 9],
    ])
    .expect("valid facets")
}

fn examples(opts: &VerifyOptions) -> Rows {
    let mut rows = vec![];
    let mut notes = vec![];
    let lim = &opts.limits;

    let start = Instant::now();
    let tree = example_rooted_tree();
    let run = || -> Result<Vec<CheckRow>> {
        let c = rooted_tree_path_complex(&tree, 3)?;
        let i2 = squarefree_power(&c, 2)?;
        let nu = matching_number_with(&c, lim)?.value;
        let lr2 = betti_table_with(&i2, Field::Gf2, DegreeFilter::default(), lim)?.entries.keys().all(|&(i, j)| j == i + 6);
        let lrq = betti_table_with(&i2, Field::Rationals, DegreeFilter::default(), lim)?.entries.keys().all(|&(i, j)| j == i + 6);
        let lq = find_linear_quotient_order(&i2, &[], lim)?;
        let claim = "3-path ideal of the 11-vertex binary-like tree";
        Ok(vec![
            CheckRow::new("tree:generators", claim, 12, i2.num_generators(), i2.num_generators() == 12),
            CheckRow::new("tree:nu", claim, 2, nu, nu == 2),
            CheckRow::new("tree:linear-resolution", claim, "false over GF(2) and Q", format!("{lr2} / {lrq}"), !lr2 && !lrq),
            CheckRow::new("tree:linear-quotients", claim, "absent", if lq.is_some() { "found" } else { "absent" }, lq.is_none()),
        ])
    };
    match run() {
        Ok(r) => rows.extend(r.into_iter().map(|r| r.timed(start))),
        Err(e) => rows.push(CheckRow::errored("tree", "rooted tree example", "computable", &e)),
    }
    notes.push("the tree has nu = 2, so its squarefree powers vanish from k = 3 on".into());

    let start = Instant::now();
    let c = example_triangles();
    let run = || -> Result<Vec<CheckRow>> {
        let claim = "fifteen triangles on nine vertices";
        let m = c.set_of(&["1", "2", "3"])?;
        let matching = [m, c.set_of(&["4", "5", "6"])?, c.set_of(&["7", "8", "9"])?];
        let cert = is_restricted_matching(&c, &matching)?;
        let nu0 = restricted_matching_number_with(&c, lim)?.value;
        let lr = is_linearly_related(&squarefree_power(&c, 2)?)?.related;
        Ok(vec![
            CheckRow::new("triangles:generators", claim, 15, c.num_facets(), c.num_facets() == 15),
            CheckRow::new("triangles:nu0", claim, 3, nu0, nu0 == 3),
            CheckRow::new(
                "triangles:certificate",
                claim,
                "{1,2,3}",
                cert.map_or("none".into(), |f| c.show(f)),
                cert == Some(m),
            ),
            CheckRow::new("triangles:linearly-related-k=2", claim, true, lr, lr),
        ])
    };
    match run() {
        Ok(r) => rows.extend(r.into_iter().map(|r| r.timed(start))),
        Err(e) => rows.push(CheckRow::errored("triangles", "triangle example", "computable", &e)),
    }

    let start = Instant::now();
    let run = || -> Result<Vec<CheckRow>> {
        let c = labelled(&[&[1, 2, 3], &[3, 4, 5], &[5, 6, 7], &[6, 7, 8], &[8, 9, 10], &[9, 10, 11], &[3, 11, 12]])?;
        let (nu, nu0, nu1) = matching_invariants(&c)?;
        let claim = "seven triangles on twelve vertices";
        Ok(vec![
            CheckRow::new(
                "seven:invariants",
                claim,
                "(3,3,3)",
                format!("({},{},{})", nu.value, nu0.value, nu1.value),
                (nu.value, nu0.value, nu1.value) == (3, 3, 3),
            ),
            CheckRow::new("seven:forest", claim, false, is_forest(&c), !is_forest(&c)),
        ])
    };
    match run() {
        Ok(r) => rows.extend(r.into_iter().map(|r| r.timed(start))),
        Err(e) => rows.push(CheckRow::errored("seven", "seven triangles", "computable", &e)),
    }
    notes.push("the seven-triangle list has nu = 3: {3,11,12} meets {1,2,3}, so no four facets are pairwise disjoint".into());
    (rows, notes)
}

/// Checks the three colon/sum identities along a good leaf order for one `k`.
fn colon_identity_violations(c: &Complex, k: usize) -> Result<Vec<String>> {
    let order = good_leaf_order(c).ok_or_else(|| Error::BadParameters("not a forest".into()))?.order;
    let r = order.len();
    let fs: Vec<VertexSet> = order.iter().map(|&i| c.facets()[i]).collect();
    // Position `p` holds the facet numbered r−p in peeling order.
    let delta = |p: usize| c.subcomplex(&order[..=p]);
    let j_of = |p: usize| Ideal::new(c.labels().to_vec(), fs[p + 1..].to_vec());
    let mut bad = vec![];
    for p in (0..r).rev() {
        let i = r - p;
        let f = fs[p];
        let d = delta(p);
        let j = j_of(p)?;
        let big = squarefree_power(&d, k + 1)?.sum(&j)?;
        let lhs = big.colon(f);
        let rest = d.delete_facet_closed(f)?;
        let rhs = squarefree_power(&rest, k)?.sum(&j.colon(f))?;
        if lhs != rhs {
            bad.push(format!("colon identity fails at i={i}, k={k}: {lhs} vs {rhs}"));
        }
        let lhs = big.add_generator(f);
        let next = if p == 0 { c.empty_like() } else { delta(p - 1) };
        let rhs = squarefree_power(&next, k + 1)?.sum(&j.add_generator(f))?;
        if lhs != rhs {
            bad.push(format!("sum identity fails at i={i}, k={k}: {lhs} vs {rhs}"));
        }
    }
    Ok(bad)
}

fn colon_identities(opts: &VerifyOptions) -> Rows {
    const TRIALS: u64 = 150;
    let results: Vec<Result<(usize, Vec<String>)>> = (0..TRIALS)
        .into_par_iter()
        .map(|i| {
            let p = ForestParams { max_facets: 8, min_size: 1 + (i % 2) as usize, max_size: 4, pure: i % 4 == 0, connected: i % 3 == 0, codim_one: false };
            let c = fuzz_forest(seed_for(opts, 4, i), &p);
            let nu = matching_number_with(&c, &opts.limits)?.value;
            let mut bad = vec![];
            for k in 1..nu.max(2) {
                bad.extend(colon_identity_violations(&c, k)?.into_iter().map(|b| format!("{b} on {}", c.to_json())));
            }
            Ok((nu, bad))
        })
        .collect();
    let (mut n, mut pairs, mut violations) = (0, 0, vec![]);
    for r in results {
        match r {
            Ok((nu, bad)) => {
                n += 1;
                pairs += nu.max(2) - 1;
                violations.extend(bad);
            }
            Err(e) if e.is_budget() => {}
            Err(e) => violations.push(e.to_string()),
        }
    }
    let rows = vec![tally(
        "fuzzed-forests",
        "colon and sum identities along a good leaf order hold as ideal equalities",
        n,
        100,
        &violations,
    )];
    (rows, vec![format!("{pairs} (forest, k) pairs checked")])
}

fn regularity_lower_bound(opts: &VerifyOptions) -> Rows {
    const TRIALS: u64 = 120;
    let results: Vec<Result<(usize, Vec<String>)>> = (0..TRIALS)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(opts, 5, i));
            let t = rng.gen_range(2..=4usize);
            let universe = rng.gen_range(t + 2..=12usize);
            let facets = rng.gen_range(2..=10usize);
            let c = fuzz_pure_complex(rng.gen(), universe, t, facets);
            let nu1 = induced_matching_number_with(&c, &opts.limits)?.value;
            let mut bad = vec![];
            for k in 1..=nu1 {
                let ideal = squarefree_power(&c, k)?;
                let (table, agree) = tables_both(&ideal, &opts.limits)?;
                let reg = table.regularity().map_or(0, |r| r - 1);
                let bound = k - 1 + (t - 1) * nu1;
                if reg < bound {
                    bad.push(format!("k={k}: reg {reg} < {bound} on {}", c.to_json()));
                }
                if !agree {
                    bad.push(format!("k={k}: GF(2) and Q disagree on {}", c.to_json()));
                }
            }
            Ok((nu1, bad))
        })
        .collect();
    let (mut n, mut violations) = (0, vec![]);
    let mut pairs = 0;
    for r in results {
        match r {
            Ok((nu1, bad)) => {
                n += 1;
                pairs += nu1;
                violations.extend(bad);
            }
            Err(e) if e.is_budget() => {}
            Err(e) => violations.push(e.to_string()),
        }
    }
    let rows = vec![tally(
        "fuzzed-pure-complexes",
        "reg(R/I^[k]) >= k-1+(t-1)nu1 for k <= nu1, GF(2) and Q agree",
        n,
        100,
        &violations,
    )];
    (rows, vec![format!("{pairs} (complex, k) pairs checked")])
}

fn oracle(opts: &VerifyOptions) -> Rows {
    const TRIALS: u64 = 120;
    let results: Vec<Result<Vec<String>>> = (0..TRIALS)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(opts, 6, i));
            let universe = rng.gen_range(4..=12usize);
            let d = rng.gen_range(1..=3usize.min(universe - 1));
            let gens = rng.gen_range(1..=6usize);
            let ideal = fuzz_equigenerated_ideal(rng.gen(), universe, d, gens);
            let lattice = lcm_lattice_with(&ideal, &opts.limits)?;
            let n = ideal.num_generators();
            let top = ideal.support().len();
            let mut bad = vec![];
            for field in [Field::Gf2, Field::Rationals] {
                let table = betti_table_with(&ideal, field, DegreeFilter::default(), &opts.limits)?;
                for i in 0..n {
                    for deg in d + i..=top {
                        let h = betti_hochster_with(&ideal, i, deg, field, &opts.limits)?;
                        let mut g = 0;
                        for &m in lattice.elements().iter().filter(|m| m.len() == deg) {
                            g += betti_gpw_in(&lattice, i, m, field, &opts.limits)?;
                        }
                        if h != g || h != table.get(i, deg) {
                            bad.push(format!("{field} beta_{{{i},{deg}}}: hochster {h}, lattice {g}, table {} on {ideal}", table.get(i, deg)));
                        }
                    }
                }
            }
            let a = betti_table_with(&ideal, Field::Gf2, DegreeFilter::default(), &opts.limits)?;
            let b = betti_table_with(&ideal, Field::Rationals, DegreeFilter::default(), &opts.limits)?;
            if a.entries != b.entries {
                bad.push(format!("GF(2) and Q tables differ on {ideal}"));
            }
            Ok(bad)
        })
        .collect();
    let (mut n, mut violations) = (0, vec![]);
    for r in results {
        match r {
            Ok(bad) => {
                n += 1;
                violations.extend(bad);
            }
            Err(e) if e.is_budget() => {}
            Err(e) => violations.push(e.to_string()),
        }
    }
    let rows = vec![tally(
        "fuzzed-ideals",
        "Hochster sums, lcm-lattice intervals and Koszul tables agree for all (i, d), over GF(2) and Q",
        n,
        100,
        &violations,
    )];
    (rows, vec![])
}

fn sets(lists: &[&[usize]]) -> Vec<VertexSet> {
    lists.iter().map(|l| l.iter().copied().collect()).collect()
}

fn cone(facets: &[VertexSet], apex: usize) -> Vec<VertexSet> {
    if facets.is_empty() {
        return vec![VertexSet::singleton(apex)];
    }
    facets.iter().map(|f| f.union(VertexSet::singleton(apex))).collect()
}

fn homology_sanity(opts: &VerifyOptions) -> Rows {
    let tetra: Vec<VertexSet> = sets(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
    let cases: Vec<(&str, Vec<VertexSet>, Vec<usize>)> = vec![
        ("empty-face", vec![VertexSet::EMPTY], vec![1]),
        ("two-points", sets(&[&[0], &[1]]), vec![0, 1]),
        ("circle", sets(&[&[0, 1], &[1, 2], &[0, 2]]), vec![0, 0, 1]),
        ("sphere", tetra.clone(), vec![0, 0, 0, 1]),
        ("two-circles", sets(&[&[0, 1], &[1, 2], &[0, 2], &[2, 3], &[3, 4], &[2, 4]]), vec![0, 0, 2]),
        ("cone-empty-face", cone(&[], 9), vec![0, 0]),
        ("cone-two-points", cone(&sets(&[&[0], &[1]]), 9), vec![0, 0, 0]),
        ("cone-circle", cone(&sets(&[&[0, 1], &[1, 2], &[0, 2]]), 9), vec![0, 0, 0, 0]),
        ("cone-sphere", cone(&tetra, 9), vec![0, 0, 0, 0, 0]),
    ];
    let mut rows = vec![];
    for (name, facets, want) in cases {
        for field in [Field::Gf2, Field::Rationals] {
            let start = Instant::now();
            let claim = "reduced homology of a standard space";
            let id = format!("{name}:{field}");
            let expected = format!("{want:?}");
            let row = match reduced_homology_dims_of(&facets, field, &opts.limits) {
                Ok(mut got) => {
                    got.resize(want.len().max(got.len()), 0);
                    let mut w = want.clone();
                    w.resize(got.len(), 0);
                    CheckRow::new(id, claim, expected, format!("{got:?}"), got == w)
                }
                Err(e) => CheckRow::errored(id, claim, expected, &e),
            };
            rows.push(row.timed(start));
        }
    }
    // Six-vertex projective plane: torsion shows up only in characteristic 2.
    let rp2 = sets(&[
        &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5],
        &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[2, 4, 5], &[1, 3, 5],
    ]);
    for (field, want) in [(Field::Gf2, vec![0, 0, 1, 1]), (Field::Rationals, vec![0, 0, 0, 0])] {
        let start = Instant::now();
        let id = format!("projective-plane:{field}");
        let claim = "reduced homology of the projective plane depends on the characteristic";
        let row = match reduced_homology_dims_of(&rp2, field, &opts.limits) {
            Ok(got) => CheckRow::new(id, claim, format!("{want:?}"), format!("{got:?}"), got == want),
            Err(e) => CheckRow::errored(id, claim, format!("{want:?}"), &e),
        };
        rows.push(row.timed(start));
    }
    let notes = vec!["vectors are indexed from degree -1".to_string()];
    (rows, notes)
}

/// `reg(R/I_{n,3}^{[ν−1]})` for `n = 7..14`.
const SECOND_HIGHEST: &[(usize, usize)] = &[(7, 4), (8, 4), (9, 5), (10, 7), (11, 7), (12, 8), (13, 10), (14, 10)];

fn second_highest_power(opts: &VerifyOptions) -> Rows {
    let claim = "reg(R/I^[nu-1]) of the 3-path ideal: 3nu-2 when nu = nu0, 3(nu-1)-1 when nu-1 = nu0";
    let mut notes = vec![];
    let rows: Vec<CheckRow> = SECOND_HIGHEST
        .par_iter()
        .map(|&(n, want)| {
            let start = Instant::now();
            let inv = closed_invariants(n, 3).expect("n >= 3");
            let id = format!("n={n},nu={},nu0={}", inv.nu, inv.nu0);
            let rule = if inv.nu == inv.nu0 { 3 * inv.nu - 2 } else { 3 * (inv.nu - 1) - 1 };
            let got = path_complex(n, 3).and_then(|c| squarefree_power(&c, inv.nu - 1)).and_then(|i| {
                Ok((quotient_regularity(&i, Field::Gf2, &opts.limits)?, quotient_regularity(&i, Field::Rationals, &opts.limits)?))
            });
            match got {
                Ok((a, b)) => CheckRow::new(id, claim, want, format!("{a} (Q: {b})"), a == want && b == want && rule == want),
                Err(e) => CheckRow::errored(id, claim, want, &e),
            }
            .timed(start)
        })
        .collect();
    let off: Vec<String> = SECOND_HIGHEST
        .iter()
        .filter_map(|&(n, want)| {
            let inv = closed_invariants(n, 3).ok()?;
            (inv.nu - 1 == inv.nu0 && 3 * inv.nu - 1 != want).then(|| format!("n={n}: 3nu-1 = {} but reg = {want}", 3 * inv.nu - 1))
        })
        .collect();
    if !off.is_empty() {
        notes.push(format!(
            "DISCREPANCY: the alternative value t*nu-1 for the case nu-1 = nu0 disagrees with the general path formula and with computation ({}); the reconciled value t(nu-1)-1 is checked instead",
            off.join("; ")
        ));
    }
    (rows, notes)
}

/// Pairs checked, skips, and `(lower bound?, counterexample)` per trial.
type ProbeTrial = (usize, usize, Vec<(bool, Value)>);

/// Outcome of fuzzing the two-sided regularity bound on trees.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    /// (complex, k) pairs whose regularity was computed.
    pub checked: usize,
    pub skipped: usize,
    pub lower_violations: usize,
    pub upper_violations: usize,
    pub counterexamples: Vec<Value>,
}

impl ProbeReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} trials, {} (tree, k) pairs checked, {} skipped; lower bound violations: {}, upper bound violations: {}",
            self.trials, self.checked, self.skipped, self.lower_violations, self.upper_violations
        )?;
        for c in &self.counterexamples {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

/// Fuzzes pure simplicial trees and t-path complexes of rooted trees and
/// compares `reg(R/I^{[k]})` with `k−1+(t−1)ν₁` and `k−1+(t−1)ν` for all
/// `1 ≤ k ≤ ν`. Informational: violations are collected, never raised.
pub fn probe_conjecture(trials: usize, seed: u64, limits: &Limits) -> ProbeReport {
    let per: Vec<ProbeTrial> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let t = rng.gen_range(2..=3usize);
            let c = if i % 2 == 0 {
                let p = ForestParams { max_facets: 7, min_size: t, max_size: t, pure: true, connected: true, codim_one: false };
                fuzz_forest(rng.gen(), &p)
            } else {
                let tree = fuzz_rooted_tree(rng.gen(), rng.gen_range(t..=12));
                match rooted_tree_path_complex(&tree, t) {
                    Ok(c) if !c.is_empty() => c,
                    _ => return (0, 1, vec![]),
                }
            };
            let run = || -> Result<(usize, Vec<(bool, Value)>)> {
                let nu = matching_number_with(&c, limits)?.value;
                let nu1 = induced_matching_number_with(&c, limits)?.value;
                let mut found = vec![];
                for k in 1..=nu {
                    let reg = quotient_regularity(&squarefree_power(&c, k)?, Field::Gf2, limits)?;
                    let (lo, hi) = (k - 1 + (t - 1) * nu1, k - 1 + (t - 1) * nu);
                    for (lower, broken) in [(true, reg < lo), (false, reg > hi)] {
                        if broken {
                            found.push((lower, json!({"complex": c.to_json(), "k": k, "reg": reg, "lower": lo, "upper": hi})));
                        }
                    }
                }
                Ok((nu, found))
            };
            match run() {
                Ok((nu, found)) => (nu, 0, found),
                Err(_) => (0, 1, vec![]),
            }
        })
        .collect();
    let mut report = ProbeReport { trials, ..ProbeReport::default() };
    for (checked, skipped, found) in per {
        report.checked += checked;
        report.skipped += skipped;
        for (lower, v) in found {
            if lower {
                report.lower_violations += 1;
            } else {
                report.upper_violations += 1;
            }
            report.counterexamples.push(v);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::facet_ideal;

    fn quick() -> VerifyOptions {
        VerifyOptions { caps: PathCaps([(2, 8), (3, 9)].into_iter().collect()), ..VerifyOptions::default() }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &quick()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn small_suites_pass() {
        for name in ["path-invariants", "examples", "homology-sanity", "second-highest-power"] {
            let r = run_suite(name, &quick()).unwrap();
            assert!(r.passed_strict(), "{r}");
        }
    }

    #[test]
    fn discrepancy_note_is_emitted() {
        let r = run_suite("second-highest-power", &quick()).unwrap();
        assert!(r.notes.iter().any(|n| n.starts_with("DISCREPANCY") && n.contains("n=9")));
    }

    #[test]
    fn colon_identities_on_a_path() {
        let c = path_complex(7, 2).unwrap();
        for k in 1..3 {
            assert!(colon_identity_violations(&c, k).unwrap().is_empty());
        }
    }

    #[test]
    fn report_rendering() {
        let r = SuiteReport {
            suite: "s".into(),
            rows: vec![CheckRow::new("a", "c", 1, 2, false).with_note("why")],
            notes: vec!["n".into()],
            millis: 5,
        };
        assert!(!r.passed());
        assert_eq!(r.to_string(), "s [FAIL] 0 pass, 1 fail, 0 skip (5 ms)\n  FAIL a: expected 1, got 2 (0 ms)  # why\n  NOTE n\n");
        assert_eq!(r.to_json()["rows"][0]["status"], "fail");
    }

    #[test]
    fn probe_is_deterministic() {
        let a = probe_conjecture(6, 3, &Limits::default());
        let b = probe_conjecture(6, 3, &Limits::default());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.lower_violations, 0);
    }

    #[test]
    fn upper_bound_fails_on_a_star_of_triangles() {
        let c = labelled(&[&[1, 2, 5], &[1, 4, 8], &[1, 6, 9]]).unwrap();
        let nu = matching_number_with(&c, &Limits::default()).unwrap().value;
        let reg = quotient_regularity(&facet_ideal(&c), Field::Rationals, &Limits::default()).unwrap();
        assert_eq!((nu, reg), (1, 4));
        assert!(reg > (3 - 1) * nu);
    }

    #[test]
    fn facet_ideal_of_triangles() {
        assert_eq!(facet_ideal(&example_triangles()).num_generators(), 15);
    }
}
