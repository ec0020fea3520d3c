//! Exact rank of sparse integer matrices over GF(2), GF(p) and ℚ.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

use crate::error::{Error, Result};

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Gf2,
    /// A prime below 2³¹.
    Gfp(u32),
    Rationals,
}

impl Field {
    pub fn gfp(p: u32) -> Result<Field> {
        if p < (1 << 31) && is_prime(p) {
            Ok(Field::Gfp(p))
        } else {
            Err(Error::BadParameters(format!("{p} is not a prime below 2^31")))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Gf2 => 2,
            Field::Gfp(p) => p,
            Field::Rationals => 0,
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `gf2`, `q`, `qq`, `rationals`, and `gfp:P`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "gf2" | "f2" => Ok(Field::Gf2),
            "q" | "qq" | "rationals" => Ok(Field::Rationals),
            _ => {
                let p = s
                    .strip_prefix("gfp:")
                    .or_else(|| s.strip_prefix("gf:"))
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field `{s}`")))?;
                Field::gfp(p)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Gf2 => write!(f, "gf2"),
            Field::Gfp(p) => write!(f, "gfp:{p}"),
            Field::Rationals => write!(f, "q"),
        }
    }
}

/// Column-major sparse matrix with integer entries; each column is sorted by row.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols.len()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                d[r as usize][j] = v;
            }
        }
        d
    }

    /// Product `self · other` as a dense integer matrix.
    pub fn mul_dense(&self, other: &SparseMatrix) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; other.cols.len()]; self.nrows];
        for (j, col) in other.cols.iter().enumerate() {
            for &(k, v) in col {
                for &(i, w) in &self.cols[k as usize] {
                    out[i as usize][j] += w * v;
                }
            }
        }
        out
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Gf2 => rank_gf2(self),
            Field::Gfp(p) => rank_gfp(self, p),
            Field::Rationals => rank_q(self),
        }
    }
}

type Col<T> = Vec<(u32, T)>;

/// Column reduction with pivots at the lowest nonzero row. `combine(c, p)`
/// must cancel the shared lowest entry of `c`; `None` aborts the run.
fn column_reduce<T, F>(nrows: usize, cols: impl Iterator<Item = Col<T>>, mut combine: F) -> Option<usize>
where
    F: FnMut(&Col<T>, &Col<T>) -> Option<Col<T>>,
{
    let mut pivots: Vec<Option<Col<T>>> = (0..nrows).map(|_| None).collect();
    let mut rank = 0;
    for mut c in cols {
        while let Some(&(r, _)) = c.last() {
            match &pivots[r as usize] {
                Some(p) => c = combine(&c, p)?,
                None => {
                    pivots[r as usize] = Some(c);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

/// Merges two sorted sparse columns entrywise with `f`, dropping zeros.
fn merge<T: Clone, F>(a: &Col<T>, b: &Col<T>, mut f: F, zero: impl Fn(&T) -> bool) -> Option<Col<T>>
where
    F: FnMut(Option<&T>, Option<&T>) -> Option<T>,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (row, v) = if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            i += 1;
            (a[i - 1].0, f(Some(&a[i - 1].1), None)?)
        } else if i == a.len() || b[j].0 < a[i].0 {
            j += 1;
            (b[j - 1].0, f(None, Some(&b[j - 1].1))?)
        } else {
            i += 1;
            j += 1;
            (a[i - 1].0, f(Some(&a[i - 1].1), Some(&b[j - 1].1))?)
        };
        if !zero(&v) {
            out.push((row, v));
        }
    }
    Some(out)
}

pub fn rank_gf2(m: &SparseMatrix) -> usize {
    let cols = m.cols.iter().map(|c| c.iter().filter(|e| e.1 % 2 != 0).map(|&(r, _)| (r, ())).collect());
    column_reduce(m.nrows, cols, |a, b| {
        // Symmetric difference of supports.
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                i += 1;
                j += 1;
            }
        }
        Some(out)
    })
    .expect("GF(2) reduction cannot fail")
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn rank_gfp(m: &SparseMatrix, p: u32) -> usize {
    let p = p as u64;
    let cols = m.cols.iter().map(|c| {
        c.iter().map(|&(r, v)| (r, v.rem_euclid(p as i64) as u64)).filter(|e| e.1 != 0).collect()
    });
    column_reduce(m.nrows, cols, |a, b| {
        let factor = a.last().unwrap().1 * pow_mod(b.last().unwrap().1, p - 2, p) % p;
        merge(
            a,
            b,
            |x, y| Some((x.copied().unwrap_or(0) + p - factor * y.copied().unwrap_or(0) % p) % p),
            |v| *v == 0,
        )
    })
    .expect("GF(p) reduction cannot fail")
}

/// `a·c − b·p` with `a, b` chosen from the lowest entries, then divided by
/// the content of the result. `None` on overflow.
fn integer_combine<T>(c: &Col<T>, p: &Col<T>) -> Option<Col<T>>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let cl = &c.last().unwrap().1;
    let pl = &p.last().unwrap().1;
    let g = cl.gcd(pl);
    let a = pl.clone() / g.clone();
    let b = cl.clone() / g;
    let zero = T::zero();
    let mut out = merge(
        c,
        p,
        |x, y| {
            let x = x.unwrap_or(&zero).checked_mul(&a)?;
            let y = y.unwrap_or(&zero).checked_mul(&b)?;
            x.checked_sub(&y)
        },
        |v| v.is_zero(),
    )?;
    let content = out.iter().fold(T::zero(), |g, e| g.gcd(&e.1));
    if !content.is_zero() && !content.is_one() {
        for e in &mut out {
            e.1 = e.1.clone() / content.clone();
        }
    }
    Some(out)
}

/// Fraction-free elimination over ℤ, which has the same rank as over ℚ.
/// Runs in `i128` and restarts with big integers if an entry overflows.
pub fn rank_q(m: &SparseMatrix) -> usize {
    let small = m.cols.iter().map(|c| c.iter().map(|&(r, v)| (r, v as i128)).collect());
    if let Some(r) = column_reduce(m.nrows, small, integer_combine::<i128>) {
        return r;
    }
    let big = m.cols.iter().map(|c| c.iter().map(|&(r, v)| (r, BigInt::from(v))).collect());
    column_reduce(m.nrows, big, integer_combine::<BigInt>).expect("big integers do not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(d: &[&[i64]]) -> SparseMatrix {
        let nrows = d.len();
        let ncols = d.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| d[i][j] != 0).map(|i| (i as u32, d[i][j])).collect())
            .collect();
        SparseMatrix { nrows, cols }
    }

    #[test]
    fn ranks_depend_on_characteristic() {
        let m = from_dense(&[&[2, 0], &[0, 3]]);
        assert_eq!(m.rank(Field::Rationals), 2);
        assert_eq!(m.rank(Field::Gf2), 1);
        assert_eq!(m.rank(Field::Gfp(3)), 1);
        assert_eq!(m.rank(Field::Gfp(5)), 2);
        let sing = from_dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(sing.rank(Field::Rationals), 2);
        assert_eq!(sing.rank(Field::Gfp(7)), 2);
        assert_eq!(sing.rank(Field::Gf2), 2);
        assert_eq!(SparseMatrix::default().rank(Field::Rationals), 0);
    }

    #[test]
    fn big_integer_fallback() {
        let big = 1i64 << 62;
        let m = from_dense(&[&[big, big - 1, 3], &[big - 1, big, 5], &[7, 11, big - 3]]);
        let small = m.cols.iter().map(|c| c.iter().map(|&(r, v)| (r, v as i128)).collect());
        assert_eq!(column_reduce(m.nrows, small, integer_combine::<i128>), None);
        assert_eq!(m.rank(Field::Rationals), 3);
        let m = from_dense(&[&[big, big - 1], &[2 * (big / 2), big - 1]]);
        assert_eq!(m.rank(Field::Rationals), 1);
    }

    #[test]
    fn fields_parse() {
        assert_eq!("gf2".parse::<Field>().unwrap(), Field::Gf2);
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("gfp:101".parse::<Field>().unwrap(), Field::Gfp(101));
        assert!("gfp:100".parse::<Field>().is_err());
        assert!("reals".parse::<Field>().is_err());
        assert_eq!(Field::Gfp(7).to_string(), "gfp:7");
    }

    /// Rank by dense Gaussian elimination over f64 on small, well-conditioned inputs.
    fn float_rank(d: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<f64>> = d.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
        let (n, m) = (a.len(), a.first().map_or(0, |r| r.len()));
        let mut rank = 0;
        for col in 0..m {
            let Some(piv) = (rank..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())) else { break };
            if a[piv][col].abs() < 1e-9 {
                continue;
            }
            a.swap(rank, piv);
            for i in 0..n {
                if i != rank {
                    let f = a[i][col] / a[rank][col];
                    for k in 0..m {
                        a[i][k] -= f * a[rank][k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn random_small_matrices_agree_with_float_rank() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..7);
            let m = rng.gen_range(1..7);
            let d: Vec<Vec<i64>> =
                (0..n).map(|_| (0..m).map(|_| if rng.gen_bool(0.5) { rng.gen_range(-2..=2) } else { 0 }).collect()).collect();
            let rows: Vec<&[i64]> = d.iter().map(|r| r.as_slice()).collect();
            let sm = from_dense(&rows);
            assert_eq!(sm.rank(Field::Rationals), float_rank(&d), "{d:?}");
            assert!(sm.rank(Field::Gfp(2)) == sm.rank(Field::Gf2));
        }
    }
}
