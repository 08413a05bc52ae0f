//! Exact sparse matrices over the rationals.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Column-major sparse matrix; each column holds `(row, value)` sorted by row,
/// nonzero values only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixQ {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrixQ { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = SparseMatrixQ::zeros(k, k);
        for i in 0..k {
            m.columns[i].push((i, Rational::one()));
        }
        m
    }

    /// Builds from a dense column; zeros are dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, Rational)>>) -> Self {
        let cols = columns.len();
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (r, v) in col {
                    assert!(r < rows, "row index {r} out of range");
                    *acc.entry(r).or_default() += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrixQ { rows, cols, columns }
    }

    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(c < cols, "column index {c} out of range");
            columns[c].push((r, v));
        }
        let mut m = SparseMatrixQ::from_columns(rows, columns);
        m.cols = cols;
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        SparseMatrixQ::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| {
                row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, Rational)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .binary_search_by_key(&r, |(i, _)| *i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_default()
    }

    /// Entries in `(col, row)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (r.to_owned(), c, v)))
    }

    pub fn transpose(&self) -> SparseMatrixQ {
        SparseMatrixQ::from_triplets(self.cols, self.rows, self.entries().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    /// Permutes rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrixQ {
        SparseMatrixQ::from_triplets(
            self.rows,
            self.cols,
            self.entries().map(|(r, c, v)| (row_perm[r], col_perm[c], v.clone())),
        )
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { left: self.cols, right: v.len() });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            for (r, a) in col {
                out[*r] += a * &v[c];
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparseMatrixQ) -> Result<SparseMatrixQ> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { left: self.cols, right: other.rows });
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, b) in col {
                    for (r, a) in &self.columns[*k] {
                        *acc.entry(*r).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrixQ { rows: self.rows, cols: other.cols, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Coordinate-list export: header `rows cols nnz`, then `row col p/q`
    /// lines sorted by `(col, row)`, 0-based indices.
    pub fn to_coordinate_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn from_coordinate_text(text: &str) -> Result<SparseMatrixQ> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let bad = |what: &str| Error::Parse(format!("matrix: {what}"));
        let header: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("missing header"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| bad("bad header")))
            .collect::<Result<_>>()?;
        let [rows, cols, nnz] = header[..] else { return Err(bad("header must be `rows cols nnz`")) };
        let mut entries = Vec::with_capacity(nnz);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [r, c, v] = parts[..] else { return Err(bad("entry must be `row col p/q`")) };
            let r: usize = r.parse().map_err(|_| bad("bad row"))?;
            let c: usize = c.parse().map_err(|_| bad("bad col"))?;
            if r >= rows || c >= cols {
                return Err(bad("index out of range"));
            }
            entries.push((r, c, v.parse()?));
        }
        if entries.len() != nnz {
            return Err(bad("nnz does not match entry count"));
        }
        Ok(SparseMatrixQ::from_triplets(rows, cols, entries))
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Scales a rational vector by the lcm of its denominators.
fn integer_row(entries: &[(usize, Rational)]) -> IntRow {
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    entries
        .iter()
        .map(|(k, v)| (*k, v.numer() * (&lcm / v.denom())))
        .collect()
}

fn make_primitive(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in row.iter_mut() {
            *v = -std::mem::take(v);
        }
    }
}

/// `a*x - b*y` on sorted sparse rows.
fn combine(x: &IntRow, a: &BigInt, y: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental fraction-free echelon form: pivot rows keyed by leading index.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    /// Reduces `row` by leading entries; inserts it as a new pivot if it survives.
    fn insert(&mut self, mut row: IntRow) -> bool {
        make_primitive(&mut row);
        while let Some((lead, lv)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&lv);
                    row = combine(&row, &(pv / &g), p, &(&lv / &g));
                    make_primitive(&mut row);
                }
                None => {
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }
}

/// Rank over the rationals by fraction-free sparse elimination.
///
/// Vectors along the shorter side are eliminated, sparsest first; each update
/// `r <- p_lead * r - r_lead * p` is followed by division by the row content.
pub fn rank_exact(m: &SparseMatrixQ) -> usize {
    let vectors: Vec<Vec<(usize, Rational)>> = if m.cols <= m.rows {
        m.columns.clone()
    } else {
        m.transpose().columns
    };
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&k| (vectors[k].len(), k));
    let mut ech = Echelon::default();
    let mut rank = 0;
    for k in order {
        if vectors[k].is_empty() {
            continue;
        }
        if ech.insert(integer_row(&vectors[k])) {
            rank += 1;
        }
    }
    rank
}

/// Basis of the null space `{v : M v = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrixQ) -> Vec<Vec<Rational>> {
    let t = m.transpose();
    let mut ech = Echelon::default();
    for c in 0..t.cols {
        let row = t.column(c);
        if !row.is_empty() {
            ech.insert(integer_row(row));
        }
    }
    // back-substitution needs pivot rows as rationals with unit leading entry
    let pivots: Vec<(usize, Vec<(usize, Rational)>)> = ech
        .pivots
        .iter()
        .map(|(&lead, row)| {
            let inv = Rational::from_big(row[0].1.clone()).recip().expect("nonzero pivot");
            (lead, row[1..].iter().map(|(k, v)| (*k, Rational::from_big(v.clone()) * &inv)).collect())
        })
        .collect();
    let pivot_cols: std::collections::BTreeSet<usize> = pivots.iter().map(|(c, _)| *c).collect();
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (lead, rest) in pivots.iter().rev() {
            let mut s = Rational::zero();
            for (k, a) in rest {
                if !v[*k].is_zero() {
                    s += a * &v[*k];
                }
            }
            v[*lead] = -s;
        }
        out.push(v);
    }
    out
}

/// Dense Gaussian elimination over the rationals. Slow; kept as an
/// independent cross-check for [`rank_exact`].
pub fn rank_dense(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][col].recip().expect("nonzero");
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = &row[col] * &inv;
                for (x, pv) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &(&f * pv);
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}
