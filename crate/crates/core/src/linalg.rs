//! Exact dense linear algebra over the rationals.
//!
//! Matrices are small (at most a few hundred columns), so everything is
//! dense Gauss-Jordan elimination on [`BigRational`] entries. No floating
//! point is used anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Coordinate vector with rational entries.
pub type QVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` with `q > 0`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num.parse().map_err(|_| format!("invalid rational `{s}`"))?;
    let denom = match den {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return Err(format!("denominator must be an unsigned integer in `{s}`"));
            }
            let d: BigInt = d.parse().map_err(|_| format!("invalid rational `{s}`"))?;
            if d.is_zero() {
                return Err(format!("zero denominator in `{s}`"));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

/// Scales a vector to coprime integer entries whose first nonzero entry is
/// positive. The zero vector is returned unchanged.
pub fn make_primitive(v: &mut [Rational]) {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return;
    };
    let negative = first.is_negative();
    let lcm = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let gcd = v
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| {
            acc.gcd(&(x.numer() * (&lcm / x.denom())))
        });
    let mut scale = Rational::new(lcm, gcd);
    if negative {
        scale = -scale;
    }
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * &scale;
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: QMatrix,
    /// Strictly increasing pivot columns, one per nonzero row.
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.matrix.cols - self.pivots.len());
        let mut p = self.pivots.iter().peekable();
        for c in 0..self.matrix.cols {
            if p.peek() == Some(&&c) {
                p.next();
            } else {
                free.push(c);
            }
        }
        free
    }
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Appends the columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &QMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot place {} rows next to {} rows",
                other.rows, self.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Self::new(self.rows, cols, entries)
    }

    /// Stacks the rows of `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot stack {} columns under {} columns",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Self::new(self.rows + other.rows, self.cols, entries)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Parses the fixture matrix format: `rows cols` on the first line,
    /// then row-major whitespace-separated rationals.
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse {
            source_name: source_name.to_string(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate();
        let (header_no, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| perr(1, "empty matrix file".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(perr(header_no + 1, "expected `rows cols`".into()));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| perr(header_no + 1, format!("bad row count `{}`", dims[0])))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| perr(header_no + 1, format!("bad column count `{}`", dims[1])))?;
        let mut entries = Vec::with_capacity(rows * cols);
        let mut last_line = header_no + 1;
        for (no, line) in lines {
            for tok in line.split_whitespace() {
                if entries.len() == rows * cols {
                    return Err(perr(no + 1, format!("extra entry `{tok}`")));
                }
                entries.push(parse_rational(tok).map_err(|m| perr(no + 1, m))?);
            }
            last_line = no + 1;
        }
        if entries.len() != rows * cols {
            return Err(perr(
                last_line,
                format!("expected {} entries, found {}", rows * cols, entries.len()),
            ));
        }
        Self::new(rows, cols, entries)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Prints the fixture matrix format, one matrix row per line.
impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &QMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        let pivot_row: Vec<(usize, Rational)> = (c..cols)
            .filter(|&j| !a[(r, j)].is_zero())
            .map(|j| (j, a[(r, j)].clone()))
            .collect();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for (j, x) in &pivot_row {
                let v = &a[(i, *j)] - &factor * x;
                a[(i, *j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &QMatrix) -> usize {
    rref(m).rank()
}

/// Canonical kernel basis: one vector per free column (in increasing
/// order), built from the unit assignment on that column and then scaled
/// to a primitive integer vector with positive first nonzero entry.
pub fn nullspace_basis(m: &QMatrix) -> Vec<QVector> {
    let r = rref(m);
    r.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (i, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.matrix[(i, f)].clone();
            }
            make_primitive(&mut v);
            v
        })
        .collect()
}

/// Solves `sum c_i basis_i = v`. Returns `None` when `v` is outside the
/// span. When the basis is dependent, free coefficients are set to zero.
pub fn in_column_span(basis: &[QVector], v: &[Rational]) -> Result<Option<QVector>> {
    let n = v.len();
    if let Some((i, b)) = basis.iter().enumerate().find(|(_, b)| b.len() != n) {
        return Err(Error::Dimension(format!(
            "basis vector {i} has length {}, target has length {n}",
            b.len()
        )));
    }
    let mut columns = basis.to_vec();
    columns.push(v.to_vec());
    let aug = QMatrix::from_columns(n, &columns)?;
    let r = rref(&aug);
    let k = basis.len();
    if r.pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut coeffs = vec![Rational::zero(); k];
    for (i, &p) in r.pivots.iter().enumerate() {
        coeffs[p] = r.matrix[(i, k)].clone();
    }
    Ok(Some(coeffs))
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if a.cols != b.rows {
        return Err(Error::Dimension(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = QMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let y = &b[(k, j)];
                if !y.is_zero() {
                    out[(i, j)] += x * y;
                }
            }
        }
    }
    Ok(out)
}
