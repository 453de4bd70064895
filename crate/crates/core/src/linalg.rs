//! Row spans of matrices over `Z/p^(m+1)` and their Howell normal form.
//!
//! Over a chain ring, Hermite-style elimination is not enough to compare
//! spans: a row `(2, 1)` over `Z/4` also spans `(0, 2)`, which has more
//! leading zeros than any row of the echelon form. The Howell form adds
//! those annihilator multiples back in, after which the form is unique and
//! span equality is entrywise equality.

use std::fmt;

use crate::chainring::{ChainRing, RingScalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: ChainRing,
    ncols: usize,
    rows: Vec<Vec<RingScalar>>,
}

impl Matrix {
    pub fn new(ring: ChainRing, ncols: usize, rows: Vec<Vec<RingScalar>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Matrix { ring, ncols, rows })
    }

    pub fn from_integers(ring: ChainRing, ncols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&a| ring.normalize(a as i128)).collect())
            .collect();
        Self::new(ring, ncols, rows)
    }

    pub fn empty(ring: ChainRing, ncols: usize) -> Self {
        Matrix {
            ring,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<RingScalar>] {
        &self.rows
    }

    pub fn push_row(&mut self, row: Vec<RingScalar>) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Raw integer entries, handy for golden comparisons.
    pub fn to_values(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.value()).collect())
            .collect()
    }

    /// Howell normal form of the row span.
    ///
    /// Rows are ordered by pivot column; each pivot is exactly `p^j`, entries
    /// above a pivot `p^j` lie in `[0, p^j)`, and zero rows are dropped.
    pub fn howell_form(&self) -> Matrix {
        let ring = self.ring;
        let mut work: Vec<Vec<RingScalar>> = self
            .rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let mut pivots: Vec<(usize, Vec<RingScalar>)> = Vec::new();

        for col in 0..self.ncols {
            let Some(idx) = work
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by_key(|(i, r)| (r[col].valuation(), *i))
                .map(|(i, _)| i)
            else {
                continue;
            };
            let mut pivot = work.remove(idx);
            let unit = ring.unit_part(pivot[col]).expect("nonzero pivot");
            let unit_inv = ring.invert(unit).expect("unit part is a unit");
            scale_row(ring, &mut pivot, unit_inv);
            let j = pivot[col].valuation();

            for row in work.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let q = ring
                    .divide_exact(row[col], pivot[col])
                    .expect("pivot has minimal valuation");
                axpy(ring, row, q, &pivot);
            }
            if j > 0 {
                let mut ann = pivot.clone();
                scale_row(ring, &mut ann, ring.p_power(ring.length() - j));
                work.push(ann);
            }
            work.retain(|r| r.iter().any(|x| !x.is_zero()));
            pivots.push((col, pivot));
        }

        for i in 0..pivots.len() {
            let (col, pivot_row) = pivots[i].clone();
            let modulus = pivot_row[col].value();
            for k in 0..i {
                let entry = pivots[k].1[col].value();
                let q = entry / modulus;
                if q != 0 {
                    axpy(ring, &mut pivots[k].1, ring.from_u64(q), &pivot_row);
                }
            }
        }

        Matrix {
            ring,
            ncols: self.ncols,
            rows: pivots.into_iter().map(|(_, r)| r).collect(),
        }
    }

    pub fn spans_equal(&self, other: &Matrix) -> Result<bool> {
        if self.ncols != other.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: other.ncols,
            });
        }
        Ok(self.howell_form().rows == other.howell_form().rows)
    }

    /// Whether `v` lies in the row span.
    pub fn span_contains(&self, v: &[RingScalar]) -> Result<bool> {
        Ok(self.howell_form().reduce(v)?.iter().all(|x| x.is_zero()))
    }

    /// Reduces `v` against a matrix already in Howell form, returning the
    /// remainder. The remainder is zero exactly when `v` is in the span.
    pub fn reduce(&self, v: &[RingScalar]) -> Result<Vec<RingScalar>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        let ring = self.ring;
        let mut rem = v.to_vec();
        for row in &self.rows {
            let Some(col) = row.iter().position(|x| !x.is_zero()) else {
                continue;
            };
            if rem[col].is_zero() {
                continue;
            }
            match ring.divide_exact(rem[col], row[col]) {
                Some(q) => axpy(ring, &mut rem, q, row),
                None => return Ok(rem),
            }
        }
        Ok(rem)
    }
}

fn scale_row(ring: ChainRing, row: &mut [RingScalar], c: RingScalar) {
    for x in row.iter_mut() {
        *x = ring.mul(*x, c);
    }
}

/// `row -= q * other`
fn axpy(ring: ChainRing, row: &mut [RingScalar], q: RingScalar, other: &[RingScalar]) {
    for (x, y) in row.iter_mut().zip(other) {
        if !y.is_zero() {
            *x = ring.sub(*x, ring.mul(q, *y));
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
