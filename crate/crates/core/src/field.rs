//! Arithmetic over a prime field F_p and the row-echelon kernel used for
//! rank and coset computations.
//!
//! Elements are `u64` values in [0, p). The modulus is capped below 2^31 so
//! a product plus a carry always fits in a `u64`, which keeps the hot
//! elimination loop free of wide division: reduction uses a precomputed
//! Barrett constant.

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit below 2^31")]
    TooLarge(u64),
}

/// The field F_p for a prime p < 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    barrett: u64, // floor(2^64 / p)
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 31 {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField {
            p,
            barrett: ((1u128 << 64) / p as u128) as u64,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce any u64 modulo p. Barrett estimate is off by at most 2.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.p && b < self.p);
        self.reduce(a * b)
    }

    /// acc + a * b mod p, the fused step of every elimination loop.
    /// Safe because acc < p and a, b < p < 2^31.
    #[inline]
    pub fn fma(&self, acc: u64, a: u64, b: u64) -> u64 {
        self.reduce(acc + a * b)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a non-zero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0 && a < self.p, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Uniform element of [0, p).
    pub fn sample<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A row space kept in echelon form: each stored row is normalized with a
/// leading 1 in its own pivot column and zeros in every earlier column.
///
/// Reduction against the rows zeroes a vector's pivot coordinates, so the
/// reduced vector is the canonical coset representative supported on the
/// non-pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_of_col: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Zero the vector's pivot coordinates; what remains is the canonical
    /// representative of its coset modulo the row space.
    pub fn reduce_in_place(&self, row: &mut [u64], f: &PrimeField) {
        debug_assert_eq!(row.len(), self.cols);
        for c in 0..self.cols {
            if row[c] != 0 {
                if let Some(r) = self.pivot_of_col[c] {
                    let factor = f.neg(row[c]);
                    let pivot_row = &self.rows[r];
                    for j in c..self.cols {
                        row[j] = f.fma(row[j], factor, pivot_row[j]);
                    }
                }
            }
        }
    }

    /// Add a row to the span. Returns true when the rank grows.
    pub fn insert(&mut self, mut row: Vec<u64>, f: &PrimeField) -> bool {
        self.reduce_in_place(&mut row, f);
        let lead = match row.iter().position(|&x| x != 0) {
            Some(c) => c,
            None => return false,
        };
        let scale = f.inv(row[lead]);
        for x in row.iter_mut() {
            *x = f.mul(*x, scale);
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col[col].is_some()
    }

    /// Columns without a pivot, ascending: the coset representative basis.
    pub fn non_pivot_cols(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&c| self.pivot_of_col[c].is_none())
            .collect()
    }
}

/// Rank of an arbitrary list of rows.
pub fn rank_of_rows(
    rows: impl IntoIterator<Item = Vec<u64>>,
    cols: usize,
    f: &PrimeField,
) -> usize {
    let mut ech = Echelon::new(cols);
    for row in rows {
        ech.insert(row, f);
    }
    ech.rank()
}
