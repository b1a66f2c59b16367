//! Exact integer sequences and the numeric tests applied to them.
//!
//! `IntVector` carries f-, h-, and g-vectors as well as transformed rows of
//! descent tables. Entries are arbitrary-precision integers so binomial
//! transforms and growth bounds stay exact at any size.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Binomial coefficient C(n, k) with an arbitrary-precision row index.
///
/// Returns 0 when n < k. Each step of the running product divides exactly:
/// C(n, j) * (n - j) is divisible by j + 1.
pub fn binomial(n: &BigInt, k: usize) -> BigInt {
    if n < &BigInt::from(k) {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - BigInt::from(j)) / BigInt::from(j + 1);
    }
    acc
}

/// C(n, k) for machine-sized inputs, exact via big integers.
pub fn binomial_u(n: usize, k: usize) -> BigInt {
    binomial(&BigInt::from(n), k)
}

/// A sequence of exact integers, printed as `(a0, a1, ...)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigInt> {
        self.0.iter()
    }

    /// Decimal rendering of each entry, used by the JSON outputs where
    /// numbers past 2^53 would lose precision.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }

    /// g-vector of an h-vector of length d+1: g_0 = 1 and
    /// g_i = h_i - h_{i-1} for 1 <= i <= floor(d/2).
    pub fn g_vector(&self) -> IntVector {
        assert!(!self.0.is_empty(), "g_vector needs a non-empty h-vector");
        let d = self.0.len() - 1;
        let mut g = vec![BigInt::one()];
        for i in 1..=d / 2 {
            g.push(&self.0[i] - &self.0[i - 1]);
        }
        IntVector(g)
    }

    /// First index at which the sequence stops being an M-sequence, if any.
    ///
    /// Checks, in order of position: a_0 = 1, non-negativity, the rule that a
    /// zero entry forces all later entries to zero, and the growth bound
    /// a_{i+1} <= bound(a_i, i) from the i-th binomial representation.
    pub fn m_sequence_violation(&self) -> Option<usize> {
        if self.0.is_empty() || !self.0[0].is_one() {
            return Some(0);
        }
        for i in 1..self.0.len() {
            let prev = &self.0[i - 1];
            let cur = &self.0[i];
            if cur.is_negative() {
                return Some(i);
            }
            if prev.is_zero() && !cur.is_zero() {
                return Some(i);
            }
            if i >= 2 && *cur > macaulay_bound(prev, i - 1) {
                return Some(i);
            }
        }
        None
    }

    pub fn is_m_sequence(&self) -> bool {
        self.m_sequence_violation().is_none()
    }

    /// All indices attaining the maximum, plus whether the sequence is
    /// unimodal (weakly increasing up to some index, weakly decreasing after).
    pub fn peak_positions(&self) -> (Vec<usize>, bool) {
        if self.0.is_empty() {
            return (Vec::new(), true);
        }
        let max = self.0.iter().max().unwrap();
        let positions = (0..self.0.len()).filter(|&i| &self.0[i] == max).collect();
        let mut i = 0;
        while i + 1 < self.0.len() && self.0[i] <= self.0[i + 1] {
            i += 1;
        }
        while i + 1 < self.0.len() && self.0[i] >= self.0[i + 1] {
            i += 1;
        }
        (positions, i + 1 == self.0.len())
    }

    /// True when the reversed sequence equals the sequence.
    pub fn is_palindromic(&self) -> bool {
        let n = self.0.len();
        (0..n / 2).all(|i| self.0[i] == self.0[n - 1 - i])
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64(&v)
    }
}

impl FromIterator<BigInt> for IntVector {
    fn from_iter<T: IntoIterator<Item = BigInt>>(iter: T) -> Self {
        IntVector(iter.into_iter().collect())
    }
}

/// Macaulay growth bound: writing a = C(n_i, i) + C(n_{i-1}, i-1) + ... with
/// n_i > n_{i-1} > ... >= 1 (the greedy i-th binomial representation), the
/// next entry of an M-sequence may be at most
/// C(n_i + 1, i + 1) + C(n_{i-1} + 1, i) + ....
pub fn macaulay_bound(a: &BigInt, i: usize) -> BigInt {
    assert!(i >= 1, "binomial representation index must be at least 1");
    assert!(!a.is_negative(), "M-sequence entries are non-negative");
    let mut rem = a.clone();
    let mut k = i;
    let mut bound = BigInt::zero();
    while rem > BigInt::zero() && k >= 1 {
        let n = if k == 1 {
            // C(n, 1) = n, so the greedy term absorbs everything left.
            rem.clone()
        } else {
            max_row_with_binomial_at_most(&rem, k)
        };
        bound += binomial(&(&n + 1), k + 1);
        rem -= binomial(&n, k);
        k -= 1;
    }
    debug_assert!(
        rem.is_zero(),
        "greedy binomial representation must exhaust a"
    );
    bound
}

/// Largest n with C(n, k) <= limit, for limit >= 1 and k >= 2.
fn max_row_with_binomial_at_most(limit: &BigInt, k: usize) -> BigInt {
    let mut hi = BigInt::from(k);
    while binomial(&(&hi * 2), k) <= *limit {
        hi *= 2;
    }
    // invariant: C(lo, k) <= limit < C(hi + 1, k) with lo <= hi < lo * 2
    let mut lo = hi.clone();
    let mut hi = &hi * 2;
    while lo < hi {
        let mid: BigInt = (&lo + &hi + 1) / 2;
        if binomial(&mid, k) <= *limit {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// h-vector from an f-vector (entry 0 counts the empty face):
/// h_j = sum_i (-1)^{j-i} C(d-i, j-i) f_{i-1}.
pub fn h_from_f(f: &IntVector) -> IntVector {
    assert!(!f.is_empty(), "f-vector must be non-empty");
    let d = f.len() - 1;
    (0..=d)
        .map(|j| {
            let mut acc = BigInt::zero();
            for i in 0..=j {
                let term = binomial_u(d - i, j - i) * f.get(i);
                if (j - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}

/// f-vector from an h-vector: f_{i-1} = sum_k C(d-k, i-k) h_k.
pub fn f_from_h(h: &IntVector) -> IntVector {
    assert!(!h.is_empty(), "h-vector must be non-empty");
    let d = h.len() - 1;
    (0..=d)
        .map(|i| {
            let mut acc = BigInt::zero();
            for k in 0..=i {
                acc += binomial_u(d - k, i - k) * h.get(k);
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVector {
        IntVector::from_i64(v)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial_u(5, 2), BigInt::from(10));
        assert_eq!(binomial_u(0, 0), BigInt::from(1));
        assert_eq!(binomial_u(3, 5), BigInt::from(0));
        assert_eq!(
            binomial(&BigInt::from(50), 25).to_string(),
            "126410606437752"
        );
    }

    #[test]
    fn h_from_f_examples() {
        // boundary of the 3-simplex
        assert_eq!(h_from_f(&iv(&[1, 4, 6, 4])), iv(&[1, 1, 1, 1]));
        // two triangles sharing an edge
        assert_eq!(h_from_f(&iv(&[1, 4, 5, 2])), iv(&[1, 1, 0, 0]));
        // 2-skeleton of the 4-simplex
        assert_eq!(h_from_f(&iv(&[1, 5, 10, 10])), iv(&[1, 2, 3, 4]));
        // hexagon
        assert_eq!(h_from_f(&iv(&[1, 6, 6])), iv(&[1, 4, 1]));
    }

    /// Independent route: expand sum_i f_{i-1} (x-1)^{d-i} with explicit
    /// polynomial arithmetic and read off the coefficients.
    fn h_by_polynomial_expansion(f: &IntVector) -> IntVector {
        let d = f.len() - 1;
        let mut coeffs = vec![BigInt::zero(); d + 1]; // index = power of x
        for (i, fi) in f.iter().enumerate() {
            let mut pow = vec![BigInt::one()]; // (x-1)^(d-i) built by repeated multiplication
            for _ in 0..d - i {
                let mut next = vec![BigInt::zero(); pow.len() + 1];
                for (k, c) in pow.iter().enumerate() {
                    next[k + 1] += c;
                    next[k] -= c;
                }
                pow = next;
            }
            for (k, c) in pow.iter().enumerate() {
                coeffs[k] += c * fi;
            }
        }
        (0..=d).map(|i| coeffs[d - i].clone()).collect()
    }

    #[test]
    fn h_matches_polynomial_expansion_oracle() {
        for f in [
            iv(&[1, 4, 6, 4]),
            iv(&[1, 4, 5, 2]),
            iv(&[1, 5, 10, 10]),
            iv(&[1, 30, 150, 240, 120]),
            iv(&[1, 3, 2]),
            iv(&[1, 1]),
        ] {
            assert_eq!(h_from_f(&f), h_by_polynomial_expansion(&f), "f = {f}");
        }
    }

    #[test]
    fn f_h_round_trip() {
        for f in [
            iv(&[1, 4, 6, 4]),
            iv(&[1, 7, 12, 6]),
            iv(&[1, 2]),
            iv(&[1, 5, 10, 10, 5]),
        ] {
            assert_eq!(f_from_h(&h_from_f(&f)), f);
        }
    }

    #[test]
    fn g_vector_examples() {
        assert_eq!(iv(&[1, 4, 1]).g_vector(), iv(&[1, 3]));
        assert_eq!(iv(&[1, 22, 33, 4]).g_vector(), iv(&[1, 21]));
        assert_eq!(iv(&[1, 1, 1, 1]).g_vector(), iv(&[1, 0]));
        assert_eq!(iv(&[1, 26, 66, 26, 1]).g_vector(), iv(&[1, 25, 40]));
        assert_eq!(iv(&[1, 0]).g_vector(), iv(&[1]));
        assert_eq!(iv(&[1]).g_vector(), iv(&[1]));
    }

    #[test]
    fn m_sequence_examples() {
        assert!(iv(&[1, 3, 6, 10]).is_m_sequence());
        assert_eq!(iv(&[1, 2, 4]).m_sequence_violation(), Some(2));
        assert!(iv(&[1, 21]).is_m_sequence());
        assert!(iv(&[1]).is_m_sequence());
        assert!(iv(&[1, 0, 0]).is_m_sequence());
        assert_eq!(iv(&[1, 0, 1]).m_sequence_violation(), Some(2));
        assert_eq!(iv(&[0, 1]).m_sequence_violation(), Some(0));
        assert_eq!(iv(&[2, 1]).m_sequence_violation(), Some(0));
        assert_eq!(iv(&[1, -1]).m_sequence_violation(), Some(1));
        assert_eq!(iv(&[1, 25, 40]).m_sequence_violation(), None);
        // a_1 may be any non-negative integer
        assert!(iv(&[1, 1000000]).is_m_sequence());
    }

    #[test]
    fn macaulay_bound_values() {
        // 2 = C(2,1) so the next entry is at most C(3,2) = 3
        assert_eq!(macaulay_bound(&BigInt::from(2), 1), BigInt::from(3));
        assert_eq!(macaulay_bound(&BigInt::from(3), 1), BigInt::from(6));
        assert_eq!(macaulay_bound(&BigInt::from(6), 2), BigInt::from(10));
        assert_eq!(macaulay_bound(&BigInt::from(21), 1), BigInt::from(231));
        // 4 = C(3,2) + C(1,1) -> C(4,3) + C(2,2) = 5
        assert_eq!(macaulay_bound(&BigInt::from(4), 2), BigInt::from(5));
        assert_eq!(macaulay_bound(&BigInt::zero(), 3), BigInt::zero());
    }

    #[test]
    fn peak_examples() {
        let (pos, uni) = iv(&[1, 22, 33, 4]).peak_positions();
        assert_eq!((pos, uni), (vec![2], true));
        let (pos, uni) = iv(&[1, 8, 3, 0]).peak_positions();
        assert_eq!((pos, uni), (vec![1], true));
        let (pos, uni) = iv(&[1, 2, 1, 2]).peak_positions();
        assert_eq!(pos, vec![1, 3]);
        assert!(!uni);
        let (pos, uni) = iv(&[1, 1, 0]).peak_positions();
        assert_eq!((pos, uni), (vec![0, 1], true));
        let (pos, uni) = iv(&[3, 3, 3]).peak_positions();
        assert_eq!((pos, uni), (vec![0, 1, 2], true));
    }

    #[test]
    fn palindromic() {
        assert!(iv(&[1, 26, 66, 26, 1]).is_palindromic());
        assert!(!iv(&[1, 22, 33, 4]).is_palindromic());
        assert!(iv(&[]).is_palindromic());
    }

    #[test]
    fn display_format() {
        assert_eq!(iv(&[1, 22, 33, 4]).to_string(), "(1, 22, 33, 4)");
        assert_eq!(iv(&[]).to_string(), "()");
    }
}
