//! Refined descent statistics: A(d, i, j) counts permutations of [d] with i
//! descents and first letter j.
//!
//! Tables are built either by direct enumeration of S_d (budgeted) or by a
//! three-term recurrence that matches the enumeration entrywise and scales
//! past it. The row transform these tables induce sends the h-vector of a
//! complex to the h-vector of its barycentric subdivision, which is the
//! bridge between this module and [`crate::complex`].

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::vectors::IntVector;

/// Largest d for which `a_table_bruteforce` will enumerate S_d by default.
pub const DEFAULT_ENUMERATION_BUDGET: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerianError {
    #[error("d must be at least 1")]
    ZeroDimension,
    #[error("d = {d} exceeds the enumeration budget {budget}")]
    BudgetExceeded { d: usize, budget: usize },
    #[error("input is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("h-vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("entry {index} is negative")]
    NegativeEntry { index: usize },
}

/// Number of positions k with perm(k) > perm(k+1).
pub fn descent_count(perm: &[u32]) -> Result<usize, EulerianError> {
    let d = perm.len();
    let mut seen = vec![false; d];
    for &x in perm {
        if x == 0 || x as usize > d || seen[x as usize - 1] {
            return Err(EulerianError::NotAPermutation(d));
        }
        seen[x as usize - 1] = true;
    }
    if d == 0 {
        return Err(EulerianError::NotAPermutation(0));
    }
    Ok(perm.windows(2).filter(|w| w[0] > w[1]).count())
}

/// The d x d table of refined descent counts. Rows are descent numbers
/// i = 0..d, columns are first letters j = 1..=d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianTable {
    d: usize,
    entries: Vec<BigInt>, // row-major, entries[i * d + (j - 1)]
}

impl EulerianTable {
    pub fn d(&self) -> usize {
        self.d
    }

    /// A(d, i, j): permutations with i descents and first letter j.
    pub fn a(&self, i: usize, j: usize) -> &BigInt {
        assert!(
            i < self.d && (1..=self.d).contains(&j),
            "A({}, {i}, {j}) out of range",
            self.d
        );
        &self.entries[i * self.d + (j - 1)]
    }

    /// Row of the table as a vector over j = 1..=d.
    pub fn row(&self, i: usize) -> IntVector {
        (1..=self.d).map(|j| self.a(i, j).clone()).collect()
    }

    /// CSV rendering: one row per descent count, columns j = 1..=d.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.d {
            let row = (1..=self.d).map(|j| self.a(i, j).to_string()).join(",");
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    /// JSON rendering with decimal-string entries (JSON numbers would lose
    /// precision past 2^53).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "d": self.d,
            "rows": (0..self.d)
                .map(|i| (1..=self.d).map(|j| self.a(i, j).to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    /// Entries ordered by (descent count ascending, first letter descending),
    /// the order in which the table reads as one unimodal palindrome.
    pub fn flatten(&self) -> IntVector {
        let mut seq = Vec::with_capacity(self.d * self.d);
        for i in 0..self.d {
            for j in (1..=self.d).rev() {
                seq.push(self.a(i, j).clone());
            }
        }
        IntVector::new(seq)
    }
}

/// Build A(d, *, *) by enumerating all of S_d. Exact but exponential: d may
/// not exceed the budget.
pub fn a_table_bruteforce(d: usize, budget: usize) -> Result<EulerianTable, EulerianError> {
    if d == 0 {
        return Err(EulerianError::ZeroDimension);
    }
    if d > budget {
        return Err(EulerianError::BudgetExceeded { d, budget });
    }
    let mut counts = vec![0u64; d * d];
    for perm in (1..=d as u32).permutations(d) {
        let des = perm.windows(2).filter(|w| w[0] > w[1]).count();
        counts[des * d + (perm[0] as usize - 1)] += 1;
    }
    Ok(EulerianTable {
        d,
        entries: counts.into_iter().map(BigInt::from).collect(),
    })
}

/// Build A(d, *, *) from the (d-1)-table.
///
/// Column j = 1 holds the counts for permutations starting with the letter 1:
/// removing that letter is a descent-preserving bijection onto S_{d-1}, so
/// the column consists of the previous table's row sums. The remaining
/// columns satisfy A(d, i, r+1) = A(d, i, r) + A(d-1, i-1, r) - A(d-1, i, r):
/// swapping the values r and r+1 inside a permutation changes neither the
/// descent count nor the first letter unless the two values are adjacent in
/// position, and the correction terms count exactly those adjacent cases.
pub fn a_table_recurrence(d: usize) -> Result<EulerianTable, EulerianError> {
    if d == 0 {
        return Err(EulerianError::ZeroDimension);
    }
    let mut table = EulerianTable {
        d: 1,
        entries: vec![BigInt::from(1)],
    };
    for dd in 2..=d {
        let prev = &table;
        let pd = dd - 1;
        let mut entries = vec![BigInt::zero(); dd * dd];
        // out-of-range entries of the previous table are zero
        let prev_a = |i: isize, r: isize| -> BigInt {
            if i < 0 || i >= pd as isize || r < 1 || r > pd as isize {
                BigInt::zero()
            } else {
                prev.a(i as usize, r as usize).clone()
            }
        };
        for i in 0..dd {
            entries[i * dd] = (1..=pd)
                .map(|r| prev_a(i as isize, r as isize))
                .sum::<BigInt>();
        }
        for r in 1..dd {
            for i in 0..dd {
                let carried = entries[i * dd + (r - 1)].clone();
                entries[i * dd + r] =
                    carried + prev_a(i as isize - 1, r as isize) - prev_a(i as isize, r as isize);
            }
        }
        table = EulerianTable { d: dd, entries };
    }
    Ok(table)
}

/// h-vector of the barycentric subdivision from the h-vector of the complex:
/// out_j = sum_r A(d+1, j, r+1) * h_r for a (d-1)-dimensional complex.
pub fn sd_h_transform(h: &IntVector, d: usize) -> Result<IntVector, EulerianError> {
    if h.len() != d + 1 {
        return Err(EulerianError::LengthMismatch {
            expected: d + 1,
            got: h.len(),
        });
    }
    let table = a_table_recurrence(d + 1)?;
    Ok((0..=d)
        .map(|j| {
            (0..=d)
                .map(|r| table.a(j, r + 1) * h.get(r))
                .sum::<BigInt>()
        })
        .collect())
}

/// Outcome of the symmetry check A(d, i, j) = A(d, d-1-i, d+1-j).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    pub d: usize,
    pub counterexample: Option<(usize, usize)>,
}

impl SymmetryReport {
    pub fn pass(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Check the reversal symmetry on the enumerated table.
pub fn verify_symmetry(d: usize, budget: usize) -> Result<SymmetryReport, EulerianError> {
    let table = a_table_bruteforce(d, budget)?;
    for i in 0..d {
        for j in 1..=d {
            if table.a(i, j) != table.a(d - 1 - i, d + 1 - j) {
                return Ok(SymmetryReport {
                    d,
                    counterexample: Some((i, j)),
                });
            }
        }
    }
    Ok(SymmetryReport {
        d,
        counterexample: None,
    })
}

/// One asserted inequality family over the table A(d+1, *, *).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub name: &'static str,
    pub violations: Vec<String>,
}

impl FamilyReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Results of every asserted inequality family on A(d+1, *, *), plus the
/// deliberately unasserted middle-pair comparisons for odd d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityReport {
    pub d: usize,
    pub families: Vec<FamilyReport>,
    /// For odd d: (column, ordering of A(d+1, floor(d/2), c) versus
    /// A(d+1, ceil(d/2), c)). Informational only; both directions occur.
    pub middle_pairs: Vec<(usize, std::cmp::Ordering)>,
}

impl InequalityReport {
    pub fn pass(&self) -> bool {
        self.families.iter().all(FamilyReport::pass)
    }
}

/// Verify the asserted inequality families on the table A(d+1, *, *),
/// which governs complexes of dimension d-1.
pub fn verify_inequalities(d: usize) -> Result<InequalityReport, EulerianError> {
    if d == 0 {
        return Err(EulerianError::ZeroDimension);
    }
    let t = a_table_recurrence(d + 1)?;
    let mut families = Vec::new();

    // A(d+1, j, r) <= A(d+1, d-1-j, r) for low descent counts
    let mut fam = FamilyReport {
        name: "reflected descent dominance",
        violations: vec![],
    };
    if d >= 2 {
        for j in 0..=(d - 2) / 2 {
            for r in 1..=d + 1 {
                if t.a(j, r) > t.a(d - 1 - j, r) {
                    fam.violations.push(format!(
                        "A({},{j},{r}) > A({},{},{r})",
                        d + 1,
                        d + 1,
                        d - 1 - j
                    ));
                }
            }
        }
    }
    families.push(fam);

    // columns 2..=d+1 rise with the descent count up to floor(d/2)
    let mut fam = FamilyReport {
        name: "columns rise to the middle",
        violations: vec![],
    };
    for c in 2..=d + 1 {
        for j in 1..=d / 2 {
            if t.a(j - 1, c) > t.a(j, c) {
                fam.violations
                    .push(format!("A({},{},{c}) > A({},{j},{c})", d + 1, j - 1, d + 1));
            }
        }
    }
    families.push(fam);

    // columns 2..=d+1 fall with the descent count beyond ceil(d/2)
    let mut fam = FamilyReport {
        name: "columns fall from the middle",
        violations: vec![],
    };
    for c in 2..=d + 1 {
        for j in (d + 1).div_ceil(2)..d {
            if t.a(j, c) < t.a(j + 1, c) {
                fam.violations
                    .push(format!("A({},{j},{c}) < A({},{},{c})", d + 1, d + 1, j + 1));
            }
        }
    }
    families.push(fam);

    // rows with high descent count increase left to right
    let mut fam = FamilyReport {
        name: "high-descent rows increase",
        violations: vec![],
    };
    for j in (d + 2) / 2..=d {
        for r in 1..=d {
            if t.a(j, r) > t.a(j, r + 1) {
                fam.violations
                    .push(format!("A({},{j},{r}) > A({},{j},{})", d + 1, d + 1, r + 1));
            }
        }
    }
    families.push(fam);

    // rows with low descent count decrease left to right
    let mut fam = FamilyReport {
        name: "low-descent rows decrease",
        violations: vec![],
    };
    for j in 0..=(d.saturating_sub(1)) / 2 {
        for r in 1..=d {
            if t.a(j, r) < t.a(j, r + 1) {
                fam.violations
                    .push(format!("A({},{j},{r}) < A({},{j},{})", d + 1, d + 1, r + 1));
            }
        }
    }
    families.push(fam);

    // for even d the middle row peaks at column d/2 + 1
    let mut fam = FamilyReport {
        name: "middle row peaks at d/2+1",
        violations: vec![],
    };
    if d % 2 == 0 && d >= 2 {
        let j = d / 2;
        let peak = d / 2 + 1;
        for r in 1..peak {
            if t.a(j, r) > t.a(j, r + 1) {
                fam.violations
                    .push(format!("A({},{j},{r}) > A({},{j},{})", d + 1, d + 1, r + 1));
            }
        }
        for r in peak..=d {
            if t.a(j, r) < t.a(j, r + 1) {
                fam.violations
                    .push(format!("A({},{j},{r}) < A({},{j},{})", d + 1, d + 1, r + 1));
            }
        }
    }
    families.push(fam);

    // first column equals the last column shifted by one descent
    let mut fam = FamilyReport {
        name: "first column equals shifted last column",
        violations: vec![],
    };
    for j in 0..d {
        if t.a(j, 1) != t.a(j + 1, d + 1) {
            fam.violations.push(format!(
                "A({},{j},1) != A({},{},{})",
                d + 1,
                d + 1,
                j + 1,
                d + 1
            ));
        }
    }
    families.push(fam);

    let mut middle_pairs = Vec::new();
    if d % 2 == 1 {
        let lo = d / 2;
        for c in 2..=d + 1 {
            middle_pairs.push((c, t.a(lo, c).cmp(t.a(lo + 1, c))));
        }
    }

    Ok(InequalityReport {
        d,
        families,
        middle_pairs,
    })
}

/// Flattened-table verdict: the d^2 entries in (descents ascending, first
/// letter descending) order, tested for unimodality, palindromic symmetry,
/// and a peak at the central position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlattenReport {
    pub d: usize,
    pub sequence: IntVector,
    pub unimodal: bool,
    pub symmetric: bool,
    pub middle_peak: bool,
}

impl FlattenReport {
    pub fn pass(&self) -> bool {
        self.unimodal && self.symmetric && self.middle_peak
    }
}

pub fn flatten_and_check_a(d: usize) -> Result<FlattenReport, EulerianError> {
    let table = a_table_recurrence(d)?;
    let sequence = table.flatten();
    let (positions, unimodal) = sequence.peak_positions();
    let symmetric = sequence.is_palindromic();
    let len = sequence.len();
    let middle_peak = if len % 2 == 1 {
        positions.contains(&(len / 2))
    } else {
        positions.contains(&(len / 2 - 1)) && positions.contains(&(len / 2))
    };
    Ok(FlattenReport {
        d,
        sequence,
        unimodal,
        symmetric,
        middle_peak,
    })
}

/// Predicted peak positions for the h-vector of a barycentric subdivision:
/// {d/2} for even d, {(d-1)/2, (d+1)/2} for odd d. The h-vector must be
/// non-negative for the prediction to apply.
pub fn predict_peak(h: &IntVector, d: usize) -> Result<Vec<usize>, EulerianError> {
    if h.len() != d + 1 {
        return Err(EulerianError::LengthMismatch {
            expected: d + 1,
            got: h.len(),
        });
    }
    if let Some(index) = (0..h.len()).find(|&i| h.get(i).is_negative()) {
        return Err(EulerianError::NegativeEntry { index });
    }
    Ok(if d % 2 == 0 {
        vec![d / 2]
    } else {
        vec![(d - 1) / 2, (d + 1) / 2]
    })
}
