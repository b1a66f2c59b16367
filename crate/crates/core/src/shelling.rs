//! Shelling orders: verification, restriction faces, and a budgeted
//! backtracking search.
//!
//! An order F_1, ..., F_m of the facets of a pure complex is a shelling when
//! every F_j (j >= 2) meets the union of its predecessors in a non-empty
//! union of codimension-one faces of F_j. Two equivalent formulations are
//! checked independently and must agree:
//!
//! - codimension-one: W = {v in F_j : F_j minus v lies in an earlier facet}
//!   is non-empty and contained in no earlier facet;
//! - unique minimal new face: exactly one face of F_j is minimal among those
//!   not covered by earlier facets.
//!
//! Under either condition the restriction face of F_j is W (equivalently the
//! unique minimal new face), and the multiset of restriction sizes r_j gives
//! the h-vector: h_i counts the steps with r_j = i. Complexes of dimension 0
//! are shelled by every order, with restrictions (empty, {v_2}, ..., {v_m}).

use thiserror::Error;

use crate::complex::{is_subset, Face, SimplicialComplex};
use crate::vectors::IntVector;

/// Default node budget for the backtracking search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellingError {
    #[error("shellings are defined for pure complexes")]
    NotPure,
    #[error("order is not a permutation of the complex's facets")]
    NotAFacetPermutation,
    #[error("shelling condition fails at step {step}")]
    StepViolation { step: usize },
}

/// A verified shelling order together with its restriction faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellingCertificate {
    order: Vec<Face>,
    restrictions: Vec<Face>,
}

impl ShellingCertificate {
    pub fn order(&self) -> &[Face] {
        &self.order
    }

    pub fn restrictions(&self) -> &[Face] {
        &self.restrictions
    }

    /// Restriction sizes r_1, ..., r_m in shelling order.
    pub fn restriction_counts(&self) -> Vec<usize> {
        self.restrictions.iter().map(|r| r.len()).collect()
    }

    /// h_i = number of steps with restriction size i, for i = 0..=d.
    pub fn h_vector(&self) -> IntVector {
        let d = self.order[0].len();
        let mut h = vec![0i64; d + 1];
        for r in &self.restrictions {
            h[r.len()] += 1;
        }
        IntVector::from_i64(&h)
    }

    /// One line per step: the facet, a pipe, and the restriction face, with
    /// `-` standing for the empty restriction.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (facet, restriction) in self.order.iter().zip(&self.restrictions) {
            let left = facet
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let right = if restriction.is_empty() {
                "-".to_string()
            } else {
                restriction
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out.push_str(&left);
            out.push_str(" | ");
            out.push_str(&right);
            out.push('\n');
        }
        out
    }
}

/// Outcome of the shelling search. Exhausting the search space proves
/// non-shellability; exhausting the budget proves nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShellingSearch {
    Found(ShellingCertificate),
    NotShellable,
    BudgetExhausted { nodes: u64 },
}

/// Faces removed when deleting one vertex of `face`, reused across checks.
fn without(face: &Face, skip: usize) -> Face {
    face.iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &v)| v)
        .collect()
}

fn is_old(face: &Face, placed: &[Face]) -> bool {
    placed.iter().any(|g| is_subset(face, g))
}

/// Codimension-one check: the restriction face W when the step is valid.
/// For the first step the restriction is empty.
fn codim_one_restriction(facet: &Face, placed: &[Face]) -> Option<Face> {
    if placed.is_empty() {
        return Some(Vec::new());
    }
    let mut w = Vec::new();
    for i in 0..facet.len() {
        if is_old(&without(facet, i), placed) {
            w.push(facet[i]);
        }
    }
    if w.is_empty() || placed.iter().any(|g| is_subset(&w, g)) {
        return None;
    }
    Some(w)
}

/// Unique-minimal-new-face check: the restriction face when exactly one
/// face of `facet` is minimal among those not covered by `placed`.
fn unique_minimal_new_face(facet: &Face, placed: &[Face]) -> Option<Face> {
    let n = facet.len();
    assert!(
        n < 32,
        "subset enumeration supports facets of at most 31 vertices"
    );
    let unpack = |mask: u32| -> Face {
        (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| facet[b])
            .collect()
    };
    let mut minimal: Option<Face> = None;
    for mask in 0..(1u32 << n) {
        if is_old(&unpack(mask), placed) {
            continue;
        }
        let all_proper_subsets_old = (0..n)
            .filter(|b| mask & (1 << b) != 0)
            .all(|b| is_old(&unpack(mask & !(1 << b)), placed));
        if all_proper_subsets_old {
            if minimal.is_some() {
                return None;
            }
            minimal = Some(unpack(mask));
        }
    }
    minimal
}

/// Check a facet order and compute its restriction faces. Both step
/// formulations are evaluated at every step and must agree.
pub fn verify_shelling(
    complex: &SimplicialComplex,
    order: &[Face],
) -> Result<ShellingCertificate, ShellingError> {
    if !complex.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let order: Vec<Face> = order
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            f
        })
        .collect();
    let mut sorted = order.clone();
    sorted.sort();
    if sorted != complex.facets() {
        return Err(ShellingError::NotAFacetPermutation);
    }
    let mut restrictions = Vec::with_capacity(order.len());
    for j in 0..order.len() {
        let (placed, rest) = order.split_at(j);
        let facet = &rest[0];
        let by_codim = codim_one_restriction(facet, placed);
        let by_minimal = unique_minimal_new_face(facet, placed);
        assert_eq!(
            by_codim, by_minimal,
            "the two step formulations are equivalent"
        );
        match by_codim {
            Some(w) => restrictions.push(w),
            None => return Err(ShellingError::StepViolation { step: j + 1 }),
        }
    }
    Ok(ShellingCertificate {
        order,
        restrictions,
    })
}

struct Search<'a> {
    facets: &'a [Face],
    budget: u64,
    nodes: u64,
    want: usize,
    found: Vec<Vec<usize>>,
    out_of_budget: bool,
}

impl Search<'_> {
    /// Returns true when the search should stop unwinding.
    fn run(&mut self, chosen: &mut Vec<usize>, placed: &mut Vec<Face>, used: &mut [bool]) -> bool {
        if chosen.len() == self.facets.len() {
            self.found.push(chosen.clone());
            return self.found.len() >= self.want;
        }
        // try strongly-overlapping facets first: shellings grow connected
        let union: Face = {
            let mut u: Face = placed.iter().flatten().copied().collect();
            u.sort_unstable();
            u.dedup();
            u
        };
        let mut candidates: Vec<(usize, usize)> = (0..self.facets.len())
            .filter(|&i| !used[i])
            .filter(|&i| codim_one_restriction(&self.facets[i], placed).is_some())
            .map(|i| {
                let overlap = self.facets[i]
                    .iter()
                    .filter(|v| union.binary_search(v).is_ok())
                    .count();
                (overlap, i)
            })
            .collect();
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, i) in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.out_of_budget = true;
                return true;
            }
            chosen.push(i);
            placed.push(self.facets[i].clone());
            used[i] = true;
            let stop = self.run(chosen, placed, used);
            chosen.pop();
            placed.pop();
            used[i] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

fn search_orders(
    complex: &SimplicialComplex,
    want: usize,
    budget: u64,
) -> Result<(Vec<ShellingCertificate>, u64, bool), ShellingError> {
    if !complex.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let facets = complex.facets();
    let mut search = Search {
        facets,
        budget,
        nodes: 0,
        want,
        found: Vec::new(),
        out_of_budget: false,
    };
    search.run(
        &mut Vec::new(),
        &mut Vec::new(),
        &mut vec![false; facets.len()],
    );
    let certificates = search
        .found
        .iter()
        .map(|indices| {
            let order: Vec<Face> = indices.iter().map(|&i| facets[i].clone()).collect();
            verify_shelling(complex, &order).expect("search outputs satisfy the step condition")
        })
        .collect();
    Ok((certificates, search.nodes, search.out_of_budget))
}

/// Backtracking search for one shelling order. Every returned order is
/// re-verified in full before being wrapped in a certificate.
pub fn find_shelling(
    complex: &SimplicialComplex,
    budget: u64,
) -> Result<ShellingSearch, ShellingError> {
    let (mut found, nodes, out_of_budget) = search_orders(complex, 1, budget)?;
    Ok(match found.pop() {
        Some(cert) => ShellingSearch::Found(cert),
        None if out_of_budget => ShellingSearch::BudgetExhausted { nodes },
        None => ShellingSearch::NotShellable,
    })
}

/// Up to `max_count` distinct shelling orders, sharing one node budget.
pub fn find_shellings(
    complex: &SimplicialComplex,
    max_count: usize,
    budget: u64,
) -> Result<Vec<ShellingCertificate>, ShellingError> {
    Ok(search_orders(complex, max_count, budget)?.0)
}
