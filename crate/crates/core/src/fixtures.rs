//! Shared constructions for unit tests.

use itertools::Itertools;

use crate::complex::SimplicialComplex;

pub(crate) fn complex(facets: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied())).unwrap()
}

/// Full k-simplex on vertices 1..=k+1.
pub(crate) fn simplex(k: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets([(1..=k as u32 + 1).collect::<Vec<_>>()]).unwrap()
}

/// Boundary of the k-simplex: all k-subsets of its k+1 vertices.
pub(crate) fn boundary(k: usize) -> SimplicialComplex {
    let all: Vec<u32> = (1..=k as u32 + 1).collect();
    SimplicialComplex::from_facets(all.iter().copied().combinations(k)).unwrap()
}
