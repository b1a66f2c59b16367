//! Simplicial complexes presented by their facets, and the constructions on
//! them: barycentric subdivision, cones, skeleta, and face counting.
//!
//! A complex is stored as the antichain of its maximal faces. Vertices are
//! `u32` labels; faces are strictly increasing `Vec<u32>`. The empty complex
//! is not representable: construction requires at least one non-empty facet.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use thiserror::Error;

use crate::vectors::{h_from_f, IntVector};

/// A face: strictly increasing vertex labels.
pub type Face = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("facet list is empty")]
    EmptyFacetList,
    #[error("facet at position {0} is empty")]
    EmptyFacet(usize),
    #[error("apex vertex {0} already belongs to the complex")]
    ApexInComplex(u32),
    #[error("skeleton dimension {requested} exceeds complex dimension {dimension}")]
    SkeletonTooLarge { requested: usize, dimension: usize },
    #[error("vertex {0} lacks a level or origin entry")]
    MissingVertexData(u32),
    #[error("vertex {vertex}: level {level} does not match origin cardinality {cardinality}")]
    LevelMismatch {
        vertex: u32,
        level: usize,
        cardinality: usize,
    },
    #[error("facet {0} has origins that do not form a strictly nested chain")]
    FacetNotAChain(String),
}

/// True when sorted slice `a` is a subset of sorted slice `b`.
pub fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            match y.cmp(x) {
                std::cmp::Ordering::Less => continue,
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

/// Order faces by cardinality first, then lexicographically.
pub fn face_order(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Face>,
    vertices: Vec<u32>,
}

impl SimplicialComplex {
    /// Build a complex from a list of vertex sets. Deduplicates vertices
    /// within a facet, drops facets contained in other facets, and stores the
    /// surviving antichain sorted by cardinality then lexicographically.
    pub fn from_facets<I, F>(input: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = u32>,
    {
        let mut candidates: Vec<Face> = Vec::new();
        for (idx, raw) in input.into_iter().enumerate() {
            let mut face: Face = raw.into_iter().collect();
            face.sort_unstable();
            face.dedup();
            if face.is_empty() {
                return Err(ComplexError::EmptyFacet(idx));
            }
            candidates.push(face);
        }
        if candidates.is_empty() {
            return Err(ComplexError::EmptyFacetList);
        }
        candidates.sort_unstable_by(|a, b| face_order(a, b));
        candidates.dedup();
        let mut facets: Vec<Face> = Vec::new();
        for f in &candidates {
            // candidates are ordered by size, so any dominating facet of f
            // appears at or after f's position
            if !candidates
                .iter()
                .any(|g| g.len() > f.len() && is_subset(f, g))
            {
                facets.push(f.clone());
            }
        }
        let vertices: Vec<u32> = facets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(SimplicialComplex { facets, vertices })
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension of the complex: largest facet cardinality minus one.
    pub fn dimension(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap() - 1
    }

    /// d = dimension + 1, the length parameter of f- and h-vectors.
    pub fn d(&self) -> usize {
        self.dimension() + 1
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|f| f.len() == self.facets[0].len())
    }

    /// Membership test for a sorted vertex set. The empty face belongs to
    /// every complex.
    pub fn contains_face(&self, face: &[u32]) -> bool {
        debug_assert!(face.windows(2).all(|w| w[0] < w[1]));
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All non-empty faces, sorted by cardinality then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut seen: HashSet<Face> = HashSet::new();
        for facet in &self.facets {
            let n = facet.len();
            assert!(
                n < 64,
                "face enumeration supports facets of at most 63 vertices"
            );
            for mask in 1u64..1 << n {
                let face: Face = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| facet[i])
                    .collect();
                seen.insert(face);
            }
        }
        let mut faces: Vec<Face> = seen.into_iter().collect();
        faces.sort_unstable_by(|a, b| face_order(a, b));
        faces
    }

    /// f-vector of length d+1; entry 0 counts the empty face.
    pub fn f_vector(&self) -> IntVector {
        let mut counts = vec![0i64; self.d() + 1];
        counts[0] = 1;
        for face in self.faces() {
            counts[face.len()] += 1;
        }
        IntVector::from_i64(&counts)
    }

    /// h-vector of length d+1, the binomial transform of the f-vector.
    pub fn h_vector(&self) -> IntVector {
        h_from_f(&self.f_vector())
    }

    /// g-vector of the h-vector: length floor(d/2) + 1.
    pub fn g_vector(&self) -> IntVector {
        self.h_vector().g_vector()
    }

    /// Cone over the complex with a fresh apex vertex.
    pub fn cone(&self, apex: u32) -> Result<SimplicialComplex, ComplexError> {
        if self.vertices.binary_search(&apex).is_ok() {
            return Err(ComplexError::ApexInComplex(apex));
        }
        SimplicialComplex::from_facets(self.facets.iter().map(|f| {
            let mut g = f.clone();
            g.push(apex);
            g
        }))
    }

    /// k-skeleton: all faces of cardinality k+1 become the facets.
    pub fn skeleton(&self, k: usize) -> Result<SimplicialComplex, ComplexError> {
        let dim = self.dimension();
        if k > dim {
            return Err(ComplexError::SkeletonTooLarge {
                requested: k,
                dimension: dim,
            });
        }
        let mut faces: BTreeSet<Face> = BTreeSet::new();
        for facet in &self.facets {
            if facet.len() > k {
                for comb in facet.iter().copied().combinations(k + 1) {
                    faces.insert(comb);
                }
            }
        }
        SimplicialComplex::from_facets(faces)
    }

    /// Barycentric subdivision. New vertices are the non-empty faces of this
    /// complex, labeled 1..N in (cardinality, lex) order; facets are the
    /// maximal chains of faces. Level of a new vertex = cardinality of its
    /// origin face.
    pub fn barycentric_subdivision(&self) -> SubdividedComplex {
        let faces = self.faces();
        let label: BTreeMap<&Face, u32> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f, (i + 1) as u32))
            .collect();
        let mut sd_facets: Vec<Face> = Vec::new();
        for facet in &self.facets {
            for perm in facet.iter().copied().permutations(facet.len()) {
                let mut chain: Face = Vec::with_capacity(facet.len());
                let mut prefix: Face = Vec::with_capacity(facet.len());
                for v in perm {
                    let pos = prefix.binary_search(&v).unwrap_err();
                    prefix.insert(pos, v);
                    chain.push(label[&prefix]);
                }
                chain.sort_unstable();
                sd_facets.push(chain);
            }
        }
        let complex = SimplicialComplex::from_facets(sd_facets)
            .expect("subdivision of a non-empty complex is non-empty");
        let mut level = BTreeMap::new();
        let mut origin = BTreeMap::new();
        for (face, &lab) in &label {
            level.insert(lab, face.len());
            origin.insert(lab, (*face).clone());
        }
        SubdividedComplex::new(complex, level, origin)
            .expect("chains of faces satisfy the subdivision invariants")
    }
}

/// A barycentric subdivision together with its vertex bookkeeping: each
/// vertex remembers the face of the original complex it stands for (origin)
/// and that face's cardinality (level).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdividedComplex {
    complex: SimplicialComplex,
    level: BTreeMap<u32, usize>,
    origin: BTreeMap<u32, Face>,
}

impl SubdividedComplex {
    /// Validates that every vertex carries consistent data and that every
    /// facet's origins form a strictly nested chain.
    pub fn new(
        complex: SimplicialComplex,
        level: BTreeMap<u32, usize>,
        origin: BTreeMap<u32, Face>,
    ) -> Result<Self, ComplexError> {
        for &v in complex.vertices() {
            let lv = *level.get(&v).ok_or(ComplexError::MissingVertexData(v))?;
            let or = origin.get(&v).ok_or(ComplexError::MissingVertexData(v))?;
            if lv != or.len() || lv == 0 {
                return Err(ComplexError::LevelMismatch {
                    vertex: v,
                    level: lv,
                    cardinality: or.len(),
                });
            }
        }
        for facet in complex.facets() {
            let mut chain: Vec<&Face> = facet.iter().map(|v| &origin[v]).collect();
            chain.sort_unstable_by(|a, b| face_order(a, b));
            let nested = chain
                .windows(2)
                .all(|w| w[0].len() < w[1].len() && is_subset(w[0], w[1]));
            if !nested {
                let shown = facet.iter().map(u32::to_string).join(" ");
                return Err(ComplexError::FacetNotAChain(shown));
            }
        }
        Ok(SubdividedComplex {
            complex,
            level,
            origin,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn level_of(&self, v: u32) -> usize {
        self.level[&v]
    }

    pub fn origin_of(&self, v: u32) -> &Face {
        &self.origin[&v]
    }

    pub fn levels(&self) -> &BTreeMap<u32, usize> {
        &self.level
    }

    pub fn origins(&self) -> &BTreeMap<u32, Face> {
        &self.origin
    }

    /// Number of vertices at each level 1..=d.
    pub fn level_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for lv in self.level.values() {
            *counts.entry(*lv).or_insert(0) += 1;
        }
        counts
    }
}
