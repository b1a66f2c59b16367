//! Graded quotients of face rings by linear forms, and the rank checks that
//! certify Lefschetz-type properties over a prime field.
//!
//! For a complex on vertices V, the face ring is F_p[x_v : v in V] modulo
//! monomials with non-face support. Its degree-i piece has the monomials
//! with face support as a basis. Quotienting by linear forms theta_1..theta_d
//! is modeled degree by degree: the relation span in degree i is generated
//! by theta_j * m over all degree-(i-1) basis monomials m, and the quotient
//! piece is coordinatized by the non-pivot columns of that span's echelon
//! form. Multiplication by a linear form omega acts on those coordinates one
//! degree step at a time.
//!
//! A Lefschetz certificate records a prime, a seed, the sampled forms, and
//! the per-degree ranks, which is enough to re-verify the claim from
//! scratch. Absence of a certificate after the trial budget is inconclusive:
//! the checks emulate genericity by sampling, they never prove failure.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Face, SimplicialComplex, SubdividedComplex};
use crate::field::{rank_of_rows, Echelon, FieldError, PrimeField};
use crate::vectors::IntVector;

/// Default prime for randomized checks: large enough that a random sample
/// misses the generic locus with negligible probability.
pub const DEFAULT_PRIME: u64 = 32003;
/// Default number of (theta, omega) samples per check.
pub const DEFAULT_TRIALS: u32 = 5;
/// Default seed, recorded in every certificate and report.
pub const DEFAULT_SEED: u64 = 0;
/// Default resampling limit inside `random_lsop`.
pub const DEFAULT_LSOP_RETRIES: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("linear form has no non-zero coefficients")]
    ZeroForm,
    #[error("linear form mentions vertex {0}, which is not in the complex")]
    UnknownVertex(u32),
    #[error("operation requires a pure complex")]
    NotPure,
    #[error("no linear system of parameters found after {attempts} attempts (seed {seed})")]
    NoLsopFound { attempts: u32, seed: u64 },
    #[error("Lefschetz exponent must be non-negative, got {0}")]
    NegativeExponent(i64),
    #[error("degree {degree} outside the built range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("expected {expected} linear forms, got {got}")]
    WrongNumberOfForms { expected: usize, got: usize },
    #[error("certificate does not verify: {0}")]
    CertificateMismatch(String),
}

/// A monomial with face support: strictly increasing vertices, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn support(&self) -> Face {
        self.0.iter().map(|&(v, _)| v).collect()
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    /// The monomial times x_v.
    pub fn times(&self, v: u32) -> Monomial {
        let mut exps = self.0.clone();
        match exps.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => exps[i].1 += 1,
            Err(i) => exps.insert(i, (v, 1)),
        }
        Monomial(exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A non-zero linear form sum c_v x_v with coefficients keyed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearForm {
    coeffs: BTreeMap<u32, u64>,
}

impl LinearForm {
    /// Drops zero coefficients; the result must keep at least one term.
    pub fn new(coeffs: BTreeMap<u32, u64>) -> Result<Self, AlgebraError> {
        let coeffs: BTreeMap<u32, u64> = coeffs.into_iter().filter(|&(_, c)| c != 0).collect();
        if coeffs.is_empty() {
            return Err(AlgebraError::ZeroForm);
        }
        Ok(LinearForm { coeffs })
    }

    /// The single variable x_v.
    pub fn variable(v: u32) -> Self {
        LinearForm {
            coeffs: BTreeMap::from([(v, 1)]),
        }
    }

    pub fn coeff(&self, v: u32) -> u64 {
        self.coeffs.get(&v).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.coeffs.iter().map(|(&v, &c)| (v, c))
    }

    /// Uniform coefficients over the given vertices, resampled while the
    /// form is identically zero.
    pub fn random<R: Rng>(vertices: &[u32], field: &PrimeField, rng: &mut R) -> Self {
        loop {
            let coeffs: BTreeMap<u32, u64> =
                vertices.iter().map(|&v| (v, field.sample(rng))).collect();
            if let Ok(form) = LinearForm::new(coeffs) {
                return form;
            }
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *c == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "{c}*x{v}")?;
            }
        }
        Ok(())
    }
}

/// Coefficient list of a form restricted to the complex: validates the
/// support, reduces mod p, and rejects forms that vanish mod p.
fn normalized_terms(
    form: &LinearForm,
    complex: &SimplicialComplex,
    field: &PrimeField,
) -> Result<Vec<(u32, u64)>, AlgebraError> {
    let mut terms = Vec::new();
    for (v, c) in form.terms() {
        if complex.vertices().binary_search(&v).is_err() {
            return Err(AlgebraError::UnknownVertex(v));
        }
        let c = field.reduce(c);
        if c != 0 {
            terms.push((v, c));
        }
    }
    if terms.is_empty() {
        return Err(AlgebraError::ZeroForm);
    }
    Ok(terms)
}

/// All monomials of the given degree whose support is a face, ordered by
/// (support cardinality, support, exponent sequence). Degree 0 is {1}.
pub fn graded_basis(complex: &SimplicialComplex, degree: usize) -> Vec<Monomial> {
    basis_from_faces(&complex.faces(), degree)
}

fn basis_from_faces(faces: &[Face], degree: usize) -> Vec<Monomial> {
    if degree == 0 {
        return vec![Monomial::one()];
    }
    let mut out = Vec::new();
    for face in faces {
        let k = face.len();
        if k > degree {
            continue; // faces are sorted by cardinality, but later sizes may recur
        }
        for comp in compositions(degree as u32, k) {
            out.push(Monomial(
                face.iter().copied().zip(comp.iter().copied()).collect(),
            ));
        }
    }
    out
}

/// All sequences of `parts` positive integers summing to `total`, in
/// lexicographic order.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    assert!(parts >= 1 && total as usize >= parts);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=total - parts as u32 + 1 {
            cur.push(first);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    rec(total, parts, &mut cur, &mut out);
    out
}

#[derive(Debug)]
struct Piece {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    span: Echelon,
    reps: Vec<usize>,
}

/// Degree-by-degree model of F_p[Delta] / (theta_1, ..., theta_k) up to a
/// chosen top degree.
#[derive(Debug)]
pub struct GradedQuotientModel {
    field: PrimeField,
    theta: Vec<Vec<(u32, u64)>>,
    pieces: Vec<Piece>,
}

impl GradedQuotientModel {
    pub fn build(
        complex: &SimplicialComplex,
        theta: &[LinearForm],
        field: PrimeField,
        max_degree: usize,
    ) -> Result<Self, AlgebraError> {
        let theta: Vec<Vec<(u32, u64)>> = theta
            .iter()
            .map(|t| normalized_terms(t, complex, &field))
            .collect::<Result<_, _>>()?;
        let faces = complex.faces();
        let face_set: HashSet<&Face> = faces.iter().collect();
        let mut pieces: Vec<Piece> = Vec::with_capacity(max_degree + 1);
        for degree in 0..=max_degree {
            let basis = basis_from_faces(&faces, degree);
            let index: HashMap<Monomial, usize> = basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let mut span = Echelon::new(basis.len());
            if degree >= 1 {
                let prev = &pieces[degree - 1];
                for t in &theta {
                    for m in &prev.basis {
                        let mut row = vec![0u64; basis.len()];
                        for &(v, c) in t {
                            let product = m.times(v);
                            if face_set.contains(&product.support()) {
                                let col = index[&product];
                                row[col] = field.add(row[col], c);
                            }
                        }
                        span.insert(row, &field);
                    }
                }
            }
            let reps = span.non_pivot_cols();
            pieces.push(Piece {
                basis,
                index,
                span,
                reps,
            });
        }
        Ok(GradedQuotientModel {
            field,
            theta,
            pieces,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn num_forms(&self) -> usize {
        self.theta.len()
    }

    pub fn basis(&self, degree: usize) -> &[Monomial] {
        &self.pieces[degree].basis
    }

    /// Dimension of the degree piece of the quotient.
    pub fn dim(&self, degree: usize) -> usize {
        self.pieces[degree].reps.len()
    }

    /// Basis monomials representing the quotient piece: the non-pivot
    /// coordinates of the relation span.
    pub fn representatives(&self, degree: usize) -> Vec<&Monomial> {
        let piece = &self.pieces[degree];
        piece.reps.iter().map(|&c| &piece.basis[c]).collect()
    }

    /// Quotient dimensions for all built degrees.
    pub fn quotient_dims(&self) -> IntVector {
        IntVector::from_i64(
            &self
                .pieces
                .iter()
                .map(|p| p.reps.len() as i64)
                .collect::<Vec<_>>(),
        )
    }

    /// Multiply a canonical degree-`degree` vector by a normalized form and
    /// reduce into canonical degree-(degree+1) coordinates.
    fn multiply_reduce(&self, degree: usize, vec: &[u64], omega: &[(u32, u64)]) -> Vec<u64> {
        let src = &self.pieces[degree];
        let dst = &self.pieces[degree + 1];
        let mut out = vec![0u64; dst.basis.len()];
        for (i, &a) in vec.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let m = &src.basis[i];
            for &(v, c) in omega {
                let product = m.times(v);
                // products with non-face support vanish in the face ring
                if let Some(&col) = dst.index.get(&product) {
                    out[col] = self.field.fma(out[col], a, c);
                }
            }
        }
        dst.span.reduce_in_place(&mut out, &self.field);
        out
    }

    /// Rank of multiplication by omega^t from quotient degree i to i+t.
    pub fn multiplication_rank(
        &self,
        omega: &LinearForm,
        i: usize,
        t: usize,
        complex: &SimplicialComplex,
    ) -> Result<usize, AlgebraError> {
        if i + t > self.max_degree() {
            return Err(AlgebraError::DegreeOutOfRange {
                degree: i + t,
                max: self.max_degree(),
            });
        }
        let omega = normalized_terms(omega, complex, &self.field)?;
        let src = &self.pieces[i];
        let dst = &self.pieces[i + t];
        let mut images = Vec::with_capacity(src.reps.len());
        for &rep in &src.reps {
            let mut vec = vec![0u64; src.basis.len()];
            vec[rep] = 1;
            for step in 0..t {
                vec = self.multiply_reduce(i + step, &vec, &omega);
            }
            // canonical vectors are supported on the non-pivot columns
            images.push(dst.reps.iter().map(|&c| vec[c]).collect::<Vec<u64>>());
        }
        Ok(rank_of_rows(images, dst.reps.len(), &self.field))
    }
}

/// Do the given forms make the quotient finite: exactly d forms whose
/// restriction to every facet's variables has full rank. Restricting a
/// spanning set stays spanning, so checking facets covers all faces.
pub fn is_lsop(complex: &SimplicialComplex, theta: &[LinearForm], field: &PrimeField) -> bool {
    if theta.len() != complex.d() {
        return false;
    }
    let normalized: Vec<Vec<(u32, u64)>> = match theta
        .iter()
        .map(|t| normalized_terms(t, complex, field))
        .collect()
    {
        Ok(n) => n,
        Err(_) => return false,
    };
    for facet in complex.facets() {
        let rows = normalized.iter().map(|t| {
            facet
                .iter()
                .map(|&v| {
                    t.iter()
                        .find(|&&(w, _)| w == v)
                        .map(|&(_, c)| c)
                        .unwrap_or(0)
                })
                .collect::<Vec<u64>>()
        });
        if rank_of_rows(rows, facet.len(), field) < facet.len() {
            return false;
        }
    }
    true
}

/// The level-sum system for a barycentric subdivision: theta_i is the sum of
/// all vertices at level i, for i = 1..=d. Restricted to any facet (a chain
/// with one vertex per level) the system is the identity matrix, so it is a
/// linear system of parameters over every field.
pub fn level_lsop(sd: &SubdividedComplex) -> Vec<LinearForm> {
    let d = sd.complex().d();
    (1..=d)
        .map(|lv| {
            let coeffs: BTreeMap<u32, u64> = sd
                .levels()
                .iter()
                .filter(|&(_, &l)| l == lv)
                .map(|(&v, _)| (v, 1))
                .collect();
            LinearForm::new(coeffs).expect("every level up to d is non-empty")
        })
        .collect()
}

/// Sample d random forms until they are a linear system of parameters.
pub fn random_lsop(
    complex: &SimplicialComplex,
    field: &PrimeField,
    seed: u64,
    max_attempts: u32,
) -> Result<Vec<LinearForm>, AlgebraError> {
    if !complex.is_pure() {
        return Err(AlgebraError::NotPure);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_lsop(complex, field, &mut rng, max_attempts).ok_or(AlgebraError::NoLsopFound {
        attempts: max_attempts,
        seed,
    })
}

fn sample_lsop<R: Rng>(
    complex: &SimplicialComplex,
    field: &PrimeField,
    rng: &mut R,
    max_attempts: u32,
) -> Option<Vec<LinearForm>> {
    let d = complex.d();
    for _ in 0..max_attempts {
        let theta: Vec<LinearForm> = (0..d)
            .map(|_| LinearForm::random(complex.vertices(), field, rng))
            .collect();
        if is_lsop(complex, &theta, field) {
            return Some(theta);
        }
    }
    None
}

/// One verified rank: multiplication by omega^power from quotient degree
/// `degree` into degree `degree + power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankWitness {
    pub degree: usize,
    pub power: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

/// A reproducible record of a successful s-Lefschetz check: the prime, the
/// seed and trial that produced the sample, the sampled system and form, and
/// every verified rank. Re-verification rebuilds the model from the complex
/// and this record alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzCertificate {
    pub s: usize,
    pub p: u64,
    pub seed: u64,
    pub trial: u32,
    pub theta: Vec<LinearForm>,
    pub omega: LinearForm,
    pub witnesses: Vec<RankWitness>,
}

impl LefschetzCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Outcome of a randomized Lefschetz check. A certificate proves the
/// property over F_p; exhausting the trials proves nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LefschetzOutcome {
    Certified(LefschetzCertificate),
    Inconclusive { trials: u32 },
}

impl LefschetzOutcome {
    pub fn certificate(&self) -> Option<&LefschetzCertificate> {
        match self {
            LefschetzOutcome::Certified(c) => Some(c),
            LefschetzOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Search for (theta, omega) certifying the s-Lefschetz property: for every
/// i with 0 <= 2i <= s - 1, multiplication by omega^(s-2i) is injective from
/// quotient degree i to degree s - i. s = 0 is vacuous: the certificate
/// records the sampled pair and no witnesses.
pub fn s_lefschetz_check(
    complex: &SimplicialComplex,
    s: i64,
    trials: u32,
    seed: u64,
    field: &PrimeField,
) -> Result<LefschetzOutcome, AlgebraError> {
    if s < 0 {
        return Err(AlgebraError::NegativeExponent(s));
    }
    if !complex.is_pure() {
        return Err(AlgebraError::NotPure);
    }
    let s = s as usize;
    if s > complex.d() {
        // the quotient vanishes above degree d, so the top target degree of
        // the rank table must stay within the modeled range
        return Err(AlgebraError::DegreeOutOfRange {
            degree: s,
            max: complex.d(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let theta = match sample_lsop(complex, field, &mut rng, DEFAULT_LSOP_RETRIES) {
            Some(theta) => theta,
            None => continue,
        };
        let omega = LinearForm::random(complex.vertices(), field, &mut rng);
        let model = GradedQuotientModel::build(complex, &theta, *field, s)?;
        let mut witnesses = Vec::new();
        let mut injective = true;
        let top = if s == 0 { 0 } else { (s - 1) / 2 + 1 };
        for i in 0..top {
            let power = s - 2 * i;
            let rank = model.multiplication_rank(&omega, i, power, complex)?;
            let witness = RankWitness {
                degree: i,
                power,
                source_dim: model.dim(i),
                target_dim: model.dim(s - i),
                rank,
            };
            injective &= rank == witness.source_dim;
            witnesses.push(witness);
            if !injective {
                break;
            }
        }
        if injective {
            return Ok(LefschetzOutcome::Certified(LefschetzCertificate {
                s,
                p: field.modulus(),
                seed,
                trial,
                theta,
                omega,
                witnesses,
            }));
        }
    }
    Ok(LefschetzOutcome::Inconclusive { trials })
}

/// The s-Lefschetz check at s = dim(complex), the strongest exponent that
/// barycentric subdivisions of shellable complexes attain.
pub fn almost_strong_lefschetz_check(
    complex: &SimplicialComplex,
    trials: u32,
    seed: u64,
    field: &PrimeField,
) -> Result<LefschetzOutcome, AlgebraError> {
    if !complex.is_pure() {
        return Err(AlgebraError::NotPure);
    }
    s_lefschetz_check(complex, complex.dimension() as i64, trials, seed, field)
}

/// Re-check a certificate from its record: rebuild the model with the
/// recorded forms and prime, recompute every witness, and require full
/// source rank throughout.
pub fn verify_lefschetz_certificate(
    complex: &SimplicialComplex,
    cert: &LefschetzCertificate,
) -> Result<(), AlgebraError> {
    let field = PrimeField::new(cert.p)?;
    if cert.theta.len() != complex.d() {
        return Err(AlgebraError::WrongNumberOfForms {
            expected: complex.d(),
            got: cert.theta.len(),
        });
    }
    if !is_lsop(complex, &cert.theta, &field) {
        return Err(AlgebraError::CertificateMismatch(
            "recorded forms are not a linear system of parameters".into(),
        ));
    }
    let expected_degrees: Vec<usize> = if cert.s == 0 {
        Vec::new()
    } else {
        (0..=(cert.s - 1) / 2).collect()
    };
    if cert.witnesses.len() != expected_degrees.len() {
        return Err(AlgebraError::CertificateMismatch(format!(
            "expected {} rank witnesses, found {}",
            expected_degrees.len(),
            cert.witnesses.len()
        )));
    }
    let model = GradedQuotientModel::build(complex, &cert.theta, field, cert.s)?;
    for (&i, witness) in expected_degrees.iter().zip(&cert.witnesses) {
        let power = cert.s - 2 * i;
        if witness.degree != i || witness.power != power {
            return Err(AlgebraError::CertificateMismatch(format!(
                "witness for degree {i} has degree {} and power {}",
                witness.degree, witness.power
            )));
        }
        let source_dim = model.dim(i);
        let target_dim = model.dim(cert.s - i);
        let rank = model.multiplication_rank(&cert.omega, i, power, complex)?;
        if source_dim != witness.source_dim
            || target_dim != witness.target_dim
            || rank != witness.rank
        {
            return Err(AlgebraError::CertificateMismatch(format!(
                "degree {i}: recomputed (dims {source_dim}->{target_dim}, rank {rank}), \
                 recorded (dims {}->{}, rank {})",
                witness.source_dim, witness.target_dim, witness.rank
            )));
        }
        if rank != source_dim {
            return Err(AlgebraError::CertificateMismatch(format!(
                "degree {i}: rank {rank} below source dimension {source_dim}"
            )));
        }
    }
    Ok(())
}

/// Exploratory rank report for single-step multiplication maps; full rank in
/// every degree is the weak Lefschetz pattern. Evidence only: no certificate
/// semantics attach to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakLefschetzReport {
    pub p: u64,
    pub seed: u64,
    pub trial: u32,
    pub theta: Vec<LinearForm>,
    pub omega: LinearForm,
    pub steps: Vec<RankWitness>,
    pub all_full_rank: bool,
}

pub fn weak_lefschetz_check(
    complex: &SimplicialComplex,
    trials: u32,
    seed: u64,
    field: &PrimeField,
) -> Result<WeakLefschetzReport, AlgebraError> {
    if !complex.is_pure() {
        return Err(AlgebraError::NotPure);
    }
    let d = complex.d();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last: Option<WeakLefschetzReport> = None;
    for trial in 0..trials.max(1) {
        let theta = match sample_lsop(complex, field, &mut rng, DEFAULT_LSOP_RETRIES) {
            Some(theta) => theta,
            None => continue,
        };
        let omega = LinearForm::random(complex.vertices(), field, &mut rng);
        let model = GradedQuotientModel::build(complex, &theta, *field, d)?;
        let mut steps = Vec::new();
        let mut all_full = true;
        for i in 0..d {
            let rank = model.multiplication_rank(&omega, i, 1, complex)?;
            let source_dim = model.dim(i);
            let target_dim = model.dim(i + 1);
            all_full &= rank == source_dim.min(target_dim);
            steps.push(RankWitness {
                degree: i,
                power: 1,
                source_dim,
                target_dim,
                rank,
            });
        }
        let report = WeakLefschetzReport {
            p: field.modulus(),
            seed,
            trial,
            theta,
            omega,
            steps,
            all_full_rank: all_full,
        };
        if all_full {
            return Ok(report);
        }
        last = Some(report);
    }
    last.ok_or(AlgebraError::NoLsopFound {
        attempts: trials,
        seed,
    })
}
