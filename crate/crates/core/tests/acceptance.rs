//! End-to-end checks, one per numbered criterion. Each test prints a
//! `[PASS]`/`[FAIL]` line; run with `--nocapture` to see the lines for
//! passing criteria. Runtime budgets are asserted where stated.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lefschetz::complex::{SimplicialComplex, SubdividedComplex};
use lefschetz::eulerian::{
    a_table_bruteforce, a_table_recurrence, flatten_and_check_a, predict_peak, sd_h_transform,
    verify_inequalities, verify_symmetry, DEFAULT_ENUMERATION_BUDGET,
};
use lefschetz::face_algebra::{
    almost_strong_lefschetz_check, level_lsop, verify_lefschetz_certificate, GradedQuotientModel,
    LefschetzCertificate, LefschetzOutcome, DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS,
};
use lefschetz::field::PrimeField;
use lefschetz::shelling::{
    find_shelling, find_shellings, verify_shelling, ShellingSearch, DEFAULT_SEARCH_BUDGET,
};
use lefschetz::vectors::IntVector;

fn run(n: usize, label: &str, budget: Option<Duration>, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| match budget {
        Some(b) if elapsed > b => Err(format!("runtime {elapsed:.2?} exceeds budget {b:?}")),
        _ => Ok(()),
    });
    match outcome {
        Ok(()) => println!("[PASS] criterion {n}: {label} ({elapsed:.2?})"),
        Err(msg) => {
            println!("[FAIL] criterion {n}: {label}: {msg}");
            panic!("criterion {n} failed: {msg}");
        }
    }
}

fn expect(cond: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cx(facets: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec())).unwrap()
}

fn simplex(k: usize) -> SimplicialComplex {
    cx(&[&(1..=k as u32 + 1).collect::<Vec<_>>()])
}

fn boundary(k: usize) -> SimplicialComplex {
    let facets: Vec<Vec<u32>> = (1..=k as u32 + 1)
        .map(|drop| (1..=k as u32 + 1).filter(|&v| v != drop).collect())
        .collect();
    SimplicialComplex::from_facets(facets).unwrap()
}

fn two_triangles() -> SimplicialComplex {
    cx(&[&[1, 2, 3], &[2, 3, 4]])
}

/// The complexes whose subdivisions the certificate criteria quantify over.
fn subdivision_suite() -> Vec<(String, SubdividedComplex)> {
    let mut suite = Vec::new();
    for k in 0..=3 {
        suite.push((
            format!("sd of the {k}-simplex"),
            simplex(k).barycentric_subdivision(),
        ));
    }
    for k in 1..=4 {
        suite.push((
            format!("sd of the boundary of the {k}-simplex"),
            boundary(k).barycentric_subdivision(),
        ));
    }
    suite.push((
        "sd of the 2-skeleton of the 4-simplex".to_string(),
        simplex(4).skeleton(2).unwrap().barycentric_subdivision(),
    ));
    suite.push((
        "sd of two triangles glued along an edge".to_string(),
        two_triangles().barycentric_subdivision(),
    ));
    suite
}

fn iv(entries: &[i64]) -> IntVector {
    IntVector::from_i64(entries)
}

#[test]
fn criterion_01_refined_descent_counts() {
    run(
        1,
        "A(6, i, j) values for (i, j) in {2, 3} x {3, 4}, both constructions",
        Some(Duration::from_secs(1)),
        || {
            let brute =
                a_table_bruteforce(6, DEFAULT_ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
            let recurrence = a_table_recurrence(6).map_err(|e| e.to_string())?;
            for (name, table) in [("brute force", &brute), ("recurrence", &recurrence)] {
                for (i, j, want) in [(2, 3, 60), (3, 3, 48), (2, 4, 48), (3, 4, 60)] {
                    expect(table.a(i, j) == &BigInt::from(want), || {
                        format!("{name}: A(6,{i},{j}) = {}, want {want}", table.a(i, j))
                    })?;
                }
                expect(table.a(2, 3) > table.a(3, 3), || {
                    format!("{name}: A(6,2,3) must exceed A(6,3,3)")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_transform_matches_actual_subdivisions() {
    run(
        2,
        "h-vector transform agrees with combinatorially subdivided complexes",
        Some(Duration::from_secs(1)),
        || {
            for (complex, h, h_sd) in [
                (
                    simplex(4).skeleton(2).unwrap(),
                    iv(&[1, 2, 3, 4]),
                    iv(&[1, 22, 33, 4]),
                ),
                (two_triangles(), iv(&[1, 1, 0, 0]), iv(&[1, 8, 3, 0])),
            ] {
                expect(complex.h_vector() == h, || {
                    format!("h-vector is {}, want {h}", complex.h_vector())
                })?;
                let transformed = sd_h_transform(&h, 3).map_err(|e| e.to_string())?;
                expect(transformed == h_sd, || {
                    format!("transform of {h} is {transformed}, want {h_sd}")
                })?;
                let actual = complex.barycentric_subdivision().complex().h_vector();
                expect(actual == h_sd, || {
                    format!("subdivision has h-vector {actual}, want {h_sd}")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_03_recurrence_equals_enumeration() {
    run(
        3,
        "recurrence table equals brute-force table for d = 1..=9",
        Some(Duration::from_secs(30)),
        || {
            for d in 1..=9 {
                let brute = a_table_bruteforce(d, 9).map_err(|e| e.to_string())?;
                let recurrence = a_table_recurrence(d).map_err(|e| e.to_string())?;
                expect(brute == recurrence, || {
                    format!("tables for d = {d} disagree")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_symmetry_and_inequality_families() {
    run(
        4,
        "table symmetry, inequality families, and flattened unimodality for d <= 8",
        Some(Duration::from_secs(10)),
        || {
            for d in 1..=8 {
                let symmetry =
                    verify_symmetry(d, DEFAULT_ENUMERATION_BUDGET).map_err(|e| e.to_string())?;
                expect(symmetry.pass(), || {
                    format!("symmetry fails at d = {d}: {:?}", symmetry.counterexample)
                })?;
                let inequalities = verify_inequalities(d).map_err(|e| e.to_string())?;
                expect(inequalities.pass(), || {
                    let broken: Vec<&str> = inequalities
                        .families
                        .iter()
                        .filter(|f| !f.pass())
                        .map(|f| f.name)
                        .collect();
                    format!("inequality families fail at d = {d}: {broken:?}")
                })?;
                // the middle pair for odd d is reported, never asserted
                if d % 2 == 1 && d >= 3 {
                    expect(!inequalities.middle_pairs.is_empty(), || {
                        format!("middle pair report missing at d = {d}")
                    })?;
                }
                let flat = flatten_and_check_a(d).map_err(|e| e.to_string())?;
                expect(flat.pass(), || {
                    format!(
                        "flattened table at d = {d}: unimodal {}, symmetric {}, middle peak {}",
                        flat.unimodal, flat.symmetric, flat.middle_peak
                    )
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_05_transform_peaks_where_predicted() {
    run(
        5,
        "transforms of unit and random non-negative h-vectors peak centrally",
        Some(Duration::from_secs(10)),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            for d in 1..=8 {
                let mut inputs: Vec<IntVector> = (0..=d)
                    .map(|k| {
                        let mut e = vec![0i64; d + 1];
                        e[k] = 1;
                        iv(&e)
                    })
                    .collect();
                for _ in 0..200 {
                    let h: Vec<i64> = (0..=d).map(|_| rng.gen_range(0..=30)).collect();
                    inputs.push(iv(&h));
                }
                let predicted = predict_peak(&inputs[0], d).map_err(|e| e.to_string())?;
                for h in &inputs {
                    let transformed = sd_h_transform(h, d).map_err(|e| e.to_string())?;
                    let (positions, unimodal) = transformed.peak_positions();
                    expect(unimodal, || {
                        format!("transform {transformed} of {h} (d = {d}) is not unimodal")
                    })?;
                    expect(predicted.iter().any(|p| positions.contains(p)), || {
                        format!(
                            "transform {transformed} of {h} (d = {d}) peaks at {positions:?}, \
                             predicted {predicted:?}"
                        )
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_06_certificates_for_subdivisions() {
    run(
        6,
        "almost strong Lefschetz certificates found and re-verified for the suite",
        Some(Duration::from_secs(300)),
        || {
            let field = PrimeField::new(DEFAULT_PRIME).map_err(|e| e.to_string())?;
            for (name, sd) in subdivision_suite() {
                let outcome = almost_strong_lefschetz_check(
                    sd.complex(),
                    DEFAULT_TRIALS,
                    DEFAULT_SEED,
                    &field,
                )
                .map_err(|e| format!("{name}: {e}"))?;
                let cert = match outcome {
                    LefschetzOutcome::Certified(cert) => cert,
                    LefschetzOutcome::Inconclusive { trials } => {
                        return Err(format!("{name}: no certificate within {trials} trials"));
                    }
                };
                expect(cert.s == sd.complex().dimension(), || {
                    format!(
                        "{name}: certificate exponent {} is not the dimension",
                        cert.s
                    )
                })?;
                let parsed = LefschetzCertificate::from_json(&cert.to_json())
                    .map_err(|e| format!("{name}: {e}"))?;
                expect(parsed == cert, || {
                    format!("{name}: serialization round trip")
                })?;
                verify_lefschetz_certificate(sd.complex(), &parsed)
                    .map_err(|e| format!("{name}: re-verification: {e}"))?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_07_subdivision_g_vectors_are_m_sequences() {
    run(
        7,
        "g-vectors of subdivision h-vectors are M-sequences",
        Some(Duration::from_secs(1)),
        || {
            for (name, sd) in subdivision_suite() {
                let g = sd.complex().h_vector().g_vector();
                expect(g.is_m_sequence(), || {
                    format!("{name}: g-vector {g} is not an M-sequence")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_08_subdivision_h_vectors_dominate_reflected() {
    run(
        8,
        "h_(d-1-i) >= h_i on subdivisions for i <= (d-2)/2",
        None,
        || {
            for (name, sd) in subdivision_suite() {
                let h = sd.complex().h_vector();
                let d = sd.complex().d();
                if d < 2 {
                    continue;
                }
                for i in 0..=(d - 2) / 2 {
                    expect(h.get(d - 1 - i) >= h.get(i), || {
                        format!(
                            "{name}: h_{} = {} < h_{} = {} in {h}",
                            d - 1 - i,
                            h.get(d - 1 - i),
                            i,
                            h.get(i)
                        )
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_09_level_system_dimensions_equal_h() {
    run(
        9,
        "quotient dimensions under the level system equal subdivision h-vectors",
        None,
        || {
            let field = PrimeField::new(DEFAULT_PRIME).map_err(|e| e.to_string())?;
            for (name, sd) in subdivision_suite() {
                let complex = sd.complex();
                let model =
                    GradedQuotientModel::build(complex, &level_lsop(&sd), field, complex.d())
                        .map_err(|e| format!("{name}: {e}"))?;
                let dims = model.quotient_dims();
                let h = complex.h_vector();
                expect(dims == h, || {
                    format!("{name}: quotient dimensions {dims}, h-vector {h}")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_10_shelling_suite() {
    run(
        10,
        "shelling verification, h from restrictions, and shelling invariance",
        Some(Duration::from_secs(30)),
        || {
            let two = two_triangles();
            let cert = verify_shelling(&two, &[vec![1, 2, 3], vec![2, 3, 4]])
                .map_err(|e| e.to_string())?;
            expect(cert.restriction_counts() == vec![0, 1], || {
                format!("documented order has r = {:?}", cert.restriction_counts())
            })?;

            let mut targets = vec![
                ("boundary of the tetrahedron".to_string(), boundary(3)),
                (
                    "sd of the triangle".to_string(),
                    simplex(2).barycentric_subdivision().complex().clone(),
                ),
            ];
            for k in 0..=3 {
                targets.push((
                    format!("{k}-skeleton of the 4-simplex"),
                    simplex(4).skeleton(k).unwrap(),
                ));
            }
            for (name, complex) in targets {
                match find_shelling(&complex, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())? {
                    ShellingSearch::Found(cert) => {
                        expect(cert.h_vector() == complex.h_vector(), || {
                            format!(
                                "{name}: restriction h-vector {} differs from {}",
                                cert.h_vector(),
                                complex.h_vector()
                            )
                        })?;
                    }
                    other => return Err(format!("{name}: expected a shelling, got {other:?}")),
                }
            }

            let sphere = boundary(3);
            let certs =
                find_shellings(&sphere, 3, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
            expect(certs.len() >= 3, || {
                format!("found only {} shellings of the sphere", certs.len())
            })?;
            for pair in certs.windows(2) {
                expect(pair[0].order() != pair[1].order(), || {
                    "search returned duplicate orders".to_string()
                })?;
            }
            expect(
                certs.iter().all(|c| c.h_vector() == sphere.h_vector()),
                || "h-vectors differ across shellings".to_string(),
            )?;
            Ok(())
        },
    );
}
