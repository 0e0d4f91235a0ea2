//! The fixture suite replayed by `verify`: every anchored value the
//! computation must reproduce, plus seeded statistical checks for start-point
//! independence, oracle agreement, and the crossing-count algebra laws.
//!
//! Fixtures are hermetic: fixed seeds, no clock, no network. Each fixture
//! records an expected JSON value and a thunk producing the actual one; the
//! thunk only runs once a fixture survives the name filter.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chambers::{
    enumerate_walls, epsilon, walls_disjoint_check, ChamberPoint, HomologyOrientation,
};
use crate::crossing::{one_param_invariant, segment_crossings_oracle, separation_crossings};
use crate::error::{Error, Result};
use crate::lattice::{reflect, ym_dimension, Isometry, LatticeClass, Sign};
use crate::report::figure::{render_figure, FigureSpec};
use crate::swside::{
    morgan_szabo_parity, sw_epsilon_parity, sw_reflection_invariant, sw_ring, SwContext,
};

pub(crate) struct Fixture {
    pub name: &'static str,
    pub expected: Value,
    run: Box<dyn FnOnce() -> Value>,
}

impl Fixture {
    pub fn actual(self) -> Value {
        (self.run)()
    }
}

fn fixture(
    name: &'static str,
    expected: Value,
    run: impl FnOnce() -> Result<Value> + 'static,
) -> Fixture {
    Fixture {
        name,
        expected,
        run: Box::new(move || run().unwrap_or_else(|e| json!({ "error": e.to_string() }))),
    }
}

fn f0_word() -> Vec<LatticeClass> {
    vec![LatticeClass::sigma_minus(), LatticeClass::sigma_plus()]
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn all_fixtures() -> Vec<Fixture> {
    vec![
        fixture("reflect-sigma-plus-on-s", json!([2, 2, 3]), || {
            Ok(reflect(&LatticeClass::sigma_plus(), &LatticeClass::s_class())?.to_json())
        }),
        fixture("reflect-sigma-minus-on-s", json!([-2, 2, 3]), || {
            Ok(reflect(&LatticeClass::sigma_minus(), &LatticeClass::s_class())?.to_json())
        }),
        fixture("pairing-sigma-plus-square", json!(-1), || {
            Ok(crate::json_int(&LatticeClass::sigma_plus().square()))
        }),
        fixture("word-forward-image", json!([1, 5, 5]), || {
            Ok(Isometry::from_word(&f0_word())?
                .apply(&LatticeClass::sigma_plus())
                .to_json())
        }),
        fixture("word-reverse-image", json!([1, -3, -3]), || {
            let reverse = [LatticeClass::sigma_plus(), LatticeClass::sigma_minus()];
            Ok(Isometry::from_word(&reverse)?
                .apply(&LatticeClass::sigma_plus())
                .to_json())
        }),
        fixture(
            "word-matrices-inverse",
            json!([1, 0, 0, 0, 1, 0, 0, 0, 1]),
            || {
                let forward = Isometry::from_word(&f0_word())?;
                let reverse = forward.inverse();
                Ok(forward.matrix().mul(reverse.matrix()).to_json())
            },
        ),
        fixture("alpha-single-reflection", json!(1), || {
            Ok(Isometry::reflection(&LatticeClass::sigma_plus())?
                .alpha()
                .to_json())
        }),
        fixture("ring-single-reflection", json!("Z2"), || {
            let r = Isometry::reflection(&LatticeClass::sigma_plus())?;
            Ok(json!(r.ym_ring(&LatticeClass::sigma_plus())?.as_str()))
        }),
        fixture("ring-word-forward", json!("Z"), || {
            let iso = Isometry::from_word(&f0_word())?;
            Ok(json!(iso.ym_ring(&LatticeClass::sigma_plus())?.as_str()))
        }),
        fixture("ym-dimension-base-bundle", json!(-4), || {
            Ok(crate::json_int(&ym_dimension(
                &BigInt::from(-1),
                &BigInt::from(1),
            )))
        }),
        fixture(
            "poincare-origin-lift",
            json!({"x": "0", "y": "0", "z": "1"}),
            || Ok(ChamberPoint::from_poincare(&rational(0, 1), &rational(0, 1))?.to_json()),
        ),
        fixture(
            "crossings-from-origin",
            json!({
                "crossings": [
                    {"wall": {"a": 1, "b": 1, "c": 1, "eps": 1},
                     "direction": -1, "contribution": -1, "doubled": -2},
                    {"wall": {"a": 1, "b": 3, "c": 3, "eps": 1},
                     "direction": -1, "contribution": -1, "doubled": -2},
                ],
                "gamma_dot_W": -2,
                "doubled_total": -4,
                "start": {"x": "0", "y": "0", "z": "1"},
                "end": {"x": "4", "y": "8", "z": "9"},
            }),
            || {
                let iso = Isometry::from_word(&f0_word())?;
                let report = separation_crossings(
                    &iso,
                    &ChamberPoint::origin(),
                    HomologyOrientation::Standard,
                )?;
                Ok(report.to_json())
            },
        ),
        fixture(
            "crossings-from-second-point",
            json!({
                "crossings": [
                    {"wall": {"a": -1, "b": -1, "c": 1, "eps": 1},
                     "direction": 1, "contribution": 1, "doubled": 2},
                    {"wall": {"a": 1, "b": 1, "c": 1, "eps": 1},
                     "direction": -1, "contribution": -1, "doubled": -2},
                    {"wall": {"a": 1, "b": 3, "c": 3, "eps": 1},
                     "direction": -1, "contribution": -1, "doubled": -2},
                    {"wall": {"a": 7, "b": 11, "c": 13, "eps": 1},
                     "direction": -1, "contribution": -1, "doubled": -2},
                ],
                "gamma_dot_W": -2,
                "doubled_total": -4,
                "start": {"x": "-2", "y": "-2", "z": "3"},
                "end": {"x": "18", "y": "30", "z": "35"},
            }),
            || {
                let iso = Isometry::from_word(&f0_word())?;
                let start = ChamberPoint::from_poincare(&rational(-1, 2), &rational(-1, 2))?;
                let report = separation_crossings(&iso, &start, HomologyOrientation::Standard)?;
                Ok(report.to_json())
            },
        ),
        fixture(
            "crossing-order-second-point",
            json!([
                {"wall": "W(-1,-1,1)", "t": "35/284", "direction": 1},
                {"wall": "W(1,1,1)", "t": "245/284", "direction": -1},
                {"wall": "W(1,3,3)", "t": "595/604", "direction": -1},
                {"wall": "W(7,11,13)", "t": "875/876", "direction": -1},
            ]),
            || {
                let iso = Isometry::from_word(&f0_word())?;
                let start = ChamberPoint::from_poincare(&rational(-1, 2), &rational(-1, 2))?;
                let end = start.transformed(&iso)?;
                let ordered =
                    segment_crossings_oracle(&start, &end, HomologyOrientation::Standard)?;
                Ok(Value::Array(
                    ordered
                        .iter()
                        .map(|c| {
                            json!({
                                "wall": c.wall.label(),
                                "t": c.t.to_string(),
                                "direction": c.direction.to_json(),
                            })
                        })
                        .collect(),
                ))
            },
        ),
        fixture(
            "invariant-word-forward",
            json!({"ring": "Z", "terms": {"X0": -4}}),
            || {
                let iso = Isometry::from_word(&f0_word())?;
                Ok(one_param_invariant(
                    &iso,
                    &ChamberPoint::origin(),
                    "X0",
                    &LatticeClass::sigma_plus(),
                    HomologyOrientation::Standard,
                )?
                .to_json())
            },
        ),
        fixture(
            "invariant-word-reverse",
            json!({"ring": "Z", "terms": {"X0": 4}}),
            || {
                let iso = Isometry::from_word(&f0_word())?.inverse();
                Ok(one_param_invariant(
                    &iso,
                    &ChamberPoint::origin(),
                    "X0",
                    &LatticeClass::sigma_plus(),
                    HomologyOrientation::Standard,
                )?
                .to_json())
            },
        ),
        fixture(
            "invariant-negate",
            json!({"ring": "Z", "terms": {"X0": 4}}),
            || {
                let iso = Isometry::from_word(&f0_word())?;
                let d0 = one_param_invariant(
                    &iso,
                    &ChamberPoint::origin(),
                    "X0",
                    &LatticeClass::sigma_plus(),
                    HomologyOrientation::Standard,
                )?;
                Ok(d0.negate().to_json())
            },
        ),
        fixture(
            "invariant-composite",
            json!({"ring": "Z", "terms": {"X0": 4, "X1": -4}}),
            || Ok(composite_invariant()?.to_json()),
        ),
        fixture("invariant-composite-evaluated-equal", json!(0), || {
            let composite = composite_invariant()?;
            let mut values = BTreeMap::new();
            values.insert("X0".to_string(), BigInt::from(5));
            values.insert("X1".to_string(), BigInt::from(5));
            Ok(crate::json_int(&composite.evaluate(&values)?))
        }),
        fixture("invariant-composite-evaluated-distinct", json!(-4), || {
            let composite = composite_invariant()?;
            let mut values = BTreeMap::new();
            values.insert("X0".to_string(), BigInt::from(1));
            values.insert("X1".to_string(), BigInt::from(2));
            Ok(crate::json_int(&composite.evaluate(&values)?))
        }),
        fixture("sw-epsilon-parity-b-plus-4", json!(1), || {
            Ok(json!(sw_epsilon_parity(&BigInt::from(4))?))
        }),
        fixture("sw-ring-single-reflection", json!("Z2"), || {
            Ok(json!(sw_ring(Sign::Plus, 1).as_str()))
        }),
        fixture("morgan-szabo-parity-3", json!(1), || {
            Ok(json!(morgan_szabo_parity(&BigInt::from(3))?))
        }),
        fixture("morgan-szabo-parity-7", json!(0), || {
            Ok(json!(morgan_szabo_parity(&BigInt::from(7))?))
        }),
        fixture(
            "sw-reflection-invariant-3",
            json!({"parity": 1, "ring": "Z2", "epsilon_parity": 1}),
            || Ok(sw_reflection_invariant(&SwContext::new(3, Sign::Plus)?)?.to_json()),
        ),
        fixture(
            "sw-reflection-invariant-7",
            json!({"parity": 0, "ring": "Z2", "epsilon_parity": 1}),
            || Ok(sw_reflection_invariant(&SwContext::new(7, Sign::Plus)?)?.to_json()),
        ),
        fixture(
            "walls-c-max-3",
            json!({
                "count": 12,
                "labels": [
                    "W(-1,-1,1)", "W(-1,1,1)", "W(1,-1,1)", "W(1,1,1)",
                    "W(-3,-1,3)", "W(-3,1,3)", "W(-1,-3,3)", "W(-1,3,3)",
                    "W(1,-3,3)", "W(1,3,3)", "W(3,-1,3)", "W(3,1,3)",
                ],
            }),
            || {
                let walls = enumerate_walls(&BigInt::from(3));
                let labels: Vec<Value> = walls.iter().map(|w| json!(w.label())).collect();
                Ok(json!({"count": walls.len(), "labels": labels}))
            },
        ),
        fixture("walls-disjoint-to-15", json!(true), || {
            Ok(json!(walls_disjoint_check(&BigInt::from(15))))
        }),
        fixture(
            "epsilon-anchors",
            json!({"W(1,1,1)": 1, "W(1,3,3)": 1, "W(-1,-1,1)": 1, "W(7,11,13)": 1}),
            || {
                let eps = |a: i64, b: i64, c: i64| -> Result<Value> {
                    Ok(epsilon(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c))?.to_json())
                };
                Ok(json!({
                    "W(1,1,1)": eps(1, 1, 1)?,
                    "W(1,3,3)": eps(1, 3, 3)?,
                    "W(-1,-1,1)": eps(-1, -1, 1)?,
                    "W(7,11,13)": eps(7, 11, 13)?,
                }))
            },
        ),
        fixture(
            "figure-includes-w-7-11-13",
            json!({"has_wall": true, "paths": 1}),
            || {
                let spec = FigureSpec {
                    wall_c_max: BigInt::from(13),
                    points: vec![("p".to_string(), rational(-1, 2), rational(-1, 2))],
                    words: vec![f0_word()],
                    ..FigureSpec::default()
                };
                let svg = render_figure(&spec)?;
                Ok(json!({
                    "has_wall": svg.contains("W(7,11,13)"),
                    "paths": svg.matches("class=\"path\"").count(),
                }))
            },
        ),
        fixture(
            "start-point-independence",
            json!({"count": 100, "gamma_values": [-2]}),
            || Ok(start_point_independence(11, 100)),
        ),
        fixture(
            "oracle-equivalence",
            json!({"count": 200, "agreements": 200}),
            || Ok(oracle_equivalence(12, 200)),
        ),
        fixture(
            "crossing-algebra-laws",
            json!({"rounds": 60, "checks": 60, "all_hold": true}),
            || Ok(algebra_laws(13, 60)),
        ),
    ]
}

fn composite_invariant() -> Result<crate::crossing::InvariantExpression> {
    let iso = Isometry::from_word(&f0_word())?;
    let origin = ChamberPoint::origin();
    let lift = LatticeClass::sigma_plus();
    let d1 = one_param_invariant(&iso, &origin, "X1", &lift, HomologyOrientation::Standard)?;
    let d0 = one_param_invariant(&iso, &origin, "X0", &lift, HomologyOrientation::Standard)?;
    Ok(d1.add(&d0.negate()))
}

/// The four square -1 classes with s-coefficient 1; generators for random
/// reflection words.
fn word_generators() -> [LatticeClass; 4] {
    [
        LatticeClass::sigma_plus(),
        LatticeClass::sigma_minus(),
        LatticeClass::new(1, -1, 1),
        LatticeClass::new(-1, -1, 1),
    ]
}

/// A random rational in [-1, 1] with denominator at most `max_denom`.
fn random_rational(rng: &mut ChaCha8Rng, max_denom: i64) -> BigRational {
    let denom = rng.random_range(1..=max_denom);
    let numer = rng.random_range(-denom..=denom);
    rational(numer, denom)
}

fn random_poincare_point(
    rng: &mut ChaCha8Rng,
    max_denom: i64,
    radius_sq_num: i64,
    radius_sq_den: i64,
) -> Option<ChamberPoint> {
    let u = random_rational(rng, max_denom);
    let v = random_rational(rng, max_denom);
    if &u * &u + &v * &v > rational(radius_sq_num, radius_sq_den) {
        return None;
    }
    ChamberPoint::from_poincare(&u, &v).ok()
}

fn random_word(rng: &mut ChaCha8Rng, min_len: usize, max_len: usize) -> Vec<LatticeClass> {
    let generators = word_generators();
    let len = rng.random_range(min_len..=max_len);
    (0..len)
        .map(|_| generators[rng.random_range(0..generators.len())].clone())
        .collect()
}

/// Runs the f0 word from `target` random rational Poincare start points
/// (denominators <= 20, radius <= 9/10) and collects the distinct crossing
/// counts. Non-generic draws are skipped, up to a 10x oversampling cap.
pub fn start_point_independence(seed: u64, target: usize) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let iso = Isometry::from_word(&f0_word()).expect("generators have square -1");
    let mut count = 0usize;
    let mut gammas: BTreeSet<BigInt> = BTreeSet::new();
    let mut attempts = 0usize;
    while count < target && attempts < 10 * target {
        attempts += 1;
        let Some(p0) = random_poincare_point(&mut rng, 20, 81, 100) else {
            continue;
        };
        match separation_crossings(&iso, &p0, HomologyOrientation::Standard) {
            Ok(report) => {
                gammas.insert(report.gamma_dot_w().clone());
                count += 1;
            }
            Err(Error::NonGenericPoint { .. }) => continue,
            Err(e) => {
                return json!({"error": e.to_string()});
            }
        }
    }
    let values: Vec<Value> = gammas.iter().map(crate::json_int).collect();
    json!({"count": count, "gamma_values": values})
}

/// Compares the separation count with the ordered segment oracle on random
/// (point, word) instances; reports how many agree as multisets.
pub fn oracle_equivalence(seed: u64, target: usize) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0usize;
    let mut agreements = 0usize;
    let mut attempts = 0usize;
    while count < target && attempts < 10 * target {
        attempts += 1;
        let Some(p0) = random_poincare_point(&mut rng, 12, 49, 100) else {
            continue;
        };
        let word = random_word(&mut rng, 1, 4);
        let iso = Isometry::from_word(&word).expect("generators have square -1");
        let end = match p0.transformed(&iso) {
            Ok(end) => end,
            Err(_) => continue,
        };
        if end == p0 {
            continue;
        }
        let separation = match separation_crossings(&iso, &p0, HomologyOrientation::Standard) {
            Ok(report) => report,
            Err(Error::NonGenericPoint { .. }) => continue,
            Err(e) => return json!({"error": e.to_string()}),
        };
        let ordered = match segment_crossings_oracle(&p0, &end, HomologyOrientation::Standard) {
            Ok(list) => list,
            Err(Error::NonGenericPoint { .. }) => continue,
            Err(e) => return json!({"error": e.to_string()}),
        };
        count += 1;
        let mut lhs: Vec<(String, i64)> = separation
            .crossings()
            .iter()
            .map(|c| (c.wall.label(), c.direction.unit()))
            .collect();
        let mut rhs: Vec<(String, i64)> = ordered
            .iter()
            .map(|c| (c.wall.label(), c.direction.unit()))
            .collect();
        lhs.sort();
        rhs.sort();
        let sorted_by_t = ordered.windows(2).all(|pair| pair[0].t < pair[1].t);
        if lhs == rhs && sorted_by_t {
            agreements += 1;
        }
    }
    json!({"count": count, "agreements": agreements})
}

/// Checks additivity under word concatenation, antisymmetry under inverses,
/// and the homology-orientation flip on random words. Each round redraws
/// until a fully generic configuration is found.
pub fn algebra_laws(seed: u64, rounds: usize) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0usize;
    let mut all_hold = true;
    for _ in 0..rounds {
        for _attempt in 0..50 {
            let Some(p0) = random_poincare_point(&mut rng, 8, 1, 4) else {
                continue;
            };
            let w1 = random_word(&mut rng, 0, 2);
            let w2 = random_word(&mut rng, 0, 2);
            let m1 = Isometry::from_word(&w1).expect("generators have square -1");
            let m2 = Isometry::from_word(&w2).expect("generators have square -1");
            let mut concat = w1.clone();
            concat.extend(w2.iter().cloned());
            let m12 = Isometry::from_word(&concat).expect("generators have square -1");

            let gamma = |iso: &Isometry, p: &ChamberPoint, orientation| -> Result<BigInt> {
                separation_crossings(iso, p, orientation).map(|r| r.gamma_dot_w().clone())
            };
            let outcome = (|| -> Result<bool> {
                let std = HomologyOrientation::Standard;
                let q = p0.transformed(&m1)?;
                let total = gamma(&m12, &p0, std)?;
                let additive = total == gamma(&m1, &p0, std)? + gamma(&m2, &q, std)?;
                let end = p0.transformed(&m12)?;
                let inverse = gamma(&m12.inverse(), &end, std)? == -&total;
                let flipped = gamma(&m12, &p0, HomologyOrientation::Reversed)? == -&total;
                Ok(additive && inverse && flipped)
            })();
            match outcome {
                Ok(held) => {
                    checks += 1;
                    if !held {
                        all_hold = false;
                    }
                    break;
                }
                Err(Error::NonGenericPoint { .. }) => continue,
                Err(e) => return json!({"error": e.to_string()}),
            }
        }
    }
    json!({"rounds": rounds, "checks": checks, "all_hold": all_hold})
}
