//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use dea_facets::{parse_dataset, run};
use dea_facets_core::linalg::{dot_mixed, rank};
use dea_facets_core::models::{
    conic_representable, eval_input, eval_multiplier_input, eval_multiplier_output, eval_output,
    AxisOutcome,
};
use dea_facets_core::oracle::{brute_force_facets, dual_cone_facets, DEFAULT_SUBSET_CAP};
use dea_facets_core::{
    classify, find_facets, negative_ideal, validate, BigInt, Dataset, Dmu, DmuStatus, Extremity,
    FacetKind, FacetReport, Rational, SearchConfig,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const FIXTURES: [&str; 3] = ["table1.csv", "table2.csv", "table5.csv"];
const RANDOM_CASES: u32 = 200;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn load(name: &str) -> Dataset {
    parse_dataset(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ids(d: &Dataset, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&k| d.dmus()[k].id.clone()).collect()
}

fn labelled(r: &FacetReport) -> Vec<(Vec<BigInt>, FacetKind)> {
    r.facets
        .iter()
        .map(|f| (f.coefficients.clone(), f.kind))
        .collect()
}

fn of_kind(r: &FacetReport, kind: FacetKind) -> BTreeSet<Vec<BigInt>> {
    r.facets
        .iter()
        .filter(|f| f.kind == kind)
        .map(|f| f.coefficients.clone())
        .collect()
}

/// `(dmu id, axis label)` for every infeasible super-efficiency model.
fn infeasible_cells(d: &Dataset, r: &FacetReport) -> Vec<(String, String)> {
    let mut cells = Vec::new();
    for &k in &r.classification.efficient {
        let axis = r.classification.entries[k].axis.as_ref().unwrap();
        for (l, o) in axis.inputs.iter().enumerate() {
            if !o.is_feasible() {
                cells.push((d.dmus()[k].id.clone(), format!("l={}", l + 1)));
            }
        }
        for (t, o) in axis.outputs.iter().enumerate() {
            if !o.is_feasible() {
                cells.push((d.dmus()[k].id.clone(), format!("q={}", t + 1)));
            }
        }
    }
    cells
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let value = f();
    (value, start.elapsed())
}

fn criterion1() -> Outcome {
    let (r, elapsed) = timed(|| {
        let d = load("table1.csv");
        let r = find_facets(&d, &SearchConfig::default()).unwrap();
        (d, r)
    });
    let (d, r) = r;
    let c = &r.classification;
    check(
        ids(&d, &c.efficient) == ["D1", "D2", "D3"],
        "E != {D1, D2, D3}",
    )?;
    for k in 0..3 {
        check(
            c.entries[k].extremity == Some(Extremity::Extreme),
            format!("D{} not extreme", k + 1),
        )?;
    }
    check(
        c.entries[3].status == DmuStatus::Interior,
        "D4 not interior",
    )?;
    let cells = infeasible_cells(&d, &r);
    let input_cells: Vec<_> = cells
        .iter()
        .filter(|(_, a)| a.starts_with('l'))
        .cloned()
        .collect();
    check(
        input_cells
            == [
                ("D1".to_string(), "l=2".to_string()),
                ("D3".to_string(), "l=1".to_string()),
            ],
        format!("infeasible input-axis cells {input_cells:?}"),
    )?;
    let weak = of_kind(&r, FacetKind::Weak);
    check(
        weak == [ints(&[-3, 0, 1]), ints(&[0, -5, 1])].into(),
        format!("weak facets {weak:?}"),
    )?;
    check(
        r.negative_ideal.point == [q(6, 1), q(4, 1), q(2, 1)],
        "w != (6, 4, 2)",
    )?;
    check(
        elapsed < Duration::from_secs(1),
        format!("runtime {elapsed:?} >= 1 s"),
    )?;
    Ok(format!("table1 exact, {elapsed:.2?}"))
}

fn criterion2() -> Outcome {
    let ((d, r), elapsed) = timed(|| {
        let d = load("table2.csv");
        let r = find_facets(&d, &SearchConfig::default()).unwrap();
        (d, r)
    });
    check(
        ids(&d, &r.classification.efficient) == ["D1", "D2", "D4"],
        "E != {D1, D2, D4}",
    )?;
    let grid: Vec<Vec<bool>> = r
        .classification
        .efficient
        .iter()
        .map(|&k| {
            let a = r.classification.entries[k].axis.as_ref().unwrap();
            a.inputs
                .iter()
                .chain(&a.outputs)
                .map(AxisOutcome::is_feasible)
                .collect()
        })
        .collect();
    let expected_grid = vec![
        vec![true, false, true, false],
        vec![false, false, false, true],
        vec![false, true, true, false],
    ];
    check(grid == expected_grid, format!("feasibility grid {grid:?}"))?;
    let expected_pool: Vec<Vec<Rational>> = [
        [2, 4, 7, 4],
        [2, 3, 7, 3],
        [2, 2, 3, 5],
        [1, 3, 3, 5],
        [1, 2, 2, 5],
        [5, 2, 6, 1],
        [4, 2, 6, 0],
    ]
    .iter()
    .map(|v| v.iter().map(|&x| q(x, 1)).collect())
    .collect();
    let pool: Vec<Vec<Rational>> = r.pool.virtuals().iter().map(Dmu::point).collect();
    check(
        pool == expected_pool,
        "virtual pool differs from expected listing",
    )?;
    check(
        (r.weak_count(), r.strong_count()) == (7, 1),
        format!("{} weak, {} strong", r.weak_count(), r.strong_count()),
    )?;
    let expected_weak: BTreeSet<Vec<BigInt>> = [
        [-23, 0, 6, 1],
        [-1, -4, 2, 0],
        [-7, 0, 2, 0],
        [0, -27, 8, 6],
        [0, -3, 1, 0],
        [0, -5, 0, 2],
        [-5, 0, 0, 1],
    ]
    .iter()
    .map(|v| ints(v))
    .collect();
    check(
        of_kind(&r, FacetKind::Weak) == expected_weak,
        "weak facets differ from expected set",
    )?;
    let strong = r
        .facets
        .iter()
        .find(|f| f.kind == FacetKind::Strong)
        .unwrap();
    check(
        strong.coefficients == ints(&[-1, -55, 17, 12]),
        "strong facet coefficients",
    )?;
    let incident: Vec<&str> = strong
        .incidence
        .iter()
        .map(|&j| r.pool.members[j].id.as_str())
        .collect();
    check(
        incident == ["D1", "D2", "D4"],
        format!("strong facet incidence {incident:?}"),
    )?;
    check(
        elapsed < Duration::from_secs(5),
        format!("runtime {elapsed:?} >= 5 s"),
    )?;
    Ok(format!("table2 grid, pool and facets exact, {elapsed:.2?}"))
}

/// Exact support + rank validation of one facet against the dataset and pool.
fn facet_is_valid(d: &Dataset, r: &FacetReport, p: &[BigInt]) -> bool {
    let w = negative_ideal(d).unwrap();
    let m = d.m();
    let signs = p[..m].iter().all(|v| !v.is_positive()) && p[m..].iter().all(|v| !v.is_negative());
    let supports = d
        .dmus()
        .iter()
        .chain(&r.pool.members)
        .all(|z| !dot_mixed(p, &z.point()).is_positive());
    let incident: Vec<Vec<Rational>> = r
        .pool
        .members
        .iter()
        .map(Dmu::point)
        .filter(|z| dot_mixed(p, z).is_zero())
        .collect();
    signs && supports && dot_mixed(p, &w.point).is_negative() && rank(&incident) == m + d.s() - 1
}

fn criterion3() -> Outcome {
    let ((d, r), elapsed) = timed(|| {
        let d = load("table5.csv");
        let r = find_facets(&d, &SearchConfig::default()).unwrap();
        (d, r)
    });
    check(
        ids(&d, &r.classification.efficient) == ["1", "4", "7", "12", "15", "17", "20"],
        "E != {1, 4, 7, 12, 15, 17, 20}",
    )?;
    let strong: Vec<_> = r
        .facets
        .iter()
        .filter(|f| f.kind == FacetKind::Strong)
        .collect();
    check(strong.len() == 1, format!("{} strong facets", strong.len()))?;
    let incident: Vec<&str> = strong[0]
        .incidence
        .iter()
        .map(|&j| r.pool.members[j].id.as_str())
        .collect();
    check(
        incident == ["4", "7", "12", "15", "17"],
        format!("strong incidence {incident:?}"),
    )?;
    let invalid = r
        .facets
        .iter()
        .filter(|f| !facet_is_valid(&d, &r, &f.coefficients))
        .count();
    check(
        invalid == 0,
        format!("{invalid} facets fail support/rank validation"),
    )?;
    check(
        elapsed < Duration::from_secs(600),
        format!("runtime {elapsed:?} >= 10 min"),
    )?;
    let weak = r.weak_count();
    // 216 +/- 10%
    check(
        (195..=237).contains(&weak),
        format!(
            "weak count {weak} outside [195, 237] (target 216); strong facet exact, {elapsed:.2?}"
        ),
    )?;
    Ok(format!("{weak} weak, 1 strong, {elapsed:.2?}"))
}

fn random_dataset() -> impl Strategy<Value = Dataset> {
    (1usize..=3, 1usize..=3, 1usize..=8)
        .prop_flat_map(|(m, s, n)| {
            (
                Just(m),
                Just(s),
                prop::collection::vec(prop::collection::vec(1i64..=9, m + s), n),
            )
        })
        .prop_map(|(m, s, rows)| {
            let dmus = rows
                .iter()
                .enumerate()
                .map(|(j, row)| {
                    Dmu::observed(
                        format!("D{}", j + 1),
                        row[..m].iter().map(|&v| q(v, 1)).collect(),
                        row[m..].iter().map(|&v| q(v, 1)).collect(),
                    )
                })
                .collect();
            Dataset::new(
                (1..=m).map(|i| format!("x{i}")).collect(),
                (1..=s).map(|r| format!("y{r}")).collect(),
                dmus,
            )
            .unwrap()
        })
        .prop_filter("proportional pair", |d| validate(d).is_empty())
}

fn run_random(f: impl Fn(Dataset) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: RANDOM_CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&random_dataset(), f).map_err(|e| e.to_string())
}

fn criterion4() -> Outcome {
    run_random(|d| {
        let all: Vec<usize> = (0..d.n()).collect();
        for k in 0..d.n() {
            let theta = eval_input(&d, k, &all).unwrap().value;
            let phi = eval_output(&d, k, &all).unwrap().value;
            prop_assert_eq!(
                &theta,
                &eval_multiplier_input(&d, k).unwrap().objective,
                "input duality"
            );
            prop_assert_eq!(
                &phi,
                &eval_multiplier_output(&d, k).unwrap().objective,
                "output duality"
            );
            prop_assert!((theta * phi).is_one(), "reciprocity");
        }
        let c = classify(&d).unwrap();
        for &k in &c.efficient {
            let others: Vec<usize> = c.efficient.iter().copied().filter(|&j| j != k).collect();
            let extreme = c.entries[k].extremity == Some(Extremity::Extreme);
            prop_assert_eq!(
                extreme,
                !conic_representable(&d, k, &others).unwrap(),
                "extremity vs conic representability"
            );
            let axis = c.entries[k].axis.as_ref().unwrap();
            for o in &axis.inputs {
                if let AxisOutcome::Feasible(t) = o {
                    prop_assert!(*t >= Rational::one(), "theta_l >= 1");
                }
            }
            for o in &axis.outputs {
                if let AxisOutcome::Feasible(f) = o {
                    prop_assert!(*f <= Rational::one(), "phi_q <= 1");
                }
            }
            if c.efficient.len() >= 2 {
                if d.m() == 1 {
                    prop_assert!(
                        axis.inputs.iter().all(AxisOutcome::is_feasible),
                        "single input"
                    );
                }
                if d.s() == 1 {
                    prop_assert!(
                        axis.outputs.iter().all(AxisOutcome::is_feasible),
                        "single output"
                    );
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{RANDOM_CASES} random datasets, zero exceptions"))
}

fn criterion5() -> Outcome {
    let cfg = SearchConfig::default();
    for name in FIXTURES {
        let d = load(name);
        let found = find_facets(&d, &cfg).unwrap();
        let brute =
            brute_force_facets(&d, &cfg, DEFAULT_SUBSET_CAP).map_err(|e| format!("{name}: {e}"))?;
        check(
            labelled(&found) == labelled(&brute),
            format!("{name}: brute force differs"),
        )?;
        if d.m() + d.s() <= 6 {
            let cone = dual_cone_facets(&d, &found.classification).unwrap();
            let ours: Vec<Vec<BigInt>> = found
                .facets
                .iter()
                .map(|f| f.coefficients.clone())
                .collect();
            check(ours == cone, format!("{name}: dual cone differs"))?;
        }
    }
    run_random(|d| {
        let found = find_facets(&d, &cfg).unwrap();
        if found.pool.len() <= 12 {
            let brute = brute_force_facets(&d, &cfg, DEFAULT_SUBSET_CAP).unwrap();
            prop_assert_eq!(labelled(&found), labelled(&brute));
        }
        Ok(())
    })?;
    Ok(format!(
        "fixtures and {RANDOM_CASES} random datasets, zero set difference"
    ))
}

fn criterion6() -> Outcome {
    let halves = [q(1, 2), q(1, 1), q(2, 1)];
    let mut runs = 0;
    for name in FIXTURES {
        let d = load(name);
        let base = labelled(&find_facets(&d, &SearchConfig::default()).unwrap());
        for alpha in &halves {
            for gamma in &halves {
                let r = find_facets(
                    &d,
                    &SearchConfig::new(alpha.clone(), gamma.clone()).unwrap(),
                )
                .unwrap();
                runs += 1;
                check(
                    labelled(&r) == base,
                    format!("{name}: alpha {alpha}, gamma {gamma} changes facets"),
                )?;
                for f in &r.facets {
                    let zero = f.coefficients.iter().any(Zero::is_zero);
                    let virt = f.incidence.iter().any(|&j| r.pool.is_virtual(j));
                    check(
                        zero == virt,
                        format!("{name}: weak-label mismatch on {:?}", f.coefficients),
                    )?;
                }
            }
        }
        let dir = tempfile::tempdir().unwrap();
        let mut outputs = Vec::new();
        for i in 0..2 {
            let json = dir.path().join(format!("{i}.json"));
            let input = fixture_path(name);
            let args = [
                "dea-facets",
                "facets",
                input.to_str().unwrap(),
                "--json",
                json.to_str().unwrap(),
                "--witnesses",
            ];
            let (mut out, mut err) = (Vec::new(), Vec::new());
            check(
                run(args, &mut out, &mut err) == 0,
                format!("{name}: facets command failed"),
            )?;
            outputs.push((out, std::fs::read(&json).unwrap()));
        }
        check(
            outputs[0] == outputs[1],
            format!("{name}: output not byte-identical"),
        )?;
    }
    Ok(format!(
        "{runs} alpha/gamma runs identical, labels consistent, JSON byte-identical"
    ))
}

fn main() {
    let criteria: [Criterion; 6] = [
        ("1 table1 fixture", criterion1),
        ("2 table2 fixture", criterion2),
        ("3 table5 bank branches", criterion3),
        ("4 model property suite", criterion4),
        ("5 oracle equivalence", criterion5),
        ("6 invariance and determinism", criterion6),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
