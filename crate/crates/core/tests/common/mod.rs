#![allow(dead_code)]

use dea_facets_core::{validate, Dataset, Dmu, Rational};
use proptest::prelude::*;

pub fn r(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn dataset(m: usize, s: usize, rows: Vec<Vec<i64>>) -> Dataset {
    let dmus = rows
        .into_iter()
        .enumerate()
        .map(|(j, row)| {
            Dmu::observed(
                format!("D{}", j + 1),
                row[..m].iter().map(|&v| r(v)).collect(),
                row[m..].iter().map(|&v| r(v)).collect(),
            )
        })
        .collect();
    let inputs = (1..=m).map(|i| format!("x{i}")).collect();
    let outputs = (1..=s).map(|i| format!("y{i}")).collect();
    Dataset::new(inputs, outputs, dmus).unwrap()
}

/// Small positive integer datasets with `m, s <= 3` and `n <= 8`, free of
/// proportional pairs.
pub fn datasets() -> impl Strategy<Value = Dataset> {
    (1usize..=3, 1usize..=3, 1usize..=8)
        .prop_flat_map(|(m, s, n)| {
            let rows = prop::collection::vec(prop::collection::vec(1i64..=9, m + s), n);
            (Just(m), Just(s), rows)
        })
        .prop_map(|(m, s, rows)| dataset(m, s, rows))
        .prop_filter("proportional pair", |d| validate(d).is_empty())
}
