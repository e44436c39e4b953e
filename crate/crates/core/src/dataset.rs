//! Observed decision making units and the dataset they form.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// A perturbed coordinate of a virtual unit. Inputs are only ever increased
/// and outputs only ever decreased, so the axis fixes the direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    Input(usize),
    Output(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Observed,
    Virtual { parent: String, axis: Axis },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dmu {
    pub id: String,
    pub inputs: Vec<Rational>,
    pub outputs: Vec<Rational>,
    pub origin: Origin,
}

impl Dmu {
    pub fn observed(id: impl Into<String>, inputs: Vec<Rational>, outputs: Vec<Rational>) -> Self {
        Dmu {
            id: id.into(),
            inputs,
            outputs,
            origin: Origin::Observed,
        }
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self.origin, Origin::Virtual { .. })
    }

    /// The point `(x, y)` as one vector, inputs first.
    pub fn point(&self) -> Vec<Rational> {
        self.inputs.iter().chain(&self.outputs).cloned().collect()
    }
}

/// An ordered collection of observed units sharing `m` inputs and `s` outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    input_names: Vec<String>,
    output_names: Vec<String>,
    dmus: Vec<Dmu>,
}

impl Dataset {
    pub fn new(
        input_names: Vec<String>,
        output_names: Vec<String>,
        dmus: Vec<Dmu>,
    ) -> Result<Self> {
        if input_names.is_empty() || output_names.is_empty() {
            return Err(Error::NoAxes);
        }
        if dmus.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let mut seen = BTreeSet::new();
        for dmu in &dmus {
            if !seen.insert(dmu.id.as_str()) {
                return Err(Error::DuplicateId(dmu.id.clone()));
            }
            check_len(&dmu.id, "input", dmu.inputs.len(), input_names.len())?;
            check_len(&dmu.id, "output", dmu.outputs.len(), output_names.len())?;
        }
        Ok(Dataset {
            input_names,
            output_names,
            dmus,
        })
    }

    /// Builds a dataset with generated axis names `x1..xm`, `y1..ys` from
    /// `(id, inputs, outputs)` rows of integers.
    pub fn from_integers(rows: &[(&str, &[i64], &[i64])]) -> Result<Self> {
        let (m, s) = rows
            .first()
            .map(|r| (r.1.len(), r.2.len()))
            .ok_or(Error::EmptyDataset)?;
        let dmus = rows
            .iter()
            .map(|(id, x, y)| {
                Dmu::observed(
                    *id,
                    x.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect(),
                    y.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect(),
                )
            })
            .collect();
        Dataset::new(
            (1..=m).map(|i| format!("x{i}")).collect(),
            (1..=s).map(|r| format!("y{r}")).collect(),
            dmus,
        )
    }

    pub fn dmus(&self) -> &[Dmu] {
        &self.dmus
    }

    pub fn dmu(&self, k: usize) -> Result<&Dmu> {
        self.dmus.get(k).ok_or(Error::IndexOutOfRange(k))
    }

    pub fn n(&self) -> usize {
        self.dmus.len()
    }

    pub fn m(&self) -> usize {
        self.input_names.len()
    }

    pub fn s(&self) -> usize {
        self.output_names.len()
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.dmus.iter().position(|d| d.id == id)
    }

    /// Name of axis `i` in the concatenated `(inputs, outputs)` ordering.
    pub fn axis_name(&self, i: usize) -> &str {
        if i < self.m() {
            &self.input_names[i]
        } else {
            &self.output_names[i - self.m()]
        }
    }
}

fn check_len(id: &str, what: &'static str, found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::DimensionMismatch {
            id: id.into(),
            what,
            found,
            expected,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A coordinate that is not strictly positive.
    Positivity { id: String, axis: Axis },
    /// `second = t * first` for some `t > 0`.
    ProportionalPair { first: String, second: String },
}

/// Reports positivity failures and proportional pairs. Proportional pairs are
/// only fatal later, when both members turn out to be CCR-efficient.
pub fn validate(d: &Dataset) -> Vec<Violation> {
    let mut out = Vec::new();
    for dmu in d.dmus() {
        let bad_in = dmu
            .inputs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_positive());
        let bad_out = dmu
            .outputs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_positive());
        out.extend(bad_in.map(|(i, _)| Violation::Positivity {
            id: dmu.id.clone(),
            axis: Axis::Input(i),
        }));
        out.extend(bad_out.map(|(r, _)| Violation::Positivity {
            id: dmu.id.clone(),
            axis: Axis::Output(r),
        }));
    }
    let points: Vec<_> = d.dmus().iter().map(Dmu::point).collect();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            if proportional(&points[a], &points[b]) {
                out.push(Violation::ProportionalPair {
                    first: d.dmus()[a].id.clone(),
                    second: d.dmus()[b].id.clone(),
                });
            }
        }
    }
    out
}

/// True when `b = t * a` for some `t > 0`.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let Some(p) = a.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    let t = &b[p] / &a[p];
    t.is_positive() && a.iter().zip(b).all(|(ai, bi)| &(ai * &t) == bi)
}

/// Componentwise worst observed performance: the largest input and smallest
/// output on every axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeIdeal {
    pub point: Vec<Rational>,
}

pub fn negative_ideal(d: &Dataset) -> Result<NegativeIdeal> {
    let first = d.dmus().first().ok_or(Error::EmptyDataset)?;
    let mut x = first.inputs.clone();
    let mut y = first.outputs.clone();
    for dmu in &d.dmus()[1..] {
        for (acc, v) in x.iter_mut().zip(&dmu.inputs) {
            if v > acc {
                *acc = v.clone();
            }
        }
        for (acc, v) in y.iter_mut().zip(&dmu.outputs) {
            if v < acc {
                *acc = v.clone();
            }
        }
    }
    x.extend(y);
    Ok(NegativeIdeal { point: x })
}
