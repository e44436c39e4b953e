//! CCR envelopment and multiplier models, the per-axis super-efficiency
//! models, and the resulting classification of every unit.
//!
//! The non-Archimedean weight on slacks is realized lexicographically: the
//! radial score is optimized first, then the slack sum is maximized with the
//! radial score held at its optimum.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::dataset::{proportional, validate, Axis, Dataset, Dmu, Violation};
use crate::error::{Error, Result};
use crate::lp::{solve, LpProblem, LpSolution, Relation, Sense};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Input,
    Output,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialScore {
    pub orientation: Orientation,
    /// θ* for input orientation, φ* for output orientation.
    pub value: Rational,
    /// Sum of the phase-two slacks.
    pub total_slack: Rational,
    pub lambdas: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierScore {
    pub objective: Rational,
    /// Output weights.
    pub u: Vec<Rational>,
    /// Input weights.
    pub v: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DmuStatus {
    StrongEfficient,
    WeakEfficient,
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremity {
    Extreme,
    NonExtreme,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxisOutcome {
    Feasible(Rational),
    Infeasible,
}

impl AxisOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, AxisOutcome::Feasible(_))
    }
}

/// Super-efficiency results of one strong efficient unit, one entry per axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisFeasibility {
    pub inputs: Vec<AxisOutcome>,
    pub outputs: Vec<AxisOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmuClass {
    pub status: DmuStatus,
    pub score: RadialScore,
    /// Present only for strong efficient units.
    pub extremity: Option<Extremity>,
    pub axis: Option<AxisFeasibility>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub entries: Vec<DmuClass>,
    /// Indices of the strong efficient units, in dataset order.
    pub efficient: Vec<usize>,
}

fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn optimal(sol: LpSolution, id: &str) -> Result<(Rational, Vec<Rational>)> {
    match sol {
        LpSolution::Optimal { objective, values } => Ok((objective, values)),
        other => Err(Error::UnexpectedLpStatus {
            id: id.to_string(),
            status: other.status_name(),
        }),
    }
}

fn refs<'a>(d: &'a Dataset, reference: &[usize]) -> Result<Vec<&'a Dmu>> {
    reference.iter().map(|&j| d.dmu(j)).collect()
}

/// Envelopment model in standard form. Variable layout: the radial variable,
/// the reference intensities, input slacks, output slacks.
fn envelopment(reference: &[&Dmu], target: &Dmu, orientation: Orientation) -> LpProblem {
    let n = reference.len();
    let (m, s) = (target.inputs.len(), target.outputs.len());
    let width = 1 + n + m + s;
    let mut obj = vec![Rational::zero(); width];
    obj[0] = Rational::one();
    let sense = match orientation {
        Orientation::Input => Sense::Minimize,
        Orientation::Output => Sense::Maximize,
    };
    let mut p = LpProblem::new(sense, obj).free(0);
    for r in 0..s {
        let mut row = vec![Rational::zero(); width];
        for (j, dmu) in reference.iter().enumerate() {
            row[1 + j] = dmu.outputs[r].clone();
        }
        row[1 + n + m + r] = ri(-1);
        match orientation {
            Orientation::Input => p.constrain(row, Relation::Eq, target.outputs[r].clone()),
            Orientation::Output => {
                row[0] = -&target.outputs[r];
                p.constrain(row, Relation::Eq, Rational::zero());
            }
        }
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); width];
        for (j, dmu) in reference.iter().enumerate() {
            row[1 + j] = dmu.inputs[i].clone();
        }
        row[1 + n + i] = Rational::one();
        match orientation {
            Orientation::Input => {
                row[0] = -&target.inputs[i];
                p.constrain(row, Relation::Eq, Rational::zero());
            }
            Orientation::Output => p.constrain(row, Relation::Eq, target.inputs[i].clone()),
        }
    }
    p
}

/// Two-phase radial evaluation of an arbitrary point against `reference`.
pub fn radial_score(
    reference: &[&Dmu],
    target: &Dmu,
    orientation: Orientation,
) -> Result<RadialScore> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let n = reference.len();
    let mut p = envelopment(reference, target, orientation);
    let (value, _) = optimal(solve(&p)?, &target.id)?;

    // Phase two: hold the radial variable and maximize the slack sum.
    let width = p.num_vars();
    let mut fix = vec![Rational::zero(); width];
    fix[0] = Rational::one();
    p.constrain(fix, Relation::Eq, value.clone());
    p.sense = Sense::Maximize;
    p.objective = (0..width)
        .map(|c| {
            if c > n {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let (total_slack, values) = optimal(solve(&p)?, &target.id)?;
    Ok(RadialScore {
        orientation,
        value,
        total_slack,
        lambdas: values[1..=n].to_vec(),
    })
}

/// Radial input score only (no slack phase).
pub fn radial_input_value(reference: &[&Dmu], target: &Dmu) -> Result<Rational> {
    if reference.is_empty() {
        return Err(Error::EmptyReference);
    }
    let p = envelopment(reference, target, Orientation::Input);
    Ok(optimal(solve(&p)?, &target.id)?.0)
}

pub fn eval_input(d: &Dataset, k: usize, reference: &[usize]) -> Result<RadialScore> {
    radial_score(&refs(d, reference)?, d.dmu(k)?, Orientation::Input)
}

pub fn eval_output(d: &Dataset, k: usize, reference: &[usize]) -> Result<RadialScore> {
    radial_score(&refs(d, reference)?, d.dmu(k)?, Orientation::Output)
}

/// Input-oriented multiplier form: max `u·y_k` with `v·x_k = 1` and
/// `u·y_j - v·x_j <= 0` for every unit.
pub fn eval_multiplier_input(d: &Dataset, k: usize) -> Result<MultiplierScore> {
    multiplier(d, k, Orientation::Input)
}

/// Output-oriented multiplier form: min `v·x_k` with `u·y_k = 1` and
/// `v·x_j - u·y_j >= 0` for every unit.
pub fn eval_multiplier_output(d: &Dataset, k: usize) -> Result<MultiplierScore> {
    multiplier(d, k, Orientation::Output)
}

fn multiplier(d: &Dataset, k: usize, orientation: Orientation) -> Result<MultiplierScore> {
    let target = d.dmu(k)?;
    let (m, s) = (d.m(), d.s());
    // Layout: u (s entries), then v (m entries).
    let row_of = |dmu: &Dmu, u_sign: i64| -> Vec<Rational> {
        dmu.outputs
            .iter()
            .map(|y| y * ri(u_sign))
            .chain(dmu.inputs.iter().map(|x| x * ri(-u_sign)))
            .collect()
    };
    let p = match orientation {
        Orientation::Input => {
            let obj = target
                .outputs
                .iter()
                .cloned()
                .chain(vec![Rational::zero(); m])
                .collect();
            let mut p = LpProblem::new(Sense::Maximize, obj);
            for dmu in d.dmus() {
                p.constrain(row_of(dmu, 1), Relation::Le, Rational::zero());
            }
            let norm = vec![Rational::zero(); s]
                .into_iter()
                .chain(target.inputs.iter().cloned())
                .collect();
            p.constrain(norm, Relation::Eq, Rational::one());
            p
        }
        Orientation::Output => {
            let obj = vec![Rational::zero(); s]
                .into_iter()
                .chain(target.inputs.iter().cloned())
                .collect();
            let mut p = LpProblem::new(Sense::Minimize, obj);
            for dmu in d.dmus() {
                p.constrain(row_of(dmu, -1), Relation::Ge, Rational::zero());
            }
            let norm = target
                .outputs
                .iter()
                .cloned()
                .chain(vec![Rational::zero(); m])
                .collect();
            p.constrain(norm, Relation::Eq, Rational::one());
            p
        }
    };
    let (objective, values) = optimal(solve(&p)?, &target.id)?;
    Ok(MultiplierScore {
        objective,
        u: values[..s].to_vec(),
        v: values[s..].to_vec(),
    })
}

fn others<'a>(d: &'a Dataset, efficient: &[usize], k: usize) -> Result<Vec<&'a Dmu>> {
    efficient
        .iter()
        .filter(|&&j| j != k)
        .map(|&j| d.dmu(j))
        .collect()
}

/// Super-efficiency model on input axis `l`: min θ such that the units of
/// `efficient - {k}` reach `y_k` using at most `x_k` on every input except
/// `l`, where at most `θ x_lk` is allowed.
pub fn super_eff_input(
    d: &Dataset,
    efficient: &[usize],
    k: usize,
    l: usize,
) -> Result<AxisOutcome> {
    let target = d.dmu(k)?;
    if l >= d.m() {
        return Err(Error::IndexOutOfRange(l));
    }
    let reference = others(d, efficient, k)?;
    if reference.is_empty() {
        return Ok(AxisOutcome::Infeasible);
    }
    let width = 1 + reference.len();
    let mut obj = vec![Rational::zero(); width];
    obj[0] = Rational::one();
    let mut p = LpProblem::new(Sense::Minimize, obj).free(0);
    for i in 0..d.m() {
        let mut row: Vec<Rational> = core::iter::once(Rational::zero())
            .chain(reference.iter().map(|r| r.inputs[i].clone()))
            .collect();
        if i == l {
            row[0] = -&target.inputs[i];
            p.constrain(row, Relation::Le, Rational::zero());
        } else {
            p.constrain(row, Relation::Le, target.inputs[i].clone());
        }
    }
    for r in 0..d.s() {
        let row = core::iter::once(Rational::zero())
            .chain(reference.iter().map(|j| j.outputs[r].clone()))
            .collect();
        p.constrain(row, Relation::Ge, target.outputs[r].clone());
    }
    axis_outcome(solve(&p)?, &target.id)
}

/// Super-efficiency model on output axis `q`: max φ such that the units of
/// `efficient - {k}` stay within `x_k`, reach `y_k` on every output except
/// `q`, and reach `φ y_qk` on output `q`.
pub fn super_eff_output(
    d: &Dataset,
    efficient: &[usize],
    k: usize,
    q: usize,
) -> Result<AxisOutcome> {
    let target = d.dmu(k)?;
    if q >= d.s() {
        return Err(Error::IndexOutOfRange(q));
    }
    let reference = others(d, efficient, k)?;
    if reference.is_empty() {
        return Ok(AxisOutcome::Infeasible);
    }
    let width = 1 + reference.len();
    let mut obj = vec![Rational::zero(); width];
    obj[0] = Rational::one();
    let mut p = LpProblem::new(Sense::Maximize, obj).free(0);
    for i in 0..d.m() {
        let row = core::iter::once(Rational::zero())
            .chain(reference.iter().map(|j| j.inputs[i].clone()))
            .collect();
        p.constrain(row, Relation::Le, target.inputs[i].clone());
    }
    for r in 0..d.s() {
        let mut row: Vec<Rational> = core::iter::once(Rational::zero())
            .chain(reference.iter().map(|j| j.outputs[r].clone()))
            .collect();
        if r == q {
            row[0] = -&target.outputs[r];
            p.constrain(row, Relation::Ge, Rational::zero());
        } else {
            p.constrain(row, Relation::Ge, target.outputs[r].clone());
        }
    }
    axis_outcome(solve(&p)?, &target.id)
}

fn axis_outcome(sol: LpSolution, id: &str) -> Result<AxisOutcome> {
    match sol {
        LpSolution::Optimal { objective, .. } => Ok(AxisOutcome::Feasible(objective)),
        LpSolution::Infeasible => Ok(AxisOutcome::Infeasible),
        LpSolution::Unbounded => Err(Error::UnexpectedLpStatus {
            id: id.to_string(),
            status: "unbounded",
        }),
    }
}

/// Extreme iff some axis model is infeasible, or some input score exceeds 1,
/// or some output score falls below 1.
pub fn extremity(axis: &AxisFeasibility) -> Extremity {
    let one = Rational::one();
    let input_extreme = axis.inputs.iter().any(|o| match o {
        AxisOutcome::Infeasible => true,
        AxisOutcome::Feasible(t) => *t > one,
    });
    let output_extreme = axis.outputs.iter().any(|o| match o {
        AxisOutcome::Infeasible => true,
        AxisOutcome::Feasible(f) => *f < one,
    });
    if input_extreme || output_extreme {
        Extremity::Extreme
    } else {
        Extremity::NonExtreme
    }
}

pub fn axis_feasibility(d: &Dataset, efficient: &[usize], k: usize) -> Result<AxisFeasibility> {
    Ok(AxisFeasibility {
        inputs: (0..d.m())
            .map(|l| super_eff_input(d, efficient, k, l))
            .collect::<Result<_>>()?,
        outputs: (0..d.s())
            .map(|q| super_eff_output(d, efficient, k, q))
            .collect::<Result<_>>()?,
    })
}

/// Classifies every unit with the input-oriented envelopment model over the
/// whole dataset, then runs the super-efficiency models on the strong
/// efficient set.
pub fn classify(d: &Dataset) -> Result<Classification> {
    if let Some(Violation::Positivity { id, axis }) = validate(d)
        .into_iter()
        .find(|v| matches!(v, Violation::Positivity { .. }))
    {
        let axis = match axis {
            Axis::Input(i) => d.input_names()[i].clone(),
            Axis::Output(r) => d.output_names()[r].clone(),
        };
        return Err(Error::NonPositive { id, axis });
    }
    let all: Vec<usize> = (0..d.n()).collect();
    let mut entries = Vec::with_capacity(d.n());
    let mut efficient = Vec::new();
    for k in 0..d.n() {
        let score = eval_input(d, k, &all)?;
        let status = if score.value < Rational::one() {
            DmuStatus::Interior
        } else if score.total_slack.is_positive() {
            DmuStatus::WeakEfficient
        } else {
            DmuStatus::StrongEfficient
        };
        if status == DmuStatus::StrongEfficient {
            efficient.push(k);
        }
        entries.push(DmuClass {
            status,
            score,
            extremity: None,
            axis: None,
        });
    }
    for (a, &i) in efficient.iter().enumerate() {
        for &j in &efficient[a + 1..] {
            if proportional(&d.dmus()[i].point(), &d.dmus()[j].point()) {
                return Err(Error::ProportionalEfficientPair(
                    d.dmus()[i].id.clone(),
                    d.dmus()[j].id.clone(),
                ));
            }
        }
    }
    for &k in &efficient {
        let axis = axis_feasibility(d, &efficient, k)?;
        entries[k].extremity = Some(extremity(&axis));
        entries[k].axis = Some(axis);
    }
    Ok(Classification { entries, efficient })
}

impl Classification {
    pub fn efficient_ids(&self, d: &Dataset) -> Vec<String> {
        self.efficient
            .iter()
            .map(|&k| d.dmus()[k].id.clone())
            .collect()
    }
}

/// Additive model: the largest total slack by which some point of the
/// technology spanned by `reference` dominates unit `k`. Zero means no
/// dominating point exists.
pub fn dominance_slack(d: &Dataset, k: usize, reference: &[usize]) -> Result<Rational> {
    let target = d.dmu(k)?;
    let reference = refs(d, reference)?;
    let (n, m, s) = (reference.len(), d.m(), d.s());
    let width = n + m + s;
    let obj = (0..width)
        .map(|c| if c >= n { ri(1) } else { ri(0) })
        .collect();
    let mut p = LpProblem::new(Sense::Maximize, obj);
    for i in 0..m {
        let mut row: Vec<Rational> = reference.iter().map(|j| j.inputs[i].clone()).collect();
        row.resize(width, Rational::zero());
        row[n + i] = ri(1);
        p.constrain(row, Relation::Eq, target.inputs[i].clone());
    }
    for r in 0..s {
        let mut row: Vec<Rational> = reference.iter().map(|j| j.outputs[r].clone()).collect();
        row.resize(width, Rational::zero());
        row[n + m + r] = ri(-1);
        p.constrain(row, Relation::Eq, target.outputs[r].clone());
    }
    Ok(optimal(solve(&p)?, &target.id)?.0)
}

/// Whether unit `k` is a non-negative combination of `reference` (which
/// should exclude `k`), with equality on every coordinate.
pub fn conic_representable(d: &Dataset, k: usize, reference: &[usize]) -> Result<bool> {
    let target = d.dmu(k)?;
    let reference = refs(d, reference)?;
    let mut p = LpProblem::new(Sense::Minimize, vec![Rational::zero(); reference.len()]);
    for (c, z) in target.point().into_iter().enumerate() {
        let row = reference.iter().map(|j| j.point()[c].clone()).collect();
        p.constrain(row, Relation::Eq, z);
    }
    Ok(matches!(solve(&p)?, LpSolution::Optimal { .. }))
}
