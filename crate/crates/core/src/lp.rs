//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest-index entering column, ties in the
//! ratio test broken by lowest basic variable), so the method terminates and
//! identical problems always produce identical solutions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

impl LpProblem {
    /// A problem over `objective.len()` non-negative variables and no constraints.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let bounds = vec![Bound::NonNegative; objective.len()];
        LpProblem {
            sense,
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    pub fn free(mut self, var: usize) -> Self {
        self.bounds[var] = Bound::Free;
        self
    }

    pub fn constrain(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn check(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::LpDimension(format!(
                "{} bounds for {n} variables",
                self.bounds.len()
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(Error::LpDimension(format!(
                    "constraint {i} has {} coefficients, expected {n}",
                    c.coefficients.len()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal {
        objective: Rational,
        values: Vec<Rational>,
    },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status_name(&self) -> &'static str {
        match self {
            LpSolution::Optimal { .. } => "optimal",
            LpSolution::Infeasible => "infeasible",
            LpSolution::Unbounded => "unbounded",
        }
    }

    pub fn objective(&self) -> Option<&Rational> {
        match self {
            LpSolution::Optimal { objective, .. } => Some(objective),
            _ => None,
        }
    }
}

/// Solves `p` exactly.
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    p.check()?;
    let mut t = Tableau::build(p);
    if !t.phase_one() {
        return Ok(LpSolution::Infeasible);
    }
    if !t.phase_two(p) {
        return Ok(LpSolution::Unbounded);
    }
    Ok(t.extract(p))
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced-cost row for minimization; the last entry is minus the objective value.
    cost: Vec<Rational>,
    basis: Vec<usize>,
    /// Structural column(s) of each original variable: `(plus, minus)`.
    columns: Vec<(usize, Option<usize>)>,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(p: &LpProblem) -> Self {
        let mut columns = Vec::with_capacity(p.num_vars());
        let mut next = 0;
        for b in &p.bounds {
            match b {
                Bound::NonNegative => {
                    columns.push((next, None));
                    next += 1;
                }
                Bound::Free => {
                    columns.push((next, Some(next + 1)));
                    next += 2;
                }
            }
        }
        let structural = next;

        // Orient every row so its right-hand side is non-negative.
        let oriented: Vec<(Vec<Rational>, Relation, Rational)> = p
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (
                        c.coefficients.iter().map(|v| -v).collect(),
                        flipped,
                        -&c.rhs,
                    )
                } else {
                    (c.coefficients.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();

        let slacks = oriented.iter().filter(|c| c.1 != Relation::Eq).count();
        let artificials = oriented.iter().filter(|c| c.1 != Relation::Le).count();
        let first_artificial = structural + slacks;
        let width = first_artificial + artificials;

        let mut rows = Vec::with_capacity(oriented.len());
        let mut basis = Vec::with_capacity(oriented.len());
        let mut slack = structural;
        let mut artificial = first_artificial;
        for (coeffs, rel, rhs) in oriented {
            let mut row = vec![Rational::zero(); width + 1];
            for (j, a) in coeffs.into_iter().enumerate() {
                let (plus, minus) = columns[j];
                if let Some(minus) = minus {
                    row[minus] = -&a;
                }
                row[plus] = a;
            }
            match rel {
                Relation::Le => {
                    row[slack] = Rational::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                    row[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    row[artificial] = Rational::one();
                    basis.push(artificial);
                    artificial += 1;
                }
            }
            row[width] = rhs;
            rows.push(row);
        }
        Tableau {
            rows,
            cost: vec![Rational::zero(); width + 1],
            basis,
            columns,
            first_artificial,
            width,
        }
    }

    /// Minimizes the sum of artificials; false when the problem is infeasible.
    fn phase_one(&mut self) -> bool {
        let mut cost = vec![Rational::zero(); self.width + 1];
        for c in &mut cost[self.first_artificial..self.width] {
            *c = Rational::one();
        }
        self.set_cost(cost);
        let bounded = self.iterate(self.width);
        debug_assert!(bounded, "phase one is bounded below by zero");
        if !self.cost[self.width].is_zero() {
            return false;
        }
        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        true
    }

    /// Optimizes the real objective; false when it is unbounded.
    fn phase_two(&mut self, p: &LpProblem) -> bool {
        let mut cost = vec![Rational::zero(); self.width + 1];
        for (j, c) in p.objective.iter().enumerate() {
            let c = match p.sense {
                Sense::Minimize => c.clone(),
                Sense::Maximize => -c,
            };
            let (plus, minus) = self.columns[j];
            if let Some(minus) = minus {
                cost[minus] = -&c;
            }
            cost[plus] = c;
        }
        self.set_cost(cost);
        self.iterate(self.first_artificial)
    }

    /// Installs raw costs and prices out the current basis.
    fn set_cost(&mut self, mut cost: Vec<Rational>) {
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = cost[b].clone();
            if cb.is_zero() {
                continue;
            }
            for (c, a) in cost.iter_mut().zip(row) {
                *c -= &cb * a;
            }
        }
        self.cost = cost;
    }

    /// Runs Bland-rule pivots over columns `< limit`; false on unboundedness.
    fn iterate(&mut self, limit: usize) -> bool {
        loop {
            let Some(enter) = (0..limit).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / a;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((i, _)) => self.pivot(i, enter),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in &mut self.rows[r] {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut Vec<Rational>| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.basis[r] = c;
    }

    fn extract(&self, p: &LpProblem) -> LpSolution {
        let mut col_values = vec![Rational::zero(); self.width];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            col_values[b] = row[self.width].clone();
        }
        let values: Vec<Rational> = self
            .columns
            .iter()
            .map(|&(plus, minus)| match minus {
                Some(minus) => &col_values[plus] - &col_values[minus],
                None => col_values[plus].clone(),
            })
            .collect();
        let objective = p
            .objective
            .iter()
            .zip(&values)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
        LpSolution::Optimal { objective, values }
    }
}

/// True when `values` satisfies every constraint and bound of `p` exactly.
pub fn is_feasible_point(p: &LpProblem, values: &[Rational]) -> bool {
    if values.len() != p.num_vars() {
        return false;
    }
    let bounds_ok = p
        .bounds
        .iter()
        .zip(values)
        .all(|(b, v)| *b == Bound::Free || !v.is_negative());
    bounds_ok
        && p.constraints.iter().all(|c| {
            let lhs = c
                .coefficients
                .iter()
                .zip(values)
                .fold(Rational::zero(), |acc, (a, v)| acc + a * v);
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        })
}
