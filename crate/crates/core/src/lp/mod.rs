//! Linear programming kernel.
//!
//! Maximizes a linear objective subject to sparse rows and finite per-variable
//! bounds. Rows can be appended between solves and a previous [`Basis`] can
//! seed the next solve, which is what the cutting-plane and branch-and-bound
//! loops rely on.

mod simplex;

use std::fmt::Write as _;
use std::ops::Range;

use thiserror::Error;

pub use simplex::SimplexOptions;

/// Primal feasibility tolerance for rows and bounds.
pub const FEASIBILITY_TOL: f64 = 1e-6;
/// Reduced-cost tolerance.
pub const OPTIMALITY_TOL: f64 = 1e-6;
/// Coefficients below this magnitude are dropped when a row is built.
pub const DROP_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("variable index {var} out of range (program has {num_vars} variables)")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("non-finite coefficient or right-hand side")]
    NonFinite,
    #[error("invalid bounds [{lo}, {hi}] for variable {var}")]
    InvalidBounds { var: usize, lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

/// A sparse constraint `Σ a_j x_j (<= | = | >=) rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    coeffs: Vec<(usize, f64)>,
    relation: Relation,
    rhs: f64,
}

impl Row {
    /// Merges repeated indices and drops near-zero coefficients.
    pub fn new(coeffs: impl IntoIterator<Item = (usize, f64)>, relation: Relation, rhs: f64) -> Self {
        let mut c: Vec<(usize, f64)> = coeffs.into_iter().collect();
        c.sort_by_key(|&(j, _)| j);
        let mut merged: Vec<(usize, f64)> = Vec::with_capacity(c.len());
        for (j, a) in c {
            match merged.last_mut() {
                Some((k, b)) if *k == j => *b += a,
                _ => merged.push((j, a)),
            }
        }
        // NaN coefficients are kept so validation can reject them.
        merged.retain(|&(_, a)| a.is_nan() || a.abs() >= DROP_TOL);
        Row { coeffs: merged, relation, rhs }
    }

    pub fn coeffs(&self) -> &[(usize, f64)] {
        &self.coeffs
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn rhs(&self) -> f64 {
        self.rhs
    }

    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().map(|&(j, a)| a * x[j]).sum()
    }

    /// Amount by which `x` violates the row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let act = self.activity(x);
        match self.relation {
            Relation::Le => (act - self.rhs).max(0.0),
            Relation::Ge => (self.rhs - act).max(0.0),
            Relation::Eq => (act - self.rhs).abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarStatus {
    Basic,
    AtLower,
    AtUpper,
}

/// Simplex basis: one status per structural variable and one per row slack.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Basis {
    pub vars: Vec<VarStatus>,
    pub rows: Vec<VarStatus>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
    /// Only reachable through numerical breakdown; every variable is boxed.
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub primal: Vec<f64>,
    pub objective_value: f64,
    pub basis: Option<Basis>,
    pub pivots: usize,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Maximization LP with boxed variables.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    objective: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a variable with objective coefficient `obj` and bounds `[lo, hi]`.
    pub fn add_var(&mut self, obj: f64, lo: f64, hi: f64) -> Result<usize, LpError> {
        let var = self.objective.len();
        check_bounds(var, lo, hi)?;
        if !obj.is_finite() {
            return Err(LpError::NonFinite);
        }
        self.objective.push(obj);
        self.lower.push(lo);
        self.upper.push(hi);
        Ok(var)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn bounds(&self, var: usize) -> (f64, f64) {
        (self.lower[var], self.upper[var])
    }

    pub fn lower_bounds(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper_bounds(&self) -> &[f64] {
        &self.upper
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) -> Result<(), LpError> {
        if var >= self.num_vars() {
            return Err(LpError::VariableOutOfRange { var, num_vars: self.num_vars() });
        }
        check_bounds(var, lo, hi)?;
        self.lower[var] = lo;
        self.upper[var] = hi;
        Ok(())
    }

    pub fn add_row(&mut self, row: Row) -> Result<usize, LpError> {
        self.check_row(&row)?;
        self.rows.push(row);
        Ok(self.rows.len() - 1)
    }

    /// Appends all rows or none. Earlier row indices are unaffected.
    pub fn add_rows(&mut self, rows: impl IntoIterator<Item = Row>) -> Result<Range<usize>, LpError> {
        let rows: Vec<Row> = rows.into_iter().collect();
        for row in &rows {
            self.check_row(row)?;
        }
        let start = self.rows.len();
        self.rows.extend(rows);
        Ok(start..self.rows.len())
    }

    fn check_row(&self, row: &Row) -> Result<(), LpError> {
        if !row.rhs.is_finite() {
            return Err(LpError::NonFinite);
        }
        for &(var, a) in &row.coeffs {
            if var >= self.num_vars() {
                return Err(LpError::VariableOutOfRange { var, num_vars: self.num_vars() });
            }
            if !a.is_finite() {
                return Err(LpError::NonFinite);
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest row or bound violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.rows.iter().map(|r| r.violation(x)).fold(0.0, f64::max);
        let bounds = (0..self.num_vars())
            .map(|j| (self.lower[j] - x[j]).max(x[j] - self.upper[j]).max(0.0))
            .fold(0.0, f64::max);
        rows.max(bounds)
    }

    pub fn solve(&self, warm: Option<&Basis>) -> LpSolution {
        self.solve_with(warm, &SimplexOptions::default())
    }

    pub fn solve_with(&self, warm: Option<&Basis>, options: &SimplexOptions) -> LpSolution {
        simplex::solve(self, warm, options)
    }

    /// Human-readable dump in CPLEX LP syntax.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::from("Maximize\n obj:");
        let mut any = false;
        for (j, &c) in self.objective.iter().enumerate() {
            if c != 0.0 {
                write_term(&mut out, c, j, !any);
                any = true;
            }
        }
        if !any {
            out.push_str(" 0 x0");
        }
        out.push_str("\nSubject To\n");
        for (i, row) in self.rows.iter().enumerate() {
            let _ = write!(out, " r{i}:");
            if row.coeffs.is_empty() {
                out.push_str(" 0 x0");
            }
            for (k, &(j, a)) in row.coeffs.iter().enumerate() {
                write_term(&mut out, a, j, k == 0);
            }
            let _ = writeln!(out, " {} {}", row.relation.symbol(), row.rhs);
        }
        out.push_str("Bounds\n");
        for j in 0..self.num_vars() {
            let _ = writeln!(out, " {} <= x{} <= {}", self.lower[j], j, self.upper[j]);
        }
        out.push_str("End\n");
        out
    }
}

fn write_term(out: &mut String, a: f64, j: usize, first: bool) {
    let _ = match (first, a < 0.0) {
        (true, false) => write!(out, " {a} x{j}"),
        (true, true) => write!(out, " - {} x{j}", -a),
        (false, false) => write!(out, " + {a} x{j}"),
        (false, true) => write!(out, " - {} x{j}", -a),
    };
}

fn check_bounds(var: usize, lo: f64, hi: f64) -> Result<(), LpError> {
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(LpError::InvalidBounds { var, lo, hi });
    }
    Ok(())
}

#[cfg(test)]
mod tests;
