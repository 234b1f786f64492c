//! Dense two-phase simplex for the small, highly degenerate LPs that describe
//! rate regions.
//!
//! Problems are stated as
//!
//! ```text
//! maximize    c . x
//! subject to  a_i . x <= b_i   (leq rows)
//!             e_j . x  = d_j   (eq rows)
//!             x >= 0
//! ```
//!
//! Every row is scaled to unit max-norm before pivoting and Bland's rule picks
//! both the entering and the leaving variable, so degenerate vertices cannot
//! cycle. When the `log` trace level is enabled every pivot dumps the tableau.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Absolute feasibility tolerance on normalized rows.
pub const FEASIBILITY_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-11;
const OPTIMALITY_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub bound: f64,
}

/// A linear program in the form above; all variables are implicitly `>= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<f64>,
    pub leq: Vec<Constraint>,
    pub eq: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// `objective . assignment` for optimal solutions, `-inf` when infeasible
    /// and `+inf` when unbounded.
    pub objective_value: f64,
    pub assignment: Vec<f64>,
    /// Largest violation of any row or sign constraint by `assignment`,
    /// measured on the original (unscaled) rows.
    pub max_residual: f64,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("malformed LP: {0}")]
    Malformed(&'static str),
    #[error("simplex hit the iteration limit ({iterations} pivots)")]
    IterationLimit { iterations: usize, best: Vec<f64> },
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, objective: vec![0.0; num_vars], leq: Vec::new(), eq: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.num_vars {
            return Err(LpError::Malformed("objective length differs from num_vars"));
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::Malformed("non-finite objective coefficient"));
        }
        for row in self.leq.iter().chain(&self.eq) {
            if row.coeffs.len() != self.num_vars {
                return Err(LpError::Malformed("constraint length differs from num_vars"));
            }
            if !row.bound.is_finite() || row.coeffs.iter().any(|c| !c.is_finite()) {
                return Err(LpError::Malformed("non-finite constraint entry"));
            }
        }
        Ok(())
    }

    /// Largest violation of the constraints (including `x >= 0`) at `x`.
    pub fn residual(&self, x: &[f64]) -> f64 {
        let dot = |c: &[f64]| c.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        let leq = self.leq.iter().map(|r| (dot(&r.coeffs) - r.bound).max(0.0));
        let eq = self.eq.iter().map(|r| (dot(&r.coeffs) - r.bound).abs());
        let sign = x.iter().map(|v| (-v).max(0.0));
        leq.chain(eq).chain(sign).fold(0.0, f64::max)
    }

    pub fn value_at(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(a, b)| a * b).sum()
    }

    /// Largest bound magnitude, used to scale tolerances.
    pub fn bound_scale(&self) -> f64 {
        self.leq.iter().chain(&self.eq).map(|r| r.bound.abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Original,
    Slack,
    Artificial,
}

/// Simplex tableau; rows are `[coeffs..., rhs]`, the last row is the
/// objective row of reduced costs.
pub struct Tableau {
    rows: Vec<Vec<f64>>,
    obj: Vec<f64>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.width()]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rows[r][c] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
                row[c] = 0.0;
            }
        }
        let f = self.obj[c];
        if f != 0.0 {
            for (o, p) in self.obj.iter_mut().zip(&pivot_row) {
                *o -= f * p;
            }
            self.obj[c] = 0.0;
        }
        self.basis[r] = c;
    }

    /// Rebuilds the reduced-cost row for `maximize cost . x`.
    fn set_objective(&mut self, cost: &[f64]) {
        let w = self.width();
        let mut obj = vec![0.0; w + 1];
        for j in 0..w {
            obj[j] = -cost[j];
        }
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (o, v) in obj.iter_mut().zip(&self.rows[i]) {
                    *o += cb * v;
                }
            }
        }
        self.obj = obj;
    }

    /// Runs Bland-rule pivots until optimal or unbounded. Returns `Ok(true)`
    /// when optimal, `Ok(false)` when unbounded.
    fn optimize(&mut self, allowed: &dyn Fn(ColumnKind) -> bool, budget: &mut usize) -> Result<bool, ()> {
        loop {
            let entering = (0..self.width())
                .find(|&j| allowed(self.kinds[j]) && self.obj[j] < -OPTIMALITY_TOL && !self.basis.contains(&j));
            let Some(c) = entering else { return Ok(true) };

            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a > PIVOT_TOL {
                    let ratio = self.rhs(i).max(0.0) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            let tie = (ratio - lr).abs() <= 1e-12 * (1.0 + lr.abs());
                            if ratio < lr && !tie || tie && self.basis[i] < self.basis[li] {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            let Some((r, _)) = leave else { return Ok(false) };
            if *budget == 0 {
                return Err(());
            }
            *budget -= 1;
            self.pivot(r, c);
            if log::log_enabled!(log::Level::Trace) {
                log::trace!("pivot row {r} col {c}\n{self}");
            }
        }
    }

    fn primal(&self, n: usize) -> Vec<f64> {
        let mut x = vec![0.0; n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs(i);
            }
        }
        for v in x.iter_mut() {
            if *v < 0.0 && *v > -FEASIBILITY_TOL {
                *v = 0.0;
            }
        }
        x
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            write!(f, "x{:<3}|", self.basis[i])?;
            for v in row {
                write!(f, " {v:>10.4}")?;
            }
            writeln!(f)?;
        }
        write!(f, "obj |")?;
        for v in &self.obj {
            write!(f, " {v:>10.4}")?;
        }
        Ok(())
    }
}

fn normalized(row: &Constraint) -> Option<(Vec<f64>, f64)> {
    let scale = row.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 {
        return None;
    }
    Some((row.coeffs.iter().map(|c| c / scale).collect(), row.bound / scale))
}

/// Solves `lp`. Infeasibility and unboundedness are reported through
/// [`LpSolution::status`]; errors are reserved for malformed input and for
/// exhausting the pivot budget.
pub fn solve(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let n = lp.num_vars;
    let infeasible = || LpSolution {
        status: LpStatus::Infeasible,
        objective_value: f64::NEG_INFINITY,
        assignment: vec![0.0; n],
        max_residual: f64::INFINITY,
    };

    // (coeffs, rhs >= 0, kind) with kind: 0 = <=, 1 = >=, 2 = =
    let mut rows: Vec<(Vec<f64>, f64, u8)> = Vec::new();
    for c in &lp.leq {
        match normalized(c) {
            None if c.bound < -FEASIBILITY_TOL => return Ok(infeasible()),
            None => {}
            Some((a, b)) if b < 0.0 => rows.push((a.iter().map(|v| -v).collect(), -b, 1)),
            Some((a, b)) => rows.push((a, b, 0)),
        }
    }
    for c in &lp.eq {
        match normalized(c) {
            None if c.bound.abs() > FEASIBILITY_TOL => return Ok(infeasible()),
            None => {}
            Some((a, b)) if b < 0.0 => rows.push((a.iter().map(|v| -v).collect(), -b, 2)),
            Some((a, b)) => rows.push((a, b, 2)),
        }
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.2 != 2).count();
    let n_art = rows.iter().filter(|r| r.2 != 0).count();
    let width = n + n_slack + n_art;
    let mut kinds = vec![ColumnKind::Original; n];
    kinds.extend(core::iter::repeat(ColumnKind::Slack).take(n_slack));
    kinds.extend(core::iter::repeat(ColumnKind::Artificial).take(n_art));

    let mut tab = Tableau { rows: Vec::with_capacity(m), obj: Vec::new(), basis: Vec::with_capacity(m), kinds };
    let (mut next_slack, mut next_art) = (n, n + n_slack);
    for (a, b, kind) in rows {
        let mut row = vec![0.0; width + 1];
        row[..n].copy_from_slice(&a);
        row[width] = b;
        match kind {
            0 => {
                row[next_slack] = 1.0;
                tab.basis.push(next_slack);
                next_slack += 1;
            }
            1 => {
                row[next_slack] = -1.0;
                next_slack += 1;
                row[next_art] = 1.0;
                tab.basis.push(next_art);
                next_art += 1;
            }
            _ => {
                row[next_art] = 1.0;
                tab.basis.push(next_art);
                next_art += 1;
            }
        }
        tab.rows.push(row);
    }

    let mut budget = 10_000 + 50 * (m + width);
    let limit = budget;
    let fail = |tab: &Tableau| LpError::IterationLimit { iterations: limit, best: tab.primal(n) };

    if n_art > 0 {
        let cost: Vec<f64> =
            tab.kinds.iter().map(|k| if *k == ColumnKind::Artificial { -1.0 } else { 0.0 }).collect();
        tab.set_objective(&cost);
        tab.optimize(&|_| true, &mut budget).map_err(|_| fail(&tab))?;
        if tab.obj[width] < -FEASIBILITY_TOL {
            return Ok(infeasible());
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.kinds[tab.basis[i]] == ColumnKind::Artificial {
                let col = (0..width)
                    .filter(|&j| tab.kinds[j] != ColumnKind::Artificial)
                    .max_by(|&x, &y| tab.rows[i][x].abs().total_cmp(&tab.rows[i][y].abs()))
                    .filter(|&j| tab.rows[i][j].abs() > FEASIBILITY_TOL);
                match col {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut cost = vec![0.0; width];
    cost[..n].copy_from_slice(&lp.objective);
    tab.set_objective(&cost);
    let bounded = tab
        .optimize(&|k| k != ColumnKind::Artificial, &mut budget)
        .map_err(|_| fail(&tab))?;

    let x = tab.primal(n);
    if !bounded {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            objective_value: f64::INFINITY,
            max_residual: lp.residual(&x),
            assignment: x,
        });
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective_value: lp.value_at(&x),
        max_residual: lp.residual(&x),
        assignment: x,
    })
}

/// Index of a variable created by [`LpBuilder::var`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var(pub usize);

/// Incremental construction of a [`LinearProgram`] from sparse terms.
#[derive(Debug, Clone, Default)]
pub struct LpBuilder {
    num_vars: usize,
    objective: Vec<(Var, f64)>,
    leq: Vec<(Vec<(Var, f64)>, f64)>,
    eq: Vec<(Vec<(Var, f64)>, f64)>,
}

impl LpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(&mut self) -> Var {
        self.num_vars += 1;
        Var(self.num_vars - 1)
    }

    pub fn vars<const N: usize>(&mut self) -> [Var; N] {
        core::array::from_fn(|_| self.var())
    }

    pub fn maximize(&mut self, terms: &[(Var, f64)]) -> &mut Self {
        self.objective = terms.to_vec();
        self
    }

    /// `sum(terms) <= bound`
    pub fn leq(&mut self, terms: &[(Var, f64)], bound: f64) -> &mut Self {
        self.leq.push((terms.to_vec(), bound));
        self
    }

    /// `sum(terms) = bound`
    pub fn eq(&mut self, terms: &[(Var, f64)], bound: f64) -> &mut Self {
        self.eq.push((terms.to_vec(), bound));
        self
    }

    pub fn build(&self) -> LinearProgram {
        let n = self.num_vars;
        let dense = |terms: &[(Var, f64)]| {
            let mut v = vec![0.0; n];
            for (Var(i), c) in terms {
                v[*i] += c;
            }
            v
        };
        LinearProgram {
            num_vars: n,
            objective: dense(&self.objective),
            leq: self.leq.iter().map(|(t, b)| Constraint { coeffs: dense(t), bound: *b }).collect(),
            eq: self.eq.iter().map(|(t, b)| Constraint { coeffs: dense(t), bound: *b }).collect(),
        }
    }
}
