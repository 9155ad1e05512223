//! Exact rational linear programming.
//!
//! A dense two-phase simplex over arbitrary-precision rationals with
//! Bland's anti-cycling rule. Variables are free (`x = u − v` internally);
//! constraints are `ℓ(x) ≥ 0` or `ℓ(x) = 0`. Being exact, an `Optimal`
//! result attains its value exactly and `Infeasible`/`Unbounded` are
//! certified by the phase structure, not by tolerances.

use num_traits::{One, Signed, Zero};

use crate::exactgeom::polyhedron::{Constraint, Polyhedron, Relation};
use crate::linform::LinearForm;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Option<Rat>,
    pub witness: Option<Vec<Rat>>,
}

impl LpResult {
    fn infeasible() -> Self {
        Self {
            status: LpStatus::Infeasible,
            value: None,
            witness: None,
        }
    }

    fn unbounded() -> Self {
        Self {
            status: LpStatus::Unbounded,
            value: None,
            witness: None,
        }
    }
}

pub fn lp_solve(objective: &LinearForm, p: &Polyhedron, sense: Sense) -> LpResult {
    assert_eq!(objective.dim(), p.dim(), "objective dimension mismatch");
    let min_coeffs: Vec<Rat> = match sense {
        Sense::Minimize => objective.coeffs().to_vec(),
        Sense::Maximize => objective.coeffs().iter().map(|a| -a).collect(),
    };
    match simplex_minimize(&min_coeffs, p) {
        SimplexOutcome::Infeasible => LpResult::infeasible(),
        SimplexOutcome::Unbounded => LpResult::unbounded(),
        SimplexOutcome::Optimal(x) => {
            let value = objective.eval(&x);
            LpResult {
                status: LpStatus::Optimal,
                value: Some(value),
                witness: Some(x),
            }
        }
    }
}

/// Any point of `p`, or `None` when `p` is empty (phase 1 only).
pub fn feasible_point(p: &Polyhedron) -> Option<Vec<Rat>> {
    let zero = LinearForm::zero(p.dim());
    let res = lp_solve(&zero, p, Sense::Minimize);
    res.witness
}

/// A point strictly inside `p`, or `None` when the interior is empty.
///
/// Maximizes the common slack `s` subject to `ℓ(x) ≥ s` for every
/// constraint and `s ≤ 1` (the cap keeps the LP bounded; any positive cap
/// works). Equality constraints make the interior empty by convention.
pub fn interior_point(p: &Polyhedron) -> Option<Vec<Rat>> {
    if p.has_equalities() {
        return None;
    }
    let n = p.dim();
    let mut lifted: Vec<Constraint> = Vec::with_capacity(p.constraints().len() + 1);
    for c in p.constraints() {
        if c.form.is_constant_form() {
            // Constant constraints carry no slack: they either hold
            // everywhere or nowhere.
            if c.form.constant_term().is_negative() {
                return None;
            }
            continue;
        }
        let mut coeffs = c.form.coeffs().to_vec();
        coeffs.push(-Rat::one());
        lifted.push(Constraint::geq(LinearForm::new(
            coeffs,
            c.form.constant_term().clone(),
        )));
    }
    let mut cap = vec![Rat::zero(); n];
    cap.push(-Rat::one());
    lifted.push(Constraint::geq(LinearForm::new(cap, Rat::one())));

    let mut obj = vec![Rat::zero(); n];
    obj.push(Rat::one());
    let objective = LinearForm::new(obj, Rat::zero());
    let res = lp_solve(&objective, &Polyhedron::new(n + 1, lifted), Sense::Maximize);
    debug_assert_eq!(res.status, LpStatus::Optimal, "slack LP is always solvable");
    let slack = res.value?;
    if slack.is_positive() {
        res.witness.map(|w| w[..n].to_vec())
    } else {
        None
    }
}

/// Is there an `x` with `f(x) > 0` for every form (strict feasibility)?
///
/// Decided through the transposition alternative: the strict system is
/// infeasible iff some convex combination of the forms has zero gradient
/// and nonpositive constant. That system has `n + 2` rows however many
/// forms there are, so the test stays cheap for large form sets (the
/// pruning hot path), unlike the witness-producing max-slack LP.
pub fn strict_feasible(forms: &[LinearForm]) -> bool {
    let Some(first) = forms.first() else {
        return true;
    };
    let n = first.dim();
    let m = forms.len();
    // Standard-form rows over nonnegative (y, t):
    //   Σᵢ yᵢ·aᵢ = 0   (n rows),  Σᵢ yᵢ = 1,  Σᵢ yᵢ·bᵢ + t = 0.
    let n_rows = n + 2;
    let width = m + 1;
    let total = width + n_rows;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n_rows);
    let mut rhs: Vec<Rat> = Vec::with_capacity(n_rows);
    for j in 0..n {
        let mut row = vec![Rat::zero(); total];
        for (i, f) in forms.iter().enumerate() {
            row[i] = f.coeff(j).clone();
        }
        rows.push(row);
        rhs.push(Rat::zero());
    }
    let mut norm = vec![Rat::zero(); total];
    for cell in norm.iter_mut().take(m) {
        *cell = Rat::one();
    }
    rows.push(norm);
    rhs.push(Rat::one());
    let mut last = vec![Rat::zero(); total];
    for (i, f) in forms.iter().enumerate() {
        last[i] = f.constant_term().clone();
    }
    last[m] = Rat::one();
    rows.push(last);
    rhs.push(Rat::zero());

    // Sign-normalize, then one artificial per row as the initial basis.
    for (i, row) in rows.iter_mut().enumerate() {
        if rhs[i].is_negative() {
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = -v.clone();
                }
            }
            rhs[i] = -rhs[i].clone();
        }
        row[width + i] = Rat::one();
    }
    let mut basis: Vec<usize> = (0..n_rows).map(|i| width + i).collect();
    let mut cost = vec![Rat::zero(); total];
    for item in cost.iter_mut().take(total).skip(width) {
        *item = Rat::one();
    }
    for row in &rows {
        for (cj, rj) in cost.iter_mut().zip(row) {
            if !rj.is_zero() {
                *cj -= rj;
            }
        }
    }
    match run_simplex(&mut rows, &mut rhs, &mut basis, &mut cost) {
        RunResult::Unbounded => unreachable!("phase-1 objective is bounded below by zero"),
        RunResult::Optimal => {}
    }
    let residual: Rat = basis
        .iter()
        .zip(&rhs)
        .filter(|(&k, _)| k >= width)
        .map(|(_, b)| b.clone())
        .sum();
    // Alternative feasible ⟺ the strict system is infeasible.
    residual.is_positive()
}

#[derive(Clone, Debug)]
pub struct RelativeInterior {
    pub point: Vec<Rat>,
    /// Indices of constraints that hold with equality on all of `p`.
    pub implicit: Vec<usize>,
}

/// A point in the relative interior of `p` together with the implicit
/// equality set, or `None` when `p` is empty. The affine hull of `p` is
/// exactly the solution set of the implicit constraints.
pub fn relative_interior_point(p: &Polyhedron) -> Option<RelativeInterior> {
    feasible_point(p)?;
    let n = p.dim();
    let mut implicit = Vec::new();
    for (i, c) in p.constraints().iter().enumerate() {
        match c.rel {
            Relation::EqZero => implicit.push(i),
            Relation::GeqZero => {
                if c.form.is_constant_form() {
                    if c.form.constant_term().is_zero() {
                        implicit.push(i);
                    }
                    continue;
                }
                // Bound ℓ by 1 so the maximization is always Optimal.
                let one = LinearForm::constant(n, Rat::one());
                let capped = p.with_constraint(Constraint::geq(&one - &c.form));
                let res = lp_solve(&c.form, &capped, Sense::Maximize);
                debug_assert_eq!(res.status, LpStatus::Optimal);
                if res.value.expect("optimal LP carries a value").is_zero() {
                    implicit.push(i);
                }
            }
        }
    }

    let mut lifted: Vec<Constraint> = Vec::new();
    for (i, c) in p.constraints().iter().enumerate() {
        let mut coeffs = c.form.coeffs().to_vec();
        if implicit.contains(&i) {
            coeffs.push(Rat::zero());
            lifted.push(Constraint::eq(LinearForm::new(
                coeffs,
                c.form.constant_term().clone(),
            )));
        } else {
            if c.form.is_constant_form() {
                continue;
            }
            coeffs.push(-Rat::one());
            lifted.push(Constraint::geq(LinearForm::new(
                coeffs,
                c.form.constant_term().clone(),
            )));
        }
    }
    let mut cap = vec![Rat::zero(); n];
    cap.push(-Rat::one());
    lifted.push(Constraint::geq(LinearForm::new(cap, Rat::one())));
    let mut obj = vec![Rat::zero(); n];
    obj.push(Rat::one());
    let objective = LinearForm::new(obj, Rat::zero());
    let res = lp_solve(&objective, &Polyhedron::new(n + 1, lifted), Sense::Maximize);
    debug_assert_eq!(res.status, LpStatus::Optimal);
    debug_assert!(
        res.value.as_ref().expect("optimal").is_positive(),
        "non-implicit constraints admit a common strictly positive slack"
    );
    let point = res.witness.map(|w| w[..n].to_vec())?;
    Some(RelativeInterior { point, implicit })
}

enum SimplexOutcome {
    Optimal(Vec<Rat>),
    Infeasible,
    Unbounded,
}

enum RunResult {
    Optimal,
    Unbounded,
}

/// Minimizes `c·x` over `p` with `x` free.
fn simplex_minimize(c: &[Rat], p: &Polyhedron) -> SimplexOutcome {
    let n = p.dim();
    let m = p.constraints().len();
    let n_slack = p
        .constraints()
        .iter()
        .filter(|c| c.rel == Relation::GeqZero)
        .count();
    let width = 2 * n + n_slack;
    let total = width + m;

    // Rows: ℓ_i(x) ≥ 0  ⇒  a·u − a·v − s_i = −b_i (slack only for ≥),
    // then sign-normalized to a nonnegative right-hand side, then one
    // artificial per row as the initial basis.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut slack_at = 0;
    for (i, con) in p.constraints().iter().enumerate() {
        let mut row = vec![Rat::zero(); total];
        for j in 0..n {
            let a = con.form.coeff(j);
            if !a.is_zero() {
                row[j] = a.clone();
                row[n + j] = -a;
            }
        }
        if con.rel == Relation::GeqZero {
            row[2 * n + slack_at] = -Rat::one();
            slack_at += 1;
        }
        let mut b = -con.form.constant_term();
        if b.is_negative() {
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = -v.clone();
                }
            }
            b = -b;
        }
        row[width + i] = Rat::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| width + i).collect();

    if m > 0 {
        // Phase 1: minimize the artificial sum. Reduced costs start as
        // 0 − Σ rows since every artificial is basic with cost 1.
        let mut cost = vec![Rat::zero(); total];
        for item in cost.iter_mut().take(total).skip(width) {
            *item = Rat::one();
        }
        for row in &rows {
            for (cj, rj) in cost.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *cj -= rj;
                }
            }
        }
        match run_simplex(&mut rows, &mut rhs, &mut basis, &mut cost) {
            RunResult::Unbounded => unreachable!("phase-1 objective is bounded below by zero"),
            RunResult::Optimal => {}
        }
        let residual: Rat = basis
            .iter()
            .zip(&rhs)
            .filter(|(&k, _)| k >= width)
            .map(|(_, b)| b.clone())
            .sum();
        if residual.is_positive() {
            return SimplexOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis; rows that cannot
        // pivot on a structural column are redundant and dropped.
        let mut i = 0;
        while i < rows.len() {
            if basis[i] >= width {
                match (0..width).find(|&j| !rows[i][j].is_zero()) {
                    Some(j) => {
                        pivot(&mut rows, &mut rhs, &mut basis, &mut cost, i, j);
                        i += 1;
                    }
                    None => {
                        rows.remove(i);
                        rhs.remove(i);
                        basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        for row in rows.iter_mut() {
            row.truncate(width);
        }
    }

    // Phase 2: the real objective (min c·x = min c·u − c·v), reduced
    // against the current basis.
    let mut cost = vec![Rat::zero(); width];
    for j in 0..n {
        if !c[j].is_zero() {
            cost[j] = c[j].clone();
            cost[n + j] = -c[j].clone();
        }
    }
    for (i, &k) in basis.iter().enumerate() {
        if !cost[k].is_zero() {
            let f = cost[k].clone();
            for (cj, rj) in cost.iter_mut().zip(&rows[i]) {
                if !rj.is_zero() {
                    *cj -= &f * rj;
                }
            }
        }
    }
    match run_simplex(&mut rows, &mut rhs, &mut basis, &mut cost) {
        RunResult::Unbounded => return SimplexOutcome::Unbounded,
        RunResult::Optimal => {}
    }
    let mut z = vec![Rat::zero(); width];
    for (i, &k) in basis.iter().enumerate() {
        z[k] = rhs[i].clone();
    }
    let x: Vec<Rat> = (0..n).map(|j| &z[j] - &z[n + j]).collect();
    SimplexOutcome::Optimal(x)
}

fn run_simplex(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    cost: &mut [Rat],
) -> RunResult {
    // Dantzig's most-negative rule first for speed; after a pivot budget,
    // fall back to Bland's rule, which cannot cycle, so the loop terminates.
    let dantzig_budget = 16 * (rows.len() + cost.len());
    let mut pivots = 0usize;
    loop {
        let bland = pivots >= dantzig_budget;
        let mut enter: Option<usize> = None;
        for (j, c) in cost.iter().enumerate() {
            if !c.is_negative() {
                continue;
            }
            match enter {
                None => enter = Some(j),
                Some(e) => {
                    if bland {
                        break; // lowest index already found
                    }
                    if *c < cost[e] {
                        enter = Some(j);
                    }
                }
            }
            if bland {
                break;
            }
        }
        let Some(enter) = enter else {
            return RunResult::Optimal;
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..rows.len() {
            let a = &rows[i][enter];
            if a.is_positive() {
                let ratio = &rhs[i] / a;
                let better = match (&best, leave) {
                    (None, _) => true,
                    (Some(b), Some(l)) => ratio < *b || (ratio == *b && basis[i] < basis[l]),
                    (Some(_), None) => unreachable!("best implies a leaving row"),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(r) = leave else {
            return RunResult::Unbounded;
        };
        pivot(rows, rhs, basis, cost, r, enter);
        pivots += 1;
    }
}

fn pivot(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    cost: &mut [Rat],
    r: usize,
    c: usize,
) {
    let inv = rows[r][c].clone().recip();
    for v in rows[r].iter_mut() {
        if !v.is_zero() {
            *v = &*v * &inv;
        }
    }
    rhs[r] = &rhs[r] * &inv;
    let pivot_row = rows[r].clone();
    let pivot_rhs = rhs[r].clone();
    for i in 0..rows.len() {
        if i == r {
            continue;
        }
        let f = rows[i][c].clone();
        if f.is_zero() {
            continue;
        }
        for (v, pv) in rows[i].iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
        rhs[i] -= &f * &pivot_rhs;
    }
    let f = cost[c].clone();
    if !f.is_zero() {
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    basis[r] = c;
}
