//! Closed convex polyhedra in H-representation with exact rational
//! constraints.

use num_traits::Zero;

use crate::error::Error;
use crate::exactgeom::lp::{self, LpStatus, Sense};
use crate::linform::LinearForm;
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    GeqZero,
    EqZero,
}

/// `form(x) ≥ 0` or `form(x) = 0`, stored with the canonical positive
/// integer scaling of the form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub form: LinearForm,
    pub rel: Relation,
}

impl Constraint {
    pub fn geq(form: LinearForm) -> Self {
        Self {
            form: form.normalized_for_inequality(),
            rel: Relation::GeqZero,
        }
    }

    pub fn eq(form: LinearForm) -> Self {
        Self {
            form: form.normalized_for_inequality(),
            rel: Relation::EqZero,
        }
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let v = self.form.eval(x);
        match self.rel {
            Relation::GeqZero => v >= Rat::zero(),
            Relation::EqZero => v.is_zero(),
        }
    }
}

/// `{x : ℓ(x) rel 0 for all constraints}` — closed and convex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Self {
        debug_assert!(constraints.iter().all(|c| c.form.dim() == dim));
        Self { dim, constraints }
    }

    /// All of `ℝⁿ`: no constraints.
    pub fn universe(dim: usize) -> Self {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn is_universe(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn has_equalities(&self) -> bool {
        self.constraints.iter().any(|c| c.rel == Relation::EqZero)
    }

    pub fn push(&mut self, c: Constraint) {
        debug_assert_eq!(c.form.dim(), self.dim);
        self.constraints.push(c);
    }

    pub fn with_constraint(&self, c: Constraint) -> Self {
        let mut p = self.clone();
        p.push(c);
        p
    }

    /// The same polyhedron with constraint `index` tightened to equality.
    pub fn tightened(&self, index: usize) -> Self {
        let mut p = self.clone();
        p.constraints[index].rel = Relation::EqZero;
        p
    }

    /// Exact membership test for closed sets.
    pub fn membership(&self, x: &[Rat]) -> Result<bool, Error> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self.constraints.iter().all(|c| c.holds_at(x)))
    }

    /// Removes every constraint whose removal does not change the set.
    ///
    /// Requires a full-dimensional polyhedron; the surviving `≥`-constraints
    /// are then in bijection with the facets.
    pub fn canonicalize(&self) -> Result<Polyhedron, Error> {
        // Constant constraints carry no slack: a violated one empties the
        // set, a satisfied one is vacuous for the interior question.
        let mut forms: Vec<LinearForm> = Vec::new();
        for c in &self.constraints {
            if c.form.is_constant_form() {
                if c.form.constant_term().is_negative() {
                    return Err(Error::NotFullDimensional);
                }
                continue;
            }
            forms.push(c.form.clone());
        }
        if self.has_equalities() || !lp::strict_feasible(&forms) {
            return Err(Error::NotFullDimensional);
        }
        let mut kept: Vec<Constraint> = Vec::new();
        // Exact duplicates first: forms are already canonically scaled.
        let mut seen: Vec<&Constraint> = Vec::new();
        let mut unique: Vec<Constraint> = Vec::new();
        for c in &self.constraints {
            if !seen.contains(&c) {
                seen.push(c);
                unique.push(c.clone());
            }
        }
        let mut remaining = unique;
        let mut idx = 0;
        while idx < remaining.len() {
            let candidate = remaining[idx].clone();
            let others: Vec<Constraint> = remaining
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != idx)
                .map(|(_, c)| c.clone())
                .collect();
            let rest = Polyhedron::new(self.dim, others);
            let res = lp::lp_solve(&candidate.form, &rest, Sense::Minimize);
            let redundant = match res.status {
                LpStatus::Optimal => res.value.expect("optimal LP carries a value") >= Rat::zero(),
                LpStatus::Unbounded => false,
                // The full system has interior, so the relaxation cannot be empty.
                LpStatus::Infeasible => unreachable!("relaxation of a nonempty set is nonempty"),
            };
            if redundant {
                remaining.remove(idx);
            } else {
                idx += 1;
            }
        }
        kept.append(&mut remaining);
        Ok(Polyhedron::new(self.dim, kept))
    }

    /// Canonical sort/dedup key: the normalized constraint list in order.
    pub fn canonical_key(&self) -> Vec<(Relation, Vec<Rat>, Rat)> {
        let mut key: Vec<(Relation, Vec<Rat>, Rat)> = self
            .constraints
            .iter()
            .map(|c| {
                (
                    c.rel,
                    c.form.coeffs().to_vec(),
                    c.form.constant_term().clone(),
                )
            })
            .collect();
        key.sort();
        key
    }
}

/// Vertices of a (bounded) two-dimensional polyhedron obtained by clipping
/// `p` to the axis-aligned box, ordered counter-clockwise. `None` when the
/// clipped region has no area. Exact except for the angular sort, which only
/// affects drawing order.
pub fn clipped_polygon_2d(
    p: &Polyhedron,
    xmin: &Rat,
    xmax: &Rat,
    ymin: &Rat,
    ymax: &Rat,
) -> Option<Vec<(Rat, Rat)>> {
    assert_eq!(p.dim(), 2, "polygon clipping is two-dimensional");
    let mut clipped = p.clone();
    let x = LinearForm::variable(2, 0);
    let y = LinearForm::variable(2, 1);
    clipped.push(Constraint::geq(&x - &LinearForm::constant(2, xmin.clone())));
    clipped.push(Constraint::geq(&LinearForm::constant(2, xmax.clone()) - &x));
    clipped.push(Constraint::geq(&y - &LinearForm::constant(2, ymin.clone())));
    clipped.push(Constraint::geq(&LinearForm::constant(2, ymax.clone()) - &y));
    let cs = clipped.constraints();

    let mut verts: Vec<(Rat, Rat)> = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let (a, b) = (&cs[i].form, &cs[j].form);
            let det = a.coeff(0) * b.coeff(1) - a.coeff(1) * b.coeff(0);
            if det.is_zero() {
                continue;
            }
            // Solve a(v) = 0, b(v) = 0 by Cramer's rule.
            let rhs0 = -a.constant_term();
            let rhs1 = -b.constant_term();
            let vx = (&rhs0 * b.coeff(1) - a.coeff(1) * &rhs1) / &det;
            let vy = (a.coeff(0) * &rhs1 - &rhs0 * b.coeff(0)) / &det;
            let v = [vx, vy];
            if clipped.membership(&v).expect("dimension checked") {
                let (vx, vy) = (v[0].clone(), v[1].clone());
                if !verts.contains(&(vx.clone(), vy.clone())) {
                    verts.push((vx, vy));
                }
            }
        }
    }
    if verts.len() < 3 {
        return None;
    }
    let n = verts.len() as f64;
    let (mut cx, mut cy) = (0.0f64, 0.0f64);
    let approx: Vec<(f64, f64)> = verts
        .iter()
        .map(|(x, y)| (rat_to_f64(x), rat_to_f64(y)))
        .collect();
    for (x, y) in &approx {
        cx += x / n;
        cy += y / n;
    }
    let mut order: Vec<usize> = (0..verts.len()).collect();
    order.sort_by(|&i, &j| {
        let ai = (approx[i].1 - cy).atan2(approx[i].0 - cx);
        let aj = (approx[j].1 - cy).atan2(approx[j].0 - cx);
        ai.partial_cmp(&aj).expect("finite angles")
    });
    Some(order.into_iter().map(|i| verts[i].clone()).collect())
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    fn geq(coeffs: &[i64], constant: i64) -> Constraint {
        Constraint::geq(LinearForm::new(
            coeffs.iter().map(|&v| int(v)).collect(),
            int(constant),
        ))
    }

    #[test]
    fn membership_on_the_quadrant() {
        let p = Polyhedron::new(2, vec![geq(&[1, 0], 0), geq(&[0, 1], 0)]);
        assert!(p.membership(&[int(0), int(0)]).unwrap());
        assert!(!p.membership(&[int(-1), int(0)]).unwrap());
        let half = Polyhedron::new(2, vec![geq(&[1, 0], 0)]);
        // Boundary points belong: the sets are closed.
        assert!(half.membership(&[int(0), int(5)]).unwrap());
        assert!(matches!(
            half.membership(&[int(0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonicalize_drops_implied_halfplanes() {
        let p = Polyhedron::new(1, vec![geq(&[1], 0), geq(&[1], 1)]);
        let c = p.canonicalize().unwrap();
        assert_eq!(c.constraints(), &[geq(&[1], 0)]);

        let p = Polyhedron::new(2, vec![geq(&[1, 0], 0), geq(&[0, 1], 0), geq(&[1, 1], 1)]);
        let c = p.canonicalize().unwrap();
        assert_eq!(c.constraints(), &[geq(&[1, 0], 0), geq(&[0, 1], 0)]);
    }

    #[test]
    fn canonicalize_keeps_all_square_facets() {
        let square = Polyhedron::new(
            2,
            vec![
                geq(&[1, 0], 0),
                geq(&[-1, 0], 1),
                geq(&[0, 1], 0),
                geq(&[0, -1], 1),
            ],
        );
        let c = square.canonicalize().unwrap();
        assert_eq!(c.constraints().len(), 4);
        assert_eq!(c.constraints(), square.constraints());
    }

    #[test]
    fn canonicalize_flags_degenerate_input() {
        let line = Polyhedron::new(2, vec![geq(&[1, 0], 0), geq(&[-1, 0], 0)]);
        assert!(matches!(
            line.canonicalize(),
            Err(Error::NotFullDimensional)
        ));
    }

    #[test]
    fn clipping_the_universe_gives_the_box() {
        let verts =
            clipped_polygon_2d(&Polyhedron::universe(2), &int(-1), &int(1), &int(-1), &int(1))
                .unwrap();
        assert_eq!(verts.len(), 4);
        let quadrant = Polyhedron::new(2, vec![geq(&[1, 0], 0), geq(&[0, 1], 0)]);
        let verts = clipped_polygon_2d(&quadrant, &int(-1), &int(1), &int(-1), &int(1)).unwrap();
        assert_eq!(verts.len(), 4); // unit square corner at the origin
        let empty = Polyhedron::new(2, vec![geq(&[1, 0], -5)]);
        assert_eq!(
            clipped_polygon_2d(&empty, &int(-1), &int(1), &int(-1), &int(1)),
            None
        );
    }
}
