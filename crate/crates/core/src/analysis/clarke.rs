//! The generalized-Jacobian singularity test: does the convex hull of the
//! differentials of the pieces containing a point contain a singular
//! matrix? Nonsingularity of the whole hull certifies local invertibility.
//!
//! Decision ladder:
//! 1. any single differential singular → singular, weight 1;
//! 2. for each pair `(A, B)`, `det((1−t)A + tB)` is a degree-≤n rational
//!    polynomial; Sturm counting finds roots in `(0, 1)` exactly;
//! 3. in the plane the determinant of a convex combination is a quadratic
//!    form in the weights, minimized/maximized exactly over the simplex by
//!    enumerating faces and solving the critical-point systems — a complete
//!    decision;
//! 4. in dimension ≥ 3 a clean pairwise pass is only inconclusive.

use num_traits::{One, Signed, Zero};

use crate::analysis::poly::{
    count_roots_open, find_root_in, lagrange_interpolate, PolyQ, RootWitness,
};
use crate::error::Error;
use crate::exactgeom::lp::feasible_point;
use crate::exactgeom::matrix::MatrixQ;
use crate::exactgeom::polyhedron::{Constraint, Polyhedron};
use crate::linform::LinearForm;
use crate::pieces::{pieces_at, Decomposition};
use crate::rat::Rat;

/// The face-enumeration hull decision is exponential in the number of
/// matrices; beyond this many pieces at one point it degrades to the
/// pairwise verdict.
const HULL_FACE_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClarkeVerdict {
    ContainsSingular(SingularWitness),
    NonsingularCertified,
    UnknownNoSingularFound,
}

/// Evidence that the hull contains a singular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularWitness {
    /// Convex weights over `matrices`: nonnegative, summing to one, with
    /// `det(Σ wᵢ Mᵢ) = 0` exactly.
    Exact { weights: Vec<Rat> },
    /// The singular combination lies on the segment `(1−t)·from + t·to`
    /// of weight vectors, with the (irrational) root isolated in `(lo, hi)`.
    Interval {
        from: Vec<Rat>,
        to: Vec<Rat>,
        lo: Rat,
        hi: Rat,
    },
}

/// The differentials of all pieces whose cells contain `point`, with the
/// hull-singularity verdict.
#[derive(Clone, Debug)]
pub struct ClarkeSet {
    pub point: Vec<Rat>,
    pub piece_ids: Vec<usize>,
    pub matrices: Vec<MatrixQ>,
    pub verdict: ClarkeVerdict,
}

pub fn clarke_at(d: &Decomposition, x: &[Rat]) -> Result<ClarkeSet, Error> {
    if !d.map().is_square() {
        return Err(Error::NonSquareMap {
            coords: d.map().coords().len(),
            vars: d.map().dim(),
        });
    }
    let n = d.dim();
    let here = pieces_at(d, x)?;
    let piece_ids: Vec<usize> = here.iter().map(|p| p.id).collect();
    let matrices: Vec<MatrixQ> = here.iter().map(|p| p.matrix.clone()).collect();
    let dets: Vec<Rat> = here
        .iter()
        .map(|p| p.jac.clone().expect("square map"))
        .collect();
    let k = matrices.len();

    let finish = |verdict| {
        Ok(ClarkeSet {
            point: x.to_vec(),
            piece_ids: piece_ids.clone(),
            matrices: matrices.clone(),
            verdict,
        })
    };

    for (i, det) in dets.iter().enumerate() {
        if det.is_zero() {
            let mut weights = vec![Rat::zero(); k];
            weights[i] = Rat::one();
            return finish(ClarkeVerdict::ContainsSingular(SingularWitness::Exact {
                weights,
            }));
        }
    }

    for i in 0..k {
        for j in i + 1..k {
            let p = segment_det_poly(&matrices[i], &matrices[j]);
            debug_assert_eq!(p.eval(&Rat::zero()), dets[i]);
            debug_assert_eq!(p.eval(&Rat::one()), dets[j]);
            if count_roots_open(&p, &Rat::zero(), &Rat::one()) == 0 {
                continue;
            }
            let witness = match find_root_in(&p, &Rat::zero(), &Rat::one()) {
                RootWitness::Rational(t) => {
                    let mut weights = vec![Rat::zero(); k];
                    weights[i] = Rat::one() - &t;
                    weights[j] = t;
                    SingularWitness::Exact { weights }
                }
                RootWitness::Interval(lo, hi) => {
                    let unit = |idx: usize| {
                        let mut w = vec![Rat::zero(); k];
                        w[idx] = Rat::one();
                        w
                    };
                    SingularWitness::Interval {
                        from: unit(i),
                        to: unit(j),
                        lo,
                        hi,
                    }
                }
            };
            return finish(ClarkeVerdict::ContainsSingular(witness));
        }
    }

    if k == 1 || n == 1 {
        // A single nonsingular matrix, or scalars: segments decide fully.
        return finish(ClarkeVerdict::NonsingularCertified);
    }
    if n == 2 && k <= HULL_FACE_CAP {
        let (min, max) = hull_det_range_2x2(&matrices, &dets);
        if min.0.is_positive() || max.0.is_negative() {
            return finish(ClarkeVerdict::NonsingularCertified);
        }
        let witness = if min.0.is_zero() {
            SingularWitness::Exact { weights: min.1 }
        } else if max.0.is_zero() {
            SingularWitness::Exact { weights: max.1 }
        } else {
            // det < 0 at the minimizer, > 0 at the maximizer: the quadratic
            // along the connecting segment has a root strictly inside.
            let q = segment_quadratic(&matrices, &min.1, &max.1);
            debug_assert!(q.eval(&Rat::zero()).is_negative());
            debug_assert!(q.eval(&Rat::one()).is_positive());
            match find_root_in(&q, &Rat::zero(), &Rat::one()) {
                RootWitness::Rational(t) => {
                    let weights = combine_weights(&min.1, &max.1, &t);
                    SingularWitness::Exact { weights }
                }
                RootWitness::Interval(lo, hi) => SingularWitness::Interval {
                    from: min.1,
                    to: max.1,
                    lo,
                    hi,
                },
            }
        };
        if let SingularWitness::Exact { weights } = &witness {
            debug_assert!(combination_det(&matrices, weights).is_zero());
        }
        return finish(ClarkeVerdict::ContainsSingular(witness));
    }
    finish(ClarkeVerdict::UnknownNoSingularFound)
}

/// `det((1−t)A + tB)` as an exact polynomial in `t` (degree ≤ n), by
/// interpolation through integer nodes.
pub fn segment_det_poly(a: &MatrixQ, b: &MatrixQ) -> PolyQ {
    let n = a.rows();
    let nodes: Vec<(Rat, Rat)> = (0..=n as i64)
        .map(|k| {
            let t = crate::rat::int(k);
            let c = a.lin_comb(&(Rat::one() - &t), b, &t);
            (t, c.det().expect("square matrices"))
        })
        .collect();
    lagrange_interpolate(&nodes)
}

fn combine_weights(from: &[Rat], to: &[Rat], t: &Rat) -> Vec<Rat> {
    let s = Rat::one() - t;
    from.iter()
        .zip(to)
        .map(|(a, b)| &s * a + t * b)
        .collect()
}

fn combination_matrix(mats: &[MatrixQ], weights: &[Rat]) -> MatrixQ {
    let n = mats[0].rows();
    let mut acc = MatrixQ::zero(n, n);
    for (m, w) in mats.iter().zip(weights) {
        if !w.is_zero() {
            acc = acc.lin_comb(&Rat::one(), m, w);
        }
    }
    acc
}

fn combination_det(mats: &[MatrixQ], weights: &[Rat]) -> Rat {
    combination_matrix(mats, weights)
        .det()
        .expect("square matrices")
}

/// `det(Q((1−t)·from + t·to))` as a quadratic in `t`, by interpolation.
fn segment_quadratic(mats: &[MatrixQ], from: &[Rat], to: &[Rat]) -> PolyQ {
    let nodes: Vec<(Rat, Rat)> = (0..=2i64)
        .map(|k| {
            let t = crate::rat::int(k);
            let w = combine_weights(from, to, &t);
            (t, combination_det(mats, &w))
        })
        .collect();
    lagrange_interpolate(&nodes)
}

/// Exact range of `det(Σ λᵢ Mᵢ)` over the weight simplex for 2×2 matrices.
///
/// For 2×2 the determinant is a quadratic form `Q` in `λ`. On each face of
/// the simplex the extrema are critical points of `Q` restricted to the
/// face's affine hull, and `Q` is constant on each critical set, so every
/// face contributes the value of any solution of its critical system
/// (a rational linear system, found by LP feasibility). Returns
/// `((min, argmin), (max, argmax))`.
fn hull_det_range_2x2(mats: &[MatrixQ], dets: &[Rat]) -> ((Rat, Vec<Rat>), (Rat, Vec<Rat>)) {
    let k = mats.len();
    // Hessian of Q: H_ii = 2·det(M_i); H_ij = det(M_i + M_j) − det_i − det_j.
    let mut hess = vec![vec![Rat::zero(); k]; k];
    for i in 0..k {
        hess[i][i] = Rat::from_integer(2.into()) * &dets[i];
        for j in i + 1..k {
            let sum = mats[i].lin_comb(&Rat::one(), &mats[j], &Rat::one());
            let b = sum.det().expect("square") - &dets[i] - &dets[j];
            hess[i][j] = b.clone();
            hess[j][i] = b;
        }
    }
    let q_value = |lambda: &[Rat]| -> Rat {
        let mut acc = Rat::zero();
        for i in 0..k {
            if lambda[i].is_zero() {
                continue;
            }
            for j in 0..k {
                if !lambda[j].is_zero() {
                    acc += &hess[i][j] * &lambda[i] * &lambda[j];
                }
            }
        }
        acc / Rat::from_integer(2.into())
    };

    let mut min: Option<(Rat, Vec<Rat>)> = None;
    let mut max: Option<(Rat, Vec<Rat>)> = None;
    // Vars: λ_0..λ_{k−1}, μ. Face S: λ_i = 0 off S, λ_i ≥ 0 on S, Σλ = 1,
    // and stationarity (Hλ)_i = μ on S.
    for mask in 1u32..(1 << k) {
        let mut cs: Vec<Constraint> = Vec::new();
        let dim = k + 1;
        let mut ones = vec![Rat::one(); k];
        ones.push(Rat::zero());
        cs.push(Constraint::eq(LinearForm::new(ones, -Rat::one())));
        for i in 0..k {
            let mut unit = vec![Rat::zero(); dim];
            unit[i] = Rat::one();
            if mask & (1 << i) == 0 {
                cs.push(Constraint::eq(LinearForm::new(unit, Rat::zero())));
            } else {
                cs.push(Constraint::geq(LinearForm::new(unit, Rat::zero())));
                let mut grad = hess[i].clone();
                grad.push(-Rat::one());
                cs.push(Constraint::eq(LinearForm::new(grad, Rat::zero())));
            }
        }
        let Some(w) = feasible_point(&Polyhedron::new(dim, cs)) else {
            continue;
        };
        let lambda = w[..k].to_vec();
        let value = q_value(&lambda);
        if min.as_ref().is_none_or(|(v, _)| value < *v) {
            min = Some((value.clone(), lambda.clone()));
        }
        if max.as_ref().is_none_or(|(v, _)| value > *v) {
            max = Some((value, lambda));
        }
    }
    // Vertices are the singleton faces, whose critical systems are always
    // feasible, so both extremes exist.
    (min.expect("simplex is nonempty"), max.expect("simplex is nonempty"))
}
