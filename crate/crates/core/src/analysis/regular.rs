//! Regular values, exact fibers, and the degree.
//!
//! A value `y` is regular when it misses every image of every cell facet;
//! its fiber then meets only cell interiors, one piece per fiber point, and
//! the signed count of fiber points is the map's degree.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exactgeom::lp::{feasible_point, interior_point};
use crate::exactgeom::matrix::{solve_affine, AffineSolution, MatrixQ};
use crate::exactgeom::polyhedron::{Constraint, Polyhedron};
use crate::linform::LinearForm;
use crate::pieces::{facets_of, pieces_at, Decomposition};
use crate::rat::Rat;

/// A verified regular value: for every piece `i` and every facet `F` of its
/// cell, the system `{x ∈ F, Mᵢx + cᵢ = y}` is infeasible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularValueCertificate {
    pub value: Vec<Rat>,
    /// Interior point whose image the value is.
    pub source_point: Vec<Rat>,
    /// Number of (piece, facet) systems proven infeasible.
    pub checked_facets: usize,
}

/// Candidates are drawn from a large integer box and perturbed by small
/// rationals; density of regular values makes rejection rare, but
/// regularity is always verified, never assumed.
fn sample_coordinate(rng: &mut ChaCha8Rng) -> Rat {
    let whole: i64 = rng.gen_range(-1000..=1000);
    let den: i64 = rng.gen_range(2..=16);
    let num: i64 = rng.gen_range(-(den - 1)..=(den - 1));
    crate::rat::int(whole) + crate::rat::rat(num, den)
}

fn sample_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rat> {
    (0..dim).map(|_| sample_coordinate(rng)).collect()
}

/// A seed-dependent point strictly inside the cell: start from the max-slack
/// witness and shrink a random offset until every constraint stays strictly
/// positive. The slack is positive, so the loop terminates.
fn perturbed_interior(
    rng: &mut ChaCha8Rng,
    cell: &Polyhedron,
    base: &[Rat],
) -> Vec<Rat> {
    let dim = base.len();
    let offset: Vec<Rat> = (0..dim)
        .map(|_| crate::rat::rat(rng.gen_range(-64..=64), 64))
        .collect();
    let strictly_inside = |x: &[Rat]| {
        cell.constraints()
            .iter()
            .all(|c| c.form.eval(x).is_positive())
    };
    let mut scale = Rat::one();
    for _ in 0..64 {
        let candidate: Vec<Rat> = base
            .iter()
            .zip(&offset)
            .map(|(b, o)| b + &scale * o)
            .collect();
        if strictly_inside(&candidate) {
            return candidate;
        }
        scale /= crate::rat::int(2);
    }
    base.to_vec()
}

/// The facet-image avoidance system `{x ∈ facet, Mx + c = y}`.
fn facet_hits_value(facet: &Polyhedron, m: &MatrixQ, c: &[Rat], y: &[Rat]) -> bool {
    let n = facet.dim();
    let mut system = facet.clone();
    for r in 0..n {
        let form = LinearForm::new(m.row(r).to_vec(), &c[r] - &y[r]);
        system.push(Constraint::eq(form));
    }
    feasible_point(&system).is_some()
}

/// Searches for a regular value of the map: samples a point, snaps it to a
/// cell interior, takes its image, and verifies regularity against every
/// facet of every cell; resamples with fresh randomness on failure.
pub fn find_regular_value(
    d: &Decomposition,
    seed: u64,
    retries: u32,
) -> Result<RegularValueCertificate, Error> {
    if !d.map().is_square() {
        return Err(Error::NonSquareMap {
            coords: d.map().coords().len(),
            vars: d.map().dim(),
        });
    }
    let n = d.dim();
    let facets: Vec<(usize, Vec<Polyhedron>)> = d
        .pieces()
        .iter()
        .map(|p| (p.id, facets_of(p)))
        .collect();
    let total: usize = facets.iter().map(|(_, fs)| fs.len()).sum();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_failing_piece = 0usize;
    for _ in 0..retries.max(1) {
        let x0 = sample_point(&mut rng, n);
        let containing = pieces_at(d, &x0)?;
        let Some(first) = containing.first() else {
            continue;
        };
        let Some(base) = interior_point(&first.cell) else {
            continue;
        };
        let source = perturbed_interior(&mut rng, &first.cell, &base);
        let value = d.map().eval(&source)?;
        let mut regular = true;
        'check: for (id, fs) in &facets {
            let piece = d.piece(*id);
            for facet in fs {
                if facet_hits_value(facet, &piece.matrix, &piece.offset, &value) {
                    last_failing_piece = *id;
                    regular = false;
                    break 'check;
                }
            }
        }
        if regular {
            return Ok(RegularValueCertificate {
                value,
                source_point: source,
                checked_facets: total,
            });
        }
    }
    Err(Error::RetriesExhausted {
        attempts: retries.max(1),
        piece: last_failing_piece,
    })
}

/// One point of a fiber with all pieces whose (closed) cells contain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub point: Vec<Rat>,
    pub piece_ids: Vec<usize>,
}

/// The exact fiber `f⁻¹(y)`: per nonsingular piece the unique affine
/// preimage, kept iff it lies in the piece's cell; identical points found
/// in several cells (cell boundaries) are merged. Singular pieces whose
/// affine solution set meets their cell are flagged as degenerate instead
/// of enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub points: Vec<FiberPoint>,
    pub degenerate_piece_ids: Vec<usize>,
}

pub fn preimage(d: &Decomposition, y: &[Rat]) -> Result<Fiber, Error> {
    if !d.map().is_square() {
        return Err(Error::NonSquareMap {
            coords: d.map().coords().len(),
            vars: d.map().dim(),
        });
    }
    if y.len() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            found: y.len(),
        });
    }
    let mut merged: BTreeMap<Vec<Rat>, Vec<usize>> = BTreeMap::new();
    let mut degenerate = Vec::new();
    for piece in d.pieces() {
        match solve_affine(&piece.matrix, &piece.offset, y)? {
            AffineSolution::Unique(x) => {
                if piece.cell.membership(&x)? {
                    merged.entry(x).or_default().push(piece.id);
                }
            }
            AffineSolution::Inconsistent => {}
            AffineSolution::Underdetermined { particular, kernel } => {
                if affine_set_meets_cell(&particular, &kernel, &piece.cell) {
                    degenerate.push(piece.id);
                }
            }
        }
    }
    Ok(Fiber {
        points: merged
            .into_iter()
            .map(|(point, piece_ids)| FiberPoint { point, piece_ids })
            .collect(),
        degenerate_piece_ids: degenerate,
    })
}

/// Substitutes `x = particular + Σ tᵢ·kernelᵢ` into the cell constraints
/// and asks for feasibility in `t`.
fn affine_set_meets_cell(particular: &[Rat], kernel: &[Vec<Rat>], cell: &Polyhedron) -> bool {
    let t_dim = kernel.len();
    let mut cs = Vec::with_capacity(cell.constraints().len());
    for c in cell.constraints() {
        let coeffs: Vec<Rat> = kernel
            .iter()
            .map(|k| {
                let mut acc = Rat::zero();
                for (a, v) in c.form.coeffs().iter().zip(k) {
                    if !a.is_zero() {
                        acc += a * v;
                    }
                }
                acc
            })
            .collect();
        let form = LinearForm::new(coeffs, c.form.eval(particular));
        cs.push(Constraint {
            form: form.normalized_for_inequality(),
            rel: c.rel,
        });
    }
    feasible_point(&Polyhedron::new(t_dim, cs)).is_some()
}

/// The signed fiber count over a certified regular value: each fiber point
/// lies in exactly one cell, and contributes the sign of that piece's
/// Jacobian.
pub fn degree(d: &Decomposition, cert: &RegularValueCertificate) -> Result<i64, Error> {
    let fiber = preimage(d, &cert.value)?;
    let mut acc = 0i64;
    for pt in &fiber.points {
        debug_assert_eq!(
            pt.piece_ids.len(),
            1,
            "a regular fiber meets only cell interiors"
        );
        let jac = d
            .piece(pt.piece_ids[0])
            .jac
            .as_ref()
            .expect("square map");
        acc += if jac.is_positive() { 1 } else { -1 };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::enumerate_pieces;
    use crate::rat::int;
    use crate::syntax::parse_map;

    const EXAMPLE2: &str = "map example2(x, y, z) = (\
        min(2*y,0)+min(2*x+2*y,0)+z+x, \
        min(2*x,0)+min(2*x,2*y)+z+y, \
        min(2*x,0)+min(2*x+2*y,0)+z+y)";

    #[test]
    fn identity_certifies_any_value_and_has_degree_one() {
        let d = enumerate_pieces(&parse_map("map id(x, y) = (x, y)").unwrap());
        let cert = find_regular_value(&d, 0, 8).unwrap();
        assert_eq!(cert.checked_facets, 0);
        assert_eq!(cert.value, d.map().eval(&cert.source_point).unwrap());
        let fiber = preimage(&d, &[int(4), int(-9)]).unwrap();
        assert_eq!(fiber.points.len(), 1);
        assert_eq!(fiber.points[0].point, vec![int(4), int(-9)]);
        assert_eq!(degree(&d, &cert).unwrap(), 1);
    }

    #[test]
    fn reflection_has_degree_minus_one() {
        let d = enumerate_pieces(&parse_map("map r(x, y) = (-x, y)").unwrap());
        let cert = find_regular_value(&d, 0, 8).unwrap();
        assert_eq!(degree(&d, &cert).unwrap(), -1);
    }

    #[test]
    fn fiber_of_the_3d_example_is_the_hand_computed_pair() {
        let d = enumerate_pieces(&parse_map(EXAMPLE2).unwrap());
        let fiber = preimage(&d, &[int(1), int(3), int(1)]).unwrap();
        let points: Vec<Vec<Rat>> = fiber.points.iter().map(|p| p.point.clone()).collect();
        assert_eq!(
            points,
            vec![
                vec![int(-1), int(-1), int(8)],
                vec![int(1), int(1), int(0)],
            ]
        );
        assert!(fiber.degenerate_piece_ids.is_empty());
    }

    #[test]
    fn degree_of_the_3d_example_is_two() {
        let d = enumerate_pieces(&parse_map(EXAMPLE2).unwrap());
        let cert = find_regular_value(&d, 0, 32).unwrap();
        assert_eq!(degree(&d, &cert).unwrap(), 2);
    }

    #[test]
    fn degenerate_fibers_are_flagged_not_enumerated() {
        // First coordinate collapses for x ≥ 0: the piece there is singular.
        let d = enumerate_pieces(&parse_map("map f(x, y) = (min(x, 0), y)").unwrap());
        let fiber = preimage(&d, &[int(0), int(5)]).unwrap();
        assert_eq!(fiber.degenerate_piece_ids.len(), 1);
        // The nonsingular piece still contributes its point x = (0, 5).
        assert_eq!(fiber.points.len(), 1);
        let off = preimage(&d, &[int(1), int(0)]).unwrap();
        assert!(off.points.is_empty() && off.degenerate_piece_ids.is_empty());
    }
}
