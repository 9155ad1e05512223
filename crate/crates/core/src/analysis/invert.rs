//! Piecewise-affine inverses. When every piece is nonsingular, each
//! `(Mᵢ, cᵢ)` on `Cᵢ` inverts to `(Mᵢ⁻¹, −Mᵢ⁻¹cᵢ)` on the image cell
//! `f(Cᵢ) = {y : Mᵢ⁻¹(y − cᵢ) ∈ Cᵢ}`, with constraints transported exactly.

use num_traits::Zero;

use crate::error::Error;
use crate::exactgeom::polyhedron::{Constraint, Polyhedron};
use crate::linform::LinearForm;
use crate::pieces::{Decomposition, LinearPiece};
use crate::rat::Rat;

/// Inverts every piece; callers are expected to have established that the
/// map is an isomorphism (the pieces then tile the target space).
pub fn invert(d: &Decomposition) -> Result<Vec<LinearPiece>, Error> {
    let n = d.dim();
    let mut out = Vec::with_capacity(d.len());
    for piece in d.pieces() {
        let inv = piece
            .matrix
            .inverse()?
            .ok_or_else(|| Error::NotInvertible(format!("piece {} is singular", piece.id)))?;
        let offset: Vec<Rat> = inv.mul_vec(&piece.offset).into_iter().map(|v| -v).collect();
        // Transport ℓ(x) = g·x + b to ℓ'(y) = (gᵀM⁻¹)·y + (b − gᵀM⁻¹c).
        let mut cs = Vec::with_capacity(piece.cell.constraints().len());
        for c in piece.cell.constraints() {
            let g_inv: Vec<Rat> = (0..n)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for (i, g) in c.form.coeffs().iter().enumerate() {
                        if !g.is_zero() {
                            acc += g * inv.get(i, j);
                        }
                    }
                    acc
                })
                .collect();
            let shift: Rat = g_inv
                .iter()
                .zip(&offset)
                .map(|(a, o)| a * o)
                .sum();
            // offset already is −M⁻¹c, so b + g·(−M⁻¹c) = b + shift.
            let form = LinearForm::new(g_inv, c.form.constant_term() + &shift);
            cs.push(Constraint {
                form: form.normalized_for_inequality(),
                rel: c.rel,
            });
        }
        let jac = piece.jac.as_ref().map(|j| j.clone().recip());
        out.push(LinearPiece {
            id: piece.id,
            matrix: inv,
            offset,
            cell: Polyhedron::new(n, cs),
            jac,
        });
    }
    Ok(out)
}

/// Evaluates a piecewise-affine map at `y` via the first piece whose cell
/// contains it; `None` when no cell does.
pub fn apply_piecewise(pieces: &[LinearPiece], y: &[Rat]) -> Option<Vec<Rat>> {
    pieces
        .iter()
        .find(|p| p.cell.membership(y).unwrap_or(false))
        .map(|p| p.apply(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::matrix::MatrixQ;
    use crate::pieces::enumerate_pieces;
    use crate::rat::int;
    use crate::syntax::parse_map;

    #[test]
    fn identity_inverts_to_itself() {
        let d = enumerate_pieces(&parse_map("map id(x, y) = (x, y)").unwrap());
        let inv = invert(&d).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].matrix, MatrixQ::identity(2));
        assert_eq!(inv[0].offset, vec![int(0), int(0)]);
    }

    #[test]
    fn linear_shear_inverts_exactly() {
        let d = enumerate_pieces(&parse_map("map s(x, y) = (x + 2*y, y)").unwrap());
        let inv = invert(&d).unwrap();
        assert_eq!(inv.len(), 1);
        assert_eq!(inv[0].matrix, MatrixQ::from_i64(&[&[1, -2], &[0, 1]]));
    }

    #[test]
    fn composition_example_round_trips() {
        let text = "map example1(x, y) = (x + min(0, 2*y + min(0, 4*x)), y + min(0, 2*x))";
        let d = enumerate_pieces(&parse_map(text).unwrap());
        let inv = invert(&d).unwrap();
        assert_eq!(inv.len(), 4);
        for p in &inv {
            assert_eq!(p.jac, Some(int(1)));
        }
        for x in [vec![int(5), int(3)], vec![int(-2), int(-7)]] {
            let y = d.map().eval(&x).unwrap();
            let back = apply_piecewise(&inv, &y).expect("image cells tile the plane");
            assert_eq!(back, x);
        }
    }

    #[test]
    fn singular_pieces_refuse_to_invert() {
        let d = enumerate_pieces(&parse_map("map f(x, y) = (min(x, 0), y)").unwrap());
        assert!(matches!(invert(&d), Err(Error::NotInvertible(_))));
    }
}
