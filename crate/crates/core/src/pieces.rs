//! Enumeration of the linear pieces of a tropical rational map: the closed
//! full-dimensional cells on which every `min` in every coordinate is
//! achieved by a fixed argument, together with the affine map on each cell.

use std::collections::BTreeMap;


use crate::error::Error;
use crate::exactgeom::lp::strict_feasible;
use crate::exactgeom::matrix::MatrixQ;
use crate::exactgeom::polyhedron::{Constraint, Polyhedron, Relation};
use crate::rat::Rat;
use crate::syntax::TropicalMap;

/// For each coordinate, the index of the achieving form in the numerator
/// and denominator min-sets. The induced cell is the conjunction of
/// `chosen ≤ other` inequalities over all sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub numer_choice: Vec<usize>,
    pub denom_choice: Vec<usize>,
}

/// An affine piece `x ↦ Mx + c` on a closed full-dimensional cell.
/// `jac` is `det(M)`, present when the map is square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPiece {
    pub id: usize,
    pub matrix: MatrixQ,
    pub offset: Vec<Rat>,
    pub cell: Polyhedron,
    pub jac: Option<Rat>,
}

impl LinearPiece {
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        self.matrix
            .mul_vec(x)
            .into_iter()
            .zip(&self.offset)
            .map(|(v, c)| v + c)
            .collect()
    }
}

/// A finite decomposition of `ℝⁿ` into the cells of `map`, with pairwise
/// disjoint interiors. Piece ids are assigned in a canonical cell order, so
/// equal maps enumerate identically.
#[derive(Clone, Debug)]
pub struct Decomposition {
    map: TropicalMap,
    pieces: Vec<LinearPiece>,
}

impl Decomposition {
    pub fn map(&self) -> &TropicalMap {
        &self.map
    }

    pub fn pieces(&self) -> &[LinearPiece] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    pub fn piece(&self, id: usize) -> &LinearPiece {
        &self.pieces[id]
    }
}

/// One min-set of one coordinate, flattened for the selection search.
struct Slot {
    coord: usize,
    is_numer: bool,
    forms: Vec<crate::linform::LinearForm>,
}

/// Depth-first search over per-min selections with LP pruning.
///
/// A partial selection is abandoned as soon as its inequality system has
/// empty interior, so every surviving full selection yields a
/// full-dimensional cell. Selections producing the same cell up to
/// redundant constraints are deduplicated.
pub fn enumerate_pieces(map: &TropicalMap) -> Decomposition {
    let _n = map.dim();
    let mut slots: Vec<Slot> = Vec::new();
    for (k, coord) in map.coords().iter().enumerate() {
        slots.push(Slot {
            coord: k,
            is_numer: true,
            forms: coord.numer().to_vec(),
        });
        slots.push(Slot {
            coord: k,
            is_numer: false,
            forms: coord.denom().to_vec(),
        });
    }
    // Small sets first: forced singletons are free, and tight sets prune
    // the search fastest.
    slots.sort_by_key(|s| s.forms.len());

    let mut found: BTreeMap<Vec<(Relation, Vec<Rat>, Rat)>, LinearPiece> = BTreeMap::new();
    let mut constraints: Vec<Constraint> = Vec::new();
    let mut choices: Vec<usize> = vec![0; slots.len()];
    search(
        map,
        &slots,
        0,
        &mut constraints,
        &mut choices,
        &mut found,
    );

    let mut pieces: Vec<LinearPiece> = Vec::with_capacity(found.len());
    for (id, (_, mut piece)) in found.into_iter().enumerate() {
        piece.id = id;
        pieces.push(piece);
    }
    assert!(!pieces.is_empty(), "some selection is always feasible");
    Decomposition {
        map: map.clone(),
        pieces,
    }
}

fn search(
    map: &TropicalMap,
    slots: &[Slot],
    depth: usize,
    constraints: &mut Vec<Constraint>,
    choices: &mut Vec<usize>,
    found: &mut BTreeMap<Vec<(Relation, Vec<Rat>, Rat)>, LinearPiece>,
) {
    let n = map.dim();
    if depth == slots.len() {
        let cell = Polyhedron::new(n, constraints.clone())
            .canonicalize()
            .expect("pruned selections are full-dimensional");
        let key = cell.canonical_key();
        if found.contains_key(&key) {
            return;
        }
        let piece = assemble_piece(map, slots, choices, cell);
        found.insert(key, piece);
        return;
    }
    let slot = &slots[depth];
    for choice in 0..slot.forms.len() {
        let chosen = &slot.forms[choice];
        let added: Vec<Constraint> = slot
            .forms
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != choice)
            .map(|(_, other)| Constraint::geq(other - chosen))
            .collect();
        let added_len = added.len();
        constraints.extend(added);
        let viable = added_len == 0 || {
            let forms: Vec<_> = constraints.iter().map(|c| c.form.clone()).collect();
            strict_feasible(&forms)
        };
        if viable {
            choices[depth] = choice;
            search(map, slots, depth + 1, constraints, choices, found);
        }
        constraints.truncate(constraints.len() - added_len);
    }
}

fn assemble_piece(
    map: &TropicalMap,
    slots: &[Slot],
    choices: &[usize],
    cell: Polyhedron,
) -> LinearPiece {
    let n = map.dim();
    let m = map.coords().len();
    let mut selection = Selection {
        numer_choice: vec![0; m],
        denom_choice: vec![0; m],
    };
    for (slot, &choice) in slots.iter().zip(choices) {
        if slot.is_numer {
            selection.numer_choice[slot.coord] = choice;
        } else {
            selection.denom_choice[slot.coord] = choice;
        }
    }
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut offset: Vec<Rat> = Vec::with_capacity(m);
    for (k, coord) in map.coords().iter().enumerate() {
        let a = &coord.numer()[selection.numer_choice[k]];
        let b = &coord.denom()[selection.denom_choice[k]];
        let diff = a - b;
        rows.push(diff.coeffs().to_vec());
        offset.push(diff.constant_term().clone());
    }
    let matrix = MatrixQ::from_rows(rows);
    let jac = if m == n {
        Some(matrix.det().expect("square by construction"))
    } else {
        None
    };
    LinearPiece {
        id: 0, // reassigned in canonical order by the caller
        matrix,
        offset,
        cell,
        jac,
    }
}

/// All pieces whose closed cell contains `x`; never empty, since the cells
/// cover `ℝⁿ`.
pub fn pieces_at<'a>(d: &'a Decomposition, x: &[Rat]) -> Result<Vec<&'a LinearPiece>, Error> {
    if x.len() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            found: x.len(),
        });
    }
    let hits: Vec<&LinearPiece> = d
        .pieces
        .iter()
        .filter(|p| p.cell.membership(x).expect("dimension checked"))
        .collect();
    debug_assert!(!hits.is_empty(), "the cells cover the whole space");
    Ok(hits)
}

/// The facets of a piece's cell: one `(n−1)`-dimensional polyhedron per
/// irredundant constraint, obtained by tightening it to equality. A cell
/// with no constraints (all of `ℝⁿ`) has no boundary and yields none.
pub fn facets_of(piece: &LinearPiece) -> Vec<Polyhedron> {
    (0..piece.cell.constraints().len())
        .map(|i| piece.cell.tightened(i))
        .collect()
}
