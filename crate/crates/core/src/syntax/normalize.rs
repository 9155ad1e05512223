//! Rewriting of expression trees into the normal form
//! `min(A₁,…,A_k) − min(B₁,…,B_l)`.
//!
//! The form is closed under `+`, `−` and `min`:
//!
//! * `Lin ℓ        ↦ ({ℓ}, {0})`
//! * `Neg (A, B)   ↦ (B, A)`
//! * `Sum          ↦ (A₁⊕A₂, B₁⊕B₂)` with `S⊕T` the set of pairwise sums
//! * `Min          ↦ ((A₁⊕B₂) ∪ (A₂⊕B₁), B₁⊕B₂)`
//!
//! The sumset grows multiplicatively, so redundant forms are pruned after
//! every combination step, not only at the end.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exactgeom::lp::strict_feasible;
use crate::linform::LinearForm;
use crate::rat::{rat, Rat};
use crate::syntax::ast::Expr;
use crate::syntax::NormalForm;

/// Removes every form that is nowhere the strict unique minimizer of the
/// set on a full-dimensional region; the pointwise minimum is unchanged.
///
/// `ℓ` is dropped iff `{x : ℓ(x) < ℓ'(x) for all other ℓ'}` has empty
/// interior, decided by the max-slack LP. Duplicates are removed first.
/// A sampling pass runs before the LPs: a strict win at any rational point
/// exhibits a nonempty open strict region, which settles "keep" exactly
/// without an LP, so only genuine removals pay for one.
pub fn prune_redundant(forms: Vec<LinearForm>, dim: usize) -> Vec<LinearForm> {
    let mut set = forms;
    set.sort();
    set.dedup();
    assert!(!set.is_empty(), "pruning requires a nonempty set");
    // Parallel translates lose outright: among equal gradients only the
    // smallest constant can ever reach the minimum. Sort order groups them
    // with the smallest constant first.
    set.dedup_by(|next, prev| next.coeffs() == prev.coeffs());
    if set.len() == 1 {
        return set;
    }

    let mut keep = vec![false; set.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7071_u64);
    let samples = 2 * set.len() + 24;
    for round in 0..samples {
        let span: i64 = [5, 40, 400][round % 3];
        let x: Vec<Rat> = (0..dim)
            .map(|_| {
                let den = rng.gen_range(1..=5);
                rat(rng.gen_range(-span * den..=span * den), den)
            })
            .collect();
        let mut winner = 0usize;
        let mut best = set[0].eval(&x);
        let mut tie = false;
        for (i, f) in set.iter().enumerate().skip(1) {
            let v = f.eval(&x);
            if v < best {
                winner = i;
                best = v;
                tie = false;
            } else if v == best {
                tie = true;
            }
        }
        if !tie {
            keep[winner] = true;
        }
    }

    let mut idx = 0;
    while set.len() > 1 && idx < set.len() {
        if keep[idx] {
            idx += 1;
            continue;
        }
        let candidate = set[idx].clone();
        let margins: Vec<LinearForm> = set
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, other)| other - &candidate)
            .collect();
        if strict_feasible(&margins) {
            keep[idx] = true;
            idx += 1;
        } else {
            set.remove(idx);
            keep.remove(idx);
        }
    }
    set
}

fn sumset(a: &[LinearForm], b: &[LinearForm]) -> Vec<LinearForm> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for f in a {
        for g in b {
            out.push(f + g);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Value-preserving rewrite of `e` into normal form.
pub fn normalize(e: &Expr, dim: usize) -> NormalForm {
    match e {
        Expr::Lin(f) => {
            debug_assert_eq!(f.dim(), dim);
            NormalForm::new(vec![f.clone()], vec![LinearForm::zero(dim)], dim)
        }
        Expr::Neg(inner) => {
            let nf = normalize(inner, dim);
            let (numer, denom) = nf.into_parts();
            NormalForm::new(denom, numer, dim)
        }
        Expr::Sum(a, b) => {
            let na = normalize(a, dim);
            let nb = normalize(b, dim);
            NormalForm::new(
                sumset(na.numer(), nb.numer()),
                sumset(na.denom(), nb.denom()),
                dim,
            )
        }
        Expr::Min(children) => {
            let mut acc = normalize(&children[0], dim);
            for child in &children[1..] {
                let next = normalize(child, dim);
                // min(a₁/b₁, a₂/b₂) = min(a₁⊕b₂, a₂⊕b₁) / (b₁⊕b₂)
                let mut numer = sumset(acc.numer(), next.denom());
                numer.extend(sumset(next.numer(), acc.denom()));
                let denom = sumset(acc.denom(), next.denom());
                acc = NormalForm::new(numer, denom, dim);
            }
            acc
        }
    }
}
