//! Surface syntax and normal forms for tropical rational maps.

pub mod ast;
mod normalize;
mod parser;

pub use ast::Expr;
pub use normalize::{normalize, prune_redundant};
pub use parser::{parse_map, parse_map_raw};

use crate::error::Error;
use crate::linform::LinearForm;
use crate::rat::Rat;

/// One coordinate in normal form: `min(numer) − min(denom)`.
///
/// Both sets are sorted, duplicate-free and pruned: every member is the
/// strict unique minimizer of its set on some full-dimensional region.
/// The representation is shift-reduced: `min(A) − λ = min(A − λ)`, so a
/// denominator that prunes to a single form is always the zero form. This
/// makes concave coordinates syntactically recognizable and the printed
/// form reparse to identical sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    numer: Vec<LinearForm>,
    denom: Vec<LinearForm>,
    dim: usize,
}

impl NormalForm {
    /// Canonicalizes on construction: dedup, prune, sort, shift-reduce.
    pub fn new(numer: Vec<LinearForm>, denom: Vec<LinearForm>, dim: usize) -> Self {
        debug_assert!(numer.iter().chain(&denom).all(|f| f.dim() == dim));
        let mut numer = normalize::prune_redundant(numer, dim);
        let mut denom = normalize::prune_redundant(denom, dim);
        if denom.len() == 1 && !denom[0].is_zero() {
            let shift = std::mem::replace(&mut denom[0], LinearForm::zero(dim));
            for f in numer.iter_mut() {
                *f = &*f - &shift;
            }
        }
        Self { numer, denom, dim }
    }

    pub fn numer(&self) -> &[LinearForm] {
        &self.numer
    }

    pub fn denom(&self) -> &[LinearForm] {
        &self.denom
    }

    pub fn into_parts(self) -> (Vec<LinearForm>, Vec<LinearForm>) {
        (self.numer, self.denom)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Concave coordinates are plain minima: the denominator is a single
    /// form. Maps with all coordinates concave get the planar fast path.
    pub fn is_concave(&self) -> bool {
        self.denom.len() == 1
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        let min_over = |forms: &[LinearForm]| {
            forms
                .iter()
                .map(|f| f.eval(x))
                .min()
                .expect("normal-form sets are nonempty")
        };
        min_over(&self.numer) - min_over(&self.denom)
    }

    fn side_to_text(forms: &[LinearForm], vars: &[String]) -> String {
        if forms.len() == 1 {
            forms[0].to_text(vars)
        } else {
            let parts: Vec<String> = forms.iter().map(|f| f.to_text(vars)).collect();
            format!("min({})", parts.join(", "))
        }
    }

    pub fn to_text(&self, vars: &[String]) -> String {
        let numer = Self::side_to_text(&self.numer, vars);
        if self.denom.len() == 1 && self.denom[0].is_zero() {
            return numer;
        }
        if self.denom.len() == 1 {
            return format!("{numer} - ({})", self.denom[0].to_text(vars));
        }
        format!("{numer} - {}", Self::side_to_text(&self.denom, vars))
    }
}

/// A map `ℝⁿ → ℝᵐ` whose coordinates are tropical rational functions in
/// normal form. Isomorphism analysis additionally requires `m = n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalMap {
    name: String,
    vars: Vec<String>,
    coords: Vec<NormalForm>,
}

impl TropicalMap {
    pub fn new(name: impl Into<String>, vars: Vec<String>, coords: Vec<NormalForm>) -> Self {
        let name = name.into();
        assert!(
            coords.iter().all(|c| c.dim() == vars.len()),
            "all coordinates must share the ambient dimension"
        );
        Self { name, vars, coords }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Ambient dimension `n` (number of variables).
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn coords(&self) -> &[NormalForm] {
        &self.coords
    }

    pub fn is_square(&self) -> bool {
        self.coords.len() == self.dim()
    }

    /// All coordinates concave (plain minima of affine forms).
    pub fn is_polynomial_map(&self) -> bool {
        self.coords.iter().all(NormalForm::is_concave)
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Vec<Rat>, Error> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(self.coords.iter().map(|c| c.eval(x)).collect())
    }

    /// Re-renders the map in the input grammar; parsing the result yields
    /// identical normal forms.
    pub fn to_source(&self) -> String {
        let coords: Vec<String> = self
            .coords
            .iter()
            .map(|c| c.to_text(&self.vars))
            .collect();
        format!(
            "map {}({}) = ({})",
            self.name,
            self.vars.join(", "),
            coords.join(", ")
        )
    }
}
