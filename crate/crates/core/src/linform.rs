//! Affine forms `a·x + b` over exact rationals.

use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{format_rat, Rat};

/// An affine form `a·x + b` with exact rational coefficients.
///
/// Equality is coefficient-wise; there is no hidden rescaling, so two forms
/// compare equal iff they are literally the same function written the same
/// way. [`LinearForm::normalized_for_inequality`] provides the canonical
/// positive-scaled representative used when forms act as inequalities.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rat>,
    constant: Rat,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        Self { coeffs, constant }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Rat::zero(); dim], Rat::zero())
    }

    pub fn constant(dim: usize, value: Rat) -> Self {
        Self::new(vec![Rat::zero(); dim], value)
    }

    pub fn variable(dim: usize, index: usize) -> Self {
        Self::scaled_variable(dim, index, Rat::one())
    }

    pub fn scaled_variable(dim: usize, index: usize, coeff: Rat) -> Self {
        assert!(index < dim, "variable index out of range");
        let mut coeffs = vec![Rat::zero(); dim];
        coeffs[index] = coeff;
        Self::new(coeffs, Rat::zero())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &Rat {
        &self.coeffs[index]
    }

    pub fn constant_term(&self) -> &Rat {
        &self.constant
    }

    pub fn eval(&self, x: &[Rat]) -> Rat {
        debug_assert_eq!(x.len(), self.coeffs.len(), "evaluation dimension mismatch");
        let mut acc = self.constant.clone();
        for (a, v) in self.coeffs.iter().zip(x) {
            if !a.is_zero() {
                acc += a * v;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the gradient vanishes (the form is a constant).
    pub fn is_constant_form(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &Rat) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a * k).collect(),
            &self.constant * k,
        )
    }

    /// The unique positive rescaling with coprime integer entries.
    ///
    /// Positive scaling preserves the sense of `ℓ(x) ≥ 0`, so this is the
    /// canonical representative of an inequality; used for deduplication.
    pub fn normalized_for_inequality(&self) -> Self {
        let mut denom_lcm = num_bigint::BigInt::one();
        for v in self.coeffs.iter().chain(std::iter::once(&self.constant)) {
            denom_lcm = denom_lcm.lcm(v.denom());
        }
        let mut gcd = num_bigint::BigInt::zero();
        let scaled: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .map(|v| v.numer() * (&denom_lcm / v.denom()))
            .collect();
        for v in &scaled {
            gcd = gcd.gcd(v);
        }
        if gcd.is_zero() {
            return self.clone();
        }
        let factor = Rat::new(denom_lcm, gcd);
        self.scaled(&factor)
    }

    /// Renders the form over the given variable names, e.g. `2*x - 1/3*y + 4`.
    pub fn to_text(&self, vars: &[String]) -> String {
        debug_assert_eq!(vars.len(), self.coeffs.len());
        let mut out = String::new();
        let push_term = |value: &Rat, body: Option<&str>, out: &mut String| {
            if value.is_zero() {
                return;
            }
            let neg = value.is_negative();
            let abs = value.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            match body {
                Some(name) => {
                    if abs.is_one() {
                        out.push_str(name);
                    } else {
                        out.push_str(&format_rat(&abs));
                        out.push('*');
                        out.push_str(name);
                    }
                }
                None => out.push_str(&format_rat(&abs)),
            }
        };
        for (a, name) in self.coeffs.iter().zip(vars) {
            push_term(a, Some(name), &mut out);
        }
        push_term(&self.constant, None, &mut out);
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Add for &LinearForm {
    type Output = LinearForm;

    fn add(self, rhs: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.dim(), rhs.dim());
        LinearForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            &self.constant + &rhs.constant,
        )
    }
}

impl Sub for &LinearForm {
    type Output = LinearForm;

    fn sub(self, rhs: &LinearForm) -> LinearForm {
        debug_assert_eq!(self.dim(), rhs.dim());
        LinearForm::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
            &self.constant - &rhs.constant,
        )
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;

    fn neg(self) -> LinearForm {
        LinearForm::new(self.coeffs.iter().map(|a| -a).collect(), -&self.constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn eval_is_exact() {
        let f = LinearForm::new(vec![rat(1, 2), int(-3)], int(1));
        assert_eq!(f.eval(&[int(4), rat(1, 3)]), int(2));
    }

    #[test]
    fn normalization_clears_denominators_and_content() {
        let f = LinearForm::new(vec![rat(2, 3), rat(4, 3)], rat(-2, 3));
        let g = f.normalized_for_inequality();
        assert_eq!(g, LinearForm::new(vec![int(1), int(2)], int(-1)));
        // Zero form is untouched.
        let z = LinearForm::zero(2);
        assert_eq!(z.normalized_for_inequality(), z);
        // Scaling never flips the inequality sense.
        let h = LinearForm::new(vec![int(-4)], int(2));
        assert_eq!(
            h.normalized_for_inequality(),
            LinearForm::new(vec![int(-2)], int(1))
        );
    }

    #[test]
    fn text_rendering() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let f = LinearForm::new(vec![int(2), rat(-1, 3)], int(4));
        assert_eq!(f.to_text(&vars), "2*x - 1/3*y + 4");
        assert_eq!(LinearForm::zero(2).to_text(&vars), "0");
        let g = LinearForm::new(vec![int(-1), int(0)], int(0));
        assert_eq!(g.to_text(&vars), "-x");
    }
}
