//! Univariate polynomials over exact rationals: Sturm-sequence root
//! counting and root isolation, plus Lagrange interpolation. Used to decide
//! whether a segment of matrices contains a singular combination.

use num_traits::{One, Signed, Zero};

use crate::rat::Rat;

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyQ {
    coeffs: Vec<Rat>,
}

impl PolyQ {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> PolyQ {
        if self.coeffs.len() <= 1 {
            return PolyQ::zero();
        }
        PolyQ::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &PolyQ) -> PolyQ {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        PolyQ::new(out)
    }

    pub fn mul(&self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PolyQ::new(out)
    }

    pub fn scaled(&self, k: &Rat) -> PolyQ {
        PolyQ::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Remainder of `self / divisor`.
    pub fn rem(&self, divisor: &PolyQ) -> PolyQ {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len();
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        while rem.len() >= d {
            let factor = rem.last().expect("nonempty") / lead;
            let shift = rem.len() - d;
            if !factor.is_zero() {
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    let delta = &factor * c;
                    rem[shift + i] -= delta;
                }
            }
            rem.pop();
        }
        PolyQ::new(rem)
    }

    /// Monic gcd by the Euclid remainder chain.
    pub fn gcd(&self, rhs: &PolyQ) -> PolyQ {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.coeffs.last() {
            Some(lead) if !lead.is_one() => {
                let inv = lead.clone().recip();
                a.scaled(&inv)
            }
            _ => a,
        }
    }

    /// `self` with repeated roots collapsed to simple ones.
    pub fn squarefree_part(&self) -> PolyQ {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_exact(&g)
    }

    /// Exact quotient; panics when the division leaves a remainder.
    fn div_exact(&self, divisor: &PolyQ) -> PolyQ {
        assert!(!divisor.is_zero());
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len();
        let lead = divisor.coeffs.last().expect("nonzero divisor");
        let mut quot = vec![Rat::zero(); rem.len().saturating_sub(d) + 1];
        while rem.len() >= d {
            let factor = rem.last().expect("nonempty") / lead;
            let shift = rem.len() - d;
            quot[shift] = factor.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let delta = &factor * c;
                rem[shift + i] -= delta;
            }
            rem.pop();
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        PolyQ::new(quot)
    }
}

/// The canonical Sturm chain `p, p', −rem(…), …`.
pub fn sturm_chain(p: &PolyQ) -> Vec<PolyQ> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let len = chain.len();
        let last = &chain[len - 1];
        if last.is_zero() {
            chain.pop();
            return chain;
        }
        let prev = &chain[len - 2];
        let r = prev.rem(last);
        if r.is_zero() {
            return chain;
        }
        chain.push(r.scaled(&-Rat::one()));
    }
}

fn sign_variations(chain: &[PolyQ], t: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None; // sign as is_positive
    for p in chain {
        let v = p.eval(t);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Number of distinct real roots in the open interval `(a, b)`.
/// Requires `p(a) ≠ 0` and `p(b) ≠ 0`.
pub fn count_roots_open(p: &PolyQ, a: &Rat, b: &Rat) -> usize {
    debug_assert!(!p.eval(a).is_zero() && !p.eval(b).is_zero());
    let chain = sturm_chain(p);
    sign_variations(&chain, a) - sign_variations(&chain, b)
}

/// A root located exactly, or an isolating open interval around it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootWitness {
    Rational(Rat),
    Interval(Rat, Rat),
}

/// Locates one root of `p` in `(a, b)`; requires at least one to exist and
/// `p(a), p(b) ≠ 0`. Rational roots of degree ≤ 2 factors are recovered
/// exactly; otherwise bisection returns an isolating interval (midpoints
/// are still tested exactly, so dyadic roots are found).
pub fn find_root_in(p: &PolyQ, a: &Rat, b: &Rat) -> RootWitness {
    let q = p.squarefree_part();
    debug_assert!(count_roots_open(&q, a, b) >= 1, "no root to isolate");

    if q.degree() == Some(1) {
        let root = -&q.coeffs()[0] / &q.coeffs()[1];
        debug_assert!(root > *a && root < *b);
        return RootWitness::Rational(root);
    }
    if q.degree() == Some(2) {
        if let Some(roots) = rational_quadratic_roots(&q) {
            for r in roots {
                if r > *a && r < *b {
                    return RootWitness::Rational(r);
                }
            }
            unreachable!("a quadratic with rational roots and a root in the interval");
        }
    }

    let chain = sturm_chain(&q);
    let mut lo = a.clone();
    let mut hi = b.clone();
    let two = Rat::from_integer(2.into());
    for _ in 0..48 {
        let mid = (&lo + &hi) / &two;
        let v = q.eval(&mid);
        if v.is_zero() {
            return RootWitness::Rational(mid);
        }
        let left = sign_variations(&chain, &lo) - sign_variations(&chain, &mid);
        if left >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootWitness::Interval(lo, hi)
}

/// The roots of a rational quadratic when they are rational; `None` when
/// they are irrational, `Some(vec![])` when they are complex.
fn rational_quadratic_roots(q: &PolyQ) -> Option<Vec<Rat>> {
    let c = &q.coeffs()[0];
    let b = &q.coeffs()[1];
    let a = &q.coeffs()[2];
    let disc = b * b - Rat::from_integer(4.into()) * a * c;
    if disc.is_negative() {
        return Some(Vec::new());
    }
    let sqrt_num = disc.numer().sqrt();
    let sqrt_den = disc.denom().sqrt();
    if &(&sqrt_num * &sqrt_num) != disc.numer() || &(&sqrt_den * &sqrt_den) != disc.denom() {
        return None;
    }
    let root = Rat::new(sqrt_num, sqrt_den);
    let two_a = Rat::from_integer(2.into()) * a;
    let r1 = (-b + &root) / &two_a;
    let r2 = (-b - &root) / &two_a;
    let mut out = vec![r1, r2];
    out.sort();
    out.dedup();
    Some(out)
}

/// The unique polynomial of degree `< nodes.len()` through the given
/// `(x, y)` pairs.
pub fn lagrange_interpolate(nodes: &[(Rat, Rat)]) -> PolyQ {
    let mut acc = PolyQ::zero();
    for (i, (xi, yi)) in nodes.iter().enumerate() {
        let mut basis = PolyQ::constant(Rat::one());
        let mut denom = Rat::one();
        for (j, (xj, _)) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&PolyQ::new(vec![-xj.clone(), Rat::one()]));
            denom *= xi - xj;
        }
        acc = acc.add(&basis.scaled(&(yi / &denom)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn poly(cs: &[i64]) -> PolyQ {
        PolyQ::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn sturm_counts_roots_of_a_shifted_square() {
        // (2t − 1)² has one distinct root, 1/2, inside (0, 1).
        let p = poly(&[1, -4, 4]);
        assert_eq!(count_roots_open(&p, &int(0), &int(1)), 1);
        assert_eq!(find_root_in(&p, &int(0), &int(1)), RootWitness::Rational(rat(1, 2)));
    }

    #[test]
    fn sturm_counts_both_roots_of_t2_minus_2() {
        let p = poly(&[-2, 0, 1]);
        assert_eq!(count_roots_open(&p, &int(-2), &int(2)), 2);
        assert_eq!(count_roots_open(&p, &int(0), &int(2)), 1);
        assert_eq!(count_roots_open(&p, &int(2), &int(3)), 0);
        match find_root_in(&p, &int(0), &int(2)) {
            RootWitness::Interval(lo, hi) => {
                assert!(p.eval(&lo).is_negative() && p.eval(&hi).is_positive());
                assert!(&hi - &lo <= rat(1, 1 << 40));
            }
            RootWitness::Rational(r) => panic!("√2 reported as rational {r}"),
        }
    }

    #[test]
    fn rational_roots_of_cubics_are_found_when_dyadic() {
        // t³ − t² has roots 0 and 1; inside (1/2, 3/2) only the simple root 1.
        let p = poly(&[0, 0, -1, 1]);
        assert_eq!(count_roots_open(&p, &rat(1, 2), &rat(3, 2)), 1);
        assert_eq!(
            find_root_in(&p, &rat(1, 2), &rat(3, 2)),
            RootWitness::Rational(int(1))
        );
    }

    #[test]
    fn interpolation_reconstructs_polynomials() {
        let p = poly(&[3, -2, 5]);
        let nodes: Vec<(Rat, Rat)> = (0..3).map(|k| (int(k), p.eval(&int(k)))).collect();
        assert_eq!(lagrange_interpolate(&nodes), p);
    }

    #[test]
    fn remainder_and_gcd_are_exact() {
        let p = poly(&[-1, 0, 1]); // (t−1)(t+1)
        let q = poly(&[-1, 1]); // t − 1
        assert!(p.rem(&q).is_zero());
        assert_eq!(p.gcd(&q), q);
        let sq = p.mul(&p);
        assert_eq!(sq.squarefree_part().degree(), Some(2));
    }
}
