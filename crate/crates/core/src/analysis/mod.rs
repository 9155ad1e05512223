//! The isomorphism decision.
//!
//! A square tropical rational map is an isomorphism iff all piece Jacobians
//! share one nonzero sign and the fiber of one certified regular value is a
//! singleton. The pipeline screens signs first (zero or mixed signs settle
//! the question negatively), then certifies a regular value and counts its
//! fiber; a singleton attaches the piecewise inverse, a larger fiber is a
//! non-injectivity witness. The generalized-Jacobian test is a separate
//! diagnostic: its success certifies, its failure proves nothing (the
//! composition example below has a singular hull at the origin yet is an
//! isomorphism).

mod clarke;
mod invert;
pub mod poly;
mod regular;

pub use clarke::{clarke_at, segment_det_poly, ClarkeSet, ClarkeVerdict, SingularWitness};
pub use invert::{apply_piecewise, invert};
pub use regular::{
    degree, find_regular_value, preimage, Fiber, FiberPoint, RegularValueCertificate,
};

use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::pieces::{enumerate_pieces, Decomposition, LinearPiece};
use crate::rat::Rat;
use crate::syntax::TropicalMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphism,
    NotIsomorphism,
    Unknown,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Isomorphism => "Isomorphism",
            Verdict::NotIsomorphism => "NotIsomorphism",
            Verdict::Unknown => "Unknown",
        }
    }
}

/// Exact sign census of the piece Jacobians.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSummary {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
    /// A piece with vanishing Jacobian, if any.
    pub first_zero: Option<usize>,
    /// A pair of pieces with strictly opposite Jacobian signs, if any.
    pub mixed_pair: Option<(usize, usize)>,
}

impl SignSummary {
    pub fn is_uniform_nonzero(&self) -> bool {
        self.zero == 0 && (self.pos == 0 || self.neg == 0)
    }
}

pub fn jacobian_signs(d: &Decomposition) -> Result<SignSummary, Error> {
    let mut summary = SignSummary {
        pos: 0,
        neg: 0,
        zero: 0,
        first_zero: None,
        mixed_pair: None,
    };
    let mut first_pos = None;
    let mut first_neg = None;
    for piece in d.pieces() {
        let jac = piece.jac.as_ref().ok_or(Error::NonSquareMap {
            coords: d.map().coords().len(),
            vars: d.map().dim(),
        })?;
        if jac.is_zero() {
            summary.zero += 1;
            summary.first_zero.get_or_insert(piece.id);
        } else if jac.is_positive() {
            summary.pos += 1;
            first_pos.get_or_insert(piece.id);
        } else {
            summary.neg += 1;
            first_neg.get_or_insert(piece.id);
        }
    }
    if let (Some(p), Some(n)) = (first_pos, first_neg) {
        summary.mixed_pair = Some((p, n));
    }
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    SingletonPreimage,
    ZeroJacobian { piece: usize },
    MixedSigns { pieces: (usize, usize) },
    MultiplePreimages { count: usize },
    RegularValueSearchFailed { detail: String },
}

impl Reason {
    pub fn describe(&self) -> String {
        match self {
            Reason::SingletonPreimage => "SingletonPreimage".into(),
            Reason::ZeroJacobian { piece } => format!("ZeroJacobian: piece {piece}"),
            Reason::MixedSigns { pieces: (a, b) } => {
                format!("MixedSigns: pieces {a} and {b}")
            }
            Reason::MultiplePreimages { count } => {
                format!("MultiplePreimages: {count} points")
            }
            Reason::RegularValueSearchFailed { detail } => {
                format!("RegularValueSearchFailed: {detail}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    pub reason: Reason,
    pub signs: SignSummary,
    /// Signed fiber count; absent when the sign screen already decided.
    pub degree: Option<i64>,
    pub certificate: Option<RegularValueCertificate>,
    /// Fiber points of the certified regular value (all of them, also for
    /// the singleton case), in canonical order.
    pub witnesses: Vec<Vec<Rat>>,
    pub inverse: Option<Vec<LinearPiece>>,
    /// The planar concave-map shortcut's verdict, when eligible; must agree
    /// with the main pipeline.
    pub fast_path: Option<Verdict>,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub seed: u64,
    pub retries: u32,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            retries: 32,
        }
    }
}

/// For planar maps with concave coordinates, a uniform nonzero Jacobian
/// sign alone certifies the isomorphism — no fiber counting needed. Used as
/// a cross-check oracle next to the main pipeline, never as the sole
/// verdict. Returns `None` when ineligible or when the signs do not decide.
pub fn plane_fast_path(map: &TropicalMap) -> Option<Verdict> {
    if !(map.dim() == 2 && map.coords().len() == 2 && map.is_polynomial_map()) {
        return None;
    }
    let d = enumerate_pieces(map);
    plane_fast_path_decomposed(&d)
}

fn plane_fast_path_decomposed(d: &Decomposition) -> Option<Verdict> {
    let map = d.map();
    if !(map.dim() == 2 && map.coords().len() == 2 && map.is_polynomial_map()) {
        return None;
    }
    let signs = jacobian_signs(d).ok()?;
    if signs.is_uniform_nonzero() {
        Some(Verdict::Isomorphism)
    } else {
        None
    }
}

/// The full decision pipeline: enumerate pieces, screen Jacobian signs,
/// certify a regular value, count its fiber.
pub fn decide_isomorphism(
    map: &TropicalMap,
    opts: &AnalyzeOptions,
) -> Result<AnalysisReport, Error> {
    if !map.is_square() {
        return Err(Error::NonSquareMap {
            coords: map.coords().len(),
            vars: map.dim(),
        });
    }
    let d = enumerate_pieces(map);
    let signs = jacobian_signs(&d)?;
    let fast_path = plane_fast_path_decomposed(&d);

    if let Some(piece) = signs.first_zero {
        return Ok(AnalysisReport {
            verdict: Verdict::NotIsomorphism,
            reason: Reason::ZeroJacobian { piece },
            signs,
            degree: None,
            certificate: None,
            witnesses: Vec::new(),
            inverse: None,
            fast_path,
        });
    }
    if let Some(pieces) = signs.mixed_pair {
        return Ok(AnalysisReport {
            verdict: Verdict::NotIsomorphism,
            reason: Reason::MixedSigns { pieces },
            signs,
            degree: None,
            certificate: None,
            witnesses: Vec::new(),
            inverse: None,
            fast_path,
        });
    }

    let cert = match find_regular_value(&d, opts.seed, opts.retries) {
        Ok(cert) => cert,
        Err(err) => {
            return Ok(AnalysisReport {
                verdict: Verdict::Unknown,
                reason: Reason::RegularValueSearchFailed {
                    detail: err.to_string(),
                },
                signs,
                degree: None,
                certificate: None,
                witnesses: Vec::new(),
                inverse: None,
                fast_path,
            })
        }
    };
    let fiber = preimage(&d, &cert.value)?;
    let deg = degree(&d, &cert)?;
    let witnesses: Vec<Vec<Rat>> = fiber.points.iter().map(|p| p.point.clone()).collect();
    let report = if fiber.points.len() == 1 {
        AnalysisReport {
            verdict: Verdict::Isomorphism,
            reason: Reason::SingletonPreimage,
            signs,
            degree: Some(deg),
            certificate: Some(cert),
            witnesses,
            inverse: Some(invert(&d)?),
            fast_path,
        }
    } else {
        AnalysisReport {
            verdict: Verdict::NotIsomorphism,
            reason: Reason::MultiplePreimages {
                count: fiber.points.len(),
            },
            signs,
            degree: Some(deg),
            certificate: Some(cert),
            witnesses,
            inverse: None,
            fast_path,
        }
    };
    if report.verdict == Verdict::Isomorphism {
        debug_assert!(report.signs.is_uniform_nonzero());
        debug_assert!(matches!(report.degree, Some(1) | Some(-1)));
    }
    debug_assert!(
        report.fast_path != Some(Verdict::Isomorphism)
            || report.verdict == Verdict::Isomorphism,
        "fast path and pipeline must agree"
    );
    Ok(report)
}
