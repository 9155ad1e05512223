//! Shared fixture loading and random generators for the integration and
//! acceptance suites. Everything is seeded; suites are deterministic.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropcheck_core::linform::LinearForm;
use tropcheck_core::rat::{int, rat, Rat};
use tropcheck_core::syntax::Expr;
use tropcheck_core::{parse_map, NormalForm, TropicalMap};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load_fixture(name: &str) -> TropicalMap {
    let text = std::fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("cannot read fixture {name}: {e}"));
    parse_map(&text).unwrap_or_else(|e| panic!("fixture {name} does not parse: {e}"))
}

/// The slopes-(0, 2) instantiation of the parameterized fixture.
pub fn load_general_fixture_specialized() -> TropicalMap {
    let mut text = std::fs::read_to_string(fixture_path("example1-general.trop")).unwrap();
    for (k, v) in [
        ("A", "0"),
        ("B", "2"),
        ("ALPHA", "0"),
        ("BETA", "2"),
        ("A_ALPHA", "0"),
        ("A_BETA", "0"),
        ("B_ALPHA", "0"),
        ("B_BETA", "4"),
    ] {
        text = text.replace(&format!("${{{k}}}"), v);
    }
    parse_map(&text).unwrap()
}

/// All concrete fixture files plus the specialized parameterized one.
pub fn all_fixture_maps() -> Vec<TropicalMap> {
    let mut maps: Vec<TropicalMap> = [
        "identity.trop",
        "example1.trop",
        "example2.trop",
        "g2d.trop",
        "h3d.trop",
    ]
    .iter()
    .map(|name| load_fixture(name))
    .collect();
    maps.push(load_general_fixture_specialized());
    maps
}

pub fn random_rat(rng: &mut ChaCha8Rng, span: i64) -> Rat {
    let den = rng.gen_range(1..=4);
    let num = rng.gen_range(-span * den..=span * den);
    rat(num, den)
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, span: i64) -> Vec<Rat> {
    (0..dim).map(|_| random_rat(rng, span)).collect()
}

pub fn random_form(rng: &mut ChaCha8Rng, dim: usize) -> LinearForm {
    let coeffs = (0..dim).map(|_| int(rng.gen_range(-3..=3))).collect();
    LinearForm::new(coeffs, int(rng.gen_range(-3..=3)))
}

/// A random well-formed expression tree of bounded depth; leaves are
/// affine forms.
pub fn random_expr(rng: &mut ChaCha8Rng, dim: usize, depth: usize) -> Expr {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        return Expr::Lin(random_form(rng, dim));
    }
    match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(2..=3);
            Expr::min((0..k).map(|_| random_expr(rng, dim, depth - 1)).collect())
        }
        1 => Expr::sum(
            random_expr(rng, dim, depth - 1),
            random_expr(rng, dim, depth - 1),
        ),
        _ => Expr::neg(random_expr(rng, dim, depth - 1)),
    }
}

/// A random map with concave coordinates (plain minima), the class the
/// planar fast path covers.
pub fn random_concave_map(
    rng: &mut ChaCha8Rng,
    dim: usize,
    max_forms: usize,
    name: &str,
) -> TropicalMap {
    let coords: Vec<NormalForm> = (0..dim)
        .map(|_| {
            let k = rng.gen_range(1..=max_forms);
            let forms = (0..k).map(|_| random_form(rng, dim)).collect();
            NormalForm::new(forms, vec![LinearForm::zero(dim)], dim)
        })
        .collect();
    let vars = (0..dim).map(|i| format!("x{i}")).collect();
    TropicalMap::new(name, vars, coords)
}

/// A random rational map: difference of minima on both sides.
pub fn random_rational_map(rng: &mut ChaCha8Rng, dim: usize, name: &str) -> TropicalMap {
    let coords: Vec<NormalForm> = (0..dim)
        .map(|_| {
            let nk = rng.gen_range(1..=3);
            let dk = rng.gen_range(1..=2);
            let numer = (0..nk).map(|_| random_form(rng, dim)).collect();
            let denom = (0..dk).map(|_| random_form(rng, dim)).collect();
            NormalForm::new(numer, denom, dim)
        })
        .collect();
    let vars = (0..dim).map(|i| format!("x{i}")).collect();
    TropicalMap::new(name, vars, coords)
}
