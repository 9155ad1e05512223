//! Acceptance suite: one test per criterion, each printing a PASS line
//! after all of its assertions (run with `--nocapture` to see them).
//! Everything asserted here is exact; runtime bounds are asserted where
//! stated.

mod common;

use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use rand::Rng;

use common::*;
use tropcheck_core::analysis::{
    apply_piecewise, clarke_at, decide_isomorphism, degree, find_regular_value, preimage,
    AnalyzeOptions, ClarkeVerdict, SingularWitness, Verdict,
};
use tropcheck_core::exactgeom::lp::{interior_point, relative_interior_point};
use tropcheck_core::exactgeom::matrix::MatrixQ;
use tropcheck_core::pieces::{enumerate_pieces, pieces_at};
use tropcheck_core::rat::{int, rat, Rat};

fn pass(criterion: usize, what: &str, elapsed: Duration) {
    println!("acceptance criterion {criterion}: PASS — {what} ({elapsed:.2?})");
}

#[test]
fn criterion_1_composition_example_pieces_clarke_and_verdict() {
    let t0 = Instant::now();
    let map = load_fixture("example1.trop");
    let d = enumerate_pieces(&map);

    assert_eq!(d.len(), 4, "expected exactly 4 pieces");
    let mut mats: Vec<MatrixQ> = d.pieces().iter().map(|p| p.matrix.clone()).collect();
    mats.sort();
    let mut expected = vec![
        MatrixQ::identity(2),
        MatrixQ::from_i64(&[&[1, 2], &[0, 1]]),
        MatrixQ::from_i64(&[&[1, 0], &[2, 1]]),
        MatrixQ::from_i64(&[&[5, 2], &[2, 1]]),
    ];
    expected.sort();
    assert_eq!(mats, expected, "differential matrices differ");
    for p in d.pieces() {
        assert_eq!(p.jac, Some(int(1)), "all Jacobians must equal 1");
    }

    let report = decide_isomorphism(&map, &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::Isomorphism);

    let clarke = clarke_at(&d, &[int(0), int(0)]).unwrap();
    let ClarkeVerdict::ContainsSingular(SingularWitness::Exact { weights }) = &clarke.verdict
    else {
        panic!("expected an exact singular witness at the origin");
    };
    let carriers: Vec<usize> = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(i, w)| {
            assert_eq!(w, &rat(1, 2), "witness weights must be 1/2");
            i
        })
        .collect();
    assert_eq!(carriers.len(), 2);
    let mut pair: Vec<MatrixQ> = carriers
        .iter()
        .map(|&i| clarke.matrices[i].clone())
        .collect();
    pair.sort();
    let mut shears = vec![
        MatrixQ::from_i64(&[&[1, 2], &[0, 1]]),
        MatrixQ::from_i64(&[&[1, 0], &[2, 1]]),
    ];
    shears.sort();
    assert_eq!(pair, shears, "the singular mean is of the two shear pieces");
    let combo = pair[0].lin_comb(&rat(1, 2), &pair[1], &rat(1, 2));
    assert_eq!(combo.det().unwrap(), int(0), "combination determinant must vanish");

    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(1), "criterion 1 too slow: {elapsed:?}");
    pass(1, "4 exact pieces, Isomorphism, singular hull witness 1/2+1/2", elapsed);
}

#[test]
fn criterion_2_three_dimensional_example_fails_with_exact_fiber() {
    let t0 = Instant::now();
    let map = load_fixture("example2.trop");
    let d = enumerate_pieces(&map);
    for p in d.pieces() {
        assert_eq!(p.jac, Some(int(2)), "every Jacobian must equal 2");
    }

    let report = decide_isomorphism(&map, &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::NotIsomorphism);
    assert_eq!(report.witnesses.len(), 2, "exactly two fiber witnesses");
    assert!(report.certificate.is_some(), "witnesses are at a certified value");
    let (a, b) = (&report.witnesses[0], &report.witnesses[1]);
    // The witnesses are swapped by (x, y, z) ↦ (−x, −y, z + 4x + 4y).
    assert_eq!(b[0], -&a[0]);
    assert_eq!(b[1], -&a[1]);
    assert_eq!(b[2], &a[2] + int(4) * (&a[0] + &a[1]));
    assert_eq!(report.degree, Some(2));

    let fiber = preimage(&d, &[int(1), int(3), int(1)]).unwrap();
    let points: Vec<Vec<Rat>> = fiber.points.iter().map(|p| p.point.clone()).collect();
    assert_eq!(
        points,
        vec![vec![int(-1), int(-1), int(8)], vec![int(1), int(1), int(0)]],
        "the fiber over (1,3,1) is exactly the expected pair"
    );

    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(5), "criterion 2 too slow: {elapsed:?}");
    pass(2, "all Jacobians 2, NotIsomorphism with involution pair, degree 2", elapsed);
}

#[test]
fn criterion_3_planar_absolute_value_map() {
    let t0 = Instant::now();
    let map = load_fixture("g2d.trop");
    let d = enumerate_pieces(&map);
    for p in d.pieces() {
        assert_eq!(p.jac, Some(int(2)), "every Jacobian must equal 2");
    }
    let y1 = map.eval(&[int(1), int(2)]).unwrap();
    let y2 = map.eval(&[int(-1), int(-2)]).unwrap();
    assert_eq!(y1, vec![int(-1), int(2)]);
    assert_eq!(y1, y2, "g(1,2) = g(-1,-2)");
    let report = decide_isomorphism(&map, &AnalyzeOptions::default()).unwrap();
    assert_eq!(report.verdict, Verdict::NotIsomorphism);
    pass(3, "Jacobians 2, g(1,2) = g(-1,-2) = (-1,2), NotIsomorphism", t0.elapsed());
}

#[test]
fn criterion_4_planar_concave_consistency_sweep() {
    let t0 = Instant::now();
    let mut rng = rng(401);
    let mut uniform_sign_cases = 0;
    for trial in 0..100 {
        let map = random_concave_map(&mut rng, 2, 4, &format!("sweep{trial}"));
        let d = enumerate_pieces(&map);
        let signs = tropcheck_core::jacobian_signs(&d).unwrap();
        if !signs.is_uniform_nonzero() {
            continue;
        }
        uniform_sign_cases += 1;
        let report = decide_isomorphism(&map, &AnalyzeOptions::default()).unwrap();
        assert_eq!(
            report.verdict,
            Verdict::Isomorphism,
            "map {trial} has uniform nonzero signs but failed the pipeline"
        );
        assert_eq!(
            report.witnesses.len(),
            1,
            "map {trial}: fiber of the regular value must be a singleton"
        );
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "criterion 4 too slow: {elapsed:?}");
    assert!(uniform_sign_cases >= 10, "sweep too degenerate: {uniform_sign_cases}");
    pass(
        4,
        &format!("100 planar concave maps, {uniform_sign_cases} uniform-sign cases, 0 disagreements"),
        elapsed,
    );
}

#[test]
fn criterion_5_difference_quotients_match_differentials() {
    let t0 = Instant::now();
    let mut rng = rng(501);
    let mut checked = 0;
    for trial in 0..300 {
        if checked >= 100 {
            break;
        }
        let map = random_rational_map(&mut rng, 2, &format!("grad{trial}"));
        let d = enumerate_pieces(&map);
        let mut smooth = None;
        for _ in 0..25 {
            let x = random_point(&mut rng, 2, 20);
            if pieces_at(&d, &x).unwrap().len() == 1 {
                smooth = Some(x);
                break;
            }
        }
        let Some(x) = smooth else { continue };
        let piece = pieces_at(&d, &x).unwrap()[0];
        let fx = map.eval(&x).unwrap();
        for j in 0..2 {
            // Shrink the step until it stays in the same cell, verified by
            // exact membership.
            let mut h = int(1);
            let mut stepped = None;
            for _ in 0..64 {
                let mut xs = x.clone();
                xs[j] = &xs[j] + &h;
                if piece.cell.membership(&xs).unwrap() {
                    stepped = Some(xs);
                    break;
                }
                h = h / int(2);
            }
            let xs = stepped.expect("interior points admit in-cell steps");
            let fxs = map.eval(&xs).unwrap();
            for r in 0..2 {
                assert_eq!(
                    &(&fxs[r] - &fx[r]) / &h,
                    piece.matrix.get(r, j).clone(),
                    "difference quotient must equal the matrix entry exactly"
                );
            }
        }
        checked += 1;
    }
    assert!(checked >= 100, "only {checked} smooth points tested");
    pass(5, "100 maps × smooth points: exact quotients = differentials", t0.elapsed());
}

#[test]
fn criterion_6_inverse_round_trip_on_isomorphisms() {
    let t0 = Instant::now();
    let mut rng = rng(601);
    let mut maps = all_fixture_maps();
    for i in 0..15 {
        maps.push(random_concave_map(&mut rng, 2, 3, &format!("inv{i}")));
    }
    let mut isomorphisms = 0;
    for map in &maps {
        let report = decide_isomorphism(map, &AnalyzeOptions::default()).unwrap();
        if report.verdict != Verdict::Isomorphism {
            continue;
        }
        isomorphisms += 1;
        let d = enumerate_pieces(map);
        let inverse = report.inverse.expect("isomorphisms carry inverses");
        for (fwd, inv) in d.pieces().iter().zip(&inverse) {
            let product = fwd.jac.clone().unwrap() * inv.jac.clone().unwrap();
            assert!(product.is_one(), "inverse Jacobian must be the reciprocal");
        }
        for _ in 0..100 {
            let x = random_point(&mut rng, d.dim(), 25);
            let y = map.eval(&x).unwrap();
            let back = apply_piecewise(&inverse, &y).expect("image cells tile the space");
            assert_eq!(back, x, "{}: f⁻¹(f(x)) ≠ x", map.name());
        }
    }
    assert!(isomorphisms >= 3, "only {isomorphisms} isomorphisms in the sample");
    pass(
        6,
        &format!("{isomorphisms} isomorphisms round-trip at 100 points each"),
        t0.elapsed(),
    );
}

#[test]
fn criterion_7_degree_is_invariant_across_seeds() {
    let t0 = Instant::now();
    for map in all_fixture_maps() {
        let d = enumerate_pieces(&map);
        let mut degrees = Vec::new();
        let mut values = Vec::new();
        for seed in [1, 101, 10007, 424243, 98765431] {
            let cert = find_regular_value(&d, seed, 64).unwrap();
            values.push(cert.value.clone());
            degrees.push(degree(&d, &cert).unwrap());
        }
        assert!(
            degrees.windows(2).all(|w| w[0] == w[1]),
            "{}: degree varies across certified values: {degrees:?}",
            map.name()
        );
        values.dedup();
        assert!(
            values.len() > 1,
            "{}: seeds produced a single candidate value",
            map.name()
        );
    }
    pass(7, "5 independently certified regular values per fixture, equal degrees", t0.elapsed());
}

#[test]
fn criterion_8_decomposition_soundness_suite() {
    let t0 = Instant::now();
    let mut rng = rng(801);
    let maps = all_fixture_maps();
    let decomps: Vec<_> = maps.iter().map(enumerate_pieces).collect();

    // Cover: random points all lie in some cell, where the piece formula
    // reproduces the expression value exactly.
    let mut covered = 0;
    for d in &decomps {
        for _ in 0..(1000 / decomps.len() + 1) {
            let x = random_point(&mut rng, d.dim(), 30);
            let hits = pieces_at(d, &x).unwrap();
            assert!(!hits.is_empty(), "{}: uncovered point", d.map().name());
            let value = d.map().eval(&x).unwrap();
            for p in hits {
                assert_eq!(p.apply(&x), value, "{}: piece value mismatch", d.map().name());
            }
            covered += 1;
        }
    }
    assert!(covered >= 1000);

    for d in &decomps {
        let pieces = d.pieces();
        for i in 0..pieces.len() {
            for j in i + 1..pieces.len() {
                let mut joint = pieces[i].cell.clone();
                for c in pieces[j].cell.constraints() {
                    joint.push(c.clone());
                }
                // Pairwise interior disjointness.
                assert!(
                    interior_point(&joint).is_none(),
                    "{}: open cells {i}, {j} intersect",
                    d.map().name()
                );
                // Boundary agreement on nonempty intersections.
                if let Some(ri) = relative_interior_point(&joint) {
                    assert_eq!(
                        pieces[i].apply(&ri.point),
                        pieces[j].apply(&ri.point),
                        "{}: adjacent pieces disagree",
                        d.map().name()
                    );
                }
            }
        }
    }

    // Fiber bound: no fiber exceeds the piece count.
    for d in &decomps {
        let bound = d.len();
        for _ in 0..100 {
            let y = random_point(&mut rng, d.dim(), 30);
            let fiber = preimage(d, &y).unwrap();
            assert!(fiber.points.len() <= bound, "{}: fiber too large", d.map().name());
        }
    }
    pass(
        8,
        "cover ×1000, interior disjointness, boundary agreement, fiber bound ×100",
        t0.elapsed(),
    );
}
