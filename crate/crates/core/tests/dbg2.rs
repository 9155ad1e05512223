mod common;
use common::*;
use tropcheck_core::parse_map;

#[test]
fn dbg_roundtrip() {
    let mut rng = rng(14);
    let mut maps = all_fixture_maps();
    for i in 0..10 {
        maps.push(random_rational_map(&mut rng, 2, &format!("r{i}")));
    }
    for m in &maps {
        let src = m.to_source();
        let reparsed = parse_map(&src).expect("printed source parses");
        if m.coords() != reparsed.coords() {
            eprintln!("MISMATCH for {}:\nsource: {src}", m.name());
            for (k, (a, b)) in m.coords().iter().zip(reparsed.coords()).enumerate() {
                if a != b {
                    eprintln!("coord {k}:\n  orig    numer {:?}\n  reparsed numer {:?}", a.numer().iter().map(|f| f.to_text(m.vars())).collect::<Vec<_>>(), b.numer().iter().map(|f| f.to_text(m.vars())).collect::<Vec<_>>());
                    eprintln!("  orig    denom {:?}\n  reparsed denom {:?}", a.denom().iter().map(|f| f.to_text(m.vars())).collect::<Vec<_>>(), b.denom().iter().map(|f| f.to_text(m.vars())).collect::<Vec<_>>());
                }
            }
            panic!("round trip failed");
        }
    }
}
