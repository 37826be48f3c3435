//! Every shipped lattice fixture loads, is integral, and has the trace form
//! its `expected_trace_form` field claims (rank, signature, parity,
//! determinant and elementary divisors).

use std::path::{Path, PathBuf};
use ulat_core::hermlat::{load_lattice, trace_form_matches};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/lattices")
}

#[test]
fn fixtures_load_and_match_declared_trace_forms() {
    let mut seen = 0;
    for entry in std::fs::read_dir(fixture_dir()).expect("fixtures/lattices") {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let l = load_lattice(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        assert!(l.is_integral(), "{} not integral", path.display());
        let name = l.name().expect("fixture has a name").to_string();
        assert!(
            trace_form_matches(&l, &name).unwrap_or_else(|e| panic!("{}: {}", name, e)),
            "{}: trace form does not match {:?}",
            path.display(),
            name
        );
        seen += 1;
    }
    assert!(seen >= 11, "expected at least 11 lattice fixtures, saw {}", seen);
}

#[test]
fn signature_and_evenness() {
    for file in [
        "gaussian_2u_2a1.json",
        "eisenstein_2u_a2_2.json",
        "sqrtm2_u_u2_d4.json",
        "eisenstein_2u3_a2.json",
    ] {
        let l = load_lattice(&fixture_dir().join(file)).unwrap();
        let tf = l.trace_form();
        assert_eq!(tf.signature.1, 2, "{}", file);
        assert_eq!(tf.signature.0, 2 * l.rank() - 2, "{}", file);
        assert!(l.is_even(), "{}", file);
    }
}
