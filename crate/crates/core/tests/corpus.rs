//! The fuzz seeds run through the same round-trip checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use plycover::format::{parse_instance, parse_solution, write_instance, write_solution};
use plycover::geom::parse_rational;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.display().to_string(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn instance_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_instance") {
        if let Ok(file) = parse_instance(&text) {
            assert_eq!(parse_instance(&write_instance(&file)).unwrap(), file, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 5);
}

#[test]
fn solution_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_solution") {
        if let Ok(sol) = parse_solution(&text) {
            assert_eq!(parse_solution(&write_solution(&sol)).unwrap(), sol, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn rational_seeds() {
    let mut parsed = 0;
    for (name, text) in seeds("parse_rational") {
        if let Ok(r) = parse_rational(&text) {
            assert_eq!(parse_rational(&r.to_string()).unwrap(), r, "{name}");
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}
