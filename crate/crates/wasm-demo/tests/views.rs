use monolab_wasm::{bound_view, capture_view, grid_view};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn base_grid_has_no_violations() {
    let v = parse(grid_view(4, "1/4", 0, 0));
    assert_eq!(v["distance"], "0/1");
    assert!(v["violations"].as_array().unwrap().is_empty());
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 4);
    // increasing along both axes
    let at = |x: usize, y: usize| values[y][x].as_i64().unwrap();
    for a in 0..4 {
        for b in 0..3 {
            assert!(at(b, a) < at(b + 1, a));
            assert!(at(a, b) < at(a, b + 1));
        }
    }
}

#[test]
fn perturbed_grid_is_far() {
    let v = parse(grid_view(16, "1/8", 2, 3));
    assert_eq!(v["distance"], "1/8");
    assert_eq!(v["cover"].as_array().unwrap().len(), 32);
    assert_eq!(v["blockCount"], 4);
    assert!(grid_view(64, "1/8", 0, 0).is_err());
    assert!(grid_view(16, "1/8", 7, 1).is_err());
    assert!(grid_view(16, "0.3", 0, 0).is_err());
}

#[test]
fn capture_and_bound() {
    let v = parse(capture_view(4, "1/4", "0000\n1000\n0100\n"));
    assert_eq!(v["report"]["queryCount"], 3);
    assert!(
        v["indistinguishableExact"].as_array().unwrap().len() as u64
            >= v["report"]["indistinguishableCount"].as_u64().unwrap()
    );
    assert!(capture_view(4, "1/4", "010\n").is_err());

    let b = parse(bound_view(1024, 10, "1/8"));
    assert_eq!(
        (b["displayBound"].as_str(), b["threshold"].as_str()),
        (Some("97/1"), Some("98/1"))
    );
}
