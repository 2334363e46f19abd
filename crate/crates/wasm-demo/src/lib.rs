//! Browser bindings for the demo page in `www/`.
//!
//! Each operation has a plain Rust form returning JSON (tested natively) and
//! a `#[wasm_bindgen]` wrapper that turns errors into JS exceptions.

use monolab::capture::{analyze, indistinguishable_exact, query_lower_bound, QuerySet};
use monolab::distance::{distance_to_monotone, label, violations, FunctionTable};
use monolab::family::{block_index, lift_to_hypergrid, HardFunction};
use monolab::rational::format_rational;
use monolab::{BitPoint, DomainParams, Epsilon, FamilyParams};
use serde::Serialize;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest grid side the page offers.
pub const MAX_SIDE: u64 = 32;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn epsilon(s: &str) -> Result<Epsilon, String> {
    s.parse().map_err(err)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GridView {
    n: u64,
    label: String,
    m: u32,
    m_prime: u32,
    block_count: u64,
    /// `values[y][x]` is the value at grid point `(x + 1, y + 1)`.
    values: Vec<Vec<i64>>,
    /// Block index of each point's image in the cube.
    blocks: Vec<Vec<u64>>,
    violations: Vec<[[u64; 2]; 2]>,
    distance: String,
    cover: Vec<[u64; 2]>,
}

/// A hard function lifted onto the square grid `[n]^2`: its values, blocks,
/// violated pairs and a minimum repair set. `j = 0` selects the base function.
pub fn grid_view(n: u64, eps: &str, j: u32, k: u64) -> Result<String, String> {
    if n > MAX_SIDE {
        return Err(format!("side {n} is above the demo limit {MAX_SIDE}"));
    }
    let grid = DomainParams::new(n, 2).map_err(err)?;
    let p = FamilyParams::new(grid.m(), epsilon(eps)?).map_err(err)?;
    let h = if j == 0 {
        HardFunction::base(p)
    } else {
        HardFunction::perturbed(p, j, k).map_err(err)?
    };
    let lifted = lift_to_hypergrid(&h, &grid).map_err(err)?;
    let table = FunctionTable::from_lifted(&lifted).map_err(err)?;
    let coords = |index: u64| -> [u64; 2] {
        let pt = grid.point_at(index);
        [pt.coords()[0], pt.coords()[1]]
    };
    let cell = |x: u64, y: u64| x - 1 + (y - 1) * n;
    let side = 1..=n;
    let values = side
        .clone()
        .map(|y| side.clone().map(|x| table.value(cell(x, y))).collect())
        .collect();
    let blocks = side
        .clone()
        .map(|y| {
            side.clone()
                .map(|x| {
                    block_index(
                        &BitPoint::new(cell(x, y), p.m()).expect("index fits m bits"),
                        &p,
                    )
                })
                .collect()
        })
        .collect();
    let graph = violations(&table).map_err(err)?;
    let cert = distance_to_monotone(&table).map_err(err)?;
    let view = GridView {
        n,
        label: h.to_string(),
        m: p.m(),
        m_prime: p.m_prime(),
        block_count: p.block_count(),
        values,
        blocks,
        violations: graph
            .edges()
            .iter()
            .map(|&(a, b)| [coords(a), coords(b)])
            .collect(),
        distance: format_rational(&cert.distance),
        cover: cert.cover.iter().map(|&c| coords(c)).collect(),
    };
    serde_json::to_string(&view).map_err(err)
}

/// Capture analysis of a set of cube points, one bitstring per line.
pub fn capture_view(m: u32, eps: &str, points: &str) -> Result<String, String> {
    let p = FamilyParams::new(m, epsilon(eps)?).map_err(err)?;
    let x = QuerySet::parse(points, m).map_err(err)?;
    let report = analyze(&x, &p).map_err(err)?;
    let exact: Vec<_> = indistinguishable_exact(&x, &p)
        .map_err(err)?
        .into_iter()
        .map(|(j, k)| json!({ "j": j, "k": k }))
        .collect();
    let labels: Vec<String> = x
        .points()
        .iter()
        .map(|pt| label(&DomainParams::hypercube(m).expect("valid m"), pt.word()))
        .collect();
    serde_json::to_string(
        &json!({ "points": labels, "report": report, "indistinguishableExact": exact }),
    )
    .map_err(err)
}

/// Both forms of the query lower bound for `[n]^d`.
pub fn bound_view(n: u64, d: u32, eps: &str) -> Result<String, String> {
    let b = query_lower_bound(n, d, epsilon(eps)?).map_err(err)?;
    serde_json::to_string(&b).map_err(err)
}

#[wasm_bindgen(js_name = gridView)]
pub fn grid_view_js(n: u32, eps: &str, j: u32, k: u32) -> Result<String, JsError> {
    grid_view(u64::from(n), eps, j, u64::from(k)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = captureView)]
pub fn capture_view_js(m: u32, eps: &str, points: &str) -> Result<String, JsError> {
    capture_view(m, eps, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = boundView)]
pub fn bound_view_js(n: u32, d: u32, eps: &str) -> Result<String, JsError> {
    bound_view(u64::from(n), d, eps).map_err(|e| JsError::new(&e))
}
