//! JSON and CSV renderings. Every renderer is deterministic: keys keep
//! insertion order and polynomials list terms in descending order.

use mosaic_tilings::board::{CellGraph, Variant};
use mosaic_tilings::identity::{Bundle, CheckReport, Counterexample};
use mosaic_tilings::recurrence::{CoeffSet, Kind, Provenance};
use mosaic_tilings::{BiPoly, Piece, Tiling};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

/// `[[i, j, "c"], ...]` for `c a^i b^j`; coefficients are strings so large
/// values survive any JSON reader.
pub fn poly(p: &BiPoly) -> Value {
    Value::Array(p.terms().map(|(e, c)| json!([e.a, e.b, c.to_string()])).collect())
}

pub fn int(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn graph(g: &CellGraph) -> Value {
    let spec = g.spec();
    let cells: Vec<Value> = g
        .cells()
        .iter()
        .map(|c| {
            json!({ "id": c.id, "level": c.level.number(), "index": c.index, "column": c.column })
        })
        .collect();
    let edges: Vec<Value> = g.edges().iter().map(|&(u, v)| json!([u, v])).collect();
    let mut cuts = Map::new();
    for (i, cut) in g.cuts().iter().enumerate() {
        cuts.insert((i + 1).to_string(), cut.iter().map(|&(u, v)| json!([u, v])).collect());
    }
    let mut out = Map::new();
    match spec.variant {
        Variant::Path(m) => {
            out.insert("variant".into(), json!("path"));
            out.insert("m".into(), json!(m));
        }
        v => {
            out.insert("q".into(), json!(spec.q));
            out.insert("n".into(), json!(spec.n));
            out.insert("variant".into(), json!(v.name()));
        }
    }
    out.insert("mirrored".into(), json!(g.is_mirrored()));
    out.insert("cells".into(), Value::Array(cells));
    out.insert("edges".into(), Value::Array(edges));
    out.insert("cuts".into(), Value::Object(cuts));
    Value::Object(out)
}

/// `[{"m": id} | {"d": [u, v]}, ...]`.
pub fn tiling(t: &Tiling) -> Value {
    Value::Array(
        t.pieces()
            .iter()
            .map(|p| match *p {
                Piece::Monomer(c) => json!({ "m": c }),
                Piece::Dimer(u, v) => json!({ "d": [u, v] }),
            })
            .collect(),
    )
}

/// Values of a table restricted to `lo..=hi`, either symbolic or evaluated.
pub enum Values<'a> {
    Symbolic(&'a [BiPoly]),
    Evaluated(&'a [BigInt]),
}

pub struct TableHead {
    pub q: u32,
    pub kind: Kind,
    pub provenance: Provenance,
    /// Index of the first value.
    pub start: usize,
}

pub fn table(head: &TableHead, values: Values<'_>, point: Option<(i64, i64)>) -> Value {
    let mut out = Map::new();
    out.insert("q".into(), json!(head.q));
    out.insert("kind".into(), json!(head.kind.name()));
    out.insert("provenance".into(), json!(head.provenance.name()));
    out.insert("n_start".into(), json!(head.start));
    if let Some((a, b)) = point {
        out.insert("point".into(), json!([a, b]));
    }
    let values = match values {
        Values::Symbolic(v) => v.iter().map(poly).collect(),
        Values::Evaluated(v) => v.iter().map(int).collect(),
    };
    out.insert("values".into(), Value::Array(values));
    Value::Object(out)
}

/// One comma-separated line.
pub fn csv_line(values: &[BigInt]) -> String {
    values.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",")
}

pub fn coeffs(c: &CoeffSet) -> Value {
    json!({
        "q": c.q,
        "alpha": poly(&c.alpha),
        "beta": poly(&c.beta),
        "gamma": poly(&c.gamma),
        "delta": poly(&c.delta),
    })
}

pub fn coeffs_evaluated(q: u32, v: &[BigInt; 4], point: (i64, i64)) -> Value {
    json!({
        "q": q,
        "point": [point.0, point.1],
        "alpha": int(&v[0]),
        "beta": int(&v[1]),
        "gamma": int(&v[2]),
        "delta": int(&v[3]),
    })
}

fn counterexample(c: &Counterexample) -> Value {
    let mut out = Map::new();
    out.insert("q".into(), json!(c.site.q));
    for (name, v) in [("n", c.site.n), ("m", c.site.m), ("k", c.site.k)] {
        if let Some(v) = v {
            out.insert(name.into(), json!(v));
        }
    }
    if let Some((a, b)) = c.point {
        out.insert("point".into(), json!([a, b]));
    }
    out.insert("lhs".into(), poly(&c.lhs));
    out.insert("rhs".into(), poly(&c.rhs));
    Value::Object(out)
}

pub fn report(r: &CheckReport) -> Value {
    let mut out = Map::new();
    out.insert("leg".into(), json!(r.leg));
    out.insert("params".into(), json!(r.params));
    out.insert("points".into(), r.points.iter().map(|&(a, b)| json!([a, b])).collect());
    out.insert("status".into(), json!(r.status.name()));
    if let Some(c) = &r.counterexample {
        out.insert("counterexample".into(), counterexample(c));
    }
    out.insert("checked_count".into(), json!(r.checked));
    if let Some(note) = &r.note {
        out.insert("note".into(), json!(note));
    }
    Value::Object(out)
}

pub fn bundle(b: &Bundle) -> Value {
    json!({
        "passed": b.passed(),
        "checked_count": b.checked(),
        "reports": b.reports.iter().map(report).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing a Value cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use mosaic_tilings::board::{build_board, BoardSpec};

    #[test]
    fn poly_layout() {
        let p = BiPoly::from_terms([(4, 0, 1), (2, 1, 4), (0, 2, 2)]);
        assert_eq!(poly(&p).to_string(), r#"[[4,0,"1"],[2,1,"4"],[0,2,"2"]]"#);
        assert_eq!(poly(&BiPoly::zero()).to_string(), "[]");
    }

    #[test]
    fn graph_layout() {
        let g = build_board(BoardSpec::full(4, 2)).unwrap();
        let v = graph(&g);
        assert_eq!(v["variant"], "full");
        assert_eq!(v["cells"].as_array().unwrap().len(), 4);
        assert_eq!(v["cuts"]["1"].as_array().unwrap().len(), 2);
        assert_eq!(v["cells"][2], json!({ "id": 2, "level": 2, "index": 1, "column": 1 }));
    }

    #[test]
    fn tiling_layout() {
        let t = Tiling::new(vec![Piece::Dimer(1, 3), Piece::Monomer(0), Piece::Monomer(2)]);
        assert_eq!(tiling(&t).to_string(), r#"[{"m":0},{"d":[1,3]},{"m":2}]"#);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(csv_line(&[1, 2, 7].map(BigInt::from)), "1,2,7");
        assert_eq!(csv_line(&[]), "");
    }
}
