use std::fs;

use gcf_core::bignum::{eval_exp, BigFloat};
use gcf_core::scanner::{candidates, match_constant, resume_path, scan, scan_resume, summary_path, ScanConfig};
use serde_json::Value;

fn cfg(d: u32, b: i64) -> ScanConfig {
    ScanConfig {
        max_degree: d,
        coeff_bound: b,
        precision: 30,
        ..ScanConfig::default()
    }
}

fn body(path: &std::path::Path) -> Vec<Value> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn degree_one_bound_one_count() {
    // a ∈ {1, n, n + 1}, b any of the 8 nonzero linear polynomials.
    let mut brute = 0;
    for a0 in -1..=1i64 {
        for a1 in -1..=1i64 {
            if !(1..=5).all(|n| a0 + a1 * n > 0) {
                continue;
            }
            for b0 in -1..=1i64 {
                for b1 in -1..=1i64 {
                    brute += ((b0, b1) != (0, 0)) as usize;
                }
            }
        }
    }
    assert_eq!(brute, 24);
    assert_eq!(candidates(&cfg(1, 1)).count(), brute);
}

#[test]
fn e_ratio_is_matched() {
    let e = eval_exp(&gcf_core::bignum::rational::int(1), 50);
    let x = &e / &(&e - &BigFloat::from_i64(2, 50));
    let m = match_constant(&x, 45, &ScanConfig::default());
    assert_eq!(m.constant[0].constant_name, "e");
    assert_eq!(m.constant[0].coefficients, [0, 1, -2, 1]);
}

#[test]
fn scan_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (x, y) = (dir.path().join("x.jsonl"), dir.path().join("y.jsonl"));
    let sx = scan(&cfg(1, 3), &x).unwrap();
    let sy = scan(&cfg(1, 3), &y).unwrap();
    assert_eq!(body(&x), body(&y));
    assert_eq!(sx, sy);
}

#[test]
fn resume_reproduces_full_scan() {
    let c = cfg(2, 2);
    let ordered: Vec<(Value, Value)> = candidates(&c)
        .map(|k| (serde_json::json!(k.a), serde_json::json!(k.b)))
        .collect();
    assert!(ordered.len() > 4096);
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.jsonl");
    let full_summary = scan(&c, &full).unwrap();

    // Rebuild the state left by an interruption after the first checkpoint.
    let text = fs::read_to_string(&full).unwrap();
    let mut lines = text.lines();
    let mut kept = format!("{}\n", lines.next().unwrap());
    for l in lines {
        let v: Value = serde_json::from_str(l).unwrap();
        let idx = ordered.iter().position(|(a, b)| *a == v["a"] && *b == v["b"]).unwrap();
        if idx <= 4095 {
            kept.push_str(l);
            kept.push('\n');
        }
    }
    let part = dir.path().join("part.jsonl");
    fs::write(&part, format!("{kept}{{\"a\":[1],\"b\"")).unwrap();
    fs::write(resume_path(&part), "4095\n").unwrap();
    let summary = serde_json::json!({
        "candidates": 4096, "converged": 0, "matched": 0, "records": 0, "rational": 0, "spurious": 0,
        "last_completed": 4095, "bytes_written": kept.len(), "complete": false,
    });
    fs::write(summary_path(&part), summary.to_string()).unwrap();

    let s = scan_resume(&c, &part).unwrap();
    assert!(s.complete);
    assert_eq!(s.candidates, full_summary.candidates);
    assert_eq!(body(&part), body(&full));
    assert!(!resume_path(&part).exists());
}

#[test]
fn resume_without_marker_fails() {
    let dir = tempfile::tempdir().unwrap();
    assert!(scan_resume(&cfg(1, 1), &dir.path().join("none.jsonl")).is_err());
}
