use std::fmt::Write;

use arithcx_core::report::Report;
use arithcx_core::{Matrix, Ring};

pub fn report_line(r: &Report) -> String {
    let mut s = format!("[{}] {}", if r.pass { "PASS" } else { "FAIL" }, r.claim);
    if let Some(k) = r.degree {
        let _ = write!(s, " (degree {k})");
    }
    if let Some(w) = &r.witness {
        let _ = write!(s, " at ({}, {}): {} ≠ {}", w.row, w.col, w.lhs, w.rhs);
    }
    s
}

pub fn report_block(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&report_line(r));
        out.push('\n');
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let _ = writeln!(out, "{passed}/{} checks passed", reports.len());
    out
}

pub fn matrix_latex<R: Ring>(m: &Matrix<R>) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return format!("0_{{{} \\times {}}}", m.rows(), m.cols());
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{bmatrix}} {} \\end{{bmatrix}}", rows.join(" \\\\ "))
}

pub fn indent(block: &str) -> String {
    block.lines().map(|l| format!("  {l}\n")).collect()
}
