use std::collections::BTreeMap;
use std::fmt::{self, Write};

use arithcx_core::complex::{build_complex_unchecked, build_integer_complex, parse_tail, ArithmeticComplex};
use arithcx_core::homology::{homology_table_mod_p, homology_table_q, homology_table_z, DegreeTable, TableValue};
use arithcx_core::identities::fuzz;
use arithcx_core::iso::{
    alpha_maps, golden_check, iso_certificate, source_target_weights, verify_block_structure, verify_chain_map,
    verify_chain_map_at, verify_homotopy, verify_triangular,
};
use arithcx_core::report::Report;
use arithcx_core::sheaf::{
    ribbon_columns, stable_cohomology_ribbon, stable_cohomology_ribbon_mod_p, stable_cohomology_two_column,
    stable_cohomology_two_column_mod_p, verify_identification_field, verify_identification_z, SkewShape,
    TwoColumnShape,
};
use arithcx_core::{Ring, Weight, WeightVector};
use serde_json::{json, Value};

use crate::render::{indent, matrix_latex, report_block};
use crate::{
    Cli, Command, ComplexArgs, Format, HomologyArgs, IdentitiesArgs, IsoArgs, RibbonArgs, SheafCommand, TwoColumnArgs,
    VerifyArgs, WeightArgs,
};

pub struct Outcome {
    pub stdout: String,
    pub reports: Vec<Report>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(arithcx_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<arithcx_core::Error> for CliError {
    fn from(e: arithcx_core::Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult = Result<Outcome, CliError>;

fn unsupported(format: Format, what: &str) -> CliError {
    CliError::Usage(format!("--format {format:?} is not available for {what}").to_lowercase())
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> CliResult {
    let f = cli.format;
    match &cli.command {
        Command::Complex(a) => complex(a, f),
        Command::Verify(a) => verify(a, f),
        Command::Iso(a) => iso(a, f),
        Command::Homology(a) => homology(a, f),
        Command::Sheaf {
            shape: SheafCommand::Ribbon(a),
        } => ribbon(a, f),
        Command::Sheaf {
            shape: SheafCommand::TwoColumn(a),
        } => two_column(a, f),
        Command::Identities(a) => identities(a, f),
    }
}

fn weights(a: &WeightArgs) -> Result<WeightVector, CliError> {
    let w0: Weight = a.w0.parse()?;
    Ok(WeightVector::new(w0, parse_tail(&a.tail)?))
}

fn complex(a: &ComplexArgs, f: Format) -> CliResult {
    let w = weights(&a.weights)?;
    let symbolic = build_complex_unchecked(&w);
    match (a.at, a.modulus) {
        (None, None) => render_complex(&symbolic, f),
        (Some(m), None) => render_complex(&symbolic.specialize(m), f),
        (at, Some(p)) => {
            let m = match at {
                Some(m) => m,
                None if !w.is_symbolic() => 0,
                None => return Err(CliError::Usage("--mod needs --at when w0 involves x".into())),
            };
            render_complex(&symbolic.specialize(m).reduce_mod(p)?, f)
        }
    }
}

fn render_complex<R: Ring>(c: &ArithmeticComplex<R>, f: Format) -> CliResult {
    let reports = c.chain().square_zero_reports();
    let ring = R::ring_tag(c.chain().ctx());
    let d = c.d() as i64;
    let stdout = match f {
        Format::Json => json_out(json!({
            "complex": c.to_json(),
            "checks": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("C{} over {ring}, d = {d}\n", c.weights().describe());
            for k in 0..=d {
                let basis: Vec<String> = c.basis(k).iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "C_{k} (rank {}): {}", basis.len(), basis.join(" "));
            }
            for k in 1..=d {
                let _ = writeln!(out, "∂_{k}: C_{k} → C_{}", k - 1);
                out.push_str(&indent(&c.boundary(k).expect("degree in range").to_string()));
            }
            out.push_str(&report_block(&reports));
            out
        }
        Format::Latex => {
            let mut out = String::new();
            for k in 1..=d {
                let _ = writeln!(
                    out,
                    "\\partial_{{{k}}} = {}",
                    matrix_latex(c.boundary(k).expect("degree in range"))
                );
            }
            out
        }
        Format::Csv => return Err(unsupported(f, "complex")),
    };
    Ok(Outcome { stdout, reports })
}

fn d_reports(d: usize) -> Result<Vec<Report>, CliError> {
    let mut reports = Vec::new();
    let (ws, wt) = source_target_weights(d);
    for w in [&ws, &wt] {
        reports.extend(build_complex_unchecked(w).chain().square_zero_reports());
    }
    reports.extend(verify_chain_map(d));
    reports.extend(verify_triangular(d));
    if d >= 1 {
        reports.extend(verify_block_structure(d)?.reports);
        reports.extend(verify_homotopy(d)?.reports);
    }
    reports.push(certificate_report(d));
    Ok(reports)
}

fn certificate_report(d: usize) -> Report {
    Report::check("α has determinants ±1", None, iso_certificate(d).pass)
}

fn verify(a: &VerifyArgs, f: Format) -> CliResult {
    let ds: Vec<usize> = match a.d {
        Some(d) => vec![d],
        None => (1..=a.max_d).collect(),
    };
    let golden = golden_check();
    let mut per_d = Vec::new();
    for &d in &ds {
        per_d.push((d, d_reports(d)?));
    }
    let mut reports = golden.clone();
    per_d.iter().for_each(|(_, r)| reports.extend(r.iter().cloned()));
    let stdout = match f {
        Format::Json => json_out(json!({
            "golden": golden.iter().map(Report::to_json).collect::<Vec<_>>(),
            "results": per_d.iter().map(|(d, r)| json!({
                "d": d,
                "reports": r.iter().map(Report::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "pass": reports.iter().all(|r| r.pass),
        })),
        Format::Text => {
            let mut out = String::from("reference data\n");
            out.push_str(&indent(&report_block(&golden)));
            for (d, r) in &per_d {
                let _ = writeln!(out, "d = {d}");
                out.push_str(&indent(&report_block(r)));
            }
            let passed = reports.iter().filter(|r| r.pass).count();
            let _ = writeln!(out, "total: {passed}/{} checks passed", reports.len());
            out
        }
        _ => return Err(unsupported(f, "verify")),
    };
    Ok(Outcome { stdout, reports })
}

fn iso(a: &IsoArgs, f: Format) -> CliResult {
    if a.golden && a.d != 3 {
        return Err(CliError::Usage(
            "--golden compares the d = 3 reference data; pass --d 3".into(),
        ));
    }
    let alpha = alpha_maps(a.d);
    let cert = iso_certificate(a.d);
    let mut reports = Vec::new();
    if a.golden {
        reports.extend(golden_check());
    }
    reports.extend(verify_chain_map(a.d));
    if let Some(m) = a.at {
        reports.extend(verify_chain_map_at(a.d, m));
    }
    reports.extend(verify_triangular(a.d));
    reports.push(certificate_report(a.d));
    let stdout = match f {
        Format::Json => json_out(json!({
            "d": a.d,
            "alpha": alpha.iter().enumerate().map(|(k, m)| json!({"degree": k, "matrix": m.to_json()})).collect::<Vec<_>>(),
            "determinants": cert.determinants.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "checks": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!("α: C(x,1^{0}) → C(-x-{1},1^{0})\n", a.d, 2 * a.d);
            for (k, m) in alpha.iter().enumerate() {
                let _ = writeln!(out, "α_{k} (det {}):", cert.determinants[k]);
                out.push_str(&indent(&m.to_string()));
            }
            out.push_str(&report_block(&reports));
            out
        }
        Format::Latex => alpha
            .iter()
            .enumerate()
            .map(|(k, m)| format!("\\alpha_{{{k}}} = {}\n", matrix_latex(m)))
            .collect(),
        Format::Csv => return Err(unsupported(f, "iso")),
    };
    Ok(Outcome { stdout, reports })
}

fn table_out<V: TableValue>(
    t: &DegreeTable<V>,
    f: Format,
    header: &str,
    key: &str,
    value_key: &str,
    meta: Value,
) -> String {
    match f {
        Format::Text => format!("{header}\n{}", t.to_text(key)),
        Format::Csv => t.to_csv(key),
        Format::Latex => t.to_latex(key),
        Format::Json => {
            let mut v = meta;
            v[if key == "i" { "cohomology" } else { "homology" }] = t.to_json_with(key, value_key);
            json_out(v)
        }
    }
}

fn homology(a: &HomologyArgs, f: Format) -> CliResult {
    let mut w = weights(&a.weights)?;
    if let Some(m) = a.at {
        w = w.specialize(m);
    }
    if w.is_symbolic() {
        return Err(CliError::Usage(
            "homology needs integer weights; pass --at to evaluate x".into(),
        ));
    }
    let c = build_integer_complex(&w)?;
    let name = w.describe();
    let stdout = match (a.modulus, a.rational) {
        (Some(p), _) => {
            let t = homology_table_mod_p(c.chain(), p)?;
            let meta = json!({"weights": name, "coefficients": format!("F_{p}")});
            table_out(&t, f, &format!("dim H_k(C{name} ⊗ F_{p})"), "k", "dimension", meta)
        }
        (None, true) => {
            let t = homology_table_q(c.chain());
            let meta = json!({"weights": name, "coefficients": "Q"});
            table_out(&t, f, &format!("dim H_k(C{name} ⊗ Q)"), "k", "dimension", meta)
        }
        (None, false) => {
            let t = homology_table_z(c.chain())?;
            let meta = json!({"weights": name, "coefficients": "Z"});
            table_out(&t, f, &format!("H_k(C{name} ⊗ Z)"), "k", "group", meta)
        }
    };
    Ok(Outcome {
        stdout,
        reports: Vec::new(),
    })
}

fn composition_string(w: &[u32]) -> String {
    let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn ribbon(a: &RibbonArgs, f: Format) -> CliResult {
    let w = match (&a.lambda, &a.columns) {
        (Some(l), _) => ribbon_columns(&SkewShape::new(parse_tail(l)?, parse_tail(&a.mu)?)?)?,
        (None, Some(c)) => parse_tail(c)?,
        (None, None) => return Err(CliError::Usage("pass --lambda or --columns".into())),
    };
    let ws = composition_string(&w);
    let stdout = match a.modulus {
        Some(p) => {
            let t = stable_cohomology_ribbon_mod_p(&w, p)?;
            let meta = json!({"columns": w, "coefficients": format!("F_{p}")});
            table_out(
                &t,
                f,
                &format!("ribbon w = {ws}: dim H^i over F_{p}"),
                "i",
                "dimension",
                meta,
            )
        }
        None => {
            let t = stable_cohomology_ribbon(&w)?;
            let meta = json!({"columns": w, "coefficients": "Z"});
            table_out(&t, f, &format!("ribbon w = {ws}: H^i over Z"), "i", "group", meta)
        }
    };
    Ok(Outcome {
        stdout,
        reports: Vec::new(),
    })
}

fn two_column(a: &TwoColumnArgs, f: Format) -> CliResult {
    let shape = TwoColumnShape::new(a.m, a.d)?;
    let title = format!(
        "λ = {} (columns {}, {})",
        composition_string(&shape.partition()),
        a.m,
        a.d
    );
    let (body, mut reports) = match a.modulus {
        Some(p) => {
            let t = stable_cohomology_two_column_mod_p(&shape, p)?;
            let meta = json!({"m": a.m, "d": a.d, "partition": shape.partition(), "coefficients": format!("F_{p}")});
            let out = table_out(
                &t.table,
                f,
                &format!("{title}: dim H^i over F_{p}"),
                "i",
                "dimension",
                meta,
            );
            (out, vec![t.cross_check])
        }
        None => {
            let t = stable_cohomology_two_column(&shape)?;
            let meta = json!({"m": a.m, "d": a.d, "partition": shape.partition(), "coefficients": "Z"});
            let out = table_out(&t.table, f, &format!("{title}: H^i over Z"), "i", "group", meta);
            (out, vec![t.cross_check])
        }
    };
    if a.check_duality {
        reports = match a.modulus {
            Some(p) => verify_identification_field(&shape, p)?,
            None => verify_identification_z(&shape)?,
        };
    }
    let stdout = match f {
        Format::Json => {
            let mut v: Value = serde_json::from_str(&body).expect("valid json");
            v["checks"] = reports.iter().map(Report::to_json).collect();
            json_out(v)
        }
        Format::Text => format!("{body}{}", report_block(&reports)),
        _ => body,
    };
    Ok(Outcome { stdout, reports })
}

fn identities(a: &IdentitiesArgs, f: Format) -> CliResult {
    let records = fuzz(a.seed, a.count);
    let mut summary: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in &records {
        let e = summary.entry(r.identity).or_default();
        e.0 += 1;
        e.1 += usize::from(r.pass);
    }
    let reports: Vec<Report> = summary
        .iter()
        .map(|(id, (n, ok))| Report::check(format!("{id}: {ok}/{n} cases hold"), None, ok == n))
        .collect();
    let failures: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    let stdout = match f {
        Format::Json => json_out(json!({
            "seed": a.seed,
            "count": a.count,
            "summary": summary.iter().map(|(id, (n, ok))| json!({"identity": id, "cases": n, "passed": ok})).collect::<Vec<_>>(),
            "failures": failures,
        })),
        Format::Csv => {
            let mut out = String::from("identity,cases,passed\n");
            for (id, (n, ok)) in &summary {
                let _ = writeln!(out, "{id},{n},{ok}");
            }
            out
        }
        Format::Text => format!("seed {} count {}\n{}", a.seed, a.count, report_block(&reports)),
        Format::Latex => return Err(unsupported(f, "identities")),
    };
    Ok(Outcome { stdout, reports })
}
