//! JSON values and aligned text tables for every report. JSON objects use
//! sorted keys and rationals are canonical `"p/q"` strings, so output is
//! byte-stable.

use std::fmt::Write as _;

use diracsym::dirac_spectrum::{OracleReport, SpectrumReport};
use diracsym::f4_casimir::{Argmin, CasimirTable};
use diracsym::holonomy::{G2CasimirSplit, HolonomyKind, HolonomyReport};
use diracsym::linalg::format_rational;
use diracsym::symmetric_pairs::{Catalog, SymmetricPair};
use diracsym::{Rational, WeightVector};
use serde_json::{json, Value};

use crate::verify::{CheckStatus, SuiteReport};

pub const IMAGINARY_UNIT: &str = "×i";
/// Casimir orders whose values are checked against reference data.
pub const VERIFIED_ORDERS: std::ops::RangeInclusive<u32> = 0..=4;

pub fn q(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn vector(v: &WeightVector) -> Value {
    Value::Array(v.to_strings().into_iter().map(Value::String).collect())
}

/// 0-based indices into the noncompact roots, shown 1-based.
fn subset(s: &[usize]) -> Value {
    json!(s.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn subset_text(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Left-aligned columns separated by two spaces.
#[derive(Debug, Default)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let cols = self.headers.len();
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate().take(cols) {
                widths[i] = widths[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate().take(cols) {
                if i + 1 == cols {
                    s.push_str(c);
                } else {
                    let pad = widths[i] - c.chars().count();
                    s.push_str(c);
                    s.push_str(&" ".repeat(pad + 2));
                }
            }
            s.trim_end().to_string() + "\n"
        };
        let mut out = line(&self.headers);
        out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}

fn fields(pairs: &[(&str, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k}:{}{v}", " ".repeat(w - k.chars().count() + 1));
    }
    out
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn catalog_json(c: &Catalog) -> Value {
    let entries: Vec<Value> = c
        .iter()
        .map(|p| {
            let meta = p.metadata();
            json!({
                "name": p.name(),
                "cartan": p.root_system().cartan().to_string(),
                "n": p.n_dim(),
                "m": p.m(),
                "structure": meta.structure.to_string(),
                "kahler_also": meta.kahler_also,
                "spin": meta.has_spin,
                "spin_source": spin_source(p),
                "weyl_order": p.root_system().weyl_order(),
            })
        })
        .collect();
    json!({ "entries": entries })
}

fn spin_source(p: &SymmetricPair) -> Value {
    serde_json::to_value(p.metadata().spin_source).expect("enum serializes")
}

pub fn catalog_table(c: &Catalog) -> String {
    let mut t = Table::new(&["name", "G", "n", "m", "structure", "kahler_also", "spin", "spin_source", "|W_G|"]);
    for p in c.iter() {
        let meta = p.metadata();
        t.row(vec![
            p.name().to_string(),
            p.root_system().cartan().to_string(),
            p.n_dim().to_string(),
            p.m().to_string(),
            meta.structure.to_string(),
            yes(meta.kahler_also),
            yes(meta.has_spin),
            spin_source(p).as_str().unwrap_or_default().to_string(),
            p.root_system().weyl_order().to_string(),
        ]);
    }
    t.render()
}

pub fn spectrum_json(p: &SymmetricPair, r: &SpectrumReport, oracle: Option<&OracleReport>) -> Value {
    let s = &r.signs;
    let sign = |i: usize| {
        if s.i_plus.contains(&i) {
            "+"
        } else if s.i_minus.contains(&i) {
            "-"
        } else {
            "0"
        }
    };
    let roots: Vec<Value> = s
        .alphas
        .iter()
        .enumerate()
        .map(|(i, a)| json!({ "index": i + 1, "root": vector(a), "pairing_delta_k": q(&s.pairings[i]), "sign": sign(i) }))
        .collect();
    let (np, nm, nz) = s.counts();
    let members: Vec<Value> = r
        .family
        .members
        .iter()
        .map(|m| {
            json!({
                "beta": vector(&m.beta),
                "subsets": m.subsets.iter().map(|x| subset(x)).collect::<Vec<_>>(),
                "half_spin": m.half_spin.symbol(),
            })
        })
        .collect();
    let bounds: serde_json::Map<String, Value> =
        r.structure_bounds.iter().map(|b| (b.kind.to_string(), q(&b.value))).collect();
    let mut v = json!({
        "space": r.space,
        "cartan": p.root_system().cartan().to_string(),
        "n": r.n_dim,
        "m": p.m(),
        "structure": p.structure().to_string(),
        "kahler_also": p.metadata().kahler_also,
        "delta_g": vector(p.delta_g()),
        "delta_k": vector(p.delta_k()),
        "noncompact_roots": roots,
        "counts": { "plus": np, "minus": nm, "zero": nz },
        "minimal_weights": members,
        "minimal_norm_sq": q(&r.family.common_norm_sq),
        "subset_count": r.family.subset_count,
        "distinct_count": r.family.members.len(),
        "lambda_min_sq": q(&r.lambda_min_sq),
        "beta_g": vector(&r.beta_g),
        "casimir_crosscheck": q(&r.casimir_crosscheck),
        "friedrich_bound_sq": q(&r.friedrich_bound_sq),
        "structure_bounds": bounds,
    });
    if let Some(o) = oracle {
        v["oracle"] = oracle_json(o);
    }
    v
}

pub fn oracle_json(o: &OracleReport) -> Value {
    json!({
        "weyl_order_g": o.weyl_order_g,
        "weyl_order_k": o.weyl_order_k,
        "w_set_size": o.w_set_size(),
        "members": o.members.iter().map(|m| json!({
            "word": m.word,
            "beta_w": vector(&m.beta_w),
            "beta_g": vector(&m.beta_g),
            "norm_sq": q(&m.norm_sq),
            "dim_k": m.dim_k.to_string(),
        })).collect::<Vec<_>>(),
        "checks": o.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "witness": c.witness })).collect::<Vec<_>>(),
        "all_passed": o.all_passed(),
    })
}

pub fn spectrum_table(p: &SymmetricPair, r: &SpectrumReport, oracle: Option<&OracleReport>) -> String {
    let (np, nm, nz) = r.signs.counts();
    let mut out = fields(&[
        ("space", r.space.clone()),
        ("G", p.root_system().cartan().to_string()),
        ("n", r.n_dim.to_string()),
        ("m", p.m().to_string()),
        ("structure", p.structure().to_string()),
        ("δ_G", p.delta_g().to_string()),
        ("δ_K", p.delta_k().to_string()),
        ("(#I₊,#I₋,#I₀)", format!("({np}, {nm}, {nz})")),
    ]);
    out.push('\n');
    let mut roots = Table::new(&["j", "α_j", "⟨δ_K,α_j⟩"]);
    for (i, a) in r.signs.alphas.iter().enumerate() {
        roots.row(vec![(i + 1).to_string(), a.to_string(), format_rational(&r.signs.pairings[i])]);
    }
    out.push_str(&roots.render());
    out.push('\n');
    let mut fam = Table::new(&["β_I", "I", "Σ±"]);
    for m in &r.family.members {
        let subsets: Vec<String> = m.subsets.iter().map(|s| subset_text(s)).collect();
        fam.row(vec![m.beta.to_string(), subsets.join(" "), m.half_spin.symbol().to_string()]);
    }
    out.push_str(&fam.render());
    out.push('\n');
    let mut pairs = vec![
        ("‖β_I‖²", format_rational(&r.family.common_norm_sq)),
        ("subsets", r.family.subset_count.to_string()),
        ("distinct β_I", r.family.members.len().to_string()),
        ("λ²_min", format_rational(&r.lambda_min_sq)),
        ("β^G", r.beta_g.to_string()),
        ("Casimir route", format_rational(&r.casimir_crosscheck)),
        ("Friedrich bound", format_rational(&r.friedrich_bound_sq)),
    ];
    let labels: Vec<String> = r.structure_bounds.iter().map(|b| format!("{} bound", b.kind)).collect();
    for (b, l) in r.structure_bounds.iter().zip(&labels) {
        pairs.push((l.as_str(), format_rational(&b.value)));
    }
    out.push_str(&fields(&pairs));
    if let Some(o) = oracle {
        out.push('\n');
        out.push_str(&oracle_table(o));
    }
    out
}

fn oracle_table(o: &OracleReport) -> String {
    let mut out = fields(&[
        ("|W_G|", o.weyl_order_g.to_string()),
        ("|W_K|", o.weyl_order_k.to_string()),
        ("|W|", o.w_set_size().to_string()),
    ]);
    out.push('\n');
    let mut t = Table::new(&["word", "β_w", "‖β_w‖²", "dim"]);
    for m in &o.members {
        let word: Vec<String> = m.word.iter().map(|i| i.to_string()).collect();
        t.row(vec![
            format!("[{}]", word.join(",")),
            m.beta_w.to_string(),
            format_rational(&m.norm_sq),
            m.dim_k.to_string(),
        ]);
    }
    out.push_str(&t.render());
    out.push('\n');
    let mut c = Table::new(&["check", "result", "witness"]);
    for x in &o.checks {
        c.row(vec![x.name.clone(), pass_text(x.passed), x.witness.clone()]);
    }
    out.push_str(&c.render());
    out
}

fn pass_text(b: bool) -> String {
    if b { "pass" } else { "FAIL" }.to_string()
}

/// Extra sections of a holonomy report beyond the Kähler/QK criteria.
#[derive(Debug, Default)]
pub struct HolonomyExtras {
    pub g2_split: Option<G2CasimirSplit>,
    pub spin9: Option<Spin9Link>,
}

#[derive(Debug)]
pub struct Spin9Link {
    pub argmin: Argmin,
    pub beta_i0: WeightVector,
}

impl Spin9Link {
    pub fn criterion_met(&self) -> bool {
        matches!(&self.argmin, Argmin::Unique(b) if *b == self.beta_i0)
    }
}

fn argmin_json(a: &Argmin) -> Value {
    match a {
        Argmin::Unique(b) => json!({ "kind": "unique", "weights": [vector(b)] }),
        Argmin::Tie(v) => json!({ "kind": "tie", "weights": v.iter().map(vector).collect::<Vec<_>>() }),
    }
}

fn argmin_text(a: &Argmin) -> String {
    match a {
        Argmin::Unique(b) => b.to_string(),
        Argmin::Tie(v) => format!("tie: {}", v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")),
    }
}

fn value_label(kind: HolonomyKind) -> &'static str {
    match kind {
        HolonomyKind::Kahler => "t_I",
        HolonomyKind::QuaternionKahler => "s_I",
    }
}

pub fn holonomy_report_json(r: &HolonomyReport) -> Value {
    let (np, nm, nz) = r.counts;
    let fiber: Vec<i64> = diracsym::holonomy::fiberwise_eigenvalues(r.kind, r.m);
    json!({
        "kind": r.kind.name(),
        "m": r.m,
        "noncompact_roots": r.alphas.iter().map(vector).collect::<Vec<_>>(),
        "counts": { "plus": np, "minus": nm, "zero": nz },
        "counting_identity": r.counting_identity,
        "values": r.members.iter().map(|x| json!({
            "subset": subset(&x.subset),
            "beta": vector(&x.beta),
            "value": q(&x.value),
            "unit": IMAGINARY_UNIT,
        })).collect::<Vec<_>>(),
        "value_name": value_label(r.kind),
        "values_consistent": r.values_consistent,
        "criterion_met": r.criterion_met,
        "witness": r.witness.as_ref().map(|w| subset(w)),
        "min_abs_value": q(&r.min_abs_value),
        "fiberwise_eigenvalues": fiber,
        "fiberwise_min": r.fiberwise_min,
        "maximal_root": r.maximal_root.as_ref().map(vector),
        "readapted": r.readapted,
    })
}

pub fn holonomy_json(space: &str, reports: &[HolonomyReport], extras: &HolonomyExtras) -> Value {
    let mut v = json!({
        "space": space,
        "reports": reports.iter().map(holonomy_report_json).collect::<Vec<_>>(),
    });
    if let Some(g) = &extras.g2_split {
        v["g2_casimir_split"] = json!({
            "rows": g.rows.iter().map(|r| json!({
                "k1": r.k1,
                "k2": r.k2,
                "highest_weight": vector(&r.highest_weight),
                "c1": q(&r.c1),
                "c2": q(&r.c2),
                "omega_value": q(&r.omega_value),
                "first_factor_trivial": r.first_factor_trivial,
                "second_factor_trivial": r.second_factor_trivial,
            })).collect::<Vec<_>>(),
            "total": q(&g.total),
            "qk_factor": g.qk_factor,
        });
    }
    if let Some(s) = &extras.spin9 {
        v["spin9"] = json!({
            "argmin_c4": argmin_json(&s.argmin),
            "beta_i0": vector(&s.beta_i0),
            "criterion_met": s.criterion_met(),
        });
    }
    v
}

pub fn holonomy_table(space: &str, reports: &[HolonomyReport], extras: &HolonomyExtras) -> String {
    let mut out = fields(&[("space", space.to_string())]);
    for r in reports {
        let (np, nm, nz) = r.counts;
        out.push('\n');
        let mut pairs = vec![
            ("structure", r.kind.name().to_string()),
            ("m", r.m.to_string()),
            ("(#I₊,#I₋,#I₀)", format!("({np}, {nm}, {nz})")),
            ("counting identity", yes(r.counting_identity)),
            ("criterion met", yes(r.criterion_met)),
            ("witness", r.witness.as_ref().map_or_else(|| "none".to_string(), |w| subset_text(w))),
            ("min |value|", format_rational(&r.min_abs_value)),
            ("fiberwise min", r.fiberwise_min.to_string()),
        ];
        if let Some(b) = &r.maximal_root {
            pairs.push(("maximal root", b.to_string()));
        }
        if r.kind == HolonomyKind::Kahler {
            pairs.push(("re-chosen positive system", yes(r.readapted)));
        }
        out.push_str(&fields(&pairs));
        let mut t = Table::new(&["I", "β_I", value_label(r.kind)]);
        for x in &r.members {
            t.row(vec![
                subset_text(&x.subset),
                x.beta.to_string(),
                format!("{}{}", format_rational(&x.value), IMAGINARY_UNIT),
            ]);
        }
        out.push_str(&t.render());
    }
    if let Some(g) = &extras.g2_split {
        out.push('\n');
        out.push_str(&fields(&[
            ("c₁ + c₂", format_rational(&g.total)),
            ("maximal-root factor", g.qk_factor.to_string()),
        ]));
        let mut t = Table::new(&["(k₁,k₂)", "weight", "c₁", "c₂", "64c₁−20"]);
        for r in &g.rows {
            t.row(vec![
                format!("({},{})", r.k1, r.k2),
                r.highest_weight.to_string(),
                format_rational(&r.c1),
                format_rational(&r.c2),
                format_rational(&r.omega_value),
            ]);
        }
        out.push_str(&t.render());
    }
    if let Some(s) = &extras.spin9 {
        out.push('\n');
        out.push_str(&fields(&[
            ("argmin c₄", argmin_text(&s.argmin)),
            ("β_{I₀}", s.beta_i0.to_string()),
            ("criterion met", yes(s.criterion_met())),
        ]));
    }
    out
}

fn unverified(orders: &[u32]) -> Vec<u32> {
    orders.iter().copied().filter(|k| !VERIFIED_ORDERS.contains(k)).collect()
}

pub fn casimir_json(space: &str, t: &CasimirTable, argmins: &[Argmin]) -> Value {
    let mut values = serde_json::Map::new();
    let mut argmin = serde_json::Map::new();
    for (j, k) in t.orders.iter().enumerate() {
        values.insert(k.to_string(), json!(t.values.iter().map(|row| q(&row[j])).collect::<Vec<_>>()));
        argmin.insert(k.to_string(), argmin_json(&argmins[j]));
    }
    json!({
        "space": space,
        "orders": t.orders,
        "components": t.components.iter().map(|c| json!({
            "highest_weight": vector(&c.highest_weight),
            "dim": c.dim.to_string(),
        })).collect::<Vec<_>>(),
        "values": values,
        "argmin": argmin,
        "unverified_orders": unverified(&t.orders),
    })
}

pub fn casimir_table_text(space: &str, t: &CasimirTable, argmins: &[Argmin]) -> String {
    let mut out = fields(&[("space", space.to_string())]);
    out.push('\n');
    let mut headers = vec!["β".to_string(), "dim".to_string()];
    for k in &t.orders {
        let mark = if VERIFIED_ORDERS.contains(k) { "" } else { "*" };
        headers.push(format!("c_{k}{mark}"));
    }
    let refs: Vec<&str> = headers.iter().map(|s| s.as_str()).collect();
    let mut table = Table::new(&refs);
    for (c, row) in t.components.iter().zip(&t.values) {
        let mut cells = vec![c.highest_weight.to_string(), c.dim.to_string()];
        cells.extend(row.iter().map(format_rational));
        table.row(cells);
    }
    out.push_str(&table.render());
    out.push('\n');
    let mut am = Table::new(&["order", "argmin"]);
    for (k, a) in t.orders.iter().zip(argmins) {
        am.row(vec![k.to_string(), argmin_text(a)]);
    }
    out.push_str(&am.render());
    if !unverified(&t.orders).is_empty() {
        out.push_str("\n* order not checked against reference values\n");
    }
    out
}

pub fn verify_json(r: &SuiteReport) -> Value {
    let (p, f, s) = r.tally();
    json!({
        "weyl_cap": r.weyl_cap,
        "suites": r.entries.iter().map(|e| json!({
            "space": e.space,
            "checks": e.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.as_str(),
                "witness": c.witness,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "summary": { "passed": p, "failed": f, "skipped": s },
    })
}

pub fn verify_table(r: &SuiteReport) -> String {
    let mut t = Table::new(&["space", "check", "result", "witness"]);
    for e in &r.entries {
        for c in &e.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "skipped",
            };
            t.row(vec![e.space.clone(), c.name.clone(), status.to_string(), c.witness.clone()]);
        }
    }
    let (p, f, s) = r.tally();
    let mut out = t.render();
    let _ = writeln!(out, "\n{p} passed, {f} failed, {s} skipped (weyl cap {})", r.weyl_cap);
    out
}
