//! Per-entry invariant suites behind `verify`.

use std::collections::BTreeSet;

use diracsym::dirac_spectrum::{
    minimal_highest_weights, parthasarathy_oracle, spectrum_report, spin_weight_tiling, SpectrumReport,
};
use diracsym::f4_casimir::{casimir_argmin, casimir_table, Argmin};
use diracsym::holonomy::{g2_casimir_split, kahler_adapted, kahler_analysis, kahler_report, qk_report, qk_structure};
use diracsym::linalg::{format_rational, int, killing_scalar, rat, strange_formula_check};
use diracsym::root_systems::Family;
use diracsym::symmetric_pairs::{Catalog, Structure, SymmetricPair};
use diracsym::{Error, Rational, WeightVector};
use rayon::prelude::*;

/// Spin-weight tiling is attempted only up to this many weights.
pub const TILING_LIMIT: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntrySuite {
    pub space: String,
    pub checks: Vec<Check>,
}

impl EntrySuite {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub weyl_cap: u64,
    pub entries: Vec<EntrySuite>,
}

impl SuiteReport {
    /// `(passed, failed, skipped)`.
    pub fn tally(&self) -> (usize, usize, usize) {
        let mut t = (0, 0, 0);
        for c in self.entries.iter().flat_map(|e| &e.checks) {
            match c.status {
                CheckStatus::Pass => t.0 += 1,
                CheckStatus::Fail => t.1 += 1,
                CheckStatus::Skipped => t.2 += 1,
            }
        }
        t
    }

    pub fn all_passed(&self) -> bool {
        self.tally().1 == 0
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: &str, status: CheckStatus, witness: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), status, witness: witness.into() });
    }

    fn result(&mut self, name: &str, passed: bool, witness: impl Into<String>) {
        self.push(name, if passed { CheckStatus::Pass } else { CheckStatus::Fail }, witness);
    }

    fn error(&mut self, name: &str, e: &Error) {
        match e {
            Error::CapExceeded { .. } => self.push(name, CheckStatus::Skipped, e.to_string()),
            _ => self.push(name, CheckStatus::Fail, e.to_string()),
        }
    }
}

fn text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

/// Runs the suites for every entry (or only `space`), fanning out across
/// entries; the report keeps catalog order.
pub fn verify_catalog(catalog: &Catalog, space: Option<&str>, weyl_cap: u64) -> diracsym::Result<SuiteReport> {
    let targets: Vec<&SymmetricPair> = match space {
        Some(name) => vec![catalog.get(name)?],
        None => catalog.iter().collect(),
    };
    let entries = targets.par_iter().map(|p| verify_entry(p, weyl_cap)).collect();
    Ok(SuiteReport { weyl_cap, entries })
}

pub fn verify_entry(p: &SymmetricPair, weyl_cap: u64) -> EntrySuite {
    let mut s = Suite { checks: Vec::new() };
    structural(p, &mut s);
    if p.metadata().is_kahler() {
        kahler_balance(p, &mut s);
    }
    if p.has_spin() {
        match spectrum_report(p) {
            Ok(r) => spectral(p, &r, weyl_cap, &mut s),
            Err(e) => s.error("lambda_min_sq", &e),
        }
    } else {
        s.push("spectrum", CheckStatus::Skipped, format!("{} carries no spin structure", p.name()));
    }
    EntrySuite { space: p.name().to_string(), checks: s.checks }
}

fn structural(p: &SymmetricPair, s: &mut Suite) {
    let rs = p.root_system();
    let killing = rs.killing_product();
    let norm = killing.norm_sq(rs.delta());
    s.result(
        "strange_formula",
        strange_formula_check(killing, rs.delta(), rs.dim_g()),
        format!("‖δ_G‖² = {}, dim g/24 = {}", format_rational(&norm), format_rational(&rat(rs.dim_g() as i64, 24))),
    );
    let cartan = rs.cartan();
    let spot = match cartan.family {
        Family::F => Some(rat(1, 18)),
        Family::C => Some(rat(1, 4 * (cartan.rank as i64 + 1))),
        _ => None,
    };
    if let Some(expected) = spot {
        let roots = rs.data().all_roots();
        match killing_scalar(rs.standard_product(), &roots, &roots) {
            Ok(c) => s.result(
                "killing_scalar",
                c == expected,
                format!("c = {}, expected {}", format_rational(&c), format_rational(&expected)),
            ),
            Err(e) => s.error("killing_scalar", &e),
        }
    }
    let sum = p.delta_k() + p.delta_p();
    s.result("half_sums", &sum == p.delta_g(), format!("δ_K + δ_p = {sum}, δ_G = {}", p.delta_g()));
    if p.structure() == Structure::QuaternionKahler {
        match qk_structure(p) {
            Ok(beta) => s.result("wolf_structure", true, format!("maximal root {beta}")),
            Err(e) => s.error("wolf_structure", &e),
        }
    }
}

fn kahler_balance(p: &SymmetricPair, s: &mut Suite) {
    match kahler_analysis(p) {
        Ok(r) => {
            let (a, b, c) = r.counts;
            s.result(
                "kahler_balance",
                r.counting_identity && r.values_consistent,
                format!("(#I₊,#I₋,#I₀) = ({a}, {b}, {c}), values consistent: {}", r.values_consistent),
            );
        }
        Err(e) => s.error("kahler_balance", &e),
    }
}

fn spectral(p: &SymmetricPair, r: &SpectrumReport, weyl_cap: u64, s: &mut Suite) {
    let lambda = &r.lambda_min_sq;
    s.result("lambda_min_sq", true, format!("λ²_min = {}", format_rational(lambda)));
    s.result(
        "casimir_crosscheck",
        r.casimir_crosscheck == *lambda,
        format!("⟨β^G+2δ_G,β^G⟩ + n/16 = {}", format_rational(&r.casimir_crosscheck)),
    );
    let f = &r.friedrich_bound_sq;
    let relation = if lambda == f { "attained" } else { "strict" };
    s.result(
        "friedrich_bound",
        lambda >= f,
        format!("λ² = {}, bound = {} ({relation})", format_rational(lambda), format_rational(f)),
    );
    for b in &r.structure_bounds {
        let relation = if *lambda == b.value { "attained" } else { "strict" };
        s.result(
            &format!("{}_bound", b.kind),
            *lambda >= b.value,
            format!("λ² = {}, bound = {} ({relation})", format_rational(lambda), format_rational(&b.value)),
        );
    }
    if p.metadata().is_kahler() {
        kahler_spin(p, lambda, s);
    }
    if p.structure() == Structure::QuaternionKahler {
        qk_spin(p, s);
    }
    if p.root_system().cartan().family == Family::G && p.structure() == Structure::QuaternionKahler {
        g2_checks(p, s);
    }
    if p.structure() == Structure::Spin9 {
        spin9_checks(p, s);
    }
    oracle_checks(p, weyl_cap, s);
}

fn kahler_spin(p: &SymmetricPair, lambda: &Rational, s: &mut Suite) {
    match kahler_report(p) {
        Ok(r) => {
            let w = r.witness.as_ref().map_or_else(|| "none".to_string(), |w| format!("{w:?}"));
            s.result(
                "kahler_criterion",
                r.criterion_met,
                format!(
                    "min |t_I| = {}, fiberwise min = {}, witness {w}",
                    format_rational(&r.min_abs_value),
                    r.fiberwise_min
                ),
            );
        }
        Err(e) => s.error("kahler_criterion", &e),
    }
    match kahler_adapted(p).and_then(|(q, re)| Ok((spectrum_report(&q)?, re))) {
        Ok((q, re)) => s.result(
            "kahler_positive_system",
            q.lambda_min_sq == *lambda,
            format!("re-chosen: {re}, λ² = {}", format_rational(&q.lambda_min_sq)),
        ),
        Err(e) => s.error("kahler_positive_system", &e),
    }
}

fn qk_spin(p: &SymmetricPair, s: &mut Suite) {
    let r = match qk_report(p) {
        Ok(r) => r,
        Err(e) => return s.error("qk_counting_identity", &e),
    };
    let (a, b, c) = r.counts;
    let expected = p.root_system().cartan().family != Family::G;
    s.result(
        "qk_counting_identity",
        r.counting_identity == expected && r.values_consistent,
        format!("#I₋+#I₀ = {}, #I₊ = {a}", b + c),
    );
    if r.counting_identity {
        let full = r.members.iter().find(|m| m.subset.len() == c);
        let ok = full.is_some_and(|m| m.value == int(0)) && r.criterion_met;
        let val = full.map_or_else(|| "missing".to_string(), |m| format_rational(&m.value));
        s.result("qk_criterion", ok, format!("s_{{I₀}} = {val}"));
    }
}

fn g2_checks(p: &SymmetricPair, s: &mut Suite) {
    let killing = p.root_system().killing_product();
    let gap = killing.norm_sq(p.delta_g()) - killing.norm_sq(p.delta_k());
    match g2_casimir_split() {
        Ok(g) => {
            let ok = g.total == gap && gap == rat(1, 2) && g.rows.iter().all(|r| &r.c1 + &r.c2 == gap);
            let omegas: Vec<Rational> = g.rows.iter().map(|r| r.omega_value.clone()).collect();
            s.result(
                "g2_casimir_split",
                ok,
                format!("c₁+c₂ = {} on every component, 64c₁−20 = {}", format_rational(&g.total), text(&omegas)),
            );
        }
        Err(e) => s.error("g2_casimir_split", &e),
    }
    match qk_report(p) {
        Ok(r) => {
            let values: Vec<Rational> = r.members.iter().map(|m| m.value.clone()).collect();
            let ok = !r.criterion_met && r.counts == (3, 0, 1) && values == vec![int(2), int(1)];
            s.result(
                "g2_qk_criterion_fails",
                ok,
                format!("s = {}, counts {:?}, criterion met: {}", text(&values), r.counts, r.criterion_met),
            );
        }
        Err(e) => s.error("g2_qk_criterion_fails", &e),
    }
    let expected: BTreeSet<WeightVector> =
        [[4, 0], [0, 2], [3, 1]].iter().map(|w| WeightVector::from_ints(w)).collect();
    let minimal: BTreeSet<WeightVector> = [[0, 2], [3, 1]].iter().map(|w| WeightVector::from_ints(w)).collect();
    match (parthasarathy_oracle(p, u64::MAX), minimal_highest_weights(p)) {
        (Ok(o), Ok(f)) => {
            let found: BTreeSet<WeightVector> = o.members.iter().map(|m| m.beta_w.clone()).collect();
            let direct: BTreeSet<WeightVector> = f.betas().into_iter().cloned().collect();
            s.result(
                "g2_spin_weights",
                o.w_set_size() == 3 && found == expected && direct == minimal,
                format!("|W| = {}, minimal {}", o.w_set_size(), direct.len()),
            );
        }
        (Err(e), _) | (_, Err(e)) => s.error("g2_spin_weights", &e),
    }
}

fn spin9_checks(p: &SymmetricPair, s: &mut Suite) {
    let reference = [
        vec![int(9); 3],
        vec![int(0); 3],
        vec![int(36); 3],
        vec![int(-126); 3],
        vec![rat(1863, 2), int(684), int(1404)],
    ];
    match casimir_table(&[0, 1, 2, 3, 4]) {
        Ok(t) => {
            let mut ok = true;
            for (k, want) in reference.iter().enumerate() {
                let got: Vec<Rational> = t.values.iter().map(|row| row[k].clone()).collect();
                ok &= got == *want;
            }
            let c4: Vec<Rational> = t.values.iter().map(|row| row[4].clone()).collect();
            s.result("casimir_table", ok, format!("c₄ = {}", text(&c4)));
        }
        Err(e) => s.error("casimir_table", &e),
    }
    let beta_i0 = minimal_highest_weights(p).and_then(|f| {
        let signs = diracsym::dirac_spectrum::classify_noncompact(p);
        f.find(&signs.i_zero)
            .map(|m| m.beta.clone())
            .ok_or_else(|| Error::Assertion("no β_{I₀} in the minimal family".into()))
    });
    match (casimir_argmin(4), beta_i0) {
        (Ok(a), Ok(b)) => {
            let ok = matches!(&a, Argmin::Unique(x) if *x == b);
            s.result("spin9_holonomy_link", ok, format!("argmin c₄ = {a:?}, β_{{I₀}} = {b}"));
        }
        (Err(e), _) | (_, Err(e)) => s.error("spin9_holonomy_link", &e),
    }
}

fn oracle_checks(p: &SymmetricPair, weyl_cap: u64, s: &mut Suite) {
    let order = p.root_system().weyl_order();
    if order > weyl_cap {
        let why = format!("|W_G| = {order} exceeds weyl cap {weyl_cap}");
        s.push("oracle", CheckStatus::Skipped, why.clone());
        s.push("spin_weight_tiling", CheckStatus::Skipped, why);
        return;
    }
    let o = match parthasarathy_oracle(p, weyl_cap) {
        Ok(o) => o,
        Err(e) => return s.error("oracle", &e),
    };
    for c in &o.checks {
        s.result(&format!("oracle_{}", c.name), c.passed, c.witness.clone());
    }
    let m = p.m();
    if m >= 63 || (1u64 << m) > TILING_LIMIT {
        s.push("spin_weight_tiling", CheckStatus::Skipped, format!("2^{m} weights exceed {TILING_LIMIT}"));
        return;
    }
    match spin_weight_tiling(p, &o, TILING_LIMIT) {
        Ok(t) => s.result(
            "spin_weight_tiling",
            t.matches,
            format!("{} spin weights, {} component weights", t.spin_weight_count, t.component_weight_count),
        ),
        Err(e) => s.error("spin_weight_tiling", &e),
    }
}
