//! Holonomy criteria: the fiberwise action of the Kähler form, of the
//! quaternion-Kähler 4-form, and the `G2/SO4` Casimir split, evaluated on the
//! minimal-norm components `β_I` of the spin representation.

use num_traits::{Signed, Zero};

use crate::dirac_spectrum::{beta_for_subset, classify_noncompact, subsets, SignClassification};
use crate::error::{Error, Result};
use crate::linalg::{int, nullspace, rat, Rational, WeightVector};
use crate::root_systems::{casimir_eigenvalue, CartanType, Family, RootSystem};
use crate::symmetric_pairs::{make_pair, Structure, SymmetricPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HolonomyKind {
    Kahler,
    QuaternionKahler,
}

impl HolonomyKind {
    pub fn name(self) -> &'static str {
        match self {
            HolonomyKind::Kahler => "kahler",
            HolonomyKind::QuaternionKahler => "quaternion_kahler",
        }
    }
}

/// Value of the criterion on one `β_I`: `t_I` (Kähler, eigenvalue `i·t_I`
/// of the Kähler form) or `s_I` (quaternion-Kähler, `β_I(H_β°) = i·s_I`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyMember {
    pub subset: Vec<usize>,
    pub beta: WeightVector,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolonomyReport {
    pub space: String,
    pub kind: HolonomyKind,
    /// Complex (Kähler) or quaternionic dimension.
    pub m: usize,
    /// Noncompact positive roots indexing the subsets, in the positive system used.
    pub alphas: Vec<WeightVector>,
    /// `(#I₊, #I₋, #I₀)`.
    pub counts: (usize, usize, usize),
    pub members: Vec<HolonomyMember>,
    pub criterion_met: bool,
    pub witness: Option<Vec<usize>>,
    /// Kähler: `#I₊ = #I₋`. Quaternion-Kähler: `#I₋ + #I₀ = #I₊`.
    pub counting_identity: bool,
    /// Every value agrees with its counting expression and, for Kähler,
    /// lies in the fiberwise spectrum.
    pub values_consistent: bool,
    pub min_abs_value: Rational,
    /// Minimum of `|eigenvalue − target|` over the fiberwise spectrum.
    pub fiberwise_min: i64,
    pub maximal_root: Option<WeightVector>,
    /// Kähler only: whether the positive system was re-chosen so that every
    /// positive noncompact root pairs to `+1` with the central element.
    pub readapted: bool,
}

/// Fiberwise spectra: Kähler `m−2r`, quaternion-Kähler `6m−4r(r+2)`, `r = 0..m`.
pub fn fiberwise_eigenvalues(kind: HolonomyKind, m: usize) -> Vec<i64> {
    let m = m as i64;
    (0..=m)
        .map(|r| match kind {
            HolonomyKind::Kahler => m - 2 * r,
            HolonomyKind::QuaternionKahler => 6 * m - 4 * r * (r + 2),
        })
        .collect()
}

/// Element `h` of the span of the roots, orthogonal to all compact roots,
/// scaled so that every noncompact root pairs to `±1` and the first one to `+1`.
pub fn central_element(p: &SymmetricPair) -> Result<WeightVector> {
    let rs = p.root_system();
    let form = rs.standard_product();
    let simple = rs.simple_roots();
    let rows: Vec<Vec<Rational>> =
        p.k_data().simple_roots().iter().map(|k| simple.iter().map(|a| form.pair(a, k)).collect()).collect();
    let ns = nullspace(&rows, simple.len());
    if ns.len() != 1 {
        return Err(Error::NotKahler(format!("{}: centre of K has dimension {}", p.name(), ns.len())));
    }
    let dim = rs.ambient_dim();
    let h = ns[0].iter().zip(&simple).fold(WeightVector::zero(dim), |acc, (c, a)| &acc + &a.scale(c));
    let alphas = p.noncompact_roots();
    let first = form.pair(alphas[0], &h);
    if first.is_zero() {
        return Err(Error::NotKahler(format!("{}: centre acts trivially on p", p.name())));
    }
    let h = h.scale(&(int(1) / first));
    for a in alphas {
        let v = form.pair(a, &h);
        if v != int(1) && v != int(-1) {
            return Err(Error::NotKahler(format!("{}: noncompact root {a} pairs to {v}", p.name())));
        }
    }
    Ok(h)
}

/// The same space with the positive system of `G` chosen so that all positive
/// noncompact roots pair positively with the central element. Returns the
/// input unchanged if it already has that property.
pub fn kahler_adapted(p: &SymmetricPair) -> Result<(SymmetricPair, bool)> {
    let h = central_element(p)?;
    let rs = p.root_system();
    let form = rs.standard_product();
    if p.noncompact_roots().iter().all(|a| form.pair(a, &h).is_positive()) {
        return Ok((p.clone(), false));
    }
    let bound = rs.positive_roots().iter().map(|a| form.pair(a, rs.delta()).abs()).max().unwrap_or_else(Rational::zero);
    let generic = &h.scale(&(int(2) * bound + int(1))) + rs.delta();
    let data = rs.data();
    let (_, word) = data.dominant_chamber(&generic);
    let mut compact = Vec::new();
    for t in p.compact_roots() {
        for r in [t.clone(), -t] {
            if form.pair(&r, &generic).is_positive() {
                let image = data.apply_word(&word, &r);
                let idx = data.index_of(&image).ok_or_else(|| {
                    Error::Assertion(format!("{}: adapted image {image} of {r} is not positive", p.name()))
                })?;
                compact.push(idx);
            }
        }
    }
    let q = make_pair(p.name(), rs.clone(), &compact, *p.metadata())?;
    let h2 = central_element(&q)?;
    if !q.noncompact_roots().iter().all(|a| form.pair(a, &h2) == int(1)) {
        return Err(Error::Assertion(format!("{}: re-chosen positive system is not adapted", p.name())));
    }
    Ok((q, true))
}

fn kahler_values(p: &SymmetricPair, readapted: bool) -> Result<HolonomyReport> {
    let h = central_element(p)?;
    let form = p.root_system().standard_product();
    let signs = classify_noncompact(p);
    let m = p.m();
    let (np, nm, nz) = signs.counts();
    let spectrum = fiberwise_eigenvalues(HolonomyKind::Kahler, m);
    let mut members = Vec::new();
    let mut consistent = true;
    for subset in subsets(&signs.i_zero)? {
        let beta = beta_for_subset(p, &signs, &subset);
        let t = int(2) * form.pair(&beta, &h);
        let counted = np as i64 - nm as i64 + (nz - subset.len()) as i64 - subset.len() as i64;
        let in_spectrum = t.is_integer() && spectrum.contains(&t.to_integer().try_into().unwrap_or(i64::MAX));
        consistent &= t == int(counted) && in_spectrum;
        members.push(HolonomyMember { subset, beta, value: t });
    }
    let target = if m.is_multiple_of(2) { vec![int(0)] } else { vec![int(1), int(-1)] };
    let witness = members.iter().find(|x| target.contains(&x.value)).map(|x| x.subset.clone());
    let min_abs_value = members.iter().map(|x| x.value.abs()).min().unwrap_or_else(Rational::zero);
    Ok(HolonomyReport {
        space: p.name().to_string(),
        kind: HolonomyKind::Kahler,
        m,
        alphas: signs.alphas.clone(),
        counts: signs.counts(),
        criterion_met: witness.is_some(),
        witness,
        counting_identity: np == nm,
        values_consistent: consistent,
        min_abs_value,
        fiberwise_min: spectrum.iter().map(|t| t.abs()).min().unwrap_or(0),
        members,
        maximal_root: None,
        readapted,
    })
}

/// Kähler criterion without the spin requirement (the values `t_I` are
/// defined for any Hermitian pair).
pub fn kahler_analysis(p: &SymmetricPair) -> Result<HolonomyReport> {
    if !p.metadata().is_kahler() {
        return Err(Error::NotKahler(p.name().to_string()));
    }
    let (q, readapted) = kahler_adapted(p)?;
    kahler_values(&q, readapted)
}

/// Kähler criterion: some `t_I` is `0` (`m` even) or `±1` (`m` odd).
pub fn kahler_report(p: &SymmetricPair) -> Result<HolonomyReport> {
    if !p.metadata().is_kahler() {
        return Err(Error::NotKahler(p.name().to_string()));
    }
    p.require_spin()?;
    kahler_analysis(p)
}

/// The highest root `β`, after checking that it is compact, orthogonal to
/// every other compact root, and that every positive noncompact root `α`
/// satisfies `⟨α,β⟩ = ‖β‖²/2`.
pub fn qk_structure(p: &SymmetricPair) -> Result<WeightVector> {
    if p.structure() != Structure::QuaternionKahler {
        return Err(Error::NotQk(p.name().to_string()));
    }
    let rs = p.root_system();
    let form = rs.standard_product();
    let beta = rs.highest_root().clone();
    if !p.is_compact_root(&beta) {
        return Err(Error::WolfViolation { root: beta.to_string(), reason: "maximal root is not compact".into() });
    }
    for t in p.compact_roots() {
        if *t != beta && !form.pair(t, &beta).is_zero() {
            return Err(Error::WolfViolation {
                root: t.to_string(),
                reason: "compact root not orthogonal to β".into(),
            });
        }
    }
    let half = form.norm_sq(&beta) / int(2);
    for a in p.noncompact_roots() {
        if form.pair(a, &beta) != half {
            return Err(Error::WolfViolation { root: a.to_string(), reason: "⟨α,β⟩ ≠ ‖β‖²/2".into() });
        }
    }
    Ok(beta)
}

/// Quaternion-Kähler criterion: some `s_I = 2⟨β_I,β⟩/‖β‖²` vanishes.
pub fn qk_report(p: &SymmetricPair) -> Result<HolonomyReport> {
    let beta = qk_structure(p)?;
    p.require_spin()?;
    let form = p.root_system().standard_product();
    let nb = form.norm_sq(&beta);
    let s_of = |v: &WeightVector| int(2) * form.pair(v, &beta) / &nb;
    let signs: SignClassification = classify_noncompact(p);
    let (np, nm, nz) = signs.counts();
    let mut members = Vec::new();
    let mut consistent = true;
    let mut s_empty = None;
    for subset in subsets(&signs.i_zero)? {
        let b = beta_for_subset(p, &signs, &subset);
        let s = s_of(&b);
        let s0 = s_empty.get_or_insert_with(|| s.clone()).clone();
        let drop: Rational = subset.iter().map(|&i| s_of(&signs.alphas[i])).sum();
        let counted = rat(np as i64 - nm as i64 + (nz - subset.len()) as i64 - subset.len() as i64, 2);
        consistent &= s0 - &s == drop && s == counted;
        members.push(HolonomyMember { subset, beta: b, value: s });
    }
    let witness = members.iter().find(|x| x.value.is_zero()).map(|x| x.subset.clone());
    let min_abs_value = members.iter().map(|x| x.value.abs()).min().unwrap_or_else(Rational::zero);
    Ok(HolonomyReport {
        space: p.name().to_string(),
        kind: HolonomyKind::QuaternionKahler,
        m: p.n_dim() / 4,
        alphas: signs.alphas.clone(),
        counts: signs.counts(),
        criterion_met: witness.is_some(),
        witness,
        counting_identity: nm + nz == np,
        values_consistent: consistent,
        min_abs_value,
        fiberwise_min: 0,
        members,
        maximal_root: Some(beta),
        readapted: false,
    })
}

/// One spin component `S^{k₁}H ⊗ S^{k₂}H` of `G2/SO4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2SplitRow {
    pub k1: u32,
    pub k2: u32,
    /// `k₁ω₁ + k₂ω₂`.
    pub highest_weight: WeightVector,
    pub c1: Rational,
    pub c2: Rational,
    /// `64·c₁ − 20`, the value of the 4-form (shifted per the split) on it.
    pub omega_value: Rational,
    pub first_factor_trivial: bool,
    pub second_factor_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G2CasimirSplit {
    pub rows: Vec<G2SplitRow>,
    /// `‖δ_G‖² − ‖δ_K‖²`, the common value of `c₁ + c₂`.
    pub total: Rational,
    /// Index (1 or 2) of the `Sp₁` factor generated by the maximal root.
    pub qk_factor: u32,
}

/// Casimir eigenvalues of the two `Sp₁` factors of `SO4 ⊂ G2` on the spin
/// components, computed from the Killing product of `G2` and checked against
/// `k(k+2)/48` and `k(k+2)/16`.
pub fn g2_casimir_split() -> Result<G2CasimirSplit> {
    let rs = RootSystem::build(CartanType::new(Family::G, 2))?;
    let killing = rs.killing_product();
    let total = killing.norm_sq(rs.delta()) - killing.norm_sq(&WeightVector::from_ints(&[1, 1]));
    let (w1, w2) = (WeightVector::from_ints(&[1, 0]), WeightVector::from_ints(&[0, 1]));
    let beta = rs.highest_root().clone();
    let qk_factor = if beta == w2.scale_int(2) { 2 } else { 1 };
    let mut rows = Vec::new();
    for (k1, k2) in [(3u32, 1u32), (4, 0), (0, 2)] {
        let c1 = casimir_eigenvalue(killing, &w1.scale_int(k1 as i64), &w1)?;
        let c2 = casimir_eigenvalue(killing, &w2.scale_int(k2 as i64), &w2)?;
        let (a, b) = (k1 as i64, k2 as i64);
        if c1 != rat(a * (a + 2), 48) || c2 != rat(b * (b + 2), 16) {
            return Err(Error::Assertion(format!("G2 Casimir split mismatch at ({k1},{k2}): {c1}, {c2}")));
        }
        if &c1 + &c2 != total {
            return Err(Error::Assertion(format!("G2 component ({k1},{k2}): c₁+c₂ = {} ≠ {total}", &c1 + &c2)));
        }
        let highest_weight = &w1.scale_int(a) + &w2.scale_int(b);
        let omega_value = int(64) * &c1 - int(20);
        rows.push(G2SplitRow {
            k1,
            k2,
            highest_weight,
            c1,
            c2,
            omega_value,
            first_factor_trivial: k1 == 0,
            second_factor_trivial: k2 == 0,
        });
    }
    Ok(G2CasimirSplit { rows, total, qk_factor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric_pairs::Catalog;

    #[test]
    fn fiberwise_lists() {
        assert_eq!(fiberwise_eigenvalues(HolonomyKind::Kahler, 2), vec![2, 0, -2]);
        assert_eq!(fiberwise_eigenvalues(HolonomyKind::QuaternionKahler, 2), vec![12, 0, -20]);
        for m in 1..6 {
            assert_eq!(fiberwise_eigenvalues(HolonomyKind::QuaternionKahler, m)[0], 6 * m as i64);
        }
    }

    #[test]
    fn cp2_analysis() {
        let c = Catalog::builtin();
        let p = c.get("CP2").unwrap();
        let r = kahler_analysis(p).unwrap();
        assert_eq!(r.counts, (1, 1, 0));
        assert_eq!(r.members.len(), 1);
        assert_eq!(r.members[0].value, int(0));
        assert!(r.criterion_met && r.counting_identity && r.values_consistent);
        assert!(matches!(kahler_report(p), Err(Error::NotSpin(_))));
    }

    #[test]
    fn grassmannian_needs_readapting() {
        let c = Catalog::builtin();
        let p = c.get("Gr2_C6").unwrap();
        let r = kahler_report(p).unwrap();
        assert!(r.readapted);
        assert!(r.criterion_met && r.counting_identity && r.values_consistent);
        assert_eq!(r.m, 8);
        for x in &r.members {
            assert_eq!(x.value.to_integer() % 2, num_bigint::BigInt::from(0));
        }
    }

    #[test]
    fn odd_projective_spaces() {
        let c = Catalog::builtin();
        for name in ["CP3", "CP5", "CP7"] {
            let r = kahler_report(c.get(name).unwrap()).unwrap();
            assert!(!r.readapted);
            assert!(r.criterion_met, "{name}");
            assert_eq!(r.min_abs_value, int(1));
            assert_eq!(r.fiberwise_min, 1);
        }
    }

    #[test]
    fn qk_structure_checks() {
        let c = Catalog::builtin();
        assert_eq!(qk_structure(c.get("HP3").unwrap()).unwrap(), WeightVector::from_ints(&[2, 0, 0, 0]));
        assert_eq!(qk_structure(c.get("G2_SO4").unwrap()).unwrap(), WeightVector::from_ints(&[0, 2]));
        assert!(matches!(qk_structure(c.get("F4_Spin9").unwrap()), Err(Error::NotQk(_))));
        assert!(matches!(kahler_report(c.get("F4_Spin9").unwrap()), Err(Error::NotKahler(_))));
    }

    #[test]
    fn qk_reports() {
        let c = Catalog::builtin();
        let hp1 = qk_report(c.get("HP1").unwrap()).unwrap();
        assert_eq!(hp1.counts, (1, 0, 1));
        assert!(hp1.criterion_met && hp1.counting_identity);
        let zero = hp1.alphas.iter().position(|a| *a == WeightVector::from_ints(&[1, -1])).unwrap();
        assert_eq!(hp1.witness, Some(vec![zero]));

        let g2 = qk_report(c.get("G2_SO4").unwrap()).unwrap();
        assert_eq!(g2.counts, (3, 0, 1));
        let values: Vec<Rational> = g2.members.iter().map(|x| x.value.clone()).collect();
        assert_eq!(values, vec![int(2), int(1)]);
        assert!(!g2.criterion_met && !g2.counting_identity && g2.values_consistent);

        let e8 = qk_report(c.get("E8_E7SU2").unwrap()).unwrap();
        assert!(e8.criterion_met && e8.counting_identity);
        assert!(e8.members.last().unwrap().value.is_zero());
    }

    #[test]
    fn g2_split() {
        let s = g2_casimir_split().unwrap();
        assert_eq!(s.total, rat(1, 2));
        assert_eq!(s.qk_factor, 2);
        let r31 = &s.rows[0];
        assert_eq!((r31.c1.clone(), r31.c2.clone()), (rat(5, 16), rat(3, 16)));
        let omegas: Vec<Rational> = s.rows.iter().map(|r| r.omega_value.clone()).collect();
        assert_eq!(omegas, vec![int(0), int(12), int(-20)]);
        assert!(s.rows[1].second_factor_trivial && s.rows[1].c2.is_zero());
        assert!(s.rows[2].first_factor_trivial && s.rows[2].c1.is_zero());
        assert_eq!(s.rows[2].highest_weight, WeightVector::from_ints(&[0, 2]));
    }
}
