//! First Dirac eigenvalue of a spin symmetric space with its Killing metric,
//! from the minimal-norm highest weights of the spin representation of `K`,
//! plus a brute-force check over the Weyl group of `G`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, rat, Rational, WeightVector};
use crate::root_systems::{
    casimir_eigenvalue, orbit_size_of_rho, weight_multiplicities, weyl_dimension, IrrepDescriptor,
};
use crate::symmetric_pairs::{Structure, SymmetricPair};

/// Largest `#I₀` for which all subsets are enumerated.
const MAX_ZERO_SET: usize = 20;

/// Partition of `α₁…α_m` by the sign of `⟨δ_K, α_i⟩`. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignClassification {
    pub alphas: Vec<WeightVector>,
    pub pairings: Vec<Rational>,
    pub i_plus: Vec<usize>,
    pub i_minus: Vec<usize>,
    pub i_zero: Vec<usize>,
}

impl SignClassification {
    /// `(#I₊, #I₋, #I₀)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.i_plus.len(), self.i_minus.len(), self.i_zero.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HalfSpin {
    Plus,
    Minus,
}

impl HalfSpin {
    pub fn symbol(self) -> &'static str {
        match self {
            HalfSpin::Plus => "+",
            HalfSpin::Minus => "-",
        }
    }
}

/// A distinct weight `β_I` together with every `I ⊆ I₀` producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalWeight {
    pub subsets: Vec<Vec<usize>>,
    pub beta: WeightVector,
    pub half_spin: HalfSpin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalWeightFamily {
    /// Ordered by the first subset producing each weight.
    pub members: Vec<MinimalWeight>,
    /// Killing norm shared by all members.
    pub common_norm_sq: Rational,
    /// `2^{#I₀}`.
    pub subset_count: u64,
}

impl MinimalWeightFamily {
    pub fn betas(&self) -> Vec<&WeightVector> {
        self.members.iter().map(|m| &m.beta).collect()
    }

    pub fn find(&self, subset: &[usize]) -> Option<&MinimalWeight> {
        self.members.iter().find(|m| m.subsets.iter().any(|s| s == subset))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureBound {
    pub kind: Structure,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub space: String,
    pub n_dim: usize,
    pub signs: SignClassification,
    pub family: MinimalWeightFamily,
    pub lambda_min_sq: Rational,
    pub beta_g: WeightVector,
    pub casimir_crosscheck: Rational,
    pub friedrich_bound_sq: Rational,
    pub structure_bounds: Vec<StructureBound>,
}

pub fn classify_noncompact(p: &SymmetricPair) -> SignClassification {
    let form = p.root_system().standard_product();
    let alphas: Vec<WeightVector> = p.noncompact_roots().into_iter().cloned().collect();
    let pairings: Vec<Rational> = alphas.iter().map(|a| form.pair(p.delta_k(), a)).collect();
    let pick = |f: fn(&Rational) -> bool| (0..alphas.len()).filter(|&i| f(&pairings[i])).collect::<Vec<_>>();
    SignClassification {
        i_plus: pick(|x| x.is_positive()),
        i_minus: pick(|x| x.is_negative()),
        i_zero: pick(|x| x.is_zero()),
        alphas,
        pairings,
    }
}

/// All subsets of `set`, by increasing bitmask.
pub(crate) fn subsets(set: &[usize]) -> Result<Vec<Vec<usize>>> {
    if set.len() > MAX_ZERO_SET {
        return Err(Error::CapExceeded {
            what: "subsets of I₀".into(),
            needed: format!("2^{}", set.len()),
            cap: 1 << MAX_ZERO_SET,
        });
    }
    Ok((0u64..1 << set.len())
        .map(|mask| (0..set.len()).filter(|b| mask >> b & 1 == 1).map(|b| set[b]).collect())
        .collect())
}

/// `β_I = δ_p − Σ_{I₋} α_i − Σ_I α_i`.
pub fn beta_for_subset(p: &SymmetricPair, signs: &SignClassification, subset: &[usize]) -> WeightVector {
    let dim = p.root_system().ambient_dim();
    let minus = WeightVector::sum(dim, signs.i_minus.iter().chain(subset).map(|&i| &signs.alphas[i]));
    p.delta_p() - &minus
}

pub fn minimal_highest_weights(p: &SymmetricPair) -> Result<MinimalWeightFamily> {
    let signs = classify_noncompact(p);
    let killing = p.root_system().killing_product();
    let expected_norm = killing.norm_sq(p.delta_p())
        + int(2) * signs.i_minus.iter().map(|&i| killing.pair(&signs.alphas[i], p.delta_k())).sum::<Rational>();
    let mut members: Vec<MinimalWeight> = Vec::new();
    let all = subsets(&signs.i_zero)?;
    let subset_count = all.len() as u64;
    for subset in all {
        let beta = beta_for_subset(p, &signs, &subset);
        let norm = killing.norm_sq(&beta);
        if norm != expected_norm {
            return Err(Error::Assertion(format!(
                "{}: ‖β_I‖² = {norm} but the norm identity gives {expected_norm} for I = {subset:?}",
                p.name()
            )));
        }
        if !p.k_data().is_dominant(&beta)? {
            return Err(Error::Assertion(format!("{}: β_I = {beta} is not K-dominant", p.name())));
        }
        let half_spin =
            if (signs.i_minus.len() + subset.len()).is_multiple_of(2) { HalfSpin::Plus } else { HalfSpin::Minus };
        match members.iter_mut().find(|m| m.beta == beta) {
            Some(m) => {
                if m.half_spin != half_spin {
                    return Err(Error::Assertion(format!("{}: {beta} lies in both half-spin spaces", p.name())));
                }
                m.subsets.push(subset);
            }
            None => members.push(MinimalWeight { subsets: vec![subset], beta, half_spin }),
        }
    }
    Ok(MinimalWeightFamily { members, common_norm_sq: expected_norm, subset_count })
}

/// Friedrich's bound `n/(n−1)·Scal/4` with `Scal = n/2`.
pub fn friedrich_bound(n: usize) -> Rational {
    let n = n as i64;
    rat(n * n, 8 * (n - 1))
}

/// Kähler bound with `Scal = n/2`: `n/(n−2)·Scal/4` for even complex
/// dimension, `(n+2)/n·Scal/4` for odd complex dimension.
pub fn kahler_bound(n: usize) -> Rational {
    let n = n as i64;
    if (n / 2) % 2 == 0 {
        rat(n * n, 8 * (n - 2))
    } else {
        rat(n + 2, 8)
    }
}

/// Quaternion-Kähler bound `(n+12)/(n+8)·Scal/4` with `Scal = n/2`.
pub fn quaternion_kahler_bound(n: usize) -> Rational {
    let n = n as i64;
    rat((n + 12) * n, 8 * (n + 8))
}

fn structure_bounds(p: &SymmetricPair) -> Vec<StructureBound> {
    let n = p.n_dim();
    let meta = p.metadata();
    let mut out = Vec::new();
    if meta.is_kahler() {
        out.push(StructureBound { kind: Structure::Kahler, value: kahler_bound(n) });
    }
    match meta.structure {
        Structure::QuaternionKahler => {
            out.push(StructureBound { kind: Structure::QuaternionKahler, value: quaternion_kahler_bound(n) })
        }
        Structure::Spin9 => out.push(StructureBound { kind: Structure::Spin9, value: quaternion_kahler_bound(n) }),
        _ => {}
    }
    out
}

/// `λ²_min = 2·min‖β‖² + n/8`.
pub fn first_eigenvalue_squared(p: &SymmetricPair) -> Result<Rational> {
    p.require_spin()?;
    let family = minimal_highest_weights(p)?;
    Ok(eigenvalue_from_norm(&family.common_norm_sq, p.n_dim()))
}

fn eigenvalue_from_norm(norm: &Rational, n: usize) -> Rational {
    int(2) * norm + rat(n as i64, 8)
}

/// The `G`-dominant weight `β^G` in the `W_G`-orbit of every `β_I`, required
/// to be the same for all `I ⊆ I₀` and `G`-integral.
pub fn g_representation(p: &SymmetricPair) -> Result<WeightVector> {
    p.require_spin()?;
    let family = minimal_highest_weights(p)?;
    g_representation_of(p, &family)
}

fn g_representation_of(p: &SymmetricPair, family: &MinimalWeightFamily) -> Result<WeightVector> {
    let data = p.root_system().data();
    let mut found: Option<WeightVector> = None;
    for m in &family.members {
        let (nu, _) = data.dominant_chamber(&m.beta);
        if !data.is_integral(&nu)? {
            return Err(Error::Assertion(format!("{}: β^G = {nu} is not G-integral", p.name())));
        }
        match &found {
            None => found = Some(nu),
            Some(f) if *f != nu => {
                return Err(Error::Assertion(format!("{}: minimal weights give distinct β^G {f} and {nu}", p.name())))
            }
            _ => {}
        }
    }
    found.ok_or_else(|| Error::Assertion(format!("{}: empty minimal family", p.name())))
}

/// `⟨β^G+2δ_G, β^G⟩ + n/16`, asserted equal to `λ²_min`.
pub fn casimir_crosscheck(p: &SymmetricPair) -> Result<Rational> {
    Ok(spectrum_report(p)?.casimir_crosscheck)
}

pub fn spectrum_report(p: &SymmetricPair) -> Result<SpectrumReport> {
    p.require_spin()?;
    let rs = p.root_system();
    let signs = classify_noncompact(p);
    let family = minimal_highest_weights(p)?;
    let n = p.n_dim();
    let lambda_min_sq = eigenvalue_from_norm(&family.common_norm_sq, n);
    let beta_g = g_representation_of(p, &family)?;
    let casimir = casimir_eigenvalue(rs.killing_product(), &beta_g, rs.delta())? + rat(n as i64, 16);
    if casimir != lambda_min_sq {
        return Err(Error::Assertion(format!(
            "{}: Casimir route gives {casimir}, minimal norm gives {lambda_min_sq}",
            p.name()
        )));
    }
    Ok(SpectrumReport {
        space: p.name().to_string(),
        n_dim: n,
        signs,
        family,
        lambda_min_sq,
        beta_g,
        casimir_crosscheck: casimir,
        friedrich_bound_sq: friedrich_bound(n),
        structure_bounds: structure_bounds(p),
    })
}

/// Weights `½(±α₁±…±α_m)` of the spin representation with multiplicities.
pub fn spin_weights(p: &SymmetricPair, cap: u64) -> Result<BTreeMap<WeightVector, u64>> {
    let m = p.m();
    if m >= 63 || (1u64 << m) > cap {
        return Err(Error::CapExceeded {
            what: format!("spin weights of {}", p.name()),
            needed: format!("2^{m}"),
            cap,
        });
    }
    let alphas: Vec<WeightVector> = p.noncompact_roots().into_iter().cloned().collect();
    let mut out = BTreeMap::new();
    // Gray code walk starting from +δ_p, flipping one sign at a time.
    let mut cur = p.delta_p().clone();
    let mut signs = vec![true; m];
    *out.entry(cur.clone()).or_insert(0) += 1;
    for k in 1u64..(1 << m) {
        let bit = k.trailing_zeros() as usize;
        cur = if signs[bit] { &cur - &alphas[bit] } else { &cur + &alphas[bit] };
        signs[bit] = !signs[bit];
        *out.entry(cur.clone()).or_insert(0) += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMember {
    /// `w` as a 1-based word in the simple reflections of `G`.
    pub word: Vec<usize>,
    pub beta_w: WeightVector,
    /// `w⁻¹·β_w = δ_G − w⁻¹·δ_K`.
    pub beta_g: WeightVector,
    pub norm_sq: Rational,
    pub dim_k: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub name: String,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub space: String,
    pub weyl_order_g: u64,
    pub weyl_order_k: u64,
    /// Sorted by `β_w`.
    pub members: Vec<OracleMember>,
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    pub fn w_set_size(&self) -> usize {
        self.members.len()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&OracleCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Integer linear functional `μ ↦ L·⟨μ, γ⟩` on Dynkin labels, for `γ` given
/// by rational simple-root coefficients.
fn label_functional(coeffs: &[Rational], half_norms: &[Rational]) -> Vec<i64> {
    let raw: Vec<Rational> = coeffs.iter().zip(half_norms).map(|(c, d)| c * d).collect();
    let l = raw.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    raw.iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer().to_i64().expect("functional fits i64"))
        .collect()
}

fn dot(a: &[i64], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(x, &y)| x * y as i64).sum()
}

/// Brute-force evaluation over `W_G` of the Parthasarathy description of the
/// spin representation, with the checks:
/// a) `|W| = |W_G|/|W_K|`; b) every `β_w` is `K`-dominant; c) the minimum of
/// `‖β_w‖²` and its argmin set agree with the minimal family; d) the
/// components' dimensions add up to `2^m`; e) `w⁻¹β_w` is the same
/// `G`-dominant integral weight for all minimizers and equals
/// [`g_representation`]; f) the `K`-Casimir of every `β_w` is
/// `‖δ_G‖²−‖δ_K‖²`. A last check compares the minimum over `W` with the
/// minimum of `‖w·δ_G−δ_K‖²` over all of `W_G`.
pub fn parthasarathy_oracle(p: &SymmetricPair, weyl_cap: u64) -> Result<OracleReport> {
    p.require_spin()?;
    let rs = p.root_system();
    if rs.weyl_order() > weyl_cap {
        return Err(Error::CapExceeded {
            what: format!("Weyl group of {} for {}", rs.cartan(), p.name()),
            needed: rs.weyl_order().to_string(),
            cap: weyl_cap,
        });
    }
    let data = rs.data();
    let form = data.form();
    let r = data.rank();
    let cartan = data.cartan_matrix();
    let half_norms: Vec<Rational> = data.simple_roots().iter().map(|a| form.norm_sq(a) / int(2)).collect();
    let coeffs_of = |root: &WeightVector| -> Vec<Rational> {
        let i = data.index_of(root).expect("compact root is a root of G");
        data.coefficients(i).iter().map(|&c| int(c)).collect()
    };
    let k_simple: Vec<Vec<i64>> =
        p.k_data().simple_roots().iter().map(|t| label_functional(&coeffs_of(t), &half_norms)).collect();
    let mut dk_coeffs = vec![Rational::zero(); r];
    for t in p.compact_roots() {
        for (acc, c) in dk_coeffs.iter_mut().zip(coeffs_of(t)) {
            *acc += c / int(2);
        }
    }
    let dk_functional = label_functional(&dk_coeffs, &half_norms);

    // Orbit of δ_G in Dynkin labels; δ_G is regular, so the orbit is W_G.
    let start = vec![1i32; r];
    let mut index: HashMap<Vec<i32>, u32> = HashMap::from([(start.clone(), 0)]);
    let mut nodes: Vec<Vec<i32>> = vec![start];
    let mut parent: Vec<(u32, u8)> = vec![(u32::MAX, 0)];
    let mut queue = VecDeque::from([0u32]);
    while let Some(cur) = queue.pop_front() {
        for i in 0..r {
            let v = &nodes[cur as usize];
            let li = v[i];
            let next: Vec<i32> = (0..r).map(|j| v[j] - li * cartan[i][j] as i32).collect();
            if !index.contains_key(&next) {
                let id = nodes.len() as u32;
                index.insert(next.clone(), id);
                nodes.push(next);
                parent.push((cur, i as u8 + 1));
                queue.push_back(id);
            }
        }
    }
    drop(index);
    let word_of = |mut id: u32| {
        let mut word = Vec::new();
        while parent[id as usize].0 != u32::MAX {
            let (up, g) = parent[id as usize];
            word.push(g as usize);
            id = up;
        }
        word
    };

    let killing = rs.killing_product();
    let mut members = Vec::new();
    let mut best_global: Option<(i64, u32)> = None;
    for (id, labels) in nodes.iter().enumerate() {
        let score = dot(&dk_functional, labels);
        if best_global.is_none_or(|(s, _)| score > s) {
            best_global = Some((score, id as u32));
        }
        if k_simple.iter().all(|f| dot(f, labels) > 0) {
            let word = word_of(id as u32);
            let w_delta = data.apply_word(&word, rs.delta());
            let beta_w = &w_delta - p.delta_k();
            let mut inv = word.clone();
            inv.reverse();
            let beta_g = data.apply_word(&inv, &beta_w);
            let norm_sq = killing.norm_sq(&beta_w);
            members.push(OracleMember { word, beta_w, beta_g, norm_sq, dim_k: BigInt::zero() });
        }
    }
    members.sort_by(|a, b| a.beta_w.cmp(&b.beta_w));

    let weyl_order_g = nodes.len() as u64;
    let weyl_order_k = orbit_size_of_rho(&p.k_data().cartan_matrix(), weyl_order_g)?;
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, witness: String| {
        checks.push(OracleCheck { name: name.to_string(), passed, witness })
    };

    let expected = weyl_order_g / weyl_order_k;
    push(
        "a_w_set_size",
        weyl_order_g.is_multiple_of(weyl_order_k) && members.len() as u64 == expected,
        format!("|W| = {}, |W_G| = {weyl_order_g}, |W_K| = {weyl_order_k}", members.len()),
    );

    let bad_dom: Vec<String> = members
        .iter()
        .filter(|m| !p.k_data().is_dominant(&m.beta_w).unwrap_or(false))
        .map(|m| m.beta_w.to_string())
        .collect();
    push(
        "b_k_dominant",
        bad_dom.is_empty(),
        if bad_dom.is_empty() { "all β_w K-dominant".into() } else { bad_dom.join("; ") },
    );

    let family = minimal_highest_weights(p)?;
    let min = members.iter().map(|m| m.norm_sq.clone()).min().unwrap_or_else(Rational::zero);
    let argmin: BTreeSet<&WeightVector> = members.iter().filter(|m| m.norm_sq == min).map(|m| &m.beta_w).collect();
    let direct: BTreeSet<&WeightVector> = family.betas().into_iter().collect();
    push(
        "c_argmin",
        min == family.common_norm_sq && argmin == direct,
        format!("min over W = {min}, direct = {}, argmin size {}", family.common_norm_sq, argmin.len()),
    );

    let mut total = BigInt::zero();
    let mut integral_ok = true;
    for m in members.iter_mut() {
        match IrrepDescriptor::new(p.k_data(), m.beta_w.clone()) {
            Ok(ir) => m.dim_k = weyl_dimension(&ir),
            Err(_) => integral_ok = false,
        }
        total += &m.dim_k;
    }
    let spin_dim = BigInt::one() << p.m();
    push("d_dimension_tiling", integral_ok && total == spin_dim, format!("Σ d(β_w) = {total}, 2^m = {spin_dim}"));

    let minimizers: Vec<&OracleMember> = members.iter().filter(|m| m.norm_sq == min).collect();
    let direct_g = g_representation_of(p, &family);
    let first = minimizers.first().map(|m| m.beta_g.clone());
    let unique = minimizers.iter().all(|m| Some(&m.beta_g) == first.as_ref());
    let e_ok = match (&first, &direct_g) {
        (Some(b), Ok(d)) => unique && b == d && data.is_dominant(b)? && data.is_integral(b)?,
        _ => false,
    };
    push(
        "e_beta_g_unique_dominant",
        e_ok,
        format!("β^G = {}", first.map_or_else(|| "none".to_string(), |b| b.to_string())),
    );

    let gap = killing.norm_sq(rs.delta()) - killing.norm_sq(p.delta_k());
    let mut bad_cas = Vec::new();
    for m in &members {
        let c = casimir_eigenvalue(killing, &m.beta_w, p.delta_k())?;
        if c != gap {
            bad_cas.push(format!("{} ↦ {c}", m.beta_w));
        }
    }
    push(
        "f_casimir_constant",
        bad_cas.is_empty(),
        if bad_cas.is_empty() { format!("all equal ‖δ_G‖²−‖δ_K‖² = {gap}") } else { bad_cas.join("; ") },
    );

    let (_, arg) = best_global.expect("orbit is nonempty");
    let w_delta = data.apply_word(&word_of(arg), rs.delta());
    let global = killing.norm_sq(&(&w_delta - p.delta_k()));
    push("global_minimum", global == min, format!("min over W_G = {global}, min over W = {min}"));

    Ok(OracleReport { space: p.name().to_string(), weyl_order_g, weyl_order_k, members, checks })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingReport {
    pub spin_weight_count: u64,
    pub component_weight_count: u64,
    pub matches: bool,
}

/// Compares the spin weights with the union of the weight systems of the
/// components `β_w` found by the oracle.
pub fn spin_weight_tiling(p: &SymmetricPair, oracle: &OracleReport, cap: u64) -> Result<TilingReport> {
    let spin = spin_weights(p, cap)?;
    let mut union: BTreeMap<WeightVector, u64> = BTreeMap::new();
    for m in &oracle.members {
        let ir = IrrepDescriptor::new(p.k_data(), m.beta_w.clone())?;
        for (w, k) in weight_multiplicities(&ir, cap)? {
            *union.entry(w).or_insert(0) += k;
        }
    }
    Ok(TilingReport {
        spin_weight_count: spin.values().sum(),
        component_weight_count: union.values().sum(),
        matches: spin == union,
    })
}
