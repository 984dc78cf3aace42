//! Irreducible root systems in standard coordinates, Weyl-group machinery and
//! the classical representation algorithms (Weyl dimension, Freudenthal
//! multiplicities, Klimyk tensor decomposition).

mod cartan;
mod reps;
mod weyl;

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{int, killing_normalize, rat, strange_formula_check, InnerProduct, Rational, WeightVector};

pub use cartan::{CartanType, Family};
pub use reps::{casimir_eigenvalue, klimyk_tensor, weight_multiplicities, weyl_dimension, IrrepDescriptor};
pub use weyl::{enumerate_weyl, orbit_size_of_rho, WeylElement};

/// Default cap for Weyl-group enumeration.
pub const DEFAULT_WEYL_CAP: u64 = 1_000_000;
/// Default cap on the number of weights handled by Freudenthal/Klimyk.
pub const DEFAULT_WEIGHT_CAP: u64 = 100_000;

/// Positive roots, simple roots and an invariant form for a (possibly
/// reducible, possibly non-semisimple) reductive root datum. Used both for a
/// simple group `G` and for the isotropy subgroup `K` of a symmetric pair.
#[derive(Clone, Debug)]
pub struct RootData {
    ambient_dim: usize,
    /// Sorted lexicographically by coordinates.
    positive: Vec<WeightVector>,
    /// Indices into `positive`, in the conventional order of the simple roots.
    simple: Vec<usize>,
    /// Simple-root coefficients of every positive root.
    coefficients: Vec<Vec<i64>>,
    form: InnerProduct,
    delta: WeightVector,
}

impl RootData {
    /// Builds root data from a set of positive roots. Simple roots are the
    /// indecomposable ones; if `simple_order` is given it fixes their order,
    /// otherwise they follow the lexicographic order of `positive`.
    pub fn from_positive_roots(
        ambient_dim: usize,
        mut positive: Vec<WeightVector>,
        form: InnerProduct,
        simple_order: Option<&[WeightVector]>,
    ) -> Result<Self> {
        for r in &positive {
            if r.dim() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: r.dim() });
            }
        }
        positive.sort();
        positive.dedup();
        let index: HashMap<&WeightVector, usize> = positive.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let decomposable: HashSet<usize> = positive
            .iter()
            .enumerate()
            .filter(|(_, r)| positive.iter().any(|a| index.contains_key(&(*r - a))))
            .map(|(i, _)| i)
            .collect();
        let mut simple: Vec<usize> = (0..positive.len()).filter(|i| !decomposable.contains(i)).collect();
        if let Some(order) = simple_order {
            let wanted: Option<Vec<usize>> = order.iter().map(|r| index.get(r).copied()).collect();
            let wanted = wanted.ok_or_else(|| Error::InvalidPair("simple root not among positive roots".into()))?;
            let mut a = wanted.clone();
            a.sort();
            if a != simple {
                return Err(Error::InvalidPair("given simple roots are not the indecomposable positive roots".into()));
            }
            simple = wanted;
        }
        let delta = WeightVector::sum(ambient_dim, &positive).scale(&rat(1, 2));
        let coefficients = simple_coefficients(&positive, &simple, &delta, &form)?;
        Ok(Self { ambient_dim, positive, simple, coefficients, form, delta })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn positive_roots(&self) -> &[WeightVector] {
        &self.positive
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<&WeightVector> {
        self.simple.iter().map(|&i| &self.positive[i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn coefficients(&self, root_index: usize) -> &[i64] {
        &self.coefficients[root_index]
    }

    pub fn form(&self) -> &InnerProduct {
        &self.form
    }

    /// Half-sum of the positive roots.
    pub fn delta(&self) -> &WeightVector {
        &self.delta
    }

    pub fn index_of(&self, root: &WeightVector) -> Option<usize> {
        self.positive.binary_search(root).ok()
    }

    /// All roots, positive then negative.
    pub fn all_roots(&self) -> Vec<WeightVector> {
        self.positive.iter().cloned().chain(self.positive.iter().map(|r| -r)).collect()
    }

    /// `A_ij = 2⟨α_i,α_j⟩/⟨α_j,α_j⟩`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.simple_roots();
        s.iter()
            .map(|a| {
                s.iter()
                    .map(|b| {
                        let c = self.form.coroot_pairing(a, b);
                        assert!(c.is_integer(), "non-integral Cartan entry");
                        i64::try_from(c.to_integer()).expect("Cartan entry fits i64")
                    })
                    .collect()
            })
            .collect()
    }

    /// `⟨μ,θ_i⟩ ≥ 0` for every simple root.
    pub fn is_dominant(&self, mu: &WeightVector) -> Result<bool> {
        self.check_dim(mu)?;
        Ok(self.simple_roots().iter().all(|a| !self.form.pair(mu, a).is_negative()))
    }

    /// `2⟨μ,θ_i⟩/⟨θ_i,θ_i⟩ ∈ Z` for every simple root.
    pub fn is_integral(&self, mu: &WeightVector) -> Result<bool> {
        self.check_dim(mu)?;
        Ok(self.simple_roots().iter().all(|a| self.form.coroot_pairing(mu, a).is_integer()))
    }

    /// Dynkin labels `2⟨μ,θ_i⟩/⟨θ_i,θ_i⟩`.
    pub fn labels(&self, mu: &WeightVector) -> Vec<Rational> {
        self.simple_roots().iter().map(|a| self.form.coroot_pairing(mu, a)).collect()
    }

    /// Reflection in the `i`-th simple root (0-based).
    pub fn reflect_simple(&self, i: usize, mu: &WeightVector) -> WeightVector {
        let a = &self.positive[self.simple[i]];
        mu - &a.scale(&self.form.coroot_pairing(mu, a))
    }

    pub fn reflect(&self, alpha: &WeightVector, mu: &WeightVector) -> WeightVector {
        mu - &alpha.scale(&self.form.coroot_pairing(mu, alpha))
    }

    /// Applies a 1-based word `[i₁,…,i_k]`, i.e. `s_{i₁}⋯s_{i_k}·μ`.
    pub fn apply_word(&self, word: &[usize], mu: &WeightVector) -> WeightVector {
        word.iter().rev().fold(mu.clone(), |acc, &i| self.reflect_simple(i - 1, &acc))
    }

    /// Chamber reduction: returns `(ν, word)` with `ν` dominant and
    /// `s_{word}·μ = ν` (word is 1-based, leftmost reflection applied last).
    pub fn dominant_chamber(&self, mu: &WeightVector) -> (WeightVector, Vec<usize>) {
        let simple = self.simple_roots();
        let mut cur = mu.clone();
        let mut applied = Vec::new();
        'outer: loop {
            for (i, a) in simple.iter().enumerate() {
                if self.form.pair(&cur, a).is_negative() {
                    cur = self.reflect_simple(i, &cur);
                    applied.push(i + 1);
                    continue 'outer;
                }
            }
            break;
        }
        applied.reverse();
        (cur, applied)
    }

    /// Dominant representative together with the Weyl element carrying `μ` to it.
    pub fn dominant_representative(&self, mu: &WeightVector) -> Result<(WeightVector, WeylElement)> {
        self.check_dim(mu)?;
        let (nu, word) = self.dominant_chamber(mu);
        Ok((nu, WeylElement::from_word(self, word)))
    }

    /// Full `W`-orbit of `μ`, sorted.
    pub fn orbit(&self, mu: &WeightVector) -> Vec<WeightVector> {
        let mut seen: HashSet<WeightVector> = HashSet::new();
        let mut stack = vec![mu.clone()];
        seen.insert(mu.clone());
        while let Some(v) = stack.pop() {
            for i in 0..self.rank() {
                let r = self.reflect_simple(i, &v);
                if !seen.contains(&r) {
                    seen.insert(r.clone());
                    stack.push(r);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// `|W|`, computed as the orbit size of a regular element.
    pub fn weyl_group_order(&self) -> u64 {
        orbit_size_of_rho(&self.cartan_matrix(), u64::MAX).expect("no cap")
    }

    fn check_dim(&self, mu: &WeightVector) -> Result<()> {
        if mu.dim() == self.ambient_dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient_dim, found: mu.dim() })
        }
    }
}

/// Simple-root coefficients of each positive root, found by peeling off simple
/// roots in order of increasing `⟨α,δ⟩`.
fn simple_coefficients(
    positive: &[WeightVector],
    simple: &[usize],
    delta: &WeightVector,
    form: &InnerProduct,
) -> Result<Vec<Vec<i64>>> {
    let r = simple.len();
    let mut order: Vec<usize> = (0..positive.len()).collect();
    let heights: Vec<Rational> = positive.iter().map(|a| form.pair(a, delta)).collect();
    order.sort_by(|&a, &b| heights[a].cmp(&heights[b]));
    let index: HashMap<&WeightVector, usize> = positive.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut coeffs: Vec<Option<Vec<i64>>> = vec![None; positive.len()];
    for (k, &s) in simple.iter().enumerate() {
        let mut c = vec![0; r];
        c[k] = 1;
        coeffs[s] = Some(c);
    }
    for &i in &order {
        if coeffs[i].is_some() {
            continue;
        }
        let found = simple.iter().enumerate().find_map(|(k, &s)| {
            let rest = &positive[i] - &positive[s];
            index.get(&rest).and_then(|&j| coeffs[j].as_ref()).map(|c| {
                let mut c = c.clone();
                c[k] += 1;
                c
            })
        });
        coeffs[i] = Some(found.ok_or_else(|| {
            Error::InvalidPair(format!("positive root {} is not a sum of simple roots", positive[i]))
        })?);
    }
    Ok(coeffs.into_iter().map(|c| c.expect("all assigned")).collect())
}

/// A simple compact Lie algebra's root system in its standard realization.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: CartanType,
    data: RootData,
    killing: InnerProduct,
    dim_g: u64,
    weyl_order: u64,
}

impl RootSystem {
    /// Builds the standard realization of `t` and validates it: root-system
    /// axioms, Killing normalization and the strange formula.
    pub fn build(t: CartanType) -> Result<Self> {
        t.check()?;
        let (ambient_dim, form, simple) = t.realization();
        if !form.is_positive_definite_on(&simple) {
            return Err(Error::DegenerateForm(format!("standard form of {t} is not positive definite")));
        }
        let positive = generate_positive_roots(&simple, &form);
        let data = RootData::from_positive_roots(ambient_dim, positive, form, Some(&simple))?;
        let killing = killing_normalize(data.form(), &data.all_roots())?;
        let dim_g = (data.rank() + 2 * data.positive.len()) as u64;
        let rs = Self { cartan: t, data, killing, dim_g, weyl_order: t.weyl_order() };
        rs.validate()?;
        Ok(rs)
    }

    fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Assertion(format!("{}: {m}", self.cartan)));
        if !strange_formula_check(&self.killing, self.delta(), self.dim_g) {
            return fail("strange formula fails".into());
        }
        let form = self.data.form();
        for a in self.data.simple_roots() {
            if form.pair(self.delta(), a) / form.norm_sq(a) != rat(1, 2) {
                return fail(format!("2⟨δ,θ⟩/⟨θ,θ⟩ ≠ 1 for θ = {a}"));
            }
        }
        let mut lengths: Vec<Rational> = self.data.positive.iter().map(|a| form.norm_sq(a)).collect();
        lengths.sort();
        lengths.dedup();
        let ratio_ok = match lengths.as_slice() {
            [_] => true,
            [s, l] => [int(2), int(3)].contains(&(l / s)),
            _ => false,
        };
        if !ratio_ok {
            return fail("root lengths".into());
        }
        if self.data.coefficients.iter().any(|c| c.iter().any(|&x| x < 0)) {
            return fail("negative simple coefficient".into());
        }
        Ok(())
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn data(&self) -> &RootData {
        &self.data
    }

    pub fn ambient_dim(&self) -> usize {
        self.data.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    pub fn positive_roots(&self) -> &[WeightVector] {
        &self.data.positive
    }

    pub fn simple_roots(&self) -> Vec<&WeightVector> {
        self.data.simple_roots()
    }

    pub fn standard_product(&self) -> &InnerProduct {
        self.data.form()
    }

    pub fn killing_product(&self) -> &InnerProduct {
        &self.killing
    }

    pub fn delta(&self) -> &WeightVector {
        self.data.delta()
    }

    pub fn dim_g(&self) -> u64 {
        self.dim_g
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    /// The positive root of greatest height.
    pub fn highest_root(&self) -> &WeightVector {
        let (i, _) = self
            .data
            .coefficients
            .iter()
            .enumerate()
            .max_by_key(|(_, c)| c.iter().sum::<i64>())
            .expect("nonempty root system");
        &self.data.positive[i]
    }

    pub fn is_dominant(&self, mu: &WeightVector) -> Result<bool> {
        self.data.is_dominant(mu)
    }

    pub fn dominant_representative(&self, mu: &WeightVector) -> Result<(WeightVector, WeylElement)> {
        self.data.dominant_representative(mu)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} positive roots, |W| = {})", self.cartan, self.data.positive.len(), self.weyl_order)
    }
}

/// All positive roots generated from the simple roots: the orbit of the simple
/// roots under simple reflections, computed on integer simple-root
/// coefficients and kept where all coefficients are non-negative.
fn generate_positive_roots(simple: &[WeightVector], form: &InnerProduct) -> Vec<WeightVector> {
    let r = simple.len();
    let cartan: Vec<Vec<i64>> = simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| i64::try_from(form.coroot_pairing(a, b).to_integer()).expect("Cartan entry"))
                .collect()
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut stack: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut c = vec![0; r];
            c[i] = 1;
            c
        })
        .collect();
    seen.extend(stack.iter().cloned());
    while let Some(c) = stack.pop() {
        for j in 0..r {
            let pairing: i64 = (0..r).map(|i| c[i] * cartan[i][j]).sum();
            if pairing == 0 {
                continue;
            }
            let mut d = c.clone();
            d[j] -= pairing;
            if seen.insert(d.clone()) {
                stack.push(d);
            }
        }
    }
    let dim = simple[0].dim();
    seen.into_iter()
        .filter(|c| c.iter().all(|&x| x >= 0))
        .map(|c| {
            c.iter()
                .zip(simple)
                .filter(|(k, _)| **k != 0)
                .fold(WeightVector::zero(dim), |acc, (&k, a)| &acc + &a.scale_int(k))
        })
        .collect()
}
