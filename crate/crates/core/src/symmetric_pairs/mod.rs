//! Equal-rank symmetric pairs `(G,K)` described by a root system of `G` and
//! the subset of its positive roots that are compact.

mod catalog;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use catalog::{Catalog, CatalogEntry};

use crate::error::{Error, Result};
use crate::linalg::{rat, WeightVector};
use crate::root_systems::{RootData, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    None,
    Kahler,
    QuaternionKahler,
    Spin9,
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::None => "none",
            Structure::Kahler => "kahler",
            Structure::QuaternionKahler => "quaternion_kahler",
            Structure::Spin9 => "spin9",
        })
    }
}

/// Where the spin flag of a catalog entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinSource {
    PaperTable,
    Asserted,
}

impl fmt::Display for SpinSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinSource::PaperTable => "paper_table",
            SpinSource::Asserted => "asserted",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairMetadata {
    pub structure: Structure,
    pub kahler_also: bool,
    pub has_spin: bool,
    pub spin_source: SpinSource,
}

impl PairMetadata {
    pub fn is_kahler(&self) -> bool {
        self.structure == Structure::Kahler || self.kahler_also
    }

    pub fn is_quaternion_kahler(&self) -> bool {
        self.structure == Structure::QuaternionKahler
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RootClass {
    Compact,
    Noncompact,
}

#[derive(Clone, Debug)]
pub struct SymmetricPair {
    name: String,
    rs: RootSystem,
    compact: Vec<usize>,
    noncompact: Vec<usize>,
    k_data: RootData,
    delta_k: WeightVector,
    delta_p: WeightVector,
    meta: PairMetadata,
}

/// Validates and assembles a symmetric pair from the indices (into
/// `rs.positive_roots()`) of the compact positive roots.
pub fn make_pair(name: &str, rs: RootSystem, compact: &[usize], meta: PairMetadata) -> Result<SymmetricPair> {
    let pos = rs.positive_roots();
    let mut is_compact = vec![false; pos.len()];
    for &i in compact {
        if i >= pos.len() {
            return Err(Error::InvalidPair(format!("{name}: root index {i} out of range")));
        }
        if is_compact[i] {
            return Err(Error::InvalidPair(format!("{name}: root {} listed twice", pos[i])));
        }
        is_compact[i] = true;
    }
    let class = |i: usize| if is_compact[i] { RootClass::Compact } else { RootClass::Noncompact };
    for i in 0..pos.len() {
        for j in i..pos.len() {
            let sum = &pos[i] + &pos[j];
            let Some(k) = rs.data().index_of(&sum) else { continue };
            let expected = if class(i) == class(j) { RootClass::Compact } else { RootClass::Noncompact };
            if class(k) != expected {
                return Err(Error::ClosureViolation {
                    a: pos[i].to_string(),
                    b: pos[j].to_string(),
                    sum: sum.to_string(),
                    detail: format!("{:?} + {:?} gave {:?} in {name}", class(i), class(j), class(k)),
                });
            }
        }
    }
    let compact: Vec<usize> = (0..pos.len()).filter(|&i| is_compact[i]).collect();
    let noncompact: Vec<usize> = (0..pos.len()).filter(|&i| !is_compact[i]).collect();
    if noncompact.is_empty() {
        return Err(Error::InvalidPair(format!("{name}: no noncompact roots")));
    }
    let dim = rs.ambient_dim();
    let k_roots: Vec<WeightVector> = compact.iter().map(|&i| pos[i].clone()).collect();
    let k_data = RootData::from_positive_roots(dim, k_roots, rs.standard_product().clone(), None)?;
    let delta_k = k_data.delta().clone();
    let delta_p = WeightVector::sum(dim, noncompact.iter().map(|&i| &pos[i])).scale(&rat(1, 2));
    if &(&delta_k + &delta_p) != rs.delta() {
        return Err(Error::BadHalfSums(format!("{name}: δ_K + δ_p ≠ δ_G")));
    }
    let form = rs.standard_product();
    for t in k_data.simple_roots() {
        if form.pair(&delta_k, t) / form.norm_sq(t) != rat(1, 2) {
            return Err(Error::BadHalfSums(format!("{name}: 2⟨δ_K,θ⟩/⟨θ,θ⟩ ≠ 1 for θ = {t}")));
        }
    }
    Ok(SymmetricPair { name: name.to_string(), rs, compact, noncompact, k_data, delta_k, delta_p, meta })
}

impl SymmetricPair {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Indices of the compact positive roots.
    pub fn compact_indices(&self) -> &[usize] {
        &self.compact
    }

    pub fn compact_roots(&self) -> Vec<&WeightVector> {
        self.compact.iter().map(|&i| &self.rs.positive_roots()[i]).collect()
    }

    /// `α₁,…,α_m` in lexicographic order.
    pub fn noncompact_roots(&self) -> Vec<&WeightVector> {
        self.noncompact.iter().map(|&i| &self.rs.positive_roots()[i]).collect()
    }

    pub fn is_compact_root(&self, root: &WeightVector) -> bool {
        let data = self.rs.data();
        match data.index_of(root).or_else(|| data.index_of(&-root)) {
            Some(i) => self.compact.binary_search(&i).is_ok(),
            None => false,
        }
    }

    /// Root data of `K` (standard form of `G`).
    pub fn k_data(&self) -> &RootData {
        &self.k_data
    }

    pub fn delta_g(&self) -> &WeightVector {
        self.rs.delta()
    }

    pub fn delta_k(&self) -> &WeightVector {
        &self.delta_k
    }

    pub fn delta_p(&self) -> &WeightVector {
        &self.delta_p
    }

    /// Real dimension of `G/K`.
    pub fn n_dim(&self) -> usize {
        2 * self.noncompact.len()
    }

    /// Number of positive noncompact roots, `n/2`.
    pub fn m(&self) -> usize {
        self.noncompact.len()
    }

    pub fn metadata(&self) -> &PairMetadata {
        &self.meta
    }

    pub fn structure(&self) -> Structure {
        self.meta.structure
    }

    pub fn has_spin(&self) -> bool {
        self.meta.has_spin
    }

    pub fn require_spin(&self) -> Result<()> {
        if self.meta.has_spin {
            Ok(())
        } else {
            Err(Error::NotSpin(self.name.clone()))
        }
    }

    /// The same space with a different name and metadata.
    pub fn renamed(&self, name: &str, meta: PairMetadata) -> Self {
        Self { name: name.to_string(), meta, ..self.clone() }
    }

    /// Catalog-file form of this entry.
    pub fn to_entry(&self) -> CatalogEntry {
        CatalogEntry {
            name: self.name.clone(),
            cartan: self.rs.cartan(),
            compact_positive_roots: self.compact_roots().iter().map(|r| r.to_strings()).collect(),
            structure: self.meta.structure,
            kahler_also: self.meta.kahler_also,
            spin: self.meta.has_spin,
            spin_source: self.meta.spin_source,
        }
    }
}

/// `(Φ_K⁺, Φ_p⁺)`, the latter in its fixed order `α₁…α_m`.
pub fn classify_roots(p: &SymmetricPair) -> (Vec<WeightVector>, Vec<WeightVector>) {
    (p.compact_roots().into_iter().cloned().collect(), p.noncompact_roots().into_iter().cloned().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_systems::{CartanType, Family};

    fn meta() -> PairMetadata {
        PairMetadata {
            structure: Structure::None,
            kahler_also: false,
            has_spin: true,
            spin_source: SpinSource::PaperTable,
        }
    }

    fn f4() -> RootSystem {
        RootSystem::build(CartanType::new(Family::F, 4)).unwrap()
    }

    fn integral_indices(rs: &RootSystem) -> Vec<usize> {
        (0..rs.positive_roots().len())
            .filter(|&i| rs.positive_roots()[i].coords().iter().all(|c| c.is_integer()))
            .collect()
    }

    #[test]
    fn f4_spin9_pair() {
        let rs = f4();
        let compact = integral_indices(&rs);
        let p = make_pair("F4", rs, &compact, meta()).unwrap();
        assert_eq!(p.m(), 8);
        assert_eq!(p.n_dim(), 16);
        assert_eq!(p.delta_k(), &WeightVector::from_scaled(&[7, 5, 3, 1], 2));
        assert_eq!(p.delta_p(), &WeightVector::from_ints(&[2, 0, 0, 0]));
        let (k, nc) = classify_roots(&p);
        assert_eq!(k.len(), 16);
        assert!(nc.iter().all(|a| a.coords()[0] == rat(1, 2)));
    }

    #[test]
    fn missing_compact_root_breaks_closure() {
        let rs = f4();
        let e4 = rs.data().index_of(&WeightVector::from_ints(&[0, 0, 0, 1])).unwrap();
        let compact: Vec<usize> = integral_indices(&rs).into_iter().filter(|&i| i != e4).collect();
        assert!(matches!(make_pair("bad", rs, &compact, meta()), Err(Error::ClosureViolation { .. })));
    }

    #[test]
    fn rejects_bad_indices_and_empty_p() {
        let rs = f4();
        assert!(matches!(make_pair("x", rs.clone(), &[99], meta()), Err(Error::InvalidPair(_))));
        assert!(matches!(make_pair("x", rs.clone(), &[0, 0], meta()), Err(Error::InvalidPair(_))));
        let all: Vec<usize> = (0..24).collect();
        assert!(make_pair("x", rs, &all, meta()).is_err());
    }

    #[test]
    fn compactness_lookup_handles_negatives() {
        let rs = f4();
        let compact = integral_indices(&rs);
        let p = make_pair("F4", rs, &compact, meta()).unwrap();
        assert!(p.is_compact_root(&WeightVector::from_ints(&[0, -1, 0, 0])));
        assert!(p.is_compact_root(&WeightVector::from_ints(&[1, 0, 0, -1])));
        assert!(!p.is_compact_root(&WeightVector::from_scaled(&[-1, -1, 1, 1], 2)));
        assert!(!p.is_compact_root(&WeightVector::from_ints(&[3, 0, 0, 0])));
    }
}
