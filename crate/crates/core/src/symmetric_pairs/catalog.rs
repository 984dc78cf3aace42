use std::collections::HashSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{make_pair, PairMetadata, SpinSource, Structure, SymmetricPair};
use crate::error::{Error, Result};
use crate::linalg::WeightVector;
use crate::root_systems::{CartanType, Family, RootSystem};

/// One entry of a catalog file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub cartan: CartanType,
    pub compact_positive_roots: Vec<Vec<String>>,
    pub structure: Structure,
    pub kahler_also: bool,
    pub spin: bool,
    pub spin_source: SpinSource,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<SymmetricPair> {
        let ctx = |e: Error| Error::Catalog(format!("entry {:?}: {e}", self.name));
        let rs = RootSystem::build(self.cartan).map_err(ctx)?;
        let mut compact = Vec::with_capacity(self.compact_positive_roots.len());
        for (k, coords) in self.compact_positive_roots.iter().enumerate() {
            let root = WeightVector::parse(coords)
                .map_err(|e| Error::Catalog(format!("entry {:?}: compact_positive_roots[{k}]: {e}", self.name)))?;
            let idx = rs.data().index_of(&root).ok_or_else(|| {
                Error::Catalog(format!(
                    "entry {:?}: compact_positive_roots[{k}] = {root} is not a positive root of {}",
                    self.name, self.cartan
                ))
            })?;
            compact.push(idx);
        }
        let meta = PairMetadata {
            structure: self.structure,
            kahler_also: self.kahler_also,
            has_spin: self.spin,
            spin_source: self.spin_source,
        };
        make_pair(&self.name, rs, &compact, meta).map_err(ctx)
    }
}

/// Named symmetric pairs in a fixed order.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: Vec<SymmetricPair>,
}

fn meta(structure: Structure, kahler_also: bool, has_spin: bool, spin_source: SpinSource) -> PairMetadata {
    PairMetadata { structure, kahler_also, has_spin, spin_source }
}

/// `K` centralizes the `Sp₁` of the highest root `β`: compact roots are those
/// orthogonal to `β`, together with `β` itself.
fn wolf_space(name: &str, t: CartanType, meta: PairMetadata) -> Result<SymmetricPair> {
    let rs = RootSystem::build(t)?;
    let beta = rs.highest_root().clone();
    let form = rs.standard_product();
    let compact: Vec<usize> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, a)| **a == beta || form.pair(a, &beta).is_zero())
        .map(|(i, _)| i)
        .collect();
    make_pair(name, rs, &compact, meta)
}

/// `CPᵐ = SU_{m+1}/S(U₁×U_m)`: compact roots avoid the first coordinate.
fn projective_space(m: usize, has_spin: bool) -> Result<SymmetricPair> {
    let rs = RootSystem::build(CartanType::new(Family::A, m))?;
    let compact: Vec<usize> =
        rs.positive_roots().iter().enumerate().filter(|(_, a)| a.coords()[0].is_zero()).map(|(i, _)| i).collect();
    make_pair(&format!("CP{m}"), rs, &compact, meta(Structure::Kahler, false, has_spin, SpinSource::Asserted))
}

/// `F4/Spin9`: the compact roots are the integral ones.
fn cayley_plane() -> Result<SymmetricPair> {
    let rs = RootSystem::build(CartanType::new(Family::F, 4))?;
    let compact: Vec<usize> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.coords().iter().all(|c| c.is_integer()))
        .map(|(i, _)| i)
        .collect();
    make_pair("F4_Spin9", rs, &compact, meta(Structure::Spin9, false, true, SpinSource::PaperTable))
}

enum Recipe {
    Wolf(String, CartanType, PairMetadata),
    Cayley,
    Projective(usize, bool),
}

impl Recipe {
    fn name(&self) -> String {
        match self {
            Recipe::Wolf(name, ..) => name.clone(),
            Recipe::Cayley => "F4_Spin9".to_string(),
            Recipe::Projective(m, _) => format!("CP{m}"),
        }
    }

    fn build(&self) -> Result<SymmetricPair> {
        match self {
            Recipe::Wolf(name, t, meta) => wolf_space(name, *t, *meta),
            Recipe::Cayley => cayley_plane(),
            Recipe::Projective(m, spin) => projective_space(*m, *spin),
        }
    }
}

fn builtin_recipes() -> Vec<Recipe> {
    let qk = |spin: bool| meta(Structure::QuaternionKahler, false, spin, SpinSource::PaperTable);
    let qk_kahler = |spin: bool| meta(Structure::QuaternionKahler, true, spin, SpinSource::PaperTable);
    let mut out = Vec::new();
    for m in 1..=6 {
        out.push(Recipe::Wolf(format!("HP{m}"), CartanType::new(Family::C, m + 1), qk(true)));
    }
    for m in [2, 3, 4, 6, 8] {
        let spin = m % 2 == 0;
        out.push(Recipe::Wolf(format!("Gr2_C{}", m + 2), CartanType::new(Family::A, m + 1), qk_kahler(spin)));
    }
    for m in [4, 6, 8] {
        out.push(Recipe::Wolf(format!("Gr4_R{}", m + 4), CartanType::new(Family::D, (m + 4) / 2), qk(true)));
    }
    out.push(Recipe::Wolf("G2_SO4".into(), CartanType::new(Family::G, 2), qk(true)));
    out.push(Recipe::Wolf("E6_SU6SU2".into(), CartanType::new(Family::E, 6), qk(true)));
    out.push(Recipe::Wolf("E7_Spin12SU2".into(), CartanType::new(Family::E, 7), qk(true)));
    out.push(Recipe::Wolf("E8_E7SU2".into(), CartanType::new(Family::E, 8), qk(true)));
    out.push(Recipe::Cayley);
    out.push(Recipe::Projective(2, false));
    for m in [3, 5, 7] {
        out.push(Recipe::Projective(m, true));
    }
    out
}

impl Catalog {
    pub fn new(entries: Vec<SymmetricPair>) -> Result<Self> {
        let mut c = Self::default();
        for e in entries {
            if c.position(e.name()).is_some() {
                return Err(Error::Catalog(format!("duplicate entry name {:?}", e.name())));
            }
            c.entries.push(e);
        }
        Ok(c)
    }

    /// The built-in spaces: the spin Wolf spaces (plus the non-spin
    /// `Gr₂(C⁵)`), `F4/Spin9`, and complex projective spaces.
    pub fn builtin() -> Self {
        Self::build_builtin().expect("built-in catalog is valid")
    }

    fn build_builtin() -> Result<Self> {
        Self::new(builtin_recipes().iter().map(Recipe::build).collect::<Result<_>>()?)
    }

    /// Names of the built-in entries, in catalog order.
    pub fn builtin_names() -> Vec<String> {
        builtin_recipes().iter().map(Recipe::name).collect()
    }

    /// Builds a single built-in entry without constructing the others.
    pub fn builtin_entry(name: &str) -> Result<SymmetricPair> {
        builtin_recipes()
            .iter()
            .find(|r| r.name() == name)
            .ok_or_else(|| Error::UnknownSpace(name.to_string()))?
            .build()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SymmetricPair> {
        self.entries.iter()
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    fn position(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name() == name)
    }

    pub fn get(&self, name: &str) -> Result<&SymmetricPair> {
        self.position(name).map(|i| &self.entries[i]).ok_or_else(|| Error::UnknownSpace(name.to_string()))
    }

    /// Adds `entries`, replacing same-named ones in place and appending new ones.
    pub fn merge(&mut self, entries: Vec<SymmetricPair>) {
        for e in entries {
            match self.position(e.name()) {
                Some(i) => self.entries[i] = e,
                None => self.entries.push(e),
            }
        }
    }

    /// Parses and validates a catalog file (a JSON array of entries).
    pub fn parse_entries(text: &str) -> Result<Vec<SymmetricPair>> {
        let raw: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(raw.len());
        for e in &raw {
            if !seen.insert(e.name.as_str()) {
                return Err(Error::Catalog(format!("duplicate entry name {:?}", e.name)));
            }
            out.push(e.build()?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<CatalogEntry> = self.entries.iter().map(|e| e.to_entry()).collect();
        serde_json::to_string_pretty(&entries).expect("catalog serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn builtin_contents() {
        let c = Catalog::builtin();
        let f4 = c.get("F4_Spin9").unwrap();
        assert_eq!(f4.n_dim(), 16);
        assert!(f4.has_spin());
        assert!(c.get("Gr2_C6").unwrap().has_spin());
        assert!(!c.get("Gr2_C5").unwrap().has_spin());
        assert!(c.get("F4_Sp3SU2").is_err());
        for m in 1..=6 {
            assert_eq!(c.get(&format!("HP{m}")).unwrap().n_dim(), 4 * m);
        }
        assert_eq!(c.get("E8_E7SU2").unwrap().n_dim(), 112);
        assert_eq!(c.get("E7_Spin12SU2").unwrap().n_dim(), 64);
        assert_eq!(c.get("E6_SU6SU2").unwrap().n_dim(), 40);
        assert_eq!(c.get("Gr4_R12").unwrap().n_dim(), 32);
        assert_eq!(c.get("CP5").unwrap().n_dim(), 10);
        let names = c.names();
        let unique: HashSet<&str> = names.iter().copied().collect();
        assert_eq!(unique.len(), names.len());
        assert_eq!(Catalog::builtin_names(), names);
    }

    #[test]
    fn single_builtin_entry() {
        let c = Catalog::builtin();
        for name in ["HP3", "G2_SO4", "F4_Spin9", "CP5"] {
            let p = Catalog::builtin_entry(name).unwrap();
            assert_eq!(p.to_entry(), c.get(name).unwrap().to_entry());
        }
        assert!(matches!(Catalog::builtin_entry("HP9"), Err(Error::UnknownSpace(_))));
    }

    #[test]
    fn hp_noncompact_roots() {
        let c = Catalog::builtin();
        for m in 1..=4 {
            let p = c.get(&format!("HP{m}")).unwrap();
            let nc = p.noncompact_roots();
            assert_eq!(nc.len(), 2 * m);
            for a in nc {
                assert_eq!(a.coords()[0], rat(1, 1));
                assert_eq!(a.coords()[1..].iter().filter(|x| !x.is_zero()).count(), 1);
            }
        }
    }

    #[test]
    fn g2_pair_matches_listing() {
        let c = Catalog::builtin();
        let p = c.get("G2_SO4").unwrap();
        let k: Vec<WeightVector> = p.compact_roots().into_iter().cloned().collect();
        assert_eq!(k, vec![WeightVector::from_ints(&[0, 2]), WeightVector::from_ints(&[2, 0])]);
        let mut nc: Vec<WeightVector> = p.noncompact_roots().into_iter().cloned().collect();
        nc.sort();
        let mut expected: Vec<WeightVector> =
            [[-3, 1], [-1, 1], [1, 1], [3, 1]].iter().map(|c| WeightVector::from_ints(c)).collect();
        expected.sort();
        assert_eq!(nc, expected);
        assert_eq!(p.delta_k(), &WeightVector::from_ints(&[1, 1]));
        assert_eq!(p.m(), 4);
    }

    #[test]
    fn json_round_trip() {
        let c = Catalog::builtin();
        let text = c.to_json();
        let back = Catalog::parse_entries(&text).unwrap();
        assert_eq!(back.len(), c.len());
        for (a, b) in back.iter().zip(c.iter()) {
            assert_eq!(a.to_entry(), b.to_entry());
            assert_eq!(a.delta_k(), b.delta_k());
        }
    }

    #[test]
    fn file_errors_are_reported() {
        assert!(matches!(Catalog::parse_entries("[{]"), Err(Error::Catalog(_))));
        let c = Catalog::builtin();
        let mut e = c.get("F4_Spin9").unwrap().to_entry();
        e.compact_positive_roots.retain(|r| r != &["0", "0", "0", "1"]);
        let text = serde_json::to_string(&vec![e]).unwrap();
        let err = Catalog::parse_entries(&text).unwrap_err().to_string();
        assert!(err.contains("closure"), "{err}");
        assert!(err.contains("(0, 0, 1, -1)") && err.contains("(0, 0, 0, 1)"), "{err}");

        let mut e = c.get("HP1").unwrap().to_entry();
        e.compact_positive_roots.push(vec!["5".into(), "0".into()]);
        let err = Catalog::parse_entries(&serde_json::to_string(&vec![e]).unwrap()).unwrap_err().to_string();
        assert!(err.contains("not a positive root"), "{err}");
    }

    #[test]
    fn merge_shadows_by_name() {
        let mut c = Catalog::builtin();
        let n = c.len();
        let mut e = c.get("HP1").unwrap().to_entry();
        e.spin = false;
        let mut extra = c.get("HP1").unwrap().to_entry();
        extra.name = "S4".into();
        c.merge(Catalog::parse_entries(&serde_json::to_string(&vec![e, extra]).unwrap()).unwrap());
        assert_eq!(c.len(), n + 1);
        assert!(!c.get("HP1").unwrap().has_spin());
        assert_eq!(c.names()[0], "HP1");
        assert!(c.get("S4").is_ok());
    }
}
