use std::collections::{HashSet, VecDeque};

use super::{RootData, RootSystem};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, WeightVector};

/// An element of the Weyl group, carried as a (1-based) word in the simple
/// reflections together with its matrix on the ambient coordinates.
/// The word `[i₁,…,i_k]` denotes `s_{i₁}⋯s_{i_k}`. Equality is by matrix.
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    matrix: Matrix,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        Self { word: Vec::new(), matrix: Matrix::identity(dim) }
    }

    pub fn from_word(data: &RootData, word: Vec<usize>) -> Self {
        let gens = generators(data);
        let matrix = word.iter().fold(Matrix::identity(data.ambient_dim()), |m, &i| m.mul(&gens[i - 1]));
        Self { word, matrix }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn apply(&self, v: &WeightVector) -> WeightVector {
        self.matrix.apply(v)
    }

    pub fn inverse(&self, data: &RootData) -> Self {
        let mut w = self.word.clone();
        w.reverse();
        Self::from_word(data, w)
    }

    /// `det w = (-1)^{ℓ(w)}`.
    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn generators(data: &RootData) -> Vec<Matrix> {
    data.simple_roots().iter().map(|a| Matrix::reflection(data.form(), a)).collect()
}

/// Every element of `W`, breadth-first over the simple reflections, in
/// shortlex order of their minimal words. Fails with `CapExceeded` when
/// `|W| > cap`.
pub fn enumerate_weyl(rs: &RootSystem, cap: u64) -> Result<Vec<WeylElement>> {
    if rs.weyl_order() > cap {
        return Err(Error::CapExceeded {
            what: format!("Weyl group of {}", rs.cartan()),
            needed: rs.weyl_order().to_string(),
            cap,
        });
    }
    let data = rs.data();
    let gens = generators(data);
    let id = WeylElement::identity(data.ambient_dim());
    let mut seen: HashSet<Matrix> = HashSet::from([id.matrix.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let m = w.matrix.mul(g);
            if seen.insert(m.clone()) {
                let mut word = w.word.clone();
                word.push(i + 1);
                let e = WeylElement { word, matrix: m };
                out.push(e.clone());
                queue.push_back(e);
            }
        }
    }
    out.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
    Ok(out)
}

/// Size of the orbit of `(1,…,1)` in Dynkin labels under the Weyl group of
/// the given Cartan matrix, which is `|W|` since that weight is regular.
/// Works on integer labels; an empty matrix gives 1.
pub fn orbit_size_of_rho(cartan: &[Vec<i64>], cap: u64) -> Result<u64> {
    let r = cartan.len();
    let start = vec![1i64; r];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for i in 0..r {
            let li = v[i];
            let next: Vec<i64> = (0..r).map(|j| v[j] - li * cartan[i][j]).collect();
            if !seen.contains(&next) {
                seen.insert(next.clone());
                if seen.len() as u64 > cap {
                    return Err(Error::CapExceeded { what: "Weyl orbit".into(), needed: format!(">{cap}"), cap });
                }
                stack.push(next);
            }
        }
    }
    Ok(seen.len() as u64)
}

#[cfg(test)]
mod tests {
    use super::super::{CartanType, Family};
    use super::*;

    #[test]
    fn small_group_orders() {
        for (f, r, n) in [(Family::A, 1, 2), (Family::G, 2, 12), (Family::B, 3, 48), (Family::F, 4, 1152)] {
            let rs = RootSystem::build(CartanType::new(f, r)).unwrap();
            let all = enumerate_weyl(&rs, 1_000_000).unwrap();
            assert_eq!(all.len(), n);
            let distinct: HashSet<&Matrix> = all.iter().map(|w| w.matrix()).collect();
            assert_eq!(distinct.len(), n);
        }
    }

    #[test]
    fn enumeration_is_shortlex_and_matrices_match_words() {
        let rs = RootSystem::build(CartanType::new(Family::G, 2)).unwrap();
        let all = enumerate_weyl(&rs, 100).unwrap();
        assert!(all[0].is_empty());
        for pair in all.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!((a.len(), a.word()) < (b.len(), b.word()));
        }
        for w in &all {
            let v = WeightVector::from_ints(&[5, 7]);
            assert_eq!(w.apply(&v), rs.data().apply_word(w.word(), &v));
            // each element preserves the form and permutes the roots
            let p = rs.standard_product();
            assert_eq!(p.pair(&w.apply(&v), &w.apply(&v)), p.pair(&v, &v));
            let roots: HashSet<WeightVector> = rs.data().all_roots().into_iter().collect();
            assert!(rs.positive_roots().iter().all(|a| roots.contains(&w.apply(a))));
            assert_eq!(w.inverse(rs.data()).matrix().mul(w.matrix()), Matrix::identity(2));
        }
        // longest element of G2 has length 6
        assert_eq!(all.last().unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let e7 = RootSystem::build(CartanType::new(Family::E, 7)).unwrap();
        assert!(matches!(enumerate_weyl(&e7, 1_000_000), Err(Error::CapExceeded { .. })));
        let g2 = RootSystem::build(CartanType::new(Family::G, 2)).unwrap();
        assert!(enumerate_weyl(&g2, 11).is_err());
    }

    #[test]
    fn orbit_count_matches_closed_formula() {
        for (f, r) in [(Family::A, 4), (Family::B, 4), (Family::C, 4), (Family::D, 5), (Family::E, 6), (Family::F, 4)] {
            let rs = RootSystem::build(CartanType::new(f, r)).unwrap();
            assert_eq!(orbit_size_of_rho(&rs.data().cartan_matrix(), u64::MAX).unwrap(), rs.weyl_order());
        }
        assert_eq!(orbit_size_of_rho(&[], 10).unwrap(), 1);
    }
}
