//! Higher Casimir eigenvalues of `Spin9` on the three components of the spin
//! representation of `F4/Spin9`, via conformal weights of `V(β) ⊗ R⁹`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{int, InnerProduct, Rational, WeightVector};
use crate::root_systems::{
    klimyk_tensor, weyl_dimension, CartanType, Family, IrrepDescriptor, RootSystem, DEFAULT_WEIGHT_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spin9Component {
    pub highest_weight: WeightVector,
    pub dim: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalRow {
    pub lambda: WeightVector,
    pub mult: u64,
    pub m_val: Rational,
    pub dim: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalWeightTable {
    pub base: WeightVector,
    pub base_dim: BigInt,
    pub rows: Vec<ConformalRow>,
}

impl ConformalWeightTable {
    pub fn multiplicity_free(&self) -> bool {
        self.rows.iter().all(|r| r.mult == 1)
    }

    /// `c_{β,k} = (1/d(β)) Σ mult·(−m(λ))^k·d(λ)`.
    pub fn casimir(&self, k: u32) -> Rational {
        let sum: Rational = self
            .rows
            .iter()
            .map(|r| num_traits::pow(-r.m_val.clone(), k as usize) * Rational::from_integer(&r.dim * r.mult))
            .sum();
        sum / Rational::from_integer(self.base_dim.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirTable {
    pub orders: Vec<u32>,
    pub components: Vec<Spin9Component>,
    /// `values[i][j] = c_{β_i, orders[j]}`.
    pub values: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Argmin {
    Unique(WeightVector),
    Tie(Vec<WeightVector>),
}

fn b4() -> Result<RootSystem> {
    RootSystem::build(CartanType::new(Family::B, 4))
}

/// The standard norm `Σ μ_i²` on weights of `SO9` (not the Killing norm).
pub fn so9_standard_norm() -> InnerProduct {
    InnerProduct::identity(4)
}

/// `β₁ = ½(3,1,1,1)`, `β₂ = (1,1,1,0)`, `β₃ = (2,0,0,0)` with their dimensions.
pub fn spin9_components() -> Result<Vec<Spin9Component>> {
    let rs = b4()?;
    [
        WeightVector::from_scaled(&[3, 1, 1, 1], 2),
        WeightVector::from_ints(&[1, 1, 1, 0]),
        WeightVector::from_ints(&[2, 0, 0, 0]),
    ]
    .into_iter()
    .map(|hw| {
        let dim = weyl_dimension(&IrrepDescriptor::new(rs.data(), hw.clone())?);
        Ok(Spin9Component { highest_weight: hw, dim })
    })
    .collect()
}

/// Components of `V(β) ⊗ V(e₁)` with conformal weights
/// `m(λ) = ½(9 − ‖δ_K+λ‖² + ‖δ_K+β‖² − 1)` in the standard norm.
pub fn conformal_weights(beta: &WeightVector) -> Result<ConformalWeightTable> {
    let rs = b4()?;
    let data = rs.data();
    let norm = so9_standard_norm();
    let delta = data.delta();
    let base = IrrepDescriptor::new(data, beta.clone())?;
    let vector = IrrepDescriptor::new(data, WeightVector::unit(4, 0))?;
    let base_dim = weyl_dimension(&base);
    let shift = norm.norm_sq(&(delta + beta));
    let mut rows = Vec::new();
    let mut total = BigInt::zero();
    for (lambda, mult) in klimyk_tensor(&base, &vector, DEFAULT_WEIGHT_CAP)? {
        let dim = weyl_dimension(&IrrepDescriptor::new(data, lambda.clone())?);
        total += &dim * mult;
        let m_val = (int(9) - norm.norm_sq(&(delta + &lambda)) + &shift - int(1)) / int(2);
        rows.push(ConformalRow { lambda, mult, m_val, dim });
    }
    if total != &base_dim * 9 {
        return Err(Error::Assertion(format!("V({beta}) ⊗ R⁹ has total dimension {total}, expected 9·{base_dim}")));
    }
    Ok(ConformalWeightTable { base: beta.clone(), base_dim, rows })
}

pub fn higher_casimir(beta: &WeightVector, k: u32) -> Result<Rational> {
    Ok(conformal_weights(beta)?.casimir(k))
}

/// `c_{β_i,k}` for the three spin components and every requested order.
pub fn casimir_table(orders: &[u32]) -> Result<CasimirTable> {
    let components = spin9_components()?;
    let mut values = Vec::with_capacity(components.len());
    for c in &components {
        let table = conformal_weights(&c.highest_weight)?;
        if !table.multiplicity_free() {
            return Err(Error::Assertion(format!("V({}) ⊗ R⁹ is not multiplicity free", c.highest_weight)));
        }
        values.push(orders.iter().map(|&k| table.casimir(k)).collect());
    }
    Ok(CasimirTable { orders: orders.to_vec(), components, values })
}

/// The component minimizing `c_{β,k}`, or all tied minimizers.
pub fn casimir_argmin(k: u32) -> Result<Argmin> {
    let t = casimir_table(&[k])?;
    let min = t.values.iter().map(|v| v[0].clone()).min().expect("three components");
    let best: Vec<WeightVector> = t
        .components
        .iter()
        .zip(&t.values)
        .filter(|(_, v)| v[0] == min)
        .map(|(c, _)| c.highest_weight.clone())
        .collect();
    Ok(if best.len() == 1 { Argmin::Unique(best.into_iter().next().expect("one")) } else { Argmin::Tie(best) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn components_and_dimensions() {
        let c = spin9_components().unwrap();
        let dims: Vec<BigInt> = c.iter().map(|x| x.dim.clone()).collect();
        assert_eq!(dims, [128, 84, 44].map(BigInt::from).to_vec());
        // Λ³R⁹ and traceless S²R⁹
        assert_eq!(c[1].dim, BigInt::from(9 * 8 * 7 / 6));
        assert_eq!(c[2].dim, BigInt::from(9 * 10 / 2 - 1));
        assert_eq!(b4().unwrap().delta(), &WeightVector::from_scaled(&[7, 5, 3, 1], 2));
    }

    #[test]
    fn conformal_rows() {
        let t3 = conformal_weights(&WeightVector::from_ints(&[2, 0, 0, 0])).unwrap();
        assert!(t3.rows.iter().any(|r| r.lambda == WeightVector::from_ints(&[3, 0, 0, 0])));
        // Λ³R⁹ ⊗ R⁹ = V(2,1,1,0) ⊕ Λ⁴R⁹ ⊕ Λ²R⁹: 594 + 126 + 36 = 756, no copy of Λ³R⁹
        let beta2 = WeightVector::from_ints(&[1, 1, 1, 0]);
        let t2 = conformal_weights(&beta2).unwrap();
        assert!(t2.rows.iter().all(|r| r.lambda != beta2));
        let dims: Vec<BigInt> = t2.rows.iter().map(|r| r.dim.clone()).collect();
        let mut sorted = dims.clone();
        sorted.sort();
        assert_eq!(sorted, [36, 126, 594].map(BigInt::from).to_vec());
        // the spinor component does contain itself, and that row has m = (9−1)/2
        let beta1 = WeightVector::from_scaled(&[3, 1, 1, 1], 2);
        let t1 = conformal_weights(&beta1).unwrap();
        let own = t1.rows.iter().find(|r| r.lambda == beta1).unwrap();
        assert_eq!(own.m_val, int(4));
        for t in [&t1, &t2, &t3] {
            let total: BigInt = t.rows.iter().map(|r| &r.dim * r.mult).sum();
            assert_eq!(total, &t.base_dim * 9);
        }
    }

    #[test]
    fn table_values() {
        let t = casimir_table(&[0, 1, 2, 3, 4]).unwrap();
        for row in &t.values {
            assert_eq!(row[0], int(9));
            assert_eq!(row[1], int(0));
            assert_eq!(row[2], int(36));
            assert_eq!(row[3], int(-126));
        }
        let c4: Vec<Rational> = t.values.iter().map(|r| r[4].clone()).collect();
        assert_eq!(c4, vec![rat(1863, 2), int(684), int(1404)]);
    }

    #[test]
    fn argmin() {
        assert_eq!(casimir_argmin(4).unwrap(), Argmin::Unique(WeightVector::from_ints(&[1, 1, 1, 0])));
        assert!(matches!(casimir_argmin(2).unwrap(), Argmin::Tie(v) if v.len() == 3));
        assert!(matches!(casimir_argmin(0).unwrap(), Argmin::Tie(v) if v.len() == 3));
    }

    #[test]
    fn general_weight_is_accepted() {
        let t = conformal_weights(&WeightVector::from_ints(&[1, 0, 0, 0])).unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.casimir(0), int(9));
    }
}
