use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RootData;
use crate::error::{Error, Result};
use crate::linalg::{int, InnerProduct, Rational, WeightVector};

/// Irreducible representation given by a dominant integral highest weight.
#[derive(Clone, Debug)]
pub struct IrrepDescriptor<'a> {
    pub data: &'a RootData,
    pub highest_weight: WeightVector,
}

impl<'a> IrrepDescriptor<'a> {
    pub fn new(data: &'a RootData, highest_weight: WeightVector) -> Result<Self> {
        if !data.is_dominant(&highest_weight)? {
            return Err(Error::NotDominant(highest_weight.to_string()));
        }
        if !data.is_integral(&highest_weight)? {
            return Err(Error::NotIntegral(highest_weight.to_string()));
        }
        Ok(Self { data, highest_weight })
    }
}

/// Weyl dimension formula `∏_{α>0} ⟨λ+δ,α⟩/⟨δ,α⟩`.
pub fn weyl_dimension(ir: &IrrepDescriptor<'_>) -> BigInt {
    let data = ir.data;
    let form = data.form();
    let shifted = &ir.highest_weight + data.delta();
    let d = data
        .positive_roots()
        .iter()
        .fold(Rational::one(), |acc, a| acc * form.pair(&shifted, a) / form.pair(data.delta(), a));
    assert!(d.is_integer() && d.is_positive(), "Weyl dimension {d} is not a positive integer");
    d.to_integer()
}

/// Dominant weights `μ ≤ λ`, generated by repeatedly subtracting positive
/// roots while staying dominant.
fn dominant_weights_below(data: &RootData, lambda: &WeightVector) -> Vec<WeightVector> {
    let mut seen: HashSet<WeightVector> = HashSet::from([lambda.clone()]);
    let mut stack = vec![lambda.clone()];
    while let Some(mu) = stack.pop() {
        for a in data.positive_roots() {
            let nu = &mu - a;
            if !seen.contains(&nu) && data.is_dominant(&nu).expect("dimension") {
                seen.insert(nu.clone());
                stack.push(nu);
            }
        }
    }
    seen.into_iter().collect()
}

/// Multiplicities of the dominant weights, by Freudenthal's recursion.
fn dominant_multiplicities(data: &RootData, lambda: &WeightVector) -> Vec<(WeightVector, u64)> {
    let form: &InnerProduct = data.form();
    let delta = data.delta();
    let shifted_norm = |mu: &WeightVector| form.norm_sq(&(mu + delta));
    let mut doms = dominant_weights_below(data, lambda);
    let mut keyed: Vec<(Rational, WeightVector)> = doms.drain(..).map(|m| (shifted_norm(&m), m)).collect();
    // ν > μ dominant implies ‖ν+δ‖ > ‖μ+δ‖, so this order computes every
    // needed multiplicity before it is used.
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let top = shifted_norm(lambda);
    let mut mult: HashMap<WeightVector, u64> = HashMap::new();
    let mut out = Vec::with_capacity(keyed.len());
    for (norm, mu) in keyed {
        let m = if &mu == lambda {
            1
        } else {
            let denom = &top - &norm;
            assert!(denom.is_positive(), "Freudenthal denominator vanished at {mu}");
            let mut acc = Rational::zero();
            for a in data.positive_roots() {
                let mut k = 1;
                loop {
                    let nu = &mu + &a.scale_int(k);
                    let (dom, _) = data.dominant_chamber(&nu);
                    match mult.get(&dom) {
                        Some(&mnu) => acc += int(mnu as i64) * form.pair(&nu, a),
                        None => break,
                    }
                    k += 1;
                }
            }
            let val = int(2) * acc / denom;
            assert!(val.is_integer() && !val.is_negative(), "non-integral multiplicity at {mu}");
            val.to_integer().to_u64().expect("multiplicity fits u64")
        };
        mult.insert(mu.clone(), m);
        out.push((mu, m));
    }
    out
}

/// Full weight system of `ir` with multiplicities (Freudenthal on dominant
/// weights, extended by W-orbits). Fails if the dimension exceeds `cap`.
pub fn weight_multiplicities(ir: &IrrepDescriptor<'_>, cap: u64) -> Result<BTreeMap<WeightVector, u64>> {
    let dim = weyl_dimension(ir);
    if dim > BigInt::from(cap) {
        return Err(Error::CapExceeded {
            what: format!("weight system of V({})", ir.highest_weight),
            needed: dim.to_string(),
            cap,
        });
    }
    let mut out = BTreeMap::new();
    for (mu, m) in dominant_multiplicities(ir.data, &ir.highest_weight) {
        if m == 0 {
            continue;
        }
        for w in ir.data.orbit(&mu) {
            out.insert(w, m);
        }
    }
    Ok(out)
}

/// Tensor product decomposition by Klimyk's formula: for each weight `π` of
/// `b`, reflect `λ_a + π + δ` to the dominant chamber with sign `det w`,
/// dropping singular ones. Returns highest weights with multiplicities.
pub fn klimyk_tensor(
    a: &IrrepDescriptor<'_>,
    b: &IrrepDescriptor<'_>,
    cap: u64,
) -> Result<BTreeMap<WeightVector, u64>> {
    let data = a.data;
    let delta = data.delta();
    let form = data.form();
    let simple = data.simple_roots();
    let shifted = &a.highest_weight + delta;
    let mut acc: BTreeMap<WeightVector, i64> = BTreeMap::new();
    for (pi, m) in weight_multiplicities(b, cap)? {
        let (nu, word) = data.dominant_chamber(&(&shifted + &pi));
        if simple.iter().any(|s| form.pair(&nu, s).is_zero()) {
            continue;
        }
        let sign = if word.len() % 2 == 0 { 1 } else { -1 };
        *acc.entry(&nu - delta).or_default() += sign * m as i64;
    }
    let mut out = BTreeMap::new();
    for (w, m) in acc {
        match m {
            0 => {}
            m if m > 0 => {
                out.insert(w, m as u64);
            }
            m => return Err(Error::Assertion(format!("Klimyk left multiplicity {m} at {w}"))),
        }
    }
    Ok(out)
}

/// Casimir eigenvalue `⟨λ+2δ,λ⟩` for the given form.
pub fn casimir_eigenvalue(p: &InnerProduct, lambda: &WeightVector, delta: &WeightVector) -> Result<Rational> {
    let two_delta = delta.scale_int(2);
    p.inner(&lambda.checked_add(&two_delta)?, lambda)
}

#[cfg(test)]
mod tests {
    use super::super::{CartanType, Family, RootSystem};
    use super::*;
    use crate::linalg::rat;

    fn b4() -> RootSystem {
        RootSystem::build(CartanType::new(Family::B, 4)).unwrap()
    }

    fn dim(rs: &RootSystem, hw: WeightVector) -> BigInt {
        weyl_dimension(&IrrepDescriptor::new(rs.data(), hw).unwrap())
    }

    #[test]
    fn b4_dimensions() {
        let rs = b4();
        assert_eq!(dim(&rs, WeightVector::zero(4)), BigInt::from(1));
        assert_eq!(dim(&rs, WeightVector::from_ints(&[1, 0, 0, 0])), BigInt::from(9));
        let spin = [
            dim(&rs, WeightVector::from_ints(&[1, 1, 1, 0])),
            dim(&rs, WeightVector::from_ints(&[2, 0, 0, 0])),
            dim(&rs, WeightVector::from_scaled(&[3, 1, 1, 1], 2)),
        ];
        assert_eq!(spin, [BigInt::from(84), BigInt::from(44), BigInt::from(128)]);
        assert_eq!(spin.iter().sum::<BigInt>(), BigInt::from(256));
    }

    #[test]
    fn descriptor_validation() {
        let rs = b4();
        assert!(matches!(
            IrrepDescriptor::new(rs.data(), WeightVector::from_ints(&[0, 1, 0, 0])),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            IrrepDescriptor::new(rs.data(), WeightVector::from_scaled(&[1, 0, 0, 0], 2)),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn vector_representation_weights() {
        let rs = b4();
        let ir = IrrepDescriptor::new(rs.data(), WeightVector::from_ints(&[1, 0, 0, 0])).unwrap();
        let w = weight_multiplicities(&ir, 1000).unwrap();
        let mut expected = BTreeMap::from([(WeightVector::zero(4), 1)]);
        for i in 0..4 {
            expected.insert(WeightVector::unit(4, i), 1);
            expected.insert(-&WeightVector::unit(4, i), 1);
        }
        assert_eq!(w, expected);
    }

    #[test]
    fn trivial_and_sl2_strings() {
        let rs = b4();
        let triv = IrrepDescriptor::new(rs.data(), WeightVector::zero(4)).unwrap();
        assert_eq!(weight_multiplicities(&triv, 10).unwrap(), BTreeMap::from([(WeightVector::zero(4), 1)]));

        let a1 = RootSystem::build(CartanType::new(Family::A, 1)).unwrap();
        // λ = 3ω = (3/2)(e₁−e₂)
        let ir = IrrepDescriptor::new(a1.data(), WeightVector::from_scaled(&[3, -3], 2)).unwrap();
        let w = weight_multiplicities(&ir, 10).unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.values().all(|&m| m == 1));
    }

    #[test]
    fn multiplicities_sum_to_dimension() {
        for (t, hw) in [
            (CartanType::new(Family::B, 4), WeightVector::from_ints(&[2, 1, 1, 0])),
            (CartanType::new(Family::G, 2), WeightVector::from_ints(&[2, 2])),
            (CartanType::new(Family::A, 3), WeightVector::from_ints(&[2, 1, 0, -3])),
            (CartanType::new(Family::C, 3), WeightVector::from_ints(&[2, 1, 1])),
            (CartanType::new(Family::F, 4), WeightVector::from_ints(&[1, 1, 0, 0])),
        ] {
            let rs = RootSystem::build(t).unwrap();
            let ir = IrrepDescriptor::new(rs.data(), hw).unwrap();
            let w = weight_multiplicities(&ir, 100_000).unwrap();
            let total: u64 = w.values().sum();
            assert_eq!(BigInt::from(total), weyl_dimension(&ir), "{t}");
            // W-invariance
            for (mu, m) in &w {
                let (dom, _) = rs.data().dominant_chamber(mu);
                assert_eq!(w.get(&dom), Some(m));
            }
        }
    }

    #[test]
    fn adjoint_of_g2_has_zero_weight_multiplicity_two() {
        let rs = RootSystem::build(CartanType::new(Family::G, 2)).unwrap();
        let ir = IrrepDescriptor::new(rs.data(), WeightVector::from_ints(&[0, 2])).unwrap();
        let w = weight_multiplicities(&ir, 100).unwrap();
        assert_eq!(w.get(&WeightVector::zero(2)), Some(&2));
        assert_eq!(w.values().sum::<u64>(), 14);
    }

    #[test]
    fn klimyk_examples() {
        let rs = b4();
        let d = rs.data();
        let e1 = IrrepDescriptor::new(d, WeightVector::from_ints(&[1, 0, 0, 0])).unwrap();
        let triv = IrrepDescriptor::new(d, WeightVector::zero(4)).unwrap();
        assert_eq!(klimyk_tensor(&triv, &e1, 1000).unwrap(), BTreeMap::from([(WeightVector::unit(4, 0), 1)]));

        let sq = klimyk_tensor(&e1, &e1, 1000).unwrap();
        let expected = BTreeMap::from([
            (WeightVector::from_ints(&[2, 0, 0, 0]), 1),
            (WeightVector::from_ints(&[1, 1, 0, 0]), 1),
            (WeightVector::zero(4), 1),
        ]);
        assert_eq!(sq, expected);
        let total: BigInt = sq.keys().map(|hw| dim(&rs, hw.clone())).sum();
        assert_eq!(total, BigInt::from(81));

        let s2 = IrrepDescriptor::new(d, WeightVector::from_ints(&[2, 0, 0, 0])).unwrap();
        let prod = klimyk_tensor(&s2, &e1, 1000).unwrap();
        let total: BigInt = prod.iter().map(|(hw, &m)| dim(&rs, hw.clone()) * m).sum();
        assert_eq!(total, BigInt::from(396));
    }

    #[test]
    fn klimyk_is_symmetric() {
        let rs = b4();
        let d = rs.data();
        let a = IrrepDescriptor::new(d, WeightVector::from_ints(&[1, 1, 0, 0])).unwrap();
        let b = IrrepDescriptor::new(d, WeightVector::from_scaled(&[1, 1, 1, 1], 2)).unwrap();
        assert_eq!(klimyk_tensor(&a, &b, 10_000).unwrap(), klimyk_tensor(&b, &a, 10_000).unwrap());
    }

    #[test]
    fn casimir_values() {
        let rs = b4();
        let p = rs.killing_product();
        assert!(casimir_eigenvalue(p, &WeightVector::zero(4), rs.delta()).unwrap().is_zero());
        assert!(casimir_eigenvalue(p, &WeightVector::zero(3), rs.delta()).is_err());
        // adjoint representation of a simple algebra has Killing Casimir 1
        let adj = WeightVector::from_ints(&[1, 1, 0, 0]);
        assert_eq!(casimir_eigenvalue(p, &adj, rs.delta()).unwrap(), rat(1, 1));
    }
}
