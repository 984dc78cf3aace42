use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat, InnerProduct, WeightVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            _ => return Err(Error::InadmissibleType(s.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub const fn new(family: Family, rank: usize) -> Self {
        Self { family, rank }
    }

    pub fn check(&self) -> Result<()> {
        let r = self.rank;
        let ok = match self.family {
            Family::A => r >= 1,
            Family::B | Family::C => r >= 2,
            Family::D => r >= 3,
            Family::E => (6..=8).contains(&r),
            Family::F => r == 4,
            Family::G => r == 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InadmissibleType(self.to_string()))
        }
    }

    /// Classical order formulas.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Ambient dimension, standard form and ordered simple roots.
    ///
    /// Classical types use the usual coordinates on `Rⁿ` (`Rⁿ⁺¹` for `A_n`),
    /// the E-series lives in `R⁸`, `F4` in `R⁴`, and `G2` in the basis
    /// `(ω₁,ω₂)` of fundamental weights of `so(4)` with form `a₁b₁/3 + a₂b₂`.
    pub(crate) fn realization(&self) -> (usize, InnerProduct, Vec<WeightVector>) {
        let n = self.rank;
        let diff = |dim: usize, i: usize, j: usize| {
            let mut c = vec![0i64; dim];
            c[i] = 1;
            c[j] = -1;
            WeightVector::from_ints(&c)
        };
        let chain = |dim: usize, len: usize| (0..len).map(|i| diff(dim, i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => (n + 1, InnerProduct::identity(n + 1), chain(n + 1, n)),
            Family::B => {
                let mut s = chain(n, n - 1);
                s.push(WeightVector::unit(n, n - 1));
                (n, InnerProduct::identity(n), s)
            }
            Family::C => {
                let mut s = chain(n, n - 1);
                s.push(WeightVector::unit(n, n - 1).scale_int(2));
                (n, InnerProduct::identity(n), s)
            }
            Family::D => {
                let mut s = chain(n, n - 1);
                s.push(&WeightVector::unit(n, n - 2) + &WeightVector::unit(n, n - 1));
                (n, InnerProduct::identity(n), s)
            }
            Family::E => {
                let mut s = vec![
                    WeightVector::from_scaled(&[1, -1, -1, -1, -1, -1, -1, 1], 2),
                    WeightVector::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0]),
                ];
                for i in 0..6 {
                    s.push(diff(8, i + 1, i));
                }
                s.truncate(n);
                (8, InnerProduct::identity(8), s)
            }
            Family::F => (
                4,
                InnerProduct::identity(4),
                vec![
                    WeightVector::from_ints(&[0, 1, -1, 0]),
                    WeightVector::from_ints(&[0, 0, 1, -1]),
                    WeightVector::from_ints(&[0, 0, 0, 1]),
                    WeightVector::from_scaled(&[1, -1, -1, -1], 2),
                ],
            ),
            Family::G => (
                2,
                InnerProduct::diagonal(vec![rat(1, 3), rat(1, 1)]),
                vec![WeightVector::from_ints(&[2, 0]), WeightVector::from_ints(&[-3, 1])],
            ),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}
