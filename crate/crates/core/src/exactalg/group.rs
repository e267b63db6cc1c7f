use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, AlgebraError, IntMatrix};

/// Finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` in
/// invariant-factor form: every `d_i ≥ 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        Self::from_cyclic_orders(0, [order.into()])
    }

    /// Normalises an arbitrary direct sum of cyclic groups `Z/a_i` into
    /// invariant-factor form. Orders of 0 count as free summands, 1 vanish.
    pub fn from_cyclic_orders<I>(rank: usize, orders: I) -> Self
    where
        I: IntoIterator<Item = BigInt>,
    {
        let mut rank = rank;
        let mut finite = Vec::new();
        for a in orders {
            let a = a.abs();
            if a.is_zero() {
                rank += 1;
            } else if !a.is_one() {
                finite.push(a);
            }
        }
        let torsion = if finite.len() <= 1 {
            finite
        } else {
            let d = IntMatrix::diagonal(finite.len(), finite.len(), &finite);
            smith_normal_form(&d, false)
                .invariant_factors()
                .into_iter()
                .filter(|x| !x.is_one())
                .collect()
        };
        HomologyGroup { rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Direct sum, renormalised.
    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        Self::from_cyclic_orders(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|d| d > &BigInt::one())
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for HomologyGroup {
    /// `Z^r + Z/d1 + Z/d2`, `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for HomologyGroup {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::GroupSyntax(s.to_string());
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d < BigInt::from(2) {
                    return Err(bad());
                }
                orders.push(d);
            } else {
                return Err(bad());
            }
        }
        Ok(Self::from_cyclic_orders(rank, orders))
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|x| x.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}
