//! wt-, st- and n-stage st-homology over the integers and other coefficient
//! rings, induced maps on homology, and rank cross-checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::chains::{ChainComplexData, ChainKind, MapKind, SimplicialMap};
use crate::complex::{Stage, WeightedComplex};
use crate::exactalg::{group_from_factors, reduce, HomologyGroup, HomologyPresentation, IntMatrix};
use crate::Error;

/// Which relative chain complex to take homology of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theory {
    /// Absolute chains, `H_*(K, ∂^w)`.
    Wt,
    /// Chains relative to the singular subcomplex, `h_*(K, ∂^w)`.
    St,
    /// Chains relative to `Σⁿ K`.
    StStage(Stage),
}

impl Theory {
    /// Mask of the excluded subcomplex.
    pub fn excluded(self, k: &WeightedComplex) -> Vec<Vec<bool>> {
        match self {
            Theory::Wt => k.mask(|_, _| false),
            Theory::St => k.singular_mask(),
            Theory::StStage(n) => k.stage_mask(n),
        }
    }

    pub fn chain_complex(self, k: &WeightedComplex) -> ChainComplexData {
        let kind = match self {
            Theory::Wt => ChainKind::Absolute,
            t => ChainKind::Relative { label: t.to_string() },
        };
        ChainComplexData::masked(k, &self.excluded(k), kind)
    }

    /// `Σ⁰K` is empty and `Σ^∞K = ΣK`, so those stages are `wt` and `st`.
    pub fn canonical(self) -> Theory {
        match self {
            Theory::StStage(Stage::Finite(0)) => Theory::Wt,
            Theory::StStage(Stage::Infinite) => Theory::St,
            t => t,
        }
    }

    /// True for the theories on which morphisms induce homology maps.
    pub fn accepts_morphisms(self) -> bool {
        matches!(self, Theory::Wt | Theory::StStage(Stage::Finite(0)))
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::Wt => write!(f, "wt"),
            Theory::St => write!(f, "st"),
            Theory::StStage(n) => write!(f, "st-stage={n}"),
        }
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "wt" => Ok(Theory::Wt),
            "st" => Ok(Theory::St),
            t => match t.strip_prefix("st-stage=") {
                Some(n) => n.parse().map(Theory::StStage),
                None => Err(format!("unknown theory `{s}`")),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
    ModRing(u64),
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, String> {
        if is_prime(p) {
            Ok(CoefficientRing::PrimeField(p))
        } else {
            Err(format!("{p} is not prime"))
        }
    }

    pub fn mod_ring(m: u64) -> Result<Self, String> {
        if m >= 2 {
            Ok(CoefficientRing::ModRing(m))
        } else {
            Err(format!("modulus {m} must be at least 2"))
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, CoefficientRing::Rationals | CoefficientRing::PrimeField(_))
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "Z"),
            CoefficientRing::Rationals => write!(f, "Q"),
            CoefficientRing::PrimeField(p) => write!(f, "Fp={p}"),
            CoefficientRing::ModRing(m) => write!(f, "Zm={m}"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let num = |t: &str| t.parse::<u64>().map_err(|_| format!("invalid number `{t}`"));
        match s {
            "Z" => Ok(CoefficientRing::Integers),
            "Q" => Ok(CoefficientRing::Rationals),
            _ => {
                if let Some(p) = s.strip_prefix("Fp=") {
                    Self::prime_field(num(p)?)
                } else if let Some(m) = s.strip_prefix("Zm=") {
                    Self::mod_ring(num(m)?)
                } else {
                    Err(format!("unknown coefficient ring `{s}`"))
                }
            }
        }
    }
}

/// Homology groups in dimensions `0..=dim K` with optional representative
/// cycles (integer vectors over the chain basis of each dimension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyProfile {
    pub theory: Theory,
    pub coefficients: CoefficientRing,
    pub groups: Vec<HomologyGroup>,
    pub witnesses: Option<Vec<Vec<Vec<BigInt>>>>,
}

impl HomologyProfile {
    pub fn group(&self, n: usize) -> HomologyGroup {
        self.groups.get(n).cloned().unwrap_or_default()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// Vector-space dimensions when the coefficients form a field.
    pub fn dimensions(&self) -> Option<Vec<usize>> {
        match self.coefficients {
            CoefficientRing::Rationals => Some(self.ranks()),
            CoefficientRing::PrimeField(_) => Some(self.groups.iter().map(|g| g.torsion.len()).collect()),
            _ => None,
        }
    }

    /// Groups only, for comparisons that ignore witnesses.
    pub fn same_groups(&self, other: &HomologyProfile) -> bool {
        let n = self.groups.len().max(other.groups.len());
        (0..n).all(|i| self.group(i) == other.group(i))
    }

    /// Alternating sum of ranks.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(j, g)| if j % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Integral homology groups of a chain complex, dimensions `0..num_dims`.
pub fn homology_groups(cc: &ChainComplexData) -> Vec<HomologyGroup> {
    let n = cc.num_dims();
    let factors: Vec<Vec<BigInt>> = (0..=n)
        .into_par_iter()
        .map(|d| reduce::invariant_factors(&cc.boundary(d)))
        .collect();
    (0..n)
        .map(|d| group_from_factors(cc.rank(d), factors[d].len(), &factors[d + 1]))
        .collect()
}

/// Generators and coordinate maps for every dimension.
pub fn presentations(cc: &ChainComplexData) -> Result<Vec<HomologyPresentation>, Error> {
    (0..cc.num_dims())
        .into_par_iter()
        .map(|d| {
            HomologyPresentation::compute(&cc.boundary(d).to_dense(), &cc.boundary(d + 1).to_dense())
                .map_err(Error::from)
        })
        .collect()
}

pub fn homology(k: &WeightedComplex, theory: Theory) -> Result<HomologyProfile, Error> {
    let cc = theory.chain_complex(k);
    cc.check_square_zero()?;
    Ok(HomologyProfile {
        theory,
        coefficients: CoefficientRing::Integers,
        groups: homology_groups(&cc),
        witnesses: None,
    })
}

/// Like [`homology`], also returning one representative cycle per generator.
pub fn homology_with_witnesses(k: &WeightedComplex, theory: Theory) -> Result<HomologyProfile, Error> {
    let cc = theory.chain_complex(k);
    let pres = presentations(&cc)?;
    Ok(HomologyProfile {
        theory,
        coefficients: CoefficientRing::Integers,
        groups: pres.iter().map(|p| p.group.clone()).collect(),
        witnesses: Some(pres.into_iter().map(|p| p.generators).collect()),
    })
}

pub fn wt_homology(k: &WeightedComplex) -> Result<HomologyProfile, Error> {
    homology(k, Theory::Wt)
}

pub fn st_homology(k: &WeightedComplex) -> Result<HomologyProfile, Error> {
    homology(k, Theory::St)
}

pub fn n_stage_st_homology(k: &WeightedComplex, n: Stage) -> Result<HomologyProfile, Error> {
    homology(k, Theory::StStage(n))
}

/// Homology of the underlying unweighted complex, relative to the excluded
/// subcomplex of `theory` computed on the weighted complex.
pub fn classical_homology(k: &WeightedComplex, theory: Theory) -> Result<HomologyProfile, Error> {
    let excluded = theory.excluded(k);
    let cc = ChainComplexData::masked(&k.unweighted(), &excluded, ChainKind::Absolute);
    cc.check_square_zero()?;
    Ok(HomologyProfile {
        theory,
        coefficients: CoefficientRing::Integers,
        groups: homology_groups(&cc),
        witnesses: None,
    })
}

/// Universal coefficients applied to an integral profile:
/// `H_j(C; G) ≅ H_j ⊗ G ⊕ Tor(H_{j−1}, G)`.
pub fn apply_coefficients(integral: &HomologyProfile, ring: CoefficientRing) -> HomologyProfile {
    let groups = match ring {
        CoefficientRing::Integers => integral.groups.clone(),
        CoefficientRing::Rationals => integral.groups.iter().map(|g| HomologyGroup::free(g.rank)).collect(),
        CoefficientRing::PrimeField(_) | CoefficientRing::ModRing(_) => {
            let (CoefficientRing::PrimeField(m) | CoefficientRing::ModRing(m)) = ring else {
                unreachable!()
            };
            let m = BigInt::from(m);
            (0..integral.groups.len())
                .map(|j| {
                    let g = &integral.groups[j];
                    let prev = j.checked_sub(1).map(|i| &integral.groups[i].torsion);
                    let orders = std::iter::repeat_n(m.clone(), g.rank)
                        .chain(g.torsion.iter().map(|d| d.gcd(&m)))
                        .chain(prev.into_iter().flatten().map(|d| d.gcd(&m)));
                    HomologyGroup::from_cyclic_orders(0, orders)
                })
                .collect()
        }
    };
    HomologyProfile {
        theory: integral.theory,
        coefficients: ring,
        groups,
        witnesses: None,
    }
}

pub fn homology_with_coefficients(
    k: &WeightedComplex,
    theory: Theory,
    ring: CoefficientRing,
) -> Result<HomologyProfile, Error> {
    Ok(apply_coefficients(&homology(k, theory)?, ring))
}

/// Matrices of `f_*` in every dimension, in the generator bases of
/// [`HomologyPresentation`] (torsion generators first). Entries in a row
/// belonging to a torsion generator of order `d` are reduced mod `d`.
pub fn induced_homology_map(
    f: &SimplicialMap,
    src: &WeightedComplex,
    dst: &WeightedComplex,
    theory: Theory,
) -> Result<Vec<IntMatrix>, Error> {
    if f.kind == MapKind::Morphism && !theory.accepts_morphisms() {
        return Err(Error::MorphismOnStHomology);
    }
    let a = theory.chain_complex(src);
    let b = theory.chain_complex(dst);
    let pa = presentations(&a)?;
    let pb = presentations(&b)?;
    let dims = a.num_dims().max(b.num_dims());
    let mut out = Vec::with_capacity(dims);
    for n in 0..dims {
        let chain = f.chain_map(src, &a, dst, &b, n)?.to_dense();
        out.push(map_on_presentations(&chain, pa.get(n), pb.get(n)));
    }
    Ok(out)
}

/// Expresses a chain map on homology given source and target presentations
/// (absent ones count as the zero group).
pub fn map_on_presentations(
    chain: &IntMatrix,
    src: Option<&HomologyPresentation>,
    dst: Option<&HomologyPresentation>,
) -> IntMatrix {
    let rows = dst.map_or(0, |p| p.len());
    let cols = src.map_or(0, |p| p.len());
    let mut m = IntMatrix::zeros(rows, cols);
    if let (Some(src), Some(dst)) = (src, dst) {
        for (j, g) in src.generators.iter().enumerate() {
            let image = chain.mul_vec(g);
            for (i, c) in dst.coordinates_of(&image).into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
    }
    m
}

/// Result of comparing both sides of the Euler relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    /// Alternating sum of st-homology ranks.
    pub lhs: i64,
    /// Alternating count of regular and semi-regular simplices.
    pub rhs: i64,
    pub ok: bool,
}

pub fn euler_check(k: &WeightedComplex) -> Result<EulerCheck, Error> {
    let lhs = st_homology(k)?.euler_characteristic();
    let counts = k.class_counts();
    let rhs = (0..k.num_dims())
        .map(|j| {
            let c = (counts.regular[j] + counts.semi_regular[j]) as i64;
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum();
    Ok(EulerCheck { lhs, rhs, ok: lhs == rhs })
}

/// Rational rank consistency of the long exact sequence of `(K, ΣK)` for
/// `∂^w`: each map's rank is bounded by its neighbours' homology, and the
/// alternating sum of all ranks along the sequence vanishes.
pub fn les_rank_check(k: &WeightedComplex) -> Result<bool, Error> {
    let sigma = wt_homology(&k.singular_subcomplex())?.ranks();
    let abs = wt_homology(k)?.ranks();
    let rel = st_homology(k)?.ranks();
    let n = k.num_dims();
    let at = |v: &[usize], j: usize| v.get(j).copied().unwrap_or(0) as i64;
    let total: i64 = (0..n)
        .map(|j| {
            let t = at(&sigma, j) - at(&abs, j) + at(&rel, j);
            if j % 2 == 0 {
                t
            } else {
                -t
            }
        })
        .sum();
    Ok(total == 0)
}
