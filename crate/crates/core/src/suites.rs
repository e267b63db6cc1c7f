//! Seeded property suites behind `orbihom verify`.
//!
//! Every case derives its own seed from the run seed, the suite name and the
//! case index, so a failing case can be replayed alone with
//! [`run_case`]. Cases run in parallel; results are kept in case order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::Rng;
use rayon::prelude::*;

use crate::complex::WeightedComplex;
use crate::exactalg::HomologyGroup;
use crate::generators::{
    generate, generate_random, random_divisible_simplex, random_semi_regular_simplex, rng_for, RandomSpec,
    WeightPool,
};
use crate::homology::{
    apply_coefficients, classical_homology, euler_check, homology, les_rank_check, CoefficientRing, Theory,
};
use crate::subdivision::{barycentric_subdivide, subdivision_report};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    /// Acyclicity of divisibly-weighted simplices and the st-homology of
    /// semi-regular ones.
    Simplex,
    /// Invariance under barycentric subdivision and `π_# ∘ Sd_# = id`.
    Subdivision,
    /// Field coefficients coprime to the weights agree with classical
    /// homology; rational st ranks agree with relative homology.
    Coefficients,
    /// The Euler relation and the rational long exact sequence.
    Euler,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Simplex, Suite::Subdivision, Suite::Coefficients, Suite::Euler];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Simplex => "simplex",
            Suite::Subdivision => "subdivision",
            Suite::Coefficients => "coefficients",
            Suite::Euler => "euler",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Seed of case `index` of `suite` in a run seeded with `seed`.
pub fn case_seed(seed: u64, suite: Suite, index: usize) -> u64 {
    let tag = suite.name().bytes().fold(0u64, |h, b| h.wrapping_mul(31).wrapping_add(b as u64));
    splitmix(splitmix(seed ^ tag).wrapping_add(index as u64))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseFailure {
    pub index: usize,
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases - self.failures.len()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {}: {}/{} cases (seed {})",
            self.suite,
            self.passed(),
            self.cases,
            self.seed
        )?;
        for c in &self.failures {
            write!(f, "\n  case {} seed {}: {}", c.index, c.seed, c.detail)?;
        }
        Ok(())
    }
}

/// Runs `cases` cases of `suite`.
pub fn run_suite(suite: Suite, seed: u64, cases: usize) -> SuiteReport {
    let failures = (0..cases)
        .into_par_iter()
        .map(|i| {
            let s = case_seed(seed, suite, i);
            run_case(suite, s).err().map(|detail| CaseFailure { index: i, seed: s, detail })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    SuiteReport {
        suite,
        seed,
        cases,
        failures,
    }
}

/// Runs one case from its own seed; `Err` carries a description.
pub fn run_case(suite: Suite, seed: u64) -> Result<(), String> {
    let r = match suite {
        Suite::Simplex => simplex_case(seed),
        Suite::Subdivision => subdivision_case(seed),
        Suite::Coefficients => coefficients_case(seed),
        Suite::Euler => euler_case(seed),
    };
    r.map_err(|e| e.to_string())?
}

/// Small random complex used by the complex-level suites.
pub fn random_case_complex(seed: u64) -> Result<WeightedComplex, Error> {
    let mut rng = rng_for(seed);
    let spec = RandomSpec {
        dim: rng.gen_range(1..=3),
        vertices: rng.gen_range(4..=9),
        maximal: rng.gen_range(3..=8),
        pool: if rng.gen_bool(0.5) {
            WeightPool::DivisorChain
        } else {
            WeightPool::Divisors
        },
    };
    generate_random(spec, rng.gen())
}

fn summary(k: &WeightedComplex) -> String {
    format!(
        "complex of dim {:?} with {} simplices, vertex weights {:?}",
        k.dim(),
        k.total_simplices(),
        k.vertex_weights()
    )
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn simplex_case(seed: u64) -> Result<Result<(), String>, Error> {
    let mut rng = rng_for(seed);
    let dim = rng.gen_range(0..=5);
    let s = random_divisible_simplex(dim, &mut rng);
    let wt = homology(&s, Theory::Wt)?;
    let mut expected = vec![HomologyGroup::free(0); dim + 1];
    expected[0] = HomologyGroup::free(1);
    if wt.groups != expected {
        return Ok(Err(format!("wt of {} is {wt}, expected acyclic", summary(&s))));
    }

    let dim = rng.gen_range(1..=5);
    let s = random_semi_regular_simplex(dim, &mut rng);
    let st = homology(&s, Theory::St)?;
    let least = s.vertex_weights().iter().copied().filter(|&w| w >= 2).min().unwrap();
    let mut expected = vec![HomologyGroup::free(0); dim + 1];
    expected[0] = HomologyGroup::from_cyclic_orders(0, [BigInt::from(least)]);
    Ok(check(st.groups == expected, || {
        format!("st of {} is {st}, expected Z/{least} in degree 0 only", summary(&s))
    }))
}

fn subdivision_case(seed: u64) -> Result<Result<(), String>, Error> {
    let k = random_case_complex(seed)?;
    let rec = barycentric_subdivide(&k)?;
    for theory in [Theory::Wt, Theory::St] {
        let r = subdivision_report(&k, &rec, theory)?;
        if !r.ok() {
            return Ok(Err(format!("{theory} on {}: {r:?}", summary(&k))));
        }
    }
    Ok(Ok(()))
}

/// The first `count` primes dividing none of `weights`.
pub fn coprime_primes(weights: &[u64], count: usize) -> Vec<u64> {
    (2u64..)
        .filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .filter(|p| weights.iter().all(|w| w % p != 0))
        .take(count)
        .collect()
}

fn coefficients_case(seed: u64) -> Result<Result<(), String>, Error> {
    let k = random_case_complex(seed)?;
    for theory in [Theory::Wt, Theory::St] {
        let weighted = homology(&k, theory)?;
        let classical = classical_homology(&k, theory)?;
        let q = |p| apply_coefficients(&weighted, p).dimensions();
        let c = |p| apply_coefficients(&classical, p).dimensions();
        if q(CoefficientRing::Rationals) != c(CoefficientRing::Rationals) {
            return Ok(Err(format!("{theory} over Q differs from classical on {}", summary(&k))));
        }
        for p in coprime_primes(k.vertex_weights(), 3) {
            let f = CoefficientRing::PrimeField(p);
            if q(f) != c(f) {
                return Ok(Err(format!(
                    "{theory} over F_{p}: {:?} vs classical {:?} on {}",
                    q(f),
                    c(f),
                    summary(&k)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn euler_case(seed: u64) -> Result<Result<(), String>, Error> {
    let k = random_case_complex(seed)?;
    let e = euler_check(&k)?;
    if !e.ok {
        return Ok(Err(format!("Euler relation {} vs {} on {}", e.lhs, e.rhs, summary(&k))));
    }
    Ok(check(les_rank_check(&k)?, || format!("exact sequence ranks on {}", summary(&k))))
}

/// Subdivision invariance on the fixed example corpus, used alongside the
/// random subdivision cases.
pub fn corpus_subdivision_failures() -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    for spec in crate::generators::example_corpus() {
        let k = generate(&spec)?;
        let rec = barycentric_subdivide(&k)?;
        for theory in [Theory::Wt, Theory::St] {
            if !subdivision_report(&k, &rec, theory)?.ok() {
                out.push(format!("{spec} ({theory})"));
            }
        }
    }
    Ok(out)
}
