//! Example pseudo-orbifolds as explicit divisibly-weighted triangulations,
//! and seeded random complexes, simplices and maps for property tests.
//!
//! Labelling used by the named families:
//!
//! * `interval1:k`: edge `x0 (1) – x1 (k)`.
//! * `interval2:k0,k1`: path `x0 (k0) – m – x1 (k1)`; `interval2:k` uses `k` twice.
//! * `disk:k1,k2`: square `v1 u1 v2 u2` coned from a centre `c`; `v1, v2` singular.
//! * `triangle:k1,k2,k3`: corners `v1 v2 v3`, edge midpoints `u1 (v1v2)`,
//!   `u2 (v2v3)`, `u3 (v1v3)`, centre `c`, six triangles.
//! * `teardrop:k`: boundary of the tetrahedron `v0 a b c`, `v0` singular.
//! * `football:k1,k2`: square `u1..u4` suspended from poles `v1, v2`.
//! * `sphere:k1,..,kn` (n ≥ 3): equator `v1 u1 v2 u2 … vn un`; each
//!   hemisphere holds the big triangles `v1 v_i v_{i+1}` with diagonal
//!   midpoints `a+i` / `a-i` and centres `c+i` / `c-i`.
//! * `surface:g=G;k=..` / `surface:c=C;k=..`: orientable genus `G` or `C`
//!   crosscaps, built from 7-vertex tori / 6-vertex projective planes by
//!   connected sum, subdivided until enough pairwise non-adjacent vertices
//!   exist, which then carry the weights.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chains::{MapKind, SimplicialMap};
use crate::complex::{Simplex, VertexId, WeightedComplex};
use crate::subdivision::barycentric_subdivide;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Genus(usize),
    Crosscaps(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExampleSpec {
    IntervalOneSingular(u64),
    IntervalTwoSingular(u64, u64),
    Disk2(u64, u64),
    Triangle2(u64, u64, u64),
    Teardrop(u64),
    Football(u64, u64),
    SphereN(Vec<u64>),
    Surface(SurfaceKind, Vec<u64>),
}

fn join(ks: &[u64]) -> String {
    ks.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ExampleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExampleSpec::IntervalOneSingular(k) => write!(f, "interval1:{k}"),
            ExampleSpec::IntervalTwoSingular(a, b) => write!(f, "interval2:{a},{b}"),
            ExampleSpec::Disk2(a, b) => write!(f, "disk:{a},{b}"),
            ExampleSpec::Triangle2(a, b, c) => write!(f, "triangle:{a},{b},{c}"),
            ExampleSpec::Teardrop(k) => write!(f, "teardrop:{k}"),
            ExampleSpec::Football(a, b) => write!(f, "football:{a},{b}"),
            ExampleSpec::SphereN(ks) => write!(f, "sphere:{}", join(ks)),
            ExampleSpec::Surface(SurfaceKind::Genus(g), ks) => write!(f, "surface:g={g};k={}", join(ks)),
            ExampleSpec::Surface(SurfaceKind::Crosscaps(c), ks) => write!(f, "surface:c={c};k={}", join(ks)),
        }
    }
}

impl FromStr for ExampleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| Error::InvalidSpec(format!("`{s}`: {why}"));
        let (family, args) = s.trim().split_once(':').ok_or_else(|| bad("expected `family:params`"))?;
        let list = |t: &str| -> Result<Vec<u64>, Error> {
            if t.trim().is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| bad("weights must be integers")))
                .collect()
        };
        let spec = match family {
            "surface" => {
                let (topo, ks) = args.split_once(';').ok_or_else(|| bad("expected `g=..;k=..`"))?;
                let ks = ks.trim().strip_prefix("k=").ok_or_else(|| bad("expected `k=`"))?;
                let count = |t: &str| t.trim().parse::<usize>().map_err(|_| bad("invalid count"));
                let kind = if let Some(g) = topo.trim().strip_prefix("g=") {
                    SurfaceKind::Genus(count(g)?)
                } else if let Some(c) = topo.trim().strip_prefix("c=") {
                    SurfaceKind::Crosscaps(count(c)?)
                } else {
                    return Err(bad("expected `g=` or `c=`"));
                };
                ExampleSpec::Surface(kind, list(ks)?)
            }
            _ => {
                let ks = list(args)?;
                match (family, ks.as_slice()) {
                    ("interval1", &[k]) => ExampleSpec::IntervalOneSingular(k),
                    ("interval2", &[k]) => ExampleSpec::IntervalTwoSingular(k, k),
                    ("interval2", &[a, b]) => ExampleSpec::IntervalTwoSingular(a, b),
                    ("disk", &[a, b]) => ExampleSpec::Disk2(a, b),
                    ("triangle", &[a, b, c]) => ExampleSpec::Triangle2(a, b, c),
                    ("teardrop", &[k]) => ExampleSpec::Teardrop(k),
                    ("football", &[a, b]) => ExampleSpec::Football(a, b),
                    ("sphere", _) => ExampleSpec::SphereN(ks),
                    _ => return Err(bad("unknown family or wrong number of weights")),
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ExampleSpec {
    /// The singular weights, in the family's vertex order.
    pub fn weights(&self) -> Vec<u64> {
        match self {
            ExampleSpec::IntervalOneSingular(k) | ExampleSpec::Teardrop(k) => vec![*k],
            ExampleSpec::IntervalTwoSingular(a, b) | ExampleSpec::Disk2(a, b) | ExampleSpec::Football(a, b) => {
                vec![*a, *b]
            }
            ExampleSpec::Triangle2(a, b, c) => vec![*a, *b, *c],
            ExampleSpec::SphereN(ks) | ExampleSpec::Surface(_, ks) => ks.clone(),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if let Some(k) = self.weights().iter().find(|&&k| k < 2) {
            return Err(Error::InvalidSpec(format!("{self}: weight {k} is below 2")));
        }
        match self {
            ExampleSpec::SphereN(ks) if ks.len() < 3 => {
                Err(Error::InvalidSpec(format!("{self}: sphere needs at least 3 points")))
            }
            ExampleSpec::Surface(SurfaceKind::Crosscaps(0), _) => {
                Err(Error::InvalidSpec(format!("{self}: use g=0 for the sphere")))
            }
            _ => Ok(()),
        }
    }
}

fn named(names: &[&str], weights: &[u64], maximal: &[Vec<VertexId>]) -> Result<WeightedComplex, Error> {
    Ok(WeightedComplex::build_named(
        names.iter().map(|s| s.to_string()).collect(),
        weights,
        maximal,
        None,
    )?)
}

pub fn generate(spec: &ExampleSpec) -> Result<WeightedComplex, Error> {
    spec.validate()?;
    match *spec {
        ExampleSpec::IntervalOneSingular(k) => named(&["x0", "x1"], &[1, k], &[vec![0, 1]]),
        ExampleSpec::IntervalTwoSingular(a, b) => named(&["x0", "m", "x1"], &[a, 1, b], &[vec![0, 1], vec![1, 2]]),
        ExampleSpec::Disk2(a, b) => {
            // ring v1 u1 v2 u2, centre c
            let ring = [0, 1, 2, 3];
            let tris = (0..4).map(|i| vec![ring[i], ring[(i + 1) % 4], 4]).collect::<Vec<_>>();
            named(&["v1", "u1", "v2", "u2", "c"], &[a, 1, b, 1, 1], &tris)
        }
        ExampleSpec::Triangle2(a, b, c) => {
            // boundary ring v1 u1 v2 u2 v3 u3, centre c
            let ring = [0, 3, 1, 4, 2, 5];
            let tris = (0..6).map(|i| vec![ring[i], ring[(i + 1) % 6], 6]).collect::<Vec<_>>();
            named(&["v1", "v2", "v3", "u1", "u2", "u3", "c"], &[a, b, c, 1, 1, 1, 1], &tris)
        }
        ExampleSpec::Teardrop(k) => named(
            &["v0", "a", "b", "c"],
            &[k, 1, 1, 1],
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        ),
        ExampleSpec::Football(a, b) => {
            let mut tris = Vec::new();
            for pole in [0, 1] {
                for i in 0..4 {
                    tris.push(vec![pole, 2 + i, 2 + (i + 1) % 4]);
                }
            }
            named(&["v1", "v2", "u1", "u2", "u3", "u4"], &[a, b, 1, 1, 1, 1], &tris)
        }
        ExampleSpec::SphereN(ref ks) => sphere_n(ks),
        ExampleSpec::Surface(kind, ref ks) => connected_sum_surface(kind, ks),
    }
}

/// Each hemisphere is split into the big triangles `v1 v_i v_{i+1}`,
/// every big edge carries a regular midpoint (`u_i` on the equator, `a±_i`
/// on the diagonals `v1 v_i`) and every big triangle is coned from a
/// regular centre, as in [`ExampleSpec::Triangle2`].
fn sphere_n(ks: &[u64]) -> Result<WeightedComplex, Error> {
    let n = ks.len();
    let mut names = Vec::new();
    let mut weights = Vec::new();
    let mut add = |name: String, w: u64| {
        names.push(name);
        weights.push(w);
        names.len() - 1
    };
    let v: Vec<_> = ks.iter().enumerate().map(|(i, &k)| add(format!("v{}", i + 1), k)).collect();
    let u: Vec<_> = (1..=n).map(|i| add(format!("u{i}"), 1)).collect();
    let mut tris = Vec::new();
    for side in ["+", "-"] {
        // midpoint of the big edge v1 v_i, for 2 ≤ i ≤ n (1-based)
        let mut diag = vec![usize::MAX; n + 1];
        diag[2] = u[0];
        diag[n] = u[n - 1];
        for (i, d) in diag.iter_mut().enumerate().take(n).skip(3) {
            *d = add(format!("a{side}{i}"), 1);
        }
        for i in 2..n {
            let c = add(format!("c{side}{i}"), 1);
            let ring = [v[0], diag[i], v[i - 1], u[i - 1], v[i], diag[i + 1]];
            for j in 0..6 {
                tris.push(vec![ring[j], ring[(j + 1) % 6], c]);
            }
        }
    }
    Ok(WeightedComplex::build_named(names, &weights, &tris, None)?)
}

/// 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
fn torus_triangles() -> (usize, Vec<Vec<VertexId>>) {
    let mut t = Vec::new();
    for i in 0..7 {
        t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    (7, t)
}

/// 6-vertex real projective plane.
fn projective_plane_triangles() -> (usize, Vec<Vec<VertexId>>) {
    let t = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ];
    (6, t.iter().map(|x| x.to_vec()).collect())
}

fn tetrahedron_boundary() -> (usize, Vec<Vec<VertexId>>) {
    (4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// Connected sum: removes the last triangle of `a` and the first of `b`
/// and glues along their boundaries.
fn connected_sum(a: (usize, Vec<Vec<VertexId>>), b: (usize, Vec<Vec<VertexId>>)) -> (usize, Vec<Vec<VertexId>>) {
    let (na, mut ta) = a;
    let (nb, tb) = b;
    let cut_a = ta.pop().expect("nonempty surface");
    let cut_b = &tb[0];
    let mut map = vec![usize::MAX; nb];
    for (i, &v) in cut_b.iter().enumerate() {
        map[v] = cut_a[i];
    }
    let mut next = na;
    for m in map.iter_mut() {
        if *m == usize::MAX {
            *m = next;
            next += 1;
        }
    }
    ta.extend(tb[1..].iter().map(|t| t.iter().map(|&v| map[v]).collect()));
    (next, ta)
}

/// Closed surface with isolated singular points of the given weights.
pub fn connected_sum_surface(kind: SurfaceKind, ks: &[u64]) -> Result<WeightedComplex, Error> {
    let spec = ExampleSpec::Surface(kind, ks.to_vec());
    spec.validate()?;
    let (pieces, piece): (usize, fn() -> (usize, Vec<Vec<VertexId>>)) = match kind {
        SurfaceKind::Genus(g) => (g, torus_triangles),
        SurfaceKind::Crosscaps(c) => (c, projective_plane_triangles),
    };
    let mut base = if pieces == 0 { tetrahedron_boundary() } else { piece() };
    for _ in 1..pieces {
        base = connected_sum(base, piece());
    }
    let (n, tris) = base;
    let names = (0..n).map(|i| format!("s{i}")).collect();
    let mut k = WeightedComplex::build_named(names, &vec![1; n], &tris, None)?;
    // the vertices of K are pairwise non-adjacent in Sd(K) and keep their ids
    loop {
        let previous = k.num_vertices();
        k = barycentric_subdivide(&k)?.result;
        if previous >= ks.len() {
            break;
        }
    }
    let mut weights = vec![1; k.num_vertices()];
    weights[..ks.len()].copy_from_slice(ks);
    Ok(k.with_vertex_weights(&weights)?)
}

/// Where random vertex weights come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightPool {
    /// All weights 1.
    Unit,
    /// A random divisor chain of a random `N ≤ 720`; every simplex is
    /// automatically chain-compatible.
    DivisorChain,
    /// All divisors of a random `N ≤ 720`; incompatible simplices are rejected.
    Divisors,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub dim: usize,
    pub vertices: usize,
    pub maximal: usize,
    pub pool: WeightPool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            dim: 2,
            vertices: 8,
            maximal: 8,
            pool: WeightPool::DivisorChain,
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `1 = d_0 | d_1 | … | d_r = N` for a random `N ∈ [2, 720]`, built from a
/// shuffled prime factorisation.
pub fn random_divisor_chain(rng: &mut impl Rng) -> Vec<u64> {
    let n = rng.gen_range(2..=720u64);
    let mut primes = prime_factors(n);
    primes.shuffle(rng);
    let mut chain = vec![1];
    for p in primes {
        chain.push(chain.last().unwrap() * p);
    }
    chain
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn chain_compatible(ws: &[u64]) -> bool {
    let mut w = ws.to_vec();
    w.sort_unstable();
    w.windows(2).all(|p| p[1] % p[0] == 0)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random divisibly-weighted complex; identical output for identical
/// `(spec, seed)`.
pub fn generate_random(spec: RandomSpec, seed: u64) -> Result<WeightedComplex, Error> {
    if spec.dim > 5 {
        return Err(Error::InvalidSpec(format!("dimension {} exceeds 5", spec.dim)));
    }
    if spec.vertices == 0 {
        return Err(Error::InvalidSpec("at least one vertex required".into()));
    }
    let mut rng = rng_for(seed);
    let pool: Vec<u64> = match spec.pool {
        WeightPool::Unit => vec![1],
        WeightPool::DivisorChain => random_divisor_chain(&mut rng),
        WeightPool::Divisors => divisors(rng.gen_range(2..=720)),
    };
    // about half the vertices regular, so all three simplex classes occur
    let weights: Vec<u64> = (0..spec.vertices)
        .map(|_| if rng.gen_bool(0.5) { 1 } else { *pool.choose(&mut rng).unwrap() })
        .collect();
    let top = spec.dim.min(spec.vertices - 1);
    let mut maximal = Vec::new();
    let mut attempts = 0;
    while maximal.len() < spec.maximal && attempts < 50 * spec.maximal.max(1) {
        attempts += 1;
        let size = if rng.gen_bool(0.7) { top + 1 } else { rng.gen_range(1..=top + 1) };
        let mut vs: Vec<VertexId> = (0..spec.vertices).collect();
        vs.shuffle(&mut rng);
        vs.truncate(size);
        let ws: Vec<u64> = vs.iter().map(|&v| weights[v]).collect();
        if chain_compatible(&ws) {
            maximal.push(vs);
        }
    }
    Ok(WeightedComplex::build(&weights, &maximal, None)?)
}

/// A single simplex of dimension `dim` whose vertex weights are drawn from a
/// random divisor chain.
pub fn random_divisible_simplex(dim: usize, rng: &mut impl Rng) -> WeightedComplex {
    let chain = random_divisor_chain(rng);
    let weights: Vec<u64> = (0..=dim).map(|_| *chain.choose(rng).unwrap()).collect();
    WeightedComplex::build(&weights, &[(0..=dim).collect()], None).expect("chain weights")
}

/// A semi-regular simplex: at least one vertex of weight 1 and one of weight
/// at least 2, weights from a divisor chain. `dim ≥ 1`.
pub fn random_semi_regular_simplex(dim: usize, rng: &mut impl Rng) -> WeightedComplex {
    assert!(dim >= 1, "a semi-regular simplex has at least two vertices");
    let chain = random_divisor_chain(rng);
    let mut weights: Vec<u64> = (0..=dim).map(|_| *chain.choose(rng).unwrap()).collect();
    weights[0] = 1;
    weights[1] = *chain[1..].choose(rng).unwrap();
    weights.shuffle(rng);
    WeightedComplex::build(&weights, &[(0..=dim).collect()], None).expect("chain weights")
}

/// Identifies two random non-adjacent vertices of equal weight. Returns the
/// quotient complex and the weight-preserving quotient map, or `None` when no
/// such pair exists.
pub fn random_quotient_map(k: &WeightedComplex, rng: &mut impl Rng) -> Option<(WeightedComplex, SimplicialMap)> {
    let n = k.num_vertices();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let edge = Simplex::new(vec![a, b]).unwrap();
            if k.vertex_weight(a) == k.vertex_weight(b) && !k.contains(&edge) {
                pairs.push((a, b));
            }
        }
    }
    let &(a, b) = pairs.choose(rng)?;
    let vertex_map: Vec<VertexId> = (0..n)
        .map(|v| match v {
            v if v == b => a,
            v if v > b => v - 1,
            v => v,
        })
        .collect();
    let names: Vec<String> = (0..n).filter(|&v| v != b).map(|v| k.name(v).to_string()).collect();
    let weights: Vec<u64> = (0..n).filter(|&v| v != b).map(|v| k.vertex_weight(v)).collect();
    let maximal: Vec<Vec<VertexId>> = k
        .maximal_simplices()
        .iter()
        .map(|s| {
            let mut t: Vec<VertexId> = s.vertices().iter().map(|&v| vertex_map[v]).collect();
            t.sort_unstable();
            t.dedup();
            t
        })
        .collect();
    let q = WeightedComplex::build_named(names, &weights, &maximal, None).ok()?;
    Some((
        q,
        SimplicialMap {
            vertex_map,
            kind: MapKind::WeightPreserving,
        },
    ))
}

/// Every named family at a few fixed parameter choices; the corpus used by
/// corpus-wide checks.
pub fn example_corpus() -> Vec<ExampleSpec> {
    [
        "interval1:2",
        "interval1:7",
        "interval2:2",
        "interval2:4,6",
        "disk:2,3",
        "disk:6,4",
        "triangle:2,3,5",
        "triangle:4,6,10",
        "teardrop:2",
        "teardrop:12",
        "football:2,3",
        "football:4,6",
        "sphere:2,3,4",
        "sphere:6,12,27,36,108",
        "surface:g=0;k=3,5",
        "surface:g=1;k=2",
        "surface:c=1;k=3",
    ]
    .iter()
    .map(|s| s.parse().expect("valid corpus entry"))
    .collect()
}
