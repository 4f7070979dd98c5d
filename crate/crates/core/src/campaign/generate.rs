//! Seeded instance factories.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::for_each_combination;
use crate::projective::ProjPoint;
use crate::rnc::RationalNormalCurve;
use crate::scheme::Configuration;
use crate::secant::IndependenceTester;
use crate::{Error, Result};

/// Resamples allowed per generated point before giving up.
pub const REJECTION_BUDGET: usize = 10_000;

/// Bound on free integer coordinates.
pub const COORD_BOUND: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    OnRnc,
    RncPlusOutliers,
    LgpRandom,
    ClusteredSubspace,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::OnRnc => "on_rnc",
            GeneratorKind::RncPlusOutliers => "rnc_plus_outliers",
            GeneratorKind::LgpRandom => "lgp_random",
            GeneratorKind::ClusteredSubspace => "clustered_subspace",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            GeneratorKind::OnRnc,
            GeneratorKind::RncPlusOutliers,
            GeneratorKind::LgpRandom,
            GeneratorKind::ClusteredSubspace,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

/// A `size`-point cluster on a random `dim`-plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterSpec {
    pub dim: usize,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub d: usize,
    /// Off-curve points, placed after the curve points.
    #[serde(default)]
    pub outliers: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<ClusterSpec>,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, d: usize, seed: u64) -> Self {
        GeneratorSpec {
            kind,
            n,
            d,
            outliers: 0,
            cluster: None,
            seed,
        }
    }

    pub fn with_outliers(mut self, k: usize) -> Self {
        self.outliers = k;
        self
    }

    pub fn with_cluster(mut self, dim: usize, size: usize) -> Self {
        self.cluster = Some(ClusterSpec { dim, size });
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.d == 0 {
            return bad("d must be at least 1".into());
        }
        match self.kind {
            GeneratorKind::OnRnc | GeneratorKind::LgpRandom => {
                if self.outliers != 0 || self.cluster.is_some() {
                    return bad(format!("{} takes no outliers or cluster", self.kind.name()));
                }
            }
            GeneratorKind::RncPlusOutliers => {
                if self.cluster.is_some() {
                    return bad("rnc_plus_outliers takes no cluster".into());
                }
                if self.n < 2 {
                    return bad("off-curve points need n >= 2".into());
                }
                if self.outliers > self.d || self.d - self.outliers < self.n + 3 {
                    return bad(format!(
                        "need at least {} curve points, got d - outliers = {}",
                        self.n + 3,
                        self.d as i64 - self.outliers as i64
                    ));
                }
            }
            GeneratorKind::ClusteredSubspace => {
                let Some(c) = self.cluster else {
                    return bad("clustered_subspace needs a cluster".into());
                };
                if self.outliers != 0 {
                    return bad("clustered_subspace takes no outliers".into());
                }
                if c.dim == 0 || c.dim >= self.n {
                    return bad(format!("cluster dimension must lie in 1..={}", self.n - 1));
                }
                if c.size < c.dim + 2 || c.size > self.d {
                    return bad(format!("cluster size must lie in {}..={}", c.dim + 2, self.d));
                }
            }
        }
        Ok(())
    }
}

/// Builds the configuration described by `spec`; the same spec always gives
/// the same point list.
pub fn generate(spec: &GeneratorSpec) -> Result<Configuration> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let points = match spec.kind {
        GeneratorKind::OnRnc => moment_points(&mut rng, n, spec.d)?,
        GeneratorKind::RncPlusOutliers => {
            let mut pts = moment_points(&mut rng, n, spec.d - spec.outliers)?;
            let curve = RationalNormalCurve::standard(n);
            let mut grow = Growing::new(n + 1, &pts);
            for _ in 0..spec.outliers {
                let p = sample(&mut rng, pts.len(), |r| {
                    let p = random_point(r, n, COORD_BOUND);
                    (!curve.contains(&p) && grow.accepts(&p)).then_some(p)
                })?;
                grow.push(&p);
                pts.push(p);
            }
            pts
        }
        GeneratorKind::LgpRandom => {
            let mut pts = Vec::with_capacity(spec.d);
            let mut grow = Growing::new(n + 1, &pts);
            while pts.len() < spec.d {
                let p = sample(&mut rng, pts.len(), |r| {
                    let p = random_point(r, n, COORD_BOUND);
                    grow.accepts(&p).then_some(p)
                })?;
                grow.push(&p);
                pts.push(p);
            }
            pts
        }
        GeneratorKind::ClusteredSubspace => {
            let c = spec.cluster.expect("validated");
            clustered(&mut rng, n, spec.d, c)?
        }
    };
    let label = format!("{} n={} d={} seed={}", spec.kind.name(), n, spec.d, spec.seed);
    Ok(Configuration::new(n, points)?.with_label(label))
}

fn sample<R: Rng>(rng: &mut R, index: usize, mut draw: impl FnMut(&mut R) -> Option<ProjPoint>) -> Result<ProjPoint> {
    for _ in 0..REJECTION_BUDGET {
        if let Some(p) = draw(rng) {
            return Ok(p);
        }
    }
    Err(Error::GeneratorExhausted(index))
}

fn random_point<R: Rng>(rng: &mut R, n: usize, bound: i64) -> ProjPoint {
    loop {
        let c: Vec<i64> = (0..=n).map(|_| rng.gen_range(-bound..=bound)).collect();
        if let Ok(p) = ProjPoint::from_ints(&c) {
            return p;
        }
    }
}

/// `d` points `(b^n : a b^(n-1) : ... : a^n)` of the standard curve at
/// distinct parameters `a / b`.
fn moment_points<R: Rng>(rng: &mut R, n: usize, d: usize) -> Result<Vec<ProjPoint>> {
    let range = (2 * d as i64).max(8);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(d);
    while out.len() < d {
        let p = sample(rng, out.len(), |r| {
            let a = r.gen_range(-range..=range);
            let b = r.gen_range(1..=3i64);
            let g = num_integer::gcd(a, b);
            let key = (a / g, b / g);
            if !seen.insert(key) {
                return None;
            }
            let (a, b) = (BigInt::from(key.0), BigInt::from(key.1));
            let coords: Vec<BigInt> = (0..=n as u32)
                .map(|i| num_traits::pow(a.clone(), i as usize) * num_traits::pow(b.clone(), n - i as usize))
                .collect();
            ProjPoint::from_bigints(coords).ok()
        })?;
        out.push(p);
    }
    Ok(out)
}

/// Incremental check that every `size`-subset containing a new point is
/// independent, given that the existing points already pass.
struct Growing {
    size: usize,
    rows: Vec<Vec<BigInt>>,
}

impl Growing {
    fn new(size: usize, points: &[ProjPoint]) -> Self {
        Growing {
            size,
            rows: points.iter().map(|p| p.coords().to_vec()).collect(),
        }
    }

    fn accepts(&self, p: &ProjPoint) -> bool {
        let mut rows = self.rows.clone();
        rows.push(p.coords().to_vec());
        let last = self.rows.len();
        let tester = IndependenceTester::new(&rows);
        let k = self.size.min(last + 1);
        for_each_combination(last, k - 1, |idx| {
            let mut sub = idx.to_vec();
            sub.push(last);
            tester.independent(&sub)
        })
    }

    fn push(&mut self, p: &ProjPoint) {
        self.rows.push(p.coords().to_vec());
    }
}

/// `size` points on a random `dim`-plane, then points off it, keeping every
/// `dim + 1` points independent so that the plane is the smallest secant.
fn clustered<R: Rng>(rng: &mut R, n: usize, d: usize, c: ClusterSpec) -> Result<Vec<ProjPoint>> {
    let basis: Vec<ProjPoint> = loop {
        let b: Vec<ProjPoint> = (0..=c.dim).map(|_| random_point(rng, n, 1000)).collect();
        let refs: Vec<&ProjPoint> = b.iter().collect();
        if crate::projective::independent(&refs) {
            break b;
        }
    };
    let plane = crate::projective::LinearSubspace::span(&basis)?;
    let eqs = plane.equations();
    let mut pts = Vec::with_capacity(d);
    let mut grow = Growing::new(c.dim + 1, &pts);
    while pts.len() < d {
        let on_plane = pts.len() < c.size;
        let p = sample(rng, pts.len(), |r| {
            let p = if on_plane {
                let coeffs: Vec<i64> = (0..=c.dim).map(|_| r.gen_range(-100..=100)).collect();
                let coords: Vec<BigInt> = (0..=n)
                    .map(|j| {
                        basis
                            .iter()
                            .zip(&coeffs)
                            .map(|(b, &k)| &b.coords()[j] * k)
                            .fold(BigInt::zero(), |s, x| s + x)
                    })
                    .collect();
                ProjPoint::from_bigints(coords).ok()?
            } else {
                let p = random_point(r, n, COORD_BOUND);
                if plane.equations_contain(&eqs, &p) {
                    return None;
                }
                p
            };
            grow.accepts(&p).then_some(p)
        })?;
        grow.push(&p);
        pts.push(p);
    }
    Ok(pts)
}
