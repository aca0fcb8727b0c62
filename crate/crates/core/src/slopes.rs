//! Boundary slopes of diagonal surfaces and the invariants that feed them.
//!
//! Slopes follow the sign convention in which the trefoil `1/3` has slopes
//! `{0, 6}`. Tables using the opposite convention differ by a global sign.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::chain::QuadChain;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::path::{alternating_turning_path, count_chain_paths, enumerate_chain_paths, EdgePath, EvenPaths, EvenStats};

fn small_pair(f: &Fraction) -> Result<(u64, u64)> {
    if f.is_infinity() || f.num().is_negative() || f.num() > f.den() {
        return Err(Error::OutOfRange { fraction: f.clone(), reason: "expected 0 <= p/q <= 1" });
    }
    let p = f.num().to_u64().ok_or_else(|| Error::Overflow(f.to_string()))?;
    let q = f.den().to_u64().ok_or_else(|| Error::Overflow(f.to_string()))?;
    Ok((p, q))
}

fn eps(p: u64, q: u64, i: u64) -> i64 {
    if (u128::from(i) * u128::from(p) / u128::from(q)) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `εᵢ(p/q) = (−1)^⌊ip/q⌋` for `0 < i < q`.
pub fn epsilon(f: &Fraction, i: u64) -> Result<i64> {
    let (p, q) = small_pair(f)?;
    if i == 0 || i >= q {
        return Err(Error::OutOfRange { fraction: f.clone(), reason: "epsilon index must satisfy 0 < i < q" });
    }
    Ok(eps(p, q, i))
}

/// `(σ₀, σ₁)`: the sums of `εᵢ` over even and odd `i` in `0 < i < q`.
pub fn sigmas(f: &Fraction) -> Result<(i64, i64)> {
    let (p, q) = small_pair(f)?;
    let mut s = [0i64; 2];
    for i in 1..q {
        s[(i % 2) as usize] += eps(p, q, i);
    }
    Ok((s[0], s[1]))
}

pub fn sigma0(f: &Fraction) -> Result<i64> {
    Ok(sigmas(f)?.0)
}

pub fn sigma1(f: &Fraction) -> Result<i64> {
    Ok(sigmas(f)?.1)
}

/// Linking number of a two-component 2-bridge link, `σ₁(p/q)`.
///
/// The sign depends on how the components are oriented; only `|σ₁|` is
/// independent of that choice.
pub fn linking_number(f: &Fraction) -> Result<i64> {
    if !f.is_link() {
        return Err(Error::OutOfRange { fraction: f.clone(), reason: "linking number needs an even denominator" });
    }
    sigma1(f)
}

fn check_target(f: &Fraction) -> Result<()> {
    f.check_unit_interior()
}

/// Crossing number of the 2-bridge link `p/q`.
///
/// Computed as `m(γ_u) − m(γ_ℓ)`, as `i + j − 2` from the edge counts of
/// the extreme paths, and as `Σ|bᵢ|` over the alternating path.
pub fn crossing_number(f: &Fraction) -> Result<i64> {
    check_target(f)?;
    crossing_number_of_chain(&QuadChain::new(f)?)
}

pub fn crossing_number_of_chain(chain: &QuadChain) -> Result<i64> {
    let f = chain.target();
    check_target(f)?;
    let lower = chain.lower_minimal_path()?;
    let upper = chain.upper_minimal_path()?;
    let by_m = upper.m() - lower.m();
    let by_edges = (upper.edge_count() + lower.edge_count()) as i64 - 2;
    let by_turns: i64 = alternating_turning_path(f)?.turns().iter().map(|b| b.abs()).sum();
    if by_m != by_edges || by_m != by_turns {
        return Err(Error::Inconsistent(format!(
            "crossing number of {f}: m difference {by_m}, edge count {by_edges}, alternating path {by_turns}"
        )));
    }
    Ok(by_m)
}

#[derive(Debug, Clone, Copy)]
enum EvenData {
    Knot(EvenStats),
    Link([EvenStats; 2]),
}

/// Evaluates slope formulas for minimal paths to one fixed target.
#[derive(Debug, Clone)]
pub struct SlopeEngine {
    target: Fraction,
    sigma0: i64,
    sigma1: i64,
    even: EvenData,
}

impl SlopeEngine {
    pub fn new(target: &Fraction) -> Result<SlopeEngine> {
        Self::with_memo(target, &mut EvenPaths::new())
    }

    /// Like [`SlopeEngine::new`], reusing a shared even-path memo.
    pub fn with_memo(target: &Fraction, memo: &mut EvenPaths) -> Result<SlopeEngine> {
        check_target(target)?;
        let (sigma0, sigma1) = sigmas(target)?;
        let even = if target.is_knot() {
            EvenData::Knot(memo.knot_stats(target)?)
        } else {
            EvenData::Link(memo.link_stats(target)?)
        };
        Ok(SlopeEngine { target: target.clone(), sigma0, sigma1, even })
    }

    pub fn target(&self) -> &Fraction {
        &self.target
    }

    pub fn sigma0(&self) -> i64 {
        self.sigma0
    }

    pub fn sigma1(&self) -> i64 {
        self.sigma1
    }

    /// The three formulas, each doubled so link values stay integral.
    pub fn doubled_formulas(&self, path: &EdgePath) -> Result<[i64; 3]> {
        if path.end() != &self.target {
            return Err(Error::MalformedPath(format!("path ends at {} instead of {}", path.end(), self.target)));
        }
        if !path.is_minimal() {
            return Err(Error::MalformedPath(format!("{path:?} is not minimal")));
        }
        let (np, nm) = path.n_plus_minus();
        let m = path.m();
        Ok(match self.even {
            EvenData::Knot(e) => [4 * ((np - nm) - (e.n_plus - e.n_minus)), -4 * (m - e.m), -4 * (m - 2 * self.sigma0)],
            EvenData::Link([e0, e1]) => [
                2 * (np - nm) - ((e0.n_plus - e0.n_minus) + (e1.n_plus - e1.n_minus)),
                -2 * m + (e0.m + e1.m),
                -2 * (m - self.sigma0),
            ],
        })
    }

    /// The boundary slope of the diagonal surface carried by `path`.
    pub fn slope(&self, path: &EdgePath) -> Result<i64> {
        let [a, b, c] = self.doubled_formulas(path)?;
        if a != b || b != c || c.is_odd() {
            return Err(Error::Inconsistent(format!(
                "slope formulas disagree on {path:?} to {}: doubled values {a}, {b}, {c}",
                self.target
            )));
        }
        Ok(c / 2)
    }
}

/// Slope of the surface for a minimal `path` ending at `target`.
pub fn slope_of_path(path: &EdgePath, target: &Fraction) -> Result<i64> {
    SlopeEngine::new(target)?.slope(path)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSlope {
    pub path: EdgePath,
    pub slope: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeReport {
    pub fraction: Fraction,
    pub components: u8,
    pub crossing_number: i64,
    pub diameter: i64,
    pub slope_min: i64,
    pub slope_max: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linking_number: Option<i64>,
    pub sigma0: i64,
    pub sigma1: i64,
    pub path_count: u128,
    /// Set when only the extreme paths are listed in `slopes`.
    pub truncated: bool,
    pub slopes: Vec<PathSlope>,
}

impl SlopeReport {
    /// The distinct slope values, ascending.
    pub fn slope_set(&self) -> Vec<i64> {
        let mut s: Vec<i64> = self.slopes.iter().map(|p| p.slope).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// Slopes for every minimal path to `target`.
///
/// With more than `cap` minimal paths, only the two extreme paths are
/// evaluated (they carry the smallest and largest slopes) and the path count
/// comes from the counting routine.
pub fn slope_report(target: &Fraction, cap: usize) -> Result<SlopeReport> {
    let engine = SlopeEngine::new(target)?;
    let chain = QuadChain::new(target)?;
    let lower = chain.lower_minimal_path()?;
    let upper = chain.upper_minimal_path()?;
    let (paths, truncated, path_count) = match enumerate_chain_paths(&chain, cap) {
        Ok(paths) => {
            let n = paths.len() as u128;
            (paths, false, n)
        }
        Err(Error::CapExceeded { .. }) => (vec![lower.clone(), upper.clone()], true, count_chain_paths(&chain)?),
        Err(e) => return Err(e),
    };
    let slopes = paths
        .into_iter()
        .map(|path| Ok(PathSlope { slope: engine.slope(&path)?, path }))
        .collect::<Result<Vec<_>>>()?;

    let slope_min = slopes.iter().map(|s| s.slope).min().expect("at least two minimal paths");
    let slope_max = slopes.iter().map(|s| s.slope).max().expect("at least two minimal paths");
    if (slope_max, slope_min) != (engine.slope(&lower)?, engine.slope(&upper)?) {
        return Err(Error::Inconsistent(format!("extreme paths of {target} do not carry the extreme slopes")));
    }
    let components: u8 = if target.is_knot() { 1 } else { 2 };
    let crossing_number = crossing_number_of_chain(&chain)?;
    let diameter = slope_max - slope_min;
    if diameter * i64::from(components) != 2 * crossing_number {
        return Err(Error::Inconsistent(format!(
            "{target}: diameter {diameter} with {components} components but crossing number {crossing_number}"
        )));
    }
    Ok(SlopeReport {
        fraction: target.clone(),
        components,
        crossing_number,
        diameter,
        slope_min,
        slope_max,
        linking_number: target.is_link().then_some(engine.sigma1),
        sigma0: engine.sigma0,
        sigma1: engine.sigma1,
        path_count,
        truncated,
        slopes,
    })
}
