//! Tabulation of slope data over all fractions up to a denominator bound.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::chain::QuadChain;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::path::count_chain_paths;
use crate::slopes::{crossing_number_of_chain, SlopeEngine};

pub const CSV_HEADER: &str =
    "p,q,n,crossing_number,diameter,num_minimal_paths,slope_min,slope_max,sigma0,sigma1,linking_number";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub p: u64,
    pub q: u64,
    pub n: u8,
    pub crossing_number: i64,
    pub diameter: i64,
    pub num_minimal_paths: u128,
    pub slope_min: i64,
    pub slope_max: i64,
    pub sigma0: i64,
    pub sigma1: i64,
    pub linking_number: Option<i64>,
}

impl SurveyRow {
    /// `diameter = slope_max − slope_min = (2/n)·crossing_number`.
    pub fn check(&self) -> Result<()> {
        if self.diameter != self.slope_max - self.slope_min
            || self.diameter * i64::from(self.n) != 2 * self.crossing_number
        {
            return Err(Error::Inconsistent(format!("survey row for {}/{} is inconsistent: {self:?}", self.p, self.q)));
        }
        Ok(())
    }

    fn csv_line(&self, out: &mut String) {
        let lk = self.linking_number.map(|l| l.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.p,
            self.q,
            self.n,
            self.crossing_number,
            self.diameter,
            self.num_minimal_paths,
            self.slope_min,
            self.slope_max,
            self.sigma0,
            self.sigma1,
            lk
        );
    }
}

/// One row, using the extreme paths for the slope range and the counting
/// routine for the number of minimal paths.
pub fn survey_row(f: &Fraction) -> Result<SurveyRow> {
    let (p, q) = f.to_i64_pair().ok_or_else(|| Error::Overflow(f.to_string()))?;
    let engine = SlopeEngine::new(f)?;
    let chain = QuadChain::new(f)?;
    let slope_max = engine.slope(&chain.lower_minimal_path()?)?;
    let slope_min = engine.slope(&chain.upper_minimal_path()?)?;
    let n: u8 = if f.is_knot() { 1 } else { 2 };
    let row = SurveyRow {
        p: p.to_u64().expect("positive"),
        q: q.to_u64().expect("positive"),
        n,
        crossing_number: crossing_number_of_chain(&chain)?,
        diameter: slope_max - slope_min,
        num_minimal_paths: count_chain_paths(&chain)?,
        slope_min,
        slope_max,
        sigma0: engine.sigma0(),
        sigma1: engine.sigma1(),
        linking_number: f.is_link().then(|| engine.sigma1()),
    };
    row.check()?;
    Ok(row)
}

/// Reduced `p/q` with `0 < p < q <= max_q`, ordered by `(q, p)`.
pub fn fractions_up_to(max_q: u64) -> Vec<Fraction> {
    let mut out = Vec::new();
    for q in 2..=max_q {
        for p in 1..q {
            if num_integer::gcd(p, q) == 1 {
                out.push(Fraction::new(p, q).expect("nonzero denominator"));
            }
        }
    }
    out
}

/// Rows for every fraction up to `max_q`, in `(q, p)` order regardless of
/// how many worker threads are used. `jobs = None` uses rayon's default.
pub fn survey(max_q: u64, jobs: Option<usize>) -> Result<Vec<SurveyRow>> {
    let fractions = fractions_up_to(max_q);
    let run = || fractions.par_iter().map(survey_row).collect::<Result<Vec<_>>>();
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Inconsistent(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

pub fn to_csv(rows: &[SurveyRow]) -> String {
    let mut out = String::with_capacity(48 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        row.csv_line(&mut out);
    }
    out
}

pub fn to_json(rows: &[SurveyRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}
