//! Counting tables over a radius grid and their CSV form.

use std::io::Write;

use defect_forge_core::algebra::mpoly::KPoly;
use rayon::prelude::*;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::functionals::{characteristic_of, common_zeros, counting, proximity, PreparedDivisor};
use crate::zeros::{locate_zeros, Zero, ZeroOptions};

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub rmin: f64,
    pub rmax: f64,
    pub grid: usize,
    pub seed: u64,
    /// Fraction of the worst radii dropped in the summary.
    pub exclude: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            rmin: 1.0,
            rmax: 20.0,
            grid: 20,
            seed: 0,
            exclude: 0.05,
        }
    }
}

impl ReportOptions {
    pub fn radii(&self) -> Vec<f64> {
        if self.grid == 1 {
            return vec![self.rmax];
        }
        (0..self.grid)
            .map(|i| self.rmin + (self.rmax - self.rmin) * i as f64 / (self.grid - 1) as f64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorRow {
    pub n: f64,
    pub n1: f64,
    pub m: f64,
    pub delta: f64,
    pub delta1: f64,
    /// `m + N − d·T`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub r: f64,
    pub t: f64,
    pub divisors: Vec<DivisorRow>,
    pub gcd: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorSummary {
    pub degree: u32,
    pub zeros: usize,
    /// `1 − max N/(dT)` after dropping the worst radii.
    pub delta_exc: f64,
    pub delta1_exc: f64,
    pub residual_exc: f64,
    /// Residual at the largest radius minus the residual at the first
    /// radius ≥ 5.
    pub residual_drift: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingTable {
    pub curve: String,
    pub divisors: Vec<String>,
    pub pairs: Vec<(usize, usize)>,
    pub rows: Vec<Row>,
    pub summary: Vec<DivisorSummary>,
    pub excluded: usize,
    pub monotone: bool,
}

/// Maximum after dropping the `k` largest values.
pub fn filtered_max(values: &[f64], k: usize) -> f64 {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    v.sort_by(f64::total_cmp);
    let keep = v.len().saturating_sub(k);
    if keep == 0 {
        return f64::NAN;
    }
    v[keep - 1]
}

fn nondecreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] >= w[0] - 1e-9 * (1.0 + w[0].abs()))
}

pub fn defect_report(curve: &CurveSpec, divisors: &[KPoly], opts: &ReportOptions) -> Result<CountingTable> {
    if opts.grid == 0 || !(opts.rmax > 0.0) || opts.rmin > opts.rmax || opts.rmin <= 0.0 {
        return Err(Error::invalid("need 0 < rmin <= rmax and a nonempty grid"));
    }
    let prepared: Vec<PreparedDivisor> = divisors
        .iter()
        .enumerate()
        .map(|(i, d)| PreparedDivisor::new(curve, d, i + 1))
        .collect::<Result<_>>()?;
    let zopts = ZeroOptions {
        seed: opts.seed,
        ..ZeroOptions::default()
    };
    let zeros: Vec<Vec<Zero>> = prepared
        .par_iter()
        .map(|d| locate_zeros(&d.g, opts.rmax, &zopts))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..prepared.len())
        .flat_map(|i| (i + 1..prepared.len()).map(move |j| (i, j)))
        .collect();
    let commons: Vec<Vec<Zero>> = pairs.iter().map(|&(i, j)| common_zeros(&zeros[i], &zeros[j])).collect();
    let comps = curve.log_components();
    let radii = opts.radii();
    let rows: Vec<Row> = radii
        .par_iter()
        .map(|&r| {
            let t = characteristic_of(&comps, r)?;
            let divs = prepared
                .iter()
                .zip(&zeros)
                .map(|(d, zs)| {
                    let n = counting(zs, r, None);
                    let n1 = counting(zs, r, Some(1));
                    let m = proximity(&comps, d, zs, r)?;
                    let dt = d.degree as f64 * t;
                    Ok(DivisorRow {
                        n,
                        n1,
                        m,
                        delta: 1.0 - n / dt,
                        delta1: 1.0 - n1 / dt,
                        residual: m + n - dt,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let gcd = commons.iter().map(|c| counting(c, r, None)).collect();
            Ok(Row {
                r,
                t,
                divisors: divs,
                gcd,
            })
        })
        .collect::<Result<_>>()?;
    let excluded = (opts.exclude * rows.len() as f64).floor() as usize;
    let mut monotone = nondecreasing(&rows.iter().map(|r| r.t).collect::<Vec<_>>());
    let mut summary = Vec::new();
    for (k, d) in prepared.iter().enumerate() {
        let col = |f: &dyn Fn(&DivisorRow) -> f64| rows.iter().map(|r| f(&r.divisors[k])).collect::<Vec<f64>>();
        let ns = col(&|x| x.n);
        let n1s = col(&|x| x.n1);
        monotone &= nondecreasing(&ns) && nondecreasing(&n1s);
        let ratio = |v: &[f64]| -> Vec<f64> {
            v.iter()
                .zip(&rows)
                .filter(|(_, row)| row.t > 0.0)
                .map(|(n, row)| n / (d.degree as f64 * row.t))
                .collect()
        };
        let res = col(&|x| x.residual);
        let start = rows.iter().position(|r| r.r >= 5.0).unwrap_or(0);
        summary.push(DivisorSummary {
            degree: d.degree,
            zeros: zeros[k].iter().map(|z| z.multiplicity as usize).sum(),
            delta_exc: 1.0 - filtered_max(&ratio(&ns), excluded),
            delta1_exc: 1.0 - filtered_max(&ratio(&n1s), excluded),
            residual_exc: filtered_max(&res.iter().map(|x| x.abs()).collect::<Vec<_>>(), excluded),
            residual_drift: res[res.len() - 1] - res[start],
        });
    }
    Ok(CountingTable {
        curve: curve.to_string(),
        divisors: divisors.iter().map(|d| d.to_string()).collect(),
        pairs,
        rows,
        summary,
        excluded,
        monotone,
    })
}

impl CountingTable {
    pub fn header(&self) -> Vec<String> {
        let mut h = vec!["r".to_string(), "T".to_string()];
        for i in 1..=self.divisors.len() {
            for name in ["N", "N1", "m", "delta", "delta1"] {
                h.push(format!("{name}_{i}"));
            }
        }
        for (i, j) in &self.pairs {
            h.push(format!("Ngcd_{}_{}", i + 1, j + 1));
        }
        h
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(self.header())?;
        for row in &self.rows {
            let mut rec = vec![row.r.to_string(), row.t.to_string()];
            for d in &row.divisors {
                for v in [d.n, d.n1, d.m, d.delta, d.delta1] {
                    rec.push(v.to_string());
                }
            }
            rec.extend(row.gcd.iter().map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Human-readable summary lines.
    pub fn summary_text(&self) -> String {
        let mut s = format!(
            "curve {}\nradii {} (worst {} excluded in summaries)\nmonotone {}\n",
            self.curve,
            self.rows.len(),
            self.excluded,
            self.monotone
        );
        for (i, (d, sm)) in self.divisors.iter().zip(&self.summary).enumerate() {
            s.push_str(&format!(
                "D{} = {d}: degree {}, zeros {}, delta_exc {:.6}, delta1_exc {:.6}, residual_exc {:.3e}, residual_drift {:.3e}\n",
                i + 1,
                sm.degree,
                sm.zeros,
                sm.delta_exc,
                sm.delta1_exc,
                sm.residual_exc,
                sm.residual_drift
            ));
        }
        s
    }
}
