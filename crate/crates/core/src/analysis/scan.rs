//! Parameter scans over exponent grids and field sizes, and growth fits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::bounds::{
    certified_upper_bound, exponential_witness, lower_bound_delta, lower_bound_subspace,
    RadialShells,
};
use crate::analysis::family::Family;
use crate::analysis::region::{ratio_str, region_contains, ExponentPair, Rational, RegionSpec};
use crate::analysis::rng;
use crate::chars::CharTable;
use crate::error::{usage, Result};
use crate::field::{Field, FieldSpec};
use crate::grid::{GridFunction, Space};
use crate::numeric::{fit_loglog, weighted_norm, Exponent};
use crate::transform::s_apply;

pub const EXCEPTIONAL_FLAG: &str = "exceptional";

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub d: usize,
    pub fields: Vec<FieldSpec>,
    pub grid: usize,
    pub families: Vec<Family>,
    pub trials: usize,
    pub seed: u64,
}

impl ScanConfig {
    /// Default families, 8 random trials, seed 0.
    pub fn new(d: usize, qs: &[u32], grid: usize) -> Result<ScanConfig> {
        let fields = qs
            .iter()
            .map(|&q| FieldSpec::for_order(q))
            .collect::<Result<_>>()?;
        Ok(ScanConfig {
            d,
            fields,
            grid,
            families: Family::defaults(d),
            trials: 8,
            seed: 0,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return usage(format!("scans need d >= 2, got {}", self.d));
        }
        if self.fields.is_empty() {
            return usage("scan needs at least one q");
        }
        if self.grid < 2 {
            return usage(format!(
                "grid resolution must be at least 2, got {}",
                self.grid
            ));
        }
        if self.families.is_empty() {
            return usage("no families requested");
        }
        for f in &self.families {
            f.validate(self.d)?;
        }
        if self.families.contains(&Family::RandomBest) && self.trials == 0 {
            return usage("random_best needs at least one trial");
        }
        Ok(())
    }
}

/// All lower bounds at one `(q, d, e)`, plus the certified upper bound
/// when `e` lies in the general region.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormReport {
    pub q: u32,
    pub d: usize,
    pub point: ExponentPair,
    pub lower: Vec<(Family, f64)>,
    pub upper: Option<f64>,
    pub in_general: bool,
    pub in_radial: bool,
    pub exceptional: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub d: usize,
    pub q: u32,
    #[serde(with = "ratio_str")]
    pub x: Rational,
    #[serde(with = "ratio_str")]
    pub y: Rational,
    pub family: Family,
    pub lower: f64,
    pub upper: Option<f64>,
    pub in_general: bool,
    pub in_radial: bool,
    pub flags: Vec<String>,
}

impl ScanRow {
    pub fn point(&self) -> ExponentPair {
        ExponentPair::new(self.x, self.y).expect("row exponents are valid")
    }

    pub fn is_exceptional(&self) -> bool {
        self.flags.iter().any(|f| f == EXCEPTIONAL_FLAG)
    }
}

struct Context {
    field: Field,
    d: usize,
    exceptional: bool,
    shells: Option<RadialShells>,
    plane_wave: Option<Vec<f64>>,
    trials: Vec<(Vec<f64>, Vec<f64>)>,
}

fn moduli(g: &GridFunction) -> Vec<f64> {
    g.values().iter().map(|z| z.norm()).collect()
}

fn norm(values: &[f64], p: Exponent) -> f64 {
    weighted_norm(values.iter().map(|&a| (1.0, a)), p)
}

impl Context {
    fn new(spec: &FieldSpec, cfg: &ScanConfig) -> Result<Context> {
        let field = Field::new(spec.clone());
        let table = CharTable::new(&field);
        let space = Space::new(&field, cfg.d)?;
        let wants = |pred: fn(&Family) -> bool| cfg.families.iter().any(pred);
        let shells = if wants(|f| matches!(f, Family::Sphere(_) | Family::RadialExtreme)) {
            Some(RadialShells::new(&table, cfg.d)?)
        } else {
            None
        };
        let plane_wave = if wants(|f| *f == Family::Exponential) {
            let g0 = exponential_witness(&table, &space, field.one())?;
            Some(moduli(&s_apply(&table, &g0)?))
        } else {
            None
        };
        let mut trials = Vec::new();
        if wants(|f| *f == Family::RandomBest) {
            let mut r = rng(cfg.seed, field.q() as u64);
            for _ in 0..cfg.trials {
                let g = GridFunction::random(&space, &mut r);
                let sg = s_apply(&table, &g)?;
                trials.push((moduli(&g), moduli(&sg)));
            }
        }
        Ok(Context {
            exceptional: cfg.d == 2 && field.is_three_mod_four(),
            field,
            d: cfg.d,
            shells,
            plane_wave,
            trials,
        })
    }

    fn lower(&self, family: Family, e: ExponentPair) -> Result<f64> {
        let q = self.field.q();
        let (p, s) = (e.p(), e.s());
        Ok(match family {
            Family::Delta => lower_bound_delta(e, q),
            Family::Subspace(k) => lower_bound_subspace(e, q, self.d, k)?,
            Family::Sphere(j) => {
                let shells = self.shells.as_ref().expect("shells computed");
                shells
                    .ratio(self.field.from_int(j as i64), e)
                    .ok_or_else(|| crate::Error::Domain(format!("S_{j} is empty")))?
            }
            Family::Exponential => {
                let sg = self.plane_wave.as_ref().expect("plane wave computed");
                let g_norm = (q as f64).powf(self.d as f64 * e.xf());
                norm(sg, s) / g_norm
            }
            Family::RandomBest => self
                .trials
                .iter()
                .map(|(g, sg)| norm(sg, s) / norm(g, p))
                .fold(0.0, f64::max),
            Family::RadialExtreme => self.shells.as_ref().expect("shells computed").best_ratio(e),
        })
    }

    fn report(&self, families: &[Family], e: ExponentPair) -> Result<NormReport> {
        let q = self.field.q();
        let in_general = region_contains(&RegionSpec::general(), e);
        Ok(NormReport {
            q,
            d: self.d,
            point: e,
            lower: families
                .iter()
                .map(|&f| Ok((f, self.lower(f, e)?)))
                .collect::<Result<_>>()?,
            upper: if in_general {
                Some(certified_upper_bound(e, q)?)
            } else {
                None
            },
            in_general,
            in_radial: region_contains(&RegionSpec::radial(self.d)?, e),
            exceptional: self.exceptional,
        })
    }
}

/// One [`NormReport`] per `(q, grid point)`.
pub fn scan_reports(cfg: &ScanConfig) -> Result<Vec<NormReport>> {
    cfg.validate()?;
    let points = ExponentPair::grid(cfg.grid)?;
    let contexts = cfg
        .fields
        .par_iter()
        .map(|spec| Context::new(spec, cfg))
        .collect::<Result<Vec<_>>>()?;
    let jobs: Vec<(&Context, ExponentPair)> = contexts
        .iter()
        .flat_map(|c| points.iter().map(move |&e| (c, e)))
        .collect();
    let mut reports = jobs
        .par_iter()
        .map(|&(c, e)| c.report(&cfg.families, e))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by_key(|r| (r.point, r.q));
    Ok(reports)
}

/// Flattened scan rows sorted by `(x, y, q, family)`.
pub fn scan(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    let mut rows: Vec<ScanRow> = scan_reports(cfg)?
        .into_iter()
        .flat_map(|r| {
            let seed = cfg.seed;
            r.lower.clone().into_iter().map(move |(family, lower)| {
                let mut flags = Vec::new();
                if r.exceptional {
                    flags.push(EXCEPTIONAL_FLAG.to_string());
                }
                if family == Family::RandomBest {
                    flags.push(format!("seed={seed}"));
                }
                ScanRow {
                    d: r.d,
                    q: r.q,
                    x: r.point.x(),
                    y: r.point.y(),
                    family,
                    lower,
                    upper: r.upper,
                    in_general: r.in_general,
                    in_radial: r.in_radial,
                    flags,
                }
            })
        })
        .collect();
    rows.sort_by_key(|r| (r.x, r.y, r.q, r.family));
    Ok(rows)
}

/// Least-squares slope of `log(lower)` against `log q` for one family and point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub family: Family,
    #[serde(with = "ratio_str")]
    pub x: Rational,
    #[serde(with = "ratio_str")]
    pub y: Rational,
    pub qs: Vec<u32>,
    pub slope: f64,
    #[serde(serialize_with = "opt_ratio")]
    pub predicted: Option<Rational>,
    pub residual: f64,
}

fn opt_ratio<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

impl GrowthFit {
    pub fn point(&self) -> ExponentPair {
        ExponentPair::new(self.x, self.y).expect("fit exponents are valid")
    }
}

pub const MIN_FIT_QS: usize = 4;

/// Fits every `(family, point)` group. Sphere predictions are withheld when
/// any `q` is exceptional.
pub fn fit_growth(rows: &[ScanRow]) -> Result<Vec<GrowthFit>> {
    let mut groups: BTreeMap<(Family, Rational, Rational), Vec<&ScanRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.family, r.x, r.y)).or_default().push(r);
    }
    let mut out = Vec::with_capacity(groups.len());
    for ((family, x, y), mut group) in groups {
        group.sort_by_key(|r| r.q);
        group.dedup_by_key(|r| r.q);
        if group.len() < MIN_FIT_QS {
            return usage(format!(
                "growth fits need at least {MIN_FIT_QS} distinct q, got {}",
                group.len()
            ));
        }
        let qs: Vec<u32> = group.iter().map(|r| r.q).collect();
        let xs: Vec<f64> = qs.iter().map(|&q| q as f64).collect();
        let ys: Vec<f64> = group.iter().map(|r| r.lower).collect();
        let fit = fit_loglog(&xs, &ys)?;
        let d = group[0].d;
        let exceptional = group.iter().any(|r| r.is_exceptional());
        let e = ExponentPair::new(x, y)?;
        let predicted = if family.is_sphere() && exceptional {
            None
        } else {
            family.predicted_slope(e, d)
        };
        out.push(GrowthFit {
            family,
            x,
            y,
            qs,
            slope: fit.slope,
            predicted,
            residual: fit.residual,
        });
    }
    out.sort_by_key(|f| (f.x, f.y, f.family));
    Ok(out)
}

pub const CSV_HEADER: &str = "d,q,p_inv,s_inv,family,lower,upper,in_general,in_radial,flags";

/// CSV with rational exponents and 17 significant digits.
pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 96);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let upper = r.upper.map(|u| format!("{u:.16e}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{:.16e},{},{},{},{}",
            r.d,
            r.q,
            r.x,
            r.y,
            r.family,
            r.lower,
            upper,
            r.in_general,
            r.in_radial,
            r.flags.join(";")
        )
        .expect("writing to a string");
    }
    out
}

/// Fits as a JSON array.
pub fn fits_to_json(fits: &[GrowthFit]) -> String {
    serde_json::to_string_pretty(fits).expect("fits serialize")
}
