//! Self-checks of the exact identities behind the bounds, for one `(q, d)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::bounds::{
    certified_upper_bound, homogeneous_class_ratios, lower_bound_delta, lower_bound_exponential,
    lower_bound_subspace, RadialShells, HOMOGENEOUS_RATIO_BOUND,
};
use crate::analysis::region::{region_contains, ExponentPair, RegionSpec};
use crate::analysis::rng;
use crate::chars::CharTable;
use crate::error::{usage, Error, Result};
use crate::field::{Field, FieldSpec};
use crate::grid::{GridFunction, RadialFunction, Space, Variety};
use crate::numeric::Exponent;
use crate::transform::{
    fourier, inverse_fourier, s_apply, s_apply_radial, s_norm_ratio, SOperatorKernel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    L2Identity,
    Linf,
    Osc,
    Sizes,
    Fourier,
    Radial,
    Exponential,
    Homogeneous,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::L2Identity,
        Suite::Linf,
        Suite::Osc,
        Suite::Sizes,
        Suite::Fourier,
        Suite::Radial,
        Suite::Exponential,
        Suite::Homogeneous,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::L2Identity => "l2identity",
            Suite::Linf => "linf",
            Suite::Osc => "osc",
            Suite::Sizes => "sizes",
            Suite::Fourier => "fourier",
            Suite::Radial => "radial",
            Suite::Exponential => "exponential",
            Suite::Homogeneous => "homogeneous",
            Suite::Bounds => "bounds",
        }
    }

    /// Comma-separated names, or `all`.
    pub fn parse_list(text: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                out.extend(Suite::ALL);
            } else {
                out.push(item.parse()?);
            }
        }
        if out.is_empty() {
            return usage("no suites requested");
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub q: u32,
    pub d: usize,
    pub seed: u64,
    pub trials: usize,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub field: FieldSpec,
    pub d: usize,
    pub suites: Vec<Suite>,
    /// Moment for the `osc` suite; all of 2, 4, 6, 8 when absent.
    pub n: Option<u32>,
    pub trials: usize,
    pub seed: u64,
}

struct Ctx {
    field: Field,
    table: CharTable,
    space: Space,
    trials: usize,
    seed: u64,
    checks: Vec<Check>,
}

impl Ctx {
    fn push(
        &mut self,
        suite: Suite,
        name: &str,
        measured: f64,
        expected: f64,
        tolerance: f64,
        pass: bool,
    ) {
        self.checks.push(Check {
            suite: suite.name().to_string(),
            name: name.to_string(),
            pass,
            measured,
            expected,
            tolerance,
        });
    }

    /// Relative agreement with floor 1.
    fn close(&mut self, suite: Suite, name: &str, measured: f64, expected: f64, tolerance: f64) {
        let pass = crate::numeric::close(measured, expected, tolerance);
        self.push(suite, name, measured, expected, tolerance, pass);
    }

    fn q(&self) -> f64 {
        self.field.q() as f64
    }
}

/// The value farthest from `target`.
fn worst(values: impl IntoIterator<Item = f64>, target: f64) -> f64 {
    values.into_iter().fold(target, |w, v| {
        if (v - target).abs() > (w - target).abs() {
            v
        } else {
            w
        }
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn naive_fourier(table: &CharTable, f: &GridFunction) -> Vec<Complex64> {
    let space = f.space();
    let field = table.field();
    (0..space.size())
        .map(|x| {
            let xp = space.point(x);
            f.values()
                .iter()
                .enumerate()
                .map(|(m, v)| v * table.chi(field.neg(space.dot(&xp, &space.point(m)))))
                .sum()
        })
        .collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn max_abs(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.trials == 0 {
        return usage("verify needs at least one trial");
    }
    if let Some(n) = cfg.n {
        if n == 0 || n % 2 == 1 {
            return usage(format!("the osc suite checks even moments, got n = {n}"));
        }
    }
    let field = Field::new(cfg.field.clone());
    let space = Space::new(&field, cfg.d)?;
    let mut ctx = Ctx {
        table: CharTable::new(&field),
        field,
        space,
        trials: cfg.trials,
        seed: cfg.seed,
        checks: Vec::new(),
    };
    for &suite in &cfg.suites {
        match suite {
            Suite::L2Identity => l2identity(&mut ctx)?,
            Suite::Linf => linf(&mut ctx)?,
            Suite::Osc => osc(&mut ctx, cfg.n),
            Suite::Sizes => sizes(&mut ctx),
            Suite::Fourier => fourier_suite(&mut ctx)?,
            Suite::Radial => radial(&mut ctx)?,
            Suite::Exponential => exponential(&mut ctx)?,
            Suite::Homogeneous => homogeneous(&mut ctx)?,
            Suite::Bounds => bounds(&mut ctx)?,
        }
    }
    Ok(VerifyReport {
        q: ctx.field.q(),
        d: cfg.d,
        seed: cfg.seed,
        trials: cfg.trials,
        pass: ctx.checks.iter().all(|c| c.pass),
        checks: ctx.checks,
    })
}

fn l2identity(ctx: &mut Ctx) -> Result<()> {
    let q = ctx.q();
    let mut r = rng(ctx.seed, 1);
    let mut ratios = Vec::new();
    for _ in 0..ctx.trials {
        let g = GridFunction::random(&ctx.space, &mut r);
        let sg = s_apply(&ctx.table, &g)?;
        let two = Exponent::Finite(2.0);
        ratios.push(sg.lp_norm(two).powi(2) * q / ((q - 1.0) * g.lp_norm(two).powi(2)));
    }
    ctx.close(
        Suite::L2Identity,
        "norm_identity_ratio",
        worst(ratios, 1.0),
        1.0,
        1e-9,
    );
    Ok(())
}

fn linf(ctx: &mut Ctx) -> Result<()> {
    let expected = (ctx.q() - 1.0) / ctx.q();
    let kernel = SOperatorKernel::new(&ctx.table, &ctx.space)?;
    ctx.close(
        Suite::Linf,
        "max_row_l1_mass",
        kernel.max_row_l1_mass(),
        expected,
        1e-12,
    );
    let (g, out) = kernel.phase_matched_witness();
    let sg = s_apply(&ctx.table, &g)?;
    let ratio = sg.values()[out].norm() / g.lp_norm(Exponent::Infinity);
    ctx.push(
        Suite::Linf,
        "witness_ratio",
        ratio,
        expected,
        1e-9,
        ratio >= expected - 1e-9,
    );
    Ok(())
}

fn osc(ctx: &mut Ctx, n: Option<u32>) {
    let ns = match n {
        Some(n) => vec![n],
        None => vec![2, 4, 6, 8],
    };
    for n in ns {
        let expected = binomial(n as u64, n as u64 / 2) as f64 * ctx.q();
        let measured = ctx.table.osc_sum(n);
        let pass = (measured - expected).abs() <= 1e-9 * expected;
        ctx.push(
            Suite::Osc,
            &format!("osc_sum_n{n}"),
            measured,
            expected,
            1e-9,
            pass,
        );
    }
}

fn sizes(ctx: &mut Ctx) {
    let sizes = ctx.space.sphere_sizes();
    let total: u64 = sizes.iter().sum();
    let expected = ctx.space.size() as f64;
    ctx.push(
        Suite::Sizes,
        "total",
        total as f64,
        expected,
        0.0,
        total as usize == ctx.space.size(),
    );
    let d = ctx.space.dim();
    let exceptional = d == 2 && ctx.field.is_three_mod_four();
    if exceptional {
        ctx.push(
            Suite::Sizes,
            "isotropic_sphere",
            sizes[0] as f64,
            1.0,
            0.0,
            sizes[0] == 1,
        );
    }
    let scale = ctx.q().powi(d as i32 - 1);
    let ratios: Vec<f64> = sizes
        .iter()
        .enumerate()
        .filter(|&(j, _)| !(exceptional && j == 0))
        .map(|(_, &n)| n as f64 / scale)
        .collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(0.0, f64::max);
    ctx.push(
        Suite::Sizes,
        "min_size_over_q^(d-1)",
        lo,
        0.5,
        0.0,
        lo >= 0.5,
    );
    ctx.push(
        Suite::Sizes,
        "max_size_over_q^(d-1)",
        hi,
        2.0,
        0.0,
        hi <= 2.0,
    );
}

fn fourier_suite(ctx: &mut Ctx) -> Result<()> {
    let mut r = rng(ctx.seed, 2);
    let mut round = 0.0f64;
    let mut parseval = Vec::new();
    let mut naive = 0.0f64;
    let size = ctx.space.size() as f64;
    let check_naive = ctx.field.q() <= 7 && ctx.space.dim() <= 3;
    for _ in 0..ctx.trials {
        let f = GridFunction::random(&ctx.space, &mut r);
        let hat = fourier(&ctx.table, &f)?;
        let back = inverse_fourier(&ctx.table, &hat)?;
        round = round.max(max_diff(back.values(), f.values()) / max_abs(f.values()));
        let two = Exponent::Finite(2.0);
        parseval.push(hat.lp_norm(two).powi(2) / (size * f.lp_norm(two).powi(2)));
        if check_naive {
            let slow = naive_fourier(&ctx.table, &f);
            naive = naive.max(max_diff(hat.values(), &slow) / max_abs(&slow));
        }
    }
    ctx.push(
        Suite::Fourier,
        "inversion_round_trip",
        round,
        0.0,
        1e-9,
        round <= 1e-9,
    );
    ctx.close(
        Suite::Fourier,
        "parseval_ratio",
        worst(parseval, 1.0),
        1.0,
        1e-9,
    );
    if check_naive {
        ctx.push(
            Suite::Fourier,
            "factorized_vs_naive",
            naive,
            0.0,
            1e-9,
            naive <= 1e-9,
        );
    }
    Ok(())
}

fn radial(ctx: &mut Ctx) -> Result<()> {
    let mut r = rng(ctx.seed, 3);
    let mut diff = 0.0f64;
    for _ in 0..ctx.trials {
        let rf = RadialFunction::random(&ctx.space, &mut r);
        let fast = s_apply_radial(&ctx.table, &rf)?.expand();
        let dense = s_apply(&ctx.table, &rf.expand())?;
        diff = diff.max(max_diff(fast.values(), dense.values()));
    }
    ctx.push(
        Suite::Radial,
        "fast_vs_dense",
        diff,
        0.0,
        1e-9,
        diff <= 1e-9,
    );
    Ok(())
}

fn exponential(ctx: &mut Ctx) -> Result<()> {
    let (q, d) = (ctx.q(), ctx.space.dim() as i32);
    let (l2, hat) = lower_bound_exponential(&ctx.field, ctx.space.dim(), ctx.field.one())?;
    ctx.close(
        Suite::Exponential,
        "sg0_l2_norm",
        l2,
        (q.powi(d - 1) * (q - 1.0)).sqrt(),
        1e-9,
    );
    let h = Variety::h_variety(&ctx.space, ctx.field.one())?;
    let expected = (q.powi(2 * d) * (q - 1.0) / h.len() as f64).sqrt();
    ctx.close(Suite::Exponential, "hat_sg0_l2_on_h1", hat, expected, 1e-9);
    Ok(())
}

fn homogeneous(ctx: &mut Ctx) -> Result<()> {
    let q = ctx.q();
    let d = ctx.space.dim();
    let two = homogeneous_class_ratios(&ctx.field, d, Exponent::Finite(2.0), ctx.trials, ctx.seed)?;
    let exact = ((q - 1.0) / q).sqrt();
    ctx.close(
        Suite::Homogeneous,
        "ratio_p2",
        worst(two, exact),
        exact,
        1e-9,
    );
    for (label, p) in [
        ("max_ratio_p1", Exponent::Finite(1.0)),
        ("max_ratio_p4/3", Exponent::Finite(4.0 / 3.0)),
        ("max_ratio_p4", Exponent::Finite(4.0)),
        ("max_ratio_pinf", Exponent::Infinity),
    ] {
        let m = homogeneous_class_ratios(&ctx.field, d, p, ctx.trials, ctx.seed)?
            .into_iter()
            .fold(0.0, f64::max);
        ctx.push(
            Suite::Homogeneous,
            label,
            m,
            HOMOGENEOUS_RATIO_BOUND,
            0.0,
            m <= HOMOGENEOUS_RATIO_BOUND,
        );
    }
    Ok(())
}

fn bounds(ctx: &mut Ctx) -> Result<()> {
    let q = ctx.field.q();
    let d = ctx.space.dim();
    let delta = GridFunction::delta(&ctx.space, 1);
    let sub = GridFunction::indicator(&Variety::coordinate_subspace(&ctx.space, d)?);
    let shells = RadialShells::new(&ctx.table, d)?;
    let general = RegionSpec::general();
    let mut formula_gap = 0.0f64;
    let mut soundness = f64::NEG_INFINITY;
    for e in ExponentPair::grid(5)? {
        let (p, s) = (e.p(), e.s());
        let pairs = [
            (
                s_norm_ratio(&ctx.table, &delta, p, s)?,
                lower_bound_delta(e, q),
            ),
            (
                s_norm_ratio(&ctx.table, &sub, p, s)?,
                lower_bound_subspace(e, q, d, d)?,
            ),
        ];
        for (op, cf) in pairs {
            formula_gap = formula_gap.max((op - cf).abs() / cf.max(1.0));
        }
        if region_contains(&general, e) {
            let u = certified_upper_bound(e, q)?;
            let best = [pairs[0].1, pairs[1].1, shells.best_ratio(e)]
                .into_iter()
                .fold(0.0, f64::max);
            soundness = soundness.max(best - u);
        }
    }
    ctx.push(
        Suite::Bounds,
        "closed_form_vs_operator",
        formula_gap,
        0.0,
        1e-9,
        formula_gap <= 1e-9,
    );
    ctx.push(
        Suite::Bounds,
        "lower_minus_upper",
        soundness,
        0.0,
        1e-9,
        soundness <= 1e-9,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(q: u32, d: usize, suites: &str) -> VerifyConfig {
        VerifyConfig {
            field: FieldSpec::for_order(q).unwrap(),
            d,
            suites: Suite::parse_list(suites).unwrap(),
            n: None,
            trials: 3,
            seed: 5,
        }
    }

    #[test]
    fn all_suites_pass_where_the_identities_hold() {
        for (q, d) in [(5, 2), (7, 2), (11, 2), (5, 3)] {
            let report = run_verify(&config(q, d, "all")).unwrap();
            for c in &report.checks {
                assert!(c.pass, "q={q} d={d} {c:?}");
            }
            assert!(report.pass);
        }
    }

    #[test]
    fn prime_power_field_passes_all_but_high_moments() {
        let report = run_verify(&config(9, 2, "all")).unwrap();
        let failed: Vec<_> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failed, vec!["osc_sum_n6", "osc_sum_n8"]);
    }

    #[test]
    fn small_characteristic_moment_fails() {
        let report = run_verify(&config(3, 2, "osc")).unwrap();
        assert!(!report.pass);
        let failed: Vec<_> = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failed, vec!["osc_sum_n6", "osc_sum_n8"]);
    }

    #[test]
    fn osc_single_moment() {
        let mut cfg = config(7, 2, "osc");
        cfg.n = Some(4);
        let report = run_verify(&cfg).unwrap();
        assert_eq!(report.checks.len(), 1);
        assert!((report.checks[0].measured - 42.0).abs() < 1e-9);
        cfg.n = Some(3);
        assert!(run_verify(&cfg).is_err());
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 9);
        assert!(Suite::parse_list("bogus").is_err());
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }
}
