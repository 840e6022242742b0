//! The `verify` pipeline for one torus family.

use std::collections::BTreeMap;

use lagmono_core::classifier::{classify, GeneratorSet, SubgroupClass};
use lagmono_core::dihedral::{change_basis, GmuElement};
use lagmono_core::exact::{adapt_basis, gcd, Int2Vec, MaslovForm, Unimodular2};
use lagmono_core::spectrum::{invariants, InvariantPair};
use lagmono_core::symgeo::{
    action_integral, flow_image_distance, hamiltonian_residual, induced_monodromy, maslov_index,
    maslov_index_adaptive, monotonicity_fit, pullback_identity_residual, random_short_paths, symplectic_grid,
    torus_invariance, tubular_delta, twist_exclusion_detail, ChartPoint, ChartSpec, Family, FlowSpec, LoopSpec,
    VerificationReport, MAX_WINDING_DRIFT, MONOTONICITY_TOLERANCE, TORUS_TOLERANCE,
};
use lagmono_core::Error;

use crate::config::Config;
use crate::report::ReportDoc;

const PULLBACK_PATHS: usize = 20;
const ACTION_TOLERANCE: f64 = 1e-8;
const FD_ORDER_TOLERANCE: f64 = 0.5;
const FLOW_DT: f64 = 1e-5;
const FLOW_GRID: usize = 8;
const TWIST_RANGE: i64 = 5;

/// Expected values on the chart basis loops `(1, 0)` and `(0, 1)`.
struct Expected {
    maslov: [i64; 2],
    monodromy: [i64; 4],
}

fn expected(family: Family) -> Expected {
    match family {
        Family::Clifford => Expected { maslov: [2, 2], monodromy: [0, 1, 1, 0] },
        Family::Chekanov => Expected { maslov: [2, 0], monodromy: [1, 0, 0, -1] },
    }
}

/// Everything `verify` computes for one family.
#[derive(Debug, Clone)]
pub struct FamilyOutcome {
    pub family: Family,
    pub checks: Vec<VerificationReport>,
    pub group: Option<SubgroupClass>,
    pub invariants: Option<InvariantPair>,
}

impl FamilyOutcome {
    pub fn into_report(self, cfg: &Config) -> ReportDoc {
        let name = self.family.name().to_string();
        let invariants = self.invariants.map(|p| BTreeMap::from([(name.clone(), p)])).unwrap_or_default();
        ReportDoc::new(BTreeMap::from([(name, cfg.clone())]), self.checks, invariants)
    }
}

struct Run<'a> {
    family: Family,
    cfg: &'a Config,
    chart: ChartSpec,
    checks: Vec<VerificationReport>,
}

impl Run<'_> {
    fn name(&self, check: &str) -> String {
        format!("{}.{check}", self.family)
    }

    fn push(&mut self, check: &str, tol: f64, result: Result<VerificationReport, Error>) {
        let report = result.unwrap_or_else(|e| VerificationReport::errored(self.name(check), tol, &e));
        self.checks.push(report);
    }

    fn basis(&self, samples: usize) -> Result<[LoopSpec; 2], Error> {
        Ok([LoopSpec::basis(1, 0, samples)?, LoopSpec::basis(0, 1, samples)?])
    }
}

pub fn verify_family(family: Family, cfg: &Config) -> FamilyOutcome {
    let chart = match ChartSpec::new(family, cfg.b) {
        Ok(c) => c,
        Err(e) => {
            let check = VerificationReport::errored(format!("{family}.chart"), 0.0, &e);
            return FamilyOutcome { family, checks: vec![check], group: None, invariants: None };
        }
    };
    let mut run = Run { family, cfg, chart, checks: Vec::new() };
    let exp = expected(family);

    let symplectic = check_symplectic(&run);
    run.push("chart_symplectic", cfg.tol_sym, symplectic.clone().map(|(r, _)| r));
    run.push("chart_fd_order", FD_ORDER_TOLERANCE, symplectic.map(|(_, r)| r));
    if family == Family::Clifford {
        let r = check_pullback(&run);
        run.push("pullback_identity", cfg.tol_sym, r);
    }
    let maslov = check_maslov(&run, &exp);
    let measured_mu = maslov.as_ref().ok().map(|(_, mu)| *mu);
    run.push("maslov_indices", 0.0, maslov.map(|(r, _)| r));
    let r = check_action(&run);
    run.push("action_integrals", ACTION_TOLERANCE, r);
    let r = check_monotonicity(&run);
    run.push("monotonicity", MONOTONICITY_TOLERANCE, r);
    if family == Family::Clifford {
        let r = check_non_monotone(&run);
        run.push("non_monotone_detection", 0.0, r);
    }
    let r = check_hamiltonian(&run);
    run.push("hamiltonian_flow", cfg.tol_flow, r);
    let r = torus_invariance(&FlowSpec::for_family(family), &chart);
    run.checks.push(r);
    if family == Family::Clifford {
        let r = check_radius_swap(&run);
        run.push("flow_swaps_radii", TORUS_TOLERANCE, r);
    }
    let monodromy = check_monodromy(&run, &exp);
    let measured_m = monodromy.as_ref().ok().map(|(_, m)| *m);
    run.push("induced_monodromy", MAX_WINDING_DRIFT, monodromy.map(|(r, _)| r));
    let exclusion = check_twists(&run);
    let surviving = exclusion.as_ref().ok().map(|(_, k)| k.clone());
    run.push("twist_exclusion", 0.0, exclusion.map(|(r, _)| r));

    let mut group = None;
    let mut result = None;
    if let (Some(mu), Some(m), Some(twists)) = (measured_mu, measured_m, surviving) {
        match classify_monodromy(family, mu, m, &twists) {
            Ok((cls, pair, report)) => {
                group = Some(cls);
                result = Some(pair);
                run.checks.push(report);
            }
            Err(e) => run.checks.push(VerificationReport::errored(run.name("monodromy_group"), 0.0, &e)),
        }
    }
    FamilyOutcome { family, checks: run.checks, group, invariants: result }
}

pub fn verify_report(family: Family, cfg: &Config) -> ReportDoc {
    verify_family(family, cfg).into_report(cfg)
}

fn check_symplectic(run: &Run) -> Result<(VerificationReport, VerificationReport), Error> {
    let (cfg, c) = (run.cfg, &run.chart);
    let delta = tubular_delta(cfg.b);
    let coarse = symplectic_grid(c, cfg.grid, delta, cfg.fd_step)?;
    let fine = symplectic_grid(c, cfg.grid, delta, cfg.fd_step / 2.0)?;
    let ratio = coarse / fine;
    let main = VerificationReport::new(run.name("chart_symplectic"), coarse, cfg.tol_sym)
        .with_meta("grid", cfg.grid as f64)
        .with_meta("fd_step", cfg.fd_step)
        .with_meta("fiber_half_width", delta);
    let order = VerificationReport::new(run.name("chart_fd_order"), (ratio - 4.0).abs(), FD_ORDER_TOLERANCE)
        .with_meta("ratio", ratio)
        .with_meta("residual_h", coarse)
        .with_meta("residual_half_h", fine);
    Ok((main, order))
}

fn check_pullback(run: &Run) -> Result<VerificationReport, Error> {
    let mut worst = 0.0f64;
    for (a, b) in random_short_paths(&run.chart, PULLBACK_PATHS, run.cfg.seed) {
        worst = worst.max(pullback_identity_residual(&run.chart, &a, &b)?);
    }
    Ok(VerificationReport::new(run.name("pullback_identity"), worst, run.cfg.tol_sym)
        .with_meta("paths", PULLBACK_PATHS as f64)
        .with_meta("seed", run.cfg.seed as f64))
}

fn check_maslov(run: &Run, exp: &Expected) -> Result<(VerificationReport, MaslovForm), Error> {
    let loops = run.basis(run.cfg.loop_samples)?;
    let mut mu = [0i64; 2];
    let mut used = [0usize; 2];
    let mut residual = 0i64;
    for i in 0..2 {
        let (value, samples) = maslov_index_adaptive(&run.chart, &loops[i])?;
        let refined = maslov_index(&run.chart, &loops[i].with_samples(2 * samples)?)?;
        mu[i] = value;
        used[i] = samples;
        residual += (value - exp.maslov[i]).abs() + (refined - value).abs();
    }
    let divisibility = gcd(mu[0], mu[1])?;
    residual += (divisibility - 2).abs();
    let report = VerificationReport::new(run.name("maslov_indices"), residual as f64, 0.0)
        .with_meta("mu_1", mu[0] as f64)
        .with_meta("mu_2", mu[1] as f64)
        .with_meta("divisibility", divisibility as f64)
        .with_meta("samples_1", used[0] as f64)
        .with_meta("samples_2", used[1] as f64);
    Ok((report, MaslovForm::new(mu[0], mu[1])?))
}

fn check_action(run: &Run) -> Result<VerificationReport, Error> {
    let n = run.cfg.loop_samples;
    let (coarse, fine) = (run.basis(n)?, run.basis(2 * n)?);
    let mut alpha = [0.0; 2];
    let mut residual = 0.0f64;
    for i in 0..2 {
        alpha[i] = action_integral(&run.chart, &coarse[i])?;
        residual = residual.max((alpha[i] - action_integral(&run.chart, &fine[i])?).abs());
    }
    let area = run.chart.fiber_bound();
    match run.family {
        Family::Clifford => residual = residual.max((alpha[0] - area).abs()).max((alpha[1] - area).abs()),
        Family::Chekanov => residual = residual.max(alpha[1].abs()),
    }
    Ok(VerificationReport::new(run.name("action_integrals"), residual, ACTION_TOLERANCE)
        .with_meta("alpha_1", alpha[0])
        .with_meta("alpha_2", alpha[1])
        .with_meta("samples", n as f64))
}

fn check_monotonicity(run: &Run) -> Result<VerificationReport, Error> {
    let fit = monotonicity_fit(&run.chart, &run.basis(run.cfg.loop_samples)?)?;
    let target = (run.family == Family::Clifford).then(|| run.chart.fiber_bound() / 2.0);
    let mut residual = fit.relative_residual;
    if let Some(t) = target {
        residual = residual.max((fit.constant - t).abs() / t);
    }
    let mut report = VerificationReport::new(run.name("monotonicity"), residual, MONOTONICITY_TOLERANCE)
        .with_meta("constant", fit.constant)
        .with_meta("consistency", fit.relative_residual);
    if let Some(t) = target {
        report = report.with_meta("expected_constant", t);
    }
    Ok(report)
}

/// The section `(0, pi b^2 / 2)` is `T_{b, b/sqrt 2}`, which must be rejected.
fn check_non_monotone(run: &Run) -> Result<VerificationReport, Error> {
    let section = [0.0, run.chart.fiber_bound() / 2.0];
    let n = run.cfg.loop_samples;
    let loops = [LoopSpec::new(Int2Vec::new(1, 0), n, section)?, LoopSpec::new(Int2Vec::new(0, 1), n, section)?];
    let fit = monotonicity_fit(&run.chart, &loops)?;
    let detected = fit.relative_residual > MONOTONICITY_TOLERANCE;
    Ok(VerificationReport::new(run.name("non_monotone_detection"), if detected { 0.0 } else { 1.0 }, 0.0)
        .with_meta("consistency", fit.relative_residual)
        .with_note("a != b section must be reported as non-monotone"))
}

fn check_hamiltonian(run: &Run) -> Result<VerificationReport, Error> {
    let flow = FlowSpec::for_family(run.family);
    let [p1, p2] = run.chart.periods();
    let mut worst = 0.0f64;
    for i in 0..FLOW_GRID {
        for j in 0..FLOW_GRID {
            let q = ChartPoint::new(p1 * i as f64 / FLOW_GRID as f64, p2 * j as f64 / FLOW_GRID as f64, 0.0, 0.0);
            worst = worst.max(hamiltonian_residual(&flow, &run.chart.eval(&q)?, FLOW_DT)?);
        }
    }
    Ok(VerificationReport::new(run.name("hamiltonian_flow"), worst, run.cfg.tol_flow)
        .with_meta("dt", FLOW_DT)
        .with_meta("grid", FLOW_GRID as f64))
}

/// `A_1(T_{a,b}) = T_{b,a}` for `a = b/2`: the image misses the source torus.
fn check_radius_swap(run: &Run) -> Result<VerificationReport, Error> {
    let area = run.chart.fiber_bound();
    let source = [0.75 * area, 0.0];
    let swapped = [0.0, 0.75 * area];
    let flow = FlowSpec::CliffordRotation;
    let to_source = flow_image_distance(&flow, &run.chart, source, source, 64)?;
    let to_swapped = flow_image_distance(&flow, &run.chart, source, swapped, 64)?;
    let residual = if to_source > 1e-3 { to_swapped } else { f64::MAX };
    Ok(VerificationReport::new(run.name("flow_swaps_radii"), residual, TORUS_TOLERANCE)
        .with_meta("distance_to_source", to_source)
        .with_meta("distance_to_swapped", to_swapped)
        .with_note("expected failure of invariance for a != b"))
}

fn check_monodromy(run: &Run, exp: &Expected) -> Result<(VerificationReport, Unimodular2), Error> {
    let m = induced_monodromy(&FlowSpec::for_family(run.family), &run.chart, &run.basis(run.cfg.loop_samples)?)?;
    let [a, b, c, d] = exp.monodromy;
    let matches = m.matrix == Unimodular2::new(a, b, c, d)?;
    let residual = if matches { m.drift } else { f64::MAX };
    let [ma, mb, mc, md] = m.matrix.entries();
    let report = VerificationReport::new(run.name("induced_monodromy"), residual, MAX_WINDING_DRIFT)
        .with_meta("a", ma as f64)
        .with_meta("b", mb as f64)
        .with_meta("c", mc as f64)
        .with_meta("d", md as f64)
        .with_note(format!("measured {}", m.matrix));
    Ok((report, m.matrix))
}

/// Returns the twists `k` that were not excluded.
fn check_twists(run: &Run) -> Result<(VerificationReport, Vec<i64>), Error> {
    let mut violations = 0;
    let mut surviving = Vec::new();
    let mut min_gap = f64::INFINITY;
    for k in -TWIST_RANGE..=TWIST_RANGE {
        let t = twist_exclusion_detail(run.family, run.cfg.b, k, run.cfg.epsilon)?;
        if t.excluded != (k != 0) {
            violations += 1;
        }
        if k != 0 {
            min_gap = min_gap.min(t.gap);
            if !t.excluded {
                surviving.push(k);
            }
        }
    }
    let report = VerificationReport::new(run.name("twist_exclusion"), violations as f64, 0.0)
        .with_meta("epsilon", run.cfg.epsilon)
        .with_meta("min_gap", min_gap)
        .oracle_backed()
        .with_note("radii compared through the Clifford classification oracle");
    Ok((report, surviving))
}

/// Rewrites the measured monodromy (and any surviving twist) in the adapted
/// basis of the measured Maslov class, then classifies.
fn classify_monodromy(
    family: Family,
    mu: MaslovForm,
    m: Unimodular2,
    twists: &[i64],
) -> Result<(SubgroupClass, InvariantPair, VerificationReport), Error> {
    let adapted = adapt_basis(&mu)?;
    let mut gens = vec![GmuElement::from_matrix(change_basis(&m, &adapted.basis)?)?];
    for &k in twists {
        let twist = match family {
            Family::Clifford => change_basis(&Unimodular2::new(1 - k, -k, k, 1 + k)?, &adapted.basis)?,
            Family::Chekanov => change_basis(&Unimodular2::new(1, 0, k, 1)?, &adapted.basis)?,
        };
        gens.push(GmuElement::from_matrix(twist)?);
    }
    let gens = GeneratorSet::new(gens);
    let cls = classify(&gens)?;
    let pair = invariants(&cls, &MaslovForm::adapted(adapted.ml)?)?;
    let report = VerificationReport::new(format!("{family}.monodromy_group"), 0.0, 0.0)
        .with_meta("t", pair.t as f64)
        .with_meta("s", pair.s as f64)
        .with_note(format!("generated by {gens}: {cls}"));
    Ok((cls, pair, report))
}
