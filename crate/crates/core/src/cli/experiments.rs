use std::sync::Arc;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{config_err, Experiment, ExperimentConfig};
use super::svg::{line_plot, Series};
use crate::error::{Error, Result};
use crate::group_ring::{conjugacy_class, ConjugacyClass};
use crate::groups::{make_group, stable_digest, Group, GroupElement};
use crate::homotopy_lab::{class_sum_homotopy_residual, equivariance_defect, homotopy_residual, HomotopyView, residual_record, RandomCochain, ResidualReport, RESIDUAL_HEADER};
use crate::lp_complex::export::fmt_sig17;
use crate::lp_complex::{annihilator_residual, assemble_boundary, dual_boundary, pairing, ChainVector, CochainVector, TruncatedSpace};
use crate::resolutions::{catalog, Presentation, ResolutionName};
use crate::vanishing_lab::{
    boundary_distance_curve, central_catalog, cutoff_split, finite_group_homology_ranks, finite_index_compare, translation_pairing_decay,
    CentralKind, CentralSequence, DecayCurve, LpOptions, CLASS_CAP,
};
use crate::{QRingElement, QResolution, Rational};

/// What an experiment produced. `failures` lists violated invariants.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub csv: Vec<u8>,
    pub svg: Option<String>,
    pub failures: Vec<String>,
    pub summary: String,
}

pub const ADJOINTNESS_TOL: f64 = 1e-10;
pub const HOLDER_SLACK: f64 = 1e-12;
pub const ANNIHILATOR_TOL: f64 = 1e-10;

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Outcome> {
    match cfg.experiment {
        Experiment::VerifyResolutions => verify_resolutions(cfg),
        Experiment::VerifyHomotopy => homotopy(cfg, false),
        Experiment::ClassSumHomotopy => homotopy(cfg, true),
        Experiment::PairingAdjointness => adjointness(cfg),
        Experiment::DistanceCurve => distance_curve(cfg),
        Experiment::TranslationDecay => translation_decay(cfg),
        Experiment::FiniteHomology => finite_homology(cfg),
        Experiment::FiniteIndex => finite_index(cfg),
    }
}

/// Independent generator per cell so parallel evaluation stays reproducible.
fn cell_rng(seed: u64, tag: &[i64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stable_digest(tag).rotate_left(17))
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Result<Vec<u8>>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

fn group_of(cfg: &ExperimentConfig) -> Result<Arc<Group>> {
    make_group(cfg.need("group", &cfg.group)?.clone())
}

fn resolution_of(cfg: &ExperimentConfig) -> Result<QResolution> {
    cfg.need("resolution", &cfg.resolution)?.build().map_err(|e| config_err("resolution", e.to_string()))
}

fn fox_identity(res: &QResolution) -> Result<Option<bool>> {
    match res.name().parse::<ResolutionName>() {
        Ok(ResolutionName::Fox(_)) => {
            let p = Presentation::standard(res.group())?;
            Ok(Some((0..p.relators().len()).all(|i| p.fox_identity_defect::<Rational>(i).is_zero())))
        }
        _ => Ok(None),
    }
}

fn verify_resolutions(cfg: &ExperimentConfig) -> Result<Outcome> {
    let list: Vec<QResolution> = match &cfg.resolution {
        Some(_) => vec![resolution_of(cfg)?],
        None => catalog()?,
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for res in &list {
        let report = res.validate();
        let fox = fox_identity(res)?;
        if !report.passed() {
            failures.push(format!("{}: {:?}", res.name(), report.first_failure()));
        }
        if fox == Some(false) {
            failures.push(format!("{}: Fox identity fails", res.name()));
        }
        rows.push(vec![
            res.name().to_string(),
            res.group().name(),
            res.ranks().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "),
            report.checked_compositions.to_string(),
            report.passed().to_string(),
            fox.map_or("-".to_string(), |b| b.to_string()),
        ]);
    }
    let csv = csv_bytes(&["resolution", "group", "ranks", "compositions", "passed", "fox_identity"], rows)?;
    Ok(Outcome { csv, svg: None, summary: format!("{} resolutions checked", list.len()), failures })
}

fn homotopy(cfg: &ExperimentConfig, class_mode: bool) -> Result<Outcome> {
    let group = group_of(cfg)?;
    let field = if class_mode { "class" } else { "h" };
    let g = group.parse_element(cfg.need(field, &cfg.element)?).map_err(|e| config_err(field, e.to_string()))?;
    let degrees = cfg.need_list("degree", &cfg.degrees)?;
    let radii = cfg.need_list("R", &cfg.radii)?;
    let samples = cfg.samples.unwrap_or(20);
    let (label, class) = if class_mode {
        let ConjugacyClass::Finite(elements) = conjugacy_class(&group, &g, CLASS_CAP)? else {
            return Err(Error::NotFiniteClass { cap: CLASS_CAP });
        };
        let label = format!("{{{}}}", elements.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";"));
        (label, Some(ConjugacyClass::Finite(elements)))
    } else {
        (g.to_string(), None)
    };
    let singleton = class.as_ref().and_then(|c| c.len()) == Some(1);
    let cells: Vec<(usize, usize, usize)> =
        degrees.iter().flat_map(|&d| radii.iter().flat_map(move |&r| (0..samples).map(move |s| (d, r, s)))).collect();
    let reports = cells
        .par_iter()
        .map(|&(d, r, s)| {
            let phi = RandomCochain::new(&group, d, r, cfg.seed.wrapping_add(s as u64))?;
            match &class {
                Some(k) => class_sum_homotopy_residual::<Rational, _>(&phi, k),
                None => homotopy_residual::<Rational, _>(&phi, &g),
            }
        })
        .collect::<Result<Vec<ResidualReport<Rational>>>>()?;
    let mut failures = Vec::new();
    let mut nonzero = 0;
    let rows: Vec<[String; 6]> = cells
        .iter()
        .zip(&reports)
        .map(|(&(d, r, s), rep)| {
            if rep.max != Rational::from_integer(0.into()) {
                nonzero += 1;
                if !class_mode || singleton {
                    failures.push(format!("degree {d}, R={r}, sample {s}: residual {}", rep.max));
                }
            }
            residual_record(&group.name(), &label, d, r, rep)
        })
        .collect();
    let csv = csv_bytes(&RESIDUAL_HEADER, rows)?;
    let mut summary = format!("{} cochains, {nonzero} with nonzero residual", reports.len());
    if let Some(ConjugacyClass::Finite(elements)) = &class {
        let phi = RandomCochain::new(&group, degrees[0].max(1), radii[0], cfg.seed)?;
        let defect: Rational = equivariance_defect(&HomotopyView::summed(&phi, elements.clone()))?;
        summary.push_str(&format!(", equivariance defect of the summed homotopy {defect}"));
    }
    Ok(Outcome { csv, svg: None, failures, summary })
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
}

fn adjointness(cfg: &ExperimentConfig) -> Result<Outcome> {
    let res = resolution_of(cfg)?;
    let i = *cfg.need_list("degree", &cfg.degrees)?.first().expect("nonempty");
    if i == 0 || i > res.length() {
        return Err(config_err("degree", format!("boundary index must be in 1..={}", res.length())));
    }
    let radii = cfg.need_list("R", &cfg.radii)?;
    let ps = cfg.need_list("p", &cfg.p)?;
    let samples = cfg.samples.unwrap_or(1000);
    let annihilators: Vec<f64> = radii.iter().map(|&r| annihilator_residual::<_, f64>(&res, i, r)).collect::<Result<_>>()?;
    let cells: Vec<(usize, usize)> = (0..radii.len()).flat_map(|a| (0..ps.len()).map(move |b| (a, b))).collect();
    let results = cells
        .par_iter()
        .map(|&(a, b)| {
            let (r, p) = (radii[a], ps[b]);
            let op = assemble_boundary::<_, f64>(&res, i, r)?;
            let dual = dual_boundary::<_, f64>(&res, i, r)?;
            let group = res.group();
            let xs = TruncatedSpace::chains(group, op.domain.rank, r, p)?;
            let ys = TruncatedSpace::cochains(group, op.codomain.rank, op.codomain.radius(), p)?;
            let hs = TruncatedSpace::cochains(group, op.domain.rank, r, p)?;
            let mut rng = cell_rng(cfg.seed, &[r as i64, p.to_bits() as i64]);
            let (mut defect, mut ratio) = (0.0f64, 0.0f64);
            for _ in 0..samples {
                let x = ChainVector::new(xs.clone(), random_vector(&mut rng, xs.dim()))?;
                let y = CochainVector::new(ys.clone(), random_vector(&mut rng, ys.dim()))?;
                let lhs = pairing(&y, &op.apply_chain(&x)?)?;
                let rhs = pairing(&dual.apply_cochain(&y)?, &x)?;
                defect = defect.max((lhs - rhs).abs() / ((1.0 + x.norm()) * (1.0 + y.norm())));
                let z = CochainVector::new(hs.clone(), random_vector(&mut rng, hs.dim()))?;
                let bound = z.norm() * x.norm();
                if bound > 0.0 {
                    ratio = ratio.max(pairing(&z, &x)?.abs() / bound);
                }
            }
            Ok((defect, ratio))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut failures = Vec::new();
    let mut rows = Vec::new();
    for (&(a, b), &(defect, ratio)) in cells.iter().zip(&results) {
        let (r, p, ann) = (radii[a], ps[b], annihilators[a]);
        if defect > ADJOINTNESS_TOL {
            failures.push(format!("R={r} p={p}: adjointness defect {defect:e}"));
        }
        if ratio > 1.0 + HOLDER_SLACK {
            failures.push(format!("R={r} p={p}: Hölder ratio {ratio}"));
        }
        if ann > ANNIHILATOR_TOL {
            failures.push(format!("R={r}: annihilator residual {ann:e}"));
        }
        rows.push(vec![
            res.name().to_string(),
            i.to_string(),
            r.to_string(),
            fmt_sig17(p),
            samples.to_string(),
            fmt_sig17(defect),
            fmt_sig17(ratio),
            fmt_sig17(ann),
        ]);
    }
    let header = ["resolution", "i", "R", "p", "samples", "max_adjoint_defect", "max_holder_ratio", "annihilator_residual"];
    let summary = format!("{} cells x {samples} draws", cells.len());
    Ok(Outcome { csv: csv_bytes(&header, rows)?, svg: None, failures, summary })
}

/// Parses `x` as one ring element per copy, separated by `;`.
fn chain_terms(group: &Arc<Group>, rank: usize, x: Option<&String>) -> Result<Vec<(usize, GroupElement, f64)>> {
    let Some(text) = x else {
        return Ok(vec![(0, group.identity(), 1.0)]);
    };
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() > rank {
        return Err(config_err("x", format!("{} copies given, rank is {rank}", parts.len())));
    }
    let mut out = Vec::new();
    for (copy, part) in parts.iter().enumerate() {
        let u = QRingElement::parse(group, part.trim()).map_err(|e| config_err("x", e.to_string()))?;
        out.extend(u.terms().map(|(g, c)| (copy, g.clone(), crate::scalar::to_real::<_, f64>(c))));
    }
    Ok(out)
}

fn curve_svg(title: &str, x_label: &str, y_label: &str, curves: &[DecayCurve]) -> String {
    let series: Vec<Series> = curves
        .iter()
        .map(|c| Series { label: format!("p={}", c.p), points: c.rows.iter().map(|r| (r.index as f64, r.value)).collect() })
        .collect();
    line_plot(title, x_label, y_label, &series)
}

fn distance_curve(cfg: &ExperimentConfig) -> Result<Outcome> {
    let res = resolution_of(cfg)?;
    let degree = *cfg.need_list("degree", &cfg.degrees)?.first().expect("nonempty");
    if degree + 1 > res.length() {
        return Err(config_err("degree", format!("{} has no boundary out of degree {}", res.name(), degree + 1)));
    }
    let mut radii = cfg.need_list("R", &cfg.radii)?.to_vec();
    radii.sort_unstable();
    radii.dedup();
    let ps = cfg.need_list("p", &cfg.p)?;
    let x = chain_terms(res.group(), res.rank(degree), cfg.x.as_ref())?;
    let opts = LpOptions { max_iterations: cfg.max_iterations, ..LpOptions::default() };
    let curves = ps
        .par_iter()
        .map(|&p| boundary_distance_curve("distance-curve", &res, degree, &x, p, &radii, &opts).map(|c| c.curve))
        .collect::<Result<Vec<_>>>()?;
    let mut csv = Vec::new();
    DecayCurve::write_csv(&curves, &mut csv)?;
    let svg = curve_svg(&format!("distance to image, {} degree {degree}", res.name()), "R", "distance", &curves);
    let unconverged: usize = curves.iter().flat_map(|c| &c.rows).filter(|r| !r.converged).count();
    let summary = format!("{} curves x {} radii, {unconverged} points not converged", curves.len(), radii.len());
    Ok(Outcome { csv, svg: Some(svg), failures: Vec::new(), summary })
}

fn sequence_for(cfg: &ExperimentConfig, group: &Arc<Group>) -> Result<CentralSequence> {
    match &cfg.indices {
        None => central_catalog(group, *cfg.need("count", &cfg.count)?),
        Some(idx) => {
            let base = central_catalog(group, 1)?;
            match base.kind() {
                CentralKind::Powers(g) => CentralSequence::powers(group, g, idx.iter().copied()),
                CentralKind::ClassSums => {
                    let rep = base.members()[0].1.support().next().expect("nonempty class").clone();
                    let reps: Vec<(i64, GroupElement)> = idx.iter().map(|&n| (n, group.pow(&rep, n))).collect();
                    CentralSequence::class_sums(group, &reps)
                }
            }
        }
    }
}

fn translation_decay(cfg: &ExperimentConfig) -> Result<Outcome> {
    let group = group_of(cfg)?;
    let radius = *cfg.need_list("R", &cfg.radii)?.first().expect("nonempty");
    let ps = cfg.need_list("p", &cfg.p)?;
    let seq = sequence_for(cfg, &group)?;
    let ball = group.ball(radius)?;
    let mut rng = cell_rng(cfg.seed, &[radius as i64]);
    let xc = random_vector(&mut rng, ball.len());
    let yc = random_vector(&mut rng, ball.len());
    let mut curves = Vec::new();
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for &p in ps {
        let x = ChainVector::new(TruncatedSpace::chains(&group, 1, radius, p)?, xc.clone())?;
        let y = CochainVector::new(TruncatedSpace::cochains(&group, 1, radius, p)?, yc.clone())?;
        let curve = translation_pairing_decay("translation-decay", &y, &x, &seq)?;
        for ((k, u), row) in seq.members().iter().zip(&curve.rows) {
            let far = u.support().map(|g| group.word_length(g)).collect::<Result<Vec<_>>>()?.into_iter().all(|l| l > 2 * radius);
            if far && row.value != 0.0 {
                failures.push(format!("p={p} index {k}: disjoint supports but pairing {}", row.value));
            }
        }
        let cut = cutoff_split(&y, &x, &seq, cfg.eps)?;
        if !cut.holds {
            failures.push(format!("p={p}: cut-off gap {} exceeds {}", cut.max_gap, cut.bound));
        }
        notes.push(format!("p={p}: cut-off gap {:.3e} <= {:.3e}", cut.max_gap, cut.bound));
        curves.push(curve);
    }
    let mut csv = Vec::new();
    DecayCurve::write_csv(&curves, &mut csv)?;
    let axis = curves.first().map_or("i".to_string(), |c| c.index_kind.to_string());
    let svg = curve_svg(&format!("pairing along central sequence, {}", group.name()), &axis, "b(y, u x)", &curves);
    Ok(Outcome { csv, svg: Some(svg), failures, summary: notes.join("; ") })
}

fn finite_homology(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = *cfg.need("n", &cfg.n)?;
    let top = *cfg.need("N", &cfg.top)?;
    let ps = cfg.need_list("p", &cfg.p)?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut first: Option<Vec<usize>> = None;
    for &p in ps {
        let r = finite_group_homology_ranks(n, top, p).map_err(|e| config_err("n", e.to_string()))?;
        let mut expect = vec![0; top + 1];
        expect[0] = 1;
        if r.dims != expect {
            failures.push(format!("p={p}: dims {:?}", r.dims));
        }
        if !r.stable {
            failures.push(format!("p={p}: rank decisions depend on the threshold"));
        }
        match &first {
            Some(f) if *f != r.dims => failures.push(format!("p={p}: dims differ from the first exponent")),
            None => first = Some(r.dims.clone()),
            _ => {}
        }
        for (deg, dim) in r.dims.iter().enumerate() {
            rows.push(vec![n.to_string(), top.to_string(), fmt_sig17(p), deg.to_string(), dim.to_string(), r.stable.to_string()]);
        }
    }
    let csv = csv_bytes(&["n", "N", "p", "degree", "dim", "stable"], rows)?;
    Ok(Outcome { csv, svg: None, failures, summary: format!("dims {:?}", first.unwrap_or_default()) })
}

fn finite_index(cfg: &ExperimentConfig) -> Result<Outcome> {
    let n = *cfg.need("n", &cfg.n)?;
    let m = *cfg.need("m", &cfg.m)?;
    let ps = cfg.need_list("p", &cfg.p)?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &p in ps {
        let r = finite_index_compare(n, m, p).map_err(|e| config_err("m", e.to_string()))?;
        if !r.equal {
            failures.push(format!("p={p}: {:?} vs {:?}", r.group.dims, r.subgroup.dims));
        }
        for (deg, (a, b)) in r.group.dims.iter().zip(&r.subgroup.dims).enumerate() {
            rows.push(vec![n.to_string(), m.to_string(), fmt_sig17(p), deg.to_string(), a.to_string(), b.to_string(), r.equal.to_string()]);
        }
    }
    let csv = csv_bytes(&["n", "m", "p", "degree", "dim_group", "dim_subgroup", "equal"], rows)?;
    Ok(Outcome { csv, svg: None, failures, summary: format!("C{n} vs C{m}") })
}
