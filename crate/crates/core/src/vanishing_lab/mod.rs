//! Numerical witnesses for vanishing of reduced l^p (co)homology: distance
//! of a chain to the image of the next boundary under growing truncation,
//! decay of the evaluation pairing along central sequences, and homology
//! ranks of finite cyclic groups.

mod homology;
mod minimize;

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use nalgebra::DVector;

pub use homology::{finite_group_homology_ranks, finite_index_compare, numerical_rank, FiniteIndexReport, HomologyReport, RANK_THRESHOLD};
pub use minimize::{lp_distance, LpOptions, Method, MinimizationResult};

use crate::error::{Error, Result};
use crate::group_ring::{conjugacy_class, ConjugacyClass, RingElement};
use crate::groups::{Group, GroupElement, GroupKind};
use crate::lp_complex::export::fmt_sig17;
use crate::lp_complex::{assemble_boundary, pairing, translate_ring, ChainVector, CochainVector, Operator, Shape, TruncatedSpace};
use crate::resolutions::Resolution;
use crate::scalar::{Coefficient, Real};
use crate::{QRingElement, Rational};

/// Powers `g^k` with `g^k != 1` for `0 < k <= POWER_CAP` count as infinite order.
pub const POWER_CAP: i64 = 1024;

/// Orbit cap used when collecting conjugacy classes for class sums.
pub const CLASS_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexKind {
    Radius,
    Translation,
    ClassSum,
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexKind::Radius => "R",
            IndexKind::Translation => "i",
            IndexKind::ClassSum => "n",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayRow {
    pub index: i64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayCurve {
    pub experiment: String,
    pub group: String,
    pub resolution: String,
    pub degree: usize,
    pub p: f64,
    pub index_kind: IndexKind,
    pub rows: Vec<DecayRow>,
}

pub const CURVE_HEADER: [&str; 10] =
    ["experiment", "group", "resolution", "degree", "p", "index_kind", "index", "value", "iterations", "converged"];

impl DecayCurve {
    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.value).collect()
    }

    pub fn records(&self) -> impl Iterator<Item = [String; 10]> + '_ {
        self.rows.iter().map(move |r| {
            [
                self.experiment.clone(),
                self.group.clone(),
                self.resolution.clone(),
                self.degree.to_string(),
                fmt_sig17(self.p),
                self.index_kind.to_string(),
                r.index.to_string(),
                fmt_sig17(r.value),
                r.iterations.to_string(),
                r.converged.to_string(),
            ]
        })
    }

    /// Writes the header and one row per point.
    pub fn write_csv<W: Write>(curves: &[DecayCurve], out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CURVE_HEADER)?;
        for c in curves {
            for rec in c.records() {
                w.write_record(&rec)?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Distance from a chain to `im(T)`, where the chain may have mass outside
/// the codomain of `T`; that mass is unreachable and adds to the distance.
pub fn lp_distance_chain<T: Real>(x: &ChainVector<T>, op: &Operator<T>, opts: &LpOptions<T>) -> Result<MinimizationResult<T>> {
    if op.dual {
        return Err(Error::InvalidParameter("distance needs a boundary, not a dual".into()));
    }
    if x.space().rank() != op.codomain.rank {
        return Err(Error::RankMismatch { left: x.space().rank(), right: op.codomain.rank });
    }
    let p = x.space().p();
    let mut inside = DVector::zeros(op.codomain.dim());
    let mut outside = T::zero();
    for (copy, h, v) in x.support() {
        match op.codomain.index(copy, h) {
            Some(k) => inside[k] += v,
            None => outside += v.abs().powf(p),
        }
    }
    let mut r = lp_distance(&inside, &op.matrix, p, opts)?;
    if outside > T::zero() {
        r.value = (r.value.powf(p) + outside).powf(T::one() / p);
        for h in r.history.iter_mut() {
            *h = (h.powf(p) + outside).powf(T::one() / p);
        }
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct DistancePoint<T: Real> {
    pub radius: usize,
    pub domain: Shape,
    pub result: MinimizationResult<T>,
}

#[derive(Clone, Debug)]
pub struct DistanceCurve<T: Real> {
    pub curve: DecayCurve,
    pub points: Vec<DistancePoint<T>>,
    group: Arc<Group>,
    p: T,
}

impl<T: Real> DistanceCurve<T> {
    /// The minimizing `c` at the `k`-th radius as a chain on the domain ball.
    pub fn argmin(&self, k: usize) -> Result<ChainVector<T>> {
        let pt = &self.points[k];
        let space = TruncatedSpace::chains(&self.group, pt.domain.rank, pt.domain.radius(), self.p)?;
        ChainVector::new(space, pt.result.argmin.clone())
    }
}

/// `d(R) = min_c |x - d_(i+1) c|_p` with `c` supported in `B(R)`, for each
/// radius in increasing order. Each solve is warm-started from the previous
/// minimizer, and the curve is checked to be nonincreasing.
pub fn boundary_distance_curve<S: Coefficient, T: Real>(
    experiment: &str,
    res: &Resolution<S>,
    degree: usize,
    x: &[(usize, GroupElement, T)],
    p: T,
    radii: &[usize],
    opts: &LpOptions<T>,
) -> Result<DistanceCurve<T>> {
    if degree + 1 > res.length() {
        return Err(Error::InvalidParameter(format!("{} has no boundary out of degree {}", res.name(), degree + 1)));
    }
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("radii must be nonempty and strictly increasing".into()));
    }
    let group = res.group().clone();
    let x_radius = x.iter().map(|(_, h, _)| group.word_length(h)).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0);
    let xspace = TruncatedSpace::chains(&group, res.rank(degree), x_radius, p)?;
    let xv = ChainVector::from_terms(xspace, x.iter().map(|(c, h, v)| (*c, h, *v)))?;

    let mut points: Vec<DistancePoint<T>> = Vec::new();
    let mut rows = Vec::new();
    for &radius in radii {
        let op: Operator<T> = assemble_boundary(res, degree + 1, radius)?;
        let mut o = opts.clone();
        if let Some(prev) = points.last() {
            let mut warm = DVector::zeros(op.domain.dim());
            for k in 0..prev.domain.dim() {
                let (copy, h) = prev.domain.basis(k);
                let j = op.domain.index(copy, h).expect("balls are nested");
                warm[j] = prev.result.argmin[k];
            }
            o.warm_start = Some(warm);
        }
        let result = lp_distance_chain(&xv, &op, &o)?;
        if let Some(prev) = points.last() {
            let slack = T::default_epsilon() * real_scalar(1e4) * (T::one() + prev.result.value);
            if result.value > prev.result.value + slack {
                return Err(Error::Invariant(format!(
                    "distance increased from R={} to R={radius}: {} > {}",
                    prev.radius, result.value, prev.result.value
                )));
            }
        }
        rows.push(DecayRow {
            index: radius as i64,
            value: result.value.to_f64().unwrap_or(f64::NAN),
            iterations: result.iterations,
            converged: result.converged,
        });
        points.push(DistancePoint { radius, domain: op.domain.clone(), result });
    }
    let curve = DecayCurve {
        experiment: experiment.to_string(),
        group: group.name(),
        resolution: res.name().to_string(),
        degree,
        p: p.to_f64().unwrap_or(f64::NAN),
        index_kind: IndexKind::Radius,
        rows,
    };
    Ok(DistanceCurve { curve, points, group, p })
}

fn real_scalar<T: Real>(v: f64) -> T {
    crate::scalar::real(v)
}

#[derive(Clone, Debug, PartialEq)]
pub enum CentralKind {
    Powers(GroupElement),
    ClassSums,
}

/// An indexed family of central elements of the group ring.
#[derive(Clone, Debug)]
pub struct CentralSequence {
    group: Arc<Group>,
    kind: CentralKind,
    members: Vec<(i64, QRingElement)>,
}

impl CentralSequence {
    /// `g^k` for `k` in `indices`; `g` must be central and of infinite order.
    pub fn powers(group: &Arc<Group>, g: &GroupElement, indices: impl IntoIterator<Item = i64>) -> Result<Self> {
        let single = QRingElement::element(group, g)?;
        if !single.is_central() {
            return Err(Error::NonCentral(g.to_string()));
        }
        let id = group.identity();
        let mut acc = id.clone();
        for k in 1..=POWER_CAP {
            acc = group.op(&acc, g);
            if acc == id {
                return Err(Error::InvalidParameter(format!("{g} has order {k}")));
            }
        }
        let members = indices
            .into_iter()
            .map(|k| Ok((k, QRingElement::element(group, &group.pow(g, k))?)))
            .collect::<Result<_>>()?;
        Ok(CentralSequence { group: group.clone(), kind: CentralKind::Powers(g.clone()), members })
    }

    /// Class sums of the given representatives, indexed by `indices`.
    pub fn class_sums(group: &Arc<Group>, reps: &[(i64, GroupElement)]) -> Result<Self> {
        let mut members: Vec<(i64, QRingElement)> = Vec::new();
        for (k, g) in reps {
            let class = match conjugacy_class(group, g, CLASS_CAP)? {
                ConjugacyClass::Finite(c) => c,
                ConjugacyClass::ExceedsCap => return Err(Error::NotFiniteClass { cap: CLASS_CAP }),
            };
            let sum = RingElement::from_terms(group, class.into_iter().map(|h| (h, Rational::from_integer(1.into()))))?;
            if !sum.is_central() {
                return Err(Error::Invariant(format!("class sum of {g} is not central")));
            }
            if members.iter().any(|(_, m)| *m == sum) {
                return Err(Error::InvalidParameter(format!("class of {g} repeated")));
            }
            members.push((*k, sum));
        }
        Ok(CentralSequence { group: group.clone(), kind: CentralKind::ClassSums, members })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn kind(&self) -> &CentralKind {
        &self.kind
    }

    pub fn members(&self) -> &[(i64, QRingElement)] {
        &self.members
    }

    pub fn index_kind(&self) -> IndexKind {
        match self.kind {
            CentralKind::Powers(_) => IndexKind::Translation,
            CentralKind::ClassSums => IndexKind::ClassSum,
        }
    }
}

/// The catalog's infinite central family for `group`:
/// powers of `(0,0,1)` in the Heisenberg group, powers of the first
/// generator in `Z^d`, class sums `r^n + r^-n` (`n = 1..=count`) in the
/// infinite dihedral group. Powers use `count` consecutive indices centred
/// on zero.
pub fn central_catalog(group: &Arc<Group>, count: usize) -> Result<CentralSequence> {
    let lo = -((count as i64 - 1) / 2);
    let powers = lo..=lo + count as i64 - 1;
    let reject = |reason: &str| Err(Error::NoCentralFamily { group: group.name(), reason: reason.to_string() });
    match group.kind() {
        GroupKind::Heisenberg => CentralSequence::powers(group, &GroupElement::Heisenberg([0, 0, 1]), powers),
        GroupKind::IntegerLattice(_) => CentralSequence::powers(group, &group.generators()[0].clone(), powers),
        GroupKind::InfiniteDihedral => {
            let reps: Vec<(i64, GroupElement)> =
                (1..=count as i64).map(|n| (n, GroupElement::Dihedral { rotation: n, flip: false })).collect();
            CentralSequence::class_sums(group, &reps)
        }
        GroupKind::FreeGroup(_) => reject("no infinite central family in catalog"),
        GroupKind::Trivial | GroupKind::CyclicFinite(_) | GroupKind::SymmetricS3 => {
            reject("finite group has no infinite central family")
        }
    }
}

/// `b(y, u_k x)` for every member `u_k` of the sequence.
pub fn translation_pairing_decay<T: Real>(
    experiment: &str,
    y: &CochainVector<T>,
    x: &ChainVector<T>,
    seq: &CentralSequence,
) -> Result<DecayCurve> {
    let rows = seq
        .members
        .iter()
        .map(|(k, u)| {
            let v = pairing(y, &translate_ring(x, u)?)?;
            Ok(DecayRow { index: *k, value: v.to_f64().unwrap_or(f64::NAN), iterations: 0, converged: true })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecayCurve {
        experiment: experiment.to_string(),
        group: seq.group.name(),
        resolution: "-".to_string(),
        degree: 0,
        p: x.space().p().to_f64().unwrap_or(f64::NAN),
        index_kind: seq.index_kind(),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CutoffReport {
    pub eps: f64,
    /// Radius of the ball `A` carrying all but `eps` of `x`.
    pub chain_radius: usize,
    /// Radius of the ball `B` carrying all but `eps` of `y`.
    pub cochain_radius: usize,
    /// Largest `|b(y, u x) - b(y_B, u x_A)| / |u|_1` over the sequence.
    pub max_gap: f64,
    /// `eps (eps + |x|_p + |y|_q)`.
    pub bound: f64,
    pub holds: bool,
}

fn tail_radius<T: Real>(support: &[(usize, GroupElement, T, usize)], e: T, eps: T) -> usize {
    let top = support.iter().map(|s| s.3).max().unwrap_or(0);
    (0..=top)
        .find(|&r| {
            let tail = support.iter().filter(|s| s.3 > r).fold(T::zero(), |acc, s| acc + s.2.abs().powf(e));
            tail.powf(T::one() / e) < eps
        })
        .unwrap_or(top)
}

/// Cut-off check: restrict `x` to the smallest ball `A` and `y` to the
/// smallest ball `B` whose complements carry less than `eps` of the norm,
/// and compare `b(y, u x)` with `b(y_B, u x_A)` for every member `u`.
pub fn cutoff_split<T: Real>(y: &CochainVector<T>, x: &ChainVector<T>, seq: &CentralSequence, eps: T) -> Result<CutoffReport> {
    let group = x.space().group().clone();
    let lengths = |v: Vec<(usize, GroupElement, T)>| -> Result<Vec<(usize, GroupElement, T, usize)>> {
        v.into_iter().map(|(c, h, t)| Ok((c, h.clone(), t, group.word_length(&h)?))).collect()
    };
    let xs = lengths(x.support().map(|(c, h, v)| (c, h.clone(), v)).collect())?;
    let ys = lengths(y.support().map(|(c, h, v)| (c, h.clone(), v)).collect())?;
    let a = tail_radius(&xs, x.space().p(), eps);
    let b = tail_radius(&ys, y.space().q(), eps);
    let xa = ChainVector::from_terms(x.space().clone(), xs.iter().filter(|s| s.3 <= a).map(|s| (s.0, &s.1, s.2)))?;
    let yb = CochainVector::from_terms(y.space().clone(), ys.iter().filter(|s| s.3 <= b).map(|s| (s.0, &s.1, s.2)))?;
    let mut max_gap = T::zero();
    for (_, u) in &seq.members {
        let weight: T = u.terms().fold(T::zero(), |acc, (_, c)| acc + crate::scalar::to_real::<_, T>(c).abs());
        let full = pairing(y, &translate_ring(x, u)?)?;
        let cut = pairing(&yb, &translate_ring(&xa, u)?)?;
        let gap = (full - cut).abs() / weight;
        if gap > max_gap {
            max_gap = gap;
        }
    }
    let bound = eps * (eps + x.norm() + y.norm());
    let to = |v: T| v.to_f64().unwrap_or(f64::NAN);
    Ok(CutoffReport {
        eps: to(eps),
        chain_radius: a,
        cochain_radius: b,
        max_gap: to(max_gap),
        bound: to(bound),
        holds: max_gap <= bound,
    })
}
