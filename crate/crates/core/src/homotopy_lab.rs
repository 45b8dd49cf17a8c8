//! Bar-resolution cochains with values in finitely supported functions on
//! the group, the coboundary, and the chain homotopy `j` built from a central
//! element `h`:
//!
//! ```text
//! (d phi)(x_0..x_n) = sum_i (-1)^i phi(x_0, .., ^x_i, .., x_n)
//! (j phi)(x_0..x_n) = sum_k (-1)^(k+1) phi(x_0, .., x_k, h x_k, .., h x_n)
//! ```
//!
//! For central `h`, `d j + j d = id - h` holds on the nose; everything here
//! is exact. Cochains are equivariant, `phi(g x) = g phi(x)`, and are stored
//! or computed only on the slice whose first coordinate is the identity.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group_ring::{ConjugacyClass, RingElement};
use crate::groups::{Ball, Group, GroupElement};
use crate::resolutions::BAR_DEGREE_CAP;
use crate::scalar::Coefficient;

/// An equivariant bar cochain of some degree `n`, i.e. a function of
/// `n + 1` group elements.
pub trait BarCochain<S: Coefficient>: Sync {
    fn group(&self) -> &Arc<Group>;

    fn degree(&self) -> usize;

    /// Radius of the slice tuples this cochain is meant to be evaluated on.
    fn window(&self) -> usize;

    /// Value at `(1, xs..)`; `None` outside the cochain's domain.
    fn slice_value(&self, xs: &[GroupElement]) -> Option<RingElement<S>>;

    /// Value at an arbitrary tuple via `phi(x_0, ..) = x_0 phi(1, x_0^-1 x_1, ..)`.
    fn value(&self, tuple: &[GroupElement]) -> Option<RingElement<S>> {
        let g = self.group();
        let x0 = &tuple[0];
        if *x0 == g.identity() {
            return self.slice_value(&tuple[1..]);
        }
        let inv = g.inverse(x0);
        let key: Vec<GroupElement> = tuple[1..].iter().map(|x| g.op(&inv, x)).collect();
        self.slice_value(&key).map(|v| v.left_translate(x0))
    }
}

/// A cochain given by a finite table on slice tuples with entries in `B(R)`.
#[derive(Clone, Debug)]
pub struct EquivariantCochain<S> {
    group: Arc<Group>,
    degree: usize,
    radius: usize,
    values: HashMap<Vec<GroupElement>, RingElement<S>>,
}

impl<S: Coefficient> EquivariantCochain<S> {
    pub fn new(group: &Arc<Group>, degree: usize, radius: usize) -> Result<Self> {
        if degree > BAR_DEGREE_CAP {
            return Err(Error::Unsupported(format!("bar degree {degree} (cap {BAR_DEGREE_CAP})")));
        }
        Ok(EquivariantCochain { group: group.clone(), degree, radius, values: HashMap::new() })
    }

    /// Sets the value at `(1, xs..)`.
    pub fn insert(&mut self, xs: Vec<GroupElement>, value: RingElement<S>) -> Result<()> {
        if xs.len() != self.degree {
            return Err(Error::DimensionMismatch(format!("{} arguments for degree {}", xs.len() + 1, self.degree)));
        }
        let ball = self.group.ball(self.radius)?;
        if let Some(x) = xs.iter().find(|x| !ball.contains(x)) {
            return Err(Error::InvalidParameter(format!("{x} outside the ball of radius {}", self.radius)));
        }
        self.values.insert(xs, value);
        Ok(())
    }

    /// Tabulates `source` on every slice tuple of `B(radius)^degree` where it is
    /// defined.
    pub fn materialize<C: BarCochain<S> + ?Sized>(source: &C, radius: usize) -> Result<Self> {
        let group = source.group().clone();
        let degree = source.degree();
        let tuples = slice_tuples(&*group.ball(radius)?, degree, group.ball_cap())?;
        let values = tuples
            .into_par_iter()
            .filter_map(|xs| source.slice_value(&xs).map(|v| (xs, v)))
            .collect();
        Ok(EquivariantCochain { group, degree, radius, values })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Number of slice tuples with a stored value.
    pub fn defined(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, xs: &[GroupElement]) -> Option<&RingElement<S>> {
        self.values.get(xs)
    }

    pub fn scale(&self, lambda: &S) -> Self {
        let values = self.values.iter().map(|(k, v)| (k.clone(), v.scale(lambda))).collect();
        EquivariantCochain { values, ..self.clone() }
    }

    /// Sum on the common domain.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!("degrees {} and {}", self.degree, other.degree)));
        }
        let mut values = HashMap::new();
        for (k, v) in &self.values {
            if let Some(w) = other.values.get(k) {
                values.insert(k.clone(), v.add(w)?);
            }
        }
        Ok(EquivariantCochain { values, radius: self.radius.min(other.radius), ..self.clone() })
    }

    /// Largest absolute coefficient difference on the common domain.
    pub fn max_difference(&self, other: &Self) -> Result<S> {
        let mut worst = S::zero();
        for (k, v) in &self.values {
            if let Some(w) = other.values.get(k) {
                let m = v.sub(w)?.max_abs_coefficient();
                if m > worst {
                    worst = m;
                }
            }
        }
        Ok(worst)
    }
}

impl<S: Coefficient> BarCochain<S> for EquivariantCochain<S> {
    fn group(&self) -> &Arc<Group> {
        &self.group
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn window(&self) -> usize {
        self.radius
    }

    fn slice_value(&self, xs: &[GroupElement]) -> Option<RingElement<S>> {
        self.values.get(xs).cloned()
    }
}

/// A cochain defined on every tuple by a seeded pseudo-random rule: the value
/// at `(1, xs..)` depends only on `(seed, xs)`. Values have 1 to
/// `max_terms` terms drawn from `B(value_radius)` with rational coefficients
/// `a/b`, `0 < |a| <= 6`, `1 <= b <= 5`.
#[derive(Clone, Debug)]
pub struct RandomCochain {
    group: Arc<Group>,
    degree: usize,
    window: usize,
    seed: u64,
    value_ball: Arc<Ball>,
    max_terms: usize,
}

impl RandomCochain {
    pub fn new(group: &Arc<Group>, degree: usize, window: usize, seed: u64) -> Result<Self> {
        Ok(RandomCochain { group: group.clone(), degree, window, seed, value_ball: group.ball(2)?, max_terms: 3 })
    }

    pub fn with_values(mut self, value_radius: usize, max_terms: usize) -> Result<Self> {
        self.value_ball = self.group.ball(value_radius)?;
        self.max_terms = max_terms.max(1);
        Ok(self)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl<S: Coefficient> BarCochain<S> for RandomCochain {
    fn group(&self) -> &Arc<Group> {
        &self.group
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn window(&self) -> usize {
        self.window
    }

    fn slice_value(&self, xs: &[GroupElement]) -> Option<RingElement<S>> {
        let mut words = vec![self.degree as i64];
        for x in xs {
            x.encode(&mut words);
        }
        let key = crate::groups::stable_digest(&words);
        let mut rng = ChaCha8Rng::seed_from_u64(splitmix(self.seed ^ splitmix(key)));
        let mut v = RingElement::zero(&self.group);
        let terms = rng.gen_range(1..=self.max_terms);
        for _ in 0..terms {
            let g = &self.value_ball.elements()[rng.gen_range(0..self.value_ball.len())];
            let mut num = rng.gen_range(1..=6i64);
            if rng.gen_bool(0.5) {
                num = -num;
            }
            let den = rng.gen_range(1..=5i64);
            let c = S::from_i64(num).expect("small") / S::from_i64(den).expect("small");
            v.add_term(g.clone(), c);
        }
        Some(v)
    }
}

/// Lazy coboundary of a degree `n - 1` cochain.
pub struct CoboundaryView<'a, C: ?Sized> {
    inner: &'a C,
}

impl<'a, C: ?Sized> CoboundaryView<'a, C> {
    pub fn new(inner: &'a C) -> Self {
        CoboundaryView { inner }
    }
}

impl<S: Coefficient, C: BarCochain<S> + ?Sized> BarCochain<S> for CoboundaryView<'_, C> {
    fn group(&self) -> &Arc<Group> {
        self.inner.group()
    }

    fn degree(&self) -> usize {
        self.inner.degree() + 1
    }

    fn window(&self) -> usize {
        self.inner.window()
    }

    fn slice_value(&self, xs: &[GroupElement]) -> Option<RingElement<S>> {
        let g = self.group();
        let full: Vec<GroupElement> = std::iter::once(g.identity()).chain(xs.iter().cloned()).collect();
        let mut acc = RingElement::zero(g);
        let one = S::one();
        let minus = -S::one();
        for i in 0..full.len() {
            let face: Vec<GroupElement> = full.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| x.clone()).collect();
            let v = self.inner.value(&face)?;
            acc.add_translate(&g.identity(), &v, if i % 2 == 0 { &one } else { &minus });
        }
        Some(acc)
    }
}

/// Lazy `J = sum_{g in elements} j_g` applied to a degree `n + 1` cochain. With
/// a single central element this is the homotopy `j`.
pub struct HomotopyView<'a, C: ?Sized> {
    inner: &'a C,
    elements: Vec<GroupElement>,
}

impl<'a, C: ?Sized> HomotopyView<'a, C> {
    pub fn new(inner: &'a C, h: GroupElement) -> Self {
        HomotopyView { inner, elements: vec![h] }
    }

    pub fn summed(inner: &'a C, elements: Vec<GroupElement>) -> Self {
        HomotopyView { inner, elements }
    }
}

impl<C: ?Sized> HomotopyView<'_, C> {
    /// The defining formula evaluated directly at an arbitrary tuple, without
    /// going through the equivariant slice.
    pub fn pointwise<S: Coefficient>(&self, tuple: &[GroupElement]) -> Option<RingElement<S>>
    where
        C: BarCochain<S>,
    {
        let g = self.inner.group();
        let mut acc = RingElement::zero(g);
        let one = S::one();
        let minus = -S::one();
        for h in &self.elements {
            for k in 0..tuple.len() {
                let arg: Vec<GroupElement> = tuple[..=k]
                    .iter()
                    .cloned()
                    .chain(tuple[k..].iter().map(|x| g.op(h, x)))
                    .collect();
                let v = self.inner.value(&arg)?;
                // (-1)^(k+1)
                acc.add_translate(&g.identity(), &v, if k % 2 == 0 { &minus } else { &one });
            }
        }
        Some(acc)
    }
}

impl<S: Coefficient, C: BarCochain<S> + ?Sized> BarCochain<S> for HomotopyView<'_, C> {
    fn group(&self) -> &Arc<Group> {
        self.inner.group()
    }

    fn degree(&self) -> usize {
        self.inner.degree() - 1
    }

    fn window(&self) -> usize {
        self.inner.window()
    }

    fn slice_value(&self, xs: &[GroupElement]) -> Option<RingElement<S>> {
        let g = self.group();
        let full: Vec<GroupElement> = std::iter::once(g.identity()).chain(xs.iter().cloned()).collect();
        self.pointwise(&full)
    }
}

/// All slice tuples `(x_1..x_n)` with entries in `ball`, in ball order.
fn slice_tuples(ball: &Ball, degree: usize, cap: usize) -> Result<Vec<Vec<GroupElement>>> {
    let size = ball.len().checked_pow(degree as u32).unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::ResourceCap { what: format!("slice tuples in degree {degree}"), size, cap });
    }
    let mut tuples: Vec<Vec<GroupElement>> = vec![Vec::new()];
    for _ in 0..degree {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                ball.iter().map(move |x| {
                    let mut next = t.clone();
                    next.push(x.clone());
                    next
                })
            })
            .collect();
    }
    Ok(tuples)
}

fn window_underflow<S: Coefficient, C: BarCochain<S> + ?Sized>(phi: &C, h: Option<&GroupElement>) -> Error {
    let required = h.and_then(|h| phi.group().word_length(h).ok()).unwrap_or(0).max(phi.window() + 1);
    Error::WindowUnderflow { radius: phi.window(), required }
}

fn check_central<S: Coefficient>(group: &Arc<Group>, h: &GroupElement) -> Result<()> {
    if !RingElement::<S>::element(group, h)?.is_central() {
        return Err(Error::NonCentral(h.to_string()));
    }
    Ok(())
}

/// Coboundary `d phi`, tabulated on the window of `phi`.
pub fn coboundary<S: Coefficient, C: BarCochain<S> + ?Sized>(phi: &C) -> Result<EquivariantCochain<S>> {
    if phi.degree() + 1 > BAR_DEGREE_CAP {
        return Err(Error::Unsupported(format!("coboundary into degree {} (cap {BAR_DEGREE_CAP})", phi.degree() + 1)));
    }
    let out = EquivariantCochain::materialize(&CoboundaryView::new(phi), phi.window())?;
    if out.defined() == 0 {
        return Err(window_underflow(phi, None));
    }
    Ok(out)
}

/// The homotopy `j phi` for a central element `h`, tabulated on the window
/// of `phi`.
pub fn homotopy_j<S: Coefficient, C: BarCochain<S> + ?Sized>(phi: &C, h: &GroupElement) -> Result<EquivariantCochain<S>> {
    check_central::<S>(phi.group(), h)?;
    if phi.degree() == 0 {
        return Err(Error::InvalidParameter("j lowers degree; cochain has degree 0".into()));
    }
    let out = EquivariantCochain::materialize(&HomotopyView::new(phi, h.clone()), phi.window())?;
    if out.defined() == 0 {
        return Err(window_underflow(phi, Some(h)));
    }
    Ok(out)
}

/// Largest pointwise defect of a homotopy identity over the window.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport<S> {
    pub max: S,
    pub tuples_checked: usize,
    pub tuples_skipped: usize,
}

fn residual_over<S, C, F>(phi: &C, target: F, elements: Vec<GroupElement>, h: Option<&GroupElement>) -> Result<ResidualReport<S>>
where
    S: Coefficient,
    C: BarCochain<S> + ?Sized,
    F: Fn(&RingElement<S>) -> RingElement<S> + Sync,
{
    if phi.degree() == 0 {
        return Err(Error::InvalidParameter("homotopy residual needs degree >= 1".into()));
    }
    if phi.degree() + 1 > BAR_DEGREE_CAP {
        return Err(Error::Unsupported(format!("coboundary into degree {} (cap {BAR_DEGREE_CAP})", phi.degree() + 1)));
    }
    let group = phi.group().clone();
    let tuples = slice_tuples(&*group.ball(phi.window())?, phi.degree(), group.ball_cap())?;
    let j_phi = HomotopyView::summed(phi, elements.clone());
    let d_j_phi = CoboundaryView::new(&j_phi);
    let d_phi = CoboundaryView::new(phi);
    let j_d_phi = HomotopyView::summed(&d_phi, elements);
    let defects: Vec<Option<S>> = tuples
        .par_iter()
        .map(|xs| {
            let a = d_j_phi.slice_value(xs)?;
            let b = j_d_phi.slice_value(xs)?;
            let v = phi.slice_value(xs)?;
            let lhs = a.add(&b).ok()?;
            Some(lhs.sub(&target(&v)).ok()?.max_abs_coefficient())
        })
        .collect();
    let checked = defects.iter().filter(|d| d.is_some()).count();
    if checked == 0 {
        return Err(window_underflow(phi, h));
    }
    let max = defects.into_iter().flatten().fold(S::zero(), |m, d| if d > m { d } else { m });
    Ok(ResidualReport { max, tuples_checked: checked, tuples_skipped: tuples.len() - checked })
}

/// `max |(d j + j d) phi (x) - (phi(x) - h phi(x))|` over the window, exact.
pub fn homotopy_residual<S: Coefficient, C: BarCochain<S> + ?Sized>(phi: &C, h: &GroupElement) -> Result<ResidualReport<S>> {
    check_central::<S>(phi.group(), h)?;
    let hh = h.clone();
    residual_over(phi, move |v| v.sub(&v.left_translate(&hh)).expect("same group"), vec![h.clone()], Some(h))
}

/// Residual of the candidate homotopy `J_k = sum_{g in k} j_g` against
/// `n_k id - b_k`, where `b_k` is the class sum. The `j_g` are applied by the
/// same formula even when `g` is not central. A single such `j_g` is not
/// equivariant, but conjugation permutes the class, so `J_k` is, and the
/// residual comes out zero; it is measured here rather than assumed.
pub fn class_sum_homotopy_residual<S: Coefficient, C: BarCochain<S> + ?Sized>(
    phi: &C,
    class: &ConjugacyClass,
) -> Result<ResidualReport<S>> {
    let ConjugacyClass::Finite(elements) = class else {
        return Err(Error::NotFiniteClass { cap: 0 });
    };
    if elements.is_empty() {
        return Err(Error::InvalidParameter("empty conjugacy class".into()));
    }
    let n_k = S::from_usize(elements.len()).expect("small");
    let group = phi.group().clone();
    let b_k = RingElement::from_terms(&group, elements.iter().map(|g| (g.clone(), S::one())))?;
    residual_over(
        phi,
        move |v| v.scale(&n_k).sub(&b_k.convolve(v).expect("same group")).expect("same group"),
        elements.clone(),
        elements.first(),
    )
}

/// `max |J(a x) - a J(x)|` over window tuples `x` and generators `a`, where
/// `J` is the pointwise formula. Zero when every element used is central.
pub fn equivariance_defect<S: Coefficient, C: BarCochain<S> + ?Sized>(view: &HomotopyView<'_, C>) -> Result<S> {
    let group = view.inner.group().clone();
    let degree = view.inner.degree() - 1;
    let tuples = slice_tuples(&*group.ball(view.inner.window())?, degree, group.ball_cap())?;
    let mut worst = S::zero();
    for xs in &tuples {
        let full: Vec<GroupElement> = std::iter::once(group.identity()).chain(xs.iter().cloned()).collect();
        let Some(base) = view.pointwise(&full) else { continue };
        for a in group.generators() {
            let moved: Vec<GroupElement> = full.iter().map(|x| group.op(a, x)).collect();
            let Some(direct) = view.pointwise(&moved) else { continue };
            let m = direct.sub(&base.left_translate(a))?.max_abs_coefficient();
            if m > worst {
                worst = m;
            }
        }
    }
    Ok(worst)
}

/// CSV row `group, h-or-class, degree, R, residual numerator, residual denominator`.
pub fn residual_record(group: &str, label: &str, degree: usize, radius: usize, report: &ResidualReport<crate::Rational>) -> [String; 6] {
    [
        group.to_string(),
        label.to_string(),
        degree.to_string(),
        radius.to_string(),
        report.max.numer().to_string(),
        report.max.denom().to_string(),
    ]
}

pub const RESIDUAL_HEADER: [&str; 6] = ["group", "h_or_class", "degree", "R", "residual_num", "residual_den"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::conjugacy_class;
    use crate::groups::make_group;
    use crate::{QRingElement, Rational};
    use num_traits::Zero;

    fn grp(s: &str) -> Arc<Group> {
        make_group(s.parse().unwrap()).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn degree_zero_coboundary_matches_direct_formula() {
        let z = grp("Z");
        let mut phi = EquivariantCochain::new(&z, 0, 2).unwrap();
        let v = QRingElement::parse(&z, "2*t - 1/3*t^-2").unwrap();
        phi.insert(vec![], v.clone()).unwrap();
        let d = coboundary(&phi).unwrap();
        for x in z.ball(2).unwrap().iter() {
            // (d phi)(1, x) = phi(x) - phi(1) = x v - v
            let expect = v.left_translate(x).sub(&v).unwrap();
            assert_eq!(d.get(std::slice::from_ref(x)).unwrap(), &expect);
        }
    }

    #[test]
    fn coboundary_squares_to_zero() {
        for name in ["Z", "heisenberg", "dihedral-inf"] {
            let g = grp(name);
            for degree in 0..=1 {
                let phi = RandomCochain::new(&g, degree, 2, 7).unwrap();
                let d = CoboundaryView::new(&phi);
                let dd = coboundary::<Rational, _>(&d).unwrap();
                assert!(dd.values.values().all(|v| v.is_zero()), "{name} degree {degree}");
            }
        }
    }

    #[test]
    fn coboundary_is_linear() {
        let g = grp("dihedral-inf");
        let a = EquivariantCochain::<Rational>::materialize(&RandomCochain::new(&g, 1, 2, 1).unwrap(), 2).unwrap();
        let b = EquivariantCochain::<Rational>::materialize(&RandomCochain::new(&g, 1, 2, 2).unwrap(), 2).unwrap();
        let (la, lb) = (Rational::new(3.into(), 2.into()), q(-4));
        let lhs = coboundary(&a.scale(&la).add(&b.scale(&lb)).unwrap()).unwrap();
        let rhs = coboundary(&a).unwrap().scale(&la).add(&coboundary(&b).unwrap().scale(&lb)).unwrap();
        assert_eq!(lhs.defined(), rhs.defined());
        assert!(lhs.max_difference(&rhs).unwrap().is_zero());
    }

    #[test]
    fn j_in_degree_one_is_single_term() {
        let z = grp("Z");
        let t = z.parse_element("t").unwrap();
        let phi = RandomCochain::new(&z, 1, 3, 11).unwrap();
        let j: EquivariantCochain<Rational> = homotopy_j(&phi, &t).unwrap();
        let direct: QRingElement = phi.slice_value(std::slice::from_ref(&t)).unwrap();
        assert_eq!(j.get(&[]).unwrap(), &direct.neg());
    }

    #[test]
    fn j_in_degree_two_has_two_terms() {
        let z = grp("Z");
        let t = z.parse_element("t").unwrap();
        let phi = RandomCochain::new(&z, 2, 2, 5).unwrap();
        let j: EquivariantCochain<Rational> = homotopy_j(&phi, &t).unwrap();
        for x in z.ball(2).unwrap().iter() {
            let tx = z.op(&t, x);
            let a: QRingElement = phi.slice_value(&[t.clone(), tx.clone()]).unwrap();
            let b: QRingElement = phi.slice_value(&[x.clone(), tx]).unwrap();
            assert_eq!(j.get(std::slice::from_ref(x)).unwrap(), &b.sub(&a).unwrap());
        }
    }

    #[test]
    fn j_is_linear() {
        let h = grp("heisenberg");
        let z = h.parse_element("(0,0,1)").unwrap();
        let phi = EquivariantCochain::<Rational>::materialize(&RandomCochain::new(&h, 1, 5, 3).unwrap(), 5).unwrap();
        let a = Rational::new((-7).into(), 3.into());
        let lhs = homotopy_j(&phi.scale(&a), &z).unwrap();
        let rhs = homotopy_j(&phi, &z).unwrap().scale(&a);
        assert_eq!(lhs.defined(), rhs.defined());
        assert!(lhs.max_difference(&rhs).unwrap().is_zero());
    }

    #[test]
    fn non_central_rejected() {
        let d = grp("dihedral-inf");
        let r = d.parse_element("r").unwrap();
        let phi = RandomCochain::new(&d, 1, 2, 0).unwrap();
        assert!(matches!(homotopy_j::<Rational, _>(&phi, &r), Err(Error::NonCentral(_))));
        assert!(matches!(homotopy_residual::<Rational, _>(&phi, &r), Err(Error::NonCentral(_))));
    }

    #[test]
    fn small_table_underflows() {
        let h = grp("heisenberg");
        let z = h.parse_element("(0,0,1)").unwrap();
        let phi = EquivariantCochain::<Rational>::materialize(&RandomCochain::new(&h, 1, 2, 3).unwrap(), 2).unwrap();
        assert!(matches!(homotopy_j(&phi, &z), Err(Error::WindowUnderflow { radius: 2, .. })));
    }

    #[test]
    fn residual_vanishes_for_central_elements() {
        let cases = [("Z", "t", 1, 3), ("heisenberg", "(0,0,1)", 1, 2), ("cyclic:4", "t", 2, 2)];
        for (name, h, degree, radius) in cases {
            let g = grp(name);
            let h = g.parse_element(h).unwrap();
            let phi = RandomCochain::new(&g, degree, radius, 42).unwrap();
            let report: ResidualReport<Rational> = homotopy_residual(&phi, &h).unwrap();
            assert!(report.max.is_zero(), "{name}");
            assert_eq!(report.tuples_skipped, 0);
        }
    }

    #[test]
    fn residual_on_partial_table() {
        let g = grp("Z");
        let t = g.parse_element("t").unwrap();
        let phi = EquivariantCochain::<Rational>::materialize(&RandomCochain::new(&g, 1, 4, 9).unwrap(), 4).unwrap();
        let report = homotopy_residual(&phi, &t).unwrap();
        assert!(report.max.is_zero());
        assert!(report.tuples_checked > 0);
        assert!(report.tuples_skipped > 0);
    }

    #[test]
    fn singleton_class_matches_plain_residual() {
        let h = grp("heisenberg");
        let z = h.parse_element("(0,0,1)").unwrap();
        let phi = RandomCochain::new(&h, 1, 2, 8).unwrap();
        let class = conjugacy_class(&h, &z, 10).unwrap();
        let a: ResidualReport<Rational> = class_sum_homotopy_residual(&phi, &class).unwrap();
        let b: ResidualReport<Rational> = homotopy_residual(&phi, &z).unwrap();
        assert_eq!(a, b);
        assert!(a.max.is_zero());
    }

    #[test]
    fn equivariance_of_j() {
        let h = grp("heisenberg");
        let z = h.parse_element("(0,0,1)").unwrap();
        let phi = RandomCochain::new(&h, 1, 2, 4).unwrap();
        assert!(equivariance_defect::<Rational, _>(&HomotopyView::new(&phi, z)).unwrap().is_zero());
        let d = grp("dihedral-inf");
        let r = d.parse_element("r").unwrap();
        let phi = RandomCochain::new(&d, 1, 2, 4).unwrap();
        assert!(!equivariance_defect::<Rational, _>(&HomotopyView::new(&phi, r)).unwrap().is_zero());
    }

    #[test]
    fn class_sums_restore_equivariance() {
        let d = grp("dihedral-inf");
        let r = d.parse_element("r").unwrap();
        let phi = RandomCochain::new(&d, 1, 2, 4).unwrap();
        let ConjugacyClass::Finite(class) = conjugacy_class(&d, &r, 10).unwrap() else { panic!() };
        let view = HomotopyView::summed(&phi, class.clone());
        assert!(equivariance_defect::<Rational, _>(&view).unwrap().is_zero());
        let report: ResidualReport<Rational> =
            class_sum_homotopy_residual(&phi, &ConjugacyClass::Finite(class)).unwrap();
        assert!(report.max.is_zero());
    }

    #[test]
    fn symmetric_group_classes() {
        let g = grp("S3");
        for rep in ["(12)", "(123)"] {
            let x = g.parse_element(rep).unwrap();
            let class = conjugacy_class(&g, &x, 10).unwrap();
            for degree in 1..=2 {
                let phi = RandomCochain::new(&g, degree, 2, 21).unwrap();
                let report: ResidualReport<Rational> = class_sum_homotopy_residual(&phi, &class).unwrap();
                assert!(report.max.is_zero(), "{rep} degree {degree}");
            }
            assert!(!equivariance_defect::<Rational, _>(&HomotopyView::new(&RandomCochain::new(&g, 1, 2, 21).unwrap(), x)).unwrap().is_zero());
        }
    }

    #[test]
    fn random_cochain_is_deterministic() {
        let g = grp("free:2");
        let a = RandomCochain::new(&g, 2, 2, 99).unwrap();
        let xs = [g.parse_element("x.y").unwrap(), g.parse_element("y^-1").unwrap()];
        let v1: Option<QRingElement> = a.slice_value(&xs);
        let v2: Option<QRingElement> = a.clone().slice_value(&xs);
        assert_eq!(v1, v2);
        let other: Option<QRingElement> = RandomCochain::new(&g, 2, 2, 100).unwrap().slice_value(&xs);
        assert_ne!(v1, other);
    }
}
