//! Partial free resolutions of Z over Z[G], stored as boundary matrices with
//! group-ring entries.
//!
//! Matrix convention: `boundary(i)` has `m_{i-1}` rows and `m_i` columns and
//! sends the basis vector `e_c` of `F_i` to `sum_a d[a][c] e_a`, with
//! scalars acting on the left. Consequently the composite `d_i . d_{i+1}` has
//! entries `sum_b d_{i+1}[b][c] * d_i[a][b]` (note the order of factors).

mod catalog;
mod fox;

pub use catalog::ResolutionName;
pub use fox::{fox_derivative, Presentation};

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group_ring::RingElement;
use crate::groups::{make_group, Group, GroupElement, GroupKind, GroupSpec};
use crate::scalar::Coefficient;

/// Dense matrix over the group ring, row-major.
#[derive(Clone, Debug)]
pub struct RingMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<RingElement<S>>,
}

impl<S: Coefficient> PartialEq for RingMatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<S: Coefficient> RingMatrix<S> {
    pub fn zeros(group: &Arc<Group>, rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, entries: vec![RingElement::zero(group); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElement<S> {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: RingElement<S>) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RingElement<S>)> {
        self.entries.iter().enumerate().map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }
}

#[derive(Clone, Debug)]
pub struct Resolution<S> {
    name: String,
    group: Arc<Group>,
    ranks: Vec<usize>,
    boundaries: Vec<RingMatrix<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    /// Matrix dimensions of `boundary(i)` disagree with the ranks.
    Shape { i: usize },
    /// Entry `(row, col)` of `d_i . d_{i+1}` is nonzero.
    Composition { i: usize, row: usize, col: usize, value: String },
    /// Entry `col` of `d_1` has nonzero augmentation.
    Augmentation { col: usize, value: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checked_compositions: usize,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&ValidationFailure> {
        self.failures.first()
    }
}

impl<S: Coefficient> Resolution<S> {
    /// Assembles a resolution from explicit boundary matrices; `boundaries[k]`
    /// is `d_{k+1}`. Shapes are checked, the complex property is not (see
    /// [`validate`](Self::validate)).
    pub fn from_parts(name: impl Into<String>, group: Arc<Group>, ranks: Vec<usize>, boundaries: Vec<RingMatrix<S>>) -> Result<Self> {
        if ranks.len() != boundaries.len() + 1 {
            return Err(Error::DimensionMismatch(format!("{} ranks for {} boundaries", ranks.len(), boundaries.len())));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows != ranks[k] || b.cols != ranks[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "boundary {} is {}x{}, ranks say {}x{}",
                    k + 1,
                    b.rows,
                    b.cols,
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        Ok(Resolution { name: name.into(), group, ranks, boundaries })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Number of boundary maps.
    pub fn length(&self) -> usize {
        self.boundaries.len()
    }

    /// `d_i` for `1 <= i <= length`.
    pub fn boundary(&self, i: usize) -> Result<&RingMatrix<S>> {
        if i == 0 || i > self.boundaries.len() {
            return Err(Error::InvalidParameter(format!("boundary index {i} outside 1..={}", self.boundaries.len())));
        }
        Ok(&self.boundaries[i - 1])
    }

    pub fn boundary_mut(&mut self, i: usize) -> &mut RingMatrix<S> {
        &mut self.boundaries[i - 1]
    }

    /// Largest word length among the supports of the entries of `d_i`.
    pub fn boundary_weight(&self, i: usize) -> Result<usize> {
        self.boundary(i)?.entries().try_fold(0, |m, (_, _, e)| Ok(m.max(e.support_radius()?)))
    }

    /// The composite `d_i . d_{i+1}` as an `m_{i-1} x m_{i+1}` matrix.
    pub fn compose(&self, i: usize) -> Result<RingMatrix<S>> {
        let outer = self.boundary(i)?;
        let inner = self.boundary(i + 1)?;
        let mut out = RingMatrix::zeros(&self.group, outer.rows, inner.cols);
        for a in 0..outer.rows {
            for c in 0..inner.cols {
                let mut acc = RingElement::zero(&self.group);
                for b in 0..outer.cols {
                    acc = acc.add(&inner.get(b, c).convolve(outer.get(a, b))?)?;
                }
                out.set(a, c, acc);
            }
        }
        Ok(out)
    }

    /// Checks `d_i . d_{i+1} = 0` for all consecutive pairs and `eps . d_1 = 0`,
    /// exactly. Exactness of the sequence is not checked.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (k, b) in self.boundaries.iter().enumerate() {
            if b.rows != self.ranks[k] || b.cols != self.ranks[k + 1] {
                report.failures.push(ValidationFailure::Shape { i: k + 1 });
            }
        }
        if !report.failures.is_empty() {
            return report;
        }
        if let Some(d1) = self.boundaries.first() {
            for (_, col, e) in d1.entries() {
                let aug = e.augment();
                if !aug.is_zero() {
                    report.failures.push(ValidationFailure::Augmentation { col, value: aug.to_string() });
                }
            }
        }
        for i in 1..self.boundaries.len() {
            let composite = self.compose(i).expect("shapes checked");
            report.checked_compositions += 1;
            for (row, col, e) in composite.entries() {
                if !e.is_zero() {
                    report.failures.push(ValidationFailure::Composition { i, row, col, value: e.to_string() });
                }
            }
        }
        report
    }
}

fn ring<S: Coefficient>(group: &Arc<Group>, terms: &[(&GroupElement, i64)]) -> RingElement<S> {
    RingElement::from_terms(group, terms.iter().map(|(g, c)| ((*g).clone(), S::from_i64(*c).expect("small integer"))))
        .expect("catalog element belongs to its group")
}

/// `0 -> Z[Z] --(t-1)--> Z[Z] -> Z -> 0`.
pub fn cyclic_infinite_resolution<S: Coefficient>() -> Result<Resolution<S>> {
    let group = make_group(GroupSpec::new(GroupKind::IntegerLattice(1)))?;
    let t = group.generators()[0].clone();
    let id = group.identity();
    let mut d1 = RingMatrix::zeros(&group, 1, 1);
    d1.set(0, 0, ring(&group, &[(&t, 1), (&id, -1)]));
    Resolution::from_parts("cyclic-inf", group, vec![1, 1], vec![d1])
}

/// The 2-periodic resolution of Z over Z[C_n] truncated to `len` boundaries:
/// odd boundaries are `t - 1`, even ones the norm element `1 + t + ... + t^{n-1}`.
pub fn periodic_cyclic_resolution<S: Coefficient>(n: u64, len: usize) -> Result<Resolution<S>> {
    if n < 2 || len < 1 {
        return Err(Error::InvalidParameter(format!("periodic resolution needs n >= 2 and N >= 1, got n={n}, N={len}")));
    }
    let group = make_group(GroupSpec::new(GroupKind::CyclicFinite(n)))?;
    let t = group.generators()[0].clone();
    let id = group.identity();
    let diff = ring(&group, &[(&t, 1), (&id, -1)]);
    let norm = RingElement::from_terms(&group, (0..n as i64).map(|k| (group.pow(&t, k), S::one())))?;
    let boundaries = (1..=len)
        .map(|i| {
            let mut m = RingMatrix::zeros(&group, 1, 1);
            m.set(0, 0, if i % 2 == 1 { diff.clone() } else { norm.clone() });
            m
        })
        .collect();
    Resolution::from_parts(format!("cyclic:{n}:{len}"), group, vec![1; len + 1], boundaries)
}

/// Subsets of `0..d` of size `k`, lexicographic.
fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..d {
            cur.push(j);
            go(j + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Koszul resolution of Z over Z[Z^d]: `F_i` has basis `e_S` for `|S| = i`
/// and `d(e_S) = sum_{j in S} (-1)^{#{s in S : s < j}} (t_j - 1) e_{S - j}`.
pub fn lattice_resolution<S: Coefficient>(d: usize) -> Result<Resolution<S>> {
    if !(1..=3).contains(&d) {
        return Err(Error::Unsupported(format!("lattice resolution for d={d} (supported: 1..=3)")));
    }
    let group = make_group(GroupSpec::new(GroupKind::IntegerLattice(d)))?;
    let id = group.identity();
    let bases: Vec<Vec<Vec<usize>>> = (0..=d).map(|k| subsets(d, k)).collect();
    let mut boundaries = Vec::new();
    for i in 1..=d {
        let rows = &bases[i - 1];
        let cols = &bases[i];
        let mut m = RingMatrix::zeros(&group, rows.len(), cols.len());
        for (c, set) in cols.iter().enumerate() {
            for (pos, &j) in set.iter().enumerate() {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let face: Vec<usize> = set.iter().copied().filter(|&s| s != j).collect();
                let r = rows.iter().position(|x| *x == face).expect("face is a basis subset");
                let tj = &group.generators()[j];
                m.set(r, c, ring(&group, &[(tj, sign), (&id, -sign)]));
            }
        }
        boundaries.push(m);
    }
    let ranks = bases.iter().map(|b| b.len()).collect();
    let name = if d == 1 { "cyclic-inf".to_string() } else { format!("lattice:{d}") };
    Resolution::from_parts(name, group, ranks, boundaries)
}

/// Partial resolution `F_2 -> F_1 -> F_0` from a presentation, via Fox
/// derivatives: `d_1 = (x_j - 1)_j`, `d_2[j][i] = dr_i/dx_j`.
pub fn fox_partial_resolution<S: Coefficient>(presentation: &Presentation) -> Result<Resolution<S>> {
    presentation.check_relators()?;
    let group = presentation.group().clone();
    let k = presentation.generator_count();
    let m = presentation.relators().len();
    let id = group.identity();
    let mut d1 = RingMatrix::zeros(&group, 1, k);
    for (j, x) in presentation.generator_images().iter().enumerate() {
        d1.set(0, j, ring(&group, &[(x, 1), (&id, -1)]));
    }
    let mut d2 = RingMatrix::zeros(&group, k, m);
    for (i, r) in presentation.relators().iter().enumerate() {
        for j in 0..k {
            d2.set(j, i, fox_derivative(presentation, r, j));
        }
    }
    Resolution::from_parts(format!("fox:{}", group.name()), group, vec![1, k, m], vec![d1, d2])
}

/// Degree-`n` slice of the bar (standard) resolution: tuples `(1, x_1, .., x_n)`
/// with every `x_i` in the ball of radius `R`. Only the `x_i` are stored.
#[derive(Clone, Debug)]
pub struct BarBasis {
    pub group: Arc<Group>,
    pub degree: usize,
    pub radius: usize,
    pub tuples: Vec<Vec<GroupElement>>,
}

/// Largest supported bar degree.
pub const BAR_DEGREE_CAP: usize = 3;

pub fn bar_resolution_spaces(group: &Arc<Group>, degree: usize, radius: usize) -> Result<BarBasis> {
    if degree > BAR_DEGREE_CAP {
        return Err(Error::Unsupported(format!("bar degree {degree} (cap {BAR_DEGREE_CAP})")));
    }
    let ball = group.ball(radius)?;
    let size = ball.len().checked_pow(degree as u32).unwrap_or(usize::MAX);
    if size > group.ball_cap() {
        return Err(Error::ResourceCap { what: format!("bar basis in degree {degree}"), size, cap: group.ball_cap() });
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
    Ok(BarBasis { group: group.clone(), degree, radius, tuples })
}

impl BarBasis {
    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `(1, x_1, .., x_n)` for the `k`-th tuple.
    pub fn full_tuple(&self, k: usize) -> Vec<GroupElement> {
        std::iter::once(self.group.identity()).chain(self.tuples[k].iter().cloned()).collect()
    }
}

/// Every matrix resolution in the catalog, as validated by the acceptance
/// suite.
pub fn catalog<S: Coefficient>() -> Result<Vec<Resolution<S>>> {
    let mut out = vec![cyclic_infinite_resolution()?];
    for n in [2, 3, 4, 6] {
        for len in 1..=4 {
            out.push(periodic_cyclic_resolution(n, len)?);
        }
    }
    for d in 1..=3 {
        out.push(lattice_resolution(d)?);
    }
    for g in ["Z^2", "free:2", "dihedral-inf", "heisenberg", "cyclic:5", "S3", "Z^3"] {
        let group = make_group(g.parse()?)?;
        out.push(fox_partial_resolution(&Presentation::standard(&group)?)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{QRingElement, Rational};
    use num_traits::Zero;

    type QRes = Resolution<Rational>;

    #[test]
    fn cyclic_infinite() {
        let res: QRes = cyclic_infinite_resolution().unwrap();
        let z = res.group().clone();
        assert_eq!(res.ranks(), &[1, 1]);
        assert_eq!(res.boundary(1).unwrap().get(0, 0), &QRingElement::parse(&z, "t - 1").unwrap());
        assert!(res.boundary(1).unwrap().get(0, 0).augment().is_zero());
        let report = res.validate();
        assert!(report.passed());
        assert_eq!(report.checked_compositions, 0);
    }

    #[test]
    fn periodic() {
        let res: QRes = periodic_cyclic_resolution(2, 2).unwrap();
        assert!(res.compose(1).unwrap().get(0, 0).is_zero());
        let res4: QRes = periodic_cyclic_resolution(4, 2).unwrap();
        assert_eq!(res4.boundary(2).unwrap().get(0, 0).augment(), Rational::from_integer(4.into()));
        assert!(periodic_cyclic_resolution::<Rational>(3, 3).unwrap().validate().passed());
        assert!(periodic_cyclic_resolution::<Rational>(1, 3).is_err());
        assert!(periodic_cyclic_resolution::<Rational>(3, 0).is_err());
    }

    #[test]
    fn lattice() {
        let l1: QRes = lattice_resolution(1).unwrap();
        let c: QRes = cyclic_infinite_resolution().unwrap();
        assert_eq!(l1.ranks(), c.ranks());
        assert_eq!(l1.boundary(1).unwrap(), c.boundary(1).unwrap());
        let l2: QRes = lattice_resolution(2).unwrap();
        let g = l2.group().clone();
        assert_eq!(l2.ranks(), &[1, 2, 1]);
        let d2 = l2.boundary(2).unwrap();
        assert_eq!(d2.get(0, 0), &QRingElement::parse(&g, "-1*t2 + 1").unwrap());
        assert_eq!(d2.get(1, 0), &QRingElement::parse(&g, "t1 - 1").unwrap());
        assert!(l2.validate().passed());
        let l3: QRes = lattice_resolution(3).unwrap();
        assert_eq!(l3.ranks(), &[1, 3, 3, 1]);
        assert_eq!(l3.ranks().iter().sum::<usize>(), 8);
        assert!(l3.validate().passed());
        assert!(lattice_resolution::<Rational>(4).is_err());
    }

    #[test]
    fn corrupted_lattice_fails_at_first_composition() {
        let mut l2: QRes = lattice_resolution(2).unwrap();
        let flipped = l2.boundary(2).unwrap().get(1, 0).neg();
        l2.boundary_mut(2).set(1, 0, flipped);
        let report = l2.validate();
        assert!(!report.passed());
        assert!(matches!(report.first_failure(), Some(ValidationFailure::Composition { i: 1, .. })));
    }

    #[test]
    fn augmentation_failure_reported() {
        let z = make_group("Z".parse().unwrap()).unwrap();
        let mut d1 = RingMatrix::zeros(&z, 1, 1);
        d1.set(0, 0, QRingElement::parse(&z, "t + 1").unwrap());
        let res = QRes::from_parts("bad", z, vec![1, 1], vec![d1]).unwrap();
        assert!(matches!(res.first_failure_owned(), Some(ValidationFailure::Augmentation { col: 0, .. })));
    }

    impl QRes {
        fn first_failure_owned(&self) -> Option<ValidationFailure> {
            self.validate().first_failure().cloned()
        }
    }

    #[test]
    fn bar_spaces() {
        let z = make_group("Z".parse().unwrap()).unwrap();
        let b0 = bar_resolution_spaces(&z, 0, 3).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.full_tuple(0), vec![z.identity()]);
        assert_eq!(bar_resolution_spaces(&z, 1, 2).unwrap().len(), 5);
        let c2 = make_group("cyclic:2".parse().unwrap()).unwrap();
        assert_eq!(bar_resolution_spaces(&c2, 2, 1).unwrap().len(), 4);
        assert!(bar_resolution_spaces(&z, 4, 1).is_err());
    }

    #[test]
    fn whole_catalog_validates() {
        for res in catalog::<Rational>().unwrap() {
            assert!(res.validate().passed(), "{}", res.name());
        }
    }
}
