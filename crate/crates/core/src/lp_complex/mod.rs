//! Truncated l^p chain and l^q cochain spaces over Cayley balls, boundary
//! operators as finite matrices, norms and the evaluation pairing.

mod annihilator;
mod assemble;
pub mod export;

pub use annihilator::{annihilator_residual, annihilator_residual_with_dual};
pub use assemble::{assemble_boundary, dual_boundary, Operator, MAX_DENSE_ENTRIES};

use std::sync::Arc;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::group_ring::RingElement;
use crate::groups::{Ball, Group, GroupElement};
use crate::scalar::{real, to_real, Coefficient, Real};

/// Index set `{1..m} x B(R)`, copy-major, each copy in ball order.
#[derive(Clone, Debug)]
pub struct Shape {
    pub rank: usize,
    pub ball: Arc<Ball>,
}

impl Shape {
    pub fn new(group: &Group, rank: usize, radius: usize) -> Result<Self> {
        Ok(Shape { rank, ball: group.ball(radius)? })
    }

    pub fn radius(&self) -> usize {
        self.ball.radius()
    }

    pub fn dim(&self) -> usize {
        self.rank * self.ball.len()
    }

    pub fn index(&self, copy: usize, h: &GroupElement) -> Option<usize> {
        if copy >= self.rank {
            return None;
        }
        self.ball.position(h).map(|p| copy * self.ball.len() + p)
    }

    /// `(copy, element)` at a flat index.
    pub fn basis(&self, k: usize) -> (usize, &GroupElement) {
        let n = self.ball.len();
        (k / n, &self.ball.elements()[k % n])
    }

    pub fn same_as(&self, other: &Shape) -> bool {
        self.rank == other.rank && self.radius() == other.radius()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Chains,
    Cochains,
}

/// `l^p(G)^m` (chains) or `l^q(G)^m` (cochains) restricted to a ball.
#[derive(Clone, Debug)]
pub struct TruncatedSpace<T> {
    group: Arc<Group>,
    shape: Shape,
    p: T,
    role: Role,
}

fn check_p<T: Real>(p: T) -> Result<()> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p must exceed 1 and be finite, got {p}")));
    }
    Ok(())
}

/// Hölder conjugate `p / (p - 1)`.
pub fn conjugate_exponent<T: Real>(p: T) -> T {
    p / (p - T::one())
}

impl<T: Real> TruncatedSpace<T> {
    pub fn chains(group: &Arc<Group>, rank: usize, radius: usize, p: T) -> Result<Arc<Self>> {
        check_p(p)?;
        Ok(Arc::new(TruncatedSpace { group: group.clone(), shape: Shape::new(group, rank, radius)?, p, role: Role::Chains }))
    }

    /// Cochain space paired with chains of exponent `p`; its own exponent is
    /// the conjugate `q`.
    pub fn cochains(group: &Arc<Group>, rank: usize, radius: usize, p: T) -> Result<Arc<Self>> {
        check_p(p)?;
        Ok(Arc::new(TruncatedSpace { group: group.clone(), shape: Shape::new(group, rank, radius)?, p, role: Role::Cochains }))
    }

    fn with_shape(&self, shape: Shape) -> Arc<Self> {
        Arc::new(TruncatedSpace { group: self.group.clone(), shape, p: self.p, role: self.role })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.rank
    }

    pub fn radius(&self) -> usize {
        self.shape.radius()
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    /// The chain exponent `p`.
    pub fn p(&self) -> T {
        self.p
    }

    /// The conjugate exponent `q`.
    pub fn q(&self) -> T {
        conjugate_exponent(self.p)
    }

    /// Exponent of this space's norm: `p` for chains, `q` for cochains.
    pub fn exponent(&self) -> T {
        match self.role {
            Role::Chains => self.p,
            Role::Cochains => self.q(),
        }
    }
}

/// `(sum |c|^e)^(1/e)` over all coefficients.
pub fn lp_norm<T: Real>(coeffs: &[T], e: T) -> T {
    let s = coeffs.iter().fold(T::zero(), |acc, c| acc + c.abs().powf(e));
    s.powf(T::one() / e)
}

macro_rules! lp_vector {
    ($name:ident, $role:expr) => {
        #[derive(Clone, Debug)]
        pub struct $name<T: Real> {
            space: Arc<TruncatedSpace<T>>,
            coeffs: DVector<T>,
        }

        impl<T: Real> $name<T> {
            pub fn new(space: Arc<TruncatedSpace<T>>, coeffs: DVector<T>) -> Result<Self> {
                if space.role != $role {
                    return Err(Error::InvalidParameter(format!("{} needs a {:?} space", stringify!($name), $role)));
                }
                if coeffs.len() != space.dim() {
                    return Err(Error::DimensionMismatch(format!("{} coefficients for a space of dimension {}", coeffs.len(), space.dim())));
                }
                if coeffs.iter().any(|c| !c.is_finite()) {
                    return Err(Error::InvalidParameter("non-finite coefficient".into()));
                }
                Ok($name { space, coeffs })
            }

            pub fn zeros(space: Arc<TruncatedSpace<T>>) -> Self {
                let n = space.dim();
                $name { space, coeffs: DVector::zeros(n) }
            }

            /// Sum of `value * delta_(copy, h)`; every element must lie in the ball.
            pub fn from_terms<'a, I>(space: Arc<TruncatedSpace<T>>, terms: I) -> Result<Self>
            where
                I: IntoIterator<Item = (usize, &'a GroupElement, T)>,
            {
                let mut v = Self::zeros(space);
                for (copy, h, value) in terms {
                    let k = v.space.shape.index(copy, h).ok_or_else(|| {
                        Error::DimensionMismatch(format!("({copy}, {h}) outside rank {} / radius {}", v.space.rank(), v.space.radius()))
                    })?;
                    v.coeffs[k] += value;
                }
                Ok(v)
            }

            pub fn delta(space: Arc<TruncatedSpace<T>>, copy: usize, h: &GroupElement) -> Result<Self> {
                Self::from_terms(space, [(copy, h, T::one())])
            }

            pub fn space(&self) -> &Arc<TruncatedSpace<T>> {
                &self.space
            }

            pub fn coefficients(&self) -> &DVector<T> {
                &self.coeffs
            }

            /// Coefficient at `(copy, h)`; zero outside the ball.
            pub fn get(&self, copy: usize, h: &GroupElement) -> T {
                self.space.shape.index(copy, h).map_or(T::zero(), |k| self.coeffs[k])
            }

            /// Nonzero entries as `(copy, element, value)`.
            pub fn support(&self) -> impl Iterator<Item = (usize, &GroupElement, T)> + '_ {
                self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| {
                    let (copy, h) = self.space.shape.basis(k);
                    (copy, h, *c)
                })
            }

            /// The norm with the space's exponent, copies summed like group
            /// indices.
            pub fn norm(&self) -> T {
                lp_norm(self.coeffs.as_slice(), self.space.exponent())
            }

            /// Same vector viewed in a ball of another radius. Entries that
            /// would fall outside a smaller ball are an error.
            pub fn resize(&self, radius: usize) -> Result<Self> {
                let shape = Shape::new(&self.space.group, self.space.rank(), radius)?;
                let space = self.space.with_shape(shape);
                Self::from_terms(space, self.support().map(|(c, h, v)| (c, h, v)).collect::<Vec<_>>())
            }

            pub fn scale(&self, lambda: T) -> Self {
                $name { space: self.space.clone(), coeffs: &self.coeffs * lambda }
            }
        }
    };
}

lp_vector!(ChainVector, Role::Chains);
lp_vector!(CochainVector, Role::Cochains);

/// Evaluation pairing `b(y, x) = sum_j sum_h y_{j,h} x_{j,h}`. The two
/// vectors may live on balls of different radii; missing entries are zero.
pub fn pairing<T: Real>(y: &CochainVector<T>, x: &ChainVector<T>) -> Result<T> {
    let (ys, xs) = (y.space(), x.space());
    if *ys.group != *xs.group {
        return Err(Error::CrossGroup { left: ys.group.name(), right: xs.group.name() });
    }
    if ys.rank() != xs.rank() {
        return Err(Error::RankMismatch { left: ys.rank(), right: xs.rank() });
    }
    let tol: T = real(1e-9);
    if (T::one() / ys.exponent() + T::one() / xs.exponent() - T::one()).abs() > tol {
        return Err(Error::ExponentMismatch {
            p: xs.exponent().to_f64().unwrap_or(f64::NAN),
            q: ys.exponent().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(x.support().fold(T::zero(), |acc, (copy, h, v)| acc + y.get(copy, h) * v))
}

/// Left translate: `x_{j,h} -> x_{j,g^{-1}h}`, i.e. `delta_k -> delta_{gk}`.
/// The result lives on the ball of radius `R + |g|`.
pub fn translate<T: Real>(x: &ChainVector<T>, g: &GroupElement) -> Result<ChainVector<T>> {
    let group = x.space().group().clone();
    let radius = x.space().radius() + group.word_length(g)?;
    let space = x.space().with_shape(Shape::new(&group, x.space().rank(), radius)?);
    let terms: Vec<(usize, GroupElement, T)> = x.support().map(|(c, h, v)| (c, group.op(g, h), v)).collect();
    ChainVector::from_terms(space, terms.iter().map(|(c, h, v)| (*c, h, *v)))
}

/// `sum_g u(g) * translate(x, g)`.
pub fn translate_ring<S: Coefficient, T: Real>(x: &ChainVector<T>, u: &RingElement<S>) -> Result<ChainVector<T>> {
    let group = x.space().group().clone();
    if *u.group().as_ref() != *group {
        return Err(Error::CrossGroup { left: group.name(), right: u.group().name() });
    }
    let radius = x.space().radius() + u.support_radius()?;
    let space = x.space().with_shape(Shape::new(&group, x.space().rank(), radius)?);
    let mut terms: Vec<(usize, GroupElement, T)> = Vec::new();
    for (g, lambda) in u.terms() {
        let l: T = to_real(lambda);
        terms.extend(x.support().map(|(c, h, v)| (c, group.op(g, h), v * l)));
    }
    ChainVector::from_terms(space, terms.iter().map(|(c, h, v)| (*c, h, *v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;
    use crate::QRingElement;

    fn grp(s: &str) -> Arc<Group> {
        make_group(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn conjugate_exponents() {
        assert!((conjugate_exponent(2.0f64) - 2.0).abs() < 1e-15);
        assert!((conjugate_exponent(3.0f64) - 1.5).abs() < 1e-15);
        assert!(TruncatedSpace::<f64>::chains(&grp("Z"), 1, 1, 1.0).is_err());
    }

    #[test]
    fn norms() {
        let z = grp("Z");
        for p in [1.5, 2.0, 3.0] {
            let s = TruncatedSpace::chains(&z, 1, 2, p).unwrap();
            assert_eq!(ChainVector::delta(s, 0, &z.identity()).unwrap().norm(), 1.0);
        }
        let s = TruncatedSpace::chains(&z, 2, 1, 2.0).unwrap();
        let t = z.parse_element("t").unwrap();
        let x = ChainVector::from_terms(s, [(0, &t, 1.0), (1, &t, 1.0)]).unwrap();
        assert!((x.norm() - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pairing_example() {
        let z = grp("Z");
        let t = z.parse_element("t").unwrap();
        let id = z.identity();
        let x = ChainVector::from_terms(TruncatedSpace::chains(&z, 1, 1, 2.0).unwrap(), [(0, &id, 1.0), (0, &t, 2.0)]).unwrap();
        let y = CochainVector::from_terms(TruncatedSpace::cochains(&z, 1, 3, 2.0).unwrap(), [(0, &id, 3.0), (0, &t, -1.0)]).unwrap();
        assert_eq!(pairing(&y, &x).unwrap(), 1.0);
        let zero = ChainVector::zeros(TruncatedSpace::chains(&z, 1, 1, 2.0).unwrap());
        assert_eq!(pairing(&y, &zero).unwrap(), 0.0);
    }

    #[test]
    fn pairing_rejections() {
        let z = grp("Z");
        let x = ChainVector::<f64>::zeros(TruncatedSpace::chains(&z, 2, 1, 2.0).unwrap());
        let y = CochainVector::zeros(TruncatedSpace::cochains(&z, 1, 1, 2.0).unwrap());
        assert!(matches!(pairing(&y, &x), Err(Error::RankMismatch { .. })));
        let x3 = ChainVector::<f64>::zeros(TruncatedSpace::chains(&z, 1, 1, 3.0).unwrap());
        assert!(matches!(pairing(&y, &x3), Err(Error::ExponentMismatch { .. })));
    }

    #[test]
    fn translations() {
        let z = grp("Z");
        let s = TruncatedSpace::chains(&z, 1, 1, 2.0).unwrap();
        let x = ChainVector::delta(s, 0, &z.parse_element("t").unwrap()).unwrap();
        let moved = translate(&x, &z.parse_element("t^2").unwrap()).unwrap();
        assert_eq!(moved.get(0, &z.parse_element("t^3").unwrap()), 1.0);
        assert_eq!(moved.norm(), 1.0);
        let same = translate(&x, &z.identity()).unwrap();
        assert_eq!(same.coefficients(), x.coefficients());

        let d = grp("dihedral-inf");
        let s = TruncatedSpace::chains(&d, 1, 0, 2.0).unwrap();
        let x = ChainVector::delta(s, 0, &d.identity()).unwrap();
        let u = QRingElement::parse(&d, "r + r^-1").unwrap();
        let y = translate_ring(&x, &u).unwrap();
        let support: Vec<String> = y.support().map(|(_, h, v)| format!("{v}*{h}")).collect();
        assert_eq!(support, ["1*r^-1", "1*r"]);
    }

    #[test]
    fn resize_keeps_entries() {
        let z = grp("Z");
        let s = TruncatedSpace::chains(&z, 1, 1, 2.0).unwrap();
        let x = ChainVector::delta(s, 0, &z.parse_element("t").unwrap()).unwrap();
        let big = x.resize(4).unwrap();
        assert_eq!(big.get(0, &z.parse_element("t").unwrap()), 1.0);
        assert_eq!(big.norm(), 1.0);
        assert!(x.resize(0).is_err());
    }
}
