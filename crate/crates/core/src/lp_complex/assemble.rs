use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::groups::Group;
use crate::lp_complex::{ChainVector, CochainVector, Shape, TruncatedSpace};
use crate::resolutions::Resolution;
use crate::scalar::{to_real, Coefficient, Real};

/// Largest dense operator (rows x cols) we are willing to allocate.
pub const MAX_DENSE_ENTRIES: usize = 16_000_000;

/// A truncated boundary operator, or its dual, as a dense matrix.
#[derive(Clone, Debug)]
pub struct Operator<T: Real> {
    pub group: Arc<Group>,
    pub resolution: String,
    /// Index `i` of the boundary `d_i` this came from.
    pub degree: usize,
    pub domain: Shape,
    pub codomain: Shape,
    pub matrix: DMatrix<T>,
    pub dual: bool,
}

impl<T: Real> Operator<T> {
    pub fn apply_chain(&self, x: &ChainVector<T>) -> Result<ChainVector<T>> {
        if self.dual {
            return Err(Error::InvalidParameter("dual operators act on cochains".into()));
        }
        let x = conform_chain(x, &self.domain)?;
        let space = TruncatedSpace::chains(&self.group, self.codomain.rank, self.codomain.radius(), x.space().p())?;
        ChainVector::new(space, &self.matrix * x.coefficients())
    }

    pub fn apply_cochain(&self, y: &CochainVector<T>) -> Result<CochainVector<T>> {
        if !self.dual {
            return Err(Error::InvalidParameter("boundary operators act on chains".into()));
        }
        let y = conform_cochain(y, &self.domain)?;
        let space = TruncatedSpace::cochains(&self.group, self.codomain.rank, self.codomain.radius(), y.space().p())?;
        CochainVector::new(space, &self.matrix * y.coefficients())
    }
}

fn conform_chain<T: Real>(x: &ChainVector<T>, shape: &Shape) -> Result<ChainVector<T>> {
    if x.space().rank() != shape.rank {
        return Err(Error::RankMismatch { left: x.space().rank(), right: shape.rank });
    }
    if x.space().radius() == shape.radius() {
        Ok(x.clone())
    } else {
        x.resize(shape.radius())
    }
}

fn conform_cochain<T: Real>(y: &CochainVector<T>, shape: &Shape) -> Result<CochainVector<T>> {
    if y.space().rank() != shape.rank {
        return Err(Error::RankMismatch { left: y.space().rank(), right: shape.rank });
    }
    if y.space().radius() == shape.radius() {
        Ok(y.clone())
    } else {
        y.resize(shape.radius())
    }
}

/// Matrix of `d_i (x) 1` from coefficients on `(m_i, B(R))` to `(m_{i-1}, B(R + w))`,
/// where `w` is the largest word length in the entries of `d_i`. A basis
/// vector `delta_h` in copy `c` maps to `sum_a delta_h * d_i[a][c]` in copy `a`
/// (right convolution).
pub fn assemble_boundary<S: Coefficient, T: Real>(res: &Resolution<S>, i: usize, radius: usize) -> Result<Operator<T>> {
    let d = res.boundary(i)?;
    let group = res.group().clone();
    let w = res.boundary_weight(i)?;
    let domain = Shape::new(&group, d.cols(), radius)?;
    let codomain = Shape::new(&group, d.rows(), radius + w)?;
    let size = domain.dim().saturating_mul(codomain.dim());
    if size > MAX_DENSE_ENTRIES {
        return Err(Error::ResourceCap { what: format!("operator d_{i} at radius {radius}"), size, cap: MAX_DENSE_ENTRIES });
    }
    let mut matrix = DMatrix::zeros(codomain.dim(), domain.dim());
    for col in 0..domain.dim() {
        let (c, h) = domain.basis(col);
        for a in 0..d.rows() {
            for (g, lambda) in d.get(a, c).terms() {
                let row = codomain.index(a, &group.op(h, g)).expect("support growth bounded by w");
                matrix[(row, col)] += to_real::<S, T>(lambda);
            }
        }
    }
    Ok(Operator { group, resolution: res.name().to_string(), degree: i, domain, codomain, matrix, dual: false })
}

/// The dual `phi -> phi . d_i`, acting on cochain coefficients on
/// `(m_{i-1}, B(R + w))` and landing in `(m_i, B(R))`: the transpose of
/// [`assemble_boundary`].
pub fn dual_boundary<S: Coefficient, T: Real>(res: &Resolution<S>, i: usize, radius: usize) -> Result<Operator<T>> {
    let op = assemble_boundary::<S, T>(res, i, radius)?;
    Ok(Operator {
        matrix: op.matrix.transpose(),
        domain: op.codomain,
        codomain: op.domain,
        dual: true,
        ..op
    })
}
