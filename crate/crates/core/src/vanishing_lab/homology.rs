use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lp_complex::assemble_boundary;
use crate::resolutions::periodic_cyclic_resolution;
use crate::Rational;

/// Relative singular-value threshold for rank decisions.
pub const RANK_THRESHOLD: f64 = 1e-8;

/// Number of singular values above `rel * sigma_max`.
pub fn numerical_rank(m: &DMatrix<f64>, rel: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let s = m.singular_values();
    let smax = s.max();
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|v| **v > rel * smax).count()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomologyReport {
    pub n: u64,
    pub p: f64,
    /// `dim H_0 .. dim H_N`.
    pub dims: Vec<usize>,
    /// Ranks of `d_1 .. d_(N+1)`.
    pub ranks: Vec<usize>,
    /// Whether every rank is unchanged at ten times and a tenth of the
    /// threshold.
    pub stable: bool,
}

/// Dimensions of `H_i(C_n; l^p)` for `i = 0..=top`, from the periodic
/// resolution. `l^p(C_n)` is finite dimensional, so the ball of radius `n`
/// already is the whole group and nothing is truncated.
pub fn finite_group_homology_ranks(n: u64, top: usize, p: f64) -> Result<HomologyReport> {
    if p.is_nan() || p <= 1.0 {
        return Err(Error::InvalidParameter("p must exceed 1".into()));
    }
    let res = periodic_cyclic_resolution::<Rational>(n, top + 1)?;
    let mats: Vec<DMatrix<f64>> = (1..=top + 1)
        .map(|i| assemble_boundary::<_, f64>(&res, i, n as usize).map(|op| op.matrix))
        .collect::<Result<_>>()?;
    let ranks_at = |rel: f64| mats.iter().map(|m| numerical_rank(m, rel)).collect::<Vec<_>>();
    let ranks = ranks_at(RANK_THRESHOLD);
    let stable = ranks_at(RANK_THRESHOLD * 10.0) == ranks && ranks_at(RANK_THRESHOLD / 10.0) == ranks;
    let dims = (0..=top)
        .map(|i| {
            // dim ker d_i - rank d_(i+1), with d_0 = 0
            let kernel = mats[i].nrows() - if i == 0 { 0 } else { ranks[i - 1] };
            kernel - ranks[i]
        })
        .collect();
    Ok(HomologyReport { n, p, dims, ranks, stable })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteIndexReport {
    pub group: HomologyReport,
    pub subgroup: HomologyReport,
    pub equal: bool,
}

/// Compares the homology of `C_n` and its index `n / m` subgroup `C_m` in
/// degrees `0..=3`.
pub fn finite_index_compare(n: u64, m: u64, p: f64) -> Result<FiniteIndexReport> {
    if m == 0 || n % m != 0 {
        return Err(Error::InvalidParameter(format!("{m} does not divide {n}")));
    }
    let group = finite_group_homology_ranks(n, 3, p)?;
    let subgroup = if m == n { group.clone() } else { finite_group_homology_ranks(m, 3, p)? };
    let equal = group.dims == subgroup.dims;
    Ok(FiniteIndexReport { group, subgroup, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_known_matrices() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 1.0]);
        assert_eq!(numerical_rank(&m, RANK_THRESHOLD), 2);
        assert_eq!(numerical_rank(&DMatrix::zeros(2, 2), RANK_THRESHOLD), 0);
    }

    #[test]
    fn cyclic_groups() {
        for (n, top) in [(4, 3), (2, 2), (3, 1), (6, 4)] {
            let r = finite_group_homology_ranks(n, top, 2.0).unwrap();
            let mut expect = vec![0; top + 1];
            expect[0] = 1;
            assert_eq!(r.dims, expect, "C{n}");
            assert!(r.stable);
        }
    }

    #[test]
    fn index_comparison() {
        assert!(finite_index_compare(4, 2, 2.0).unwrap().equal);
        assert!(finite_index_compare(6, 3, 1.5).unwrap().equal);
        let same = finite_index_compare(5, 5, 3.0).unwrap();
        assert_eq!(same.group, same.subgroup);
        assert!(finite_index_compare(6, 4, 2.0).is_err());
    }
}
