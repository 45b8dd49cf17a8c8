//! Oracles shared by the integration tests. They use exact rational
//! arithmetic and plain loops, never the solvers under test.

#![allow(dead_code)]

use std::sync::Arc;

use lplab::groups::{make_group, Group};
use lplab::Rational;
use nalgebra::{DMatrix, DVector};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

pub fn grp(name: &str) -> Arc<Group> {
    make_group(name.parse().unwrap()).unwrap()
}

fn q(v: f64) -> Rational {
    Rational::from_f64(v).expect("finite")
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let sub = &f * &m[r][k];
                    m[i][k] = &m[i][k] - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank over the rationals of a matrix with exactly representable entries.
pub fn exact_rank(m: &DMatrix<f64>) -> usize {
    let mut rows: Vec<Vec<Rational>> = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| q(m[(i, j)])).collect()).collect();
    rref(&mut rows).len()
}

/// `min_c |x - T c|_2` from the normal equations `T^T T c = T^T x`, solved
/// exactly.
pub fn normal_equations_distance(t: &DMatrix<f64>, x: &DVector<f64>) -> f64 {
    let n = t.ncols();
    let tq: Vec<Vec<Rational>> = (0..t.nrows()).map(|i| (0..n).map(|j| q(t[(i, j)])).collect()).collect();
    let xq: Vec<Rational> = x.iter().map(|v| q(*v)).collect();
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|a| {
            let mut row: Vec<Rational> = (0..n)
                .map(|b| tq.iter().fold(Rational::zero(), |acc, r| acc + &r[a] * &r[b]))
                .collect();
            row.push(tq.iter().zip(&xq).fold(Rational::zero(), |acc, (r, xv)| acc + &r[a] * xv));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    let mut c = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = aug[row][n].clone();
    }
    let mut sq = Rational::zero();
    for (i, row) in tq.iter().enumerate() {
        let tc = row.iter().zip(&c).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        let r = &xq[i] - tc;
        sq = sq + &r * &r;
    }
    sq.abs().to_f64().unwrap().sqrt()
}

/// Deterministic pseudo-random values in [-1, 1) (64-bit LCG), independent of
/// the library's generators.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }
}
