use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{real, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactLeastSquares,
    Irls,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ExactLeastSquares => "exact-least-squares",
            Method::Irls => "irls",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LpOptions<T: Real> {
    pub max_iterations: usize,
    /// Stop once the objective improves by less than this.
    pub tolerance: T,
    pub eps_start: T,
    pub eps_end: T,
    /// Factor applied to the smoothing parameter after every iteration.
    pub eps_decay: T,
    pub warm_start: Option<DVector<T>>,
}

impl<T: Real> Default for LpOptions<T> {
    fn default() -> Self {
        LpOptions {
            max_iterations: 500,
            tolerance: real(1e-10),
            eps_start: real(1e-3),
            eps_end: real(1e-12),
            eps_decay: real(0.1),
            warm_start: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizationResult<T: Real> {
    /// `min_c |x - T c|_p`.
    pub value: T,
    pub argmin: DVector<T>,
    pub iterations: usize,
    /// Max-norm of the last accepted update.
    pub final_step: T,
    pub converged: bool,
    pub method: Method,
    /// Objective after every iteration, starting with the initial point.
    pub history: Vec<T>,
}

fn lp_value<T: Real>(r: &DVector<T>, p: T) -> T {
    r.iter().fold(T::zero(), |acc, v| acc + v.abs().powf(p)).powf(T::one() / p)
}

/// Pseudo-inverse solve of `a c = b` with a rank cut relative to the largest
/// singular value.
fn least_squares<T: Real>(a: &DMatrix<T>, b: &DVector<T>) -> DVector<T> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().fold(T::zero(), |m, s| if *s > m { *s } else { m });
    if smax == T::zero() {
        return DVector::zeros(a.ncols());
    }
    let dim: T = real(a.nrows().max(a.ncols()) as f64);
    let cut = smax * dim * T::default_epsilon();
    svd.solve(b, cut).expect("u and v were computed")
}

/// `min_c |x - T c|_p` over all coefficient vectors `c`.
///
/// `p = 2` is solved directly by an SVD least-squares solve. Otherwise IRLS
/// with weights `(r^2 + eps)^((p-2)/2)`, `eps` annealed from `eps_start`
/// to `eps_end`; each step is backtracked so the true objective never
/// increases.
pub fn lp_distance<T: Real>(x: &DVector<T>, t: &DMatrix<T>, p: T, opts: &LpOptions<T>) -> Result<MinimizationResult<T>> {
    if p <= T::one() {
        return Err(Error::InvalidParameter("p must exceed 1".into()));
    }
    if t.nrows() != x.len() {
        return Err(Error::DimensionMismatch(format!("operator has {} rows, vector has {} entries", t.nrows(), x.len())));
    }
    if let Some(w) = &opts.warm_start {
        if w.len() != t.ncols() {
            return Err(Error::DimensionMismatch(format!("warm start of length {} for {} columns", w.len(), t.ncols())));
        }
    }
    let two: T = real(2.0);
    if (p - two).abs() < T::default_epsilon() {
        let c = least_squares(t, x);
        let value = lp_value(&(x - t * &c), two);
        return Ok(MinimizationResult {
            value,
            argmin: c,
            iterations: 1,
            final_step: T::zero(),
            converged: true,
            method: Method::ExactLeastSquares,
            history: vec![value],
        });
    }

    let objective = |c: &DVector<T>| lp_value(&(x - t * c), p);
    let mut c = least_squares(t, x);
    let mut f = objective(&c);
    if let Some(w) = &opts.warm_start {
        let fw = objective(w);
        if fw <= f {
            c = w.clone();
            f = fw;
        }
    }
    let mut history = vec![f];
    let mut eps = opts.eps_start;
    let mut converged = false;
    let mut final_step = T::zero();
    let mut iterations = 0;
    let exponent = (p - two) / real(4.0);
    let half: T = real(0.5);
    while iterations < opts.max_iterations {
        iterations += 1;
        let r = x - t * &c;
        let w = r.map(|v| (v * v + eps).powf(exponent));
        let mut a = t.clone();
        for (mut row, wk) in a.row_iter_mut().zip(w.iter()) {
            row *= *wk;
        }
        let b = x.component_mul(&w);
        let step = least_squares(&a, &b) - &c;
        let mut alpha = T::one();
        let mut accepted = None;
        for _ in 0..40 {
            let cand = &c + &step * alpha;
            let fc = objective(&cand);
            if fc <= f {
                accepted = Some((cand, fc));
                break;
            }
            alpha *= half;
        }
        let improvement = match accepted {
            Some((cand, fc)) => {
                final_step = step.amax() * alpha;
                c = cand;
                let d = f - fc;
                f = fc;
                d
            }
            None => {
                final_step = T::zero();
                T::zero()
            }
        };
        if f > *history.last().expect("nonempty") {
            return Err(Error::Invariant(format!("IRLS objective increased at iteration {iterations}")));
        }
        history.push(f);
        let at_floor = eps <= opts.eps_end;
        eps = (eps * opts.eps_decay).max(opts.eps_end);
        if at_floor && improvement < opts.tolerance {
            converged = true;
            break;
        }
    }
    Ok(MinimizationResult { value: f, argmin: c, iterations, final_step, converged, method: Method::Irls, history })
}
