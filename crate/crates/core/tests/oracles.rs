//! Solvers and lazy evaluators checked against independent computations.

mod common;

use std::collections::{HashMap, HashSet};

use common::{exact_rank, grp, Lcg};
use lplab::groups::GroupElement;
use lplab::homotopy_lab::{BarCochain, RandomCochain};
use lplab::lp_complex::{
    annihilator_residual, annihilator_residual_with_dual, assemble_boundary, lp_norm, pairing, ChainVector, CochainVector,
    TruncatedSpace,
};
use lplab::resolutions::{cyclic_infinite_resolution, periodic_cyclic_resolution};
use lplab::vanishing_lab::{boundary_distance_curve, finite_group_homology_ranks, lp_distance, LpOptions};
use lplab::Rational;
use nalgebra::{DMatrix, DVector};
use num_traits::{One, Zero};

fn random_matrix(rng: &mut Lcg, m: usize, n: usize) -> DMatrix<f64> {
    DMatrix::from_fn(m, n, |_, _| rng.next())
}

#[test]
fn p2_distance_matches_cholesky() {
    let mut rng = Lcg(7);
    for k in 0..50 {
        let m = 10 + k * 10;
        let n = (m / 2).max(1);
        let t = random_matrix(&mut rng, m, n);
        let x = DVector::from_fn(m, |_, _| rng.next());
        let gram = t.transpose() * &t;
        let c = gram.cholesky().expect("full column rank").solve(&(t.transpose() * &x));
        let expect = (&x - &t * c).norm();
        let got = lp_distance(&x, &t, 2.0, &LpOptions::default()).unwrap().value;
        assert!((got - expect).abs() <= 1e-8, "{m}x{n}: {got} vs {expect}");
    }
}

#[test]
fn small_instances_match_exact_normal_equations() {
    let mut rng = Lcg(11);
    for _ in 0..10 {
        let t = DMatrix::from_fn(8, 5, |_, _| (rng.next() * 4.0).round());
        let x = DVector::from_fn(8, |_, _| (rng.next() * 4.0).round());
        let got = lp_distance(&x, &t, 2.0, &LpOptions::default()).unwrap().value;
        let expect = common::normal_equations_distance(&t, &x);
        assert!((got - expect).abs() <= 1e-8, "{got} vs {expect}");
    }
}

#[test]
fn integer_curves_match_closed_form() {
    let res = cyclic_infinite_resolution::<Rational>().unwrap();
    let g = res.group().clone();
    let one = g.generators()[0].clone();
    let radii: Vec<usize> = (1..=16).collect();
    for p in [1.5, 2.0, 3.0] {
        let c = boundary_distance_curve("z", &res, 0, &[(0, one.clone(), 1.0)], p, &radii, &LpOptions::default()).unwrap();
        for (r, v) in radii.iter().zip(c.curve.values()) {
            let expect = (2.0 * *r as f64 + 2.0).powf(-(p - 1.0) / p);
            assert!((v - expect).abs() <= 1e-6 * expect, "p={p} R={r}: {v} vs {expect}");
        }
    }
}

#[test]
fn image_vectors_and_zero_operator() {
    let mut rng = Lcg(3);
    let t = random_matrix(&mut rng, 30, 12);
    let c = DVector::from_fn(12, |_, _| rng.next());
    let x = &t * c;
    for p in [1.5, 2.0, 3.0] {
        let d = lp_distance(&x, &t, p, &LpOptions::default()).unwrap().value;
        assert!(d <= 1e-9, "p={p}: {d}");
        let zero = DMatrix::zeros(30, 4);
        let d = lp_distance(&x, &zero, p, &LpOptions::default()).unwrap().value;
        let norm = x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p);
        assert!((d - norm).abs() <= 1e-12 * norm, "p={p}: {d} vs {norm}");
    }
}

#[test]
fn norms_match_plain_loops() {
    let g = grp("free:2");
    let mut rng = Lcg(5);
    for p in [1.5, 2.0, 3.0] {
        let s = TruncatedSpace::chains(&g, 2, 2, p).unwrap();
        let x = ChainVector::new(s.clone(), DVector::from_fn(s.dim(), |_, _| rng.next())).unwrap();
        let mut sum = 0.0;
        for k in 0..s.dim() {
            sum += x.coefficients()[k].abs().powf(p);
        }
        assert!((x.norm() - sum.powf(1.0 / p)).abs() <= 1e-12);
        let q = p / (p - 1.0);
        let ys = TruncatedSpace::cochains(&g, 2, 2, p).unwrap();
        let y = CochainVector::new(ys.clone(), DVector::from_fn(ys.dim(), |_, _| rng.next())).unwrap();
        let mut sum = 0.0;
        for v in y.coefficients().iter() {
            sum += v.abs().powf(q);
        }
        assert!((y.norm() - sum.powf(1.0 / q)).abs() <= 1e-12);
    }
    assert_eq!(lp_norm(&[3.0, -4.0], 2.0), 5.0);
}

#[test]
fn pairing_of_deltas() {
    let g = grp("Z");
    let t = g.generators()[0].clone();
    let xs = TruncatedSpace::chains(&g, 1, 2, 2.0).unwrap();
    let ys = TruncatedSpace::cochains(&g, 1, 2, 2.0).unwrap();
    let x = ChainVector::delta(xs.clone(), 0, &t).unwrap();
    assert_eq!(pairing(&CochainVector::delta(ys.clone(), 0, &t).unwrap(), &x).unwrap(), 1.0);
    assert_eq!(pairing(&CochainVector::delta(ys, 0, &g.identity()).unwrap(), &x).unwrap(), 0.0);
}

type Values = HashMap<GroupElement, Rational>;

fn accumulate(acc: &mut Values, v: &Values, sign: i64) {
    for (g, c) in v {
        *acc.entry(g.clone()).or_insert_with(Rational::zero) += c * Rational::from_integer(sign.into());
    }
}

fn clean(mut v: Values) -> Values {
    v.retain(|_, c| !c.is_zero());
    v
}

#[test]
fn homotopy_identity_off_the_slice() {
    // d j + j d = id - h, by brute force on tuples whose first entry is not 1
    for (name, h) in [("Z", "t"), ("heisenberg", "(0,0,1)"), ("cyclic:4", "t^2")] {
        let g = grp(name);
        let h = g.parse_element(h).unwrap();
        let ball = g.ball(2).unwrap();
        let mut rng = Lcg(17);
        for degree in 1..=2usize {
            let phi = RandomCochain::new(&g, degree, 2, 99).unwrap();
            let f = |t: &[GroupElement]| -> Values {
                let v = BarCochain::<Rational>::value(&phi, t).unwrap();
                v.terms().map(|(g, c)| (g.clone(), c.clone())).collect()
            };
            let d = |inner: &dyn Fn(&[GroupElement]) -> Values, t: &[GroupElement]| {
                let mut acc = Values::new();
                for i in 0..t.len() {
                    let face: Vec<GroupElement> = t.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, x)| x.clone()).collect();
                    accumulate(&mut acc, &inner(&face), if i % 2 == 0 { 1 } else { -1 });
                }
                acc
            };
            let j = |inner: &dyn Fn(&[GroupElement]) -> Values, t: &[GroupElement]| {
                let mut acc = Values::new();
                for k in 0..t.len() {
                    let mut arg: Vec<GroupElement> = t[..=k].to_vec();
                    arg.extend(t[k..].iter().map(|x| g.op(&h, x)));
                    accumulate(&mut acc, &inner(&arg), if k % 2 == 0 { -1 } else { 1 });
                }
                acc
            };
            for _ in 0..20 {
                let pick = |rng: &mut Lcg| ball.elements()[((rng.next() + 1.0) * 0.5 * ball.len() as f64) as usize % ball.len()].clone();
                let mut t: Vec<GroupElement> = (0..=degree).map(|_| pick(&mut rng)).collect();
                if t[0] == g.identity() {
                    t[0] = g.generators()[0].clone();
                }
                let mut lhs = d(&|s| j(&f, s), &t);
                accumulate(&mut lhs, &j(&|s| d(&f, s), &t), 1);
                let base = f(&t);
                let mut rhs = base.clone();
                let moved: Values = base.iter().map(|(x, c)| (g.op(&h, x), c.clone())).collect();
                accumulate(&mut rhs, &moved, -1);
                assert_eq!(clean(lhs), clean(rhs), "{name} degree {degree}");
            }
        }
    }
}

fn brute_force_ball(name: &str, radius: usize) -> usize {
    let g = grp(name);
    let gens = g.symmetric_generators().to_vec();
    let mut seen: HashSet<GroupElement> = HashSet::from([g.identity()]);
    let mut words = vec![g.identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &words {
            for s in &gens {
                let p = g.op(w, s);
                seen.insert(p.clone());
                next.push(p);
            }
        }
        words = next;
    }
    seen.len()
}

#[test]
fn ball_sizes_against_word_enumeration() {
    for r in 0..=5 {
        let h = grp("heisenberg").ball(r).unwrap().len();
        assert_eq!(h, brute_force_ball("heisenberg", r), "heisenberg R={r}");
        assert_eq!(grp("Z^2").ball(r).unwrap().len(), 2 * r * r + 2 * r + 1);
        assert_eq!(grp("free:2").ball(r).unwrap().len(), 2 * 3usize.pow(r as u32) - 1);
        assert_eq!(grp("dihedral-inf").ball(r).unwrap().len(), brute_force_ball("dihedral-inf", r));
    }
    assert_eq!(grp("heisenberg").ball(1).unwrap().len(), 5);
}

#[test]
fn finite_homology_matches_exact_rank() {
    for n in 2..=7u64 {
        let top = 3;
        let report = finite_group_homology_ranks(n, top, 2.0).unwrap();
        let res = periodic_cyclic_resolution::<Rational>(n, top + 1).unwrap();
        let mats: Vec<DMatrix<f64>> =
            (1..=top + 1).map(|i| assemble_boundary::<_, f64>(&res, i, n as usize).unwrap().matrix).collect();
        let ranks: Vec<usize> = mats.iter().map(exact_rank).collect();
        assert_eq!(report.ranks, ranks, "C{n}");
        for i in 0..=top {
            let kernel = mats[i].nrows() - if i == 0 { 0 } else { ranks[i - 1] };
            assert_eq!(report.dims[i], kernel - ranks[i], "C{n} degree {i}");
        }
        assert_eq!(report.dims, vec![1, 0, 0, 0]);
    }
}

#[test]
fn annihilator_examples() {
    let z = cyclic_infinite_resolution::<Rational>().unwrap();
    for r in 1..=4 {
        let t = assemble_boundary::<_, f64>(&z, 1, r).unwrap().matrix;
        // constants are killed by the dual and pair to zero with every t - 1 image
        let ones = DVector::from_element(t.nrows(), 1.0);
        assert!((t.transpose() * &ones).iter().all(|v| *v == 0.0));
        let res: f64 = annihilator_residual(&z, 1, r).unwrap();
        assert!(res <= 1e-10, "R={r}: {res}");
        let mut wrong = t.transpose();
        let cols = wrong.ncols();
        for c in 0..cols / 2 {
            wrong.swap_columns(c, cols - 1 - c);
        }
        assert!(annihilator_residual_with_dual(&t, &wrong).unwrap() > 0.1);
    }
    let c3 = periodic_cyclic_resolution::<Rational>(3, 2).unwrap();
    let norm = assemble_boundary::<_, f64>(&c3, 2, 3).unwrap().matrix;
    assert!(norm.iter().all(|v| v.is_one() || v.is_zero()));
    for i in 1..=2 {
        let res: f64 = annihilator_residual(&c3, i, 3).unwrap();
        assert!(res <= 1e-10);
    }
}
