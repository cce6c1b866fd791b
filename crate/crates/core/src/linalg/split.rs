//! Primitive idempotents of matrix algebras over ℚ.

use alloc::format;
use alloc::vec::Vec;

use super::matrix::Matrix;
use super::poly::Poly;
use super::scalar::{Field, Q};
use super::subspace::Subspace;
use crate::error::{Error, Result};

const NEWTON_LIMIT: usize = 64;

fn vectorize(m: &Matrix<Q>) -> Vec<Q> {
    m.entries().to_vec()
}

fn trace_of_product(a: &Matrix<Q>, b: &Matrix<Q>) -> Q {
    let mut t = Q::zero();
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let x = &a[(i, k)];
            if !x.is_zero() {
                let y = &b[(k, i)];
                if !y.is_zero() {
                    t = t + &(x.clone() * y);
                }
            }
        }
    }
    t
}

/// Radical of the algebra spanned by `basis` (closed under products and
/// containing its unit), in coordinates relative to `basis`.
///
/// Over a field of characteristic zero the radical of a matrix algebra is
/// the kernel of its trace form.
pub fn radical_of_span(basis: &[Matrix<Q>]) -> Subspace<Q> {
    let n = basis.len();
    let mut gram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let t = trace_of_product(&basis[i], &basis[j]);
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    gram.kernel()
}

fn span_matrices(ms: &[Matrix<Q>]) -> Vec<Matrix<Q>> {
    let Some(first) = ms.first() else { return Vec::new() };
    let (r, c) = (first.rows(), first.cols());
    let s = Subspace::from_spanning(r * c, ms.iter().map(vectorize).collect());
    s.basis().iter().map(|v| Matrix::from_flat(r, c, v.clone())).collect()
}

fn corner(e: &Matrix<Q>, basis: &[Matrix<Q>]) -> Vec<Matrix<Q>> {
    let ms: Vec<Matrix<Q>> = basis.iter().map(|b| e.mul(b).mul(e)).collect();
    span_matrices(&ms)
}

/// Newton iteration `x ← 3x² − 2x³`; exact once `x² = x`.
pub(crate) fn lift_idempotent(x0: &Matrix<Q>) -> Result<Matrix<Q>> {
    let mut x = x0.clone();
    for _ in 0..NEWTON_LIMIT {
        let x2 = x.mul(&x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = x2.mul(&x);
        x = x2.scale(&Q::from(3)).sub(&x3.scale(&Q::from(2)));
    }
    Err(Error::NotSplit("Newton lifting did not converge".into()))
}

fn eval_at(p: &Poly, x: &Matrix<Q>, unit: &Matrix<Q>) -> Matrix<Q> {
    let mut acc = Matrix::zeros(x.rows(), x.cols());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x);
        acc.add_scaled(c, unit);
    }
    acc
}

/// Idempotent (modulo the radical) cutting out one eigenvalue of `x`, if
/// the minimal polynomial of `x` modulo the radical has a rational root and
/// at least one other factor.
fn eigen_idempotent(x: &Matrix<Q>, unit: &Matrix<Q>, rad: &[Matrix<Q>], dim: usize) -> Option<Matrix<Q>> {
    let mut powers = alloc::vec![unit.clone()];
    let mu = loop {
        let next = powers.last().unwrap().mul(x);
        let mut cols: Vec<Vec<Q>> = powers.iter().map(vectorize).collect();
        cols.extend(rad.iter().map(vectorize));
        let a = Matrix::from_columns(next.rows() * next.cols(), &cols);
        if let Some(sol) = a.solve(&vectorize(&next)) {
            let k = powers.len();
            let mut coeffs: Vec<Q> = sol[..k].iter().map(|c| -c.clone()).collect();
            coeffs.push(Q::one());
            break Poly::new(coeffs);
        }
        if powers.len() > dim {
            return None;
        }
        powers.push(next);
    };
    if mu.degree()? < 2 {
        return None;
    }
    for lambda in mu.rational_roots() {
        let m = mu.multiplicity(&lambda);
        let lin_m = Poly::linear(&lambda).pow(m);
        let (q, _) = mu.divrem(&lin_m);
        if q.degree().unwrap_or(0) == 0 {
            continue;
        }
        let (g, _s, t) = lin_m.ext_gcd(&q);
        debug_assert_eq!(g, Poly::constant(Q::one()));
        return Some(eval_at(&t.mul(&q), x, unit));
    }
    None
}

fn candidates(basis: &[Matrix<Q>]) -> Vec<Matrix<Q>> {
    let mut out: Vec<Matrix<Q>> = basis.to_vec();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            out.push(basis[i].add(&basis[j]));
            let mut m = basis[i].clone();
            m.add_scaled(&Q::from(2), &basis[j]);
            out.push(m);
        }
    }
    let mut m = basis.first().cloned().unwrap_or_else(|| Matrix::zeros(0, 0));
    for (k, b) in basis.iter().enumerate().skip(1) {
        m.add_scaled(&Q::from((k * k + 1) as i64), b);
    }
    out.push(m);
    out
}

fn split_rec(basis: &[Matrix<Q>], unit: &Matrix<Q>, out: &mut Vec<Matrix<Q>>) -> Result<()> {
    let rad_coords = radical_of_span(basis);
    let rad: Vec<Matrix<Q>> = rad_coords
        .basis()
        .iter()
        .map(|c| {
            let mut m = Matrix::zeros(unit.rows(), unit.cols());
            for (ci, b) in c.iter().zip(basis) {
                m.add_scaled(ci, b);
            }
            m
        })
        .collect();
    if basis.len() - rad.len() <= 1 {
        out.push(unit.clone());
        return Ok(());
    }
    for x in candidates(basis) {
        if let Some(e0) = eigen_idempotent(&x, unit, &rad, basis.len()) {
            let e = lift_idempotent(&e0)?;
            if e.is_zero() || &e == unit {
                continue;
            }
            let f = unit.sub(&e);
            split_rec(&corner(&e, basis), &e, out)?;
            split_rec(&corner(&f, basis), &f, out)?;
            return Ok(());
        }
    }
    Err(Error::NotSplit(format!(
        "semisimple quotient of dimension {} has no rational splitting",
        basis.len() - rad.len()
    )))
}

/// Complete family of primitive orthogonal idempotents of the algebra
/// spanned by `basis`, whose unit is `unit`.
///
/// The algebra must be split over ℚ (all simple quotients are ℚ), which
/// holds for every endomorphism algebra met in this crate.
pub fn split_idempotents(basis: &[Matrix<Q>], unit: &Matrix<Q>) -> Result<Vec<Matrix<Q>>> {
    let mut out = Vec::new();
    if unit.is_zero() {
        return Ok(out);
    }
    let basis = span_matrices(basis);
    split_rec(&basis, unit, &mut out)?;
    Ok(out)
}
