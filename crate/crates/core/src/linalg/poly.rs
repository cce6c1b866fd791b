use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{Field, Q};

/// Univariate polynomial over ℚ, coefficients from the constant term up.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly(Vec<Q>);

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: Q) -> Poly {
        Poly::new(vec![c])
    }

    /// `t - a`
    pub fn linear(a: &Q) -> Poly {
        Poly::new(vec![-a.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        Poly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z).clone() + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&Q::from(-1)))
    }

    pub fn scale(&self, s: &Q) -> Poly {
        Poly::new(self.0.iter().map(|c| c.clone() * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::constant(Q::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        match self.lead().inv() {
            Some(l) => self.scale(&l),
            None => self.clone(),
        }
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().inv().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![Q::zero(); self.0.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap().clone() * &lead_inv;
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] = r[k + i].clone() - &(f.clone() * c);
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Monic gcd `g` and Bezout cofactors with `s·self + t·other = g`.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::constant(Q::one()), Poly::new(Vec::new()));
        let (mut t0, mut t1) = (Poly::new(Vec::new()), Poly::constant(Q::one()));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let l = r0.lead().inv().unwrap_or_else(Q::one);
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// All rational roots, each listed once.
    ///
    /// Candidates come from the rational root theorem; coefficients beyond
    /// the reach of trial division are skipped, which only matters for
    /// polynomials far larger than anything arising here.
    pub fn rational_roots(&self) -> Vec<Q> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let mut p = self.clone();
        if p.0[0].is_zero() {
            roots.push(Q::zero());
            while !p.0.is_empty() && p.0[0].is_zero() {
                p.0.remove(0);
            }
        }
        if p.degree().unwrap_or(0) == 0 {
            return roots;
        }
        let ints = integer_coefficients(&p);
        let (Some(c0), Some(cn)) = (small(&ints[0]), small(ints.last().unwrap())) else {
            return roots;
        };
        for num in divisors(c0) {
            for den in divisors(cn) {
                for sign in [1i64, -1] {
                    let cand = Q::new(sign * num as i64, den as i64);
                    if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Multiplicity of `a` as a root.
    pub fn multiplicity(&self, a: &Q) -> usize {
        let lin = Poly::linear(a);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, r) = p.divrem(&lin);
            if !r.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        m
    }
}

fn integer_coefficients(p: &Poly) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in &p.0 {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.0.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn small(b: &BigInt) -> Option<u64> {
    b.abs().to_u64().filter(|&v| v > 0 && v <= 1_000_000_000_000)
}

fn divisors(v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            if d * d != v {
                out.push(v / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}
