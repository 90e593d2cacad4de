//! Dense polynomials over the Gaussian rationals.

use crate::linalg::GInt;
use crate::modular::{bigint_mod_u64, poly_deg, poly_gcd_mod, split_primes};
use crate::scalar::GaussRat;
use num::{BigInt, Integer, One, Zero};

/// A polynomial with Gaussian-rational coefficients, low-to-high.
#[derive(Clone, PartialEq, Debug)]
pub struct GaussPoly {
    coeffs: Vec<GaussRat>,
}

impl GaussPoly {
    pub fn zero() -> Self {
        GaussPoly {
            coeffs: vec![GaussRat::zero()],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<GaussRat>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(GaussRat::zero());
        }
        let mut p = GaussPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_gints(coeffs: &[GInt]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|c| c.to_gauss_rat()).collect())
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![GaussRat::zero(); degree + 1];
        coeffs[degree] = GaussRat::one();
        GaussPoly { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[GaussRat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn leading(&self) -> &GaussRat {
        self.coeffs.last().unwrap()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero);
            let b = o.coeffs.get(k).cloned().unwrap_or_else(GaussRat::zero);
            coeffs.push(a.add(&b));
        }
        Self::from_coeffs(coeffs)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        GaussPoly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, t: &GaussRat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.mul(t)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussRat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn monic(&self) -> Self {
        assert!(!self.is_zero());
        let inv = self.leading().inv().unwrap();
        self.scale(&inv)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree();
        let lead_inv = d.leading().inv().unwrap();
        let mut rem = self.clone();
        if rem.degree() < dd || rem.is_zero() {
            return (Self::zero(), rem);
        }
        let mut q = vec![GaussRat::zero(); rem.degree() - dd + 1];
        while !rem.is_zero() && rem.degree() >= dd {
            let dr = rem.degree();
            let f = rem.leading().mul(&lead_inv);
            q[dr - dd] = f.clone();
            for k in 0..=dd {
                let t = f.mul(&d.coeffs[k]);
                rem.coeffs[k + dr - dd] = rem.coeffs[k + dr - dd].sub(&t);
            }
            rem.trim();
            if dr == dd {
                break;
            }
        }
        (Self::from_coeffs(q), rem)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&GaussRat::from_i64(k as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Bézout cofactor u with u·b ≡ gcd(a, b) (mod a).
    pub fn bezout_of_second(&self, b: &Self) -> (Self, Self) {
        let mut r0 = self.clone();
        let mut r1 = b.clone();
        let mut u0 = Self::zero();
        let mut u1 = Self::from_coeffs(vec![GaussRat::one()]);
        while !r1.is_zero() {
            let (q, r2) = r0.divrem(&r1);
            let u2 = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r2;
            u0 = u1;
            u1 = u2;
        }
        let lead_inv = r0.leading().inv().unwrap();
        (r0.scale(&lead_inv), u0.scale(&lead_inv))
    }

    /// Clear denominators: returns Gaussian-integer coefficients and the
    /// common (positive) denominator.
    pub fn to_gint_scaled(&self) -> (Vec<GInt>, BigInt) {
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            for r in [&c.re, &c.im] {
                if !r.is_zero() {
                    lcm = lcm.lcm(r.denom());
                }
            }
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                GInt::new(
                    (&c.re * num::BigRational::from_integer(lcm.clone())).to_integer(),
                    (&c.im * num::BigRational::from_integer(lcm.clone())).to_integer(),
                )
            })
            .collect();
        (ints, lcm)
    }

    /// Certified squarefree test: gcd(f, f′) reduced mod a split prime that
    /// preserves the leading coefficient. A trivial modular gcd forces the
    /// exact gcd to be trivial; a nontrivial one is re-checked exactly.
    pub fn is_squarefree(&self) -> bool {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return true;
        }
        let (ints, _) = self.to_gint_scaled();
        let deriv = self.derivative();
        let (dints, _) = deriv.to_gint_scaled();
        for sp in split_primes(24) {
            let (p, s) = (sp.p, sp.sqrt_minus_one);
            let f: Vec<u64> = ints.iter().map(|c| crate::modular::gint_mod(c, p, s)).collect();
            let g: Vec<u64> = dints.iter().map(|c| crate::modular::gint_mod(c, p, s)).collect();
            if f.last() == Some(&0) || g.last() == Some(&0) {
                continue; // degree dropped, bad prime
            }
            let gcd = poly_gcd_mod(&f, &g, p);
            if poly_deg(&gcd) == 0 {
                return true;
            }
        }
        // every sampled prime reports a common factor: decide exactly
        self.gcd(&deriv).degree() == 0
    }

    /// Largest squarefree divisor with the same roots (exact).
    pub fn radical(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        let (q, r) = self.divrem(&g);
        assert!(r.is_zero(), "gcd must divide");
        q.monic()
    }

    /// Evaluate mod p under the splitting i ↦ s; None when a denominator or
    /// the leading coefficient vanishes mod p.
    pub fn reduce_mod(&self, p: u64, s: u64) -> Option<Vec<u64>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let mut acc = 0u64;
            for (part, mult) in [(&c.re, 1u64), (&c.im, s)] {
                let dm = bigint_mod_u64(part.denom(), p);
                if dm == 0 {
                    return None;
                }
                let n = bigint_mod_u64(part.numer(), p);
                let dinv = crate::modular::u64_invmod(dm, p);
                let v = crate::modular::u64_mulmod(crate::modular::u64_mulmod(n, dinv, p), mult, p);
                acc = (acc + v) % p;
            }
            out.push(acc);
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        if out.len() != self.coeffs.len() && !self.is_zero() {
            return None; // degree dropped
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(vals: &[i64]) -> GaussPoly {
        GaussPoly::from_coeffs(vals.iter().map(|&v| GaussRat::from_i64(v)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x+1)²(x−2) and (x+1)(x−3)
        let a = gp(&[1, 1]).mul(&gp(&[1, 1])).mul(&gp(&[-2, 1]));
        let b = gp(&[1, 1]).mul(&gp(&[-3, 1]));
        let g = a.gcd(&b);
        assert_eq!(g, gp(&[1, 1]));
        let (q, r) = a.divrem(&gp(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, gp(&[1, 1]).mul(&gp(&[-2, 1])));
    }

    #[test]
    fn radical_strips_multiplicity() {
        let a = gp(&[1, 1]).mul(&gp(&[1, 1])).mul(&gp(&[-2, 1]));
        let rad = a.radical();
        assert_eq!(rad, gp(&[1, 1]).mul(&gp(&[-2, 1])).monic());
        assert!(rad.is_squarefree());
        assert!(!a.is_squarefree());
    }

    #[test]
    fn bezout_inverts_modulo() {
        // u·b ≡ 1 (mod a) for coprime a, b
        let a = gp(&[2, 0, 1]); // x² + 2
        let b = gp(&[1, 1]);
        let (g, u) = a.bezout_of_second(&b);
        assert_eq!(g.degree(), 0);
        assert_eq!(g.coeffs()[0], GaussRat::one());
        let (_, r) = u.mul(&b).divrem(&a);
        assert_eq!(r, GaussPoly::from_coeffs(vec![GaussRat::one()]));
    }

    #[test]
    fn eval_horner() {
        let p = gp(&[1, -3, 2]); // 2x² − 3x + 1
        assert_eq!(p.eval(&GaussRat::from_i64(2)), GaussRat::from_i64(3));
        assert!(p.eval(&GaussRat::from_i64(1)).is_zero());
    }
}
