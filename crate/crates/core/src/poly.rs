//! Polynomial arithmetic over a chain ring, in plain form and modulo
//! `z^n - 1`.
//!
//! Polynomials are kept in canonical trimmed form: the coefficient vector is
//! ascending by degree, the leading coefficient is nonzero, and the zero
//! polynomial is the empty vector (its degree is undefined, `degree()` is
//! `None`).
//!
//! On reciprocals: `k*(z) = z^{deg k} k(1/z)`, i.e. coefficient reversal
//! followed by trimming. The product and sum identities
//! `(fg)* = f* g*` and `(f+g)* = f* + z^{deg f - deg g} g*` are only used
//! (and tested) when no leading-term cancellation occurs — the degree of a
//! reciprocal can drop when constant terms vanish, which makes the naive
//! identities false in general.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{ChainRing, RingElement};

/// Polynomial over a chain ring (which may be a residue field, `nu = 1`).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: ChainRing,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn zero(ring: &ChainRing) -> Poly {
        Poly {
            ring: ring.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: &ChainRing) -> Poly {
        Poly::constant(&ring.one())
    }

    pub fn constant(c: &RingElement) -> Poly {
        Poly::from_codes(c.ring(), vec![c.code()])
    }

    /// The monomial `z`.
    pub fn z(ring: &ChainRing) -> Poly {
        Poly::from_codes(ring, vec![0, 1 % ring.order()])
    }

    /// `z - 1`.
    pub fn z_minus_one(ring: &ChainRing) -> Poly {
        let one = 1 % ring.order();
        Poly::from_codes(ring, vec![ring.neg_code(one), one])
    }

    /// Build from coefficient codes (ascending); trims to canonical form.
    pub fn from_codes(ring: &ChainRing, mut coeffs: Vec<u64>) -> Poly {
        for &c in &coeffs {
            assert!(c < ring.order(), "coefficient code out of range");
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn from_elems(ring: &ChainRing, elems: &[RingElement]) -> Poly {
        let codes = elems
            .iter()
            .map(|e| {
                assert_eq!(e.ring(), ring, "ring mismatch");
                e.code()
            })
            .collect();
        Poly::from_codes(ring, codes)
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    /// Coefficient codes, ascending by degree (empty for zero).
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff_code(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> RingElement {
        self.ring.elem(self.coeff_code(i))
    }

    pub fn leading_code(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    /// Leading coefficient is a unit and equal to 1.
    pub fn is_monic(&self) -> bool {
        self.leading_code() == Some(1 % self.ring.order())
    }

    pub fn scalar_mul(&self, c: &RingElement) -> Poly {
        assert_eq!(c.ring(), &self.ring, "ring mismatch");
        let codes = self
            .coeffs
            .iter()
            .map(|&a| self.ring.mul_code(a, c.code()))
            .collect();
        Poly::from_codes(&self.ring, codes)
    }

    /// Multiply by `z^k` (no modulus).
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut codes = vec![0u64; k];
        codes.extend_from_slice(&self.coeffs);
        Poly::from_codes(&self.ring, codes)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Remainder modulo `z^n - 1`: fold `z^k` onto `z^{k mod n}`.
    pub fn reduce_mod_xn_minus_1(&self, n: usize) -> Poly {
        assert!(n >= 1);
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut folded = vec![0u64; n];
        for (k, &c) in self.coeffs.iter().enumerate() {
            let idx = k % n;
            folded[idx] = self.ring.add_code(folded[idx], c);
        }
        Poly::from_codes(&self.ring, folded)
    }

    /// Reciprocal polynomial `z^{deg} * self(1/z)`; zero maps to zero.
    pub fn reciprocal(&self) -> Poly {
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Poly::from_codes(&self.ring, rev)
    }

    pub fn is_self_reciprocal(&self) -> bool {
        *self == self.reciprocal()
    }

    /// Euclidean division by a divisor with unit leading coefficient:
    /// `self = q * d + r` with `r = 0` or `deg r < deg d`.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        assert_eq!(self.ring, d.ring, "ring mismatch");
        let dd = match d.degree() {
            None => return Err(Error::NonUnitLeadingCoefficient),
            Some(dd) => dd,
        };
        let lead = d.leading_code().unwrap();
        if self.ring.val_code(lead) != 0 {
            return Err(Error::NonUnitLeadingCoefficient);
        }
        let lead_inv = self.ring.inv_code(lead)?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let dr = rem.len() - 1;
            let c = rem[dr];
            if c != 0 {
                let factor = self.ring.mul_code(c, lead_inv);
                let shift = dr - dd;
                quo[shift] = factor;
                for (i, &bc) in d.coeffs.iter().enumerate() {
                    let prod = self.ring.mul_code(factor, bc);
                    rem[i + shift] = self.ring.sub_code(rem[i + shift], prod);
                }
                debug_assert_eq!(rem[dr], 0);
            }
            rem.pop();
        }
        Ok((
            Poly::from_codes(&self.ring, quo),
            Poly::from_codes(&self.ring, rem),
        ))
    }

    /// Does `self` divide `f` exactly? Requires a unit leading coefficient on
    /// `self`; zero is divisible by everything.
    pub fn divides(&self, f: &Poly) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let (_, r) = f.divmod(self)?;
        Ok(r.is_zero())
    }

    /// Evaluate by Horner's rule.
    pub fn eval(&self, x: &RingElement) -> RingElement {
        assert_eq!(x.ring(), &self.ring, "ring mismatch");
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self.ring.add_code(self.ring.mul_code(acc, x.code()), c);
        }
        self.ring.elem(acc)
    }

    /// Coefficient-wise residue, as a polynomial over the residue field.
    pub fn residue(&self) -> Poly {
        let rf = self.ring.residue_field();
        let codes = self
            .coeffs
            .iter()
            .map(|&c| self.ring.residue_code(c))
            .collect();
        Poly::from_codes(&rf, codes)
    }

    /// Coefficient-wise Teichmueller lift into `ring` (self must live in its
    /// residue field).
    pub fn lift_into(&self, ring: &ChainRing) -> Poly {
        assert_eq!(
            &ring.residue_field(),
            &self.ring,
            "polynomial does not live in the residue field of the target ring"
        );
        let codes = self
            .coeffs
            .iter()
            .map(|&c| ring.lift_code(c).code())
            .collect();
        Poly::from_codes(ring, codes)
    }

    /// Minimum gamma-adic valuation over all coefficients; `nu` for zero.
    pub fn content_val(&self) -> u32 {
        self.coeffs
            .iter()
            .map(|&c| self.ring.val_code(c))
            .min()
            .unwrap_or(self.ring.nu())
    }

    /// Exact division of every coefficient by `gamma^k`.
    pub fn shift_down_gamma(&self, k: u32) -> Poly {
        let codes = self
            .coeffs
            .iter()
            .map(|&c| self.ring.shift_down_code(c, k))
            .collect();
        Poly::from_codes(&self.ring, codes)
    }

    pub fn scalar_mul_gamma_pow(&self, k: u32) -> Poly {
        let codes = self
            .coeffs
            .iter()
            .map(|&c| self.ring.shift_up_code(c, k))
            .collect();
        Poly::from_codes(&self.ring, codes)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    /// Dense coefficient vector of length `n` (codes).
    pub fn to_word(&self, n: usize) -> Vec<u64> {
        assert!(self.coeffs.len() <= n, "polynomial does not fit in length {n}");
        let mut w = self.coeffs.clone();
        w.resize(n, 0);
        w
    }

    pub fn from_word(ring: &ChainRing, word: &[u64]) -> Poly {
        Poly::from_codes(ring, word.to_vec())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut codes = vec![0u64; n];
        for (i, c) in codes.iter_mut().enumerate() {
            *c = self
                .ring
                .add_code(self.coeff_code(i), rhs.coeff_code(i));
        }
        Poly::from_codes(&self.ring, codes)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut codes = vec![0u64; n];
        for (i, c) in codes.iter_mut().enumerate() {
            *c = self
                .ring
                .sub_code(self.coeff_code(i), rhs.coeff_code(i));
        }
        Poly::from_codes(&self.ring, codes)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut codes = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let prod = self.ring.mul_code(a, b);
                codes[i + j] = self.ring.add_code(codes[i + j], prod);
            }
        }
        Poly::from_codes(&self.ring, codes)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let codes = self.coeffs.iter().map(|&c| self.ring.neg_code(c)).collect();
        Poly::from_codes(&self.ring, codes)
    }
}

macro_rules! poly_owned_ops {
    ($($trait:ident/$method:ident),*) => {$(
        impl std::ops::$trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    )*};
}
poly_owned_ops!(Add/add, Sub/sub, Mul/mul);

impl std::ops::Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.ring.render_code(c);
            let composite = cs.contains('+');
            match k {
                0 => {
                    if composite {
                        write!(f, "({cs})")?;
                    } else {
                        write!(f, "{cs}")?;
                    }
                }
                _ => {
                    let zk = if k == 1 {
                        "z".to_string()
                    } else {
                        format!("z^{k}")
                    };
                    if cs == "1" {
                        write!(f, "{zk}")?;
                    } else if composite {
                        write!(f, "({cs})*{zk}")?;
                    } else {
                        write!(f, "{cs}*{zk}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly_expr, parse_ring_spec};

    fn ring(spec: &str) -> ChainRing {
        parse_ring_spec(spec, None).unwrap()
    }
    fn poly(spec: &str, text: &str) -> Poly {
        parse_poly_expr(&ring(spec), text).unwrap()
    }

    /// Binomial expansion of (z-1)^e computed independently from Pascal's
    /// triangle, as an oracle for pow.
    fn binomial_z_minus_one(r: &ChainRing, e: usize) -> Poly {
        let mut row = vec![1i64];
        for _ in 0..e {
            let mut next = vec![1i64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            // avoid overflow by reducing through the ring each row
            row = next
                .iter()
                .map(|&c| r.from_integer(c).code() as i64)
                .collect();
        }
        let codes: Vec<u64> = row
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let sign = if (e - i) % 2 == 0 { 1i64 } else { -1i64 };
                (r.from_integer(sign) * r.elem(c as u64)).code()
            })
            .collect();
        Poly::from_codes(r, codes)
    }

    #[test]
    fn frobenius_powers_of_z_minus_one() {
        // (z-1)^2 = z^2 + 1 over F_2
        let f2 = ring("F2[u]/u^1");
        assert_eq!(Poly::z_minus_one(&f2).pow(2), poly("F2[u]/u^1", "z^2+1"));
        // (z-1)^3 = z^3 - 1 over F_3
        let f3 = ring("F3[u]/u^1");
        assert_eq!(
            Poly::z_minus_one(&f3).pow(3),
            poly("F3[u]/u^1", "z^3 - 1")
        );
        // (z-1)^5 = z^5 - 1 over F_5, cross-checked against Pascal's triangle
        let f5 = ring("F5[u]/u^1");
        let direct = Poly::z_minus_one(&f5).pow(5);
        assert_eq!(direct, poly("F5[u]/u^1", "z^5 - 1"));
        assert_eq!(direct, binomial_z_minus_one(&f5, 5));
        for e in 0..12 {
            assert_eq!(Poly::z_minus_one(&f5).pow(e as u64), binomial_z_minus_one(&f5, e));
        }
    }

    #[test]
    fn reduction_mod_zn_minus_one() {
        let f2 = ring("F2[u]/u^1");
        // z^8 -> 1 at n = 8
        let z8 = Poly::z(&f2).pow(8);
        assert_eq!(z8.reduce_mod_xn_minus_1(8), Poly::one(&f2));
        // z^5 + z^2 folds to 2 z^2 at n = 3
        let f5 = ring("Z/25");
        let f = poly("Z/25", "z^5 + z^2");
        assert_eq!(f.reduce_mod_xn_minus_1(3), poly("Z/25", "2*z^2"));
        // (z-1)^256 vanishes modulo z^256 - 1 in characteristic 2
        let r16 = ring("F16[u]/u^2");
        let p = Poly::z_minus_one(&r16).pow(256).reduce_mod_xn_minus_1(256);
        assert!(p.is_zero());
    }

    #[test]
    fn reciprocal_basics() {
        let f2 = ring("F2[u]/u^1");
        assert!(Poly::zero(&f2).reciprocal().is_zero());
        let c = poly("Z/25", "3");
        assert_eq!(c.reciprocal(), c);
        // z* = 1
        assert_eq!(Poly::z(&f2).reciprocal(), Poly::one(&f2));
        assert!(!Poly::z(&f2).is_self_reciprocal());
        // degree drops when the constant term vanishes
        let g = poly("Z/9", "z^5+z^4+z^3+z^2+z");
        let gr = g.reciprocal();
        assert_eq!(gr, poly("Z/9", "z^4+z^3+z^2+z+1"));
        assert_eq!(gr.degree(), Some(4));
    }

    #[test]
    fn reciprocal_of_gamma_times_power_is_signed() {
        // (gamma (z-1)^b)* = (-1)^b gamma (z-1)^b
        for spec in ["Z/9", "Z/25", "F4[u]/u^2"] {
            let r = ring(spec);
            let gamma = Poly::constant(&r.gamma());
            for b in 0..6u64 {
                let f = &gamma * &Poly::z_minus_one(&r).pow(b);
                let want = if b % 2 == 0 { f.clone() } else { -&f };
                assert_eq!(f.reciprocal(), want, "b={b} over {r}");
            }
        }
    }

    #[test]
    fn self_reciprocal_examples() {
        assert!(poly("F3[u]/u^1", "2*z + 2").is_self_reciprocal());
        assert!(poly("Z/25", "3").is_self_reciprocal());
        assert!(!poly("F2[u]/u^1", "z").is_self_reciprocal());
    }

    #[test]
    fn divmod_and_divides() {
        let f3 = ring("F3[u]/u^1");
        let d = Poly::z_minus_one(&f3).pow(3);
        let f = poly("F3[u]/u^1", "2*z^5 - 1");
        let (q, r) = f.divmod(&d).unwrap();
        assert_eq!(&(&q * &d) + &r, f);
        assert!(!r.is_zero());
        assert!(!d.divides(&f).unwrap());
        // z(z^2+1) is divisible by (z+1)^2 over F_2
        let f2 = ring("F2[u]/u^1");
        let num = poly("F2[u]/u^1", "z*(z^2+1)");
        let den = poly("F2[u]/u^1", "(z+1)^2");
        assert!(den.divides(&num).unwrap());
        // (z-1) divides z^2-1 over F_5
        let f5 = ring("F5[u]/u^1");
        assert!(Poly::z_minus_one(&f5)
            .divides(&poly("F5[u]/u^1", "z^2-1"))
            .unwrap());
        // anything divides zero; division by f = d gives (1, 0)
        assert!(d.divides(&Poly::zero(&f3)).unwrap());
        let (q, r) = d.divmod(&d).unwrap();
        assert_eq!(q, Poly::one(&f3));
        assert!(r.is_zero());
        // a non-unit leading coefficient is rejected
        let z9 = ring("Z/9");
        let bad = poly("Z/9", "3*z + 1");
        assert!(matches!(
            poly("Z/9", "z^2").divmod(&bad),
            Err(crate::error::Error::NonUnitLeadingCoefficient)
        ));
    }

    #[test]
    fn divmod_works_over_the_full_ring() {
        // monic division stays exact over chain rings with zero divisors
        let d = poly("Z/9", "z^2 + 3*z + 1");
        let q0 = poly("Z/9", "z^3 + 6*z + 7");
        let r0 = poly("Z/9", "5*z + 2");
        let f = &(&q0 * &d) + &r0;
        let (q, r) = f.divmod(&d).unwrap();
        assert_eq!(q, q0);
        assert_eq!(r, r0);
    }

    #[test]
    fn eval_and_weight() {
        let f = poly("Z/9", "z^2 + 2*z + 1");
        let r = ring("Z/9");
        assert_eq!(f.eval(&r.from_integer(1)).code(), 4);
        assert_eq!(f.weight(), 3);
        assert_eq!(Poly::zero(&r).weight(), 0);
    }

    #[test]
    fn residue_and_lift_of_polys() {
        let z9 = ring("Z/9");
        let f = poly("Z/9", "z^2 + 3*z + 7");
        let fr = f.residue();
        assert_eq!(fr, poly("F3[u]/u^1", "z^2 + 1").residue());
        let lifted = fr.lift_into(&z9);
        assert_eq!(lifted.residue(), fr);
    }

    #[test]
    fn display_round_trips() {
        for (spec, text) in [
            ("Z/25", "(z-1)^3 + g*3*(z-1)"),
            ("F4[u]/u^2", "z - 1 + g"),
            ("F16[u]/u^2", "(z-1)^5 + 3*g*(z-1)^4"),
            ("F3[u]/u^3", "g*(z-1) + g^2"),
        ] {
            let r = ring(spec);
            let p = parse_poly_expr(&r, text).unwrap();
            let printed = p.to_string();
            let reparsed = parse_poly_expr(&r, &printed).unwrap();
            assert_eq!(p, reparsed, "round trip failed for `{printed}`");
        }
    }
}
