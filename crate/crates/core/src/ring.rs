//! Exact arithmetic in finite commutative chain rings and their residue fields.
//!
//! Two families are supported:
//!
//! * `Z/p^a` — integers modulo a prime power, with `gamma = p` and residue
//!   field `F_p`;
//! * `F_q[u]/(u^nu)` with `q = p^m` — polynomials in a nilpotent `u` over a
//!   finite field, with `gamma = u` and residue field `F_q`.
//!
//! Elements are addressed by a canonical `u64` code. For `Z/p^a` the code is
//! the integer value; for `F_q[u]/(u^nu)` it is the mixed-radix base-`q`
//! encoding of the gamma-adic digit vector, where each digit is a field
//! element coded in base `p`. Codes enumerate the ring as `0..order`, and two
//! elements are equal iff their codes are equal.
//!
//! All values are immutable; operations are pure functions, and rings are
//! cheaply clonable shared handles that are safe to send across threads.
//! Arithmetic between elements of different rings is a programming error and
//! panics.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Ring family and its defining data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Integers modulo `p^a`.
    ZmodPA { p: u64, a: u32 },
    /// `F_{p^m}[u]/(u^nu)`, with a monic irreducible `field_modulus` of
    /// degree `m` over `F_p` (coefficients ascending, last one 1).
    FqModU {
        p: u64,
        m: u32,
        nu: u32,
        field_modulus: Vec<u64>,
    },
}

struct RingInner {
    family: Family,
    p: u64,
    m: u32,
    nu: u32,
    q: u64,
    order: u64,
    char_exp: u32,
    // F_q engine (FqModU only): tables indexed by a*q+b.
    f_add: Vec<u16>,
    f_mul: Vec<u16>,
    f_inv: Vec<u16>,
    f_neg: Vec<u16>,
    // ZmodPA only: Teichmueller lift of each residue 0..p.
    teich: Vec<u64>,
    zeta_field_code: u64,
    residue: OnceLock<ChainRing>,
}

/// A finite commutative chain ring. Cheap to clone; equality compares the
/// ring description, not the handle.
#[derive(Clone)]
pub struct ChainRing(Arc<RingInner>);

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) || self.0.family == other.0.family {
            return true;
        }
        // a prime field is a prime field, whichever family expresses it
        self.0.nu == 1
            && other.0.nu == 1
            && self.0.m == 1
            && other.0.m == 1
            && self.0.p == other.0.p
    }
}
impl Eq for ChainRing {}

impl fmt::Debug for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainRing({self})")
    }
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.family {
            Family::ZmodPA { .. } => write!(f, "Z/{}", self.0.order),
            Family::FqModU { nu, .. } => write!(f, "F{}[u]/u^{}", self.0.q, nu),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1u64 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % n as u128) as u64;
        }
        b = ((b as u128 * b as u128) % n as u128) as u64;
        e >>= 1;
    }
    acc
}

// ---- small F_p[x] helpers used only for modulus validation -----------------

fn fp_poly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_poly_trim(&mut r);
    let db = b.len() - 1;
    let lb_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr] * lb_inv % p;
        if factor != 0 {
            let shift = dr - db;
            for (i, &bc) in b.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - factor * bc % p) % p;
            }
        }
        fp_poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn fp_is_irreducible(modulus: &[u64], p: u64) -> bool {
    let m = modulus.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=m/2.
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut k = idx;
            for _ in 0..d {
                div.push(k % p);
                k /= p;
            }
            div.push(1);
            if fp_poly_rem(modulus, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Deterministic default modulus for `F_{p^m}`: the conventional choices for
/// F4, F8, F9, F16, otherwise the lexicographically smallest monic
/// irreducible of degree `m`.
pub fn default_field_modulus(p: u64, m: u32) -> Result<Vec<u64>> {
    let fixed: &[(u64, u32, &[u64])] = &[
        (2, 2, &[1, 1, 1]),    // x^2 + x + 1
        (2, 3, &[1, 1, 0, 1]), // x^3 + x + 1
        (3, 2, &[1, 0, 1]),    // x^2 + 1
        (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    ];
    for &(fp, fm, coeffs) in fixed {
        if fp == p && fm == m {
            return Ok(coeffs.to_vec());
        }
    }
    if m == 1 {
        return Ok(vec![0, 1]); // x; unused in arithmetic
    }
    let count = p
        .checked_pow(m)
        .ok_or_else(|| Error::InvalidRing("field too large".into()))?;
    for idx in 0..count {
        let mut cand = Vec::with_capacity(m as usize + 1);
        let mut k = idx;
        for _ in 0..m {
            cand.push(k % p);
            k /= p;
        }
        cand.push(1);
        if fp_is_irreducible(&cand, p) {
            return Ok(cand);
        }
    }
    Err(Error::InvalidRing(format!(
        "no irreducible polynomial of degree {m} over F_{p} found"
    )))
}

const MAX_ORDER: u64 = 1 << 32;
const MAX_Q_TABLES: u64 = 1024;

impl ChainRing {
    /// `Z/p^a` with `gamma = p`.
    pub fn zmod_pa(p: u64, a: u32) -> Result<ChainRing> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if a == 0 {
            return Err(Error::InvalidRing("exponent must be >= 1".into()));
        }
        let order = p
            .checked_pow(a)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidRing(format!("p^a too large (p={p}, a={a})")))?;
        // Teichmueller lift by iterated p-th powering until fixpoint.
        let mut teich = Vec::with_capacity(p as usize);
        for r in 0..p {
            let mut x = r;
            loop {
                let y = pow_mod(x, p, order);
                if y == x {
                    break;
                }
                x = y;
            }
            teich.push(x);
        }
        let zeta = primitive_root_via(p, |x, y| x * y % p);
        Ok(ChainRing(Arc::new(RingInner {
            family: Family::ZmodPA { p, a },
            p,
            m: 1,
            nu: a,
            q: p,
            order,
            char_exp: a,
            f_add: Vec::new(),
            f_mul: Vec::new(),
            f_inv: Vec::new(),
            f_neg: Vec::new(),
            teich,
            zeta_field_code: zeta,
            residue: OnceLock::new(),
        })))
    }

    /// `F_{p^m}[u]/(u^nu)` with the default field modulus.
    pub fn fq_mod_u(p: u64, m: u32, nu: u32) -> Result<ChainRing> {
        let modulus = default_field_modulus(p, m)?;
        ChainRing::fq_mod_u_with_modulus(p, m, nu, &modulus)
    }

    /// `F_{p^m}[u]/(u^nu)` with an explicit monic irreducible modulus of
    /// degree `m` over `F_p` (coefficients ascending, last one 1).
    pub fn fq_mod_u_with_modulus(p: u64, m: u32, nu: u32, modulus: &[u64]) -> Result<ChainRing> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if m == 0 || m > 8 {
            return Err(Error::InvalidRing("extension degree must be in 1..=8".into()));
        }
        if nu == 0 {
            return Err(Error::InvalidRing("nilpotency index must be >= 1".into()));
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_Q_TABLES)
            .ok_or_else(|| Error::InvalidRing(format!("residue field too large (p={p}, m={m})")))?;
        let order = q
            .checked_pow(nu)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidRing("ring order too large".into()))?;
        if modulus.len() != m as usize + 1 || modulus.last() != Some(&1) {
            return Err(Error::InvalidRing(format!(
                "field modulus must be monic of degree {m}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidRing("field modulus coefficients must be < p".into()));
        }
        if m > 1 && !fp_is_irreducible(modulus, p) {
            return Err(Error::InvalidRing("field modulus is reducible".into()));
        }

        // Field tables over digit-coded elements.
        let qs = q as usize;
        let mut f_add = vec![0u16; qs * qs];
        let mut f_mul = vec![0u16; qs * qs];
        let mut f_neg = vec![0u16; qs];
        let digits = |c: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(m as usize);
            let mut k = c;
            for _ in 0..m {
                v.push(k % p);
                k /= p;
            }
            v
        };
        let encode = |v: &[u64]| -> u64 {
            let mut c = 0u64;
            for &d in v.iter().rev() {
                c = c * p + d;
            }
            c
        };
        for a in 0..q {
            let da = digits(a);
            let mut nv = da.clone();
            for d in nv.iter_mut() {
                *d = (p - *d) % p;
            }
            f_neg[a as usize] = encode(&nv) as u16;
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                f_add[(a * q + b) as usize] = encode(&sum) as u16;
                let mut prod = vec![0u64; 2 * m as usize - 1];
                for (i, &x) in da.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = if m > 1 {
                    fp_poly_rem(&prod, modulus, p)
                } else {
                    vec![prod[0]]
                };
                r.resize(m as usize, 0);
                f_mul[(a * q + b) as usize] = encode(&r) as u16;
            }
        }
        let mut f_inv = vec![0u16; qs];
        for a in 1..q {
            for b in 1..q {
                if f_mul[(a * q + b) as usize] == 1 {
                    f_inv[a as usize] = b as u16;
                    break;
                }
            }
        }
        let zeta = primitive_root_via(q, |x, y| f_mul[(x * q + y) as usize] as u64);
        Ok(ChainRing(Arc::new(RingInner {
            family: Family::FqModU {
                p,
                m,
                nu,
                field_modulus: modulus.to_vec(),
            },
            p,
            m,
            nu,
            q,
            order,
            char_exp: 1,
            f_add,
            f_mul,
            f_inv,
            f_neg,
            teich: Vec::new(),
            zeta_field_code: zeta,
            residue: OnceLock::new(),
        })))
    }

    pub fn family(&self) -> &Family {
        &self.0.family
    }
    /// Characteristic prime.
    pub fn p(&self) -> u64 {
        self.0.p
    }
    /// Residue field extension degree over `F_p`.
    pub fn m(&self) -> u32 {
        self.0.m
    }
    /// Nilpotency index of gamma.
    pub fn nu(&self) -> u32 {
        self.0.nu
    }
    /// Residue field order `q = p^m`.
    pub fn q(&self) -> u64 {
        self.0.q
    }
    /// Ring order `q^nu`.
    pub fn order(&self) -> u64 {
        self.0.order
    }
    /// `char R = p^a`; returns `a`.
    pub fn char_exponent(&self) -> u32 {
        self.0.char_exp
    }
    pub fn is_field(&self) -> bool {
        self.0.nu == 1
    }

    /// The residue field `R/(gamma)` as a chain ring with `nu = 1`.
    pub fn residue_field(&self) -> ChainRing {
        if self.is_field() {
            return self.clone();
        }
        self.0
            .residue
            .get_or_init(|| match &self.0.family {
                Family::ZmodPA { p, .. } => ChainRing::zmod_pa(*p, 1).unwrap(),
                Family::FqModU {
                    p, m, field_modulus, ..
                } => ChainRing::fq_mod_u_with_modulus(*p, *m, 1, field_modulus).unwrap(),
            })
            .clone()
    }

    pub fn zero(&self) -> RingElement {
        self.elem(0)
    }
    pub fn one(&self) -> RingElement {
        self.elem(1 % self.0.order)
    }
    pub fn gamma(&self) -> RingElement {
        if self.0.nu == 1 {
            return self.zero();
        }
        match &self.0.family {
            Family::ZmodPA { p, .. } => self.elem(*p),
            Family::FqModU { .. } => self.elem(self.0.q),
        }
    }

    /// Element from its canonical code. Panics if out of range.
    pub fn elem(&self, code: u64) -> RingElement {
        assert!(code < self.0.order, "element code {code} out of range");
        RingElement {
            ring: self.clone(),
            code,
        }
    }

    /// Embedding of a small integer via repeated addition of 1 (i.e. the
    /// image of `k` under the unique map from the integers).
    pub fn from_integer(&self, k: i64) -> RingElement {
        match &self.0.family {
            Family::ZmodPA { .. } => {
                let o = self.0.order as i64;
                self.elem(k.rem_euclid(o) as u64)
            }
            Family::FqModU { p, .. } => {
                let r = k.rem_euclid(*p as i64) as u64;
                self.elem(r)
            }
        }
    }

    /// A fixed generator of the nonzero Teichmueller representatives; its
    /// multiplicative order is `q - 1`.
    pub fn zeta(&self) -> RingElement {
        self.lift_code(self.0.zeta_field_code)
    }

    // ---- code-level arithmetic ---------------------------------------------

    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        let r = &*self.0;
        match r.family {
            Family::ZmodPA { .. } => {
                let s = a + b;
                if s >= r.order {
                    s - r.order
                } else {
                    s
                }
            }
            Family::FqModU { .. } => {
                let q = r.q;
                let mut out = 0u64;
                let mut mul = 1u64;
                let (mut x, mut y) = (a, b);
                for _ in 0..r.nu {
                    let d = r.f_add[((x % q) * q + (y % q)) as usize] as u64;
                    out += d * mul;
                    mul *= q;
                    x /= q;
                    y /= q;
                }
                out
            }
        }
    }

    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        let r = &*self.0;
        match r.family {
            Family::ZmodPA { .. } => {
                if a == 0 {
                    0
                } else {
                    r.order - a
                }
            }
            Family::FqModU { .. } => {
                let q = r.q;
                let mut out = 0u64;
                let mut mul = 1u64;
                let mut x = a;
                for _ in 0..r.nu {
                    out += r.f_neg[(x % q) as usize] as u64 * mul;
                    mul *= q;
                    x /= q;
                }
                out
            }
        }
    }

    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        let r = &*self.0;
        match r.family {
            Family::ZmodPA { .. } => ((a as u128 * b as u128) % r.order as u128) as u64,
            Family::FqModU { .. } => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let q = r.q;
                let nu = r.nu as usize;
                let mut da = [0u64; 32];
                let mut db = [0u64; 32];
                let (mut x, mut y) = (a, b);
                for i in 0..nu {
                    da[i] = x % q;
                    db[i] = y % q;
                    x /= q;
                    y /= q;
                }
                let mut dc = [0u64; 32];
                for i in 0..nu {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..nu - i {
                        if db[j] == 0 {
                            continue;
                        }
                        let prod = r.f_mul[(da[i] * q + db[j]) as usize] as u64;
                        dc[i + j] = r.f_add[(dc[i + j] * q + prod) as usize] as u64;
                    }
                }
                let mut out = 0u64;
                for i in (0..nu).rev() {
                    out = out * q + dc[i];
                }
                out
            }
        }
    }

    /// Gamma-adic valuation of a code; `nu` for zero.
    pub(crate) fn val_code(&self, a: u64) -> u32 {
        let r = &*self.0;
        if a == 0 {
            return r.nu;
        }
        match r.family {
            Family::ZmodPA { p, .. } => {
                let mut v = 0;
                let mut x = a;
                while x % p == 0 {
                    v += 1;
                    x /= p;
                }
                v
            }
            Family::FqModU { .. } => {
                let q = r.q;
                let mut v = 0;
                let mut x = a;
                while x % q == 0 {
                    v += 1;
                    x /= q;
                }
                v
            }
        }
    }

    /// Teichmueller digit vector (field codes), length `nu`.
    pub(crate) fn digits_code(&self, a: u64) -> Vec<u64> {
        let r = &*self.0;
        let mut out = Vec::with_capacity(r.nu as usize);
        match r.family {
            Family::ZmodPA { p, .. } => {
                let mut x = a;
                let mut modulus = r.order;
                for _ in 0..r.nu {
                    let d = x % p;
                    out.push(d);
                    let t = r.teich[d as usize] % modulus;
                    // x - lift(d) is divisible by p; peel one digit
                    x = (x + modulus - t) % modulus;
                    x /= p;
                    modulus /= p;
                }
                out
            }
            Family::FqModU { .. } => {
                let q = r.q;
                let mut x = a;
                for _ in 0..r.nu {
                    out.push(x % q);
                    x /= q;
                }
                out
            }
        }
    }

    /// Rebuild a code from Teichmueller digits (field codes).
    pub(crate) fn from_digits_code(&self, digits: &[u64]) -> u64 {
        let r = &*self.0;
        match r.family {
            Family::ZmodPA { p, .. } => {
                let mut out = 0u128;
                let mut scale = 1u128;
                for &d in digits.iter().take(r.nu as usize) {
                    out += r.teich[d as usize] as u128 * scale;
                    scale *= p as u128;
                }
                (out % r.order as u128) as u64
            }
            Family::FqModU { .. } => {
                let mut out = 0u64;
                for &d in digits.iter().take(r.nu as usize).rev() {
                    out = out * r.q + d;
                }
                out
            }
        }
    }

    /// Exact division by `gamma^k`; requires `val(a) >= k`. The result is the
    /// digit shift, i.e. the unique representative whose digits are those of
    /// `a` moved down by `k`.
    pub(crate) fn shift_down_code(&self, a: u64, k: u32) -> u64 {
        if k == 0 || a == 0 {
            return a;
        }
        debug_assert!(self.val_code(a) >= k);
        let mut d = self.digits_code(a);
        d.drain(..k as usize);
        self.from_digits_code(&d)
    }

    /// Multiplication by `gamma^k` (digits shift up, truncating).
    pub(crate) fn shift_up_code(&self, a: u64, k: u32) -> u64 {
        if a == 0 {
            return 0;
        }
        if k >= self.0.nu {
            return 0;
        }
        let mut d = self.digits_code(a);
        d.truncate((self.0.nu - k) as usize);
        let mut full = vec![0u64; k as usize];
        full.extend(d);
        self.from_digits_code(&full)
    }

    /// Inverse of a unit code.
    pub(crate) fn inv_code(&self, a: u64) -> Result<u64> {
        if self.val_code(a) != 0 {
            return Err(Error::NotAUnit);
        }
        let r = &*self.0;
        match r.family {
            Family::ZmodPA { .. } => {
                // extended euclid on (a, order)
                let (mut t0, mut t1) = (0i128, 1i128);
                let (mut r0, mut r1) = (r.order as i128, a as i128);
                while r1 != 0 {
                    let qt = r0 / r1;
                    (r0, r1) = (r1, r0 - qt * r1);
                    (t0, t1) = (t1, t0 - qt * t1);
                }
                debug_assert_eq!(r0, 1);
                Ok(t0.rem_euclid(r.order as i128) as u64)
            }
            Family::FqModU { .. } if r.nu == 1 => Ok(r.f_inv[a as usize] as u64),
            Family::FqModU { .. } => {
                // unit group exponent: |U| = order - order/q
                let units = r.order - r.order / r.q;
                let mut acc = 1u64;
                let mut base = a;
                let mut e = units - 1;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = self.mul_code(acc, base);
                    }
                    base = self.mul_code(base, base);
                    e >>= 1;
                }
                Ok(acc)
            }
        }
    }

    /// Residue of a code, as a code of the residue field.
    pub(crate) fn residue_code(&self, a: u64) -> u64 {
        match self.0.family {
            Family::ZmodPA { p, .. } => a % p,
            Family::FqModU { .. } => a % self.0.q,
        }
    }

    pub(crate) fn lift_code(&self, field_code: u64) -> RingElement {
        assert!(field_code < self.0.q, "field code out of range");
        match self.0.family {
            Family::ZmodPA { .. } => self.elem(self.0.teich[field_code as usize]),
            Family::FqModU { .. } => self.elem(field_code),
        }
    }

    // ---- element-level API --------------------------------------------------

    pub fn residue_of(&self, x: &RingElement) -> RingElement {
        assert_eq!(self, x.ring(), "ring mismatch");
        self.residue_field().elem(self.residue_code(x.code))
    }

    /// Teichmueller section of the residue map.
    pub fn lift(&self, y: &RingElement) -> RingElement {
        assert_eq!(
            &self.residue_field(),
            y.ring(),
            "lift argument must live in the residue field"
        );
        self.lift_code(y.code)
    }

    /// Iterate all elements in canonical code order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.0.order).map(move |c| self.elem(c))
    }

    /// Iterate all elements, refusing if the ring order exceeds `cap`.
    pub fn elements_checked(&self, cap: u64) -> Result<impl Iterator<Item = RingElement> + '_> {
        if self.0.order > cap {
            return Err(Error::CapExceeded {
                what: "ring element iteration",
                needed: self.0.order as u128,
                cap,
            });
        }
        Ok(self.elements())
    }

    /// Iterate all units.
    pub fn units(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.elements().filter(|e| e.is_unit())
    }

    pub fn units_checked(&self, cap: u64) -> Result<impl Iterator<Item = RingElement> + '_> {
        if self.0.order > cap {
            return Err(Error::CapExceeded {
                what: "ring unit iteration",
                needed: self.0.order as u128,
                cap,
            });
        }
        Ok(self.units())
    }

    /// Render an element code in the symbolic grammar (`g` is gamma, field
    /// digits appear as integer codes).
    pub fn render_code(&self, code: u64) -> String {
        let digits = self.digits_code(code);
        match self.0.family {
            Family::ZmodPA { .. } => format!("{code}"),
            Family::FqModU { .. } => {
                let mut terms = Vec::new();
                for (i, &d) in digits.iter().enumerate() {
                    if d == 0 {
                        continue;
                    }
                    let t = match i {
                        0 => format!("{d}"),
                        1 => {
                            if d == 1 {
                                "g".to_string()
                            } else {
                                format!("{d}*g")
                            }
                        }
                        _ => {
                            if d == 1 {
                                format!("g^{i}")
                            } else {
                                format!("{d}*g^{i}")
                            }
                        }
                    };
                    terms.push(t);
                }
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            }
        }
    }
}

fn primitive_root_via(q: u64, mul: impl Fn(u64, u64) -> u64) -> u64 {
    if q == 2 {
        return 1;
    }
    let factors = prime_factors(q - 1);
    'cand: for g in 2..q {
        for &f in &factors {
            // g^((q-1)/f) by square and multiply
            let mut acc = 1u64;
            let mut base = g;
            let mut e = (q - 1) / f;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            if acc == 1 {
                continue 'cand;
            }
        }
        return g;
    }
    1
}

/// An element of a chain ring, identified by its canonical code.
#[derive(Clone)]
pub struct RingElement {
    ring: ChainRing,
    code: u64,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.ring == other.ring
    }
}
impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.ring.render_code(self.code), self.ring)
    }
}

impl RingElement {
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }
    pub fn code(&self) -> u64 {
        self.code
    }
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
    /// Unit iff the zeroth Teichmueller digit is nonzero.
    pub fn is_unit(&self) -> bool {
        self.ring.val_code(self.code) == 0
    }
    /// Gamma-adic valuation; `nu` for zero.
    pub fn val(&self) -> u32 {
        self.ring.val_code(self.code)
    }
    pub fn inv(&self) -> Result<RingElement> {
        Ok(self.ring.elem(self.ring.inv_code(self.code)?))
    }
    pub fn residue(&self) -> RingElement {
        self.ring.residue_of(self)
    }
    /// Teichmueller digits as residue-field codes, lowest power first.
    pub fn teichmuller_digits(&self) -> Vec<u64> {
        self.ring.digits_code(self.code)
    }
    pub fn pow(&self, mut e: u64) -> RingElement {
        let mut acc = self.ring.one();
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
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.render_code(self.code))
    }
}

macro_rules! elem_binop {
    ($trait:ident, $method:ident, $code_fn:ident) => {
        impl std::ops::$trait for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                assert_eq!(self.ring, rhs.ring, "ring mismatch");
                self.ring.elem(self.ring.$code_fn(self.code, rhs.code))
            }
        }
        impl std::ops::$trait for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

elem_binop!(Add, add, add_code);
elem_binop!(Sub, sub, sub_code);
elem_binop!(Mul, mul, mul_code);

impl std::ops::Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.ring.elem(self.ring.neg_code(self.code))
    }
}
impl std::ops::Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z9() -> ChainRing {
        ChainRing::zmod_pa(3, 2).unwrap()
    }
    fn z25() -> ChainRing {
        ChainRing::zmod_pa(5, 2).unwrap()
    }
    fn f2u3() -> ChainRing {
        ChainRing::fq_mod_u(2, 1, 3).unwrap()
    }
    fn f3u3() -> ChainRing {
        ChainRing::fq_mod_u(3, 1, 3).unwrap()
    }

    #[test]
    fn construction_and_order() {
        assert_eq!(z9().order(), 9);
        assert_eq!(z9().q(), 3);
        assert_eq!(z9().nu(), 2);
        assert_eq!(z9().char_exponent(), 2);
        let f4u2 = ChainRing::fq_mod_u(2, 2, 2).unwrap();
        assert_eq!(f4u2.order(), 16);
        assert_eq!(f4u2.q(), 4);
        assert_eq!(f4u2.char_exponent(), 1);
        assert_eq!(f4u2.to_string(), "F4[u]/u^2");
        assert_eq!(z25().to_string(), "Z/25");
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(ChainRing::zmod_pa(6, 1).is_err());
        assert!(ChainRing::zmod_pa(3, 0).is_err());
        // x^2 + x is reducible over F_2
        assert!(ChainRing::fq_mod_u_with_modulus(2, 2, 2, &[0, 1, 1]).is_err());
        // non-monic
        assert!(ChainRing::fq_mod_u_with_modulus(3, 2, 1, &[1, 0, 2]).is_err());
    }

    #[test]
    fn gamma_squared_vanishes_at_nu_two() {
        let r = z25();
        let g = r.gamma();
        assert!((&g * &g).is_zero());
        let s = ChainRing::fq_mod_u(3, 1, 3).unwrap();
        let g = s.gamma();
        assert!(!(&g * &g).is_zero());
        assert!((&(&g * &g) * &g).is_zero());
    }

    #[test]
    fn fqmodu_addition_is_coefficientwise() {
        // (u + u^2) + 2u = u^2 over F_3[u]/u^3
        let r = f3u3();
        let x = &r.gamma() + &r.gamma().pow(2);
        let y = &r.from_integer(2) * &r.gamma();
        let sum = &x + &y;
        assert_eq!(sum, r.gamma().pow(2));
    }

    #[test]
    fn zmod_arith_matches_integers_exhaustively() {
        let r = z9();
        for a in 0..9u64 {
            for b in 0..9u64 {
                assert_eq!(r.add_code(a, b), (a + b) % 9);
                assert_eq!(r.mul_code(a, b), (a * b) % 9);
                assert_eq!(r.sub_code(a, b), (9 + a - b) % 9);
            }
        }
        // 3 + 7 = 1, whose digits are (1, 0)
        assert_eq!(r.add_code(3, 7), 1);
        assert_eq!(r.digits_code(1), vec![1, 0]);
    }

    #[test]
    fn teichmuller_decomposition_round_trips() {
        for ring in [z9(), z25(), f2u3(), ChainRing::fq_mod_u(2, 2, 2).unwrap()] {
            for x in ring.elements() {
                let digits = x.teichmuller_digits();
                assert_eq!(digits.len(), ring.nu() as usize);
                assert!(digits.iter().all(|&d| d < ring.q()));
                let back = ring.from_digits_code(&digits);
                assert_eq!(back, x.code(), "round trip failed in {ring} for {x:?}");
                // recomposition as a sum of lifted digits times gamma powers
                let mut acc = ring.zero();
                let mut gp = ring.one();
                for &d in &digits {
                    let term = &ring.lift_code(d) * &gp;
                    acc = &acc + &term;
                    gp = &gp * &ring.gamma();
                }
                assert_eq!(acc.code(), x.code());
            }
        }
    }

    #[test]
    fn teichmuller_examples() {
        // zero decomposes to all-zero digits
        assert_eq!(z9().digits_code(0), vec![0, 0]);
        // in Z/4 the Teichmueller set is {0, 1}, so 3 = 1 + 2*1
        let z4 = ChainRing::zmod_pa(2, 2).unwrap();
        assert_eq!(z4.digits_code(3), vec![1, 1]);
        // in F_2[u]/u^2 the digits of 1 + u are literal
        let r = ChainRing::fq_mod_u(2, 1, 2).unwrap();
        let x = &r.one() + &r.gamma();
        assert_eq!(x.teichmuller_digits(), vec![1, 1]);
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(z25().elem(0).val(), 2);
        assert_eq!(z25().elem(15).val(), 1);
        assert_eq!(f3u3().gamma().pow(2).val(), 2);
        assert_eq!(f3u3().elem(0).val(), 3);
    }

    #[test]
    fn unit_criterion_matches_residue() {
        for ring in [z9(), f2u3(), ChainRing::fq_mod_u(2, 2, 2).unwrap(), z25()] {
            for x in ring.elements() {
                assert_eq!(x.is_unit(), !x.residue().is_zero());
            }
        }
    }

    #[test]
    fn inversion() {
        let r = z9();
        assert_eq!(r.elem(2).inv().unwrap().code(), 5);
        assert_eq!(r.one().inv().unwrap(), r.one());
        assert!(r.gamma().inv().is_err());
        // every unit of F_2[u]/u^3 inverts correctly (4 units)
        let s = f2u3();
        let mut count = 0;
        for x in s.units() {
            let inv = x.inv().unwrap();
            assert_eq!(&x * &inv, s.one());
            count += 1;
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn residue_and_lift() {
        let r = z25();
        assert!(r.gamma().residue().is_zero());
        assert_eq!(r.elem(7).residue().code(), 2);
        let rf = r.residue_field();
        for y in rf.elements() {
            assert_eq!(r.lift(&y).residue(), y);
            // the lift lands in the Teichmueller set: its digits are (y, 0)
            let digits = r.lift(&y).teichmuller_digits();
            assert_eq!(digits[0], y.code());
            assert!(digits[1..].iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn residue_is_a_homomorphism_exhaustively() {
        let r = f2u3();
        for a in r.elements() {
            for b in r.elements() {
                assert_eq!((&a * &b).residue(), &a.residue() * &b.residue());
                assert_eq!((&a + &b).residue(), &a.residue() + &b.residue());
            }
        }
    }

    #[test]
    fn element_and_unit_counts() {
        let r = ChainRing::fq_mod_u(2, 1, 2).unwrap();
        assert_eq!(r.elements().count(), 4);
        assert_eq!(r.units().count(), 2);
        assert_eq!(z9().units().count(), 6);
        let f4u2 = ChainRing::fq_mod_u(2, 2, 2).unwrap();
        assert_eq!(f4u2.elements().count(), 16);
        assert_eq!(f4u2.units().count(), 12);
        assert!(f4u2.elements_checked(8).is_err());
        assert!(f4u2.elements_checked(16).is_ok());
    }

    #[test]
    fn zeta_generates_the_nonzero_teichmuller_set() {
        for ring in [
            z9(),
            z25(),
            ChainRing::fq_mod_u(2, 2, 2).unwrap(),
            ChainRing::fq_mod_u(2, 4, 2).unwrap(),
            ChainRing::fq_mod_u(3, 2, 1).unwrap(),
        ] {
            let zeta = ring.zeta();
            let order = ring.q() - 1;
            assert_eq!(zeta.pow(order), ring.one(), "zeta^(q-1) != 1 in {ring}");
            for k in 1..order {
                assert_ne!(zeta.pow(k), ring.one(), "zeta has order < q-1 in {ring}");
            }
        }
    }

    #[test]
    fn characteristic_is_p_to_the_a() {
        for ring in [z9(), f2u3(), ChainRing::fq_mod_u(2, 2, 2).unwrap()] {
            let mut acc = ring.zero();
            let mut additive_order = 0u64;
            loop {
                acc = &acc + &ring.one();
                additive_order += 1;
                if acc.is_zero() {
                    break;
                }
            }
            assert_eq!(additive_order, ring.p().pow(ring.char_exponent()));
        }
    }

    #[test]
    fn shift_up_down_codes() {
        let r = z25();
        // 15 = 5 * 3; the digit-shift representative is the lift of 3
        let lambda = r.shift_down_code(15, 1);
        assert_eq!(lambda, r.lift_code(3).code());
        assert_eq!(r.mul_code(lambda, 5), 15);
        assert_eq!(r.shift_up_code(lambda, 1), 15);
        assert_eq!(r.shift_up_code(3, 1), 15);
        let s = f3u3();
        let g2 = s.gamma().pow(2);
        assert_eq!(s.shift_down_code(g2.code(), 2), 1);
    }
}
