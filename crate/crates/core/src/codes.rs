//! Cyclic codes as ideals of `R[z]/(z^n - 1)`.
//!
//! The central object is the standard generating set: minimal-degree
//! polynomials `f_j = gamma^{i_j} h_j` with strictly increasing degrees and
//! strictly decreasing leading-coefficient valuations, which generate the
//! ideal and support exact membership testing by leading-term cancellation.
//!
//! It is extracted from a Howell-style canonical triangulation of the module
//! spanned by all cyclic shifts of the generators: one pivot row per degree,
//! pivot coefficient normalized to a plain gamma power, annihilator multiples
//! of every pivot folded back in, and tails digit-truncated above the pivot
//! valuation of their position. The triangulated basis is canonical for the
//! ideal, so it doubles as a dedup key when enumerating ideal lattices.

use std::collections::HashSet;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::ChainRing;

/// One standard generator `f = gamma^{lead_val} * h` with `deg f = degree`.
#[derive(Clone, Debug)]
pub struct StdEntry {
    pub poly: Poly,
    /// Valuation `i_j` of the leading coefficient.
    pub lead_val: u32,
    /// Degree `t_j`.
    pub degree: usize,
}

impl StdEntry {
    /// The monic cofactor `h` with `poly = gamma^{lead_val} * h` (well defined
    /// modulo `gamma^{nu - lead_val}`; represented by digit shift).
    pub fn monic_part(&self) -> Poly {
        self.poly.shift_down_gamma(self.lead_val)
    }
}

/// Standard generating set: entries ascending by degree, strictly decreasing
/// in leading valuation. Empty for the zero ideal.
#[derive(Clone, Debug)]
pub struct StandardGenSet {
    pub entries: Vec<StdEntry>,
    /// Full canonical triangulated basis (one row per achieved degree).
    howell_rows: Vec<Poly>,
}

impl StandardGenSet {
    pub fn is_zero_ideal(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn howell_rows(&self) -> &[Poly] {
        &self.howell_rows
    }

    /// Canonical content fingerprint; equal keys iff equal ideals.
    pub fn canonical_key(&self) -> Vec<u64> {
        let mut key = Vec::new();
        for row in &self.howell_rows {
            key.push(u64::MAX); // row separator
            key.extend_from_slice(row.coeffs());
        }
        key
    }
}

/// Per-level torsion data. The generator is a monic polynomial over the
/// residue field (zero for the zero torsion code); the torsional degree of a
/// zero level is `n` by convention, so `|Tor_i| = q^(n - degree)` uniformly.
#[derive(Clone, Debug)]
pub struct TorsionLevel {
    pub generator: Poly,
    pub degree: usize,
}

#[derive(Clone, Debug)]
pub struct TorsionProfile {
    pub levels: Vec<TorsionLevel>,
}

impl TorsionProfile {
    /// Torsional degree `T_i`.
    pub fn degree(&self, i: usize) -> usize {
        self.levels[i].degree
    }
}

/// Cardinality as a prime power: `|C| = p^p_exponent = q^q_exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cardinality {
    pub p: u64,
    pub p_exponent: u64,
    pub q_exponent: u64,
}

/// A cyclic code over a chain ring, given by generator polynomials. The
/// standard generating set is computed lazily and cached; all queries are
/// read-only afterwards, so values can be shared freely across threads.
pub struct CyclicCode {
    ring: ChainRing,
    n: usize,
    generators: Vec<Poly>,
    std: OnceLock<StandardGenSet>,
}

impl Clone for CyclicCode {
    fn clone(&self) -> Self {
        let c = CyclicCode {
            ring: self.ring.clone(),
            n: self.n,
            generators: self.generators.clone(),
            std: OnceLock::new(),
        };
        if let Some(s) = self.std.get() {
            let _ = c.std.set(s.clone());
        }
        c
    }
}

impl std::fmt::Debug for CyclicCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CyclicCode(ring={}, n={}, gens=[", self.ring, self.n)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

impl CyclicCode {
    /// Build a code from generators (reduced modulo `z^n - 1`).
    pub fn new(ring: &ChainRing, n: usize, generators: Vec<Poly>) -> Result<CyclicCode> {
        if n == 0 {
            return Err(Error::InvalidParams("length must be >= 1".into()));
        }
        let mut gens = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!(
                    "generator over {} does not live in {}",
                    g.ring(),
                    ring
                )));
            }
            let g = g.reduce_mod_xn_minus_1(n);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(CyclicCode {
            ring: ring.clone(),
            n,
            generators: gens,
            std: OnceLock::new(),
        })
    }

    pub fn zero(ring: &ChainRing, n: usize) -> CyclicCode {
        CyclicCode::new(ring, n, Vec::new()).unwrap()
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }
    pub fn len(&self) -> usize {
        self.n
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero_code(&self) -> bool {
        self.standard_generators().is_zero_ideal()
    }

    /// The whole ambient space `<1>`.
    pub fn is_unit_code(&self) -> bool {
        let std = self.standard_generators();
        std.entries.first().map(|e| e.degree == 0 && e.lead_val == 0) == Some(true)
    }

    /// Standard generating set (cached).
    pub fn standard_generators(&self) -> &StandardGenSet {
        self.std.get_or_init(|| compute_standard_gens(self))
    }

    /// Ideal membership. The argument is reduced modulo `z^n - 1` first.
    pub fn contains(&self, f: &Poly) -> bool {
        assert_eq!(f.ring(), &self.ring, "ring mismatch");
        let f = f.reduce_mod_xn_minus_1(self.n);
        let std = self.standard_generators();
        let mut residual = f.to_word(self.n);
        let mut top = highest_nonzero(&residual);
        while let Some(d) = top {
            let c = residual[d];
            let v = self.ring.val_code(c);
            // the entry with the largest degree <= d; its valuation is the
            // smallest available at or below d
            let entry = std
                .entries
                .iter()
                .rev()
                .find(|e| e.degree <= d);
            let entry = match entry {
                Some(e) if e.lead_val <= v => e,
                _ => return false,
            };
            // exact multiplier: residual -= (c / gamma^{i_j}) * z^(d - t_j) * f_j
            let lambda = self.ring.shift_down_code(c, entry.lead_val);
            let shift = d - entry.degree;
            for (i, &fc) in entry.poly.coeffs().iter().enumerate() {
                let prod = self.ring.mul_code(lambda, fc);
                residual[i + shift] = self.ring.sub_code(residual[i + shift], prod);
            }
            debug_assert_eq!(residual[d], 0);
            top = highest_nonzero(&residual[..d]);
        }
        true
    }

    /// Equality as ideals, decided by mutual membership of standard
    /// generators.
    pub fn same_ideal(&self, other: &CyclicCode) -> bool {
        if self.ring != other.ring || self.n != other.n {
            return false;
        }
        self.standard_generators()
            .entries
            .iter()
            .all(|e| other.contains(&e.poly))
            && other
                .standard_generators()
                .entries
                .iter()
                .all(|e| self.contains(&e.poly))
    }

    /// Canonical per-ideal key (within a fixed ring and length).
    pub fn canonical_key(&self) -> Vec<u64> {
        self.standard_generators().canonical_key()
    }

    /// Torsion code generator per level: `Tor_i` is generated by the monic
    /// part of the entry with the smallest index `j` such that `i_j <= i`,
    /// and is `{0}` below every achieved valuation.
    pub fn torsion_profile(&self) -> TorsionProfile {
        let std = self.standard_generators();
        let rf = self.ring.residue_field();
        let nu = self.ring.nu() as usize;
        let mut levels = Vec::with_capacity(nu);
        for i in 0..nu {
            let entry = std.entries.iter().find(|e| (e.lead_val as usize) <= i);
            let level = match entry {
                Some(e) => {
                    let gen = e.monic_part().residue();
                    debug_assert_eq!(gen.degree(), Some(e.degree));
                    TorsionLevel {
                        degree: e.degree,
                        generator: gen,
                    }
                }
                None => TorsionLevel {
                    generator: Poly::zero(&rf),
                    degree: self.n,
                },
            };
            levels.push(level);
        }
        TorsionProfile { levels }
    }

    /// The level-`i` torsion code as a cyclic code over the residue field.
    pub fn torsion_code(&self, i: usize) -> Result<CyclicCode> {
        let nu = self.ring.nu() as usize;
        if i >= nu {
            return Err(Error::InvalidParams(format!(
                "torsion level {i} out of range 0..{nu}"
            )));
        }
        let profile = self.torsion_profile();
        let rf = self.ring.residue_field();
        let gen = profile.levels[i].generator.clone();
        let gens = if gen.is_zero() { vec![] } else { vec![gen] };
        CyclicCode::new(&rf, self.n, gens)
    }

    /// `|C|` as a prime power, from the closed form over the standard
    /// generating set; asserted equal to the product of torsion-code sizes.
    pub fn cardinality(&self) -> Cardinality {
        let std = self.standard_generators();
        let nu = self.ring.nu() as u64;
        let n = self.n as u64;
        let closed_form = if std.entries.is_empty() {
            0
        } else {
            let i_last = std.entries.last().unwrap().lead_val as u64;
            let mut sum = n * nu - n * i_last;
            let mut prev = nu;
            for e in &std.entries {
                let k = prev - e.lead_val as u64;
                sum -= e.degree as u64 * k;
                prev = e.lead_val as u64;
            }
            sum
        };
        let profile = self.torsion_profile();
        let via_torsion: u64 = profile
            .levels
            .iter()
            .map(|l| n - l.degree as u64)
            .sum();
        assert_eq!(
            closed_form, via_torsion,
            "cardinality closed form disagrees with torsion product"
        );
        Cardinality {
            p: self.ring.p(),
            p_exponent: self.ring.m() as u64 * closed_form,
            q_exponent: closed_form,
        }
    }

    /// Enumerate every codeword (refusing above `cap`), spanning the standard
    /// generators with digit-bounded coefficients. The resulting set is
    /// asserted to have exactly `|C|` distinct members.
    pub fn enumerate_codewords(&self, cap: u64) -> Result<CodewordSet> {
        let card = self.cardinality();
        let q = self.ring.q();
        let size: u128 = if card.q_exponent > 127 {
            u128::MAX
        } else {
            (q as u128)
                .checked_pow(card.q_exponent as u32)
                .unwrap_or(u128::MAX)
        };
        if size > cap as u128 {
            return Err(Error::CapExceeded {
                what: "codeword enumeration",
                needed: size,
                cap,
            });
        }
        let size = size as u64;
        let slots = self.span_slots();
        let mut set = CodewordSet::with_capacity(&self.ring, self.n, size as usize);
        span_enumerate(&self.ring, self.n, &slots, |word| {
            set.insert(word);
        });
        assert_eq!(
            set.len() as u64,
            size,
            "codeword enumeration does not match the cardinality formula"
        );
        Ok(set)
    }

    /// Spanning slots: for entry `j` with valuation jump `k_j`, shifts
    /// `z^k f_j` for `k < n - t_j`, with coefficients running over all
    /// elements whose gamma-adic digits vanish at and above `k_j`.
    pub(crate) fn span_slots(&self) -> Vec<SpanSlot> {
        let std = self.standard_generators();
        let ring = &self.ring;
        let mut slots = Vec::new();
        let mut prev = ring.nu();
        for e in &std.entries {
            let k_j = prev - e.lead_val;
            prev = e.lead_val;
            let values = digit_bounded_codes(ring, k_j);
            let base = e.poly.coeffs();
            for shift in 0..self.n - e.degree {
                let mut products = Vec::with_capacity(values.len());
                for &v in &values {
                    let mut w = vec![0u64; self.n];
                    if v != 0 {
                        for (i, &c) in base.iter().enumerate() {
                            w[i + shift] = ring.mul_code(v, c);
                        }
                    }
                    products.push(w);
                }
                slots.push(SpanSlot { products });
            }
        }
        slots
    }

    /// Uniformly-ish random codeword (random digit-bounded coefficients on
    /// the spanning slots).
    pub fn random_codeword(&self, rng: &mut impl FnMut(usize) -> usize) -> Poly {
        let slots = self.span_slots();
        let mut word = vec![0u64; self.n];
        for s in &slots {
            let pick = rng(s.products.len());
            for (i, &c) in s.products[pick].iter().enumerate() {
                word[i] = self.ring.add_code(word[i], c);
            }
        }
        Poly::from_word(&self.ring, &word)
    }
}

/// All element codes whose gamma-adic digits at positions `>= k` vanish.
fn digit_bounded_codes(ring: &ChainRing, k: u32) -> Vec<u64> {
    let q = ring.q();
    let count = q.pow(k);
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u64; ring.nu() as usize];
    for idx in 0..count {
        let mut x = idx;
        for d in digits.iter_mut().take(k as usize) {
            *d = x % q;
            x /= q;
        }
        out.push(ring.from_digits_code(&digits));
    }
    out
}

pub(crate) struct SpanSlot {
    pub products: Vec<Vec<u64>>,
}

/// Enumerate every sum over the slots, invoking `f` with each dense word.
/// Visits exactly the product of the slot sizes (with multiplicity; dedup is
/// the caller's business).
pub(crate) fn span_enumerate(
    ring: &ChainRing,
    n: usize,
    slots: &[SpanSlot],
    mut f: impl FnMut(&[u64]),
) {
    let l = slots.len();
    if l == 0 {
        f(&vec![0u64; n]);
        return;
    }
    let mut idx = vec![0usize; l];
    // partial[i] = sum of slots[..=i] at the current indices
    let mut partial = vec![vec![0u64; n]; l];
    for i in 0..l {
        let (lo, hi) = partial.split_at_mut(i);
        if i == 0 {
            hi[0].copy_from_slice(&slots[0].products[0]);
        } else {
            for (k, c) in hi[0].iter_mut().enumerate() {
                *c = ring.add_code(lo[i - 1][k], slots[i].products[0][k]);
            }
        }
    }
    loop {
        f(&partial[l - 1]);
        // odometer advance
        let mut i = l;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < slots[i].products.len() {
                break;
            }
            idx[i] = 0;
        }
        for k in i..l {
            let (lo, hi) = partial.split_at_mut(k);
            let dst = &mut hi[0];
            let src = &slots[k].products[idx[k]];
            if k == 0 {
                dst.copy_from_slice(src);
            } else {
                let prev = &lo[k - 1];
                for (j, c) in dst.iter_mut().enumerate() {
                    *c = ring.add_code(prev[j], src[j]);
                }
            }
        }
    }
}

fn highest_nonzero(w: &[u64]) -> Option<usize> {
    w.iter().rposition(|&c| c != 0)
}

// ---- Howell triangulation ----------------------------------------------------

fn compute_standard_gens(code: &CyclicCode) -> StandardGenSet {
    let ring = &code.ring;
    let n = code.n;
    let nu = ring.nu();

    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; n];
    let mut work: Vec<Vec<u64>> = Vec::new();
    for g in &code.generators {
        let base = g.to_word(n);
        for k in 0..n {
            // cyclic shift by k
            let mut w = vec![0u64; n];
            for (i, &c) in base.iter().enumerate() {
                w[(i + k) % n] = c;
            }
            work.push(w);
        }
    }

    while let Some(mut w) = work.pop() {
        loop {
            let d = match highest_nonzero(&w) {
                None => break,
                Some(d) => d,
            };
            let c = w[d];
            let v = ring.val_code(c);
            if pivots[d].is_none() {
                normalize_row(ring, &mut w, d, v);
                if v > 0 {
                    work.push(scale_gamma_row(ring, &w, nu - v));
                }
                pivots[d] = Some(w);
                break;
            }
            let pv = pivots[d].as_mut().unwrap();
            let vd = ring.val_code(pv[d]);
            if v >= vd {
                // cancel the top of w against the pivot
                let lambda = ring.shift_down_code(c, vd);
                for i in 0..=d {
                    let prod = ring.mul_code(lambda, pv[i]);
                    w[i] = ring.sub_code(w[i], prod);
                }
                debug_assert_eq!(w[d], 0);
            } else {
                // w becomes the new pivot; the old one re-enters the queue
                normalize_row(ring, &mut w, d, v);
                let old = std::mem::replace(pv, w);
                if v > 0 {
                    work.push(scale_gamma_row(ring, pv, nu - v));
                }
                work.push(old);
                break;
            }
        }
    }

    // canonical tail reduction: clear digits at or above the pivot valuation
    // of each position, highest positions first
    for d in (0..n).rev() {
        let pv = match pivots[d].clone() {
            None => continue,
            Some(pv) => pv,
        };
        let vd = ring.val_code(pv[d]);
        for e in d + 1..n {
            let row = match &mut pivots[e] {
                None => continue,
                Some(r) => r,
            };
            let c = row[d];
            if c == 0 || ring.val_code(c) >= nu {
                continue;
            }
            // part of c with digits >= vd, divided exactly by gamma^vd
            let mut high = ring.digits_code(c);
            for hd in high.iter_mut().take(vd as usize) {
                *hd = 0;
            }
            let high_code = ring.from_digits_code(&high);
            if high_code == 0 {
                continue;
            }
            let lambda = ring.shift_down_code(high_code, vd);
            for i in 0..=d {
                let prod = ring.mul_code(lambda, pv[i]);
                row[i] = ring.sub_code(row[i], prod);
            }
        }
    }

    let howell_rows: Vec<Poly> = pivots
        .into_iter()
        .flatten()
        .map(|w| Poly::from_word(ring, &w))
        .collect();

    // staircase: first row of minimal degree, then strictly smaller valuations
    let mut entries: Vec<StdEntry> = Vec::new();
    for row in &howell_rows {
        let d = row.degree().unwrap();
        let v = ring.val_code(row.leading_code().unwrap());
        if entries.last().map_or(true, |e| v < e.lead_val) {
            debug_assert!(
                row.content_val() >= v,
                "standard generator has a coefficient below its leading valuation"
            );
            entries.push(StdEntry {
                poly: row.clone(),
                lead_val: v,
                degree: d,
            });
        }
    }
    StandardGenSet {
        entries,
        howell_rows,
    }
}

fn normalize_row(ring: &ChainRing, w: &mut [u64], d: usize, v: u32) {
    // divide out the unit part of the leading coefficient
    let unit = ring.shift_down_code(w[d], v);
    let inv = ring.inv_code(unit).expect("unit part must be invertible");
    if inv != 1 {
        for c in w.iter_mut() {
            *c = ring.mul_code(*c, inv);
        }
    }
    debug_assert_eq!(ring.shift_down_code(w[d], v), 1);
}

fn scale_gamma_row(ring: &ChainRing, w: &[u64], k: u32) -> Vec<u64> {
    w.iter().map(|&c| ring.shift_up_code(c, k)).collect()
}

// ---- codeword sets ------------------------------------------------------------

enum WordKeys {
    Packed {
        bits: u32,
        set: HashSet<u128>,
    },
    Wide(HashSet<Vec<u64>>),
}

/// A fully enumerated set of codewords with O(1) membership, plus the
/// minimum nonzero weight seen and a witness for it.
pub struct CodewordSet {
    ring: ChainRing,
    n: usize,
    keys: WordKeys,
    min_weight: Option<(usize, Vec<u64>)>,
}

impl CodewordSet {
    fn with_capacity(ring: &ChainRing, n: usize, cap: usize) -> CodewordSet {
        let bits = (64 - (ring.order() - 1).leading_zeros()).max(1);
        let keys = if (n as u32) * bits <= 128 {
            WordKeys::Packed {
                bits,
                set: HashSet::with_capacity(cap),
            }
        } else {
            WordKeys::Wide(HashSet::with_capacity(cap))
        };
        CodewordSet {
            ring: ring.clone(),
            n,
            keys,
            min_weight: None,
        }
    }

    fn pack(bits: u32, word: &[u64]) -> u128 {
        let mut k = 0u128;
        for &c in word.iter().rev() {
            k = (k << bits) | c as u128;
        }
        k
    }

    fn insert(&mut self, word: &[u64]) {
        debug_assert_eq!(word.len(), self.n);
        let weight = word.iter().filter(|&&c| c != 0).count();
        if weight > 0
            && self
                .min_weight
                .as_ref()
                .map_or(true, |(w, _)| weight < *w)
        {
            self.min_weight = Some((weight, word.to_vec()));
        }
        match &mut self.keys {
            WordKeys::Packed { bits, set } => {
                set.insert(Self::pack(*bits, word));
            }
            WordKeys::Wide(set) => {
                set.insert(word.to_vec());
            }
        }
    }

    pub fn len(&self) -> usize {
        match &self.keys {
            WordKeys::Packed { set, .. } => set.len(),
            WordKeys::Wide(set) => set.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains_word(&self, word: &[u64]) -> bool {
        match &self.keys {
            WordKeys::Packed { bits, set } => set.contains(&Self::pack(*bits, word)),
            WordKeys::Wide(set) => set.contains(word),
        }
    }

    /// Smallest nonzero Hamming weight with a witness word.
    pub fn min_nonzero_weight(&self) -> Option<(usize, Vec<u64>)> {
        self.min_weight.clone()
    }

    pub fn iter_words(&self) -> Box<dyn Iterator<Item = Vec<u64>> + '_> {
        match &self.keys {
            WordKeys::Packed { bits, set } => {
                let n = self.n;
                let bits = *bits;
                let mask = (1u128 << bits) - 1;
                Box::new(set.iter().map(move |&k| {
                    let mut w = Vec::with_capacity(n);
                    let mut k = k;
                    for _ in 0..n {
                        w.push((k & mask) as u64);
                        k >>= bits;
                    }
                    w
                }))
            }
            WordKeys::Wide(set) => Box::new(set.iter().cloned()),
        }
    }

    /// Is the set closed under coordinate reversal?
    pub fn is_reversal_closed(&self) -> bool {
        let mut rev = vec![0u64; self.n];
        for w in self.iter_words() {
            for (i, &c) in w.iter().enumerate() {
                rev[self.n - 1 - i] = c;
            }
            if !self.contains_word(&rev) {
                return false;
            }
        }
        true
    }

    /// Is the set closed under the cyclic shift?
    pub fn is_shift_closed(&self) -> bool {
        let mut sh = vec![0u64; self.n];
        for w in self.iter_words() {
            for (i, &c) in w.iter().enumerate() {
                sh[(i + 1) % self.n] = c;
            }
            if !self.contains_word(&sh) {
                return false;
            }
        }
        true
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn word_len(&self) -> usize {
        self.n
    }
}
