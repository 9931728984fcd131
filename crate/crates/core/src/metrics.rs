//! Hamming weight and distance, MDS testing, and the MDS classification for
//! length `p^s` codes over nilpotency-2 rings.
//!
//! The distance of a nonzero code equals the distance of its top torsion
//! code `<h_0>` over the residue field. That field distance is computed by
//! the repeated-root closed form when the torsion generator is a power of
//! `(z - 1)` and the length is `p^s`, and by exhaustive search otherwise
//! (bounded by the distance cap). A full-codeword brute-force distance is
//! kept as an independent oracle.
//!
//! The closed form for `<(z-1)^b>` of length `p^s` over any field of
//! characteristic `p`: `d = 1` for `b = 0`, and `d = (tau + 1) p^kappa`
//! when `p^s - p^{s-kappa} + (tau-1) p^{s-kappa-1} + 1 <= b <=
//! p^s - p^{s-kappa} + tau p^{s-kappa-1}` with `0 <= kappa <= s-1`,
//! `1 <= tau <= p-1`. It is validated against exhaustive search by the
//! acceptance suite before anything else may rely on it.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::codes::CyclicCode;
use crate::enumerate::CodeFamilyParams;
use crate::error::{Error, Result};
use crate::parse::prime_power;
use crate::poly::Poly;
use crate::ring::ChainRing;
use crate::Caps;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of nonzero coordinates.
pub fn hamming_weight(word: &[u64]) -> usize {
    word.iter().filter(|&&c| c != 0).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMethod {
    TorsionFormula,
    TorsionBrute,
    FullBrute,
}

impl DistanceMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistanceMethod::TorsionFormula => "torsion-formula",
            DistanceMethod::TorsionBrute => "torsion-brute",
            DistanceMethod::FullBrute => "full-brute",
        }
    }
}

/// Hamming distance with the method that produced it and a codeword of that
/// weight (always a member of the code).
#[derive(Clone, Debug)]
pub struct DistanceResult {
    pub d: u64,
    pub method: DistanceMethod,
    pub witness: Poly,
}

/// Minimum weight of `<(z-1)^b>` of length `p^s` over characteristic `p`;
/// `None` when `b >= p^s` (no nonzero codeword).
pub fn repeated_root_min_weight(p: u64, s: u32, b: u64) -> Option<u64> {
    let n = p.checked_pow(s)?;
    if b >= n {
        return None;
    }
    if b == 0 {
        return Some(1);
    }
    for kappa in 0..s {
        let block = p.pow(s - kappa); // p^{s-kappa}
        let step = block / p; // p^{s-kappa-1}
        let base = n - block;
        for tau in 1..p {
            let lo = base + (tau - 1) * step + 1;
            let hi = base + tau * step;
            if (lo..=hi).contains(&b) {
                return Some((tau + 1) * p.pow(kappa));
            }
        }
    }
    None
}

/// A minimum-weight witness for `<(z-1)^b>`: `(z-1)^beta` with `beta` the
/// top of the interval `b` falls in has exactly the formula weight.
fn repeated_root_witness(field: &ChainRing, s: u32, b: u64) -> Poly {
    let p = field.p();
    let n = p.pow(s);
    if b == 0 {
        return Poly::one(field);
    }
    for kappa in 0..s {
        let block = p.pow(s - kappa);
        let step = block / p;
        let base = n - block;
        for tau in 1..p {
            let lo = base + (tau - 1) * step + 1;
            let hi = base + tau * step;
            if (lo..=hi).contains(&b) {
                return Poly::z_minus_one(field).pow(hi);
            }
        }
    }
    unreachable!("b within 1..p^s always falls in an interval")
}

/// Exhaustive minimum nonzero weight of the field code `<h>` in
/// `F[z]/(z^n - 1)`: scans all `q^{n - deg h}` multiples. Sequential.
pub fn torsion_min_weight_seq(h: &Poly, n: usize, cap: u64) -> Result<(u64, Poly)> {
    let field = h.ring().clone();
    let (slots, size) = multiple_slots(h, n, cap)?;
    let _ = size;
    let mut best: Option<(usize, Vec<u64>)> = None;
    crate::codes::span_enumerate(&field, n, &slots, |word| {
        let w = hamming_weight(word);
        if w > 0 && best.as_ref().map_or(true, |(bw, _)| w < *bw) {
            best = Some((w, word.to_vec()));
        }
    });
    let (w, word) = best.ok_or(Error::ZeroCode)?;
    Ok((w as u64, Poly::from_word(&field, &word)))
}

/// Parallel version: splits the range of the first coefficient and shares
/// the best weight through a monotonic atomic minimum.
#[cfg(feature = "parallel")]
pub fn torsion_min_weight(h: &Poly, n: usize, cap: u64) -> Result<(u64, Poly)> {
    let field = h.ring().clone();
    let (slots, size) = multiple_slots(h, n, cap)?;
    if size < (1 << 14) || slots.len() < 2 {
        return torsion_min_weight_seq(h, n, cap);
    }
    let (head, rest) = slots.split_first().unwrap();
    let global_best = AtomicU64::new(u64::MAX);
    let per_value: Vec<Option<(usize, Vec<u64>)>> = head
        .products
        .par_iter()
        .map(|offset| {
            let mut best: Option<(usize, Vec<u64>)> = None;
            let mut buf = vec![0u64; n];
            crate::codes::span_enumerate(&field, n, rest, |word| {
                for (i, c) in buf.iter_mut().enumerate() {
                    *c = field.add_code(offset[i], word[i]);
                }
                let w = hamming_weight(&buf);
                if w > 0
                    && (w as u64) < global_best.load(Ordering::Relaxed)
                    && best.as_ref().map_or(true, |(bw, _)| w < *bw)
                {
                    global_best.fetch_min(w as u64, Ordering::Relaxed);
                    best = Some((w, buf.clone()));
                }
            });
            best
        })
        .collect();
    let best = per_value
        .into_iter()
        .flatten()
        .min_by_key(|(w, _)| *w)
        .ok_or(Error::ZeroCode)?;
    Ok((best.0 as u64, Poly::from_word(&field, &best.1)))
}

#[cfg(not(feature = "parallel"))]
pub fn torsion_min_weight(h: &Poly, n: usize, cap: u64) -> Result<(u64, Poly)> {
    torsion_min_weight_seq(h, n, cap)
}

/// Spanning slots for the multiples of a monic field polynomial modulo
/// `z^n - 1`: shifts `z^k h` for `k < n - deg h`, coefficients over the
/// whole field.
fn multiple_slots(
    h: &Poly,
    n: usize,
    cap: u64,
) -> Result<(Vec<crate::codes::SpanSlot>, u128)> {
    let field = h.ring();
    assert!(field.is_field(), "torsion search expects a field polynomial");
    let t = h.degree().ok_or(Error::ZeroCode)?;
    let q = field.order();
    let size = (q as u128)
        .checked_pow((n - t) as u32)
        .unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            what: "torsion distance search",
            needed: size,
            cap,
        });
    }
    let base = h.coeffs();
    let mut slots = Vec::with_capacity(n - t);
    for shift in 0..n - t {
        let mut products = Vec::with_capacity(q as usize);
        for v in 0..q {
            let mut w = vec![0u64; n];
            if v != 0 {
                for (i, &c) in base.iter().enumerate() {
                    w[i + shift] = field.mul_code(v, c);
                }
            }
            products.push(w);
        }
        slots.push(crate::codes::SpanSlot { products });
    }
    Ok((slots, size))
}

/// Hamming distance of a nonzero code via its top torsion code: the closed
/// form when it applies, exhaustive search otherwise. The witness is always
/// a member of the full code (`gamma^{nu-1}` times the lifted field
/// witness).
pub fn hamming_distance(code: &CyclicCode, caps: &Caps) -> Result<DistanceResult> {
    let std = code.standard_generators();
    let first = std.entries.first().ok_or(Error::ZeroCode)?;
    let ring = code.ring();
    let field = ring.residue_field();
    let n = code.len();
    let h = first.monic_part().residue();
    debug_assert!(h.is_monic());

    let (d, field_witness, method) = match formula_applies(&h, n) {
        Some((s, b)) => {
            let d = repeated_root_min_weight(field.p(), s, b).ok_or(Error::ZeroCode)?;
            let witness = repeated_root_witness(&field, s, b);
            debug_assert_eq!(witness.weight() as u64, d);
            (d, witness, DistanceMethod::TorsionFormula)
        }
        None => {
            let (d, witness) = torsion_min_weight(&h, n, caps.distance_search)?;
            (d, witness, DistanceMethod::TorsionBrute)
        }
    };
    // gamma^{nu-1} * lift(witness) is a codeword of the same weight
    let witness = field_witness
        .lift_into(ring)
        .scalar_mul_gamma_pow(ring.nu() - 1)
        .reduce_mod_xn_minus_1(n);
    debug_assert_eq!(witness.weight() as u64, d);
    debug_assert!(code.contains(&witness));
    Ok(DistanceResult {
        d,
        method,
        witness,
    })
}

/// Does the closed form apply: length `p^s` with `p` the field
/// characteristic, torsion generator a power of `(z - 1)`?
fn formula_applies(h: &Poly, n: usize) -> Option<(u32, u64)> {
    let field = h.ring();
    let (p, s) = prime_power(n as u64)?;
    if p != field.p() {
        return None;
    }
    let b = h.degree()? as u64;
    if *h == Poly::z_minus_one(field).pow(b) {
        Some((s, b))
    } else {
        None
    }
}

/// Independent oracle: minimum nonzero weight over the fully enumerated
/// codeword set.
pub fn hamming_distance_bruteforce(code: &CyclicCode, cap: u64) -> Result<DistanceResult> {
    let set = code.enumerate_codewords(cap)?;
    let (w, word) = set.min_nonzero_weight().ok_or(Error::ZeroCode)?;
    Ok(DistanceResult {
        d: w as u64,
        method: DistanceMethod::FullBrute,
        witness: Poly::from_word(code.ring(), &word),
    })
}

/// MDS with respect to the Hamming metric: `|C| = |R|^{n - d + 1}`. Both
/// sides are powers of `q`, so the comparison is exact exponent arithmetic.
pub fn is_mds(code: &CyclicCode, caps: &Caps) -> Result<bool> {
    let d = hamming_distance(code, caps)?.d;
    let card = code.cardinality();
    let nu = code.ring().nu() as u64;
    let n = code.len() as u64;
    Ok(card.q_exponent == nu * (n - d + 1))
}

/// The classified MDS families for length `p^s` over a nilpotency-2 ring:
/// for `s = 1` the single-generator family with `max(0, 2a-p) <= t < a`;
/// for `s > 1` exactly `<z - 1 + gamma g0>` and
/// `<(z-1)^{p^s-1} + gamma (z-1)^{p^s-2} g0>` as `g0` runs over the residue
/// field. Every emitted code is principally generated by a monic polynomial.
pub fn mds_classification_ps_nu2(
    ring: &ChainRing,
    s: u32,
) -> Result<Vec<(String, CyclicCode)>> {
    if ring.nu() != 2 {
        return Err(Error::NotApplicable(format!(
            "ring {ring} does not have nilpotency index 2"
        )));
    }
    if ring.char_exponent() != 1 {
        // Over Z/p^2 the carry identity (z-1)^{p^s} = -p z^{p^{s-1}}
        // (z-1)^{p^{s-1}} lowers the torsion degree of the large-`a`
        // principal codes, and the classified families stop being MDS
        // (checked by brute force); the classification is a
        // characteristic-p statement.
        return Err(Error::NotApplicable(format!(
            "MDS classification requires characteristic p; {ring} has char p^{}",
            ring.char_exponent()
        )));
    }
    if s == 0 {
        return Err(Error::InvalidParams("s must be >= 1".into()));
    }
    let p = ring.p();
    let n = p
        .checked_pow(s)
        .filter(|&n| n <= 1 << 16)
        .ok_or_else(|| Error::InvalidParams("length p^s too large".into()))? as usize;
    let field = ring.residue_field();
    let zm1 = Poly::z_minus_one(ring);
    let gamma = Poly::constant(&ring.gamma());
    let mut out: Vec<(String, CyclicCode)> = Vec::new();
    let mut keys = std::collections::HashSet::new();
    let mut push = |desc: String, code: CyclicCode, out: &mut Vec<(String, CyclicCode)>| {
        if keys.insert(code.canonical_key()) {
            out.push((desc, code));
        }
    };
    if s == 1 {
        for a in 1..p {
            // g = 0
            let gen = zm1.pow(a);
            let code = CyclicCode::new(ring, n, vec![gen]).unwrap();
            push(format!("<(z-1)^{a}>"), code, &mut out);
            let t_lo = (2 * a).saturating_sub(p);
            for t in t_lo..a {
                for g in field_unit_polys(&field, a - t) {
                    let gen =
                        &zm1.pow(a) + &(&gamma * &(&zm1.pow(t) * &g.lift_into(ring)));
                    let code = CyclicCode::new(ring, n, vec![gen]).unwrap();
                    push(
                        format!("<(z-1)^{a} + g*(z-1)^{t}*({g})>"),
                        code,
                        &mut out,
                    );
                }
            }
        }
    } else {
        let top = n as u64 - 1;
        for g0 in 0..field.order() {
            let g0p = Poly::from_codes(&field, vec![g0]);
            let gen1 = &zm1 + &(&gamma * &g0p.lift_into(ring));
            push(
                format!("<z-1+g*{}>", field.render_code(g0)),
                CyclicCode::new(ring, n, vec![gen1]).unwrap(),
                &mut out,
            );
            let gen2 = &zm1.pow(top)
                + &(&gamma * &(&zm1.pow(top - 1) * &g0p.lift_into(ring)));
            push(
                format!("<(z-1)^{top}+g*(z-1)^{}*{}>", top - 1, field.render_code(g0)),
                CyclicCode::new(ring, n, vec![gen2]).unwrap(),
                &mut out,
            );
        }
    }
    Ok(out)
}

/// Nonzero field polynomials with `deg < max_len` and `g(1) != 0`.
fn field_unit_polys(field: &ChainRing, max_len: u64) -> Vec<Poly> {
    let q = field.order();
    let count = q.pow(max_len as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut codes = Vec::with_capacity(max_len as usize);
        let mut k = idx;
        let mut sum = 0u64;
        for _ in 0..max_len {
            let c = k % q;
            k /= q;
            codes.push(c);
            sum = field.add_code(sum, c);
        }
        if sum != 0 {
            out.push(Poly::from_codes(field, codes));
        }
    }
    out
}

/// Family-parameter view of the classification sweep: exhaustively test
/// every family code for MDS (used by the acceptance suite to compare
/// against [`mds_classification_ps_nu2`]).
pub fn mds_codes_by_exhaustion(
    ring: &ChainRing,
    s: u32,
    caps: &Caps,
) -> Result<Vec<(CodeFamilyParams, CyclicCode)>> {
    let tuples = crate::enumerate::enumerate_codes_ps_nu2(ring, s)?;
    let check = |pair: &(CodeFamilyParams, CyclicCode)| -> Option<(CodeFamilyParams, CyclicCode)> {
        let (params, code) = pair;
        if code.is_zero_code() || code.is_unit_code() {
            return None;
        }
        match is_mds(code, caps) {
            Ok(true) => Some((params.clone(), code.clone())),
            _ => None,
        }
    };
    #[cfg(feature = "parallel")]
    let out: Vec<_> = tuples.par_iter().filter_map(check).collect();
    #[cfg(not(feature = "parallel"))]
    let out: Vec<_> = tuples.iter().filter_map(check).collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::CyclicCode;
    use crate::parse::{parse_poly_expr, parse_ring_spec};

    fn code(ring_spec: &str, n: usize, gens: &[&str]) -> CyclicCode {
        let ring = parse_ring_spec(ring_spec, None).unwrap();
        let gens: Vec<Poly> = gens
            .iter()
            .map(|g| parse_poly_expr(&ring, g).unwrap())
            .collect();
        CyclicCode::new(&ring, n, gens).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(hamming_weight(&[0, 0, 0]), 0);
        // z^5 - 1 as a length-25 word has two nonzero coordinates
        let r = parse_ring_spec("Z/25", None).unwrap();
        let p = parse_poly_expr(&r, "z^5 - 1").unwrap();
        assert_eq!(hamming_weight(&p.to_word(25)), 2);
        // (z-1)^255 over F_16 has all 256 binomials odd
        let f16 = parse_ring_spec("F16[u]/u^1", None).unwrap();
        let p = Poly::z_minus_one(&f16).pow(255);
        assert_eq!(p.weight(), 256);
    }

    #[test]
    fn formula_pinned_values() {
        assert_eq!(repeated_root_min_weight(5, 2, 2), Some(2));
        assert_eq!(repeated_root_min_weight(3, 2, 4), Some(3));
        assert_eq!(repeated_root_min_weight(2, 8, 255), Some(256));
        assert_eq!(repeated_root_min_weight(3, 2, 0), Some(1));
        assert_eq!(repeated_root_min_weight(3, 2, 9), None);
    }

    #[test]
    fn formula_intervals_partition_the_range() {
        for (p, s) in [(2u64, 3u32), (3, 2), (5, 1), (2, 4)] {
            let n = p.pow(s);
            let mut prev = 1;
            for b in 1..n {
                let d = repeated_root_min_weight(p, s, b).unwrap();
                assert!(d >= prev, "distance not monotone at b={b}, p={p}, s={s}");
                prev = d;
            }
            assert_eq!(repeated_root_min_weight(p, s, n - 1), Some(n));
        }
    }

    #[test]
    fn formula_matches_exhaustive_search_smalls() {
        // all b at n in {2, 3, 4} over matching prime fields
        for (q_spec, p, s) in [("F2[u]/u^1", 2u64, 1u32), ("F2[u]/u^1", 2, 2), ("F3[u]/u^1", 3, 1)] {
            let field = parse_ring_spec(q_spec, None).unwrap();
            let n = p.pow(s) as usize;
            for b in 0..n as u64 {
                let h = Poly::z_minus_one(&field).pow(b);
                let (d, witness) = torsion_min_weight_seq(&h, n, 1 << 22).unwrap();
                assert_eq!(
                    Some(d),
                    repeated_root_min_weight(p, s, b),
                    "formula mismatch at q={q_spec} n={n} b={b}"
                );
                assert_eq!(witness.weight() as u64, d);
            }
        }
    }

    #[test]
    fn distance_examples() {
        let caps = Caps::default();
        let c = code("Z/25", 25, &["(z-1)^3 + g*3*(z-1)", "g*(z-1)^2"]);
        let d = hamming_distance(&c, &caps).unwrap();
        assert_eq!(d.d, 2);
        assert_eq!(d.method, DistanceMethod::TorsionFormula);
        assert!(c.contains(&d.witness));
        assert_eq!(d.witness.weight() as u64, d.d);

        let c = code("Z/9", 9, &["(z-1)^7 + g*(z-1)*(1+2*(z-1))", "g*(z-1)^4"]);
        assert_eq!(hamming_distance(&c, &caps).unwrap().d, 3);

        let c = code("F16[u]/u^2", 256, &["(z-1)^255 + 3*g*(z-1)^254"]);
        let d = hamming_distance(&c, &caps).unwrap();
        assert_eq!(d.d, 256);
        assert!(c.contains(&d.witness));

        // zero code is rejected
        let z = code("Z/9", 4, &["0"]);
        assert!(matches!(hamming_distance(&z, &caps), Err(Error::ZeroCode)));

        // the whole space has distance 1
        let u = code("Z/9", 4, &["1"]);
        assert_eq!(hamming_distance(&u, &caps).unwrap().d, 1);
    }

    #[test]
    fn parallel_and_sequential_search_agree() {
        let field = parse_ring_spec("F4[u]/u^1", None).unwrap();
        // a generator that is not a power of (z-1): h = (z-1)(z^2+z+ zeta)?
        // use h = z^2 + z + 2 (code 2 is a field element), any monic h works
        let h = parse_poly_expr(&field, "z^2 + z + 2").unwrap();
        let seq = torsion_min_weight_seq(&h, 8, 1 << 22).unwrap();
        let par = torsion_min_weight(&h, 8, 1 << 22).unwrap();
        assert_eq!(seq.0, par.0);
        assert_eq!(seq.1.weight() as u64, seq.0);
        assert_eq!(par.1.weight() as u64, par.0);
    }

    #[test]
    fn distance_search_cap() {
        let field = parse_ring_spec("F4[u]/u^1", None).unwrap();
        let h = Poly::z_minus_one(&field);
        assert!(matches!(
            torsion_min_weight_seq(&h, 16, 1 << 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn full_brute_distance_oracle_agrees() {
        let caps = Caps::default();
        for (spec, n, gens) in [
            ("F3[u]/u^2", 3usize, vec!["(z-1)^2 + g*2", "g*(z-1)"]),
            ("F2[u]/u^2", 8, vec!["(z-1)^4 + g*z", "g*(z-1)^2"]),
            ("F3[u]/u^3", 3, vec!["g*(z-1) + g^2"]),
            ("Z/9", 9, vec!["(z-1)^7 + g*(z-1)*(1+2*(z-1))", "g*(z-1)^4"]),
        ] {
            let c = code(spec, n, &gens);
            let via_torsion = hamming_distance(&c, &caps).unwrap();
            let brute = hamming_distance_bruteforce(&c, 1 << 20).unwrap();
            assert_eq!(via_torsion.d, brute.d, "{spec} {gens:?}");
            assert!(c.contains(&brute.witness));
        }
    }

    #[test]
    fn mds_examples() {
        let caps = Caps::default();
        let c = code("F16[u]/u^2", 256, &["(z-1)^255 + 3*g*(z-1)^254"]);
        assert!(is_mds(&c, &caps).unwrap());
        let c = code("F4[u]/u^2", 16, &["z-1+g"]);
        assert!(is_mds(&c, &caps).unwrap());
        // 27 != 9^(3-2+1): the length-3 example is not MDS
        let c = code("F3[u]/u^2", 3, &["(z-1)^2 + g*2", "g*(z-1)"]);
        assert_eq!(c.cardinality().p_exponent, 3);
        assert!(!is_mds(&c, &caps).unwrap());
    }

    #[test]
    fn classification_requires_characteristic_p() {
        // over Z/9 the pair family fails MDS: gamma (z-1)^3 lies in
        // <(z-1)^8> via (z-1)^9 = -3 z^3 (z-1)^3, so T_1 = 3 and d = 2
        let z9 = parse_ring_spec("Z/9", None).unwrap();
        assert!(matches!(
            mds_classification_ps_nu2(&z9, 2),
            Err(Error::NotApplicable(_))
        ));
        let c = code("Z/9", 9, &["(z-1)^8"]);
        let profile = c.torsion_profile();
        assert_eq!((profile.degree(0), profile.degree(1)), (8, 3));
        assert!(!is_mds(&c, &Caps::default()).unwrap());
    }

    #[test]
    fn classification_emits_mds_codes_only() {
        let caps = Caps::default();
        for (spec, s) in [("F2[u]/u^2", 2u32), ("F3[u]/u^2", 1), ("F4[u]/u^2", 2)] {
            let ring = parse_ring_spec(spec, None).unwrap();
            let classified = mds_classification_ps_nu2(&ring, s).unwrap();
            assert!(!classified.is_empty());
            for (desc, code) in &classified {
                assert!(
                    is_mds(code, &caps).unwrap(),
                    "{desc} over {spec} is not MDS"
                );
                // principally generated by a monic polynomial
                let std = code.standard_generators();
                assert_eq!(std.entries.len(), 1, "{desc}");
                assert_eq!(std.entries[0].lead_val, 0, "{desc}");
            }
        }
    }

    #[test]
    fn classification_instances_from_known_codes() {
        // <z-1+g> over F4 at n=16 (s=4) appears in the s>1 classification
        let ring = parse_ring_spec("F4[u]/u^2", None).unwrap();
        let classified = mds_classification_ps_nu2(&ring, 4).unwrap();
        let target = code("F4[u]/u^2", 16, &["z-1+g"]);
        assert!(classified.iter().any(|(_, c)| c.same_ideal(&target)));

        // <(z-1)^255 + 3 g (z-1)^254> over F16 at n=256
        let ring16 = parse_ring_spec("F16[u]/u^2", None).unwrap();
        let classified = mds_classification_ps_nu2(&ring16, 8).unwrap();
        let target = code("F16[u]/u^2", 256, &["(z-1)^255 + 3*g*(z-1)^254"]);
        assert!(classified.iter().any(|(_, c)| c.same_ideal(&target)));

        // p=3, s=1: family members with a in {1, 2} and max(0, 2a-3) <= t < a
        let ring3 = parse_ring_spec("F3[u]/u^2", None).unwrap();
        let classified = mds_classification_ps_nu2(&ring3, 1).unwrap();
        // a=1: t=0, g in {0} or units of degree 0 (g(1) != 0): g in {1, 2}
        // a=2: t=1, g in {1, 2}; plus g=0 principal codes
        assert_eq!(classified.len(), 2 + 2 + 2);
    }
}
