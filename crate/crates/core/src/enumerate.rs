//! Systematic generation of code families and brute-force ideal enumeration.
//!
//! For a nilpotency-2 ring and length `p^s`, every nonzero cyclic code is
//! either `<gamma (z-1)^b>` or `<(z-1)^a + gamma (z-1)^t g, gamma (z-1)^b>`
//! with `0 <= b <= a <= p^s - 1` and `g` over the residue field, zero or a
//! unit modulo `z^{p^s} - 1` (equivalently `g(1) != 0`) with
//! `deg g < b - t` and `0 <= t < b`. `enumerate_codes_ps_nu2` walks that
//! parameterization exhaustively; `enumerate_all_ideals_bruteforce` closes
//! the set of principal ideals under pairwise sums and is the oracle the
//! parameterization is checked against.

use std::collections::HashMap;
use std::fmt;

use crate::codes::CyclicCode;
use crate::error::{Error, Result};
use crate::parse::prime_power;
use crate::poly::Poly;
use crate::reversibility;
use crate::ring::ChainRing;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Parameters of the two length-`p^s` code families over a nilpotency-2
/// ring. `g` lives over the residue field.
#[derive(Clone, Debug)]
pub enum CodeFamilyParams {
    GammaOnly { b: u64 },
    Full { a: u64, b: u64, t: u64, g: Poly },
}

impl fmt::Display for CodeFamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeFamilyParams::GammaOnly { b } => write!(f, "<g*(z-1)^{b}>"),
            CodeFamilyParams::Full { a, b, t, g } => {
                if g.is_zero() {
                    write!(f, "<(z-1)^{a}, g*(z-1)^{b}>")
                } else {
                    write!(f, "<(z-1)^{a}+g*(z-1)^{t}*({g}), g*(z-1)^{b}>")
                }
            }
        }
    }
}

impl CodeFamilyParams {
    /// Range checks against the family definition.
    pub fn validate(&self, ring: &ChainRing, n: usize) -> Result<()> {
        if ring.nu() != 2 {
            return Err(Error::NotApplicable(format!(
                "ring {ring} does not have nilpotency index 2"
            )));
        }
        let max = n as u64 - 1;
        match self {
            CodeFamilyParams::GammaOnly { b } => {
                if *b > max {
                    return Err(Error::InvalidParams(format!("b={b} above {max}")));
                }
            }
            CodeFamilyParams::Full { a, b, t, g } => {
                if *b > *a || *a > max {
                    return Err(Error::InvalidParams(format!(
                        "need 0 <= b <= a <= {max}, got a={a}, b={b}"
                    )));
                }
                if !g.is_zero() {
                    if g.ring() != &ring.residue_field() {
                        return Err(Error::RingMismatch(
                            "g must live over the residue field".into(),
                        ));
                    }
                    if *t >= *b {
                        return Err(Error::InvalidParams(format!(
                            "need t < b when g != 0, got t={t}, b={b}"
                        )));
                    }
                    if g.degree().unwrap() as u64 >= *b - *t {
                        return Err(Error::InvalidParams(format!(
                            "need deg g < b - t = {}",
                            b - t
                        )));
                    }
                    let one = g.ring().one();
                    if g.eval(&one).is_zero() {
                        return Err(Error::InvalidParams(
                            "g must be zero or a unit modulo z^n - 1 (g(1) != 0)".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Build the code this tuple denotes.
    pub fn build(&self, ring: &ChainRing, n: usize) -> Result<CyclicCode> {
        self.validate(ring, n)?;
        let zm1 = Poly::z_minus_one(ring);
        let gamma = Poly::constant(&ring.gamma());
        match self {
            CodeFamilyParams::GammaOnly { b } => {
                let gen = &gamma * &zm1.pow(*b);
                CyclicCode::new(ring, n, vec![gen])
            }
            CodeFamilyParams::Full { a, b, t, g } => {
                let mut first = zm1.pow(*a);
                if !g.is_zero() {
                    first = &first + &(&gamma * &(&zm1.pow(*t) * &g.lift_into(ring)));
                }
                let second = &gamma * &zm1.pow(*b);
                CyclicCode::new(ring, n, vec![first, second])
            }
        }
    }
}

/// Every polynomial over `field` with degree < `max_len` coefficients and
/// `g(1) != 0` (the family's unit criterion), plus optionally zero.
fn unit_g_polys(field: &ChainRing, max_len: u64) -> Vec<Poly> {
    let q = field.order();
    let mut out = Vec::new();
    let count = q.pow(max_len as u32);
    'outer: for idx in 0..count {
        let mut codes = Vec::with_capacity(max_len as usize);
        let mut k = idx;
        let mut sum = 0u64;
        for _ in 0..max_len {
            let c = k % q;
            k /= q;
            codes.push(c);
            sum = field.add_code(sum, c);
        }
        if sum == 0 {
            continue 'outer; // g(1) == 0, not a unit
        }
        out.push(Poly::from_codes(field, codes));
    }
    out
}

/// Enumerate every admissible family tuple for length `p^s` over `ring`,
/// paired with the code it generates. Emits each distinct nonzero code
/// exactly once (distinctness is checked by the acceptance suite against the
/// ideal census).
pub fn enumerate_codes_ps_nu2(
    ring: &ChainRing,
    s: u32,
) -> Result<Vec<(CodeFamilyParams, CyclicCode)>> {
    if ring.nu() != 2 {
        return Err(Error::NotApplicable(format!(
            "ring {ring} does not have nilpotency index 2"
        )));
    }
    if s == 0 {
        return Err(Error::InvalidParams("s must be >= 1".into()));
    }
    let n = ring
        .p()
        .checked_pow(s)
        .filter(|&n| n <= 1 << 16)
        .ok_or_else(|| Error::InvalidParams("length p^s too large".into()))? as usize;
    let field = ring.residue_field();
    let max = n as u64 - 1;
    // the tuple count per (a, b) pair is q^b; refuse absurd requests upfront
    let q = field.order() as u128;
    let mut count: u128 = n as u128;
    for a in 0..=max {
        for b in 0..=a {
            count = count.saturating_add(q.saturating_pow(b as u32));
        }
    }
    const MAX_TUPLES: u128 = 1 << 24;
    if count > MAX_TUPLES {
        return Err(Error::CapExceeded {
            what: "family enumeration",
            needed: count,
            cap: MAX_TUPLES as u64,
        });
    }
    let mut out = Vec::new();
    for b in 0..=max {
        let params = CodeFamilyParams::GammaOnly { b };
        let code = params.build(ring, n)?;
        out.push((params, code));
    }
    // A tuple is kept only when its declared `b` is the true first torsional
    // degree. The raw ranges admit duplicate presentations of one ideal:
    // over F3+gamma F3 at n = 3, both (a=2, b=2, t=0, g=1) and
    // (a=2, b=1, t=0, g=1) denote <(z-1)^2 + gamma>, because
    // (z-1) * ((z-1)^2 + gamma) = gamma (z-1). Filtering on the computed
    // profile keeps exactly one presentation per ideal.
    for a in 0..=max {
        for b in 0..=a {
            let params = CodeFamilyParams::Full {
                a,
                b,
                t: 0,
                g: Poly::zero(&field),
            };
            let code = params.build(ring, n)?;
            if code.torsion_profile().degree(1) as u64 == b {
                out.push((params, code));
            }
            for t in 0..b {
                for g in unit_g_polys(&field, b - t) {
                    let params = CodeFamilyParams::Full { a, b, t, g };
                    let code = params.build(ring, n)?;
                    if code.torsion_profile().degree(1) as u64 == b {
                        out.push((params, code));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Recover the family tuple of a code from its standard generating set, when
/// the code lies in the length-`p^s`, nilpotency-2 family.
pub fn extract_family_params(code: &CyclicCode) -> Option<CodeFamilyParams> {
    let ring = code.ring();
    if ring.nu() != 2 {
        return None;
    }
    let (p, _s) = prime_power(code.len() as u64)?;
    if p != ring.p() {
        return None;
    }
    let profile = code.torsion_profile();
    let t0 = profile.degree(0);
    let t1 = profile.degree(1);
    let n = code.len();
    if t0 == n {
        // no monic part: the gamma-only family, provided Tor_1 = <(z-1)^b>
        if t1 == n {
            return None; // zero code is outside the family
        }
        let b = t1 as u64;
        let rf = ring.residue_field();
        let want = Poly::z_minus_one(&rf).pow(b);
        if profile.levels[1].generator == want {
            return Some(CodeFamilyParams::GammaOnly { b });
        }
        return None;
    }
    let a = t0 as u64;
    let b = t1 as u64;
    let rf = ring.residue_field();
    if profile.levels[1].generator != Poly::z_minus_one(&rf).pow(b) {
        return None;
    }
    let std = code.standard_generators();
    let monic = std.entries.iter().find(|e| e.lead_val == 0)?;
    if profile.levels[0].generator != Poly::z_minus_one(&rf).pow(a) {
        return None;
    }
    // gamma part of the monic generator, reduced modulo (z-1)^b, factored as
    // (z-1)^t * g
    let diff = &monic.poly - &Poly::z_minus_one(ring).pow(a);
    if diff.is_zero() {
        return Some(CodeFamilyParams::Full {
            a,
            b,
            t: 0,
            g: Poly::zero(&rf),
        });
    }
    if diff.content_val() < 1 {
        return None;
    }
    let gamma_part = diff.shift_down_gamma(1).residue();
    let zm1 = Poly::z_minus_one(&rf);
    let (_, r) = gamma_part.divmod(&zm1.pow(b)).ok()?;
    if r.is_zero() {
        return Some(CodeFamilyParams::Full {
            a,
            b,
            t: 0,
            g: Poly::zero(&rf),
        });
    }
    // strip the largest (z-1)^t factor
    let mut t = 0u64;
    let mut g = r;
    loop {
        let (quo, rem) = g.divmod(&zm1).ok()?;
        if rem.is_zero() && !quo.is_zero() {
            t += 1;
            g = quo;
        } else {
            break;
        }
    }
    let params = CodeFamilyParams::Full { a, b, t, g };
    params.validate(ring, n).ok()?;
    Some(params)
}

/// The complete ideal lattice of `R[z]/(z^n - 1)`, by closing the set of
/// principal ideals under pairwise ideal sums. Deduplication is by the
/// canonical triangulated basis. Single-threaded by construction.
pub struct IdealCensus {
    pub ring: ChainRing,
    pub n: usize,
    /// All ideals, including the zero and unit ideals, sorted by
    /// (cardinality exponent, canonical key).
    pub ideals: Vec<CyclicCode>,
}

impl IdealCensus {
    pub fn total(&self) -> usize {
        self.ideals.len()
    }
    /// All ideals except the zero ideal.
    pub fn nonzero_count(&self) -> usize {
        self.ideals.iter().filter(|c| !c.is_zero_code()).count()
    }
    /// All ideals except the zero ideal and the whole space.
    pub fn proper_nonzero_count(&self) -> usize {
        self.ideals
            .iter()
            .filter(|c| !c.is_zero_code() && !c.is_unit_code())
            .count()
    }
}

pub fn enumerate_all_ideals_bruteforce(
    ring: &ChainRing,
    n: usize,
    cap: u64,
) -> Result<IdealCensus> {
    let ambient = (ring.order() as u128).checked_pow(n as u32);
    match ambient {
        Some(a) if a <= cap as u128 => {}
        _ => {
            return Err(Error::CapExceeded {
                what: "ideal lattice enumeration",
                needed: ambient.unwrap_or(u128::MAX),
                cap,
            })
        }
    }
    let order = ring.order();
    let total = order.pow(n as u32);
    let mut seen: HashMap<Vec<u64>, CyclicCode> = HashMap::new();
    // principal ideals
    for idx in 0..total {
        let mut codes = Vec::with_capacity(n);
        let mut k = idx;
        for _ in 0..n {
            codes.push(k % order);
            k /= order;
        }
        let code = CyclicCode::new(ring, n, vec![Poly::from_codes(ring, codes)])?;
        seen.entry(code.canonical_key()).or_insert(code);
    }
    // close under pairwise sums
    loop {
        let current: Vec<CyclicCode> = seen.values().cloned().collect();
        let mut added = false;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let mut gens = Vec::new();
                gens.extend(
                    current[i]
                        .standard_generators()
                        .entries
                        .iter()
                        .map(|e| e.poly.clone()),
                );
                gens.extend(
                    current[j]
                        .standard_generators()
                        .entries
                        .iter()
                        .map(|e| e.poly.clone()),
                );
                let sum = CyclicCode::new(ring, n, gens)?;
                let key = sum.canonical_key();
                if !seen.contains_key(&key) {
                    seen.insert(key, sum);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    let mut ideals: Vec<CyclicCode> = seen.into_values().collect();
    ideals.sort_by_key(|c| (c.cardinality().q_exponent, c.canonical_key()));
    Ok(IdealCensus {
        ring: ring.clone(),
        n,
        ideals,
    })
}

/// A single finding of the odd-characteristic falsification sweep: a
/// reversible single-generator code that should not exist.
#[derive(Clone, Debug)]
pub struct SweepFinding {
    pub ring: String,
    pub n: usize,
    pub description: String,
}

#[derive(Clone, Debug, Default)]
pub struct CharTwoNecessityReport {
    pub codes_checked: usize,
    /// Reversible codes found under the hypotheses; any entry is fatal.
    pub findings: Vec<SweepFinding>,
}

/// Sweep every single-generator code `<(z-1)^a + gamma (z-1)^t g>` with
/// `deg g* = deg g` (nonzero constant term) over odd-characteristic
/// nilpotency-2 rings, recording any reversible instance. Quantifies over
/// the family's admissible shapes: `1 <= a <= p^s - 1`, `0 <= t < a`,
/// `g != 0`, `deg g < a - t`, `g(1) != 0`.
pub fn char2_necessity_sweep(ring: &ChainRing, s: u32) -> Result<CharTwoNecessityReport> {
    if ring.nu() != 2 {
        return Err(Error::NotApplicable("nilpotency index must be 2".into()));
    }
    if ring.p() == 2 {
        return Ok(CharTwoNecessityReport::default()); // hypotheses vacuous
    }
    let n = ring.p().checked_pow(s).unwrap() as usize;
    let field = ring.residue_field();
    let tuples: Vec<(u64, u64, Poly)> = {
        let mut v = Vec::new();
        for a in 1..=(n as u64 - 1) {
            for t in 0..a {
                for g in unit_g_polys(&field, a - t) {
                    if g.coeff_code(0) == 0 {
                        continue; // degree of the reciprocal would drop
                    }
                    v.push((a, t, g));
                }
            }
        }
        v
    };
    let check = |(a, t, g): &(u64, u64, Poly)| -> Option<SweepFinding> {
        let zm1 = Poly::z_minus_one(ring);
        let gamma = Poly::constant(&ring.gamma());
        let gen = &zm1.pow(*a) + &(&gamma * &(&zm1.pow(*t) * &g.lift_into(ring)));
        let code = CyclicCode::new(ring, n, vec![gen]).unwrap();
        if reversibility::is_reversible(&code).verdict {
            Some(SweepFinding {
                ring: ring.to_string(),
                n,
                description: format!("a={a}, t={t}, g={g} is reversible"),
            })
        } else {
            None
        }
    };
    #[cfg(feature = "parallel")]
    let findings: Vec<SweepFinding> = tuples.par_iter().filter_map(check).collect();
    #[cfg(not(feature = "parallel"))]
    let findings: Vec<SweepFinding> = tuples.iter().filter_map(check).collect();
    Ok(CharTwoNecessityReport {
        codes_checked: tuples.len(),
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly_expr, parse_ring_spec};
    use std::collections::HashSet;

    fn ring(spec: &str) -> ChainRing {
        parse_ring_spec(spec, None).unwrap()
    }

    #[test]
    fn family_enumeration_small_counts() {
        // F2 + gamma F2 at n = 2: gamma-only b in {0,1}; full family with
        // a in {0,1}, b <= a, and no room for nonzero g except (a,b,t) = (1,1,0)
        let r = ring("F2[u]/u^2");
        let tuples = enumerate_codes_ps_nu2(&r, 1).unwrap();
        // gamma-only: 2; full: (0,0) g=0, (1,0) g=0, (1,1) g=0, (1,1,t=0) g=1
        assert_eq!(tuples.len(), 2 + 3 + 1);
        // pairwise distinct as ideals
        let mut keys = HashSet::new();
        for (params, code) in &tuples {
            assert!(
                keys.insert(code.canonical_key()),
                "duplicate ideal from {params}"
            );
        }
    }

    #[test]
    fn family_enumeration_matches_ideal_census() {
        // every nonzero ideal appears exactly once, for several small rings
        for (spec, s) in [("F2[u]/u^2", 1u32), ("F3[u]/u^2", 1), ("Z/4", 1), ("Z/9", 1), ("F2[u]/u^2", 2)] {
            let r = ring(spec);
            let n = r.p().pow(s) as usize;
            let tuples = enumerate_codes_ps_nu2(&r, s).unwrap();
            let census = enumerate_all_ideals_bruteforce(&r, n, 1 << 16).unwrap();
            let mut family_keys = HashSet::new();
            for (params, code) in &tuples {
                assert!(
                    family_keys.insert(code.canonical_key()),
                    "duplicate ideal from {params} over {spec}"
                );
            }
            let census_keys: HashSet<_> = census
                .ideals
                .iter()
                .filter(|c| !c.is_zero_code())
                .map(|c| c.canonical_key())
                .collect();
            assert_eq!(
                family_keys, census_keys,
                "family enumeration disagrees with the census for {spec}, n={n}"
            );
        }
    }

    #[test]
    fn torsional_degrees_match_family_parameters() {
        for (spec, s) in [("F3[u]/u^2", 2u32), ("Z/4", 2)] {
            let r = ring(spec);
            for (params, code) in enumerate_codes_ps_nu2(&r, s).unwrap() {
                let profile = code.torsion_profile();
                match &params {
                    CodeFamilyParams::GammaOnly { b } => {
                        assert_eq!(profile.degree(0), code.len());
                        assert_eq!(profile.degree(1) as u64, *b);
                    }
                    CodeFamilyParams::Full { a, b, .. } => {
                        assert_eq!(profile.degree(0) as u64, *a, "{params}");
                        assert_eq!(profile.degree(1) as u64, *b, "{params}");
                    }
                }
            }
        }
    }

    #[test]
    fn extraction_round_trips() {
        for (spec, s) in [("F2[u]/u^2", 2u32), ("F3[u]/u^2", 1), ("Z/9", 1)] {
            let r = ring(spec);
            for (params, code) in enumerate_codes_ps_nu2(&r, s).unwrap() {
                if code.is_zero_code() {
                    continue;
                }
                let got = extract_family_params(&code)
                    .unwrap_or_else(|| panic!("extraction failed for {params} over {spec}"));
                let rebuilt = got.build(&r, code.len()).unwrap();
                assert!(
                    rebuilt.same_ideal(&code),
                    "extraction of {params} rebuilt a different ideal ({got})"
                );
                // the tuple itself round-trips (not just the ideal)
                match (&params, &got) {
                    (CodeFamilyParams::GammaOnly { b }, CodeFamilyParams::GammaOnly { b: b2 }) => {
                        assert_eq!(b, b2)
                    }
                    (
                        CodeFamilyParams::Full { a, b, t, g },
                        CodeFamilyParams::Full {
                            a: a2,
                            b: b2,
                            t: t2,
                            g: g2,
                        },
                    ) => {
                        assert_eq!((a, b), (a2, b2), "{params}");
                        if !g.is_zero() {
                            assert_eq!((t, g), (t2, g2), "{params}");
                        }
                    }
                    _ => panic!("family flipped for {params}"),
                }
            }
        }
    }

    #[test]
    fn census_of_field_is_the_divisor_lattice() {
        // over F_2 at n = 3, ideals correspond to divisors of z^3 - 1: 4 of them
        let f2 = ring("F2[u]/u^1");
        let census = enumerate_all_ideals_bruteforce(&f2, 3, 1 << 16).unwrap();
        assert_eq!(census.total(), 4);
    }

    #[test]
    fn census_respects_cap() {
        let r = ring("F4[u]/u^2");
        assert!(matches!(
            enumerate_all_ideals_bruteforce(&r, 5, 1 << 16),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn char2_sweep_finds_nothing_on_odd_characteristic() {
        for (spec, s) in [("Z/9", 1u32), ("F3[u]/u^2", 1), ("F5[u]/u^2", 1)] {
            let r = ring(spec);
            let report = char2_necessity_sweep(&r, s).unwrap();
            assert!(report.codes_checked > 0, "{spec}");
            assert!(
                report.findings.is_empty(),
                "found reversible codes over {spec}: {:?}",
                report.findings
            );
        }
        // vacuous over characteristic 2
        let r2 = ring("F2[u]/u^2");
        let report = char2_necessity_sweep(&r2, 2).unwrap();
        assert_eq!(report.codes_checked, 0);
    }

    #[test]
    fn char2_sweep_excludes_the_degree_dropping_boundary() {
        // <(z-1)^7 + gamma (z-1) g> over Z/9 with g = z^5+...+z is reversible,
        // but its g has zero constant term, so the sweep's hypothesis
        // (deg g* = deg g) excludes it
        let z9 = ring("Z/9");
        let g = parse_poly_expr(&z9, "(z-1)^7 + g*(z-1)*(z^5+z^4+z^3+z^2+z)").unwrap();
        let code = CyclicCode::new(&z9, 9, vec![g]).unwrap();
        assert!(reversibility::is_reversible(&code).verdict);
        let report = char2_necessity_sweep(&z9, 2).unwrap();
        assert!(report.findings.is_empty());
    }
}
