//! Reversibility decision procedures.
//!
//! A cyclic code is reversible when it is closed under coordinate reversal
//! `(c_0, ..., c_{n-1}) -> (c_{n-1}, ..., c_0)`. Four routes are provided:
//!
//! * membership of the reciprocal of every standard generator
//!   (`is_reversible`, total);
//! * the divisibility criterion for length `p^s` codes over nilpotency-2
//!   rings (`is_reversible_ps_nu2`);
//! * an exhaustive unit-witness search over the standard generating set
//!   (`unit_witness_reversibility`, bounded by the element-iteration cap);
//! * a brute-force oracle over the full codeword set, with a
//!   generator-orbit fallback above the cap (`brute_force_is_reversible`).
//!
//! All four must agree; the cross-method sweep in `method_agreement_sweep`
//! checks this over complete code families.

use crate::codes::CyclicCode;
use crate::enumerate::{enumerate_codes_ps_nu2, CodeFamilyParams};
use crate::error::{Error, Result};
use crate::metrics;
use crate::poly::Poly;
use crate::ring::ChainRing;
use crate::Caps;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Outcome of the reciprocal-membership test, with one record per standard
/// generator. The verdict is the conjunction of the membership flags.
#[derive(Clone, Debug)]
pub struct ReversibilityReport {
    pub verdict: bool,
    pub per_generator: Vec<GeneratorCheck>,
    /// Reversibility of each torsion code, level by level.
    pub torsion_verdicts: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct GeneratorCheck {
    pub generator: Poly,
    pub reciprocal: Poly,
    pub member: bool,
}

/// Reciprocal-membership test over the standard generating set: the code is
/// reversible iff the reciprocal of every generator is a member.
pub fn is_reversible(code: &CyclicCode) -> ReversibilityReport {
    let std = code.standard_generators();
    let mut per_generator = Vec::with_capacity(std.entries.len());
    let mut verdict = true;
    for e in &std.entries {
        let rec = e.poly.reciprocal();
        let member = code.contains(&rec);
        verdict &= member;
        per_generator.push(GeneratorCheck {
            generator: e.poly.clone(),
            reciprocal: rec,
            member,
        });
    }
    ReversibilityReport {
        verdict,
        per_generator,
        torsion_verdicts: torsion_reversibility(code),
    }
}

/// Reversibility of every torsion code. A field cyclic code with monic
/// generator `h` is reversible iff `h` divides its own reciprocal, i.e. the
/// reciprocal is a constant multiple of `h`; zero and unit torsion codes are
/// trivially reversible.
pub fn torsion_reversibility(code: &CyclicCode) -> Vec<bool> {
    let profile = code.torsion_profile();
    profile
        .levels
        .iter()
        .map(|level| {
            if level.generator.is_zero() {
                true
            } else {
                level
                    .generator
                    .divides(&level.generator.reciprocal())
                    .unwrap_or(false)
            }
        })
        .collect()
}

/// Coordinate reversal of a dense word.
pub fn reverse_codeword(word: &[u64]) -> Vec<u64> {
    let mut w = word.to_vec();
    w.reverse();
    w
}

/// Ambient ring for the divisibility criterion. The residue-field reading is
/// the default; the full-ring reading is kept for experimentation and agrees
/// with it on every known example.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DivisibilityAmbient {
    #[default]
    ResidueField,
    FullRing,
}

/// Divisibility criterion for the code family of length `p^s` over a
/// nilpotency-2 ring: for `<(z-1)^a + gamma (z-1)^t g, gamma (z-1)^b>` the
/// code is reversible iff `(z-1)^{b-t}` divides `z^{a-t-k} B - A`, where
/// `k = deg g`, `A = (-1)^a g`, `B = (-1)^t g*`. The gamma-only family and
/// `g = 0` are reversible unconditionally.
pub fn is_reversible_ps_nu2(
    ring: &ChainRing,
    s: u32,
    params: &CodeFamilyParams,
    ambient: DivisibilityAmbient,
) -> Result<bool> {
    if ring.nu() != 2 {
        return Err(Error::NotApplicable(format!(
            "ring {ring} does not have nilpotency index 2"
        )));
    }
    let n = ring
        .p()
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidParams("length overflow".into()))? as usize;
    params.validate(ring, n)?;
    let (a, t, g, b) = match params {
        CodeFamilyParams::GammaOnly { .. } => return Ok(true),
        CodeFamilyParams::Full { g, .. } if g.is_zero() => return Ok(true),
        CodeFamilyParams::Full { a, b, t, g } => (*a, *t, g, *b),
    };
    let k = g.degree().unwrap() as u64;
    let rf = ring.residue_field();
    // signs in the residue field
    let sign = |e: u64| -> Poly {
        if e % 2 == 0 {
            Poly::one(&rf)
        } else {
            -&Poly::one(&rf)
        }
    };
    let a_poly = &sign(a) * g;
    let b_poly = &sign(t) * &g.reciprocal();
    let lhs = &b_poly.shift((a - t - k) as usize) - &a_poly;
    match ambient {
        DivisibilityAmbient::ResidueField => {
            let divisor = Poly::z_minus_one(&rf).pow(b - t);
            divisor.divides(&lhs)
        }
        DivisibilityAmbient::FullRing => {
            let divisor = Poly::z_minus_one(ring).pow(b - t);
            divisor.divides(&lhs.lift_into(ring))
        }
    }
}

/// Result of the unit-witness search.
#[derive(Clone, Debug)]
pub enum UnitWitnessOutcome {
    Decided {
        reversible: bool,
        /// Witness unit codes per standard generator (present when
        /// reversible).
        witnesses: Vec<Option<u64>>,
    },
    /// The ring was too large for exhaustive unit search.
    Undecided { reason: String },
}

impl UnitWitnessOutcome {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            UnitWitnessOutcome::Decided { reversible, .. } => Some(*reversible),
            UnitWitnessOutcome::Undecided { .. } => None,
        }
    }
}

/// Exhaustive unit-witness characterization over the standard generating set
/// `f_0, ..., f_m` (ascending degree): the code is reversible iff
///
/// * `f_0* = u_0 f_0` for some unit `u_0`, and
/// * `f_r* - u_r f_r` lies in the ideal generated by the earlier generators,
///   for some unit `u_r`, for every `r >= 1`.
pub fn unit_witness_reversibility(code: &CyclicCode, cap: u64) -> UnitWitnessOutcome {
    let ring = code.ring();
    if ring.order() > cap {
        return UnitWitnessOutcome::Undecided {
            reason: format!(
                "ring order {} above the unit-search cap {cap}",
                ring.order()
            ),
        };
    }
    let std = code.standard_generators();
    let mut witnesses: Vec<Option<u64>> = Vec::with_capacity(std.entries.len());
    for (r, e) in std.entries.iter().enumerate() {
        let rec = e.poly.reciprocal();
        let witness = if r == 0 {
            ring.units()
                .find(|u| {
                    let scaled = e.poly.scalar_mul(u);
                    scaled == rec
                })
                .map(|u| u.code())
        } else {
            let prefix: Vec<Poly> = std.entries[..r].iter().map(|e| e.poly.clone()).collect();
            let prefix_code = CyclicCode::new(ring, code.len(), prefix).unwrap();
            ring.units()
                .find(|u| {
                    let diff = &rec - &e.poly.scalar_mul(u);
                    prefix_code.contains(&diff)
                })
                .map(|u| u.code())
        };
        if witness.is_none() {
            return UnitWitnessOutcome::Decided {
                reversible: false,
                witnesses: Vec::new(),
            };
        }
        witnesses.push(witness);
    }
    UnitWitnessOutcome::Decided {
        reversible: true,
        witnesses,
    }
}

/// Brute-force oracle outcome.
#[derive(Clone, Copy, Debug)]
pub struct BruteForceReversibility {
    pub verdict: bool,
    /// True when the full codeword set was enumerated; false when the
    /// generator-orbit fallback was used.
    pub enumerated: bool,
}

/// Check reversal closure by full enumeration when `|C| <= cap`; otherwise
/// fall back to checking the reversals of every cyclic shift of every
/// standard generator through the membership test.
pub fn brute_force_is_reversible(code: &CyclicCode, cap: u64) -> BruteForceReversibility {
    match code.enumerate_codewords(cap) {
        Ok(set) => BruteForceReversibility {
            verdict: set.is_reversal_closed(),
            enumerated: true,
        },
        Err(_) => {
            let n = code.len();
            let std = code.standard_generators();
            for e in &std.entries {
                let base = e.poly.to_word(n);
                for k in 0..n {
                    let mut shifted = vec![0u64; n];
                    for (i, &c) in base.iter().enumerate() {
                        shifted[(i + k) % n] = c;
                    }
                    let rev = reverse_codeword(&shifted);
                    if !code.contains(&Poly::from_word(code.ring(), &rev)) {
                        return BruteForceReversibility {
                            verdict: false,
                            enumerated: false,
                        };
                    }
                }
            }
            BruteForceReversibility {
                verdict: true,
                enumerated: false,
            }
        }
    }
}

/// One disagreement row of the cross-method sweep.
#[derive(Clone, Debug)]
pub struct MethodDisagreement {
    pub params: String,
    pub membership: bool,
    pub divisibility: bool,
    pub unit_witness: Option<bool>,
    pub brute_force: bool,
}

/// Aggregate result of the cross-method sweep over a complete code family.
#[derive(Clone, Debug, Default)]
pub struct AgreementReport {
    pub tuples: usize,
    pub disagreements: Vec<MethodDisagreement>,
    /// Codes whose closed-form cardinality failed to match the enumerated
    /// codeword count (the enumeration itself asserts the match, so entries
    /// here indicate a panic was swallowed upstream; kept for reporting).
    pub cardinality_checked: usize,
    /// Codes where the full-code brute-force distance differed from the
    /// torsion-code distance.
    pub distance_mismatches: Vec<String>,
    pub distance_checked: usize,
    /// Codes where the torsion profile did not report the family degrees.
    pub torsion_degree_mismatches: Vec<String>,
}

impl AgreementReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
            && self.distance_mismatches.is_empty()
            && self.torsion_degree_mismatches.is_empty()
    }

    fn merge(mut self, other: AgreementReport) -> AgreementReport {
        self.tuples += other.tuples;
        self.disagreements.extend(other.disagreements);
        self.cardinality_checked += other.cardinality_checked;
        self.distance_mismatches.extend(other.distance_mismatches);
        self.distance_checked += other.distance_checked;
        self.torsion_degree_mismatches
            .extend(other.torsion_degree_mismatches);
        self
    }
}

fn check_tuple(
    ring: &ChainRing,
    s: u32,
    params: &CodeFamilyParams,
    code: &CyclicCode,
    caps: &Caps,
) -> AgreementReport {
    let mut report = AgreementReport {
        tuples: 1,
        ..Default::default()
    };
    let label = || format!("{ring}, n={}, {params}", code.len());

    // torsional degrees must match the family parameters
    let profile = code.torsion_profile();
    let (want_t0, want_t1) = match params {
        CodeFamilyParams::GammaOnly { b } => (code.len(), *b as usize),
        CodeFamilyParams::Full { a, b, .. } => (*a as usize, *b as usize),
    };
    if profile.degree(0) != want_t0 || profile.degree(1) != want_t1 {
        report.torsion_degree_mismatches.push(format!(
            "{}: torsion degrees ({}, {}) but family says ({want_t0}, {want_t1})",
            label(),
            profile.degree(0),
            profile.degree(1)
        ));
    }

    let membership = is_reversible(code).verdict;
    let divisibility =
        is_reversible_ps_nu2(ring, s, params, DivisibilityAmbient::ResidueField).unwrap();
    let unit_witness = unit_witness_reversibility(code, caps.element_iter).verdict();
    let brute = brute_force_is_reversible(code, caps.codeword_enum);

    let agree = membership == divisibility
        && membership == brute.verdict
        && unit_witness.map_or(true, |v| v == membership);
    if !agree {
        report.disagreements.push(MethodDisagreement {
            params: label(),
            membership,
            divisibility,
            unit_witness,
            brute_force: brute.verdict,
        });
    }

    // reversible implies every torsion level reversible
    if membership {
        let torsion_ok = torsion_reversibility(code).into_iter().all(|v| v);
        if !torsion_ok {
            report.torsion_degree_mismatches.push(format!(
                "{}: reversible code with a non-reversible torsion level",
                label()
            ));
        }
    }

    // cardinality and distance cross-checks on enumerable codes
    if let Ok(set) = code.enumerate_codewords(caps.codeword_enum) {
        report.cardinality_checked += 1;
        if let Some((brute_d, _)) = set.min_nonzero_weight() {
            report.distance_checked += 1;
            match metrics::hamming_distance(code, caps) {
                Ok(dist) => {
                    if dist.d as usize != brute_d {
                        report.distance_mismatches.push(format!(
                            "{}: torsion distance {} but brute-force distance {brute_d}",
                            label(),
                            dist.d
                        ));
                    }
                }
                Err(e) => report
                    .distance_mismatches
                    .push(format!("{}: distance failed: {e}", label())),
            }
        }
    }
    report
}

/// Run the cross-method agreement sweep over every admissible family tuple
/// for length `p^s` codes over `ring` (nilpotency 2), checking reversibility
/// verdicts, torsional degrees, cardinality, and distances.
pub fn method_agreement_sweep_seq(ring: &ChainRing, s: u32, caps: &Caps) -> Result<AgreementReport> {
    let tuples = enumerate_codes_ps_nu2(ring, s)?;
    Ok(tuples
        .iter()
        .map(|(params, code)| check_tuple(ring, s, params, code, caps))
        .fold(AgreementReport::default(), AgreementReport::merge))
}

/// Parallel version of [`method_agreement_sweep_seq`] (identical result).
#[cfg(feature = "parallel")]
pub fn method_agreement_sweep(ring: &ChainRing, s: u32, caps: &Caps) -> Result<AgreementReport> {
    let tuples = enumerate_codes_ps_nu2(ring, s)?;
    Ok(tuples
        .par_iter()
        .map(|(params, code)| check_tuple(ring, s, params, code, caps))
        .reduce(AgreementReport::default, AgreementReport::merge))
}

#[cfg(not(feature = "parallel"))]
pub fn method_agreement_sweep(ring: &ChainRing, s: u32, caps: &Caps) -> Result<AgreementReport> {
    method_agreement_sweep_seq(ring, s, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn membership_route_on_known_codes() {
        let rev = code("Z/25", 25, &["(z-1)^3 + g*3*(z-1)", "g*(z-1)^2"]);
        let report = is_reversible(&rev);
        assert!(report.verdict);
        assert_eq!(report.per_generator.len(), 2);
        assert!(report.per_generator.iter().all(|g| g.member));

        let not_rev = code("Z/9", 9, &["(z-1)^7 + g*(z-1)*(1+2*(z-1))", "g*(z-1)^4"]);
        assert!(!is_reversible(&not_rev).verdict);

        // the zero and unit codes are reversible
        assert!(is_reversible(&code("Z/9", 5, &["0"])).verdict);
        assert!(is_reversible(&code("Z/9", 5, &["1"])).verdict);
    }

    #[test]
    fn divisibility_route_on_known_parameters() {
        // reversible: a=4, t=0, g=z, b=2 over F2+gamma F2 at n=8
        let r = parse_ring_spec("F2[u]/u^2", None).unwrap();
        let f2 = r.residue_field();
        let params = CodeFamilyParams::Full {
            a: 4,
            b: 2,
            t: 0,
            g: parse_poly_expr(&f2, "z").unwrap(),
        };
        assert!(is_reversible_ps_nu2(&r, 3, &params, DivisibilityAmbient::ResidueField).unwrap());

        // not reversible: a=7, t=1, g=2z+2, b=4 over Z/9 at n=9
        let z9 = parse_ring_spec("Z/9", None).unwrap();
        let f3 = z9.residue_field();
        let params = CodeFamilyParams::Full {
            a: 7,
            b: 4,
            t: 1,
            g: parse_poly_expr(&f3, "2*z+2").unwrap(),
        };
        assert!(!is_reversible_ps_nu2(&z9, 2, &params, DivisibilityAmbient::ResidueField).unwrap());

        // reversible: a=2, t=0, g=2, b=1 over F3+gamma F3 at n=3
        let r3 = parse_ring_spec("F3[u]/u^2", None).unwrap();
        let f3 = r3.residue_field();
        let params = CodeFamilyParams::Full {
            a: 2,
            b: 1,
            t: 0,
            g: parse_poly_expr(&f3, "2").unwrap(),
        };
        assert!(is_reversible_ps_nu2(&r3, 1, &params, DivisibilityAmbient::ResidueField).unwrap());

        // range violations are rejected
        let bad = CodeFamilyParams::Full {
            a: 1,
            b: 2,
            t: 0,
            g: Poly::zero(&f3),
        };
        assert!(is_reversible_ps_nu2(&r3, 1, &bad, DivisibilityAmbient::ResidueField).is_err());
    }

    #[test]
    fn both_ambient_readings_agree_on_the_worked_examples() {
        let cases: [(&str, u32, u64, u64, u64, &str); 4] = [
            ("Z/25", 2, 3, 2, 1, "3"),
            ("F2[u]/u^2", 3, 4, 2, 0, "z"),
            ("F3[u]/u^2", 1, 2, 1, 0, "2"),
            ("Z/9", 2, 7, 4, 1, "2*z+2"),
        ];
        for (spec, s, a, b, t, g) in cases {
            let ring = parse_ring_spec(spec, None).unwrap();
            let g = parse_poly_expr(&ring.residue_field(), g).unwrap();
            let params = CodeFamilyParams::Full { a, b, t, g };
            let field =
                is_reversible_ps_nu2(&ring, s, &params, DivisibilityAmbient::ResidueField).unwrap();
            let full =
                is_reversible_ps_nu2(&ring, s, &params, DivisibilityAmbient::FullRing).unwrap();
            assert_eq!(field, full, "ambient readings disagree for {spec} a={a} b={b} t={t}");
        }
    }

    #[test]
    fn unit_witness_route() {
        let rev = code("Z/25", 25, &["(z-1)^3 + g*3*(z-1)", "g*(z-1)^2"]);
        match unit_witness_reversibility(&rev, 1 << 16) {
            UnitWitnessOutcome::Decided {
                reversible,
                witnesses,
            } => {
                assert!(reversible);
                assert_eq!(witnesses.len(), 2);
                assert!(witnesses.iter().all(|w| w.is_some()));
            }
            UnitWitnessOutcome::Undecided { .. } => panic!("should be decidable"),
        }

        let not_rev = code("F3[u]/u^3", 3, &["g*(z-1) + g^2"]);
        assert_eq!(unit_witness_reversibility(&not_rev, 1 << 16).verdict(), Some(false));

        // gamma-only family: witness is (-1)^b
        let gonly = code("F3[u]/u^2", 9, &["g*(z-1)^3"]);
        assert_eq!(unit_witness_reversibility(&gonly, 1 << 16).verdict(), Some(true));

        // cap exceeded reports undecided
        match unit_witness_reversibility(&rev, 4) {
            UnitWitnessOutcome::Undecided { .. } => {}
            _ => panic!("tiny cap should refuse"),
        }
    }

    #[test]
    fn brute_force_route() {
        let small_rev = code("F3[u]/u^2", 3, &["(z-1)^2 + g*2", "g*(z-1)"]);
        let r = brute_force_is_reversible(&small_rev, 1 << 20);
        assert!(r.verdict && r.enumerated);

        let not_rev = code("F3[u]/u^3", 3, &["g*(z-1) + g^2"]);
        let r = brute_force_is_reversible(&not_rev, 1 << 20);
        assert!(!r.verdict && r.enumerated);

        // orbit fallback above the cap agrees
        let big = code("Z/25", 25, &["(z-1)^3 + g*3*(z-1)", "g*(z-1)^2"]);
        let r = brute_force_is_reversible(&big, 1 << 10);
        assert!(r.verdict && !r.enumerated);
        let r = brute_force_is_reversible(&not_rev, 2);
        assert!(!r.verdict && !r.enumerated);
    }

    #[test]
    fn reversal_is_a_weight_preserving_involution() {
        assert_eq!(reverse_codeword(&[1, 0, 0]), vec![0, 0, 1]);
        assert_eq!(reverse_codeword(&[2, 1, 2]), vec![2, 1, 2]);
        let mut state = 1u64;
        let mut next = move |m: u64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 33) % m
        };
        for _ in 0..1000 {
            let w: Vec<u64> = (0..16).map(|_| next(9)).collect();
            let rev = reverse_codeword(&w);
            assert_eq!(reverse_codeword(&rev), w);
            assert_eq!(
                crate::metrics::hamming_weight(&w),
                crate::metrics::hamming_weight(&rev)
            );
        }
    }

    #[test]
    fn torsion_levels_of_reversible_codes_are_reversible() {
        for (spec, n, gens) in [
            ("Z/25", 25usize, vec!["(z-1)^3 + g*3*(z-1)", "g*(z-1)^2"]),
            ("F4[u]/u^2", 16, vec!["z-1+g"]),
            ("F2[u]/u^2", 8, vec!["(z-1)^4 + g*z", "g*(z-1)^2"]),
        ] {
            let c = code(spec, n, &gens);
            assert!(is_reversible(&c).verdict);
            assert!(torsion_reversibility(&c).into_iter().all(|v| v));
        }
        // the converse fails: all torsion codes reversible, code not
        let c = code("F3[u]/u^3", 3, &["g*(z-1) + g^2"]);
        assert!(!is_reversible(&c).verdict);
        assert!(torsion_reversibility(&c).into_iter().all(|v| v));
    }
}
