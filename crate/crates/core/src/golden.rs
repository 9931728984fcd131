//! Built-in known-answer suite: thirteen reference cases with pinned
//! verdicts (reversibility, torsion structure, cardinality, distance, MDS),
//! exposed through the `paper-examples` CLI verb and asserted verbatim by
//! the acceptance tests.

use crate::codes::CyclicCode;
use crate::enumerate;
use crate::error::Result;
use crate::metrics;
use crate::parse::{parse_poly_expr, parse_ring_spec};
use crate::poly::Poly;
use crate::reversibility;
use crate::Caps;

#[derive(Debug, Clone)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct GoldenRow {
    pub id: &'static str,
    pub description: String,
    pub checks: Vec<GoldenCheck>,
}

impl GoldenRow {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &'static str, expected: impl ToString, computed: impl ToString) -> GoldenCheck {
    let expected = expected.to_string();
    let computed = computed.to_string();
    let pass = expected == computed;
    GoldenCheck {
        name,
        expected,
        computed,
        pass,
    }
}

fn code_from(ring_spec: &str, n: usize, gens: &[&str]) -> Result<CyclicCode> {
    let ring = parse_ring_spec(ring_spec, None)?;
    let gens = gens
        .iter()
        .map(|g| parse_poly_expr(&ring, g))
        .collect::<Result<Vec<Poly>>>()?;
    CyclicCode::new(&ring, n, gens)
}

struct Case {
    id: &'static str,
    ring: &'static str,
    n: usize,
    gens: &'static [&'static str],
    reversible: Option<bool>,
    distance: Option<u64>,
    mds: Option<bool>,
    card_p_exp: Option<u64>,
}

fn verdict_row(case: &Case, caps: &Caps) -> GoldenRow {
    let mut checks = Vec::new();
    let description = format!(
        "{} over {}, n={}",
        case.gens.join(", "),
        case.ring,
        case.n
    );
    match code_from(case.ring, case.n, case.gens) {
        Err(e) => checks.push(check("construct", "ok", format!("error: {e}"))),
        Ok(code) => {
            if let Some(want) = case.reversible {
                let got = reversibility::is_reversible(&code).verdict;
                checks.push(check("reversible", want, got));
            }
            if let Some(want) = case.distance {
                match metrics::hamming_distance(&code, caps) {
                    Ok(d) => checks.push(check("distance", want, d.d)),
                    Err(e) => checks.push(check("distance", want, format!("error: {e}"))),
                }
            }
            if let Some(want) = case.mds {
                match metrics::is_mds(&code, caps) {
                    Ok(v) => checks.push(check("mds", want, v)),
                    Err(e) => checks.push(check("mds", want, format!("error: {e}"))),
                }
            }
            if let Some(want) = case.card_p_exp {
                let card = code.cardinality();
                checks.push(check(
                    "cardinality",
                    format!("{}^{}", card.p, want),
                    format!("{}^{}", card.p, card.p_exponent),
                ));
            }
        }
    }
    GoldenRow {
        id: case.id,
        description,
        checks,
    }
}

/// Run all thirteen reference cases.
pub fn run_golden_suite(caps: &Caps) -> Vec<GoldenRow> {
    let mut rows = Vec::new();

    for case in [
        Case {
            id: "3.1",
            ring: "Z/25",
            n: 25,
            gens: &["(z-1)^3 + g*3*(z-1)", "g*(z-1)^2"],
            reversible: Some(true),
            distance: Some(2),
            mds: None,
            card_p_exp: None,
        },
        Case {
            id: "3.2",
            ring: "F2[u]/u^2",
            n: 8,
            gens: &["(z-1)^4 + g*z", "g*(z-1)^2"],
            reversible: Some(true),
            distance: Some(2),
            mds: None,
            card_p_exp: None,
        },
        Case {
            id: "3.3",
            ring: "F3[u]/u^2",
            n: 3,
            gens: &["(z-1)^2 + g*2", "g*(z-1)"],
            reversible: Some(true),
            distance: Some(2),
            mds: None,
            card_p_exp: None,
        },
        Case {
            id: "3.4",
            ring: "Z/9",
            n: 9,
            gens: &["(z-1)^7 + g*(z-1)*(1 + 2*(z-1))", "g*(z-1)^4"],
            reversible: Some(false),
            distance: Some(3),
            mds: None,
            card_p_exp: None,
        },
        Case {
            id: "3.5",
            ring: "Z/9",
            n: 9,
            gens: &["(z-1)^7 + g*(z-1)*(z^5+z^4+z^3+z^2+z)"],
            reversible: Some(true),
            distance: None,
            mds: None,
            card_p_exp: None,
        },
        Case {
            id: "3.6",
            ring: "F16[u]/u^2",
            n: 256,
            gens: &["(z-1)^255 + 3*g*(z-1)^254"],
            reversible: Some(true),
            distance: None,
            mds: Some(true),
            card_p_exp: None,
        },
        Case {
            id: "3.6-size",
            ring: "F16[u]/u^2",
            n: 256,
            gens: &["(z-1)^255 + 3*g*(z-1)^254"],
            reversible: None,
            distance: Some(256),
            mds: None,
            card_p_exp: Some(8),
        },
        Case {
            id: "3.7",
            ring: "F4[u]/u^2",
            n: 16,
            gens: &["z - 1 + g"],
            reversible: Some(true),
            distance: None,
            mds: Some(true),
            card_p_exp: None,
        },
        Case {
            id: "3.7-size",
            ring: "F4[u]/u^2",
            n: 16,
            gens: &["z - 1 + g"],
            reversible: None,
            distance: Some(2),
            mds: None,
            card_p_exp: Some(60),
        },
    ] {
        rows.push(verdict_row(&case, caps));
    }

    rows.push(torsion_chain_row(caps));
    rows.push(census_row(caps));
    rows.push(torsion_of_row(
        "4.3",
        "F16[u]/u^2",
        256,
        &["(z-1)^255 + 3*g*(z-1)^254"],
        "(z-1)^255",
        256,
        caps,
    ));
    rows.push(torsion_of_row(
        "4.4",
        "F4[u]/u^2",
        16,
        &["z - 1 + g"],
        "z-1",
        2,
        caps,
    ));
    rows
}

/// The length-3 code over F3[u]/u^3 generated by `g*(z-1)+g^2`: not
/// reversible, yet every torsion code is.
fn torsion_chain_row(_caps: &Caps) -> GoldenRow {
    let mut checks = Vec::new();
    let description = "g*(z-1)+g^2 over F3[u]/u^3, n=3".to_string();
    match code_from("F3[u]/u^3", 3, &["g*(z-1) + g^2"]) {
        Err(e) => checks.push(check("construct", "ok", format!("error: {e}"))),
        Ok(code) => {
            let rev = reversibility::is_reversible(&code).verdict;
            checks.push(check("reversible", false, rev));
            let profile = code.torsion_profile();
            let zm1 = Poly::z_minus_one(&code.ring().residue_field());
            let chain_ok = profile.levels[0].generator.is_zero()
                && profile.levels[1].generator == zm1
                && profile.levels[2].generator == zm1;
            checks.push(check("torsion chain is 0, <z-1>, <z-1>", true, chain_ok));
            checks.push(check(
                "torsion degrees",
                "[3, 1, 1]",
                format!(
                    "[{}, {}, {}]",
                    profile.degree(0),
                    profile.degree(1),
                    profile.degree(2)
                ),
            ));
            let torsion_rev = reversibility::torsion_reversibility(&code);
            checks.push(check("torsion levels reversible", "[true, true, true]", format!("{torsion_rev:?}")));
            let card = code.cardinality();
            checks.push(check("cardinality", "3^4", format!("{}^{}", card.p, card.p_exponent)));
        }
    }
    GoldenRow {
        id: "4.1",
        description,
        checks,
    }
}

/// Census of all cyclic codes of length 5 over F2[u]/u^3: 15 nonzero codes,
/// every one reversible with reversible torsion codes.
fn census_row(_caps: &Caps) -> GoldenRow {
    let mut checks = Vec::new();
    let description = "all cyclic codes of length 5 over F2[u]/u^3".to_string();
    let ring = parse_ring_spec("F2[u]/u^3", None).unwrap();
    match enumerate::enumerate_all_ideals_bruteforce(&ring, 5, 1 << 16) {
        Err(e) => checks.push(check("census", "ok", format!("error: {e}"))),
        Ok(census) => {
            checks.push(check("nonzero codes", 15usize, census.nonzero_count()));
            let all_rev = census
                .ideals
                .iter()
                .filter(|c| !c.is_zero_code())
                .all(|c| reversibility::is_reversible(c).verdict);
            checks.push(check("all reversible", true, all_rev));
            let all_torsion_rev = census
                .ideals
                .iter()
                .all(|c| reversibility::torsion_reversibility(c).into_iter().all(|v| v));
            checks.push(check("all torsion codes reversible", true, all_torsion_rev));
        }
    }
    GoldenRow {
        id: "4.2",
        description,
        checks,
    }
}

/// Torsion codes of a reversible code: equal generators at both levels, with
/// a pinned field distance, reversible and field-MDS.
fn torsion_of_row(
    id: &'static str,
    ring_spec: &'static str,
    n: usize,
    gens: &'static [&'static str],
    torsion_gen: &str,
    torsion_distance: u64,
    caps: &Caps,
) -> GoldenRow {
    let mut checks = Vec::new();
    let description = format!("torsion codes of {} over {ring_spec}, n={n}", gens.join(", "));
    match code_from(ring_spec, n, gens) {
        Err(e) => checks.push(check("construct", "ok", format!("error: {e}"))),
        Ok(code) => {
            let ring = code.ring().clone();
            let rf = ring.residue_field();
            let profile = code.torsion_profile();
            let want = parse_poly_expr(&rf, torsion_gen).unwrap();
            let eq = profile.levels[0].generator == profile.levels[1].generator
                && profile.levels[0].generator == want;
            checks.push(check(
                "torsion generators equal and as expected",
                true,
                eq,
            ));
            match code.torsion_code(0) {
                Err(e) => checks.push(check("torsion code", "ok", format!("error: {e}"))),
                Ok(tc) => {
                    match metrics::hamming_distance(&tc, caps) {
                        Ok(d) => checks.push(check("torsion distance", torsion_distance, d.d)),
                        Err(e) => {
                            checks.push(check("torsion distance", torsion_distance, format!("error: {e}")))
                        }
                    }
                    checks.push(check(
                        "torsion reversible",
                        true,
                        reversibility::is_reversible(&tc).verdict,
                    ));
                    match metrics::is_mds(&tc, caps) {
                        Ok(v) => checks.push(check("torsion mds", true, v)),
                        Err(e) => checks.push(check("torsion mds", true, format!("error: {e}"))),
                    }
                }
            }
        }
    }
    GoldenRow {
        id,
        description,
        checks,
    }
}
