//! Grammars shared by the CLI and code-spec files.
//!
//! Ring specs: `Z/<n>` with `n = p^a`, or `F<q>[u]/u^<v>` with `q = p^m`.
//! An explicit field modulus (coefficients over `F_p`, ascending, monic) can
//! override the default for the `F<q>` family.
//!
//! Polynomial expressions: integer literals, the symbols `z` and `g` (gamma),
//! operators `+ - * ^`, parentheses, and raw coefficient lists
//! `[c0,c1,...]`. `^` binds tighter than `*`, which binds tighter than `+`
//! and `-`; exponents are nonnegative integer literals. Whitespace is
//! insignificant. An integer literal denotes the ring element with that
//! canonical code, so it must be below the ring order (for `Z/p^a` the code
//! is the integer value; for `F_q[u]/u^nu` it is the base-`q` gamma-adic
//! encoding with base-`p` field digits).

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::ChainRing;

/// Parse `Z/<n>` or `F<q>[u]/u^<v>`, with an optional field-modulus override.
pub fn parse_ring_spec(spec: &str, field_poly: Option<&[u64]>) -> Result<ChainRing> {
    let s = spec.trim();
    if let Some(rest) = s.strip_prefix("Z/") {
        let n: u64 = rest
            .parse()
            .map_err(|_| Error::Parse { pos: 2, msg: format!("bad modulus `{rest}`") })?;
        let (p, a) = prime_power(n).ok_or_else(|| {
            Error::InvalidRing(format!("{n} is not a prime power"))
        })?;
        if field_poly.is_some() {
            return Err(Error::InvalidRing(
                "field modulus override only applies to F<q>[u]/u^<v> rings".into(),
            ));
        }
        return ChainRing::zmod_pa(p, a);
    }
    if let Some(rest) = s.strip_prefix('F') {
        let bracket = rest.find('[').ok_or_else(|| Error::Parse {
            pos: s.len(),
            msg: "expected `[u]/u^<v>` after the field order".into(),
        })?;
        let q: u64 = rest[..bracket].parse().map_err(|_| Error::Parse {
            pos: 1,
            msg: format!("bad field order `{}`", &rest[..bracket]),
        })?;
        let tail = &rest[bracket..];
        let nu_txt = tail.strip_prefix("[u]/u^").ok_or_else(|| Error::Parse {
            pos: bracket + 1,
            msg: "expected `[u]/u^<v>`".into(),
        })?;
        let nu: u32 = nu_txt.parse().map_err(|_| Error::Parse {
            pos: s.len(),
            msg: format!("bad nilpotency index `{nu_txt}`"),
        })?;
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::InvalidRing(format!("{q} is not a prime power")))?;
        return match field_poly {
            Some(coeffs) => ChainRing::fq_mod_u_with_modulus(p, m, nu, coeffs),
            None => ChainRing::fq_mod_u(p, m, nu),
        };
    }
    Err(Error::Parse {
        pos: 0,
        msg: format!("unrecognized ring spec `{s}` (expected Z/<n> or F<q>[u]/u^<v>)"),
    })
}

/// Decompose `n = p^a` with `p` prime, if possible.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 0u64;
    let mut d = 2u64;
    let mut n0 = n;
    while d * d <= n0 {
        if n0 % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        p = n0;
    }
    let mut a = 0u32;
    while n0 % p == 0 {
        n0 /= p;
        a += 1;
    }
    if n0 == 1 {
        Some((p, a))
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Z,
    G,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<Option<(Tok, usize)>> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let c = self.src[start];
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'z' | b'Z' => Tok::Z,
            b'g' | b'G' => Tok::G,
            b'0'..=b'9' => {
                let mut end = start;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[start..end]).unwrap();
                let v: u64 = text.parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("integer literal `{text}` too large"),
                })?;
                return Ok(Some((Tok::Int(v), start)));
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        };
        Ok(Some((tok, start)))
    }

    fn advance(&mut self) {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return;
        }
        match self.src[self.pos] {
            b'0'..=b'9' => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            }
            _ => self.pos += 1,
        }
    }
}

struct ExprParser<'a> {
    lex: Lexer<'a>,
    ring: ChainRing,
}

const MAX_EXPR_DEGREE: usize = 1 << 20;

impl<'a> ExprParser<'a> {
    fn literal(&self, v: u64, pos: usize) -> Result<Poly> {
        if v >= self.ring.order() {
            return Err(Error::Parse {
                pos,
                msg: format!(
                    "coefficient {v} outside ring {} (codes run 0..{})",
                    self.ring,
                    self.ring.order()
                ),
            });
        }
        Ok(Poly::from_codes(&self.ring, vec![v]))
    }

    fn parse_expr(&mut self) -> Result<Poly> {
        let mut acc = self.parse_term()?;
        loop {
            match self.lex.peek()? {
                Some((Tok::Plus, _)) => {
                    self.lex.advance();
                    let rhs = self.parse_term()?;
                    acc = &acc + &rhs;
                }
                Some((Tok::Minus, _)) => {
                    self.lex.advance();
                    let rhs = self.parse_term()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Poly> {
        let mut acc = self.parse_factor()?;
        while let Some((Tok::Star, _)) = self.lex.peek()? {
            self.lex.advance();
            let rhs = self.parse_factor()?;
            let deg = acc.degree().unwrap_or(0) + rhs.degree().unwrap_or(0);
            if deg > MAX_EXPR_DEGREE {
                return Err(Error::Parse {
                    pos: self.lex.pos,
                    msg: "expression degree too large".into(),
                });
            }
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<Poly> {
        match self.lex.peek()? {
            Some((Tok::Minus, _)) => {
                self.lex.advance();
                let inner = self.parse_factor()?;
                Ok(-&inner)
            }
            _ => {
                let base = self.parse_primary()?;
                match self.lex.peek()? {
                    Some((Tok::Caret, pos)) => {
                        self.lex.advance();
                        match self.lex.peek()? {
                            Some((Tok::Int(e), epos)) => {
                                self.lex.advance();
                                let d = base.degree().unwrap_or(0) as u128 * e as u128;
                                if d > MAX_EXPR_DEGREE as u128 {
                                    return Err(Error::Parse {
                                        pos: epos,
                                        msg: format!("exponent {e} overflows the degree limit"),
                                    });
                                }
                                Ok(base.pow(e))
                            }
                            _ => Err(Error::Parse {
                                pos,
                                msg: "expected a nonnegative integer exponent after `^`".into(),
                            }),
                        }
                    }
                    _ => Ok(base),
                }
            }
        }
    }

    fn parse_primary(&mut self) -> Result<Poly> {
        match self.lex.peek()? {
            None => Err(Error::Parse {
                pos: self.lex.pos,
                msg: "unexpected end of expression".into(),
            }),
            Some((Tok::Int(v), pos)) => {
                self.lex.advance();
                self.literal(v, pos)
            }
            Some((Tok::Z, _)) => {
                self.lex.advance();
                Ok(Poly::z(&self.ring))
            }
            Some((Tok::G, _)) => {
                self.lex.advance();
                Ok(Poly::constant(&self.ring.gamma()))
            }
            Some((Tok::LParen, pos)) => {
                self.lex.advance();
                let inner = self.parse_expr()?;
                match self.lex.peek()? {
                    Some((Tok::RParen, _)) => {
                        self.lex.advance();
                        Ok(inner)
                    }
                    _ => Err(Error::Parse {
                        pos,
                        msg: "unclosed parenthesis".into(),
                    }),
                }
            }
            Some((Tok::LBracket, pos)) => {
                self.lex.advance();
                let mut codes = Vec::new();
                if let Some((Tok::RBracket, _)) = self.lex.peek()? {
                    self.lex.advance();
                    return Ok(Poly::zero(&self.ring));
                }
                loop {
                    match self.lex.peek()? {
                        Some((Tok::Int(v), vpos)) => {
                            self.lex.advance();
                            self.literal(v, vpos)?;
                            codes.push(v);
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos,
                                msg: "coefficient list entries must be integer codes".into(),
                            })
                        }
                    }
                    match self.lex.peek()? {
                        Some((Tok::Comma, _)) => self.lex.advance(),
                        Some((Tok::RBracket, _)) => {
                            self.lex.advance();
                            return Ok(Poly::from_codes(&self.ring, codes));
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos,
                                msg: "expected `,` or `]` in coefficient list".into(),
                            })
                        }
                    }
                }
            }
            Some((tok, pos)) => Err(Error::Parse {
                pos,
                msg: format!("unexpected token {tok:?}"),
            }),
        }
    }
}

/// Parse a polynomial expression over `ring`.
pub fn parse_poly_expr(ring: &ChainRing, text: &str) -> Result<Poly> {
    let mut p = ExprParser {
        lex: Lexer::new(text),
        ring: ring.clone(),
    };
    let poly = p.parse_expr()?;
    match p.lex.peek()? {
        None => Ok(poly),
        Some((tok, pos)) => Err(Error::Parse {
            pos,
            msg: format!("trailing input starting with {tok:?}"),
        }),
    }
}
