//! Text and JSON forms of Laurent polynomials.
//!
//! Text: terms `c*t^k` joined by `+`/`-`, e.g. `t^2 - t + 1` or
//! `2*t^-1 - 1`. The `*` may be omitted (`2t`), and exponents may be
//! parenthesized (`t^(-2)`).
//!
//! JSON: an array of `[exponent, "coefficient"]` pairs in increasing
//! exponent order.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::coeff::Coeff;
use super::poly::Laurent;
use super::LaurentError;

pub fn parse_poly<C: Coeff>(ctx: C::Ctx, text: &str) -> Result<Laurent<C>, LaurentError> {
    let err = |msg: &str| LaurentError::Parse { input: text.to_string(), msg: msg.to_string() };
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty polynomial"));
    }
    let bytes = s.as_bytes();
    let mut pieces = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        let c = bytes[i];
        let prev = bytes[i - 1];
        if (c == b'+' || c == b'-') && prev != b'^' && prev != b'(' {
            pieces.push(&s[start..i]);
            start = i;
        }
    }
    pieces.push(&s[start..]);

    let mut out = Laurent::zero(ctx);
    for piece in pieces {
        let (neg, body) = match piece.as_bytes()[0] {
            b'-' => (true, &piece[1..]),
            b'+' => (false, &piece[1..]),
            _ => (false, piece),
        };
        if body.is_empty() {
            return Err(err("dangling sign"));
        }
        let (coeff_text, exp) = match body.find('t') {
            None => (body, 0i64),
            Some(pos) => {
                let before = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
                let after = &body[pos + 1..];
                let exp = if after.is_empty() {
                    1
                } else {
                    let e = after.strip_prefix('^').ok_or_else(|| err("expected '^' after t"))?;
                    let e = e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e);
                    e.parse::<i64>().map_err(|_| err("bad exponent"))?
                };
                (before, exp)
            }
        };
        let mut c = if coeff_text.is_empty() {
            C::one(ctx)
        } else {
            C::parse_text(ctx, coeff_text).ok_or_else(|| err("bad coefficient"))?
        };
        if neg {
            c = c.neg(ctx);
        }
        out = &out + &Laurent::monomial(ctx, c, exp);
    }
    Ok(out)
}

impl<C: Coeff> std::str::FromStr for Laurent<C>
where
    C::Ctx: Default,
{
    type Err = LaurentError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(C::Ctx::default(), s)
    }
}

impl<C: Coeff> Serialize for Laurent<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.num_terms()))?;
        for (e, c) in self.terms() {
            seq.serialize_element(&(e, c.to_text()))?;
        }
        seq.end()
    }
}

fn from_pairs<'de, C, D>(ctx: C::Ctx, deserializer: D) -> Result<Laurent<C>, D::Error>
where
    C: Coeff,
    D: Deserializer<'de>,
{
    let pairs: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
    let mut terms = Vec::with_capacity(pairs.len());
    for (e, c) in pairs {
        let v = C::parse_text(ctx, &c).ok_or_else(|| de::Error::custom(format!("bad coefficient {c:?}")))?;
        terms.push((e, v));
    }
    Ok(Laurent::from_terms(ctx, terms))
}

impl<'de> Deserialize<'de> for Laurent<BigInt> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        from_pairs((), deserializer)
    }
}

impl<'de> Deserialize<'de> for Laurent<BigRational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        from_pairs((), deserializer)
    }
}

/// Serde adapter storing a polynomial as its text form.
pub mod as_text {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Laurent<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_text())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Laurent<BigInt>, D::Error> {
        let text = String::deserialize(d)?;
        parse_poly((), &text).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use crate::laurent::{QPoly, ZPoly};

    #[test]
    fn parses_the_documented_forms() {
        let p: ZPoly = "t^2 - t + 1".parse().unwrap();
        assert_eq!(p, ZPoly::z(0, &[1, -1, 1]));
        let q: ZPoly = "2*t^-1 - 1".parse().unwrap();
        assert_eq!(q, ZPoly::z(-1, &[2, -1]));
        let r: ZPoly = "-3t^(-2)+t".parse().unwrap();
        assert_eq!(r, ZPoly::z(-2, &[-3, 0, 0, 1]));
        let z: ZPoly = "0".parse().unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn rational_coefficients() {
        let p: QPoly = "1/2*t - 3/4".parse().unwrap();
        assert_eq!(p.to_text(), "1/2*t - 3/4");
    }

    #[test]
    fn rejects_garbage() {
        assert!("t^".parse::<ZPoly>().is_err());
        assert!("x + 1".parse::<ZPoly>().is_err());
        assert!("".parse::<ZPoly>().is_err());
        assert!("2 +".parse::<ZPoly>().is_err());
    }

    #[test]
    fn json_pairs() {
        let p = ZPoly::z(-1, &[2, 0, -5]);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"[[-1,"2"],[1,"-5"]]"#);
        let back: ZPoly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }
}
