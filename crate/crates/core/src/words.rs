//! Free-group words and the abelianized Fox derivative `γ⁺ ∘ ∂/∂x_i`,
//! which sends every generator to `t` and lands in Λ.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::laurent::ZPoly;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("generator x{index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("cannot parse word {input:?}: {msg}")]
    Parse { input: String, msg: String },
}

/// One letter `x_gen^exp` with `exp = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

impl Letter {
    pub fn new(gen: usize, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "letter exponent must be ±1");
        Letter { gen, exp }
    }

    pub fn inverse(self) -> Self {
        Letter { gen: self.gen, exp: -self.exp }
    }
}

/// A freely reduced word. Every constructor reduces its input.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|&last| last == l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Builds from `(generator, exponent)` pairs.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        Word::new(pairs.iter().map(|&(g, e)| Letter::new(g, e)))
    }

    pub fn gen(i: usize) -> Self {
        Word { letters: vec![Letter::new(i, 1)] }
    }

    pub fn gen_inv(i: usize) -> Self {
        Word { letters: vec![Letter::new(i, -1)] }
    }

    /// `x_i^k` for any integer `k`.
    pub fn gen_pow(i: usize, k: i64) -> Self {
        let e = if k >= 0 { 1 } else { -1 };
        Word { letters: vec![Letter::new(i, e); k.unsigned_abs() as usize] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Self {
        Word::new(self.letters.iter().chain(other.letters.iter()).copied())
    }

    /// Concatenation of many words, reduced once at the end.
    pub fn product<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Self {
        Word::new(words.into_iter().flat_map(|w| w.letters.iter().copied()))
    }

    /// The reduced form; words are stored reduced, so this is a copy.
    pub fn reduce(&self) -> Self {
        Word::new(self.letters.iter().copied())
    }

    /// Exponent sum, i.e. the weight under `x_i ↦ 1`.
    pub fn gamma(&self) -> i64 {
        self.letters.iter().map(|l| l.exp as i64).sum()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Sparse Fox row: generator index ↦ `γ⁺(∂w/∂x_i)`, zero rows omitted.
    ///
    /// Uses `∂(uv) = ∂u + t^{γ(u)} ∂v`, `∂x_j/∂x_i = δ_ij` and
    /// `∂x_j⁻¹/∂x_i = -δ_ij t⁻¹`.
    fn fox_terms(&self) -> BTreeMap<usize, BTreeMap<i64, i64>> {
        let mut acc: BTreeMap<usize, BTreeMap<i64, i64>> = BTreeMap::new();
        let mut weight = 0i64;
        for l in &self.letters {
            let (exp, c) = if l.exp > 0 { (weight, 1) } else { (weight - 1, -1) };
            *acc.entry(l.gen).or_default().entry(exp).or_default() += c;
            weight += l.exp as i64;
        }
        acc
    }

    pub fn fox_derivative(&self, i: usize) -> ZPoly {
        let terms = self.fox_terms();
        match terms.get(&i) {
            Some(t) => to_poly(t),
            None => ZPoly::z_zero(),
        }
    }

    pub fn fox_row(&self, n: usize) -> Result<Vec<ZPoly>, WordError> {
        if let Some(m) = self.max_generator() {
            if m >= n {
                return Err(WordError::IndexOutOfRange { index: m, count: n });
            }
        }
        let terms = self.fox_terms();
        Ok((0..n).map(|i| terms.get(&i).map_or_else(ZPoly::z_zero, to_poly)).collect())
    }

    /// `Σ ∂w/∂x_i · (t − 1) = t^{γ(w)} − 1`.
    pub fn fox_identity_holds(&self, n: usize) -> bool {
        let Ok(row) = self.fox_row(n) else { return false };
        let lhs = row.iter().fold(ZPoly::z_zero(), |acc, p| &acc + &(p * &ZPoly::t_minus_one()));
        lhs == &ZPoly::t_pow((), self.gamma()) - &ZPoly::z_one()
    }

    /// Text form `x0 x1^-1 x0`; the empty word prints as `1`.
    pub fn to_text(&self) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|l| if l.exp > 0 { format!("x{}", l.gen) } else { format!("x{}^-1", l.gen) })
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(text: &str) -> Result<Word, WordError> {
        let err = |msg: String| WordError::Parse { input: text.to_string(), msg };
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let body = tok.strip_prefix('x').ok_or_else(|| err(format!("letter {tok:?} must start with 'x'")))?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => {
                    let e: i64 = e.parse().map_err(|_| err(format!("bad exponent in {tok:?}")))?;
                    (i, e)
                }
                None => (body, 1),
            };
            let gen: usize = idx.parse().map_err(|_| err(format!("bad generator index in {tok:?}")))?;
            if exp == 0 {
                continue;
            }
            let sign = if exp > 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(gen, sign));
            }
        }
        Ok(Word::new(letters))
    }
}

fn to_poly(terms: &BTreeMap<i64, i64>) -> ZPoly {
    ZPoly::from_terms((), terms.iter().map(|(&e, &c)| (e, BigInt::from(c))))
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_text())
    }
}

/// JSON form: array of `[index, exponent]`.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, i8)> = self.letters.iter().map(|l| (l.gen, l.exp)).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(usize, i8)> = Vec::deserialize(d)?;
        if let Some(&(_, e)) = pairs.iter().find(|(_, e)| *e != 1 && *e != -1) {
            return Err(serde::de::Error::custom(format!("letter exponent {e} is not ±1")));
        }
        Ok(Word::from_pairs(&pairs))
    }
}
