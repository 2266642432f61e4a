//! Weight-one group presentations, Fox Jacobians and Alexander modules.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LambdaMatrix, ZPoly};
use crate::modules::PresentedModule;
use crate::words::{Word, WordError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("relator {index} has weight {gamma}, expected 0")]
    NonzeroWeight { index: usize, gamma: i64 },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("cannot drop generator {drop} of {gens}")]
    InvalidDrop { drop: usize, gens: usize },
    #[error("cannot parse presentation: {0}")]
    Parse(String),
}

/// `⟨x₀, …, x_{n-1} | R₁, …⟩` with every generator of weight 1 and every
/// relator of weight 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct GroupPresentation {
    gens: usize,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    gens: usize,
    relators: Vec<Word>,
}

impl TryFrom<GroupJson> for GroupPresentation {
    type Error = GroupError;
    fn try_from(j: GroupJson) -> Result<Self, GroupError> {
        GroupPresentation::new(j.gens, j.relators)
    }
}

impl From<GroupPresentation> for GroupJson {
    fn from(g: GroupPresentation) -> Self {
        GroupJson { gens: g.gens, relators: g.relators }
    }
}

impl GroupPresentation {
    pub fn new(gens: usize, relators: Vec<Word>) -> Result<Self, GroupError> {
        for (index, r) in relators.iter().enumerate() {
            if let Some(m) = r.max_generator() {
                if m >= gens {
                    return Err(WordError::IndexOutOfRange { index: m, count: gens }.into());
                }
            }
            let gamma = r.gamma();
            if gamma != 0 {
                return Err(GroupError::NonzeroWeight { index, gamma });
            }
        }
        Ok(GroupPresentation { gens, relators })
    }

    pub fn free(gens: usize) -> Self {
        GroupPresentation { gens, relators: Vec::new() }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Entry `(i, j)` is `∂R_j/∂x_i` under `x ↦ t`.
    pub fn jacobian(&self) -> LambdaMatrix {
        let cols: Vec<Vec<ZPoly>> =
            self.relators.iter().map(|r| r.fox_row(self.gens).expect("relators validated")).collect();
        LambdaMatrix::from_cols((), self.gens, cols)
    }

    /// The Jacobian with row `drop` deleted.
    pub fn alexander_module(&self, drop: usize) -> Result<PresentedModule, GroupError> {
        if drop >= self.gens {
            return Err(GroupError::InvalidDrop { drop, gens: self.gens });
        }
        Ok(PresentedModule::new(self.gens - 1, self.jacobian().remove_row(drop)).expect("row count matches"))
    }

    /// Rank of `G/[G,G]`.
    pub fn abelianization_rank(&self) -> usize {
        let a = self.jacobian().eval_at_one();
        self.gens - crate::laurent::snf(&a).rank
    }

    /// Relabels generator `i` as `perm[i]`.
    pub fn rename(&self, perm: &[usize]) -> GroupPresentation {
        let relators = self
            .relators
            .iter()
            .map(|w| Word::new(w.letters().iter().map(|l| crate::words::Letter::new(perm[l.gen], l.exp))))
            .collect();
        GroupPresentation { gens: self.gens, relators }
    }

    /// Text form `gens: 3; rel: x1 x2 x1^-1 x0^-1; rel: ...`.
    pub fn to_text(&self) -> String {
        let mut s = format!("gens: {}", self.gens);
        for r in &self.relators {
            s.push_str("; rel: ");
            s.push_str(&r.to_text());
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, GroupError> {
        let mut gens = None;
        let mut relators = Vec::new();
        for part in text.split([';', '\n']).map(str::trim).filter(|p| !p.is_empty()) {
            let (key, val) = part
                .split_once(':')
                .ok_or_else(|| GroupError::Parse(format!("expected 'key: value', got {part:?}")))?;
            match key.trim() {
                "gens" => {
                    let n = val.trim().parse().map_err(|_| GroupError::Parse(format!("bad generator count {val:?}")))?;
                    gens = Some(n);
                }
                "rel" => relators.push(Word::parse(val)?),
                other => return Err(GroupError::Parse(format!("unknown key {other:?}"))),
            }
        }
        let gens = gens.ok_or_else(|| GroupError::Parse("missing 'gens'".into()))?;
        GroupPresentation::new(gens, relators)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::DEFAULT_PRIMES;

    fn z(low: i64, c: &[i64]) -> ZPoly {
        ZPoly::z(low, c)
    }

    fn hopf() -> GroupPresentation {
        GroupPresentation::new(2, vec![Word::from_pairs(&[(0, 1), (1, 1), (0, -1), (1, -1)])]).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let j = hopf().jacobian();
        assert_eq!(j.col(0), vec![z(0, &[1, -1]), z(0, &[-1, 1])]);
        let f = GroupPresentation::free(3).jacobian();
        assert_eq!((f.rows(), f.cols()), (3, 0));
        let w = Word::from_pairs(&[(1, 1), (0, -1)]);
        let r = Word::product([&Word::gen(1), &w, &Word::gen_inv(0), &w.inverse()]);
        let g = GroupPresentation::new(2, vec![r]).unwrap();
        let col = g.jacobian().col(0);
        assert_eq!(&col[0] + &col[1], ZPoly::z_zero());
    }

    #[test]
    fn module_examples() {
        let m = hopf().alexander_module(0).unwrap();
        assert_eq!(m.relations().col(0), vec![z(0, &[-1, 1])]);
        assert!(m.battery_eq(&PresentedModule::cyclic(&[ZPoly::t_minus_one()]), &DEFAULT_PRIMES));
        assert_eq!(GroupPresentation::free(1).alexander_module(0).unwrap().gens(), 0);
        assert!(matches!(hopf().alexander_module(2), Err(GroupError::InvalidDrop { .. })));
    }

    #[test]
    fn rejects_weighted_relators() {
        let bad = GroupPresentation::new(2, vec![Word::from_pairs(&[(0, 1), (1, 1)])]);
        assert_eq!(bad, Err(GroupError::NonzeroWeight { index: 0, gamma: 2 }));
        assert!(GroupPresentation::new(1, vec![Word::from_pairs(&[(1, 1), (0, -1)])]).is_err());
    }

    #[test]
    fn text_and_json_round_trip() {
        let g = GroupPresentation::parse("gens: 3; rel: x1 x2 x1^-1 x0^-1; rel: x2 x0 x2^-1 x1^-1").unwrap();
        assert_eq!(g.relators().len(), 2);
        assert_eq!(GroupPresentation::parse(&g.to_text()).unwrap(), g);
        let j = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<GroupPresentation>(&j).unwrap(), g);
        assert!(GroupPresentation::parse("rel: x0").is_err());
        assert!(serde_json::from_str::<GroupPresentation>(r#"{"gens":1,"relators":[[[0,1]]]}"#).is_err());
    }

    #[test]
    fn abelianization() {
        assert_eq!(hopf().abelianization_rank(), 2);
        assert_eq!(GroupPresentation::free(3).abelianization_rank(), 3);
    }
}
