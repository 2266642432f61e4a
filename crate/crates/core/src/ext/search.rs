//! Bounded searches on finite modules: symmetry, submodule lattices and
//! near-symmetry.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::finite::{Element, FiniteModuleData, Submodule};
use super::{ExtError, Limits, Verdict};

/// Indices of `S + Λ·g` given the sorted members of a submodule `S`.
fn extend(d: &FiniteModuleData, members: &[u64], g: &[u64]) -> Vec<u64> {
    let mut orbit = vec![g.to_vec()];
    loop {
        let next = d.apply_t(orbit.last().unwrap());
        if next == orbit[0] {
            break;
        }
        orbit.push(next);
    }
    let mut seen: HashSet<u64> = members.iter().copied().collect();
    let mut queue: VecDeque<u64> = members.iter().copied().collect();
    while let Some(i) = queue.pop_front() {
        let x = d.element_at(i);
        for h in &orbit {
            let y = d.index_of(&d.add(&x, h));
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Greedy Λ-generators, preferring elements of large additive order.
pub fn lambda_generators(d: &FiniteModuleData, lim: &Limits) -> Result<Vec<Element>, ExtError> {
    let order = d.check_enumerable(lim)?;
    let mut candidates: Vec<(u64, u64)> = (0..order).map(|i| (d.element_order(&d.element_at(i)), i)).collect();
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut span = vec![d.index_of(&d.zero_element())];
    let mut set: HashSet<u64> = span.iter().copied().collect();
    let mut gens = Vec::new();
    for (_, i) in candidates {
        if span.len() as u64 == order {
            break;
        }
        if set.contains(&i) {
            continue;
        }
        let g = d.element_at(i);
        span = extend(d, &span, &g);
        set = span.iter().copied().collect();
        gens.push(g);
    }
    Ok(gens)
}

struct IsoSearch<'a> {
    src: &'a FiniteModuleData,
    dst: &'a FiniteModuleData,
    gens: Vec<Element>,
    candidates: Vec<Vec<Element>>,
    budget: u64,
    exhausted: bool,
}

impl IsoSearch<'_> {
    /// Extends the partial homomorphism `map` by `gens[i] ↦ y`; `None` on a
    /// clash.
    fn extend_map(&mut self, map: &HashMap<u64, Element>, i: usize, y: &[u64]) -> Option<HashMap<u64, Element>> {
        let mut map = map.clone();
        let mut gimg: Vec<(Element, Element)> = Vec::with_capacity(i + 1);
        for (j, g) in self.gens[..=i].iter().enumerate() {
            let img = if j == i { y.to_vec() } else { map[&self.src.index_of(g)].clone() };
            gimg.push((g.clone(), img));
        }
        let mut queue: VecDeque<u64> = map.keys().copied().collect();
        while let Some(xi) = queue.pop_front() {
            let x = self.src.element_at(xi);
            let fx = map[&xi].clone();
            let mut moves: Vec<(Element, Element)> = gimg
                .iter()
                .map(|(g, h)| (self.src.add(&x, g), self.dst.add(&fx, h)))
                .collect();
            moves.push((self.src.apply_t(&x), self.dst.apply_t(&fx)));
            for (a, b) in moves {
                if self.budget == 0 {
                    self.exhausted = true;
                    return None;
                }
                self.budget -= 1;
                let ai = self.src.index_of(&a);
                match map.get(&ai) {
                    Some(prev) if *prev != b => return None,
                    Some(_) => {}
                    None => {
                        map.insert(ai, b);
                        queue.push_back(ai);
                    }
                }
            }
        }
        Some(map)
    }

    fn run(&mut self, map: HashMap<u64, Element>, i: usize) -> bool {
        if i == self.gens.len() {
            let images: HashSet<&Element> = map.values().collect();
            return images.len() as u128 == self.dst.order();
        }
        let cands = self.candidates[i].clone();
        for y in cands {
            if self.exhausted {
                return false;
            }
            if let Some(next) = self.extend_map(&map, i, &y) {
                let images: HashSet<&Element> = next.values().collect();
                if images.len() != next.len() {
                    continue;
                }
                if self.run(next, i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

/// Decides `a ≅ b` by backtracking over images of Λ-generators.
pub fn is_isomorphic(a: &FiniteModuleData, b: &FiniteModuleData, lim: &Limits) -> Result<Verdict, ExtError> {
    if a.battery() != b.battery() {
        return Ok(Verdict::False);
    }
    if a.is_zero() {
        return Ok(Verdict::True);
    }
    let gens = lambda_generators(a, lim)?;
    let order = b.check_enumerable(lim)?;
    let candidates = gens
        .iter()
        .map(|g| {
            let o = a.element_order(g);
            (0..order).map(|i| b.element_at(i)).filter(|y| b.element_order(y) == o).collect()
        })
        .collect();
    let mut search = IsoSearch { src: a, dst: b, gens, candidates, budget: lim.symmetry_pairs, exhausted: false };
    let mut start = HashMap::new();
    start.insert(a.index_of(&a.zero_element()), b.zero_element());
    let found = search.run(start, 0);
    Ok(if found {
        Verdict::True
    } else if search.exhausted {
        Verdict::Unknown
    } else {
        Verdict::False
    })
}

/// Whether `D ≅ hom(D, Q/Z)` with the conjugate action.
pub fn is_symmetric(d: &FiniteModuleData, lim: &Limits) -> Result<Verdict, ExtError> {
    is_isomorphic(d, &d.dual(), lim)
}

/// All Λ-submodules, breadth first from the zero submodule.
pub fn enumerate_submodules(d: &FiniteModuleData, lim: &Limits) -> Result<Vec<Submodule>, ExtError> {
    let order = d.check_enumerable(lim)?;
    let zero = vec![d.index_of(&d.zero_element())];
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    seen.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    let mut found = Vec::new();
    while let Some(s) = queue.pop_front() {
        let inside: HashSet<u64> = s.iter().copied().collect();
        for i in 0..order {
            if inside.contains(&i) {
                continue;
            }
            let next = extend(d, &s, &d.element_at(i));
            if seen.insert(next.clone()) {
                if seen.len() > lim.max_submodules {
                    return Err(ExtError::BoundExceeded { what: "submodule count", limit: lim.max_submodules as u64 });
                }
                queue.push_back(next);
            }
        }
        found.push(s);
    }
    found.sort_by_key(|s| (s.len(), s.clone()));
    Ok(found.into_iter().map(|m| Submodule::from_members(d, m)).collect())
}

/// Outcome of the near-symmetry test, with a symmetric module `P/D₁ ⊕ D_c`
/// when one was found.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NearSymmetry {
    pub verdict: Verdict,
    pub witness: Option<FiniteModuleData>,
}

/// Near-symmetry: `D_c` must be symmetric, and some quotient of the
/// `(t−1)`-primary part by a submodule killed by `t − 1` must be zero or
/// symmetric.
pub fn is_nearly_symmetric(d: &FiniteModuleData, lim: &Limits) -> Result<NearSymmetry, ExtError> {
    let (p, c) = d.split_t_minus_one(lim)?;
    match is_symmetric(&c.data, lim)? {
        Verdict::False => return Ok(NearSymmetry { verdict: Verdict::False, witness: None }),
        Verdict::Unknown => return Ok(NearSymmetry { verdict: Verdict::Unknown, witness: None }),
        Verdict::True => {}
    }
    for d1 in enumerate_submodules(&p.data, lim)? {
        let fixed = d1.gens.iter().all(|g| p.data.apply_t(g) == *g);
        if !fixed {
            continue;
        }
        let q = p.data.quotient(&d1.gens);
        let v = if q.is_zero() { Verdict::True } else { is_symmetric(&q, lim)? };
        match v {
            Verdict::True => {
                return Ok(NearSymmetry { verdict: Verdict::True, witness: Some(q.direct_sum(&c.data)) });
            }
            Verdict::Unknown | Verdict::False => {}
        }
    }
    Ok(NearSymmetry { verdict: Verdict::Unknown, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::finite::finite_structure;
    use crate::laurent::ZPoly;
    use crate::modules::PresentedModule;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(is_symmetric(&FiniteModuleData::cyclic(3, 2), &lim()).unwrap(), Verdict::True);
        assert_eq!(is_symmetric(&FiniteModuleData::cyclic(5, 3), &lim()).unwrap(), Verdict::False);
        let a = FiniteModuleData::cyclic(5, 3);
        assert_eq!(is_symmetric(&a.direct_sum(&a.dual()), &lim()).unwrap(), Verdict::True);
        assert_eq!(is_symmetric(&FiniteModuleData::zero(), &lim()).unwrap(), Verdict::True);
        let m = finite_structure(&PresentedModule::cyclic(&[ZPoly::z(0, &[1, 1, 1]), ZPoly::z_int(2)]), &lim()).unwrap();
        assert_eq!(is_symmetric(&m, &lim()).unwrap(), Verdict::True);
    }

    #[test]
    fn submodule_lattices() {
        assert_eq!(enumerate_submodules(&FiniteModuleData::cyclic(3, 2), &lim()).unwrap().len(), 2);
        assert_eq!(enumerate_submodules(&FiniteModuleData::cyclic(4, 1), &lim()).unwrap().len(), 3);
        // (Z/2)^2 with trivial action has five subgroups
        let v = FiniteModuleData::cyclic(2, 1).power(2);
        assert_eq!(enumerate_submodules(&v, &lim()).unwrap().len(), 5);
        // F_4 as a field extension of F_2 via t: no proper nonzero submodules
        let f4 = finite_structure(&PresentedModule::cyclic(&[ZPoly::z(0, &[1, 1, 1]), ZPoly::z_int(2)]), &lim()).unwrap();
        assert_eq!(enumerate_submodules(&f4, &lim()).unwrap().len(), 2);
        let tiny = Limits { max_submodules: 2, ..lim() };
        assert!(matches!(enumerate_submodules(&v, &tiny), Err(ExtError::BoundExceeded { .. })));
    }

    #[test]
    fn near_symmetry_examples() {
        let a = FiniteModuleData::cyclic(5, 3);
        assert_eq!(is_nearly_symmetric(&a, &lim()).unwrap().verdict, Verdict::False);
        let two = FiniteModuleData::cyclic(2, 1);
        let n = is_nearly_symmetric(&two, &lim()).unwrap();
        assert_eq!(n.verdict, Verdict::True);
        let m = finite_structure(&PresentedModule::cyclic(&[ZPoly::z(0, &[1, 1]), ZPoly::z_int(3)]), &lim()).unwrap();
        assert_eq!(is_nearly_symmetric(&m.direct_sum(&two), &lim()).unwrap().verdict, Verdict::True);
    }

    #[test]
    fn isomorphism_budget() {
        let a = FiniteModuleData::cyclic(7, 3).power(2);
        let tiny = Limits { symmetry_pairs: 1, ..lim() };
        assert_eq!(is_isomorphic(&a, &a, &tiny).unwrap(), Verdict::Unknown);
        assert_eq!(is_isomorphic(&a, &a, &lim()).unwrap(), Verdict::True);
    }
}
