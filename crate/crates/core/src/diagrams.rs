//! Gauss codes of virtual links, disk-arc presentations of ribbon
//! surface-links, and the Satoh map between them at the group level.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::GroupPresentation;
use crate::words::{Letter, Word};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at {line}:{column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("crossing {crossing} appears {count} times, expected 2")]
    CrossingCount { crossing: u32, count: usize },
    #[error("crossing {crossing} has two {role} passes")]
    RoleDuplication { crossing: u32, role: &'static str },
    #[error("crossing {crossing} has passes of opposite sign")]
    SignMismatch { crossing: u32 },
    #[error("disk {disk} out of range for {disks} disks")]
    DiskOutOfRange { disk: usize, disks: usize },
    #[error("intersection sign {0} is not ±1")]
    BadSign(i64),
    #[error("bad diagram input: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    pub crossing: u32,
    pub over: bool,
    pub sign: i8,
}

/// One circular pass sequence per link component. Virtual crossings are
/// not recorded.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GaussJson", into = "GaussJson")]
pub struct GaussCode {
    components: Vec<Vec<Pass>>,
}

#[derive(Serialize, Deserialize)]
struct GaussJson {
    components: Vec<Vec<Pass>>,
}

impl TryFrom<GaussJson> for GaussCode {
    type Error = DiagramError;
    fn try_from(j: GaussJson) -> Result<Self, DiagramError> {
        GaussCode::new(j.components)
    }
}

impl From<GaussCode> for GaussJson {
    fn from(g: GaussCode) -> Self {
        GaussJson { components: g.components }
    }
}

/// The data of one real crossing in terms of Wirtinger generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingArcs {
    pub crossing: u32,
    pub sign: i8,
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
}

/// Wirtinger generators of a Gauss code with their bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WirtingerData {
    pub gens: usize,
    /// Link component of each generator.
    pub component_of: Vec<usize>,
    /// One entry per crossing, ordered by the outgoing generator.
    pub crossings: Vec<CrossingArcs>,
}

impl GaussCode {
    pub fn new(components: Vec<Vec<Pass>>) -> Result<Self, DiagramError> {
        if components.is_empty() {
            return Err(DiagramError::Parse("a link has at least one component".into()));
        }
        let mut seen: BTreeMap<u32, Vec<Pass>> = BTreeMap::new();
        for p in components.iter().flatten() {
            if p.sign != 1 && p.sign != -1 {
                return Err(DiagramError::BadSign(p.sign as i64));
            }
            seen.entry(p.crossing).or_default().push(*p);
        }
        for (&crossing, passes) in &seen {
            if passes.len() != 2 {
                return Err(DiagramError::CrossingCount { crossing, count: passes.len() });
            }
            if passes[0].over == passes[1].over {
                let role = if passes[0].over { "over" } else { "under" };
                return Err(DiagramError::RoleDuplication { crossing, role });
            }
            if passes[0].sign != passes[1].sign {
                return Err(DiagramError::SignMismatch { crossing });
            }
        }
        Ok(GaussCode { components })
    }

    /// The `r`-component diagram with no real crossings.
    pub fn trivial(r: usize) -> Self {
        GaussCode { components: vec![Vec::new(); r.max(1)] }
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Grammar: `([OU]<id>[+-])*` per component, components separated by
    /// `,`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut components = vec![Vec::new()];
        let chars: Vec<(usize, usize, char)> = {
            let mut v = Vec::new();
            for (ln, line) in text.lines().enumerate() {
                for (col, ch) in line.chars().enumerate() {
                    v.push((ln + 1, col + 1, ch));
                }
            }
            v
        };
        let syntax = |k: usize, msg: &str| {
            let (line, column) = chars.get(k).map_or_else(
                || chars.last().map_or((1, 1), |&(l, c, _)| (l, c + 1)),
                |&(l, c, _)| (l, c),
            );
            DiagramError::Syntax { line, column, msg: msg.to_string() }
        };
        let mut k = 0;
        while k < chars.len() {
            let ch = chars[k].2;
            if ch.is_whitespace() {
                k += 1;
                continue;
            }
            if ch == ',' {
                components.push(Vec::new());
                k += 1;
                continue;
            }
            let over = match ch {
                'O' | 'o' => true,
                'U' | 'u' => false,
                _ => return Err(syntax(k, "expected 'O', 'U' or ','")),
            };
            let start = k + 1;
            let mut end = start;
            while end < chars.len() && chars[end].2.is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(syntax(start, "expected crossing id"));
            }
            let id: String = chars[start..end].iter().map(|c| c.2).collect();
            let crossing: u32 = id.parse().map_err(|_| syntax(start, "crossing id too large"))?;
            let sign = match chars.get(end).map(|c| c.2) {
                Some('+') => 1,
                Some('-') => -1,
                _ => return Err(syntax(end, "expected '+' or '-'")),
            };
            components.last_mut().expect("nonempty").push(Pass { crossing, over, sign });
            k = end + 1;
        }
        GaussCode::new(components)
    }

    pub fn to_text(&self) -> String {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| format!("{}{}{}", if p.over { 'O' } else { 'U' }, p.crossing, if p.sign > 0 { '+' } else { '-' }))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Arcs start right after each under-pass; a component without
    /// under-passes is a single arc.
    pub fn wirtinger_data(&self) -> WirtingerData {
        let mut gens = 0;
        let mut component_of = Vec::new();
        // (component, position) → arc containing that position
        let mut arc_at: Vec<Vec<usize>> = Vec::new();
        // under-pass position → (incoming, outgoing)
        let mut under_at: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            let unders: Vec<usize> = (0..comp.len()).filter(|&k| !comp[k].over).collect();
            if unders.is_empty() {
                arc_at.push(vec![gens; comp.len()]);
                component_of.push(ci);
                gens += 1;
                continue;
            }
            let first = gens;
            let mut labels = vec![0; comp.len()];
            for (n, &u) in unders.iter().enumerate() {
                component_of.push(ci);
                let arc = first + n;
                let next = unders.get(n + 1).copied().unwrap_or(comp.len() + unders[0]);
                for k in u + 1..=next {
                    labels[k % comp.len()] = arc;
                }
            }
            gens += unders.len();
            for (n, &u) in unders.iter().enumerate() {
                let outgoing = first + n;
                let incoming = first + (n + unders.len() - 1) % unders.len();
                under_at.insert(comp[u].crossing, (incoming, outgoing));
            }
            // an under position itself is labelled with its outgoing arc; the
            // incoming arc is recorded separately above
            arc_at.push(labels);
        }
        let mut crossings = Vec::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (k, p) in comp.iter().enumerate() {
                if p.over {
                    let (incoming, outgoing) = under_at[&p.crossing];
                    crossings.push(CrossingArcs { crossing: p.crossing, sign: p.sign, over: arc_at[ci][k], incoming, outgoing });
                }
            }
        }
        crossings.sort_by_key(|c| c.outgoing);
        WirtingerData { gens, component_of, crossings }
    }

    /// One relator `over^{-ε} · in · over^{ε} · out⁻¹` per crossing.
    pub fn wirtinger(&self) -> GroupPresentation {
        let data = self.wirtinger_data();
        let relators = data
            .crossings
            .iter()
            .map(|c| {
                let e = c.sign;
                Word::new([
                    Letter::new(c.over, -e),
                    Letter::new(c.incoming, 1),
                    Letter::new(c.over, e),
                    Letter::new(c.outgoing, -1),
                ])
            })
            .collect();
        GroupPresentation::new(data.gens, relators).expect("Wirtinger relators have weight 0")
    }

    /// Disk per Wirtinger generator; per crossing an arc from the incoming
    /// under-disk to the outgoing one piercing the over-disk once with the
    /// crossing sign. Under-pass-free components get an empty self-arc so
    /// every component has genus one.
    pub fn satoh(&self) -> DiskArcPresentation {
        let data = self.wirtinger_data();
        let mut arcs: Vec<Arc> = data
            .crossings
            .iter()
            .map(|c| Arc { from: c.incoming, to: c.outgoing, through: vec![(c.over, c.sign)] })
            .collect();
        let mut has_arc = vec![false; data.gens];
        for a in &arcs {
            has_arc[a.from] = true;
        }
        for (d, used) in has_arc.iter().enumerate() {
            if !used {
                arcs.push(Arc { from: d, to: d, through: Vec::new() });
            }
        }
        DiskArcPresentation { disks: data.gens, arcs }
    }

    /// Uniformly shuffled passes cut into `r` components; each crossing gets
    /// a random sign and a random over-strand.
    pub fn random<R: Rng>(rng: &mut R, crossings: usize, components: usize) -> GaussCode {
        let components = components.max(1);
        let mut passes = Vec::with_capacity(2 * crossings);
        for c in 1..=crossings as u32 {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            passes.push(Pass { crossing: c, over: true, sign });
            passes.push(Pass { crossing: c, over: false, sign });
        }
        passes.shuffle(rng);
        let mut cuts: Vec<usize> = (0..components - 1).map(|_| rng.gen_range(0..=passes.len())).collect();
        cuts.sort_unstable();
        let mut out = Vec::with_capacity(components);
        let mut prev = 0;
        for c in cuts.into_iter().chain([passes.len()]) {
            out.push(passes[prev..c].to_vec());
            prev = c;
        }
        GaussCode::new(out).expect("generated code is valid")
    }
}

/// An arc from disk `from` to disk `to` piercing disks in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub through: Vec<(usize, i8)>,
}

impl Arc {
    pub fn word(&self) -> Word {
        Word::from_pairs(&self.through)
    }
}

/// Oriented disks `D_0, …, D_{disks-1}` joined by arcs (1-handles).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiskArcJson", into = "DiskArcJson")]
pub struct DiskArcPresentation {
    disks: usize,
    arcs: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct DiskArcJson {
    disks: usize,
    arcs: Vec<Arc>,
}

impl TryFrom<DiskArcJson> for DiskArcPresentation {
    type Error = DiagramError;
    fn try_from(j: DiskArcJson) -> Result<Self, DiagramError> {
        DiskArcPresentation::new(j.disks, j.arcs)
    }
}

impl From<DiskArcPresentation> for DiskArcJson {
    fn from(d: DiskArcPresentation) -> Self {
        DiskArcJson { disks: d.disks, arcs: d.arcs }
    }
}

impl DiskArcPresentation {
    pub fn new(disks: usize, arcs: Vec<Arc>) -> Result<Self, DiagramError> {
        for a in &arcs {
            for d in [a.from, a.to].into_iter().chain(a.through.iter().map(|x| x.0)) {
                if d >= disks {
                    return Err(DiagramError::DiskOutOfRange { disk: d, disks });
                }
            }
            if let Some(&(_, s)) = a.through.iter().find(|x| x.1 != 1 && x.1 != -1) {
                return Err(DiagramError::BadSign(s as i64));
            }
        }
        Ok(DiskArcPresentation { disks, arcs })
    }

    pub fn disks(&self) -> usize {
        self.disks
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Relator `w⁻¹ x_from w x_to⁻¹` per arc.
    pub fn wirtinger(&self) -> GroupPresentation {
        let relators = self
            .arcs
            .iter()
            .map(|a| {
                let w = a.word();
                Word::product([&w.inverse(), &Word::gen(a.from), &w, &Word::gen_inv(a.to)])
            })
            .collect();
        GroupPresentation::new(self.disks, relators).expect("disk-arc relators have weight 0")
    }

    /// Surface components: connected components of the graph whose
    /// vertices are disks and whose edges are arcs. Labels follow the
    /// smallest disk in each component.
    pub fn surface_components(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.disks).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let n = p[y];
                p[y] = r;
                y = n;
            }
            r
        }
        for a in &self.arcs {
            let (x, y) = (find(&mut parent, a.from), find(&mut parent, a.to));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
        let roots: Vec<usize> = (0..self.disks).map(|d| find(&mut parent, d)).collect();
        let mut label = BTreeMap::new();
        roots.iter().map(|r| { let n = label.len(); *label.entry(*r).or_insert(n) }).collect()
    }

    /// Genus of each surface component: arcs − disks + 1.
    pub fn genera(&self) -> Vec<usize> {
        let comp = self.surface_components();
        let r = comp.iter().max().map_or(0, |m| m + 1);
        let mut disks = vec![0i64; r];
        let mut arcs = vec![0i64; r];
        for &c in &comp {
            disks[c] += 1;
        }
        for a in &self.arcs {
            arcs[comp[a.from]] += 1;
        }
        (0..r).map(|c| (arcs[c] - disks[c] + 1) as usize).collect()
    }
}

/// Relator lists agree after discarding trivial relators.
pub fn same_wirtinger(a: &GroupPresentation, b: &GroupPresentation) -> bool {
    let nontrivial = |g: &GroupPresentation| -> Vec<Word> { g.relators().iter().filter(|w| !w.is_empty()).cloned().collect() };
    a.gens() == b.gens() && nontrivial(a) == nontrivial(b)
}

/// Whether the Satoh image carries the diagram's Wirtinger presentation.
pub fn satoh_consistent(g: &GaussCode) -> bool {
    same_wirtinger(&g.satoh().wirtinger(), &g.wirtinger())
}
