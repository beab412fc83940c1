//! Whitehead's algorithm: greedy length descent, primitivity, orbit
//! equivalence, and breadth-first enumeration of primitive cyclic words.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automorphism::{enumerate_all, enumerate_type2, AutomorphismChain, WhiteheadAut};
use crate::error::{Error, Result};
use crate::word::{cyclic_core_bounds, CyclicWord, Letter, Rank, Word};

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// Bound on the number of distinct cyclic words a search may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub aut: WhiteheadAut,
    /// Cyclic length after applying `aut`.
    pub length: usize,
}

/// A strict-descent certificate: replaying `steps` from `start` reaches
/// `minimal`, and no multiplier move shortens `minimal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizationResult {
    pub start: CyclicWord,
    pub minimal: CyclicWord,
    pub steps: Vec<Step>,
}

impl MinimizationResult {
    pub fn chain(&self) -> AutomorphismChain {
        AutomorphismChain::new(
            self.steps.iter().map(|s| s.aut.clone()).collect(),
            self.start.rank(),
        )
        .expect("steps share the rank of the start word")
    }
}

/// Precomputed move tables for one rank.
#[derive(Clone, Debug)]
pub struct Whitehead {
    rank: Rank,
    multipliers: Vec<WhiteheadAut>,
    all: Vec<WhiteheadAut>,
    limits: SearchLimits,
}

impl Whitehead {
    pub fn new(rank: Rank) -> Self {
        Whitehead {
            rank,
            multipliers: enumerate_type2(rank).into_iter().map(Into::into).collect(),
            all: enumerate_all(rank),
            limits: SearchLimits::default(),
        }
    }

    pub fn with_limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn multiplier_moves(&self) -> &[WhiteheadAut] {
        &self.multipliers
    }

    pub fn all_moves(&self) -> &[WhiteheadAut] {
        &self.all
    }

    /// First multiplier move, in enumeration order, that strictly shortens
    /// the cyclic word given by `letters`.
    fn first_reducing(&self, letters: &[Letter]) -> Option<(usize, Vec<Letter>)> {
        self.multipliers.iter().enumerate().find_map(|(k, aut)| {
            let image = aut.image_letters(letters);
            let (_, len) = cyclic_core_bounds(&image);
            (len < letters.len()).then_some((k, image))
        })
    }

    /// Whether some multiplier move strictly shortens `cw`.
    pub fn has_reducing_move(&self, cw: &CyclicWord) -> bool {
        self.first_reducing(cw.letters()).is_some()
    }

    pub fn minimize(&self, cw: &CyclicWord) -> Result<MinimizationResult> {
        self.rank.check(cw.rank())?;
        let mut current = cw.clone();
        let mut steps = Vec::new();
        while let Some((k, image)) = self.first_reducing(current.letters()) {
            current = CyclicWord::from_reduced(&image, self.rank);
            steps.push(Step {
                aut: self.multipliers[k].clone(),
                length: current.len(),
            });
        }
        Ok(MinimizationResult {
            start: cw.clone(),
            minimal: current,
            steps,
        })
    }

    pub fn is_primitive(&self, w: &Word) -> Result<PrimitivityVerdict> {
        let witness = self.minimize(&CyclicWord::of_word(w))?;
        Ok(PrimitivityVerdict {
            primitive: witness.minimal.len() == 1,
            witness,
        })
    }

    pub fn orbit_equivalent(&self, u: &Word, v: &Word) -> Result<OrbitEquivalence> {
        u.rank().check(v.rank())?;
        let left = self.minimize(&CyclicWord::of_word(u))?;
        let right = self.minimize(&CyclicWord::of_word(v))?;
        if left.minimal.len() != right.minimal.len() {
            return Ok(OrbitEquivalence {
                equivalent: false,
                left,
                right,
                path: None,
            });
        }
        let path = self.level_path(&left.minimal, &right.minimal)?;
        Ok(OrbitEquivalence {
            equivalent: path.is_some(),
            left,
            right,
            path,
        })
    }

    /// Breadth-first search over all Whitehead moves that keep the cyclic
    /// length fixed. Returns the connecting moves if `to` is reachable.
    fn level_path(&self, from: &CyclicWord, to: &CyclicWord) -> Result<Option<Vec<WhiteheadAut>>> {
        let len = from.len();
        let mut parent: HashMap<CyclicWord, Option<(CyclicWord, usize)>> = HashMap::new();
        let mut queue = VecDeque::new();
        parent.insert(from.clone(), None);
        queue.push_back(from.clone());
        let mut found = from == to;
        while let Some(cur) = queue.pop_front() {
            if found {
                break;
            }
            for (k, aut) in self.all.iter().enumerate() {
                let image = aut.image_letters(cur.letters());
                if cyclic_core_bounds(&image).1 != len {
                    continue;
                }
                let next = CyclicWord::from_reduced(&image, self.rank);
                if parent.contains_key(&next) {
                    continue;
                }
                if parent.len() >= self.limits.max_states {
                    return Err(Error::ResourceExhausted {
                        limit: self.limits.max_states,
                    });
                }
                parent.insert(next.clone(), Some((cur.clone(), k)));
                if &next == to {
                    found = true;
                    break;
                }
                queue.push_back(next);
            }
        }
        if !found {
            return Ok(None);
        }
        let mut path = Vec::new();
        let mut at = to.clone();
        while let Some(Some((prev, k))) = parent.get(&at) {
            path.push(self.all[*k].clone());
            at = prev.clone();
        }
        path.reverse();
        Ok(Some(path))
    }

    /// Closure of the cyclic word `a1` under all Whitehead moves, keeping
    /// only images of cyclic length at most `max_len`.
    pub fn enumerate_primitives(&self, max_len: usize) -> Result<BTreeSet<CyclicWord>> {
        if max_len == 0 {
            return Err(Error::Usage("maximum length must be at least 1".into()));
        }
        let start = CyclicWord::from_reduced(&[Letter::gen(1)], self.rank);
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(cur) = queue.pop_front() {
            for aut in &self.all {
                let image = aut.image_letters(cur.letters());
                if cyclic_core_bounds(&image).1 > max_len {
                    continue;
                }
                let next = CyclicWord::from_reduced(&image, self.rank);
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= self.limits.max_states {
                    return Err(Error::ResourceExhausted {
                        limit: self.limits.max_states,
                    });
                }
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
        Ok(seen)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitivityVerdict {
    pub primitive: bool,
    pub witness: MinimizationResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEquivalence {
    pub equivalent: bool,
    pub left: MinimizationResult,
    pub right: MinimizationResult,
    /// Length-preserving moves carrying `left.minimal` to `right.minimal`.
    pub path: Option<Vec<WhiteheadAut>>,
}

pub fn minimize(cw: &CyclicWord) -> MinimizationResult {
    Whitehead::new(cw.rank())
        .minimize(cw)
        .expect("rank taken from the input")
}

pub fn is_primitive(w: &Word) -> PrimitivityVerdict {
    Whitehead::new(w.rank())
        .is_primitive(w)
        .expect("rank taken from the input")
}

pub fn orbit_equivalent(u: &Word, v: &Word, limits: SearchLimits) -> Result<OrbitEquivalence> {
    Whitehead::new(u.rank())
        .with_limits(limits)
        .orbit_equivalent(u, v)
}

pub fn enumerate_primitives(
    rank: Rank,
    max_len: usize,
    limits: SearchLimits,
) -> Result<BTreeSet<CyclicWord>> {
    Whitehead::new(rank)
        .with_limits(limits)
        .enumerate_primitives(max_len)
}
