//! Whitehead automorphisms: signed permutations and multiplier moves.
//!
//! A multiplier move with multiplier `m` (index `i`) fixes `a_i` and sends
//! every other generator `a_j` to one of
//! `a_j`, `a_j·m`, `m^-1·a_j` or `m^-1·a_j·m`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::text::{parse_letters, Syntax};
use crate::word::{push_reduced, CyclicWord, Letter, Rank, Word};

/// A permutation of the generators with signs, extended to inverses so
/// that it commutes with inversion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    rank: Rank,
    /// `images[j - 1]` is the image of `a_j`.
    images: Vec<Letter>,
}

impl SignedPermutation {
    pub fn new(images: Vec<Letter>, rank: Rank) -> Result<Self> {
        let n = rank.as_usize();
        if images.len() != n {
            return Err(Error::InvalidMove(format!(
                "permutation lists {} images for rank {}",
                images.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for l in &images {
            let k = l.index() as usize;
            if k > n || seen[k - 1] {
                return Err(Error::InvalidMove(
                    "image indices do not form a permutation".into(),
                ));
            }
            seen[k - 1] = true;
        }
        Ok(SignedPermutation { rank, images })
    }

    pub fn identity(rank: Rank) -> Self {
        SignedPermutation {
            rank,
            images: (1..=rank.get()).map(Letter::gen).collect(),
        }
    }

    pub fn images(&self) -> &[Letter] {
        &self.images
    }

    pub fn image(&self, l: Letter) -> Letter {
        let img = self.images[(l.index() - 1) as usize];
        if l.is_inverted() {
            img.inverse()
        } else {
            img
        }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![Letter::gen(1); self.images.len()];
        for (j, img) in self.images.iter().enumerate() {
            let source = Letter::new(j as u32 + 1, img.is_inverted());
            images[(img.index() - 1) as usize] = source;
        }
        SignedPermutation {
            rank: self.rank,
            images,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// `a_j ↦ a_j`
    Fix,
    /// `a_j ↦ a_j·m`
    RightMult,
    /// `a_j ↦ m^-1·a_j`
    LeftMult,
    /// `a_j ↦ m^-1·a_j·m`
    Conjugate,
}

impl Action {
    pub const ALL: [Action; 4] = [
        Action::Fix,
        Action::RightMult,
        Action::LeftMult,
        Action::Conjugate,
    ];

    pub fn code(self) -> char {
        match self {
            Action::Fix => 'F',
            Action::RightMult => 'R',
            Action::LeftMult => 'L',
            Action::Conjugate => 'C',
        }
    }

    pub fn from_code(c: &str) -> Option<Self> {
        match c {
            "F" => Some(Action::Fix),
            "R" => Some(Action::RightMult),
            "L" => Some(Action::LeftMult),
            "C" => Some(Action::Conjugate),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiplierMove {
    rank: Rank,
    multiplier: Letter,
    /// Indexed by generator; `None` exactly at the multiplier's index.
    actions: Vec<Option<Action>>,
}

impl MultiplierMove {
    /// Generators not mentioned in `actions` are fixed.
    pub fn new<I>(multiplier: Letter, actions: I, rank: Rank) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, Action)>,
    {
        let n = rank.as_usize();
        let m = multiplier.index() as usize;
        if m > n {
            return Err(Error::LetterOutOfRange {
                index: multiplier.index(),
                rank: rank.get(),
            });
        }
        let mut table: Vec<Option<Action>> = vec![Some(Action::Fix); n];
        table[m - 1] = None;
        let mut assigned = vec![false; n];
        for (j, action) in actions {
            let j = j as usize;
            if j == 0 || j > n {
                return Err(Error::InvalidMove(format!(
                    "generator a{j} outside rank {n}"
                )));
            }
            if j == m {
                return Err(Error::InvalidMove(format!(
                    "the multiplier generator a{j} cannot carry an action"
                )));
            }
            if assigned[j - 1] {
                return Err(Error::InvalidMove(format!("a{j} assigned twice")));
            }
            assigned[j - 1] = true;
            table[j - 1] = Some(action);
        }
        Ok(MultiplierMove {
            rank,
            multiplier,
            actions: table,
        })
    }

    pub fn multiplier(&self) -> Letter {
        self.multiplier
    }

    /// Action on `a_j`, or `None` when `j` is the multiplier's index.
    pub fn action(&self, j: u32) -> Option<Action> {
        self.actions[(j - 1) as usize]
    }

    /// The same actions with the inverse multiplier; undoes `self`.
    pub fn inverse(&self) -> Self {
        MultiplierMove {
            rank: self.rank,
            multiplier: self.multiplier.inverse(),
            actions: self.actions.clone(),
        }
    }

    fn push_image(&self, l: Letter, out: &mut Vec<Letter>) {
        let m = self.multiplier;
        match self.actions[(l.index() - 1) as usize] {
            None | Some(Action::Fix) => push_reduced(out, l),
            Some(action) => {
                let (before, after) = match action {
                    Action::RightMult => (None, Some(m)),
                    Action::LeftMult => (Some(m.inverse()), None),
                    Action::Conjugate => (Some(m.inverse()), Some(m)),
                    Action::Fix => unreachable!(),
                };
                // image of a_j is before·a_j·after; image of a_j^-1 is the inverse
                let (pre, post) = if l.is_inverted() {
                    (after.map(Letter::inverse), before.map(Letter::inverse))
                } else {
                    (before, after)
                };
                if let Some(p) = pre {
                    push_reduced(out, p);
                }
                push_reduced(out, l);
                if let Some(p) = post {
                    push_reduced(out, p);
                }
            }
        }
    }
}

/// Either kind of Whitehead automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WhiteheadAut {
    Permutation(SignedPermutation),
    Multiplier(MultiplierMove),
}

impl From<SignedPermutation> for WhiteheadAut {
    fn from(p: SignedPermutation) -> Self {
        WhiteheadAut::Permutation(p)
    }
}

impl From<MultiplierMove> for WhiteheadAut {
    fn from(m: MultiplierMove) -> Self {
        WhiteheadAut::Multiplier(m)
    }
}

impl WhiteheadAut {
    pub fn rank(&self) -> Rank {
        match self {
            WhiteheadAut::Permutation(p) => p.rank,
            WhiteheadAut::Multiplier(m) => m.rank,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            WhiteheadAut::Permutation(p) => p.inverse().into(),
            WhiteheadAut::Multiplier(m) => m.inverse().into(),
        }
    }

    /// Image of a freely reduced letter sequence, freely reduced.
    pub(crate) fn image_letters(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(letters.len() + 8);
        match self {
            WhiteheadAut::Permutation(p) => {
                // a signed permutation maps reduced words to reduced words
                out.extend(letters.iter().map(|&l| p.image(l)));
            }
            WhiteheadAut::Multiplier(m) => {
                for &l in letters {
                    m.push_image(l, &mut out);
                }
            }
        }
        out
    }

    pub fn apply_to_word(&self, w: &Word) -> Result<Word> {
        self.rank().check(w.rank())?;
        Ok(Word::from_reduced_unchecked(
            self.image_letters(w.letters()),
            w.rank(),
        ))
    }

    pub fn apply_to_cyclic(&self, cw: &CyclicWord) -> Result<CyclicWord> {
        self.rank().check(cw.rank())?;
        Ok(CyclicWord::from_reduced(
            &self.image_letters(cw.letters()),
            cw.rank(),
        ))
    }

    /// Images of the standard basis `a_1..a_n`.
    pub fn basis_images(&self) -> Vec<Word> {
        let rank = self.rank();
        (1..=rank.get())
            .map(|j| Word::from_reduced_unchecked(self.image_letters(&[Letter::gen(j)]), rank))
            .collect()
    }

    /// Parses the textual move form produced by `Display`.
    pub fn parse(text: &str, rank: Rank) -> Result<Self> {
        let text = text.trim();
        if let Some(body) = text.strip_prefix("perm:") {
            let mut images: Vec<Option<Letter>> = vec![None; rank.as_usize()];
            for entry in body.split(',') {
                let entry = entry.trim();
                let (src, dst) = entry
                    .split_once("->")
                    .ok_or_else(|| Error::InvalidMove(format!("bad entry '{entry}'")))?;
                let src = single_letter(src)?;
                let dst = single_letter(dst)?;
                if src.is_inverted() {
                    return Err(Error::InvalidMove(format!("bad source in '{entry}'")));
                }
                let slot = images
                    .get_mut((src.index() - 1) as usize)
                    .ok_or_else(|| Error::InvalidMove(format!("'{entry}' outside rank")))?;
                if slot.replace(dst).is_some() {
                    return Err(Error::InvalidMove(format!("a{} listed twice", src.index())));
                }
            }
            let images = images
                .into_iter()
                .enumerate()
                .map(|(j, l)| {
                    l.ok_or_else(|| Error::InvalidMove(format!("missing image of a{}", j + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SignedPermutation::new(images, rank)?.into())
        } else if let Some(body) = text.strip_prefix("mult m=") {
            let (m, rest) = body
                .split_once(';')
                .ok_or_else(|| Error::InvalidMove("missing ';' after multiplier".into()))?;
            let multiplier = single_letter(m)?;
            let mut actions = Vec::new();
            for entry in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                let (g, code) = entry
                    .split_once(':')
                    .ok_or_else(|| Error::InvalidMove(format!("bad entry '{entry}'")))?;
                let g = single_letter(g)?;
                let action = Action::from_code(code.trim())
                    .ok_or_else(|| Error::InvalidMove(format!("unknown action in '{entry}'")))?;
                if g.is_inverted() {
                    return Err(Error::InvalidMove(format!("bad generator in '{entry}'")));
                }
                actions.push((g.index(), action));
            }
            Ok(MultiplierMove::new(multiplier, actions, rank)?.into())
        } else {
            Err(Error::InvalidMove(format!("unrecognised move '{text}'")))
        }
    }
}

fn single_letter(text: &str) -> Result<Letter> {
    let letters = parse_letters(text.trim(), Syntax::Standard)?;
    match letters.as_slice() {
        [l] => Ok(*l),
        _ => Err(Error::InvalidMove(format!(
            "expected a single letter, got '{text}'"
        ))),
    }
}

impl fmt::Display for WhiteheadAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAut::Permutation(p) => {
                let entries: Vec<String> = p
                    .images
                    .iter()
                    .enumerate()
                    .map(|(j, img)| format!("a{}->{}", j + 1, img))
                    .collect();
                write!(f, "perm: {}", entries.join(", "))
            }
            WhiteheadAut::Multiplier(m) => {
                write!(f, "mult m={};", m.multiplier)?;
                let entries: Vec<String> = m
                    .actions
                    .iter()
                    .enumerate()
                    .filter_map(|(j, a)| a.map(|a| format!("a{}:{}", j + 1, a.code())))
                    .collect();
                if !entries.is_empty() {
                    write!(f, " {}", entries.join(", "))?;
                }
                Ok(())
            }
        }
    }
}

/// All `n!·2^n` signed permutations, identity first.
pub fn enumerate_type1(rank: Rank) -> Vec<SignedPermutation> {
    let n = rank.as_usize();
    let mut perms = Vec::new();
    let mut current: Vec<u32> = (1..=rank.get()).collect();
    permutations(&mut current, 0, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << n);
    for perm in perms {
        for signs in 0u32..(1 << n) {
            let images = perm
                .iter()
                .enumerate()
                .map(|(j, &k)| Letter::new(k, signs >> j & 1 == 1))
                .collect();
            out.push(SignedPermutation { rank, images });
        }
    }
    out
}

fn permutations(current: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == current.len() {
        out.push(current.clone());
        return;
    }
    for i in k..current.len() {
        current.swap(k, i);
        permutations(current, k + 1, out);
        current.swap(k, i);
    }
}

/// All `2n·4^(n-1)` multiplier moves. Multipliers are taken in letter
/// order; action tables count in base 4 with the lowest generator fastest.
pub fn enumerate_type2(rank: Rank) -> Vec<MultiplierMove> {
    let n = rank.as_usize();
    let mut out = Vec::with_capacity(2 * n * 4usize.pow(n as u32 - 1));
    for index in 1..=rank.get() {
        for inverted in [false, true] {
            let multiplier = Letter::new(index, inverted);
            let others: Vec<usize> = (0..n).filter(|&j| j + 1 != index as usize).collect();
            for code in 0..4usize.pow(others.len() as u32) {
                let mut actions = vec![None; n];
                let mut c = code;
                for &j in &others {
                    actions[j] = Some(Action::ALL[c % 4]);
                    c /= 4;
                }
                out.push(MultiplierMove {
                    rank,
                    multiplier,
                    actions,
                });
            }
        }
    }
    out
}

/// Every Whitehead automorphism of the rank: signed permutations, then
/// multiplier moves.
pub fn enumerate_all(rank: Rank) -> Vec<WhiteheadAut> {
    enumerate_type1(rank)
        .into_iter()
        .map(WhiteheadAut::from)
        .chain(enumerate_type2(rank).into_iter().map(WhiteheadAut::from))
        .collect()
}

/// A sequence of Whitehead automorphisms applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutomorphismChain {
    rank: Rank,
    moves: Vec<WhiteheadAut>,
}

impl AutomorphismChain {
    pub fn new(moves: Vec<WhiteheadAut>, rank: Rank) -> Result<Self> {
        for m in &moves {
            rank.check(m.rank())?;
        }
        Ok(AutomorphismChain { rank, moves })
    }

    pub fn empty(rank: Rank) -> Self {
        AutomorphismChain {
            rank,
            moves: Vec::new(),
        }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn moves(&self) -> &[WhiteheadAut] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn push(&mut self, aut: WhiteheadAut) -> Result<()> {
        self.rank.check(aut.rank())?;
        self.moves.push(aut);
        Ok(())
    }

    /// The chain undoing this one.
    pub fn inverse(&self) -> Self {
        AutomorphismChain {
            rank: self.rank,
            moves: self.moves.iter().rev().map(WhiteheadAut::inverse).collect(),
        }
    }

    pub fn apply_to_word(&self, w: &Word) -> Result<Word> {
        compose(self, w)
    }

    pub fn apply_to_cyclic(&self, cw: &CyclicWord) -> Result<CyclicWord> {
        self.rank.check(cw.rank())?;
        let mut letters = cw.letters().to_vec();
        for m in &self.moves {
            letters = m.image_letters(&letters);
        }
        Ok(CyclicWord::from_reduced(&letters, self.rank))
    }

    /// Images of the standard basis under the whole chain.
    pub fn basis_images(&self) -> Vec<Word> {
        (1..=self.rank.get())
            .map(|j| {
                let g = Word::from_reduced_unchecked(vec![Letter::gen(j)], self.rank);
                compose(self, &g).expect("rank checked at construction")
            })
            .collect()
    }
}

/// Applies the moves of `chain` to `w` in order.
pub fn compose(chain: &AutomorphismChain, w: &Word) -> Result<Word> {
    chain.rank.check(w.rank())?;
    let mut letters = w.letters().to_vec();
    for m in &chain.moves {
        letters = m.image_letters(&letters);
    }
    Ok(Word::from_reduced_unchecked(letters, w.rank()))
}

/// A reproducible chain of `depth` moves drawn uniformly from all
/// Whitehead automorphisms of the rank.
pub fn random_chain(rank: Rank, depth: usize, seed: u64) -> AutomorphismChain {
    let pool = enumerate_all(rank);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let moves = (0..depth)
        .map(|_| pool.choose(&mut rng).expect("pool is never empty").clone())
        .collect();
    AutomorphismChain { rank, moves }
}
