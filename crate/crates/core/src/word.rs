//! Letters, freely reduced words, cyclic words and abelianization.
//!
//! Every value here is immutable once built. Operations that combine two
//! values check that they live in the same ambient rank.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Number of free generators of the ambient group `F_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(u32);

impl Rank {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            Err(Error::ZeroRank)
        } else {
            Ok(Rank(n))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn check(self, other: Rank) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A generator `a_i` or its inverse.
///
/// The derived order is index-major with the positive letter first:
/// `a1 < a1^-1 < a2 < a2^-1 < ...`. Canonical rotations of cyclic words
/// are least with respect to this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: u32,
    inverted: bool,
}

impl Letter {
    /// The generator `a_index`. Indices are 1-based.
    pub fn gen(index: u32) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        Letter {
            index,
            inverted: false,
        }
    }

    pub fn new(index: u32, inverted: bool) -> Self {
        assert!(index >= 1, "generator indices are 1-based");
        Letter { index, inverted }
    }

    /// Builds a letter from a nonzero signed integer: `3` is `a3`, `-3` is `a3^-1`.
    pub fn from_signed(value: i32) -> Self {
        assert!(value != 0, "zero is not a letter");
        Letter::new(value.unsigned_abs(), value < 0)
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_inverted(self) -> bool {
        self.inverted
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn to_signed(self) -> i32 {
        self.index as i32 * self.sign()
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            inverted: !self.inverted,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.index == other.index && self.inverted != other.inverted
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "a{}^-1", self.index)
        } else {
            write!(f, "a{}", self.index)
        }
    }
}

/// Pushes `letter` onto a freely reduced stack, cancelling if possible.
#[inline]
pub(crate) fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    match stack.last() {
        Some(&last) if last.cancels(letter) => {
            stack.pop();
        }
        _ => stack.push(letter),
    }
}

fn check_letters(letters: &[Letter], rank: Rank) -> Result<()> {
    match letters.iter().find(|l| l.index > rank.get()) {
        Some(l) => Err(Error::LetterOutOfRange {
            index: l.index,
            rank: rank.get(),
        }),
        None => Ok(()),
    }
}

/// A freely reduced word in the generators of `F_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    rank: Rank,
    letters: Vec<Letter>,
}

/// Freely reduces a raw letter sequence into a [`Word`].
pub fn free_reduce<I>(raw: I, rank: Rank) -> Result<Word>
where
    I: IntoIterator<Item = Letter>,
{
    let mut letters = Vec::new();
    for letter in raw {
        if letter.index > rank.get() {
            return Err(Error::LetterOutOfRange {
                index: letter.index,
                rank: rank.get(),
            });
        }
        push_reduced(&mut letters, letter);
    }
    Ok(Word { rank, letters })
}

impl Word {
    pub fn identity(rank: Rank) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn new<I>(raw: I, rank: Rank) -> Result<Self>
    where
        I: IntoIterator<Item = Letter>,
    {
        free_reduce(raw, rank)
    }

    /// Convenience constructor from signed generator indices.
    pub fn from_signed(values: &[i32], rank: Rank) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::Usage("zero is not a letter".into()));
        }
        free_reduce(values.iter().map(|&v| Letter::from_signed(v)), rank)
    }

    pub fn generator(index: u32, rank: Rank) -> Result<Self> {
        free_reduce([Letter::gen(index)], rank)
    }

    /// Caller guarantees `letters` is freely reduced and within rank.
    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>, rank: Rank) -> Self {
        debug_assert!(letters.windows(2).all(|p| !p[0].cancels(p[1])));
        debug_assert!(check_letters(&letters, rank).is_ok());
        Word { rank, letters }
    }

    pub fn rank(&self) -> Rank {
        self.rank
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

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.rank.check(other.rank)?;
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word {
            rank: self.rank,
            letters,
        })
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^k`; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            for &l in &base.letters {
                push_reduced(&mut letters, l);
            }
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    /// `c · self · c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Result<Word> {
        c.multiply(self)?.multiply(&c.inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&first), Some(&last)) if self.letters.len() > 1 => !first.cancels(last),
            _ => true,
        }
    }

    /// Splits the word as `conjugator · core · conjugator^-1` with a
    /// cyclically reduced core, and canonicalizes the core.
    pub fn cyclic_reduce(&self) -> CyclicReduction {
        let (peel, raw) = cyclic_core_bounds(&self.letters);
        let raw_core = &self.letters[peel..peel + raw];
        let rotation = least_rotation(raw_core);
        let mut canonical = Vec::with_capacity(raw);
        canonical.extend_from_slice(&raw_core[rotation..]);
        canonical.extend_from_slice(&raw_core[..rotation]);
        CyclicReduction {
            core: CyclicWord {
                rank: self.rank,
                letters: canonical,
            },
            conjugator: Word {
                rank: self.rank,
                letters: self.letters[..peel].to_vec(),
            },
            rotation,
            raw_core: raw_core.to_vec(),
        }
    }

    /// Length of the cyclically reduced core; invariant under conjugation.
    pub fn cyclic_length(&self) -> usize {
        cyclic_core_bounds(&self.letters).1
    }

    pub fn abelianize(&self) -> AbelianVector {
        abelianize_letters(&self.letters, self.rank)
    }
}

/// Returns `(peel, core_len)` where the cyclic core is
/// `letters[peel..peel + core_len]`. Assumes `letters` is freely reduced.
pub(crate) fn cyclic_core_bounds(letters: &[Letter]) -> (usize, usize) {
    let n = letters.len();
    let mut peel = 0;
    while n > 2 * peel + 1 && letters[peel].cancels(letters[n - 1 - peel]) {
        peel += 1;
    }
    (peel, n - 2 * peel)
}

fn abelianize_letters(letters: &[Letter], rank: Rank) -> AbelianVector {
    let mut coords = vec![0i64; rank.as_usize()];
    for l in letters {
        coords[(l.index - 1) as usize] += i64::from(l.sign());
    }
    AbelianVector(coords)
}

/// Output of [`Word::cyclic_reduce`].
///
/// With `raw` the core as it sits inside the word and `p = raw[..rotation]`,
/// the canonical core is `p^-1 · raw · p`, so
/// `word = (conjugator · p) · core · (conjugator · p)^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReduction {
    pub core: CyclicWord,
    pub conjugator: Word,
    pub rotation: usize,
    raw_core: Vec<Letter>,
}

impl CyclicReduction {
    /// The unrotated core as it appears inside the original word.
    pub fn raw_core(&self) -> &[Letter] {
        &self.raw_core
    }

    /// `c` with `word = c · core · c^-1`, `core` in canonical rotation.
    pub fn full_conjugator(&self) -> Word {
        let mut letters = self.conjugator.letters.clone();
        for &l in &self.raw_core[..self.rotation] {
            push_reduced(&mut letters, l);
        }
        Word {
            rank: self.conjugator.rank,
            letters,
        }
    }
}

/// Start index of the lexicographically least rotation of `s`.
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            Ordering::Equal => k += 1,
            Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j)
}

/// A conjugacy class, stored as its cyclically reduced representative in
/// least rotation. Two cyclic words are equal iff their letter sequences are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    rank: Rank,
    letters: Vec<Letter>,
}

/// Canonical rotation of a cyclically reduced letter sequence.
pub fn canonical_rotation(letters: &[Letter], rank: Rank) -> Result<CyclicWord> {
    check_letters(letters, rank)?;
    let reduced = letters.windows(2).all(|p| !p[0].cancels(p[1]));
    let wraps = letters.len() > 1 && letters[0].cancels(letters[letters.len() - 1]);
    if !reduced || wraps {
        return Err(Error::NotCyclicallyReduced);
    }
    let r = least_rotation(letters);
    let mut out = Vec::with_capacity(letters.len());
    out.extend_from_slice(&letters[r..]);
    out.extend_from_slice(&letters[..r]);
    Ok(CyclicWord { rank, letters: out })
}

impl CyclicWord {
    pub fn new(letters: &[Letter], rank: Rank) -> Result<Self> {
        canonical_rotation(letters, rank)
    }

    /// Cyclic word of the conjugacy class of `w`.
    pub fn of_word(w: &Word) -> Self {
        w.cyclic_reduce().core
    }

    /// Canonical form of an arbitrary freely reduced letter sequence.
    pub(crate) fn from_reduced(letters: &[Letter], rank: Rank) -> Self {
        let (peel, len) = cyclic_core_bounds(letters);
        let core = &letters[peel..peel + len];
        let r = least_rotation(core);
        let mut out = Vec::with_capacity(len);
        out.extend_from_slice(&core[r..]);
        out.extend_from_slice(&core[..r]);
        CyclicWord { rank, letters: out }
    }

    pub fn rank(&self) -> Rank {
        self.rank
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

    /// The canonical linearization as a [`Word`].
    pub fn to_word(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.clone(),
        }
    }

    pub fn abelianize(&self) -> AbelianVector {
        abelianize_letters(&self.letters, self.rank)
    }
}

/// Net exponent sum of each generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianVector(pub Vec<i64>);

impl AbelianVector {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &AbelianVector) -> Result<AbelianVector> {
        if self.0.len() != other.0.len() {
            return Err(Error::RankMismatch {
                left: self.0.len() as u32,
                right: other.0.len() as u32,
            });
        }
        Ok(AbelianVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// gcd of the absolute coordinates; 0 for the zero vector.
    pub fn content(&self) -> u64 {
        self.0.iter().fold(0u64, |g, &c| gcd(g, c.unsigned_abs()))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
