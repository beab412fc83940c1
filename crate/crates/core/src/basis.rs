//! Generation and basis tests for tuples of words via graph folding, the
//! abelian determinant filter, and completion of a primitive to a basis.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::text::{format_tuple, Syntax};
use crate::whitehead::Whitehead;
use crate::word::{Letter, Rank, Word};

/// An ordered list of words in a common rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordTuple {
    rank: Rank,
    words: Vec<Word>,
}

impl WordTuple {
    pub fn new(words: Vec<Word>, rank: Rank) -> Result<Self> {
        for w in &words {
            rank.check(w.rank())?;
        }
        Ok(WordTuple { rank, words })
    }

    pub fn standard_basis(rank: Rank) -> Self {
        WordTuple {
            rank,
            words: (1..=rank.get())
                .map(|j| Word::from_reduced_unchecked(vec![Letter::gen(j)], rank))
                .collect(),
        }
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }
}

impl std::fmt::Display for WordTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_tuple(&self.words, Syntax::Standard))
    }
}

/// A directed edge `from -label-> to`; reading `a_label^-1` traverses it backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub label: u32,
    pub to: usize,
}

/// The subdivided rose of a tuple: one closed path at vertex 0 per word.
/// Returns the vertex count and edge list.
pub fn petal_graph(t: &WordTuple) -> (usize, Vec<Edge>) {
    let mut vertices = 1;
    let mut edges = Vec::new();
    for w in t.words() {
        let mut at = 0;
        let n = w.len();
        for (k, &l) in w.letters().iter().enumerate() {
            let next = if k + 1 == n {
                0
            } else {
                vertices += 1;
                vertices - 1
            };
            let edge = if l.is_inverted() {
                Edge {
                    from: next,
                    label: l.index(),
                    to: at,
                }
            } else {
                Edge {
                    from: at,
                    label: l.index(),
                    to: next,
                }
            };
            edges.push(edge);
            at = next;
        }
    }
    (vertices, edges)
}

/// Union-find folding of a labeled graph. Adjacency is keyed by signed
/// label: `+j` follows an edge labeled `j` forwards, `-j` backwards.
struct Folder {
    parent: Vec<usize>,
    size: Vec<usize>,
    adjacency: Vec<BTreeMap<i64, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(vertices: usize) -> Self {
        Folder {
            parent: (0..vertices).collect(),
            size: vec![1; vertices],
            adjacency: vec![BTreeMap::new(); vertices],
            pending: Vec::new(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn link(&mut self, u: usize, label: i64, v: usize) {
        let u = self.find(u);
        let v = self.find(v);
        match self.adjacency[u].get(&label).copied() {
            Some(w) => {
                let w = self.find(w);
                if w != v {
                    self.pending.push((w, v));
                }
            }
            None => {
                self.adjacency[u].insert(label, v);
            }
        }
    }

    fn add_edge(&mut self, e: Edge) {
        let label = i64::from(e.label);
        self.link(e.from, label, e.to);
        self.link(e.to, -label, e.from);
        self.drain();
    }

    fn drain(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, gone) = if self.size[a] >= self.size[b] {
                (a, b)
            } else {
                (b, a)
            };
            self.parent[gone] = keep;
            self.size[keep] += self.size[gone];
            let moved = std::mem::take(&mut self.adjacency[gone]);
            for (label, target) in moved {
                self.link(keep, label, target);
            }
        }
    }
}

/// A folded, trimmed graph with base vertex 0. Each vertex has at most one
/// outgoing and one incoming edge per label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedGraph {
    rank: Rank,
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl FoldedGraph {
    /// Folds an arbitrary labeled graph on `vertices` vertices, base 0,
    /// processing edges in the given order, then trims hanging trees.
    pub fn fold_edges(rank: Rank, vertices: usize, edges: &[Edge]) -> Self {
        let mut folder = Folder::new(vertices.max(1));
        for &e in edges {
            folder.add_edge(e);
        }
        let mut roots: Vec<usize> = (0..folder.parent.len())
            .filter(|&v| folder.find(v) == v)
            .collect();
        let base = folder.find(0);
        roots.retain(|&v| v != base);
        roots.insert(0, base);
        let index: BTreeMap<usize, usize> =
            roots.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out = Vec::new();
        for &v in &roots {
            let adjacency: Vec<(i64, usize)> =
                folder.adjacency[v].iter().map(|(&l, &t)| (l, t)).collect();
            for (label, target) in adjacency {
                if label > 0 {
                    let t = folder.find(target);
                    out.push(Edge {
                        from: index[&v],
                        label: label as u32,
                        to: index[&t],
                    });
                }
            }
        }
        out.sort();
        out.dedup();
        FoldedGraph {
            rank,
            vertex_count: roots.len(),
            edges: out,
        }
        .trimmed()
    }

    /// Repeatedly removes non-base vertices of degree one, then compacts.
    fn trimmed(self) -> Self {
        let mut alive = vec![true; self.vertex_count];
        let mut edges = self.edges;
        loop {
            let mut degree = vec![0usize; self.vertex_count];
            for e in &edges {
                degree[e.from] += 1;
                degree[e.to] += 1;
            }
            let hanging: Vec<usize> = (1..self.vertex_count)
                .filter(|&v| alive[v] && degree[v] <= 1)
                .collect();
            if hanging.is_empty() {
                break;
            }
            for v in hanging {
                alive[v] = false;
            }
            edges.retain(|e| alive[e.from] && alive[e.to]);
        }
        let mut remap = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for v in 0..self.vertex_count {
            if alive[v] {
                remap[v] = count;
                count += 1;
            }
        }
        for e in &mut edges {
            e.from = remap[e.from];
            e.to = remap[e.to];
        }
        edges.sort();
        FoldedGraph {
            rank: self.rank,
            vertex_count: count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// One vertex carrying exactly one loop for each generator.
    pub fn is_full_bouquet(&self) -> bool {
        self.vertex_count == 1
            && self.edges.len() == self.rank.as_usize()
            && self
                .edges
                .iter()
                .enumerate()
                .all(|(i, e)| e.label as usize == i + 1)
    }

    fn step(&self, v: usize, l: Letter) -> Option<usize> {
        if l.is_inverted() {
            self.edges
                .iter()
                .find(|e| e.to == v && e.label == l.index())
                .map(|e| e.from)
        } else {
            self.edges
                .iter()
                .find(|e| e.from == v && e.label == l.index())
                .map(|e| e.to)
        }
    }

    /// Whether `w` reads a closed path at the base vertex, i.e. lies in the
    /// subgroup the graph represents.
    pub fn accepts(&self, w: &Word) -> bool {
        let mut at = 0;
        for &l in w.letters() {
            match self.step(at, l) {
                Some(next) => at = next,
                None => return false,
            }
        }
        at == 0
    }

    /// Edge list relabeled by breadth-first discovery from the base, with
    /// signed labels visited in order `+1, -1, +2, -2, ...`. Isomorphic
    /// based graphs have equal signatures.
    pub fn signature(&self) -> Vec<Edge> {
        let mut order = vec![usize::MAX; self.vertex_count];
        if self.vertex_count == 0 {
            return Vec::new();
        }
        let mut queue = VecDeque::from([0usize]);
        order[0] = 0;
        let mut next_id = 1;
        while let Some(v) = queue.pop_front() {
            for index in 1..=self.rank.get() {
                for inverted in [false, true] {
                    if let Some(t) = self.step(v, Letter::new(index, inverted)) {
                        if order[t] == usize::MAX {
                            order[t] = next_id;
                            next_id += 1;
                            queue.push_back(t);
                        }
                    }
                }
            }
        }
        let mut sig: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                from: order[e.from],
                label: e.label,
                to: order[e.to],
            })
            .collect();
        sig.sort();
        sig
    }

    /// Plain `vertex -label-> vertex` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} -{}-> {}", e.from, e.label, e.to);
        }
        out
    }
}

pub fn fold(t: &WordTuple) -> FoldedGraph {
    let (vertices, edges) = petal_graph(t);
    FoldedGraph::fold_edges(t.rank(), vertices, &edges)
}

pub fn is_generating(t: &WordTuple) -> bool {
    fold(t).is_full_bouquet()
}

/// `n` words generating `F_n` form a basis.
pub fn is_basis(t: &WordTuple) -> bool {
    t.len() == t.rank().as_usize() && is_generating(t)
}

/// Whether the integer matrix of abelianizations has determinant `±1`.
/// Necessary for `t` to be a basis.
pub fn abelian_det_filter(t: &WordTuple) -> Result<bool> {
    let n = t.rank().as_usize();
    if t.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: t.len(),
        });
    }
    let matrix: Vec<Vec<BigInt>> = t
        .words()
        .iter()
        .map(|w| {
            w.abelianize()
                .coords()
                .iter()
                .map(|&c| BigInt::from(c))
                .collect()
        })
        .collect();
    let det = determinant(matrix);
    Ok(det == BigInt::from(1) || det == BigInt::from(-1))
}

/// Fraction-free Gaussian elimination.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let zero = BigInt::from(0);
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if m[k][k] == zero {
            match (k + 1..n).find(|&i| m[i][k] != zero) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    prev * sign
}

/// A basis whose first entry is `w` itself.
///
/// The minimization chain `φ` carries the cyclic core `x` of `w` to a letter
/// `y`, with `φ(x) = d·y·d^-1`. The standard basis with `y` in place of its
/// generator, conjugated by `d` and pulled back through `φ^-1`, is a basis
/// containing `x`; conjugating by `w`'s own conjugator gives one containing `w`.
pub fn complete_to_basis(w: &Word) -> Result<WordTuple> {
    let rank = w.rank();
    let whitehead = Whitehead::new(rank);
    let verdict = whitehead.is_primitive(w)?;
    if !verdict.primitive {
        return Err(Error::NotPrimitive(w.to_string()));
    }
    let reduction = w.cyclic_reduce();
    let c = reduction.full_conjugator();
    let x = reduction.core.to_word();
    let chain = verdict.witness.chain();
    let image = chain.apply_to_word(&x)?;
    let image_reduction = image.cyclic_reduce();
    let y = image_reduction.core.letters()[0];
    let d = image_reduction.full_conjugator();

    let back = chain.inverse();
    let conjugator = c.clone();
    let mut words = Vec::with_capacity(rank.as_usize());
    let mut position = 0;
    for j in 1..=rank.get() {
        let generator = if j == y.index() {
            position = words.len();
            Word::from_reduced_unchecked(vec![y], rank)
        } else {
            Word::from_reduced_unchecked(vec![Letter::gen(j)], rank)
        };
        let entry = back
            .apply_to_word(&generator.conjugate_by(&d)?)?
            .conjugate_by(&conjugator)?;
        words.push(entry);
    }
    let first = words.remove(position);
    words.insert(0, first);
    let tuple = WordTuple::new(words, rank)?;

    if tuple.words()[0] != *w {
        return Err(Error::Verification(format!(
            "completion of {w} produced first entry {}",
            tuple.words()[0]
        )));
    }
    if !is_basis(&tuple) {
        return Err(Error::Verification(format!(
            "completion of {w} is not a basis: {tuple}"
        )));
    }
    Ok(tuple)
}
