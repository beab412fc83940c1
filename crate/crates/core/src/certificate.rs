//! JSON certificates for minimizations and basis completions, and their
//! independent re-verification.

use serde::{Deserialize, Serialize};

use crate::automorphism::WhiteheadAut;
use crate::basis::{is_basis, WordTuple};
use crate::error::{Error, Result};
use crate::text::{parse_word, Syntax};
use crate::whitehead::{MinimizationResult, Whitehead};
use crate::word::{CyclicWord, Rank, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Strict descent of the cyclic core of `input` down to `minimal`.
    /// `lengths[k]` is the cyclic length after `moves[k]`.
    Minimization {
        rank: u32,
        input: String,
        moves: Vec<String>,
        lengths: Vec<usize>,
        minimal: String,
    },
    /// `basis` is a basis of the free group and contains `input`.
    Basis {
        rank: u32,
        input: String,
        basis: Vec<String>,
    },
}

/// What a successfully checked certificate establishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Checked {
    Minimization { minimal_length: usize },
    Basis,
}

impl Certificate {
    pub fn minimization(input: &Word, result: &MinimizationResult) -> Self {
        Certificate::Minimization {
            rank: input.rank().get(),
            input: input.to_string(),
            moves: result.steps.iter().map(|s| s.aut.to_string()).collect(),
            lengths: result.steps.iter().map(|s| s.length).collect(),
            minimal: result.minimal.to_string(),
        }
    }

    pub fn basis(input: &Word, basis: &WordTuple) -> Self {
        Certificate::Basis {
            rank: input.rank().get(),
            input: input.to_string(),
            basis: basis.words().iter().map(Word::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Certificate(e.to_string()))
    }

    /// Replays the certificate from scratch. Any inconsistency is an error.
    pub fn check(&self) -> Result<Checked> {
        match self {
            Certificate::Minimization {
                rank,
                input,
                moves,
                lengths,
                minimal,
            } => {
                let rank = Rank::new(*rank)?;
                let input = parse_word(input, rank, Syntax::Standard)?;
                let minimal = CyclicWord::of_word(&parse_word(minimal, rank, Syntax::Standard)?);
                if moves.len() != lengths.len() {
                    return Err(Error::Certificate(format!(
                        "{} moves but {} lengths",
                        moves.len(),
                        lengths.len()
                    )));
                }
                let mut current = CyclicWord::of_word(&input);
                for (k, (text, &claimed)) in moves.iter().zip(lengths).enumerate() {
                    let aut = WhiteheadAut::parse(text, rank)?;
                    let next = aut.apply_to_cyclic(&current)?;
                    if next.len() != claimed {
                        return Err(Error::Certificate(format!(
                            "step {k}: claimed length {claimed}, replay gives {}",
                            next.len()
                        )));
                    }
                    if next.len() >= current.len() {
                        return Err(Error::Certificate(format!(
                            "step {k}: length {} does not drop below {}",
                            next.len(),
                            current.len()
                        )));
                    }
                    current = next;
                }
                if current != minimal {
                    return Err(Error::Certificate(format!(
                        "replay ends at {current}, certificate claims {minimal}"
                    )));
                }
                if Whitehead::new(rank).has_reducing_move(&minimal) {
                    return Err(Error::Certificate(format!(
                        "{minimal} is not a fixed point: some Whitehead move shortens it"
                    )));
                }
                Ok(Checked::Minimization {
                    minimal_length: minimal.len(),
                })
            }
            Certificate::Basis { rank, input, basis } => {
                let rank = Rank::new(*rank)?;
                let input = parse_word(input, rank, Syntax::Standard)?;
                let words = basis
                    .iter()
                    .map(|b| parse_word(b, rank, Syntax::Standard))
                    .collect::<Result<Vec<_>>>()?;
                let tuple = WordTuple::new(words, rank)?;
                if !tuple.contains(&input) {
                    return Err(Error::Certificate(format!(
                        "{input} is not listed in the basis"
                    )));
                }
                if !is_basis(&tuple) {
                    return Err(Error::Certificate(format!("{tuple} is not a basis")));
                }
                Ok(Checked::Basis)
            }
        }
    }
}
