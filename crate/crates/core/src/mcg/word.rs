//! Words in a free group of finite rank.

use serde::{Deserialize, Serialize};

use super::McgError;

/// A generator or its inverse. Serialized as `[generator, ±1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(usize, i8)", try_from = "(usize, i8)")]
pub struct Letter {
    pub generator: usize,
    /// `+1` or `-1`.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Result<Self, McgError> {
        if exponent != 1 && exponent != -1 {
            return Err(McgError::BadExponent(exponent));
        }
        Ok(Letter {
            generator,
            exponent,
        })
    }

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

impl From<Letter> for (usize, i8) {
    fn from(l: Letter) -> Self {
        (l.generator, l.exponent)
    }
}

impl TryFrom<(usize, i8)> for Letter {
    type Error = McgError;

    fn try_from((g, e): (usize, i8)) -> Result<Self, Self::Error> {
        Letter::new(g, e)
    }
}

/// A freely reduced word: no letter is followed by its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

fn push_reduced(stack: &mut Vec<Letter>, l: Letter) {
    if stack.last() == Some(&l.inverse()) {
        stack.pop();
    } else {
        stack.push(l);
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(raw: &[Letter], rank: usize) -> Result<FreeWord, McgError> {
    let mut stack = Vec::with_capacity(raw.len());
    for &l in raw {
        if l.generator >= rank {
            return Err(McgError::GeneratorOutOfRange {
                generator: l.generator,
                rank,
            });
        }
        push_reduced(&mut stack, l);
    }
    Ok(FreeWord { letters: stack })
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord::default()
    }

    /// `g_i^k`.
    pub fn generator_power(generator: usize, k: i64) -> Self {
        let exponent = if k < 0 { -1 } else { 1 };
        FreeWord {
            letters: vec![Letter { generator, exponent }; k.unsigned_abs() as usize],
        }
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

    /// Largest generator index used plus one.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// Product `self · other`, reduced.
    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut stack = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut stack, l);
        }
        FreeWord { letters: stack }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Image under the automorphism `g_i -> g_i^{-1}` for every `i`.
    pub fn invert_letters(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().map(|l| l.inverse()).collect(),
        }
    }
}

/// Whether `w` commutes with `g_i`, decided by reducing `w g_i w^-1 g_i^-1`.
pub fn commutes_with_generator(w: &FreeWord, i: usize) -> bool {
    let g = FreeWord::generator_power(i, 1);
    w.concat(&g)
        .concat(&w.inverse())
        .concat(&g.inverse())
        .is_empty()
}

/// `Some(k)` iff `w = g_i^k` (with `k = 0` for the empty word).
pub fn is_power_of_generator(w: &FreeWord, i: usize) -> Option<i64> {
    let first = w.letters.first().copied();
    match first {
        None => Some(0),
        Some(l) if l.generator == i && w.letters.iter().all(|&m| m == l) => {
            Some(l.exponent as i64 * w.len() as i64)
        }
        _ => None,
    }
}

/// Every reduced word of length at most `max_len` over `rank` generators.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let alphabet: Vec<Letter> = (0..rank)
        .flat_map(|g| [Letter { generator: g, exponent: 1 }, Letter { generator: g, exponent: -1 }])
        .collect();
    let mut out = vec![FreeWord::empty()];
    let mut layer = vec![FreeWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.letters.last() == Some(&l.inverse()) {
                    continue;
                }
                let mut letters = w.letters.clone();
                letters.push(l);
                next.push(FreeWord { letters });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
