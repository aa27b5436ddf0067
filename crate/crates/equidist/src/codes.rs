//! Words and codes in q-ary Hamming space.
//!
//! A `Word` is a length-n vector over the alphabet {0, …, q−1}; a `Code` is a
//! duplicate-free set of words sharing (q, n). Pairwise-distance statistics
//! are computed once on demand and cached.

use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    q: u32,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Word> {
        if q < 2 {
            return Err(Error::InvalidWord { reason: format!("alphabet size {q} < 2") });
        }
        if symbols.is_empty() {
            return Err(Error::InvalidWord { reason: "empty word".into() });
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidWord { reason: format!("symbol {bad} not below q={q}") });
        }
        Ok(Word { q, symbols })
    }

    pub fn zero(q: u32, n: usize) -> Result<Word> {
        Word::new(q, vec![0; n])
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    /// 1-based positions of nonzero symbols.
    pub fn support(&self) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Bit-packed form for binary words: one bit per coordinate.
    pub fn packed_bits(&self) -> Option<Vec<u64>> {
        if self.q != 2 {
            return None;
        }
        let mut blocks = vec![0u64; self.symbols.len().div_ceil(64)];
        for (i, &s) in self.symbols.iter().enumerate() {
            if s != 0 {
                blocks[i / 64] |= 1 << (i % 64);
            }
        }
        Some(blocks)
    }
}

/// Number of coordinates where x and y differ.
pub fn hamming_distance(x: &Word, y: &Word) -> Result<usize> {
    if x.q != y.q || x.n() != y.n() {
        return Err(Error::ShapeMismatch {
            reason: format!(
                "({}, {}) vs ({}, {})",
                x.q,
                x.n(),
                y.q,
                y.n()
            ),
        });
    }
    Ok(x.symbols
        .iter()
        .zip(&y.symbols)
        .filter(|(a, b)| a != b)
        .count())
}

/// Popcount distance on packed binary words; agrees with `hamming_distance`.
pub fn hamming_distance_packed(x: &[u64], y: &[u64]) -> usize {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a ^ b).count_ones() as usize)
        .sum()
}

/// 2·|x ∩ y|_q = 2k − d_H(x, y) for words of equal weight k.
///
/// The q-ary intersection size may be a half-integer, so the doubled value is
/// returned; callers halve it when it is even.
pub fn q_intersection_doubled(x: &Word, y: &Word) -> Result<usize> {
    let (wx, wy) = (x.weight(), y.weight());
    if wx != wy {
        return Err(Error::WeightMismatch { left: wx, right: wy });
    }
    Ok(2 * wx - hamming_distance(x, y)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceProfile {
    distances: Vec<usize>,
}

impl DistanceProfile {
    /// Sorted distinct pairwise distances.
    pub fn distances(&self) -> &[usize] {
        &self.distances
    }

    /// Number of distinct pairwise distances (the s of an s-code).
    pub fn s(&self) -> usize {
        self.distances.len()
    }
}

/// Equidistance verdict for a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equidistance {
    /// Fewer than two words: no pairwise distance exists.
    Degenerate,
    /// All pairwise distances equal this value.
    Equidistant(usize),
    /// At least two distinct pairwise distances.
    Not,
}

impl Equidistance {
    pub fn distance(&self) -> Option<usize> {
        match self {
            Equidistance::Equidistant(d) => Some(*d),
            _ => None,
        }
    }
}

#[derive(Debug)]
pub struct Code {
    q: u32,
    n: usize,
    words: Vec<Word>,
    profile: OnceLock<DistanceProfile>,
}

impl Clone for Code {
    fn clone(&self) -> Self {
        Code {
            q: self.q,
            n: self.n,
            words: self.words.clone(),
            profile: self.profile.clone(),
        }
    }
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && self.words == other.words
    }
}

impl Eq for Code {}

impl Code {
    /// Build a code from distinct words sharing (q, n). Input order is not
    /// semantic; words are stored sorted.
    pub fn new(q: u32, n: usize, words: Vec<Word>) -> Result<Code> {
        if q < 2 || n == 0 {
            return Err(Error::InvalidParameters {
                reason: format!("need q >= 2 and n >= 1, got q={q} n={n}"),
            });
        }
        for w in &words {
            if w.q != q || w.n() != n {
                return Err(Error::ShapeMismatch {
                    reason: format!("word with (q={}, n={}) in (q={q}, n={n}) code", w.q, w.n()),
                });
            }
        }
        let mut words = words;
        words.sort();
        if words.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateWord);
        }
        Ok(Code { q, n, words, profile: OnceLock::new() })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    pub fn distance_profile(&self) -> &DistanceProfile {
        self.profile.get_or_init(|| {
            let mut seen = std::collections::BTreeSet::new();
            for i in 0..self.words.len() {
                for j in i + 1..self.words.len() {
                    let d = hamming_distance(&self.words[i], &self.words[j])
                        .expect("words in one code share shape");
                    seen.insert(d);
                }
            }
            DistanceProfile { distances: seen.into_iter().collect() }
        })
    }

    /// Full multiset of pairwise distances, sorted.
    pub fn distance_multiset(&self) -> Vec<usize> {
        let mut all = Vec::new();
        for i in 0..self.words.len() {
            for j in i + 1..self.words.len() {
                all.push(
                    hamming_distance(&self.words[i], &self.words[j])
                        .expect("words in one code share shape"),
                );
            }
        }
        all.sort_unstable();
        all
    }

    pub fn is_equidistant(&self) -> Equidistance {
        if self.words.len() <= 1 {
            return Equidistance::Degenerate;
        }
        let profile = self.distance_profile();
        match profile.distances() {
            [d] => Equidistance::Equidistant(*d),
            _ => Equidistance::Not,
        }
    }

    /// Reindex coordinates: position i moves to position σ[i] (0-based).
    pub fn permute_coordinates(&self, sigma: &[usize]) -> Result<Code> {
        if sigma.len() != self.n {
            return Err(Error::InvalidPermutation {
                reason: format!("length {} for n={}", sigma.len(), self.n),
            });
        }
        let mut seen = vec![false; self.n];
        for &img in sigma {
            if img >= self.n || seen[img] {
                return Err(Error::InvalidPermutation {
                    reason: "not a bijection on coordinates".into(),
                });
            }
            seen[img] = true;
        }
        let words = self
            .words
            .iter()
            .map(|w| {
                let mut symbols = vec![0u32; self.n];
                for (i, &s) in w.symbols.iter().enumerate() {
                    symbols[sigma[i]] = s;
                }
                Word { q: self.q, symbols }
            })
            .collect();
        Code::new(self.q, self.n, words)
    }

    /// Apply a symbol permutation τ at one coordinate (0-based) in every word.
    pub fn permute_symbols(&self, coord: usize, tau: &[u32]) -> Result<Code> {
        if coord >= self.n {
            return Err(Error::InvalidPermutation {
                reason: format!("coordinate {coord} out of range for n={}", self.n),
            });
        }
        if tau.len() != self.q as usize {
            return Err(Error::InvalidPermutation {
                reason: format!("symbol map length {} for q={}", tau.len(), self.q),
            });
        }
        let mut seen = vec![false; self.q as usize];
        for &img in tau {
            if img >= self.q || seen[img as usize] {
                return Err(Error::InvalidPermutation {
                    reason: "not a bijection on the alphabet".into(),
                });
            }
            seen[img as usize] = true;
        }
        let words = self
            .words
            .iter()
            .map(|w| {
                let mut symbols = w.symbols.clone();
                symbols[coord] = tau[symbols[coord] as usize];
                Word { q: self.q, symbols }
            })
            .collect();
        Code::new(self.q, self.n, words)
    }

    /// Equivalent code containing the all-zero word: at each coordinate, swap
    /// symbol 0 with c's symbol there. c must be a codeword.
    pub fn translate_to_zero(&self, c: &Word) -> Result<Code> {
        if !self.contains(c) {
            return Err(Error::WordNotInCode);
        }
        let mut out = self.clone();
        for (i, &s) in c.symbols.iter().enumerate() {
            if s != 0 {
                let mut tau: Vec<u32> = (0..self.q).collect();
                tau.swap(0, s as usize);
                out = out.permute_symbols(i, &tau)?;
            }
        }
        Ok(out)
    }

    /// Wire format `{"q": .., "n": .., "words": [[..], ..]}`. Word order in
    /// the array carries no meaning.
    pub fn to_json(&self) -> String {
        let wire = CodeWire {
            q: self.q,
            n: self.n,
            words: self.words.iter().map(|w| w.symbols.clone()).collect(),
        };
        serde_json::to_string_pretty(&wire).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Code> {
        let wire: CodeWire = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameters { reason: format!("bad code JSON: {e}") })?;
        let words = wire
            .words
            .into_iter()
            .map(|symbols| Word::new(wire.q, symbols))
            .collect::<Result<Vec<Word>>>()?;
        Code::new(wire.q, wire.n, words)
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct CodeWire {
    q: u32,
    n: usize,
    words: Vec<Vec<u32>>,
}
