//! Exhaustive maximum-equidistant-code search.
//!
//! After fixing the all-zero word, every remaining word of an equidistant
//! code with distance d has weight exactly d, so the problem reduces to a
//! maximum clique in the compatibility graph on weight-d words (edge iff
//! pairwise distance d). The solver is a deterministic branch-and-bound over
//! lexicographically sorted candidates, seeded with the library's
//! constructions and pruned globally by [`best_bound`].

use crate::bounds::{best_bound, BestBound};
use crate::codes::{Code, Word};
use crate::constructions::{kernel_sunflower_code, simplex_linear_code};
use crate::error::{Error, Result};

/// Hard cap on the reduced search space (number of weight-d words).
pub const CANDIDATE_CAP: u64 = 1 << 24;

/// Adjacency bitsets are refused beyond this many bits (512 MiB).
const ADJACENCY_BIT_CAP: u128 = 1 << 32;

/// Default node budget used by the CLI.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: Code,
    pub explored_nodes: u64,
    pub proven_optimal: bool,
    pub budget_exhausted: bool,
}

fn check_params(n: usize, q: u32, d: usize) -> Result<()> {
    if q < 2 || n == 0 || d == 0 || d > n {
        return Err(Error::InvalidParameters {
            reason: format!("need q >= 2 and 1 <= d <= n, got n={n} q={q} d={d}"),
        });
    }
    Ok(())
}

fn candidate_count(n: usize, q: u32, d: usize) -> Option<u128> {
    let mut binom: u128 = 1;
    for i in 0..d {
        binom = binom.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    let mut count = binom;
    for _ in 0..d {
        count = count.checked_mul((q - 1) as u128)?;
    }
    Some(count)
}

/// All weight-d words of H_q^n in lexicographic order.
pub fn candidate_words(n: usize, q: u32, d: usize) -> Result<Vec<Word>> {
    check_params(n, q, d)?;
    let count = candidate_count(n, q, d).unwrap_or(u128::MAX);
    if count > CANDIDATE_CAP as u128 {
        return Err(Error::CapExceeded {
            what: "candidate vertices",
            value: count,
            cap: CANDIDATE_CAP as u128,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = Vec::with_capacity(n);
    gen_candidates(n, q, d, 0, &mut cur, &mut out);
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

fn gen_candidates(n: usize, q: u32, d: usize, used: usize, cur: &mut Vec<u32>, out: &mut Vec<Word>) {
    if used == d {
        let mut symbols = cur.clone();
        symbols.resize(n, 0);
        out.push(Word::new(q, symbols).expect("valid by construction"));
        return;
    }
    let remaining = n - cur.len();
    // zero first keeps the emission lexicographic
    if remaining > d - used {
        cur.push(0);
        gen_candidates(n, q, d, used, cur, out);
        cur.pop();
    }
    for s in 1..q {
        cur.push(s);
        gen_candidates(n, q, d, used + 1, cur, out);
        cur.pop();
    }
}

/// One byte per symbol, little-endian within each u64 block.
fn pack(words: &[Word], stride: usize) -> Vec<u64> {
    let mut packed = vec![0u64; words.len() * stride];
    for (wi, w) in words.iter().enumerate() {
        for (i, &s) in w.symbols().iter().enumerate() {
            packed[wi * stride + i / 8] |= (s as u64) << (8 * (i % 8));
        }
    }
    packed
}

#[inline]
fn packed_distance(a: &[u64], b: &[u64]) -> u32 {
    const LOW7: u64 = 0x7f7f7f7f7f7f7f7f;
    const HIGH: u64 = 0x8080808080808080;
    let mut t = 0;
    for (x, y) in a.iter().zip(b) {
        let x = x ^ y;
        t += ((((x & LOW7) + LOW7) | x) & HIGH).count_ones();
    }
    t
}

/// Clique indices of the best library construction embedded in the
/// candidate list, or empty when none applies.
fn seed_clique(n: usize, q: u32, d: usize, candidates: &[Word]) -> Vec<u32> {
    let mut best: Vec<u32> = Vec::new();
    let mut consider = |code: Code| {
        let mut indices = Vec::new();
        for w in code.words() {
            if w.weight() == 0 {
                continue;
            }
            let mut symbols = w.symbols().to_vec();
            symbols.resize(n, 0);
            match candidates.binary_search_by(|c| c.symbols().cmp(&symbols[..])) {
                Ok(i) => indices.push(i as u32),
                Err(_) => return,
            }
        }
        if indices.len() > best.len() {
            indices.sort_unstable();
            best = indices;
        }
    };
    if d % 2 == 0 && d >= 2 {
        if let Ok(code) = kernel_sunflower_code(n, d, q) {
            consider(code);
        }
    }
    let mut size: u64 = q as u64;
    for k in 1..=24u32 {
        let head = (size - 1) / (q as u64 - 1);
        if head as usize > n || size > (q as u64).saturating_pow(24) {
            break;
        }
        if (q as u64).pow(k - 1) == d as u64 && head >= 1 {
            if let Ok(code) = simplex_linear_code(q, k) {
                consider(code);
            }
        }
        size = match size.checked_mul(q as u64) {
            Some(s) => s,
            None => break,
        };
    }
    best
}

fn build_adjacency(candidates: &[Word], n: usize, d: usize) -> Result<(Vec<u64>, usize)> {
    let v = candidates.len();
    let bits = (v as u128) * (v as u128);
    if bits > ADJACENCY_BIT_CAP {
        return Err(Error::CapExceeded { what: "adjacency bits", value: bits, cap: ADJACENCY_BIT_CAP });
    }
    let stride = n.div_ceil(8);
    let packed = pack(candidates, stride);
    let w = v.div_ceil(64);
    let mut adj = vec![0u64; v * w];
    for i in 0..v {
        for j in i + 1..v {
            let dist = packed_distance(
                &packed[i * stride..(i + 1) * stride],
                &packed[j * stride..(j + 1) * stride],
            );
            if dist == d as u32 {
                adj[i * w + j / 64] |= 1 << (j % 64);
                adj[j * w + i / 64] |= 1 << (i % 64);
            }
        }
    }
    Ok((adj, w))
}

fn full_bitset(v: usize, w: usize) -> Vec<u64> {
    let mut all = vec![u64::MAX; w];
    if v % 64 != 0 {
        all[w - 1] = (1u64 << (v % 64)) - 1;
    }
    all
}

/// p ∩ adj[v] restricted to indices above v.
fn shrink(p: &[u64], adj: &[u64], w: usize, v: u32) -> Vec<u64> {
    let word_idx = v as usize / 64;
    let row = &adj[v as usize * w..(v as usize + 1) * w];
    let mut out = vec![0u64; w];
    for k in word_idx..w {
        let mut x = p[k] & row[k];
        if k == word_idx {
            x &= u64::MAX.checked_shl(v % 64 + 1).unwrap_or(0);
        }
        out[k] = x;
    }
    out
}

fn set_bits(p: &[u64]) -> impl Iterator<Item = u32> + '_ {
    p.iter().enumerate().flat_map(|(k, &word)| {
        std::iter::successors(Some(word), |&b| (b > 1).then(|| b & (b - 1)))
            .take_while(|&b| b != 0)
            .map(move |b| (k * 64) as u32 + b.trailing_zeros())
    })
}

struct Ctx<'a> {
    adj: &'a [u64],
    w: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    done: bool,
    target: usize,
    best: Vec<u32>,
    chosen: Vec<u32>,
}

impl Ctx<'_> {
    fn expand(&mut self, p: &[u64]) {
        let mut remaining: usize = p.iter().map(|b| b.count_ones() as usize).sum();
        let mut child: Option<Vec<u64>> = None;
        for word_idx in 0..self.w {
            let mut bits = p[word_idx];
            while bits != 0 {
                if self.done || self.exhausted {
                    return;
                }
                if self.chosen.len() + remaining <= self.best.len() {
                    return;
                }
                let bit = bits.trailing_zeros();
                bits &= bits - 1;
                let v = (word_idx * 64 + bit as usize) as u32;
                if self.nodes >= self.budget {
                    self.exhausted = true;
                    return;
                }
                self.nodes += 1;
                self.chosen.push(v);
                if self.chosen.len() > self.best.len() {
                    self.best = self.chosen.clone();
                    if self.best.len() >= self.target {
                        self.done = true;
                        self.chosen.pop();
                        return;
                    }
                }
                let row = &self.adj[v as usize * self.w..(v as usize + 1) * self.w];
                let buf = child.get_or_insert_with(|| vec![0u64; self.w]);
                let mut nonempty = false;
                // restrict to indices above v; ascending order makes each
                // clique appear exactly once
                for k in 0..self.w {
                    let mut x = p[k] & row[k];
                    if k < word_idx {
                        x = 0;
                    } else if k == word_idx {
                        x &= u64::MAX.checked_shl(bit + 1).unwrap_or(0);
                    }
                    buf[k] = x;
                    nonempty |= x != 0;
                }
                if nonempty {
                    let owned = child.take().unwrap();
                    self.expand(&owned);
                    child = Some(owned);
                }
                self.chosen.pop();
                remaining -= 1;
            }
        }
    }
}

/// Maximum size of an equidistant code in H_q^n with pairwise distance
/// exactly d. Deterministic; stops early either when the incumbent meets
/// [`best_bound`] (proof by matching bound) or when the node budget runs out
/// (incumbent returned, `proven_optimal` false).
pub fn max_equidistant(n: usize, q: u32, d: usize, budget: u64) -> Result<SearchResult> {
    check_params(n, q, d)?;
    let bound = best_bound(n as u64, q, d as u64)?;
    let candidates = candidate_words(n, q, d)?;
    let v = candidates.len();
    let finish = |clique: &[u32], nodes, proven, exhausted| -> Result<SearchResult> {
        let mut words = vec![Word::zero(q, n)?];
        words.extend(clique.iter().map(|&i| candidates[i as usize].clone()));
        let witness = Code::new(q, n, words)?;
        debug_assert!(witness.size() < 2 || witness.is_equidistant().distance() == Some(d));
        Ok(SearchResult {
            optimum: clique.len() + 1,
            witness,
            explored_nodes: nodes,
            proven_optimal: proven,
            budget_exhausted: exhausted,
        })
    };

    let seed = seed_clique(n, q, d, &candidates);
    if seed.len() + 1 >= bound.minimum as usize {
        return finish(&seed, 0, true, false);
    }
    if bound.minimum <= 2 {
        // a single candidate next to zero always realizes size 2
        return finish(&[0], 0, true, false);
    }

    let (adj, w) = build_adjacency(&candidates, n, d)?;
    let all = full_bitset(v, w);
    let mut ctx = Ctx {
        adj: &adj,
        w,
        nodes: 0,
        budget,
        exhausted: false,
        done: false,
        target: bound.minimum as usize - 1,
        best: seed,
        chosen: Vec::new(),
    };
    ctx.expand(&all);
    let proven = ctx.done || !ctx.exhausted;
    finish(&ctx.best, ctx.nodes, proven, ctx.exhausted)
}

struct Decider<'a> {
    adj: &'a [u64],
    w: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
    found: bool,
}

impl Decider<'_> {
    /// Any clique of `need` vertices inside p?
    fn decide(&mut self, p: &[u64], need: usize) {
        if need == 0 {
            self.found = true;
            return;
        }
        let mut remaining: usize = p.iter().map(|b| b.count_ones() as usize).sum();
        for v in set_bits(p) {
            if self.found || self.exhausted || remaining < need {
                return;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return;
            }
            self.nodes += 1;
            self.decide(&shrink(p, self.adj, self.w, v), need - 1);
            remaining -= 1;
        }
    }
}

/// Like [`max_equidistant`], but the witness is the lexicographically least
/// optimal code: candidates are pinned smallest-first, each pin validated by
/// a decision search for an optimal clique above it. Falls back to the plain
/// witness (with `budget_exhausted` set) when the budget runs out during
/// canonicalization.
pub fn max_equidistant_canonical(n: usize, q: u32, d: usize, budget: u64) -> Result<SearchResult> {
    let base = max_equidistant(n, q, d, budget)?;
    if !base.proven_optimal {
        return Ok(base);
    }
    let candidates = candidate_words(n, q, d)?;
    let finish = |clique: &[u32], nodes| -> Result<SearchResult> {
        let mut words = vec![Word::zero(q, n)?];
        words.extend(clique.iter().map(|&i| candidates[i as usize].clone()));
        Ok(SearchResult {
            optimum: clique.len() + 1,
            witness: Code::new(q, n, words)?,
            explored_nodes: nodes,
            proven_optimal: true,
            budget_exhausted: false,
        })
    };
    let m = base.optimum - 1;
    if m <= 1 {
        return finish(&[0][..m], base.explored_nodes);
    }
    let (adj, w) = build_adjacency(&candidates, n, d)?;
    let mut p = full_bitset(candidates.len(), w);
    let mut prefix: Vec<u32> = Vec::new();
    let mut nodes = base.explored_nodes;
    'pin: while prefix.len() < m {
        let need = m - prefix.len() - 1;
        let order: Vec<u32> = set_bits(&p).collect();
        for v in order {
            let below = shrink(&p, &adj, w, v);
            let mut dec = Decider {
                adj: &adj,
                w,
                nodes: 0,
                budget: budget.saturating_sub(nodes),
                exhausted: false,
                found: false,
            };
            dec.decide(&below, need);
            nodes = nodes.saturating_add(dec.nodes);
            if dec.exhausted {
                return Ok(SearchResult {
                    explored_nodes: nodes,
                    budget_exhausted: true,
                    ..base
                });
            }
            if dec.found {
                prefix.push(v);
                p = below;
                continue 'pin;
            }
        }
        unreachable!("a proven optimum always admits a witness");
    }
    finish(&prefix, nodes)
}

#[derive(Debug, Clone)]
pub struct TightnessReport {
    pub n: usize,
    pub q: u32,
    pub d: usize,
    pub optimum: usize,
    pub proven_optimal: bool,
    pub bound: BestBound,
    pub gap: u64,
    pub matches: Option<&'static str>,
}

/// Compare the search optimum against the best bound and recognize witnesses
/// that coincide with a library construction (same size and distance
/// multiset).
pub fn tightness_report(n: usize, q: u32, d: usize, budget: u64) -> Result<TightnessReport> {
    let result = max_equidistant(n, q, d, budget)?;
    let bound = best_bound(n as u64, q, d as u64)?;
    let witness_profile = (result.witness.size(), result.witness.distance_multiset());
    let mut matches = None;
    let mut probe = |name: &'static str, code: Code| {
        if matches.is_none() && (code.size(), code.distance_multiset()) == witness_profile {
            matches = Some(name);
        }
    };
    let mut size: u64 = q as u64;
    for k in 1..=24u32 {
        let head = ((size - 1) / (q as u64 - 1)) as usize;
        if head > n {
            break;
        }
        if (q as u64).pow(k - 1) == d as u64 {
            if let Ok(code) = simplex_linear_code(q, k) {
                let padded: Vec<Word> = code
                    .words()
                    .iter()
                    .map(|w| {
                        let mut s = w.symbols().to_vec();
                        s.resize(n, 0);
                        Word::new(q, s).unwrap()
                    })
                    .collect();
                probe("simplex", Code::new(q, n, padded)?);
            }
        }
        size = match size.checked_mul(q as u64) {
            Some(s) => s,
            None => break,
        };
    }
    if d % 2 == 0 && d >= 2 && d <= n {
        probe("sunflower", kernel_sunflower_code(n, d, q)?);
    }
    Ok(TightnessReport {
        n,
        q,
        d,
        optimum: result.optimum,
        proven_optimal: result.proven_optimal,
        gap: bound.minimum - result.optimum as u64,
        bound,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hamming_distance, Equidistance};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn solve(n: usize, q: u32, d: usize) -> SearchResult {
        let r = max_equidistant(n, q, d, DEFAULT_BUDGET).unwrap();
        assert!(r.proven_optimal, "({n},{q},{d}) should be provable");
        r
    }

    #[test]
    fn candidate_enumeration() {
        let words = candidate_words(4, 3, 2).unwrap();
        assert_eq!(words.len(), 6 * 4); // C(4,2) * 2^2
        assert!(words.windows(2).all(|w| w[0].symbols() < w[1].symbols()));
        assert!(words.iter().all(|w| w.weight() == 2));
        assert!(matches!(
            candidate_words(30, 2, 15),
            Err(Error::CapExceeded { what: "candidate vertices", .. })
        ));
    }

    #[test]
    fn packed_distance_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1usize..=20);
            let q = rng.gen_range(2u32..=5);
            let a = Word::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect()).unwrap();
            let b = Word::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect()).unwrap();
            let stride = n.div_ceil(8);
            let packed = pack(&[a.clone(), b.clone()], stride);
            assert_eq!(
                packed_distance(&packed[..stride], &packed[stride..]) as usize,
                hamming_distance(&a, &b).unwrap()
            );
        }
    }

    #[test]
    fn known_optima() {
        let r = solve(7, 2, 4);
        assert_eq!(r.optimum, 8);
        assert_eq!(solve(4, 3, 3).optimum, 9);
        assert_eq!(solve(5, 2, 2).optimum, 5);
        assert_eq!(solve(6, 2, 4).optimum, 4);
    }

    #[test]
    fn witnesses_are_sound() {
        for (n, q, d) in [(7, 2, 4), (4, 3, 3), (5, 2, 2), (6, 2, 4), (8, 2, 4), (6, 3, 4)] {
            let r = solve(n, q, d);
            assert_eq!(r.witness.size(), r.optimum);
            assert_eq!(r.witness.is_equidistant(), Equidistance::Equidistant(d));
            assert!(r.witness.contains(&Word::zero(q, n).unwrap()));
            let bb = best_bound(n as u64, q, d as u64).unwrap();
            assert!(r.optimum as u64 <= bb.minimum);
        }
    }

    #[test]
    fn odd_binary_distances_cap_at_two() {
        for n in [5usize, 9, 12] {
            for d in [3usize, 5, 7] {
                if d > n {
                    continue;
                }
                let r = solve(n, 2, d);
                assert_eq!(r.optimum, 2, "({n},2,{d})");
                assert_eq!(r.explored_nodes, 0);
            }
        }
    }

    #[test]
    fn search_is_deterministic() {
        let a = max_equidistant(8, 2, 4, DEFAULT_BUDGET).unwrap();
        let b = max_equidistant(8, 2, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exhaustion_returns_incumbent() {
        let r = max_equidistant(10, 3, 4, 3).unwrap();
        assert!(r.budget_exhausted);
        assert!(!r.proven_optimal);
        assert!(r.optimum >= 2);
        assert_eq!(r.witness.is_equidistant(), Equidistance::Equidistant(4));
    }

    #[test]
    fn seeds_embed_into_candidates() {
        let candidates = candidate_words(10, 2, 4).unwrap();
        let seed = seed_clique(10, 2, 4, &candidates);
        // padded simplex beats the sunflower here: 7 clique words vs 4
        assert_eq!(seed.len(), 7);
        for pair in seed.windows(2) {
            let x = &candidates[pair[0] as usize];
            let y = &candidates[pair[1] as usize];
            assert_eq!(hamming_distance(x, y).unwrap(), 4);
        }
    }

    #[test]
    fn canonical_witness_is_least() {
        let plain = max_equidistant(6, 2, 2, DEFAULT_BUDGET).unwrap();
        let canon = max_equidistant_canonical(6, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(canon.optimum, plain.optimum);
        assert!(canon.proven_optimal);
        // the least witness starts with the lex-first weight-2 word 000011
        assert!(canon.witness.contains(&Word::new(2, vec![0, 0, 0, 0, 1, 1]).unwrap()));
        assert!(canon.witness.words() <= plain.witness.words());
        // idempotent: canonicalizing twice gives the same code
        let again = max_equidistant_canonical(6, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(again.witness, canon.witness);

        let tiny = max_equidistant_canonical(5, 2, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(tiny.optimum, 2);
        assert!(tiny.witness.contains(&Word::new(2, vec![0, 0, 1, 1, 1]).unwrap()));
    }

    #[test]
    fn tightness_examples() {
        let tight = tightness_report(7, 2, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(tight.gap, 0);
        assert_eq!(tight.matches, Some("simplex"));

        let loose = tightness_report(6, 2, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(loose.optimum, 4);
        assert_eq!(loose.bound.minimum, 6);
        assert_eq!(loose.gap, 2);

        // padded simplex closes the gap that a sunflower alone would leave
        let padded = tightness_report(10, 2, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(padded.optimum, 8);
        assert_eq!(padded.gap, 0);
        assert_eq!(padded.matches, Some("simplex"));
    }

    #[test]
    fn translation_justifies_weight_reduction() {
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for _ in 0..500 {
            let q = rng.gen_range(2..=4);
            let n = rng.gen_range(2..=7);
            let d = rng.gen_range(1..=n);
            let Ok(candidates) = candidate_words(n, q, d) else { continue };
            let mut pool: Vec<&Word> = candidates.iter().collect();
            pool.shuffle(&mut rng);
            let mut words = vec![Word::zero(q, n).unwrap()];
            for w in pool {
                if words.iter().all(|x| hamming_distance(x, w).unwrap() == d) {
                    words.push(w.clone());
                }
            }
            let code = Code::new(q, n, words).unwrap();
            let anchor = code.words()[rng.gen_range(0..code.size())].clone();
            let moved = code.translate_to_zero(&anchor).unwrap();
            assert!(moved.contains(&Word::zero(q, n).unwrap()));
            assert_eq!(moved.distance_multiset(), code.distance_multiset());
            assert!(moved
                .words()
                .iter()
                .all(|w| w.weight() == 0 || w.weight() == d));
        }
    }
}
