//! Sunflower (Δ-system) structure in set families and its q-ary analogue.
//!
//! The q-ary detector works through the reduction ψ that rewrites each symbol
//! as a two-bit gadget inside a length-q block, turning a q-ary code into a
//! binary set family with doubled weights and distances. Intersection sizes l
//! can be half-integers in the q-ary world, so they travel doubled (`l2`)
//! through every API.

use std::collections::BTreeMap;

use crate::codes::{q_intersection_doubled, Code, Word};
use crate::error::{Error, Result};

/// Distinct subsets of {1, …, ground_size}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    ground_size: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    /// Elements are 1-based; each set is stored sorted. Member sets must be
    /// distinct (input order is preserved).
    pub fn new(ground_size: usize, sets: Vec<Vec<usize>>) -> Result<SetFamily> {
        let mut cleaned = Vec::with_capacity(sets.len());
        for mut s in sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&e| e == 0 || e > ground_size) {
                return Err(Error::InvalidParameters {
                    reason: format!("element {bad} outside ground set [{ground_size}]"),
                });
            }
            cleaned.push(s);
        }
        let mut sorted = cleaned.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet);
        }
        Ok(SetFamily { ground_size, sets: cleaned })
    }

    /// Family of the supports of all words of a code.
    pub fn from_code_supports(code: &Code) -> Result<SetFamily> {
        SetFamily::new(code.n(), code.words().iter().map(|w| w.support()).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|e| !b.contains(e)).copied().collect()
}

/// A sunflower certificate: the common kernel and the pairwise-disjoint petals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaCertificate {
    pub kernel: Vec<usize>,
    pub petals: Vec<Vec<usize>>,
}

/// Decide whether the family is a sunflower.
///
/// For three or more sets the only possible kernel is B₁∩B₂ (a sunflower's
/// kernel equals every pairwise intersection), so one candidate is checked
/// against all pairs. Families of at most two sets are sunflowers by
/// definition, with kernel B₁∩B₂ (or B₁, or ∅).
pub fn find_kernel(family: &SetFamily) -> Option<DeltaCertificate> {
    let sets = family.sets();
    let kernel = match sets.len() {
        0 => Vec::new(),
        1 => sets[0].clone(),
        _ => intersect(&sets[0], &sets[1]),
    };
    if sets.len() >= 3 {
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if intersect(&sets[i], &sets[j]) != kernel {
                    return None;
                }
            }
        }
    }
    let petals: Vec<Vec<usize>> = sets.iter().map(|s| difference(s, &kernel)).collect();
    debug_assert!({
        let mut union = std::collections::BTreeSet::new();
        let total: usize = petals.iter().map(|p| p.len()).sum();
        petals.iter().flatten().for_each(|&e| {
            union.insert(e);
        });
        union.len() == total
    });
    Some(DeltaCertificate { kernel, petals })
}

/// (k, l) such that all sets have size k and all pairwise intersections size
/// l. Absent for families of fewer than two sets (no pairwise structure) or
/// when either size varies.
pub fn family_parameters(family: &SetFamily) -> Option<(usize, usize)> {
    let sets = family.sets();
    if sets.len() < 2 {
        return None;
    }
    let k = sets[0].len();
    if sets.iter().any(|s| s.len() != k) {
        return None;
    }
    let l = intersect(&sets[0], &sets[1]).len();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if intersect(&sets[i], &sets[j]).len() != l {
                return None;
            }
        }
    }
    Some((k, l))
}

/// Size above which a binary (n,k,l)-family is forced to be a sunflower:
/// max{l+2, (k−l)² + (k−l) + 1}.
pub fn deza_threshold(k: usize, l: usize) -> Result<usize> {
    if l >= k {
        return Err(Error::InvalidParameters { reason: format!("need l < k, got k={k} l={l}") });
    }
    let t = k - l;
    Ok((l + 2).max(t * t + t + 1))
}

/// q-ary analogue with doubled intersection size:
/// max{2l+2, 4(k−l)² + 2(k−l) + 1, q−1}, exact even for half-integral l.
pub fn deza_q_threshold(k: usize, l_doubled: usize, q: u32) -> Result<usize> {
    if l_doubled >= 2 * k {
        return Err(Error::InvalidParameters {
            reason: format!("need l < k, got k={k} doubled l={l_doubled}"),
        });
    }
    // with t = 2(k−l) as an integer: 4(k−l)²+2(k−l)+1 = t²/4·4 … = t² stays exact
    let t = 2 * k - l_doubled;
    Ok((l_doubled + 2).max(t * t + t + 1).max(q as usize - 1))
}

/// Largest possible sunflower with these parameters: ⌊(n−l)/(k−l)⌋.
pub fn max_delta_size(n: usize, k: usize, l: usize) -> Result<usize> {
    if l >= k || k > n {
        return Err(Error::InvalidParameters {
            reason: format!("need l < k <= n, got n={n} k={k} l={l}"),
        });
    }
    Ok((n - l) / (k - l))
}

/// Rewrite a q-ary word as a binary word of length q·n: symbol 0 becomes a
/// zero block, symbol s ≥ 1 a block with ones at positions s and q.
pub fn psi_embed(x: &Word) -> Word {
    let q = x.q() as usize;
    let mut bits = vec![0u32; q * x.n()];
    for (i, &s) in x.symbols().iter().enumerate() {
        if s != 0 {
            bits[q * i + s as usize - 1] = 1;
            bits[q * i + q - 1] = 1;
        }
    }
    Word::new(2, bits).expect("valid binary word by construction")
}

/// The image of a whole code under ψ, as a support family over [q·n].
pub fn psi_family(code: &Code) -> SetFamily {
    let sets = code.words().iter().map(|w| psi_embed(w).support()).collect();
    SetFamily::new(code.q() as usize * code.n(), sets)
        .expect("psi is injective, so image supports are distinct")
}

/// Certificate that a constant-weight single-intersection code is a q-ary
/// sunflower: a kernel of coordinates where all words agree on a nonzero
/// symbol, with supports disjoint outside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaQCertificate {
    kernel: Vec<usize>,
    shared_symbols: BTreeMap<usize, u32>,
    code: Code,
}

impl DeltaQCertificate {
    /// 1-based coordinates of the kernel.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    pub fn shared_symbols(&self) -> &BTreeMap<usize, u32> {
        &self.shared_symbols
    }

    pub fn code(&self) -> &Code {
        &self.code
    }
}

/// Detect q-ary sunflower structure.
///
/// The code must be constant-weight with a single pairwise doubled
/// intersection value `l2` (errors otherwise). Detection applies ψ, finds the
/// binary kernel D, lifts it to coordinates i with |I_i ∩ D| = 2, and then
/// verifies the two conditions directly. Absent (not an error) when the code
/// is simply not a q-ary sunflower, including every odd-distance family, where
/// l would be half-integral.
pub fn detect_delta_q(code: &Code) -> Result<Option<DeltaQCertificate>> {
    let words = code.words();
    if words.len() <= 1 {
        let kernel: Vec<usize> = words.first().map(|w| w.support()).unwrap_or_default();
        let shared_symbols = words
            .first()
            .map(|w| {
                kernel
                    .iter()
                    .map(|&i| (i, w.symbols()[i - 1]))
                    .collect()
            })
            .unwrap_or_default();
        return Ok(Some(DeltaQCertificate { kernel, shared_symbols, code: code.clone() }));
    }
    let k = words[0].weight();
    if words.iter().any(|w| w.weight() != k) {
        return Err(Error::NotConstantWeight);
    }
    let l2 = q_intersection_doubled(&words[0], &words[1])?;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if q_intersection_doubled(&words[i], &words[j])? != l2 {
                return Err(Error::NotSingleIntersection);
            }
        }
    }
    if l2 % 2 != 0 {
        return Ok(None);
    }
    let l = l2 / 2;
    let family = psi_family(code);
    let Some(binary_cert) = find_kernel(&family) else {
        return Ok(None);
    };
    let q = code.q() as usize;
    // lift the binary kernel: coordinate i is kernel iff its block holds a
    // full gadget; a half-covered block rules the structure out
    let mut kernel = Vec::new();
    let mut per_block = vec![0usize; code.n()];
    for &e in &binary_cert.kernel {
        per_block[(e - 1) / q] += 1;
    }
    for (i, &count) in per_block.iter().enumerate() {
        match count {
            0 => {}
            2 => kernel.push(i + 1),
            _ => return Ok(None),
        }
    }
    if kernel.len() != l {
        return Ok(None);
    }
    // condition (1): a common nonzero symbol at every kernel coordinate
    let mut shared_symbols = BTreeMap::new();
    for &i in &kernel {
        let s = words[0].symbols()[i - 1];
        if s == 0 || words.iter().any(|w| w.symbols()[i - 1] != s) {
            return Ok(None);
        }
        shared_symbols.insert(i, s);
    }
    // condition (2): supports pairwise disjoint outside the kernel
    let mut seen = vec![false; code.n() + 1];
    for w in words {
        for e in w.support() {
            if kernel.binary_search(&e).is_ok() {
                continue;
            }
            if seen[e] {
                return Ok(None);
            }
            seen[e] = true;
        }
    }
    Ok(Some(DeltaQCertificate { kernel, shared_symbols, code: code.clone() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hamming_distance;
    use proptest::prelude::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    fn w(q: u32, symbols: &[u32]) -> Word {
        Word::new(q, symbols.to_vec()).unwrap()
    }

    #[test]
    fn psi_gadgets() {
        let x = w(3, &[0, 1, 2]);
        let img = psi_embed(&x);
        assert_eq!(img.symbols(), &[0, 0, 0, 1, 0, 1, 0, 1, 1]);
        assert_eq!(img.q(), 2);
        // binary words double too: 1 ↦ [1,1]
        let b = w(2, &[1, 0, 1]);
        assert_eq!(psi_embed(&b).symbols(), &[1, 1, 0, 0, 1, 1]);
    }

    #[test]
    fn psi_doubles_weight_and_distance_exhaustively() {
        for q in 2u32..=4 {
            for n in 1usize..=3 {
                let total = (q as usize).pow(n as u32);
                let words: Vec<Word> = (0..total)
                    .map(|mut v| {
                        let symbols = (0..n)
                            .map(|_| {
                                let s = (v % q as usize) as u32;
                                v /= q as usize;
                                s
                            })
                            .collect();
                        Word::new(q, symbols).unwrap()
                    })
                    .collect();
                for x in &words {
                    assert_eq!(psi_embed(x).weight(), 2 * x.weight());
                    for y in &words {
                        assert_eq!(
                            hamming_distance(&psi_embed(x), &psi_embed(y)).unwrap(),
                            2 * hamming_distance(x, y).unwrap(),
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_detection() {
        let sunflower = fam(7, &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7]]);
        let cert = find_kernel(&sunflower).unwrap();
        assert_eq!(cert.kernel, vec![1]);
        assert_eq!(cert.petals, vec![vec![2, 3], vec![4, 5], vec![6, 7]]);

        let triangle = fam(3, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(find_kernel(&triangle).is_none());

        // any two sets form a sunflower
        let pair = fam(4, &[&[1, 2], &[2, 3]]);
        assert_eq!(find_kernel(&pair).unwrap().kernel, vec![2]);
        let disjoint_pair = fam(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(find_kernel(&disjoint_pair).unwrap().kernel, Vec::<usize>::new());
        let single = fam(3, &[&[1, 3]]);
        assert_eq!(find_kernel(&single).unwrap().kernel, vec![1, 3]);
        let empty = SetFamily::new(3, vec![]).unwrap();
        assert_eq!(find_kernel(&empty).unwrap().kernel, Vec::<usize>::new());
    }

    #[test]
    fn fano_complements_are_not_a_sunflower() {
        // supports of the nonzero words of the length-7 binary simplex code
        let lines: [[usize; 3]; 7] = [
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 7],
            [5, 6, 1],
            [6, 7, 2],
            [7, 1, 3],
        ];
        let complements: Vec<Vec<usize>> = lines
            .iter()
            .map(|l| (1..=7).filter(|e| !l.contains(e)).collect())
            .collect();
        let family = SetFamily::new(7, complements).unwrap();
        assert_eq!(family_parameters(&family), Some((4, 2)));
        assert!(find_kernel(&family).is_none());
    }

    #[test]
    fn family_parameter_edge_cases() {
        let mixed = fam(5, &[&[1, 2], &[3, 4, 5]]);
        assert_eq!(family_parameters(&mixed), None);
        let sunflower = fam(10, &[&[1, 2, 3, 4], &[1, 2, 5, 6], &[1, 2, 7, 8]]);
        assert_eq!(family_parameters(&sunflower), Some((4, 2)));
        let single = fam(3, &[&[1, 2]]);
        assert_eq!(family_parameters(&single), None);
        // equal sizes but uneven intersections
        let uneven = fam(6, &[&[1, 2, 3], &[1, 2, 4], &[4, 5, 6]]);
        assert_eq!(family_parameters(&uneven), None);
    }

    #[test]
    fn family_validation() {
        assert!(SetFamily::new(3, vec![vec![1, 4]]).is_err());
        assert!(SetFamily::new(3, vec![vec![0]]).is_err());
        assert_eq!(
            SetFamily::new(3, vec![vec![1, 2], vec![2, 1]]).unwrap_err(),
            Error::DuplicateSet
        );
    }

    #[test]
    fn thresholds() {
        assert_eq!(deza_threshold(4, 2).unwrap(), 7);
        assert_eq!(deza_threshold(2, 1).unwrap(), 3);
        assert!(deza_threshold(2, 2).is_err());
        assert!(deza_threshold(2, 5).is_err());

        assert_eq!(deza_q_threshold(4, 4, 3).unwrap(), 21);
        assert_eq!(deza_q_threshold(2, 2, 9).unwrap(), 8);
        assert_eq!(deza_q_threshold(2, 0, 2).unwrap(), 21);
        // half-integral l = 3/2
        assert_eq!(deza_q_threshold(3, 3, 4).unwrap(), 13);
        assert!(deza_q_threshold(2, 4, 3).is_err());
    }

    #[test]
    fn delta_sizes() {
        assert_eq!(max_delta_size(10, 4, 2).unwrap(), 4);
        assert_eq!(max_delta_size(12, 3, 0).unwrap(), 4);
        assert_eq!(max_delta_size(7, 4, 2).unwrap(), 2);
        assert!(max_delta_size(3, 4, 2).is_err());
        assert!(max_delta_size(10, 4, 4).is_err());
    }

    #[test]
    fn qary_sunflower_detected() {
        let code = Code::new(
            3,
            8,
            vec![
                w(3, &[1, 1, 1, 1, 0, 0, 0, 0]),
                w(3, &[1, 1, 0, 0, 2, 1, 0, 0]),
                w(3, &[1, 1, 0, 0, 0, 0, 1, 2]),
            ],
        )
        .unwrap();
        let cert = detect_delta_q(&code).unwrap().expect("must certify");
        assert_eq!(cert.kernel(), &[1, 2]);
        assert_eq!(cert.shared_symbols()[&1], 1);
        assert_eq!(cert.shared_symbols()[&2], 1);
        // the binary kernel under psi is twice the lifted kernel
        let binary = find_kernel(&psi_family(&code)).unwrap();
        assert_eq!(binary.kernel.len(), 2 * cert.kernel().len());
    }

    #[test]
    fn qary_detection_absences() {
        // odd distance: l2 = 3 is half-integral
        let odd = Code::new(3, 4, vec![w(3, &[1, 1, 1, 0]), w(3, &[1, 2, 0, 1])]).unwrap();
        assert_eq!(detect_delta_q(&odd).unwrap(), None);

        // symbol clash: blocks covered by half a gadget
        let clash = Code::new(3, 4, vec![w(3, &[1, 2, 1, 0]), w(3, &[2, 1, 1, 0])]).unwrap();
        assert_eq!(detect_delta_q(&clash).unwrap(), None);

        // genuinely non-sunflower support pattern
        let triangle = Code::new(
            2,
            3,
            vec![w(2, &[1, 1, 0]), w(2, &[0, 1, 1]), w(2, &[1, 0, 1])],
        )
        .unwrap();
        assert_eq!(detect_delta_q(&triangle).unwrap(), None);
    }

    #[test]
    fn qary_detection_errors_and_degenerate() {
        let uneven = Code::new(2, 3, vec![w(2, &[1, 1, 0]), w(2, &[1, 0, 0])]).unwrap();
        assert_eq!(detect_delta_q(&uneven), Err(Error::NotConstantWeight));

        let two_values = Code::new(
            2,
            4,
            vec![w(2, &[1, 1, 0, 0]), w(2, &[0, 0, 1, 1]), w(2, &[1, 0, 1, 0])],
        )
        .unwrap();
        assert_eq!(detect_delta_q(&two_values), Err(Error::NotSingleIntersection));

        let single = Code::new(3, 3, vec![w(3, &[0, 2, 1])]).unwrap();
        let cert = detect_delta_q(&single).unwrap().unwrap();
        assert_eq!(cert.kernel(), &[2, 3]);
    }

    #[test]
    fn certified_families_obey_size_bound() {
        // sunflowers with kernel l and petal size k−l on n points
        for (n, k, l, m) in [(10, 4, 2, 4), (12, 3, 1, 5), (9, 3, 0, 3)] {
            let sets: Vec<Vec<usize>> = (0..m)
                .map(|j| {
                    let mut s: Vec<usize> = (1..=l).collect();
                    s.extend((0..k - l).map(|t| l + j * (k - l) + t + 1));
                    s
                })
                .collect();
            let family = SetFamily::new(n, sets).unwrap();
            let cert = find_kernel(&family).expect("constructed sunflower");
            assert_eq!(cert.kernel.len(), l);
            assert!(family.len() <= max_delta_size(n, k, l).unwrap());
        }
    }

    proptest! {
        #[test]
        fn psi_doubles_on_random_pairs(
            q in 2u32..=5,
            n in 1usize..=12,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let make = |rng: &mut rand_chacha::ChaCha8Rng| {
                Word::new(q, (0..n).map(|_| rng.gen_range(0..q)).collect()).unwrap()
            };
            let x = make(&mut rng);
            let y = make(&mut rng);
            prop_assert_eq!(psi_embed(&x).weight(), 2 * x.weight());
            prop_assert_eq!(
                hamming_distance(&psi_embed(&x), &psi_embed(&y)).unwrap(),
                2 * hamming_distance(&x, &y).unwrap()
            );
        }
    }
}
