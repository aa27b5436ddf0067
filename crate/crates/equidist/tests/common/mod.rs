//! Reference implementations used to cross-check the library, kept separate
//! from the library's own algorithms on purpose: candidates come from
//! filtering the whole space rather than combinatorial generation, and the
//! clique growth uses plain index lists with on-demand distance checks.

pub struct OracleOutcome {
    pub optimum: usize,
    pub steps: u64,
}

fn dist(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

struct Grower<'a> {
    cands: &'a [Vec<u32>],
    d: usize,
    steps: u64,
    budget: u64,
    blown: bool,
    best: usize,
}

impl Grower<'_> {
    fn grow(&mut self, avail: &[usize], chosen: usize) {
        if chosen > self.best {
            self.best = chosen;
        }
        for (pos, &i) in avail.iter().enumerate() {
            if self.blown || chosen + (avail.len() - pos) <= self.best {
                return;
            }
            let mut next = Vec::new();
            for &j in &avail[pos + 1..] {
                self.steps += 1;
                if dist(&self.cands[i], &self.cands[j]) == self.d {
                    next.push(j);
                }
            }
            if self.steps > self.budget {
                self.blown = true;
                return;
            }
            self.grow(&next, chosen + 1);
        }
    }
}

/// Maximum equidistant code size by exhaustive backtracking over subsets of
/// weight-d words, the zero word fixed. The budget counts pairwise distance
/// evaluations; `None` when it ran out before the space was covered.
pub fn naive_max_equidistant(n: usize, q: u32, d: usize, budget: u64) -> Option<OracleOutcome> {
    assert!(q >= 2 && d >= 1 && d <= n, "oracle preconditions");
    let total = (q as u128).pow(n as u32);
    assert!(total <= 1 << 24, "oracle scans the whole space");
    let mut cands: Vec<Vec<u32>> = Vec::new();
    for raw in 0..total {
        let mut v = raw;
        let mut w = vec![0u32; n];
        for slot in w.iter_mut() {
            *slot = (v % q as u128) as u32;
            v /= q as u128;
        }
        if w.iter().filter(|&&s| s != 0).count() == d {
            cands.push(w);
        }
    }
    cands.sort();
    let all: Vec<usize> = (0..cands.len()).collect();
    let mut g = Grower { cands: &cands, d, steps: 0, budget, blown: false, best: 0 };
    g.grow(&all, 0);
    if g.blown {
        None
    } else {
        Some(OracleOutcome { optimum: g.best + 1, steps: g.steps })
    }
}
