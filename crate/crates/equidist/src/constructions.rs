//! Generators for the extremal codes: simplex linear codes from finite
//! geometry, sunflower codes meeting ⌊2n/d⌋, and projective-plane families.

use crate::codes::{Code, Word};
use crate::delta::SetFamily;
use crate::error::{Error, Result};
use crate::fields::{Gf, GfElem};

/// Largest q^k accepted by [`simplex_linear_code`].
pub const SIMPLEX_SIZE_CAP: u64 = 4096;

/// Largest plane order accepted by [`projective_plane_family`].
pub const PLANE_ORDER_CAP: u32 = 16;

fn dot(field: &Gf, a: &[GfElem], b: &[GfElem]) -> Result<GfElem> {
    let mut acc = field.zero();
    for (&x, &y) in a.iter().zip(b) {
        acc = field.add(acc, field.mul(x, y)?)?;
    }
    Ok(acc)
}

/// The [n = (q^k−1)/(q−1), k, d = q^{k−1}] linear code over GF(q) whose
/// generator matrix has one column per 1-dimensional subspace of GF(q)^k.
/// Every pair of distinct codewords is at distance q^{k−1}, and the size
/// q^k equals n(q−1)+1.
pub fn simplex_linear_code(q: u32, k: u32) -> Result<Code> {
    let field = Gf::new(q)?;
    if k < 1 {
        return Err(Error::InvalidParameters { reason: format!("need k >= 1, got k={k}") });
    }
    let size = (q as u64)
        .checked_pow(k)
        .filter(|&s| s <= SIMPLEX_SIZE_CAP)
        .ok_or(Error::CapExceeded {
            what: "q^k",
            value: (q as u128).pow(k),
            cap: SIMPLEX_SIZE_CAP as u128,
        })?;
    let columns = field.one_dim_subspace_reps(k)?;
    let n = columns.len();
    let mut words = Vec::with_capacity(size as usize);
    for idx in 0..size {
        let mut message = Vec::with_capacity(k as usize);
        let mut v = idx;
        for _ in 0..k {
            message.push(field.elem((v % q as u64) as u32)?);
            v /= q as u64;
        }
        let symbols = columns
            .iter()
            .map(|col| Ok(dot(&field, &message, col)?.value()))
            .collect::<Result<Vec<u32>>>()?;
        words.push(Word::new(q, symbols)?);
    }
    Code::new(q, n, words)
}

/// ⌊2n/d⌋ words with pairwise-disjoint supports of size d/2, laid out as
/// consecutive coordinate blocks of symbol 1. Pairwise distance is exactly d.
pub fn sunflower_code(n: usize, d: usize, q: u32) -> Result<Code> {
    if q < 2 || n == 0 {
        return Err(Error::InvalidParameters { reason: format!("need q >= 2 and n >= 1, got q={q} n={n}") });
    }
    if d % 2 != 0 {
        return Err(Error::OddDistance { d });
    }
    if d < 2 || d > 2 * n {
        return Err(Error::InvalidParameters { reason: format!("need 2 <= d <= 2n, got n={n} d={d}") });
    }
    let half = d / 2;
    let m = 2 * n / d;
    let mut words = Vec::with_capacity(m);
    for j in 0..m {
        let mut symbols = vec![0u32; n];
        symbols[j * half..(j + 1) * half].fill(1);
        words.push(Word::new(q, symbols)?);
    }
    Code::new(q, n, words)
}

/// The all-zero word plus ⌊(n−d/2)/(d/2)⌋ weight-d words sharing a fixed
/// kernel of d/2 coordinates, with pairwise-disjoint tails. Equidistant with
/// distance d and total size ⌊2n/d⌋; translating [`sunflower_code`] to move
/// its first word onto zero yields exactly this code.
pub fn kernel_sunflower_code(n: usize, d: usize, q: u32) -> Result<Code> {
    if q < 2 {
        return Err(Error::InvalidParameters { reason: format!("need q >= 2, got q={q}") });
    }
    if d % 2 != 0 {
        return Err(Error::OddDistance { d });
    }
    if d < 2 || d > n {
        return Err(Error::InvalidParameters { reason: format!("need 2 <= d <= n, got n={n} d={d}") });
    }
    let half = d / 2;
    let petals = (n - half) / half;
    let mut words = vec![Word::zero(q, n)?];
    for j in 1..=petals {
        let mut symbols = vec![0u32; n];
        symbols[..half].fill(1);
        symbols[j * half..(j + 1) * half].fill(1);
        words.push(Word::new(q, symbols)?);
    }
    Code::new(q, n, words)
}

/// The lines of the projective plane PG(2,q): points are the 1-dimensional
/// subspaces of GF(q)³, and each line collects the points orthogonal to a
/// fixed dual point. Gives q²+q+1 sets of size q+1 meeting pairwise in one
/// point; never a sunflower.
pub fn projective_plane_family(q: u32) -> Result<SetFamily> {
    let field = Gf::new(q)?;
    if q > PLANE_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "plane order",
            value: q as u128,
            cap: PLANE_ORDER_CAP as u128,
        });
    }
    let points = field.one_dim_subspace_reps(3)?;
    let mut lines = Vec::with_capacity(points.len());
    for dual in &points {
        let mut line = Vec::with_capacity(q as usize + 1);
        for (i, p) in points.iter().enumerate() {
            if dot(&field, dual, p)?.value() == 0 {
                line.push(i + 1);
            }
        }
        lines.push(line);
    }
    SetFamily::new(points.len(), lines)
}
