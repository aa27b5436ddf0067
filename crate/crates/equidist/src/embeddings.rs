//! Simplex geometry, the sphere embedding of q-ary Hamming space, and the
//! exact determinant computations behind the size bound at the critical code
//! cardinality (q−1)n + 1.
//!
//! Verdicts here are always decided in exact rational arithmetic. Floating
//! point appears only in the geometric embedding itself, where every quantity
//! is of unit scale and compared against fixed absolute tolerances.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Zero};

use crate::codes::{hamming_distance, Code, Equidistance};
use crate::error::{Error, Result};

/// Absolute tolerance for unit-scale float checks (norms, inner products).
pub const UNIT_TOL: f64 = 1e-9;
/// Absolute tolerance for the centroid-at-origin check.
pub const CENTROID_TOL: f64 = 1e-8;

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact determinant by fraction-free elimination: the matrix is scaled to
    /// integers by the common denominator, reduced Bareiss-style (every
    /// division is exact), and the scale divided back out.
    pub fn det_bareiss(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut scale = BigInt::one();
        for e in &self.entries {
            scale = scale.lcm(e.denom());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = self.get(i, j) * BigRational::from(scale.clone());
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigRational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    debug_assert!((&num % &prev).is_zero());
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let det_scaled = a[n - 1][n - 1].clone() * BigInt::from(sign);
        let mut denom = BigInt::one();
        for _ in 0..n {
            denom *= &scale;
        }
        Ok(BigRational::new(det_scaled, denom))
    }
}

/// det(γ·I_m + θ·J_m) = (γ + mθ)·γ^(m−1), exactly.
pub fn det_closed_form(gamma: &BigRational, theta: &BigRational, m: usize) -> BigRational {
    assert!(m >= 1);
    let m_rat = BigRational::from(BigInt::from(m as i64));
    let mut pow = BigRational::one();
    for _ in 0..m - 1 {
        pow *= gamma;
    }
    (gamma + m_rat * theta) * pow
}

/// The matrix γ·I_m + θ·J_m itself.
pub fn gram_with_scalars(gamma: &BigRational, theta: &BigRational, m: usize) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            *out.get_mut(i, j) = if i == j { gamma + theta } else { theta.clone() };
        }
    }
    out
}

/// Off-diagonal Gram scalar pair (γ, θ) for an equidistant code with the given
/// parameters: γ = dq/(n(q−1)), θ = 1 − γ.
pub fn equidistant_gram_scalars(n: usize, q: u32, d: usize) -> (BigRational, BigRational) {
    let gamma = BigRational::new(
        BigInt::from(d as i64) * BigInt::from(q as i64),
        BigInt::from(n as i64) * BigInt::from(q as i64 - 1),
    );
    let theta = BigRational::one() - &gamma;
    (gamma, theta)
}

/// Synthetic Gram matrix an equidistant (n, q, d) code of size m would have.
pub fn equidistant_gram(n: usize, q: u32, d: usize, m: usize) -> RationalMatrix {
    let (gamma, theta) = equidistant_gram_scalars(n, q, d);
    gram_with_scalars(&gamma, &theta, m)
}

/// Exact Gram matrix of the sphere embedding of an arbitrary code:
/// entry (i,j) = 1 − d_H(wᵢ,wⱼ)·q/(n(q−1)).
pub fn gram_exact(code: &Code) -> RationalMatrix {
    let m = code.size();
    let n = code.n() as i64;
    let q = code.q() as i64;
    let mut out = RationalMatrix::zeros(m, m);
    for i in 0..m {
        *out.get_mut(i, i) = BigRational::one();
        for j in 0..i {
            let d = hamming_distance(&code.words()[i], &code.words()[j])
                .expect("words in one code share shape") as i64;
            let entry =
                BigRational::one() - BigRational::new(BigInt::from(d * q), BigInt::from(n * (q - 1)));
            *out.get_mut(i, j) = entry.clone();
            *out.get_mut(j, i) = entry;
        }
    }
    out
}

/// d* = ((q−1)n + 1)/q when integral: the only distance an equidistant code
/// of the critical size (q−1)n + 1 can have.
pub fn exceptional_distance(n: usize, q: u32) -> Option<usize> {
    debug_assert!(n >= 1 && q >= 2);
    let num = (q as u64 - 1) * n as u64 + 1;
    if num % q as u64 == 0 {
        Some((num / q as u64) as usize)
    } else {
        None
    }
}

/// Solve γ(d) + m·(1 − γ(d)) = 0 for d in exact rationals, where
/// γ(d) = dq/(n(q−1)). This is the distance at which the m×m equidistant Gram
/// determinant vanishes.
pub fn distance_forcing_zero_det(n: usize, q: u32, m: usize) -> BigRational {
    assert!(m >= 2);
    // γ = m/(m−1), then d = γ·n(q−1)/q
    let gamma = BigRational::new(BigInt::from(m as i64), BigInt::from(m as i64 - 1));
    gamma * BigRational::new(
        BigInt::from(n as i64) * BigInt::from(q as i64 - 1),
        BigInt::from(q as i64),
    )
}

/// Outcome of the determinant check at the critical size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankArgumentReport {
    pub m: usize,
    /// (q−1)n + 1, the size at which the Gram matrix must be singular.
    pub critical_size: usize,
    /// Common pairwise distance; absent for codes with fewer than two words.
    pub distance: Option<usize>,
    /// d* = ((q−1)n+1)/q when integral.
    pub exceptional: Option<usize>,
    pub gram_det: BigRational,
    pub det_is_zero: bool,
    /// False only if the report contradicts the size bound: a code at (or
    /// beyond) the critical size whose Gram data does not force d = d*.
    pub consistent: bool,
}

/// Evaluate the determinant argument on an equidistant code.
pub fn rank_argument_report(code: &Code) -> Result<RankArgumentReport> {
    let m = code.size();
    let n = code.n();
    let q = code.q();
    let critical_size = n * (q as usize - 1) + 1;
    let exceptional = exceptional_distance(n, q);
    match code.is_equidistant() {
        Equidistance::Not => Err(Error::NotEquidistant),
        Equidistance::Degenerate => Ok(RankArgumentReport {
            m,
            critical_size,
            distance: None,
            exceptional,
            gram_det: BigRational::one(),
            det_is_zero: false,
            consistent: m < critical_size,
        }),
        Equidistance::Equidistant(d) => {
            let (gamma, theta) = equidistant_gram_scalars(n, q, d);
            let det = det_closed_form(&gamma, &theta, m);
            let det_is_zero = det.is_zero();
            let consistent = if m < critical_size {
                true
            } else if m == critical_size {
                det_is_zero && Some(d) == exceptional
            } else {
                false
            };
            Ok(RankArgumentReport {
                m,
                critical_size,
                distance: Some(d),
                exceptional,
                gram_det: det,
                det_is_zero,
                consistent,
            })
        }
    }
}

/// A set of equal-norm points forming (or claimed to form) a regular simplex.
#[derive(Debug, Clone)]
pub struct SimplexPoints {
    dim: usize,
    points: Vec<Vec<f64>>,
}

impl SimplexPoints {
    pub fn from_points(dim: usize, points: Vec<Vec<f64>>) -> Result<SimplexPoints> {
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidParameters {
                reason: format!("points must all live in dimension {dim}"),
            });
        }
        Ok(SimplexPoints { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// m unit vectors in R^(m−1) with pairwise inner products −1/(m−1): the
/// standard basis plus λ·(1,…,1) with λ = (1+√m)/(m−1), recentered at the
/// origin and rescaled to the unit sphere.
pub fn build_max_simplex(m: usize) -> Result<SimplexPoints> {
    if m < 2 {
        return Err(Error::InvalidParameters {
            reason: format!("simplex needs at least 2 points, got {m}"),
        });
    }
    let dim = m - 1;
    let lambda = (1.0 + (m as f64).sqrt()) / (m as f64 - 1.0);
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(m);
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        points.push(e);
    }
    points.push(vec![lambda; dim]);
    // centroid per coordinate is (1 + λ)/m
    let centroid = (1.0 + lambda) / m as f64;
    for p in &mut points {
        for x in p.iter_mut() {
            *x -= centroid;
        }
    }
    for p in &mut points {
        let s = 1.0 / norm(p);
        for x in p.iter_mut() {
            *x *= s;
        }
    }
    let expected = -1.0 / (m as f64 - 1.0);
    for (i, p) in points.iter().enumerate() {
        debug_assert!((norm(p) - 1.0).abs() < UNIT_TOL);
        for q in points.iter().take(i) {
            debug_assert!((dot(p, q) - expected).abs() < UNIT_TOL);
        }
    }
    SimplexPoints::from_points(dim, points)
}

/// True iff the points sum to the origin (within tolerance). The set must
/// have dim+1 points, the size of a full simplex.
pub fn verify_centroid_origin(s: &SimplexPoints) -> Result<bool> {
    if s.len() != s.dim() + 1 {
        return Err(Error::SizeMismatch { expected: s.dim() + 1, got: s.len() });
    }
    let mut sum = vec![0.0; s.dim()];
    for p in s.points() {
        for (acc, x) in sum.iter_mut().zip(p) {
            *acc += x;
        }
    }
    Ok(norm(&sum) < CENTROID_TOL)
}

/// Image of a code on the unit sphere in dimension (q−1)·n.
#[derive(Debug, Clone)]
pub struct SphereEmbedding {
    source: Code,
    points: Vec<Vec<f64>>,
}

impl SphereEmbedding {
    pub fn source(&self) -> &Code {
        &self.source
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        (self.source.q() as usize - 1) * self.source.n()
    }
}

/// Map each word a to (1/√n)·[v_{a₁} … v_{aₙ}], where v₀,…,v_{q−1} is the
/// origin-centered unit simplex of size q. Inner products then depend only on
/// Hamming distance: ⟨θ(a), θ(b)⟩ = 1 − d_H(a,b)·q/(n(q−1)).
pub fn theta_embed(code: &Code) -> Result<SphereEmbedding> {
    let q = code.q() as usize;
    let n = code.n();
    let simplex = build_max_simplex(q)?;
    let scale = 1.0 / (n as f64).sqrt();
    let points = code
        .words()
        .iter()
        .map(|w| {
            let mut p = Vec::with_capacity((q - 1) * n);
            for &s in w.symbols() {
                for &x in &simplex.points()[s as usize] {
                    p.push(x * scale);
                }
            }
            p
        })
        .collect();
    Ok(SphereEmbedding { source: code.clone(), points })
}

/// The exact inner-product value 1 − d·q/(n(q−1)) the embedding must attain.
pub fn theta_inner_product_exact(n: usize, q: u32, d: usize) -> BigRational {
    BigRational::one()
        - BigRational::new(
            BigInt::from(d as i64) * BigInt::from(q as i64),
            BigInt::from(n as i64) * BigInt::from(q as i64 - 1),
        )
}

/// Nearest f64 to an exact rational; fine for the unit-scale values here.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    let (sign, digits) = num.to_radix_be(10);
    let s = match sign {
        Sign::Minus => -1.0,
        _ => 1.0,
    };
    let mut num_f = 0.0f64;
    for d in digits {
        num_f = num_f * 10.0 + d as f64;
    }
    let (_, digits) = den.to_radix_be(10);
    let mut den_f = 0.0f64;
    for d in digits {
        den_f = den_f * 10.0 + d as f64;
    }
    s * num_f / den_f
}
