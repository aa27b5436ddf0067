//! Finite fields GF(p^e) for small prime-power orders.
//!
//! Elements are stored by their integer encoding `value = Σ cᵢ·pⁱ` where
//! `(c₀, …, c_{e−1})` is the little-endian coefficient vector of the element
//! as a polynomial over GF(p). The modulus is the irreducible monic polynomial
//! of degree e with the smallest integer encoding, found by exhaustive search,
//! so the multiplication table is reproducible.

use crate::error::{Error, Result};

/// A concrete finite field of order q = p^e.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus polynomial, little-endian, length e+1. Degree 1 (`x`) for prime fields.
    modulus: Vec<u32>,
}

/// An element of some `Gf`, tagged with its field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GfElem {
    q: u32,
    value: u32,
}

impl GfElem {
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Integer encoding Σ cᵢ·pⁱ.
    pub fn value(&self) -> u32 {
        self.value
    }
}

/// Factor q as p^e with p prime, or report that q is not a prime power.
pub fn prime_power_factor(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower { q });
    }
    let mut m = q;
    let mut p = 0u64;
    let mut f = 2u64;
    while f * f <= m {
        if m % f == 0 {
            p = f;
            while m % f == 0 {
                m /= f;
            }
            break;
        }
        f += 1;
    }
    if p == 0 {
        // q itself is prime
        return Ok((q, 1));
    }
    if m != 1 {
        return Err(Error::NotPrimePower { q });
    }
    let mut e = 0u32;
    let mut t = q;
    while t > 1 {
        t /= p;
        e += 1;
    }
    Ok((p, e))
}

impl Gf {
    /// Build the field of order q, failing for non-prime-powers.
    pub fn new(q: u32) -> Result<Gf> {
        let (p64, e) = prime_power_factor(q as u64)?;
        let p = p64 as u32;
        let modulus = smallest_irreducible(p, e);
        Ok(Gf { p, e, q, modulus })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Little-endian coefficients of the modulus polynomial, length e+1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Wrap an integer encoding as an element of this field.
    pub fn elem(&self, value: u32) -> Result<GfElem> {
        if value >= self.q {
            return Err(Error::InvalidWord {
                reason: format!("element encoding {value} out of range for GF({})", self.q),
            });
        }
        Ok(GfElem { q: self.q, value })
    }

    pub fn zero(&self) -> GfElem {
        GfElem { q: self.q, value: 0 }
    }

    pub fn one(&self) -> GfElem {
        GfElem { q: self.q, value: 1 }
    }

    fn check(&self, a: GfElem, b: Option<GfElem>) -> Result<()> {
        if a.q != self.q {
            return Err(Error::FieldMismatch { left: self.q, right: a.q });
        }
        if let Some(b) = b {
            if b.q != self.q {
                return Err(Error::FieldMismatch { left: a.q, right: b.q });
            }
        }
        Ok(())
    }

    /// Little-endian coefficient vector of an element, length e.
    pub fn coeffs(&self, a: GfElem) -> Vec<u32> {
        let mut v = a.value;
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            v = v * self.p + c;
        }
        v
    }

    pub fn add(&self, a: GfElem, b: GfElem) -> Result<GfElem> {
        self.check(a, Some(b))?;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let sum: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(GfElem { q: self.q, value: self.encode(&sum) })
    }

    pub fn neg(&self, a: GfElem) -> Result<GfElem> {
        self.check(a, None)?;
        let ca = self.coeffs(a);
        let neg: Vec<u32> = ca.iter().map(|&x| (self.p - x) % self.p).collect();
        Ok(GfElem { q: self.q, value: self.encode(&neg) })
    }

    pub fn sub(&self, a: GfElem, b: GfElem) -> Result<GfElem> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn mul(&self, a: GfElem, b: GfElem) -> Result<GfElem> {
        self.check(a, Some(b))?;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u32; 2 * self.e as usize];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut coeffs = vec![0u32; self.e as usize];
        coeffs[..rem.len()].copy_from_slice(&rem);
        Ok(GfElem { q: self.q, value: self.encode(&coeffs) })
    }

    /// a^k by square-and-multiply.
    pub fn pow(&self, a: GfElem, k: u32) -> Result<GfElem> {
        self.check(a, None)?;
        let mut acc = self.one();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse via a^(q−2).
    pub fn inv(&self, a: GfElem) -> Result<GfElem> {
        self.check(a, None)?;
        if a.value == 0 {
            return Err(Error::DivisionByZero);
        }
        self.pow(a, self.q - 2)
    }

    /// One representative per 1-dimensional subspace of GF(q)^k: the scalar
    /// multiple whose first nonzero coordinate is 1, sorted lexicographically.
    pub fn one_dim_subspace_reps(&self, k: u32) -> Result<Vec<Vec<GfElem>>> {
        if k < 1 {
            return Err(Error::InvalidParameters { reason: "k must be at least 1".into() });
        }
        let total = (self.q as u128).checked_pow(k).ok_or(Error::CapExceeded {
            what: "q^k",
            value: u128::MAX,
            cap: u128::MAX,
        })?;
        let mut reps = std::collections::BTreeSet::new();
        for idx in 1..total {
            // digits big-endian so enumeration order is lexicographic on the vector
            let mut v = Vec::with_capacity(k as usize);
            let mut rest = idx;
            for pos in (0..k).rev() {
                let base = (self.q as u128).pow(pos);
                v.push((rest / base) as u32);
                rest %= base;
            }
            let first_nz = v.iter().position(|&c| c != 0).unwrap();
            if v[first_nz] == 1 {
                reps.insert(v);
                continue;
            }
            let scale = self.inv(self.elem(v[first_nz])?)?;
            let normalized: Result<Vec<u32>> = v
                .iter()
                .map(|&c| Ok(self.mul(self.elem(c)?, scale)?.value()))
                .collect();
            reps.insert(normalized?);
        }
        let expected = ((total - 1) / (self.q as u128 - 1)) as usize;
        debug_assert_eq!(reps.len(), expected);
        reps.into_iter()
            .map(|v| v.into_iter().map(|c| self.elem(c)).collect())
            .collect()
    }
}

/// Remainder of `a` modulo the monic polynomial `m`, both little-endian over GF(p).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    while r.last() == Some(&0) {
        r.pop();
    }
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        // m is monic, so the elimination factor is just the leading coefficient
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * mc) % p) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

/// True iff monic `f` (little-endian, degree ≥ 1) has no monic divisor of
/// degree in [1, deg f / 2].
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = enc;
            for _ in 0..d {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1); // monic
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree e over GF(p) with the smallest integer
/// encoding (constant term least significant).
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1]; // x
    }
    let count = (p as u64).pow(e);
    for enc in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut rest = enc;
        for _ in 0..e {
            f.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of degree {e} over GF({p}) always exists")
}
