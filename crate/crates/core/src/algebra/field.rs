//! Table-driven arithmetic in GF(2^ℓ) for 1 ≤ ℓ ≤ 16.
//!
//! Elements are stored as the integer whose bits are the coefficients of a
//! polynomial of degree < ℓ over GF(2). Addition is XOR; multiplication,
//! division and inversion go through exp/log tables built from a fixed
//! primitive polynomial per ℓ.

use std::fmt;

use crate::ops;

use super::AlgebraError;

/// Primitive polynomials indexed by ℓ (entry `ℓ - 1`), including the x^ℓ term.
pub const PRIMITIVE_POLYS: [u32; 16] = [
    0x3,     // x + 1
    0x7,     // x^2 + x + 1
    0xB,     // x^3 + x + 1
    0x13,    // x^4 + x + 1
    0x25,    // x^5 + x^2 + 1
    0x43,    // x^6 + x + 1
    0x83,    // x^7 + x + 1
    0x11D,   // x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // x^9 + x^4 + 1
    0x409,   // x^10 + x^3 + 1
    0x805,   // x^11 + x^2 + 1
    0x1053,  // x^12 + x^6 + x^4 + x + 1
    0x201B,  // x^13 + x^4 + x^3 + x + 1
    0x4443,  // x^14 + x^10 + x^6 + x + 1
    0x8003,  // x^15 + x + 1
    0x1100B, // x^16 + x^12 + x^3 + x + 1
];

/// An element of GF(2^ℓ). Only meaningful together with the [`Field`] it
/// came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fe(pub u16);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Arithmetic context for GF(2^ℓ).
#[derive(Clone)]
pub struct Field {
    ell: u32,
    poly: u32,
    q: usize,
    // exp has 2(q-1) entries so that exp[log a + log b] needs no reduction.
    exp: Vec<u16>,
    log: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("ell", &self.ell)
            .field("poly", &format_args!("{:#x}", self.poly))
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.poly == other.poly
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^ℓ) from the shipped primitive polynomial for `ell`.
    pub fn new(ell: u32) -> Result<Self, AlgebraError> {
        if !(1..=16).contains(&ell) {
            return Err(AlgebraError::UnsupportedDegree(ell));
        }
        Self::with_polynomial(ell, PRIMITIVE_POLYS[ell as usize - 1])
    }

    /// Builds GF(2^ℓ) from an explicit polynomial, which must be primitive.
    pub fn with_polynomial(ell: u32, poly: u32) -> Result<Self, AlgebraError> {
        if !(1..=16).contains(&ell) {
            return Err(AlgebraError::UnsupportedDegree(ell));
        }
        if poly >> ell != 1 {
            return Err(AlgebraError::NotPrimitive { ell, poly });
        }
        if !is_irreducible(poly, ell) {
            return Err(AlgebraError::NotPrimitive { ell, poly });
        }
        let q = 1usize << ell;
        let order = q - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![u32::MAX; q];
        let mut val: u32 = 1;
        for i in 0..order {
            if log[val as usize] != u32::MAX {
                // x has order < q-1: irreducible but not primitive
                return Err(AlgebraError::NotPrimitive { ell, poly });
            }
            exp[i] = val as u16;
            exp[i + order] = val as u16;
            log[val as usize] = i as u32;
            val <<= 1;
            if val & (1 << ell) != 0 {
                val ^= poly;
            }
        }
        if val != 1 {
            return Err(AlgebraError::NotPrimitive { ell, poly });
        }
        log[0] = 0;
        Ok(Field { ell, poly, q, exp, log })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    /// Field size q = 2^ℓ.
    pub fn size(&self) -> usize {
        self.q
    }

    /// Element from an integer, checked against the field size.
    pub fn elem(&self, value: usize) -> Result<Fe, AlgebraError> {
        if value < self.q {
            Ok(Fe(value as u16))
        } else {
            Err(AlgebraError::OutOfField { value, q: self.q })
        }
    }

    /// All elements in value order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(|v| Fe(v as u16))
    }

    /// The primitive element α = x.
    pub fn alpha(&self) -> Fe {
        Fe(self.exp[1 % (self.q - 1)])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        Fe(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        ops::add(1);
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, AlgebraError> {
        if a.0 == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        ops::add(1);
        let order = (self.q - 1) as u32;
        Ok(Fe(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, AlgebraError> {
        if b.0 == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        ops::add(1);
        if a.0 == 0 {
            return Ok(Fe::ZERO);
        }
        let order = (self.q - 1) as u32;
        let e = self.log[a.0 as usize] + order - self.log[b.0 as usize];
        Ok(Fe(self.exp[(e % order) as usize]))
    }

    /// a^e with the convention 0^0 = 1.
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        ops::add(1);
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        Fe(self.exp[l as usize])
    }

    /// α^i for the primitive element α.
    pub fn exp(&self, i: usize) -> Fe {
        Fe(self.exp[i % (self.q - 1)])
    }

    /// Discrete logarithm base α; `None` for zero.
    pub fn log(&self, a: Fe) -> Option<usize> {
        (a.0 != 0).then(|| self.log[a.0 as usize] as usize)
    }

    /// Evaluates a polynomial given low-degree-first coefficients (Horner).
    pub fn eval_poly(&self, coeffs: &[Fe], x: Fe) -> Fe {
        coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Dot product of two equal-length slices.
    pub fn dot(&self, a: &[Fe], b: &[Fe]) -> Fe {
        a.iter()
            .zip(b)
            .fold(Fe::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Carry-less product of two GF(2) polynomials.
#[cfg(test)]
fn clmul(a: u64, b: u64) -> u64 {
    let mut out = 0;
    for i in 0..64 {
        if (b >> i) & 1 == 1 {
            out ^= a << i;
        }
    }
    out
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u64, m: u64) -> u64 {
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree 1..=ℓ/2.
fn is_irreducible(poly: u32, ell: u32) -> bool {
    let p = poly as u64;
    if ell == 1 {
        return true;
    }
    for d in 1..=(ell / 2) {
        for low in 0..(1u64 << d) {
            let f = (1u64 << d) | low;
            if poly_mod(p, f) == 0 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
pub(crate) fn schoolbook_mul(a: u16, b: u16, poly: u32) -> u16 {
    poly_mod(clmul(a as u64, b as u64), poly as u64) as u16
}
