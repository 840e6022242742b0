//! Exact integer linear algebra on `H_1(L, Z) = Z^2`.
//!
//! Every operation uses checked 64-bit arithmetic; overflow surfaces as
//! [`Error::Overflow`] and is never wrapped.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn add(a: i64, b: i64, op: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow(op))
}

pub(crate) fn sub(a: i64, b: i64, op: &'static str) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow(op))
}

pub(crate) fn mul(a: i64, b: i64, op: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(op))
}

pub(crate) fn neg(a: i64, op: &'static str) -> Result<i64> {
    a.checked_neg().ok_or(Error::Overflow(op))
}

/// `a*b + c*d` without intermediate wrap.
fn dot(a: i64, b: i64, c: i64, d: i64, op: &'static str) -> Result<i64> {
    add(mul(a, b, op)?, mul(c, d, op)?, op)
}

/// Non-negative gcd with the conventions `gcd(0, 0) = 0` and `gcd(0, x) = |x|`.
pub fn gcd(a: i64, b: i64) -> Result<i64> {
    let a = a.checked_abs().ok_or(Error::Overflow("gcd"))?;
    let b = b.checked_abs().ok_or(Error::Overflow("gcd"))?;
    Ok(a.gcd(&b))
}

/// gcd over a sequence, `gcd([]) = 0`.
pub fn gcd_all<I: IntoIterator<Item = i64>>(values: I) -> Result<i64> {
    values.into_iter().try_fold(0, gcd)
}

/// A homology class `p*e1 + q*e2` in some declared basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Int2Vec {
    pub p: i64,
    pub q: i64,
}

impl Int2Vec {
    pub const fn new(p: i64, q: i64) -> Self {
        Self { p, q }
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && gcd(self.p, self.q) == Ok(1)
    }

    pub fn checked_neg(&self) -> Result<Self> {
        Ok(Self::new(neg(self.p, "negate")?, neg(self.q, "negate")?))
    }

    /// Splits `v` as `g * w` with `w` primitive and `g = gcd(|p|, |q|)`.
    /// The direction of `v` is preserved.
    pub fn primitive_part(&self) -> Result<(Int2Vec, i64)> {
        if self.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = gcd(self.p, self.q)?;
        Ok((Int2Vec::new(self.p / g, self.q / g), g))
    }
}

impl fmt::Display for Int2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

pub fn primitive_part(v: Int2Vec) -> Result<(Int2Vec, i64)> {
    v.primitive_part()
}

/// A 2x2 integer matrix `(a b; c d)` with determinant `+-1`, acting on
/// column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 4]", into = "[i64; 4]")]
pub struct Unimodular2 {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl TryFrom<[i64; 4]> for Unimodular2 {
    type Error = Error;

    fn try_from([a, b, c, d]: [i64; 4]) -> Result<Self> {
        Self::new(a, b, c, d)
    }
}

impl From<Unimodular2> for [i64; 4] {
    fn from(m: Unimodular2) -> Self {
        m.entries()
    }
}

impl Unimodular2 {
    pub const IDENTITY: Unimodular2 = Unimodular2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    /// Matrix whose columns are `c1` and `c2`.
    pub fn from_columns(c1: Int2Vec, c2: Int2Vec) -> Result<Self> {
        Self::new(c1.p, c2.p, c1.q, c2.q)
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn column(&self, j: usize) -> Int2Vec {
        match j {
            0 => Int2Vec::new(self.a, self.c),
            1 => Int2Vec::new(self.b, self.d),
            _ => panic!("column index {j} out of range"),
        }
    }

    /// Either `1` or `-1`.
    pub fn det(&self) -> i64 {
        (self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128) as i64
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Unimodular2) -> Result<Unimodular2> {
        const OP: &str = "compose";
        Ok(Unimodular2 {
            a: dot(self.a, other.a, self.b, other.c, OP)?,
            b: dot(self.a, other.b, self.b, other.d, OP)?,
            c: dot(self.c, other.a, self.d, other.c, OP)?,
            d: dot(self.c, other.b, self.d, other.d, OP)?,
        })
    }

    /// `(d -b; -c a) / det`.
    pub fn invert(&self) -> Result<Unimodular2> {
        const OP: &str = "invert";
        let (a, b, c, d) = (self.d, neg(self.b, OP)?, neg(self.c, OP)?, self.a);
        if self.det() == 1 {
            Ok(Unimodular2 { a, b, c, d })
        } else {
            Ok(Unimodular2 { a: neg(a, OP)?, b: neg(b, OP)?, c: neg(c, OP)?, d: neg(d, OP)? })
        }
    }

    pub fn transpose(&self) -> Unimodular2 {
        Unimodular2 { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    pub fn apply(&self, v: Int2Vec) -> Result<Int2Vec> {
        const OP: &str = "apply";
        Ok(Int2Vec::new(dot(self.a, v.p, self.b, v.q, OP)?, dot(self.c, v.p, self.d, v.q, OP)?))
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, exp: i64) -> Result<Unimodular2> {
        let base = if exp < 0 { self.invert()? } else { *self };
        let mut acc = Unimodular2::IDENTITY;
        for _ in 0..exp.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Unimodular2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

pub fn compose(a: &Unimodular2, b: &Unimodular2) -> Result<Unimodular2> {
    a.compose(b)
}

pub fn invert(a: &Unimodular2) -> Result<Unimodular2> {
    a.invert()
}

/// The Maslov class as a row vector `(mu(e1), mu(e2))` on a declared basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct MaslovForm {
    m1: i64,
    m2: i64,
}

impl TryFrom<[i64; 2]> for MaslovForm {
    type Error = Error;

    fn try_from([m1, m2]: [i64; 2]) -> Result<Self> {
        Self::new(m1, m2)
    }
}

impl From<MaslovForm> for [i64; 2] {
    fn from(mu: MaslovForm) -> Self {
        [mu.m1, mu.m2]
    }
}

impl MaslovForm {
    pub fn new(m1: i64, m2: i64) -> Result<Self> {
        if m1 == 0 && m2 == 0 {
            return Err(Error::ZeroCovector);
        }
        // rejects i64::MIN entries up front
        gcd(m1, m2)?;
        Ok(Self { m1, m2 })
    }

    /// `(m_L, 0)`, the form in an adapted basis.
    pub fn adapted(ml: i64) -> Result<Self> {
        if ml <= 0 {
            return Err(Error::InvalidParameter(format!("divisibility must be positive, got {ml}")));
        }
        Self::new(ml, 0)
    }

    pub fn m1(&self) -> i64 {
        self.m1
    }
    pub fn m2(&self) -> i64 {
        self.m2
    }

    /// Divisibility `m_L = gcd(|m1|, |m2|)`.
    pub fn divisibility(&self) -> i64 {
        gcd(self.m1, self.m2).expect("validated at construction")
    }

    pub fn is_adapted(&self) -> bool {
        self.m2 == 0 && self.m1 > 0
    }

    pub fn eval(&self, v: Int2Vec) -> Result<i64> {
        dot(self.m1, v.p, self.m2, v.q, "maslov_eval")
    }

    /// The covector `mu o B`.
    pub fn pullback(&self, basis: &Unimodular2) -> Result<MaslovForm> {
        MaslovForm::new(self.eval(basis.column(0))?, self.eval(basis.column(1))?)
    }
}

impl fmt::Display for MaslovForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m1, self.m2)
    }
}

pub fn maslov_eval(mu: &MaslovForm, v: Int2Vec) -> Result<i64> {
    mu.eval(v)
}

/// A basis `(gamma, sigma)` with `mu(gamma) = m_L` and `mu(sigma) = 0`,
/// stored as the columns of `basis` in the original coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub basis: Unimodular2,
    pub ml: i64,
}

impl AdaptedBasis {
    pub fn gamma(&self) -> Int2Vec {
        self.basis.column(0)
    }

    pub fn sigma(&self) -> Int2Vec {
        self.basis.column(1)
    }

    /// Same basis with the orientation of `sigma` reversed. `sigma` is only
    /// determined up to sign, so both orientations are valid.
    pub fn flip_sigma(&self) -> Result<AdaptedBasis> {
        let basis = Unimodular2::from_columns(self.gamma(), self.sigma().checked_neg()?)?;
        Ok(AdaptedBasis { basis, ml: self.ml })
    }
}

/// Extended-gcd solution: with `x*m1 + y*m2 = m_L` (minimal Bezout
/// coefficients), `gamma = (x, y)` and `sigma = (-m2, m1) / m_L`. The
/// resulting basis always has determinant `+1`.
pub fn adapt_basis(mu: &MaslovForm) -> Result<AdaptedBasis> {
    let ext = mu.m1.extended_gcd(&mu.m2);
    let (g, x, y) = if ext.gcd < 0 {
        (neg(ext.gcd, "adapt_basis")?, neg(ext.x, "adapt_basis")?, neg(ext.y, "adapt_basis")?)
    } else {
        (ext.gcd, ext.x, ext.y)
    };
    if g == 0 {
        return Err(Error::ZeroCovector);
    }
    let gamma = Int2Vec::new(x, y);
    let sigma = Int2Vec::new(neg(mu.m2 / g, "adapt_basis")?, mu.m1 / g);
    let basis = Unimodular2::from_columns(gamma, sigma)?;
    Ok(AdaptedBasis { basis, ml: g })
}
