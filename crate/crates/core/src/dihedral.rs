//! The group `G_mu = { g in GL(2,Z) : mu o g = mu }` in an adapted basis
//! `(gamma, sigma)`, where every element has the shape `(1 0; k +-1)`.
//!
//! Twists are `g_k = (1 0; k 1)`, involutions `f_k = (1 0; k -1)`. The
//! canonical normal form of an element is `g_1^n` or `g_1^n f_0 = f_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, MaslovForm, Unimodular2};

/// `g_1^n` when `refl` is false, `g_1^n f_0 = f_n` when it is true.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralNF {
    pub n: i64,
    pub refl: bool,
}

impl DihedralNF {
    pub const IDENTITY: DihedralNF = DihedralNF { n: 0, refl: false };

    pub const fn twist(n: i64) -> Self {
        Self { n, refl: false }
    }

    pub const fn reflection(n: i64) -> Self {
        Self { n, refl: true }
    }

    /// Group product in normal form:
    /// `g_a g_b = g_{a+b}`, `g_a f_b = f_{a+b}`, `f_a g_b = f_{a-b}`, `f_a f_b = g_{a-b}`.
    pub fn mul(&self, rhs: &DihedralNF) -> Result<DihedralNF> {
        const OP: &str = "dihedral product";
        let n = if self.refl { exact::sub(self.n, rhs.n, OP)? } else { exact::add(self.n, rhs.n, OP)? };
        Ok(DihedralNF { n, refl: self.refl ^ rhs.refl })
    }

    pub fn inverse(&self) -> Result<DihedralNF> {
        if self.refl {
            Ok(*self)
        } else {
            Ok(DihedralNF::twist(exact::neg(self.n, "dihedral inverse")?))
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Display for DihedralNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.refl {
            write!(f, "f{}", self.n)
        } else {
            write!(f, "g{}", self.n)
        }
    }
}

pub fn nf_to_mat(nf: DihedralNF) -> Unimodular2 {
    let d = if nf.refl { -1 } else { 1 };
    Unimodular2::new(1, 0, nf.n, d).expect("(1 0; n +-1) is unimodular")
}

/// Reads `(k, sign)` off a matrix `(1 0; k +-1)`.
pub fn to_nf(m: &Unimodular2) -> Result<DihedralNF> {
    let [a, b, c, d] = m.entries();
    match (a, b, d) {
        (1, 0, 1) => Ok(DihedralNF::twist(c)),
        (1, 0, -1) => Ok(DihedralNF::reflection(c)),
        _ => Err(Error::NotInGmu { a, b, c, d }),
    }
}

/// `mu o M == mu`. With `mu` adapted this is exactly the shape `(1 0; k +-1)`.
pub fn is_in_gmu(m: &Unimodular2, mu: &MaslovForm) -> bool {
    matches!(mu.pullback(m), Ok(pulled) if pulled == *mu)
}

/// Element of `G_mu`, matrix and normal form kept in sync.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GmuElement {
    mat: Unimodular2,
    nf: DihedralNF,
}

impl GmuElement {
    pub fn from_nf(nf: DihedralNF) -> Self {
        Self { mat: nf_to_mat(nf), nf }
    }

    pub fn from_matrix(mat: Unimodular2) -> Result<Self> {
        Ok(Self { mat, nf: to_nf(&mat)? })
    }

    pub fn identity() -> Self {
        Self::from_nf(DihedralNF::IDENTITY)
    }

    pub fn mat(&self) -> &Unimodular2 {
        &self.mat
    }

    pub fn nf(&self) -> DihedralNF {
        self.nf
    }

    pub fn compose(&self, rhs: &GmuElement) -> Result<GmuElement> {
        Ok(Self::from_nf(self.nf.mul(&rhs.nf)?))
    }

    pub fn inverse(&self) -> Result<GmuElement> {
        Ok(Self::from_nf(self.nf.inverse()?))
    }

    /// `h * self * h^-1`.
    pub fn conjugate_by(&self, h: &GmuElement) -> Result<GmuElement> {
        h.compose(self)?.compose(&h.inverse()?)
    }

    pub fn order(&self) -> Order {
        match (self.nf.refl, self.nf.n) {
            (true, _) => Order::Two,
            (false, 0) => Order::One,
            (false, _) => Order::Infinite,
        }
    }
}

impl fmt::Display for GmuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.nf.fmt(f)
    }
}

/// The involution `f_k = (1 0; k -1)`.
pub fn f_of(k: i64) -> GmuElement {
    GmuElement::from_nf(DihedralNF::reflection(k))
}

/// The twist `g_k = (1 0; k 1)`.
pub fn g_of(k: i64) -> GmuElement {
    GmuElement::from_nf(DihedralNF::twist(k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    One,
    Two,
    Infinite,
}

pub fn order(m: &GmuElement) -> Order {
    m.order()
}

/// `B^-1 M B`: the matrix of `M` in the basis given by the columns of `B`.
pub fn change_basis(m: &Unimodular2, b: &Unimodular2) -> Result<Unimodular2> {
    b.invert()?.compose(m)?.compose(b)
}

/// Checks `f_k f_l = g_{k-l}` by matrix multiplication.
pub fn product_identity(k: i64, l: i64) -> Result<bool> {
    let lhs = f_of(k).mat().compose(f_of(l).mat())?;
    Ok(lhs == *g_of(exact::sub(k, l, "product_identity")?).mat())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: Generator,
    pub exp: i64,
}

/// A word in `f = f_0` and `g = g_1` with integer exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let c = match l.gen {
                Generator::F => 'f',
                Generator::G => 'g',
            };
            if l.exp == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Whitespace-separated letters `f`, `g` with optional `^<int>`,
    /// e.g. `g^3 f g^-5`. The empty string and `e` denote the identity.
    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in s.split_whitespace() {
            let pos = offset + s[offset..].find(token).expect("token comes from s");
            offset = pos + token.len();
            if token == "e" {
                continue;
            }
            let (head, exp) = match token.split_once('^') {
                Some((h, e)) => {
                    let exp = e.parse::<i64>().map_err(|_| Error::Parse {
                        pos: pos + h.len() + 1,
                        msg: format!("invalid exponent '{e}'"),
                    })?;
                    (h, exp)
                }
                None => (token, 1),
            };
            let gen = match head {
                "f" => Generator::F,
                "g" => Generator::G,
                _ => {
                    return Err(Error::Parse { pos, msg: format!("unknown letter '{head}', expected f or g") });
                }
            };
            letters.push(Letter { gen, exp });
        }
        Ok(GroupWord(letters))
    }
}

/// Rewrites a word to normal form `g^n f^r` using `f^2 -> e` and
/// `f g^m -> g^-m f`, scanning left to right.
pub fn reduce_word(w: &GroupWord) -> Result<DihedralNF> {
    const OP: &str = "reduce_word";
    let mut n: i64 = 0;
    let mut refl = false;
    for letter in w.letters() {
        match letter.gen {
            Generator::F => refl ^= letter.exp.rem_euclid(2) == 1,
            Generator::G => {
                // g^n f g^m = g^(n-m) f
                n = if refl { exact::sub(n, letter.exp, OP)? } else { exact::add(n, letter.exp, OP)? };
            }
        }
    }
    Ok(DihedralNF { n, refl })
}
