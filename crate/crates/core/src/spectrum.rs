//! Fixed classes of involutions, the Maslov ratio `m_f`, and the
//! invariants `t` (twist number) and `s` (spectrum) of a monodromy group.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classifier::SubgroupClass;
use crate::dihedral::{f_of, is_in_gmu, GmuElement, Order};
use crate::error::{Error, Result};
use crate::exact::{self, adapt_basis, Int2Vec, MaslovForm, Unimodular2};

/// Primitive generator of `Fix(m)` with `mu(eta) > 0`, for an involution
/// `m` of `G_mu` written in any basis.
pub fn fixed_class_in(m: &Unimodular2, mu: &MaslovForm) -> Result<Int2Vec> {
    if m.compose(m)? != Unimodular2::IDENTITY || *m == Unimodular2::IDENTITY {
        return Err(Error::NotInvolution);
    }
    if !is_in_gmu(m, mu) {
        let [a, b, c, d] = m.entries();
        return Err(Error::NotInGmu { a, b, c, d });
    }
    const OP: &str = "fixed_class";
    // kernel of m - I; an involution other than +-I has rank one here
    let rows = [
        (exact::sub(m.a(), 1, OP)?, m.b()),
        (m.c(), exact::sub(m.d(), 1, OP)?),
    ];
    let &(r1, r2) = rows.iter().find(|(x, y)| *x != 0 || *y != 0).ok_or(Error::NotInvolution)?;
    let (mut eta, _) = Int2Vec::new(r2, exact::neg(r1, OP)?).primitive_part()?;
    for (x, y) in rows {
        if exact::add(exact::mul(x, eta.p, OP)?, exact::mul(y, eta.q, OP)?, OP)? != 0 {
            return Err(Error::NotInvolution);
        }
    }
    if mu.eval(eta)? < 0 {
        eta = eta.checked_neg()?;
    }
    Ok(eta)
}

/// `eta_f` for an involution given in adapted coordinates.
pub fn fixed_class(f: &GmuElement) -> Result<Int2Vec> {
    if f.order() != Order::Two {
        return Err(Error::NotInvolution);
    }
    fixed_class_in(f.mat(), &MaslovForm::adapted(1)?)
}

/// `mu(eta_f) / m_L` for an involution `m` written in the same basis as `mu`.
pub fn mf_in_basis(m: &Unimodular2, mu: &MaslovForm) -> Result<i64> {
    let eta = fixed_class_in(m, mu)?;
    let value = mu.eval(eta)?;
    let ml = mu.divisibility();
    if value % ml != 0 || !(1..=2).contains(&(value / ml)) {
        return Err(Error::MfOutOfRange(value / ml));
    }
    Ok(value / ml)
}

/// `m_f` for `f` in the adapted coordinates of `mu`. A non-adapted `mu` is
/// first adapted with [`adapt_basis`] and `f` carried back to the original
/// basis.
pub fn mf_value(f: &GmuElement, mu: &MaslovForm) -> Result<i64> {
    if f.order() != Order::Two {
        return Err(Error::NotInvolution);
    }
    let adapted = adapt_basis(mu)?;
    let original = adapted.basis.compose(f.mat())?.compose(&adapted.basis.invert()?)?;
    mf_in_basis(&original, mu)
}

/// `|det [eta_f | sigma]|` in any basis; `sigma` must be primitive with
/// `mu(sigma) = 0`.
pub fn mf_by_determinant_in(m: &Unimodular2, sigma: Int2Vec, mu: &MaslovForm) -> Result<i64> {
    if !sigma.is_primitive() || mu.eval(sigma)? != 0 {
        return Err(Error::InvalidSigma { p: sigma.p, q: sigma.q });
    }
    let eta = fixed_class_in(m, mu)?;
    const OP: &str = "mf_by_determinant";
    let det = exact::sub(exact::mul(eta.p, sigma.q, OP)?, exact::mul(sigma.p, eta.q, OP)?, OP)?;
    det.checked_abs().ok_or(Error::Overflow(OP))
}

/// Determinant route to `m_f` in adapted coordinates.
pub fn mf_by_determinant(f: &GmuElement, sigma: Int2Vec) -> Result<i64> {
    if f.order() != Order::Two {
        return Err(Error::NotInvolution);
    }
    mf_by_determinant_in(f.mat(), sigma, &MaslovForm::adapted(1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvolutionData {
    pub element: GmuElement,
    pub eta: Int2Vec,
    pub mf: i64,
}

impl InvolutionData {
    pub fn new(element: GmuElement, mu: &MaslovForm) -> Result<Self> {
        let eta = fixed_class(&element)?;
        let mf = mf_value(&element, mu)?;
        Ok(Self { element, eta, mf })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantPair {
    pub t: u64,
    pub s: u8,
}

impl fmt::Display for InvariantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={} s={}", self.t, self.s)
    }
}

/// Smallest positive twist index in the group, `0` if there is none.
pub fn twist_number(cls: &SubgroupClass) -> u64 {
    match *cls {
        SubgroupClass::CyclicZ { d } | SubgroupClass::DihedralInf { d, .. } => d.unsigned_abs(),
        SubgroupClass::Trivial | SubgroupClass::OrderTwo { .. } => 0,
    }
}

/// Smallest `m_f` over the involutions of the group, `0` if there are none.
///
/// The involutions of `DihedralInf(k, d)` are `f_{k + jd}`, and `m_{f_n}`
/// depends only on the parity of `n`: some index is even iff `k` is even
/// or `d` is odd.
pub fn spectrum_value(cls: &SubgroupClass, mu: &MaslovForm) -> Result<u8> {
    match *cls {
        SubgroupClass::Trivial | SubgroupClass::CyclicZ { .. } => Ok(0),
        SubgroupClass::OrderTwo { k } => Ok(mf_value(&f_of(k), mu)? as u8),
        SubgroupClass::DihedralInf { k, d } => Ok(if k % 2 == 0 || d % 2 != 0 { 1 } else { 2 }),
    }
}

/// Cross-check for [`spectrum_value`]: minimum of `m_f` over `f_{k + jd}`
/// for `|j| <= radius`.
pub fn spectrum_by_enumeration(cls: &SubgroupClass, mu: &MaslovForm, radius: i64) -> Result<u8> {
    let (k, d) = match *cls {
        SubgroupClass::Trivial | SubgroupClass::CyclicZ { .. } => return Ok(0),
        SubgroupClass::OrderTwo { k } => (k, 0),
        SubgroupClass::DihedralInf { k, d } => (k, d),
    };
    let mut best = i64::MAX;
    for j in -radius..=radius {
        let n = exact::add(k, exact::mul(j, d, "spectrum")?, "spectrum")?;
        best = best.min(mf_value(&f_of(n), mu)?);
    }
    Ok(best as u8)
}

pub fn invariants(cls: &SubgroupClass, mu: &MaslovForm) -> Result<InvariantPair> {
    Ok(InvariantPair { t: twist_number(cls), s: spectrum_value(cls, mu)? })
}
