//! Companions and the weakly-horizontally-invariant condition.

use super::{bold_h, FinDoubleCategory, Square};
use crate::error::{Error, Result};
use crate::twocat::is_equivalence_1cell;

/// A vertical companion `u` of a horizontal `f: c -> d` with its two
/// binding squares.
///
/// `phi` has top `f`, left `u` and identity right and bottom; `psi` has
/// identity top and left, right `u` and bottom `f`. They satisfy
/// `hcomp(phi, psi) = V(f)` (psi on the left) and `vcomp(phi, psi) = H(u)`
/// (psi on top).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompanionPair {
    pub horizontal: usize,
    pub vertical: usize,
    pub phi: usize,
    pub psi: usize,
}

pub fn is_companion(d: &FinDoubleCategory, p: &CompanionPair) -> Result<bool> {
    d.check_horizontal(p.horizontal)?;
    d.check_vertical(p.vertical)?;
    d.check_square(p.phi)?;
    d.check_square(p.psi)?;
    let (f, u) = (d.h(p.horizontal), d.v(p.vertical));
    if f != u {
        return Ok(false);
    }
    let (c, e) = (f.src, f.tgt);
    let phi_ok = d.square(p.phi) == Square::new(p.horizontal, d.h_id(e), p.vertical, d.v_id(e));
    let psi_ok = d.square(p.psi) == Square::new(d.h_id(c), p.horizontal, d.v_id(c), p.vertical);
    Ok(phi_ok
        && psi_ok
        && d.hcomp(p.phi, p.psi) == Some(d.sq_v_id(p.horizontal))
        && d.vcomp(p.phi, p.psi) == Some(d.sq_h_id(p.vertical)))
}

/// The first companion of `f` in vertical, then square order.
pub fn find_companion(d: &FinDoubleCategory, f: usize) -> Result<Option<CompanionPair>> {
    d.check_horizontal(f)?;
    let a = d.h(f);
    for &u in d.verticals(a.src, a.tgt) {
        for &phi in d.squares_with(Square::new(f, d.h_id(a.tgt), u, d.v_id(a.tgt))) {
            for &psi in d.squares_with(Square::new(d.h_id(a.src), f, d.v_id(a.src), u)) {
                let p = CompanionPair {
                    horizontal: f,
                    vertical: u,
                    phi,
                    psi,
                };
                if is_companion(d, &p)? {
                    return Ok(Some(p));
                }
            }
        }
    }
    Ok(None)
}

/// The square from the vertical of `from` to the vertical of `to` obtained
/// by stacking `from.phi` under `to.psi`. Both must be companions of the
/// same horizontal.
pub fn canonical_square(
    d: &FinDoubleCategory,
    from: &CompanionPair,
    to: &CompanionPair,
) -> Result<usize> {
    if from.horizontal != to.horizontal {
        return Err(Error::Precondition(
            "companions of different horizontals".into(),
        ));
    }
    d.vcomp(from.phi, to.psi)
        .ok_or_else(|| Error::BoundaryMismatch("companion squares do not stack".into()))
}

/// The first horizontal equivalence of `bold_h(D)` without a vertical
/// companion, or `None` when `D` is weakly horizontally invariant.
pub fn whi_failure(d: &FinDoubleCategory) -> Result<Option<usize>> {
    let h = bold_h(d);
    for f in 0..d.horizontal_count() {
        if is_equivalence_1cell(&h, f)?.is_some() && find_companion(d, f)?.is_none() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Whether every horizontal equivalence has a vertical companion.
pub fn is_whi(d: &FinDoubleCategory) -> Result<bool> {
    Ok(whi_failure(d)?.is_none())
}
