//! Change-of-order transforms for adjacent blocks.
//!
//! Slot-level functions take the upper block first. Parameter-level
//! functions address a pair through an [`AdjacentSwap`] and return the data
//! for the swapped order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stack::Slot;
use crate::types::{is_free_sign, AdmissibleOrder, Parameter, Sign, SignedData};

/// Upper block contains the lower one, same `zeta`: the condition for
/// nonvanishing before the swap.
pub fn sup_condition(upper: &Slot, lower: &Slot) -> bool {
    let a = lower.length();
    let b = upper.length();
    if upper.eta == Sign::parity(a) * lower.eta {
        let d = upper.l - lower.l;
        0 <= d && d <= b - a
    } else {
        upper.l + lower.l > a
    }
}

/// Upper block contained in the lower one, same `zeta`.
pub fn sub_condition(upper: &Slot, lower: &Slot) -> bool {
    let big = lower.length();
    let small = upper.length();
    if upper.eta == Sign::parity(big) * lower.eta {
        let d = lower.l - upper.l;
        0 <= d && d <= big - small
    } else {
        upper.l + lower.l > small
    }
}

/// The basic condition for a comparable pair (`A_u >= A_d`, `B_u >= B_d`)
/// of equal `zeta`. For equal intervals this is the fundamental case.
pub fn basic_condition(upper: &Slot, lower: &Slot) -> bool {
    if upper.eta == Sign::parity(lower.length()) * lower.eta {
        upper.A - upper.l >= lower.A - lower.l && upper.B + upper.l >= lower.B + lower.l
    } else {
        upper.B + upper.l > lower.A - lower.l
    }
}

fn out_of_range(which: &str, s: &Slot) -> Error {
    Error::Hypothesis(format!(
        "{which} produced l = {} outside [0, {}] for {s}",
        s.l,
        s.l_max()
    ))
}

/// `S+` on a pair with the bigger block above. Returns `(new_lower,
/// new_upper)`: the big block now sits below.
pub fn s_plus_pair(upper: &Slot, lower: &Slot) -> Result<(Slot, Slot)> {
    if upper.zeta != lower.zeta || !upper.contains(lower) {
        return Err(Error::Hypothesis(format!(
            "S+ needs {upper} to contain {lower} with equal zeta"
        )));
    }
    if !sup_condition(upper, lower) {
        return Err(Error::Hypothesis(format!(
            "S+ input {upper} over {lower} fails the sup condition"
        )));
    }
    let a = lower.length();
    let b = upper.length();
    let (lk, lk1) = (upper.l, lower.l);
    let small_eta = Sign::parity(b) * lower.eta;
    let (l_new, eta_new) = if upper.eta != Sign::parity(a) * lower.eta {
        (lk - (a - 2 * lk1 + 1), lower.eta)
    } else if 2 * (lk - lk1) < b - 2 * a + 2 * lk1 {
        (lk + (a - 2 * lk1 + 1), -lower.eta)
    } else {
        (lk1 + (b - a) - (lk - lk1), lower.eta)
    };
    let big = Slot {
        l: l_new,
        eta: eta_new,
        ..*upper
    };
    if !big.l_in_range() {
        return Err(out_of_range("S+", &big));
    }
    let small = Slot {
        eta: small_eta,
        ..*lower
    };
    Ok((big.canonical(), small.canonical()))
}

/// `S-` on a pair with the smaller block above. Returns `(new_lower,
/// new_upper)`: the big block now sits above.
pub fn s_minus_pair(upper: &Slot, lower: &Slot) -> Result<(Slot, Slot)> {
    if upper.zeta != lower.zeta || !lower.contains(upper) {
        return Err(Error::Hypothesis(format!(
            "S- needs {lower} to contain {upper} with equal zeta"
        )));
    }
    if !sub_condition(upper, lower) {
        return Err(Error::Hypothesis(format!(
            "S- input {upper} over {lower} fails the sub condition"
        )));
    }
    let a = upper.length();
    let b = lower.length();
    let (lk_, lk1_) = (lower.l, upper.l);
    let small_eta = Sign::parity(b) * upper.eta;
    let lk1 = lk1_;
    let (l_new, eta_new) = if upper.eta != Sign::parity(b) * lower.eta {
        (lk_ - (a - 2 * lk1 + 1), Sign::parity(a) * small_eta)
    } else if 2 * (lk_ - lk1_) < b - 2 * a + 2 * lk1_ {
        (lk_ + (a - 2 * lk1 + 1), -(Sign::parity(a) * small_eta))
    } else {
        (lk1 + (b - a) - (lk_ - lk1_), Sign::parity(a) * small_eta)
    };
    let big = Slot {
        l: l_new,
        eta: eta_new,
        ..*lower
    };
    if !big.l_in_range() {
        return Err(out_of_range("S-", &big));
    }
    let small = Slot {
        eta: small_eta,
        ..*upper
    };
    Ok((small.canonical(), big.canonical()))
}

/// `U` on a pair of opposite `zeta`. Returns `(new_lower, new_upper)`.
pub fn u_pair(upper: &Slot, lower: &Slot) -> Result<(Slot, Slot)> {
    if upper.zeta == lower.zeta {
        return Err(Error::Hypothesis(format!(
            "U needs opposite zeta, got {upper} over {lower}"
        )));
    }
    let new_lower = Slot {
        eta: Sign::parity(lower.length() + 1) * upper.eta,
        ..*upper
    };
    let new_upper = Slot {
        eta: Sign::parity(upper.length() + 1) * lower.eta,
        ..*lower
    };
    Ok((new_lower, new_upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SwapKind {
    U,
    SPlus,
    SMinus,
}

/// Which transform exchanges `upper` and `lower`. Same-`zeta` pairs whose
/// intervals are not nested have none.
pub fn swap_kind(upper: &Slot, lower: &Slot) -> Result<SwapKind> {
    if upper.zeta != lower.zeta {
        Ok(SwapKind::U)
    } else if upper.contains(lower) {
        Ok(SwapKind::SPlus)
    } else if lower.contains(upper) {
        Ok(SwapKind::SMinus)
    } else {
        Err(Error::Hypothesis(format!(
            "no transform exchanges {upper} and {lower}: same zeta, intervals not nested"
        )))
    }
}

/// Exchange the pair. `Ok(None)` when the necessary condition fails, i.e.
/// the representation vanishes.
pub fn swap_pair(upper: &Slot, lower: &Slot) -> Result<Option<(SwapKind, Slot, Slot)>> {
    let kind = swap_kind(upper, lower)?;
    let res = match kind {
        SwapKind::U => u_pair(upper, lower)?,
        SwapKind::SPlus if sup_condition(upper, lower) => s_plus_pair(upper, lower)?,
        SwapKind::SMinus if sub_condition(upper, lower) => s_minus_pair(upper, lower)?,
        _ => return Ok(None),
    };
    Ok(Some((kind, res.0, res.1)))
}

/// Swap of the entries at `pos` and `pos + 1` of fiber `fiber`, counted
/// greatest first; `pos` holds the greater block `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacentSwap {
    pub fiber: usize,
    pub pos: usize,
}

impl AdjacentSwap {
    fn locate(&self, order: &AdmissibleOrder) -> Result<(usize, usize)> {
        if self.fiber >= order.fibers().len() {
            return Err(Error::InvalidData(format!("no fiber {}", self.fiber)));
        }
        let list = order.fiber(self.fiber);
        if self.pos + 1 >= list.len() {
            return Err(Error::InvalidData(format!(
                "swap position {} out of range for a fiber of {} blocks",
                self.pos,
                list.len()
            )));
        }
        Ok((list[self.pos], list[self.pos + 1]))
    }
}

fn apply_pair<F>(
    swap: AdjacentSwap,
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
    f: F,
) -> Result<SignedData>
where
    F: Fn(&Slot, &Slot) -> Result<(Slot, Slot)>,
{
    data.validate(psi)?;
    let (hi, lo) = swap.locate(order)?;
    if !order.swapped(swap.fiber, swap.pos).is_admissible(psi) {
        return Err(Error::Hypothesis(
            "the swapped order is not admissible".into(),
        ));
    }
    let upper = Slot::from_block(psi.block(hi), data.l[hi], data.eta[hi]);
    let lower = Slot::from_block(psi.block(lo), data.l[lo], data.eta[lo]);
    let (new_lower, new_upper) = f(&upper, &lower)?;
    // the slot that moved down is block `hi`
    let mut out = data.clone();
    out.l[hi] = new_lower.l as u32;
    out.eta[hi] = new_lower.eta;
    out.l[lo] = new_upper.l as u32;
    out.eta[lo] = new_upper.eta;
    Ok(out)
}

/// `S+` at `swap`; the result is data for `order.swapped(..)`.
pub fn s_plus(
    swap: AdjacentSwap,
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<SignedData> {
    apply_pair(swap, psi, order, data, |u, d| {
        let (nl, nu) = s_plus_pair(u, d)?;
        if !sub_condition(&nu, &nl) {
            return Err(Error::Hypothesis(format!(
                "S+ output {nu} over {nl} fails the sub condition"
            )));
        }
        Ok((nl, nu))
    })
}

/// `S-` at `swap`, where the greater block is the smaller interval.
pub fn s_minus(
    swap: AdjacentSwap,
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<SignedData> {
    apply_pair(swap, psi, order, data, |u, d| {
        let (nl, nu) = s_minus_pair(u, d)?;
        if !sup_condition(&nu, &nl) {
            return Err(Error::Hypothesis(format!(
                "S- output {nu} over {nl} fails the sup condition"
            )));
        }
        Ok((nl, nu))
    })
}

pub fn u_transform(
    swap: AdjacentSwap,
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<SignedData> {
    apply_pair(swap, psi, order, data, u_pair)
}

/// Whichever of `S+`, `S-`, `U` applies. `Ok(None)` when the data fails
/// the necessary condition for the pair.
pub fn transport_swap(
    swap: AdjacentSwap,
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<Option<SignedData>> {
    data.validate(psi)?;
    let (hi, lo) = swap.locate(order)?;
    let upper = Slot::from_block(psi.block(hi), data.l[hi], data.eta[hi]);
    let lower = Slot::from_block(psi.block(lo), data.l[lo], data.eta[lo]);
    match swap_kind(&upper, &lower)? {
        SwapKind::U => u_transform(swap, psi, order, data).map(Some),
        SwapKind::SPlus if sup_condition(&upper, &lower) => {
            s_plus(swap, psi, order, data).map(Some)
        }
        SwapKind::SMinus if sub_condition(&upper, &lower) => {
            s_minus(swap, psi, order, data).map(Some)
        }
        _ => Ok(None),
    }
}

/// `l` agrees everywhere and `eta` agrees wherever `l < (A - B + 1) / 2`.
pub fn sigma0_equiv(psi: &Parameter, d1: &SignedData, d2: &SignedData) -> Result<bool> {
    d1.validate(psi)?;
    d2.validate(psi)?;
    Ok(psi.blocks().iter().enumerate().all(|(i, blk)| {
        d1.l[i] == d2.l[i] && (d1.eta[i] == d2.eta[i] || is_free_sign(blk.length(), d1.l[i]))
    }))
}

/// Adjacent swaps turning `from` into `to`, by bubble sort. Each
/// intermediate order is admissible when both ends are.
pub fn swap_path(
    psi: &Parameter,
    from: &AdmissibleOrder,
    to: &AdmissibleOrder,
) -> Result<Vec<AdjacentSwap>> {
    if !from.is_admissible(psi) || !to.is_admissible(psi) {
        return Err(Error::InvalidData("reorder needs admissible orders".into()));
    }
    let target = to.ranks(psi.len());
    let mut cur = from.clone();
    let mut path = Vec::new();
    for f in 0..cur.fibers().len() {
        loop {
            let list = cur.fiber(f);
            let Some(pos) =
                (0..list.len().saturating_sub(1)).find(|&p| target[list[p]] < target[list[p + 1]])
            else {
                break;
            };
            cur = cur.swapped(f, pos);
            debug_assert!(cur.is_admissible(psi));
            path.push(AdjacentSwap { fiber: f, pos });
        }
    }
    debug_assert_eq!(&cur, to);
    Ok(path)
}

/// Transport `data` from `from` to `to`. `Ok(None)` when some swap on the
/// way meets a failed necessary condition, so the representation is zero.
pub fn reorder(
    psi: &Parameter,
    from: &AdmissibleOrder,
    to: &AdmissibleOrder,
    data: &SignedData,
) -> Result<Option<SignedData>> {
    data.validate(psi)?;
    let mut cur = from.clone();
    let mut d = data.canonical(psi);
    for sw in swap_path(psi, from, to)? {
        match transport_swap(sw, psi, &cur, &d)? {
            Some(next) => d = next,
            None => return Ok(None),
        }
        cur = cur.swapped(sw.fiber, sw.pos);
    }
    Ok(Some(d))
}
