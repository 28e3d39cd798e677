//! One fiber as a bottom-to-top stack of blocks carrying their `(l, eta)`.
#![allow(non_snake_case)]

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::halfint::HalfInt;
use crate::types::{is_free_sign, AdmissibleOrder, JordanBlock, Parameter, Sign, SignedData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slot {
    pub A: HalfInt,
    pub B: HalfInt,
    pub zeta: Sign,
    pub l: i64,
    pub eta: Sign,
}

impl Slot {
    pub fn new(A: HalfInt, B: HalfInt, zeta: Sign, l: i64, eta: Sign) -> Self {
        Slot { A, B, zeta, l, eta }.canonical()
    }

    pub fn from_block(blk: &JordanBlock, l: u32, eta: Sign) -> Self {
        Slot::new(blk.A, blk.B, blk.zeta, l as i64, eta)
    }

    pub fn length(&self) -> i64 {
        (self.A - self.B).expect_int()
    }

    pub fn l_max(&self) -> i64 {
        (self.length() + 1) / 2
    }

    pub fn l_in_range(&self) -> bool {
        0 <= self.l && self.l <= self.l_max()
    }

    /// `eta = +1` at `l = (A - B + 1) / 2`.
    pub fn canonical(mut self) -> Self {
        if self.l >= 0 && is_free_sign(self.length(), self.l as u32) {
            self.eta = Sign::Plus;
        }
        self
    }

    pub fn contains(&self, other: &Slot) -> bool {
        self.A >= other.A && self.B <= other.B
    }

    pub fn same_interval(&self, other: &Slot) -> bool {
        self.A == other.A && self.B == other.B
    }

    /// `A`, `B` and `zeta` only.
    pub fn shape(&self) -> (HalfInt, HalfInt, Sign) {
        (self.A, self.B, self.zeta)
    }

    /// Translate the interval by `t`, keeping `l` and `eta`.
    pub fn shifted(&self, t: i64) -> Slot {
        Slot {
            A: self.A + t,
            B: self.B + t,
            ..*self
        }
    }

    pub fn to_block(&self, rho: &crate::types::RhoLabel) -> JordanBlock {
        JordanBlock {
            rho: rho.clone(),
            A: self.A,
            B: self.B,
            zeta: self.zeta,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]{} l={} eta={}",
            self.A, self.B, self.zeta, self.l, self.eta
        )
    }
}

/// Fiber `f` of `(psi, order, data)` as slots, bottom first, together with
/// the occurrence index of each slot.
pub fn fiber_stack(
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
    f: usize,
) -> (Vec<Slot>, Vec<usize>) {
    let occ = order.bottom_up(f);
    let slots = occ
        .iter()
        .map(|&i| Slot::from_block(psi.block(i), data.l[i], data.eta[i]))
        .collect();
    (slots, occ)
}

/// Write slot values back into `data` at the given occurrences.
pub fn store_stack(data: &mut SignedData, slots: &[Slot], occ: &[usize]) {
    for (s, &i) in slots.iter().zip(occ) {
        data.l[i] = s.l as u32;
        data.eta[i] = s.eta;
    }
}

pub fn render(stack: &[Slot]) -> String {
    let parts: Vec<String> = stack.iter().map(|s| s.to_string()).collect();
    parts.join(" | ")
}
