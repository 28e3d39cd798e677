//! Pull, Expand and Change-sign as rewrites of a single fiber, plus the
//! "far away" thresholds.
//!
//! A fiber is a stack of [`Slot`]s listed from the bottom. Pull and Expand
//! act on the top of the stack and Change-sign on the bottom, so blocks that
//! would have to sit far above the working block never occur.
#![allow(non_snake_case)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::stack::Slot;
use crate::transforms::{s_plus_pair, sup_condition};
use crate::types::{Parameter, RhoLabel, Sign};

fn overflow() -> Error {
    Error::InvalidData("threshold arithmetic overflowed".into())
}

fn total_width(fiber: &[Slot]) -> i64 {
    fiber.iter().map(|s| s.length() + 1).sum()
}

/// `2^r * sum (A' - B' + 1)` over `fiber`.
pub fn far_away_threshold_slots(fiber: &[Slot], r: u32) -> Result<HalfInt> {
    let pow = 1i64
        .checked_shl(r)
        .filter(|&p| p > 0)
        .ok_or_else(overflow)?;
    let v = pow.checked_mul(total_width(fiber)).ok_or_else(overflow)?;
    Ok(HalfInt::from_int(v))
}

/// `2^(r|J|) * (sum_J A' + |J| * sum (A' - B' + 1))`, the sum running over
/// the whole fiber.
pub fn far_from_set_threshold_slots(fiber: &[Slot], j: &[Slot], r: u32) -> Result<HalfInt> {
    let exp = r.checked_mul(j.len() as u32).ok_or_else(overflow)?;
    let pow = 1i64
        .checked_shl(exp)
        .filter(|&p| p > 0)
        .ok_or_else(overflow)?;
    let sum_a = j.iter().fold(HalfInt::ZERO, |acc, s| acc + s.A);
    let width = (j.len() as i64)
        .checked_mul(total_width(fiber))
        .ok_or_else(overflow)?;
    let inner = sum_a + width;
    inner
        .twice()
        .checked_mul(pow)
        .map(HalfInt::from_twice)
        .ok_or_else(overflow)
}

fn fiber_slots(psi: &Parameter, rho: &RhoLabel) -> Vec<(usize, Slot)> {
    psi.blocks()
        .iter()
        .enumerate()
        .filter(|(_, b)| &b.rho == rho)
        .map(|(i, b)| (i, Slot::new(b.A, b.B, b.zeta, 0, Sign::Plus)))
        .collect()
}

/// Level-`r` "far away" bound for the fiber of `rho`: a block is far away
/// when its `B` exceeds this.
pub fn far_away_threshold(psi: &Parameter, rho: &RhoLabel, r: u32) -> Result<HalfInt> {
    let fiber: Vec<Slot> = fiber_slots(psi, rho).into_iter().map(|(_, s)| s).collect();
    far_away_threshold_slots(&fiber, r)
}

/// Level-`r` "far away from `J`" bound; `J` lists occurrence indices.
pub fn far_from_set_threshold(
    psi: &Parameter,
    rho: &RhoLabel,
    j: &[usize],
    r: u32,
) -> Result<HalfInt> {
    let fiber = fiber_slots(psi, rho);
    let mut js = Vec::with_capacity(j.len());
    for &i in j {
        let Some((_, s)) = fiber.iter().find(|(k, _)| *k == i) else {
            return Err(Error::InvalidData(format!(
                "block {i} is not in the fiber of {}",
                rho.id
            )));
        };
        js.push(*s);
    }
    let fiber: Vec<Slot> = fiber.into_iter().map(|(_, s)| s).collect();
    far_from_set_threshold_slots(&fiber, &js, r)
}

/// Smallest `T >= 0` with `b + T` above `threshold`.
pub fn minimal_shift(b: HalfInt, threshold: HalfInt) -> i64 {
    ((threshold - b).floor() + 1).max(0)
}

/// `chunk` sits level-1 far above `below`, measured inside `fiber`.
pub fn is_far_above(fiber: &[Slot], below: &[Slot], chunk: &[Slot]) -> Result<bool> {
    if below.is_empty() {
        return Ok(true);
    }
    let thr = far_from_set_threshold_slots(fiber, below, 1)?;
    Ok(chunk.iter().all(|s| s.B > thr))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReductionKind {
    PullUnequal,
    PullEqual,
    Expand,
    ChangeSignIntegral,
    ChangeSignHalf,
}

/// A fiber whose top `chunk` blocks sit level-1 far above the rest. With
/// `chunk == 0` it is a plain configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subproblem {
    pub stack: Vec<Slot>,
    pub chunk: usize,
}

impl Subproblem {
    pub fn plain(stack: Vec<Slot>) -> Self {
        Subproblem { stack, chunk: 0 }
    }

    pub fn rest(&self) -> &[Slot] {
        &self.stack[..self.stack.len() - self.chunk]
    }

    pub fn far_chunk(&self) -> &[Slot] {
        &self.stack[self.stack.len() - self.chunk..]
    }
}

/// One rewrite: the input fiber and the subproblems whose conjunction
/// decides it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub before: Vec<Slot>,
    pub subproblems: Vec<Subproblem>,
}

fn hyp(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn top_pair(stack: &[Slot]) -> Result<(&[Slot], Slot, Slot)> {
    if stack.len() < 2 {
        return Err(hyp("Pull needs at least two blocks"));
    }
    let n = stack.len();
    Ok((&stack[..n - 2], stack[n - 1], stack[n - 2]))
}

/// Both blocks moved far above `rest` with their `B` aligned.
fn aligned_far_pair(stack: &[Slot], rest: &[Slot], p: &Slot, q: &Slot) -> Result<Subproblem> {
    let b = p.B.max(q.B);
    let t = minimal_shift(b, far_from_set_threshold_slots(stack, rest, 1)?);
    let target = b + t;
    let mut s = rest.to_vec();
    s.push(q.shifted((target - q.B).expect_int()));
    s.push(p.shifted((target - p.B).expect_int()));
    Ok(Subproblem { stack: s, chunk: 2 })
}

fn far_single(stack: &[Slot], rest: Vec<Slot>, x: &Slot) -> Result<Subproblem> {
    let t = minimal_shift(x.B, far_from_set_threshold_slots(stack, &rest, 1)?);
    let mut s = rest;
    s.push(x.shifted(t));
    Ok(Subproblem { stack: s, chunk: 1 })
}

/// Pull on the top two blocks, the top one strictly containing the other
/// with equal `zeta`. Returns the three subproblems: the pair moved far
/// together, the top block moved far, and after `S+` the smaller block
/// moved far.
pub fn pull_unequal(stack: &[Slot]) -> Result<ReductionStep> {
    let (rest, p, q) = top_pair(stack)?;
    if p.zeta != q.zeta || !p.contains(&q) || p.same_interval(&q) {
        return Err(hyp(format!(
            "Pull needs {p} to strictly contain {q} with equal zeta"
        )));
    }
    if !sup_condition(&p, &q) {
        return Err(hyp(format!(
            "Pull input {p} over {q} fails the sup condition"
        )));
    }
    let first = aligned_far_pair(stack, rest, &p, &q)?;
    let mut with_q = rest.to_vec();
    with_q.push(q);
    let second = far_single(stack, with_q, &p)?;
    let (big, small) = s_plus_pair(&p, &q)?;
    let mut with_big = rest.to_vec();
    with_big.push(big);
    let third = far_single(stack, with_big, &small)?;
    Ok(ReductionStep {
        kind: ReductionKind::PullUnequal,
        before: stack.to_vec(),
        subproblems: vec![first, second, third],
    })
}

/// Pull on two equal top blocks. No same-`zeta` interval strictly inside
/// theirs may occur below.
pub fn pull_equal(stack: &[Slot]) -> Result<ReductionStep> {
    let (rest, p, q) = top_pair(stack)?;
    if p.zeta != q.zeta || !p.same_interval(&q) {
        return Err(hyp(format!(
            "Pull (equal length) needs equal blocks, got {p} over {q}"
        )));
    }
    if rest
        .iter()
        .any(|s| s.zeta == p.zeta && p.contains(s) && !p.same_interval(s))
    {
        return Err(hyp(
            "Pull (equal length) with a smaller same-zeta interval below",
        ));
    }
    let first = aligned_far_pair(stack, rest, &p, &q)?;
    let mut with_q = rest.to_vec();
    with_q.push(q);
    let second = far_single(stack, with_q, &p)?;
    Ok(ReductionStep {
        kind: ReductionKind::PullEqual,
        before: stack.to_vec(),
        subproblems: vec![first, second],
    })
}

fn check_expand_shape(stack: &[Slot]) -> Result<Slot> {
    let Some(x) = stack.last().copied() else {
        return Err(hyp("Expand on an empty fiber"));
    };
    let rest = &stack[..stack.len() - 1];
    if rest.iter().any(|s| s.A > x.A) {
        return Err(hyp(format!("Expand needs {x} to have maximal A")));
    }
    if rest.iter().any(|s| s.zeta == x.zeta && x.contains(s)) {
        return Err(hyp(format!("Expand with a same-zeta interval inside {x}")));
    }
    Ok(x)
}

/// Largest legal expansion of the top block: down to the nearest lower `B`
/// of equal `zeta`, or to `floor(B)` when there is none.
pub fn expand_limit(stack: &[Slot]) -> Result<i64> {
    let x = check_expand_shape(stack)?;
    let below = stack[..stack.len() - 1]
        .iter()
        .filter(|s| s.zeta == x.zeta)
        .map(|s| s.B)
        .max();
    Ok(match below {
        Some(b) => (x.B - b).expect_int(),
        None => x.B.floor(),
    })
}

/// Replace the top block `[A, B]` by `[A + t, B - t]` and `l` by `l + t`.
pub fn expand(stack: &[Slot], t: i64) -> Result<ReductionStep> {
    let limit = expand_limit(stack)?;
    if t < 0 || t > limit {
        return Err(hyp(format!("expansion {t} outside [0, {limit}]")));
    }
    let x = *stack.last().expect("checked non-empty");
    let mut out = stack.to_vec();
    *out.last_mut().expect("non-empty") = Slot::new(x.A + t, x.B - t, x.zeta, x.l + t, x.eta);
    Ok(ReductionStep {
        kind: ReductionKind::Expand,
        before: stack.to_vec(),
        subproblems: vec![Subproblem::plain(out)],
    })
}

fn check_change_sign_shape(stack: &[Slot], b: HalfInt) -> Result<Slot> {
    let Some(x) = stack.first().copied() else {
        return Err(hyp("Change sign on an empty fiber"));
    };
    if x.B != b {
        return Err(hyp(format!("Change sign needs B = {b}, got {x}")));
    }
    for s in &stack[1..] {
        if s.A > x.A || s.zeta == x.zeta {
            return Err(hyp(format!("Change sign of {x} with {s} above")));
        }
    }
    Ok(x)
}

/// Flip `zeta` of the bottom block, which has `B = 0`.
pub fn change_sign_integral(stack: &[Slot]) -> Result<ReductionStep> {
    let x = check_change_sign_shape(stack, HalfInt::ZERO)?;
    let mut out = stack.to_vec();
    out[0] = Slot { zeta: -x.zeta, ..x };
    Ok(ReductionStep {
        kind: ReductionKind::ChangeSignIntegral,
        before: stack.to_vec(),
        subproblems: vec![Subproblem::plain(out)],
    })
}

/// The bottom block has `B = 1/2`; it becomes `[A + 1, 1/2]` with the
/// opposite `zeta`.
pub fn change_sign_half(stack: &[Slot]) -> Result<ReductionStep> {
    let x = check_change_sign_shape(stack, HalfInt::HALF)?;
    let mut eta = x.eta;
    if 2 * x.l == (x.A + HalfInt::HALF).expect_int() {
        eta = Sign::Minus;
    }
    let (l, new_eta) = match eta {
        Sign::Plus => (x.l + 1, Sign::Minus),
        Sign::Minus => (x.l, Sign::Plus),
    };
    let mut out = stack.to_vec();
    out[0] = Slot::new(x.A + 1, x.B, -x.zeta, l, new_eta);
    Ok(ReductionStep {
        kind: ReductionKind::ChangeSignHalf,
        before: stack.to_vec(),
        subproblems: vec![Subproblem::plain(out)],
    })
}
