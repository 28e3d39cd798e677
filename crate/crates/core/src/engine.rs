//! The general procedure: reduce every fiber to good shape and read off
//! the verdict.
#![allow(non_snake_case)]

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::characters::quasisplit_ok;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::reductions::{
    change_sign_half, change_sign_integral, expand, expand_limit, is_far_above, pull_equal,
    pull_unequal, ReductionStep, Subproblem,
};
use crate::stack::{fiber_stack, render, Slot};
use crate::transforms::{basic_condition, swap_pair, SwapKind};
use crate::types::{AdmissibleOrder, Parameter, SignedData};

pub const DEFAULT_RECURSION_LIMIT: usize = 10_000;

/// Lexicographic: block count, then `sum 2B` plus the number of pairs with
/// opposite `zeta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Measure {
    pub blocks: usize,
    pub weight: i64,
}

impl Measure {
    pub fn of(stack: &[Slot]) -> Measure {
        let twice_b: i64 = stack.iter().map(|s| s.B.twice()).sum();
        let mut opposite = 0i64;
        for (i, x) in stack.iter().enumerate() {
            opposite += stack[i + 1..].iter().filter(|y| y.zeta != x.zeta).count() as i64;
        }
        Measure {
            blocks: stack.len(),
            weight: twice_b + opposite,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceEvent {
    /// Adjacent exchange of positions `lower` and `lower + 1`.
    Swap {
        kind: SwapKind,
        lower: usize,
        after: Vec<Slot>,
    },
    Step(ReductionStep),
    /// A necessary condition failed while reordering.
    FastFail {
        stack: Vec<Slot>,
        lower: usize,
    },
    /// A far chunk of one or two blocks, decided directly.
    Chunk {
        chunk: Vec<Slot>,
        nonvanishing: bool,
    },
    GoodShape {
        stack: Vec<Slot>,
        nonvanishing: bool,
    },
    Leaf {
        stack: Vec<Slot>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub nonvanishing: bool,
    pub trace: Vec<TraceEvent>,
}

impl Verdict {
    /// Re-run the procedure and confirm the same trace and verdict, and
    /// recompute every recorded step from its input.
    pub fn replay(
        &self,
        psi: &Parameter,
        order: &AdmissibleOrder,
        data: &SignedData,
    ) -> Result<bool> {
        let mut engine = Engine::new();
        let again = engine.decide(psi, order, data)?;
        if again != *self {
            return Ok(false);
        }
        for ev in &self.trace {
            match ev {
                TraceEvent::Step(step) => {
                    if recompute(step)? != *step {
                        return Ok(false);
                    }
                }
                TraceEvent::Chunk {
                    chunk,
                    nonvanishing,
                } if chunk_verdict(chunk) != *nonvanishing => {
                    return Ok(false);
                }
                TraceEvent::GoodShape {
                    stack,
                    nonvanishing,
                } if decide_good_shape_stack(stack)? != *nonvanishing => {
                    return Ok(false);
                }
                _ => {}
            }
        }
        Ok(true)
    }

    pub fn reduction_steps(&self) -> usize {
        self.trace
            .iter()
            .filter(|e| matches!(e, TraceEvent::Step(_)))
            .count()
    }
}

fn recompute(step: &ReductionStep) -> Result<ReductionStep> {
    use crate::reductions::ReductionKind::*;
    match step.kind {
        PullUnequal => pull_unequal(&step.before),
        PullEqual => pull_equal(&step.before),
        Expand => {
            let t = (step.subproblems[0]
                .stack
                .last()
                .map(|s| s.A)
                .unwrap_or_default()
                - step.before.last().map(|s| s.A).unwrap_or_default())
            .expect_int();
            expand(&step.before, t)
        }
        ChangeSignIntegral => change_sign_integral(&step.before),
        ChangeSignHalf => change_sign_half(&step.before),
    }
}

fn chunk_verdict(chunk: &[Slot]) -> bool {
    match chunk {
        [lower, upper] => basic_condition(upper, lower),
        _ => true,
    }
}

fn pair_chunk_ok(lower: &Slot, upper: &Slot) -> bool {
    lower.zeta == upper.zeta && upper.A >= lower.A && upper.B >= lower.B
}

/// Chunk sizes, bottom first, when the fiber splits into far-separated
/// singletons and comparable same-`zeta` pairs. Singletons are preferred.
pub fn good_shape_chunks(stack: &[Slot]) -> Result<Option<Vec<usize>>> {
    let n = stack.len();
    let mut best: Vec<Option<Vec<usize>>> = vec![None; n + 1];
    best[0] = Some(Vec::new());
    for end in 1..=n {
        for size in [1usize, 2] {
            if size > end || best[end].is_some() {
                continue;
            }
            let start = end - size;
            let Some(prev) = best[start].clone() else {
                continue;
            };
            let chunk = &stack[start..end];
            if size == 2 && !pair_chunk_ok(&chunk[0], &chunk[1]) {
                continue;
            }
            if !is_far_above(stack, &stack[..start], chunk)? {
                continue;
            }
            let mut v = prev;
            v.push(size);
            best[end] = Some(v);
        }
    }
    Ok(best[n].take())
}

pub fn good_shape_stack(stack: &[Slot]) -> Result<bool> {
    Ok(good_shape_chunks(stack)?.is_some())
}

/// Every fiber splits into far-separated singletons and comparable
/// same-`zeta` pairs.
pub fn good_shape(psi: &Parameter, order: &AdmissibleOrder) -> Result<bool> {
    let zero = SignedData::new(
        vec![0; psi.len()],
        vec![crate::types::Sign::Plus; psi.len()],
    );
    for f in 0..psi.fibers().len() {
        let (stack, _) = fiber_stack(psi, order, &zero, f);
        if !good_shape_stack(&stack)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn decide_good_shape_stack(stack: &[Slot]) -> Result<bool> {
    let Some(sizes) = good_shape_chunks(stack)? else {
        return Err(Error::Hypothesis(format!(
            "not in good shape: {}",
            render(stack)
        )));
    };
    let mut start = 0;
    for size in sizes {
        if !chunk_verdict(&stack[start..start + size]) {
            return Ok(false);
        }
        start += size;
    }
    Ok(true)
}

/// The basic condition on each pair chunk.
pub fn decide_good_shape(
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<bool> {
    data.validate(psi)?;
    let data = data.canonical(psi);
    for f in 0..psi.fibers().len() {
        let (stack, _) = fiber_stack(psi, order, &data, f);
        if !decide_good_shape_stack(&stack)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineStats {
    pub steps: u64,
    pub measure_checks: u64,
    pub memo_hits: u64,
}

/// Decision procedure with a memo table. Not shared between threads; use
/// one engine per worker.
#[derive(Debug)]
pub struct Engine {
    pub recursion_limit: usize,
    memo: HashMap<Vec<Slot>, bool>,
    trace: Option<Vec<TraceEvent>>,
    steps_this_call: usize,
    pub stats: EngineStats,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

enum Moved {
    Done(Vec<Slot>),
    Vanished,
}

impl Engine {
    pub fn new() -> Self {
        Engine::with_recursion_limit(DEFAULT_RECURSION_LIMIT)
    }

    pub fn with_recursion_limit(limit: usize) -> Self {
        Engine {
            recursion_limit: limit,
            memo: HashMap::new(),
            trace: None,
            steps_this_call: 0,
            stats: EngineStats::default(),
        }
    }

    pub fn clear_memo(&mut self) {
        self.memo.clear();
    }

    fn check_input(
        psi: &Parameter,
        order: &AdmissibleOrder,
        data: &SignedData,
    ) -> Result<SignedData> {
        data.validate(psi)?;
        if order.fibers().len() != psi.fibers().len() || !order.is_admissible(psi) {
            return Err(Error::InvalidData(
                "order is not admissible for this parameter".into(),
            ));
        }
        if !quasisplit_ok(psi, data)? {
            return Err(Error::InvalidData(
                "data violates the quasisplit constraint".into(),
            ));
        }
        Ok(data.canonical(psi))
    }

    /// Verdict with the full trace.
    pub fn decide(
        &mut self,
        psi: &Parameter,
        order: &AdmissibleOrder,
        data: &SignedData,
    ) -> Result<Verdict> {
        let data = Engine::check_input(psi, order, data)?;
        self.trace = Some(Vec::new());
        let res = self.run_fibers(psi, order, &data);
        let trace = self.trace.take().unwrap_or_default();
        Ok(Verdict {
            nonvanishing: res?,
            trace,
        })
    }

    /// Verdict only; uses the memo table.
    pub fn is_nonvanishing(
        &mut self,
        psi: &Parameter,
        order: &AdmissibleOrder,
        data: &SignedData,
    ) -> Result<bool> {
        let data = Engine::check_input(psi, order, data)?;
        self.trace = None;
        self.run_fibers(psi, order, &data)
    }

    fn run_fibers(
        &mut self,
        psi: &Parameter,
        order: &AdmissibleOrder,
        data: &SignedData,
    ) -> Result<bool> {
        self.steps_this_call = 0;
        for f in 0..psi.fibers().len() {
            let (stack, _) = fiber_stack(psi, order, data, f);
            if !self.decide_fiber(&stack)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One fiber, given bottom first. No quasisplit check.
    pub fn decide_fiber(&mut self, stack: &[Slot]) -> Result<bool> {
        let stack: Vec<Slot> = stack.iter().map(|s| s.canonical()).collect();
        if let Some(v) = self.memo_get(&stack) {
            return Ok(v);
        }
        if good_shape_stack(&stack)? {
            let v = decide_good_shape_stack(&stack)?;
            self.log(|| TraceEvent::GoodShape {
                stack: stack.clone(),
                nonvanishing: v,
            });
            return Ok(v);
        }
        self.solve(stack)
    }

    /// The reduction procedure without the good-shape shortcut at the top.
    pub fn decide_by_reduction(&mut self, stack: &[Slot]) -> Result<bool> {
        self.steps_this_call = 0;
        self.solve(stack.iter().map(|s| s.canonical()).collect())
    }

    fn log(&mut self, ev: impl FnOnce() -> TraceEvent) {
        if let Some(t) = self.trace.as_mut() {
            t.push(ev());
        }
    }

    fn memo_get(&mut self, stack: &[Slot]) -> Option<bool> {
        if self.trace.is_some() {
            return None;
        }
        let v = self.memo.get(stack).copied();
        if v.is_some() {
            self.stats.memo_hits += 1;
        }
        v
    }

    fn child(&mut self, parent: Measure, stack: Vec<Slot>) -> Result<bool> {
        let m = Measure::of(&stack);
        self.stats.measure_checks += 1;
        if m >= parent {
            return Err(Error::MeasureViolation(format!(
                "{parent:?} -> {m:?} at {}",
                render(&stack)
            )));
        }
        self.solve(stack)
    }

    fn subproblem(&mut self, parent: Measure, sub: &Subproblem) -> Result<bool> {
        let chunk = sub.far_chunk();
        let v = chunk_verdict(chunk);
        if !chunk.is_empty() {
            self.log(|| TraceEvent::Chunk {
                chunk: chunk.to_vec(),
                nonvanishing: v,
            });
        }
        if !v {
            return Ok(false);
        }
        self.child(parent, sub.rest().to_vec())
    }

    /// Move the block at `from` to `to` by adjacent exchanges.
    fn move_block(&mut self, mut w: Vec<Slot>, mut from: usize, to: usize) -> Result<Moved> {
        while from != to {
            let lower = if from < to { from } else { from - 1 };
            match swap_pair(&w[lower + 1], &w[lower])? {
                Some((kind, nl, nu)) => {
                    w[lower] = nl;
                    w[lower + 1] = nu;
                    self.log(|| TraceEvent::Swap {
                        kind,
                        lower,
                        after: w.clone(),
                    });
                }
                None => {
                    self.log(|| TraceEvent::FastFail {
                        stack: w.clone(),
                        lower,
                    });
                    return Ok(Moved::Vanished);
                }
            }
            from = if from < to { from + 1 } else { from - 1 };
        }
        Ok(Moved::Done(w))
    }

    fn solve(&mut self, w: Vec<Slot>) -> Result<bool> {
        if w.len() <= 1 {
            self.log(|| TraceEvent::Leaf { stack: w.clone() });
            return Ok(true);
        }
        if let Some(v) = self.memo_get(&w) {
            return Ok(v);
        }
        self.steps_this_call += 1;
        self.stats.steps += 1;
        if self.steps_this_call > self.recursion_limit {
            return Err(Error::RecursionLimit {
                limit: self.recursion_limit,
            });
        }
        let v = self.solve_inner(&w)?;
        if self.trace.is_none() {
            self.memo.insert(w, v);
        }
        Ok(v)
    }

    fn solve_inner(&mut self, w: &[Slot]) -> Result<bool> {
        let n = w.len();
        let measure = Measure::of(w);
        let a_max = w.iter().map(|s| s.A).max().expect("non-empty");
        let b_min = w
            .iter()
            .filter(|s| s.A == a_max)
            .map(|s| s.B)
            .min()
            .expect("non-empty");
        let ix = (0..n)
            .rev()
            .find(|&i| w[i].A == a_max && w[i].B == b_min)
            .expect("exists");
        let x = w[ix];

        let same = |i: usize| i != ix && w[i].zeta == x.zeta;
        let pull: Vec<usize> = (0..n)
            .filter(|&i| same(i) && x.contains(&w[i]) && !x.same_interval(&w[i]))
            .collect();
        let equal: Vec<usize> = (0..n)
            .filter(|&i| same(i) && x.same_interval(&w[i]))
            .collect();

        if !pull.is_empty() || !equal.is_empty() {
            let set = if pull.is_empty() { &equal } else { &pull };
            let a2 = set.iter().map(|&i| w[i].A).max().expect("non-empty");
            let jp = *set.iter().rev().find(|&&i| w[i].A == a2).expect("exists");
            let Moved::Done(w2) = self.move_block(w.to_vec(), ix, n - 1)? else {
                return Ok(false);
            };
            let jpos = if jp < ix { jp } else { jp - 1 };
            let Moved::Done(w2) = self.move_block(w2, jpos, n - 2)? else {
                return Ok(false);
            };
            if pull.is_empty() {
                let step = pull_equal(&w2)?;
                return self.run_step(measure, step);
            }
            if !crate::transforms::sup_condition(&w2[n - 1], &w2[n - 2]) {
                self.log(|| TraceEvent::FastFail {
                    stack: w2.clone(),
                    lower: n - 2,
                });
                return Ok(false);
            }
            let step = pull_unequal(&w2)?;
            return self.run_step(measure, step);
        }

        let Moved::Done(w2) = self.move_block(w.to_vec(), ix, n - 1)? else {
            return Ok(false);
        };
        let t = expand_limit(&w2)?;
        if t > 0 {
            let step = expand(&w2, t)?;
            return self.run_step(measure, step);
        }
        if w2[..n - 1].iter().any(|s| s.zeta == x.zeta)
            || !(x.B == HalfInt::ZERO || x.B == HalfInt::HALF)
        {
            return Err(Error::Hypothesis(format!(
                "no reduction applies to {}",
                render(&w2)
            )));
        }
        let Moved::Done(w3) = self.move_block(w2, n - 1, 0)? else {
            return Ok(false);
        };
        let step = if x.B == HalfInt::ZERO {
            change_sign_integral(&w3)?
        } else {
            change_sign_half(&w3)?
        };
        self.run_step(measure, step)
    }

    fn run_step(&mut self, measure: Measure, step: ReductionStep) -> Result<bool> {
        let subs = step.subproblems.clone();
        self.log(|| TraceEvent::Step(step));
        // cheap chunk checks first
        for sub in &subs {
            if !chunk_verdict(sub.far_chunk()) {
                let chunk = sub.far_chunk().to_vec();
                self.log(|| TraceEvent::Chunk {
                    chunk,
                    nonvanishing: false,
                });
                return Ok(false);
            }
        }
        for sub in &subs {
            if !self.subproblem(measure, sub)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
