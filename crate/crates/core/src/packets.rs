//! Enumerating the packet: every canonical quasisplit `(l, eta)` whose
//! representation is nonzero.

use rayon::prelude::*;

use crate::characters::quasisplit_ok;
use crate::engine::{Engine, EngineStats, DEFAULT_RECURSION_LIMIT};
use crate::error::{Error, Result};
use crate::types::{is_free_sign, AdmissibleOrder, Parameter, Sign, SignedData};

/// Parallelism and engine settings for enumeration.
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    pub recursion_limit: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            jobs: None,
            recursion_limit: DEFAULT_RECURSION_LIMIT,
        }
    }
}

/// Sorted packet members plus the summed engine counters.
#[derive(Clone, Debug, Default)]
pub struct PacketReport {
    pub members: Vec<SignedData>,
    pub stats: EngineStats,
}

/// Number of `l`-grid points.
pub fn grid_size(psi: &Parameter) -> Result<u64> {
    psi.blocks().iter().try_fold(1u64, |acc, b| {
        acc.checked_mul(b.l_max() as u64 + 1)
            .ok_or_else(|| Error::InvalidData("l-grid too large".into()))
    })
}

fn decode(psi: &Parameter, mut idx: u64) -> Vec<u32> {
    psi.blocks()
        .iter()
        .map(|b| {
            let m = b.l_max() as u64 + 1;
            let v = (idx % m) as u32;
            idx /= m;
            v
        })
        .collect()
}

/// Canonical sign vectors for a fixed `l`.
fn sign_vectors(psi: &Parameter, l: &[u32]) -> Vec<Vec<Sign>> {
    let mut out = vec![Vec::with_capacity(l.len())];
    for (i, blk) in psi.blocks().iter().enumerate() {
        let choices: &[Sign] = if is_free_sign(blk.length(), l[i]) {
            &[Sign::Plus]
        } else {
            &[Sign::Plus, Sign::Minus]
        };
        out = out
            .into_iter()
            .flat_map(|v| {
                choices.iter().map(move |&s| {
                    let mut w = v.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    out
}

/// All canonical quasisplit data, without the nonvanishing filter.
pub fn candidates(psi: &Parameter) -> Result<Vec<SignedData>> {
    let n = grid_size(psi)?;
    let mut out = Vec::new();
    for idx in 0..n {
        let l = decode(psi, idx);
        for eta in sign_vectors(psi, &l) {
            let d = SignedData::new(l.clone(), eta);
            if quasisplit_ok(psi, &d)? {
                out.push(d);
            }
        }
    }
    Ok(out)
}

struct Worker {
    engine: Engine,
    members: Vec<SignedData>,
    err: Option<Error>,
}

impl Worker {
    fn visit(&mut self, psi: &Parameter, order: &AdmissibleOrder, idx: u64) -> Result<()> {
        let l = decode(psi, idx);
        for eta in sign_vectors(psi, &l) {
            let d = SignedData::new(l.clone(), eta);
            if quasisplit_ok(psi, &d)? && self.engine.is_nonvanishing(psi, order, &d)? {
                self.members.push(d);
            }
        }
        Ok(())
    }
}

fn merge(mut a: EngineStats, b: EngineStats) -> EngineStats {
    a.steps += b.steps;
    a.measure_checks += b.measure_checks;
    a.memo_hits += b.memo_hits;
    a
}

fn run(psi: &Parameter, order: &AdmissibleOrder, limit: usize) -> Result<PacketReport> {
    let n = grid_size(psi)?;
    let (members, stats, err) = (0..n)
        .into_par_iter()
        .fold(
            || Worker {
                engine: Engine::with_recursion_limit(limit),
                members: Vec::new(),
                err: None,
            },
            |mut w, idx| {
                if w.err.is_none() {
                    if let Err(e) = w.visit(psi, order, idx) {
                        w.err = Some(e);
                    }
                }
                w
            },
        )
        .map(|w| (w.members, w.engine.stats, w.err))
        .reduce(
            || (Vec::new(), EngineStats::default(), None),
            |(mut m1, s1, e1), (m2, s2, e2)| {
                m1.extend(m2);
                (m1, merge(s1, s2), e1.or(e2))
            },
        );
    if let Some(e) = err {
        return Err(e);
    }
    let mut members = members;
    members.sort();
    Ok(PacketReport { members, stats })
}

pub fn enumerate_with(
    psi: &Parameter,
    order: &AdmissibleOrder,
    opts: EnumerateOptions,
) -> Result<PacketReport> {
    match opts.jobs {
        None => run(psi, order, opts.recursion_limit),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::InvalidData(format!("thread pool: {e}")))?;
            pool.install(|| run(psi, order, opts.recursion_limit))
        }
    }
}

/// Nonvanishing members, sorted.
pub fn enumerate(psi: &Parameter, order: &AdmissibleOrder) -> Result<Vec<SignedData>> {
    Ok(enumerate_with(psi, order, EnumerateOptions::default())?.members)
}

pub fn packet_size(psi: &Parameter, order: &AdmissibleOrder) -> Result<usize> {
    Ok(enumerate(psi, order)?.len())
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every admissible order, up to `limit` of them.
pub fn admissible_orders(psi: &Parameter, limit: usize) -> Result<Vec<AdmissibleOrder>> {
    let mut lists: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for fib in psi.fibers() {
        if fib.members.len() > 9 {
            return Err(Error::InvalidData(format!(
                "fiber {} is too large to list its orders",
                fib.rho.id
            )));
        }
        let perms = permutations(&fib.members);
        let mut next = Vec::new();
        for l in &lists {
            for p in &perms {
                let mut v = l.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        lists = next;
    }
    let mut out = Vec::new();
    for l in lists {
        let o = AdmissibleOrder::from_lists(psi, l)?;
        if o.is_admissible(psi) {
            out.push(o);
            if out.len() >= limit {
                break;
            }
        }
    }
    Ok(out)
}
