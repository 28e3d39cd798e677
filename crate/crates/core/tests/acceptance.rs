//! Acceptance suite: one PASS/FAIL line per criterion.
#![allow(non_snake_case)]

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use apacket::characters::resolved_character;
use apacket::engine::{Engine, EngineStats};
use apacket::oracle::{compare_three_block, oracle_two_block, three_block_count, ThreeBlock};
use apacket::packets::{admissible_orders, candidates, enumerate_with, EnumerateOptions};
use apacket::segments::{linked_gen, linked_segments, GenSegment, Orientation, Segment};
use apacket::stack::Slot;
use apacket::transforms::{
    reorder, s_minus_pair, s_plus_pair, sub_condition, sup_condition, u_pair, u_transform,
    AdjacentSwap,
};
use apacket::types::{
    is_free_sign, AdmissibleOrder, GroupKind, JordanBlock, Parameter, Parity, RhoLabel,
};
use apacket::{Error, HalfInt, Sign, SignedData};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Engine counters and measure failures gathered from criteria 1, 2, 3, 5.
#[derive(Default)]
struct MeasureLog {
    stats: EngineStats,
    violations: Vec<String>,
}

impl MeasureLog {
    fn add(&mut self, s: EngineStats) {
        self.stats.steps += s.steps;
        self.stats.measure_checks += s.measure_checks;
        self.stats.memo_hits += s.memo_hits;
    }

    /// Passes every error through, remembering measure violations.
    fn watch<T>(&mut self, r: apacket::Result<T>) -> Result<T, String> {
        r.map_err(|e| {
            if let Error::MeasureViolation(m) = &e {
                self.violations.push(m.clone());
            }
            e.to_string()
        })
    }
}

type Outcome = Result<String, String>;

fn report(n: u32, name: &str, start: Instant, out: Outcome) -> bool {
    let secs = start.elapsed().as_secs_f64();
    match out {
        Ok(detail) => {
            println!("PASS  {n}. {name}: {detail} ({secs:.2}s)");
            true
        }
        Err(detail) => {
            println!("FAIL  {n}. {name}: {detail} ({secs:.2}s)");
            false
        }
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    if start.elapsed() > limit {
        Err(format!(
            "{what} took {:.1}s, over the {}s budget",
            start.elapsed().as_secs_f64(),
            limit.as_secs()
        ))
    } else {
        Ok(())
    }
}

fn golden_count(log: &mut MeasureLog) -> Outcome {
    let start = Instant::now();
    let t = ThreeBlock::new(8, 4, 37, 7, 40, 10).map_err(|e| e.to_string())?;
    let oracle = three_block_count(&t).map_err(|e| e.to_string())?;

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = apacket::cli::run(
        ["apacket", "size", "--example", "moeglin-s8"],
        &mut out,
        &mut err,
    );
    let printed = String::from_utf8_lossy(&out).trim().to_string();
    if code != 0 {
        return Err(format!(
            "size command exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }

    let loaded = log.watch(apacket::io::builtin("moeglin-s8"))?;
    let order = log.watch(loaded.order_or_default())?;
    let report = log.watch(enumerate_with(
        &loaded.psi,
        &order,
        EnumerateOptions::default(),
    ))?;
    log.add(report.stats);
    within(start, Duration::from_secs(10), "golden count")?;
    if oracle != 1651 || printed != "1651" || report.members.len() != 1651 {
        return Err(format!(
            "oracle {oracle}, command printed {printed:?}, engine {}",
            report.members.len()
        ));
    }
    Ok(format!(
        "oracle 1651, engine 1651, command output {printed:?}"
    ))
}

fn family(max_a: i64) -> Vec<ThreeBlock> {
    let mut out = Vec::new();
    for A3 in 0..=max_a {
        for A2 in 0..=A3 {
            for A1 in 0..=A2 {
                for B1 in 0..=A1 {
                    for B2 in B1..=A2 {
                        for B3 in B2..=A3 {
                            out.push(ThreeBlock {
                                A1,
                                B1,
                                A2,
                                B2,
                                A3,
                                B3,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn oracle_equivalence(log: &mut MeasureLog) -> Outcome {
    use rayon::prelude::*;
    let start = Instant::now();
    let members = family(12);
    let (cases, bad, stats, errors) = members
        .par_iter()
        .fold(
            || (0u64, Vec::new(), Engine::new(), Vec::new()),
            |(mut cases, mut bad, mut engine, mut errors), t| {
                match compare_three_block(t, &mut engine) {
                    Ok(c) => {
                        cases += c.cases;
                        bad.extend(c.mismatches.into_iter().map(|d| format!("{t:?} {d:?}")));
                    }
                    Err(e) => errors.push(e),
                }
                (cases, bad, engine, errors)
            },
        )
        .map(|(c, b, e, errs)| (c, b, vec![e.stats], errs))
        .reduce(
            || (0, Vec::new(), Vec::new(), Vec::new()),
            |mut x, y| {
                x.0 += y.0;
                x.1.extend(y.1);
                x.2.extend(y.2);
                x.3.extend(y.3);
                x
            },
        );
    stats.into_iter().for_each(|s| log.add(s));
    if let Some(e) = errors.into_iter().next() {
        return log.watch(Err(e));
    }
    within(start, Duration::from_secs(60), "oracle comparison")?;
    if members.len() < 200 {
        return Err(format!("only {} instances", members.len()));
    }
    if !bad.is_empty() {
        return Err(format!("{} mismatches, first {}", bad.len(), bad[0]));
    }
    Ok(format!(
        "{} instances (all with A3 <= 12), {cases} cases, 0 mismatches",
        members.len()
    ))
}

fn intervals(max_twice_a: i64, half: bool) -> Vec<(HalfInt, HalfInt)> {
    let mut out = Vec::new();
    let off = if half { 1 } else { 0 };
    for a in (off..=max_twice_a).step_by(2) {
        for b in (off..=a).step_by(2) {
            out.push((HalfInt::from_twice(a), HalfInt::from_twice(b)));
        }
    }
    out
}

fn relation(lo: &JordanBlock, up: &JordanBlock) -> &'static str {
    if lo.same_interval(up) {
        "equal"
    } else if up.contains(lo) || lo.contains(up) {
        "nested"
    } else if up.B > lo.A || lo.B > up.A {
        "disjoint"
    } else {
        "comparable"
    }
}

fn two_block_forms(log: &mut MeasureLog) -> Outcome {
    let mut engine = Engine::new();
    let mut kinds: std::collections::BTreeMap<&str, u64> = Default::default();
    let (mut configs, mut cases, mut qs_cases) = (0u64, 0u64, 0u64);
    let mut bad = Vec::new();
    for half in [false, true] {
        let (rho, group) = if half {
            (RhoLabel::new("s", Parity::Symplectic, 2), GroupKind::SpEven)
        } else {
            (RhoLabel::new("o", Parity::Orthogonal, 1), GroupKind::SpEven)
        };
        let ivs = intervals(16, half);
        for &zeta in &[Sign::Plus, Sign::Minus] {
            for &(A1, B1) in &ivs {
                for &(A2, B2) in &ivs {
                    let lo =
                        JordanBlock::new(rho.clone(), A1, B1, zeta).map_err(|e| e.to_string())?;
                    let up =
                        JordanBlock::new(rho.clone(), A2, B2, zeta).map_err(|e| e.to_string())?;
                    let psi = Parameter::new(Some(group), vec![lo.clone(), up.clone()])
                        .map_err(|e| e.to_string())?;
                    let Ok(order) = AdmissibleOrder::checked(&psi, vec![vec![1, 0]]) else {
                        continue;
                    };
                    configs += 1;
                    *kinds.entry(relation(&lo, &up)).or_default() += 1;
                    for l1 in 0..=lo.l_max() {
                        for l2 in 0..=up.l_max() {
                            for e1 in [Sign::Plus, Sign::Minus] {
                                for e2 in [Sign::Plus, Sign::Minus] {
                                    let d = SignedData::new(vec![l1, l2], vec![e1, e2]);
                                    let want = oracle_two_block(&lo, &up, &d)
                                        .map_err(|e| e.to_string())?;
                                    let stack = [
                                        Slot::from_block(&lo, l1, e1),
                                        Slot::from_block(&up, l2, e2),
                                    ];
                                    let got = log.watch(engine.decide_fiber(&stack))?;
                                    cases += 1;
                                    if got != want {
                                        bad.push(format!("{lo} below {up}, {d:?}: engine {got}, closed form {want}"));
                                    }
                                    if apacket::characters::quasisplit_ok(&psi, &d)
                                        .map_err(|e| e.to_string())?
                                    {
                                        qs_cases += 1;
                                        let got =
                                            log.watch(engine.is_nonvanishing(&psi, &order, &d))?;
                                        if got != want {
                                            bad.push(format!("{lo} below {up}, {d:?}: decide {got}, closed form {want}"));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    log.add(engine.stats);
    for k in ["equal", "nested", "comparable", "disjoint"] {
        if kinds.get(k).copied().unwrap_or(0) == 0 {
            return Err(format!("no {k} configurations were generated"));
        }
    }
    if !bad.is_empty() {
        return Err(format!("{} mismatches, first: {}", bad.len(), bad[0]));
    }
    Ok(format!("{configs} configurations {kinds:?}, {cases} fiber cases, {qs_cases} quasisplit decide cases, 0 mismatches"))
}

fn slot_strategy(max_len: i64) -> impl Strategy<Value = (i64, i64, bool, i64, bool)> {
    // (B in twice units, length, positive eta, l seed, half-integral)
    (0i64..8, 0..=max_len, any::<bool>(), 0i64..64, any::<bool>())
}

fn mk(B_twice: i64, len: i64, half: bool, l_seed: i64, eta: bool, zeta: Sign) -> Slot {
    let B = HalfInt::from_twice(2 * (B_twice / 2) + if half { 1 } else { 0 });
    let A = B + len;
    let lmax = (len + 1) / 2;
    Slot::new(
        A,
        B,
        zeta,
        l_seed % (lmax + 1),
        if eta { Sign::Plus } else { Sign::Minus },
    )
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        max_global_rejects: 10_000_000,
        failure_persistence: None,
        ..Config::default()
    })
}

fn canon(s: Slot) -> Slot {
    s.canonical()
}

fn transform_algebra() -> Outcome {
    const N: u32 = 10_000;
    let mut details = Vec::new();

    // U twice is the identity, exactly
    let mut r = runner(N);
    r.run(
        &(slot_strategy(9), slot_strategy(9), any::<bool>()),
        |(x, y, z)| {
            let zu = if z { Sign::Plus } else { Sign::Minus };
            let up = mk(x.0, x.1, x.4, x.3, x.2, zu);
            let lo = mk(y.0, y.1, x.4, y.3, y.2, -zu);
            let (nl, nu) = u_pair(&up, &lo).unwrap();
            let (l2, u2) = u_pair(&nu, &nl).unwrap();
            prop_assert_eq!((l2, u2), (lo, up));
            Ok(())
        },
    )
    .map_err(|e| format!("U involution: {e}"))?;
    details.push(format!("U∘U {N}"));

    // S- after S+ on sup-condition inputs
    let mut r = runner(N);
    r.run(
        &(
            slot_strategy(6),
            0i64..=6,
            0i64..=6,
            0i64..64,
            any::<bool>(),
        ),
        |(small, extra_lo, extra_hi, l_seed, eta)| {
            let zeta = Sign::Plus;
            let lo = mk(
                small.0 + 2 * extra_lo,
                small.1,
                small.4,
                small.3,
                small.2,
                zeta,
            );
            let len = lo.length() + extra_lo + extra_hi;
            let bB = lo.B - extra_lo;
            prop_assume!(bB >= HalfInt::ZERO);
            let up = Slot::new(
                bB + len,
                bB,
                zeta,
                l_seed % ((len + 1) / 2 + 1),
                if eta { Sign::Plus } else { Sign::Minus },
            );
            prop_assume!(up.contains(&lo) && sup_condition(&up, &lo));
            let (nl, nu) = s_plus_pair(&up, &lo).unwrap();
            prop_assert!(sub_condition(&nu, &nl));
            let (l2, u2) = s_minus_pair(&nu, &nl).unwrap();
            prop_assert_eq!((canon(l2), canon(u2)), (canon(lo), canon(up)));
            Ok(())
        },
    )
    .map_err(|e| format!("S-∘S+: {e}"))?;
    details.push(format!("S-∘S+ {N}"));

    // S+ after S- on sub-condition inputs
    let mut r = runner(N);
    r.run(
        &(
            slot_strategy(6),
            0i64..=6,
            0i64..=6,
            0i64..64,
            any::<bool>(),
        ),
        |(small, extra_lo, extra_hi, l_seed, eta)| {
            let zeta = Sign::Minus;
            let up = mk(
                small.0 + 2 * extra_lo,
                small.1,
                small.4,
                small.3,
                small.2,
                zeta,
            );
            let len = up.length() + extra_lo + extra_hi;
            let bB = up.B - extra_lo;
            prop_assume!(bB >= HalfInt::ZERO);
            let lo = Slot::new(
                bB + len,
                bB,
                zeta,
                l_seed % ((len + 1) / 2 + 1),
                if eta { Sign::Plus } else { Sign::Minus },
            );
            prop_assume!(lo.contains(&up) && sub_condition(&up, &lo));
            let (nl, nu) = s_minus_pair(&up, &lo).unwrap();
            prop_assert!(sup_condition(&nu, &nl));
            let (l2, u2) = s_plus_pair(&nu, &nl).unwrap();
            prop_assert_eq!((canon(l2), canon(u2)), (canon(lo), canon(up)));
            Ok(())
        },
    )
    .map_err(|e| format!("S+∘S-: {e}"))?;
    details.push(format!("S+∘S- {N}"));

    // S+ is a bijection from sup-condition classes onto sub-condition classes
    let mut pairs = 0;
    for half in [0, 1] {
        for big_len in 0..=6i64 {
            for small_len in 0..=big_len {
                for offset in 0..=(big_len - small_len) {
                    let bB = HalfInt::from_twice(2 + half);
                    let sB = bB + offset;
                    let classes = |A: HalfInt, B: HalfInt| {
                        let len = (A - B).expect_int();
                        let mut v = Vec::new();
                        for l in 0..=(len + 1) / 2 {
                            for e in [Sign::Plus, Sign::Minus] {
                                if e == Sign::Minus && is_free_sign(len, l as u32) {
                                    continue;
                                }
                                v.push(Slot::new(A, B, Sign::Plus, l, e));
                            }
                        }
                        v
                    };
                    let bigs = classes(bB + big_len, bB);
                    let smalls = classes(sB + small_len, sB);
                    let mut domain = 0;
                    let mut image = HashSet::new();
                    let mut target = HashSet::new();
                    for &b in &bigs {
                        for &s in &smalls {
                            if sup_condition(&b, &s) {
                                domain += 1;
                                let (nl, nu) = s_plus_pair(&b, &s).map_err(|e| e.to_string())?;
                                image.insert((canon(nl), canon(nu)));
                            }
                            if sub_condition(&s, &b) {
                                target.insert((canon(b), canon(s)));
                            }
                        }
                    }
                    if image.len() != domain || image != target {
                        return Err(format!(
                            "S+ not bijective for lengths {big_len} ⊇ {small_len}, offset {offset}: domain {domain}, image {}, target {}",
                            image.len(),
                            target.len()
                        ));
                    }
                    pairs += 1;
                }
            }
        }
    }
    details.push(format!("S+ bijective on {pairs} nested shapes"));
    Ok(details.join(", "))
}

fn random_parameter(rng: &mut ChaCha8Rng) -> Option<Parameter> {
    let mut blocks = Vec::new();
    let fibers = rng.gen_range(1..=2);
    for f in 0..fibers {
        let (rho, half) = if f == 0 {
            (RhoLabel::new("o", Parity::Orthogonal, 1), false)
        } else {
            (RhoLabel::new("s", Parity::Symplectic, 2), true)
        };
        let k = rng.gen_range(if fibers == 1 { 3 } else { 2 }..=4);
        for _ in 0..k {
            let b2 = 2 * rng.gen_range(0..=4) + half as i64;
            let len = rng.gen_range(0..=4);
            let zeta = if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let B = HalfInt::from_twice(b2);
            blocks.push(JordanBlock::new(rho.clone(), B + len, B, zeta).ok()?);
        }
    }
    Parameter::new(Some(GroupKind::SpEven), blocks).ok()
}

fn order_invariance(log: &mut MeasureLog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut params, mut orders_seen, mut members_seen) = (0, 0, 0);
    let mut attempts = 0;
    while params < 100 {
        attempts += 1;
        if attempts > 100_000 {
            return Err(format!("only {params} usable random parameters"));
        }
        let Some(psi) = random_parameter(&mut rng) else {
            continue;
        };
        let all = log.watch(admissible_orders(&psi, 10_000))?;
        if all.len() < 3 || log.watch(candidates(&psi))?.len() > 40_000 {
            continue;
        }
        let mut picked = vec![all[0].clone(), all[all.len() - 1].clone()];
        while picked.len() < 4.min(all.len()) {
            let o = all[rng.gen_range(0..all.len())].clone();
            if !picked.contains(&o) {
                picked.push(o);
            }
        }
        let mut sets = Vec::new();
        for o in &picked {
            let r = log.watch(enumerate_with(&psi, o, EnumerateOptions::default()))?;
            log.add(r.stats);
            sets.push(r.members);
        }
        let n0 = sets[0].len();
        if sets.iter().any(|s| s.len() != n0) {
            let sizes: Vec<usize> = sets.iter().map(|s| s.len()).collect();
            return Err(format!(
                "sizes {sizes:?} differ across orders for {:?}",
                psi.blocks()
            ));
        }
        for (i, o) in picked.iter().enumerate().skip(1) {
            let target: BTreeSet<&SignedData> = sets[i].iter().collect();
            let mut image = BTreeSet::new();
            for d in &sets[0] {
                let moved = log.watch(reorder(&psi, &picked[0], o, d))?;
                let Some(m) = moved else {
                    return Err(format!(
                        "member {d:?} vanished under reorder for {:?}",
                        psi.blocks()
                    ));
                };
                let m = m.canonical(&psi);
                if !target.contains(&m) {
                    return Err(format!(
                        "reorder sends member {d:?} to non-member {m:?} for {:?}",
                        psi.blocks()
                    ));
                }
                image.insert(m);
            }
            if image.len() != target.len() {
                return Err(format!("reorder is not injective for {:?}", psi.blocks()));
            }
        }
        params += 1;
        orders_seen += picked.len();
        members_seen += n0 * picked.len();
    }
    Ok(format!(
        "{params} parameters, {orders_seen} orders, {members_seen} members matched bijectively"
    ))
}

fn elementary_param(
    rng: &mut ChaCha8Rng,
    half: bool,
    k: usize,
) -> Option<(Parameter, AdmissibleOrder, SignedData)> {
    let rho = if half {
        RhoLabel::new("s", Parity::Symplectic, 2)
    } else {
        RhoLabel::new("o", Parity::Orthogonal, 1)
    };
    let mut cs = BTreeSet::new();
    while cs.len() < k {
        cs.insert(rng.gen_range(0..12i64));
    }
    let blocks: Vec<JordanBlock> = cs
        .iter()
        .map(|&c| {
            let C = HalfInt::from_twice(2 * c + half as i64);
            let zeta = if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            };
            JordanBlock::new(rho.clone(), C, C, zeta).unwrap()
        })
        .collect();
    let psi = Parameter::new(Some(GroupKind::SpEven), blocks).ok()?;
    let mut perm: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let order = AdmissibleOrder::checked(&psi, vec![perm]).ok()?;
    let eta = (0..k)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect();
    Some((psi, order, SignedData::new(vec![0; k], eta)))
}

fn character_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = [0u32; 2];
    let mut attempts = 0;
    while done.iter().any(|&n| n < 1000) {
        attempts += 1;
        if attempts > 1_000_000 {
            return Err(format!("only {done:?} usable swaps"));
        }
        let half = done[0] >= 1000 || (done[1] < 1000 && rng.gen_bool(0.5));
        let k = rng.gen_range(2..=5);
        let Some((psi, order, data)) = elementary_param(&mut rng, half, k) else {
            continue;
        };
        let list = order.fiber(0).to_vec();
        let spots: Vec<usize> = (0..k - 1)
            .filter(|&p| psi.block(list[p]).zeta != psi.block(list[p + 1]).zeta)
            .collect();
        if spots.is_empty() {
            continue;
        }
        let pos = spots[rng.gen_range(0..spots.len())];
        let swap = AdjacentSwap { fiber: 0, pos };
        let moved = u_transform(swap, &psi, &order, &data).map_err(|e| e.to_string())?;
        let before = resolved_character(&psi, &order, &data).map_err(|e| e.to_string())?;
        let after =
            resolved_character(&psi, &order.swapped(0, pos), &moved).map_err(|e| e.to_string())?;
        if before != after {
            return Err(format!(
                "identity fails for {:?} order {:?} eta {:?}",
                psi.blocks(),
                list,
                data.eta
            ));
        }
        done[half as usize] += 1;
    }
    Ok(format!(
        "{} swaps with integral A, {} with half-integral A",
        done[0], done[1]
    ))
}

fn segment_predicate() -> Outcome {
    const N: u32 = 10_000;
    let grid = (-10i64..=10, 1usize..=4, 1usize..=4, any::<bool>());
    let build = |(x, m, n, o): (i64, usize, usize, bool)| {
        let o = if o {
            Orientation::RowsDecreasing
        } else {
            Orientation::RowsIncreasing
        };
        GenSegment::from_corner(HalfInt::from_twice(x), m, n, o).unwrap()
    };
    let mut r = runner(N);
    r.run(
        &(grid.clone(), grid, any::<bool>()),
        |(g, h, same_class)| {
            let g = build(g);
            let mut hv = h;
            if same_class {
                hv.0 = 2 * (hv.0 / 2) + g.at(0, 0).twice().rem_euclid(2);
            }
            let h = build(hv);
            let gh = linked_gen(&g, &h).unwrap();
            prop_assert_eq!(gh, linked_gen(&h, &g).unwrap(), "symmetry");
            prop_assert_eq!(
                gh,
                linked_gen(&g.transpose(), &h.transpose()).unwrap(),
                "transpose"
            );
            Ok(())
        },
    )
    .map_err(|e| format!("random grids: {e}"))?;

    let mut compared = 0;
    for parity in [0, 1] {
        let pts: Vec<HalfInt> = (-10..=10)
            .filter(|t: &i64| t.rem_euclid(2) == parity)
            .map(HalfInt::from_twice)
            .collect();
        let segs: Vec<(HalfInt, HalfInt)> = pts
            .iter()
            .flat_map(|&x| pts.iter().map(move |&y| (x, y)))
            .collect();
        for &(x1, y1) in &segs {
            for &(x2, y2) in &segs {
                let dir = |x: HalfInt, y: HalfInt| (x - y).twice().signum();
                let (d1, d2) = (dir(x1, y1), dir(x2, y2));
                if d1 * d2 < 0 {
                    continue;
                }
                let row = |x: HalfInt, y: HalfInt, d: i64| {
                    let n = (x - y).abs().expect_int() as usize + 1;
                    let o = if d >= 0 {
                        Orientation::RowsDecreasing
                    } else {
                        Orientation::RowsIncreasing
                    };
                    GenSegment::from_corner(x, 1, n, o).unwrap()
                };
                let d = if d1 != 0 { d1 } else { d2 };
                let want = linked_segments(
                    &Segment::new(x1, y1).unwrap(),
                    &Segment::new(x2, y2).unwrap(),
                )
                .map_err(|e| e.to_string())?;
                let got =
                    linked_gen(&row(x1, y1, d), &row(x2, y2, d)).map_err(|e| e.to_string())?;
                if want != got {
                    return Err(format!("1 x k mismatch on [{x1}, {y1}] and [{x2}, {y2}]"));
                }
                compared += 1;
            }
        }
    }
    Ok(format!(
        "{N} random grid pairs symmetric and transpose invariant, {compared} 1 x k pairs agree"
    ))
}

fn measure_criterion(log: &MeasureLog) -> Outcome {
    if !log.violations.is_empty() {
        return Err(format!(
            "{} violations, first: {}",
            log.violations.len(),
            log.violations[0]
        ));
    }
    if log.stats.measure_checks == 0 {
        return Err("no reduction steps were checked".into());
    }
    Ok(format!(
        "{} reduction steps, {} measure checks, all strictly decreasing",
        log.stats.steps, log.stats.measure_checks
    ))
}

fn main() {
    let mut log = MeasureLog::default();
    let mut ok = true;

    let t = Instant::now();
    ok &= report(1, "golden count", t, golden_count(&mut log));
    let t = Instant::now();
    ok &= report(
        2,
        "oracle-engine equivalence",
        t,
        oracle_equivalence(&mut log),
    );
    let t = Instant::now();
    ok &= report(3, "two-block closed forms", t, two_block_forms(&mut log));
    let t = Instant::now();
    ok &= report(4, "transform algebra", t, transform_algebra());
    let t = Instant::now();
    ok &= report(5, "order invariance", t, order_invariance(&mut log));
    let t = Instant::now();
    ok &= report(6, "character identity", t, character_identity());
    let t = Instant::now();
    ok &= report(7, "segment predicate", t, segment_predicate());
    let t = Instant::now();
    ok &= report(8, "termination measure", t, measure_criterion(&log));

    if !ok {
        std::process::exit(1);
    }
}
