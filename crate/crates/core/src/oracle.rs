//! Closed-form nonvanishing checks for small families, written
//! independently of the reduction engine and used to test it.
#![allow(non_snake_case)]
#![allow(clippy::too_many_arguments)]
#![allow(clippy::int_plus_one)]

use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::types::{
    AdmissibleOrder, GroupKind, JordanBlock, Parameter, RhoLabel, Sign, SignedData,
};

fn s(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Three blocks `[A1,B1]`, `[A2,B2]`, `[A3,B3]` with `zeta = +, -, +`,
/// ordered `3 > 2 > 1`, `A3 >= A2 >= A1` and `B3 >= B2 >= B1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreeBlock {
    pub A1: i64,
    pub B1: i64,
    pub A2: i64,
    pub B2: i64,
    pub A3: i64,
    pub B3: i64,
}

impl ThreeBlock {
    pub fn new(A1: i64, B1: i64, A2: i64, B2: i64, A3: i64, B3: i64) -> Result<Self> {
        let t = ThreeBlock {
            A1,
            B1,
            A2,
            B2,
            A3,
            B3,
        };
        t.check()?;
        Ok(t)
    }

    fn check(&self) -> Result<()> {
        let ok = self.B1 >= 0
            && self.A1 >= self.B1
            && self.A2 >= self.B2
            && self.A3 >= self.B3
            && self.A3 >= self.A2
            && self.A2 >= self.A1
            && self.B3 >= self.B2
            && self.B2 >= self.B1;
        if ok {
            Ok(())
        } else {
            Err(Error::Hypothesis(format!(
                "{self:?} does not satisfy the three-block hypotheses"
            )))
        }
    }

    pub fn l_max(&self) -> [i64; 3] {
        [
            (self.A1 - self.B1 + 1) / 2,
            (self.A2 - self.B2 + 1) / 2,
            (self.A3 - self.B3 + 1) / 2,
        ]
    }

    fn lengths(&self) -> [i64; 3] {
        [self.A1 - self.B1, self.A2 - self.B2, self.A3 - self.B3]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThreeBlockCase {
    One,
    Two,
    Three,
    Four,
    Five,
    Six,
}

/// Which of the six systems applies to `(l, eta)`.
pub fn three_block_case(t: &ThreeBlock, l: [i64; 3], eta: [i64; 3]) -> ThreeBlockCase {
    let [a1, a2, _] = t.lengths();
    let c3 = eta[2] == s(a1 + a2) * eta[0];
    let c2 = eta[1] == s(a1) * eta[0];
    // l3 - l1 < (A3 - B3)/2 - a1 + l1, doubled
    let low = 2 * (l[2] - l[0]) < (t.A3 - t.B3) - 2 * a1 + 2 * l[0];
    match (c3, c2, low) {
        (true, true, _) => ThreeBlockCase::One,
        (true, false, _) => ThreeBlockCase::Two,
        (false, true, true) => ThreeBlockCase::Three,
        (false, true, false) => ThreeBlockCase::Four,
        (false, false, true) => ThreeBlockCase::Five,
        (false, false, false) => ThreeBlockCase::Six,
    }
}

/// The inequality system of the selected case, without the quasisplit
/// constraint.
pub fn three_block_system(t: &ThreeBlock, l: [i64; 3], eta: [i64; 3]) -> Result<bool> {
    t.check()?;
    let lm = t.l_max();
    for k in 0..3 {
        if l[k] < 0 || l[k] > lm[k] {
            return Err(Error::InvalidData(format!(
                "l{} = {} out of [0, {}]",
                k + 1,
                l[k],
                lm[k]
            )));
        }
        if eta[k].abs() != 1 {
            return Err(Error::InvalidData(format!("eta{} must be 1 or -1", k + 1)));
        }
    }
    let ThreeBlock {
        A1,
        B1,
        A2,
        B2,
        A3,
        B3,
    } = *t;
    let [l1, l2, l3] = l;
    let [a1, a2, _] = t.lengths();
    let d21 = l2 - l1;
    let d31 = l3 - l1;
    Ok(match three_block_case(t, l, eta) {
        ThreeBlockCase::One => {
            l3 + l1 > A1 - B3
                && -B2 <= d21
                && d21 <= A2 - a1
                && a1 - B3 + 1 <= l3 - l2 + 2 * l1
                && l3 - l2 + 2 * l1 <= A3 + a1 - a2 + 1
        }
        ThreeBlockCase::Two => {
            l3 + l1 > A1 - B3 && l1 + l2 > a1 - B2 && l3 + l2 + 2 * l1 > a1 + a2 - B3 + 1
        }
        ThreeBlockCase::Three => {
            -(B3 - B1) <= d31
                && d31 <= A3 - A1
                && -B2 <= d21
                && d21 <= A2 - a1
                && l3 + l2 - 2 * l1 > a2 - a1 - B3 - 1
        }
        ThreeBlockCase::Four => {
            -(B3 - B1) <= d31
                && d31 <= A3 - A1
                && -B2 <= d21
                && d21 <= A2 - a1
                && a1 - A3 <= -l3 - l2 + 2 * l1
                && -l3 - l2 + 2 * l1 <= a1 - a2 + B3
        }
        ThreeBlockCase::Five => {
            -(B3 - B1) <= d31
                && d31 <= A3 - A1
                && l1 + l2 > a1 - B2
                && -a1 - B3 - 1 <= l3 - l2 - 2 * l1
                && l3 - l2 - 2 * l1 <= A3 - a1 - a2 - 1
        }
        ThreeBlockCase::Six => {
            -(B3 - B1) <= d31
                && d31 <= A3 - A1
                && l1 + l2 > a1 - B2
                && -l3 + l2 + 2 * l1 > a1 + a2 - A3
        }
    })
}

fn eps(len: i64, l: i64, eta: i64) -> i64 {
    let n = len + 1;
    let base = if n % 2 == 0 { 1 } else { eta };
    base * s(n / 2 + l)
}

pub fn three_block_quasisplit(t: &ThreeBlock, l: [i64; 3], eta: [i64; 3]) -> bool {
    let len = t.lengths();
    (0..3).map(|k| eps(len[k], l[k], eta[k])).product::<i64>() == 1
}

/// Nonvanishing and quasisplit for the three-block family; `data` lists
/// blocks 1, 2, 3.
pub fn oracle_three_block(t: &ThreeBlock, data: &SignedData) -> Result<bool> {
    if data.l.len() != 3 || data.eta.len() != 3 {
        return Err(Error::InvalidData(
            "three-block data needs three entries".into(),
        ));
    }
    let l = [data.l[0] as i64, data.l[1] as i64, data.l[2] as i64];
    let eta = [
        data.eta[0].value(),
        data.eta[1].value(),
        data.eta[2].value(),
    ];
    Ok(three_block_system(t, l, eta)? && three_block_quasisplit(t, l, eta))
}

/// Number of classes in the packet, counted from the closed forms.
pub fn three_block_count(t: &ThreeBlock) -> Result<u64> {
    t.check()?;
    let lm = t.l_max();
    let len = t.lengths();
    let mut n = 0;
    for l1 in 0..=lm[0] {
        for l2 in 0..=lm[1] {
            for l3 in 0..=lm[2] {
                let l = [l1, l2, l3];
                for bits in 0..8 {
                    let eta = [
                        1 - 2 * (bits & 1),
                        1 - 2 * (bits >> 1 & 1),
                        1 - 2 * (bits >> 2 & 1),
                    ];
                    let redundant =
                        (0..3).any(|k| len[k] % 2 == 1 && 2 * l[k] == len[k] + 1 && eta[k] == -1);
                    if redundant || !three_block_quasisplit(t, l, eta) {
                        continue;
                    }
                    if three_block_system(t, l, eta)? {
                        n += 1;
                    }
                }
            }
        }
    }
    Ok(n)
}

/// Two same-`rho`, same-`zeta` blocks forming the whole fiber; index 0 of
/// `data` is the lower block, index 1 the upper one.
pub fn oracle_two_block(
    lower: &JordanBlock,
    upper: &JordanBlock,
    data: &SignedData,
) -> Result<bool> {
    if lower.rho != upper.rho || lower.zeta != upper.zeta {
        return Err(Error::Hypothesis(
            "two-block closed forms need equal rho and zeta".into(),
        ));
    }
    if data.l.len() != 2 || data.eta.len() != 2 {
        return Err(Error::InvalidData(
            "two-block data needs two entries".into(),
        ));
    }
    let (l1, l2) = (data.l[0] as i64, data.l[1] as i64);
    if l1 > lower.l_max() as i64 || l2 > upper.l_max() as i64 {
        return Err(Error::InvalidData("l out of range".into()));
    }
    let (e1, e2) = (data.eta[0], data.eta[1]);
    let len1 = lower.length();
    let len2 = upper.length();
    let same = e2 == Sign::parity(len1) * e1;
    let (A1, B1, A2, B2) = (lower.A, lower.B, upper.A, upper.B);

    if A1 == A2 && B1 == B2 {
        return Ok(if same {
            l1 == l2
        } else {
            2 * l1 == len1 + 1 && 2 * l2 == len1 + 1
        });
    }
    if A2 >= A1 && B2 >= B1 {
        return Ok(if same {
            A2 - l2 >= A1 - l1 && B2 + l2 >= B1 + l1
        } else {
            B2 + l2 > A1 - l1
        });
    }
    if A2 >= A1 && B2 <= B1 {
        // upper contains lower
        return Ok(if same {
            0 <= l2 - l1 && l2 - l1 <= len2 - len1
        } else {
            l1 + l2 > len1
        });
    }
    if A1 >= A2 && B1 <= B2 {
        // lower contains upper
        return Ok(if same {
            0 <= l1 - l2 && l1 - l2 <= len1 - len2
        } else {
            l1 + l2 > len2
        });
    }
    Err(Error::Hypothesis(
        "the lower block dominates the upper one; the order is not admissible".into(),
    ))
}

/// The family as a parameter of `Sp` type with order `3 > 2 > 1`.
pub fn three_block_parameter(t: &ThreeBlock) -> Result<(Parameter, AdmissibleOrder)> {
    let r = RhoLabel::trivial();
    let b = |A: i64, B: i64, z: Sign| JordanBlock::new(r.clone(), A.into(), B.into(), z);
    let psi = Parameter::new(
        Some(GroupKind::SpEven),
        vec![
            b(t.A1, t.B1, Sign::Plus)?,
            b(t.A2, t.B2, Sign::Minus)?,
            b(t.A3, t.B3, Sign::Plus)?,
        ],
    )?;
    let order = AdmissibleOrder::checked(&psi, vec![vec![2, 1, 0]])?;
    Ok((psi, order))
}

/// Engine and closed-form verdicts on every quasisplit `(l, eta)` of one
/// family member, all sign vectors included.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub cases: u64,
    pub nonvanishing: u64,
    pub mismatches: Vec<SignedData>,
}

pub fn compare_three_block(t: &ThreeBlock, engine: &mut Engine) -> Result<Comparison> {
    let (psi, order) = three_block_parameter(t)?;
    let lm = t.l_max();
    let mut out = Comparison::default();
    for l1 in 0..=lm[0] {
        for l2 in 0..=lm[1] {
            for l3 in 0..=lm[2] {
                for bits in 0..8u32 {
                    let eta: Vec<Sign> = (0..3)
                        .map(|k| {
                            if bits >> k & 1 == 0 {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            }
                        })
                        .collect();
                    let d = SignedData::new(vec![l1 as u32, l2 as u32, l3 as u32], eta);
                    let expected = {
                        let e = [d.eta[0].value(), d.eta[1].value(), d.eta[2].value()];
                        if !three_block_quasisplit(t, [l1, l2, l3], e) {
                            continue;
                        }
                        three_block_system(t, [l1, l2, l3], e)?
                    };
                    let got = engine.is_nonvanishing(&psi, &order, &d)?;
                    out.cases += 1;
                    if expected {
                        out.nonvanishing += 1;
                    }
                    if got != expected {
                        out.mismatches.push(d);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A random family member with `A3 <= max_a`.
pub fn sample_three_block<R: rand::Rng>(rng: &mut R, max_a: i64) -> ThreeBlock {
    let max_a = max_a.max(0);
    let B1 = rng.gen_range(0..=max_a);
    let A1 = rng.gen_range(B1..=max_a);
    let B2 = rng.gen_range(B1..=max_a);
    let A2 = rng.gen_range(A1.max(B2)..=max_a);
    let B3 = rng.gen_range(B2..=max_a);
    let A3 = rng.gen_range(A2.max(B3)..=max_a);
    ThreeBlock {
        A1,
        B1,
        A2,
        B2,
        A3,
        B3,
    }
}
