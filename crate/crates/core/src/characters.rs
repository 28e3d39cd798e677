//! Sign characters on Jordan blocks: `eps_{l,eta}`, the quasisplit
//! constraint, `eps^{MW/W}`, `eps^{M/MW}` and the translation to the
//! other normalization.
#![allow(non_snake_case)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::types::{
    discrete_diagonal_restriction, AdmissibleOrder, JordanBlock, Parameter, Sign, SignedData,
};

/// Values indexed by occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub values: Vec<Sign>,
}

impl Character {
    pub fn trivial(n: usize) -> Self {
        Character {
            values: vec![Sign::Plus; n],
        }
    }

    pub fn product(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a * b)
                .collect(),
        }
    }
}

/// `eta^(A-B+1) * (-1)^(floor((A-B+1)/2) + l)`.
pub fn eps_l_eta(block: &JordanBlock, l: u32, eta: Sign) -> Result<Sign> {
    if l > block.l_max() {
        return Err(Error::InvalidData(format!(
            "l = {l} out of range for {block}"
        )));
    }
    let n = block.length() + 1;
    let base = if n % 2 == 0 { Sign::Plus } else { eta };
    Ok(base * Sign::parity(n / 2 + l as i64))
}

pub fn eps_l_eta_character(psi: &Parameter, data: &SignedData) -> Result<Character> {
    data.validate(psi)?;
    let values = psi
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| eps_l_eta(b, data.l[i], data.eta[i]))
        .collect::<Result<_>>()?;
    Ok(Character { values })
}

/// The product of `eps_{l,eta}` over all occurrences is `+1`.
pub fn quasisplit_ok(psi: &Parameter, data: &SignedData) -> Result<bool> {
    let c = eps_l_eta_character(psi, data)?;
    Ok(c.values.into_iter().fold(Sign::Plus, |a, b| a * b) == Sign::Plus)
}

fn is_even(n: i64) -> bool {
    n % 2 == 0
}

/// `x = (a, b, zeta)` in the first role of the pair conditions (its
/// `(a, b)` even/even or odd/even), `y` in the second.
fn pair_condition(x: (i64, i64, Sign), y: (i64, i64, Sign), x_above: bool) -> bool {
    let (a, b, z) = x;
    let (a2, b2, z2) = y;
    use Sign::{Minus, Plus};
    if is_even(a) && is_even(b) && !is_even(a2) && !is_even(b2) {
        return match (z, z2) {
            (Minus, Minus) => x_above && a > a2,
            (Minus, Plus) => a > a2,
            (Plus, Plus) if x_above => a2 > a && b > b2,
            (Plus, Plus) => a > a2 && b > b2,
            _ => false,
        };
    }
    if !is_even(a) && is_even(b) && is_even(a2) && !is_even(b2) {
        return match (z, z2) {
            (Minus, Minus) => x_above && a < a2,
            (Minus, Plus) if x_above => a < a2,
            (Minus, Plus) => a > a2,
            (Plus, Plus) if x_above => a < a2 && b > b2,
            (Plus, Plus) => a > a2 && b > b2,
            _ => false,
        };
    }
    false
}

fn triple(b: &JordanBlock) -> (i64, i64, Sign) {
    let (a, bb) = b.sl_pair();
    (a, bb, b.zeta)
}

/// Whether the unordered pair `{i, j}` lies in the set defining
/// `eps^{MW/W}`.
pub fn in_mw_w_pair_set(psi: &Parameter, order: &AdmissibleOrder, i: usize, j: usize) -> bool {
    if i == j || psi.block(i).rho != psi.block(j).rho {
        return false;
    }
    let ranks = order.ranks(psi.len());
    let (x, y) = (triple(psi.block(i)), triple(psi.block(j)));
    pair_condition(x, y, ranks[i] > ranks[j]) || pair_condition(y, x, ranks[j] > ranks[i])
}

pub fn eps_mw_w(psi: &Parameter, order: &AdmissibleOrder) -> Character {
    let ranks = order.ranks(psi.len());
    let values = (0..psi.len())
        .map(|i| {
            let fiber = &psi.fibers()[psi.fiber_of(i)].members;
            let count = fiber
                .iter()
                .filter(|&&j| {
                    j != i && {
                        let (x, y) = (triple(psi.block(i)), triple(psi.block(j)));
                        pair_condition(x, y, ranks[i] > ranks[j])
                            || pair_condition(y, x, ranks[j] > ranks[i])
                    }
                })
                .count();
            Sign::parity(count as i64)
        })
        .collect();
    Character { values }
}

pub fn eps_m_mw(psi: &Parameter, order: &AdmissibleOrder) -> Character {
    let ranks = order.ranks(psi.len());
    let values = (0..psi.len())
        .map(|i| {
            let (a, b, z) = triple(psi.block(i));
            if !is_even(a + b) || is_even(a) {
                return Sign::Plus;
            }
            let fiber = &psi.fibers()[psi.fiber_of(i)].members;
            let odd = |j: usize| {
                let (a2, b2, _) = triple(psi.block(j));
                !is_even(a2) && !is_even(b2)
            };
            let m = fiber
                .iter()
                .filter(|&&j| {
                    j != i && odd(j) && psi.block(j).zeta == Sign::Minus && ranks[j] > ranks[i]
                })
                .count() as i64;
            let n = fiber
                .iter()
                .filter(|&&j| j != i && odd(j) && ranks[j] < ranks[i])
                .count() as i64;
            match z {
                Sign::Plus => Sign::parity(m),
                Sign::Minus => Sign::parity(m + n),
            }
        })
        .collect();
    Character { values }
}

pub fn eps_m_w(psi: &Parameter, order: &AdmissibleOrder) -> Character {
    eps_mw_w(psi, order).product(&eps_m_mw(psi, order))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Translation {
    pub character: Character,
    /// False when the translated character differs on two occurrences of
    /// the same block; the representation is then zero.
    pub well_defined: bool,
}

/// `eps_{l,eta} * eps^{M/W}` and whether it is constant on repeated blocks.
pub fn translate_m_to_w(
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<Translation> {
    let character = eps_l_eta_character(psi, data)?.product(&eps_m_w(psi, order));
    let key = |b: &JordanBlock| (b.rho.id.clone(), b.sl_pair());
    let well_defined = (0..psi.len()).all(|i| {
        (i + 1..psi.len()).all(|j| {
            key(psi.block(i)) != key(psi.block(j)) || character.values[i] == character.values[j]
        })
    });
    Ok(Translation {
        character,
        well_defined,
    })
}

/// Split every block into the blocks `(C, C, zeta)` for `C` in `[B, A]`,
/// ascending from the bottom of each block, with `eta * (-1)^(C - B)`.
/// Requires disjoint intervals in each fiber.
pub fn elementary_expansion(
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<(Parameter, AdmissibleOrder, SignedData)> {
    data.validate(psi)?;
    if !discrete_diagonal_restriction(psi) {
        return Err(Error::Hypothesis(
            "elementary expansion needs disjoint intervals".into(),
        ));
    }
    let mut blocks = Vec::new();
    let mut etas = Vec::new();
    let mut lists = Vec::new();
    for f in 0..psi.fibers().len() {
        let mut list = Vec::new();
        for i in order.bottom_up(f) {
            let b = psi.block(i);
            let mut c = b.B;
            while c <= b.A {
                list.push(blocks.len());
                blocks.push(JordanBlock::new(b.rho.clone(), c, c, b.zeta)?);
                etas.push(data.eta[i] * Sign::parity((c - b.B).expect_int()));
                c += HalfInt::ONE;
            }
        }
        lists.push(list);
    }
    let n = blocks.len();
    let e_psi = Parameter::new(psi.group, blocks)?;
    let e_order = AdmissibleOrder::from_bottom_up(&e_psi, lists)?;
    Ok((e_psi, e_order, SignedData::new(vec![0; n], etas)))
}

/// `eps_e * eps^{M/W}` on the elementary expansion, as `(rho, C, zeta,
/// value)` sorted by `rho` and `C`.
pub fn resolved_character(
    psi: &Parameter,
    order: &AdmissibleOrder,
    data: &SignedData,
) -> Result<Vec<(String, HalfInt, Sign, Sign)>> {
    let (e_psi, e_order, e_data) = elementary_expansion(psi, order, data)?;
    let t = translate_m_to_w(&e_psi, &e_order, &e_data)?;
    let mut out: Vec<_> = e_psi
        .blocks()
        .iter()
        .zip(t.character.values)
        .map(|(b, v)| (b.rho.id.clone(), b.A, b.zeta, v))
        .collect();
    out.sort();
    Ok(out)
}
