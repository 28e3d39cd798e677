//! JSON parameter files and built-in examples.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::types::{AdmissibleOrder, GroupKind, JordanBlock, Parameter, Parity, RhoLabel, Sign};

fn one() -> u32 {
    1
}

fn orthogonal() -> Parity {
    Parity::Orthogonal
}

/// One block entry. Give either `A`, `B`, `zeta` or `a`, `b` (plus `zeta`
/// when `a = b`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockEntry {
    pub rho: String,
    #[serde(default = "orthogonal")]
    pub parity: Parity,
    #[serde(default = "one")]
    pub dim: u32,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub cap_a: Option<HalfInt>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub cap_b: Option<HalfInt>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<Sign>,
    #[serde(default = "one")]
    pub count: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupKind>,
    pub blocks: Vec<BlockEntry>,
    /// Occurrence indices, greatest first, one list per `rho` in id order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub psi: Parameter,
    pub order: Option<AdmissibleOrder>,
}

impl Loaded {
    /// The file's order, or the first admissible one found.
    pub fn order_or_default(&self) -> Result<AdmissibleOrder> {
        if let Some(o) = &self.order {
            return Ok(o.clone());
        }
        crate::packets::admissible_orders(&self.psi, 1)?
            .pop()
            .ok_or_else(|| Error::InvalidData("parameter has no admissible order".into()))
    }
}

impl BlockEntry {
    fn to_block(&self) -> Result<JordanBlock> {
        let rho = RhoLabel::new(self.rho.clone(), self.parity, self.dim);
        match (self.cap_a, self.cap_b, self.a, self.b) {
            (Some(a), Some(b), None, None) => {
                let z = self
                    .zeta
                    .ok_or_else(|| Error::Parse(format!("block [{a}, {b}] needs zeta")))?;
                JordanBlock::new(rho, a, b, z)
            }
            (None, None, Some(a), Some(b)) => {
                let blk = JordanBlock::from_ab(rho, a, b, self.zeta)?;
                if let Some(z) = self.zeta {
                    if a != b && z != blk.zeta {
                        return Err(Error::InvalidData(format!(
                            "zeta {z} contradicts a = {a}, b = {b}"
                        )));
                    }
                }
                Ok(blk)
            }
            _ => Err(Error::Parse(
                "each block needs exactly one of {A, B} or {a, b}".into(),
            )),
        }
    }
}

impl ParamFile {
    pub fn load(&self) -> Result<Loaded> {
        let mut blocks = Vec::new();
        for entry in &self.blocks {
            if entry.count == 0 {
                return Err(Error::Parse("count must be at least 1".into()));
            }
            let blk = entry.to_block()?;
            for _ in 0..entry.count {
                blocks.push(blk.clone());
            }
        }
        if blocks.is_empty() {
            return Err(Error::InvalidData("parameter has no blocks".into()));
        }
        let psi = Parameter::new(self.group, blocks)?;
        let order = match &self.order {
            Some(lists) => Some(AdmissibleOrder::checked(&psi, lists.clone())?),
            None => None,
        };
        Ok(Loaded { psi, order })
    }

    /// One entry per occurrence, in `A`, `B` form.
    pub fn from_parameter(psi: &Parameter, order: Option<&AdmissibleOrder>) -> ParamFile {
        let blocks = psi
            .blocks()
            .iter()
            .map(|b| BlockEntry {
                rho: b.rho.id.clone(),
                parity: b.rho.parity,
                dim: b.rho.dim,
                cap_a: Some(b.A),
                cap_b: Some(b.B),
                a: None,
                b: None,
                zeta: Some(b.zeta),
                count: 1,
            })
            .collect();
        ParamFile {
            group: psi.group,
            blocks,
            order: order.map(|o| o.fibers().to_vec()),
        }
    }
}

pub fn parse_param_json(text: &str) -> Result<Loaded> {
    let file: ParamFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.load()
}

pub fn read_param_file(path: &std::path::Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_param_json(&text)
}

pub const BUILTIN_NAMES: &[&str] = &["moeglin-s8", "two-fiber", "elementary"];

fn entry(rho: &str, parity: Parity, dim: u32, a: HalfInt, b: HalfInt, z: Sign) -> BlockEntry {
    BlockEntry {
        rho: rho.into(),
        parity,
        dim,
        cap_a: Some(a),
        cap_b: Some(b),
        a: None,
        b: None,
        zeta: Some(z),
        count: 1,
    }
}

pub fn builtin_file(name: &str) -> Result<ParamFile> {
    let h = HalfInt::from_int;
    let o = Parity::Orthogonal;
    Ok(match name {
        "moeglin-s8" => ParamFile {
            group: Some(GroupKind::SpEven),
            blocks: vec![
                entry("r1", o, 1, h(8), h(4), Sign::Plus),
                entry("r1", o, 1, h(37), h(7), Sign::Minus),
                entry("r1", o, 1, h(40), h(10), Sign::Plus),
            ],
            order: Some(vec![vec![2, 1, 0]]),
        },
        "two-fiber" => {
            let hh = HalfInt::from_twice;
            let sp = Parity::Symplectic;
            ParamFile {
                group: Some(GroupKind::SpEven),
                blocks: vec![
                    entry("r1", o, 1, h(2), h(0), Sign::Plus),
                    entry("r1", o, 1, h(3), h(1), Sign::Minus),
                    entry("r2", sp, 2, hh(3), hh(1), Sign::Plus),
                    entry("r2", sp, 2, hh(5), hh(1), Sign::Minus),
                ],
                order: Some(vec![vec![1, 0], vec![3, 2]]),
            }
        }
        "elementary" => ParamFile {
            group: Some(GroupKind::SpEven),
            blocks: vec![entry("r1", o, 1, h(2), h(2), Sign::Plus)],
            order: None,
        },
        _ => {
            return Err(Error::Parse(format!(
                "unknown example {name:?}; known: {}",
                BUILTIN_NAMES.join(", ")
            )))
        }
    })
}

pub fn builtin(name: &str) -> Result<Loaded> {
    builtin_file(name)?.load()
}
