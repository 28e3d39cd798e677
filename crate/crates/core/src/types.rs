//! Jordan blocks, parameters, admissible orders and packet coordinates.
#![allow(non_snake_case)]

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Mul, Neg};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `(-1)^n`.
    pub fn parity(n: i64) -> Sign {
        if n.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s.trim() {
            "+" | "+1" | "1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Orthogonal,
    Symplectic,
}

/// A self-dual supercuspidal label. Identity is the `id`; parity and
/// dimension are carried along and must agree across equal ids.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RhoLabel {
    pub id: String,
    pub parity: Parity,
    pub dim: u32,
}

impl RhoLabel {
    pub fn new(id: impl Into<String>, parity: Parity, dim: u32) -> Self {
        RhoLabel {
            id: id.into(),
            parity,
            dim,
        }
    }

    pub fn trivial() -> Self {
        RhoLabel::new("1", Parity::Orthogonal, 1)
    }
}

impl PartialEq for RhoLabel {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for RhoLabel {}

impl Hash for RhoLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JordanBlock {
    pub rho: RhoLabel,
    pub A: HalfInt,
    pub B: HalfInt,
    pub zeta: Sign,
}

impl JordanBlock {
    pub fn new(rho: RhoLabel, A: HalfInt, B: HalfInt, zeta: Sign) -> Result<Self> {
        if B < HalfInt::ZERO {
            return Err(Error::InvalidData(format!("B = {B} is negative")));
        }
        if A < B {
            return Err(Error::InvalidData(format!(
                "A = {A} is smaller than B = {B}"
            )));
        }
        if !A.same_class(B) {
            return Err(Error::InvalidData(format!(
                "A = {A} and B = {B} must both be integral or both half-integral"
            )));
        }
        Ok(JordanBlock { rho, A, B, zeta })
    }

    /// Build from the pair of `SL(2)` dimensions `(a, b)`.
    pub fn from_ab(rho: RhoLabel, a: i64, b: i64, tie_zeta: Option<Sign>) -> Result<Self> {
        let (A, B, zeta) = convert_ab(a, b, tie_zeta)?;
        JordanBlock::new(rho, A, B, zeta)
    }

    /// `A - B`, always a non-negative integer.
    pub fn length(&self) -> i64 {
        (self.A - self.B).expect_int()
    }

    /// Largest admissible `l`, `floor((A - B + 1) / 2)`.
    pub fn l_max(&self) -> u32 {
        ((self.length() + 1) / 2) as u32
    }

    /// `(a, b)` with `a = A + 1 + zeta B` and `b = A + 1 - zeta B`.
    pub fn sl_pair(&self) -> (i64, i64) {
        let s = HalfInt::from_int(1);
        let zb = self.B * self.zeta.value();
        (
            (self.A + s + zb).expect_int(),
            (self.A + s - zb).expect_int(),
        )
    }

    pub fn contains(&self, other: &JordanBlock) -> bool {
        self.A >= other.A && self.B <= other.B
    }

    pub fn same_interval(&self, other: &JordanBlock) -> bool {
        self.A == other.A && self.B == other.B
    }
}

impl fmt::Display for JordanBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, [{}, {}], {})",
            self.rho.id, self.A, self.B, self.zeta
        )
    }
}

/// `(a, b) -> (A, B, zeta)`.
pub fn convert_ab(a: i64, b: i64, tie_zeta: Option<Sign>) -> Result<(HalfInt, HalfInt, Sign)> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidData(format!(
            "a = {a} and b = {b} must be positive"
        )));
    }
    let A = HalfInt::from_twice(a + b) - HalfInt::ONE;
    let B = HalfInt::from_twice((a - b).abs());
    let zeta = match a.cmp(&b) {
        std::cmp::Ordering::Greater => Sign::Plus,
        std::cmp::Ordering::Less => Sign::Minus,
        std::cmp::Ordering::Equal => {
            tie_zeta.ok_or_else(|| Error::Parse(format!("a = b = {a} needs an explicit zeta")))?
        }
    };
    Ok((A, B, zeta))
}

/// Orthogonal iff `a + b` is even for orthogonal `rho`, or odd for
/// symplectic `rho`.
pub fn block_parity(block: &JordanBlock) -> Parity {
    let (a, b) = block.sl_pair();
    let even = (a + b) % 2 == 0;
    match (block.rho.parity, even) {
        (Parity::Orthogonal, true) | (Parity::Symplectic, false) => Parity::Orthogonal,
        _ => Parity::Symplectic,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "Sp-even")]
    SpEven,
    #[serde(rename = "SO-odd")]
    SoOdd,
    #[serde(rename = "SO-even")]
    SoEven,
}

impl GroupKind {
    /// Parity of the blocks of a good-parity parameter for this group.
    pub fn block_parity(self) -> Parity {
        match self {
            GroupKind::SpEven | GroupKind::SoEven => Parity::Orthogonal,
            GroupKind::SoOdd => Parity::Symplectic,
        }
    }
}

/// The blocks sharing one `rho`, by occurrence index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub rho: RhoLabel,
    pub members: Vec<usize>,
}

/// A multiset of Jordan blocks. Occurrence indices are positions in
/// `blocks`; repeated blocks are separate occurrences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub group: Option<GroupKind>,
    blocks: Vec<JordanBlock>,
    fibers: Vec<Fiber>,
}

impl Parameter {
    pub fn new(group: Option<GroupKind>, blocks: Vec<JordanBlock>) -> Result<Self> {
        let mut by_id: BTreeMap<String, Fiber> = BTreeMap::new();
        for (i, blk) in blocks.iter().enumerate() {
            let fib = by_id.entry(blk.rho.id.clone()).or_insert_with(|| Fiber {
                rho: blk.rho.clone(),
                members: Vec::new(),
            });
            if fib.rho.parity != blk.rho.parity || fib.rho.dim != blk.rho.dim {
                return Err(Error::InvalidData(format!(
                    "rho {} appears with inconsistent parity or dimension",
                    blk.rho.id
                )));
            }
            if let Some(&first) = fib.members.first() {
                if !blocks[first].A.same_class(blk.A) {
                    return Err(Error::InvalidData(format!(
                        "rho {} mixes integral and half-integral blocks",
                        blk.rho.id
                    )));
                }
            }
            fib.members.push(i);
            if let Some(g) = group {
                if block_parity(blk) != g.block_parity() {
                    return Err(Error::InvalidData(format!(
                        "block {blk} has the wrong parity for {g:?}"
                    )));
                }
            }
        }
        Ok(Parameter {
            group,
            blocks,
            fibers: by_id.into_values().collect(),
        })
    }

    pub fn blocks(&self) -> &[JordanBlock] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &JordanBlock {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Fibers sorted by `rho` id.
    pub fn fibers(&self) -> &[Fiber] {
        &self.fibers
    }

    pub fn fiber_of(&self, i: usize) -> usize {
        self.fibers
            .iter()
            .position(|f| f.members.contains(&i))
            .expect("every occurrence lies in a fiber")
    }
}

/// Per-fiber total orders, each listed greatest first. Fiber `i` of the
/// order corresponds to `psi.fibers()[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleOrder {
    fibers: Vec<Vec<usize>>,
}

impl AdmissibleOrder {
    /// Accepts one list per fiber in any sequence; each list is matched to
    /// the fiber of its members.
    pub fn from_lists(psi: &Parameter, lists: Vec<Vec<usize>>) -> Result<Self> {
        let mut fibers: Vec<Option<Vec<usize>>> = vec![None; psi.fibers().len()];
        for list in lists {
            let Some(&first) = list.first() else {
                return Err(Error::InvalidData("empty order list".into()));
            };
            if first >= psi.len() {
                return Err(Error::InvalidData(format!(
                    "order mentions unknown block {first}"
                )));
            }
            let f = psi.fiber_of(first);
            let mut got = list.clone();
            got.sort_unstable();
            let mut want = psi.fibers()[f].members.clone();
            want.sort_unstable();
            if got != want {
                return Err(Error::InvalidData(format!(
                    "order list {list:?} is not a permutation of the blocks {want:?} of rho {}",
                    psi.fibers()[f].rho.id
                )));
            }
            if fibers[f].is_some() {
                return Err(Error::InvalidData(format!(
                    "two order lists for rho {}",
                    psi.fibers()[f].rho.id
                )));
            }
            fibers[f] = Some(list);
        }
        let fibers = fibers
            .into_iter()
            .enumerate()
            .map(|(i, f)| {
                f.ok_or_else(|| {
                    Error::InvalidData(format!("no order given for rho {}", psi.fibers()[i].rho.id))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AdmissibleOrder { fibers })
    }

    /// Like [`from_lists`](Self::from_lists) and additionally checks the
    /// admissibility condition.
    pub fn checked(psi: &Parameter, lists: Vec<Vec<usize>>) -> Result<Self> {
        let order = AdmissibleOrder::from_lists(psi, lists)?;
        if !order.is_admissible(psi) {
            return Err(Error::InvalidData("order is not admissible".into()));
        }
        Ok(order)
    }

    /// A larger `A` comes first; for equal `A` a larger `B`; then occurrence
    /// index.
    pub fn natural(psi: &Parameter) -> Self {
        let fibers = psi
            .fibers()
            .iter()
            .map(|f| {
                let mut m = f.members.clone();
                m.sort_by(|&i, &j| {
                    let (x, y) = (psi.block(i), psi.block(j));
                    y.A.cmp(&x.A).then(y.B.cmp(&x.B)).then(i.cmp(&j))
                });
                m
            })
            .collect();
        AdmissibleOrder { fibers }
    }

    pub fn fiber(&self, f: usize) -> &[usize] {
        &self.fibers[f]
    }

    pub fn fibers(&self) -> &[Vec<usize>] {
        &self.fibers
    }

    /// Fiber `f`, listed from the bottom up.
    pub fn bottom_up(&self, f: usize) -> Vec<usize> {
        self.fibers[f].iter().rev().copied().collect()
    }

    pub fn from_bottom_up(psi: &Parameter, lists: Vec<Vec<usize>>) -> Result<Self> {
        AdmissibleOrder::from_lists(
            psi,
            lists
                .into_iter()
                .map(|l| l.into_iter().rev().collect())
                .collect(),
        )
    }

    /// Swap the entries at positions `pos` and `pos + 1` (greatest first)
    /// of fiber `f`.
    pub fn swapped(&self, f: usize, pos: usize) -> Self {
        let mut o = self.clone();
        o.fibers[f].swap(pos, pos + 1);
        o
    }

    /// Every pair with `A > A'`, `B > B'` and equal `zeta` has the larger
    /// block first.
    pub fn is_admissible(&self, psi: &Parameter) -> bool {
        self.fibers.iter().all(|list| {
            list.iter().enumerate().all(|(p, &i)| {
                list[p + 1..].iter().all(|&j| {
                    let (hi, lo) = (psi.block(i), psi.block(j));
                    !(lo.zeta == hi.zeta && lo.A > hi.A && lo.B > hi.B)
                })
            })
        })
    }

    /// Rank of each occurrence in its fiber, 0 for the bottom.
    pub fn ranks(&self, n: usize) -> Vec<usize> {
        let mut r = vec![0; n];
        for list in &self.fibers {
            for (p, &i) in list.iter().enumerate() {
                r[i] = list.len() - 1 - p;
            }
        }
        r
    }
}

/// Intervals `[B, A]` inside each fiber are pairwise disjoint.
pub fn discrete_diagonal_restriction(psi: &Parameter) -> bool {
    psi.fibers().iter().all(|f| {
        f.members.iter().enumerate().all(|(p, &i)| {
            f.members[p + 1..].iter().all(|&j| {
                let (x, y) = (psi.block(i), psi.block(j));
                x.A < y.B || y.A < x.B
            })
        })
    })
}

pub fn is_elementary(psi: &Parameter) -> bool {
    discrete_diagonal_restriction(psi) && psi.blocks().iter().all(|b| b.A == b.B)
}

/// Packet coordinates `(l, eta)`, indexed by occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedData {
    pub l: Vec<u32>,
    pub eta: Vec<Sign>,
}

impl SignedData {
    pub fn new(l: Vec<u32>, eta: Vec<Sign>) -> Self {
        SignedData { l, eta }
    }

    pub fn validate(&self, psi: &Parameter) -> Result<()> {
        if self.l.len() != psi.len() || self.eta.len() != psi.len() {
            return Err(Error::InvalidData(format!(
                "data has {} l-values and {} signs for {} blocks",
                self.l.len(),
                self.eta.len(),
                psi.len()
            )));
        }
        for (i, blk) in psi.blocks().iter().enumerate() {
            if self.l[i] > blk.l_max() {
                return Err(Error::InvalidData(format!(
                    "l = {} out of range [0, {}] for block {i} {blk}",
                    self.l[i],
                    blk.l_max()
                )));
            }
        }
        Ok(())
    }

    /// Representative with `eta = +1` wherever `l = (A - B + 1) / 2`.
    pub fn canonical(&self, psi: &Parameter) -> SignedData {
        let mut d = self.clone();
        for (i, blk) in psi.blocks().iter().enumerate() {
            if is_free_sign(blk.length(), d.l[i]) {
                d.eta[i] = Sign::Plus;
            }
        }
        d
    }
}

/// At `l = (A - B + 1) / 2` the sign carries no information.
pub fn is_free_sign(length: i64, l: u32) -> bool {
    (length + 1) % 2 == 0 && 2 * l as i64 == length + 1
}
