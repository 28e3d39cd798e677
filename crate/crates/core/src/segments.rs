//! Segments and generalized segments, with the "linked" predicates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// `x, x -+ 1, ..., y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub x: HalfInt,
    pub y: HalfInt,
}

impl Segment {
    pub fn new(x: HalfInt, y: HalfInt) -> Result<Self> {
        if !x.same_class(y) {
            return Err(Error::InvalidData(format!(
                "segment [{x}, {y}] has non-integral length"
            )));
        }
        Ok(Segment { x, y })
    }

    fn lo(&self) -> HalfInt {
        self.x.min(self.y)
    }

    fn hi(&self) -> HalfInt {
        self.x.max(self.y)
    }

    /// Set inclusion of the underlying sets.
    pub fn contains(&self, other: &Segment) -> bool {
        self.x.same_class(other.x) && self.lo() <= other.lo() && other.hi() <= self.hi()
    }

    /// Number of entries.
    pub fn size(&self) -> i64 {
        (self.hi() - self.lo()).expect_int() + 1
    }
}

fn linked_sets(s: &Segment, t: &Segment) -> bool {
    if s.contains(t) || t.contains(s) || !s.x.same_class(t.x) {
        return false;
    }
    // the union is a segment iff the sets overlap or touch
    s.lo().max(t.lo()) <= s.hi().min(t.hi()) + 1
}

/// Neither contains the other and the union is again a segment. The two
/// segments must not run in opposite directions.
pub fn linked_segments(s: &Segment, t: &Segment) -> Result<bool> {
    let d1 = (s.x - s.y).twice().signum();
    let d2 = (t.x - t.y).twice().signum();
    if d1 * d2 < 0 {
        return Err(Error::InvalidData(format!(
            "segments [{}, {}] and [{}, {}] run in opposite directions",
            s.x, s.y, t.x, t.y
        )));
    }
    Ok(linked_sets(s, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// Rows decrease left to right, columns increase downwards.
    RowsDecreasing,
    RowsIncreasing,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::RowsDecreasing => Orientation::RowsIncreasing,
            Orientation::RowsIncreasing => Orientation::RowsDecreasing,
        }
    }

    fn row_step(self) -> i64 {
        match self {
            Orientation::RowsDecreasing => -1,
            Orientation::RowsIncreasing => 1,
        }
    }
}

/// An `m x n` grid whose rows and columns are unit-step segments running in
/// opposite directions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSegment {
    rows: Vec<Vec<HalfInt>>,
}

impl GenSegment {
    pub fn new(rows: Vec<Vec<HalfInt>>) -> Result<Self> {
        let g = GenSegment { rows };
        g.orientations()?;
        Ok(g)
    }

    pub fn from_corner(x11: HalfInt, m: usize, n: usize, orientation: Orientation) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidData("empty generalized segment".into()));
        }
        let step = orientation.row_step();
        let rows = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| x11 + step * j as i64 - step * i as i64)
                    .collect()
            })
            .collect();
        Ok(GenSegment { rows })
    }

    /// `Sp(St(rho, a), b)`: `b` rows, `a` columns, top-left entry `(a - b) / 2`.
    pub fn speh(a: i64, b: i64) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::InvalidData("Speh grid needs a, b >= 1".into()));
        }
        GenSegment::from_corner(
            HalfInt::from_twice(a - b),
            b as usize,
            a as usize,
            Orientation::RowsDecreasing,
        )
    }

    pub fn rows(&self) -> &[Vec<HalfInt>] {
        &self.rows
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn at(&self, i: usize, j: usize) -> HalfInt {
        self.rows[i][j]
    }

    /// All orientations the grid is compatible with; a `1 x 1` grid has
    /// both.
    pub fn orientations(&self) -> Result<Vec<Orientation>> {
        let (m, n) = (self.m(), self.n());
        if m == 0 || n == 0 || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidData(
                "generalized segment must be a non-empty rectangle".into(),
            ));
        }
        let fits = |o: Orientation| {
            let s = o.row_step();
            (0..m).all(|i| {
                (0..n).all(|j| {
                    (j + 1 >= n || self.rows[i][j + 1] == self.rows[i][j] + s)
                        && (i + 1 >= m || self.rows[i + 1][j] == self.rows[i][j] - s)
                })
            })
        };
        let out: Vec<Orientation> = [Orientation::RowsDecreasing, Orientation::RowsIncreasing]
            .into_iter()
            .filter(|&o| fits(o))
            .collect();
        if out.is_empty() {
            return Err(Error::InvalidData(
                "rows and columns must be unit-step segments of opposite direction".into(),
            ));
        }
        Ok(out)
    }

    pub fn transpose(&self) -> GenSegment {
        let (m, n) = (self.m(), self.n());
        GenSegment {
            rows: (0..n)
                .map(|j| (0..m).map(|i| self.rows[i][j]).collect())
                .collect(),
        }
    }

    /// Entry `(i, j)` becomes `-x_{m+1-i, n+1-j}`.
    pub fn dual(&self) -> GenSegment {
        let rows = self
            .rows
            .iter()
            .rev()
            .map(|r| r.iter().rev().map(|&x| -x).collect())
            .collect();
        GenSegment { rows }
    }

    /// `[x_{m1}, x_{1n}]`.
    pub fn diagonal(&self) -> Segment {
        Segment {
            x: self.rows[self.m() - 1][0],
            y: self.rows[0][self.n() - 1],
        }
    }

    /// Top row, bottom row, left column, right column.
    pub fn sides(&self) -> [Segment; 4] {
        let (m, n) = (self.m() - 1, self.n() - 1);
        let r = &self.rows;
        [
            Segment {
                x: r[0][0],
                y: r[0][n],
            },
            Segment {
                x: r[m][0],
                y: r[m][n],
            },
            Segment {
                x: r[0][0],
                y: r[m][0],
            },
            Segment {
                x: r[0][n],
                y: r[m][n],
            },
        ]
    }
}

fn linked_same_orientation(g: &GenSegment, h: &GenSegment) -> bool {
    if !linked_sets(&g.diagonal(), &h.diagonal()) {
        return false;
    }
    g.sides()
        .iter()
        .zip(h.sides().iter())
        .all(|(s, t)| !s.contains(t) && !t.contains(s))
}

/// Linked generalized segments. When the orientations differ, `g` is
/// transposed first.
pub fn linked_gen(g: &GenSegment, h: &GenSegment) -> Result<bool> {
    let og = g.orientations()?;
    let oh = h.orientations()?;
    if og.iter().any(|o| oh.contains(o)) {
        Ok(linked_same_orientation(g, h))
    } else {
        Ok(linked_same_orientation(&g.transpose(), h))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(x: i64, y: i64) -> Segment {
        Segment::new(x.into(), y.into()).unwrap()
    }

    fn h(x: i64) -> HalfInt {
        HalfInt::from_int(x)
    }

    #[test]
    fn segment_examples() {
        assert!(linked_segments(&seg(3, 1), &seg(2, 0)).unwrap());
        assert!(!linked_segments(&seg(3, 0), &seg(2, 1)).unwrap());
        assert!(!linked_segments(&seg(3, 2), &seg(0, -1)).unwrap());
        assert!(linked_segments(&seg(3, 2), &seg(1, 0)).unwrap());
        assert!(linked_segments(&seg(3, 1), &seg(0, 2)).is_err());
        assert!(Segment::new(h(3), HalfInt::HALF).is_err());
    }

    #[test]
    fn grid_validation() {
        assert!(GenSegment::new(vec![vec![h(3), h(2)], vec![h(4), h(3)]]).is_ok());
        assert!(GenSegment::new(vec![vec![h(3), h(1)]]).is_err());
        assert!(GenSegment::new(vec![vec![h(3), h(2)], vec![h(2), h(1)]]).is_err());
        assert!(GenSegment::new(vec![vec![h(3), h(2)], vec![h(4)]]).is_err());
        let one = GenSegment::new(vec![vec![h(3)]]).unwrap();
        assert_eq!(one.orientations().unwrap().len(), 2);
    }

    #[test]
    fn dual_examples() {
        let g = GenSegment::new(vec![vec![h(3), h(2)]]).unwrap();
        assert_eq!(g.dual().rows(), &[vec![h(-2), h(-3)]]);
        let g = GenSegment::from_corner(HalfInt::from_twice(3), 3, 4, Orientation::RowsDecreasing)
            .unwrap();
        assert_eq!(g.dual().dual(), g);
        assert_eq!(g.dual().orientations().unwrap(), g.orientations().unwrap());
        for a in 1..6 {
            for b in 1..6 {
                let s = GenSegment::speh(a, b).unwrap();
                assert_eq!(s.dual(), s);
                assert_eq!(s.at(b as usize - 1, 0), HalfInt::from_twice(a + b - 2));
                assert_eq!(s.at(0, a as usize - 1), HalfInt::from_twice(2 - a - b));
            }
        }
    }

    #[test]
    fn inside_is_not_linked() {
        let g = GenSegment::from_corner(h(5), 4, 5, Orientation::RowsDecreasing).unwrap();
        let inner = GenSegment::from_corner(h(5), 2, 2, Orientation::RowsDecreasing).unwrap();
        assert!(!linked_gen(&g, &inner).unwrap());
        assert!(!linked_gen(&inner, &g).unwrap());
    }

    #[test]
    fn shifted_grids_link() {
        let g = GenSegment::from_corner(h(2), 2, 3, Orientation::RowsDecreasing).unwrap();
        let k = GenSegment::from_corner(h(3), 2, 3, Orientation::RowsDecreasing).unwrap();
        assert!(linked_gen(&g, &k).unwrap());
        assert!(linked_gen(&g.transpose(), &k).unwrap());
    }
}
