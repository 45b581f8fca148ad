//! DPL homeomorphisms between closed dyadic intervals.

use std::fmt;

use thiserror::Error;

use crate::dyadic::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("degenerate interval [{0}, {1}]")]
    Degenerate(Dyadic, Dyadic),
    #[error("an interval map needs at least two points")]
    TooFewPoints,
    #[error("interval map points must increase strictly (at index {0})")]
    NotIncreasing(usize),
    #[error("slope on piece {0} is not an integer power of 2")]
    SlopeNotPowerOfTwo(usize),
    #[error("cannot compose: inner image {inner} differs from outer domain {outer}")]
    Mismatch {
        inner: Box<DyadicInterval>,
        outer: Box<DyadicInterval>,
    },
    #[error("piece {0} does not start where the previous piece ends")]
    Gap(usize),
}

/// A nondegenerate closed interval `[lo, hi]` with dyadic endpoints.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self, IntervalError> {
        if lo >= hi {
            return Err(IntervalError::Degenerate(lo, hi));
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn length(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// An orientation-preserving DPL homeomorphism `[a, b] -> [c, d]`.
///
/// Stored as the list of points `(a, c) = p_0, ..., p_n = (b, d)` at which
/// the slope changes, with the endpoints always present.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalMap {
    points: Vec<(Dyadic, Dyadic)>,
    slopes: Vec<i64>,
}

impl IntervalMap {
    pub fn from_points(points: Vec<(Dyadic, Dyadic)>) -> Result<Self, IntervalError> {
        if points.len() < 2 {
            return Err(IntervalError::TooFewPoints);
        }
        let mut slopes = Vec::with_capacity(points.len() - 1);
        for (i, w) in points.windows(2).enumerate() {
            let run = &w[1].0 - &w[0].0;
            let rise = &w[1].1 - &w[0].1;
            if !run.is_positive() || !rise.is_positive() {
                return Err(IntervalError::NotIncreasing(i + 1));
            }
            slopes.push(
                run.log2_ratio(&rise)
                    .ok_or(IntervalError::SlopeNotPowerOfTwo(i))?,
            );
        }
        let n = points.len();
        let mut kept_points = Vec::with_capacity(n);
        let mut kept_slopes: Vec<i64> = Vec::with_capacity(n - 1);
        for (i, pt) in points.into_iter().enumerate() {
            if i > 0 && i < n - 1 && kept_slopes.last() == Some(&slopes[i]) {
                continue;
            }
            kept_points.push(pt);
            if i < n - 1 {
                kept_slopes.push(slopes[i]);
            }
        }
        Ok(IntervalMap {
            points: kept_points,
            slopes: kept_slopes,
        })
    }

    pub fn identity(on: &DyadicInterval) -> Self {
        IntervalMap {
            points: vec![
                (on.lo.clone(), on.lo.clone()),
                (on.hi.clone(), on.hi.clone()),
            ],
            slopes: vec![0],
        }
    }

    pub fn src(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.points[0].0.clone(),
            hi: self.points[self.points.len() - 1].0.clone(),
        }
    }

    pub fn dst(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.points[0].1.clone(),
            hi: self.points[self.points.len() - 1].1.clone(),
        }
    }

    pub fn points(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn is_affine(&self) -> bool {
        self.slopes.len() == 1
    }

    pub fn is_identity(&self) -> bool {
        self.is_affine() && self.slopes[0] == 0 && self.points[0].0 == self.points[0].1
    }

    /// Evaluates at `x`, which must lie in the source interval.
    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        assert!(self.src().contains(x), "{x} is outside {}", self.src());
        let i = self
            .points
            .partition_point(|(px, _)| px <= x)
            .clamp(1, self.slopes.len())
            - 1;
        let (px, py) = &self.points[i];
        py + &(x - px).mul_pow2(self.slopes[i])
    }

    pub fn eval_inv(&self, y: &Dyadic) -> Dyadic {
        assert!(self.dst().contains(y), "{y} is outside {}", self.dst());
        let i = self
            .points
            .partition_point(|(_, py)| py <= y)
            .clamp(1, self.slopes.len())
            - 1;
        let (px, py) = &self.points[i];
        px + &(y - py).mul_pow2(-self.slopes[i])
    }

    pub fn inverse(&self) -> Self {
        IntervalMap {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
            slopes: self.slopes.iter().map(|k| -k).collect(),
        }
    }

    /// `outer ∘ inner`; the image of `inner` must be the domain of `outer`.
    pub fn compose(outer: &IntervalMap, inner: &IntervalMap) -> Result<Self, IntervalError> {
        if inner.dst() != outer.src() {
            return Err(IntervalError::Mismatch {
                inner: Box::new(inner.dst()),
                outer: Box::new(outer.src()),
            });
        }
        let mut xs: Vec<Dyadic> = inner.points.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(outer.points.iter().map(|(z, _)| inner.eval_inv(z)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = outer.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        IntervalMap::from_points(points)
    }

    /// Joins maps on adjacent intervals into one map; each piece must start
    /// where the previous one ended, in both coordinates.
    pub fn concat(pieces: &[IntervalMap]) -> Result<Self, IntervalError> {
        let mut points: Vec<(Dyadic, Dyadic)> = Vec::new();
        for (i, piece) in pieces.iter().enumerate() {
            match points.last() {
                Some(last) if last != &piece.points[0] => return Err(IntervalError::Gap(i)),
                Some(_) => points.extend(piece.points[1..].iter().cloned()),
                None => points.extend(piece.points.iter().cloned()),
            }
        }
        IntervalMap::from_points(points)
    }
}

/// The canonical DPL map between two dyadic intervals.
///
/// Both lengths are split into their binary parts. While the part counts
/// differ, the largest part of the shorter list (first on ties) is halved in
/// place. The i-th source part is then mapped affinely onto the i-th target
/// part; every piece has a power-of-two slope.
pub fn canonical_dpl(src: &DyadicInterval, dst: &DyadicInterval) -> IntervalMap {
    let mut a = src
        .length()
        .binary_parts()
        .expect("interval has positive length");
    let mut b = dst
        .length()
        .binary_parts()
        .expect("interval has positive length");
    while a.len() != b.len() {
        let shorter = if a.len() < b.len() { &mut a } else { &mut b };
        let (idx, _) = shorter
            .iter()
            .enumerate()
            .fold(None::<(usize, &Dyadic)>, |best, (i, p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((i, p)),
            })
            .expect("binary parts are nonempty");
        let half = shorter[idx].half();
        shorter[idx] = half.clone();
        shorter.insert(idx + 1, half);
    }
    let mut points = Vec::with_capacity(a.len() + 1);
    let (mut x, mut y) = (src.lo.clone(), dst.lo.clone());
    points.push((x.clone(), y.clone()));
    for (da, db) in a.iter().zip(&b) {
        x = &x + da;
        y = &y + db;
        points.push((x.clone(), y.clone()));
    }
    IntervalMap::from_points(points).expect("matched binary parts have power-of-two ratios")
}
