//! Periodic piecewise-linear maps of the real line.
//!
//! A [`PeriodicMap`] is an increasing PL bijection `F: R -> R` with dyadic
//! breakpoints, power-of-two slopes and a quasi-periodicity
//! `F(x + P) = F(x) + Q` for positive integers `P`, `Q`. Lifts of circle
//! maps are the case `P = Q = 1`; the unrolling maps used for centralizers
//! have `P = q, Q = 1` and their inverses `P = 1, Q = q`.
//!
//! The map is stored by its knots on the fundamental domain `[0, P)`. The
//! segment after the last knot closes onto `(P, F(0) + Q)`. Knots where the
//! slope does not change are removed, except the mandatory knot at `0`, so
//! two maps with the same periods are equal iff their representations are.

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::dyadic::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("no breakpoints given")]
    Empty,
    #[error("first breakpoint must have x = 0, found {0}")]
    FirstNotZero(Dyadic),
    #[error("breakpoint x-coordinates must increase strictly (at index {0})")]
    DomainNotIncreasing(usize),
    #[error("breakpoint x-coordinate {0} lies outside the fundamental domain")]
    DomainOutOfRange(Dyadic),
    #[error("breakpoint y-coordinates must increase strictly (at index {0})")]
    RangeNotIncreasing(usize),
    #[error("slope {rise}/({run}) on segment {index} is not an integer power of 2")]
    SlopeNotPowerOfTwo {
        index: usize,
        rise: Dyadic,
        run: Dyadic,
    },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PeriodicMap {
    period_in: u64,
    period_out: u64,
    knots: Vec<(Dyadic, Dyadic)>,
    /// `slopes[i]` is the exponent of the slope right of `knots[i]`.
    slopes: Vec<i64>,
}

impl PeriodicMap {
    /// Builds a map from knots on `[0, period_in)`, validating and normalizing.
    pub fn from_points(
        period_in: u64,
        period_out: u64,
        points: Vec<(Dyadic, Dyadic)>,
    ) -> Result<Self, LiftError> {
        assert!(period_in > 0 && period_out > 0, "periods must be positive");
        let first = points.first().ok_or(LiftError::Empty)?;
        if !first.0.is_zero() {
            return Err(LiftError::FirstNotZero(first.0.clone()));
        }
        let pin = Dyadic::from(period_in as i64);
        let pout = Dyadic::from(period_out as i64);
        let closing = (pin.clone(), &first.1 + &pout);
        let m = points.len();
        if points[m - 1].0 >= pin {
            return Err(LiftError::DomainOutOfRange(points[m - 1].0.clone()));
        }
        let mut slopes = Vec::with_capacity(m);
        for i in 0..m {
            let (x0, y0) = &points[i];
            let (x1, y1) = if i + 1 < m { &points[i + 1] } else { &closing };
            let run = x1 - x0;
            let rise = y1 - y0;
            if !run.is_positive() {
                return Err(LiftError::DomainNotIncreasing(i + 1));
            }
            if !rise.is_positive() {
                return Err(LiftError::RangeNotIncreasing(i + 1));
            }
            let k = run.log2_ratio(&rise).ok_or(LiftError::SlopeNotPowerOfTwo {
                index: i,
                rise,
                run,
            })?;
            slopes.push(k);
        }
        let mut knots = Vec::with_capacity(m);
        let mut kept = Vec::with_capacity(m);
        for (i, (pt, k)) in points.into_iter().zip(slopes).enumerate() {
            if i > 0 && kept.last() == Some(&k) {
                continue;
            }
            knots.push(pt);
            kept.push(k);
        }
        Ok(PeriodicMap {
            period_in,
            period_out,
            knots,
            slopes: kept,
        })
    }

    /// Builds the map that agrees with `f` at `candidates` and is affine in between.
    ///
    /// `candidates` must contain every breakpoint of `f` in `[0, period_in)`;
    /// `0` is added if missing. Any failure here means the candidate set was
    /// incomplete, which is a bug in the caller.
    pub(crate) fn interpolate(
        period_in: u64,
        period_out: u64,
        mut candidates: Vec<Dyadic>,
        f: impl Fn(&Dyadic) -> Dyadic,
    ) -> Self {
        candidates.push(Dyadic::zero());
        candidates.sort();
        candidates.dedup();
        let points = candidates
            .into_iter()
            .map(|x| {
                let y = f(&x);
                (x, y)
            })
            .collect();
        PeriodicMap::from_points(period_in, period_out, points)
            .expect("interpolation through a complete breakpoint set is DPL")
    }

    pub fn identity() -> Self {
        Self::translation(0)
    }

    /// The translation `x -> x + k` as a `(1, 1)` map.
    pub fn translation(k: i64) -> Self {
        PeriodicMap {
            period_in: 1,
            period_out: 1,
            knots: vec![(Dyadic::zero(), Dyadic::from(k))],
            slopes: vec![0],
        }
    }

    pub fn period_in(&self) -> u64 {
        self.period_in
    }

    pub fn period_out(&self) -> u64 {
        self.period_out
    }

    pub fn knots(&self) -> &[(Dyadic, Dyadic)] {
        &self.knots
    }

    /// Slope exponents, one per segment.
    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    fn pin(&self) -> BigInt {
        BigInt::from(self.period_in)
    }

    fn pout(&self) -> BigInt {
        BigInt::from(self.period_out)
    }

    pub fn eval(&self, x: &Dyadic) -> Dyadic {
        let pin = self.pin();
        let n = x.div_floor_int(&pin);
        let r = x - &Dyadic::from(&n * &pin);
        let i = self.knots.partition_point(|(kx, _)| kx <= &r) - 1;
        let (kx, ky) = &self.knots[i];
        let local = ky + &(&r - kx).mul_pow2(self.slopes[i]);
        local + Dyadic::from(n * self.pout())
    }

    pub fn eval_inv(&self, y: &Dyadic) -> Dyadic {
        let pout = self.pout();
        let y0 = &self.knots[0].1;
        let n = (y - y0).div_floor_int(&pout);
        let r = y - &Dyadic::from(&n * &pout);
        let i = self.knots.partition_point(|(_, ky)| ky <= &r) - 1;
        let (kx, ky) = &self.knots[i];
        let local = kx + &(&r - ky).mul_pow2(-self.slopes[i]);
        local + Dyadic::from(n * self.pin())
    }

    pub fn inverse(&self) -> Self {
        let pout = self.pout();
        let candidates = self
            .knots
            .iter()
            .map(|(_, y)| y.rem_euclid(&pout))
            .collect();
        PeriodicMap::interpolate(self.period_out, self.period_in, candidates, |y| {
            self.eval_inv(y)
        })
    }

    /// The composite `outer ∘ inner`.
    pub fn compose(outer: &PeriodicMap, inner: &PeriodicMap) -> PeriodicMap {
        let l = inner.period_out.lcm(&outer.period_in);
        let pin = inner.period_in * (l / inner.period_out);
        let pout = outer.period_out * (l / outer.period_in);
        let mut candidates = Vec::new();
        for j in 0..pin / inner.period_in {
            let shift = Dyadic::from((j * inner.period_in) as i64);
            candidates.extend(inner.knots.iter().map(|(x, _)| x + &shift));
        }
        // preimages of the outer knots inside inner([0, pin)) = [y0, y0 + l)
        let y0 = inner.eval(&Dyadic::zero());
        let outer_pin = outer.pin();
        for (z, _) in &outer.knots {
            let offset = (z - &y0).rem_euclid(&outer_pin);
            let first = &y0 + &offset;
            for j in 0..l / outer.period_in {
                let w = &first + &Dyadic::from((j * outer.period_in) as i64);
                candidates.push(inner.eval_inv(&w));
            }
        }
        PeriodicMap::interpolate(pin, pout, candidates, |x| outer.eval(&inner.eval(x)))
    }

    /// `self^n` for `n >= 0`, by repeated squaring. Requires equal periods.
    pub fn power(&self, n: u64) -> Self {
        assert_eq!(
            self.period_in, self.period_out,
            "only self-maps of a period can be iterated"
        );
        let mut result = PeriodicMap::from_points(
            self.period_in,
            self.period_out,
            vec![(Dyadic::zero(), Dyadic::zero())],
        )
        .expect("identity is valid");
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = PeriodicMap::compose(&result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = PeriodicMap::compose(&base, &base);
            }
        }
        result
    }

    /// The same function, presented with periods `(k P, k Q)`.
    pub fn unroll(&self, k: u64) -> Self {
        let mut points = Vec::with_capacity(self.knots.len() * k as usize);
        for j in 0..k {
            let dx = Dyadic::from((j * self.period_in) as i64);
            let dy = Dyadic::from((j * self.period_out) as i64);
            points.extend(self.knots.iter().map(|(x, y)| (x + &dx, y + &dy)));
        }
        PeriodicMap::from_points(self.period_in * k, self.period_out * k, points)
            .expect("unrolling preserves validity")
    }

    /// Re-presents the map with the smaller periods `(p, q)` if it has that
    /// quasi-periodicity, i.e. `F(x + p) = F(x) + q`.
    pub fn reduce_period(&self, p: u64, q: u64) -> Option<Self> {
        if !self.period_in.is_multiple_of(p) || !self.period_out.is_multiple_of(q) {
            return None;
        }
        let k = self.period_in / p;
        if self.period_out / q != k {
            return None;
        }
        let bound = Dyadic::from(p as i64);
        let points = self
            .knots
            .iter()
            .take_while(|(x, _)| x < &bound)
            .cloned()
            .collect();
        let candidate = PeriodicMap::from_points(p, q, points).ok()?;
        (candidate.unroll(k) == *self).then_some(candidate)
    }

    /// Subtracts the integer `k` from every output.
    pub fn shift_output(&self, k: &BigInt) -> Self {
        let dk = Dyadic::from(k.clone());
        PeriodicMap {
            period_in: self.period_in,
            period_out: self.period_out,
            knots: self
                .knots
                .iter()
                .map(|(x, y)| (x.clone(), y - &dk))
                .collect(),
            slopes: self.slopes.clone(),
        }
    }

    /// If this map is a translation `x -> x + t` with `P = Q`, returns `t`.
    pub fn as_translation(&self) -> Option<Dyadic> {
        if self.period_in != self.period_out || self.slopes.iter().any(|&k| k != 0) {
            return None;
        }
        Some(self.knots[0].1.clone())
    }

    /// Number of stored knots.
    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }
}
