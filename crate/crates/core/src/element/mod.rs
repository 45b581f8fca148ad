//! Elements of Thompson's group `T` as dyadic PL circle homeomorphisms.
//!
//! An element is stored by its canonical lift `F: R -> R`, the unique lift
//! with `F(0)` in `[0, 1)`. The lift is given by breakpoints
//! `0 = x_0 < ... < x_{m-1} < 1` with images `y_0 < ... < y_{m-1} < y_0 + 1`,
//! is affine in between, closes onto `(1, y_0 + 1)` and satisfies
//! `F(x + 1) = F(x) + 1`.

mod interval;
mod json;
mod random;

use std::fmt;

use thiserror::Error;

use crate::dyadic::{Dyadic, DyadicParseError};
use crate::lift::{LiftError, PeriodicMap};

pub use interval::{canonical_dpl, DyadicInterval, IntervalError, IntervalMap};
pub use json::{ElementJson, JsonError};
pub use random::{random_element, random_factor, Factor, MAX_RANDOM_ROTATION_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElementError {
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("canonical lift requires F(0) in [0, 1), found {0}")]
    LiftOutOfRange(Dyadic),
    #[error(transparent)]
    Coordinate(#[from] DyadicParseError),
    #[error("pseudo-rotation order must be positive, got {0}")]
    InvalidOrder(i64),
    #[error("interval pieces do not tile the circle")]
    Discontinuous,
}

/// An element of `T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CircleElement {
    lift: PeriodicMap,
}

impl CircleElement {
    /// Validates a breakpoint list and returns the normalized element.
    pub fn new(bp: Vec<(Dyadic, Dyadic)>) -> Result<Self, ElementError> {
        if let Some((_, y0)) = bp.first() {
            if y0.is_negative() || y0 >= &Dyadic::one() {
                return Err(ElementError::LiftOutOfRange(y0.clone()));
            }
        }
        Ok(CircleElement {
            lift: PeriodicMap::from_points(1, 1, bp)?,
        })
    }

    /// Wraps any lift with periods `(1, 1)`, shifting it to the canonical lift.
    pub fn from_lift(lift: PeriodicMap) -> Self {
        assert_eq!(
            (lift.period_in(), lift.period_out()),
            (1, 1),
            "circle elements have unit periods"
        );
        let shift = lift.knots()[0].1.floor();
        CircleElement {
            lift: lift.shift_output(&shift),
        }
    }

    pub fn identity() -> Self {
        CircleElement {
            lift: PeriodicMap::identity(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.lift == PeriodicMap::identity()
    }

    /// The canonical lift.
    pub fn lift(&self) -> &PeriodicMap {
        &self.lift
    }

    /// Normalized breakpoints `(x_i, y_i)` of the canonical lift.
    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        self.lift.knots()
    }

    /// Slope exponents of the segments right of each breakpoint.
    pub fn slope_exponents(&self) -> &[i64] {
        self.lift.slopes()
    }

    /// The circle point `g(x)`, in `[0, 1)`.
    pub fn evaluate(&self, x: &Dyadic) -> Dyadic {
        self.lift.eval(x).mod_one()
    }

    /// Value of the canonical lift at `x`.
    pub fn eval_lift(&self, x: &Dyadic) -> Dyadic {
        self.lift.eval(x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &CircleElement) -> CircleElement {
        CircleElement::from_lift(PeriodicMap::compose(&self.lift, &other.lift))
    }

    pub fn inverse(&self) -> CircleElement {
        CircleElement::from_lift(self.lift.inverse())
    }

    pub fn power(&self, m: i64) -> CircleElement {
        let base = if m < 0 { self.inverse() } else { self.clone() };
        CircleElement::from_lift(base.lift.power(m.unsigned_abs()))
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &CircleElement) -> CircleElement {
        self.compose(other).compose(&self.inverse())
    }

    pub fn commutes_with(&self, other: &CircleElement) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// The pseudo-rotation `γ_q`: affine on `[0, 1/2], [1/2, 3/4], ...,
    /// [1 - 2^{1-q}, 1]`, sending each interval onto the next and the last
    /// onto the first. `γ_1` is the identity.
    pub fn pseudo_rotation(q: i64) -> Result<CircleElement, ElementError> {
        if q < 1 {
            return Err(ElementError::InvalidOrder(q));
        }
        if q == 1 {
            return Ok(CircleElement::identity());
        }
        let left = pseudo_rotation_points(q as u64);
        let mut bp: Vec<_> = left
            .iter()
            .cloned()
            .zip(left.iter().skip(1).cloned())
            .collect();
        bp.push((left[left.len() - 1].clone(), Dyadic::one()));
        Ok(CircleElement::new(bp).expect("pseudo-rotations are valid elements"))
    }

    /// The dyadic rotation `x -> x + t`.
    pub fn rotation(t: &Dyadic) -> CircleElement {
        CircleElement::from_lift(
            PeriodicMap::from_points(1, 1, vec![(Dyadic::zero(), t.clone())])
                .expect("rotations are valid"),
        )
    }

    /// Restricts the element to the arc `[a, b]` of `[0, 1]`, as a map onto
    /// its image arc shifted into `[0, 2)` so that the image starts in `[0, 1)`.
    pub fn restrict(&self, src: &DyadicInterval) -> IntervalMap {
        let shift = Dyadic::from(self.lift.eval(src.lo()).floor());
        let mut xs: Vec<Dyadic> = vec![src.lo().clone(), src.hi().clone()];
        let n = src.lo().floor();
        for (x, _) in self.lift.knots() {
            for k in [n.clone(), &n + 1] {
                let p = x + &Dyadic::from(k);
                if &p > src.lo() && &p < src.hi() {
                    xs.push(p);
                }
            }
        }
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = &self.lift.eval(&x) - &shift;
                (x, y)
            })
            .collect();
        IntervalMap::from_points(points).expect("restriction of a DPL map is DPL")
    }

    /// Glues interval maps that tile `[0, 1]` onto a tiling of `[0, 1]` and
    /// fix `0`.
    pub(crate) fn glue(pieces: &[IntervalMap]) -> Result<CircleElement, ElementError> {
        let mut points: Vec<(Dyadic, Dyadic)> = Vec::new();
        let mut end: Option<&(Dyadic, Dyadic)> = None;
        for piece in pieces {
            let pts = piece.points();
            if end.is_some_and(|e| e != &pts[0]) {
                return Err(ElementError::Discontinuous);
            }
            points.extend(pts[..pts.len() - 1].iter().cloned());
            end = pts.last();
        }
        let (Some(first), Some(last)) = (points.first(), end) else {
            return Err(ElementError::Discontinuous);
        };
        if *last != (Dyadic::one(), &first.1 + &Dyadic::one()) {
            return Err(ElementError::Discontinuous);
        }
        CircleElement::new(points)
    }
}

/// Left endpoints `0, 1/2, 3/4, ..., 1 - 2^{1-q}` of the intervals permuted by `γ_q`.
pub fn pseudo_rotation_points(q: u64) -> Vec<Dyadic> {
    (0..q)
        .map(|j| &Dyadic::one() - &Dyadic::pow2(-(j as i64)))
        .collect()
}

impl fmt::Debug for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.breakpoints().iter().map(|(x, y)| (x, y)))
            .finish()
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", ElementJson::from(self).to_json_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn el(pts: &[(&str, &str)]) -> Result<CircleElement, ElementError> {
        CircleElement::new(pts.iter().map(|(x, y)| (d(x), d(y))).collect())
    }

    fn gamma(q: i64) -> CircleElement {
        CircleElement::pseudo_rotation(q).unwrap()
    }

    #[test]
    fn make_element_examples() {
        let g2 = el(&[("0", "1/2"), ("1/2", "1")]).unwrap();
        assert_eq!(g2, gamma(2));
        assert!(el(&[("0", "0")]).unwrap().is_identity());
        assert!(matches!(
            el(&[("0", "0"), ("1/2", "3/8")]),
            Err(ElementError::Lift(LiftError::SlopeNotPowerOfTwo { .. }))
        ));
        assert!(matches!(
            el(&[("0", "1"), ("1/2", "3/2")]),
            Err(ElementError::LiftOutOfRange(_))
        ));
        assert!(matches!(
            el(&[("0", "0"), ("1/2", "1/4"), ("1/4", "1/2")]),
            Err(ElementError::Lift(LiftError::DomainNotIncreasing(_)))
        ));
        assert!(matches!(
            el(&[("1/4", "0")]),
            Err(ElementError::Lift(LiftError::FirstNotZero(_)))
        ));
        assert!(matches!(
            el(&[("0", "0"), ("1", "1")]),
            Err(ElementError::Lift(LiftError::DomainOutOfRange(_)))
        ));
        assert!(matches!(
            el(&[("0", "1/2"), ("1/2", "1/4")]),
            Err(ElementError::Lift(LiftError::RangeNotIncreasing(_)))
        ));
    }

    #[test]
    fn pseudo_rotation_shapes() {
        let g2 = gamma(2);
        assert_eq!(g2.breakpoints(), &[(d("0"), d("1/2"))]);
        assert_eq!(g2, CircleElement::rotation(&d("1/2")));
        let g3 = gamma(3);
        assert_eq!(
            g3.breakpoints(),
            &[(d("0"), d("1/2")), (d("1/2"), d("3/4")), (d("3/4"), d("1"))]
        );
        assert_eq!(g3.slope_exponents(), &[-1, 0, 1]);
        assert!(gamma(1).is_identity());
        assert!(CircleElement::pseudo_rotation(0).is_err());
        // γ_4 has slope 1/2 on [0, 3/4], so 1/2 is not a breakpoint
        assert_eq!(
            gamma(4).breakpoints(),
            &[(d("0"), d("1/2")), (d("3/4"), d("7/8")), (d("7/8"), d("1"))]
        );
    }

    #[test]
    fn evaluate_examples() {
        let g3 = gamma(3);
        assert_eq!(g3.evaluate(&d("1/2")), d("3/4"));
        // closing segment has slope 2 through (3/4, 1): 1 + 2 * (7/8 - 3/4) = 5/4
        assert_eq!(g3.evaluate(&d("7/8")), d("1/4"));
        assert_eq!(CircleElement::identity().evaluate(&d("5/8")), d("5/8"));
        assert_eq!(g3.evaluate(&d("-1/2")), d("3/4"));
    }

    #[test]
    fn compose_and_powers() {
        let id = CircleElement::identity();
        let g2 = gamma(2);
        let g3 = gamma(3);
        assert!(g2.compose(&g2).is_identity());
        assert_eq!(id.compose(&g3), g3);
        assert_eq!(g3.compose(&g3).evaluate(&d("0")), d("3/4"));
        assert!(gamma(5).power(5).is_identity());
        assert_eq!(g3.power(1), g3);
        assert!(g3.power(0).is_identity());
        assert_eq!(g3.power(-1), g3.power(2));
        assert_eq!(g3.power(-4), g3.power(2));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(gamma(2).inverse(), gamma(2));
        assert_eq!(gamma(3).inverse(), gamma(3).power(2));
        assert!(CircleElement::identity().inverse().is_identity());
    }

    #[test]
    fn equality_is_representation_invariant() {
        assert_eq!(gamma(2).power(2), CircleElement::identity());
        let redundant = el(&[("0", "1/2"), ("1/4", "5/8"), ("1/2", "3/4"), ("3/4", "1")]).unwrap();
        assert_eq!(redundant, gamma(3));
        assert_ne!(gamma(2), gamma(3));
    }

    #[test]
    fn restrict_and_glue_round_trip() {
        let g3 = gamma(3);
        let arcs = [("0", "1/2"), ("1/2", "3/4"), ("3/4", "1")];
        let pieces: Vec<IntervalMap> = arcs
            .iter()
            .map(|(a, b)| g3.restrict(&DyadicInterval::new(d(a), d(b)).unwrap()))
            .collect();
        assert_eq!(
            pieces[0].dst(),
            DyadicInterval::new(d("1/2"), d("3/4")).unwrap()
        );
        assert_eq!(
            pieces[2].dst(),
            DyadicInterval::new(d("0"), d("1/2")).unwrap()
        );
        // γ_3 fixes no point, but the identity restricted to a tiling glues back
        let id = CircleElement::identity();
        let tiles: Vec<IntervalMap> = arcs
            .iter()
            .map(|(a, b)| id.restrict(&DyadicInterval::new(d(a), d(b)).unwrap()))
            .collect();
        assert!(CircleElement::glue(&tiles).unwrap().is_identity());
    }

    fn arb_element() -> impl Strategy<Value = CircleElement> {
        (any::<u64>(), 1u32..4).prop_map(|(seed, c)| random_element(seed, c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn group_axioms(a in arb_element(), b in arb_element(), c in arb_element()) {
            let id = CircleElement::identity();
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert_eq!(a.compose(&id), a.clone());
            prop_assert_eq!(id.compose(&a), a.clone());
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert!(a.inverse().compose(&a).is_identity());
        }

        #[test]
        fn closure_and_equivariance(a in arb_element(), b in arb_element(), n in 0i64..64, e in 0u64..7) {
            let ab = a.compose(&b);
            let inv = a.inverse();
            for g in [&ab, &inv] {
                let rebuilt = CircleElement::new(g.breakpoints().to_vec());
                prop_assert_eq!(rebuilt.as_ref(), Ok(g));
            }
            let x = Dyadic::new(n, e);
            let one = Dyadic::one();
            prop_assert_eq!(ab.eval_lift(&(&x + &one)), &ab.eval_lift(&x) + &one);
            prop_assert_eq!(ab.evaluate(&x), a.evaluate(&b.evaluate(&x)));
        }
    }
}
