//! Rotation numbers and finite-order detection.
//!
//! For a torsion element the orbit of `0` closes up after exactly `q`
//! steps, where `q` is the order, and the rank of `g(0)` in the sorted orbit
//! is the numerator of the rotation number. An orbit that returns to `0`
//! at step `q` while `g^q` is not the identity certifies infinite order: a
//! finite-order map with a fixed point is the identity.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::dyadic::Dyadic;
use crate::element::CircleElement;

/// Default bound on the detectable order.
pub const DEFAULT_CAP: u64 = 4096;

/// A reduced rotation number `p/q` with `0 <= p < q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RotationNumber {
    p: u64,
    q: u64,
}

impl RotationNumber {
    /// Reduces `p/q` modulo 1.
    pub fn new(p: i64, q: u64) -> Self {
        assert!(q > 0, "denominator must be positive");
        let p = p.rem_euclid(q as i64) as u64;
        let g = p.gcd(&q);
        RotationNumber { p: p / g, q: q / g }
    }

    pub fn zero() -> Self {
        RotationNumber { p: 0, q: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.p
    }

    pub fn denominator(&self) -> u64 {
        self.q
    }

    /// `m · self` modulo 1.
    pub fn times(&self, m: i64) -> Self {
        let p = (self.p as i128 * m as i128).rem_euclid(self.q as i128) as i64;
        RotationNumber::new(p, self.q)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.p), BigInt::from(self.q))
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

/// Verified torsion data: order `q`, rotation number `p/q`, and the orbit
/// `0, g(0), ..., g^{q-1}(0)` in dynamical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TorsionCertificate {
    element: CircleElement,
    rotation: RotationNumber,
    orbit: Vec<Dyadic>,
}

impl TorsionCertificate {
    /// Certifies `g` with the default cap; `None` unless torsion is proven.
    pub fn of(g: &CircleElement) -> Option<Self> {
        match orbit_of_zero(g, DEFAULT_CAP) {
            OrbitOutcome::Torsion(cert) => Some(cert),
            _ => None,
        }
    }

    pub fn element(&self) -> &CircleElement {
        &self.element
    }

    pub fn order(&self) -> u64 {
        self.orbit.len() as u64
    }

    pub fn rotation(&self) -> RotationNumber {
        self.rotation
    }

    /// `g^j(0)` for `j = 0..q`.
    pub fn orbit(&self) -> &[Dyadic] {
        &self.orbit
    }

    pub fn sorted_orbit(&self) -> Vec<Dyadic> {
        let mut s = self.orbit.clone();
        s.sort();
        s
    }

    /// The sorted orbit is the dynamical orbit reindexed by `j -> j p mod q`.
    pub fn satisfies_cyclic_order_law(&self) -> bool {
        let q = self.order();
        let p = self.rotation.numerator();
        let sorted = self.sorted_orbit();
        self.orbit
            .iter()
            .enumerate()
            .all(|(j, x)| &sorted[((j as u64 * p) % q) as usize] == x)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrbitOutcome {
    Torsion(TorsionCertificate),
    /// `g^q` fixes `0` for some `q <= cap` but is not the identity.
    Infinite,
    /// The orbit of `0` did not return within `cap` steps.
    NoTorsionUpTo(u64),
}

/// Iterates `0, g(0), g^2(0), ...` until the first return to `0`, at most `cap` steps.
pub fn orbit_of_zero(g: &CircleElement, cap: u64) -> OrbitOutcome {
    let zero = Dyadic::zero();
    let mut orbit = vec![zero.clone()];
    let mut x = zero.clone();
    for step in 1..=cap.max(1) {
        x = g.evaluate(&x);
        if x == zero {
            if !g.power(step as i64).is_identity() {
                return OrbitOutcome::Infinite;
            }
            let q = step;
            let p = if q == 1 {
                0
            } else {
                let first = &orbit[1];
                orbit.iter().filter(|y| *y < first).count() as i64
            };
            let cert = TorsionCertificate {
                element: g.clone(),
                rotation: RotationNumber::new(p, q),
                orbit,
            };
            assert_eq!(
                cert.rotation.denominator(),
                q,
                "torsion element with non-reduced rotation number"
            );
            assert!(
                cert.satisfies_cyclic_order_law(),
                "torsion orbit violates the cyclic order of a rotation"
            );
            return OrbitOutcome::Torsion(cert);
        }
        orbit.push(x.clone());
    }
    OrbitOutcome::NoTorsionUpTo(cap)
}

pub fn exact_rotation_number(cert: &TorsionCertificate) -> RotationNumber {
    cert.rotation
}

/// A certified rational approximation of a rotation number.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotationEstimate {
    pub estimate: BigRational,
    /// `|estimate - ρ| <= bound`, with `ρ` read in `[0, 1]` via the canonical lift.
    pub bound: BigRational,
}

/// `F^n(0) / n` for the canonical lift `F`; within `1/n` of the translation number.
pub fn estimate_rotation_number(g: &CircleElement, n: u64) -> RotationEstimate {
    let n = n.max(1);
    let mut x = Dyadic::zero();
    for _ in 0..n {
        x = g.eval_lift(&x);
    }
    let n_big = BigInt::from(n);
    RotationEstimate {
        estimate: x.to_rational() / BigRational::from_integer(n_big.clone()),
        bound: BigRational::new(BigInt::from(1), n_big),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(u64),
    Infinite,
    Unknown(u64),
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(q) => write!(f, "{q}"),
            Order::Infinite => write!(f, "infinite"),
            Order::Unknown(cap) => write!(f, "unknown (no return within {cap} steps)"),
        }
    }
}

pub fn order_of(g: &CircleElement, cap: u64) -> Order {
    match orbit_of_zero(g, cap) {
        OrbitOutcome::Torsion(cert) => Order::Finite(cert.order()),
        OrbitOutcome::Infinite => Order::Infinite,
        OrbitOutcome::NoTorsionUpTo(cap) => Order::Unknown(cap),
    }
}
