//! Explicit conjugators between finite cyclic subgroups of `T`.
//!
//! A cyclic subgroup of order `q` has a unique generator `g'` with rotation
//! number `1/q`. Its orbit `0 = c_0 < c_1 < ... < c_{q-1}` cuts the circle
//! into arcs `A_j = [c_j, c_{j+1}]` with `g'(A_j) = A_{j+1}`, just as `γ_q`
//! permutes its intervals `I_j`. Any DPL map `h_0: A_0 -> I_0` extends
//! uniquely to `h` with `h g' = γ_q h` by `h|A_j = γ_q^j h_0 g'^{-j}`.

use num_integer::Integer;
use thiserror::Error;

use crate::dyadic::Dyadic;
use crate::dynamics::{orbit_of_zero, OrbitOutcome, TorsionCertificate};
use crate::element::{
    canonical_dpl, pseudo_rotation_points, CircleElement, DyadicInterval, IntervalMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjugacyError {
    #[error("conjugating to a pseudo-rotation needs order at least 2, got {0}")]
    OrderTooSmall(u64),
    #[error("subgroups of different orders {0} and {1} are not conjugate")]
    OrderMismatch(u64, u64),
    #[error("constructed conjugator failed exact verification")]
    Verification,
}

/// The `s` in `0 < s < q` with `s p ≡ 1 (mod q)`; `1` when `q = 1`.
pub fn unit_exponent(p: u64, q: u64) -> u64 {
    if q == 1 {
        return 1;
    }
    let e = (p as i64).extended_gcd(&(q as i64));
    assert_eq!(e.gcd, 1, "rotation number {p}/{q} is not reduced");
    e.x.rem_euclid(q as i64) as u64
}

/// The generator of `⟨g⟩` with rotation number `1/q`, i.e. `g^s` with `s p ≡ 1 (mod q)`.
pub fn normalize_generator(cert: &TorsionCertificate) -> CircleElement {
    let rho = cert.rotation();
    let s = unit_exponent(rho.numerator(), rho.denominator());
    cert.element().power(s as i64)
}

/// Certificate for [`normalize_generator`]'s output.
pub fn normalized_certificate(cert: &TorsionCertificate) -> TorsionCertificate {
    match orbit_of_zero(&normalize_generator(cert), cert.order()) {
        OrbitOutcome::Torsion(c) => c,
        other => unreachable!("power of a torsion element is torsion, got {other:?}"),
    }
}

fn interval(lo: &Dyadic, hi: &Dyadic) -> DyadicInterval {
    DyadicInterval::new(lo.clone(), hi.clone()).expect("orbit arcs are nondegenerate")
}

/// Returns `h` in `T` with `h g' h⁻¹ = γ_q`, where `g'` is the normalized generator.
///
/// On `A_0 = [0, c_1]` the map sends the points of `A_0` lying on `g'`-orbits
/// of `0` or of breakpoints of `g'` to `(1 - 2^{-i})/2`, `i = 1, 2, ...`, in
/// order, interpolating by [`canonical_dpl`]; it is then extended equivariantly.
pub fn conjugator_to_pseudo_rotation(
    cert: &TorsionCertificate,
) -> Result<CircleElement, ConjugacyError> {
    let q = cert.order();
    if q < 2 {
        return Err(ConjugacyError::OrderTooSmall(q));
    }
    let normalized = normalized_certificate(cert);
    let gen = normalized.element();
    let mut cuts = normalized.orbit().to_vec();
    cuts.push(Dyadic::one());
    let c1 = cuts[1].clone();

    let mut marked: Vec<Dyadic> = Vec::new();
    for (b, _) in gen.breakpoints() {
        let mut x = b.clone();
        for _ in 0..q {
            if x.is_positive() && x < c1 {
                marked.push(x.clone());
            }
            x = gen.evaluate(&x);
        }
    }
    marked.sort();
    marked.dedup();

    let half = Dyadic::pow2(-1);
    let mut src_cuts = vec![Dyadic::zero()];
    let mut dst_cuts = vec![Dyadic::zero()];
    for (i, p) in marked.into_iter().enumerate() {
        src_cuts.push(p);
        dst_cuts.push((&Dyadic::one() - &Dyadic::pow2(-(i as i64 + 1))).half());
    }
    src_cuts.push(c1);
    dst_cuts.push(half);
    let first_piece: Vec<IntervalMap> = src_cuts
        .windows(2)
        .zip(dst_cuts.windows(2))
        .map(|(a, b)| canonical_dpl(&interval(&a[0], &a[1]), &interval(&b[0], &b[1])))
        .collect();
    let h0 = IntervalMap::concat(&first_piece).expect("pieces are adjacent");

    let gamma = CircleElement::pseudo_rotation(q as i64).expect("q >= 2");
    let mut targets = pseudo_rotation_points(q);
    targets.push(Dyadic::one());
    let gen_inv = gen.inverse();
    let mut pieces = vec![h0];
    for j in 1..q as usize {
        let back = gen_inv.restrict(&interval(&cuts[j], &cuts[j + 1]));
        let forward = gamma.restrict(&interval(&targets[j - 1], &targets[j]));
        let inner = IntervalMap::compose(&pieces[j - 1], &back)
            .map_err(|_| ConjugacyError::Verification)?;
        let piece =
            IntervalMap::compose(&forward, &inner).map_err(|_| ConjugacyError::Verification)?;
        pieces.push(piece);
    }
    let h = CircleElement::glue(&pieces).map_err(|_| ConjugacyError::Verification)?;
    if h.conjugate(gen) != gamma {
        return Err(ConjugacyError::Verification);
    }
    Ok(h)
}

/// Returns `w` with `w g1' w⁻¹ = g2'` for the normalized generators of two
/// subgroups of the same order, so `w ⟨g1⟩ w⁻¹ = ⟨g2⟩`.
pub fn subgroup_conjugator(
    first: &TorsionCertificate,
    second: &TorsionCertificate,
) -> Result<CircleElement, ConjugacyError> {
    if first.order() != second.order() {
        return Err(ConjugacyError::OrderMismatch(first.order(), second.order()));
    }
    if first.order() == 1 {
        return Ok(CircleElement::identity());
    }
    let h1 = conjugator_to_pseudo_rotation(first)?;
    let h2 = conjugator_to_pseudo_rotation(second)?;
    Ok(h2.inverse().compose(&h1))
}
