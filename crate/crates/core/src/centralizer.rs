//! The short exact sequence `1 -> C -> Z_T C -> T -> 1` for a finite cyclic `C`.
//!
//! Let `g` generate `C` with rotation number `p/q` and let `G` be the lift of
//! `g^s` (`s p ≡ 1 mod q`) with `G(0) = a ∈ (0, 1)`, so `G^q` is translation
//! by one. The map `Φ(j + t) = G^j(ψ(t))`, with `ψ` the canonical DPL map
//! `[0, 1] -> [0, a]`, satisfies `Φ(x + 1) = G(Φ(x))`. Conjugating by `Φ`
//! turns lifts commuting with `G` into lifts commuting with `x + 1`, which
//! gives the projection; conjugating back gives a set-theoretic section.

use num_integer::Integer;
use thiserror::Error;

use crate::conjugacy::unit_exponent;
use crate::dyadic::Dyadic;
use crate::dynamics::TorsionCertificate;
use crate::element::{canonical_dpl, CircleElement, DyadicInterval, IntervalMap};
use crate::lift::PeriodicMap;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CentralizerError {
    #[error("the subgroup has order {0}; a context needs order at least 2")]
    TrivialSubgroup(u64),
    #[error("element does not commute with the generator")]
    NotInCentralizer,
}

#[derive(Debug, Clone)]
pub struct CentralizerContext {
    g: CircleElement,
    p: u64,
    q: u64,
    s: u64,
    a: Dyadic,
    deck: PeriodicMap,
    psi: IntervalMap,
    phi: PeriodicMap,
    phi_inv: PeriodicMap,
}

impl CentralizerContext {
    pub fn generator(&self) -> &CircleElement {
        &self.g
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    /// `g^s(0)`, the successor of `0` in its orbit.
    pub fn a(&self) -> &Dyadic {
        &self.a
    }

    /// The lift `G` of `g^s` with `G(0) = a`.
    pub fn deck(&self) -> &PeriodicMap {
        &self.deck
    }

    pub fn psi(&self) -> &IntervalMap {
        &self.psi
    }

    /// `Φ`, with periods `(q, 1)`.
    pub fn unrolling(&self) -> &PeriodicMap {
        &self.phi
    }
}

fn unrolling(deck: &PeriodicMap, psi: &IntervalMap, q: u64) -> PeriodicMap {
    let a = psi.dst().hi().clone();
    let powers: Vec<PeriodicMap> = (0..q).map(|j| deck.power(j)).collect();
    let mut candidates = Vec::new();
    for (j, gj) in powers.iter().enumerate() {
        let shift = Dyadic::from(j as i64);
        let local = psi.points()[..psi.points().len() - 1]
            .iter()
            .map(|(x, _)| x.clone())
            .chain(
                gj.knots()
                    .iter()
                    .filter(|(x, _)| x < &a)
                    .map(|(x, _)| psi.eval_inv(x)),
            );
        candidates.extend(local.map(|t| &t + &shift));
    }
    PeriodicMap::interpolate(q, 1, candidates, |x| {
        let j = x.floor();
        let t = x - &Dyadic::from(j.clone());
        let j: usize = j.try_into().expect("argument lies in [0, q)");
        powers[j].eval(&psi.eval(&t))
    })
}

pub fn make_context(cert: &TorsionCertificate) -> Result<CentralizerContext, CentralizerError> {
    let q = cert.order();
    if q < 2 {
        return Err(CentralizerError::TrivialSubgroup(q));
    }
    let p = cert.rotation().numerator();
    let s = unit_exponent(p, q);
    let g = cert.element().clone();
    let deck = g.power(s as i64).lift().clone();
    let a = deck.eval(&Dyadic::zero());
    assert!(
        a.is_positive() && a < Dyadic::one(),
        "successor point {a} outside (0, 1)"
    );
    assert_eq!(deck.power(q), PeriodicMap::translation(1), "G^q is not +1");
    let unit = DyadicInterval::new(Dyadic::zero(), Dyadic::one()).expect("unit interval");
    let arc = DyadicInterval::new(Dyadic::zero(), a.clone()).expect("a > 0");
    let psi = canonical_dpl(&unit, &arc);
    let phi = unrolling(&deck, &psi, q);
    let one = Dyadic::one();
    for (x, y) in phi.knots() {
        assert_eq!(
            phi.eval(&(x + &one)),
            deck.eval(y),
            "Φ is not G-equivariant"
        );
    }
    let phi_inv = phi.inverse();
    Ok(CentralizerContext {
        g,
        p,
        q,
        s,
        a,
        deck,
        psi,
        phi,
        phi_inv,
    })
}

pub fn is_in_centralizer(ctx: &CentralizerContext, h: &CircleElement) -> bool {
    h.commutes_with(&ctx.g)
}

/// `h g h⁻¹ ∈ ⟨g⟩`.
pub fn is_in_normalizer(ctx: &CentralizerContext, h: &CircleElement) -> bool {
    let image = h.conjugate(&ctx.g);
    (0..ctx.q as i64).any(|m| ctx.g.power(m) == image)
}

/// `π(h)`: the element of `T` induced by `h` on the quotient circle.
pub fn project(
    ctx: &CentralizerContext,
    h: &CircleElement,
) -> Result<CircleElement, CentralizerError> {
    if !is_in_centralizer(ctx, h) {
        return Err(CentralizerError::NotInCentralizer);
    }
    let lift = h.lift();
    let zero = Dyadic::zero();
    let defect = &lift.eval(&ctx.deck.eval(&zero)) - &ctx.deck.eval(&lift.eval(&zero));
    assert!(
        defect.is_zero(),
        "commutation defect {defect} for a centralizer element"
    );
    let conj = PeriodicMap::compose(&ctx.phi_inv, &PeriodicMap::compose(lift, &ctx.phi));
    let reduced = conj
        .reduce_period(1, 1)
        .expect("conjugate of a G-commuting lift commutes with +1");
    Ok(CircleElement::from_lift(reduced))
}

/// `σ(h0)`, built from the canonical lift of `h0`.
pub fn section(ctx: &CentralizerContext, h0: &CircleElement) -> CircleElement {
    let conj = PeriodicMap::compose(&ctx.phi, &PeriodicMap::compose(h0.lift(), &ctx.phi_inv));
    CircleElement::from_lift(conj)
}

/// The unique `k` in `0..q` with `σ(h1 h2) = σ(h1) σ(h2) g^k`.
pub fn section_defect(ctx: &CentralizerContext, h1: &CircleElement, h2: &CircleElement) -> u64 {
    let lhs = section(ctx, &h1.compose(h2));
    let base = section(ctx, h1).compose(&section(ctx, h2));
    let matches: Vec<u64> = (0..ctx.q)
        .filter(|&k| base.compose(&ctx.g.power(k as i64)) == lhs)
        .collect();
    assert_eq!(matches.len(), 1, "section defect not unique: {matches:?}");
    matches[0]
}

/// Checks that no `g^m` with `m ≢ 1 (mod q)`, `gcd(m, q) = 1` shares the
/// rotation number of `g`. Since rotation numbers are conjugation invariant,
/// an element normalizing `⟨g⟩` must then centralize it.
pub fn unique_generator_law(cert: &TorsionCertificate) -> bool {
    let q = cert.order();
    let rho = cert.rotation();
    (2..q)
        .filter(|m| m.gcd(&q) == 1)
        .all(|m| rho.times(m as i64) != rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{order_of, Order, RotationNumber};
    use crate::element::random_element;
    use proptest::prelude::*;

    fn gamma(q: i64) -> CircleElement {
        CircleElement::pseudo_rotation(q).unwrap()
    }

    fn ctx_of(g: &CircleElement) -> CentralizerContext {
        make_context(&TorsionCertificate::of(g).unwrap()).unwrap()
    }

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn contexts() {
        let c = ctx_of(&gamma(3));
        assert_eq!((c.p(), c.q(), c.s()), (1, 3, 1));
        assert_eq!(c.a(), &d("1/2"));
        let c = ctx_of(&gamma(5).power(2));
        assert_eq!((c.p(), c.q(), c.s()), (2, 5, 3));
        assert_eq!(c.a(), &d("1/2"));
        let g = CircleElement::new(vec![
            (d("0"), d("3/4")),
            (d("1/2"), d("7/8")),
            (d("3/4"), d("1")),
            (d("7/8"), d("3/2")),
        ])
        .unwrap();
        let c = ctx_of(&g);
        assert_eq!((c.q(), c.s()), (2, 1));
        assert_eq!(c.a(), &d("3/4"));
        assert_eq!(c.deck().power(2), PeriodicMap::translation(1));
        assert_eq!(
            make_context(&TorsionCertificate::of(&CircleElement::identity()).unwrap()).unwrap_err(),
            CentralizerError::TrivialSubgroup(1)
        );
    }

    #[test]
    fn unrolling_of_half_turn_is_halving() {
        let c = ctx_of(&gamma(2));
        let phi = c.unrolling();
        assert_eq!((phi.period_in(), phi.period_out()), (2, 1));
        assert_eq!(phi.knots(), &[(d("0"), d("0"))]);
        assert_eq!(phi.slopes(), &[-1]);
    }

    #[test]
    fn membership() {
        let c = ctx_of(&gamma(2));
        assert!(is_in_centralizer(&c, &gamma(2)));
        assert!(!is_in_centralizer(&c, &gamma(3)));
        assert!(is_in_centralizer(&c, &section(&c, &gamma(3))));
        assert_eq!(
            project(&c, &gamma(3)),
            Err(CentralizerError::NotInCentralizer)
        );
    }

    #[test]
    fn projection_examples() {
        let c = ctx_of(&gamma(2));
        assert!(project(&c, &gamma(2)).unwrap().is_identity());
        let s3 = section(&c, &gamma(3));
        assert_eq!(project(&c, &s3).unwrap(), gamma(3));
        assert_eq!(project(&c, &s3.compose(&gamma(2))).unwrap(), gamma(3));
        assert!(section(&c, &CircleElement::identity()).is_identity());
    }

    #[test]
    fn section_of_gamma3_over_half_turn() {
        let c = ctx_of(&gamma(2));
        let s3 = section(&c, &gamma(3));
        assert_eq!(s3.power(3), gamma(2));
        assert_eq!(order_of(&s3, 64), Order::Finite(6));
        let cert = TorsionCertificate::of(&s3).unwrap();
        assert_eq!(cert.rotation(), RotationNumber::new(1, 6));
    }

    #[test]
    fn section_defects() {
        let c = ctx_of(&gamma(2));
        let k = section_defect(&c, &gamma(3), &gamma(3));
        let lhs = section(&c, &gamma(3).power(2));
        let s3 = section(&c, &gamma(3));
        assert_eq!(lhs, s3.compose(&s3).compose(&gamma(2).power(k as i64)));
        assert_eq!(section_defect(&c, &CircleElement::identity(), &gamma(5)), 0);
    }

    #[test]
    fn normalizer_equals_centralizer_witness() {
        for q in [3, 5, 7, 9] {
            for m in 1..q {
                if m.gcd(&q) == 1 {
                    let cert = TorsionCertificate::of(&gamma(q).power(m)).unwrap();
                    assert!(unique_generator_law(&cert), "q = {q}, m = {m}");
                }
            }
        }
        let c = ctx_of(&gamma(3));
        assert!(is_in_normalizer(&c, &section(&c, &gamma(2))));
        assert!(!is_in_normalizer(&c, &gamma(2)));
    }

    fn arb_context() -> impl Strategy<Value = CentralizerContext> {
        (
            prop::sample::select(vec![2i64, 3, 5]),
            any::<u64>(),
            0u32..3,
        )
            .prop_map(|(q, seed, c)| ctx_of(&random_element(seed, c).conjugate(&gamma(q))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn section_then_project(ctx in arb_context(), seed in any::<u64>()) {
            let h0 = random_element(seed, 2);
            let h = section(&ctx, &h0);
            prop_assert!(is_in_centralizer(&ctx, &h));
            prop_assert_eq!(project(&ctx, &h).unwrap(), h0);
        }

        #[test]
        fn projection_is_homomorphic(
            ctx in arb_context(),
            s1 in any::<u64>(),
            s2 in any::<u64>(),
            k1 in 0i64..5,
            k2 in 0i64..5,
        ) {
            let h1 = section(&ctx, &random_element(s1, 2)).compose(&ctx.generator().power(k1));
            let h2 = section(&ctx, &random_element(s2, 2)).compose(&ctx.generator().power(k2));
            let lhs = project(&ctx, &h1.compose(&h2)).unwrap();
            let rhs = project(&ctx, &h1).unwrap().compose(&project(&ctx, &h2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn kernel_is_the_subgroup(ctx in arb_context(), k in 0i64..5) {
            let gk = ctx.generator().power(k);
            prop_assert!(project(&ctx, &gk).unwrap().is_identity());
        }

        #[test]
        fn defect_satisfies_its_equation(ctx in arb_context(), s1 in any::<u64>(), s2 in any::<u64>()) {
            let (h1, h2) = (random_element(s1, 2), random_element(s2, 2));
            let k = section_defect(&ctx, &h1, &h2);
            let lhs = section(&ctx, &h1.compose(&h2));
            let rhs = section(&ctx, &h1)
                .compose(&section(&ctx, &h2))
                .compose(&ctx.generator().power(k as i64));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
