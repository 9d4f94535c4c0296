use proptest::prelude::*;

use polygen::closedform::{cs_poly, CsKind};
use polygen::exact::{Monomial, NVARS};
use polygen::genfun::{build, FamilyId, FamilySeries, Kernel};
use polygen::series::Coefficient;
use polygen::{CPoly, Convention, MultiPoly, Rational, TruncSeries, Var};

const VARS: [Var; 4] = [Var::X, Var::Y, Var::S, Var::A];

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..=3, VARS.len()).prop_map(|es| {
        let mut m = [0u16; NVARS];
        for (v, e) in VARS.iter().zip(es) {
            m[v.index()] = e;
        }
        Monomial(m)
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((monomial(), small_rational()), 0..5)
        .prop_map(|terms| MultiPoly::from_terms(terms, false))
}

/// Polynomials without `s`, safe to use as series coefficients.
fn plain_poly() -> impl Strategy<Value = MultiPoly> {
    poly().prop_map(|p| p.substitute(Var::S, &MultiPoly::zero()).unwrap())
}

fn series(order: usize, zero_constant: bool) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(plain_poly(), order + 1).prop_map(move |mut cs| {
        if zero_constant {
            cs[0] = MultiPoly::zero();
        }
        TruncSeries::from_ordinary(cs, order, Convention::Egf)
    })
}

fn kernel() -> impl Strategy<Value = Kernel> {
    (any::<bool>(), prop::sample::select(vec![(1, 1), (2, 1), (1, 2), (-1, 2), (3, 1)]), 0i64..=1).prop_map(
        |(euler, (p, q), b)| {
            let a = Rational::new(p.into(), q.into());
            let mut k = if euler { Kernel::euler(a) } else { Kernel::bernoulli(a) };
            k.b = Rational::from_integer(b.into());
            k
        },
    )
}

fn mul(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    p.try_mul(q).unwrap()
}

fn add(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    p.try_add(q).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(add(&p, &q), add(&q, &p));
        prop_assert_eq!(mul(&p, &q), mul(&q, &p));
        prop_assert_eq!(mul(&mul(&p, &q), &r), mul(&p, &mul(&q, &r)));
        prop_assert_eq!(mul(&p, &add(&q, &r)), add(&mul(&p, &q), &mul(&p, &r)));
        prop_assert_eq!(mul(&p, &MultiPoly::one()), p.clone());
        prop_assert!(p.try_sub(&p).unwrap().is_zero());
    }

    #[test]
    fn s_reduction_is_idempotent_homomorphism(p in poly(), q in poly()) {
        let rp = p.reduce_s();
        prop_assert_eq!(rp.reduce_s(), rp.clone());
        prop_assert!(rp.degree_in(Var::S) <= 1);
        let rq = q.reduce_s();
        prop_assert_eq!(mul(&p, &q).reduce_s(), mul(&rp, &rq));
        prop_assert_eq!(add(&p, &q).reduce_s(), add(&rp, &rq));
    }

    #[test]
    fn mixed_partials_commute(p in poly()) {
        let xy = p.partial(Var::X).unwrap().partial(Var::Y).unwrap();
        let yx = p.partial(Var::Y).unwrap().partial(Var::X).unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn canonical_string_is_injective(p in poly(), q in poly()) {
        prop_assert_eq!(p.to_string() == q.to_string(), p == q);
        prop_assert_eq!(MultiPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn series_product_is_commutative_and_associative(f in series(5, false), g in series(5, false), h in series(5, false)) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn exp_turns_sums_into_products(f in series(5, true), g in series(5, true)) {
        let lhs = f.add(&g).unwrap().exp().unwrap();
        let rhs = f.exp().unwrap().mul(&g.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(c in (1i64..=5).prop_map(MultiPoly::from_int), f in series(6, true)) {
        let unit = TruncSeries::constant(c, 6, Convention::Egf).add(&f).unwrap();
        let inv = unit.invert().unwrap();
        let one = TruncSeries::one(6, Convention::Egf);
        prop_assert_eq!(unit.mul(&inv).unwrap(), one.clone());
        prop_assert_eq!(inv.mul(&unit).unwrap(), one);
    }

    #[test]
    fn trig_addition_law(f in series(5, true), g in series(5, true)) {
        let (cf, sf) = f.trig().unwrap();
        let (cg, sg) = g.trig().unwrap();
        let (csum, ssum) = f.add(&g).unwrap().trig().unwrap();
        prop_assert_eq!(csum, cf.mul(&cg).unwrap().sub(&sf.mul(&sg).unwrap()).unwrap());
        prop_assert_eq!(ssum, sf.mul(&cg).unwrap().add(&cf.mul(&sg).unwrap()).unwrap());
        let pyth = cf.mul(&cf).unwrap().add(&sf.mul(&sf).unwrap()).unwrap();
        prop_assert_eq!(pyth, TruncSeries::one(5, Convention::Egf));
    }

    #[test]
    fn m2_m3_are_conjugate_sum_and_difference(z in 0i64..=2, r in 1usize..=3, k in kernel()) {
        let order = 5;
        let Ok(m1) = build(&FamilyId::M1 { z, kernel: k.clone(), r }, order) else { return Ok(()) };
        let m2 = build(&FamilyId::M2 { z, kernel: k.clone(), r }, order).unwrap().into_complex();
        let m3 = build(&FamilyId::M3 { z, kernel: k.clone(), r }, order).unwrap().into_complex();
        let m1 = m1.into_complex();
        // M2 = M1 + conj-w companion, M3 = M1 - companion, so M1 = (M2 + M3)/2.
        let half = Rational::new(1.into(), 2.into());
        prop_assert_eq!(m2.add(&m3).unwrap().scale_rational(&half), m1);
    }

    #[test]
    fn kernel_decomposition(r in 1usize..=3) {
        // G(t, w) = exp(sum u_j t^j) (cos yt + i sin yt) e^(xt), so Re G = K1 and Im G = K2.
        let order = 6;
        let g = build(&FamilyId::GKernel { r }, order).unwrap().into_complex();
        let k1 = build(&FamilyId::K1Kernel { r }, order).unwrap().into_real().unwrap();
        let k2 = build(&FamilyId::K2Kernel { r }, order).unwrap().into_real().unwrap();
        prop_assert_eq!(g.re(), k1);
        prop_assert_eq!(g.im(), k2);
    }

    #[test]
    fn nw_is_conjugation_symmetric(n in 0usize..=8) {
        let s = build(&FamilyId::Nw, n).unwrap().into_complex();
        let c = s.egf_coeff(n).unwrap();
        let swapped = c.conj();
        let minus_y = MultiPoly::var(Var::Y).scale(&Rational::from_integer((-1).into()));
        let y_neg = c.map(|p| p.substitute(Var::Y, &minus_y).unwrap());
        prop_assert_eq!(swapped, y_neg);
        prop_assert_eq!(c, CPoly::new(cs_poly(CsKind::C, n), cs_poly(CsKind::S, n)));
    }

    #[test]
    fn r1_tuple_families_degenerate(n in 0usize..=7) {
        let order = 7;
        let sub = |s: FamilySeries, q: &MultiPoly| -> TruncSeries {
            s.into_real().unwrap().map_coeffs(|p| p.substitute(Var::u(1), q).unwrap())
        };
        let x = MultiPoly::var(Var::X);
        let cos = build(&FamilyId::CosC, order).unwrap().into_real().unwrap();
        let sin = build(&FamilyId::SinS, order).unwrap().into_real().unwrap();
        let m4 = sub(build(&FamilyId::M4 { r: 1 }, order).unwrap(), &x);
        let m5 = sub(build(&FamilyId::M5 { r: 1 }, order).unwrap(), &x);
        let k1 = sub(build(&FamilyId::K1Kernel { r: 1 }, order).unwrap(), &MultiPoly::zero());
        prop_assert_eq!(m4.egf_coeff(n).unwrap(), cos.egf_coeff(n).unwrap());
        prop_assert_eq!(m5.egf_coeff(n).unwrap(), sin.egf_coeff(n).unwrap());
        prop_assert_eq!(k1.egf_coeff(n).unwrap(), cos.egf_coeff(n).unwrap());
    }
}

#[test]
fn coefficient_trait_is_usable_generically() {
    fn double<C: Coefficient>(c: &C) -> C {
        c.add(c).unwrap()
    }
    assert_eq!(double(&MultiPoly::from_int(3)), MultiPoly::from_int(6));
    assert_eq!(double(&CPoly::i()), CPoly::new(MultiPoly::zero(), MultiPoly::from_int(2)));
}
