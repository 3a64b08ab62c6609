//! Randomized structural properties. Every property here is a theorem of
//! the setting, so failures are always bugs, never statistical noise.

use proptest::prelude::*;

use kummerlab::ffield::FieldSpec;
use kummerlab::fpgmod::{dual_module, span_closure, GroupAlgebraElement, JordanType};
use kummerlab::linalg::Echelon;
use kummerlab::oracle::{dual_x_by_evaluation, jordan_type_by_enumeration, random_nilpotent};
use kummerlab::polyarith::{factor, Polynomial};
use kummerlab::ratfield::{FactoredElement, GaloisContext, KummerClass};

fn poly_from(k: &FieldSpec, coeffs: &[u64]) -> Polynomial {
    Polynomial::from_coeffs(coeffs.iter().map(|&c| k.from_int(c as i64)).collect())
}

fn contexts() -> Vec<GaloisContext> {
    [(2u64, 1u32, 3u64), (2, 2, 5), (3, 1, 7), (5, 1, 11)]
        .into_iter()
        .map(|(p, l, r)| GaloisContext::new(p, l, FieldSpec::new(r, 1).unwrap()).unwrap())
        .collect()
}

proptest! {
    /// sigma is multiplicative and has exact order p^l on factored elements.
    #[test]
    fn sigma_multiplicative_of_order_q(
        which in 0usize..4,
        num in proptest::collection::vec(0u64..11, 1..5),
        den in proptest::collection::vec(0u64..11, 1..5),
    ) {
        let ctx = contexts().swap_remove(which);
        let k = ctx.field();
        let a = poly_from(k, &num);
        let b = poly_from(k, &den);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let e = FactoredElement::from_fraction(k, &a, &b).unwrap();
        let f = FactoredElement::from_poly(k, &b).unwrap();
        // multiplicative
        prop_assert_eq!(e.sigma(&ctx).mul(k, &f.sigma(&ctx)), e.mul(k, &f).sigma(&ctx));
        // order divides q
        let mut s = e.clone();
        for _ in 0..ctx.q() {
            s = s.sigma(&ctx);
        }
        prop_assert_eq!(s, e);
    }

    /// Complete factorization round-trips exactly and is canonical.
    #[test]
    fn factor_roundtrip(
        field in 0usize..6,
        coeffs in proptest::collection::vec(0u64..49, 1..14),
        seed in 0u64..1000,
    ) {
        let (r, m) = [(2u64, 1u32), (3, 1), (5, 1), (7, 2), (3, 2), (2, 2)][field];
        let k = FieldSpec::new(r, m).unwrap();
        let f = poly_from(&k, &coeffs);
        prop_assume!(!f.is_zero());
        let fac = factor(&k, &f, seed).unwrap();
        prop_assert_eq!(fac.product(&k), f);
        // canonical: monic factors, sorted, distinct
        for w in fac.factors.windows(2) {
            prop_assert!(w[0].0.cmp_canonical(&w[1].0).is_lt());
        }
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
        }
    }

    /// x = sigma - 1 is nilpotent of index <= q on every class space.
    #[test]
    fn x_action_nilpotent(
        which in 0usize..4,
        gens in proptest::collection::vec(proptest::collection::vec(0u64..11, 1..4), 1..3),
    ) {
        let ctx = contexts().swap_remove(which);
        let k = ctx.field();
        let classes: Vec<KummerClass> = gens
            .iter()
            .filter(|c| !poly_from(k, c).is_zero())
            .map(|c| KummerClass::of(&ctx, &FactoredElement::from_poly(k, &poly_from(k, c)).unwrap()))
            .collect();
        prop_assume!(!classes.is_empty());
        let module = span_closure(&ctx, &classes).unwrap();
        let x = module.x_ambient();
        prop_assert!(x.pow(ctx.q()).is_zero());
        // and the module presentation agrees
        let pres = module.presentation(&ctx).unwrap();
        prop_assert!(pres.x_matrix().pow(ctx.q()).is_zero());
    }

    /// Modules over F_p[x]/(x^q) are self-dual: the twisted dual has the
    /// same Jordan type, and the double dual again.
    #[test]
    fn self_duality(which in 0usize..4, seed in 0u64..500) {
        let (p, q) = [(2u64, 2u64), (2, 4), (3, 3), (3, 9)][which];
        let (m, jt) = random_nilpotent(p, q, 8, seed);
        let d = dual_module(&m);
        prop_assert_eq!(d.jordan_type(), jt.clone());
        prop_assert_eq!(dual_module(&d).jordan_type(), jt);
    }

    /// The series-free evaluation oracle agrees with the dual-module
    /// formula, and the enumeration oracle agrees on the Jordan type.
    #[test]
    fn dual_oracle_agreement(which in 0usize..4, seed in 0u64..500) {
        let (p, q) = [(2u64, 2u64), (2, 4), (3, 3), (3, 9)][which];
        let (m, jt) = random_nilpotent(p, q, 4, seed);
        let d = dual_module(&m);
        prop_assert_eq!(&dual_x_by_evaluation(&m), d.x_matrix());
        prop_assert_eq!(jordan_type_by_enumeration(d.x_matrix(), q).unwrap(), jt);
    }

    /// Every submodule of the regular module F_p[x]/(x^q) is an ideal
    /// <x^m>, with m the least surviving power among the generators.
    #[test]
    fn regular_module_ideals(
        which in 0usize..4,
        gens in proptest::collection::vec(proptest::collection::vec(0u64..9, 9), 1..4),
    ) {
        let (p, q) = [(2u64, 2u64), (2, 4), (3, 9), (5, 5)][which];
        let elems: Vec<GroupAlgebraElement> = gens
            .iter()
            .map(|c| GroupAlgebraElement::from_coeffs(p, q, &c[..q as usize]))
            .collect();
        let x = GroupAlgebraElement::x(p, q);
        // span of the submodule generated by the elements
        let mut span = Echelon::new(p, q as usize);
        for e in &elems {
            let mut cur = e.clone();
            loop {
                span.insert(cur.coeffs());
                if cur.is_zero() {
                    break;
                }
                cur = cur.mul(&x);
            }
        }
        let m = elems.iter().filter_map(|e| e.least_index()).min();
        match m {
            None => prop_assert_eq!(span.rank(), 0),
            Some(m) => {
                // <x^m> has dimension q - m with basis x^m, ..., x^{q-1}
                prop_assert_eq!(span.rank(), q as usize - m);
                let mut ideal = Echelon::new(p, q as usize);
                let mut cur = GroupAlgebraElement::one(p, q);
                for _ in 0..m {
                    cur = cur.mul(&x);
                }
                loop {
                    ideal.insert(cur.coeffs());
                    if cur.is_zero() {
                        break;
                    }
                    cur = cur.mul(&x);
                }
                for v in span.basis() {
                    prop_assert!(ideal.contains(v));
                }
            }
        }
    }

    /// render -> parse is the identity on canonical factored forms.
    #[test]
    fn render_parse_roundtrip(
        which in 0usize..4,
        num in proptest::collection::vec(0u64..11, 1..6),
        den in proptest::collection::vec(0u64..11, 1..6),
    ) {
        let ctx = contexts().swap_remove(which);
        let k = ctx.field();
        let a = poly_from(k, &num);
        let b = poly_from(k, &den);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let e = FactoredElement::from_fraction(k, &a, &b).unwrap();
        let back = kummerlab::ratfield::parse_ratfunc(k, &e.render(k)).unwrap();
        prop_assert_eq!(back, e);
    }

    /// Jordan types are a complete invariant consistent with dimension.
    #[test]
    fn jordan_type_dimension(which in 0usize..4, seed in 0u64..500) {
        let (p, q) = [(2u64, 2u64), (2, 4), (3, 3), (3, 9)][which];
        let (m, jt) = random_nilpotent(p, q, 6, seed);
        prop_assert_eq!(jt.dim(), m.dim() as u64);
        prop_assert_eq!(m.jordan_type(), JordanType::new(jt.parts().to_vec()));
        prop_assert!(jt.parts().iter().all(|&part| part <= q));
    }
}
