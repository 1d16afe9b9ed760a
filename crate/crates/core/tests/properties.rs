use std::sync::Arc;

use proptest::prelude::*;
use qline::analysis::{analyze, AnalysisOptions};
use qline::families::{
    make_s4_gamma, make_z, make_z_paper_instance, random_binary_form, random_pencil_planes, ZParams,
};
use qline::flexline::{is_second_kind, segre_compose};
use qline::galois::{embed_root, mk_extension, mk_prime_field, seeded_rng, FieldCtx, Fq};
use qline::linalg::{self, Mat};
use qline::mpoly::{parse_poly, resultant, MPoly, Mono, PolyRing};
use qline::pencil::{cubic_discriminant, singular_fiber_table};

const P: u64 = 10007;

fn base() -> Arc<FieldCtx> {
    mk_prime_field(P).unwrap()
}

fn elem(ctx: &Arc<FieldCtx>, c: &[u64]) -> Fq {
    Fq::from_coeffs(ctx, c)
}

fn coeffs(k: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..P, k)
}

fn random_matrix(ctx: &Arc<FieldCtx>, n: usize, seed: u64) -> Mat {
    let mut rng = seeded_rng(seed, 77);
    loop {
        let m: Mat = (0..n)
            .map(|_| (0..n).map(|_| Fq::random(ctx, &mut rng)).collect())
            .collect();
        if !linalg::det(&m).is_zero() {
            return m;
        }
    }
}

fn poly_in(ring: &qline::mpoly::Ring, terms: &[(Vec<u16>, u64)]) -> MPoly {
    MPoly::from_terms(
        ring,
        terms
            .iter()
            .map(|(e, c)| (Mono::from_exps(e), Fq::from_u64(ring.ctx(), *c))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extension_field_axioms(a in coeffs(3), b in coeffs(3), c in coeffs(3)) {
        let f = mk_extension(&base(), 3);
        let (a, b, c) = (elem(&f, &a), elem(&f, &b), elem(&f, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!((&a * &b).frobenius(), &a.frobenius() * &b.frobenius());
        prop_assert_eq!((&a + &b).frobenius(), &a.frobenius() + &b.frobenius());
        prop_assert_eq!(a.frobenius().frobenius().frobenius(), a);
    }

    #[test]
    fn embedding_is_a_ring_map(a in coeffs(2), b in coeffs(2)) {
        let f2 = mk_extension(&base(), 2);
        let f6 = mk_extension(&base(), 6);
        let (a, b) = (elem(&f2, &a), elem(&f2, &b));
        let e = |x: &Fq| embed_root(x, &f6).unwrap();
        prop_assert_eq!(e(&(&a * &b)), &e(&a) * &e(&b));
        prop_assert_eq!(e(&(&a + &b)), &e(&a) + &e(&b));
        prop_assert_eq!(e(&a).frobenius(), e(&a.frobenius()));
    }

    #[test]
    fn polynomial_text_reparses(terms in prop::collection::vec((prop::collection::vec(0u16..4, 4), 0..P), 1..8)) {
        let ring = PolyRing::space(&base());
        let f = poly_in(&ring, &terms);
        prop_assert_eq!(parse_poly(&f.to_string(), &ring).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn resultant_is_multiplicative(
        f in prop::collection::vec((0u16..3, 0u16..2, 1..P), 1..4),
        g in prop::collection::vec((0u16..3, 0u16..2, 1..P), 1..4),
        h in prop::collection::vec((0u16..3, 0u16..2, 1..P), 1..4),
    ) {
        let ring = PolyRing::new(&base(), &["x", "y"]);
        let mk = |t: &[(u16, u16, u64)]| {
            let lead = poly_in(&ring, &[(vec![3, 0], 1)]);
            &lead + &poly_in(&ring, &t.iter().map(|(a, b, c)| (vec![*a, *b], *c)).collect::<Vec<_>>())
        };
        let (f, g, h) = (mk(&f), mk(&g), mk(&h));
        let lhs = resultant(&(&f * &g), &h, 0).unwrap();
        let rhs = &resultant(&f, &h, 0).unwrap() * &resultant(&g, &h, 0).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(resultant(&(&f * &h), &(&g * &h), 0).unwrap().is_zero());
    }

    #[test]
    fn cubic_discriminant_is_an_invariant(cs in prop::collection::vec(0..P, 10), seed in 0u64..1000) {
        let ctx = base();
        let ring = PolyRing::new(&ctx, &["x", "y", "z"]);
        let monos: Vec<Vec<u16>> = (0..=3u16)
            .flat_map(|i| (0..=3 - i).map(move |j| vec![i, j, 3 - i - j]))
            .collect();
        let c = poly_in(&ring, &monos.into_iter().zip(cs).collect::<Vec<_>>());
        prop_assume!(!c.is_zero() && c.total_degree() == 3);
        let m = random_matrix(&ctx, 3, seed);
        let moved = c.substitute_linear(&m).unwrap();
        let d = cubic_discriminant(&c).unwrap();
        let scale = linalg::det(&m).pow(12);
        prop_assert_eq!(cubic_discriminant(&moved).unwrap(), &d * &scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn composed_surfaces_are_second_kind(seed in 0u64..1_000_000) {
        let ctx = base();
        let mut rng = seeded_rng(seed, 1);
        let s = make_s4_gamma(&Fq::random(&ctx, &mut rng));
        let x = segre_compose(&s, &random_pencil_planes(&ctx, &mut rng)).unwrap();
        prop_assert!(is_second_kind(&x));
    }

    #[test]
    fn discriminant_valuations_sum_to_24(seed in 0u64..1_000_000) {
        let ctx = base();
        let mut rng = seeded_rng(seed, 2);
        let x = make_z(&ZParams {
            q: random_binary_form(&ctx, 2, &mut rng),
            g: random_binary_form(&ctx, 4, &mut rng),
        })
        .unwrap();
        prop_assume!(x.smooth_along_line());
        let t = singular_fiber_table(&x).unwrap();
        prop_assert_eq!(t.iter().map(|r| r.v_delta).sum::<usize>(), 24);
        prop_assert!(t.iter().all(|r| r.table_consistent()));
    }

    #[test]
    fn analysis_is_coordinate_free(seed in 0u64..1_000_000) {
        let ctx = base();
        let ring = PolyRing::space(&ctx);
        let x = make_z_paper_instance(&ctx).unwrap();
        let m = random_matrix(&ctx, 4, seed);
        let g = x.f().substitute_linear(&m).unwrap();
        let l1 = MPoly::linear(&ring, &m[2]);
        let l2 = MPoly::linear(&ring, &m[3]);
        let opts = AnalysisOptions::default();
        let a = analyze(&g, &l1, &l2, &opts).unwrap();
        let b = analyze(x.f(), &parse_poly("x3", &ring).unwrap(), &parse_poly("x4", &ring).unwrap(), &opts).unwrap();
        prop_assert_eq!(a.fiber_types(), b.fiber_types());
        prop_assert_eq!(a.lines.as_ref().map(|l| l.count), Some(18));
        prop_assert_eq!(a.second_kind, b.second_kind);
        prop_assert_eq!(
            a.ramification.as_ref().map(|p| p.rtype),
            b.ramification.as_ref().map(|p| p.rtype)
        );
        prop_assert_eq!(a.flex.as_ref().map(|f| f.reduced_degree), Some(8));
        for group in &a.lines.as_ref().unwrap().groups {
            for l in &group.2 {
                let moved = l.transform_forms(a.x.transform());
                let [p, q] = moved.points();
                for lam in 0..5u64 {
                    let lam = Fq::from_u64(p[0].ctx(), lam);
                    let pt: Vec<Fq> = p.iter().zip(&q).map(|(u, v)| u + &(&lam * v)).collect();
                    prop_assert!(g.embed(p[0].ctx()).unwrap().eval(&pt).is_zero());
                }
            }
        }
    }
}
