use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use wdrep::cli::gen::{random_irrep, scramble_conjugate, scramble_unipotent};
use wdrep::cli::{gen_pure, GenParams, SplitMix64};
use wdrep::matrix::PolyE;
use wdrep::structure::{decompose, isomorphic};
use wdrep::{wire, FieldCtx, InducedIrrep, MatrixE, Scalar, WDRep};

const FIELDS: [(u64, u64); 6] = [(1, 2), (3, 2), (4, 3), (5, 2), (8, 3), (8, 5)];

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

fn field() -> impl Strategy<Value = FieldCtx> {
    (0..FIELDS.len()).prop_map(|i| FieldCtx::new(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn scalar_in(ctx: FieldCtx) -> impl Strategy<Value = Scalar> {
    let deg = ctx.degree();
    prop::collection::vec((-6i64..=6, 1i64..=4), 2 * deg).prop_map(move |c| {
        let r: Vec<BigRational> =
            c.iter().map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d))).collect();
        ctx.from_parts(&r[..deg], &r[deg..]).unwrap()
    })
}

fn field_and_scalars(k: usize) -> impl Strategy<Value = (FieldCtx, Vec<Scalar>)> {
    field().prop_flat_map(move |ctx| (Just(ctx.clone()), prop::collection::vec(scalar_in(ctx), k)))
}

fn field_and_matrix(d: usize) -> impl Strategy<Value = (FieldCtx, MatrixE)> {
    field().prop_flat_map(move |ctx| {
        let c = ctx.clone();
        prop::collection::vec(scalar_in(ctx), d * d).prop_map(move |e| (c.clone(), MatrixE::new(&c, d, d, e).unwrap()))
    })
}

/// Generator parameters over valid `(q, N = n)` combinations.
fn gen_params() -> impl Strategy<Value = GenParams> {
    (any::<u64>(), 0..FIELDS.len(), -3i64..=3, any::<bool>(), any::<bool>()).prop_map(|(seed, i, w, conj, uni)| {
        let (order, q) = FIELDS[i];
        GenParams {
            seed,
            q,
            order,
            n: order,
            w,
            max_dim: 6,
            conjugate: conj,
            unipotent_frobenius: uni,
            ..GenParams::default()
        }
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms((ctx, xs) in field_and_scalars(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(&(a + b) * c, &(a * c) + &(b * c));
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        if !a.is_zero() {
            prop_assert!((a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((a * b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(&ctx.s() * &ctx.s(), ctx.int(ctx.q() as i64));
    }

    #[test]
    fn weil_weight_of_class_elements(i in 0..FIELDS.len(), j in 0i64..16, k in -6i64..=6) {
        let ctx = FieldCtx::new(FIELDS[i].0, FIELDS[i].1).unwrap();
        let sign = if j % 2 == 0 { ctx.one() } else { ctx.int(-1) };
        let x = &(&ctx.zeta(j / 2) * &sign) * &ctx.s_pow(k);
        prop_assert_eq!(x.weil_weight(), Some(k));
        // 7 is not a power of q for any field used here
        prop_assert_eq!((&x * &ctx.int(7)).weil_weight(), None);
    }

    #[test]
    fn inverse_and_determinant((ctx, m) in field_and_matrix(3)) {
        let det = m.det();
        match m.inverse() {
            Ok(inv) => {
                prop_assert!(!det.is_zero());
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert_eq!(&det * &inv.det(), ctx.one());
            }
            Err(_) => prop_assert!(det.is_zero()),
        }
        prop_assert_eq!(m.rank() + m.kernel().dim(), 3);
        for v in m.kernel().basis() {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn cayley_hamilton((ctx, m) in field_and_matrix(3)) {
        let p: PolyE = m.charpoly().unwrap();
        let mut acc = MatrixE::zeros(&ctx, 3, 3);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&m).add(&MatrixE::identity(&ctx, 3).scale(c));
        }
        prop_assert!(acc.is_zero());
        prop_assert_eq!(p.coeffs()[0].clone(), if m.rows() % 2 == 0 { m.det() } else { -&m.det() });
    }

    #[test]
    fn wire_round_trip(p in gen_params()) {
        let rep = gen_pure(&p).unwrap().rep;
        let text = wire::to_text(&wire::envelope(wire::rep_to_json(&rep)));
        prop_assert_eq!(wire::rep_from_json(&wire::parse_document(&text).unwrap()).unwrap(), rep.clone());
        let cs = rep.constituents().unwrap();
        prop_assert_eq!(wire::constituents_from_json(&wire::constituents_to_json(&cs)).unwrap(), cs);
        let pur = rep.purity().unwrap();
        prop_assert_eq!(wire::purity_from_json(rep.ctx(), &wire::purity_to_json(&pur)).unwrap(), pur);
        let panel = rep.trace_panel(2).unwrap();
        prop_assert_eq!(wire::panel_from_json(rep.ctx(), &wire::panel_to_json(2, &panel)).unwrap(), (2, panel));
    }

    #[test]
    fn generator_contract(p in gen_params()) {
        let g = gen_pure(&p).unwrap();
        prop_assert!(g.rep.validate().is_empty());
        prop_assert!(g.rep.dim() <= p.max_dim);
        prop_assert_eq!(g.rep.purity().unwrap().weight, Some(p.w));
        prop_assert_eq!(g.rep.constituents().unwrap().dim(), g.rep.dim());
        prop_assert_eq!(gen_pure(&p).unwrap().rep, g.rep);
    }

    #[test]
    fn twist_shifts_weight(p in gen_params(), m in -4i64..=4) {
        let rep = gen_pure(&p).unwrap().rep;
        prop_assert_eq!(rep.twist_psi(m).purity().unwrap().weight, Some(p.w + m));
        prop_assert_eq!(rep.twist_psi(m).normalized_trace_panel(3).unwrap(), rep.normalized_trace_panel(3).unwrap());
        prop_assert_eq!(rep.twist_chi(1), rep.twist_psi(-2));
    }

    #[test]
    fn direct_sum_purity(p in gen_params(), dw in -2i64..=2, seed in any::<u64>()) {
        let a = gen_pure(&GenParams { max_dim: 4, ..p.clone() }).unwrap().rep;
        let b = gen_pure(&GenParams { seed, w: p.w + dw, max_dim: 4, ..p.clone() }).unwrap().rep;
        let sum = a.direct_sum(&b).unwrap();
        let expect = if dw == 0 { Some(p.w) } else { None };
        prop_assert_eq!(sum.purity().unwrap().weight, expect);
        let joint = a.constituents().unwrap().union(&b.constituents().unwrap()).unwrap();
        prop_assert_eq!(sum.constituents().unwrap(), joint);
    }

    #[test]
    fn irrep_round_trip(i in 0..FIELDS.len(), seed in any::<u64>(), u in -3i64..=3, m in -3i64..=3) {
        let (order, q) = FIELDS[i];
        let ctx = FieldCtx::new(order, q).unwrap();
        let ir: InducedIrrep = random_irrep(&ctx, order, u, 4, &mut SplitMix64::new(seed));
        let rep = ir.to_rep();
        prop_assert!(rep.validate().is_empty());
        let cs = rep.constituents().unwrap();
        prop_assert_eq!(cs.iter().collect::<Vec<_>>(), vec![(&ir, 1)]);
        prop_assert_eq!(ir.weight(), Some(u));
        prop_assert_eq!(ir.twist_psi(m).weight(), Some(u + m));
        prop_assert_eq!(rep.purity().unwrap().weight, Some(u));
    }

    #[test]
    fn scrambles_preserve_traces_and_constituents(p in gen_params(), seed in any::<u64>()) {
        let rep = gen_pure(&GenParams { conjugate: false, unipotent_frobenius: false, ..p }).unwrap().rep;
        let mut rng = SplitMix64::new(seed);
        let scrambled = scramble_conjugate(&scramble_unipotent(&rep, &mut rng), &mut rng);
        prop_assert!(scrambled.validate().is_empty());
        let b = rep.dim() as u64;
        prop_assert_eq!(scrambled.trace_panel(b).unwrap(), rep.trace_panel(b).unwrap());
        prop_assert_eq!(scrambled.constituents().unwrap(), rep.constituents().unwrap());
        prop_assert_eq!(scrambled.purity().unwrap(), rep.purity().unwrap());
        prop_assert!(isomorphic(&scrambled.frss().unwrap(), &rep).unwrap().is_some());
    }

    #[test]
    fn decomposition_basis_realizes_blocks(p in gen_params()) {
        let rep = gen_pure(&p).unwrap().rep.frss().unwrap();
        let dec = decompose(&rep, false).unwrap();
        prop_assert_eq!(rep.conjugate(&dec.basis_inv, &dec.basis), dec.model());
        let ts: Vec<usize> = dec.blocks.iter().map(|b| b.t).collect();
        prop_assert!(ts.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sp_weight_law(i in 0..FIELDS.len(), seed in any::<u64>(), u in -2i64..=2, t in 1usize..=4) {
        let (order, q) = FIELDS[i];
        let ctx = FieldCtx::new(order, q).unwrap();
        let base = random_irrep(&ctx, order, u, 2, &mut SplitMix64::new(seed)).to_rep();
        let sp = WDRep::sp(t, &base).unwrap();
        prop_assert!(sp.validate().is_empty());
        prop_assert_eq!(sp.purity().unwrap().weight, Some(u - (t as i64 - 1)));
    }
}
