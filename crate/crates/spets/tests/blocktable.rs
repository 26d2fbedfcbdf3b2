mod common;

use std::sync::LazyLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use spets::arith::{CycloNum, LaurentX, RatFun};
use spets::blocktable::{degree_square_sum_at_one, evaluate_dim, linear_restriction_degree, BlockContext, PartialTable};
use spets::group::{load_group, ReflectionGroup};
use spets::unipotent::{principal_series, unipotent_value, SubCoset};

static G552: LazyLock<ReflectionGroup> = LazyLock::new(|| load_group("G552", None, 0).unwrap());
static MU3: LazyLock<ReflectionGroup> = LazyLock::new(|| load_group("mu3", None, 0).unwrap());
static PENTAGON: LazyLock<(BlockContext<'static>, PartialTable)> = LazyLock::new(|| {
    let ctx = BlockContext::new(&G552, 11, 1).unwrap();
    let t = ctx.table().unwrap();
    (ctx, t)
});

#[test]
fn mu3_matches_the_affine_group_at_one() {
    let ctx = BlockContext::new(&MU3, 7, 1).unwrap();
    let t = ctx.table().unwrap();
    assert_eq!(t.rows.len(), 5);
    let cs: Vec<u64> = t.cols.iter().map(|&c| ctx.torus().coords(c)[0]).collect();
    let w = ctx.torus().embedding().zeta(3).unwrap();
    let want = common::affine_translation_rows(7, w, &cs, 0);
    let mut got: Vec<Vec<CycloNum>> = t.entries.iter().map(|r| r.iter().map(|v| v.at_one()).collect()).collect();
    got.sort_by_key(|r| format!("{r:?}"));
    assert_eq!(got, want);
    assert!(ctx.specialise_x1_check(&t).unwrap().mismatches.is_empty());
}

#[test]
fn mu3_orthogonality_is_exact() {
    let ctx = BlockContext::new(&MU3, 7, 1).unwrap();
    let t = ctx.table().unwrap();
    for o in ctx.orthogonality_all(&t).unwrap() {
        assert!(o.pass && o.forms_agree, "{o:?}");
        if o.t != o.t2 {
            assert_eq!(o.value, "0");
        }
    }
}

#[test]
fn pentagon_steinberg_law_everywhere() {
    let (ctx, _) = &*PENTAGON;
    let st = common::steinberg_label(ctx);
    let torus = ctx.torus();
    for c in common::all_points(2, 11) {
        let n = common::reflections_fixing(torus, &c);
        assert_eq!(ctx.value(&st, torus.index(&c)).unwrap(), LaurentX::x_pow(n as i64), "{c:?}");
    }
}

#[test]
fn pentagon_degrees_and_dimension() {
    let (ctx, t) = &*PENTAGON;
    assert_eq!(degree_square_sum_at_one(t), CycloNum::from_int(121 * 10));
    let dim = ctx.dim_b0().unwrap();
    let v = evaluate_dim(&dim, 12).unwrap();
    assert_eq!(v.p_valuation(11), Some(2));
    let sq = t.degrees().iter().fold(LaurentX::zero(), |acc, d| &acc + &(d * d));
    assert_eq!(sq, dim);
}

#[test]
fn pentagon_agrees_with_unipotent_values() {
    let (ctx, t) = &*PENTAGON;
    let g = ctx.group();
    let ps = principal_series(g, ctx.registry()).unwrap();
    let whole = g.whole().unwrap();
    for (i, row) in t.rows.iter().enumerate().filter(|(_, r)| r.theta == 0) {
        let k = g.char_table().find(&whole.table.values[row.phi]).unwrap();
        for (j, &p) in t.cols.iter().enumerate() {
            let u = unipotent_value(g, &ps[k], &SubCoset::split(ctx.torus().stabiliser_of(p))).unwrap();
            assert_eq!(u, RatFun::from(t.entries[i][j].clone()));
        }
    }
}

#[test]
fn pentagon_checks_pass() {
    let (ctx, t) = &*PENTAGON;
    assert!(ctx.frobenius_check(t, 12).unwrap().passed());
    assert!(ctx.restriction_check(t, 12).unwrap().passed());
    assert!(ctx.specialise_x1_check(t).unwrap().mismatches.is_empty());
}

#[test]
fn a1_at_level_two() {
    let g = load_group("A1", None, 0).unwrap();
    let ctx = BlockContext::new(&g, 3, 2).unwrap();
    let t = ctx.table().unwrap();
    assert_eq!(degree_square_sum_at_one(&t), CycloNum::from_int(18));
    assert!(ctx.frobenius_check(&t, 10).unwrap().passed());
    assert!(ctx.orthogonality_all(&t).unwrap().iter().all(|o| o.pass));
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn values_are_w_invariant(w in 0usize..10, t in 0u32..121, row in 0usize..31) {
        let (ctx, table) = &*PENTAGON;
        let l = &table.rows[row % table.rows.len()];
        let moved = ctx.torus().act(w, t);
        prop_assert_eq!(ctx.value(l, t).unwrap(), ctx.value(l, moved).unwrap());
    }

    #[test]
    fn table_entries_are_column_values(t in 0u32..121, row in 0usize..31) {
        let (ctx, table) = &*PENTAGON;
        let i = row % table.rows.len();
        let j = table.column_of(ctx.torus(), t);
        prop_assert_eq!(&ctx.value(&table.rows[i], t).unwrap(), &table.entries[i][j]);
    }

    #[test]
    fn linear_characters_reduce_to_restricted_degrees(t in 0u32..121) {
        let (ctx, _) = &*PENTAGON;
        let g = ctx.group();
        let whole = g.whole().unwrap();
        let labels = ctx.labels().unwrap();
        for (phi, row) in whole.table.values.iter().enumerate() {
            if !row[0].is_one() {
                continue;
            }
            let l = labels.iter().find(|l| l.theta == 0 && l.phi == phi).unwrap();
            prop_assert_eq!(ctx.value(l, t).unwrap(), linear_restriction_degree(ctx, row, t).unwrap());
        }
    }

    #[test]
    fn block_dimension_has_full_valuation(a in 1u32..=3, ell_ix in 0usize..3) {
        let ell = [5u64, 7, 11][ell_ix];
        let g = load_group("A1", None, 0).unwrap();
        let ctx = BlockContext::new(&g, ell, a).unwrap();
        let q = ell.pow(a) as i64 + 1;
        let v = evaluate_dim(&ctx.dim_b0().unwrap(), q).unwrap();
        prop_assert_eq!(v.p_valuation(ell as u32), Some(a));
        prop_assert_eq!(ctx.dim_b0().unwrap().at_one(), CycloNum::from_int((ell.pow(a) * 2) as i64));
    }

    #[test]
    fn mu3_tables_round_trip(a in 1u32..=2) {
        let ctx = BlockContext::new(&MU3, 7, a).unwrap();
        let t = ctx.table().unwrap();
        prop_assert_eq!(PartialTable::from_csv(&t.to_csv()).unwrap(), t.clone());
        prop_assert_eq!(PartialTable::from_json(&t.to_json()).unwrap(), t);
    }
}

#[test]
fn rational_q_evaluation_of_steinberg() {
    let (ctx, _) = &*PENTAGON;
    let st = common::steinberg_label(ctx);
    let v = ctx.value(&st, 0).unwrap().evaluate(&BigRational::from_integer(BigInt::from(12))).unwrap();
    assert_eq!(v, CycloNum::from_int(12i64.pow(5)));
}
