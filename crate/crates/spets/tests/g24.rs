mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use spets::arith::expr::parse_in;
use spets::arith::CycloNum;
use spets::unipotent::g24::{self, G24Data};

fn data() -> G24Data {
    g24::load(g24::read_bundle(None).unwrap(), 0).unwrap()
}

fn count_at(src: &str, l: i64) -> BigRational {
    let p = parse_in(src, 'l', &Default::default()).unwrap();
    p.evaluate(&BigRational::from_integer(BigInt::from(l))).unwrap().as_rational().unwrap()
}

#[test]
fn table_differs_from_published_in_one_entry() {
    let d = data();
    let t = g24::g24_table(&d).unwrap();
    assert_eq!((t.rows.len(), t.cols.len()), (16, 11));
    let diffs = g24::compare_published(&d, &t);
    assert_eq!(diffs.len(), 1, "{diffs:?}");
    assert_eq!((diffs[0].row.as_str(), diffs[0].col.as_str()), ("phi_{7,6}", "B2(q)Phi1"));
    assert_eq!(diffs[0].computed, "q^4 + 2*q^3 + 2*q^2 + 2*q");
}

#[test]
fn steinberg_and_trivial_rows() {
    let d = data();
    let t = g24::g24_table(&d).unwrap();
    let row = |name: &str| t.rows.iter().position(|r| r == name).unwrap();
    let show = |i: usize| t.values[i].iter().map(|p| spets::arith::format::format_laurent(p, "q")).collect::<Vec<_>>();
    assert!(show(row("phi_{1,0}")).iter().all(|v| v == "1"));
    assert_eq!(show(row("phi_{1,21}")), ["q^21", "q^9", "q^6", "q^4", "q^3", "q^2", "-q^2", "q", "-q", "1", "-1"]);
    let phi62 = show(row("phi_{6,2}"));
    assert_eq!(phi62[9], "6");
}

#[test]
fn numeric_mode_is_the_symbolic_table_evaluated() {
    let d = data();
    let t = g24::g24_table(&d).unwrap();
    let q = BigRational::from_integer(BigInt::from(5));
    let num = g24::g24_table_numeric(&d, &q).unwrap();
    for (a, b) in t.values.iter().zip(&num) {
        for (p, v) in a.iter().zip(b) {
            assert_eq!(&p.evaluate(&q).unwrap(), v);
        }
    }
}

#[test]
fn frobenius_holds_for_small_q() {
    let d = data();
    for (q, l) in [(5, 1), (13, 1), (17, 4)] {
        let f = g24::g24_frobenius(&d, q).unwrap();
        assert_eq!(f.l, l);
        assert!(f.passed(), "q = {q}: {:?}", f.rows.iter().filter(|r| !r.pass).collect::<Vec<_>>());
    }
}

#[test]
fn rejects_q_congruent_to_three() {
    assert!(g24::g24_frobenius(&data(), 7).is_err());
}

/// Split classes against W-orbits on the 2-torus (ℤ/4l)³: the orbit count
/// with stabiliser of order |W_L| is the class count at l.
#[test]
fn split_class_counts_match_two_adic_orbits() {
    let bundle = g24::read_bundle(None).unwrap();
    let split = [("G", 336), ("B3", 48), ("A3", 24), ("B2P1", 8), ("A2P1", 6), ("A1A1P1", 4), ("A1P1P1", 2), ("P1P1P1", 1)];
    for (k, l) in [(2u32, 1i64), (3, 2), (4, 4)] {
        let hist = common::g24_two_adic_orbits(k);
        for (label, order) in split {
            let c = bundle.classes.iter().find(|c| c.label == label).unwrap();
            let want = BigRational::from_integer(BigInt::from(*hist.get(&order).unwrap_or(&0)));
            assert_eq!(count_at(&c.count, l), want, "{label} at l = {l}");
        }
    }
}

#[test]
fn printed_count_disagrees_with_the_orbits() {
    let bundle = g24::read_bundle(None).unwrap();
    let c = bundle.classes.iter().find(|c| c.label == "A1P1P1").unwrap();
    let printed = c.printed_count.as_deref().unwrap();
    let hist = common::g24_two_adic_orbits(4);
    assert_ne!(count_at(printed, 4), BigRational::from_integer(BigInt::from(hist[&2])));
}

#[test]
fn shipped_schur_data_is_the_degree_quotient() {
    let d = data();
    let fresh = g24::schur_data(&d).unwrap();
    let shipped = spets::hecke::SchurData::from_json(spets::hecke::SHIPPED[0].1).unwrap();
    assert_eq!(fresh.values().unwrap(), shipped.values().unwrap());
    shipped.validate(&d.group.whole().unwrap()).unwrap();
    // Σ_φ φ(1)/𝔣_φ = τ(1) = 1
    let total = shipped
        .values()
        .unwrap()
        .iter()
        .enumerate()
        .fold(spets::arith::RatFun::zero(), |acc, (i, s)| {
            let deg = spets::arith::RatFun::from(spets::arith::LaurentX::constant(CycloNum::from_int(d.group.char_table().degree(i))));
            &acc + &(&deg * &s.inv().unwrap())
        });
    assert_eq!(total, spets::arith::RatFun::one());
}
