//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 5 is expected to fail on a single table entry whose printed
//! value lacks a factor q; the line still reads FAIL. The process exits
//! non-zero only when the set of failing criteria differs from that.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use spets::arith::expr::parse;
use spets::arith::laurent::x_pow_minus_one_quotient;
use spets::arith::{CycloNum, LaurentX, RatFun};
use spets::blocktable::{evaluate_dim, BlockContext};
use spets::group::{default_catalog, load_group, Family, ReflectionGroup};
use spets::hecke::{trivial_index, SchurRegistry};
use spets::torus::{os_fit, Torus};
use spets::unipotent::almost::{almost_numerator, almost_scalar, mobius, parabolic_subgroups, restricted_fake_degrees, signed_counts};
use spets::unipotent::{fake_degrees, g24, principal_series, unipotent_value, SubCoset};

const EXPECTED_FAILURES: &[usize] = &[5];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn q_rat(q: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(q))
}

fn c1_g333_steinberg() -> Outcome {
    let start = Instant::now();
    let g = load_group("G333", None, 0).map_err(|e| e.to_string())?;
    let ctx = BlockContext::new(&g, 7, 1).map_err(|e| e.to_string())?;
    let st = common::steinberg_label(&ctx);
    let q = 8;
    let mut sum = CycloNum::zero();
    for t in 0..ctx.torus().size() as u32 {
        sum = &sum + &ctx.value(&st, t).map_err(|e| e.to_string())?.evaluate(&q_rat(q)).map_err(|e| e.to_string())?;
    }
    let want = common::g_ee3_steinberg_formula(3, 7, q);
    let brute = common::steinberg_sum(ctx.torus(), q);
    ensure(sum == CycloNum::from_rational(BigRational::from_integer(want.clone())), || format!("sum {sum} vs formula {want}"))?;
    ensure(brute == want, || format!("enumeration oracle {brute} vs formula {want}"))?;
    let v = sum.p_valuation(7).ok_or("sum is not a 7-integral rational")?;
    ensure(v >= 3, || format!("nu_7 = {v}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!("|T|<St,1_T> = {want}, nu_7 = {v}, {:.2?}", start.elapsed()))
}

fn c2_dihedral_displays() -> Outcome {
    let start = Instant::now();
    let g = load_group("G552", None, 0).map_err(|e| e.to_string())?;
    let e = 5i64;
    let ps = parabolic_subgroups(&g);
    let mu = mobius(&ps);
    let lines: Vec<usize> = (0..ps.len()).filter(|&i| ps[i].elements.len() == 2).collect();
    ensure(lines.len() == e as usize && ps.len() == e as usize + 2, || "unexpected parabolic poset".into())?;
    let top = ps.len() - 1;
    let fakes = fake_degrees(&g).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (row, f) in g.char_table().values.iter().zip(&fakes) {
        let family = if *f == LaurentX::one() {
            ("(q-1)^2".to_string(), "0".to_string(), "0".to_string())
        } else if *f == LaurentX::x_pow(e) {
            (
                format!("q^{e} + (q-2)({e}(q-1)+q)"),
                format!("q^{e} + {e}q^2 - 3*{e}q + 2*{e} - 1"),
                format!("q^{e} + ({e}-1)q^2 - (3*{e}-2)q + 2*{e} - 2"),
            )
        } else {
            let i = f.low().ok_or("zero fake degree")?;
            ensure(*f == &LaurentX::x_pow(i) + &LaurentX::x_pow(e - i), || format!("fake degree {f}"))?;
            (
                format!("q^{i} + q^{} + (q-2)({e}(q-1)+2q)", e - i),
                format!("q^{i} + q^{} + {e}q^2 - 3*{e}q + 2*{e} - 2", e - i),
                format!("q^{i} + q^{} + ({e}-1)q^2 - (3*{e}-2)q + 2*{e} - 3", e - i),
            )
        };
        let restricted = restricted_fake_degrees(&g, &ps, row).map_err(|e| e.to_string())?;
        // δ: trivial parabolic false for ψ ≠ 1, the whole group always true
        let mut patterns = vec![(vec![true; ps.len()], family.0.clone())];
        let mut all_lines = vec![true; ps.len()];
        all_lines[0] = false;
        patterns.push((all_lines.clone(), family.1.clone()));
        for &k in &lines {
            let mut p = all_lines.clone();
            p[k] = false;
            patterns.push((p, family.2.clone()));
        }
        for (delta, display) in patterns {
            ensure(delta[top], || "whole group must be in the pattern".into())?;
            let got = almost_numerator(&restricted, &signed_counts(&ps, &mu, &delta));
            let want = parse(&display, &Default::default()).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("display {display}: computed {got}"))?;
            checked += 1;
        }
    }
    let torus = Torus::new(&g, 11, 1).map_err(|e| e.to_string())?;
    let sign = g
        .char_table()
        .values
        .iter()
        .zip(&fakes)
        .find(|(_, f)| **f == LaurentX::x_pow(e))
        .map(|(r, _)| r.clone())
        .ok_or("no character with fake degree x^5")?;
    let s = almost_scalar(&torus, &sign, 0, &q_rat(12)).map_err(|e| e.to_string())?;
    let oracle = common::sign_scalar_brute_force(&torus, 12);
    ensure(s.value == CycloNum::from_int(2062) && s.integral, || format!("scalar {}", s.value))?;
    ensure(CycloNum::from_rational(oracle.clone()) == s.value, || format!("oracle {oracle}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("{checked} display identities, <R_phi,1_T> = 2062 = 121-point oracle, {:.2?}", start.elapsed()))
}

fn c3_mu3() -> Outcome {
    let start = Instant::now();
    let g = load_group("mu3", None, 0).map_err(|e| e.to_string())?;
    let ctx = BlockContext::new(&g, 7, 1).map_err(|e| e.to_string())?;
    let t = ctx.table().map_err(|e| e.to_string())?;
    let orth = ctx.orthogonality_all(&t).map_err(|e| e.to_string())?;
    for o in &orth {
        ensure(o.forms_agree, || format!("forms disagree at {} {}", o.t, o.t2))?;
        if o.t == o.t2 {
            ensure(o.pass, || format!("diagonal {}: {} vs dim B0 = {}", o.t, o.value, o.expected))?;
        } else {
            ensure(o.value == "0", || format!("{} {}: {}", o.t, o.t2, o.value))?;
        }
    }
    let x1 = ctx.specialise_x1_check(&t).map_err(|e| e.to_string())?;
    ensure(x1.mismatches.is_empty(), || format!("{} x=1 mismatches", x1.mismatches.len()))?;
    let cs: Vec<u64> = t.cols.iter().map(|&c| ctx.torus().coords(c)[0]).collect();
    let w = ctx.torus().embedding().zeta(3).ok_or("no cube root of unity mod 7")?;
    let want = common::affine_translation_rows(7, w, &cs, 0);
    let mut got: Vec<Vec<CycloNum>> = t.entries.iter().map(|r| r.iter().map(|v| v.at_one()).collect()).collect();
    got.sort_by_key(|r| format!("{r:?}"));
    ensure(got == want, || "x=1 table differs from the order-21 group".into())?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("{} pairs, {} x=1 values, order-21 table matched, {:.2?}", orth.len(), x1.checked, start.elapsed()))
}

fn steinberg_everywhere(g: &ReflectionGroup, ell: u64) -> Result<usize, String> {
    let ctx = BlockContext::new(g, ell, 1).map_err(|e| e.to_string())?;
    let st = common::steinberg_label(&ctx);
    let torus = ctx.torus();
    let pts = common::all_points(torus.rank(), torus.modulus());
    for c in &pts {
        let n = common::reflections_fixing(torus, c) as i64;
        let v = ctx.value(&st, torus.index(c)).map_err(|e| e.to_string())?;
        ensure(v == LaurentX::x_pow(n), || format!("{} at {c:?}: {v} vs x^{n}", g.name()))?;
    }
    Ok(pts.len())
}

fn c4_steinberg_law() -> Outcome {
    let mut n = 0;
    for (name, ell) in [("G333", 7), ("G552", 11), ("G332", 7)] {
        let g = load_group(name, None, 0).map_err(|e| e.to_string())?;
        n += steinberg_everywhere(&g, ell)?;
    }
    Ok(format!("x^N(W_t) at all {n} points of G(3,3,3), G(5,5,2), G(3,3,2)"))
}

fn c5_g24() -> Outcome {
    let start = Instant::now();
    let d = g24::load(g24::read_bundle(None).map_err(|e| e.to_string())?, 0).map_err(|e| e.to_string())?;
    let table = g24::g24_table(&d).map_err(|e| e.to_string())?;
    let mut frob = Vec::new();
    for q in [5, 13, 17] {
        let f = g24::g24_frobenius(&d, q).map_err(|e| e.to_string())?;
        ensure(f.passed(), || format!("Frobenius fails at q = {q}"))?;
        frob.push(format!("q={q} (l={}, nu_2 >= {})", f.l, f.required));
    }
    within(start, Duration::from_secs(30))?;
    let diffs = g24::compare_published(&d, &table);
    let cells = table.rows.len() * table.cols.len();
    let frob = frob.join(", ");
    ensure(diffs.is_empty(), || {
        let w: Vec<String> =
            diffs.iter().map(|x| format!("{} / {}: computed {}, printed {}", x.row, x.col, x.computed, x.published)).collect();
        format!("{} of {cells} entries differ: {}; Frobenius passes for {frob}, {:.2?}", diffs.len(), w.join("; "), start.elapsed())
    })?;
    Ok(format!("{cells} entries identical; Frobenius passes for {frob}, {:.2?}", start.elapsed()))
}

fn c6_property_suites() -> Outcome {
    let configs: &[(&str, &[(u64, u32)])] = &[
        ("A1", &[(3, 1), (3, 2)]),
        ("A2", &[(5, 1), (5, 2)]),
        ("mu3", &[(7, 1), (7, 2)]),
        ("G(3,3,2)", &[(7, 1), (7, 2)]),
        ("G(5,5,2)", &[(11, 1)]),
        ("G(3,3,3)", &[(7, 1)]),
        ("G24", &[(11, 1)]),
    ];
    let catalog = default_catalog();
    let names: Vec<&str> = catalog.groups.iter().map(|e| e.name.as_str()).collect();
    ensure(names.len() == configs.len() && configs.iter().all(|(n, _)| names.contains(n)), || format!("catalog {names:?}"))?;
    let mut checks = 0;
    for (name, pairs) in configs {
        let g = load_group(name, Some(&catalog), 0).map_err(|e| e.to_string())?;
        checks += fake_degree_identities(&g)?;
        checks += schur_law(&g)?;
        for &(ell, a) in *pairs {
            checks += block_identities(&g, ell, a)?;
        }
        checks += os_fits(&g, pairs[0].0)?;
    }
    Ok(format!("{checks} identities on {} catalog groups", configs.len()))
}

fn fake_degree_identities(g: &ReflectionGroup) -> Result<usize, String> {
    let fakes = fake_degrees(g).map_err(|e| e.to_string())?;
    let table = g.char_table();
    let triv = table.values.iter().position(|r| r.iter().all(|c| c.is_one())).ok_or("no trivial character")?;
    ensure(fakes[triv] == LaurentX::one(), || format!("{}: f_1 = {}", g.name(), fakes[triv]))?;
    let n = g.num_reflections() as i64;
    ensure((0..table.num_irr()).any(|i| table.degree(i) == 1 && fakes[i] == LaurentX::x_pow(n)), || {
        format!("{}: no linear character with fake degree x^{n}", g.name())
    })?;
    let poincare = g.degrees().iter().fold(LaurentX::one(), |acc, &d| &acc * &x_pow_minus_one_quotient(d as i64));
    let sum = fakes
        .iter()
        .enumerate()
        .fold(LaurentX::zero(), |acc, (i, f)| &acc + &(f * &LaurentX::constant(CycloNum::from_int(table.degree(i)))));
    ensure(sum == poincare, || format!("{}: sum phi(1) f_phi = {sum}, Poincare {poincare}", g.name()))?;
    Ok(3)
}

fn schur_law(g: &ReflectionGroup) -> Result<usize, String> {
    let reg = SchurRegistry::new(g);
    let w = g.whole().map_err(|e| e.to_string())?;
    let s = reg.schur(&w).map_err(|e| e.to_string())?;
    for (i, f) in s.iter().enumerate() {
        let want = CycloNum::from_ratio(g.order() as i64, w.table.degree(i));
        let got = f.at_one().map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{}: Schur element {i} is {got} at x=1", g.name()))?;
    }
    ensure(s[trivial_index(&w)] == RatFun::from(g.degrees().iter().fold(LaurentX::one(), |acc, &d| &acc * &x_pow_minus_one_quotient(d as i64))), || {
        format!("{}: trivial Schur element is not the Poincare polynomial", g.name())
    })?;
    Ok(s.len() + 1)
}

fn block_identities(g: &ReflectionGroup, ell: u64, a: u32) -> Result<usize, String> {
    let ctx = BlockContext::new(g, ell, a).map_err(|e| e.to_string())?;
    let labels = ctx.labels().map_err(|e| e.to_string())?;
    let mut sq = CycloNum::zero();
    for l in &labels {
        let d = ctx.degree(l).map_err(|e| e.to_string())?;
        sq = &sq + &d.pow(2).at_one();
    }
    let tw = ctx.torus().size() as i64 * g.order() as i64;
    ensure(sq == CycloNum::from_int(tw), || format!("{} l={ell} a={a}: sum gamma(1)^2 = {sq}, |T||W| = {tw}", g.name()))?;
    let q = ell.pow(a) as i64 + 1;
    let dim = evaluate_dim(&ctx.dim_b0().map_err(|e| e.to_string())?, q).map_err(|e| e.to_string())?;
    let v = dim.p_valuation(ell as u32);
    let an = a * g.rank() as u32;
    ensure(v == Some(an), || format!("{} l={ell} a={a}: nu(dim B0) = {v:?}, want {an}", g.name()))?;
    Ok(2)
}

fn os_fits(g: &ReflectionGroup, ell: u64) -> Result<usize, String> {
    let fit = os_fit(g, ell, 1).map_err(|e| e.to_string())?;
    ensure(fit.all_unique(), || format!("{}: ambiguous Orlik-Solomon fit", g.name()))?;
    let b_of = |order: usize| -> Vec<Vec<i64>> {
        fit.rows.iter().filter(|r| r.order == order).filter_map(|r| r.b().map(|b| b.to_vec())).collect()
    };
    let mut n = fit.rows.len();
    match g.family() {
        Some(Family::Imprimitive { e, n: 3 }) => {
            let e = e as i64;
            ensure(b_of(2).iter().all(|b| *b == vec![1, e]), || format!("{}: A1 rows {:?}", g.name(), b_of(2)))?;
            let mut want = vec![1, 2 * (e - 1), e + 1];
            want.sort();
            ensure(b_of(1) == vec![want.clone()], || format!("{}: trivial row {:?}, want {want:?}", g.name(), b_of(1)))?;
            n += 2;
        }
        Some(Family::Dihedral { m }) => {
            let e = m as i64;
            ensure(b_of(1) == vec![vec![1, e - 1]], || format!("{}: trivial row {:?}", g.name(), b_of(1)))?;
            n += 1;
        }
        _ => {}
    }
    Ok(n)
}

fn c7_cross_formula() -> Outcome {
    let mut n = 0;
    for (name, ell) in [("G333", 7u64), ("G552", 11), ("G332", 7)] {
        let g = load_group(name, None, 0).map_err(|e| e.to_string())?;
        let ctx = BlockContext::new(&g, ell, 1).map_err(|e| e.to_string())?;
        let t = ctx.table().map_err(|e| e.to_string())?;
        let ps = principal_series(&g, ctx.registry()).map_err(|e| e.to_string())?;
        let whole = g.whole().map_err(|e| e.to_string())?;
        for (i, row) in t.rows.iter().enumerate().filter(|(_, r)| r.theta == 0) {
            let k = g.char_table().find(&whole.table.values[row.phi]).ok_or("row not in the table")?;
            for (j, &p) in t.cols.iter().enumerate() {
                let u = unipotent_value(&g, &ps[k], &SubCoset::split(ctx.torus().stabiliser_of(p))).map_err(|e| e.to_string())?;
                ensure(u == RatFun::from(t.entries[i][j].clone()), || format!("{name} {} {}: {u} vs {}", t.row_label(i), t.col_label(j), t.entries[i][j]))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} entries agree on G(3,3,3), G(5,5,2), G(3,3,2)"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("G(3,3,3) Steinberg sum at l=7, q=8", c1_g333_steinberg),
        ("dihedral almost-character displays and 2062", c2_dihedral_displays),
        ("mu3 orthogonality and x=1 specialisation", c3_mu3),
        ("Steinberg law x^N(W_t)", c4_steinberg_law),
        ("G24 table and Frobenius congruences", c5_g24),
        ("property suites on the catalog", c6_property_suites),
        ("block values agree with unipotent values", c7_cross_formula),
    ];
    let mut failed = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {k}. {title}: {detail}"),
            Err(why) => {
                println!("FAIL {k}. {title}: {why}");
                failed.push(k);
            }
        }
    }
    let passed = criteria.len() - failed.len();
    println!("{passed}/{} criteria passed", criteria.len());
    if failed != EXPECTED_FAILURES {
        println!("failing criteria {failed:?} differ from the expected {EXPECTED_FAILURES:?}");
        std::process::exit(1);
    }
}
