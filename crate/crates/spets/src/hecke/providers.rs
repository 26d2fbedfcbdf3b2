//! Schur element providers. A reflection subgroup is split into irreducible
//! components (classes of non-commuting reflections); each component must be
//! cyclic, dihedral, or the whole imprimitive group G(e,e,3).

use super::ak::{ak_schur, multipartitions, orbit_size, shift, wreath_character, MultiPartition};
use super::HeckeError;
use crate::arith::{CycloNum, LaurentX, RatFun};
use crate::group::matrix;
use crate::group::{Family, ReflectionGroup, SubgroupData};

pub fn schur_elements(w: &ReflectionGroup, sub: &SubgroupData) -> Result<Vec<RatFun>, HeckeError> {
    if sub.order() == 1 {
        return Ok(vec![RatFun::one()]);
    }
    let refl = w.reflections_in(&sub.elements);
    if w.generate(&refl) != sub.elements {
        return Err(HeckeError::NoProvider(format!("subgroup of order {} not generated by reflections", sub.order())));
    }
    let comps = components(w, &refl);
    let mut parts: Vec<(std::sync::Arc<SubgroupData>, Vec<RatFun>)> = Vec::new();
    let mut total = 1usize;
    for c in &comps {
        let k = w.subgroup(&w.generate(c))?;
        total *= k.order();
        let s = component_schur(w, &k)?;
        parts.push((k, s));
    }
    if total != sub.order() {
        return Err(HeckeError::NoProvider("reflection components do not form a direct product".into()));
    }
    let mut out = Vec::with_capacity(sub.table.num_irr());
    for chi in &sub.table.values {
        let mut f = RatFun::one();
        for (k, s) in &parts {
            let res = crate::group::subgroup::restrict_between(sub, chi, k);
            let mult = k.decompose(&res);
            let idx: Vec<usize> = (0..mult.len()).filter(|&i| !mult[i].is_zero()).collect();
            if idx.len() != 1 {
                return Err(HeckeError::Validation("restriction to a direct factor is not isotypic".into()));
            }
            f = &f * &s[idx[0]];
        }
        out.push(f);
    }
    Ok(out)
}

/// Connected components of the graph joining reflections that fail to commute
/// or share a hyperplane.
fn components(w: &ReflectionGroup, refl: &[usize]) -> Vec<Vec<usize>> {
    let n = refl.len();
    let hyper: Vec<Vec<matrix::Vector>> = refl.iter().map(|&r| w.fixed_space(&[r])).collect();
    let same_hyperplane =
        |i: usize, j: usize| hyper[i].iter().all(|v| matrix::apply(w.matrix(refl[j]), v) == *v);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if w.mul(refl[i], refl[j]) != w.mul(refl[j], refl[i]) || same_hyperplane(i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(k, _)| *k == r) {
            Some((_, v)) => v.push(refl[i]),
            None => groups.push((r, vec![refl[i]])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}

/// Rank of the span of the roots of a subgroup.
fn span_rank(w: &ReflectionGroup, k: &SubgroupData) -> usize {
    w.rank() - w.fixed_space(&k.elements).len()
}

fn component_schur(w: &ReflectionGroup, k: &SubgroupData) -> Result<Vec<RatFun>, HeckeError> {
    if k.order() == w.order() {
        if let Some(Family::Imprimitive { e, n: 3 }) = w.family() {
            return imprimitive_schur(w, k, e);
        }
    }
    let rank = span_rank(w, k);
    if rank == 1 {
        return Ok(cyclic_schur(w, k));
    }
    if rank == 2 {
        if let Some(v) = dihedral_schur(w, k) {
            return Ok(v);
        }
    }
    Err(HeckeError::NoProvider(format!("irreducible component of rank {rank} and order {}", k.order())))
}

/// μ_d with parameters (x, ζ, …, ζ^{d−1}): s_k = Π_{j≠k} (u_j − u_k)/u_j.
fn cyclic_schur(w: &ReflectionGroup, k: &SubgroupData) -> Vec<RatFun> {
    let d = k.order() as u32;
    let r = *k.elements.iter().find(|&&g| g != 0 && matrix::det(w.matrix(g)) == CycloNum::root_of_unity(d, 1)).expect("distinguished generator");
    let u: Vec<LaurentX> = (0..d)
        .map(|j| if j == 0 { LaurentX::x_pow(1) } else { LaurentX::constant(CycloNum::root_of_unity(d, j as i64)) })
        .collect();
    k.table
        .values
        .iter()
        .map(|chi| {
            let v = k.value_at(chi, r);
            let kk = (0..d).find(|&j| CycloNum::root_of_unity(d, j as i64) == v).expect("root of unity value") as usize;
            let mut f = RatFun::one();
            for (j, uj) in u.iter().enumerate() {
                if j != kk {
                    let t = RatFun::new(uj - &u[kk], uj.clone()).expect("nonzero parameter");
                    f = &f * &t;
                }
            }
            f
        })
        .collect()
}

/// I₂(m) with equal parameters (x, −1), using a pair s, t whose product rotates by 2π/m.
fn dihedral_schur(w: &ReflectionGroup, k: &SubgroupData) -> Option<Vec<RatFun>> {
    if !k.order().is_multiple_of(2) {
        return None;
    }
    let m = (k.order() / 2) as u32;
    let refl = w.reflections_in(&k.elements);
    if refl.iter().any(|&r| w.abstract_group().element_order(r) != 2) {
        return None;
    }
    let z = CycloNum::root_of_unity(m, 1);
    let want = &(&z + &z.conj()) + &CycloNum::from_int(w.rank() as i64 - 2);
    let (s, t) = refl.iter().flat_map(|&s| refl.iter().map(move |&t| (s, t))).find(|&(s, t)| {
        let c = w.mul(s, t);
        w.abstract_group().element_order(c) == m && matrix::trace(w.matrix(c)) == want
    })?;
    if w.generate(&[s, t]) != k.elements {
        return None;
    }
    let c = w.mul(s, t);
    let x = LaurentX::x_pow(1);
    let one = LaurentX::one();
    let mi = m as i64;
    let poincare = RatFun::new(&(&x + &one) * &(&LaurentX::x_pow(mi) - &one), &x - &one).ok()?;
    Some(
        k.table
            .values
            .iter()
            .map(|chi| {
                let deg = &chi[0];
                if *deg == CycloNum::from_int(2) {
                    let y = k.value_at(chi, c);
                    let num = (&(&LaurentX::x_pow(2) - &LaurentX::monomial(y.clone(), 1)) + &one).scale(&CycloNum::from_int(mi));
                    let den = LaurentX::monomial(&CycloNum::from_int(2) - &y, 1);
                    RatFun::new(num, den).expect("nonzero")
                } else {
                    let (a, b) = (k.value_at(chi, s), k.value_at(chi, t));
                    match (a.is_one(), b.is_one()) {
                        (true, true) => poincare.clone(),
                        (false, false) => &poincare * &RatFun::from(LaurentX::x_pow(-mi)),
                        _ => {
                            let sq = &(&x + &one) * &(&x + &one);
                            RatFun::new(sq.scale(&CycloNum::from_ratio(mi, 2)), x.clone()).expect("nonzero")
                        }
                    }
                }
            })
            .collect(),
    )
}

/// Monomial data of an element: cycles of the underlying permutation with colours.
fn cycles_of(w: &ReflectionGroup, g: usize, e: u32) -> Vec<(usize, i64)> {
    let m = w.matrix(g);
    let n = m.len();
    let mut target = vec![0usize; n];
    let mut colour = vec![0i64; n];
    for j in 0..n {
        let i = (0..n).find(|&i| !m[i][j].is_zero()).expect("monomial column");
        target[j] = i;
        colour[j] = (0..e as i64).find(|&a| CycloNum::root_of_unity(e, a) == m[i][j]).expect("root of unity entry");
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j] {
            continue;
        }
        let (mut len, mut col, mut x) = (0, 0, j);
        while !seen[x] {
            seen[x] = true;
            len += 1;
            col += colour[x];
            x = target[x];
        }
        out.push((len, col.rem_euclid(e as i64)));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// G(e,e,3): each irreducible lies in the restriction of exactly one shift orbit
/// of e-multipartitions λ, and 𝔣_φ = s_λ / |orbit|.
fn imprimitive_schur(w: &ReflectionGroup, k: &SubgroupData, e: u32) -> Result<Vec<RatFun>, HeckeError> {
    let cyc: Vec<Vec<(usize, i64)>> =
        (0..k.group.num_classes()).map(|c| cycles_of(w, k.elements[k.group.class_rep(c)], e)).collect();
    let mut done: Vec<MultiPartition> = Vec::new();
    let mut out: Vec<Option<RatFun>> = vec![None; k.table.num_irr()];
    for l in multipartitions(e as usize, 3) {
        if done.contains(&l) {
            continue;
        }
        let size = orbit_size(&l);
        let mut m = l.clone();
        for _ in 0..size {
            done.push(m.clone());
            m = shift(&m);
        }
        let values: Vec<CycloNum> = cyc.iter().map(|c| wreath_character(&l, c)).collect();
        let s = &ak_schur(&l) * &RatFun::from(CycloNum::from_ratio(1, size as i64));
        for (i, mult) in k.decompose(&values).iter().enumerate() {
            if !mult.is_zero() {
                if out[i].is_some() {
                    return Err(HeckeError::Validation("character met by two multipartition orbits".into()));
                }
                out[i] = Some(s.clone());
            }
        }
    }
    out.into_iter()
        .map(|f| f.ok_or_else(|| HeckeError::Validation("character not covered by any multipartition".into())))
        .collect()
}
