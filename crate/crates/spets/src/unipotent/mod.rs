//! Order polynomials, Deligne–Lusztig values on ℓ-elements, uniform
//! projections of unipotent characters and almost characters.
//!
//! A centraliser C_𝔾(t) is described by a reflection sub-coset W_L·w_L of W,
//! where w_L normalises W_L. For such a coset
//! R_v^ℒ(1) = η_v·|ℒ|_{x'}/det(x − v) with η_v = det(v)/det(v₀), v₀ being the
//! coset element with the largest fixed space. When all determinants are ±1
//! this is the sign rule η_v = ε_ℒ·ε_v with ε = (−1)^{dim Fix}; for non-real
//! groups it is the root of unity that makes the det-isotypic Molien series
//! close up. |ℒ|_{x'} is fixed by requiring the trivial character to have value 1.

pub mod almost;
pub mod g24;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::linalg;
use crate::arith::{ArithError, CycloNum, LaurentX, RatFun};
use crate::group::{GroupError, ReflectionGroup};
use crate::hecke::{HeckeError, SchurRegistry};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnipotentError {
    #[error("w_L does not normalise W_L")]
    NotNormalising,
    #[error("no multiplicity for class {0}")]
    MissingMultiplicity(usize),
    #[error("degree is not in the span of the fake degrees")]
    NotUniform,
    #[error("fake degrees are linearly dependent; uniform projection is not determined by degrees")]
    Underdetermined,
    #[error("{0} is not a Laurent polynomial")]
    NotPolynomial(String),
    #[error("interpolation needs {needed} points, got {got}")]
    InterpolationUnderdetermined { needed: usize, got: usize },
    #[error("data validation failed: {0}")]
    DataValidation(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Torus(#[from] crate::torus::TorusError),
}

/// ε_v = (−1)^{dim Fix v}.
pub fn sign(g: &ReflectionGroup, v: usize) -> i64 {
    if g.fixed_dim(v).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// det(v) on the reflection representation.
pub fn det(g: &ReflectionGroup, v: usize) -> CycloNum {
    crate::group::matrix::det(g.matrix(v))
}

/// A generic order: value = x^N·Π(x^{d_i} − 1), or det(x − w) for a torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderPoly {
    #[serde(serialize_with = "crate::report::ser_laurent")]
    pub value: LaurentX,
    #[serde(serialize_with = "crate::report::ser_laurent")]
    pub x_prime: LaurentX,
    pub epsilon: i64,
}

/// Order polynomial of the split group attached to a reflection subgroup
/// (acting on the full space, so fixed directions contribute x − 1).
pub fn order_polynomial(g: &ReflectionGroup, elems: &[usize]) -> Result<OrderPoly, UnipotentError> {
    let degrees = g
        .subgroup_degrees(elems)
        .ok_or_else(|| UnipotentError::DataValidation("subgroup is not a reflection group".into()))?;
    let n_refl = g.reflections_in(elems).len() as i64;
    let x_prime = degrees.iter().fold(LaurentX::one(), |acc, &d| &acc * &(&LaurentX::x_pow(d as i64) - &LaurentX::one()));
    let max_fix = elems.iter().map(|&v| g.fixed_dim(v)).max().unwrap_or(0);
    Ok(OrderPoly {
        value: x_prime.shift(n_refl, 1),
        x_prime,
        epsilon: if max_fix % 2 == 0 { 1 } else { -1 },
    })
}

/// |T_w|(x) = det(x − w).
pub fn torus_order(g: &ReflectionGroup, w: usize) -> OrderPoly {
    let p = g.char_poly(w).clone();
    OrderPoly { value: p.clone(), x_prime: p, epsilon: sign(g, w) }
}

/// |𝔾 : C_𝔾(t)| for a split centraliser with Weyl group `elems`.
pub fn index_polynomial(g: &ReflectionGroup, elems: &[usize]) -> Result<LaurentX, UnipotentError> {
    let top = order_polynomial(g, &(0..g.order()).collect::<Vec<_>>())?;
    let bottom = order_polynomial(g, elems)?;
    top.value.div_exact(&bottom.value).ok_or_else(|| UnipotentError::NotPolynomial("index".into()))
}

/// A reflection sub-coset W_L·w_L.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubCoset {
    pub elements: Vec<usize>,
    pub twist: usize,
}

impl SubCoset {
    pub fn split(elements: Vec<usize>) -> Self {
        SubCoset { elements, twist: 0 }
    }

    pub fn new(g: &ReflectionGroup, mut elements: Vec<usize>, twist: usize) -> Result<Self, UnipotentError> {
        elements.sort_unstable();
        let conj = crate::torus::conjugate_subgroup(g, &elements, twist);
        if conj != elements {
            return Err(UnipotentError::NotNormalising);
        }
        Ok(SubCoset { elements, twist })
    }

    /// The elements v·w_L.
    pub fn coset(&self, g: &ReflectionGroup) -> Vec<usize> {
        self.elements.iter().map(|&v| g.mul(v, self.twist)).collect()
    }
}

/// R_v^ℒ(1) for every coset element, in the order of `SubCoset::coset`.
#[derive(Clone, Debug)]
pub struct CosetData {
    pub coset: Vec<usize>,
    pub eta: Vec<CycloNum>,
    pub x_prime: RatFun,
    pub units: Vec<RatFun>,
}

pub fn coset_data(g: &ReflectionGroup, sc: &SubCoset) -> Result<CosetData, UnipotentError> {
    let coset = sc.coset(g);
    let top = coset.iter().copied().max_by_key(|&v| (g.fixed_dim(v), std::cmp::Reverse(v))).expect("nonempty coset");
    let d0 = det(g, top);
    let d0 = d0.inv()?;
    let eta: Vec<CycloNum> = coset.iter().map(|&v| &det(g, v) * &d0).collect();
    // group equal characteristic polynomials before summing
    let mut by_poly: BTreeMap<String, (LaurentX, CycloNum)> = BTreeMap::new();
    for (i, &v) in coset.iter().enumerate() {
        let p = g.char_poly(v);
        by_poly.entry(p.to_string()).or_insert_with(|| (p.clone(), CycloNum::zero())).1 += &eta[i];
    }
    let mut sum = RatFun::zero();
    for (p, k) in by_poly.values() {
        if !k.is_zero() {
            sum = &sum + &RatFun::new(LaurentX::constant(k.clone()), p.clone())?;
        }
    }
    let x_prime = &RatFun::from(LaurentX::from_int(sc.elements.len() as i64)) * &sum.inv()?;
    let units = coset
        .iter()
        .zip(&eta)
        .map(|(&v, e)| Ok(&x_prime * &RatFun::new(LaurentX::constant(e.clone()), g.char_poly(v).clone())?))
        .collect::<Result<Vec<_>, ArithError>>()?;
    Ok(CosetData { coset, eta, x_prime, units })
}

/// |W_L|⁻¹ Σ_v f(class of v)·R_v^ℒ(1) for a class function f of W.
pub fn coset_average(g: &ReflectionGroup, data: &CosetData, f: &[CycloNum]) -> Result<RatFun, UnipotentError> {
    let mut acc: BTreeMap<usize, CycloNum> = BTreeMap::new();
    for (i, &v) in data.coset.iter().enumerate() {
        let c = g.class_of(v);
        let val = f.get(c).ok_or(UnipotentError::MissingMultiplicity(c))?;
        *acc.entry(i).or_insert_with(CycloNum::zero) += val;
    }
    let mut sum = RatFun::zero();
    for (i, c) in acc {
        if !c.is_zero() {
            sum = &sum + &(&data.units[i] * &RatFun::from(c));
        }
    }
    Ok(&sum * &RatFun::from(CycloNum::from_ratio(1, data.coset.len() as i64)))
}

/// Fake degree f_φ^ℒ = |W_L|⁻¹ Σ_v φ(v)·R_v^ℒ(1), the almost character value.
pub fn fake_degree(g: &ReflectionGroup, sc: &SubCoset, phi: &[CycloNum]) -> Result<LaurentX, UnipotentError> {
    let data = coset_data(g, sc)?;
    let v = coset_average(g, &data, phi)?;
    v.to_laurent().ok_or_else(|| UnipotentError::NotPolynomial(format!("fake degree {v}")))
}

/// R_w^𝔾(t) = |C_W(w)|·|W_L|⁻¹·Σ_{v ∈ [w] ∩ W_L w_L} R_v^ℒ(1).
pub fn dl_value(g: &ReflectionGroup, w: usize, sc: &SubCoset) -> Result<RatFun, UnipotentError> {
    let data = coset_data(g, sc)?;
    let c = g.class_of(w);
    let indicator: Vec<CycloNum> =
        (0..g.num_classes()).map(|k| if k == c { CycloNum::one() } else { CycloNum::zero() }).collect();
    let avg = coset_average(g, &data, &indicator)?;
    let cent = (g.order() / g.class_size(c)) as i64;
    Ok(&avg * &RatFun::from(LaurentX::from_int(cent)))
}

/// A unipotent character through its multiplicities ⟨χ, R_w⟩ on the classes of W.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnipotentChar {
    pub label: String,
    #[serde(serialize_with = "crate::report::ser_cyclo_vec")]
    pub mult: Vec<CycloNum>,
    #[serde(serialize_with = "crate::report::ser_laurent")]
    pub degree: LaurentX,
}

/// χ(t) = |W_L|⁻¹ Σ_v ⟨χ, R_v⟩·R_v^ℒ(1).
pub fn unipotent_value(g: &ReflectionGroup, chi: &UnipotentChar, sc: &SubCoset) -> Result<RatFun, UnipotentError> {
    let data = coset_data(g, sc)?;
    coset_average(g, &data, &chi.mult)
}

/// R_φ(t) = f_φ^ℒ.
pub fn almost_value(g: &ReflectionGroup, phi: &[CycloNum], sc: &SubCoset) -> Result<LaurentX, UnipotentError> {
    fake_degree(g, sc, phi)
}

/// Fake degrees of all irreducible characters of W, in table order.
pub fn fake_degrees(g: &ReflectionGroup) -> Result<Vec<LaurentX>, UnipotentError> {
    let sc = SubCoset::split((0..g.order()).collect());
    let data = coset_data(g, &sc)?;
    g.char_table()
        .values
        .iter()
        .map(|phi| {
            let v = coset_average(g, &data, phi)?;
            v.to_laurent().ok_or_else(|| UnipotentError::NotPolynomial(format!("fake degree {v}")))
        })
        .collect()
}

/// Coefficients c_ψ with degree = Σ_ψ c_ψ f_ψ; unique when the fake degrees are independent.
pub fn uniform_projection(fakes: &[LaurentX], degree: &LaurentX) -> Result<Vec<CycloNum>, UnipotentError> {
    let lo = fakes.iter().chain(std::iter::once(degree)).filter_map(|p| p.low()).min().unwrap_or(0);
    let hi = fakes.iter().chain(std::iter::once(degree)).filter_map(|p| p.high()).max().unwrap_or(0);
    let rows: Vec<Vec<CycloNum>> = (lo..=hi).map(|k| fakes.iter().map(|f| f.coeff(k)).collect()).collect();
    if linalg::rank(rows.clone()) < fakes.len() {
        return Err(UnipotentError::Underdetermined);
    }
    let rhs: Vec<CycloNum> = (lo..=hi).map(|k| degree.coeff(k)).collect();
    linalg::solve(&rows, &rhs).ok_or(UnipotentError::NotUniform)
}

/// Principal-series unipotent characters γ_{1,φ} with degrees 𝔣_1/𝔣_φ.
///
/// Multiplicities come from the uniform projection of the degree: a full solve
/// when the fake degrees are independent, otherwise a solve restricted to the
/// characters sharing φ's (a, A) pair, and finally ρ_φ = R_φ when the degree
/// equals the fake degree.
pub fn principal_series(g: &ReflectionGroup, reg: &SchurRegistry<'_>) -> Result<Vec<UnipotentChar>, UnipotentError> {
    let whole = g.whole()?;
    let fakes = fake_degrees(g)?;
    let table = &g.char_table().values;
    let degrees: Vec<LaurentX> = (0..table.len()).map(|i| reg.generic_degree(&whole, i)).collect::<Result<_, _>>()?;
    let aa = |p: &LaurentX| (p.low(), p.high());
    let n = table.len();
    (0..n)
        .map(|i| {
            let degree = degrees[i].clone();
            let c = match uniform_projection(&fakes, &degree) {
                Ok(c) => c,
                Err(UnipotentError::Underdetermined) => {
                    let block: Vec<usize> = (0..n).filter(|&j| aa(&degrees[j]) == aa(&degree)).collect();
                    let sub: Vec<LaurentX> = block.iter().map(|&j| fakes[j].clone()).collect();
                    match uniform_projection(&sub, &degree) {
                        Ok(cb) => {
                            let mut c = vec![CycloNum::zero(); n];
                            for (k, &j) in block.iter().enumerate() {
                                c[j] = cb[k].clone();
                            }
                            c
                        }
                        Err(_) if fakes[i] == degree => {
                            (0..n).map(|j| if j == i { CycloNum::one() } else { CycloNum::zero() }).collect()
                        }
                        Err(e) => return Err(e),
                    }
                }
                Err(e) => return Err(e),
            };
            let mult = (0..g.num_classes())
                .map(|k| c.iter().zip(table).fold(CycloNum::zero(), |acc, (ci, psi)| &acc + &(ci * &psi[k])))
                .collect();
            Ok(UnipotentChar { label: format!("phi{i}"), mult, degree })
        })
        .collect()
}
