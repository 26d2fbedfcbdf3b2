//! The finite torus T = Λ/ℓ^aΛ with the W-action obtained by reducing the
//! defining matrices, together with orbits, stabilisers, the dual torus
//! Irr(T), an equivariant bijection T → Irr(T) and Orlik–Solomon counts.
//!
//! Points and characters are encoded as integers whose base-ℓ^a digits are
//! the coordinates, most significant first, so integer order is lexicographic.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{ArithError, CycloNum, ResidueEmbedding};
use crate::group::{GroupError, ReflectionGroup};

/// Tori with more points than this are refused.
pub const POINT_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("tori are only built for odd primes, got ℓ = 2")]
    EvenPrime,
    #[error("torus with {size} points exceeds the enumeration limit {limit}")]
    TooLarge { size: u128, limit: u64 },
    #[error("ℓ = {ell} divides |W| = {order}; operation needs the coprime case")]
    NotCoprime { ell: u64, order: usize },
    #[error("reduced matrices do not define an action: {0}")]
    NotHomomorphism(String),
    #[error("no equivariant matching for the orbit of {0}")]
    NoEquivariantMatching(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Orbits of a permutation action on 0..size, sorted by smallest member,
/// with a transporter for every point.
#[derive(Debug)]
struct Orbits {
    orbit_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    /// w with w·rep = p, for every point p.
    transporter: Vec<u32>,
}

#[derive(Debug)]
pub struct Torus<'g> {
    group: &'g ReflectionGroup,
    emb: ResidueEmbedding,
    rank: usize,
    modulus: u64,
    size: u64,
    mats: Vec<Vec<u64>>,
    dual_mats: Vec<Vec<u64>>,
    coprime: bool,
    points: OnceLock<Orbits>,
    chars: OnceLock<Orbits>,
    stabilisers: OnceLock<Vec<Vec<usize>>>,
    bijection: OnceLock<Result<Vec<u32>, TorusError>>,
}

impl<'g> Torus<'g> {
    /// Reduce W modulo ℓ^a and check the result is an action by invertible matrices.
    pub fn new(group: &'g ReflectionGroup, ell: u64, a: u32) -> Result<Self, TorusError> {
        if ell == 2 {
            return Err(TorusError::EvenPrime);
        }
        let emb = ResidueEmbedding::new(ell, a)?;
        let modulus = emb.modulus;
        let rank = group.rank();
        let size = (modulus as u128).pow(rank as u32);
        if size > POINT_CAP as u128 {
            return Err(TorusError::TooLarge { size, limit: POINT_CAP });
        }
        let mut mats = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let m = emb.reduce_matrix(group.matrix(g))?;
            mats.push(m.into_iter().flatten().collect::<Vec<u64>>());
        }
        let dual_mats = (0..group.order())
            .map(|g| {
                let m = &mats[group.inv(g)];
                (0..rank * rank).map(|k| m[(k % rank) * rank + k / rank]).collect()
            })
            .collect();
        let t = Torus {
            group,
            emb,
            rank,
            modulus,
            size: size as u64,
            mats,
            dual_mats,
            coprime: !(group.order() as u64).is_multiple_of(ell),
            points: OnceLock::new(),
            chars: OnceLock::new(),
            stabilisers: OnceLock::new(),
            bijection: OnceLock::new(),
        };
        t.check_action()?;
        Ok(t)
    }

    fn check_action(&self) -> Result<(), TorusError> {
        let g = self.group;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for &a in g.generator_indices() {
            for &b in g.generator_indices() {
                pairs.push((a, b));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed());
        for _ in 0..100 {
            pairs.push((rng.random_range(0..g.order()), rng.random_range(0..g.order())));
        }
        for (a, b) in pairs {
            if self.mat_mul(&self.mats[a], &self.mats[b]) != self.mats[g.mul(a, b)] {
                return Err(TorusError::NotHomomorphism(format!("elements {a} and {b}")));
            }
        }
        let ell = self.emb.ell;
        for &s in g.generator_indices() {
            let rows: Vec<Vec<u64>> =
                (0..self.rank).map(|i| self.mats[s][i * self.rank..(i + 1) * self.rank].iter().map(|v| v % ell).collect()).collect();
            if crate::group::reflection::rank_mod_prime(rows, ell) != self.rank {
                return Err(TorusError::NotHomomorphism(format!("generator {s} is singular mod {ell}")));
            }
        }
        Ok(())
    }

    fn mat_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.rank;
        let m = self.modulus as u128;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u128 = (0..n).map(|k| a[i * n + k] as u128 * b[k * n + j] as u128).sum();
                out[i * n + j] = (s % m) as u64;
            }
        }
        out
    }

    pub fn group(&self) -> &'g ReflectionGroup {
        self.group
    }

    pub fn ell(&self) -> u64 {
        self.emb.ell
    }

    pub fn a(&self) -> u32 {
        self.emb.a
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// |T| = ℓ^{an}.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn embedding(&self) -> &ResidueEmbedding {
        &self.emb
    }

    /// Whether ℓ does not divide |W|.
    pub fn is_coprime(&self) -> bool {
        self.coprime
    }

    fn require_coprime(&self) -> Result<(), TorusError> {
        if self.coprime {
            Ok(())
        } else {
            Err(TorusError::NotCoprime { ell: self.ell(), order: self.group.order() })
        }
    }

    /// Reduced matrix of an element, row-major.
    pub fn matrix(&self, w: usize) -> &[u64] {
        &self.mats[w]
    }

    pub fn coords(&self, p: u32) -> Vec<u64> {
        let mut c = vec![0u64; self.rank];
        let mut p = p as u64;
        for i in (0..self.rank).rev() {
            c[i] = p % self.modulus;
            p /= self.modulus;
        }
        c
    }

    pub fn index(&self, c: &[u64]) -> u32 {
        c.iter().fold(0u64, |acc, &x| acc * self.modulus + x % self.modulus) as u32
    }

    fn apply(&self, m: &[u64], p: u32) -> u32 {
        let c = self.coords(p);
        let n = self.rank;
        let md = self.modulus as u128;
        let mut acc = 0u64;
        for i in 0..n {
            let s: u128 = (0..n).map(|k| m[i * n + k] as u128 * c[k] as u128).sum();
            acc = acc * self.modulus + (s % md) as u64;
        }
        acc as u32
    }

    /// w·t.
    pub fn act(&self, w: usize, p: u32) -> u32 {
        self.apply(&self.mats[w], p)
    }

    /// (w·θ)(t) = θ(w⁻¹·t), on dual coordinates.
    pub fn act_dual(&self, w: usize, d: u32) -> u32 {
        self.apply(&self.dual_mats[w], d)
    }

    /// Exponent k with θ_d(t) = ζ_{ℓ^a}^k.
    pub fn pairing(&self, d: u32, t: u32) -> u64 {
        let (a, b) = (self.coords(d), self.coords(t));
        let m = self.modulus as u128;
        (a.iter().zip(&b).map(|(x, y)| *x as u128 * *y as u128).sum::<u128>() % m) as u64
    }

    /// θ_d(t) as an exact root of unity.
    pub fn char_value(&self, d: u32, t: u32) -> CycloNum {
        CycloNum::root_of_unity(self.modulus as u32, self.pairing(d, t) as i64)
    }

    /// Additive inverse −t, i.e. t⁻¹ in the group T.
    pub fn neg(&self, t: u32) -> u32 {
        let c: Vec<u64> = self.coords(t).iter().map(|&x| (self.modulus - x) % self.modulus).collect();
        self.index(&c)
    }

    fn build_orbits(&self, dual: bool) -> Orbits {
        let n = self.size as usize;
        let gens = self.group.generator_indices();
        let mut orbit_of = vec![u32::MAX; n];
        let mut transporter = vec![0u32; n];
        let mut members = Vec::new();
        for start in 0..n {
            if orbit_of[start] != u32::MAX {
                continue;
            }
            let id = members.len() as u32;
            orbit_of[start] = id;
            let mut orb = vec![start as u32];
            let mut k = 0;
            while k < orb.len() {
                let p = orb[k];
                let w = transporter[p as usize] as usize;
                for &s in gens {
                    let q = if dual { self.act_dual(s, p) } else { self.act(s, p) };
                    if orbit_of[q as usize] == u32::MAX {
                        orbit_of[q as usize] = id;
                        transporter[q as usize] = self.group.mul(s, w) as u32;
                        orb.push(q);
                    }
                }
                k += 1;
            }
            orb.sort_unstable();
            members.push(orb);
        }
        Orbits { orbit_of, members, transporter }
    }

    fn point_orbits(&self) -> &Orbits {
        self.points.get_or_init(|| self.build_orbits(false))
    }

    fn char_orbits(&self) -> &Orbits {
        self.chars.get_or_init(|| self.build_orbits(true))
    }

    /// W-orbits on T, each sorted, ordered by their smallest point.
    pub fn orbits(&self) -> &[Vec<u32>] {
        &self.point_orbits().members
    }

    pub fn orbit_of(&self, p: u32) -> usize {
        self.point_orbits().orbit_of[p as usize] as usize
    }

    /// Lexicographically smallest point of the orbit of p.
    pub fn representative(&self, p: u32) -> u32 {
        self.orbits()[self.orbit_of(p)][0]
    }

    /// An element w with w·representative(p) = p.
    pub fn transporter(&self, p: u32) -> usize {
        self.point_orbits().transporter[p as usize] as usize
    }

    /// W-orbits on Irr(T) in dual coordinates.
    pub fn dual_orbits(&self) -> &[Vec<u32>] {
        &self.char_orbits().members
    }

    pub fn dual_orbit_of(&self, d: u32) -> usize {
        self.char_orbits().orbit_of[d as usize] as usize
    }

    /// C_W(t) as a sorted element list.
    pub fn centraliser(&self, p: u32) -> Vec<usize> {
        (0..self.group.order()).filter(|&w| self.act(w, p) == p).collect()
    }

    /// C_W(θ) as a sorted element list.
    pub fn dual_centraliser(&self, d: u32) -> Vec<usize> {
        (0..self.group.order()).filter(|&w| self.act_dual(w, d) == d).collect()
    }

    /// Stabiliser of the representative of every orbit, in orbit order.
    pub fn stabilisers(&self) -> &[Vec<usize>] {
        self.stabilisers.get_or_init(|| self.orbits().par_iter().map(|o| self.centraliser(o[0])).collect())
    }

    /// C_W(p) obtained by conjugating the cached representative stabiliser.
    pub fn stabiliser_of(&self, p: u32) -> Vec<usize> {
        let w = self.transporter(p);
        conjugate_subgroup(self.group, &self.stabilisers()[self.orbit_of(p)], w)
    }

    /// The equivariant bijection s ↦ ŝ with C_W(ŝ) = C_W(s), as a table over all points.
    pub fn dual_bijection(&self) -> Result<&[u32], TorusError> {
        self.require_coprime()?;
        match self.bijection.get_or_init(|| self.match_orbits()) {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// ŝ for a single point.
    pub fn hat(&self, s: u32) -> Result<u32, TorusError> {
        Ok(self.dual_bijection()?[s as usize])
    }

    fn match_orbits(&self) -> Result<Vec<u32>, TorusError> {
        let g = self.group;
        let dual = self.char_orbits();
        let dual_stabs: Vec<Vec<usize>> = dual.members.par_iter().map(|o| self.dual_centraliser(o[0])).collect();
        let mut used = vec![false; dual.members.len()];
        let mut map = vec![u32::MAX; self.size as usize];
        for (i, orbit) in self.orbits().iter().enumerate() {
            let stab = &self.stabilisers()[i];
            let mut found = None;
            'search: for (j, dorb) in dual.members.iter().enumerate() {
                if used[j] || dorb.len() != orbit.len() || dual_stabs[j].len() != stab.len() {
                    continue;
                }
                for &d in dorb {
                    let w = dual.transporter[d as usize] as usize;
                    if conjugate_subgroup(g, &dual_stabs[j], w) == *stab {
                        found = Some((j, d));
                        break 'search;
                    }
                }
            }
            let (j, theta) =
                found.ok_or_else(|| TorusError::NoEquivariantMatching(format!("{:?}", self.coords(orbit[0]))))?;
            used[j] = true;
            for &p in orbit {
                map[p as usize] = self.act_dual(self.transporter(p), theta);
            }
        }
        Ok(map)
    }

    /// Points grouped by the conjugacy class of their stabiliser.
    pub fn count_by_parabolic(&self) -> Vec<ParabolicClass> {
        let g = self.group;
        let mut canon: HashMap<Vec<usize>, (Vec<usize>, usize)> = HashMap::new();
        let mut acc: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for (i, orbit) in self.orbits().iter().enumerate() {
            let stab = &self.stabilisers()[i];
            let (key, _) = canon.entry(stab.clone()).or_insert_with(|| canonical_conjugate(g, stab)).clone();
            *acc.entry(key).or_default() += orbit.len() as u64;
        }
        let mut out: Vec<ParabolicClass> = acc
            .into_iter()
            .map(|(key, total)| {
                let copies = canon.values().find(|(k, _)| *k == key).map(|(_, c)| *c).unwrap_or(1);
                ParabolicClass {
                    order: key.len(),
                    fix_dim: g.fixed_space(&key).len(),
                    copies,
                    total,
                    per_copy: total / copies as u64,
                    is_parabolic: g.is_parabolic(&key),
                    representative: key,
                }
            })
            .collect();
        out.sort_by(|a, b| b.order.cmp(&a.order).then(a.fix_dim.cmp(&b.fix_dim)).then(a.representative.cmp(&b.representative)));
        out
    }
}

/// w H w⁻¹, sorted.
pub fn conjugate_subgroup(g: &ReflectionGroup, h: &[usize], w: usize) -> Vec<usize> {
    let wi = g.inv(w);
    let mut v: Vec<usize> = h.iter().map(|&x| g.mul(g.mul(w, x), wi)).collect();
    v.sort_unstable();
    v
}

/// Lexicographically least conjugate of H and the number of distinct conjugates.
pub fn canonical_conjugate(g: &ReflectionGroup, h: &[usize]) -> (Vec<usize>, usize) {
    let mut all: Vec<Vec<usize>> = (0..g.order()).map(|w| conjugate_subgroup(g, h, w)).collect();
    all.sort();
    all.dedup();
    let n = all.len();
    (all.swap_remove(0), n)
}

/// One conjugacy class of stabilisers and the number of points it carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParabolicClass {
    pub representative: Vec<usize>,
    pub order: usize,
    pub fix_dim: usize,
    pub copies: usize,
    pub total: u64,
    pub per_copy: u64,
    pub is_parabolic: bool,
}

/// Integer fit m = Π (ℓ^α − b_i) of one parabolic class across levels α.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OsFitRow {
    pub order: usize,
    pub fix_dim: usize,
    pub copies: usize,
    /// (level α, per-copy count).
    pub counts: Vec<(u32, u64)>,
    /// Every nondecreasing integer vector consistent with all levels.
    pub solutions: Vec<Vec<i64>>,
    /// Level used only for verification, if one was feasible.
    pub verified_at: Option<u32>,
}

impl OsFitRow {
    /// The b-vector if the fit is unique.
    pub fn b(&self) -> Option<&[i64]> {
        match self.solutions.as_slice() {
            [only] => Some(only),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OsFit {
    pub group: String,
    pub ell: u64,
    pub a: u32,
    pub rows: Vec<OsFitRow>,
}

impl OsFit {
    pub fn all_unique(&self) -> bool {
        self.rows.iter().all(|r| r.b().is_some())
    }
}

/// Fit per-copy counts at levels a and a+1, filtering by a+2 when that torus is small enough.
pub fn os_fit(group: &ReflectionGroup, ell: u64, a: u32) -> Result<OsFit, TorusError> {
    let mut levels = vec![a, a + 1];
    let third = (ell as u128).checked_pow((a + 2) * group.rank() as u32);
    let verify = matches!(third, Some(s) if s <= POINT_CAP as u128);
    if verify {
        levels.push(a + 2);
    }
    let mut per_level: Vec<Vec<ParabolicClass>> = Vec::new();
    for &lv in &levels {
        let t = Torus::new(group, ell, lv)?;
        t.require_coprime()?;
        per_level.push(t.count_by_parabolic());
    }
    let mut rows = Vec::new();
    for class in &per_level[0] {
        let mut counts = Vec::new();
        for (lv, classes) in levels.iter().zip(&per_level) {
            let m = classes.iter().find(|c| c.representative == class.representative).map_or(0, |c| c.per_copy);
            counts.push((*lv, m));
        }
        let data: Vec<(i128, i128)> = counts.iter().map(|&(lv, m)| ((ell as i128).pow(lv), m as i128)).collect();
        rows.push(OsFitRow {
            order: class.order,
            fix_dim: class.fix_dim,
            copies: class.copies,
            solutions: fit_products(class.fix_dim, &data),
            counts,
            verified_at: verify.then_some(a + 2),
        });
    }
    Ok(OsFit { group: group.name().to_string(), ell, a, rows })
}

/// All nondecreasing b ∈ ℤ^k with Π (X − b_i) = m for every datum (X, m).
pub fn fit_products(k: usize, data: &[(i128, i128)]) -> Vec<Vec<i64>> {
    if k == 0 {
        return if data.iter().all(|&(_, m)| m == 1) { vec![Vec::new()] } else { Vec::new() };
    }
    let Some(&(x0, m0)) = data.iter().find(|&&(_, m)| m != 0) else {
        return Vec::new();
    };
    let mut divs: Vec<i128> = Vec::new();
    let mut d = 1i128;
    while d * d <= m0.abs() {
        if m0 % d == 0 {
            divs.extend([d, -d, m0.abs() / d, -(m0.abs() / d)]);
        }
        d += 1;
    }
    divs.sort_unstable_by(|a, b| b.cmp(a));
    divs.dedup();
    let mut facts: Vec<Vec<i128>> = Vec::new();
    fn rec(rem: i128, k: usize, max: i128, divs: &[i128], cur: &mut Vec<i128>, out: &mut Vec<Vec<i128>>) {
        if k == 1 {
            if rem <= max {
                cur.push(rem);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for &d in divs {
            if d <= max && rem % d == 0 {
                cur.push(d);
                rec(rem / d, k - 1, d, divs, cur, out);
                cur.pop();
            }
        }
    }
    rec(m0, k, i128::MAX, &divs, &mut Vec::new(), &mut facts);
    let mut out: Vec<Vec<i64>> = facts
        .into_iter()
        .map(|f| f.iter().map(|&d| (x0 - d) as i64).collect::<Vec<i64>>())
        .filter(|b| data.iter().all(|&(x, m)| b.iter().map(|&bi| x - bi as i128).product::<i128>() == m))
        .collect();
    out.sort();
    out.dedup();
    out
}
