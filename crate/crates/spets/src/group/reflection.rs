//! Finite matrix reflection groups: enumeration, classes, reflections,
//! invariant degrees and character tables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::chartab::{character_table, CharTable};
use super::finite::FiniteGroup;
use super::matrix::{self, Mat, Vector};
use super::subgroup::SubgroupData;
use super::GroupError;
use crate::arith::cyclo::lcm;
use crate::arith::{CycloNum, LaurentX, ResidueEmbedding};

/// Default bound on enumerated group orders.
pub const ORDER_CAP: usize = 10_000;

/// Which closed-form data applies to the whole group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// μ_d acting on a line.
    Cyclic { d: u32 },
    /// G(e,e,n) in its monomial realisation.
    Imprimitive { e: u32, n: u32 },
    /// A real group of rank two, I₂(m).
    Dihedral { m: u32 },
    /// Shephard–Todd exceptional group.
    Exceptional { st: u32 },
}

pub struct ReflectionGroup {
    name: String,
    rank: usize,
    field: u32,
    family: Option<Family>,
    generators: Vec<Mat>,
    elements: Vec<Mat>,
    group: FiniteGroup,
    gen_index: Vec<usize>,
    points: Vec<Vector>,
    point_index: HashMap<Vec<BigRational>, u32>,
    base_index: HashMap<Vec<u32>, u32>,
    class_fix: Vec<usize>,
    class_charpoly: Vec<LaurentX>,
    reflections: Vec<usize>,
    degrees: Vec<u32>,
    table: CharTable,
    seed: u64,
    subgroups: Mutex<HashMap<Vec<usize>, Arc<SubgroupData>>>,
}

impl std::fmt::Debug for ReflectionGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ReflectionGroup").field("name", &self.name).field("order", &self.order()).finish()
    }
}

/// Canonical key of a vector whose entries all live in ℚ(ζ_m).
pub(crate) fn vector_key(v: &[CycloNum], m: u32) -> Vec<BigRational> {
    v.iter().flat_map(|c| c.lift(m).coeffs().to_vec()).collect()
}

fn basis_vector(n: usize, i: usize) -> Vector {
    (0..n).map(|j| if i == j { CycloNum::one() } else { CycloNum::zero() }).collect()
}

impl ReflectionGroup {
    pub fn new(name: &str, generators: Vec<Mat>, family: Option<Family>, seed: u64) -> Result<Self, GroupError> {
        Self::with_cap(name, generators, family, seed, ORDER_CAP)
    }

    pub fn with_cap(
        name: &str,
        generators: Vec<Mat>,
        family: Option<Family>,
        seed: u64,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let rank = generators.first().map_or(0, |g| g.len());
        if generators.iter().any(|g| g.len() != rank || g.iter().any(|r| r.len() != rank)) {
            return Err(GroupError::Invalid("generators must be square of equal size".into()));
        }
        let field = generators.iter().flatten().flatten().fold(1u32, |m, c| lcm(m, c.minimal_order()));
        let generators: Vec<Mat> = generators.iter().map(|g| matrix::lift(g, field)).collect();

        // faithful finite set: orbit of the standard basis
        let mut points: Vec<Vector> = (0..rank).map(|i| basis_vector(rank, i)).collect();
        let mut point_index: HashMap<Vec<BigRational>, u32> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            point_index.insert(vector_key(p, field), i as u32);
        }
        let mut gen_perm: Vec<Vec<u32>> = vec![Vec::new(); generators.len()];
        let mut k = 0;
        while k < points.len() {
            for (s, g) in generators.iter().enumerate() {
                let img = matrix::apply(g, &points[k]);
                let key = vector_key(&img, field);
                let idx = match point_index.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = points.len() as u32;
                        point_index.insert(key, i);
                        points.push(img);
                        i
                    }
                };
                gen_perm[s].push(idx);
            }
            if points.len() > cap.saturating_mul(rank.max(1)) {
                return Err(GroupError::TooLarge { limit: cap });
            }
            k += 1;
        }

        let mut elements: Vec<Mat> = vec![matrix::identity(rank)];
        let mut perms: Vec<Vec<u32>> = vec![(0..points.len() as u32).collect()];
        let mut base_index: HashMap<Vec<u32>, u32> = HashMap::new();
        base_index.insert((0..rank as u32).collect(), 0);
        let mut i = 0;
        while i < elements.len() {
            for (s, g) in generators.iter().enumerate() {
                let p: Vec<u32> = gen_perm[s].iter().map(|&x| perms[i][x as usize]).collect();
                let key: Vec<u32> = p[..rank].to_vec();
                if let std::collections::hash_map::Entry::Vacant(e) = base_index.entry(key) {
                    if elements.len() >= cap {
                        return Err(GroupError::TooLarge { limit: cap });
                    }
                    e.insert(elements.len() as u32);
                    elements.push(matrix::mul(&elements[i], g));
                    perms.push(p);
                }
            }
            i += 1;
        }
        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        let mut key = vec![0u32; rank];
        for a in 0..n {
            for b in 0..n {
                for (j, slot) in key.iter_mut().enumerate() {
                    *slot = perms[a][perms[b][j] as usize];
                }
                mul[a * n + b] = base_index[&key];
            }
        }
        let gen_index: Vec<usize> = generators
            .iter()
            .map(|g| {
                let k: Vec<u32> = (0..rank).map(|j| point_index[&vector_key(&column(g, j), field)]).collect();
                base_index[&k] as usize
            })
            .collect();
        let group = FiniteGroup::from_table(n, mul, gen_index.iter().map(|&x| x as u32).collect());

        let mut class_fix = Vec::with_capacity(group.num_classes());
        let mut class_charpoly = Vec::with_capacity(group.num_classes());
        for c in 0..group.num_classes() {
            let m = &elements[group.class_rep(c)];
            class_fix.push(matrix::fixed_dim(m));
            class_charpoly.push(matrix::char_poly(m));
        }
        let reflections: Vec<usize> = (0..n).filter(|&g| class_fix[group.class_of(g)] + 1 == rank).collect();
        let degrees = degrees_from_fix(&group, &class_fix, rank)
            .ok_or_else(|| GroupError::Invalid(format!("{name}: fixed-space counts do not factor; not a reflection group")))?;
        let table = character_table(&group, seed)?;
        Ok(ReflectionGroup {
            name: name.to_string(),
            rank,
            field,
            family,
            generators,
            elements,
            group,
            gen_index,
            points,
            point_index,
            base_index,
            class_fix,
            class_charpoly,
            reflections,
            degrees,
            table,
            seed,
            subgroups: Mutex::new(HashMap::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Order m of the cyclotomic field holding all matrix entries.
    pub fn field(&self) -> u32 {
        self.field
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn abstract_group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn matrix(&self, g: usize) -> &Mat {
        &self.elements[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.group.class_of(g)
    }

    pub fn num_classes(&self) -> usize {
        self.group.num_classes()
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.group.class_size(c)
    }

    /// dim Fix(g) on the reflection representation.
    pub fn fixed_dim(&self, g: usize) -> usize {
        self.class_fix[self.class_of(g)]
    }

    /// det(x − g).
    pub fn char_poly(&self, g: usize) -> &LaurentX {
        &self.class_charpoly[self.class_of(g)]
    }

    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    /// Number of reflections.
    pub fn num_reflections(&self) -> usize {
        self.reflections.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Degrees of a reflection subgroup acting on the whole space (1 for each fixed direction).
    pub fn subgroup_degrees(&self, elems: &[usize]) -> Option<Vec<u32>> {
        let mut poly = vec![BigInt::zero(); self.rank + 1];
        for &g in elems {
            poly[self.fixed_dim(g)] += 1;
        }
        degrees_from_counts(poly, elems.len())
    }

    pub fn char_table(&self) -> &CharTable {
        &self.table
    }

    /// Distinguished reflections: nontrivial eigenvalue exp(2πi/o(r)).
    pub fn is_distinguished(&self, r: usize) -> bool {
        let o = self.group.element_order(r);
        matrix::det(&self.elements[r]) == CycloNum::root_of_unity(o, 1)
    }

    /// Element index of a matrix, if it lies in the group.
    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        let key: Option<Vec<u32>> = (0..self.rank)
            .map(|j| self.point_index.get(&vector_key(&column(m, j), self.field)).copied())
            .collect();
        self.base_index.get(&key?).map(|&i| i as usize)
    }

    /// Product of generators s_{w[0]}·s_{w[1]}·…
    pub fn element_from_word(&self, word: &[usize]) -> Result<usize, GroupError> {
        let mut g = 0;
        for &s in word {
            let gi = *self
                .gen_index
                .get(s)
                .ok_or_else(|| GroupError::Invalid(format!("generator {s} out of range in word")))?;
            g = self.mul(g, gi);
        }
        Ok(g)
    }

    /// Size of the orbit of the basis, used internally for matrix lookup.
    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Whether the columns of all g−1 span Λ modulo ℓ, i.e. Λ = [Λ,W].
    pub fn is_simply_connected(&self, emb: &ResidueEmbedding) -> Result<bool, GroupError> {
        let ell = emb.ell;
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for g in 0..self.order() {
            let d = matrix::sub_identity(&self.elements[g]);
            let r = emb.reduce_matrix(&d)?;
            for j in 0..self.rank {
                rows.push((0..self.rank).map(|i| r[i][j] % ell).collect());
            }
        }
        Ok(rank_mod_prime(rows, ell) == self.rank)
    }

    pub(crate) fn subgroup_cache(&self) -> &Mutex<HashMap<Vec<usize>, Arc<SubgroupData>>> {
        &self.subgroups
    }
}

fn column(m: &Mat, j: usize) -> Vector {
    m.iter().map(|r| r[j].clone()).collect()
}

/// Rank of an integer matrix over 𝔽_p.
pub fn rank_mod_prime(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else { continue };
        rows.swap(r, piv);
        let inv = crate::arith::residue::inv_mod(rows[r][c] % p, p).expect("unit pivot");
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_multiple_of(p) {
                let f = rows[i][c] * inv % p;
                for k in 0..ncols {
                    let sub = f * rows[r][k] % p;
                    rows[i][k] = (rows[i][k] + p - sub) % p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Σ_w t^{dim Fix w} = Π (t + d_i − 1) for reflection groups.
fn degrees_from_fix(g: &FiniteGroup, class_fix: &[usize], rank: usize) -> Option<Vec<u32>> {
    let mut poly = vec![BigInt::zero(); rank + 1];
    for (c, &f) in class_fix.iter().enumerate() {
        poly[f] += BigInt::from(g.class_size(c));
    }
    degrees_from_counts(poly, g.order())
}

/// Factor a fixed-dimension generating polynomial into linear factors t + d − 1.
fn degrees_from_counts(mut poly: Vec<BigInt>, order: usize) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    let mut m: u64 = 0;
    while poly.len() > 1 {
        if m as usize > order {
            return None;
        }
        // synthetic division by (t + m)
        let deg = poly.len() - 1;
        let mut q = vec![BigInt::zero(); deg];
        q[deg - 1] = poly[deg].clone();
        for k in (1..deg).rev() {
            q[k - 1] = &poly[k] - &q[k] * BigInt::from(m);
        }
        let carry = &poly[0] - &q[0] * BigInt::from(m);
        if carry.is_zero() {
            out.push(m as u32 + 1);
            poly = q;
        } else {
            m += 1;
        }
    }
    out.sort_unstable();
    let prod: u64 = out.iter().map(|&d| d as u64).product();
    (prod == order as u64 && poly[0].to_i64() == Some(1)).then_some(out)
}
