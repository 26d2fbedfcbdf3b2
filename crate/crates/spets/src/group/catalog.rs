//! Named groups and the JSON catalog format.
//!
//! Matrix entries are stored as coordinate vectors in the reduced power basis
//! of ζ_m, each rational written as a string ("3", "-1/2").

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::matrix::Mat;
use super::reflection::{Family, ReflectionGroup};
use super::GroupError;
use crate::arith::cyclo::euler_phi;
use crate::arith::residue::gauss_sum;
use crate::arith::{ArithError, CycloNum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub rank: usize,
    pub cyclo_order: u32,
    pub generators: Vec<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    pub family: Option<Family>,
    #[serde(default)]
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub groups: Vec<CatalogEntry>,
}

fn parse_rational(s: &str) -> Result<BigRational, GroupError> {
    let bad = || GroupError::Arith(ArithError::Parse(format!("bad rational '{s}'")));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == 0.into() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl CatalogEntry {
    pub fn from_matrices(
        name: &str,
        m: u32,
        gens: &[Mat],
        family: Option<Family>,
        flags: Vec<String>,
    ) -> Self {
        let rank = gens.first().map_or(0, |g| g.len());
        let generators = gens
            .iter()
            .map(|g| {
                g.iter()
                    .map(|row| row.iter().map(|c| c.lift(m).coeffs().iter().map(fmt_rational).collect()).collect())
                    .collect()
            })
            .collect();
        CatalogEntry { name: name.to_string(), rank, cyclo_order: m, generators, family, flags }
    }

    pub fn matrices(&self) -> Result<Vec<Mat>, GroupError> {
        let phi = euler_phi(self.cyclo_order.max(1)) as usize;
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.rank {
                    return Err(GroupError::Invalid(format!("{}: generator has wrong size", self.name)));
                }
                g.iter()
                    .map(|row| {
                        if row.len() != self.rank {
                            return Err(GroupError::Invalid(format!("{}: generator has wrong size", self.name)));
                        }
                        row.iter()
                            .map(|coords| {
                                if coords.len() != phi {
                                    return Err(GroupError::Arith(ArithError::BadCoordinates {
                                        order: self.cyclo_order,
                                        len: coords.len(),
                                    }));
                                }
                                let v = coords.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
                                Ok(CycloNum::from_basis(self.cyclo_order.max(1), v)?)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn load(&self, seed: u64) -> Result<ReflectionGroup, GroupError> {
        let g = ReflectionGroup::new(&self.name, self.matrices()?, self.family, seed)?;
        if self.flags.iter().any(|f| f == "reflection") && g.num_reflections() == 0 {
            return Err(GroupError::Invalid(format!("{}: no reflections among the elements", self.name)));
        }
        Ok(g)
    }
}

fn int(n: i64) -> CycloNum {
    CycloNum::from_int(n)
}

fn zeta(m: u32, k: i64) -> CycloNum {
    CycloNum::root_of_unity(m, k)
}

/// Permutation matrix scaled: column j has `entries[j]` in row `perm[j]`.
fn monomial(perm: &[usize], entries: &[CycloNum]) -> Mat {
    let n = perm.len();
    let mut m = vec![vec![CycloNum::zero(); n]; n];
    for j in 0..n {
        m[perm[j]][j] = entries[j].clone();
    }
    m
}

fn imprimitive_gens(e: u32, n: usize) -> Vec<Mat> {
    let ones = vec![int(1); n];
    let mut gens = Vec::new();
    // s₀ sends e₁ ↦ ζ e₂ and e₂ ↦ ζ⁻¹ e₁
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(0, 1);
    let mut ent = ones.clone();
    ent[0] = zeta(e, 1);
    ent[1] = zeta(e, -1);
    gens.push(monomial(&p, &ent));
    for i in 0..n - 1 {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(i, i + 1);
        gens.push(monomial(&p, &ones));
    }
    gens
}

fn g24_gens() -> Vec<Mat> {
    let s = gauss_sum(7);
    let half = CycloNum::from_ratio(1, 2);
    let b = &(&int(1) + &s) * &half;
    let bc = &(&int(1) - &s) * &half;
    let (o, z, m) = (int(1), int(0), int(-1));
    vec![
        vec![vec![m.clone(), bc.clone(), b.clone()], vec![z.clone(), o.clone(), z.clone()], vec![z.clone(), z.clone(), o.clone()]],
        vec![vec![o.clone(), z.clone(), z.clone()], vec![b, m.clone(), o.clone()], vec![z.clone(), z.clone(), o.clone()]],
        vec![vec![o.clone(), z.clone(), z.clone()], vec![z.clone(), o.clone(), z], vec![bc, o, m]],
    ]
}

/// Canonical name for user spellings such as "G333", "G(5,5,2)", "mu3", "I2(5)".
pub fn canonical_name(spec: &str) -> Option<String> {
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let lower = s.to_ascii_lowercase();
    if let Some(d) = lower.strip_prefix("mu").map(|r| r.trim_start_matches('_')) {
        let d: u32 = d.parse().ok()?;
        return (d >= 2).then(|| format!("mu{d}"));
    }
    if let Some(r) = lower.strip_prefix("i2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = r.parse().ok()?;
        return (m >= 2).then(|| format!("G({m},{m},2)"));
    }
    match lower.as_str() {
        "a1" => return Some("A1".into()),
        "a2" => return Some("A2".into()),
        "g24" => return Some("G24".into()),
        _ => {}
    }
    let rest = lower.strip_prefix('g')?;
    let (e, p, n): (u32, u32, u32) = if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let parts: Vec<u32> = inner.split(',').map(|x| x.parse().ok()).collect::<Option<_>>()?;
        if parts.len() != 3 {
            return None;
        }
        (parts[0], parts[1], parts[2])
    } else if rest.len() == 3 && rest.chars().all(|c| c.is_ascii_digit()) {
        let d: Vec<u32> = rest.chars().map(|c| c.to_digit(10).unwrap()).collect();
        (d[0], d[1], d[2])
    } else {
        return None;
    };
    (e == p && e >= 2 && (n == 2 || n == 3)).then(|| format!("G({e},{e},{n})"))
}

/// Built-in catalog entry by (possibly informal) name.
pub fn builtin(spec: &str) -> Result<CatalogEntry, GroupError> {
    let name = canonical_name(spec).ok_or_else(|| GroupError::UnknownGroup(spec.to_string()))?;
    let refl = vec!["reflection".to_string()];
    let entry = if let Some(d) = name.strip_prefix("mu") {
        let d: u32 = d.parse().expect("canonical");
        CatalogEntry::from_matrices(&name, d, &[vec![vec![zeta(d, 1)]]], Some(Family::Cyclic { d }), refl)
    } else if name == "A1" {
        CatalogEntry::from_matrices(&name, 1, &[vec![vec![int(-1)]]], Some(Family::Cyclic { d: 2 }), refl)
    } else if name == "A2" {
        let s = vec![vec![int(-1), int(1)], vec![int(0), int(1)]];
        let t = vec![vec![int(1), int(0)], vec![int(1), int(-1)]];
        CatalogEntry::from_matrices(&name, 1, &[s, t], Some(Family::Dihedral { m: 3 }), refl)
    } else if name == "G24" {
        CatalogEntry::from_matrices(&name, 7, &g24_gens(), Some(Family::Exceptional { st: 24 }), refl)
    } else {
        let inner = name.trim_start_matches("G(").trim_end_matches(')');
        let parts: Vec<u32> = inner.split(',').map(|x| x.parse().expect("canonical")).collect();
        let (e, n) = (parts[0], parts[2]);
        if e > 12 && n == 3 {
            return Err(GroupError::Invalid(format!("{name}: e ≤ 12 required in rank 3")));
        }
        let gens = imprimitive_gens(e, n as usize);
        let gens = if n == 2 { gens[..2].to_vec() } else { gens };
        let family = if n == 2 { Family::Dihedral { m: e } } else { Family::Imprimitive { e, n } };
        CatalogEntry::from_matrices(&name, e, &gens, Some(family), refl)
    };
    Ok(entry)
}

/// The default catalog shipped with the library.
pub fn default_catalog() -> Catalog {
    let names = ["A1", "A2", "mu3", "G(3,3,2)", "G(5,5,2)", "G(3,3,3)", "G24"];
    Catalog { groups: names.iter().map(|n| builtin(n).expect("builtin")).collect() }
}

impl Catalog {
    pub fn from_json(s: &str) -> Result<Self, GroupError> {
        serde_json::from_str(s).map_err(|e| GroupError::Invalid(format!("catalog: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serialises")
    }

    /// Entry whose name matches after canonicalisation.
    pub fn find(&self, spec: &str) -> Option<&CatalogEntry> {
        let want = canonical_name(spec).unwrap_or_else(|| spec.to_string());
        self.groups.iter().find(|e| e.name == want || e.name == spec)
    }
}

/// Look a group up in `catalog` first, then among the built-ins.
pub fn load_group(spec: &str, catalog: Option<&Catalog>, seed: u64) -> Result<ReflectionGroup, GroupError> {
    if let Some(e) = catalog.and_then(|c| c.find(spec)) {
        return e.load(seed);
    }
    builtin(spec)?.load(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(canonical_name("G333").as_deref(), Some("G(3,3,3)"));
        assert_eq!(canonical_name("G(5,5,2)").as_deref(), Some("G(5,5,2)"));
        assert_eq!(canonical_name("I2(5)").as_deref(), Some("G(5,5,2)"));
        assert_eq!(canonical_name("mu3").as_deref(), Some("mu3"));
        assert_eq!(canonical_name("G(3,1,2)"), None);
    }

    #[test]
    fn json_round_trip() {
        let c = default_catalog();
        let s = c.to_json();
        let back = Catalog::from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), s);
        for e in &back.groups {
            let m = e.matrices().unwrap();
            let again = CatalogEntry::from_matrices(&e.name, e.cyclo_order, &m, e.family, e.flags.clone());
            assert_eq!(&again, e);
        }
    }

    #[test]
    fn builtin_groups() {
        let cases: [(&str, usize, usize, usize, &[u32]); 5] = [
            ("G332", 6, 3, 3, &[2, 3]),
            ("mu3", 3, 3, 2, &[3]),
            ("A2", 6, 3, 3, &[2, 3]),
            ("G333", 54, 10, 9, &[3, 3, 6]),
            ("G24", 336, 12, 21, &[4, 6, 14]),
        ];
        for (name, order, classes, refl, degs) in cases {
            let g = load_group(name, None, 0).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert_eq!(g.num_classes(), classes, "{name}");
            assert_eq!(g.char_table().num_irr(), classes, "{name}");
            assert_eq!(g.num_reflections(), refl, "{name}");
            assert_eq!(g.degrees(), degs, "{name}");
        }
        let g24 = load_group("G24", None, 0).unwrap();
        let mut d = g24.char_table().degrees();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 3, 3, 3, 3, 6, 6, 7, 7, 8, 8]);
    }
}
