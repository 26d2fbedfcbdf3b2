//! The ℤ₂-spets G24(q) for q ≡ 1 mod 4: unipotent character values on the
//! classes of 2-elements, driven by a JSON data bundle.
//!
//! The bundle lists, for every class of 2-elements, the centraliser as a
//! reflection sub-coset of G24 together with the number of such classes as a
//! polynomial in l = 2^{ν₂(q²−1)−3}; for every unipotent character it lists
//! the multiplicities ⟨χ, R_w⟩ on the classes of W. Values then follow from
//! χ(t) = |W_L|⁻¹ Σ_v ⟨χ, R_v⟩ R_v^ℒ(1).

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{coset_average, coset_data, fake_degrees, order_polynomial, CosetData, SubCoset, UnipotentChar, UnipotentError};
use crate::arith::expr::{parse, parse_in};
use crate::arith::format::format_laurent;
use crate::arith::laurent::{phi_poly, x_pow_minus_one_quotient};
use crate::arith::residue::gauss_sum;
use crate::arith::{CycloNum, LaurentX, RatFun};
use crate::hecke::data::{SchurData, SchurRecord};
use crate::group::{load_group, CatalogEntry, ReflectionGroup};

pub const BUNDLE_FILE: &str = "g24.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    /// An expression for √−7 in roots of unity, e.g. `E(7)+E(7)^2+…`.
    pub sqrt_minus7_branch: String,
    /// Definitions of the primed factors of Φ7 and Φ14.
    pub phi7_split: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub label: String,
    pub display: String,
    /// Number of classes of this type, a polynomial in `l`.
    pub count: String,
    /// The count as originally printed, kept when `count` is a correction of it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_count: Option<String>,
    /// Generator words of W_L in the catalog generators of G24.
    pub subgroup: Vec<Vec<usize>>,
    /// The twist w_L in catalog coordinates.
    pub twist_matrix: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultEntry {
    /// A word for some element of the class.
    pub class: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharRecord {
    pub label: String,
    pub family: String,
    /// Row of the character table for principal-series characters.
    pub row: Option<usize>,
    pub degree: String,
    pub mult: Vec<MultEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedRow {
    pub label: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct G24Bundle {
    pub provenance: String,
    pub group: String,
    pub conventions: Conventions,
    pub classes: Vec<ClassRecord>,
    pub characters: Vec<CharRecord>,
    pub published: Vec<PublishedRow>,
}

impl G24Bundle {
    pub fn from_json(s: &str) -> Result<Self, UnipotentError> {
        let b: G24Bundle = serde_json::from_str(s).map_err(|e| UnipotentError::DataValidation(format!("bundle: {e}")))?;
        if b.provenance.trim().is_empty() {
            return Err(UnipotentError::DataValidation("bundle: empty provenance".into()));
        }
        Ok(b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

/// Directory holding data bundles: `SPETS_DATA_DIR` if set, else the crate's `data/`.
pub fn data_dir() -> PathBuf {
    std::env::var_os("SPETS_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")))
}

/// Reads a bundle from an explicit file or from [`data_dir`].
pub fn read_bundle(path: Option<&Path>) -> Result<G24Bundle, UnipotentError> {
    let p = path.map(Path::to_path_buf).unwrap_or_else(|| data_dir().join(BUNDLE_FILE));
    let s = std::fs::read_to_string(&p)
        .map_err(|e| UnipotentError::DataValidation(format!("cannot read {}: {e}", p.display())))?;
    G24Bundle::from_json(&s)
}

/// A class of 2-elements with its centraliser and multiplicity.
#[derive(Clone, Debug)]
pub struct FusionClassDatum {
    pub label: String,
    pub display: String,
    pub count: LaurentX,
    pub centraliser: SubCoset,
    data: CosetData,
}

/// A validated bundle.
pub struct G24Data {
    pub group: ReflectionGroup,
    pub named: HashMap<String, LaurentX>,
    pub classes: Vec<FusionClassDatum>,
    pub characters: Vec<UnipotentChar>,
    pub families: Vec<String>,
    pub published: Vec<Vec<LaurentX>>,
    pub bundle: G24Bundle,
}

fn invalid(msg: impl Into<String>) -> UnipotentError {
    UnipotentError::DataValidation(msg.into())
}

fn constant(src: &str, named: &HashMap<String, LaurentX>) -> Result<CycloNum, UnipotentError> {
    let p = parse(src, named)?;
    if !p.is_constant() {
        return Err(invalid(format!("'{src}' is not a constant")));
    }
    Ok(p.coeff(0))
}

/// Count polynomials must give nonnegative integers at l = 1, 2, 4, …, 2^10.
fn check_count(label: &str, count: &LaurentX) -> Result<(), UnipotentError> {
    for k in 0..=10u32 {
        let l = BigRational::from_integer(BigInt::from(1u64 << k));
        let v = count.evaluate(&l)?.as_rational().ok_or_else(|| invalid(format!("{label}: irrational count")))?;
        if !v.is_integer() || v.is_negative() {
            return Err(invalid(format!("{label}: count {v} at l = {l}")));
        }
    }
    Ok(())
}

/// φ_{d,b} must match the row's degree and the lowest power of its fake degree.
fn check_label(label: &str, degree: i64, fake: &LaurentX) -> Result<(), UnipotentError> {
    let inner = label.strip_prefix("phi_{").and_then(|s| s.strip_suffix('}'));
    let Some((d, b)) = inner.and_then(|s| s.split_once(',')) else {
        return Ok(());
    };
    let ok = d.parse::<i64>().ok() == Some(degree) && b.parse::<i64>().ok() == fake.low();
    if ok {
        Ok(())
    } else {
        Err(invalid(format!("{label}: row has degree {degree} and fake degree {fake}")))
    }
}

pub fn load(bundle: G24Bundle, seed: u64) -> Result<G24Data, UnipotentError> {
    let group = load_group(&bundle.group, None, seed)?;
    let g = &group;

    let mut named = HashMap::new();
    let (lhs, rhs) = bundle
        .conventions
        .sqrt_minus7_branch
        .split_once('=')
        .ok_or_else(|| invalid("sqrt_minus7_branch must read 'sqrt(-7) = …'"))?;
    if lhs.trim() != "sqrt(-7)" || constant(rhs, &named)? != gauss_sum(7) {
        return Err(invalid(format!("unsupported branch {}", bundle.conventions.sqrt_minus7_branch)));
    }
    for (k, v) in &bundle.conventions.phi7_split {
        let p = parse(v, &named)?;
        named.insert(k.clone(), p);
    }
    for (a, b, m) in [("Phi7'", "Phi7''", 7), ("Phi14'", "Phi14''", 14)] {
        let (pa, pb) = (named.get(a), named.get(b));
        match (pa, pb) {
            (Some(pa), Some(pb)) if (pa * pb) == phi_poly(m) => {}
            _ => return Err(invalid(format!("{a}·{b} must equal Phi{m}"))),
        }
    }

    let catalog = crate::group::builtin(&bundle.group)?;
    let classes = bundle
        .classes
        .iter()
        .map(|c| {
            let count = parse_in(&c.count, 'l', &named)?;
            check_count(&c.label, &count)?;
            let gens = c.subgroup.iter().map(|w| g.element_from_word(w)).collect::<Result<Vec<_>, _>>()?;
            let entry = CatalogEntry { generators: vec![c.twist_matrix.clone()], ..catalog.clone() };
            let m = entry.matrices()?.pop().expect("one matrix");
            let twist = g.index_of(&m).ok_or_else(|| invalid(format!("{}: twist is not in W", c.label)))?;
            let centraliser = SubCoset::new(g, g.generate(&gens), twist)?;
            let data = coset_data(g, &centraliser)?;
            Ok(FusionClassDatum { label: c.label.clone(), display: c.display.clone(), count, centraliser, data })
        })
        .collect::<Result<Vec<_>, UnipotentError>>()?;
    if classes.first().map(|c| c.centraliser.elements.len()) != Some(g.order()) {
        return Err(invalid("the first class must be the identity with centraliser W"));
    }

    let fakes = fake_degrees(g)?;
    let mut characters = Vec::new();
    let mut families = Vec::new();
    for r in &bundle.characters {
        let mut mult: Vec<Option<CycloNum>> = vec![None; g.num_classes()];
        for e in &r.mult {
            let c = g.class_of(g.element_from_word(&e.class)?);
            if mult[c].replace(constant(&e.value, &named)?).is_some() {
                return Err(invalid(format!("{}: class {c} listed twice", r.label)));
            }
        }
        let mult = mult
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.ok_or(UnipotentError::MissingMultiplicity(c)))
            .collect::<Result<Vec<_>, _>>()?;
        let degree = parse(&r.degree, &named)?;
        let chi = UnipotentChar { label: r.label.clone(), mult, degree };
        let at_one = coset_average(g, &classes[0].data, &chi.mult)?;
        if at_one.to_laurent().as_ref() != Some(&chi.degree) {
            return Err(invalid(format!("{}: degree {} but the projection gives {at_one}", r.label, chi.degree)));
        }
        if let Some(row) = r.row {
            if row >= fakes.len() {
                return Err(invalid(format!("{}: row {row} out of range", r.label)));
            }
            check_label(&r.label, g.char_table().degree(row), &fakes[row])?;
        }
        characters.push(chi);
        families.push(r.family.clone());
    }

    let published = bundle
        .published
        .iter()
        .zip(&characters)
        .map(|(p, chi)| {
            if p.label != chi.label || p.values.len() != classes.len() {
                return Err(invalid(format!("published row {} does not line up", p.label)));
            }
            p.values.iter().map(|v| Ok(parse(v, &named)?)).collect::<Result<Vec<_>, UnipotentError>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if !published.is_empty() && published.len() != characters.len() {
        return Err(invalid("published table must cover every character"));
    }

    Ok(G24Data { group, named, classes, characters, families, published, bundle })
}

/// Rows are characters, columns classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G24Table {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    #[serde(serialize_with = "ser_matrix")]
    pub values: Vec<Vec<LaurentX>>,
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<LaurentX>], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|p| format_laurent(p, "q")).collect()).collect();
    v.serialize(s)
}

/// Symbolic values χ(t) as polynomials in q.
pub fn g24_table(d: &G24Data) -> Result<G24Table, UnipotentError> {
    let cells: Vec<(usize, usize)> =
        (0..d.characters.len()).flat_map(|i| (0..d.classes.len()).map(move |j| (i, j))).collect();
    let vals = cells
        .par_iter()
        .map(|&(i, j)| {
            let v = coset_average(&d.group, &d.classes[j].data, &d.characters[i].mult)?;
            v.to_laurent().ok_or_else(|| UnipotentError::NotPolynomial(format!("{} at {}", d.characters[i].label, d.classes[j].label)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ncol = d.classes.len();
    Ok(G24Table {
        rows: d.characters.iter().map(|c| c.label.clone()).collect(),
        cols: d.classes.iter().map(|c| c.display.clone()).collect(),
        values: vals.chunks(ncol).map(|c| c.to_vec()).collect(),
    })
}

/// Values at x = q, summing numerically evaluated R_v^ℒ(1).
pub fn g24_table_numeric(d: &G24Data, q: &BigRational) -> Result<Vec<Vec<CycloNum>>, UnipotentError> {
    let g = &d.group;
    let units: Vec<Vec<CycloNum>> = d
        .classes
        .iter()
        .map(|c| c.data.units.iter().map(|u| u.evaluate(q)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    d.characters
        .iter()
        .map(|chi| {
            d.classes
                .iter()
                .zip(&units)
                .map(|(c, us)| {
                    let s = c.data.coset.iter().zip(us).fold(CycloNum::zero(), |acc, (&v, u)| &acc + &(&chi.mult[g.class_of(v)] * u));
                    Ok(s.scale(&BigRational::new(BigInt::one(), BigInt::from(c.centraliser.elements.len()))))
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub row: String,
    pub col: String,
    pub computed: String,
    pub published: String,
}

/// Entries whose canonical text differs from the published table.
pub fn compare_published(d: &G24Data, t: &G24Table) -> Vec<TableDiff> {
    let mut out = Vec::new();
    for (i, row) in d.published.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            let (a, b) = (format_laurent(&t.values[i][j], "q"), format_laurent(want, "q"));
            if a != b {
                out.push(TableDiff { row: t.rows[i].clone(), col: t.cols[j].clone(), computed: a, published: b });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusRow {
    pub label: String,
    pub sum: String,
    /// ν₂ of the sum; `None` when the sum vanishes.
    pub valuation: Option<i64>,
    /// The same with |𝔾 : C_𝔾(t)| replaced by its x′-part.
    pub valuation_x_prime: Option<i64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G24Frobenius {
    pub q: i64,
    pub l: u64,
    pub required: u32,
    pub rows: Vec<FrobeniusRow>,
}

impl G24Frobenius {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

fn nu2(mut n: BigInt) -> u32 {
    let mut k = 0;
    while !n.is_zero() && n.is_even() {
        n /= 2;
        k += 1;
    }
    k
}

fn valuation(c: &CycloNum) -> Option<i64> {
    c.local_valuation(2)
}

/// Schur elements of the principal series, 𝔣_φ = P_W / Deg ρ_φ with P_W = Π (x^{d_i} − 1)/(x − 1),
/// in the row order of the character table.
pub fn schur_data(d: &G24Data) -> Result<SchurData, UnipotentError> {
    let g = &d.group;
    let pw = g.degrees().iter().fold(LaurentX::one(), |acc, &k| &acc * &x_pow_minus_one_quotient(k as i64));
    let characters = (0..g.char_table().num_irr())
        .map(|i| {
            let k = d
                .bundle
                .characters
                .iter()
                .position(|c| c.row == Some(i))
                .ok_or_else(|| invalid(format!("no principal-series character on row {i}")))?;
            let f = RatFun::new(pw.clone(), d.characters[k].degree.clone())?;
            Ok(SchurRecord {
                label: format!("chi{i}"),
                num_coeffs: f.num().into(),
                den_coeffs: f.den().into(),
                z: f.num().denom().max(f.den().denom()),
            })
        })
        .collect::<Result<Vec<_>, UnipotentError>>()?;
    Ok(SchurData { group_type: g.name().to_string(), parameters: vec!["x".into(), "-1".into()], characters })
}

/// Σ_t count(l)·|𝔾 : C_𝔾(t)|(q)·χ(t)(q) for each character, with its 2-adic valuation.
/// Passing requires ν₂ ≥ ν₂(|S|) = 10 + 3ν₂(l).
pub fn g24_frobenius(d: &G24Data, q: i64) -> Result<G24Frobenius, UnipotentError> {
    if q.rem_euclid(4) != 1 {
        return Err(invalid(format!("q = {q} is not 1 mod 4")));
    }
    let qq = BigInt::from(q);
    let f = nu2(&qq * &qq - 1);
    let l = 1u64 << (f - 3);
    let required = 10 + 3 * (f - 3);
    let qr = BigRational::from_integer(qq);
    let lr = BigRational::from_integer(BigInt::from(l));
    let g = &d.group;
    let whole = order_polynomial(g, &(0..g.order()).collect::<Vec<_>>())?;
    let (top, top_x) = (whole.value.evaluate(&qr)?, whole.x_prime.evaluate(&qr)?);
    let weights = d
        .classes
        .iter()
        .map(|c| {
            let n = g.reflections_in(&c.centraliser.elements).len() as i32;
            let xp = c.data.x_prime.evaluate(&qr)?;
            let full = &xp * &CycloNum::from_rational(qr.pow(n));
            let count = c.count.evaluate(&lr)?;
            Ok((&count * &(&top * &full.inv()?), &count * &(&top_x * &xp.inv()?)))
        })
        .collect::<Result<Vec<_>, UnipotentError>>()?;
    let values = g24_table_numeric(d, &qr)?;
    let rows = d
        .characters
        .iter()
        .zip(&values)
        .map(|(chi, vals)| {
            let (mut s, mut sx) = (CycloNum::zero(), CycloNum::zero());
            for ((w, wx), v) in weights.iter().zip(vals) {
                s = &s + &(w * v);
                sx = &sx + &(wx * v);
            }
            let val = valuation(&s);
            let valuation_x_prime = valuation(&sx);
            Ok(FrobeniusRow {
                label: chi.label.clone(),
                sum: crate::arith::format::format_cyclo(&s),
                pass: val.is_none_or(|v| v >= required as i64),
                valuation: val,
                valuation_x_prime,
            })
        })
        .collect::<Result<Vec<_>, UnipotentError>>()?;
    Ok(G24Frobenius { q, l, required, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu2_of_q_squared_minus_one() {
        assert_eq!(nu2(BigInt::from(24)), 3);
        assert_eq!(nu2(BigInt::from(288)), 5);
    }

    #[test]
    fn labels_are_checked() {
        let f = LaurentX::from_ints(&[0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1]);
        assert!(check_label("phi_{3,1}", 3, &f).is_ok());
        assert!(check_label("phi_{3,3}", 3, &f).is_err());
        assert!(check_label("B2:2", 6, &f).is_ok());
    }

    #[test]
    fn provenance_is_mandatory() {
        let b = read_bundle(None).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&b.to_json()).unwrap();
        assert_eq!(G24Bundle::from_json(&v.to_string()).unwrap(), b);
        v["provenance"] = serde_json::Value::String("  ".into());
        assert!(G24Bundle::from_json(&v.to_string()).is_err());
        v.as_object_mut().unwrap().remove("provenance");
        assert!(G24Bundle::from_json(&v.to_string()).is_err());
    }
}
