//! The partial character table of the principal block B₀ in the coprime
//! case: labels γ_{θ,φ}, values on torus points and the checks that go with
//! them (specialisation at x = 1, orthogonality, Frobenius divisibility and
//! integrality of restrictions to T).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::expr::parse;
use crate::arith::format::{format_cyclo, format_laurent};
use crate::arith::{ArithError, CycloNum, LaurentX};
use crate::group::subgroup::restrict_between;
use crate::group::{GroupError, ReflectionGroup, SubgroupData};
use crate::hecke::{block_degree, trivial_index, HeckeError, SchurRegistry};
use crate::torus::{Torus, TorusError};
use crate::unipotent::{index_polynomial, UnipotentError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("the block table needs an odd prime, got ℓ = 2")]
    EvenPrime,
    #[error("a = 0 gives the trivial torus")]
    TrivialTorus,
    #[error("ℓ = {ell} divides |W| = {order}")]
    NotCoprime { ell: u64, order: usize },
    #[error("q = {q} is not congruent to 1 modulo {ell}")]
    BadQ { q: i64, ell: u64 },
    #[error("table format: {0}")]
    Format(String),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Unipotent(#[from] UnipotentError),
}

/// γ_{θ,φ}: θ is the smallest member of its W-orbit in Irr(T), φ indexes Irr(W(θ)).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockCharLabel {
    pub theta: u32,
    pub phi: usize,
}

/// A torus together with the Schur-element registry of its reflection group.
pub struct BlockContext<'g> {
    torus: Torus<'g>,
    registry: SchurRegistry<'g>,
}

impl<'g> BlockContext<'g> {
    pub fn new(group: &'g ReflectionGroup, ell: u64, a: u32) -> Result<Self, BlockError> {
        if ell == 2 {
            return Err(BlockError::EvenPrime);
        }
        if a == 0 {
            return Err(BlockError::TrivialTorus);
        }
        if (group.order() as u64).is_multiple_of(ell) {
            return Err(BlockError::NotCoprime { ell, order: group.order() });
        }
        let torus = Torus::new(group, ell, a)?;
        Ok(BlockContext { torus, registry: SchurRegistry::new(group) })
    }

    pub fn torus(&self) -> &Torus<'g> {
        &self.torus
    }

    pub fn group(&self) -> &'g ReflectionGroup {
        self.torus.group()
    }

    pub fn registry(&self) -> &SchurRegistry<'g> {
        &self.registry
    }

    fn sub(&self, elems: &[usize]) -> Result<Arc<SubgroupData>, BlockError> {
        Ok(self.group().subgroup(elems)?)
    }

    /// W(θ) for a character in dual coordinates.
    pub fn theta_stabiliser(&self, theta: u32) -> Vec<usize> {
        self.torus.dual_centraliser(theta)
    }

    /// One label per W-orbit of θ and irreducible character of W(θ).
    pub fn labels(&self) -> Result<Vec<BlockCharLabel>, BlockError> {
        let mut out = Vec::new();
        for orbit in self.torus.dual_orbits() {
            let theta = orbit[0];
            let n = self.sub(&self.theta_stabiliser(theta))?.table.num_irr();
            out.extend((0..n).map(|phi| BlockCharLabel { theta, phi }));
        }
        Ok(out)
    }

    /// Torus orbit representatives, the columns of the table.
    pub fn columns(&self) -> Vec<u32> {
        self.torus.orbits().iter().map(|o| o[0]).collect()
    }

    /// γ(1) = 𝔣^W_1 / 𝔣^{W(θ)}_φ.
    pub fn degree(&self, label: &BlockCharLabel) -> Result<LaurentX, BlockError> {
        self.value(label, 0)
    }

    /// Σ_λ ⟨Res φ, λ⟩ 𝔣^Y_1 / 𝔣^{Y(θ)}_λ with Y(θ) = Y ∩ W(θ).
    fn inner_sum(&self, wtheta: &SubgroupData, phi: usize, y: &[usize], ytheta: &[usize]) -> Result<LaurentX, BlockError> {
        let ysub = self.sub(y)?;
        let ytsub = self.sub(ytheta)?;
        let top = &self.registry.schur(&ysub)?[trivial_index(&ysub)];
        let bottom = self.registry.schur(&ytsub)?;
        let res = restrict_between(wtheta, &wtheta.table.values[phi], &ytsub);
        let mut acc = LaurentX::zero();
        for (lam, f) in ytsub.table.values.iter().zip(bottom.iter()) {
            let m = ytsub.inner(&res, lam);
            if !m.is_zero() {
                acc = &acc + &block_degree(top, f)?.scale(&m);
            }
        }
        Ok(acc)
    }

    /// γ_{θ,φ}(t) = Σ_{t' ∈ W·t} |Y(θ)|/|W(θ)| · θ(t') · Σ_λ ⟨Res φ, λ⟩ 𝔣^{Y}_1/𝔣^{Y(θ)}_λ, with Y = C_W(t').
    pub fn value(&self, label: &BlockCharLabel, t: u32) -> Result<LaurentX, BlockError> {
        let wt = self.theta_stabiliser(label.theta);
        let wtheta = self.sub(&wt)?;
        let mut groups: BTreeMap<(Vec<usize>, Vec<usize>), CycloNum> = BTreeMap::new();
        let orbit = &self.torus.orbits()[self.torus.orbit_of(t)];
        for &p in orbit {
            let y = self.torus.stabiliser_of(p);
            let yt = intersect(&y, &wt);
            let e = groups.entry((y, yt)).or_insert_with(CycloNum::zero);
            *e = &*e + &self.torus.char_value(label.theta, p);
        }
        let mut acc = LaurentX::zero();
        for ((y, yt), s) in groups {
            if s.is_zero() {
                continue;
            }
            let w = CycloNum::from_ratio(yt.len() as i64, wt.len() as i64);
            acc = &acc + &self.inner_sum(&wtheta, label.phi, &y, &yt)?.scale(&(&w * &s));
        }
        Ok(acc)
    }

    /// The full table over all labels and column representatives.
    pub fn table(&self) -> Result<PartialTable, BlockError> {
        let rows = self.labels()?;
        let cols = self.columns();
        let cells: Vec<(usize, usize)> = (0..rows.len()).flat_map(|i| (0..cols.len()).map(move |j| (i, j))).collect();
        let values: Vec<LaurentX> =
            cells.par_iter().map(|&(i, j)| self.value(&rows[i], cols[j])).collect::<Result<_, _>>()?;
        let entries = values.chunks(cols.len().max(1)).map(|c| c.to_vec()).collect();
        Ok(PartialTable {
            group: self.group().name().to_string(),
            ell: self.torus.ell(),
            a: self.torus.a(),
            rank: self.torus.rank(),
            modulus: self.torus.modulus(),
            rows,
            cols,
            entries,
        })
    }

    /// dim B₀ for the centraliser with Weyl group `y` (all of W gives dim B₀ itself):
    /// Σ_{θ ∈ Irr(T)} |Y(θ)|/|Y| Σ_μ (𝔣^Y_1/𝔣^{Y(θ)}_μ)².
    pub fn dim_b0_of(&self, y: &[usize]) -> Result<LaurentX, BlockError> {
        let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        for d in 0..self.torus.size() as u32 {
            let yt: Vec<usize> = y.iter().copied().filter(|&w| self.torus.act_dual(w, d) == d).collect();
            *counts.entry(yt).or_default() += 1;
        }
        let ysub = self.sub(y)?;
        let top = &self.registry.schur(&ysub)?[trivial_index(&ysub)];
        let mut acc = LaurentX::zero();
        for (yt, n) in counts {
            let ytsub = self.sub(&yt)?;
            let mut s = LaurentX::zero();
            for f in self.registry.schur(&ytsub)?.iter() {
                s = &s + &block_degree(top, f)?.pow(2);
            }
            acc = &acc + &s.scale(&CycloNum::from_ratio((n * yt.len() as u64) as i64, y.len() as i64));
        }
        Ok(acc)
    }

    pub fn dim_b0(&self) -> Result<LaurentX, BlockError> {
        self.dim_b0_of(&(0..self.group().order()).collect::<Vec<_>>())
    }

    /// Entry |_{x=1} against the induced character ρ_{θ,φ}(t) = φ(1)/|W(θ)| Σ_{w ∈ W} θ(w·t).
    pub fn specialise_x1_check(&self, table: &PartialTable) -> Result<X1Report, BlockError> {
        let g = self.group();
        let mut mismatches = Vec::new();
        let mut checked = 0;
        for (i, row) in table.rows.iter().enumerate() {
            let wt = self.theta_stabiliser(row.theta);
            let phi1 = self.sub(&wt)?.table.degree(row.phi);
            for (j, &t) in table.cols.iter().enumerate() {
                let mut s = CycloNum::zero();
                for w in 0..g.order() {
                    s = &s + &self.torus.char_value(row.theta, self.torus.act(w, t));
                }
                let rho = &s * &CycloNum::from_ratio(phi1, wt.len() as i64);
                let got = table.entries[i][j].at_one();
                checked += 1;
                if got != rho {
                    mismatches.push(Witness {
                        label: table.row_label(i),
                        t: table.col_label(j),
                        value: format_cyclo(&got),
                        expected: format_cyclo(&rho),
                    });
                }
            }
        }
        Ok(X1Report { checked, mismatches })
    }

    /// ζ ↦ ζ⁻¹ on ℓ-power roots of unity, identity on the group's own field.
    pub fn torus_conjugation(&self) -> i64 {
        let m = self.torus.modulus() as i64;
        let f = (crate::arith::cyclo::lcm(self.group().field(), 2)) as i64;
        // k ≡ −1 mod m, k ≡ 1 mod f
        let inv = crate::arith::residue::inv_mod((f % m) as u64, m as u64).expect("coprime moduli") as i64;
        let k = 1 + f * ((-2 * inv).rem_euclid(m));
        k.rem_euclid(m * f)
    }

    /// Σ_γ γ(t)·γ(t′⁻¹), compared with the conjugate form and with 0 or dim B₀(t).
    pub fn orthogonality_check(&self, table: &PartialTable, t: u32, t2: u32) -> Result<OrthogonalityReport, BlockError> {
        let j = table.column_of(&self.torus, t);
        let j2 = table.column_of(&self.torus, t2);
        let jinv = table.column_of(&self.torus, self.torus.neg(table.cols[j2]));
        let k = self.torus_conjugation();
        let mut inverse_form = LaurentX::zero();
        let mut conjugate_form = LaurentX::zero();
        for row in &table.entries {
            inverse_form = &inverse_form + &(&row[j] * &row[jinv]);
            conjugate_form = &conjugate_form + &(&row[j] * &row[j2].map_coeffs(|c| c.galois(k)));
        }
        let conjugate = j == j2;
        let expected =
            if conjugate { self.dim_b0_of(&self.torus.stabiliser_of(table.cols[j]))? } else { LaurentX::zero() };
        Ok(OrthogonalityReport {
            t: table.col_label(j),
            t2: table.col_label(j2),
            conjugate,
            forms_agree: inverse_form == conjugate_form,
            pass: inverse_form == expected && conjugate_form == expected,
            value: format_laurent(&inverse_form, "x"),
            expected: format_laurent(&expected, "x"),
        })
    }

    /// Every pair of columns.
    pub fn orthogonality_all(&self, table: &PartialTable) -> Result<Vec<OrthogonalityReport>, BlockError> {
        let pairs: Vec<(u32, u32)> =
            table.cols.iter().flat_map(|&a| table.cols.iter().map(move |&b| (a, b))).collect();
        pairs.par_iter().map(|&(a, b)| self.orthogonality_check(table, a, b)).collect()
    }

    fn check_q(&self, q: i64) -> Result<BigRational, BlockError> {
        let ell = self.torus.ell();
        if (q - 1).rem_euclid(ell as i64) != 0 {
            return Err(BlockError::BadQ { q, ell });
        }
        Ok(BigRational::from_integer(BigInt::from(q)))
    }

    /// ν_ℓ of Σ_{t ∈ T/W} |𝔾 : C_𝔾(t)|(q)·χ(t)(q) for every row; passes when ≥ a·n.
    pub fn frobenius_check(&self, table: &PartialTable, q: i64) -> Result<FrobeniusReport, BlockError> {
        let qr = self.check_q(q)?;
        let g = self.group();
        let weights: Vec<CycloNum> = table
            .cols
            .iter()
            .map(|&t| Ok(index_polynomial(g, &self.torus.stabiliser_of(t))?.evaluate(&qr)?))
            .collect::<Result<_, BlockError>>()?;
        let required = self.torus.a() * self.torus.rank() as u32;
        let ell = self.torus.ell() as u32;
        let rows = table
            .entries
            .par_iter()
            .enumerate()
            .map(|(i, row)| {
                let mut s = CycloNum::zero();
                for (v, w) in row.iter().zip(&weights) {
                    s = &s + &(&v.evaluate(&qr)? * w);
                }
                let valuation = s.local_valuation(ell);
                Ok(FrobeniusRow {
                    label: table.row_label(i),
                    sum: format_cyclo(&s),
                    valuation,
                    pass: valuation.is_none_or(|v| v >= required as i64),
                })
            })
            .collect::<Result<Vec<_>, BlockError>>()?;
        Ok(FrobeniusReport { q, required, rows })
    }

    /// ⟨χ|_{x=q}, ψ⟩_T for ψ running over W-orbit representatives of Irr(T); integrality is tested at ℓ.
    pub fn restriction_check(&self, table: &PartialTable, q: i64) -> Result<RestrictionReport, BlockError> {
        let qr = self.check_q(q)?;
        let m = self.torus.modulus();
        let ell = self.torus.ell() as u32;
        let size = self.torus.size();
        let psis: Vec<u32> = self.torus.dual_orbits().iter().map(|o| o[0]).collect();
        let rows = table
            .entries
            .par_iter()
            .enumerate()
            .map(|(i, row)| {
                let vals: Vec<CycloNum> = row.iter().map(|v| v.evaluate(&qr)).collect::<Result<_, _>>()?;
                let mut coefficients = Vec::with_capacity(psis.len());
                let mut integral = true;
                for &psi in &psis {
                    let mut buckets = vec![CycloNum::zero(); m as usize];
                    for (j, orbit) in self.torus.orbits().iter().enumerate() {
                        for &t in orbit {
                            let k = self.torus.pairing(psi, t) as usize;
                            buckets[k] = &buckets[k] + &vals[j];
                        }
                    }
                    let mut c = CycloNum::zero();
                    for (k, b) in buckets.iter().enumerate() {
                        if !b.is_zero() {
                            c = &c + &(b * &CycloNum::root_of_unity(m as u32, -(k as i64)));
                        }
                    }
                    let c = &c * &CycloNum::from_ratio(1, size as i64);
                    integral &= c.local_valuation(ell).is_none_or(|v| v >= 0);
                    coefficients.push(format_cyclo(&c));
                }
                Ok(RestrictionRow { label: table.row_label(i), coefficients, integral })
            })
            .collect::<Result<Vec<_>, BlockError>>()?;
        Ok(RestrictionReport { q, psi: psis.iter().map(|&p| coord_label(&self.torus.coords(p))).collect(), rows })
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn coord_label(c: &[u64]) -> String {
    format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
}

fn parse_coords(s: &str) -> Result<Vec<u64>, BlockError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| BlockError::Format(format!("bad coordinates '{s}'")))?;
    inner.split_whitespace().map(|x| x.parse().map_err(|_| BlockError::Format(format!("bad coordinate '{x}'")))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub t: String,
    pub value: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct X1Report {
    pub checked: usize,
    pub mismatches: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityReport {
    pub t: String,
    pub t2: String,
    pub conjugate: bool,
    pub forms_agree: bool,
    pub pass: bool,
    pub value: String,
    pub expected: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusRow {
    pub label: String,
    pub sum: String,
    /// ℓ-local valuation of the sum; None when it vanishes.
    pub valuation: Option<i64>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub q: i64,
    pub required: u32,
    pub rows: Vec<FrobeniusRow>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionRow {
    pub label: String,
    pub coefficients: Vec<String>,
    pub integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub q: i64,
    pub psi: Vec<String>,
    pub rows: Vec<RestrictionRow>,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.integral)
    }
}

/// Rows γ_{θ,φ}, columns W-orbit representatives t, exact entries γ(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    pub group: String,
    pub ell: u64,
    pub a: u32,
    pub rank: usize,
    pub modulus: u64,
    pub rows: Vec<BlockCharLabel>,
    pub cols: Vec<u32>,
    pub entries: Vec<Vec<LaurentX>>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    group: String,
    ell: u64,
    a: u32,
    rows: Vec<RowJson>,
    cols: Vec<String>,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    theta: String,
    phi: usize,
}

impl PartialTable {
    fn coords(&self, p: u32) -> Vec<u64> {
        let mut c = vec![0u64; self.rank];
        let mut p = p as u64;
        for i in (0..self.rank).rev() {
            c[i] = p % self.modulus;
            p /= self.modulus;
        }
        c
    }

    fn index(&self, c: &[u64]) -> Result<u32, BlockError> {
        if c.len() != self.rank || c.iter().any(|&x| x >= self.modulus) {
            return Err(BlockError::Format(format!("coordinates {c:?} outside the torus")));
        }
        Ok(c.iter().fold(0u64, |acc, &x| acc * self.modulus + x) as u32)
    }

    pub fn row_label(&self, i: usize) -> String {
        format!("theta={};phi={}", coord_label(&self.coords(self.rows[i].theta)), self.rows[i].phi)
    }

    pub fn col_label(&self, j: usize) -> String {
        coord_label(&self.coords(self.cols[j]))
    }

    /// Column holding the orbit of `t`.
    pub fn column_of(&self, torus: &Torus<'_>, t: u32) -> usize {
        let rep = torus.representative(t);
        self.cols.iter().position(|&c| c == rep).expect("columns cover every orbit")
    }

    /// The column t = 0.
    pub fn degrees(&self) -> Vec<LaurentX> {
        let j = self.cols.iter().position(|&c| c == 0).expect("identity column");
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn to_json(&self) -> String {
        let j = TableJson {
            group: self.group.clone(),
            ell: self.ell,
            a: self.a,
            rows: self.rows.iter().map(|r| RowJson { theta: coord_label(&self.coords(r.theta)), phi: r.phi }).collect(),
            cols: (0..self.cols.len()).map(|j| self.col_label(j)).collect(),
            entries: self.entries.iter().map(|r| r.iter().map(|v| format_laurent(v, "x")).collect()).collect(),
        };
        serde_json::to_string_pretty(&j).expect("table serialises")
    }

    fn shell(group: String, ell: u64, a: u32, rank: usize) -> Result<Self, BlockError> {
        let modulus = ell.checked_pow(a).ok_or_else(|| BlockError::Format("modulus overflow".into()))?;
        Ok(PartialTable { group, ell, a, rank, modulus, rows: vec![], cols: vec![], entries: vec![] })
    }

    pub fn from_json(s: &str) -> Result<Self, BlockError> {
        let j: TableJson = serde_json::from_str(s).map_err(|e| BlockError::Format(e.to_string()))?;
        let rank = j.cols.first().map(|c| parse_coords(c).map(|v| v.len())).transpose()?.unwrap_or(0);
        let mut t = Self::shell(j.group, j.ell, j.a, rank)?;
        for r in &j.rows {
            let theta = t.index(&parse_coords(&r.theta)?)?;
            t.rows.push(BlockCharLabel { theta, phi: r.phi });
        }
        for c in &j.cols {
            let p = t.index(&parse_coords(c)?)?;
            t.cols.push(p);
        }
        t.entries = parse_entries(&j.entries, t.cols.len())?;
        if t.entries.len() != t.rows.len() {
            return Err(BlockError::Format("row count differs from entry count".into()));
        }
        Ok(t)
    }

    /// Header `group,ell,a` metadata line, then `theta,phi,<t>...` and one line per row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(vec![]);
        let meta = [format!("group={}", self.group), format!("ell={}", self.ell), format!("a={}", self.a)];
        w.write_record(&meta).expect("in-memory write");
        let mut header = vec!["theta".to_string(), "phi".to_string()];
        header.extend((0..self.cols.len()).map(|j| self.col_label(j)));
        w.write_record(&header).expect("in-memory write");
        for (i, r) in self.rows.iter().enumerate() {
            let mut rec = vec![coord_label(&self.coords(r.theta)), r.phi.to_string()];
            rec.extend(self.entries[i].iter().map(|v| format_laurent(v, "x")));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn from_csv(s: &str) -> Result<Self, BlockError> {
        let mut rd = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(s.as_bytes());
        let mut recs = rd.records();
        let mut next = || -> Result<Option<csv::StringRecord>, BlockError> {
            recs.next().transpose().map_err(|e| BlockError::Format(e.to_string()))
        };
        let meta = next()?.ok_or_else(|| BlockError::Format("empty table".into()))?;
        let field = |k: &str| -> Result<String, BlockError> {
            meta.iter()
                .find_map(|f| f.strip_prefix(k).and_then(|r| r.strip_prefix('=')))
                .map(str::to_string)
                .ok_or_else(|| BlockError::Format(format!("missing {k}")))
        };
        let num = |k: &str| -> Result<u64, BlockError> {
            field(k)?.parse().map_err(|_| BlockError::Format(format!("bad {k}")))
        };
        let header = next()?.ok_or_else(|| BlockError::Format("missing header".into()))?;
        if header.len() < 3 || &header[0] != "theta" || &header[1] != "phi" {
            return Err(BlockError::Format("header must start with theta,phi".into()));
        }
        let rank = parse_coords(&header[2])?.len();
        let mut t = Self::shell(field("group")?, num("ell")?, num("a")? as u32, rank)?;
        for c in header.iter().skip(2) {
            let p = t.index(&parse_coords(c)?)?;
            t.cols.push(p);
        }
        let mut raw = Vec::new();
        while let Some(rec) = next()? {
            let theta = t.index(&parse_coords(&rec[0])?)?;
            let phi = rec[1].parse().map_err(|_| BlockError::Format(format!("bad phi '{}'", &rec[1])))?;
            t.rows.push(BlockCharLabel { theta, phi });
            raw.push(rec.iter().skip(2).map(str::to_string).collect::<Vec<_>>());
        }
        t.entries = parse_entries(&raw, t.cols.len())?;
        Ok(t)
    }
}

fn parse_entries(raw: &[Vec<String>], width: usize) -> Result<Vec<Vec<LaurentX>>, BlockError> {
    let named = HashMap::new();
    raw.iter()
        .map(|r| {
            if r.len() != width {
                return Err(BlockError::Format(format!("row has {} entries, expected {width}", r.len())));
            }
            r.iter().map(|v| Ok(parse(v, &named)?)).collect()
        })
        .collect()
}

/// Σ_t γ(1)²|_{x=1}; equals |T||W| when the degrees are right.
pub fn degree_square_sum_at_one(table: &PartialTable) -> CycloNum {
    table.degrees().iter().fold(CycloNum::zero(), |acc, d| &acc + &d.pow(2).at_one())
}

/// 𝔣^{W_t}_1/𝔣^{W_t}_{φ|W_t} for linear φ, the expected γ_{1,φ}(t).
pub fn linear_restriction_degree(ctx: &BlockContext<'_>, phi: &[CycloNum], t: u32) -> Result<LaurentX, BlockError> {
    let whole = ctx.group().whole()?;
    let y = ctx.sub(&ctx.torus.stabiliser_of(t))?;
    let res = restrict_between(&whole, phi, &y);
    let idx = y.table.find(&res).ok_or_else(|| BlockError::Format("restriction is not irreducible".into()))?;
    let s = ctx.registry.schur(&y)?;
    Ok(block_degree(&s[trivial_index(&y)], &s[idx])?)
}

/// The x = q value of dim B₀ as an exact number.
pub fn evaluate_dim(dim: &LaurentX, q: i64) -> Result<CycloNum, BlockError> {
    Ok(dim.evaluate(&BigRational::from_integer(BigInt::from(q)))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::load_group;

    #[test]
    fn a1_degrees_and_dim() {
        let g = load_group("A1", None, 0).unwrap();
        let c = BlockContext::new(&g, 3, 1).unwrap();
        let t = c.table().unwrap();
        assert_eq!(t.rows.len(), 3);
        let want = parse("1 + x^2 + (x+1)^2", &HashMap::new()).unwrap();
        assert_eq!(c.dim_b0().unwrap(), want);
        assert_eq!(degree_square_sum_at_one(&t), CycloNum::from_int(6));
    }

    #[test]
    fn a1_frobenius_and_restriction() {
        let g = load_group("A1", None, 0).unwrap();
        let c = BlockContext::new(&g, 3, 1).unwrap();
        let t = c.table().unwrap();
        let f = c.frobenius_check(&t, 4).unwrap();
        assert!(f.passed());
        let sums: Vec<&str> = f.rows.iter().map(|r| r.sum.as_str()).collect();
        assert!(sums.contains(&"24") && sums.contains(&"21"), "{sums:?}");
        let r = c.restriction_check(&t, 4).unwrap();
        assert!(r.passed());
        let st = t.rows.iter().position(|l| l.theta == 0 && t.entries[t.rows.iter().position(|m| m == l).unwrap()][0] == LaurentX::x_pow(1)).unwrap();
        assert_eq!(r.rows[st].coefficients, vec!["2", "1"]);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = load_group("A1", None, 0).unwrap();
        assert_eq!(BlockContext::new(&g, 2, 1).err(), Some(BlockError::EvenPrime));
        assert_eq!(BlockContext::new(&g, 3, 0).err(), Some(BlockError::TrivialTorus));
        let a2 = load_group("A2", None, 0).unwrap();
        assert!(matches!(BlockContext::new(&a2, 3, 1).err(), Some(BlockError::NotCoprime { .. })));
        let c = BlockContext::new(&g, 3, 1).unwrap();
        let t = c.table().unwrap();
        assert!(matches!(c.frobenius_check(&t, 5), Err(BlockError::BadQ { .. })));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let g = load_group("mu3", None, 0).unwrap();
        let c = BlockContext::new(&g, 7, 1).unwrap();
        let t = c.table().unwrap();
        assert_eq!(PartialTable::from_csv(&t.to_csv()).unwrap(), t);
        assert_eq!(PartialTable::from_json(&t.to_json()).unwrap(), t);
    }
}
