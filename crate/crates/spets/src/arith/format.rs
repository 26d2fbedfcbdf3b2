//! Canonical text forms. Equal values always print identically.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::residue::{gauss_sum, pow_mod, quadratic_discriminant};
use super::{CycloNum, LaurentX};

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Split c = u + v·√D when c lies in the quadratic subfield of ℚ(ζ_p).
fn quadratic_parts(c: &CycloNum) -> Option<(BigRational, BigRational, i64)> {
    let p = c.order() as u64;
    if p < 5 {
        return None;
    }
    let d = quadratic_discriminant(p)?;
    let sq = (2..p).find(|k| pow_mod(*k, (p - 1) / 2, p) == 1);
    if let Some(s) = sq {
        if c.galois(s as i64) != *c {
            return None;
        }
    }
    let nonres = (2..p).find(|k| pow_mod(*k, (p - 1) / 2, p) != 1)?;
    let sigma = c.galois(nonres as i64);
    let half = CycloNum::from_ratio(1, 2);
    let u = (&(c + &sigma) * &half).as_rational()?;
    let v = (&(&(c - &sigma) * &half) * &gauss_sum(p as u32).inv().ok()?).as_rational()?;
    Some((u, v, d))
}

/// Sum of signed terms without a leading "+".
fn join_terms(parts: &[(bool, String)]) -> String {
    let mut s = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(body);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// Signed pieces of a cyclotomic number: (negative?, magnitude text, is_atomic).
fn cyclo_pieces(c: &CycloNum) -> Vec<(bool, String)> {
    let m = c.minimal_order();
    let c = c.descend(m).expect("minimal field");
    if m == 1 {
        let q = &c.coeffs()[0];
        return vec![(q.is_negative(), fmt_rat(&q.abs()))];
    }
    let mut out = Vec::new();
    if let Some((u, v, d)) = quadratic_parts(&c) {
        if !u.is_zero() {
            out.push((u.is_negative(), fmt_rat(&u.abs())));
        }
        let r = format!("sqrt({d})");
        let va = v.abs();
        let body = if va.is_one() { r } else { format!("{}*{}", fmt_rat(&va), r) };
        out.push((v.is_negative(), body));
        return out;
    }
    for (i, q) in c.coeffs().iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        let z = match i {
            0 => String::new(),
            1 => format!("E({m})"),
            _ => format!("E({m})^{i}"),
        };
        let qa = q.abs();
        let body = match (z.is_empty(), qa.is_one()) {
            (true, _) => fmt_rat(&qa),
            (false, true) => z,
            (false, false) => format!("{}*{}", fmt_rat(&qa), z),
        };
        out.push((q.is_negative(), body));
    }
    out
}

pub fn format_cyclo(c: &CycloNum) -> String {
    join_terms(&cyclo_pieces(c))
}

fn fmt_exp(k: i64, z: u32, var: &str) -> String {
    if z == 1 {
        if k == 1 {
            var.to_string()
        } else {
            format!("{var}^{k}")
        }
    } else {
        format!("{var}^({k}/{z})")
    }
}

/// Terms in decreasing degree, e.g. `x^3 - 2*x + (1 + sqrt(-7))/…`.
pub fn format_laurent(p: &LaurentX, var: &str) -> String {
    let z = p.denom();
    let mut parts = Vec::new();
    let terms: Vec<(i64, &CycloNum)> = p.terms().collect();
    for (k, c) in terms.into_iter().rev() {
        let pieces = cyclo_pieces(c);
        let mono = if k == 0 { String::new() } else { fmt_exp(k, z, var) };
        if pieces.len() == 1 {
            let (neg, body) = &pieces[0];
            let text = match (mono.is_empty(), body == "1") {
                (true, _) => body.clone(),
                (false, true) => mono,
                (false, false) => format!("{body}*{mono}"),
            };
            parts.push((*neg, text));
        } else {
            let inner = join_terms(&pieces);
            let text = if mono.is_empty() { format!("({inner})") } else { format!("({inner})*{mono}") };
            parts.push((false, text));
        }
    }
    join_terms(&parts)
}

/// `c*q^k*Phi1^2*Phi4` when `p` is a rational multiple of a monomial times
/// cyclotomic polynomials; otherwise the expanded form of [`format_laurent`].
pub fn format_phi_factored(p: &LaurentX, var: &str) -> String {
    phi_factors(p, var).unwrap_or_else(|| format_laurent(p, var))
}

fn phi_factors(p: &LaurentX, var: &str) -> Option<String> {
    let (lo, hi) = (p.low()?, p.high()?);
    if p.denom() != 1 || p.terms().any(|(_, c)| c.as_rational().is_none()) {
        return None;
    }
    let lead = p.coeff(hi).as_rational()?;
    let mut rest = p.div_exact(&LaurentX::x_pow(lo))?;
    let mut factors: Vec<(u32, u32)> = Vec::new();
    let deg = (hi - lo) as u32;
    // φ(d) ≥ √(d/2), so no Φ_d with d > 2·deg² divides
    let mut d = 1u32;
    while rest.high()? > 0 && d <= 2 * deg * deg + 2 {
        let phi = super::laurent::phi_poly(d);
        let mut e = 0;
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((d, e));
        }
        d += 1;
    }
    if rest.high()? != 0 {
        return None;
    }
    let mut parts: Vec<String> = Vec::new();
    if !lead.abs().is_one() || (lo == 0 && factors.is_empty()) {
        parts.push(format_cyclo(&CycloNum::from_rational(lead.abs())));
    }
    if lo != 0 {
        parts.push(fmt_exp(lo, 1, var));
    }
    for (d, e) in factors {
        parts.push(if e == 1 { format!("Phi{d}") } else { format!("Phi{d}^{e}") });
    }
    Some(format!("{}{}", if lead.is_negative() { "-" } else { "" }, parts.join("*")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_factored_forms() {
        let parse = |s: &str| crate::arith::expr::parse(s, &Default::default()).unwrap();
        assert_eq!(format_phi_factored(&parse("q^3 - q"), "q"), "q*Phi1*Phi2");
        assert_eq!(format_phi_factored(&parse("-2q^4 + 2q^2"), "q"), "-2*q^2*Phi1*Phi2");
        assert_eq!(format_phi_factored(&parse("1/2 q^8 Phi1^2 Phi3 Phi6 Phi7"), "q"), "1/2*q^8*Phi1^2*Phi3*Phi6*Phi7");
        assert_eq!(format_phi_factored(&parse("6"), "q"), "6");
        assert_eq!(format_phi_factored(&parse("q^2 + 1"), "q"), "Phi4");
        assert_eq!(format_phi_factored(&parse("q^2 + 3"), "q"), "q^2 + 3");
    }

    #[test]
    fn canonical_forms() {
        let s = gauss_sum(7);
        assert_eq!(format_cyclo(&s), "sqrt(-7)");
        let h = &(&s + &CycloNum::one()) * &CycloNum::from_ratio(-1, 2);
        assert_eq!(format_cyclo(&h), "-1/2 - 1/2*sqrt(-7)");
        let p = LaurentX::from_ints(&[1, 0, -2, 1]);
        assert_eq!(format_laurent(&p, "q"), "q^3 - 2*q^2 + 1");
        let r = LaurentX::monomial(s, 2);
        assert_eq!(format_laurent(&r, "q"), "sqrt(-7)*q^2");
        assert_eq!(format_cyclo(&CycloNum::root_of_unity(3, 2)), "-1 - E(3)");
    }
}
