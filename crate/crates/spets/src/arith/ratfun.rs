//! Quotients of Laurent polynomials, kept in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{ArithError, CycloNum, LaurentX};

type Dense = Vec<CycloNum>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = b[db].inv().expect("nonzero leading coefficient");
    while r.len() > db {
        let top = r.len() - 1;
        let c = &r[top] * &inv;
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[top - db + j] -= &t;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn monic(p: &Dense) -> Dense {
    let inv = p.last().unwrap().inv().expect("nonzero");
    p.iter().map(|c| c * &inv).collect()
}

/// Monic gcd over the cyclotomic field.
fn poly_gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (a.clone(), b.clone());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = std::mem::replace(&mut y, r);
    }
    if x.is_empty() {
        x
    } else {
        monic(&x)
    }
}

/// num/den with coprime polynomial parts and a monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFun {
    num: LaurentX,
    den: LaurentX,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun { num: LaurentX::zero(), den: LaurentX::one() }
    }

    pub fn one() -> Self {
        RatFun { num: LaurentX::one(), den: LaurentX::one() }
    }

    pub fn new(num: LaurentX, den: LaurentX) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentX, den: LaurentX) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // bring both to the same fractional denominator and integer exponents
        let z = super::cyclo::lcm(num.denom(), den.denom());
        let to_y = |p: &LaurentX| -> (i64, Dense) {
            let f = (z / p.denom()) as i64;
            let low = p.low().unwrap() * f;
            let high = p.high().unwrap() * f;
            let mut v = vec![CycloNum::zero(); (high - low + 1) as usize];
            for (k, c) in p.terms() {
                v[(k * f - low) as usize] = c.clone();
            }
            (low, v)
        };
        let (nl, nv) = to_y(&num);
        let (dl, dv) = to_y(&den);
        let g = poly_gcd(&nv, &dv);
        let (nq, dq) = if g.len() > 1 {
            let gl = LaurentX::from_dense(1, 0, &g);
            let nn = LaurentX::from_dense(1, 0, &nv).div_exact(&gl).expect("gcd divides");
            let dd = LaurentX::from_dense(1, 0, &dv).div_exact(&gl).expect("gcd divides");
            (nn.to_dense().1, dd.to_dense().1)
        } else {
            (nv, dv)
        };
        let lead_inv = dq.last().unwrap().inv().expect("nonzero");
        let shift = nl - dl;
        let num = LaurentX::from_dense(z, shift, &nq.iter().map(|c| c * &lead_inv).collect::<Vec<_>>());
        let den = LaurentX::from_dense(z, 0, &dq.iter().map(|c| c * &lead_inv).collect::<Vec<_>>());
        // denominators never carry a y-power, the shift lives in the numerator
        let dlow = den.low().unwrap();
        let (num, den) = if dlow != 0 {
            (num.shift(-dlow, den.denom()), den.shift(-dlow, den.denom()))
        } else {
            (num, den)
        };
        RatFun { num, den }
    }

    pub fn num(&self) -> &LaurentX {
        &self.num
    }

    pub fn den(&self) -> &LaurentX {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial when the denominator is constant.
    pub fn to_laurent(&self) -> Option<LaurentX> {
        if self.den.is_constant() {
            let c = self.den.coeff(0).inv().ok()?;
            Some(self.num.scale(&c))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn conj_coeffs(&self) -> Self {
        Self::normalized(self.num.conj_coeffs(), self.den.conj_coeffs())
    }

    pub fn evaluate(&self, q: &BigRational) -> Result<CycloNum, ArithError> {
        let d = self.den.evaluate(q)?;
        if d.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(&self.num.evaluate(q)? * &d.inv()?)
    }

    pub fn at_one(&self) -> Result<CycloNum, ArithError> {
        self.evaluate(&BigRational::from_integer(1.into()))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFun { num: self.num.pow(e), den: self.den.pow(e) }
    }
}

impl From<LaurentX> for RatFun {
    fn from(p: LaurentX) -> Self {
        RatFun { num: p, den: LaurentX::one() }
    }
}

impl From<CycloNum> for RatFun {
    fn from(c: CycloNum) -> Self {
        RatFun::from(LaurentX::constant(c))
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::normalized(&self.num + &o.num, self.den.clone());
        }
        RatFun::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        RatFun::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        assert!(!o.is_zero(), "division by zero rational function");
        RatFun::normalized(&self.num * &o.den, &self.den * &o.num)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun {
                (&self).$m(&o)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: &RatFun) -> RatFun {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.to_laurent() {
            write!(f, "{}", p)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
