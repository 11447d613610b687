//! The family `R_a(z) = a / (z^2 + 2z)` and its capture parameters.

use crate::error::{Error, Result};
use crate::map::RationalMap;
use crate::numeric::{poly_roots, refine_roots, Polynomial, ToleranceConfig, C64};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Polynomial in the parameter `a` with integer coefficients, lowest first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        IntPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        IntPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly(vec![]);
        }
        let mut v = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }

    pub fn scale(&self, s: &BigInt) -> IntPoly {
        IntPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.0.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder of `self` by `b`.
    fn prem(&self, b: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        let db = b.degree();
        let lb = b.lead();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.lead();
            let mut next: Vec<BigInt> = r.0.iter().map(|c| c * &lb).collect();
            for (i, c) in b.0.iter().enumerate() {
                next[i + shift] -= &lr * c;
            }
            r = IntPoly::new(next);
        }
        r
    }

    /// Primitive gcd by the primitive polynomial remainder sequence.
    pub fn gcd(&self, o: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive();
            a = b;
            b = r;
        }
        if a.lead().is_negative() {
            a = a.scale(&BigInt::from(-1));
        }
        a
    }

    /// Exact quotient by a divisor known to divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.0.clone();
        let dd = d.degree();
        let ld = d.lead();
        if self.is_zero() {
            return IntPoly(vec![]);
        }
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &ld;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        debug_assert!(r.iter().all(|x| x.is_zero()));
        IntPoly::new(q)
    }

    /// Value at `a`, exact up to the final rounding once `a` is read as a dyadic rational.
    pub fn eval(&self, a: C64) -> C64 {
        if self.is_zero() {
            return C64::new(0.0, 0.0);
        }
        let Some((aa, shift)) = dyadic(a) else {
            return C64::new(f64::NAN, f64::NAN);
        };
        let v = scaled_eval(self, &aa, shift);
        let e = -((shift * self.degree()) as i64);
        C64::new(to_f64_scaled(&v.0, e), to_f64_scaled(&v.1, e))
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn to_complex(&self) -> Polynomial {
        Polynomial::new(self.0.iter().map(|c| C64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)).collect())
    }
}

/// `R_a^j(-1)` as an exact reduced fraction of polynomials in `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalInParam {
    pub num_a: IntPoly,
    pub den_a: IntPoly,
}

impl RationalInParam {
    fn reduced(num: IntPoly, den: IntPoly) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree() > 0 { (num.div_exact(&g), den.div_exact(&g)) } else { (num, den) };
        let c = n.content().gcd(&d.content());
        if !c.is_zero() && !c.is_one() {
            n = IntPoly::new(n.0.iter().map(|x| x / &c).collect());
            d = IntPoly::new(d.0.iter().map(|x| x / &c).collect());
        }
        if d.lead().is_negative() {
            let m = BigInt::from(-1);
            n = n.scale(&m);
            d = d.scale(&m);
        }
        RationalInParam { num_a: n, den_a: d }
    }

    pub fn eval(&self, a: C64) -> C64 {
        self.num_a.eval(a) / self.den_a.eval(a)
    }
}

/// Exact value of `R_a^j(-1)` for `1 <= j <= 8`.
pub fn capture_value_symbolic(j: u32) -> Result<RationalInParam> {
    if !(1..=8).contains(&j) {
        return Err(Error::Invalid(format!("iterate index {j} outside 1..=8")));
    }
    Ok(capture_sequence(j).pop().expect("nonempty"))
}

/// `R_a^1(-1), ..., R_a^j(-1)`.
fn capture_sequence(j: u32) -> Vec<RationalInParam> {
    let a = IntPoly::from_i64(&[0, 1]);
    let two = BigInt::from(2);
    let mut out = vec![RationalInParam { num_a: IntPoly::from_i64(&[0, -1]), den_a: IntPoly::from_i64(&[1]) }];
    for _ in 1..j {
        let cur = out.last().unwrap();
        let (n, d) = (&cur.num_a, &cur.den_a);
        let next_num = a.mul(&d.mul(d));
        let next_den = n.mul(&n.add(&d.scale(&two)));
        out.push(RationalInParam::reduced(next_num, next_den));
    }
    out
}

/// The exact polynomial whose roots are the generation-`k` candidates.
pub fn capture_polynomial(k: u32) -> Result<IntPoly> {
    if !(2..=8).contains(&k) {
        return Err(Error::Invalid(format!("generation {k} outside 2..=8")));
    }
    let v = capture_value_symbolic(k - 1)?;
    Ok(v.num_a.add(&v.den_a.scale(&BigInt::from(2))))
}

/// Parameters `a` whose free critical value lands on `-2` exactly at step `k - 1`.
///
/// Real roots come first in increasing order, then conjugate pairs by
/// increasing `|Im a|`, the negative imaginary part first.
pub fn capture_parameters(k: u32, tol: &ToleranceConfig) -> Result<Vec<C64>> {
    let eq = capture_polynomial(k)?;
    let seq = capture_sequence(k - 1);
    let p = eq.to_complex();
    let start = match p.degree() {
        0 => vec![],
        _ => poly_roots(&p, tol).unwrap_or_else(|_| {
            let d = p.degree();
            (0..d).map(|j| C64::from_polar(2.0, std::f64::consts::TAU * j as f64 / d as f64 + 0.4)).collect()
        }),
    };
    // Large generations are badly conditioned in floating point, so the
    // estimates are refined against the exact integer coefficients.
    let deriv = eq.derivative();
    let mut roots = refine_roots(&start, |a| exact_ratio(&eq, &deriv, a), 4.0 * f64::EPSILON, tol.max_iter);
    for r in roots.iter_mut() {
        if r.im.abs() < 1e-12 * (1.0 + r.norm()) {
            r.im = 0.0;
        }
    }
    let two = C64::new(2.0, 0.0);
    roots.retain(|&a| {
        if a.norm() < 1e-12 {
            return false;
        }
        let den_ok = seq.iter().all(|v| v.den_a.eval(a).norm() > 1e-9 * (1.0 + v.num_a.eval(a).norm()));
        let early = seq[..seq.len() - 1].iter().any(|v| (v.num_a.eval(a) + two * v.den_a.eval(a)).norm() < 1e-9 * (1.0 + v.den_a.eval(a).norm()));
        den_ok && !early
    });
    roots.sort_by(|x, y| {
        let rx = x.im == 0.0;
        let ry = y.im == 0.0;
        ry.cmp(&rx)
            .then(x.im.abs().total_cmp(&y.im.abs()))
            .then(x.re.total_cmp(&y.re))
            .then(x.im.total_cmp(&y.im))
    });
    Ok(roots)
}

/// Gaussian integer `re + i im`.
type Gauss = (BigInt, BigInt);

fn gmul(x: &Gauss, y: &Gauss) -> Gauss {
    (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0)
}

/// `t^d p(A / t)` for `t = 2^shift`.
fn scaled_eval(p: &IntPoly, a: &Gauss, shift: usize) -> Gauss {
    let d = p.degree();
    let mut v: Gauss = (p.lead(), BigInt::zero());
    for i in (0..d).rev() {
        v = gmul(&v, a);
        v.0 += &p.0[i] << (shift * (d - i));
    }
    v
}

/// Mantissa and binary exponent of a big integer.
fn split(x: &BigInt) -> (f64, i64) {
    let sh = x.bits().saturating_sub(64);
    ((x >> sh).to_f64().unwrap_or(0.0), sh as i64)
}

/// `x * 2^e` rounded to the nearest double.
fn to_f64_scaled(x: &BigInt, e: i64) -> f64 {
    let (m, xe) = split(x);
    m * (-63f64).exp2() * ((xe + e + 63) as f64).exp2()
}

/// `a = A / 2^shift` with Gaussian integer `A` carrying about 60 bits.
fn dyadic(a: C64) -> Option<(Gauss, usize)> {
    let m = a.re.abs().max(a.im.abs());
    if !m.is_finite() {
        return None;
    }
    let shift = if m > 0.0 { (60 - m.log2().floor() as i64).clamp(0, 240) as usize } else { 0 };
    let t = (shift as f64).exp2();
    let big = |x: f64| BigInt::from_f64((x * t).round()).unwrap_or_default();
    Some(((big(a.re), big(a.im)), shift))
}

/// `p(a) / p'(a)` with `a` rounded to a dyadic rational and all arithmetic exact.
fn exact_ratio(p: &IntPoly, dp: &IntPoly, a: C64) -> Option<C64> {
    let Some((aa, shift)) = dyadic(a) else {
        return Some(C64::new(f64::NAN, f64::NAN));
    };
    let v = scaled_eval(p, &aa, shift);
    if v.0.is_zero() && v.1.is_zero() {
        return None;
    }
    let w = scaled_eval(dp, &aa, shift);
    let den = &w.0 * &w.0 + &w.1 * &w.1;
    if den.is_zero() {
        return Some(C64::new(f64::NAN, f64::NAN));
    }
    let num = gmul(&v, &(w.0.clone(), -w.1.clone()));
    let (dm, de) = split(&den);
    let part = |x: &BigInt| {
        let (xm, xe) = split(x);
        xm / dm * ((xe - de - shift as i64) as f64).exp2()
    };
    Some(C64::new(part(&num.0), part(&num.1)))
}

/// `a / (z^2 + 2z)`.
pub fn capture_map(a: C64) -> Result<RationalMap> {
    RationalMap::new(
        Polynomial::new(vec![a]),
        Polynomial::from_real(&[0.0, 2.0, 1.0]),
    )
}
