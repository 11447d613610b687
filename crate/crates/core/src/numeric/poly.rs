use super::sphere::C64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Dense complex polynomial, lowest degree first. Trailing zero
/// coefficients are dropped so that the last entry is the leading one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct Polynomial {
    coeffs: Vec<C64>,
}

impl From<Vec<[f64; 2]>> for Polynomial {
    fn from(v: Vec<[f64; 2]>) -> Self {
        Polynomial::new(v.into_iter().map(|[re, im]| C64::new(re, im)).collect())
    }
}

impl From<Polynomial> for Vec<[f64; 2]> {
    fn from(p: Polynomial) -> Self {
        p.coeffs.iter().map(|c| [c.re, c.im]).collect()
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c z^k`.
    pub fn monomial(c: C64, k: usize) -> Self {
        let mut v = vec![ZERO; k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `prod (z - r)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = Self::constant(C64::new(1.0, 0.0));
        for &r in roots {
            p = &p * &Self::new(vec![-r, C64::new(1.0, 0.0)]);
        }
        p
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or(ZERO)
    }

    pub fn coeff(&self, i: usize) -> C64 {
        self.coeffs.get(i).copied().unwrap_or(ZERO)
    }

    /// Max coefficient modulus.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops leading coefficients below `rel * scale`.
    pub fn trimmed(&self, rel: f64) -> Self {
        let s = self.scale();
        let mut v = self.coeffs.clone();
        while let Some(c) = v.last() {
            if c.norm() <= rel * s {
                v.pop();
            } else {
                break;
            }
        }
        Polynomial { coeffs: v }
    }

    /// Number of (near-)zero low-order coefficients, i.e. multiplicity of the root 0.
    pub fn low_zero_count(&self, rel: f64) -> usize {
        let s = self.scale();
        self.coeffs.iter().take_while(|c| c.norm() <= rel * s).count()
    }

    /// Divides by `z^k`, dropping the low `k` coefficients.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).copied().collect())
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value and derivative by Horner.
    pub fn eval_with_derivative(&self, z: C64) -> (C64, C64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Sum of `|c_i| |z|^i`, the scale against which a residual at `z` is judged.
    pub fn abs_eval(&self, r: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// Homogeneous evaluation `sum c_i z^i w^(n-i)` at formal degree `n >= degree`.
    pub fn eval_homogeneous(&self, z: C64, w: C64, n: usize) -> C64 {
        if z.norm() <= w.norm() {
            // sum c_i (z/w)^i w^n
            let t = z / w;
            let mut acc = ZERO;
            for i in (0..=n).rev() {
                acc = acc * t + self.coeff(i);
            }
            acc * w.powu(n as u32)
        } else {
            let t = w / z;
            let mut acc = ZERO;
            for i in 0..=n {
                acc = acc * t + self.coeff(i);
            }
            acc * z.powu(n as u32)
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    /// Coefficients reversed at formal degree `n`: `z^n p(1/z)`.
    pub fn reversed(&self, n: usize) -> Self {
        Self::new((0..=n).rev().map(|i| self.coeff(i)).collect())
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(C64::new(1.0, 0.0));
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `z^k` for `z`.
    pub fn compose_power(&self, k: usize) -> Self {
        let mut v = vec![ZERO; self.degree() * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i * k] = c;
        }
        Self::new(v)
    }

    /// Synthetic division by `(z - r)`, discarding the remainder.
    pub fn deflate(&self, r: C64) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let mut out = vec![ZERO; n - 1];
        let mut acc = ZERO;
        for i in (1..n).rev() {
            acc = acc * r + self.coeffs[i];
            out[i - 1] = acc;
        }
        Self::new(out)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut v = vec![ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Polynomial::new(v)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scaled(C64::new(-1.0, 0.0))
    }
}
