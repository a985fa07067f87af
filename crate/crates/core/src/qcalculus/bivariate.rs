//! Exact bivariate polynomials for two-variable Golden calculus.

use crate::error::Result;
use crate::goldenfield::ComplexQuadratic;
use crate::goldenfield::QuadraticNumber;
use crate::qcalculus::fib_divisor_scalar;

/// Polynomial in x and y over the complexified Golden field;
/// `coeffs[i][j]` multiplies x^i y^j.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<Vec<ComplexQuadratic>>,
}

impl BiPoly {
    pub fn from_coeffs(coeffs: Vec<Vec<ComplexQuadratic>>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: ComplexQuadratic) -> Self {
        Self::from_coeffs(vec![vec![c]])
    }

    pub fn one() -> Self {
        Self::constant(ComplexQuadratic::one())
    }

    /// The monomial x^i y^j.
    pub fn monomial(i: usize, j: usize) -> Self {
        let mut coeffs = vec![vec![ComplexQuadratic::zero(); j + 1]; i + 1];
        coeffs[i][j] = ComplexQuadratic::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> ComplexQuadratic {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_default()
    }

    fn normalize(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|row| row.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let rows = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(rows);
        for i in 0..rows {
            let cols = self
                .coeffs
                .get(i)
                .map_or(0, Vec::len)
                .max(o.coeffs.get(i).map_or(0, Vec::len));
            out.push((0..cols).map(|j| &self.coeff(i, j) + &o.coeff(i, j)).collect());
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| -c).collect())
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &ComplexQuadratic) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|row| row.iter().map(|a| a * c).collect())
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let rows = self.coeffs.len() + o.coeffs.len() - 1;
        let cols = self.coeffs.iter().map(Vec::len).max().unwrap_or(0)
            + o.coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![vec![ComplexQuadratic::zero(); cols]; rows];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, r2) in o.coeffs.iter().enumerate() {
                    for (j2, b) in r2.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out[i1 + i2][j1 + j2] = &out[i1 + i2][j1 + j2] + &(a * b);
                    }
                }
            }
        }
        Self::from_coeffs(out)
    }

    /// k-th Golden derivative in x: x^i ↦ F_i^(k) x^(i-1).
    pub fn golden_derivative_x(&self, k: i64) -> Result<Self> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate().skip(1) {
            let f = fib_divisor_scalar(i as i64, k)?;
            out.push(row.iter().map(|c| c * &f).collect());
        }
        Ok(Self::from_coeffs(out))
    }

    /// k-th Golden derivative in y: y^j ↦ F_j^(k) y^(j-1).
    pub fn golden_derivative_y(&self, k: i64) -> Result<Self> {
        let mut out = Vec::new();
        for row in &self.coeffs {
            let mut new_row = Vec::new();
            for (j, c) in row.iter().enumerate().skip(1) {
                new_row.push(c * &fib_divisor_scalar(j as i64, k)?);
            }
            out.push(new_row);
        }
        Ok(Self::from_coeffs(out))
    }

    /// Exact evaluation at (x, y).
    pub fn eval(&self, x: &ComplexQuadratic, y: &ComplexQuadratic) -> ComplexQuadratic {
        let mut acc = ComplexQuadratic::zero();
        for row in self.coeffs.iter().rev() {
            let mut row_val = ComplexQuadratic::zero();
            for c in row.iter().rev() {
                row_val = &(&row_val * y) + c;
            }
            acc = &(&acc * x) + &row_val;
        }
        acc
    }

    /// Coefficient-wise real part (as a polynomial with real coefficients).
    pub fn re_part(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| ComplexQuadratic::from_real(c.re.clone()))
                        .collect()
                })
                .collect(),
        )
    }

    /// Coefficient-wise imaginary part (as a polynomial with real coefficients).
    pub fn im_part(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|c| ComplexQuadratic::from_real(c.im.clone()))
                        .collect()
                })
                .collect(),
        )
    }
}

/// Generalized Golden binomial Π_{j=0}^{n-1} (x + φ^(k(n-1-j)) φ'^(kj) s·y);
/// s = 1 gives (x+y)^n_F, s = -1 gives (x-y)^n_F, s = i gives (x+iy)^n_F.
pub fn complex_binomial(k: i64, n: u32, s: &ComplexQuadratic) -> Result<BiPoly> {
    if k == 0 {
        return Err(crate::error::Error::InvalidOrder);
    }
    let mut acc = BiPoly::one();
    let n = n as i64;
    for j in 0..n {
        let w = &ComplexQuadratic::from_real(QuadraticNumber::phi_power(k * (n - 1 - j)))
            * &ComplexQuadratic::from_real(QuadraticNumber::phi_conj_power(k * j));
        let factor = BiPoly::monomial(1, 0).add(&BiPoly::monomial(0, 1).scale(&(&w * s)));
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// (x+y)^n_F as a bivariate polynomial.
pub fn binomial_plus(k: i64, n: u32) -> Result<BiPoly> {
    complex_binomial(k, n, &ComplexQuadratic::one())
}

/// (x-y)^n_F as a bivariate polynomial.
pub fn binomial_minus(k: i64, n: u32) -> Result<BiPoly> {
    complex_binomial(k, n, &ComplexQuadratic::from_int(-1))
}
