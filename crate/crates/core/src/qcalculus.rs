//! The k-th Golden derivative and its exact polynomial calculus.

use std::fmt;

use crate::error::{Error, Result};
use crate::goldenfield::{ComplexQuadratic, QuadraticNumber};
use crate::numeric::CFloat;
use crate::sequences::fib_divisor_nk;

pub mod bivariate;

/// Polynomial over the complexified Golden field; `coeffs[i]` multiplies x^i.
///
/// The zero polynomial has empty coefficients and degree 0 by convention;
/// nonzero polynomials keep a nonzero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GoldenPolynomial {
    coeffs: Vec<ComplexQuadratic>,
}

impl GoldenPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<ComplexQuadratic>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Convenience constructor from integer coefficients, low degree first.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ComplexQuadratic::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![ComplexQuadratic::one()])
    }

    /// The monomial x^n.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![ComplexQuadratic::zero(); n + 1];
        coeffs[n] = ComplexQuadratic::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[ComplexQuadratic] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> ComplexQuadratic {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial assigned degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &o.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ComplexQuadratic::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &ComplexQuadratic) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitution x ↦ c·x, sending Σ a_i x^i to Σ a_i c^i x^i.
    pub fn compose_scale(&self, c: &ComplexQuadratic) -> Self {
        let mut power = ComplexQuadratic::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i > 0 {
                    power = &power * c;
                }
                a * &power
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Exact evaluation by Horner's scheme.
    pub fn eval(&self, x: &ComplexQuadratic) -> ComplexQuadratic {
        let mut acc = ComplexQuadratic::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Floating evaluation at the precision of `x`.
    pub fn eval_float(&self, x: &CFloat) -> CFloat {
        let p = x.prec();
        let mut acc = CFloat::zero(p);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&c.to_cfloat(p));
        }
        acc
    }
}

impl fmt::Display for GoldenPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A numeric complex function evaluated at a requested precision.
pub struct NumericFunction {
    evaluator: Box<dyn Fn(&CFloat, u32) -> CFloat + Send + Sync>,
    pub label: String,
}

impl NumericFunction {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(&CFloat, u32) -> CFloat + Send + Sync + 'static,
    {
        Self {
            evaluator: Box::new(f),
            label: label.into(),
        }
    }

    pub fn eval(&self, x: &CFloat, prec: u32) -> CFloat {
        (self.evaluator)(x, prec)
    }
}

impl fmt::Debug for NumericFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericFunction")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

/// F_n^(k) as a scalar of the complexified Golden field.
pub(crate) fn fib_divisor_scalar(n: i64, k: i64) -> Result<ComplexQuadratic> {
    Ok(ComplexQuadratic::from_real(QuadraticNumber::from_integer(
        &fib_divisor_nk(n, k)?,
    )))
}

/// k-th Golden derivative of a polynomial: x^n ↦ F_n^(k) x^(n-1), exactly.
pub fn golden_derivative_poly(k: i64, p: &GoldenPolynomial) -> Result<GoldenPolynomial> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let mut out = Vec::with_capacity(p.coeffs().len().saturating_sub(1));
    for (i, c) in p.coeffs().iter().enumerate().skip(1) {
        out.push(c * &fib_divisor_scalar(i as i64, k)?);
    }
    Ok(GoldenPolynomial::from_coeffs(out))
}

/// k-th Golden derivative of a numeric function at x ≠ 0:
/// (f(φ^k x) - f(φ'^k x)) / ((φ^k - φ'^k) x).
pub fn golden_derivative_fn(
    k: i64,
    f: &NumericFunction,
    x: &CFloat,
    prec: u32,
) -> Result<CFloat> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if x.is_zero() {
        return Err(Error::EvaluationAtZero);
    }
    let wp = prec + 16;
    let xw = x.with_prec(wp);
    let phi_k = QuadraticNumber::phi_power(k);
    let psi_k = QuadraticNumber::phi_conj_power(k);
    let hi = f.eval(&xw.scale(&phi_k.to_real(wp)), wp);
    let lo = f.eval(&xw.scale(&psi_k.to_real(wp)), wp);
    let den = xw.scale(&(&phi_k - &psi_k).to_real(wp));
    Ok(hi.sub(&lo).div(&den).with_prec(prec))
}

/// Sign convention for Golden binomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinomialSign {
    /// (x + a)^n_F
    Plus,
    /// (x - a)^n_F
    Minus,
}

/// Golden binomial (x ± a)^n_F = Π_{j=0}^{n-1} (x ∓ φ^(k(n-1-j)) φ'^(kj) a).
pub fn golden_binomial(
    k: i64,
    n: u32,
    a: &ComplexQuadratic,
    sign: BinomialSign,
) -> Result<GoldenPolynomial> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let a_eff = match sign {
        BinomialSign::Minus => a.clone(),
        BinomialSign::Plus => -a,
    };
    let mut acc = GoldenPolynomial::one();
    let n = n as i64;
    for j in 0..n {
        let root_scale = &ComplexQuadratic::from_real(QuadraticNumber::phi_power(k * (n - 1 - j)))
            * &ComplexQuadratic::from_real(QuadraticNumber::phi_conj_power(k * j));
        let factor = GoldenPolynomial::from_coeffs(vec![
            -&(&root_scale * &a_eff),
            ComplexQuadratic::one(),
        ]);
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Golden-Taylor coefficients c_n = (D^n p)(0) for n = 0..deg(p).
pub fn golden_taylor(k: i64, p: &GoldenPolynomial) -> Result<Vec<ComplexQuadratic>> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let zero = ComplexQuadratic::zero();
    let mut out = Vec::with_capacity(p.coeffs().len().max(1));
    let mut cur = p.clone();
    out.push(cur.eval(&zero));
    for _ in 1..=p.degree() {
        cur = golden_derivative_poly(k, &cur)?;
        out.push(cur.eval(&zero));
    }
    Ok(out)
}

/// Golden translation by y: the operator sending x^n to (x + y)^n_F, extended
/// linearly; realizes E_F^(y D) on polynomials.
pub fn golden_translate(
    k: i64,
    p: &GoldenPolynomial,
    y: &ComplexQuadratic,
) -> Result<GoldenPolynomial> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let mut acc = GoldenPolynomial::zero();
    for (n, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let b = golden_binomial(k, n as u32, y, BinomialSign::Plus)?;
        acc = acc.add(&b.scale(c));
    }
    Ok(acc)
}

/// Golden-Taylor reconstruction Σ c_n x^n / F_n^(k)!; inverse of `golden_taylor`.
pub fn taylor_reconstruct(k: i64, coeffs: &[ComplexQuadratic]) -> Result<GoldenPolynomial> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let mut fact = QuadraticNumber::one();
    let mut out = Vec::with_capacity(coeffs.len());
    for (n, c) in coeffs.iter().enumerate() {
        if n > 0 {
            fact = &fact * &QuadraticNumber::from_integer(&fib_divisor_nk(n as i64, k)?);
        }
        out.push(c.scale(&fact.inverse()?));
    }
    Ok(GoldenPolynomial::from_coeffs(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> GoldenPolynomial {
        GoldenPolynomial::from_int_coeffs(coeffs)
    }

    #[test]
    fn monomial_rule() {
        for k in [-3i64, -1, 1, 2, 4] {
            for n in 1..=8usize {
                let d = golden_derivative_poly(k, &GoldenPolynomial::monomial(n)).unwrap();
                let want = GoldenPolynomial::monomial(n - 1)
                    .scale(&fib_divisor_scalar(n as i64, k).unwrap());
                assert_eq!(d, want, "k={k}, n={n}");
            }
        }
    }

    #[test]
    fn degree_conventions() {
        assert_eq!(GoldenPolynomial::zero().degree(), 0);
        assert!(GoldenPolynomial::zero().is_zero());
        assert_eq!(poly(&[5]).degree(), 0);
        assert_eq!(poly(&[0, 0, 3]).degree(), 2);
        assert_eq!(poly(&[1, 2, 0, 0]).degree(), 1);
        assert_eq!(
            golden_derivative_poly(1, &poly(&[7])).unwrap(),
            GoldenPolynomial::zero()
        );
    }

    #[test]
    fn taylor_worked_example_order_two() {
        // p = (x+1)³ at k = 2: successive derivatives 8x²+9x+3, 24x+9, 24.
        let p = poly(&[1, 3, 3, 1]);
        let d1 = golden_derivative_poly(2, &p).unwrap();
        assert_eq!(d1, poly(&[3, 9, 8]));
        let d2 = golden_derivative_poly(2, &d1).unwrap();
        assert_eq!(d2, poly(&[9, 24]));
        let d3 = golden_derivative_poly(2, &d2).unwrap();
        assert_eq!(d3, poly(&[24]));
        let c = golden_taylor(2, &p).unwrap();
        let want: Vec<ComplexQuadratic> =
            [1, 3, 9, 24].iter().map(|&v| ComplexQuadratic::from_int(v)).collect();
        assert_eq!(c, want);
        // Reconstruction divides by F_n^(2)! = 1, 1, 3, 24.
        assert_eq!(taylor_reconstruct(2, &c).unwrap(), p);
    }

    #[test]
    fn taylor_round_trip() {
        let samples = [
            poly(&[2, -1, 0, 5, 7]),
            poly(&[0, 0, 0, 1]),
            poly(&[-3]),
            GoldenPolynomial::zero(),
            GoldenPolynomial::from_coeffs(vec![
                ComplexQuadratic::new(QuadraticNumber::phi(), QuadraticNumber::sqrt5()),
                ComplexQuadratic::i(),
                ComplexQuadratic::new(QuadraticNumber::phi_conj(), QuadraticNumber::one()),
            ]),
        ];
        for k in [-4i64, -1, 1, 2, 3, 5] {
            for p in &samples {
                let c = golden_taylor(k, p).unwrap();
                assert_eq!(&taylor_reconstruct(k, &c).unwrap(), p, "k={k}");
            }
        }
    }

    #[test]
    fn leibniz_rule_exact_on_polynomials() {
        // D(fg)(x) = D(f)(x) g(φ^k x) + f(φ'^k x) D(g)(x)
        let f = poly(&[1, -2, 0, 3]);
        let g = GoldenPolynomial::from_coeffs(vec![
            ComplexQuadratic::from_real(QuadraticNumber::phi()),
            ComplexQuadratic::i(),
            ComplexQuadratic::from_int(4),
        ]);
        for k in [-3i64, -2, -1, 1, 2, 3, 4] {
            let lhs = golden_derivative_poly(k, &f.mul(&g)).unwrap();
            let phi_k = ComplexQuadratic::from_real(QuadraticNumber::phi_power(k));
            let psi_k = ComplexQuadratic::from_real(QuadraticNumber::phi_conj_power(k));
            let rhs = golden_derivative_poly(k, &f)
                .unwrap()
                .mul(&g.compose_scale(&phi_k))
                .add(&f.compose_scale(&psi_k).mul(&golden_derivative_poly(k, &g).unwrap()));
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn linearity() {
        let f = poly(&[3, 1, 4, 1, 5]);
        let g = poly(&[-2, 7, 0, 0, 0, 2]);
        let c = ComplexQuadratic::new(QuadraticNumber::sqrt5(), QuadraticNumber::from_int(-2));
        for k in [1i64, 3, -2] {
            let lhs = golden_derivative_poly(k, &f.scale(&c).add(&g)).unwrap();
            let rhs = golden_derivative_poly(k, &f)
                .unwrap()
                .scale(&c)
                .add(&golden_derivative_poly(k, &g).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn numeric_derivative_matches_polynomial_rule() {
        let p = poly(&[1, 0, -4, 2]);
        let pf = {
            let p = p.clone();
            NumericFunction::new("poly", move |x, _| p.eval_float(x))
        };
        let x = CFloat::new(
            rug::Float::with_val(192, 0.75),
            rug::Float::with_val(192, -1.25),
        );
        for k in [1i64, 2, -3] {
            let num = golden_derivative_fn(k, &pf, &x, 160).unwrap();
            let sym = golden_derivative_poly(k, &p).unwrap().eval_float(&x);
            let tol = rug::Float::with_val(160, rug::Float::i_exp(1, -150));
            assert!(num.sub(&sym).abs() < tol, "k={k}");
        }
    }

    #[test]
    fn quotient_rule_numeric() {
        // D(f/g)(x) = [D(f)(x) - (f/g)(φ'^k x) D(g)(x)] / g(φ^k x)
        let f = poly(&[1, 0, 0, 1]); // x³ + 1
        let g = poly(&[3, 0, 1]); // x² + 3
        let k = 2i64;
        let prec = 192u32;
        let q = {
            let (f, g) = (f.clone(), g.clone());
            NumericFunction::new("f/g", move |x, _| f.eval_float(x).div(&g.eval_float(x)))
        };
        let x = CFloat::new(rug::Float::with_val(prec, 1.5), rug::Float::with_val(prec, 0.5));
        let lhs = golden_derivative_fn(k, &q, &x, prec).unwrap();
        let phi_k = QuadraticNumber::phi_power(k).to_real(prec);
        let psi_k = QuadraticNumber::phi_conj_power(k).to_real(prec);
        let df = golden_derivative_poly(k, &f).unwrap().eval_float(&x);
        let dg = golden_derivative_poly(k, &g).unwrap().eval_float(&x);
        let x_lo = x.scale(&psi_k);
        let q_lo = f.eval_float(&x_lo).div(&g.eval_float(&x_lo));
        let rhs = df.sub(&q_lo.mul(&dg)).div(&g.eval_float(&x.scale(&phi_k)));
        let tol = rug::Float::with_val(prec, rug::Float::i_exp(1, -180));
        assert!(lhs.sub(&rhs).abs() < tol);
    }

    #[test]
    fn golden_periodic_hierarchy() {
        // f(x) = sin(π ln|x| / ln φ²) satisfies f(φ²x) = f(φ'²x) and is
        // annihilated by the 2nd Golden derivative, but
        // (1)D f = 2 cos(π ln|x| / ln φ²) / ((φ-φ') x) is nonzero.
        let prec = 192u32;
        let f = NumericFunction::new("golden-periodic", |x: &CFloat, p: u32| {
            let ctx = crate::numeric::Ctx::new(p);
            let arg = crate::numeric::CFloat::from_real(
                ctx.f(&ctx.pi() * &ctx.f(x.abs().ln() / (ctx.ln_phi() * 2u32))),
            );
            crate::numeric::CFloat::new(arg.re.sin(), ctx.zero())
        });
        let ctx = crate::numeric::Ctx::new(prec);
        for xv in [0.7f64, 1.3, 2.1] {
            let x = CFloat::from_real(ctx.f(xv));
            let d2 = golden_derivative_fn(2, &f, &x, prec).unwrap();
            assert!(d2.abs() < ctx.f(1e-40), "x={xv}, d2={}", d2.abs());
            let d1 = golden_derivative_fn(1, &f, &x, prec).unwrap();
            let want = ctx.f(
                &ctx.f(&ctx.pi() * &ctx.f(x.abs().ln() / (ctx.ln_phi() * 2u32))).cos() * 2u32,
            ) / (ctx.sqrt5() * ctx.f(xv));
            assert!(
                ctx.f(&d1.re - &want).abs() < ctx.f(1e-40),
                "x={xv}, d1={} want={want}",
                d1.re
            );
        }
    }

    #[test]
    fn binomial_expansion_theorem() {
        // (x+y)^n_F = Σ_m [n m] (-1)^(k m(m-1)/2) x^(n-m) y^m
        for k in [-3i64, -1, 1, 2, 3] {
            for n in 0..=7u32 {
                let y = ComplexQuadratic::new(
                    QuadraticNumber::from_int(2),
                    QuadraticNumber::phi_conj(),
                );
                let lhs = golden_binomial(k, n, &y, BinomialSign::Plus).unwrap();
                let mut rhs = GoldenPolynomial::zero();
                for m in 0..=n {
                    let fibo = crate::sequences::fibonomial(n as i64, m as i64, k).unwrap();
                    let mut c = ComplexQuadratic::from_real(QuadraticNumber::from_integer(&fibo));
                    let e = (k * (m as i64) * (m as i64 - 1) / 2) % 2 != 0;
                    if e {
                        c = -&c;
                    }
                    let term = GoldenPolynomial::monomial((n - m) as usize)
                        .scale(&(&c * &y.power(m as i64).unwrap()));
                    rhs = rhs.add(&term);
                }
                assert_eq!(lhs, rhs, "k={k}, n={n}");
            }
        }
    }

    #[test]
    fn binomial_factorization() {
        // (x-a)^(n+m)_F = (x - φ^(km) a)^n_F (x - φ'^(kn) a)^m_F
        //              = (x - φ^(kn) a)^m_F (x - φ'^(km) a)^n_F
        let a = ComplexQuadratic::new(QuadraticNumber::one(), QuadraticNumber::sqrt5());
        for k in [-2i64, 1, 2, 3] {
            for n in 0..=5i64 {
                for m in 0..=5i64 {
                    let lhs =
                        golden_binomial(k, (n + m) as u32, &a, BinomialSign::Minus).unwrap();
                    let a1 = a.scale(&QuadraticNumber::phi_power(k * m));
                    let a2 = a.scale(&QuadraticNumber::phi_conj_power(k * n));
                    let rhs = golden_binomial(k, n as u32, &a1, BinomialSign::Minus)
                        .unwrap()
                        .mul(&golden_binomial(k, m as u32, &a2, BinomialSign::Minus).unwrap());
                    assert_eq!(lhs, rhs, "k={k}, n={n}, m={m}");
                    let b1 = a.scale(&QuadraticNumber::phi_power(k * n));
                    let b2 = a.scale(&QuadraticNumber::phi_conj_power(k * m));
                    let rhs2 = golden_binomial(k, m as u32, &b1, BinomialSign::Minus)
                        .unwrap()
                        .mul(&golden_binomial(k, n as u32, &b2, BinomialSign::Minus).unwrap());
                    assert_eq!(lhs, rhs2, "swapped k={k}, n={n}, m={m}");
                }
            }
        }
    }

    #[test]
    fn translation_reduces_to_binomial_on_monomials() {
        let y = ComplexQuadratic::new(QuadraticNumber::phi(), QuadraticNumber::from_int(1));
        for k in [1i64, 2, -3] {
            for n in 0..=6usize {
                let t = golden_translate(k, &GoldenPolynomial::monomial(n), &y).unwrap();
                let b = golden_binomial(k, n as u32, &y, BinomialSign::Plus).unwrap();
                assert_eq!(t, b, "k={k}, n={n}");
            }
        }
        // Translation by zero is the identity.
        let p = poly(&[4, 0, -1, 2]);
        assert_eq!(
            golden_translate(3, &p, &ComplexQuadratic::zero()).unwrap(),
            p
        );
    }

    #[test]
    fn error_paths() {
        let p = poly(&[1, 1]);
        assert!(matches!(
            golden_derivative_poly(0, &p),
            Err(Error::InvalidOrder)
        ));
        let f = NumericFunction::new("id", |x: &CFloat, _| x.clone());
        let zero = CFloat::zero(64);
        assert!(matches!(
            golden_derivative_fn(1, &f, &zero, 64),
            Err(Error::EvaluationAtZero)
        ));
        assert!(matches!(
            golden_taylor(0, &p),
            Err(Error::InvalidOrder)
        ));
    }
}
