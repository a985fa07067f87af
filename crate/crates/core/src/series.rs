//! Generating functions, Golden exponentials, and exponential identity batteries.

use rug::{Complete, Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goldenfield::{ComplexQuadratic, QuadraticNumber};
use crate::numeric::{float_serde, CFloat, Ctx};
use crate::qcalculus::bivariate::{complex_binomial, BiPoly};
use crate::qcalculus::GoldenPolynomial;
use crate::sequences::{fibonacci, lucas};

/// Truncated power series with floating coefficients, low order first.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    pub coeffs: Vec<CFloat>,
    pub truncation_order: usize,
    pub precision_bits: u32,
}

/// A numerically evaluated series value together with a certified error bound
/// covering both the truncated tail and accumulated rounding.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: CFloat,
    pub tail_bound: Float,
}

/// One evaluated identity: both sides, their residual, and a certified bound
/// covering truncation and rounding.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub k: i64,
    #[serde(with = "float_serde")]
    pub x: Float,
    #[serde(with = "float_serde")]
    pub lhs: Float,
    #[serde(with = "float_serde")]
    pub rhs: Float,
    #[serde(with = "float_serde")]
    pub residual: Float,
    #[serde(with = "float_serde")]
    pub bound: Float,
}

impl IdentityReport {
    fn new(id: &str, k: i64, prec: u32, x: &Float, lhs: &Float, rhs: &Float, bound: &Float) -> Self {
        let residual = Float::with_val(prec, lhs - rhs).abs();
        Self {
            id: id.to_owned(),
            k,
            x: Float::with_val(prec, x),
            lhs: Float::with_val(prec, lhs),
            rhs: Float::with_val(prec, rhs),
            residual,
            bound: Float::with_val(prec, bound),
        }
    }

    /// True when the residual meets the certified bound.
    pub fn within_bound(&self) -> bool {
        self.residual <= self.bound
    }
}

/// The two Golden exponentials: e_F (plain) and E_F (sign-twisted).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpVariant {
    /// e_F^x = Σ x^n / F_n^(k)!
    Small,
    /// E_F^x = Σ (-1)^(k n(n-1)/2) x^n / F_n^(k)!
    Capital,
}

/// Coefficients of x/(1 - L_k x + (-1)^k x²) up to x^order, by formal series
/// inversion of the denominator (independent of the sequence recurrences).
pub fn generating_coeffs(k: i64, order: usize) -> Result<Vec<Integer>> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let lk = lucas(k);
    let minus_one_k = k % 2 == 0;
    // d = 1/(1 + b1 x + b2 x²) with b1 = -L_k, b2 = (-1)^k, via
    // d_n = -(b1 d_{n-1} + b2 d_{n-2})
    let mut d: Vec<Integer> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let v = if n == 0 {
            Integer::from(1)
        } else {
            let mut v = (&lk * &d[n - 1]).complete();
            if n >= 2 {
                if minus_one_k {
                    v -= &d[n - 2];
                } else {
                    v += &d[n - 2];
                }
            }
            v
        };
        d.push(v);
    }
    // multiply by x: shift up, constant term 0
    let mut c = Vec::with_capacity(order + 1);
    c.push(Integer::new());
    c.extend(d.into_iter().take(order));
    Ok(c)
}

/// Steps (F_m^(k), F_{m+1}^(k)) to (F_{m+1}^(k), F_{m+2}^(k)).
fn step_pair(pair: &mut (Integer, Integer), lk: &Integer, add_prev: bool) {
    let mut next = (lk * &pair.1).complete();
    if add_prev {
        next += &pair.0;
    } else {
        next -= &pair.0;
    }
    pair.0 = std::mem::replace(&mut pair.1, next);
}

fn capital_sign_flip(k: i64, n_minus_1: u64) -> bool {
    // stepping n-1 → n multiplies the sign by (-1)^(k(n-1))
    (k % 2 != 0) && (n_minus_1 % 2 == 1)
}

/// Exact truncated Golden exponential as a polynomial over Q(√5).
pub fn golden_exp_poly(k: i64, variant: ExpVariant, order: usize) -> Result<GoldenPolynomial> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let lk = lucas(k);
    let add_prev = k % 2 != 0;
    let mut pair = (Integer::new(), Integer::from(1));
    let mut fact = Integer::from(1);
    let mut sign_neg = false;
    let mut coeffs = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            fact *= &pair.1; // F_n^(k)
            step_pair(&mut pair, &lk, add_prev);
            if capital_sign_flip(k, n as u64 - 1) {
                sign_neg = !sign_neg;
            }
        }
        let use_neg = variant == ExpVariant::Capital && sign_neg;
        let mut r = Rational::from((Integer::from(1), fact.clone()));
        if use_neg {
            r = -r;
        }
        coeffs.push(ComplexQuadratic::from_real(QuadraticNumber::from_rational(r)));
    }
    Ok(GoldenPolynomial::from_coeffs(coeffs))
}

/// Floating coefficients of the truncated Golden exponential.
pub fn golden_exp_series(
    k: i64,
    variant: ExpVariant,
    order: usize,
    prec: u32,
) -> Result<TruncatedSeries> {
    let poly = golden_exp_poly(k, variant, order)?;
    let coeffs = (0..=order).map(|n| poly.coeff(n).to_cfloat(prec)).collect();
    Ok(TruncatedSeries {
        coeffs,
        truncation_order: order,
        precision_bits: prec,
    })
}

/// Evaluates the truncated Golden exponential at x with a certified error bound.
pub fn golden_exp_eval(
    k: i64,
    variant: ExpVariant,
    x: &CFloat,
    order: usize,
    prec: u32,
) -> Result<SeriesValue> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let wp = prec + 64;
    let xw = x.with_prec(wp);
    let lk = lucas(k);
    let add_prev = k % 2 != 0;
    let mut pair = (Integer::new(), Integer::from(1));
    let mut term = CFloat::one(wp);
    let mut sum = CFloat::zero(wp);
    let mut max_abs = Float::new(wp);
    let mut sign_neg = false;
    for n in 0..=order {
        if n > 0 {
            // t_n = t_{n-1} · x / F_n^(k)
            term = term.mul(&xw);
            term = term.scale(&Float::with_val(wp, &pair.1).recip());
            step_pair(&mut pair, &lk, add_prev);
            if variant == ExpVariant::Capital && capital_sign_flip(k, n as u64 - 1) {
                sign_neg = !sign_neg;
            }
        }
        let ta = term.abs();
        if ta > max_abs {
            max_abs = ta;
        }
        if sign_neg {
            sum = sum.sub(&term);
        } else {
            sum = sum.add(&term);
        }
    }
    // Truncated tail: walk |t_n| past the cutoff until negligible; the
    // factorial denominator grows superexponentially, so this terminates.
    let mut tail = Float::new(wp);
    let mut t_abs = term.abs();
    let x_abs = xw.abs();
    let one = Float::with_val(wp, 1);
    let floor = Float::with_val(wp, Float::i_exp(1, -(wp as i32) - 16)) * sum.abs().max(&one);
    let cap = 10 * wp as usize + 20 * order + 1000;
    let mut converged = false;
    for _ in 0..cap {
        t_abs *= &x_abs;
        t_abs /= Float::with_val(wp, &pair.1).abs();
        step_pair(&mut pair, &lk, add_prev);
        tail += &t_abs;
        if t_abs < floor {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::PrecisionUnachievable(
            "series tail did not converge at the requested order".into(),
        ));
    }
    tail *= 2u32; // headroom for the geometric remainder past the walk
    // Rounding: order+1 accumulated terms at working precision, plus the
    // final rounding to the output precision.
    let rounding = Float::with_val(
        wp,
        Float::i_exp(
            order as i32 + 8,
            max_abs.get_exp().unwrap_or(0) - wp as i32 + 1,
        ),
    );
    let out_round =
        Float::with_val(wp, Float::i_exp(1, -(prec as i32) + 2)) * sum.abs().max(&one);
    let bound = Float::with_val(prec, tail + rounding + out_round);
    Ok(SeriesValue {
        value: sum.with_prec(prec),
        tail_bound: bound,
    })
}

/// Working-precision padding that absorbs the e^(φ^|k| x) cancellation of the
/// exponential battery.
fn cancellation_pad(k: i64, xmax: f64) -> Result<u32> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let bits = phi.powi(k.unsigned_abs().min(1 << 20) as i32) * xmax * std::f64::consts::LOG2_E;
    if !bits.is_finite() || bits > 1e5 {
        return Err(Error::PrecisionUnachievable(format!(
            "order k = {k} needs about {bits:.0} working bits"
        )));
    }
    Ok(bits.ceil() as u32 + 64)
}

fn peak_index(k: i64, x_abs: f64) -> u64 {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    (phi.powi(k.unsigned_abs().min(64) as i32) * x_abs).ceil() as u64 + 8
}

/// A series summed to convergence at working precision, with an error bound.
struct SummedSeries {
    sum: Float,
    err_bound: Float,
}

/// Σ over m = start, start+step, ... of (±1)^l F_m^(k) x^m / m!, where l counts
/// the terms; `alternating` applies the (-1)^l.
fn fib_weighted_exp_series(
    k: i64,
    x: &Float,
    wp: u32,
    start: u64,
    step: u64,
    alternating: bool,
) -> SummedSeries {
    let lk = lucas(k);
    let add_prev = k % 2 != 0;
    let mut pair = (Integer::new(), Integer::from(1));
    for _ in 0..start {
        step_pair(&mut pair, &lk, add_prev);
    }
    // pair.0 = F_start, pair.1 = F_{start+1}; t = x^start/start!
    let mut t = Float::with_val(wp, 1);
    for d in 1..=start {
        t *= x;
        t /= d as u32;
    }
    let mut m = start;
    let mut sum = Float::new(wp);
    let mut max_abs = Float::new(wp);
    let mut count: u32 = 0;
    let mut sign_neg = false;
    let peak = peak_index(k, x.to_f64().abs());
    let mut small_streak = 0;
    let mut capped = true;
    while count < 400_000 {
        let term = Float::with_val(wp, &pair.0 * &t);
        let ta = term.clone().abs();
        if ta > max_abs {
            max_abs = ta.clone();
        }
        if sign_neg {
            sum -= &term;
        } else {
            sum += &term;
        }
        count += 1;
        let floor = Float::with_val(
            wp,
            Float::i_exp(1, max_abs.get_exp().unwrap_or(0) - wp as i32 - 20),
        );
        if m > peak && ta < floor {
            small_streak += 1;
            if small_streak >= 3 {
                capped = false;
                break;
            }
        } else {
            small_streak = 0;
        }
        for _ in 0..step {
            step_pair(&mut pair, &lk, add_prev);
        }
        for d in 1..=step {
            t *= x;
            t /= (m + d) as u32;
        }
        m += step;
        if alternating {
            sign_neg = !sign_neg;
        }
    }
    let err_bound = if capped {
        Float::with_val(wp, rug::float::Special::Infinity)
    } else {
        // count terms each within 2^-wp of the largest magnitude seen, plus
        // the superexponentially decaying truncated tail under the floor
        Float::with_val(
            wp,
            Float::i_exp(
                count as i32 + 64,
                max_abs.get_exp().unwrap_or(0) - wp as i32 + 1,
            ),
        )
    };
    SummedSeries { sum, err_bound }
}

/// Σ_{n≥1} F_{nk} x^n / n!, summed over plain Fibonacci numbers directly.
fn fibonacci_multiple_exp_series(k: i64, x: &Float, wp: u32) -> SummedSeries {
    let mut t = Float::with_val(wp, 1);
    let mut sum = Float::new(wp);
    let mut max_abs = Float::new(wp);
    let mut count: u32 = 0;
    let peak = peak_index(k, x.to_f64().abs());
    let mut small_streak = 0;
    let mut capped = true;
    let mut n: u64 = 0;
    while count < 400_000 {
        n += 1;
        t *= x;
        t /= n as u32;
        let term = Float::with_val(wp, &fibonacci(n as i64 * k) * &t);
        let ta = term.clone().abs();
        if ta > max_abs {
            max_abs = ta.clone();
        }
        sum += &term;
        count += 1;
        let floor = Float::with_val(
            wp,
            Float::i_exp(1, max_abs.get_exp().unwrap_or(0) - wp as i32 - 20),
        );
        if n > peak && ta < floor {
            small_streak += 1;
            if small_streak >= 3 {
                capped = false;
                break;
            }
        } else {
            small_streak = 0;
        }
    }
    let err_bound = if capped {
        Float::with_val(wp, rug::float::Special::Infinity)
    } else {
        Float::with_val(
            wp,
            Float::i_exp(
                count as i32 + 64,
                max_abs.get_exp().unwrap_or(0) - wp as i32 + 1,
            ),
        )
    };
    SummedSeries { sum, err_bound }
}

/// cos(mπ/2) for integer m: exactly 0, 1, or -1.
fn cos_half_pi(m: &Integer) -> i32 {
    match m.mod_u(4) {
        0 => 1,
        2 => -1,
        _ => 0,
    }
}

/// sin(mπ/2) for integer m: exactly 0, 1, or -1.
fn sin_half_pi(m: &Integer) -> i32 {
    match m.mod_u(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// cos(mπ) = (-1)^m for integer m.
fn cos_pi(m: &Integer) -> i32 {
    if m.is_odd() {
        -1
    } else {
        1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Point {
    Pi,
    TwoPiOverSqrt5,
    PiOverSqrt5,
    TwoPi,
    One,
    PiOverLucas,
    TwoPiOverSqrt5Fib,
    TwoPiOverLucas,
    PiOverSqrt5Fib,
}

fn point_value(p: Point, k: i64, ctx: &Ctx) -> Float {
    match p {
        Point::Pi => ctx.pi(),
        Point::TwoPi => ctx.pi() * 2u32,
        Point::One => ctx.f(1),
        Point::TwoPiOverSqrt5 => ctx.pi() * 2u32 / ctx.sqrt5(),
        Point::PiOverSqrt5 => ctx.pi() / ctx.sqrt5(),
        Point::PiOverLucas => ctx.pi() / ctx.f(lucas(k)),
        Point::TwoPiOverLucas => ctx.pi() * 2u32 / ctx.f(lucas(k)),
        Point::TwoPiOverSqrt5Fib => ctx.pi() * 2u32 / (ctx.sqrt5() * ctx.f(fibonacci(k))),
        Point::PiOverSqrt5Fib => ctx.pi() / (ctx.sqrt5() * ctx.f(fibonacci(k))),
    }
}

/// Evaluates the full battery of exponential summation identities at order k.
///
/// Eighteen items: the two exponential sums at x = 1, the odd-index cos·sin
/// identity at seven points, the even-index sin·sin identity at seven points,
/// and the two closed forms at x = π/(√5 F_k). Right sides that vanish because
/// a sine or cosine is taken at an integer multiple of π/2 are exactly zero.
pub fn identity_suite(k: i64, prec: u32) -> Result<Vec<IdentityReport>> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let wp = prec + cancellation_pad(k, 2.0 * std::f64::consts::PI + 0.5)?;
    let ctx = Ctx::new(wp);
    let lk = lucas(k);
    let fk = fibonacci(k);
    let lk_f = ctx.f(&lk);
    let s5fk = ctx.sqrt5() * ctx.f(&fk);
    let half_s5fk = s5fk.clone() / 2u32;
    let mut out = Vec::with_capacity(18);

    let finish = |id: &str, x: &Float, lhs: &Float, rhs: &Float, err: &Float| {
        let mut scale = Float::with_val(wp, lhs.clone().abs() + rhs.clone().abs());
        if scale < 1u32 {
            scale = Float::with_val(wp, 1);
        }
        let slack = scale * Float::with_val(wp, Float::i_exp(1, -(prec as i32) + 4));
        let bound = Float::with_val(wp, err + &slack);
        IdentityReport::new(id, k, prec, x, lhs, rhs, &bound)
    };

    // 1-2: exponential sums at x = 1
    {
        let one = ctx.f(1);
        let s = fib_weighted_exp_series(k, &one, wp, 1, 1, false);
        let rhs_core = (lk_f.clone() / 2u32).exp() * half_s5fk.clone().sinh();
        let rhs1 = rhs_core.clone() / &half_s5fk;
        out.push(finish("exp-sum-divisor", &one, &s.sum, &rhs1, &s.err_bound));
        let s2 = fibonacci_multiple_exp_series(k, &one, wp);
        let rhs2 = rhs_core / (ctx.sqrt5() / 2u32);
        out.push(finish("exp-sum-fibonacci", &one, &s2.sum, &rhs2, &s2.err_bound));
    }

    let odd_points = [
        ("odd-pi", Point::Pi),
        ("odd-2pi-sqrt5", Point::TwoPiOverSqrt5),
        ("odd-pi-sqrt5", Point::PiOverSqrt5),
        ("odd-2pi", Point::TwoPi),
        ("odd-one", Point::One),
        ("odd-pi-lucas", Point::PiOverLucas),
        ("odd-2pi-sqrt5fib", Point::TwoPiOverSqrt5Fib),
    ];
    for (id, p) in odd_points {
        let x = point_value(p, k, &ctx);
        let s = fib_weighted_exp_series(k, &x, wp, 1, 2, true);
        let rhs = match p {
            // sin(F_k π) = 0, sin(π) = 0, cos(π/2) = 0 exactly
            Point::TwoPiOverSqrt5 | Point::TwoPiOverSqrt5Fib | Point::PiOverLucas => ctx.zero(),
            Point::Pi => {
                let c = cos_half_pi(&lk);
                if c == 0 {
                    ctx.zero()
                } else {
                    (half_s5fk.clone() * ctx.pi()).sin() * c / &half_s5fk
                }
            }
            Point::PiOverSqrt5 => {
                let sgn = sin_half_pi(&fk);
                if sgn == 0 {
                    ctx.zero()
                } else {
                    (lk_f.clone() * ctx.pi() / (ctx.sqrt5() * 2u32)).cos() * sgn / &half_s5fk
                }
            }
            Point::TwoPi => (s5fk.clone() * ctx.pi()).sin() * cos_pi(&lk) / &half_s5fk,
            Point::One => (lk_f.clone() / 2u32).cos() * half_s5fk.clone().sin() / &half_s5fk,
            _ => unreachable!(),
        };
        out.push(finish(id, &x, &s.sum, &rhs, &s.err_bound));
    }

    let even_points = [
        ("even-pi", Point::Pi),
        ("even-2pi-sqrt5", Point::TwoPiOverSqrt5),
        ("even-pi-sqrt5", Point::PiOverSqrt5),
        ("even-2pi", Point::TwoPi),
        ("even-one", Point::One),
        ("even-pi-lucas", Point::PiOverLucas),
        ("even-2pi-lucas", Point::TwoPiOverLucas),
    ];
    for (id, p) in even_points {
        let x = point_value(p, k, &ctx);
        let s = fib_weighted_exp_series(k, &x, wp, 2, 2, true);
        let rhs = match p {
            // sin(F_k π) = 0, sin(L_k π) = 0, sin(π) = 0, sin(2π) = 0 exactly
            Point::TwoPiOverSqrt5 | Point::TwoPi | Point::TwoPiOverLucas => ctx.zero(),
            Point::Pi => {
                let sgn = sin_half_pi(&lk);
                if sgn == 0 {
                    ctx.zero()
                } else {
                    (half_s5fk.clone() * ctx.pi()).sin() * sgn / &half_s5fk
                }
            }
            Point::PiOverSqrt5 => {
                let sgn = sin_half_pi(&fk);
                if sgn == 0 {
                    ctx.zero()
                } else {
                    (lk_f.clone() * ctx.pi() / (ctx.sqrt5() * 2u32)).sin() * sgn / &half_s5fk
                }
            }
            Point::One => (lk_f.clone() / 2u32).sin() * half_s5fk.clone().sin() / &half_s5fk,
            Point::PiOverLucas => {
                // sin(π/2) = 1 leaves the second factor alone
                (s5fk.clone() * ctx.pi() / (lk_f.clone() * 2u32)).sin() / &half_s5fk
            }
            _ => unreachable!(),
        };
        out.push(finish(id, &x, &s.sum, &rhs, &s.err_bound));
    }

    // 17-18: closed forms at x = π/(√5 F_k), with both sides divided by x.
    {
        let x = point_value(Point::PiOverSqrt5Fib, k, &ctx);
        let two_over_pi = ctx.f(2) / ctx.pi();
        let arg = lk_f.clone() * ctx.pi() / (s5fk.clone() * 2u32);
        let s_odd = fib_weighted_exp_series(k, &x, wp, 1, 2, true);
        let lhs_odd = s_odd.sum.clone() / &x;
        let rhs_odd = two_over_pi.clone() * arg.clone().cos();
        let err_odd = (s_odd.err_bound.clone() / &x).abs();
        out.push(finish("odd-closed-pi-sqrt5fib", &x, &lhs_odd, &rhs_odd, &err_odd));
        let s_even = fib_weighted_exp_series(k, &x, wp, 2, 2, true);
        let lhs_even = s_even.sum.clone() / &x;
        let rhs_even = two_over_pi * arg.sin();
        let err_even = (s_even.err_bound.clone() / &x).abs();
        out.push(finish(
            "even-closed-pi-sqrt5fib",
            &x,
            &lhs_even,
            &rhs_even,
            &err_even,
        ));
    }

    Ok(out)
}

/// Residual of the entire generating function
/// Σ_{n=1}^order F_n^(k) x^n/n! = e^(L_k x/2) sinh(√5 F_k x/2)/(√5 F_k/2)
/// at fixed truncation order, with the true truncation tail in the bound.
pub fn entire_gf_residual(k: i64, x: &Float, order: usize, prec: u32) -> Result<IdentityReport> {
    if k == 0 || order == 0 {
        return Err(Error::InvalidOrder);
    }
    let xa = x.to_f64().abs();
    let wp = prec + cancellation_pad(k, xa + 0.5)?;
    let ctx = Ctx::new(wp);
    let xw = ctx.f(x);
    let lk = lucas(k);
    let fk = fibonacci(k);
    let add_prev = k % 2 != 0;
    // pair = (F_1, F_2)
    let mut pair = (Integer::new(), Integer::from(1));
    step_pair(&mut pair, &lk, add_prev);
    let mut t = xw.clone(); // x^1/1!
    let mut sum = Float::new(wp);
    let mut max_abs = Float::new(wp);
    for n in 1..=order {
        let term = Float::with_val(wp, &pair.0 * &t);
        let ta = term.clone().abs();
        if ta > max_abs {
            max_abs = ta;
        }
        sum += term;
        step_pair(&mut pair, &lk, add_prev);
        t *= &xw;
        t /= (n + 1) as u32;
    }
    // True truncation tail: walk |Σ_{n>order}| term by term until it falls
    // below the rounding floor.
    let mut tail = Float::new(wp);
    let peak = peak_index(k, xa) as usize;
    let cap = 100 * (order + peak) + 100_000;
    let mut n = order;
    let mut converged = false;
    while n < cap {
        let ta = Float::with_val(wp, &pair.0 * &t).abs();
        tail += &ta;
        step_pair(&mut pair, &lk, add_prev);
        t *= &xw;
        n += 1;
        t /= (n + 1) as u32;
        let floor = Float::with_val(
            wp,
            Float::i_exp(1, max_abs.get_exp().unwrap_or(0) - wp as i32 - 20),
        );
        if n > peak + order && ta < floor {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::PrecisionUnachievable(
            "truncation tail walk did not terminate".into(),
        ));
    }
    let s5fk = ctx.sqrt5() * ctx.f(&fk);
    let half_s5fk = s5fk.clone() / 2u32;
    let rhs = (ctx.f(&lk) * xw.clone() / 2u32).exp() * (half_s5fk.clone() * xw.clone()).sinh()
        / &half_s5fk;
    let rounding = Float::with_val(
        wp,
        Float::i_exp(
            order as i32 + 64,
            max_abs.get_exp().unwrap_or(0) - wp as i32 + 1,
        ),
    );
    let mut scale = Float::with_val(wp, sum.clone().abs() + rhs.clone().abs());
    if scale < 1u32 {
        scale = Float::with_val(wp, 1);
    }
    let out_round = scale * Float::with_val(wp, Float::i_exp(1, -(prec as i32) + 4));
    let bound = Float::with_val(wp, &tail + &rounding) + out_round;
    Ok(IdentityReport::new("entire-gf", k, prec, &xw, &sum, &rhs, &bound))
}

/// Exact residuals of the Golden Cauchy-Riemann pair and Laplace operator for
/// the polynomial f(z) = Σ coeffs[n] z^n composed as f((x + iy)_F).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticReport {
    /// (k)D_x u - (-k)D_y v at the point.
    pub cr_first: QuadraticNumber,
    /// (-k)D_y u + (k)D_x v at the point.
    pub cr_second: QuadraticNumber,
    /// ((k)D_x)² u + ((-k)D_y)² u at the point.
    pub laplace: QuadraticNumber,
}

pub fn analytic_residuals(
    k: i64,
    coeffs: &[ComplexQuadratic],
    x: &QuadraticNumber,
    y: &QuadraticNumber,
) -> Result<AnalyticReport> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let mut f = BiPoly::zero();
    for (n, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        f = f.add(&complex_binomial(k, n as u32, &ComplexQuadratic::i())?.scale(c));
    }
    let u = f.re_part();
    let v = f.im_part();
    let cr1 = u.golden_derivative_x(k)?.sub(&v.golden_derivative_y(-k)?);
    let cr2 = u.golden_derivative_y(-k)?.add(&v.golden_derivative_x(k)?);
    let lap = u
        .golden_derivative_x(k)?
        .golden_derivative_x(k)?
        .add(&u.golden_derivative_y(-k)?.golden_derivative_y(-k)?);
    let xx = ComplexQuadratic::from_real(x.clone());
    let yy = ComplexQuadratic::from_real(y.clone());
    Ok(AnalyticReport {
        cr_first: cr1.eval(&xx, &yy).re,
        cr_second: cr2.eval(&xx, &yy).re,
        laplace: lap.eval(&xx, &yy).re,
    })
}
