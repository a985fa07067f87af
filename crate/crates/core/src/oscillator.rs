//! Golden deformed oscillator hierarchy: ladder matrices, spectra,
//! semiclassical expansion, coherent states, and the holomorphic realization.

use rug::{Complete, Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::goldenfield::QuadraticNumber;
use crate::numeric::{CFloat, Ctx};
use crate::qcalculus::{golden_derivative_poly, GoldenPolynomial};
use crate::sequences::{fib_divisor_nk, lucas};

/// Dense truncated Fock-space operator over arbitrary-precision reals. For
/// diagonal operators with integer spectra the exact diagonal rides along.
#[derive(Clone, Debug)]
pub struct FockOperator {
    dim: usize,
    prec: u32,
    entries: Vec<Float>, // row-major dim × dim
    pub exact_diag: Option<Vec<Integer>>,
}

impl FockOperator {
    fn zeros(dim: usize, prec: u32) -> Self {
        Self {
            dim,
            prec,
            entries: vec![Float::new(prec); dim * dim],
            exact_diag: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn precision_bits(&self) -> u32 {
        self.prec
    }

    pub fn entry(&self, i: usize, j: usize) -> &Float {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Float) {
        self.entries[i * self.dim + j] = v;
    }

    /// Matrix product at this operator's precision.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut out = Self::zeros(self.dim, self.prec);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = Float::new(self.prec);
                for l in 0..self.dim {
                    acc += Float::with_val(self.prec, self.entry(i, l) * o.entry(l, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Applies the operator to a complex vector.
    pub fn mul_vec(&self, v: &[CFloat]) -> Vec<CFloat> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        (0..self.dim)
            .map(|i| {
                let mut acc = CFloat::zero(self.prec);
                for (j, vj) in v.iter().enumerate() {
                    acc = acc.add(&vj.scale(self.entry(i, j)));
                }
                acc
            })
            .collect()
    }

    /// Transpose (these operators are real, so this is the adjoint).
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.dim, self.prec);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.entry(j, i).clone());
            }
        }
        out
    }
}

/// Walks F_1^(k), F_2^(k), ... returning the first `count` values.
fn divisor_run(k: i64, count: usize) -> Vec<Integer> {
    let lk = lucas(k);
    let add_prev = k % 2 != 0;
    let mut pair = (Integer::new(), Integer::from(1));
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(pair.1.clone());
        let mut next = (&lk * &pair.1).complete();
        if add_prev {
            next += &pair.0;
        } else {
            next -= &pair.0;
        }
        pair.0 = std::mem::replace(&mut pair.1, next);
    }
    out
}

/// Lowering/raising pair (b, b†) truncated to dimension `dim`: b has
/// √F_{n+1}^(k) on the first superdiagonal, b† on the first subdiagonal.
pub fn ladder_matrices(k: i64, dim: usize, prec: u32) -> Result<(FockOperator, FockOperator)> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if dim < 2 {
        return Err(Error::OutOfDomain("dimension must be at least 2".into()));
    }
    let run = divisor_run(k, dim - 1); // F_1 .. F_{dim-1}
    let mut b = FockOperator::zeros(dim, prec);
    let mut bdag = FockOperator::zeros(dim, prec);
    for (n, f) in run.iter().enumerate() {
        if *f < 0 {
            return Err(Error::OutOfDomain(format!(
                "ladder entry √F_{}^({k}) is imaginary: the sequence value is negative",
                n + 1
            )));
        }
        let s = Float::with_val(prec, f).sqrt();
        b.set(n, n + 1, s.clone());
        bdag.set(n + 1, n, s);
    }
    Ok((b, bdag))
}

/// The deformed number operator: diagonal F_n^(k) for n = 0..dim-1, carrying
/// the exact integer diagonal.
pub fn number_operator(k: i64, dim: usize, prec: u32) -> Result<FockOperator> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if dim < 2 {
        return Err(Error::OutOfDomain("dimension must be at least 2".into()));
    }
    let mut diag = vec![Integer::new()];
    diag.extend(divisor_run(k, dim - 1));
    let mut op = FockOperator::zeros(dim, prec);
    for (n, f) in diag.iter().enumerate() {
        op.set(n, n, Float::with_val(prec, f));
    }
    op.exact_diag = Some(diag);
    Ok(op)
}

/// Exact residuals of the two deformed commutation identities at level n:
/// F_{n+1}^(k) − φ^k F_n^(k) − φ′^{kn} and F_{n+1}^(k) − φ′^k F_n^(k) − φ^{kn}.
/// Both vanish identically; the return values are the left-hand sides.
pub fn deformed_commutator_residuals(
    k: i64,
    n_max: u64,
) -> Result<Vec<(QuadraticNumber, QuadraticNumber)>> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let phi_k = QuadraticNumber::phi_power(k);
    let conj_k = QuadraticNumber::phi_conj_power(k);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let fn_ = QuadraticNumber::from_integer(&fib_divisor_nk(n as i64, k)?);
        let fn1 = QuadraticNumber::from_integer(&fib_divisor_nk(n as i64 + 1, k)?);
        let r1 = &(&fn1 - &(&phi_k * &fn_)) - &QuadraticNumber::phi_conj_power(k * n as i64);
        let r2 = &(&fn1 - &(&conj_k * &fn_)) - &QuadraticNumber::phi_power(k * n as i64);
        out.push((r1, r2));
    }
    Ok(out)
}

/// One oscillator level: index and energy in units of ħω/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub n: u64,
    pub energy_halfquanta: Integer,
}

/// Bosonic spectrum E_n = F_n^(k) + F_{n+1}^(k) for n = 0..n_max, exact, in
/// half-quantum units.
pub fn bosonic_spectrum(k: i64, n_max: u64) -> Result<Vec<SpectrumEntry>> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let lk = lucas(k);
    let add_prev = k % 2 != 0;
    let mut pair = (Integer::new(), Integer::from(1)); // (F_0, F_1)
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        out.push(SpectrumEntry {
            n,
            energy_halfquanta: (&pair.0 + &pair.1).complete(),
        });
        let mut next = (&lk * &pair.1).complete();
        if add_prev {
            next += &pair.0;
        } else {
            next -= &pair.0;
        }
        pair.0 = std::mem::replace(&mut pair.1, next);
    }
    Ok(out)
}

/// Fermionic spectrum E_n = F_n^(k) − F_{n+1}^(k) for n = 0..n_max, exact and
/// signed (the values are negative for positive odd k).
pub fn fermionic_spectrum(k: i64, n_max: u64) -> Result<Vec<SpectrumEntry>> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if k % 2 == 0 {
        return Err(Error::EvenOrderForFermionic(k));
    }
    let lk = lucas(k);
    let mut pair = (Integer::new(), Integer::from(1));
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        out.push(SpectrumEntry {
            n,
            energy_halfquanta: (&pair.0 - &pair.1).complete(),
        });
        let next = (&lk * &pair.1).complete() + &pair.0;
        pair.0 = std::mem::replace(&mut pair.1, next);
    }
    Ok(out)
}

/// ΔE_n/E_n = (E_{n+1} − E_n)/E_n for the bosonic spectrum, as a float.
pub fn bosonic_gap_ratio(k: i64, n: u64, prec: u32) -> Result<Float> {
    let spec = bosonic_spectrum(k, n + 1)?;
    let e_n = &spec[n as usize].energy_halfquanta;
    let e_n1 = &spec[n as usize + 1].energy_halfquanta;
    let gap = Float::with_val(prec, (e_n1 - e_n).complete());
    Ok(gap / Float::with_val(prec, e_n))
}

/// Bernoulli numbers B_0..B_max (B_1 = −1/2 convention), exact.
fn bernoulli_numbers(max: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(max as usize + 1);
    for m in 0..=max {
        if m == 0 {
            b.push(Rational::from(1));
            continue;
        }
        // B_m = −1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut acc = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            let c = Integer::binomial_u(m + 1, j as u32).complete();
            acc += (bj * &c).complete();
        }
        acc /= -Rational::from(m + 1);
        b.push(acc);
    }
    b
}

/// Bernoulli polynomial B_m(x) = Σ_j C(m, j) B_j x^(m−j), exact.
pub fn bernoulli_polynomial(m: u32, x: &Rational) -> Rational {
    let numbers = bernoulli_numbers(m);
    let mut acc = Rational::new();
    let mut xpow = Rational::from(1); // x^(m-j) built from j = m downwards
    for j in (0..=m).rev() {
        let c = Integer::binomial_u(m, j).complete();
        acc += Rational::from(&numbers[j as usize] * &c) * &xpow;
        if j > 0 {
            xpow *= x;
        }
    }
    acc
}

/// Semiclassical energy 2(n+½) + 2 Σ_{s=1..S} B_{2s+1}(n+1) (k ln φ)^{2s}/(2s+1)!
/// in half-quantum units, for even k (the sinh closed form regime). At k = 0
/// every correction vanishes, leaving the linear-oscillator level 2n+1.
pub fn semiclassical_energy(k: i64, n: u64, s_terms: u32, prec: u32) -> Result<Float> {
    if k % 2 != 0 {
        return Err(Error::OddOrderForSemiclassical(k));
    }
    if s_terms == 0 {
        return Err(Error::InvalidOrder);
    }
    let wp = prec + 32;
    let ctx = Ctx::new(wp);
    let mut e = ctx.f(2 * n + 1);
    if k != 0 {
        let t = ctx.f(k) * ctx.ln_phi();
        let t2 = t.clone() * &t;
        let x = Rational::from(n + 1);
        let mut tpow = Float::with_val(wp, 1);
        let mut fact = Integer::from(1); // (2s+1)! built incrementally
        for s in 1..=s_terms {
            tpow *= &t2;
            fact *= 2 * s;
            fact *= 2 * s + 1;
            let b = bernoulli_polynomial(2 * s + 1, &x);
            let term = ctx.rational(&b) * &tpow / ctx.f(&fact);
            e += term * 2u32;
        }
    }
    Ok(Float::with_val(prec, e))
}

/// Truncated coherent state: eigenvector of the lowering operator with
/// eigenvalue β, normalized against the partial exponential sum at the same
/// truncation order.
#[derive(Clone, Debug)]
pub struct CoherentState {
    pub k: i64,
    pub dim: usize,
    pub beta: CFloat,
    pub amplitudes: Vec<CFloat>,
    /// ‖(b − β)|β⟩‖ computed by a direct matrix-vector product.
    pub eigen_residual: Float,
    /// Certified upper bound on the residual: the truncation boundary term
    /// plus rounding slack.
    pub tail_bound: Float,
}

pub fn coherent_state(k: i64, beta: &CFloat, dim: usize, prec: u32) -> Result<CoherentState> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if dim < 2 {
        return Err(Error::OutOfDomain("dimension must be at least 2".into()));
    }
    let wp = prec + 32;
    let bw = beta.with_prec(wp);
    let run = divisor_run(k, dim - 1); // F_1 .. F_{dim-1}
    for (n, f) in run.iter().enumerate() {
        if *f < 0 {
            return Err(Error::OutOfDomain(format!(
                "coherent amplitudes need positive sequence values; F_{}^({k}) is negative",
                n + 1
            )));
        }
    }
    // unnormalized a_n = β^n/√(F_n^(k)!)
    let mut unnorm = Vec::with_capacity(dim);
    let mut cur = CFloat::one(wp);
    unnorm.push(cur.clone());
    for f in &run {
        cur = cur.mul(&bw);
        cur = cur.scale(&Float::with_val(wp, f).sqrt().recip());
        unnorm.push(cur.clone());
    }
    let mut norm_sq = Float::new(wp);
    for a in &unnorm {
        norm_sq += a.norm_sq();
    }
    let scale = norm_sq.sqrt().recip();
    let amplitudes: Vec<CFloat> = unnorm.iter().map(|a| a.scale(&scale)).collect();
    // direct residual via the truncated lowering matrix
    let (b, _) = ladder_matrices(k, dim, wp)?;
    let bv = b.mul_vec(&amplitudes);
    let mut res_sq = Float::new(wp);
    for (n, bvn) in bv.iter().enumerate() {
        let r = bvn.sub(&amplitudes[n].mul(&bw));
        res_sq += r.norm_sq();
    }
    let eigen_residual = Float::with_val(prec, res_sq.sqrt());
    let boundary = bw.abs() * amplitudes[dim - 1].abs();
    let slack = Float::with_val(wp, Float::i_exp(1, -(prec as i32) + 6))
        * (Float::with_val(wp, &bw.abs() + &Float::with_val(wp, 1)));
    let tail_bound = Float::with_val(prec, boundary + slack);
    Ok(CoherentState {
        k,
        dim,
        beta: beta.clone(),
        amplitudes,
        eigen_residual,
        tail_bound,
    })
}

/// ⟨a|b⟩ by direct amplitude summation.
pub fn coherent_overlap(a: &CoherentState, b: &CoherentState) -> Result<CFloat> {
    if a.k != b.k || a.dim != b.dim {
        return Err(Error::OutOfDomain(
            "overlap requires matching order and dimension".into(),
        ));
    }
    let prec = a.amplitudes[0].prec().max(b.amplitudes[0].prec());
    let mut acc = CFloat::zero(prec);
    for (x, y) in a.amplitudes.iter().zip(&b.amplitudes) {
        acc = acc.add(&x.conj().mul(y));
    }
    Ok(acc)
}

/// Applies the holomorphic number operator z·(k)D_z: monomials z^s are
/// eigenvectors with exact eigenvalue F_s^(k).
pub fn bargman_apply(k: i64, p: &GoldenPolynomial) -> Result<GoldenPolynomial> {
    let d = golden_derivative_poly(k, p)?;
    if d.is_zero() {
        return Ok(GoldenPolynomial::zero());
    }
    let mut coeffs = vec![crate::goldenfield::ComplexQuadratic::zero()];
    coeffs.extend(d.coeffs().iter().cloned());
    Ok(GoldenPolynomial::from_coeffs(coeffs))
}

/// Real-k continuation of the bosonic occupation value:
/// sinh(n k ln φ)/sinh(k ln φ), which equals F_n^(k) at even integer k and
/// tends to n as k → 0. At k = 0 the limit value n is returned.
pub fn bosonic_number_continuation(k: &Float, n: u64) -> Float {
    let prec = k.prec();
    let wp = prec + 16;
    let ctx = Ctx::new(wp);
    let t = ctx.f(k) * ctx.ln_phi();
    if t.is_zero() {
        return ctx.f(n);
    }
    let num = (t.clone() * ctx.f(n)).sinh();
    Float::with_val(prec, num / t.sinh())
}

/// Real-k continuation of the fermionic occupation value:
/// (φ^{kn} − (−1)^n φ^{−kn})/(φ^k + φ^{−k}), which equals F_n^(k) at odd
/// integer k and tends to the parity bit of n as k → 0.
pub fn fermionic_number_continuation(k: &Float, n: u64) -> Float {
    let prec = k.prec();
    let wp = prec + 16;
    let ctx = Ctx::new(wp);
    let t = ctx.f(k) * ctx.ln_phi();
    let nt = t.clone() * ctx.f(n);
    let mut num = nt.clone().exp();
    let neg = (-nt).exp();
    if n % 2 == 0 {
        num -= neg;
    } else {
        num += neg;
    }
    let den = t.clone().exp() + (-t).exp();
    Float::with_val(prec, num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::fibonacci;

    fn energies(v: &[SpectrumEntry]) -> Vec<Integer> {
        v.iter().map(|e| e.energy_halfquanta.clone()).collect()
    }

    #[test]
    fn ladder_superdiagonals() {
        let (b, bdag) = ladder_matrices(1, 4, 128).unwrap();
        for (n, f) in [1u32, 1, 2].iter().enumerate() {
            let want = Float::with_val(128, *f).sqrt();
            assert_eq!(*b.entry(n, n + 1), want);
            assert_eq!(*bdag.entry(n + 1, n), want);
        }
        let (b2, _) = ladder_matrices(2, 4, 128).unwrap();
        for (n, f) in [1u32, 3, 8].iter().enumerate() {
            assert_eq!(*b2.entry(n, n + 1), Float::with_val(128, *f).sqrt());
        }
        // off-superdiagonal entries are exactly zero
        assert!(b.entry(0, 0).is_zero());
        assert!(b.entry(1, 0).is_zero());
        assert!(b.entry(0, 3).is_zero());
    }

    #[test]
    fn ladder_products_recover_number_operators() {
        let prec = 192;
        for k in [1i64, 2, 3, 5] {
            let dim = 8;
            let (b, bdag) = ladder_matrices(k, dim, prec).unwrap();
            let num = bdag.mul(&b); // diagonal F_n
            let anti = b.mul(&bdag); // diagonal F_{n+1}, truncation edge at the end
            let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 16));
            for n in 0..dim {
                let f_n = Float::with_val(prec, &fib_divisor_nk(n as i64, k).unwrap());
                let tol = eps.clone() * f_n.clone().max(&Float::with_val(prec, 1));
                let d = Float::with_val(prec, num.entry(n, n) - f_n).abs();
                assert!(d < tol, "k={k} n={n}: b†b diag off by {d}");
                if n + 1 < dim {
                    let f_n1 = Float::with_val(prec, &fib_divisor_nk(n as i64 + 1, k).unwrap());
                    let tol = eps.clone() * f_n1.clone().max(&Float::with_val(prec, 1));
                    let d = Float::with_val(prec, anti.entry(n, n) - f_n1).abs();
                    assert!(d < tol, "k={k} n={n}: bb† diag off by {d}");
                }
            }
            // truncation edge: the final bb† entry collapses to zero
            assert!(anti.entry(dim - 1, dim - 1).is_zero());
            // off-diagonals vanish exactly (products of disjoint zero patterns)
            assert!(num.entry(0, 1).is_zero());
            assert!(anti.entry(2, 4).is_zero());
        }
    }

    #[test]
    fn deformed_commutators_vanish_exactly() {
        for k in [-8i64, -3, -1, 1, 2, 3, 8] {
            for (r1, r2) in deformed_commutator_residuals(k, 20).unwrap() {
                assert!(r1.is_zero(), "first identity fails at k={k}");
                assert!(r2.is_zero(), "second identity fails at k={k}");
            }
        }
    }

    #[test]
    fn bosonic_spectrum_tables() {
        let e3 = energies(&bosonic_spectrum(3, 4).unwrap());
        assert_eq!(e3[1..], [5, 21, 89, 377].map(Integer::from));
        let e4 = energies(&bosonic_spectrum(4, 4).unwrap());
        assert_eq!(e4[1..], [8, 55, 377, 2584].map(Integer::from));
        let e5 = energies(&bosonic_spectrum(5, 4).unwrap());
        assert_eq!(e5[1..], [12, 133, 1475, 16358].map(Integer::from));
        // k=2 from the spectrum formula over F^(2) = 0,1,3,8,21,55
        let e2 = energies(&bosonic_spectrum(2, 4).unwrap());
        assert_eq!(e2, [1, 4, 11, 29, 76].map(Integer::from));
    }

    #[test]
    fn spectrum_recurrence_and_gap_formulas() {
        for k in [-5i64, -2, 1, 2, 3, 7, 10] {
            let lk = lucas(k);
            let spec = energies(&bosonic_spectrum(k, 60).unwrap());
            for n in 1..60usize {
                let mut want = (&lk * &spec[n]).complete();
                if k % 2 == 0 {
                    want -= &spec[n - 1];
                } else {
                    want += &spec[n - 1];
                }
                assert_eq!(spec[n + 1], want, "recurrence k={k} n={n}");
            }
            // gap: L_k F_{n+1} for odd k; L_k F_{n+1} − 2F_n for even k
            for n in 0..20u64 {
                let gap = (&spec[n as usize + 1] - &spec[n as usize]).complete();
                let f_n1 = fib_divisor_nk(n as i64 + 1, k).unwrap();
                let mut want = (&lk * &f_n1).complete();
                if k % 2 == 0 {
                    want -= 2 * fib_divisor_nk(n as i64, k).unwrap();
                }
                assert_eq!(gap, want, "gap k={k} n={n}");
            }
        }
    }

    #[test]
    fn bosonic_even_k_sinh_closed_form() {
        let prec = 256;
        let ctx = Ctx::new(prec);
        let tol = ctx.f(1e-60);
        for k in [2i64, 4, 6] {
            let spec = bosonic_spectrum(k, 10).unwrap();
            for e in &spec {
                let t = ctx.f(k) * ctx.ln_phi();
                let half = ctx.f(0.5);
                let num = ((ctx.f(e.n) + &half) * t.clone()).sinh();
                let den = (t * half).sinh();
                let closed = num / den;
                let d = (closed - ctx.f(&e.energy_halfquanta)).abs();
                assert!(d < tol, "k={k} n={}: {d}", e.n);
            }
        }
    }

    #[test]
    fn fermionic_spectrum_tables_and_sign() {
        let e3 = energies(&fermionic_spectrum(3, 4).unwrap());
        assert_eq!(
            e3[1..],
            [-3, -13, -55, -233].map(Integer::from),
            "signed values"
        );
        let e5 = energies(&fermionic_spectrum(5, 4).unwrap());
        assert_eq!(e5[1..], [-10, -111, -1231, -13652].map(Integer::from));
        // k=1: |E_n| = F_{n−1}
        let e1 = energies(&fermionic_spectrum(1, 10).unwrap());
        for n in 1..=10i64 {
            assert_eq!(-e1[n as usize].clone(), fibonacci(n - 1), "n={n}");
        }
        assert!(matches!(
            fermionic_spectrum(4, 3),
            Err(Error::EvenOrderForFermionic(4))
        ));
    }

    #[test]
    fn bernoulli_values() {
        let x2 = Rational::from(2);
        assert_eq!(bernoulli_polynomial(0, &Rational::from((7, 3))), 1);
        assert_eq!(bernoulli_polynomial(1, &Rational::from((1, 2))), 0);
        assert_eq!(bernoulli_polynomial(3, &x2), 3);
        assert_eq!(bernoulli_polynomial(5, &x2), 5);
        let numbers = bernoulli_numbers(12);
        assert_eq!(numbers[2], Rational::from((1, 6)));
        assert_eq!(numbers[4], Rational::from((-1, 30)));
        assert_eq!(numbers[6], Rational::from((1, 42)));
        assert_eq!(numbers[8], Rational::from((-1, 30)));
        assert_eq!(numbers[10], Rational::from((5, 66)));
        assert_eq!(numbers[12], Rational::from((-691, 2730)));
        for odd in [3usize, 5, 7, 9, 11] {
            assert_eq!(numbers[odd], 0, "B_{odd} = 0");
        }
    }

    #[test]
    fn semiclassical_matches_exact_at_low_levels() {
        // k=2, n=1: exact E = F_1 + F_2 = 4; also equals 1 + 2cosh(k ln φ)
        let e = semiclassical_energy(2, 1, 12, 256).unwrap();
        let d = (e.clone() - Float::with_val(256, 4)).abs();
        assert!(d < Float::with_val(256, 1e-10), "S=12 deviation {d}");
        let ctx = Ctx::new(256);
        let cosh_form = ctx.f(1) + (ctx.f(2) * ctx.ln_phi()).cosh() * 2u32;
        let d2 = (e - cosh_form).abs();
        assert!(d2 < ctx.f(1e-10));
        // k=0 row: the linear oscillator
        let e0 = semiclassical_energy(0, 5, 3, 128).unwrap();
        assert_eq!(e0, Float::with_val(128, 11));
        assert!(matches!(
            semiclassical_energy(3, 1, 5, 128),
            Err(Error::OddOrderForSemiclassical(3))
        ));
    }

    #[test]
    fn coherent_state_vacuum_and_residual() {
        let ctx = Ctx::new(128);
        let zero = CFloat::zero(128);
        let vac = coherent_state(1, &zero, 10, 128).unwrap();
        assert!(vac.eigen_residual.is_zero());
        assert_eq!(vac.amplitudes[0], CFloat::one(128).with_prec(160));
        for a in &vac.amplitudes[1..] {
            assert!(a.is_zero());
        }
        for k in [1i64, 3, 5] {
            let beta = CFloat::new(ctx.f(0.5), ctx.f(0.125));
            let st = coherent_state(k, &beta, 40, 128).unwrap();
            assert!(
                st.eigen_residual < ctx.f(1e-20),
                "k={k}: residual {}",
                st.eigen_residual
            );
            assert!(
                st.eigen_residual <= st.tail_bound,
                "k={k}: residual {} exceeds bound {}",
                st.eigen_residual,
                st.tail_bound
            );
            let mut norm = Float::new(160);
            for a in &st.amplitudes {
                norm += a.norm_sq();
            }
            let d = (norm - Float::with_val(160, 1)).abs();
            assert!(d < ctx.f(1e-30), "k={k}: norm off by {d}");
        }
    }

    #[test]
    fn coherent_overlap_closed_form() {
        use crate::series::{golden_exp_eval, ExpVariant};
        let prec = 192;
        let ctx = Ctx::new(prec);
        let k = 2i64;
        let dim = 40usize;
        let alpha = CFloat::new(ctx.f(0.3), ctx.f(0.2));
        let beta = CFloat::new(ctx.f(0.5), ctx.f(-0.1));
        let sa = coherent_state(k, &alpha, dim, prec).unwrap();
        let sb = coherent_state(k, &beta, dim, prec).unwrap();
        let direct = coherent_overlap(&sa, &sb).unwrap();
        // closed form with partial sums at the same order
        let cross = alpha.conj().mul(&beta);
        let e_cross = golden_exp_eval(k, ExpVariant::Small, &cross, dim - 1, prec).unwrap();
        let e_a = golden_exp_eval(
            k,
            ExpVariant::Small,
            &CFloat::from_real(alpha.norm_sq()),
            dim - 1,
            prec,
        )
        .unwrap();
        let e_b = golden_exp_eval(
            k,
            ExpVariant::Small,
            &CFloat::from_real(beta.norm_sq()),
            dim - 1,
            prec,
        )
        .unwrap();
        let denom = (e_a.value.re.clone() * e_b.value.re.clone()).sqrt();
        let closed = e_cross.value.scale(&denom.recip());
        let d = direct.sub(&closed).abs();
        assert!(d < ctx.f(1e-45), "overlap mismatch {d}");
    }

    #[test]
    fn bargman_monomial_eigenvalues() {
        let z3 = GoldenPolynomial::monomial(3);
        let out = bargman_apply(2, &z3).unwrap();
        assert_eq!(
            out,
            z3.scale(&crate::goldenfield::ComplexQuadratic::from_int(8))
        );
        assert!(bargman_apply(3, &GoldenPolynomial::one()).unwrap().is_zero());
        let z1 = GoldenPolynomial::monomial(1);
        assert_eq!(bargman_apply(5, &z1).unwrap(), z1);
        // dual route on a mixed polynomial: coefficient-wise F_s^(k) scaling
        let p = GoldenPolynomial::from_int_coeffs(&[2, -1, 3, 0, 7]);
        for k in [-3i64, 1, 4] {
            let got = bargman_apply(k, &p).unwrap();
            let want = GoldenPolynomial::from_coeffs(
                p.coeffs()
                    .iter()
                    .enumerate()
                    .map(|(s, c)| {
                        let f = crate::goldenfield::ComplexQuadratic::from_real(
                            QuadraticNumber::from_integer(
                                &fib_divisor_nk(s as i64, k).unwrap(),
                            ),
                        );
                        c * &f
                    })
                    .collect(),
            );
            assert_eq!(got, want, "k={k}");
        }
    }

    #[test]
    fn continuations_recover_integers_and_limits() {
        // even branch at k = 2.0 equals F_n^(2); at k → 0 approaches n
        let k2 = Float::with_val(192, 2);
        for n in 0..12u64 {
            let v = bosonic_number_continuation(&k2, n);
            let want = Float::with_val(192, &fib_divisor_nk(n as i64, 2).unwrap());
            let d = (v - want).abs();
            assert!(d < Float::with_val(192, 1e-45), "n={n}");
        }
        let tiny = Float::with_val(192, 1e-6);
        for n in 1..=20u64 {
            let v = bosonic_number_continuation(&tiny, n);
            let d = (v - Float::with_val(192, n)).abs();
            assert!(d < Float::with_val(192, 1e-9), "n={n}: {d}");
        }
        assert_eq!(
            bosonic_number_continuation(&Float::new(128), 7),
            Float::with_val(128, 7)
        );
        // odd branch at k = 3.0 equals F_n^(3); at k → 0 approaches n mod 2
        let k3 = Float::with_val(192, 3);
        for n in 0..12u64 {
            let v = fermionic_number_continuation(&k3, n);
            let want = Float::with_val(192, &fib_divisor_nk(n as i64, 3).unwrap());
            let d = (v - want).abs();
            assert!(d < Float::with_val(192, 1e-40), "n={n}");
        }
        let tiny8 = Float::with_val(192, 1e-8);
        for n in 0..=10u64 {
            let v = fermionic_number_continuation(&tiny8, n);
            let parity = Float::with_val(192, n % 2);
            let d = (v - parity).abs();
            assert!(d < Float::with_val(192, 1e-6), "n={n}: {d}");
        }
    }

    #[test]
    fn ladder_rejects_bad_inputs() {
        assert!(matches!(ladder_matrices(0, 4, 64), Err(Error::InvalidOrder)));
        assert!(ladder_matrices(2, 1, 64).is_err());
        // odd negative orders alternate in sign, making entries imaginary;
        // even negative orders coincide with their positive counterparts
        assert!(ladder_matrices(-1, 4, 64).is_err());
        assert!(ladder_matrices(-2, 4, 64).is_ok());
        assert!(coherent_state(-1, &CFloat::one(64), 4, 64).is_err());
    }
}
