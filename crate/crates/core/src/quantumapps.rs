//! Qubit states with sequence-valued amplitudes, concurrence, Bell-type
//! superpositions, and Hecke operator power reduction.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::goldenfield::QuadraticNumber;
use crate::sequences::{fib_divisor_nk, lucas};

/// Pure multi-qubit state held as unnormalized exact amplitudes together with
/// the exact squared norm; square roots appear only at float export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureState {
    #[serde(rename = "n")]
    pub num_qubits: u32,
    pub k: i64,
    #[serde(rename = "amplitudes")]
    pub amplitudes_unnorm: Vec<QuadraticNumber>,
    pub norm_sq: QuadraticNumber,
}

impl PureState {
    /// Builds a state from unnormalized amplitudes in computational-basis
    /// order, deriving the exact squared norm.
    pub fn new(num_qubits: u32, k: i64, amplitudes_unnorm: Vec<QuadraticNumber>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > 20 {
            return Err(Error::OutOfDomain(format!(
                "qubit count {num_qubits} outside the supported range 1..=20"
            )));
        }
        if amplitudes_unnorm.len() != 1usize << num_qubits {
            return Err(Error::OutOfDomain(format!(
                "{num_qubits}-qubit state needs {} amplitudes, got {}",
                1usize << num_qubits,
                amplitudes_unnorm.len()
            )));
        }
        let mut norm_sq = QuadraticNumber::zero();
        for a in &amplitudes_unnorm {
            norm_sq = &norm_sq + &(a * a);
        }
        if norm_sq.is_zero() {
            return Err(Error::OutOfDomain("zero state vector".into()));
        }
        Ok(Self {
            num_qubits,
            k,
            amplitudes_unnorm,
            norm_sq,
        })
    }

    /// Exact measurement probabilities amplitude²/norm², in basis order. The
    /// constructions in this module always yield rational probabilities.
    pub fn probabilities(&self) -> Result<Vec<Rational>> {
        self.amplitudes_unnorm
            .iter()
            .map(|a| {
                let p = (a * a).checked_div(&self.norm_sq)?;
                if !p.is_rational() {
                    return Err(Error::OutOfDomain(format!(
                        "probability {p} is irrational"
                    )));
                }
                Ok(p.a)
            })
            .collect()
    }

    /// Normalized amplitudes as floats at `prec` bits.
    pub fn amplitudes_normalized(&self, prec: u32) -> Vec<Float> {
        let wp = prec + 32;
        let scale = self.norm_sq.to_real(wp).sqrt().recip();
        self.amplitudes_unnorm
            .iter()
            .map(|a| Float::with_val(prec, a.to_real(wp) * scale.clone()))
            .collect()
    }

    /// Unnormalized inner product Σ aᵢbᵢ (all amplitudes here are real).
    pub fn inner_unnorm(&self, o: &Self) -> Result<QuadraticNumber> {
        if self.num_qubits != o.num_qubits {
            return Err(Error::WrongArity(o.num_qubits));
        }
        let mut acc = QuadraticNumber::zero();
        for (x, y) in self.amplitudes_unnorm.iter().zip(&o.amplitudes_unnorm) {
            acc = &acc + &(x * y);
        }
        Ok(acc)
    }
}

/// The orthogonal single-qubit pair with unnormalized amplitudes (1, φ^k) and
/// (−φ^k, 1); both share the exact squared norm 1 + φ^{2k}.
pub fn antipodal_qubits(k: i64) -> Result<(PureState, PureState)> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    let phi_k = QuadraticNumber::phi_power(k);
    let first = PureState::new(1, k, vec![QuadraticNumber::one(), phi_k.clone()])?;
    let second = PureState::new(1, k, vec![-&phi_k, QuadraticNumber::one()])?;
    Ok((first, second))
}

/// n-qubit state whose weight-s basis strings carry unnormalized amplitude
/// F_s^(k); defined for odd k only.
pub fn fibonacci_multiqubit(k: i64, n: u32) -> Result<PureState> {
    if k % 2 == 0 {
        return Err(Error::EvenOrderForState(k));
    }
    if n == 0 || n > 20 {
        return Err(Error::OutOfDomain(format!(
            "qubit count {n} outside the supported range 1..=20"
        )));
    }
    let by_weight: Vec<QuadraticNumber> = (0..=n)
        .map(|s| Ok(QuadraticNumber::from_integer(&fib_divisor_nk(s as i64, k)?)))
        .collect::<Result<_>>()?;
    let amplitudes = (0..1usize << n)
        .map(|idx| by_weight[idx.count_ones() as usize].clone())
        .collect();
    PureState::new(n, k, amplitudes)
}

/// Two-qubit concurrence of the weight-amplitude state, in closed form:
/// C_k = 2/(2 + L_k²).
pub fn concurrence_closed(k: i64) -> Rational {
    let lk = lucas(k);
    let denom = lk.square() + 2;
    Rational::from((2, 1)) / Rational::from(denom)
}

/// Wootters concurrence of a two-qubit pure state: 2|ad − bc|/norm² on the
/// unnormalized amplitudes (a, b, c, d), evaluated exactly and rendered at
/// `prec` bits.
pub fn concurrence_wootters(state: &PureState, prec: u32) -> Result<Float> {
    if state.num_qubits != 2 {
        return Err(Error::WrongArity(state.num_qubits));
    }
    let amp = &state.amplitudes_unnorm;
    let det = &(&amp[0] * &amp[3]) - &(&amp[1] * &amp[2]);
    let c = (&det.abs() + &det.abs()).checked_div(&state.norm_sq)?;
    Ok(c.to_real(prec))
}

/// The four maximally entangled superpositions of the antipodal pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BellStates {
    pub p_plus: PureState,
    pub p_minus: PureState,
    pub g_plus: PureState,
    pub g_minus: PureState,
}

fn tensor(x: &[QuadraticNumber], y: &[QuadraticNumber]) -> Vec<QuadraticNumber> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for xi in x {
        for yj in y {
            out.push(xi * yj);
        }
    }
    out
}

fn combine(p: &[QuadraticNumber], q: &[QuadraticNumber], plus: bool) -> Vec<QuadraticNumber> {
    p.iter()
        .zip(q)
        .map(|(x, y)| if plus { x + y } else { x - y })
        .collect()
}

/// Builds |P_±⟩ = |0'0'⟩ ± |1'1'⟩ and |G_±⟩ = |0'1'⟩ ± |1'0'⟩ from the
/// antipodal pair. The + paired and − swapped combinations collapse to the
/// order-independent Bell states with an overall factor 1 + φ^{2k}, which is
/// stripped so those two keep unit amplitudes.
pub fn bell_superpositions(k: i64) -> Result<BellStates> {
    let (s0, s1) = antipodal_qubits(k)?;
    let aa = tensor(&s0.amplitudes_unnorm, &s0.amplitudes_unnorm);
    let bb = tensor(&s1.amplitudes_unnorm, &s1.amplitudes_unnorm);
    let ab = tensor(&s0.amplitudes_unnorm, &s1.amplitudes_unnorm);
    let ba = tensor(&s1.amplitudes_unnorm, &s0.amplitudes_unnorm);
    let common = &QuadraticNumber::one() + &QuadraticNumber::phi_power(2 * k);
    let strip = |v: Vec<QuadraticNumber>| -> Result<Vec<QuadraticNumber>> {
        v.into_iter().map(|e| e.checked_div(&common)).collect()
    };
    Ok(BellStates {
        p_plus: PureState::new(2, k, strip(combine(&aa, &bb, true))?)?,
        p_minus: PureState::new(2, k, combine(&aa, &bb, false))?,
        g_plus: PureState::new(2, k, combine(&ab, &ba, true))?,
        g_minus: PureState::new(2, k, strip(combine(&ab, &ba, false))?)?,
    })
}

/// 2×2 operator over Q(√5).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoByTwoOperator {
    pub entries: [[QuadraticNumber; 2]; 2],
}

impl TwoByTwoOperator {
    pub fn new(entries: [[QuadraticNumber; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::new([
            [QuadraticNumber::one(), QuadraticNumber::zero()],
            [QuadraticNumber::zero(), QuadraticNumber::one()],
        ])
    }

    pub fn zero() -> Self {
        Self::new([
            [QuadraticNumber::zero(), QuadraticNumber::zero()],
            [QuadraticNumber::zero(), QuadraticNumber::zero()],
        ])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = QuadraticNumber::zero();
                for l in 0..2 {
                    acc = &acc + &(&self.entries[i][l] * &o.entries[l][j]);
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = &out.entries[i][j] + &o.entries[i][j];
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for i in 0..2 {
            for j in 0..2 {
                out.entries[i][j] = &out.entries[i][j] - &o.entries[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: &QuadraticNumber) -> Self {
        let mut out = self.clone();
        for row in &mut out.entries {
            for e in row {
                *e = &*e * c;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(QuadraticNumber::is_zero)
    }

    pub fn determinant(&self) -> QuadraticNumber {
        &(&self.entries[0][0] * &self.entries[1][1]) - &(&self.entries[0][1] * &self.entries[1][0])
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.determinant();
        let inv = det.inverse()?;
        Ok(Self::new([
            [&self.entries[1][1] * &inv, -&(&self.entries[0][1] * &inv)],
            [-&(&self.entries[1][0] * &inv), &self.entries[0][0] * &inv],
        ]))
    }

    /// Checks (R − φ^k I)(R + φ^{−k} I) = 0 exactly.
    pub fn is_hecke(&self, k: i64) -> bool {
        let left = self.sub(&Self::identity().scale(&QuadraticNumber::phi_power(k)));
        let right = self.add(&Self::identity().scale(&QuadraticNumber::phi_power(-k)));
        left.mul(&right).is_zero()
    }
}

/// Diagonal operator diag(φ^k, −φ^{−k}) satisfying the order-k quadratic
/// condition exactly.
pub fn hecke_sample(k: i64) -> Result<TwoByTwoOperator> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    Ok(TwoByTwoOperator::new([
        [QuadraticNumber::phi_power(k), QuadraticNumber::zero()],
        [QuadraticNumber::zero(), -&QuadraticNumber::phi_power(-k)],
    ]))
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Conjugate M·diag(φ^k, −φ^{−k})·M⁻¹ of the diagonal sample by a small
/// pseudo-random invertible matrix over Q(√5), deterministic in `seed`.
pub fn hecke_sample_conjugated(k: i64, seed: u64) -> Result<TwoByTwoOperator> {
    let diag = hecke_sample(k)?;
    let mut state = seed ^ 0xD1B5_4A32_D192_ED03;
    for _ in 0..256 {
        let mut small = |span: u64| -> i64 { (splitmix64(&mut state) % (2 * span + 1)) as i64 - span as i64 };
        let mut entry = || QuadraticNumber::new(Rational::from(small(3)), Rational::from(small(2)));
        let m = TwoByTwoOperator::new([[entry(), entry()], [entry(), entry()]]);
        if m.determinant().is_zero() {
            continue;
        }
        let inv = m.inverse()?;
        return Ok(m.mul(&diag).mul(&inv));
    }
    unreachable!("singular draws cannot persist across 256 attempts")
}

/// Power reduction R^n = F_n^(k)·R + F_{n−1}^(k)·I for an operator satisfying
/// the order-k quadratic condition.
pub fn hecke_power(r: &TwoByTwoOperator, n: u64, k: i64) -> Result<TwoByTwoOperator> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if !r.is_hecke(k) {
        return Err(Error::NotHecke(k));
    }
    let f_n = QuadraticNumber::from_integer(&fib_divisor_nk(n as i64, k)?);
    let f_prev = QuadraticNumber::from_integer(&fib_divisor_nk(n as i64 - 1, k)?);
    Ok(r.scale(&f_n).add(&TwoByTwoOperator::identity().scale(&f_prev)))
}
