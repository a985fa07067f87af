//! Serializable output documents emitted by the `goldencalc` binary.
//!
//! Every JSON document the binary prints deserializes back into the type that
//! produced it; integration tests rely on that round trip.

pub mod output {
    use golden_core::hydroimages::Flow;
    use golden_core::numeric::float_serde;
    use golden_core::quantumapps::{BellStates, PureState, TwoByTwoOperator};
    use rug::Float;
    use serde::{Deserialize, Serialize};

    /// Complex value with arbitrary-precision parts serialized as decimal
    /// strings.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct Complex {
        #[serde(with = "float_serde")]
        pub re: Float,
        #[serde(with = "float_serde")]
        pub im: Float,
    }

    /// Sequence values F_n^(k) for n = 1.., exact decimal strings.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct SequenceDoc {
        pub k: i64,
        pub values: Vec<String>,
    }

    /// Lucas numbers L_n for n = 1.., exact decimal strings.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct LucasDoc {
        pub values: Vec<String>,
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct FibonomialEntry {
        pub m: i64,
        pub value: String,
    }

    /// One Fibonomial row (or a single entry when m was pinned).
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct FibonomialDoc {
        pub k: i64,
        pub n: i64,
        pub entries: Vec<FibonomialEntry>,
    }

    /// Exact polynomial coefficients, low order first, canonical Q(√5) strings.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct PolyDoc {
        pub k: i64,
        pub coeffs: Vec<String>,
    }

    /// Golden binomial (x ± a)^n_F expansion.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct BinomialDoc {
        pub k: i64,
        pub n: u32,
        pub a: String,
        pub sign: String,
        pub coeffs: Vec<String>,
    }

    /// Golden-Taylor coefficients (D^n p)(0).
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct TaylorDoc {
        pub k: i64,
        pub coeffs: Vec<String>,
    }

    /// Rational generating-function coefficients of x/(1 − L_k x + (−1)^k x²).
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct GenfunDoc {
        pub k: i64,
        pub coeffs: Vec<String>,
    }

    /// Golden exponential partial sum with its certified error bound.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct ExpDoc {
        pub k: i64,
        pub variant: String,
        #[serde(with = "float_serde")]
        pub x: Float,
        pub order: usize,
        #[serde(with = "float_serde")]
        pub value: Float,
        #[serde(with = "float_serde")]
        pub tail_bound: Float,
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct SpectrumRow {
        pub n: u64,
        pub energy_halfquanta: String,
    }

    /// Oscillator levels in half-quantum units, exact.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct SpectrumDoc {
        pub k: i64,
        pub kind: String,
        pub entries: Vec<SpectrumRow>,
    }

    /// Semiclassical level next to the exact one.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct SemiclassicalDoc {
        pub k: i64,
        pub n: u64,
        pub terms: u32,
        #[serde(with = "float_serde")]
        pub semiclassical: Float,
        pub exact_halfquanta: String,
        #[serde(with = "float_serde")]
        pub error: Float,
    }

    /// Truncated coherent state with measured and certified residuals.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct CoherentDoc {
        pub k: i64,
        pub dim: usize,
        pub beta: Complex,
        #[serde(with = "float_serde")]
        pub eigen_residual: Float,
        #[serde(with = "float_serde")]
        pub tail_bound: Float,
        pub amplitudes: Vec<Complex>,
    }

    /// The orthogonal single-qubit pair.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct AntipodalDoc {
        pub first: PureState,
        pub second: PureState,
    }

    /// Closed-form concurrence against the Wootters evaluation.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct ConcurrenceDoc {
        pub k: i64,
        pub closed: String,
        #[serde(with = "float_serde")]
        pub wootters: Float,
        #[serde(with = "float_serde")]
        pub difference: Float,
        #[serde(with = "float_serde")]
        pub bound: Float,
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct BellConcurrences {
        #[serde(with = "float_serde")]
        pub p_plus: Float,
        #[serde(with = "float_serde")]
        pub p_minus: Float,
        #[serde(with = "float_serde")]
        pub g_plus: Float,
        #[serde(with = "float_serde")]
        pub g_minus: Float,
    }

    /// The four Bell-type superpositions with their concurrences.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct BellDoc {
        pub k: i64,
        pub states: BellStates,
        pub concurrences: BellConcurrences,
    }

    /// Power reduction R^n = F_n^(k) R + F_{n−1}^(k) I next to the directly
    /// multiplied power.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct HeckeDoc {
        pub k: i64,
        pub n: u64,
        pub sample: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        pub seed: Option<u64>,
        pub operator: TwoByTwoOperator,
        pub power: TwoByTwoOperator,
        pub reduced: TwoByTwoOperator,
        pub coeff_r: String,
        pub coeff_identity: String,
        pub exact: bool,
    }

    /// One sampled field point: position, conjugate velocity, speed.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct FieldRow {
        #[serde(with = "float_serde")]
        pub x: Float,
        #[serde(with = "float_serde")]
        pub y: Float,
        #[serde(with = "float_serde")]
        pub re_v: Float,
        #[serde(with = "float_serde")]
        pub im_v: Float,
        #[serde(with = "float_serde")]
        pub abs_v: Float,
    }

    /// Golden-periodicity defect of a truncated image flow at one point.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct HydroResidualDoc {
        pub flow: Flow,
        pub k: u32,
        pub truncation: usize,
        pub z: Complex,
        #[serde(with = "float_serde")]
        pub residual: Float,
        #[serde(with = "float_serde")]
        pub predicted_scale: Float,
    }

    /// Machine-readable error envelope printed on standard error.
    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct ErrorDoc {
        pub error: ErrorBody,
    }

    #[derive(Clone, Debug, Serialize, Deserialize)]
    pub struct ErrorBody {
        pub kind: String,
        pub message: String,
    }
}
