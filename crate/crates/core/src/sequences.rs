//! Fibonacci divisors F_n^(k) = F_nk/F_k and their factorial calculus.

use rug::{Complete, Integer};

use crate::error::{Error, Result};

/// Arbitrary-precision integer value of a sequence; exact at every index.
pub type BigSequenceValue = Integer;

/// A sequence evaluation request: index n at deformation order k ≠ 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceQuery {
    n: i64,
    k: i64,
}

impl SequenceQuery {
    /// Builds a query; the order k must be nonzero.
    pub fn new(n: i64, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidOrder);
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }
}

/// (F_n, F_{n+1}) for n ≥ 0 by fast doubling.
fn fib_pair(n: u64) -> (Integer, Integer) {
    if n == 0 {
        return (Integer::new(), Integer::from(1));
    }
    let (a, b) = fib_pair(n / 2);
    // F_2m = F_m(2F_{m+1} - F_m), F_2m+1 = F_m² + F_{m+1}²
    let mut c = (&b * 2u32).complete();
    c -= &a;
    c *= &a;
    let d = a.square() + b.square();
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = (&c + &d).complete();
        (d, e)
    }
}

/// Fibonacci number F_n for any integer n, with F_-n = (-1)^(n+1) F_n.
pub fn fibonacci(n: i64) -> BigSequenceValue {
    let (f, _) = fib_pair(n.unsigned_abs());
    if n < 0 && n.unsigned_abs() % 2 == 0 {
        -f
    } else {
        f
    }
}

/// Lucas number L_n for any integer n, with L_-n = (-1)^n L_n.
pub fn lucas(n: i64) -> BigSequenceValue {
    let (f, g) = fib_pair(n.unsigned_abs());
    // L_n = 2F_{n+1} - F_n
    let mut l = g * 2u32;
    l -= f;
    if n < 0 && n.unsigned_abs() % 2 == 1 {
        -l
    } else {
        l
    }
}

/// F_n^(k) for n ≥ 0 and any nonzero k by the three-term recurrence
/// F_{n+1}^(k) = L_k F_n^(k) + (-1)^(k-1) F_{n-1}^(k), which holds for
/// negative k as well because φ^k and φ'^k still solve λ² = L_k λ + (-1)^(k+1).
fn fib_divisor_rec(n: u64, k: i64) -> Integer {
    let lk = lucas(k);
    let add_prev = k % 2 != 0;
    let mut prev = Integer::new(); // F_0^(k)
    let mut cur = Integer::from(1); // F_1^(k)
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let mut next = (&lk * &cur).complete();
        if add_prev {
            next += &prev;
        } else {
            next -= &prev;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Fibonacci divisor F_n^(k) = F_nk/F_k for any integer n and nonzero k.
///
/// Negative indices follow the Binet extension F_-n^(k) = (-1)^(kn+1) F_n^(k);
/// combined with the signed recurrence this also realizes
/// F_n^(-k) = (-1)^((n+1)k) F_n^(k) and F_-n^(-k) = (-1)^(k+1) F_n^(k).
pub fn fib_divisor(q: &SequenceQuery) -> BigSequenceValue {
    let (n, k) = (q.n, q.k);
    let mut v = fib_divisor_rec(n.unsigned_abs(), k);
    if n < 0 && (k % 2 == 0 || n % 2 == 0) {
        // (-1)^(k|n|+1) = -1 exactly when k|n| is even
        v = -v;
    }
    v
}

/// Convenience form of `fib_divisor` for bare integers.
pub fn fib_divisor_nk(n: i64, k: i64) -> Result<BigSequenceValue> {
    Ok(fib_divisor(&SequenceQuery::new(n, k)?))
}

/// Mod-k factorial n!_k = n!·k^n.
pub fn mod_k_factorial(n: i64, k: i64) -> Result<BigSequenceValue> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut acc = Integer::from(1);
    for s in 1..=n {
        acc *= s;
        acc *= k;
    }
    Ok(acc)
}

/// Mod-k Fibonacci factorial F_n!_k = F_k·F_2k···F_nk.
pub fn mod_k_fib_factorial(n: i64, k: i64) -> Result<BigSequenceValue> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut acc = Integer::from(1);
    for s in 1..=n {
        acc *= fibonacci(s * k);
    }
    Ok(acc)
}

/// Fibonacci-divisor factorial F_n^(k)! = F_1^(k) F_2^(k) ··· F_n^(k).
pub fn fib_divisor_factorial(n: i64, k: i64) -> Result<BigSequenceValue> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut acc = Integer::from(1);
    let lk = lucas(k);
    let add_prev = k % 2 != 0;
    let mut prev = Integer::new();
    let mut cur = Integer::from(1);
    for _ in 1..=n {
        acc *= &cur;
        let mut next = (&lk * &cur).complete();
        if add_prev {
            next += &prev;
        } else {
            next -= &prev;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(acc)
}

/// Fibonomial coefficient [n m]_F^(k) = F_n^(k)!/(F_m^(k)! F_{n-m}^(k)!).
///
/// Computed by incremental exact division; every prefix is itself a
/// fibonomial, hence an integer, because F^(k) is a strong divisibility
/// sequence.
pub fn fibonomial(n: i64, m: i64, k: i64) -> Result<BigSequenceValue> {
    if k == 0 {
        return Err(Error::InvalidOrder);
    }
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    if m < 0 || m > n {
        return Err(Error::IndexOutOfRange { n, m });
    }
    let m = m.min(n - m);
    let mut acc = Integer::from(1);
    for i in 1..=m {
        acc *= fib_divisor_rec((n - m + i) as u64, k);
        let den = fib_divisor_rec(i as u64, k);
        let (q, r) = acc.div_rem(den);
        assert!(r.is_zero(), "fibonomial division must be exact");
        acc = q;
    }
    Ok(acc)
}
