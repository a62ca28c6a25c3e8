//! Kronecker-Hurwitz class numbers, Deuring counts over prime fields, and the
//! class-number sums S0, S1, S2.
//!
//! The normalization of H is calibrated operationally against the exact
//! Deuring identity #{(b,c) in F_q^2 : disc != 0, a_q = a} = (q-1) H(a^2-4q):
//! each order contributes h(O')/#O'^x, so the unit weights are 6 at
//! discriminant -3, 4 at -4, and 2 elsewhere. With that choice the identity
//! holds exactly for every prime 5 <= q and every |a| <= 2 sqrt(q), and
//! sum_a H(a^2-4q) = q exactly for prime q.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::arith::{factor, gcd_u64, isqrt, mulmod, ChiTable};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Number of reduced primitive binary quadratic forms (a, b, c) with
/// b^2 - 4ac = D, |b| <= a <= c, and b >= 0 when |b| = a or a = c.
pub fn class_number(d: i64) -> Result<u64> {
    check_discriminant(d)?;
    let abs = d.unsigned_abs();
    let mut count = 0u64;
    let mut b = (abs % 2) as i64; // b and D have the same parity
    while (b * b) as u64 <= abs / 3 {
        let m = ((b * b) as u64 + abs) / 4; // m = ac
        let mut a = if b == 0 { 1 } else { b as u64 };
        while a * a <= m {
            if m % a == 0 {
                let c = m / a;
                if gcd_u64(gcd_u64(a, b as u64), c) == 1 {
                    // b = 0 and the boundary cases |b| = a, a = c count once;
                    // interior forms count for both signs of b.
                    if b == 0 || a == b as u64 || a == c {
                        count += 1;
                    } else {
                        count += 2;
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    Ok(count)
}

fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 || !(d.rem_euclid(4) == 0 || d.rem_euclid(4) == 1) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(())
}

/// Unit count of the order of discriminant d.
fn unit_count(d: i64) -> i128 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

fn hurwitz_memo() -> &'static Mutex<HashMap<i64, Rational>> {
    static MEMO: OnceLock<Mutex<HashMap<i64, Rational>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Hurwitz-Kronecker class number H(D) = sum over orders O in O' in O_K of
/// h(O')/#O'^x, i.e. sum over conductors f with f^2 | D and D/f^2 a
/// discriminant of h(D/f^2)/u(D/f^2).
pub fn hurwitz_h(d: i64) -> Result<Rational> {
    check_discriminant(d)?;
    if let Some(v) = hurwitz_memo().lock().unwrap().get(&d) {
        return Ok(*v);
    }
    let mut total = Rational::ZERO;
    let mut f = 1i64;
    while f * f <= -d {
        if d % (f * f) == 0 {
            let d2 = d / (f * f);
            if d2.rem_euclid(4) == 0 || d2.rem_euclid(4) == 1 {
                total += Rational::new(class_number(d2)? as i128, unit_count(d2));
            }
        }
        f += 1;
    }
    hurwitz_memo().lock().unwrap().insert(d, total);
    Ok(total)
}

/// H extended to the a^2 = 4q boundary: H(0) = -1/24, the weight that makes
/// sum_a H(a^2 - 4q) = (1/2) sum_{dd'=q} max(d, d') hold exactly at square q.
fn h_at(disc: i64) -> Result<Rational> {
    if disc == 0 {
        return Ok(Rational::new(-1, 24));
    }
    hurwitz_h(disc)
}

fn require_prime_ge5(q: u64) -> Result<()> {
    if !crate::arith::is_prime(q) || q < 5 {
        return Err(Error::NotPrime(q));
    }
    Ok(())
}

/// Exact histogram of Frobenius traces over F_q: entry (a, n) means n pairs
/// (b, c) with 4b^3 + 27c^2 != 0 and a_q(E_{b,c}) = a.
pub fn deuring_histogram(q: u64) -> Result<Vec<(i64, u64)>> {
    require_prime_ge5(q)?;
    let chi = ChiTable::new(q);
    let amax = isqrt(4 * q) as i64;
    let mut hist = vec![0u64; (2 * amax + 1) as usize];
    // Sort curves by trace: a_q = -sum_x chi(x^3 + bx + c). One pass per b
    // reuses the cubic values.
    let mut cubic = vec![0u64; q as usize];
    for b in 0..q {
        for x in 0..q {
            cubic[x as usize] = (mulmod(mulmod(x, x, q), x, q) + mulmod(b, x, q)) % q;
        }
        for c in 0..q {
            // disc/(-16) = 4b^3 + 27c^2 mod q
            let disc = (4 * mulmod(mulmod(b, b, q), b, q) + 27 * mulmod(c, c, q)) % q;
            if disc == 0 {
                continue;
            }
            let mut sum = 0i64;
            for x in 0..q {
                sum += chi.chi(cubic[x as usize] + c);
            }
            let a = -sum;
            hist[(a + amax) as usize] += 1;
        }
    }
    Ok((-amax..=amax).map(|a| (a, hist[(a + amax) as usize])).collect())
}

/// Brute-force count of (b, c) in F_q^2 with nonzero discriminant and
/// prescribed trace of Frobenius a.
pub fn deuring_count(q: u64, a: i64) -> Result<u64> {
    require_prime_ge5(q)?;
    if (a * a) as u64 > 4 * q {
        return Err(Error::OutOfRange(format!(
            "deuring_count: |a| = {} violates the Hasse bound for q = {q}",
            a.abs()
        )));
    }
    let amax = isqrt(4 * q) as i64;
    Ok(deuring_histogram(q)?[(a + amax) as usize].1)
}

/// Splits q = p^n for p >= 5 prime.
fn prime_power(q: u64) -> Result<(u64, u32)> {
    let f = factor(q)?;
    match f.factors.as_slice() {
        [(p, n)] if *p >= 5 => Ok((*p, *n)),
        _ => Err(Error::OutOfRange(format!(
            "expected a prime power p^n with p >= 5, got {q}"
        ))),
    }
}

/// The exact sums S0 = sum H(a^2-4q), S1 = sum a H(a^2-4q),
/// S2 = sum a^2 H(a^2-4q) over |a| <= 2 sqrt(q), for q = p^n with p >= 5.
pub fn class_number_sums(q: u64) -> Result<(Rational, Rational, Rational)> {
    prime_power(q)?;
    let amax = isqrt(4 * q) as i64;
    let (mut s0, mut s1, mut s2) = (Rational::ZERO, Rational::ZERO, Rational::ZERO);
    for a in -amax..=amax {
        let disc = a * a - 4 * q as i64;
        let h = h_at(disc)?;
        s0 += h;
        s1 += h * (a as i128);
        s2 += h * ((a * a) as i128);
    }
    Ok((s0, s1, s2))
}

/// (1/2) sum over factorizations dd' = q of max(d, d'): the exact value of S0
/// under the classical Kronecker-Hurwitz class number relation.
pub fn kronecker_hurwitz_rhs(q: u64) -> Result<Rational> {
    let (p, n) = prime_power(q)?;
    let mut total = Rational::ZERO;
    for s in 0..=n {
        total += Rational::from_int(p.pow(s.max(n - s)) as i128);
    }
    Ok(total * Rational::new(1, 2))
}
