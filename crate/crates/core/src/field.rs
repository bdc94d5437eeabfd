//! Exact arithmetic in the finite field GF(p^e).
//!
//! Elements are encoded as integers `0..q`. For `e > 1` the integer is read in
//! base `p`: digit `k` is the coefficient of `t^k` in `GF(p)[t]/(f)`, where `f`
//! is the lexicographically first monic primitive polynomial of degree `e`.
//! With this encoding the prime subfield is exactly `0..p` for every `e`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Scalar = u32;

/// Largest field order accepted by [`Field::new`].
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

struct FieldData {
    p: u32,
    e: u32,
    q: u32,
    /// Coefficients `f_0..f_{e-1}` of the defining polynomial (monic, degree e).
    modulus: Vec<u32>,
    /// `exp[k] = g^k` for the primitive element `g = t`; length `q - 1`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
}

/// Handle to the field `GF(p^e)`. Cheap to clone.
#[derive(Clone)]
pub struct Field {
    data: Arc<FieldData>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.p == other.data.p
                && self.data.e == other.data.e
                && self.data.modulus == other.data.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.data.e == 1 {
            write!(f, "GF({})", self.data.p)
        } else {
            write!(f, "GF({}^{})", self.data.p, self.data.e)
        }
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidParameter("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER as u64).ok_or_else(|| {
            Error::InvalidParameter(format!("field order {p}^{e} exceeds {MAX_FIELD_ORDER}"))
        })? as u32;

        let (modulus, exp) = if e == 1 {
            let g = (2..p.max(3))
                .find(|&g| multiplicative_order_mod(g % p, p) == p - 1)
                .unwrap_or(1)
                % p;
            let g = if p == 2 { 1 } else { g };
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut x = 1u32;
            for _ in 0..q - 1 {
                exp.push(x);
                x = x * g % p;
            }
            (vec![0], exp)
        } else {
            find_primitive_modulus(p, e)
        };
        let mut log = vec![0u32; q as usize];
        for (k, &a) in exp.iter().enumerate() {
            log[a as usize] = k as u32;
        }
        Ok(Field {
            data: Arc::new(FieldData { p, e, q, modulus, exp, log }),
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.data.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.data.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.data.q
    }

    /// Coefficients of the defining polynomial below the leading term.
    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.data.e == 1
    }

    pub fn contains(&self, a: Scalar) -> bool {
        a < self.data.q
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        0..self.data.q
    }

    /// Image of an integer in the prime subfield.
    #[inline]
    pub fn from_int(&self, k: i64) -> Scalar {
        k.rem_euclid(self.data.p as i64) as Scalar
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let p = self.data.p;
        if self.data.e == 1 {
            let s = a + b;
            if s >= p {
                s - p
            } else {
                s
            }
        } else {
            digitwise(a, b, p, |x, y| (x + y) % p)
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        let p = self.data.p;
        if self.data.e == 1 {
            if a == 0 {
                0
            } else {
                p - a
            }
        } else {
            digitwise(a, 0, p, |x, _| (p - x) % p)
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        let p = self.data.p;
        if self.data.e == 1 {
            if a >= b {
                a - b
            } else {
                a + p - b
            }
        } else {
            digitwise(a, b, p, |x, y| (x + p - y) % p)
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.data.e == 1 {
            ((a as u64 * b as u64) % self.data.p as u64) as Scalar
        } else if a == 0 || b == 0 {
            0
        } else {
            let n = self.data.q - 1;
            let k = (self.data.log[a as usize] + self.data.log[b as usize]) % n;
            self.data.exp[k as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a == 0 {
            return None;
        }
        let n = self.data.q - 1;
        let k = (n - self.data.log[a as usize]) % n;
        Some(self.data.exp[k as usize])
    }

    pub fn div(&self, a: Scalar, b: Scalar) -> Option<Scalar> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Scalar, mut k: u64) -> Scalar {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.data.p as u64)
    }

    /// Base-p digits of `a` (its coordinates over the prime field).
    pub fn digits(&self, a: Scalar) -> Vec<u32> {
        let p = self.data.p;
        let mut a = a;
        (0..self.data.e)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    /// `dst[k] += factor * src[k]` for `k >= start`.
    #[inline]
    pub fn axpy(&self, dst: &mut [Scalar], factor: Scalar, src: &[Scalar], start: usize) {
        if factor == 0 {
            return;
        }
        if self.data.e == 1 {
            let p = self.data.p as u64;
            let f = factor as u64;
            for (d, &s) in dst[start..].iter_mut().zip(&src[start..]) {
                if s != 0 {
                    *d = ((*d as u64 + f * s as u64) % p) as Scalar;
                }
            }
        } else {
            for (d, &s) in dst[start..].iter_mut().zip(&src[start..]) {
                if s != 0 {
                    *d = self.add(*d, self.mul(factor, s));
                }
            }
        }
    }

    pub fn scale_slice(&self, v: &mut [Scalar], factor: Scalar) {
        for x in v.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }
}

#[inline]
fn digitwise(mut a: u32, mut b: u32, p: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += op(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn multiplicative_order_mod(g: u32, p: u32) -> u32 {
    if g == 0 {
        return 0;
    }
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = x * g % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

/// Multiply the element `a` (base-p digits, length e) by `t` modulo the monic polynomial.
fn times_t(a: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = a.len();
    let top = a[e - 1];
    let mut out = vec![0u32; e];
    for k in (1..e).rev() {
        out[k] = a[k - 1];
    }
    for k in 0..e {
        out[k] = (out[k] + p * p - top * modulus[k] % p) % p;
    }
    out
}

fn encode(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn find_primitive_modulus(p: u32, e: u32) -> (Vec<u32>, Vec<u32>) {
    let q = p.pow(e);
    let e = e as usize;
    // Enumerate f = t^e + f_{e-1} t^{e-1} + ... + f_0 in lexicographic order of (f_0, .., f_{e-1}).
    for code in 0..q {
        let mut modulus = vec![0u32; e];
        let mut c = code;
        for m in modulus.iter_mut() {
            *m = c % p;
            c /= p;
        }
        if modulus[0] == 0 {
            continue;
        }
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut cur = vec![0u32; e];
        cur[0] = 1;
        let mut ok = true;
        for k in 0..q - 1 {
            let enc = encode(&cur, p);
            if k > 0 && enc == 1 {
                ok = false;
                break;
            }
            exp.push(enc);
            cur = times_t(&cur, &modulus, p);
        }
        if ok && encode(&cur, p) == 1 {
            return (modulus, exp);
        }
    }
    unreachable!("a primitive polynomial of every degree exists over GF(p)")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &Field) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
                for c in (0..q).step_by(((q / 7) as usize).max(1)) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn prime_field_axioms() {
        for p in [2, 3, 5, 7, 11] {
            check_axioms(&Field::prime(p).unwrap());
        }
    }

    #[test]
    fn extension_field_axioms() {
        for (p, e) in [(2, 3), (3, 2), (5, 2), (7, 2)] {
            let f = Field::new(p, e).unwrap();
            assert_eq!(f.order(), p.pow(e));
            check_axioms(&f);
            // The prime subfield is closed and Frobenius fixes it.
            for a in 0..p {
                assert_eq!(f.frobenius(a), a);
            }
            // Frobenius has order e.
            for a in f.elements() {
                let mut x = a;
                for _ in 0..e {
                    x = f.frobenius(x);
                }
                assert_eq!(x, a);
            }
        }
    }

    #[test]
    fn rejects_composite_and_huge() {
        assert!(Field::prime(9).is_err());
        assert!(Field::new(5, 0).is_err());
        assert!(Field::new(7, 9).is_err());
    }

    #[test]
    fn gf5_basics() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.from_int(-1), 4);
        assert_eq!(f.pow(2, 4), 1);
        assert_eq!(f.inv(0), None);
    }
}
