//! The truncated polynomial algebra `A(n) = k[x_1..x_n]/(x_i^p)`.
//!
//! Polynomials are stored densely over the `p^n` monomials. Monomials are
//! indexed lexicographically with `a_1` most significant, so that
//! `index(a) = sum_k a_k p^(n-1-k)` (0-based `k`). Index addition is then
//! exponent addition whenever no exponent reaches `p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Exponent vector `(a_1, .., a_n)`, entries in `0..p`.
pub type MultiIndex = Vec<u32>;

/// Largest supported `p^n`.
pub const MAX_MONOMIALS: usize = 1 << 14;
/// Largest supported number of variables.
pub const MAX_VARS: usize = 8;

struct RingData {
    field: Field,
    n: usize,
    p: u32,
    size: usize,
    strides: Vec<usize>,
    exps: Vec<u32>,
    degrees: Vec<u32>,
    codes: Vec<u64>,
    bias: u64,
    high: u64,
}

/// Handle to `A(n)` over a given field. Cheap to clone.
#[derive(Clone)]
pub struct PolyRing {
    data: Arc<RingData>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.n == other.data.n && self.data.field == other.data.field)
    }
}

impl Eq for PolyRing {}

impl fmt::Debug for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A({}) over {:?}", self.data.n, self.data.field)
    }
}

impl PolyRing {
    pub fn new(field: &Field, n: usize) -> Result<Self> {
        let p = field.characteristic();
        if n == 0 || n > MAX_VARS {
            return Err(Error::InvalidParameter(format!("n must be in 1..={MAX_VARS}, got {n}")));
        }
        if p > 61 {
            return Err(Error::InvalidParameter(format!("characteristic {p} is too large")));
        }
        let size = (p as usize)
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_MONOMIALS)
            .ok_or_else(|| Error::InvalidParameter(format!("p^n = {p}^{n} exceeds {MAX_MONOMIALS}")))?;
        let strides: Vec<usize> = (0..n).map(|k| (p as usize).pow((n - 1 - k) as u32)).collect();
        let mut exps = Vec::with_capacity(size * n);
        let mut degrees = Vec::with_capacity(size);
        let mut codes = Vec::with_capacity(size);
        for idx in 0..size {
            let mut deg = 0;
            let mut code = 0u64;
            for k in 0..n {
                let a = ((idx / strides[k]) % p as usize) as u32;
                exps.push(a);
                deg += a;
                code |= (a as u64) << (8 * k);
            }
            degrees.push(deg);
            codes.push(code);
        }
        let mut bias = 0u64;
        let mut high = 0u64;
        for k in 0..n {
            bias |= ((128 - p) as u64) << (8 * k);
            high |= 0x80u64 << (8 * k);
        }
        Ok(PolyRing {
            data: Arc::new(RingData { field: field.clone(), n, p, size, strides, exps, degrees, codes, bias, high }),
        })
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.data.field
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.data.n
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.data.p
    }

    /// Number of monomials, `p^n`.
    #[inline]
    pub fn size(&self) -> usize {
        self.data.size
    }

    /// Largest total degree `n(p-1)`.
    pub fn max_degree(&self) -> u32 {
        self.data.n as u32 * (self.data.p - 1)
    }

    #[inline]
    pub fn stride(&self, var: usize) -> usize {
        self.data.strides[var]
    }

    #[inline]
    pub fn exponent(&self, idx: usize) -> &[u32] {
        let n = self.data.n;
        &self.data.exps[idx * n..(idx + 1) * n]
    }

    #[inline]
    pub fn degree_of(&self, idx: usize) -> u32 {
        self.data.degrees[idx]
    }

    pub fn index(&self, a: &[u32]) -> Result<usize> {
        if a.len() != self.data.n {
            return Err(Error::Mismatch(format!("exponent of length {} in A({})", a.len(), self.data.n)));
        }
        if let Some(&bad) = a.iter().find(|&&x| x >= self.data.p) {
            return Err(Error::InvalidParameter(format!("exponent {bad} is not below p = {}", self.data.p)));
        }
        Ok(a.iter().zip(&self.data.strides).map(|(&x, &s)| x as usize * s).sum())
    }

    /// `idx(a) + idx(b)` if `a + b` has all entries below `p`.
    #[inline]
    pub fn add_indices(&self, i: usize, j: usize) -> Option<usize> {
        let d = &self.data;
        if (d.codes[i] + d.codes[j] + d.bias) & d.high == 0 {
            Some(i + j)
        } else {
            None
        }
    }

    pub fn zero(&self) -> TruncPoly {
        TruncPoly { ring: self.clone(), c: vec![0; self.data.size] }
    }

    pub fn constant(&self, c: Scalar) -> TruncPoly {
        let mut f = self.zero();
        f.c[0] = c;
        f
    }

    pub fn one(&self) -> TruncPoly {
        self.constant(1)
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(&self, i: usize) -> TruncPoly {
        let mut f = self.zero();
        f.c[self.data.strides[i]] = 1;
        f
    }

    /// `1 + x_{i+1}`.
    pub fn unit_var(&self, i: usize) -> TruncPoly {
        let mut f = self.var(i);
        f.c[0] = 1;
        f
    }

    pub fn monomial(&self, a: &[u32], c: Scalar) -> Result<TruncPoly> {
        let mut f = self.zero();
        f.c[self.index(a)?] = c;
        Ok(f)
    }

    pub fn basis_monomial(&self, idx: usize) -> TruncPoly {
        let mut f = self.zero();
        f.c[idx] = 1;
        f
    }

    pub fn from_coeffs(&self, c: Vec<Scalar>) -> Result<TruncPoly> {
        if c.len() != self.data.size {
            return Err(Error::Mismatch(format!("expected {} coefficients, got {}", self.data.size, c.len())));
        }
        if c.iter().any(|&x| !self.data.field.contains(x)) {
            return Err(Error::InvalidParameter("coefficient outside the field".into()));
        }
        Ok(TruncPoly { ring: self.clone(), c })
    }

    /// Sum of `c * x^a`; repeated exponents accumulate.
    pub fn from_terms<I>(&self, terms: I) -> Result<TruncPoly>
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut f = self.zero();
        for (a, c) in terms {
            if !self.data.field.contains(c) {
                return Err(Error::InvalidParameter(format!("coefficient {c} outside the field")));
            }
            let idx = self.index(&a)?;
            f.c[idx] = self.data.field.add(f.c[idx], c);
        }
        Ok(f)
    }

    /// `prod_k z_k^{c_k}` where `z_k = 1 + x_k` for `k` in `units` and `z_k = x_k` otherwise.
    pub fn mixed_monomial(&self, c: &[u32], units: &[bool]) -> TruncPoly {
        let mut f = self.one();
        for k in 0..self.data.n {
            if c[k] == 0 {
                continue;
            }
            let z = if units[k] { self.unit_var(k) } else { self.var(k) };
            f = f.mul(&z.pow(c[k] as u64));
        }
        f
    }

    /// `out += a * b`.
    pub fn mul_acc(&self, out: &mut [Scalar], a: &[Scalar], b: &[Scalar]) {
        let f = &self.data.field;
        let nz_b: Vec<(usize, Scalar)> = b.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j, x)).collect();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for &(j, bj) in &nz_b {
                if let Some(k) = self.add_indices(i, j) {
                    out[k] = f.add(out[k], f.mul(ai, bj));
                }
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> TruncPoly {
        let q = self.data.field.order();
        let c = (0..self.data.size).map(|_| rng.gen_range(0..q)).collect();
        TruncPoly { ring: self.clone(), c }
    }

    /// Random polynomial supported in total degrees `lo..=hi`, each coefficient nonzero
    /// with probability `density`.
    pub fn random_in_degrees<R: Rng + ?Sized>(&self, rng: &mut R, lo: u32, hi: u32, density: f64) -> TruncPoly {
        let q = self.data.field.order();
        let mut f = self.zero();
        for idx in 0..self.data.size {
            let d = self.data.degrees[idx];
            if d >= lo && d <= hi && rng.gen_bool(density) {
                f.c[idx] = rng.gen_range(1..q);
            }
        }
        f
    }
}

/// An element of `A(n)`.
#[derive(Clone)]
pub struct TruncPoly {
    ring: PolyRing,
    c: Vec<Scalar>,
}

impl PartialEq for TruncPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.c == other.c
    }
}

impl Eq for TruncPoly {}

impl std::hash::Hash for TruncPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl TruncPoly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Dense coefficients in monomial index order.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeffs_mut(&mut self) -> &mut [Scalar] {
        &mut self.c
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.c
    }

    pub fn coeff(&self, a: &[u32]) -> Scalar {
        self.ring.index(a).map(|i| self.c[i]).unwrap_or(0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.c[0]
    }

    /// Nonzero terms in index order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Scalar)> + '_ {
        self.c.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(i, &x)| (self.ring.exponent(i), x))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.c.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Largest total degree of a nonzero term.
    pub fn degree(&self) -> Option<u32> {
        self.support().map(|i| self.ring.degree_of(i)).max()
    }

    /// Smallest total degree of a nonzero term.
    pub fn order(&self) -> Option<u32> {
        self.support().map(|i| self.ring.degree_of(i)).min()
    }

    /// The part of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> TruncPoly {
        self.filter_degrees(|k| k == d)
    }

    pub fn filter_degrees(&self, keep: impl Fn(u32) -> bool) -> TruncPoly {
        let mut f = self.clone();
        for (i, x) in f.c.iter_mut().enumerate() {
            if !keep(self.ring.degree_of(i)) {
                *x = 0;
            }
        }
        f
    }

    fn check(&self, other: &TruncPoly) {
        assert!(self.ring == other.ring, "polynomials from different rings");
    }

    pub fn add(&self, other: &TruncPoly) -> TruncPoly {
        self.check(other);
        let f = self.ring.field();
        TruncPoly { ring: self.ring.clone(), c: self.c.iter().zip(&other.c).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, other: &TruncPoly) -> TruncPoly {
        self.check(other);
        let f = self.ring.field();
        TruncPoly { ring: self.ring.clone(), c: self.c.iter().zip(&other.c).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn neg(&self) -> TruncPoly {
        let f = self.ring.field();
        TruncPoly { ring: self.ring.clone(), c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn scale(&self, s: Scalar) -> TruncPoly {
        let mut g = self.clone();
        self.ring.field().scale_slice(&mut g.c, s);
        g
    }

    pub fn mul(&self, other: &TruncPoly) -> TruncPoly {
        self.check(other);
        let mut out = self.ring.zero();
        self.ring.mul_acc(&mut out.c, &self.c, &other.c);
        out
    }

    pub fn pow(&self, mut k: u64) -> TruncPoly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `d/dx_{i+1}` (0-based `i`).
    pub fn partial(&self, i: usize) -> TruncPoly {
        let mut out = self.ring.zero();
        partial_into(&self.ring, &mut out.c, &self.c, i);
        out
    }

    pub fn is_invertible(&self) -> bool {
        self.c[0] != 0
    }

    pub fn invert(&self) -> Result<TruncPoly> {
        let f = self.ring.field();
        let c0 = f.inv(self.c[0]).ok_or_else(|| Error::InvalidParameter("polynomial with zero constant term is not invertible".into()))?;
        // self = c (1 + u), inverse = c^{-1} sum_k (-u)^k
        let mut minus_u = self.scale(c0);
        minus_u.c[0] = 0;
        let minus_u = minus_u.neg();
        let mut acc = self.ring.one();
        let mut term = self.ring.one();
        for _ in 0..self.ring.max_degree() {
            term = term.mul(&minus_u);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc.scale(c0))
    }

    /// Evaluates at `x_i -> images[i]`.
    pub fn substitute(&self, images: &[TruncPoly]) -> Result<TruncPoly> {
        let n = self.ring.n();
        if images.len() != n {
            return Err(Error::Mismatch(format!("{} images for {n} variables", images.len())));
        }
        for g in images {
            if g.ring != self.ring {
                return Err(Error::Mismatch("image from a different ring".into()));
            }
        }
        let mut out = self.ring.zero();
        let f = self.ring.field();
        // Horner in the last variable first: group terms by leading exponents.
        let powers: Vec<Vec<TruncPoly>> = images
            .iter()
            .map(|g| {
                let mut v = vec![self.ring.one()];
                for k in 1..self.ring.p() as usize {
                    let next = v[k - 1].mul(g);
                    v.push(next);
                }
                v
            })
            .collect();
        for (idx, &c) in self.c.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let a = self.ring.exponent(idx);
            let mut m = self.ring.constant(c);
            for k in 0..n {
                if a[k] > 0 {
                    m = m.mul(&powers[k][a[k] as usize]);
                }
            }
            for (o, &x) in out.c.iter_mut().zip(&m.c) {
                *o = f.add(*o, x);
            }
        }
        Ok(out)
    }
}

/// `out += d f / d x_{i+1}`.
pub fn partial_into(ring: &PolyRing, out: &mut [Scalar], f: &[Scalar], i: usize) {
    let field = ring.field();
    let s = ring.stride(i);
    for (idx, &c) in f.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let a = ring.exponent(idx)[i];
        if a > 0 {
            let k = idx - s;
            out[k] = field.add(out[k], field.mul(c, a));
        }
    }
}

/// The linear map `f -> f(images)` on `A(n)`, tabulated on monomials.
#[derive(Clone)]
pub struct Substitution {
    ring: PolyRing,
    images: Vec<TruncPoly>,
    /// `columns[idx]` is the image of the monomial with index `idx`.
    columns: Vec<Vec<Scalar>>,
}

impl Substitution {
    pub fn new(images: &[TruncPoly]) -> Result<Self> {
        let ring = images.first().map(|g| g.ring().clone()).ok_or_else(|| Error::Mismatch("no images".into()))?;
        let n = ring.n();
        if images.len() != n {
            return Err(Error::Mismatch(format!("{} images for {n} variables", images.len())));
        }
        if images.iter().any(|g| g.ring != ring) {
            return Err(Error::Mismatch("images from different rings".into()));
        }
        let size = ring.size();
        let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(size);
        for idx in 0..size {
            if idx == 0 {
                let mut v = vec![0; size];
                v[0] = 1;
                columns.push(v);
                continue;
            }
            // Strip one factor of the last variable with a positive exponent.
            let a = ring.exponent(idx);
            let k = (0..n).rev().find(|&k| a[k] > 0).unwrap();
            let prev = idx - ring.stride(k);
            let mut v = vec![0; size];
            ring.mul_acc(&mut v, &columns[prev], &images[k].c);
            columns.push(v);
        }
        Ok(Substitution { ring, images: images.to_vec(), columns })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn images(&self) -> &[TruncPoly] {
        &self.images
    }

    pub fn apply_slice(&self, f: &[Scalar]) -> Vec<Scalar> {
        let field = self.ring.field();
        let mut out = vec![0; self.ring.size()];
        for (idx, &c) in f.iter().enumerate() {
            if c != 0 {
                field.axpy(&mut out, c, &self.columns[idx], 0);
            }
        }
        out
    }

    pub fn apply(&self, f: &TruncPoly) -> TruncPoly {
        TruncPoly { ring: self.ring.clone(), c: self.apply_slice(&f.c) }
    }
}

impl fmt::Debug for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", monomial_string(a, c))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn monomial_string(a: &[u32], c: Scalar) -> String {
    let mut parts = Vec::new();
    for (k, &e) in a.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("x{}", k + 1)),
            _ => parts.push(format!("x{}^{}", k + 1, e)),
        }
    }
    match (c, parts.is_empty()) {
        (_, true) => format!("{c}"),
        (1, false) => parts.join("*"),
        _ => format!("{c}*{}", parts.join("*")),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&TruncPoly> for &TruncPoly {
            type Output = TruncPoly;
            fn $m(self, rhs: &TruncPoly) -> TruncPoly {
                TruncPoly::$m(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly::neg(self)
    }
}
