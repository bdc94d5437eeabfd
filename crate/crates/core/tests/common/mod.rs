//! Naive reference arithmetic for prime fields, independent of the library kernels.
//! Polynomials are maps from exponent vectors to residues; derivations are lists of
//! component polynomials.
#![allow(dead_code)]

use std::collections::BTreeMap;

use witt_borel::{PolyRing, TruncPoly, WittAlgebra, WittElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NPoly {
    pub p: u64,
    pub n: usize,
    pub t: BTreeMap<Vec<u32>, u64>,
}

impl NPoly {
    pub fn zero(p: u64, n: usize) -> Self {
        NPoly { p, n, t: BTreeMap::new() }
    }

    pub fn term(p: u64, a: Vec<u32>, c: u64) -> Self {
        let mut f = Self::zero(p, a.len());
        f.push(a, c);
        f
    }

    pub fn one(p: u64, n: usize) -> Self {
        Self::term(p, vec![0; n], 1)
    }

    pub fn var(p: u64, n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Self::term(p, a, 1)
    }

    fn push(&mut self, a: Vec<u32>, c: u64) {
        if a.iter().any(|&e| e as u64 >= self.p) {
            return;
        }
        let e = self.t.entry(a).or_insert(0);
        *e = (*e + c) % self.p;
        self.t.retain(|_, v| *v != 0);
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn add(&self, o: &NPoly) -> NPoly {
        let mut out = self.clone();
        for (a, &c) in &o.t {
            out.push(a.clone(), c);
        }
        out
    }

    pub fn scale(&self, s: u64) -> NPoly {
        let mut out = Self::zero(self.p, self.n);
        for (a, &c) in &self.t {
            out.push(a.clone(), c * (s % self.p) % self.p);
        }
        out
    }

    pub fn sub(&self, o: &NPoly) -> NPoly {
        self.add(&o.scale(self.p - 1))
    }

    pub fn mul(&self, o: &NPoly) -> NPoly {
        let mut out = Self::zero(self.p, self.n);
        for (a, &c) in &self.t {
            for (b, &d) in &o.t {
                let s: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.push(s, c * d % self.p);
            }
        }
        out
    }

    pub fn pow(&self, k: u64) -> NPoly {
        let mut out = Self::one(self.p, self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, i: usize) -> NPoly {
        let mut out = Self::zero(self.p, self.n);
        for (a, &c) in &self.t {
            if a[i] > 0 {
                let mut b = a.clone();
                b[i] -= 1;
                out.push(b, c * a[i] as u64 % self.p);
            }
        }
        out
    }

    /// `f(images)`.
    pub fn subst(&self, images: &[NPoly]) -> NPoly {
        let mut out = Self::zero(self.p, self.n);
        for (a, &c) in &self.t {
            let mut m = Self::one(self.p, self.n).scale(c);
            for (k, &e) in a.iter().enumerate() {
                m = m.mul(&images[k].pow(e as u64));
            }
            out = out.add(&m);
        }
        out
    }

    pub fn from_lib(f: &TruncPoly) -> NPoly {
        let ring = f.ring();
        let mut out = Self::zero(ring.p() as u64, ring.n());
        for (a, c) in f.terms() {
            out.push(a.to_vec(), c as u64);
        }
        out
    }

    pub fn to_lib(&self, ring: &PolyRing) -> TruncPoly {
        ring.from_terms(self.t.iter().map(|(a, &c)| (a.clone(), c as u32))).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NDer {
    pub comps: Vec<NPoly>,
}

impl NDer {
    pub fn from_lib(d: &WittElement) -> NDer {
        NDer { comps: d.components().iter().map(NPoly::from_lib).collect() }
    }

    pub fn to_lib(&self, alg: &WittAlgebra) -> WittElement {
        let comps: Vec<TruncPoly> = self.comps.iter().map(|f| f.to_lib(alg.ring())).collect();
        alg.from_components(&comps).unwrap()
    }

    pub fn apply(&self, g: &NPoly) -> NPoly {
        let mut out = NPoly::zero(g.p, g.n);
        for (i, f) in self.comps.iter().enumerate() {
            out = out.add(&f.mul(&g.partial(i)));
        }
        out
    }

    /// Commutator of derivations, evaluated on the generators.
    pub fn bracket(&self, o: &NDer) -> NDer {
        NDer { comps: (0..self.comps.len()).map(|i| self.apply(&o.comps[i]).sub(&o.apply(&self.comps[i]))).collect() }
    }

    /// `D^p` evaluated on the generators.
    pub fn p_power(&self) -> NDer {
        let f = &self.comps[0];
        let comps = (0..self.comps.len())
            .map(|i| {
                let mut g = NPoly::var(f.p, f.n, i);
                for _ in 0..f.p {
                    g = self.apply(&g);
                }
                g
            })
            .collect();
        NDer { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }
}

/// `sigma ∘ D ∘ sigma^{-1}` with `sigma(x_i) = images[i]` and `sigma^{-1}(x_i) = inverse[i]`.
pub fn induce(images: &[NPoly], inverse: &[NPoly], d: &NDer) -> NDer {
    NDer { comps: inverse.iter().map(|h| d.apply(h).subst(images)).collect() }
}

/// Rank over `GF(p)` by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let inv = |x: u64| (1..p).find(|&y| x * y % p == 1).unwrap();
    let width = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..width {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] % p != 0) else { continue };
        rows.swap(r, piv);
        let s = inv(rows[r][c] % p);
        let pr: Vec<u64> = rows[r].iter().map(|&x| x * s % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] % p != 0 {
                let f = row[c] % p;
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        rows[r] = pr;
        r += 1;
    }
    r
}

/// All exponent vectors in `[0, p)^n`, lexicographic.
pub fn exponents(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|a: Vec<u32>| (0..p).map(move |e| [a.clone(), vec![e]].concat())).collect();
    }
    out
}

/// Membership of `x^a d_j` (zero-based `j`) in the standard Borel `B_q`, read off
/// from the positive root conditions. `u` is the first `n - q` variables, `w` the rest.
pub fn in_standard_borel(a: &[u32], j: usize, n: usize, q: usize) -> bool {
    let m = n - q;
    let (au, aw) = a.split_at(m);
    let deg_u: u32 = au.iter().sum();
    let supp_u_le = |k: usize| au.iter().enumerate().all(|(i, &e)| e == 0 || i <= k);
    if j < m {
        deg_u > 1 || (deg_u == 1 && supp_u_le(j))
    } else {
        let jw = j - m;
        deg_u > 0 || (aw.iter().enumerate().all(|(i, &e)| e == 0 || i <= jw) && aw[jw] <= 1)
    }
}
