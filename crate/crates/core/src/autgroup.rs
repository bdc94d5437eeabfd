//! Automorphisms of `A(n)` and the automorphisms of `W(n)` they induce.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::subalg::Subalgebra;
use crate::truncpoly::{partial_into, PolyRing, Substitution, TruncPoly};
use crate::witt::{WittAlgebra, WittElement};

struct AutInner {
    ring: PolyRing,
    subst: Substitution,
    inverse: OnceLock<Vec<TruncPoly>>,
    /// `inv_partials[i][k]` is `d_k` of the `i`-th inverse image.
    inv_partials: OnceLock<Vec<Vec<Vec<Scalar>>>>,
}

/// An automorphism of `A(n)`, given by the images of `x_1..x_n`. Cheap to clone.
#[derive(Clone)]
pub struct AlgebraAut {
    inner: Arc<AutInner>,
}

impl PartialEq for AlgebraAut {
    fn eq(&self, other: &Self) -> bool {
        self.images() == other.images()
    }
}

impl Eq for AlgebraAut {}

impl fmt::Debug for AlgebraAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().enumerate().map(|(i, g)| format!("x{} -> {g}", i + 1)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `M[k][i]` = coefficient of `x_k` in `images[i]`.
fn linear_matrix(ring: &PolyRing, images: &[TruncPoly]) -> Matrix {
    let n = ring.n();
    let mut m = Matrix::zeros(n, n);
    for (i, g) in images.iter().enumerate() {
        for k in 0..n {
            m.set(k, i, g.coeffs()[ring.stride(k)]);
        }
    }
    m
}

impl AlgebraAut {
    /// Checks that every image has zero constant term and that the Jacobian is invertible.
    pub fn new(images: Vec<TruncPoly>) -> Result<Self> {
        let ring = images.first().map(|g| g.ring().clone()).ok_or_else(|| Error::Mismatch("no images".into()))?;
        if images.len() != ring.n() {
            return Err(Error::Mismatch(format!("{} images for {} variables", images.len(), ring.n())));
        }
        if images.iter().any(|g| g.ring() != &ring) {
            return Err(Error::Mismatch("images from different rings".into()));
        }
        if let Some(i) = images.iter().position(|g| g.constant_term() != 0) {
            return Err(Error::NotAutomorphism(format!("image of x{} has a nonzero constant term", i + 1)));
        }
        // det(d_i images[j]) is a unit iff its constant term, the determinant of the linear part, is nonzero.
        if !linear_matrix(&ring, &images).is_invertible(ring.field()) {
            return Err(Error::NotAutomorphism("singular Jacobian".into()));
        }
        Ok(Self::new_unchecked(images))
    }

    fn new_unchecked(images: Vec<TruncPoly>) -> Self {
        let ring = images[0].ring().clone();
        let subst = Substitution::new(&images).unwrap();
        AlgebraAut { inner: Arc::new(AutInner { ring, subst, inverse: OnceLock::new(), inv_partials: OnceLock::new() }) }
    }

    pub fn identity(ring: &PolyRing) -> Self {
        Self::new_unchecked((0..ring.n()).map(|i| ring.var(i)).collect())
    }

    pub fn ring(&self) -> &PolyRing {
        &self.inner.ring
    }

    pub fn images(&self) -> &[TruncPoly] {
        self.inner.subst.images()
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(i, g)| *g == self.ring().var(i))
    }

    /// `f -> f(images)`.
    pub fn apply(&self, f: &TruncPoly) -> TruncPoly {
        self.inner.subst.apply(f)
    }

    /// Linear part `M`, with `images[i] = sum_k M[k][i] x_k + (higher terms)`.
    pub fn linear_part(&self) -> Matrix {
        linear_matrix(self.ring(), self.images())
    }

    /// `self ∘ other`, so that `(self ∘ other)(f) = self(other(f))`.
    pub fn compose(&self, other: &AlgebraAut) -> AlgebraAut {
        assert!(self.ring() == other.ring(), "automorphisms of different rings");
        Self::new_unchecked(other.images().iter().map(|g| self.apply(g)).collect())
    }

    fn inverse_images(&self) -> &[TruncPoly] {
        self.inner.inverse.get_or_init(|| {
            let ring = self.ring();
            let f = ring.field();
            let n = ring.n();
            // images = L + h with h of order >= 2; solve t = N^{-1} (x - h(t)), N = M^T.
            let nmat = self.linear_part().transpose();
            let ninv = nmat.inverse(f).expect("validated automorphism has invertible linear part");
            let higher: Vec<TruncPoly> = self.images().iter().map(|g| g.filter_degrees(|d| d >= 2)).collect();
            let mix = |v: &[TruncPoly]| -> Vec<TruncPoly> {
                (0..n)
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (k, vk) in v.iter().enumerate() {
                            acc = acc.add(&vk.scale(ninv.get(i, k)));
                        }
                        acc
                    })
                    .collect()
            };
            let xs: Vec<TruncPoly> = (0..n).map(|i| ring.var(i)).collect();
            let mut t = mix(&xs);
            for _ in 0..ring.max_degree() {
                let s = Substitution::new(&t).unwrap();
                let rhs: Vec<TruncPoly> = xs.iter().zip(&higher).map(|(x, h)| x.sub(&s.apply(h))).collect();
                let next = mix(&rhs);
                if next == t {
                    break;
                }
                t = next;
            }
            t
        })
    }

    pub fn inverse(&self) -> AlgebraAut {
        let inv = Self::new_unchecked(self.inverse_images().to_vec());
        let _ = inv.inner.inverse.set(self.images().to_vec());
        inv
    }

    fn inv_partials(&self) -> &[Vec<Vec<Scalar>>] {
        self.inner.inv_partials.get_or_init(|| {
            let ring = self.ring();
            self.inverse_images()
                .iter()
                .map(|h| {
                    (0..ring.n())
                        .map(|k| {
                            let mut out = vec![0; ring.size()];
                            partial_into(ring, &mut out, h.coeffs(), k);
                            out
                        })
                        .collect()
                })
                .collect()
        })
    }

    /// `sigma ∘ D ∘ sigma^{-1}` on coordinate vectors.
    pub fn induce_slice(&self, alg: &WittAlgebra, d: &[Scalar]) -> Vec<Scalar> {
        let ring = self.ring();
        assert!(alg.ring() == ring, "automorphism and algebra disagree");
        let n = ring.n();
        let s = ring.size();
        let parts = self.inv_partials();
        let mut out = vec![0; alg.dim()];
        for i in 0..n {
            // D(sigma^{-1}(x_i)) = sum_k D_k * d_k(sigma^{-1}(x_i))
            let mut g = vec![0; s];
            for k in 0..n {
                let dk = &d[k * s..(k + 1) * s];
                if dk.iter().any(|&x| x != 0) {
                    ring.mul_acc(&mut g, dk, &parts[i][k]);
                }
            }
            let e = self.inner.subst.apply_slice(&g);
            out[i * s..(i + 1) * s].copy_from_slice(&e);
        }
        out
    }

    pub fn induce(&self, d: &WittElement) -> WittElement {
        let alg = d.algebra();
        alg.from_coeffs(self.induce_slice(alg, d.coeffs())).unwrap()
    }

    pub fn induce_subalgebra(&self, s: &Subalgebra) -> Subalgebra {
        let alg = s.algebra();
        let images: Vec<WittElement> = s.space().basis().iter().map(|v| alg.from_coeffs(self.induce_slice(alg, v)).unwrap()).collect();
        Subalgebra::span(alg, &images)
    }

    /// Every image is a linear form.
    pub fn in_g0(&self) -> bool {
        self.images().iter().all(|g| g.support().all(|idx| self.ring().degree_of(idx) == 1))
    }

    /// Every image is `x_i` plus terms of degree at least 2.
    pub fn in_u(&self) -> bool {
        let ring = self.ring();
        self.images().iter().enumerate().all(|(i, g)| {
            g.sub(&ring.var(i)).order().map_or(true, |d| d >= 2)
        })
    }

    /// `in_u` and each increment lies in `(k + k x_i) k[x_1..x_{i-1}]`.
    pub fn in_un(&self) -> bool {
        let ring = self.ring();
        self.in_u()
            && self.images().iter().enumerate().all(|(i, g)| {
                g.sub(&ring.var(i)).support().all(|idx| {
                    let a = ring.exponent(idx);
                    a[i] <= 1 && a[i + 1..].iter().all(|&x| x == 0)
                })
            })
    }

    /// `in_u` and the induced automorphism stabilizes `B_r`.
    pub fn in_ur(&self, alg: &WittAlgebra, r: usize) -> Result<bool> {
        Ok(self.in_u() && self.stabilizes(&crate::standard::borel(alg, r)?))
    }

    /// The induced automorphism maps `s` into itself.
    pub fn stabilizes(&self, s: &Subalgebra) -> bool {
        let alg = s.algebra();
        s.space().basis().iter().all(|v| s.space().contains(&self.induce_slice(alg, v)))
    }
}

fn unit_pow_minus_one(ring: &PolyRing, i: usize, b: u32) -> TruncPoly {
    ring.unit_var(i).pow(b as u64).sub(&ring.one())
}

fn mod_inverse(x: i64, p: u32) -> Option<u32> {
    let x = x.rem_euclid(p as i64) as u32;
    (1..p).find(|&b| (b as u64 * x as u64) % p as u64 == 1).filter(|_| x != 0)
}

/// `x -> (1+x)^b - 1` on `A(1)` with `b (p - a + 1) ≡ 1 mod p`.
pub fn phi_w1(ring: &PolyRing, a: u32) -> Result<AlgebraAut> {
    if ring.n() != 1 {
        return Err(Error::InvalidParameter("phi_w1 acts on A(1)".into()));
    }
    let p = ring.p();
    let b = mod_inverse(p as i64 - a as i64 + 1, p)
        .ok_or_else(|| Error::InvalidParameter(format!("a = {a} is congruent to 1 mod {p}")))?;
    AlgebraAut::new(vec![unit_pow_minus_one(ring, 0, b)])
}

/// `x_q -> (1 + x_q) prod_{j in block, j != q} (1 + x_j)^{d_j} - 1`, with
/// `d_q (a_q - 1) ≡ 1` and `d_j = d_q (p - a_j) mod p`. `block` lists the unit
/// coordinates `j` that enter the product; `a` is indexed by coordinate.
pub fn phi_l44(ring: &PolyRing, q: usize, a: &[u32], block: &[usize]) -> Result<AlgebraAut> {
    let n = ring.n();
    let p = ring.p();
    if q >= n || a.len() != n {
        return Err(Error::InvalidParameter("phi parameters out of range".into()));
    }
    let dq = mod_inverse(a[q] as i64 - 1, p)
        .ok_or_else(|| Error::InvalidParameter(format!("a_q = {} is congruent to 1 mod {p}", a[q])))?;
    let mut g = ring.unit_var(q);
    for &j in block {
        if j == q {
            continue;
        }
        let dj = (dq as u64 * ((p - a[j] % p) % p) as u64 % p as u64) as u64;
        g = g.mul(&ring.unit_var(j).pow(dj));
    }
    let g = g.sub(&ring.one());
    let images = (0..n).map(|i| if i == q { g.clone() } else { ring.var(i) }).collect();
    AlgebraAut::new(images)
}

/// `x_q -> (1 + x_q)^b - 1` with `(p - a_q + 1) b ≡ 1 mod p`.
pub fn psi_l44(ring: &PolyRing, q: usize, a_q: u32) -> Result<AlgebraAut> {
    let n = ring.n();
    let p = ring.p();
    if q >= n {
        return Err(Error::InvalidParameter("psi index out of range".into()));
    }
    let b = mod_inverse(p as i64 - a_q as i64 + 1, p)
        .ok_or_else(|| Error::InvalidParameter(format!("a_q = {a_q} is congruent to 1 mod {p}")))?;
    let images = (0..n).map(|i| if i == q { unit_pow_minus_one(ring, q, b) } else { ring.var(i) }).collect();
    AlgebraAut::new(images)
}

/// `x_j -> (1 + x_j)^{p-1} - 1` for the last `r` coordinates.
pub fn theta(ring: &PolyRing, r: usize) -> Result<AlgebraAut> {
    let n = ring.n();
    if r > n {
        return Err(Error::InvalidParameter(format!("r = {r} exceeds n = {n}")));
    }
    let p = ring.p();
    let images = (0..n).map(|i| if i + r >= n { unit_pow_minus_one(ring, i, p - 1) } else { ring.var(i) }).collect();
    AlgebraAut::new(images)
}

/// `x_q -> x_q prod_j (1 + x_j)^{b_j}`; requires `b_q = 0`.
pub fn omega(ring: &PolyRing, q: usize, b: &[u32]) -> Result<AlgebraAut> {
    let n = ring.n();
    if q >= n || b.len() != n {
        return Err(Error::InvalidParameter("omega parameters out of range".into()));
    }
    if b[q] != 0 {
        return Err(Error::InvalidParameter("omega needs b_q = 0".into()));
    }
    let mut g = ring.var(q);
    for (j, &bj) in b.iter().enumerate() {
        if bj > 0 {
            g = g.mul(&ring.unit_var(j).pow(bj as u64));
        }
    }
    let images = (0..n).map(|i| if i == q { g.clone() } else { ring.var(i) }).collect();
    AlgebraAut::new(images)
}

/// `x_i -> sum_k m[k][i] x_k`.
pub fn linear(ring: &PolyRing, m: &Matrix) -> Result<AlgebraAut> {
    let n = ring.n();
    if m.rows != n || m.cols != n {
        return Err(Error::Mismatch(format!("{}x{} matrix for n = {n}", m.rows, m.cols)));
    }
    let images = (0..n)
        .map(|i| {
            let mut g = ring.zero();
            for k in 0..n {
                g.coeffs_mut()[ring.stride(k)] = m.get(k, i);
            }
            g
        })
        .collect();
    AlgebraAut::new(images)
}

/// `x_i -> x_{perm[i]}`.
pub fn permute(ring: &PolyRing, perm: &[usize]) -> Result<AlgebraAut> {
    let n = ring.n();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::InvalidParameter(format!("{perm:?} is not a permutation of 0..{n}")));
    }
    AlgebraAut::new(perm.iter().map(|&j| ring.var(j)).collect())
}

/// Random invertible matrix, upper triangular if requested.
pub fn random_matrix<R: Rng + ?Sized>(ring: &PolyRing, rng: &mut R, upper: bool) -> Matrix {
    let n = ring.n();
    let f = ring.field();
    let q = f.order();
    loop {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            for i in 0..n {
                let v = if k == i {
                    rng.gen_range(1..q)
                } else if upper && k > i {
                    0
                } else {
                    rng.gen_range(0..q)
                };
                m.set(k, i, v);
            }
        }
        if m.is_invertible(f) {
            return m;
        }
    }
}

/// `x_i -> x_i + (random terms of degree >= 2)`.
pub fn random_u<R: Rng + ?Sized>(ring: &PolyRing, rng: &mut R, density: f64) -> AlgebraAut {
    let images = (0..ring.n())
        .map(|i| ring.var(i).add(&ring.random_in_degrees(rng, 2, ring.max_degree(), density)))
        .collect();
    AlgebraAut::new_unchecked(images)
}

/// Random element of `U_n`: increments in `(k + k x_i) k[x_1..x_{i-1}]` of degree >= 2.
pub fn random_un<R: Rng + ?Sized>(ring: &PolyRing, rng: &mut R, density: f64) -> AlgebraAut {
    let q = ring.field().order();
    let images = (0..ring.n())
        .map(|i| {
            let mut g = ring.var(i);
            for idx in 0..ring.size() {
                let a = ring.exponent(idx);
                if ring.degree_of(idx) >= 2 && a[i] <= 1 && a[i + 1..].iter().all(|&x| x == 0) && rng.gen_bool(density) {
                    g.coeffs_mut()[idx] = rng.gen_range(1..q);
                }
            }
            g
        })
        .collect();
    AlgebraAut::new_unchecked(images)
}

/// Random element of `U` outside `U_n`: a `U_n`-style element plus one increment term
/// violating the `U_n` condition.
pub fn random_u_not_un<R: Rng + ?Sized>(ring: &PolyRing, rng: &mut R, density: f64) -> AlgebraAut {
    let q = ring.field().order();
    let base = random_un(ring, rng, density);
    let mut images = base.images().to_vec();
    let bad: Vec<(usize, usize)> = (0..ring.n())
        .flat_map(|i| (0..ring.size()).map(move |idx| (i, idx)))
        .filter(|&(i, idx)| {
            let a = ring.exponent(idx);
            ring.degree_of(idx) >= 2 && (a[i] > 1 || a[i + 1..].iter().any(|&x| x > 0))
        })
        .collect();
    let (i, idx) = bad[rng.gen_range(0..bad.len())];
    images[i].coeffs_mut()[idx] = rng.gen_range(1..q);
    AlgebraAut::new_unchecked(images)
}

/// Random automorphism `linear ∘ u` with `u` in `U`.
pub fn random_aut<R: Rng + ?Sized>(ring: &PolyRing, rng: &mut R, density: f64) -> AlgebraAut {
    let m = random_matrix(ring, rng, false);
    linear(ring, &m).unwrap().compose(&random_u(ring, rng, density))
}
