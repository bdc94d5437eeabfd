//! The Jacobson–Witt algebra `W(n) = sum_i A(n) d_i`.
//!
//! Elements are flat coordinate vectors of length `n p^n` in the basis
//! `x^a d_i`, ordered by `(i, a_1, .., a_n)` ascending. Coordinate `k` is
//! `x^a d_i` with `i = k / p^n` and `a` the monomial with index `k % p^n`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, RowSpace};
use crate::truncpoly::{monomial_string, partial_into, MultiIndex, PolyRing, TruncPoly};

/// A weight of a standard torus, entries taken mod `p`.
pub type Weight = Vec<u32>;

/// Handle to `W(n)`. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct WittAlgebra {
    ring: PolyRing,
}

impl fmt::Debug for WittAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({}) over {:?}", self.n(), self.field())
    }
}

impl WittAlgebra {
    pub fn new(field: &Field, n: usize) -> Result<Self> {
        Ok(WittAlgebra { ring: PolyRing::new(field, n)? })
    }

    pub fn from_ring(ring: &PolyRing) -> Self {
        WittAlgebra { ring: ring.clone() }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    /// `n p^n`.
    pub fn dim(&self) -> usize {
        self.n() * self.ring.size()
    }

    /// Top degree `h = n(p-1) - 1` of the standard grading.
    pub fn top_degree(&self) -> i32 {
        self.ring.max_degree() as i32 - 1
    }

    #[inline]
    pub fn coord(&self, dir: usize, idx: usize) -> usize {
        dir * self.ring.size() + idx
    }

    /// `(dir, monomial index)` of a coordinate.
    #[inline]
    pub fn decode(&self, k: usize) -> (usize, usize) {
        (k / self.ring.size(), k % self.ring.size())
    }

    /// Standard degree `|a| - 1` of coordinate `k`.
    pub fn degree_of(&self, k: usize) -> i32 {
        self.ring.degree_of(k % self.ring.size()) as i32 - 1
    }

    pub fn zero(&self) -> WittElement {
        WittElement { alg: self.clone(), c: vec![0; self.dim()] }
    }

    pub fn basis_element(&self, k: usize) -> WittElement {
        let mut e = self.zero();
        e.c[k] = 1;
        e
    }

    /// `c x^a d_{dir+1}`.
    pub fn term(&self, a: &[u32], dir: usize, c: Scalar) -> Result<WittElement> {
        if dir >= self.n() {
            return Err(Error::InvalidParameter(format!("direction {} out of range", dir + 1)));
        }
        let idx = self.ring.index(a)?;
        let mut e = self.zero();
        e.c[self.coord(dir, idx)] = c;
        Ok(e)
    }

    /// `d_{dir+1}`.
    pub fn partial(&self, dir: usize) -> WittElement {
        self.basis_element(self.coord(dir, 0))
    }

    /// `f d_{dir+1}`.
    pub fn element(&self, f: &TruncPoly, dir: usize) -> WittElement {
        let mut e = self.zero();
        let s = self.ring.size();
        e.c[dir * s..(dir + 1) * s].copy_from_slice(f.coeffs());
        e
    }

    /// `sum_i comps[i] d_i`.
    pub fn from_components(&self, comps: &[TruncPoly]) -> Result<WittElement> {
        if comps.len() != self.n() {
            return Err(Error::Mismatch(format!("{} components for W({})", comps.len(), self.n())));
        }
        let mut e = self.zero();
        let s = self.ring.size();
        for (i, f) in comps.iter().enumerate() {
            if f.ring() != &self.ring {
                return Err(Error::Mismatch("component from a different ring".into()));
            }
            e.c[i * s..(i + 1) * s].copy_from_slice(f.coeffs());
        }
        Ok(e)
    }

    pub fn from_coeffs(&self, c: Vec<Scalar>) -> Result<WittElement> {
        if c.len() != self.dim() {
            return Err(Error::Mismatch(format!("expected {} coordinates, got {}", self.dim(), c.len())));
        }
        Ok(WittElement { alg: self.clone(), c })
    }

    /// Sum of `c x^a d_dir` over `(a, dir, c)`, `dir` 0-based.
    pub fn from_terms<I>(&self, terms: I) -> Result<WittElement>
    where
        I: IntoIterator<Item = (MultiIndex, usize, Scalar)>,
    {
        let mut e = self.zero();
        let f = self.field();
        for (a, dir, c) in terms {
            let t = self.term(&a, dir, c)?;
            for (x, y) in e.c.iter_mut().zip(&t.c) {
                *x = f.add(*x, *y);
            }
        }
        Ok(e)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> WittElement {
        let q = self.field().order();
        WittElement { alg: self.clone(), c: (0..self.dim()).map(|_| rng.gen_range(0..q)).collect() }
    }

    /// Random element with each coordinate nonzero with probability `density`.
    pub fn random_sparse<R: Rng + ?Sized>(&self, rng: &mut R, density: f64) -> WittElement {
        let q = self.field().order();
        let c = (0..self.dim()).map(|_| if rng.gen_bool(density) { rng.gen_range(1..q) } else { 0 }).collect();
        WittElement { alg: self.clone(), c }
    }

    /// Span of the basis vectors of standard degree `d`.
    pub fn degree_space(&self, d: i32) -> RowSpace {
        self.span_of_coords((0..self.dim()).filter(|&k| self.degree_of(k) == d))
    }

    /// The filtration piece `W_(d) = sum_{s >= d} W_[s]`.
    pub fn filtration_space(&self, d: i32) -> RowSpace {
        self.span_of_coords((0..self.dim()).filter(|&k| self.degree_of(k) >= d))
    }

    pub fn span_of_coords(&self, coords: impl IntoIterator<Item = usize>) -> RowSpace {
        let mut s = RowSpace::new(self.field(), self.dim());
        for k in coords {
            let mut v = vec![0; self.dim()];
            v[k] = 1;
            s.insert(v);
        }
        s
    }

    pub fn full_space(&self) -> RowSpace {
        RowSpace::full(self.field(), self.dim())
    }

    /// `[a, b]` on coordinate vectors.
    pub fn bracket_slices(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let ring = &self.ring;
        let f = self.field();
        let s = ring.size();
        let mut out = vec![0; self.dim()];
        let nz_b: Vec<(usize, usize, Scalar)> =
            b.iter().enumerate().filter(|(_, &x)| x != 0).map(|(k, &x)| (k / s, k % s, x)).collect();
        for (ka, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let (i, ia) = (ka / s, ka % s);
            let ea = ring.exponent(ia);
            let si = ring.stride(i);
            for &(j, ib, cb) in &nz_b {
                let cd = f.mul(ca, cb);
                // c x^a d_i (d x^b) d_j
                let bi = ring.exponent(ib)[i];
                if bi > 0 {
                    if let Some(m) = ring.add_indices(ia, ib - si) {
                        let o = j * s + m;
                        out[o] = f.add(out[o], f.mul(cd, bi));
                    }
                }
                // - d x^b d_j (c x^a) d_i
                let aj = ea[j];
                if aj > 0 {
                    if let Some(m) = ring.add_indices(ia - ring.stride(j), ib) {
                        let o = i * s + m;
                        out[o] = f.sub(out[o], f.mul(cd, aj));
                    }
                }
            }
        }
        out
    }

    /// `D(g)` on coordinate vectors.
    pub fn apply_slices(&self, d: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let ring = &self.ring;
        let s = ring.size();
        let mut out = vec![0; s];
        let mut dg = vec![0; s];
        for i in 0..self.n() {
            let fi = &d[i * s..(i + 1) * s];
            if fi.iter().all(|&x| x == 0) {
                continue;
            }
            dg.iter_mut().for_each(|x| *x = 0);
            partial_into(ring, &mut dg, g, i);
            ring.mul_acc(&mut out, fi, &dg);
        }
        out
    }

    /// `D^[p]` on coordinate vectors.
    pub fn p_power_slice(&self, d: &[Scalar]) -> Vec<Scalar> {
        let s = self.ring.size();
        let mut out = vec![0; self.dim()];
        for i in 0..self.n() {
            let mut g = vec![0; s];
            g[self.ring.stride(i)] = 1;
            for _ in 0..self.p() {
                g = self.apply_slices(d, &g);
                if g.iter().all(|&x| x == 0) {
                    break;
                }
            }
            out[i * s..(i + 1) * s].copy_from_slice(&g);
        }
        out
    }

    /// Coefficients of each component in the basis of monomials in `z_k`, where
    /// `z_k = 1 + x_k` if `units[k]` and `z_k = x_k` otherwise.
    pub fn to_z_coords(&self, v: &[Scalar], units: &[bool]) -> Vec<Scalar> {
        self.binomial_transform(v, units, true)
    }

    pub fn from_z_coords(&self, v: &[Scalar], units: &[bool]) -> Vec<Scalar> {
        self.binomial_transform(v, units, false)
    }

    fn binomial_transform(&self, v: &[Scalar], units: &[bool], to_z: bool) -> Vec<Scalar> {
        let ring = &self.ring;
        let f = self.field();
        let p = self.p() as usize;
        let s = ring.size();
        let binom = binomial_table(f, p);
        let mut out = v.to_vec();
        for (k, &is_unit) in units.iter().enumerate() {
            if !is_unit {
                continue;
            }
            let st = ring.stride(k);
            let mut line = vec![0; p];
            for base in 0..out.len() {
                if ring.exponent(base % s)[k] != 0 {
                    continue;
                }
                for (e, l) in line.iter_mut().enumerate() {
                    *l = out[base + e * st];
                }
                // x^e = sum_c C(e,c) (-1)^(e-c) z^c ; z^c = sum_e C(c,e) x^e
                for c in 0..p {
                    let mut acc = 0;
                    for e in c..p {
                        let x = line[e];
                        if x == 0 {
                            continue;
                        }
                        let mut t = f.mul(x, binom[e][c]);
                        if to_z && (e - c) % 2 == 1 {
                            t = f.neg(t);
                        }
                        acc = f.add(acc, t);
                    }
                    out[base + c * st] = acc;
                }
            }
        }
        out
    }

    /// Standard-torus unit flags: the last `r` variables are `1 + x`.
    pub fn torus_units(&self, r: usize) -> Vec<bool> {
        (0..self.n()).map(|k| k + r >= self.n()).collect()
    }

    /// Weight of the z-basis vector at coordinate `k` under `t_r`: `c - e_i mod p`.
    pub fn coord_weight(&self, k: usize) -> Weight {
        let (i, idx) = self.decode(k);
        let p = self.p();
        let mut w: Weight = self.ring.exponent(idx).to_vec();
        w[i] = (w[i] + p - 1) % p;
        w
    }

    /// Span of the `t_0`-weight space `W_alpha`.
    pub fn weight_space(&self, alpha: &[u32]) -> RowSpace {
        self.span_of_coords((0..self.dim()).filter(|&k| self.coord_weight(k) == alpha))
    }
}

fn binomial_table(f: &Field, p: usize) -> Vec<Vec<Scalar>> {
    let mut t = vec![vec![0; p]; p];
    for e in 0..p {
        t[e][0] = 1;
        for c in 1..=e {
            t[e][c] = f.add(t[e - 1][c - 1], if c < e { t[e - 1][c] } else { 0 });
        }
    }
    t
}

/// An element of `W(n)`.
#[derive(Clone)]
pub struct WittElement {
    alg: WittAlgebra,
    c: Vec<Scalar>,
}

impl PartialEq for WittElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.c == other.c
    }
}

impl Eq for WittElement {}

impl WittElement {
    pub fn algebra(&self) -> &WittAlgebra {
        &self.alg
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Component `f_{i+1}` of `sum f_i d_i`.
    pub fn component(&self, i: usize) -> TruncPoly {
        let s = self.alg.ring.size();
        self.alg.ring.from_coeffs(self.c[i * s..(i + 1) * s].to_vec()).unwrap()
    }

    pub fn components(&self) -> Vec<TruncPoly> {
        (0..self.alg.n()).map(|i| self.component(i)).collect()
    }

    /// Nonzero terms as `(exponent, dir, coefficient)`, `dir` 0-based.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], usize, Scalar)> + '_ {
        self.c.iter().enumerate().filter(|(_, &x)| x != 0).map(move |(k, &x)| {
            let (i, idx) = self.alg.decode(k);
            (self.alg.ring.exponent(idx), i, x)
        })
    }

    fn check(&self, other: &WittElement) {
        assert!(self.alg == other.alg, "elements of different algebras");
    }

    pub fn add(&self, other: &WittElement) -> WittElement {
        self.check(other);
        let f = self.alg.field();
        WittElement { alg: self.alg.clone(), c: self.c.iter().zip(&other.c).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, other: &WittElement) -> WittElement {
        self.check(other);
        let f = self.alg.field();
        WittElement { alg: self.alg.clone(), c: self.c.iter().zip(&other.c).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn neg(&self) -> WittElement {
        let f = self.alg.field();
        WittElement { alg: self.alg.clone(), c: self.c.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn scale(&self, s: Scalar) -> WittElement {
        let mut e = self.clone();
        self.alg.field().scale_slice(&mut e.c, s);
        e
    }

    /// `D(g)`.
    pub fn apply(&self, g: &TruncPoly) -> TruncPoly {
        let out = self.alg.apply_slices(&self.c, g.coeffs());
        self.alg.ring.from_coeffs(out).unwrap()
    }

    pub fn bracket(&self, other: &WittElement) -> WittElement {
        self.check(other);
        WittElement { alg: self.alg.clone(), c: self.alg.bracket_slices(&self.c, &other.c) }
    }

    /// `D^[p]`, the derivation `D^p` read off on the generators.
    pub fn p_power(&self) -> WittElement {
        WittElement { alg: self.alg.clone(), c: self.alg.p_power_slice(&self.c) }
    }

    /// `D^[p^k]`.
    pub fn p_power_iter(&self, k: usize) -> WittElement {
        let mut d = self.clone();
        for _ in 0..k {
            d = d.p_power();
        }
        d
    }

    pub fn is_toral(&self) -> bool {
        self.p_power() == *self
    }

    pub fn is_nilpotent(&self) -> bool {
        let dim = self.alg.dim() as u64;
        let p = self.alg.p() as u64;
        let mut steps = 0;
        let mut pk = 1u64;
        while pk < dim {
            pk *= p;
            steps += 1;
        }
        let mut d = self.clone();
        for _ in 0..=steps {
            if d.is_zero() {
                return true;
            }
            d = d.p_power();
        }
        d.is_zero()
    }

    /// `D` lies in the span of `D^[p], D^[p^2], ..`.
    pub fn is_semisimple(&self) -> bool {
        self.p_power_span().contains(&self.c)
    }

    /// Span of `D^[p^k]` for `k >= 1`.
    pub fn p_power_span(&self) -> RowSpace {
        let mut span = RowSpace::new(self.alg.field(), self.alg.dim());
        let mut d = self.p_power();
        while span.insert(d.c.clone()) {
            d = d.p_power();
        }
        span
    }

    /// `(D_s, D_n)` with `D_s` semisimple, `D_n` nilpotent and `[D_s, D_n] = 0`.
    pub fn jordan_decompose(&self) -> Result<(WittElement, WittElement)> {
        // (D_s + D_n)^{p^k} = D_s^{p^k} once p^k exceeds the nilpotency index on A(n).
        let k0 = self.alg.n();
        let t = self.p_power_iter(k0);
        let mut cur = t.p_power();
        let mut period = 1;
        let cap = 1 << 16;
        while cur != t {
            cur = cur.p_power();
            period += 1;
            if period > cap {
                return Err(Error::BudgetExhausted("p-power period search".into()));
            }
        }
        let m = k0.div_ceil(period).max(1);
        let semisimple = t.p_power_iter(m * period - k0);
        let nilpotent = self.sub(&semisimple);
        Ok((semisimple, nilpotent))
    }

    /// Matrix of `ad D` in the coordinate basis (column `k` is `[D, e_k]`).
    pub fn ad_matrix(&self) -> Matrix {
        let dim = self.alg.dim();
        let mut cols = Vec::with_capacity(dim);
        let mut e = vec![0; dim];
        for k in 0..dim {
            e[k] = 1;
            cols.push(self.alg.bracket_slices(&self.c, &e));
            e[k] = 0;
        }
        Matrix::from_columns(&cols)
    }

    /// Generalized null space of `ad D`.
    pub fn fitting_null(&self) -> RowSpace {
        let f = self.alg.field();
        let dim = self.alg.dim();
        let mut a = self.ad_matrix();
        let mut k = 1;
        while k < dim {
            a = a.mul(f, &a);
            k *= 2;
        }
        let ker = a.kernel(f);
        RowSpace::from_vectors(f, dim, ker.iter())
    }

    /// Components of the `Z(t_r)`-grading, keyed by degree `|c| - 1`.
    pub fn graded_components(&self, r: usize) -> BTreeMap<i32, WittElement> {
        let units = self.alg.torus_units(r);
        let z = self.alg.to_z_coords(&self.c, &units);
        let mut parts: BTreeMap<i32, Vec<Scalar>> = BTreeMap::new();
        for (k, &x) in z.iter().enumerate() {
            if x != 0 {
                parts.entry(self.alg.degree_of(k)).or_insert_with(|| vec![0; self.alg.dim()])[k] = x;
            }
        }
        parts
            .into_iter()
            .map(|(d, v)| (d, WittElement { alg: self.alg.clone(), c: self.alg.from_z_coords(&v, &units) }))
            .collect()
    }

    /// Simultaneous eigencomponents under `ad(z_i d_i)` for the torus `t_r`.
    pub fn weight_decompose(&self, r: usize) -> BTreeMap<Weight, WittElement> {
        let units = self.alg.torus_units(r);
        let z = self.alg.to_z_coords(&self.c, &units);
        let mut parts: BTreeMap<Weight, Vec<Scalar>> = BTreeMap::new();
        for (k, &x) in z.iter().enumerate() {
            if x != 0 {
                parts.entry(self.alg.coord_weight(k)).or_insert_with(|| vec![0; self.alg.dim()])[k] = x;
            }
        }
        parts
            .into_iter()
            .map(|(w, v)| (w, WittElement { alg: self.alg.clone(), c: self.alg.from_z_coords(&v, &units) }))
            .collect()
    }

    /// Largest standard degree of a nonzero term.
    pub fn degree(&self) -> Option<i32> {
        (0..self.c.len()).filter(|&k| self.c[k] != 0).map(|k| self.alg.degree_of(k)).max()
    }

    /// Smallest standard degree of a nonzero term.
    pub fn order(&self) -> Option<i32> {
        (0..self.c.len()).filter(|&k| self.c[k] != 0).map(|k| self.alg.degree_of(k)).min()
    }
}

impl fmt::Debug for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, i, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let m = monomial_string(a, c);
            if a.iter().all(|&x| x == 0) && c == 1 {
                write!(f, "d{}", i + 1)?;
            } else {
                write!(f, "{m}*d{}", i + 1)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u32, n: usize) -> WittAlgebra {
        WittAlgebra::new(&Field::prime(p).unwrap(), n).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let w1 = w(5, 1);
        let d = w1.partial(0);
        let xd = w1.term(&[1], 0, 1).unwrap();
        assert_eq!(d.bracket(&xd), d);
        let x3d = w1.term(&[3], 0, 1).unwrap();
        assert_eq!(xd.bracket(&x3d), x3d.scale(2));

        let w2 = w(5, 2);
        let a = w2.term(&[1, 0], 1, 1).unwrap();
        let b = w2.term(&[0, 1], 0, 1).unwrap();
        let expect = w2.term(&[1, 0], 0, 1).unwrap().sub(&w2.term(&[0, 1], 1, 1).unwrap());
        assert_eq!(a.bracket(&b), expect);
    }

    #[test]
    fn apply_examples() {
        let w2 = w(5, 2);
        let r = w2.ring().clone();
        let xd = w2.term(&[1, 0], 0, 1).unwrap();
        assert_eq!(xd.apply(&r.var(0).pow(2)), r.var(0).pow(2).scale(2));
        let yd = w2.element(&r.unit_var(0), 0);
        assert_eq!(yd.apply(&r.var(0)), r.unit_var(0));
        let x2d1 = w2.term(&[0, 1], 0, 1).unwrap();
        assert_eq!(x2d1.apply(&r.var(0).mul(&r.var(1))), r.var(1).pow(2));
    }

    #[test]
    fn p_power_examples() {
        let w1 = w(5, 1);
        let xd = w1.term(&[1], 0, 1).unwrap();
        assert_eq!(xd.p_power(), xd);
        assert!(w1.partial(0).p_power().is_zero());
        let yd = w1.element(&w1.ring().unit_var(0), 0);
        assert!(yd.is_toral());
        assert!(w1.partial(0).is_nilpotent());
        assert!(w1.term(&[2], 0, 1).unwrap().is_nilpotent());
        assert!(xd.is_semisimple());
        assert!(!w1.partial(0).is_semisimple());
    }

    #[test]
    fn gradings() {
        let w1 = w(5, 1);
        let d = w1.partial(0).add(&w1.term(&[2], 0, 1).unwrap());
        let g = d.graded_components(0);
        assert_eq!(g.len(), 2);
        assert_eq!(g[&-1], w1.partial(0));
        assert_eq!(g[&1], w1.term(&[2], 0, 1).unwrap());
        let g1 = w1.partial(0).graded_components(1);
        assert_eq!(g1.len(), 1);
        let t = w1.element(&w1.ring().unit_var(0), 0);
        assert_eq!(t.bracket(&w1.partial(0)), w1.partial(0).neg());
    }

    #[test]
    fn weights() {
        let w2 = w(5, 2);
        let e = w2.term(&[1, 0], 1, 1).unwrap();
        let wd = e.weight_decompose(0);
        assert_eq!(wd.keys().collect::<Vec<_>>(), vec![&vec![1, 4]]);
        let e = w2.term(&[2, 1], 0, 1).unwrap();
        assert_eq!(e.weight_decompose(0).keys().next().unwrap(), &vec![1, 1]);
    }

    #[test]
    fn z_transform_roundtrip() {
        let w2 = w(5, 2);
        let mut rng = rand::thread_rng();
        for r in 0..=2 {
            let units = w2.torus_units(r);
            let v = w2.random(&mut rng);
            let z = w2.to_z_coords(v.coeffs(), &units);
            assert_eq!(w2.from_z_coords(&z, &units), v.coeffs());
        }
    }

    #[test]
    fn fitting_null_examples() {
        let w1 = w(5, 1);
        let xd = w1.term(&[1], 0, 1).unwrap();
        let fnull = xd.fitting_null();
        assert_eq!(fnull.dim(), 1);
        assert!(fnull.contains(xd.coeffs()));
        assert_eq!(w1.zero().fitting_null().dim(), 5);
        let yd = w1.element(&w1.ring().unit_var(0), 0);
        let fy = yd.fitting_null();
        assert_eq!(fy.dim(), 1);
        assert!(fy.contains(yd.coeffs()));
    }

    #[test]
    fn jordan_parts() {
        let w2 = w(5, 2);
        let mut rng = rand::thread_rng();
        for _ in 0..5 {
            let d = w2.random(&mut rng);
            let (s, n) = d.jordan_decompose().unwrap();
            assert_eq!(s.add(&n), d);
            assert!(n.is_nilpotent());
            assert!(s.is_semisimple());
            assert!(s.bracket(&n).is_zero());
        }
    }
}
