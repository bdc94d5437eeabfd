//! Subspaces and subalgebras of `W(n)`.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{left_kernel, RowSpace};
use crate::witt::{Weight, WittAlgebra, WittElement};

/// A subspace of `W(n)` in canonical echelon form, with lazily computed flags.
#[derive(Clone)]
pub struct Subalgebra {
    alg: WittAlgebra,
    space: RowSpace,
    closed: OnceLock<bool>,
    series: OnceLock<Vec<RowSpace>>,
}

impl PartialEq for Subalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.space == other.space
    }
}

impl Eq for Subalgebra {}

impl std::fmt::Debug for Subalgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subalgebra(dim {} in {:?})", self.dim(), self.alg)
    }
}

impl Subalgebra {
    /// The span of `space`, which need not be closed.
    pub fn from_space(alg: &WittAlgebra, space: RowSpace) -> Result<Self> {
        if space.width() != alg.dim() {
            return Err(Error::Mismatch(format!("space of width {} in W(n) of dim {}", space.width(), alg.dim())));
        }
        Ok(Subalgebra { alg: alg.clone(), space, closed: OnceLock::new(), series: OnceLock::new() })
    }

    /// The span of `elements`, which need not be closed.
    pub fn span(alg: &WittAlgebra, elements: &[WittElement]) -> Self {
        let mut space = RowSpace::new(alg.field(), alg.dim());
        for e in elements {
            assert!(e.algebra() == alg, "element of a different algebra");
            space.insert(e.coeffs().to_vec());
        }
        Subalgebra::from_space(alg, space).unwrap()
    }

    pub fn zero(alg: &WittAlgebra) -> Self {
        Subalgebra::from_space(alg, RowSpace::new(alg.field(), alg.dim())).unwrap()
    }

    pub fn full(alg: &WittAlgebra) -> Self {
        Subalgebra::from_space(alg, alg.full_space()).unwrap()
    }

    /// Smallest bracket-closed subspace containing `generators`.
    pub fn closure(alg: &WittAlgebra, generators: &[WittElement]) -> Self {
        let zero = Subalgebra::zero(alg);
        zero.extend(generators.iter().map(|g| g.coeffs().to_vec()))
    }

    /// Closure of `self ∪ extra`, assuming `self` is closed.
    pub fn extend(&self, extra: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        self.extend_until(extra, usize::MAX)
    }

    /// As [`extend`](Self::extend), stopping early once the dimension reaches `limit`.
    pub fn extend_until(&self, extra: impl IntoIterator<Item = Vec<Scalar>>, limit: usize) -> Self {
        let alg = &self.alg;
        let mut space = self.space.clone();
        let mut basis: Vec<Vec<Scalar>> = self.space.basis().to_vec();
        let mut queue: Vec<Vec<Scalar>> = extra.into_iter().collect();
        while let Some(v) = queue.pop() {
            let v = space.reduce(&v);
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            space.insert(v.clone());
            if space.dim() >= limit {
                break;
            }
            for b in &basis {
                let w = alg.bracket_slices(&v, b);
                if w.iter().any(|&x| x != 0) {
                    queue.push(w);
                }
            }
            basis.push(v);
        }
        let closed = space.dim() < limit || space.is_full();
        let s = Subalgebra::from_space(alg, space).unwrap();
        if closed {
            let _ = s.closed.set(true);
        }
        s
    }

    pub fn algebra(&self) -> &WittAlgebra {
        &self.alg
    }

    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<WittElement> {
        self.space.basis().iter().map(|v| self.alg.from_coeffs(v.clone()).unwrap()).collect()
    }

    pub fn contains(&self, e: &WittElement) -> bool {
        self.space.contains(e.coeffs())
    }

    pub fn contains_subalgebra(&self, other: &Subalgebra) -> bool {
        self.space.contains_space(&other.space)
    }

    pub fn intersect(&self, other: &Subalgebra) -> Subalgebra {
        Subalgebra::from_space(&self.alg, self.space.intersect(&other.space)).unwrap()
    }

    /// `[a, b]` spans of basis pairs.
    pub fn bracket_space(&self, other: &Subalgebra) -> RowSpace {
        bracket_of_spaces(&self.alg, &self.space, &other.space)
    }

    pub fn is_closed(&self) -> bool {
        *self.closed.get_or_init(|| {
            let rows = self.space.basis();
            (0..rows.len()).into_par_iter().all(|i| {
                (i + 1..rows.len()).all(|j| self.space.contains(&self.alg.bracket_slices(&rows[i], &rows[j])))
            })
        })
    }

    fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::InvalidParameter("subspace is not bracket-closed".into()))
        }
    }

    /// `L, [L,L], ..` up to the first repeat (or zero), cut off after `dim + 1` terms.
    pub fn derived_series(&self) -> Result<Vec<RowSpace>> {
        self.require_closed()?;
        Ok(self
            .series
            .get_or_init(|| {
                let mut out = vec![self.space.clone()];
                let cap = self.dim() + 1;
                while out.len() <= cap {
                    let last = out.last().unwrap();
                    if last.is_zero() {
                        break;
                    }
                    let next = bracket_of_spaces(&self.alg, last, last);
                    if next == *last {
                        break;
                    }
                    out.push(next);
                }
                out
            })
            .clone())
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().is_zero())
    }

    /// Number of steps to reach zero, if solvable.
    pub fn derived_length(&self) -> Result<Option<usize>> {
        let s = self.derived_series()?;
        Ok(if s.last().unwrap().is_zero() { Some(s.len() - 1) } else { None })
    }

    /// `{v in ambient : [v, self] = 0}`.
    pub fn centralizer(&self, ambient: &Subalgebra) -> Subalgebra {
        self.stabilizing_subspace(ambient, None)
    }

    /// `{v in ambient : [v, self] ⊆ self}`.
    pub fn normalizer(&self, ambient: &Subalgebra) -> Subalgebra {
        self.stabilizing_subspace(ambient, Some(&self.space))
    }

    fn stabilizing_subspace(&self, ambient: &Subalgebra, modulo: Option<&RowSpace>) -> Subalgebra {
        let alg = &self.alg;
        let f = alg.field();
        let mut cand: Vec<Vec<Scalar>> = ambient.space.basis().to_vec();
        for s in self.space.basis() {
            if cand.is_empty() {
                break;
            }
            let images: Vec<Vec<Scalar>> = cand
                .par_iter()
                .map(|c| {
                    let w = alg.bracket_slices(c, s);
                    match modulo {
                        Some(m) => m.reduce(&w),
                        None => w,
                    }
                })
                .collect();
            if images.iter().all(|w| w.iter().all(|&x| x == 0)) {
                continue;
            }
            let ker = left_kernel(f, &images, alg.dim());
            cand = ker
                .iter()
                .map(|coef| {
                    let mut v = vec![0; alg.dim()];
                    for (c, b) in coef.iter().zip(&cand) {
                        f.axpy(&mut v, *c, b, 0);
                    }
                    v
                })
                .collect();
        }
        let space = RowSpace::from_vectors(f, alg.dim(), cand.iter());
        Subalgebra::from_space(alg, space).unwrap()
    }

    pub fn is_self_normalizing(&self) -> bool {
        self.normalizer(&Subalgebra::full(&self.alg)).dim() == self.dim()
    }

    /// Every basis vector has its `p`-th power in the subspace.
    pub fn is_restricted(&self) -> Result<bool> {
        self.require_closed()?;
        Ok(self.space.basis().par_iter().all(|v| self.space.contains(&self.alg.p_power_slice(v))))
    }

    /// Every `t_r`-weight component of every basis vector lies in the subspace.
    pub fn is_weight_graded(&self, r: usize) -> bool {
        self.basis().iter().all(|b| b.weight_decompose(r).values().all(|c| self.contains(c)))
    }

    /// Certifies that no solvable subalgebra properly contains `self`, by trying every
    /// `t_0`-weight line not in `self`.
    pub fn certify_maximal_solvable(&self) -> Result<MaximalityCertificate> {
        if !self.is_solvable()? {
            return Err(Error::InvalidParameter("subalgebra is not solvable".into()));
        }
        let alg = &self.alg;
        for i in 0..alg.n() {
            let mut a = vec![0; alg.n()];
            a[i] = 1;
            if !self.contains(&alg.term(&a, i, 1)?) {
                return Err(Error::InvalidParameter("subalgebra does not contain t_0".into()));
            }
        }
        let lines = weight_lines(alg, &self.space);
        let checked = lines.len();
        let full = alg.dim();
        let witness = lines.par_iter().find_first(|(_, v)| {
            let ext = self.extend_until([v.clone()], full);
            !ext.space.is_full() && ext.is_solvable().unwrap_or(false)
        });
        let field = format!("{:?}", alg.field());
        Ok(MaximalityCertificate {
            pass: witness.is_none(),
            field,
            lines_checked: checked,
            witness: witness.map(|(w, v)| WeightLine { weight: w.clone(), vector: alg.from_coeffs(v.clone()).unwrap() }),
        })
    }
}

/// Span of `[a, b]` for `a` in `x`, `b` in `y`.
pub fn bracket_of_spaces(alg: &WittAlgebra, x: &RowSpace, y: &RowSpace) -> RowSpace {
    let xs = x.basis();
    let ys = y.basis();
    let same = x == y;
    let chunks: Vec<RowSpace> = (0..xs.len())
        .into_par_iter()
        .map(|i| {
            let mut s = RowSpace::new(alg.field(), alg.dim());
            let start = if same { i + 1 } else { 0 };
            for b in &ys[start..] {
                s.insert(alg.bracket_slices(&xs[i], b));
            }
            s
        })
        .collect();
    let mut out = RowSpace::new(alg.field(), alg.dim());
    for c in chunks {
        for v in c.basis() {
            out.insert(v.clone());
        }
    }
    out
}

/// All `t_0`-weight lines (first nonzero coordinate 1) not contained in `s`, weights in
/// lexicographic order.
fn weight_lines(alg: &WittAlgebra, s: &RowSpace) -> Vec<(Weight, Vec<Scalar>)> {
    let mut by_weight: std::collections::BTreeMap<Weight, Vec<usize>> = std::collections::BTreeMap::new();
    for k in 0..alg.dim() {
        by_weight.entry(alg.coord_weight(k)).or_default().push(k);
    }
    let q = alg.field().order();
    let mut out = Vec::new();
    for (w, coords) in by_weight {
        let m = coords.len();
        // Vectors over the weight coordinates, first nonzero entry 1, in lex order.
        for lead in 0..m {
            let rest = m - lead - 1;
            let count = (q as u64).pow(rest as u32);
            for code in 0..count {
                let mut v = vec![0; alg.dim()];
                v[coords[lead]] = 1;
                let mut c = code;
                for t in (lead + 1..m).rev() {
                    v[coords[t]] = (c % q as u64) as Scalar;
                    c /= q as u64;
                }
                if !s.contains(&v) {
                    out.push((w.clone(), v));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightLine {
    pub weight: Weight,
    #[serde(skip)]
    pub vector: WittElement,
}

/// Outcome of [`Subalgebra::certify_maximal_solvable`].
#[derive(Clone, Debug, Serialize)]
pub struct MaximalityCertificate {
    pub pass: bool,
    /// Maximality is only claimed among subalgebras defined over this field.
    pub field: String,
    pub lines_checked: usize,
    pub witness: Option<WeightLine>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn w(p: u32, n: usize) -> WittAlgebra {
        WittAlgebra::new(&Field::prime(p).unwrap(), n).unwrap()
    }

    fn xd(alg: &WittAlgebra, k: u32) -> WittElement {
        alg.term(&[k], 0, 1).unwrap()
    }

    #[test]
    fn closure_examples() {
        let w1 = w(5, 1);
        // d, x d, x^2 d span a copy of sl_2: closed and not solvable.
        let s = Subalgebra::closure(&w1, &[xd(&w1, 0), xd(&w1, 1), xd(&w1, 2)]);
        assert_eq!(s.dim(), 3);
        assert!(!s.is_solvable().unwrap());
        let s = Subalgebra::closure(&w1, &[xd(&w1, 0), xd(&w1, 3)]);
        assert_eq!(s.dim(), 5);
        assert_eq!(Subalgebra::closure(&w1, &[xd(&w1, 1)]).dim(), 1);
        let w2 = w(5, 2);
        let a = w2.term(&[1, 0], 1, 1).unwrap();
        let b = w2.term(&[0, 1], 0, 1).unwrap();
        let s = Subalgebra::closure(&w2, &[a.clone(), b.clone()]);
        assert_eq!(s.dim(), 3);
        assert!(s.contains(&a.bracket(&b)));
        assert!(s.is_closed());
    }

    #[test]
    fn derived_series_examples() {
        let w1 = w(5, 1);
        let b1 = Subalgebra::closure(&w1, &[xd(&w1, 0), xd(&w1, 1)]);
        let dims: Vec<usize> = b1.derived_series().unwrap().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![2, 1, 0]);
        assert_eq!(b1.derived_length().unwrap(), Some(2));
        let b0 = Subalgebra::span(&w1, &(1..5).map(|k| xd(&w1, k)).collect::<Vec<_>>());
        let dims: Vec<usize> = b0.derived_series().unwrap().iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![4, 3, 1, 0]);
        let full = Subalgebra::full(&w1);
        assert!(!full.is_solvable().unwrap());
        let not_closed = Subalgebra::span(&w1, &[xd(&w1, 0), xd(&w1, 2)]);
        assert!(not_closed.derived_series().is_err());
    }

    #[test]
    fn centralizer_normalizer() {
        let w2 = w(5, 2);
        let t0 = Subalgebra::span(&w2, &[w2.term(&[1, 0], 0, 1).unwrap(), w2.term(&[0, 1], 1, 1).unwrap()]);
        let full = Subalgebra::full(&w2);
        assert_eq!(t0.centralizer(&full), t0);
        assert_eq!(Subalgebra::zero(&w2).centralizer(&full), full);
        let w1 = w(5, 1);
        let b1 = Subalgebra::span(&w1, &[xd(&w1, 0), xd(&w1, 1)]);
        assert_eq!(b1.normalizer(&Subalgebra::full(&w1)), b1);
    }

    #[test]
    fn restricted_examples() {
        let w1 = w(5, 1);
        let s = Subalgebra::closure(&w1, &[xd(&w1, 0).add(&xd(&w1, 1))]);
        assert_eq!(s.dim(), 1);
        let s = Subalgebra::closure(&w1, &[xd(&w1, 0), xd(&w1, 1)]);
        assert!(s.is_restricted().unwrap());
        let w2 = w(5, 2);
        let s = Subalgebra::closure(&w2, &[w2.term(&[1, 0], 1, 1).unwrap()]);
        assert!(s.is_restricted().unwrap());
    }

    #[test]
    fn certify_examples() {
        let w1 = w(5, 1);
        let b0 = Subalgebra::span(&w1, &(1..5).map(|k| xd(&w1, k)).collect::<Vec<_>>());
        assert!(b0.certify_maximal_solvable().unwrap().pass);
        let small = Subalgebra::span(&w1, &[xd(&w1, 1)]);
        let cert = small.certify_maximal_solvable().unwrap();
        assert!(!cert.pass);
        assert!(cert.witness.is_some());
        let b1 = Subalgebra::span(&w1, &[xd(&w1, 0), xd(&w1, 1)]);
        assert!(b1.certify_maximal_solvable().unwrap().pass);
        let no_torus = Subalgebra::span(&w1, &[xd(&w1, 0)]);
        assert!(no_torus.certify_maximal_solvable().is_err());
    }
}
