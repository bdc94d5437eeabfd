//! Conjugacy classification of Borel subalgebras: the invariant `d`, the
//! normalization driver and the exhaustive census of `W(1)`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::autgroup::{self, AlgebraAut};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::json::SubalgebraDoc;
use crate::linalg::RowSpace;
use crate::standard::{borel, torus};
use crate::subalg::Subalgebra;
use crate::truncpoly::TruncPoly;
use crate::witt::{WittAlgebra, WittElement};

/// How the driver reached `t_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// The input already contained `t_0`.
    Direct,
    /// Omega, Phi and Psi steps from the hinted standard torus.
    Staged,
    /// A type-0 torus located inside `B ∩ W_(0)` and moved onto `t_0`.
    Discovered,
}

#[derive(Clone, Debug)]
pub struct BorelClass {
    pub r: usize,
    /// `witness.induce_subalgebra(input) == borel(r)`.
    pub witness: AlgebraAut,
    pub route: Route,
    pub stages: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct NormalizeOptions {
    pub seed: u64,
    /// Torus discovery restarts before giving up.
    pub attempts: usize,
}

impl Default for NormalizeOptions {
    fn default() -> Self {
        NormalizeOptions { seed: 0x5eed, attempts: 8 }
    }
}

/// `dim (B ∩ W_[-1])` for `B ⊇ t_0`.
pub fn invariant_d(b: &Subalgebra) -> Result<usize> {
    let alg = b.algebra();
    let t0 = torus(alg, 0)?.subalgebra();
    if !b.contains_subalgebra(&t0) {
        return Err(Error::InvalidParameter("invariant_d needs t_0 inside the subalgebra".into()));
    }
    Ok(b.space().intersect(&alg.degree_space(-1)).dim())
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Coordinates spanning `s` when `s` is spanned by monomial derivations.
fn monomial_coords(s: &Subalgebra) -> Option<Vec<usize>> {
    s.space()
        .basis()
        .iter()
        .map(|row| {
            let mut nz = row.iter().enumerate().filter(|(_, &x)| x != 0);
            let (k, _) = nz.next()?;
            nz.next().is_none().then_some(k)
        })
        .collect()
}

/// For `B ⊇ t_0`, finds a permutation of the variables carrying `B` onto `borel(d)`.
fn match_standard(b: &Subalgebra) -> Result<Option<(usize, AlgebraAut)>> {
    let alg = b.algebra();
    let d = invariant_d(b)?;
    let target = borel(alg, d)?;
    if target.dim() != b.dim() {
        return Ok(None);
    }
    if *b == target {
        return Ok(Some((d, AlgebraAut::identity(alg.ring()))));
    }
    let (Some(src), Some(dst)) = (monomial_coords(b), monomial_coords(&target)) else { return Ok(None) };
    let ring = alg.ring();
    let n = alg.n();
    let mut in_dst = vec![false; alg.dim()];
    for k in dst {
        in_dst[k] = true;
    }
    let mut a = vec![0u32; n];
    for perm in all_permutations(n) {
        // x_i -> x_perm[i] sends x^a d_i to x^{a'} d_perm[i] with a'_perm[k] = a_k
        let ok = src.iter().all(|&k| {
            let (i, idx) = alg.decode(k);
            for (kk, &e) in ring.exponent(idx).iter().enumerate() {
                a[perm[kk]] = e;
            }
            in_dst[alg.coord(perm[i], ring.index(&a).unwrap())]
        });
        if ok {
            return Ok(Some((d, autgroup::permute(ring, &perm)?)));
        }
    }
    Ok(None)
}

fn torus_with_units(alg: &WittAlgebra, units: &[bool]) -> Subalgebra {
    let ring = alg.ring();
    let basis: Vec<WittElement> =
        (0..alg.n()).map(|i| alg.element(&if units[i] { ring.unit_var(i) } else { ring.var(i) }, i)).collect();
    Subalgebra::span(alg, &basis)
}

/// `prod_{j} (1 + x_j)^{a_j} d_q`.
fn y_form(alg: &WittAlgebra, a: &[u32], q: usize) -> WittElement {
    let ring = alg.ring();
    let mut g = ring.one();
    for (j, &e) in a.iter().enumerate() {
        if e > 0 {
            g = g.mul(&ring.unit_var(j).pow(e as u64));
        }
    }
    alg.element(&g, q)
}

/// Exponent vectors supported on the unit coordinates, in lexicographic order.
fn unit_exponents(alg: &WittAlgebra, units: &[bool]) -> Vec<Vec<u32>> {
    let ring = alg.ring();
    (0..ring.size())
        .map(|idx| ring.exponent(idx).to_vec())
        .filter(|a| a.iter().zip(units).all(|(&e, &u)| u || e == 0))
        .collect()
}

struct Staged {
    cur: Subalgebra,
    witness: AlgebraAut,
    units: Vec<bool>,
    stages: Vec<String>,
}

impl Staged {
    fn apply(&mut self, sigma: AlgebraAut, label: String) -> Result<()> {
        self.cur = sigma.induce_subalgebra(&self.cur);
        self.witness = sigma.compose(&self.witness);
        self.stages.push(label);
        if !self.cur.is_solvable()? {
            return Err(self.stuck("lost solvability"));
        }
        Ok(())
    }

    fn stuck(&self, why: &str) -> Error {
        let units: Vec<usize> = (0..self.units.len()).filter(|&i| self.units[i]).map(|i| i + 1).collect();
        Error::NormalizationFailed(format!("{why}; unit coordinates {units:?}; after [{}]", self.stages.join(", ")))
    }

    fn has_partial(&self, q: usize) -> bool {
        self.cur.contains(&self.cur.algebra().partial(q))
    }
}

/// Raises the hinted torus to `t_0` by Omega, Phi and Psi steps.
fn staged(b: &Subalgebra, r: usize) -> Result<Staged> {
    let alg = b.algebra().clone();
    let n = alg.n();
    let p = alg.p();
    let mut st = Staged {
        cur: b.clone(),
        witness: AlgebraAut::identity(alg.ring()),
        units: alg.torus_units(r),
        stages: Vec::new(),
    };
    while st.units.iter().any(|&u| u) {
        if !st.cur.contains_subalgebra(&torus_with_units(&alg, &st.units)) {
            return Err(st.stuck("tracked torus left the subalgebra"));
        }
        let block: Vec<usize> = (0..n).filter(|&j| st.units[j]).collect();
        let exps = unit_exponents(&alg, &st.units);
        // Omega cleanup on x-type targets.
        let x_type: Vec<usize> = (0..n).filter(|&q| !st.units[q]).collect();
        for q in x_type {
            if st.has_partial(q) {
                continue;
            }
            let found = exps.iter().find(|a| a.iter().any(|&e| e > 0) && st.cur.contains(&y_form(&alg, a, q)));
            if let Some(bv) = found.cloned() {
                st.apply(autgroup::omega(alg.ring(), q, &bv)?, format!("omega(q={}, b={bv:?})", q + 1))?;
                if !st.has_partial(q) {
                    return Err(st.stuck("omega did not produce the partial"));
                }
            }
        }
        // Phi/Psi raising on the first unit target.
        let q = block[0];
        if !st.has_partial(q) {
            let found = exps.iter().find(|a| a[q] % p != 1 && st.cur.contains(&y_form(&alg, a, q))).cloned();
            let Some(a) = found else { return Err(st.stuck("no nilpotent y-form to raise")) };
            let phi = autgroup::phi_l44(alg.ring(), q, &a, &block)?;
            st.apply(phi, format!("phi(q={}, a={a:?})", q + 1))?;
            st.apply(autgroup::psi_l44(alg.ring(), q, a[q])?, format!("psi(q={}, a_q={})", q + 1, a[q]))?;
            if !st.has_partial(q) {
                return Err(st.stuck("phi and psi did not produce the partial"));
            }
        }
        // With d_q present, x_q d_q = (1 + x_q) d_q - d_q lies in the algebra.
        st.units[q] = false;
    }
    Ok(st)
}

fn random_in<R: Rng + ?Sized>(s: &Subalgebra, rng: &mut R) -> WittElement {
    let alg = s.algebra();
    let f = alg.field();
    let q = f.order();
    let mut v = vec![0; alg.dim()];
    for row in s.space().basis() {
        let c = rng.gen_range(0..q);
        if c != 0 {
            f.axpy(&mut v, c, row, 0);
        }
    }
    alg.from_coeffs(v).unwrap()
}

/// Toral elements in the span of the p-powers of a semisimple `s`.
fn toral_part(s: &WittElement) -> Vec<WittElement> {
    let alg = s.algebra();
    let f = alg.field();
    let span = s.p_power_span();
    let basis = span.basis();
    let k = basis.len();
    let mut m = crate::linalg::Matrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let img = alg.p_power_slice(b);
        let coords = span.coordinates(&img).expect("p-power span is p-closed");
        for i in 0..k {
            let v = if i == j { f.sub(coords[i], 1) } else { coords[i] };
            m.set(i, j, v);
        }
    }
    m.kernel(f)
        .into_iter()
        .map(|c| {
            let mut v = vec![0; alg.dim()];
            for (ci, b) in c.iter().zip(basis) {
                f.axpy(&mut v, *ci, b, 0);
            }
            alg.from_coeffs(v).unwrap()
        })
        .collect()
}

/// An `F_p`-basis of toral elements of an `n`-dimensional torus inside `B ∩ W_(0)`.
/// Such a torus is conjugate to `t_0`, because `W_(0)` is stable under every automorphism.
fn discover_type0_torus<R: Rng + ?Sized>(b: &Subalgebra, rng: &mut R) -> Result<Vec<WittElement>> {
    let alg = b.algebra();
    let n = alg.n();
    if !alg.field().is_prime_field() {
        return Err(Error::NormalizationFailed("torus discovery works over the prime field only".into()));
    }
    let w0 = Subalgebra::from_space(alg, b.space().intersect(&alg.filtration_space(0)))?;
    let mut toral: Vec<WittElement> = Vec::new();
    let mut span = RowSpace::new(alg.field(), alg.dim());
    let mut tries = 0;
    while toral.len() < n {
        tries += 1;
        if tries > 32 * n {
            return Err(Error::NormalizationFailed(format!(
                "found only {} independent toral elements in B ∩ W_(0)",
                toral.len()
            )));
        }
        let c = if toral.is_empty() { w0.clone() } else { Subalgebra::span(alg, &toral).centralizer(&w0) };
        let x = random_in(&c, rng);
        if x.is_zero() {
            continue;
        }
        let (s, _) = x.jordan_decompose()?;
        if s.is_zero() {
            continue;
        }
        for t in toral_part(&s) {
            if span.insert(t.coeffs().to_vec()) {
                toral.push(t);
            }
        }
    }
    Ok(toral)
}

/// Given a toral basis of a torus inside `W_(0)`, an automorphism `tau` with
/// `tau(T) = t_0`: the images `x_i -> u_i` of its inverse are common eigenvectors
/// of `T` in the maximal ideal with independent linear parts.
fn conjugate_to_t0(alg: &WittAlgebra, toral: &[WittElement]) -> Result<AlgebraAut> {
    let ring = alg.ring();
    let n = alg.n();
    let p = alg.p();
    let f = alg.field();
    let project = |t: &WittElement, v: &TruncPoly, lam: Scalar| -> TruncPoly {
        // 1 - (t - lam)^{p-1} projects onto the lam-eigenspace of a toral t
        let mut w = v.clone();
        for _ in 0..p - 1 {
            w = t.apply(&w).sub(&w.scale(lam));
        }
        v.sub(&w)
    };
    let mut chosen = Vec::new();
    let mut lin = RowSpace::new(f, n);
    for i in 0..n {
        let mut parts = vec![ring.var(i)];
        for t in toral {
            parts = parts
                .iter()
                .flat_map(|v| (0..p).map(move |lam| (v, lam)))
                .map(|(v, lam)| project(t, v, lam))
                .filter(|w| !w.is_zero())
                .collect();
        }
        for u in parts {
            let l: Vec<Scalar> = (0..n).map(|k| u.coeffs()[ring.stride(k)]).collect();
            if lin.insert(l) {
                chosen.push(u);
            }
        }
    }
    if chosen.len() < n {
        return Err(Error::NormalizationFailed("torus eigenvectors do not span the cotangent space".into()));
    }
    Ok(AlgebraAut::new(chosen)?.inverse())
}

fn finish(b: &Subalgebra, witness: AlgebraAut, route: Route, mut stages: Vec<String>) -> Result<Option<BorelClass>> {
    let cur = witness.induce_subalgebra(b);
    let Some((r, perm)) = match_standard(&cur)? else { return Ok(None) };
    let witness = if perm.is_identity() {
        witness
    } else {
        let label = perm.images().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
        stages.push(format!("permute({label})"));
        perm.compose(&witness)
    };
    if witness.induce_subalgebra(b) != borel(b.algebra(), r)? {
        return Err(Error::NormalizationFailed("witness does not reproduce the standard Borel".into()));
    }
    Ok(Some(BorelClass { r, witness, route, stages }))
}

pub fn normalize_borel(b: &Subalgebra, r_hint: Option<usize>) -> Result<BorelClass> {
    normalize_borel_with(b, r_hint, &NormalizeOptions::default())
}

/// Conjugates a Borel subalgebra onto its standard model `borel(r)`.
///
/// With `r_hint = Some(r)` the subalgebra must contain `t_r`; otherwise a torus of
/// type 0 is located by random search.
pub fn normalize_borel_with(b: &Subalgebra, r_hint: Option<usize>, opts: &NormalizeOptions) -> Result<BorelClass> {
    let alg = b.algebra();
    if !b.is_closed() {
        return Err(Error::InvalidParameter("input is not closed under the bracket".into()));
    }
    if !b.is_solvable()? {
        return Err(Error::InvalidParameter("input is not solvable".into()));
    }
    let mut notes = Vec::new();
    let t0 = torus(alg, 0)?.subalgebra();
    if let Some(r) = r_hint {
        if !b.contains_subalgebra(&torus(alg, r)?.subalgebra()) {
            return Err(Error::InvalidParameter(format!("input does not contain t_{r}")));
        }
        if r > 0 {
            match staged(b, r) {
                Ok(st) => {
                    if let Some(c) = finish(b, st.witness, Route::Staged, st.stages)? {
                        return Ok(c);
                    }
                    notes.push("staged route reached t_0 but not a monomial model".to_string());
                }
                Err(e) => notes.push(e.message().to_string()),
            }
        }
    }
    if b.contains_subalgebra(&t0) {
        if let Some(c) = finish(b, AlgebraAut::identity(alg.ring()), Route::Direct, Vec::new())? {
            return Ok(c);
        }
        notes.push("contains t_0 but is not a permuted standard Borel".to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for attempt in 0..opts.attempts {
        let toral = match discover_type0_torus(b, &mut rng) {
            Ok(t) => t,
            Err(e) => {
                notes.push(format!("attempt {attempt}: {}", e.message()));
                continue;
            }
        };
        let tau = conjugate_to_t0(alg, &toral)?;
        let label = tau.images().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ");
        if let Some(c) = finish(b, tau, Route::Discovered, vec![format!("torus to t_0 ({label})")])? {
            return Ok(c);
        }
        notes.push(format!("attempt {attempt}: conjugate containing t_0 is not a permuted standard Borel"));
    }
    Err(Error::NormalizationFailed(notes.join("; ")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusMode {
    /// Every subspace of `W(1)`.
    Exhaustive,
    /// Only subspaces spanned by monomials.
    Graded,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub dim: usize,
    pub restricted: bool,
    /// First toral element found, scanning lines in lexicographic order.
    pub toral: Option<crate::json::ElementDoc>,
    /// `None` when the driver could not match the entry to a standard Borel.
    pub class: Option<usize>,
    /// For an entry without toral elements: least `k` such that over `GF(p^k)` some
    /// element has an ad-eigenvector with nonzero eigenvalue, so the entry stops being
    /// maximal solvable after extending scalars.
    pub splitting_degree: Option<u32>,
    pub subalgebra: SubalgebraDoc,
    #[serde(skip)]
    pub space: Subalgebra,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusClass {
    pub r: usize,
    pub count: usize,
    pub dim: usize,
    /// Index into `entries` of the standard representative `borel(r)`.
    pub representative: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub p: u32,
    pub mode: CensusMode,
    pub subspaces_scanned: u64,
    pub closed_solvable: usize,
    pub entries: Vec<CensusEntry>,
    pub classes: Vec<CensusClass>,
    /// Entries neither matched to a standard Borel nor split by an extension field.
    pub unresolved: usize,
    pub without_toral: usize,
    /// Entries without toral elements that are non-maximal over an extension field.
    pub non_split: usize,
    pub pass: bool,
}

/// Number of subspaces of `GF(q)^w`, saturating.
pub fn subspace_count(q: u64, w: usize) -> u64 {
    // Gaussian binomials via [w, k] = [w-1, k-1] + q^k [w-1, k]
    let mut row = vec![1u64];
    for m in 1..=w {
        let mut next = vec![1u64; m + 1];
        for k in 1..m {
            let qk = q.saturating_pow(k as u32);
            next[k] = row[k - 1].saturating_add(qk.saturating_mul(row[k]));
        }
        row = next;
    }
    row.iter().fold(0u64, |a, &b| a.saturating_add(b))
}

fn combinations(w: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, w: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..w {
            cur.push(i);
            rec(i + 1, w, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, w, k, &mut Vec::new(), &mut out);
    out
}

fn is_closed_solvable(alg: &WittAlgebra, space: RowSpace) -> Option<Subalgebra> {
    let s = Subalgebra::from_space(alg, space).ok()?;
    (s.is_closed() && s.is_solvable().ok()?).then_some(s)
}

/// All bracket-closed solvable subspaces, in reduced echelon enumeration.
fn sweep(alg: &WittAlgebra, mode: CensusMode) -> (u64, Vec<Subalgebra>) {
    let f = alg.field().clone();
    let w = alg.dim();
    let q = f.order();
    match mode {
        CensusMode::Graded => {
            let found: Vec<Subalgebra> = (0u64..1 << w)
                .into_par_iter()
                .filter_map(|mask| is_closed_solvable(alg, alg.span_of_coords((0..w).filter(|&k| mask >> k & 1 == 1))))
                .collect();
            (1 << w, found)
        }
        CensusMode::Exhaustive => {
            let pivot_sets: Vec<Vec<usize>> = (0..=w).flat_map(|k| combinations(w, k)).collect();
            let mut scanned = 0u64;
            let mut found = Vec::new();
            for piv in pivot_sets {
                // free entries: row i, column c > piv[i] with c not a pivot
                let free: Vec<(usize, usize)> = piv
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &c0)| (c0 + 1..w).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
                    .collect();
                let total = (q as u64).pow(free.len() as u32);
                scanned += total;
                let part: Vec<Subalgebra> = (0..total)
                    .into_par_iter()
                    .filter_map(|mut code| {
                        let mut rows: Vec<Vec<Scalar>> = piv
                            .iter()
                            .map(|&c| {
                                let mut v = vec![0; w];
                                v[c] = 1;
                                v
                            })
                            .collect();
                        for &(i, c) in &free {
                            rows[i][c] = (code % q as u64) as Scalar;
                            code /= q as u64;
                        }
                        is_closed_solvable(alg, RowSpace::from_vectors(&f, w, rows.iter()))
                    })
                    .collect();
                found.extend(part);
            }
            (scanned, found)
        }
    }
}

fn first_toral(s: &Subalgebra) -> Option<WittElement> {
    let alg = s.algebra();
    let f = alg.field();
    let q = f.order() as u64;
    let basis = s.space().basis();
    let k = basis.len() as u32;
    // lines by first nonzero coordinate normalized to 1
    (1..q.pow(k)).find_map(|code| {
        let mut c = code;
        let coeffs: Vec<Scalar> = (0..k).rev().map(|_| {
            let d = (c % q) as Scalar;
            c /= q;
            d
        }).collect::<Vec<_>>().into_iter().rev().collect();
        if coeffs.iter().find(|&&x| x != 0) != Some(&1) {
            return None;
        }
        let mut v = vec![0; alg.dim()];
        for (ci, b) in coeffs.iter().zip(basis) {
            if *ci != 0 {
                f.axpy(&mut v, *ci, b, 0);
            }
        }
        let e = alg.from_coeffs(v).unwrap();
        e.is_toral().then_some(e)
    })
}

/// Least `k <= max_k` such that some basis element of `s` has an ad-eigenvector
/// outside `s` with nonzero eigenvalue in `GF(p^k)`.
pub fn splitting_degree(s: &Subalgebra, max_k: u32) -> Result<Option<u32>> {
    let alg = s.algebra();
    if !alg.field().is_prime_field() {
        return Err(Error::InvalidParameter("splitting degree is measured over the prime field".into()));
    }
    for k in 2..=max_k {
        let ext = crate::field::Field::new(alg.p(), k)?;
        let big = WittAlgebra::new(&ext, alg.n())?;
        // GF(p) sits in GF(p^k) as the digits 0..p
        let big_s = RowSpace::from_vectors(&ext, big.dim(), s.space().basis().iter());
        for row in s.space().basis() {
            let ad = big.from_coeffs(row.clone())?.ad_matrix();
            for lam in 1..ext.order() {
                let mut m = ad.clone();
                for i in 0..big.dim() {
                    m.set(i, i, ext.sub(m.get(i, i), lam));
                }
                if m.kernel(&ext).iter().any(|v| !big_s.contains(v)) {
                    return Ok(Some(k));
                }
            }
        }
    }
    Ok(None)
}

/// Maximal solvable subalgebras of `W(1)` over `GF(p)` and their conjugacy classes.
pub fn census_w1(p: u32, mode: CensusMode, budget: u64, opts: &NormalizeOptions) -> Result<CensusReport> {
    let field = crate::field::Field::prime(p)?;
    let alg = WittAlgebra::new(&field, 1)?;
    let needed = match mode {
        CensusMode::Exhaustive => subspace_count(p as u64, alg.dim()),
        CensusMode::Graded => 1u64 << alg.dim(),
    };
    if needed > budget {
        return Err(Error::BudgetExhausted(format!("{needed} subspaces exceed the budget of {budget}")));
    }
    let (scanned, mut solvable) = sweep(&alg, mode);
    solvable.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.space().basis().cmp(b.space().basis())));
    // visiting by decreasing dimension, a subalgebra is maximal iff no earlier maximal contains it
    let mut maximal: Vec<Subalgebra> = Vec::new();
    for s in &solvable {
        if !maximal.iter().any(|m| m.dim() > s.dim() && m.contains_subalgebra(s)) {
            maximal.push(s.clone());
        }
    }
    let entries: Vec<CensusEntry> = maximal
        .par_iter()
        .map(|s| {
            let restricted = s.is_restricted().unwrap_or(false);
            let toral = first_toral(s);
            let class = normalize_borel_with(s, None, opts).ok().map(|c| c.r);
            let splitting_degree = if toral.is_none() { splitting_degree(s, 4).ok().flatten() } else { None };
            CensusEntry {
                dim: s.dim(),
                restricted,
                toral: toral.as_ref().map(crate::json::ElementDoc::from_element),
                class,
                splitting_degree,
                subalgebra: SubalgebraDoc::from_subalgebra(s),
                space: s.clone(),
            }
        })
        .collect();
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        if let Some(r) = e.class {
            by_class.entry(r).or_default().push(i);
        }
    }
    let classes: Vec<CensusClass> = by_class
        .iter()
        .map(|(&r, idxs)| {
            let std = borel(&alg, r).unwrap();
            CensusClass {
                r,
                count: idxs.len(),
                dim: std.dim(),
                representative: idxs.iter().copied().find(|&i| entries[i].space == std),
            }
        })
        .collect();
    let unresolved = entries.iter().filter(|e| e.class.is_none() && e.splitting_degree.is_none()).count();
    let without_toral = entries.iter().filter(|e| e.toral.is_none()).count();
    let non_split = entries.iter().filter(|e| e.toral.is_none() && e.splitting_degree.is_some()).count();
    let pass = classes.len() == 2
        && classes.iter().all(|c| c.representative.is_some())
        && unresolved == 0
        && entries.iter().all(|e| e.toral.is_some() == e.class.is_some())
        && entries.iter().all(|e| e.restricted);
    Ok(CensusReport {
        p,
        mode,
        subspaces_scanned: scanned,
        closed_solvable: solvable.len(),
        entries,
        classes,
        unresolved,
        without_toral,
        non_split,
        pass,
    })
}
