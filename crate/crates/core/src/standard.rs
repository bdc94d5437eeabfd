//! Standard tori, the rigid root system, and the standard Borel subalgebras `B_q`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::subalg::Subalgebra;
use crate::truncpoly::MultiIndex;
use crate::witt::{WittAlgebra, WittElement};

/// Either infinity or `a × (-e_j)`, naming the line `k x^a d_j` (`j` 0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RigidRoot {
    Infinity,
    Root { a: MultiIndex, j: usize },
}

impl RigidRoot {
    pub fn new(a: MultiIndex, j: usize) -> Self {
        RigidRoot::Root { a, j }
    }

    /// The ordered sum `(a + b - e_s) × (-e_t)` for `a × (-e_s)` and `b × (-e_t)`,
    /// or infinity when an entry leaves `0..p`.
    pub fn add(&self, other: &RigidRoot, p: u32) -> RigidRoot {
        match (self, other) {
            (RigidRoot::Root { a, j: s }, RigidRoot::Root { a: b, j: t }) => {
                let mut c: Vec<i64> = a.iter().zip(b).map(|(&x, &y)| x as i64 + y as i64).collect();
                c[*s] -= 1;
                if c.iter().all(|&x| x >= 0 && x < p as i64) {
                    RigidRoot::Root { a: c.into_iter().map(|x| x as u32).collect(), j: *t }
                } else {
                    RigidRoot::Infinity
                }
            }
            _ => RigidRoot::Infinity,
        }
    }

    /// Coordinate index of the root line in `W(n)`.
    pub fn coord(&self, alg: &WittAlgebra) -> Option<usize> {
        match self {
            RigidRoot::Infinity => None,
            RigidRoot::Root { a, j } => alg.ring().index(a).ok().map(|idx| alg.coord(*j, idx)),
        }
    }
}

impl fmt::Display for RigidRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidRoot::Infinity => write!(f, "inf"),
            RigidRoot::Root { a, j } => write!(f, "{a:?}x(-e{})", j + 1),
        }
    }
}

/// The torus `t_r` with basis `z_i d_i`.
#[derive(Clone, Debug)]
pub struct StandardTorus {
    pub r: usize,
    pub basis: Vec<WittElement>,
}

impl StandardTorus {
    pub fn subalgebra(&self) -> Subalgebra {
        Subalgebra::span(self.basis[0].algebra(), &self.basis)
    }

    /// `T_r = sum_i z_i d_i`.
    pub fn sum(&self) -> WittElement {
        let mut t = self.basis[0].clone();
        for b in &self.basis[1..] {
            t = t.add(b);
        }
        t
    }
}

fn check_index(alg: &WittAlgebra, r: usize) -> Result<()> {
    if r > alg.n() {
        Err(Error::InvalidParameter(format!("index {r} out of range 0..={}", alg.n())))
    } else {
        Ok(())
    }
}

/// `t_r = span{z_i d_i}` with `z_i = x_i` for `i <= n - r` and `z_j = 1 + x_j` after.
pub fn torus(alg: &WittAlgebra, r: usize) -> Result<StandardTorus> {
    check_index(alg, r)?;
    let ring = alg.ring();
    let n = alg.n();
    let basis = (0..n)
        .map(|i| {
            let z = if i + r >= n { ring.unit_var(i) } else { ring.var(i) };
            alg.element(&z, i)
        })
        .collect();
    Ok(StandardTorus { r, basis })
}

/// `Δ(q)_+` without infinity: the union of the nought-varied roots on the first `n - q`
/// variables, the full-varied roots on the last `q`, and the roots of `Q_q`.
pub fn positive_roots(alg: &WittAlgebra, q: usize) -> Result<BTreeSet<RigidRoot>> {
    check_index(alg, q)?;
    let n = alg.n();
    let m = n - q;
    let ring = alg.ring();
    let mut out = BTreeSet::new();
    for idx in 0..ring.size() {
        let e = ring.exponent(idx);
        let (u, w) = e.split_at(m);
        let su: u32 = u.iter().sum();
        let sw: u32 = w.iter().sum();
        for j in 0..n {
            let keep = if sw == 0 && j < m {
                // nought-varied: e_i × (-e_j) with i <= j, or |a| > 1
                su > 1 || (su == 1 && u[..=j].iter().sum::<u32>() == 1)
            } else if su == 0 && j >= m {
                // full-varied on the last q variables, local target j - m
                let jl = j - m;
                sw == 0
                    || (sw == 1 && w[..=jl].iter().sum::<u32>() == 1)
                    || (sw > 1 && w[..=jl].iter().sum::<u32>() == sw && w[jl] <= 1)
            } else if j < m {
                // Q_q, targets in the first block
                sw > 0 && (su > 1 || (su == 1 && u[..=j].iter().sum::<u32>() == 1))
            } else {
                // Q_q, targets in the second block
                su > 0
            };
            if keep {
                out.insert(RigidRoot::new(e.to_vec(), j));
            }
        }
    }
    Ok(out)
}

/// Membership in `Δ(q)_+`, infinity included.
pub fn is_positive(alg: &WittAlgebra, q: usize, root: &RigidRoot) -> Result<bool> {
    Ok(match root {
        RigidRoot::Infinity => true,
        r => positive_roots(alg, q)?.contains(r),
    })
}

/// The standard Borel subalgebra `B_q = B_0(x_1..x_{n-q}) + Q_q + B_q(x_{n-q+1}..x_n)`.
pub fn borel(alg: &WittAlgebra, q: usize) -> Result<Subalgebra> {
    check_index(alg, q)?;
    let n = alg.n();
    let m = n - q;
    let p = alg.p();
    let mut coords: Vec<usize> = Vec::new();
    let mut push = |a: &[u32], j: usize| {
        coords.push(alg.coord(j, alg.ring().index(a).unwrap()));
    };
    let block_exps = |vars: std::ops::Range<usize>| -> Vec<MultiIndex> {
        let ring = alg.ring();
        (0..ring.size())
            .map(|idx| ring.exponent(idx).to_vec())
            .filter(|a| a.iter().enumerate().all(|(k, &x)| x == 0 || vars.contains(&k)))
            .collect()
    };
    let deg = |a: &[u32]| a.iter().sum::<u32>();
    let unit = |i: usize| {
        let mut a = vec![0u32; n];
        a[i] = 1;
        a
    };

    // B_0 on x_1..x_m: the upper triangular x_i d_j (i <= j) plus W(m)_1.
    for j in 0..m {
        for i in 0..=j {
            push(&unit(i), j);
        }
        for a in block_exps(0..m) {
            if deg(&a) > 1 {
                push(&a, j);
            }
        }
    }

    // Full-varied block on x_{m+1}..x_n: d_j, upper triangular x_i d_j, and
    // x^a d_j with a supported on the block up to j, |a| > 1 and a_j in {0, 1}.
    for j in m..n {
        push(&vec![0; n], j);
        for i in m..=j {
            push(&unit(i), j);
        }
        for a in block_exps(m..j + 1) {
            if deg(&a) > 1 && a[j] <= 1 {
                push(&a, j);
            }
        }
    }

    // Q_q: u^a w^b d_i.
    let u_exps = block_exps(0..m);
    let w_exps = block_exps(m..n);
    for a in &u_exps {
        let su = deg(a);
        for b in &w_exps {
            let sw = deg(b);
            let ab: Vec<u32> = a.iter().zip(b).map(|(&x, &y)| x + y).collect();
            debug_assert!(ab.iter().all(|&x| x < p));
            for i in 0..m {
                let lower = (su == 1 && a[..=i].iter().sum::<u32>() == 1) || su > 1;
                if lower && sw > 0 {
                    push(&ab, i);
                }
            }
            for j in m..n {
                if su > 0 {
                    push(&ab, j);
                }
            }
        }
    }

    coords.sort_unstable();
    coords.dedup();
    let space = alg.span_of_coords(coords);
    Subalgebra::from_space(alg, space)
}

/// `sum_{α in Δ(q)_+} W(n)_α`.
pub fn root_space_sum(alg: &WittAlgebra, q: usize) -> Result<Subalgebra> {
    let roots = positive_roots(alg, q)?;
    let space: RowSpace = alg.span_of_coords(roots.iter().filter_map(|r| r.coord(alg)));
    Subalgebra::from_space(alg, space)
}

/// The closed formula `n p^n - ((n-r)(n-r-1)/2) p^r + 2(p^r - 1)/(p - 1) - r p^r`.
pub fn dim_paper_formula(n: usize, p: u32, r: usize) -> i64 {
    let (n, p, r) = (n as i64, p as i64, r as i64);
    let pn = p.pow(n as u32);
    let pr = p.pow(r as u32);
    n * pn - ((n - r) * (n - r - 1) / 2) * pr + 2 * (pr - 1) / (p - 1) - r * pr
}

/// `dim B_r`.
pub fn dim_computed(alg: &WittAlgebra, r: usize) -> Result<usize> {
    Ok(borel(alg, r)?.dim())
}

/// `|Δ(r)_+ \ {∞}|`, by enumerating roots.
pub fn dim_enumerated(alg: &WittAlgebra, r: usize) -> Result<usize> {
    Ok(positive_roots(alg, r)?.len())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DimensionRow {
    pub r: usize,
    pub computed: usize,
    pub enumerated: usize,
    pub formula: i64,
    /// Computed dimension differs from the closed formula.
    pub formula_discrepancy: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub n: usize,
    pub p: u32,
    pub rows: Vec<DimensionRow>,
    /// Computed dimensions match the root enumeration for every `r`, and the formula at `r = n`.
    pub pass: bool,
}

pub fn dimension_report(alg: &WittAlgebra) -> Result<DimensionReport> {
    let n = alg.n();
    let p = alg.p();
    let mut rows = Vec::new();
    for r in 0..=n {
        let computed = dim_computed(alg, r)?;
        let enumerated = dim_enumerated(alg, r)?;
        let formula = dim_paper_formula(n, p, r);
        rows.push(DimensionRow { r, computed, enumerated, formula, formula_discrepancy: computed as i64 != formula });
    }
    let pass = rows.iter().all(|row| row.computed == row.enumerated) && !rows[n].formula_discrepancy;
    Ok(DimensionReport { n, p, rows, pass })
}
