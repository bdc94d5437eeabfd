mod common;

use witt_borel::autgroup::{self, AlgebraAut};
use witt_borel::classify::{self, Route};
use witt_borel::standard::{self, borel, torus};
use witt_borel::{Field, Matrix, PolyRing, RigidRoot, RowSpace, Subalgebra, TruncPoly, WittAlgebra, WittElement};

fn f5() -> Field {
    Field::prime(5).unwrap()
}

fn ring(n: usize) -> PolyRing {
    PolyRing::new(&f5(), n).unwrap()
}

fn w(n: usize) -> WittAlgebra {
    WittAlgebra::new(&f5(), n).unwrap()
}

fn poly(r: &PolyRing, terms: &[(&[u32], u32)]) -> TruncPoly {
    r.from_terms(terms.iter().map(|&(a, c)| (a.to_vec(), c))).unwrap()
}

fn el(w: &WittAlgebra, terms: &[(&[u32], usize, u32)]) -> WittElement {
    terms.iter().fold(w.zero(), |acc, &(a, j, c)| acc.add(&w.term(a, j, c).unwrap()))
}

fn span(w: &WittAlgebra, v: &[WittElement]) -> Subalgebra {
    Subalgebra::span(w, v)
}

#[test]
fn rowspace_echelon() {
    let f = f5();
    let full = RowSpace::from_vectors(&f, 2, [vec![1, 0], vec![0, 1], vec![1, 1]].iter());
    assert_eq!(full.basis(), &[vec![1, 0], vec![0, 1]]);
    assert_eq!(RowSpace::from_vectors(&f, 2, std::iter::empty()).dim(), 0);
    let line = RowSpace::from_vectors(&f, 2, [vec![2, 4], vec![1, 2]].iter());
    assert_eq!(line.basis(), &[vec![1, 2]]);
    assert!(line.contains(&[3, 6 % 5]));
    assert!(!line.contains(&[1, 0]));
    assert!(line.contains(&[0, 0]));
    let (s, t) = (RowSpace::from_vectors(&f, 2, [vec![1, 0]].iter()), RowSpace::from_vectors(&f, 2, [vec![0, 1]].iter()));
    assert_eq!((s.sum(&t).dim(), s.intersect(&t).dim()), (2, 0));
    assert_eq!(s.sum(&s), s);
    assert_eq!(s.intersect(&s), s);
}

#[test]
fn modular_law_against_naive_rank() {
    use rand::{Rng, SeedableRng};
    let f = f5();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(65);
    for _ in 0..200 {
        let mut draw = |k: usize| -> Vec<Vec<u32>> { (0..k).map(|_| (0..10).map(|_| rng.gen_range(0..5)).collect()).collect() };
        let (a, b) = (draw(4), draw(5));
        let (s, t) = (RowSpace::from_vectors(&f, 10, a.iter()), RowSpace::from_vectors(&f, 10, b.iter()));
        let to64 = |v: &[Vec<u32>]| v.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect::<Vec<Vec<u64>>>();
        let both: Vec<Vec<u32>> = a.iter().chain(&b).cloned().collect();
        let (ra, rb, rab) = (common::rank(to64(&a), 5), common::rank(to64(&b), 5), common::rank(to64(&both), 5));
        assert_eq!((s.dim(), t.dim(), s.sum(&t).dim()), (ra, rb, rab));
        assert_eq!(s.intersect(&t).dim(), ra + rb - rab);
    }
}

#[test]
fn truncpoly_arithmetic() {
    let r = ring(1);
    let x = r.var(0);
    assert!(x.mul(&x.pow(4)).is_zero());
    let y = r.one().add(&x);
    assert_eq!(y.mul(&y), poly(&r, &[(&[0], 1), (&[1], 2), (&[2], 1)]));
    let mut rep = r.one();
    for _ in 0..5 {
        rep = rep.mul(&y);
    }
    assert_eq!(rep, r.one());
    assert_eq!(y.pow(5), r.one());
    assert_eq!(poly(&r, &[(&[3], 1)]).partial(0), poly(&r, &[(&[2], 3)]));
    let inv = poly(&r, &[(&[0], 1), (&[1], 4), (&[2], 1), (&[3], 4), (&[4], 1)]);
    assert_eq!(y.invert().unwrap(), inv);
    assert_eq!(y.mul(&inv), r.one());
    assert!(x.invert().is_err());
    assert_eq!(r.constant(2).invert().unwrap(), r.constant(3));
    assert_eq!(x.substitute(&[y.pow(2).sub(&r.one())]).unwrap(), poly(&r, &[(&[1], 2), (&[2], 1)]));
    assert_eq!(r.one().substitute(&[y.clone()]).unwrap(), r.one());

    let r2 = ring(2);
    assert!(r2.var(0).partial(1).is_zero());
    assert_eq!(r2.var(0).mul(&r2.var(1)).partial(0), r2.var(1));
    let sq = r2.var(0).pow(2).substitute(&[r2.var(0).add(&r2.var(1)), r2.var(1)]).unwrap();
    assert_eq!(sq, poly(&r2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]));
}

#[test]
fn derivation_action_and_brackets() {
    let w1 = w(1);
    let r1 = w1.ring();
    let x = r1.var(0);
    assert_eq!(el(&w1, &[(&[1], 0, 1)]).apply(&x.pow(2)), x.pow(2).scale(2));
    assert_eq!(w1.element(&r1.one().add(&x), 0).apply(&x), r1.one().add(&x));
    let w2 = w(2);
    let r2 = w2.ring();
    assert_eq!(el(&w2, &[(&[0, 1], 0, 1)]).apply(&r2.var(0).mul(&r2.var(1))), r2.var(1).pow(2));

    assert_eq!(w1.partial(0).bracket(&el(&w1, &[(&[1], 0, 1)])), w1.partial(0));
    let (a, b) = (el(&w2, &[(&[1, 0], 1, 1)]), el(&w2, &[(&[0, 1], 0, 1)]));
    let expect = el(&w2, &[(&[1, 0], 0, 1), (&[0, 1], 1, 4)]);
    assert_eq!(a.bracket(&b), expect);
    let naive = common::NDer::from_lib(&a).bracket(&common::NDer::from_lib(&b));
    assert_eq!(naive.to_lib(&w2), expect);
    let (c, d) = (el(&w1, &[(&[1], 0, 1)]), el(&w1, &[(&[3], 0, 1)]));
    assert_eq!(c.bracket(&d), el(&w1, &[(&[3], 0, 2)]));
    assert_eq!(common::NDer::from_lib(&c).bracket(&common::NDer::from_lib(&d)).to_lib(&w1), c.bracket(&d));
}

#[test]
fn p_map_examples() {
    let w1 = w(1);
    let h = el(&w1, &[(&[1], 0, 1)]);
    assert_eq!(h.p_power(), h);
    assert!(w1.partial(0).p_power().is_zero());
    let t = w1.element(&w1.ring().unit_var(0), 0);
    assert_eq!(t.p_power(), t);
    assert!(h.is_toral() && h.is_semisimple());
    assert!(w1.partial(0).is_nilpotent());
    let x2 = el(&w1, &[(&[2], 0, 1)]);
    assert!(x2.is_nilpotent());
    assert!(x2.p_power_iter(3).is_zero());
}

#[test]
fn gradings_and_weights() {
    let w1 = w(1);
    let d = el(&w1, &[(&[0], 0, 1), (&[2], 0, 1)]);
    let g = d.graded_components(0);
    assert_eq!(g.len(), 2);
    assert_eq!(g[&-1], w1.partial(0));
    assert_eq!(g[&1], el(&w1, &[(&[2], 0, 1)]));
    let g1 = w1.partial(0).graded_components(1);
    assert_eq!(g1.keys().copied().collect::<Vec<_>>(), vec![-1]);
    let t1 = torus(&w1, 1).unwrap().basis[0].clone();
    assert_eq!(t1.bracket(&w1.partial(0)), w1.partial(0).neg());
    assert_eq!(el(&w1, &[(&[3], 0, 2)]).graded_components(0).len(), 1);

    let w2 = w(2);
    let weight = |v: WittElement| v.weight_decompose(0).into_keys().collect::<Vec<_>>();
    assert_eq!(weight(el(&w2, &[(&[1, 0], 1, 1)])), vec![vec![1, 4]]);
    assert_eq!(weight(el(&w2, &[(&[1, 0], 0, 1)])), vec![vec![0, 0]]);
    assert_eq!(weight(el(&w2, &[(&[2, 1], 0, 1)])), vec![vec![1, 1]]);
}

#[test]
fn fitting_null_examples() {
    let w1 = w(1);
    let h = el(&w1, &[(&[1], 0, 1)]);
    assert_eq!(h.fitting_null(), span(&w1, &[h.clone()]).space().clone());
    assert!(w1.zero().fitting_null().is_full());
    let t = torus(&w1, 1).unwrap().basis[0].clone();
    assert_eq!(t.fitting_null(), span(&w1, &[t.clone()]).space().clone());
}

#[test]
fn closures() {
    let w1 = w(1);
    let gens = [w1.partial(0), el(&w1, &[(&[1], 0, 1)]), el(&w1, &[(&[2], 0, 1)])];
    // these three already span a copy of sl_2
    let c = Subalgebra::closure(&w1, &gens);
    assert_eq!(c.dim(), 3);
    assert!(!c.is_solvable().unwrap());
    let h = el(&w1, &[(&[1], 0, 1)]);
    assert_eq!(Subalgebra::closure(&w1, &[h.clone()]), span(&w1, &[h]));
    let w2 = w(2);
    let s = Subalgebra::closure(&w2, &[el(&w2, &[(&[1, 0], 1, 1)]), el(&w2, &[(&[0, 1], 0, 1)])]);
    assert_eq!(s.dim(), 3);
    assert!(s.contains(&el(&w2, &[(&[1, 0], 0, 1), (&[0, 1], 1, 4)])));
}

#[test]
fn derived_series_examples() {
    let w1 = w(1);
    let dims = |s: &Subalgebra| s.derived_series().unwrap().iter().map(|t| t.dim()).collect::<Vec<_>>();
    assert_eq!(dims(&borel(&w1, 1).unwrap()), vec![2, 1, 0]);
    assert_eq!(borel(&w1, 1).unwrap().derived_length().unwrap(), Some(2));
    assert_eq!(dims(&borel(&w1, 0).unwrap()), vec![4, 3, 1, 0]);
    let full = Subalgebra::full(&w1);
    assert_eq!(dims(&full), vec![5]);
    assert!(!full.is_solvable().unwrap());
}

#[test]
fn restrictedness_and_maximality() {
    let w1 = w(1);
    let w2 = w(2);
    for q in 0..=2 {
        assert!(borel(&w2, q).unwrap().is_restricted().unwrap());
    }
    assert!(span(&w2, &[el(&w2, &[(&[1, 0], 1, 1)])]).is_restricted().unwrap());
    assert!(borel(&w1, 0).unwrap().certify_maximal_solvable().unwrap().pass);
    assert!(borel(&w2, 1).unwrap().certify_maximal_solvable().unwrap().pass);
    let small = span(&w1, &[el(&w1, &[(&[1], 0, 1)])]);
    let cert = small.certify_maximal_solvable().unwrap();
    assert!(!cert.pass);
    let line = cert.witness.expect("a solvable extension");
    let ext = Subalgebra::closure(&w1, &[el(&w1, &[(&[1], 0, 1)]), line.vector.clone()]);
    assert!(ext.is_solvable().unwrap() && ext.dim() > 1);
}

#[test]
fn closure_of_a_torus_translate_is_a_line() {
    // d + x d = (1 + x) d is toral, so the closure is one-dimensional
    let w1 = w(1);
    let v = w1.partial(0).add(&el(&w1, &[(&[1], 0, 1)]));
    let c = Subalgebra::closure(&w1, &[v.clone()]);
    assert_eq!(c, span(&w1, &[w1.element(&w1.ring().unit_var(0), 0)]));
    assert!(c.is_restricted().unwrap());
}

#[test]
fn standard_tori() {
    let w1 = w(1);
    assert_eq!(torus(&w1, 0).unwrap().subalgebra(), span(&w1, &[el(&w1, &[(&[1], 0, 1)])]));
    assert_eq!(torus(&w1, 1).unwrap().subalgebra(), span(&w1, &[w1.element(&w1.ring().unit_var(0), 0)]));
    let w2 = w(2);
    let t = span(&w2, &[el(&w2, &[(&[1, 0], 0, 1)]), w2.element(&w2.ring().unit_var(1), 1)]);
    assert_eq!(torus(&w2, 1).unwrap().subalgebra(), t);
}

#[test]
fn positive_roots_of_w1() {
    let w1 = w(1);
    let r0 = standard::positive_roots(&w1, 0).unwrap();
    assert_eq!(r0, (1..5).map(|a| RigidRoot::new(vec![a], 0)).collect());
    let r1 = standard::positive_roots(&w1, 1).unwrap();
    assert_eq!(r1, [0, 1].into_iter().map(|a| RigidRoot::new(vec![a], 0)).collect());
    let e = RigidRoot::new(vec![1], 0);
    assert_eq!(e.add(&e, 5), e);
}

#[test]
fn standard_borels_and_dimensions() {
    let w1 = w(1);
    assert_eq!(borel(&w1, 1).unwrap(), span(&w1, &[w1.partial(0), el(&w1, &[(&[1], 0, 1)])]));
    let b0: Vec<WittElement> = (1..5).map(|a| el(&w1, &[(&[a], 0, 1)])).collect();
    assert_eq!(borel(&w1, 0).unwrap(), span(&w1, &b0));
    let w2 = w(2);
    assert_eq!(borel(&w2, 2).unwrap().dim(), 12);
    assert_eq!((standard::dim_paper_formula(1, 5, 1), standard::dim_computed(&w1, 1).unwrap()), (2, 2));
    assert_eq!((standard::dim_paper_formula(1, 5, 0), standard::dim_computed(&w1, 0).unwrap()), (5, 4));
    assert_eq!((standard::dim_paper_formula(2, 5, 2), standard::dim_computed(&w2, 2).unwrap()), (12, 12));
}

#[test]
fn automorphism_validation_and_inverses() {
    let r1 = ring(1);
    let x = r1.var(0);
    assert!(AlgebraAut::new(vec![x.add(&x.pow(2))]).is_ok());
    assert!(AlgebraAut::new(vec![x.pow(2)]).is_err());
    let r2 = ring(2);
    assert!(autgroup::theta(&r2, 1).is_ok());
    assert_eq!(autgroup::theta(&r2, 1).unwrap().images()[1], r2.unit_var(1).pow(4).sub(&r2.one()));

    let phi = autgroup::phi_w1(&r1, 3).unwrap();
    assert_eq!(phi.images()[0], poly(&r1, &[(&[1], 2), (&[2], 1)]));
    assert_eq!(phi.inverse().images()[0], r1.unit_var(0).pow(3).sub(&r1.one()));
    assert!(AlgebraAut::identity(&r1).inverse().is_identity());
    let s = AlgebraAut::new(vec![r2.var(0).add(&r2.var(1).pow(2)), r2.var(1)]).unwrap();
    assert_eq!(s.inverse().images(), &[r2.var(0).sub(&r2.var(1).pow(2)), r2.var(1)]);
    assert!(s.compose(&s.inverse()).is_identity());
}

#[test]
fn named_automorphisms_act_as_stated() {
    let w2 = w(2);
    let y = w2.element(&w2.ring().unit_var(1).pow(2), 0);
    assert_eq!(autgroup::omega(w2.ring(), 0, &[0, 2]).unwrap().induce(&y), w2.partial(0));

    let mut m = Matrix::identity(2);
    m.set(0, 1, 3);
    let lin = autgroup::linear(w2.ring(), &m).unwrap();
    assert!(lin.in_g0());
    assert!(lin.stabilizes(&borel(&w2, 0).unwrap()));

    let r2 = w2.ring();
    let good = AlgebraAut::new(vec![r2.var(0), r2.var(1).add(&r2.var(0).pow(2))]).unwrap();
    assert!(good.in_u() && good.in_un());
    assert!(good.stabilizes(&borel(&w2, 2).unwrap()));
    let bad = AlgebraAut::new(vec![r2.var(0).add(&r2.var(1).pow(2)), r2.var(1)]).unwrap();
    assert!(bad.in_u() && !bad.in_un());
    assert!(!bad.stabilizes(&borel(&w2, 2).unwrap()));
}

#[test]
fn invariant_and_normalization_examples() {
    let w2 = w(2);
    assert_eq!(classify::invariant_d(&borel(&w2, 0).unwrap()).unwrap(), 0);
    for r in 0..=2 {
        let c = classify::normalize_borel(&borel(&w2, r).unwrap(), Some(r)).unwrap();
        assert_eq!(c.r, r);
        assert!(c.witness.is_identity());
    }
    let w1 = w(1);
    let u = w1.ring().unit_var(0);
    let b = span(&w1, &[w1.element(&u, 0), w1.element(&u.pow(3), 0)]);
    let c = classify::normalize_borel(&b, Some(1)).unwrap();
    assert_eq!((c.r, c.route), (1, Route::Staged));
    assert_eq!(c.witness.induce_subalgebra(&b), borel(&w1, 1).unwrap());
}
