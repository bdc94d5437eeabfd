//! `verify` suites. Each lists its checks with pass/fail and a short detail.

use std::path::PathBuf;
use std::time::Instant;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use witt_borel::autgroup;
use witt_borel::classify::{self, CensusMode, NormalizeOptions};
use witt_borel::json::SubalgebraDoc;
use witt_borel::standard::{self, borel, torus};
use witt_borel::{Field, Subalgebra, WittAlgebra};

use crate::{read_input, AlgebraArgs, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Axioms,
    Tori,
    Borel,
    Census,
    Roundtrip,
    Vectors,
    Invariant,
    Dims,
    Stabilizers,
}

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Report {
    pub suite: Suite,
    pub params: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
}

struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { name: name.into(), pass, detail: detail.into() });
    }
}

pub fn run(
    suite: Suite,
    args: &AlgebraArgs,
    input: Option<&PathBuf>,
    seed: u64,
    cases: Option<usize>,
    budget: u64,
) -> Result<Report, Failure> {
    let started = Instant::now();
    let mut checks = Checks(Vec::new());
    let params;
    match suite {
        Suite::Borel if input.is_some() => {
            let text = read_input(input.unwrap())?;
            let doc: SubalgebraDoc = witt_borel::json::parse(&text)?;
            let b = doc.to_subalgebra(None)?;
            params = json!({"p": doc.p, "e": doc.e, "n": doc.n});
            borel_checks(&mut checks, &b, "input")?;
        }
        Suite::Borel => {
            let alg = args.algebra()?;
            params = json!({"p": args.p, "e": args.e, "n": args.n});
            for q in 0..=alg.n() {
                let b = borel(&alg, q)?;
                borel_checks(&mut checks, &b, &format!("B_{q}"))?;
                let roots = standard::root_space_sum(&alg, q)?;
                checks.add(format!("B_{q} root_space_sum"), roots == b, format!("dim {}", b.dim()));
            }
        }
        Suite::Axioms => {
            let alg = args.algebra()?;
            let n_cases = cases.unwrap_or(1000);
            params = json!({"p": args.p, "e": args.e, "n": args.n, "seed": seed, "cases": n_cases});
            axioms(&mut checks, &alg, seed, n_cases);
        }
        Suite::Tori => {
            let alg = args.algebra()?;
            params = json!({"p": args.p, "e": args.e, "n": args.n});
            let full = Subalgebra::full(&alg);
            for r in 0..=alg.n() {
                let t = torus(&alg, r)?;
                let toral = t.basis.iter().all(|h| h.is_toral());
                checks.add(format!("t_{r} toral basis"), toral, "H^[p] = H for each basis element");
                let c = t.subalgebra().centralizer(&full);
                checks.add(format!("t_{r} self-centralizing"), c == t.subalgebra(), format!("dim centralizer {}", c.dim()));
            }
        }
        Suite::Dims => {
            let alg = args.algebra()?;
            params = json!({"p": args.p, "e": args.e, "n": args.n});
            let rep = standard::dimension_report(&alg)?;
            for row in &rep.rows {
                checks.add(
                    format!("r = {} computed matches enumeration", row.r),
                    row.computed == row.enumerated,
                    format!(
                        "computed {} enumerated {} formula {}{}",
                        row.computed,
                        row.enumerated,
                        row.formula,
                        if row.formula_discrepancy { " (formula discrepancy)" } else { "" }
                    ),
                );
            }
            let top = &rep.rows[alg.n()];
            checks.add("r = n formula", !top.formula_discrepancy, format!("{} vs {}", top.computed, top.formula));
        }
        Suite::Vectors => {
            params = json!({"p": 5});
            vectors(&mut checks)?;
        }
        Suite::Stabilizers => {
            let alg = args.algebra()?;
            let n_cases = cases.unwrap_or(200);
            params = json!({"p": args.p, "e": args.e, "n": args.n, "seed": seed, "cases": n_cases});
            stabilizers(&mut checks, &alg, seed, n_cases)?;
        }
        Suite::Roundtrip => {
            let alg = args.algebra()?;
            let n_cases = cases.unwrap_or(50);
            params = json!({"p": args.p, "e": args.e, "n": args.n, "seed": seed, "cases_per_r": n_cases});
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for r in 0..=alg.n() {
                let std = borel(&alg, r)?;
                let mut ok = 0;
                let mut first_failure = String::new();
                for i in 0..n_cases {
                    let sigma = autgroup::random_aut(alg.ring(), &mut rng, 0.4);
                    let b = sigma.induce_subalgebra(&std);
                    let opts = NormalizeOptions { seed: seed ^ (i as u64), ..NormalizeOptions::default() };
                    match classify::normalize_borel_with(&b, None, &opts) {
                        Ok(c) if c.r == r && c.witness.induce_subalgebra(&b) == std => ok += 1,
                        Ok(c) if first_failure.is_empty() => first_failure = format!("case {i}: got r = {}", c.r),
                        Err(e) if first_failure.is_empty() => first_failure = format!("case {i}: {e}"),
                        _ => {}
                    }
                }
                checks.add(format!("r = {r} round trips"), ok == n_cases, format!("{ok}/{n_cases} {first_failure}"));
            }
        }
        Suite::Invariant => {
            let alg = args.algebra()?;
            let n_cases = cases.unwrap_or(1000);
            params = json!({"p": args.p, "e": args.e, "n": args.n, "seed": seed, "cases": n_cases});
            let stds: Vec<Subalgebra> = (0..=alg.n()).map(|r| borel(&alg, r)).collect::<Result<_, _>>()?;
            for (r, b) in stds.iter().enumerate() {
                let d = classify::invariant_d(b)?;
                checks.add(format!("d(B_{r})"), d == r, format!("d = {d}"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut conflated = 0;
            let mut failed = 0;
            for i in 0..n_cases {
                let r = i % stds.len();
                let sigma = autgroup::random_aut(alg.ring(), &mut rng, 0.4);
                let b = sigma.induce_subalgebra(&stds[r]);
                let opts = NormalizeOptions { seed: seed ^ (i as u64), ..NormalizeOptions::default() };
                match classify::normalize_borel_with(&b, None, &opts) {
                    Ok(c) if c.r != r => conflated += 1,
                    Ok(_) => {}
                    Err(_) => failed += 1,
                }
            }
            checks.add(
                "randomized conjugations keep their class",
                conflated == 0 && failed == 0,
                format!("{n_cases} conjugations, {conflated} conflated, {failed} not normalized"),
            );
        }
        Suite::Census => {
            let p = args.p;
            params = json!({"p": p, "seed": seed});
            let mode = if p > 5 { CensusMode::Graded } else { CensusMode::Exhaustive };
            let opts = NormalizeOptions { seed, ..NormalizeOptions::default() };
            let rep = classify::census_w1(p, mode, budget, &opts)?;
            checks.add(
                "sweep",
                true,
                format!("{} subspaces, {} closed solvable, {} maximal", rep.subspaces_scanned, rep.closed_solvable, rep.entries.len()),
            );
            checks.add(
                "toral entries classify into two standard classes",
                rep.classes.len() == 2 && rep.classes.iter().all(|c| c.representative.is_some()),
                rep.classes.iter().map(|c| format!("r = {}: {}", c.r, c.count)).collect::<Vec<_>>().join(", "),
            );
            checks.add(
                "entries without toral elements split over an extension",
                rep.unresolved == 0,
                format!("{} without toral elements, {} split, {} unresolved", rep.without_toral, rep.non_split, rep.unresolved),
            );
            checks.add("every entry restricted", rep.entries.iter().all(|e| e.restricted), "");
        }
    }
    eprintln!("suite {suite:?} finished in {:.2?}", started.elapsed());
    let pass = checks.0.iter().all(|c| c.pass);
    Ok(Report { suite, params, checks: checks.0, pass })
}

fn borel_checks(checks: &mut Checks, b: &Subalgebra, label: &str) -> Result<(), Failure> {
    let alg = b.algebra();
    checks.add(format!("{label} closed"), b.is_closed(), format!("dim {}", b.dim()));
    let solvable = b.is_solvable()?;
    checks.add(format!("{label} solvable"), solvable, format!("derived length {:?}", b.derived_length()?));
    checks.add(format!("{label} restricted"), b.is_restricted()?, "");
    checks.add(format!("{label} self-normalizing"), b.is_self_normalizing(), "");
    let tori: Vec<usize> = (0..=alg.n()).filter(|&r| b.contains_subalgebra(&torus(alg, r).unwrap().subalgebra())).collect();
    checks.add(format!("{label} standard tori"), true, format!("contains t_r for r in {tori:?}"));
    if tori.contains(&0) {
        let cert = b.certify_maximal_solvable()?;
        let detail = match &cert.witness {
            Some(w) => format!("{} lines, witness weight {:?}", cert.lines_checked, w.weight),
            None => format!("{} lines over {}", cert.lines_checked, cert.field),
        };
        checks.add(format!("{label} maximal solvable"), cert.pass, detail);
    }
    if solvable {
        match classify::normalize_borel(b, None) {
            Ok(c) => checks.add(format!("{label} conjugate to a standard Borel"), true, format!("r = {}", c.r)),
            Err(e) => checks.add(format!("{label} conjugate to a standard Borel"), false, e.to_string()),
        }
    }
    Ok(())
}

fn axioms(checks: &mut Checks, alg: &WittAlgebra, seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = alg.ring();
    let (mut anti, mut jac, mut leib, mut comm, mut pmap) = (0, 0, 0, 0, 0);
    for _ in 0..cases {
        let d = alg.random_sparse(&mut rng, 0.3);
        let e = alg.random_sparse(&mut rng, 0.3);
        let f = alg.random_sparse(&mut rng, 0.3);
        let g = ring.random(&mut rng);
        let h = ring.random(&mut rng);
        anti += (d.bracket(&e) == e.bracket(&d).neg()) as usize;
        let j = d.bracket(&e.bracket(&f)).add(&e.bracket(&f.bracket(&d))).add(&f.bracket(&d.bracket(&e)));
        jac += j.is_zero() as usize;
        leib += (d.apply(&g.mul(&h)) == d.apply(&g).mul(&h).add(&g.mul(&d.apply(&h)))) as usize;
        comm += (d.bracket(&e).apply(&g) == d.apply(&e.apply(&g)).sub(&e.apply(&d.apply(&g)))) as usize;
        let mut ad = e.clone();
        for _ in 0..alg.p() {
            ad = d.bracket(&ad);
        }
        pmap += (d.p_power().bracket(&e) == ad) as usize;
    }
    for (name, count) in [
        ("antisymmetry", anti),
        ("jacobi", jac),
        ("leibniz", leib),
        ("bracket is the commutator", comm),
        ("ad(D^[p]) = (ad D)^p", pmap),
    ] {
        checks.add(name, count == cases, format!("{count}/{cases}"));
    }
}

fn vectors(checks: &mut Checks) -> Result<(), Failure> {
    let f = Field::prime(5)?;
    let w1 = WittAlgebra::new(&f, 1)?;
    let r1 = w1.ring();
    let phi = autgroup::phi_w1(r1, 3)?;
    let y = r1.unit_var(0);
    let lhs = phi.induce(&w1.element(&y.pow(3), 0));
    checks.add("Phi((1+x)^3 d) = 3 d", lhs == w1.partial(0).scale(3), lhs.to_string());
    let lhs = phi.induce(&w1.element(&y, 0));
    checks.add("Phi((1+x) d) = 3 (1+x) d", lhs == w1.element(&y, 0).scale(3), lhs.to_string());
    let w2 = WittAlgebra::new(&f, 2)?;
    let r2 = w2.ring();
    let om = autgroup::omega(r2, 0, &[0, 2])?;
    let yform = w2.element(&r2.unit_var(1).pow(2), 0);
    let lhs = om.induce(&yform);
    checks.add("Omega((1+x2)^2 d1) = d1", lhs == w2.partial(0), lhs.to_string());
    for r in 0..=2 {
        let th = autgroup::theta(r2, r);
        let ok = th.as_ref().map(|t| t.compose(&t.inverse()).is_identity()).unwrap_or(false);
        checks.add(format!("Theta_{r} is an automorphism"), ok, th.map(|t| format!("{t:?}")).unwrap_or_else(|e| e.to_string()));
    }
    Ok(())
}

fn stabilizers(checks: &mut Checks, alg: &WittAlgebra, seed: u64, cases: usize) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = alg.ring();
    let bn = borel(alg, alg.n())?;
    let mut good = 0;
    for _ in 0..cases {
        let m = autgroup::random_matrix(ring, &mut rng, true);
        let sigma = autgroup::linear(ring, &m)?.compose(&autgroup::random_un(ring, &mut rng, 0.4));
        good += sigma.stabilizes(&bn) as usize;
    }
    checks.add("B_0 ⋉ U_n stabilizes B_n", good == cases, format!("{good}/{cases}"));
    let mut rejected = 0;
    for _ in 0..cases {
        let sigma = autgroup::random_u_not_un(ring, &mut rng, 0.4);
        rejected += (!sigma.in_un() && !sigma.stabilizes(&bn)) as usize;
    }
    checks.add("U outside U_n does not stabilize B_n", rejected == cases, format!("{rejected}/{cases}"));
    Ok(())
}
