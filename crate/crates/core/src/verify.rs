//! Named verification suites. Each suite enumerates or samples instances,
//! checks a property against an independent computation and collects
//! counterexamples.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cent::{
    cent_conjugate_bruteforce, centralizer_basis, centralizers_conjugate, jordan_chevalley, primary_model,
    similarity_class_representatives, spans_equal, verify_certificate, witness_polynomials,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::json::{cycle_type_to_json, error_to_json, matrix_to_json, poly_to_json};
use crate::matrix::Matrix;
use crate::perm::{
    an_cent_equal, an_cent_equal_with, factorial, nth_permutation, perm_centralizer_bruteforce, sn_cent_equal, AnRules,
    Group, Permutation,
};
use crate::poly::Poly;
use crate::sample::{
    random_conjugate, random_invertible, random_irreducible, random_matrix, random_partition, random_poly,
    random_primary,
};
use crate::types::{
    cent_dim_formula, cycle_type, dominance_leq, f_conjugate_square, f_of_partition, green_type, CycleType,
    Partition,
};

pub const SUITES: [&str; 10] = [
    "centdim",
    "nilpclass",
    "dominance",
    "main-theorem-f2",
    "witness-roundtrip",
    "sn-oracle",
    "an-oracle",
    "partition-formulas",
    "jc",
    "extension-separable",
];

/// Sample size of the `n = 7` permutation spot check.
pub const PERM_SAMPLE: usize = 10_000;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Suite-specific size cap; `None` selects the suite default.
    pub scale: Option<usize>,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: crate::poly::DEFAULT_SEED, scale: None, jobs: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub inputs: Value,
    pub expected: Value,
    pub got: Value,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: String,
    pub instances_checked: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// JSON form; `elapsed` is included only on request so that repeated
    /// runs are byte-identical.
    pub fn to_json(&self, with_timing: bool) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|f| json!({"inputs": f.inputs, "expected": f.expected, "got": f.got}))
            .collect();
        let mut v = json!({
            "suite": self.suite,
            "passed": self.passed(),
            "instances_checked": self.instances_checked,
            "failures": failures,
            "notes": self.notes,
        });
        if with_timing {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }
}

type Outcome = std::result::Result<(), Failure>;

fn fail(inputs: Value, expected: Value, got: Value) -> Outcome {
    Err(Failure { inputs, expected, got })
}

fn err_failure(inputs: Value, e: &Error) -> Failure {
    Failure { inputs, expected: json!("no error"), got: error_to_json(e) }
}

/// Independent stream per instance, so results do not depend on scheduling.
fn instance_rng(seed: u64, idx: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(idx as u64);
    rng
}

fn run_instances<F>(count: usize, seed: u64, check: F) -> (usize, Vec<Failure>)
where
    F: Fn(usize, &mut ChaCha8Rng) -> Outcome + Sync,
{
    let failures: Vec<Failure> = (0..count)
        .into_par_iter()
        .filter_map(|i| check(i, &mut instance_rng(seed, i)).err())
        .collect();
    (count, failures)
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<VerifyReport> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let (checked, failures, notes) = pool.install(|| dispatch(name, opts));
    Ok(VerifyReport { suite: name.to_string(), instances_checked: checked, failures, elapsed: start.elapsed(), notes })
}

fn dispatch(name: &str, opts: &VerifyOptions) -> (usize, Vec<Failure>, Vec<String>) {
    let seed = opts.seed;
    let scale = opts.scale;
    let plain = |(c, f): (usize, Vec<Failure>)| (c, f, Vec::new());
    match name {
        "centdim" => plain(centdim(scale.unwrap_or(200), seed)),
        "nilpclass" => plain(nilpclass(scale.unwrap_or(100), seed)),
        "dominance" => plain(dominance(scale.unwrap_or(200), seed)),
        "main-theorem-f2" => plain(main_theorem_f2(scale.unwrap_or(3))),
        "witness-roundtrip" => plain(witness_roundtrip(scale.unwrap_or(100), seed)),
        "sn-oracle" => perm_oracle(Group::Symmetric, scale.unwrap_or(7), seed),
        "an-oracle" => perm_oracle(Group::Alternating, scale.unwrap_or(7), seed),
        "partition-formulas" => plain(partition_formulas(scale.unwrap_or(12))),
        "jc" => plain(jc(scale.unwrap_or(100), seed)),
        "extension-separable" => plain(extension_separable(scale.unwrap_or(50), seed)),
        _ => unreachable!("checked by run_suite"),
    }
}

fn small_prime_field<R: Rng + ?Sized>(rng: &mut R) -> Field {
    Field::prime(*[2u64, 3, 5].choose(rng).expect("nonempty")).expect("prime")
}

/// Random matrix with a nontrivial cycle type: conjugated block diagonal of
/// primary models over distinct irreducibles.
fn random_structured<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
    let mut blocks = Vec::new();
    let mut used: Vec<Poly> = Vec::new();
    let mut left = n;
    let mut attempts = 0;
    while left > 0 && attempts < 20 {
        attempts += 1;
        let d = rng.gen_range(1..=left.min(2));
        let f = random_irreducible(field, d, rng);
        if used.contains(&f) {
            continue;
        }
        let size = rng.gen_range(1..=left / d);
        blocks.push(primary_model(&f, &random_partition(size, rng)));
        used.push(f);
        left -= size * d;
    }
    while left > 0 {
        blocks.push(Matrix::scalar(field, 1, &field.zero()));
        left -= 1;
    }
    random_conjugate(&Matrix::block_diag(field, &blocks), rng)
}

fn centdim(per_field: usize, seed: u64) -> (usize, Vec<Failure>) {
    let fields = [Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::rationals()];
    run_instances(per_field * fields.len(), seed, |i, rng| {
        let field = &fields[i % fields.len()];
        let n = rng.gen_range(1..=if field.is_rationals() { 5 } else { 6 });
        let x = if (i / fields.len()).is_multiple_of(2) { random_matrix(field, n, rng) } else { random_structured(field, n, rng) };
        let inputs = matrix_to_json(&x);
        let ct = cycle_type(&x).map_err(|e| err_failure(inputs.clone(), &e))?;
        let dim = centralizer_basis(&x).map_err(|e| err_failure(inputs.clone(), &e))?.dim as u64;
        let formula = cent_dim_formula(&green_type(&ct));
        if dim != formula {
            return fail(inputs, json!(formula), json!(dim));
        }
        Ok(())
    })
}

/// Random irreducible `f` and partition `lambda` with `deg f * |lambda| <= max_n`.
fn random_primary_type<R: Rng + ?Sized>(field: &Field, min_d: usize, max_n: usize, rng: &mut R) -> (Poly, Partition) {
    let d = rng.gen_range(min_d..=3.min(max_n));
    let f = random_irreducible(field, d, rng);
    let size = rng.gen_range(1..=max_n / d);
    (f, random_partition(size, rng))
}

fn any_field<R: Rng + ?Sized>(rng: &mut R) -> Field {
    if rng.gen_bool(0.25) {
        Field::rationals()
    } else {
        small_prime_field(rng)
    }
}

fn primary_inputs(f: &Poly, lambda: &Partition, x: &Matrix) -> Value {
    json!({"f": poly_to_json(f), "partition": lambda.parts(), "matrix": matrix_to_json(x)})
}

fn nilpclass(count: usize, seed: u64) -> (usize, Vec<Failure>) {
    run_instances(count, seed, |_, rng| {
        let field = any_field(rng);
        let (f, lambda) = random_primary_type(&field, 1, 6, rng);
        let m = random_primary(&f, &lambda, rng);
        let inputs = primary_inputs(&f, &lambda, &m);
        let fm = m.eval_poly(&f).map_err(|e| err_failure(inputs.clone(), &e))?;
        let expected = CycleType::new(vec![(Poly::x(&field), lambda.scaled(f.deg()))]);
        let got = cycle_type(&fm).map_err(|e| err_failure(inputs.clone(), &e))?;
        if !fm.is_nilpotent() || got != expected {
            return fail(inputs, cycle_type_to_json(&expected), cycle_type_to_json(&got));
        }
        Ok(())
    })
}

fn dominance(count: usize, seed: u64) -> (usize, Vec<Failure>) {
    run_instances(count, seed, |_, rng| {
        let field = any_field(rng);
        let (f, lambda) = random_primary_type(&field, 1, 6, rng);
        let x = random_primary(&f, &lambda, rng);
        let h = random_poly(&field, rng.gen_range(1..=2 * x.rows()), rng);
        let inputs = json!({"x": primary_inputs(&f, &lambda, &x), "h": poly_to_json(&h)});
        let hx = x.eval_poly(&h).map_err(|e| err_failure(inputs.clone(), &e))?;
        let ct = cycle_type(&hx).map_err(|e| err_failure(inputs.clone(), &e))?;
        let d = f.deg();
        let ok = match ct.pairs.as_slice() {
            [(g, mu)] => {
                let e = g.deg();
                d % e == 0
                    && e * mu.size() == d * lambda.size()
                    && dominance_leq(&mu.scaled(e), &lambda.scaled(d)).unwrap_or(false)
            }
            _ => false,
        };
        if !ok {
            return fail(inputs, json!("primary type e^mu with e | d and e*mu below d*lambda"), cycle_type_to_json(&ct));
        }
        Ok(())
    })
}

fn main_theorem_f2(max_n: usize) -> (usize, Vec<Failure>) {
    let field = Field::prime(2).expect("prime");
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let reps = similarity_class_representatives(&field, n);
        let pairs: Vec<(usize, usize)> = (0..reps.len()).flat_map(|a| (0..reps.len()).map(move |b| (a, b))).collect();
        checked += pairs.len();
        let found: Vec<Failure> = pairs.par_iter().filter_map(|&(a, b)| {
            let (x, y) = (&reps[a], &reps[b]);
            let inputs = json!({"x": matrix_to_json(x), "y": matrix_to_json(y)});
            let run = || -> Result<Option<Failure>> {
                let cert = centralizers_conjugate(x, y)?;
                let brute = cent_conjugate_bruteforce(x, y)?;
                if cert.verdict != brute {
                    return Ok(Some(Failure { inputs: inputs.clone(), expected: json!(brute), got: json!(cert.verdict) }));
                }
                if !verify_certificate(x, y, &cert)? {
                    return Ok(Some(Failure {
                        inputs: inputs.clone(),
                        expected: json!("valid certificate"),
                        got: json!("certificate failed re-verification"),
                    }));
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(err_failure(inputs.clone(), &e)))
        }).collect();
        failures.extend(found);
    }
    (checked, failures)
}

/// Monic `f((x - c) / k) * k^deg f`, an equivalent polynomial over `Q`.
fn affine_image(f: &Poly, c: i64, k: i64) -> Poly {
    let q = f.field();
    let lin = Poly::new(q, vec![q.from_rational(&num_rational::BigRational::new((-c).into(), k.into())).unwrap(), q.inv(&q.from_i64(k)).unwrap()]);
    f.compose(&lin).monic()
}

/// Two generalized-type-equal primary decompositions: lists of
/// `(f_i, g_i, lambda_i)` with the `f_i` distinct and the `g_i` distinct.
fn equivalent_components<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Vec<(Poly, Poly, Partition)> {
    let base_q = ["x - 1", "x^2 - 2", "x^2 + 1", "x^2 - 3", "x^3 - 2", "x^2 + x + 1"];
    loop {
        let parts = rng.gen_range(1..=2);
        let mut out: Vec<(Poly, Poly, Partition)> = Vec::new();
        let mut left = 6usize;
        for _ in 0..parts {
            let (f, g) = if field.is_rationals() {
                let f = Poly::parse(field, base_q.choose(rng).expect("nonempty")).expect("valid");
                let g = if f == Poly::parse(field, "x^2 - 2").expect("valid") && rng.gen_bool(0.5) {
                    affine_image(&f, 0, *[2i64, 3].choose(rng).expect("nonempty"))
                } else {
                    affine_image(&f, rng.gen_range(-3..=3), *[1i64, -1, 2].choose(rng).expect("nonempty"))
                };
                (f, g)
            } else {
                let d = rng.gen_range(1..=3);
                (random_irreducible(field, d, rng), random_irreducible(field, d, rng))
            };
            if f.deg() > left {
                continue;
            }
            let lambda = random_partition(rng.gen_range(1..=left / f.deg()), rng);
            left -= f.deg() * lambda.size();
            out.push((f, g, lambda));
        }
        let distinct = |sel: fn(&(Poly, Poly, Partition)) -> &Poly| {
            out.iter().enumerate().all(|(i, a)| out[..i].iter().all(|b| sel(a) != sel(b)))
        };
        if !out.is_empty() && distinct(|t| &t.0) && distinct(|t| &t.1) {
            return out;
        }
    }
}

fn witness_roundtrip(count: usize, seed: u64) -> (usize, Vec<Failure>) {
    let fields = [Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::rationals()];
    run_instances(count, seed, |i, rng| {
        let field = &fields[i % fields.len()];
        let comps = equivalent_components(field, rng);
        let bx: Vec<Matrix> = comps.iter().map(|(f, _, l)| primary_model(f, l)).collect();
        let by: Vec<Matrix> = comps.iter().map(|(_, g, l)| primary_model(g, l)).collect();
        let x = random_conjugate(&Matrix::block_diag(field, &bx), rng);
        let y = random_conjugate(&Matrix::block_diag(field, &by), rng);
        let inputs = json!({"x": matrix_to_json(&x), "y": matrix_to_json(&y)});
        let run = || -> Result<Option<Failure>> {
            let Some((p, _q)) = witness_polynomials(&x, &y)? else {
                return Ok(Some(Failure { inputs: inputs.clone(), expected: json!("witness"), got: json!(null) }));
            };
            let px = x.eval_poly(&p)?;
            if px.invariant_factors()? != y.invariant_factors()? {
                return Ok(Some(Failure {
                    inputs: inputs.clone(),
                    expected: json!("p(X) similar to Y"),
                    got: json!({"p": poly_to_json(&p)}),
                }));
            }
            if !spans_equal(field, &centralizer_basis(&px)?.basis, &centralizer_basis(&x)?.basis) {
                return Ok(Some(Failure {
                    inputs: inputs.clone(),
                    expected: json!("Cent(p(X)) = Cent(X)"),
                    got: json!({"p": poly_to_json(&p)}),
                }));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => Ok(()),
            Ok(Some(f)) => Err(f),
            Err(e) => Err(err_failure(inputs, &e)),
        }
    })
}

fn group_elements(n: usize, group: Group) -> Vec<Permutation> {
    (0..factorial(n)).map(|k| nth_permutation(n, k)).filter(|g| group == Group::Symmetric || g.is_even()).collect()
}

/// Centralizer class ids: equal ids exactly when the centralizers coincide.
fn centralizer_ids(elems: &[Permutation], group: Group) -> Vec<usize> {
    let cents: Vec<Vec<Permutation>> =
        elems.par_iter().map(|g| perm_centralizer_bruteforce(g, group).expect("n is small")).collect();
    let mut ids: HashMap<&Vec<Permutation>, usize> = HashMap::new();
    cents
        .iter()
        .map(|c| {
            let k = ids.len();
            *ids.entry(c).or_insert(k)
        })
        .collect()
}

fn decide(g: &Permutation, h: &Permutation, group: Group, rules: AnRules) -> Result<bool> {
    Ok(match group {
        Group::Symmetric => sn_cent_equal(g, h)?.equal,
        Group::Alternating if rules == AnRules::Extended => an_cent_equal(g, h)?.equal,
        Group::Alternating => an_cent_equal_with(g, h, rules)?.equal,
    })
}

fn perm_pairs_check(
    elems: &[Permutation],
    ids: &[usize],
    pairs: &[(usize, usize)],
    group: Group,
    rules: AnRules,
) -> Vec<Failure> {
    pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let (g, h) = (&elems[a], &elems[b]);
            let oracle = ids[a] == ids[b];
            let inputs = json!({"g": g.to_string(), "h": h.to_string(), "n": g.n()});
            match decide(g, h, group, rules) {
                Ok(d) if d == oracle => None,
                Ok(d) => Some(Failure { inputs, expected: json!(oracle), got: json!(d) }),
                Err(e) => Some(err_failure(inputs, &e)),
            }
        })
        .collect()
}

/// Exhaustive for `n <= min(max_n, 6)`; a sampled check at `n = 7` when
/// `max_n >= 7`.
fn perm_oracle(group: Group, max_n: usize, seed: u64) -> (usize, Vec<Failure>, Vec<String>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let mut literal_mismatches = 0;
    let mut run = |elems: &[Permutation], ids: &[usize], pairs: Vec<(usize, usize)>| {
        checked += pairs.len();
        failures.extend(perm_pairs_check(elems, ids, &pairs, group, AnRules::Extended));
        if group == Group::Alternating {
            literal_mismatches += perm_pairs_check(elems, ids, &pairs, group, AnRules::Literal).len();
        }
    };
    for n in 1..=max_n.min(6) {
        let elems = group_elements(n, group);
        let ids = centralizer_ids(&elems, group);
        let m = elems.len();
        run(&elems, &ids, (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).collect());
    }
    if max_n >= 7 {
        let elems = group_elements(7, group);
        let mut rng = instance_rng(seed, 7);
        // bias half the sample towards equal-centralizer candidates: same cycle type
        let pairs: Vec<(usize, usize)> = (0..PERM_SAMPLE)
            .map(|k| {
                let a = rng.gen_range(0..elems.len());
                if k % 2 == 0 {
                    return (a, rng.gen_range(0..elems.len()));
                }
                let shape = elems[a].cycle_type();
                loop {
                    let b = rng.gen_range(0..elems.len());
                    if elems[b].cycle_type() == shape {
                        return (a, b);
                    }
                }
            })
            .collect();
        let mut involved: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        involved.sort_unstable();
        involved.dedup();
        let sub: Vec<Permutation> = involved.iter().map(|&i| elems[i].clone()).collect();
        let ids = centralizer_ids(&sub, group);
        let pos: HashMap<usize, usize> = involved.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        run(&sub, &ids, pairs.iter().map(|(a, b)| (pos[a], pos[b])).collect());
    }
    if group == Group::Alternating {
        notes.push(format!("literal case list: {literal_mismatches} mismatches against the oracle"));
    }
    (checked, failures, notes)
}

fn partition_formulas(max_size: usize) -> (usize, Vec<Failure>) {
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 0..=max_size {
        for p in Partition::all(n) {
            checked += 1;
            let (a, b) = (f_of_partition(&p), f_conjugate_square(&p));
            if a != b {
                failures.push(Failure { inputs: json!(p.parts()), expected: json!(a), got: json!(b) });
            }
        }
    }
    (checked, failures)
}

fn jc_problem(x: &Matrix) -> Result<Option<&'static str>> {
    let d = jordan_chevalley(x)?;
    if &d.s.add(&d.n) != x {
        return Ok(Some("S + N != X"));
    }
    if d.s.mul(&d.n) != d.n.mul(&d.s) {
        return Ok(Some("SN != NS"));
    }
    if !d.n.is_nilpotent() {
        return Ok(Some("N not nilpotent"));
    }
    let m = d.s.minimal_polynomial()?;
    if !m.gcd(&m.derivative()).is_one() {
        return Ok(Some("minimal polynomial of S not squarefree"));
    }
    if x.eval_poly(&d.s_expr)? != d.s || x.eval_poly(&d.n_expr)? != d.n {
        return Ok(Some("S, N are not the stated polynomials in X"));
    }
    Ok(None)
}

fn jc(count: usize, seed: u64) -> (usize, Vec<Failure>) {
    let (c1, mut failures) = run_instances(count, seed, |i, rng| {
        let field = any_field(rng);
        let n = rng.gen_range(1..=if field.is_rationals() { 4 } else { 5 });
        let x = if i % 2 == 0 { random_matrix(&field, n, rng) } else { random_structured(&field, n, rng) };
        match jc_problem(&x) {
            Ok(None) => Ok(()),
            Ok(Some(msg)) => fail(matrix_to_json(&x), json!("Jordan-Chevalley equations"), json!(msg)),
            Err(e) => Err(err_failure(matrix_to_json(&x), &e)),
        }
    });
    let pairs = (count / 5).max(1);
    let (c2, f2) = run_instances(pairs, seed ^ 0x6a63, |_, rng| {
        let field = any_field(rng);
        let n = rng.gen_range(1..=4);
        let x = random_structured(&field, n, rng);
        let p = random_invertible(&field, n, rng);
        let y = x.conjugate_by(&p).expect("invertible");
        let inputs = json!({"x": matrix_to_json(&x), "p": matrix_to_json(&p)});
        let run = || -> Result<bool> {
            let (dx, dy) = (jordan_chevalley(&x)?, jordan_chevalley(&y)?);
            Ok(dx.s.conjugate_by(&p)? == dy.s && dx.n.conjugate_by(&p)? == dy.n)
        };
        match run() {
            Ok(true) => Ok(()),
            Ok(false) => fail(inputs, json!("JC(P^-1 X P) = P^-1 JC(X) P"), json!(false)),
            Err(e) => Err(err_failure(inputs, &e)),
        }
    });
    failures.extend(f2);
    (c1 + c2, failures)
}

fn extension_separable(count: usize, seed: u64) -> (usize, Vec<Failure>) {
    run_instances(count, seed, |_, rng| {
        let field = small_prime_field(rng);
        let (f, lambda) = random_primary_type(&field, 2, 6, rng);
        let x = random_primary(&f, &lambda, rng);
        let inputs = primary_inputs(&f, &lambda, &x);
        let run = || -> Result<Option<Failure>> {
            let ext = Field::extension(&field, &f)?;
            let xl = x.map_entries(&ext, |a| ext.embed(a));
            let ct = cycle_type(&xl)?;
            let ok = ct.pairs.len() == f.deg() && ct.pairs.iter().all(|(g, mu)| g.deg() == 1 && *mu == lambda);
            Ok((!ok).then(|| Failure {
                inputs: inputs.clone(),
                expected: json!({"linear_factors": f.deg(), "partition": lambda.parts()}),
                got: cycle_type_to_json(&ct),
            }))
        };
        match run() {
            Ok(None) => Ok(()),
            Ok(Some(f)) => Err(f),
            Err(e) => Err(err_failure(inputs, &e)),
        }
    })
}
