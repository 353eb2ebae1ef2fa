//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

#[path = "../../core/tests/common/golden.rs"]
mod golden;

use std::io::Write;
use std::process::{Command, ExitCode, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use idemforge::codes::{code_summary, DEFAULT_CODEWORD_BUDGET};
use idemforge::document::OutputDocument;
use idemforge::idempotent::{idempotents_from_factors, third_type_counts};
use idemforge::ntheory::{multiplicative_order, totient};
use idemforge::structure::{cyclotomic_cosets, factor_xn_minus_1, Factor};
use idemforge::verify::{sets_equal, verify_with_factors};
use idemforge::{
    dispatch, tap1_idempotents, tap2_idempotents, Choices, CyclicElement, ExtensionField,
    IdempotentRecord, ProblemInstance,
};

const GOLDEN: &str = include_str!("../../core/tests/data/f17_c169.txt");
const QS: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];
const PS: [u64; 5] = [3, 5, 7, 11, 13];

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn grid() -> Vec<ProblemInstance> {
    let mut out = Vec::new();
    for q in QS {
        for p in PS {
            if p == q {
                continue;
            }
            let mut k = 0;
            while p.pow(k) <= 400 {
                out.push(ProblemInstance::new(q, p, k).expect("grid instance"));
                k += 1;
            }
        }
    }
    out
}

fn values(recs: &[IdempotentRecord]) -> Vec<CyclicElement> {
    recs.iter().map(|r| r.value.clone()).collect()
}

struct GridRun {
    instance: ProblemInstance,
    factors: Vec<Factor>,
    oracle: Vec<CyclicElement>,
    closed: Vec<IdempotentRecord>,
}

fn run_one(instance: ProblemInstance) -> Result<GridRun, String> {
    let tag =
        |e: idemforge::Error| format!("({},{},{}): {e}", instance.q(), instance.p(), instance.k());
    let factors = factor_xn_minus_1(&instance).map_err(tag)?;
    let oracle = values(&idempotents_from_factors(&factors, instance.n() as usize).map_err(tag)?);
    let closed = dispatch(&instance, &Choices::default()).map_err(tag)?;
    Ok(GridRun {
        instance,
        factors,
        oracle,
        closed,
    })
}

/// Dispatch and oracle over the whole grid, spread over the available cores.
fn run_grid() -> (Vec<Result<GridRun, String>>, Duration) {
    let mut jobs = grid();
    // largest splitting fields first
    jobs.sort_by_key(|i| std::cmp::Reverse(i.splitting_degree() * i.n()));
    let start = Instant::now();
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::new());
    let workers = thread::available_parallelism().map_or(1, |n| n.get());
    thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(inst) = jobs.get(i) else { break };
                let r = run_one(inst.clone());
                results.lock().unwrap().push(r);
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|r| {
        r.as_ref()
            .ok()
            .map(|g| (g.instance.q(), g.instance.p(), g.instance.k()))
    });
    (results, start.elapsed())
}

fn golden_fixture() -> Outcome {
    let start = Instant::now();
    let inst = ProblemInstance::new(17, 13, 2).map_err(|e| e.to_string())?;
    let recs = dispatch(&inst, &Choices::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mut got: Vec<Vec<u64>> = recs.iter().map(|r| r.value.to_u64_vec()).collect();
    let mut want: Vec<Vec<u64>> = golden::load(GOLDEN, 169)
        .into_iter()
        .map(|(_, c)| c)
        .collect();
    got.sort();
    want.sort();
    if got.len() != 5 {
        return Err(format!("{} idempotents instead of 5", got.len()));
    }
    if got != want {
        return Err("coefficients differ from the reference polynomials".into());
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "5 idempotents match exactly in {:.1} ms",
        elapsed.as_secs_f64() * 1e3
    ))
}

fn oracle_equivalence(runs: &[Result<GridRun, String>], elapsed: Duration) -> Outcome {
    let mut bad = Vec::new();
    for r in runs {
        match r {
            Err(e) => bad.push(e.clone()),
            Ok(g) if !sets_equal(&values(&g.closed), &g.oracle) => {
                let i = &g.instance;
                bad.push(format!("({},{},{}) differs", i.q(), i.p(), i.k()));
            }
            Ok(_) => {}
        }
    }
    if !bad.is_empty() {
        return Err(format!(
            "{} of {} instances: {}",
            bad.len(),
            runs.len(),
            bad.join("; ")
        ));
    }
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("grid took {elapsed:?}"));
    }
    Ok(format!(
        "{} instances equal to the oracle, {:.1} s",
        runs.len(),
        elapsed.as_secs_f64()
    ))
}

fn system_properties(runs: &[Result<GridRun, String>]) -> Outcome {
    let mut checked = 0;
    for g in runs.iter().flatten() {
        let i = &g.instance;
        let closed = values(&g.closed);
        let cosets = cyclotomic_cosets(i.q(), i.n())
            .map_err(|e| e.to_string())?
            .len();
        for (which, set) in [("dispatch", &closed), ("oracle", &g.oracle)] {
            let report = verify_with_factors(i, set, &g.factors, None);
            if let Some(f) = report.first_failure() {
                return Err(format!(
                    "({},{},{}) {which}: {} {}",
                    i.q(),
                    i.p(),
                    i.k(),
                    f.name,
                    f.diagnostic.clone().unwrap_or_default()
                ));
            }
            if set.len() != cosets {
                return Err(format!(
                    "({},{},{}) {which}: {} vs {cosets} cosets",
                    i.q(),
                    i.p(),
                    i.k(),
                    set.len()
                ));
            }
        }
        checked += 1;
    }
    Ok(format!(
        "{checked} instances: idempotent, orthogonal, complete, one per coset (dispatch and oracle)"
    ))
}

fn regime_consistency(runs: &[Result<GridRun, String>]) -> Outcome {
    let (mut tap1, mut tap2) = (0, 0);
    let mut extra = vec![(2u64, 3u64, 2u32), (3, 5, 1)];
    for g in runs.iter().flatten() {
        let i = &g.instance;
        let closed = values(&g.closed);
        let n = i.n();
        if i.q() % n == 1 % n {
            let t1 = tap1_idempotents(i.q(), n, &Choices::default()).map_err(|e| e.to_string())?;
            if !sets_equal(&values(&t1), &closed) {
                return Err(format!("tap1 differs on ({},{},{})", i.q(), i.p(), i.k()));
            }
            tap1 += 1;
        }
        if multiplicative_order(i.q(), n).map_err(|e| e.to_string())? == totient(n) {
            let t2 = tap2_idempotents(i.q(), i.p(), i.k()).map_err(|e| e.to_string())?;
            if !sets_equal(&values(&t2), &closed) {
                return Err(format!("tap2 differs on ({},{},{})", i.q(), i.p(), i.k()));
            }
            extra.retain(|&x| x != (i.q(), i.p(), i.k()));
            tap2 += 1;
        }
    }
    if !extra.is_empty() {
        return Err(format!("tap2 regime not exercised on {extra:?}"));
    }
    Ok(format!(
        "tap1 = dispatch on {tap1} instances, tap2 = dispatch on {tap2}"
    ))
}

fn choice_independence() -> Outcome {
    let picks = [
        (2, 7, 1),
        (17, 13, 2),
        (3, 5, 2),
        (2, 5, 3),
        (5, 7, 2),
        (3, 11, 2),
        (13, 5, 3),
    ];
    let other = Choices {
        modulus_rank: 1,
        generator_rank: 1,
    };
    for (q, p, k) in picks {
        let inst = ProblemInstance::new(q, p, k).map_err(|e| e.to_string())?;
        let t = inst.t() as usize;
        let first = ExtensionField::with_modulus_rank(q, t, 0).map_err(|e| e.to_string())?;
        let second = ExtensionField::with_modulus_rank(q, t, 1).map_err(|e| e.to_string())?;
        if t < 2 || first.modulus() == second.modulus() {
            return Err(format!("({q},{p},{k}) does not exercise a second modulus"));
        }
        let a = dispatch(&inst, &Choices::default()).map_err(|e| e.to_string())?;
        let b = dispatch(&inst, &other).map_err(|e| e.to_string())?;
        if !sets_equal(&values(&a), &values(&b)) {
            return Err(format!("({q},{p},{k}) depends on the choices"));
        }
    }
    Ok(format!(
        "{} instances with t > 1 identical under the second modulus and second generator",
        picks.len()
    ))
}

fn count_audit(runs: &[Result<GridRun, String>]) -> Outcome {
    let (mut cases, mut orbit_hits, mut alt_hits, mut agree) = (0, 0, 0, 0);
    let mut alt_misses = Vec::new();
    for g in runs.iter().flatten() {
        let i = &g.instance;
        let (p, k, t, m) = (i.p(), i.k(), i.t(), i.effective_m());
        let dispatched = third_type_counts(&g.closed);
        for s in m + 1..=k {
            // oracle idempotents of level s are those of the factors of Phi_(p^s)
            let empirical = g.factors.iter().filter(|f| f.divisor == p.pow(s)).count() as u64;
            let orbit = totient(p.pow(m)) / t;
            let alt = totient(p.pow(k - s + m)) / t;
            cases += 1;
            orbit_hits += u32::from(empirical == orbit);
            alt_hits += u32::from(empirical == alt);
            agree += u32::from(dispatched.get(&s).copied().unwrap_or(0) as u64 == empirical);
            if empirical != alt && alt_misses.len() < 3 {
                alt_misses.push(format!("({},{p},{k}) s={s}: {empirical} vs {alt}", i.q()));
            }
        }
    }
    println!("       count audit over {cases} (instance, s) pairs with s > m:");
    println!("         phi(p^m)/t         matches {orbit_hits}/{cases}");
    println!(
        "         phi(p^(k-s+m))/t   matches {alt_hits}/{cases} (e.g. {})",
        alt_misses.join(", ")
    );
    println!("         dispatch per-s count equals the oracle on {agree}/{cases}");
    if cases == 0 || orbit_hits != cases || agree != cases {
        return Err("phi(p^m)/t does not hold everywhere".into());
    }
    Ok(format!(
        "per-s third-type count is phi(p^m)/t on all {cases} pairs; the alternative phi(p^(k-s+m))/t holds on {alt_hits} (only s = k)"
    ))
}

fn codes() -> Outcome {
    let start = Instant::now();
    let inst = ProblemInstance::new(2, 7, 1).map_err(|e| e.to_string())?;
    let recs = dispatch(&inst, &Choices::default()).map_err(|e| e.to_string())?;
    let mut params = recs
        .iter()
        .map(|r| code_summary(r, Some(DEFAULT_CODEWORD_BUDGET)).map(|s| s.parameters()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    params.sort();
    if params != ["[7,1,7]", "[7,3,4]", "[7,3,4]"] {
        return Err(format!("(2,7,1) codes {params:?}"));
    }
    let inst = ProblemInstance::new(7, 3, 2).map_err(|e| e.to_string())?;
    let recs = dispatch(&inst, &Choices::default()).map_err(|e| e.to_string())?;
    let mut dims = recs
        .iter()
        .map(|r| code_summary(r, None).map(|s| s.dimension))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    dims.sort();
    let elapsed = start.elapsed();
    if dims != [1, 1, 1, 3, 3] {
        return Err(format!("(7,3,2) dimensions {dims:?}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "(2,7,1): {}; (7,3,2) dimensions {dims:?} sum to 9; {:.1} ms",
        params.join(" "),
        elapsed.as_secs_f64() * 1e3
    ))
}

fn cli(args: &[&str], stdin: Option<&str>) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_idemforge"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn idemforge");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_contract() -> Outcome {
    let (code, json, err) = cli(
        &[
            "gen", "--q", "17", "--p", "13", "--k", "2", "--format", "json",
        ],
        None,
    );
    if code != 0 {
        return Err(format!("gen exited {code}: {err}"));
    }
    let doc = OutputDocument::from_json(&json).map_err(|e| e.to_string())?;
    if doc.to_json() != json {
        return Err("re-rendered JSON differs from the CLI output".into());
    }

    let (code, _, err) = cli(
        &["verify", "--input", "-", "--against", "euclid"],
        Some(&json),
    );
    if code != 0 {
        return Err(format!(
            "verify of the untouched document exited {code}: {err}"
        ));
    }

    let mut bad = doc.clone();
    let c = &mut bad.idempotents[1].coeffs[5];
    *c = (*c + 1) % 17;
    let (code, _, err) = cli(&["verify", "--input", "-"], Some(&bad.to_json()));
    if code != 2 {
        return Err(format!("perturbed document exited {code}"));
    }
    let named = err.trim().to_string();

    let (code, _, _) = cli(&["gen", "--q", "13", "--p", "13", "--k", "1"], None);
    if code != 1 {
        return Err(format!("q = p exited {code}"));
    }
    Ok(format!(
        "round trip byte-stable; perturbed verify exits 2 ({named}); q = p exits 1"
    ))
}

fn main() -> ExitCode {
    let (runs, grid_time) = run_grid();
    let criteria: [Criterion; 8] = [
        ("golden fixture", Box::new(golden_fixture)),
        (
            "oracle equivalence grid",
            Box::new(|| oracle_equivalence(&runs, grid_time)),
        ),
        ("system properties", Box::new(|| system_properties(&runs))),
        ("regime consistency", Box::new(|| regime_consistency(&runs))),
        ("choice independence", Box::new(choice_independence)),
        ("count-formula audit", Box::new(|| count_audit(&runs))),
        ("codes", Box::new(codes)),
        ("cli contract", Box::new(cli_contract)),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.into_iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
