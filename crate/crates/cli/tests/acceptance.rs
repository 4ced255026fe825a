//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every check prints exactly one PASS/FAIL line; exits nonzero if any fail.

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use qhelper_cli::inputs::{isotropic, product};
use qhelper_core::channels::{kraus_to_stinespring, random_isometry, ChannelPreset, StinespringIsometry};
use qhelper_core::qcore::random::{random_density, random_pure};
use qhelper_core::qcore::{
    cond_mutual_info, entropy, mutual_info, purify, AnyState, DensityOperator, PureState, QuantumState, SystemLayout,
};
use qhelper_core::rates::{
    build_phi, converse_audit, direct_part_total, theorem2_rates, HelperInstance, LABEL_A, LABEL_C, LABEL_E, LABEL_R,
};
use qhelper_core::region::{trace_frontier, FrontierConfig};
use qhelper_core::ricalc::{builtin, certify, merging_certificate, parse, Bindings};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn qhelper(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qhelper"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("QHELPER_THREADS", t);
    }
    cmd.output().expect("qhelper runs")
}

fn abc_layout(rng: &mut ChaCha8Rng) -> SystemLayout {
    let dims: Vec<usize> = (0..3).map(|_| rng.random_range(1..=2)).collect();
    SystemLayout::new(["A", "B", "C"], &dims).unwrap()
}

fn entropy_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let layout = abc_layout(&mut rng);
        let rho = random_density(layout.clone(), &mut rng);
        let h = |x: &[&str]| entropy(&rho, x).unwrap();
        // strong subadditivity
        worst = worst.max(-cond_mutual_info(&rho, &["A"], &["C"], &["B"]).unwrap());
        // Araki-Lieb on every pair
        for (x, y) in [("A", "B"), ("B", "C"), ("A", "C")] {
            worst = worst.max((h(&[x]) - h(&[y])).abs() - h(&[x, y]));
        }
        // 0 <= H <= log d
        for (i, l) in ["A", "B", "C"].iter().enumerate() {
            let v = h(&[l]);
            worst = worst.max(-v).max(v - (layout.dims()[i] as f64).log2());
        }
        // purity symmetry on a purification and on a random pure state
        let psi = purify(&rho, "R").unwrap();
        worst = worst.max((entropy(&psi, &["A", "B"]).unwrap() - entropy(&psi, &["C", "R"]).unwrap()).abs());
        let pure = random_pure(abc_layout(&mut rng), &mut rng);
        worst = worst.max((entropy(&pure, &["A"]).unwrap() - entropy(&pure, &["B", "C"]).unwrap()).abs());
    }
    let took = start.elapsed();
    outcome(
        worst <= 1e-8 && took < Duration::from_secs(10),
        format!("max violation {worst:.1e} over 200 states in {took:.2?}"),
    )
}

fn rates_for(rho: DensityOperator, helper: StinespringIsometry) -> (f64, f64) {
    let r = theorem2_rates(&build_phi(&HelperInstance::new(rho, helper).unwrap()).unwrap());
    (r.r1, r.r2)
}

fn preset_iso(p: ChannelPreset, d: usize) -> StinespringIsometry {
    kraus_to_stinespring(&p.to_kraus(d).unwrap())
}

fn rate_anchors() -> Outcome {
    let bell = PureState::maximally_entangled("A", "B", 2).unwrap().to_density();
    let src = product(0.5, 0.8).unwrap();
    let (ha, hb) = (entropy(&src, &["A"]).unwrap(), entropy(&src, &["B"]).unwrap());
    let cases = [
        ("bell/identity", rates_for(bell.clone(), preset_iso(ChannelPreset::Identity, 2)), (-1.0, 1.0)),
        ("bell/discard", rates_for(bell.clone(), preset_iso(ChannelPreset::Discard, 2)), (1.0, 0.0)),
        ("product/identity", rates_for(src, preset_iso(ChannelPreset::Identity, 2)), (ha, hb)),
    ];
    let worst = cases.iter().map(|(_, (r1, r2), (e1, e2))| (r1 - e1).abs().max((r2 - e2).abs())).fold(0.0, f64::max);
    outcome(worst <= 1e-9, format!("max deviation {worst:.1e} over {} anchors", cases.len()))
}

fn random_instances() -> Vec<HelperInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    (0..100u64)
        .map(|k| {
            let (da, db) = (rng.random_range(1..=2), rng.random_range(1..=2));
            let (dc, de) = (rng.random_range(1..=2), rng.random_range(1..=2));
            let rho = random_density(SystemLayout::new(["A", "B"], &[da, db]).unwrap(), &mut rng);
            // the helper must fit B into C E
            let (dc, de) = if dc * de < db { (2, de) } else { (dc, de) };
            HelperInstance::new(rho, random_isometry(db, dc, de, 1000 + k).unwrap()).unwrap()
        })
        .collect()
}

fn discussion_identity(instances: &[HelperInstance]) -> Outcome {
    let worst = instances
        .iter()
        .map(|inst| {
            let phi = build_phi(inst).unwrap();
            let s = phi.state();
            let hc = entropy(s, &[LABEL_C]).unwrap();
            let ice = mutual_info(s, &[LABEL_C], &[LABEL_E]).unwrap();
            let icra = mutual_info(s, &[LABEL_C], &[LABEL_R, LABEL_A]).unwrap();
            (hc - 0.5 * ice - 0.5 * icra).abs()
        })
        .fold(0.0, f64::max);
    outcome(worst <= 1e-8, format!("max |H(C) - I(C;E)/2 - I(C;RA)/2| = {worst:.1e} on {} instances", instances.len()))
}

fn direct_part(instances: &[HelperInstance]) -> Outcome {
    let worst = instances
        .iter()
        .map(|inst| {
            let r = theorem2_rates(&build_phi(inst).unwrap());
            let d = direct_part_total(inst).unwrap();
            (d.helper_qubits - r.r2).abs().max((d.alice_ebits - r.r1).abs())
        })
        .fold(0.0, f64::max);
    outcome(worst <= 1e-8, format!("max deviation {worst:.1e} on {} instances", instances.len()))
}

fn converse() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0_f64;
    let mut checks = 0;
    let mut all = true;
    for k in 0..20u64 {
        let rho = random_density(SystemLayout::new(["A", "B"], &[2, 2]).unwrap(), &mut rng);
        let inst = HelperInstance::new(rho, random_isometry(2, 2, 2, 500 + k).unwrap()).unwrap();
        for r in converse_audit(&inst, 2).unwrap() {
            worst = worst.max(r.residual);
            all &= r.passed;
            checks += 1;
        }
    }
    let took = start.elapsed();
    outcome(
        all && worst <= 1e-8 && took < Duration::from_secs(60),
        format!("{checks} checks, max residual {worst:.1e}, {took:.2?}"),
    )
}

fn bell_endpoints() -> Outcome {
    let start = Instant::now();
    let bell = PureState::maximally_entangled("A", "B", 2).unwrap().to_density();
    let mut cfg = FrontierConfig::new(2, 2);
    cfg.seed = 2024;
    let res = trace_frontier(&bell, &cfg).unwrap();
    let took = start.elapsed();
    let (first, last) = (res.hull.first().unwrap(), res.hull.last().unwrap());
    let lo = (first.r2 - 0.0).abs().max((first.r1 - 1.0).abs());
    let hi = (last.r2 - 1.0).abs().max((last.r1 + 1.0).abs());
    let monotone = res.hull.windows(2).all(|w| w[1].r1 <= w[0].r1);
    outcome(
        lo <= 1e-3 && hi <= 1e-3 && monotone && cfg.lambda_grid.len() == 7 && took < Duration::from_secs(300),
        format!(
            "endpoints ({:.6}, {:.6}) and ({:.6}, {:.6}), r1 nonincreasing: {monotone}, {took:.2?}",
            first.r2, first.r1, last.r2, last.r1
        ),
    )
}

fn isotropic_dominance() -> Outcome {
    let rho = isotropic(0.75).unwrap();
    let mut presets = vec![ChannelPreset::Identity, ChannelPreset::Discard];
    for k in 0..5 {
        let p = f64::from(k) / 4.0;
        presets.push(ChannelPreset::Dephasing(p));
        presets.push(ChannelPreset::Depolarizing(p));
    }
    let oracle: Vec<(String, f64, f64)> = presets
        .iter()
        .map(|&p| {
            let (r1, r2) = rates_for(rho.clone(), preset_iso(p, 2));
            (p.to_string(), r1, r2)
        })
        .collect();

    let mut grid = vec![0.0, 0.25];
    grid.extend((0..25).map(|k| 0.5 + 0.02 * f64::from(k)));
    grid.extend((0..10).map(|k| 1.0 + 0.1 * f64::from(k)));
    grid.extend([2.0, 3.0, 4.0, 8.0, 64.0]);
    let mut cfg = FrontierConfig::new(2, 4);
    cfg.lambda_grid = grid;
    cfg.restarts = 2;
    cfg.seed = 7;
    let res = trace_frontier(&rho, &cfg).unwrap();

    let mut worst_gap = f64::NEG_INFINITY;
    let mut failed = Vec::new();
    for (name, r1, r2) in &oracle {
        if !res.dominates(*r2, *r1, 1e-3) {
            failed.push(name.clone());
        }
        // weighted-sum form of the same statement, per lambda
        for p in &res.points {
            let gap = (p.r2 + p.lambda * p.r1) - (r2 + p.lambda * r1);
            worst_gap = worst_gap.max(gap);
        }
    }
    let ok = failed.is_empty() && worst_gap <= 1e-3;
    let detail = if failed.is_empty() {
        format!("{} oracle points dominated, worst weighted-sum gap {worst_gap:.1e}", oracle.len())
    } else {
        format!("not dominated: {}", failed.join(", "))
    };
    outcome(ok, detail)
}

fn ri_certificate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let layout = SystemLayout::new(["A", "B", "R"], &[2, 2, 2]).unwrap();
    let states: Vec<AnyState> = (0..50).map(|_| AnyState::Pure(random_pure(layout.clone(), &mut rng))).collect();
    let (target, steps) = merging_certificate(false);
    let good = certify(&target, &steps, &states, &Bindings::new(), true).unwrap();
    let (target, steps) = merging_certificate(true);
    let bad = certify(&target, &steps, &states, &Bindings::new(), true).unwrap();
    outcome(
        good.passed && good.max_residual <= 1e-8 && !bad.passed && bad.max_residual > 1e-2,
        format!("canonical residual {:.1e}, corrupted residual {:.3}", good.max_residual, bad.max_residual),
    )
}

const MALFORMED: [&str; 20] = [
    "",
    "   ",
    "H(A) [qq]",
    "[qq] >=",
    "H(A [qq] >= 0",
    "H(A)) [qq] >= 0",
    "H(a) [qq] >= 0",
    "H(A) [xx] >= 0",
    "H(A) [qq] > 0",
    "[qq] >= <psi",
    "I(A) [qq] >= 0",
    "I(A;) [qq] >= 0",
    "H(A|) [qq] >= 0",
    "H() [qq] >= 0",
    "2 * [qq] >= 0",
    "[qq] + >= 0",
    "[qq] >= 0 0",
    "$ [qq] >= 0",
    "H(A) [qq] >= [q->q] [c->c]",
    "(H(A) [qq] >= 0",
];

fn parser_corpus() -> Outcome {
    let printed = [
        builtin("schumacher").unwrap(),
        builtin("ea_capacity").unwrap(),
        builtin("merging").unwrap(),
        builtin("fqsw").unwrap(),
        builtin("qrst").unwrap(),
    ];
    let round_trips = printed.iter().filter(|ri| parse(&ri.to_string()).as_ref() == Ok(ri)).count();
    let mut positioned = 0;
    let mut exit_two = 0;
    for bad in MALFORMED {
        if parse(bad).is_err() {
            positioned += 1;
        }
        let out = qhelper(&["ri", "--text", bad], None);
        let stderr = String::from_utf8_lossy(&out.stderr);
        if out.status.code() == Some(2) && stderr.contains("syntax error at byte") && out.stdout.is_empty() {
            exit_two += 1;
        }
    }
    outcome(
        round_trips == 5 && positioned == MALFORMED.len() && exit_two == MALFORMED.len(),
        format!(
            "{round_trips}/5 round-trip, {positioned}/{n} rejected, {exit_two}/{n} exit 2 with byte offset",
            n = MALFORMED.len()
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut runs = Vec::new();
    for (i, threads) in [(0, "1"), (1, "2"), (2, "1")] {
        let json = dir.path().join(format!("run{i}.json"));
        let csv = dir.path().join(format!("run{i}.csv"));
        let base = [
            "frontier",
            "--state",
            "isotropic:0.75",
            "--dim-c",
            "2",
            "--dim-e",
            "2",
            "--lambdas",
            "0,0.5,1,4",
            "--restarts",
            "3",
            "--seed",
            "11",
        ];
        let a = qhelper(&[&base[..], &["--out", json.to_str().unwrap()]].concat(), Some(threads));
        let b = qhelper(&[&base[..], &["--format", "csv", "--out", csv.to_str().unwrap()]].concat(), Some(threads));
        let hull = dir.path().join(format!("run{i}.hull.dat"));
        if !a.status.success() || !b.status.success() {
            return outcome(false, format!("run {i} exited with {:?}/{:?}", a.status.code(), b.status.code()));
        }
        let read = |p: &std::path::Path| std::fs::read(p).unwrap();
        runs.push((read(&json), read(&csv), read(&hull)));
    }
    let same = runs.windows(2).all(|w| w[0] == w[1]);
    outcome(same, format!("{} runs (1 and 2 threads), json/csv/hull byte-identical: {same}", runs.len()))
}

fn main() {
    let instances = random_instances();
    let checks: Vec<Check> = vec![
        ("1 entropy suite", Box::new(entropy_suite)),
        ("2 rate anchors", Box::new(rate_anchors)),
        ("3 entropy decomposition of H(C)", Box::new(|| discussion_identity(&instances))),
        ("4 direct part matches rates", Box::new(|| direct_part(&instances))),
        ("5 converse audit n=2", Box::new(converse)),
        ("6 Bell frontier endpoints", Box::new(bell_endpoints)),
        ("7 isotropic frontier dominance", Box::new(isotropic_dominance)),
        ("8 merging certificate", Box::new(ri_certificate)),
        ("9 parser corpus", Box::new(parser_corpus)),
        ("10 frontier determinism", Box::new(determinism)),
    ];
    let mut failures = 0;
    for (name, check) in &checks {
        let o = check();
        if !o.passed {
            failures += 1;
        }
        println!("[{}] {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {}/{} passed", checks.len() - failures, checks.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
