//! Acceptance suite: one pass/fail line per criterion, nonzero exit if any
//! criterion fails or overruns its time budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use symquandle::gaussian::{orbit_representatives, residue_properties, sampled_properties, SampleConfig, SignTable};
use symquandle::harness::{
    degenerate_f2_cubed, verify_degenerate_remark, verify_theorem1, z9_example_form, HarnessOptions, Verdict,
};
use symquandle::search::{linear_involutions_with_flags, DEFAULT_LINEAR_CAP};
use symquandle::{
    enumerate_good_involutions, enumerate_linear_good_involutions, FiniteQuandle, GramForm, LinearMap, Permutation,
    Ring, RingDescriptor, SymplecticQuandle,
};

type Outcome = Result<String, String>;

/// Name, check, time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn standard(desc: RingDescriptor, rank: usize) -> SymplecticQuandle {
    let ring = Ring::new(desc).unwrap();
    SymplecticQuandle::build(&GramForm::standard(&ring, rank).unwrap()).unwrap()
}

fn all_good(q: &FiniteQuandle) -> Vec<Permutation> {
    let e = enumerate_good_involutions(q, None);
    assert!(e.complete);
    e.involutions
}

fn only_identity() -> Outcome {
    for (name, desc) in [("F2^2", RingDescriptor::zmod(2)), ("F4^2", RingDescriptor::gf4())] {
        let started = Instant::now();
        let sq = standard(desc, 2);
        let found = all_good(sq.quandle());
        ensure(found == vec![Permutation::identity(sq.size())], || format!("{name}: got {} involutions", found.len()))?;
        ensure(started.elapsed() < Duration::from_secs(1), || format!("{name}: took {:?}", started.elapsed()))?;
    }
    Ok("F2^2 and F4^2 give exactly {id}".into())
}

fn none_with_hyperbolic_pair() -> Outcome {
    for (name, desc) in
        [("F3^2", RingDescriptor::zmod(3)), ("F5^2", RingDescriptor::zmod(5)), ("(Z/15)^2", RingDescriptor::zmod(15))]
    {
        let started = Instant::now();
        let sq = standard(desc, 2);
        ensure(sq.form().find_hyperbolic_pair().is_some(), || format!("{name}: no hyperbolic pair"))?;
        let found = all_good(sq.quandle());
        ensure(found.is_empty(), || format!("{name}: got {} involutions", found.len()))?;
        ensure(started.elapsed() < Duration::from_secs(5), || format!("{name}: took {:?}", started.elapsed()))?;
    }
    Ok("F3^2, F5^2, (Z/15)^2 give the empty set".into())
}

fn z9_example() -> Outcome {
    let form = z9_example_form().unwrap();
    let ring = form.ring().clone();
    ensure(form.find_hyperbolic_pair().is_none(), || "hyperbolic pair found".into())?;
    let values: Vec<u32> = form.value_set().iter().map(|&v| ring.coeffs(v)[0] as u32).collect();
    ensure(values == [0, 3, 6], || format!("value set {values:?}"))?;
    let sq = SymplecticQuandle::build(&form).unwrap();
    let found = all_good(sq.quandle());
    ensure(found.is_empty(), || format!("got {} involutions", found.len()))?;
    Ok("no hyperbolic pair, values {0,3,6}, no good involution".into())
}

fn linear_good_involutions() -> Outcome {
    let mut gated = 0;
    for desc in [RingDescriptor::zmod(2), RingDescriptor::gf4(), RingDescriptor::zmod(3), RingDescriptor::zmod(5)] {
        let ring = Ring::new(desc.clone()).unwrap();
        let char2 = ring.characteristic() == 2;
        for c in ring.elements().filter(|&c| !ring.is_zero(c)) {
            let sq = SymplecticQuandle::build(&GramForm::scaled(&ring, 2, c).unwrap()).unwrap();
            let found = enumerate_linear_good_involutions(&sq, DEFAULT_LINEAR_CAP).unwrap();
            let name = format!("{}, c={}", desc.name(), ring.format(c));
            ensure(!found.is_empty() == char2, || format!("{name}: {} linear good involutions", found.len()))?;
            ensure(sq.quandle().is_kei() == char2, || format!("{name}: kei flag disagrees"))?;
            if char2 {
                ensure(found.contains(&LinearMap::identity(&ring, 2)), || format!("{name}: I missing"))?;
            }
            gated += 1;
        }
    }
    let report = verify_theorem1(&HarnessOptions::default()).unwrap();
    ensure(report.verdict == Verdict::ConfirmsPaper, || format!("harness verdict {:?}", report.verdict))?;
    ensure(report.instances.iter().all(|i| i.verdict != Verdict::ContradictsPaper), || "instance contradicts".into())?;
    Ok(format!("{gated} direct instances and the harness check agree"))
}

fn gaussian_suite() -> Outcome {
    let cfg = SampleConfig { samples: 10_000, coeff_bound: 50, seed: 0 };
    let sampled = sampled_properties(&SignTable::EVEN, cfg);
    let residue = residue_properties(&SignTable::EVEN);
    for t in sampled.iter().chain(&residue) {
        ensure(t.failures == 0, || format!("{}: {} failures, first {:?}", t.name, t.failures, t.first_failure))?;
    }
    ensure(sampled.iter().all(|t| t.checked > 0), || "an empty sub-suite".into())?;
    ensure(residue.iter().all(|t| t.checked == 80), || "residue checks did not cover 80 vectors".into())?;
    let reps = orbit_representatives();
    ensure(reps.len() == 20, || format!("{} orbits", reps.len()))?;
    for r in &reps {
        let mut members = r.orbit().to_vec();
        members.sort();
        members.dedup();
        ensure(members.len() == 4, || format!("orbit of {r} has {} members", members.len()))?;
    }
    Ok(format!("{} sampled and {} residue properties, zero failures", sampled.len(), residue.len()))
}

fn heap_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut items: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![items.clone()];
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            items.swap(if i % 2 == 0 { 0 } else { c[i] }, i);
            out.push(items.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

fn naive_filter(q: &FiniteQuandle) -> Vec<Vec<u32>> {
    let n = q.size() as u32;
    let mut out: Vec<Vec<u32>> = heap_permutations(q.size())
        .into_iter()
        .filter(|p| {
            let r = |x: u32| p[x as usize];
            (0..n).all(|x| r(r(x)) == x)
                && (0..n).all(|x| (0..n).all(|y| r(q.op(x, y)) == q.op(r(x), y)))
                && (0..n).all(|x| (0..n).all(|y| q.op(x, r(y)) == q.inv_op(x, y)))
        })
        .collect();
    out.sort();
    out
}

fn oracle_equivalence() -> Outcome {
    let f2 = Ring::new(RingDescriptor::zmod(2)).unwrap();
    let mut cases: Vec<(String, FiniteQuandle)> =
        (1..=6).map(|n| (format!("trivial-{n}"), FiniteQuandle::trivial(n))).collect();
    cases.push(("F2^2 standard".into(), standard(RingDescriptor::zmod(2), 2).quandle().clone()));
    cases.push(("F2^2 zero form".into(), SymplecticQuandle::build(&GramForm::zero(&f2, 2)).unwrap().quandle().clone()));
    cases.push(("F2^3 degenerate".into(), SymplecticQuandle::build(&degenerate_f2_cubed().unwrap()).unwrap().quandle().clone()));
    let adhoc = vec![vec![0, 0, 0, 0], vec![1, 1, 3, 2], vec![2, 3, 2, 1], vec![3, 2, 1, 3]];
    cases.push(("ad-hoc 4-element table".into(), FiniteQuandle::check(&adhoc).unwrap()));
    let dihedral5: Vec<Vec<u32>> = (0..5).map(|x| (0..5).map(|y| (2 * y + 5 - x) % 5).collect()).collect();
    cases.push(("dihedral-5".into(), FiniteQuandle::check(&dihedral5).unwrap()));
    for (name, q) in &cases {
        let pruned: Vec<Vec<u32>> = all_good(q).iter().map(|p| p.images().to_vec()).collect();
        let naive = naive_filter(q);
        ensure(pruned == naive, || format!("{name}: pruned {} vs naive {}", pruned.len(), naive.len()))?;
    }
    Ok(format!("{} quandles of size <= 8 match the N! filter", cases.len()))
}

/// Instances with at most 81 elements.
fn structural_instances() -> Vec<(String, SymplecticQuandle)> {
    let mut out: Vec<(String, SymplecticQuandle)> = [
        RingDescriptor::zmod(2),
        RingDescriptor::zmod(3),
        RingDescriptor::gf4(),
        RingDescriptor::zmod(4),
        RingDescriptor::zmod(5),
        RingDescriptor::zmod(7),
        RingDescriptor::quotient(2, vec![1, 1, 0, 1]),
        RingDescriptor::gf9(),
        RingDescriptor::zmod(9),
    ]
    .into_iter()
    .map(|d| (format!("{}^2 standard", d.name()), standard(d, 2)))
    .collect();
    out.push(("F2^4 standard".into(), standard(RingDescriptor::zmod(2), 4)));
    out.push(("F3^4 standard".into(), standard(RingDescriptor::zmod(3), 4)));
    out.push(("F2^3 degenerate".into(), SymplecticQuandle::build(&degenerate_f2_cubed().unwrap()).unwrap()));
    out.push(("(Z/9)^2 3(ad-bc)".into(), SymplecticQuandle::build(&z9_example_form().unwrap()).unwrap()));
    out
}

fn structural_suites() -> Outcome {
    let mut linear_checked = 0usize;
    for (name, sq) in structural_instances() {
        let q = sq.quandle();
        let ring = sq.form().ring().clone();
        let n = q.size() as u32;
        ensure(n <= 81, || format!("{name}: {n} elements"))?;
        FiniteQuandle::check(&q.op_table()).map_err(|e| format!("{name}: {e}"))?;
        for y in 0..n {
            let s = sq.right_translation(y);
            ensure(s.additive && s.homogeneous, || format!("{name}: s_{y} not linear"))?;
            ensure(s.permutation.inverse().images().iter().enumerate().all(|(x, &z)| q.op(z, y) == x as u32), || {
                format!("{name}: s_{y} inverse is wrong")
            })?;
        }
        for p in all_good(q) {
            ensure(q.is_antiautomorphism(&p), || format!("{name}: good involution not an antiautomorphism"))?;
        }
        let domain = ring.is_integral_domain();
        if domain && !q.is_trivial() {
            ensure(q.is_kei() == (ring.characteristic() == 2), || format!("{name}: kei vs characteristic"))?;
        }
        // The linear statements assume an integral domain; forms up to 2^16
        // matrices are scanned exhaustively.
        let scan = (ring.order() as u128).pow((sq.form().rank() * sq.form().rank()) as u32);
        if domain && scan <= 1 << 16 {
            for (a, flags) in linear_involutions_with_flags(&sq, DEFAULT_LINEAR_CAP).unwrap() {
                linear_checked += 1;
                if flags.condition1 {
                    ensure(flags.symplectic, || format!("{name}: condition 1 without <rx,ry> = <x,y>"))?;
                    for x in 0..n {
                        let rx = sq.index_of(&symquandle::ModuleVector::new(a.apply(sq.coords(x))));
                        ensure(ring.is_zero(sq.pairing(rx, x)), || format!("{name}: <rx,x> != 0"))?;
                    }
                }
                if flags.good {
                    ensure(flags.anti_symplectic, || format!("{name}: good without <rx,ry> = -<x,y>"))?;
                }
            }
        }
    }
    Ok(format!("{} instances, {linear_checked} linear involutions, zero violations", structural_instances().len()))
}

fn degenerate_remark() -> Outcome {
    let opts = HarnessOptions::default();
    let first = verify_degenerate_remark(&opts).unwrap().to_json();
    let second = verify_degenerate_remark(&opts).unwrap().to_json();
    ensure(first == second, || "report differs between runs".into())?;
    let result = &first["instances"][0]["result"];
    let count = result["count"].as_u64().unwrap_or(0);
    ensure(count > 1, || format!("count {count}"))?;
    ensure(result["complete"] == true, || "enumeration incomplete".into())?;
    let agreement = result["remark_agreement"].as_bool().ok_or("agreement flag missing")?;
    Ok(format!("count {count}, remark_agreement = {agreement}"))
}

fn determinism() -> Outcome {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_symquandle"))
            .args(["verify", "all", "--threads", threads])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("--threads {threads} exited with {}", out.status));
        }
        Ok(out.stdout)
    };
    let one = run("1")?;
    let eight = run("8")?;
    ensure(one == eight, || "outputs differ".into())?;
    Ok(format!("{} bytes, identical", one.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 only the identity in characteristic 2", only_identity, 2),
        ("2 none with a hyperbolic pair", none_with_hyperbolic_pair, 15),
        ("3 Z/9 example", z9_example, 30),
        ("4 linear good involutions", linear_good_involutions, 10),
        ("5 Gaussian property suite", gaussian_suite, 5),
        ("6 enumerator oracle equivalence", oracle_equivalence, 10),
        ("7 structural property suites", structural_suites, 60),
        ("8 degenerate remark report", degenerate_remark, 30),
        ("9 thread-count determinism", determinism, 120),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let started = Instant::now();
        let outcome = run();
        let elapsed = started.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > Duration::from_secs(budget) => Err(format!("{msg}, but took {elapsed:?} > {budget} s")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({:.2} s)", elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({:.2} s)", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
