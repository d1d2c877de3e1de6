//! Named checks that rebuild each result on concrete instances and report
//! the evidence alongside a verdict.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::freemod::GramForm;
use crate::gaussian::{self, residue_properties, sampled_properties, SampleConfig, SignTable};
use crate::quandle::Permutation;
use crate::ring::{Ring, RingDescriptor};
use crate::search::{self, enumerate_good_involutions, is_good_involution, LinearMap, DEFAULT_LINEAR_CAP};
use crate::symplectic::{is_trivial_symplectic, nontriviality_witness, SymplecticQuandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ConfirmsPaper,
    ContradictsPaper,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConfirmsPaper => "CONFIRMS_PAPER",
            Verdict::ContradictsPaper => "CONTRADICTS_PAPER",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        }
    }

    fn from_holds(holds: bool) -> Self {
        if holds {
            Verdict::ConfirmsPaper
        } else {
            Verdict::ContradictsPaper
        }
    }

    /// Any contradiction wins; otherwise any confirmation; otherwise N/A.
    fn combine(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        let mut out = Verdict::NotApplicable;
        for v in verdicts {
            match v {
                Verdict::ContradictsPaper => return v,
                Verdict::ConfirmsPaper => out = v,
                Verdict::NotApplicable => {}
            }
        }
        out
    }
}

/// One instance inside a check.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceReport {
    pub instance: Value,
    pub hypotheses: Value,
    pub result: Value,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub instances: Vec<InstanceReport>,
    pub verdict: Verdict,
    /// Wall-clock milliseconds; only filled when timing was requested so
    /// that default output is reproducible byte for byte.
    pub timing: Option<f64>,
}

impl VerificationReport {
    fn new(check_name: &str, instances: Vec<InstanceReport>, started: Instant, opts: &HarnessOptions) -> Self {
        let verdict = Verdict::combine(instances.iter().map(|i| i.verdict));
        VerificationReport {
            check_name: check_name.to_string(),
            instances,
            verdict,
            timing: opts.timing.then(|| started.elapsed().as_secs_f64() * 1000.0),
        }
    }

    /// JSON with object keys sorted.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Knobs shared by all checks.
#[derive(Debug, Clone)]
pub struct HarnessOptions {
    pub rings: Vec<RingDescriptor>,
    pub gaussian: SampleConfig,
    pub limit: Option<usize>,
    pub timing: bool,
}

impl Default for HarnessOptions {
    fn default() -> Self {
        HarnessOptions {
            rings: default_rings(),
            gaussian: SampleConfig::default(),
            limit: None,
            timing: false,
        }
    }
}

/// `F_2, F_3, F_4, F_5, F_9, Z/9Z, Z/15Z`.
pub fn default_rings() -> Vec<RingDescriptor> {
    vec![
        RingDescriptor::zmod(2),
        RingDescriptor::zmod(3),
        RingDescriptor::gf4(),
        RingDescriptor::zmod(5),
        RingDescriptor::gf9(),
        RingDescriptor::zmod(9),
        RingDescriptor::zmod(15),
    ]
}

/// Check names accepted by [`run_check`], in `all` order.
pub const CHECK_NAMES: [&str; 6] = ["theorem1", "theorem2", "theorem3", "example-z9", "gaussian", "degenerate-remark"];

pub fn run_check(name: &str, opts: &HarnessOptions) -> Option<Result<VerificationReport>> {
    Some(match name {
        "theorem1" => verify_theorem1(opts),
        "theorem2" => verify_theorem2(opts),
        "theorem3" => verify_theorem3(opts),
        "example-z9" => verify_example_z9(opts),
        "gaussian" => Ok(verify_gaussian(opts)),
        "degenerate-remark" => verify_degenerate_remark(opts),
        _ => return None,
    })
}

pub fn run_all(opts: &HarnessOptions) -> Result<Vec<VerificationReport>> {
    CHECK_NAMES.iter().map(|n| run_check(n, opts).expect("known check")).collect()
}

fn instance_json(form: &GramForm, label: &str) -> Value {
    let ring = form.ring();
    let gram: Vec<Vec<String>> = form
        .rows()
        .iter()
        .map(|row| row.iter().map(|&e| ring.format(e)).collect())
        .collect();
    json!({
        "label": label,
        "ring": ring.descriptor(),
        "ring_name": ring.descriptor().name(),
        "rank": form.rank(),
        "gram": gram,
    })
}

fn hypotheses_json(form: &GramForm) -> Value {
    let ring = form.ring();
    let module = form.module();
    let pair = form
        .find_hyperbolic_pair()
        .map(|(e, f)| json!([module.format(&e), module.format(&f)]));
    let witness = nontriviality_witness(form).map(|(x, y)| json!([module.format(&x), module.format(&y)]));
    json!({
        "characteristic": ring.characteristic(),
        "integral_domain": ring.is_integral_domain(),
        "nondegenerate": form.is_nondegenerate(),
        "unimodular": form.is_unimodular(),
        "determinant": ring.format(form.determinant()),
        "hyperbolic_pair": pair,
        "nontrivial": witness.is_some(),
        "nontriviality_witness": witness,
    })
}

fn involutions_json(sq: &SymplecticQuandle, list: &[Permutation]) -> Vec<String> {
    list.iter().map(|p| p.cycle_notation(sq.quandle().labels())).collect()
}

fn standard_instance(desc: &RingDescriptor) -> Result<GramForm> {
    GramForm::standard(&Ring::new(desc.clone())?, 2)
}

/// Over each integral domain and every nonzero multiple `c` of the standard
/// rank-2 form: linear good involutions exist ⇔ kei ⇔ characteristic 2.
pub fn verify_theorem1(opts: &HarnessOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut instances = Vec::new();
    for desc in &opts.rings {
        let ring = Ring::new(desc.clone())?;
        let domain = ring.is_integral_domain();
        let scalars: Vec<_> = if domain { ring.elements().skip(1).collect() } else { vec![ring.one()] };
        for c in scalars {
            let form = GramForm::scaled(&ring, 2, c)?;
            let scalar = ring.format(c);
            let scalar = if scalar.contains('+') { format!("({scalar})") } else { scalar };
            let label = format!("{}^2, {scalar}·standard", desc.name());
            let nontrivial = !is_trivial_symplectic(&form);
            let mut hypotheses = hypotheses_json(&form);
            hypotheses["gate"] = json!({ "integral_domain": domain, "nontrivial": nontrivial });
            if !(domain && nontrivial) {
                instances.push(InstanceReport {
                    instance: instance_json(&form, &label),
                    hypotheses,
                    result: json!(null),
                    verdict: Verdict::NotApplicable,
                });
                continue;
            }
            let sq = SymplecticQuandle::build(&form)?;
            let found = search::enumerate_linear_good_involutions(&sq, DEFAULT_LINEAR_CAP)?;
            let exists = !found.is_empty();
            let kei = sq.quandle().is_kei();
            let char2 = ring.characteristic() == 2;
            let contains_identity = found.contains(&LinearMap::identity(&ring, 2));
            let holds = exists == kei && kei == char2 && (!char2 || contains_identity);
            instances.push(InstanceReport {
                instance: instance_json(&form, &label),
                hypotheses,
                result: json!({
                    "linear_good_involutions": found.iter().map(LinearMap::format_rows).collect::<Vec<_>>(),
                    "count": found.len(),
                    "contains_identity": contains_identity,
                    "kei": kei,
                    "characteristic_2": char2,
                    "non_kei_witness": sq.quandle().non_kei_witness().map(|(x, y)| [sq.quandle().label(x), sq.quandle().label(y)]),
                }),
                verdict: Verdict::from_holds(holds),
            });
        }
    }
    Ok(VerificationReport::new("theorem1", instances, started, opts))
}

/// Characteristic 2, integral domain, nondegenerate, nontrivial: the only
/// good involution is the identity.
pub fn verify_theorem2(opts: &HarnessOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut forms = Vec::new();
    for desc in &opts.rings {
        let form = standard_instance(desc)?;
        forms.push((format!("{}^2, standard", desc.name()), form));
    }
    forms.push(("(Z/2Z)^3, degenerate rank-2 form".to_string(), degenerate_f2_cubed()?));

    let mut instances = Vec::new();
    for (label, form) in forms {
        let ring = form.ring();
        let gate = ring.characteristic() == 2
            && ring.is_integral_domain()
            && form.is_nondegenerate()
            && !is_trivial_symplectic(&form);
        let hypotheses = hypotheses_json(&form);
        // The degenerate instance is reported even though it is gated out.
        let report_anyway = form.rank() == 3;
        let (result, verdict) = if gate || report_anyway {
            let sq = SymplecticQuandle::build(&form)?;
            let e = enumerate_good_involutions(sq.quandle(), opts.limit);
            let only_identity = e.complete && e.involutions == vec![Permutation::identity(sq.size())];
            let result = json!({
                "good_involutions": involutions_json(&sq, &e.involutions),
                "count": e.involutions.len(),
                "complete": e.complete,
                "only_identity": only_identity,
            });
            (result, if gate { Verdict::from_holds(only_identity) } else { Verdict::NotApplicable })
        } else {
            (json!(null), Verdict::NotApplicable)
        };
        instances.push(InstanceReport { instance: instance_json(&form, &label), hypotheses, result, verdict });
    }
    Ok(VerificationReport::new("theorem2", instances, started, opts))
}

/// Characteristic not 2 and a hyperbolic pair: no good involutions.
pub fn verify_theorem3(opts: &HarnessOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut instances = Vec::new();
    for desc in &opts.rings {
        let form = standard_instance(desc)?;
        let label = format!("{}^2, standard", desc.name());
        let gate = form.ring().characteristic() != 2 && form.find_hyperbolic_pair().is_some();
        let hypotheses = hypotheses_json(&form);
        let (result, verdict) = if gate {
            let sq = SymplecticQuandle::build(&form)?;
            let e = enumerate_good_involutions(sq.quandle(), opts.limit);
            let empty = e.involutions.is_empty();
            let result = json!({
                "good_involutions": involutions_json(&sq, &e.involutions),
                "count": e.involutions.len(),
                "complete": e.complete,
            });
            (result, Verdict::from_holds(empty))
        } else {
            (json!(null), Verdict::NotApplicable)
        };
        instances.push(InstanceReport { instance: instance_json(&form, &label), hypotheses, result, verdict });
    }
    Ok(VerificationReport::new("theorem3", instances, started, opts))
}

/// `(Z/9Z)^2` with `<x,y> = 3(ad - bc)`, i.e. gram `[[0,3],[6,0]]`.
pub fn z9_example_form() -> Result<GramForm> {
    let ring = Ring::new(RingDescriptor::zmod(9))?;
    GramForm::from_matrix(&ring, vec![vec![ring.from_int(0), ring.from_int(3)], vec![ring.from_int(6), ring.from_int(0)]])
}

/// No hyperbolic pair, and yet no good involution.
pub fn verify_example_z9(opts: &HarnessOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let form = z9_example_form()?;
    let ring = form.ring().clone();
    let sq = SymplecticQuandle::build(&form)?;
    let e = enumerate_good_involutions(sq.quandle(), opts.limit);
    let values: Vec<String> = form.value_set().iter().map(|&v| ring.format(v)).collect();
    let no_pair = form.find_hyperbolic_pair().is_none();
    let values_ok = values == ["0", "3", "6"];
    let empty = e.involutions.is_empty();
    let result = json!({
        "hyperbolic_pair": null,
        "form_values": values,
        "form_values_are_multiples_of_3": values_ok,
        "good_involutions": involutions_json(&sq, &e.involutions),
        "count": e.involutions.len(),
        "complete": e.complete,
        "radical_size": form.radical().len(),
    });
    let instance = InstanceReport {
        instance: instance_json(&form, "(Z/9Z)^2, 3(ad-bc)"),
        hypotheses: hypotheses_json(&form),
        result,
        verdict: Verdict::from_holds(no_pair && values_ok && empty && e.complete),
    };
    Ok(VerificationReport::new("example-z9", vec![instance], started, opts))
}

/// Sampled and exhaustive checks of the good involution on `Z[i]^2`.
pub fn verify_gaussian(opts: &HarnessOptions) -> VerificationReport {
    let started = Instant::now();
    let cfg = opts.gaussian;
    let sampled = sampled_properties(&SignTable::EVEN, cfg);
    let residue = residue_properties(&SignTable::EVEN);
    let odd_residue = residue_properties(&SignTable::ODD);
    let odd_sampled = sampled_properties(&SignTable::ODD, SampleConfig { samples: cfg.samples.min(1000), ..cfg });
    let failures: u64 = sampled.iter().chain(&residue).map(|t| t.failures).sum();
    let det = gaussian::gauss_form_determinant();
    let result = json!({
        "samples": cfg.samples,
        "coeff_bound": cfg.coeff_bound,
        "seed": cfg.seed,
        "sampled": sampled,
        "residue": residue,
        "orbit_count": gaussian::orbit_representatives().len(),
        "failures": failures,
        "sign_table": "sigma(s)=i, sigma(-s)=i, sigma(is)=-i, sigma(-is)=-i",
        "odd_sign_table": {
            "table": "sigma(s)=i, sigma(-s)=-i, sigma(is)=-i, sigma(-is)=i",
            "residue": odd_residue,
            "sampled": odd_sampled,
        },
    });
    let instance = InstanceReport {
        instance: json!({
            "label": "Z[i]^2, 3(ad-bc)",
            "ring_name": "Z[i]",
            "rank": 2,
            "gram": [["0", "3"], ["-3", "0"]],
        }),
        hypotheses: json!({
            "integral_domain": true,
            "nondegenerate": !det.is_zero(),
            "unimodular": det.is_unit(),
            "determinant": det.to_string(),
        }),
        result,
        verdict: Verdict::from_holds(failures == 0),
    };
    VerificationReport::new("gaussian", vec![instance], started, opts)
}

/// `F_2^3` with the standard form on the first two coordinates and radical
/// spanned by the third.
pub fn degenerate_f2_cubed() -> Result<GramForm> {
    let ring = Ring::new(RingDescriptor::zmod(2))?;
    let (o, l) = (ring.zero(), ring.one());
    GramForm::from_matrix(&ring, vec![vec![o, l, o], vec![l, o, o], vec![o, o, o]])
}

/// All involutions of `0..n` fixing every element of `fixed`, in
/// lexicographic order of image arrays.
pub fn involutions_fixing(n: usize, fixed: &[u32]) -> Vec<Permutation> {
    let free: Vec<u32> = (0..n as u32).filter(|x| !fixed.contains(x)).collect();
    let mut out = Vec::new();
    let mut images: Vec<u32> = (0..n as u32).collect();
    fn rec(free: &[u32], used: &mut Vec<bool>, images: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        let Some(pos) = free.iter().position(|&x| !used[x as usize]) else {
            out.push(Permutation::new(images.clone()).expect("involution"));
            return;
        };
        let x = free[pos];
        used[x as usize] = true;
        // Fixed point first, then partners in increasing order.
        images[x as usize] = x;
        rec(free, used, images, out);
        for &z in &free[pos + 1..] {
            if used[z as usize] {
                continue;
            }
            used[z as usize] = true;
            images[x as usize] = z;
            images[z as usize] = x;
            rec(free, used, images, out);
            images[z as usize] = z;
            used[z as usize] = false;
        }
        images[x as usize] = x;
        used[x as usize] = false;
    }
    let mut used = vec![false; n];
    rec(&free, &mut used, &mut images, &mut out);
    out.sort();
    out
}

/// Enumerates good involutions of the degenerate `F_2^3` quandle and tests
/// whether every involution fixing the complement `W = span(e1, e2)`
/// pointwise is good.
pub fn verify_degenerate_remark(opts: &HarnessOptions) -> Result<VerificationReport> {
    let started = Instant::now();
    let form = degenerate_f2_cubed()?;
    let module = form.module();
    let sq = SymplecticQuandle::build(&form)?;
    let q = sq.quandle();
    let e = enumerate_good_involutions(q, opts.limit);

    let radical: Vec<String> = form.radical().iter().map(|v| module.format(v)).collect();
    let complement: Vec<u32> = (0..sq.size() as u32)
        .filter(|&x| sq.coords(x)[2] == form.ring().zero())
        .collect();
    let family = involutions_fixing(sq.size(), &complement);
    let failing: Vec<&Permutation> = family.iter().filter(|p| !is_good_involution(q, p)).collect();
    let agreement = failing.is_empty();
    let contains_identity = e.involutions.contains(&Permutation::identity(sq.size()));
    let result = json!({
        "good_involutions": involutions_json(&sq, &e.involutions),
        "count": e.involutions.len(),
        "complete": e.complete,
        "contains_identity": contains_identity,
        "radical": radical,
        "complement": complement.iter().map(|&x| q.label(x)).collect::<Vec<_>>(),
        "family_size": family.len(),
        "family_good": family.len() - failing.len(),
        "remark_agreement": agreement,
        "first_counterexample": failing.first().map(|p| p.cycle_notation(q.labels())),
    });
    let instance = InstanceReport {
        instance: instance_json(&form, "(Z/2Z)^3, degenerate rank-2 form"),
        hypotheses: hypotheses_json(&form),
        result,
        // The remark's claim is recorded, not asserted; the verdict covers
        // the identity being good and more than one good involution existing.
        verdict: Verdict::from_holds(contains_identity && e.involutions.len() > 1),
    };
    Ok(VerificationReport::new("degenerate-remark", vec![instance], started, opts))
}

/// Fixed-width text rendering of a list of reports.
pub fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = format!("{:<20} {:<42} {:<18}\n", "check", "instance", "verdict");
    out.push_str(&"-".repeat(82));
    out.push('\n');
    for r in reports {
        for inst in &r.instances {
            let label = inst.instance["label"].as_str().unwrap_or("");
            out.push_str(&format!("{:<20} {:<42} {:<18}\n", r.check_name, label, inst.verdict.as_str()));
        }
        let timing = r.timing.map(|t| format!(" ({t:.1} ms)")).unwrap_or_default();
        out.push_str(&format!("{:<20} {:<42} {:<18}{}\n", r.check_name, "=> overall", r.verdict.as_str(), timing));
    }
    out
}
