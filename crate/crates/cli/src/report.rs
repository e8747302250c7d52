//! Deterministic report rendering, human text and JSON.
//!
//! Reports never include timestamps or timings; identical inputs and flags
//! produce byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;

use proxring::error::AlgebraError;
use proxring::format::ParsedInstance;
use proxring::harness::{
    all_fixtures, generate_with, verify_counterexamples, FindingStatus, GenParams, GenStats,
    SuiteRunner, TheoremFinding, TheoremId, ALL_THEOREMS,
};
use proxring::ideals::{ClassificationReport, Verdict};
use proxring::quotient::QuotientStructure;
use proxring::structures::Witness;
use proxring::PointSet;

const VERSION: &str = env!("CARGO_PKG_VERSION");

fn names(parsed: &ParsedInstance, set: PointSet) -> Vec<String> {
    parsed.names_of(set)
}

fn name_list(parsed: &ParsedInstance, points: &[usize]) -> Vec<String> {
    points
        .iter()
        .map(|&i| parsed.point_name(i).to_string())
        .collect()
}

fn join(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

#[derive(Serialize)]
struct WitnessDto {
    points: Vec<String>,
    detail: String,
}

impl WitnessDto {
    fn of(parsed: &ParsedInstance, w: &Witness) -> Self {
        WitnessDto {
            points: name_list(parsed, &w.points),
            detail: w.detail.clone(),
        }
    }
}

#[derive(Serialize)]
struct VerdictDto {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl VerdictDto {
    fn of(parsed: &ParsedInstance, v: &Verdict) -> Self {
        match v {
            Verdict::Holds => VerdictDto {
                verdict: "holds",
                witness: None,
                reason: None,
            },
            Verdict::Fails(w) => VerdictDto {
                verdict: "fails",
                witness: Some(WitnessDto::of(parsed, w)),
                reason: None,
            },
            Verdict::NotApplicable(r) => VerdictDto {
                verdict: "not-applicable",
                witness: None,
                reason: Some(r.clone()),
            },
        }
    }
}

fn verdict_text(parsed: &ParsedInstance, v: &Verdict) -> String {
    match v {
        Verdict::Holds => "yes".to_string(),
        Verdict::Fails(w) => {
            if w.points.is_empty() {
                format!("no ({})", w.detail)
            } else {
                format!(
                    "no (witness ({}): {})",
                    name_list(parsed, &w.points).join(","),
                    w.detail
                )
            }
        }
        Verdict::NotApplicable(r) => format!("n/a ({r})"),
    }
}

pub fn check_structure(parsed: &ParsedInstance, machine: bool) -> String {
    let inst = &parsed.instance;
    let flags = inst.flags();

    #[derive(Serialize)]
    struct IdentityDto {
        #[serde(skip_serializing_if = "Option::is_none")]
        zero: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        one: Option<String>,
        neg: Vec<(String, String)>,
        units: Vec<String>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        notes: Vec<String>,
    }

    #[derive(Serialize)]
    struct StructureDto {
        kind: &'static str,
        version: &'static str,
        fingerprint: String,
        n_points: usize,
        carrier: Vec<String>,
        carrier_upper: Vec<String>,
        flags: std::collections::BTreeMap<String, bool>,
        witnesses: std::collections::BTreeMap<String, WitnessDto>,
        identities: IdentityDto,
    }

    let mut flag_map = std::collections::BTreeMap::new();
    let mut witness_map = std::collections::BTreeMap::new();
    for flag in [
        proxring::StructureFlag::GroupoidAdd,
        proxring::StructureFlag::SemigroupAdd,
        proxring::StructureFlag::GroupAdd,
        proxring::StructureFlag::AbelianAdd,
        proxring::StructureFlag::GroupoidMul,
        proxring::StructureFlag::SemigroupMul,
        proxring::StructureFlag::Ring,
        proxring::StructureFlag::Commutative,
        proxring::StructureFlag::HasUnity,
        proxring::StructureFlag::OpClosed,
        proxring::StructureFlag::UpperClosedAdd,
        proxring::StructureFlag::UpperClosedMul,
    ] {
        flag_map.insert(flag.to_string(), flags.get(flag));
        if let Some(w) = flags.witnesses.get(&flag) {
            witness_map.insert(flag.to_string(), WitnessDto::of(parsed, w));
        }
    }

    let mut notes = Vec::new();
    let zero = match inst.zero() {
        Ok(z) => Some(parsed.point_name(z).to_string()),
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let one = match inst.unity() {
        Ok(Some(u)) => Some(parsed.point_name(u).to_string()),
        Ok(None) => None,
        Err(e) => {
            notes.push(e.to_string());
            None
        }
    };
    let neg = match inst.neg_map() {
        Ok(map) => map
            .iter()
            .map(|(a, b)| {
                (
                    parsed.point_name(*a).to_string(),
                    parsed.point_name(*b).to_string(),
                )
            })
            .collect(),
        Err(e) => {
            notes.push(e.to_string());
            Vec::new()
        }
    };
    let units = match inst.units() {
        Ok(u) => names(parsed, u),
        Err(_) => Vec::new(),
    };

    let dto = StructureDto {
        kind: "check-structure",
        version: VERSION,
        fingerprint: inst.fingerprint(),
        n_points: inst.n_points(),
        carrier: names(parsed, inst.carrier()),
        carrier_upper: names(parsed, inst.carrier_upper()),
        flags: flag_map,
        witnesses: witness_map,
        identities: IdentityDto {
            zero,
            one,
            neg,
            units,
            notes,
        },
    };

    if machine {
        return serde_json::to_string_pretty(&dto).expect("serializable") + "\n";
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "instance {} ({} points)",
        dto.fingerprint, dto.n_points
    );
    let _ = writeln!(out, "carrier             = {}", join(&dto.carrier));
    let _ = writeln!(out, "upper approximation = {}", join(&dto.carrier_upper));
    for (name, value) in &dto.flags {
        let mark = if *value { "yes" } else { "no" };
        match dto.witnesses.get(name) {
            Some(w) => {
                let _ = writeln!(
                    out,
                    "{name:<18} {mark}  (witness ({}): {})",
                    w.points.join(","),
                    w.detail
                );
            }
            None => {
                let _ = writeln!(out, "{name:<18} {mark}");
            }
        }
    }
    match &dto.identities.zero {
        Some(z) => {
            let _ = writeln!(out, "zero = {z}");
        }
        None => {
            let _ = writeln!(out, "zero = (none)");
        }
    }
    match &dto.identities.one {
        Some(u) => {
            let _ = writeln!(out, "one  = {u}");
        }
        None => {
            let _ = writeln!(out, "one  = (none)");
        }
    }
    if !dto.identities.neg.is_empty() {
        let pairs: Vec<String> = dto
            .identities
            .neg
            .iter()
            .map(|(a, b)| format!("-{a}={b}"))
            .collect();
        let _ = writeln!(out, "negatives: {}", pairs.join(" "));
    }
    if !dto.identities.units.is_empty() {
        let _ = writeln!(out, "units = {}", join(&dto.identities.units));
    }
    for note in &dto.identities.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn classify(
    parsed: &ParsedInstance,
    ideal_name: &str,
    report: &ClassificationReport,
    machine: bool,
) -> String {
    #[derive(Serialize)]
    struct ClassifyDto {
        kind: &'static str,
        version: &'static str,
        fingerprint: String,
        ideal: String,
        members: Vec<String>,
        verdicts: std::collections::BTreeMap<&'static str, VerdictDto>,
        radical: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        p_primary_target: Option<Vec<String>>,
    }

    let mut verdicts = std::collections::BTreeMap::new();
    verdicts.insert("ideal", VerdictDto::of(parsed, &report.ideal));
    verdicts.insert("prime", VerdictDto::of(parsed, &report.prime));
    verdicts.insert("primary", VerdictDto::of(parsed, &report.primary));
    verdicts.insert("semi_primary", VerdictDto::of(parsed, &report.semi_primary));
    verdicts.insert(
        "one_absorbing",
        VerdictDto::of(parsed, &report.one_absorbing),
    );

    let dto = ClassifyDto {
        kind: "classify",
        version: VERSION,
        fingerprint: parsed.instance.fingerprint(),
        ideal: ideal_name.to_string(),
        members: names(parsed, parsed.ideals[ideal_name]),
        verdicts,
        radical: names(parsed, report.radical_members),
        p_primary_target: report.p_primary_target.map(|t| names(parsed, t)),
    };

    if machine {
        return serde_json::to_string_pretty(&dto).expect("serializable") + "\n";
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "ideal {} = {} in instance {}",
        dto.ideal,
        join(&dto.members),
        dto.fingerprint
    );
    let _ = writeln!(
        out,
        "ideal          {}",
        verdict_text(parsed, &report.ideal)
    );
    let _ = writeln!(
        out,
        "prime          {}",
        verdict_text(parsed, &report.prime)
    );
    let _ = writeln!(
        out,
        "primary        {}",
        verdict_text(parsed, &report.primary)
    );
    let _ = writeln!(
        out,
        "semi-primary   {}",
        verdict_text(parsed, &report.semi_primary)
    );
    let _ = writeln!(
        out,
        "1-absorbing    {}",
        verdict_text(parsed, &report.one_absorbing)
    );
    let _ = writeln!(out, "radical        {}", join(&dto.radical));
    if let Some(t) = &dto.p_primary_target {
        let _ = writeln!(out, "primary w.r.t. {}", join(t));
    }
    out
}

pub fn members(
    parsed: &ParsedInstance,
    kind: &'static str,
    label: &str,
    set: PointSet,
    machine: bool,
) -> String {
    #[derive(Serialize)]
    struct MembersDto {
        kind: &'static str,
        version: &'static str,
        fingerprint: String,
        of: String,
        members: Vec<String>,
    }
    let dto = MembersDto {
        kind,
        version: VERSION,
        fingerprint: parsed.instance.fingerprint(),
        of: label.to_string(),
        members: names(parsed, set),
    };
    if machine {
        serde_json::to_string_pretty(&dto).expect("serializable") + "\n"
    } else {
        format!("{kind} of {label} = {}\n", join(&dto.members))
    }
}

pub fn ideal_list(parsed: &ParsedInstance, ideals: &[PointSet], machine: bool) -> String {
    #[derive(Serialize)]
    struct IdealsDto {
        kind: &'static str,
        version: &'static str,
        fingerprint: String,
        count: usize,
        ideals: Vec<Vec<String>>,
    }
    let dto = IdealsDto {
        kind: "ideals",
        version: VERSION,
        fingerprint: parsed.instance.fingerprint(),
        count: ideals.len(),
        ideals: ideals.iter().map(|&s| names(parsed, s)).collect(),
    };
    if machine {
        serde_json::to_string_pretty(&dto).expect("serializable") + "\n"
    } else {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} ideal(s) in instance {}",
            dto.count, dto.fingerprint
        );
        for members in &dto.ideals {
            let _ = writeln!(out, "  {}", join(members));
        }
        out
    }
}

pub fn quotient(
    parsed: &ParsedInstance,
    ideal_name: &str,
    q: &QuotientStructure,
    machine: bool,
) -> String {
    #[derive(Serialize)]
    struct QuotientDto {
        kind: &'static str,
        version: &'static str,
        fingerprint: String,
        ideal: String,
        mode: String,
        well_defined: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<WitnessDto>,
        cosets: Vec<Vec<String>>,
        zero_cosets: Vec<usize>,
        coset_add: Vec<Vec<usize>>,
        coset_mul: Vec<Vec<usize>>,
        zero_divisors: Vec<usize>,
        nilpotent_cosets: Vec<usize>,
    }

    let nilpotent_cosets: Vec<usize> = (0..q.n_cosets())
        .filter(|&c| q.nilpotency(c).is_some())
        .collect();
    let dto = QuotientDto {
        kind: "quotient",
        version: VERSION,
        fingerprint: parsed.instance.fingerprint(),
        ideal: ideal_name.to_string(),
        mode: format!("{:?}", q.zero_test_mode).to_lowercase(),
        well_defined: q.well_defined,
        witness: q.witness.as_ref().map(|w| WitnessDto::of(parsed, w)),
        cosets: q.cosets.iter().map(|&c| names(parsed, c)).collect(),
        zero_cosets: q.zero_cosets.clone(),
        coset_add: q.coset_add.clone(),
        coset_mul: q.coset_mul.clone(),
        zero_divisors: q.zero_divisors(),
        nilpotent_cosets,
    };

    if machine {
        return serde_json::to_string_pretty(&dto).expect("serializable") + "\n";
    }

    let mut out = String::new();
    let _ = writeln!(
        out,
        "quotient by {} ({} mode): {} coset(s), well-defined: {}",
        dto.ideal,
        dto.mode,
        dto.cosets.len(),
        if dto.well_defined { "yes" } else { "no" }
    );
    if let Some(w) = &dto.witness {
        let _ = writeln!(
            out,
            "  issue (witness ({}): {})",
            w.points.join(","),
            w.detail
        );
    }
    for (i, members) in dto.cosets.iter().enumerate() {
        let mut tags = Vec::new();
        if dto.zero_cosets.contains(&i) {
            tags.push("zero");
        }
        if dto.zero_divisors.contains(&i) {
            tags.push("zero-divisor");
        }
        if dto.nilpotent_cosets.contains(&i) {
            tags.push("nilpotent");
        }
        let tag = if tags.is_empty() {
            String::new()
        } else {
            format!("  [{}]", tags.join(", "))
        };
        let _ = writeln!(out, "  coset {i}: {}{tag}", join(members));
    }
    out
}

#[derive(Serialize)]
struct ClaimSummary {
    theorem: TheoremId,
    confirmed: u64,
    counterexamples: u64,
    hypothesis_not_met: u64,
    /// First counterexamples in canonical order, capped.
    examples: Vec<TheoremFinding>,
}

#[derive(Serialize)]
struct SuiteDto<'a> {
    kind: &'static str,
    version: &'static str,
    params: &'a GenParams,
    generation: GenStats,
    fixtures: usize,
    claims: Vec<ClaimSummary>,
    replay_checked: usize,
    replay_failures: usize,
}

const EXAMPLE_CAP: usize = 25;

pub fn suite(
    params: &GenParams,
    selection: &[TheoremId],
    machine: bool,
) -> Result<String, AlgebraError> {
    let run_once = || -> Result<(Vec<TheoremFinding>, GenStats), AlgebraError> {
        let mut runner = SuiteRunner::new(selection);
        let mut findings = Vec::new();
        let mut sink = |f: TheoremFinding| findings.push(f);
        for (_, parsed) in all_fixtures() {
            runner.push(&parsed.instance, &mut sink);
        }
        let stats = generate_with(params, |inst| runner.push(&inst, &mut sink))?;
        findings.sort_by(|a, b| (&a.fingerprint, a.theorem).cmp(&(&b.fingerprint, b.theorem)));
        Ok((findings, stats))
    };

    let (findings, stats) = run_once()?;
    // Rebuild everything once more; every counterexample must re-derive.
    let (fresh, _) = run_once()?;
    let replay = verify_counterexamples(&fresh, &findings);

    let claims: Vec<ClaimSummary> = ALL_THEOREMS
        .iter()
        .filter(|t| selection.contains(t))
        .map(|&theorem| {
            let mut summary = ClaimSummary {
                theorem,
                confirmed: 0,
                counterexamples: 0,
                hypothesis_not_met: 0,
                examples: Vec::new(),
            };
            for f in findings.iter().filter(|f| f.theorem == theorem) {
                match f.status {
                    FindingStatus::Confirmed => summary.confirmed += 1,
                    FindingStatus::Counterexample => {
                        summary.counterexamples += 1;
                        // The stream may repeat an instance; keep one copy.
                        if summary.examples.len() < EXAMPLE_CAP && !summary.examples.contains(f) {
                            summary.examples.push(f.clone());
                        }
                    }
                    FindingStatus::HypothesisNotMet => summary.hypothesis_not_met += 1,
                }
            }
            summary
        })
        .collect();

    let dto = SuiteDto {
        kind: "suite",
        version: VERSION,
        params,
        generation: stats,
        fixtures: all_fixtures().len(),
        claims,
        replay_checked: replay.checked,
        replay_failures: replay.unreplayed.len(),
    };

    if machine {
        return Ok(serde_json::to_string_pretty(&dto).expect("serializable") + "\n");
    }

    let mut out = String::new();
    let _ = writeln!(out, "claim suite (tool {})", dto.version);
    let _ = writeln!(
        out,
        "family={} points={}..{} samples={} seed={}",
        params.family, params.n_min, params.n_max, params.samples, params.seed
    );
    let _ = writeln!(
        out,
        "instances: {} fixtures + {} generated ({} attempts)",
        dto.fixtures, dto.generation.produced, dto.generation.attempts
    );
    for c in &dto.claims {
        let _ = writeln!(
            out,
            "{:<8} confirmed={:<6} counterexamples={:<6} hypothesis-not-met={}",
            c.theorem.to_string(),
            c.confirmed,
            c.counterexamples,
            c.hypothesis_not_met
        );
    }
    let with_examples: Vec<&ClaimSummary> = dto
        .claims
        .iter()
        .filter(|c| !c.examples.is_empty())
        .collect();
    if !with_examples.is_empty() {
        let _ = writeln!(out, "counterexamples (up to {EXAMPLE_CAP} per claim):");
        for c in with_examples {
            for f in &c.examples {
                let w = f.witness.as_ref().expect("counterexamples carry witnesses");
                let sets: Vec<String> = w.ideals.iter().map(|s| s.to_string()).collect();
                let pts: Vec<String> = w.points.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "  {} on {}: sets [{}] points ({}) {}",
                    f.theorem,
                    f.fingerprint,
                    sets.join(" "),
                    pts.join(","),
                    w.note
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "replay: {} counterexample(s) checked, {} failed to re-derive",
        dto.replay_checked, dto.replay_failures
    );
    Ok(out)
}
