//! Deterministic instance generation.
//!
//! Three families:
//!
//! * `Exhaustive` enumerates every (probe, carrier, add, mul) combination
//!   for spaces of up to two points. At three points the full table space is
//!   out of reach (19683 tables per operation squared, per probe and
//!   carrier), so the sweep restricts both tables to the globally
//!   commutative and associative ones and takes one canonical probe per
//!   feature partition; two-point spaces stay fully unrestricted.
//! * `Modular` produces mod-n tables with probe `i mod k` for divisors `k`
//!   of `n`. A canonical full-carrier pass over every `(n, k)` comes first,
//!   then seeded sampling over subgroup-like carriers (subgroups, subgroups
//!   with an element added or removed, random subsets).
//! * `Random` rejection-samples arbitrary probes and tables, keeping only
//!   instances whose flags form an approximately ring; attempts are capped
//!   and reported.
//!
//! Identical parameters always produce the identical ordered stream.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::space::{DescriptiveSpace, PointSet, MAX_POINTS};
use crate::structures::{AlgebraInstance, OpTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    Exhaustive,
    Modular,
    Random,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Exhaustive => write!(f, "exhaustive"),
            Family::Modular => write!(f, "modular"),
            Family::Random => write!(f, "random"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(Family::Exhaustive),
            "modular" => Ok(Family::Modular),
            "random" | "random-tables" => Ok(Family::Random),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub family: Family,
    pub n_min: usize,
    pub n_max: usize,
    /// Number of distinct feature values probes may draw from.
    pub alphabet: u32,
    /// Stream length for the sampled families; ignored by `Exhaustive`.
    pub samples: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            family: Family::Modular,
            n_min: 2,
            n_max: 8,
            alphabet: 3,
            samples: 100,
            seed: 0,
        }
    }
}

/// How large a `Random`-family search may get before giving up.
const RANDOM_ATTEMPT_FACTOR: u64 = 200;

/// Exhaustive enumeration cap; the table space explodes beyond this.
pub const EXHAUSTIVE_MAX_POINTS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct GenStats {
    pub produced: u64,
    /// Candidate instances examined; differs from `produced` only for the
    /// rejection-sampled `Random` family.
    pub attempts: u64,
}

fn validate(params: &GenParams) -> Result<()> {
    if params.n_min == 0 || params.n_min > params.n_max {
        return Err(AlgebraError::InfeasibleParams {
            reason: format!(
                "point range {}..={} is empty or zero-based",
                params.n_min, params.n_max
            ),
        });
    }
    if params.n_max > MAX_POINTS {
        return Err(AlgebraError::InfeasibleParams {
            reason: format!(
                "{} points exceeds the supported maximum {MAX_POINTS}",
                params.n_max
            ),
        });
    }
    if params.alphabet == 0 {
        return Err(AlgebraError::InfeasibleParams {
            reason: "alphabet must be nonempty".into(),
        });
    }
    if params.family == Family::Exhaustive && params.n_max > EXHAUSTIVE_MAX_POINTS {
        return Err(AlgebraError::InfeasibleParams {
            reason: format!(
                "exhaustive enumeration is limited to {EXHAUSTIVE_MAX_POINTS} points, got {}",
                params.n_max
            ),
        });
    }
    Ok(())
}

/// Streams the family through a callback and reports production counts.
pub fn generate_with(
    params: &GenParams,
    mut sink: impl FnMut(AlgebraInstance),
) -> Result<GenStats> {
    validate(params)?;
    let mut stats = GenStats::default();
    let mut emit = |inst: AlgebraInstance, stats: &mut GenStats| {
        stats.produced += 1;
        sink(inst);
    };
    match params.family {
        Family::Exhaustive => exhaustive(params, &mut emit, &mut stats),
        Family::Modular => modular(params, &mut emit, &mut stats),
        Family::Random => random(params, &mut emit, &mut stats),
    }
    if params.family != Family::Random {
        stats.attempts = stats.produced;
    }
    Ok(stats)
}

/// Materialized variant of [`generate_with`].
pub fn generate_instances(params: &GenParams) -> Result<(Vec<AlgebraInstance>, GenStats)> {
    let mut out = Vec::new();
    let stats = generate_with(params, |inst| out.push(inst))?;
    Ok((out, stats))
}

type Emit<'a> = dyn FnMut(AlgebraInstance, &mut GenStats) + 'a;

fn nonempty_subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (1..(1u64 << n)).map(PointSet::from_mask)
}

fn exhaustive(params: &GenParams, emit: &mut Emit, stats: &mut GenStats) {
    for n in params.n_min..=params.n_max.min(EXHAUSTIVE_MAX_POINTS) {
        if n <= 2 {
            exhaustive_small(n, params.alphabet, emit, stats);
        } else {
            exhaustive_three(params.alphabet, emit, stats);
        }
    }
}

/// Every probe function, carrier, and table pair. Only feasible for n <= 2.
fn exhaustive_small(n: usize, alphabet: u32, emit: &mut Emit, stats: &mut GenStats) {
    let n_probes = (alphabet as u64).pow(n as u32);
    let n_tables = (n as u64).pow((n * n) as u32);
    for probe_idx in 0..n_probes {
        let mut values = Vec::with_capacity(n);
        let mut rest = probe_idx;
        for _ in 0..n {
            values.push((rest % alphabet as u64) as i64);
            rest /= alphabet as u64;
        }
        let space = DescriptiveSpace::from_scalar_probe(&values).expect("valid probe");
        for carrier in nonempty_subsets(n) {
            for add_idx in 0..n_tables {
                let add = decode_table(n, add_idx);
                for mul_idx in 0..n_tables {
                    let mul = decode_table(n, mul_idx);
                    let inst = AlgebraInstance::new(space.clone(), add.clone(), mul, carrier)
                        .expect("enumerated instances are structurally valid");
                    emit(inst, stats);
                }
            }
        }
    }
}

fn decode_table(n: usize, mut idx: u64) -> OpTable {
    let mut entries = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        entries.push((idx % n as u64) as usize);
        idx /= n as u64;
    }
    OpTable::new(n, entries).expect("decoded table is total")
}

/// Canonical probes (one per feature partition with at most `alphabet`
/// classes) crossed with every pair of commutative associative tables.
fn exhaustive_three(alphabet: u32, emit: &mut Emit, stats: &mut GenStats) {
    let n = 3usize;
    let tables = commutative_associative_tables(n);
    for probe in canonical_partitions(n, alphabet as usize) {
        let space = DescriptiveSpace::from_scalar_probe(&probe).expect("valid probe");
        for carrier in nonempty_subsets(n) {
            for add in &tables {
                for mul in &tables {
                    let inst =
                        AlgebraInstance::new(space.clone(), add.clone(), mul.clone(), carrier)
                            .expect("enumerated instances are structurally valid");
                    emit(inst, stats);
                }
            }
        }
    }
}

/// First-occurrence labelings `f(0)=0, f(i) <= max(f(0..i))+1` with at most
/// `max_classes` distinct values.
fn canonical_partitions(n: usize, max_classes: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![0i64; n];
    fn rec(
        i: usize,
        n: usize,
        max_seen: i64,
        max_classes: usize,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == n {
            out.push(current.clone());
            return;
        }
        for v in 0..=(max_seen + 1).min(max_classes as i64 - 1) {
            current[i] = v;
            rec(i + 1, n, max_seen.max(v), max_classes, current, out);
        }
    }
    rec(1, n, 0, max_classes, &mut current, &mut out);
    out
}

/// All commutative and associative tables on `n` points, ascending by the
/// upper-triangle encoding.
fn commutative_associative_tables(n: usize) -> Vec<OpTable> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; cells.len()];
    loop {
        let mut entries = vec![0usize; n * n];
        for (k, &(a, b)) in cells.iter().enumerate() {
            entries[a * n + b] = assignment[k];
            entries[b * n + a] = assignment[k];
        }
        let table = OpTable::new(n, entries).expect("total table");
        if table.is_associative() {
            out.push(table);
        }
        // Odometer over the upper triangle.
        let mut pos = cells.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            assignment[pos] += 1;
            if assignment[pos] < n {
                break;
            }
            assignment[pos] = 0;
        }
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn subgroup(n: usize, d: usize) -> PointSet {
    (0..n).step_by(d).collect()
}

fn modular(params: &GenParams, emit: &mut Emit, stats: &mut GenStats) {
    let mut canonical = Vec::new();
    for n in params.n_min..=params.n_max {
        for k in divisors(n) {
            canonical.push((n, k));
        }
    }
    let mut remaining = params.samples;
    for &(n, k) in canonical.iter().take(params.samples) {
        let inst = AlgebraInstance::modular(n, k).expect("modular instances are valid");
        emit(inst, stats);
        remaining -= 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..remaining {
        let n = rng.random_range(params.n_min..=params.n_max);
        let divs = divisors(n);
        let k = divs[rng.random_range(0..divs.len())];
        let carrier = sample_carrier(&mut rng, n, &divs);
        let inst = AlgebraInstance::modular_with_carrier(n, k, carrier)
            .expect("modular instances are valid");
        emit(inst, stats);
    }
}

/// Subgroup-like carrier sampling: mostly the full set and subgroups, with
/// occasional perturbed subgroups and arbitrary subsets.
fn sample_carrier(rng: &mut ChaCha8Rng, n: usize, divs: &[usize]) -> PointSet {
    let full = PointSet::full(n);
    match rng.random_range(0..8u32) {
        0..=2 => full,
        3 | 4 => subgroup(n, divs[rng.random_range(0..divs.len())]),
        5 => {
            let s = subgroup(n, divs[rng.random_range(0..divs.len())]);
            let extra = rng.random_range(0..n);
            s.with(extra)
        }
        6 => {
            let s = subgroup(n, divs[rng.random_range(0..divs.len())]);
            let members = s.to_vec();
            let mut t = s;
            t.remove(members[rng.random_range(0..members.len())]);
            if t.is_empty() {
                full
            } else {
                t
            }
        }
        _ => {
            let mask = rng.random::<u64>() & full.mask();
            if mask == 0 {
                full
            } else {
                PointSet::from_mask(mask)
            }
        }
    }
}

fn random(params: &GenParams, emit: &mut Emit, stats: &mut GenStats) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let budget = params.samples as u64 * RANDOM_ATTEMPT_FACTOR;
    let mut produced = 0usize;
    while produced < params.samples && stats.attempts < budget {
        stats.attempts += 1;
        let n = rng.random_range(params.n_min..=params.n_max);
        let values: Vec<i64> = (0..n)
            .map(|_| rng.random_range(0..params.alphabet) as i64)
            .collect();
        let space = DescriptiveSpace::from_scalar_probe(&values).expect("valid probe");
        let add = OpTable::from_fn(n, |_, _| rng.random_range(0..n)).expect("total table");
        let mul = OpTable::from_fn(n, |_, _| rng.random_range(0..n)).expect("total table");
        let full = PointSet::full(n);
        let mask = rng.random::<u64>() & full.mask();
        let carrier = if mask == 0 {
            full
        } else {
            PointSet::from_mask(mask)
        };
        let inst = AlgebraInstance::new(space, add, mul, carrier)
            .expect("random instances are structurally valid");
        if inst.flags().ring {
            produced += 1;
            emit(inst, stats);
        }
    }
}
