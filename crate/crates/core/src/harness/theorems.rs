//! The claim-checking suite.
//!
//! Each catalogued claim is evaluated per instance: hypotheses first, then
//! the conclusion over every qualifying ideal or tuple in canonical scan
//! order. The outcome is one finding per instance and claim with status
//! `CONFIRMED`, `COUNTEREXAMPLE` (carrying the first violating witness), or
//! `HYPOTHESIS-NOT-MET`. Evaluation is deterministic, so a counterexample
//! replays by rebuilding the instance and re-deriving the identical finding.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::ideals::{
    self, colon, enumerate_ideals, is_approx_ideal, product_instance, product_set, radical,
};
use crate::quotient::{quotient, ZeroTestMode};
use crate::space::PointSet;
use crate::structures::{AlgebraInstance, Checked};

/// Identifiers of the catalogued claims.
///
/// `ConvK` is an exploration entry (the converse of `ThmK`), not one of the
/// claims themselves; it is excluded from [`catalog_claims`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    ThmA,
    ThmB,
    ThmC,
    PropD,
    CorE,
    LemF,
    ThmG,
    PropH,
    ThmI,
    PropJ1,
    PropJ2,
    ThmK,
    ThmL,
    ThmM,
    ThmN,
    ConvK,
}

pub const ALL_THEOREMS: [TheoremId; 16] = [
    TheoremId::ThmA,
    TheoremId::ThmB,
    TheoremId::ThmC,
    TheoremId::PropD,
    TheoremId::CorE,
    TheoremId::LemF,
    TheoremId::ThmG,
    TheoremId::PropH,
    TheoremId::ThmI,
    TheoremId::PropJ1,
    TheoremId::PropJ2,
    TheoremId::ThmK,
    TheoremId::ThmL,
    TheoremId::ThmM,
    TheoremId::ThmN,
    TheoremId::ConvK,
];

/// The catalogued claims proper, without the exploration entry.
pub fn catalog_claims() -> Vec<TheoremId> {
    ALL_THEOREMS
        .iter()
        .copied()
        .filter(|t| *t != TheoremId::ConvK)
        .collect()
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TheoremId::ThmA => "THM-A",
            TheoremId::ThmB => "THM-B",
            TheoremId::ThmC => "THM-C",
            TheoremId::PropD => "PROP-D",
            TheoremId::CorE => "COR-E",
            TheoremId::LemF => "LEM-F",
            TheoremId::ThmG => "THM-G",
            TheoremId::PropH => "PROP-H",
            TheoremId::ThmI => "THM-I",
            TheoremId::PropJ1 => "PROP-J1",
            TheoremId::PropJ2 => "PROP-J2",
            TheoremId::ThmK => "THM-K",
            TheoremId::ThmL => "THM-L",
            TheoremId::ThmM => "THM-M",
            TheoremId::ThmN => "THM-N",
            TheoremId::ConvK => "CONV-K",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let up = s.to_ascii_uppercase();
        ALL_THEOREMS
            .iter()
            .copied()
            .find(|t| t.to_string() == up)
            .ok_or_else(|| format!("unknown claim id `{s}`"))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FindingStatus {
    Confirmed,
    Counterexample,
    HypothesisNotMet,
}

impl std::fmt::Display for FindingStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FindingStatus::Confirmed => write!(f, "CONFIRMED"),
            FindingStatus::Counterexample => write!(f, "COUNTEREXAMPLE"),
            FindingStatus::HypothesisNotMet => write!(f, "HYPOTHESIS-NOT-MET"),
        }
    }
}

impl Serialize for FindingStatus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which strata an instance belongs to, recorded on every finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StratumFlags {
    pub op_closed: bool,
    /// Multiplication associative on the whole point set.
    pub associative_mul: bool,
    pub injective_probe: bool,
    /// Both tables close the upper approximation of the carrier.
    pub upper_closed: bool,
}

impl StratumFlags {
    pub fn of(inst: &AlgebraInstance) -> Self {
        let f = inst.flags();
        StratumFlags {
            op_closed: f.op_closed,
            associative_mul: inst.mul_table().is_associative(),
            injective_probe: inst.space().injective_probe(),
            upper_closed: f.upper_closed_add && f.upper_closed_mul,
        }
    }

    /// Injective probe plus closed carrier: every approximate notion
    /// collapses to the textbook one.
    pub fn classical(&self) -> bool {
        self.injective_probe && self.op_closed
    }
}

/// Sets and points pinning down a violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FindingWitness {
    pub ideals: Vec<PointSet>,
    pub points: Vec<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremFinding {
    pub theorem: TheoremId,
    pub fingerprint: String,
    pub status: FindingStatus,
    pub witness: Option<FindingWitness>,
    /// Why hypotheses failed, or scope remarks for confirmations.
    pub note: String,
    pub stratum: StratumFlags,
}

/// Per-ideal data computed once per instance and shared by the claims.
struct IdealData {
    set: PointSet,
    upper: PointSet,
    prime: Checked,
    primary: Checked,
    radical: PointSet,
    radical_ideal: Checked,
    radical_prime: Option<Checked>,
    one_absorbing: Option<Checked>,
}

struct Ctx<'a> {
    inst: &'a AlgebraInstance,
    fingerprint: String,
    stratum: StratumFlags,
    ring: bool,
    ring_cu: bool,
    units_available: bool,
    /// None when ideals cannot be enumerated (missing identities or carrier
    /// too large); the note explains.
    ideals: Option<Vec<IdealData>>,
    enum_note: String,
}

impl<'a> Ctx<'a> {
    fn build(inst: &'a AlgebraInstance, with_one_absorbing: bool) -> Self {
        let fingerprint = inst.fingerprint();
        let stratum = StratumFlags::of(inst);
        let flags = inst.flags();
        let ring = flags.ring;
        let ring_cu = flags.commutative_ring_with_unity();
        let units = inst.units().ok();
        let units_available = units.is_some();

        let (ideals, enum_note) = match enumerate_ideals(inst) {
            Err(e) => (None, e.to_string()),
            Ok(sets) => {
                let data = sets
                    .into_iter()
                    .map(|set| {
                        let upper = inst.space().upper_approx(set);
                        let prime = ideals::prime_scan(inst, set, upper);
                        let primary = ideals::primary_scan(inst, set, upper);
                        let rad = radical(inst, set).expect("ideal lies in the carrier");
                        let radical_ideal =
                            is_approx_ideal(inst, rad).expect("radical lies in the carrier");
                        let radical_prime = radical_ideal
                            .holds
                            .then(|| ideals::prime_scan(inst, rad, inst.space().upper_approx(rad)));
                        let one_absorbing = match (&units, with_one_absorbing) {
                            (Some(u), true) => {
                                Some(ideals::one_absorbing_scan(inst, set, upper, *u, rad))
                            }
                            _ => None,
                        };
                        IdealData {
                            set,
                            upper,
                            prime,
                            primary,
                            radical: rad,
                            radical_ideal,
                            radical_prime,
                            one_absorbing,
                        }
                    })
                    .collect();
                (Some(data), String::new())
            }
        };
        Ctx {
            inst,
            fingerprint,
            stratum,
            ring,
            ring_cu,
            units_available,
            ideals,
            enum_note,
        }
    }

    fn finding(
        &self,
        theorem: TheoremId,
        status: FindingStatus,
        witness: Option<FindingWitness>,
        note: impl Into<String>,
    ) -> TheoremFinding {
        TheoremFinding {
            theorem,
            fingerprint: self.fingerprint.clone(),
            status,
            witness,
            note: note.into(),
            stratum: self.stratum,
        }
    }

    fn hypothesis_not_met(&self, theorem: TheoremId, note: impl Into<String>) -> TheoremFinding {
        self.finding(theorem, FindingStatus::HypothesisNotMet, None, note)
    }

    fn confirmed(&self, theorem: TheoremId, note: impl Into<String>) -> TheoremFinding {
        self.finding(theorem, FindingStatus::Confirmed, None, note)
    }

    fn counterexample(&self, theorem: TheoremId, witness: FindingWitness) -> TheoremFinding {
        self.finding(theorem, FindingStatus::Counterexample, Some(witness), "")
    }

    fn ideals(&self) -> Option<&[IdealData]> {
        self.ideals.as_deref()
    }
}

fn witness(ideals: Vec<PointSet>, points: Vec<usize>, note: impl Into<String>) -> FindingWitness {
    FindingWitness {
        ideals,
        points,
        note: note.into(),
    }
}

/// Evaluates one per-instance claim. `ThmN` is product-shaped and handled by
/// [`evaluate_product`] instead.
fn evaluate_theorem(ctx: &Ctx, id: TheoremId) -> TheoremFinding {
    let ideals = match ctx.ideals() {
        Some(list) => list,
        None => {
            return ctx.hypothesis_not_met(id, format!("ideals unavailable: {}", ctx.enum_note))
        }
    };
    match id {
        TheoremId::ThmA => {
            let mut any = false;
            for d in ideals.iter().filter(|d| d.prime.holds) {
                any = true;
                if !d.primary.holds {
                    let w = d.primary.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set],
                            w.points.clone(),
                            format!("prime but not primary: {}", w.detail),
                        ),
                    );
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no approximately prime ideal")
            }
        }
        TheoremId::ThmB => {
            if !ctx.ring {
                return ctx.hypothesis_not_met(id, "not an approximately ring");
            }
            let mut any = false;
            for d in ideals.iter().filter(|d| d.primary.holds) {
                let q = match quotient(ctx.inst, d.set, ZeroTestMode::Descriptive) {
                    Ok(q) => q,
                    Err(e) => return ctx.hypothesis_not_met(id, e.to_string()),
                };
                if !q.well_defined {
                    continue;
                }
                any = true;
                for zd in q.zero_divisors() {
                    if q.nilpotency(zd).is_none() {
                        let rep = q.cosets[zd].first().unwrap();
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![d.set, q.cosets[zd]],
                                vec![rep],
                                format!("coset of {rep} is a zero divisor of the quotient but not nilpotent"),
                            ),
                        );
                    }
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no primary ideal with a well-defined quotient")
            }
        }
        TheoremId::ThmC => {
            if !(ctx.ring && ctx.inst.flags().commutative && ctx.stratum.upper_closed) {
                return ctx.hypothesis_not_met(
                    id,
                    "needs a commutative ring whose carrier upper approximation is closed under both tables",
                );
            }
            if ideals.is_empty() {
                return ctx.hypothesis_not_met(id, "no approximately ideal");
            }
            for d in ideals {
                if !d.radical_ideal.holds {
                    let w = d.radical_ideal.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set, d.radical],
                            w.points.clone(),
                            format!("radical is not an ideal: {}", w.detail),
                        ),
                    );
                }
            }
            ctx.confirmed(id, "")
        }
        TheoremId::PropD => {
            if !ctx.ring {
                return ctx.hypothesis_not_met(id, "not an approximately ring");
            }
            let mut any = false;
            for d in ideals.iter().filter(|d| d.primary.holds) {
                any = true;
                if !d.radical_ideal.holds {
                    let w = d.radical_ideal.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set, d.radical],
                            w.points.clone(),
                            format!("radical of a primary ideal is not an ideal: {}", w.detail),
                        ),
                    );
                }
                let rp = d.radical_prime.as_ref().unwrap();
                if !rp.holds {
                    let w = rp.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set, d.radical],
                            w.points.clone(),
                            format!("radical of a primary ideal is not prime: {}", w.detail),
                        ),
                    );
                }
                for p in ideals
                    .iter()
                    .filter(|p| p.prime.holds && d.set.is_subset(p.set))
                {
                    if !d.radical.is_subset(p.set) {
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![d.set, d.radical, p.set],
                                vec![],
                                "a prime ideal containing the primary ideal misses its radical",
                            ),
                        );
                    }
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no approximately primary ideal")
            }
        }
        TheoremId::CorE => {
            let mut any = false;
            for d in ideals.iter().filter(|d| d.prime.holds) {
                any = true;
                if d.radical != d.set {
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set, d.radical],
                            d.radical.minus(d.set).to_vec(),
                            "radical of a prime ideal differs from the ideal",
                        ),
                    );
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no approximately prime ideal")
            }
        }
        TheoremId::LemF => {
            let reverse_in_scope = ctx.stratum.op_closed
                && ctx.stratum.associative_mul
                && ctx.inst.flags().commutative;
            let mut any = false;
            for (i, di) in ideals.iter().enumerate() {
                for dj in &ideals[i..] {
                    let inter = di.set.intersect(dj.set);
                    if inter.is_empty() {
                        continue;
                    }
                    any = true;
                    let rad_inter = radical(ctx.inst, inter).expect("subset of the carrier");
                    let both = di.radical.intersect(dj.radical);
                    if !rad_inter.is_subset(both) {
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![di.set, dj.set],
                                rad_inter.minus(both).to_vec(),
                                "radical of the intersection is not contained in the intersection of radicals",
                            ),
                        );
                    }
                    if reverse_in_scope && !both.is_subset(rad_inter) {
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![di.set, dj.set],
                                both.minus(rad_inter).to_vec(),
                                "intersection of radicals is not contained in the radical of the intersection",
                            ),
                        );
                    }
                }
            }
            if !any {
                ctx.hypothesis_not_met(id, "no pair of ideals with nonempty intersection")
            } else if reverse_in_scope {
                ctx.confirmed(id, "both inclusions")
            } else {
                ctx.confirmed(
                    id,
                    "forward inclusion only; the reverse needs a closed carrier, associative multiplication, and commutativity",
                )
            }
        }
        TheoremId::ThmG => {
            if !ctx.ring {
                return ctx.hypothesis_not_met(id, "not an approximately ring");
            }
            let mut any = false;
            for (i, di) in ideals.iter().enumerate() {
                if !(di.primary.holds
                    && di.radical_ideal.holds
                    && di.radical_prime.as_ref().is_some_and(|c| c.holds))
                {
                    continue;
                }
                for dj in &ideals[i..] {
                    if !(dj.primary.holds && dj.radical == di.radical) {
                        continue;
                    }
                    let inter = di.set.intersect(dj.set);
                    if inter.is_empty() {
                        continue;
                    }
                    let upper_inter = ctx.inst.space().upper_approx(inter);
                    if upper_inter != di.upper.intersect(dj.upper) {
                        continue;
                    }
                    any = true;
                    let ideal_check =
                        is_approx_ideal(ctx.inst, inter).expect("nonempty subset of the carrier");
                    if !ideal_check.holds {
                        let w = ideal_check.witness.unwrap();
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![di.set, dj.set, inter],
                                w.points,
                                format!("intersection is not an ideal: {}", w.detail),
                            ),
                        );
                    }
                    let primary = ideals::primary_scan(ctx.inst, inter, upper_inter);
                    if !primary.holds {
                        let w = primary.witness.unwrap();
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![di.set, dj.set, inter],
                                w.points,
                                format!("intersection is not primary: {}", w.detail),
                            ),
                        );
                    }
                    let rad = radical(ctx.inst, inter).expect("subset of the carrier");
                    if rad != di.radical {
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![di.set, dj.set, inter, rad],
                                vec![],
                                "radical of the intersection differs from the shared prime",
                            ),
                        );
                    }
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(
                    id,
                    "no pair of primary ideals sharing a prime radical with matching upper approximations",
                )
            }
        }
        TheoremId::PropH => {
            if !(ctx.ring_cu && ctx.stratum.upper_closed) {
                return ctx.hypothesis_not_met(
                    id,
                    "needs a commutative ring with unity whose carrier upper approximation is closed under both tables",
                );
            }
            if ideals.is_empty() {
                return ctx.hypothesis_not_met(id, "no approximately ideal");
            }
            for d in ideals {
                for s in ctx.inst.carrier().iter() {
                    let c = colon(ctx.inst, d.set, s).expect("carrier element");
                    if c.is_empty() {
                        return ctx.counterexample(
                            id,
                            witness(vec![d.set], vec![s], "colon set is empty"),
                        );
                    }
                    let check = is_approx_ideal(ctx.inst, c).expect("nonempty subset");
                    if !check.holds {
                        let w = check.witness.unwrap();
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![d.set, c],
                                {
                                    let mut pts = vec![s];
                                    pts.extend(&w.points);
                                    pts
                                },
                                format!("colon set is not an ideal: {}", w.detail),
                            ),
                        );
                    }
                }
            }
            ctx.confirmed(id, "")
        }
        TheoremId::ThmI => {
            if ideals.is_empty() {
                return ctx.hypothesis_not_met(id, "no approximately ideal");
            }
            for (i, di) in ideals.iter().enumerate() {
                for dj in &ideals[i..] {
                    let inter = di.set.intersect(dj.set);
                    for s in ctx.inst.carrier().iter() {
                        let lhs = colon(ctx.inst, inter, s).expect("carrier element");
                        let rhs = colon(ctx.inst, di.set, s)
                            .expect("carrier element")
                            .intersect(colon(ctx.inst, dj.set, s).expect("carrier element"));
                        if lhs != rhs {
                            return ctx.counterexample(
                                id,
                                witness(
                                    vec![di.set, dj.set],
                                    vec![s],
                                    "colon of the intersection differs from the intersection of colons",
                                ),
                            );
                        }
                    }
                }
            }
            ctx.confirmed(id, "")
        }
        TheoremId::PropJ1 | TheoremId::PropJ2 => evaluate_prop_j(ctx, id, ideals),
        TheoremId::ThmK => {
            if !(ctx.ring_cu && ctx.units_available) {
                return ctx.hypothesis_not_met(id, "needs a commutative ring with unity");
            }
            let mut any = false;
            for d in ideals.iter().filter(|d| d.primary.holds) {
                any = true;
                let oa = d.one_absorbing.as_ref().expect("units available");
                if !oa.holds {
                    let w = oa.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set],
                            w.points.clone(),
                            format!("primary but not 1-absorbing primary: {}", w.detail),
                        ),
                    );
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no approximately primary ideal")
            }
        }
        TheoremId::ThmL => {
            if !(ctx.ring_cu && ctx.units_available) {
                return ctx.hypothesis_not_met(id, "needs a commutative ring with unity");
            }
            let mut any = false;
            for d in ideals
                .iter()
                .filter(|d| d.one_absorbing.as_ref().is_some_and(|c| c.holds))
            {
                any = true;
                if !d.radical_ideal.holds {
                    let w = d.radical_ideal.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set, d.radical],
                            w.points.clone(),
                            format!(
                                "radical of a 1-absorbing primary ideal is not an ideal: {}",
                                w.detail
                            ),
                        ),
                    );
                }
                let rp = d.radical_prime.as_ref().unwrap();
                if !rp.holds {
                    let w = rp.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set, d.radical],
                            w.points.clone(),
                            format!(
                                "radical of a 1-absorbing primary ideal is not prime: {}",
                                w.detail
                            ),
                        ),
                    );
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no approximately 1-absorbing primary ideal")
            }
        }
        TheoremId::ThmM => {
            if !(ctx.ring_cu && ctx.units_available) {
                return ctx.hypothesis_not_met(id, "needs a commutative ring with unity");
            }
            let units = ctx.inst.units().expect("units available");
            let non_units = ctx.inst.carrier().minus(units);
            let mut any = false;
            for d in ideals
                .iter()
                .filter(|d| d.one_absorbing.as_ref().is_some_and(|c| c.holds) && !d.primary.holds)
            {
                any = true;
                for a in non_units.iter() {
                    if d.set.contains(a) {
                        continue;
                    }
                    for b in non_units.iter() {
                        if d.radical.contains(b) || !d.upper.contains(ctx.inst.mul(a, b)) {
                            continue;
                        }
                        let irr = ctx.inst.irreducibility(a).expect("units available");
                        if !irr.holds {
                            let w = irr.witness.unwrap();
                            return ctx.counterexample(
                                id,
                                witness(
                                    vec![d.set],
                                    {
                                        let mut pts = vec![a, b];
                                        pts.extend(&w.points);
                                        pts
                                    },
                                    format!("qualifying factor {a} is reducible: {}", w.detail),
                                ),
                            );
                        }
                    }
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no 1-absorbing primary ideal that fails to be primary")
            }
        }
        TheoremId::ConvK => {
            if !(ctx.ring_cu && ctx.units_available) {
                return ctx.hypothesis_not_met(id, "needs a commutative ring with unity");
            }
            let mut any = false;
            for d in ideals
                .iter()
                .filter(|d| d.one_absorbing.as_ref().is_some_and(|c| c.holds))
            {
                any = true;
                if !d.primary.holds {
                    let w = d.primary.witness.as_ref().unwrap();
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set],
                            w.points.clone(),
                            format!("1-absorbing primary but not primary: {}", w.detail),
                        ),
                    );
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no approximately 1-absorbing primary ideal")
            }
        }
        TheoremId::ThmN => {
            unreachable!("product-shaped claim is evaluated by evaluate_product")
        }
    }
}

/// Shared evaluation for the two-part proposition about the semi-primary
/// implies primary property.
fn evaluate_prop_j(ctx: &Ctx, id: TheoremId, ideals: &[IdealData]) -> TheoremFinding {
    if !ctx.ring_cu {
        return ctx.hypothesis_not_met(id, "needs a commutative ring with unity");
    }
    let semi =
        |d: &IdealData| d.radical_ideal.holds && d.radical_prime.as_ref().is_some_and(|c| c.holds);
    if let Some(bad) = ideals.iter().find(|d| semi(d) && !d.primary.holds) {
        return ctx.hypothesis_not_met(
            id,
            format!(
                "the semi-primary implies primary property fails at {}",
                bad.set
            ),
        );
    }
    match id {
        TheoremId::PropJ1 => {
            let mut any = false;
            for d in ideals.iter().filter(|d| d.set != ctx.inst.carrier()) {
                let q = match quotient(ctx.inst, d.set, ZeroTestMode::Descriptive) {
                    Ok(q) if q.well_defined => q,
                    _ => continue,
                };
                let qinst = match q.as_instance(ctx.inst) {
                    Ok(qi) => qi,
                    Err(_) => continue,
                };
                let violation = match semi_primary_implies_primary_violation(&qinst) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                any = true;
                if let Some((j, w)) = violation {
                    return ctx.counterexample(
                        id,
                        witness(
                            vec![d.set, j],
                            w.points,
                            format!(
                                "quotient by {} has a semi-primary ideal (coset indices {j}) that is not primary: {}",
                                d.set, w.detail
                            ),
                        ),
                    );
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(id, "no proper ideal with a well-defined quotient")
            }
        }
        TheoremId::PropJ2 => {
            let mut any = false;
            for q in ideals {
                if !(q.primary.holds
                    && q.radical_ideal.holds
                    && q.radical_prime.as_ref().is_some_and(|c| c.holds))
                {
                    continue;
                }
                for w in ideals {
                    if !(q.set.is_subset(w.set) && w.set.is_subset(q.radical)) {
                        continue;
                    }
                    any = true;
                    if !w.primary.holds {
                        let wit = w.primary.witness.as_ref().unwrap();
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![q.set, w.set, q.radical],
                                wit.points.clone(),
                                format!("the squeezed ideal is not primary: {}", wit.detail),
                            ),
                        );
                    }
                    if w.radical != q.radical {
                        return ctx.counterexample(
                            id,
                            witness(
                                vec![q.set, w.set, q.radical, w.radical],
                                vec![],
                                "the squeezed ideal has a different radical",
                            ),
                        );
                    }
                }
            }
            if any {
                ctx.confirmed(id, "")
            } else {
                ctx.hypothesis_not_met(
                    id,
                    "no squeezed pair around a primary ideal with prime radical",
                )
            }
        }
        _ => unreachable!(),
    }
}

/// First semi-primary ideal of the instance that is not primary, if any.
fn semi_primary_implies_primary_violation(
    inst: &AlgebraInstance,
) -> Result<Option<(PointSet, crate::structures::Witness)>> {
    for set in enumerate_ideals(inst)? {
        let upper = inst.space().upper_approx(set);
        let rad = radical(inst, set)?;
        let rad_ideal = is_approx_ideal(inst, rad)?;
        if !rad_ideal.holds {
            continue;
        }
        if !ideals::prime_scan(inst, rad, inst.space().upper_approx(rad)).holds {
            continue;
        }
        let primary = ideals::primary_scan(inst, set, upper);
        if !primary.holds {
            return Ok(Some((set, primary.witness.unwrap())));
        }
    }
    Ok(None)
}

/// Size cap for products formed from stream neighbours.
pub const PRODUCT_POINT_CAP: usize = 24;

/// Evaluates the product-shaped claim for one factor pair.
pub fn evaluate_product(
    left: &AlgebraInstance,
    right: &AlgebraInstance,
    product: &AlgebraInstance,
) -> TheoremFinding {
    let ctx = Ctx::build(product, false);
    let id = TheoremId::ThmN;
    if !(left.flags().commutative_ring_with_unity()
        && right.flags().commutative_ring_with_unity()
        && ctx.ring_cu)
    {
        return ctx.hypothesis_not_met(
            id,
            "factors and product must be commutative rings with unity",
        );
    }
    let n2 = right.n_points();
    let expected_upper = product_set(left.carrier_upper(), right.carrier_upper(), n2);
    if product.carrier_upper() != expected_upper {
        return ctx.hypothesis_not_met(
            id,
            "upper approximation of the product carrier is not the product of upper approximations",
        );
    }
    let left_ideals = match enumerate_ideals(left) {
        Ok(list) => list,
        Err(e) => return ctx.hypothesis_not_met(id, format!("factor ideals unavailable: {e}")),
    };
    let mut any = false;
    for n in left_ideals {
        let m = product_set(n, right.carrier(), n2);
        let m_ideal = match is_approx_ideal(product, m) {
            Ok(c) => c,
            Err(e) => return ctx.hypothesis_not_met(id, e.to_string()),
        };
        if !m_ideal.holds {
            continue;
        }
        let m_upper = product.space().upper_approx(m);
        if !ideals::primary_scan(product, m, m_upper).holds {
            continue;
        }
        any = true;
        let n_upper = left.space().upper_approx(n);
        let conclusion = ideals::primary_scan(left, n, n_upper);
        if !conclusion.holds {
            let w = conclusion.witness.unwrap();
            return ctx.counterexample(
                id,
                witness(
                    vec![n, m],
                    w.points,
                    format!(
                        "factor ideal is not primary although its cylinder is: {}",
                        w.detail
                    ),
                ),
            );
        }
    }
    if any {
        ctx.confirmed(id, "")
    } else {
        ctx.hypothesis_not_met(
            id,
            "no factor ideal whose cylinder is a primary ideal of the product",
        )
    }
}

/// Streaming suite evaluator. Per-instance claims fire on every pushed
/// instance; the product-shaped claim pairs stream neighbours (first with
/// second, third with fourth, and so on) whose product stays small.
pub struct SuiteRunner {
    selection: BTreeSet<TheoremId>,
    with_one_absorbing: bool,
    pending: Option<AlgebraInstance>,
}

impl SuiteRunner {
    pub fn new(selection: &[TheoremId]) -> Self {
        let selection: BTreeSet<TheoremId> = selection.iter().copied().collect();
        let with_one_absorbing = [
            TheoremId::ThmK,
            TheoremId::ThmL,
            TheoremId::ThmM,
            TheoremId::ConvK,
        ]
        .iter()
        .any(|t| selection.contains(t));
        SuiteRunner {
            selection,
            with_one_absorbing,
            pending: None,
        }
    }

    pub fn push(&mut self, inst: &AlgebraInstance, out: &mut dyn FnMut(TheoremFinding)) {
        let per_instance: Vec<TheoremId> = self
            .selection
            .iter()
            .copied()
            .filter(|t| *t != TheoremId::ThmN)
            .collect();
        if !per_instance.is_empty() {
            let ctx = Ctx::build(inst, self.with_one_absorbing);
            for id in per_instance {
                out(evaluate_theorem(&ctx, id));
            }
        }
        if self.selection.contains(&TheoremId::ThmN) {
            match self.pending.take() {
                None => self.pending = Some(inst.clone()),
                Some(left) => {
                    if left.n_points() * inst.n_points() <= PRODUCT_POINT_CAP {
                        if let Ok(product) = product_instance(&left, inst, PRODUCT_POINT_CAP) {
                            out(evaluate_product(&left, inst, &product));
                        }
                    }
                }
            }
        }
    }
}

/// Runs the selected claims over the instances and returns the findings in
/// canonical (fingerprint, claim) order.
pub fn run_theorem_suite(
    instances: &[AlgebraInstance],
    selection: &[TheoremId],
) -> Vec<TheoremFinding> {
    let mut runner = SuiteRunner::new(selection);
    let mut out = Vec::new();
    for inst in instances {
        runner.push(inst, &mut |f| out.push(f));
    }
    out.sort_by(|a, b| (&a.fingerprint, a.theorem).cmp(&(&b.fingerprint, b.theorem)));
    out
}

/// Replay outcome for counterexample findings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayOutcome {
    pub checked: usize,
    /// Counterexamples that did not re-derive identically.
    pub unreplayed: Vec<TheoremFinding>,
}

impl ReplayOutcome {
    pub fn all_replayed(&self) -> bool {
        self.unreplayed.is_empty()
    }
}

/// Checks that every counterexample in `original` re-derives identically in
/// the fresh findings. Evaluation is deterministic, so a healthy suite
/// reproduces each counterexample witness bit for bit from the rebuilt
/// instances.
pub fn verify_counterexamples(
    fresh: &[TheoremFinding],
    original: &[TheoremFinding],
) -> ReplayOutcome {
    let mut outcome = ReplayOutcome {
        checked: 0,
        unreplayed: Vec::new(),
    };
    for f in original
        .iter()
        .filter(|f| f.status == FindingStatus::Counterexample)
    {
        outcome.checked += 1;
        if !fresh.contains(f) {
            outcome.unreplayed.push(f.clone());
        }
    }
    outcome
}
