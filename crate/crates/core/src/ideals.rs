//! Ideal predicates and constructions over an instance.
//!
//! Subsets of the carrier are classified against the approximately-algebraic
//! ideal notions: products and sums are required to land in the upper
//! approximation of the subset rather than the subset itself, and the power
//! conditions for primary and radical membership are searched up to the
//! point count (the left-normed power orbit has at most that many distinct
//! values, so the search is complete).
//!
//! Witnesses are always the lexicographically least violating tuple in scan
//! order, so repeated classification of the same input reproduces the same
//! report byte for byte.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::space::{DescriptiveSpace, FeatureVector, PointSet, MAX_POINTS};
use crate::structures::{AlgebraInstance, Checked, OpTable, Witness};

/// A validated reference to a nonempty subset of an instance carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct IdealRef(PointSet);

impl IdealRef {
    /// Checks nonemptiness and containment in the carrier. Whether the set
    /// actually satisfies the ideal axioms is a separate question answered
    /// by [`is_approx_ideal`].
    pub fn new(inst: &AlgebraInstance, members: PointSet) -> Result<Self> {
        if members.is_empty() {
            return Err(AlgebraError::EmptySet);
        }
        if let Some(index) = members.minus(inst.carrier()).first() {
            return Err(AlgebraError::OutsideCarrier { index });
        }
        Ok(IdealRef(members))
    }

    pub fn members(self) -> PointSet {
        self.0
    }
}

fn require_in_carrier(inst: &AlgebraInstance, w: PointSet) -> Result<()> {
    match w.minus(inst.carrier()).first() {
        None => Ok(()),
        Some(index) => Err(AlgebraError::OutsideCarrier { index }),
    }
}

fn not_an_ideal(w: PointSet, failure: &Checked) -> AlgebraError {
    AlgebraError::NotAnIdeal {
        members: w
            .to_vec()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(","),
        reason: failure
            .witness
            .as_ref()
            .map(|x| x.detail.clone())
            .unwrap_or_else(|| "ideal axioms fail".to_string()),
    }
}

/// Fast membership test without witness bookkeeping; agrees with
/// [`is_approx_ideal`] on every input. Inverse closure goes first so that
/// most non-ideals die before the upper approximation is computed.
pub(crate) fn ideal_check_fast(
    inst: &AlgebraInstance,
    q: PointSet,
    neg: &std::collections::BTreeMap<usize, usize>,
) -> bool {
    for a in q.iter() {
        if !q.contains(neg[&a]) {
            return false;
        }
    }
    let upper_q = inst.space().upper_approx(q);
    for a in q.iter() {
        for b in q.iter() {
            if !upper_q.contains(inst.add(a, b)) {
                return false;
            }
        }
    }
    for r in inst.carrier().iter() {
        for a in q.iter() {
            if !upper_q.contains(inst.mul(r, a)) {
                return false;
            }
        }
    }
    true
}

/// Ideal axioms: sums of members and carrier multiples of members land in
/// the upper approximation of the set, and the canonical additive inverse of
/// every member stays in the set.
pub fn is_approx_ideal(inst: &AlgebraInstance, q: PointSet) -> Result<Checked> {
    if q.is_empty() {
        return Err(AlgebraError::EmptySet);
    }
    require_in_carrier(inst, q)?;
    let neg = inst.neg_map()?;
    let upper_q = inst.space().upper_approx(q);
    for a in q.iter() {
        for b in q.iter() {
            let s = inst.add(a, b);
            if !upper_q.contains(s) {
                return Ok(Checked::fail(Witness::new(
                    vec![a, b],
                    format!("{a}+{b} = {s} outside the upper approximation of the set"),
                )));
            }
        }
    }
    for a in q.iter() {
        let n = neg[&a];
        if !q.contains(n) {
            return Ok(Checked::fail(Witness::new(
                vec![a],
                format!("inverse -{a} = {n} is not in the set"),
            )));
        }
    }
    for r in inst.carrier().iter() {
        for a in q.iter() {
            let p = inst.mul(r, a);
            if !upper_q.contains(p) {
                return Ok(Checked::fail(Witness::new(
                    vec![r, a],
                    format!("{r}*{a} = {p} outside the upper approximation of the set"),
                )));
            }
        }
    }
    Ok(Checked::pass())
}

fn require_ideal(inst: &AlgebraInstance, w: PointSet) -> Result<PointSet> {
    let check = is_approx_ideal(inst, w)?;
    if !check.holds {
        return Err(not_an_ideal(w, &check));
    }
    Ok(inst.space().upper_approx(w))
}

/// Prime: a product landing in the upper approximation of the ideal forces a
/// factor into the ideal.
pub fn is_prime(inst: &AlgebraInstance, w: PointSet) -> Result<Checked> {
    let upper_w = require_ideal(inst, w)?;
    Ok(prime_scan(inst, w, upper_w))
}

pub(crate) fn prime_scan(inst: &AlgebraInstance, w: PointSet, upper_w: PointSet) -> Checked {
    for a in inst.carrier().iter() {
        for b in inst.carrier().iter() {
            let p = inst.mul(a, b);
            if upper_w.contains(p) && !w.contains(a) && !w.contains(b) {
                return Checked::fail(Witness::new(
                    vec![a, b],
                    format!("{a}*{b} = {p} is near the ideal but neither factor is in it"),
                ));
            }
        }
    }
    Checked::pass()
}

/// Primary: a product landing in the upper approximation of the ideal forces
/// the first factor in, or some power of the second factor in.
pub fn is_primary(inst: &AlgebraInstance, w: PointSet) -> Result<Checked> {
    let upper_w = require_ideal(inst, w)?;
    Ok(primary_scan(inst, w, upper_w))
}

pub(crate) fn primary_scan(inst: &AlgebraInstance, w: PointSet, upper_w: PointSet) -> Checked {
    let bound = inst.n_points() as u32;
    for a in inst.carrier().iter() {
        for b in inst.carrier().iter() {
            let p = inst.mul(a, b);
            if upper_w.contains(p) && !w.contains(a) && !some_power_in(inst, b, w, bound) {
                return Checked::fail(Witness::new(
                    vec![a, b],
                    format!("{a}*{b} = {p} is near the ideal, {a} is outside, and no power of {b} lands in it"),
                ));
            }
        }
    }
    Checked::pass()
}

pub(crate) fn some_power_in(inst: &AlgebraInstance, s: usize, w: PointSet, bound: u32) -> bool {
    let mut p = s;
    for _ in 0..bound {
        if w.contains(p) {
            return true;
        }
        p = inst.mul(p, s);
    }
    false
}

/// Carrier elements with some power in `w`. Always contains `w`.
pub fn radical(inst: &AlgebraInstance, w: PointSet) -> Result<PointSet> {
    require_in_carrier(inst, w)?;
    let bound = inst.n_points() as u32;
    Ok(inst
        .carrier()
        .iter()
        .filter(|&s| some_power_in(inst, s, w, bound))
        .collect())
}

/// Primary with radical equal to the given prime ideal.
pub fn is_p_primary(inst: &AlgebraInstance, w: PointSet, p: PointSet) -> Result<Checked> {
    let primary = is_primary(inst, w)?;
    if !primary.holds {
        return Ok(Checked::fail(primary.witness.unwrap()));
    }
    let prime = is_prime(inst, p)?;
    if !prime.holds {
        return Ok(Checked::fail(prime.witness.unwrap()));
    }
    let rad = radical(inst, w)?;
    if rad != p {
        return Ok(Checked::fail(Witness::new(
            rad.to_vec(),
            format!("radical {rad} differs from the target ideal {p}"),
        )));
    }
    Ok(Checked::pass())
}

/// Semi-primary: the radical is itself an ideal and prime. A radical that
/// fails the ideal axioms is reported as a distinct error because the
/// primeness question does not apply to it.
pub fn is_semi_primary(inst: &AlgebraInstance, o: PointSet) -> Result<Checked> {
    require_ideal(inst, o)?;
    let rad = radical(inst, o)?;
    let rad_ideal = is_approx_ideal(inst, rad)?;
    if !rad_ideal.holds {
        return Err(AlgebraError::RadicalNotIdeal {
            members: rad
                .to_vec()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(","),
            reason: rad_ideal.witness.map(|x| x.detail).unwrap_or_default(),
        });
    }
    let upper_rad = inst.space().upper_approx(rad);
    Ok(prime_scan(inst, rad, upper_rad))
}

/// 1-absorbing primary: for non-unit triples whose left-normed product is
/// near the ideal, the product of the first two lands in the ideal or the
/// third lands in the radical.
pub fn is_one_absorbing_primary(inst: &AlgebraInstance, q: PointSet) -> Result<Checked> {
    let upper_q = require_ideal(inst, q)?;
    let units = inst.units()?;
    let rad = radical(inst, q)?;
    Ok(one_absorbing_scan(inst, q, upper_q, units, rad))
}

pub(crate) fn one_absorbing_scan(
    inst: &AlgebraInstance,
    q: PointSet,
    upper_q: PointSet,
    units: PointSet,
    rad: PointSet,
) -> Checked {
    let non_units = inst.carrier().minus(units);
    for a in non_units.iter() {
        for b in non_units.iter() {
            let ab = inst.mul(a, b);
            if q.contains(ab) {
                continue;
            }
            for c in non_units.iter() {
                let abc = inst.mul(ab, c);
                if upper_q.contains(abc) && !rad.contains(c) {
                    return Checked::fail(Witness::new(
                        vec![a, b, c],
                        format!(
                            "({a}*{b})*{c} = {abc} is near the ideal, {a}*{b} = {ab} is outside, and {c} avoids the radical"
                        ),
                    ));
                }
            }
        }
    }
    Checked::pass()
}

/// Colon: carrier elements whose product with `s` lands in `w`.
pub fn colon(inst: &AlgebraInstance, w: PointSet, s: usize) -> Result<PointSet> {
    require_in_carrier(inst, w)?;
    if !inst.carrier().contains(s) {
        return Err(AlgebraError::OutsideCarrier { index: s });
    }
    Ok(inst
        .carrier()
        .iter()
        .filter(|&l| w.contains(inst.mul(s, l)))
        .collect())
}

/// Plain set intersection of a nonempty list; the result is not revalidated
/// as an ideal here.
pub fn intersect_ideals(sets: &[PointSet]) -> Result<PointSet> {
    let mut iter = sets.iter();
    let first = iter.next().ok_or(AlgebraError::EmptyList)?;
    Ok(iter.fold(*first, |acc, s| acc.intersect(*s)))
}

/// Pointwise product of two instances: index pairs, concatenated features,
/// componentwise tables, product carrier. The concatenated probe makes the
/// upper approximation of a product set equal the product of the upper
/// approximations.
pub fn product_instance(
    left: &AlgebraInstance,
    right: &AlgebraInstance,
    max_points: usize,
) -> Result<AlgebraInstance> {
    let (n1, n2) = (left.n_points(), right.n_points());
    let total = n1 * n2;
    let limit = max_points.min(MAX_POINTS);
    if total > limit {
        return Err(AlgebraError::SizeOverflow {
            requested: total,
            limit,
        });
    }
    let mut probe = Vec::with_capacity(total);
    for i in 0..n1 {
        for j in 0..n2 {
            let mut values = left.space().feature(i).values().to_vec();
            values.extend_from_slice(right.space().feature(j).values());
            probe.push(FeatureVector::new(values));
        }
    }
    let space = DescriptiveSpace::new(probe)?;
    let pair = |i: usize, j: usize| i * n2 + j;
    let add = OpTable::from_fn(total, |x, y| {
        pair(left.add(x / n2, y / n2), right.add(x % n2, y % n2))
    })?;
    let mul = OpTable::from_fn(total, |x, y| {
        pair(left.mul(x / n2, y / n2), right.mul(x % n2, y % n2))
    })?;
    let mut carrier = PointSet::EMPTY;
    for i in left.carrier().iter() {
        for j in right.carrier().iter() {
            carrier.insert(pair(i, j));
        }
    }
    AlgebraInstance::new(space, add, mul, carrier)
}

/// Product of two point sets inside a product instance built from factors of
/// the given sizes.
pub fn product_set(a: PointSet, b: PointSet, n2: usize) -> PointSet {
    let mut out = PointSet::EMPTY;
    for i in a.iter() {
        for j in b.iter() {
            out.insert(i * n2 + j);
        }
    }
    out
}

/// One verdict of a classification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness")]
pub enum Verdict {
    Holds,
    Fails(Witness),
    NotApplicable(String),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn from_checked(c: Checked) -> Self {
        if c.holds {
            Verdict::Holds
        } else {
            Verdict::Fails(c.witness.expect("failed checks carry a witness"))
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Holds => write!(f, "yes"),
            Verdict::Fails(w) => {
                if w.points.is_empty() {
                    write!(f, "no ({})", w.detail)
                } else {
                    let pts = w
                        .points
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(",");
                    write!(f, "no (witness ({pts}): {})", w.detail)
                }
            }
            Verdict::NotApplicable(reason) => write!(f, "n/a ({reason})"),
        }
    }
}

/// All ideal verdicts for one subset, with witnesses for every failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub ideal: Verdict,
    pub prime: Verdict,
    pub primary: Verdict,
    pub semi_primary: Verdict,
    pub one_absorbing: Verdict,
    pub radical_members: PointSet,
    /// The radical, when the set is primary and its radical is prime; the
    /// set is then primary with respect to exactly this prime ideal.
    pub p_primary_target: Option<PointSet>,
}

/// Runs every ideal predicate on one subset of the carrier.
///
/// Dependent verdicts are marked not-applicable when the set fails the ideal
/// axioms or when a required identity is missing. The radical is computed
/// regardless since it only needs the multiplication table.
pub fn classify_ideal(inst: &AlgebraInstance, w: PointSet) -> Result<ClassificationReport> {
    if w.is_empty() {
        return Err(AlgebraError::EmptySet);
    }
    require_in_carrier(inst, w)?;
    let radical_members = radical(inst, w)?;

    let ideal = match is_approx_ideal(inst, w) {
        Ok(c) => Verdict::from_checked(c),
        Err(
            e @ (AlgebraError::NoAdditiveIdentity
            | AlgebraError::MissingInverse { .. }
            | AlgebraError::AmbiguousIdentity { .. }),
        ) => Verdict::NotApplicable(e.to_string()),
        Err(e) => return Err(e),
    };

    if !ideal.holds() {
        let na = Verdict::NotApplicable("the set is not an approximately ideal".to_string());
        return Ok(ClassificationReport {
            ideal,
            prime: na.clone(),
            primary: na.clone(),
            semi_primary: na.clone(),
            one_absorbing: na,
            radical_members,
            p_primary_target: None,
        });
    }

    let upper_w = inst.space().upper_approx(w);
    let prime = Verdict::from_checked(prime_scan(inst, w, upper_w));
    let primary = Verdict::from_checked(primary_scan(inst, w, upper_w));
    let semi_primary = match is_semi_primary(inst, w) {
        Ok(c) => Verdict::from_checked(c),
        Err(AlgebraError::RadicalNotIdeal { members, reason }) => Verdict::Fails(Witness::new(
            radical_members.to_vec(),
            format!("radical {{{members}}} is not an approximately ideal: {reason}"),
        )),
        Err(e) => return Err(e),
    };
    let one_absorbing = match inst.units() {
        Ok(units) => {
            Verdict::from_checked(one_absorbing_scan(inst, w, upper_w, units, radical_members))
        }
        Err(AlgebraError::NoUnity) => {
            Verdict::NotApplicable("no unity element, so non-units are undefined".to_string())
        }
        Err(e) => return Err(e),
    };

    // Prime forces primary by taking the first power; anything else is an
    // implementation fault.
    assert!(
        !prime.holds() || primary.holds(),
        "prime verdict without primary verdict on {w}"
    );

    let p_primary_target = if primary.holds() && semi_primary.holds() {
        Some(radical_members)
    } else {
        None
    };

    Ok(ClassificationReport {
        ideal,
        prime,
        primary,
        semi_primary,
        one_absorbing,
        radical_members,
        p_primary_target,
    })
}

/// Every nonempty subset of the carrier passing the ideal axioms, in
/// ascending canonical (bitmask) order.
pub fn enumerate_ideals(inst: &AlgebraInstance) -> Result<Vec<PointSet>> {
    const ENUM_BOUND: usize = 16;
    if inst.carrier().len() > ENUM_BOUND {
        return Err(AlgebraError::TooLarge {
            what: "ideal enumeration",
            size: inst.carrier().len(),
            bound: ENUM_BOUND,
        });
    }
    let neg = inst.neg_map()?.clone();
    let carrier_mask = inst.carrier().mask();
    let mut out = Vec::new();
    // Standard submask walk, ascending.
    let mut sub = 0u64;
    loop {
        sub = sub.wrapping_sub(carrier_mask) & carrier_mask;
        if sub == 0 {
            break;
        }
        let q = PointSet::from_mask(sub);
        if ideal_check_fast(inst, q, &neg) {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::DescriptiveSpace;

    fn z4p() -> AlgebraInstance {
        AlgebraInstance::modular(4, 2).unwrap()
    }

    fn z6() -> AlgebraInstance {
        AlgebraInstance::modular(6, 6).unwrap()
    }

    fn z8() -> AlgebraInstance {
        AlgebraInstance::modular(8, 8).unwrap()
    }

    fn r013() -> AlgebraInstance {
        AlgebraInstance::modular_with_carrier(4, 2, PointSet::from_indices([0, 1, 3])).unwrap()
    }

    fn set(ix: impl IntoIterator<Item = usize>) -> PointSet {
        PointSet::from_indices(ix)
    }

    #[test]
    fn ideal_refs_validate_membership() {
        let inst = r013();
        assert!(IdealRef::new(&inst, set([0, 1])).is_ok());
        assert!(matches!(
            IdealRef::new(&inst, set([0, 2])),
            Err(AlgebraError::OutsideCarrier { index: 2 })
        ));
        assert!(matches!(
            IdealRef::new(&inst, PointSet::EMPTY),
            Err(AlgebraError::EmptySet)
        ));
        assert_eq!(IdealRef::new(&inst, set([0])).unwrap().members(), set([0]));
    }

    #[test]
    fn ideal_axioms_in_z6() {
        assert!(is_approx_ideal(&z6(), set([0, 3])).unwrap().holds);
        let bad = is_approx_ideal(&z6(), set([0, 1])).unwrap();
        assert!(!bad.holds);
        // The additive closure fails first in scan order: 1+1 = 2.
        assert_eq!(bad.witness.unwrap().points, vec![1, 1]);
        assert!(is_approx_ideal(&z6(), set([0])).unwrap().holds);
        assert!(is_approx_ideal(&z4p(), set([0])).unwrap().holds);
    }

    #[test]
    fn fast_and_witnessed_ideal_checks_agree() {
        for inst in [z4p(), z6(), z8(), r013()] {
            let neg = inst.neg_map().unwrap().clone();
            let carrier_mask = inst.carrier().mask();
            let mut sub = 0u64;
            loop {
                sub = sub.wrapping_sub(carrier_mask) & carrier_mask;
                if sub == 0 {
                    break;
                }
                let q = PointSet::from_mask(sub);
                assert_eq!(
                    ideal_check_fast(&inst, q, &neg),
                    is_approx_ideal(&inst, q).unwrap().holds,
                    "disagreement on {q}"
                );
            }
        }
    }

    #[test]
    fn prime_examples() {
        assert!(is_prime(&z4p(), set([0, 2])).unwrap().holds);
        let zero = is_prime(&z4p(), set([0])).unwrap();
        assert!(!zero.holds);
        assert_eq!(zero.witness.unwrap().points, vec![1, 2]);
        assert!(is_prime(&r013(), set([0])).unwrap().holds);
        assert!(matches!(
            is_prime(&z6(), set([0, 1])),
            Err(AlgebraError::NotAnIdeal { .. })
        ));
    }

    #[test]
    fn primary_examples() {
        assert!(is_primary(&z8(), set([0, 4])).unwrap().holds);
        let zero = is_primary(&z4p(), set([0])).unwrap();
        assert!(!zero.holds);
        assert_eq!(zero.witness.unwrap().points, vec![2, 1]);
        // Any prime ideal is primary.
        assert!(is_primary(&z4p(), set([0, 2])).unwrap().holds);
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical(&z8(), set([0])).unwrap(), set([0, 2, 4, 6]));
        assert_eq!(radical(&z6(), set([0])).unwrap(), set([0]));
        let full = z6().carrier();
        assert_eq!(radical(&z6(), full).unwrap(), full);
        assert_eq!(radical(&z4p(), set([0])).unwrap(), set([0, 2]));
    }

    #[test]
    fn p_primary_examples() {
        let z8 = z8();
        assert!(
            is_p_primary(&z8, set([0, 4]), set([0, 2, 4, 6]))
                .unwrap()
                .holds
        );
        assert!(!is_p_primary(&z8, set([0, 4]), set([0, 4])).unwrap().holds);
        // A prime ideal is primary with respect to itself.
        let w = set([0, 2, 4, 6]);
        assert!(is_p_primary(&z8, w, w).unwrap().holds);
    }

    #[test]
    fn semi_primary_examples() {
        assert!(is_semi_primary(&z8(), set([0, 4])).unwrap().holds);
        assert!(!is_semi_primary(&z6(), set([0])).unwrap().holds);
        assert!(is_semi_primary(&z6(), set([0, 2, 4])).unwrap().holds);
    }

    #[test]
    fn one_absorbing_examples() {
        // {0} in the parity space absorbs every non-unit triple even though
        // it is not primary.
        assert!(is_one_absorbing_primary(&z4p(), set([0])).unwrap().holds);
        assert!(!is_primary(&z4p(), set([0])).unwrap().holds);
        assert!(
            is_one_absorbing_primary(&z6(), set([0, 2, 4]))
                .unwrap()
                .holds
        );
        // Z2 x Z2 fails at ((1,0),(1,0),(0,1)).
        let z2 = AlgebraInstance::modular(2, 2).unwrap();
        let prod = product_instance(&z2, &z2, 64).unwrap();
        let verdict = is_one_absorbing_primary(&prod, set([0])).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness.unwrap().points, vec![1, 1, 2]);
    }

    #[test]
    fn colon_examples() {
        let z6 = z6();
        assert_eq!(colon(&z6, set([0, 3]), 2).unwrap(), set([0, 3]));
        assert_eq!(colon(&z6, set([0, 3]), 3).unwrap(), z6.carrier());
        // Colon by the unity gives the set back.
        assert_eq!(colon(&z6, set([0, 3]), 1).unwrap(), set([0, 3]));
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(
            intersect_ideals(&[set([0, 3]), set([0, 2, 4])]).unwrap(),
            set([0])
        );
        assert_eq!(intersect_ideals(&[set([0, 3])]).unwrap(), set([0, 3]));
        assert!(matches!(
            intersect_ideals(&[]),
            Err(AlgebraError::EmptyList)
        ));
    }

    #[test]
    fn product_instances() {
        let z2 = AlgebraInstance::modular(2, 2).unwrap();
        let prod = product_instance(&z2, &z2, 64).unwrap();
        assert_eq!(prod.n_points(), 4);
        assert!(prod.space().injective_probe());
        assert!(prod.flags().commutative_ring_with_unity());

        let z4p = z4p();
        let mixed = product_instance(&z4p, &z2, 64).unwrap();
        // Upper approximation of {(0,0)} is {0,2} x {0}.
        let zero = set([0]);
        assert_eq!(
            mixed.space().upper_approx(zero),
            product_set(set([0, 2]), set([0]), 2)
        );

        assert!(matches!(
            product_instance(&z8(), &z8(), 16),
            Err(AlgebraError::SizeOverflow {
                requested: 64,
                limit: 16
            })
        ));
    }

    #[test]
    fn product_with_trivial_ring_is_a_copy() {
        let one = AlgebraInstance::new(
            DescriptiveSpace::from_scalar_probe(&[0]).unwrap(),
            OpTable::new(1, vec![0]).unwrap(),
            OpTable::new(1, vec![0]).unwrap(),
            PointSet::from_indices([0]),
        )
        .unwrap();
        let z6 = z6();
        let prod = product_instance(&z6, &one, 64).unwrap();
        assert_eq!(prod.n_points(), 6);
        assert_eq!(prod.add_table(), z6.add_table());
        assert_eq!(prod.mul_table(), z6.mul_table());
    }

    #[test]
    fn classification_of_z4p_zero() {
        let report = classify_ideal(&z4p(), set([0])).unwrap();
        assert!(report.ideal.holds());
        assert!(!report.prime.holds());
        assert_eq!(report.prime.witness().unwrap().points, vec![1, 2]);
        assert!(!report.primary.holds());
        assert_eq!(report.primary.witness().unwrap().points, vec![2, 1]);
        assert!(report.one_absorbing.holds());
        assert_eq!(report.radical_members, set([0, 2]));
        assert_eq!(report.p_primary_target, None);
    }

    #[test]
    fn classification_of_z6_even_ideal() {
        let report = classify_ideal(&z6(), set([0, 2, 4])).unwrap();
        assert!(report.ideal.holds());
        assert!(report.prime.holds());
        assert!(report.primary.holds());
        assert!(report.semi_primary.holds());
        assert!(report.one_absorbing.holds());
        assert_eq!(report.p_primary_target, Some(set([0, 2, 4])));
    }

    #[test]
    fn classification_of_a_non_ideal() {
        let report = classify_ideal(&z6(), set([0, 1])).unwrap();
        assert!(!report.ideal.holds());
        assert!(matches!(report.prime, Verdict::NotApplicable(_)));
        assert!(matches!(report.primary, Verdict::NotApplicable(_)));
        assert!(matches!(report.semi_primary, Verdict::NotApplicable(_)));
        assert!(matches!(report.one_absorbing, Verdict::NotApplicable(_)));
    }

    #[test]
    fn classification_is_deterministic() {
        let inst = z8();
        let a = classify_ideal(&inst, set([0, 4])).unwrap();
        let b = classify_ideal(&inst, set([0, 4])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn enumerate_ideals_of_fixtures() {
        let z6 = z6();
        assert_eq!(
            enumerate_ideals(&z6).unwrap(),
            vec![set([0]), set([0, 3]), set([0, 2, 4]), z6.carrier()]
        );
        // The parity probe admits more ideals than the classical reading:
        // {2} works because 2+2 = 0 lies in its upper approximation {0,2},
        // and {0,1,3} / {1,2,3} work because their upper approximation is
        // the whole space.
        let z4p = z4p();
        assert_eq!(
            enumerate_ideals(&z4p).unwrap(),
            vec![
                set([0]),
                set([2]),
                set([0, 2]),
                set([0, 1, 3]),
                set([1, 2, 3]),
                z4p.carrier()
            ]
        );
        let one = AlgebraInstance::new(
            DescriptiveSpace::from_scalar_probe(&[0]).unwrap(),
            OpTable::new(1, vec![0]).unwrap(),
            OpTable::new(1, vec![0]).unwrap(),
            PointSet::from_indices([0]),
        )
        .unwrap();
        assert_eq!(enumerate_ideals(&one).unwrap(), vec![set([0])]);
    }

    #[test]
    fn enumeration_refuses_large_carriers() {
        let big = AlgebraInstance::modular(17, 17).unwrap();
        assert!(matches!(
            enumerate_ideals(&big),
            Err(AlgebraError::TooLarge {
                size: 17,
                bound: 16,
                ..
            })
        ));
    }
}
