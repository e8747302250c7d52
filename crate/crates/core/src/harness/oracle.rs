//! Classical differential oracle.
//!
//! On instances where the probe is injective and the carrier is closed under
//! both tables, every approximate notion collapses to its textbook
//! counterpart. This module evaluates the textbook definitions directly,
//! with plain set membership everywhere an upper approximation would appear,
//! and without calling into the main classification path. The two routes are
//! compared instance by instance in the equivalence tests.

use crate::error::{AlgebraError, Result};
use crate::ideals::{ClassificationReport, Verdict};
use crate::space::PointSet;
use crate::structures::{AlgebraInstance, Witness};

fn guard_classical(inst: &AlgebraInstance) -> Result<()> {
    if !inst.space().injective_probe() {
        return Err(AlgebraError::NotClassical {
            reason: "probe is not injective".to_string(),
        });
    }
    if !inst.flags().op_closed {
        return Err(AlgebraError::NotClassical {
            reason: "carrier is not closed under the tables".to_string(),
        });
    }
    Ok(())
}

struct ClassicalRing<'a> {
    inst: &'a AlgebraInstance,
    carrier: PointSet,
    neg: Vec<(usize, usize)>,
    unity: Option<usize>,
    units: PointSet,
}

impl<'a> ClassicalRing<'a> {
    fn build(inst: &'a AlgebraInstance) -> Result<Self> {
        let carrier = inst.carrier();
        let add = |a: usize, b: usize| inst.add(a, b);
        let mul = |a: usize, b: usize| inst.mul(a, b);

        let zeros: Vec<usize> = carrier
            .iter()
            .filter(|&e| carrier.iter().all(|a| add(a, e) == a && add(e, a) == a))
            .collect();
        let zero = match zeros.as_slice() {
            [z] => *z,
            _ => {
                return Err(AlgebraError::NotClassical {
                    reason: "carrier has no unique additive identity".to_string(),
                })
            }
        };
        let mut neg = Vec::new();
        for a in carrier.iter() {
            match carrier
                .iter()
                .find(|&b| add(a, b) == zero && add(b, a) == zero)
            {
                Some(b) => neg.push((a, b)),
                None => {
                    return Err(AlgebraError::NotClassical {
                        reason: format!("carrier element {a} has no additive inverse"),
                    })
                }
            }
        }
        let unity = carrier
            .iter()
            .find(|&u| carrier.iter().all(|a| mul(a, u) == a && mul(u, a) == a));
        let units = match unity {
            None => PointSet::EMPTY,
            Some(u) => carrier
                .iter()
                .filter(|&a| carrier.iter().any(|b| mul(a, b) == u && mul(b, a) == u))
                .collect(),
        };
        Ok(ClassicalRing {
            inst,
            carrier,
            neg,
            unity,
            units,
        })
    }

    fn neg_of(&self, a: usize) -> usize {
        self.neg
            .iter()
            .find(|(x, _)| *x == a)
            .expect("neg is total on the carrier")
            .1
    }

    fn is_ideal(&self, q: PointSet) -> Option<Witness> {
        for a in q.iter() {
            for b in q.iter() {
                let s = self.inst.add(a, b);
                if !q.contains(s) {
                    return Some(Witness::new(
                        vec![a, b],
                        format!("{a}+{b} = {s} leaves the set"),
                    ));
                }
            }
        }
        for a in q.iter() {
            let n = self.neg_of(a);
            if !q.contains(n) {
                return Some(Witness::new(
                    vec![a],
                    format!("-{a} = {n} is not in the set"),
                ));
            }
        }
        for r in self.carrier.iter() {
            for a in q.iter() {
                let p = self.inst.mul(r, a);
                if !q.contains(p) {
                    return Some(Witness::new(
                        vec![r, a],
                        format!("{r}*{a} = {p} leaves the set"),
                    ));
                }
            }
        }
        None
    }

    fn power_hits(&self, s: usize, q: PointSet) -> bool {
        let mut p = s;
        for _ in 0..self.inst.n_points() {
            if q.contains(p) {
                return true;
            }
            p = self.inst.mul(p, s);
        }
        false
    }

    fn radical(&self, q: PointSet) -> PointSet {
        self.carrier
            .iter()
            .filter(|&s| self.power_hits(s, q))
            .collect()
    }

    fn prime_witness(&self, q: PointSet) -> Option<Witness> {
        for a in self.carrier.iter() {
            for b in self.carrier.iter() {
                let p = self.inst.mul(a, b);
                if q.contains(p) && !q.contains(a) && !q.contains(b) {
                    return Some(Witness::new(
                        vec![a, b],
                        format!("{a}*{b} = {p} is in the ideal but neither factor is"),
                    ));
                }
            }
        }
        None
    }

    fn primary_witness(&self, q: PointSet) -> Option<Witness> {
        for a in self.carrier.iter() {
            for b in self.carrier.iter() {
                let p = self.inst.mul(a, b);
                if q.contains(p) && !q.contains(a) && !self.power_hits(b, q) {
                    return Some(Witness::new(
                        vec![a, b],
                        format!("{a}*{b} = {p} is in the ideal, {a} is outside, and no power of {b} lands in it"),
                    ));
                }
            }
        }
        None
    }

    fn one_absorbing_witness(&self, q: PointSet, rad: PointSet) -> Option<Witness> {
        let non_units = self.carrier.minus(self.units);
        for a in non_units.iter() {
            for b in non_units.iter() {
                let ab = self.inst.mul(a, b);
                if q.contains(ab) {
                    continue;
                }
                for c in non_units.iter() {
                    let abc = self.inst.mul(ab, c);
                    if q.contains(abc) && !rad.contains(c) {
                        return Some(Witness::new(
                            vec![a, b, c],
                            format!("({a}*{b})*{c} = {abc} is in the ideal, {a}*{b} = {ab} is outside, and {c} avoids the radical"),
                        ));
                    }
                }
            }
        }
        None
    }

    fn classify(&self, q: PointSet) -> ClassificationReport {
        let radical_members = self.radical(q);
        let ideal = match self.is_ideal(q) {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        };
        if !ideal.holds() {
            let na = Verdict::NotApplicable("the set is not an ideal".to_string());
            return ClassificationReport {
                ideal,
                prime: na.clone(),
                primary: na.clone(),
                semi_primary: na.clone(),
                one_absorbing: na,
                radical_members,
                p_primary_target: None,
            };
        }
        let prime = match self.prime_witness(q) {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        };
        let primary = match self.primary_witness(q) {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        };
        let semi_primary = match self.is_ideal(radical_members) {
            Some(w) => Verdict::Fails(Witness::new(
                radical_members.to_vec(),
                format!("radical is not an ideal: {}", w.detail),
            )),
            None => match self.prime_witness(radical_members) {
                None => Verdict::Holds,
                Some(w) => Verdict::Fails(w),
            },
        };
        let one_absorbing = match self.unity {
            None => {
                Verdict::NotApplicable("no unity element, so non-units are undefined".to_string())
            }
            Some(_) => match self.one_absorbing_witness(q, radical_members) {
                None => Verdict::Holds,
                Some(w) => Verdict::Fails(w),
            },
        };
        let p_primary_target = if primary.holds() && semi_primary.holds() {
            Some(radical_members)
        } else {
            None
        };
        ClassificationReport {
            ideal,
            prime,
            primary,
            semi_primary,
            one_absorbing,
            radical_members,
            p_primary_target,
        }
    }

    fn enumerate_ideals(&self) -> Vec<PointSet> {
        let mask = self.carrier.mask();
        let mut out = Vec::new();
        let mut sub = 0u64;
        loop {
            sub = sub.wrapping_sub(mask) & mask;
            if sub == 0 {
                break;
            }
            let q = PointSet::from_mask(sub);
            if self.is_ideal(q).is_none() {
                out.push(q);
            }
        }
        out
    }
}

/// Classifies every classical ideal with textbook definitions.
///
/// Only defined on classical instances (injective probe, closed carrier);
/// anything else is rejected.
pub fn classical_oracle(inst: &AlgebraInstance) -> Result<Vec<(PointSet, ClassificationReport)>> {
    guard_classical(inst)?;
    if inst.carrier().len() > 16 {
        return Err(AlgebraError::TooLarge {
            what: "classical ideal enumeration",
            size: inst.carrier().len(),
            bound: 16,
        });
    }
    let ring = ClassicalRing::build(inst)?;
    Ok(ring
        .enumerate_ideals()
        .into_iter()
        .map(|q| (q, ring.classify(q)))
        .collect())
}

/// Semantic equality of two reports: verdict kinds, witness points, radical,
/// and target must agree; human-readable details may differ.
pub fn reports_equivalent(a: &ClassificationReport, b: &ClassificationReport) -> bool {
    fn verdicts_match(x: &Verdict, y: &Verdict) -> bool {
        match (x, y) {
            (Verdict::Holds, Verdict::Holds) => true,
            (Verdict::Fails(wa), Verdict::Fails(wb)) => wa.points == wb.points,
            (Verdict::NotApplicable(_), Verdict::NotApplicable(_)) => true,
            _ => false,
        }
    }
    verdicts_match(&a.ideal, &b.ideal)
        && verdicts_match(&a.prime, &b.prime)
        && verdicts_match(&a.primary, &b.primary)
        && verdicts_match(&a.semi_primary, &b.semi_primary)
        && verdicts_match(&a.one_absorbing, &b.one_absorbing)
        && a.radical_members == b.radical_members
        && a.p_primary_target == b.p_primary_target
}
