//! Quotient structures: cosets of the carrier modulo an ideal.
//!
//! Cosets are built from the relation `a ~ b` iff `a + (-b)` lies in the
//! ideal. In the approximate setting this relation need not be an
//! equivalence and the coset operations need not be independent of
//! representatives; both properties are verified and recorded rather than
//! assumed, and a flagged structure is still returned for inspection.

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::ideals::is_approx_ideal;
use crate::space::{DescriptiveSpace, FeatureVector, PointSet};
use crate::structures::{AlgebraInstance, OpTable, Witness};

/// How coset representatives are tested against the zero coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ZeroTestMode {
    /// Representative must lie in the ideal itself.
    Strict,
    /// Representative must lie in the upper approximation of the ideal.
    Descriptive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientStructure {
    /// Blocks of the carrier, each listed by its members; block `i` has
    /// representative `cosets[i].first()`. Deterministic greedy construction.
    pub cosets: Vec<PointSet>,
    /// Indices of cosets whose representative passes the zero test. More
    /// than one is possible in descriptive mode.
    pub zero_cosets: Vec<usize>,
    /// Coset-level addition, entry per coset index pair.
    pub coset_add: Vec<Vec<usize>>,
    /// Coset-level multiplication.
    pub coset_mul: Vec<Vec<usize>>,
    pub zero_test_mode: ZeroTestMode,
    /// True when the relation is an equivalence and both operations are
    /// independent of representatives.
    pub well_defined: bool,
    pub witness: Option<Witness>,
}

/// Builds the quotient of the carrier by an ideal.
pub fn quotient(
    inst: &AlgebraInstance,
    w: PointSet,
    mode: ZeroTestMode,
) -> Result<QuotientStructure> {
    let ideal_check = is_approx_ideal(inst, w)?;
    if !ideal_check.holds {
        return Err(AlgebraError::NotAnIdeal {
            members: w
                .to_vec()
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(","),
            reason: ideal_check.witness.map(|x| x.detail).unwrap_or_default(),
        });
    }
    let neg = inst.neg_map()?.clone();
    let related = |a: usize, b: usize| w.contains(inst.add(a, neg[&b]));

    let mut well_defined = true;
    let mut witness: Option<Witness> = None;
    let note = |w: Witness, flag: &mut bool, slot: &mut Option<Witness>| {
        *flag = false;
        if slot.is_none() {
            *slot = Some(w);
        }
    };

    // Equivalence checks over the carrier, lex order.
    'refl: {
        for a in inst.carrier().iter() {
            if !related(a, a) {
                note(
                    Witness::new(vec![a], format!("{a} is not related to itself")),
                    &mut well_defined,
                    &mut witness,
                );
                break 'refl;
            }
        }
    }
    'sym: for a in inst.carrier().iter() {
        for b in inst.carrier().iter() {
            if related(a, b) != related(b, a) {
                note(
                    Witness::new(vec![a, b], format!("relation is asymmetric on ({a},{b})")),
                    &mut well_defined,
                    &mut witness,
                );
                break 'sym;
            }
        }
    }
    'trans: for a in inst.carrier().iter() {
        for b in inst.carrier().iter() {
            if !related(a, b) {
                continue;
            }
            for c in inst.carrier().iter() {
                if related(b, c) && !related(a, c) {
                    note(
                        Witness::new(
                            vec![a, b, c],
                            format!("relation is not transitive on ({a},{b},{c})"),
                        ),
                        &mut well_defined,
                        &mut witness,
                    );
                    break 'trans;
                }
            }
        }
    }

    // Greedy deterministic blocks: each unassigned element in ascending
    // order collects everything still unassigned that relates to it.
    let mut assigned = PointSet::EMPTY;
    let mut cosets: Vec<PointSet> = Vec::new();
    for a in inst.carrier().iter() {
        if assigned.contains(a) {
            continue;
        }
        let mut block = PointSet::singleton(a);
        for b in inst.carrier().iter() {
            if !assigned.contains(b) && b != a && related(a, b) {
                block.insert(b);
            }
        }
        assigned = assigned.union(block);
        cosets.push(block);
    }

    let coset_index_of = |x: usize| -> Option<usize> {
        if inst.carrier().contains(x) {
            cosets.iter().position(|c| c.contains(x))
        } else {
            // Values outside the carrier are placed by the coset relation.
            cosets.iter().position(|c| {
                let rep = c.first().expect("cosets are nonempty");
                w.contains(inst.add(x, neg[&rep]))
            })
        }
    };

    // Coset operations from representatives, then a representative
    // independence sweep.
    let k = cosets.len();
    let mut coset_add = vec![vec![0usize; k]; k];
    let mut coset_mul = vec![vec![0usize; k]; k];
    for (i, ci) in cosets.iter().enumerate() {
        for (j, cj) in cosets.iter().enumerate() {
            let ri = ci.first().unwrap();
            let rj = cj.first().unwrap();
            let sum_target = coset_index_of(inst.add(ri, rj));
            let prod_target = coset_index_of(inst.mul(ri, rj));
            match sum_target {
                Some(t) => coset_add[i][j] = t,
                None => {
                    coset_add[i][j] = 0;
                    note(
                        Witness::new(
                            vec![ri, rj],
                            format!("{ri}+{rj} = {} falls in no coset", inst.add(ri, rj)),
                        ),
                        &mut well_defined,
                        &mut witness,
                    );
                }
            }
            match prod_target {
                Some(t) => coset_mul[i][j] = t,
                None => {
                    coset_mul[i][j] = 0;
                    note(
                        Witness::new(
                            vec![ri, rj],
                            format!("{ri}*{rj} = {} falls in no coset", inst.mul(ri, rj)),
                        ),
                        &mut well_defined,
                        &mut witness,
                    );
                }
            }
            for a in ci.iter() {
                for b in cj.iter() {
                    let s = coset_index_of(inst.add(a, b));
                    if s != sum_target {
                        note(
                            Witness::new(
                                vec![ri, rj, a, b],
                                format!(
                                    "sum of coset {i} and coset {j} depends on representatives ({ri},{rj}) vs ({a},{b})"
                                ),
                            ),
                            &mut well_defined,
                            &mut witness,
                        );
                    }
                    let p = coset_index_of(inst.mul(a, b));
                    if p != prod_target {
                        note(
                            Witness::new(
                                vec![ri, rj, a, b],
                                format!(
                                    "product of coset {i} and coset {j} depends on representatives ({ri},{rj}) vs ({a},{b})"
                                ),
                            ),
                            &mut well_defined,
                            &mut witness,
                        );
                    }
                }
            }
        }
    }

    let upper_w = inst.space().upper_approx(w);
    let zero_cosets: Vec<usize> = cosets
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let rep = c.first().unwrap();
            match mode {
                ZeroTestMode::Strict => w.contains(rep),
                ZeroTestMode::Descriptive => upper_w.contains(rep),
            }
        })
        .map(|(i, _)| i)
        .collect();

    Ok(QuotientStructure {
        cosets,
        zero_cosets,
        coset_add,
        coset_mul,
        zero_test_mode: mode,
        well_defined,
        witness,
    })
}

impl QuotientStructure {
    pub fn n_cosets(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_zero(&self, coset: usize) -> bool {
        self.zero_cosets.contains(&coset)
    }

    /// Coset containing a carrier element.
    pub fn coset_of(&self, x: usize) -> Option<usize> {
        self.cosets.iter().position(|c| c.contains(x))
    }

    /// Nonzero cosets that multiply some nonzero coset into a zero coset.
    pub fn zero_divisors(&self) -> Vec<usize> {
        (0..self.n_cosets())
            .filter(|&i| {
                !self.is_zero(i)
                    && (0..self.n_cosets())
                        .any(|j| !self.is_zero(j) && self.is_zero(self.coset_mul[i][j]))
            })
            .collect()
    }

    /// Least exponent at which the repeated coset product reaches a zero
    /// coset, searched up to the coset count.
    pub fn nilpotency(&self, coset: usize) -> Option<u32> {
        let mut p = coset;
        for m in 1..=self.n_cosets() as u32 {
            if self.is_zero(p) {
                return Some(m);
            }
            p = self.coset_mul[p][coset];
        }
        None
    }

    /// Image of a subset of the carrier: the sorted coset indices its
    /// members fall into.
    pub fn ideal_image(&self, members: PointSet) -> Vec<usize> {
        let mut out: Vec<usize> = members.iter().filter_map(|x| self.coset_of(x)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// The quotient as a standalone instance: points are cosets, tables are
    /// the coset tables, and each coset inherits the feature vector of its
    /// representative.
    pub fn as_instance(&self, parent: &AlgebraInstance) -> Result<AlgebraInstance> {
        let k = self.n_cosets();
        let probe: Vec<FeatureVector> = self
            .cosets
            .iter()
            .map(|c| {
                parent
                    .space()
                    .feature(c.first().expect("nonempty coset"))
                    .clone()
            })
            .collect();
        let space = DescriptiveSpace::new(probe)?;
        let add = OpTable::from_fn(k, |a, b| self.coset_add[a][b])?;
        let mul = OpTable::from_fn(k, |a, b| self.coset_mul[a][b])?;
        AlgebraInstance::new(space, add, mul, PointSet::full(k))
    }
}
