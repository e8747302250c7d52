//! Finite descriptive spaces.
//!
//! A space is a dense set of points `0..n_points`, each carrying a probe
//! feature vector of small integers. Two points are descriptively near when
//! their feature vectors are equal; the induced machinery (descriptive
//! intersection, nearness of subsets, upper approximation) is exact, with no
//! tolerances.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{AlgebraError, Result};

/// Hard cap on the number of points in a space, fixed by the bitset width
/// used for [`PointSet`].
pub const MAX_POINTS: usize = 64;

/// A probe reading: an ordered tuple of integers. Equality is componentwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FeatureVector(pub Vec<i64>);

impl FeatureVector {
    pub fn new(values: Vec<i64>) -> Self {
        FeatureVector(values)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// A subset of point indices, canonically iterated in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n_points: usize) -> Self {
        debug_assert!(n_points <= MAX_POINTS);
        if n_points == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n_points) - 1)
        }
    }

    pub fn from_mask(mask: u64) -> Self {
        PointSet(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_POINTS);
        PointSet(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut mask = 0u64;
        for i in indices {
            debug_assert!(i < MAX_POINTS);
            mask |= 1u64 << i;
        }
        PointSet(mask)
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_POINTS && self.0 >> index & 1 == 1
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < MAX_POINTS);
        self.0 |= 1u64 << index;
    }

    pub fn remove(&mut self, index: usize) {
        if index < MAX_POINTS {
            self.0 &= !(1u64 << index);
        }
    }

    pub fn with(self, index: usize) -> Self {
        let mut s = self;
        s.insert(index);
        s
    }

    pub fn union(self, other: PointSet) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersect(self, other: PointSet) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn minus(self, other: PointSet) -> Self {
        PointSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet::from_indices(iter)
    }
}

impl std::fmt::Display for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

/// A finite descriptive space: points `0..n_points` with a total probe.
///
/// Feature classes (level sets of the probe) are precomputed so that upper
/// approximations and descriptive intersections are cheap bitset unions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescriptiveSpace {
    probe: Vec<FeatureVector>,
    class_of: Vec<u16>,
    class_members: Vec<PointSet>,
}

impl DescriptiveSpace {
    /// Builds a space from one feature vector per point. All vectors must
    /// share the same arity and there must be 1..=64 points.
    pub fn new(probe: Vec<FeatureVector>) -> Result<Self> {
        if probe.is_empty() {
            return Err(AlgebraError::validation("a space needs at least one point"));
        }
        if probe.len() > MAX_POINTS {
            return Err(AlgebraError::TooLarge {
                what: "space",
                size: probe.len(),
                bound: MAX_POINTS,
            });
        }
        let arity = probe[0].arity();
        if probe.iter().any(|v| v.arity() != arity) {
            return Err(AlgebraError::validation(
                "all feature vectors must have the same arity",
            ));
        }
        let mut ids: BTreeMap<&FeatureVector, u16> = BTreeMap::new();
        let mut class_of = Vec::with_capacity(probe.len());
        for v in &probe {
            let next = ids.len() as u16;
            let id = *ids.entry(v).or_insert(next);
            class_of.push(id);
        }
        let mut class_members = vec![PointSet::EMPTY; ids.len()];
        for (i, &c) in class_of.iter().enumerate() {
            class_members[c as usize].insert(i);
        }
        Ok(DescriptiveSpace {
            probe,
            class_of,
            class_members,
        })
    }

    /// Convenience constructor: arity-1 probe from one integer per point.
    pub fn from_scalar_probe(values: &[i64]) -> Result<Self> {
        DescriptiveSpace::new(values.iter().map(|&v| FeatureVector(vec![v])).collect())
    }

    pub fn n_points(&self) -> usize {
        self.probe.len()
    }

    pub fn arity(&self) -> usize {
        self.probe[0].arity()
    }

    pub fn feature(&self, point: usize) -> &FeatureVector {
        &self.probe[point]
    }

    pub fn probe(&self) -> &[FeatureVector] {
        &self.probe
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.n_points())
    }

    /// True when distinct points never share a feature vector. In that case
    /// every descriptive notion collapses to its exact counterpart.
    pub fn injective_probe(&self) -> bool {
        self.class_members.len() == self.n_points()
    }

    pub fn n_classes(&self) -> usize {
        self.class_members.len()
    }

    pub fn validate_subset(&self, s: PointSet) -> Result<()> {
        match s.minus(self.all_points()).first() {
            None => Ok(()),
            Some(index) => Err(AlgebraError::MismatchedSpace {
                index,
                n_points: self.n_points(),
            }),
        }
    }

    /// Bitmask over feature-class ids occurring in `s`.
    fn class_set(&self, s: PointSet) -> u64 {
        let mut classes = 0u64;
        for p in s.iter() {
            classes |= 1u64 << self.class_of[p];
        }
        classes
    }

    /// All points sharing a feature vector with some member of `n`.
    ///
    /// The result always contains `n` and is idempotent under repetition.
    pub fn upper_approx(&self, n: PointSet) -> PointSet {
        let mut out = PointSet::EMPTY;
        for p in n.intersect(self.all_points()).iter() {
            out = out.union(self.class_members[self.class_of[p] as usize]);
        }
        out
    }

    /// Members of `a ∪ b` whose feature vector occurs in both feature images.
    pub fn descriptive_intersection(&self, a: PointSet, b: PointSet) -> Result<PointSet> {
        self.validate_subset(a)?;
        self.validate_subset(b)?;
        let shared = self.class_set(a) & self.class_set(b);
        let mut out = PointSet::EMPTY;
        for p in a.union(b).iter() {
            if shared >> self.class_of[p] & 1 == 1 {
                out.insert(p);
            }
        }
        Ok(out)
    }

    /// Descriptive nearness: nonempty descriptive intersection.
    pub fn near(&self, a: PointSet, b: PointSet) -> Result<bool> {
        Ok(!self.descriptive_intersection(a, b)?.is_empty())
    }

    /// Space whose probe keeps only the given feature coordinates. This is
    /// how coarser nearness relations are derived from the same points.
    pub fn project_probe(&self, coords: &[usize]) -> Result<DescriptiveSpace> {
        if coords.is_empty() {
            return Err(AlgebraError::validation(
                "projection needs at least one coordinate",
            ));
        }
        let arity = self.arity();
        if let Some(&bad) = coords.iter().find(|&&c| c >= arity) {
            return Err(AlgebraError::validation(format!(
                "coordinate {bad} out of range for arity {arity}"
            )));
        }
        let probe = self
            .probe
            .iter()
            .map(|v| FeatureVector(coords.iter().map(|&c| v.0[c]).collect()))
            .collect();
        DescriptiveSpace::new(probe)
    }
}

/// Where a proximity relation came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationOrigin {
    DerivedFromProbe,
    UserSupplied,
}

#[derive(Debug, Clone)]
enum RelationKind {
    Derived(DescriptiveSpace),
    /// Explicit truth table indexed by `(a_mask << n) | b_mask`.
    Table {
        n: usize,
        bits: Vec<bool>,
    },
}

/// A proximity relation on the subsets of a space.
///
/// Derived relations evaluate nearness through the probe and satisfy the
/// axioms by construction. Tabulated relations can be edited, which is how
/// deliberately broken relations are built for validation.
#[derive(Debug, Clone)]
pub struct ProximityRelation {
    origin: RelationOrigin,
    n_points: usize,
    kind: RelationKind,
}

/// Explicit relation tables are only built for small spaces.
pub const MAX_TABULATED_POINTS: usize = 12;

impl ProximityRelation {
    /// The relation induced by the probe, evaluated lazily.
    pub fn derived(space: &DescriptiveSpace) -> Self {
        ProximityRelation {
            origin: RelationOrigin::DerivedFromProbe,
            n_points: space.n_points(),
            kind: RelationKind::Derived(space.clone()),
        }
    }

    /// The derived relation, materialized as an explicit table so individual
    /// pairs can be overridden.
    pub fn tabulated(space: &DescriptiveSpace) -> Result<Self> {
        let n = space.n_points();
        if n > MAX_TABULATED_POINTS {
            return Err(AlgebraError::TooLarge {
                what: "tabulated relation",
                size: n,
                bound: MAX_TABULATED_POINTS,
            });
        }
        let subsets = 1usize << n;
        let mut bits = vec![false; subsets * subsets];
        for a in 0..subsets as u64 {
            let sa = PointSet::from_mask(a);
            for b in 0..subsets as u64 {
                let sb = PointSet::from_mask(b);
                bits[(a as usize) << n | b as usize] = !space
                    .descriptive_intersection(sa, sb)
                    .expect("validated masks")
                    .is_empty();
            }
        }
        Ok(ProximityRelation {
            origin: RelationOrigin::DerivedFromProbe,
            n_points: n,
            kind: RelationKind::Table { n, bits },
        })
    }

    pub fn origin(&self) -> RelationOrigin {
        self.origin
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Overrides a single directed pair. Marks the relation user-supplied.
    pub fn set_pair(&mut self, a: PointSet, b: PointSet, value: bool) -> Result<()> {
        match &mut self.kind {
            RelationKind::Derived(_) => Err(AlgebraError::validation(
                "only tabulated relations can be edited; build one with `tabulated`",
            )),
            RelationKind::Table { n, bits } => {
                let full = PointSet::full(*n);
                if !a.is_subset(full) || !b.is_subset(full) {
                    return Err(AlgebraError::MismatchedSpace {
                        index: a.union(b).minus(full).first().unwrap_or(*n),
                        n_points: *n,
                    });
                }
                bits[(a.mask() as usize) << *n | b.mask() as usize] = value;
                self.origin = RelationOrigin::UserSupplied;
                Ok(())
            }
        }
    }

    /// Overrides both directions of a pair.
    pub fn set_pair_symmetric(&mut self, a: PointSet, b: PointSet, value: bool) -> Result<()> {
        self.set_pair(a, b, value)?;
        self.set_pair(b, a, value)
    }

    pub fn holds(&self, a: PointSet, b: PointSet) -> bool {
        match &self.kind {
            RelationKind::Derived(space) => !space
                .descriptive_intersection(a, b)
                .map(|s| s.is_empty())
                .unwrap_or(true),
            RelationKind::Table { n, bits } => bits[(a.mask() as usize) << *n | b.mask() as usize],
        }
    }
}

/// The four axioms a descriptive proximity must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DpAxiom {
    /// Every subset is far from the void set.
    Dp0,
    /// Symmetry of nearness.
    Dp1,
    /// Nearness coincides with nonempty descriptive intersection
    /// (checked over nonempty pairs; the void cases belong to Dp0).
    Dp2,
    /// Nearness to a union is nearness to one of the parts.
    Dp3,
}

impl std::fmt::Display for DpAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DpAxiom::Dp0 => write!(f, "DP.0"),
            DpAxiom::Dp1 => write!(f, "DP.1"),
            DpAxiom::Dp2 => write!(f, "DP.2"),
            DpAxiom::Dp3 => write!(f, "DP.3"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomVerdict {
    pub axiom: DpAxiom,
    pub pass: bool,
    /// The subsets violating the axiom, in statement order.
    pub witness: Option<Vec<PointSet>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DpCheckMode {
    Exhaustive,
    Sampled { tuples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DpReport {
    pub mode: DpCheckMode,
    pub axioms: [AxiomVerdict; 4],
}

impl DpReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.pass)
    }

    pub fn verdict(&self, axiom: DpAxiom) -> &AxiomVerdict {
        self.axioms
            .iter()
            .find(|a| a.axiom == axiom)
            .expect("all four axioms present")
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DpCheckOptions {
    /// Spaces up to this many points are checked over every subset tuple.
    pub exhaustive_bound: usize,
    /// Above the bound, this many random tuples are sampled per axiom.
    /// With zero samples larger spaces are rejected instead.
    pub samples: usize,
    pub seed: u64,
}

impl Default for DpCheckOptions {
    fn default() -> Self {
        DpCheckOptions {
            exhaustive_bound: 6,
            samples: 2048,
            seed: 0xA11CE,
        }
    }
}

/// Validates a relation against the four descriptive proximity axioms.
///
/// Witnesses are the first violating tuples in ascending mask order, so
/// reports are reproducible.
pub fn check_dp_axioms(
    space: &DescriptiveSpace,
    rel: &ProximityRelation,
    opts: &DpCheckOptions,
) -> Result<DpReport> {
    if rel.n_points() != space.n_points() {
        return Err(AlgebraError::MismatchedSpace {
            index: rel.n_points(),
            n_points: space.n_points(),
        });
    }
    let n = space.n_points();
    if n <= opts.exhaustive_bound {
        Ok(check_exhaustive(space, rel))
    } else if opts.samples > 0 {
        Ok(check_sampled(space, rel, opts))
    } else {
        Err(AlgebraError::TooLarge {
            what: "DP-axiom check",
            size: n,
            bound: opts.exhaustive_bound,
        })
    }
}

fn check_exhaustive(space: &DescriptiveSpace, rel: &ProximityRelation) -> DpReport {
    let n = space.n_points();
    let subsets: u64 = 1u64 << n;
    let empty = PointSet::EMPTY;

    let mut dp0 = AxiomVerdict {
        axiom: DpAxiom::Dp0,
        pass: true,
        witness: None,
    };
    for m in 0..subsets {
        let s = PointSet::from_mask(m);
        if rel.holds(empty, s) || rel.holds(s, empty) {
            dp0 = AxiomVerdict {
                axiom: DpAxiom::Dp0,
                pass: false,
                witness: Some(vec![s, empty]),
            };
            break;
        }
    }

    let mut dp1 = AxiomVerdict {
        axiom: DpAxiom::Dp1,
        pass: true,
        witness: None,
    };
    'dp1: for a in 0..subsets {
        for b in 0..subsets {
            let (sa, sb) = (PointSet::from_mask(a), PointSet::from_mask(b));
            if rel.holds(sa, sb) != rel.holds(sb, sa) {
                dp1 = AxiomVerdict {
                    axiom: DpAxiom::Dp1,
                    pass: false,
                    witness: Some(vec![sa, sb]),
                };
                break 'dp1;
            }
        }
    }

    let mut dp2 = AxiomVerdict {
        axiom: DpAxiom::Dp2,
        pass: true,
        witness: None,
    };
    'dp2: for a in 1..subsets {
        for b in 1..subsets {
            let (sa, sb) = (PointSet::from_mask(a), PointSet::from_mask(b));
            let derived = !space
                .descriptive_intersection(sa, sb)
                .expect("in range")
                .is_empty();
            if derived != rel.holds(sa, sb) {
                dp2 = AxiomVerdict {
                    axiom: DpAxiom::Dp2,
                    pass: false,
                    witness: Some(vec![sa, sb]),
                };
                break 'dp2;
            }
        }
    }

    let mut dp3 = AxiomVerdict {
        axiom: DpAxiom::Dp3,
        pass: true,
        witness: None,
    };
    'dp3: for k in 1..subsets {
        for s in 1..subsets {
            for l in 1..subsets {
                let (sk, ss, sl) = (
                    PointSet::from_mask(k),
                    PointSet::from_mask(s),
                    PointSet::from_mask(l),
                );
                if rel.holds(sk, ss.union(sl)) != (rel.holds(sk, ss) || rel.holds(sk, sl)) {
                    dp3 = AxiomVerdict {
                        axiom: DpAxiom::Dp3,
                        pass: false,
                        witness: Some(vec![sk, ss, sl]),
                    };
                    break 'dp3;
                }
            }
        }
    }

    DpReport {
        mode: DpCheckMode::Exhaustive,
        axioms: [dp0, dp1, dp2, dp3],
    }
}

fn check_sampled(
    space: &DescriptiveSpace,
    rel: &ProximityRelation,
    opts: &DpCheckOptions,
) -> DpReport {
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed);
    let full = PointSet::full(space.n_points());
    let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
        PointSet::from_mask(rng.random::<u64>()).intersect(full)
    };
    let empty = PointSet::EMPTY;

    let mut dp0 = AxiomVerdict {
        axiom: DpAxiom::Dp0,
        pass: true,
        witness: None,
    };
    let mut dp1 = AxiomVerdict {
        axiom: DpAxiom::Dp1,
        pass: true,
        witness: None,
    };
    let mut dp2 = AxiomVerdict {
        axiom: DpAxiom::Dp2,
        pass: true,
        witness: None,
    };
    let mut dp3 = AxiomVerdict {
        axiom: DpAxiom::Dp3,
        pass: true,
        witness: None,
    };

    for _ in 0..opts.samples {
        let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        if dp0.pass && (rel.holds(empty, a) || rel.holds(a, empty)) {
            dp0 = AxiomVerdict {
                axiom: DpAxiom::Dp0,
                pass: false,
                witness: Some(vec![a, empty]),
            };
        }
        if dp1.pass && rel.holds(a, b) != rel.holds(b, a) {
            dp1 = AxiomVerdict {
                axiom: DpAxiom::Dp1,
                pass: false,
                witness: Some(vec![a, b]),
            };
        }
        if dp2.pass && !a.is_empty() && !b.is_empty() {
            let derived = !space
                .descriptive_intersection(a, b)
                .expect("in range")
                .is_empty();
            if derived != rel.holds(a, b) {
                dp2 = AxiomVerdict {
                    axiom: DpAxiom::Dp2,
                    pass: false,
                    witness: Some(vec![a, b]),
                };
            }
        }
        if dp3.pass
            && !a.is_empty()
            && !b.is_empty()
            && !c.is_empty()
            && rel.holds(a, b.union(c)) != (rel.holds(a, b) || rel.holds(a, c))
        {
            dp3 = AxiomVerdict {
                axiom: DpAxiom::Dp3,
                pass: false,
                witness: Some(vec![a, b, c]),
            };
        }
    }

    DpReport {
        mode: DpCheckMode::Sampled {
            tuples: opts.samples,
        },
        axioms: [dp0, dp1, dp2, dp3],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_parity() -> DescriptiveSpace {
        DescriptiveSpace::from_scalar_probe(&[0, 1, 0, 1]).unwrap()
    }

    fn z6_injective() -> DescriptiveSpace {
        DescriptiveSpace::from_scalar_probe(&[0, 1, 2, 3, 4, 5]).unwrap()
    }

    #[test]
    fn descriptive_intersection_parity_space() {
        let sp = z4_parity();
        let a = PointSet::from_indices([0]);
        let b = PointSet::from_indices([2]);
        assert_eq!(
            sp.descriptive_intersection(a, b).unwrap(),
            PointSet::from_indices([0, 2])
        );

        let odd = PointSet::from_indices([1]);
        assert_eq!(
            sp.descriptive_intersection(a, odd).unwrap(),
            PointSet::EMPTY
        );

        assert_eq!(
            sp.descriptive_intersection(PointSet::EMPTY, sp.all_points())
                .unwrap(),
            PointSet::EMPTY
        );
    }

    #[test]
    fn nearness_matches_descriptive_intersection() {
        let sp = z4_parity();
        assert!(sp
            .near(PointSet::from_indices([0]), PointSet::from_indices([2]))
            .unwrap());
        assert!(!sp
            .near(PointSet::from_indices([0]), PointSet::from_indices([1]))
            .unwrap());
        assert!(!sp.near(PointSet::EMPTY, sp.all_points()).unwrap());
    }

    #[test]
    fn upper_approx_examples() {
        let sp = z4_parity();
        assert_eq!(
            sp.upper_approx(PointSet::from_indices([0])),
            PointSet::from_indices([0, 2])
        );
        assert_eq!(sp.upper_approx(PointSet::EMPTY), PointSet::EMPTY);

        let inj = z6_injective();
        for mask in 0u64..64 {
            let n = PointSet::from_mask(mask);
            assert_eq!(inj.upper_approx(n), n);
        }
    }

    #[test]
    fn upper_approx_constant_probe_is_everything() {
        let sp = DescriptiveSpace::from_scalar_probe(&[7, 7, 7]).unwrap();
        assert_eq!(
            sp.upper_approx(PointSet::from_indices([1])),
            sp.all_points()
        );
        assert_eq!(sp.upper_approx(PointSet::EMPTY), PointSet::EMPTY);
    }

    #[test]
    fn mismatched_subset_is_rejected() {
        let sp = z4_parity();
        let bad = PointSet::from_indices([0, 5]);
        assert!(matches!(
            sp.descriptive_intersection(bad, PointSet::EMPTY),
            Err(AlgebraError::MismatchedSpace {
                index: 5,
                n_points: 4
            })
        ));
    }

    #[test]
    fn derived_relation_passes_all_axioms() {
        let sp = z4_parity();
        let rel = ProximityRelation::derived(&sp);
        let report = check_dp_axioms(&sp, &rel, &DpCheckOptions::default()).unwrap();
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn removing_one_direction_breaks_symmetry() {
        let sp = z4_parity();
        let mut rel = ProximityRelation::tabulated(&sp).unwrap();
        let a = PointSet::from_indices([0]);
        let b = PointSet::from_indices([2]);
        rel.set_pair(a, b, false).unwrap();
        assert_eq!(rel.origin(), RelationOrigin::UserSupplied);
        let report = check_dp_axioms(&sp, &rel, &DpCheckOptions::default()).unwrap();
        assert!(!report.verdict(DpAxiom::Dp1).pass);
        assert!(report.verdict(DpAxiom::Dp0).pass);
    }

    #[test]
    fn declaring_empty_near_everything_breaks_only_dp0() {
        let sp = z4_parity();
        let mut rel = ProximityRelation::tabulated(&sp).unwrap();
        rel.set_pair_symmetric(PointSet::EMPTY, sp.all_points(), true)
            .unwrap();
        let report = check_dp_axioms(&sp, &rel, &DpCheckOptions::default()).unwrap();
        assert!(!report.verdict(DpAxiom::Dp0).pass);
        assert!(report.verdict(DpAxiom::Dp1).pass);
        assert!(report.verdict(DpAxiom::Dp2).pass);
        assert!(report.verdict(DpAxiom::Dp3).pass);
    }

    #[test]
    fn extra_far_pair_breaks_union_axiom() {
        let sp = z4_parity();
        let mut rel = ProximityRelation::tabulated(&sp).unwrap();
        // {0} shares no feature with {1,3}, so gluing them near contradicts
        // the decomposition {1,3} = {1} u {3}.
        let k = PointSet::from_indices([0]);
        let m = PointSet::from_indices([1, 3]);
        rel.set_pair_symmetric(k, m, true).unwrap();
        let report = check_dp_axioms(&sp, &rel, &DpCheckOptions::default()).unwrap();
        assert!(!report.verdict(DpAxiom::Dp3).pass);
        assert!(report.verdict(DpAxiom::Dp0).pass);
        assert!(report.verdict(DpAxiom::Dp1).pass);
    }

    #[test]
    fn projection_coarsens_the_relation() {
        let sp = DescriptiveSpace::new(vec![
            FeatureVector(vec![0, 0]),
            FeatureVector(vec![0, 1]),
            FeatureVector(vec![1, 0]),
        ])
        .unwrap();
        assert!(sp.injective_probe());
        let coarse = sp.project_probe(&[0]).unwrap();
        assert!(!coarse.injective_probe());
        assert_eq!(
            coarse.upper_approx(PointSet::from_indices([0])),
            PointSet::from_indices([0, 1])
        );
        assert!(sp.project_probe(&[2]).is_err());
    }

    #[test]
    fn point_set_iteration_is_ascending() {
        let s = PointSet::from_indices([5, 1, 3]);
        assert_eq!(s.to_vec(), vec![1, 3, 5]);
        assert_eq!(s.len(), 3);
        assert_eq!(format!("{s}"), "{1,3,5}");
    }
}
