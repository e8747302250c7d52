//! Operation tables over a space and the approximately-algebraic axioms.
//!
//! An instance carries two total binary operations on the whole point set
//! plus a nonempty carrier subset. Axioms are the usual groupoid, semigroup,
//! group, and ring laws with every closure and identity requirement relaxed
//! from the carrier to its upper approximation. All quantifiers run over the
//! carrier; table evaluation happens in the full point set, so intermediate
//! values may leave the carrier.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{AlgebraError, OpKind, Result};
use crate::space::{DescriptiveSpace, PointSet};

/// A total binary operation on the points, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OpTable {
    n: usize,
    entries: Vec<usize>,
}

impl OpTable {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(AlgebraError::validation(format!(
                "operation table must have {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= n) {
            return Err(AlgebraError::validation(format!(
                "table entry {bad} is not a point index below {n}"
            )));
        }
        Ok(OpTable { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(f(a, b));
            }
        }
        OpTable::new(n, entries)
    }

    /// Addition and multiplication tables of the integers mod `n`.
    pub fn modular(n: usize) -> (OpTable, OpTable) {
        let add = OpTable::from_fn(n, |a, b| (a + b) % n).expect("valid modular table");
        let mul = OpTable::from_fn(n, |a, b| (a * b) % n).expect("valid modular table");
        (add, mul)
    }

    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.n + b]
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.apply(a, b) == self.apply(b, a)))
    }

    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| {
                (0..self.n)
                    .all(|c| self.apply(self.apply(a, b), c) == self.apply(a, self.apply(b, c)))
            })
        })
    }
}

/// Identifier for one of the structure flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum StructureFlag {
    GroupoidAdd,
    SemigroupAdd,
    GroupAdd,
    AbelianAdd,
    GroupoidMul,
    SemigroupMul,
    Ring,
    Commutative,
    HasUnity,
    OpClosed,
    UpperClosedAdd,
    UpperClosedMul,
}

impl std::fmt::Display for StructureFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StructureFlag::GroupoidAdd => "groupoid_add",
            StructureFlag::SemigroupAdd => "semigroup_add",
            StructureFlag::GroupAdd => "group_add",
            StructureFlag::AbelianAdd => "abelian_add",
            StructureFlag::GroupoidMul => "groupoid_mul",
            StructureFlag::SemigroupMul => "semigroup_mul",
            StructureFlag::Ring => "ring",
            StructureFlag::Commutative => "commutative",
            StructureFlag::HasUnity => "has_unity",
            StructureFlag::OpClosed => "op_closed",
            StructureFlag::UpperClosedAdd => "upper_closed_add",
            StructureFlag::UpperClosedMul => "upper_closed_mul",
        };
        write!(f, "{name}")
    }
}

/// A counterexample: the points involved plus a short description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub points: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn new(points: Vec<usize>, detail: impl Into<String>) -> Self {
        Witness {
            points,
            detail: detail.into(),
        }
    }
}

/// Outcome of a single boolean check, carrying a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Checked {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Checked {
    pub fn pass() -> Self {
        Checked {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        Checked {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Decided axioms of an instance. Every false flag carries a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub groupoid_add: bool,
    pub semigroup_add: bool,
    pub group_add: bool,
    pub abelian_add: bool,
    pub groupoid_mul: bool,
    pub semigroup_mul: bool,
    pub ring: bool,
    pub commutative: bool,
    pub has_unity: bool,
    pub op_closed: bool,
    pub upper_closed_add: bool,
    pub upper_closed_mul: bool,
    pub witnesses: BTreeMap<StructureFlag, Witness>,
}

impl StructureFlags {
    pub fn get(&self, flag: StructureFlag) -> bool {
        match flag {
            StructureFlag::GroupoidAdd => self.groupoid_add,
            StructureFlag::SemigroupAdd => self.semigroup_add,
            StructureFlag::GroupAdd => self.group_add,
            StructureFlag::AbelianAdd => self.abelian_add,
            StructureFlag::GroupoidMul => self.groupoid_mul,
            StructureFlag::SemigroupMul => self.semigroup_mul,
            StructureFlag::Ring => self.ring,
            StructureFlag::Commutative => self.commutative,
            StructureFlag::HasUnity => self.has_unity,
            StructureFlag::OpClosed => self.op_closed,
            StructureFlag::UpperClosedAdd => self.upper_closed_add,
            StructureFlag::UpperClosedMul => self.upper_closed_mul,
        }
    }

    /// Ring, commutative multiplication, and a unity element.
    pub fn commutative_ring_with_unity(&self) -> bool {
        self.ring && self.commutative && self.has_unity
    }
}

/// Additive and multiplicative identities located in the upper approximation
/// of the carrier, plus the canonical inverse choice for each carrier point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityInfo {
    pub zero: usize,
    pub one: Option<usize>,
    /// Least-index additive inverse inside the carrier, per carrier element.
    pub neg: BTreeMap<usize, usize>,
}

/// Partial identity search results, cached per instance. `zero`, `one`, and
/// `neg` can fail independently.
#[derive(Debug, Clone)]
struct IdentitySearch {
    zero: Result<usize>,
    one: Result<Option<usize>>,
    neg: Result<BTreeMap<usize, usize>>,
    units: Result<PointSet>,
}

/// A space with two operation tables and a carrier subset.
///
/// Structure flags and identity searches run once at construction; instances
/// are immutable afterwards and safe to share across threads.
#[derive(Debug, Clone)]
pub struct AlgebraInstance {
    space: DescriptiveSpace,
    add: OpTable,
    mul: OpTable,
    carrier: PointSet,
    carrier_upper: PointSet,
    flags: StructureFlags,
    identities: IdentitySearch,
}

impl AlgebraInstance {
    pub fn new(
        space: DescriptiveSpace,
        add: OpTable,
        mul: OpTable,
        carrier: PointSet,
    ) -> Result<Self> {
        let n = space.n_points();
        if add.n() != n || mul.n() != n {
            return Err(AlgebraError::validation(format!(
                "tables are {}x{} and {}x{} but the space has {} points",
                add.n(),
                add.n(),
                mul.n(),
                mul.n(),
                n
            )));
        }
        space.validate_subset(carrier)?;
        if carrier.is_empty() {
            return Err(AlgebraError::EmptySet);
        }
        let carrier_upper = space.upper_approx(carrier);
        let flags = compute_flags(&add, &mul, carrier, carrier_upper);
        let identities = search_identities(&add, &mul, carrier, carrier_upper);
        Ok(AlgebraInstance {
            space,
            add,
            mul,
            carrier,
            carrier_upper,
            flags,
            identities,
        })
    }

    /// Instance over `Z_n` tables with probe `i mod k` and full carrier.
    pub fn modular(n: usize, probe_mod: usize) -> Result<Self> {
        Self::modular_with_carrier(n, probe_mod, PointSet::full(n))
    }

    pub fn modular_with_carrier(n: usize, probe_mod: usize, carrier: PointSet) -> Result<Self> {
        if probe_mod == 0 {
            return Err(AlgebraError::validation("probe modulus must be positive"));
        }
        let probe: Vec<i64> = (0..n).map(|i| (i % probe_mod) as i64).collect();
        let space = DescriptiveSpace::from_scalar_probe(&probe)?;
        let (add, mul) = OpTable::modular(n);
        AlgebraInstance::new(space, add, mul, carrier)
    }

    pub fn space(&self) -> &DescriptiveSpace {
        &self.space
    }

    pub fn add_table(&self) -> &OpTable {
        &self.add
    }

    pub fn mul_table(&self) -> &OpTable {
        &self.mul
    }

    pub fn carrier(&self) -> PointSet {
        self.carrier
    }

    /// Upper approximation of the carrier, cached.
    pub fn carrier_upper(&self) -> PointSet {
        self.carrier_upper
    }

    pub fn n_points(&self) -> usize {
        self.space.n_points()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.apply(a, b)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul.apply(a, b)
    }

    pub fn table(&self, op: OpKind) -> &OpTable {
        match op {
            OpKind::Add => &self.add,
            OpKind::Mul => &self.mul,
        }
    }

    /// The axiom flags computed at construction.
    pub fn flags(&self) -> &StructureFlags {
        &self.flags
    }

    /// The additive identity, if unique.
    pub fn zero(&self) -> Result<usize> {
        self.identities.zero.clone()
    }

    /// The unity element, if any; ambiguity is an error.
    pub fn unity(&self) -> Result<Option<usize>> {
        self.identities.one.clone()
    }

    /// Canonical additive inverse of a carrier element.
    pub fn neg(&self, a: usize) -> Result<usize> {
        let map = self.identities.neg.as_ref().map_err(Clone::clone)?;
        map.get(&a)
            .copied()
            .ok_or(AlgebraError::OutsideCarrier { index: a })
    }

    pub fn neg_map(&self) -> Result<&BTreeMap<usize, usize>> {
        self.identities.neg.as_ref().map_err(Clone::clone)
    }

    /// Zero, unity, and the inverse map together.
    pub fn identities(&self) -> Result<IdentityInfo> {
        Ok(IdentityInfo {
            zero: self.zero()?,
            one: self.unity()?,
            neg: self.neg_map()?.clone(),
        })
    }

    /// Left-normed power evaluated in the whole point set.
    pub fn power(&self, s: usize, n: u32) -> usize {
        debug_assert!(n >= 1);
        let mut p = s;
        for _ in 1..n {
            p = self.mul(p, s);
        }
        p
    }

    /// Carrier elements with a two-sided multiplicative inverse in the
    /// carrier.
    pub fn units(&self) -> Result<PointSet> {
        self.identities.units.clone()
    }

    /// Least exponent `m` with `s^m` equal to zero and inside the upper
    /// approximation of the carrier, if one exists. The search stops at the
    /// point count: the power orbit has at most that many distinct values.
    pub fn nilpotency(&self, s: usize) -> Result<Option<u32>> {
        let zero = self.zero()?;
        let bound = self.n_points() as u32;
        let mut p = s;
        for m in 1..=bound {
            if p == zero && self.carrier_upper.contains(p) {
                return Ok(Some(m));
            }
            p = self.mul(p, s);
        }
        Ok(None)
    }

    pub fn is_nilpotent(&self, s: usize) -> Result<bool> {
        Ok(self.nilpotency(s)?.is_some())
    }

    /// A non-unit whose every factorization into carrier elements uses a
    /// unit. Fails with the offending factor pair otherwise.
    pub fn irreducibility(&self, x: usize) -> Result<Checked> {
        if !self.carrier.contains(x) {
            return Err(AlgebraError::OutsideCarrier { index: x });
        }
        let units = self.units()?;
        if units.contains(x) {
            return Ok(Checked::fail(Witness::new(
                vec![x],
                format!("{x} is a unit"),
            )));
        }
        for y in self.carrier.iter() {
            for z in self.carrier.iter() {
                let prod = self.mul(y, z);
                if prod == x
                    && self.carrier_upper.contains(prod)
                    && !units.contains(y)
                    && !units.contains(z)
                {
                    return Ok(Checked::fail(Witness::new(
                        vec![y, z],
                        format!("{y}*{z} = {x} with neither factor a unit"),
                    )));
                }
            }
        }
        Ok(Checked::pass())
    }

    /// No nonzero zero divisors. Requires the commutative ring flags.
    pub fn integral_domain(&self) -> Result<Checked> {
        if !(self.flags.ring && self.flags.commutative) {
            return Err(AlgebraError::NotARing);
        }
        let zero = self.zero()?;
        for m in self.carrier.iter() {
            for n in self.carrier.iter() {
                let prod = self.mul(m, n);
                if prod == zero && self.carrier_upper.contains(prod) && m != zero && n != zero {
                    return Ok(Checked::fail(Witness::new(
                        vec![m, n],
                        format!("{m}*{n} = {zero} with both factors nonzero"),
                    )));
                }
            }
        }
        Ok(Checked::pass())
    }

    /// Closure of the upper approximation of the carrier under a table.
    pub fn upper_closed(&self, op: OpKind) -> bool {
        match op {
            OpKind::Add => self.flags.upper_closed_add,
            OpKind::Mul => self.flags.upper_closed_mul,
        }
    }

    /// Stable content hash over probe, tables, and carrier (16 hex chars).
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"inst-v1");
        h.update((self.n_points() as u64).to_le_bytes());
        h.update((self.space.arity() as u64).to_le_bytes());
        for v in self.space.probe() {
            for &x in v.values() {
                h.update(x.to_le_bytes());
            }
        }
        for &e in self.add.entries() {
            h.update((e as u64).to_le_bytes());
        }
        for &e in self.mul.entries() {
            h.update((e as u64).to_le_bytes());
        }
        h.update(self.carrier.mask().to_le_bytes());
        let digest = h.finalize();
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// Recomputes the axiom flags from scratch. Construction caches the same
/// result; this stays available as the pure definition.
pub fn analyze_structure(inst: &AlgebraInstance) -> StructureFlags {
    compute_flags(&inst.add, &inst.mul, inst.carrier, inst.carrier_upper)
}

/// Locates identities and inverses, failing on absence or ambiguity.
pub fn locate_identities(inst: &AlgebraInstance) -> Result<IdentityInfo> {
    inst.identities()
}

fn op_symbol(op: OpKind) -> &'static str {
    match op {
        OpKind::Add => "+",
        OpKind::Mul => "*",
    }
}

/// Closure into the upper approximation, for all carrier pairs.
fn check_groupoid(table: &OpTable, carrier: PointSet, upper: PointSet, op: OpKind) -> Checked {
    for a in carrier.iter() {
        for b in carrier.iter() {
            let r = table.apply(a, b);
            if !upper.contains(r) {
                return Checked::fail(Witness::new(
                    vec![a, b],
                    format!(
                        "{a}{}{b} = {r} outside the upper approximation",
                        op_symbol(op)
                    ),
                ));
            }
        }
    }
    Checked::pass()
}

/// Associativity as table equality, with the common value required to lie in
/// the upper approximation.
fn check_associative(table: &OpTable, carrier: PointSet, upper: PointSet, op: OpKind) -> Checked {
    for a in carrier.iter() {
        for b in carrier.iter() {
            for c in carrier.iter() {
                let l = table.apply(table.apply(a, b), c);
                let r = table.apply(a, table.apply(b, c));
                if l != r {
                    return Checked::fail(Witness::new(
                        vec![a, b, c],
                        format!(
                            "({a}{0}{b}){0}{c} = {l} but {a}{0}({b}{0}{c}) = {r}",
                            op_symbol(op)
                        ),
                    ));
                }
                if !upper.contains(l) {
                    return Checked::fail(Witness::new(
                        vec![a, b, c],
                        format!(
                            "({a}{0}{b}){0}{c} = {l} outside the upper approximation",
                            op_symbol(op)
                        ),
                    ));
                }
            }
        }
    }
    Checked::pass()
}

/// Identity candidates in `upper` acting as two-sided identity on the
/// carrier, in ascending order.
fn identity_candidates(table: &OpTable, carrier: PointSet, upper: PointSet) -> Vec<usize> {
    upper
        .iter()
        .filter(|&e| {
            carrier
                .iter()
                .all(|a| table.apply(a, e) == a && table.apply(e, a) == a)
        })
        .collect()
}

fn compute_flags(
    add: &OpTable,
    mul: &OpTable,
    carrier: PointSet,
    upper: PointSet,
) -> StructureFlags {
    let mut witnesses = BTreeMap::new();

    let groupoid_add = check_groupoid(add, carrier, upper, OpKind::Add);
    let semigroup_add_assoc = check_associative(add, carrier, upper, OpKind::Add);
    let groupoid_mul = check_groupoid(mul, carrier, upper, OpKind::Mul);
    let semigroup_mul_assoc = check_associative(mul, carrier, upper, OpKind::Mul);

    let semigroup_add = groupoid_add.holds && semigroup_add_assoc.holds;
    let semigroup_mul = groupoid_mul.holds && semigroup_mul_assoc.holds;

    // Group: a semigroup with some identity in the upper approximation that
    // admits carrier inverses for every element.
    let add_identities = identity_candidates(add, carrier, upper);
    let mut group_witness: Option<Witness> = None;
    let mut group_add = false;
    if semigroup_add {
        if add_identities.is_empty() {
            group_witness = Some(Witness::new(
                vec![],
                "no additive identity in the upper approximation",
            ));
        } else {
            for &e in &add_identities {
                let missing = carrier.iter().find(|&a| {
                    !carrier
                        .iter()
                        .any(|b| add.apply(a, b) == e && add.apply(b, a) == e)
                });
                match missing {
                    None => {
                        group_add = true;
                        group_witness = None;
                        break;
                    }
                    Some(a) => {
                        if group_witness.is_none() {
                            group_witness = Some(Witness::new(
                                vec![e, a],
                                format!("no inverse for {a} inside the carrier (identity {e})"),
                            ));
                        }
                    }
                }
            }
        }
    }

    let mut abelian_add = Checked::pass();
    'comm_add: for a in carrier.iter() {
        for b in carrier.iter() {
            if add.apply(a, b) != add.apply(b, a) {
                abelian_add = Checked::fail(Witness::new(
                    vec![a, b],
                    format!(
                        "{a}+{b} = {} but {b}+{a} = {}",
                        add.apply(a, b),
                        add.apply(b, a)
                    ),
                ));
                break 'comm_add;
            }
        }
    }

    let mut commutative = Checked::pass();
    'comm_mul: for a in carrier.iter() {
        for b in carrier.iter() {
            if mul.apply(a, b) != mul.apply(b, a) {
                commutative = Checked::fail(Witness::new(
                    vec![a, b],
                    format!(
                        "{a}*{b} = {} but {b}*{a} = {}",
                        mul.apply(a, b),
                        mul.apply(b, a)
                    ),
                ));
                break 'comm_mul;
            }
        }
    }

    // Distributivity on both sides, results inside the upper approximation.
    let mut distributive = Checked::pass();
    'dist: for a in carrier.iter() {
        for b in carrier.iter() {
            for c in carrier.iter() {
                let left = mul.apply(a, add.apply(b, c));
                let left_sum = add.apply(mul.apply(a, b), mul.apply(a, c));
                if left != left_sum || !upper.contains(left) {
                    distributive = Checked::fail(Witness::new(
                        vec![a, b, c],
                        format!("{a}*({b}+{c}) = {left} but {a}*{b}+{a}*{c} = {left_sum}"),
                    ));
                    break 'dist;
                }
                let right = mul.apply(add.apply(a, b), c);
                let right_sum = add.apply(mul.apply(a, c), mul.apply(b, c));
                if right != right_sum || !upper.contains(right) {
                    distributive = Checked::fail(Witness::new(
                        vec![a, b, c],
                        format!("({a}+{b})*{c} = {right} but {a}*{c}+{b}*{c} = {right_sum}"),
                    ));
                    break 'dist;
                }
            }
        }
    }

    let ring = group_add && abelian_add.holds && semigroup_mul && distributive.holds;

    let mul_identities = identity_candidates(mul, carrier, upper);
    let has_unity = !mul_identities.is_empty();

    let mut op_closed = Checked::pass();
    'closed: for a in carrier.iter() {
        for b in carrier.iter() {
            let s = add.apply(a, b);
            if !carrier.contains(s) {
                op_closed = Checked::fail(Witness::new(
                    vec![a, b],
                    format!("{a}+{b} = {s} outside the carrier"),
                ));
                break 'closed;
            }
            let p = mul.apply(a, b);
            if !carrier.contains(p) {
                op_closed = Checked::fail(Witness::new(
                    vec![a, b],
                    format!("{a}*{b} = {p} outside the carrier"),
                ));
                break 'closed;
            }
        }
    }

    let upper_closed_add = check_groupoid(add, upper, upper, OpKind::Add);
    let upper_closed_mul = check_groupoid(mul, upper, upper, OpKind::Mul);

    // Collect witnesses for every false flag.
    if !groupoid_add.holds {
        witnesses.insert(
            StructureFlag::GroupoidAdd,
            groupoid_add.witness.clone().unwrap(),
        );
    }
    if !semigroup_add {
        let w = if groupoid_add.holds {
            semigroup_add_assoc.witness.clone().unwrap()
        } else {
            groupoid_add.witness.clone().unwrap()
        };
        witnesses.insert(StructureFlag::SemigroupAdd, w);
    }
    if !group_add {
        let w = if !semigroup_add {
            witnesses
                .get(&StructureFlag::SemigroupAdd)
                .cloned()
                .unwrap()
        } else {
            group_witness.clone().unwrap()
        };
        witnesses.insert(StructureFlag::GroupAdd, w);
    }
    if !abelian_add.holds {
        witnesses.insert(
            StructureFlag::AbelianAdd,
            abelian_add.witness.clone().unwrap(),
        );
    }
    if !groupoid_mul.holds {
        witnesses.insert(
            StructureFlag::GroupoidMul,
            groupoid_mul.witness.clone().unwrap(),
        );
    }
    if !semigroup_mul {
        let w = if groupoid_mul.holds {
            semigroup_mul_assoc.witness.clone().unwrap()
        } else {
            groupoid_mul.witness.clone().unwrap()
        };
        witnesses.insert(StructureFlag::SemigroupMul, w);
    }
    if !ring {
        let w = if !group_add {
            witnesses.get(&StructureFlag::GroupAdd).cloned().unwrap()
        } else if !abelian_add.holds {
            abelian_add.witness.clone().unwrap()
        } else if !semigroup_mul {
            witnesses
                .get(&StructureFlag::SemigroupMul)
                .cloned()
                .unwrap()
        } else {
            distributive.witness.clone().unwrap()
        };
        witnesses.insert(StructureFlag::Ring, w);
    }
    if !commutative.holds {
        witnesses.insert(
            StructureFlag::Commutative,
            commutative.witness.clone().unwrap(),
        );
    }
    if !has_unity {
        witnesses.insert(
            StructureFlag::HasUnity,
            Witness::new(vec![], "no unity element in the upper approximation"),
        );
    }
    if !op_closed.holds {
        witnesses.insert(StructureFlag::OpClosed, op_closed.witness.clone().unwrap());
    }
    if !upper_closed_add.holds {
        witnesses.insert(
            StructureFlag::UpperClosedAdd,
            upper_closed_add.witness.clone().unwrap(),
        );
    }
    if !upper_closed_mul.holds {
        witnesses.insert(
            StructureFlag::UpperClosedMul,
            upper_closed_mul.witness.clone().unwrap(),
        );
    }

    StructureFlags {
        groupoid_add: groupoid_add.holds,
        semigroup_add,
        group_add,
        abelian_add: abelian_add.holds,
        groupoid_mul: groupoid_mul.holds,
        semigroup_mul,
        ring,
        commutative: commutative.holds,
        has_unity,
        op_closed: op_closed.holds,
        upper_closed_add: upper_closed_add.holds,
        upper_closed_mul: upper_closed_mul.holds,
        witnesses,
    }
}

fn search_identities(
    add: &OpTable,
    mul: &OpTable,
    carrier: PointSet,
    upper: PointSet,
) -> IdentitySearch {
    let add_candidates = identity_candidates(add, carrier, upper);
    let zero: Result<usize> = match add_candidates.as_slice() {
        [] => Err(AlgebraError::NoAdditiveIdentity),
        [e] => Ok(*e),
        [a, b, ..] => Err(AlgebraError::AmbiguousIdentity {
            op: OpKind::Add,
            first: *a,
            second: *b,
        }),
    };

    let mul_candidates = identity_candidates(mul, carrier, upper);
    let one: Result<Option<usize>> = match mul_candidates.as_slice() {
        [] => Ok(None),
        [u] => Ok(Some(*u)),
        [a, b, ..] => Err(AlgebraError::AmbiguousIdentity {
            op: OpKind::Mul,
            first: *a,
            second: *b,
        }),
    };

    let neg: Result<BTreeMap<usize, usize>> = zero.clone().and_then(|z| {
        let mut map = BTreeMap::new();
        for a in carrier.iter() {
            match carrier
                .iter()
                .find(|&b| add.apply(a, b) == z && add.apply(b, a) == z)
            {
                Some(b) => {
                    map.insert(a, b);
                }
                None => return Err(AlgebraError::MissingInverse { element: a }),
            }
        }
        Ok(map)
    });

    let units: Result<PointSet> = one.clone().and_then(|u| match u {
        None => Err(AlgebraError::NoUnity),
        Some(u) => Ok(carrier
            .iter()
            .filter(|&a| {
                carrier
                    .iter()
                    .any(|b| mul.apply(a, b) == u && mul.apply(b, a) == u)
            })
            .collect()),
    });

    IdentitySearch {
        zero,
        one,
        neg,
        units,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_parity_full() -> AlgebraInstance {
        AlgebraInstance::modular(4, 2).unwrap()
    }

    fn r013() -> AlgebraInstance {
        AlgebraInstance::modular_with_carrier(4, 2, PointSet::from_indices([0, 1, 3])).unwrap()
    }

    fn z8() -> AlgebraInstance {
        AlgebraInstance::modular(8, 8).unwrap()
    }

    fn z6() -> AlgebraInstance {
        AlgebraInstance::modular(6, 6).unwrap()
    }

    #[test]
    fn z4_full_carrier_is_a_closed_ring() {
        let inst = z4_parity_full();
        let f = inst.flags();
        assert!(f.ring && f.commutative && f.has_unity && f.op_closed);
        assert!(f.upper_closed_add && f.upper_closed_mul);
        assert!(f.witnesses.is_empty());
        assert_eq!(analyze_structure(&inst), *inst.flags());
    }

    #[test]
    fn carrier_013_is_a_ring_but_not_closed() {
        let inst = r013();
        let f = inst.flags();
        assert!(f.ring && f.commutative && f.has_unity);
        assert!(!f.op_closed);
        let w = &f.witnesses[&StructureFlag::OpClosed];
        assert_eq!(w.points, vec![1, 1]);
    }

    #[test]
    fn carrier_01_has_no_inverse_for_1() {
        let inst =
            AlgebraInstance::modular_with_carrier(4, 2, PointSet::from_indices([0, 1])).unwrap();
        let f = inst.flags();
        assert!(!f.group_add);
        let w = &f.witnesses[&StructureFlag::GroupAdd];
        assert!(w.points.contains(&1));
        assert!(matches!(
            inst.neg(1),
            Err(AlgebraError::MissingInverse { element: 1 })
        ));
    }

    #[test]
    fn identities_in_z4() {
        let inst = z4_parity_full();
        let info = inst.identities().unwrap();
        assert_eq!(info.zero, 0);
        assert_eq!(info.one, Some(1));
        assert_eq!(info.neg[&1], 3);
    }

    #[test]
    fn identities_in_r013() {
        let inst = r013();
        let info = inst.identities().unwrap();
        assert_eq!(info.zero, 0);
        assert_eq!(info.one, Some(1));
        assert_eq!(info.neg[&3], 1);
    }

    #[test]
    fn even_subcarrier_has_no_unity() {
        let inst =
            AlgebraInstance::modular_with_carrier(4, 2, PointSet::from_indices([0, 2])).unwrap();
        assert_eq!(inst.zero().unwrap(), 0);
        assert_eq!(inst.unity().unwrap(), None);
        assert!(matches!(inst.units(), Err(AlgebraError::NoUnity)));
    }

    #[test]
    fn powers_are_left_normed() {
        let inst = z8();
        assert_eq!(inst.power(2, 3), 0);
        assert_eq!(inst.power(2, 1), 2);
        assert_eq!(inst.power(1, 7), 1);
    }

    #[test]
    fn units_of_modular_rings() {
        assert_eq!(
            z4_parity_full().units().unwrap(),
            PointSet::from_indices([1, 3])
        );
        assert_eq!(z6().units().unwrap(), PointSet::from_indices([1, 5]));
    }

    #[test]
    fn nilpotency_scan() {
        let inst = z8();
        assert_eq!(inst.nilpotency(2).unwrap(), Some(3));
        assert_eq!(inst.nilpotency(0).unwrap(), Some(1));
        assert_eq!(z6().nilpotency(2).unwrap(), None);
    }

    #[test]
    fn irreducible_elements_of_z8() {
        let inst = z8();
        assert!(inst.irreducibility(2).unwrap().holds);
        let four = inst.irreducibility(4).unwrap();
        assert!(!four.holds);
        assert_eq!(four.witness.unwrap().points, vec![2, 2]);
        // Units are never irreducible.
        assert!(!inst.irreducibility(1).unwrap().holds);
    }

    #[test]
    fn integral_domain_checks() {
        let z6 = z6();
        let verdict = z6.integral_domain().unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness.unwrap().points, vec![2, 3]);

        let z2 = AlgebraInstance::modular(2, 2).unwrap();
        assert!(z2.integral_domain().unwrap().holds);

        assert!(r013().integral_domain().unwrap().holds);
    }

    #[test]
    fn upper_closure_of_subcarriers() {
        let evens =
            AlgebraInstance::modular_with_carrier(4, 2, PointSet::from_indices([0, 2])).unwrap();
        assert!(evens.upper_closed(OpKind::Add));
        assert!(evens.upper_closed(OpKind::Mul));

        let ones =
            AlgebraInstance::modular_with_carrier(4, 2, PointSet::from_indices([1])).unwrap();
        // The upper approximation {1,3} is not closed: 1+3 = 0.
        assert!(!ones.upper_closed(OpKind::Add));
    }

    #[test]
    fn fingerprint_is_stable_and_content_sensitive() {
        let a = z4_parity_full();
        let b = AlgebraInstance::modular(4, 2).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
        let c = AlgebraInstance::modular(4, 4).unwrap();
        assert_ne!(a.fingerprint(), c.fingerprint());
        assert_eq!(a.fingerprint().len(), 16);
    }

    #[test]
    fn ambiguous_identity_is_reported() {
        // Constant probe glues all points, so the upper approximation of {0}
        // is everything; a table where both 0 and 1 act as identity on {0}
        // makes the search ambiguous.
        let space = DescriptiveSpace::from_scalar_probe(&[5, 5]).unwrap();
        let add = OpTable::new(2, vec![0, 1, 1, 0]).unwrap();
        let mul = OpTable::new(2, vec![0, 0, 0, 1]).unwrap();
        let inst = AlgebraInstance::new(space, add, mul, PointSet::from_indices([0])).unwrap();
        assert_eq!(inst.zero().unwrap(), 0);
        // mul(0,0) = mul(0,1) = mul(1,0) = 0, so both 0 and 1 act as a
        // two-sided identity on the carrier {0}.
        assert!(matches!(
            inst.unity(),
            Err(AlgebraError::AmbiguousIdentity {
                op: OpKind::Mul,
                first: 0,
                second: 1
            })
        ));
    }
}
