//! The instance file format.
//!
//! A line-oriented text document declaring named points with feature
//! tuples, the two operation tables as row-major index matrices, a carrier,
//! and optionally named ideals. One instance per file:
//!
//! ```text
//! # anything after a hash is a comment
//! points p0 p1 p2 p3
//! features p0 0
//! features p1 1
//! features p2 0
//! features p3 1
//! add
//! 0 1 2 3
//! 1 2 3 0
//! 2 3 0 1
//! 3 0 1 2
//! mul
//! 0 0 0 0
//! 0 1 2 3
//! 0 2 0 2
//! 0 3 2 1
//! carrier p0 p1 p2 p3
//! ideal W0 p0
//! ideal W02 p0 p2
//! ```
//!
//! `carrier` may be omitted, in which case every point belongs to it.
//! Serialization is canonical (fixed statement order, single spaces, ideals
//! sorted by name), so parse - serialize - parse is the identity.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::error::AlgebraError;
use crate::space::{DescriptiveSpace, FeatureVector, PointSet};
use crate::structures::{AlgebraInstance, OpTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{message}")]
    Validation { message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

type FResult<T> = std::result::Result<T, FormatError>;

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

const KEYWORDS: [&str; 6] = ["points", "features", "add", "mul", "carrier", "ideal"];

fn valid_name(token: &str) -> bool {
    !KEYWORDS.contains(&token)
        && token
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

/// A parsed instance together with its naming layer.
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub instance: AlgebraInstance,
    pub point_names: Vec<String>,
    pub ideals: BTreeMap<String, PointSet>,
}

impl ParsedInstance {
    pub fn point_name(&self, index: usize) -> &str {
        &self.point_names[index]
    }

    pub fn names_of(&self, set: PointSet) -> Vec<String> {
        set.iter().map(|i| self.point_names[i].clone()).collect()
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.point_names.iter().position(|n| n == name)
    }
}

/// Parses an instance document. `max_points` guards against oversized
/// inputs; the built-in bitset limit applies on top of it.
pub fn parse_instance(text: &str, max_points: usize) -> FResult<ParsedInstance> {
    let mut names: Option<(usize, Vec<String>)> = None;
    let mut features: BTreeMap<String, (usize, Vec<i64>)> = BTreeMap::new();
    let mut add_rows: Option<(usize, Vec<Vec<usize>>)> = None;
    let mut mul_rows: Option<(usize, Vec<Vec<usize>>)> = None;
    let mut carrier: Option<(usize, Vec<String>)> = None;
    let mut ideals: Vec<(usize, String, Vec<String>)> = Vec::new();

    // Table rows are consumed by the most recent `add`/`mul` header until it
    // has one row per point.
    let mut pending_table: Option<(&'static str, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }

        if let Some((which, _)) = pending_table {
            let n = names.as_ref().map(|(_, v)| v.len()).unwrap_or(0);
            let row: Vec<usize> = tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| {
                        parse_err(lineno, format!("expected a point index, found `{t}`"))
                    })
                })
                .collect::<FResult<_>>()?;
            if row.len() != n {
                return Err(parse_err(
                    lineno,
                    format!("table row has {} entries, expected {n}", row.len()),
                ));
            }
            let rows = if which == "add" {
                &mut add_rows.as_mut().expect("header seen").1
            } else {
                &mut mul_rows.as_mut().expect("header seen").1
            };
            rows.push(row);
            if rows.len() == n {
                pending_table = None;
            }
            continue;
        }

        match tokens[0] {
            "points" => {
                if names.is_some() {
                    return Err(parse_err(lineno, "duplicate `points` statement"));
                }
                if tokens.len() < 2 {
                    return Err(parse_err(lineno, "`points` needs at least one name"));
                }
                let mut seen = Vec::new();
                for t in &tokens[1..] {
                    if !valid_name(t) {
                        return Err(parse_err(lineno, format!("invalid point name `{t}`")));
                    }
                    if seen.iter().any(|s: &String| s == t) {
                        return Err(parse_err(lineno, format!("duplicate point name `{t}`")));
                    }
                    seen.push(t.to_string());
                }
                names = Some((lineno, seen));
            }
            "features" => {
                if tokens.len() < 3 {
                    return Err(parse_err(
                        lineno,
                        "`features` needs a name and at least one integer",
                    ));
                }
                let name = tokens[1].to_string();
                let values: Vec<i64> = tokens[2..]
                    .iter()
                    .map(|t| {
                        t.parse::<i64>().map_err(|_| {
                            parse_err(lineno, format!("expected an integer feature, found `{t}`"))
                        })
                    })
                    .collect::<FResult<_>>()?;
                if features.insert(name.clone(), (lineno, values)).is_some() {
                    return Err(parse_err(
                        lineno,
                        format!("duplicate `features` for `{name}`"),
                    ));
                }
            }
            "add" | "mul" => {
                let which: &'static str = if tokens[0] == "add" { "add" } else { "mul" };
                if tokens.len() != 1 {
                    return Err(parse_err(
                        lineno,
                        format!("`{which}` takes no arguments; rows follow on the next lines"),
                    ));
                }
                let n = match &names {
                    Some((_, v)) => v.len(),
                    None => return Err(parse_err(lineno, "`points` must come before the tables")),
                };
                let slot = if which == "add" {
                    &mut add_rows
                } else {
                    &mut mul_rows
                };
                if slot.is_some() {
                    return Err(parse_err(lineno, format!("duplicate `{which}` table")));
                }
                *slot = Some((lineno, Vec::with_capacity(n)));
                pending_table = Some((which, lineno));
            }
            "carrier" => {
                if carrier.is_some() {
                    return Err(parse_err(lineno, "duplicate `carrier` statement"));
                }
                if tokens.len() < 2 {
                    return Err(parse_err(lineno, "`carrier` needs at least one point name"));
                }
                carrier = Some((lineno, tokens[1..].iter().map(|t| t.to_string()).collect()));
            }
            "ideal" => {
                if tokens.len() < 3 {
                    return Err(parse_err(
                        lineno,
                        "`ideal` needs a name and at least one member",
                    ));
                }
                if !valid_name(tokens[1]) {
                    return Err(parse_err(
                        lineno,
                        format!("invalid ideal name `{}`", tokens[1]),
                    ));
                }
                ideals.push((
                    lineno,
                    tokens[1].to_string(),
                    tokens[2..].iter().map(|t| t.to_string()).collect(),
                ));
            }
            other => {
                return Err(parse_err(lineno, format!("unknown statement `{other}`")));
            }
        }
    }

    if let Some((which, header_line)) = pending_table {
        return Err(parse_err(
            header_line,
            format!("`{which}` table is missing rows"),
        ));
    }

    let (_, point_names) = names.ok_or_else(|| FormatError::Validation {
        message: "missing `points` statement".into(),
    })?;
    let n = point_names.len();
    if n > max_points {
        return Err(FormatError::Algebra(AlgebraError::TooLarge {
            what: "instance",
            size: n,
            bound: max_points,
        }));
    }

    let lookup = |line: usize, name: &str| -> FResult<usize> {
        point_names
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| parse_err(line, format!("undeclared point name `{name}`")))
    };

    let mut probe = Vec::with_capacity(n);
    for name in &point_names {
        match features.get(name) {
            Some((_, values)) => probe.push(FeatureVector::new(values.clone())),
            None => {
                return Err(FormatError::Validation {
                    message: format!("point `{name}` has no `features` line"),
                })
            }
        }
    }
    for (name, (line, _)) in &features {
        if !point_names.iter().any(|p| p == name) {
            return Err(parse_err(*line, format!("undeclared point name `{name}`")));
        }
    }
    let arity = probe[0].arity();
    if let Some(bad) = point_names.iter().find(|p| features[*p].1.len() != arity) {
        return Err(FormatError::Validation {
            message: format!(
                "feature arity mismatch: `{bad}` has {} values, expected {arity}",
                features[bad].1.len()
            ),
        });
    }
    let space = DescriptiveSpace::new(probe)?;

    let build_table = |rows: Option<(usize, Vec<Vec<usize>>)>, which: &str| -> FResult<OpTable> {
        let (line, rows) = rows.ok_or_else(|| FormatError::Validation {
            message: format!("missing `{which}` table"),
        })?;
        let mut entries = Vec::with_capacity(n * n);
        for row in &rows {
            for &e in row {
                if e >= n {
                    return Err(parse_err(
                        line,
                        format!("table entry {e} is not a point index below {n}"),
                    ));
                }
                entries.push(e);
            }
        }
        Ok(OpTable::new(n, entries)?)
    };
    let add = build_table(add_rows, "add")?;
    let mul = build_table(mul_rows, "mul")?;

    let carrier_set = match &carrier {
        None => PointSet::full(n),
        Some((line, names)) => {
            let mut s = PointSet::EMPTY;
            for name in names {
                s.insert(lookup(*line, name)?);
            }
            s
        }
    };

    let mut ideal_map = BTreeMap::new();
    for (line, name, members) in &ideals {
        if ideal_map.contains_key(name) {
            return Err(parse_err(*line, format!("duplicate ideal name `{name}`")));
        }
        let mut s = PointSet::EMPTY;
        for m in members {
            s.insert(lookup(*line, m)?);
        }
        if let Some(outside) = s.minus(carrier_set).first() {
            return Err(parse_err(
                *line,
                format!(
                    "ideal `{name}` member `{}` is outside the carrier",
                    point_names[outside]
                ),
            ));
        }
        ideal_map.insert(name.clone(), s);
    }

    let instance = AlgebraInstance::new(space, add, mul, carrier_set)?;
    Ok(ParsedInstance {
        instance,
        point_names,
        ideals: ideal_map,
    })
}

/// Canonical text rendering; see the module header for the layout.
pub fn serialize_instance(parsed: &ParsedInstance) -> String {
    let inst = &parsed.instance;
    let n = inst.n_points();
    let mut out = String::new();
    out.push_str("points");
    for name in &parsed.point_names {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
    for (i, name) in parsed.point_names.iter().enumerate() {
        out.push_str("features ");
        out.push_str(name);
        for v in inst.space().feature(i).values() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for (label, table) in [("add", inst.add_table()), ("mul", inst.mul_table())] {
        out.push_str(label);
        out.push('\n');
        for a in 0..n {
            for b in 0..n {
                if b > 0 {
                    out.push(' ');
                }
                out.push_str(&table.apply(a, b).to_string());
            }
            out.push('\n');
        }
    }
    out.push_str("carrier");
    for i in inst.carrier().iter() {
        out.push(' ');
        out.push_str(&parsed.point_names[i]);
    }
    out.push('\n');
    for (name, members) in &parsed.ideals {
        out.push_str("ideal ");
        out.push_str(name);
        for i in members.iter() {
            out.push(' ');
            out.push_str(&parsed.point_names[i]);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4P_DOC: &str = "\
# four points, parity features
points p0 p1 p2 p3
features p0 0
features p1 1
features p2 0
features p3 1
add
0 1 2 3
1 2 3 0
2 3 0 1
3 0 1 2
mul
0 0 0 0
0 1 2 3
0 2 0 2
0 3 2 1
carrier p0 p1 p2 p3
ideal W0 p0
ideal W02 p0 p2
";

    #[test]
    fn parses_the_parity_document() {
        let parsed = parse_instance(Z4P_DOC, 64).unwrap();
        assert_eq!(parsed.instance.n_points(), 4);
        assert_eq!(parsed.ideals["W0"], PointSet::from_indices([0]));
        assert_eq!(parsed.ideals["W02"], PointSet::from_indices([0, 2]));
        assert!(parsed.instance.flags().commutative_ring_with_unity());
        let modular = AlgebraInstance::modular(4, 2).unwrap();
        assert_eq!(parsed.instance.fingerprint(), modular.fingerprint());
    }

    #[test]
    fn roundtrip_is_identity_after_one_normalization() {
        let parsed = parse_instance(Z4P_DOC, 64).unwrap();
        let canonical = serialize_instance(&parsed);
        let reparsed = parse_instance(&canonical, 64).unwrap();
        assert_eq!(serialize_instance(&reparsed), canonical);
        assert_eq!(
            reparsed.instance.fingerprint(),
            parsed.instance.fingerprint()
        );
        assert_eq!(reparsed.ideals, parsed.ideals);
    }

    #[test]
    fn missing_carrier_defaults_to_all_points() {
        let doc = "points a b\nfeatures a 0\nfeatures b 1\nadd\n0 1\n1 0\nmul\n0 0\n0 1\n";
        let parsed = parse_instance(doc, 64).unwrap();
        assert_eq!(parsed.instance.carrier(), PointSet::full(2));
    }

    #[test]
    fn non_square_table_is_rejected_with_location() {
        let doc = "points a b\nfeatures a 0\nfeatures b 1\nadd\n0 1 1\n";
        let err = parse_instance(doc, 64).unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 5, .. }), "{err}");
    }

    #[test]
    fn arity_mismatch_is_rejected() {
        let doc = "points a b\nfeatures a 0 1\nfeatures b 1\nadd\n0 1\n1 0\nmul\n0 0\n0 1\n";
        let err = parse_instance(doc, 64).unwrap_err();
        assert!(matches!(err, FormatError::Validation { .. }), "{err}");
    }

    #[test]
    fn undeclared_names_are_rejected() {
        let doc =
            "points a b\nfeatures a 0\nfeatures b 1\nadd\n0 1\n1 0\nmul\n0 0\n0 1\nideal W c\n";
        let err = parse_instance(doc, 64).unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 10, .. }), "{err}");
    }

    #[test]
    fn max_points_guard_applies() {
        let err = parse_instance(Z4P_DOC, 3).unwrap_err();
        assert!(matches!(
            err,
            FormatError::Algebra(AlgebraError::TooLarge { .. })
        ));
    }

    #[test]
    fn table_entry_out_of_range_cites_the_header() {
        let doc = "points a b\nfeatures a 0\nfeatures b 1\nadd\n0 5\n1 0\nmul\n0 0\n0 1\n";
        let err = parse_instance(doc, 64).unwrap_err();
        assert!(matches!(err, FormatError::Parse { .. }), "{err}");
    }
}
