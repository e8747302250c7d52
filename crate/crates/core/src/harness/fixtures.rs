//! Built-in instances used throughout the test harness and the CLI.

use std::collections::BTreeMap;

use crate::error::{AlgebraError, Result};
use crate::format::ParsedInstance;
use crate::ideals::product_instance;
use crate::space::{PointSet, MAX_POINTS};
use crate::structures::AlgebraInstance;

/// Fixture names, in canonical order.
pub const FIXTURE_NAMES: [&str; 6] = ["F-Z2", "F-Z4p", "F-Z6i", "F-Z8i", "F-R013", "F-Z2xZ2"];

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn with_ideals(instance: AlgebraInstance, ideals: &[(&str, &[usize])]) -> ParsedInstance {
    let point_names = default_names(instance.n_points());
    let ideals = ideals
        .iter()
        .map(|(name, members)| {
            (
                name.to_string(),
                PointSet::from_indices(members.iter().copied()),
            )
        })
        .collect::<BTreeMap<_, _>>();
    ParsedInstance {
        instance,
        point_names,
        ideals,
    }
}

/// Builds a fixture by name.
pub fn fixture(name: &str) -> Result<ParsedInstance> {
    match name {
        "F-Z2" => Ok(with_ideals(
            AlgebraInstance::modular(2, 2)?,
            &[("W0", &[0])],
        )),
        "F-Z4p" => Ok(with_ideals(
            AlgebraInstance::modular(4, 2)?,
            &[("W0", &[0]), ("W02", &[0, 2])],
        )),
        "F-Z6i" => Ok(with_ideals(
            AlgebraInstance::modular(6, 6)?,
            &[("W0", &[0]), ("W03", &[0, 3]), ("W024", &[0, 2, 4])],
        )),
        "F-Z8i" => Ok(with_ideals(
            AlgebraInstance::modular(8, 8)?,
            &[("W0", &[0]), ("W04", &[0, 4]), ("W0246", &[0, 2, 4, 6])],
        )),
        "F-R013" => Ok(with_ideals(
            AlgebraInstance::modular_with_carrier(4, 2, PointSet::from_indices([0, 1, 3]))?,
            &[("W0", &[0])],
        )),
        "F-Z2xZ2" => {
            let z2 = AlgebraInstance::modular(2, 2)?;
            let prod = product_instance(&z2, &z2, MAX_POINTS)?;
            Ok(with_ideals(prod, &[("W0", &[0]), ("W01", &[0, 1])]))
        }
        other => Err(AlgebraError::validation(format!(
            "unknown fixture `{other}`"
        ))),
    }
}

/// All fixtures with their names, in canonical order.
pub fn all_fixtures() -> Vec<(&'static str, ParsedInstance)> {
    FIXTURE_NAMES
        .iter()
        .map(|name| (*name, fixture(name).expect("built-in fixtures are valid")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_build() {
        let all = all_fixtures();
        assert_eq!(all.len(), 6);
        for (name, parsed) in &all {
            assert!(
                !parsed.ideals.is_empty(),
                "{name} should carry named ideals"
            );
        }
    }

    #[test]
    fn fixture_shapes() {
        assert_eq!(fixture("F-Z2").unwrap().instance.n_points(), 2);
        assert_eq!(fixture("F-Z2xZ2").unwrap().instance.n_points(), 4);
        let r013 = fixture("F-R013").unwrap();
        assert_eq!(r013.instance.carrier(), PointSet::from_indices([0, 1, 3]));
        assert!(fixture("F-Z9").is_err());
    }

    #[test]
    fn product_fixture_is_injective() {
        let prod = fixture("F-Z2xZ2").unwrap();
        assert!(prod.instance.space().injective_probe());
        assert_eq!(prod.instance.space().arity(), 2);
    }
}
