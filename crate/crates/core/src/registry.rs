//! Named-field registries: every field of the verification suites is
//! addressable by the identifier used in the source displays.

use crate::bracket::Algebra;
use crate::coset::{coset_generators_n2, invariant_limit_targets, limit_fields, CosetSide};
use crate::error::Error;
use crate::screening::ScreeningCharge;
use crate::state::State;
use crate::wsuper::{n2_generators, w32_generators, FreeFieldRealization};
use std::sync::Arc;

pub struct Registry {
    pub name: String,
    pub algebra: Arc<Algebra>,
    pub screenings: Vec<ScreeningCharge>,
    pub fields: Vec<(String, State)>,
}

impl Registry {
    pub fn get(&self, name: &str) -> Option<&State> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Resolve a name: registered field, generator, or the vacuum.
    pub fn resolve(&self, name: &str) -> Result<State, Error> {
        if name == "vac" {
            return Ok(State::vacuum(self.algebra.id));
        }
        if let Some(s) = self.get(name) {
            return Ok(s.clone());
        }
        self.algebra.gen_state_by_name(name)
    }

    pub fn field_names(&self) -> Vec<&str> {
        self.fields.iter().map(|(n, _)| n.as_str()).collect()
    }
}

/// The W-algebra side at n = 2: the nine displayed fields plus the N=2
/// family, over the free-field algebra with its four screenings.
pub fn wsuper_registry() -> Result<Registry, Error> {
    let ff = FreeFieldRealization::new(2)?;
    let set = w32_generators(&ff)?;
    let fam = n2_generators(&ff)?;
    let fields = vec![
        ("H".to_string(), set.h.clone()),
        ("S".to_string(), set.s.clone()),
        ("G+".to_string(), set.gplus.clone()),
        ("G-".to_string(), set.gminus.clone()),
        ("L".to_string(), set.l.clone()),
        ("W2".to_string(), set.w2.clone()),
        ("W3".to_string(), set.w3.clone()),
        ("Q+".to_string(), set.qplus.clone()),
        ("Q-".to_string(), set.qminus.clone()),
        ("G+(2)".to_string(), fam.gplus),
        ("G-(2)".to_string(), fam.gminus),
        ("H(2)".to_string(), fam.h),
        ("L(2)".to_string(), fam.l),
    ];
    Ok(Registry {
        name: "wsuper".to_string(),
        algebra: ff.algebra,
        screenings: ff.screenings,
        fields,
    })
}

/// The degenerate n = 1 family (the N=2 algebra itself).
pub fn wsuper_n1_registry() -> Result<Registry, Error> {
    let ff = FreeFieldRealization::new(1)?;
    let fam = n2_generators(&ff)?;
    let fields = vec![
        ("G+(1)".to_string(), fam.gplus),
        ("G-(1)".to_string(), fam.gminus),
        ("H(1)".to_string(), fam.h),
        ("L(1)".to_string(), fam.l),
    ];
    Ok(Registry {
        name: "n1".to_string(),
        algebra: ff.algebra,
        screenings: ff.screenings,
        fields,
    })
}

/// The coset side at the generic level.
pub fn coset_registry() -> Result<Registry, Error> {
    let side = CosetSide::generic(2)?;
    let set = coset_generators_n2(&side)?;
    let fields = vec![
        ("H^".to_string(), set.h.clone()),
        ("S^".to_string(), set.s.clone()),
        ("G+^".to_string(), set.gplus.clone()),
        ("G-^".to_string(), set.gminus.clone()),
        ("L^".to_string(), set.l.clone()),
        ("W2^".to_string(), set.w2.clone()),
        ("W3^".to_string(), set.w3.clone()),
        ("Q+^".to_string(), set.qplus.clone()),
        ("Q-^".to_string(), set.qminus.clone()),
    ];
    Ok(Registry {
        name: "coset".to_string(),
        algebra: side.algebra,
        screenings: Vec::new(),
        fields,
    })
}

/// The rescaled limit fields over Q(s).
pub fn limit_registry() -> Result<Registry, Error> {
    let side = CosetSide::limit()?;
    let fields = limit_fields(&side)?;
    Ok(Registry {
        name: "limit".to_string(),
        algebra: side.algebra,
        screenings: Vec::new(),
        fields,
    })
}

/// The invariant bilinears the limits land on.
pub fn limit_target_registry() -> Result<Registry, Error> {
    let (alg, targets) = invariant_limit_targets()?;
    Ok(Registry {
        name: "limit-targets".to_string(),
        algebra: alg,
        screenings: Vec::new(),
        fields: targets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registries_resolve() {
        let reg = wsuper_registry().unwrap();
        assert!(reg.resolve("H").is_ok());
        assert!(reg.resolve("a1").is_ok());
        assert!(reg.resolve("vac").is_ok());
        assert!(reg.resolve("nope").is_err());
        assert_eq!(reg.screenings.len(), 4);
        let limit = limit_registry().unwrap();
        assert_eq!(limit.fields.len(), 8);
        let targets = limit_target_registry().unwrap();
        assert!(targets.resolve("nu0").is_ok());
    }
}
