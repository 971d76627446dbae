use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{ModRing, RingDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub weight: u32,
}

impl Variable {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        Variable { name: name.into(), weight }
    }
}

/// Polynomial ring `k[v_1, ..., v_r]` over `k = Z/p^n` with positive weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyAlgebra {
    ring: ModRing,
    vars: Vec<Variable>,
    base_var: Option<usize>,
}

/// JSON shape: `{"coeff":{"p":2,"n":2},"vars":[{"name":"x","weight":1}],"base_var":"x"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub coeff: RingDescriptor,
    pub vars: Vec<Variable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_var: Option<String>,
}

impl PolyAlgebra {
    pub fn new(ring: ModRing, vars: Vec<Variable>, base_var: Option<&str>) -> Result<Self> {
        if vars.len() > 64 {
            return Err(Error::InvalidInput("at most 64 variables".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.weight == 0 {
                return Err(Error::InvalidInput(format!("variable {} has weight 0", v.name)));
            }
            if v.name.is_empty() || !v.name.chars().next().unwrap().is_alphabetic() {
                return Err(Error::InvalidInput(format!("bad variable name {:?}", v.name)));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidInput(format!("duplicate variable {}", v.name)));
            }
        }
        let base_var = match base_var {
            None => None,
            Some(b) => Some(
                vars.iter()
                    .position(|v| v.name == b)
                    .ok_or_else(|| Error::InvalidInput(format!("base variable {b} is not a variable")))?,
            ),
        };
        Ok(PolyAlgebra { ring, vars, base_var })
    }

    /// `k[x][x_1, ..., x_m]` with `x` of weight `base_weight`, the `x_i` of weight `weight`.
    pub fn relative(ring: ModRing, base: &str, base_weight: u32, m: usize, weight: u32) -> Result<Self> {
        let mut vars = vec![Variable::new(base, base_weight)];
        vars.extend((1..=m).map(|i| Variable::new(format!("x{i}"), weight)));
        PolyAlgebra::new(ring, vars, Some(base))
    }

    pub fn from_descriptor(d: &AlgebraDescriptor) -> Result<Self> {
        PolyAlgebra::new(ModRing::try_from(d.coeff)?, d.vars.clone(), d.base_var.as_deref())
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor {
            coeff: self.ring.into(),
            vars: self.vars.clone(),
            base_var: self.base_var.map(|i| self.vars[i].name.clone()),
        }
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn base_var(&self) -> Option<usize> {
        self.base_var
    }

    pub fn weight(&self, var: usize) -> u32 {
        self.vars[var].weight
    }

    pub fn weights(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.weight).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Same variables over another coefficient ring.
    pub fn with_ring(&self, ring: ModRing) -> Self {
        PolyAlgebra { ring, vars: self.vars.clone(), base_var: self.base_var }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_roundtrip() {
        let json = r#"{"coeff":{"p":2,"n":2},"vars":[{"name":"x","weight":1}],"base_var":"x"}"#;
        let d: AlgebraDescriptor = serde_json::from_str(json).unwrap();
        let a = PolyAlgebra::from_descriptor(&d).unwrap();
        assert_eq!(a.ring().modulus(), 4);
        assert_eq!(a.base_var(), Some(0));
        assert_eq!(serde_json::to_string(&a.descriptor()).unwrap(), json);
    }

    #[test]
    fn rejects_bad_variables() {
        let r = ModRing::prime_field(3).unwrap();
        assert!(PolyAlgebra::new(r, vec![Variable::new("x", 0)], None).is_err());
        assert!(PolyAlgebra::new(r, vec![Variable::new("x", 1), Variable::new("x", 1)], None).is_err());
        assert!(PolyAlgebra::new(r, vec![Variable::new("x", 1)], Some("y")).is_err());
    }
}
