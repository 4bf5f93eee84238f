//! Named functional equations as [`EquationSpec`] values, structural checks
//! on them, and numerical verification drivers.

mod builders;
mod checks;
mod numeric;
mod xi7;

#[cfg(test)]
mod tests;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::{FormalSum, JsonTerm};

pub use builders::{
    f17, f17_sum, five_term, fourlog, gamma21, gamma21_rhs, gamma21_rhs_sum, gamma21_symmetrized, gamma_sum,
    goncharov22, goncharov22_sym, goncharov22_sym_sum, goncharov22_terms, relation34, three_term, xi7_explicit,
    xi7_symmetric,
};
pub use checks::{
    alpha_to_t_substitution, ab_parametrization, check_22_to_34_substitution, check_22_to_34_with, check_34_from_wojtkowiak,
    check_gamma21_identity, check_gprime_correspondence, check_group_orders, check_orbit_sizes, check_q_equations,
    check_sym_matches_goncharov22, check_xi7_explicit_vs_symmetric, check_xi7_multiplicities, check_xi7_term_count,
    check_xi7_weights, g_generators, gprime_generators, CheckReport,
};
pub use numeric::{
    preimages, sample_annulus, verify_dilog_general, verify_fourlog_numeric, verify_numeric, verify_trilog_theorem,
    verify_wojtkowiak, NumericOptions, NumericVerdict,
};
pub use xi7::{
    a_k_set, a_k_sets, block, block0, f_functions, omega, permutations, phi_alpha, phi_alpha_with, theta,
    weight_wt, xi7_explicit_sum, xi7_symmetric_sum, xi7_table, AkSets, BlockKey, BlockTerm, IntVec3, PhiSign,
};

/// Recipe for binding root placeholders: `x1..xn` to the roots of
/// `x^(n-1)(x-1) = t` and `y1..yn` to those of `y^(n-1)(y-1) = u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBinding {
    pub n: usize,
}

/// A named formal sum with metadata.
#[derive(Clone, Debug)]
pub struct EquationSpec {
    pub name: String,
    pub weight: u32,
    pub variables: Vec<String>,
    pub sum: FormalSum,
    pub constraints: Vec<String>,
    /// Short description of where the equation comes from.
    pub anchor: String,
    /// Set for templates whose placeholders are algebraic, not free.
    pub binding: Option<RootBinding>,
    /// False for building blocks that are not annihilated on their own.
    pub is_equation: bool,
}

#[derive(Serialize, Deserialize)]
struct EquationJson {
    name: String,
    weight: u32,
    variables: Vec<String>,
    constraints: Vec<String>,
    anchor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    binding: Option<RootBinding>,
    is_equation: bool,
    terms: Vec<JsonTerm>,
}

impl EquationSpec {
    pub fn new(name: &str, weight: u32, variables: Vec<String>, sum: FormalSum) -> Self {
        EquationSpec {
            name: name.to_string(),
            weight,
            variables,
            sum,
            constraints: Vec::new(),
            anchor: String::new(),
            binding: None,
            is_equation: true,
        }
    }

    pub fn constraint(mut self, c: &str) -> Self {
        self.constraints.push(c.to_string());
        self
    }

    pub fn anchor(mut self, a: &str) -> Self {
        self.anchor = a.to_string();
        self
    }

    pub fn with_binding(mut self, b: RootBinding) -> Self {
        self.binding = Some(b);
        self
    }

    pub fn not_an_equation(mut self) -> Self {
        self.is_equation = false;
        self
    }

    /// Checks the weight range and that every argument only uses declared
    /// variables.
    pub fn validate(&self) -> Result<()> {
        if !(2..=7).contains(&self.weight) {
            return Err(Error::Domain(format!("weight {} out of range", self.weight)));
        }
        let declared: BTreeSet<&str> = self.variables.iter().map(String::as_str).collect();
        for (_, f) in self.sum.terms() {
            if let Some(v) = f.vars().iter().find(|v| !declared.contains(v.as_str())) {
                return Err(Error::Domain(format!("{}: undeclared variable {v} in {f}", self.name)));
            }
        }
        Ok(())
    }

    /// Non-constant argument classes modulo inversion.
    pub fn class_count(&self) -> usize {
        self.sum.count_distinct_up_to_inversion()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(EquationJson {
            name: self.name.clone(),
            weight: self.weight,
            variables: self.variables.clone(),
            constraints: self.constraints.clone(),
            anchor: self.anchor.clone(),
            binding: self.binding,
            is_equation: self.is_equation,
            terms: self.sum.to_json_terms(),
        })
        .expect("equation serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: EquationJson = serde_json::from_value(v.clone())?;
        let spec = EquationSpec {
            name: j.name,
            weight: j.weight,
            variables: j.variables,
            sum: FormalSum::from_json_terms(&j.terms)?,
            constraints: j.constraints,
            anchor: j.anchor,
            binding: j.binding,
            is_equation: j.is_equation,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Names accepted by [`build`]; `fourlog-n<k>` works for `2 <= k <= 6`
/// (the template needs `2k` variables).
pub const NAMES: [&str; 15] = [
    "five-term",
    "three-term",
    "goncharov22",
    "goncharov22-sym",
    "f17",
    "relation34",
    "gamma21",
    "gamma21-symmetrized",
    "gamma21-rhs",
    "fourlog-n2",
    "fourlog-n3",
    "fourlog-n4",
    "fourlog-n5",
    "xi7-explicit",
    "xi7-symmetric",
];

/// Builds a catalog entry with its default variable names.
pub fn build(name: &str) -> Result<EquationSpec> {
    let key = name.trim().to_ascii_lowercase().replace('_', "-");
    let spec = match key.as_str() {
        "five-term" => five_term("x", "y"),
        "three-term" => three_term("x"),
        "goncharov22" => goncharov22("a1", "a2", "a3"),
        "goncharov22-sym" => goncharov22_sym("t1", "t2", "t3"),
        "f17" => f17("a", "b", "c", "t"),
        "relation34" => relation34("a", "b", "c", "t", "u"),
        "gamma21" => gamma21("x", "y", "z"),
        "gamma21-symmetrized" => gamma21_symmetrized("x1", "x2", "z1"),
        "gamma21-rhs" => gamma21_rhs("x1", "x2", "z1"),
        "xi7-explicit" => xi7_explicit("t", "u"),
        "xi7-symmetric" => xi7_symmetric("t", "u"),
        other => match other.strip_prefix("fourlog-n").and_then(|k| k.parse::<usize>().ok()) {
            Some(n) if (2..=6).contains(&n) => fourlog(n),
            _ => return Err(Error::Unknown { kind: "equation", name: name.to_string() }),
        },
    };
    Ok(spec)
}

/// Every entry of [`NAMES`], as one JSON document per equation.
pub fn catalog_json() -> Result<Vec<serde_json::Value>> {
    NAMES.iter().map(|n| build(n).map(|s| s.to_json())).collect()
}
