use std::collections::HashSet;

use crate::error::{Error, Result};

/// Whether a variable is a differentiable coordinate or a constant parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarRole {
    Base,
    Parameter,
}

/// Ordered variable names shared by every polynomial of a computation.
///
/// Base variables come first, parameters after them. Index 0 is the most
/// significant variable of the lexicographic order used to store terms and
/// to normalize denominators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    roles: Vec<VarRole>,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(base: &[S], params: &[S]) -> Result<Self> {
        let mut names = Vec::with_capacity(base.len() + params.len());
        let mut roles = Vec::with_capacity(base.len() + params.len());
        let mut seen = HashSet::new();
        for (list, role) in [(base, VarRole::Base), (params, VarRole::Parameter)] {
            for name in list {
                let name = name.as_ref().trim();
                if !is_identifier(name) {
                    return Err(Error::InvalidVariables(format!("'{name}' is not an identifier")));
                }
                if !seen.insert(name.to_string()) {
                    return Err(Error::InvalidVariables(format!("duplicate name '{name}'")));
                }
                names.push(name.to_string());
                roles.push(role);
            }
        }
        Ok(VarTable { names, roles })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn role(&self, i: usize) -> VarRole {
        self.roles[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn num_base(&self) -> usize {
        self.roles.iter().filter(|r| **r == VarRole::Base).count()
    }

    pub fn base_names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().zip(&self.roles).filter(|(_, r)| **r == VarRole::Base).map(|(n, _)| n.as_str())
    }

    pub fn param_names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().zip(&self.roles).filter(|(_, r)| **r == VarRole::Parameter).map(|(n, _)| n.as_str())
    }

    /// Checks that `i` may be differentiated against.
    pub fn check_base(&self, i: usize) -> Result<()> {
        match self.roles.get(i) {
            Some(VarRole::Base) => Ok(()),
            _ => Err(Error::NotABaseVariable(i)),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
