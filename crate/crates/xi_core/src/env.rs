// SPDX-License-Identifier: Apache-2.0
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::{leq, xi_cond, xi_join, xi_meet, xi_not, XiValue};

/// Finite map from signal names to statuses.
///
/// Binary operations align their operands on the union of both domains,
/// treating a missing name as ⊥.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Environment {
    entries: BTreeMap<String, XiValue>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_map(entries: BTreeMap<String, XiValue>) -> Self {
        Environment { entries }
    }

    /// Every name of `domain` mapped to `v`.
    pub fn uniform<I, S>(domain: I, v: XiValue) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Environment {
            entries: domain.into_iter().map(|s| (s.into(), v)).collect(),
        }
    }

    /// `E^⊤`: every name of the domain set to ⊤.
    pub fn top_over(&self) -> Self {
        Self::uniform(self.entries.keys().cloned(), XiValue::Error)
    }

    pub fn get(&self, name: &str) -> XiValue {
        self.entries.get(name).copied().unwrap_or(XiValue::Bottom)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn set(&mut self, name: impl Into<String>, v: XiValue) {
        self.entries.insert(name.into(), v);
    }

    pub fn remove(&mut self, name: &str) -> Option<XiValue> {
        self.entries.remove(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, XiValue)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|k| k.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Restriction `E↾names`; names outside the domain are dropped.
    pub fn restrict<'a, I>(&self, names: I) -> Self
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut out = BTreeMap::new();
        for n in names {
            if let Some(v) = self.entries.get(n) {
                out.insert(n.to_string(), *v);
            }
        }
        Environment { entries: out }
    }

    pub fn as_map(&self) -> &BTreeMap<String, XiValue> {
        &self.entries
    }

    fn zip_with(&self, other: &Self, f: impl Fn(XiValue, XiValue) -> XiValue) -> Self {
        let names: BTreeSet<&String> = self.entries.keys().chain(other.entries.keys()).collect();
        let entries = names
            .into_iter()
            .map(|n| (n.clone(), f(self.get(n), other.get(n))))
            .collect();
        Environment { entries }
    }
}

pub fn env_join(a: &Environment, b: &Environment) -> Environment {
    a.zip_with(b, xi_join)
}

pub fn env_meet(a: &Environment, b: &Environment) -> Environment {
    a.zip_with(b, xi_meet)
}

pub fn env_not(a: &Environment) -> Environment {
    Environment {
        entries: a.entries.iter().map(|(k, v)| (k.clone(), xi_not(*v))).collect(),
    }
}

pub fn env_cond(a: &Environment, c: bool) -> Environment {
    Environment {
        entries: a.entries.iter().map(|(k, v)| (k.clone(), xi_cond(*v, c))).collect(),
    }
}

/// `E ⪯ E′`: every name of `E` appears in `E′` with a status at least as high.
pub fn env_preceq(a: &Environment, b: &Environment) -> bool {
    a.entries
        .iter()
        .all(|(k, v)| b.entries.get(k).is_some_and(|w| leq(*v, *w)))
}

impl fmt::Display for Environment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        f.write_str("}")
    }
}
