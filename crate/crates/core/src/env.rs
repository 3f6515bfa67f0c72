//! Variable environments.
//!
//! An environment is a flat map from names to bindings. Child environments
//! are snapshots taken at spawn time (they copy the parent's exported
//! bindings and never see later parent changes), which mirrors how a child
//! shell only inherits the exported part of its parent's state.

use crate::dialect::DialectFamily;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// A variable's value: scalar text or a list (C-family `set name = (...)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(String),
    List(Vec<String>),
}

impl Value {
    /// Flatten to display text: list elements joined by single spaces.
    pub fn to_text(&self) -> String {
        match self {
            Value::Scalar(s) => s.clone(),
            Value::List(items) => items.join(" "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub value: Value,
    pub exported: bool,
    pub readonly: bool,
}

/// Attempting to write or unset a readonly binding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadonlyViolation {
    pub name: String,
    pub message: String,
}

impl std::fmt::Display for ReadonlyViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for ReadonlyViolation {}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Env {
    bindings: BTreeMap<String, Binding>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    /// Look up a binding. Consults only this environment — there is no live
    /// parent chain.
    pub fn lookup(&self, name: &str) -> Option<&Binding> {
        self.bindings.get(name)
    }

    /// Bind `name` to `value`. A new binding starts unexported and writable;
    /// an existing binding keeps its exported flag. Writing a readonly
    /// binding fails and leaves it untouched.
    pub fn set(&mut self, name: &str, value: Value) -> Result<(), ReadonlyViolation> {
        match self.bindings.get_mut(name) {
            Some(b) if b.readonly => Err(ReadonlyViolation {
                name: name.to_string(),
                message: format!("{name}: readonly variable"),
            }),
            Some(b) => {
                b.value = value;
                Ok(())
            }
            None => {
                self.bindings.insert(
                    name.to_string(),
                    Binding { value, exported: false, readonly: false },
                );
                Ok(())
            }
        }
    }

    /// Mark `name` exported. Exporting an unbound name creates an empty
    /// exported binding.
    pub fn mark_export(&mut self, name: &str) {
        self.bindings
            .entry(name.to_string())
            .or_insert_with(|| Binding {
                value: Value::Scalar(String::new()),
                exported: true,
                readonly: false,
            })
            .exported = true;
    }

    /// Mark `name` readonly. Readonly is sticky: no later operation can
    /// clear it or change the value. Marking an unbound name creates an
    /// empty readonly binding.
    pub fn mark_readonly(&mut self, name: &str) {
        self.bindings
            .entry(name.to_string())
            .or_insert_with(|| Binding {
                value: Value::Scalar(String::new()),
                exported: false,
                readonly: false,
            })
            .readonly = true;
    }

    /// Remove a binding. Unsetting an unbound name succeeds (idempotent);
    /// unsetting a readonly binding fails with the canonical message.
    pub fn unset(&mut self, name: &str) -> Result<(), ReadonlyViolation> {
        if let Some(b) = self.bindings.get(name) {
            if b.readonly {
                return Err(ReadonlyViolation {
                    name: name.to_string(),
                    message: format!("unset: {name}: cannot unset: readonly variable"),
                });
            }
        }
        self.bindings.remove(name);
        Ok(())
    }

    /// Snapshot the exported bindings into a fresh child environment. The
    /// child dialect does not change what is copied — only exported names
    /// cross the spawn boundary. Flags reset in the child: a variable that
    /// was readonly in the parent is an ordinary variable in the child.
    pub fn spawn_child(&self, _child_family: DialectFamily) -> Env {
        let bindings = self
            .bindings
            .iter()
            .filter(|(_, b)| b.exported)
            .map(|(name, b)| {
                (
                    name.clone(),
                    Binding { value: b.value.clone(), exported: true, readonly: false },
                )
            })
            .collect();
        Env { bindings }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Binding)> {
        self.bindings.iter()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Names bound in this environment (sorted — the map is ordered).
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(|s| s.as_str())
    }
}

/// Serializes as `{"name": {"value": ..., "exported": bool, "readonly": bool}}`
/// with names in sorted order; list values serialize as JSON arrays.
impl Serialize for Env {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct BindingRepr<'a> {
            value: ValueRepr<'a>,
            exported: bool,
            readonly: bool,
        }
        #[derive(Serialize)]
        #[serde(untagged)]
        enum ValueRepr<'a> {
            Scalar(&'a str),
            List(&'a [String]),
        }
        let mut map = serializer.serialize_map(Some(self.bindings.len()))?;
        for (name, b) in &self.bindings {
            let value = match &b.value {
                Value::Scalar(s) => ValueRepr::Scalar(s),
                Value::List(items) => ValueRepr::List(items),
            };
            map.serialize_entry(
                name,
                &BindingRepr { value, exported: b.exported, readonly: b.readonly },
            )?;
        }
        map.end()
    }
}
