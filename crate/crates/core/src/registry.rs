//! Name-keyed registries of strategy constructors.
//!
//! Every pluggable family in the crate (growth functions, solvers, delegates,
//! instance generators, bound formulas) is selected at runtime from a string of
//! the form `name` or `name:argument`. A [`Registry`] maps the `name` part to a
//! constructor that receives the optional argument.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown {kind} `{name}` (known: {known})")]
    Unknown {
        kind: &'static str,
        name: String,
        known: String,
    },
    #[error("invalid argument for {kind} `{name}`: {message}")]
    BadArgument {
        kind: &'static str,
        name: String,
        message: String,
    },
}

pub type Constructor<T> = Box<dyn Fn(Option<&str>) -> Result<Box<T>, String> + Send + Sync>;

pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: BTreeMap<String, Constructor<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: BTreeMap::new(),
        }
    }

    pub fn register<F>(&mut self, name: &str, ctor: F) -> &mut Self
    where
        F: Fn(Option<&str>) -> Result<Box<T>, String> + Send + Sync + 'static,
    {
        self.entries.insert(name.to_string(), Box::new(ctor));
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    /// Builds the strategy named by `spec` (`name` or `name:arg`).
    pub fn build(&self, spec: &str) -> Result<Box<T>, RegistryError> {
        let (name, arg) = split_spec(spec);
        let ctor = self
            .entries
            .get(name)
            .ok_or_else(|| RegistryError::Unknown {
                kind: self.kind,
                name: name.to_string(),
                known: self.names().collect::<Vec<_>>().join(", "),
            })?;
        ctor(arg).map_err(|message| RegistryError::BadArgument {
            kind: self.kind,
            name: name.to_string(),
            message,
        })
    }
}

impl<T: ?Sized> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("kind", &self.kind)
            .field("names", &self.entries.keys().collect::<Vec<_>>())
            .finish()
    }
}

pub fn split_spec(spec: &str) -> (&str, Option<&str>) {
    match spec.split_once(':') {
        Some((name, arg)) => (name.trim(), Some(arg.trim())),
        None => (spec.trim(), None),
    }
}

pub(crate) fn require_arg(arg: Option<&str>) -> Result<&str, String> {
    arg.ok_or_else(|| "missing `:<value>` argument".to_string())
}

pub(crate) fn parse_f64_arg(arg: Option<&str>) -> Result<f64, String> {
    let text = require_arg(arg)?;
    let value: f64 = text
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if !value.is_finite() {
        return Err(format!("`{text}` is not finite"));
    }
    Ok(value)
}

pub(crate) fn no_arg(arg: Option<&str>) -> Result<(), String> {
    match arg {
        None => Ok(()),
        Some(a) => Err(format!("takes no argument, got `{a}`")),
    }
}
