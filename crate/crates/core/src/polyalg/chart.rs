use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Ordered list of coordinate names. Cheap to clone.
#[derive(Clone)]
pub struct Chart {
    names: Arc<[String]>,
}

fn is_ident(s: &str) -> bool {
    let mut bytes = s.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Chart {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidChart("a chart needs at least one coordinate".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_ident(n) {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{n}`")));
            }
        }
        Ok(Chart { names: names.into() })
    }

    /// `q1..qn, p1..pn`.
    pub fn canonical(n: usize) -> Self {
        Self::phase_space(n, "q", "p")
    }

    /// `Q1..Qn, P1..Pn`, used for transformed coordinates.
    pub fn canonical_upper(n: usize) -> Self {
        Self::phase_space(n, "Q", "P")
    }

    fn phase_space(n: usize, q: &str, p: &str) -> Self {
        assert!(n >= 1, "phase space needs n >= 1");
        let names = (1..=n)
            .map(|i| format!("{q}{i}"))
            .chain((1..=n).map(|i| format!("{p}{i}")));
        Chart::new(names).expect("generated names are valid")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Fail with a `ChartMismatch` naming both charts unless they are equal.
    pub fn ensure_same(&self, other: &Chart) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ChartMismatch(format!("{self} vs {other}")))
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart{:?}", &*self.names)
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(","))
    }
}

impl Serialize for Chart {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.names.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Chart {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        Chart::new(names).map_err(serde::de::Error::custom)
    }
}
