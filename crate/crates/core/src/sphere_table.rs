//! Table of homotopy groups of spheres `pi_n(S^q)`.
//!
//! Values come from three places only: the structural rules (`n < q` gives
//! `0`, `n = q` gives `Z`, `q = 1, n >= 2` gives `0`), the shipped seed entries,
//! and user-supplied table files. Anything else is [`Lookup::Unknown`].
//!
//! File format, one entry per line:
//!
//! ```text
//! # comment
//! pi 3 2 = Z          # trailing comment becomes the provenance string
//! pi 7 4 = Z + Z/12
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::groups::FGAbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: pi_{n}(S^{q}) = {value} violates the rule {rule}")]
    Consistency {
        line: usize,
        n: u32,
        q: u32,
        value: String,
        rule: &'static str,
    },
    #[error("line {line}: pi_{n}(S^{q}) given as both {first} and {second}")]
    Conflict {
        line: usize,
        n: u32,
        q: u32,
        first: String,
        second: String,
    },
    #[error("cannot read table {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Known(FGAbelianGroup),
    Unknown,
}

impl Lookup {
    pub fn known(self) -> Option<FGAbelianGroup> {
        match self {
            Lookup::Known(g) => Some(g),
            Lookup::Unknown => None,
        }
    }
}

/// The structural value of `pi_n(S^q)` if one of the built-in rules applies,
/// together with the rule's name.
pub fn builtin_rule(n: u32, q: u32) -> Option<(FGAbelianGroup, &'static str)> {
    if n < q {
        Some((FGAbelianGroup::trivial(), "n < q => 0"))
    } else if n == q {
        Some((FGAbelianGroup::integers(), "n = q => Z"))
    } else if q == 1 {
        Some((FGAbelianGroup::trivial(), "q = 1, n >= 2 => 0"))
    } else {
        None
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SphereGroupTable {
    entries: BTreeMap<(u32, u32), FGAbelianGroup>,
    provenance: BTreeMap<(u32, u32), String>,
}

impl SphereGroupTable {
    /// Only the structural rules.
    pub fn empty() -> Self {
        Self::default()
    }

    /// The values this project ships: `pi_3(S^2) = Z`, `pi_4(S^2) = Z/2` and the
    /// first stable stem `pi_{q+1}(S^q) = Z/2` for `3 <= q <= 6`.
    pub fn seed() -> Self {
        let mut t = Self::empty();
        let z = FGAbelianGroup::integers();
        let z2 = FGAbelianGroup::cyclic(2);
        t.insert_unchecked(3, 2, z, "Hopf map");
        t.insert_unchecked(4, 2, z2.clone(), "Hopf map composed with its suspension");
        for q in 3..=6 {
            t.insert_unchecked(q + 1, q, z2.clone(), "suspended Hopf map, first stable stem");
        }
        t
    }

    fn insert_unchecked(&mut self, n: u32, q: u32, g: FGAbelianGroup, source: &str) {
        self.entries.insert((n, q), g);
        self.provenance.insert((n, q), source.to_string());
    }

    pub fn lookup(&self, n: u32, q: u32) -> Lookup {
        if let Some((g, _)) = builtin_rule(n, q) {
            return Lookup::Known(g);
        }
        match self.entries.get(&(n, q)) {
            Some(g) => Lookup::Known(g.clone()),
            None => Lookup::Unknown,
        }
    }

    pub fn provenance(&self, n: u32, q: u32) -> Option<&str> {
        if builtin_rule(n, q).is_some() {
            return Some("built-in rule");
        }
        self.provenance.get(&(n, q)).map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &FGAbelianGroup)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut table = Self::empty();
        table.merge_text(text)?;
        Ok(table)
    }

    /// Adds the entries of `text` to this table. Re-stating an existing value
    /// is allowed; contradicting it is not.
    pub fn merge_text(&mut self, text: &str) -> Result<(), TableError> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let (body, comment) = match raw.split_once('#') {
                Some((b, c)) => (b.trim(), Some(c.trim())),
                None => (raw.trim(), None),
            };
            if body.is_empty() {
                continue;
            }
            let parse_err = |message: String| TableError::Parse { line, message };
            let (lhs, rhs) = body
                .split_once('=')
                .ok_or_else(|| parse_err("expected `pi <n> <q> = <group>`".into()))?;
            let words: Vec<&str> = lhs.split_whitespace().collect();
            let (n, q) = match words.as_slice() {
                ["pi", n, q] => (
                    n.parse::<u32>()
                        .map_err(|_| parse_err(format!("bad dimension {n:?}")))?,
                    q.parse::<u32>()
                        .map_err(|_| parse_err(format!("bad sphere dimension {q:?}")))?,
                ),
                _ => return Err(parse_err("expected `pi <n> <q> = <group>`".into())),
            };
            if n == 0 || q == 0 {
                return Err(parse_err("dimensions must be at least 1".into()));
            }
            let value: FGAbelianGroup = rhs
                .trim()
                .parse()
                .map_err(|_| parse_err(format!("bad group {:?}", rhs.trim())))?;
            if let Some((expected, rule)) = builtin_rule(n, q) {
                if expected != value {
                    return Err(TableError::Consistency {
                        line,
                        n,
                        q,
                        value: value.to_table_string(),
                        rule,
                    });
                }
            }
            if let Some(existing) = self.entries.get(&(n, q)) {
                if *existing != value {
                    return Err(TableError::Conflict {
                        line,
                        n,
                        q,
                        first: existing.to_table_string(),
                        second: value.to_table_string(),
                    });
                }
                continue;
            }
            let source = comment
                .filter(|c| !c.is_empty())
                .map(str::to_string)
                .unwrap_or_else(|| format!("user table line {line}"));
            self.insert_unchecked(n, q, value, &source);
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, TableError> {
        let text = std::fs::read_to_string(path).map_err(|e| TableError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// One `pi n q = G  # provenance` line per entry, sorted by `(n, q)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for ((n, q), g) in &self.entries {
            out.push_str(&format!("pi {n} {q} = {}", g.to_table_string()));
            if let Some(src) = self.provenance.get(&(*n, *q)) {
                out.push_str(&format!("  # {src}"));
            }
            out.push('\n');
        }
        out
    }
}
