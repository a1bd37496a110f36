//! The line-oriented `.qmap` format.
//!
//! ```text
//! alphabet a b c e
//! neutral e
//! default identity
//! map b a -> a b
//! ```

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::quadmap::QuadMap;
use crate::words::{Alphabet, Letter};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapLine {
    pub line: usize,
    pub from: (String, String),
    pub to: (String, String),
}

/// A parsed but not yet resolved map description.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapSpec {
    pub alphabet: Vec<String>,
    pub neutral: Option<String>,
    pub default_identity: bool,
    pub maps: Vec<MapLine>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_spec(text: &str) -> Result<MapSpec> {
    let mut spec = MapSpec::default();
    let mut seen_alphabet = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        if !seen_alphabet && keyword != "alphabet" {
            return Err(err(line, "the first directive must be `alphabet`"));
        }
        match keyword {
            "alphabet" => {
                if seen_alphabet {
                    return Err(err(line, "duplicate `alphabet` line"));
                }
                if rest.is_empty() {
                    return Err(err(line, "empty alphabet"));
                }
                seen_alphabet = true;
                spec.alphabet = rest.iter().map(|s| s.to_string()).collect();
            }
            "neutral" => {
                if spec.neutral.is_some() {
                    return Err(err(line, "more than one `neutral` line"));
                }
                let [name] = rest[..] else {
                    return Err(err(line, "expected `neutral <name>`"));
                };
                spec.neutral = Some(name.to_string());
            }
            "default" => {
                if rest != ["identity"] {
                    return Err(err(line, "expected `default identity`"));
                }
                spec.default_identity = true;
            }
            "map" => {
                let [s, t, "->", u, v] = rest[..] else {
                    return Err(err(line, "expected `map <s> <t> -> <s'> <t'>`"));
                };
                spec.maps.push(MapLine {
                    line,
                    from: (s.to_string(), t.to_string()),
                    to: (u.to_string(), v.to_string()),
                });
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    if !seen_alphabet {
        return Err(err(1, "missing `alphabet` line"));
    }
    Ok(spec)
}

impl MapSpec {
    pub fn build(&self) -> Result<QuadMap> {
        let alphabet = Alphabet::new(self.alphabet.iter().map(String::as_str), self.neutral.as_deref())
            .map_err(|e| err(1, e.to_string()))?;
        let mut table: HashMap<(Letter, Letter), (Letter, Letter)> = HashMap::new();
        for m in &self.maps {
            let get = |name: &str| {
                alphabet
                    .letter(name)
                    .map_err(|_| err(m.line, format!("undeclared letter `{name}`")))
            };
            let key = (get(&m.from.0)?, get(&m.from.1)?);
            let image = (get(&m.to.0)?, get(&m.to.1)?);
            if table.insert(key, image).is_some() {
                return Err(err(m.line, format!("duplicate map line for `{} {}`", m.from.0, m.from.1)));
            }
        }
        let n = alphabet.len();
        if !self.default_identity && table.len() < n * n {
            return Err(err(1, "table is not total; add `default identity`"));
        }
        QuadMap::from_fn(alphabet, |s, t| table.get(&(s, t)).copied().unwrap_or((s, t)))
    }
}

pub fn parse(text: &str) -> Result<QuadMap> {
    parse_spec(text)?.build()
}

/// Canonical text: alphabet, neutral, `default identity`, then the moved
/// pairs in table order.
pub fn print(f: &QuadMap) -> String {
    let a = f.alphabet();
    let mut out = format!("alphabet {}\n", a.names().join(" "));
    if let Some(e) = a.neutral() {
        out.push_str(&format!("neutral {}\n", a.name(e)));
    }
    out.push_str("default identity\n");
    for ((s, t), (u, v)) in f.moved_pairs() {
        out.push_str(&format!("map {} {} -> {} {}\n", a.name(s), a.name(t), a.name(u), a.name(v)));
    }
    out
}
