//! Job files: `key: value` lines, or a `key:` line followed by one entry per
//! line until the next key. `#` starts a comment line.

use std::collections::BTreeMap;

use khova_core::algebra::parse_rational;
use khova_core::{Caps, Ideal, MonomialOrder, Polynomial, Rational, Vars, WeightMatrix};

use crate::CliError;

pub const KEYS: &[&str] = &[
    "vars",
    "ideal",
    "matrix",
    "order",
    "u",
    "rays",
    "lineality",
    "samples",
    "delta",
    "degree",
    "mode",
    "sagbi_generators",
    "ambient_order",
    "f",
    "rounds",
    "trials",
    "sigma",
    "levels",
    "caps",
    "seed",
];

#[derive(Clone, Debug)]
pub struct Job {
    entries: BTreeMap<String, (usize, Vec<(usize, String)>)>,
}

fn err(line: usize, msg: impl Into<String>) -> CliError {
    CliError::Job {
        line: Some(line),
        msg: msg.into(),
    }
}

fn missing(key: &str) -> CliError {
    CliError::Job {
        line: None,
        msg: format!("missing key {key:?}"),
    }
}

impl Job {
    pub fn parse(text: &str) -> Result<Job, CliError> {
        let mut entries: BTreeMap<String, (usize, Vec<(usize, String)>)> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((key, rest)) = split_key(line) {
                if !KEYS.contains(&key) {
                    return Err(err(line_no, format!("unknown key {key:?}")));
                }
                if entries.contains_key(key) {
                    return Err(err(line_no, format!("duplicate key {key:?}")));
                }
                let mut values = Vec::new();
                if !rest.is_empty() {
                    values.push((line_no, rest.to_string()));
                }
                entries.insert(key.to_string(), (line_no, values));
                current = Some(key.to_string());
                continue;
            }
            let Some(key) = &current else {
                return Err(err(line_no, "entry before the first key"));
            };
            entries
                .get_mut(key)
                .expect("current key")
                .1
                .push((line_no, line.to_string()));
        }
        Ok(Job { entries })
    }

    fn lines(&self, key: &str) -> Option<(usize, &[(usize, String)])> {
        self.entries.get(key).map(|(l, v)| (*l, v.as_slice()))
    }

    fn single(&self, key: &str) -> Result<Option<(usize, &str)>, CliError> {
        match self.lines(key) {
            None => Ok(None),
            Some((_, [(l, v)])) => Ok(Some((*l, v.as_str()))),
            Some((l, _)) => Err(err(l, format!("{key} takes exactly one value"))),
        }
    }

    pub fn vars(&self) -> Result<Vars, CliError> {
        let (l, v) = self.single("vars")?.ok_or_else(|| missing("vars"))?;
        let names: Vec<&str> = v.split_whitespace().collect();
        if names.is_empty() {
            return Err(err(l, "empty variable list"));
        }
        Ok(Vars::new(&names))
    }

    pub fn polynomials(&self, key: &str, vars: &Vars) -> Result<Vec<Polynomial>, CliError> {
        let Some((_, lines)) = self.lines(key) else {
            return Ok(Vec::new());
        };
        lines
            .iter()
            .map(|(l, s)| khova_core::parse_polynomial(s, vars).map_err(|e| err(*l, e.to_string())))
            .collect()
    }

    /// The ideal of the job; the zero ideal when `ideal` is absent.
    pub fn ideal(&self, vars: &Vars) -> Result<Ideal, CliError> {
        let gens = self.polynomials("ideal", vars)?;
        Ideal::new(vars, gens).map_err(CliError::Core)
    }

    pub fn rational_rows(&self, key: &str) -> Result<Option<Vec<Vec<Rational>>>, CliError> {
        let Some((_, lines)) = self.lines(key) else {
            return Ok(None);
        };
        let rows = lines
            .iter()
            .map(|(l, row)| {
                row.split_whitespace()
                    .map(|t| parse_rational(t).map_err(|e| err(*l, format!("{key}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(rows))
    }

    pub fn rational_row(&self, key: &str) -> Result<Option<Vec<Rational>>, CliError> {
        match self.rational_rows(key)? {
            None => Ok(None),
            Some(rows) if rows.len() == 1 => Ok(rows.into_iter().next()),
            Some(_) => Err(err(
                self.lines(key).map(|x| x.0).unwrap_or(0),
                format!("{key} takes one row"),
            )),
        }
    }

    pub fn matrix(&self) -> Result<Option<WeightMatrix>, CliError> {
        match self.rational_rows("matrix")? {
            None => Ok(None),
            Some(rows) => WeightMatrix::new(rows).map(Some).map_err(CliError::Core),
        }
    }

    pub fn require_matrix(&self) -> Result<WeightMatrix, CliError> {
        self.matrix()?.ok_or_else(|| missing("matrix"))
    }

    pub fn order(&self, key: &str) -> Result<MonomialOrder, CliError> {
        match self.single(key)? {
            None => Ok(MonomialOrder::DegRevLex),
            Some((l, name)) => MonomialOrder::parse(name).map_err(|e| err(l, e.to_string())),
        }
    }

    pub fn word(&self, key: &str) -> Result<Option<String>, CliError> {
        Ok(self
            .single(key)?
            .map(|(_, s)| s.trim().to_ascii_lowercase()))
    }

    pub fn integer<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.single(key)? {
            None => Ok(None),
            Some((l, s)) => s
                .trim()
                .parse()
                .map(Some)
                .map_err(|_| err(l, format!("{key}: expected an integer"))),
        }
    }

    pub fn integers(&self, key: &str) -> Result<Option<Vec<usize>>, CliError> {
        let Some((_, lines)) = self.lines(key) else {
            return Ok(None);
        };
        lines
            .iter()
            .flat_map(|(l, s)| s.split_whitespace().map(move |t| (*l, t)))
            .map(|(l, t)| {
                t.parse()
                    .map_err(|_| err(l, format!("{key}: expected nonnegative integers")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    /// Caps from the `caps` section (`pairs N`, `degree N`, `subduction N`).
    pub fn caps(&self) -> Result<Caps, CliError> {
        let mut caps = Caps::default();
        let Some((_, lines)) = self.lines("caps") else {
            return Ok(caps);
        };
        for (l, s) in lines {
            let l = *l;
            let mut it = s.split_whitespace();
            let (Some(name), Some(value), None) = (it.next(), it.next(), it.next()) else {
                return Err(err(l, format!("caps: malformed entry {s:?}")));
            };
            let bad = || err(l, format!("caps: {value:?} is not a nonnegative integer"));
            match name {
                "pairs" => caps.max_pairs = value.parse().map_err(|_| bad())?,
                "degree" => caps.max_degree = value.parse().map_err(|_| bad())?,
                "subduction" => caps.max_subduction = value.parse().map_err(|_| bad())?,
                other => return Err(err(l, format!("caps: unknown cap {other:?}"))),
            }
        }
        Ok(caps)
    }
}

fn split_key(line: &str) -> Option<(&str, &str)> {
    let (key, rest) = line.split_once(':')?;
    if key.is_empty() || !key.chars().all(|c| c.is_ascii_lowercase() || c == '_') {
        return None;
    }
    Some((key, rest.trim()))
}
