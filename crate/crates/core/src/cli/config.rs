//! Plain-text key/value config files and the numeric literals shared with the flags.
//!
//! ```text
//! # comment
//! phi = 0.7853981633974483
//! chis = 0.3,0.7,1.1,0.45+0.2i
//! lambda = 1-0.5i
//! ```

use crate::fuchsian::SymmetricHeunConfig;
use crate::{fmt_complex, C64};
use std::collections::BTreeMap;

/// Parses `re`, `imi`, `re+imi` or `re-imi` (also `i`, `-i`).
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    let bad = || format!("malformed complex literal '{s}'");
    let Some(body) = t.strip_suffix('i') else {
        return t
            .parse::<f64>()
            .map(|x| C64::new(x, 0.0))
            .map_err(|_| bad());
    };
    // split before the last sign that does not belong to an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(C64::new(re, im))
}

pub fn parse_complex_list<const N: usize>(s: &str) -> Result<[C64; N], String> {
    let items: Vec<C64> = s.split(',').map(parse_complex).collect::<Result<_, _>>()?;
    items
        .try_into()
        .map_err(|v: Vec<C64>| format!("expected {N} comma-separated values, got {}", v.len()))
}

/// Raw key/value pairs of a config file, keys lower-cased.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected 'key = value'", no + 1))?;
            let k = k.trim().to_ascii_lowercase();
            if entries.insert(k.clone(), v.trim().to_string()).is_some() {
                return Err(format!("line {}: duplicate key '{k}'", no + 1));
            }
        }
        Ok(ConfigFile { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Equation parameters as given by a file and/or flags, before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EquationSpec {
    pub phi: Option<C64>,
    pub points: Option<[C64; 4]>,
    pub chis: Option<[C64; 4]>,
    pub lambda: Option<C64>,
}

impl EquationSpec {
    pub fn from_file(f: &ConfigFile) -> Result<Self, String> {
        Ok(EquationSpec {
            phi: f.get("phi").map(parse_complex).transpose()?,
            points: f.get("points").map(parse_complex_list::<4>).transpose()?,
            chis: f
                .get("chis")
                .or(f.get("chi"))
                .map(parse_complex_list::<4>)
                .transpose()?,
            lambda: f.get("lambda").map(parse_complex).transpose()?,
        })
    }

    /// Fields set in `other` win.
    pub fn overlay(self, other: EquationSpec) -> EquationSpec {
        let (phi, points) = if other.phi.is_some() || other.points.is_some() {
            (other.phi, other.points)
        } else {
            (self.phi, self.points)
        };
        EquationSpec {
            phi,
            points,
            chis: other.chis.or(self.chis),
            lambda: other.lambda.or(self.lambda),
        }
    }

    /// Missing `chis` default to zero and `lambda` to zero.
    pub fn build(&self) -> Result<SymmetricHeunConfig, String> {
        let chis = self.chis.unwrap_or([C64::new(0.0, 0.0); 4]);
        let lambda = self.lambda.unwrap_or(C64::new(0.0, 0.0));
        let built = match (self.phi, self.points) {
            (Some(_), Some(_)) => return Err("give either phi or points, not both".into()),
            (Some(phi), None) => SymmetricHeunConfig::canonical(phi, chis, lambda),
            (None, Some(points)) => SymmetricHeunConfig::new(points, chis, lambda),
            (None, None) => return Err("no singular points: set phi or points".into()),
        };
        built.map_err(|e| e.to_string())
    }
}

/// Serialises a configuration so that [`EquationSpec::from_file`] reads it back
/// bit for bit.
pub fn write_config(cfg: &SymmetricHeunConfig) -> String {
    let list = |v: &[C64; 4]| {
        v.iter()
            .map(|&z| fmt_complex(z))
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut out = String::from("# heunsym configuration\n");
    out.push_str(&format!("points = {}\n", list(cfg.points())));
    out.push_str(&format!("chis = {}\n", list(cfg.chis())));
    out.push_str(&format!("lambda = {}\n", fmt_complex(cfg.lambda())));
    out
}
