//! Line-oriented instance files: `key = value` pairs, `#` comments,
//! generators as a quoted string list. Files are meant to live in a corpus
//! under version control, so `print` emits a canonical form and
//! `parse(print(i)) == i`.

use kummerlab::error::{Error, Result};
use kummerlab::ffield::FieldSpec;
use kummerlab::ratfield::{parse_ratfunc, FactoredElement, GaloisContext};

/// Textual field description `GF(r)` / `GF(r^m)` with an optional explicit
/// modulus (little-endian, monic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDesc {
    pub r: u64,
    pub m: u32,
    pub modulus: Option<Vec<u64>>,
}

impl FieldDesc {
    pub fn parse(s: &str) -> Result<FieldDesc> {
        let s = s.trim();
        let err = |msg: &str| Error::domain(format!("field spec {s:?}: {msg}"));
        let rest = s
            .strip_prefix("GF(")
            .ok_or_else(|| err("expected GF(r) or GF(r^m)"))?;
        let close = rest.find(')').ok_or_else(|| err("missing ')'"))?;
        let inside = &rest[..close];
        let tail = rest[close + 1..].trim();
        let (r_str, m_str) = match inside.split_once('^') {
            Some((a, b)) => (a, Some(b)),
            None => (inside, None),
        };
        let r: u64 = r_str
            .trim()
            .parse()
            .map_err(|_| err("characteristic is not an integer"))?;
        let m: u32 = match m_str {
            Some(b) => b.trim().parse().map_err(|_| err("degree is not an integer"))?,
            None => 1,
        };
        let modulus = if tail.is_empty() {
            None
        } else {
            let body = tail
                .strip_prefix("modulus=")
                .and_then(|t| t.strip_prefix('['))
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| err("expected modulus=[c0,c1,...]"))?;
            let cs = body
                .split(',')
                .map(|c| c.trim().parse::<u64>())
                .collect::<core::result::Result<Vec<u64>, _>>()
                .map_err(|_| err("modulus coefficients must be integers"))?;
            Some(cs)
        };
        Ok(FieldDesc { r, m, modulus })
    }

    pub fn render(&self) -> String {
        let mut s = if self.m == 1 {
            format!("GF({})", self.r)
        } else {
            format!("GF({}^{})", self.r, self.m)
        };
        if let Some(cs) = &self.modulus {
            let list: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!(" modulus=[{}]", list.join(",")));
        }
        s
    }

    pub fn to_spec(&self) -> Result<FieldSpec> {
        match &self.modulus {
            Some(cs) => FieldSpec::with_modulus(self.r, self.m, cs.clone()),
            None => FieldSpec::new(self.r, self.m),
        }
    }
}

/// One problem instance: the Galois setting plus a generating set of B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub label: Option<String>,
    pub p: u64,
    pub l: u32,
    pub field: FieldDesc,
    /// optional explicit primitive p^l-th root of unity, as coefficients
    pub zeta: Option<Vec<u64>>,
    pub generators: Vec<String>,
    pub seed: Option<u64>,
}

fn strip_comment(line: &str) -> &str {
    let mut in_string = false;
    for (i, ch) in line.char_indices() {
        match ch {
            '"' => in_string = !in_string,
            '#' if !in_string => return &line[..i],
            _ => {}
        }
    }
    line
}

fn parse_string_list(line_no: usize, v: &str) -> Result<Vec<String>> {
    let err = |msg: &str| Error::parse(line_no, 1, msg);
    let body = v
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| err("expected a [\"...\"] list"))?;
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        rest = rest
            .strip_prefix('"')
            .ok_or_else(|| err("expected a quoted string"))?;
        let end = rest.find('"').ok_or_else(|| err("unterminated string"))?;
        out.push(rest[..end].to_string());
        rest = rest[end + 1..].trim();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim();
        } else if !rest.is_empty() {
            return Err(err("expected ',' between strings"));
        }
    }
    Ok(out)
}

fn parse_element_literal(line_no: usize, v: &str) -> Result<Vec<u64>> {
    let v = v.trim();
    if let Some(body) = v.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        body.split(',')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::parse(line_no, 1, "element coefficients must be integers"))
            })
            .collect()
    } else {
        let n: u64 = v
            .parse()
            .map_err(|_| Error::parse(line_no, 1, "element must be an integer or [c0,c1,...]"))?;
        Ok(vec![n])
    }
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<InstanceFile> {
        let mut p = None;
        let mut l = None;
        let mut field = None;
        let mut zeta = None;
        let mut generators = None;
        let mut seed = None;
        let mut label = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, 1, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            // generators opens a bracket that may already be closed inline
            match key {
                "p" => {
                    p = Some(value.parse::<u64>().map_err(|_| {
                        Error::parse(line_no, 1, "p must be a positive integer")
                    })?)
                }
                "l" => {
                    l = Some(value.parse::<u32>().map_err(|_| {
                        Error::parse(line_no, 1, "l must be a positive integer")
                    })?)
                }
                "field" => {
                    field = Some(FieldDesc::parse(value).map_err(|e| match e {
                        Error::Domain(msg) => Error::parse(line_no, 1, msg),
                        other => other,
                    })?)
                }
                "zeta" => zeta = Some(parse_element_literal(line_no, value)?),
                "generators" => generators = Some(parse_string_list(line_no, value)?),
                "seed" => {
                    seed = Some(value.parse::<u64>().map_err(|_| {
                        Error::parse(line_no, 1, "seed must be a nonnegative integer")
                    })?)
                }
                "label" => label = Some(value.to_string()),
                other => {
                    return Err(Error::parse(
                        line_no,
                        1,
                        format!("unknown key {other:?}"),
                    ))
                }
            }
        }
        let missing = |what: &str| Error::parse(1, 1, format!("missing required key {what:?}"));
        Ok(InstanceFile {
            label,
            p: p.ok_or_else(|| missing("p"))?,
            l: l.ok_or_else(|| missing("l"))?,
            field: field.ok_or_else(|| missing("field"))?,
            zeta,
            generators: generators.ok_or_else(|| missing("generators"))?,
            seed,
        })
    }

    /// Canonical text form; `parse(print(i)) == i`.
    pub fn print(&self) -> String {
        let mut out = String::new();
        if let Some(label) = &self.label {
            out.push_str(&format!("label = {label}\n"));
        }
        out.push_str(&format!("p = {}\n", self.p));
        out.push_str(&format!("l = {}\n", self.l));
        out.push_str(&format!("field = {}\n", self.field.render()));
        if let Some(z) = &self.zeta {
            if z.len() == 1 {
                out.push_str(&format!("zeta = {}\n", z[0]));
            } else {
                let list: Vec<String> = z.iter().map(|c| c.to_string()).collect();
                out.push_str(&format!("zeta = [{}]\n", list.join(",")));
            }
        }
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{g:?}")).collect();
        out.push_str(&format!("generators = [{}]\n", gens.join(", ")));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed = {seed}\n"));
        }
        out
    }

    /// Validate into a Galois context plus parsed generators.
    pub fn to_context(&self) -> Result<(GaloisContext, Vec<FactoredElement>)> {
        let spec = self.field.to_spec()?;
        let ctx = match &self.zeta {
            None => GaloisContext::new(self.p, self.l, spec)?,
            Some(cs) => {
                let z = spec.from_coeffs(cs)?;
                GaloisContext::with_zeta(self.p, self.l, spec, z)?
            }
        };
        let gens = self
            .generators
            .iter()
            .map(|g| parse_ratfunc(ctx.field(), g))
            .collect::<Result<Vec<FactoredElement>>>()?;
        Ok((ctx, gens))
    }
}
