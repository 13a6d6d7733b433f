//! The line-oriented CMR text format.
//!
//! ```text
//! # third Veronese
//! field 32003
//! ring w x y z
//! order grevlex
//! ideal
//! x^2 - w*y
//! y^2 - x*z
//! x*y - w*z
//! end
//! module M twists 0,0
//! [ x , -y ]
//! end
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::groebner::{QuotientRing, Ring};
use crate::polyring::{
    FreeModule, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, Vector,
    DEFAULT_CHARACTERISTIC,
};
use crate::resolution::PresentedModule;

#[derive(Clone, Debug)]
pub struct ModuleBlock {
    pub name: String,
    pub twists: Vec<i32>,
    /// One relation per row, with one entry per generator.
    pub rows: Vec<Vec<Polynomial>>,
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub poly: PolyRing,
    pub ideal: Vec<Polynomial>,
    pub modules: Vec<ModuleBlock>,
}

impl InputDocument {
    pub fn ring(&self) -> Result<Ring> {
        QuotientRing::new(self.poly.clone(), self.ideal.clone())
    }

    pub fn module_block(&self, name: &str) -> Option<&ModuleBlock> {
        self.modules.iter().find(|m| m.name == name)
    }

    /// The named module over `ring`. `R` and `k` denote the ring and its residue field
    /// unless the document defines modules with those names.
    pub fn module(&self, ring: &Ring, name: &str) -> Result<PresentedModule> {
        if let Some(b) = self.module_block(name) {
            let rels = b.rows.iter().map(|row| self.poly.vector(row)).collect();
            return PresentedModule::new(ring, FreeModule::new(b.twists.clone()), rels);
        }
        match name {
            "R" => Ok(PresentedModule::ring_module(ring)),
            "k" => Ok(PresentedModule::residue_field(ring)),
            _ => Err(Error::UnknownModule(name.to_string())),
        }
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse(text: &str) -> Result<InputDocument> {
    let mut field = None;
    let mut vars: Option<Vec<String>> = None;
    let mut order = MonomialOrder::Grevlex;
    let mut poly: Option<PolyRing> = None;
    let mut ideal = Vec::new();
    let mut modules: Vec<ModuleBlock> = Vec::new();
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));

    let ensure_ring = |poly: &mut Option<PolyRing>,
                       field: Option<u64>,
                       vars: &Option<Vec<String>>,
                       order: MonomialOrder,
                       line: usize|
     -> Result<PolyRing> {
        if let Some(p) = poly {
            return Ok(p.clone());
        }
        let vars = vars
            .clone()
            .ok_or_else(|| syntax(line, 1, "`ring` must precede this block"))?;
        let f = PrimeField::new(field.unwrap_or(DEFAULT_CHARACTERISTIC as u64))?;
        let p = PolyRing::new(f, vars, order)?;
        *poly = Some(p.clone());
        Ok(p)
    };

    while let Some((ln, line)) = lines.next() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut words = trimmed.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        let rest: Vec<&str> = words.collect();
        let col_rest = line.find(keyword).unwrap_or(0) + keyword.len() + 2;
        let header_fixed = |what: &str| {
            if poly.is_some() {
                Err(syntax(ln, 1, format!("`{what}` must precede `ideal` and `module`")))
            } else {
                Ok(())
            }
        };
        match keyword {
            "field" => {
                header_fixed("field")?;
                let [p] = rest.as_slice() else {
                    return Err(syntax(ln, col_rest, "expected `field <p>`"));
                };
                let p: u64 = p
                    .parse()
                    .map_err(|_| syntax(ln, col_rest, format!("invalid characteristic `{p}`")))?;
                PrimeField::new(p)?;
                field = Some(p);
            }
            "ring" => {
                header_fixed("ring")?;
                if rest.is_empty() {
                    return Err(syntax(ln, col_rest, "expected variable names"));
                }
                for v in &rest {
                    if !is_identifier(v) {
                        let c = line.find(v).unwrap_or(0) + 1;
                        return Err(syntax(ln, c, format!("invalid variable name `{v}`")));
                    }
                }
                vars = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "order" => {
                header_fixed("order")?;
                order = match rest.as_slice() {
                    ["grevlex"] => MonomialOrder::Grevlex,
                    ["lex"] => MonomialOrder::Lex,
                    _ => return Err(syntax(ln, col_rest, "expected `grevlex` or `lex`")),
                };
            }
            "ideal" => {
                if !rest.is_empty() {
                    return Err(syntax(ln, col_rest, "unexpected text after `ideal`"));
                }
                let p = ensure_ring(&mut poly, field, &vars, order, ln)?;
                let mut closed = false;
                for (ln, line) in lines.by_ref() {
                    let t = line.trim();
                    if t.is_empty() {
                        continue;
                    }
                    if t == "end" {
                        closed = true;
                        break;
                    }
                    let offset = line.find(t).unwrap_or(0);
                    let f = parse_polynomial(&p, t, ln, offset + 1)?;
                    if !f.is_homogeneous() {
                        return Err(Error::Inhomogeneous(format!("line {ln}: {t}")));
                    }
                    ideal.push(f);
                }
                if !closed {
                    return Err(syntax(ln, 1, "`ideal` block is missing `end`"));
                }
            }
            "module" => {
                let p = ensure_ring(&mut poly, field, &vars, order, ln)?;
                let (name, twists) = parse_module_header(&rest, ln, col_rest)?;
                if modules.iter().any(|m| m.name == name) {
                    return Err(syntax(ln, col_rest, format!("module `{name}` defined twice")));
                }
                let mut rows = Vec::new();
                let mut closed = false;
                for (ln, line) in lines.by_ref() {
                    let t = line.trim();
                    if t.is_empty() {
                        continue;
                    }
                    if t == "end" {
                        closed = true;
                        break;
                    }
                    let offset = line.find(t).unwrap_or(0);
                    let row = parse_row(&p, t, ln, offset + 1)?;
                    if row.len() != twists.len() {
                        return Err(syntax(
                            ln,
                            offset + 1,
                            format!("row has {} entries, expected {}", row.len(), twists.len()),
                        ));
                    }
                    let v = p.vector(&row);
                    if !v.is_homogeneous(&twists) {
                        return Err(Error::Inhomogeneous(format!("line {ln}: {t}")));
                    }
                    rows.push(row);
                }
                if !closed {
                    return Err(syntax(ln, 1, "`module` block is missing `end`"));
                }
                modules.push(ModuleBlock { name, twists, rows });
            }
            other => {
                let c = line.find(other).unwrap_or(0) + 1;
                return Err(syntax(ln, c, format!("unknown keyword `{other}`")));
            }
        }
    }
    let last = text.lines().count().max(1);
    let poly = ensure_ring(&mut poly, field, &vars, order, last)?;
    Ok(InputDocument {
        poly,
        ideal,
        modules,
    })
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_module_header(rest: &[&str], ln: usize, col: usize) -> Result<(String, Vec<i32>)> {
    let joined = rest.join(" ");
    let mut it = joined.splitn(3, ' ');
    let (Some(name), Some("twists"), Some(list)) = (it.next(), it.next(), it.next()) else {
        return Err(syntax(ln, col, "expected `module <NAME> twists <t1,...,tk>`"));
    };
    if !is_identifier(name) {
        return Err(syntax(ln, col, format!("invalid module name `{name}`")));
    }
    let twists = list
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| syntax(ln, col, format!("invalid twist `{}`", t.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((name.to_string(), twists))
}

fn parse_row(p: &PolyRing, text: &str, ln: usize, col: usize) -> Result<Vec<Polynomial>> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| syntax(ln, col, "relation rows are written `[ p1 , ... , pk ]`"))?;
    let mut out = Vec::new();
    let mut offset = col + 1;
    for entry in inner.split(',') {
        let lead = entry.len() - entry.trim_start().len();
        out.push(parse_polynomial(p, entry.trim(), ln, offset + lead)?);
        offset += entry.len() + 1;
    }
    Ok(out)
}

/// Parses `c*x^a*y^b - ...` with integer coefficients; `col` is the column of `text`.
pub fn parse_polynomial(p: &PolyRing, text: &str, ln: usize, col: usize) -> Result<Polynomial> {
    let bytes = text.as_bytes();
    let n = p.nvars();
    let modulus = p.field().modulus() as i128;
    let mut terms: Vec<(i64, Monomial)> = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(syntax(ln, col, "expected a polynomial"));
    }
    let mut first = true;
    while i < bytes.len() {
        let mut sign: i128 = 1;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
            skip_ws(&mut i);
        } else if !first {
            return Err(syntax(ln, col + i, "expected `+` or `-`"));
        }
        first = false;
        let mut coef: i128 = 1;
        let mut exps = vec![0u32; n];
        loop {
            skip_ws(&mut i);
            let start = i;
            if i < bytes.len() && bytes[i].is_ascii_digit() {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let c: i128 = text[start..i]
                    .parse()
                    .map_err(|_| syntax(ln, col + start, "coefficient too large"))?;
                coef = coef * (c % modulus) % modulus;
            } else if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &text[start..i];
                let v = p.var_index(name).ok_or_else(|| Error::UnknownVariable {
                    line: ln,
                    name: name.to_string(),
                })?;
                skip_ws(&mut i);
                let mut e = 1u32;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    skip_ws(&mut i);
                    let s = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    e = text[s..i]
                        .parse()
                        .map_err(|_| syntax(ln, col + s, "expected an exponent"))?;
                }
                exps[v] += e;
            } else {
                return Err(syntax(ln, col + start, "expected a coefficient or variable"));
            }
            skip_ws(&mut i);
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                continue;
            }
            break;
        }
        let c = (sign * coef).rem_euclid(modulus) as i64;
        terms.push((c, Monomial::from_exponents(&exps)?));
        skip_ws(&mut i);
    }
    Ok(p.from_terms(terms))
}

/// Canonical rendering; `parse(&print(d))` reproduces `d`.
pub fn print(doc: &InputDocument) -> String {
    let p = &doc.poly;
    let mut s = String::new();
    let _ = writeln!(s, "field {}", p.field().modulus());
    let _ = writeln!(s, "ring {}", p.var_names().join(" "));
    let _ = writeln!(s, "order {}", p.order().name());
    s.push_str("ideal\n");
    for f in &doc.ideal {
        let _ = writeln!(s, "{}", p.format(f));
    }
    s.push_str("end\n");
    for m in &doc.modules {
        let tw: Vec<String> = m.twists.iter().map(|t| t.to_string()).collect();
        let _ = writeln!(s, "module {} twists {}", m.name, tw.join(","));
        for row in &m.rows {
            let entries: Vec<String> = row.iter().map(|e| p.format(e)).collect();
            let _ = writeln!(s, "[ {} ]", entries.join(" , "));
        }
        s.push_str("end\n");
    }
    s
}

/// A document for `ring` with the given named modules, e.g. for generated instances.
pub fn document(ring: &Ring, modules: &[(&str, &PresentedModule)]) -> InputDocument {
    let p = ring.poly().clone();
    let blocks = modules
        .iter()
        .map(|(name, m)| ModuleBlock {
            name: name.to_string(),
            twists: m.twists().to_vec(),
            rows: m
                .relations()
                .iter()
                .map(|v: &Vector| (0..m.rank()).map(|j| p.component(v, j)).collect())
                .collect(),
        })
        .collect();
    InputDocument {
        ideal: ring.ideal().generators().to_vec(),
        poly: p,
        modules: blocks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const VERONESE: &str = "# Veronese\nfield 32003\nring w x y z\norder grevlex\nideal\nx^2 - w*y\ny^2 - x*z\nx*y - w*z\nend\n";

    #[test]
    fn veronese_document() {
        let d = parse(VERONESE).unwrap();
        assert_eq!(d.poly.nvars(), 4);
        assert_eq!(d.ideal.len(), 3);
        let again = parse(&print(&d)).unwrap();
        assert_eq!(print(&again), print(&d));
    }

    #[test]
    fn empty_ideal_is_polynomial_ring() {
        let d = parse("ring x y\nideal\nend\n").unwrap();
        assert!(d.ring().unwrap().is_polynomial());
        assert_eq!(d.poly.field().modulus(), 32003);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse("ring x y\nideal\nx^2 + y\nend\n"),
            Err(Error::Inhomogeneous(_))
        ));
        assert!(matches!(
            parse("ring x y\nideal\nx*q\nend\n"),
            Err(Error::UnknownVariable { line: 3, .. })
        ));
        assert!(matches!(parse("field 32004\nring x\n"), Err(Error::NotPrime(32004))));
        assert!(matches!(
            parse("ring x y\nideal\nx^2 ++ y^2\nend\n"),
            Err(Error::Syntax { line: 3, column: 6, .. })
        ));
        assert!(matches!(
            parse("ring x y\nideal\nx^2\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn modules_and_coefficients() {
        let text = "field 7\nring x y\nideal\nx*y\nend\nmodule M twists 0,0\n[ 9*y , -x ]\n[ 0 , y ]\nend\n";
        let d = parse(text).unwrap();
        let b = d.module_block("M").unwrap();
        assert_eq!(b.twists, vec![0, 0]);
        assert_eq!(d.poly.format(&b.rows[0][0]), "2*y");
        assert_eq!(d.poly.format(&b.rows[1][0]), "0");
        assert_eq!(print(&parse(&print(&d)).unwrap()), print(&d));
        let ring = d.ring().unwrap();
        assert_eq!(d.module(&ring, "M").unwrap().rank(), 2);
        assert!(matches!(d.module(&ring, "N"), Err(Error::UnknownModule(_))));
        assert!(matches!(
            parse("ring x y\nmodule M twists 0,0\n[ x , y^2 ]\nend\n"),
            Err(Error::Inhomogeneous(_))
        ));
    }
}
