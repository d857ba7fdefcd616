//! Canonical text rendering and parsing: polynomials like
//! "z^2 - 1/2*x^3*z @ 1", order specifiers like "grlex:x>y>z", and the
//! line-oriented code file format shared with the command line tool.

use crate::codes::FamilyCode;
use crate::error::{Error, Result};
use crate::order::MonomialOrder;
use crate::poly::{Ambient, MonVec, PolyVec, Rat};
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

pub fn render_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render_mono_vars(m: &MonVec, amb: &Ambient) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, e) in m.exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(amb.vars[i].clone()),
            _ => parts.push(format!("{}^{}", amb.vars[i], e)),
        }
    }
    parts.join("*")
}

pub fn render_monvec(m: &MonVec, amb: &Arc<Ambient>) -> String {
    let vars = render_mono_vars(m, amb);
    let vars = if vars.is_empty() { "1".to_string() } else { vars };
    if amb.comps > 1 {
        format!("{} @ {}", vars, m.comp + 1)
    } else {
        vars
    }
}

fn render_terms(terms: &[(&MonVec, &Rat)], amb: &Ambient) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -(*c).clone() } else { (*c).clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let vars = render_mono_vars(m, amb);
        if vars.is_empty() {
            out.push_str(&render_rat(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&render_rat(&abs));
                out.push('*');
            }
            out.push_str(&vars);
        }
        if amb.comps > 1 {
            out.push_str(&format!(" @ {}", m.comp + 1));
        }
    }
    out
}

/// Terms sorted descending by the order (canonical exponent order if none).
pub fn render_poly(p: &PolyVec, ord: Option<&MonomialOrder>) -> String {
    let mut terms: Vec<(&MonVec, &Rat)> = p.iter().collect();
    match ord {
        // display leads with the distinguished (initial) term, which the
        // comparator ranks smallest
        Some(o) => terms.sort_by(|(a, _), (b, _)| o.compare(a, b)),
        None => terms.sort_by(|(a, _), (b, _)| b.cmp(a)),
    }
    render_terms(&terms, &p.amb)
}

/// Terms sorted ascending by total degree (series convention).
pub fn render_series(p: &PolyVec) -> String {
    let mut terms: Vec<(&MonVec, &Rat)> = p.iter().collect();
    terms.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.cmp(b)));
    render_terms(&terms, &p.amb)
}

// --- parsing ---

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Plus,
    Minus,
    Star,
    Caret,
    At,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '+' => {
                it.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                it.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                it.next();
                toks.push(Tok::Star);
            }
            '^' => {
                it.next();
                toks.push(Tok::Caret);
            }
            '@' => {
                it.next();
                toks.push(Tok::At);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() || d == '/' {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Num(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(n));
            }
            _ => return Err(Error::Parse(format!("unexpected character '{c}'"))),
        }
    }
    Ok(toks)
}

fn parse_rat(s: &str) -> Result<Rat> {
    let mk = |t: &str| -> Result<num_bigint::BigInt> {
        t.parse().map_err(|_| Error::Parse(format!("bad number '{t}'")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = mk(d)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Rat::new(mk(n)?, d))
        }
        None => Ok(Rat::from_integer(mk(s)?)),
    }
}

/// Parse a polynomial vector; "@ c" after a term places it in component c
/// (1-based, default 1).
pub fn parse_poly(s: &str, amb: &Arc<Ambient>) -> Result<PolyVec> {
    let toks = tokenize(s)?;
    let mut p = PolyVec::zero(amb);
    let mut i = 0usize;
    let mut sign = Rat::one();
    let mut first = true;
    while i < toks.len() {
        if !first {
            match toks[i] {
                Tok::Plus => sign = Rat::one(),
                Tok::Minus => sign = -Rat::one(),
                _ => return Err(Error::Parse("expected '+' or '-' between terms".into())),
            }
            i += 1;
        } else if toks[i] == Tok::Minus {
            sign = -Rat::one();
            i += 1;
        }
        first = false;
        // one term: factors joined by '*', optional '@ c'
        let mut coef = sign.clone();
        let mut exps = vec![0u32; amb.nvars()];
        let mut comp = 0usize;
        loop {
            match toks.get(i) {
                Some(Tok::Num(n)) => {
                    coef *= parse_rat(n)?;
                    i += 1;
                }
                Some(Tok::Ident(v)) => {
                    let vi = amb
                        .var_index(v)
                        .ok_or_else(|| Error::Parse(format!("unknown variable '{v}'")))?;
                    let mut e = 1u32;
                    i += 1;
                    if toks.get(i) == Some(&Tok::Caret) {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Num(n)) => {
                                e = n
                                    .parse()
                                    .map_err(|_| Error::Parse(format!("bad exponent '{n}'")))?;
                                i += 1;
                            }
                            _ => return Err(Error::Parse("expected exponent after '^'".into())),
                        }
                    }
                    exps[vi] += e;
                }
                _ => return Err(Error::Parse("expected a factor".into())),
            }
            if toks.get(i) == Some(&Tok::Star) {
                i += 1;
                continue;
            }
            break;
        }
        if toks.get(i) == Some(&Tok::At) {
            i += 1;
            match toks.get(i) {
                Some(Tok::Num(n)) => {
                    let c: usize =
                        n.parse().map_err(|_| Error::Parse(format!("bad component '{n}'")))?;
                    if c == 0 || c > amb.comps {
                        return Err(Error::Parse(format!("component {c} out of range")));
                    }
                    comp = c - 1;
                    i += 1;
                }
                _ => return Err(Error::Parse("expected component after '@'".into())),
            }
        }
        p.add_term(MonVec { exps, comp }, coef);
        sign = Rat::one();
    }
    Ok(p)
}

/// "lex:x>y>z", "grlex:x>y>z", "extend(grlex:x>y>z; t1,t2)"
pub fn parse_order(s: &str, amb: &Arc<Ambient>) -> Result<MonomialOrder> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("extend(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse("missing ')' in extend(...)".into()))?;
        let (base, ext) = inner
            .split_once(';')
            .ok_or_else(|| Error::Parse("extend(...) needs ';'".into()))?;
        let base = parse_order(base, amb)?;
        let ext: Result<Vec<usize>> = ext
            .split(',')
            .map(|v| {
                let v = v.trim();
                amb.var_index(v).ok_or_else(|| Error::Parse(format!("unknown variable '{v}'")))
            })
            .collect();
        return Ok(crate::order::extend_order(&base, &ext?));
    }
    let (kind, vars) = s
        .split_once(':')
        .ok_or_else(|| Error::Parse("order spec needs 'kind:vars'".into()))?;
    let prec: Result<Vec<usize>> = vars
        .split('>')
        .map(|v| {
            let v = v.trim();
            amb.var_index(v).ok_or_else(|| Error::Parse(format!("unknown variable '{v}'")))
        })
        .collect();
    let prec = prec?;
    match kind.trim() {
        "lex" => Ok(MonomialOrder::Lex { prec }),
        "grlex" => Ok(MonomialOrder::GrLex { prec }),
        other => Err(Error::InvalidOrder(format!("unknown order kind '{other}'"))),
    }
}

/// One monomial vector per line, "x^4*z @ 1".
pub fn parse_module(src: &str, amb: &Arc<Ambient>) -> Result<Vec<MonVec>> {
    let mut out = Vec::new();
    for (no, line) in src.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let p = parse_poly(line, amb)
            .map_err(|e| Error::Parse(format!("line {}: {e}", no + 1)))?;
        let mut terms = p.iter();
        let (m, c) = terms
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: empty monomial", no + 1)))?;
        if terms.next().is_some() || !c.is_one() {
            return Err(Error::Parse(format!("line {}: expected a single monomial", no + 1)));
        }
        out.push(m.clone());
    }
    Ok(out)
}

/// Raw content of a code file; `build_family` turns it into a family code.
#[derive(Debug, Clone, Default)]
pub struct CodeFile {
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub comps: Option<usize>,
    pub order: Option<String>,
    pub mother: Vec<String>,
    pub fathers: Vec<String>,
    pub dividends: Vec<String>,
}

pub fn parse_code_file(src: &str) -> Result<CodeFile> {
    let mut cf = CodeFile::default();
    for (no, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("line {}: expected 'key: value'", no + 1)))?;
        let key = key.trim();
        let val = val.trim().to_string();
        match key {
            "vars" => cf.vars = val.split_whitespace().map(|v| v.to_string()).collect(),
            "params" => cf.params = val.split_whitespace().map(|v| v.to_string()).collect(),
            "comps" => {
                cf.comps = Some(
                    val.parse()
                        .map_err(|_| Error::Parse(format!("line {}: bad comps", no + 1)))?,
                )
            }
            "order" => cf.order = Some(val),
            "mother" => cf.mother.push(val),
            "dividend" => cf.dividends.push(val),
            k if k.starts_with("father") => cf.fathers.push(val),
            _ => return Err(Error::Parse(format!("line {}: unknown key '{key}'", no + 1))),
        }
    }
    if cf.vars.is_empty() {
        return Err(Error::Parse("missing 'vars:' line".into()));
    }
    Ok(cf)
}

fn max_comp(src: &str) -> usize {
    // crude scan for "@ k" tags to size the ambient before real parsing
    let mut best = 1usize;
    let mut it = src.split('@');
    it.next();
    for rest in it {
        if let Some(tok) = rest.trim_start().split(|c: char| !c.is_ascii_digit()).next() {
            if let Ok(k) = tok.parse::<usize>() {
                best = best.max(k);
            }
        }
    }
    best
}

impl CodeFile {
    pub fn ambient(&self) -> Arc<Ambient> {
        let comps = self.comps.unwrap_or_else(|| {
            self.fathers
                .iter()
                .chain(&self.dividends)
                .map(|f| max_comp(f))
                .max()
                .unwrap_or(1)
        });
        let mut vars = self.vars.clone();
        vars.extend(self.params.iter().cloned());
        Ambient::new(vars, comps)
    }

    pub fn family(&self, order_flag: Option<&str>) -> Result<FamilyCode> {
        let amb = self.ambient();
        let n = self.vars.len();
        let xamb = Ambient::new(self.vars.clone(), 1);
        let eta = match order_flag.or(self.order.as_deref()) {
            Some(spec) => parse_order(spec, &xamb)?,
            None => MonomialOrder::GrLex { prec: (0..n).collect() },
        };
        let samb = Ambient::scalar(amb.vars.clone());
        let mother: Result<Vec<PolyVec>> =
            self.mother.iter().map(|m| parse_poly(m, &samb)).collect();
        let fathers: Result<Vec<PolyVec>> =
            self.fathers.iter().map(|f| parse_poly(f, &amb)).collect();
        FamilyCode::new(amb, n, eta, mother?, fathers?)
    }

    pub fn dividend_polys(&self) -> Result<Vec<PolyVec>> {
        let amb = self.ambient();
        self.dividends.iter().map(|f| parse_poly(f, &amb)).collect()
    }
}
