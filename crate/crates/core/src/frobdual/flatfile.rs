//! Text format for flat-coordinate maps.
//!
//! ```text
//! flatmap E 6 12
//! t1 = u^2*W1
//! t2 = u^4*W1^2 - 6*u^4*W2 - 12*u^4*W5
//! t7 = 1/12*x7
//! ```
//! The optional third header field is the root order `N` with `e^{x_{l+1}} = u^N`; it
//! defaults to that of the standard marked pair.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{parse_rational, to_plain, to_pq, Rational};
use crate::invariants::{FlatMap, FlatTerm};
use crate::rootsys::{parse_family, MarkedPair};

fn split_terms(expr: &str) -> Vec<String> {
    let chars: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        let boundary = (c == '+' || c == '-') && i > 0 && !matches!(chars[i - 1], '^' | '*' | '/');
        if boundary {
            out.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn parse_term(term: &str, rank: usize) -> std::result::Result<FlatTerm, String> {
    let (neg, body) = match term.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    let mut coef = Rational::one();
    let mut u_pow = 0i64;
    let mut w_pows = vec![0u32; rank];
    for factor in body.split('*') {
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (factor, None),
        };
        if base == "u" {
            u_pow += exp.map_or(Ok(1), str::parse::<i64>).map_err(|_| format!("bad power in `{factor}`"))?;
        } else if let Some(idx) = base.strip_prefix('W') {
            let i: usize = idx.parse().map_err(|_| format!("bad character `{base}`"))?;
            if i == 0 || i > rank {
                return Err(format!("character index out of range in `{factor}`"));
            }
            w_pows[i - 1] += exp.map_or(Ok(1), str::parse::<u32>).map_err(|_| format!("bad power in `{factor}`"))?;
        } else if exp.is_none() {
            coef *= parse_rational(factor).map_err(|_| format!("bad factor `{factor}`"))?;
        } else {
            return Err(format!("bad factor `{factor}`"));
        }
    }
    if neg {
        coef = -coef;
    }
    Ok(FlatTerm { coef, u_pow, w_pows })
}

pub fn parse_flatmap(text: &str) -> Result<FlatMap> {
    let mut header: Option<(crate::rootsys::Family, usize, u64)> = None;
    let mut coords: Vec<Option<Vec<FlatTerm>>> = Vec::new();
    let mut last_scale: Option<Rational> = None;
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let Some((_, rank, _)) = header else {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if !(3..=4).contains(&toks.len()) || toks[0] != "flatmap" {
                return Err(err("expected header `flatmap <family> <rank> [N]`".into()));
            }
            let rank: usize = toks[2].parse().map_err(|_| err(format!("bad rank `{}`", toks[2])))?;
            let family = match parse_family(toks[1]) {
                Ok((f, r)) if r.is_none() || r == Some(rank) => f,
                _ => return Err(err(format!("bad family `{}`", toks[1]))),
            };
            let n = match toks.get(3) {
                Some(t) => t.parse().map_err(|_| err(format!("bad root order `{t}`")))?,
                None => MarkedPair::standard(family, rank).map_err(|e| err(e.to_string()))?.root_order(),
            };
            header = Some((family, rank, n));
            coords = vec![None; rank];
            continue;
        };
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("missing `=`".into()))?;
        let a: usize = lhs
            .trim()
            .strip_prefix('t')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(format!("bad coordinate `{}`", lhs.trim())))?;
        if a == rank + 1 {
            let rhs: String = rhs.chars().filter(|c| !c.is_whitespace()).collect();
            let xname = format!("x{}", rank + 1);
            let c = if rhs == xname {
                Rational::one()
            } else {
                let c = rhs.strip_suffix(&format!("*{xname}")).ok_or_else(|| err(format!("expected `c*{xname}`")))?;
                parse_rational(c).map_err(|_| err(format!("bad coefficient `{c}`")))?
            };
            last_scale = Some(c);
            continue;
        }
        if a == 0 || a > rank {
            return Err(err(format!("coordinate t{a} out of range")));
        }
        let terms = split_terms(rhs).iter().map(|t| parse_term(t, rank).map_err(&err)).collect::<Result<Vec<_>>>()?;
        coords[a - 1] = Some(terms);
    }
    let (family, rank, root_order) =
        header.ok_or_else(|| Error::Parse { line: 0, msg: "empty flat-map file".into() })?;
    let coords = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| Error::Parse { line: 0, msg: format!("missing coordinate t{}", i + 1) }))
        .collect::<Result<Vec<_>>>()?;
    let last_scale =
        last_scale.ok_or_else(|| Error::Parse { line: 0, msg: format!("missing coordinate t{}", rank + 1) })?;
    Ok(FlatMap { family, rank, root_order, coords, last_scale })
}

fn render_term(t: &FlatTerm, first: bool, out: &mut String) {
    let mut factors = Vec::new();
    let mag = t.coef.abs();
    if !mag.is_one() {
        factors.push(to_plain(&mag));
    }
    if t.u_pow != 0 {
        factors.push(if t.u_pow == 1 { "u".into() } else { format!("u^{}", t.u_pow) });
    }
    for (i, &p) in t.w_pows.iter().enumerate() {
        if p > 0 {
            factors.push(if p == 1 { format!("W{}", i + 1) } else { format!("W{}^{}", i + 1, p) });
        }
    }
    if factors.is_empty() {
        factors.push("1".into());
    }
    let neg = t.coef < Rational::zero();
    match (first, neg) {
        (true, true) => out.push('-'),
        (true, false) => {}
        (false, true) => out.push_str(" - "),
        (false, false) => out.push_str(" + "),
    }
    out.push_str(&factors.join("*"));
}

pub fn serialize_flatmap(fm: &FlatMap) -> String {
    let mut s = format!("flatmap {} {} {}\n", fm.family, fm.rank, fm.root_order);
    for (a, terms) in fm.coords.iter().enumerate() {
        let mut line = String::new();
        for (i, t) in terms.iter().enumerate() {
            render_term(t, i == 0, &mut line);
        }
        if terms.is_empty() {
            line.push('0');
        }
        let _ = writeln!(s, "t{} = {}", a + 1, line);
    }
    let _ = writeln!(s, "t{} = {}*x{}", fm.rank + 1, to_pq(&fm.last_scale), fm.rank + 1);
    s
}
