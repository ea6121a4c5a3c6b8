//! Line-oriented text formats for families and block programs.
//!
//! ```text
//! colorful d n m norm          # norm is l1 or linf
//! <n blocks of m lines with d rationals>
//!
//! fourblock s0 s t0 t n delta
//! A0 / B i / A i / C i         # matrix sections, one row per line
//! b / cx / cy / ux / uy        # one line each; bounds may be `inf`
//! kernel                       # optional: a kernel point (x, y)
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::blockip::{Block, FourBlockInstance, KernelPoint};
use crate::colorful::ColoredFamily;
use crate::error::{Error, Result};
use crate::exact::{fmt_rat, parse_rat, NormSpec, Rat, RatMat, RatVec};

struct Token<'a> {
    col: usize,
    text: &'a str,
}

struct Line<'a> {
    no: usize,
    tokens: Vec<Token<'a>>,
}

fn tokenize(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token { col: body[..s].chars().count() + 1, text: &body[s..pos] });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line { no: i + 1, tokens });
        }
    }
    out
}

fn rat(tok: &Token, line: usize) -> Result<Rat> {
    parse_rat(tok.text).ok_or_else(|| Error::parse(line, tok.col, format!("`{}` is not a rational number", tok.text)))
}

fn count(tok: &Token, line: usize) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| Error::parse(line, tok.col, format!("`{}` is not a nonnegative integer", tok.text)))
}

fn row(line: &Line, width: usize) -> Result<Vec<Rat>> {
    if line.tokens.len() != width {
        let col = line.tokens.get(width).map_or(line.tokens.last().map_or(1, |t| t.col), |t| t.col);
        return Err(Error::parse(line.no, col, format!("expected {} entries, found {}", width, line.tokens.len())));
    }
    line.tokens.iter().map(|t| rat(t, line.no)).collect()
}

fn end_of(lines: &[Line]) -> usize {
    lines.last().map_or(1, |l| l.no + 1)
}

fn header<'a>(lines: &'a [Line<'a>], keyword: &str, fields: usize) -> Result<&'a Line<'a>> {
    let first = lines.first().ok_or_else(|| Error::parse(1, 1, format!("empty input, expected `{}` header", keyword)))?;
    if first.tokens[0].text != keyword {
        return Err(Error::parse(first.no, first.tokens[0].col, format!("expected `{}` header", keyword)));
    }
    if first.tokens.len() != fields + 1 {
        return Err(Error::parse(first.no, 1, format!("`{}` header needs {} fields", keyword, fields)));
    }
    Ok(first)
}

pub fn parse_norm(s: &str) -> Option<NormSpec> {
    match s {
        "l1" => Some(NormSpec::L1),
        "linf" => Some(NormSpec::Linf),
        _ => None,
    }
}

pub fn norm_keyword(n: &NormSpec) -> &'static str {
    match n {
        NormSpec::L1 => "l1",
        _ => "linf",
    }
}

pub fn read_family(src: &str) -> Result<ColoredFamily> {
    let lines = tokenize(src);
    let h = header(&lines, "colorful", 4)?;
    let d = count(&h.tokens[1], h.no)?;
    let n = count(&h.tokens[2], h.no)?;
    let m = count(&h.tokens[3], h.no)?;
    let norm = parse_norm(h.tokens[4].text)
        .ok_or_else(|| Error::parse(h.no, h.tokens[4].col, format!("unknown norm `{}` (use l1 or linf)", h.tokens[4].text)))?;
    let body = &lines[1..];
    if body.len() != n * m {
        let at = body.get(n * m).map_or(end_of(&lines), |l| l.no);
        return Err(Error::parse(at, 1, format!("expected {} vector lines, found {}", n * m, body.len())));
    }
    let mut vectors = Vec::with_capacity(n);
    for j in 0..n {
        let color = body[j * m..(j + 1) * m]
            .iter()
            .map(|l| row(l, d).map(RatVec))
            .collect::<Result<Vec<_>>>()?;
        vectors.push(color);
    }
    ColoredFamily::new(d, vectors, norm)
}

pub fn write_family(fam: &ColoredFamily) -> String {
    let mut out = format!("colorful {} {} {} {}\n", fam.d, fam.n, fam.m, norm_keyword(&fam.norm));
    for (j, color) in fam.vectors.iter().enumerate() {
        let _ = writeln!(out, "# color {}", j + 1);
        for v in color {
            let _ = writeln!(out, "{}", v);
        }
    }
    out
}

/// A block program with an optional kernel point.
#[derive(Clone, Debug, PartialEq)]
pub struct FourBlockFile {
    pub instance: FourBlockInstance,
    pub kernel: Option<KernelPoint>,
}

fn section_name(line: &Line) -> Option<String> {
    let first = line.tokens[0].text;
    match first {
        "A0" | "b" | "cx" | "cy" | "ux" | "uy" | "kernel" if line.tokens.len() == 1 => Some(first.to_string()),
        "A" | "B" | "C" if line.tokens.len() == 2 => Some(format!("{} {}", first, line.tokens[1].text)),
        _ => None,
    }
}

pub fn read_four_block(src: &str) -> Result<FourBlockFile> {
    let lines = tokenize(src);
    let h = header(&lines, "fourblock", 6)?;
    let dims: Vec<usize> = h.tokens[1..6].iter().map(|t| count(t, h.no)).collect::<Result<_>>()?;
    let (s0, s, t0, t, n) = (dims[0], dims[1], dims[2], dims[3], dims[4]);
    let delta_tok = &h.tokens[6];
    let delta = rat(delta_tok, h.no)?;

    let mut sections: HashMap<String, (usize, Vec<&Line>)> = HashMap::new();
    let mut current: Option<String> = None;
    for line in &lines[1..] {
        if let Some(name) = section_name(line) {
            if sections.contains_key(&name) {
                return Err(Error::parse(line.no, 1, format!("section `{}` appears twice", name)));
            }
            sections.insert(name.clone(), (line.no, Vec::new()));
            current = Some(name);
        } else if let Some(name) = &current {
            sections.get_mut(name).expect("open section").1.push(line);
        } else {
            return Err(Error::parse(line.no, 1, "data before the first section"));
        }
    }
    let eof = end_of(&lines);
    let missing = |name: &str| Error::parse(eof, 1, format!("missing section `{}`", name));
    let matrix = |name: &str, rows: usize, cols: usize| -> Result<RatMat> {
        let (at, body) = sections
            .get(name)
            .ok_or_else(|| missing(name))?;
        if body.len() != rows {
            return Err(Error::parse(*at, 1, format!("section `{}` needs {} rows, found {}", name, rows, body.len())));
        }
        let data = body.iter().map(|l| row(l, cols)).collect::<Result<Vec<_>>>()?;
        RatMat::from_rows(cols, &data)
    };
    let vector = |name: &str, len: usize| -> Result<Option<(usize, Vec<(usize, &Token)>)>> {
        let Some((at, body)) = sections.get(name) else { return Ok(None) };
        let toks: Vec<(usize, &Token)> = body.iter().flat_map(|l| l.tokens.iter().map(move |t| (l.no, t))).collect();
        if toks.len() != len {
            return Err(Error::parse(*at, 1, format!("section `{}` needs {} entries, found {}", name, len, toks.len())));
        }
        Ok(Some((*at, toks)))
    };
    let required = |name: &str, len: usize| -> Result<RatVec> {
        let (_, toks) = vector(name, len)?.ok_or_else(|| missing(name))?;
        toks.iter().map(|(no, t)| rat(t, *no)).collect()
    };
    let bounds = |name: &str, len: usize| -> Result<Vec<Option<Rat>>> {
        let (_, toks) = vector(name, len)?.ok_or_else(|| missing(name))?;
        toks.iter()
            .map(|(no, t)| if t.text == "inf" { Ok(None) } else { rat(t, *no).map(Some) })
            .collect()
    };

    let a0 = matrix("A0", s0, t0)?;
    let mut blocks = Vec::with_capacity(n);
    for i in 1..=n {
        blocks.push(Block {
            b: matrix(&format!("B {}", i), s, t0)?,
            a: matrix(&format!("A {}", i), s, t)?,
            c: matrix(&format!("C {}", i), s0, t)?,
        });
    }
    let b = required("b", s0 + n * s)?;
    let cx = required("cx", t0)?;
    let cy = required("cy", n * t)?;
    let ux = bounds("ux", t0)?;
    let uy = bounds("uy", n * t)?;
    let instance = FourBlockInstance::new(s0, t0, a0, blocks, b, cx, cy, ux, uy)?;
    if instance.delta_rat() != delta {
        return Err(Error::parse(h.no, delta_tok.col, format!("delta is {}, header says {}", instance.delta, delta_tok.text)));
    }
    let kernel = match vector("kernel", t0 + n * t)? {
        None => None,
        Some((at, toks)) => {
            let z: Vec<Rat> = toks.iter().map(|(no, t)| rat(t, *no)).collect::<Result<_>>()?;
            let pt = KernelPoint { x: RatVec(z[..t0].to_vec()), y: RatVec(z[t0..].to_vec()) };
            if !instance.in_kernel(&pt) {
                return Err(Error::parse(at, 1, "section `kernel` is not in the kernel of H"));
            }
            Some(pt)
        }
    };
    Ok(FourBlockFile { instance, kernel })
}

fn write_matrix(out: &mut String, name: &str, m: &RatMat) {
    let _ = writeln!(out, "{}", name);
    for r in 0..m.rows() {
        let _ = writeln!(out, "{}", m.row(r).iter().map(fmt_rat).collect::<Vec<_>>().join(" "));
    }
}

fn write_bounds(out: &mut String, name: &str, u: &[Option<Rat>]) {
    let _ = writeln!(out, "{}", name);
    let _ = writeln!(out, "{}", u.iter().map(|v| v.as_ref().map_or("inf".to_string(), fmt_rat)).collect::<Vec<_>>().join(" "));
}

/// Writes a uniform instance; the lifted (non-uniform) form has no file format.
pub fn write_four_block(file: &FourBlockFile) -> Result<String> {
    let inst = &file.instance;
    if !inst.is_uniform() {
        return Err(Error::InvalidInput("only instances with equal block shapes can be written".into()));
    }
    let mut out = format!("fourblock {} {} {} {} {} {}\n", inst.s0, inst.s(), inst.t0, inst.t(), inst.n(), inst.delta);
    write_matrix(&mut out, "A0", &inst.a0);
    for (i, bl) in inst.blocks.iter().enumerate() {
        write_matrix(&mut out, &format!("B {}", i + 1), &bl.b);
        write_matrix(&mut out, &format!("A {}", i + 1), &bl.a);
        write_matrix(&mut out, &format!("C {}", i + 1), &bl.c);
    }
    let _ = writeln!(out, "b\n{}", inst.b);
    let _ = writeln!(out, "cx\n{}", inst.cx);
    let _ = writeln!(out, "cy\n{}", inst.cy);
    write_bounds(&mut out, "ux", &inst.ux);
    write_bounds(&mut out, "uy", &inst.uy);
    if let Some(k) = &file.kernel {
        let _ = writeln!(out, "kernel\n{}", k.concat());
    }
    Ok(out)
}

/// Reads either format, deciding by the header keyword.
pub enum AnyInstance {
    Family(ColoredFamily),
    FourBlock(FourBlockFile),
}

pub fn read_any(src: &str) -> Result<AnyInstance> {
    let lines = tokenize(src);
    match lines.first().map(|l| l.tokens[0].text) {
        Some("colorful") => read_family(src).map(AnyInstance::Family),
        Some("fourblock") => read_four_block(src).map(AnyInstance::FourBlock),
        Some(_) => {
            let l = &lines[0];
            Err(Error::parse(l.no, l.tokens[0].col, "expected a `colorful` or `fourblock` header"))
        }
        None => Err(Error::parse(1, 1, "empty input")),
    }
}
