//! Irrep name parsing, the plain, Dynkin and LaTeX renderers, and table generation.
//!
//! Plain output is ASCII: an overbar is written `bar(10)`, primes as `'`,
//! `SO(8)` subscripts as `_s`. Input also accepts `~10`, `10bar` and `′`.

use crate::algebra_core::{AlgebraId, Basis, Label, ProductAlgebra, Vector};
use crate::branching::{decompose_irrep, registered_rules};
use crate::error::{Error, Result};
use crate::irrep_props::{
    congruency_class, dim, dim_name, index_normalization, irrep_by_name, irreps_up_to_dim, normalized_index, DimName,
    Part, ProductIrrep,
};
use crate::rational::Q;
use crate::tensor::{decompose_product, IrrepSum};
use crate::weights::Irrep;
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::fmt::Write;

/// Largest Dynkin digit searched when resolving a dimensional name.
pub const DEFAULT_MAX_DIGIT: i32 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Dynkin,
    Latex,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Format::Plain),
            "dynkin" => Ok(Format::Dynkin),
            "latex" => Ok(Format::Latex),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Parse(format!("unknown format `{s}`"))),
        }
    }
}

/// Parses a dimensional name such as `10`, `bar(175)'`, `~10`, `840'_s`.
pub fn parse_dim_name(text: &str) -> Result<DimName> {
    let bad = || Error::Parse(format!("cannot read irrep name `{text}`"));
    let mut s = text.trim().replace('′', "'");
    let mut subscript = None;
    if let Some((head, sub)) = s.split_once('_') {
        let sub = sub.trim();
        if sub.is_empty() || !sub.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(bad());
        }
        subscript = Some(sub.to_string());
        s = head.to_string();
    }
    let n_primes = s.chars().rev().take_while(|&c| c == '\'').count();
    let mut core = s[..s.len() - n_primes].trim().to_string();
    // Primes may also sit inside the bar: `bar(175')`.
    let mut inner_primes = 0;
    let mut barred = false;
    if let Some(rest) = core.strip_prefix("bar") {
        barred = true;
        let rest = rest.trim();
        core = match rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(inner) => inner.trim().to_string(),
            None => rest.to_string(),
        };
        inner_primes = core.chars().rev().take_while(|&c| c == '\'').count();
        core.truncate(core.len() - inner_primes);
    } else if let Some(rest) = core.strip_prefix('~') {
        barred = true;
        core = rest.trim().to_string();
    } else if let Some(rest) = core.strip_suffix("bar") {
        barred = true;
        core = rest.trim().to_string();
    }
    if core.is_empty() || !core.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let dim: BigUint = core.parse().map_err(|_| bad())?;
    Ok(DimName { dim, n_primes: (n_primes + inner_primes) as u32, barred, subscript })
}

/// Parses an explicit Dynkin label `(a1,a2,...)` or a dimensional name.
pub fn parse_irrep_spec(a: AlgebraId, text: &str) -> Result<Irrep> {
    parse_irrep_spec_with(a, text, DEFAULT_MAX_DIGIT)
}

pub fn parse_irrep_spec_with(a: AlgebraId, text: &str, max_digit: i32) -> Result<Irrep> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('⟨').and_then(|r| r.strip_suffix('⟩')))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')));
    if let Some(inner) = inner {
        let label = parse_digits(inner).ok_or_else(|| Error::Parse(format!("bad Dynkin label `{t}`")))?;
        return Irrep::new(a, &label);
    }
    let name = parse_dim_name(t)?;
    irrep_by_name(a, &name, max_digit)
}

fn parse_digits(s: &str) -> Option<Vec<i32>> {
    if s.contains(',') {
        s.split(',').map(|d| d.trim().parse().ok()).collect()
    } else {
        s.trim().chars().map(|c| c.to_digit(10).map(|d| d as i32)).collect()
    }
}

/// Parses a LaTeX irrep command: `\irrep{8}`, `\irrepbar[1]{175}`, `\irrepsub{8}{s}`.
pub fn parse_latex_name(text: &str) -> Result<DimName> {
    let bad = || Error::Parse(format!("cannot read LaTeX irrep `{text}`"));
    let t = text.trim();
    let (barred, sub, rest) = if let Some(r) = t.strip_prefix("\\irrepbarsub") {
        (true, true, r)
    } else if let Some(r) = t.strip_prefix("\\irrepsub") {
        (false, true, r)
    } else if let Some(r) = t.strip_prefix("\\irrepbar") {
        (true, false, r)
    } else if let Some(r) = t.strip_prefix("\\irrep") {
        (false, false, r)
    } else {
        return Err(bad());
    };
    let mut rest = rest.trim_start();
    let mut n_primes = 0;
    if let Some(r) = rest.strip_prefix('[') {
        let (n, tail) = r.split_once(']').ok_or_else(bad)?;
        n_primes = n.trim().parse().map_err(|_| bad())?;
        rest = tail;
    }
    let mut arg = || -> Result<String> {
        let r = rest.trim_start().strip_prefix('{').ok_or_else(bad)?;
        let (a, tail) = r.split_once('}').ok_or_else(bad)?;
        rest = tail;
        Ok(a.trim().to_string())
    };
    let dim: BigUint = arg()?.parse().map_err(|_| bad())?;
    let subscript = if sub { Some(arg()?) } else { None };
    Ok(DimName { dim, n_primes, barred, subscript })
}

fn fmt_charge(c: &Q) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn digits(l: &[i32], comma: bool) -> String {
    let parts: Vec<String> = l.iter().map(|d| d.to_string()).collect();
    parts.join(if comma { "," } else { "" })
}

/// Dynkin label `⟨0100⟩`, with commas once a digit exceeds 9 or is negative.
pub fn render_label(l: &[i32]) -> String {
    format!("⟨{}⟩", digits(l, l.iter().any(|&d| !(0..=9).contains(&d))))
}

/// `\dynkin{0,1,0,0}`, or `\dynkincomma{...}` once a digit exceeds 9.
pub fn latex_label(l: &[i32]) -> String {
    let cmd = if l.iter().any(|&d| d > 9) { "dynkincomma" } else { "dynkin" };
    format!("\\{cmd}{{{}}}", digits(l, true))
}

pub fn latex_name(n: &DimName) -> String {
    let bar = if n.barred { "bar" } else { "" };
    let primes = if n.n_primes > 0 { format!("[{}]", n.n_primes) } else { String::new() };
    match &n.subscript {
        Some(s) => format!("\\irrep{bar}sub{primes}{{{}}}{{{s}}}", n.dim),
        None => format!("\\irrep{bar}{primes}{{{}}}", n.dim),
    }
}

pub fn render_irrep(r: &Irrep, format: Format) -> Result<String> {
    Ok(match format {
        Format::Plain | Format::Csv => dim_name(r)?.to_string(),
        Format::Dynkin => render_label(&r.label),
        Format::Latex => latex_name(&dim_name(r)?),
    })
}

/// Weight or root: `\weight{...}` or `\rootomega{...}` in LaTeX, with
/// negative entries braced.
pub fn render_vector(v: &Vector, format: Format) -> String {
    if format != Format::Latex {
        return v.to_string();
    }
    let cmd = match (v.basis, v.kind) {
        (Basis::Omega, crate::algebra_core::Kind::Weight) => "weight",
        (Basis::Omega, _) => "rootomega",
        (Basis::Alpha, crate::algebra_core::Kind::Root) => "root",
        (Basis::Alpha, _) => "weightalpha",
        (Basis::Orthogonal, crate::algebra_core::Kind::Root) => "rootorthogonal",
        (Basis::Orthogonal, _) => "weightorthogonal",
    };
    let parts: Vec<String> = v
        .coords
        .iter()
        .map(|c| {
            let s = fmt_charge(c);
            if s.starts_with('-') {
                format!("{{{s}}}")
            } else {
                s
            }
        })
        .collect();
    format!("\\{cmd}{{{}}}", parts.join(","))
}

/// `(3,bar(3))(-4)`; a lone simple factor without charges is bare.
pub fn render_product_irrep(p: &ProductIrrep, format: Format) -> Result<String> {
    let names: Vec<String> = p.irreps().map(|r| render_irrep(r, format)).collect::<Result<_>>()?;
    let charges: Vec<String> = p.charges().map(|c| format!("({})", fmt_charge(c))).collect();
    let mut s = if names.len() == 1 && charges.is_empty() {
        names[0].clone()
    } else if names.is_empty() {
        String::new()
    } else {
        format!("({})", names.join(","))
    };
    s.push_str(&charges.concat());
    Ok(s)
}

fn join_terms(terms: Vec<(String, u64, bool)>, format: Format) -> String {
    let body: Vec<String> = terms
        .into_iter()
        .map(|(s, m, wrapped)| match m {
            1 => s,
            _ if wrapped => format!("{m}{s}"),
            _ => format!("{m}({s})"),
        })
        .collect();
    let sep = if format == Format::Plain { " + " } else { "+" };
    let s = body.join(sep);
    if format == Format::Latex {
        format!("${s}$")
    } else {
        s
    }
}

/// `1 + 2(8) + 10 + bar(10) + 27`, or `$\irrep{1}+2(\irrep{8})+...$` in LaTeX.
pub fn render_sum(sum: &IrrepSum<Irrep>, format: Format) -> Result<String> {
    let terms = sum
        .terms
        .iter()
        .map(|(r, m)| Ok((render_irrep(r, format)?, *m, false)))
        .collect::<Result<Vec<_>>>()?;
    Ok(join_terms(terms, format))
}

pub fn render_product_sum(sum: &IrrepSum<ProductIrrep>, format: Format) -> Result<String> {
    let terms = sum
        .terms
        .iter()
        .map(|(p, m)| {
            let s = render_product_irrep(p, format)?;
            let wrapped = s.starts_with('(');
            Ok((s, *m, wrapped))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(join_terms(terms, format))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TableKind {
    Irreps,
    Products,
    Branchings,
}

impl std::str::FromStr for TableKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "irreps" => Ok(TableKind::Irreps),
            "products" => Ok(TableKind::Products),
            "branchings" => Ok(TableKind::Branchings),
            _ => Err(Error::Parse(format!("unknown table kind `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableOptions {
    pub max_dim: u64,
    pub format: Format,
    /// Also list conjugates of irreps already in the table.
    pub conjugates: bool,
    /// Subalgebras whose singlet counts become extra irrep-table columns.
    pub singlets: Vec<ProductAlgebra>,
}

impl TableOptions {
    pub fn new(max_dim: u64, format: Format) -> Self {
        TableOptions { max_dim, format, conjugates: false, singlets: Vec::new() }
    }
}

fn table_irreps(a: AlgebraId, opts: &TableOptions) -> Result<Vec<Irrep>> {
    let all = irreps_up_to_dim(a, opts.max_dim)?;
    if opts.conjugates {
        return Ok(all);
    }
    let mut out = Vec::new();
    for r in all {
        if !dim_name(&r)?.barred {
            out.push(r);
        }
    }
    Ok(out)
}

fn fmt_q(x: &Q) -> String {
    fmt_charge(x)
}

fn write_row(out: &mut String, cells: &[String], format: Format) {
    let line = match format {
        Format::Csv => cells
            .iter()
            .map(|c| if c.contains([',', '"']) { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
            .collect::<Vec<_>>()
            .join(","),
        Format::Latex => format!("{} \\\\", cells.join(" & ")),
        _ => cells.join("\t"),
    };
    out.push_str(&line);
    out.push('\n');
}

fn label_cell(l: &Label, format: Format) -> String {
    match format {
        Format::Latex => latex_label(l),
        Format::Csv => format!("({})", digits(l, true)),
        _ => render_label(l),
    }
}

fn singlets(r: &Irrep, target: &ProductAlgebra) -> Result<u64> {
    let s = decompose_irrep(r, target)?;
    Ok(s
        .terms
        .iter()
        .filter(|(p, _)| {
            p.parts.iter().all(|x| match x {
                Part::Irrep(i) => i.label.iter().all(|&d| d == 0),
                Part::Charge(c) => c.is_zero(),
            })
        })
        .map(|t| t.1)
        .sum())
}

/// Property, product or branching table. Irreps are listed in display order (dimension, then
/// index); the index column is divided by the algebra's normalization.
pub fn generate_table(kind: TableKind, a: AlgebraId, opts: &TableOptions) -> Result<String> {
    let f = opts.format;
    let mut out = String::new();
    match kind {
        TableKind::Irreps => {
            let norm = index_normalization(a);
            let ix = if norm == 1 { "l".to_string() } else { format!("l/{norm}") };
            let mut header: Vec<String> = ["Dynkin label", "dim", "name", ix.as_str(), "congruency"]
                .iter()
                .map(|s| s.to_string())
                .collect();
            header.extend(opts.singlets.iter().map(|t| t.to_string()));
            write_row(&mut out, &header, f);
            for r in table_irreps(a, opts)? {
                let mut row = vec![
                    label_cell(&r.label, f),
                    dim(&r)?.to_string(),
                    render_irrep(&r, f)?,
                    fmt_q(&normalized_index(&r)?),
                    congruency_class(&r).to_string(),
                ];
                for t in &opts.singlets {
                    row.push(singlets(&r, t)?.to_string());
                }
                write_row(&mut out, &row, f);
            }
        }
        TableKind::Products => {
            write_row(&mut out, &["lhs".into(), "rhs".into(), "decomposition".into()], f);
            let irreps = table_irreps(a, opts)?;
            for (i, x) in irreps.iter().enumerate() {
                for y in &irreps[i..] {
                    let sum = decompose_product(&[x.clone(), y.clone()])?;
                    let row = [render_irrep(x, f)?, render_irrep(y, f)?, render_sum(&sum, f)?];
                    write_row(&mut out, &row, f);
                }
            }
        }
        TableKind::Branchings => {
            write_row(&mut out, &["irrep".into(), "decomposition".into()], f);
            for rule in registered_rules().into_iter().filter(|r| r.origin == a) {
                let _ = writeln!(out, "# {} -> {}", rule.origin, rule.target);
                for r in table_irreps(a, opts)? {
                    if r.label.iter().all(|&d| d == 0) {
                        continue;
                    }
                    let sum = decompose_irrep(&r, &rule.target)?;
                    write_row(&mut out, &[render_irrep(&r, f)?, render_product_sum(&sum, f)?], f);
                }
            }
        }
    }
    Ok(out)
}

/// Dimension of a rendered sum, for quick checks.
pub fn sum_dim(sum: &IrrepSum<Irrep>) -> Option<u64> {
    sum.dim().ok()?.to_u64()
}
