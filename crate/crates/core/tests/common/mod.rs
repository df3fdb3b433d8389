//! Readers for the reference fixture tables under `tests/data`.
#![allow(dead_code)]

use liereps::cli_io::parse_latex_name;
use liereps::irrep_props::{dim_name, irrep_by_name, DimName, Part, ProductIrrep};
use liereps::rational::Q;
use liereps::tensor::IrrepSum;
use liereps::weights::Irrep;
use liereps::{parse_algebra, parse_simple_algebra, AlgebraId, ProductAlgebra};
use num_traits::ToPrimitive;
use std::path::PathBuf;

pub fn data_path(kind: &str, file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(kind).join(file)
}

pub fn rows(kind: &str, file: &str) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(data_path(kind, file)).expect("fixture");
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split('\t').map(|c| c.trim().to_string()).collect())
        .collect()
}

pub fn files(kind: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(kind);
    let mut v: Vec<String> = std::fs::read_dir(dir)
        .expect("fixture dir")
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

/// `SU(5)`, `\E7`, `SU(3)*SU(2)*U(1)` to algebra names the library parses.
pub fn normalize_algebra(s: &str) -> String {
    s.replace(['(', ')', '\\', ' '], "")
}

pub fn algebra(s: &str) -> AlgebraId {
    parse_simple_algebra(&normalize_algebra(s)).expect("algebra")
}

pub fn product_algebra(s: &str) -> ProductAlgebra {
    parse_algebra(&normalize_algebra(s)).expect("product algebra")
}

/// `\dynkin{0, 1, 0}` or `\dynkincomma{10, 0}`.
pub fn dynkin(cell: &str) -> Vec<i32> {
    let inner = cell.split_once('{').unwrap().1.trim_end_matches('}');
    inner.split(',').map(|d| d.trim().parse().unwrap()).collect()
}

/// One term of a LaTeX sum: multiplicity, names of the simple factors, charges.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    pub mult: u64,
    pub names: Vec<String>,
    pub charges: Vec<Q>,
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

fn name_key(n: &DimName) -> String {
    n.to_string()
}

pub fn parse_term(t: &str) -> Term {
    let t = t.trim();
    let digits: String = t.chars().take_while(|c| c.is_ascii_digit()).collect();
    let mut rest = &t[digits.len()..];
    let mult = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
    let mut names = Vec::new();
    let mut charges = Vec::new();
    if rest.starts_with('\\') {
        let end = rest.find('(').unwrap_or(rest.len());
        names.push(name_key(&parse_latex_name(&rest[..end]).unwrap()));
        rest = &rest[end..];
    }
    while let Some(r) = rest.strip_prefix('(') {
        let mut depth = 1;
        let mut end = 0;
        for (i, c) in r.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 {
                end = i;
                break;
            }
        }
        let inner = &r[..end];
        if inner.contains('\\') {
            for n in split_top(inner, ',') {
                names.push(name_key(&parse_latex_name(&n).unwrap()));
            }
        } else {
            charges.push(liereps::branching::parse_rational(inner).unwrap_or_else(|| panic!("bad charge `{inner}` in `{t}`")));
        }
        rest = &r[end + 1..];
    }
    assert!(rest.trim().is_empty(), "unparsed tail in `{t}`");
    Term { mult, names, charges }
}

pub fn parse_sum(s: &str) -> Vec<Term> {
    let s = s.trim().trim_matches('$');
    let mut v: Vec<Term> = split_top(s, '+').iter().map(|t| parse_term(t)).collect();
    v.sort();
    v
}

pub fn terms_of_sum(s: &IrrepSum<Irrep>) -> Vec<Term> {
    let mut v: Vec<Term> = s
        .terms
        .iter()
        .map(|(r, m)| Term { mult: *m, names: vec![name_key(&dim_name(r).unwrap())], charges: vec![] })
        .collect();
    v.sort();
    v
}

pub fn terms_of_product_sum(s: &IrrepSum<ProductIrrep>) -> Vec<Term> {
    let mut v: Vec<Term> = s
        .terms
        .iter()
        .map(|(p, m)| Term {
            mult: *m,
            names: p
                .parts
                .iter()
                .filter_map(|x| match x {
                    Part::Irrep(r) => Some(name_key(&dim_name(r).unwrap())),
                    Part::Charge(_) => None,
                })
                .collect(),
            charges: p.charges().cloned().collect(),
        })
        .collect();
    v.sort();
    v
}

/// Resolves a LaTeX irrep name in an algebra.
pub fn irrep_from_latex(a: AlgebraId, cell: &str) -> Irrep {
    let n = parse_latex_name(cell).unwrap();
    let cap = if a.rank() == 1 { n.dim.to_i32().unwrap() } else { 40 };
    irrep_by_name(a, &n, cap).unwrap_or_else(|e| panic!("{cell} in {a}: {e}"))
}

/// A few long rows are cut off mid-term in the source tables.
pub fn is_truncated(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        match c {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            _ => {}
        }
    }
    depth != 0 || s.trim_end().ends_with('+')
}
