//! Branching rules via projection matrices.
//!
//! Regular subalgebras come from removing one node of the Dynkin diagram
//! (non-semisimple, the removed root becomes a `U1` charge) or of the extended
//! diagram with `−γ` adjoined (semisimple). Special subalgebras are declared by
//! the decomposition of the generating irrep.

use crate::algebra_core::{
    cartan_components, defining_data, isomorphisms, parse_algebra, parse_simple_algebra, submatrix, AlgebraId, Class,
    DefiningData, Label, ProductAlgebra,
};
use crate::error::{Error, Result};
use crate::irrep_props::{Part, ProductIrrep};
use crate::memo::Memo;
use crate::rational::{self, q, Mat, Q};
use crate::roots::root_system;
use crate::tensor::IrrepSum;
use crate::weights::{all_weights, dom_system, Irrep};
use num_integer::Integer;
use num_traits::Zero;
use once_cell::sync::Lazy;
use parking_lot::RwLock;
use std::collections::HashMap;
use std::sync::Arc;

/// Linear map from origin ω-coordinates to the concatenated target
/// coordinates, one row per simple-factor digit and one per `U1` charge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionMatrix {
    pub origin: AlgebraId,
    pub target: ProductAlgebra,
    pub matrix: Mat,
}

impl ProjectionMatrix {
    pub fn apply(&self, w: &[i32]) -> Vec<Q> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(w).fold(Q::zero(), |s, (p, &x)| s + p * q(x as i64)))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    /// `mirror` lists 1-based target factors that take the lexicographically
    /// largest node assignment instead of the smallest.
    NonSemiSimple { drop: i32, mirror: Vec<usize> },
    SemiSimple { drop: i32, mirror: Vec<usize> },
    Special { irreps: Vec<ProductIrrep> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingRule {
    pub origin: AlgebraId,
    pub target: ProductAlgebra,
    pub kind: EmbeddingKind,
}

/// Generating irrep: the smallest irrep whose tensor powers give all irreps.
pub fn generating_irrep(a: AlgebraId) -> Result<Irrep> {
    let n = a.rank();
    let mut l = vec![0; n];
    match a.class() {
        Class::A | Class::C | Class::G => l[0] = 1,
        Class::B | Class::D | Class::F => l[n - 1] = 1,
        Class::E => match n {
            6 => l[0] = 1,
            7 => l[5] = 1,
            _ => l[6] = 1,
        },
        Class::U1 => return Err(Error::InvalidAlgebra("U1 has no generating irrep".into())),
    }
    Irrep::new(a, &l)
}

/// Position of `−γ` in the extended weight scheme (0-based).
fn gamma_position(a: AlgebraId) -> usize {
    match a.class() {
        Class::B | Class::D => 1,
        Class::G => 2,
        Class::E if a.rank() == 6 => 6,
        Class::E if a.rank() == 8 => 7,
        _ => 0,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Node {
    Simple(usize),
    Gamma,
}

/// Extended diagram: node order, Cartan matrix in that order, and the ω-label of `γ`.
struct Extended {
    nodes: Vec<Node>,
    cartan: Vec<Vec<i64>>,
    gamma: Label,
}

fn extended(dd: &DefiningData) -> Result<Extended> {
    let n = dd.rank();
    let gamma = root_system(dd.algebra)?.labels[0].clone();
    let mut nodes: Vec<Node> = (0..n).map(Node::Simple).collect();
    nodes.insert(gamma_position(dd.algebra), Node::Gamma);
    // ⟨α_i, γ⟩ = d_i γ_i and ⟨γ, γ⟩ = 2.
    let entry = |x: Node, y: Node| -> i64 {
        match (x, y) {
            (Node::Simple(i), Node::Simple(j)) => dd.cartan[i][j],
            (Node::Gamma, Node::Gamma) => 2,
            (Node::Gamma, Node::Simple(j)) => -(gamma[j] as i64),
            (Node::Simple(i), Node::Gamma) => {
                rational::to_i64(&(-&dd.d_diag[i] * q(gamma[i] as i64))).expect("integral extended Cartan entry")
            }
        }
    };
    let cartan = nodes.iter().map(|&x| nodes.iter().map(|&y| entry(x, y)).collect()).collect();
    Ok(Extended { nodes, cartan, gamma })
}

fn resolve_drop(a: AlgebraId, drop: i32) -> Result<usize> {
    let n = a.rank() as i32;
    let k = if drop < 0 { n + 1 + drop } else { drop };
    if k < 1 || k > n {
        return Err(Error::IndexOutOfRange { index: drop.unsigned_abs() as usize, rank: a.rank() });
    }
    Ok(k as usize - 1)
}

/// Nonzero weights of the generating irrep.
fn generating_weights(a: AlgebraId) -> Result<Vec<Label>> {
    let r = generating_irrep(a)?;
    let mut ws: Vec<Label> = all_weights(&r)?
        .into_iter()
        .map(|(l, _)| l)
        .filter(|l| l.iter().any(|&x| x != 0))
        .collect();
    ws.sort_by(|x, y| y.cmp(x));
    Ok(ws)
}

/// For each simple target factor, the extended-diagram positions that give its
/// Dynkin digits in canonical order.
fn assign_components(
    cartan: &[Vec<i64>],
    kept: &[usize],
    target: &ProductAlgebra,
    mirror: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let mut comps = cartan_components(cartan, kept);
    comps.sort_by_key(|c| c[0]);
    let mut used = vec![false; comps.len()];
    let mut out = Vec::new();
    for (fi, f) in target.factors.iter().enumerate().filter(|(_, f)| !f.is_u1()) {
        let mirrored = mirror.contains(&(fi + 1));
        let mut found = None;
        for (ci, c) in comps.iter().enumerate() {
            if used[ci] {
                continue;
            }
            let isos = isomorphisms(&submatrix(cartan, c), *f);
            let all = isos.into_iter().map(|s| s.iter().map(|&i| c[i]).collect::<Vec<usize>>());
            if let Some(best) = if mirrored { all.max() } else { all.min() } {
                found = Some((ci, best));
                break;
            }
        }
        let (ci, map) = found?;
        used[ci] = true;
        out.push(map);
    }
    used.iter().all(|&u| u).then_some(out)
}

fn check_target_shape(target: &ProductAlgebra, rank: usize, u1s: usize) -> bool {
    target.factors.iter().filter(|f| f.is_u1()).count() == u1s
        && target.factors.iter().filter(|f| !f.is_u1()).map(|f| f.rank()).sum::<usize>() == rank
}

fn solve(origin: AlgebraId, target: &ProductAlgebra, w: &[Label], images: &[Vec<Q>]) -> Result<ProjectionMatrix> {
    let wm: Mat = (0..origin.rank())
        .map(|i| w.iter().map(|l| q(l[i] as i64)).collect())
        .collect();
    let rows = images.first().map(|v| v.len()).unwrap_or(0);
    let wp: Mat = (0..rows).map(|i| images.iter().map(|v| v[i].clone()).collect()).collect();
    let plus = rational::right_inverse(&wm).ok_or_else(|| Error::Internal("weight matrix has no right inverse".into()))?;
    let p = rational::mul(&wp, &plus);
    if rational::mul(&p, &wm) != wp {
        return Err(Error::Internal(format!("no linear projection {origin} -> {target} reproduces the weight pairing")));
    }
    Ok(ProjectionMatrix { origin, target: target.clone(), matrix: p })
}

/// Projection for a regular subalgebra with a `U1` factor, dropping one simple root.
pub fn non_semisimple_projection(origin: AlgebraId, drop: i32, target: &ProductAlgebra) -> Result<ProjectionMatrix> {
    non_semisimple_projection_mirrored(origin, drop, target, &[])
}

pub fn non_semisimple_projection_mirrored(
    origin: AlgebraId,
    drop: i32,
    target: &ProductAlgebra,
    mirror: &[usize],
) -> Result<ProjectionMatrix> {
    let dd = defining_data(origin)?;
    let k = resolve_drop(origin, drop)?;
    if !check_target_shape(target, origin.rank() - 1, 1) {
        return Err(Error::UnknownEmbedding { origin: origin.to_string(), target: target.to_string() });
    }
    let kept: Vec<usize> = (0..origin.rank()).filter(|&i| i != k).collect();
    let maps = assign_components(&dd.cartan, &kept, target, mirror)
        .ok_or_else(|| Error::UnknownEmbedding { origin: origin.to_string(), target: target.to_string() })?;
    let w = generating_weights(origin)?;
    let charges: Vec<Q> = w.iter().map(|l| Q::new(dd.alpha_scaled(l)[k].into(), dd.alpha_den.into())).collect();
    let norm = Q::from_integer(rational::common_denominator(&charges));
    let images: Vec<Vec<Q>> = w
        .iter()
        .zip(&charges)
        .map(|(l, c)| {
            let mut out = Vec::new();
            let mut maps = maps.iter();
            for f in &target.factors {
                if f.is_u1() {
                    out.push(c * &norm);
                } else {
                    let m = maps.next().expect("one map per simple factor");
                    out.extend(m.iter().map(|&i| q(l[i] as i64)));
                }
            }
            out
        })
        .collect();
    solve(origin, target, &w, &images)
}

/// Projection for a regular semisimple subalgebra, dropping one simple root
/// from the extended Dynkin diagram.
pub fn semisimple_projection(origin: AlgebraId, drop: i32, target: &ProductAlgebra) -> Result<ProjectionMatrix> {
    semisimple_projection_mirrored(origin, drop, target, &[])
}

pub fn semisimple_projection_mirrored(
    origin: AlgebraId,
    drop: i32,
    target: &ProductAlgebra,
    mirror: &[usize],
) -> Result<ProjectionMatrix> {
    let dd = defining_data(origin)?;
    let k = resolve_drop(origin, drop)?;
    let unknown = || Error::UnknownEmbedding { origin: origin.to_string(), target: target.to_string() };
    if !check_target_shape(target, origin.rank(), 0) {
        return Err(unknown());
    }
    let ext = extended(&dd)?;
    let kept: Vec<usize> = (0..ext.nodes.len()).filter(|&p| ext.nodes[p] != Node::Simple(k)).collect();
    let maps = assign_components(&ext.cartan, &kept, target, mirror).ok_or_else(unknown)?;
    let w = generating_weights(origin)?;
    let images: Vec<Vec<Q>> = w
        .iter()
        .map(|l| {
            let g = -dd.sp_int(l, &ext.gamma) / dd.metric_den as i128;
            let digit = |p: usize| match ext.nodes[p] {
                Node::Simple(i) => l[i] as i64,
                Node::Gamma => g as i64,
            };
            maps.iter().flat_map(|m| m.iter().map(|&p| q(digit(p)))).collect()
        })
        .collect();
    solve(origin, target, &w, &images)
}

/// Projection for a special subalgebra from the decomposition of the generating
/// irrep; both weight lists are paired in descending lexicographic order.
pub fn special_projection(origin: AlgebraId, target_irreps: &[ProductIrrep]) -> Result<ProjectionMatrix> {
    let target = target_irreps
        .first()
        .ok_or_else(|| Error::InvalidInput("no target irreps".into()))?
        .algebra();
    let g = generating_irrep(origin)?;
    let mut w: Vec<Label> = Vec::new();
    for (l, m) in all_weights(&g)? {
        for _ in 0..m {
            w.push(l.clone());
        }
    }
    let mut images: Vec<Vec<Q>> = Vec::new();
    for p in target_irreps {
        if p.algebra() != target {
            return Err(Error::AlgebraMismatch(target.to_string(), p.algebra().to_string()));
        }
        images.extend(product_weights(p)?);
    }
    if images.len() != w.len() {
        return Err(Error::InvalidInput(format!(
            "target irreps have {} weights, the generating irrep of {origin} has {}",
            images.len(),
            w.len()
        )));
    }
    w.sort_by(|x, y| y.cmp(x));
    images.sort_by(|x, y| y.cmp(x));
    solve(origin, &target, &w, &images)
}

/// All weights of a product irrep as concatenated coordinates, multiplicities expanded.
fn product_weights(p: &ProductIrrep) -> Result<Vec<Vec<Q>>> {
    let mut acc: Vec<Vec<Q>> = vec![Vec::new()];
    for part in &p.parts {
        let opts: Vec<Vec<Q>> = match part {
            Part::Charge(c) => vec![vec![c.clone()]],
            Part::Irrep(r) => {
                let mut v = Vec::new();
                for (l, m) in all_weights(r)? {
                    for _ in 0..m {
                        v.push(l.iter().map(|&x| q(x as i64)).collect());
                    }
                }
                v
            }
        };
        acc = acc
            .into_iter()
            .flat_map(|a| {
                opts.iter().map(move |o| {
                    let mut x = a.clone();
                    x.extend(o.iter().cloned());
                    x
                })
            })
            .collect();
    }
    Ok(acc)
}

fn parse_rule_line(line: &str) -> Result<Option<EmbeddingRule>> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return Ok(None);
    }
    let bad = || Error::Parse(format!("bad registry rule `{line}`"));
    let (lhs, kind) = line.split_once(':').ok_or_else(bad)?;
    let (o, t) = lhs.split_once("->").ok_or_else(bad)?;
    let origin = parse_simple_algebra(o.trim())?;
    let target = parse_algebra(t.trim())?;
    let kind = kind.trim();
    let inner = |name: &str| -> Option<&str> { kind.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')') };
    let opts = |s: &str| -> Result<(i32, Vec<usize>)> {
        let mut drop = None;
        let mut mirror = Vec::new();
        for o in s.split(';') {
            let (k, v) = o.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "drop" => drop = Some(v.trim().parse().map_err(|_| bad())?),
                "mirror" => {
                    mirror = v.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
                }
                _ => return Err(bad()),
            }
        }
        Ok((drop.ok_or_else(bad)?, mirror))
    };
    let kind = if let Some(s) = inner("nonsemisimple") {
        let (drop, mirror) = opts(s)?;
        EmbeddingKind::NonSemiSimple { drop, mirror }
    } else if let Some(s) = inner("semisimple") {
        let (drop, mirror) = opts(s)?;
        EmbeddingKind::SemiSimple { drop, mirror }
    } else if let Some(s) = inner("special") {
        let irreps = s
            .split(';')
            .map(|p| parse_product_irrep_labels(&target, p))
            .collect::<Result<Vec<_>>>()?;
        EmbeddingKind::Special { irreps }
    } else {
        return Err(bad());
    };
    Ok(Some(EmbeddingRule { origin, target, kind }))
}

/// Parses `(a,b,...)(c,...)[q]` against the factors of a product algebra.
fn parse_product_irrep_labels(target: &ProductAlgebra, text: &str) -> Result<ProductIrrep> {
    let bad = || Error::Parse(format!("bad product irrep `{}` for {target}", text.trim()));
    let mut rest = text.trim();
    let mut parts = Vec::new();
    for f in &target.factors {
        rest = rest.trim_start();
        if f.is_u1() {
            let body = rest.strip_prefix('[').ok_or_else(bad)?;
            let (num, tail) = body.split_once(']').ok_or_else(bad)?;
            parts.push(Part::Charge(parse_rational(num).ok_or_else(bad)?));
            rest = tail;
        } else {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let (digits, tail) = body.split_once(')').ok_or_else(bad)?;
            let label: Vec<i32> = digits
                .split(',')
                .map(|d| d.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            parts.push(Part::Irrep(Irrep::new(*f, &label)?));
            rest = tail;
        }
    }
    if !rest.trim().is_empty() {
        return Err(bad());
    }
    Ok(ProductIrrep::new(parts))
}

/// Parses an integer or `n/d` fraction.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().ok()?;
            let n: i64 = n.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n.into(), d.into()))
        }
        None => Some(q(s.parse().ok()?)),
    }
}

/// Parses a registry file.
pub fn parse_registry(text: &str) -> Result<Vec<EmbeddingRule>> {
    text.lines().filter_map(|l| parse_rule_line(l).transpose()).collect()
}

static BUILTIN_RULES: &str = include_str!("../data/branching_rules.txt");

static REGISTRY: Lazy<RwLock<Vec<EmbeddingRule>>> =
    Lazy::new(|| RwLock::new(parse_registry(BUILTIN_RULES).expect("built-in registry parses")));

static MATRICES: Lazy<Memo<(AlgebraId, ProductAlgebra), ProjectionMatrix>> = Lazy::new(Memo::new);

/// Adds rules in front of the built-in ones.
pub fn extend_registry(rules: Vec<EmbeddingRule>) {
    let mut r = REGISTRY.write();
    let mut new = rules;
    new.extend(r.drain(..));
    *r = new;
}

/// Drop index of the parametric families.
fn family_rule(origin: AlgebraId, target: &ProductAlgebra) -> Option<EmbeddingKind> {
    let n = origin.rank() as i32;
    let simple: Vec<AlgebraId> = target.factors.iter().copied().filter(|f| !f.is_u1()).collect();
    let u1s = target.factors.len() - simple.len();
    let classes: Vec<Class> = simple.iter().map(|f| f.class()).collect();
    match (origin.class(), u1s) {
        (Class::A, 1) => match simple.as_slice() {
            [] if n == 1 => Some(EmbeddingKind::NonSemiSimple { drop: 1, mirror: vec![] }),
            [a] if a.class() == Class::A && a.rank() as i32 == n - 1 => Some(EmbeddingKind::NonSemiSimple { drop: n, mirror: vec![] }),
            [a, b] if classes == [Class::A, Class::A] && (a.rank() + b.rank()) as i32 == n - 1 => {
                Some(EmbeddingKind::NonSemiSimple { drop: a.rank() as i32 + 1, mirror: vec![] })
            }
            _ => None,
        },
        (Class::D, 1) => match simple.as_slice() {
            [a] if a.class() == Class::A && a.rank() as i32 == n - 1 => Some(EmbeddingKind::NonSemiSimple { drop: n - 1, mirror: vec![] }),
            [a] if a.rank() as i32 == n - 1 => Some(EmbeddingKind::NonSemiSimple { drop: 1, mirror: vec![] }),
            _ => None,
        },
        (Class::B, 1) => match simple.as_slice() {
            [a] if a.rank() as i32 == n - 1 => Some(EmbeddingKind::NonSemiSimple { drop: 1, mirror: vec![] }),
            _ => None,
        },
        (Class::C, 1) => match simple.as_slice() {
            [a] if a.class() == Class::A && a.rank() as i32 == n - 1 => Some(EmbeddingKind::NonSemiSimple { drop: n, mirror: vec![] }),
            _ => None,
        },
        (Class::B | Class::D | Class::C, 0) => {
            // The first factors fill the chain up to the dropped node, the
            // last one is of the origin's class. An orthogonal first factor
            // is mirrored to follow the tables' spinor conventions.
            let last = *simple.last()?;
            let k = n - last.rank() as i32;
            let mirror = if simple.len() == 2 && classes[0] == Class::D { vec![1] } else { vec![] };
            (k >= 1 && k < n).then_some(EmbeddingKind::SemiSimple { drop: k, mirror })
        }
        _ => None,
    }
}

fn build_from(origin: AlgebraId, target: &ProductAlgebra, kind: &EmbeddingKind) -> Result<ProjectionMatrix> {
    match kind {
        EmbeddingKind::NonSemiSimple { drop, mirror } => non_semisimple_projection_mirrored(origin, *drop, target, mirror),
        EmbeddingKind::SemiSimple { drop, mirror } => semisimple_projection_mirrored(origin, *drop, target, mirror),
        EmbeddingKind::Special { irreps } => special_projection(origin, irreps),
    }
}

/// Projection matrix for an origin-target pair: registry rules first, then
/// the parametric families, then a search over single dropped roots.
pub fn registry_lookup(origin: AlgebraId, target: &ProductAlgebra) -> Result<Arc<ProjectionMatrix>> {
    MATRICES.get_or_try(&(origin, target.clone()), || {
        let rule = REGISTRY
            .read()
            .iter()
            .find(|r| r.origin == origin && &r.target == target)
            .map(|r| r.kind.clone());
        if let Some(kind) = rule {
            return build_from(origin, target, &kind);
        }
        if target.as_simple() == Some(origin) {
            let m = rational::identity(origin.rank());
            return Ok(ProjectionMatrix { origin, target: target.clone(), matrix: m });
        }
        if let Some(kind) = family_rule(origin, target) {
            if let Ok(p) = build_from(origin, target, &kind) {
                return Ok(p);
            }
        }
        let u1s = target.factors.iter().filter(|f| f.is_u1()).count();
        for k in (1..=origin.rank() as i32).rev() {
            let attempt = match u1s {
                0 => semisimple_projection(origin, k, target),
                1 => non_semisimple_projection(origin, k, target),
                _ => break,
            };
            if let Ok(p) = attempt {
                return Ok(p);
            }
        }
        Err(Error::UnknownEmbedding { origin: origin.to_string(), target: target.to_string() })
    })
}

/// Projected image of a weight, split into simple-factor labels and charges.
fn split_image(target: &ProductAlgebra, img: &[Q]) -> Result<(Vec<Label>, Vec<Q>)> {
    let mut labels = Vec::new();
    let mut charges = Vec::new();
    let mut i = 0;
    for f in &target.factors {
        if f.is_u1() {
            charges.push(img[i].clone());
            i += 1;
        } else {
            let l = img[i..i + f.rank()]
                .iter()
                .map(|x| rational::to_i64(x).map(|v| v as i32))
                .collect::<Option<Label>>()
                .ok_or_else(|| Error::Internal("non-integral projected Dynkin label".into()))?;
            labels.push(l);
            i += f.rank();
        }
    }
    Ok((labels, charges))
}

fn assemble(target: &ProductAlgebra, labels: &[Label], charges: &[Q]) -> ProductIrrep {
    let mut li = labels.iter();
    let mut ci = charges.iter();
    ProductIrrep::new(
        target
            .factors
            .iter()
            .map(|f| {
                if f.is_u1() {
                    Part::Charge(ci.next().expect("charge").clone())
                } else {
                    Part::Irrep(Irrep { algebra: *f, label: li.next().expect("label").clone() })
                }
            })
            .collect(),
    )
}

type Key = (Vec<Label>, Vec<Q>);

/// Decomposes an irrep into irreps of a subalgebra.
pub fn decompose_irrep(r: &Irrep, target: &ProductAlgebra) -> Result<IrrepSum<ProductIrrep>> {
    let p = registry_lookup(r.algebra, target)?;
    let simple: Vec<AlgebraId> = target.factors.iter().copied().filter(|f| !f.is_u1()).collect();
    let dds: Vec<Arc<DefiningData>> = simple.iter().map(|&f| defining_data(f)).collect::<Result<_>>()?;
    let (pint, pden) = scaled(&p.matrix);
    let mut tally: HashMap<Key, i128> = HashMap::new();
    for (w, m) in all_weights(r)? {
        let img: Vec<Q> = pint
            .iter()
            .map(|row| Q::new(row.iter().zip(&w).map(|(a, &b)| a * b as i64).sum::<i64>().into(), pden.into()))
            .collect();
        let (labels, charges) = split_image(target, &img)?;
        if labels.iter().all(|l| l.iter().all(|&x| x >= 0)) {
            *tally.entry((labels, charges)).or_default() += m;
        }
    }
    let lcm = dds.iter().fold(1i64, |a, d| a.lcm(&d.alpha_den));
    let height = |labels: &[Label]| -> i64 {
        labels.iter().zip(&dds).map(|(l, d)| d.height_scaled(l) * (lcm / d.alpha_den)).sum()
    };
    let mut order: Vec<Key> = tally.keys().cloned().collect();
    order.sort_by(|a, b| height(&b.0).cmp(&height(&a.0)).then_with(|| b.cmp(a)));
    let mut out: HashMap<ProductIrrep, u64> = HashMap::new();
    for key in order {
        let c = tally.get(&key).copied().unwrap_or(0);
        if c < 0 {
            return Err(Error::Internal(format!("negative residue in branching sieve at {key:?}")));
        }
        if c == 0 {
            continue;
        }
        let systems = key
            .0
            .iter()
            .zip(&simple)
            .map(|(l, &f)| dom_system(&Irrep { algebra: f, label: l.clone() }))
            .collect::<Result<Vec<_>>>()?;
        let mut combos: Vec<(Vec<Label>, i128)> = vec![(Vec::new(), 1)];
        for s in &systems {
            let small = s.small.as_ref().ok_or_else(|| Error::Internal("multiplicity overflow".into()))?;
            combos = combos
                .into_iter()
                .flat_map(|(ls, m)| {
                    s.labels.iter().zip(small).map(move |(l, k)| {
                        let mut v = ls.clone();
                        v.push(l.clone());
                        (v, m * k)
                    })
                })
                .collect();
        }
        for (ls, m) in combos {
            let e = tally
                .get_mut(&(ls, key.1.clone()))
                .ok_or_else(|| Error::Internal("branching sieve lost a weight".into()))?;
            *e -= c * m;
        }
        out.insert(assemble(target, &key.0, &key.1), c as u64);
    }
    if tally.values().any(|&c| c != 0) {
        return Err(Error::Internal("residue left after the branching sieve".into()));
    }
    Ok(IrrepSum::<ProductIrrep>::from_map(out))
}

fn scaled(m: &Mat) -> (Vec<Vec<i64>>, i64) {
    rational::scaled_int(m)
}

/// Decomposes the factor at 1-based position `pos` of a product irrep into
/// `target`, keeping the other factors. New simple factors are spliced in at
/// `pos`; new charges follow all simple factors, before the old charges.
pub fn decompose_irrep_at(p: &ProductIrrep, target: &ProductAlgebra, pos: usize) -> Result<IrrepSum<ProductIrrep>> {
    if pos == 0 || pos > p.parts.len() {
        return Err(Error::IndexOutOfRange { index: pos, rank: p.parts.len() });
    }
    let Part::Irrep(r) = &p.parts[pos - 1] else {
        return Err(Error::InvalidInput("cannot decompose a U1 charge".into()));
    };
    let inner = decompose_irrep(r, target)?;
    let mut out: HashMap<ProductIrrep, u64> = HashMap::new();
    for (t, m) in inner.terms {
        let mut simple = Vec::new();
        let mut charges = Vec::new();
        for (i, part) in p.parts.iter().enumerate() {
            if i == pos - 1 {
                simple.extend(t.parts.iter().filter(|x| matches!(x, Part::Irrep(_))).cloned());
            } else if matches!(part, Part::Irrep(_)) {
                simple.push(part.clone());
            }
        }
        charges.extend(t.parts.iter().filter(|x| matches!(x, Part::Charge(_))).cloned());
        charges.extend(p.parts.iter().filter(|x| matches!(x, Part::Charge(_))).cloned());
        simple.extend(charges);
        *out.entry(ProductIrrep::new(simple)).or_default() += m;
    }
    Ok(IrrepSum::<ProductIrrep>::from_map(out))
}

/// Sum of each `U1` charge over all weights of `r` projected to `target`.
pub fn u1_traces(r: &Irrep, target: &ProductAlgebra) -> Result<Vec<Q>> {
    let p = registry_lookup(r.algebra, target)?;
    let mut sums: Vec<Q> = Vec::new();
    for (w, m) in all_weights(r)? {
        let img = p.apply(&w);
        let (_, charges) = split_image(target, &img)?;
        if sums.is_empty() {
            sums = vec![Q::zero(); charges.len()];
        }
        for (s, c) in sums.iter_mut().zip(charges) {
            *s += c * Q::from_integer(m.into());
        }
    }
    Ok(sums)
}

/// Registered origin-target pairs.
pub fn registered_rules() -> Vec<EmbeddingRule> {
    REGISTRY.read().clone()
}
