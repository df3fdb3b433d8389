//! Dimension, index, congruency class and dimensional names of irreps.

use crate::algebra_core::{defining_data, AlgebraId, Class, Label, ProductAlgebra};
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::rational::{q, Q};
use crate::roots::root_system;
use crate::weights::Irrep;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// One factor of a product irrep: an irrep of a simple factor or a `U1` charge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Irrep(Irrep),
    Charge(Q),
}

/// Irrep of a product algebra, one part per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductIrrep {
    pub parts: Vec<Part>,
}

impl ProductIrrep {
    pub fn new(parts: Vec<Part>) -> Self {
        ProductIrrep { parts }
    }

    pub fn algebra(&self) -> ProductAlgebra {
        ProductAlgebra {
            factors: self
                .parts
                .iter()
                .map(|p| match p {
                    Part::Irrep(r) => r.algebra,
                    Part::Charge(_) => AlgebraId::u1(),
                })
                .collect(),
        }
    }

    pub fn irreps(&self) -> impl Iterator<Item = &Irrep> {
        self.parts.iter().filter_map(|p| match p {
            Part::Irrep(r) => Some(r),
            Part::Charge(_) => None,
        })
    }

    pub fn charges(&self) -> impl Iterator<Item = &Q> {
        self.parts.iter().filter_map(|p| match p {
            Part::Charge(c) => Some(c),
            Part::Irrep(_) => None,
        })
    }
}

/// Congruency number, or vector for `D_n`, with its moduli.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruencyClass {
    pub values: Vec<i64>,
    pub moduli: Vec<i64>,
}

impl CongruencyClass {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Class of a tensor product component.
    pub fn add(&self, other: &CongruencyClass) -> CongruencyClass {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b).rem_euclid(*m))
            .collect();
        CongruencyClass { values, moduli: self.moduli.clone() }
    }
}

impl fmt::Display for CongruencyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.len() == 1 {
            write!(f, "{}", self.values[0])
        } else {
            let s: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", s.concat())
        }
    }
}

/// Dimensional name: dimension, primes, overbar and `SO(8)` subscript.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DimName {
    pub dim: BigUint,
    pub n_primes: u32,
    pub barred: bool,
    pub subscript: Option<String>,
}

impl DimName {
    pub fn plain(dim: u64) -> Self {
        DimName { dim: BigUint::from(dim), n_primes: 0, barred: false, subscript: None }
    }
}

/// ASCII form: `10`, `bar(175)'`, `840'_s`.
impl fmt::Display for DimName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes = "'".repeat(self.n_primes as usize);
        if self.barred {
            write!(f, "bar({}){}", self.dim, primes)?;
        } else {
            write!(f, "{}{}", self.dim, primes)?;
        }
        if let Some(s) = &self.subscript {
            write!(f, "_{s}")?;
        }
        Ok(())
    }
}

/// Per positive root, `c_i d_i` with `c` its α-coordinates and `d` the scaled
/// D-matrix, together with their sum.
type DimCoeffs = Vec<(Vec<i64>, i64)>;

static DIM_COEFFS: Lazy<Memo<AlgebraId, DimCoeffs>> = Lazy::new(Memo::new);

fn dim_coeffs(a: AlgebraId) -> Result<Arc<DimCoeffs>> {
    DIM_COEFFS.get_or_try(&a, || {
        let dd = defining_data(a)?;
        let rs = root_system(a)?;
        let den = crate::rational::common_denominator(&dd.d_diag);
        let d: Vec<i64> = dd
            .d_diag
            .iter()
            .map(|x| crate::rational::to_i64(&(x * Q::from_integer(den.clone()))).expect("integral"))
            .collect();
        Ok(rs
            .positive_alpha()
            .iter()
            .map(|c| {
                let v: Vec<i64> = c.iter().zip(&d).map(|(a, b)| a * b).collect();
                let s = v.iter().sum();
                (v, s)
            })
            .collect())
    })
}

fn dim_u128(coeffs: &[(Vec<i64>, i64)], label: &[i32]) -> Option<u128> {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (v, s) in coeffs {
        let t: i64 = v.iter().zip(label).map(|(c, &l)| c * (l as i64 + 1)).sum();
        let (mut t, mut s) = (t as u128, *s as u128);
        let g = t.gcd(&s);
        t /= g;
        s /= g;
        let g = t.gcd(&den);
        t /= g;
        den /= g;
        let g = s.gcd(&num);
        s /= g;
        num /= g;
        num = num.checked_mul(t)?;
        den = den.checked_mul(s)?;
    }
    (den == 1).then_some(num)
}

fn dim_big(coeffs: &[(Vec<i64>, i64)], label: &[i32]) -> Result<BigUint> {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (v, s) in coeffs {
        let t: i64 = v.iter().zip(label).map(|(c, &l)| c * (l as i64 + 1)).sum();
        num *= t as u64;
        den *= *s as u64;
    }
    let (d, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal("non-integral Weyl dimension".into()));
    }
    Ok(d)
}

/// Weyl dimension formula.
pub fn dim(r: &Irrep) -> Result<BigUint> {
    let c = dim_coeffs(r.algebra)?;
    match dim_u128(&c, &r.label) {
        Some(d) => Ok(BigUint::from(d)),
        None => dim_big(&c, &r.label),
    }
}

pub(crate) fn dim_u64(r: &Irrep) -> Result<u64> {
    dim(r)?
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(format!("dimension of {r} exceeds 64 bits")))
}

/// Dimension of a product irrep; `U1` factors contribute 1.
pub fn product_dim(p: &ProductIrrep) -> Result<BigUint> {
    p.irreps().try_fold(BigUint::one(), |acc, r| Ok(acc * dim(r)?))
}

/// Raw index `l = dim/ord · ⟨Λ, Λ+2δ⟩`.
pub fn index(r: &Irrep) -> Result<Q> {
    let dd = defining_data(r.algebra)?;
    let rs = root_system(r.algebra)?;
    let shifted: Vec<i32> = r.label.iter().map(|&x| x + 2).collect();
    let sp = Q::new(dd.sp_int(&r.label, &shifted).into(), dd.metric_den.into());
    let d = Q::from_integer(dim(r)?.into());
    Ok(d * sp / q(rs.roots.len() as i64))
}

/// Divisor applied to the raw index in printed tables.
pub fn index_normalization(a: AlgebraId) -> i64 {
    match (a.class(), a.rank()) {
        (Class::A | Class::C, _) => 1,
        (Class::B | Class::D | Class::G, _) => 2,
        (Class::E, 6) | (Class::F, _) => 6,
        (Class::E, 7) => 12,
        (Class::E, _) => 60,
        (Class::U1, _) => 1,
    }
}

/// Index in table normalization.
pub fn normalized_index(r: &Irrep) -> Result<Q> {
    Ok(index(r)? / q(index_normalization(r.algebra)))
}

pub fn congruency_class(r: &Irrep) -> CongruencyClass {
    let a: Vec<i64> = r.label.iter().map(|&x| x as i64).collect();
    let n = a.len();
    let one = |v: i64, m: i64| CongruencyClass { values: vec![v.rem_euclid(m)], moduli: vec![m] };
    match r.algebra.class() {
        Class::A => one(a.iter().enumerate().map(|(k, x)| (k as i64 + 1) * x).sum(), n as i64 + 1),
        Class::B => one(a[n - 1], 2),
        Class::C => one(a.iter().step_by(2).sum(), 2),
        Class::D => {
            let upto = if n % 2 == 1 { n - 2 } else { n - 3 };
            let odd: i64 = a[..upto].iter().step_by(2).sum();
            let c2 = 2 * odd + (n as i64 - 2) * a[n - 2] + n as i64 * a[n - 1];
            CongruencyClass { values: vec![(a[n - 2] + a[n - 1]).rem_euclid(2), c2.rem_euclid(4)], moduli: vec![2, 4] }
        }
        Class::E if n == 6 => one(a[0] - a[1] + a[3] - a[4], 3),
        Class::E if n == 7 => one(a[3] + a[5] + a[6], 2),
        _ => one(0, 1),
    }
}

/// Conjugate irrep under the Dynkin diagram symmetry that relates complex pairs.
pub fn conjugate(r: &Irrep) -> Irrep {
    let l = &r.label;
    let n = l.len();
    let label: Label = match (r.algebra.class(), n) {
        (Class::A, _) => l.iter().rev().copied().collect(),
        (Class::D, n) if n % 2 == 1 => {
            let mut v = l.clone();
            v.swap(n - 2, n - 1);
            v
        }
        (Class::E, 6) => [l[4], l[3], l[2], l[1], l[0], l[5]].into_iter().collect(),
        _ => l.clone(),
    };
    Irrep { algebra: r.algebra, label }
}

fn digit_offset(a: AlgebraId) -> i32 {
    match a.class() {
        Class::A | Class::B | Class::C | Class::D => i32::from(a.rank() <= 4),
        Class::E if a.rank() == 6 => 1,
        Class::F => 1,
        Class::G => 3,
        _ => 0,
    }
}

static BY_DIM: Lazy<Memo<(AlgebraId, u64, i32), Vec<Label>>> = Lazy::new(Memo::new);

/// All irreps with the given dimension and every Dynkin digit at most `max_digit`.
pub fn irreps_by_dim(a: AlgebraId, d: u64, max_digit: i32) -> Result<Vec<Irrep>> {
    Ok(labels_by_dim(a, d, max_digit)?
        .iter()
        .map(|l| Irrep { algebra: a, label: l.clone() })
        .collect())
}

fn labels_by_dim(a: AlgebraId, d: u64, cap: i32) -> Result<Arc<Vec<Label>>> {
    BY_DIM.get_or_try(&(a, d, cap), || {
        let coeffs = dim_coeffs(a)?;
        let n = a.rank();
        let mut out = Vec::new();
        let mut label: Label = std::iter::repeat_n(0, n).collect();
        // The dimension strictly grows with every digit, so a prefix whose
        // completion by zeros already exceeds `d` is pruned.
        fn rec(coeffs: &[(Vec<i64>, i64)], label: &mut Label, pos: usize, cap: i32, d: u64, out: &mut Vec<Label>) {
            if pos == label.len() {
                if dim_u128(coeffs, label) == Some(d as u128) {
                    out.push(label.clone());
                }
                return;
            }
            for v in 0..=cap {
                label[pos] = v;
                match dim_u128(coeffs, label) {
                    Some(x) if x <= d as u128 => rec(coeffs, label, pos + 1, cap, d, out),
                    _ => break,
                }
            }
            label[pos] = 0;
        }
        rec(&coeffs, &mut label, 0, cap, d, &mut out);
        Ok(out)
    })
}

/// All irreps with dimension at most `max_dim`, in display order.
pub fn irreps_up_to_dim(a: AlgebraId, max_dim: u64) -> Result<Vec<Irrep>> {
    let coeffs = dim_coeffs(a)?;
    let mut out = Vec::new();
    let mut label: Label = std::iter::repeat_n(0, a.rank()).collect();
    fn rec(coeffs: &[(Vec<i64>, i64)], label: &mut Label, pos: usize, max: u64, out: &mut Vec<Label>) {
        if pos == label.len() {
            out.push(label.clone());
            return;
        }
        let mut v = 0;
        loop {
            label[pos] = v;
            match dim_u128(coeffs, label) {
                Some(x) if x <= max as u128 => rec(coeffs, label, pos + 1, max, out),
                _ => break,
            }
            v += 1;
        }
        label[pos] = 0;
    }
    if max_dim > 0 {
        rec(&coeffs, &mut label, 0, max_dim, &mut out);
    }
    let mut irreps: Vec<Irrep> = out.into_iter().map(|l| Irrep { algebra: a, label: l }).collect();
    irreps.sort_by(display_cmp);
    Ok(irreps)
}

/// Candidates of the same dimension grouped by index, each group sorted by
/// congruency ascending then label descending. Outside `SO(8)` a group holds
/// at most two irreps, so every name is distinct.
fn same_dim_groups(r: &Irrep, cap: i32) -> Result<Vec<Vec<Irrep>>> {
    let d = dim_u64(r)?;
    let mut cands = irreps_by_dim(r.algebra, d, cap)?;
    if !cands.contains(r) {
        cands.push(r.clone());
    }
    let mut keyed: Vec<(Q, Irrep)> = cands.into_iter().map(|c| Ok((index(&c)?, c))).collect::<Result<_>>()?;
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    let mut groups: Vec<Vec<Irrep>> = Vec::new();
    let mut last: Option<Q> = None;
    for (ix, c) in keyed {
        if last.as_ref() == Some(&ix) {
            groups.last_mut().expect("group").push(c);
        } else {
            groups.push(vec![c]);
            last = Some(ix);
        }
    }
    for g in &mut groups {
        g.sort_by(|x, y| {
            congruency_class(x)
                .values
                .cmp(&congruency_class(y).values)
                .then_with(|| y.label.cmp(&x.label))
        });
    }
    if r.algebra == AlgebraId::d(4) {
        return Ok(groups);
    }
    Ok(groups.into_iter().flat_map(|g| if g.len() > 2 { split_conjugate_pairs(g) } else { vec![g] }).collect())
}

/// Image under the diagram automorphism that relates named pairs: conjugation,
/// and for `SO(2n)` the spinor-node swap at every rank.
fn related(r: &Irrep) -> Irrep {
    let n = r.label.len();
    if r.algebra.class() == Class::D {
        let mut label = r.label.clone();
        label.swap(n - 2, n - 1);
        return Irrep { algebra: r.algebra, label };
    }
    conjugate(r)
}

/// Splits a same-index group of three or more into related pairs, kept in
/// group order, so that e.g. the two conjugate pairs of `SU(4)` at dimension
/// 2860 receive distinct primes.
fn split_conjugate_pairs(group: Vec<Irrep>) -> Vec<Vec<Irrep>> {
    let mut classes: Vec<Vec<Irrep>> = Vec::new();
    for x in &group {
        if classes.iter().any(|c| c.contains(x)) {
            continue;
        }
        let cx = related(x);
        let mut class = vec![x.clone()];
        if cx != *x && group.contains(&cx) {
            class.push(cx);
        }
        class.sort_by_key(|m| group.iter().position(|g| g == m));
        classes.push(class);
    }
    classes
}

fn name_cap(r: &Irrep) -> i32 {
    r.label.iter().copied().max().unwrap_or(0) + digit_offset(r.algebra)
}

/// Dimensional name following the prime, bar and `SO(8)` subscript rules.
pub fn dim_name(r: &Irrep) -> Result<DimName> {
    let groups = same_dim_groups(r, name_cap(r))?;
    let gi = groups.iter().position(|g| g.contains(r)).expect("irrep is among its candidates");
    let pos = groups[gi].iter().position(|x| x == r).expect("member");
    let is_so8 = r.algebra == AlgebraId::d(4);
    // The tables name the SU(3) sextet ⟨20⟩ unbarred against the congruency rule.
    let sextet = r.algebra == AlgebraId::a(2) && matches!(r.label.as_slice(), [2, 0] | [0, 2]);
    Ok(DimName {
        dim: dim(r)?,
        n_primes: gi as u32,
        barred: !is_so8 && ((pos > 0) != sextet),
        subscript: if is_so8 { so8_subscript(r, &groups[gi])? } else { None },
    })
}

fn so8_subscript(r: &Irrep, group: &[Irrep]) -> Result<Option<String>> {
    if group.len() == 1 {
        return Ok(None);
    }
    let c = congruency_class(r);
    if c.is_zero() {
        let max = r.label.iter().copied().max().unwrap_or(0);
        for k in 1..=max {
            let reduced = Irrep { algebra: r.algebra, label: r.label.iter().map(|&x| (x - k).max(0)).collect() };
            if reduced.label.iter().all(|&x| x == 0) {
                break;
            }
            if !congruency_class(&reduced).is_zero() {
                let groups = same_dim_groups(&reduced, name_cap(&reduced))?;
                let g = groups.iter().find(|g| g.contains(&reduced)).expect("member");
                return so8_subscript(&reduced, g);
            }
        }
        return Ok(None);
    }
    let same = group.iter().filter(|x| congruency_class(x) == c).count();
    if same == 1 {
        return Ok(Some(
            match (c.values[0], c.values[1]) {
                (1, 0) => "s",
                (0, 2) => "v",
                _ => "c",
            }
            .to_string(),
        ));
    }
    let mut letters: Vec<(i32, char)> = [(0, 'v'), (2, 'c'), (3, 's')]
        .iter()
        .filter(|(i, _)| r.label[*i] > 0)
        .map(|&(i, ch)| (r.label[i], ch))
        .collect();
    letters.sort_by_key(|x| std::cmp::Reverse(x.0));
    Ok(Some(letters.iter().map(|x| x.1).collect()))
}

/// Irrep with the given dimensional name among labels with digits up to `max_digit`.
pub fn irrep_by_name(a: AlgebraId, name: &DimName, max_digit: i32) -> Result<Irrep> {
    let not_found = || Error::IrrepNotFound { name: name.to_string(), algebra: a.to_string(), max_digit: max_digit as u32 };
    let d = name.dim.to_u64().ok_or_else(not_found)?;
    for c in irreps_by_dim(a, d, max_digit)? {
        if &dim_name(&c)? == name {
            return Ok(c);
        }
    }
    Err(not_found())
}

/// Row lengths of the Young tableau of an `SU(N)` irrep.
pub fn young_shape(r: &Irrep) -> Result<Vec<u32>> {
    if r.algebra.class() != Class::A {
        return Err(Error::InvalidInput(format!("Young tableaux need an SU(N) irrep, got {}", r.algebra)));
    }
    let mut rows = Vec::new();
    let mut s: i64 = 0;
    for &x in r.label.iter().rev() {
        s += x as i64;
        rows.push(s as u32);
    }
    rows.reverse();
    rows.retain(|&x| x > 0);
    Ok(rows)
}

/// Irreps with a single unit Dynkin digit.
pub fn basic_irreps(a: AlgebraId) -> Result<Vec<Irrep>> {
    defining_data(a)?;
    Ok((0..a.rank())
        .map(|i| {
            let mut l: Label = std::iter::repeat_n(0, a.rank()).collect();
            l[i] = 1;
            Irrep { algebra: a, label: l }
        })
        .collect())
}

/// Display order: dimension, index, then unbarred before barred.
pub fn display_cmp(x: &Irrep, y: &Irrep) -> Ordering {
    let key = |r: &Irrep| {
        let n = dim_name(r).ok();
        (
            dim(r).unwrap_or_default(),
            index(r).unwrap_or_else(|_| Q::zero()),
            n.as_ref().map(|n| n.barred).unwrap_or(false),
            n.and_then(|n| n.subscript),
        )
    };
    key(x).cmp(&key(y)).then_with(|| y.label.cmp(&x.label))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ir(a: AlgebraId, l: &[i32]) -> Irrep {
        Irrep::new(a, l).unwrap()
    }

    #[test]
    fn dims_and_indices() {
        let a4 = AlgebraId::a(4);
        assert_eq!(dim(&ir(a4, &[0, 0, 1, 1])).unwrap(), BigUint::from(40u32));
        assert_eq!(index(&ir(a4, &[0, 0, 1, 1])).unwrap(), q(22));
        assert_eq!(index(&ir(AlgebraId::a(1), &[2])).unwrap(), q(4));
        assert_eq!(dim(&ir(AlgebraId::e(8), &[0, 0, 0, 0, 0, 0, 1, 0])).unwrap(), BigUint::from(248u32));
        assert_eq!(normalized_index(&ir(AlgebraId::e(8), &[0, 0, 0, 0, 0, 0, 1, 0])).unwrap(), q(1));
        assert_eq!(normalized_index(&ir(AlgebraId::e(6), &[1, 0, 0, 0, 0, 0])).unwrap(), q(1));
        assert_eq!(normalized_index(&ir(AlgebraId::e(7), &[0, 0, 0, 0, 0, 1, 0])).unwrap(), q(1));
    }

    #[test]
    fn congruencies() {
        assert_eq!(congruency_class(&ir(AlgebraId::a(4), &[0, 1, 0, 0])).values, vec![2]);
        assert_eq!(congruency_class(&ir(AlgebraId::d(4), &[1, 0, 0, 0])).values, vec![0, 2]);
        assert_eq!(congruency_class(&ir(AlgebraId::d(4), &[0, 0, 1, 0])).values, vec![1, 2]);
        assert_eq!(congruency_class(&ir(AlgebraId::d(4), &[0, 0, 0, 1])).values, vec![1, 0]);
    }

    #[test]
    fn names() {
        let a4 = AlgebraId::a(4);
        let n = dim_name(&ir(a4, &[0, 0, 2, 1])).unwrap();
        assert_eq!((n.n_primes, n.barred), (1, true));
        let n = dim_name(&ir(a4, &[0, 1, 0, 2])).unwrap();
        assert_eq!((n.n_primes, n.barred), (0, true));
        let n = dim_name(&ir(AlgebraId::d(4), &[2, 0, 1, 0])).unwrap();
        assert_eq!(n.subscript.as_deref(), Some("vc"));
        let n = dim_name(&ir(AlgebraId::g2(), &[0, 2])).unwrap();
        assert_eq!((n.dim.to_u32().unwrap(), n.n_primes), (77, 1));
        let n = dim_name(&ir(AlgebraId::d(4), &[2, 0, 2, 0])).unwrap();
        assert_eq!(n.to_string(), "840'_s");
        let n = dim_name(&ir(AlgebraId::d(4), &[0, 0, 0, 2])).unwrap();
        assert_eq!(n.to_string(), "35_s");
    }

    #[test]
    fn by_dim_and_by_name() {
        let a4 = AlgebraId::a(4);
        let mut got: Vec<Vec<i32>> = irreps_by_dim(a4, 70, 4).unwrap().iter().map(|r| r.label.to_vec()).collect();
        got.sort();
        assert_eq!(got, vec![vec![0, 0, 0, 4], vec![1, 0, 0, 2], vec![2, 0, 0, 1], vec![4, 0, 0, 0]]);
        let seventy = DimName { dim: BigUint::from(70u32), n_primes: 1, barred: false, subscript: None };
        assert_eq!(irrep_by_name(a4, &seventy, 4).unwrap().label.as_slice(), &[0, 0, 0, 4]);
        assert!(matches!(irrep_by_name(a4, &seventy, 3), Err(Error::IrrepNotFound { .. })));
        let eight = DimName::plain(8);
        assert_eq!(irrep_by_name(AlgebraId::a(2), &eight, 3).unwrap().label.as_slice(), &[1, 1]);
    }

    #[test]
    fn young() {
        assert_eq!(young_shape(&ir(AlgebraId::a(4), &[1, 2, 0, 1])).unwrap(), vec![4, 3, 1, 1]);
        let dims: Vec<u64> = basic_irreps(AlgebraId::a(5)).unwrap().iter().map(|r| dim_u64(r).unwrap()).collect();
        assert_eq!(dims, vec![6, 15, 20, 15, 6]);
    }
}
