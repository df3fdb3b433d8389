//! Tensor product decomposition: the dominant-weight sieve and, for `SU(N)`,
//! the Littlewood-Richardson rule on Young tableaux.

use crate::algebra_core::{defining_data, AlgebraId, Class, DefiningData, Label, Vector};
use crate::error::{Error, Result};
use crate::irrep_props::{display_cmp, product_dim, dim, Part, ProductIrrep};
use crate::rational::Q;
use crate::weights::{all_weights, dom_system, Irrep, WeightTable};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

/// Decomposition into irreps with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepSum<T> {
    pub terms: Vec<(T, u64)>,
}

impl<T> IrrepSum<T> {
    pub fn total_count(&self) -> u64 {
        self.terms.iter().map(|t| t.1).sum()
    }
}

impl IrrepSum<Irrep> {
    fn from_map(map: HashMap<Irrep, u64>) -> Self {
        let mut terms: Vec<(Irrep, u64)> = map.into_iter().filter(|t| t.1 > 0).collect();
        terms.sort_by(|a, b| display_cmp(&a.0, &b.0));
        IrrepSum { terms }
    }

    /// `Σ m_i dim(R_i)`.
    pub fn dim(&self) -> Result<BigUint> {
        self.terms.iter().try_fold(BigUint::zero(), |s, (r, m)| Ok(s + dim(r)? * *m))
    }
}

/// Display order of product irreps: sum of factor dimensions, then factor
/// by factor with the larger Dynkin label first.
pub fn product_display_cmp(x: &ProductIrrep, y: &ProductIrrep) -> Ordering {
    let sum = |p: &ProductIrrep| p.irreps().map(|r| dim(r).unwrap_or_default()).sum::<BigUint>();
    sum(x).cmp(&sum(y)).then_with(|| {
        for (a, b) in x.parts.iter().zip(&y.parts) {
            let o = match (a, b) {
                (Part::Irrep(a), Part::Irrep(b)) => b.label.cmp(&a.label),
                (Part::Charge(a), Part::Charge(b)) => b.cmp(a),
                _ => Ordering::Equal,
            };
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    })
}

impl IrrepSum<ProductIrrep> {
    pub(crate) fn from_map(map: HashMap<ProductIrrep, u64>) -> Self {
        let mut terms: Vec<(ProductIrrep, u64)> = map.into_iter().filter(|t| t.1 > 0).collect();
        terms.sort_by(|a, b| product_display_cmp(&a.0, &b.0));
        IrrepSum { terms }
    }

    pub fn dim(&self) -> Result<BigUint> {
        self.terms.iter().try_fold(BigUint::zero(), |s, (r, m)| Ok(s + product_dim(r)? * *m))
    }
}

fn same_algebra(irreps: &[Irrep]) -> Result<AlgebraId> {
    let a = irreps
        .first()
        .ok_or_else(|| Error::InvalidInput("no irreps to multiply".into()))?
        .algebra;
    if let Some(r) = irreps.iter().find(|r| r.algebra != a) {
        return Err(Error::AlgebraMismatch(a.to_string(), r.algebra.to_string()));
    }
    Ok(a)
}

fn fold(irreps: &[Irrep], pair: impl Fn(&Irrep, &Irrep) -> Result<HashMap<Irrep, u64>>) -> Result<IrrepSum<Irrep>> {
    same_algebra(irreps)?;
    let mut acc: HashMap<Irrep, u64> = HashMap::new();
    acc.insert(irreps[0].clone(), 1);
    for r in &irreps[1..] {
        let mut next: HashMap<Irrep, u64> = HashMap::new();
        for (t, m) in acc {
            for (u, k) in pair(&t, r)? {
                *next.entry(u).or_default() += m * k;
            }
        }
        acc = next;
    }
    Ok(IrrepSum::<Irrep>::from_map(acc))
}

/// Decomposes a product of irreps of one simple algebra, folding left.
/// `SU(N)` products use Young tableaux, all others the dominant-weight sieve.
pub fn decompose_product(irreps: &[Irrep]) -> Result<IrrepSum<Irrep>> {
    let a = same_algebra(irreps)?;
    if a.class() == Class::A {
        fold(irreps, young_pair)
    } else {
        fold(irreps, sieve_pair)
    }
}

/// Dominant-weight sieve for any algebra.
pub fn decompose_product_generic(irreps: &[Irrep]) -> Result<IrrepSum<Irrep>> {
    fold(irreps, sieve_pair)
}

/// Young tableau path for two `SU(N)` irreps.
pub fn decompose_product_young(r1: &Irrep, r2: &Irrep) -> Result<IrrepSum<Irrep>> {
    if r1.algebra.class() != Class::A {
        return Err(Error::InvalidInput(format!("Young tableaux need SU(N), got {}", r1.algebra)));
    }
    fold(&[r1.clone(), r2.clone()], young_pair)
}

fn height_key(dd: &DefiningData, l: &[i32]) -> i64 {
    dd.height_scaled(l)
}

fn sorted_table(dd: &DefiningData, map: HashMap<Label, i128>) -> Vec<(Label, i128)> {
    let mut v: Vec<(Label, i128)> = map.into_iter().filter(|e| e.1 != 0).collect();
    v.sort_by(|a, b| height_key(dd, &b.0).cmp(&height_key(dd, &a.0)).then_with(|| a.0.cmp(&b.0)));
    v
}

/// Tally of the dominant weights among all sums `w1 + w2`.
fn dominant_sums(r1: &Irrep, r2: &Irrep) -> Result<HashMap<Label, i128>> {
    let (small, big) = if dim(r1)? <= dim(r2)? { (r1, r2) } else { (r2, r1) };
    let w1 = all_weights(big)?;
    let w2 = all_weights(small)?;
    let mut tally: HashMap<Label, i128> = HashMap::new();
    for (a, ma) in &w2 {
        for (b, mb) in &w1 {
            if a.iter().zip(b).all(|(x, y)| x + y >= 0) {
                let s: Label = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *tally.entry(s).or_default() += ma * mb;
            }
        }
    }
    Ok(tally)
}

/// Extracts irreps from a dominant-weight tally, highest first.
fn sieve(a: AlgebraId, table: HashMap<Label, i128>) -> Result<HashMap<Irrep, u64>> {
    let dd = defining_data(a)?;
    let order = sorted_table(&dd, table.clone());
    let mut left = table;
    let mut out = HashMap::new();
    for (l, _) in order {
        let c = left.get(&l).copied().unwrap_or(0);
        if c < 0 {
            return Err(Error::Internal(format!("negative residue {c} at {l:?}")));
        }
        if c == 0 {
            continue;
        }
        let r = Irrep { algebra: a, label: l };
        let s = dom_system(&r)?;
        let small = s.small.as_ref().ok_or_else(|| Error::Internal("multiplicity overflow".into()))?;
        for (w, m) in s.labels.iter().zip(small) {
            let e = left.get_mut(w).ok_or_else(|| Error::Internal(format!("weight {w:?} missing from the tally")))?;
            *e -= c * m;
        }
        out.insert(r, c as u64);
    }
    if let Some((l, c)) = left.iter().find(|e| *e.1 != 0) {
        return Err(Error::Internal(format!("residue {c} left at {l:?}")));
    }
    Ok(out)
}

fn sieve_pair(r1: &Irrep, r2: &Irrep) -> Result<HashMap<Irrep, u64>> {
    sieve(r1.algebra, dominant_sums(r1, r2)?)
}

fn to_table(a: AlgebraId, rows: Vec<(Label, i128)>) -> Result<WeightTable> {
    let entries = rows
        .into_iter()
        .map(|(l, c)| Ok((Vector::weight(a, &l)?, BigUint::from(c as u128))))
        .collect::<Result<_>>()?;
    Ok(WeightTable { algebra: a, entries })
}

/// Keeps the dominant weights and tallies them, highest first.
pub fn dominant_weights_and_mul(a: AlgebraId, weights: &[Vector]) -> Result<WeightTable> {
    let dd = defining_data(a)?;
    let mut map: HashMap<Label, i128> = HashMap::new();
    for w in weights {
        if w.algebra != a {
            return Err(Error::AlgebraMismatch(a.to_string(), w.algebra.to_string()));
        }
        let l = w.to_label().ok_or_else(|| Error::InvalidInput(format!("{w} is not integral")))?;
        if l.iter().all(|&x| x >= 0) {
            *map.entry(l).or_default() += 1;
        }
    }
    to_table(a, sorted_table(&dd, map))
}

/// Takes the head of a table as a highest weight and subtracts its weight system.
pub fn sort_out_irrep(table: &WeightTable) -> Result<(WeightTable, Irrep)> {
    let a = table.algebra;
    let dd = defining_data(a)?;
    let (head, count) = table
        .entries
        .first()
        .ok_or_else(|| Error::InvalidInput("empty weight table".into()))?;
    let c = count.to_i128().ok_or_else(|| Error::Internal("count overflow".into()))?;
    if c <= 0 {
        return Err(Error::InvalidInput("head entry has no positive count".into()));
    }
    let mut map: HashMap<Label, i128> = table
        .entries
        .iter()
        .map(|(v, m)| Ok((v.to_label().ok_or_else(|| Error::InvalidInput("non-integral weight".into()))?, m.to_i128().unwrap_or(0))))
        .collect::<Result<_>>()?;
    let label = head.to_label().expect("checked above");
    let r = Irrep::new(a, &label)?;
    let s = dom_system(&r)?;
    for (w, m) in s.labels.iter().zip(&s.mults) {
        let m = m.to_i128().ok_or_else(|| Error::Internal("multiplicity overflow".into()))?;
        let e = map.entry(w.clone()).or_default();
        *e -= m;
        if *e < 0 {
            return Err(Error::Internal(format!("negative residue at {w:?}")));
        }
    }
    Ok((to_table(a, sorted_table(&dd, map))?, r))
}

fn shape(label: &[i32]) -> Vec<i32> {
    let mut rows = Vec::with_capacity(label.len());
    let mut s = 0;
    for &x in label.iter().rev() {
        s += x;
        rows.push(s);
    }
    rows.reverse();
    rows
}

/// Adds the rows of `mu` as letters `1, 2, …` to `lam`, each letter row a
/// horizontal strip, pruning every placement that breaks the lattice word.
fn young_pair(r1: &Irrep, r2: &Irrep) -> Result<HashMap<Irrep, u64>> {
    let a = r1.algebra;
    let n_rows = a.rank() + 1;
    let boxes = |r: &Irrep| r.label.iter().enumerate().map(|(i, &x)| (i as i64 + 1) * x as i64).sum::<i64>();
    let (left, right) = if boxes(r1) >= boxes(r2) { (r1, r2) } else { (r2, r1) };
    let mut lam = shape(&left.label);
    lam.push(0);
    let mu: Vec<i32> = shape(&right.label).into_iter().filter(|&x| x > 0).collect();
    let mut out: HashMap<Irrep, u64> = HashMap::new();
    // counts[k][r]: number of letter k in row r.
    let mut counts: Vec<Vec<i32>> = Vec::new();
    place(&mut lam, &mu, 0, n_rows, &mut counts, &mut |sh: &[i32]| {
        let label: Label = (0..n_rows - 1).map(|i| sh[i] - sh[i + 1]).collect();
        *out.entry(Irrep { algebra: a, label }).or_default() += 1;
    });
    Ok(out)
}

fn place(lam: &mut Vec<i32>, mu: &[i32], k: usize, n_rows: usize, counts: &mut Vec<Vec<i32>>, emit: &mut dyn FnMut(&[i32])) {
    if k == mu.len() {
        emit(lam);
        return;
    }
    let old = lam.clone();
    let mut add = vec![0i32; n_rows];
    strip(&old, mu[k], 0, n_rows, &mut add, k, counts, &mut |add: &[i32], counts: &mut Vec<Vec<i32>>| {
        let mut new = old.clone();
        for (x, a) in new.iter_mut().zip(add) {
            *x += a;
        }
        counts.push(add.to_vec());
        place(&mut new, mu, k + 1, n_rows, counts, emit);
        counts.pop();
    });
    *lam = old;
}

#[allow(clippy::too_many_arguments, clippy::type_complexity)]
fn strip(
    old: &[i32],
    left: i32,
    row: usize,
    n_rows: usize,
    add: &mut Vec<i32>,
    k: usize,
    counts: &mut Vec<Vec<i32>>,
    f: &mut dyn FnMut(&[i32], &mut Vec<Vec<i32>>),
) {
    if left == 0 {
        f(add, counts);
        return;
    }
    if row == n_rows {
        return;
    }
    let cap = if row == 0 { left } else { (old[row - 1] - old[row]).min(left) };
    for c in (0..=cap).rev() {
        add[row] = c;
        // Lattice condition between letters k-1 and k through this row.
        let ok = k == 0 || {
            let seen_k: i32 = add[..=row].iter().sum();
            let seen_prev: i32 = counts[k - 1][..row].iter().sum();
            seen_k <= seen_prev
        };
        if ok {
            strip(old, left - c, row + 1, n_rows, add, k, counts, f);
        }
    }
    add[row] = 0;
}

/// Componentwise decomposition of two irreps of the same product algebra.
pub fn decompose_product_of_product_irreps(p1: &ProductIrrep, p2: &ProductIrrep) -> Result<IrrepSum<ProductIrrep>> {
    if p1.algebra() != p2.algebra() {
        return Err(Error::AlgebraMismatch(p1.algebra().to_string(), p2.algebra().to_string()));
    }
    let mut acc: Vec<(Vec<Part>, u64)> = vec![(Vec::new(), 1)];
    for (a, b) in p1.parts.iter().zip(&p2.parts) {
        let options: Vec<(Part, u64)> = match (a, b) {
            (Part::Charge(x), Part::Charge(y)) => vec![(Part::Charge(x + y), 1)],
            (Part::Irrep(x), Part::Irrep(y)) => decompose_product(&[x.clone(), y.clone()])?
                .terms
                .into_iter()
                .map(|(r, m)| (Part::Irrep(r), m))
                .collect(),
            _ => return Err(Error::AlgebraMismatch(p1.algebra().to_string(), p2.algebra().to_string())),
        };
        acc = acc
            .into_iter()
            .flat_map(|(parts, m)| {
                options.iter().map(move |(p, k)| {
                    let mut v = parts.clone();
                    v.push(p.clone());
                    (v, m * k)
                })
            })
            .collect();
    }
    let mut map: HashMap<ProductIrrep, u64> = HashMap::new();
    for (parts, m) in acc {
        *map.entry(ProductIrrep::new(parts)).or_default() += m;
    }
    Ok(IrrepSum::<ProductIrrep>::from_map(map))
}

/// `Σ m_i l(R_i)` and `Σ m_i dim(R_i)` of a decomposition.
pub fn sum_rule_totals(sum: &IrrepSum<Irrep>) -> Result<(BigUint, Q)> {
    let mut d = BigUint::zero();
    let mut l = Q::zero();
    for (r, m) in &sum.terms {
        d += dim(r)? * *m;
        l += crate::irrep_props::index(r)? * Q::from_integer((*m).into());
    }
    Ok((d, l))
}
