//! Weight systems of irreps via the modified Freudenthal formula.
//!
//! For a dominant weight `λ` with stabilizer indices `T = {i | λ_i = 0}` the
//! sum over positive roots collapses onto representatives `ξ` of the orbits of
//! `⟨W_T, −1⟩` on the roots, weighted by the orbit sizes `|o|`.

use crate::algebra_core::{defining_data, AlgebraId, DefiningData, Label, Vector};
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::roots::root_system;
use crate::weyl::{orbit_of_dominant, to_dominant_label};
use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedAdd, CheckedMul, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

/// Irreducible representation given by the Dynkin label of its highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Irrep {
    pub algebra: AlgebraId,
    pub label: Label,
}

impl Irrep {
    pub fn new(algebra: AlgebraId, label: &[i32]) -> Result<Self> {
        if algebra.is_u1() {
            return Err(Error::InvalidInput("U1 irreps are charges, not Dynkin labels".into()));
        }
        if label.len() != algebra.rank() {
            return Err(Error::InvalidInput(format!(
                "Dynkin label of length {} given for {} of rank {}",
                label.len(),
                algebra.cartan_name(),
                algebra.rank()
            )));
        }
        if label.iter().any(|&x| x < 0) {
            return Err(Error::InvalidInput("Dynkin labels of irreps are non-negative".into()));
        }
        Ok(Irrep { algebra, label: label.iter().copied().collect() })
    }

    pub fn trivial(algebra: AlgebraId) -> Self {
        Irrep { algebra, label: std::iter::repeat_n(0, algebra.rank()).collect() }
    }

    pub fn highest_weight(&self) -> Vector {
        Vector::weight(self.algebra, &self.label).expect("label length checked")
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.label.iter().map(|x| x.to_string()).collect();
        write!(f, "{}({})", self.algebra.cartan_name(), body.join(","))
    }
}

/// Dominant weights of an irrep with their multiplicities, highest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub algebra: AlgebraId,
    pub entries: Vec<(Vector, BigUint)>,
}

/// Stabilizer indices of a dominant weight and the `(ξ, |o|)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerData {
    /// 1-based indices with vanishing Dynkin digit.
    pub t_set: Vec<usize>,
    pub xis: Vec<(Vector, u64)>,
}

#[derive(Debug)]
pub(crate) struct Xi {
    pub label: Label,
    pub weight: i64,
}

/// Cached dominant weight system.
#[derive(Debug)]
pub(crate) struct DomSystem {
    pub labels: Vec<Label>,
    pub mults: Vec<BigUint>,
    /// Machine-size copy of `mults` when every entry fits.
    pub small: Option<Vec<i128>>,
    pub index: HashMap<Label, usize>,
}

impl DomSystem {
    pub fn mult_of(&self, l: &[i32]) -> Option<&BigUint> {
        self.index.get(l).map(|&i| &self.mults[i])
    }
}

pub(crate) fn level_of(dd: &DefiningData, top: &[i32], w: &[i32]) -> Option<i64> {
    let diff: Vec<i32> = top.iter().zip(w).map(|(a, b)| a - b).collect();
    let c = dd.alpha_exact(&diff)?;
    c.iter().all(|&x| x >= 0).then(|| c.iter().sum())
}

fn single_dominant(dd: &DefiningData, top: &[i32]) -> Result<Vec<Label>> {
    let rs = root_system(dd.algebra)?;
    let start: Label = top.iter().copied().collect();
    let mut seen: HashSet<Label> = HashSet::new();
    seen.insert(start.clone());
    let mut all = vec![start];
    let mut k = 0;
    while k < all.len() {
        let w = all[k].clone();
        for r in rs.positive_labels() {
            let mut x = w.clone();
            for (a, b) in x.iter_mut().zip(r) {
                *a -= b;
            }
            if x.iter().all(|&v| v >= 0) && !seen.contains(&x) {
                seen.insert(x.clone());
                all.push(x);
            }
        }
        k += 1;
    }
    Ok(all)
}

static XIS: Lazy<Memo<(AlgebraId, u32), Vec<Xi>>> = Lazy::new(Memo::new);

fn t_mask(w: &[i32]) -> u32 {
    w.iter().enumerate().filter(|(_, &x)| x == 0).fold(0, |m, (i, _)| m | (1 << i))
}

pub(crate) fn xis_for(dd: &DefiningData, mask: u32) -> Result<Arc<Vec<Xi>>> {
    XIS.get_or_try(&(dd.algebra, mask), || {
        let rs = root_system(dd.algebra)?;
        let in_t = |i: usize| mask & (1 << i) != 0;
        let mut out = Vec::new();
        for (l, c) in rs.positive_labels().iter().zip(rs.positive_alpha()) {
            if (0..l.len()).any(|i| in_t(i) && l[i] < 0) {
                continue;
            }
            let mut seen: HashSet<Label> = HashSet::new();
            seen.insert(l.clone());
            let mut stack = vec![l.clone()];
            while let Some(x) = stack.pop() {
                for i in (0..x.len()).filter(|&i| in_t(i)) {
                    let mut y = x.clone();
                    dd.reflect_in_place(&mut y, i);
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            let inside = (0..c.len()).all(|i| in_t(i) || c[i] == 0);
            let size = seen.len() as i64;
            out.push(Xi { label: l.clone(), weight: if inside { size } else { 2 * size } });
        }
        Ok(out)
    })
}

trait Acc: Clone + Zero + CheckedAdd + CheckedMul + From<i128> {
    fn div_exact(&self, d: i128) -> Option<Self>;
}

impl Acc for i128 {
    fn div_exact(&self, d: i128) -> Option<Self> {
        (self % d == 0).then(|| self / d)
    }
}

impl Acc for BigInt {
    fn div_exact(&self, d: i128) -> Option<Self> {
        let d = BigInt::from(d);
        (self % &d).is_zero().then(|| self / d)
    }
}

enum Failure {
    Overflow,
    Err(Error),
}

fn freudenthal<N: Acc>(dd: &DefiningData, top: &[i32], labels: &[Label], index: &HashMap<Label, usize>) -> std::result::Result<Vec<N>, Failure> {
    let delta: Vec<i32> = vec![1; top.len()];
    let shifted = |w: &[i32]| -> Vec<i32> { w.iter().zip(&delta).map(|(a, b)| a + b).collect() };
    let tp = shifted(top);
    let top_norm = dd.sp_int(&tp, &tp);
    let mut m: Vec<N> = Vec::with_capacity(labels.len());
    m.push(N::from(1));
    for lam in &labels[1..] {
        let lp = shifted(lam);
        let den = top_norm - dd.sp_int(&lp, &lp);
        let xis = xis_for(dd, t_mask(lam)).map_err(Failure::Err)?;
        let mut num = N::zero();
        for xi in xis.iter() {
            let xx = dd.sp_int(&xi.label, &xi.label);
            let lx = dd.sp_int(lam, &xi.label);
            let mut inner = N::zero();
            let mut mu: Label = lam.clone();
            let mut k: i128 = 0;
            loop {
                k += 1;
                for (a, b) in mu.iter_mut().zip(&xi.label) {
                    *a += b;
                }
                let mut d = mu.clone();
                to_dominant_label(dd, &mut d);
                let Some(&j) = index.get(&d) else { break };
                if j >= m.len() {
                    return Err(Failure::Err(Error::Internal(format!("weight {d:?} not yet resolved"))));
                }
                let sp = N::from(lx + k * xx);
                let t = sp.checked_mul(&m[j]).ok_or(Failure::Overflow)?;
                inner = inner.checked_add(&t).ok_or(Failure::Overflow)?;
            }
            let t = inner.checked_mul(&N::from(xi.weight as i128)).ok_or(Failure::Overflow)?;
            num = num.checked_add(&t).ok_or(Failure::Overflow)?;
        }
        if den <= 0 {
            return Err(Failure::Err(Error::Internal("non-positive Freudenthal denominator".into())));
        }
        let v = num
            .div_exact(den)
            .ok_or_else(|| Failure::Err(Error::Internal(format!("non-integral multiplicity at {lam:?}"))))?;
        m.push(v);
    }
    Ok(m)
}

fn build_system(dd: &DefiningData, top: &[i32]) -> Result<DomSystem> {
    let mut labels = single_dominant(dd, top)?;
    let lev = |l: &Label| level_of(dd, top, l).expect("dominant weight below the highest weight");
    labels.sort_by(|a, b| lev(a).cmp(&lev(b)).then_with(|| b.cmp(a)));
    let index: HashMap<Label, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
    let (mults, small) = match freudenthal::<i128>(dd, top, &labels, &index) {
        Ok(v) => {
            let big = v.iter().map(|x| BigUint::try_from(*x).expect("non-negative multiplicity")).collect();
            (big, Some(v))
        }
        Err(Failure::Err(e)) => return Err(e),
        Err(Failure::Overflow) => match freudenthal::<BigInt>(dd, top, &labels, &index) {
            Ok(v) => {
                let big: Vec<BigUint> = v.iter().map(|x| x.to_biguint().expect("non-negative multiplicity")).collect();
                let small = big.iter().map(|x| x.to_i128()).collect();
                (big, small)
            }
            Err(Failure::Err(e)) => return Err(e),
            Err(Failure::Overflow) => unreachable!("big integers do not overflow"),
        },
    };
    Ok(DomSystem { labels, mults, small, index })
}

static SYSTEMS: Lazy<Memo<(AlgebraId, Label), DomSystem>> = Lazy::new(Memo::new);

pub(crate) fn dom_system(r: &Irrep) -> Result<Arc<DomSystem>> {
    SYSTEMS.get_or_try(&(r.algebra, r.label.clone()), || {
        let dd = defining_data(r.algebra)?;
        build_system(&dd, &r.label)
    })
}

fn check_algebra(w: &Vector, r: &Irrep) -> Result<()> {
    if w.algebra != r.algebra {
        return Err(Error::AlgebraMismatch(w.algebra.to_string(), r.algebra.to_string()));
    }
    Ok(())
}

fn label_of(w: &Vector) -> Result<Label> {
    w.to_label().ok_or_else(|| Error::InvalidInput(format!("{w} is not an integral weight")))
}

/// Number of simple roots subtracted from the highest weight to reach `w`.
pub fn weight_level(w: &Vector, r: &Irrep) -> Result<u64> {
    check_algebra(w, r)?;
    let dd = defining_data(r.algebra)?;
    let l = label_of(w)?;
    level_of(&dd, &r.label, &l)
        .map(|x| x as u64)
        .ok_or_else(|| Error::InvalidInput(format!("{w} is not a weight of {r}")))
}

/// Level of the lowest weight, `2 Σ Λ̄_i` with `Λ̄` the α-coordinates of `Λ`.
pub fn irrep_height(r: &Irrep) -> Result<u64> {
    let dd = defining_data(r.algebra)?;
    Ok((2 * dd.height_scaled(&r.label) / dd.alpha_den) as u64)
}

/// Distinct dominant weights of an irrep, highest first.
pub fn single_dominant_weights(r: &Irrep) -> Result<Vec<Vector>> {
    let s = dom_system(r)?;
    s.labels.iter().map(|l| Vector::weight(r.algebra, l)).collect()
}

/// Stabilizer set and `(ξ, |o|)` pairs of a dominant weight.
pub fn stabilizer_data(w: &Vector) -> Result<StabilizerData> {
    let dd = defining_data(w.algebra)?;
    let l = label_of(w)?;
    if l.iter().any(|&x| x < 0) {
        return Err(Error::InvalidInput(format!("{w} is not dominant")));
    }
    let xis = xis_for(&dd, t_mask(&l))?;
    Ok(StabilizerData {
        t_set: (0..l.len()).filter(|&i| l[i] == 0).map(|i| i + 1).collect(),
        xis: xis
            .iter()
            .map(|x| Ok((Vector::root(w.algebra, &x.label)?, x.weight as u64)))
            .collect::<Result<_>>()?,
    })
}

/// Multiplicity of a weight in an irrep; zero when it is not a weight.
pub fn weight_multiplicity(w: &Vector, r: &Irrep) -> Result<BigUint> {
    check_algebra(w, r)?;
    let dd = defining_data(r.algebra)?;
    let mut l = label_of(w)?;
    to_dominant_label(&dd, &mut l);
    let s = dom_system(r)?;
    Ok(s.mult_of(&l).cloned().unwrap_or_default())
}

pub fn dominant_weight_system(r: &Irrep) -> Result<WeightTable> {
    let s = dom_system(r)?;
    let entries = s
        .labels
        .iter()
        .zip(&s.mults)
        .map(|(l, m)| Ok((Vector::weight(r.algebra, l)?, m.clone())))
        .collect::<Result<_>>()?;
    Ok(WeightTable { algebra: r.algebra, entries })
}

/// All weights with multiplicity expanded, each with its level, sorted by level.
pub fn weight_system(r: &Irrep) -> Result<Vec<(Vector, u64)>> {
    let dd = defining_data(r.algebra)?;
    let mut out = Vec::new();
    for (l, m) in all_weights(r)? {
        let lev = level_of(&dd, &r.label, &l).expect("weight of the irrep") as u64;
        for _ in 0..m {
            out.push((l.clone(), lev));
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    out.into_iter().map(|(l, lev)| Ok((Vector::weight(r.algebra, &l)?, lev))).collect()
}

/// Distinct weights with machine-size multiplicities.
pub(crate) fn all_weights(r: &Irrep) -> Result<Vec<(Label, i128)>> {
    let dd = defining_data(r.algebra)?;
    let s = dom_system(r)?;
    let small = s
        .small
        .as_ref()
        .ok_or_else(|| Error::InvalidInput(format!("multiplicities of {r} exceed machine integers")))?;
    let mut out = Vec::new();
    for (l, &m) in s.labels.iter().zip(small) {
        for w in orbit_of_dominant(&dd, l).iter() {
            out.push((w.clone(), m));
        }
    }
    Ok(out)
}

/// Dimension computed as `Σ m_λ |W λ|` over dominant weights.
#[cfg(test)]
fn dim_by_orbits(r: &Irrep) -> Result<BigUint> {
    let dd = defining_data(r.algebra)?;
    let s = dom_system(r)?;
    Ok(s.labels
        .iter()
        .zip(&s.mults)
        .map(|(l, m)| m * BigUint::from(crate::weyl::orbit_size_of_dominant(&dd, l)))
        .sum())
}

/// Weyl vector `δ = ⟨1,…,1⟩`.
pub fn delta(a: AlgebraId) -> Result<Vector> {
    defining_data(a)?;
    Vector::weight(a, &vec![1; a.rank()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(v: &Vector) -> Vec<i32> {
        v.to_label().unwrap().to_vec()
    }

    #[test]
    fn orbit_sums_give_weyl_dimension() {
        for (a, l) in [(AlgebraId::a(4), vec![0, 0, 1, 1]), (AlgebraId::f4(), vec![1, 0, 0, 1]), (AlgebraId::e(6), vec![1, 1, 0, 0, 0, 0])] {
            let r = Irrep::new(a, &l).unwrap();
            assert_eq!(dim_by_orbits(&r).unwrap(), crate::irrep_props::dim(&r).unwrap());
        }
    }

    #[test]
    fn a4_forty() {
        let a4 = AlgebraId::a(4);
        let r = Irrep::new(a4, &[0, 0, 1, 1]).unwrap();
        let t = dominant_weight_system(&r).unwrap();
        let got: Vec<(Vec<i32>, u32)> = t.entries.iter().map(|(v, m)| (lab(v), m.to_u32().unwrap())).collect();
        assert_eq!(got, vec![(vec![0, 0, 1, 1], 1), (vec![0, 1, 0, 0], 2)]);
        let ws = weight_system(&r).unwrap();
        assert_eq!(ws.len(), 40);
        assert_eq!(irrep_height(&r).unwrap(), 10);
        assert_eq!(ws.last().unwrap().1, 10);
        let mut rows = vec![0; 11];
        for (_, l) in &ws {
            rows[*l as usize] += 1;
        }
        assert_eq!(rows, vec![1, 2, 3, 5, 6, 6, 6, 5, 3, 2, 1]);
    }

    #[test]
    fn a4_xis() {
        let a4 = AlgebraId::a(4);
        let s = stabilizer_data(&Vector::weight(a4, &[0, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!(s.t_set, vec![1, 3, 4]);
        let got: Vec<(Vec<i32>, u64)> = s.xis.iter().map(|(v, o)| (lab(v), *o)).collect();
        assert_eq!(got, vec![(vec![1, 0, 0, 1], 12), (vec![0, -1, 1, 1], 6), (vec![2, -1, 0, 0], 2)]);
    }

    #[test]
    fn small_examples() {
        let g2 = AlgebraId::g2();
        let adj = Irrep::new(g2, &[0, 1]).unwrap();
        assert_eq!(weight_multiplicity(&Vector::weight(g2, &[0, 0]).unwrap(), &adj).unwrap(), BigUint::from(2u32));
        let seven = Irrep::new(g2, &[1, 0]).unwrap();
        let d: Vec<Vec<i32>> = single_dominant_weights(&seven).unwrap().iter().map(lab).collect();
        assert_eq!(d, vec![vec![1, 0], vec![0, 0]]);
        let a1 = Irrep::new(AlgebraId::a(1), &[1]).unwrap();
        let w: Vec<Vec<i32>> = weight_system(&a1).unwrap().iter().map(|(v, _)| lab(v)).collect();
        assert_eq!(w, vec![vec![1], vec![-1]]);
        let e8 = Irrep::new(AlgebraId::e(8), &[0, 0, 0, 0, 0, 0, 1, 0]).unwrap();
        assert_eq!(dim_by_orbits(&e8).unwrap(), BigUint::from(248u32));
    }
}
