//! Root systems built from simple-root orbits.

use crate::algebra_core::{convert_basis, defining_data, AlgebraId, Basis, Kind, Label, Vector};
use crate::error::Result;
use crate::memo::Memo;
use crate::rational::Q;
use crate::weyl::{orbit_of_dominant, to_dominant_label};
use num_traits::{Signed, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeSet;
use std::sync::Arc;

/// All roots of a simple algebra, zero roots included, by decreasing height.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub algebra: AlgebraId,
    pub roots: Vec<Vector>,
    pub n_positive: usize,
    pub(crate) labels: Vec<Label>,
    pub(crate) alpha: Vec<Vec<i64>>,
}

impl RootSystem {
    pub(crate) fn positive_labels(&self) -> &[Label] {
        &self.labels[..self.n_positive]
    }
    pub(crate) fn positive_alpha(&self) -> &[Vec<i64>] {
        &self.alpha[..self.n_positive]
    }
}

fn build(a: AlgebraId) -> Result<RootSystem> {
    let dd = defining_data(a)?;
    let mut set: BTreeSet<Label> = BTreeSet::new();
    for i in 0..a.rank() {
        let mut s: Label = dd.cartan[i].iter().map(|&x| x as i32).collect();
        to_dominant_label(&dd, &mut s);
        set.extend(orbit_of_dominant(&dd, &s).iter().cloned());
    }
    let mut nonzero: Vec<(Vec<i64>, Label)> = set
        .into_iter()
        .map(|l| (dd.alpha_exact(&l).expect("roots lie in the root lattice"), l))
        .collect();
    nonzero.sort_by(|(ca, la), (cb, lb)| {
        let ha: i64 = ca.iter().sum();
        let hb: i64 = cb.iter().sum();
        hb.cmp(&ha).then_with(|| lb.cmp(la))
    });
    let n_positive = nonzero.len() / 2;
    let zero: Label = std::iter::repeat_n(0, a.rank()).collect();
    let mut entries = nonzero[..n_positive].to_vec();
    entries.extend(std::iter::repeat_n((vec![0i64; a.rank()], zero), a.rank()));
    entries.extend(nonzero[n_positive..].iter().cloned());
    let roots = entries
        .iter()
        .map(|(_, l)| Vector::root(a, l))
        .collect::<Result<Vec<_>>>()?;
    let (alpha, labels) = entries.into_iter().unzip();
    Ok(RootSystem { algebra: a, roots, n_positive, labels, alpha })
}

static ROOTS: Lazy<Memo<AlgebraId, RootSystem>> = Lazy::new(Memo::new);

/// Cached root system.
pub fn root_system(a: AlgebraId) -> Result<Arc<RootSystem>> {
    ROOTS.get_or_try(&a, || build(a))
}

/// Sum of α-basis coordinates.
pub fn height(v: &Vector) -> Result<Q> {
    let c = convert_basis(v, Basis::Alpha)?;
    Ok(c.coords.iter().fold(Q::zero(), |s, x| s + x))
}

pub fn highest_root(a: AlgebraId) -> Result<Vector> {
    Ok(root_system(a)?.roots[0].clone())
}

pub fn positive_roots(a: AlgebraId) -> Result<Vec<Vector>> {
    let rs = root_system(a)?;
    Ok(rs.roots[..rs.n_positive].to_vec())
}

pub fn num_positive_roots(a: AlgebraId) -> Result<usize> {
    Ok(root_system(a)?.n_positive)
}

/// True iff all α-coordinates are non-negative and not all zero.
pub fn is_positive_root(v: &Vector) -> Result<bool> {
    let c = convert_basis(v, Basis::Alpha)?;
    Ok(c.coords.iter().all(|x| !x.is_negative()) && c.coords.iter().any(|x| !x.is_zero()))
}

/// Most negative root `−γ` in the ω-basis.
pub fn lowest_root(a: AlgebraId) -> Result<Vector> {
    let h = highest_root(a)?;
    Vector::new(a, Basis::Omega, Kind::Root, h.coords.iter().map(|x| -x).collect())
}

/// One line per height, highest first, roots separated by spaces.
pub fn spindle(a: AlgebraId) -> Result<String> {
    let rs = root_system(a)?;
    let mut lines: Vec<String> = Vec::new();
    let mut last: Option<i64> = None;
    for (l, c) in rs.labels.iter().zip(&rs.alpha) {
        let h: i64 = c.iter().sum();
        let v = Vector::root(a, l)?.to_string();
        if last == Some(h) {
            let s = lines.last_mut().expect("line exists");
            s.push(' ');
            s.push_str(&v);
        } else {
            lines.push(v);
            last = Some(h);
        }
    }
    Ok(lines.join("\n"))
}
