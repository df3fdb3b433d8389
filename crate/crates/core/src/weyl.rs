//! Weyl reflections, orbits and the dominant chamber.

use crate::algebra_core::{cartan_components, identify_cartan, submatrix, convert_basis, defining_data, AlgebraId, Basis, Class, DefiningData, Label, Vector};
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::rational::{self, q, Mat, Q};
use num_traits::Signed;
use once_cell::sync::Lazy;
use std::collections::HashSet;
use std::sync::Arc;

/// A full Weyl orbit with its dominant representative.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub dominant: Vector,
    /// Elements in the ω-basis, descending lexicographically.
    pub elements: Vec<Vector>,
    pub size: usize,
}

fn check_index(a: AlgebraId, i: usize) -> Result<()> {
    if i == 0 || i > a.rank() {
        return Err(Error::IndexOutOfRange { index: i, rank: a.rank() });
    }
    Ok(())
}

/// Reflection at the hyperplane orthogonal to the simple root `α_i` (1-based).
pub fn reflect(v: &Vector, i: usize) -> Result<Vector> {
    check_index(v.algebra, i)?;
    let dd = defining_data(v.algebra)?;
    let mut w = convert_basis(v, Basis::Omega)?;
    let c = w.coords[i - 1].clone();
    for (x, &a) in w.coords.iter_mut().zip(&dd.cartan[i - 1]) {
        *x -= &c * q(a);
    }
    convert_basis(&w, v.basis)
}

/// One reflection matrix per simple root, acting on orthogonal coordinates.
pub fn reflection_matrices(a: AlgebraId) -> Result<Vec<Mat>> {
    let dd = defining_data(a)?;
    let m = a.ortho_dim();
    Ok(dd
        .simple_roots_orth
        .iter()
        .zip(&dd.coroots_orth)
        .map(|(r, c)| {
            let mut mat = rational::identity(m);
            for (i, row) in mat.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    *x -= &c[i] * &r[j];
                }
            }
            mat
        })
        .collect())
}

/// True iff all ω-coordinates are non-negative.
pub fn is_dominant(v: &Vector) -> bool {
    match convert_basis(v, Basis::Omega) {
        Ok(w) => w.coords.iter().all(|x| !x.is_negative()),
        Err(_) => false,
    }
}

/// The dominant element of the orbit of `v`, in the basis of `v`.
pub fn to_dominant(v: &Vector) -> Result<Vector> {
    let dd = defining_data(v.algebra)?;
    let mut w = convert_basis(v, Basis::Omega)?;
    while let Some(i) = w.coords.iter().position(|x| x.is_negative()) {
        let c = w.coords[i].clone();
        for (x, &a) in w.coords.iter_mut().zip(&dd.cartan[i]) {
            *x -= &c * q(a);
        }
    }
    convert_basis(&w, v.basis)
}

pub(crate) fn to_dominant_label(dd: &DefiningData, w: &mut [i32]) {
    while let Some(i) = w.iter().position(|&x| x < 0) {
        dd.reflect_in_place(w, i);
    }
}

fn a_type_orbit(dom: &[i32]) -> Vec<Label> {
    let n = dom.len();
    let mut s = vec![0i64; n + 1];
    for j in (0..n).rev() {
        s[j] = s[j + 1] + dom[j] as i64;
    }
    s.sort_unstable();
    let mut out = Vec::new();
    loop {
        out.push((0..n).map(|i| (s[i] - s[i + 1]) as i32).collect());
        if !next_permutation(&mut s) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Orbit of a dominant label by layered reflections. Starting from the
/// dominant element, reflecting only at positive coordinates walks down the
/// orbit without ever revisiting a previous layer.
fn generic_orbit(dd: &DefiningData, dom: &[i32]) -> Vec<Label> {
    let mut seen: HashSet<Label> = HashSet::new();
    let start: Label = dom.iter().copied().collect();
    seen.insert(start.clone());
    let mut layer = vec![start];
    let mut out = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..w.len() {
                if w[i] > 0 {
                    let mut x = w.clone();
                    dd.reflect_in_place(&mut x, i);
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

static ORBITS: Lazy<Memo<(AlgebraId, Label), Vec<Label>>> = Lazy::new(Memo::new);

/// Cached orbit of a dominant label, sorted descending lexicographically.
pub(crate) fn orbit_of_dominant(dd: &DefiningData, dom: &[i32]) -> Arc<Vec<Label>> {
    let key = (dd.algebra, dom.iter().copied().collect::<Label>());
    ORBITS.get_or(&key, || {
        let mut v = if dd.algebra.class() == Class::A {
            a_type_orbit(dom)
        } else {
            generic_orbit(dd, dom)
        };
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

/// Orbit size `|W| / |W_T|` of a weight, with `W_T` the stabilizer of its
/// dominant representative. Weights off the integer lattice are rejected.
pub fn orbit_size(v: &Vector) -> Result<u128> {
    let dd = defining_data(v.algebra)?;
    let d = to_dominant(v)?;
    let l = d.to_label().ok_or_else(|| Error::InvalidInput(format!("{v} is not an integral weight")))?;
    Ok(orbit_size_of_dominant(&dd, &l))
}

/// Orbit size `|W| / |W_T|` of a dominant label, with `W_T` its stabilizer.
pub(crate) fn orbit_size_of_dominant(dd: &DefiningData, dom: &[i32]) -> u128 {
    let t: Vec<usize> = (0..dom.len()).filter(|&i| dom[i] == 0).collect();
    let stab: u128 = cartan_components(&dd.cartan, &t)
        .iter()
        .map(|c| {
            let sub = submatrix(&dd.cartan, c);
            weyl_group_order(identify_cartan(&sub).expect("subdiagram of a simple algebra"))
        })
        .product();
    weyl_group_order(dd.algebra) / stab
}

fn generic_orbit_q(dd: &DefiningData, dom: Vec<Q>) -> Vec<Vec<Q>> {
    let mut seen: HashSet<Vec<Q>> = HashSet::new();
    seen.insert(dom.clone());
    let mut layer = vec![dom];
    let mut out = layer.clone();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for w in &layer {
            for i in 0..w.len() {
                if w[i].is_positive() {
                    let c = w[i].clone();
                    let x: Vec<Q> = w.iter().zip(&dd.cartan[i]).map(|(y, &a)| y - &c * q(a)).collect();
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Full Weyl orbit of `v`; elements are returned in the ω-basis.
pub fn orbit(v: &Vector) -> Result<Orbit> {
    let dd = defining_data(v.algebra)?;
    let dom = convert_basis(&to_dominant(v)?, Basis::Omega)?;
    let elements: Vec<Vector> = match dom.to_label() {
        Some(l) => orbit_of_dominant(&dd, &l)
            .iter()
            .map(|x| Vector::omega(v.algebra, v.kind, x))
            .collect::<Result<_>>()?,
        None => generic_orbit_q(&dd, dom.coords.clone())
            .into_iter()
            .map(|c| Vector { algebra: v.algebra, basis: Basis::Omega, kind: v.kind, coords: c })
            .collect(),
    };
    Ok(Orbit { size: elements.len(), dominant: dom, elements })
}

/// Order of the Weyl group.
pub fn weyl_group_order(a: AlgebraId) -> u128 {
    let n = a.rank() as u128;
    let fact = |k: u128| (1..=k).product::<u128>();
    match a.class() {
        Class::A => fact(n + 1),
        Class::B | Class::C => (1u128 << n) * fact(n),
        Class::D => (1u128 << (n - 1)) * fact(n),
        Class::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Class::F => 1152,
        Class::G => 12,
        Class::U1 => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflect_examples() {
        let a4 = AlgebraId::a(4);
        let w = Vector::weight(a4, &[1, 0, 0, 0]).unwrap();
        let r = reflect(&w, 1).unwrap();
        assert_eq!(r.to_label().unwrap().as_slice(), &[-1, 1, 0, 0]);
        assert_eq!(reflect(&r, 1).unwrap(), w);
        let g2 = AlgebraId::g2();
        let h = Vector::root(g2, &[0, 1]).unwrap();
        assert_eq!(reflect(&h, 2).unwrap().to_label().unwrap().as_slice(), &[3, -1]);
        assert!(reflect(&h, 3).is_err());
    }

    #[test]
    fn reflection_matrices_are_involutions() {
        for a in [AlgebraId::a(4), AlgebraId::g2(), AlgebraId::f4(), AlgebraId::c(3)] {
            for m in reflection_matrices(a).unwrap() {
                assert_eq!(rational::mul(&m, &m), rational::identity(a.ortho_dim()));
            }
        }
        let a4 = reflection_matrices(AlgebraId::a(4)).unwrap();
        assert_eq!(a4[0][0][1], q(1));
        assert_eq!(a4[0][1][0], q(1));
        assert_eq!(a4[0][0][0], q(0));
    }

    #[test]
    fn orbit_sizes() {
        let a4 = AlgebraId::a(4);
        assert_eq!(orbit(&Vector::root(a4, &[2, -1, 0, 0]).unwrap()).unwrap().size, 20);
        assert_eq!(orbit(&Vector::root(a4, &[0, 0, 0, 0]).unwrap()).unwrap().size, 1);
        let g2 = AlgebraId::g2();
        assert_eq!(orbit(&Vector::root(g2, &[2, -1]).unwrap()).unwrap().size, 6);
        assert_eq!(orbit(&Vector::root(g2, &[-3, 2]).unwrap()).unwrap().size, 6);
    }

    #[test]
    fn a_fast_path_matches_generic() {
        let dd = defining_data(AlgebraId::a(3)).unwrap();
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    let mut x = a_type_orbit(&[a, b, c]);
                    let mut y = generic_orbit(&dd, &[a, b, c]);
                    x.sort();
                    y.sort();
                    assert_eq!(x, y);
                }
            }
        }
    }

    #[test]
    fn orbit_size_formula_matches_enumeration() {
        for a in [AlgebraId::b(3), AlgebraId::g2(), AlgebraId::f4(), AlgebraId::d(4), AlgebraId::a(3)] {
            let dd = defining_data(a).unwrap();
            let r = a.rank();
            for code in 0..3usize.pow(r as u32) {
                let l: Vec<i32> = (0..r).map(|i| (code / 3usize.pow(i as u32) % 3) as i32).collect();
                let n = orbit_of_dominant(&dd, &l).len() as u128;
                assert_eq!(n, orbit_size_of_dominant(&dd, &l));
                assert_eq!(weyl_group_order(a) % n, 0);
            }
        }
    }

    #[test]
    fn dominance() {
        let a4 = AlgebraId::a(4);
        assert!(is_dominant(&Vector::weight(a4, &[1, 0, 0, 1]).unwrap()));
        assert!(!is_dominant(&Vector::weight(a4, &[2, -1, 0, 0]).unwrap()));
        let d = to_dominant(&Vector::weight(a4, &[-1, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!(d.to_label().unwrap().as_slice(), &[0, 0, 0, 1]);
        let d = to_dominant(&Vector::weight(a4, &[-1, 1, 0, 0]).unwrap()).unwrap();
        assert_eq!(d.to_label().unwrap().as_slice(), &[1, 0, 0, 0]);
    }
}
