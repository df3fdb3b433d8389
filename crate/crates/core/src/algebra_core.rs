//! Simple Lie algebras, their defining data and exact basis conversions.
//!
//! Orthogonal realizations: `A_n` uses `e_i - e_{i+1}` in `n+1` dimensions,
//! `B_n`, `C_n`, `D_n` the usual frames, `F4` the standard four dimensional frame
//! and `E6 ⊂ E7 ⊂ E8` share the eight dimensional `E8` lattice frame. `C_n` and
//! `G2` cannot be normalized to long roots of length² 2 with rational
//! coordinates, so their orthogonal frame carries a constant factor: the scalar
//! product there is the dot product divided by [`DefiningData::orth_norm`].

use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::rational::{self, fmt_q, q, qf, Mat, Q};
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use smallvec::SmallVec;
use std::fmt;
use std::sync::Arc;

/// Integer coordinates in the ω-basis (Dynkin labels of weights and roots).
pub type Label = SmallVec<[i32; 8]>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    U1,
}

/// A simple Lie algebra (or `U1`), identified by Cartan class and rank.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    class: Class,
    rank: usize,
}

impl AlgebraId {
    pub fn new(class: Class, rank: usize) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
        match (class, rank) {
            (Class::A, n) if n >= 1 => {}
            (Class::B, 1) => return bad("B1 is isomorphic to A1; use A1".into()),
            (Class::C, 1) => return bad("C1 is isomorphic to A1; use A1".into()),
            (Class::D, 2) => return bad("D2 is isomorphic to A1×A1; use A1*A1".into()),
            (Class::D, 3) => return bad("D3 is isomorphic to A3; use A3".into()),
            (Class::B | Class::C, n) if n >= 2 => {}
            (Class::D, n) if n >= 4 => {}
            (Class::E, 6..=8) | (Class::F, 4) | (Class::G, 2) | (Class::U1, 1) => {}
            (c, n) => return bad(format!("no algebra of class {c:?} with rank {n}")),
        }
        Ok(AlgebraId { class, rank })
    }

    pub fn a(n: usize) -> Self {
        Self::new(Class::A, n).expect("valid A rank")
    }
    pub fn b(n: usize) -> Self {
        Self::new(Class::B, n).expect("valid B rank")
    }
    pub fn c(n: usize) -> Self {
        Self::new(Class::C, n).expect("valid C rank")
    }
    pub fn d(n: usize) -> Self {
        Self::new(Class::D, n).expect("valid D rank")
    }
    pub fn e(n: usize) -> Self {
        Self::new(Class::E, n).expect("valid E rank")
    }
    pub fn f4() -> Self {
        AlgebraId { class: Class::F, rank: 4 }
    }
    pub fn g2() -> Self {
        AlgebraId { class: Class::G, rank: 2 }
    }
    pub fn u1() -> Self {
        AlgebraId { class: Class::U1, rank: 1 }
    }

    pub fn class(&self) -> Class {
        self.class
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn is_u1(&self) -> bool {
        self.class == Class::U1
    }

    /// Dimension `m` of the orthogonal frame.
    pub fn ortho_dim(&self) -> usize {
        match self.class {
            Class::A => self.rank + 1,
            Class::E if self.rank < 8 => 8,
            Class::G => 3,
            _ => self.rank,
        }
    }

    /// Cartan name such as `A4` or `E6`.
    pub fn cartan_name(&self) -> String {
        let c = match self.class {
            Class::A => "A",
            Class::B => "B",
            Class::C => "C",
            Class::D => "D",
            Class::E => "E",
            Class::F => "F",
            Class::G => "G",
            Class::U1 => return "U1".into(),
        };
        format!("{c}{}", self.rank)
    }

    /// Traditional name such as `SU(5)`, `SO(10)` or `Sp(8)`.
    pub fn traditional_name(&self) -> String {
        let n = self.rank;
        match self.class {
            Class::A => format!("SU({})", n + 1),
            Class::B => format!("SO({})", 2 * n + 1),
            Class::C => format!("Sp({})", 2 * n),
            Class::D => format!("SO({})", 2 * n),
            Class::U1 => "U(1)".into(),
            _ => self.cartan_name(),
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.traditional_name())
    }
}

/// Ordered product of simple algebras and `U1` factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductAlgebra {
    pub factors: Vec<AlgebraId>,
}

impl ProductAlgebra {
    pub fn new(factors: Vec<AlgebraId>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidAlgebra("empty product algebra".into()));
        }
        Ok(ProductAlgebra { factors })
    }

    pub fn simple(a: AlgebraId) -> Self {
        ProductAlgebra { factors: vec![a] }
    }

    /// The single factor if this product has exactly one.
    pub fn as_simple(&self) -> Option<AlgebraId> {
        (self.factors.len() == 1).then(|| self.factors[0])
    }

    /// Number of ω-coordinates plus one per `U1`.
    pub fn total_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank()).sum()
    }
}

impl fmt::Display for ProductAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join("×"))
    }
}

/// Parses a single algebra name: Cartan form (`A4`, `E6`), traditional form
/// (`SU5`, `SO(10)`, `Sp8`) or `U1`.
pub fn parse_simple_algebra(name: &str) -> Result<AlgebraId> {
    let s: String = name.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
    let unknown = || Error::UnknownAlgebra(name.to_string());
    let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?;
    let (head, num) = s.split_at(split);
    let n: usize = num.parse().map_err(|_| unknown())?;
    let head_up = head.to_ascii_uppercase();
    match head_up.as_str() {
        "A" => AlgebraId::new(Class::A, n),
        "B" => AlgebraId::new(Class::B, n),
        "C" => AlgebraId::new(Class::C, n),
        "D" => AlgebraId::new(Class::D, n),
        "E" => AlgebraId::new(Class::E, n),
        "F" => AlgebraId::new(Class::F, n),
        "G" => AlgebraId::new(Class::G, n),
        "U" if n == 1 => Ok(AlgebraId::u1()),
        "SU" if n >= 2 => AlgebraId::new(Class::A, n - 1),
        "SO" => match n {
            3 => Err(Error::InvalidAlgebra("SO(3) is isomorphic to SU(2); use SU2".into())),
            4 => Err(Error::InvalidAlgebra("SO(4) is isomorphic to SU(2)×SU(2); use SU2*SU2".into())),
            6 => Err(Error::InvalidAlgebra("SO(6) is isomorphic to SU(4); use SU4".into())),
            n if n >= 5 && n % 2 == 1 => AlgebraId::new(Class::B, (n - 1) / 2),
            n if n >= 8 && n % 2 == 0 => AlgebraId::new(Class::D, n / 2),
            _ => Err(unknown()),
        },
        "SP" => match n {
            2 => Err(Error::InvalidAlgebra("Sp(2) is isomorphic to SU(2); use SU2".into())),
            n if n >= 4 && n % 2 == 0 => AlgebraId::new(Class::C, n / 2),
            _ => Err(Error::InvalidAlgebra(format!("Sp({n}) needs an even argument of at least 4"))),
        },
        _ => Err(unknown()),
    }
}

/// Parses an algebra or a product of algebras joined by `*` (or `×`).
pub fn parse_algebra(name: &str) -> Result<ProductAlgebra> {
    let factors = name
        .split(['*', '×', 'x'])
        .filter(|p| !p.trim().is_empty())
        .map(parse_simple_algebra)
        .collect::<Result<Vec<_>>>()?;
    ProductAlgebra::new(factors)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    Orthogonal,
    Omega,
    Alpha,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Root,
    Weight,
}

/// Coordinate vector of exact rationals in a given basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    pub algebra: AlgebraId,
    pub basis: Basis,
    pub kind: Kind,
    pub coords: Vec<Q>,
}

impl Vector {
    pub fn new(algebra: AlgebraId, basis: Basis, kind: Kind, coords: Vec<Q>) -> Result<Self> {
        let want = match basis {
            Basis::Orthogonal => algebra.ortho_dim(),
            _ => algebra.rank(),
        };
        if coords.len() != want {
            return Err(Error::InvalidInput(format!(
                "{} coordinates given, {want} expected for {} in the {basis:?} basis",
                coords.len(),
                algebra.cartan_name()
            )));
        }
        Ok(Vector { algebra, basis, kind, coords })
    }

    pub fn omega(algebra: AlgebraId, kind: Kind, label: &[i32]) -> Result<Self> {
        Self::new(algebra, Basis::Omega, kind, label.iter().map(|&x| q(x as i64)).collect())
    }

    pub fn weight(algebra: AlgebraId, label: &[i32]) -> Result<Self> {
        Self::omega(algebra, Kind::Weight, label)
    }

    pub fn root(algebra: AlgebraId, label: &[i32]) -> Result<Self> {
        Self::omega(algebra, Kind::Root, label)
    }

    /// Integral ω-coordinates, if the vector has them.
    pub fn to_label(&self) -> Option<Label> {
        let w = convert_basis(self, Basis::Omega).ok()?;
        w.coords.iter().map(|x| rational::to_i64(x).map(|v| v as i32)).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.coords.iter().map(fmt_q).collect();
        match self.basis {
            Basis::Omega => write!(f, "⟨{}⟩", body.join(",")),
            Basis::Alpha => write!(f, "[{}]", body.join(",")),
            Basis::Orthogonal => write!(f, "({})", body.join(",")),
        }
    }
}

/// Defining data of a simple algebra, plus integer-scaled copies used by the
/// fast paths of the other modules.
#[derive(Debug)]
pub struct DefiningData {
    pub algebra: AlgebraId,
    /// Rows are the simple roots in the orthogonal frame.
    pub simple_roots_orth: Mat,
    pub cartan: Vec<Vec<i64>>,
    pub d_diag: Vec<Q>,
    /// Rows are the fundamental weights in the orthogonal frame.
    pub omega_orth: Mat,
    pub metric: Mat,
    /// The orthogonal-frame scalar product is `x·y / orth_norm`.
    pub orth_norm: Q,
    pub cartan_inv: Mat,
    pub coroots_orth: Mat,
    pub(crate) metric_int: Vec<Vec<i64>>,
    pub(crate) metric_den: i64,
    pub(crate) alpha_int: Vec<Vec<i64>>,
    pub(crate) alpha_den: i64,
    pub(crate) height_int: Vec<i64>,
}

impl DefiningData {
    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// `den · ⟨x, y⟩` for ω-coordinates, with `den = metric_den`.
    pub(crate) fn sp_int(&self, x: &[i32], y: &[i32]) -> i128 {
        let mut s: i128 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.metric_int[i];
            let mut t: i128 = 0;
            for (j, &yj) in y.iter().enumerate() {
                t += row[j] as i128 * yj as i128;
            }
            s += xi as i128 * t;
        }
        s
    }

    /// `alpha_den ·` α-coordinates of an ω-vector.
    pub(crate) fn alpha_scaled(&self, x: &[i32]) -> Vec<i64> {
        let r = self.rank();
        let mut out = vec![0i64; r];
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                for (o, a) in out.iter_mut().zip(&self.alpha_int[i]) {
                    *o += xi as i64 * a;
                }
            }
        }
        out
    }

    /// α-coordinates of an ω-vector in the root lattice.
    pub(crate) fn alpha_exact(&self, x: &[i32]) -> Option<Vec<i64>> {
        let d = self.alpha_den;
        self.alpha_scaled(x)
            .into_iter()
            .map(|v| (v % d == 0).then_some(v / d))
            .collect()
    }

    /// `alpha_den ·` height of an ω-vector.
    pub(crate) fn height_scaled(&self, x: &[i32]) -> i64 {
        x.iter().zip(&self.height_int).map(|(&a, &h)| a as i64 * h).sum()
    }

    /// Simple reflection `r_i` acting in place on ω-coordinates.
    #[inline]
    pub(crate) fn reflect_in_place(&self, w: &mut [i32], i: usize) {
        let c = w[i];
        if c != 0 {
            for (wj, &aij) in w.iter_mut().zip(&self.cartan[i]) {
                *wj -= c * aij as i32;
            }
        }
    }
}

fn unit(m: usize, i: usize, v: Q) -> Vec<Q> {
    let mut r = vec![Q::zero(); m];
    r[i] = v;
    r
}

fn e8_frame_roots() -> Vec<Vec<Q>> {
    let h = qf(1, 2);
    let mut b1 = vec![-h.clone(); 8];
    b1[0] = h.clone();
    b1[7] = h;
    let mut b2 = vec![Q::zero(); 8];
    b2[0] = Q::one();
    b2[1] = Q::one();
    let mut roots = vec![b1, b2];
    for k in 0..6 {
        let mut r = vec![Q::zero(); 8];
        r[k] = -Q::one();
        r[k + 1] = Q::one();
        roots.push(r);
    }
    roots
}

fn simple_roots(a: AlgebraId) -> (Mat, Q) {
    let n = a.rank();
    let m = a.ortho_dim();
    let diff = |i: usize| {
        let mut r = vec![Q::zero(); m];
        r[i] = Q::one();
        r[i + 1] = -Q::one();
        r
    };
    match a.class() {
        Class::A => ((0..n).map(diff).collect(), Q::one()),
        Class::B => {
            let mut rows: Mat = (0..n - 1).map(diff).collect();
            rows.push(unit(m, n - 1, Q::one()));
            (rows, Q::one())
        }
        Class::C => {
            let mut rows: Mat = (0..n - 1).map(diff).collect();
            rows.push(unit(m, n - 1, q(2)));
            (rows, q(2))
        }
        Class::D => {
            let mut rows: Mat = (0..n - 1).map(diff).collect();
            let mut last = vec![Q::zero(); m];
            last[n - 2] = Q::one();
            last[n - 1] = Q::one();
            rows.push(last);
            (rows, Q::one())
        }
        Class::E => {
            let b = e8_frame_roots();
            let order: &[usize] = match n {
                6 => &[0, 2, 3, 4, 5, 1],
                7 => &[0, 2, 3, 4, 5, 6, 1],
                _ => &[0, 2, 3, 4, 5, 6, 7, 1],
            };
            (order.iter().map(|&k| b[k].clone()).collect(), Q::one())
        }
        Class::F => {
            let h = qf(1, 2);
            (
                vec![
                    vec![q(0), q(1), q(-1), q(0)],
                    vec![q(0), q(0), q(1), q(-1)],
                    vec![q(0), q(0), q(0), q(1)],
                    vec![h.clone(), -h.clone(), -h.clone(), -h],
                ],
                Q::one(),
            )
        }
        Class::G => (
            vec![vec![q(0), q(1), q(-1)], vec![q(1), q(-2), q(1)]],
            q(3),
        ),
        Class::U1 => unreachable!("U1 has no roots"),
    }
}

fn build(a: AlgebraId) -> DefiningData {
    let (roots, norm) = simple_roots(a);
    let n = a.rank();
    let gram: Vec<Vec<Q>> = roots
        .iter()
        .map(|x| roots.iter().map(|y| rational::dot(x, y)).collect())
        .collect();
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rational::to_i64(&(q(2) * &gram[i][j] / &gram[j][j])).expect("integral Cartan entry"))
                .collect()
        })
        .collect();
    let d_diag: Vec<Q> = (0..n).map(|i| &gram[i][i] / q(2) / &norm).collect();
    let coroots: Mat = (0..n)
        .map(|i| roots[i].iter().map(|x| q(2) * x / &gram[i][i]).collect())
        .collect();
    let cc = rational::mul(&coroots, &rational::transpose(&coroots));
    let omega = rational::mul(&rational::inverse(&cc).expect("coroot Gram matrix invertible"), &coroots);
    let cartan_q = rational::from_ints(&cartan);
    let cartan_inv = rational::inverse(&cartan_q).expect("Cartan matrix invertible");
    let mut dmat = rational::zeros(n, n);
    for i in 0..n {
        dmat[i][i] = d_diag[i].clone();
    }
    let metric = rational::mul(&cartan_inv, &dmat);
    let (metric_int, metric_den) = rational::scaled_int(&metric);
    let (alpha_int, alpha_den) = rational::scaled_int(&cartan_inv);
    let height_int = alpha_int.iter().map(|r| r.iter().sum()).collect();
    DefiningData {
        algebra: a,
        simple_roots_orth: roots,
        cartan,
        d_diag,
        omega_orth: omega,
        metric,
        orth_norm: norm,
        cartan_inv,
        coroots_orth: coroots,
        metric_int,
        metric_den,
        alpha_int,
        alpha_den,
        height_int,
    }
}

static DEFINING: Lazy<Memo<AlgebraId, DefiningData>> = Lazy::new(Memo::new);

/// Cached defining data of a simple algebra.
pub fn defining_data(a: AlgebraId) -> Result<Arc<DefiningData>> {
    if a.is_u1() {
        return Err(Error::InvalidAlgebra("U1 has no defining root data".into()));
    }
    Ok(DEFINING.get_or(&a, || build(a)))
}

fn to_omega(dd: &DefiningData, v: &Vector) -> Vec<Q> {
    match v.basis {
        Basis::Omega => v.coords.clone(),
        Basis::Alpha => rational::vec_mul(&v.coords, &rational::from_ints(&dd.cartan)),
        Basis::Orthogonal => dd.coroots_orth.iter().map(|c| rational::dot(c, &v.coords)).collect(),
    }
}

/// Exact change of basis.
pub fn convert_basis(v: &Vector, target: Basis) -> Result<Vector> {
    if v.basis == target {
        return Ok(v.clone());
    }
    let dd = defining_data(v.algebra)?;
    let w = to_omega(&dd, v);
    let coords = match target {
        Basis::Omega => w,
        Basis::Alpha => rational::vec_mul(&w, &dd.cartan_inv),
        Basis::Orthogonal => rational::vec_mul(&w, &dd.omega_orth),
    };
    Ok(Vector { algebra: v.algebra, basis: target, kind: v.kind, coords })
}

/// Scalar product `⟨x, y⟩` with long roots of length² 2.
pub fn scalar_product(x: &Vector, y: &Vector) -> Result<Q> {
    if x.algebra != y.algebra {
        return Err(Error::AlgebraMismatch(x.algebra.to_string(), y.algebra.to_string()));
    }
    let dd = defining_data(x.algebra)?;
    let a = to_omega(&dd, x);
    let b = to_omega(&dd, y);
    Ok(rational::dot(&a, &rational::vec_mul(&b, &rational::transpose(&dd.metric))))
}

/// Connected components of the Dynkin diagram restricted to `nodes`.
pub(crate) fn cartan_components(cartan: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut left: Vec<usize> = nodes.to_vec();
    let mut comps = Vec::new();
    while let Some(start) = left.first().copied() {
        let mut comp = vec![start];
        left.retain(|&x| x != start);
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            let (linked, rest): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&v| cartan[u][v] != 0);
            comp.extend(linked);
            left = rest;
            k += 1;
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// All maps `σ` with `target.cartan[i][j] == sub[σ(i)][σ(j)]`.
pub(crate) fn isomorphisms(sub: &[Vec<i64>], target: AlgebraId) -> Vec<Vec<usize>> {
    let n = sub.len();
    if target.is_u1() || target.rank() != n {
        return Vec::new();
    }
    let dd = defining_data(target).expect("simple target");
    let mut out = Vec::new();
    let mut sigma = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        c: &[Vec<i64>],
        sub: &[Vec<i64>],
        sigma: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = sigma.len();
        if i == c.len() {
            out.push(sigma.clone());
            return;
        }
        for v in 0..c.len() {
            if used[v] {
                continue;
            }
            if (0..i).all(|j| c[i][j] == sub[v][sigma[j]] && c[j][i] == sub[sigma[j]][v]) {
                used[v] = true;
                sigma.push(v);
                rec(c, sub, sigma, used, out);
                sigma.pop();
                used[v] = false;
            }
        }
    }
    rec(&dd.cartan, sub, &mut sigma, &mut used, &mut out);
    out
}

/// The simple algebra with the given Cartan matrix up to relabeling.
pub(crate) fn identify_cartan(sub: &[Vec<i64>]) -> Option<AlgebraId> {
    let n = sub.len();
    let classes = [Class::A, Class::B, Class::C, Class::D, Class::E, Class::F, Class::G];
    classes
        .iter()
        .filter_map(|&c| AlgebraId::new(c, n).ok())
        .find(|&a| !isomorphisms(sub, a).is_empty())
}

pub(crate) fn submatrix(cartan: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<i64>> {
    nodes.iter().map(|&i| nodes.iter().map(|&j| cartan[i][j]).collect()).collect()
}
