//! Independent reference computations built only from the Cartan matrix and
//! the metric tensor: root strings for the positive roots, and the plain
//! Freudenthal recursion over every weight.
#![allow(dead_code, clippy::needless_range_loop)]

use liereps::rational::Q;
use liereps::{defining_data, AlgebraId};
use num_traits::{ToPrimitive, Zero};
use std::collections::{HashMap, HashSet, VecDeque};

pub struct Algebra {
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub metric: Vec<Vec<Q>>,
    pub cartan_inv: Vec<Vec<Q>>,
    /// Positive roots as (α-coordinates, ω-coordinates).
    pub positive: Vec<(Vec<i64>, Vec<i64>)>,
}

impl Algebra {
    pub fn new(a: AlgebraId) -> Self {
        let dd = defining_data(a).unwrap();
        let n = a.rank();
        let cartan = dd.cartan.clone();
        let omega = |alpha: &[i64]| -> Vec<i64> { (0..n).map(|i| (0..n).map(|j| alpha[j] * cartan[j][i]).sum()).collect() };
        let mut roots: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = roots.iter().cloned().collect();
        while let Some(b) = queue.pop_front() {
            let w = omega(&b);
            for i in 0..n {
                let mut p = 0;
                loop {
                    let mut c = b.clone();
                    c[i] -= p + 1;
                    if seen.contains(&c) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - w[i];
                if q > 0 {
                    let mut c = b.clone();
                    c[i] += 1;
                    if seen.insert(c.clone()) {
                        roots.push(c.clone());
                        queue.push_back(c);
                    }
                }
            }
        }
        let positive = roots.into_iter().map(|r| (r.clone(), omega(&r))).collect();
        Algebra { rank: n, cartan: dd.cartan.clone(), metric: dd.metric.clone(), cartan_inv: dd.cartan_inv.clone(), positive }
    }

    pub fn sp(&self, x: &[i64], y: &[i64]) -> Q {
        let mut s = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if x[i] != 0 && y[j] != 0 {
                    s += &self.metric[i][j] * Q::from_integer((x[i] * y[j]).into());
                }
            }
        }
        s
    }

    fn dominant(&self, w: &[i64]) -> Vec<i64> {
        let mut v = w.to_vec();
        while let Some(i) = (0..self.rank).find(|&i| v[i] < 0) {
            let k = v[i];
            for j in 0..self.rank {
                v[j] -= k * self.cartan[i][j];
            }
        }
        v
    }

    fn below(&self, top: &[i64], w: &[i64]) -> bool {
        (0..self.rank).all(|j| {
            let c: Q = (0..self.rank).map(|i| Q::from_integer((top[i] - w[i]).into()) * &self.cartan_inv[i][j]).sum();
            c.is_integer() && c >= Q::zero()
        })
    }

    /// Every weight of the irrep with highest weight `top`, with multiplicity.
    pub fn weights(&self, top: &[i64]) -> HashMap<Vec<i64>, u64> {
        let n = self.rank;
        let is_weight = |w: &[i64]| self.below(top, &self.dominant(w));
        let mut levels: Vec<Vec<Vec<i64>>> = vec![vec![top.to_vec()]];
        let mut seen: HashSet<Vec<i64>> = HashSet::from([top.to_vec()]);
        loop {
            let mut next = Vec::new();
            for w in levels.last().unwrap() {
                for i in 0..n {
                    let c: Vec<i64> = (0..n).map(|j| w[j] - self.cartan[i][j]).collect();
                    if !seen.contains(&c) && is_weight(&c) {
                        seen.insert(c.clone());
                        next.push(c);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let delta = vec![1i64; n];
        let shift = |w: &[i64]| -> Vec<i64> { w.iter().zip(&delta).map(|(a, b)| a + b).collect() };
        let top_norm = self.sp(&shift(top), &shift(top));
        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        mult.insert(top.to_vec(), 1);
        for level in levels.iter().skip(1) {
            for w in level {
                let mut rhs = Q::zero();
                for (_, r) in &self.positive {
                    let mut k = 1;
                    loop {
                        let u: Vec<i64> = (0..n).map(|j| w[j] + k * r[j]).collect();
                        match mult.get(&u) {
                            Some(&m) => rhs += Q::from_integer(m.into()) * self.sp(&u, r),
                            None if seen.contains(&u) => {}
                            None => break,
                        }
                        k += 1;
                    }
                }
                let den = &top_norm - self.sp(&shift(w), &shift(w));
                let m = Q::from_integer(2.into()) * rhs / den;
                assert!(m.is_integer(), "non-integral multiplicity");
                mult.insert(w.clone(), m.to_integer().to_u64().unwrap());
            }
        }
        mult
    }

    /// Index as the weight-system trace `Σ ⟨w, w⟩ / rank`.
    pub fn index(&self, top: &[i64]) -> Q {
        let s: Q = self
            .weights(top)
            .iter()
            .map(|(w, m)| self.sp(w, w) * Q::from_integer((*m).into()))
            .sum();
        s / Q::from_integer((self.rank as i64).into())
    }

    /// Tensor product by multiplying characters and peeling highest weights.
    pub fn product(&self, x: &[i64], y: &[i64]) -> HashMap<Vec<i64>, u64> {
        let n = self.rank;
        let wx = self.weights(x);
        let wy = self.weights(y);
        let mut ch: HashMap<Vec<i64>, i64> = HashMap::new();
        for (a, m) in &wx {
            for (b, k) in &wy {
                let s: Vec<i64> = (0..n).map(|i| a[i] + b[i]).collect();
                *ch.entry(s).or_default() += (m * k) as i64;
            }
        }
        let height = |w: &[i64]| -> Q {
            (0..n).map(|j| (0..n).map(|i| Q::from_integer(w[i].into()) * &self.cartan_inv[i][j]).sum::<Q>()).sum()
        };
        let mut out = HashMap::new();
        loop {
            let top = ch
                .iter()
                .filter(|(w, &c)| c != 0 && w.iter().all(|&d| d >= 0))
                .max_by(|a, b| height(a.0).cmp(&height(b.0)).then_with(|| a.0.cmp(b.0)))
                .map(|(w, c)| (w.clone(), *c));
            let Some((t, c)) = top else { break };
            assert!(c > 0, "negative coefficient while peeling");
            for (w, m) in self.weights(&t) {
                *ch.entry(w).or_default() -= c * m as i64;
            }
            out.insert(t, c as u64);
        }
        assert!(ch.values().all(|&c| c == 0));
        out
    }
}
