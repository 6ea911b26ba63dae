//! Exact double description for polyhedral cones.
//!
//! Computes the generator description (lineality basis + extreme rays) of a
//! cone `{x : a_i · x >= 0}` by incremental halfspace insertion. Lineality is
//! pivoted out as halfspaces arrive; adjacency of extreme rays is the exact
//! combinatorial test (two rays are adjacent iff no third extreme ray lies on
//! every row tight for both), with the tight sets of combination rays
//! recomputed from scratch. The core runs on primitive integer vectors; only
//! the final reduction against the lineality basis uses rationals.
//! Everything is deterministic: fixed processing order, first-pivot rule,
//! canonical output (HNF lineality basis, rays reduced modulo lineality,
//! primitive, sorted).

use num_traits::{Signed, Zero};

use crate::exact::{
    self, int_dot, int_primitive, int_primitive_signed, to_int_primitive, IntMatrix, Integer,
    RatMatrix, Rational,
};

/// Compare rational vectors lexicographically.
pub fn cmp_vec(a: &[Rational], b: &[Rational]) -> std::cmp::Ordering {
    a.cmp(b)
}

#[derive(Clone, PartialEq, Eq)]
struct ZSet {
    words: Vec<u64>,
}

impl ZSet {
    fn new(nbits: usize) -> Self {
        ZSet {
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    fn full_below(nbits: usize, t: usize) -> Self {
        let mut s = Self::new(nbits);
        for i in 0..t {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZSet) -> ZSet {
        ZSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_superset(&self, other: &ZSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & b == *b)
    }
}

#[derive(Clone)]
struct Gen {
    v: Vec<Integer>,
    zero: ZSet,
}

/// Generator description of a cone, on primitive integer vectors.
pub struct DdIntOutput {
    /// HNF integer basis of the lineality space.
    pub lineality: Vec<Vec<Integer>>,
    /// Extreme rays modulo lineality: primitive, reduced against the
    /// lineality basis, sorted.
    pub rays: Vec<Vec<Integer>>,
}

/// Generator description of a cone (rational interface).
pub struct DdOutput {
    pub lineality: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
}

/// Generators of `{x in Q^n : row · x >= 0 for each row}`.
pub fn cone_dd(n: usize, rows: &[Vec<Rational>]) -> DdOutput {
    let int_rows: Vec<Vec<Integer>> = rows.iter().map(|r| to_int_primitive(r)).collect();
    let out = cone_dd_int(n, &int_rows);
    let conv = |v: Vec<Vec<Integer>>| -> Vec<Vec<Rational>> {
        v.into_iter()
            .map(|r| r.into_iter().map(Rational::from_integer).collect())
            .collect()
    };
    DdOutput {
        lineality: conv(out.lineality),
        rays: conv(out.rays),
    }
}

/// Integer core of the double description method.
pub fn cone_dd_int(n: usize, rows: &[Vec<Integer>]) -> DdIntOutput {
    let nrows = rows.len();
    let mut basis: Vec<Vec<Integer>> = (0..n)
        .map(|i| {
            let mut e = vec![Integer::zero(); n];
            e[i] = Integer::from(1);
            e
        })
        .collect();
    let mut gens: Vec<Gen> = Vec::new();

    for (t, a) in rows.iter().enumerate() {
        assert_eq!(a.len(), n, "row dimension mismatch");
        if a.iter().all(|x| x.is_zero()) {
            for g in &mut gens {
                g.zero.insert(t);
            }
            continue;
        }

        if let Some(idx) = basis.iter().position(|v| !int_dot(a, v).is_zero()) {
            // pivot a lineality direction out against this halfspace
            let mut v0 = basis.remove(idx);
            if int_dot(a, &v0).is_negative() {
                v0 = v0.iter().map(|x| -x).collect();
            }
            let av0 = int_dot(a, &v0);
            for w in &mut basis {
                let aw = int_dot(a, w);
                if !aw.is_zero() {
                    let upd: Vec<Integer> = w
                        .iter()
                        .zip(&v0)
                        .map(|(wi, vi)| wi * &av0 - &aw * vi)
                        .collect();
                    *w = int_primitive_signed(&upd);
                }
            }
            for g in &mut gens {
                let ag = int_dot(a, &g.v);
                if !ag.is_zero() {
                    let upd: Vec<Integer> =
                        g.v.iter()
                            .zip(&v0)
                            .map(|(gi, vi)| gi * &av0 - &ag * vi)
                            .collect();
                    g.v = int_primitive(&upd);
                }
                g.zero.insert(t);
            }
            gens.push(Gen {
                v: int_primitive(&v0),
                zero: ZSet::full_below(nrows, t),
            });
            continue;
        }

        // a vanishes on the lineality space; split rays by sign
        let vals: Vec<Integer> = gens.iter().map(|g| int_dot(a, &g.v)).collect();
        let has_neg = vals.iter().any(|x| x.is_negative());
        if !has_neg {
            for (g, val) in gens.iter_mut().zip(&vals) {
                if val.is_zero() {
                    g.zero.insert(t);
                }
            }
            continue;
        }
        let pos_idx: Vec<usize> = (0..gens.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg_idx: Vec<usize> = (0..gens.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut new_gens: Vec<Gen> = Vec::new();
        for &p in &pos_idx {
            for &q in &neg_idx {
                let z = gens[p].zero.intersect(&gens[q].zero);
                // adjacency: no third extreme ray lies on every row tight
                // for both p and q
                let blocked = gens
                    .iter()
                    .enumerate()
                    .any(|(i, g)| i != p && i != q && g.zero.is_superset(&z));
                if blocked {
                    continue;
                }
                let combo: Vec<Integer> = gens[q]
                    .v
                    .iter()
                    .zip(&gens[p].v)
                    .map(|(qi, pi)| qi * &vals[p] - pi * &vals[q])
                    .collect();
                let combo = int_primitive(&combo);
                // tight rows of the combination are recomputed from scratch:
                // a row outside z can vanish on it accidentally
                let mut zero = ZSet::new(nrows);
                for (s, row) in rows.iter().take(t + 1).enumerate() {
                    if int_dot(row, &combo).is_zero() {
                        zero.insert(s);
                    }
                }
                new_gens.push(Gen { v: combo, zero });
            }
        }
        let mut kept: Vec<Gen> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            if vals[i].is_positive() {
                kept.push(g);
            } else if vals[i].is_zero() {
                let mut g = g;
                g.zero.insert(t);
                kept.push(g);
            }
        }
        kept.extend(new_gens);
        gens = kept;
    }

    finalize(n, basis, gens)
}

fn finalize(n: usize, basis: Vec<Vec<Integer>>, gens: Vec<Gen>) -> DdIntOutput {
    // canonical lineality: HNF basis of the saturated lattice of the span
    let lineality: Vec<Vec<Integer>> = if basis.is_empty() {
        Vec::new()
    } else {
        exact::saturate_lattice(&IntMatrix::from_rows(basis, n))
    };

    // reduce rays modulo the lineality space, canonically via its RREF
    let (rref, pivots) = if lineality.is_empty() {
        (RatMatrix::zero(0, n), Vec::new())
    } else {
        RatMatrix::from_rows(
            lineality
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| Rational::from_integer(x.clone()))
                        .collect()
                })
                .collect(),
            n,
        )
        .rref()
    };
    let mut rays: Vec<Vec<Integer>> = gens
        .into_iter()
        .map(|g| {
            if pivots.is_empty() {
                return g.v;
            }
            let mut v: Vec<Rational> = g.v.into_iter().map(Rational::from_integer).collect();
            for (row, &pc) in pivots.iter().enumerate() {
                if !v[pc].is_zero() {
                    let c = v[pc].clone();
                    v = exact::vec_sub(&v, &exact::vec_scale(&c, rref.row(row)));
                }
            }
            to_int_primitive(&v)
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    rays.sort();
    rays.dedup();

    DdIntOutput { lineality, rays }
}
