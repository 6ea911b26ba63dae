//! Seeded random instance generation for the verification corpus.
//!
//! The generator is deterministic for a fixed seed and documented so that a
//! corpus can be reproduced elsewhere: one ChaCha8 stream per call, candidate
//! systems drawn with small integer entries and rejected until the instance
//! satisfies every module precondition (nonempty polyhedron, full-row-rank
//! projection, and for cone corpora full dimensionality).

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{self, dot, IntMatrix, Integer, RatMatrix, Rational};
use crate::io::{format_rational, HRepDoc, InstanceDocument, PolyhedronSpec};
use crate::polyhedron::{HRep, Polyhedron};
use crate::quotient::make_context;

/// What kind of corpus to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    /// General polyhedra, mixed bounded and unbounded.
    Mixed,
    /// Full-dimensional cones (all right-hand sides zero).
    Cones,
    /// Full-dimensional cones whose fibers contain a line (a primitive
    /// kernel vector of the projection lies in the lineality space).
    NonPointedSliceCones,
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusParams {
    /// Maximum ambient dimension (instances draw n in `2..=max_dim`).
    pub max_dim: usize,
    /// Maximum projection rank (d in `1..=min(max_proj, n-1)`).
    pub max_proj: usize,
    /// Maximum number of inequality rows.
    pub max_ineqs: usize,
    pub count: usize,
    pub seed: u64,
    pub kind: CorpusKind,
}

impl CorpusParams {
    pub fn new(max_dim: usize, max_proj: usize, count: usize, seed: u64) -> Self {
        CorpusParams {
            max_dim,
            max_proj,
            max_ineqs: 10,
            count,
            seed,
            kind: CorpusKind::Mixed,
        }
    }

    pub fn kind(mut self, kind: CorpusKind) -> Self {
        self.kind = kind;
        self
    }
}

fn random_int_rows(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| rng.random_range(-bound..=bound))
                .collect()
        })
        .collect()
}

fn rows_to_hrep_doc(a: &[Vec<Rational>], b: &[Rational]) -> HRepDoc {
    HRepDoc {
        a: a.iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect(),
        b: b.iter().map(format_rational).collect(),
    }
}

fn build_poly(a: &[Vec<Rational>], b: &[Rational]) -> Polyhedron {
    let n = a.first().map_or(0, |r| r.len());
    Polyhedron::from_hrep(&HRep::new(RatMatrix::from_rows(a.to_vec(), n), b.to_vec()))
}

/// Draw `params.count` valid instances. Every emitted instance has a
/// nonempty polyhedron and a full-row-rank integer projection with d < n.
pub fn random_instances(params: &CorpusParams) -> Vec<InstanceDocument> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut out = Vec::with_capacity(params.count);
    let mut attempts = 0usize;
    while out.len() < params.count {
        attempts += 1;
        assert!(
            attempts < 100_000,
            "corpus generation failed to converge; parameters too tight"
        );
        let n = rng.random_range(2..=params.max_dim.max(2));
        let d = rng.random_range(1..=params.max_proj.min(n - 1).max(1));
        // bounded instances spend 2n of the row budget on a box
        let bounded = params.kind == CorpusKind::Mixed
            && params.max_ineqs >= 2 * n
            && rng.random_range(0..3) == 0;
        let rows = if bounded {
            rng.random_range(0..=params.max_ineqs - 2 * n)
        } else {
            rng.random_range(n..=params.max_ineqs.max(n))
        };

        let a_int = random_int_rows(&mut rng, rows, n, 3);
        if a_int.iter().any(|r| r.iter().all(|&x| x == 0)) {
            continue;
        }

        let (a, b): (Vec<Vec<Rational>>, Vec<Rational>) = match params.kind {
            CorpusKind::Mixed => {
                let cone = !bounded && rng.random_range(0..3) == 0;
                let mut a: Vec<Vec<Rational>> = a_int.iter().map(|r| exact::rat_vec(r)).collect();
                let mut b: Vec<Rational> = if cone {
                    vec![Rational::zero(); rows]
                } else {
                    (0..rows)
                        .map(|_| exact::rat_int(rng.random_range(-2..=2)))
                        .collect()
                };
                if bounded {
                    // box rows +-x_i >= -3 make the instance a polytope
                    for i in 0..n {
                        for s in [1i64, -1] {
                            let mut row = vec![Rational::zero(); n];
                            row[i] = exact::rat_int(s);
                            a.push(row);
                            b.push(exact::rat_int(-3));
                        }
                    }
                }
                (a, b)
            }
            CorpusKind::Cones => {
                let a: Vec<Vec<Rational>> = a_int.iter().map(|r| exact::rat_vec(r)).collect();
                let b = vec![Rational::zero(); a.len()];
                (a, b)
            }
            CorpusKind::NonPointedSliceCones => {
                // chosen later against the kernel of the projection
                let a: Vec<Vec<Rational>> = a_int.iter().map(|r| exact::rat_vec(r)).collect();
                let b = vec![Rational::zero(); a.len()];
                (a, b)
            }
        };

        let proj_rows = random_int_rows(&mut rng, d, n, 2);
        let proj = IntMatrix::from_rows(
            proj_rows
                .iter()
                .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
                .collect(),
            n,
        );
        let Ok(ctx) = make_context(proj.clone()) else {
            continue;
        };

        let (a, b) = if params.kind == CorpusKind::NonPointedSliceCones {
            // force a kernel line into the cone's lineality space: project
            // every row onto the orthogonal complement of a kernel vector
            let k: Vec<Rational> = ctx.kernel_basis()[0]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let k_norm = dot(&k, &k);
            let mut a2: Vec<Vec<Rational>> = Vec::with_capacity(a.len());
            for row in &a {
                let c = dot(row, &k) / &k_norm;
                let adj: Vec<Rational> = row.iter().zip(&k).map(|(x, ki)| x - &c * ki).collect();
                if adj.iter().all(|x| x.is_zero()) {
                    continue;
                }
                a2.push(exact::primitive(&adj));
            }
            if a2.is_empty() {
                continue;
            }
            let blen = a2.len();
            (a2, vec![Rational::zero(); blen])
        } else {
            (a, b)
        };

        let p = build_poly(&a, &b);
        if p.is_empty() {
            continue;
        }
        debug_assert!(a.len() <= params.max_ineqs.max(params.max_dim));
        match params.kind {
            CorpusKind::Cones | CorpusKind::NonPointedSliceCones => {
                if !p.is_cone() || p.dim() != n as i64 {
                    continue;
                }
            }
            CorpusKind::Mixed => {}
        }

        let doc = InstanceDocument {
            schema: crate::io::SCHEMA.to_string(),
            name: Some(format!("random-{:04}", out.len())),
            notes: None,
            polyhedron: PolyhedronSpec {
                hrep: Some(rows_to_hrep_doc(&a, &b)),
                vrep: None,
            },
            projection: proj_rows
                .iter()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        };
        out.push(doc);
    }
    out
}
