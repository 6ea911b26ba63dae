//! Rational polyhedra with certified dual descriptions.
//!
//! A [`Polyhedron`] always carries both a canonical irredundant H-description
//! and a canonical generator description, linked by an exact incidence table.
//! Both directions of the conversion run through the double description
//! engine: `{Ax >= b}` is homogenized to a cone one dimension up, and the
//! generator-to-inequality direction is the polar of the same computation.
//! Implicit equalities are stored as pairs of opposite inequality rows, so a
//! face is exactly a set of tight row indices.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::dd::{cmp_vec, cone_dd};
use crate::error::Error;
use crate::exact::{self, dot, primitive, vec_add, vec_sub, RatMatrix, Rational};

/// Inequality description `{x : a_i · x >= b_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub a: RatMatrix,
    pub b: Vec<Rational>,
}

impl HRep {
    pub fn new(a: RatMatrix, b: Vec<Rational>) -> Self {
        assert_eq!(a.nrows(), b.len(), "row count mismatch");
        HRep { a, b }
    }

    pub fn nrows(&self) -> usize {
        self.b.len()
    }

    /// Value of row `i` at `x`, as `a_i · x - b_i`.
    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        dot(self.a.row(i), x) - &self.b[i]
    }
}

/// Generator description `conv(vertices) + cone(rays) + span(lineality)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

/// Canonical comparison key: a polyhedron is determined by its canonical
/// generator description.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PolyKey {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
}

/// A rational polyhedron with certified dual description.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    ambient_dim: usize,
    hrep: HRep,
    vrep: VRep,
    /// Tight row indices per generator, ordered vertices, rays, lineality.
    incidence: Vec<BTreeSet<usize>>,
    /// Rows tight on the whole polyhedron (implicit equalities).
    implicit: BTreeSet<usize>,
    /// Intrinsic dimension; -1 for the empty polyhedron.
    dim: i64,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.vrep == other.vrep
    }
}
impl Eq for Polyhedron {}

fn sorted_rows(mut rows: Vec<(Vec<Rational>, Rational)>) -> Vec<(Vec<Rational>, Rational)> {
    rows.sort_by(|(a1, b1), (a2, b2)| cmp_vec(a1, a2).then_with(|| b1.cmp(b2)));
    rows.dedup();
    rows
}

impl Polyhedron {
    /// The canonical empty polyhedron in ambient dimension `n`.
    pub fn empty(n: usize) -> Polyhedron {
        let a = RatMatrix::from_rows(vec![vec![Rational::zero(); n]], n);
        Polyhedron {
            ambient_dim: n,
            hrep: HRep::new(a, vec![Rational::one()]),
            vrep: VRep::default(),
            incidence: Vec::new(),
            implicit: BTreeSet::new(),
            dim: -1,
        }
    }

    /// Certified conversion from an inequality description.
    pub fn from_hrep(h: &HRep) -> Polyhedron {
        let n = h.a.ncols();
        // preprocess: joint primitive scaling, duplicate removal, dropping
        // trivially true rows (stacked systems repeat many rows)
        let mut seen: BTreeSet<Vec<Rational>> = BTreeSet::new();
        let mut hom: Vec<Vec<Rational>> = Vec::with_capacity(h.nrows() + 1);
        for i in 0..h.nrows() {
            let mut row = h.a.row(i).to_vec();
            row.push(-h.b[i].clone());
            if row[..n].iter().all(|x| x.is_zero()) {
                if row[n].is_negative() {
                    return Polyhedron::empty(n); // 0 >= b with b > 0
                }
                continue;
            }
            let row = primitive(&row);
            if seen.insert(row.clone()) {
                hom.push(row);
            }
        }
        hom.sort();
        let mut lambda = vec![Rational::zero(); n + 1];
        lambda[n] = Rational::one();
        hom.push(lambda);

        let dd = cone_dd(n + 1, &hom);
        let (vertices, rays, lineality) = split_homogeneous(n, &dd.rays, &dd.lineality);
        if vertices.is_empty() {
            return Polyhedron::empty(n);
        }
        let vrep = VRep {
            vertices,
            rays,
            lineality,
        };
        let hrep = canonical_hrep_from_generators(n, &vrep);
        assemble(n, hrep, vrep)
    }

    /// Certified conversion from a generator description.
    pub fn from_vrep(v: &VRep, n: usize) -> Polyhedron {
        if v.vertices.is_empty() {
            return Polyhedron::empty(n);
        }
        for g in v
            .vertices
            .iter()
            .chain(v.rays.iter())
            .chain(v.lineality.iter())
        {
            assert_eq!(g.len(), n, "generator dimension mismatch");
        }
        let hrep = canonical_hrep_from_generators(n, v);
        // regenerate a canonical, irredundant generator description
        let mut hom: Vec<Vec<Rational>> = Vec::with_capacity(hrep.nrows() + 1);
        for i in 0..hrep.nrows() {
            let mut row = hrep.a.row(i).to_vec();
            row.push(-hrep.b[i].clone());
            hom.push(row);
        }
        let mut lambda = vec![Rational::zero(); n + 1];
        lambda[n] = Rational::one();
        hom.push(lambda);
        let dd = cone_dd(n + 1, &hom);
        let (vertices, rays, lineality) = split_homogeneous(n, &dd.rays, &dd.lineality);
        assert!(!vertices.is_empty(), "generated polyhedron cannot be empty");
        assemble(
            n,
            hrep,
            VRep {
                vertices,
                rays,
                lineality,
            },
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Intrinsic dimension, `-1` when empty.
    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.dim < 0
    }

    /// A cone: nonempty with all canonical right-hand sides zero.
    pub fn is_cone(&self) -> bool {
        !self.is_empty() && self.hrep.b.iter().all(|x| x.is_zero())
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vrep.vertices
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.vrep.rays
    }

    pub fn lineality(&self) -> &[Vec<Rational>] {
        &self.vrep.lineality
    }

    /// Tight rows of generator `g` (vertices, then rays, then lineality).
    pub fn incidence(&self, g: usize) -> &BTreeSet<usize> {
        &self.incidence[g]
    }

    /// Rows tight on the whole polyhedron.
    pub fn implicit_rows(&self) -> &BTreeSet<usize> {
        &self.implicit
    }

    pub fn canonical_key(&self) -> PolyKey {
        PolyKey {
            vertices: self.vrep.vertices.clone(),
            rays: self.vrep.rays.clone(),
            lineality: self.vrep.lineality.clone(),
        }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.ambient_dim);
        (0..self.hrep.nrows()).all(|i| !self.hrep.slack(i, x).is_negative())
    }

    /// Membership in the relative interior: implicit rows tight, all other
    /// rows strict.
    pub fn contains_relint(&self, x: &[Rational]) -> bool {
        assert_eq!(x.len(), self.ambient_dim);
        (0..self.hrep.nrows()).all(|i| {
            let s = self.hrep.slack(i, x);
            if self.implicit.contains(&i) {
                s.is_zero()
            } else {
                s.is_positive()
            }
        })
    }

    /// Is `r` a direction of recession, i.e. `a_i · r >= 0` for all rows?
    pub fn contains_ray(&self, r: &[Rational]) -> bool {
        (0..self.hrep.nrows()).all(|i| !dot(self.hrep.a.row(i), r).is_negative())
    }

    /// Exact set inclusion, decided on generators against inequalities.
    pub fn is_subset_of(&self, other: &Polyhedron) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_empty() {
            return true;
        }
        self.vertices().iter().all(|v| other.contains(v))
            && self.rays().iter().all(|r| other.contains_ray(r))
            && self
                .lineality()
                .iter()
                .all(|l| other.contains_ray(l) && other.contains_ray(&exact::vec_neg(l)))
    }

    pub fn equal_as_set(&self, other: &Polyhedron) -> bool {
        self.ambient_dim == other.ambient_dim && self.vrep == other.vrep
    }

    /// Deterministic relative-interior point: vertex average plus the sum of
    /// the primitive rays.
    pub fn relint_point(&self) -> Result<Vec<Rational>, Error> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let n = self.ambient_dim;
        let mut p = vec![Rational::zero(); n];
        for v in self.vertices() {
            p = vec_add(&p, v);
        }
        let count = Rational::from_integer(exact::Integer::from(self.vertices().len() as i64));
        p = p.iter().map(|x| x / &count).collect();
        for r in self.rays() {
            p = vec_add(&p, r);
        }
        Ok(p)
    }

    /// Recession cone `{x : Ax >= 0}` of a nonempty polyhedron.
    pub fn recession_cone(&self) -> Result<Polyhedron, Error> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let h = HRep::new(
            self.hrep.a.clone(),
            vec![Rational::zero(); self.hrep.nrows()],
        );
        Ok(Polyhedron::from_hrep(&h))
    }

    /// Homogenization in one higher dimension:
    /// `{(x, t) : Ax - t b >= 0, t >= 0}`. The slice at height 1 is the
    /// polyhedron, the slice at height 0 its recession cone.
    pub fn homogenize(&self) -> Result<Polyhedron, Error> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let n = self.ambient_dim;
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(self.hrep.nrows() + 1);
        for i in 0..self.hrep.nrows() {
            let mut row = self.hrep.a.row(i).to_vec();
            row.push(-self.hrep.b[i].clone());
            rows.push(row);
        }
        let mut lambda = vec![Rational::zero(); n + 1];
        lambda[n] = Rational::one();
        rows.push(lambda);
        let b = vec![Rational::zero(); rows.len()];
        Ok(Polyhedron::from_hrep(&HRep::new(
            RatMatrix::from_rows(rows, n + 1),
            b,
        )))
    }

    /// Dual cone `{y : y · x >= 0 for all x in C}` of a cone.
    pub fn dual_cone(&self) -> Result<Polyhedron, Error> {
        if !self.is_cone() {
            return Err(Error::NotACone);
        }
        let n = self.ambient_dim;
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for r in self.rays() {
            rows.push(r.clone());
        }
        for l in self.lineality() {
            rows.push(l.clone());
            rows.push(exact::vec_neg(l));
        }
        let b = vec![Rational::zero(); rows.len()];
        Ok(Polyhedron::from_hrep(&HRep::new(
            RatMatrix::from_rows(rows, n),
            b,
        )))
    }

    /// The face minimizing the linear functional `w`.
    pub fn face_min(&self, w: &[Rational]) -> Result<Face<'_>, Error> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        assert_eq!(w.len(), self.ambient_dim);
        for l in self.lineality() {
            if !dot(w, l).is_zero() {
                return Err(Error::UnboundedDirection);
            }
        }
        for r in self.rays() {
            if dot(w, r).is_negative() {
                return Err(Error::UnboundedDirection);
            }
        }
        let vals: Vec<Rational> = self.vertices().iter().map(|v| dot(w, v)).collect();
        let min = vals.iter().min().expect("nonempty").clone();
        let arg_vertices: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        let zero_rays: Vec<usize> = (0..self.rays().len())
            .filter(|&j| dot(w, &self.vrep.rays[j]).is_zero())
            .collect();
        let nv = self.vertices().len();
        let mut active: Option<BTreeSet<usize>> = None;
        for &i in &arg_vertices {
            let inc = &self.incidence[i];
            active = Some(match active {
                None => inc.clone(),
                Some(acc) => acc.intersection(inc).cloned().collect(),
            });
        }
        let mut active = active.expect("at least one minimizing vertex");
        for &j in &zero_rays {
            let inc = &self.incidence[nv + j];
            active = active.intersection(inc).cloned().collect();
        }
        Ok(Face {
            parent: self,
            active,
        })
    }

    /// The smallest face containing all the given points.
    pub fn minimal_face_containing(&self, points: &[Vec<Rational>]) -> Result<Face<'_>, Error> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        assert!(!points.is_empty(), "need at least one point");
        let mut active: Option<BTreeSet<usize>> = None;
        for p in points {
            if !self.contains(p) {
                return Err(Error::PointOutside);
            }
            let tight: BTreeSet<usize> = (0..self.hrep.nrows())
                .filter(|&i| self.hrep.slack(i, p).is_zero())
                .collect();
            active = Some(match active {
                None => tight,
                Some(acc) => acc.intersection(&tight).cloned().collect(),
            });
        }
        Ok(Face {
            parent: self,
            active: active.expect("nonempty points"),
        })
    }

    /// The whole polyhedron as a face (active set = implicit rows).
    pub fn top_face(&self) -> Face<'_> {
        Face {
            parent: self,
            active: self.implicit.clone(),
        }
    }

    /// All nonempty faces, as tight sets closed under implied equalities.
    pub fn all_faces(&self) -> Vec<Face<'_>> {
        if self.is_empty() {
            return Vec::new();
        }
        let nrows = self.hrep.nrows();
        let words = nrows.div_ceil(64).max(1);
        let to_mask = |s: &BTreeSet<usize>| -> Vec<u64> {
            let mut m = vec![0u64; words];
            for &i in s {
                m[i / 64] |= 1 << (i % 64);
            }
            m
        };
        let nv = self.vertices().len();
        let nr = self.rays().len();
        // incidence masks of the vertex and ray generators
        let gen_masks: Vec<Vec<u64>> = (0..nv + nr).map(|g| to_mask(&self.incidence[g])).collect();
        let superset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & y == *y);

        // closure(s): intersect the incidences of all generators on the face;
        // a face with no vertex representative is empty
        let closure = |s: &[u64]| -> Option<Vec<u64>> {
            let mut out = vec![u64::MAX; words];
            let mut has_vertex = false;
            for (g, gm) in gen_masks.iter().enumerate() {
                if superset(gm, s) {
                    if g < nv {
                        has_vertex = true;
                    }
                    for (o, x) in out.iter_mut().zip(gm) {
                        *o &= x;
                    }
                }
            }
            has_vertex.then_some(out)
        };

        let top = to_mask(&self.implicit);
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut queue: Vec<Vec<u64>> = Vec::new();
        seen.insert(top.clone());
        queue.push(top);
        let mut out: Vec<Vec<u64>> = Vec::new();
        while let Some(t) = queue.pop() {
            out.push(t.clone());
            for i in 0..nrows {
                if t[i / 64] & (1 << (i % 64)) != 0 {
                    continue;
                }
                let mut s = t.clone();
                s[i / 64] |= 1 << (i % 64);
                if let Some(c) = closure(&s) {
                    if seen.insert(c.clone()) {
                        queue.push(c);
                    }
                }
            }
        }
        let mut actives: Vec<BTreeSet<usize>> = out
            .into_iter()
            .map(|m| {
                (0..nrows)
                    .filter(|&i| m[i / 64] & (1 << (i % 64)) != 0)
                    .collect()
            })
            .collect();
        actives.sort();
        actives
            .into_iter()
            .map(|active| Face {
                parent: self,
                active,
            })
            .collect()
    }

    /// Minkowski sum via pairwise vertex sums and merged rays.
    pub fn minkowski_sum(&self, other: &Polyhedron) -> Result<Polyhedron, Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let mut vertices = Vec::new();
        for v in self.vertices() {
            for w in other.vertices() {
                vertices.push(vec_add(v, w));
            }
        }
        let rays: Vec<Vec<Rational>> = self.rays().iter().chain(other.rays()).cloned().collect();
        let lineality: Vec<Vec<Rational>> = self
            .lineality()
            .iter()
            .chain(other.lineality())
            .cloned()
            .collect();
        Ok(Polyhedron::from_vrep(
            &VRep {
                vertices,
                rays,
                lineality,
            },
            self.ambient_dim,
        ))
    }

    /// Intersection by stacking inequality systems.
    pub fn intersection(&self, other: &Polyhedron) -> Polyhedron {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut b = Vec::new();
        for h in [self, other] {
            for i in 0..h.hrep.nrows() {
                rows.push(h.hrep.a.row(i).to_vec());
                b.push(h.hrep.b[i].clone());
            }
        }
        Polyhedron::from_hrep(&HRep::new(RatMatrix::from_rows(rows, self.ambient_dim), b))
    }

    /// Image under a linear map given by a `q x n` matrix (maps generators).
    pub fn linear_image(&self, map: &RatMatrix) -> Polyhedron {
        assert_eq!(map.ncols(), self.ambient_dim);
        let q = map.nrows();
        if self.is_empty() {
            return Polyhedron::empty(q);
        }
        let vertices: Vec<Vec<Rational>> = self.vertices().iter().map(|v| map.mul_vec(v)).collect();
        let rays: Vec<Vec<Rational>> = self
            .rays()
            .iter()
            .map(|r| map.mul_vec(r))
            .filter(|r| !exact::is_zero_vec(r))
            .collect();
        let lineality: Vec<Vec<Rational>> = self
            .lineality()
            .iter()
            .map(|l| map.mul_vec(l))
            .filter(|l| !exact::is_zero_vec(l))
            .collect();
        Polyhedron::from_vrep(
            &VRep {
                vertices,
                rays,
                lineality,
            },
            q,
        )
    }

    /// Basis of the linear space parallel to the affine hull.
    pub fn affine_hull_lin_basis(&self) -> Vec<Vec<Rational>> {
        assert!(!self.is_empty());
        let eq_rows: Vec<Vec<Rational>> = self
            .implicit
            .iter()
            .map(|&i| self.hrep.a.row(i).to_vec())
            .collect();
        let m = RatMatrix::from_rows(eq_rows, self.ambient_dim);
        m.kernel_basis()
    }
}

/// A face of a polyhedron, identified by its full tight set of row indices
/// against the canonical H-description of the parent.
#[derive(Clone)]
pub struct Face<'p> {
    pub parent: &'p Polyhedron,
    pub active: BTreeSet<usize>,
}

impl<'p> Face<'p> {
    /// Indices of parent generators lying on the face.
    pub fn generator_indices(&self) -> Vec<usize> {
        (0..self.parent.incidence.len())
            .filter(|&g| {
                self.active
                    .iter()
                    .all(|i| self.parent.incidence[g].contains(i))
            })
            .collect()
    }

    /// Vertices of the parent lying on this face.
    pub fn vertex_points(&self) -> Vec<Vec<Rational>> {
        let nv = self.parent.vertices().len();
        self.generator_indices()
            .into_iter()
            .filter(|&g| g < nv)
            .map(|g| self.parent.vertices()[g].clone())
            .collect()
    }

    /// Rays of the parent lying on this face.
    pub fn ray_points(&self) -> Vec<Vec<Rational>> {
        let nv = self.parent.vertices().len();
        let nr = self.parent.rays().len();
        self.generator_indices()
            .into_iter()
            .filter(|&g| g >= nv && g < nv + nr)
            .map(|g| self.parent.rays()[g - nv].clone())
            .collect()
    }

    /// A point in the relative interior of the face.
    pub fn relint_point(&self) -> Vec<Rational> {
        let vs = self.vertex_points();
        let rs = self.ray_points();
        assert!(!vs.is_empty(), "face without vertex representative");
        let n = self.parent.ambient_dim();
        let mut p = vec![Rational::zero(); n];
        for v in &vs {
            p = vec_add(&p, v);
        }
        let count = Rational::from_integer(exact::Integer::from(vs.len() as i64));
        p = p.iter().map(|x| x / &count).collect();
        for r in &rs {
            p = vec_add(&p, r);
        }
        p
    }

    /// The face as a standalone polyhedron (active rows become equalities).
    pub fn as_polyhedron(&self) -> Polyhedron {
        let h = &self.parent.hrep;
        let n = self.parent.ambient_dim();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut b: Vec<Rational> = Vec::new();
        for i in 0..h.nrows() {
            rows.push(h.a.row(i).to_vec());
            b.push(h.b[i].clone());
            if self.active.contains(&i) {
                rows.push(exact::vec_neg(h.a.row(i)));
                b.push(-h.b[i].clone());
            }
        }
        Polyhedron::from_hrep(&HRep::new(RatMatrix::from_rows(rows, n), b))
    }

    pub fn is_top(&self) -> bool {
        self.active == *self.parent.implicit_rows()
    }
}

impl PartialEq for Face<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.active == other.active
    }
}
impl Eq for Face<'_> {}

impl std::fmt::Debug for Face<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Face{:?}", self.active)
    }
}

type GeneratorTriple = (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<Vec<Rational>>);

fn split_homogeneous(
    n: usize,
    hom_rays: &[Vec<Rational>],
    hom_lineality: &[Vec<Rational>],
) -> GeneratorTriple {
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for r in hom_rays {
        let lam = &r[n];
        if lam.is_zero() {
            rays.push(r[..n].to_vec());
        } else {
            assert!(lam.is_positive(), "homogenization coordinate negative");
            let v: Vec<Rational> = r[..n].iter().map(|x| x / lam).collect();
            vertices.push(v);
        }
    }
    let lineality: Vec<Vec<Rational>> = hom_lineality
        .iter()
        .map(|l| {
            assert!(l[n].is_zero(), "lineality with nonzero height");
            l[..n].to_vec()
        })
        .collect();
    vertices.sort_by(|a, b| cmp_vec(a, b));
    rays.sort_by(|a, b| cmp_vec(a, b));
    (vertices, rays, lineality)
}

/// Canonical irredundant H-description from generators, via the polar double
/// description: a generator `g` becomes the constraint `y · g (+ c) >= 0` on
/// candidate inequalities `(y, c)`.
fn canonical_hrep_from_generators(n: usize, v: &VRep) -> HRep {
    assert!(!v.vertices.is_empty());
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for vert in &v.vertices {
        let mut r = vert.clone();
        r.push(Rational::one());
        rows.push(r);
    }
    for ray in &v.rays {
        let mut r = ray.clone();
        r.push(Rational::zero());
        rows.push(r);
    }
    for l in &v.lineality {
        let mut r = l.clone();
        r.push(Rational::zero());
        rows.push(r.clone());
        rows.push(exact::vec_neg(&r));
    }
    let dd = cone_dd(n + 1, &rows);

    let mut out: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for ray in &dd.rays {
        let (a, c) = (&ray[..n], &ray[n]);
        if a.iter().all(|x| x.is_zero()) {
            continue; // the trivially valid inequality 0 >= -c
        }
        out.push((a.to_vec(), -c.clone()));
    }
    for l in &dd.lineality {
        let (a, c) = (&l[..n], &l[n]);
        assert!(a.iter().any(|x| !x.is_zero()), "degenerate equality normal");
        out.push((a.to_vec(), -c.clone()));
        out.push((exact::vec_neg(a), c.clone()));
    }
    let out = sorted_rows(out);
    let b: Vec<Rational> = out.iter().map(|(_, b)| b.clone()).collect();
    let a = RatMatrix::from_rows(out.into_iter().map(|(a, _)| a).collect(), n);
    HRep::new(a, b)
}

fn assemble(n: usize, hrep: HRep, vrep: VRep) -> Polyhedron {
    let nv = vrep.vertices.len();
    let nr = vrep.rays.len();
    let mut incidence: Vec<BTreeSet<usize>> = Vec::new();
    for v in &vrep.vertices {
        incidence.push(
            (0..hrep.nrows())
                .filter(|&i| hrep.slack(i, v).is_zero())
                .collect(),
        );
    }
    for r in &vrep.rays {
        incidence.push(
            (0..hrep.nrows())
                .filter(|&i| dot(hrep.a.row(i), r).is_zero())
                .collect(),
        );
    }
    for l in &vrep.lineality {
        let tight: BTreeSet<usize> = (0..hrep.nrows())
            .filter(|&i| dot(hrep.a.row(i), l).is_zero())
            .collect();
        debug_assert_eq!(tight.len(), hrep.nrows(), "lineality not tight everywhere");
        incidence.push(tight);
    }
    let mut implicit: BTreeSet<usize> = (0..hrep.nrows()).collect();
    for inc in incidence.iter().take(nv + nr) {
        implicit = implicit.intersection(inc).cloned().collect();
    }
    // intrinsic dimension = affine rank of the generator description
    let mut diff_rows: Vec<Vec<Rational>> = Vec::new();
    let v0 = &vrep.vertices[0];
    for v in &vrep.vertices[1..] {
        diff_rows.push(vec_sub(v, v0));
    }
    diff_rows.extend(vrep.rays.iter().cloned());
    diff_rows.extend(vrep.lineality.iter().cloned());
    let dim = RatMatrix::from_rows(diff_rows, n).rank() as i64;
    Polyhedron {
        ambient_dim: n,
        hrep,
        vrep,
        incidence,
        implicit,
        dim,
    }
}

/// Convenience: polyhedron from integer inequality data `{x : a x >= b}`.
pub fn poly_from_ineqs(a: &[&[i64]], b: &[i64]) -> Polyhedron {
    Polyhedron::from_hrep(&HRep::new(RatMatrix::from_i64(a), exact::rat_vec(b)))
}

/// Convenience: cone from integer inequality rows `{x : a x >= 0}`.
pub fn cone_from_ineqs(a: &[&[i64]]) -> Polyhedron {
    let b = vec![0i64; a.len()];
    poly_from_ineqs(a, &b)
}

/// Convenience: cone generated by integer rays.
pub fn cone_from_rays(n: usize, rays: &[&[i64]]) -> Polyhedron {
    Polyhedron::from_vrep(
        &VRep {
            vertices: vec![vec![Rational::zero(); n]],
            rays: rays.iter().map(|r| exact::rat_vec(r)).collect(),
            lineality: Vec::new(),
        },
        n,
    )
}

/// Deduplicate polyhedra by canonical key, preserving canonical order.
pub fn dedup_by_key(polys: Vec<Polyhedron>) -> Vec<Polyhedron> {
    let mut map = std::collections::BTreeMap::new();
    for p in polys {
        map.entry(p.canonical_key()).or_insert(p);
    }
    map.into_values().collect()
}

/// Generator data of a cell `{x : a_i · x >= b_i}` with tight-row masks per
/// generator, computed without certifying a canonical inequality description.
/// Used by the refinement engine, where cells are visited many times and only
/// the surviving ones are upgraded to full polyhedra.
#[derive(Clone)]
pub(crate) struct CellData {
    pub vertices: Vec<Vec<Rational>>,
    pub rays: Vec<Vec<Rational>>,
    pub lineality: Vec<Vec<Rational>>,
    /// Tight rows (bitmask words) per vertex, then per ray.
    pub vert_tight: Vec<Vec<u64>>,
    pub ray_tight: Vec<Vec<u64>>,
}

impl CellData {
    pub fn key(&self) -> PolyKey {
        PolyKey {
            vertices: self.vertices.clone(),
            rays: self.rays.clone(),
            lineality: self.lineality.clone(),
        }
    }

    pub fn to_polyhedron(&self, n: usize) -> Polyhedron {
        Polyhedron::from_vrep(
            &VRep {
                vertices: self.vertices.clone(),
                rays: self.rays.clone(),
                lineality: self.lineality.clone(),
            },
            n,
        )
    }
}

/// Canonical generators and incidence of `{x : a_i · x >= b_i}` for integer
/// rows; `None` when the cell is empty.
pub(crate) fn cell_generators(
    n: usize,
    rows: &[(Vec<exact::Integer>, exact::Integer)],
) -> Option<CellData> {
    use exact::Integer;
    let mut hom: Vec<Vec<Integer>> = Vec::with_capacity(rows.len() + 1);
    for (a, b) in rows {
        let mut row = a.clone();
        row.push(-b.clone());
        hom.push(row);
    }
    let mut lambda = vec![Integer::zero(); n + 1];
    lambda[n] = Integer::from(1);
    hom.push(lambda);
    let dd = crate::dd::cone_dd_int(n + 1, &hom);

    let words = rows.len().div_ceil(64).max(1);
    let tight_mask = |p: &[Integer], lam: &Integer| -> Vec<u64> {
        let mut m = vec![0u64; words];
        for (i, (a, b)) in rows.iter().enumerate() {
            if (exact::int_dot(a, p) - b * lam).is_zero() {
                m[i / 64] |= 1 << (i % 64);
            }
        }
        m
    };

    let mut vert_pairs: Vec<(Vec<Rational>, Vec<u64>)> = Vec::new();
    let mut ray_pairs: Vec<(Vec<Rational>, Vec<u64>)> = Vec::new();
    for r in &dd.rays {
        let lam = &r[n];
        let mask = tight_mask(&r[..n], lam);
        if lam.is_zero() {
            let v: Vec<Rational> = r[..n]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            ray_pairs.push((v, mask));
        } else {
            let lam_rat = Rational::from_integer(lam.clone());
            let v: Vec<Rational> = r[..n]
                .iter()
                .map(|x| Rational::from_integer(x.clone()) / &lam_rat)
                .collect();
            vert_pairs.push((v, mask));
        }
    }
    if vert_pairs.is_empty() {
        return None;
    }
    vert_pairs.sort_by(|a, b| a.0.cmp(&b.0));
    ray_pairs.sort_by(|a, b| a.0.cmp(&b.0));
    let lineality: Vec<Vec<Rational>> = dd
        .lineality
        .iter()
        .map(|l| {
            debug_assert!(l[n].is_zero());
            l[..n]
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let (vertices, vert_tight): (Vec<_>, Vec<_>) = vert_pairs.into_iter().unzip();
    let (rays, ray_tight): (Vec<_>, Vec<_>) = ray_pairs.into_iter().unzip();
    Some(CellData {
        vertices,
        rays,
        lineality,
        vert_tight,
        ray_tight,
    })
}

/// Canonical integer inequality rows `(a, b)` of a polyhedron.
pub(crate) fn int_rows_of(p: &Polyhedron) -> Vec<(Vec<exact::Integer>, exact::Integer)> {
    let h = p.hrep();
    (0..h.nrows())
        .map(|i| {
            let mut joint = h.a.row(i).to_vec();
            joint.push(h.b[i].clone());
            let ints = exact::to_int_primitive(&joint);
            let b = ints[ints.len() - 1].clone();
            let a = ints[..ints.len() - 1].to_vec();
            (a, b)
        })
        .collect()
}

/// Image of a face under a linear map, built from the face generators
/// (cheaper than materializing the face as a polyhedron first).
pub fn face_image(face: &Face<'_>, map: &RatMatrix) -> Polyhedron {
    let q = map.nrows();
    let vertices: Vec<Vec<Rational>> = face
        .vertex_points()
        .iter()
        .map(|v| map.mul_vec(v))
        .collect();
    let rays: Vec<Vec<Rational>> = face
        .ray_points()
        .iter()
        .map(|r| map.mul_vec(r))
        .filter(|r| !exact::is_zero_vec(r))
        .collect();
    let lineality: Vec<Vec<Rational>> = face
        .parent
        .lineality()
        .iter()
        .map(|l| map.mul_vec(l))
        .filter(|l| !exact::is_zero_vec(l))
        .collect();
    Polyhedron::from_vrep(
        &VRep {
            vertices,
            rays,
            lineality,
        },
        q,
    )
}

/// The cone generated by the images of the active rows of a face (the image
/// of the inner normal cone without constructing it in the ambient space).
pub fn mapped_row_cone(face: &Face<'_>, map: &RatMatrix) -> Polyhedron {
    let q = map.nrows();
    let rays: Vec<Vec<Rational>> = face
        .active
        .iter()
        .map(|&i| map.mul_vec(face.parent.hrep().a.row(i)))
        .filter(|r| !exact::is_zero_vec(r))
        .collect();
    Polyhedron::from_vrep(
        &VRep {
            vertices: vec![vec![Rational::zero(); q]],
            rays,
            lineality: Vec::new(),
        },
        q,
    )
}

/// Normalize a ray to a primitive integer vector (positive scaling only).
pub fn primitive_ray(v: &[Rational]) -> Vec<Rational> {
    primitive(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int, rat_vec};

    /// Independent vertex oracle: solve every n-subset of rows and keep the
    /// feasible intersection points.
    fn oracle_vertices(p: &HRep) -> Vec<Vec<Rational>> {
        let n = p.a.ncols();
        let idx: Vec<usize> = (0..p.nrows()).collect();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        let mut subsets = vec![];
        fn comb(
            idx: &[usize],
            k: usize,
            start: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..idx.len() {
                cur.push(idx[i]);
                comb(idx, k, i + 1, cur, out);
                cur.pop();
            }
        }
        comb(&idx, n, 0, &mut vec![], &mut subsets);
        for s in subsets {
            let rows: Vec<Vec<Rational>> = s.iter().map(|&i| p.a.row(i).to_vec()).collect();
            let rhs: Vec<Rational> = s.iter().map(|&i| p.b[i].clone()).collect();
            let m = RatMatrix::from_rows(rows, n);
            if m.rank() < n {
                continue;
            }
            if let Some(x) = crate::exact::solve_rational(&m, &rhs) {
                if (0..p.nrows()).all(|i| !p.slack(i, &x).is_negative()) && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out.sort_by(|a, b| cmp_vec(a, b));
        out
    }

    #[test]
    fn halfline() {
        let p = poly_from_ineqs(&[&[1]], &[0]);
        assert_eq!(p.vertices(), &[rat_vec(&[0])]);
        assert_eq!(p.rays(), &[rat_vec(&[1])]);
        assert!(p.lineality().is_empty());
        assert_eq!(p.dim(), 1);
    }

    #[test]
    fn unit_square_matches_oracle() {
        let h = HRep::new(
            RatMatrix::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]),
            rat_vec(&[0, -1, 0, -1]),
        );
        let p = Polyhedron::from_hrep(&h);
        assert_eq!(p.vertices().len(), 4);
        assert!(p.rays().is_empty());
        assert_eq!(p.vertices(), oracle_vertices(&h).as_slice());
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn contradictory_is_empty() {
        let p = poly_from_ineqs(&[&[1], &[-1]], &[1, 0]);
        assert!(p.is_empty());
        assert_eq!(p.dim(), -1);
    }

    #[test]
    fn v_to_h_interval() {
        let p = Polyhedron::from_vrep(
            &VRep {
                vertices: vec![rat_vec(&[0]), rat_vec(&[1])],
                rays: vec![],
                lineality: vec![],
            },
            1,
        );
        // canonical rows sorted: -x >= -1, x >= 0
        assert_eq!(p.hrep().a, RatMatrix::from_i64(&[&[-1], &[1]]));
        assert_eq!(p.hrep().b, rat_vec(&[-1, 0]));
    }

    #[test]
    fn v_to_h_orthant_and_full_space() {
        let p = cone_from_rays(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(p.hrep().a, RatMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(p.hrep().b, rat_vec(&[0, 0]));

        let full = Polyhedron::from_vrep(
            &VRep {
                vertices: vec![rat_vec(&[0])],
                rays: vec![],
                lineality: vec![rat_vec(&[1])],
            },
            1,
        );
        assert_eq!(full.hrep().nrows(), 0);
        assert_eq!(full.dim(), 1);
    }

    #[test]
    fn round_trip_same_point_set() {
        let h = HRep::new(
            RatMatrix::from_i64(&[&[1, 2], &[-1, 0], &[0, -1], &[3, -1]]),
            rat_vec(&[-2, -3, -4, -5]),
        );
        let p = Polyhedron::from_hrep(&h);
        let q = Polyhedron::from_vrep(p.vrep(), 2);
        assert!(p.equal_as_set(&q));
        assert!(p.is_subset_of(&q) && q.is_subset_of(&p));
    }

    #[test]
    fn dual_cone_cases() {
        let orthant = cone_from_ineqs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let dual = orthant.dual_cone().unwrap();
        assert!(dual.equal_as_set(&orthant));

        let halfplane = cone_from_ineqs(&[&[1, 0]]);
        let d = halfplane.dual_cone().unwrap();
        assert_eq!(d.rays(), &[rat_vec(&[1, 0])]);
        assert!(d.lineality().is_empty());

        let full = Polyhedron::from_hrep(&HRep::new(RatMatrix::zero(0, 2), vec![]));
        let d = full.dual_cone().unwrap();
        assert_eq!(d.dim(), 0);
        assert_eq!(d.vertices(), &[rat_vec(&[0, 0])]);
    }

    #[test]
    fn dual_involution() {
        for c in [
            cone_from_ineqs(&[&[1, 0], &[1, 1]]),
            cone_from_ineqs(&[&[1, 0, 0], &[0, 1, 0]]),
            cone_from_rays(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, -1, 1]]),
        ] {
            let dd = c.dual_cone().unwrap().dual_cone().unwrap();
            assert!(dd.equal_as_set(&c));
        }
    }

    #[test]
    fn recession_cases() {
        let square = poly_from_ineqs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, -1, 0, -1]);
        let rc = square.recession_cone().unwrap();
        assert_eq!(rc.dim(), 0);

        let ray = poly_from_ineqs(&[&[1]], &[1]);
        let rc = ray.recession_cone().unwrap();
        assert_eq!(rc.rays(), &[rat_vec(&[1])]);

        let cone = cone_from_ineqs(&[&[1, 1], &[1, -1]]);
        assert!(cone.recession_cone().unwrap().equal_as_set(&cone));
    }

    #[test]
    fn homogenize_cases() {
        let seg = poly_from_ineqs(&[&[1], &[-1]], &[0, -1]);
        let h = seg.homogenize().unwrap();
        assert!(h.is_cone());
        assert_eq!(h.rays(), &[rat_vec(&[0, 1]), rat_vec(&[1, 1])]);

        let halfline = poly_from_ineqs(&[&[1]], &[1]);
        let h = halfline.homogenize().unwrap();
        // {(x, t) : x >= t, t >= 0}
        assert!(h.contains(&rat_vec(&[2, 1])));
        assert!(h.contains(&rat_vec(&[1, 0])));
        assert!(!h.contains(&rat_vec(&[0, 1])));

        let cone = cone_from_ineqs(&[&[1, 0], &[0, 1]]);
        let h = cone.homogenize().unwrap();
        assert_eq!(h.rays().len(), 3); // e1, e2 at height 0 and the apex ray
    }

    #[test]
    fn face_min_on_square() {
        let square = poly_from_ineqs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, -1, 0, -1]);
        let corner = square.face_min(&rat_vec(&[1, 1])).unwrap();
        assert_eq!(corner.vertex_points(), vec![rat_vec(&[0, 0])]);
        let edge = square.face_min(&rat_vec(&[0, 1])).unwrap();
        assert_eq!(edge.vertex_points().len(), 2);
        let whole = square.face_min(&rat_vec(&[0, 0])).unwrap();
        assert!(whole.is_top());

        let halfline = poly_from_ineqs(&[&[1]], &[0]);
        assert!(matches!(
            halfline.face_min(&rat_vec(&[-1])),
            Err(Error::UnboundedDirection)
        ));
    }

    #[test]
    fn minimal_face_cases() {
        let square = poly_from_ineqs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, -1, 0, -1]);
        let edge = square
            .minimal_face_containing(&[vec![rat(1, 2), rat_int(0)]])
            .unwrap();
        assert_eq!(edge.vertex_points().len(), 2);
        let vert = square.minimal_face_containing(&[rat_vec(&[1, 1])]).unwrap();
        assert_eq!(vert.vertex_points(), vec![rat_vec(&[1, 1])]);
        let whole = square
            .minimal_face_containing(&[rat_vec(&[0, 0]), rat_vec(&[1, 1])])
            .unwrap();
        assert!(whole.is_top());
        assert!(matches!(
            square.minimal_face_containing(&[rat_vec(&[2, 0])]),
            Err(Error::PointOutside)
        ));
    }

    #[test]
    fn face_enumeration_square() {
        let square = poly_from_ineqs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, -1, 0, -1]);
        // 4 vertices + 4 edges + the square itself
        assert_eq!(square.all_faces().len(), 9);
    }

    #[test]
    fn face_enumeration_orthant() {
        let orthant = cone_from_ineqs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        // one face per subset of coordinates
        assert_eq!(orthant.all_faces().len(), 8);
    }

    #[test]
    fn minkowski_cases() {
        let square = poly_from_ineqs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, -1, 0, -1]);
        let origin = Polyhedron::from_vrep(
            &VRep {
                vertices: vec![rat_vec(&[0, 0])],
                rays: vec![],
                lineality: vec![],
            },
            2,
        );
        assert!(square.minkowski_sum(&origin).unwrap().equal_as_set(&square));

        let seg = poly_from_ineqs(&[&[1], &[-1]], &[0, -1]);
        let sum = seg.minkowski_sum(&seg).unwrap();
        assert_eq!(sum.vertices(), &[rat_vec(&[0]), rat_vec(&[2])]);

        let diag = Polyhedron::from_vrep(
            &VRep {
                vertices: vec![rat_vec(&[0, 0]), rat_vec(&[1, 1])],
                rays: vec![],
                lineality: vec![],
            },
            2,
        );
        let hex = square.minkowski_sum(&diag).unwrap();
        assert_eq!(hex.vertices().len(), 6);
    }

    #[test]
    fn relint_point_predicate() {
        let point = Polyhedron::from_vrep(
            &VRep {
                vertices: vec![rat_vec(&[0])],
                rays: vec![],
                lineality: vec![],
            },
            1,
        );
        assert_eq!(point.relint_point().unwrap(), rat_vec(&[0]));

        let seg = poly_from_ineqs(&[&[1], &[-1]], &[0, -1]);
        let x = seg.relint_point().unwrap();
        assert!(x[0] > rat_int(0) && x[0] < rat_int(1));

        let orthant = cone_from_ineqs(&[&[1, 0], &[0, 1]]);
        let x = orthant.relint_point().unwrap();
        assert!(x.iter().all(|c| c.is_positive()));
        assert!(orthant.contains_relint(&x));
    }

    #[test]
    fn lower_dimensional_polyhedron() {
        // segment embedded in Q^2: x in [0,1], y = 0 via inequality pairs
        let p = poly_from_ineqs(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[0, -1, 0, 0]);
        assert_eq!(p.dim(), 1);
        assert_eq!(p.implicit_rows().len(), 2); // the pair +-y >= 0
        assert_eq!(p.vertices().len(), 2);
        let basis = p.affine_hull_lin_basis();
        assert_eq!(basis.len(), 1);
        assert!(basis[0][1].is_zero());
    }
}
