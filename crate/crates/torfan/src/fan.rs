//! Fans and polyhedral complexes.
//!
//! A [`Fan`] stores only its maximal cones; lower faces are derived on
//! demand. All cones share one lineality space and are kept in canonical
//! order, so fan equality is a comparison of canonical keys. Two refinement
//! engines are provided:
//!
//! * pairwise common refinement of fans with equal convex support, and
//! * a cell-walking refinement of an arbitrary finite collection of regions
//!   inside a support (used for subdivisions induced by projecting faces),
//!   which enumerates the full-dimensional cells of the common refinement by
//!   crossing facets from a generic seed point.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Error;
use crate::exact::{self, dot, vec_scale, Integer, RatMatrix, Rational};
use crate::polyhedron::{dedup_by_key, Face, PolyKey, Polyhedron, VRep};

/// A polyhedral fan, represented by its maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    ambient_dim: usize,
    /// HNF integer basis of the lineality space shared by all cones.
    lineality: Vec<Vec<Rational>>,
    /// Maximal cones in canonical order.
    maximal_cones: Vec<Polyhedron>,
    /// The union of all cones, cached as a single cone.
    support: Polyhedron,
}

impl Fan {
    /// Build a fan from a list of cones: deduplicates, prunes cones contained
    /// in another, sorts canonically and checks the shared lineality space.
    pub fn from_cones(ambient_dim: usize, cones: Vec<Polyhedron>, support: Polyhedron) -> Fan {
        assert!(!cones.is_empty(), "a fan needs at least one cone");
        let cones = dedup_by_key(cones);
        let mut keep: Vec<Polyhedron> = Vec::new();
        for (i, c) in cones.iter().enumerate() {
            let dominated = cones
                .iter()
                .enumerate()
                .any(|(j, d)| i != j && c.is_subset_of(d) && !d.is_subset_of(c));
            if !dominated {
                keep.push(c.clone());
            }
        }
        Fan::from_maximal_cones(ambient_dim, keep, support)
    }

    /// Build a fan from cones known to be pairwise incomparable (refinement
    /// cells): deduplicates and sorts, skipping the quadratic containment
    /// prune.
    pub fn from_maximal_cones(
        ambient_dim: usize,
        cones: Vec<Polyhedron>,
        support: Polyhedron,
    ) -> Fan {
        assert!(!cones.is_empty(), "a fan needs at least one cone");
        let keep = dedup_by_key(cones);
        for c in &keep {
            assert_eq!(c.ambient_dim(), ambient_dim);
            assert!(c.is_cone(), "fan cell is not a cone");
        }
        let lineality = keep[0].lineality().to_vec();
        for c in &keep {
            assert_eq!(
                c.lineality(),
                lineality.as_slice(),
                "cones do not share a lineality space"
            );
        }
        Fan {
            ambient_dim,
            lineality,
            maximal_cones: keep,
            support,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn lineality(&self) -> &[Vec<Rational>] {
        &self.lineality
    }

    pub fn maximal_cones(&self) -> &[Polyhedron] {
        &self.maximal_cones
    }

    pub fn support(&self) -> &Polyhedron {
        &self.support
    }

    /// All faces of all maximal cones, deduplicated.
    pub fn all_cones(&self) -> Vec<Polyhedron> {
        let mut out = Vec::new();
        for c in &self.maximal_cones {
            for f in c.all_faces() {
                out.push(f.as_polyhedron());
            }
        }
        dedup_by_key(out)
    }

    /// Apply an invertible linear map to every cone and the support.
    pub fn transform(&self, map: &RatMatrix) -> Fan {
        assert_eq!(map.nrows(), map.ncols(), "transform must be square");
        assert!(!map.det().is_zero(), "transform must be invertible");
        let cones: Vec<Polyhedron> = self
            .maximal_cones
            .iter()
            .map(|c| c.linear_image(map))
            .collect();
        Fan::from_cones(map.nrows(), cones, self.support.linear_image(map))
    }

    /// Exact fan-axiom audit: every pairwise intersection of maximal cones is
    /// a face of each. Expensive; used by tests and verifiers.
    pub fn audit(&self) -> Result<(), String> {
        for (i, c) in self.maximal_cones.iter().enumerate() {
            for d in self.maximal_cones.iter().skip(i + 1) {
                let inter = c.intersection(d);
                if inter.is_empty() {
                    return Err("cone intersection empty (cones must share 0)".into());
                }
                for cone in [c, d] {
                    // the smallest face of `cone` containing the intersection
                    let tight: Vec<usize> = (0..cone.hrep().nrows())
                        .filter(|&r| {
                            inter
                                .vertices()
                                .iter()
                                .all(|v| cone.hrep().slack(r, v).is_zero())
                                && inter
                                    .rays()
                                    .iter()
                                    .all(|x| dot(cone.hrep().a.row(r), x).is_zero())
                                && inter
                                    .lineality()
                                    .iter()
                                    .all(|x| dot(cone.hrep().a.row(r), x).is_zero())
                        })
                        .collect();
                    let face = Face {
                        parent: cone,
                        active: tight.into_iter().collect(),
                    }
                    .as_polyhedron();
                    if !face.equal_as_set(&inter) {
                        return Err(format!(
                            "intersection of cones {:?} and {:?} is not a common face",
                            c.canonical_key(),
                            d.canonical_key()
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A polyhedral complex, represented by its maximal cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralComplex {
    ambient_dim: usize,
    maximal_cells: Vec<Polyhedron>,
    support: Polyhedron,
}

impl PolyhedralComplex {
    pub fn new(ambient_dim: usize, cells: Vec<Polyhedron>, support: Polyhedron) -> Self {
        assert!(!cells.is_empty());
        let maximal_cells = dedup_by_key(cells);
        PolyhedralComplex {
            ambient_dim,
            maximal_cells,
            support,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn maximal_cells(&self) -> &[Polyhedron] {
        &self.maximal_cells
    }

    pub fn support(&self) -> &Polyhedron {
        &self.support
    }

    /// All faces of all maximal cells, deduplicated.
    pub fn all_cells(&self) -> Vec<Polyhedron> {
        let mut out = Vec::new();
        for c in &self.maximal_cells {
            for f in c.all_faces() {
                out.push(f.as_polyhedron());
            }
        }
        dedup_by_key(out)
    }
}

/// Inner normal cone of a face: the cone generated by the active rows.
pub fn normal_cone(p: &Polyhedron, face: &Face<'_>) -> Polyhedron {
    let n = p.ambient_dim();
    let rays: Vec<Vec<Rational>> = face
        .active
        .iter()
        .map(|&i| p.hrep().a.row(i).to_vec())
        .collect();
    Polyhedron::from_vrep(
        &VRep {
            vertices: vec![vec![Rational::zero(); n]],
            rays,
            lineality: Vec::new(),
        },
        n,
    )
}

/// Inner normal fan: maximal cones are the normal cones of the minimal faces,
/// supported on the dual of the recession cone.
pub fn normal_fan(p: &Polyhedron) -> Result<Fan, Error> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let n = p.ambient_dim();
    let support = p.recession_cone()?.dual_cone()?;
    let mut cones = Vec::new();
    for (vi, _) in p.vertices().iter().enumerate() {
        let face = Face {
            parent: p,
            active: p.incidence(vi).clone(),
        };
        cones.push(normal_cone(p, &face));
    }
    Ok(Fan::from_cones(n, cones, support))
}

/// Exact support-equality check, with a witness generator on mismatch.
fn check_equal_supports(fans: &[Fan]) -> Result<(), Error> {
    let s0 = fans[0].support();
    for f in &fans[1..] {
        let s = f.support();
        for (x, y) in [(s0, s), (s, s0)] {
            for r in x.rays() {
                if !y.contains_ray(r) {
                    return Err(Error::SupportMismatch { witness: r.clone() });
                }
            }
            for l in x.lineality() {
                if !(y.contains_ray(l) && y.contains_ray(&exact::vec_neg(l))) {
                    return Err(Error::SupportMismatch { witness: l.clone() });
                }
            }
        }
    }
    Ok(())
}

/// Common refinement of fans with equal support: maximal cones are the
/// full-dimensional-in-support intersections, one cone from each fan. The
/// cell of a generic point is the intersection of the smallest cones of each
/// fan containing it, so the region-walking engine applies directly.
pub fn common_refinement(fans: &[Fan]) -> Result<Fan, Error> {
    assert!(!fans.is_empty());
    check_equal_supports(fans)?;
    let support = fans[0].support().clone();
    if fans.len() == 1 {
        return Ok(fans[0].clone());
    }
    let groups: Vec<RegionGroup> = fans
        .iter()
        .map(|f| RegionGroup {
            regions: f.maximal_cones().to_vec(),
            partition: true,
        })
        .collect();
    let cells = refine_groups(&support, &groups);
    Ok(Fan::from_maximal_cones(
        fans[0].ambient_dim(),
        cells,
        support,
    ))
}

/// A point of the form `base + eps * dirs[0] + eps^2 * dirs[1] + ...` for
/// infinitesimal `eps > 0`, held with cleared denominators; sign queries
/// against integer rows are decided lexicographically in integers.
struct LexPoint {
    base_num: Vec<Integer>,
    base_den: Integer,
    dirs: Vec<Vec<Integer>>,
}

type IntRow = (Vec<Integer>, Integer);

impl LexPoint {
    fn new(base: &[Rational], dirs: &[Vec<Rational>]) -> LexPoint {
        let mut den = Integer::from(1);
        for x in base {
            den = num_integer::Integer::lcm(&den, x.denom());
        }
        let base_num: Vec<Integer> = base
            .iter()
            .map(|x| x.numer() * (&den / x.denom()))
            .collect();
        LexPoint {
            base_num,
            base_den: den,
            dirs: dirs.iter().map(|d| exact::to_int_primitive(d)).collect(),
        }
    }

    /// Sign of `a . x - b` at the perturbed point.
    fn row_sign(&self, row: &IntRow) -> std::cmp::Ordering {
        use num_traits::Signed;
        let (a, b) = row;
        let v0 = exact::int_dot(a, &self.base_num) - b * &self.base_den;
        if !v0.is_zero() {
            return if v0.is_positive() {
                std::cmp::Ordering::Greater
            } else {
                std::cmp::Ordering::Less
            };
        }
        for d in &self.dirs {
            let v = exact::int_dot(a, d);
            if !v.is_zero() {
                return if v.is_positive() {
                    std::cmp::Ordering::Greater
                } else {
                    std::cmp::Ordering::Less
                };
            }
        }
        std::cmp::Ordering::Equal
    }

    fn contained_in(&self, rows: &[IntRow]) -> bool {
        rows.iter()
            .all(|r| self.row_sign(r) != std::cmp::Ordering::Less)
    }
}

/// A group of regions for the refinement engine. When `partition` is set the
/// regions' relative interiors are pairwise disjoint and cover the support
/// (the maximal cones of a fan), so a generic point lies in exactly one and
/// the membership scan stops at the first hit.
pub struct RegionGroup {
    pub regions: Vec<Polyhedron>,
    pub partition: bool,
}

/// Maximal cells of the common refinement of the groups' regions inside
/// `support`: the cell of a generic point `x` is the intersection of all
/// regions containing `x`. Cells are enumerated by walking across facets
/// from a generic seed.
///
/// Requires that the regions cover `support` and that the refinement is a
/// genuine polyhedral complex (true for subdivisions induced by projections
/// of face lattices, and for collections of fans).
pub fn refine_groups(support: &Polyhedron, groups: &[RegionGroup]) -> Vec<Polyhedron> {
    assert!(!support.is_empty());
    let n = support.ambient_dim();
    if support.dim() <= 0 {
        return vec![support.clone()];
    }
    let support_rows: Vec<IntRow> = crate::polyhedron::int_rows_of(support);
    let group_rows: Vec<(bool, Vec<Vec<IntRow>>)> = groups
        .iter()
        .map(|g| {
            (
                g.partition,
                g.regions
                    .iter()
                    .map(crate::polyhedron::int_rows_of)
                    .collect(),
            )
        })
        .collect();
    let hull_basis = support.affine_hull_lin_basis();
    let target_dim = support.dim();

    // gram inverse of the hull basis, for projecting facet normals
    let k = hull_basis.len();
    let mut gram = RatMatrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            *gram.at_mut(i, j) = dot(&hull_basis[i], &hull_basis[j]);
        }
    }
    let gram_inv = gram.inverse().expect("hull basis is independent");
    let project = |a: &[Rational]| -> Vec<Rational> {
        let rhs: Vec<Rational> = hull_basis.iter().map(|w| dot(w, a)).collect();
        let c = gram_inv.mul_vec(&rhs);
        let mut p = vec![Rational::zero(); a.len()];
        for (ci, w) in c.iter().zip(&hull_basis) {
            if !ci.is_zero() {
                p = exact::vec_add(&p, &vec_scale(ci, w));
            }
        }
        p
    };

    // the stacked system of all regions containing the perturbed point
    let cell_rows_of = |pt: &LexPoint| -> Vec<IntRow> {
        let mut seen: std::collections::BTreeSet<IntRow> = support_rows.iter().cloned().collect();
        for (partition, regions) in &group_rows {
            for rows in regions {
                if pt.contained_in(rows) {
                    for r in rows {
                        seen.insert(r.clone());
                    }
                    if *partition {
                        break;
                    }
                }
            }
        }
        seen.into_iter().collect()
    };

    let affine_rank = |verts: &[&Vec<Rational>], rays: &[&Vec<Rational>], lin: &[Vec<Rational>]| {
        let mut rows: Vec<Vec<Integer>> = Vec::new();
        if let Some(v0) = verts.first() {
            for v in &verts[1..] {
                rows.push(exact::to_int_primitive(&exact::vec_sub(v, v0)));
            }
        }
        for r in rays {
            rows.push(exact::to_int_primitive(r));
        }
        for l in lin {
            rows.push(exact::to_int_primitive(l));
        }
        exact::int_rank(&rows)
    };

    let seed_base = support.relint_point().expect("support nonempty");
    let seed = LexPoint::new(&seed_base, &hull_basis);
    let first_rows = cell_rows_of(&seed);
    let first = crate::polyhedron::cell_generators(n, &first_rows).expect("seed cell nonempty");

    let mut cells: BTreeMap<PolyKey, crate::polyhedron::CellData> = BTreeMap::new();
    let mut queue: Vec<(Vec<IntRow>, crate::polyhedron::CellData)> = Vec::new();
    cells.insert(first.key(), first.clone());
    queue.push((first_rows, first));

    while let Some((rows, cell)) = queue.pop() {
        let all_verts: Vec<&Vec<Rational>> = cell.vertices.iter().collect();
        let all_rays: Vec<&Vec<Rational>> = cell.rays.iter().collect();
        let dim_cell = affine_rank(&all_verts, &all_rays, &cell.lineality);
        debug_assert_eq!(dim_cell as i64, target_dim, "cell not full-dimensional");
        // gather candidate facets: rows grouped by their tight generator set
        let mut facet_groups: std::collections::BTreeMap<(Vec<usize>, Vec<usize>), usize> =
            std::collections::BTreeMap::new();
        for i in 0..rows.len() {
            let on_verts: Vec<usize> = (0..cell.vertices.len())
                .filter(|&g| cell.vert_tight[g][i / 64] & (1 << (i % 64)) != 0)
                .collect();
            if on_verts.is_empty() {
                continue;
            }
            let on_rays: Vec<usize> = (0..cell.rays.len())
                .filter(|&g| cell.ray_tight[g][i / 64] & (1 << (i % 64)) != 0)
                .collect();
            if on_verts.len() == cell.vertices.len() && on_rays.len() == cell.rays.len() {
                continue; // row tight on the whole cell
            }
            facet_groups.entry((on_verts, on_rays)).or_insert(i);
        }
        for ((on_verts, on_rays), row_idx) in facet_groups {
            let verts: Vec<&Vec<Rational>> = on_verts.iter().map(|&g| &cell.vertices[g]).collect();
            let rays: Vec<&Vec<Rational>> = on_rays.iter().map(|&g| &cell.rays[g]).collect();
            if affine_rank(&verts, &rays, &cell.lineality) + 1 != dim_cell {
                continue; // tight set of lower dimension, not a facet
            }
            // relint point of the facet
            let count = exact::rat_int(verts.len() as i64);
            let mut y = vec![Rational::zero(); n];
            for v in &verts {
                y = exact::vec_add(&y, v);
            }
            y = y.iter().map(|x| x / &count).collect();
            for r in &rays {
                y = exact::vec_add(&y, r);
            }
            let a_rat: Vec<Rational> = rows[row_idx]
                .0
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let inward = project(&a_rat);
            if exact::is_zero_vec(&inward) {
                continue; // row constant on the affine hull
            }
            let step = LexPoint::new(&y, &[exact::vec_neg(&inward)]);
            if !step.contained_in(&support_rows) {
                continue; // facet on the support boundary
            }
            let nrows = cell_rows_of(&step);
            let ncell =
                crate::polyhedron::cell_generators(n, &nrows).expect("neighbor cell nonempty");
            if let std::collections::btree_map::Entry::Vacant(e) = cells.entry(ncell.key()) {
                e.insert(ncell.clone());
                queue.push((nrows, ncell));
            }
        }
    }
    cells.into_values().map(|c| c.to_polyhedron(n)).collect()
}

/// Common refinement of an unstructured region collection inside `support`.
pub fn refine_regions(support: &Polyhedron, regions: &[Polyhedron]) -> Vec<Polyhedron> {
    refine_groups(
        support,
        &[RegionGroup {
            regions: regions.to_vec(),
            partition: false,
        }],
    )
}

/// The fan induced by mapping a collection of cones (typically the faces of
/// a cone or all cones of a fan): the common refinement of the images.
pub fn induced_fan(map: &RatMatrix, cones: &[Polyhedron], support_preimage: &Polyhedron) -> Fan {
    let support = support_preimage.linear_image(map);
    let regions: Vec<Polyhedron> =
        dedup_by_key(cones.iter().map(|c| c.linear_image(map)).collect());
    let cells = refine_regions(&support, &regions);
    Fan::from_maximal_cones(map.nrows(), cells, support)
}

/// Induced fan of a whole fan under a linear map (uses all faces of all
/// maximal cones).
pub fn induced_fan_of_fan(map: &RatMatrix, fan: &Fan) -> Fan {
    let cones = fan.all_cones();
    induced_fan(map, &cones, fan.support())
}

/// The cone over a polyhedral complex: homogenize every maximal cell and
/// adjoin the height-zero recession cones of unbounded cells.
pub fn cone_over_complex(k: &PolyhedralComplex) -> Result<Fan, Error> {
    let d = k.ambient_dim();
    let mut cones: Vec<Polyhedron> = Vec::new();
    for cell in k.maximal_cells() {
        cones.push(cell.homogenize()?);
        if !cell.rays().is_empty() || !cell.lineality().is_empty() {
            let rec = cell.recession_cone()?;
            let embed = |v: &[Rational]| {
                let mut x = v.to_vec();
                x.push(Rational::zero());
                x
            };
            cones.push(Polyhedron::from_vrep(
                &VRep {
                    vertices: vec![vec![Rational::zero(); d + 1]],
                    rays: rec.rays().iter().map(|r| embed(r)).collect(),
                    lineality: rec.lineality().iter().map(|l| embed(l)).collect(),
                },
                d + 1,
            ));
        }
    }
    let support = k.support().homogenize()?;
    Ok(Fan::from_cones(d + 1, cones, support))
}

/// Exact fan equality on canonical forms; on inequality returns a witness
/// cone present in exactly one of the fans.
pub fn fan_equal(f1: &Fan, f2: &Fan) -> (bool, Option<Polyhedron>) {
    assert_eq!(
        f1.ambient_dim(),
        f2.ambient_dim(),
        "ambient dimensions differ"
    );
    if f1.lineality() != f2.lineality() {
        let witness = f1.maximal_cones().first().or(f2.maximal_cones().first());
        return (false, witness.cloned());
    }
    let k1: BTreeMap<PolyKey, &Polyhedron> = f1
        .maximal_cones()
        .iter()
        .map(|c| (c.canonical_key(), c))
        .collect();
    let k2: BTreeMap<PolyKey, &Polyhedron> = f2
        .maximal_cones()
        .iter()
        .map(|c| (c.canonical_key(), c))
        .collect();
    for (k, c) in &k1 {
        if !k2.contains_key(k) {
            return (false, Some((*c).clone()));
        }
    }
    for (k, c) in &k2 {
        if !k1.contains_key(k) {
            return (false, Some((*c).clone()));
        }
    }
    (true, None)
}
