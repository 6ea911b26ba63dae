//! Projection contexts, fiber fans, GIT chamber complexes, quotient fans,
//! Chow quotient fans and the duality verifiers.
//!
//! A [`ProjectionContext`] fixes, once per lattice projection, a saturated
//! integer kernel basis and a rational section, together with the lifted and
//! dualized maps of the projection diagram. Fiber slices are expressed in
//! kernel coordinates, so every construction downstream (normal fans of
//! fibers, coherent subdivisions, fiber fans) lives in one fixed coordinate
//! system and exact fan equality is meaningful.

use serde::Serialize;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exact::{
    self, dot, integer_image_basis, integer_kernel_basis, solve_rational, vec_add, IntMatrix,
    Integer, RatMatrix, Rational,
};
use crate::fan::{
    common_refinement, cone_over_complex, fan_equal, normal_cone, normal_fan, Fan,
    PolyhedralComplex,
};
use crate::polyhedron::{dedup_by_key, face_image, mapped_row_cone, Face, HRep, Polyhedron};

/// All derived maps and lattices of one lattice projection `pi: Z^n -> Z^d`.
#[derive(Debug, Clone)]
pub struct ProjectionContext {
    pi_z: IntMatrix,
    n: usize,
    d: usize,
    /// Saturated ℤ-basis of `ker(pi) ∩ Z^n`, as rows.
    kernel_basis: Vec<Vec<Integer>>,
    /// Kernel basis as columns: the inclusion `Q^{n-d} -> Q^n`.
    kernel_cols: RatMatrix,
    /// Rational section: `pi ∘ section = id` on `Q^d`.
    section: RatMatrix,
    /// Matrix of `pi_vee : (Q^n)* -> ker(pi)*`, rows are the kernel basis.
    pi_vee: RatMatrix,
    /// Lift `(x, t) -> (pi(x), t)`.
    tilde_pi: IntMatrix,
    /// Matrix of `tilde_pi_vee : (Q^{n+1})* -> ker(tilde_pi)*`.
    tilde_pi_vee: IntMatrix,
    /// First and second coordinate projections of `Q^n ⊕ Q`.
    p1: RatMatrix,
    p2: RatMatrix,
    /// HNF basis of the image lattice `L = im_Z(pi)`.
    image_lattice: Vec<Vec<Integer>>,
    /// HNF basis of `L' = im_Z(tilde_pi_vee)`.
    dual_image_lattice: Vec<Vec<Integer>>,
}

impl ProjectionContext {
    pub fn pi_z(&self) -> &IntMatrix {
        &self.pi_z
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn kernel_dim(&self) -> usize {
        self.n - self.d
    }

    pub fn kernel_basis(&self) -> &[Vec<Integer>] {
        &self.kernel_basis
    }

    pub fn pi_rat(&self) -> RatMatrix {
        self.pi_z.to_rational()
    }

    pub fn pi_vee(&self) -> &RatMatrix {
        &self.pi_vee
    }

    pub fn tilde_pi(&self) -> &IntMatrix {
        &self.tilde_pi
    }

    pub fn tilde_pi_vee(&self) -> &IntMatrix {
        &self.tilde_pi_vee
    }

    pub fn p1(&self) -> &RatMatrix {
        &self.p1
    }

    pub fn p2(&self) -> &RatMatrix {
        &self.p2
    }

    pub fn image_lattice(&self) -> &[Vec<Integer>] {
        &self.image_lattice
    }

    pub fn dual_image_lattice(&self) -> &[Vec<Integer>] {
        &self.dual_image_lattice
    }

    /// Image `pi(P)` of a polyhedron.
    pub fn project(&self, p: &Polyhedron) -> Polyhedron {
        p.linear_image(&self.pi_rat())
    }

    /// The lift of `q` through the fixed rational section.
    pub fn lift(&self, q: &[Rational]) -> Vec<Rational> {
        assert_eq!(q.len(), self.d);
        self.section.mul_vec(q)
    }

    /// Embed kernel coordinates into the ambient space over the lift of `q`.
    pub fn embed_fiber_point(&self, q: &[Rational], x: &[Rational]) -> Vec<Rational> {
        vec_add(&self.lift(q), &self.kernel_cols.mul_vec(x))
    }

    /// The slice `P_q` in kernel coordinates:
    /// `{x' : (A K) x' >= b - A s(q)}`.
    pub fn fiber_slice(&self, p: &Polyhedron, q: &[Rational]) -> Result<Polyhedron, Error> {
        assert_eq!(p.ambient_dim(), self.n);
        assert_eq!(q.len(), self.d);
        if p.is_empty() {
            return Err(Error::FiberEmpty);
        }
        let lifted = self.lift(q);
        let h = p.hrep();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(h.nrows());
        let mut b: Vec<Rational> = Vec::with_capacity(h.nrows());
        for i in 0..h.nrows() {
            let a = h.a.row(i);
            rows.push(self.pi_vee.mul_vec(a));
            b.push(h.b[i].clone() - dot(a, &lifted));
        }
        let slice =
            Polyhedron::from_hrep(&HRep::new(RatMatrix::from_rows(rows, self.kernel_dim()), b));
        if slice.is_empty() {
            return Err(Error::FiberEmpty);
        }
        Ok(slice)
    }

    /// The smallest face of `p` containing the preimage of the face of the
    /// slice `P_q` minimizing `w`.
    pub fn tilde_face<'p>(
        &self,
        p: &'p Polyhedron,
        q: &[Rational],
        w: &[Rational],
    ) -> Result<Face<'p>, Error> {
        let slice = self.fiber_slice(p, q)?;
        let face = slice.face_min(w)?;
        let rel = face.relint_point();
        let lifted = self.embed_fiber_point(q, &rel);
        p.minimal_face_containing(&[lifted])
    }
}

/// Build a projection context, verifying rank and the commutation identities
/// of the lifted diagram at construction time.
pub fn make_context(pi_z: IntMatrix) -> Result<ProjectionContext, Error> {
    let d = pi_z.nrows();
    let n = pi_z.ncols();
    if d >= n || pi_z.rank() != d {
        return Err(Error::RankDeficient);
    }
    let kernel_basis = integer_kernel_basis(&pi_z);
    assert_eq!(kernel_basis.len(), n - d, "kernel rank identity");

    let pi_rat = pi_z.to_rational();
    let mut section = RatMatrix::zero(n, d);
    for j in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[j] = Rational::one();
        let s = solve_rational(&pi_rat, &e).ok_or(Error::RankDeficient)?;
        for (i, x) in s.iter().enumerate() {
            *section.at_mut(i, j) = x.clone();
        }
    }

    let pi_vee = RatMatrix::from_rows(
        kernel_basis
            .iter()
            .map(|k| {
                k.iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect(),
        n,
    );
    let kernel_cols = pi_vee.transpose();

    let mut tilde_pi = IntMatrix::zero(d + 1, n + 1);
    for i in 0..d {
        for j in 0..n {
            *tilde_pi.at_mut(i, j) = pi_z.at(i, j).clone();
        }
    }
    *tilde_pi.at_mut(d, n) = Integer::one();

    let mut tilde_pi_vee = IntMatrix::zero(n - d, n + 1);
    for (i, k) in kernel_basis.iter().enumerate() {
        for (j, x) in k.iter().enumerate() {
            *tilde_pi_vee.at_mut(i, j) = x.clone();
        }
    }

    let mut p1 = RatMatrix::zero(n, n + 1);
    for i in 0..n {
        *p1.at_mut(i, i) = Rational::one();
    }
    let mut p2 = RatMatrix::zero(1, n + 1);
    *p2.at_mut(0, n) = Rational::one();

    // commutation identities of the lifted diagram, as matrix identities
    for k in &kernel_basis {
        assert!(
            pi_z.mul_int_vec(k).iter().all(|x| x.is_zero()),
            "kernel basis not in the kernel"
        );
        let mut lifted: Vec<Integer> = k.clone();
        lifted.push(Integer::zero());
        assert!(
            tilde_pi.mul_int_vec(&lifted).iter().all(|x| x.is_zero()),
            "lifted kernel vector not in ker(tilde_pi)"
        );
    }
    // tilde_pi_vee = pi_vee ∘ p1 on (Q^{n+1})*
    assert_eq!(
        tilde_pi_vee.to_rational(),
        pi_vee.mul_mat(&p1),
        "dual lift diagram does not commute"
    );

    let image_lattice = integer_image_basis(&pi_z);
    let dual_image_lattice = integer_image_basis(&tilde_pi_vee);

    Ok(ProjectionContext {
        pi_z,
        n,
        d,
        kernel_basis,
        kernel_cols,
        section,
        pi_vee,
        tilde_pi,
        tilde_pi_vee,
        p1,
        p2,
        image_lattice,
        dual_image_lattice,
    })
}

/// `T` with columns solving `outer^T t_j = kernel_basis[j]`, valid when the
/// rational kernel of the context map equals the row space of `outer`. Fans
/// in the context's kernel-dual coordinates move to the coordinates of
/// `outer`'s target by `(T^{-1})^T`; functionals come back by `T^T`.
fn kernel_rowspace_transform(outer: &RatMatrix, ctx: &ProjectionContext) -> RatMatrix {
    let m = outer.nrows();
    assert_eq!(ctx.kernel_dim(), m, "rank mismatch in identification");
    let outer_t = outer.transpose();
    let mut t = RatMatrix::zero(m, m);
    for (j, k) in ctx.kernel_basis().iter().enumerate() {
        let rhs: Vec<Rational> = k
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        let col = solve_rational(&outer_t, &rhs)
            .expect("kernel of inner map must equal the row space of outer");
        assert_eq!(outer_t.mul_vec(&col), rhs, "identification is not exact");
        for (i, x) in col.iter().enumerate() {
            *t.at_mut(i, j) = x.clone();
        }
    }
    t
}

/// Move a fan from the context's kernel-dual coordinates to the coordinate
/// system of `outer`'s target, making the canonical identification of the
/// two spaces an explicit change of basis.
fn transform_fan_to_image_coords(fan: &Fan, outer: &RatMatrix, ctx: &ProjectionContext) -> Fan {
    let t = kernel_rowspace_transform(outer, ctx);
    let m = t
        .inverse()
        .expect("identification matrix is invertible")
        .transpose();
    fan.transform(&m)
}

/// A functional on the image coordinates, rewritten in the context's
/// kernel-dual coordinates.
fn functional_to_kernel_coords(
    v: &[Rational],
    outer: &RatMatrix,
    ctx: &ProjectionContext,
) -> Vec<Rational> {
    let t = kernel_rowspace_transform(outer, ctx);
    t.transpose().mul_vec(v)
}

/// The GIT chamber decomposition: the subdivision of `Q = pi(P)` induced by
/// the projected faces of `P`.
pub fn git_chamber_complex(
    p: &Polyhedron,
    ctx: &ProjectionContext,
) -> Result<PolyhedralComplex, Error> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let pi = ctx.pi_rat();
    let support = p.linear_image(&pi);
    let regions: Vec<Polyhedron> =
        dedup_by_key(p.all_faces().iter().map(|f| face_image(f, &pi)).collect());
    let cells = crate::fan::refine_regions(&support, &regions);
    Ok(PolyhedralComplex::new(ctx.d(), cells, support))
}

/// The GIT quotient fan at linearization `v`: the inner normal fan of the
/// fiber `P_v` in kernel coordinates.
pub fn git_quotient_fan(
    p: &Polyhedron,
    ctx: &ProjectionContext,
    v: &[Rational],
) -> Result<Fan, Error> {
    let fiber = ctx.fiber_slice(p, v)?;
    normal_fan(&fiber)
}

/// The `v`-induced coherent subdivision of `pi_vee(C_vee)`: cells are the
/// projected normal cones of the faces of `C` whose projected relative
/// interior contains `v`. Equals the GIT quotient fan by the normal-fan
/// corollary; computed here by the independent dual-side route.
pub fn coherent_subdivision(
    c: &Polyhedron,
    ctx: &ProjectionContext,
    v: &[Rational],
) -> Result<Fan, Error> {
    if !c.is_cone() {
        return Err(Error::NotACone);
    }
    let pi = ctx.pi_rat();
    let image = c.linear_image(&pi);
    if !image.contains(v) {
        return Err(Error::FiberEmpty);
    }
    let dual = c.dual_cone()?;
    let support = dual.linear_image(ctx.pi_vee());
    let mut cells: Vec<Polyhedron> = Vec::new();
    for f in c.all_faces() {
        let img = face_image(&f, &pi);
        if img.contains_relint(v) {
            cells.push(mapped_row_cone(&f, ctx.pi_vee()));
        }
    }
    assert!(!cells.is_empty(), "no face projects over v in its relint");
    Ok(Fan::from_cones(ctx.kernel_dim(), cells, support))
}

/// Which route to use for the fiber fan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberFanRoute {
    /// Common refinement of the normal fans of chamber-representative fibers.
    Direct,
    /// Fan induced by mapping the normal fan of the homogenization through
    /// the dualized lift.
    Dual,
    /// Compute both and fail on mismatch.
    Both,
}

/// The fiber fan `N(P, pi(P))` in kernel-dual coordinates.
pub fn fiber_fan(
    p: &Polyhedron,
    ctx: &ProjectionContext,
    route: FiberFanRoute,
) -> Result<Fan, Error> {
    match route {
        FiberFanRoute::Direct => fiber_fan_direct(p, ctx),
        FiberFanRoute::Dual => fiber_fan_dual(p, ctx),
        FiberFanRoute::Both => {
            let direct = fiber_fan_direct(p, ctx)?;
            let dual = fiber_fan_dual(p, ctx)?;
            let (eq, _) = fan_equal(&direct, &dual);
            if !eq {
                return Err(Error::RouteMismatch {
                    direct: Box::new(direct),
                    dual: Box::new(dual),
                });
            }
            Ok(direct)
        }
    }
}

fn fiber_fan_direct(p: &Polyhedron, ctx: &ProjectionContext) -> Result<Fan, Error> {
    let chambers = git_chamber_complex(p, ctx)?;
    let mut fans = Vec::new();
    for cell in chambers.maximal_cells() {
        let rep = cell.relint_point()?;
        let fiber = ctx.fiber_slice(p, &rep)?;
        fans.push(normal_fan(&fiber)?);
    }
    common_refinement(&fans)
}

fn fiber_fan_dual(p: &Polyhedron, ctx: &ProjectionContext) -> Result<Fan, Error> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let tp = p.homogenize()?;
    let map = ctx.tilde_pi_vee().to_rational();
    let kernel_dim = ctx.kernel_dim();
    // cones of the normal fan of tp = normal cones of its faces, generated
    // by the active rows; map the generators directly
    let mut regions: Vec<Polyhedron> = Vec::new();
    for f in tp.all_faces() {
        regions.push(mapped_row_cone(&f, &map));
    }
    let regions = dedup_by_key(regions);
    let support = tp.dual_cone()?.linear_image(&map);
    let cells = crate::fan::refine_regions(&support, &regions);
    Ok(Fan::from_maximal_cones(kernel_dim, cells, support))
}

/// The fan of the toric Chow quotient: the fiber fan, computed by both
/// routes as an internal consistency check.
pub fn chow_fan(p: &Polyhedron, ctx: &ProjectionContext) -> Result<Fan, Error> {
    fiber_fan(p, ctx, FiberFanRoute::Both)
}

/// Dual data `(P', ctx')` in the shape of the duality theorems: for a cone,
/// `(P_vee, pi_vee)`; otherwise the homogenized form
/// `((P~)_vee, tilde_pi_vee)`.
pub fn dual_data(
    p: &Polyhedron,
    ctx: &ProjectionContext,
) -> Result<(Polyhedron, ProjectionContext), Error> {
    if p.is_cone() {
        let p_prime = p.dual_cone()?;
        let rows: Vec<Vec<Integer>> = ctx.kernel_basis().to_vec();
        let ctx_prime = make_context(IntMatrix::from_rows(rows, ctx.n()))?;
        Ok((p_prime, ctx_prime))
    } else {
        dual_data_homogenized(p, ctx)
    }
}

/// Dual data in the general (homogenized) form, valid for every nonempty
/// polyhedron including cones.
pub fn dual_data_homogenized(
    p: &Polyhedron,
    ctx: &ProjectionContext,
) -> Result<(Polyhedron, ProjectionContext), Error> {
    if p.is_empty() {
        return Err(Error::EmptyPolyhedron);
    }
    let tp = p.homogenize()?;
    let p_prime = tp.dual_cone()?;
    let ctx_prime = make_context(ctx.tilde_pi_vee().clone())?;
    Ok((p_prime, ctx_prime))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyStatus {
    Pass,
    Fail,
}

/// Structured pass/fail evidence for one theorem check.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub instances: usize,
    pub status: VerifyStatus,
    /// On failure: a replayable description of the first failing instance.
    pub witness: Option<String>,
}

impl VerificationReport {
    fn pass(claim: &str, instances: usize) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            instances,
            status: VerifyStatus::Pass,
            witness: None,
        }
    }

    fn fail(claim: &str, instances: usize, witness: String) -> Self {
        VerificationReport {
            claim: claim.to_string(),
            instances,
            status: VerifyStatus::Fail,
            witness: Some(witness),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == VerifyStatus::Pass
    }
}

fn describe_fan(fan: &Fan) -> String {
    let cones: Vec<String> = fan
        .maximal_cones()
        .iter()
        .map(|c| format!("rays{:?}lin{:?}", c.rays(), c.lineality()))
        .collect();
    cones.join(" | ")
}

/// Main theorem: the cone over the GIT chamber decomposition of `(P, pi)`
/// equals the Chow quotient fan of the dual data, after the explicit
/// coordinate identification.
pub fn verify_main_theorem(
    p: &Polyhedron,
    ctx: &ProjectionContext,
) -> Result<VerificationReport, Error> {
    let claim = "main-theorem";
    let chambers = git_chamber_complex(p, ctx)?;
    let lhs = cone_over_complex(&chambers)?;
    let (p_prime, ctx_prime) = dual_data_homogenized(p, ctx)?;
    let chow = chow_fan(&p_prime, &ctx_prime)?;
    let outer = ctx.tilde_pi().to_rational();
    let rhs = transform_fan_to_image_coords(&chow, &outer, &ctx_prime);
    let (eq, witness) = fan_equal(&lhs, &rhs);
    if eq {
        Ok(VerificationReport::pass(claim, 1))
    } else {
        Ok(VerificationReport::fail(
            claim,
            1,
            format!(
                "cone-over-chambers != chow fan of dual data; witness cone {:?};\nlhs: {}\nrhs: {}",
                witness.map(|w| w.canonical_key()),
                describe_fan(&lhs),
                describe_fan(&rhs)
            ),
        ))
    }
}

/// Affine duality: part (i) compares the Chow fan of `(P, pi)` with the fan
/// induced by projecting the faces of `P_vee`; part (ii) compares the
/// chamber decomposition of `(P, pi)`, read as a fan of cones, with the Chow
/// fan of the dual data.
pub fn verify_affine_duality(
    p: &Polyhedron,
    ctx: &ProjectionContext,
) -> Result<VerificationReport, Error> {
    let claim = "affine-duality";
    if !p.is_cone() {
        return Err(Error::NotACone);
    }
    // part (i)
    let lhs1 = chow_fan(p, ctx)?;
    let dual = p.dual_cone()?;
    let dual_face_images: Vec<Polyhedron> = dedup_by_key(
        dual.all_faces()
            .iter()
            .map(|f| face_image(f, ctx.pi_vee()))
            .collect(),
    );
    let support1 = dual.linear_image(ctx.pi_vee());
    let cells1 = crate::fan::refine_regions(&support1, &dual_face_images);
    let rhs1 = Fan::from_maximal_cones(ctx.kernel_dim(), cells1, support1);
    let (eq1, w1) = fan_equal(&lhs1, &rhs1);
    if !eq1 {
        return Ok(VerificationReport::fail(
            claim,
            2,
            format!(
                "part (i): chow fan != induced fan of projected dual faces; witness {:?}",
                w1.map(|w| w.canonical_key())
            ),
        ));
    }
    // part (ii): the chamber complex of a cone consists of cones
    let chambers = git_chamber_complex(p, ctx)?;
    let lhs2 = Fan::from_cones(
        ctx.d(),
        chambers.maximal_cells().to_vec(),
        chambers.support().clone(),
    );
    let (p_prime, ctx_prime) = dual_data(p, ctx)?;
    let chow = chow_fan(&p_prime, &ctx_prime)?;
    let rhs2 = transform_fan_to_image_coords(&chow, &ctx.pi_rat(), &ctx_prime);
    let (eq2, w2) = fan_equal(&lhs2, &rhs2);
    if !eq2 {
        return Ok(VerificationReport::fail(
            claim,
            2,
            format!(
                "part (ii): chamber fan != chow fan of dual data; witness {:?};\nlhs: {}\nrhs: {}",
                w2.map(|w| w.canonical_key()),
                describe_fan(&lhs2),
                describe_fan(&rhs2)
            ),
        ));
    }
    Ok(VerificationReport::pass(claim, 2))
}

/// Sampled vectors in a cone: deterministic extremes (origin, rays, relint
/// point) followed by seeded nonnegative integer combinations of the
/// generators.
fn sample_cone_points(cone: &Polyhedron, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    let dim = cone.ambient_dim();
    let mut out: Vec<Vec<Rational>> = Vec::new();
    out.push(vec![Rational::zero(); dim]);
    for r in cone.rays() {
        out.push(r.clone());
    }
    if let Ok(p) = cone.relint_point() {
        out.push(p);
    }
    while out.len() < count {
        let mut v = vec![Rational::zero(); dim];
        for r in cone.rays() {
            let c = exact::rat_int(rng.random_range(0..4));
            v = vec_add(&v, &exact::vec_scale(&c, r));
        }
        for l in cone.lineality() {
            let c = exact::rat_int(rng.random_range(-3..4));
            v = vec_add(&v, &exact::vec_scale(&c, l));
        }
        out.push(v);
    }
    out.truncate(count);
    out
}

/// Fiber duality: for sampled `(v, w)` the normal cone of the tilde-face on
/// the primal side equals the tilde-face on the dual side, and the
/// biconditional of the dual lemma holds over the whole face lattice.
pub fn verify_fiber_duality(
    c: &Polyhedron,
    ctx: &ProjectionContext,
    samples: usize,
    seed: u64,
) -> Result<VerificationReport, Error> {
    let claim = "fiber-duality";
    if !c.is_cone() {
        return Err(Error::NotACone);
    }
    let pi = ctx.pi_rat();
    let dual = c.dual_cone()?;
    let ctx_dual = make_context(IntMatrix::from_rows(ctx.kernel_basis().to_vec(), ctx.n()))?;
    let image = c.linear_image(&pi);
    let dual_image = dual.linear_image(ctx.pi_vee());

    // cache per face: projected face and projected normal cone
    let faces = c.all_faces();
    let face_data: Vec<(Polyhedron, Polyhedron)> = faces
        .iter()
        .map(|f| (face_image(f, &pi), mapped_row_cone(f, ctx.pi_vee())))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = samples.isqrt().max(1) + 1;
    let vs = sample_cone_points(&image, side, &mut rng);
    let ws = sample_cone_points(&dual_image, side, &mut rng);

    let mut instances = 0;
    'outer: for v in &vs {
        for w in &ws {
            if instances >= samples {
                break 'outer;
            }
            instances += 1;
            let f1 = ctx.tilde_face(c, v, w)?;
            let lhs = normal_cone(c, &f1);
            let v_dual = functional_to_kernel_coords(v, &pi, &ctx_dual);
            let f2 = ctx_dual.tilde_face(&dual, w, &v_dual)?;
            let rhs = f2.as_polyhedron();
            if !lhs.equal_as_set(&rhs) {
                return Ok(VerificationReport::fail(
                    claim,
                    instances,
                    format!(
                        "normal cone of tilde-face != dual tilde-face at v={v:?}, w={w:?}; lhs rays {:?}, rhs rays {:?}",
                        lhs.rays(),
                        rhs.rays()
                    ),
                ));
            }
            // dual-lemma biconditional across the face lattice
            for (f, (img, nimg)) in faces.iter().zip(&face_data) {
                let is_tilde = f.active == f1.active;
                let cond = img.contains_relint(v) && nimg.contains_relint(w);
                if is_tilde != cond {
                    return Ok(VerificationReport::fail(
                        claim,
                        instances,
                        format!(
                            "dual-lemma biconditional fails at v={v:?}, w={w:?} on face {:?}: tilde={is_tilde}, relint conditions={cond}",
                            f.active
                        ),
                    ));
                }
            }
        }
    }
    Ok(VerificationReport::pass(claim, instances))
}
