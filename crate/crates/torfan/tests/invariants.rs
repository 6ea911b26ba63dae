//! Randomized structural invariants on seeded corpora: the statements the
//! modules promise beyond their unit examples.

use torfan::corpus::{random_instances, CorpusKind, CorpusParams};
use torfan::exact::{vec_add, Rational};
use torfan::fan::{
    common_refinement, cone_over_complex, fan_equal, induced_fan, normal_cone, normal_fan, Fan,
};
use torfan::io::instance_to_parts;
use torfan::polyhedron::{HRep, Polyhedron};
use torfan::quotient::{
    coherent_subdivision, dual_data_homogenized, fiber_fan, git_chamber_complex, git_quotient_fan,
    FiberFanRoute, ProjectionContext,
};

fn parts(doc: &torfan::io::InstanceDocument) -> (Polyhedron, ProjectionContext) {
    instance_to_parts(doc).expect("corpus instances are valid")
}

fn fan_key(fan: &Fan) -> Vec<torfan::polyhedron::PolyKey> {
    fan.maximal_cones()
        .iter()
        .map(|c| c.canonical_key())
        .collect()
}

#[test]
fn round_trip_on_random_hreps() {
    let docs = random_instances(&CorpusParams::new(4, 2, 30, 0x11));
    for doc in &docs {
        let (p, _) = parts(doc);
        let q = Polyhedron::from_vrep(p.vrep(), p.ambient_dim());
        assert!(p.equal_as_set(&q));
        assert!(p.is_subset_of(&q) && q.is_subset_of(&p));
        let r = Polyhedron::from_hrep(&HRep::new(p.hrep().a.clone(), p.hrep().b.clone()));
        assert!(r.equal_as_set(&p));
    }
}

#[test]
fn face_equality_lemma_on_random_cones() {
    // pi_vee(N_C(F)) = N_{C_v}(F_v) whenever v lies in pi(relint F)
    let docs = random_instances(&CorpusParams::new(4, 2, 20, 0x12).kind(CorpusKind::Cones));
    let mut checked = 0;
    for doc in &docs {
        let (c, ctx) = parts(doc);
        for f in c.all_faces() {
            let f_poly = f.as_polyhedron();
            let v = ctx.project(&f_poly).relint_point().unwrap();
            let lhs = normal_cone(&c, &f).linear_image(ctx.pi_vee());
            let slice_face = ctx.fiber_slice(&f_poly, &v).unwrap();
            let cv = ctx.fiber_slice(&c, &v).unwrap();
            let inner = cv
                .minimal_face_containing(&[slice_face.relint_point().unwrap()])
                .unwrap();
            let rhs = normal_cone(&cv, &inner);
            assert!(
                lhs.equal_as_set(&rhs),
                "face-equality lemma fails on face {:?}",
                f.active
            );
            checked += 1;
        }
    }
    assert!(checked > 100, "too few faces exercised: {checked}");
}

#[test]
fn finiteness_and_chamber_classification() {
    // normal equivalence classes of fibers: constant on each cell's relative
    // interior, and at most as many classes as cells
    let docs = random_instances(&CorpusParams::new(4, 2, 15, 0x13));
    for doc in &docs {
        let (p, ctx) = parts(doc);
        let complex = git_chamber_complex(&p, &ctx).unwrap();
        let cells = complex.all_cells();
        let mut classes: Vec<Vec<torfan::polyhedron::PolyKey>> = Vec::new();
        for cell in &cells {
            let x = cell.relint_point().unwrap();
            let fan_x = normal_fan(&ctx.fiber_slice(&p, &x).unwrap()).unwrap();
            // a second relint point: midpoint towards a vertex stays interior
            if let Some(v0) = cell.vertices().first() {
                let half = torfan::exact::rat(1, 2);
                let y: Vec<Rational> = vec_add(&x, v0).iter().map(|t| t * &half).collect();
                let fan_y = normal_fan(&ctx.fiber_slice(&p, &y).unwrap()).unwrap();
                assert!(
                    fan_equal(&fan_x, &fan_y).0,
                    "normal equivalence not constant on a cell"
                );
            }
            let key = fan_key(&fan_x);
            if !classes.contains(&key) {
                classes.push(key);
            }
        }
        assert!(
            classes.len() <= cells.len(),
            "more fiber classes ({}) than chamber cells ({})",
            classes.len(),
            cells.len()
        );
    }
}

#[test]
fn face_min_normal_cone_contains_functional() {
    // cross-check with the fans module: the minimizing face's inner normal
    // cone contains the functional
    let docs = random_instances(&CorpusParams::new(4, 2, 20, 0x19));
    let mut state: u64 = 0xabcdef12345;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for doc in &docs {
        let (p, _) = parts(doc);
        let n = p.ambient_dim();
        for _ in 0..5 {
            // draw w from the support of the normal fan: a nonnegative
            // combination of rows of the canonical inequality system
            let mut w = vec![Rational::from_integer(0.into()); n];
            for i in 0..p.hrep().nrows() {
                let c = torfan::exact::rat_int((next() % 3) as i64);
                let row = p.hrep().a.row(i);
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj += &c * rj;
                }
            }
            let face = p.face_min(&w).expect("w is bounded below by construction");
            let nc = normal_cone(&p, &face);
            assert!(
                nc.contains(&w),
                "normal cone of the minimizing face must contain w"
            );
        }
    }
}

#[test]
fn fiber_fan_refines_every_quotient_fan() {
    let docs = random_instances(&CorpusParams::new(4, 2, 15, 0x14));
    for doc in &docs {
        let (p, ctx) = parts(doc);
        let ff = fiber_fan(&p, &ctx, FiberFanRoute::Direct).unwrap();
        let image = ctx.project(&p);
        let mut vs = vec![image.relint_point().unwrap()];
        for v in image.vertices() {
            vs.push(v.clone());
        }
        for v in vs {
            let nf = git_quotient_fan(&p, &ctx, &v).unwrap();
            for cone in ff.maximal_cones() {
                assert!(
                    nf.maximal_cones().iter().any(|d| cone.is_subset_of(d)),
                    "fiber fan cone not contained in any quotient fan cone"
                );
            }
        }
    }
}

#[test]
fn coherent_subdivision_equals_quotient_fan_on_random_cones() {
    let docs = random_instances(&CorpusParams::new(4, 2, 15, 0x15).kind(CorpusKind::Cones));
    for doc in &docs {
        let (c, ctx) = parts(doc);
        let image = ctx.project(&c);
        let mut vs = vec![
            vec![Rational::from_integer(0.into()); ctx.d()],
            image.relint_point().unwrap(),
        ];
        for r in image.rays() {
            vs.push(r.clone());
        }
        for v in vs {
            let lhs = git_quotient_fan(&c, &ctx, &v).unwrap();
            let rhs = coherent_subdivision(&c, &ctx, &v).unwrap();
            assert!(
                fan_equal(&lhs, &rhs).0,
                "coherent subdivision differs from quotient fan at v={v:?}"
            );
        }
    }
}

#[test]
fn all_four_projection_fans_coincide() {
    // the fiber fan, the fiber fan of the homogenization under the lifted
    // projection, the fan induced by the dualized lift of the homogenized
    // normal fan, and the fan induced by the kernel-dual image of the normal
    // fan are one and the same
    use torfan::fan::induced_fan_of_fan;
    use torfan::quotient::make_context;
    let docs = random_instances(&CorpusParams::new(4, 2, 10, 0x20));
    for doc in &docs {
        let (p, ctx) = parts(doc);
        let f1 = fiber_fan(&p, &ctx, FiberFanRoute::Direct).unwrap();
        let f3 = fiber_fan(&p, &ctx, FiberFanRoute::Dual).unwrap();
        let tp = p.homogenize().unwrap();
        let ctx_tilde = make_context(ctx.tilde_pi().clone()).unwrap();
        let f2 = fiber_fan(&tp, &ctx_tilde, FiberFanRoute::Direct).unwrap();
        let nf = normal_fan(&p).unwrap();
        let f4 = induced_fan_of_fan(ctx.pi_vee(), &nf);
        for (name, other) in [("(2)", &f2), ("(3)", &f3), ("(4)", &f4)] {
            let (eq, w) = fan_equal(&f1, other);
            assert!(
                eq,
                "fan {name} differs from the fiber fan; witness {:?}",
                w.map(|c| c.canonical_key())
            );
        }
    }
}

#[test]
fn heightone_and_pvee_identities() {
    let docs = random_instances(&CorpusParams::new(4, 2, 10, 0x16));
    for doc in &docs {
        let (p, ctx) = parts(doc);
        let tp = p.homogenize().unwrap();
        let tpi = ctx.tilde_pi().to_rational();
        // tilde_pi(tilde_P) is the cone over Q
        let img = tp.linear_image(&tpi);
        let tq = ctx.project(&p).homogenize().unwrap();
        assert!(img.equal_as_set(&tq));
        // cone over the chamber complex = fan induced by projected faces of tilde_P
        let chambers = git_chamber_complex(&p, &ctx).unwrap();
        let lhs = cone_over_complex(&chambers).unwrap();
        let faces: Vec<Polyhedron> = tp.all_faces().iter().map(|f| f.as_polyhedron()).collect();
        let rhs = induced_fan(&tpi, &faces, &tp);
        assert!(fan_equal(&lhs, &rhs).0, "height-one identity fails");
        // the fiber fan of the dual data induces the same fan
        let (p_prime, ctx_prime) = dual_data_homogenized(&p, &ctx).unwrap();
        let chow = fiber_fan(&p_prime, &ctx_prime, FiberFanRoute::Both).unwrap();
        assert_eq!(chow.ambient_dim(), ctx.d() + 1);
    }
}

#[test]
fn refinement_algebra() {
    // idempotent, commutative, associative up to fan equality
    let docs = random_instances(&CorpusParams::new(3, 1, 6, 0x17));
    let mut fans: Vec<Fan> = Vec::new();
    for doc in &docs {
        let (p, ctx) = parts(doc);
        // normal fans of fibers over a common projection shape: use complete
        // fans only, so supports agree
        if let Ok(f) = fiber_fan(&p, &ctx, FiberFanRoute::Direct) {
            if f.support().dim() == f.ambient_dim() as i64
                && f.support().lineality().len() == f.ambient_dim()
            {
                fans.push(f);
            }
        }
    }
    let complete: Vec<Fan> = fans
        .into_iter()
        .filter(|f| f.ambient_dim() == 2)
        .take(3)
        .collect();
    if complete.len() >= 2 {
        let a = &complete[0];
        let b = &complete[1];
        let aa = common_refinement(&[a.clone(), a.clone()]).unwrap();
        assert!(fan_equal(&aa, a).0, "refinement not idempotent");
        let ab = common_refinement(&[a.clone(), b.clone()]).unwrap();
        let ba = common_refinement(&[b.clone(), a.clone()]).unwrap();
        assert!(fan_equal(&ab, &ba).0, "refinement not commutative");
        if complete.len() == 3 {
            let c = &complete[2];
            let ab_c = common_refinement(&[ab.clone(), c.clone()]).unwrap();
            let a_bc = common_refinement(&[
                a.clone(),
                common_refinement(&[b.clone(), c.clone()]).unwrap(),
            ])
            .unwrap();
            assert!(fan_equal(&ab_c, &a_bc).0, "refinement not associative");
        }
    }
}

#[test]
fn fan_axiom_audits() {
    // exact pairwise-face audit on computed fans of several kinds
    let docs = random_instances(&CorpusParams::new(4, 2, 6, 0x18));
    for doc in &docs {
        let (p, ctx) = parts(doc);
        normal_fan(&p).unwrap().audit().unwrap();
        fiber_fan(&p, &ctx, FiberFanRoute::Direct)
            .unwrap()
            .audit()
            .unwrap();
        let chambers = git_chamber_complex(&p, &ctx).unwrap();
        cone_over_complex(&chambers).unwrap().audit().unwrap();
    }
}
