//! The duality statements on degenerate inputs: lower-dimensional polyhedra,
//! points, full spaces, projections constant on the input, fractional data.

use torfan::exact::{rat, rat_vec, IntMatrix};
use torfan::fan::{fan_equal, normal_fan};
use torfan::polyhedron::{poly_from_ineqs, Polyhedron, VRep};
use torfan::quotient::{
    fiber_fan, git_chamber_complex, make_context, verify_affine_duality, verify_fiber_duality,
    verify_main_theorem, FiberFanRoute,
};

#[test]
fn lower_dimensional_polyhedron() {
    // a segment embedded in Q^3
    let p = poly_from_ineqs(
        &[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ],
        &[0, -2, 0, 0, 0, 0],
    );
    assert_eq!(p.dim(), 1);
    let ctx = make_context(IntMatrix::from_i64(&[&[1, 1, 1]])).unwrap();
    let r = verify_main_theorem(&p, &ctx).unwrap();
    assert!(r.passed(), "{:?}", r.witness);
}

#[test]
fn single_point_polyhedron() {
    let pt = Polyhedron::from_vrep(
        &VRep {
            vertices: vec![rat_vec(&[1, 2, 3])],
            rays: vec![],
            lineality: vec![],
        },
        3,
    );
    let ctx = make_context(IntMatrix::from_i64(&[&[1, 1, 1]])).unwrap();
    let r = verify_main_theorem(&pt, &ctx).unwrap();
    assert!(r.passed(), "{:?}", r.witness);
}

#[test]
fn full_space_polyhedron() {
    let full = Polyhedron::from_vrep(
        &VRep {
            vertices: vec![rat_vec(&[0, 0])],
            rays: vec![],
            lineality: vec![rat_vec(&[1, 0]), rat_vec(&[0, 1])],
        },
        2,
    );
    let ctx = make_context(IntMatrix::from_i64(&[&[1, 0]])).unwrap();
    assert!(verify_main_theorem(&full, &ctx).unwrap().passed());
    assert!(verify_affine_duality(&full, &ctx).unwrap().passed());
    assert!(verify_fiber_duality(&full, &ctx, 10, 3).unwrap().passed());
}

#[test]
fn projection_constant_on_input() {
    // the image is a single point; the fiber fan is the normal fan of the
    // unique fiber
    let seg_y = poly_from_ineqs(&[&[0, 1], &[0, -1], &[1, 0], &[-1, 0]], &[0, -1, 0, 0]);
    assert_eq!(seg_y.dim(), 1);
    let ctx = make_context(IntMatrix::from_i64(&[&[1, 0]])).unwrap();
    let k = git_chamber_complex(&seg_y, &ctx).unwrap();
    assert_eq!(k.maximal_cells().len(), 1);
    assert_eq!(k.support().dim(), 0);
    let ff = fiber_fan(&seg_y, &ctx, FiberFanRoute::Both).unwrap();
    let nf = normal_fan(&ctx.fiber_slice(&seg_y, &rat_vec(&[0])).unwrap()).unwrap();
    assert!(fan_equal(&ff, &nf).0);
    assert!(verify_main_theorem(&seg_y, &ctx).unwrap().passed());
}

#[test]
fn fractional_vertex_data() {
    let frac = Polyhedron::from_vrep(
        &VRep {
            vertices: vec![
                vec![rat(1, 3), rat(0, 1)],
                vec![rat(0, 1), rat(1, 7)],
                vec![rat(-2, 5), rat(-1, 2)],
            ],
            rays: vec![],
            lineality: vec![],
        },
        2,
    );
    let ctx = make_context(IntMatrix::from_i64(&[&[1, 0]])).unwrap();
    let r = verify_main_theorem(&frac, &ctx).unwrap();
    assert!(r.passed(), "{:?}", r.witness);
}
