//! Cross-module integration: scheme points over intermediate fields,
//! Frobenius against restriction maps, and tower behavior.

use std::sync::Arc;

use galois_core::frobenius::{algebraic_frobenius, frobenius_element, frobenius_in_quotient};
use galois_core::galois::{all_subgroups, fixed_field, GaloisSubextension, Subgroup};
use galois_core::poly::QPoly;
use galois_core::ring::{build_coordinate_ring, restriction, ring_of_splitting_field};
use galois_core::splitting::{splitting_field, DEFAULT_DEGREE_CAP};

fn p(cs: &[i64]) -> QPoly {
    QPoly::from_i64(cs)
}

#[test]
fn points_over_intermediate_field() {
    // A(N6/Q) = Q x Q(sqrt-3) x (cubic field). Over the quadratic subfield
    // M the factor homomorphism counts are 1 + 2 + 0 = 3.
    let (n6, ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap();
    let a3 = all_subgroups(&n6)
        .into_iter()
        .find(|s| s.order() == 3)
        .unwrap();
    let quad = fixed_field(&a3);
    let pts = ring.points(&quad);
    assert_eq!(pts.len(), 3);
    for pt in &pts {
        assert!(ring.verify_point(pt));
        for v in pt.images() {
            assert!(quad.contains(v));
        }
    }
    // Over a cubic subfield: the quadratic factor has no homomorphism into
    // it, and the cubic factor (a conjugate non-Galois cubic) has exactly
    // one, so 1 + 0 + 1 = 2.
    let c2 = all_subgroups(&n6)
        .into_iter()
        .find(|s| s.order() == 2)
        .unwrap();
    let cubic = fixed_field(&c2);
    assert_eq!(ring.points(&cubic).len(), 2);
}

#[test]
fn frobenius_commutes_with_restriction() {
    // The Frobenius point of a quotient level equals the image of the
    // ambient Frobenius point under the tower's restriction map.
    let n6 = Arc::new(splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap());
    let a3 = all_subgroups(&n6)
        .into_iter()
        .find(|s| s.order() == 3)
        .unwrap();
    let whole = Subgroup::whole(Arc::clone(&n6));
    let quad_ext = Arc::new(GaloisSubextension::new(a3, whole.clone()).unwrap());
    let quad_ring = build_coordinate_ring(Arc::clone(&quad_ext)).unwrap();
    let full_ext = Arc::new(GaloisSubextension::whole(&n6));
    let full_ring = build_coordinate_ring(full_ext).unwrap();
    // Inclusion map A(quad/Q) -> A(N6/Q).
    let phi = galois_core::galois::SubfieldEmbedding::new(
        &quad_ext,
        quad_ext.l_field().primitive().clone(),
    );
    let incl = restriction(&quad_ring, &full_ring, &phi).unwrap();
    for prime in [5u64, 7, 11, 13, 31] {
        let (_, sigma) = frobenius_element(&n6, prime).unwrap();
        let quad_coset = frobenius_in_quotient(&quad_ring, sigma).unwrap();
        let full_data = algebraic_frobenius(&full_ring, prime).unwrap();
        // Evaluate: the full point restricted along incl equals the quad
        // point: point(f) for each quad basis element f.
        let full_point = full_ring.galois_to_point(full_data.coset);
        let quad_point = quad_ring.galois_to_point(quad_coset);
        for (i, col) in incl.columns().iter().enumerate() {
            // image of quad basis element i evaluated at the full point
            let mut acc = n6.field().zero();
            for (j, c) in col.iter().enumerate() {
                let cn = full_ring.ext().k_from_abstract(c);
                acc = acc.add(&cn.mul(&full_point.images()[j]));
            }
            assert_eq!(acc, quad_point.images()[i], "p = {prime}, basis {i}");
        }
    }
}

#[test]
fn tower_maps_are_hopf_homomorphisms() {
    let tower = galois_core::ring::truncated_absolute_group(
        &[p(&[-2, 0, 0, 1]), p(&[-2, 0, 1])],
        DEFAULT_DEGREE_CAP,
    )
    .unwrap();
    for i in 0..tower.levels().len() {
        for j in i + 1..tower.levels().len() {
            let m = tower.map(i, j);
            assert!(galois_core::ring::verify_algebra_hom(
                m,
                &tower.levels()[i],
                &tower.levels()[j]
            ));
            assert!(galois_core::ring::verify_hopf_hom(
                m,
                &tower.levels()[i],
                &tower.levels()[j]
            ));
        }
    }
}

#[test]
fn splitting_subfield_of_over_polynomial() {
    // The quadratic subfield of N6 is the splitting field of x^2+3.
    let n6 = Arc::new(splitting_field(&[p(&[-2, 0, 0, 1])], DEFAULT_DEGREE_CAP).unwrap());
    let roots = galois_core::trager::roots_of_qpoly_in(&p(&[3, 0, 1]), n6.field());
    assert_eq!(roots.len(), 2);
    let h = Subgroup::fixing(Arc::clone(&n6), &roots);
    assert_eq!(h.order(), 3); // A3 fixes the quadratic subfield
}
