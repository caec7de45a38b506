//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line and enforcing its runtime budget. Everything is exact; there are
//! no numeric tolerances anywhere, only wall-clock limits.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use galois_core::frobenius::{
    algebraic_frobenius, algebraic_frobenius_for, chebotarev_sweep, cycle_type_on_roots,
    frobenius_at_infinity, frobenius_element, splitting_type, PrimeContext,
};
use galois_core::galois::{all_subgroups, GaloisSubextension, Subgroup};
use galois_core::motives::{
    central_idempotents, coaction, de_rham, gamma_comparison, hom_comodules, hom_motives,
    irreducible_from_regular, motive_of, EtaleScheme, Motive,
};
use galois_core::poly::QPoly;
use galois_core::rat::rat;
use galois_core::ring::{
    build_coordinate_ring, restriction, ring_of_splitting_field, verify_algebra_hom,
    verify_hopf_hom, CoordinateRing,
};
use galois_core::splitting::{splitting_field, AmbientGaloisField};

const CAP: usize = 24;

fn p(cs: &[i64]) -> QPoly {
    QPoly::from_i64(cs)
}

struct Criterion {
    number: u32,
    name: &'static str,
    budget: Option<Duration>,
    start: Instant,
}

impl Criterion {
    fn new(number: u32, name: &'static str, budget_secs: Option<u64>) -> Self {
        Criterion {
            number,
            name,
            budget: budget_secs.map(Duration::from_secs),
            start: Instant::now(),
        }
    }

    fn finish(self, passed: bool) {
        let elapsed = self.start.elapsed();
        let status = if passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {} ({}): {status} in {:.2}s",
            self.number,
            self.name,
            elapsed.as_secs_f64()
        );
        assert!(passed, "criterion {} ({}) failed", self.number, self.name);
        if let Some(budget) = self.budget {
            assert!(
                elapsed <= budget,
                "criterion {} exceeded its {:?} budget ({:?})",
                self.number,
                budget,
                elapsed
            );
        }
    }
}

/// The four suite extensions: sqrt2/Q, N6/Q, N6/quadratic, N12/Q.
fn suite_extensions() -> Vec<(&'static str, CoordinateRing)> {
    let (_a, sqrt2) = ring_of_splitting_field(&[p(&[-2, 0, 1])], CAP).unwrap();
    let (n6, n6_ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap();
    let (_a, n12_ring) =
        ring_of_splitting_field(&[p(&[-2, 0, 0, 1]), p(&[-2, 0, 1])], CAP).unwrap();
    let a3 = all_subgroups(&n6)
        .into_iter()
        .find(|s| s.order() == 3)
        .unwrap();
    let rel = build_coordinate_ring(Arc::new(
        GaloisSubextension::new(Subgroup::trivial(Arc::clone(&n6)), a3).unwrap(),
    ))
    .unwrap();
    vec![
        ("sqrt2/Q", sqrt2),
        ("N6/Q", n6_ring),
        ("N6/quad", rel),
        ("N12/Q", n12_ring),
    ]
}

#[test]
fn criterion_1_coordinate_ring_correctness() {
    let c = Criterion::new(1, "coordinate ring dimension and equivariance", Some(10));
    let mut ok = true;
    for (label, ring) in suite_extensions() {
        ok &= ring.dim() == ring.ext().group_size();
        ok &= ring.verify_equivariance();
        let _ = label;
    }
    c.finish(ok);
}

#[test]
fn criterion_2_hopf_and_point_group() {
    let c = Criterion::new(2, "Hopf axioms and point-group structure", Some(10));
    let mut ok = true;
    for (label, ring) in suite_extensions() {
        ok &= ring.verify_hopf();
        let _ = label;
    }
    // L-points of A(N6/Q) reproduce the S3 table through galois_to_point.
    let (_a, ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap();
    let ext = ring.ext();
    let l_points = ring.points(ext.l_field());
    ok &= l_points.len() == 6;
    for pt in &l_points {
        ok &= ring.verify_point(pt);
    }
    // bijectivity: each group element maps to a distinct enumerated point
    for s in 0..6 {
        let pt = ring.galois_to_point(s);
        ok &= l_points.iter().filter(|q| **q == pt).count() == 1;
        for t in 0..6 {
            let prod = ring.point_mul(&ring.galois_to_point(s), &ring.galois_to_point(t));
            ok &= prod == ring.galois_to_point(ext.qcompose(s, t));
        }
    }
    // K-point counts equal the center orders: 1 for S3, 2 for C2.
    ok &= ring.points(ext.k_field()).len() == 1;
    let (_a2, c2ring) = ring_of_splitting_field(&[p(&[-2, 0, 1])], CAP).unwrap();
    ok &= c2ring.points(c2ring.ext().k_field()).len() == 2;
    c.finish(ok);
}

#[test]
fn criterion_3_homomorphism_independence() {
    let c = Criterion::new(3, "restriction maps do not depend on the embedding", Some(60));
    let mut ok = true;
    // All 6 self-embeddings of N6 induce the identity on A(N6/Q).
    let (_a, n6_ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap();
    let embs = n6_ring.ext().embeddings();
    ok &= embs.len() == 6;
    let self_maps: Vec<_> = embs
        .iter()
        .map(|phi| restriction(&n6_ring, &n6_ring, phi).unwrap())
        .collect();
    let ka = n6_ring.ext().k_abs();
    for m in &self_maps {
        ok &= m == &self_maps[0];
        for (i, col) in m.columns().iter().enumerate() {
            for (j, v) in col.iter().enumerate() {
                ok &= *v == if i == j { ka.one() } else { ka.zero() };
            }
        }
    }
    // All 6 embeddings of the degree-6 subfield of N12 induce one and the
    // same matrix into A(N12/Q), each computed independently.
    let (n12, n12_ring) =
        ring_of_splitting_field(&[p(&[-2, 0, 0, 1]), p(&[-2, 0, 1])], CAP).unwrap();
    let h1 = Subgroup::fixing(Arc::clone(&n12), &n12.roots_of(0).to_vec());
    let ext1 = Arc::new(
        GaloisSubextension::new(h1, Subgroup::whole(Arc::clone(&n12))).unwrap(),
    );
    ok &= ext1.group_size() == 6;
    let ring1 = build_coordinate_ring(Arc::clone(&ext1)).unwrap();
    let embs = ext1.embeddings();
    ok &= embs.len() == 6;
    let maps: Vec<_> = embs
        .iter()
        .map(|phi| restriction(&ring1, &n12_ring, phi).unwrap())
        .collect();
    for m in &maps {
        ok &= m == &maps[0]; // exact matrix equality
        ok &= m.is_injective();
        ok &= verify_algebra_hom(m, &ring1, &n12_ring);
        ok &= verify_hopf_hom(m, &ring1, &n12_ring);
    }
    c.finish(ok);
}

#[test]
fn criterion_4_etale_decomposition() {
    let c = Criterion::new(4, "etale factor degrees equal class sizes", None);
    let (_a, ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap();
    c.finish(ring.etale_degrees() == vec![1, 2, 3]);
}

#[test]
fn criterion_5_frobenius_certificates() {
    let c = Criterion::new(5, "algebraic Frobenius certificates", Some(30));
    let mut ok = true;
    let n6 = Arc::new(splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap());
    let (_a, ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap();
    // Dedekind patterns.
    ok &= splitting_type(&p(&[-2, 0, 0, 1]), 5).unwrap() == vec![1, 2];
    ok &= splitting_type(&p(&[-2, 0, 0, 1]), 7).unwrap() == vec![3];
    ok &= splitting_type(&p(&[-2, 0, 0, 1]), 31).unwrap() == vec![1, 1, 1];
    for prime in [5u64, 7, 11, 13, 31] {
        let (_, sigma) = frobenius_element(&n6, prime).unwrap();
        ok &= cycle_type_on_roots(&n6, sigma, 0) == splitting_type(&p(&[-2, 0, 0, 1]), prime).unwrap();
        // Certificates over all sigma and all 6 basis elements.
        let data = algebraic_frobenius(&ring, prime).unwrap();
        ok &= data.fixed_certificate && data.transport_certificate;
        ok &= data.values.len() == 6;
        // Every mod-p factor choice yields the same point via transport.
        let ctx = PrimeContext::new(Arc::clone(&n6), prime).unwrap();
        for g in ctx.modulus_factors() {
            let alt = algebraic_frobenius_for(&ring, prime, Some(g)).unwrap();
            ok &= alt.class == data.class;
            let ext = ring.ext();
            let witness = (0..6)
                .find(|&s| ext.qcompose(ext.qcompose(s, data.coset), ext.qinv(s)) == alt.coset);
            match witness {
                None => ok = false,
                Some(s) => {
                    for i in 0..ring.dim() {
                        ok &= ext.act(s, &data.values[i]) == alt.values[i];
                    }
                }
            }
        }
    }
    c.finish(ok);
}

#[test]
fn criterion_6_chebotarev_sanity() {
    // Non-blocking: prints WARN instead of failing.
    let start = Instant::now();
    let n6 = Arc::new(splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap());
    let sweep = chebotarev_sweep(&n6, 2, 500);
    let bound = rat(3, 20);
    let within = sweep.deviations(6).iter().all(|d| d <= &bound);
    let status = if within { "PASS" } else { "WARN (non-blocking)" };
    println!(
        "criterion 6 (Chebotarev class frequencies within 0.15): {status} in {:.2}s",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_7_motives() {
    let c = Criterion::new(7, "motives: descent, gamma, comodules, homs", Some(60));
    let mut ok = true;
    let (n6, ring) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap();
    let cubic = EtaleScheme::of_polynomial(Arc::clone(&n6), &p(&[-2, 0, 0, 1])).unwrap();
    let unit = Motive::unit(Arc::clone(&n6));
    let perm3 = motive_of(&cubic);
    let regular = Motive::regular(Arc::clone(&n6));
    let irr2 = central_idempotents(&n6)
        .iter()
        .map(|e| irreducible_from_regular(&n6, e))
        .find(|m| m.dim() == 2)
        .expect("2-dimensional irreducible of S3");
    let motives = [&unit, &perm3, &regular, &irr2];
    // dim (V (x) N)^G = dim V for all four.
    let spaces: Vec<_> = motives.iter().map(|v| de_rham(v)).collect();
    for (v, w) in motives.iter().zip(&spaces) {
        ok &= w.dim() == v.dim();
    }
    // gamma comparison for Spec Q(cbrt2).
    let gamma = gamma_comparison(&cubic, &spaces[1]);
    ok &= gamma.ok() && gamma.factor_fields[0].min_poly().deg0() == 3;
    // comodule axioms and all-tau evaluation.
    let mut coactions = Vec::new();
    for (v, w) in motives.iter().zip(&spaces) {
        let cm = coaction(v, &ring, w).unwrap();
        ok &= cm.verify_axioms(&ring);
        ok &= cm.verify_evaluation(v, &ring, w);
        coactions.push(cm);
    }
    // hom-dimension agreement for all pairs.
    for i in 0..motives.len() {
        for j in 0..motives.len() {
            let hm = hom_motives(motives[i], motives[j]).unwrap().len();
            let hc = hom_comodules(&coactions[i], &coactions[j]).len();
            ok &= hm == hc;
        }
    }
    c.finish(ok);
}

#[test]
fn criterion_8_infinite_place() {
    let c = Criterion::new(8, "Frobenius at the infinite place", None);
    let mut ok = true;
    let (_a, r1) = ring_of_splitting_field(&[p(&[-2, 0, 1])], CAP).unwrap();
    ok &= frobenius_at_infinity(&r1).unwrap() == r1.counit_point();
    let (_a, r2) = ring_of_splitting_field(&[p(&[5, 0, -5, 0, 1])], CAP).unwrap();
    ok &= frobenius_at_infinity(&r2).unwrap() == r2.counit_point();
    let (_a, r3) = ring_of_splitting_field(&[p(&[-2, 0, 0, 1])], CAP).unwrap();
    ok &= matches!(
        frobenius_at_infinity(&r3),
        Err(galois_core::Error::RamifiedInfinitePlace)
    );
    c.finish(ok);
}

#[test]
fn criterion_9_determinism() {
    let c = Criterion::new(9, "byte-identical reports across cold runs", Some(300));
    let binary = env!("CARGO_BIN_EXE_galois");
    let run = || -> (Vec<u8>, bool) {
        let out = Command::new(binary)
            .args(["check", "--suite", "all"])
            .output()
            .expect("run the galois binary");
        (out.stdout, out.status.success())
    };
    let (out1, ok1) = run();
    let (out2, ok2) = run();
    let strip = |bytes: &[u8]| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).expect("valid JSON report");
        v.as_object_mut().unwrap().remove("timing");
        v
    };
    let r1 = strip(&out1);
    let r2 = strip(&out2);
    let all_passed = r1["results"]["summary"]["failed"] == serde_json::json!(0);
    c.finish(ok1 && ok2 && r1 == r2 && all_passed);
}

/// The group-order comparison used by several criteria also holds for the
/// quartic field used in criterion 8 (cyclic of order 4, totally real).
#[test]
fn quartic_field_shape() {
    let a: Arc<AmbientGaloisField> =
        Arc::new(splitting_field(&[p(&[5, 0, -5, 0, 1])], CAP).unwrap());
    assert_eq!(a.degree(), 4);
    assert_eq!(a.group_order(), 4);
    // cyclic: exactly one element of order 2
    assert_eq!((0..4).filter(|&s| a.order_of(s) == 2).count(), 1);
}
