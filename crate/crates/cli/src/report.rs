//! JSON payload builders for the CLI subcommands.
//!
//! All numbers that are not small counts are emitted as canonical decimal
//! strings (`p` or `p/q`), and maps use sorted keys, so identical
//! invocations serialize identically.

use std::sync::Arc;

use galois_core::frobenius::{ChebotarevSweep, FrobeniusData};
use galois_core::galois::FixedFieldBasis;
use galois_core::numfield::NFElement;
use galois_core::rat::{rat, rat_str};
use galois_core::ring::{CoordinateRing, RestrictionMap, TruncatedAbsoluteGroup};
use galois_core::splitting::AmbientGaloisField;
use galois_core::verify::CheckResult;
use serde_json::{json, Value};

pub fn coords_json(e: &NFElement) -> Value {
    Value::Array(e.coords().iter().map(|c| Value::String(rat_str(c))).collect())
}

pub fn split_report(ambient: &AmbientGaloisField) -> Value {
    let class_sizes: Vec<usize> = ambient.conjugacy_classes().iter().map(Vec::len).collect();
    json!({
        "degree": ambient.degree(),
        "group_order": ambient.group_order(),
        "modulus": ambient.field().modulus().coeff_strings(),
        "defining": ambient
            .defining_polys()
            .iter()
            .map(|f| f.to_text())
            .collect::<Vec<_>>(),
        "class_sizes": class_sizes,
        "roots": (0..ambient.defining_polys().len())
            .map(|i| {
                ambient
                    .roots_of(i)
                    .iter()
                    .map(coords_json)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
    })
}

pub fn group_report(ambient: &Arc<AmbientGaloisField>) -> Value {
    let mut base = split_report(ambient);
    let subgroup_orders: Vec<usize> = galois_core::galois::all_subgroups(ambient)
        .iter()
        .map(|s| s.order())
        .collect();
    let obj = base.as_object_mut().unwrap();
    obj.insert("table".into(), json!(ambient.table()));
    obj.insert("classes".into(), json!(ambient.conjugacy_classes()));
    obj.insert(
        "center_order".into(),
        json!(galois_core::galois::Subgroup::center(Arc::clone(ambient)).order()),
    );
    obj.insert("subgroup_orders".into(), json!(subgroup_orders));
    obj.insert(
        "autos".into(),
        Value::Array(
            (0..ambient.group_order())
                .map(|i| coords_json(ambient.auto_image(i)))
                .collect(),
        ),
    );
    base
}

fn kabs_coords(ring: &CoordinateRing, x: &NFElement) -> Value {
    let _ = ring;
    coords_json(x)
}

pub fn ring_report(ring: &CoordinateRing) -> Value {
    let m = ring.dim();
    let mut mult_triples = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for (k, c) in ring.mult_tensor()[i][j].iter().enumerate() {
                if !c.is_zero() {
                    mult_triples.push(json!([i, j, k, kabs_coords(ring, c)]));
                }
            }
        }
    }
    let mut delta_sparse = Vec::new();
    for k in 0..m {
        for i in 0..m {
            for (j, c) in ring.delta_tensor()[k][i].iter().enumerate() {
                if !c.is_zero() {
                    delta_sparse.push(json!([k, i, j, kabs_coords(ring, c)]));
                }
            }
        }
    }
    json!({
        "dim": m,
        "base_field_min_poly": ring.ext().k_field().min_poly().coeff_strings(),
        "extension_field_min_poly": ring.ext().l_field().min_poly().coeff_strings(),
        "basis": (0..m)
            .map(|i| {
                ring.basis_values(i)
                    .iter()
                    .map(coords_json)
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>(),
        "mult": mult_triples,
        "unit": ring.unit_coords().iter().map(|c| kabs_coords(ring, c)).collect::<Vec<_>>(),
        "counit": ring.counit_coords().iter().map(|c| kabs_coords(ring, c)).collect::<Vec<_>>(),
        "antipode": ring
            .antipode_matrix()
            .iter()
            .map(|row| row.iter().map(|c| kabs_coords(ring, c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "delta": delta_sparse,
        "etale_degrees": ring.etale_degrees(),
        "checks": {
            "equivariance": ring.verify_equivariance(),
            "hopf": ring.verify_hopf(),
            "base_change": ring.verify_base_change(),
        },
    })
}

pub fn points_report(
    ring: &CoordinateRing,
    target: &FixedFieldBasis,
    points: &[galois_core::ring::AlgebraPoint],
) -> Value {
    json!({
        "ring_dim": ring.dim(),
        "target_min_poly": target.min_poly().coeff_strings(),
        "count": points.len(),
        "points": points
            .iter()
            .map(|p| {
                Value::Array(p.images().iter().map(coords_json).collect())
            })
            .collect::<Vec<_>>(),
    })
}

fn map_json(map: &RestrictionMap) -> Value {
    Value::Array(
        map.columns()
            .iter()
            .map(|col| Value::Array(col.iter().map(coords_json).collect()))
            .collect(),
    )
}

pub fn restrict_report(tower: &TruncatedAbsoluteGroup, independent: bool) -> Value {
    let levels: Vec<Value> = tower
        .levels()
        .iter()
        .map(|r| {
            json!({
                "dim": r.dim(),
                "min_poly": r.ext().l_field().min_poly().coeff_strings(),
            })
        })
        .collect();
    let mut maps = Vec::new();
    for i in 0..tower.levels().len() {
        for j in i + 1..tower.levels().len() {
            let m = tower.map(i, j);
            maps.push(json!({
                "from": i,
                "to": j,
                "injective": m.is_injective(),
                "matrix": map_json(m),
            }));
        }
    }
    json!({
        "levels": levels,
        "maps": maps,
        "functorial": tower.verify_functorial(),
        "embedding_independent": independent,
    })
}

pub fn frobenius_record(
    data: &FrobeniusData,
    residue_degrees: &[Vec<usize>],
) -> Value {
    let rd: Value = if residue_degrees.len() == 1 {
        json!(residue_degrees[0])
    } else {
        json!(residue_degrees)
    };
    json!({
        "p": data.context.prime(),
        "residue_degrees": rd,
        "sigma_index": data.sigma,
        "order": data.order,
        "class": data.class,
        "decomposition_degree": data.decomposition_degree(),
        "certificates": {
            "fixed": data.fixed_certificate,
            "transport": data.transport_certificate,
        },
    })
}

pub fn chebotarev_json(sweep: &ChebotarevSweep, group_order: usize) -> Value {
    let bound = rat(3, 20);
    let devs = sweep.deviations(group_order);
    let classes: Vec<Value> = sweep
        .per_class
        .iter()
        .zip(&devs)
        .map(|(&(id, size, hits), dev)| {
            json!({
                "class": id,
                "size": size,
                "hits": hits,
                "expected": rat_str(&rat(size as i64, group_order as i64)),
                "observed": rat_str(&rat(hits as i64, sweep.good_primes.max(1) as i64)),
                "deviation": rat_str(dev),
            })
        })
        .collect();
    json!({
        "good_primes": sweep.good_primes,
        "skipped": sweep.skipped,
        "bound": rat_str(&bound),
        "within_bound": devs.iter().all(|d| d <= &bound),
        "classes": classes,
    })
}

pub fn check_report(suite: &str, results: &[CheckResult]) -> Value {
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results
        .iter()
        .filter(|r| !r.passed && !r.warn_only)
        .count();
    let warnings = results
        .iter()
        .filter(|r| !r.passed && r.warn_only)
        .count();
    json!({
        "suite": suite,
        "results": results
            .iter()
            .map(|r| {
                json!({
                    "suite": r.suite,
                    "name": r.name,
                    "passed": r.passed,
                    "warn_only": r.warn_only,
                    "detail": r.detail,
                })
            })
            .collect::<Vec<_>>(),
        "summary": {
            "total": results.len(),
            "passed": passed,
            "failed": failed,
            "warnings": warnings,
        },
    })
}
