use smith_ideals::algebra::verify_dga_map;
use smith_ideals::complex::{cone, homology};
use smith_ideals::constructions::{
    fixtures, leibniz_battery, morphism_from_images, sum_ideals, zero_ideal,
};
use smith_ideals::error::Error;
use smith_ideals::quotient::{
    cone_dga, cone_then_fiber, fiber_ideal, roundtrip_check, strict_quotient_dga,
};

fn h(dims: &[(i64, usize)]) -> std::collections::BTreeMap<i64, usize> {
    dims.iter().copied().collect()
}

#[test]
fn identity_ideal_quotients_are_acyclic() {
    let c = fixtures();
    for r in &c.rings {
        let i = c.ideal(&format!("{}_identity", r.name)).unwrap();
        let q = cone_dga(i).unwrap();
        assert!(homology(q.quotient.carrier()).is_acyclic(), "{}", r.name);
    }
    let k = cone_dga(c.ideal("koszul_identity").unwrap()).unwrap();
    assert_eq!(k.quotient.space().total_dim(), 6);
}

#[test]
fn cone_homology_examples() {
    let c = fixtures();
    let dual = cone_dga(c.ideal("dual_eps").unwrap()).unwrap();
    assert_eq!(
        homology(dual.quotient.carrier()).dims(),
        h(&[(0, 1), (1, 0)])
    );

    let kx = cone_dga(c.ideal("koszul_xe").unwrap()).unwrap();
    assert_eq!(kx.quotient.space().total_dim(), 5);
    assert_eq!(
        homology(kx.quotient.carrier()).dims(),
        h(&[(0, 1), (1, 0), (2, 0)])
    );
}

#[test]
fn quotient_carrier_is_the_cone_and_euler_is_additive() {
    let c = fixtures();
    for i in &c.ideals {
        let q = cone_dga(&i.value).unwrap();
        assert_eq!(
            q.quotient.carrier(),
            &cone(i.value.j()).unwrap().complex,
            "{}",
            i.name
        );
        let chi = |s: &smith_ideals::graded::GradedSpace| s.euler_characteristic();
        assert_eq!(
            chi(q.quotient.space()),
            chi(i.value.ring().space()) - chi(i.value.carrier().space()),
            "{}",
            i.name
        );
        assert!(verify_dga_map(i.value.ring(), &q.quotient, q.projection.map().map()).is_ok());
    }
}

#[test]
fn strict_quotients() {
    let c = fixtures();
    let dual = strict_quotient_dga(c.ideal("dual_eps").unwrap()).unwrap();
    assert_eq!(dual.quotient.space().total_dim(), 1);
    assert!(dual.quasi_iso.is_quasi_iso());

    let tri = strict_quotient_dga(c.ideal("tri_upper").unwrap()).unwrap();
    assert!(tri.quasi_iso.is_quasi_iso());
    // [e11] ↦ p1, [e22] ↦ p2 is an isomorphism onto field × field.
    let diag = c.ring("diag").unwrap();
    let iso = morphism_from_images(
        &tri.quotient,
        diag,
        &[("[e11]", &[(1, "p1")]), ("[e22]", &[(1, "p2")])],
    )
    .unwrap();
    assert_eq!(iso.map().map().block(0).rank(), 2);

    let zero = strict_quotient_dga(c.ideal("trunc3_zero").unwrap()).unwrap();
    assert_eq!(
        zero.quotient.space().dims(),
        c.ring("trunc3").unwrap().space().dims()
    );
    assert!(zero.quasi_iso.is_quasi_iso());
}

#[test]
fn non_injective_j_is_rejected() {
    let c = fixtures();
    let eps = c.ideal("dual_eps").unwrap();
    let doubled = sum_ideals(eps, eps).unwrap();
    assert_eq!(
        strict_quotient_dga(&doubled).unwrap_err(),
        Error::NotInjective { degree: 0 }
    );
    assert!(cone_dga(&doubled).is_ok());
}

#[test]
fn fibers_recover_catalog_ideals() {
    let c = fixtures();
    let fib = fiber_ideal(c.morphism("dual_aug").unwrap()).unwrap();
    assert_eq!(&fib.ideal, c.ideal("dual_eps").unwrap());
    let fib = fiber_ideal(c.morphism("tri_diag").unwrap()).unwrap();
    assert_eq!(&fib.ideal, c.ideal("tri_upper").unwrap());
    let fib = fiber_ideal(c.morphism("koszul_id").unwrap()).unwrap();
    assert_eq!(fib.ideal, zero_ideal(c.ring("koszul").unwrap()));
}

#[test]
fn non_surjective_maps_have_no_fiber() {
    let c = fixtures();
    let unit = morphism_from_images(
        c.ring("field").unwrap(),
        c.ring("dual").unwrap(),
        &[("one", &[(1, "one")])],
    )
    .unwrap();
    assert_eq!(
        fiber_ideal(&unit).unwrap_err(),
        Error::NotSurjective { degree: 0 }
    );
}

#[test]
fn round_trips() {
    let c = fixtures();
    for m in &c.morphisms {
        let rt = roundtrip_check(&m.value).unwrap();
        assert!(rt.report.passed(), "{}", m.name);
        assert!(rt.quasi_iso.is_quasi_iso());
    }
    for i in &c.ideals {
        if i.value.j().first_non_injective_degree().is_some() {
            continue;
        }
        let back = cone_then_fiber(&i.value).unwrap();
        assert!(back.report.passed(), "{}:\n{}", i.name, back.report);
        assert!(back.quotient.quasi_iso.is_quasi_iso(), "{}", i.name);
    }
}

#[test]
fn leibniz_fails_exactly_when_centrality_does() {
    let c = fixtures();
    let cases = leibniz_battery(&c).unwrap();
    let perturbed = cases.iter().filter(|b| b.perturbed).count();
    assert!(perturbed >= 20, "only {perturbed} admitted perturbations");
    let mut failing = 0;
    for b in &cases {
        assert_eq!(b.cone_dga, b.centrality, "{}", b.name);
        assert_eq!(b.leibniz_failures == 0, b.centrality, "{}", b.name);
        assert_eq!(b.outside_ideal_block, 0, "{}", b.name);
        failing += usize::from(!b.centrality);
    }
    // Every ring except the ground field has a non-central free square.
    assert_eq!(failing, c.rings.len() - 1);
}

#[test]
fn quotient_product_is_rigid() {
    // Shifting any single structure constant of the cone product breaks
    // either the DGA axioms or multiplicativity of the projection.
    use smith_ideals::algebra::{verify_dga, DgaCandidate};
    use smith_ideals::constructions::single_entry_perturbations;
    let c = fixtures();
    for name in ["dual_eps", "trunc3_t2", "koszul_xe"] {
        let q = cone_dga(c.ideal(name).unwrap()).unwrap();
        let ring = c.ideal(name).unwrap().ring();
        for m in single_entry_perturbations(q.quotient.mult().map(), &[1]) {
            let cand = DgaCandidate {
                carrier: q.quotient.carrier().clone(),
                mult: m,
                unit: q.quotient.unit().map().clone(),
            };
            let survives = verify_dga(&cand)
                .and_then(|d| verify_dga_map(ring, &d, q.projection.map().map()))
                .is_ok();
            assert!(!survives, "{name}");
        }
    }
}
