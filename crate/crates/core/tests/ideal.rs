use smith_ideals::algebra::{associativity_entry, BimoduleStructure};
use smith_ideals::constructions::{fixtures, free_square_candidate};
use smith_ideals::error::Error;
use smith_ideals::graded::GradedMap;
use smith_ideals::ideal::{
    associativity_squares, build_ideal, centrality_check, derive_reduced, derive_units,
    reduced_conditions, verify_ideal, StructureMaps, RING_SQUARES, SQUARE_LABELS, UNIT_LABELS,
};

#[test]
fn built_ideals_pass_every_diagram() {
    for i in fixtures().ideals {
        let full = build_ideal(&i.value).unwrap();
        let report = verify_ideal(&full).unwrap();
        let labels: Vec<&str> = report.entries.iter().map(|e| e.label.as_str()).collect();
        let expected: Vec<&str> = SQUARE_LABELS.iter().chain(&UNIT_LABELS).copied().collect();
        assert_eq!(labels, expected);
        assert!(report.passed(), "{}:\n{report}", i.name);
    }
}

#[test]
fn derive_inverts_build() {
    for i in fixtures().ideals {
        let full = build_ideal(&i.value).unwrap();
        let back = derive_reduced(&full).unwrap();
        assert_eq!(back, i.value, "{}", i.name);
        let conditions = reduced_conditions(&full).unwrap();
        assert!(conditions.passed(), "{}:\n{conditions}", i.name);
        let (jl, jr) = derive_units(&full).unwrap();
        assert_eq!(jl, jr);
        assert_eq!(&jl, i.value.j());
    }
}

#[test]
fn identity_ideal_units_are_identity() {
    let c = fixtures();
    let full = build_ideal(c.ideal("koszul_identity").unwrap()).unwrap();
    let (jl, jr) = derive_units(&full).unwrap();
    let r = c.ring("koszul").unwrap();
    let id = GradedMap::identity(r.field(), r.space());
    assert_eq!(jl.map(), &id);
    assert_eq!(jr.map(), &id);
}

#[test]
fn zero_nu_left_on_dual_numbers() {
    let c = fixtures();
    let eps = c.ideal("dual_eps").unwrap();
    let full = build_ideal(eps).unwrap();
    let nu = full.nu_l().map();
    let broken = full
        .with_nu_l(GradedMap::zero(
            nu.field(),
            nu.source().clone(),
            nu.target().clone(),
            0,
        ))
        .unwrap();
    let report = verify_ideal(&broken).unwrap();
    let failed: Vec<&str> = report.failures().map(|e| e.label.as_str()).collect();
    // ν_L appears in baab, baba, babb, bbab and abab. With ν_L = 0 the squares
    // whose other path also vanishes stay commutative.
    assert_eq!(failed, ["baba"], "{report}");
    let w = report.get("baba").unwrap().witness.clone().unwrap();
    assert_eq!(w.basis, "one⊗eps⊗one");
    assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("eps", "0"));

    let (jl, jr) = derive_units(&broken).unwrap();
    assert!(jl.map().is_zero());
    assert_eq!(jr.map(), eps.j().map());
    assert!(matches!(
        derive_reduced(&broken),
        Err(Error::Rejected { .. })
    ));
}

#[test]
fn perturbing_a_nu_is_always_detected() {
    let c = fixtures();
    for name in ["dual_eps", "tri_upper", "trunc3_t1", "koszul_xe", "uv2_max"] {
        let full = build_ideal(c.ideal(name).unwrap()).unwrap();
        for left in [true, false] {
            let nu = if left {
                full.nu_l().map()
            } else {
                full.nu_r().map()
            };
            for n in nu.source().degrees() {
                let block = nu.block(n);
                for row in 0..block.rows() {
                    for col in 0..block.cols() {
                        let f = nu.field();
                        let v = f.add(block.get(row, col), &f.one());
                        let bumped = nu.with_entry(n, row, col, v);
                        let Ok(candidate) = (if left {
                            full.with_nu_l(bumped)
                        } else {
                            full.with_nu_r(bumped)
                        }) else {
                            continue;
                        };
                        let report = verify_ideal(&candidate).unwrap();
                        let (jl, jr) = derive_units(&candidate).unwrap();
                        assert!(
                            !report.passed() || jl != jr,
                            "{name} left={left} ({n},{row},{col}) went unnoticed"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn ring_squares_track_ring_associativity() {
    let c = fixtures();
    let full = build_ideal(c.ideal("trunc3_t1").unwrap()).unwrap();
    let mu = full.ring().mult().map();
    let f = mu.field();
    let (one, zero) = (f.one(), f.zero());
    let mut candidates = vec![mu.clone()];
    // t·t2 = t2 breaks associativity: (t·t)·t2 = 0 but t·(t·t2) = t2.
    // t·t = 0 keeps it.
    let block = mu.block(0);
    let space = mu.source();
    let tt = space.find("t⊗t").unwrap().1;
    let tt2 = space.find("t⊗t2").unwrap().1;
    let t2 = 2;
    candidates.push(mu.with_entry(0, t2, tt2, one.clone()));
    candidates.push(mu.with_entry(0, t2, tt, zero));
    assert_eq!(block.get(t2, tt), &one);
    let mut seen = [false, false];
    for m in &candidates {
        let squares = associativity_squares(StructureMaps {
            mu: m,
            mu_l: full.mu_l().map(),
            mu_r: full.mu_r().map(),
            nu_l: full.nu_l().map(),
            nu_r: full.nu_r().map(),
        })
        .unwrap();
        let assoc = associativity_entry("assoc", m).unwrap();
        seen[assoc.passed() as usize] = true;
        let dups: Vec<_> = squares
            .iter()
            .filter(|e| e.duplicate_of.is_some())
            .collect();
        assert_eq!(dups.len(), 5);
        for e in dups {
            assert!(RING_SQUARES.contains(&e.label.as_str()));
            assert_eq!(e.duplicate_of.as_deref(), Some("assoc"));
            assert_eq!(e.status, assoc.status, "{}", e.label);
        }
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn triangular_ideal_is_central() {
    let c = fixtures();
    let tri = c.ideal("tri_upper").unwrap();
    let e = centrality_check(tri.bimodule(), tri.j().map()).unwrap();
    assert!(e.passed());
    let full = build_ideal(tri).unwrap();
    assert!(reduced_conditions(&full)
        .unwrap()
        .get("centrality")
        .unwrap()
        .passed());
}

#[test]
fn free_square_is_rejected_by_build() {
    let c = fixtures();
    let r = c.ring("trunc3").unwrap();
    let fs = free_square_candidate(r).unwrap();
    let err = smith_ideals::ideal::SmithIdealData::new(fs.bimodule.clone(), fs.j.map().clone())
        .unwrap_err();
    let Error::Rejected { report, .. } = err else {
        panic!("expected a rejection");
    };
    assert!(!report.get("centrality").unwrap().passed());
    assert!(report.get("j_left").unwrap().passed());
    assert!(report.get("j_right").unwrap().passed());
}

#[test]
fn identity_is_central_over_every_ring() {
    for r in fixtures().rings {
        let b = BimoduleStructure::regular(&r.value);
        let id = GradedMap::identity(r.value.field(), r.value.space());
        assert!(centrality_check(&b, &id).unwrap().passed(), "{}", r.name);
    }
}
