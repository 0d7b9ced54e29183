//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::{Command, ExitCode};

use smith_ideals::algebra::associativity_entry;
use smith_ideals::complex::homology;
use smith_ideals::constructions::{
    discrete_import, fixtures, free_square_candidate, leibniz_battery, sum_ideals, FixtureCatalog,
};
use smith_ideals::ideal::{
    associativity_squares, build_ideal, centrality_check, derive_reduced, derive_units,
    reduced_conditions, verify_ideal, StructureMaps, RING_SQUARES, SQUARE_LABELS, UNIT_LABELS,
};
use smith_ideals::quotient::{cone_dga, cone_then_fiber, roundtrip_check};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn build_passes_every_diagram(c: &FixtureCatalog) -> Outcome {
    ensure!(
        c.ideals.len() >= 8,
        "only {} catalog ideals",
        c.ideals.len()
    );
    for i in &c.ideals {
        let report = verify_ideal(&build_ideal(&i.value).map_err(err)?).map_err(err)?;
        let labels: Vec<&str> = report.entries.iter().map(|e| e.label.as_str()).collect();
        let expected: Vec<&str> = SQUARE_LABELS.iter().chain(&UNIT_LABELS).copied().collect();
        ensure!(
            labels == expected,
            "{}: unexpected entries {labels:?}",
            i.name
        );
        ensure!(report.passed(), "{}:\n{report}", i.name);
    }
    Ok(format!(
        "{} ideals, 16 squares and 3 unit laws each",
        c.ideals.len()
    ))
}

fn derive_inverts_build(c: &FixtureCatalog) -> Outcome {
    for i in &c.ideals {
        let full = build_ideal(&i.value).map_err(err)?;
        ensure!(
            derive_reduced(&full).map_err(err)? == i.value,
            "{}: derive(build(x)) != x",
            i.name
        );
        let conditions = reduced_conditions(&full).map_err(err)?;
        ensure!(conditions.passed(), "{}:\n{conditions}", i.name);
        let (jl, jr) = derive_units(&full).map_err(err)?;
        ensure!(jl == jr, "{}: j_L != j_R", i.name);
    }
    Ok(format!(
        "{} ideals, every reduced condition and j_L = j_R",
        c.ideals.len()
    ))
}

fn free_square_counterexample(c: &FixtureCatalog) -> Outcome {
    let fs = free_square_candidate(c.ring("trunc3").unwrap()).map_err(err)?;
    ensure!(!fs.passed(), "free square over trunc3 passed");
    let w = fs.centrality.witness.as_ref().unwrap();
    ensure!(
        (w.lhs.as_str(), w.rhs.as_str()) == ("t⊗one", "one⊗t"),
        "witness {} : {} vs {}",
        w.basis,
        w.lhs,
        w.rhs
    );
    // Independent enumeration on exponents: x = t^a⊗t^b, y = t^c⊗t^d gives
    // j(x)·y = t^{a+b+c}⊗t^d and x·j(y) = t^a⊗t^{b+c+d}, with t^3 = 0.
    let side = |p: u32, q: u32| (p < 3 && q < 3).then_some((p, q));
    let mut brute = 0;
    for a in 0..3 {
        for b in 0..3 {
            for cc in 0..3 {
                for d in 0..3 {
                    brute += usize::from(side(a + b + cc, d) != side(a, b + cc + d));
                }
            }
        }
    }
    ensure!(
        brute == fs.failures.len() && brute == fs.centrality.failures,
        "brute force finds {brute} failing pairs, checker {}",
        fs.failures.len()
    );
    ensure!(
        free_square_candidate(c.ring("field").unwrap())
            .map_err(err)?
            .passed(),
        "free square over the ground field failed"
    );
    Ok(format!(
        "witness {}: t⊗one vs one⊗t, {brute} failing pairs",
        w.basis
    ))
}

fn discrete_ideals_are_central(c: &FixtureCatalog) -> Outcome {
    let mut count = 0;
    for d in &c.discrete_ideals {
        let alg = c.algebra(&d.value.algebra).unwrap();
        let i = discrete_import(alg, &d.value.subspace).map_err(|e| format!("{}: {e}", d.name))?;
        ensure!(
            centrality_check(i.bimodule(), i.j().map())
                .map_err(err)?
                .passed(),
            "{}",
            d.name
        );
        count += 1;
    }
    // Every span of basis vectors that is a two-sided ideal.
    for a in &c.algebras {
        let alg = &a.value;
        for mask in 1u32..(1 << alg.dim()) {
            let vectors: Vec<_> = (0..alg.dim())
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| alg.basis_vector(&alg.labels()[k]).unwrap())
                .collect();
            if let Ok(i) = discrete_import(alg, &vectors) {
                ensure!(
                    centrality_check(i.bimodule(), i.j().map())
                        .map_err(err)?
                        .passed(),
                    "{} mask {mask:b}",
                    a.name
                );
                count += 1;
            }
        }
    }
    Ok(format!("{count} imported ideals central"))
}

fn leibniz_iff_centrality(c: &FixtureCatalog) -> Outcome {
    let cases = leibniz_battery(c).map_err(err)?;
    let perturbed = cases.iter().filter(|b| b.perturbed).count();
    ensure!(perturbed >= 20, "only {perturbed} perturbations");
    for b in &cases {
        ensure!(
            b.cone_dga == b.centrality,
            "{}: cone {} centrality {}",
            b.name,
            b.cone_dga,
            b.centrality
        );
        ensure!(
            b.outside_ideal_block == 0,
            "{}: Leibniz failure outside I⊗I",
            b.name
        );
    }
    let failing = cases.iter().filter(|b| !b.centrality).count();
    Ok(format!(
        "{} cases ({perturbed} perturbed), {failing} non-central",
        cases.len()
    ))
}

fn round_trips(c: &FixtureCatalog) -> Outcome {
    for m in &c.morphisms {
        let rt = roundtrip_check(&m.value).map_err(|e| format!("{}: {e}", m.name))?;
        ensure!(
            rt.report.passed() && rt.quasi_iso.is_quasi_iso(),
            "{}:\n{}",
            m.name,
            rt.report
        );
    }
    let mut injective = 0;
    for i in &c.ideals {
        if i.value.j().first_non_injective_degree().is_some() {
            continue;
        }
        let back = cone_then_fiber(&i.value).map_err(|e| format!("{}: {e}", i.name))?;
        ensure!(back.report.passed(), "{}:\n{}", i.name, back.report);
        ensure!(
            back.quotient.quasi_iso.is_quasi_iso(),
            "{}: strict quotient not quasi-isomorphic",
            i.name
        );
        injective += 1;
    }
    Ok(format!(
        "{} morphisms, {injective} injective ideals",
        c.morphisms.len()
    ))
}

fn identity_quotients_acyclic(c: &FixtureCatalog) -> Outcome {
    for r in &c.rings {
        let q = cone_dga(c.ideal(&format!("{}_identity", r.name)).unwrap()).map_err(err)?;
        let h = homology(q.quotient.carrier());
        ensure!(h.is_acyclic(), "{}: H = {:?}", r.name, h.dims());
    }
    Ok(format!("{} rings", c.rings.len()))
}

fn redundant_squares(c: &FixtureCatalog) -> Outcome {
    let mut checked = 0;
    let mut seen_fail = false;
    for i in &c.ideals {
        let full = build_ideal(&i.value).map_err(err)?;
        let mu = full.ring().mult().map();
        // The ring product itself and every single-entry change of it.
        let mut products = vec![mu.clone()];
        products.extend(
            smith_ideals::constructions::single_entry_perturbations(mu, &[1])
                .into_iter()
                .take(6),
        );
        for m in &products {
            let squares = associativity_squares(StructureMaps {
                mu: m,
                mu_l: full.mu_l().map(),
                mu_r: full.mu_r().map(),
                nu_l: full.nu_l().map(),
                nu_r: full.nu_r().map(),
            })
            .map_err(err)?;
            let assoc = associativity_entry("assoc", m).map_err(err)?;
            seen_fail |= !assoc.passed();
            let dups: Vec<&str> = squares
                .iter()
                .filter(|e| e.duplicate_of.as_deref() == Some("assoc"))
                .map(|e| e.label.as_str())
                .collect();
            ensure!(dups == RING_SQUARES, "{}: duplicates {dups:?}", i.name);
            for e in squares.iter().filter(|e| e.duplicate_of.is_some()) {
                ensure!(
                    e.status == assoc.status,
                    "{}: {} disagrees with assoc",
                    i.name,
                    e.label
                );
            }
            checked += 1;
        }
    }
    ensure!(seen_fail, "no non-associative product was exercised");
    Ok(format!(
        "{checked} products, duplicates {}",
        RING_SQUARES.join(", ")
    ))
}

fn sum_obstruction(c: &FixtureCatalog) -> Outcome {
    let e = sum_ideals(c.ideal("uv3_u").unwrap(), c.ideal("uv3_v").unwrap());
    let Err(smith_ideals::error::Error::Rejected { report, .. }) = e else {
        return Err("(u)+(v) over uv3 was not rejected".into());
    };
    let centrality = report.get("centrality").ok_or("no centrality entry")?;
    let w = centrality.witness.as_ref().ok_or("no witness")?;
    ensure!(w.basis == "in1.u⊗in2.v", "witness {}", w.basis);
    let ok = sum_ideals(c.ideal("uv2_u").unwrap(), c.ideal("uv2_v").unwrap()).map_err(err)?;
    ensure!(
        verify_ideal(&build_ideal(&ok).map_err(err)?)
            .map_err(err)?
            .passed(),
        "uv2 sum does not build"
    );
    Ok(format!(
        "uv3 witness {}: {} vs {}; uv2 passes",
        w.basis, w.lhs, w.rhs
    ))
}

fn cli_determinism() -> Outcome {
    let files = common::fixture_files();
    for f in &files {
        let first = common::report_for(f);
        let second = common::report_for(f);
        ensure!(first == second, "{f}: two runs differ");
        let golden = std::fs::read_to_string(common::golden_dir().join(common::golden_name(f)))
            .map_err(|e| format!("{f}: {e}"))?;
        ensure!(first == golden, "{f}: differs from golden file");
    }
    let bin = env!("CARGO_BIN_EXE_smith");
    let dir = common::fixture_dir();
    let code = |args: &[&str]| {
        Command::new(bin)
            .args(args)
            .output()
            .map(|o| o.status.code())
    };
    let path = |n: &str| dir.join(n).display().to_string();
    let cases = [
        (
            vec![
                "check-ideal".to_string(),
                path("ideal_dual_eps.smith"),
                "Ideal".into(),
                "--full".into(),
            ],
            0,
        ),
        (
            vec![
                "check-ideal".into(),
                path("free_square_trunc3.smith"),
                "MuCandidate".into(),
                "--reduced".into(),
            ],
            1,
        ),
        (
            vec![
                "check-dga".into(),
                path("ideal_dual_eps.smith"),
                "Missing".into(),
            ],
            2,
        ),
        (
            vec![
                "check-dga".into(),
                path("ideal_dual_eps.smith"),
                "R".into(),
                "--field-override".into(),
                "Q".into(),
            ],
            2,
        ),
    ];
    for (args, want) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = code(&args).map_err(err)?;
        ensure!(
            got == Some(*want),
            "{args:?}: exit {got:?}, expected {want}"
        );
    }
    Ok(format!("{} fixture files, exit codes 0/1/2", files.len()))
}

fn main() -> ExitCode {
    let c = fixtures();
    let criteria: Vec<Criterion> = vec![
        (
            "built ideals satisfy all diagrams",
            Box::new(|| build_passes_every_diagram(&c)),
        ),
        (
            "derive inverts build",
            Box::new(|| derive_inverts_build(&c)),
        ),
        (
            "free square is not central",
            Box::new(|| free_square_counterexample(&c)),
        ),
        (
            "discrete ideals are central",
            Box::new(|| discrete_ideals_are_central(&c)),
        ),
        (
            "Leibniz holds iff centrality",
            Box::new(|| leibniz_iff_centrality(&c)),
        ),
        ("fiber/cone round trips", Box::new(|| round_trips(&c))),
        (
            "identity quotients are acyclic",
            Box::new(|| identity_quotients_acyclic(&c)),
        ),
        (
            "five squares repeat associativity",
            Box::new(|| redundant_squares(&c)),
        ),
        (
            "sum of ideals obstruction",
            Box::new(|| sum_obstruction(&c)),
        ),
        ("CLI determinism and exit codes", Box::new(cli_determinism)),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
