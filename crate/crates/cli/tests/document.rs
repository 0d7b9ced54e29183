use std::path::Path;

use proptest::prelude::*;
use smith_cli::document::{parse, print_term, Decl};
use smith_cli::export;
use smith_cli::resolve::resolve;
use smith_ideals::algebra::{verify_bimodule, verify_dga, BimoduleCandidate};
use smith_ideals::constructions::fixtures;
use smith_ideals::field::Field;
use smith_ideals::ideal::SmithIdealData;

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn message(input: &str) -> String {
    let e = parse(input)
        .and_then(|d| resolve(&d).map(|_| d))
        .unwrap_err();
    e.to_string()
}

#[test]
fn empty_input() {
    assert_eq!(message(""), "line 1, column 1: missing field declaration");
    assert_eq!(
        message("# only a comment\n"),
        "line 1, column 1: missing field declaration"
    );
    assert!(message("complex C\n").contains("missing field declaration"));
}

#[test]
fn malformed_term() {
    let input =
        "field Q\ncomplex C\n  degree 0 dim 2 basis x e\ndga A on C\n  unit = x\n  mul x e = e x\n";
    let e = parse(input).unwrap_err();
    assert_eq!((e.line, e.column), (6, 13));
    assert!(e.message.contains("malformed term"), "{e}");
}

#[test]
fn diagnostics() {
    let base = "field Q\ncomplex C\n  degree 0 dim 1 basis x\n";
    assert!(message(&format!("{base}complex C\n")).contains("duplicate name 'C'"));
    assert!(message(&format!("{base}dga A on D\n  unit = x\n")).contains("unknown reference 'D'"));
    assert!(
        message(&format!("{base}dga A on C\n  unit = y\n")).contains("unknown basis element 'y'")
    );
    assert!(message(&format!(
        "{base}map f : C -> C\n  x |-> 2*x\nmap g : f -> C\n"
    ))
    .contains("'f' is declared as map, expected complex"));
    assert_eq!(
        message("field Q\ncomplex C\n  degree 0 dim 2 basis x\n"),
        "line 3, column 16: dim 2 but 1 basis elements"
    );
    let shifted = "field Q\ncomplex C\n  degree 0 dim 1 basis x\n  degree 1 dim 1 basis y\nmap f : C -> C\n  x |-> y\n";
    assert_eq!(
        message(shifted),
        "line 5, column 1: map 'f': dimension mismatch: 'y' lies in degree 1, expected degree 0"
    );
    let not_d = "field Q\ncomplex C\n  degree 0 dim 1 basis x\n  degree 1 dim 1 basis y\n  degree 2 dim 1 basis z\n  d z = y\n  d y = x\n";
    assert!(message(not_d).contains("does not square to zero"));
    assert!(message("field Fp 4\n").contains("'4' is not a supported prime"));
    assert!(message("field Q\n  degree 0\n").contains("indented line outside a declaration"));
    assert!(
        message("field Q\ncomplex C\n  degree 0 dim 1 basis x\nideal I = reduced(C)\n")
            .contains("reduced(…) takes")
    );
}

#[test]
fn coefficients_are_normalized() {
    let d = parse("field Fp 5\ncomplex C\n  degree 0 dim 1 basis x\nmap f : C -> C\n  x |-> -1*x + 3*x + 1/2*x\n").unwrap();
    let Decl::Map(m) = &d.decls["f"] else {
        panic!()
    };
    // -1 + 3 + 3 = 0 mod 5
    assert!(m.images["x"].is_empty());
    let q = Field::Rationals;
    let d = parse(
        "field Q\ncomplex C\n  degree 0 dim 2 basis x y\nmap f : C -> C\n  x |-> -3/6*y + x + -x\n",
    )
    .unwrap();
    let Decl::Map(m) = &d.decls["f"] else {
        panic!()
    };
    assert_eq!(print_term(q, &m.images["x"]), "-1/2*y");
}

#[test]
fn shipped_corpus_matches_the_catalog() {
    for (name, text) in export::corpus() {
        let shipped = std::fs::read_to_string(fixture_dir().join(&name))
            .unwrap_or_else(|e| panic!("{name}: {e}; regenerate with `smith export-fixtures`"));
        assert_eq!(
            shipped, text,
            "{name} is stale; regenerate with `smith export-fixtures`"
        );
        let doc = parse(&text).unwrap();
        assert_eq!(parse(&doc.to_string()).unwrap(), doc, "{name}");
        resolve(&doc).unwrap();
    }
}

#[test]
fn dual_fixture_parses_to_the_catalog_ideal() {
    let text = std::fs::read_to_string(fixture_dir().join("ideal_dual_eps.smith")).unwrap();
    let doc = parse(&text).unwrap();
    let count = |k: &str| doc.decls.values().filter(|d| d.kind() == k).count();
    assert_eq!((count("dga"), count("bimodule"), count("ideal")), (1, 1, 1));

    let c = fixtures();
    for i in &c.ideals {
        let doc = export::ideal_document(&i.value);
        let m = resolve(&parse(&doc.to_string()).unwrap()).unwrap();
        let ring = verify_dga(&m.dgas["R"].candidate).unwrap();
        assert_eq!(&ring, i.value.ring(), "{}", i.name);
        let b = &m.bimodules["I"];
        let bimodule = verify_bimodule(&BimoduleCandidate {
            ring,
            carrier: m.complexes["CI"].clone(),
            left: b.left.clone(),
            right: b.right.clone(),
        })
        .unwrap();
        let ideal = SmithIdealData::new(bimodule, m.maps["j"].map.clone()).unwrap();
        assert_eq!(&ideal, &i.value, "{}", i.name);
    }
}

#[test]
fn fixtures_over_a_prime_field_round_trip() {
    let c = smith_ideals::constructions::fixtures_over(Field::prime(3).unwrap());
    for i in &c.ideals {
        let doc = export::full_document(&i.value);
        let text = doc.to_string();
        assert!(text.starts_with("field Fp 3\n"));
        let back = parse(&text).unwrap();
        assert_eq!(back, doc, "{}", i.name);
        resolve(&back).unwrap();
    }
}

fn random_document() -> impl Strategy<Value = String> {
    let field = prop_oneof![Just("Q"), Just("Fp 7")];
    let coef = prop_oneof![
        (-5i64..=5).prop_map(|c| c.to_string()),
        ((-5i64..=5), (1i64..=4)).prop_map(|(a, b)| format!("{a}/{b}")),
    ];
    let term = proptest::collection::vec((coef, 0usize..3), 0..4);
    (field, proptest::collection::vec(term, 3), 0usize..3).prop_map(|(f, terms, k)| {
        let basis = ["x", "y", "z"];
        let body = |t: &Vec<(String, usize)>| -> String {
            let parts: Vec<String> = t
                .iter()
                .map(|(c, b)| format!("{c} * {}", basis[*b]))
                .collect();
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        };
        // Declarations out of order, extra spaces and comments.
        let mut s = format!("field {f}\nideal I = reduced(B, j=g)   # reduced\n");
        s += &format!("dga   A on C\n  unit = {}\n", basis[k]);
        for (i, t) in terms.iter().enumerate() {
            s += &format!("  mul {}   y = {}\n", basis[i], body(t));
        }
        s += "map f : C ⊗ C -> C\n";
        for (i, t) in terms.iter().enumerate() {
            s += &format!("  {}⊗x |-> {}\n", basis[i], body(t));
        }
        s += "complex   C\n  degree 0 dim 3 basis x y z\n";
        s += "bimodule B : C over A\n  left x y = y\nmap g : C -> C\n";
        s
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(input in random_document()) {
        let doc = parse(&input).unwrap();
        resolve(&doc).unwrap();
        let printed = doc.to_string();
        let again = parse(&printed).unwrap();
        prop_assert_eq!(&again, &doc);
        prop_assert_eq!(again.to_string(), printed);
    }
}
