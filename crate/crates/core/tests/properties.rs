use proptest::prelude::*;

use smith_ideals::complex::{cone, homology, ChainComplex, ChainMap};
use smith_ideals::field::Field;
use smith_ideals::graded::{symmetry, GradedMap, GradedSpace};
use smith_ideals::matrix::Matrix;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::Prime(2)),
        Just(Field::Prime(5))
    ]
}

fn space() -> impl Strategy<Value = GradedSpace> {
    proptest::collection::vec(0usize..=2, 3).prop_map(|dims| {
        let d: Vec<(i64, usize)> = dims
            .iter()
            .enumerate()
            .map(|(n, &k)| (n as i64 - 1, k))
            .collect();
        GradedSpace::from_dims(&d)
    })
}

/// Map of the given degree with entries in -2..=2, seeded from a flat list.
fn map_from(
    field: Field,
    s: &GradedSpace,
    t: &GradedSpace,
    degree: i64,
    seed: &[i64],
) -> GradedMap {
    let mut k = 0;
    GradedMap::from_columns(field, s.clone(), t.clone(), degree, |n, _| {
        (0..t.dim(n + degree))
            .map(|_| {
                k += 1;
                field.from_int(seed[k % seed.len()])
            })
            .collect()
    })
    .unwrap()
}

fn seed() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-2i64..=2, 1..40)
}

fn degree() -> impl Strategy<Value = i64> {
    -1i64..=1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(
        f in fields(), a in space(), b in space(), c in space(), d in space(),
        s1 in seed(), s2 in seed(), s3 in seed(),
    ) {
        let h = map_from(f, &a, &b, 0, &s1);
        let g = map_from(f, &b, &c, 0, &s2);
        let k = map_from(f, &c, &d, 0, &s3);
        let left = k.compose(&g).unwrap().compose(&h).unwrap();
        let right = k.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tensor_of_maps_is_associative(
        f in fields(), a in space(), b in space(), c in space(),
        (da, db, dc) in (degree(), degree(), degree()),
        s1 in seed(), s2 in seed(), s3 in seed(),
    ) {
        let x = map_from(f, &a, &a, da, &s1);
        let y = map_from(f, &b, &b, db, &s2);
        let z = map_from(f, &c, &c, dc, &s3);
        let left = x.tensor(&y).unwrap().tensor(&z).unwrap();
        let right = x.tensor(&y.tensor(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interchange_law_carries_the_koszul_sign(
        f in fields(), a in space(), b in space(),
        (d1, d2, d3, d4) in (degree(), degree(), degree(), degree()),
        s1 in seed(), s2 in seed(), s3 in seed(), s4 in seed(),
    ) {
        // (g ⊗ k)(h ⊗ l) = (-1)^{|k||h|} gh ⊗ kl
        let h = map_from(f, &a, &a, d1, &s1);
        let g = map_from(f, &a, &a, d2, &s2);
        let l = map_from(f, &b, &b, d3, &s3);
        let k = map_from(f, &b, &b, d4, &s4);
        let left = g.tensor(&k).unwrap().compose(&h.tensor(&l).unwrap()).unwrap();
        let right = g
            .compose(&h)
            .unwrap()
            .tensor(&k.compose(&l).unwrap())
            .unwrap()
            .scale(&f.sign(d4 * d1));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn symmetry_is_an_involution(f in fields(), a in space(), b in space()) {
        let there = symmetry(f, &a, &b);
        let back = symmetry(f, &b, &a);
        let id = GradedMap::identity(f, &a.tensor(&b));
        prop_assert_eq!(back.compose(&there).unwrap(), id);
    }

    #[test]
    fn cone_homology_is_kernel_plus_cokernel(f in fields(), a in space(), b in space(), s in seed()) {
        // Between complexes with zero differential every degree 0 map is a
        // chain map, and H_n(Cone g) = coker g_n ⊕ ker g_{n-1}.
        let x = ChainComplex::with_zero_differential(f, a.clone());
        let y = ChainComplex::with_zero_differential(f, b.clone());
        let g = ChainMap::new(x, y, map_from(f, &a, &b, 0, &s)).unwrap();
        let c = cone(&g).unwrap();
        let hc = homology(&c.complex);
        for n in -1..=3 {
            let rank = |m: i64| g.map().block(m).rank();
            let expect = (b.dim(n) - rank(n)) + (a.dim(n - 1) - rank(n - 1));
            prop_assert_eq!(hc.dim(n), expect);
        }
        prop_assert_eq!(hc.euler_characteristic(), c.complex.space().euler_characteristic());
    }

    #[test]
    fn tensor_complex_squares_to_zero_and_euler_multiplies(
        f in fields(), a in space(), b in space(), s1 in seed(), s2 in seed(),
    ) {
        // Cones of random maps give complexes with nonzero differentials.
        let cx = |sp: &GradedSpace, s: &[i64]| {
            let z = ChainComplex::with_zero_differential(f, sp.clone());
            cone(&ChainMap::new(z.clone(), z, map_from(f, sp, sp, 0, s)).unwrap()).unwrap().complex
        };
        let (x, y) = (cx(&a, &s1), cx(&b, &s2));
        let t = x.tensor(&y).unwrap();
        let chi = |c: &ChainComplex| homology(c).euler_characteristic();
        prop_assert_eq!(chi(&t), chi(&x) * chi(&y));
    }

    #[test]
    fn rank_nullity(f in fields(), rows in 0usize..5, cols in 0usize..5, s in seed()) {
        let mut k = 0;
        let m = Matrix::from_fn(f, rows, cols, |_, _| {
            k += 1;
            f.from_int(s[k % s.len()])
        });
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.cols(), cols);
        prop_assert!(m.mul(&kernel).is_zero());
    }
}

mod discrete {
    use proptest::prelude::*;

    use smith_ideals::constructions::{discrete_import, DiscreteAlgebra};
    use smith_ideals::field::Field;
    use smith_ideals::ideal::{build_ideal, centrality_check, verify_ideal};

    // Exponents of one, u, v, u2, uv, v2.
    const MONOMIALS: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

    fn upward_closed(chosen: &[usize]) -> bool {
        chosen.iter().all(|&a| {
            MONOMIALS.iter().enumerate().all(|(b, &(i, j))| {
                let (p, q) = MONOMIALS[a];
                let divisible = i >= p && j >= q;
                !divisible || chosen.contains(&b)
            })
        })
    }

    proptest! {
        #[test]
        fn monomial_subspaces_of_uv3(mask in 1u32..64, p in prop_oneof![Just(0u64), Just(2), Just(7)]) {
            let field = if p == 0 { Field::Rationals } else { Field::prime(p).unwrap() };
            let alg = DiscreteAlgebra::uv(field, 3);
            let chosen: Vec<usize> = (0..6).filter(|k| mask & (1 << k) != 0).collect();
            let vectors: Vec<_> = chosen
                .iter()
                .map(|&k| alg.basis_vector(&alg.labels()[k]).unwrap())
                .collect();
            let imported = discrete_import(&alg, &vectors);
            prop_assert_eq!(imported.is_ok(), upward_closed(&chosen));
            if let Ok(i) = imported {
                prop_assert!(centrality_check(i.bimodule(), i.j().map()).unwrap().passed());
                prop_assert!(verify_ideal(&build_ideal(&i).unwrap()).unwrap().passed());
            }
        }
    }
}
