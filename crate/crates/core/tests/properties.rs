use proptest::prelude::*;

use polycell::blocks::count_walk_arrivals;
use polycell::complex_products::{
    complex_projection, complex_tensor_product, is_complex_homomorphism, product_counts, universal_factor_complex,
    ComplexHom,
};
use polycell::document::{emit, parse};
use polycell::graph_products::{gcd, tensor_projection};
use polycell::hom::is_graph_homomorphism;
use polycell::homsearch::count_graph_homomorphisms;
use polycell::random::{random_complex, random_graph, relabel_complex, rng, RandomShape};
use polycell::symmetry::{
    are_isomorphic, complex_automorphism_group, permutation_to_hom, DEFAULT_BUDGET,
};
use polycell::verify::check_link_products;
use polycell::walk::canonical_cycle_key;
use polycell::{tensor_product, Factor};

fn small() -> RandomShape {
    RandomShape {
        max_vertices: 4,
        max_edges: 5,
        max_faces: 2,
        max_face_len: 4,
        loops: true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_cell_counts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_complex(&mut r, &small());
        let y = random_complex(&mut r, &small());
        let p = complex_tensor_product(&x, &y);
        let z = &p.complex;
        let faces: usize = x.faces().iter()
            .flat_map(|a| y.faces().iter().map(move |b| 2 * gcd(a.len(), b.len())))
            .sum();
        prop_assert_eq!(z.skeleton().vertex_count(), x.skeleton().vertex_count() * y.skeleton().vertex_count());
        prop_assert_eq!(z.skeleton().edge_count(), 2 * x.skeleton().edge_count() * y.skeleton().edge_count());
        prop_assert_eq!(z.face_count(), faces);
        prop_assert_eq!(product_counts(&x, &y), (z.skeleton().vertex_count(), z.skeleton().edge_count(), faces));
        prop_assert!(z.validate().is_ok());
    }

    #[test]
    fn projections_and_universal_map(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_complex(&mut r, &small());
        let y = random_complex(&mut r, &small());
        let p = complex_tensor_product(&x, &y);
        let left = complex_projection(&p, Factor::Left);
        let right = complex_projection(&p, Factor::Right);
        prop_assert!(is_complex_homomorphism(&p.complex, &x, &left));
        prop_assert!(is_complex_homomorphism(&p.complex, &y, &right));
        let u = universal_factor_complex(&p, &left, &right).expect("projections factor");
        prop_assert_eq!(u, ComplexHom::identity(&p.complex));
    }

    #[test]
    fn graph_projections_are_homomorphisms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, &small());
        let h = random_graph(&mut r, &small());
        let p = tensor_product(&g, &h);
        prop_assert!(is_graph_homomorphism(&p.graph, &g, &tensor_projection(&p, Factor::Left)));
        prop_assert!(is_graph_homomorphism(&p.graph, &h, &tensor_projection(&p, Factor::Right)));
    }

    #[test]
    fn hom_counts_multiply(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, &small());
        let a = random_graph(&mut r, &small());
        let b = random_graph(&mut r, &small());
        let p = tensor_product(&a, &b).graph;
        prop_assert_eq!(
            count_graph_homomorphisms(&g, &p),
            count_graph_homomorphisms(&g, &a) * count_graph_homomorphisms(&g, &b)
        );
    }

    #[test]
    fn links_of_products(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_complex(&mut r, &small());
        let y = random_complex(&mut r, &small());
        let (_, bad) = check_link_products(&x, &y, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(bad, None);
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let x = random_complex(&mut rng(seed), &RandomShape::default());
        let text = emit(&x);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(emit(&back), text);
    }

    #[test]
    fn relabelling_preserves_structure(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_complex(&mut r, &small());
        let y = relabel_complex(&x, &mut r);
        prop_assert!(are_isomorphic(&x, &y).unwrap());
        prop_assert_eq!(x.euler_characteristic(), y.euler_characteristic());
        prop_assert_eq!(x.homology_h1(), y.homology_h1());
        prop_assert_eq!(
            complex_automorphism_group(&x).unwrap().order(),
            complex_automorphism_group(&y).unwrap().order()
        );
    }

    #[test]
    fn automorphisms_are_bijective_homomorphisms(seed in any::<u64>()) {
        let x = random_complex(&mut rng(seed), &small());
        let aut = complex_automorphism_group(&x).unwrap();
        for g in aut.group.generators() {
            let h = permutation_to_hom(&x, g);
            prop_assert!(is_complex_homomorphism(&x, &x, &h));
            prop_assert!(h.is_bijective(&x, &x));
        }
    }

    #[test]
    fn euler_characteristic_and_homology(seed in any::<u64>()) {
        let x = random_complex(&mut rng(seed), &RandomShape::default());
        let s = x.skeleton();
        let chi = s.vertex_count() as i64 - s.edge_count() as i64 + x.face_count() as i64;
        prop_assert_eq!(x.euler_characteristic(), chi);
        let (b1, _) = x.homology_h1();
        // b0 - b1 + b2 = chi with b2 >= 0
        prop_assert!(x.components().len() as i64 - b1 as i64 <= chi);
    }

    #[test]
    fn component_count_by_bipartiteness(seed in any::<u64>()) {
        let mut r = rng(seed);
        let shape = RandomShape { loops: false, ..RandomShape::default() };
        let g = random_graph(&mut r, &shape);
        let h = random_graph(&mut r, &shape);
        prop_assume!(g.is_connected() && h.is_connected() && g.edge_count() > 0 && h.edge_count() > 0);
        let n = tensor_product(&g, &h).graph.components().len();
        let expected = if g.is_bipartite() && h.is_bipartite() { 2 } else { 1 };
        prop_assert_eq!(n, expected);
    }

    #[test]
    fn cycle_keys_ignore_rotation_and_reversal(seed in any::<u64>(), k in 0usize..8) {
        let x = random_complex(&mut rng(seed), &RandomShape::default());
        for f in x.faces() {
            let w = &f.boundary;
            let key = canonical_cycle_key(w, true).unwrap();
            let turned = w.rotated(x.skeleton(), k % w.len());
            prop_assert_eq!(&canonical_cycle_key(&turned, true).unwrap(), &key);
            prop_assert_eq!(&canonical_cycle_key(&w.reversed(x.skeleton()), true).unwrap(), &key);
        }
    }

    #[test]
    fn walk_arrivals_sum_to_binomial(d in 1u64..40, k in 0u64..20) {
        prop_assume!(k <= d / 2);
        let total = count_walk_arrivals(d, k, 1).unwrap() + count_walk_arrivals(d, k, -1).unwrap();
        let binom = (0..k).fold(1u128, |acc, i| acc * (d - i) as u128 / (i + 1) as u128);
        prop_assert_eq!(total, binom);
    }
}
