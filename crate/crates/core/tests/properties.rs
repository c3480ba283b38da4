use proptest::prelude::*;
use zda_core::graph::build_gamma;
use zda_core::ring::poly_quotient;
use zda_core::{
    cross_check, direct_product, duplication, idealization, make_zn, natural_hom, nonzero_proper_ideals, AmalgamSpec,
    FiniteRing, ModuleData,
};

#[derive(Clone, Debug)]
enum Shape {
    Zn(u64),
    Product(u64, u64),
    Quotient(u64, Vec<u64>),
}

fn build(s: &Shape) -> FiniteRing {
    match s {
        Shape::Zn(n) => make_zn(*n).unwrap(),
        Shape::Product(a, b) => direct_product(&make_zn(*a).unwrap(), &make_zn(*b).unwrap()).unwrap(),
        Shape::Quotient(n, low) => {
            let base = make_zn(*n).unwrap();
            let mut coeffs: Vec<_> = low.iter().map(|&c| base.element((c % n) as usize).unwrap()).collect();
            coeffs.push(base.one());
            poly_quotient(&base, &coeffs, "x").unwrap()
        }
    }
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        (2u64..60).prop_map(Shape::Zn),
        (2u64..9, 2u64..9).prop_map(|(a, b)| Shape::Product(a, b)),
        (2u64..6, prop::collection::vec(0u64..6, 1..3)).prop_map(|(n, c)| Shape::Quotient(n, c)),
    ]
}

fn brute_zero_divisors(r: &FiniteRing) -> Vec<usize> {
    let n = r.size();
    (0..n).filter(|&a| a == r.zero_ix() || (1..n).any(|b| b != r.zero_ix() && r.mul_ix(a, b) == r.zero_ix())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold(s in shape(), seeds in prop::collection::vec((any::<usize>(), any::<usize>(), any::<usize>()), 32)) {
        let r = build(&s);
        let n = r.size();
        for (a, b, c) in seeds {
            let (a, b, c) = (a % n, b % n, c % n);
            prop_assert_eq!(r.add_ix(a, r.add_ix(b, c)), r.add_ix(r.add_ix(a, b), c));
            prop_assert_eq!(r.mul_ix(a, r.mul_ix(b, c)), r.mul_ix(r.mul_ix(a, b), c));
            prop_assert_eq!(r.mul_ix(a, r.add_ix(b, c)), r.add_ix(r.mul_ix(a, b), r.mul_ix(a, c)));
            prop_assert_eq!(r.mul_ix(a, b), r.mul_ix(b, a));
            prop_assert_eq!(r.add_ix(a, r.neg_ix(a)), r.zero_ix());
            prop_assert_eq!(r.mul_ix(a, r.one_ix()), a);
        }
    }

    #[test]
    fn zero_divisors_match_brute_force(s in shape()) {
        let r = build(&s);
        let z: Vec<usize> = r.zero_divisors().handles().collect();
        prop_assert_eq!(z, brute_zero_divisors(&r));
    }

    #[test]
    fn gamma_edges_match_products(s in shape()) {
        let r = build(&s);
        let g = build_gamma(&r);
        let z = brute_zero_divisors(&r);
        let expected = z.iter().filter(|&&a| a != r.zero_ix())
            .flat_map(|&a| z.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .filter(|&(a, b)| r.mul_ix(a, b) == r.zero_ix())
            .count();
        prop_assert_eq!(g.edge_count(), expected);
    }

    #[test]
    fn natural_maps_preserve_operations(n in 2u64..40, k in any::<usize>()) {
        let divisors: Vec<u64> = (2..=n).filter(|d| n % d == 0).collect();
        let m = divisors[k % divisors.len()];
        let (src, dst) = (make_zn(n).unwrap(), make_zn(m).unwrap());
        let f = natural_hom(&src, &dst).unwrap();
        for a in 0..src.size() {
            for b in 0..src.size() {
                prop_assert_eq!(f.apply_ix(src.mul_ix(a, b)), dst.mul_ix(f.apply_ix(a), f.apply_ix(b)));
                prop_assert_eq!(f.apply_ix(src.add_ix(a, b)), dst.add_ix(f.apply_ix(a), f.apply_ix(b)));
            }
        }
    }

    #[test]
    fn random_amalgamations_have_no_violations(a in 2u64..5, b in 2u64..5, n in 2u64..7) {
        let s = direct_product(&make_zn(a).unwrap(), &make_zn(b).unwrap()).unwrap();
        let r = make_zn(n * a * b).unwrap();
        let f = natural_hom(&r, &s).unwrap();
        for j in nonzero_proper_ideals(&s).unwrap() {
            let report = cross_check(&AmalgamSpec::new(&r, &s, &f, &j).unwrap()).unwrap();
            prop_assert!(report.violations.is_empty(), "{:?}", report.violations);
        }
    }
}

#[test]
fn duplication_has_twice_the_ideal() {
    let z12 = make_zn(12).unwrap();
    for i in nonzero_proper_ideals(&z12).unwrap() {
        let d = duplication(&z12, &i).unwrap();
        assert_eq!(d.ring().size(), 12 * i.len());
    }
}

#[test]
fn idealization_graph_matches_brute_force() {
    let z6 = make_zn(6).unwrap();
    let ext = idealization(&z6, &ModuleData::from_hom(&natural_hom(&z6, &make_zn(3).unwrap()).unwrap()).unwrap())
        .unwrap();
    let g = build_gamma(&ext.ring);
    assert_eq!(g.vertex_count(), brute_zero_divisors(&ext.ring).len() - 1);
}
