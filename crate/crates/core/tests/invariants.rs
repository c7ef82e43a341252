//! Module invariants as property tests over seeded random inputs.

mod common;

use bihom_core::algebra::{is_derivation, is_morphism};
use bihom_core::axioms::{check_bihom_novikov, check_classical, check_cyclic_bracket_identities, ClassicalKind};
use bihom_core::cohomology::{
    cochain2_report, cochain3_report, cochain_space, coords_to_matrix, delta1, delta2, h2_dimension, Variant,
};
use bihom_core::constructions::{
    derivation_product, regular_lie_bracket, rota_baxter_check, rota_baxter_product, subadjacent_bracket, xi_family,
    yau_twist, DerivationData, RotaBaxterData, XiTerm,
};
use bihom_core::deformation::{
    apply_equivalence, coboundary_deformation, g1_class_compare, infinitesimal_is_cocycle, verify_deformation,
    verify_deformation_to, FormalIsomorphism, TruncatedDeformation,
};
use bihom_core::matrix::{in_span, vector};
use bihom_core::quadratic::{center, in_center, induced_form, lower_central_series};
use bihom_core::search::{search, SearchSpec, Target};
use bihom_core::{BiHomAlgebra, Matrix, Scalar, Tensor3, Vector};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

/// `alpha(x) D(beta(y))` on a random commutative associative algebra; regular
/// when `invertible` is set.
fn novikov_sample(rng: &mut ChaCha8Rng, max_dim: usize, invertible: bool) -> BiHomAlgebra {
    let s = common::comm_assoc_sample(rng, max_dim, invertible);
    let data = DerivationData { alpha: s.alpha, beta: s.beta, derivation: s.derivation };
    derivation_product(&s.algebra, &data).unwrap()
}

/// Either a BiHom-Novikov sample or a sparse table with diagonal maps, so
/// both verdicts occur.
fn mixed_sample(rng: &mut ChaCha8Rng) -> BiHomAlgebra {
    if rng.gen_bool(0.5) {
        return novikov_sample(rng, 3, false);
    }
    let n = rng.gen_range(1..=3);
    let d = |rng: &mut ChaCha8Rng| Matrix::diagonal(&common::random_coeffs(rng, n));
    let (a, b) = (d(rng), d(rng));
    BiHomAlgebra::untwisted(common::sparse_table(rng, n, 0.2)).with_maps(a, b).unwrap()
}

fn mul(alg: &BiHomAlgebra, x: &[Scalar], y: &[Scalar]) -> Vector {
    alg.multiply(x, y).unwrap()
}

fn random_cochain1(rng: &mut ChaCha8Rng, alg: &BiHomAlgebra) -> Matrix {
    let c1 = cochain_space(alg, 1).unwrap();
    coords_to_matrix(alg.dim(), &c1.combine(&common::random_coeffs(rng, c1.dimension())))
}

fn random_cochain2(rng: &mut ChaCha8Rng, alg: &BiHomAlgebra) -> Tensor3 {
    let c2 = cochain_space(alg, 2).unwrap();
    Tensor3::from_coords(alg.dim(), c2.combine(&common::random_coeffs(rng, c2.dimension()))).unwrap()
}

/// The BiHom-Novikov identities and structure-map hypotheses on random
/// vectors rather than basis tuples.
fn novikov_on_random_vectors(rng: &mut ChaCha8Rng, alg: &BiHomAlgebra, trials: usize) -> bool {
    let n = alg.dim();
    let (a, b) = (alg.alpha(), alg.beta());
    if a * b != b * a {
        return false;
    }
    (0..trials).all(|_| {
        let [x, y, z] = [0; 3].map(|_| common::random_coeffs(rng, n));
        let xy = mul(alg, &x, &y);
        let multiplicative = [a, b].iter().all(|m| m.apply(&xy) == mul(alg, &m.apply(&x), &m.apply(&y)));
        let rc = mul(alg, &xy, &a.apply(&z)) == mul(alg, &mul(alg, &x, &z), &a.apply(&y));
        let side = |p: &[Scalar], q: &[Scalar]| {
            vector::sub(
                &mul(alg, &mul(alg, &b.apply(p), &a.apply(q)), &b.apply(&z)),
                &mul(alg, &a.apply(&b.apply(p)), &mul(alg, &a.apply(q), &z)),
            )
        };
        multiplicative && rc && side(&x, &y) == side(&y, &x)
    })
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn multiply_is_bilinear(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = mixed_sample(&mut rng);
        let n = alg.dim();
        let [x, x2, y] = [0; 3].map(|_| common::random_coeffs(&mut rng, n));
        let lambda = Scalar::from_int(rng.gen_range(-3..=3));
        let combo = vector::add(&vector::scale(&lambda, &x), &x2);
        let expected = vector::add(&vector::scale(&lambda, &mul(&alg, &x, &y)), &mul(&alg, &x2, &y));
        prop_assert_eq!(mul(&alg, &combo, &y), expected);
        prop_assert!(is_morphism(&alg, &Matrix::identity(n)).unwrap().passed());
        prop_assert!(is_derivation(&alg, &Matrix::zeros(n, n)).unwrap().passed());
    }

    #[test]
    fn basis_verdict_matches_random_vectors(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = mixed_sample(&mut rng);
        prop_assert_eq!(check_bihom_novikov(&alg).passed(), novikov_on_random_vectors(&mut rng, &alg, 50));
    }

    #[test]
    fn derivation_and_rota_baxter_products_are_novikov(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 4, false);
        prop_assert!(check_bihom_novikov(&alg).passed());
        let weight = Scalar::from_int(rng.gen_range(-2..=2));
        let n = alg.dim();
        for operator in [Matrix::zeros(n, n), Matrix::identity(n).scale(&-&weight)] {
            let rb = RotaBaxterData { operator, weight: weight.clone() };
            prop_assert!(rota_baxter_check(&alg, &rb).unwrap().passed());
            prop_assert!(check_bihom_novikov(&rota_baxter_product(&alg, &rb).unwrap()).passed());
        }
    }

    #[test]
    fn regular_novikov_algebras_satisfy_the_cyclic_identities(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        prop_assert!(check_cyclic_bracket_identities(&alg).unwrap().passed());
    }

    #[test]
    fn equal_invertible_maps_reduce_to_hom_novikov(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = common::comm_assoc_sample(&mut rng, 3, true);
        let novikov = derivation_product(&s.algebra, &DerivationData::untwisted(s.derivation)).unwrap();
        let alg = if rng.gen_bool(0.5) {
            yau_twist(&novikov, &s.alpha, &s.alpha).unwrap()
        } else {
            let alpha = common::random_invertible(&mut rng, novikov.dim());
            novikov.with_maps(alpha.clone(), alpha).unwrap()
        };
        let hom = check_classical(&alg, ClassicalKind::HomNovikov).unwrap().passed();
        prop_assert_eq!(check_bihom_novikov(&alg).passed(), hom);
    }

    #[test]
    fn construction_identities(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = common::comm_assoc_sample(&mut rng, 3, true);
        let n = s.algebra.dim();
        let data = DerivationData { alpha: s.alpha, beta: s.beta, derivation: s.derivation };
        let product = derivation_product(&s.algebra, &data).unwrap();
        for term in [XiTerm::Twisted, XiTerm::Plain] {
            prop_assert_eq!(xi_family(&s.algebra, &data, &Scalar::zero(), term).unwrap().mu().clone(), product.mu().clone());
        }
        let untwisted = derivation_product(&s.algebra, &DerivationData::untwisted(data.derivation.clone())).unwrap();
        let id = Matrix::identity(n);
        prop_assert_eq!(yau_twist(&untwisted, &id, &id).unwrap().mu().clone(), untwisted.mu().clone());

        let bracket = subadjacent_bracket(&product).unwrap();
        let (a, b) = (bracket.alpha(), bracket.beta());
        let e = bracket.basis();
        for x in &e {
            for y in &e {
                let lhs = mul(&bracket, &b.apply(x), &a.apply(y));
                prop_assert_eq!(lhs, vector::neg(&mul(&bracket, &b.apply(y), &a.apply(x))));
            }
        }
        let lie = regular_lie_bracket(&product).unwrap();
        for (i, j, k) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))) {
            prop_assert_eq!(lie.mu().get(i, j, k), &-lie.mu().get(j, i, k));
        }
    }

    #[test]
    fn center_membership_matches_the_kernel(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = mixed_sample(&mut rng);
        let n = alg.dim();
        let basis = center(&alg);
        let coeffs = common::random_coeffs(&mut rng, basis.len());
        let mut inside = vector::zeros(n);
        for (c, v) in coeffs.iter().zip(&basis) {
            vector::axpy(&mut inside, c, v);
        }
        let anywhere = common::random_coeffs(&mut rng, n);
        for v in [inside, anywhere] {
            let direct = alg.basis().iter().all(|e| vector::is_zero(&mul(&alg, &v, e)) && vector::is_zero(&mul(&alg, e, &v)));
            prop_assert_eq!(in_center(&alg, &v), direct);
            prop_assert_eq!(in_span(n, &basis, &v), direct);
        }
    }

    #[test]
    fn lower_central_series_is_nonincreasing(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..=4);
        let table = if rng.gen_bool(0.5) {
            regular_lie_bracket(&novikov_sample(&mut rng, 4, true)).unwrap()
        } else {
            BiHomAlgebra::untwisted(common::sparse_table(&mut rng, n, 0.15))
        };
        let dims = lower_central_series(&table, 6).dimensions();
        prop_assert!(dims.windows(2).all(|w| w[1] <= w[0]), "{:?}", dims);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn coboundaries_are_compatible_cochains(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        let f = random_cochain1(&mut rng, &alg);
        prop_assert!(cochain2_report(&alg, &delta1(&alg, &f).unwrap()).unwrap().passed());
        let g = random_cochain2(&mut rng, &alg);
        for v in Variant::ALL {
            prop_assert!(cochain3_report(&alg, &delta2(&alg, &g, v).unwrap()).unwrap().passed());
        }
    }

    #[test]
    fn coboundaries_are_linear(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        let lambda = Scalar::from_int(rng.gen_range(-3..=3));
        let (f, g) = (random_cochain1(&mut rng, &alg), random_cochain1(&mut rng, &alg));
        let lhs = delta1(&alg, &(&f + &g.scale(&lambda))).unwrap();
        prop_assert_eq!(lhs, &delta1(&alg, &f).unwrap() + &delta1(&alg, &g).unwrap().scale(&lambda));
        let (s, t) = (random_cochain2(&mut rng, &alg), random_cochain2(&mut rng, &alg));
        for v in Variant::ALL {
            let lhs = delta2(&alg, &(&s + &t.scale(&lambda)), v).unwrap();
            let (ds, dt) = (delta2(&alg, &s, v).unwrap(), delta2(&alg, &t, v).unwrap());
            let n = alg.dim();
            for (x, y, z) in (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z)))) {
                let rhs = vector::add(ds.basis_value(x, y, z), &vector::scale(&lambda, dt.basis_value(x, y, z)));
                prop_assert_eq!(lhs.basis_value(x, y, z), &rhs[..]);
            }
        }
    }

    #[test]
    fn cohomology_dimensions_are_ordered(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        let dims = h2_dimension(&alg, Variant::Composition).unwrap();
        prop_assert!(dims.dim_b2 <= dims.dim_z2 && dims.dim_z2 <= dims.dim_c2);
        prop_assert_eq!(dims.dim_h2, dims.dim_z2 - dims.dim_b2);
        prop_assert!(dims.dim_z1 <= dims.dim_c1);
    }

    #[test]
    fn untwisted_coboundary_is_the_classical_one(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let s = common::comm_assoc_sample(&mut rng, 3, true);
        let alg = derivation_product(&s.algebra, &DerivationData::untwisted(s.derivation)).unwrap();
        let n = alg.dim();
        let f = Tensor3::from_coords(n, common::random_coeffs(&mut rng, n * n * n)).unwrap();
        let df = delta2(&alg, &f, Variant::Composition).unwrap();
        let e = alg.basis();
        let m = |x: &[Scalar], y: &[Scalar]| mul(&alg, x, y);
        let fv = |x: &[Scalar], y: &[Scalar]| f.apply(x, y);
        for (i, j, k) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))) {
            let (x, y, z) = (&e[i], &e[j], &e[k]);
            let terms = [
                fv(x, &m(y, z)),
                vector::neg(&fv(&m(x, y), z)),
                vector::neg(&fv(y, &m(x, z))),
                fv(&m(y, x), z),
                m(x, &fv(y, z)),
                vector::neg(&m(&fv(x, y), z)),
                vector::neg(&m(y, &fv(x, z))),
                m(&fv(y, x), z),
            ];
            let classical = terms.iter().fold(vector::zeros(n), |acc, t| vector::add(&acc, t));
            prop_assert_eq!(df.basis_value(i, j, k), &classical[..], "at {:?}", (i, j, k));
        }
    }

    #[test]
    fn null_deformations_pass(seed in any::<u64>(), order in 0usize..=6) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        prop_assert!(verify_deformation(&TruncatedDeformation::null(alg, order)).unwrap().passed());
    }

    #[test]
    fn coboundary_deformations_are_trivial(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        let f = random_cochain1(&mut rng, &alg);
        let d = coboundary_deformation(&alg, &f, 2).unwrap();
        prop_assert!(verify_deformation_to(&d, 1).unwrap().passed());
        prop_assert!(infinitesimal_is_cocycle(&d).unwrap().passed());
        let cmp = g1_class_compare(&d, &TruncatedDeformation::null(alg.clone(), 2)).unwrap();
        prop_assert!(cmp.cohomologous);
        prop_assert_eq!(delta1(&alg, &cmp.witness.unwrap()).unwrap(), d.terms[0].clone());
    }

    #[test]
    fn equivalence_then_inverse_is_identity(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        let n = alg.dim();
        let order = 3;
        let mut d = TruncatedDeformation::null(alg.clone(), order);
        d.terms[0] = random_cochain2(&mut rng, &alg);
        let phi = FormalIsomorphism { terms: (0..order).map(|_| random_cochain1(&mut rng, &alg)).collect() };
        let moved = apply_equivalence(&d, &phi).unwrap();
        let back = apply_equivalence(&moved, &phi.inverse(n, order)).unwrap();
        prop_assert_eq!(back.terms, d.terms);
    }

    #[test]
    fn degree_one_deformations_have_cocycle_infinitesimals(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let alg = novikov_sample(&mut rng, 3, true);
        let n = alg.dim();
        let f = random_cochain1(&mut rng, &alg);
        let base = coboundary_deformation(&alg, &f, 2).unwrap();
        let phi = FormalIsomorphism { terms: vec![random_cochain1(&mut rng, &alg), random_cochain1(&mut rng, &alg)] };
        let mut random = TruncatedDeformation::null(alg.clone(), 1);
        random.terms[0] = random_cochain2(&mut rng, &alg);
        let candidates = [apply_equivalence(&base, &phi).unwrap(), random, TruncatedDeformation::null(alg, 1)];
        for d in &candidates {
            if verify_deformation_to(d, 1).unwrap().passed() {
                prop_assert!(infinitesimal_is_cocycle(d).unwrap().passed(), "dim {}", n);
            }
        }
    }
}

#[test]
fn induced_forms_are_symmetric_and_nondegenerate() {
    let outcome = search(&SearchSpec::new(2, 3, Target::QuadraticNovikov)).unwrap();
    let mut checked = 0;
    for inst in &outcome.instances {
        let Some(doc) = &inst.lifted else { continue };
        let form = doc.bilinear_form.as_ref().expect("quadratic instances carry a form");
        if !(form.is_compatible(doc.algebra.alpha()) && form.is_compatible(doc.algebra.beta())) {
            continue;
        }
        let (_, b_alpha, _) = induced_form(&doc.algebra, form).unwrap();
        assert!(b_alpha.is_symmetric() && b_alpha.is_nondegenerate(), "{}", doc.to_text().unwrap());
        checked += 1;
    }
    assert!(checked > 0);
}
