//! Cross-module worked examples: closed-form values checked end to end
//! through the public API.

use std::sync::Arc;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hypergroups::amenability::exact_diagonal;
use hypergroups::element::{AlgebraElement, Side};
use hypergroups::families::{builtin_group, conjugacy_hypergroup, dunkl_ramirez};
use hypergroups::ideals::{hull_default, minimal_ideals};
use hypergroups::spectra::{character_table, fourier, inverse_fourier};
use hypergroups::table::{build_hypergroup, cyclic_group_table};
use hypergroups::{Dual, Hypergroup, DEFAULT_SEED};

fn s3_class_table() -> Arc<Hypergroup> {
    Arc::new(conjugacy_hypergroup(&builtin_group("S3").unwrap()).unwrap())
}

fn dual_of(table: &Arc<Hypergroup>) -> Arc<Dual> {
    Arc::new(character_table(table, 1e-9, DEFAULT_SEED).unwrap())
}

#[test]
fn translation_of_an_indicator_reads_a_tensor_column() {
    // On the S3 class table, T_transp applied to the indicator of the
    // 3-cycle class returns y -> p(transp, y)({3-cycles}).
    let table = s3_class_table();
    let indicator = AlgebraElement::indicator(&table, 2).unwrap();
    let translated = indicator.translate(1).unwrap();
    for y in 0..3 {
        let want = table
            .row(1, y)
            .iter()
            .find(|&&(z, _)| z == 2)
            .map(|&(_, p)| p)
            .unwrap_or(0.0);
        assert!((translated.value(y).re - want).abs() < 1e-15);
        assert_eq!(translated.value(y).im, 0.0);
    }
}

#[test]
fn s3_characters_are_normalized_group_characters() {
    // Rows (1,1,1), (1,-1,1), (1,0,-1/2) on the classes (e, transpositions,
    // 3-cycles), i.e. chi/chi(1) of the classical table.
    let dual = dual_of(&s3_class_table());
    let want = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 0.0, -0.5]];
    for (i, row) in want.iter().enumerate() {
        for (x, &value) in row.iter().enumerate() {
            let got = dual.value(i, x);
            assert!(
                (got.re - value).abs() < 1e-10 && got.im.abs() < 1e-10,
                "alpha_{i}({x}) = {got}"
            );
        }
    }
    assert!(dual.is_real_dual());
}

#[test]
fn dunkl_ramirez_first_character_value() {
    // Truncation a = 0.4, N = 8: chi_1 is -a/(1-a) = -2/3 at element 0 and 1
    // everywhere else.
    let table = Arc::new(dunkl_ramirez::<f64>(0.4, 8).unwrap());
    let dual = dual_of(&table);
    let chi1 = dual.character_values(1);
    assert!(
        (chi1[0].re + 2.0 / 3.0).abs() < 1e-12,
        "chi_1(0) = {}",
        chi1[0]
    );
    for (x, value) in chi1.iter().enumerate().skip(1) {
        assert!((value.re - 1.0).abs() < 1e-12, "chi_1({x}) = {value}");
    }
}

#[test]
fn hull_of_a_two_character_sum() {
    let dual = dual_of(&s3_class_table());
    let f = dual.character(1).plus(&dual.character(2)).unwrap();
    let hull = hull_default(&dual, &f).unwrap();
    assert_eq!(hull, [1, 2].into_iter().collect());
}

#[test]
fn minimal_ideal_counts() {
    let z2 = Arc::new(cyclic_group_table::<f64>(2).unwrap());
    assert_eq!(minimal_ideals(&dual_of(&z2)).len(), 2);
    assert_eq!(minimal_ideals(&dual_of(&s3_class_table())).len(), 3);
    let klein = Arc::new(z2.product(&z2, 1e-12).unwrap());
    assert_eq!(minimal_ideals(&dual_of(&klein)).len(), 4);
}

#[test]
fn product_of_class_tables_passes_axioms() {
    let s3 = s3_class_table();
    let product = s3.product(&s3, 1e-12).unwrap();
    assert_eq!(product.size(), 9);
    let report = product.check_axioms(1e-12);
    assert!(report.pass(), "{report:?}");
    // Haar of the product is the product of the Haars.
    for x in 0..3 {
        for y in 0..3 {
            let want = s3.weight(x) * s3.weight(y);
            assert!((product.weight(x * 3 + y) - want).abs() < 1e-14);
        }
    }
}

#[test]
fn trivial_hypergroup_supports_every_operation() {
    let table = Arc::new(build_hypergroup(1, 0, vec![0], &[1.0], 1e-12, "trivial").unwrap());
    let dual = dual_of(&table);
    assert_eq!(dual.len(), 1);

    let f = AlgebraElement::from_real(&table, &[2.5]).unwrap();
    let g = f.convolve(&f).unwrap();
    assert!((g.value(0).re - 6.25).abs() < 1e-14);
    assert_eq!(f.translate(0).unwrap().value(0), f.value(0));
    assert_eq!(f.involute().value(0), f.value(0));

    let hat = fourier(&dual, &f).unwrap();
    let back = inverse_fourier(&hat);
    assert!((back.value(0) - f.value(0)).norm() < 1e-14);

    assert_eq!(minimal_ideals(&dual).len(), 1);

    let m = exact_diagonal(&table, &dual).unwrap();
    assert!((m.norm_l1() - 1.0).abs() < 1e-14);

    let e = f.embed(Side::Left);
    assert!((e.norm_l1() - f.norm_l1()).abs() < 1e-14);

    let product = table.product(&table, 1e-12).unwrap();
    assert_eq!(product.size(), 1);
}

#[test]
fn unit_is_the_fourier_preimage_of_ones() {
    let table = Arc::new(dunkl_ramirez::<f64>(0.5, 6).unwrap());
    let dual = dual_of(&table);
    let u = AlgebraElement::unit(&table);
    let hat = fourier(&dual, &u).unwrap();
    for i in 0..dual.len() {
        assert!((hat.value(i) - Complex::new(1.0, 0.0)).norm() < 1e-11);
    }
}

#[test]
fn tables_and_duals_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>(_: &T) {}
    let table = s3_class_table();
    let dual = dual_of(&table);
    assert_send_sync(&table);
    assert_send_sync(&dual);

    // Concurrent reads of the same immutable table.
    let handles: Vec<_> = (0..4)
        .map(|seed| {
            let table = Arc::clone(&table);
            std::thread::spawn(move || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let f = AlgebraElement::random(&table, &mut rng);
                let g = AlgebraElement::random(&table, &mut rng);
                f.convolve(&g).unwrap().norm_l1()
            })
        })
        .collect();
    for handle in handles {
        assert!(handle.join().unwrap().is_finite());
    }
}
