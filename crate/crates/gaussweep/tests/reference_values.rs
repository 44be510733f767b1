//! High-precision reference sweep: values frozen from a 40-digit
//! arbitrary-precision evaluation, checked against the f64 implementations.

// the literals carry the oracle's digits verbatim
#![allow(clippy::excessive_precision)]

use gaussweep::measure;
use gaussweep::special;
use gaussweep::surfaces::Piece;
use gaussweep::QuadratureSpec;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn erf_reference_sweep() {
    let table = [
        (0.25, 0.276_326_390_168_236_93),
        (0.5, 0.520_499_877_813_046_54),
        (1.0, 0.842_700_792_949_714_87),
        (1.5, 0.966_105_146_475_310_73),
        (2.0, 0.995_322_265_018_952_73),
        (2.5, 0.999_593_047_982_555_04),
        (3.0, 0.999_977_909_503_001_41),
        (3.5, 0.999_999_256_901_627_66),
        (4.0, 0.999_999_984_582_742_1),
        (5.0, 0.999_999_999_998_462_54),
    ];
    for (x, want) in table {
        let got = special::erf(x);
        assert!(
            rel(got.value, want) < 1e-14,
            "erf({x}) = {} vs {want}",
            got.value
        );
        assert!((got.value - want).abs() <= got.abs_error_bound.max(4.0 * f64::EPSILON));
    }
}

#[test]
fn erfc_reference_sweep() {
    let table = [
        (2.0, 4.677_734_981_047_266e-3),
        (3.0, 2.209_049_699_858_544e-5),
        (5.0, 1.537_459_794_428_035e-12),
        (8.0, 1.122_429_717_298_293e-29),
    ];
    for (x, want) in table {
        let got = special::erfc(x);
        assert!(
            rel(got.value, want) < 1e-12,
            "erfc({x}) = {} vs {want}",
            got.value
        );
    }
}

#[test]
fn gamma_reference_sweep() {
    let table = [
        (0.1, 9.513_507_698_668_731),
        (0.3, 2.991_568_987_687_59),
        (0.7, 1.298_055_332_647_558),
        (1.5, 0.886_226_925_452_758),
        (3.7, 4.170_651_783_796_604),
        (7.3, 1_271.423_633_663_909),
        (12.6, 1.755_232_994_685_559e8),
        (19.4, 2.065_832_197_619_443e16),
        (-0.5, -3.544_907_701_811_032),
        (-1.7, 2.513_923_519_065_202),
    ];
    for (x, want) in table {
        let got = special::gamma(x).unwrap();
        assert!(
            rel(got.value, want) < 5e-13,
            "gamma({x}) = {} vs {want}",
            got.value
        );
    }
}

#[test]
fn bessel_i0e_reference_sweep() {
    let table = [
        (0.5, 0.645_035_270_449_150_1),
        (2.0, 0.308_508_322_553_671_04),
        (7.3, 0.150_414_652_952_345_74),
        (14.9, 0.104_253_872_824_291_25),
        (15.1, 0.103_548_781_205_769_69),
        (25.0, 0.080_196_773_547_436_71),
        (60.0, 0.051_611_549_173_609_84),
    ];
    for (x, want) in table {
        let got = special::bessel_i0e(x);
        assert!(
            rel(got.value, want) < 1e-12,
            "i0e({x}) = {} vs {want}",
            got.value
        );
    }
}

#[test]
fn bessel_k_reference_sweep() {
    // scaled e^x K₀(x), e^x K₁(x) across the series/continued-fraction split
    let table = [
        (0.1, 2.682_326_102_262_894_3, 10.890_182_683_049_696),
        (0.5, 1.524_109_385_773_909_5, 2.731_009_708_211_785_7),
        (1.5, 0.958_210_053_294_896_5, 1.243_165_873_552_553),
        (1.99, 0.843_493_973_378_992_8, 1.036_739_606_760_863_3),
        (2.0, 0.841_568_215_070_771_4, 1.033_476_847_068_688_6),
        (2.01, 0.839_655_749_090_867_9, 1.030_242_874_335_603_4),
        (3.7, 0.632_218_059_198_740_7, 0.713_006_501_049_576_1),
        (7.9, 0.439_300_081_900_215_2, 0.466_317_784_736_879_9),
        (13.3, 0.340_561_114_258_345_93, 0.353_139_753_503_829_4),
    ];
    for (x, want_k0e, want_k1e) in table {
        let (k0e, k1e) = special::bessel_k0e_k1e(x).unwrap();
        assert!(
            rel(k0e.value, want_k0e) < 2e-13,
            "k0e({x}) = {} vs {want_k0e}",
            k0e.value
        );
        assert!(
            rel(k1e.value, want_k1e) < 2e-13,
            "k1e({x}) = {} vs {want_k1e}",
            k1e.value
        );
    }
}

#[test]
fn kummer_reference_sweep() {
    let table: [(f64, f64); 6] = [
        (0.3, 0.844_079_991_210_040_02),
        (1.0, 0.425_195_826_890_405_48),
        (1.58, -3.497_436_619_949_795e-5),
        (3.0, -1.561_631_531_928_566_9),
        (7.5, -39.248_398_951_922_37),
        (16.0, -46_179.651_673_783_99),
    ];
    for (xi, want) in table {
        let got = special::kummer_m(-0.5, 1.0, xi).unwrap();
        let tol = if xi == 1.58 { 1e-10 } else { 1e-13 };
        let err = if want.abs() > 1e-3 {
            rel(got.value, want)
        } else {
            (got.value - want).abs()
        };
        assert!(err < tol, "M(-1/2,1,{xi}) = {} vs {want}", got.value);
    }
}

#[test]
fn tricomi_reference_sweep() {
    let table = [
        (0.2, 0.009_076_584_640_888_082),
        (0.5, 0.399_438_148_717_619_1),
        (1.0, 0.770_403_614_970_443_4),
        (2.0, 1.245_947_828_226_094_6),
        (5.0, 2.126_731_501_923_226_3),
        (12.0, 3.392_642_735_568_251_3),
        (100.0, 9.975_031_019_200_292),
    ];
    for (xi, want) in table {
        let got = special::tricomi_u_half(xi).unwrap();
        assert!(
            rel(got.value, want) < 1e-12,
            "U(-1/2,1,{xi}) = {} vs {want}",
            got.value
        );
    }
}

#[test]
fn quadrature_area_reference_values() {
    let s = QuadratureSpec::default();
    // ellipsoid
    let e = measure::area(&Piece::Ellipsoid { a: 4.0, b: 0.5 }, &s).unwrap();
    assert!(
        rel(e.value, 1.883_556_383_892_664) < 1e-10,
        "|E(4,0.5)| = {}",
        e.value
    );
    // finite slanted cone
    let c = measure::area(
        &Piece::DoubledCone {
            r_inner: 1.0,
            r_outer: 2.0,
            offset: 0.0,
            inclination: std::f64::consts::FRAC_PI_4,
        },
        &s,
    )
    .unwrap();
    assert!(
        rel(c.value, 1.074_322_636_370_488_9) < 1e-10,
        "|C(1,2,π/4)| = {}",
        c.value
    );
    // single-sheet capped graph
    let z = measure::area(
        &Piece::CappedGraph {
            height: 0.5,
            a: 3.0,
            b: 2.0,
            sheets: 1,
        },
        &s,
    )
    .unwrap();
    assert!(
        rel(z.value, 0.673_215_831_578_317) < 1e-10,
        "|z+(0.5,3,2)| = {}",
        z.value
    );
}
