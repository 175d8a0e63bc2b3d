use proptest::prelude::*;
use trivertex::resistor::{
    delta_to_y, power_ratio_system, y_power, y_to_delta, LegCurrents, YNetwork,
};
use trivertex::selfenergy::{bubble, sequential_composition_check};
use trivertex::vertex::OmegaParam;

fn resistance() -> impl Strategy<Value = f64> {
    (-3.0f64..3.0).prop_map(|e| 10f64.powf(e))
}

fn nonzero() -> impl Strategy<Value = f64> {
    prop_oneof![-5.0f64..-0.01, 0.01f64..5.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn star_triangle_round_trip(r1 in resistance(), r2 in resistance(), r3 in resistance()) {
        let y = YNetwork::new(r1, r2, r3).unwrap();
        let b = delta_to_y(y_to_delta(y).unwrap()).unwrap();
        for (u, v) in [(b.r1, r1), (b.r2, r2), (b.r3, r3)] {
            prop_assert!(((u - v) / v).abs() <= 1e-12);
        }
    }

    #[test]
    fn ratio_identity(p in nonzero(), q in nonzero()) {
        let i = LegCurrents::conserved(p, q);
        prop_assume!(i.r != 0.0);
        let s = power_ratio_system(i).unwrap();
        prop_assert!((s.y * s.z / s.x - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn power_is_positive_and_quadratic(
        r1 in resistance(), r2 in resistance(), r3 in resistance(),
        p in nonzero(), q in nonzero(), lambda in 0.1f64..10.0,
    ) {
        let y = YNetwork::new(r1, r2, r3).unwrap();
        let i = LegCurrents::conserved(p, q);
        let w = y_power(y, i).unwrap();
        prop_assert!(w > 0.0);
        let w2 = y_power(y, i.scaled(lambda)).unwrap();
        prop_assert!((w2 / (lambda * lambda * w) - 1.0).abs() <= 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bubble_is_symmetric(a in 0.3f64..1.7, b in 0.3f64..1.7, w in 1.6f64..2.9) {
        let om = OmegaParam::new(w).unwrap();
        if let (Ok(u), Ok(v)) = (bubble(a, b, om), bubble(b, a, om)) {
            prop_assert!((u - v).abs() <= 1e-14 * u.abs());
        }
    }

    #[test]
    fn composition_holds_off_the_sample_grid(w in 1.55f64..2.95, a in 1u32..=2) {
        let om = OmegaParam::new(w).unwrap();
        if let Ok(r) = sequential_composition_check(a, om) {
            prop_assert!(r.agrees(1e-12), "{r:?}");
        }
    }
}
