use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spindle_core::body::sample_uniform;
use spindle_core::dual::{circumscribed_sample, disc_intersection, r_dual};
use spindle_core::mc::{read_csv, run_experiment, to_csv_string, variance_slope, StatField};
use spindle_core::{mc, r_hull, r_hull_oracle, BodySpec, ConvexBody, ExperimentConfig, Model};

#[test]
fn body_specs_round_trip() {
    for text in ["disc:1", "ellipse:0.6,0.5", "cw:1,0.03"] {
        let spec: BodySpec = text.parse().unwrap();
        assert_eq!(spec.to_string(), text);
        let body = spec.build().unwrap();
        assert!(body.area().unwrap() > 0.0);
    }
}

#[test]
fn hull_of_sample_lies_in_body() {
    let body = ConvexBody::ellipse(0.6, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pts = sample_uniform(&body, &mut rng, 500);
    let hull = r_hull(&pts, 1.0).unwrap();
    assert_eq!(hull.vertices(), r_hull_oracle(&pts, 1.0).unwrap().vertices());
    assert!(hull.area().unwrap() < body.area().unwrap());
    for p in &pts {
        assert!(hull.contains(*p, 1e-9).unwrap());
    }
}

#[test]
fn intersection_of_dual_sample_circumscribes_body() {
    let body = ConvexBody::constant_width(1.0, 0.03).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (inter, obs) = circumscribed_sample(&body, 1.0, 300, &mut rng).unwrap();
    assert_eq!(obs.f0, obs.f0_direct);
    assert_eq!(inter.f0(), obs.f0);
    assert!(obs.area_diff > 0.0 && obs.perim_diff > 0.0);
    for k in 0..64 {
        let p = body.boundary_point(k as f64 * 0.098);
        assert!(inter.contains(p, 1e-9));
    }
    let single = disc_intersection(&[spindle_core::Point2::new(0.0, 0.0)], 1.0).unwrap();
    assert!((single.area().unwrap() - std::f64::consts::PI).abs() < 1e-12);
    let dual = r_dual(&body, 1.0).unwrap();
    assert!(dual.body().area().unwrap() > 0.0);
}

#[test]
fn experiment_csv_round_trip_and_slope() {
    let config = ExperimentConfig::new(
        "disc:1".parse().unwrap(),
        1.0,
        Model::Circle,
        vec![10, 32, 100, 316, 1000],
        64,
        77,
    );
    let rows = run_experiment(&config).unwrap();
    let text = to_csv_string(&mc::metadata(&config), &rows).unwrap();
    let back = read_csv(text.as_bytes()).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in back.iter().zip(&rows) {
        assert_eq!(a.mean_f0, b.mean_f0);
        assert_eq!(a.var_missed, b.var_missed);
    }
    let fit = variance_slope(&back, StatField::MeanMissed).unwrap();
    assert!((fit.slope + 1.0).abs() < 0.25, "{}", fit.slope);
}
