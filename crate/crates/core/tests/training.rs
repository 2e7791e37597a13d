//! Training behaviour: convergence on a known-linear task, degenerate
//! hyperparameters, determinism and early stopping.

use durhybrid::features::InputVector;
use durhybrid::model::{evaluate, init_network, train, ModelError, ModelMeta};
use durhybrid::{
    build_dataset, build_layout, compute_phone_stats, generate_synthetic_corpus, Dataset, Hyperparams, LayoutConfig,
    Network, PhoneInventory, RuleSet, SyntheticSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FP: &str = "linear-task";

/// Targets are an exact linear function of sparse binary inputs.
fn linear_task(n: usize, width: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coef: Vec<f64> = (0..width).map(|_| rng.gen_range(-0.5..0.5)).collect();
    let mut inputs = Vec::new();
    let mut targets = Vec::new();
    for i in 0..n {
        let values: Vec<f64> = (0..width).map(|_| f64::from(u8::from(rng.gen_bool(0.3)))).collect();
        targets.push(0.2 + values.iter().zip(&coef).map(|(x, c)| x * c).sum::<f64>());
        inputs.push(InputVector {
            values,
            utterance: format!("u{i}"),
            center: 0,
            layout_fingerprint: FP.into(),
        });
    }
    Dataset {
        layout_fingerprint: FP.into(),
        inputs,
        targets,
    }
}

fn net(width: usize, seed: u64) -> Network {
    let meta = ModelMeta {
        layout_fingerprint: FP.into(),
        ..ModelMeta::default()
    };
    Network::random(width, &[8], seed, meta).unwrap()
}

#[test]
fn learns_linear_task_below_one_percent() {
    let data = linear_task(400, 20, 1);
    let (trained, report) = train(net(20, 2), &data, &Hyperparams::default()).unwrap();
    let err = evaluate(&trained, &data).unwrap();
    assert!(err < 1.0, "final error {err}");
    assert_eq!(report.epochs_run(), 200);
    assert_eq!(report.final_train_error(), Some(err));
    assert!(report.train_error[0] > err);
}

#[test]
fn zero_epochs_returns_initial_network() {
    let data = linear_task(50, 10, 3);
    let start = net(10, 4);
    let hp = Hyperparams {
        epochs: 0,
        ..Hyperparams::default()
    };
    let (trained, report) = train(start.clone(), &data, &hp).unwrap();
    assert_eq!(trained, start);
    assert!(report.train_error.is_empty());
    assert_eq!(report.weights_fingerprint, start.weights_fingerprint());
}

#[test]
fn zero_learning_rate_leaves_weights_unchanged() {
    let data = linear_task(50, 10, 5);
    let start = net(10, 6);
    let hp = Hyperparams {
        learning_rate: 0.0,
        epochs: 5,
        ..Hyperparams::default()
    };
    let (trained, report) = train(start.clone(), &data, &hp).unwrap();
    assert_eq!(trained, start);
    let first = report.train_error[0];
    assert!(report.train_error.iter().all(|&e| e == first));
}

#[test]
fn same_seed_same_run() {
    let data = linear_task(120, 12, 7);
    let hp = Hyperparams {
        epochs: 15,
        seed: 9,
        ..Hyperparams::default()
    };
    let (a, ra) = train(net(12, 8), &data, &hp).unwrap();
    let (b, rb) = train(net(12, 8), &data, &hp).unwrap();
    assert_eq!(a, b);
    assert!(ra.same_run(&rb));

    let other = Hyperparams { seed: 10, ..hp };
    let (c, _) = train(net(12, 8), &data, &other).unwrap();
    assert_ne!(a, c, "the shuffling seed should matter");
}

#[test]
fn early_stopping_keeps_best_validation_weights() {
    // a noisy task so that validation error eventually turns upward
    let mut data = linear_task(120, 40, 11);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for t in &mut data.targets {
        *t += rng.gen_range(-0.4..0.4);
    }
    let hp = Hyperparams {
        epochs: 400,
        patience: Some(5),
        learning_rate: 0.05,
        ..Hyperparams::default()
    };
    let (trained, report) = train(net(40, 12), &data, &hp).unwrap();
    assert!(report.stopped_early, "{} epochs", report.epochs_run());
    assert_eq!(report.validation_error.len(), report.epochs_run());
    // validation slice is the dataset tail: ceil(0.1 * 120) = 12 rows
    let tail = Dataset {
        layout_fingerprint: FP.into(),
        inputs: data.inputs[108..].to_vec(),
        targets: data.targets[108..].to_vec(),
    };
    let best = report.validation_error.iter().copied().fold(f64::INFINITY, f64::min);
    assert!((evaluate(&trained, &tail).unwrap() - best).abs() < 1e-9);
}

#[test]
fn invalid_inputs_rejected() {
    let data = linear_task(10, 5, 13);
    assert!(matches!(
        train(net(6, 1), &data, &Hyperparams::default()),
        Err(ModelError::WidthMismatch { expected: 6, found: 5, .. })
    ));
    let empty = Dataset {
        layout_fingerprint: FP.into(),
        inputs: vec![],
        targets: vec![],
    };
    assert_eq!(train(net(5, 1), &empty, &Hyperparams::default()).unwrap_err(), ModelError::EmptyDataset);
    for hp in [
        Hyperparams { batch_size: 0, ..Hyperparams::default() },
        Hyperparams { momentum: 1.0, ..Hyperparams::default() },
        Hyperparams { learning_rate: -0.1, ..Hyperparams::default() },
        Hyperparams { patience: Some(0), ..Hyperparams::default() },
    ] {
        assert!(matches!(train(net(5, 1), &data, &hp), Err(ModelError::Hyperparams(_))), "{hp:?}");
    }
}

#[test]
fn huge_learning_rate_reports_divergence() {
    let data = linear_task(100, 10, 14);
    let hp = Hyperparams {
        learning_rate: 1e6,
        ..Hyperparams::default()
    };
    match train(net(10, 1), &data, &hp) {
        Err(ModelError::Diverged { .. }) => {}
        // tanh saturation can keep the loss finite; it must then still be finite
        Ok((n, _)) => assert!(evaluate(&n, &data).unwrap().is_finite()),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn wider_window_fits_small_training_set_more_closely() {
    let inv = PhoneInventory::timit();
    let rules = RuleSet::default_klatt();
    let synth = generate_synthetic_corpus(
        &SyntheticSpec {
            utterances: 25,
            seed: 21,
            ..SyntheticSpec::default()
        },
        &inv,
    )
    .unwrap();
    let stats = compute_phone_stats(&synth.corpus).unwrap();
    let hp = Hyperparams {
        epochs: 80,
        ..Hyperparams::default()
    };
    let err = |window| {
        let layout = build_layout(
            &LayoutConfig {
                window,
                ..LayoutConfig::default()
            },
            &inv,
        )
        .unwrap();
        let data = build_dataset(&synth.corpus, &layout, &stats, Some(&rules)).unwrap();
        let (n, _) = train(init_network(&layout, &[20], 1).unwrap(), &data, &hp).unwrap();
        evaluate(&n, &data).unwrap()
    };
    assert!(err(7) < err(1));
}
