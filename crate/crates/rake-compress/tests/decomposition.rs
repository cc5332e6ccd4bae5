use graph_core::{generate, Forest, TreeKind};
use mpc_sim::MpcConfig;
use proptest::prelude::*;
use rake_compress::*;

const L: usize = 4;

fn path(n: usize) -> Forest {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Forest::with_sequential_ids(n, &edges, 3).unwrap()
}

fn corpus() -> Vec<Forest> {
    let mut out = Vec::new();
    for kind in TreeKind::ALL {
        for n in [1, 2, 3, 5, 8, 16, 33, 100, 257, 1000, 4096] {
            for seed in 0..2 {
                if let Ok(f) = generate(kind, n, 3, seed) {
                    out.push(f);
                }
            }
        }
    }
    out
}

fn phase_bound(n: usize, delta: f64) -> usize {
    let x = delta * (n.max(2) as f64).log2();
    (x.log2().ceil().max(0.0) as usize) + (1.0 / delta).ceil() as usize + 3
}

/// Components of `V − I` along a path, computed by cutting at chosen positions.
fn brute_valid(k: usize, chosen: &[bool], alpha: usize, beta: usize) -> bool {
    if k < alpha {
        return !chosen.contains(&true);
    }
    let mut sizes = Vec::new();
    let mut run = 0;
    for p in 0..k {
        if chosen[p] {
            if p == 0 || p == k - 1 || chosen[p - 1] {
                return false;
            }
            sizes.push(run);
            run = 0;
        } else {
            run += 1;
        }
    }
    sizes.push(run);
    sizes.iter().all(|&s| s >= alpha && s <= beta)
}

#[test]
fn validator_matches_brute_force_on_nine_nodes() {
    let path: Vec<usize> = (1..=9).collect();
    let mut valid = 0;
    for mask in 0u32..1 << 9 {
        let chosen: Vec<bool> = (0..9).map(|p| mask >> p & 1 == 1).collect();
        let set: Vec<usize> = (0..9).filter(|&p| chosen[p]).map(|p| path[p]).collect();
        let ok = brute_valid(9, &chosen, 2, 4);
        assert_eq!(is_alpha_beta_independent(&path, &set, 2, 4), ok, "{set:?}");
        valid += usize::from(ok);
    }
    assert!(valid > 0);
    assert!(is_alpha_beta_independent(&path, &[3, 6], 2, 4));
}

#[test]
fn compress_path_of_length_l_stays_whole() {
    // The interior l nodes are compressed with an empty independent set; the
    // raked ends sit next to them and are promoted.
    let f = path(L + 2);
    let d = decompose_local(&f, L).decomposition;
    assert_eq!(d.paths(1), &[(1..=L).collect::<Vec<_>>()]);
    assert_eq!(d.layer(0), 2);
    assert!(d.is_promoted(0) && d.is_promoted(L + 1));
    d.validate(&f).unwrap();
}

#[test]
fn compress_path_of_length_3l_is_split() {
    let f = path(3 * L + 2);
    let d = decompose_local(&f, L).decomposition;
    assert!(d.paths(1).len() >= 2);
    for p in d.paths(1) {
        assert!((L..=2 * L).contains(&p.len()), "{p:?}");
    }
    d.validate(&f).unwrap();
}

#[test]
fn single_node_has_one_layer() {
    let f = path(1);
    let d = decompose(&f, &DecomposeParams::default(), &MpcConfig::default()).unwrap().decomposition;
    assert_eq!(d.layer_count(), 1);
    assert_eq!(d.layer_nodes(1), vec![0]);
}

#[test]
fn long_path_decomposes_in_few_phases() {
    let n = 1 << 10;
    let f = path(n);
    let config = MpcConfig::default();
    let out = decompose(&f, &DecomposeParams::default(), &config).unwrap();
    out.decomposition.validate(&f).unwrap();
    assert_eq!(out.decomposition, decompose_local(&f, L).decomposition);
    assert!(out.stats.phases() <= phase_bound(n, config.delta));
}

#[test]
fn every_iteration_removes_a_constant_fraction() {
    for f in corpus() {
        let local = decompose_local(&f, L);
        for w in local.residual_per_iteration.windows(2) {
            let removed = w[0] - w[1];
            assert!(removed * 2 * (L + 1) >= w[0], "{:?}", local.residual_per_iteration);
        }
        let d = &local.decomposition;
        d.validate(&f).unwrap();
        let log = (f.node_count().max(2) as f64).log2();
        assert!(d.layer_count() as f64 <= 2.0 * log + 2.0, "L = {}", d.layer_count());
    }
}

#[test]
fn mpc_matches_sequential_on_corpus() {
    let config = MpcConfig::default();
    for f in corpus() {
        let n = f.node_count();
        let out = decompose(&f, &DecomposeParams::default(), &config).unwrap();
        assert_eq!(out.decomposition, decompose_local(&f, L).decomposition);
        assert!(out.stats.phases() <= phase_bound(n, config.delta));
        let degree = f.max_degree().max(2) as f64;
        for (i, &left) in out.stats.residual_after_phase.iter().enumerate() {
            let bound = n as f64 / degree.powi(1 << (i + 1));
            assert!(left as f64 <= bound, "phase {}: {left} > {bound}", i + 1);
        }
    }
}

#[test]
fn batched_schedule_matches_sequential() {
    // One peel per phase leaves a residual graph, so the exponentiation and
    // ball-simulation paths run; memory is not the point here.
    let config = MpcConfig {
        c_local: 64,
        ..MpcConfig::default()
    };
    let params = DecomposeParams { l: L, repeats: Some(1) };
    for seed in 0..50 {
        let f = generate(TreeKind::RandomTree, 100 + 37 * seed as usize, 3, seed).unwrap();
        let out = decompose(&f, &params, &config).unwrap();
        assert_eq!(out.decomposition, decompose_local(&f, L).decomposition, "seed {seed}");
        if f.node_count() >= 1000 {
            assert!(out.stats.max_vision >= 4);
        }
    }
}

#[test]
fn reversed_evaluation_is_identical() {
    let f = generate(TreeKind::RandomTree, 2000, 3, 5).unwrap();
    let params = DecomposeParams { l: L, repeats: Some(1) };
    let forward = decompose(&f, &params, &MpcConfig::default()).unwrap();
    let config = MpcConfig {
        reverse_order: true,
        nondeterminism_check: true,
        ..MpcConfig::default()
    };
    let backward = decompose(&f, &params, &config).unwrap();
    assert_eq!(forward.decomposition, backward.decomposition);
    assert_eq!(forward.trace, backward.trace);
}

#[test]
fn text_round_trip() {
    let f = generate(TreeKind::RandomTree, 60, 3, 2).unwrap();
    let d = decompose_local(&f, L).decomposition;
    let text = d.to_text(&f);
    assert!(text.starts_with("DECOMP v1\nlayer "));
    assert_eq!(parse_layers(&text, &f).unwrap(), d.layers());
    validate_layers(&f, &parse_layers(&text, &f).unwrap(), L).unwrap();
    assert!(parse_layers("DECOMP v1\nlayer 1 0\n", &f).is_err());
}

#[test]
fn validator_rejects_broken_layers() {
    let f = path(5);
    assert!(matches!(validate_layers(&f, &[1, 1, 1, 1, 1], L), Err(DecompError::PathDegree { .. })));
    let star = Forest::with_sequential_ids(4, &[(0, 1), (0, 2), (0, 3)], 3).unwrap();
    assert!(matches!(validate_layers(&star, &[1, 2, 2, 2], L), Err(DecompError::Degree { .. })));
    validate_layers(&star, &[2, 1, 1, 1], L).unwrap();
    assert!(matches!(validate_layers(&f, &[1, 2, 2, 2, 1], L), Err(DecompError::PathLength { .. })));
    assert!(validate_layers(&f, &[1, 2, 3, 2, 1], L).is_ok());
}

proptest! {
    #[test]
    fn independent_sets_are_valid(
        len in 0usize..300,
        alpha in 1usize..7,
        extra in 0usize..5,
        seed in any::<u64>(),
    ) {
        let beta = 2 * alpha + extra;
        let mut ids: Vec<usize> = (0..len).collect();
        let mut state = seed | 1;
        for i in (1..len).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            ids.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let set = alpha_beta_independent_set(&ids, alpha, beta);
        prop_assert!(is_alpha_beta_independent(&ids, &set.members, alpha, beta));
    }

    #[test]
    fn peel_equals_sequential_iterations(seed in any::<u64>(), n in 1usize..200, layers in 1usize..6) {
        let f = generate(TreeKind::RandomTree, n, 3, seed).unwrap();
        let vision = layers * L;
        let out = peel(&f, &vec![true; n], 1, layers, vision, L).unwrap();
        let (tags, _) = sequential_tags(&f, L);
        for (tag, out) in tags.iter().zip(&out.tags) {
            let expected = (tag.iteration <= layers).then_some(*tag);
            prop_assert_eq!(*out, expected);
        }
        // Two half-size peels give the same tags as one.
        let half = peel(&f, &vec![true; n], 1, L, L, L).unwrap();
        let residual: Vec<bool> = half.tags.iter().map(Option::is_none).collect();
        let rest = peel(&f, &residual, L + 1, L, L, L).unwrap();
        let whole = peel(&f, &vec![true; n], 1, 2 * L, 2 * L, L).unwrap();
        for v in 0..n {
            prop_assert_eq!(whole.tags[v], half.tags[v].or(rest.tags[v]));
        }
    }
}
