//! Randomized invariants over generated instances.

use lipext::*;
use proptest::prelude::*;

fn norm_strategy() -> impl Strategy<Value = Norm64> {
    (1usize..=3, prop_oneof![Just(2.0), Just(1.5), Just(3.0)])
        .prop_map(|(dim, p)| Norm64::new(dim, p).unwrap())
}

fn space_strategy(max_n: usize) -> impl Strategy<Value = Space64> {
    (1usize..=max_n, any::<u64>(), any::<bool>()).prop_map(|(n, seed, euclid)| {
        let cfg = GenConfig::new(n, 1, seed);
        if euclid {
            gen_euclidean_space(&cfg).unwrap()
        } else {
            gen_random_metric(&cfg).unwrap()
        }
    })
}

#[derive(Debug, Clone)]
struct Instance {
    space: Space64,
    norm: Norm64,
    y: Point64,
}

/// Random member instances; by seed parity half of the points go through
/// the extreme-point generator instead, so both certificate branches see
/// traffic.
fn instance_strategy(max_n: usize) -> impl Strategy<Value = Instance> {
    (space_strategy(max_n), norm_strategy(), any::<u64>()).prop_map(|(space, norm, seed)| {
        let tol = Tolerance64::default();
        let y = if seed % 2 == 0 {
            gen_member(&space, &norm, seed).unwrap()
        } else {
            gen_extreme(&space, &norm, seed, &tol).unwrap().point
        };
        Instance { space, norm, y }
    })
}

fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, dim)
}

proptest! {
    #[test]
    fn norm_triangle_inequality(
        (x, y) in (1usize..=4).prop_flat_map(|d| (coords(d), coords(d))),
        p in prop_oneof![Just(2.0), 1.2..5.0f64],
    ) {
        let norm = Norm64::new(x.len(), p).unwrap();
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = norm.eval(&sum);
        let rhs = norm.eval(&x) + norm.eval(&y);
        prop_assert!(lhs <= rhs + 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn norm_homogeneity(
        x in (1usize..=4).prop_flat_map(coords),
        c in -5.0..5.0f64,
        p in prop_oneof![Just(2.0), 1.2..5.0f64],
    ) {
        let norm = Norm64::new(x.len(), p).unwrap();
        let scaled: Vec<f64> = x.iter().map(|a| c * a).collect();
        let lhs = norm.eval(&scaled);
        let rhs = c.abs() * norm.eval(&x);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn generated_spaces_pass_exact_validation(space in space_strategy(7)) {
        prop_assert!(Space64::new(space.matrix().to_vec()).is_ok());
    }

    #[test]
    fn members_have_constant_at_most_one(inst in instance_strategy(6)) {
        let tol = Tolerance64::default();
        let l = lipschitz_constant(&inst.y, &inst.space, &inst.norm).unwrap();
        prop_assert!(l <= 1.0 + 1e-9);
        prop_assert!(is_member(&inst.y, &inst.space, &inst.norm, 1.0, &tol).unwrap());
    }

    #[test]
    fn scaling_out_of_the_ball_is_detected(inst in instance_strategy(6)) {
        let tol = Tolerance64::default();
        let l = lipschitz_constant(&inst.y, &inst.space, &inst.norm).unwrap();
        prop_assume!(l > 1e-6);
        let min_dist = inst
            .space
            .pairs()
            .map(|(i, j)| inst.space.dist(i, j))
            .fold(f64::INFINITY, f64::min);
        prop_assume!(min_dist > 1e-6);
        let blown = inst.y.scale(2.0 / l);
        let l2 = lipschitz_constant(&blown, &inst.space, &inst.norm).unwrap();
        prop_assert!((l2 - 2.0).abs() < 1e-9);
        prop_assert!(!is_member(&blown, &inst.space, &inst.norm, 1.0, &tol).unwrap());
        prop_assert!(is_member(&blown, &inst.space, &inst.norm, 2.0, &tol).unwrap());
    }

    #[test]
    fn rescale_is_idempotent_and_feasible(inst in instance_strategy(5)) {
        let tol = Tolerance64::default();
        let blown = inst.y.scale(7.5);
        let once = rescale_into_ball(&blown, &inst.space, &inst.norm).unwrap();
        let twice = rescale_into_ball(&once, &inst.space, &inst.norm).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert!(is_member(&once, &inst.space, &inst.norm, 1.0, &tol).unwrap());
    }

    #[test]
    fn certificates_are_sound(inst in instance_strategy(6)) {
        let Instance { space, norm, y } = &inst;
        let tol = Tolerance64::default();
        match certify_extremality(y, space, norm, &tol).unwrap() {
            Certificate64::Extreme { parent } => {
                prop_assert_eq!(parent.len(), space.n());
                for i in 1..=space.n() {
                    // each tree edge is tight and parent chains reach node 0
                    let p = parent[i - 1];
                    let gap = (y.pair_norm(i, p, norm) - space.dist(i, p)).abs();
                    prop_assert!(gap <= 1e-9 * space.dist(i, p).max(1.0));
                    let mut node = i;
                    let mut hops = 0;
                    while node != 0 {
                        node = parent[node - 1];
                        hops += 1;
                        prop_assert!(hops <= space.n());
                    }
                }
            }
            Certificate64::NotExtreme { cut } => {
                prop_assert!(cut.epsilon() > 0.0);
                let e0 = Direction64::basis(0, norm.dim()).unwrap();
                let (plus, minus) = split_nonextreme(y, space, norm, &cut, &e0, &tol).unwrap();
                prop_assert!(is_member(&plus, space, norm, 1.0, &tol).unwrap());
                prop_assert!(is_member(&minus, space, norm, 1.0, &tol).unwrap());
                prop_assert!(&plus != y && &minus != y);
                for i in 0..space.n_nodes() {
                    for c in 0..norm.dim() {
                        let mid = 0.5 * (plus.value(i)[c] + minus.value(i)[c]);
                        prop_assert!((mid - y.value(i)[c]).abs() <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn connectivity_test_agrees_with_exhaustive_search(inst in instance_strategy(6)) {
        let Instance { space, norm, y } = &inst;
        let tol = Tolerance64::default();
        let cert = certify_extremality(y, space, norm, &tol).unwrap();
        let cut = cut_oracle_bruteforce(y, space, norm, &tol).unwrap();
        prop_assert_eq!(cert.is_extreme(), cut.is_none());
        if let Some(cut) = cut {
            prop_assert!(min_cut_slack(y, space, norm, cut.nodes()).unwrap() > 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn extreme_points_admit_no_proper_midpoint(
        space in space_strategy(5),
        dim in 1usize..=3,
        seed in any::<u64>(),
        raw in prop::collection::vec(-0.3..0.3f64, 6 * 3),
    ) {
        let norm = Norm64::new(dim, 2.0).unwrap();
        let tol = Tolerance64::default();
        let y = gen_extreme(&space, &norm, seed, &tol).unwrap().point;
        let mut delta = vec![vec![0.0; dim]; space.n_nodes()];
        let mut largest = 0.0f64;
        for i in 1..space.n_nodes() {
            for c in 0..dim {
                delta[i][c] = raw[(i - 1) * dim + c];
                largest = largest.max(delta[i][c].abs());
            }
        }
        prop_assume!(largest >= 1e-2);
        let shifted = |sign: f64| {
            let rows = y
                .values()
                .iter()
                .zip(&delta)
                .map(|(row, d)| row.iter().zip(d).map(|(&a, &b)| a + sign * b).collect())
                .collect();
            Point64::new(rows).unwrap()
        };
        let both_in = is_member(&shifted(1.0), &space, &norm, 1.0, &tol).unwrap()
            && is_member(&shifted(-1.0), &space, &norm, 1.0, &tol).unwrap();
        prop_assert!(!both_in);
    }

    #[test]
    fn interval_endpoints_are_tight_and_sharp(inst in instance_strategy(5), dirseed in any::<u64>()) {
        let Instance { space, norm, y } = &inst;
        let tol = Tolerance64::default();
        let cut = match certify_extremality(y, space, norm, &tol).unwrap() {
            Certificate64::NotExtreme { cut } => cut,
            Certificate64::Extreme { .. } => return Ok(()),
        };
        let v = pseudo_direction(norm, dirseed);
        let iv = feasible_interval(y, space, norm, &v, cut.nodes(), &tol).unwrap();
        prop_assert!(iv.t_min <= 0.0 && 0.0 <= iv.t_max);
        prop_assert!(iv.t_max > 0.0 && iv.t_min < 0.0);

        for (s, binding) in [(iv.t_max, iv.binding_max), (iv.t_min, iv.binding_min)] {
            let mut t = TVector::zero(space.n());
            let shifted = shift_nodes(&t, cut.nodes(), s).apply(y, &v).unwrap();
            prop_assert!(is_member(&shifted, space, norm, 1.0, &tol).unwrap());
            let (i, j) = binding;
            let gap = (shifted.pair_norm(i, j, norm) - space.dist(i, j)).abs();
            prop_assert!(gap <= 1e-9 * space.dist(i, j).max(1.0));

            // strictly beyond the endpoint some crossing pair exceeds its
            // exact bound, even if still inside the tolerance band
            let overshoot = s + s.signum() * 0.01;
            t = shift_nodes(&TVector::zero(space.n()), cut.nodes(), overshoot);
            let outside = t.apply(y, &v).unwrap();
            prop_assert!(min_cut_slack(&outside, space, norm, cut.nodes()).unwrap() < 0.0);
        }
    }

    #[test]
    fn push_makes_strict_progress(inst in instance_strategy(6), dirseed in any::<u64>()) {
        let Instance { space, norm, y } = &inst;
        let tol = Tolerance64::default();
        let v = pseudo_direction(norm, dirseed);
        let (atom, trace) = push_to_extreme_traced(y, space, norm, &v, &tol).unwrap();
        prop_assert!(trace.cut_sizes.len() <= space.n());
        prop_assert!(trace.cut_sizes.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(certify_extremality(&atom.point, space, norm, &tol)
            .unwrap()
            .is_extreme());
        prop_assert_eq!(&atom.t.apply(y, &v).unwrap(), &atom.point);
    }

    #[test]
    fn reduction_preserves_weight_and_moment(
        n in 1usize..=3,
        k in 5usize..=8,
        raw_t in prop::collection::vec(-1.0..1.0f64, 8 * 3),
        raw_w in prop::collection::vec(0.05..1.0f64, 8),
    ) {
        let tol = Tolerance64::default();
        let total: f64 = raw_w[..k].iter().sum();
        let weights: Vec<f64> = raw_w[..k].iter().map(|w| w / total).collect();
        let ts: Vec<TVector<f64>> = (0..k)
            .map(|a| {
                let mut coords = vec![0.0];
                coords.extend((0..n).map(|r| raw_t[a * 3 + r % 3]));
                TVector::new(coords).unwrap()
            })
            .collect();
        let kept = caratheodory_reduce(&ts, &weights, &tol).unwrap();
        prop_assert!(kept.len() <= n + 1);
        let sum: f64 = kept.iter().map(|&(_, w)| w).sum();
        prop_assert!((sum - 1.0).abs() <= 1e-8);
        for node in 1..=n {
            let before: f64 = weights.iter().zip(&ts).map(|(&w, t)| w * t.get(node)).sum();
            let after: f64 = kept.iter().map(|&(i, w)| w * ts[i].get(node)).sum();
            prop_assert!((before - after).abs() <= 1e-8);
        }
        for &(_, w) in &kept {
            prop_assert!(w > 0.0);
        }
    }

    #[test]
    fn decomposition_verifies_end_to_end(inst in instance_strategy(5), dirseed in any::<u64>()) {
        let Instance { space, norm, y } = &inst;
        let tol = Tolerance64::default();
        let v = pseudo_direction(norm, dirseed);
        let dec = decompose(y, space, norm, &v, &tol).unwrap();
        prop_assert!(dec.k() >= 1 && dec.k() <= space.n() + 1);
        prop_assert!(dec.reconstruction_error() <= 1e-8);
        let report = verify_decomposition(&dec.claim(), space, norm, &tol).unwrap();
        prop_assert!(report.ok(), "failing entries: {:?}",
            report.entries.iter().filter(|e| !e.ok).collect::<Vec<_>>());
    }
}

/// Deterministic direction from a seed: mixes the bits into coordinates
/// in [-1, 1), then normalizes. Crude but adequate spread for tests.
fn pseudo_direction(norm: &Norm64, seed: u64) -> Direction64 {
    let mut state = seed | 1;
    let coords: Vec<f64> = (0..norm.dim())
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        })
        .collect();
    Direction64::normalized(coords, norm)
        .unwrap_or_else(|_| Direction64::basis(0, norm.dim()).unwrap())
}

fn shift_nodes(t: &TVector<f64>, nodes: &[usize], s: f64) -> TVector<f64> {
    let mut coords = t.coords().to_vec();
    for &i in nodes {
        coords[i] += s;
    }
    TVector::new(coords).unwrap()
}
