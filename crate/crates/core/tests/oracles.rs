mod common;

use common::{brute_force, completable_to_hamiltonian, hamiltonian_by_permutations, random_capped, random_play};
use degree_game::oracle::{articulation_points, hamilton_cycle, is_hamilton_cycle, is_two_connected, solve, Objective, Side};
use degree_game::{has_witness, GameGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const OBJECTIVES: [Objective; 3] = [Objective::ForceHamiltonian, Objective::AvoidHamiltonian, Objective::AvoidTwoConnected];

#[test]
fn solver_matches_brute_force_midgame() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..150 {
        let n = rng.gen_range(3..=6);
        let k = rng.gen_range(2..=4);
        let moves = rng.gen_range(0..=n);
        let g = random_play(n, k, moves, &mut rng);
        for objective in OBJECTIVES {
            for side in [Side::Pursuer, Side::Opponent] {
                let r = solve(&g, side, objective).unwrap();
                assert_eq!(r.pursuer_wins, brute_force(&g, side, objective), "{:?} {side:?} {objective:?}", g.to_json());
                assert_eq!(r.mover_wins, r.pursuer_wins == (side == Side::Pursuer));
            }
        }
    }
}

#[test]
fn principal_move_achieves_the_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let n = rng.gen_range(3..=6);
        let g = random_play(n, 3, rng.gen_range(0..3), &mut rng);
        let side = if rng.gen() { Side::Pursuer } else { Side::Opponent };
        let r = solve(&g, side, Objective::ForceHamiltonian).unwrap();
        if let Some(m) = r.principal_move {
            let child = g.with_edge(m).unwrap();
            let after = solve(&child, side.flip(), Objective::ForceHamiltonian).unwrap();
            assert_eq!(after.pursuer_wins, r.pursuer_wins);
        }
    }
}

#[test]
fn solver_ignores_vertex_names() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..80 {
        let n = rng.gen_range(3..=7);
        let k = rng.gen_range(2..=3);
        let g = random_play(n, k, rng.gen_range(0..=n), &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.relabel(&perm);
        for side in [Side::Pursuer, Side::Opponent] {
            let a = solve(&g, side, Objective::AvoidTwoConnected).unwrap();
            let b = solve(&h, side, Objective::AvoidTwoConnected).unwrap();
            assert_eq!(a.pursuer_wins, b.pursuer_wins);
        }
    }
}

#[test]
fn hamilton_search_matches_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut yes = 0;
    for _ in 0..3000 {
        let n = rng.gen_range(1..=8);
        let k = rng.gen_range(2..=5);
        let g = random_capped(n, k, rng.gen_range(0.3..1.0), &mut rng);
        let expect = hamiltonian_by_permutations(&g);
        let got = hamilton_cycle(&g);
        assert_eq!(got.is_some(), expect, "{:?}", g.to_json());
        if let Some(c) = got {
            assert!(is_hamilton_cycle(&g, &c));
            yes += 1;
        }
    }
    assert!(yes > 300, "too few Hamiltonian samples: {yes}");
}

/// Counts every component, isolated vertices included.
fn count_components(g: &GameGraph) -> usize {
    let ids = g.component_ids();
    ids.iter().copied().max().map_or(0, |m| m + 1)
}

fn components_without(g: &GameGraph, x: usize) -> usize {
    let keep: Vec<usize> = g.vertices().filter(|&v| v != x).collect();
    count_components(&g.induced(&keep))
}

#[test]
fn cut_vertices_match_deletion() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=10);
        let g = random_capped(n, 4, rng.gen_range(0.1..0.8), &mut rng);
        let base = count_components(&g);
        let expect: Vec<usize> = g.vertices().filter(|&x| g.degree(x) > 0 && components_without(&g, x) > base).collect();
        assert_eq!(articulation_points(&g), expect, "{:?}", g.to_json());
        let two = n >= 3 && g.is_connected() && expect.is_empty();
        assert_eq!(is_two_connected(&g), two);
    }
}

#[test]
fn witnessed_positions_cannot_be_completed() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let (mut fired, mut open) = (0, 0);
    for _ in 0..3000 {
        let n = rng.gen_range(4..=8);
        let g = random_play(n, 3, rng.gen_range(0..=12), &mut rng);
        match has_witness(&g) {
            Some(w) => {
                fired += 1;
                assert!(!completable_to_hamiltonian(&g), "{w} on {:?}", g.to_json());
            }
            None if completable_to_hamiltonian(&g) => open += 1,
            None => {}
        }
    }
    assert!(fired > 100 && open > 100, "fired {fired}, open {open}");
}
