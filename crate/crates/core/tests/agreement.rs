//! Fast solvers against the exhaustive oracle on generated instances.

use plycover::format::{Instance, Kind};
use plycover::generate::{generate, Distribution, GenConfig};
use plycover::geom::{disks_disjoint, ply_disks, ply_rects, verify_cover};
use plycover::interval::{solve_intervals, Mode};
use plycover::oracle::{exact_3color_cover, exact_intervals, exact_min_ply_disks, exact_min_ply_rects};
use plycover::slab::{solve_mpc_disks, solve_mpc_rects};
use plycover::tricolor::solve_3color;
use plycover::{Rational, SolveError, DEFAULT_EPS};

fn instance(kind: Kind, n: usize, m: usize, seed: u64, uncovered: bool) -> Instance {
    let distribution = if seed.is_multiple_of(2) { Distribution::Uniform } else { Distribution::Clustered };
    let cfg = GenConfig { kind, n, m, distribution, seed, allow_uncovered: uncovered };
    generate(&cfg).unwrap().instance
}

#[test]
fn intervals_match_oracle() {
    for seed in 0..150u64 {
        let m = 1 + (seed as usize * 7) % 12;
        let n = 1 + (seed as usize * 5) % 25;
        let Instance::Intervals { points, objects } = instance(Kind::Intervals, n, m, seed, seed % 10 == 9) else {
            unreachable!()
        };
        for mode in [Mode::Mmsc, Mode::Mpc] {
            let fast = solve_intervals(&points, &objects, mode);
            let slow = exact_intervals(&points, &objects, mode);
            match (fast, slow) {
                (Ok(f), Ok((opt, _))) => {
                    assert_eq!(f.objective, opt, "seed {seed} {mode:?}");
                    let chosen: Vec<_> = f.chosen.iter().map(|&i| objects[i].clone()).collect();
                    assert!(verify_cover(&points, &chosen, 0.0));
                }
                (Err(SolveError::Infeasible { .. }), Err(SolveError::Infeasible { .. })) => {}
                (f, s) => panic!("seed {seed} {mode:?}: {f:?} vs {s:?}"),
            }
        }
    }
}

#[test]
fn rects_within_twice_optimum() {
    for seed in 0..80u64 {
        let m = 1 + (seed as usize * 7) % 12;
        let n = 1 + (seed as usize * 3) % 20;
        let Instance::Rects { points, objects } = instance(Kind::Rects, n, m, seed, false) else { unreachable!() };
        let sol = solve_mpc_rects(&points, &objects, None).unwrap();
        let (opt, _) = exact_min_ply_rects(&points, &objects).unwrap();
        let chosen: Vec<_> = sol.chosen.iter().map(|&i| objects[i].clone()).collect();
        assert!(verify_cover(&points, &chosen, 0.0));
        let ply = ply_rects(&chosen);
        assert_eq!(sol.objective, Rational::from_integer(ply.into()));
        assert!(ply <= 2 * opt, "seed {seed}: {ply} > 2 * {opt}");
        assert!(sol.ell.unwrap() <= opt, "seed {seed}");
    }
}

#[test]
fn disks_within_twice_optimum() {
    for seed in 0..60u64 {
        let m = 1 + (seed as usize * 7) % 10;
        let n = 1 + (seed as usize * 3) % 20;
        let Instance::Disks { points, objects } = instance(Kind::Disks, n, m, seed, false) else { unreachable!() };
        let sol = solve_mpc_disks(&points, &objects, None, DEFAULT_EPS).unwrap();
        let (opt, _) = exact_min_ply_disks(&points, &objects, DEFAULT_EPS).unwrap();
        let chosen: Vec<_> = sol.chosen.iter().map(|&i| objects[i]).collect();
        assert!(verify_cover(&points, &chosen, DEFAULT_EPS));
        let ply = ply_disks(&chosen, DEFAULT_EPS);
        assert!(ply <= 2 * opt, "seed {seed}: {ply} > 2 * {opt}");
        assert!(sol.ell.unwrap() <= opt, "seed {seed}");
    }
}

#[test]
fn three_color_agrees_with_oracle() {
    let mut mismatches = Vec::new();
    for seed in 0..100u64 {
        let m = 1 + (seed as usize * 7) % 8;
        let n = 1 + (seed as usize * 3) % 12;
        let Instance::Disks { points, objects } = instance(Kind::Disks, n, m, seed, false) else { unreachable!() };
        let fast = solve_3color(&points, &objects, DEFAULT_EPS);
        let slow = exact_3color_cover(&points, &objects, DEFAULT_EPS).unwrap();
        if let Ok(sol) = &fast {
            let colors = sol.colors.as_ref().unwrap();
            for a in 0..sol.chosen.len() {
                for b in a + 1..sol.chosen.len() {
                    if colors[a] == colors[b] {
                        assert!(disks_disjoint(&objects[sol.chosen[a]], &objects[sol.chosen[b]], DEFAULT_EPS));
                    }
                }
            }
        }
        if fast.is_err() != slow.is_none() {
            mismatches.push(seed);
        }
    }
    assert!(mismatches.is_empty(), "{mismatches:?}");
}
