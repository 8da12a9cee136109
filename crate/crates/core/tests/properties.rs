use proptest::prelude::*;

use plycover::format::{parse_instance, parse_solution, write_instance, write_solution, Instance, InstanceFile, SolutionFile, SolutionKind};
use plycover::geom::{ply_rects, verify_cover};
use plycover::interval::{bottleneck_path, build_dag, prepare_instance, IntervalDag, Mode};
use plycover::oracle::{exact_min_ply_disks, exact_min_ply_rects, full_min_ply_disks, full_min_ply_rects};
use plycover::slab::{solve_mpc_disks, solve_mpc_rects};
use plycover::{FloatPoint, Point, Rational, SolveError, UnitDisk, UnitRect, WeightedInterval, DEFAULT_EPS};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rect_instance() -> impl Strategy<Value = (Vec<Point>, Vec<UnitRect>)> {
    let rects = prop::collection::vec((0i64..12, 0i64..12), 1..8)
        .prop_map(|v| v.into_iter().map(|(x, y)| UnitRect::square(q(x, 4), q(y, 4))).collect::<Vec<_>>());
    rects.prop_flat_map(|rects| {
        let m = rects.len();
        let pts = prop::collection::vec((0..m, 0i64..=4, 0i64..=4), 0..10).prop_map(move |v| v);
        (Just(rects), pts)
    })
    .prop_map(|(rects, picks)| {
        // every point sits in some square so the instance is feasible
        let points = picks
            .into_iter()
            .map(|(i, dx, dy)| Point::new(&rects[i].left + q(dx, 4), &rects[i].bottom + q(dy, 4)))
            .collect();
        (points, rects)
    })
}

fn disk_instance() -> impl Strategy<Value = (Vec<FloatPoint>, Vec<UnitDisk>)> {
    let disks = prop::collection::vec((0.0f64..3.0, 0.0f64..3.0), 1..8)
        .prop_map(|v| v.into_iter().map(|(x, y)| UnitDisk::new(x, y).unwrap()).collect::<Vec<_>>());
    disks
        .prop_flat_map(|disks| {
            let m = disks.len();
            (Just(disks), prop::collection::vec((0..m, 0.0f64..std::f64::consts::TAU, 0.0f64..0.45), 0..10))
        })
        .prop_map(|(disks, picks)| {
            let points = picks
                .into_iter()
                .map(|(i, a, r)| FloatPoint::new(disks[i].center.x + r * a.cos(), disks[i].center.y + r * a.sin()))
                .collect();
            (points, disks)
        })
}

fn interval_instance() -> impl Strategy<Value = (Vec<Rational>, Vec<WeightedInterval>)> {
    let intervals = prop::collection::vec((0i64..20, 1i64..8, 1i64..5), 1..8).prop_map(|v| {
        v.into_iter()
            .map(|(lo, len, w)| WeightedInterval::new(q(lo, 2), q(lo + len, 2), q(w, 1)).unwrap())
            .collect::<Vec<_>>()
    })
    .prop_map(|mut v| {
        v.sort_by(|a, b| a.hi().cmp(b.hi()));
        v
    });
    let points = prop::collection::btree_set(0i64..28, 0..8).prop_map(|s| s.into_iter().map(|x| q(x, 2)).collect());
    (points, intervals)
}

/// Smallest bottleneck over every source-to-sink path, by explicit enumeration.
fn brute_bottleneck(dag: &IntervalDag) -> Option<Rational> {
    fn walk(dag: &IntervalDag, v: usize, acc: Rational, best: &mut Option<Rational>) {
        let acc = acc.max(dag.vertices[v].weight.clone());
        if v == dag.sink {
            if best.as_ref().is_none_or(|b| acc < *b) {
                *best = Some(acc);
            }
            return;
        }
        for &w in &dag.edges[v] {
            walk(dag, w, acc.clone(), best);
        }
    }
    let mut best = None;
    walk(dag, dag.source, dag.vertices[dag.source].weight.clone(), &mut best);
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rect_files_round_trip((points, objects) in rect_instance(), seed in prop::option::of(any::<u64>())) {
        let file = InstanceFile { seed, meta: None, instance: Instance::Rects { points, objects } };
        let text = write_instance(&file);
        prop_assert_eq!(parse_instance(&text).unwrap(), file);
    }

    #[test]
    fn disk_files_round_trip((points, objects) in disk_instance()) {
        let file = InstanceFile { seed: None, meta: Some(serde_json::json!({"note": "x"})), instance: Instance::Disks { points, objects } };
        let text = write_instance(&file);
        prop_assert_eq!(parse_instance(&text).unwrap(), file);
    }

    #[test]
    fn interval_files_round_trip((points, objects) in interval_instance()) {
        let file = InstanceFile { seed: Some(7), meta: None, instance: Instance::Intervals { points, objects } };
        let text = write_instance(&file);
        prop_assert_eq!(parse_instance(&text).unwrap(), file);
    }

    #[test]
    fn solution_files_round_trip(chosen in prop::collection::vec(0usize..100, 0..10), ell in prop::option::of(0usize..9), num in 0i64..50, den in 1i64..7) {
        let sol = SolutionFile {
            kind: SolutionKind::Intervals,
            mode: Mode::Mmsc,
            chosen,
            objective: q(num, den).to_string(),
            colors: None,
            ell,
            wallclock_ms: None,
        };
        prop_assert_eq!(parse_solution(&write_solution(&sol)).unwrap(), sol);
    }

    #[test]
    fn pruned_oracle_matches_enumeration_rects((points, objects) in rect_instance()) {
        let pruned = exact_min_ply_rects(&points, &objects).unwrap();
        let full = full_min_ply_rects(&points, &objects).unwrap();
        prop_assert_eq!(pruned.0, full.0);
        let chosen: Vec<_> = pruned.1.iter().map(|&i| objects[i].clone()).collect();
        prop_assert!(verify_cover(&points, &chosen, 0.0));
        prop_assert_eq!(ply_rects(&chosen), pruned.0);
    }

    #[test]
    fn pruned_oracle_matches_enumeration_disks((points, objects) in disk_instance()) {
        let pruned = exact_min_ply_disks(&points, &objects, DEFAULT_EPS).unwrap();
        let full = full_min_ply_disks(&points, &objects, DEFAULT_EPS).unwrap();
        prop_assert_eq!(pruned.0, full.0);
    }

    #[test]
    fn dag_bottleneck_matches_path_enumeration((points, objects) in interval_instance(), mpc in any::<bool>()) {
        let mode = if mpc { Mode::Mpc } else { Mode::Mmsc };
        let prep = prepare_instance(&points, &objects).unwrap();
        let dag = build_dag(&prep, mode);
        let fast = bottleneck_path(&dag);
        let slow = brute_bottleneck(&dag);
        prop_assert_eq!(fast.as_ref().map(|(_, v)| v.clone()), slow);
        if let Some((path, _)) = fast {
            prop_assert_eq!(path[0], dag.source);
            prop_assert_eq!(*path.last().unwrap(), dag.sink);
            prop_assert!(path.windows(2).all(|w| dag.edges[w[0]].contains(&w[1])));
        }
    }

    #[test]
    fn transposed_rects_keep_guarantee((points, objects) in rect_instance()) {
        let swap_p: Vec<Point> = points.iter().map(|p| Point::new(p.y.clone(), p.x.clone())).collect();
        let swap_r: Vec<UnitRect> = objects.iter().map(|r| UnitRect::square(r.bottom.clone(), r.left.clone())).collect();
        let opt = exact_min_ply_rects(&points, &objects).unwrap().0;
        prop_assert_eq!(exact_min_ply_rects(&swap_p, &swap_r).unwrap().0, opt);
        for (p, r) in [(&points, &objects), (&swap_p, &swap_r)] {
            let sol = solve_mpc_rects(p, r, None).unwrap();
            let chosen: Vec<_> = sol.chosen.iter().map(|&i| r[i].clone()).collect();
            prop_assert!(verify_cover(p, &chosen, 0.0));
            prop_assert!(ply_rects(&chosen) <= 2 * opt);
        }
    }

    #[test]
    fn rotated_disks_keep_guarantee((points, objects) in disk_instance(), turns in 0u32..4) {
        let turn = |x: f64, y: f64| (0..turns).fold((x, y), |(x, y), _| (-y, x));
        let rot_p: Vec<FloatPoint> = points.iter().map(|p| { let (x, y) = turn(p.x, p.y); FloatPoint::new(x, y) }).collect();
        let rot_d: Vec<UnitDisk> = objects.iter().map(|d| { let (x, y) = turn(d.center.x, d.center.y); UnitDisk::new(x, y).unwrap() }).collect();
        let opt = exact_min_ply_disks(&points, &objects, DEFAULT_EPS).unwrap().0;
        prop_assert_eq!(exact_min_ply_disks(&rot_p, &rot_d, DEFAULT_EPS).unwrap().0, opt);
        match solve_mpc_disks(&rot_p, &rot_d, None, DEFAULT_EPS) {
            Ok(sol) => {
                let chosen: Vec<_> = sol.chosen.iter().map(|&i| rot_d[i]).collect();
                prop_assert!(verify_cover(&rot_p, &chosen, DEFAULT_EPS));
                prop_assert!(sol.objective <= Rational::from_integer((2 * opt).into()));
            }
            Err(SolveError::DegenerateInstance { .. }) => {}
            Err(e) => prop_assert!(false, "{e:?}"),
        }
    }
}
