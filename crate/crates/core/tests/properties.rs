mod common;

use chromodel::amalgamation::{ClassDescriptor, GrowthConfig, Grower};
use chromodel::cell::{
    analyze_cell, color_point, emit_clique, grid_sample, verify_point_clique, verify_point_coloring, CellSpec,
    CellVerdict, PlFunction,
};
use chromodel::coloring::{chromatic_number, max_clique, verify_coloring};
use chromodel::graph::{find_isomorphism, Graph};
use chromodel::mycielski::{mycielskian, mycielskian_direct};
use chromodel::predimension::{in_k_alpha, is_closed, Alpha, Closedness};
use chromodel::witnesses::{max_half_graph, max_shattered_set, verify_half_graph, verify_shatter};
use chromodel::VertexSet;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{brute_chromatic, brute_clique, brute_in_k_alpha, brute_strictly_closed};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

fn alpha() -> impl Strategy<Value = Alpha> {
    (1u64..=6).prop_flat_map(|q| (1..=q).prop_map(move |p| Alpha::new(p, q).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_matches_brute_force(g in graph(8)) {
        let (chi, c) = chromatic_number(&g);
        prop_assert_eq!(chi, brute_chromatic(&g));
        prop_assert!(verify_coloring(&g, &c).unwrap());
        let w = max_clique(&g);
        prop_assert!(g.is_clique(&w.members));
        prop_assert_eq!(w.size(), brute_clique(&g));
    }

    #[test]
    fn membership_and_closedness_match_brute_force(g in graph(7), a in alpha(), mask in any::<u64>()) {
        prop_assert_eq!(in_k_alpha(&g, a).holds, brute_in_k_alpha(&g, a));
        let s = VertexSet::from_mask(g.n(), mask);
        let v = is_closed(&s, &g, a, Closedness::Strict).unwrap();
        prop_assert_eq!(v.holds, brute_strictly_closed(&g, &s, a));
        if let Some(w) = v.witness {
            prop_assert!(s.is_subset(&w) && w != s);
        }
    }

    #[test]
    fn mycielskian_raises_chi_by_one(g in graph(6)) {
        prop_assume!(g.n() > 0 && g.edge_count() > 0);
        let m = mycielskian(&g).unwrap();
        prop_assert_eq!(m.graph.n(), 2 * g.n() + 1);
        prop_assert!(find_isomorphism(&m.graph, &mycielskian_direct(&g)).is_some());
        prop_assert_eq!(chromatic_number(&m.graph).0, chromatic_number(&g).0 + 1);
        prop_assert_eq!(max_clique(&m.graph).size(), max_clique(&g).size().max(2));
    }

    #[test]
    fn witnesses_verify_and_are_monotone(g in graph(8)) {
        let h = max_half_graph(&g, 4);
        prop_assert!(verify_half_graph(&g, &h.witness));
        prop_assert_eq!(h.order, h.witness.order());
        let s = max_shattered_set(&g, 3);
        prop_assert_eq!(verify_shatter(&g, &s.witness), g.n() > 0);
        // a larger graph containing g never has smaller witnesses
        let bigger = g.with_extra_vertices(1);
        prop_assert!(max_half_graph(&bigger, 4).order >= h.order);
        prop_assert!(max_shattered_set(&bigger, 3).size >= s.size);
    }

    #[test]
    fn growth_stays_in_class(seed in any::<u64>(), budget in 1usize..25, which in 0usize..3) {
        let class = match which {
            0 => ClassDescriptor::triangle_free(),
            1 => ClassDescriptor::clique_free(4).unwrap(),
            _ => ClassDescriptor::predimension("3/4".parse().unwrap(), Closedness::Weak).unwrap(),
        };
        let config = GrowthConfig { budget, size_cap: 3, seed, ..GrowthConfig::default() };
        let mut grower = Grower::new(class.clone(), config.clone()).unwrap();
        grower.run().unwrap();
        let g = grower.graph();
        prop_assert!(class.contains(g));
        g.check_invariants().unwrap();
        let sizes: Vec<usize> = grower.log().steps.iter().map(|s| s.size).collect();
        prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(sizes.len() <= budget);
        let mut again = Grower::new(class, config).unwrap();
        again.run().unwrap();
        prop_assert_eq!(again.graph(), g);
    }
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Affine cell on `(0, 8)` with `f < g < id`; slopes and offsets in
/// eighths.
fn affine_cell() -> impl Strategy<Value = CellSpec> {
    (1i64..=8, 1i64..=8, 1i64..=8, 1i64..=16).prop_map(|(gs, gap, fs, off)| {
        // g(x) = gs/8 x - gap/8, f(x) = min-slope line further down
        let lo = rat(0, 1);
        let hi = rat(8, 1);
        let g = PlFunction::affine(lo.clone(), hi.clone(), rat(gs, 8), rat(-gap, 8)).unwrap();
        let f_slope = rat(fs.min(gs), 8);
        let f = PlFunction::affine(lo.clone(), hi.clone(), f_slope, rat(-gap - off, 8)).unwrap();
        let d = f.min_value().clone().min(g.min_value().clone());
        CellSpec { d0: lo, e0: hi, d, f, g }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cell_certificates_verify(spec in affine_cell(), n in 4usize..40) {
        let Ok(a) = analyze_cell(&spec) else { return Ok(()) };
        match &a.verdict {
            CellVerdict::CliqueBuilder(b) => {
                let pts = emit_clique(b, &a.cell, 8).unwrap();
                prop_assert!(verify_point_clique(&a.cell, &pts));
            }
            verdict => {
                let lo = match verdict {
                    CellVerdict::BoundedColoring(c) => c.lower.clone(),
                    _ => a.cell.d.clone(),
                };
                let pts = grid_sample(&lo, &a.cell.e0, n);
                let colors: Vec<usize> = pts.iter().map(|p| color_point(verdict, p).unwrap()).collect();
                prop_assert!(verify_point_coloring(&a.cell, &pts, &colors));
                if let CellVerdict::BoundedColoring(c) = verdict {
                    prop_assert!(colors.iter().all(|&x| x < c.palette()));
                }
            }
        }
    }
}
