//! Uniform-structure verdicts on families and on exhaustive small cases.

use drgwb_core::graphs::{cycle, folded_hypercube, Graph};
use num_traits::Zero;
use drgwb_core::talg::{build_context, Mode};
use drgwb_core::uniform::{resubstitute, solve_uniform, supports_uniform, Outcome, Witness};

fn infeasible(g: &Graph, base: usize) -> bool {
    let ctx = build_context(g, base, Mode::Full).unwrap();
    matches!(solve_uniform(&ctx).unwrap().witness, Witness::InfeasibleLevel(_))
}

#[test]
fn infeasible_levels_on_small_graphs() {
    // K_{2,3} minus the edge 1-4: from the two vertices adjacent to both 0
    // and 1 some level equation has no solution.
    let g = Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3)], "g").unwrap();
    let bad: Vec<usize> = (0..5).filter(|&x| infeasible(&g, x)).collect();
    assert_eq!(bad, [2, 3]);
    let g = Graph::new(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (2, 3)], "g").unwrap();
    assert!(infeasible(&g, 0));
}

#[test]
fn short_even_cycles_are_uniform() {
    for n in [4, 6] {
        let g = cycle(n).unwrap();
        let ctx = build_context(&g, 0, Mode::Full).unwrap();
        let v = solve_uniform(&ctx).unwrap();
        assert_eq!(v.outcome, Outcome::Uniform, "cycle {n}");
        assert!(resubstitute(&ctx, v.solution().unwrap()).unwrap().holds());
    }
}

#[test]
fn longer_even_cycles_fail_condition_ii() {
    // Level 2 forces e_2^- = 0 (RL^2 reaches both level-1 vertices) and level
    // eps - 1 forces e^+ = 0 by symmetry, so neither branch of (ii) holds.
    for n in [8, 10, 12] {
        let g = cycle(n).unwrap();
        let ctx = build_context(&g, 0, Mode::Full).unwrap();
        let v = solve_uniform(&ctx).unwrap();
        assert_eq!(v.outcome, Outcome::NoUniform, "cycle {n}");
        let Witness::InvalidParameterMatrix { candidate, check } = &v.witness else {
            panic!("cycle {n}: expected an invalid parameter matrix");
        };
        let eps = candidate.eps();
        assert!(candidate.u.minus(2).is_zero() && candidate.u.plus(eps - 1).is_zero());
        assert!(!check.ii_whole_range);
    }
}

#[test]
fn folded_cubes_at_every_base() {
    let g = folded_hypercube(5).unwrap();
    for x in 0..g.n() {
        let v = supports_uniform(&g, x).unwrap();
        assert!(v.is_uniform(), "base {x}");
        let ctx = build_context(&g, x, Mode::BipartiteQuotient).unwrap();
        assert!(resubstitute(&ctx, v.solution().unwrap()).unwrap().holds());
    }
}
