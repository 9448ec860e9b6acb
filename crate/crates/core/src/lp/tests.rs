use proptest::prelude::*;

use super::*;

/// Vertex enumeration: every choice of `n` tight constraints (rows or
/// bounds) is solved as a square system; the best feasible point wins.
fn brute_force_max(lp: &LinearProgram) -> Option<f64> {
    let n = lp.num_vars();
    let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
    for row in lp.rows() {
        let mut a = vec![0.0; n];
        for &(j, v) in row.coeffs() {
            a[j] = v;
        }
        planes.push((a, row.rhs()));
    }
    for j in 0..n {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        let (lo, hi) = lp.bounds(j);
        planes.push((e.clone(), lo));
        planes.push((e, hi));
    }
    let mut best: Option<f64> = None;
    let mut pick = Vec::new();
    fn rec(
        start: usize,
        pick: &mut Vec<usize>,
        planes: &[(Vec<f64>, f64)],
        n: usize,
        lp: &LinearProgram,
        best: &mut Option<f64>,
    ) {
        if pick.len() == n {
            if let Some(x) = solve_square(pick.iter().map(|&i| &planes[i]).collect(), n) {
                if lp.max_violation(&x) <= 1e-9 {
                    let v = lp.objective_value(&x);
                    *best = Some(best.map_or(v, |b: f64| b.max(v)));
                }
            }
            return;
        }
        for i in start..planes.len() {
            pick.push(i);
            rec(i + 1, pick, planes, n, lp, best);
            pick.pop();
        }
    }
    rec(0, &mut pick, &planes, n, lp, &mut best);
    best
}

fn solve_square(rows: Vec<&(Vec<f64>, f64)>, n: usize) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = rows.iter().map(|(r, b)| r.iter().copied().chain([*b]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-9 {
            return None;
        }
        a.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..=n {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    Some((0..n).map(|i| a[i][n] / a[i][i]).collect())
}

fn trivial() -> LinearProgram {
    let mut lp = LinearProgram::new();
    let x0 = lp.add_var(1.0, 0.0, 1.0).unwrap();
    let x1 = lp.add_var(1.0, 0.0, 1.0).unwrap();
    lp.add_row(Row::new([(x0, 1.0), (x1, 1.0)], Relation::Le, 1.0)).unwrap();
    lp
}

#[test]
fn trivial_lp_has_objective_one() {
    let sol = trivial().solve(None);
    assert_eq!(sol.status, LpStatus::Optimal);
    assert!((sol.objective_value - 1.0).abs() < 1e-9);
}

#[test]
fn adding_rows_lowers_or_keeps_objective() {
    let mut lp = trivial();
    let first = lp.solve(None);
    lp.add_rows([Row::new([(0, 1.0)], Relation::Le, 0.0)]).unwrap();
    let second = lp.solve(first.basis.as_ref());
    assert_eq!(second.status, LpStatus::Optimal);
    assert!((second.objective_value - 1.0).abs() < 1e-9);
    assert!((second.primal[1] - 1.0).abs() < 1e-9);
    lp.add_rows([Row::new([(1, 1.0)], Relation::Le, 0.0)]).unwrap();
    let third = lp.solve(second.basis.as_ref());
    assert!(third.objective_value.abs() < 1e-9);
}

#[test]
fn bad_rows_are_rejected_atomically() {
    let mut lp = trivial();
    let err = lp
        .add_rows([Row::new([(0, 1.0)], Relation::Le, 0.0), Row::new([(5, 1.0)], Relation::Le, 0.0)])
        .unwrap_err();
    assert_eq!(err, LpError::VariableOutOfRange { var: 5, num_vars: 2 });
    assert_eq!(lp.num_rows(), 1);
    assert_eq!(lp.add_row(Row::new([(0, f64::NAN)], Relation::Le, 0.0)), Err(LpError::NonFinite));
    assert!(lp.add_var(0.0, 1.0, 0.0).is_err());
    assert!(lp.add_var(0.0, 0.0, f64::INFINITY).is_err());
}

#[test]
fn row_builder_merges_and_drops() {
    let r = Row::new([(2, 1.0), (0, 1e-13), (2, 2.0), (1, -1.0)], Relation::Ge, 0.0);
    assert_eq!(r.coeffs(), &[(1, -1.0), (2, 3.0)]);
}

#[test]
fn detects_infeasibility() {
    let mut lp = LinearProgram::new();
    let x = lp.add_var(1.0, 0.0, 1.0).unwrap();
    let y = lp.add_var(1.0, 0.0, 1.0).unwrap();
    lp.add_row(Row::new([(x, 1.0), (y, 1.0)], Relation::Ge, 3.0)).unwrap();
    assert_eq!(lp.solve(None).status, LpStatus::Infeasible);
    // Warm path: feasible first, then infeasible after a new row.
    let mut lp = trivial();
    let sol = lp.solve(None);
    lp.add_row(Row::new([(0, 1.0), (1, 1.0)], Relation::Ge, 1.5)).unwrap();
    assert_eq!(lp.solve(sol.basis.as_ref()).status, LpStatus::Infeasible);
}

#[test]
fn equality_and_ge_rows() {
    // max x + 2y + 3z, x + y + z = 2, y - z >= 0.5, bounds [0,1]
    let mut lp = LinearProgram::new();
    for c in [1.0, 2.0, 3.0] {
        lp.add_var(c, 0.0, 1.0).unwrap();
    }
    lp.add_row(Row::new([(0, 1.0), (1, 1.0), (2, 1.0)], Relation::Eq, 2.0)).unwrap();
    lp.add_row(Row::new([(1, 1.0), (2, -1.0)], Relation::Ge, 0.5)).unwrap();
    let sol = lp.solve(None);
    assert_eq!(sol.status, LpStatus::Optimal);
    let oracle = brute_force_max(&lp).unwrap();
    assert!((sol.objective_value - oracle).abs() < 1e-6, "{} vs {}", sol.objective_value, oracle);
    assert!(lp.max_violation(&sol.primal) <= FEASIBILITY_TOL);
}

#[test]
fn empty_program_takes_best_bounds() {
    let mut lp = LinearProgram::new();
    lp.add_var(2.0, 0.0, 1.0).unwrap();
    lp.add_var(-1.0, 0.5, 1.0).unwrap();
    let sol = lp.solve(None);
    assert_eq!(sol.status, LpStatus::Optimal);
    assert_eq!(sol.primal, vec![1.0, 0.5]);
}

#[test]
fn iteration_limit_is_reported_not_a_wrong_optimum() {
    let mut lp = LinearProgram::new();
    for _ in 0..6 {
        lp.add_var(1.0, 0.0, 1.0).unwrap();
    }
    for i in 0..5 {
        lp.add_row(Row::new([(i, 1.0), (i + 1, 1.0)], Relation::Le, 1.0)).unwrap();
    }
    let opts = SimplexOptions { iteration_limit: Some(1), ..Default::default() };
    let sol = lp.solve_with(None, &opts);
    assert_eq!(sol.status, LpStatus::IterationLimit);
    assert_eq!(lp.solve(None).status, LpStatus::Optimal);
}

#[test]
fn bland_fallback_reaches_same_optimum() {
    // Beale's classic cycling example, boxed generously.
    let mut lp = LinearProgram::new();
    let c = [0.75, -150.0, 0.02, -6.0];
    for &ci in &c {
        lp.add_var(ci, 0.0, 100.0).unwrap();
    }
    lp.add_row(Row::new([(0, 0.25), (1, -60.0), (2, -0.04), (3, 9.0)], Relation::Le, 0.0)).unwrap();
    lp.add_row(Row::new([(0, 0.5), (1, -90.0), (2, -0.02), (3, 3.0)], Relation::Le, 0.0)).unwrap();
    lp.add_row(Row::new([(2, 1.0)], Relation::Le, 1.0)).unwrap();
    let dantzig = lp.solve(None);
    let bland = lp.solve_with(None, &SimplexOptions { degenerate_switch: 1, ..Default::default() });
    assert_eq!(dantzig.status, LpStatus::Optimal);
    assert_eq!(bland.status, LpStatus::Optimal);
    assert!((dantzig.objective_value - bland.objective_value).abs() < 1e-6);
    assert!((dantzig.objective_value - 0.05).abs() < 1e-6);
}

#[test]
fn lp_format_dump() {
    let text = trivial().to_lp_format();
    assert!(text.starts_with("Maximize\n obj: 1 x0 + 1 x1\n"));
    assert!(text.contains(" r0: 1 x0 + 1 x1 <= 1\n"));
    assert!(text.contains(" 0 <= x1 <= 1\n"));
    assert!(text.ends_with("End\n"));
}

#[test]
fn solves_are_bit_identical() {
    let mut lp = LinearProgram::new();
    for j in 0..8 {
        lp.add_var(1.0 + (j % 3) as f64, 0.0, 1.0).unwrap();
    }
    for i in 0..7 {
        lp.add_row(Row::new([(i, 1.0), (i + 1, 2.0), ((i + 3) % 8, 1.0)], Relation::Le, 1.5)).unwrap();
    }
    let a = lp.solve(None);
    let b = lp.solve(None);
    assert_eq!(
        a.primal.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
        b.primal.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
    );
}

fn small_lp() -> impl Strategy<Value = LinearProgram> {
    let nvars = 2usize..=4;
    nvars.prop_flat_map(|n| {
        let obj = prop::collection::vec(-3i32..=3, n);
        let rows = prop::collection::vec(
            (prop::collection::vec(-2i32..=2, n), 0usize..3, -2i32..=4),
            0..=4,
        );
        let bounds = prop::collection::vec((0i32..=1, 1i32..=3), n);
        (obj, rows, bounds).prop_map(move |(obj, rows, bounds)| {
            let mut lp = LinearProgram::new();
            for (j, &c) in obj.iter().enumerate() {
                let (lo, span) = bounds[j];
                lp.add_var(c as f64, lo as f64, (lo + span) as f64).unwrap();
            }
            for (coeffs, rel, rhs) in rows {
                let rel = [Relation::Le, Relation::Ge, Relation::Eq][rel];
                lp.add_row(Row::new(
                    coeffs.iter().enumerate().map(|(j, &a)| (j, a as f64)),
                    rel,
                    rhs as f64,
                ))
                .unwrap();
            }
            lp
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn matches_vertex_enumeration(lp in small_lp()) {
        let sol = lp.solve(None);
        match brute_force_max(&lp) {
            Some(best) => {
                prop_assert_eq!(sol.status, LpStatus::Optimal);
                prop_assert!((sol.objective_value - best).abs() <= 1e-6, "{} vs {}", sol.objective_value, best);
                prop_assert!(lp.max_violation(&sol.primal) <= FEASIBILITY_TOL);
                let recomputed = lp.objective_value(&sol.primal);
                prop_assert!((recomputed - sol.objective_value).abs() <= 1e-9 * (1.0 + sol.objective_value.abs()));
            }
            None => prop_assert_eq!(sol.status, LpStatus::Infeasible),
        }
    }

    #[test]
    fn warm_start_after_rows_matches_cold(lp in small_lp(), extra in small_lp()) {
        let n = lp.num_vars();
        let mut lp = lp;
        let first = lp.solve(None);
        prop_assume!(first.status == LpStatus::Optimal);
        let rows: Vec<Row> = extra
            .rows()
            .iter()
            .map(|r| Row::new(r.coeffs().iter().filter(|&&(j, _)| j < n).copied(), r.relation(), r.rhs()))
            .collect();
        lp.add_rows(rows).unwrap();
        let warm = lp.solve(first.basis.as_ref());
        let cold = lp.solve(None);
        prop_assert_eq!(warm.status, cold.status);
        if cold.status == LpStatus::Optimal {
            prop_assert!((warm.objective_value - cold.objective_value).abs() <= 1e-6);
            // Monotone under row addition.
            prop_assert!(cold.objective_value <= first.objective_value + 1e-6);
        }
    }

    #[test]
    fn warm_start_after_bound_change_matches_cold(lp in small_lp(), var in 0usize..4, fix_up in any::<bool>()) {
        let mut lp = lp;
        let first = lp.solve(None);
        prop_assume!(first.status == LpStatus::Optimal);
        let var = var % lp.num_vars();
        let (lo, hi) = lp.bounds(var);
        let v = if fix_up { hi } else { lo };
        lp.set_bounds(var, v, v).unwrap();
        let warm = lp.solve(first.basis.as_ref());
        let cold = lp.solve(None);
        prop_assert_eq!(warm.status, cold.status);
        if cold.status == LpStatus::Optimal {
            prop_assert!((warm.objective_value - cold.objective_value).abs() <= 1e-6);
        }
    }
}
