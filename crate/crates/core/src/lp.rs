//! Small linear programs over convex combinations of points.

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem, Solution, Variable};

use crate::error::{GeomError, Result};
use crate::geom::Vector;

fn lp_err(e: minilp::Error) -> GeomError {
    GeomError::Lp(e.to_string())
}

/// L1 distance from `p` to the convex hull of `points`.
pub fn l1_distance_to_hull(p: &Vector, points: &[Vector]) -> Result<f64> {
    if points.is_empty() {
        return Ok(f64::INFINITY);
    }
    let d = p.dim();
    let mut prob = Problem::new(OptimizationDirection::Minimize);
    let lambda: Vec<Variable> = points.iter().map(|_| prob.add_var(0.0, (0.0, f64::INFINITY))).collect();
    let plus: Vec<Variable> = (0..d).map(|_| prob.add_var(1.0, (0.0, f64::INFINITY))).collect();
    let minus: Vec<Variable> = (0..d).map(|_| prob.add_var(1.0, (0.0, f64::INFINITY))).collect();
    for k in 0..d {
        let mut expr: LinearExpr = lambda.iter().zip(points).map(|(&l, q)| (l, q[k])).collect();
        expr.add(plus[k], 1.0);
        expr.add(minus[k], -1.0);
        prob.add_constraint(expr, ComparisonOp::Eq, p[k]);
    }
    prob.add_constraint(lambda.iter().map(|&l| (l, 1.0)).collect::<LinearExpr>(), ComparisonOp::Eq, 1.0);
    Ok(prob.solve().map_err(lp_err)?.objective().max(0.0))
}

/// A longest segment `[a, a + t u]` inside the hull of `vertices`.
///
/// With `lex_midpoint`, ties between longest chords are broken by the
/// lexicographically smallest midpoint, resolved by one extra LP per
/// coordinate.
pub fn longest_chord(vertices: &[Vector], u: &Vector, lex_midpoint: bool) -> Result<(Vector, f64)> {
    let d = u.dim();
    let scale = vertices.iter().fold(0.0f64, |m, v| m.max(v.max_abs())).max(1e-300);
    let tol = 1e-12 * scale;

    let build = |objective: Option<usize>| {
        let dir = if objective.is_some() { OptimizationDirection::Minimize } else { OptimizationDirection::Maximize };
        let mut prob = Problem::new(dir);
        let lambda: Vec<Variable> = vertices
            .iter()
            .map(|v| prob.add_var(objective.map_or(0.0, |k| v[k]), (0.0, f64::INFINITY)))
            .collect();
        let mu: Vec<Variable> = vertices.iter().map(|_| prob.add_var(0.0, (0.0, f64::INFINITY))).collect();
        let t = prob.add_var(objective.map_or(1.0, |k| u[k] / 2.0), (0.0, f64::INFINITY));
        for k in 0..d {
            let mut expr: LinearExpr = mu.iter().zip(vertices).map(|(&m, v)| (m, v[k])).collect();
            for (&l, v) in lambda.iter().zip(vertices) {
                expr.add(l, -v[k]);
            }
            expr.add(t, -u[k]);
            prob.add_constraint(expr, ComparisonOp::Eq, 0.0);
        }
        prob.add_constraint(lambda.iter().map(|&l| (l, 1.0)).collect::<LinearExpr>(), ComparisonOp::Eq, 1.0);
        prob.add_constraint(mu.iter().map(|&m| (m, 1.0)).collect::<LinearExpr>(), ComparisonOp::Eq, 1.0);
        (prob, lambda, t)
    };

    let (prob, lambda, t) = build(None);
    let sol = prob.solve().map_err(lp_err)?;
    let t_max = *sol.var_value(t);
    let mut best = (start_point(&sol, &lambda, vertices), *sol.var_value(t));
    if !lex_midpoint {
        return Ok(best);
    }

    let mut fixed: Vec<(usize, f64)> = Vec::new();
    for k in 0..d {
        let (mut prob, lambda, t) = build(Some(k));
        prob.add_constraint([(t, 1.0)], ComparisonOp::Ge, t_max - tol);
        for &(j, m) in &fixed {
            let expr = midpoint_expr(&lambda, t, vertices, u, j);
            prob.add_constraint(expr, ComparisonOp::Le, m + tol);
        }
        let sol = match prob.solve() {
            Ok(s) => s,
            // the previous optimum stays valid if tolerances make a stage infeasible
            Err(_) => break,
        };
        fixed.push((k, sol.objective()));
        best = (start_point(&sol, &lambda, vertices), *sol.var_value(t));
    }

    // recover full length on the selected midpoint
    let (mut prob, lambda, t) = build(None);
    for &(j, m) in &fixed {
        prob.add_constraint(midpoint_expr(&lambda, t, vertices, u, j), ComparisonOp::Le, m + tol);
    }
    if let Ok(sol) = prob.solve() {
        best = (start_point(&sol, &lambda, vertices), *sol.var_value(t));
    }
    Ok(best)
}

/// Largest `s ≥ 0` and offset `x` such that `x + s·t` satisfies every
/// planar halfplane `n·y ≤ b` for each template point `t`.
pub fn max_scaled_template(halfplanes: &[([f64; 2], f64)], template: &[[f64; 2]]) -> Result<([f64; 2], f64)> {
    let mut prob = Problem::new(OptimizationDirection::Maximize);
    let x = prob.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY));
    let y = prob.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY));
    let s = prob.add_var(1.0, (0.0, f64::INFINITY));
    for (n, b) in halfplanes {
        for t in template {
            let coef = n[0] * t[0] + n[1] * t[1];
            prob.add_constraint([(x, n[0]), (y, n[1]), (s, coef)], ComparisonOp::Le, *b);
        }
    }
    let sol = prob.solve().map_err(lp_err)?;
    Ok(([*sol.var_value(x), *sol.var_value(y)], *sol.var_value(s)))
}

fn midpoint_expr(lambda: &[Variable], t: Variable, vertices: &[Vector], u: &Vector, k: usize) -> LinearExpr {
    let mut expr: LinearExpr = lambda.iter().zip(vertices).map(|(&l, v)| (l, v[k])).collect();
    expr.add(t, u[k] / 2.0);
    expr
}

fn start_point(sol: &Solution, lambda: &[Variable], vertices: &[Vector]) -> Vector {
    let w: Vec<f64> = lambda.iter().map(|&l| sol.var_value(l).max(0.0)).collect();
    let total: f64 = w.iter().sum();
    let mut a = Vector::zeros(vertices[0].dim());
    for (wi, v) in w.iter().zip(vertices) {
        a = a.add_scaled(wi / total, v);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Vector> {
        [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]].into_iter().map(Vector::from).collect()
    }

    #[test]
    fn distance_to_square() {
        assert_eq!(l1_distance_to_hull(&Vector::xy(0.5, 0.5), &square()).unwrap(), 0.0);
        assert!((l1_distance_to_hull(&Vector::xy(2.0, 2.0), &square()).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn chord_of_square_along_x_is_lex_lowest() {
        let (a, t) = longest_chord(&square(), &Vector::xy(1.0, 0.0), true).unwrap();
        assert!((t - 1.0).abs() < 1e-12);
        assert!(a.dist(&Vector::xy(0.0, 0.0)) < 1e-9, "{a:?}");
    }

    #[test]
    fn diagonal_chord_of_square() {
        let u = Vector::xy(1.0, 1.0).scale(0.5f64.sqrt());
        let (a, t) = longest_chord(&square(), &u, true).unwrap();
        assert!((t - 2f64.sqrt()).abs() < 1e-12);
        assert!(a.norm() < 1e-9);
    }
}
