//! Discretized check that parents' choices from `K_g` are generated by a
//! restriction-sensitive structure.
//!
//! Options are grid points `(t_i, d_j)` of the unit square. Each effort
//! level reached by a direct choice under some tested `g > ĝ` forms its
//! own type; every other point sits in one residual type. Welfare is
//! `u = t + P(d) V̂`; the reaction value swaps in `V(g(t, d))`, the policy
//! that would put `(t, d)` on the budget line, for points of an effort
//! type below its threshold `g(t, d) = ĝ`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::culture::{culture_gbar, lit, CultureParams};
use crate::error::{Error, Result};
use crate::Scalar;

pub const CONSISTENCY_G_COUNT: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyRow<F> {
    pub g: F,
    /// `(t, d)` maximizing `t + P(d) V(g)` on the discretized menu.
    pub direct: [F; 2],
    /// `(t, d)` picked by the two-stage procedure.
    pub two_stage: [F; 2],
    /// Chebyshev distance between the two choices, in grid cells.
    pub cell_deviation: F,
    /// Continuous optimum `(t*, d*)`.
    pub analytic: [F; 2],
    /// Chebyshev distance between the two-stage choice and the optimum.
    pub analytic_deviation: F,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport<F> {
    pub grid_n: usize,
    pub spacing: F,
    pub g_bar: F,
    pub rows: Vec<ConsistencyRow<F>>,
    pub max_cell_deviation: F,
    pub max_analytic_deviation: F,
    /// Some choice pair is more than one grid cell apart.
    pub grid_too_coarse: bool,
}

/// The discretized menu `K_g` holds the grid points inside the budget
/// plus, for each effort level, the point on the budget line. Grid points
/// below that point share its effort with less leisure, so both stages
/// only ever pick budget-line points.
struct Grid<'a, F> {
    params: &'a CultureParams<F>,
    n: usize,
    q: F,
}

impl<F: Scalar> Grid<'_, F> {
    fn effort(&self, j: usize) -> F {
        F::from_usize(j).expect("grid index") / F::from_usize(self.n - 1).expect("grid size")
    }

    fn socialization(&self, d: F) -> F {
        d + (F::one() - d) * self.q
    }

    /// Leisure on the budget line of `K_g` at effort level `j`.
    fn budget_leisure(&self, g: F, j: usize) -> Option<F> {
        let t = F::one() - g * self.effort(j).powf(self.params.beta);
        (t >= F::zero()).then_some(t)
    }

    fn budget_points(&self, g: F) -> impl Iterator<Item = (F, usize)> + '_ {
        (0..self.n).filter_map(move |j| self.budget_leisure(g, j).map(|t| (t, j)))
    }

    fn direct(&self, g: F) -> (F, usize) {
        let v = self.params.value(g);
        let mut best: Option<((F, usize), F)> = None;
        for (t, j) in self.budget_points(g) {
            let val = t + self.socialization(self.effort(j)) * v;
            if best.is_none_or(|(_, b)| val > b) {
                best = Some(((t, j), val));
            }
        }
        best.expect("zero effort is always affordable").0
    }

    fn welfare(&self, t: F, j: usize) -> F {
        t + self.socialization(self.effort(j)) * self.params.v_hat
    }

    fn reaction(&self, t: F, j: usize, effort_type: bool) -> F {
        let d = self.effort(j);
        if !effort_type || d == F::zero() {
            return self.welfare(t, j);
        }
        // at or above the threshold of the type nothing changes
        if self.budget_leisure(self.params.g_hat, j).is_none_or(|star| t >= star) {
            return self.welfare(t, j);
        }
        let g_td = (F::one() - t) / d.powf(self.params.beta);
        t + self.socialization(d) * self.params.value(g_td)
    }

    fn two_stage(&self, g: F, effort_types: &BTreeSet<usize>) -> (F, usize) {
        let mut candidates: Vec<(F, usize)> = Vec::new();
        let mut residual: Option<((F, usize), F)> = None;
        for (t, j) in self.budget_points(g) {
            if effort_types.contains(&j) {
                // welfare within an effort type is leisure
                candidates.push((t, j));
            } else {
                let u = self.welfare(t, j);
                if residual.is_none_or(|(_, b)| u > b) {
                    residual = Some(((t, j), u));
                }
            }
        }
        candidates.extend(residual.map(|(p, _)| p));
        let mut best: Option<((F, usize), F)> = None;
        for (t, j) in candidates {
            let v = self.reaction(t, j, effort_types.contains(&j));
            if best.is_none_or(|(_, b)| v > b) {
                best = Some(((t, j), v));
            }
        }
        best.expect("nonempty menu").0
    }

    fn analytic(&self, g: F) -> [F; 2] {
        let d = self.params.corner(g).min(self.params.interior(g, self.q));
        [F::one() - g * d.powf(self.params.beta), d]
    }
}

fn chebyshev<F: Scalar>(a: [F; 2], b: [F; 2]) -> F {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

/// Compares direct and two-stage maximization on `grid_n × grid_n` points
/// for twenty policies evenly spread over `[1, 2ḡ]`, at share `q0`.
pub fn culture_rsc_consistency<F: Scalar>(params: &CultureParams<F>, grid_n: usize) -> Result<ConsistencyReport<F>> {
    params.validate()?;
    if grid_n < 10 {
        return Err(Error::InvalidParams(format!("grid_n = {grid_n} below 10")));
    }
    let q = params.q0;
    let g_bar = culture_gbar(params, q)?;
    let grid = Grid { params, n: grid_n, q };
    let last = F::from_usize(CONSISTENCY_G_COUNT - 1).expect("count");
    let gs: Vec<F> = (0..CONSISTENCY_G_COUNT)
        .map(|k| F::one() + (lit::<F>(2.0) * g_bar - F::one()) * F::from_usize(k).expect("index") / last)
        .collect();
    let directs: Vec<(F, usize)> = gs.iter().map(|&g| grid.direct(g)).collect();
    let effort_types: BTreeSet<usize> = gs
        .iter()
        .zip(&directs)
        .filter(|(&g, _)| g > params.g_hat)
        .map(|(_, &(_, j))| j)
        .collect();
    let spacing = grid.effort(1);
    let point = |(t, j): (F, usize)| [t, grid.effort(j)];
    let rows: Vec<ConsistencyRow<F>> = gs
        .iter()
        .zip(&directs)
        .map(|(&g, &direct)| {
            let direct = point(direct);
            let two_stage = point(grid.two_stage(g, &effort_types));
            let analytic = grid.analytic(g);
            ConsistencyRow {
                g,
                direct,
                two_stage,
                cell_deviation: chebyshev(direct, two_stage) / spacing,
                analytic,
                analytic_deviation: chebyshev(two_stage, analytic),
            }
        })
        .collect();
    let max_of = |f: fn(&ConsistencyRow<F>) -> F| rows.iter().map(f).fold(F::zero(), |a, b| a.max(b));
    let max_cell_deviation = max_of(|r| r.cell_deviation);
    let max_analytic_deviation = max_of(|r| r.analytic_deviation);
    Ok(ConsistencyReport {
        grid_n,
        spacing,
        g_bar,
        grid_too_coarse: max_cell_deviation > F::one(),
        rows,
        max_cell_deviation,
        max_analytic_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> CultureParams<f64> {
        CultureParams::new(2.0, 1.5, 1.2, 2.0, 2.0, 0.3).unwrap()
    }

    #[test]
    fn first_policy_matches_exactly() {
        let r = culture_rsc_consistency(&params(), 200).unwrap();
        assert_eq!(r.rows[0].g, 1.0);
        assert_eq!(r.rows[0].direct, r.rows[0].two_stage);
    }

    #[test]
    fn within_one_cell() {
        let r = culture_rsc_consistency(&params(), 200).unwrap();
        assert_eq!(r.rows.len(), CONSISTENCY_G_COUNT);
        assert!(!r.grid_too_coarse, "{r:?}");
        assert!(r.max_analytic_deviation <= 4.0 * r.spacing, "{r:?}");
    }

    #[test]
    fn budget_is_respected() {
        let r = culture_rsc_consistency(&params(), 50).unwrap();
        for row in &r.rows {
            for [t, d] in [row.direct, row.two_stage] {
                assert!(t >= 0.0 && t + row.g * d * d <= 1.0 + 1e-12);
            }
        }
    }

    #[test]
    fn refinement_shrinks_distance_to_optimum() {
        let coarse = culture_rsc_consistency(&params(), 100).unwrap();
        let fine = culture_rsc_consistency(&params(), 400).unwrap();
        assert!(fine.max_analytic_deviation < coarse.max_analytic_deviation);
    }

    #[test]
    fn coarse_grid_rejected() {
        assert!(culture_rsc_consistency(&params(), 5).is_err());
    }
}
