//! Exact LP reference for the max-flow problem, independent of paths and
//! circuits.
//!
//! With `B` the basis of the space, members are `f = y B` for free
//! coordinates `y`. The LP
//!
//! ```text
//! maximize (yB)_r  s.t.  (yB)_j <= c_j,  -(yB)_j <= 0   (j != r)
//! ```
//!
//! is solved by a dense tableau simplex over exact rationals with Bland's
//! rule. `y = 0` is feasible, so the all-slack basis starts the method and no
//! first phase is needed.

use num_traits::{One, Signed, Zero};

use super::Instance;
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReferenceOptimum {
    Bounded(Rational),
    Unbounded,
}

impl ReferenceOptimum {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            ReferenceOptimum::Bounded(v) => Some(v),
            ReferenceOptimum::Unbounded => None,
        }
    }
}

pub fn lp_reference_solve(inst: &Instance) -> ReferenceOptimum {
    let basis = inst.space().basis();
    let d = basis.len();
    let n = inst.ground_size();
    let r = inst.r();
    if d == 0 {
        return ReferenceOptimum::Bounded(Rational::zero());
    }
    // columns: y+ (d), y- (d), one slack per row
    let bounded: Vec<usize> = (0..n).filter(|&j| j != r).collect();
    let rows = 2 * bounded.len();
    let structural = 2 * d;
    let cols = structural + rows;
    let mut tableau = vec![vec![Rational::zero(); cols + 1]; rows];
    for (k, &j) in bounded.iter().enumerate() {
        let upper = 2 * k;
        let lower = 2 * k + 1;
        for (i, b) in basis.iter().enumerate() {
            tableau[upper][i] = b[j].clone();
            tableau[upper][d + i] = -b[j].clone();
            tableau[lower][i] = -b[j].clone();
            tableau[lower][d + i] = b[j].clone();
        }
        tableau[upper][structural + upper] = Rational::one();
        tableau[lower][structural + lower] = Rational::one();
        tableau[upper][cols] = inst.capacity(j).expect("only r is uncapacitated").clone();
    }
    // reduced costs of the maximization objective
    let mut cost = vec![Rational::zero(); cols + 1];
    for (i, b) in basis.iter().enumerate() {
        cost[i] = b[r].clone();
        cost[d + i] = -b[r].clone();
    }
    let mut in_basis: Vec<usize> = (structural..cols).collect();

    loop {
        let Some(entering) = (0..cols).find(|&c| cost[c].is_positive()) else {
            // objective row holds -value in its right-hand side
            return ReferenceOptimum::Bounded(-cost[cols].clone());
        };
        let mut leaving: Option<(usize, Rational)> = None;
        for (row, line) in tableau.iter().enumerate() {
            if !line[entering].is_positive() {
                continue;
            }
            let ratio = &line[cols] / &line[entering];
            let better = match &leaving {
                None => true,
                Some((best_row, best)) => {
                    ratio < *best || (ratio == *best && in_basis[row] < in_basis[*best_row])
                }
            };
            if better {
                leaving = Some((row, ratio));
            }
        }
        let Some((pivot_row, _)) = leaving else {
            return ReferenceOptimum::Unbounded;
        };
        pivot(&mut tableau, &mut cost, pivot_row, entering);
        in_basis[pivot_row] = entering;
    }
}

fn pivot(tableau: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = tableau[row][col].recip();
    for x in tableau[row].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = tableau[row].clone();
    for (i, line) in tableau.iter_mut().enumerate() {
        if i != row {
            eliminate(line, &pivot_row, col);
        }
    }
    eliminate(cost, &pivot_row, col);
}

fn eliminate(line: &mut [Rational], pivot_row: &[Rational], col: usize) {
    if line[col].is_zero() {
        return;
    }
    let factor = line[col].clone();
    for (x, p) in line.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *x -= &factor * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{incidence_matrix, Digraph, FlowNetwork};
    use super::*;
    use crate::linalg::rat;
    use crate::space::{RegularSpace, SpaceMode, TuMatrix};
    use std::sync::Arc;

    #[test]
    fn diamond_unit_capacities() {
        let inst = instance(&diamond_network(), SpaceMode::Kernel, &[1; 5]);
        assert_eq!(lp_reference_solve(&inst), ReferenceOptimum::Bounded(rat(2)));
    }

    #[test]
    fn zero_capacities() {
        let inst = instance(&diamond_network(), SpaceMode::Kernel, &[0; 5]);
        assert_eq!(lp_reference_solve(&inst), ReferenceOptimum::Bounded(rat(0)));
    }

    #[test]
    fn two_vertex_coflow() {
        let g = Digraph::numbered(2, vec![(0, 1)]).unwrap();
        let net = FlowNetwork::with_return_arc(g, 0, 1).unwrap();
        let inst = instance(&net, SpaceMode::Rowspace, &[5]);
        assert_eq!(lp_reference_solve(&inst), ReferenceOptimum::Bounded(rat(0)));
    }

    #[test]
    fn unbounded_direction() {
        let m = TuMatrix::new(&[vec![1, 0]]).unwrap();
        let space = Arc::new(RegularSpace::build(m, SpaceMode::Rowspace));
        let inst = Instance::new(space, 0, vec![rat(3)]).unwrap();
        assert_eq!(lp_reference_solve(&inst), ReferenceOptimum::Unbounded);
    }

    #[test]
    fn trivial_space() {
        // kernel of the 1x1 identity is {0}
        let m = TuMatrix::new(&[vec![1, 0], vec![0, 1]]).unwrap();
        let space = Arc::new(RegularSpace::build(m, SpaceMode::Kernel));
        let inst = Instance::new(space, 1, vec![rat(3)]).unwrap();
        assert_eq!(lp_reference_solve(&inst), ReferenceOptimum::Bounded(rat(0)));
    }

    #[test]
    fn fractional_optimum() {
        let half = Rational::new(1.into(), 2.into());
        let net = triangle_direct_network();
        let m = incidence_matrix(net.graph()).unwrap();
        let space = Arc::new(RegularSpace::build(m, SpaceMode::Kernel));
        let inst = Instance::new(space, 3, vec![half.clone(), rat(1), half]).unwrap();
        assert_eq!(lp_reference_solve(&inst), ReferenceOptimum::Bounded(rat(1)));
    }
}
