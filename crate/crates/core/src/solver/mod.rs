//! Maximize `f_r` over feasible members `f` of a regular space.
//!
//! A member `f` is feasible when `0 <= f_j <= c_j` for every `j != r`; the
//! element `r` is uncapacitated. The solver starts from the zero flow and
//! repeatedly augments along a shortest augmenting r-path by the largest
//! feasible step, stopping when no augmenting path is left.

mod graph;
mod oracle;
mod reference;

use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, Rational};
use crate::paths::{self, RPath};
use crate::space::RegularSpace;

pub use graph::{incidence_matrix, Digraph, FlowNetwork};
pub use oracle::{
    shortest_augmenting_path, shortest_augmenting_path_cographic, shortest_augmenting_path_generic,
    shortest_augmenting_path_graphic, OracleKind,
};
pub use reference::{lp_reference_solve, ReferenceOptimum};

/// A max-flow problem over a regular space.
pub struct Instance {
    space: Arc<RegularSpace>,
    r: usize,
    capacities: Vec<Option<Rational>>,
    paths: OnceLock<Vec<RPath>>,
}

impl Instance {
    /// `capacities` lists `c_j` for every `j != r` in increasing order of
    /// `j`, so it has `n - 1` entries.
    pub fn new(space: Arc<RegularSpace>, r: usize, capacities: Vec<Rational>) -> Result<Self> {
        let n = space.ground_size();
        if r >= n {
            return Err(Error::IndexOutOfRange { index: r, size: n });
        }
        if capacities.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: capacities.len(),
            });
        }
        let mut full = Vec::with_capacity(n);
        let mut values = capacities.into_iter();
        for j in 0..n {
            if j == r {
                full.push(None);
                continue;
            }
            let c = values.next().expect("length checked");
            if c.is_negative() {
                return Err(Error::NegativeCapacity {
                    index: j,
                    value: format_rational(&c),
                });
            }
            full.push(Some(c));
        }
        Ok(Self {
            space,
            r,
            capacities: full,
            paths: OnceLock::new(),
        })
    }

    pub fn space(&self) -> &RegularSpace {
        &self.space
    }

    pub fn shared_space(&self) -> Arc<RegularSpace> {
        Arc::clone(&self.space)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ground_size(&self) -> usize {
        self.space.ground_size()
    }

    /// `None` for `r`.
    pub fn capacity(&self, j: usize) -> Option<&Rational> {
        self.capacities[j].as_ref()
    }

    /// The `n - 1` capacities in ground order, skipping `r`.
    pub fn listed_capacities(&self) -> Vec<Rational> {
        self.capacities.iter().flatten().cloned().collect()
    }

    pub fn has_integral_capacities(&self) -> bool {
        self.capacities.iter().flatten().all(Rational::is_integer)
    }

    /// Every r-path of the space, in tie-breaking order. Cached.
    pub fn paths(&self) -> Result<&[RPath]> {
        if let Some(cached) = self.paths.get() {
            return Ok(cached);
        }
        let all = paths::paths_through(&self.space, self.r)?;
        let _ = self.paths.set(all);
        Ok(self.paths.get().expect("just set"))
    }
}

impl std::fmt::Debug for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Instance")
            .field("space", &self.space)
            .field("r", &self.r)
            .field(
                "capacities",
                &self
                    .capacities
                    .iter()
                    .map(|c| c.as_ref().map(format_rational))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowState {
    pub values: Vec<Rational>,
}

impl FlowState {
    pub fn zero(ground_size: usize) -> Self {
        Self {
            values: vec![Rational::zero(); ground_size],
        }
    }

    pub fn objective(&self, r: usize) -> &Rational {
        &self.values[r]
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(Rational::is_integer)
    }
}

/// Membership in the space plus the capacity bounds off `r`.
pub fn is_feasible(f: &[Rational], inst: &Instance) -> bool {
    if f.len() != inst.ground_size() || !inst.space.contains(f).unwrap_or(false) {
        return false;
    }
    (0..f.len()).all(|j| match inst.capacity(j) {
        Some(c) => !f[j].is_negative() && f[j] <= *c,
        None => true,
    })
}

/// True iff `f + eps P` stays feasible for some `eps > 0`.
pub fn is_augmenting(path: &RPath, f: &FlowState, inst: &Instance) -> bool {
    path.vector()
        .entries()
        .iter()
        .all(|&(j, s)| match inst.capacity(j) {
            None => true,
            Some(c) => match s.value() {
                1 => f.values[j] < *c,
                _ => f.values[j].is_positive(),
            },
        })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Finite(Rational),
    /// The path is supported on `r` alone.
    Unbounded,
}

/// Largest `eps` keeping `f + eps P` feasible.
pub fn max_step(path: &RPath, f: &FlowState, inst: &Instance) -> Result<Step> {
    if !is_augmenting(path, f, inst) {
        return Err(Error::NotAugmenting);
    }
    let step = path
        .vector()
        .entries()
        .iter()
        .filter_map(|&(j, s)| {
            let c = inst.capacity(j)?;
            Some(if s.value() == 1 {
                c - &f.values[j]
            } else {
                f.values[j].clone()
            })
        })
        .min();
    Ok(step.map_or(Step::Unbounded, Step::Finite))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based
    pub iteration: usize,
    pub path: RPath,
    pub epsilon: Rational,
    pub objective_after: Rational,
    pub path_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationTrace {
    pub ground_size: usize,
    pub r: usize,
    pub steps: Vec<TraceStep>,
}

impl AugmentationTrace {
    pub fn new(ground_size: usize, r: usize) -> Self {
        Self {
            ground_size,
            r,
            steps: Vec::new(),
        }
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.path_length).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaxFlowOutcome {
    Optimal {
        flow: FlowState,
        trace: AugmentationTrace,
    },
    /// An augmenting path supported on `r` alone was found.
    Unbounded {
        path: RPath,
        flow: FlowState,
        trace: AugmentationTrace,
    },
}

impl MaxFlowOutcome {
    pub fn trace(&self) -> &AugmentationTrace {
        match self {
            MaxFlowOutcome::Optimal { trace, .. } | MaxFlowOutcome::Unbounded { trace, .. } => {
                trace
            }
        }
    }

    pub fn flow(&self) -> &FlowState {
        match self {
            MaxFlowOutcome::Optimal { flow, .. } | MaxFlowOutcome::Unbounded { flow, .. } => flow,
        }
    }

    /// `None` when unbounded.
    pub fn objective(&self) -> Option<&Rational> {
        match self {
            MaxFlowOutcome::Optimal { flow, trace } => Some(flow.objective(trace.r)),
            MaxFlowOutcome::Unbounded { .. } => None,
        }
    }
}

/// Shortest-augmenting-path Ford-Fulkerson from the zero flow.
pub fn max_flow(inst: &Instance, oracle: &OracleKind) -> Result<MaxFlowOutcome> {
    max_flow_observed(inst, oracle, |_, _| Ok(()))
}

/// Like [`max_flow`], calling `observe(f, iteration)` on every flow the
/// oracle is about to be queried on (1-based iteration).
pub fn max_flow_observed<F>(
    inst: &Instance,
    oracle: &OracleKind,
    mut observe: F,
) -> Result<MaxFlowOutcome>
where
    F: FnMut(&FlowState, usize) -> Result<()>,
{
    oracle.check_instance(inst)?;
    let n = inst.ground_size();
    let bound = n * n;
    let mut flow = FlowState::zero(n);
    let mut trace = AugmentationTrace::new(n, inst.r);
    loop {
        let iteration = trace.steps.len() + 1;
        observe(&flow, iteration)?;
        let Some(path) = shortest_augmenting_path(&flow, inst, oracle)? else {
            return Ok(MaxFlowOutcome::Optimal { flow, trace });
        };
        if iteration > bound {
            return Err(Error::IterationGuard {
                bound,
                ground_size: n,
            });
        }
        let epsilon = match max_step(&path, &flow, inst)? {
            Step::Finite(eps) => eps,
            Step::Unbounded => return Ok(MaxFlowOutcome::Unbounded { path, flow, trace }),
        };
        if !epsilon.is_positive() {
            return Err(Error::Invariant(format!(
                "augmenting path {path} admits no positive step"
            )));
        }
        for &(j, s) in path.vector().entries() {
            if s.value() == 1 {
                flow.values[j] += &epsilon;
            } else {
                flow.values[j] -= &epsilon;
            }
        }
        trace.steps.push(TraceStep {
            iteration,
            path_length: path.len(),
            objective_after: flow.objective(inst.r).clone(),
            path,
            epsilon,
        });
    }
}

/// True iff no r-path augments `f`, which certifies that `f` is optimal.
pub fn verify_optimality(f: &FlowState, inst: &Instance) -> Result<bool> {
    Ok(!inst.paths()?.iter().any(|p| is_augmenting(p, f, inst)))
}

/// Every augmenting r-path of minimum length for `f`.
pub fn shortest_augmenting_paths(f: &FlowState, inst: &Instance) -> Result<Vec<RPath>> {
    let augmenting: Vec<&RPath> = inst
        .paths()?
        .iter()
        .filter(|p| is_augmenting(p, f, inst))
        .collect();
    let Some(shortest) = augmenting.iter().map(|p| p.len()).min() else {
        return Ok(Vec::new());
    };
    Ok(augmenting
        .into_iter()
        .filter(|p| p.len() == shortest)
        .cloned()
        .collect())
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::linalg::rat;
    use crate::space::SpaceMode;

    /// Arcs sa, sb, ab, at, bt over s=0, a=1, b=2, t=3, plus r = (t, s).
    pub fn diamond_network() -> FlowNetwork {
        let g = Digraph::numbered(4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        FlowNetwork::with_return_arc(g, 0, 3).unwrap()
    }

    /// Arcs sa, at, st over s=0, a=1, t=2, plus r = (t, s).
    pub fn triangle_direct_network() -> FlowNetwork {
        let g = Digraph::numbered(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        FlowNetwork::with_return_arc(g, 0, 2).unwrap()
    }

    pub fn instance(net: &FlowNetwork, mode: SpaceMode, caps: &[i64]) -> Instance {
        let m = incidence_matrix(net.graph()).unwrap();
        let space = Arc::new(RegularSpace::build(m, mode));
        Instance::new(
            space,
            net.return_arc(),
            caps.iter().copied().map(rat).collect(),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::linalg::rat;
    use crate::space::{SignedVector, SpaceMode, TuMatrix};

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().copied().map(rat).collect()
    }

    fn triangle_instance() -> Instance {
        let m = TuMatrix::new(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        let space = Arc::new(RegularSpace::build(m, SpaceMode::Kernel));
        Instance::new(space, 2, ints(&[1, 1])).unwrap()
    }

    #[test]
    fn instance_validation() {
        let m = TuMatrix::new(&[vec![1, -1]]).unwrap();
        let space = Arc::new(RegularSpace::build(m, SpaceMode::Kernel));
        assert!(matches!(
            Instance::new(space.clone(), 2, ints(&[1])),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            Instance::new(space.clone(), 1, ints(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Instance::new(space, 1, ints(&[-1])),
            Err(Error::NegativeCapacity { .. })
        ));
    }

    #[test]
    fn feasibility() {
        let inst = triangle_instance();
        assert!(is_feasible(&ints(&[0, 0, 0]), &inst));
        assert!(is_feasible(&ints(&[1, 1, 1]), &inst));
        assert!(!is_feasible(&ints(&[2, 2, 2]), &inst));
        assert!(!is_feasible(&ints(&[1, 0, 0]), &inst));
    }

    #[test]
    fn augmenting_and_steps() {
        let inst = triangle_instance();
        let p = RPath::new(
            inst.space(),
            SignedVector::from_values(&[1, 1, 1]).unwrap(),
            2,
        )
        .unwrap();
        let zero = FlowState::zero(3);
        assert!(is_augmenting(&p, &zero, &inst));
        assert_eq!(max_step(&p, &zero, &inst).unwrap(), Step::Finite(rat(1)));
        let full = FlowState {
            values: ints(&[1, 1, 1]),
        };
        assert!(!is_augmenting(&p, &full, &inst));
        assert_eq!(max_step(&p, &full, &inst), Err(Error::NotAugmenting));

        let diamond = instance(&diamond_network(), SpaceMode::Kernel, &[1; 5]);
        let zero = FlowState::zero(6);
        let through_ab = RPath::new(
            diamond.space(),
            SignedVector::from_values(&[1, 0, 1, 0, 1, 1]).unwrap(),
            5,
        )
        .unwrap();
        assert_eq!(
            max_step(&through_ab, &zero, &diamond).unwrap(),
            Step::Finite(rat(1))
        );
        let backwards = RPath::new(
            diamond.space(),
            SignedVector::from_values(&[0, 1, -1, 1, 0, 1]).unwrap(),
            5,
        )
        .unwrap();
        assert!(!is_augmenting(&backwards, &zero, &diamond));
    }

    #[test]
    fn unbounded_when_r_is_alone() {
        // row space of [1 0]: contains the unit vector at r = 0
        let m = TuMatrix::new(&[vec![1, 0]]).unwrap();
        let space = Arc::new(RegularSpace::build(m, SpaceMode::Rowspace));
        let inst = Instance::new(space, 0, ints(&[3])).unwrap();
        let p = RPath::new(inst.space(), SignedVector::from_values(&[1, 0]).unwrap(), 0).unwrap();
        assert_eq!(
            max_step(&p, &FlowState::zero(2), &inst).unwrap(),
            Step::Unbounded
        );
        let outcome = max_flow(&inst, &OracleKind::Generic).unwrap();
        assert!(matches!(outcome, MaxFlowOutcome::Unbounded { .. }));
        assert_eq!(outcome.objective(), None);
    }

    #[test]
    fn diamond_max_flow() {
        let inst = instance(&diamond_network(), SpaceMode::Kernel, &[1; 5]);
        let outcome = max_flow(&inst, &OracleKind::Generic).unwrap();
        assert_eq!(outcome.objective(), Some(&rat(2)));
        assert!(verify_optimality(outcome.flow(), &inst).unwrap());
        assert!(!verify_optimality(&FlowState::zero(6), &inst).unwrap());
        assert_eq!(outcome.trace().lengths(), vec![3, 3]);
    }

    #[test]
    fn zero_capacities() {
        let inst = instance(&diamond_network(), SpaceMode::Kernel, &[0; 5]);
        let outcome = max_flow(&inst, &OracleKind::Generic).unwrap();
        assert_eq!(outcome.objective(), Some(&rat(0)));
        assert!(outcome.trace().steps.is_empty());
        assert!(verify_optimality(&FlowState::zero(6), &inst).unwrap());
    }

    #[test]
    fn triangle_with_direct_arc() {
        let inst = instance(&triangle_direct_network(), SpaceMode::Kernel, &[1, 1, 1]);
        let outcome = max_flow(&inst, &OracleKind::Generic).unwrap();
        assert_eq!(outcome.objective(), Some(&rat(2)));
        assert_eq!(outcome.trace().lengths(), vec![2, 3]);
        assert_eq!(outcome.trace().steps[0].path.to_string(), "+3 +4");
    }

    #[test]
    fn fractional_capacities() {
        let half = Rational::new(1.into(), 2.into());
        let net = triangle_direct_network();
        let space = Arc::new(RegularSpace::build(
            incidence_matrix(net.graph()).unwrap(),
            SpaceMode::Kernel,
        ));
        let inst = Instance::new(space, 3, vec![half.clone(), rat(1), half.clone()]).unwrap();
        let outcome = max_flow(&inst, &OracleKind::Generic).unwrap();
        assert_eq!(outcome.objective(), Some(&rat(1)));
        assert!(!inst.has_integral_capacities());
    }
}
