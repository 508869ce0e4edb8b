use crate::error::{Error, Result};
use crate::space::{SpaceMode, TuMatrix};

/// A directed multigraph without self-loops. Vertices are identified by
/// position; `labels` keeps the names they were read under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<String>,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(labels: Vec<String>, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for (j, &(u, v)) in arcs.iter().enumerate() {
            if u >= labels.len() || v >= labels.len() {
                return Err(Error::Graph(format!(
                    "arc {} references a vertex outside 1..={}",
                    j + 1,
                    labels.len()
                )));
            }
            if u == v {
                return Err(Error::Graph(format!(
                    "arc {} is a self-loop at {}",
                    j + 1,
                    labels[u]
                )));
            }
        }
        Ok(Self { labels, arcs })
    }

    /// Vertices labelled `1..=count`.
    pub fn numbered(count: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        Self::new((1..=count).map(|i| i.to_string()).collect(), arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc(&self, j: usize) -> (usize, usize) {
        self.arcs[j]
    }
}

/// Vertex-arc incidence matrix: the column of arc `(u, v)` has -1 in row
/// `u` (tail) and +1 in row `v` (head).
pub fn incidence_matrix(graph: &Digraph) -> Result<TuMatrix> {
    if graph.vertex_count() == 0 || graph.arc_count() == 0 {
        return Err(Error::Graph(
            "graph needs at least one vertex and one arc".into(),
        ));
    }
    let mut rows = vec![vec![0i64; graph.arc_count()]; graph.vertex_count()];
    for (j, &(u, v)) in graph.arcs().iter().enumerate() {
        rows[u][j] = -1;
        rows[v][j] = 1;
    }
    TuMatrix::new(&rows)
}

/// A digraph with a distinguished return arc `r = (sink, source)`, kept
/// alongside graph-derived instances for the specialized oracles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    graph: Digraph,
    source: usize,
    sink: usize,
    return_arc: usize,
}

impl FlowNetwork {
    pub fn new(graph: Digraph, source: usize, sink: usize, return_arc: usize) -> Result<Self> {
        if source >= graph.vertex_count() || sink >= graph.vertex_count() {
            return Err(Error::Graph("source or sink is not a vertex".into()));
        }
        if source == sink {
            return Err(Error::Graph("source and sink coincide".into()));
        }
        if return_arc >= graph.arc_count() || graph.arc(return_arc) != (sink, source) {
            return Err(Error::Graph(format!(
                "return arc {} must run from the sink to the source",
                return_arc + 1
            )));
        }
        Ok(Self {
            graph,
            source,
            sink,
            return_arc,
        })
    }

    /// Appends the return arc `(sink, source)` as the last arc.
    pub fn with_return_arc(mut graph: Digraph, source: usize, sink: usize) -> Result<Self> {
        graph.arcs.push((sink, source));
        let r = graph.arcs.len() - 1;
        Self::new(graph, source, sink, r)
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn return_arc(&self) -> usize {
        self.return_arc
    }

    /// Fails unless `generator` is this graph's incidence matrix and `r` is
    /// its return arc.
    pub(crate) fn check_consistent(
        &self,
        generator: &TuMatrix,
        r: usize,
        mode: SpaceMode,
        required: SpaceMode,
    ) -> Result<()> {
        if mode != required {
            return Err(Error::OracleMismatch(format!(
                "oracle needs a {required} instance, found {mode}"
            )));
        }
        if r != self.return_arc || *generator != incidence_matrix(&self.graph)? {
            return Err(Error::Graph(
                "metadata inconsistent with the instance's incidence matrix".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_arc_column() {
        let g = Digraph::new(vec!["s".into(), "t".into()], vec![(0, 1)]).unwrap();
        assert_eq!(
            incidence_matrix(&g).unwrap().to_i64_rows(),
            vec![vec![-1], vec![1]]
        );
    }

    #[test]
    fn triangle_columns() {
        let g = Digraph::numbered(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = incidence_matrix(&g).unwrap();
        for j in 0..3 {
            let col: Vec<i8> = (0..3).map(|i| m.get(i, j)).collect();
            assert_eq!(col.iter().filter(|&&x| x == -1).count(), 1);
            assert_eq!(col.iter().filter(|&&x| x == 1).count(), 1);
        }
        assert!(m.verify_tu(8).unwrap().is_unimodular());
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Digraph::numbered(2, vec![(0, 2)]),
            Err(Error::Graph(_))
        ));
        assert!(matches!(
            Digraph::numbered(2, vec![(1, 1)]),
            Err(Error::Graph(_))
        ));
        let g = Digraph::numbered(2, vec![(0, 1)]).unwrap();
        assert!(FlowNetwork::with_return_arc(g.clone(), 0, 0).is_err());
        let net = FlowNetwork::with_return_arc(g, 0, 1).unwrap();
        assert_eq!(net.return_arc(), 1);
        assert_eq!(net.graph().arc(1), (1, 0));
    }
}
