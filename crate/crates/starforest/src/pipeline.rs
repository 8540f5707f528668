//! End-to-end construction: from a bipartite graph meeting the degree
//! condition to a verified ascending star-forest decomposition.
//!
//! The chain is: left-justify the graph, build a staircase-supported
//! ascending matrix for its degree sequence, color the realized multigraph
//! sequentially, read the color classes back as forests of the reduced
//! graph, and transfer them to the original graph by list edge coloring.
//! Every result is re-verified before it is returned.

use serde::Serialize;

use crate::error::{Error, Result, TheoremStressReport};
use crate::graph::{
    triangular_order, verify_asd, BipartiteGraph, Decomposition, DegreeVector, VerificationReport,
};
use crate::listcolor::{extend_decomposition, ExtensionMatrix};
use crate::matrix::{construct_with_support, AscendingMatrix};
use crate::multigraph::{AuxMultigraph, EdgeColoring};
use crate::oracle::{brute_force, OracleQuery, PartShape, DEFAULT_EDGE_CAP};
use crate::reduction::{check_sufficient, reduce, ReducedGraph};
use crate::sequential::{forests_from_coloring, sequential_color_detailed, SolverKind};

pub use crate::sequential::SolverMode;

/// How the decomposition was ultimately found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverPath {
    Heuristic,
    Exact,
    Oracle,
}

impl From<SolverKind> for SolverPath {
    fn from(kind: SolverKind) -> Self {
        match kind {
            SolverKind::Heuristic => SolverPath::Heuristic,
            SolverKind::Exact => SolverPath::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub solver: SolverMode,
    /// Keep going on inputs that fail the sufficient condition by handing
    /// small instances to the exhaustive oracle. The condition is not
    /// necessary, so such inputs may well decompose.
    pub best_effort: bool,
    pub oracle_cap: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            solver: SolverMode::Hybrid,
            best_effort: false,
            oracle_cap: DEFAULT_EDGE_CAP,
        }
    }
}

/// Per-stage artifacts of a pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineTrace {
    /// Nondecreasing X-degree sequence of the reduced graph.
    pub degrees: DegreeVector,
    pub order: usize,
    pub matrix: Option<AscendingMatrix>,
    pub coloring: Option<EdgeColoring>,
    pub reduced_decomposition: Option<Decomposition>,
    pub extension: Option<ExtensionMatrix>,
}

#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub decomposition: Decomposition,
    pub report: VerificationReport,
    pub trace: PipelineTrace,
    pub solver_path: SolverPath,
}

fn condition_violation(d: &[usize], n: usize) -> Error {
    let k = d.len();
    for i in 0..k {
        let bound = n.saturating_sub(i);
        if d[k - 1 - i] < bound {
            return Error::ConditionFailed {
                position: k - i,
                value: d[k - 1 - i],
                bound,
            };
        }
    }
    unreachable!("called only when the condition fails")
}

/// Decompose the reduced graph with degree sequence `d` and order `n`.
/// Requires the sufficient condition; a sequential-coloring failure on such
/// an input contradicts a guaranteed step and surfaces as `TheoremStress`
/// with the full instance attached.
pub fn decompose_reduced(d: &[usize], n: usize) -> Result<PipelineResult> {
    decompose_reduced_with(d, n, SolverMode::Hybrid)
}

pub fn decompose_reduced_with(d: &[usize], n: usize, mode: SolverMode) -> Result<PipelineResult> {
    if !check_sufficient(d, n)? {
        return Err(condition_violation(d, n));
    }
    let a = construct_with_support(d, n)?;
    let h = AuxMultigraph::from_matrix(&a);
    let (coloring, kind) = match sequential_color_detailed(&h, d, mode) {
        Ok(found) => found,
        Err(Error::Unsatisfiable) => {
            return Err(Error::TheoremStress(Box::new(TheoremStressReport {
                degrees: d.to_vec(),
                order: n,
                matrix: a.as_rows().to_vec(),
                note: "no sequential coloring for the multigraph of a condition-satisfying matrix"
                    .into(),
            })));
        }
        Err(other) => return Err(other),
    };
    let dec = forests_from_coloring(&a, &coloring, d);
    let host = ReducedGraph::from_degrees(d)?;
    let report = verify_asd(host.graph(), &dec);
    if !report.overall() {
        return Err(Error::TheoremStress(Box::new(TheoremStressReport {
            degrees: d.to_vec(),
            order: n,
            matrix: a.as_rows().to_vec(),
            note: format!("assembled decomposition failed verification: {report:?}"),
        })));
    }
    Ok(PipelineResult {
        decomposition: dec.clone(),
        report,
        trace: PipelineTrace {
            degrees: d.to_vec(),
            order: n,
            matrix: Some(a),
            coloring: Some(coloring),
            reduced_decomposition: Some(dec),
            extension: None,
        },
        solver_path: kind.into(),
    })
}

/// Decompose an arbitrary bipartite graph with a triangular number of
/// edges. Inputs failing the degree condition are rejected unless
/// `best_effort` is set, in which case the exhaustive oracle takes over at
/// desk scale (trying the reduced graph first, then the graph itself).
pub fn decompose(g: &BipartiteGraph) -> Result<PipelineResult> {
    decompose_with(g, &Options::default())
}

pub fn decompose_with(g: &BipartiteGraph, opts: &Options) -> Result<PipelineResult> {
    let n = triangular_order(g.edge_count())?;
    let red = reduce(g);
    let d = red.degrees();

    if check_sufficient(&d, n)? {
        let inner = decompose_reduced_with(&d, n, opts.solver)?;
        let reduced_dec = inner
            .trace
            .reduced_decomposition
            .clone()
            .expect("reduced runs always record their decomposition");
        return finish(g, &d, n, reduced_dec, inner.trace, inner.solver_path);
    }

    if !opts.best_effort {
        return Err(condition_violation(&d, n));
    }

    // Oracle route. A decomposition of the reduced graph extends to g, so
    // try the small structured instance first.
    let reduced_query = OracleQuery {
        graph: red.graph().clone(),
        sizes: (1..=n).collect(),
        shape: PartShape::StarForest,
        require_ascending: true,
        cap: opts.oracle_cap,
    };
    if let Some(reduced_dec) = brute_force(&reduced_query)? {
        let trace = PipelineTrace {
            degrees: d.clone(),
            order: n,
            matrix: None,
            coloring: None,
            reduced_decomposition: Some(reduced_dec.clone()),
            extension: None,
        };
        return finish(g, &d, n, reduced_dec, trace, SolverPath::Oracle);
    }
    // The reduced graph not decomposing does not settle g itself.
    let direct_query = OracleQuery {
        graph: g.clone(),
        sizes: (1..=n).collect(),
        shape: PartShape::StarForest,
        require_ascending: true,
        cap: opts.oracle_cap,
    };
    match brute_force(&direct_query)? {
        Some(dec) => {
            let report = verify_asd(g, &dec);
            if !report.overall() {
                return Err(Error::InvalidDecomposition(format!(
                    "oracle witness failed verification: {report:?}"
                )));
            }
            Ok(PipelineResult {
                decomposition: dec,
                report,
                trace: PipelineTrace {
                    degrees: d,
                    order: n,
                    matrix: None,
                    coloring: None,
                    reduced_decomposition: None,
                    extension: None,
                },
                solver_path: SolverPath::Oracle,
            })
        }
        None => Err(Error::NoDecomposition),
    }
}

fn finish(
    g: &BipartiteGraph,
    d: &[usize],
    n: usize,
    reduced_dec: Decomposition,
    trace: PipelineTrace,
    solver_path: SolverPath,
) -> Result<PipelineResult> {
    let dec = extend_decomposition(g, &reduced_dec)?;
    let report = verify_asd(g, &dec);
    if !report.overall() {
        return Err(Error::TheoremStress(Box::new(TheoremStressReport {
            degrees: d.to_vec(),
            order: n,
            matrix: trace
                .matrix
                .as_ref()
                .map(|a| a.as_rows().to_vec())
                .unwrap_or_default(),
            note: format!("extended decomposition failed verification: {report:?}"),
        })));
    }
    let extension = ExtensionMatrix::from_decomposition(reduce(g).graph().x_count(), &reduced_dec);
    Ok(PipelineResult {
        decomposition: dec,
        report,
        trace: PipelineTrace {
            extension: Some(extension),
            reduced_decomposition: Some(reduced_dec),
            ..trace
        },
        solver_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Side;
    use crate::oracle::random_graph;

    #[test]
    fn single_center_splits_into_stars() {
        let result = decompose_reduced(&[6], 3).unwrap();
        let sizes: Vec<usize> = result
            .decomposition
            .forests()
            .iter()
            .map(|f| f.edge_count())
            .collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(result.report.overall());
    }

    #[test]
    fn staircase_reference_instance() {
        let result = decompose_reduced(&[4, 6, 9, 9], 7).unwrap();
        assert!(result.report.overall());
        let a = result.trace.matrix.as_ref().unwrap();
        // per-forest center degrees are exactly the matrix columns
        for (j, forest) in result.decomposition.forests().iter().enumerate() {
            assert_eq!(forest.center_degrees(4), a.column(j + 1));
        }
    }

    #[test]
    fn rejects_failing_sequences_without_best_effort() {
        assert!(matches!(
            decompose_reduced(&[1, 2, 3, 3, 6], 5),
            Err(Error::ConditionFailed { .. })
        ));
        let red = ReducedGraph::from_degrees(&[1, 2, 3, 3, 6]).unwrap();
        assert!(matches!(
            decompose(red.graph()),
            Err(Error::ConditionFailed { .. })
        ));
    }

    #[test]
    fn best_effort_falls_back_to_the_oracle() {
        let red = ReducedGraph::from_degrees(&[1, 2, 3, 3, 6]).unwrap();
        let opts = Options {
            best_effort: true,
            ..Options::default()
        };
        let result = decompose_with(red.graph(), &opts).unwrap();
        assert_eq!(result.solver_path, SolverPath::Oracle);
        assert!(result.report.overall());
    }

    #[test]
    fn non_triangular_inputs_are_rejected() {
        let g = BipartiteGraph::new(2, 2, [(1, 1), (1, 2), (2, 1), (2, 2)]).unwrap();
        assert!(matches!(decompose(&g), Err(Error::NotTriangular(4))));
    }

    #[test]
    fn random_instance_round_trip() {
        let g = random_graph(&[9, 9, 6, 4], 9, 1).unwrap();
        assert_eq!(g.degree_sequence(Side::X), vec![4, 6, 9, 9]);
        let result = decompose(&g).unwrap();
        assert!(result.report.overall());
        assert_eq!(result.decomposition.len(), 7);
        // the trace carries the reduced-side artifacts
        assert!(result.trace.matrix.is_some());
        assert!(result.trace.extension.is_some());
    }

    #[test]
    fn reduced_inputs_keep_their_degree_vectors() {
        let red = ReducedGraph::from_degrees(&[4, 6, 9, 9]).unwrap();
        let result = decompose(red.graph()).unwrap();
        let inner = decompose_reduced(&[4, 6, 9, 9], 7).unwrap();
        for (f, f2) in result
            .decomposition
            .forests()
            .iter()
            .zip(inner.decomposition.forests())
        {
            assert_eq!(f.center_degrees(4), f2.center_degrees(4));
        }
    }
}
