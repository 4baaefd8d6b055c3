//! The dependency graph between parties induced by `T`.

use super::plan::MbqcPlan;
use crate::error::{Error, Result};

/// Edge `(j, k)` means the setting of party `k` depends on the outcome of `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn temporal_graph(plan: &MbqcPlan) -> TemporalGraph {
    let edges = plan
        .t
        .iter()
        .enumerate()
        .flat_map(|(k, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(move |(j, _)| (j, k))
        })
        .collect();
    TemporalGraph {
        vertices: plan.n_parties,
        edges,
    }
}

/// Number of vertices on the longest directed path; 1 for a graph without
/// edges (and 0 for an empty one).
pub fn longest_path(graph: &TemporalGraph) -> Result<usize> {
    let n = graph.vertices;
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in &graph.edges {
        out[a].push(b);
        indegree[b] += 1;
    }
    let mut depth = vec![1usize; n];
    let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut done = 0;
    while let Some(v) = ready.pop() {
        done += 1;
        for &w in &out[v] {
            depth[w] = depth[w].max(depth[v] + 1);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    if done < n {
        let stuck = (0..n)
            .find(|&v| indegree[v] > 0)
            .expect("some vertex is on a cycle");
        return Err(Error::Cycle(stuck));
    }
    Ok(depth.into_iter().max().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(vertices: usize, edges: &[(usize, usize)]) -> TemporalGraph {
        TemporalGraph {
            vertices,
            edges: edges.to_vec(),
        }
    }

    #[test]
    fn path_lengths() {
        assert_eq!(longest_path(&graph(5, &[])).unwrap(), 1);
        assert_eq!(
            longest_path(&graph(4, &[(0, 1), (1, 2), (2, 3)])).unwrap(),
            4
        );
        assert_eq!(
            longest_path(&graph(5, &[(0, 1), (2, 3), (3, 4)])).unwrap(),
            3
        );
        assert!(matches!(
            longest_path(&graph(2, &[(0, 1), (1, 0)])),
            Err(Error::Cycle(_))
        ));
    }
}
