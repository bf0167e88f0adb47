//! Directed graphs with a group action and the Bux–Morse criterion for
//! contractibility of orbit spaces of flag complexes.

use serde::Serialize;

use super::chains::GPoset;
use super::CatError;

/// A finite directed graph with a group acting by graph automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGGraph {
    names: Vec<String>,
    edges: Vec<Vec<bool>>,
    action: Vec<Vec<usize>>,
}

impl DirectedGGraph {
    pub fn new(names: Vec<String>, edges: Vec<Vec<bool>>, action: Vec<Vec<usize>>) -> Result<Self, CatError> {
        let n = names.len();
        if edges.len() != n || edges.iter().any(|r| r.len() != n) {
            return Err(CatError::Invalid("edge matrix has the wrong shape".into()));
        }
        for (u, perm) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            if perm.len() != n || perm.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(CatError::Invalid(format!("group element {u} is not a permutation")));
            }
            for i in 0..n {
                for j in 0..n {
                    if edges[i][j] != edges[perm[i]][perm[j]] {
                        return Err(CatError::Invalid(format!("group element {u} does not preserve edges")));
                    }
                }
            }
        }
        let g = DirectedGGraph { names, edges, action };
        if g.has_cycle() {
            return Err(CatError::Invalid("graph has a directed cycle".into()));
        }
        Ok(g)
    }

    /// Edges `x → y` for `y < x`.
    pub fn from_poset(poset: &GPoset) -> Self {
        let n = poset.len();
        let edges = (0..n).map(|x| (0..n).map(|y| poset.lt(y, x)).collect()).collect();
        let action = (0..poset.group_order()).map(|u| (0..n).map(|i| poset.act(u, i)).collect()).collect();
        DirectedGGraph { names: poset.names().to_vec(), edges, action }
    }

    fn has_cycle(&self) -> bool {
        let n = self.len();
        let mut indeg: Vec<usize> = (0..n).map(|j| (0..n).filter(|&i| self.edges[i][j]).count()).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&j| indeg[j] == 0).collect();
        let mut removed = 0;
        while let Some(i) = ready.pop() {
            removed += 1;
            for j in 0..n {
                if self.edges[i][j] {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        removed != n
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn edge(&self, x: usize, y: usize) -> bool {
        self.edges[x][y]
    }

    fn adjacent(&self, x: usize, y: usize) -> bool {
        self.edges[x][y] || self.edges[y][x]
    }

    /// Vertices without outgoing edges.
    pub fn minimal_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !(0..self.len()).any(|y| self.edges[x][y])).collect()
    }

    /// Vertices of the flag complex's simplices: pairwise adjacent vertex sets.
    pub fn flag_simplices(&self) -> Vec<Vec<usize>> {
        fn grow(g: &DirectedGGraph, s: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(s.clone());
            let last = *s.last().expect("nonempty");
            for v in last + 1..g.len() {
                if s.iter().all(|&x| g.adjacent(x, v)) {
                    s.push(v);
                    grow(g, s, out);
                    s.pop();
                }
            }
        }
        let mut out = Vec::new();
        for v in 0..self.len() {
            grow(self, &mut vec![v], &mut out);
        }
        out.sort();
        out
    }

    /// `Γ↓^σ`: common targets of edges out of every vertex of `sigma`.
    pub fn descending_link(&self, sigma: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|&y| sigma.iter().all(|&x| self.edges[x][y])).collect()
    }

    /// Minimal elements of the subgraph induced on `set`.
    fn minimal_in(&self, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&x| !set.iter().any(|&y| self.edges[x][y])).collect()
    }

    fn setwise_stabilizer(&self, sigma: &[usize]) -> Vec<usize> {
        (0..self.action.len()).filter(|&u| sigma.iter().all(|&x| sigma.contains(&self.action[u][x]))).collect()
    }

    fn transitive_on(&self, group: &[usize], set: &[usize]) -> bool {
        match set.first() {
            None => false,
            Some(&x) => set.iter().all(|&y| group.iter().any(|&u| self.action[u][x] == y)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexFailure {
    pub simplex: Vec<usize>,
    pub minimal_in_link: Vec<usize>,
    pub stabilizer_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuxReport {
    pub minimal_vertices: Vec<usize>,
    pub transitive_on_minimal: bool,
    pub non_minimal_simplices: usize,
    pub link_failures: Vec<SimplexFailure>,
    pub links_pass: bool,
    pub pass: bool,
}

/// Checks transitivity on minimal vertices, and for every simplex containing no
/// minimal vertex, transitivity of its stabilizer on the minimal vertices of its
/// descending link. An empty descending link counts as a failure.
pub fn bux_check(graph: &DirectedGGraph) -> BuxReport {
    let everything: Vec<usize> = (0..graph.action.len()).collect();
    let minimal = graph.minimal_vertices();
    let transitive_on_minimal = graph.transitive_on(&everything, &minimal);
    let mut non_minimal = 0;
    let mut failures = Vec::new();
    for sigma in graph.flag_simplices() {
        if sigma.iter().any(|x| minimal.contains(x)) {
            continue;
        }
        non_minimal += 1;
        let link_min = graph.minimal_in(&graph.descending_link(&sigma));
        let stab = graph.setwise_stabilizer(&sigma);
        if !graph.transitive_on(&stab, &link_min) {
            failures.push(SimplexFailure { simplex: sigma, minimal_in_link: link_min, stabilizer_order: stab.len() });
        }
    }
    let links_pass = failures.is_empty();
    BuxReport {
        minimal_vertices: minimal,
        transitive_on_minimal,
        non_minimal_simplices: non_minimal,
        link_failures: failures,
        links_pass,
        pass: transitive_on_minimal && links_pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_vertices_fail_transitivity() {
        let g = DirectedGGraph::new(vec!["a".into(), "b".into()], vec![vec![false; 2]; 2], vec![vec![0, 1]]).unwrap();
        let r = bux_check(&g);
        assert!(!r.transitive_on_minimal);
        assert!(r.links_pass);
        assert!(!r.pass);
        let swapped =
            DirectedGGraph::new(vec!["a".into(), "b".into()], vec![vec![false; 2]; 2], vec![vec![0, 1], vec![1, 0]])
                .unwrap();
        assert!(bux_check(&swapped).pass);
    }

    #[test]
    fn vee_with_swap_passes() {
        // top → a, top → b, swapped
        let edges = vec![vec![false, true, true], vec![false; 3], vec![false; 3]];
        let g = DirectedGGraph::new(
            vec!["top".into(), "a".into(), "b".into()],
            edges.clone(),
            vec![vec![0, 1, 2], vec![0, 2, 1]],
        )
        .unwrap();
        let r = bux_check(&g);
        assert_eq!(r.minimal_vertices, vec![1, 2]);
        assert_eq!(r.non_minimal_simplices, 1);
        assert!(r.pass);
        let plain =
            DirectedGGraph::new(vec!["top".into(), "a".into(), "b".into()], edges, vec![vec![0, 1, 2]]).unwrap();
        assert!(!bux_check(&plain).pass);
    }

    #[test]
    fn cycles_and_bad_actions_are_rejected() {
        let cyc = vec![vec![false, true], vec![true, false]];
        assert!(DirectedGGraph::new(vec!["a".into(), "b".into()], cyc, vec![vec![0, 1]]).is_err());
        let edge = vec![vec![false, true], vec![false, false]];
        assert!(DirectedGGraph::new(vec!["a".into(), "b".into()], edge, vec![vec![1, 0]]).is_err());
    }
}
