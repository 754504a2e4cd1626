//! Dual graphs of curve sets and a backtracking search for automorphisms.

use super::gram::GramLattice;

#[derive(Clone, Debug)]
pub struct Graph {
    pub adj: Vec<Vec<bool>>,
}

impl Graph {
    /// Vertices are the basis vectors; an edge joins two with nonzero pairing.
    pub fn from_gram(l: &GramLattice) -> Graph {
        let n = l.dim();
        let adj = (0..n).map(|i| (0..n).map(|j| i != j && l.gram[i][j] != 0).collect()).collect();
        Graph { adj }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut adj = vec![vec![false; n]; n];
        for &(a, b) in edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        Graph { adj }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&b| b).count()
    }

    pub fn is_automorphism(&self, p: &[usize]) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.adj[i][j] == self.adj[p[i]][p[j]]))
    }

    /// Vertex order in which each vertex (after the first of its component)
    /// has an earlier neighbour, so partial maps prune quickly.
    fn search_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let start = (0..n).filter(|&v| !seen[v]).max_by_key(|&v| self.degree(v)).expect("unseen vertex");
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for w in 0..n {
                    if self.adj[v][w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }

    /// Calls `visit` on every automorphism until it returns `true`; returns
    /// that automorphism.
    pub fn search(&self, mut visit: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
        let n = self.len();
        let order = self.search_order();
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let mut found = None;
        self.extend(&order, 0, &mut image, &mut used, &mut visit, &mut found);
        found
    }

    fn extend(
        &self,
        order: &[usize],
        k: usize,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut impl FnMut(&[usize]) -> bool,
        found: &mut Option<Vec<usize>>,
    ) -> bool {
        if k == order.len() {
            if visit(image) {
                *found = Some(image.clone());
                return true;
            }
            return false;
        }
        let v = order[k];
        for w in 0..self.len() {
            if used[w] || self.degree(w) != self.degree(v) {
                continue;
            }
            let consistent = order[..k].iter().all(|&u| self.adj[v][u] == self.adj[w][image[u]]);
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if self.extend(order, k + 1, image, used, visit, found) {
                return true;
            }
            used[w] = false;
            image[v] = usize::MAX;
        }
        false
    }

    pub fn automorphism_count(&self) -> usize {
        let mut count = 0;
        self.search(|_| {
            count += 1;
            false
        });
        count
    }
}

/// Order of a permutation.
pub fn order(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut lcm = 1;
    for s in 0..p.len() {
        let mut len = 0;
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            v = p[v];
            len += 1;
        }
        if len > 0 {
            lcm = num_integer::lcm(lcm, len);
        }
    }
    lcm
}

/// Whether `p` maps the set `a` onto `b` and `b` onto `a`.
pub fn swaps(p: &[usize], a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&v| b.contains(&p[v])) && b.iter().all(|&v| a.contains(&p[v]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    #[test]
    fn five_cycle() {
        let g = cycle(5);
        assert_eq!(g.automorphism_count(), 10);
        let r = g.search(|p| order(p) == 5).unwrap();
        assert!(g.is_automorphism(&r));
        assert!(g.search(|p| order(p) == 3).is_none());
    }

    #[test]
    fn path_swap() {
        // 0-1-2-3: the reflection swaps {0,1} and {3,2}
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.automorphism_count(), 2);
        let r = g.search(|p| order(p) == 2 && swaps(p, &[0, 1], &[2, 3])).unwrap();
        assert_eq!(r, vec![3, 2, 1, 0]);
    }

    #[test]
    fn order_of_permutations() {
        assert_eq!(order(&[1, 2, 0, 4, 3]), 6);
        assert_eq!(order(&[0, 1, 2]), 1);
    }
}
