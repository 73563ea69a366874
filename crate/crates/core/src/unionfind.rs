//! Union-find with least-index representatives.
//!
//! The root of every class is its smallest member, so partitions and chosen
//! representatives are deterministic.

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut cur = i;
        while self.parent[cur] != r {
            let next = self.parent[cur];
            self.parent[cur] = r;
            cur = next;
        }
        r
    }

    pub fn union(&mut self, i: usize, j: usize) {
        let ri = self.root(i);
        let rj = self.root(j);
        match ri.cmp(&rj) {
            std::cmp::Ordering::Less => self.parent[rj] = ri,
            std::cmp::Ordering::Greater => self.parent[ri] = rj,
            std::cmp::Ordering::Equal => {}
        }
    }

    #[cfg(test)]
    pub fn same(&mut self, i: usize, j: usize) -> bool {
        self.root(i) == self.root(j)
    }

    /// Blocks sorted by representative; members within a block ascend.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> =
            std::collections::BTreeMap::new();
        for i in 0..n {
            let r = self.root(i);
            by_root.entry(r).or_default().push(i);
        }
        by_root.into_values().collect()
    }
}
