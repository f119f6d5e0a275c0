//! Small shared helpers: union-find and canonical quotient maps.

use std::collections::{BTreeMap, BTreeSet};

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // Keep the smaller index as root so the lexicographically least
            // member of a sorted universe represents its class.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Total quotient map on a name set: every name goes to the
/// lexicographically least member of its merge class.
pub(crate) fn quotient_map<'a, I>(names: &BTreeSet<String>, pairs: I) -> BTreeMap<String, String>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let sorted: Vec<&String> = names.iter().collect();
    let index: BTreeMap<&str, usize> = sorted
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut uf = UnionFind::new(sorted.len());
    for (a, b) in pairs {
        uf.union(index[a], index[b]);
    }
    sorted
        .iter()
        .enumerate()
        .map(|(i, s)| ((*s).clone(), sorted[uf.find(i)].clone()))
        .collect()
}
