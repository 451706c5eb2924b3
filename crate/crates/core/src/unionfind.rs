/// Disjoint sets over `0..len` with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.fill(1);
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Returns false when `a` and `b` were already in one set.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Overwrites `self` with `other` without reallocating.
    pub fn copy_from(&mut self, other: &UnionFind) {
        self.parent.copy_from_slice(&other.parent);
        self.size.copy_from_slice(&other.size);
    }
}

/// Union by size without path compression, so unions can be undone in
/// reverse order.
#[derive(Clone, Debug)]
pub struct RollbackUnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    history: Vec<u32>,
}

const NO_MERGE: u32 = u32::MAX;

impl RollbackUnionFind {
    pub fn new(len: usize) -> Self {
        RollbackUnionFind {
            parent: (0..len as u32).collect(),
            size: vec![1; len],
            history: Vec::new(),
        }
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.size.fill(1);
        self.history.clear();
    }

    #[inline]
    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }

    /// Every call pushes one entry for [`RollbackUnionFind::undo`].
    #[inline]
    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(NO_MERGE);
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.history.push(rb as u32);
    }

    /// Reverts the most recent [`RollbackUnionFind::union`].
    #[inline]
    pub fn undo(&mut self) {
        let child = self.history.pop().expect("undo without union");
        if child != NO_MERGE {
            let root = self.parent[child as usize] as usize;
            self.size[root] -= self.size[child as usize];
            self.parent[child as usize] = child;
        }
    }
}
