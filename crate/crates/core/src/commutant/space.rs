use std::collections::HashMap;

/// Unknown coordinates of an operator that preserves the joint level sets of some
/// diagonal matrices: one unknown per entry `(r, c)` with `r` and `c` in the same level.
pub(crate) struct BlockSpace {
    dim: usize,
    levels: Vec<Vec<u32>>,
    level_of: Vec<u32>,
    pos: Vec<u32>,
    offset: Vec<usize>,
}

impl BlockSpace {
    /// Levels are the classes of equal diagonal tuples, ordered by `(key(min), min)`.
    pub fn from_diagonals(dim: usize, diags: &[Vec<i64>], key: impl Fn(usize) -> u64) -> Self {
        let mut by_value: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut groups: Vec<Vec<u32>> = Vec::new();
        for s in 0..dim {
            let tuple: Vec<i64> = diags.iter().map(|d| d[s]).collect();
            let id = *by_value.entry(tuple).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[id].push(s as u32);
        }
        groups.sort_by_key(|g| (key(g[0] as usize), g[0]));
        let mut level_of = vec![0u32; dim];
        let mut pos = vec![0u32; dim];
        let mut offset = Vec::with_capacity(groups.len() + 1);
        let mut acc = 0usize;
        for (l, g) in groups.iter().enumerate() {
            offset.push(acc);
            acc += g.len() * g.len();
            for (k, &s) in g.iter().enumerate() {
                level_of[s as usize] = l as u32;
                pos[s as usize] = k as u32;
            }
        }
        offset.push(acc);
        BlockSpace {
            dim,
            levels: groups,
            level_of,
            pos,
            offset,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unknowns(&self) -> usize {
        *self.offset.last().unwrap()
    }

    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    pub fn level_of(&self, s: usize) -> usize {
        self.level_of[s] as usize
    }

    pub fn level_range(&self, l: usize) -> (usize, usize) {
        (self.offset[l], self.offset[l + 1])
    }

    #[inline]
    pub fn index(&self, r: usize, c: usize) -> Option<usize> {
        let l = self.level_of[r];
        if self.level_of[c] != l {
            return None;
        }
        let size = self.levels[l as usize].len();
        Some(self.offset[l as usize] + self.pos[r] as usize * size + self.pos[c] as usize)
    }

    /// `(r, c)` of an unknown.
    pub fn entry(&self, idx: usize) -> (usize, usize) {
        let l = self.offset.partition_point(|&o| o <= idx) - 1;
        let size = self.levels[l].len();
        let k = idx - self.offset[l];
        (
            self.levels[l][k / size] as usize,
            self.levels[l][k % size] as usize,
        )
    }

    pub fn transpose_index(&self, idx: usize) -> usize {
        let (r, c) = self.entry(idx);
        self.index(c, r).unwrap()
    }
}
