use std::fmt;

use itertools::Itertools;

use super::EngineError;
use crate::manifolds::Case;

/// Block dimensions `n_{r,s}`: `k × k` for loops, `k × ℓ` for edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPattern {
    pub case: Case,
    dims: Vec<Vec<u32>>,
}

impl BlockPattern {
    /// Loop patterns need equal row and column sums, all positive. Edge
    /// patterns need every row and column sum positive.
    pub fn new(case: Case, dims: Vec<Vec<u32>>) -> Result<Self, EngineError> {
        let invalid = |m: &str| Err(EngineError::InvalidPattern(m.to_string()));
        let k = dims.len();
        if k == 0 || dims[0].is_empty() {
            return invalid("empty pattern");
        }
        let l = dims[0].len();
        if dims.iter().any(|r| r.len() != l) {
            return invalid("rows have different lengths");
        }
        let row_sums: Vec<u64> = dims.iter().map(|r| r.iter().map(|&x| x as u64).sum()).collect();
        let col_sums: Vec<u64> = (0..l).map(|s| dims.iter().map(|r| r[s] as u64).sum()).collect();
        if row_sums.iter().chain(&col_sums).any(|&x| x == 0) {
            return invalid("every row and column sum must be positive");
        }
        if case == Case::Loop {
            if k != l {
                return invalid("loop patterns must be square");
            }
            if row_sums != col_sums {
                return invalid("loop patterns need equal row and column sums");
            }
        }
        Ok(BlockPattern { case, dims })
    }

    /// Parses `1,1;1,1`: rows separated by `;`, entries by `,`.
    pub fn parse(case: Case, text: &str) -> Result<Self, EngineError> {
        let dims = text
            .split(';')
            .map(|row| row.split(',').map(|x| x.parse::<u32>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| EngineError::InvalidPattern(format!("malformed pattern {text:?}")))?;
        BlockPattern::new(case, dims)
    }

    pub fn dims(&self) -> &[Vec<u32>] {
        &self.dims
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn l(&self) -> usize {
        self.dims[0].len()
    }

    pub fn get(&self, r: usize, s: usize) -> u32 {
        self.dims[r][s]
    }

    pub fn is_occupied(&self, r: usize, s: usize) -> bool {
        self.dims[r][s] > 0
    }

    /// Occupied cells in lexicographic order.
    pub fn occupied(&self) -> Vec<(usize, usize)> {
        (0..self.k()).cartesian_product(0..self.l()).filter(|&(r, s)| self.is_occupied(r, s)).collect()
    }

    pub fn row_sum(&self, r: usize) -> u64 {
        self.dims[r].iter().map(|&x| x as u64).sum()
    }

    pub fn total(&self) -> u64 {
        (0..self.k()).map(|r| self.row_sum(r)).sum()
    }

    /// Loop support graph on `{0, …, k−1}`: `r ∼ s` iff `n_{r,s} + n_{s,r} > 0`.
    pub fn adjacent(&self, r: usize, s: usize) -> bool {
        self.dims[r][s] + self.dims[s][r] > 0
    }

    /// Connected components of the loop support graph, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut label = vec![usize::MAX; k];
        let mut comps = Vec::new();
        for start in 0..k {
            if label[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut stack = vec![start];
            let mut comp = Vec::new();
            label[start] = id;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in 0..k {
                    if label[w] == usize::MAX && self.adjacent(v, w) {
                        label[w] = id;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Representative of the orbit under relabeling: independent row and
    /// column permutations for edges, simultaneous ones for loops. The
    /// lexicographically least grid is chosen.
    pub fn canonical(&self) -> BlockPattern {
        let (k, l) = (self.k(), self.l());
        let permuted = |rp: &[usize], cp: &[usize]| -> Vec<Vec<u32>> {
            rp.iter().map(|&r| cp.iter().map(|&s| self.dims[r][s]).collect()).collect()
        };
        let best = match self.case {
            Case::Loop => (0..k).permutations(k).map(|p| permuted(&p, &p)).min(),
            Case::Edge => (0..k)
                .permutations(k)
                .cartesian_product((0..l).permutations(l).collect::<Vec<_>>())
                .map(|(rp, cp)| permuted(&rp, &cp))
                .min(),
        };
        BlockPattern { case: self.case, dims: best.expect("at least one permutation") }
    }

    /// Applies a row permutation and a column permutation (`new[i] = old[perm[i]]`).
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> BlockPattern {
        let dims = rows.iter().map(|&r| cols.iter().map(|&s| self.dims[r][s]).collect()).collect();
        BlockPattern { case: self.case, dims }
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.dims.iter().map(|r| r.iter().join(",")).collect();
        f.write_str(&rows.join(";"))
    }
}

/// Every valid edge pattern with `k ≤ max_k`, `ℓ ≤ max_l`, entries in `0..=max_entry`.
pub fn enumerate_edge_patterns(max_k: usize, max_l: usize, max_entry: u32) -> Vec<BlockPattern> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        for l in 1..=max_l {
            for flat in (0..k * l).map(|_| 0..=max_entry).multi_cartesian_product() {
                let dims: Vec<Vec<u32>> = flat.chunks(l).map(<[u32]>::to_vec).collect();
                if let Ok(p) = BlockPattern::new(Case::Edge, dims) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Every valid loop pattern with `k ≤ max_k` and total dimension `≤ max_total`.
pub fn enumerate_loop_patterns(max_k: usize, max_total: u32) -> Vec<BlockPattern> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        let mut cell = vec![0u32; k * k];
        fill_bounded(&mut cell, 0, max_total, &mut |flat| {
            let dims: Vec<Vec<u32>> = flat.chunks(k).map(<[u32]>::to_vec).collect();
            if let Ok(p) = BlockPattern::new(Case::Loop, dims) {
                out.push(p);
            }
        });
    }
    out
}

fn fill_bounded(cells: &mut [u32], idx: usize, remaining: u32, emit: &mut impl FnMut(&[u32])) {
    if idx == cells.len() {
        emit(cells);
        return;
    }
    for v in 0..=remaining {
        cells[idx] = v;
        fill_bounded(cells, idx + 1, remaining - v, emit);
    }
    cells[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_validate() {
        let p = BlockPattern::parse(Case::Loop, "1,1;1,1").unwrap();
        assert_eq!(p.to_string(), "1,1;1,1");
        assert!(BlockPattern::parse(Case::Loop, "1,2;1,1").is_err());
        assert!(BlockPattern::parse(Case::Edge, "1,2;0,0").is_err());
        assert!(BlockPattern::parse(Case::Edge, "1,3,2").is_ok());
        assert!(BlockPattern::parse(Case::Edge, "1,x").is_err());
        assert!(BlockPattern::parse(Case::Edge, "1;1,1").is_err());
    }

    #[test]
    fn components() {
        let p = BlockPattern::parse(Case::Loop, "1,0;0,1").unwrap();
        assert_eq!(p.components(), vec![vec![0], vec![1]]);
        let p = BlockPattern::parse(Case::Loop, "0,1,0;0,0,1;1,0,0").unwrap();
        assert_eq!(p.components().len(), 1);
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let p = BlockPattern::parse(Case::Edge, "0,2;1,3;1,0").unwrap();
        let q = p.permuted(&[2, 0, 1], &[1, 0]);
        assert_eq!(p.canonical(), q.canonical());
    }

    #[test]
    fn enumeration_counts() {
        // 1x1: entries 1..=3
        let one: Vec<_> = enumerate_edge_patterns(1, 1, 3);
        assert_eq!(one.len(), 3);
        // loop k = 1, total <= 5: n_11 in 1..=5
        assert_eq!(enumerate_loop_patterns(1, 5).len(), 5);
    }
}
