//! Set-partition diagrams: the basis of the partition algebra.
//!
//! A rank-`k` diagram is a set partition of the `2k` vertices
//! `{1..k, 1'..k'}`, drawn with `1..k` in the top row and `1'..k'` in the
//! bottom row. Externally a vertex is a signed integer: `a > 0` is the top
//! vertex `a`, `-a` is the bottom vertex `a'`. Internally a diagram is a
//! restricted growth string over the vertices in the canonical label order
//! `1 < 2 < ... < k < 1' < 2' < ... < k'`, which makes the canonical form
//! unique: two diagrams are equal iff their serializations are byte-equal.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Default cap on the rank accepted by [`enumerate_diagrams`]; the
/// `PA_MAX_RANK` environment variable overrides it.
pub const DEFAULT_MAX_RANK: usize = 4;

/// Effective enumeration cap: `PA_MAX_RANK` if set and parseable,
/// otherwise [`DEFAULT_MAX_RANK`].
pub fn max_enumeration_rank() -> usize {
    std::env::var("PA_MAX_RANK")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_RANK)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("generator {name} out of range at rank {rank}")]
    GeneratorOutOfRange { name: String, rank: usize },
    #[error("ambient rank {rank} too small, need at least {needed}")]
    RankTooSmall { needed: usize, rank: usize },
    #[error("rank {rank} exceeds the configured cap {cap}")]
    RankCapExceeded { rank: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Generators of `A_k(z)` in the diagram presentation.
///
/// `S(i)` is the simple transposition of strands `i, i+1`; `P(j)` cuts
/// strand `j` into the two singletons `{j}, {j'}`; `PHalf(i)` is the
/// half-integer contraction `p_{i+1/2}` joining strands `i` and `i+1`
/// into one block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    S(usize),
    P(usize),
    PHalf(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::S(i) => write!(f, "s_{i}"),
            Generator::P(j) => write!(f, "p_{j}"),
            Generator::PHalf(i) => write!(f, "p_{}/2", 2 * i + 1),
        }
    }
}

/// A set partition of `{1..k, 1'..k'}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartitionDiagram {
    rank: usize,
    /// `rgs[v]` is the block id of vertex `v`; vertex order is
    /// `1..k` then `1'..k'`, block ids in order of first appearance.
    rgs: Vec<u8>,
}

/// The result of stacking one diagram on another: the composed diagram
/// plus the number of components deleted from the middle row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub diagram: SetPartitionDiagram,
    pub removed_blocks: usize,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

impl SetPartitionDiagram {
    /// Vertex position of the signed label `a` / `-a` (i.e. `a'`).
    fn position(label: i64, rank: usize) -> Result<usize, DiagramError> {
        let a = label.unsigned_abs() as usize;
        if label == 0 || a > rank {
            return Err(DiagramError::MalformedPartition(format!(
                "label {label} out of range for rank {rank}"
            )));
        }
        Ok(if label > 0 { a - 1 } else { rank + a - 1 })
    }

    fn from_block_ids(rank: usize, ids: &[usize]) -> Self {
        // relabel block ids by first appearance
        let mut map = vec![u8::MAX; ids.iter().max().map_or(0, |&m| m + 1)];
        let mut next = 0u8;
        let mut rgs = Vec::with_capacity(ids.len());
        for &id in ids {
            if map[id] == u8::MAX {
                map[id] = next;
                next += 1;
            }
            rgs.push(map[id]);
        }
        SetPartitionDiagram { rank, rgs }
    }

    /// Canonicalizes a raw block list into a diagram.
    ///
    /// The blocks must partition `{1..k, 1'..k'}` exactly; block order and
    /// the order of labels inside a block are irrelevant.
    pub fn from_blocks(blocks: &[Vec<i64>], rank: usize) -> Result<Self, DiagramError> {
        let n = 2 * rank;
        if rank == 0 || n > u8::MAX as usize {
            return Err(DiagramError::MalformedPartition(format!(
                "unsupported rank {rank}"
            )));
        }
        let mut ids = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(DiagramError::MalformedPartition("empty block".into()));
            }
            for &label in block {
                let pos = Self::position(label, rank)?;
                if ids[pos] != usize::MAX {
                    return Err(DiagramError::MalformedPartition(format!(
                        "label {label} occurs in more than one block"
                    )));
                }
                ids[pos] = b;
            }
        }
        if let Some(pos) = ids.iter().position(|&id| id == usize::MAX) {
            let label = if pos < rank {
                format!("{}", pos + 1)
            } else {
                format!("{}'", pos - rank + 1)
            };
            return Err(DiagramError::MalformedPartition(format!(
                "label {label} is missing"
            )));
        }
        Ok(Self::from_block_ids(rank, &ids))
    }

    pub fn identity(rank: usize) -> Self {
        let mut rgs = Vec::with_capacity(2 * rank);
        for half in 0..2 {
            let _ = half;
            for a in 0..rank {
                rgs.push(a as u8);
            }
        }
        SetPartitionDiagram { rank, rgs }
    }

    /// The diagram of a generator at ambient rank `rank`.
    pub fn generator(gen: Generator, rank: usize) -> Result<Self, DiagramError> {
        let oob = || DiagramError::GeneratorOutOfRange {
            name: gen.to_string(),
            rank,
        };
        let mut d = Self::identity(rank);
        match gen {
            Generator::S(i) => {
                if i == 0 || i + 1 > rank {
                    return Err(oob());
                }
                // blocks {i, (i+1)'} and {i+1, i'}
                d.rgs[rank + i] = d.rgs[i - 1];
                d.rgs[rank + i - 1] = d.rgs[i];
            }
            Generator::P(j) => {
                if j == 0 || j > rank {
                    return Err(oob());
                }
                // singletons {j} and {j'}: give j' a fresh block id
                d.rgs[rank + j - 1] = 2 * rank as u8; // placeholder, renumbered below
            }
            Generator::PHalf(i) => {
                if i == 0 || i + 1 > rank {
                    return Err(oob());
                }
                // one block {i, i+1, i', (i+1)'}
                let id = d.rgs[i - 1];
                d.rgs[i] = id;
                d.rgs[rank + i] = id;
            }
        }
        let ids: Vec<usize> = d.rgs.iter().map(|&x| x as usize).collect();
        Ok(Self::from_block_ids(rank, &ids))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().map(|&x| x as usize + 1).max().unwrap_or(0)
    }

    /// Canonical blocks with signed labels (`-a` encodes `a'`).
    pub fn blocks(&self) -> Vec<Vec<i64>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (pos, &id) in self.rgs.iter().enumerate() {
            let label = if pos < self.rank {
                (pos + 1) as i64
            } else {
                -((pos - self.rank + 1) as i64)
            };
            blocks[id as usize].push(label);
        }
        blocks
    }

    /// Stacks `self` on top of `bottom`, identifying the bottom row of
    /// `self` with the top row of `bottom`, and deletes the components
    /// supported entirely on the identified middle row.
    pub fn compose(&self, bottom: &SetPartitionDiagram) -> Result<Composition, DiagramError> {
        if self.rank != bottom.rank {
            return Err(DiagramError::RankMismatch {
                left: self.rank,
                right: bottom.rank,
            });
        }
        let k = self.rank;
        // nodes: 0..k top, k..2k middle, 2k..3k bottom
        let mut uf = UnionFind::new(3 * k);
        let mut seen = vec![u32::MAX; 2 * k];
        for (pos, &id) in self.rgs.iter().enumerate() {
            let node = pos as u32; // top pos -> pos, bottom pos -> middle
            match seen[id as usize] {
                u32::MAX => seen[id as usize] = node,
                first => uf.union(first, node),
            }
        }
        seen.fill(u32::MAX);
        for (pos, &id) in bottom.rgs.iter().enumerate() {
            let node = (k + pos) as u32; // top pos -> middle, bottom pos -> bottom
            match seen[id as usize] {
                u32::MAX => seen[id as usize] = node,
                first => uf.union(first, node),
            }
        }
        // collect components over the outer 2k vertices
        let mut root_to_id = vec![usize::MAX; 3 * k];
        let mut ids = vec![0usize; 2 * k];
        let mut next = 0usize;
        for outer in 0..2 * k {
            let node = if outer < k { outer } else { outer + k };
            let root = uf.find(node as u32) as usize;
            if root_to_id[root] == usize::MAX {
                root_to_id[root] = next;
                next += 1;
            }
            ids[outer] = root_to_id[root];
        }
        // middle-only components are exactly the roots never seen above
        let mut removed = 0usize;
        for m in k..2 * k {
            let root = uf.find(m as u32) as usize;
            if root_to_id[root] == usize::MAX {
                root_to_id[root] = usize::MAX - 1; // count each component once
                removed += 1;
            }
        }
        Ok(Composition {
            diagram: Self::from_block_ids(k, &ids),
            removed_blocks: removed,
        })
    }

    /// The `*` anti-involution: reflects the diagram in the horizontal
    /// axis, exchanging `a` and `a'`.
    pub fn involute(&self) -> Self {
        let k = self.rank;
        let mut ids = Vec::with_capacity(2 * k);
        ids.extend(self.rgs[k..].iter().map(|&x| x as usize));
        ids.extend(self.rgs[..k].iter().map(|&x| x as usize));
        Self::from_block_ids(k, &ids)
    }

    /// True iff `k` and `k'` lie in the same block, i.e. the diagram
    /// belongs to `A_{k-1/2}`.
    pub fn is_half(&self) -> bool {
        self.rank > 0 && self.rgs[self.rank - 1] == self.rgs[2 * self.rank - 1]
    }

    /// True iff every strand beyond `m` is an identity strand `{a, a'}`.
    pub fn is_identity_beyond(&self, m: usize) -> bool {
        let k = self.rank;
        for a in m..k {
            let id = self.rgs[a];
            if self.rgs[k + a] != id {
                return false;
            }
            if self.rgs.iter().filter(|&&x| x == id).count() != 2 {
                return false;
            }
        }
        true
    }

    /// True iff strands `m+1..k` are identity strands and `m` joins `m'`,
    /// i.e. the diagram lies in the embedded copy of `A_{m-1/2}`.
    pub fn is_half_at(&self, m: usize) -> bool {
        m >= 1
            && m <= self.rank
            && self.is_identity_beyond(m)
            && self.rgs[m - 1] == self.rgs[self.rank + m - 1]
    }

    /// Appends identity strands to reach rank `k_new`.
    pub fn embed(&self, k_new: usize) -> Result<Self, DiagramError> {
        if k_new < self.rank {
            return Err(DiagramError::RankTooSmall {
                needed: self.rank,
                rank: k_new,
            });
        }
        if k_new == self.rank {
            return Ok(self.clone());
        }
        let k = self.rank;
        let mut ids: Vec<usize> = Vec::with_capacity(2 * k_new);
        ids.extend(self.rgs[..k].iter().map(|&x| x as usize));
        let base = self.block_count();
        ids.extend((0..k_new - k).map(|a| base + a));
        ids.extend(self.rgs[k..].iter().map(|&x| x as usize));
        ids.extend((0..k_new - k).map(|a| base + a));
        Ok(Self::from_block_ids(k_new, &ids))
    }

    /// Canonical text form: blocks separated by `|`, labels separated by
    /// spaces, bottom labels with a trailing apostrophe.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                out.push_str(" | ");
            }
            for (i, &label) in block.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                if label > 0 {
                    out.push_str(&label.to_string());
                } else {
                    out.push_str(&(-label).to_string());
                    out.push('\'');
                }
            }
        }
        out
    }

    /// Parses the text form; the rank is inferred from the largest label.
    pub fn parse_text(text: &str) -> Result<Self, DiagramError> {
        let mut blocks: Vec<Vec<i64>> = Vec::new();
        let mut rank = 0usize;
        for chunk in text.split('|') {
            let mut block = Vec::new();
            for token in chunk.split_whitespace() {
                let (digits, primed) = match token.strip_suffix('\'') {
                    Some(d) => (d, true),
                    None => (token, false),
                };
                let a: i64 = digits
                    .parse()
                    .map_err(|_| DiagramError::Parse(format!("bad label {token:?}")))?;
                if a <= 0 {
                    return Err(DiagramError::Parse(format!("bad label {token:?}")));
                }
                rank = rank.max(a as usize);
                block.push(if primed { -a } else { a });
            }
            if !block.is_empty() {
                blocks.push(block);
            }
        }
        if blocks.is_empty() {
            return Err(DiagramError::Parse("empty diagram".into()));
        }
        Self::from_blocks(&blocks, rank).map_err(|e| DiagramError::Parse(e.to_string()))
    }
}

impl fmt::Display for SetPartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// JSON form: array of blocks, each an array of signed integers.
impl Serialize for SetPartitionDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetPartitionDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let blocks = Vec::<Vec<i64>>::deserialize(deserializer)?;
        let rank = blocks
            .iter()
            .flatten()
            .map(|&x| x.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        SetPartitionDiagram::from_blocks(&blocks, rank).map_err(D::Error::custom)
    }
}

/// Iterator over all set partitions of `{1..k, 1'..k'}` in restricted
/// growth string order; yields `Bell(2k)` diagrams.
pub struct DiagramIter {
    rank: usize,
    rgs: Vec<u8>,
    // bmax[i] = 1 + max(rgs[..i]): the smallest disallowed value at i
    bmax: Vec<u8>,
    done: bool,
}

impl DiagramIter {
    fn new(rank: usize) -> Self {
        let n = 2 * rank;
        DiagramIter {
            rank,
            rgs: vec![0; n],
            bmax: vec![1; n],
            done: rank == 0,
        }
    }
}

impl Iterator for DiagramIter {
    type Item = SetPartitionDiagram;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = SetPartitionDiagram {
            rank: self.rank,
            rgs: self.rgs.clone(),
        };
        let n = self.rgs.len();
        let mut j = n;
        loop {
            if j <= 1 {
                self.done = true;
                break;
            }
            j -= 1;
            if self.rgs[j] < self.bmax[j] {
                self.rgs[j] += 1;
                for i in j + 1..n {
                    self.rgs[i] = 0;
                    self.bmax[i] = self.bmax[i - 1].max(self.rgs[i - 1] + 1);
                }
                break;
            }
        }
        Some(out)
    }
}

/// Streams every diagram of rank `k` exactly once.
///
/// Rejects ranks above the enumeration cap (see [`max_enumeration_rank`]).
pub fn enumerate_diagrams(k: usize) -> Result<DiagramIter, DiagramError> {
    let cap = max_enumeration_rank().min(u8::MAX as usize / 2);
    if k > cap {
        return Err(DiagramError::RankCapExceeded { rank: k, cap });
    }
    Ok(DiagramIter::new(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(blocks: &[&[i64]], k: usize) -> SetPartitionDiagram {
        let blocks: Vec<Vec<i64>> = blocks.iter().map(|b| b.to_vec()).collect();
        SetPartitionDiagram::from_blocks(&blocks, k).unwrap()
    }

    #[test]
    fn canonical_form_is_order_free() {
        let a = d(&[&[1, -1], &[2, -2]], 2);
        assert_eq!(a, SetPartitionDiagram::identity(2));
        let b = d(&[&[-2, 2], &[-1, 1]], 2);
        assert_eq!(a, b);
        // the two drawings of the same rank-6 partition
        let rho1 = d(&[&[1, -1, 3, -4, -5, 6], &[2, -2, -3, 4, 5, -6]], 6);
        let rho2 = d(&[&[5, 4, -3, -2, 2, -6], &[6, -5, -4, 3, -1, 1]], 6);
        assert_eq!(rho1, rho2);
    }

    #[test]
    fn malformed_partitions_are_rejected() {
        let overlap = SetPartitionDiagram::from_blocks(&[vec![1, -1], vec![1, 2, -2]], 2);
        assert!(matches!(overlap, Err(DiagramError::MalformedPartition(_))));
        let missing = SetPartitionDiagram::from_blocks(&[vec![1, -1]], 2);
        assert!(matches!(missing, Err(DiagramError::MalformedPartition(_))));
        let out_of_range = SetPartitionDiagram::from_blocks(&[vec![1, -1, 3]], 2);
        assert!(matches!(out_of_range, Err(DiagramError::MalformedPartition(_))));
    }

    #[test]
    fn generators() {
        assert_eq!(
            SetPartitionDiagram::generator(Generator::S(1), 2).unwrap(),
            d(&[&[1, -2], &[2, -1]], 2)
        );
        assert_eq!(
            SetPartitionDiagram::generator(Generator::P(1), 1).unwrap(),
            d(&[&[1], &[-1]], 1)
        );
        assert_eq!(
            SetPartitionDiagram::generator(Generator::PHalf(1), 2).unwrap(),
            d(&[&[1, 2, -1, -2]], 2)
        );
        assert!(SetPartitionDiagram::generator(Generator::S(2), 2).is_err());
        assert!(SetPartitionDiagram::generator(Generator::P(0), 3).is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let id = SetPartitionDiagram::identity(3);
        for diagram in enumerate_diagrams(3).unwrap().take(50) {
            let left = id.compose(&diagram).unwrap();
            assert_eq!(left.diagram, diagram);
            assert_eq!(left.removed_blocks, 0);
            let right = diagram.compose(&id).unwrap();
            assert_eq!(right.diagram, diagram);
            assert_eq!(right.removed_blocks, 0);
        }
    }

    #[test]
    fn contraction_squares_with_one_removed_block() {
        let p1 = SetPartitionDiagram::generator(Generator::P(1), 1).unwrap();
        let c = p1.compose(&p1).unwrap();
        assert_eq!(c.diagram, p1);
        assert_eq!(c.removed_blocks, 1);

        let ph = SetPartitionDiagram::generator(Generator::PHalf(1), 2).unwrap();
        let c = ph.compose(&ph).unwrap();
        assert_eq!(c.diagram, ph);
        assert_eq!(c.removed_blocks, 0);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = SetPartitionDiagram::identity(2);
        let b = SetPartitionDiagram::identity(3);
        assert!(matches!(
            a.compose(&b),
            Err(DiagramError::RankMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn involution_fixes_contractions_and_inverts_permutations() {
        let p2 = SetPartitionDiagram::generator(Generator::P(2), 3).unwrap();
        assert_eq!(p2.involute(), p2);
        let s1 = SetPartitionDiagram::generator(Generator::S(1), 3).unwrap();
        assert_eq!(s1.involute(), s1);
        // a 3-cycle diagram maps to its inverse
        let cycle = d(&[&[1, -2], &[2, -3], &[3, -1]], 3);
        let inv = d(&[&[1, -3], &[2, -1], &[3, -2]], 3);
        assert_eq!(cycle.involute(), inv);
    }

    #[test]
    fn half_membership() {
        assert!(SetPartitionDiagram::identity(3).is_half());
        let s2 = SetPartitionDiagram::generator(Generator::S(2), 3).unwrap();
        assert!(!s2.is_half());
        let p3 = SetPartitionDiagram::generator(Generator::P(3), 3).unwrap();
        assert!(!p3.is_half());
        let ph2 = SetPartitionDiagram::generator(Generator::PHalf(2), 3).unwrap();
        assert!(ph2.is_half());
        // A_{3/2} pattern inside rank 3: strand 3 identity, 2 joined to 2'
        let s1 = SetPartitionDiagram::generator(Generator::S(1), 3).unwrap();
        assert!(!s1.is_half_at(2));
        let p1 = SetPartitionDiagram::generator(Generator::P(1), 3).unwrap();
        assert!(p1.is_half_at(2));
    }

    #[test]
    fn embed_is_compatible_with_generators() {
        let p1 = SetPartitionDiagram::generator(Generator::P(1), 1).unwrap();
        assert_eq!(
            p1.embed(3).unwrap(),
            SetPartitionDiagram::generator(Generator::P(1), 3).unwrap()
        );
        assert_eq!(
            SetPartitionDiagram::identity(2).embed(4).unwrap(),
            SetPartitionDiagram::identity(4)
        );
        assert!(SetPartitionDiagram::identity(3).embed(2).is_err());
    }

    #[test]
    fn enumeration_counts_small_bell_numbers() {
        assert_eq!(enumerate_diagrams(1).unwrap().count(), 2);
        assert_eq!(enumerate_diagrams(2).unwrap().count(), 15);
        assert_eq!(enumerate_diagrams(3).unwrap().count(), 203);
        assert!(matches!(
            enumerate_diagrams(99),
            Err(DiagramError::RankCapExceeded { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let s1 = SetPartitionDiagram::generator(Generator::S(1), 2).unwrap();
        assert_eq!(s1.to_text(), "1 2' | 2 1'");
        assert_eq!(SetPartitionDiagram::parse_text("1 2'| 2 1'").unwrap(), s1);
        let rho = d(&[&[1, -1, 3], &[2, -2]], 3);
        assert_eq!(rho.to_text(), "1 3 1' | 2 2'");
        assert_eq!(SetPartitionDiagram::parse_text("1 1' 3 | 2 2'").unwrap(), rho);
        assert!(SetPartitionDiagram::parse_text("1 1' | 2").is_err());
        assert!(SetPartitionDiagram::parse_text("").is_err());
    }

    #[test]
    fn json_round_trip() {
        let rho = d(&[&[1, -1, 3], &[2, -2]], 3);
        let s = serde_json::to_string(&rho).unwrap();
        assert_eq!(s, "[[1,3,-1],[2,-2]]");
        let back: SetPartitionDiagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rho);
    }
}
