//! Partitions of the vertex set into disjoint nonempty blocks.

use crate::error::{Error, Result};

/// Disjoint nonempty blocks covering `0..n` exactly. Block members are kept
/// sorted; block order follows the constructor input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut block_of = vec![usize::MAX; n];
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (b, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            block.sort_unstable();
            for &v in &block {
                if v >= n {
                    return Err(Error::VertexOutOfRange(v, n));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::OverlappingBlocks(v.to_string()));
                }
                block_of[v] = b;
            }
            block.dedup();
            sorted_blocks.push(block);
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::PartitionGap(v.to_string()));
        }
        Ok(Partition { blocks: sorted_blocks, block_of })
    }

    /// The all-singleton partition of `0..n`.
    pub fn singletons(n: usize) -> Partition {
        Partition {
            blocks: (0..n).map(|v| vec![v]).collect(),
            block_of: (0..n).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    pub fn is_singleton(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_cover_and_disjointness() {
        assert!(matches!(
            Partition::new(3, vec![vec![0, 1]]),
            Err(Error::PartitionGap(v)) if v == "2"
        ));
        assert!(matches!(
            Partition::new(3, vec![vec![0, 1], vec![1, 2]]),
            Err(Error::OverlappingBlocks(v)) if v == "1"
        ));
        assert!(matches!(
            Partition::new(2, vec![vec![0, 1], vec![]]),
            Err(Error::EmptyBlock)
        ));
    }

    #[test]
    fn block_lookup() {
        let p = Partition::new(4, vec![vec![2, 0], vec![1, 3]]).unwrap();
        assert_eq!(p.block(0), &[0, 2]);
        assert_eq!(p.block_of(3), 1);
        assert_eq!(p.block_count(), 2);
        assert!(!p.is_singleton());
        assert!(Partition::singletons(3).is_singleton());
    }
}
