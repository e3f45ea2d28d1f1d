//! Boolean subalgebras of a powerset, generated by finitely many subsets.
//!
//! The smallest Boolean subalgebra containing the generators is the set of
//! unions of blocks of the partition induced by membership signatures: two
//! points are in the same block when no generator separates them.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::fo::FoError;
use crate::order::boolalg::FinBoolAlg;

#[derive(Clone)]
pub struct SubAlgebra {
    /// The abstract algebra: the powerset of the blocks.
    pub algebra: FinBoolAlg,
    /// The embedding into the ambient powerset: the extent of each algebra
    /// element as a set of space points.
    pub extents: Vec<BitSet>,
    /// The atoms of the subalgebra as point sets, in first-point order.
    pub blocks: Vec<BitSet>,
}

impl SubAlgebra {
    /// The algebra element with the given extent, if the extent belongs to
    /// the subalgebra.
    pub fn element_of_extent(&self, extent: &BitSet) -> Option<usize> {
        let mut mask = 0usize;
        for (b, block) in self.blocks.iter().enumerate() {
            if block.is_subset(extent) {
                mask |= 1 << b;
            } else if block.intersects(extent) {
                return None;
            }
        }
        (self.extents[mask] == *extent).then_some(mask)
    }

    pub fn space_len(&self) -> usize {
        self.blocks.first().map_or(0, BitSet::len)
    }
}

pub fn generated_subalgebra(
    generators: &[BitSet],
    space_len: usize,
    caps: &Caps,
) -> Result<SubAlgebra, FoError> {
    let mut block_of: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut blocks: Vec<BitSet> = Vec::new();
    for p in 0..space_len {
        let signature: Vec<bool> = generators.iter().map(|g| g.contains(p)).collect();
        let next = blocks.len();
        let b = *block_of.entry(signature).or_insert(next);
        if b == blocks.len() {
            blocks.push(BitSet::new(space_len));
        }
        blocks[b].insert(p);
    }
    if blocks.len() >= usize::BITS as usize
        || (1u64 << blocks.len()) > caps.max_elements as u64
    {
        return Err(FoError::CapExceeded {
            what: format!("algebra on {} atoms", blocks.len()),
            cap: caps.max_elements as u64,
        });
    }
    let names: Vec<String> = (0..blocks.len()).map(|b| format!("b{b}")).collect();
    let algebra = FinBoolAlg::powerset(&names);
    let extents: Vec<BitSet> = (0..1usize << blocks.len())
        .map(|mask| {
            let mut e = BitSet::new(space_len);
            for (b, block) in blocks.iter().enumerate() {
                if mask >> b & 1 != 0 {
                    e.union_with(block);
                }
            }
            e
        })
        .collect();
    Ok(SubAlgebra {
        algebra,
        extents,
        blocks,
    })
}
