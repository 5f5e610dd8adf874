use std::fmt;

use crate::error::{Error, Result};

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 12;

/// Subset of the qubit register `{0, .., n-1}` stored as a bitmask.
///
/// Qubit `i` (shown 1-based as `i+1` in text output) is bit `i` of the mask, and
/// bit `i` of a basis-state index is the value of that qubit (little-endian).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct QubitSubset {
    mask: u32,
    n: usize,
}

impl QubitSubset {
    pub fn new(mask: u32, n: usize) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::Size(format!("{n} qubits exceeds the cap of {MAX_QUBITS}")));
        }
        if mask >> n != 0 {
            return Err(Error::Argument(format!(
                "mask {mask:#b} has bits outside a {n}-qubit register"
            )));
        }
        Ok(Self { mask, n })
    }

    /// Builds a subset from 0-based qubit indices.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i >= n {
                return Err(Error::Argument(format!("qubit {i} out of range for n={n}")));
            }
            mask |= 1 << i;
        }
        Self::new(mask, n)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(0, n)
    }

    pub fn full(n: usize) -> Result<Self> {
        Self::new(full_mask(n), n)
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, qubit: usize) -> bool {
        qubit < self.n && self.mask >> qubit & 1 == 1
    }

    pub fn complement(&self) -> Self {
        Self { mask: !self.mask & full_mask(self.n), n: self.n }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn indices(&self) -> Vec<usize> {
        bits(self.mask).collect()
    }
}

impl fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = bits(self.mask).map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Indices of the set bits of `mask`, ascending.
pub fn bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// All submasks of `mask`, including `0` and `mask` itself.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & mask) };
        Some(cur)
    })
}
