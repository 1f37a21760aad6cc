//! Binary input vectors and their windows.
//!
//! A vector of width `n` assigns one bit per channel; channel 1 is the topmost
//! line of a diagram and maps to bit 0 of the stored word. A vector is sorted
//! when it reads `0^a 1^b` from channel 1 downwards. The window of a vector is
//! the middle segment left over after stripping the maximal run of leading
//! zeros and trailing ones; its size measures how far the vector is from
//! sorted, and drives both the encoding reduction and counterexample choice.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widths are capped at the machine word; larger networks are out of scope.
pub const MAX_WIDTH: usize = 64;

#[inline]
pub(crate) fn width_mask(width: usize) -> u64 {
    debug_assert!(width <= MAX_WIDTH);
    if width == 64 {
        !0
    } else {
        (1u64 << width) - 1
    }
}

/// One binary word of width `n`; channel `i` (1-based) is stored in bit `i-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    width: usize,
    bits: u64,
}

/// The `0^a x 1^b` decomposition of a vector. For the all-zero vector
/// `a = n, b = 0`; for the all-one vector `a = 0, b = n`; in both cases
/// (and exactly for sorted vectors) `size` is 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub a: usize,
    pub b: usize,
    pub size: usize,
}

impl BitVector {
    pub fn new(width: usize, bits: u64) -> Self {
        assert!(width <= MAX_WIDTH, "width {width} exceeds {MAX_WIDTH}");
        BitVector {
            width,
            bits: bits & width_mask(width),
        }
    }

    pub fn zero(width: usize) -> Self {
        Self::new(width, 0)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value on `channel` (1-based).
    #[inline]
    pub fn get(&self, channel: usize) -> bool {
        debug_assert!(channel >= 1 && channel <= self.width);
        (self.bits >> (channel - 1)) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// The sorted rearrangement `0^(n-m) 1^m` of this vector.
    pub fn sorted_copy(&self) -> BitVector {
        let m = self.count_ones();
        let bits = width_mask(self.width) & !width_mask(self.width - m);
        BitVector {
            width: self.width,
            bits,
        }
    }

    /// True iff the vector reads `0^a 1^b`. The empty vector is sorted.
    pub fn is_sorted(&self) -> bool {
        self.bits == self.sorted_copy().bits
    }

    pub fn window(&self) -> Window {
        let n = self.width;
        let m = width_mask(n);
        let x = self.bits;
        if x == 0 {
            return Window { a: n, b: 0, size: 0 };
        }
        if x == m {
            return Window { a: 0, b: n, size: 0 };
        }
        let a = x.trailing_zeros() as usize;
        // Highest clear bit marks where the trailing run of ones begins.
        let zeros = !x & m;
        let highest_zero = 63 - zeros.leading_zeros() as usize;
        let b = n - 1 - highest_zero;
        Window {
            a,
            b,
            size: n.saturating_sub(a + b),
        }
    }

    /// `self <= other` channel-wise.
    pub fn le(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.width, other.width);
        self.bits & !other.bits == 0
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for channel in 1..=self.width {
            f.write_str(if self.get(channel) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_WIDTH {
            return Err(Error::BadDocument(format!(
                "bit vector `{s}` longer than {MAX_WIDTH}"
            )));
        }
        let mut bits = 0u64;
        for (idx, ch) in s.chars().enumerate() {
            match ch {
                '1' => bits |= 1 << idx,
                '0' => {}
                other => {
                    return Err(Error::BadDocument(format!(
                        "bit vector `{s}` contains `{other}`"
                    )))
                }
            }
        }
        Ok(BitVector::new(s.len(), bits))
    }
}
