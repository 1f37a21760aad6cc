//! Comparator networks: data model, bit-parallel evaluation, exhaustive
//! 0-1 verification, output sets, the window-sum metric, channel permutation
//! and untangling, and the canonical JSON form.
//!
//! Evaluation of all `2^n` binary inputs runs transposed: 64 consecutive
//! inputs are processed at once, with one machine word per channel holding
//! that channel's value for each input in the block. A comparator then costs
//! two word operations (AND for the min end, OR for the max end).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{BitVector, MAX_WIDTH};
use crate::error::{Error, Result};

/// Exhaustive operations (verification, output sets) refuse wider networks.
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// A two-input compare-and-swap gate. `lo` names the channel receiving the
/// minimum, `hi` the one receiving the maximum; both are 1-based. A comparator
/// is *standard* when `lo < hi` (minimum on the upper line). Channel
/// permutation can produce *twisted* comparators with `lo > hi`; untangling
/// repairs them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comparator {
    lo: usize,
    hi: usize,
}

impl Comparator {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == hi {
            return Err(Error::DegenerateComparator { channel: lo });
        }
        if lo == 0 || hi == 0 {
            return Err(Error::ChannelOutOfRange {
                channel: 0,
                channels: 0,
            });
        }
        Ok(Comparator { lo, hi })
    }

    /// Min-output end.
    #[inline]
    pub fn lo(&self) -> usize {
        self.lo
    }

    /// Max-output end.
    #[inline]
    pub fn hi(&self) -> usize {
        self.hi
    }

    #[inline]
    pub fn is_standard(&self) -> bool {
        self.lo < self.hi
    }

    #[inline]
    pub fn min_channel(&self) -> usize {
        self.lo.min(self.hi)
    }

    #[inline]
    pub fn max_channel(&self) -> usize {
        self.lo.max(self.hi)
    }

    pub fn uses(&self, channel: usize) -> bool {
        self.lo == channel || self.hi == channel
    }

    fn rename(&mut self, a: usize, b: usize) {
        for end in [&mut self.lo, &mut self.hi] {
            if *end == a {
                *end = b;
            } else if *end == b {
                *end = a;
            }
        }
    }
}

impl fmt::Debug for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// A set of comparators on pairwise-disjoint channels, executed in parallel.
/// Maximality is not required.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct Layer {
    comparators: Vec<Comparator>,
}

impl Layer {
    pub fn empty() -> Self {
        Layer::default()
    }

    pub fn new(comparators: Vec<Comparator>) -> Result<Self> {
        let mut seen = 0u128;
        for (idx, c) in comparators.iter().enumerate() {
            for ch in [c.lo, c.hi] {
                let bit = 1u128 << ch.min(127);
                if seen & bit != 0 {
                    return Err(Error::DuplicateChannel {
                        layer: idx,
                        channel: ch,
                    });
                }
                seen |= bit;
            }
        }
        Ok(Layer { comparators })
    }

    pub fn comparators(&self) -> &[Comparator] {
        &self.comparators
    }

    pub fn len(&self) -> usize {
        self.comparators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comparators.is_empty()
    }

    pub fn uses(&self, channel: usize) -> bool {
        self.comparators.iter().any(|c| c.uses(channel))
    }

    pub fn contains(&self, c: &Comparator) -> bool {
        self.comparators.contains(c)
    }

    fn sort_canonical(&mut self) {
        self.comparators.sort_unstable_by_key(|c| (c.lo, c.hi));
    }
}

/// Verdict of exhaustive 0-1 verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sorting,
    Counterexample(BitVector),
}

impl Verdict {
    pub fn is_sorting(&self) -> bool {
        matches!(self, Verdict::Sorting)
    }
}

/// A comparator network: `channels` lines and an ordered list of layers.
/// Depth is the number of layers, size the total comparator count.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ComparatorNetwork {
    channels: usize,
    layers: Vec<Layer>,
}

impl ComparatorNetwork {
    /// The empty (zero-layer) network.
    pub fn new(channels: usize) -> Self {
        assert!(channels <= MAX_WIDTH, "at most {MAX_WIDTH} channels");
        ComparatorNetwork {
            channels,
            layers: Vec::new(),
        }
    }

    pub fn from_layers(channels: usize, layers: Vec<Layer>) -> Result<Self> {
        if channels > MAX_WIDTH {
            return Err(Error::ChannelOutOfRange {
                channel: channels,
                channels: MAX_WIDTH,
            });
        }
        let net = ComparatorNetwork { channels, layers };
        net.validate_channels()?;
        Ok(net)
    }

    /// Build from 1-based `(lo, hi)` pairs, one inner slice per layer.
    pub fn from_pairs(channels: usize, layers: &[&[(usize, usize)]]) -> Result<Self> {
        let mut out = Vec::with_capacity(layers.len());
        for pairs in layers {
            let comparators = pairs
                .iter()
                .map(|&(lo, hi)| Comparator::new(lo, hi))
                .collect::<Result<Vec<_>>>()?;
            out.push(Layer::new(comparators)?);
        }
        Self::from_layers(channels, out)
    }

    fn validate_channels(&self) -> Result<()> {
        for layer in &self.layers {
            for c in layer.comparators() {
                for ch in [c.lo, c.hi] {
                    if ch < 1 || ch > self.channels {
                        return Err(Error::ChannelOutOfRange {
                            channel: ch,
                            channels: self.channels,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn size(&self) -> usize {
        self.layers.iter().map(Layer::len).sum()
    }

    pub fn push_layer(&mut self, layer: Layer) -> Result<()> {
        for c in layer.comparators() {
            for ch in [c.lo, c.hi] {
                if ch < 1 || ch > self.channels {
                    return Err(Error::ChannelOutOfRange {
                        channel: ch,
                        channels: self.channels,
                    });
                }
            }
        }
        self.layers.push(layer);
        Ok(())
    }

    pub fn is_standard(&self) -> bool {
        self.layers
            .iter()
            .flat_map(|l| l.comparators())
            .all(Comparator::is_standard)
    }

    fn first_twisted(&self) -> Option<(usize, Comparator)> {
        for (k, layer) in self.layers.iter().enumerate() {
            for c in layer.comparators() {
                if !c.is_standard() {
                    return Some((k + 1, *c));
                }
            }
        }
        None
    }

    fn require_standard(&self) -> Result<()> {
        match self.first_twisted() {
            None => Ok(()),
            Some((layer, c)) => Err(Error::TwistedComparator {
                layer,
                lo: c.lo,
                hi: c.hi,
            }),
        }
    }

    fn require_width(&self, input: &BitVector) -> Result<()> {
        if input.width() != self.channels {
            return Err(Error::WidthMismatch {
                input: input.width(),
                channels: self.channels,
            });
        }
        Ok(())
    }

    fn check_exhaustive(&self) -> Result<()> {
        if self.channels > EXHAUSTIVE_LIMIT {
            return Err(Error::ExhaustiveLimit {
                channels: self.channels,
                limit: EXHAUSTIVE_LIMIT,
            });
        }
        Ok(())
    }

    /// Run a binary input through the network. On binary values the minimum
    /// is AND and the maximum OR. Requires a standard network.
    pub fn apply(&self, input: &BitVector) -> Result<BitVector> {
        self.require_width(input)?;
        self.require_standard()?;
        Ok(self.apply_generalized(input))
    }

    /// Like [`apply`](Self::apply), but also accepts twisted comparators:
    /// the minimum goes to the `lo` end wherever that end lies.
    pub fn apply_generalized(&self, input: &BitVector) -> BitVector {
        debug_assert_eq!(input.width(), self.channels);
        let mut x = input.bits();
        for layer in &self.layers {
            for c in layer.comparators() {
                let lo = c.lo - 1;
                let hi = c.hi - 1;
                let vl = (x >> lo) & 1;
                let vh = (x >> hi) & 1;
                let mn = vl & vh;
                let mx = vl | vh;
                x = (x & !(1 << lo) & !(1 << hi)) | (mn << lo) | (mx << hi);
            }
        }
        BitVector::new(self.channels, x)
    }

    /// Apply the network to arbitrary ordered values (the non-binary side of
    /// the 0-1 principle). Requires a standard network.
    pub fn apply_values<T: Ord + Copy>(&self, values: &mut [T]) -> Result<()> {
        if values.len() != self.channels {
            return Err(Error::WidthMismatch {
                input: values.len(),
                channels: self.channels,
            });
        }
        self.require_standard()?;
        for layer in &self.layers {
            for c in layer.comparators() {
                let (lo, hi) = (c.lo - 1, c.hi - 1);
                if values[lo] > values[hi] {
                    values.swap(lo, hi);
                }
            }
        }
        Ok(())
    }

    /// Evaluate 64 consecutive inputs starting at `base` (a multiple of 64 or
    /// the start of a short range), transposed into one word per channel.
    #[inline]
    fn eval_block(&self, base: u64, words: &mut [u64]) {
        const LANE: [u64; 6] = [
            0xaaaa_aaaa_aaaa_aaaa,
            0xcccc_cccc_cccc_cccc,
            0xf0f0_f0f0_f0f0_f0f0,
            0xff00_ff00_ff00_ff00,
            0xffff_0000_ffff_0000,
            0xffff_ffff_0000_0000,
        ];
        for c in 0..self.channels {
            words[c] = if c < 6 {
                LANE[c]
            } else if (base >> c) & 1 == 1 {
                !0
            } else {
                0
            };
        }
        for layer in &self.layers {
            for cmp in layer.comparators() {
                let lo = cmp.lo - 1;
                let hi = cmp.hi - 1;
                let mn = words[lo] & words[hi];
                let mx = words[lo] | words[hi];
                words[lo] = mn;
                words[hi] = mx;
            }
        }
    }

    /// Exhaustive 0-1 verification. Returns the first counterexample in
    /// ascending numeric input order, if any.
    pub fn verify_sorting(&self) -> Result<Verdict> {
        self.check_exhaustive()?;
        self.require_standard()?;
        let n = self.channels;
        if n < 2 {
            return Ok(Verdict::Sorting);
        }
        let total = 1u64 << n;
        let mut words = vec![0u64; n];
        let mut base = 0u64;
        while base < total {
            self.eval_block(base, &mut words);
            let mut violation = 0u64;
            for c in 0..n - 1 {
                violation |= words[c] & !words[c + 1];
            }
            if total - base < 64 {
                violation &= (1u64 << (total - base)) - 1;
            }
            if violation != 0 {
                let s = violation.trailing_zeros() as u64;
                return Ok(Verdict::Counterexample(BitVector::new(n, base + s)));
            }
            base += 64;
        }
        Ok(Verdict::Sorting)
    }

    /// The deduplicated set of outputs over all `2^n` binary inputs.
    pub fn output_set(&self) -> Result<OutputSet> {
        self.check_exhaustive()?;
        self.require_standard()?;
        let n = self.channels;
        let total = 1u64 << n;
        let mut present = vec![0u64; total.div_ceil(64) as usize];
        let mut words = vec![0u64; n.max(1)];
        let mut base = 0u64;
        while base < total {
            let lanes = (total - base).min(64);
            self.eval_block(base, &mut words);
            for s in 0..lanes {
                let mut out = 0u64;
                for (c, w) in words.iter().enumerate().take(n) {
                    out |= ((w >> s) & 1) << c;
                }
                present[(out / 64) as usize] |= 1 << (out % 64);
            }
            base += 64;
        }
        Ok(OutputSet { width: n, present })
    }

    /// Sum of window sizes over the output set: the number of channels a SAT
    /// encoding still has to consider after this network runs as a prefix.
    pub fn window_sum(&self) -> Result<u64> {
        let outputs = self.output_set()?;
        Ok(outputs.iter().map(|v| v.window().size as u64).sum())
    }

    /// Relabel channels by a bijection `perm` (1-based, `perm[i-1]` is the
    /// image of channel i). Orientation is kept, so the result may contain
    /// twisted comparators.
    pub fn permute_channels(&self, perm: &[usize]) -> Result<ComparatorNetwork> {
        let n = self.channels;
        if perm.len() != n {
            return Err(Error::NotAPermutation { n });
        }
        let mut seen = vec![false; n + 1];
        for &image in perm {
            if image < 1 || image > n || seen[image] {
                return Err(Error::NotAPermutation { n });
            }
            seen[image] = true;
        }
        let layers = self
            .layers
            .iter()
            .map(|layer| Layer {
                comparators: layer
                    .comparators()
                    .iter()
                    .map(|c| Comparator {
                        lo: perm[c.lo - 1],
                        hi: perm[c.hi - 1],
                    })
                    .collect(),
            })
            .collect();
        Ok(ComparatorNetwork {
            channels: n,
            layers,
        })
    }

    /// Repair twisted comparators. Scans layers in order; a twisted
    /// comparator on channels `(a, b)` is made standard by swapping the
    /// identities of `a` and `b` in it and in every later layer. Preserves
    /// channel count, depth, size, and the sorting property.
    pub fn untangle(&self) -> ComparatorNetwork {
        let mut layers = self.layers.clone();
        for k in 0..layers.len() {
            for idx in 0..layers[k].comparators.len() {
                let c = layers[k].comparators[idx];
                if !c.is_standard() {
                    let (a, b) = (c.lo, c.hi);
                    layers[k].comparators[idx] = Comparator { lo: b, hi: a };
                    for layer in layers.iter_mut().skip(k + 1) {
                        for later in &mut layer.comparators {
                            later.rename(a, b);
                        }
                    }
                }
            }
        }
        let mut net = ComparatorNetwork {
            channels: self.channels,
            layers,
        };
        net.canonicalize();
        net
    }

    /// Sort each layer's comparators by their min-output channel.
    pub fn canonicalize(&mut self) {
        for layer in &mut self.layers {
            layer.sort_canonical();
        }
    }

    /// Canonical JSON text. Requires a standard network.
    pub fn to_json(&self) -> Result<String> {
        self.require_standard()?;
        let mut canonical = self.clone();
        canonical.canonicalize();
        let doc = NetworkDoc {
            channels: canonical.channels,
            layers: canonical
                .layers
                .iter()
                .map(|l| l.comparators().iter().map(|c| (c.lo, c.hi)).collect())
                .collect(),
        };
        Ok(serde_json::to_string(&doc)?)
    }

    pub fn from_json(text: &str) -> Result<ComparatorNetwork> {
        let doc: NetworkDoc = serde_json::from_str(text)?;
        ComparatorNetwork::try_from(doc)
    }
}

/// Wire format: `{"channels": n, "layers": [[[lo,hi],...],...]}`, 1-based.
#[derive(Serialize, Deserialize)]
pub(crate) struct NetworkDoc {
    pub channels: usize,
    pub layers: Vec<Vec<(usize, usize)>>,
}

impl TryFrom<NetworkDoc> for ComparatorNetwork {
    type Error = Error;

    fn try_from(doc: NetworkDoc) -> Result<Self> {
        if doc.channels > MAX_WIDTH {
            return Err(Error::BadDocument(format!(
                "{} channels exceeds {MAX_WIDTH}",
                doc.channels
            )));
        }
        let mut layers = Vec::with_capacity(doc.layers.len());
        for (layer_idx, pairs) in doc.layers.iter().enumerate() {
            let mut comparators = Vec::with_capacity(pairs.len());
            for &(lo, hi) in pairs {
                if lo >= hi {
                    return Err(Error::BadDocument(format!(
                        "comparator [{lo},{hi}] in layer {} is not standard",
                        layer_idx + 1
                    )));
                }
                comparators.push(Comparator::new(lo, hi)?);
            }
            let layer = Layer::new(comparators).map_err(|e| match e {
                Error::DuplicateChannel { channel, .. } => Error::DuplicateChannel {
                    layer: layer_idx + 1,
                    channel,
                },
                other => other,
            })?;
            layers.push(layer);
        }
        ComparatorNetwork::from_layers(doc.channels, layers)
    }
}

impl From<&ComparatorNetwork> for NetworkDoc {
    fn from(net: &ComparatorNetwork) -> Self {
        NetworkDoc {
            channels: net.channels,
            layers: net
                .layers
                .iter()
                .map(|l| l.comparators().iter().map(|c| (c.lo, c.hi)).collect())
                .collect(),
        }
    }
}

impl Serialize for ComparatorNetwork {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        NetworkDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComparatorNetwork {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = NetworkDoc::deserialize(deserializer)?;
        ComparatorNetwork::try_from(doc).map_err(serde::de::Error::custom)
    }
}

/// Deduplicated output set, stored as a presence bitset over all `2^n` words.
pub struct OutputSet {
    width: usize,
    present: Vec<u64>,
}

impl OutputSet {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.present.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        debug_assert_eq!(v.width(), self.width);
        let x = v.bits();
        self.present[(x / 64) as usize] >> (x % 64) & 1 == 1
    }

    /// Ascending numeric order.
    pub fn iter(&self) -> impl Iterator<Item = BitVector> + '_ {
        let width = self.width;
        self.present.iter().enumerate().flat_map(move |(idx, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as u64;
                    rest &= rest - 1;
                    Some(BitVector::new(width, idx as u64 * 64 + bit))
                }
            })
        })
    }
}

/// All permutations of `1..=n` in lexicographic order. Intended for the small
/// exhaustive checks; `n` should stay below ~9.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        out.push(current.clone());
        // next_permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Collects all matchings (sets of pairwise-disjoint comparators, any size
/// including empty) over channels `1..=n`, standard orientation.
pub fn matchings(n: usize) -> Vec<Vec<Comparator>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut free: Vec<usize> = (1..=n).collect();
    fn recurse(
        free: &mut Vec<usize>,
        current: &mut Vec<Comparator>,
        out: &mut Vec<Vec<Comparator>>,
    ) {
        let Some(&first) = free.first() else {
            out.push(current.clone());
            return;
        };
        // first channel left unmatched
        free.remove(0);
        recurse(free, current, out);
        free.insert(0, first);
        // or matched with any later free channel
        for idx in 1..free.len() {
            let partner = free[idx];
            free.remove(idx);
            free.remove(0);
            current.push(Comparator {
                lo: first,
                hi: partner,
            });
            recurse(free, current, out);
            current.pop();
            free.insert(0, first);
            free.insert(idx, partner);
        }
    }
    recurse(&mut free, &mut current, &mut out);
    out.sort();
    out
}
