//! Synthesis prefixes: the fixed head of a network that gets hard-coded into
//! the SAT instance.
//!
//! Two first-layer families recur throughout: the adjacent-pair style
//! `(2i-1, 2i)` (label `pb`) and the reflected style `(i, n+1-i)` (label
//! `bz`). Both are maximal matchings, so any sorting network can be permuted
//! and untangled to start with either; what differs is how expensive the
//! remaining encoding is, measured by the window-sum over the prefix outputs.
//! Green filters build partially ordered sets on power-of-two blocks.
//! `enumerate_two_layer_prefixes` lists second layers over a fixed reflected
//! first layer up to the symmetry that maps the first layer onto itself, and
//! `optimize_prefix` searches channel permutations for a low window-sum
//! variant of a given prefix.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::net::{Comparator, ComparatorNetwork, Layer};
use crate::rng::Rng;

/// Largest channel count for the two-layer enumeration.
pub const ENUMERATION_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrefixLabel {
    Pb,
    Bz,
    Green,
    Optimized,
    Enumerated,
}

impl fmt::Display for PrefixLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PrefixLabel::Pb => "pb",
            PrefixLabel::Bz => "bz",
            PrefixLabel::Green => "green",
            PrefixLabel::Optimized => "optimized",
            PrefixLabel::Enumerated => "enumerated",
        };
        f.write_str(s)
    }
}

impl FromStr for PrefixLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pb" => Ok(PrefixLabel::Pb),
            "bz" => Ok(PrefixLabel::Bz),
            "green" => Ok(PrefixLabel::Green),
            "optimized" => Ok(PrefixLabel::Optimized),
            "enumerated" => Ok(PrefixLabel::Enumerated),
            other => Err(Error::InvalidConfig(format!("unknown prefix label `{other}`"))),
        }
    }
}

/// A standard network used as the fixed head of a synthesis problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefix {
    pub network: ComparatorNetwork,
    pub label: PrefixLabel,
}

#[derive(Serialize, Deserialize)]
struct PrefixDoc {
    channels: usize,
    layers: Vec<Vec<(usize, usize)>>,
    label: PrefixLabel,
}

impl Prefix {
    pub fn new(network: ComparatorNetwork, label: PrefixLabel) -> Self {
        debug_assert!(network.is_standard());
        Prefix { network, label }
    }

    /// The zero-layer prefix.
    pub fn empty(channels: usize) -> Self {
        Prefix::new(ComparatorNetwork::new(channels), PrefixLabel::Enumerated)
    }

    pub fn depth(&self) -> usize {
        self.network.depth()
    }

    pub fn to_json(&self) -> Result<String> {
        let net_json = self.network.to_json()?;
        let doc: crate::net::NetworkDoc = serde_json::from_str(&net_json)?;
        Ok(serde_json::to_string(&PrefixDoc {
            channels: doc.channels,
            layers: doc.layers,
            label: self.label,
        })?)
    }

    pub fn from_json(text: &str) -> Result<Prefix> {
        let doc: PrefixDoc = serde_json::from_str(text)?;
        let network = ComparatorNetwork::try_from(crate::net::NetworkDoc {
            channels: doc.channels,
            layers: doc.layers,
        })?;
        Ok(Prefix {
            network,
            label: doc.label,
        })
    }
}

/// One layer pairing adjacent channels: `(1,2), (3,4), ...`; the last channel
/// stays free when `n` is odd.
pub fn first_layer_pb(n: usize) -> Prefix {
    let comparators = (0..n / 2)
        .map(|i| Comparator::new(2 * i + 1, 2 * i + 2).unwrap())
        .collect();
    let mut net = ComparatorNetwork::new(n);
    net.push_layer(Layer::new(comparators).unwrap()).unwrap();
    Prefix::new(net, PrefixLabel::Pb)
}

/// One layer pairing reflected channels: `(i, n+1-i)` for `i <= n/2`.
pub fn first_layer_bz(n: usize) -> Prefix {
    let comparators = (1..=n / 2)
        .map(|i| Comparator::new(i, n + 1 - i).unwrap())
        .collect();
    let mut net = ComparatorNetwork::new(n);
    net.push_layer(Layer::new(comparators).unwrap()).unwrap();
    Prefix::new(net, PrefixLabel::Bz)
}

/// Green filter on `n = 2^m` channels, truncated to `t` layers. Layer `k`
/// compares at stride `2^(k-1)` inside blocks of size `2^k`.
pub fn green_filter(n: usize, t: usize) -> Result<Prefix> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { n });
    }
    let m = n.trailing_zeros() as usize;
    if t < 1 || t > m {
        return Err(Error::GreenDepth { t, max: m });
    }
    let mut net = ComparatorNetwork::new(n);
    for k in 1..=t {
        let stride = 1usize << (k - 1);
        let comparators = (1..=n)
            .filter(|i| (i - 1) >> (k - 1) & 1 == 0)
            .map(|i| Comparator::new(i, i + stride).unwrap())
            .collect();
        net.push_layer(Layer::new(comparators).unwrap())?;
    }
    Ok(Prefix::new(net, PrefixLabel::Green))
}

/// The effective action on second layers of the permutations fixing the
/// reflected first layer. The full symmetry group also flips pairs, but
/// untangling a flipped first-layer pair renames that pair's channels in all
/// later layers, which cancels the flip; only the pair permutations act on
/// the layers behind the first. The tests check this against the full
/// network-level permute-untangle orbit.
fn pair_permutation_group(n: usize) -> Vec<Vec<usize>> {
    let p = n / 2;
    let mut group = Vec::new();
    for sigma in crate::net::permutations(p) {
        let mut perm = vec![0usize; n];
        if n % 2 == 1 {
            perm[p] = p + 1;
        }
        for j in 0..p {
            perm[j] = sigma[j];
            perm[n - 1 - j] = n + 1 - sigma[j];
        }
        group.push(perm);
    }
    group
}

/// Orientation-normalized, order-normalized form of a matching after a
/// channel relabeling.
fn relabel_matching(matching: &[Comparator], perm: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = matching
        .iter()
        .map(|c| {
            let a = perm[c.lo() - 1];
            let b = perm[c.hi() - 1];
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

/// All second layers over a fixed reflected first layer, one canonical
/// representative per symmetry class. Second layers repeating a first-layer
/// comparator are redundant (the repeat acts as identity) and are dropped.
pub fn enumerate_two_layer_prefixes(n: usize) -> Result<Vec<Prefix>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit {
            channels: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let first = first_layer_bz(n);
    let first_layer = first.network.layers()[0].clone();
    let group = pair_permutation_group(n);
    // The canonical form is the least relabeling in the orbit, and the
    // identity is in the group, so the canonical form doubles as the class
    // representative.
    let mut classes: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    for matching in crate::net::matchings(n) {
        if matching.iter().any(|c| first_layer.contains(c)) {
            continue;
        }
        let canonical = group
            .iter()
            .map(|perm| relabel_matching(&matching, perm))
            .min()
            .expect("group is nonempty");
        classes.insert(canonical);
    }
    classes
        .into_iter()
        .map(|pairs| {
            let comparators = pairs
                .iter()
                .map(|&(lo, hi)| Comparator::new(lo, hi))
                .collect::<Result<Vec<_>>>()?;
            let mut net = first.network.clone();
            net.push_layer(Layer::new(comparators)?)?;
            Ok(Prefix::new(net, PrefixLabel::Enumerated))
        })
        .collect()
}

/// Evolutionary-search settings. `sample_size` counts the distinct prefix
/// outputs entering the fitness sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EaConfig {
    pub sample_size: usize,
    pub population: usize,
    pub generations: usize,
    pub mutation_rate: f64,
    pub seed: u64,
}

impl Default for EaConfig {
    fn default() -> Self {
        EaConfig {
            sample_size: 800,
            population: 20,
            generations: 200,
            mutation_rate: 0.3,
            seed: 1,
        }
    }
}

impl EaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sample_size < 1 || self.population < 1 || self.generations < 1 {
            return Err(Error::InvalidConfig(
                "sample_size, population, and generations must be positive".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::InvalidConfig("mutation_rate must be in [0,1]".into()));
        }
        Ok(())
    }
}

/// Fitness of a prefix: sum of window sizes over up to `sample_size` distinct
/// outputs, taking the worst windows first (ties by channel-order
/// lexicographic value).
pub fn prefix_fitness(net: &ComparatorNetwork, sample_size: usize) -> Result<u64> {
    let outputs = net.output_set()?;
    let n = net.channels();
    let mut scored: Vec<(usize, u64)> = outputs
        .iter()
        .map(|v| {
            let lex = v.bits().reverse_bits() >> (64 - n.max(1));
            (v.window().size, lex)
        })
        .collect();
    scored.sort_unstable_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    Ok(scored
        .iter()
        .take(sample_size)
        .map(|&(size, _)| size as u64)
        .sum())
}

fn mutate(perm: &mut [usize], rate: f64, rng: &mut Rng) {
    let n = perm.len();
    if n < 2 {
        return;
    }
    loop {
        let i = rng.below(n);
        let j = rng.below(n);
        perm.swap(i, j);
        if rng.f64() >= rate {
            break;
        }
    }
}

/// (μ+λ) search over channel permutations: candidates are
/// `untangle(permute(p, π))`, scored by [`prefix_fitness`]. The identity is
/// seeded into the population and selection is elitist, so the result never
/// scores worse than the input. Deterministic for a fixed seed.
pub fn optimize_prefix(p: &Prefix, cfg: &EaConfig) -> Result<Prefix> {
    cfg.validate()?;
    let n = p.network.channels();
    let mu = cfg.population;
    let lambda = 2 * mu;

    let evaluate = |perm: &[usize]| -> Result<(u64, ComparatorNetwork)> {
        let candidate = p.network.permute_channels(perm)?.untangle();
        let fit = prefix_fitness(&candidate, cfg.sample_size)?;
        Ok((fit, candidate))
    };

    let identity: Vec<usize> = (1..=n).collect();
    let master = Rng::new(cfg.seed);
    let mut population: Vec<(u64, Vec<usize>)> = Vec::with_capacity(mu);
    population.push((evaluate(&identity)?.0, identity));
    for i in 1..mu {
        let mut rng = master.split(i as u64);
        let mut perm: Vec<usize> = (1..=n).collect();
        rng.shuffle(&mut perm);
        population.push((evaluate(&perm)?.0, perm));
    }
    population.sort();

    for gen in 0..cfg.generations {
        let mut offspring = Vec::with_capacity(lambda);
        for child_idx in 0..lambda {
            let mut rng = master.split((gen as u64 + 1) << 20 | child_idx as u64);
            let parent = &population[rng.below(population.len())].1;
            let mut child = parent.clone();
            mutate(&mut child, cfg.mutation_rate, &mut rng);
            offspring.push((evaluate(&child)?.0, child));
        }
        population.extend(offspring);
        population.sort();
        population.dedup();
        population.truncate(mu);
    }

    let best = &population[0].1;
    let (_, network) = evaluate(best)?;
    Ok(Prefix::new(network, PrefixLabel::Optimized))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::Verdict;

    fn pairs(p: &Prefix, layer: usize) -> Vec<(usize, usize)> {
        p.network.layers()[layer]
            .comparators()
            .iter()
            .map(|c| (c.lo(), c.hi()))
            .collect()
    }

    /// Full symmetry group of the reflected first layer: pair permutations
    /// combined with flips inside each pair; the middle channel of an odd `n`
    /// is fixed. The implementation works with the reduced pair-permutation
    /// action, so the oracle below runs with the full group on whole networks.
    fn bz_symmetry_group(n: usize) -> Vec<Vec<usize>> {
        let p = n / 2;
        let mut group = Vec::new();
        for sigma in crate::net::permutations(p) {
            for flips in 0u32..(1 << p) {
                let mut perm = vec![0usize; n];
                if n % 2 == 1 {
                    perm[p] = p + 1;
                }
                for j in 0..p {
                    let target = sigma[j];
                    let (top, bottom) = (target, n + 1 - target);
                    let (img_top, img_bottom) = if flips >> j & 1 == 0 {
                        (top, bottom)
                    } else {
                        (bottom, top)
                    };
                    perm[j] = img_top;
                    perm[n - 1 - j] = img_bottom;
                }
                group.push(perm);
            }
        }
        group
    }

    #[test]
    fn pb_layers() {
        assert_eq!(pairs(&first_layer_pb(6), 0), vec![(1, 2), (3, 4), (5, 6)]);
        assert_eq!(pairs(&first_layer_pb(5), 0), vec![(1, 2), (3, 4)]);
        let p1 = first_layer_pb(1);
        assert_eq!(p1.depth(), 1);
        assert!(p1.network.layers()[0].is_empty());
    }

    #[test]
    fn bz_layers() {
        assert_eq!(pairs(&first_layer_bz(6), 0), vec![(1, 6), (2, 5), (3, 4)]);
        assert_eq!(pairs(&first_layer_bz(2), 0), vec![(1, 2)]);
        assert_eq!(pairs(&first_layer_bz(3), 0), vec![(1, 3)]);
    }

    #[test]
    fn green_filter_8_matches_stride_construction() {
        let g = green_filter(8, 3).unwrap();
        assert_eq!(
            pairs(&g, 0),
            vec![(1, 2), (3, 4), (5, 6), (7, 8)]
        );
        assert_eq!(pairs(&g, 1), vec![(1, 3), (2, 4), (5, 7), (6, 8)]);
        assert_eq!(pairs(&g, 2), vec![(1, 5), (2, 6), (3, 7), (4, 8)]);
    }

    #[test]
    fn green_filter_2_sorts() {
        let g = green_filter(2, 1).unwrap();
        assert_eq!(g.network.verify_sorting().unwrap(), Verdict::Sorting);
    }

    #[test]
    fn green_filter_4_has_six_outputs() {
        let g = green_filter(4, 2).unwrap();
        assert_eq!(g.network.output_set().unwrap().len(), 6);
    }

    #[test]
    fn green_filter_rejects_bad_parameters() {
        assert!(matches!(green_filter(6, 1), Err(Error::NotPowerOfTwo { .. })));
        assert!(matches!(green_filter(8, 4), Err(Error::GreenDepth { .. })));
        assert!(matches!(green_filter(8, 0), Err(Error::GreenDepth { .. })));
    }

    #[test]
    fn prefix_json_round_trip() {
        let p = first_layer_bz(5);
        let text = p.to_json().unwrap();
        assert!(text.contains("\"label\":\"bz\""));
        assert_eq!(Prefix::from_json(&text).unwrap(), p);
    }

    #[test]
    fn two_layer_classes_n2() {
        // second layer empty or {(1,2)}; the repeat of the first layer is
        // dropped, leaving one class
        let classes = enumerate_two_layer_prefixes(2).unwrap();
        assert_eq!(classes.len(), 1);
        assert!(classes[0].network.layers()[1].is_empty());
    }

    #[test]
    fn two_layer_enumeration_respects_limit() {
        assert!(matches!(
            enumerate_two_layer_prefixes(ENUMERATION_LIMIT + 1),
            Err(Error::EnumerationLimit { .. })
        ));
    }

    /// Independent oracle: orbit enumeration with union-find over the full
    /// network-level action (permute, then untangle, then compare).
    fn oracle_class_count(n: usize) -> usize {
        let first = first_layer_bz(n);
        let l1 = first.network.layers()[0].clone();
        let candidates: Vec<Vec<Comparator>> = crate::net::matchings(n)
            .into_iter()
            .filter(|m| !m.iter().any(|c| l1.contains(c)))
            .collect();
        let index: std::collections::HashMap<String, usize> = candidates
            .iter()
            .enumerate()
            .map(|(i, m)| (matching_key(&first, m), i))
            .collect();
        let mut parent: Vec<usize> = (0..candidates.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (i, m) in candidates.iter().enumerate() {
            let mut net = first.network.clone();
            net.push_layer(Layer::new(m.clone()).unwrap()).unwrap();
            for perm in bz_symmetry_group(n) {
                let image = net.permute_channels(&perm).unwrap().untangle();
                let key = image.to_json().unwrap();
                let j = *index.get(&key).unwrap_or_else(|| {
                    panic!("orbit left the candidate set: {key}");
                });
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
        let mut roots: Vec<usize> = (0..candidates.len())
            .map(|i| find(&mut parent, i))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    fn matching_key(first: &Prefix, m: &[Comparator]) -> String {
        let mut net = first.network.clone();
        net.push_layer(Layer::new(m.to_vec()).unwrap()).unwrap();
        net.canonicalize();
        net.to_json().unwrap()
    }

    #[test]
    fn two_layer_classes_match_oracle_small() {
        for n in 2..=6 {
            let fast = enumerate_two_layer_prefixes(n).unwrap().len();
            let slow = oracle_class_count(n);
            assert_eq!(fast, slow, "n={n}");
        }
    }

    #[test]
    fn two_layer_classes_match_oracle_medium() {
        for n in 7..=8 {
            let fast = enumerate_two_layer_prefixes(n).unwrap().len();
            let slow = oracle_class_count(n);
            assert_eq!(fast, slow, "n={n}");
        }
    }

    #[test]
    fn enumerated_representatives_are_pairwise_inequivalent() {
        let n = 5;
        let reps = enumerate_two_layer_prefixes(n).unwrap();
        let group = bz_symmetry_group(n);
        for (i, a) in reps.iter().enumerate() {
            for b in reps.iter().skip(i + 1) {
                let equivalent = group.iter().any(|perm| {
                    a.network.permute_channels(perm).unwrap().untangle() == b.network
                });
                assert!(!equivalent);
            }
        }
    }

    #[test]
    fn generated_prefixes_respect_layer_invariant() {
        for n in 2..=8 {
            for p in [first_layer_pb(n), first_layer_bz(n)] {
                for layer in p.network.layers() {
                    // Layer::new re-validates disjointness
                    assert!(Layer::new(layer.comparators().to_vec()).is_ok());
                }
            }
        }
    }

    #[test]
    fn pb_and_bz_are_permutation_equivalent() {
        for n in 2..=8 {
            let pb = first_layer_pb(n);
            let bz = first_layer_bz(n);
            let found = crate::net::permutations(n).into_iter().any(|perm| {
                pb.network.permute_channels(&perm).unwrap().untangle() == bz.network
            });
            assert!(found, "n={n}");
        }
    }

    #[test]
    fn fitness_of_pb6_is_84_and_bz6_is_72() {
        let pb = first_layer_pb(6);
        let bz = first_layer_bz(6);
        assert_eq!(prefix_fitness(&pb.network, usize::MAX).unwrap(), 84);
        assert_eq!(prefix_fitness(&bz.network, usize::MAX).unwrap(), 72);
    }

    #[test]
    fn optimizer_is_deterministic_and_never_worse() {
        let pb = first_layer_pb(6);
        let cfg = EaConfig {
            sample_size: 1 << 6,
            population: 8,
            generations: 30,
            ..EaConfig::default()
        };
        let a = optimize_prefix(&pb, &cfg).unwrap();
        let b = optimize_prefix(&pb, &cfg).unwrap();
        assert_eq!(a, b);
        let before = prefix_fitness(&pb.network, cfg.sample_size).unwrap();
        let after = prefix_fitness(&a.network, cfg.sample_size).unwrap();
        assert!(after <= before);
    }

    #[test]
    fn optimizer_keeps_an_already_optimal_prefix() {
        let bz = first_layer_bz(4);
        let cfg = EaConfig {
            sample_size: 16,
            population: 6,
            generations: 20,
            ..EaConfig::default()
        };
        let out = optimize_prefix(&bz, &cfg).unwrap();
        let before = prefix_fitness(&bz.network, 16).unwrap();
        let after = prefix_fitness(&out.network, 16).unwrap();
        assert!(after <= before);
    }

    #[test]
    fn ea_config_validation() {
        let cfg = EaConfig {
            population: 0,
            ..EaConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = EaConfig {
            mutation_rate: 1.5,
            ..EaConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
