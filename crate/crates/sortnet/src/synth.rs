//! The iterative synthesis / proof loop, and the prefix-sweep lower-bound
//! driver.
//!
//! The loop encodes the current input set, solves, and on a satisfying model
//! decodes the network and verifies it exhaustively. A verified network ends
//! the loop; otherwise the unsorted inputs of minimal window size join the
//! constraint set (new inputs extend the live instance, reusing the gate
//! variables) and the loop repeats. An unsatisfiable instance refutes the
//! whole `(n, d, prefix)` question, because its inputs are a subset of all
//! inputs. The input set grows strictly, so the loop terminates.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::encode::{decode_model, encode_problem, CnfInstance, EncodingMode};
use crate::error::{Error, Result};
use crate::net::{ComparatorNetwork, Verdict, EXHAUSTIVE_LIMIT};
use crate::prefix::Prefix;
use crate::rng::Rng;
use crate::solver::{solve, solve_external, SolverConfig, Status};

/// Which solver decides the instances.
#[derive(Debug, Clone)]
pub enum SolverBackend {
    Internal(SolverConfig),
    External(Vec<String>),
}

impl Default for SolverBackend {
    fn default() -> Self {
        SolverBackend::Internal(SolverConfig::default())
    }
}

impl SolverBackend {
    fn run(&self, inst: &CnfInstance) -> Result<crate::solver::SolveResult> {
        match self {
            SolverBackend::Internal(cfg) => solve(inst, cfg),
            SolverBackend::External(command) => solve_external(inst, command),
        }
    }
}

/// How `initial_inputs` picks its vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputStrategy {
    /// Ascending window size, ties by numeric value.
    SmallWindowFirst,
    /// Deterministic shuffle of the candidates.
    Random { seed: u64 },
}

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub mode: EncodingMode,
    /// Counterexamples added per iteration.
    pub batch_size: usize,
    /// Re-encode from scratch every this many iterations.
    pub reencode_every: usize,
    pub strategy: InputStrategy,
    pub backend: SolverBackend,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            mode: EncodingMode::Improved,
            batch_size: 1,
            reencode_every: 64,
            strategy: InputStrategy::SmallWindowFirst,
            backend: SolverBackend::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum InitialInputs {
    Count(usize),
    Explicit(Vec<BitVector>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthesisVerdict {
    /// A verified sorting network extending the prefix at the target depth.
    Found,
    /// No depth-`d` network extending this prefix sorts even the used inputs.
    NoNetwork,
    /// Solver budget exhausted; state preserved for resume.
    Unknown,
}

/// Captured loop state, serializable as a resume file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoopState {
    pub n: usize,
    pub d: usize,
    pub prefix: ComparatorNetwork,
    pub mode: EncodingMode,
    pub inputs: Vec<u64>,
    pub iteration: usize,
}

#[derive(Debug, Clone)]
pub struct SynthesisOutcome {
    pub verdict: SynthesisVerdict,
    pub network: Option<ComparatorNetwork>,
    pub iterations: usize,
    pub inputs: Vec<BitVector>,
    pub seconds: f64,
    pub state: Option<LoopState>,
}

impl SynthesisOutcome {
    pub fn inputs_used(&self) -> usize {
        self.inputs.len()
    }
}

/// Among all inputs the network fails to sort (and outside `exclude`), one of
/// minimal window size; ties go to the numerically smallest.
pub fn find_counterexample(
    net: &ComparatorNetwork,
    exclude: &HashSet<BitVector>,
) -> Result<Option<BitVector>> {
    Ok(find_counterexamples(net, exclude, 1)?.into_iter().next())
}

/// The `limit` best counterexamples by `(window size, value)`.
pub fn find_counterexamples(
    net: &ComparatorNetwork,
    exclude: &HashSet<BitVector>,
    limit: usize,
) -> Result<Vec<BitVector>> {
    if net.channels() > EXHAUSTIVE_LIMIT {
        return Err(Error::ExhaustiveLimit {
            channels: net.channels(),
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    if limit == 0 {
        return Ok(Vec::new());
    }
    let n = net.channels();
    let mut best: Vec<(usize, u64)> = Vec::with_capacity(limit + 1);
    for x in 0..(1u64 << n) {
        let v = BitVector::new(n, x);
        let out = net.apply(&v)?;
        if out.is_sorted() || exclude.contains(&v) {
            continue;
        }
        let key = (v.window().size, x);
        if best.len() < limit {
            best.push(key);
            best.sort_unstable();
        } else if key < *best.last().unwrap() {
            best.pop();
            best.push(key);
            best.sort_unstable();
        }
        // unsorted vectors have window size at least 2, and values only grow
        if best.len() == limit && best.last().unwrap().0 == 2 {
            break;
        }
    }
    Ok(best
        .into_iter()
        .map(|(_, x)| BitVector::new(n, x))
        .collect())
}

/// Deterministic selection of `count` distinct inputs that the prefix does
/// not already sort.
pub fn initial_inputs(
    n: usize,
    prefix: &ComparatorNetwork,
    count: usize,
    strategy: InputStrategy,
) -> Result<Vec<BitVector>> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::ExhaustiveLimit {
            channels: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut candidates: Vec<BitVector> = Vec::new();
    for x in 0..(1u64 << n) {
        let v = BitVector::new(n, x);
        if !prefix.apply(&v)?.is_sorted() {
            candidates.push(v);
        }
    }
    match strategy {
        InputStrategy::SmallWindowFirst => {
            candidates.sort_by_key(|v| (v.window().size, v.bits()));
        }
        InputStrategy::Random { seed } => {
            Rng::new(seed).shuffle(&mut candidates);
        }
    }
    candidates.truncate(count);
    Ok(candidates)
}

/// Search for a depth-`d` sorting network extending `prefix`, growing the
/// input set from counterexamples.
pub fn synthesize(
    n: usize,
    d: usize,
    prefix: &ComparatorNetwork,
    initial: InitialInputs,
    cfg: &SynthConfig,
) -> Result<SynthesisOutcome> {
    let inputs = match initial {
        InitialInputs::Count(count) => initial_inputs(n, prefix, count, cfg.strategy)?,
        InitialInputs::Explicit(list) => list,
    };
    run_loop(n, d, prefix, inputs, 0, cfg)
}

/// Continue an interrupted run from its saved state.
pub fn resume(state: LoopState, cfg: &SynthConfig) -> Result<SynthesisOutcome> {
    let inputs = state
        .inputs
        .iter()
        .map(|&x| BitVector::new(state.n, x))
        .collect();
    let mut cfg = cfg.clone();
    cfg.mode = state.mode;
    run_loop(
        state.n,
        state.d,
        &state.prefix,
        inputs,
        state.iteration,
        &cfg,
    )
}

fn run_loop(
    n: usize,
    d: usize,
    prefix: &ComparatorNetwork,
    mut inputs: Vec<BitVector>,
    start_iteration: usize,
    cfg: &SynthConfig,
) -> Result<SynthesisOutcome> {
    if cfg.batch_size == 0 || cfg.reencode_every == 0 {
        return Err(Error::InvalidConfig(
            "batch_size and reencode_every must be positive".into(),
        ));
    }
    let start = Instant::now();
    let mut iterations = start_iteration;
    let mut used: HashSet<BitVector> = inputs.iter().copied().collect();
    let mut inst = encode_problem(n, d, prefix, &inputs, cfg.mode)?;
    loop {
        iterations += 1;
        let result = cfg.backend.run(&inst)?;
        match result.status {
            Status::Unknown => {
                return Ok(SynthesisOutcome {
                    verdict: SynthesisVerdict::Unknown,
                    network: None,
                    iterations,
                    seconds: start.elapsed().as_secs_f64(),
                    state: Some(LoopState {
                        n,
                        d,
                        prefix: prefix.clone(),
                        mode: cfg.mode,
                        inputs: inputs.iter().map(|v| v.bits()).collect(),
                        iteration: iterations,
                    }),
                    inputs,
                });
            }
            Status::Unsat => {
                // sound for the full question: the inputs are a subset of all inputs
                return Ok(SynthesisOutcome {
                    verdict: SynthesisVerdict::NoNetwork,
                    network: None,
                    iterations,
                    seconds: start.elapsed().as_secs_f64(),
                    state: None,
                    inputs,
                });
            }
            Status::Sat => {
                let model = result.model.as_ref().expect("sat carries a model");
                let candidate = decode_model(&inst, model)?;
                match candidate.verify_sorting()? {
                    Verdict::Sorting => {
                        return Ok(SynthesisOutcome {
                            verdict: SynthesisVerdict::Found,
                            network: Some(candidate),
                            iterations,
                            seconds: start.elapsed().as_secs_f64(),
                            state: None,
                            inputs,
                        });
                    }
                    Verdict::Counterexample(_) => {
                        let batch = find_counterexamples(&candidate, &used, cfg.batch_size)?;
                        debug_assert!(!batch.is_empty());
                        if batch.is_empty() {
                            return Err(Error::SolverIntegrity(
                                "verification failed but no counterexample found".into(),
                            ));
                        }
                        for x in &batch {
                            used.insert(*x);
                            inputs.push(*x);
                        }
                        if iterations.is_multiple_of(cfg.reencode_every) {
                            inst = encode_problem(n, d, prefix, &inputs, cfg.mode)?;
                        } else {
                            for x in batch {
                                inst.append_input(x)?;
                            }
                        }
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OverallVerdict {
    /// Every prefix refuted: no depth-`d` sorting network extends any of them.
    NoNetwork,
    /// Some prefix extends to a verified network at this depth.
    NetworkFound,
    /// At least one run hit its budget.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrefixReport {
    pub id: String,
    pub verdict: SynthesisVerdict,
    pub iterations: usize,
    pub inputs: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LowerBoundReport {
    pub n: usize,
    pub d: usize,
    pub mode: EncodingMode,
    pub results: Vec<PrefixReport>,
    pub overall: OverallVerdict,
    pub assumptions: Vec<String>,
    pub total_seconds: f64,
}

impl LowerBoundReport {
    /// Human-readable table, one row per prefix.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<16} {:<12} {:>10} {:>8} {:>9}\n",
            "prefix", "verdict", "iterations", "inputs", "seconds"
        ));
        for row in &self.results {
            let verdict = match row.verdict {
                SynthesisVerdict::Found => "sat",
                SynthesisVerdict::NoNetwork => "unsat",
                SynthesisVerdict::Unknown => "unknown",
            };
            out.push_str(&format!(
                "{:<16} {:<12} {:>10} {:>8} {:>9.2}\n",
                row.id, verdict, row.iterations, row.inputs, row.seconds
            ));
        }
        let overall = match self.overall {
            OverallVerdict::NoNetwork => format!(
                "no sorting network of depth {} extends any given prefix",
                self.d
            ),
            OverallVerdict::NetworkFound => {
                format!("a sorting network of depth {} exists", self.d)
            }
            OverallVerdict::Inconclusive => "inconclusive (budget exhausted)".to_string(),
        };
        out.push_str(&format!("overall: {overall}\n"));
        for assumption in &self.assumptions {
            out.push_str(&format!("note: {assumption}\n"));
        }
        out
    }
}

/// Run the loop once per prefix over a bounded worker pool. The overall
/// lower-bound verdict is only as strong as the prefix set: the caller must
/// supply representatives covering all networks up to symmetry.
pub fn prove_lower_bound(
    n: usize,
    d: usize,
    prefixes: &[Prefix],
    cfg: &SynthConfig,
    parallelism: usize,
) -> Result<LowerBoundReport> {
    if prefixes.is_empty() {
        return Err(Error::InvalidConfig("prefix list must be nonempty".into()));
    }
    let start = Instant::now();
    let workers = parallelism.max(1).min(prefixes.len());
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<PrefixReport>>> = Mutex::new(vec![None; prefixes.len()]);
    let errors: Mutex<Vec<Error>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= prefixes.len() {
                    break;
                }
                let prefix = &prefixes[idx];
                let id = format!("{}-{:03}", prefix.label, idx);
                match synthesize(n, d, &prefix.network, InitialInputs::Count(0), cfg) {
                    Ok(outcome) => {
                        let report = PrefixReport {
                            id,
                            verdict: outcome.verdict,
                            iterations: outcome.iterations,
                            inputs: outcome.inputs_used(),
                            seconds: outcome.seconds,
                        };
                        results.lock().unwrap()[idx] = Some(report);
                    }
                    Err(e) => {
                        errors.lock().unwrap().push(e);
                        break;
                    }
                }
            });
        }
    });
    if let Some(e) = errors.into_inner().unwrap().into_iter().next() {
        return Err(e);
    }
    let results: Vec<PrefixReport> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("all prefixes processed"))
        .collect();
    let overall = if results
        .iter()
        .any(|r| r.verdict == SynthesisVerdict::Unknown)
    {
        OverallVerdict::Inconclusive
    } else if results
        .iter()
        .any(|r| r.verdict == SynthesisVerdict::Found)
    {
        OverallVerdict::NetworkFound
    } else {
        OverallVerdict::NoNetwork
    };
    Ok(LowerBoundReport {
        n,
        d,
        mode: cfg.mode,
        results,
        overall,
        assumptions: vec![
            "the prefix set must cover all depth-d networks up to symmetry for the overall verdict to bound the depth".into(),
            "no structural constraints on the last layers were applied".into(),
        ],
        total_seconds: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prefix::{enumerate_two_layer_prefixes, first_layer_bz};

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn counterexample_for_identity_three_channels() {
        let net = ComparatorNetwork::new(3);
        let cx = find_counterexample(&net, &HashSet::new()).unwrap();
        assert_eq!(cx, Some(bv("010")));
    }

    #[test]
    fn no_counterexample_for_a_sorting_network() {
        let net = crate::testutil::example4();
        assert_eq!(find_counterexample(&net, &HashSet::new()).unwrap(), None);
    }

    #[test]
    fn exclusion_reveals_the_next_candidate() {
        let net = ComparatorNetwork::new(3);
        let exclude: HashSet<BitVector> = [bv("010")].into_iter().collect();
        assert_eq!(
            find_counterexample(&net, &exclude).unwrap(),
            Some(bv("101"))
        );
    }

    #[test]
    fn unique_failure_is_reported() {
        // this network sorts every 3-bit input except 110
        let net =
            ComparatorNetwork::from_pairs(3, &[&[(1, 2)], &[(2, 3)]]).unwrap();
        let failures: Vec<BitVector> = (0..8u64)
            .map(|x| BitVector::new(3, x))
            .filter(|v| !net.apply(v).unwrap().is_sorted())
            .collect();
        assert_eq!(failures, vec![bv("110")]);
        assert_eq!(
            find_counterexample(&net, &HashSet::new()).unwrap(),
            Some(bv("110"))
        );
    }

    #[test]
    fn batched_counterexamples_are_sorted_by_window_then_value() {
        let net = ComparatorNetwork::new(3);
        let batch = find_counterexamples(&net, &HashSet::new(), 3).unwrap();
        assert_eq!(batch, vec![bv("010"), bv("101"), bv("100")]);
    }

    #[test]
    fn chosen_counterexample_has_minimal_window() {
        let mut rng = crate::rng::Rng::new(41);
        for _ in 0..40 {
            let n = 3 + rng.below(4);
            let mut net = ComparatorNetwork::new(n);
            for _ in 0..rng.below(3) {
                let mut comps = Vec::new();
                let mut free: Vec<usize> = (1..=n).collect();
                while free.len() >= 2 && rng.below(2) == 0 {
                    let i = free.remove(rng.below(free.len()));
                    let j = free.remove(rng.below(free.len()));
                    comps.push(crate::net::Comparator::new(i.min(j), i.max(j)).unwrap());
                }
                net.push_layer(crate::net::Layer::new(comps).unwrap()).unwrap();
            }
            let exclude: HashSet<BitVector> = (0..1u64 << n)
                .filter(|_| rng.below(4) == 0)
                .map(|x| BitVector::new(n, x))
                .collect();
            let brute: Option<(usize, u64)> = (0..1u64 << n)
                .filter_map(|x| {
                    let v = BitVector::new(n, x);
                    if exclude.contains(&v) || net.apply(&v).unwrap().is_sorted() {
                        return None;
                    }
                    Some((v.window().size, x))
                })
                .min();
            let chosen = find_counterexample(&net, &exclude).unwrap();
            assert_eq!(
                chosen.map(|v| (v.window().size, v.bits())),
                brute,
                "n={n} exclude={exclude:?}"
            );
        }
    }

    #[test]
    fn initial_inputs_examples() {
        let empty = ComparatorNetwork::new(3);
        assert!(initial_inputs(3, &empty, 0, InputStrategy::SmallWindowFirst)
            .unwrap()
            .is_empty());
        let two = initial_inputs(3, &empty, 2, InputStrategy::SmallWindowFirst).unwrap();
        assert_eq!(two, vec![bv("010"), bv("101")]);
        let all = initial_inputs(3, &empty, 1 << 3, InputStrategy::SmallWindowFirst).unwrap();
        assert_eq!(all.len(), 4); // the four unsorted 3-bit vectors
        let random = initial_inputs(3, &empty, 4, InputStrategy::Random { seed: 5 }).unwrap();
        assert_eq!(random.len(), 4);
        let random2 = initial_inputs(3, &empty, 4, InputStrategy::Random { seed: 5 }).unwrap();
        assert_eq!(random, random2);
    }

    #[test]
    fn synthesize_two_channels() {
        let outcome = synthesize(
            2,
            1,
            &ComparatorNetwork::new(2),
            InitialInputs::Count(0),
            &SynthConfig::default(),
        )
        .unwrap();
        assert_eq!(outcome.verdict, SynthesisVerdict::Found);
        assert!(outcome.iterations <= 2);
        let net = outcome.network.unwrap();
        assert_eq!(net.size(), 1);
        assert_eq!(net.verify_sorting().unwrap(), Verdict::Sorting);
    }

    #[test]
    fn synthesize_four_channels_depth_three() {
        for mode in [EncodingMode::Original, EncodingMode::Improved] {
            let cfg = SynthConfig {
                mode,
                ..SynthConfig::default()
            };
            let outcome = synthesize(
                4,
                3,
                &ComparatorNetwork::new(4),
                InitialInputs::Count(0),
                &cfg,
            )
            .unwrap();
            assert_eq!(outcome.verdict, SynthesisVerdict::Found);
            let net = outcome.network.unwrap();
            assert_eq!(net.depth(), 3);
            assert_eq!(net.verify_sorting().unwrap(), Verdict::Sorting);
        }
    }

    #[test]
    fn depth_two_on_four_channels_is_refuted_and_resolves_fresh() {
        let outcome = synthesize(
            4,
            2,
            &ComparatorNetwork::new(4),
            InitialInputs::Count(0),
            &SynthConfig::default(),
        )
        .unwrap();
        assert_eq!(outcome.verdict, SynthesisVerdict::NoNetwork);
        // re-solve the final input set from a fresh encoding
        for mode in [EncodingMode::Original, EncodingMode::Improved] {
            let inst = encode_problem(4, 2, &ComparatorNetwork::new(4), &outcome.inputs, mode)
                .unwrap();
            let res = solve(&inst, &SolverConfig::default()).unwrap();
            assert_eq!(res.status, Status::Unsat);
        }
    }

    #[test]
    fn unknown_outcome_preserves_state_and_resumes() {
        let cfg = SynthConfig {
            backend: SolverBackend::Internal(SolverConfig {
                max_conflicts: Some(0),
                ..SolverConfig::default()
            }),
            ..SynthConfig::default()
        };
        let outcome = synthesize(
            4,
            3,
            &ComparatorNetwork::new(4),
            InitialInputs::Explicit(vec![bv("0101"), bv("1010")]),
            &cfg,
        )
        .unwrap();
        assert_eq!(outcome.verdict, SynthesisVerdict::Unknown);
        let state = outcome.state.unwrap();
        let text = serde_json::to_string(&state).unwrap();
        let state: LoopState = serde_json::from_str(&text).unwrap();
        let resumed = resume(state, &SynthConfig::default()).unwrap();
        assert_eq!(resumed.verdict, SynthesisVerdict::Found);
    }

    #[test]
    fn batching_counterexamples_cuts_iterations() {
        let single = synthesize(
            6,
            5,
            &first_layer_bz(6).network,
            InitialInputs::Count(0),
            &SynthConfig::default(),
        )
        .unwrap();
        let batched = synthesize(
            6,
            5,
            &first_layer_bz(6).network,
            InitialInputs::Count(0),
            &SynthConfig {
                batch_size: 8,
                ..SynthConfig::default()
            },
        )
        .unwrap();
        assert_eq!(single.verdict, SynthesisVerdict::Found);
        assert_eq!(batched.verdict, SynthesisVerdict::Found);
        assert!(batched.iterations < single.iterations);
    }

    #[test]
    fn loop_input_set_grows_strictly() {
        let outcome = synthesize(
            5,
            5,
            &ComparatorNetwork::new(5),
            InitialInputs::Count(0),
            &SynthConfig::default(),
        )
        .unwrap();
        assert_eq!(outcome.verdict, SynthesisVerdict::Found);
        let distinct: HashSet<_> = outcome.inputs.iter().collect();
        assert_eq!(distinct.len(), outcome.inputs.len());
        assert!(outcome.iterations as u64 <= 1 << 5);
    }

    #[test]
    fn prove_depth_two_lower_bound_for_four_channels() {
        let prefixes = vec![first_layer_bz(4)];
        let report =
            prove_lower_bound(4, 2, &prefixes, &SynthConfig::default(), 2).unwrap();
        assert_eq!(report.overall, OverallVerdict::NoNetwork);
        assert_eq!(report.results.len(), 1);
        assert_eq!(report.results[0].verdict, SynthesisVerdict::NoNetwork);
        let table = report.render_table();
        assert!(table.contains("unsat"));
        assert!(table.contains("overall: no sorting network of depth 2"));
        let json = serde_json::to_string(&report).unwrap();
        let back: LowerBoundReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.results.len(), 1);
    }

    #[test]
    fn prove_is_inconclusive_on_budget() {
        let prefixes = vec![first_layer_bz(5)];
        let cfg = SynthConfig {
            backend: SolverBackend::Internal(SolverConfig {
                max_conflicts: Some(0),
                ..SolverConfig::default()
            }),
            ..SynthConfig::default()
        };
        let report = prove_lower_bound(5, 3, &prefixes, &cfg, 1).unwrap();
        assert_eq!(report.overall, OverallVerdict::Inconclusive);
    }

    #[test]
    fn two_layer_sweep_at_depth_two_resolves_without_search() {
        // depth 2 with 2-layer prefixes leaves no free layers: every prefix
        // is refuted by constant propagation alone (none of them sorts)
        let prefixes = enumerate_two_layer_prefixes(4).unwrap();
        let report =
            prove_lower_bound(4, 2, &prefixes, &SynthConfig::default(), 2).unwrap();
        assert_eq!(report.results.len(), prefixes.len());
        assert_eq!(report.overall, OverallVerdict::NoNetwork);
    }
}
