//! Model-level oracle for the two encodings: for a fixed gate assignment the
//! value variables are functionally determined, so an instance with all gate
//! variables pinned is satisfiable exactly when the pinned network sorts the
//! encoded inputs. Enumerating every depth-3 network on 4 channels checks
//! both encodings against plain simulation, input set by input set.

use sortnet::bits::BitVector;
use sortnet::catalog;
use sortnet::encode::{encode_problem, EncodingMode};
use sortnet::net::{matchings, ComparatorNetwork, Layer};
use sortnet::solver::{solve, SolverConfig, Status};
use sortnet::synth::{initial_inputs, InputStrategy};

fn all_inputs(n: usize) -> Vec<BitVector> {
    (0..1u64 << n).map(|x| BitVector::new(n, x)).collect()
}

#[test]
fn forced_networks_agree_with_simulation_both_modes() {
    let n = 4;
    let inputs = all_inputs(n);
    let layer_choices = matchings(n);
    let cfg = SolverConfig::default();
    let mut sorting_count = 0;
    for l1 in &layer_choices {
        for l2 in &layer_choices {
            for l3 in &layer_choices {
                let mut net = ComparatorNetwork::new(n);
                for l in [l1, l2, l3] {
                    net.push_layer(Layer::new(l.clone()).unwrap()).unwrap();
                }
                let sorts = inputs
                    .iter()
                    .all(|x| net.apply(x).unwrap().is_sorted());
                if sorts {
                    sorting_count += 1;
                }
                for mode in [EncodingMode::Original, EncodingMode::Improved] {
                    let mut inst = encode_problem(
                        n,
                        3,
                        &ComparatorNetwork::new(n),
                        &inputs,
                        mode,
                    )
                    .unwrap();
                    inst.force_network(&net).unwrap();
                    let res = solve(&inst, &cfg).unwrap();
                    let expected = if sorts { Status::Sat } else { Status::Unsat };
                    assert_eq!(res.status, expected, "{mode:?} {net:?}");
                }
            }
        }
    }
    assert!(sorting_count > 0, "some depth-3 networks on 4 channels sort");
}

#[test]
fn known_networks_satisfy_their_instances() {
    // completeness: pinning the free layers of a known sorting network keeps
    // the instance satisfiable, whatever inputs are encoded
    let small = catalog::get("s4d3").unwrap().network;
    let mut inst = encode_problem(
        4,
        3,
        &ComparatorNetwork::new(4),
        &all_inputs(4),
        EncodingMode::Improved,
    )
    .unwrap();
    inst.force_network(&small).unwrap();
    assert_eq!(
        solve(&inst, &SolverConfig::default()).unwrap().status,
        Status::Sat
    );

    for id in ["s17d10-left", "s17d10-right", "s20d11"] {
        let net = catalog::get(id).unwrap().network;
        let n = net.channels();
        let inputs =
            initial_inputs(n, &ComparatorNetwork::new(n), 500, InputStrategy::SmallWindowFirst)
                .unwrap();
        for mode in [EncodingMode::Original, EncodingMode::Improved] {
            let mut inst =
                encode_problem(n, net.depth(), &ComparatorNetwork::new(n), &inputs, mode)
                    .unwrap();
            inst.force_network(&net).unwrap();
            let res = solve(&inst, &SolverConfig::default()).unwrap();
            assert_eq!(res.status, Status::Sat, "{id} {mode:?}");
        }
    }
}

#[test]
fn adding_inputs_never_turns_unsat_into_sat() {
    // monotonicity of the constraint set, checked along incremental runs
    let n = 4;
    let prefix = ComparatorNetwork::new(n);
    for mode in [EncodingMode::Original, EncodingMode::Improved] {
        let mut inst = encode_problem(n, 2, &prefix, &[], mode).unwrap();
        let mut was_unsat = false;
        for x in all_inputs(n) {
            inst.append_input(x).unwrap();
            let status = solve(&inst, &SolverConfig::default()).unwrap().status;
            if was_unsat {
                assert_eq!(status, Status::Unsat, "unsat must be stable under growth");
            }
            was_unsat = status == Status::Unsat;
        }
        assert!(was_unsat, "no depth-2 network sorts 4 channels");
    }
}
