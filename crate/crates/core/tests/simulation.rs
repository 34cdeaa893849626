use bikevac::analysis::{bike_share_time, opt_u1, opt_u2, worst_case_formula};
use bikevac::engine::{identical_logs, EventKind};
use bikevac::model::{check_result, Channel, Mode, Role};
use bikevac::{simulate, AlgorithmId, EvacuationResult, ExitSide, Scenario, StrategyParams};

fn run(v: f64, d: f64, side: ExitSide, alg: AlgorithmId) -> EvacuationResult {
    let r = simulate(&Scenario::new(v, d, side, alg), &StrategyParams::optimal()).unwrap();
    check_result(&r).unwrap();
    r
}

fn worst(v: f64, d: f64, alg: AlgorithmId) -> f64 {
    ExitSide::BOTH
        .iter()
        .map(|&s| run(v, d, s, alg).evacuation_time)
        .fold(f64::NEG_INFINITY, f64::max)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn alg1_matches_closed_form() {
    for v in [1.1, 1.5, 2.0, 2.5, 3.0] {
        let u1 = opt_u1(v).value;
        for d in [0.5, 1.0, 7.3] {
            let expected = worst_case_formula(u1, v, v, d).unwrap();
            let got = worst(v, d, AlgorithmId::Alg1);
            assert!(
                rel(got, expected) <= 1e-9,
                "v={v} d={d}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn alg2_matches_closed_form() {
    for v in [3.0, 5.0, 8.0, 10.0] {
        let u2 = opt_u2(v).unwrap().value;
        for d in [0.5, 1.0, 7.3] {
            let expected = worst_case_formula(1.0, u2, v, d).unwrap();
            let got = worst(v, d, AlgorithmId::Alg2);
            assert!(
                rel(got, expected) <= 1e-9,
                "v={v} d={d}: {got} vs {expected}"
            );
        }
    }
}

#[test]
fn alg1_at_two() {
    let r = run(2.0, 1.0, ExitSide::Left, AlgorithmId::Alg1);
    assert!((r.arrival.sender - 1.3555360962780951).abs() <= 1e-9);
    assert!((r.evacuation_time - 3.2110721925561903).abs() <= 1e-9);
    assert_eq!(r.messages_on(Channel::Wireless), 1);
    assert_eq!(r.messages_on(Channel::F2F), 0);

    let r = run(2.0, 1.0, ExitSide::Right, AlgorithmId::Alg1);
    assert!((r.evacuation_time - 3.2110721925561903).abs() <= 1e-9);
    assert_eq!(r.messages_on(Channel::Wireless), 0);
    assert_eq!(r.messages_on(Channel::F2F), 1);
}

#[test]
fn alg1_at_three_with_walking_speed() {
    let s = Scenario::new(3.0, 1.0, ExitSide::Left, AlgorithmId::Alg1);
    let r = simulate(&s, &StrategyParams::optimal().with_u1(1.0)).unwrap();
    assert!((r.evacuation_time - 7.0 / 3.0).abs() <= 1e-12);
}

#[test]
fn alg2_at_five() {
    assert!((worst(5.0, 1.0, AlgorithmId::Alg2) - 1.7403124237432848).abs() <= 1e-9);
}

#[test]
fn alg3_hand_trace() {
    let r = run(20.0, 2.0, ExitSide::Right, AlgorithmId::Alg3);
    assert!((r.evacuation_time - 1.0975).abs() <= 1e-12);
    assert!((r.arrival.sender - r.arrival.receiver).abs() <= 1e-12);
    // the sender leaves the bike 0.95 short of the exit
    let parked: Vec<_> = r.trajectories.bike.intervals(Mode::Parked).collect();
    let last = parked.last().unwrap();
    assert!((last.x0 - 1.05).abs() <= 1e-12);
    assert_eq!(r.messages_on(Channel::Wireless), 1);
}

#[test]
fn baseline_is_the_ride_share_optimum() {
    for (v, d, want) in [(2.0, 1.0, 0.75), (3.0, 2.0, 4.0 / 3.0)] {
        for side in ExitSide::BOTH {
            let r = run(v, d, side, AlgorithmId::OfflineBaseline);
            assert!((r.evacuation_time - want).abs() <= 1e-12);
            assert_eq!(r.evacuation_time, bike_share_time(d, v).unwrap());
        }
    }
}

#[test]
fn bike_follows_its_rider_through_turns() {
    // the receiver reverses while riding, so the bike path must bend with it
    let r = run(1.2, 0.5, ExitSide::Left, AlgorithmId::Alg1);
    let bike = &r.trajectories.bike;
    let rider = r.trajectories.agent(Role::Receiver);
    for seg in rider.intervals(Mode::Biking) {
        for t in [seg.t0, 0.5 * (seg.t0 + seg.t1), seg.t1] {
            let (b, x) = (bike.position_at(t).unwrap(), seg.position_at(t));
            assert!((b - x).abs() <= 1e-12, "t={t}: bike {b}, rider {x}");
        }
    }
    assert!(bike.segments.len() >= 2);
}

#[test]
fn only_the_sender_uses_wireless() {
    for alg in [AlgorithmId::Alg1, AlgorithmId::Alg2, AlgorithmId::Alg3] {
        let v = match alg {
            AlgorithmId::Alg1 => 2.0,
            AlgorithmId::Alg2 => 5.0,
            _ => 20.0,
        };
        for side in ExitSide::BOTH {
            for d in [1.0, 3.0, 17.0] {
                let r = run(v, d, side, alg);
                for m in &r.messages {
                    match m.channel {
                        Channel::Wireless => assert_eq!(m.sender_role, Role::Sender),
                        Channel::F2F => {
                            let a = r.trajectories.sender.position_at(m.timestamp).unwrap();
                            let b = r.trajectories.receiver.position_at(m.timestamp).unwrap();
                            assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn runs_are_deterministic() {
    for alg in [AlgorithmId::Alg1, AlgorithmId::Alg2, AlgorithmId::Alg3] {
        let v = if alg == AlgorithmId::Alg1 { 2.5 } else { 10.0 };
        let a = run(v, 7.3, ExitSide::Left, alg);
        let b = run(v, 7.3, ExitSide::Left, alg);
        assert!(identical_logs(&a.events, &b.events));
        assert_eq!(a.evacuation_time.to_bits(), b.evacuation_time.to_bits());
    }
}

#[test]
fn event_log_ends_with_both_exits() {
    let r = run(20.0, 5.0, ExitSide::Left, AlgorithmId::Alg3);
    let exits = r
        .events
        .iter()
        .filter(|e| matches!(e.kind, EventKind::ExitReached(_)))
        .count();
    assert!(exits >= 2);
    assert!(r.events.windows(2).all(|w| w[0].time <= w[1].time));
}

#[test]
fn invalid_inputs_are_rejected() {
    let p = StrategyParams::optimal();
    let cases = [
        Scenario::new(1.0, 1.0, ExitSide::Left, AlgorithmId::Alg1),
        Scenario::new(2.0, 0.0, ExitSide::Left, AlgorithmId::Alg1),
        Scenario::new(20.0, 0.5, ExitSide::Left, AlgorithmId::Alg3),
        Scenario::new(2.0, 1.0, ExitSide::Left, AlgorithmId::Alg2),
        Scenario::new(5.0, 1.0, ExitSide::Left, AlgorithmId::Alg1),
    ];
    for s in cases {
        let e = simulate(&s, &p).unwrap_err();
        assert!(e.is_input_error(), "{s:?}: {e}");
    }
    let s = Scenario::new(2.0, 1.0, ExitSide::Left, AlgorithmId::Alg1);
    assert!(simulate(&s, &p.with_u1(1.5)).unwrap_err().is_input_error());
}
