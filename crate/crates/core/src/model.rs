//! Domain types for the two-robot, one-bike ensemble on the line.
//!
//! Robots start at the origin together with the bike. A robot walks at speed
//! at most 1 and rides at speed at most `v`. Only one robot may carry the bike
//! at a time and a parked bike does not move. The sender transmits wirelessly
//! but hears only face to face; the receiver is the mirror image.
//!
//! [`check_result`] re-derives every one of these rules from a finished trace,
//! so nothing produced by the engine is trusted on its word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for colocation, arrival and speed-cap checks.
pub const REL_EPS: f64 = 1e-9;
/// Absolute floor used next to zero.
pub const ABS_EPS: f64 = 1e-12;

pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= ABS_EPS.max(REL_EPS * a.abs().max(b.abs()))
}

/// `a <= b` up to the model tolerance.
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b || approx_eq(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitSide {
    Left,
    Right,
}

impl ExitSide {
    pub const BOTH: [ExitSide; 2] = [ExitSide::Left, ExitSide::Right];

    pub fn sign(self) -> f64 {
        match self {
            ExitSide::Left => -1.0,
            ExitSide::Right => 1.0,
        }
    }
}

impl fmt::Display for ExitSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExitSide::Left => "left",
            ExitSide::Right => "right",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmId {
    /// Opposite directions, biker at full speed, walker at the optimal u1.
    Alg1,
    /// Opposite directions, walker at unit speed, biker at the optimal u2.
    Alg2,
    /// Doubling zig-zag with the receiver imitating the sender.
    Alg3,
    /// Exit known in advance: plain ride sharing.
    OfflineBaseline,
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgorithmId::Alg1 => "alg1",
            AlgorithmId::Alg2 => "alg2",
            AlgorithmId::Alg3 => "alg3",
            AlgorithmId::OfflineBaseline => "baseline",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub v: f64,
    pub d: f64,
    pub side: ExitSide,
    pub algorithm: AlgorithmId,
}

impl Scenario {
    pub fn new(v: f64, d: f64, side: ExitSide, algorithm: AlgorithmId) -> Self {
        Scenario {
            v,
            d,
            side,
            algorithm,
        }
    }

    /// Signed coordinate of the exit.
    pub fn exit(&self) -> f64 {
        self.side.sign() * self.d
    }
}

pub fn validate_scenario(s: &Scenario) -> Result<()> {
    if !(s.v > 1.0) || !s.v.is_finite() {
        return Err(Error::SpeedOutOfRange(s.v));
    }
    if !(s.d > 0.0) || !s.d.is_finite() {
        return Err(Error::NonPositiveDistance(s.d));
    }
    if s.algorithm == AlgorithmId::Alg3 && s.d < 1.0 {
        return Err(Error::Alg3DistanceTooSmall(s.d));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Sender,
    Receiver,
}

impl Role {
    pub const BOTH: [Role; 2] = [Role::Sender, Role::Receiver];

    pub fn other(self) -> Role {
        match self {
            Role::Sender => Role::Receiver,
            Role::Receiver => Role::Sender,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Wireless transmission is a sender-only capability.
    pub fn may_send_wireless(self) -> bool {
        self == Role::Sender
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Sender => "sender",
            Role::Receiver => "receiver",
        })
    }
}

/// Locomotion mode of a trajectory segment. `Parked` only appears on the bike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Walking,
    Biking,
    Parked,
}

impl Mode {
    pub fn speed_cap(self, v: f64) -> f64 {
        match self {
            Mode::Walking => 1.0,
            Mode::Biking => v,
            Mode::Parked => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentState {
    pub role: Role,
    pub position: f64,
    pub mode: Mode,
    pub velocity: f64,
}

impl AgentState {
    pub fn at_origin(role: Role) -> Self {
        AgentState {
            role,
            position: 0.0,
            mode: Mode::Walking,
            velocity: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BikeState {
    pub position: f64,
    pub carrier: Option<Role>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Channel {
    #[serde(rename = "wireless")]
    Wireless,
    #[serde(rename = "f2f")]
    F2F,
}

/// A message always carries the exit coordinate; the addressee is the other robot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Message {
    pub sender_role: Role,
    pub channel: Channel,
    pub payload: f64,
    pub timestamp: f64,
}

impl Message {
    pub fn addressee(&self) -> Role {
        self.sender_role.other()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub t0: f64,
    pub t1: f64,
    pub x0: f64,
    pub x1: f64,
    pub mode: Mode,
}

impl Segment {
    pub fn duration(&self) -> f64 {
        self.t1 - self.t0
    }

    pub fn speed(&self) -> f64 {
        let dt = self.duration();
        if dt > 0.0 {
            (self.x1 - self.x0).abs() / dt
        } else {
            0.0
        }
    }

    pub fn position_at(&self, t: f64) -> f64 {
        let dt = self.duration();
        if dt <= 0.0 {
            return self.x1;
        }
        let f = ((t - self.t0) / dt).clamp(0.0, 1.0);
        self.x0 + (self.x1 - self.x0) * f
    }
}

/// Piecewise-linear position record.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub segments: Vec<Segment>,
}

impl Trajectory {
    pub fn start_time(&self) -> Option<f64> {
        self.segments.first().map(|s| s.t0)
    }

    pub fn end_time(&self) -> Option<f64> {
        self.segments.last().map(|s| s.t1)
    }

    pub fn final_position(&self) -> Option<f64> {
        self.segments.last().map(|s| s.x1)
    }

    /// Position at time `t`; clamps to the first/last recorded point outside the span.
    pub fn position_at(&self, t: f64) -> Option<f64> {
        let first = self.segments.first()?;
        if t <= first.t0 {
            return Some(first.x0);
        }
        // first segment whose end is at or after t
        let idx = self.segments.partition_point(|s| s.t1 < t);
        match self.segments.get(idx) {
            Some(seg) => Some(seg.position_at(t)),
            None => self.final_position(),
        }
    }

    /// Segments of the given mode, with positive duration.
    pub fn intervals(&self, mode: Mode) -> impl Iterator<Item = &Segment> {
        self.segments
            .iter()
            .filter(move |s| s.mode == mode && s.duration() > 0.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectories {
    pub sender: Trajectory,
    pub receiver: Trajectory,
    pub bike: Trajectory,
}

impl Trajectories {
    pub fn agent(&self, role: Role) -> &Trajectory {
        match role {
            Role::Sender => &self.sender,
            Role::Receiver => &self.receiver,
        }
    }

    pub fn agent_mut(&mut self, role: Role) -> &mut Trajectory {
        match role {
            Role::Sender => &mut self.sender,
            Role::Receiver => &mut self.receiver,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arrivals {
    pub sender: f64,
    pub receiver: f64,
}

impl Arrivals {
    pub fn get(&self, role: Role) -> f64 {
        match role {
            Role::Sender => self.sender,
            Role::Receiver => self.receiver,
        }
    }

    pub fn max(&self) -> f64 {
        self.sender.max(self.receiver)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvacuationResult {
    pub scenario: Scenario,
    pub arrival: Arrivals,
    pub evacuation_time: f64,
    pub trajectories: Trajectories,
    pub messages: Vec<Message>,
    pub events: Vec<crate::engine::Event>,
}

impl EvacuationResult {
    pub fn messages_on(&self, channel: Channel) -> usize {
        self.messages
            .iter()
            .filter(|m| m.channel == channel)
            .count()
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}

fn check_trajectory(name: &str, traj: &Trajectory, v: f64) -> Result<()> {
    let first = traj
        .segments
        .first()
        .ok_or_else(|| violation(format!("{name}: empty trajectory")))?;
    if !approx_eq(first.t0, 0.0) || !approx_eq(first.x0, 0.0) {
        return Err(violation(format!(
            "{name}: does not start at the origin at t = 0 ({}, {})",
            first.t0, first.x0
        )));
    }
    for (i, seg) in traj.segments.iter().enumerate() {
        if seg.t1 < seg.t0 {
            return Err(violation(format!(
                "{name}: segment {i} runs backwards in time"
            )));
        }
        let cap = seg.mode.speed_cap(v);
        let dx = (seg.x1 - seg.x0).abs();
        // compare distance against cap * duration so zero-length segments are handled
        if !approx_le(dx, cap * seg.duration()) {
            return Err(violation(format!(
                "{name}: segment {i} speed {} exceeds {:?} cap {cap}",
                seg.speed(),
                seg.mode
            )));
        }
    }
    for (i, pair) in traj.segments.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if !approx_eq(a.t1, b.t0) {
            return Err(violation(format!(
                "{name}: time gap between segments {i} and {}",
                i + 1
            )));
        }
        if !approx_eq(a.x1, b.x0) {
            return Err(violation(format!(
                "{name}: position jump between segments {i} and {}",
                i + 1
            )));
        }
    }
    Ok(())
}

fn overlap(a: &Segment, b: &Segment) -> f64 {
    a.t1.min(b.t1) - a.t0.max(b.t0)
}

/// Structural check of every model invariant on a finished run.
pub fn check_result(r: &EvacuationResult) -> Result<()> {
    let s = &r.scenario;
    let tr = &r.trajectories;
    for role in Role::BOTH {
        check_trajectory(&role.to_string(), tr.agent(role), s.v)?;
        if tr.agent(role).intervals(Mode::Parked).next().is_some() {
            return Err(violation(format!("{role}: robots cannot be parked")));
        }
    }
    check_trajectory("bike", &tr.bike, s.v)?;
    if tr.bike.intervals(Mode::Walking).next().is_some() {
        return Err(violation("bike cannot walk"));
    }

    // at most one biker at any instant
    for a in tr.sender.intervals(Mode::Biking) {
        for b in tr.receiver.intervals(Mode::Biking) {
            let ov = overlap(a, b);
            if ov > ABS_EPS.max(REL_EPS * a.t1.max(b.t1)) {
                return Err(violation(format!(
                    "both robots ride the bike during [{}, {}]",
                    a.t0.max(b.t0),
                    a.t1.min(b.t1)
                )));
            }
        }
    }

    // a moving bike is always under its rider
    for seg in tr.bike.intervals(Mode::Biking) {
        let mid = 0.5 * (seg.t0 + seg.t1);
        let probes = [seg.t0, mid, seg.t1];
        let carried = Role::BOTH.iter().any(|&role| {
            let traj = tr.agent(role);
            traj.intervals(Mode::Biking)
                .any(|a| a.t0 <= mid && mid <= a.t1)
                && probes.iter().all(|&t| {
                    traj.position_at(t)
                        .is_some_and(|x| approx_eq(x, seg.position_at(t)))
                })
        });
        if !carried {
            return Err(violation(format!(
                "bike moves on [{}, {}] without a rider",
                seg.t0, seg.t1
            )));
        }
    }

    // a robot riding moves with the bike
    for role in Role::BOTH {
        for seg in tr.agent(role).intervals(Mode::Biking) {
            let mid = 0.5 * (seg.t0 + seg.t1);
            let bike = tr.bike.position_at(mid).unwrap_or(f64::NAN);
            if !approx_eq(bike, seg.position_at(mid)) {
                return Err(violation(format!(
                    "{role} rides at t = {mid} but the bike is at {bike}"
                )));
            }
        }
    }

    for pair in r.events.windows(2) {
        if pair[1].time < pair[0].time {
            return Err(violation(format!(
                "event times decrease: {} then {}",
                pair[0].time, pair[1].time
            )));
        }
    }

    for m in &r.messages {
        match m.channel {
            Channel::Wireless if !m.sender_role.may_send_wireless() => {
                return Err(violation(format!(
                    "{} sent a wireless message at t = {}",
                    m.sender_role, m.timestamp
                )));
            }
            Channel::F2F => {
                let a = tr.sender.position_at(m.timestamp);
                let b = tr.receiver.position_at(m.timestamp);
                match (a, b) {
                    (Some(a), Some(b)) if approx_eq(a, b) => {}
                    _ => {
                        return Err(violation(format!(
                            "face-to-face message at t = {} between non-colocated robots",
                            m.timestamp
                        )))
                    }
                }
            }
            _ => {}
        }
    }

    if !approx_eq(r.evacuation_time, r.arrival.max()) {
        return Err(violation("evacuation time is not the latest arrival"));
    }
    let exit = s.exit();
    for role in Role::BOTH {
        let traj = tr.agent(role);
        let fin = traj.final_position().unwrap_or(f64::NAN);
        if !approx_eq(fin, exit) {
            return Err(violation(format!(
                "{role} ends at {fin}, exit is at {exit}"
            )));
        }
        let end = traj.end_time().unwrap_or(f64::NAN);
        if !approx_eq(end, r.arrival.get(role)) {
            return Err(violation(format!(
                "{role} trajectory ends at {end} but arrival is {}",
                r.arrival.get(role)
            )));
        }
    }
    Ok(())
}
