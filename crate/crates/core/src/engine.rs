//! Exact event-driven simulation.
//!
//! Robots move at constant velocity between events, so every next-event time
//! is the solution of a linear equation. The engine never steps time on a
//! grid: it jumps straight to the earliest pending event, applies it, hands it
//! to the strategy and applies whatever the strategy answers.
//!
//! Simultaneous events are resolved by [`EventKind::rank`]; after each event
//! all candidate times are recomputed from scratch, so an event invalidated by
//! an earlier one at the same instant simply never fires.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    approx_eq, validate_scenario, AgentState, Arrivals, BikeState, Channel, EvacuationResult,
    Message, Mode, Role, Scenario, Segment, Trajectories, Trajectory,
};

/// Upper bound on processed events before a run is declared stuck.
pub const MAX_EVENTS: usize = 100_000;

// Tighter than the model tolerance: engine arithmetic is exact up to rounding.
const SNAP_REL: f64 = 1e-12;
const SNAP_ABS: f64 = 1e-13;

fn snap_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= SNAP_ABS.max(SNAP_REL * a.abs().max(b.abs()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum StopCondition {
    ReachCoordinate(f64),
    MeetAgent(Role),
    MessageReceived,
    Forever,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionCommand {
    pub agent: Role,
    pub velocity: f64,
    pub until: StopCondition,
}

/// What a strategy may ask of the world.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    Move(MotionCommand),
    PickBike(Role),
    DropBike(Role),
    SendWireless {
        from: Role,
        payload: f64,
    },
    SendF2F {
        from: Role,
        payload: f64,
    },
    /// Leave through the exit; the robot must be standing on it.
    Evacuate(Role),
}

impl Action {
    pub fn go(agent: Role, velocity: f64, until: StopCondition) -> Self {
        Action::Move(MotionCommand {
            agent,
            velocity,
            until,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EventKind {
    ExitReached(Role),
    WaypointReached(Role),
    /// The first robot was chasing the second and caught it.
    Colocated(Role, Role),
    BikeDropped(Role),
    BikePicked(Role),
    WirelessDelivered(Message),
    F2FDelivered(Message),
}

impl EventKind {
    /// Processing order among events at the same instant.
    pub fn rank(&self) -> u8 {
        match self {
            EventKind::ExitReached(_) => 0,
            EventKind::WaypointReached(_) => 1,
            EventKind::Colocated(..) => 2,
            EventKind::BikeDropped(_) => 3,
            EventKind::BikePicked(_) => 4,
            EventKind::WirelessDelivered(_) => 5,
            EventKind::F2FDelivered(_) => 6,
        }
    }

    fn tiebreak(&self) -> (u8, usize) {
        let role = match self {
            EventKind::ExitReached(r)
            | EventKind::WaypointReached(r)
            | EventKind::Colocated(r, _)
            | EventKind::BikeDropped(r)
            | EventKind::BikePicked(r) => *r,
            EventKind::WirelessDelivered(m) | EventKind::F2FDelivered(m) => m.addressee(),
        };
        (self.rank(), role.index())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
}

/// Robot behaviour: reacts to events with actions.
pub trait Strategy {
    fn start(&mut self, world: &World) -> Result<Vec<Action>>;
    fn on_event(&mut self, event: &Event, world: &World) -> Result<Vec<Action>>;
}

/// Smallest `t >= 0` at which two constant-velocity points coincide.
pub fn next_meet_time(p1: f64, v1: f64, p2: f64, v2: f64) -> Option<f64> {
    if p1 == p2 {
        return Some(0.0);
    }
    let closing = v1 - v2;
    if closing == 0.0 {
        return None;
    }
    let t = (p2 - p1) / closing;
    (t >= 0.0).then_some(t)
}

#[derive(Debug, Clone)]
struct TrackBuilder {
    t0: f64,
    x0: f64,
    mode: Mode,
    segments: Vec<Segment>,
}

impl TrackBuilder {
    fn new(mode: Mode) -> Self {
        TrackBuilder {
            t0: 0.0,
            x0: 0.0,
            mode,
            segments: Vec::new(),
        }
    }

    /// Close the open segment at `(t, x)` and open a new one in `mode`.
    fn cut(&mut self, t: f64, x: f64, mode: Mode) {
        if t > self.t0 {
            self.segments.push(Segment {
                t0: self.t0,
                t1: t,
                x0: self.x0,
                x1: x,
                mode: self.mode,
            });
            self.t0 = t;
        }
        self.x0 = x;
        self.mode = mode;
    }

    fn finish(mut self, t: f64, x: f64) -> Trajectory {
        self.cut(t, x, self.mode);
        if self.segments.is_empty() {
            // never moved: keep one degenerate segment so the trace is not empty
            self.segments.push(Segment {
                t0: t,
                t1: t,
                x0: x,
                x1: x,
                mode: self.mode,
            });
        }
        Trajectory {
            segments: self.segments,
        }
    }
}

#[derive(Debug, Clone)]
struct Agent {
    state: AgentState,
    until: StopCondition,
    known_exit: Option<f64>,
    /// Set once ExitReached fired at the current spot; cleared on leaving it.
    at_exit_reported: bool,
    evacuated_at: Option<f64>,
    track: TrackBuilder,
}

/// Mutable world state of one run.
#[derive(Debug, Clone)]
pub struct World {
    scenario: Scenario,
    exit: f64,
    time: f64,
    agents: [Agent; 2],
    bike: BikeState,
    bike_track: TrackBuilder,
    pending: VecDeque<Event>,
    log: Vec<Event>,
    messages: Vec<Message>,
}

impl World {
    pub fn new(scenario: &Scenario) -> Self {
        let agent = |role| Agent {
            state: AgentState::at_origin(role),
            until: StopCondition::Forever,
            known_exit: None,
            at_exit_reported: false,
            evacuated_at: None,
            track: TrackBuilder::new(Mode::Walking),
        };
        World {
            scenario: *scenario,
            exit: scenario.exit(),
            time: 0.0,
            agents: [agent(Role::Sender), agent(Role::Receiver)],
            bike: BikeState {
                position: 0.0,
                carrier: None,
            },
            bike_track: TrackBuilder::new(Mode::Parked),
            pending: VecDeque::new(),
            log: Vec::new(),
            messages: Vec::new(),
        }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn bike_speed(&self) -> f64 {
        self.scenario.v
    }

    pub fn agent(&self, role: Role) -> &AgentState {
        &self.agents[role.index()].state
    }

    pub fn position(&self, role: Role) -> f64 {
        self.agent(role).position
    }

    /// Exit coordinate as known to `role` (own discovery or a message).
    pub fn known_exit(&self, role: Role) -> Option<f64> {
        self.agents[role.index()].known_exit
    }

    pub fn evacuated(&self, role: Role) -> bool {
        self.agents[role.index()].evacuated_at.is_some()
    }

    pub fn bike(&self) -> &BikeState {
        &self.bike
    }

    pub fn events(&self) -> &[Event] {
        &self.log
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    /// Teleport a robot (and the bike it carries). For setting up test worlds.
    pub fn place(&mut self, role: Role, x: f64) {
        let t = self.time;
        let a = &mut self.agents[role.index()];
        a.state.position = x;
        a.track.t0 = t;
        a.track.x0 = x;
        self.sync_bike();
    }

    fn colocated(&self) -> bool {
        approx_eq(self.position(Role::Sender), self.position(Role::Receiver))
    }

    fn sync_bike(&mut self) {
        if let Some(c) = self.bike.carrier {
            self.bike.position = self.agents[c.index()].state.position;
        }
    }

    /// Validate and record a message, updating the addressee's knowledge.
    pub fn deliver(&mut self, msg: &Message) -> Result<Event> {
        let time = self.time;
        match msg.channel {
            Channel::Wireless if !msg.sender_role.may_send_wireless() => {
                return Err(Error::CommViolation {
                    time,
                    reason: format!("{} cannot transmit wirelessly", msg.sender_role),
                });
            }
            Channel::F2F if !self.colocated() => {
                return Err(Error::CommViolation {
                    time,
                    reason: format!(
                        "face-to-face from {} at {} to {} at {}",
                        msg.sender_role,
                        self.position(msg.sender_role),
                        msg.addressee(),
                        self.position(msg.addressee())
                    ),
                });
            }
            _ => {}
        }
        let to = msg.addressee();
        let a = &mut self.agents[to.index()];
        a.known_exit = Some(msg.payload);
        if a.until == StopCondition::MessageReceived {
            self.set_motion(to, 0.0, StopCondition::Forever);
        }
        self.messages.push(*msg);
        let kind = match msg.channel {
            Channel::Wireless => EventKind::WirelessDelivered(*msg),
            Channel::F2F => EventKind::F2FDelivered(*msg),
        };
        let ev = Event { time, kind };
        self.log.push(ev);
        Ok(ev)
    }

    fn set_motion(&mut self, role: Role, velocity: f64, until: StopCondition) {
        let t = self.time;
        let a = &mut self.agents[role.index()];
        a.track.cut(t, a.state.position, a.state.mode);
        a.state.velocity = velocity;
        a.until = until;
        if self.bike.carrier == Some(role) {
            self.bike_track.cut(t, self.bike.position, Mode::Biking);
        }
    }

    fn set_mode(&mut self, role: Role, mode: Mode) {
        let t = self.time;
        let a = &mut self.agents[role.index()];
        a.track.cut(t, a.state.position, mode);
        a.state.mode = mode;
    }

    fn advance(&mut self, to: f64) {
        let dt = to - self.time;
        if dt > 0.0 {
            for a in self.agents.iter_mut().filter(|a| a.evacuated_at.is_none()) {
                a.state.position += a.state.velocity * dt;
            }
            self.time = to;
            self.sync_bike();
        }
        let exit = self.exit;
        for a in &mut self.agents {
            if a.at_exit_reported && !snap_close(a.state.position, exit) {
                a.at_exit_reported = false;
            }
        }
    }

    fn snap(&mut self, role: Role, x: f64) {
        self.agents[role.index()].state.position = x;
        self.sync_bike();
    }

    /// Delay until `target` is reached moving at `vel` from `pos`.
    fn delay_to(pos: f64, vel: f64, target: f64) -> Option<f64> {
        if snap_close(pos, target) {
            return Some(0.0);
        }
        if vel == 0.0 {
            return None;
        }
        let t = (target - pos) / vel;
        (t > 0.0).then_some(t)
    }

    fn next_timed(&self) -> Option<Event> {
        let mut best: Option<Event> = None;
        let mut offer = |delay: f64, kind: EventKind| {
            let ev = Event {
                time: self.time + delay,
                kind,
            };
            let better = match &best {
                None => true,
                Some(b) => {
                    ev.time < b.time
                        || (ev.time == b.time && ev.kind.tiebreak() < b.kind.tiebreak())
                }
            };
            if better {
                best = Some(ev);
            }
        };
        for role in Role::BOTH {
            let a = &self.agents[role.index()];
            if a.evacuated_at.is_some() {
                continue;
            }
            let (pos, vel) = (a.state.position, a.state.velocity);
            if !a.at_exit_reported {
                if let Some(dt) = Self::delay_to(pos, vel, self.exit) {
                    offer(dt, EventKind::ExitReached(role));
                }
            }
            match a.until {
                StopCondition::ReachCoordinate(x) => {
                    if let Some(dt) = Self::delay_to(pos, vel, x) {
                        offer(dt, EventKind::WaypointReached(role));
                    }
                }
                StopCondition::MeetAgent(other) => {
                    let o = &self.agents[other.index()];
                    if o.evacuated_at.is_none() {
                        let (op, ov) = (o.state.position, o.state.velocity);
                        let hit = if snap_close(pos, op) {
                            Some(0.0)
                        } else {
                            next_meet_time(pos, vel, op, ov)
                        };
                        if let Some(dt) = hit {
                            offer(dt, EventKind::Colocated(role, other));
                        }
                    }
                }
                StopCondition::MessageReceived | StopCondition::Forever => {}
            }
        }
        best
    }

    /// Engine-side effects of a timed event; returns the event as logged.
    fn apply_timed(&mut self, ev: Event) -> Event {
        match ev.kind {
            EventKind::ExitReached(role) => {
                self.snap(role, self.exit);
                let a = &mut self.agents[role.index()];
                a.at_exit_reported = true;
                a.known_exit = Some(self.exit);
            }
            EventKind::WaypointReached(role) => {
                if let StopCondition::ReachCoordinate(x) = self.agents[role.index()].until {
                    self.snap(role, x);
                }
                self.set_motion(role, 0.0, StopCondition::Forever);
            }
            EventKind::Colocated(chaser, target) => {
                let x = self.position(target);
                self.snap(chaser, x);
                self.set_motion(chaser, 0.0, StopCondition::Forever);
            }
            _ => {}
        }
        self.log.push(ev);
        ev
    }

    fn apply(&mut self, action: Action) -> Result<()> {
        let time = self.time;
        let require_active = |w: &World, role: Role| -> Result<()> {
            if w.evacuated(role) {
                Err(Error::StrategyInvariant {
                    time,
                    reason: format!("{role} already evacuated"),
                })
            } else {
                Ok(())
            }
        };
        match action {
            Action::Move(cmd) => {
                require_active(self, cmd.agent)?;
                let state = self.agent(cmd.agent);
                let cap = state.mode.speed_cap(self.scenario.v);
                let speed = cmd.velocity.abs();
                if !(speed <= cap || approx_eq(speed, cap)) || !speed.is_finite() {
                    return Err(Error::SpeedViolation {
                        role: cmd.agent,
                        speed,
                        cap,
                        time,
                    });
                }
                self.set_motion(cmd.agent, cmd.velocity, cmd.until);
            }
            Action::PickBike(role) => {
                require_active(self, role)?;
                if let Some(c) = self.bike.carrier {
                    return Err(Error::BikeViolation {
                        time,
                        reason: format!("{role} tried to take the bike from {c}"),
                    });
                }
                if !approx_eq(self.bike.position, self.position(role)) {
                    return Err(Error::BikeViolation {
                        time,
                        reason: format!(
                            "{role} at {} tried to take the bike at {}",
                            self.position(role),
                            self.bike.position
                        ),
                    });
                }
                self.set_motion(role, 0.0, StopCondition::Forever);
                self.set_mode(role, Mode::Biking);
                self.bike_track.cut(time, self.bike.position, Mode::Biking);
                self.bike.carrier = Some(role);
                self.sync_bike();
                self.log.push(Event {
                    time,
                    kind: EventKind::BikePicked(role),
                });
            }
            Action::DropBike(role) => {
                self.drop_bike(role)?;
            }
            Action::SendWireless { from, payload } => {
                require_active(self, from)?;
                if !from.may_send_wireless() {
                    return Err(Error::CommViolation {
                        time,
                        reason: format!("{from} cannot transmit wirelessly"),
                    });
                }
                self.enqueue(Message {
                    sender_role: from,
                    channel: Channel::Wireless,
                    payload,
                    timestamp: time,
                });
            }
            Action::SendF2F { from, payload } => {
                require_active(self, from)?;
                if !self.colocated() {
                    return Err(Error::CommViolation {
                        time,
                        reason: format!("{from} spoke face-to-face without company"),
                    });
                }
                self.enqueue(Message {
                    sender_role: from,
                    channel: Channel::F2F,
                    payload,
                    timestamp: time,
                });
            }
            Action::Evacuate(role) => {
                require_active(self, role)?;
                if !approx_eq(self.position(role), self.exit) {
                    return Err(Error::StrategyInvariant {
                        time,
                        reason: format!(
                            "{role} tried to evacuate at {} away from the exit",
                            self.position(role)
                        ),
                    });
                }
                if self.bike.carrier == Some(role) {
                    self.drop_bike(role)?;
                }
                self.snap(role, self.exit);
                self.set_motion(role, 0.0, StopCondition::Forever);
                self.agents[role.index()].evacuated_at = Some(time);
            }
        }
        Ok(())
    }

    fn drop_bike(&mut self, role: Role) -> Result<()> {
        let time = self.time;
        if self.bike.carrier != Some(role) {
            return Err(Error::BikeViolation {
                time,
                reason: format!("{role} dropped a bike it does not carry"),
            });
        }
        self.set_motion(role, 0.0, StopCondition::Forever);
        self.set_mode(role, Mode::Walking);
        self.bike.carrier = None;
        self.bike_track.cut(time, self.bike.position, Mode::Parked);
        self.log.push(Event {
            time,
            kind: EventKind::BikeDropped(role),
        });
        Ok(())
    }

    fn enqueue(&mut self, msg: Message) {
        let kind = match msg.channel {
            Channel::Wireless => EventKind::WirelessDelivered(msg),
            Channel::F2F => EventKind::F2FDelivered(msg),
        };
        self.pending.push_back(Event {
            time: self.time,
            kind,
        });
    }

    fn pop_pending(&mut self) -> Option<Event> {
        let idx = self
            .pending
            .iter()
            .enumerate()
            .min_by_key(|(i, e)| (e.kind.tiebreak(), *i))
            .map(|(i, _)| i)?;
        self.pending.remove(idx)
    }

    fn all_evacuated(&self) -> bool {
        self.agents.iter().all(|a| a.evacuated_at.is_some())
    }

    fn into_result(self) -> EvacuationResult {
        let end = self.time;
        let arrival = Arrivals {
            sender: self.agents[0].evacuated_at.unwrap_or(f64::NAN),
            receiver: self.agents[1].evacuated_at.unwrap_or(f64::NAN),
        };
        let [s, r] = self.agents;
        let finish = |a: Agent| {
            let t = a.evacuated_at.unwrap_or(end);
            a.track.finish(t, a.state.position)
        };
        EvacuationResult {
            scenario: self.scenario,
            arrival,
            evacuation_time: arrival.max(),
            trajectories: Trajectories {
                sender: finish(s),
                receiver: finish(r),
                bike: self.bike_track.finish(end, self.bike.position),
            },
            messages: self.messages,
            events: self.log,
        }
    }
}

/// Run `strategy` on `scenario` until both robots have evacuated.
pub fn run(scenario: &Scenario, strategy: &mut dyn Strategy) -> Result<EvacuationResult> {
    validate_scenario(scenario)?;
    let mut world = World::new(scenario);
    for action in strategy.start(&world)? {
        world.apply(action)?;
    }
    let mut processed = 0usize;
    while !(world.all_evacuated() && world.pending.is_empty()) {
        processed += 1;
        if processed > MAX_EVENTS {
            return Err(Error::NoProgress {
                time: world.time,
                reason: format!("more than {MAX_EVENTS} events"),
            });
        }
        let timed = world.next_timed();
        let immediate = world.pending.iter().map(|e| e.kind.tiebreak()).min();
        let take_pending = match (&timed, immediate) {
            (_, None) => false,
            (None, Some(_)) => true,
            (Some(t), Some(rank)) => t.time > world.time || rank < t.kind.tiebreak(),
        };
        let event = if take_pending {
            let ev = world.pop_pending().expect("pending is non-empty");
            let msg = match ev.kind {
                EventKind::WirelessDelivered(m) | EventKind::F2FDelivered(m) => m,
                _ => unreachable!("only messages are queued"),
            };
            world.deliver(&msg)?
        } else if let Some(ev) = timed {
            world.advance(ev.time);
            world.apply_timed(ev)
        } else {
            return Err(Error::NoProgress {
                time: world.time,
                reason: "no future event and robots still inside".into(),
            });
        };
        for action in strategy.on_event(&event, &world)? {
            world.apply(action)?;
        }
    }
    Ok(world.into_result())
}

/// True if every event in `a` equals the one in `b` bit for bit.
pub fn identical_logs(a: &[Event], b: &[Event]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.time.to_bits() == y.time.to_bits()
                && format!("{:?}", x.kind) == format!("{:?}", y.kind)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AlgorithmId, ExitSide};

    #[test]
    fn meet_time_examples() {
        assert_eq!(next_meet_time(0.0, 2.0, 10.0, -1.0), Some(10.0 / 3.0));
        assert_eq!(next_meet_time(5.0, 0.0, 5.0, 0.0), Some(0.0));
        assert_eq!(next_meet_time(0.0, 1.0, 3.0, 2.0), None);
        assert_eq!(next_meet_time(0.0, 1.0, 3.0, 1.0), None);
        assert_eq!(next_meet_time(-4.0, -3.0, 2.0, 1.0), None);
    }

    fn world(d: f64) -> World {
        World::new(&Scenario::new(2.0, d, ExitSide::Left, AlgorithmId::Alg1))
    }

    #[test]
    fn wireless_from_sender_reaches_any_distance() {
        let (d, u1, u2) = (1.0, 0.7, 2.0);
        let mut w = world(d);
        w.place(Role::Sender, d);
        w.place(Role::Receiver, -d * u2 / u1);
        let msg = Message {
            sender_role: Role::Sender,
            channel: Channel::Wireless,
            payload: d,
            timestamp: 0.0,
        };
        let ev = w.deliver(&msg).unwrap();
        assert_eq!(ev.time, 0.0);
        assert_eq!(w.known_exit(Role::Receiver), Some(d));
        assert_eq!(w.known_exit(Role::Sender), None);
    }

    #[test]
    fn receiver_cannot_transmit_wirelessly() {
        let mut w = world(1.0);
        let msg = Message {
            sender_role: Role::Receiver,
            channel: Channel::Wireless,
            payload: 1.0,
            timestamp: 0.0,
        };
        assert!(matches!(w.deliver(&msg), Err(Error::CommViolation { .. })));
        let act = Action::SendWireless {
            from: Role::Receiver,
            payload: 1.0,
        };
        assert!(matches!(w.apply(act), Err(Error::CommViolation { .. })));
    }

    #[test]
    fn face_to_face_needs_company() {
        let mut w = world(1.0);
        w.place(Role::Sender, -0.4);
        w.place(Role::Receiver, -0.4);
        let msg = Message {
            sender_role: Role::Receiver,
            channel: Channel::F2F,
            payload: 1.0,
            timestamp: 0.0,
        };
        assert!(w.deliver(&msg).is_ok());
        assert_eq!(w.known_exit(Role::Sender), Some(1.0));

        w.place(Role::Receiver, 0.3);
        assert!(matches!(w.deliver(&msg), Err(Error::CommViolation { .. })));
    }

    #[test]
    fn speed_caps_follow_mode() {
        let mut w = world(1.0);
        assert!(matches!(
            w.apply(Action::go(Role::Sender, 1.5, StopCondition::Forever)),
            Err(Error::SpeedViolation { .. })
        ));
        w.apply(Action::PickBike(Role::Sender)).unwrap();
        w.apply(Action::go(Role::Sender, 2.0, StopCondition::Forever))
            .unwrap();
        assert!(matches!(
            w.apply(Action::go(Role::Sender, 2.5, StopCondition::Forever)),
            Err(Error::SpeedViolation { .. })
        ));
    }

    #[test]
    fn one_bike_one_rider() {
        let mut w = world(1.0);
        w.apply(Action::PickBike(Role::Sender)).unwrap();
        assert!(matches!(
            w.apply(Action::PickBike(Role::Receiver)),
            Err(Error::BikeViolation { .. })
        ));
        assert!(matches!(
            w.apply(Action::DropBike(Role::Receiver)),
            Err(Error::BikeViolation { .. })
        ));
    }

    struct Idle;

    impl Strategy for Idle {
        fn start(&mut self, _: &World) -> Result<Vec<Action>> {
            Ok(vec![])
        }
        fn on_event(&mut self, _: &Event, _: &World) -> Result<Vec<Action>> {
            Ok(vec![])
        }
    }

    #[test]
    fn idle_strategy_makes_no_progress() {
        let s = Scenario::new(2.0, 1.0, ExitSide::Right, AlgorithmId::Alg1);
        assert!(matches!(run(&s, &mut Idle), Err(Error::NoProgress { .. })));
    }

    /// Sender walks straight to the exit; receiver waits for the message, then walks.
    struct Straight;

    impl Strategy for Straight {
        fn start(&mut self, w: &World) -> Result<Vec<Action>> {
            let dir = w.scenario().side.sign();
            Ok(vec![
                Action::go(Role::Sender, dir, StopCondition::Forever),
                Action::go(Role::Receiver, 0.0, StopCondition::MessageReceived),
            ])
        }
        fn on_event(&mut self, e: &Event, w: &World) -> Result<Vec<Action>> {
            Ok(match e.kind {
                EventKind::ExitReached(Role::Sender) => vec![
                    Action::SendWireless {
                        from: Role::Sender,
                        payload: w.position(Role::Sender),
                    },
                    Action::Evacuate(Role::Sender),
                ],
                EventKind::WirelessDelivered(m) => {
                    vec![Action::go(
                        Role::Receiver,
                        m.payload.signum(),
                        StopCondition::ReachCoordinate(m.payload),
                    )]
                }
                EventKind::ExitReached(Role::Receiver) => vec![Action::Evacuate(Role::Receiver)],
                _ => vec![],
            })
        }
    }

    #[test]
    fn straight_walk_trace() {
        let s = Scenario::new(2.0, 3.0, ExitSide::Left, AlgorithmId::Alg1);
        let r = run(&s, &mut Straight).unwrap();
        assert_eq!(r.arrival.sender, 3.0);
        assert_eq!(r.arrival.receiver, 6.0);
        assert_eq!(r.evacuation_time, 6.0);
        assert_eq!(r.messages.len(), 1);
        crate::model::check_result(&r).unwrap();
        // the receiver leaves on ExitReached, so its simultaneous waypoint never fires
        let kinds: Vec<_> = r.events.iter().map(|e| e.kind.rank()).collect();
        assert_eq!(kinds, vec![0, 5, 0]);
    }
}
