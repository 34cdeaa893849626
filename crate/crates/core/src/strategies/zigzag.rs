use crate::analysis::drop_off_distance;
use crate::engine::{Action, Event, EventKind, StopCondition, Strategy, World};
use crate::error::{Error, Result};
use crate::model::{approx_le, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Outbound,
    Returning,
    Home,
    /// Sender riding back from the exit to leave the bike.
    ToDrop,
    /// Receiver walking to the parked bike.
    ToBike,
    ToExit,
    Done,
}

/// Doubling search: in round `k` the sender rides `2^k` out and back (odd
/// rounds right, even rounds left) while the receiver walks `2^k / v` the same
/// way, so both are back at the origin together.
///
/// Once the sender hits the exit it broadcasts, rides back by the drop-off
/// distance, parks the bike and walks to the exit. The receiver walks on to the
/// bike and rides the rest; both arrive at the same time.
#[derive(Debug, Clone)]
pub struct ZigZag {
    v: f64,
    round: u32,
    sender: Phase,
    receiver: Phase,
    /// Homecoming times of the last round, for the synchronisation check.
    home_times: [Option<f64>; 2],
    rounds_started: Vec<f64>,
}

impl ZigZag {
    pub fn new(v: f64) -> Self {
        ZigZag {
            v,
            round: 0,
            sender: Phase::Home,
            receiver: Phase::Home,
            home_times: [None; 2],
            rounds_started: Vec::new(),
        }
    }

    /// Sweep direction of round `k`.
    pub fn direction(k: u32) -> f64 {
        if k % 2 == 1 {
            1.0
        } else {
            -1.0
        }
    }

    /// Sweep length of round `k`.
    pub fn reach(k: u32) -> f64 {
        2f64.powi(k as i32)
    }

    /// Round in which the sender first reaches an exit at signed coordinate `exit`.
    pub fn discovery_round(exit: f64) -> u32 {
        let want_odd = exit > 0.0;
        let mut k = 1;
        while (k % 2 == 1) != want_odd || Self::reach(k) < exit.abs() {
            k += 1;
        }
        k
    }

    fn phase_mut(&mut self, role: Role) -> &mut Phase {
        match role {
            Role::Sender => &mut self.sender,
            Role::Receiver => &mut self.receiver,
        }
    }

    fn next_round(&mut self, time: f64) -> Vec<Action> {
        self.round += 1;
        self.rounds_started.push(time);
        self.home_times = [None; 2];
        self.sender = Phase::Outbound;
        self.receiver = Phase::Outbound;
        let dir = Self::direction(self.round);
        let reach = Self::reach(self.round);
        vec![
            Action::go(
                Role::Sender,
                dir * self.v,
                StopCondition::ReachCoordinate(dir * reach),
            ),
            Action::go(
                Role::Receiver,
                dir,
                StopCondition::ReachCoordinate(dir * reach / self.v),
            ),
        ]
    }

    /// Start times of every round so far.
    pub fn round_starts(&self) -> &[f64] {
        &self.rounds_started
    }

    fn drop_point(&self, exit: f64) -> Result<f64> {
        Ok(exit - exit.signum() * drop_off_distance(exit.abs(), self.v)?)
    }

    fn invariant(world: &World, reason: String) -> Error {
        Error::StrategyInvariant {
            time: world.time(),
            reason,
        }
    }

    fn known_exit(world: &World, role: Role) -> Result<f64> {
        world
            .known_exit(role)
            .ok_or_else(|| Self::invariant(world, format!("{role} does not know the exit")))
    }

    fn on_waypoint(&mut self, role: Role, world: &World) -> Result<Vec<Action>> {
        let dir = Self::direction(self.round);
        let speed = match role {
            Role::Sender => self.v,
            Role::Receiver => 1.0,
        };
        let actions = match *self.phase_mut(role) {
            Phase::Outbound => {
                *self.phase_mut(role) = Phase::Returning;
                vec![Action::go(
                    role,
                    -dir * speed,
                    StopCondition::ReachCoordinate(0.0),
                )]
            }
            Phase::Returning => {
                *self.phase_mut(role) = Phase::Home;
                self.home_times[role.index()] = Some(world.time());
                if let [Some(a), Some(b)] = self.home_times {
                    if !crate::model::approx_eq(a, b) {
                        return Err(Self::invariant(
                            world,
                            format!("round {} ends out of sync: {a} vs {b}", self.round),
                        ));
                    }
                    self.next_round(world.time())
                } else {
                    vec![]
                }
            }
            Phase::ToDrop => {
                let exit = Self::known_exit(world, role)?;
                *self.phase_mut(role) = Phase::ToExit;
                vec![
                    Action::DropBike(role),
                    Action::go(role, exit.signum(), StopCondition::ReachCoordinate(exit)),
                ]
            }
            Phase::ToBike => {
                let exit = Self::known_exit(world, role)?;
                *self.phase_mut(role) = Phase::ToExit;
                vec![
                    Action::PickBike(role),
                    Action::go(
                        role,
                        exit.signum() * self.v,
                        StopCondition::ReachCoordinate(exit),
                    ),
                ]
            }
            _ => vec![],
        };
        Ok(actions)
    }
}

impl Strategy for ZigZag {
    fn start(&mut self, world: &World) -> Result<Vec<Action>> {
        let mut actions = vec![Action::PickBike(Role::Sender)];
        actions.extend(self.next_round(world.time()));
        Ok(actions)
    }

    fn on_event(&mut self, event: &Event, world: &World) -> Result<Vec<Action>> {
        match event.kind {
            EventKind::ExitReached(Role::Sender) => match self.sender {
                Phase::Outbound | Phase::Returning | Phase::Home => {
                    let exit = Self::known_exit(world, Role::Sender)?;
                    let drop = self.drop_point(exit)?;
                    self.sender = Phase::ToDrop;
                    Ok(vec![
                        Action::SendWireless {
                            from: Role::Sender,
                            payload: exit,
                        },
                        Action::go(
                            Role::Sender,
                            -exit.signum() * self.v,
                            StopCondition::ReachCoordinate(drop),
                        ),
                    ])
                }
                Phase::ToExit => {
                    self.sender = Phase::Done;
                    Ok(vec![Action::Evacuate(Role::Sender)])
                }
                _ => Ok(vec![]),
            },
            EventKind::ExitReached(Role::Receiver) => match self.receiver {
                Phase::ToExit => {
                    self.receiver = Phase::Done;
                    Ok(vec![Action::Evacuate(Role::Receiver)])
                }
                _ => Err(Self::invariant(
                    world,
                    "receiver reached the exit before the sender".into(),
                )),
            },
            EventKind::WirelessDelivered(_) => {
                let exit = Self::known_exit(world, Role::Receiver)?;
                let drop = self.drop_point(exit)?;
                let pos = world.position(Role::Receiver);
                let side = exit.signum();
                // the receiver must still be between the origin and the bike
                if !(approx_le(0.0, side * pos) && approx_le(side * pos, side * drop)) {
                    return Err(Self::invariant(
                        world,
                        format!("receiver at {pos} is not on its way to the drop point {drop}"),
                    ));
                }
                self.receiver = Phase::ToBike;
                Ok(vec![Action::go(
                    Role::Receiver,
                    side,
                    StopCondition::ReachCoordinate(drop),
                )])
            }
            EventKind::WaypointReached(role) => self.on_waypoint(role, world),
            _ => Ok(vec![]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discovery_round_parity() {
        assert_eq!(ZigZag::discovery_round(2.0), 1);
        assert_eq!(ZigZag::discovery_round(1.0), 1);
        assert_eq!(ZigZag::discovery_round(-1.0), 2);
        assert_eq!(ZigZag::discovery_round(-4.0), 2);
        assert_eq!(ZigZag::discovery_round(-4.5), 4);
        assert_eq!(ZigZag::discovery_round(2.5), 3);
    }
}
