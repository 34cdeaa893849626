use crate::analysis::handoff_point;
use crate::engine::{Action, Event, EventKind, StopCondition, Strategy, World};
use crate::error::{Error, Result};
use crate::model::Role;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Phase {
    Searching,
    /// Receiver riding back to catch the sender.
    Chasing,
    /// Ride share: heading for the hand-off point.
    ToHandoff,
    ToExit,
    Done,
}

/// Sender walks left at `u1`, receiver rides right at `u2`.
///
/// If the sender finds the exit it broadcasts and stays; the receiver rides
/// to it at full speed. If the receiver finds it, it turns, catches the
/// sender, tells it face to face and the pair ride-share to the exit.
#[derive(Debug, Clone)]
pub struct OppositeDirection {
    u1: f64,
    u2: f64,
    v: f64,
    sender: Phase,
    receiver: Phase,
}

impl OppositeDirection {
    pub fn new(u1: f64, u2: f64, v: f64) -> Self {
        OppositeDirection {
            u1,
            u2,
            v,
            sender: Phase::Searching,
            receiver: Phase::Searching,
        }
    }

    fn phase_mut(&mut self, role: Role) -> &mut Phase {
        match role {
            Role::Sender => &mut self.sender,
            Role::Receiver => &mut self.receiver,
        }
    }

    /// Start of the ride share from the meeting point: the current rider goes
    /// ahead to the midpoint, the walker follows and picks the bike up there.
    fn handoff_target(world: &World, role: Role) -> Result<(f64, f64)> {
        let exit = known_exit(world, role)?;
        let pos = world.position(role);
        let dir = (exit - pos).signum();
        Ok((dir, pos + dir * handoff_point((exit - pos).abs())))
    }
}

fn known_exit(world: &World, role: Role) -> Result<f64> {
    world
        .known_exit(role)
        .ok_or_else(|| Error::StrategyInvariant {
            time: world.time(),
            reason: format!("{role} acts on an exit it does not know"),
        })
}

impl Strategy for OppositeDirection {
    fn start(&mut self, _world: &World) -> Result<Vec<Action>> {
        Ok(vec![
            Action::PickBike(Role::Receiver),
            Action::go(Role::Sender, -self.u1, StopCondition::Forever),
            Action::go(Role::Receiver, self.u2, StopCondition::Forever),
        ])
    }

    fn on_event(&mut self, event: &Event, world: &World) -> Result<Vec<Action>> {
        let v = self.v;
        let actions = match event.kind {
            EventKind::ExitReached(role) => match (role, *self.phase_mut(role)) {
                (Role::Sender, Phase::Searching) => {
                    self.sender = Phase::Done;
                    vec![
                        Action::SendWireless {
                            from: Role::Sender,
                            payload: world.position(Role::Sender),
                        },
                        Action::Evacuate(Role::Sender),
                    ]
                }
                (Role::Receiver, Phase::Searching) => {
                    self.receiver = Phase::Chasing;
                    let dir = -world.position(Role::Receiver).signum();
                    vec![Action::go(
                        Role::Receiver,
                        dir * v,
                        StopCondition::MeetAgent(Role::Sender),
                    )]
                }
                (_, Phase::ToExit) => {
                    *self.phase_mut(role) = Phase::Done;
                    vec![Action::Evacuate(role)]
                }
                _ => vec![],
            },
            EventKind::WirelessDelivered(_) => {
                let exit = known_exit(world, Role::Receiver)?;
                let dir = (exit - world.position(Role::Receiver)).signum();
                self.receiver = Phase::ToExit;
                vec![Action::go(
                    Role::Receiver,
                    dir * v,
                    StopCondition::ReachCoordinate(exit),
                )]
            }
            EventKind::Colocated(Role::Receiver, Role::Sender)
                if self.receiver == Phase::Chasing =>
            {
                let exit = known_exit(world, Role::Receiver)?;
                let (dir, mid) = Self::handoff_target(world, Role::Receiver)?;
                self.receiver = Phase::ToHandoff;
                vec![
                    Action::SendF2F {
                        from: Role::Receiver,
                        payload: exit,
                    },
                    Action::go(Role::Receiver, dir * v, StopCondition::ReachCoordinate(mid)),
                ]
            }
            EventKind::F2FDelivered(_) => {
                let (dir, mid) = Self::handoff_target(world, Role::Sender)?;
                self.sender = Phase::ToHandoff;
                vec![Action::go(
                    Role::Sender,
                    dir,
                    StopCondition::ReachCoordinate(mid),
                )]
            }
            EventKind::WaypointReached(role) if *self.phase_mut(role) == Phase::ToHandoff => {
                let exit = known_exit(world, role)?;
                let dir = (exit - world.position(role)).signum();
                *self.phase_mut(role) = Phase::ToExit;
                if world.bike().carrier == Some(role) {
                    vec![
                        Action::DropBike(role),
                        Action::go(role, dir, StopCondition::ReachCoordinate(exit)),
                    ]
                } else {
                    vec![
                        Action::PickBike(role),
                        Action::go(role, dir * v, StopCondition::ReachCoordinate(exit)),
                    ]
                }
            }
            _ => vec![],
        };
        Ok(actions)
    }
}
