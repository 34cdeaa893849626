use crate::analysis::handoff_point;
use crate::engine::{Action, Event, EventKind, StopCondition, Strategy, World};
use crate::error::Result;
use crate::model::Role;

/// Both robots know the exit: the sender rides to the midpoint and walks on,
/// the receiver walks to the midpoint and rides on.
#[derive(Debug, Clone)]
pub struct OfflineBaseline {
    exit: f64,
    v: f64,
}

impl OfflineBaseline {
    pub fn new(exit: f64, v: f64) -> Self {
        OfflineBaseline { exit, v }
    }

    fn dir(&self) -> f64 {
        self.exit.signum()
    }
}

impl Strategy for OfflineBaseline {
    fn start(&mut self, _world: &World) -> Result<Vec<Action>> {
        let mid = self.dir() * handoff_point(self.exit.abs());
        Ok(vec![
            Action::PickBike(Role::Sender),
            Action::go(
                Role::Sender,
                self.dir() * self.v,
                StopCondition::ReachCoordinate(mid),
            ),
            Action::go(
                Role::Receiver,
                self.dir(),
                StopCondition::ReachCoordinate(mid),
            ),
        ])
    }

    fn on_event(&mut self, event: &Event, _world: &World) -> Result<Vec<Action>> {
        let to_exit = StopCondition::ReachCoordinate(self.exit);
        Ok(match event.kind {
            EventKind::WaypointReached(Role::Sender) => vec![
                Action::DropBike(Role::Sender),
                Action::go(Role::Sender, self.dir(), to_exit),
            ],
            EventKind::WaypointReached(Role::Receiver) => vec![
                Action::PickBike(Role::Receiver),
                Action::go(Role::Receiver, self.dir() * self.v, to_exit),
            ],
            EventKind::ExitReached(role) => vec![Action::Evacuate(role)],
            _ => vec![],
        })
    }
}
