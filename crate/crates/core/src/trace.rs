//! Versioned JSON trace export.
//!
//! Field names are part of the external format:
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "scenario": { "v", "d", "side": "left"|"right", "algorithm": "alg1"|"alg2"|"alg3"|"offline_baseline" },
//!   "agents": [ { "role": "sender"|"receiver", "segments": [ { "t0", "t1", "x0", "x1", "mode" } ] } ],
//!   "bike": { "segments": [ ... ] },
//!   "messages": [ { "sender_role", "channel": "wireless"|"f2f", "payload", "timestamp" } ],
//!   "arrivals": { "sender", "receiver" },
//!   "evacuation_time": <number>
//! }
//! ```
//!
//! Numbers are written as the shortest decimal that parses back to the same
//! `f64`, so a parse of a serialised trace reproduces every field bit for bit.

use serde::{Deserialize, Serialize};

use crate::model::{Arrivals, EvacuationResult, Message, Role, Scenario, Segment};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentTrace {
    pub role: Role,
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BikeTrace {
    pub segments: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub schema_version: u32,
    pub scenario: Scenario,
    pub agents: Vec<AgentTrace>,
    pub bike: BikeTrace,
    pub messages: Vec<Message>,
    pub arrivals: Arrivals,
    pub evacuation_time: f64,
}

impl From<&EvacuationResult> for TraceFile {
    fn from(r: &EvacuationResult) -> Self {
        TraceFile {
            schema_version: SCHEMA_VERSION,
            scenario: r.scenario,
            agents: Role::BOTH
                .iter()
                .map(|&role| AgentTrace {
                    role,
                    segments: r.trajectories.agent(role).segments.clone(),
                })
                .collect(),
            bike: BikeTrace {
                segments: r.trajectories.bike.segments.clone(),
            },
            messages: r.messages.clone(),
            arrivals: r.arrival,
            evacuation_time: r.evacuation_time,
        }
    }
}

impl TraceFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace values are always serialisable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Field-by-field comparison on the bit patterns of every number.
    pub fn bit_identical(&self, other: &TraceFile) -> bool {
        fn segs_eq(a: &[Segment], b: &[Segment]) -> bool {
            a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| {
                    x.mode == y.mode
                        && [x.t0, x.t1, x.x0, x.x1]
                            .iter()
                            .zip([y.t0, y.t1, y.x0, y.x1])
                            .all(|(p, q)| p.to_bits() == q.to_bits())
                })
        }
        let bits = |a: f64, b: f64| a.to_bits() == b.to_bits();
        self.schema_version == other.schema_version
            && bits(self.scenario.v, other.scenario.v)
            && bits(self.scenario.d, other.scenario.d)
            && self.scenario.side == other.scenario.side
            && self.scenario.algorithm == other.scenario.algorithm
            && self.agents.len() == other.agents.len()
            && self
                .agents
                .iter()
                .zip(&other.agents)
                .all(|(a, b)| a.role == b.role && segs_eq(&a.segments, &b.segments))
            && segs_eq(&self.bike.segments, &other.bike.segments)
            && self.messages.len() == other.messages.len()
            && self.messages.iter().zip(&other.messages).all(|(a, b)| {
                a.sender_role == b.sender_role
                    && a.channel == b.channel
                    && bits(a.payload, b.payload)
                    && bits(a.timestamp, b.timestamp)
            })
            && bits(self.arrivals.sender, other.arrivals.sender)
            && bits(self.arrivals.receiver, other.arrivals.receiver)
            && bits(self.evacuation_time, other.evacuation_time)
    }
}
