//! Structured solver events. Each event serializes to one JSON object with a
//! `kind` tag; literals use DIMACS integers and clause ids are store
//! indices. A conflict or learned clause that is not stored has no id.
use crate::config::Mode;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReasonKind {
    Reason,
    Lazy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Event {
    Decide {
        lit: i32,
        level: u32,
    },
    Imply {
        lit: i32,
        level: u32,
        clause: u32,
    },
    Propagate {
        lit: i32,
        level: u32,
    },
    Conflict {
        clause: Option<u32>,
        level: u32,
    },
    Resolve {
        pivot: i32,
        clause: u32,
        reason: ReasonKind,
    },
    Learn {
        clause: Option<u32>,
        lits: Vec<i32>,
        level: u32,
    },
    Backtrack {
        from: u32,
        to: u32,
        removed: usize,
        mode: Mode,
    },
    Reimply {
        lit: i32,
        level: u32,
        clause: u32,
    },
    SetLazy {
        lit: i32,
        clause: u32,
        level: u32,
    },
    Restart,
    Violation {
        invariant: u8,
        detail: String,
    },
}
