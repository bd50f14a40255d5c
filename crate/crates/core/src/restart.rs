//! Agility-gated restarts.
//!
//! Agility is an exponential moving average of polarity flips: every
//! assignment whose polarity differs from the saved phase pushes it towards
//! 1, every other assignment towards 0. A restart is allowed when agility
//! drops below the limit and a Luby-scaled number of conflicts has passed
//! since the previous restart, which keeps the search complete.

const LUBY_UNIT: u64 = 100;

#[derive(Clone, Debug)]
pub struct Agility {
    value: f64,
    decay: f64,
    limit: f64,
}

impl Agility {
    pub fn new(decay: f64, limit: f64) -> Agility {
        Agility {
            value: 1.0,
            decay,
            limit,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn record(&mut self, flipped: bool) {
        self.value = self.decay * self.value + (1.0 - self.decay) * f64::from(u8::from(flipped));
    }

    pub fn below_limit(&self) -> bool {
        self.value < self.limit
    }
}

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, ... (1-based index).
pub fn luby(mut i: u64) -> u64 {
    assert!(i >= 1);
    loop {
        let mut k = 1;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if i == (1 << k) - 1 {
            return 1 << (k - 1);
        }
        i -= (1 << (k - 1)) - 1;
    }
}

#[derive(Clone, Debug)]
pub struct RestartSchedule {
    restarts: u64,
    conflicts_since: u64,
}

impl RestartSchedule {
    pub fn new() -> RestartSchedule {
        RestartSchedule {
            restarts: 0,
            conflicts_since: 0,
        }
    }

    pub fn on_conflict(&mut self) {
        self.conflicts_since += 1;
    }

    pub fn due(&self, agility: &Agility) -> bool {
        agility.below_limit() && self.conflicts_since >= LUBY_UNIT * luby(self.restarts + 1)
    }

    pub fn on_restart(&mut self) {
        self.restarts += 1;
        self.conflicts_since = 0;
    }
}

impl Default for RestartSchedule {
    fn default() -> Self {
        Self::new()
    }
}
