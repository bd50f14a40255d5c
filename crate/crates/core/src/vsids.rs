//! VSIDS decision heuristic with phase saving.
//!
//! Scores are bumped by a growing increment instead of decaying every score
//! on each conflict; the increment is divided by the decay factor. When it
//! grows too large all scores are rescaled. Ties go to the lowest variable
//! index, so a fresh heuristic picks variables in index order.
use crate::lit::{Lit, Var};

const RESCALE_LIMIT: f64 = 1e100;

#[derive(Clone, Debug)]
pub struct Vsids {
    activity: Vec<f64>,
    increment: f64,
    decay: f64,
    /// Binary max-heap of variable indices; superset of unassigned vars.
    heap: Vec<u32>,
    /// Position in `heap`, `u32::MAX` when absent.
    heap_pos: Vec<u32>,
    /// Saved polarity per variable; `false` (negative) initially.
    phase: Vec<bool>,
}

impl Vsids {
    pub fn new(num_vars: u32, decay: f64) -> Vsids {
        let n = num_vars as usize + 1;
        let mut v = Vsids {
            activity: vec![0.0; n],
            increment: 1.0,
            decay,
            heap: Vec::with_capacity(n),
            heap_pos: vec![u32::MAX; n],
            phase: vec![false; n],
        };
        for var in 1..n {
            v.insert(Var::new(var as u32));
        }
        v
    }

    pub fn activity(&self, var: Var) -> f64 {
        self.activity[var.index()]
    }

    pub fn saved_phase(&self, var: Var) -> bool {
        self.phase[var.index()]
    }

    pub fn save_phase(&mut self, lit: Lit) {
        self.phase[lit.var().index()] = lit.is_positive();
    }

    pub fn bump(&mut self, var: Var) {
        let i = var.index();
        self.activity[i] += self.increment;
        if self.activity[i] > RESCALE_LIMIT {
            for a in &mut self.activity {
                *a /= RESCALE_LIMIT;
            }
            self.increment /= RESCALE_LIMIT;
        }
        if self.heap_pos[i] != u32::MAX {
            self.sift_up(self.heap_pos[i] as usize);
        }
    }

    /// Applies one conflict's worth of decay.
    pub fn decay(&mut self) {
        self.increment /= self.decay;
    }

    /// Re-inserts a variable that became unassigned.
    pub fn insert(&mut self, var: Var) {
        let i = var.index();
        if self.heap_pos[i] != u32::MAX {
            return;
        }
        self.heap_pos[i] = self.heap.len() as u32;
        self.heap.push(i as u32);
        self.sift_up(self.heap.len() - 1);
    }

    /// Highest-scoring variable for which `is_unassigned` holds; assigned
    /// variables met on the way are dropped from the heap.
    pub fn pick(&mut self, mut is_unassigned: impl FnMut(Var) -> bool) -> Option<Var> {
        while let Some(&top) = self.heap.first() {
            let var = Var::new(top);
            if is_unassigned(var) {
                return Some(var);
            }
            self.pop_top();
        }
        None
    }

    fn better(&self, a: u32, b: u32) -> bool {
        let (x, y) = (self.activity[a as usize], self.activity[b as usize]);
        x > y || (x == y && a < b)
    }

    fn pop_top(&mut self) {
        let top = self.heap.swap_remove(0);
        self.heap_pos[top as usize] = u32::MAX;
        if !self.heap.is_empty() {
            self.heap_pos[self.heap[0] as usize] = 0;
            self.sift_down(0);
        }
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if !self.better(self.heap[i], self.heap[parent]) {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && self.better(self.heap[l], self.heap[best]) {
                best = l;
            }
            if r < self.heap.len() && self.better(self.heap[r], self.heap[best]) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, a: usize, b: usize) {
        self.heap.swap(a, b);
        self.heap_pos[self.heap[a] as usize] = a as u32;
        self.heap_pos[self.heap[b] as usize] = b as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fresh_heuristic_picks_lowest_index_negative() {
        let mut v = Vsids::new(5, 0.95);
        let var = v.pick(|_| true).unwrap();
        assert_eq!(var, Var::new(1));
        assert!(!v.saved_phase(var));
    }

    #[test]
    fn bumped_variable_outranks_untouched() {
        let mut v = Vsids::new(5, 0.95);
        v.bump(Var::new(4));
        assert_eq!(v.pick(|_| true), Some(Var::new(4)));
    }

    #[test]
    fn assigned_variables_are_skipped_and_reinserted() {
        let mut v = Vsids::new(3, 0.95);
        assert_eq!(v.pick(|x| x != Var::new(1)), Some(Var::new(2)));
        v.insert(Var::new(1));
        assert_eq!(v.pick(|_| true), Some(Var::new(1)));
    }

    /// Replays a bump/decay log with explicit exponential decay of every
    /// score and compares the induced ordering.
    #[test]
    fn ordering_matches_recomputed_activities() {
        let n = 30;
        let decay = 0.95;
        let mut v = Vsids::new(n, decay);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut log: Vec<Vec<u32>> = Vec::new();
        for _ in 0..100 {
            let bumps: Vec<u32> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(1..=n)).collect();
            for &b in &bumps {
                v.bump(Var::new(b));
            }
            v.decay();
            log.push(bumps);
        }
        let mut score = vec![0.0f64; n as usize + 1];
        for bumps in &log {
            for &b in bumps {
                score[b as usize] += 1.0;
            }
            for s in &mut score {
                *s *= decay;
            }
        }
        let mut expected: Vec<u32> = (1..=n).collect();
        expected.sort_by(|&a, &b| {
            score[b as usize]
                .partial_cmp(&score[a as usize])
                .unwrap()
                .then(a.cmp(&b))
        });
        let mut got = Vec::new();
        let mut taken = vec![false; n as usize + 1];
        for _ in 0..n {
            let var = v.pick(|x| !taken[x.index()]).unwrap();
            taken[var.index()] = true;
            got.push(var.index() as u32);
        }
        // Scores equal up to float noise may swap; compare the score sequence.
        let got_scores: Vec<f64> = got.iter().map(|&g| score[g as usize]).collect();
        let exp_scores: Vec<f64> = expected.iter().map(|&e| score[e as usize]).collect();
        for (a, b) in got_scores.iter().zip(&exp_scores) {
            assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "{got:?} vs {expected:?}");
        }
    }
}
