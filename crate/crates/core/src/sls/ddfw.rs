//! Clause-weighted local search with weight transfer between neighboring
//! clauses (divide and distribute fixed weights).
//!
//! Every clause starts with weight `INIT`. A step flips the variable of a
//! falsified clause that most reduces the total weight of falsified
//! clauses; with no improving flip it occasionally takes a sideways move,
//! and otherwise every falsified clause takes weight from its heaviest
//! satisfied neighbor (a clause sharing a literal). Literal codes are
//! `2 * var + negated`, as in the probSAT engine.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

const INIT: i64 = 8;
const SIDEWAYS: f64 = 0.15;

pub(crate) struct Engine {
    clause_start: Vec<u32>,
    lits: Vec<u32>,
    occ_start: Vec<u32>,
    occ: Vec<u32>,
    free_vars: Vec<u32>,
    assign: Vec<bool>,
    num_true: Vec<u32>,
    true_xor: Vec<u32>,
    weight: Vec<i64>,
    /// Decrease of the falsified weight if the variable were flipped.
    score: Vec<i64>,
    unsat: Vec<u32>,
    unsat_pos: Vec<u32>,
    candidates: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl Engine {
    pub(crate) fn new(var_count: u32, clauses: &[Vec<u32>]) -> Engine {
        let nv = var_count as usize + 1;
        let mut clause_start = Vec::with_capacity(clauses.len() + 1);
        let mut lits = Vec::new();
        let mut occ_count = vec![0u32; 2 * nv];
        for c in clauses {
            clause_start.push(lits.len() as u32);
            lits.extend_from_slice(c);
            for &l in c {
                occ_count[l as usize] += 1;
            }
        }
        clause_start.push(lits.len() as u32);
        let mut occ_start = Vec::with_capacity(2 * nv + 1);
        let mut acc = 0u32;
        for &k in &occ_count {
            occ_start.push(acc);
            acc += k;
        }
        occ_start.push(acc);
        let mut fill = occ_start.clone();
        let mut occ = vec![0u32; acc as usize];
        for (ci, c) in clauses.iter().enumerate() {
            for &l in c {
                occ[fill[l as usize] as usize] = ci as u32;
                fill[l as usize] += 1;
            }
        }
        let mut seen = vec![false; nv];
        let mut free_vars = Vec::new();
        for &l in &lits {
            let v = (l >> 1) as usize;
            if !seen[v] {
                seen[v] = true;
                free_vars.push(v as u32);
            }
        }
        free_vars.sort_unstable();
        let nc = clauses.len();
        Engine {
            clause_start,
            lits,
            occ_start,
            occ,
            free_vars,
            assign: vec![false; nv],
            num_true: vec![0; nc],
            true_xor: vec![0; nc],
            weight: vec![INIT; nc],
            score: vec![0; nv],
            unsat: Vec::new(),
            unsat_pos: vec![u32::MAX; nc],
            candidates: Vec::new(),
            stamp: vec![0; nv],
            epoch: 0,
        }
    }

    pub(crate) fn free_vars(&self) -> &[u32] {
        &self.free_vars
    }

    pub(crate) fn value(&self, var: u32) -> bool {
        self.assign[var as usize]
    }

    pub(crate) fn unsat_count(&self) -> usize {
        self.unsat.len()
    }

    #[inline]
    fn range(&self, c: usize) -> std::ops::Range<usize> {
        self.clause_start[c] as usize..self.clause_start[c + 1] as usize
    }

    #[inline]
    fn lit_true(&self, l: u32) -> bool {
        self.assign[(l >> 1) as usize] == (l & 1 == 0)
    }

    /// New assignment; clause weights are reset as well.
    pub(crate) fn reset(&mut self, mut value_of: impl FnMut(u32) -> bool) {
        for i in 0..self.free_vars.len() {
            let v = self.free_vars[i];
            self.assign[v as usize] = value_of(v);
        }
        self.weight.iter_mut().for_each(|w| *w = INIT);
        self.score.iter_mut().for_each(|s| *s = 0);
        self.unsat.clear();
        for c in 0..self.num_true.len() {
            let (mut nt, mut x) = (0, 0);
            for i in self.range(c) {
                let l = self.lits[i];
                if self.lit_true(l) {
                    nt += 1;
                    x ^= l >> 1;
                }
            }
            self.num_true[c] = nt;
            self.true_xor[c] = x;
            self.unsat_pos[c] = u32::MAX;
            let w = self.weight[c];
            match nt {
                0 => {
                    self.unsat_pos[c] = self.unsat.len() as u32;
                    self.unsat.push(c as u32);
                    for i in self.range(c) {
                        self.score[(self.lits[i] >> 1) as usize] += w;
                    }
                }
                1 => self.score[x as usize] -= w,
                _ => {}
            }
        }
    }

    fn flip(&mut self, v: u32) {
        let vi = v as usize;
        self.assign[vi] = !self.assign[vi];
        let (now_true, now_false) = if self.assign[vi] {
            (2 * v, 2 * v + 1)
        } else {
            (2 * v + 1, 2 * v)
        };
        for i in self.occ_start[now_true as usize]..self.occ_start[now_true as usize + 1] {
            let c = self.occ[i as usize] as usize;
            let w = self.weight[c];
            match self.num_true[c] {
                0 => {
                    let pos = self.unsat_pos[c] as usize;
                    let last = self.unsat.pop().expect("in unsat list");
                    if last as usize != c {
                        self.unsat[pos] = last;
                        self.unsat_pos[last as usize] = pos as u32;
                    }
                    self.unsat_pos[c] = u32::MAX;
                    for j in self.range(c) {
                        self.score[(self.lits[j] >> 1) as usize] -= w;
                    }
                    self.score[vi] -= w;
                }
                1 => self.score[self.true_xor[c] as usize] += w,
                _ => {}
            }
            self.num_true[c] += 1;
            self.true_xor[c] ^= v;
        }
        for i in self.occ_start[now_false as usize]..self.occ_start[now_false as usize + 1] {
            let c = self.occ[i as usize] as usize;
            let w = self.weight[c];
            self.num_true[c] -= 1;
            self.true_xor[c] ^= v;
            match self.num_true[c] {
                0 => {
                    self.unsat_pos[c] = self.unsat.len() as u32;
                    self.unsat.push(c as u32);
                    self.score[vi] += w;
                    for j in self.range(c) {
                        self.score[(self.lits[j] >> 1) as usize] += w;
                    }
                }
                1 => self.score[self.true_xor[c] as usize] -= w,
                _ => {}
            }
        }
    }

    fn add_weight(&mut self, c: usize, delta: i64) {
        self.weight[c] += delta;
        match self.num_true[c] {
            0 => {
                for j in self.range(c) {
                    self.score[(self.lits[j] >> 1) as usize] += delta;
                }
            }
            1 => self.score[self.true_xor[c] as usize] -= delta,
            _ => {}
        }
    }

    /// The heaviest satisfied clause sharing a literal with `c`.
    fn heaviest_neighbor(&self, c: usize) -> Option<usize> {
        let mut best: Option<(i64, usize)> = None;
        for i in self.range(c) {
            let l = self.lits[i] as usize;
            for k in self.occ_start[l]..self.occ_start[l + 1] {
                let d = self.occ[k as usize] as usize;
                if self.num_true[d] > 0 && best.is_none_or(|(w, _)| self.weight[d] > w) {
                    best = Some((self.weight[d], d));
                }
            }
        }
        best.map(|(_, d)| d)
    }

    fn transfer_weights(&mut self, rng: &mut ChaCha8Rng) {
        let nc = self.num_true.len();
        for k in 0..self.unsat.len() {
            let c = self.unsat[k] as usize;
            let donor = match self.heaviest_neighbor(c) {
                Some(d) if self.weight[d] >= INIT => Some(d),
                _ => (0..64)
                    .map(|_| rng.gen_range(0..nc))
                    .find(|&d| self.num_true[d] > 0 && self.weight[d] >= INIT),
            };
            if let Some(d) = donor {
                let amount = if self.weight[d] > INIT { 2 } else { 1 };
                self.add_weight(d, -amount);
                self.add_weight(c, amount);
            }
        }
    }

    pub(crate) fn step(&mut self, rng: &mut ChaCha8Rng) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        self.candidates.clear();
        let mut best = i64::MIN;
        let mut ties = 0u32;
        let mut pick = 0u32;
        for k in 0..self.unsat.len() {
            let c = self.unsat[k] as usize;
            for i in self.range(c) {
                let v = self.lits[i] >> 1;
                if self.stamp[v as usize] == self.epoch {
                    continue;
                }
                self.stamp[v as usize] = self.epoch;
                let s = self.score[v as usize];
                if s == 0 {
                    self.candidates.push(v);
                }
                if s > best {
                    best = s;
                    ties = 1;
                    pick = v;
                } else if s == best {
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        pick = v;
                    }
                }
            }
        }
        if best > 0 {
            self.flip(pick);
        } else if !self.candidates.is_empty() && rng.gen::<f64>() < SIDEWAYS {
            let v = self.candidates[rng.gen_range(0..self.candidates.len())];
            self.flip(v);
        } else {
            self.transfer_weights(rng);
        }
    }
}

#[cfg(test)]
impl Engine {
    fn consistent(&self) -> bool {
        let mut score = vec![0i64; self.score.len()];
        let mut unsat = 0;
        for c in 0..self.num_true.len() {
            let t: Vec<u32> = self
                .range(c)
                .map(|i| self.lits[i])
                .filter(|&l| self.lit_true(l))
                .collect();
            if t.len() as u32 != self.num_true[c] {
                return false;
            }
            let w = self.weight[c];
            match t.len() {
                0 => {
                    unsat += 1;
                    for i in self.range(c) {
                        score[(self.lits[i] >> 1) as usize] += w;
                    }
                }
                1 => score[(t[0] >> 1) as usize] -= w,
                _ => {}
            }
        }
        unsat == self.unsat.len() && score == self.score
    }
}
