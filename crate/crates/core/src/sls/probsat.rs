//! probSAT-style walk over a simplified clause set.
//!
//! Every variable occurring here is free; fixed variables were removed by
//! unit propagation beforehand. Literal codes are `2 * var + negated`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

const TABLE: usize = 64;

pub(crate) struct Engine {
    clause_start: Vec<u32>,
    lits: Vec<u32>,
    occ_start: Vec<u32>,
    occ: Vec<u32>,
    free_vars: Vec<u32>,
    assign: Vec<bool>,
    num_true: Vec<u32>,
    /// XOR of the true variables of each clause; the critical variable when exactly one is true.
    true_xor: Vec<u32>,
    breaks: Vec<u32>,
    unsat: Vec<u32>,
    unsat_pos: Vec<u32>,
    weights: [f64; TABLE],
    tail_weight: f64,
    scratch: Vec<f64>,
}

impl Engine {
    /// `clauses` hold literal codes, no duplicates or tautologies, length >= 1.
    pub(crate) fn new(
        var_count: u32,
        clauses: &[Vec<u32>],
        weights: impl Fn(u32) -> f64,
    ) -> Engine {
        let nv = var_count as usize + 1;
        let mut clause_start = Vec::with_capacity(clauses.len() + 1);
        let mut lits = Vec::new();
        let mut occ_count = vec![0u32; 2 * nv];
        let mut max_len = 0;
        for c in clauses {
            clause_start.push(lits.len() as u32);
            lits.extend_from_slice(c);
            max_len = max_len.max(c.len());
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

        let mut table = [0.0; TABLE];
        for (b, w) in table.iter_mut().enumerate() {
            *w = weights(b as u32);
        }
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
            breaks: vec![0; nv],
            unsat: Vec::new(),
            unsat_pos: vec![u32::MAX; nc],
            weights: table,
            tail_weight: weights(TABLE as u32),
            scratch: vec![0.0; max_len],
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
    fn clause(&self, c: usize) -> &[u32] {
        &self.lits[self.clause_start[c] as usize..self.clause_start[c + 1] as usize]
    }

    #[inline]
    fn lit_true(&self, l: u32) -> bool {
        self.assign[(l >> 1) as usize] == (l & 1 == 0)
    }

    /// Installs a full assignment of the free variables and rebuilds all counters.
    pub(crate) fn reset(&mut self, mut value_of: impl FnMut(u32) -> bool) {
        for i in 0..self.free_vars.len() {
            let v = self.free_vars[i];
            self.assign[v as usize] = value_of(v);
        }
        self.breaks.iter_mut().for_each(|b| *b = 0);
        self.unsat.clear();
        for c in 0..self.num_true.len() {
            let mut nt = 0;
            let mut x = 0;
            for &l in self.clause(c) {
                if self.lit_true(l) {
                    nt += 1;
                    x ^= l >> 1;
                }
            }
            self.num_true[c] = nt;
            self.true_xor[c] = x;
            if nt == 0 {
                self.unsat_pos[c] = self.unsat.len() as u32;
                self.unsat.push(c as u32);
            } else {
                self.unsat_pos[c] = u32::MAX;
                if nt == 1 {
                    self.breaks[x as usize] += 1;
                }
            }
        }
    }

    #[inline]
    fn push_unsat(&mut self, c: u32) {
        self.unsat_pos[c as usize] = self.unsat.len() as u32;
        self.unsat.push(c);
    }

    #[inline]
    fn remove_unsat(&mut self, c: u32) {
        let pos = self.unsat_pos[c as usize] as usize;
        let last = self.unsat.pop().expect("clause is in the unsat list");
        if last != c {
            self.unsat[pos] = last;
            self.unsat_pos[last as usize] = pos as u32;
        }
        self.unsat_pos[c as usize] = u32::MAX;
    }

    fn flip(&mut self, v: u32) {
        let vi = v as usize;
        self.assign[vi] = !self.assign[vi];
        let (now_true, now_false) = if self.assign[vi] {
            (2 * v, 2 * v + 1)
        } else {
            (2 * v + 1, 2 * v)
        };

        let (s, e) = (
            self.occ_start[now_true as usize],
            self.occ_start[now_true as usize + 1],
        );
        for i in s..e {
            let c = self.occ[i as usize];
            let ci = c as usize;
            let nt = self.num_true[ci];
            if nt == 0 {
                self.remove_unsat(c);
                self.breaks[vi] += 1;
            } else if nt == 1 {
                self.breaks[self.true_xor[ci] as usize] -= 1;
            }
            self.num_true[ci] = nt + 1;
            self.true_xor[ci] ^= v;
        }

        let (s, e) = (
            self.occ_start[now_false as usize],
            self.occ_start[now_false as usize + 1],
        );
        for i in s..e {
            let c = self.occ[i as usize];
            let ci = c as usize;
            let nt = self.num_true[ci] - 1;
            self.num_true[ci] = nt;
            self.true_xor[ci] ^= v;
            if nt == 0 {
                self.push_unsat(c);
                self.breaks[vi] -= 1;
            } else if nt == 1 {
                self.breaks[self.true_xor[ci] as usize] += 1;
            }
        }
    }

    #[inline]
    fn weight(&self, b: u32) -> f64 {
        if (b as usize) < TABLE {
            self.weights[b as usize]
        } else {
            self.tail_weight
        }
    }

    /// One probSAT step: pick a random falsified clause and flip one of its
    /// variables with probability proportional to `weight(break)`.
    #[inline]
    pub(crate) fn step(&mut self, rng: &mut ChaCha8Rng) {
        let c = self.unsat[rng.gen_range(0..self.unsat.len())] as usize;
        let (s, e) = (
            self.clause_start[c] as usize,
            self.clause_start[c + 1] as usize,
        );
        let mut sum = 0.0;
        for (k, i) in (s..e).enumerate() {
            let w = self.weight(self.breaks[(self.lits[i] >> 1) as usize]);
            sum += w;
            self.scratch[k] = sum;
        }
        let r = rng.gen::<f64>() * sum;
        let len = e - s;
        let k = self.scratch[..len]
            .iter()
            .position(|&acc| r < acc)
            .unwrap_or(len - 1);
        self.flip(self.lits[s + k] >> 1);
    }

    #[cfg(test)]
    pub(crate) fn consistent(&self) -> bool {
        let mut breaks = vec![0u32; self.breaks.len()];
        let mut unsat = 0;
        for c in 0..self.num_true.len() {
            let trues: Vec<u32> = self
                .clause(c)
                .iter()
                .copied()
                .filter(|&l| self.lit_true(l))
                .collect();
            if trues.len() as u32 != self.num_true[c] {
                return false;
            }
            match trues.len() {
                0 => unsat += 1,
                1 => breaks[(trues[0] >> 1) as usize] += 1,
                _ => {}
            }
        }
        breaks == self.breaks && unsat == self.unsat.len()
    }

    #[cfg(test)]
    pub(crate) fn flip_for_test(&mut self, v: u32) {
        self.flip(v)
    }
}
