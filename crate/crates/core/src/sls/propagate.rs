use crate::encoder::Lit;

/// Fixpoint of unit propagation over `clauses` plus `assumptions`.
#[derive(Debug, Clone)]
pub struct Propagation {
    /// Indexed by variable id; `None` for unassigned.
    pub values: Vec<Option<bool>>,
    pub conflict: bool,
}

impl Propagation {
    pub fn assigned(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    #[inline]
    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.values[l.var() as usize].map(|v| v == l.is_positive())
    }
}

pub fn unit_propagate(var_count: u32, clauses: &[Vec<Lit>], assumptions: &[Lit]) -> Propagation {
    let nv = var_count as usize + 1;
    let mut values: Vec<Option<bool>> = vec![None; nv];
    let code = |l: Lit| 2 * l.var() as usize + (!l.is_positive()) as usize;

    let mut occ: Vec<Vec<u32>> = vec![Vec::new(); 2 * nv];
    for (ci, c) in clauses.iter().enumerate() {
        for &l in c {
            occ[code(l)].push(ci as u32);
        }
    }

    let mut queue: Vec<Lit> = Vec::new();
    let mut conflict = false;
    let assign = |l: Lit, values: &mut Vec<Option<bool>>, queue: &mut Vec<Lit>| -> bool {
        match values[l.var() as usize] {
            Some(v) => v == l.is_positive(),
            None => {
                values[l.var() as usize] = Some(l.is_positive());
                queue.push(l);
                true
            }
        }
    };

    for &l in assumptions {
        conflict |= !assign(l, &mut values, &mut queue);
    }
    for c in clauses {
        if c.len() == 1 {
            conflict |= !assign(c[0], &mut values, &mut queue);
        }
    }

    let mut head = 0;
    while head < queue.len() && !conflict {
        let l = queue[head];
        head += 1;
        for &ci in &occ[code(!l)] {
            let c = &clauses[ci as usize];
            let mut unassigned = None;
            let mut open = 0;
            let mut satisfied = false;
            for &x in c {
                match values[x.var() as usize] {
                    Some(v) if v == x.is_positive() => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        open += 1;
                        unassigned = Some(x);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (open, unassigned) {
                (0, _) => {
                    conflict = true;
                    break;
                }
                (1, Some(x)) if !assign(x, &mut values, &mut queue) => {
                    conflict = true;
                    break;
                }
                _ => {}
            }
        }
    }
    Propagation { values, conflict }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lits(xs: &[i32]) -> Vec<Lit> {
        xs.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect()
    }

    #[test]
    fn chain_propagates() {
        let cls = vec![
            lits(&[1]),
            lits(&[-1, 2]),
            lits(&[-2, 3, 4]),
            lits(&[-2, -3]),
        ];
        let p = unit_propagate(4, &cls, &[]);
        assert!(!p.conflict);
        assert_eq!(
            p.values[1..].to_vec(),
            vec![Some(true), Some(true), Some(false), Some(true)]
        );
    }

    #[test]
    fn conflict_detected() {
        let cls = vec![lits(&[-1, 2]), lits(&[-1, -2])];
        assert!(unit_propagate(2, &cls, &lits(&[1])).conflict);
        assert!(unit_propagate(1, &[lits(&[1])], &lits(&[-1])).conflict);
        assert!(!unit_propagate(2, &cls, &lits(&[-1])).conflict);
    }
}
