use std::fmt;
use std::ops::Not;

/// A signed literal over 1-based variable ids, DIMACS style.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(i32);

impl Lit {
    #[inline]
    pub fn new(var: u32, positive: bool) -> Lit {
        debug_assert!(var > 0 && var <= i32::MAX as u32);
        if positive {
            Lit(var as i32)
        } else {
            Lit(-(var as i32))
        }
    }

    #[inline]
    pub fn pos(var: u32) -> Lit {
        Lit::new(var, true)
    }

    #[inline]
    pub fn neg(var: u32) -> Lit {
        Lit::new(var, false)
    }

    /// `None` for zero.
    pub fn from_dimacs(x: i32) -> Option<Lit> {
        (x != 0).then_some(Lit(x))
    }

    #[inline]
    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    #[inline]
    pub fn var(self) -> u32 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A total assignment; index 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model(Vec<bool>);

impl Model {
    pub fn all_false(var_count: u32) -> Model {
        Model(vec![false; var_count as usize + 1])
    }

    pub fn from_values(values: Vec<bool>) -> Model {
        let mut v = Vec::with_capacity(values.len() + 1);
        v.push(false);
        v.extend(values);
        Model(v)
    }

    #[inline]
    pub fn var_count(&self) -> u32 {
        (self.0.len() - 1) as u32
    }

    #[inline]
    pub fn value(&self, var: u32) -> bool {
        self.0[var as usize]
    }

    #[inline]
    pub fn set(&mut self, var: u32, value: bool) {
        self.0[var as usize] = value;
    }

    #[inline]
    pub fn satisfies(&self, lit: Lit) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    pub fn flip(&mut self, var: u32) {
        let v = &mut self.0[var as usize];
        *v = !*v;
    }

    /// Values of variables `1..=var_count`.
    pub fn values(&self) -> &[bool] {
        &self.0[1..]
    }

    /// `v`-line rendering as printed by DIMACS solvers.
    pub fn to_v_lines(&self) -> String {
        let mut out = String::new();
        let mut line = String::from("v");
        for var in 1..=self.var_count() {
            let lit = Lit::new(var, self.value(var));
            line.push(' ');
            line.push_str(&lit.to_string());
            if line.len() > 72 {
                out.push_str(&line);
                out.push('\n');
                line = String::from("v");
            }
        }
        line.push_str(" 0\n");
        out.push_str(&line);
        out
    }
}
