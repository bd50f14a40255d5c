//! Variables, literals and decision levels.
use std::fmt;

/// A Boolean variable, numbered from 1 as in DIMACS.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Var {
        assert!(index >= 1, "variables are numbered from 1");
        Var(index)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn lit(self, positive: bool) -> Lit {
        Lit(self.0 << 1 | (!positive) as u32)
    }

    pub fn positive(self) -> Lit {
        self.lit(true)
    }

    pub fn negative(self) -> Lit {
        self.lit(false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A literal encoded as `2 * var + negated`, so that per-literal tables
/// (watch lists) can be plain vectors indexed by [`Lit::code`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn from_dimacs(value: i32) -> Lit {
        assert!(value != 0, "0 is not a literal");
        Var::new(value.unsigned_abs()).lit(value > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = (self.0 >> 1) as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn from_code(code: usize) -> Lit {
        Lit(code as u32)
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.var())
        } else {
            write!(f, "¬{}", self.var())
        }
    }
}

/// A decision level. Unassigned literals and the undefined clause sit at
/// [`Level::INFINITY`], which compares above every finite level.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Level(u32);

impl Level {
    pub const ZERO: Level = Level(0);
    pub const INFINITY: Level = Level(u32::MAX);

    pub fn new(value: u32) -> Level {
        assert!(value != u32::MAX, "reserved for the infinite level");
        Level(value)
    }

    pub fn is_finite(self) -> bool {
        self != Level::INFINITY
    }

    /// Numeric value; panics on the infinite level.
    pub fn get(self) -> u32 {
        assert!(self.is_finite(), "infinite level has no value");
        self.0
    }

    pub fn pred(self) -> Level {
        Level::new(self.get() - 1)
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_finite() {
            write!(f, "{}", self.0)
        } else {
            f.write_str("∞")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn negation_is_an_involution(v in 1i32..10_000, pos in any::<bool>()) {
            let lit = Lit::from_dimacs(if pos { v } else { -v });
            prop_assert_eq!(!!lit, lit);
            prop_assert_eq!((!lit).var(), lit.var());
            prop_assert_ne!((!lit).is_positive(), lit.is_positive());
            prop_assert_eq!(Lit::from_dimacs(lit.to_dimacs()), lit);
        }
    }

    #[test]
    fn encoding_is_two_var_plus_sign() {
        assert_eq!(Lit::from_dimacs(3).code(), 6);
        assert_eq!(Lit::from_dimacs(-3).code(), 7);
    }

    #[test]
    fn infinity_dominates() {
        assert!(Level::INFINITY > Level::new(u32::MAX - 1));
        assert!(Level::ZERO < Level::new(1));
        assert_eq!(Level::INFINITY.to_string(), "∞");
    }
}
