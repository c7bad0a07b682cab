use core::fmt;

/// Connectedness value: an integer at least -2, or +∞.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConnValue {
    Finite(i32),
    Infinite,
}

impl ConnValue {
    pub fn finite(self) -> Option<i32> {
        match self {
            ConnValue::Finite(v) => Some(v),
            ConnValue::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ConnValue::Infinite
    }

    /// `self + k` with ∞ absorbing.
    pub fn plus(self, k: i32) -> ConnValue {
        match self {
            ConnValue::Finite(v) => ConnValue::Finite(v + k),
            ConnValue::Infinite => ConnValue::Infinite,
        }
    }
}

impl fmt::Display for ConnValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnValue::Finite(v) => write!(f, "{v}"),
            ConnValue::Infinite => f.write_str("inf"),
        }
    }
}

/// Result of a capped computation. `AtLeast(c)` means every group checked up
/// to dimension `c` vanished, so the value is at least `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConnWindow {
    Exact(ConnValue),
    AtLeast(i32),
}

impl ConnWindow {
    pub fn exact(self) -> Option<ConnValue> {
        match self {
            ConnWindow::Exact(v) => Some(v),
            ConnWindow::AtLeast(_) => None,
        }
    }

    /// Best known lower bound.
    pub fn lower(self) -> ConnValue {
        match self {
            ConnWindow::Exact(v) => v,
            ConnWindow::AtLeast(c) => ConnValue::Finite(c),
        }
    }

    /// Is the value `<= t`? `None` when the window cannot tell.
    pub fn at_most(self, t: ConnValue) -> Option<bool> {
        match self {
            ConnWindow::Exact(v) => Some(v <= t),
            ConnWindow::AtLeast(c) if ConnValue::Finite(c) > t => Some(false),
            ConnWindow::AtLeast(_) => None,
        }
    }

    /// Is the value `>= t`?
    pub fn at_least(self, t: ConnValue) -> Option<bool> {
        match self {
            ConnWindow::Exact(v) => Some(v >= t),
            ConnWindow::AtLeast(c) if ConnValue::Finite(c) >= t => Some(true),
            ConnWindow::AtLeast(_) => None,
        }
    }

    /// Is `self <= other`?
    pub fn le(self, other: ConnWindow) -> Option<bool> {
        match (self, other) {
            (ConnWindow::Exact(x), _) => other.at_least(x),
            (ConnWindow::AtLeast(c), ConnWindow::Exact(y)) if y < ConnValue::Finite(c) => Some(false),
            _ => None,
        }
    }

    /// Shift by `k` (∞ absorbing).
    pub fn plus(self, k: i32) -> ConnWindow {
        match self {
            ConnWindow::Exact(v) => ConnWindow::Exact(v.plus(k)),
            ConnWindow::AtLeast(c) => ConnWindow::AtLeast(c + k),
        }
    }
}

impl fmt::Display for ConnWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnWindow::Exact(v) => write!(f, "{v}"),
            ConnWindow::AtLeast(c) => write!(f, ">={c}"),
        }
    }
}

/// Smallest integer `>= n/2 - 2`.
pub fn ceil_half_minus_two(n: usize) -> i32 {
    n.div_ceil(2) as i32 - 2
}

/// Largest integer `<= n/2 - 2`.
pub fn floor_half_minus_two(n: usize) -> i32 {
    (n / 2) as i32 - 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use ConnValue::*;

    #[test]
    fn ordering_and_windows() {
        assert!(Finite(100) < Infinite);
        assert!(Finite(-2) < Finite(-1));
        let w = ConnWindow::AtLeast(1);
        assert_eq!(w.at_most(Finite(0)), Some(false));
        assert_eq!(w.at_most(Finite(1)), None);
        assert_eq!(w.at_least(Finite(1)), Some(true));
        assert_eq!(ConnWindow::Exact(Finite(0)).le(w), Some(true));
        assert_eq!(w.le(ConnWindow::Exact(Finite(0))), Some(false));
        assert_eq!(w.le(w), None);
        assert_eq!(ceil_half_minus_two(3), 0);
        assert_eq!(floor_half_minus_two(3), -1);
    }
}
