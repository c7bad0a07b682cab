use super::{delete_edge, explode_edge, MeshulamError};
use crate::graphs::SimpleGraph;
use crate::topology::{independence_conn_h, ConnWindow, IndependenceOptions};

/// Three-valued answer of a capped check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Inconclusive,
}

impl Decision {
    pub fn from_option(b: Option<bool>) -> Self {
        match b {
            Some(true) => Decision::Yes,
            Some(false) => Decision::No,
            None => Decision::Inconclusive,
        }
    }

    pub fn known(self) -> Option<bool> {
        match self {
            Decision::Yes => Some(true),
            Decision::No => Some(false),
            Decision::Inconclusive => None,
        }
    }
}

/// Source of `conn(I(J))` estimates.
pub trait ConnOracle {
    fn conn(&mut self, j: &SimpleGraph) -> Result<ConnWindow, MeshulamError>;
}

/// Homological oracle: `conn_H(I(J))` scanned up to `cap`.
#[derive(Clone, Copy, Debug)]
pub struct HomologyOracle {
    pub cap: i32,
    pub options: IndependenceOptions,
}

impl HomologyOracle {
    pub fn new(cap: i32) -> Self {
        Self { cap, options: IndependenceOptions::default() }
    }

    /// Default window `|M| / 2` for a matching of size `m`.
    pub fn for_matching(m: usize) -> Self {
        Self::new((m / 2) as i32)
    }
}

impl ConnOracle for HomologyOracle {
    fn conn(&mut self, j: &SimpleGraph) -> Result<ConnWindow, MeshulamError> {
        Ok(independence_conn_h(j, self.cap, self.options)?)
    }
}

impl<F: FnMut(&SimpleGraph) -> Result<ConnWindow, MeshulamError>> ConnOracle for F {
    fn conn(&mut self, j: &SimpleGraph) -> Result<ConnWindow, MeshulamError> {
        self(j)
    }
}

/// `conn(J - e) <= conn(J)`.
pub fn is_decouplable(j: &SimpleGraph, e: (usize, usize), oracle: &mut dyn ConnOracle) -> Result<Decision, MeshulamError> {
    let minus = delete_edge(j, e)?;
    let a = oracle.conn(&minus)?;
    let b = oracle.conn(j)?;
    Ok(Decision::from_option(a.le(b)))
}

/// `conn(J ⋇ e) <= conn(J) - 1`.
pub fn is_explodable(j: &SimpleGraph, e: (usize, usize), oracle: &mut dyn ConnOracle) -> Result<Decision, MeshulamError> {
    let star = explode_edge(j, e)?;
    let a = oracle.conn(&star)?.plus(1);
    let b = oracle.conn(j)?;
    Ok(Decision::from_option(a.le(b)))
}
