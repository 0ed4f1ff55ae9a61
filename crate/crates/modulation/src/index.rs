use std::fmt;

/// `α(m) = ||m| - 1|`.
pub fn alpha(m: i32) -> u32 {
    (m.unsigned_abs() as i64 - 1).unsigned_abs() as u32
}

/// Number of envelopes kept for wavenumber `m` at truncation `N`:
/// `N - α(m) - 2[|m| = 1]` (may be non-positive, meaning none).
pub fn tilde_alpha(m: i32, big_n: u32) -> i64 {
    big_n as i64 - alpha(m) as i64 - if m.abs() == 1 { 2 } else { 0 }
}

/// Envelope label `(m, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeIndex {
    pub m: i32,
    pub j: u32,
}

impl ModeIndex {
    pub const fn new(m: i32, j: u32) -> Self {
        Self { m, j }
    }

    /// Whether `(m, j)` is one of the envelopes kept at truncation `N`.
    pub fn is_valid(&self, big_n: u32) -> bool {
        self.j >= 1 && self.m.unsigned_abs() <= big_n && (self.j as i64) <= tilde_alpha(self.m, big_n)
    }

    pub fn is_critical(&self) -> bool {
        self.m.abs() == 1
    }

    /// Power of `r` multiplying the envelope in the ansatz, `α(m) + j`.
    pub fn level(&self) -> u32 {
        alpha(self.m) + self.j
    }

    /// Power of `r` at which the envelope's own equation is read off:
    /// the level for slaved envelopes, two more for critical ones (the
    /// time derivative and `v` enter at `r²` relative to the field).
    pub fn matching_order(&self) -> u32 {
        self.level() + if self.is_critical() { 2 } else { 0 }
    }

    pub fn conj(&self) -> Self {
        Self { m: -self.m, j: self.j }
    }

    /// All kept envelopes at truncation `N`, in canonical order.
    pub fn all(big_n: u32) -> Vec<ModeIndex> {
        let n = big_n as i32;
        let mut out = Vec::new();
        for m in -n..=n {
            let top = tilde_alpha(m, big_n);
            for j in 1..=top.max(0) as u32 {
                out.push(ModeIndex::new(m, j));
            }
        }
        out
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A[{},{}]", self.m, self.j)
    }
}
