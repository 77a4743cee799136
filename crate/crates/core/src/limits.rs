/// Size caps for the exhaustive algorithms.
///
/// The defaults keep every computation in this crate at desk scale; callers
/// that know their inputs are small can raise them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group any closure may produce.
    pub max_order: usize,
    /// Groups up to this order get a dense multiplication table; larger ones
    /// multiply canonical forms on demand.
    pub dense_table: usize,
    /// Largest order accepted by the isomorphism test.
    pub iso: usize,
    /// Largest order accepted by the set-cover NCC oracle.
    pub oracle: usize,
    /// Largest order accepted by the NAC computation.
    pub nac: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_order: 50_000,
            dense_table: 5_000,
            iso: 2_048,
            oracle: 500,
            nac: 800,
        }
    }
}

impl Limits {
    /// Dense tables store `u16` entries.
    pub const DENSE_HARD_MAX: usize = u16::MAX as usize + 1;
}
