//! Run counters.

/// Access, bus and cycle counters accumulated over one engine run.
///
/// `zbt_read_events` and `zbt_write_events` follow the per-pixel-cycle
/// convention: one read event per neighborhood fetch (all new words across
/// banks and lines load in parallel and count once) and one write event per
/// result pixel. Raw word traffic is visible in the trace and in
/// `zbt_words_*`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Counters {
    pub zbt_read_events: u64,
    pub zbt_write_events: u64,
    pub zbt_words_read: u64,
    pub zbt_words_written: u64,
    pub host_words_in: u64,
    pub host_words_out: u64,
    pub cycles_total: u64,
    pub cycles_stalled: u64,
    pub stalls_line_miss: u64,
    pub stalls_oim_full: u64,
    /// Cycles where the pipeline advanced while the host bus was busy.
    pub overlap_cycles: u64,
    /// Cycles where the pipeline advanced while the host bus was idle.
    pub compute_only_cycles: u64,
}

impl Counters {
    pub fn access_events(&self) -> u64 {
        self.zbt_read_events + self.zbt_write_events
    }
}
