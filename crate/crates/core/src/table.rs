//! Segment-indexed side table.
//!
//! Accumulates per-segment data (keyed by the pixel's Alfa field) while a
//! scan runs. Reads of untouched ids return the zero record.

use alloc::collections::BTreeMap;

/// Per-segment accumulator record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TableRecord {
    pub count: u64,
    pub y_sum: u64,
    pub u_sum: u64,
    pub v_sum: u64,
    pub alfa_sum: u64,
    pub aux_sum: u64,
}

impl TableRecord {
    pub fn add(&mut self, other: &TableRecord) {
        self.count += other.count;
        self.y_sum += other.y_sum;
        self.u_sum += other.u_sum;
        self.v_sum += other.v_sum;
        self.alfa_sum += other.alfa_sum;
        self.aux_sum += other.aux_sum;
    }
}

/// Indexed table keyed by segment id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IndexedTable {
    records: BTreeMap<u16, TableRecord>,
}

impl IndexedTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record for `id`; the zero record if the id was never touched.
    pub fn read(&self, id: u16) -> TableRecord {
        self.records.get(&id).copied().unwrap_or_default()
    }

    /// Adds `contribution` field-wise to the record for `id`.
    pub fn accumulate(&mut self, id: u16, contribution: &TableRecord) {
        self.records.entry(id).or_default().add(contribution);
    }

    /// Ids touched so far, ascending.
    pub fn ids(&self) -> impl Iterator<Item = u16> + '_ {
        self.records.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u16, &TableRecord)> {
        self.records.iter().map(|(k, v)| (*k, v))
    }
}
