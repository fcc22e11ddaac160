//! Word-level access trace of the simulated ZBT ports.
//!
//! Every agent touching bank memory (host DMA in/out, the transmission
//! units feeding the IIM and draining the OIM) emits one event per word per
//! cycle. The audit enforces the single-port discipline: at most one event
//! per bank per cycle, over the whole run.

use alloc::vec::Vec;

use super::zbt::BANK_COUNT;

/// Agent that touched the bank port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Unit {
    /// Host DMA writing input words.
    HostIn,
    /// Host DMA reading result words.
    HostOut,
    /// Transmission unit loading lines into the IIM.
    TxuIn,
    /// Transmission unit draining the OIM.
    TxuOut,
}

impl Unit {
    pub fn name(self) -> &'static str {
        match self {
            Unit::HostIn => "host-in",
            Unit::HostOut => "host-out",
            Unit::TxuIn => "txu-in",
            Unit::TxuOut => "txu-out",
        }
    }
}

/// Direction of the access.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Access {
    Read,
    Write,
}

/// One word access on one bank port.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AccessEvent {
    pub cycle: u64,
    pub unit: Unit,
    pub bank: u8,
    pub address: u32,
    pub access: Access,
}

/// Receiver for trace events. Events arrive in nondecreasing cycle order.
pub trait TraceSink {
    fn record(&mut self, event: AccessEvent);
}

/// Collects every event.
#[derive(Debug, Default)]
pub struct VecSink {
    pub events: Vec<AccessEvent>,
}

impl TraceSink for VecSink {
    fn record(&mut self, event: AccessEvent) {
        self.events.push(event);
    }
}

impl<F: FnMut(AccessEvent)> TraceSink for F {
    fn record(&mut self, event: AccessEvent) {
        self(event)
    }
}

/// Streaming bank-discipline checker and word counter.
#[derive(Debug, Clone, Default)]
pub struct BankAudit {
    current_cycle: u64,
    banks_this_cycle: u8,
    pub violations: u64,
    pub first_violation: Option<AccessEvent>,
    pub words_read: u64,
    pub words_written: u64,
    pub events: u64,
}

impl BankAudit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, event: AccessEvent) {
        debug_assert!((event.bank as usize) < BANK_COUNT);
        if event.cycle != self.current_cycle {
            debug_assert!(event.cycle > self.current_cycle || self.events == 0);
            self.current_cycle = event.cycle;
            self.banks_this_cycle = 0;
        }
        let bit = 1u8 << event.bank;
        if self.banks_this_cycle & bit != 0 {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(event);
            }
        }
        self.banks_this_cycle |= bit;
        match event.access {
            Access::Read => self.words_read += 1,
            Access::Write => self.words_written += 1,
        }
        self.events += 1;
    }
}
