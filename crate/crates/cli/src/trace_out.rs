//! Line-delimited trace export: one JSON record per bank word access.

use std::io::{BufWriter, Write};
use std::path::Path;

use addrengine_core::engine::trace::{Access, AccessEvent, TraceSink};
use anyhow::Result;

/// Streams events to a file as JSON lines:
/// `{"cycle":N,"unit":"txu-in","bank":B,"address":A,"rw":"r"}`.
pub struct JsonLinesSink<W: Write> {
    out: W,
    pub records: u64,
    error: Option<std::io::Error>,
}

impl JsonLinesSink<BufWriter<std::fs::File>> {
    pub fn create(path: &Path) -> Result<Self> {
        let file = std::fs::File::create(path)?;
        Ok(Self { out: BufWriter::new(file), records: 0, error: None })
    }
}

impl<W: Write> JsonLinesSink<W> {
    pub fn finish(mut self) -> Result<u64> {
        if let Some(e) = self.error.take() {
            return Err(e.into());
        }
        self.out.flush()?;
        Ok(self.records)
    }
}

impl<W: Write> TraceSink for JsonLinesSink<W> {
    fn record(&mut self, ev: AccessEvent) {
        if self.error.is_some() {
            return;
        }
        let rw = match ev.access {
            Access::Read => "r",
            Access::Write => "w",
        };
        let line = format!(
            "{{\"cycle\":{},\"unit\":\"{}\",\"bank\":{},\"address\":{},\"rw\":\"{}\"}}\n",
            ev.cycle,
            ev.unit.name(),
            ev.bank,
            ev.address,
            rw
        );
        if let Err(e) = self.out.write_all(line.as_bytes()) {
            self.error = Some(e);
            return;
        }
        self.records += 1;
    }
}
