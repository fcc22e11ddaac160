//! Deterministic, cycle-accurate simulator of the AddressEngine coprocessor.
//!
//! One run models the full round trip: the host streams packed input frames
//! over the 32-bit bus into the ZBT banks in 16-line strips, transmission
//! units stage lines into the IIM, the four-stage process unit executes the
//! kernel one pixel-cycle at a time under the pixel level controller, results
//! buffer through the OIM into the result banks, and the host reads the
//! packed result back. Every bank word access is traced; the output frame is
//! bit-identical to the software scans in [`crate::scan`].

pub mod counters;
pub mod iim;
pub mod matrix;
pub mod oim;
pub mod plc;
pub mod strip;
pub mod timing;
pub mod trace;
pub mod transfer;
pub mod zbt;

use alloc::collections::VecDeque;
use alloc::vec::Vec;
use core::fmt;

use crate::frame::Frame;
use crate::kernel::{Kernel, KernelError};
use crate::mask::{NeighborhoodMask, ScanOrder, MAX_LINE_SPAN};
use crate::pixel::{pack_pixel, unpack_pixel, Pixel, WordPair};
use crate::scan::ScanSide;

use counters::Counters;
use iim::Iim;
use matrix::MatrixRegister;
use oim::Oim;
use plc::{arbitrate, Conflict, PixelCycle, Plc};
use strip::StripError;
use timing::{timing_report, RunShape, TimingConfig, TimingError, TimingReport};
use trace::{Access, AccessEvent, BankAudit, TraceSink, Unit};
use transfer::TransferPlan;
use zbt::{AddressError, ZbtLayout, ZbtMemory, INPUT_BANKS};

/// Pixel addressing modes. The engine executes inter and intra; segment
/// addressing exists only in the software library for now.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AddressingMode {
    Inter,
    Intra,
    Segment,
}

impl AddressingMode {
    pub fn name(self) -> &'static str {
        match self {
            AddressingMode::Inter => "inter",
            AddressingMode::Intra => "intra",
            AddressingMode::Segment => "segment",
        }
    }

    /// Input frames the mode consumes.
    pub fn input_count(self) -> usize {
        match self {
            AddressingMode::Inter => 2,
            AddressingMode::Intra | AddressingMode::Segment => 1,
        }
    }
}

/// Run options beyond the functional configuration.
#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    pub timing: TimingConfig,
    /// Keep the pixel pipeline disabled until every input word is on the
    /// board. Models the worst-case inter operations that cannot start
    /// early.
    pub hold_until_input_complete: bool,
}

/// Errors from engine validation or internal invariant violations.
#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    /// Mode not implemented by the coprocessor (segment addressing).
    UnsupportedMode { mode: AddressingMode },
    InputCount { expected: usize, actual: usize },
    DimensionMismatch,
    /// Mask bounding box exceeds the matrix register.
    MaskSpan { span: usize },
    Strip(StripError),
    Address(AddressError),
    Kernel(KernelError),
    Timing(TimingError),
    /// Arbiter found two in-flight instructions on one resource.
    ResourceConflict(Conflict),
    /// Internal protocol assertion failed.
    ProtocolViolation(&'static str),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::UnsupportedMode { mode } => {
                write!(f, "{} addressing is not supported by the engine", mode.name())
            }
            EngineError::InputCount { expected, actual } => {
                write!(f, "mode needs {expected} input frame(s), got {actual}")
            }
            EngineError::DimensionMismatch => write!(f, "input frames differ in size"),
            EngineError::MaskSpan { span } => {
                write!(f, "mask spans {span} columns, matrix register holds {MAX_LINE_SPAN}")
            }
            EngineError::Strip(e) => write!(f, "{e}"),
            EngineError::Address(e) => write!(f, "{e}"),
            EngineError::Kernel(e) => write!(f, "{e}"),
            EngineError::Timing(e) => write!(f, "{e}"),
            EngineError::ResourceConflict(c) => write!(f, "arbiter: {c}"),
            EngineError::ProtocolViolation(what) => write!(f, "protocol violation: {what}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EngineError {}

impl From<StripError> for EngineError {
    fn from(e: StripError) -> Self {
        EngineError::Strip(e)
    }
}

impl From<AddressError> for EngineError {
    fn from(e: AddressError) -> Self {
        EngineError::Address(e)
    }
}

impl From<KernelError> for EngineError {
    fn from(e: KernelError) -> Self {
        EngineError::Kernel(e)
    }
}

impl From<TimingError> for EngineError {
    fn from(e: TimingError) -> Self {
        EngineError::Timing(e)
    }
}

/// Audit of stage-2 neighborhood fetches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FetchAudit {
    /// Completed neighborhood fetches; each takes exactly one cycle.
    pub fetches: u64,
    /// Fetches that needed more than one cycle. Must stay zero.
    pub multi_cycle_fetches: u64,
    /// Stage-2 stall cycles.
    pub stall_cycles: u64,
    /// Stall cycles where the missing line's host transfer was incomplete.
    pub stalls_line_untransferred: u64,
    /// Stall cycles where the line was transferred but the transmission
    /// unit was still staging it into the IIM.
    pub stalls_line_resupplying: u64,
    /// Worst observed staging lag behind the transfer, in cycles.
    pub max_resupply_lag: u64,
}

/// Measured input transfer summary.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InputTransferRecord {
    pub words: u64,
    pub end_cycle: u64,
}

/// Measured output transfer summary.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OutputTransferRecord {
    pub words: u64,
    pub start_cycle: u64,
    pub end_cycle: u64,
}

/// Everything one engine run produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub frame: Frame,
    pub side: ScanSide,
    pub counters: Counters,
    /// Schedule-model overlap accounting for this run's shape.
    pub timing: TimingReport,
    pub fetch_audit: FetchAudit,
    /// Bank-discipline violations found by the streaming audit. Always zero
    /// in a correct simulator.
    pub bank_violations: u64,
    pub input_transfer: InputTransferRecord,
    pub output_transfer: OutputTransferRecord,
}

/// Runs the engine without exporting the word trace.
pub fn run_engine(
    mode: AddressingMode,
    mask: &NeighborhoodMask,
    scan: ScanOrder,
    kernel: &Kernel,
    inputs: &[Frame],
    options: &EngineOptions,
) -> Result<RunOutput, EngineError> {
    struct Discard;
    impl TraceSink for Discard {
        fn record(&mut self, _: AccessEvent) {}
    }
    run_engine_traced(mode, mask, scan, kernel, inputs, options, &mut Discard)
}

/// Runs the engine, forwarding every bank word access to `sink`.
pub fn run_engine_traced(
    mode: AddressingMode,
    mask: &NeighborhoodMask,
    scan: ScanOrder,
    kernel: &Kernel,
    inputs: &[Frame],
    options: &EngineOptions,
    sink: &mut dyn TraceSink,
) -> Result<RunOutput, EngineError> {
    let inter = match mode {
        AddressingMode::Segment => return Err(EngineError::UnsupportedMode { mode }),
        AddressingMode::Inter => true,
        AddressingMode::Intra => false,
    };
    if inputs.len() != mode.input_count() {
        return Err(EngineError::InputCount { expected: mode.input_count(), actual: inputs.len() });
    }
    if inter && !inputs[0].same_dimensions(&inputs[1]) {
        return Err(EngineError::DimensionMismatch);
    }
    kernel.validate(inter, mask)?;
    if mask.column_span() > MAX_LINE_SPAN {
        return Err(EngineError::MaskSpan { span: mask.column_span() });
    }
    options.timing.validate()?;

    let frame = &inputs[0];
    let (lines, line_len) = match scan {
        ScanOrder::Horizontal => (frame.height(), frame.width()),
        ScanOrder::Vertical => (frame.width(), frame.height()),
    };
    let layout = ZbtLayout::new(frame.width(), frame.height())?;
    let plan = TransferPlan::new(inputs.len(), lines, line_len)?;

    // Scan-relative line offsets of the neighborhood.
    let (lo, hi) = if inter {
        (0i16, 0i16)
    } else {
        match scan {
            ScanOrder::Horizontal => (mask.min_dy() as i16, mask.max_dy() as i16),
            ScanOrder::Vertical => (mask.min_dx() as i16, mask.max_dx() as i16),
        }
    };

    let shape = RunShape {
        width: frame.width(),
        height: frame.height(),
        scan,
        inputs: inputs.len(),
        line_reach: hi.max(0) as usize,
        hold_until_input_complete: options.hold_until_input_complete,
    };
    let timing = timing_report(&options.timing, &shape)?;

    if frame.pixel_count() == 0 {
        return Ok(RunOutput {
            frame: frame.clone(),
            side: ScanSide::default(),
            counters: Counters::default(),
            timing,
            fetch_audit: FetchAudit::default(),
            bank_violations: 0,
            input_transfer: InputTransferRecord::default(),
            output_transfer: OutputTransferRecord::default(),
        });
    }

    let mut sim = Sim {
        inter,
        mask,
        scan,
        kernel,
        inputs,
        lines,
        line_len,
        pixels: frame.pixel_count() as u64,
        lo,
        hi,
        layout,
        plan,
        hold: options.hold_until_input_complete,
        cycle: 0,
        zbt: ZbtMemory::new(),
        iim: if inter { Iim::new_inter(line_len, lines) } else { Iim::new_intra(line_len, lines) },
        oim: Oim::new(line_len),
        matrix: MatrixRegister::new(mask),
        inter_regs: (Pixel::default(), Pixel::default()),
        plc: Plc::new(),
        exec_out: None,
        next_issue: 0,
        host_in_word: 0,
        host_words_before: 0,
        txu_in: (0..inputs.len()).map(TxuIn::new).collect(),
        txu_out_words: 0,
        host_out: HostOut::default(),
        counters: Counters::default(),
        audit: BankAudit::new(),
        fetch: FetchAudit::default(),
        side: ScanSide::default(),
        banks_used: 0,
    };
    sim.run(sink)?;

    let out_frame = sim.assemble_frame()?;
    let words_out = sim.host_out.words;
    Ok(RunOutput {
        frame: out_frame,
        side: sim.side,
        counters: Counters {
            cycles_total: sim.cycle,
            zbt_words_read: sim.audit.words_read,
            zbt_words_written: sim.audit.words_written,
            ..sim.counters
        },
        timing,
        fetch_audit: sim.fetch,
        bank_violations: sim.audit.violations,
        input_transfer: InputTransferRecord {
            words: sim.plan.words_total(),
            end_cycle: sim.plan.input_complete_cycle(),
        },
        output_transfer: OutputTransferRecord {
            words: words_out,
            start_cycle: sim.host_out.start_cycle,
            end_cycle: sim.host_out.end_cycle,
        },
    })
}

/// Line staging state of one input's transmission unit.
#[derive(Debug)]
struct TxuIn {
    input: usize,
    line: Option<usize>,
    lower_read: usize,
    upper_read: usize,
    lower_buf: VecDeque<u32>,
    upper_buf: VecDeque<u32>,
}

impl TxuIn {
    fn new(input: usize) -> Self {
        Self {
            input,
            line: None,
            lower_read: 0,
            upper_read: 0,
            lower_buf: VecDeque::new(),
            upper_buf: VecDeque::new(),
        }
    }
}

#[derive(Debug, Default)]
struct HostOut {
    started: bool,
    start_cycle: u64,
    end_cycle: u64,
    words: u64,
    stream: Vec<u32>,
}

struct Sim<'a> {
    inter: bool,
    mask: &'a NeighborhoodMask,
    scan: ScanOrder,
    kernel: &'a Kernel,
    inputs: &'a [Frame],
    lines: usize,
    line_len: usize,
    pixels: u64,
    lo: i16,
    hi: i16,
    layout: ZbtLayout,
    plan: TransferPlan,
    hold: bool,

    cycle: u64,
    zbt: ZbtMemory,
    iim: Iim,
    oim: Oim,
    matrix: MatrixRegister,
    inter_regs: (Pixel, Pixel),
    plc: Plc,
    exec_out: Option<Pixel>,
    next_issue: u64,
    host_in_word: u64,
    /// Snapshot of `host_in_word` at cycle start: words readable this cycle.
    host_words_before: u64,
    txu_in: Vec<TxuIn>,
    txu_out_words: u64,
    host_out: HostOut,

    counters: Counters,
    audit: BankAudit,
    fetch: FetchAudit,
    side: ScanSide,
    banks_used: u8,
}

enum StallReason {
    OimFull,
    LineMiss { input: usize, line: usize },
}

impl<'a> Sim<'a> {
    fn run(&mut self, sink: &mut dyn TraceSink) -> Result<(), EngineError> {
        let words_out_total = 2 * self.pixels;
        // Generous bound; a correct run finishes well inside it.
        let max_cycles = 16 * (self.plan.words_total() + words_out_total) + 4096;
        loop {
            self.banks_used = 0;
            self.host_words_before = self.host_in_word;

            let input_active = self.host_in_word < self.plan.words_total();
            let output_active = self.host_out.started && self.host_out.words < words_out_total;
            let bus_busy = input_active || output_active;

            self.pipeline_step(bus_busy)?;
            self.host_in_step(sink);
            self.txu_in_step(sink);
            self.txu_out_step(sink);
            self.host_out_step(sink, words_out_total);

            self.cycle += 1;
            if self.host_out.words == words_out_total && self.host_in_word == self.plan.words_total() {
                self.host_out.end_cycle = self.cycle;
                return Ok(());
            }
            if self.cycle > max_cycles {
                return Err(EngineError::ProtocolViolation("run exceeded its cycle bound"));
            }
        }
    }

    /// Scan line and in-line position of pixel-cycle `k`.
    fn scan_position(&self, k: u64) -> (usize, usize) {
        ((k / self.line_len as u64) as usize, (k % self.line_len as u64) as usize)
    }

    /// Image coordinates of (scan line, position).
    fn image_xy(&self, line: usize, pos: usize) -> (usize, usize) {
        match self.scan {
            ScanOrder::Horizontal => (pos, line),
            ScanOrder::Vertical => (line, pos),
        }
    }

    fn input_word_address(&self, line: usize, pos: usize) -> u32 {
        let (x, y) = self.image_xy(line, pos);
        (y * self.layout.width + x) as u32
    }

    /// Clamped scan-line span the neighborhood of `line` touches.
    fn required_lines(&self, line: usize) -> (usize, usize) {
        let lo = (line as isize + self.lo as isize).max(0) as usize;
        let hi = ((line as isize + self.hi as isize) as usize).min(self.lines - 1);
        (lo, hi)
    }

    /// IIM source cell for matrix grid cell (r, c) of the pixel at
    /// (line, pos): clamped scan line and clamped position.
    fn source_cell(&self, line: usize, pos: usize, r: usize, c: usize) -> (usize, usize) {
        let (dy, dx) = (self.mask.min_dy() as isize + r as isize, self.mask.min_dx() as isize + c as isize);
        let (dline, dpos) = match self.scan {
            ScanOrder::Horizontal => (dy, dx),
            ScanOrder::Vertical => (dx, dy),
        };
        let sl = (line as isize + dline).clamp(0, self.lines as isize - 1) as usize;
        let sp = (pos as isize + dpos).clamp(0, self.line_len as isize - 1) as usize;
        (sl, sp)
    }

    fn emit(&mut self, sink: &mut dyn TraceSink, unit: Unit, bank: u8, address: u32, access: Access) {
        self.banks_used |= 1 << bank;
        let event = AccessEvent { cycle: self.cycle, unit, bank, address, access };
        self.audit.record(event);
        sink.record(event);
    }

    fn bank_free(&self, bank: u8) -> bool {
        self.banks_used & (1 << bank) == 0
    }

    /// Stall check against the work the next advance would perform: the
    /// stage-3 occupant is about to store, the stage-1 occupant is about to
    /// fetch its neighborhood.
    fn stall_reason(&self) -> Option<StallReason> {
        if self.plc.stage(3).is_some() && self.oim.is_full() {
            return Some(StallReason::OimFull);
        }
        if let Some(pc) = self.plc.stage(1) {
            let (lo, hi) = self.required_lines(pc.line);
            for input in 0..self.inputs.len() {
                if let Err(line) = self.iim.span_resident(input, lo, hi) {
                    return Some(StallReason::LineMiss { input, line });
                }
            }
        }
        None
    }

    fn pipeline_step(&mut self, bus_busy: bool) -> Result<(), EngineError> {
        let held = self.hold && self.host_in_word < self.plan.words_total();
        let has_work = !self.plc.is_empty() || self.next_issue < self.pixels;
        if held || !has_work {
            return Ok(());
        }

        if let Some(reason) = self.stall_reason() {
            self.counters.cycles_stalled += 1;
            match reason {
                StallReason::OimFull => self.counters.stalls_oim_full += 1,
                StallReason::LineMiss { input, line } => {
                    self.counters.stalls_line_miss += 1;
                    self.fetch.stall_cycles += 1;
                    let avail = self.plan.line_available_cycle(input, line);
                    if avail > self.cycle {
                        self.fetch.stalls_line_untransferred += 1;
                    } else {
                        self.fetch.stalls_line_resupplying += 1;
                        let lag = self.cycle - avail + 1;
                        self.fetch.max_resupply_lag = self.fetch.max_resupply_lag.max(lag);
                    }
                }
            }
            return Ok(());
        }

        // Stage 1: the scan position counters produce the next pixel-cycle,
        // which enters the startpipeline as every other stage moves up.
        let incoming = if self.next_issue < self.pixels {
            let k = self.next_issue;
            self.next_issue += 1;
            let (line, pos) = self.scan_position(k);
            Some(PixelCycle { pixel: k, line, pos, line_start: pos == 0 })
        } else {
            None
        };
        self.plc.advance(incoming);

        // Verify the arbiter invariant over the instructions in flight.
        let mut instrs = [plc::PipelineInstr {
            pixel: 0,
            stage: 0,
            kind: plc::InstrKind::Scan,
            resources: plc::ResourceSet::default(),
        }; plc::PIPELINE_STAGES];
        let mut n = 0;
        for instr in self.plc.in_flight() {
            instrs[n] = instr;
            n += 1;
        }
        arbitrate(&instrs[..n]).map_err(EngineError::ResourceConflict)?;

        // Stage 4: store the latched result into the OIM; the pixel-cycle
        // completes.
        if self.plc.stage(4).is_some() {
            let result = self
                .exec_out
                .take()
                .ok_or(EngineError::ProtocolViolation("store stage without an execute result"))?;
            self.oim.push(result);
            self.plc.complete_stage4();
        }

        // Stage 3: execute the kernel on the neighborhood fetched last cycle.
        if self.plc.stage(3).is_some() {
            let result = if self.inter {
                self.kernel.apply_inter(self.inter_regs.0, self.inter_regs.1)
            } else {
                self.kernel.apply_intra(self.mask, self.matrix.window())
            };
            self.side.apply(result.side);
            self.exec_out = Some(result.out_pixel);
        }

        // Stage 2: LOAD or SHIFT the matrix register from the IIM.
        if let Some(pc) = self.plc.stage(2).copied() {
            self.fetch_neighborhood(&pc);
            self.counters.zbt_read_events += 1;
            self.fetch.fetches += 1;
            // Lines behind every future neighborhood can leave the FIFOs.
            let keep_from = (pc.line as isize + self.lo as isize).max(0) as usize;
            for input in 0..self.inputs.len() {
                self.iim.evict_below(input, keep_from);
            }
        }

        if bus_busy {
            self.counters.overlap_cycles += 1;
        } else {
            self.counters.compute_only_cycles += 1;
        }
        Ok(())
    }

    fn fetch_neighborhood(&mut self, pc: &PixelCycle) {
        if self.inter {
            let a = self.iim.pixel(0, pc.line, pc.pos.min(self.line_len - 1));
            let b = self.iim.pixel(1, pc.line, pc.pos.min(self.line_len - 1));
            self.inter_regs = (a, b);
            return;
        }
        let (line, pos) = (pc.line, pc.pos);
        if pc.line_start {
            let mut cells = [(0usize, 0usize); MAX_LINE_SPAN * MAX_LINE_SPAN];
            let cols = self.matrix.cols();
            for r in 0..self.matrix.rows() {
                for c in 0..cols {
                    cells[r * cols + c] = self.source_cell(line, pos, r, c);
                }
            }
            let iim = &self.iim;
            self.matrix.load(|r, c| {
                let (sl, sp) = cells[r * cols + c];
                iim.pixel(0, sl, sp)
            });
        } else {
            match self.scan {
                ScanOrder::Horizontal => {
                    let c = self.matrix.cols() - 1;
                    let mut cells = [(0usize, 0usize); MAX_LINE_SPAN];
                    for (r, cell) in cells.iter_mut().enumerate().take(self.matrix.rows()) {
                        *cell = self.source_cell(line, pos, r, c);
                    }
                    let iim = &self.iim;
                    self.matrix.shift_columns(|r| {
                        let (sl, sp) = cells[r];
                        iim.pixel(0, sl, sp)
                    });
                }
                ScanOrder::Vertical => {
                    let r = self.matrix.rows() - 1;
                    let mut cells = [(0usize, 0usize); MAX_LINE_SPAN];
                    for (c, cell) in cells.iter_mut().enumerate().take(self.matrix.cols()) {
                        *cell = self.source_cell(line, pos, r, c);
                    }
                    let iim = &self.iim;
                    self.matrix.shift_rows(|c| {
                        let (sl, sp) = cells[c];
                        iim.pixel(0, sl, sp)
                    });
                }
            }
        }
    }

    fn host_in_step(&mut self, sink: &mut dyn TraceSink) {
        if self.host_in_word >= self.plan.words_total() {
            return;
        }
        let wref = self.plan.word_at(self.host_in_word);
        let (x, y) = self.image_xy(wref.line, wref.pos);
        let words = pack_pixel(self.inputs[wref.input].pixel(x, y));
        let (bank_lower, bank_upper) = INPUT_BANKS[wref.input];
        let (bank, word) = if wref.upper { (bank_upper, words.upper) } else { (bank_lower, words.lower) };
        let address = self.input_word_address(wref.line, wref.pos);
        self.zbt.write(bank, address, word);
        self.emit(sink, Unit::HostIn, bank, address, Access::Write);
        self.counters.host_words_in += 1;
        self.host_in_word += 1;
    }

    /// Words of an input line already in bank memory at the start of this
    /// cycle (this cycle's host word excluded: written data is readable from
    /// the next cycle on).
    fn line_words_on_board(&self, input: usize, line: usize) -> u64 {
        let start = self.plan.line_available_cycle(input, line) - 2 * self.line_len as u64;
        self.host_words_before.saturating_sub(start).min(2 * self.line_len as u64)
    }

    fn txu_in_step(&mut self, sink: &mut dyn TraceSink) {
        for i in 0..self.txu_in.len() {
            if self.txu_in[i].line.is_none() {
                if let Some(line) = self.iim.begin_line(self.txu_in[i].input) {
                    let t = &mut self.txu_in[i];
                    t.line = Some(line);
                    t.lower_read = 0;
                    t.upper_read = 0;
                }
            }
            let Some(line) = self.txu_in[i].line else { continue };
            let input = self.txu_in[i].input;
            let on_board = self.line_words_on_board(input, line);
            let (bank_lower, bank_upper) = INPUT_BANKS[input];

            // One word per free bank per cycle: the lower and upper halves
            // stream independently from their banks.
            if self.txu_in[i].lower_read < self.line_len
                && (2 * self.txu_in[i].lower_read as u64) < on_board
                && self.bank_free(bank_lower)
            {
                let pos = self.txu_in[i].lower_read;
                let address = self.input_word_address(line, pos);
                let word = self.zbt.read(bank_lower, address);
                self.emit(sink, Unit::TxuIn, bank_lower, address, Access::Read);
                self.txu_in[i].lower_buf.push_back(word);
                self.txu_in[i].lower_read += 1;
            }
            if self.txu_in[i].upper_read < self.line_len
                && (2 * self.txu_in[i].upper_read as u64 + 1) < on_board
                && self.bank_free(bank_upper)
            {
                let pos = self.txu_in[i].upper_read;
                let address = self.input_word_address(line, pos);
                let word = self.zbt.read(bank_upper, address);
                self.emit(sink, Unit::TxuIn, bank_upper, address, Access::Read);
                self.txu_in[i].upper_buf.push_back(word);
                self.txu_in[i].upper_read += 1;
            }

            while !self.txu_in[i].lower_buf.is_empty() && !self.txu_in[i].upper_buf.is_empty() {
                let lower = self.txu_in[i].lower_buf.pop_front().unwrap();
                let upper = self.txu_in[i].upper_buf.pop_front().unwrap();
                let pixel = unpack_pixel(WordPair { lower, upper })
                    .expect("input bank words were packed by the host");
                if self.iim.store_pixel(input, line, pixel) {
                    self.txu_in[i].line = None;
                }
            }
        }
    }

    fn txu_out_step(&mut self, sink: &mut dyn TraceSink) {
        if self.oim.is_empty() {
            return;
        }
        let pixel_index = (self.txu_out_words / 2) as usize;
        let upper = self.txu_out_words % 2 == 1;
        let (bank, address) = self.layout.map_result_word(pixel_index, upper);
        if !self.bank_free(bank) {
            return;
        }
        let (word, completed_pixel) = self.oim.drain_word().expect("OIM checked non-empty");
        self.zbt.write(bank, address, word);
        self.emit(sink, Unit::TxuOut, bank, address, Access::Write);
        self.txu_out_words += 1;
        if completed_pixel {
            self.counters.zbt_write_events += 1;
        }
    }

    fn host_out_step(&mut self, sink: &mut dyn TraceSink, words_out_total: u64) {
        if !self.host_out.started {
            // Bus-free rule: every input word left the bus in an earlier
            // cycle.
            let input_done = self.host_words_before >= self.plan.words_total();
            let block_a_ready = self.oim.drained_pixels() >= self.layout.result_half() as u64;
            if input_done && block_a_ready {
                self.host_out.started = true;
                self.host_out.start_cycle = self.cycle;
            } else {
                return;
            }
        }
        if self.host_out.words >= words_out_total {
            return;
        }
        // Only read words the drain has already committed to the bank.
        if self.host_out.words >= self.txu_out_words {
            return;
        }
        let pixel_index = (self.host_out.words / 2) as usize;
        let upper = self.host_out.words % 2 == 1;
        let (bank, address) = self.layout.map_result_word(pixel_index, upper);
        if !self.bank_free(bank) {
            return;
        }
        let word = self.zbt.read(bank, address);
        self.emit(sink, Unit::HostOut, bank, address, Access::Read);
        self.host_out.stream.push(word);
        self.host_out.words += 1;
        self.counters.host_words_out += 1;
    }

    /// Rebuilds the result frame from the host readback stream.
    fn assemble_frame(&self) -> Result<Frame, EngineError> {
        let mut out = Frame::new(self.layout.width, self.layout.height);
        for (k, pair) in self.host_out.stream.chunks_exact(2).enumerate() {
            let pixel = unpack_pixel(WordPair { lower: pair[0], upper: pair[1] })
                .map_err(|_| EngineError::ProtocolViolation("malformed result word pair"))?;
            let (line, pos) = self.scan_position(k as u64);
            let (x, y) = self.image_xy(line, pos);
            out.set_pixel(x, y, pixel);
        }
        Ok(out)
    }
}
