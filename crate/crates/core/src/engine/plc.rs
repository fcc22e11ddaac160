//! Pixel level controller: the control path of the process unit.
//!
//! Four cooperating pieces, mirroring the hardware: the control FSM turns
//! scan positions into per-pixel-cycle instruction bundles (SCAN, then LOAD
//! or SHIFT, then EXEC, then STORE); the instructions FSM binds each
//! instruction to the process-unit resources it locks; the startpipeline
//! keeps instructions of up to four different pixel-cycles in flight, one
//! per stage; and the arbiter verifies that no two in-flight instructions
//! hold the same resource in a cycle, stalling the younger pixel-cycle if
//! they ever would.

use core::fmt;

/// Pipeline depth: one instruction per stage per pixel-cycle.
pub const PIPELINE_STAGES: usize = 4;

/// Instruction kinds, by stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum InstrKind {
    /// Stage 1: advance the image scanning position counters.
    Scan,
    /// Stage 2: fill the whole matrix register from the IIM.
    Load,
    /// Stage 3 uses the matrix; stage 2 alternative: insert one new column.
    Shift,
    /// Stage 3: execute the pixel operation on the matrix register.
    Exec,
    /// Stage 4: store the result pixel into the OIM.
    Store,
}

/// Process-unit resources an instruction can lock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResourceSet(u8);

impl ResourceSet {
    pub const SCAN_COUNTERS: ResourceSet = ResourceSet(1);
    pub const IIM_PORT: ResourceSet = ResourceSet(1 << 1);
    pub const MATRIX_REG: ResourceSet = ResourceSet(1 << 2);
    pub const ALU: ResourceSet = ResourceSet(1 << 3);
    pub const OIM_PORT: ResourceSet = ResourceSet(1 << 4);

    pub const fn union(self, other: ResourceSet) -> ResourceSet {
        ResourceSet(self.0 | other.0)
    }

    pub const fn intersects(self, other: ResourceSet) -> bool {
        self.0 & other.0 != 0
    }
}

/// One in-flight instruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineInstr {
    /// Index of the pixel-cycle this instruction belongs to.
    pub pixel: u64,
    /// Stage the instruction occupies, 1-based.
    pub stage: u8,
    pub kind: InstrKind,
    pub resources: ResourceSet,
}

/// A pixel-cycle as issued by the control FSM.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelCycle {
    pub pixel: u64,
    /// Scan line (image row for horizontal scans, column for vertical).
    pub line: usize,
    /// Position within the line.
    pub pos: usize,
    /// Stage 2 performs a LOAD at line starts, a SHIFT elsewhere.
    pub line_start: bool,
}

impl PixelCycle {
    /// The instruction this pixel-cycle executes at the given stage.
    pub fn instr_at(&self, stage: usize) -> PipelineInstr {
        let (kind, resources) = match stage {
            1 => (InstrKind::Scan, ResourceSet::SCAN_COUNTERS),
            2 => {
                let kind = if self.line_start { InstrKind::Load } else { InstrKind::Shift };
                (kind, ResourceSet::IIM_PORT.union(ResourceSet::MATRIX_REG))
            }
            3 => (InstrKind::Exec, ResourceSet::ALU),
            4 => (InstrKind::Store, ResourceSet::OIM_PORT),
            _ => unreachable!("stage out of range"),
        };
        PipelineInstr { pixel: self.pixel, stage: stage as u8, kind, resources }
    }
}

/// Resource conflict between two in-flight instructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub older_pixel: u64,
    pub younger_pixel: u64,
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pixel-cycles {} and {} lock the same resource; {} must stall",
            self.older_pixel, self.younger_pixel, self.younger_pixel
        )
    }
}

/// Checks that a cycle's in-flight instructions lock disjoint resources.
/// On conflict names the younger pixel-cycle as the one to stall.
pub fn arbitrate(instrs: &[PipelineInstr]) -> Result<(), Conflict> {
    let mut held = ResourceSet::default();
    let mut holders: [Option<u64>; PIPELINE_STAGES] = [None; PIPELINE_STAGES];
    for (n, instr) in instrs.iter().enumerate() {
        if held.intersects(instr.resources) {
            // Find the established holder; older pixel-cycle wins.
            let other = holders[..n].iter().flatten().copied().fold(u64::MAX, u64::min);
            let (older, younger) = if other < instr.pixel {
                (other, instr.pixel)
            } else {
                (instr.pixel, other)
            };
            return Err(Conflict { older_pixel: older, younger_pixel: younger });
        }
        held = held.union(instr.resources);
        holders[n] = Some(instr.pixel);
    }
    Ok(())
}

/// The startpipeline: stage slots holding up to four different pixel-cycles.
#[derive(Debug, Clone, Default)]
pub struct Plc {
    /// `stages[i]` occupies stage i+1.
    stages: [Option<PixelCycle>; PIPELINE_STAGES],
    pub retired: u64,
}

impl Plc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stage(&self, stage: usize) -> Option<&PixelCycle> {
        self.stages[stage - 1].as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.iter().all(Option::is_none)
    }

    /// Instructions in flight this cycle, oldest first.
    pub fn in_flight(&self) -> impl Iterator<Item = PipelineInstr> + '_ {
        (1..=PIPELINE_STAGES)
            .rev()
            .filter_map(move |s| self.stages[s - 1].map(|pc| pc.instr_at(s)))
    }

    /// Advances every stage by one; `incoming` enters stage 1. Returns the
    /// pixel-cycle pushed out of stage 4, if its store never completed.
    pub fn advance(&mut self, incoming: Option<PixelCycle>) -> Option<PixelCycle> {
        let pushed_out = self.stages[PIPELINE_STAGES - 1].take();
        for i in (1..PIPELINE_STAGES).rev() {
            self.stages[i] = self.stages[i - 1].take();
        }
        self.stages[0] = incoming;
        pushed_out
    }

    /// Marks the stage-4 occupant's store as done; the pixel-cycle retires.
    pub fn complete_stage4(&mut self) {
        if self.stages[PIPELINE_STAGES - 1].take().is_some() {
            self.retired += 1;
        }
    }
}
