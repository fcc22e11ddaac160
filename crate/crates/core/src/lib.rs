//! Pixel addressing library and a deterministic, cycle-accurate simulator of
//! the AddressEngine coprocessor.
//!
//! The library half ([`scan`]) implements the four pixel addressing schemes
//! (inter, intra, segment, segment-indexed) in plain software and serves as
//! the bit-exact oracle for the engine half ([`engine`]), which models the
//! coprocessor's ZBT banks, strip transfers, intermediate line memories, and
//! four-stage process unit, producing identical frames plus access and cycle
//! counters. [`baseline`] holds the analytic memory-access model the savings
//! comparison is measured against.
//!
//! ```
//! use addrengine_core::engine::{run_engine, AddressingMode, EngineOptions};
//! use addrengine_core::{
//!     intra_scan, ChannelSet, Frame, Kernel, KernelOp, NeighborhoodMask, Pixel, ScanOrder,
//! };
//!
//! let mut frame = Frame::new(32, 32);
//! for y in 0..32 {
//!     for x in 0..32 {
//!         frame.set_pixel(x, y, Pixel::gray(((x * y) % 251) as u8));
//!     }
//! }
//! let mask = NeighborhoodMask::con_8();
//! let kernel = Kernel::on_channels(KernelOp::MorphGradient, ChannelSet::Y);
//!
//! let reference = intra_scan(&frame, &mask, ScanOrder::Horizontal, &kernel).unwrap();
//! let simulated = run_engine(
//!     AddressingMode::Intra,
//!     &mask,
//!     ScanOrder::Horizontal,
//!     &kernel,
//!     core::slice::from_ref(&frame),
//!     &EngineOptions::default(),
//! )
//! .unwrap();
//!
//! assert_eq!(simulated.frame, reference.frame);
//! assert_eq!(simulated.counters.access_events(), 2 * 32 * 32);
//! ```

#![cfg_attr(all(not(feature = "std"), not(test)), no_std)]

extern crate alloc;

pub mod baseline;
pub mod engine;
pub mod frame;
pub mod kernel;
pub mod mask;
pub mod pixel;
pub mod scan;
pub mod table;

pub use frame::{Frame, FrameError, FrameTag};
pub use kernel::{Channel, ChannelSet, Kernel, KernelError, KernelOp};
pub use mask::{MaskError, NeighborhoodMask, ScanOrder};
pub use pixel::{pack_pixel, unpack_pixel, Pixel, PixelError, WordPair};
pub use scan::{inter_scan, intra_scan, segment_scan, ScanError, SegmentCriteria};
pub use table::{IndexedTable, TableRecord};
