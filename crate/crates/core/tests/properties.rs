//! Property tests for the packing bijection and scan invariants.

use addrengine_core::engine::{run_engine, AddressingMode, EngineOptions};
use addrengine_core::{
    intra_scan, pack_pixel, unpack_pixel, ChannelSet, Frame, Kernel, KernelOp, NeighborhoodMask,
    Pixel, ScanOrder, WordPair,
};
use proptest::prelude::*;

fn arb_pixel() -> impl Strategy<Value = Pixel> {
    (any::<u8>(), any::<u8>(), any::<u8>(), any::<u16>(), any::<u16>())
        .prop_map(|(y, u, v, alfa, aux)| Pixel::new(y, u, v, alfa, aux))
}

fn arb_frame(width: usize, height: usize) -> impl Strategy<Value = Frame> {
    proptest::collection::vec(arb_pixel(), width * height)
        .prop_map(move |data| Frame::from_pixels(width, height, data).unwrap())
}

proptest! {
    #[test]
    fn pack_unpack_round_trips(p in arb_pixel()) {
        prop_assert_eq!(unpack_pixel(pack_pixel(p)).unwrap(), p);
    }

    #[test]
    fn packed_lower_word_has_zero_padding(p in arb_pixel()) {
        prop_assert_eq!(pack_pixel(p).lower & 0xFF00_0000, 0);
    }

    #[test]
    fn words_with_padding_bits_never_unpack(lower in 0u32.., upper in 0u32..) {
        let w = WordPair { lower, upper };
        let has_padding = lower & 0xFF00_0000 != 0;
        prop_assert_eq!(unpack_pixel(w).is_err(), has_padding);
    }

    #[test]
    fn intra_output_ignores_scan_order(f in arb_frame(10, 7)) {
        let mask = NeighborhoodMask::con_8();
        let k = Kernel::on_channels(KernelOp::MorphGradient, ChannelSet::YUV);
        let h = intra_scan(&f, &mask, ScanOrder::Horizontal, &k).unwrap();
        let v = intra_scan(&f, &mask, ScanOrder::Vertical, &k).unwrap();
        prop_assert_eq!(h.frame, v.frame);
    }

    #[test]
    fn morph_gradient_is_nonnegative_and_zero_only_on_constant_neighborhoods(
        f in arb_frame(8, 8)
    ) {
        let mask = NeighborhoodMask::con_8();
        let k = Kernel::on_channels(KernelOp::MorphGradient, ChannelSet::Y);
        let out = intra_scan(&f, &mask, ScanOrder::Horizontal, &k).unwrap().frame;
        for y in 0..8usize {
            for x in 0..8usize {
                let mut lo = u8::MAX;
                let mut hi = 0u8;
                for &(dy, dx) in mask.offsets() {
                    let sx = (x as isize + dx as isize).clamp(0, 7) as usize;
                    let sy = (y as isize + dy as isize).clamp(0, 7) as usize;
                    lo = lo.min(f.pixel(sx, sy).y);
                    hi = hi.max(f.pixel(sx, sy).y);
                }
                let constant = lo == hi;
                prop_assert_eq!(out.pixel(x, y).y == 0, constant);
            }
        }
    }

    #[test]
    fn single_channel_kernels_leave_other_channels_bit_identical(f in arb_frame(8, 8)) {
        let mask = NeighborhoodMask::con_8();
        let k = Kernel::on_channels(KernelOp::MorphGradient, ChannelSet::Y);
        let out = intra_scan(&f, &mask, ScanOrder::Horizontal, &k).unwrap().frame;
        for (src, got) in f.pixels().iter().zip(out.pixels()) {
            prop_assert_eq!(src.u, got.u);
            prop_assert_eq!(src.v, got.v);
            prop_assert_eq!(src.alfa, got.alfa);
            prop_assert_eq!(src.aux, got.aux);
        }
    }
}

proptest! {
    // Engine runs are slower; keep the case count modest.
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn engine_matches_reference_on_arbitrary_frames(f in arb_frame(16, 16)) {
        let mask = NeighborhoodMask::con_8();
        let k = Kernel::on_channels(KernelOp::MorphGradient, ChannelSet::Y);
        let reference = intra_scan(&f, &mask, ScanOrder::Horizontal, &k).unwrap();
        let engine = run_engine(
            AddressingMode::Intra,
            &mask,
            ScanOrder::Horizontal,
            &k,
            &[f],
            &EngineOptions::default(),
        )
        .unwrap();
        prop_assert_eq!(engine.frame, reference.frame);
        prop_assert_eq!(engine.bank_violations, 0);
    }
}
