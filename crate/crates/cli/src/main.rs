//! Command-line harness: scans, engine simulations, and the access-count
//! and timing reproductions.

use std::path::PathBuf;
use std::process::ExitCode;

use addrengine_cli::config::{self, ConfigFile, ResolvedRun};
use addrengine_cli::formats;
use addrengine_cli::report::{self, comparison_report, RunReport, TimingRunReport};
use addrengine_cli::trace_out::JsonLinesSink;
use addrengine_core::engine::timing::{timing_report, RunShape};
use addrengine_core::engine::trace::TraceSink;
use addrengine_core::engine::{run_engine_traced, AddressingMode, EngineOptions, RunOutput};
use addrengine_core::{inter_scan, intra_scan, segment_scan, Frame, ScanOrder};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "addrengine", version, about = "Pixel addressing scans and AddressEngine coprocessor simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scan over input frames, with the reference library or the
    /// cycle-accurate engine simulator.
    Run(RunArgs),
    /// Memory access comparison: software baseline vs engine, with both
    /// saving ratios. Optionally confirms the hardware column by simulation.
    Table2(Table2Args),
    /// Transfer/compute overlap timing report for a run shape.
    Timing(TimingArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Declarative run configuration (TOML); flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// inter | intra | segment
    #[arg(long)]
    mode: Option<String>,
    /// con0 | con8 | custom
    #[arg(long)]
    mask: Option<String>,
    /// identity | diff | sad | morph-gradient | fir | histogram | homogeneity
    #[arg(long)]
    kernel: Option<String>,
    /// horizontal | vertical
    #[arg(long)]
    scan: Option<String>,
    /// Simulate the coprocessor (true) or run the reference library (false).
    #[arg(long)]
    engine: Option<bool>,
    /// Channel set the kernel computes on: y | yuv | all | comma list
    #[arg(long)]
    channels: Option<String>,
    /// First input frame (.pgm or raw-planar).
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Second input frame (inter mode).
    #[arg(long = "in2")]
    input2: Option<PathBuf>,
    /// Output frame path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Machine-readable report path (JSON).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Bank access trace path (JSON lines); engine runs only.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Dimensions for raw-planar inputs: qcif | cif | WxH
    #[arg(long)]
    size: Option<String>,
    /// Hold processing until every input word is transferred.
    #[arg(long)]
    worst_case: bool,
}

#[derive(Args)]
struct Table2Args {
    /// qcif | cif | WxH
    #[arg(long, default_value = "cif")]
    dims: String,
    /// Confirm the hardware column by running the simulator per row.
    #[arg(long)]
    simulate: bool,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct TimingArgs {
    /// inter | intra
    #[arg(long, default_value = "intra")]
    mode: String,
    /// con0 | con8
    #[arg(long, default_value = "con0")]
    mask: String,
    /// horizontal | vertical
    #[arg(long, default_value = "horizontal")]
    scan: String,
    /// qcif | cif | WxH
    #[arg(long, default_value = "cif")]
    size: String,
    /// Hold processing until every input word is transferred.
    #[arg(long)]
    worst_case: bool,
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Table2(args) => cmd_table2(args),
        Command::Timing(args) => cmd_timing(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_inputs(run: &ResolvedRun) -> Result<Vec<Frame>> {
    let declared = run.effective.size.as_deref().map(config::parse_size).transpose()?;
    let input = run
        .effective
        .input
        .as_ref()
        .ok_or_else(|| anyhow!("no input frame (--in or 'input' in the config)"))?;
    let mut frames =
        vec![formats::load_frame(input, declared).with_context(|| format!("loading {}", input.display()))?];
    if run.mode == AddressingMode::Inter {
        let second = run
            .effective
            .input2
            .as_ref()
            .ok_or_else(|| anyhow!("inter mode needs a second input (--in2)"))?;
        frames.push(
            formats::load_frame(second, declared).with_context(|| format!("loading {}", second.display()))?,
        );
    }
    Ok(frames)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode> {
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let run = config::resolve(
        file,
        args.mode,
        args.mask,
        args.kernel,
        args.scan,
        args.engine,
        args.channels,
        args.input,
        args.input2,
        args.out,
        args.size,
        args.worst_case,
    )?;
    let inputs = load_inputs(&run)?;

    let mut report = RunReport::new(run.effective.clone());
    let out_frame;

    if run.engine {
        let options = EngineOptions {
            timing: run.timing,
            hold_until_input_complete: run.worst_case,
        };
        let engine_out = run_with_optional_trace(&run, &inputs, &options, args.trace.as_deref())?;
        print_engine_summary(&engine_out);
        report = report.with_engine_output(&engine_out);
        out_frame = engine_out.frame;
    } else {
        match run.mode {
            AddressingMode::Intra => {
                let out = intra_scan(&inputs[0], &run.mask, run.scan, &run.kernel)
                    .map_err(|e| anyhow!("{e}"))?;
                report.set_side(&out.side);
                out_frame = out.frame;
            }
            AddressingMode::Inter => {
                let out = inter_scan(&inputs[0], &inputs[1], &run.kernel).map_err(|e| anyhow!("{e}"))?;
                report.set_side(&out.side);
                out_frame = out.frame;
            }
            AddressingMode::Segment => {
                let crit = run.segment.as_ref().expect("resolve() checked the section");
                let out = segment_scan(&inputs[0], crit, &run.mask, &run.kernel)
                    .map_err(|e| anyhow!("{e}"))?;
                println!("segment scan visited {} pixel(s)", out.visit_order.len());
                report.visited = Some(out.visit_order.len());
                report.set_side(&out.side);
                out_frame = out.frame;
            }
        }
        println!("reference {} scan complete ({}x{})", run.mode.name(), out_frame.width(), out_frame.height());
    }

    if let Some(path) = &run.effective.output {
        formats::save_frame(&out_frame, path).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.report {
        report::write_json(&report, path)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run_with_optional_trace(
    run: &ResolvedRun,
    inputs: &[Frame],
    options: &EngineOptions,
    trace_path: Option<&std::path::Path>,
) -> Result<RunOutput> {
    let execute = |sink: &mut dyn TraceSink| {
        run_engine_traced(run.mode, &run.mask, run.scan, &run.kernel, inputs, options, sink)
            .map_err(|e| anyhow!("{e}"))
    };
    match trace_path {
        Some(path) => {
            let mut sink = JsonLinesSink::create(path)?;
            let out = execute(&mut sink)?;
            let records = sink.finish()?;
            println!("trace: {records} records -> {}", path.display());
            Ok(out)
        }
        None => {
            struct Discard;
            impl TraceSink for Discard {
                fn record(&mut self, _: addrengine_core::engine::trace::AccessEvent) {}
            }
            execute(&mut Discard)
        }
    }
}

fn print_engine_summary(out: &RunOutput) {
    let c = &out.counters;
    println!("engine run: {}x{} frame", out.frame.width(), out.frame.height());
    println!("  cycles              {:>12}", c.cycles_total);
    println!("  stalled             {:>12}  (line-miss {}, oim-full {})", c.cycles_stalled, c.stalls_line_miss, c.stalls_oim_full);
    println!("  access events       {:>12}  ({} reads + {} writes)", c.access_events(), c.zbt_read_events, c.zbt_write_events);
    println!("  bank words          {:>12}  read, {:>12} written", c.zbt_words_read, c.zbt_words_written);
    println!("  host words          {:>12}  in,   {:>12} out", c.host_words_in, c.host_words_out);
    println!("  bank violations     {:>12}", out.bank_violations);
    println!("  non-overlap ratio   {:>12.4}", out.timing.non_overlap_ratio);
}

/// Deterministic fill so simulated confirmation runs have non-trivial data.
fn pattern_frame(width: usize, height: usize, salt: u64) -> Frame {
    let mut f = Frame::new(width, height);
    let mut state = salt | 1;
    for p in f.pixels_mut() {
        // xorshift64
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        *p = addrengine_core::Pixel::new(
            state as u8,
            (state >> 8) as u8,
            (state >> 16) as u8,
            (state >> 24) as u16,
            (state >> 40) as u16,
        );
    }
    f
}

fn cmd_table2(args: Table2Args) -> Result<ExitCode> {
    let (width, height) = config::parse_size(&args.dims)?;
    let mut cmp = comparison_report(width, height);

    if args.simulate {
        use addrengine_core::baseline::{comparison_rows, CountMode};
        use addrengine_core::kernel::{FirFilter, Kernel, KernelOp};
        for (i, row) in comparison_rows().iter().enumerate() {
            let kernel = match (row.mode, row.mask.offsets().len(), row.channels) {
                (CountMode::Inter, _, ch) => Kernel::on_channels(KernelOp::Diff, ch),
                (CountMode::Intra, 1, ch) => {
                    Kernel::on_channels(KernelOp::Fir(FirFilter::delta(1, 1, 0, 0)), ch)
                }
                (CountMode::Intra, _, ch) => Kernel::on_channels(KernelOp::MorphGradient, ch),
            };
            let mode = match row.mode {
                CountMode::Inter => AddressingMode::Inter,
                CountMode::Intra => AddressingMode::Intra,
            };
            let mut inputs = vec![pattern_frame(width, height, 0x9E3779B9 + i as u64)];
            if mode == AddressingMode::Inter {
                inputs.push(pattern_frame(width, height, 0x6A09E667 + i as u64));
            }
            let out = addrengine_core::engine::run_engine(
                mode,
                &row.mask,
                ScanOrder::Horizontal,
                &kernel,
                &inputs,
                &EngineOptions::default(),
            )
            .map_err(|e| anyhow!("{e}"))?;
            let measured = out.counters.access_events();
            cmp.rows[i].measured = Some(measured);
            cmp.rows[i].matches_reference &= measured == cmp.rows[i].hardware;
            cmp.all_match &= cmp.rows[i].matches_reference;
        }
    }

    println!("Memory accesses, {}x{} ({} pixels)", width, height, width * height);
    println!(
        "{:<22} {:>12} {:>12} {:>8} {:>8} {:>12}",
        "Addressing", "software", "hardware", "vs sw", "vs hw", "measured"
    );
    for row in &cmp.rows {
        println!(
            "{:<22} {:>12} {:>12} {:>7}% {:>7}% {:>12}",
            row.label,
            row.software,
            row.hardware,
            row.saving_vs_software_pct,
            row.saving_vs_hardware_pct,
            row.measured.map(|m| m.to_string()).unwrap_or_else(|| "-".into()),
        );
    }

    if let Some(path) = &args.report {
        report::write_json(&cmp, path)?;
    }
    if !cmp.all_match {
        eprintln!("error: computed counts do not match the reference convention");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_timing(args: TimingArgs) -> Result<ExitCode> {
    let mode = config::parse_mode(&args.mode)?;
    if mode == AddressingMode::Segment {
        bail!("the timing model covers inter and intra runs");
    }
    let mask = config::parse_mask(&args.mask, None)?;
    let scan = config::parse_scan(&args.scan)?;
    let (width, height) = config::parse_size(&args.size)?;

    let line_reach = if mode == AddressingMode::Inter {
        0
    } else {
        match scan {
            ScanOrder::Horizontal => mask.max_dy().max(0) as usize,
            ScanOrder::Vertical => mask.max_dx().max(0) as usize,
        }
    };
    let shape = RunShape {
        width,
        height,
        scan,
        inputs: mode.input_count(),
        line_reach,
        hold_until_input_complete: args.worst_case,
    };
    let cfg = addrengine_core::engine::timing::TimingConfig::default();
    let timing = timing_report(&cfg, &shape).map_err(|e| anyhow!("{e}"))?;

    let ms = |cycles: u64| cycles as f64 * 1e3 / cfg.clock_hz as f64;
    println!("Timing model: {} {}x{}, {} input image(s), 66 MHz", mode.name(), width, height, shape.inputs);
    println!("  input transfer      {:>12} cycles  ({:.3} ms)", timing.input_transfer_cycles, ms(timing.input_transfer_cycles));
    println!("  output transfer     {:>12} cycles  ({:.3} ms)", timing.output_transfer_cycles, ms(timing.output_transfer_cycles));
    println!("  compute-only gap    {:>12} cycles  ({:.3} ms)", timing.compute_only_cycles, ms(timing.compute_only_cycles));
    println!("  processing tail     {:>12} cycles", timing.processing_tail_cycles);
    println!("  total               {:>12} cycles  ({:.3} ms)", timing.total_cycles, ms(timing.total_cycles));
    println!("  overlap fraction    {:>12.4}", timing.overlap_fraction);
    println!("  non-overlap ratio   {:>12.4}", timing.non_overlap_ratio);

    if let Some(path) = &args.report {
        let run_report = TimingRunReport {
            config: addrengine_cli::config::EffectiveConfig {
                mode: args.mode.clone(),
                mask: args.mask.clone(),
                kernel: String::new(),
                scan: args.scan.clone(),
                engine: false,
                channels: String::new(),
                input: None,
                input2: None,
                output: None,
                size: Some(args.size.clone()),
                worst_case: args.worst_case,
            },
            timing,
        };
        report::write_json(&run_report, path)?;
    }
    Ok(ExitCode::SUCCESS)
}
