//! Run configuration: declarative file plus flag overrides.

use std::path::{Path, PathBuf};

use addrengine_core::engine::timing::TimingConfig;
use addrengine_core::engine::AddressingMode;
use addrengine_core::kernel::FirFilter;
use addrengine_core::{Channel, ChannelSet, Kernel, KernelOp, NeighborhoodMask, ScanOrder, SegmentCriteria};
use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Raw configuration file contents. Every field is optional; command-line
/// flags override whatever the file sets.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub mode: Option<String>,
    pub mask: Option<String>,
    pub kernel: Option<String>,
    pub scan: Option<String>,
    pub engine: Option<bool>,
    pub channels: Option<String>,
    pub input: Option<PathBuf>,
    pub input2: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub size: Option<String>,
    pub worst_case: Option<bool>,
    pub mask_offsets: Option<Vec<(i8, i8)>>,
    pub fir: Option<FirSection>,
    pub homogeneity: Option<HomogeneitySection>,
    pub segment: Option<SegmentSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FirSection {
    pub rows: usize,
    pub cols: usize,
    pub weights: Vec<i32>,
    pub divisor: i32,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneitySection {
    pub threshold: u8,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSection {
    pub seeds: Vec<(usize, usize)>,
    pub channel: Option<String>,
    pub threshold: u16,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Fully resolved run configuration, echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct EffectiveConfig {
    pub mode: String,
    pub mask: String,
    pub kernel: String,
    pub scan: String,
    pub engine: bool,
    pub channels: String,
    pub input: Option<PathBuf>,
    pub input2: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub size: Option<String>,
    pub worst_case: bool,
}

/// Everything a run needs, decoded and validated.
#[derive(Debug)]
pub struct ResolvedRun {
    pub mode: AddressingMode,
    pub mask: NeighborhoodMask,
    pub kernel: Kernel,
    pub scan: ScanOrder,
    pub engine: bool,
    pub segment: Option<SegmentCriteria>,
    pub worst_case: bool,
    pub timing: TimingConfig,
    pub effective: EffectiveConfig,
}

pub fn parse_mode(s: &str) -> Result<AddressingMode> {
    match s {
        "inter" => Ok(AddressingMode::Inter),
        "intra" => Ok(AddressingMode::Intra),
        "segment" => Ok(AddressingMode::Segment),
        _ => bail!("unknown mode '{s}' (inter|intra|segment)"),
    }
}

pub fn parse_scan(s: &str) -> Result<ScanOrder> {
    match s {
        "horizontal" => Ok(ScanOrder::Horizontal),
        "vertical" => Ok(ScanOrder::Vertical),
        _ => bail!("unknown scan '{s}' (horizontal|vertical)"),
    }
}

pub fn parse_channel(s: &str) -> Result<Channel> {
    match s {
        "y" => Ok(Channel::Y),
        "u" => Ok(Channel::U),
        "v" => Ok(Channel::V),
        "alfa" => Ok(Channel::Alfa),
        "aux" => Ok(Channel::Aux),
        _ => bail!("unknown channel '{s}' (y|u|v|alfa|aux)"),
    }
}

pub fn parse_channels(s: &str) -> Result<ChannelSet> {
    match s {
        "yuv" => Ok(ChannelSet::YUV),
        "all" => Ok(ChannelSet::ALL),
        list => list
            .split(',')
            .map(|c| parse_channel(c.trim()))
            .collect::<Result<Vec<_>>>()
            .map(|cs| cs.into_iter().collect()),
    }
}

/// Parses `qcif`, `cif` or `WxH`.
pub fn parse_size(s: &str) -> Result<(usize, usize)> {
    match s {
        "qcif" => Ok((176, 144)),
        "cif" => Ok((352, 288)),
        _ => {
            let (w, h) = s
                .split_once(['x', 'X'])
                .ok_or_else(|| anyhow!("size must be qcif, cif or WxH, got '{s}'"))?;
            Ok((w.trim().parse().context("width")?, h.trim().parse().context("height")?))
        }
    }
}

pub fn parse_mask(name: &str, custom: Option<&Vec<(i8, i8)>>) -> Result<NeighborhoodMask> {
    match name {
        "con0" | "con_0" => Ok(NeighborhoodMask::con_0()),
        "con8" | "con_8" => Ok(NeighborhoodMask::con_8()),
        "custom" => {
            let offsets = custom.ok_or_else(|| anyhow!("mask 'custom' needs mask_offsets in the config file"))?;
            NeighborhoodMask::new(offsets.clone()).map_err(|e| anyhow!("{e}"))
        }
        _ => bail!("unknown mask '{name}' (con0|con8|custom)"),
    }
}

pub fn parse_kernel(name: &str, channels: ChannelSet, file: &ConfigFile) -> Result<Kernel> {
    let kernel = match name {
        "identity" => Kernel::on_channels(KernelOp::Identity, ChannelSet::ALL),
        "diff" => Kernel::on_channels(KernelOp::Diff, channels),
        "sad" | "sad-accumulate" => Kernel::new(KernelOp::SadAccumulate, channels, ChannelSet::EMPTY),
        "morph-gradient" | "gradient" => Kernel::on_channels(KernelOp::MorphGradient, channels),
        "histogram" => Kernel::new(KernelOp::Histogram, ChannelSet::ALL, ChannelSet::EMPTY),
        "homogeneity" => {
            let threshold = file.homogeneity.as_ref().map(|h| h.threshold).unwrap_or(8);
            Kernel::on_channels(KernelOp::Homogeneity { threshold }, channels)
        }
        "fir" => {
            let section = file
                .fir
                .as_ref()
                .ok_or_else(|| anyhow!("kernel 'fir' needs a [fir] section in the config file"))?;
            let fir = FirFilter::new(section.rows, section.cols, section.weights.clone(), section.divisor)
                .map_err(|e| anyhow!("{e}"))?;
            Kernel::on_channels(KernelOp::Fir(fir), channels)
        }
        _ => bail!("unknown kernel '{name}'"),
    };
    Ok(kernel)
}

/// Merges file values and flag overrides into a validated run description.
#[allow(clippy::too_many_arguments)]
pub fn resolve(
    file: ConfigFile,
    mode: Option<String>,
    mask: Option<String>,
    kernel: Option<String>,
    scan: Option<String>,
    engine: Option<bool>,
    channels: Option<String>,
    input: Option<PathBuf>,
    input2: Option<PathBuf>,
    output: Option<PathBuf>,
    size: Option<String>,
    worst_case: bool,
) -> Result<ResolvedRun> {
    // Flags win over the file.
    let mode_s = mode.or(file.mode.clone()).unwrap_or_else(|| "intra".into());
    let mask_s = mask.or(file.mask.clone()).unwrap_or_else(|| "con0".into());
    let kernel_s = kernel.or(file.kernel.clone()).unwrap_or_else(|| "identity".into());
    let scan_s = scan.or(file.scan.clone()).unwrap_or_else(|| "horizontal".into());
    let engine_on = engine.or(file.engine).unwrap_or(true);
    let channels_s = channels.or(file.channels.clone()).unwrap_or_else(|| "y".into());
    let input = input.or(file.input.clone());
    let input2 = input2.or(file.input2.clone());
    let output = output.or(file.output.clone());
    let size = size.or(file.size.clone());
    let worst_case = worst_case || file.worst_case.unwrap_or(false);

    let mode_v = parse_mode(&mode_s)?;
    let mask_v = parse_mask(&mask_s, file.mask_offsets.as_ref())?;
    let scan_v = parse_scan(&scan_s)?;
    let channel_set = parse_channels(&channels_s)?;
    let kernel_v = parse_kernel(&kernel_s, channel_set, &file)?;

    let segment = match (&mode_v, &file.segment) {
        (AddressingMode::Segment, Some(section)) => Some(SegmentCriteria {
            channel: parse_channel(section.channel.as_deref().unwrap_or("y"))?,
            threshold: section.threshold,
            seeds: section.seeds.clone(),
        }),
        (AddressingMode::Segment, None) => {
            bail!("segment mode needs a [segment] section in the config file")
        }
        _ => None,
    };

    Ok(ResolvedRun {
        mode: mode_v,
        mask: mask_v,
        kernel: kernel_v,
        scan: scan_v,
        engine: engine_on,
        segment,
        worst_case,
        timing: TimingConfig::default(),
        effective: EffectiveConfig {
            mode: mode_s,
            mask: mask_s,
            kernel: kernel_s,
            scan: scan_s,
            engine: engine_on,
            channels: channels_s,
            input,
            input2,
            output,
            size,
            worst_case,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        assert_eq!(parse_size("qcif").unwrap(), (176, 144));
        assert_eq!(parse_size("cif").unwrap(), (352, 288));
        assert_eq!(parse_size("160x160").unwrap(), (160, 160));
        assert!(parse_size("bogus").is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = ConfigFile { mode: Some("intra".into()), mask: Some("con0".into()), ..Default::default() };
        let run = resolve(
            file,
            Some("inter".into()),
            None,
            Some("diff".into()),
            None,
            None,
            None,
            None,
            None,
            None,
            None,
            false,
        )
        .unwrap();
        assert_eq!(run.mode, AddressingMode::Inter);
        assert_eq!(run.effective.mask, "con0");
    }

    #[test]
    fn segment_mode_requires_section() {
        let file = ConfigFile::default();
        let err = resolve(
            file,
            Some("segment".into()),
            None,
            None,
            None,
            None,
            None,
            None,
            None,
            None,
            None,
            false,
        )
        .unwrap_err();
        assert!(err.to_string().contains("[segment]"));
    }

    #[test]
    fn config_file_parses_toml() {
        let text = r#"
mode = "segment"
mask = "con8"
kernel = "histogram"

[segment]
seeds = [[0, 0], [3, 4]]
threshold = 12
"#;
        let file: ConfigFile = toml::from_str(text).unwrap();
        assert_eq!(file.segment.as_ref().unwrap().seeds.len(), 2);
        assert_eq!(file.segment.as_ref().unwrap().threshold, 12);
    }
}
