//! Colour classes and the quantized YCbCr lookup table.
//!
//! Classification is a single dense table lookup: each 8-bit channel is
//! quantized to 6 bits, giving 2^18 = 262144 cells. The table is built once
//! from an ordered list of [`ColourRule`] range rules and is immutable
//! afterwards.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Bits kept per channel after quantization.
pub const BITS_PER_CHANNEL: u8 = 6;
/// Number of cells in a lookup table.
pub const LUT_ENTRIES: usize = 1 << (3 * BITS_PER_CHANNEL as usize);

const VLUT_MAGIC: &[u8; 4] = b"VLUT";
const VLUT_VERSION: u8 = 1;

/// Semantic colour classes of the playing field domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[repr(u8)]
pub enum ColourClass {
    Unclassified = 0,
    FieldGreen = 1,
    BallOrange = 2,
    GoalYellow = 3,
    LineWhite = 4,
}

impl ColourClass {
    pub const ALL: [ColourClass; 5] = [
        ColourClass::Unclassified,
        ColourClass::FieldGreen,
        ColourClass::BallOrange,
        ColourClass::GoalYellow,
        ColourClass::LineWhite,
    ];

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<ColourClass> {
        ColourClass::ALL.into_iter().find(|c| c.code() == code)
    }
}

/// Inclusive YCbCr range mapped to a class. Rules are applied first-match.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourRule {
    pub class: ColourClass,
    /// Inclusive [min, max] on the luma channel.
    pub luma: [u8; 2],
    /// Inclusive [min, max] on the blue-difference channel.
    pub cb: [u8; 2],
    /// Inclusive [min, max] on the red-difference channel.
    pub cr: [u8; 2],
}

impl ColourRule {
    pub fn new(class: ColourClass, luma: [u8; 2], cb: [u8; 2], cr: [u8; 2]) -> Self {
        Self {
            class,
            luma,
            cb,
            cr,
        }
    }

    fn contains(&self, luma: u8, cb: u8, cr: u8) -> bool {
        self.luma[0] <= luma
            && luma <= self.luma[1]
            && self.cb[0] <= cb
            && cb <= self.cb[1]
            && self.cr[0] <= cr
            && cr <= self.cr[1]
    }
}

/// Rejected rule definitions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule {index} has min > max on channel {channel}")]
    InvertedRange { index: usize, channel: &'static str },
}

/// Errors decoding the on-disk table format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LutFormatError {
    #[error("bad magic bytes, expected `VLUT`")]
    BadMagic,
    #[error("unsupported format version {0}")]
    BadVersion(u8),
    #[error("unsupported bits-per-channel {0}, expected 6")]
    BadBits(u8),
    #[error("table holds {0} entries, expected {LUT_ENTRIES}")]
    BadLength(usize),
    #[error("invalid class code {code} at entry {index}")]
    BadClassCode { index: usize, code: u8 },
}

/// Dense lookup table mapping quantized YCbCr triples to colour classes.
///
/// Lookup is total: every possible pixel value resolves to a class.
#[derive(Clone, PartialEq, Eq)]
pub struct ColourLut {
    entries: Vec<ColourClass>,
}

impl std::fmt::Debug for ColourLut {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ColourLut")
            .field("entries", &self.entries.len())
            .finish()
    }
}

/// Centre value of the quantization bucket containing `v`.
///
/// Buckets are 4 values wide; the centre is the integer `4k + 2`. Rule
/// intervals are tested against this value when the table is built.
pub fn bucket_centre(v: u8) -> u8 {
    (v & !0b11) | 0b10
}

fn lut_index(luma: u8, cb: u8, cr: u8) -> usize {
    ((luma >> 2) as usize) * 4096 + ((cb >> 2) as usize) * 64 + ((cr >> 2) as usize)
}

impl ColourLut {
    /// Build a table from ordered range rules. Every cell takes the class of
    /// the first rule containing the cell's bucket-centre value; unmatched
    /// cells are `Unclassified`.
    pub fn build(rules: &[ColourRule]) -> Result<ColourLut, RuleError> {
        for (index, rule) in rules.iter().enumerate() {
            for (channel, range) in [("luma", rule.luma), ("cb", rule.cb), ("cr", rule.cr)] {
                if range[0] > range[1] {
                    return Err(RuleError::InvertedRange { index, channel });
                }
            }
        }
        let mut entries = vec![ColourClass::Unclassified; LUT_ENTRIES];
        for ly in 0..64u16 {
            let luma = bucket_centre((ly << 2) as u8);
            for bb in 0..64u16 {
                let cb = bucket_centre((bb << 2) as u8);
                for rr in 0..64u16 {
                    let cr = bucket_centre((rr << 2) as u8);
                    if let Some(rule) = rules.iter().find(|r| r.contains(luma, cb, cr)) {
                        entries[(ly as usize) * 4096 + (bb as usize) * 64 + rr as usize] =
                            rule.class;
                    }
                }
            }
        }
        Ok(ColourLut { entries })
    }

    /// Table that maps everything to `Unclassified`.
    pub fn unclassified() -> ColourLut {
        ColourLut {
            entries: vec![ColourClass::Unclassified; LUT_ENTRIES],
        }
    }

    /// Classify one pixel. Pure, constant time.
    #[inline]
    pub fn classify(&self, luma: u8, cb: u8, cr: u8) -> ColourClass {
        self.entries[lut_index(luma, cb, cr)]
    }

    #[inline]
    pub fn classify_triple(&self, pixel: (u8, u8, u8)) -> ColourClass {
        self.classify(pixel.0, pixel.1, pixel.2)
    }

    /// Serialize to the `VLUT` byte format: magic, version, bits-per-channel,
    /// then one class code per cell.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(6 + LUT_ENTRIES);
        out.extend_from_slice(VLUT_MAGIC);
        out.push(VLUT_VERSION);
        out.push(BITS_PER_CHANNEL);
        out.extend(self.entries.iter().map(|c| c.code()));
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<ColourLut, LutFormatError> {
        if bytes.len() < 6 || &bytes[0..4] != VLUT_MAGIC {
            return Err(LutFormatError::BadMagic);
        }
        if bytes[4] != VLUT_VERSION {
            return Err(LutFormatError::BadVersion(bytes[4]));
        }
        if bytes[5] != BITS_PER_CHANNEL {
            return Err(LutFormatError::BadBits(bytes[5]));
        }
        let body = &bytes[6..];
        if body.len() != LUT_ENTRIES {
            return Err(LutFormatError::BadLength(body.len()));
        }
        let mut entries = Vec::with_capacity(LUT_ENTRIES);
        for (index, &code) in body.iter().enumerate() {
            let class = ColourClass::from_code(code)
                .ok_or(LutFormatError::BadClassCode { index, code })?;
            entries.push(class);
        }
        Ok(ColourLut { entries })
    }
}
