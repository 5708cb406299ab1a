//! Netpbm greyscale and colour images: P2/P5 (PGM) and P3/P6 (PPM).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{build_space, DescribedSpace, FeatureVector, Raster};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PnmFormat {
    Pgm,
    Ppm,
}

impl PnmFormat {
    pub fn channels(self) -> usize {
        match self {
            PnmFormat::Pgm => 1,
            PnmFormat::Ppm => 3,
        }
    }

    fn label(self) -> &'static str {
        match self {
            PnmFormat::Pgm => "PGM",
            PnmFormat::Ppm => "PPM",
        }
    }
}

/// A decoded image: `channels` samples per pixel, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PnmImage {
    pub format: PnmFormat,
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

impl PnmImage {
    pub fn pixel(&self, x: usize, y: usize) -> &[u16] {
        let c = self.format.channels();
        let at = (y * self.width + x) * c;
        &self.samples[at..at + c]
    }
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} out of range")))
    }
}

pub fn decode_pnm(bytes: &[u8]) -> Result<PnmImage> {
    let magic = bytes.get(..2).unwrap_or(bytes);
    let (format, binary) = match magic {
        b"P2" => (PnmFormat::Pgm, false),
        b"P5" => (PnmFormat::Pgm, true),
        b"P3" => (PnmFormat::Ppm, false),
        b"P6" => (PnmFormat::Ppm, true),
        other => return Err(Error::UnsupportedMagic(String::from_utf8_lossy(other).into_owned())),
    };
    let mut h = Header { bytes, pos: 2 };
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maximum value")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader("zero image dimension".into()));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(Error::MalformedHeader(format!("maximum value {maxval} not in 1..=65535")));
    }
    let expected = width
        .checked_mul(height)
        .and_then(|p| p.checked_mul(format.channels()))
        .ok_or_else(|| Error::MalformedHeader("image too large".into()))?;

    let samples: Vec<u16> = if binary {
        // exactly one whitespace byte separates the header from the raster
        if !bytes.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(Error::MalformedHeader("missing whitespace before pixel data".into()));
        }
        let data = &bytes[h.pos + 1..];
        if maxval < 256 {
            data.iter().take(expected).map(|&b| b as u16).collect()
        } else {
            data.chunks_exact(2)
                .take(expected)
                .map(|c| u16::from_be_bytes([c[0], c[1]]))
                .collect()
        }
    } else {
        let mut out = Vec::with_capacity(expected);
        while out.len() < expected {
            h.skip_space_and_comments();
            if h.pos >= bytes.len() {
                break;
            }
            let v = h.number("sample")?;
            out.push(v);
        }
        out.into_iter()
            .map(|v| u16::try_from(v).ok().filter(|&v| v as usize <= maxval))
            .collect::<Option<Vec<u16>>>()
            .ok_or_else(|| Error::MalformedHeader(format!("sample exceeds maximum value {maxval}")))?
    };
    if samples.len() < expected {
        return Err(Error::TruncatedPixels {
            expected,
            found: samples.len(),
        });
    }
    if samples.iter().any(|&v| v as usize > maxval) {
        return Err(Error::MalformedHeader(format!("sample exceeds maximum value {maxval}")));
    }
    Ok(PnmImage {
        format,
        width,
        height,
        maxval: maxval as u16,
        samples,
    })
}

pub fn read_pnm(path: impl AsRef<Path>) -> Result<PnmImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    decode_pnm(&bytes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeKind {
    /// One intensity feature; PGM only.
    Grey,
    /// Red, green and blue; PPM only.
    Rgb,
}

/// How pixels become feature vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSpec {
    pub kind: ProbeKind,
    /// Quantization step: a channel value v becomes `floor(v / q)`.
    pub quantize: u32,
    /// Append raw `x, y` pixel coordinates after the channel features.
    pub include_position: bool,
}

impl ProbeSpec {
    pub fn grey(quantize: u32) -> Self {
        ProbeSpec {
            kind: ProbeKind::Grey,
            quantize,
            include_position: false,
        }
    }

    pub fn rgb(quantize: u32) -> Self {
        ProbeSpec {
            kind: ProbeKind::Rgb,
            quantize,
            include_position: false,
        }
    }

    pub fn with_position(mut self) -> Self {
        self.include_position = true;
        self
    }

    pub fn arity(&self) -> usize {
        let base = match self.kind {
            ProbeKind::Grey => 1,
            ProbeKind::Rgb => 3,
        };
        base + if self.include_position { 2 } else { 0 }
    }

    fn validate(&self, format: PnmFormat) -> Result<()> {
        if self.quantize == 0 {
            return Err(Error::InvalidProbe("quantization step must be at least 1".into()));
        }
        match (self.kind, format) {
            (ProbeKind::Grey, PnmFormat::Pgm) | (ProbeKind::Rgb, PnmFormat::Ppm) => Ok(()),
            (ProbeKind::Grey, f) => Err(Error::ProbeMismatch {
                probe: "grey",
                format: f.label(),
            }),
            (ProbeKind::Rgb, f) => Err(Error::ProbeMismatch {
                probe: "rgb",
                format: f.label(),
            }),
        }
    }
}

/// Floor division by the quantization step.
pub fn quantize(value: u16, q: u32) -> i64 {
    (value as u32 / q) as i64
}

/// One point per pixel with id `"x,y"`, in row-major order.
pub fn image_space(image: &PnmImage, probe: &ProbeSpec) -> Result<DescribedSpace> {
    probe.validate(image.format)?;
    let mut rows = Vec::with_capacity(image.width * image.height);
    for y in 0..image.height {
        for x in 0..image.width {
            let mut values: Vec<i64> = image
                .pixel(x, y)
                .iter()
                .map(|&v| quantize(v, probe.quantize))
                .collect();
            if probe.include_position {
                values.push(x as i64);
                values.push(y as i64);
            }
            rows.push((format!("{x},{y}"), FeatureVector::new(values)));
        }
    }
    Ok(build_space(rows)?.with_raster(Raster {
        width: image.width,
        height: image.height,
    }))
}

pub fn load_image(path: impl AsRef<Path>, probe: &ProbeSpec) -> Result<DescribedSpace> {
    image_space(&read_pnm(path)?, probe)
}

/// Encodes a binary PGM with 8-bit samples.
pub fn encode_pgm(width: usize, height: usize, samples: &[u8]) -> Vec<u8> {
    assert_eq!(samples.len(), width * height);
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend_from_slice(samples);
    out
}
