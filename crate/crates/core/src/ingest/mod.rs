//! Building described spaces from feature tables and Netpbm images.

mod table;
mod pnm;
mod region;

pub use table::{load_csv, read_csv, CsvOptions};
pub use pnm::{
    decode_pnm, encode_pgm, image_space, load_image, quantize, read_pnm, PnmFormat, PnmImage,
    ProbeKind, ProbeSpec,
};
pub use region::{load_regions, parse_regions, region, resolve_regions, RegionSpec, Shape};
