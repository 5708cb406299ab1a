use std::fs::File;
use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::parse_rational;
use crate::space::{build_space, DescribedSpace, FeatureVector};

/// Column selection and scaling for [`load_csv`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsvOptions {
    pub id_column: String,
    /// Feature columns in order; `None` takes every column except the id.
    pub feature_columns: Option<Vec<String>>,
    /// Cells are multiplied by this factor and must then be integers, so
    /// `scale = 100` reads `0.25` as `25`.
    pub scale: u64,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            id_column: "id".to_string(),
            feature_columns: None,
            scale: 1,
        }
    }
}

pub fn load_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<DescribedSpace> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv(file, options)
}

/// Reads a feature table with a header row. Rows keep file order.
pub fn read_csv<R: Read>(reader: R, options: &CsvOptions) -> Result<DescribedSpace> {
    if options.scale == 0 {
        return Err(Error::InvalidNumber("scale must be positive".into()));
    }
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let id_at = column(&options.id_column)?;
    let features: Vec<(usize, String)> = match &options.feature_columns {
        Some(cols) => cols
            .iter()
            .map(|c| Ok((column(c)?, c.clone())))
            .collect::<Result<_>>()?,
        None => headers
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id_at)
            .map(|(i, h)| (i, h.to_string()))
            .collect(),
    };
    let scale = BigRational::from_integer(BigInt::from(options.scale));

    let mut rows = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let id = record.get(id_at).unwrap_or("").to_string();
        let values = features
            .iter()
            .map(|(i, name)| {
                let cell = record.get(*i).unwrap_or("");
                let bad = || Error::NonNumericCell {
                    row,
                    column: name.clone(),
                    value: cell.to_string(),
                };
                let scaled = parse_rational(cell).map_err(|_| bad())? * &scale;
                if !scaled.is_integer() {
                    return Err(bad());
                }
                scaled.to_integer().to_i64().ok_or_else(bad)
            })
            .collect::<Result<Vec<i64>>>()?;
        rows.push((id, FeatureVector::new(values)));
    }
    build_space(rows)
}
