use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::memory::ObjectiveSense;
use crate::space::{Bounds, Point};

/// Numeric feature table with one target column.
#[derive(Debug, Clone)]
pub struct TabularDataset {
    pub feature_names: Vec<String>,
    /// Row-major, `n_rows x dim`.
    pub features: Vec<Vec<f64>>,
    pub target_name: String,
    pub target: Vec<f64>,
    pub sense: ObjectiveSense,
    /// Rows dropped during ingestion for missing or unparseable values.
    pub dropped_rows: usize,
}

impl TabularDataset {
    pub fn new(
        feature_names: Vec<String>,
        features: Vec<Vec<f64>>,
        target_name: String,
        target: Vec<f64>,
        sense: ObjectiveSense,
    ) -> Result<Self> {
        if features.is_empty() || feature_names.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if features.len() != target.len() {
            return Err(Error::InvalidConfig(format!(
                "{} feature rows but {} targets",
                features.len(),
                target.len()
            )));
        }
        for row in &features {
            if row.len() != feature_names.len() {
                return Err(Error::DimensionMismatch { expected: feature_names.len(), actual: row.len() });
            }
        }
        Ok(TabularDataset { feature_names, features, target_name, target, sense, dropped_rows: 0 })
    }

    pub fn n_rows(&self) -> usize {
        self.features.len()
    }

    pub fn dim(&self) -> usize {
        self.feature_names.len()
    }

    /// Per-column min/max box, the natural search bounds for this dataset.
    pub fn ranges(&self) -> Bounds {
        let d = self.dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for row in &self.features {
            for j in 0..d {
                lo[j] = lo[j].min(row[j]);
                hi[j] = hi[j].max(row[j]);
            }
        }
        Bounds::new(Point::from_vec_unchecked(lo), Point::from_vec_unchecked(hi)).expect("min <= max")
    }

    /// Row index of the best target under this dataset's sense.
    pub fn best_row(&self) -> usize {
        let key = |i: usize| self.sense.to_internal(self.target[i]);
        (0..self.n_rows()).min_by(|&a, &b| key(a).total_cmp(&key(b))).expect("non-empty")
    }

    pub fn target_range(&self) -> (f64, f64) {
        let lo = self.target.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.target.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    /// Writes the table with a header row, features first, target last.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = self.feature_names.clone();
        header.push(self.target_name.clone());
        w.write_record(&header)?;
        for (row, y) in self.features.iter().zip(&self.target) {
            let mut rec: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            rec.push(y.to_string());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    /// Parses CSV text: header row required, comma-separated, '.' decimals.
    ///
    /// Columns other than the target that parse as numbers in at least half of
    /// the rows become features, in header order. Rows with any missing or
    /// unparseable feature/target value are dropped and counted.
    pub fn from_reader<R: Read>(input: R, target_column: &str, sense: ObjectiveSense) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).flexible(true).trim(csv::Trim::All).from_reader(input);
        let headers: Vec<String> = reader.headers()?.iter().map(String::from).collect();
        if headers.iter().all(|h| h.is_empty()) {
            return Err(Error::EmptyDataset);
        }
        let target_idx = headers
            .iter()
            .position(|h| h == target_column)
            .ok_or_else(|| Error::MissingTargetColumn(target_column.to_string()))?;

        let rows: Vec<Vec<Option<f64>>> = reader
            .records()
            .map(|rec| {
                rec.map(|r| {
                    (0..headers.len())
                        .map(|j| r.get(j).and_then(|s| s.parse::<f64>().ok()).filter(|v| v.is_finite()))
                        .collect()
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        if rows.is_empty() {
            return Err(Error::EmptyDataset);
        }

        let feature_idx: Vec<usize> = (0..headers.len())
            .filter(|&j| j != target_idx)
            .filter(|&j| 2 * rows.iter().filter(|r| r[j].is_some()).count() >= rows.len())
            .collect();
        if feature_idx.is_empty() {
            return Err(Error::InvalidConfig("no numeric feature columns".into()));
        }

        let mut features = Vec::with_capacity(rows.len());
        let mut target = Vec::with_capacity(rows.len());
        let mut dropped = 0;
        for r in &rows {
            let feats: Option<Vec<f64>> = feature_idx.iter().map(|&j| r[j]).collect();
            match (feats, r[target_idx]) {
                (Some(f), Some(y)) => {
                    features.push(f);
                    target.push(y);
                }
                _ => dropped += 1,
            }
        }
        if features.is_empty() {
            return Err(Error::NoValidRows { dropped });
        }
        let mut ds = TabularDataset::new(
            feature_idx.iter().map(|&j| headers[j].clone()).collect(),
            features,
            target_column.to_string(),
            target,
            sense,
        )?;
        ds.dropped_rows = dropped;
        Ok(ds)
    }
}

/// Loads a dataset from a CSV file; see [`TabularDataset::from_reader`].
/// The number of dropped rows is reported in `dropped_rows`.
pub fn load_csv(path: &Path, target_column: &str, sense: ObjectiveSense) -> Result<TabularDataset> {
    TabularDataset::from_reader(std::fs::File::open(path)?, target_column, sense)
}
