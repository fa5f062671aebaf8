//! Delimited input tables: comma-separated, UTF-8, header row required.

use std::path::Path;

use crate::error::{Error, Result};

/// One row of an SDS table.
#[derive(Debug, Clone, PartialEq)]
pub struct SdsRecord {
    pub subject_id: String,
    pub time_label: String,
    pub sds_value: f64,
}

/// One subject of a win-odds table.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeRecord {
    pub subject_id: String,
    pub arm: String,
    pub components: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    /// `subject_id,time_label,sds_value`
    Sds,
    /// `subject_id,arm,<one or more numeric components>`
    Outcomes,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Records {
    Sds(Vec<SdsRecord>),
    Outcomes {
        component_names: Vec<String>,
        rows: Vec<OutcomeRecord>,
    },
}

const SDS_HEADER: [&str; 3] = ["subject_id", "time_label", "sds_value"];

fn schema_error(path: &Path, row: usize, column: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.display().to_string(),
        row,
        column: column.to_string(),
        message: message.into(),
    }
}

fn parse_number(path: &Path, row: usize, column: &str, text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| schema_error(path, row, column, format!("{text:?} is not a number")))?;
    if !v.is_finite() {
        return Err(schema_error(path, row, column, format!("{text:?} is not finite")));
    }
    Ok(v)
}

/// Read and validate a table. Rows are numbered from 1 for the header, so
/// the first data row is row 2, matching a spreadsheet view of the file.
pub fn load_table(path: &Path, schema: Schema) -> Result<Records> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8(bytes)
        .map_err(|e| schema_error(path, 0, "", format!("file is not UTF-8: {e}")))?;
    if text.trim().is_empty() {
        return Err(Error::EmptyTable {
            path: path.display().to_string(),
            message: "file is empty".into(),
        });
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| schema_error(path, 1, "", e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();

    match schema {
        Schema::Sds => {
            if header != SDS_HEADER {
                return Err(schema_error(
                    path,
                    1,
                    "",
                    format!("header must be {}, got {}", SDS_HEADER.join(","), header.join(",")),
                ));
            }
        }
        Schema::Outcomes => {
            if header.len() < 3 || header[0] != "subject_id" || header[1] != "arm" {
                return Err(schema_error(
                    path,
                    1,
                    "",
                    format!(
                        "header must be subject_id,arm followed by at least one component, got {}",
                        header.join(",")
                    ),
                ));
            }
        }
    }

    let mut sds = Vec::new();
    let mut outcomes = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| schema_error(path, row, "", e.to_string()))?;
        if rec.len() != header.len() {
            return Err(schema_error(
                path,
                row,
                "",
                format!("expected {} fields, found {}", header.len(), rec.len()),
            ));
        }
        for (j, field) in rec.iter().enumerate().take(2) {
            if field.is_empty() {
                return Err(schema_error(path, row, &header[j], "value is empty"));
            }
        }
        match schema {
            Schema::Sds => sds.push(SdsRecord {
                subject_id: rec[0].to_string(),
                time_label: rec[1].to_string(),
                sds_value: parse_number(path, row, "sds_value", &rec[2])?,
            }),
            Schema::Outcomes => {
                let components = rec
                    .iter()
                    .enumerate()
                    .skip(2)
                    .map(|(j, f)| parse_number(path, row, &header[j], f))
                    .collect::<Result<Vec<_>>>()?;
                outcomes.push(OutcomeRecord {
                    subject_id: rec[0].to_string(),
                    arm: rec[1].to_string(),
                    components,
                });
            }
        }
    }

    let empty = match schema {
        Schema::Sds => sds.is_empty(),
        Schema::Outcomes => outcomes.is_empty(),
    };
    if empty {
        return Err(Error::EmptyTable {
            path: path.display().to_string(),
            message: "table has a header but no data rows".into(),
        });
    }
    Ok(match schema {
        Schema::Sds => Records::Sds(sds),
        Schema::Outcomes => Records::Outcomes {
            component_names: header[2..].to_vec(),
            rows: outcomes,
        },
    })
}

pub fn load_sds(path: &Path) -> Result<Vec<SdsRecord>> {
    match load_table(path, Schema::Sds)? {
        Records::Sds(r) => Ok(r),
        Records::Outcomes { .. } => unreachable!("schema mismatch"),
    }
}

pub fn load_outcomes(path: &Path) -> Result<(Vec<String>, Vec<OutcomeRecord>)> {
    match load_table(path, Schema::Outcomes)? {
        Records::Outcomes { component_names, rows } => Ok((component_names, rows)),
        Records::Sds(_) => unreachable!("schema mismatch"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn sds_rows() {
        let f = file("subject_id,time_label,sds_value\n1,0,0.2\n1,12,-0.1\n2,0,1.5\n");
        let r = load_sds(f.path()).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[1].sds_value, -0.1);
    }

    #[test]
    fn non_numeric_value_names_row_and_column() {
        let f = file("subject_id,time_label,sds_value\n1,0,0.2\n1,12,abc\n");
        match load_sds(f.path()).unwrap_err() {
            Error::Schema { row, column, .. } => {
                assert_eq!(row, 3);
                assert_eq!(column, "sds_value");
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn ragged_outcome_rows_name_the_row() {
        let f = file("subject_id,arm,death,days\n1,test,0,3\n2,control,1\n");
        match load_outcomes(f.path()).unwrap_err() {
            Error::Schema { row, .. } => assert_eq!(row, 3),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn empty_files() {
        assert!(matches!(load_sds(file("").path()), Err(Error::EmptyTable { .. })));
        assert!(matches!(
            load_sds(file("subject_id,time_label,sds_value\n").path()),
            Err(Error::EmptyTable { .. })
        ));
    }

    #[test]
    fn wrong_header() {
        assert!(matches!(load_sds(file("id,t,v\n1,0,0\n").path()), Err(Error::Schema { row: 1, .. })));
    }
}
