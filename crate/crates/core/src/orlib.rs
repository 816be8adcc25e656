//! OR-Library set covering files (`scp*.txt`) and solution verification.
//!
//! Both published encodings start with a header `m n`: `m` rows (elements)
//! and `n` columns (sets).
//!
//! * Row-major: `n` column costs, then for each row a count followed by that
//!   many 1-based column indices.
//! * Column-major: for each column a cost, a count, and that many 1-based row
//!   indices.
//!
//! Costs are read and discarded; every set costs one.

use std::fmt::{self, Write as _};
use std::path::Path;

use crate::error::{Error, Result};
use crate::instance::{ElemId, Instance, SetId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrlibFormat {
    RowMajor,
    ColumnMajor,
}

impl fmt::Display for OrlibFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrlibFormat::RowMajor => "row-major",
            OrlibFormat::ColumnMajor => "column-major",
        })
    }
}

impl std::str::FromStr for OrlibFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "row-major" | "row" => Ok(OrlibFormat::RowMajor),
            "column-major" | "col" | "column" => Ok(OrlibFormat::ColumnMajor),
            other => Err(Error::InvalidParam(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Token {
    offset: usize,
    value: i64,
}

fn tokenize(text: &[u8]) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < text.len() {
        if text[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < text.len() && !text[i].is_ascii_whitespace() {
            i += 1;
        }
        let raw = &text[start..i];
        let value = std::str::from_utf8(raw)
            .ok()
            .and_then(|s| s.parse::<i64>().ok())
            .ok_or_else(|| Error::Parse {
                offset: start,
                message: format!("expected an integer, found {:?}", String::from_utf8_lossy(raw)),
            })?;
        tokens.push(Token { offset: start, value });
    }
    Ok(tokens)
}

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Cursor<'a> {
    fn new(tokens: &'a [Token], end: usize) -> Self {
        Self { tokens, pos: 0, end }
    }

    fn next(&mut self, what: &str) -> Result<Token> {
        let token = self.tokens.get(self.pos).copied().ok_or_else(|| Error::Parse {
            offset: self.end,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(token)
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let token = self.next(what)?;
        usize::try_from(token.value).map_err(|_| Error::Parse {
            offset: token.offset,
            message: format!("{what} must be non-negative, got {}", token.value),
        })
    }

    /// 1-based index in `1..=limit`, returned 0-based.
    fn index(&mut self, what: &str, limit: usize) -> Result<usize> {
        let token = self.next(what)?;
        match usize::try_from(token.value) {
            Ok(v) if (1..=limit).contains(&v) => Ok(v - 1),
            _ => Err(Error::Parse {
                offset: token.offset,
                message: format!("{what} {} outside 1..={limit}", token.value),
            }),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(Error::Parse {
                offset: t.offset,
                message: format!("{} trailing token(s)", self.tokens.len() - self.pos),
            }),
        }
    }
}

/// Rows, and for each column the 0-based rows it covers.
struct RawColumns {
    rows: usize,
    columns: Vec<Vec<usize>>,
}

fn read_header(cur: &mut Cursor) -> Result<(usize, usize)> {
    let rows = cur.count("row count")?;
    let cols = cur.count("column count")?;
    Ok((rows, cols))
}

fn read_row_major(tokens: &[Token], end: usize) -> Result<RawColumns> {
    let mut cur = Cursor::new(tokens, end);
    let (rows, cols) = read_header(&mut cur)?;
    for _ in 0..cols {
        cur.next("column cost")?;
    }
    let mut columns = vec![Vec::new(); cols];
    for row in 0..rows {
        let count = cur.count("row length")?;
        for _ in 0..count {
            let col = cur.index("column index", cols)?;
            columns[col].push(row);
        }
    }
    cur.finish()?;
    Ok(RawColumns { rows, columns })
}

fn read_column_major(tokens: &[Token], end: usize) -> Result<RawColumns> {
    let mut cur = Cursor::new(tokens, end);
    let (rows, cols) = read_header(&mut cur)?;
    let mut columns = Vec::with_capacity(cols.min(tokens.len()));
    for _ in 0..cols {
        cur.next("column cost")?;
        let count = cur.count("column length")?;
        let mut covered = Vec::with_capacity(count.min(tokens.len()));
        for _ in 0..count {
            covered.push(cur.index("row index", rows)?);
        }
        columns.push(covered);
    }
    cur.finish()?;
    Ok(RawColumns { rows, columns })
}

fn read_raw(text: &[u8], format: OrlibFormat) -> Result<RawColumns> {
    let tokens = tokenize(text)?;
    match format {
        OrlibFormat::RowMajor => read_row_major(&tokens, text.len()),
        OrlibFormat::ColumnMajor => read_column_major(&tokens, text.len()),
    }
}

/// The unique encoding that consumes the whole stream.
pub fn detect_format(text: &[u8]) -> Result<OrlibFormat> {
    let tokens = tokenize(text)?;
    let row = read_row_major(&tokens, text.len());
    let col = read_column_major(&tokens, text.len());
    match (row, col) {
        (Ok(_), Ok(_)) => Err(Error::AmbiguousFormat),
        (Ok(_), Err(_)) => Ok(OrlibFormat::RowMajor),
        (Err(_), Ok(_)) => Ok(OrlibFormat::ColumnMajor),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Parses an OR-Library file. Without a hint the encoding is detected.
pub fn parse_orlib(text: &[u8], hint: Option<OrlibFormat>, name: &str) -> Result<Instance> {
    let format = match hint {
        Some(f) => f,
        None => detect_format(text)?,
    };
    let raw = read_raw(text, format)?;
    log::info!("{name}: {format}, column costs ignored (unicost)");
    Instance::build(
        raw.rows,
        raw.columns
            .iter()
            .map(|rows| rows.iter().map(|r| r + 1).collect::<Vec<_>>()),
        name,
    )
}

/// Instance name for a path: the file stem (`scp41.txt` → `scp41`).
pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn read_instance(path: &Path, hint: Option<OrlibFormat>) -> Result<Instance> {
    let wrap = |e: Error| Error::File {
        path: path.to_owned(),
        source: Box::new(e),
    };
    let bytes = std::fs::read(path).map_err(|e| wrap(e.into()))?;
    parse_orlib(&bytes, hint, &instance_name(path)).map_err(wrap)
}

/// Serialises an instance with unit costs. Column `j` on disk is set `j`.
pub fn write_orlib(instance: &Instance, format: OrlibFormat) -> String {
    let m = instance.universe_size();
    let n = instance.num_sets();
    let mut out = format!("{m} {n}\n");
    let line = |out: &mut String, items: &[usize]| {
        let body = items.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
        writeln!(out, "{} {body}", items.len()).expect("writing to a String");
    };
    match format {
        OrlibFormat::RowMajor => {
            out.push_str(&vec!["1"; n].join(" "));
            out.push('\n');
            for x in 0..m {
                line(&mut out, instance.sets_containing(x));
            }
        }
        OrlibFormat::ColumnMajor => {
            for s in 0..n {
                out.push_str("1 ");
                line(&mut out, instance.elements_of(s));
            }
        }
    }
    out
}

/// Feasibility report for a proposed selection. Never fails: unknown
/// identifiers and duplicates are reported, not rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub feasible: bool,
    /// Number of distinct valid sets selected.
    pub k: usize,
    pub duplicates: Vec<SetId>,
    pub unknown: Vec<SetId>,
    pub uncovered: Vec<ElemId>,
    /// How many selected sets cover each element.
    pub multiplicity: Vec<u32>,
}

pub fn verify_solution(instance: &Instance, selection: &[SetId]) -> VerifyReport {
    let mut seen = vec![false; instance.num_sets()];
    let mut duplicates = Vec::new();
    let mut unknown = Vec::new();
    let mut multiplicity = vec![0u32; instance.universe_size()];
    let mut k = 0;
    for &s in selection {
        if s >= instance.num_sets() {
            unknown.push(s);
        } else if seen[s] {
            duplicates.push(s);
        } else {
            seen[s] = true;
            k += 1;
            for &x in instance.elements_of(s) {
                multiplicity[x] += 1;
            }
        }
    }
    let uncovered: Vec<ElemId> = (0..multiplicity.len()).filter(|&x| multiplicity[x] == 0).collect();
    VerifyReport {
        feasible: uncovered.is_empty() && unknown.is_empty(),
        k,
        duplicates,
        unknown,
        uncovered,
        multiplicity,
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "feasible: {}", self.feasible)?;
        writeln!(f, "k: {}", self.k)?;
        if !self.duplicates.is_empty() {
            writeln!(f, "duplicate selections: {}", self.duplicates.len())?;
        }
        if !self.unknown.is_empty() {
            writeln!(f, "unknown identifiers: {}", self.unknown.len())?;
        }
        writeln!(f, "uncovered elements: {}", self.uncovered.len())?;
        let max = self.multiplicity.iter().copied().max().unwrap_or(0);
        let mean = self.multiplicity.iter().map(|&v| f64::from(v)).sum::<f64>() / self.multiplicity.len().max(1) as f64;
        write!(f, "coverage multiplicity: mean {mean:.3}, max {max}")
    }
}

/// Solution text: whitespace-separated 1-based column indices as they
/// appear in the instance file. Columns that were dropped as empty, or are
/// out of range, map to identifiers past the end so verification reports them.
pub fn parse_solution(text: &str, instance: &Instance) -> Result<Vec<SetId>> {
    let tokens = tokenize(text.as_bytes())?;
    tokens
        .iter()
        .map(|t| match usize::try_from(t.value) {
            Ok(v) if v >= 1 => Ok(instance.set_for_label(v - 1).unwrap_or(instance.num_sets() + v)),
            _ => Err(Error::Parse {
                offset: t.offset,
                message: format!("column index must be >= 1, got {}", t.value),
            }),
        })
        .collect()
}

/// Inverse of [`parse_solution`]: one line of 1-based column indices.
pub fn format_solution(instance: &Instance, selection: &[SetId]) -> String {
    selection
        .iter()
        .map(|&s| (instance.label(s) + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::worked_example;

    const ROW_MAJOR: &str = "3 2  1 1  1 1  2 1 2  1 2";

    #[test]
    fn row_major_synthetic() {
        let inst = parse_orlib(ROW_MAJOR.as_bytes(), None, "tiny").unwrap();
        assert_eq!(inst.universe_size(), 3);
        assert_eq!(inst.num_sets(), 2);
        assert_eq!(inst.elements_of(0), &[0, 1]);
        assert_eq!(inst.elements_of(1), &[1, 2]);
        assert_eq!(detect_format(ROW_MAJOR.as_bytes()).unwrap(), OrlibFormat::RowMajor);
    }

    #[test]
    fn column_major_synthetic() {
        // 3 rows, 2 columns: col 1 = {1,2}, col 2 = {2,3}
        let text = "3 2  5 2 1 2  7 2 2 3";
        assert_eq!(detect_format(text.as_bytes()).unwrap(), OrlibFormat::ColumnMajor);
        let inst = parse_orlib(text.as_bytes(), None, "tiny").unwrap();
        assert_eq!(inst.elements_of(0), &[0, 1]);
        assert_eq!(inst.elements_of(1), &[1, 2]);
    }

    #[test]
    fn stream_valid_in_both_encodings_is_ambiguous() {
        let text = "2 2  1 1 1  1 2 1 2";
        assert!(matches!(detect_format(text.as_bytes()), Err(Error::AmbiguousFormat)));
        let col = parse_orlib(text.as_bytes(), Some(OrlibFormat::ColumnMajor), "t").unwrap();
        assert_eq!(col.elements_of(0), &[0]);
        assert_eq!(col.elements_of(1), &[0, 1]);
        let row = parse_orlib(text.as_bytes(), Some(OrlibFormat::RowMajor), "t").unwrap();
        assert_eq!(row.elements_of(0), &[0, 1]);
        assert_eq!(row.elements_of(1), &[1]);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let err = parse_orlib(b"3 2 1 x", Some(OrlibFormat::RowMajor), "t").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 6, .. }), "{err}");

        let err = parse_orlib(b"3 2 1 1 1 1", Some(OrlibFormat::RowMajor), "t").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 11, .. }), "{err}");

        // column index 3 > n = 2
        let err = parse_orlib(b"1 2 1 1 1 3", Some(OrlibFormat::RowMajor), "t").unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 10, .. }), "{err}");

        let err = parse_orlib(b"1 1 1 1 1 9", Some(OrlibFormat::RowMajor), "t").unwrap_err();
        assert!(err.to_string().contains("trailing"), "{err}");

        assert!(matches!(detect_format(b"1 1 1 1 1 9"), Err(Error::Parse { .. })));
    }

    #[test]
    fn uncoverable_row_rejected() {
        // row 2 has no columns
        let err = parse_orlib(b"2 1 1 1 1 0", Some(OrlibFormat::RowMajor), "t").unwrap_err();
        assert!(matches!(err, Error::Uncoverable(ref v) if v == &[2]));
    }

    #[test]
    fn writes_both_encodings() {
        let inst = worked_example();
        for format in [OrlibFormat::RowMajor, OrlibFormat::ColumnMajor] {
            let text = write_orlib(&inst, format);
            let back = parse_orlib(text.as_bytes(), Some(format), inst.name()).unwrap();
            assert_eq!(back, inst);
        }
        assert_eq!(
            write_orlib(&inst, OrlibFormat::ColumnMajor),
            "5 4\n1 2 1 4\n1 3 1 2 3\n1 3 2 3 5\n1 2 3 4\n"
        );
    }

    #[test]
    fn verification_reports() {
        let inst = worked_example();
        let ok = verify_solution(&inst, &[0, 2]);
        assert!(ok.feasible);
        assert_eq!(ok.k, 2);
        assert_eq!(ok.multiplicity, vec![1, 1, 1, 1, 1]);

        let empty = verify_solution(&inst, &[]);
        assert!(!empty.feasible);
        assert_eq!(empty.uncovered.len(), 5);

        let messy = verify_solution(&inst, &[0, 2, 0, 9]);
        assert!(!messy.feasible);
        assert_eq!(messy.k, 2);
        assert_eq!(messy.duplicates, vec![0]);
        assert_eq!(messy.unknown, vec![9]);
    }

    #[test]
    fn solutions_use_input_column_numbers() {
        let inst = Instance::build(2, [vec![], vec![1], vec![2]], "gap").unwrap();
        assert_eq!(format_solution(&inst, &[0, 1]), "2 3");
        assert_eq!(parse_solution("2 3", &inst).unwrap(), vec![0, 1]);
        let bad = parse_solution("1", &inst).unwrap();
        assert!(!verify_solution(&inst, &bad).feasible);
        assert!(parse_solution("0", &inst).is_err());
    }
}
