//! Matrix Market exchange format (`%%MatrixMarket matrix ...`).
//!
//! Reads both `array` and `coordinate` layouts with `real`, `integer`,
//! `complex` or `pattern` fields and `general`, `symmetric`, `hermitian` or
//! `skew-symmetric` storage; symmetric storage is expanded to the full
//! matrix. Writes dense `array` files, `real` when every imaginary part is
//! zero and `complex` otherwise.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
    Pattern,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    Hermitian,
    SkewSymmetric,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str) -> Result<(Layout, Field, Symmetry)> {
    let tokens: Vec<String> = line.split_whitespace().map(str::to_ascii_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_err(1, "expected `%%MatrixMarket matrix <layout> <field> <symmetry>`"));
    }
    let layout = match tokens[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(parse_err(1, format!("unknown layout `{other}`"))),
    };
    let field = match tokens[3].as_str() {
        "real" | "double" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        "pattern" => Field::Pattern,
        other => return Err(parse_err(1, format!("unknown field `{other}`"))),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "hermitian" => Symmetry::Hermitian,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        other => return Err(parse_err(1, format!("unknown symmetry `{other}`"))),
    };
    if layout == Layout::Array && field == Field::Pattern {
        return Err(parse_err(1, "pattern field is only valid for coordinate layout"));
    }
    if symmetry == Symmetry::Hermitian && field != Field::Complex {
        return Err(parse_err(1, "hermitian symmetry requires a complex field"));
    }
    Ok((layout, field, symmetry))
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

fn parse_f64(tok: &str, line: usize) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("invalid number `{tok}`")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("non-finite value `{tok}`")));
    }
    Ok(v)
}

fn parse_value(tokens: &[&str], field: Field, line: usize) -> Result<C64> {
    let want = match field {
        Field::Pattern => 0,
        Field::Complex => 2,
        Field::Real | Field::Integer => 1,
    };
    if tokens.len() != want {
        return Err(parse_err(
            line,
            format!("expected {want} value token(s), found {}", tokens.len()),
        ));
    }
    Ok(match field {
        Field::Pattern => C64::new(1.0, 0.0),
        Field::Complex => C64::new(parse_f64(tokens[0], line)?, parse_f64(tokens[1], line)?),
        Field::Real | Field::Integer => C64::new(parse_f64(tokens[0], line)?, 0.0),
    })
}

fn mirror(symmetry: Symmetry, z: C64) -> C64 {
    match symmetry {
        Symmetry::General | Symmetry::Symmetric => z,
        Symmetry::Hermitian => z.conj(),
        Symmetry::SkewSymmetric => -z,
    }
}

/// Parses Matrix Market text.
pub fn parse_matrix_market(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let (layout, field, symmetry) = parse_header(header)?;

    let mut data = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = data
        .next()
        .ok_or_else(|| parse_err(2, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    let want = if layout == Layout::Array { 2 } else { 3 };
    if dims.len() != want {
        return Err(parse_err(size_line, format!("expected {want} size fields")));
    }
    let rows = parse_usize(dims[0], size_line, "row count")?;
    let cols = parse_usize(dims[1], size_line, "column count")?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(size_line, "empty matrix"));
    }
    if symmetry != Symmetry::General && rows != cols {
        return Err(parse_err(size_line, "symmetric storage requires a square matrix"));
    }

    let mut m = Matrix::zeros(rows, cols).into_dmatrix();
    let mut last_line = size_line;
    match layout {
        Layout::Array => {
            // Column-major; symmetric variants store the lower triangle only.
            let mut slots = Vec::new();
            for j in 0..cols {
                let start = match symmetry {
                    Symmetry::General => 0,
                    Symmetry::SkewSymmetric => j + 1,
                    Symmetry::Symmetric | Symmetry::Hermitian => j,
                };
                slots.extend((start..rows).map(|i| (i, j)));
            }
            for (i, j) in slots {
                let (ln, l) = data.next().ok_or_else(|| {
                    parse_err(last_line + 1, "unexpected end of data")
                })?;
                last_line = ln;
                let toks: Vec<&str> = l.split_whitespace().collect();
                let z = parse_value(&toks, field, ln)?;
                if i == j && symmetry == Symmetry::Hermitian && z.im != 0.0 {
                    return Err(parse_err(ln, "hermitian diagonal entry must be real"));
                }
                m[(i, j)] = z;
                if i != j && symmetry != Symmetry::General {
                    m[(j, i)] = mirror(symmetry, z);
                }
            }
        }
        Layout::Coordinate => {
            let nnz = parse_usize(dims[2], size_line, "entry count")?;
            for _ in 0..nnz {
                let (ln, l) = data.next().ok_or_else(|| {
                    parse_err(last_line + 1, "unexpected end of data")
                })?;
                last_line = ln;
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() < 2 {
                    return Err(parse_err(ln, "expected `row col [value]`"));
                }
                let i = parse_usize(toks[0], ln, "row index")?;
                let j = parse_usize(toks[1], ln, "column index")?;
                if i == 0 || j == 0 || i > rows || j > cols {
                    return Err(parse_err(ln, format!("index ({i}, {j}) out of range")));
                }
                let (i, j) = (i - 1, j - 1);
                if symmetry != Symmetry::General && j > i {
                    return Err(parse_err(ln, "symmetric storage expects lower-triangle entries"));
                }
                let z = parse_value(&toks[2..], field, ln)?;
                m[(i, j)] += z;
                if i != j && symmetry != Symmetry::General {
                    m[(j, i)] += mirror(symmetry, z);
                }
            }
        }
    }
    if let Some((ln, _)) = data.next() {
        return Err(parse_err(ln, "trailing data after the last entry"));
    }
    Matrix::from_dmatrix(m)
}

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix_market(&text)
}

/// Renders a matrix as a dense `array` Matrix Market document.
pub fn format_matrix_market(m: &Matrix) -> String {
    let complex = m.to_row_major().iter().any(|z| z.im != 0.0);
    let mut out = format!(
        "%%MatrixMarket matrix array {} general\n{} {}\n",
        if complex { "complex" } else { "real" },
        m.rows(),
        m.cols()
    );
    // `{:e}` prints the shortest digits that round-trip exactly.
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m[(i, j)];
            if complex {
                let _ = writeln!(out, "{:e} {:e}", z.re, z.im);
            } else {
                let _ = writeln!(out, "{:e}", z.re);
            }
        }
    }
    out
}

pub fn save_matrix_market(m: &Matrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, format_matrix_market(m)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
