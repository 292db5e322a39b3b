//! Matrix file ingestion and emission: Matrix Market array (canonical),
//! CSV, and JSON. Parsing is strict; writing uses 17-significant-digit
//! floats so parse -> write -> parse is the identity.

use num_complex::Complex64;

use ergo::Matrix;

use crate::report::format_float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    MatrixMarketArray,
    Csv,
    Json,
}

impl Format {
    pub fn label(&self) -> &'static str {
        match self {
            Format::MatrixMarketArray => "matrix_market_array",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

pub fn detect_format(path: &str, content: &str) -> Format {
    let lower = path.to_ascii_lowercase();
    if lower.ends_with(".mtx") {
        return Format::MatrixMarketArray;
    }
    if lower.ends_with(".json") {
        return Format::Json;
    }
    if lower.ends_with(".csv") {
        return Format::Csv;
    }
    let trimmed = content.trim_start();
    if trimmed.starts_with("%%MatrixMarket") {
        Format::MatrixMarketArray
    } else if trimmed.starts_with('{') {
        Format::Json
    } else {
        Format::Csv
    }
}

pub fn read_matrix(path: &str) -> Result<(Matrix, Format, Vec<u8>), String> {
    let bytes =
        std::fs::read(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let content = String::from_utf8(bytes.clone())
        .map_err(|_| format!("{path} is not valid UTF-8"))?;
    let format = detect_format(path, &content);
    let m = parse_matrix(&content, format)?;
    Ok((m, format, bytes))
}

/// A real vector from a 1 x n or n x 1 matrix file.
pub fn read_vector(path: &str) -> Result<Vec<f64>, String> {
    let (m, _, _) = read_matrix(path)?;
    if !m.is_real() {
        return Err(format!("{path}: vector must be real"));
    }
    if m.cols() == 1 {
        Ok((0..m.rows()).map(|i| m.re(i, 0)).collect())
    } else if m.rows() == 1 {
        Ok((0..m.cols()).map(|j| m.re(0, j)).collect())
    } else {
        Err(format!(
            "{path}: expected a vector, got a {}x{} matrix",
            m.rows(),
            m.cols()
        ))
    }
}

pub fn parse_matrix(content: &str, format: Format) -> Result<Matrix, String> {
    match format {
        Format::MatrixMarketArray => parse_mtx(content),
        Format::Csv => parse_csv(content),
        Format::Json => parse_json_matrix(content),
    }
}

#[cfg_attr(not(test), allow(dead_code))]
pub fn write_matrix(m: &Matrix, format: Format) -> String {
    match format {
        Format::MatrixMarketArray => write_mtx(m),
        Format::Csv => write_csv(m),
        Format::Json => write_json_matrix(m),
    }
}

// ---------------------------------------------------------------------------
// Matrix Market array format (column-major entries).
// ---------------------------------------------------------------------------

fn parse_mtx(content: &str) -> Result<Matrix, String> {
    let mut lines = content.lines();
    let header = lines.next().ok_or("empty file")?;
    let fields: Vec<String> = header
        .split_whitespace()
        .map(|f| f.to_ascii_lowercase())
        .collect();
    if fields.len() != 5
        || fields[0] != "%%matrixmarket"
        || fields[1] != "matrix"
        || fields[2] != "array"
        || fields[4] != "general"
    {
        return Err(format!("unsupported Matrix Market header: {header}"));
    }
    let complex = match fields[3].as_str() {
        "real" => false,
        "complex" => true,
        other => return Err(format!("unsupported Matrix Market field type: {other}")),
    };
    let mut rest = lines.filter(|l| !l.trim_start().starts_with('%'));
    let size_line = rest
        .find(|l| !l.trim().is_empty())
        .ok_or("missing size line")?;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| format!("bad size line: {size_line}")))
        .collect::<Result<_, _>>()?;
    if dims.len() != 2 {
        return Err(format!("bad size line: {size_line}"));
    }
    let (rows, cols) = (dims[0], dims[1]);
    let mut numbers: Vec<f64> = Vec::new();
    for line in rest {
        for tok in line.split_whitespace() {
            numbers.push(
                tok.parse::<f64>()
                    .map_err(|_| format!("bad number: {tok}"))?,
            );
        }
    }
    let per_entry = if complex { 2 } else { 1 };
    if numbers.len() != rows * cols * per_entry {
        return Err(format!(
            "expected {} values for a {rows}x{cols} {} array, found {}",
            rows * cols * per_entry,
            if complex { "complex" } else { "real" },
            numbers.len()
        ));
    }
    let mut m = Matrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            let idx = (j * rows + i) * per_entry;
            let z = if complex {
                Complex64::new(numbers[idx], numbers[idx + 1])
            } else {
                Complex64::new(numbers[idx], 0.0)
            };
            m.set(i, j, z);
        }
    }
    Ok(m)
}

fn write_mtx(m: &Matrix) -> String {
    let complex = !m.is_real();
    let mut out = format!(
        "%%MatrixMarket matrix array {} general\n{} {}\n",
        if complex { "complex" } else { "real" },
        m.rows(),
        m.cols()
    );
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m.get(i, j);
            if complex {
                out.push_str(&format!("{} {}\n", format_float(z.re), format_float(z.im)));
            } else {
                out.push_str(&format_float(z.re));
                out.push('\n');
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// CSV (real only).
// ---------------------------------------------------------------------------

fn parse_csv(content: &str) -> Result<Matrix, String> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in content.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("bad CSV number: {t}"))
            })
            .collect::<Result<_, _>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err("ragged CSV rows".into());
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err("empty CSV".into());
    }
    let data: Vec<f64> = rows.iter().flatten().copied().collect();
    Matrix::from_real(rows.len(), rows[0].len(), &data).map_err(|e| e.to_string())
}

fn write_csv(m: &Matrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format_float(m.re(i, j)));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// JSON: {"rows": r, "cols": c, "data": [...]}, row-major, complex entries
// as [re, im] pairs.
// ---------------------------------------------------------------------------

fn parse_json_matrix(content: &str) -> Result<Matrix, String> {
    let value = JsonParser::new(content).parse()?;
    let JsonValue::Obj(map) = value else {
        return Err("JSON matrix must be an object".into());
    };
    let rows = get_usize(&map, "rows")?;
    let cols = get_usize(&map, "cols")?;
    let data = map
        .iter()
        .find(|(k, _)| k == "data")
        .map(|(_, v)| v)
        .ok_or("missing \"data\"")?;
    let JsonValue::Arr(items) = data else {
        return Err("\"data\" must be an array".into());
    };
    if items.len() != rows * cols {
        return Err(format!(
            "expected {} entries, found {}",
            rows * cols,
            items.len()
        ));
    }
    let mut m = Matrix::zeros(rows, cols);
    for (idx, item) in items.iter().enumerate() {
        let z = match item {
            JsonValue::Num(v) => Complex64::new(*v, 0.0),
            JsonValue::Arr(pair) => {
                let nums: Vec<f64> = pair
                    .iter()
                    .map(|p| match p {
                        JsonValue::Num(v) => Ok(*v),
                        _ => Err("complex entry must be [re, im]".to_string()),
                    })
                    .collect::<Result<_, _>>()?;
                if nums.len() != 2 {
                    return Err("complex entry must be [re, im]".into());
                }
                Complex64::new(nums[0], nums[1])
            }
            _ => return Err("matrix entries must be numbers or [re, im]".into()),
        };
        m.set(idx / cols, idx % cols, z);
    }
    Ok(m)
}

fn get_usize(map: &[(String, JsonValue)], key: &str) -> Result<usize, String> {
    match map.iter().find(|(k, _)| k == key).map(|(_, v)| v) {
        Some(JsonValue::Num(v)) if *v >= 0.0 && v.fract() == 0.0 => Ok(*v as usize),
        _ => Err(format!("missing or invalid \"{key}\"")),
    }
}

fn write_json_matrix(m: &Matrix) -> String {
    let complex = !m.is_real();
    let mut out = format!("{{\"cols\":{},\"data\":[", m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i + j > 0 {
                out.push(',');
            }
            let z = m.get(i, j);
            if complex {
                out.push_str(&format!(
                    "[{},{}]",
                    format_float(z.re),
                    format_float(z.im)
                ));
            } else {
                out.push_str(&format_float(z.re));
            }
        }
    }
    out.push_str(&format!("],\"rows\":{}}}", m.rows()));
    out
}

// Minimal recursive-descent JSON reader; enough for matrix files.
#[derive(Debug, Clone)]
enum JsonValue {
    Num(f64),
    Str(#[allow(dead_code)] String),
    Bool(#[allow(dead_code)] bool),
    Null,
    Arr(Vec<JsonValue>),
    Obj(Vec<(String, JsonValue)>),
}

struct JsonParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> JsonParser<'a> {
    fn new(s: &'a str) -> Self {
        JsonParser {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<JsonValue, String> {
        let v = self.value()?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err("trailing content after JSON value".into());
        }
        Ok(v)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<u8, String> {
        self.skip_ws();
        self.bytes
            .get(self.pos)
            .copied()
            .ok_or_else(|| "unexpected end of JSON".into())
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.peek()? == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected '{}' at byte {}", c as char, self.pos))
        }
    }

    fn value(&mut self) -> Result<JsonValue, String> {
        match self.peek()? {
            b'{' => self.object(),
            b'[' => self.array(),
            b'"' => Ok(JsonValue::Str(self.string()?)),
            b't' => self.literal("true", JsonValue::Bool(true)),
            b'f' => self.literal("false", JsonValue::Bool(false)),
            b'n' => self.literal("null", JsonValue::Null),
            _ => self.number(),
        }
    }

    fn literal(&mut self, text: &str, v: JsonValue) -> Result<JsonValue, String> {
        if self.bytes[self.pos..].starts_with(text.as_bytes()) {
            self.pos += text.len();
            Ok(v)
        } else {
            Err(format!("bad literal at byte {}", self.pos))
        }
    }

    fn object(&mut self) -> Result<JsonValue, String> {
        self.expect(b'{')?;
        let mut out = Vec::new();
        if self.peek()? == b'}' {
            self.pos += 1;
            return Ok(JsonValue::Obj(out));
        }
        loop {
            self.skip_ws();
            let key = self.string()?;
            self.expect(b':')?;
            out.push((key, self.value()?));
            match self.peek()? {
                b',' => self.pos += 1,
                b'}' => {
                    self.pos += 1;
                    return Ok(JsonValue::Obj(out));
                }
                _ => return Err(format!("expected ',' or '}}' at byte {}", self.pos)),
            }
        }
    }

    fn array(&mut self) -> Result<JsonValue, String> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.peek()? == b']' {
            self.pos += 1;
            return Ok(JsonValue::Arr(out));
        }
        loop {
            out.push(self.value()?);
            match self.peek()? {
                b',' => self.pos += 1,
                b']' => {
                    self.pos += 1;
                    return Ok(JsonValue::Arr(out));
                }
                _ => return Err(format!("expected ',' or ']' at byte {}", self.pos)),
            }
        }
    }

    fn string(&mut self) -> Result<String, String> {
        self.expect(b'"')?;
        let mut out = String::new();
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            self.pos += 1;
            match c {
                b'"' => return Ok(out),
                b'\\' => {
                    let esc = self
                        .bytes
                        .get(self.pos)
                        .copied()
                        .ok_or("unterminated escape")?;
                    self.pos += 1;
                    match esc {
                        b'"' => out.push('"'),
                        b'\\' => out.push('\\'),
                        b'/' => out.push('/'),
                        b'n' => out.push('\n'),
                        b't' => out.push('\t'),
                        b'r' => out.push('\r'),
                        _ => return Err("unsupported escape in string".into()),
                    }
                }
                c => out.push(c as char),
            }
        }
        Err("unterminated string".into())
    }

    fn number(&mut self) -> Result<JsonValue, String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_digit() || matches!(c, b'-' | b'+' | b'.' | b'e' | b'E') {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map(JsonValue::Num)
            .map_err(|_| format!("bad number at byte {start}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Matrix {
        Matrix::from_real_rows(&[&[0.0, 0.29, 0.55], &[0.63, 0.4, 0.12], &[0.37, 0.31, 0.33]])
            .unwrap()
    }

    #[test]
    fn round_trip_all_formats() {
        let m = sample();
        for format in [Format::MatrixMarketArray, Format::Csv, Format::Json] {
            let text = write_matrix(&m, format);
            let back = parse_matrix(&text, format).unwrap();
            assert_eq!(&back, &m, "{format:?}");
            // Idempotent: serialize(parse(serialize)) == serialize.
            assert_eq!(write_matrix(&back, format), text);
        }
    }

    #[test]
    fn round_trip_complex_formats() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, Complex64::new(1.5, -0.25));
        m.set(1, 0, Complex64::new(0.0, 1.0 / 3.0));
        for format in [Format::MatrixMarketArray, Format::Json] {
            let text = write_matrix(&m, format);
            let back = parse_matrix(&text, format).unwrap();
            assert_eq!(&back, &m, "{format:?}");
        }
    }

    #[test]
    fn mtx_is_column_major() {
        let text = "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n";
        let m = parse_matrix(text, Format::MatrixMarketArray).unwrap();
        assert_eq!(m.re(0, 0), 1.0);
        assert_eq!(m.re(1, 0), 2.0);
        assert_eq!(m.re(0, 1), 3.0);
        assert_eq!(m.re(1, 1), 4.0);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_matrix("%%MatrixMarket matrix coordinate real general\n1 1 1\n", Format::MatrixMarketArray).is_err());
        assert!(parse_matrix("1,2\n3\n", Format::Csv).is_err());
        assert!(parse_matrix("{\"rows\":2,\"cols\":2,\"data\":[1,2,3]}", Format::Json).is_err());
        assert!(parse_matrix("not json", Format::Json).is_err());
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format("a.mtx", ""), Format::MatrixMarketArray);
        assert_eq!(detect_format("a.json", ""), Format::Json);
        assert_eq!(detect_format("a.csv", ""), Format::Csv);
        assert_eq!(
            detect_format("nofile", "%%MatrixMarket matrix array real general"),
            Format::MatrixMarketArray
        );
        assert_eq!(detect_format("nofile", "{\"rows\":1}"), Format::Json);
        assert_eq!(detect_format("nofile", "1,2\n"), Format::Csv);
    }
}
