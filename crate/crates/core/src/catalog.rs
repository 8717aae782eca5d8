//! Built-in loops, group and Chein-loop constructors, and the `.loop` text
//! format.
//!
//! A `.loop` file is UTF-8 text. Lines starting with `#` are comments and
//! may appear anywhere. `name: <text>` and `normalize: true|false` are
//! directives. The first other line holds the order `n`, followed by `n`
//! rows of `n` whitespace-separated labels in `1..=n`; row `x` lists
//! `x·1 … x·n`. Without `normalize: true` the identity must be element 1.
//!
//! ```text
//! # cyclic group of order 3
//! name: Z3
//! 3
//! 1 2 3
//! 2 3 1
//! 3 1 2
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{LoopError, Result};
use crate::inner;
use crate::table::{validate, Element, LoopTable, ValidationReport, ViolationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ExpectedValue {
    Bool(bool),
    Number(u64),
}

impl fmt::Display for ExpectedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpectedValue::Bool(b) => write!(f, "{b}"),
            ExpectedValue::Number(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub value: ExpectedValue,
    pub provenance: Provenance,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub table: LoopTable,
    pub expected: BTreeMap<String, Expected>,
}

impl CatalogEntry {
    pub fn new(key: impl Into<String>, table: LoopTable) -> Self {
        let key = key.into();
        let table = if table.name().is_none() {
            table.with_name(key.clone())
        } else {
            table
        };
        CatalogEntry {
            key,
            table,
            expected: BTreeMap::new(),
        }
    }

    fn expect(mut self, property: &str, value: ExpectedValue, provenance: Provenance) -> Self {
        self.expected
            .insert(property.to_string(), Expected { value, provenance });
        self
    }

    fn expect_bool(self, property: &str, value: bool, provenance: Provenance) -> Self {
        self.expect(property, ExpectedValue::Bool(value), provenance)
    }

    /// Recomputes every expected property.
    pub fn verify(&self) -> Result<()> {
        for (property, expected) in &self.expected {
            let computed = compute_property(&self.table, property)?;
            if computed != expected.value {
                return Err(LoopError::ExpectationMismatch {
                    key: self.key.clone(),
                    property: property.clone(),
                    expected: expected.value.to_string(),
                    computed: computed.to_string(),
                });
            }
        }
        Ok(())
    }

    /// JSON with keys `name`, `order`, `table`, `expected` in that order.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Export<'a> {
            name: &'a str,
            order: usize,
            table: Vec<Vec<Element>>,
            expected: &'a BTreeMap<String, Expected>,
        }
        let export = Export {
            name: self.table.name().unwrap_or(&self.key),
            order: self.table.order(),
            table: self.table.rows(),
            expected: &self.expected,
        };
        serde_json::to_string_pretty(&export).expect("plain data serializes")
    }
}

fn compute_property(l: &LoopTable, property: &str) -> Result<ExpectedValue> {
    use ExpectedValue::{Bool, Number};
    Ok(match property {
        "order" => Number(l.order() as u64),
        "commutative" => Bool(l.is_commutative()),
        "associative" => Bool(l.is_associative()),
        "diassociative" => Bool(l.is_diassociative()),
        "moufang" => Bool(l.is_moufang()),
        "left_automorphic" => Bool(inner::is_left_automorphic(l)),
        "automorphic" => Bool(inner::is_automorphic(l)),
        other => {
            return Err(LoopError::Precondition(format!(
                "unknown catalog property `{other}`"
            )))
        }
    })
}

/// `k·m = ((k−1) + (m−1) mod n) + 1`.
pub fn make_cyclic(n: usize) -> LoopTable {
    assert!(n >= 1, "order must be positive");
    LoopTable::from_fn(n, |a, b| (a - 1 + b - 1) % n + 1)
        .expect("cyclic group table")
        .with_name(format!("Z{n}"))
}

/// Dihedral group of order `n` (even). `r^i s^j` has label `j·(n/2) + i + 1`.
pub fn make_dihedral(n: usize) -> LoopTable {
    assert!(n >= 2 && n.is_multiple_of(2), "dihedral order must be even");
    let m = n / 2;
    let split = |x: Element| ((x - 1) % m, (x - 1) / m);
    LoopTable::from_fn(n, |x, y| {
        let (a, b) = split(x);
        let (c, d) = split(y);
        let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
        ((b + d) % 2) * m + rot + 1
    })
    .expect("dihedral group table")
    .with_name(format!("D{n}"))
}

/// Permutations of `{1,2,3}` in lexicographic order, `(p·q)(i) = p(q(i))`.
pub fn make_symmetric3() -> LoopTable {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() + 1;
    LoopTable::from_fn(6, |x, y| {
        let (p, q) = (perms[x - 1], perms[y - 1]);
        index([p[q[0]], p[q[1]], p[q[2]]])
    })
    .expect("S3 table")
    .with_name("S3")
}

/// Labels `1, −1, i, −i, j, −j, k, −k`.
pub fn make_quaternion8() -> LoopTable {
    // unit index 0..4 = 1, i, j, k; sign bit in the low position
    let unit_product = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, u) | (u, 0) => (false, u),
            (a, b) if a == b => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    LoopTable::from_fn(8, |x, y| {
        let (ua, sa) = ((x - 1) / 2, (x - 1) % 2 == 1);
        let (ub, sb) = ((y - 1) / 2, (y - 1) % 2 == 1);
        let (neg, u) = unit_product(ua, ub);
        let sign = neg ^ sa ^ sb;
        2 * u + usize::from(sign) + 1
    })
    .expect("Q8 table")
    .with_name("Q8")
}

/// Chein doubling `M(G, 2)` on `G × {0, 1}`:
/// `(g,0)(h,0) = (gh,0)`, `(g,0)(h,1) = (hg,1)`, `(g,1)(h,0) = (gh⁻¹,1)`,
/// `(g,1)(h,1) = (h⁻¹g,0)`. `(g, j)` has label `j·|G| + g`.
pub fn make_chein(g: &LoopTable) -> Result<LoopTable> {
    if !g.is_associative() {
        return Err(LoopError::Precondition(format!(
            "{} is not a group",
            g.display_name()
        )));
    }
    let n = g.order();
    let split = |x: Element| ((x - 1) % n + 1, (x - 1) / n);
    let table = LoopTable::from_fn(2 * n, |x, y| {
        let (a, u) = split(x);
        let (b, v) = split(y);
        let inv = |e| g.right_inverse(e);
        match (u, v) {
            (0, 0) => g.mul(a, b),
            (0, 1) => n + g.mul(b, a),
            (1, 0) => n + g.mul(a, inv(b)),
            _ => g.mul(inv(b), a),
        }
    })?
    .with_name(format!("M({},2)", g.display_name()));
    if !table.is_moufang() {
        return Err(LoopError::Internal("Chein loop is not Moufang".into()));
    }
    if !g.is_commutative() && table.is_associative() {
        return Err(LoopError::Internal(
            "Chein loop of a nonabelian group is associative".into(),
        ));
    }
    Ok(table)
}

const Q1_ROWS: [[u8; 16]; 16] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16],
    [2, 4, 8, 6, 3, 1, 5, 7, 14, 9, 16, 10, 11, 12, 13, 15],
    [3, 5, 4, 7, 6, 8, 1, 2, 15, 13, 9, 11, 14, 16, 12, 10],
    [4, 6, 7, 1, 8, 2, 3, 5, 12, 14, 15, 9, 16, 10, 11, 13],
    [5, 7, 2, 8, 4, 3, 6, 1, 13, 11, 14, 16, 12, 15, 10, 9],
    [6, 1, 5, 2, 7, 4, 8, 3, 10, 12, 13, 14, 15, 9, 16, 11],
    [7, 8, 1, 3, 2, 5, 4, 6, 11, 16, 12, 15, 10, 13, 9, 14],
    [8, 3, 6, 5, 1, 7, 2, 4, 16, 15, 10, 13, 9, 11, 14, 12],
    [9, 10, 11, 12, 16, 14, 15, 13, 4, 6, 7, 1, 5, 2, 3, 8],
    [10, 12, 16, 14, 15, 9, 13, 11, 2, 4, 5, 6, 3, 1, 8, 7],
    [11, 13, 12, 15, 10, 16, 9, 14, 3, 8, 4, 7, 6, 5, 1, 2],
    [12, 14, 15, 9, 13, 10, 11, 16, 1, 2, 3, 4, 8, 6, 7, 5],
    [13, 15, 10, 16, 9, 11, 14, 12, 8, 7, 2, 5, 4, 3, 6, 1],
    [14, 9, 13, 10, 11, 12, 16, 15, 6, 1, 8, 2, 7, 4, 5, 3],
    [15, 16, 9, 11, 14, 13, 12, 10, 7, 5, 1, 3, 2, 8, 4, 6],
    [16, 11, 14, 13, 12, 15, 10, 9, 5, 3, 6, 8, 1, 7, 2, 4],
];

const Q2_ROWS: [[u8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, 1, 4, 3, 6, 5, 8, 7],
    [3, 4, 1, 2, 7, 8, 6, 5],
    [4, 3, 2, 1, 8, 7, 5, 6],
    [5, 6, 8, 7, 1, 2, 4, 3],
    [6, 5, 7, 8, 2, 1, 3, 4],
    [7, 8, 5, 6, 3, 4, 2, 1],
    [8, 7, 6, 5, 4, 3, 1, 2],
];

/// A nonassociative, non-Moufang loop of order 5.
const L5_ROWS: [[u8; 5]; 5] = [
    [1, 2, 3, 4, 5],
    [2, 1, 4, 5, 3],
    [3, 5, 1, 2, 4],
    [4, 3, 5, 1, 2],
    [5, 4, 2, 3, 1],
];

fn from_literal<const N: usize>(rows: &[[u8; N]; N], name: &str) -> LoopTable {
    let rows: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as usize).collect())
        .collect();
    LoopTable::from_rows(&rows)
        .expect("built-in table is a loop")
        .with_name(name)
}

/// The order-16 Code loop with the half-automorphism `(5,8)`.
pub fn q1() -> LoopTable {
    from_literal(&Q1_ROWS, "Q1")
}

/// The order-8 automorphic non-Moufang loop with the half-automorphism
/// `(3,5)(4,6)(7,8)`.
pub fn q2() -> LoopTable {
    from_literal(&Q2_ROWS, "Q2")
}

const DIHEDRAL_ORDERS: [usize; 6] = [6, 8, 10, 12, 14, 16];

/// Every built-in key, in a fixed order.
pub fn keys() -> Vec<String> {
    let mut keys: Vec<String> = vec!["Q1".into(), "Q2".into()];
    keys.extend((1..=16).map(|n| format!("Z{n}")));
    keys.extend(DIHEDRAL_ORDERS.iter().map(|n| format!("D{n}")));
    keys.extend(
        ["Q8", "S3", "L5", "M(Z3,2)", "M(S3,2)", "M(D8,2)", "M(Q8,2)"]
            .iter()
            .map(|s| s.to_string()),
    );
    keys
}

/// Looks up a built-in entry and re-verifies its expected properties.
pub fn builtin(key: &str) -> Result<CatalogEntry> {
    use Provenance::{Derived, Paper, Trivial};
    let entry = match key {
        "Q1" => CatalogEntry::new("Q1", q1())
            .expect("order", ExpectedValue::Number(16), Paper)
            .expect_bool("moufang", true, Paper)
            .expect_bool("left_automorphic", true, Paper)
            .expect_bool("automorphic", false, Derived)
            .expect_bool("associative", false, Derived)
            .expect_bool("diassociative", true, Derived),
        "Q2" => CatalogEntry::new("Q2", q2())
            .expect("order", ExpectedValue::Number(8), Paper)
            .expect_bool("automorphic", true, Paper)
            .expect_bool("moufang", false, Paper)
            .expect_bool("associative", false, Derived),
        "L5" => CatalogEntry::new("L5", from_literal(&L5_ROWS, "L5"))
            .expect("order", ExpectedValue::Number(5), Trivial)
            .expect_bool("associative", false, Derived)
            .expect_bool("moufang", false, Derived),
        "Q8" => group_entry("Q8", make_quaternion8(), false),
        "S3" => group_entry("S3", make_symmetric3(), false),
        k if k.starts_with("M(") && k.ends_with(",2)") => {
            let base = &k[2..k.len() - 3];
            let g = builtin(base)?;
            let nonabelian = !g.table.is_commutative();
            CatalogEntry::new(k, make_chein(&g.table)?)
                .expect(
                    "order",
                    ExpectedValue::Number(2 * g.table.order() as u64),
                    Trivial,
                )
                .expect_bool("moufang", true, Derived)
                .expect_bool("associative", !nonabelian, Derived)
        }
        k => match parse_family(k) {
            Some(('Z', n)) if (1..=16).contains(&n) => group_entry(k, make_cyclic(n), true),
            Some(('D', n)) if DIHEDRAL_ORDERS.contains(&n) => {
                group_entry(k, make_dihedral(n), n <= 4)
            }
            _ => return Err(LoopError::UnknownKey(key.to_string())),
        },
    };
    entry.verify()?;
    Ok(entry)
}

fn parse_family(key: &str) -> Option<(char, usize)> {
    let mut chars = key.chars();
    let family = chars.next()?;
    let n = chars.as_str().parse().ok()?;
    Some((family, n))
}

fn group_entry(key: &str, table: LoopTable, abelian: bool) -> CatalogEntry {
    use Provenance::{Derived, Trivial};
    CatalogEntry::new(key, table)
        .expect_bool("associative", true, Trivial)
        .expect_bool("moufang", true, Trivial)
        .expect_bool("automorphic", true, Trivial)
        .expect_bool("commutative", abelian, Derived)
}

/// All built-in entries.
pub fn all() -> Vec<CatalogEntry> {
    keys()
        .iter()
        .map(|k| builtin(k).expect("built-in entry verifies"))
        .collect()
}

/// Options for [`parse_loop_file_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Relabel tables whose identity is not element 1, as if the file said
    /// `normalize: true`.
    pub normalize: bool,
}

pub fn parse_loop_file(text: &str) -> Result<CatalogEntry> {
    parse_loop_file_with(text, ParseOptions::default())
}

#[derive(Debug, Clone)]
struct RowSource {
    line: usize,
    columns: Vec<usize>,
}

pub fn parse_loop_file_with(text: &str, options: ParseOptions) -> Result<CatalogEntry> {
    parse_raw(text, options)?.into_entry()
}

/// A syntactically valid `.loop` file whose table has not been checked yet.
#[derive(Debug, Clone)]
pub struct RawLoopFile {
    pub name: Option<String>,
    pub normalize: bool,
    pub rows: Vec<Vec<usize>>,
    header_line: usize,
    sources: Vec<RowSource>,
}

/// Reads the header, directives and rows without checking the Latin
/// property or the identity.
pub fn parse_raw(text: &str, options: ParseOptions) -> Result<RawLoopFile> {
    let err = |line: usize, column: usize, message: String| LoopError::Parse {
        line,
        column,
        message,
    };
    let mut name: Option<String> = None;
    let mut normalize = options.normalize;
    let mut order: Option<(usize, usize)> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut sources: Vec<RowSource> = Vec::new();
    let mut last_line = 0;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw_line.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("normalize:") {
            normalize = match rest.trim() {
                "true" => true,
                "false" => normalize,
                other => {
                    return Err(err(
                        line_no,
                        line.find("normalize:").unwrap() + 11,
                        format!("normalize expects true or false, got `{other}`"),
                    ))
                }
            };
            continue;
        }
        let tokens: Vec<(usize, &str)> = tokens_with_columns(line);
        match order {
            None => {
                let (col, tok) = tokens[0];
                if tokens.len() != 1 {
                    return Err(err(
                        line_no,
                        tokens[1].0,
                        "malformed header: expected a single order".into(),
                    ));
                }
                match tok.parse::<usize>() {
                    Ok(n) if n >= 1 => order = Some((n, line_no)),
                    _ => {
                        return Err(err(
                            line_no,
                            col,
                            format!("malformed header: `{tok}` is not a positive order"),
                        ))
                    }
                }
            }
            Some((n, _)) => {
                if rows.len() == n {
                    return Err(err(
                        line_no,
                        tokens[0].0,
                        format!("extra line after {n} rows"),
                    ));
                }
                if tokens.len() != n {
                    let column = tokens.get(n).map_or(line.len() + 1, |t| t.0);
                    return Err(err(
                        line_no,
                        column,
                        format!("row has {} entries, expected {n}", tokens.len()),
                    ));
                }
                let mut row = Vec::with_capacity(n);
                for &(col, tok) in &tokens {
                    match tok.parse::<usize>() {
                        Ok(v) if (1..=n).contains(&v) => row.push(v),
                        _ => {
                            return Err(err(
                                line_no,
                                col,
                                format!("entry `{tok}` is not in 1..={n}"),
                            ))
                        }
                    }
                }
                rows.push(row);
                sources.push(RowSource {
                    line: line_no,
                    columns: tokens.iter().map(|t| t.0).collect(),
                });
            }
        }
    }

    let (n, header_line) =
        order.ok_or_else(|| err(last_line.max(1), 1, "missing order line".into()))?;
    if rows.len() < n {
        return Err(err(
            last_line.max(header_line) + 1,
            1,
            format!("truncated table: {} of {n} rows", rows.len()),
        ));
    }

    Ok(RawLoopFile {
        name,
        normalize,
        rows,
        header_line,
        sources,
    })
}

impl RawLoopFile {
    pub fn validation(&self) -> ValidationReport {
        validate(&self.rows)
    }

    /// Line and column of cell `(r, c)` in the source text.
    pub fn position(&self, r: usize, c: usize) -> (usize, usize) {
        let src = &self.sources[r - 1];
        (src.line, src.columns[c - 1])
    }

    /// Checks the table and builds the entry, with positioned diagnostics.
    pub fn into_entry(self) -> Result<CatalogEntry> {
        let err = |line: usize, column: usize, message: String| LoopError::Parse {
            line,
            column,
            message,
        };
        let report = self.validation();
        let RawLoopFile {
            name,
            normalize,
            rows,
            header_line,
            sources,
        } = self;
        if let Some(v) = report.violations.iter().find(|v| {
            matches!(
                v.kind,
                ViolationKind::RowRepeat | ViolationKind::ColumnRepeat
            )
        }) {
            let (r, c) = v.cells[0];
            let what = if v.kind == ViolationKind::RowRepeat {
                "row"
            } else {
                "column"
            };
            return Err(err(
                sources[r - 1].line,
                sources[r - 1].columns[c - 1],
                format!(
                    "not a Latin square: value {} repeated in {what} {} (cell {r},{c})",
                    rows[r - 1][c - 1],
                    if what == "row" { r } else { c }
                ),
            ));
        }
        let table = match report.identity_index {
            None => {
                return Err(err(header_line, 1, "table has no identity element".into()));
            }
            Some(1) => LoopTable::from_rows(&rows)?,
            Some(_) if normalize => LoopTable::from_rows_normalized(&rows)?,
            Some(e) => {
                return Err(err(
                    sources[e - 1].line,
                    1,
                    format!("identity is element {e}, not 1; add `normalize: true`"),
                ))
            }
        };
        let key = name.clone().unwrap_or_else(|| "unnamed".to_string());
        let table = match name {
            Some(nm) => table.with_name(nm),
            None => table,
        };
        Ok(CatalogEntry {
            key,
            table,
            expected: BTreeMap::new(),
        })
    }
}

fn tokens_with_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Canonical `.loop` text: name directive (when named), order, rows.
pub fn write_loop_file(entry: &CatalogEntry) -> String {
    write_table(&entry.table)
}

pub fn write_table(table: &LoopTable) -> String {
    let mut out = String::new();
    if let Some(name) = table.name() {
        out.push_str("name: ");
        out.push_str(name);
        out.push('\n');
    }
    out.push_str(&table.order().to_string());
    out.push('\n');
    for x in table.elements() {
        let row: Vec<String> = table.row(x).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
