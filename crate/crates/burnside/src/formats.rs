//! Text formats: group specs, table of marks files, result rendering.
//!
//! Group specs name the built-in families: `C<n>`, `S<n>`, `A<n>`, `D<n>`
//! (dihedral of even order n), `Q8`, `SL2_<p>`, products joined with `x`,
//! and `gens:<path>` for a generator file. A spec starting with `gens:`
//! treats the whole remainder as the path, so paths may contain `x`;
//! generator files cannot appear inside products.
//!
//! Tables of marks are read and written in two formats: a nested bracket
//! list of the lower-triangular rows, like `[[6],[3,3],[2,0,2],[1,1,1,1]]`,
//! and a JSON document `{"name": ..., "order": ..., "marks": [[...]]}` with
//! `name` optional. Both parse into validated [`TableOfMarks`] values.
//!
//! Results render either as a human-readable report, optionally with the
//! full gluing trace, or as a single JSON line
//! `{"L":[...],"components":[[...]],"chi":...}`. Classes are printed
//! 1-based in every textual form.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::ComponentInvariant;
use crate::group::GroupSpec;
use crate::marks::TableOfMarks;

impl fmt::Display for GroupSpec {
    /// Canonical spec text. Nested products flatten: reparsing yields a
    /// single flat product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::DihedralOfOrder(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::SpecialLinear2(p) => write!(f, "SL2_{p}"),
            GroupSpec::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            GroupSpec::GeneratorFile(path) => write!(f, "gens:{}", path.display()),
        }
    }
}

/// Parses a group spec string. Error positions are byte offsets into the
/// original text.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let err = |pos: usize, msg: &str| Error::SpecSyntax {
        pos,
        msg: msg.into(),
    };
    let start = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.is_empty() {
        return Err(err(start, "empty group spec"));
    }
    if let Some(path) = body.strip_prefix("gens:") {
        if path.is_empty() {
            return Err(err(start + 5, "missing generator file path"));
        }
        return Ok(GroupSpec::GeneratorFile(PathBuf::from(path)));
    }
    let mut factors = Vec::new();
    let mut offset = start;
    for part in body.split('x') {
        factors.push(parse_atom(part, offset)?);
        offset += part.len() + 1;
    }
    Ok(if factors.len() == 1 {
        factors.pop().expect("one factor")
    } else {
        GroupSpec::Product(factors)
    })
}

fn parse_atom(part: &str, offset: usize) -> Result<GroupSpec> {
    let err = |pos: usize, msg: String| Error::SpecSyntax { pos, msg };
    if part.is_empty() {
        return Err(err(offset, "empty product factor".into()));
    }
    if part.starts_with("gens:") {
        return Err(err(
            offset,
            "generator files cannot appear inside products".into(),
        ));
    }
    let spec = if part == "Q8" {
        GroupSpec::Quaternion8
    } else if let Some(digits) = part.strip_prefix("SL2_") {
        GroupSpec::SpecialLinear2(parse_number(digits, offset + 4)?)
    } else {
        let mut chars = part.chars();
        let family = chars.next().expect("nonempty");
        let digits = chars.as_str();
        let n = parse_number(digits, offset + family.len_utf8())?;
        match family {
            'C' => GroupSpec::Cyclic(n),
            'S' => GroupSpec::Symmetric(n),
            'A' => GroupSpec::Alternating(n),
            'D' => GroupSpec::DihedralOfOrder(n),
            _ => {
                return Err(err(offset, format!("unrecognized group {part:?}")));
            }
        }
    };
    spec.validate().map_err(|e| err(offset, e.to_string()))?;
    Ok(spec)
}

fn parse_number(digits: &str, offset: usize) -> Result<u64> {
    let err = |msg: String| Error::SpecSyntax { pos: offset, msg };
    if digits.is_empty() {
        return Err(err("missing number".into()));
    }
    if let Some(bad) = digits.find(|c: char| !c.is_ascii_digit()) {
        return Err(Error::SpecSyntax {
            pos: offset + bad,
            msg: format!("unexpected character {:?}", &digits[bad..bad + 1]),
        });
    }
    digits
        .parse()
        .map_err(|_| err(format!("number {digits} too large")))
}

/// Parses a table of marks from a nested bracket list.
pub fn parse_gap_tom(text: &str) -> Result<TableOfMarks> {
    let mut scanner = Scanner::new(text);
    scanner.skip_ws();
    scanner.expect('[')?;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    scanner.skip_ws();
    if !scanner.eat(']') {
        loop {
            rows.push(scanner.row()?);
            scanner.skip_ws();
            if scanner.eat(']') {
                break;
            }
            scanner.expect(',')?;
        }
    }
    scanner.skip_ws();
    if let Some(c) = scanner.peek() {
        return Err(scanner.error(format!("unexpected {c:?} after the table")));
    }
    TableOfMarks::from_rows(None, rows)
}

/// Renders a table of marks as a single-line nested bracket list. The
/// table's name, if any, is not representable in this format.
pub fn render_gap_tom(tom: &TableOfMarks) -> String {
    let mut out = String::from("[");
    for (i, row) in tom.rows().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for (j, mark) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&mark.to_string());
        }
        out.push(']');
    }
    out.push(']');
    out
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            bytes: text.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn error(&self, msg: String) -> Error {
        Error::TomSyntax {
            line: self.line,
            col: self.col,
            msg,
        }
    }

    fn peek(&self) -> Option<char> {
        self.bytes.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) {
        if self.bytes[self.pos] == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, expected: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == expected => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {expected:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {expected:?}, found end of input"))),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return match self.peek() {
                Some(c) => Err(self.error(format!("expected a mark, found {c:?}"))),
                None => Err(self.error("expected a mark, found end of input".into())),
            };
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("digits");
        text.parse()
            .map_err(|_| self.error(format!("mark {text} too large")))
    }

    fn row(&mut self) -> Result<Vec<u64>> {
        self.skip_ws();
        self.expect('[')?;
        let mut row = Vec::new();
        self.skip_ws();
        if self.eat(']') {
            return Ok(row);
        }
        loop {
            self.skip_ws();
            row.push(self.number()?);
            self.skip_ws();
            if self.eat(']') {
                return Ok(row);
            }
            self.expect(',')?;
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TomJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    name: Option<String>,
    order: u64,
    marks: Vec<Vec<u64>>,
}

/// Parses a table of marks from its JSON document form.
pub fn read_json_tom(text: &str) -> Result<TableOfMarks> {
    let doc: TomJson = serde_json::from_str(text).map_err(|e| Error::TomJson(e.to_string()))?;
    let declared = doc.order;
    let tom = TableOfMarks::from_rows(doc.name, doc.marks)?;
    if tom.group_order() != declared {
        return Err(Error::InvalidTom(format!(
            "declared order {declared} does not match the table order {}",
            tom.group_order()
        )));
    }
    Ok(tom)
}

/// Renders a table of marks as a canonical pretty-printed JSON document.
pub fn write_json_tom(tom: &TableOfMarks) -> String {
    let doc = TomJson {
        name: tom.name().map(str::to_owned),
        order: tom.group_order(),
        marks: tom.rows().to_vec(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("tables serialize");
    out.push('\n');
    out
}

/// Parses a table of marks, deciding the format by content: documents
/// starting with `{` are JSON, everything else is the bracket format.
pub fn parse_tom_auto(text: &str) -> Result<TableOfMarks> {
    if text.trim_start().starts_with('{') {
        read_json_tom(text)
    } else {
        parse_gap_tom(text)
    }
}

/// Formats ranks as `[r1,r2,...]`.
pub fn format_ranks(ranks: &[u64]) -> String {
    let inner: Vec<String> = ranks.iter().map(u64::to_string).collect();
    format!("[{}]", inner.join(","))
}

/// Formats class blocks 1-based as `[[1,2],[3]]`, preserving block and
/// member order.
pub fn format_blocks(blocks: &[Vec<usize>]) -> String {
    let inner: Vec<String> = blocks
        .iter()
        .map(|block| {
            let members: Vec<String> = block.iter().map(|c| (c + 1).to_string()).collect();
            format!("[{}]", members.join(","))
        })
        .collect();
    format!("[{}]", inner.join(","))
}

/// Context lines for a human-readable report.
pub struct ReportContext {
    /// First line, e.g. `group: C6` or `table: marks.json`.
    pub source: String,
    /// Extra name line for tables that carry one.
    pub name: Option<String>,
    pub order: u64,
    pub class_count: usize,
    /// How the prime partitions were obtained.
    pub method: String,
    pub show_trace: bool,
}

/// Renders the full human-readable report.
pub fn render_human(invariant: &ComponentInvariant, ctx: &ReportContext) -> String {
    let mut out = String::new();
    out.push_str(&ctx.source);
    out.push('\n');
    if let Some(name) = &ctx.name {
        out.push_str(&format!("name: {name}\n"));
    }
    out.push_str(&format!("order: {}\n", ctx.order));
    out.push_str(&format!("classes: {}\n", ctx.class_count));
    out.push_str(&format!("method: {}\n", ctx.method));
    if ctx.show_trace {
        out.push_str("trace:\n");
        out.push_str(&render_trace(invariant));
    }
    out.push_str(&format!("L = {}\n", format_ranks(&invariant.ranks())));
    out.push_str(&format!(
        "components = {}\n",
        format_blocks(&invariant.components())
    ));
    out.push_str(&format!("chi = {}\n", invariant.chi()));
    out
}

/// Renders the gluing walk, one record per line: the starting state and
/// then one record per processed class. States show the walk order, so
/// component members appear in gluing order, not sorted.
pub fn render_trace(invariant: &ComponentInvariant) -> String {
    let s = invariant.class_count();
    let mut out = format!(
        "  (1) start: L = [0], C = {}\n",
        format_blocks(&[vec![s - 1]])
    );
    for (i, step) in invariant.steps().iter().enumerate() {
        let state = format!(
            "chi {} -> {}, L = {}, C = {}",
            step.chi_before,
            step.chi_after,
            format_ranks(&step.ranks_after),
            format_blocks(&step.components_after),
        );
        if step.primes.is_empty() {
            out.push_str(&format!(
                "  ({}) class {}: diag = 1, isolated, {state}\n",
                i + 2,
                step.class_index + 1,
            ));
        } else {
            let blocks: Vec<String> = step
                .extension_blocks
                .iter()
                .map(|(p, block)| format!("E_{p} = {}", format_blocks(std::slice::from_ref(block))))
                .collect();
            out.push_str(&format!(
                "  ({}) class {}: diag = {}, P = {}, {}, merged = {}, N = {}, {state}\n",
                i + 2,
                step.class_index + 1,
                step.diagonal,
                format_ranks(&step.primes),
                blocks.join(", "),
                format_blocks(&step.merged_blocks),
                step.new_rank,
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct ResultJson {
    #[serde(rename = "L")]
    l: Vec<u64>,
    components: Vec<Vec<usize>>,
    chi: i64,
}

/// Renders the result as one JSON line with 1-based class numbers.
pub fn render_json(invariant: &ComponentInvariant) -> String {
    let doc = ResultJson {
        l: invariant.ranks(),
        components: invariant
            .components()
            .into_iter()
            .map(|block| block.into_iter().map(|c| c + 1).collect())
            .collect(),
        chi: invariant.chi(),
    };
    serde_json::to_string(&doc).expect("results serialize")
}
