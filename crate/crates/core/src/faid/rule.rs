use std::fmt;

/// A message level `-s..=s`, standing for `-L_s..-L_1, 0, L_1..L_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MessageLevel(pub i8);

impl MessageLevel {
    pub const ZERO: Self = Self(0);

    pub fn value(self) -> i8 {
        self.0
    }
    pub fn magnitude(self) -> i8 {
        self.0.abs()
    }
}

impl std::ops::Neg for MessageLevel {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl fmt::Display for MessageLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            v if v < 0 => write!(f, "-L{}", -v),
            v => write!(f, "+L{v}"),
        }
    }
}

/// Channel value on the BSC: bit 0 is received as `+C`, bit 1 as `-C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelValue {
    Plus,
    Minus,
}

impl ChannelValue {
    pub fn from_bit(bit: u8) -> Self {
        if bit == 0 {
            Self::Plus
        } else {
            Self::Minus
        }
    }
    pub fn sign(self) -> i8 {
        match self {
            Self::Plus => 1,
            Self::Minus => -1,
        }
    }
}

/// Check-node update: product of signs times the smallest magnitude.
pub fn phi_c(msgs: &[MessageLevel]) -> MessageLevel {
    if msgs.is_empty() {
        return MessageLevel::ZERO;
    }
    let mut neg = false;
    let mut min = i8::MAX;
    for m in msgs {
        neg ^= m.0 < 0;
        min = min.min(m.0.abs());
    }
    MessageLevel(if neg { -min } else { min })
}

/// Variable-node update map of a FAID with `2s+1` levels and column weight 3.
///
/// Only the `-C` half is stored. `lut[i][j]` is the output for incoming
/// messages `i - s` and `j - s`; the `+C` half is `-lut[2s-i][2s-j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaidRule {
    id: String,
    s: u8,
    lut: Vec<i8>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("table has {found} entries, expected {expected}")]
    Size { expected: usize, found: usize },
    #[error("unknown rule {0:?}")]
    Unknown(String),
}

impl FaidRule {
    /// Builds a rule from a full `(2s+1) x (2s+1)` table in row-major order.
    pub fn from_table(id: impl Into<String>, s: u8, lut: Vec<i8>) -> Result<Self, RuleError> {
        let n = 2 * s as usize + 1;
        if lut.len() != n * n {
            return Err(RuleError::Size { expected: n * n, found: lut.len() });
        }
        Ok(Self { id: id.into(), s, lut })
    }

    /// Builds a symmetric rule from its upper triangle, row by row
    /// (`l_11 .. l_1n, l_22 .. l_2n, ..`).
    pub fn from_upper_triangle(id: impl Into<String>, s: u8, upper: &[i8]) -> Result<Self, RuleError> {
        let n = 2 * s as usize + 1;
        let expected = n * (n + 1) / 2;
        if upper.len() != expected {
            return Err(RuleError::Size { expected, found: upper.len() });
        }
        let mut lut = vec![0; n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i..n {
                let v = *it.next().unwrap();
                lut[i * n + j] = v;
                lut[j * n + i] = v;
            }
        }
        Ok(Self { id: id.into(), s, lut })
    }

    pub fn id(&self) -> &str {
        &self.id
    }
    pub fn s(&self) -> u8 {
        self.s
    }
    /// Alphabet size `2s+1`.
    pub fn levels(&self) -> usize {
        2 * self.s as usize + 1
    }
    pub fn table(&self) -> &[i8] {
        &self.lut
    }

    /// Table entry for row `i`, column `j` (0-based, row 0 is `-L_s`).
    pub fn entry(&self, i: usize, j: usize) -> i8 {
        self.lut[i * self.levels() + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: i8) {
        let n = self.levels();
        self.lut[i * n + j] = v;
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    fn idx(&self, m: MessageLevel) -> usize {
        (m.0 + self.s as i8) as usize
    }

    /// Variable-node update for channel value `y` and incoming `m1`, `m2`.
    pub fn phi_v(&self, y: ChannelValue, m1: MessageLevel, m2: MessageLevel) -> MessageLevel {
        match y {
            ChannelValue::Minus => MessageLevel(self.entry(self.idx(m1), self.idx(m2))),
            ChannelValue::Plus => MessageLevel(-self.entry(self.idx(-m1), self.idx(-m2))),
        }
    }

    /// Text form: `levels N` followed by N rows of N integers.
    pub fn to_text(&self) -> String {
        let n = self.levels();
        let mut out = format!("levels {n}\n");
        for row in self.lut.chunks(n) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>2}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse(id: impl Into<String>, text: &str) -> Result<Self, RuleError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(RuleError::Parse { line: 1, msg: "empty rule file".into() })?;
        let n: usize = header
            .strip_prefix("levels")
            .and_then(|r| r.trim().parse().ok())
            .filter(|n| n % 2 == 1)
            .ok_or_else(|| RuleError::Parse { line, msg: format!("expected `levels <odd N>`, found {header:?}") })?;
        let s = (n / 2) as i8;
        let mut lut = Vec::with_capacity(n * n);
        for r in 0..n {
            let (line, row) = lines
                .next()
                .ok_or(RuleError::Parse { line: line + r + 1, msg: format!("missing table row {}", r + 1) })?;
            let vals = row
                .split_whitespace()
                .map(|t| t.parse::<i8>().map_err(|_| RuleError::Parse { line, msg: format!("bad entry {t:?}") }))
                .collect::<Result<Vec<_>, _>>()?;
            if vals.len() != n {
                return Err(RuleError::Parse { line, msg: format!("expected {n} entries, found {}", vals.len()) });
            }
            if let Some(v) = vals.iter().find(|v| v.abs() > s) {
                return Err(RuleError::Parse { line, msg: format!("entry {v} outside -{s}..={s}") });
            }
            lut.extend(vals);
        }
        if let Some((line, _)) = lines.next() {
            return Err(RuleError::Parse { line, msg: "trailing content after table".into() });
        }
        Self::from_table(id, s as u8, lut)
    }
}

/// Outcome of the structural checks on a rule table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Cells `(i, j)`, `i < j`, with `lut[i][j] != lut[j][i]`.
    pub asymmetric: Vec<(usize, usize)>,
    /// Adjacent cells `(i, j) -> (i', j')` along a row or column where the
    /// table decreases.
    pub decreasing: Vec<((usize, usize), (usize, usize))>,
    /// Cells outside the alphabet.
    pub out_of_range: Vec<(usize, usize)>,
}

impl ValidationReport {
    pub fn symmetric(&self) -> bool {
        self.asymmetric.is_empty()
    }
    pub fn monotone(&self) -> bool {
        self.decreasing.is_empty()
    }
    pub fn in_range(&self) -> bool {
        self.out_of_range.is_empty()
    }
    /// The `+C` half is derived from the stored `-C` half, so channel
    /// symmetry holds for every table.
    pub fn channel_symmetric(&self) -> bool {
        true
    }
    pub fn passed(&self) -> bool {
        self.symmetric() && self.monotone() && self.in_range()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "message symmetry   {}", mark(self.symmetric()))?;
        for (i, j) in &self.asymmetric {
            writeln!(f, "  l[{}][{}] != l[{}][{}]", i + 1, j + 1, j + 1, i + 1)?;
        }
        writeln!(f, "channel symmetry   ok (derived)")?;
        writeln!(f, "monotonicity       {}", mark(self.monotone()))?;
        for ((i, j), (k, l)) in &self.decreasing {
            writeln!(f, "  l[{}][{}] > l[{}][{}]", i + 1, j + 1, k + 1, l + 1)?;
        }
        writeln!(f, "range              {}", mark(self.in_range()))?;
        for (i, j) in &self.out_of_range {
            writeln!(f, "  l[{}][{}] outside alphabet", i + 1, j + 1)?;
        }
        Ok(())
    }
}

pub fn validate_rule(rule: &FaidRule) -> ValidationReport {
    let n = rule.levels();
    let s = rule.s() as i8;
    let mut rep = ValidationReport::default();
    for i in 0..n {
        for j in 0..n {
            let v = rule.entry(i, j);
            if i < j && v != rule.entry(j, i) {
                rep.asymmetric.push((i, j));
            }
            if v.abs() > s {
                rep.out_of_range.push((i, j));
            }
            if i + 1 < n && rule.entry(i + 1, j) < v {
                rep.decreasing.push(((i, j), (i + 1, j)));
            }
            if j + 1 < n && rule.entry(i, j + 1) < v {
                rep.decreasing.push(((i, j), (i, j + 1)));
            }
        }
    }
    rep
}
