use std::fmt::Write as _;
use std::sync::Arc;

use super::cycles::{type_label, CycleInventory};
use crate::codes::TannerGraph;

/// Topological type shared by all members of an orbit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TsType {
    pub a: usize,
    pub b: usize,
    pub inventory: CycleInventory,
    pub label: String,
}

impl TsType {
    pub fn new(a: usize, b: usize, inventory: CycleInventory) -> Self {
        let label = type_label(a, b, &inventory);
        Self { a, b, inventory, label }
    }
}

/// A variable-node subset together with its `(a,b)` parameters and cycle
/// inventory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TrappingSet {
    vars: Vec<usize>,
    kind: Arc<TsType>,
}

impl TrappingSet {
    pub(crate) fn new(mut vars: Vec<usize>, kind: Arc<TsType>) -> Self {
        vars.sort_unstable();
        debug_assert_eq!(vars.len(), kind.a);
        Self { vars, kind }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }
    pub fn a(&self) -> usize {
        self.kind.a
    }
    pub fn b(&self) -> usize {
        self.kind.b
    }
    pub fn inventory(&self) -> &CycleInventory {
        &self.kind.inventory
    }
    pub fn type_label(&self) -> &str {
        &self.kind.label
    }
    pub fn kind(&self) -> &Arc<TsType> {
        &self.kind
    }
}

/// Degrees of every check touched by `vset` in its induced subgraph.
pub fn induced_check_degrees(g: &TannerGraph, vset: &[usize]) -> std::collections::BTreeMap<usize, usize> {
    let mut deg = std::collections::BTreeMap::new();
    for &v in vset {
        for &c in g.var_neighbors(v) {
            *deg.entry(c).or_insert(0) += 1;
        }
    }
    deg
}

/// `(a, b, elementary)` for an arbitrary variable set.
pub fn ab_parameters(g: &TannerGraph, vset: &[usize]) -> (usize, usize, bool) {
    let deg = induced_check_degrees(g, vset);
    let b = deg.values().filter(|&&d| d % 2 == 1).count();
    let elementary = deg.values().all(|&d| d <= 2);
    (vset.len(), b, elementary)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TsFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// One line per set: `a b type_label v_1 .. v_a`.
pub fn write_ts_list<'a>(sets: impl IntoIterator<Item = &'a TrappingSet>) -> String {
    let mut out = String::new();
    for ts in sets {
        write!(out, "{} {} {}", ts.a(), ts.b(), ts.type_label()).unwrap();
        for v in ts.vars() {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a TS list; inventories are recovered from the type labels.
pub fn parse_ts_list(text: &str) -> Result<Vec<TrappingSet>, TsFileError> {
    let mut interned: std::collections::HashMap<String, Arc<TsType>> = Default::default();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let err = |msg: String| TsFileError::Parse { line, msg };
        let mut toks = raw.split_whitespace();
        let mut int = |what: &str| -> Result<usize, TsFileError> {
            let t = toks.next().ok_or_else(|| err(format!("missing {what}")))?;
            t.parse().map_err(|_| err(format!("bad {what} {t:?}")))
        };
        let a = int("a")?;
        let b = int("b")?;
        let label = toks.next().ok_or_else(|| err("missing type label".into()))?.to_string();
        let vars = toks
            .map(|t| t.parse::<usize>().map_err(|_| err(format!("bad variable index {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if vars.len() != a {
            return Err(err(format!("expected {a} variables, found {}", vars.len())));
        }
        let kind = match interned.get(&label) {
            Some(k) => k.clone(),
            None => {
                let inventory = parse_label(&label).ok_or_else(|| err(format!("bad type label {label:?}")))?;
                let kind = Arc::new(TsType::new(a, b, inventory));
                if kind.label != label {
                    return Err(err(format!("label {label:?} disagrees with a={a}, b={b}")));
                }
                interned.insert(label, kind.clone());
                kind
            }
        };
        out.push(TrappingSet::new(vars, kind));
    }
    Ok(out)
}

fn parse_label(label: &str) -> Option<CycleInventory> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let (_, cycles) = inner.split_once(';')?;
    if cycles.is_empty() {
        return Some(CycleInventory::new());
    }
    cycles
        .split('·')
        .map(|term| {
            let (len, g) = term.split_once('^')?;
            Some((len.parse().ok()?, g.parse().ok()?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ts_list_round_trip() {
        let kind = Arc::new(TsType::new(5, 3, CycleInventory::from([(8, 3)])));
        let sets = vec![TrappingSet::new(vec![9, 1, 4, 30, 77], kind)];
        let text = write_ts_list(&sets);
        assert_eq!(text, "5 3 (5,3;8^3) 1 4 9 30 77\n");
        assert_eq!(parse_ts_list(&text).unwrap(), sets);
    }

    #[test]
    fn ts_list_rejects_wrong_arity() {
        let err = parse_ts_list("5 3 (5,3;8^3) 1 2 3\n").unwrap_err();
        assert!(matches!(err, TsFileError::Parse { line: 1, .. }));
    }
}
