//! The published 7-level rules, `D0..D8` and `D10..D17`.
//!
//! Each row is the upper triangle of the `-C` table, read row by row
//! (`l_11..l_17, l_22..l_27, ..., l_77`). There is no `D9`.

use super::rule::{FaidRule, RuleError};

const UPPER: [(&str, [i8; 28]); 17] = [
    ("D0", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -3, -2, -1, 1, -2, -2, -1, -1, 1, -1, 0, 0, 1, 0, 1, 2, 1, 3, 3]),
    ("D1", [-3, -3, -3, -3, -3, -3, 0, -3, -3, -3, -2, -2, 1, -2, -1, -1, 0, 2, -1, 0, 0, 2, 0, 1, 2, 1, 3, 3]),
    ("D2", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -2, -2, -2, 1, -2, -1, -1, 0, 1, -1, 0, 0, 3, 0, 1, 3, 1, 3, 3]),
    ("D3", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -2, -2, -1, 2, -2, -1, -1, 0, 2, -1, 0, 0, 2, 0, 1, 3, 1, 3, 3]),
    ("D4", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -3, -1, -1, 1, -2, -2, -1, -1, 2, -1, 0, 0, 2, 0, 1, 2, 1, 2, 3]),
    ("D5", [-3, -3, -3, -3, -3, -3, 0, -3, -3, -3, -1, -1, 1, -2, -2, -1, -1, 2, -1, 0, 0, 2, 0, 1, 2, 1, 2, 3]),
    ("D6", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -3, -2, -1, 1, -2, -2, -1, 1, 2, -1, 0, 1, 2, 0, 1, 2, 1, 2, 3]),
    ("D7", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -3, -3, -1, 1, -2, -2, -1, -1, 1, -1, -1, 0, 3, 0, 1, 3, 2, 3, 3]),
    ("D8", [-3, -3, -3, -3, -3, -3, 0, -3, -3, -3, -3, -1, 1, -2, -1, -1, 0, 2, -1, 0, 0, 2, 1, 1, 2, 3, 3, 3]),
    ("D10", [-3, -3, -3, -3, -2, -2, 0, -3, -3, -3, -2, -1, 2, -3, -2, -1, -1, 2, -1, 0, 1, 2, 1, 1, 3, 1, 3, 3]),
    ("D11", [-3, -3, -3, -3, -3, -2, -1, -3, -3, -1, -1, -1, 1, -3, -1, 0, 0, 2, -1, 1, 2, 3, 2, 3, 3, 3, 3, 3]),
    ("D12", [-3, -3, -3, -3, -3, -2, 0, -3, -3, -3, -2, 0, 2, -3, -3, 0, 1, 2, -1, 1, 2, 3, 1, 2, 3, 2, 3, 3]),
    ("D13", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -2, -2, 0, 1, -3, -2, -2, 0, 2, -2, 0, 2, 2, 2, 2, 3, 3, 3, 3]),
    ("D14", [-3, -3, -3, -3, -3, -2, -1, -3, -3, -2, -2, 0, 1, -2, -2, -1, 1, 2, -2, -1, 1, 2, 0, 2, 3, 3, 3, 3]),
    ("D15", [-3, -3, -3, -2, -2, -2, -1, -3, -3, -2, -2, 0, 2, -3, -2, -2, 1, 2, -2, -1, 1, 3, 0, 2, 3, 3, 3, 3]),
    ("D16", [-3, -3, -3, -3, -3, -3, -1, -3, -3, -3, -3, -2, 1, -3, -3, 0, 1, 1, -1, 1, 1, 2, 1, 1, 2, 2, 2, 3]),
    ("D17", [-3, -3, -3, -2, -2, -1, 0, -3, -3, -2, -2, -1, 2, -3, -2, -1, 1, 2, -2, 1, 1, 3, 1, 2, 3, 2, 3, 3]),
];

/// The bundled rule files, in the same order as [`builtin_rules`].
pub const RULE_FILES: [(&str, &str); 17] = [
    ("D0", include_str!("../../rules/D0.rule")),
    ("D1", include_str!("../../rules/D1.rule")),
    ("D2", include_str!("../../rules/D2.rule")),
    ("D3", include_str!("../../rules/D3.rule")),
    ("D4", include_str!("../../rules/D4.rule")),
    ("D5", include_str!("../../rules/D5.rule")),
    ("D6", include_str!("../../rules/D6.rule")),
    ("D7", include_str!("../../rules/D7.rule")),
    ("D8", include_str!("../../rules/D8.rule")),
    ("D10", include_str!("../../rules/D10.rule")),
    ("D11", include_str!("../../rules/D11.rule")),
    ("D12", include_str!("../../rules/D12.rule")),
    ("D13", include_str!("../../rules/D13.rule")),
    ("D14", include_str!("../../rules/D14.rule")),
    ("D15", include_str!("../../rules/D15.rule")),
    ("D16", include_str!("../../rules/D16.rule")),
    ("D17", include_str!("../../rules/D17.rule")),
];

pub fn builtin_rules() -> Vec<FaidRule> {
    UPPER
        .iter()
        .map(|(id, up)| FaidRule::from_upper_triangle(*id, 3, up).expect("28 entries"))
        .collect()
}

/// Looks up a bundled rule by id (`"D0"`, case-insensitive).
pub fn builtin(id: &str) -> Result<FaidRule, RuleError> {
    builtin_rules()
        .into_iter()
        .find(|r| r.id().eq_ignore_ascii_case(id))
        .ok_or_else(|| RuleError::Unknown(id.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faid::rule::{validate_rule, ChannelValue, MessageLevel};

    #[test]
    fn seventeen_rules_all_valid() {
        let rules = builtin_rules();
        assert_eq!(rules.len(), 17);
        for r in &rules {
            let rep = validate_rule(r);
            assert!(rep.passed(), "{}:\n{rep}", r.id());
        }
    }

    #[test]
    fn spot_entries() {
        assert_eq!(builtin("D13").unwrap().entry(3, 3), -2);
        assert_eq!(builtin("D1").unwrap().entry(0, 6), 0);
        let d0 = builtin("d0").unwrap();
        assert_eq!(d0.phi_v(ChannelValue::Minus, MessageLevel(-3), MessageLevel(-3)), MessageLevel(-3));
        assert_eq!(d0.phi_v(ChannelValue::Minus, MessageLevel(0), MessageLevel(0)), MessageLevel(-1));
        assert_eq!(d0.phi_v(ChannelValue::Plus, MessageLevel(0), MessageLevel(0)), MessageLevel(1));
        assert!(builtin("D9").is_err());
    }

    #[test]
    fn files_match_compiled_tables() {
        for ((id, text), rule) in RULE_FILES.iter().zip(builtin_rules()) {
            assert_eq!(*id, rule.id());
            assert_eq!(FaidRule::parse(*id, text).unwrap(), rule);
        }
    }

    #[test]
    fn broken_monotonicity_is_caught() {
        let mut d0 = builtin("D0").unwrap();
        d0.set_entry(0, 0, 3);
        let rep = validate_rule(&d0);
        assert!(!rep.monotone());
        assert!(rep.decreasing.contains(&((0, 0), (0, 1))));
    }

    #[test]
    fn phi_v_channel_symmetry() {
        for r in builtin_rules() {
            for a in -3..=3 {
                for b in -3..=3 {
                    let (a, b) = (MessageLevel(a), MessageLevel(b));
                    assert_eq!(r.phi_v(ChannelValue::Plus, a, b), -r.phi_v(ChannelValue::Minus, -a, -b));
                }
            }
        }
    }
}
