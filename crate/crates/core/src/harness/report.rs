use std::fmt::Write;

use super::{FerPoint, GuaranteeVerdict};
use crate::diversity::StageReport;

/// One row per stage and crossover probability.
pub fn fer_csv(points: &[FerPoint]) -> String {
    let mut s = String::from("alpha,stage,frames,frame_errors,fer,ci_low,ci_high\n");
    for p in points {
        for (i, label) in p.labels.iter().enumerate() {
            let (lo, hi) = p.interval(i);
            writeln!(s, "{},{},{},{},{:.6e},{:.6e},{:.6e}", p.alpha, label, p.frames, p.errors[i], p.fer(i), lo, hi).unwrap();
        }
    }
    s
}

pub fn guarantee_csv(verdicts: &[GuaranteeVerdict]) -> String {
    let mut s = String::from("t,mode,checked,represented,failures,failing_represented,passed\n");
    for v in verdicts {
        writeln!(
            s,
            "{},{},{},{},{},{},{}",
            v.t,
            v.mode,
            v.checked,
            v.represented,
            v.failures.len(),
            v.failing_represented,
            v.passed()
        )
        .unwrap();
    }
    s
}

/// Uncorrected patterns remaining after each selected rule.
pub fn selection_csv(stages: &[StageReport], rule_ids: &[String]) -> String {
    let mut s = String::from("k,error_set,step,rule,gain,remaining\n");
    for st in stages {
        writeln!(s, "{},{},0,,,{}", st.k, st.label, st.initial_residual).unwrap();
        for (i, p) in st.picks.iter().enumerate() {
            writeln!(s, "{},{},{},{},{},{}", st.k, st.label, i + 1, rule_ids[p.decoder], p.gain, p.remaining).unwrap();
        }
    }
    s
}
