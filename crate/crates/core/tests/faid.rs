use faid_core::codes::{build_tanner_155, TannerGraph};
use faid_core::faid::{builtin_rules, Decoder, DecoderConfig, FaidRule, TieBreak};
use proptest::prelude::*;

fn tanner() -> &'static TannerGraph {
    static G: std::sync::OnceLock<TannerGraph> = std::sync::OnceLock::new();
    G.get_or_init(build_tanner_155)
}

fn basis() -> &'static [Vec<u8>] {
    static B: std::sync::OnceLock<Vec<Vec<u8>>> = std::sync::OnceLock::new();
    B.get_or_init(|| tanner().codeword_basis())
}

fn rules() -> &'static [FaidRule] {
    static R: std::sync::OnceLock<Vec<FaidRule>> = std::sync::OnceLock::new();
    R.get_or_init(builtin_rules)
}

fn codeword(mask: &[bool]) -> Vec<u8> {
    let mut w = vec![0u8; 155];
    for (b, _) in basis().iter().zip(mask).filter(|(_, &m)| m) {
        w.iter_mut().zip(b).for_each(|(x, y)| *x ^= y);
    }
    w
}

fn word_from(errors: &[usize]) -> Vec<u8> {
    let mut w = vec![0u8; 155];
    errors.iter().for_each(|&e| w[e] ^= 1);
    w
}

#[test]
fn basis_spans_the_code() {
    assert_eq!(basis().len(), 64);
    assert!(basis().iter().all(|b| tanner().is_codeword(b)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Decoding `c + e` behaves like decoding `e` shifted by `c`.
    #[test]
    fn decoding_commutes_with_codewords(
        mask in prop::collection::vec(any::<bool>(), 64),
        errors in prop::collection::vec(0usize..155, 0..10),
        rule in 0usize..17,
        iters in 0usize..40,
        omega in 1i32..3,
    ) {
        // ties go to the channel so the decision stays symmetric
        let cfg = DecoderConfig { omega, tie: TieBreak::Channel };
        let c = codeword(&mask);
        let e = word_from(&errors);
        let ce: Vec<u8> = c.iter().zip(&e).map(|(a, b)| a ^ b).collect();
        let mut d = Decoder::new(tanner(), cfg).unwrap();
        let r = &rules()[rule];
        let plain = d.decode_bits(r, &e, iters).unwrap();
        let shifted = d.decode_bits(r, &ce, iters).unwrap();
        prop_assert_eq!(plain.converged, shifted.converged);
        prop_assert_eq!(plain.iterations_used, shifted.iterations_used);
        let back: Vec<u8> = shifted.estimate.iter().zip(&c).map(|(a, b)| a ^ b).collect();
        prop_assert_eq!(back, plain.estimate);
    }

    #[test]
    fn converged_estimates_have_zero_syndrome(
        errors in prop::collection::vec(0usize..155, 0..30),
        rule in 0usize..17,
        iters in 0usize..60,
        tie in 0usize..3,
    ) {
        let tie = [TieBreak::Channel, TieBreak::Zero, TieBreak::One][tie];
        let mut d = Decoder::new(tanner(), DecoderConfig { omega: 1, tie }).unwrap();
        let out = d.decode_bits(&rules()[rule], &word_from(&errors), iters).unwrap();
        prop_assert!(out.iterations_used <= iters);
        if out.converged {
            prop_assert!(tanner().is_codeword(&out.estimate));
        }
    }

    #[test]
    fn corrects_agrees_with_decode(errors in prop::collection::btree_set(0usize..155, 1..8), rule in 0usize..17) {
        let errors: Vec<usize> = errors.into_iter().collect();
        let mut d = Decoder::new(tanner(), DecoderConfig::default()).unwrap();
        let r = &rules()[rule];
        let out = d.decode_bits(r, &word_from(&errors), 20).unwrap();
        let ok = out.converged && out.estimate.iter().all(|&b| b == 0);
        prop_assert_eq!(d.corrects(r, &errors, 20).unwrap(), ok);
    }
}
