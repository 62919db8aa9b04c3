mod common;

use proptest::prelude::*;

use common::{nonmonomial, sparse};
use sigma_forge::report::{emit, parse_poly, run_report, Format, PrimeSelection, ReportOptions, ReportVerdict};

fn vars() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn strength(v: &ReportVerdict) -> u8 {
    match v {
        ReportVerdict::NotApplicable(_) => 0,
        ReportVerdict::Conditional(_) => 1,
        ReportVerdict::NotSelfSimilar => 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_then_parsing_is_identity(f in sparse(2, 6, 4, 50)) {
        let text = f.to_text(&["x", "y"]);
        prop_assert_eq!(parse_poly(&text, &vars()).unwrap(), f, "{}", text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn json_reports_are_deterministic(f in nonmonomial(2, 4, 2, 6)) {
        let options = ReportOptions::default();
        let a = emit(&run_report(&f, &vars(), &options), Format::Json);
        let b = emit(&run_report(&f, &vars(), &options), Format::Json);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn restricting_primes_never_strengthens(f in nonmonomial(2, 4, 2, 6), k in 1usize..=3) {
        let auto = run_report(&f, &vars(), &ReportOptions::default());
        let listed = ReportOptions { primes: PrimeSelection::List([2, 3, 5][..k].to_vec()), rigidity: None };
        let restricted = run_report(&f, &vars(), &listed);
        prop_assert!(strength(&restricted.verdict) <= strength(&auto.verdict));
        prop_assert!(!matches!(restricted.verdict, ReportVerdict::NotSelfSimilar));
    }
}
