macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(lucas_terms, "lucas_terms.rs");
example!(effective_bounds, "effective_bounds.rs");
example!(paper_experiment, "paper_experiment.rs");
example!(parametric_families, "parametric_families.rs");
example!(solve_equation, "solve_equation.rs");
example!(verify_report, "verify_report.rs");
example!(oracle_cross_check, "oracle_cross_check.rs");
