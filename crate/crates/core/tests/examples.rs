// Every runnable example, executed as a test.

macro_rules! example_test {
    ($name:ident, $file:literal) => {
        mod $name {
            include!($file);
        }

        #[test]
        fn $name() {
            $name::run_example().unwrap();
        }
    };
}

example_test!(word_metric, "../examples/word_metric.rs");
example_test!(classify, "../examples/classify.rs");
example_test!(terminal_pairs, "../examples/terminal_pairs.rs");
example_test!(gl_linear, "../examples/gl_linear.rs");
example_test!(weighted_shift, "../examples/weighted_shift.rs");
example_test!(fhc_report, "../examples/fhc_report.rs");
example_test!(chaos_witnesses, "../examples/chaos_witnesses.rs");
example_test!(torsion, "../examples/torsion.rs");
