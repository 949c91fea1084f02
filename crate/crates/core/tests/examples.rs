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

example!(motzkin_powers, "motzkin_powers.rs");
example!(bareiss_oracle, "bareiss_oracle.rs");
example!(tau_chain, "tau_chain.rs");
example!(tau_determinants, "tau_determinants.rs");
example!(fit_closed_forms, "fit_closed_forms.rs");
example!(verify_closed_forms, "verify_closed_forms.rs");
example!(conjectures, "conjectures.rs");
example!(parametric_families, "parametric_families.rs");
example!(custom_equation, "custom_equation.rs");
example!(cli_reports, "cli_reports.rs");
