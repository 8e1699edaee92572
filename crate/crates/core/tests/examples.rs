//! Every example in `examples/` must run to completion.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        #[path = $file]
        mod $module;

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(algebra_basics, "../examples/algebra_basics.rs");
example!(polynomial_solutions, "../examples/polynomial_solutions.rs");
example!(singular_solutions, "../examples/singular_solutions.rs");
example!(solution_space, "../examples/solution_space.rs");
example!(cauchy_representation, "../examples/cauchy_representation.rs");
example!(series_expansions, "../examples/series_expansions.rs");
example!(weierstrass_zeta, "../examples/weierstrass_zeta.rs");
