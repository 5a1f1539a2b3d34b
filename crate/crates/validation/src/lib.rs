//! Holds the `acceptance` test target, which reruns the headline results
//! end to end and prints one line per check. It lives in its own package so
//! it runs after the unit and integration tests of the other crates.
