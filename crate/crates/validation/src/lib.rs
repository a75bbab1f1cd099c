//! Holds the `acceptance` test target, which runs after the other workspace
//! tests. The library itself is empty.
