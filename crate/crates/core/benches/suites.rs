//! Placeholder; filled in once the verification suites exist.
fn main() {}
