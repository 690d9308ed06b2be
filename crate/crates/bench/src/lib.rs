//! Placeholder library; this crate exists to host the criterion benches.
