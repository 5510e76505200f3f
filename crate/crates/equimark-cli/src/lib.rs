//! Shared implementation for the `equimark` binary.
//!
//! The binary's `selftest` subcommand and the crate's integration tests
//! run the same [`acceptance`] suite, so the command-line verdict can
//! never drift from what the tests assert.

pub mod acceptance;
