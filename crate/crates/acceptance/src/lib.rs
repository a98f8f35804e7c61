// SPDX-License-Identifier: Apache-2.0

//! Holds the `acceptance` test target, which prints one pass/fail line per
//! criterion. Run it with `cargo test -p lab-acceptance --test acceptance`.
