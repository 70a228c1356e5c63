//! Compiles and runs every Rust listing of the book in `book/src`, so the
//! guide cannot drift from the library.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}

#[doc = include_str!("../../../book/src/canonical.md")]
pub mod canonical {}

#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}

#[doc = include_str!("../../../book/src/characteristics.md")]
pub mod characteristics {}

#[doc = include_str!("../../../book/src/order-lab.md")]
pub mod order_lab {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
