//! Diagonal and covering uniformities given by finite bases, and the
//! conversions between them.

use alloc::vec::Vec;

mod cover;
mod diagonal;

pub use cover::{star, Cover, CoverBasis};
pub use diagonal::DiagonalBasis;

pub(crate) fn push_unique<T: PartialEq>(list: &mut Vec<T>, item: T) {
    if !list.contains(&item) {
        list.push(item);
    }
}
