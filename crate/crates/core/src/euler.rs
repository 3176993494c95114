//! The Riemann-Roch bilinear form on sheaf types and the stack dimensions
//! read off from it.
//!
//! `χ(t′, t) = (1 − g)·r′·r + r′·d − r·d′`. No positivity or genus
//! restriction is imposed here; callers enforce theorem hypotheses.

use crate::types::{GenusContext, SheafType};

/// `χ(t1, t2)` evaluated in 128-bit arithmetic.
pub fn euler_form_wide(genus: i64, t1: SheafType, t2: SheafType) -> i128 {
    let (r1, d1) = (t1.rank as i128, t1.degree as i128);
    let (r2, d2) = (t2.rank as i128, t2.degree as i128);
    (1 - genus as i128) * r1 * r2 + r1 * d2 - r2 * d1
}

/// `χ(t1, t2)`.
///
/// Panics if the value leaves `i64`, which cannot happen for types inside
/// the documented input bounds or anything the reduction derives from them.
pub fn euler_form(ctx: GenusContext, t1: SheafType, t2: SheafType) -> i64 {
    i64::try_from(euler_form_wide(ctx.genus(), t1, t2)).expect("Euler form overflows i64")
}

/// Dimension of `Bun_{r,d}`: `−χ(t, t) = (g − 1)·r²`.
pub fn bun_stack_dim(ctx: GenusContext, t: SheafType) -> i64 {
    -euler_form(ctx, t, t)
}

/// Relative dimension of the extension stack over the product of its end terms.
pub fn ext_relative_dim(ctx: GenusContext, t1: SheafType, t2: SheafType) -> i64 {
    -euler_form(ctx, t2, t1)
}

/// Dimension of the stack of extensions `0 → F1 → F → F2 → 0`.
pub fn ext_stack_dim(ctx: GenusContext, t1: SheafType, t2: SheafType) -> i64 {
    -euler_form(ctx, t2, t2) - euler_form(ctx, t2, t1) - euler_form(ctx, t1, t1)
}
