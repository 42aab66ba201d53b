use std::cell::Cell;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

/// Record one prime-field multiplication, squaring or inversion.
#[inline]
pub(crate) fn tick() {
    OPS.with(|c| c.set(c.get().wrapping_add(1)));
}

/// Prime-field multiplications, squarings and inversions performed by this
/// thread so far. Extension-field work is counted through its base-field
/// operations.
pub fn field_ops() -> u64 {
    OPS.with(|c| c.get())
}

pub fn reset_ops() {
    OPS.with(|c| c.set(0));
}

/// Run `f` and report how many field operations it performed.
pub fn count_ops<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let before = field_ops();
    let r = f();
    (r, field_ops().wrapping_sub(before))
}
