//! Data-parallel helpers. With the `parallel` feature they fan out over rayon's
//! pool; without it (or below the size threshold) they run sequentially. Every
//! reduction is an exact sum, so results do not depend on the schedule.

use crate::algebra::Element;
use crate::scalar::Scalar;

/// Below this many work items the sequential path is always taken.
pub const PAR_THRESHOLD: usize = 16;

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}

/// `Σ f(item)` over Elements.
pub fn sum_elements<T, F>(items: &[T], f: F) -> Element
where
    T: Sync,
    F: Fn(&T) -> Element + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() >= PAR_THRESHOLD {
        use rayon::prelude::*;
        return items
            .par_iter()
            .map(&f)
            .reduce(Element::zero, |mut a, b| {
                a.add_assign_element(&b);
                a
            });
    }
    let mut acc = Element::zero();
    for item in items {
        acc.add_assign_element(&f(item));
    }
    acc
}

/// `Σ f(item)` over Scalars.
pub fn sum_scalars<T, F>(items: &[T], f: F) -> Scalar
where
    T: Sync,
    F: Fn(&T) -> Scalar + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if items.len() >= PAR_THRESHOLD {
        use rayon::prelude::*;
        return items.par_iter().map(&f).reduce(Scalar::zero, |a, b| a + b);
    }
    items.iter().map(f).sum()
}

/// Sums `f(i)` for `i` in `0..n`, in parallel when enabled and `force_parallel` or
/// `n` is large. Used by kernels that index work by integer ranges.
pub fn sum_range<F>(n: usize, force_sequential: bool, f: F) -> Scalar
where
    F: Fn(usize) -> Scalar + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if !force_sequential && n > 1 {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(&f).reduce(Scalar::zero, |a, b| a + b);
    }
    let _ = force_sequential;
    (0..n).map(f).sum()
}
