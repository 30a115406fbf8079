//! Exact permanents.
//!
//! Ryser's inclusion-exclusion formula walked in Gray-code order costs
//! `O(2^n · n)` scalar operations. The parallel variant cuts the Gray-code
//! sequence into blocks, seeds each block's row sums directly and sums the
//! blocks' exact contributions. The naive permutation sum is kept as an oracle.

use std::fmt;

use crate::error::Error;
use crate::par;
use crate::scalar::Scalar;

/// A dense `n × n` matrix of scalars, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<Scalar>,
}

impl SquareMatrix {
    pub fn new(n: usize, data: Vec<Scalar>) -> Result<Self, Error> {
        if data.len() != n * n {
            return Err(Error::NotSquare(data.len()));
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, Error> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare(rows.iter().map(Vec::len).sum()));
        }
        Ok(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let data = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).map(|(r, c)| f(r, c)).collect();
        SquareMatrix { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.data[row * self.n + col]
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Scalar]> = self.data.chunks(self.n.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Which algorithm computes permanents of pairing submatrices.
#[derive(Clone, Copy, Default)]
pub enum PermanentKernel {
    /// Ryser, parallel for large matrices when the `parallel` feature is on.
    #[default]
    Ryser,
    RyserSequential,
    RyserParallel,
    /// The `n!`-term permutation sum.
    Naive,
    /// An injected kernel, e.g. a deliberately broken one for mutation tests.
    Custom(fn(&SquareMatrix) -> Scalar),
}

/// Sizes from which [`PermanentKernel::Ryser`] switches to the parallel path.
pub const RYSER_PARALLEL_MIN: usize = 12;

impl PermanentKernel {
    pub fn permanent(&self, m: &SquareMatrix) -> Scalar {
        match self {
            PermanentKernel::Ryser if m.size() >= RYSER_PARALLEL_MIN => permanent_ryser_par(m),
            PermanentKernel::Ryser | PermanentKernel::RyserSequential => permanent_ryser(m),
            PermanentKernel::RyserParallel => permanent_ryser_par(m),
            PermanentKernel::Naive => permanent_naive(m),
            PermanentKernel::Custom(f) => f(m),
        }
    }
}

impl fmt::Debug for PermanentKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PermanentKernel::Ryser => "Ryser",
            PermanentKernel::RyserSequential => "RyserSequential",
            PermanentKernel::RyserParallel => "RyserParallel",
            PermanentKernel::Naive => "Naive",
            PermanentKernel::Custom(_) => "Custom",
        };
        f.write_str(name)
    }
}

/// Permanent with the default kernel.
pub fn permanent(m: &SquareMatrix) -> Scalar {
    PermanentKernel::default().permanent(m)
}

/// `Σ_σ ∏_i a_{i,σ(i)}` over all permutations.
pub fn permanent_naive(m: &SquareMatrix) -> Scalar {
    fn rec(m: &SquareMatrix, row: usize, used: u64) -> Scalar {
        if row == m.size() {
            return Scalar::one();
        }
        let mut acc = Scalar::zero();
        for col in 0..m.size() {
            if used & (1 << col) == 0 {
                let a = m.get(row, col);
                if !a.is_zero() {
                    acc += a * &rec(m, row + 1, used | (1 << col));
                }
            }
        }
        acc
    }
    assert!(m.size() < 64);
    rec(m, 0, 0)
}

fn small_cases(m: &SquareMatrix) -> Option<Scalar> {
    match m.size() {
        0 => Some(Scalar::one()),
        1 => Some(m.get(0, 0).clone()),
        2 => Some(m.get(0, 0) * m.get(1, 1) + m.get(0, 1) * m.get(1, 0)),
        _ => None,
    }
}

/// Sum of `(−1)^{|S|} ∏_i Σ_{j∈S} a_ij` over the Gray-code positions
/// `start..end` (position 0, the empty set, contributes nothing).
fn ryser_block(m: &SquareMatrix, start: u64, end: u64) -> Scalar {
    let n = m.size();
    let gray = |k: u64| k ^ (k >> 1);
    let mut set = gray(start);
    let mut row_sums: Vec<Scalar> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| set & (1 << j) != 0)
                .map(|j| m.get(i, j))
                .sum()
        })
        .collect();
    let mut acc = Scalar::zero();
    let mut k = start;
    loop {
        if k != 0 && row_sums.iter().all(|s| !s.is_zero()) {
            let mut prod = row_sums[0].clone();
            for s in &row_sums[1..] {
                prod *= s;
            }
            if set.count_ones() % 2 == 1 {
                acc -= &prod;
            } else {
                acc += &prod;
            }
        }
        k += 1;
        if k >= end {
            break;
        }
        let bit = k.trailing_zeros() as usize;
        let adding = gray(k) & (1 << bit) != 0;
        set = gray(k);
        for (i, s) in row_sums.iter_mut().enumerate() {
            let a = m.get(i, bit);
            if a.is_zero() {
                continue;
            }
            if adding {
                *s += a;
            } else {
                *s -= a;
            }
        }
    }
    acc
}

fn ryser_sign(n: usize, sum: Scalar) -> Scalar {
    if n % 2 == 1 {
        -sum
    } else {
        sum
    }
}

/// Ryser's formula, sequential Gray-code walk.
pub fn permanent_ryser(m: &SquareMatrix) -> Scalar {
    if let Some(p) = small_cases(m) {
        return p;
    }
    let n = m.size();
    assert!(n < 63);
    ryser_sign(n, ryser_block(m, 0, 1u64 << n))
}

/// Ryser's formula with the Gray-code walk split into blocks summed in
/// parallel. Falls back to the sequential walk without the `parallel` feature.
pub fn permanent_ryser_par(m: &SquareMatrix) -> Scalar {
    if let Some(p) = small_cases(m) {
        return p;
    }
    let n = m.size();
    assert!(n < 63);
    let total = 1u64 << n;
    let blocks: u64 = if par::parallel_enabled() { 64.min(total / 4).max(1) } else { 1 };
    let width = total.div_ceil(blocks);
    let sum = par::sum_range(blocks as usize, false, |b| {
        let start = b as u64 * width;
        let end = (start + width).min(total);
        ryser_block(m, start, end)
    });
    ryser_sign(n, sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> SquareMatrix {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_and_ones() {
        let id = SquareMatrix::from_fn(3, |r, c| Scalar::from((r == c) as i64));
        let ones = SquareMatrix::from_fn(3, |_, _| Scalar::one());
        for k in [
            PermanentKernel::Naive,
            PermanentKernel::RyserSequential,
            PermanentKernel::RyserParallel,
        ] {
            assert_eq!(k.permanent(&id), Scalar::one());
            assert_eq!(k.permanent(&ones), Scalar::from(6));
        }
    }

    #[test]
    fn known_value() {
        // perm [[1,2,3],[4,5,6],[7,8,9]] = 450
        let m = int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(permanent_ryser(&m), Scalar::from(450));
        assert_eq!(permanent_naive(&m), Scalar::from(450));
    }

    #[test]
    fn empty_matrix_is_one() {
        let m = SquareMatrix::new(0, vec![]).unwrap();
        assert_eq!(permanent_ryser(&m), Scalar::one());
        assert_eq!(permanent_naive(&m), Scalar::one());
    }

    #[test]
    fn all_ones_is_factorial() {
        for n in 3..=8 {
            let ones = SquareMatrix::from_fn(n, |_, _| Scalar::one());
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(permanent_ryser_par(&ones), Scalar::from(fact));
        }
    }

    #[test]
    fn rejects_non_square() {
        assert!(SquareMatrix::new(2, vec![Scalar::one(); 3]).is_err());
    }
}
