use num_traits::{One, Zero};

use super::BigRat;

/// `e_r(x_1, …, x_m)`, by the recurrence `e_r(x, y) = e_r(x) + y·e_{r-1}(x)`.
pub fn elementary_symmetric(values: &[BigRat], r: usize) -> BigRat {
    if r > values.len() {
        return BigRat::zero();
    }
    let mut e = vec![BigRat::zero(); r + 1];
    e[0] = BigRat::one();
    for (i, x) in values.iter().enumerate() {
        for k in (1..=r.min(i + 1)).rev() {
            let t = &e[k - 1] * x;
            e[k] += t;
        }
    }
    e.swap_remove(r)
}

/// `h_r(x_1, …, x_m)`, by `h_r(x, y) = h_r(x) + y·h_{r-1}(x, y)`.
pub fn complete_symmetric(values: &[BigRat], r: usize) -> BigRat {
    let mut h = vec![BigRat::zero(); r + 1];
    h[0] = BigRat::one();
    for x in values {
        for k in 1..=r {
            let t = &h[k - 1] * x;
            h[k] += t;
        }
    }
    h.swap_remove(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigRat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(elementary_symmetric(&ints(&[1, 2, 3]), 1), rat(6));
        assert_eq!(elementary_symmetric(&ints(&[1, 2, 3]), 2), rat(11));
        assert_eq!(elementary_symmetric(&ints(&[1, 2, 3]), 4), rat(0));
        assert_eq!(complete_symmetric(&ints(&[1, 2]), 2), rat(7));
        assert_eq!(complete_symmetric(&[], 0), rat(1));
        assert_eq!(complete_symmetric(&[], 2), rat(0));
        assert_eq!(elementary_symmetric(&[], 0), rat(1));
    }

    // ∏(1 + x_i t) and ∏(1 - x_i t)^{-1} against Σ e_r t^r and Σ h_r t^r,
    // evaluated at a rational t, the second as a series truncated at t^R
    // with the tail bounded in absolute value.
    proptest! {
        #[test]
        fn generating_functions(xs in prop::collection::vec(-3i64..4, 0..6), tn in -3i64..4) {
            let xs = ints(&xs);
            let t = ratio(tn, 14);
            let prod: BigRat = xs.iter().fold(BigRat::one(), |a, x| a * (BigRat::one() + x * &t));
            let sum: BigRat = (0..=xs.len())
                .map(|r| elementary_symmetric(&xs, r) * num_traits::pow(t.clone(), r))
                .fold(BigRat::zero(), |a, b| a + b);
            prop_assert_eq!(prod, sum);

            let inv: BigRat = xs.iter().fold(BigRat::one(), |a, x| a / (BigRat::one() - x * &t));
            let partial: BigRat = (0..=60)
                .map(|r| complete_symmetric(&xs, r) * num_traits::pow(t.clone(), r))
                .fold(BigRat::zero(), |a, b| a + b);
            let diff = num_traits::Signed::abs(&(inv - partial));
            prop_assert!(diff < ratio(1, 1_000_000));
        }
    }
}
