use std::sync::Mutex;

use rug::{Integer, Rational};

/// Bernoulli numbers under the convention B_1 = -1/2, by the exact
/// rational recurrence `sum_{j=0}^{k} C(k+1, j) B_j = 0`. The cache is
/// append-only behind a mutex; indices stay modest (Euler-Maclaurin
/// tails never ask past B_62).
static CACHE: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

pub fn bernoulli(k: u32) -> Rational {
    let mut cache = CACHE.lock().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(Rational::from(1));
    }
    while cache.len() <= k as usize {
        let m = cache.len() as u32; // computing B_m
        let mut acc = Rational::new();
        for (j, b) in cache.iter().enumerate() {
            let binom = Integer::from(m + 1).binomial(j as u32);
            acc += b.clone() * binom;
        }
        acc /= -Rational::from(m + 1);
        cache.push(acc);
    }
    cache[k as usize].clone()
}

/// Exact factorial, used for Gamma at positive integers.
pub fn factorial(n: u32) -> Integer {
    Integer::factorial(n).into()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_match_convention() {
        assert_eq!(bernoulli(0), Rational::from(1));
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), Rational::new());
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn odd_values_above_one_vanish() {
        for k in (3..=61).step_by(2) {
            assert!(bernoulli(k).cmp0() == std::cmp::Ordering::Equal, "B_{k}");
        }
    }

    #[test]
    fn recurrence_holds_exactly_up_to_60() {
        // sum_{j=0}^{k} C(k+1, j) B_j = 0 for k >= 1
        for k in 1..=60u32 {
            let mut acc = Rational::new();
            for j in 0..=k {
                acc += bernoulli(j) * Integer::from(k + 1).binomial(j);
            }
            assert_eq!(acc, Rational::new(), "recurrence failed at k={k}");
        }
    }

    #[test]
    fn factorial_matches_product() {
        assert_eq!(factorial(0), Integer::from(1));
        assert_eq!(factorial(5), Integer::from(120));
        assert_eq!(factorial(12), Integer::from(479001600u64));
    }
}
