//! Exact Bernoulli and Euler numbers, memoized.

use once_cell::sync::Lazy;
use rug::{Integer, Rational};
use std::sync::Mutex;

static BERNOULLI: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| {
    Mutex::new(vec![Rational::from(1), Rational::from((-1, 2))])
});

/// B_n with the B_1 = -1/2 convention; only even indices are nonzero past 1.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = BERNOULLI.lock().unwrap();
    while table.len() <= n {
        let m = table.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = Rational::new();
        for (j, b) in table.iter().enumerate() {
            let c = Integer::from(m as u32 + 1).binomial(j as u32);
            acc += b * Rational::from(c);
        }
        acc /= -Rational::from(m as u32 + 1);
        table.push(acc);
    }
    table[n].clone()
}

static EULER_NUM: Lazy<Mutex<Vec<Integer>>> = Lazy::new(|| Mutex::new(vec![Integer::from(1)]));

/// Euler number E_{2n} (zigzag sign convention: E_0=1, E_2=-1, E_4=5, ...).
pub fn euler_number(two_n: usize) -> Integer {
    assert!(two_n % 2 == 0, "odd Euler numbers vanish");
    let idx = two_n / 2;
    let mut table = EULER_NUM.lock().unwrap();
    while table.len() <= idx {
        let n = table.len();
        // sum_{k=0}^{n} C(2n, 2k) E_{2k} = 0
        let mut acc = Integer::new();
        for (k, e) in table.iter().enumerate() {
            acc += Integer::from(2 * n as u32).binomial(2 * k as u32) * e;
        }
        table.push(-acc);
    }
    table[idx].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(bernoulli(0), 1);
        assert_eq!(bernoulli(1), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(3), 0);
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
    }

    #[test]
    fn first_euler_numbers() {
        assert_eq!(euler_number(0), 1);
        assert_eq!(euler_number(2), -1);
        assert_eq!(euler_number(4), 5);
        assert_eq!(euler_number(6), -61);
        assert_eq!(euler_number(8), 1385);
    }
}
