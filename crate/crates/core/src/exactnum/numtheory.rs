use num_integer::Integer;

pub fn divisors(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn euler_phi(n: usize) -> usize {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn mobius(n: usize) -> i32 {
    assert!(n >= 1);
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Residues `1 <= a < n` (or `{0}` when `n = 1`) coprime to `n`, ascending.
pub fn units_mod(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|a| a.gcd(&n) == 1).collect()
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
///
/// Built from `prod_{d | n} (x^d - 1)^{mu(n/d)}`: all multiplications first,
/// then exact divisions.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    let mut poly: Vec<i128> = vec![1];
    let divs = divisors(n);
    for &d in &divs {
        if mobius(n / d) == 1 {
            let mut next = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divs {
        if mobius(n / d) == -1 {
            // divide by x^d - 1: q_i = -(p_i - q_{i-d}) run from the bottom
            let len = poly.len() - d;
            let mut q = vec![0i128; len];
            for i in 0..len {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    poly
}
