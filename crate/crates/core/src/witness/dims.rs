//! Closed-form dimension counts, in exact integer arithmetic.

fn to_usize(v: u128) -> usize {
    usize::try_from(v).expect("dimension overflows usize")
}

/// D_n = n(n+1)(5n−2)/6, the N-span dimension of a generic Breuer–Hall map.
pub fn dn_formula(n: usize) -> usize {
    let n = n as u128;
    let product = n * (n + 1) * (5 * n).saturating_sub(2);
    assert_eq!(product % 6, 0, "n(n+1)(5n-2) must be divisible by 6");
    to_usize(product / 6)
}

/// n(n²−1), the N-span dimension required for strong spanning.
pub fn dn_bound(n: usize) -> usize {
    let n = n as u128;
    to_usize(n * (n * n).saturating_sub(1))
}

/// Target for the strong spanning property: (n²−1)·n.
pub fn n_target(n: usize) -> usize {
    dn_bound(n)
}

/// Target for the spanning property: n².
pub fn m_target(n: usize) -> usize {
    to_usize((n as u128) * (n as u128))
}

/// Span of x ⊗ x̄ ⊗ x: the monomials x_i x_j x̄_k with i ≤ j, n²(n+1)/2 of them.
pub fn reduction_n_dim(n: usize) -> usize {
    let n = n as u128;
    to_usize(n * n * (n + 1) / 2)
}

/// Span of x ⊗ x: the symmetric subspace, n(n+1)/2.
pub fn reduction_m_dim(n: usize) -> usize {
    let n = n as u128;
    to_usize(n * (n + 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table() {
        assert_eq!((dn_formula(4), dn_bound(4)), (60, 60));
        assert_eq!((dn_formula(6), dn_bound(6)), (196, 210));
        assert_eq!((dn_formula(8), dn_bound(8)), (456, 504));
        assert_eq!(dn_formula(10), 880);
    }

    #[test]
    fn equality_only_at_four_among_n_at_least_four() {
        for n in 4..200 {
            if n == 4 {
                assert_eq!(dn_formula(n), dn_bound(n));
            } else if n > 4 {
                assert!(dn_formula(n) < dn_bound(n), "n = {n}");
            }
        }
    }

    #[test]
    fn divisible_for_every_n() {
        for n in 1..5000 {
            dn_formula(n);
        }
    }

    #[test]
    fn reduction_counts() {
        assert_eq!(reduction_n_dim(2), 6);
        assert_eq!(reduction_n_dim(3), 18);
        assert_eq!(reduction_m_dim(2), 3);
        assert_eq!(n_target(3), 24);
        assert_eq!(m_target(8), 64);
    }
}
