//! Exact rational feasibility for `A x ≥ b` (phase-one simplex, Bland's rule).

use crate::arith::{dot_rat, Rat, RatVec};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    /// A point satisfying every row.
    Feasible(RatVec),
    /// Farkas multipliers `y ≥ 0` with `yᵀA = 0` and `y·b > 0`.
    Infeasible(RatVec),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides `{x ∈ Q^n : a_i·x ≥ b_i}` exactly; `x` is unrestricted in sign.
pub fn feasible(a: &[RatVec], b: &[Rat], n: usize) -> Feasibility {
    let m = a.len();
    if m == 0 {
        return Feasibility::Feasible(vec![Rat::zero(); n]);
    }
    // columns: x+ (n) | x- (n) | slack (m) | artificial (m) | rhs
    let cols = 2 * n + 2 * m;
    let sigma: Vec<Rat> = b.iter().map(|x| if x.is_negative() { -Rat::one() } else { Rat::one() }).collect();
    let mut t: Vec<RatVec> = (0..m)
        .map(|i| {
            let mut row = vec![Rat::zero(); cols + 1];
            for j in 0..n {
                row[j] = &sigma[i] * &a[i][j];
                row[n + j] = -&row[j];
            }
            row[2 * n + i] = -&sigma[i];
            row[2 * n + m + i] = Rat::one();
            row[cols] = &sigma[i] * &b[i];
            row
        })
        .collect();
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + m + i).collect();
    // reduced costs for minimizing the sum of artificials
    let mut rc = vec![Rat::zero(); cols + 1];
    for j in 0..=cols {
        let cj = if j >= 2 * n + m && j < cols { Rat::one() } else { Rat::zero() };
        let s: Rat = t.iter().map(|row| row[j].clone()).sum();
        rc[j] = if j == cols { -s } else { cj - s };
    }
    while let Some(enter) = (0..cols).find(|&j| rc[j].is_negative()) {
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][cols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let (r, _) = leave.expect("phase-one simplex cannot be unbounded");
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x /= &piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        let f = rc[enter].clone();
        for (x, y) in rc.iter_mut().zip(&prow) {
            *x -= &f * y;
        }
        basis[r] = enter;
    }
    let objective = -rc[cols].clone();
    if objective.is_positive() {
        let y = (0..m).map(|i| &sigma[i] * (Rat::one() - &rc[2 * n + m + i])).collect();
        return Feasibility::Infeasible(y);
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n {
            x[bj] += &t[i][cols];
        } else if bj < 2 * n {
            x[bj - n] -= &t[i][cols];
        }
    }
    Feasibility::Feasible(x)
}

/// Checks a feasibility answer against the original system.
pub fn certify(a: &[RatVec], b: &[Rat], n: usize, ans: &Feasibility) -> bool {
    match ans {
        Feasibility::Feasible(x) => x.len() == n && a.iter().zip(b).all(|(row, bi)| dot_rat(row, x) >= *bi),
        Feasibility::Infeasible(y) => {
            y.iter().all(|v| !v.is_negative())
                && (0..n).all(|j| a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum::<Rat>().is_zero())
                && dot_rat(y, b).is_positive()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, to_rat};

    #[test]
    fn feasible_box() {
        let a = vec![to_rat(&[1, 0]), to_rat(&[-1, 0]), to_rat(&[0, 1]), to_rat(&[1, 1])];
        let b = vec![rat(1), rat(-3), rat(-2), rat(4)];
        let ans = feasible(&a, &b, 2);
        assert!(ans.is_feasible());
        assert!(certify(&a, &b, 2, &ans));
    }

    #[test]
    fn infeasible_has_farkas() {
        let a = vec![to_rat(&[1, 1]), to_rat(&[-1, 0]), to_rat(&[0, -1])];
        let b = vec![rat(3), rat(-1), rat(-1)];
        let ans = feasible(&a, &b, 2);
        assert!(!ans.is_feasible());
        assert!(certify(&a, &b, 2, &ans));
    }
}
