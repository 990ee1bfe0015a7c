use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `U·A·V = S` with `U`, `V` unimodular and `S` diagonal, each diagonal
/// entry dividing the next. Inverses of `U` and `V` are tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Non-zero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Check every defining property against the original matrix.
    pub fn verify(&self, a: &IntMatrix) -> Result<(), String> {
        if self.u.mul(a).mul(&self.v) != self.s {
            return Err("U·A·V differs from S".into());
        }
        if self.u.mul(&self.u_inv) != IntMatrix::identity(a.rows()) {
            return Err("U is not invertible over Z".into());
        }
        if self.v.mul(&self.v_inv) != IntMatrix::identity(a.cols()) {
            return Err("V is not invertible over Z".into());
        }
        if !self.s.is_diagonal() {
            return Err("S is not diagonal".into());
        }
        let diag = self.s.diagonal();
        if diag.iter().any(|d| d.is_negative()) {
            return Err("negative diagonal entry".into());
        }
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            };
            if !ok {
                return Err(format!("{} does not divide {}", w[0], w[1]));
            }
        }
        Ok(())
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    // Row operations act on A and U from the left; the inverse column
    // operation is applied to U⁻¹. Column operations mirror this with V.

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[target] += q · row[src]`.
    fn add_row(&mut self, target: usize, src: usize, q: &BigInt) {
        self.a.add_row(target, src, q);
        self.u.add_row(target, src, q);
        self.u_inv.add_col(src, target, &-q);
    }

    /// `col[target] += q · col[src]`.
    fn add_col(&mut self, target: usize, src: usize, q: &BigInt) {
        self.a.add_col(target, src, q);
        self.v.add_col(target, src, q);
        self.v_inv.add_row(src, target, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a smallest non-zero entry in the block `[t.., t..]`.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let m = x.abs();
                if best.as_ref().is_none_or(|(_, b)| m < *b) {
                    best = Some(((i, j), m));
                }
            }
        }
        best.map(|(pos, _)| pos)
    }

    /// Clear row and column `t` outside the pivot. Returns false if a
    /// remainder appeared and a new pivot must be chosen.
    fn clear(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in (t + 1)..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
            self.add_row(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in (t + 1)..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
            self.add_col(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        clean
    }

    fn run(&mut self) {
        let steps = self.a.rows().min(self.a.cols());
        for t in 0..steps {
            loop {
                let Some((i, j)) = self.min_entry(t) else { return };
                self.swap_rows(t, i);
                self.swap_cols(t, j);
                if !self.clear(t) {
                    continue;
                }
                // divisibility: pull an offending row into row t and repeat
                let pivot = self.a[(t, t)].clone();
                let offending = ((t + 1)..self.a.rows()).find(|&r| {
                    ((t + 1)..self.a.cols()).any(|c| !self.a[(r, c)].is_multiple_of(&pivot))
                });
                match offending {
                    Some(r) => self.add_row(t, r, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(a.rows()),
        u_inv: IntMatrix::identity(a.rows()),
        v: IntMatrix::identity(a.cols()),
        v_inv: IntMatrix::identity(a.cols()),
    };
    r.run();
    let form = SmithForm {
        u: r.u,
        s: r.a,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
    };
    debug_assert_eq!(form.verify(a), Ok(()));
    form
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(rows: &[Vec<i64>]) -> Vec<BigInt> {
        let a = IntMatrix::from_rows(rows);
        let snf = smith_normal_form(&a);
        snf.verify(&a).unwrap();
        snf.s.diagonal()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_is_fixed() {
        assert_eq!(diag_of(&[vec![1, 0], vec![0, 1]]), big(&[1, 1]));
    }

    #[test]
    fn constant_minus_two() {
        assert_eq!(diag_of(&[vec![-2; 3], vec![-2; 3], vec![-2; 3]]), big(&[2, 0, 0]));
    }

    #[test]
    fn coprime_diagonal() {
        assert_eq!(diag_of(&[vec![2, 0], vec![0, 3]]), big(&[1, 6]));
    }

    #[test]
    fn rectangular_and_empty() {
        assert_eq!(diag_of(&[vec![2, 4, 4], vec![-6, 6, 12]]), big(&[2, 6]));
        let empty = IntMatrix::zeros(0, 3);
        let snf = smith_normal_form(&empty);
        snf.verify(&empty).unwrap();
        assert_eq!(snf.rank(), 0);
        assert_eq!(snf.v, IntMatrix::identity(3));
    }
}
