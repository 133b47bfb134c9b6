//! Small dense 2x2 matrices of rational functions.

use crate::field::ratfunc::RationalFunction;

/// A 2x2 matrix over the rational-function field, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    rows: [[RationalFunction; 2]; 2],
}

impl Mat2 {
    pub fn new(rows: [[RationalFunction; 2]; 2]) -> Self {
        Self { rows }
    }

    pub fn identity() -> Self {
        Self::new([
            [RationalFunction::one(), RationalFunction::zero()],
            [RationalFunction::zero(), RationalFunction::one()],
        ])
    }

    pub fn entry(&self, row: usize, col: usize) -> &RationalFunction {
        &self.rows[row][col]
    }

    pub fn transpose(&self) -> Self {
        Self::new([
            [self.rows[0][0].clone(), self.rows[1][0].clone()],
            [self.rows[0][1].clone(), self.rows[1][1].clone()],
        ])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let e = |i: usize, j: usize| {
            &(&self.rows[i][0] * &rhs.rows[0][j]) + &(&self.rows[i][1] * &rhs.rows[1][j])
        };
        Self::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn scale(&self, s: &RationalFunction) -> Self {
        self.map(|e| e * s)
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    pub fn det(&self) -> RationalFunction {
        &(&self.rows[0][0] * &self.rows[1][1]) - &(&self.rows[0][1] * &self.rows[1][0])
    }

    pub fn map<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&RationalFunction) -> RationalFunction,
    {
        Self::new([
            [f(&self.rows[0][0]), f(&self.rows[0][1])],
            [f(&self.rows[1][0]), f(&self.rows[1][1])],
        ])
    }

    /// Entry-wise fallible map, short-circuiting on the first error.
    pub fn try_map<F>(&self, mut f: F) -> crate::Result<Self>
    where
        F: FnMut(&RationalFunction) -> crate::Result<RationalFunction>,
    {
        Ok(Self::new([
            [f(&self.rows[0][0])?, f(&self.rows[0][1])?],
            [f(&self.rows[1][0])?, f(&self.rows[1][1])?],
        ]))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows[0][1] == self.rows[1][0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::Polynomial2;

    fn x() -> RationalFunction {
        RationalFunction::x()
    }

    #[test]
    fn matrix_algebra() {
        let m = Mat2::new([
            [x(), RationalFunction::one()],
            [RationalFunction::zero(), x()],
        ]);
        assert_eq!(m.mul(&Mat2::identity()), m);
        assert_eq!(
            m.det(),
            RationalFunction::from_poly(Polynomial2::var_x().powu(2))
        );
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.neg().neg(), m);
    }
}
