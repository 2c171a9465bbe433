//! Evaluation of pasting diagrams of squares.

use super::FinDoubleCategory;
use crate::error::{Error, Result};

/// A pasting expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pasting {
    Cell(usize),
    /// Left, then right.
    Beside(Box<Pasting>, Box<Pasting>),
    /// Top, then bottom.
    Above(Box<Pasting>, Box<Pasting>),
}

impl Pasting {
    pub fn cell(s: usize) -> Self {
        Pasting::Cell(s)
    }

    pub fn beside(left: Pasting, right: Pasting) -> Self {
        Pasting::Beside(Box::new(left), Box::new(right))
    }

    pub fn above(top: Pasting, bottom: Pasting) -> Self {
        Pasting::Above(Box::new(top), Box::new(bottom))
    }

    pub fn eval(&self, d: &FinDoubleCategory) -> Result<usize> {
        match self {
            Pasting::Cell(s) => {
                d.check_square(*s)?;
                Ok(*s)
            }
            Pasting::Beside(l, r) => {
                let (a, b) = (l.eval(d)?, r.eval(d)?);
                d.hcomp(b, a).ok_or_else(|| {
                    Error::BoundaryMismatch(format!("squares {a} and {b} do not paste side by side"))
                })
            }
            Pasting::Above(t, b) => {
                let (x, y) = (t.eval(d)?, b.eval(d)?);
                d.vcomp(y, x).ok_or_else(|| {
                    Error::BoundaryMismatch(format!("squares {x} and {y} do not stack"))
                })
            }
        }
    }
}

/// A rectangular grid of squares, `rows[i][j]` in row `i` from the top and
/// column `j` from the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub rows: Vec<Vec<usize>>,
}

impl Grid {
    fn shape(&self) -> Result<(usize, usize)> {
        let h = self.rows.len();
        let w = self.rows.first().map_or(0, Vec::len);
        if h == 0 || w == 0 || self.rows.iter().any(|r| r.len() != w) {
            return Err(Error::Precondition("grid must be a non-empty rectangle".into()));
        }
        Ok((h, w))
    }

    /// Composes each row, then stacks the rows.
    pub fn eval_rows_first(&self, d: &FinDoubleCategory) -> Result<usize> {
        self.shape()?;
        let row = |r: &Vec<usize>| {
            r[1..].iter().fold(Ok(Pasting::cell(r[0])), |acc: Result<Pasting>, &s| {
                Ok(Pasting::beside(acc?, Pasting::cell(s)))
            })
        };
        let mut it = self.rows.iter();
        let mut p = row(it.next().unwrap())?;
        for r in it {
            p = Pasting::above(p, row(r)?);
        }
        p.eval(d)
    }

    /// Stacks each column, then composes the columns.
    pub fn eval_columns_first(&self, d: &FinDoubleCategory) -> Result<usize> {
        let (h, w) = self.shape()?;
        let column = |j: usize| {
            let mut p = Pasting::cell(self.rows[0][j]);
            for i in 1..h {
                p = Pasting::above(p, Pasting::cell(self.rows[i][j]));
            }
            p
        };
        let mut p = column(0);
        for j in 1..w {
            p = Pasting::beside(p, column(j));
        }
        p.eval(d)
    }
}
