use rayon::prelude::*;

use super::QuasimorphismSpec;
use crate::error::{Error, Result};
use crate::word::{ball_index, ball_size, check_rank, enumerate_ball, Letter, Word};

/// Values of a map on every word of a ball, indexed by `ball_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTable {
    rank: usize,
    radius: usize,
    values: Vec<f64>,
}

impl ValueTable {
    pub fn build(spec: &QuasimorphismSpec, rank: usize, radius: usize) -> Result<ValueTable> {
        check_rank(rank)?;
        let ball = enumerate_ball(rank, radius);
        let values = ball
            .par_iter()
            .map(|g| spec.evaluate(g))
            .collect::<Result<Vec<f64>>>()?;
        Ok(ValueTable {
            rank,
            radius,
            values,
        })
    }

    /// Values listed in `enumerate_ball` order.
    pub fn from_values(rank: usize, radius: usize, values: Vec<f64>) -> Result<ValueTable> {
        check_rank(rank)?;
        if values.len() != ball_size(rank, radius) {
            return Err(Error::Invalid(format!(
                "{} values for a ball of {} words",
                values.len(),
                ball_size(rank, radius)
            )));
        }
        Ok(ValueTable {
            rank,
            radius,
            values,
        })
    }

    pub fn from_fn(rank: usize, radius: usize, f: impl Fn(&Word) -> f64) -> Result<ValueTable> {
        check_rank(rank)?;
        let values = enumerate_ball(rank, radius).iter().map(f).collect();
        Ok(ValueTable {
            rank,
            radius,
            values,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Value at a reduced word of length at most the radius.
    #[inline]
    pub fn get(&self, g: &[Letter]) -> f64 {
        debug_assert!(g.len() <= self.radius);
        self.values[ball_index(self.rank, g)]
    }

    /// First word `w` of the ball with `f(w^-1) != -f(w)`.
    pub fn first_non_alternating(&self) -> Option<(Word, f64, f64)> {
        enumerate_ball(self.rank, self.radius).into_iter().find_map(|g| {
            let (v, u) = (self.get(g.letters()), self.get(g.inverse().letters()));
            ((v + u).abs() > super::DEFECT_TOLERANCE).then_some((g, v, u))
        })
    }
}
