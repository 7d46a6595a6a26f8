use crate::error::{Error, Result};
use crate::spatial::Field;

/// Past states of a field for the L1 memory sum, stored as increments.
#[derive(Debug, Clone)]
pub struct FieldHistory {
    alpha: f64,
    first: Field,
    last: Field,
    increments: Vec<Vec<f64>>,
    weights: Vec<f64>,
    window: Option<usize>,
}

impl FieldHistory {
    pub fn new(alpha: f64, u0: Field, window: Option<usize>) -> Self {
        FieldHistory { alpha, last: u0.clone(), first: u0, increments: Vec::new(), weights: vec![1.0], window }
    }

    /// Rebuilds from consecutive states u_0, ..., u_n.
    pub fn from_states(alpha: f64, states: &[Field], window: Option<usize>) -> Result<Self> {
        let first = states.first().ok_or_else(|| Error::State("history needs at least one state".into()))?;
        let mut h = FieldHistory::new(alpha, first.clone(), window);
        for s in &states[1..] {
            h.push(s.clone())?;
        }
        Ok(h)
    }

    pub fn len(&self) -> usize {
        self.increments.len() + 1
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn first(&self) -> &Field {
        &self.first
    }
    pub fn last(&self) -> &Field {
        &self.last
    }

    pub fn push(&mut self, u: Field) -> Result<()> {
        self.last.grid.same_as(&u.grid)?;
        let d = u.values.iter().zip(&self.last.values).map(|(a, b)| a - b).collect();
        self.increments.push(d);
        self.last = u;
        Ok(())
    }

    fn weight(&mut self, j: usize) -> f64 {
        let e = 1.0 - self.alpha;
        while self.weights.len() <= j {
            let i = self.weights.len() as f64;
            self.weights.push((i + 1.0).powf(e) - i.powf(e));
        }
        self.weights[j]
    }

    /// sum_{j >= 1} b_j (u_{n+1-j} - u_{n-j}) per node, for the next state u_{n+1}.
    pub fn memory(&mut self) -> Vec<f64> {
        let n = self.increments.len();
        let mut acc = vec![0.0; self.last.values.len()];
        let jmax = self.window.map_or(n, |w| w.min(n));
        for j in 1..=jmax {
            let b = self.weight(j);
            for (a, d) in acc.iter_mut().zip(&self.increments[n - j]) {
                *a += b * d;
            }
        }
        acc
    }
}
