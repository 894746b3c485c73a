//! Objective evaluation in exact rational or double arithmetic.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, ToPrimitive, Zero};

use super::instance::{Coeff, QuadraticInstance};
use crate::error::{check_dim, Result};
use crate::graver::realize_matrix;
use crate::vector::SparseIntVector;

/// Exact objective values. Wide enough for products of `i64` coefficients
/// with small integer points.
pub type Exact = Ratio<i128>;

/// Arithmetic used by the evaluators: [`Exact`] for oracles and tests,
/// `f64` for large runs.
pub trait Scalar: Num + Copy + PartialOrd + Debug + Send + Sync + 'static {
    fn from_coeff(c: Coeff) -> Self;

    fn from_int(v: i64) -> Self;

    fn to_f64(self) -> f64;
}

impl Scalar for Exact {
    fn from_coeff(c: Coeff) -> Self {
        Ratio::new_raw(i128::from(*c.numer()), i128::from(*c.denom()))
    }

    fn from_int(v: i64) -> Self {
        Ratio::from_integer(i128::from(v))
    }

    fn to_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_coeff(c: Coeff) -> Self {
        *c.numer() as f64 / *c.denom() as f64
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn to_f64(self) -> f64 {
        self
    }
}

/// Coefficients of one instance converted to `T`, with `Q + Qᵀ` cached.
#[derive(Debug, Clone)]
pub struct Evaluator<T> {
    n: usize,
    c: Vec<T>,
    q: Vec<T>,
    q_sym: Vec<T>,
}

impl<T: Scalar> Evaluator<T> {
    pub fn new(inst: &QuadraticInstance) -> Self {
        let n = inst.dim();
        let q: Vec<T> = inst.q().iter().map(|&v| T::from_coeff(v)).collect();
        let mut q_sym = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                q_sym[i * n + j] = q[i * n + j] + q[j * n + i];
            }
        }
        Self {
            n,
            c: inst.c().iter().map(|&v| T::from_coeff(v)).collect(),
            q,
            q_sym,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn objective(&self, x: &[i64]) -> Result<T> {
        check_dim(self.n, x.len())?;
        let support: Vec<(usize, T)> = x
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, T::from_int(v)))
            .collect();
        let mut total = T::zero();
        for &(i, xi) in &support {
            total = total + self.c[i] * xi;
            let row = &self.q[i * self.n..(i + 1) * self.n];
            for &(j, xj) in &support {
                total = total + xi * row[j] * xj;
            }
        }
        Ok(total)
    }

    /// `f(x+g) − f(x) = cᵀg + xᵀ(Q+Qᵀ)g + gᵀQg`, touching only the rows and
    /// columns of `Q` in the support of `g`.
    pub fn delta(&self, x: &[i64], g: &SparseIntVector) -> Result<T> {
        check_dim(self.n, x.len())?;
        check_dim(self.n, g.dim())?;
        let mut total = T::zero();
        for &(j, gj) in g.entries() {
            let gj = T::from_int(gj);
            let mut cross = self.c[j];
            for (i, &xi) in x.iter().enumerate() {
                if xi != 0 {
                    cross = cross + T::from_int(xi) * self.q_sym[i * self.n + j];
                }
            }
            total = total + gj * cross;
            for &(i, gi) in g.entries() {
                total = total + T::from_int(gi) * self.q[i * self.n + j] * gj;
            }
        }
        Ok(total)
    }

    pub fn state(&self, x: Vec<i64>) -> Result<MoveState<'_, T>> {
        MoveState::new(self, x)
    }
}

/// A point together with the cached linear part of the objective at it, so
/// that move deltas cost `O(|supp g|²)` and accepted moves `O(N·|supp g|)`.
#[derive(Debug, Clone)]
pub struct MoveState<'a, T> {
    eval: &'a Evaluator<T>,
    x: Vec<i64>,
    /// `c + (Q + Qᵀ)x`
    gradient: Vec<T>,
}

impl<'a, T: Scalar> MoveState<'a, T> {
    fn new(eval: &'a Evaluator<T>, x: Vec<i64>) -> Result<Self> {
        check_dim(eval.n, x.len())?;
        let n = eval.n;
        let mut gradient = eval.c.clone();
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                let xi = T::from_int(xi);
                for (j, slot) in gradient.iter_mut().enumerate() {
                    *slot = *slot + xi * eval.q_sym[i * n + j];
                }
            }
        }
        Ok(Self { eval, x, gradient })
    }

    pub fn x(&self) -> &[i64] {
        &self.x
    }

    pub fn into_x(self) -> Vec<i64> {
        self.x
    }

    pub fn delta(&self, g: &SparseIntVector) -> T {
        let n = self.eval.n;
        let mut total = T::zero();
        for &(j, gj) in g.entries() {
            let gj = T::from_int(gj);
            total = total + gj * self.gradient[j];
            for &(i, gi) in g.entries() {
                total = total + T::from_int(gi) * self.eval.q[i * n + j] * gj;
            }
        }
        total
    }

    /// Same as [`MoveState::delta`] with `g` negated.
    pub fn delta_negated(&self, g: &SparseIntVector) -> T {
        let n = self.eval.n;
        let mut total = T::zero();
        for &(j, gj) in g.entries() {
            let gj = T::from_int(gj);
            total = total - gj * self.gradient[j];
            for &(i, gi) in g.entries() {
                total = total + T::from_int(gi) * self.eval.q[i * n + j] * gj;
            }
        }
        total
    }

    /// `l ≤ x + sign·g ≤ u`
    pub fn within_bounds(&self, g: &SparseIntVector, sign: i64, lower: &[i64], upper: &[i64]) -> bool {
        g.entries().iter().all(|&(i, v)| {
            let y = self.x[i] + sign * v;
            lower[i] <= y && y <= upper[i]
        })
    }

    pub fn apply(&mut self, g: &SparseIntVector, sign: i64) {
        let n = self.eval.n;
        for &(i, v) in g.entries() {
            let step = sign * v;
            self.x[i] += step;
            let step = T::from_int(step);
            for (j, slot) in self.gradient.iter_mut().enumerate() {
                *slot = *slot + step * self.eval.q_sym[i * n + j];
            }
        }
    }
}

/// Exact objective `cᵀx + xᵀQx`.
pub fn objective(inst: &QuadraticInstance, x: &[i64]) -> Result<Exact> {
    direct_objective::<Exact>(inst, x)
}

pub fn objective_f64(inst: &QuadraticInstance, x: &[i64]) -> Result<f64> {
    direct_objective::<f64>(inst, x)
}

fn direct_objective<T: Scalar>(inst: &QuadraticInstance, x: &[i64]) -> Result<T> {
    check_dim(inst.dim(), x.len())?;
    let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0).collect();
    let mut total = T::zero();
    for &i in &support {
        let xi = T::from_int(x[i]);
        total = total + T::from_coeff(inst.c()[i]) * xi;
        for &j in &support {
            total = total + xi * T::from_coeff(inst.q_at(i, j)) * T::from_int(x[j]);
        }
    }
    Ok(total)
}

/// Exact `f(x+g) − f(x)` from the support of `g` only.
pub fn objective_delta(inst: &QuadraticInstance, x: &[i64], g: &SparseIntVector) -> Result<Exact> {
    check_dim(inst.dim(), x.len())?;
    check_dim(inst.dim(), g.dim())?;
    let mut total = Exact::zero();
    for &(j, gj) in g.entries() {
        let gj = Exact::from_int(gj);
        let mut cross = Exact::from_coeff(inst.c()[j]);
        for (i, &xi) in x.iter().enumerate() {
            if xi != 0 {
                let sym = Exact::from_coeff(inst.q_at(i, j)) + Exact::from_coeff(inst.q_at(j, i));
                cross += Exact::from_int(xi) * sym;
            }
        }
        total += gj * cross;
        for &(i, gi) in g.entries() {
            total += Exact::from_int(gi) * Exact::from_coeff(inst.q_at(i, j)) * gj;
        }
    }
    Ok(total)
}

/// `A x = b` and `l ≤ x ≤ u`. Wrong-length input is simply infeasible.
pub fn check_feasible(inst: &QuadraticInstance, x: &[i64]) -> bool {
    if x.len() != inst.dim() {
        return false;
    }
    let in_bounds = x
        .iter()
        .zip(inst.lower().iter().zip(inst.upper()))
        .all(|(&v, (&l, &u))| l <= v && v <= u);
    in_bounds
        && realize_matrix(inst.kind())
            .and_then(|a| a.mul_dense(x))
            .is_ok_and(|ax| ax == inst.b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graver::ConstraintKind;

    fn inst(c: Vec<i64>, q: Vec<i64>, kind: ConstraintKind, b: Vec<i64>) -> QuadraticInstance {
        QuadraticInstance::binary("t", kind, c, q, b).unwrap()
    }

    fn int(v: i128) -> Exact {
        Exact::from_integer(v)
    }

    #[test]
    fn objective_examples() {
        let card2 = ConstraintKind::Cardinality { n: 2 };
        assert_eq!(
            objective(&inst(vec![0, 0], vec![1, 0, 0, 1], card2.clone(), vec![1]), &[1, 1]).unwrap(),
            int(2)
        );
        assert_eq!(
            objective(&inst(vec![1, 2], vec![0; 4], card2.clone(), vec![1]), &[1, 0]).unwrap(),
            int(1)
        );
        assert_eq!(
            objective(&inst(vec![0, 0], vec![0, 1, 0, 0], card2.clone(), vec![1]), &[1, 1]).unwrap(),
            int(1)
        );
        assert!(objective(&inst(vec![0, 0], vec![0; 4], card2, vec![1]), &[1]).is_err());
    }

    #[test]
    fn delta_examples() {
        let i = inst(
            vec![0, 0],
            vec![1, 0, 0, 1],
            ConstraintKind::Cardinality { n: 2 },
            vec![1],
        );
        let g = SparseIntVector::from_dense(&[-1, 1]);
        assert_eq!(objective_delta(&i, &[1, 0], &g).unwrap(), int(0));
        assert_eq!(objective_delta(&i, &[1, 0], &SparseIntVector::zero(2)).unwrap(), int(0));
        assert!(objective_delta(&i, &[1, 0, 0], &g).is_err());
    }

    #[test]
    fn evaluator_and_state_agree_with_direct_evaluation() {
        let q = vec![3, -2, 5, 1, 0, 4, -7, 2, 6];
        let i = inst(vec![1, -1, 2], q, ConstraintKind::Cardinality { n: 3 }, vec![1]);
        let e = Evaluator::<Exact>::new(&i);
        let x = vec![1, 0, 1];
        assert_eq!(e.objective(&x).unwrap(), objective(&i, &x).unwrap());
        let g = SparseIntVector::from_dense(&[-1, 1, 0]);
        let mut s = e.state(x.clone()).unwrap();
        let expected = objective(&i, &[0, 1, 1]).unwrap() - objective(&i, &x).unwrap();
        assert_eq!(s.delta(&g), expected);
        assert_eq!(e.delta(&x, &g).unwrap(), expected);
        assert_eq!(s.delta_negated(&g.negated()), expected);
        s.apply(&g, 1);
        assert_eq!(s.x(), &[0, 1, 1]);
        assert_eq!(s.delta(&g.negated()), -expected);
        let f = Evaluator::<f64>::new(&i);
        assert_eq!(f.objective(&x).unwrap(), objective_f64(&i, &x).unwrap());
    }

    #[test]
    fn feasibility_examples() {
        let c3 = inst(vec![0; 3], vec![0; 9], ConstraintKind::Cardinality { n: 3 }, vec![2]);
        assert!(check_feasible(&c3, &[1, 1, 0]));
        assert!(!check_feasible(&c3, &[2, 0, 0]));
        assert!(!check_feasible(&c3, &[1, 0, 0]));
        assert!(!check_feasible(&c3, &[1, 1]));
        let qap = inst(
            vec![0; 4],
            vec![0; 16],
            ConstraintKind::Assignment { n: 2, k: 2 },
            vec![1, 1, 1, 1],
        );
        assert!(check_feasible(&qap, &[1, 0, 0, 1]));
        assert!(!check_feasible(&qap, &[1, 1, 0, 0]));
    }
}
