//! Scalar fields on the plane.

use std::fmt;
use std::sync::Arc;

/// A point of `R^2`.
pub type Point = [f64; 2];

#[inline]
pub fn norm2(x: Point) -> f64 {
    x[0] * x[0] + x[1] * x[1]
}

#[inline]
pub fn norm(x: Point) -> f64 {
    x[0].hypot(x[1])
}

#[inline]
pub fn sub(x: Point, y: Point) -> Point {
    [x[0] - y[0], x[1] - y[1]]
}

/// Growth class of a field at infinity; drives which operators accept it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    Bounded,
    /// `|f(x)| = O(|x|^{-p})`.
    Algebraic(f64),
    LogGrowth,
}

type EvalFn = dyn Fn(Point) -> f64 + Send + Sync;
type GradFn = dyn Fn(Point) -> Point + Send + Sync;

/// A re-entrant real field on `R^2`, optionally with an analytic gradient.
#[derive(Clone)]
pub struct PlaneField {
    eval: Arc<EvalFn>,
    grad: Option<Arc<GradFn>>,
    decay: DecayClass,
}

impl PlaneField {
    pub fn new(decay: DecayClass, eval: impl Fn(Point) -> f64 + Send + Sync + 'static) -> Self {
        Self { eval: Arc::new(eval), grad: None, decay }
    }

    pub fn with_gradient(mut self, grad: impl Fn(Point) -> Point + Send + Sync + 'static) -> Self {
        self.grad = Some(Arc::new(grad));
        self
    }

    pub fn zero() -> Self {
        Self::new(DecayClass::Algebraic(f64::INFINITY), |_| 0.0).with_gradient(|_| [0.0, 0.0])
    }

    pub fn constant(c: f64) -> Self {
        Self::new(DecayClass::Bounded, move |_| c).with_gradient(|_| [0.0, 0.0])
    }

    #[inline]
    pub fn eval(&self, x: Point) -> f64 {
        (self.eval)(x)
    }

    pub fn decay(&self) -> DecayClass {
        self.decay
    }

    pub fn has_gradient(&self) -> bool {
        self.grad.is_some()
    }

    /// Analytic gradient when supplied, central differences with step `h` otherwise.
    pub fn gradient(&self, x: Point, h: f64) -> Point {
        match &self.grad {
            Some(g) => g(x),
            None => {
                let dx = (self.eval([x[0] + h, x[1]]) - self.eval([x[0] - h, x[1]])) / (2.0 * h);
                let dy = (self.eval([x[0], x[1] + h]) - self.eval([x[0], x[1] - h])) / (2.0 * h);
                [dx, dy]
            }
        }
    }

    /// Five-point finite-difference Laplacian with step `h`.
    pub fn laplacian_fd(&self, x: Point, h: f64) -> f64 {
        let c = self.eval(x);
        let s = self.eval([x[0] + h, x[1]])
            + self.eval([x[0] - h, x[1]])
            + self.eval([x[0], x[1] + h])
            + self.eval([x[0], x[1] - h]);
        (s - 4.0 * c) / (h * h)
    }

    /// Linear combination `Σ c_i f_i`; keeps the weakest decay class.
    pub fn combination(terms: &[(f64, PlaneField)]) -> Self {
        let decay = terms.iter().map(|(_, f)| f.decay).fold(DecayClass::Algebraic(f64::INFINITY), weaker);
        let eval_terms: Vec<(f64, PlaneField)> = terms.to_vec();
        let mut field = Self::new(decay, move |x| eval_terms.iter().map(|(c, f)| c * f.eval(x)).sum());
        if terms.iter().all(|(_, f)| f.grad.is_some()) {
            let grad_terms: Vec<(f64, PlaneField)> = terms.to_vec();
            field = field.with_gradient(move |x| {
                grad_terms.iter().fold([0.0, 0.0], |acc, (c, f)| {
                    let g = f.gradient(x, 0.0);
                    [acc[0] + c * g[0], acc[1] + c * g[1]]
                })
            });
        }
        field
    }
}

fn weaker(a: DecayClass, b: DecayClass) -> DecayClass {
    use DecayClass::*;
    match (a, b) {
        (LogGrowth, _) | (_, LogGrowth) => LogGrowth,
        (Bounded, _) | (_, Bounded) => Bounded,
        (Algebraic(p), Algebraic(q)) => Algebraic(p.min(q)),
    }
}

impl fmt::Debug for PlaneField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneField").field("decay", &self.decay).field("gradient", &self.grad.is_some()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_laplacian_of_quadratic() {
        let f = PlaneField::new(DecayClass::LogGrowth, |x| x[0] * x[0] + 3.0 * x[1] * x[1]);
        assert!((f.laplacian_fd([0.3, -0.7], 1e-3) - 8.0).abs() < 1e-6);
    }

    #[test]
    fn combination_keeps_weakest_decay() {
        let a = PlaneField::new(DecayClass::Algebraic(4.0), |x| x[0]);
        let b = PlaneField::constant(2.0);
        let c = PlaneField::combination(&[(1.0, a.clone()), (0.5, b)]);
        assert_eq!(c.decay(), DecayClass::Bounded);
        assert_eq!(c.eval([3.0, 0.0]), 4.0);
        assert!(!c.has_gradient());
        let d = PlaneField::combination(&[(2.0, PlaneField::zero()), (1.0, PlaneField::constant(1.0))]);
        assert!(d.has_gradient());
        assert_eq!(d.gradient([1.0, 1.0], 1e-4), [0.0, 0.0]);
    }
}
