//! Monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `α ∈ Z_+^d` of the monomial `z^α`.
/// `Ord` is graded-lex with `z1` most significant, so ordered containers
/// keyed by exponent vectors iterate in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(Vec<u32>);

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn unit(dim: usize, var: usize, power: u32) -> Self {
        let mut e = vec![0; dim];
        e[var] = power;
        Self(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self | other`, i.e. componentwise `≤`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient(&self, divisor: &Self) -> Self {
        Self(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The single variable this monomial is a pure power of, if any.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (k, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(k);
            }
        }
        found
    }

    pub(crate) fn set(&mut self, var: usize, value: u32) {
        self.0[var] = value;
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Lex,
    GradedLex,
    GradedReverseLex,
}

/// A monomial order. `priority[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, dim: usize) -> Self {
        Self { kind, priority: (0..dim).collect() }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Self {
        Self { kind, priority }
    }

    pub fn lex(dim: usize) -> Self {
        Self::new(OrderKind::Lex, dim)
    }

    pub fn grlex(dim: usize) -> Self {
        Self::new(OrderKind::GradedLex, dim)
    }

    pub fn grevlex(dim: usize) -> Self {
        Self::new(OrderKind::GradedReverseLex, dim)
    }

    pub fn dim(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let lex = || {
            for &v in &self.priority {
                match a.get(v).cmp(&b.get(v)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        };
        match self.kind {
            OrderKind::Lex => lex(),
            OrderKind::GradedLex => a.total_degree().cmp(&b.total_degree()).then_with(lex),
            OrderKind::GradedReverseLex => {
                a.total_degree().cmp(&b.total_degree()).then_with(|| {
                    for &v in self.priority.iter().rev() {
                        match a.get(v).cmp(&b.get(v)) {
                            Ordering::Equal => continue,
                            o => return o.reverse(),
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}
