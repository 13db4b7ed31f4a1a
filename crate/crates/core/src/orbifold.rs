//! Orbifold signatures on compact Riemann surfaces and their behaviour under
//! branched coverings.
//!
//! A signature is a genus together with a multiset of cone orders. Its Euler
//! characteristic is `2 − 2g + Σ (1/p − 1)`, with `1/∞ = 0`. A covering of
//! degree `d` whose pullback orbifold has only integral inverse orders leaves
//! a total angle surplus `b = 2 + d·χ` upstairs when the cover has genus 2.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{int, rat, Rat};

/// Order of a cone point: finite `p ≥ 2`, or a cusp.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ConeOrder {
    Finite(u32),
    #[serde(with = "infinity")]
    Infinite,
}

mod infinity {
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("inf")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(())
        } else {
            Err(D::Error::custom("expected \"inf\""))
        }
    }
}

impl ConeOrder {
    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> Rat {
        match self {
            ConeOrder::Finite(p) => rat(1, p as i64),
            ConeOrder::Infinite => Rat::zero(),
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            ConeOrder::Finite(p) => Some(p),
            ConeOrder::Infinite => None,
        }
    }
}

impl fmt::Display for ConeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeOrder::Finite(p) => write!(f, "{p}"),
            ConeOrder::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error("cone order {0} is below 2")]
    OrderTooSmall(u32),
    #[error("expected {expected} ramification partitions, got {got}")]
    PartitionCount { expected: usize, got: usize },
    #[error("partition {parts:?} of cone point {point} sums to {sum}, not the degree {degree}")]
    PartitionSum {
        point: usize,
        parts: Vec<u32>,
        sum: u32,
        degree: u32,
    },
    #[error("partition of cone point {0} contains a zero part")]
    ZeroPart(usize),
    #[error("cone point {0} has infinite order; the branch excess is undefined")]
    InfiniteOrder(usize),
}

/// Genus plus multiset of cone orders.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbifoldSignature {
    pub genus: u32,
    pub cone_orders: Vec<ConeOrder>,
}

impl PartialEq for OrbifoldSignature {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus && self.sorted_orders() == other.sorted_orders()
    }
}

impl Eq for OrbifoldSignature {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl OrbifoldSignature {
    pub fn new(genus: u32, cone_orders: Vec<ConeOrder>) -> Result<Self, OrbifoldError> {
        for o in &cone_orders {
            if let ConeOrder::Finite(p) = o {
                if *p < 2 {
                    return Err(OrbifoldError::OrderTooSmall(*p));
                }
            }
        }
        Ok(OrbifoldSignature { genus, cone_orders })
    }

    /// Signature with finite cone orders only. Panics on an order below 2.
    pub fn finite(genus: u32, orders: &[u32]) -> Self {
        Self::new(genus, orders.iter().map(|&p| ConeOrder::Finite(p)).collect())
            .expect("cone orders must be at least 2")
    }

    pub fn sorted_orders(&self) -> Vec<ConeOrder> {
        let mut v = self.cone_orders.clone();
        v.sort();
        v
    }

    /// `χ = 2 − 2g − n + Σ 1/p_i`.
    pub fn euler_characteristic(&self) -> Rat {
        let n = self.cone_orders.len() as i64;
        let base = int(2 - 2 * self.genus as i64 - n);
        self.cone_orders
            .iter()
            .fold(base, |acc, o| acc + o.reciprocal())
    }

    pub fn geometry(&self) -> Geometry {
        match self.euler_characteristic().cmp(&Rat::zero()) {
            Ordering::Greater => Geometry::Spherical,
            Ordering::Equal => Geometry::Euclidean,
            Ordering::Less => Geometry::Hyperbolic,
        }
    }

    /// `b = 2 + (2 − 2g + Σ(1/p_i − 1))·d`. Integrality is not assumed.
    pub fn branch_excess(&self, degree: u32) -> Rat {
        int(2) + self.euler_characteristic() * int(degree as i64)
    }

    /// Local data of the pullback orbifold under a cover of degree `degree`
    /// with the given ramification partition over each cone point (in order).
    pub fn pullback(
        &self,
        degree: u32,
        ramification: &[Vec<u32>],
    ) -> Result<PullbackReport, OrbifoldError> {
        if ramification.len() != self.cone_orders.len() {
            return Err(OrbifoldError::PartitionCount {
                expected: self.cone_orders.len(),
                got: ramification.len(),
            });
        }
        let mut entries = Vec::new();
        for (point, (order, parts)) in self.cone_orders.iter().zip(ramification).enumerate() {
            if parts.contains(&0) {
                return Err(OrbifoldError::ZeroPart(point));
            }
            let sum: u32 = parts.iter().sum();
            if sum != degree {
                return Err(OrbifoldError::PartitionSum {
                    point,
                    parts: parts.clone(),
                    sum,
                    degree,
                });
            }
            let p = order.finite().ok_or(OrbifoldError::InfiniteOrder(point))?;
            for &e in parts {
                entries.push(PullbackPoint {
                    base_point: point,
                    ramification: e,
                    base_order: p,
                    inverse_order: rat(e as i64, p as i64),
                });
            }
        }
        let apparent = entries.iter().all(|e| e.inverse_order.is_integer());
        let b = entries
            .iter()
            .filter(|e| e.inverse_order.is_integer())
            .map(|e| e.inverse_order.to_integer() - num_bigint::BigInt::one())
            .sum::<num_bigint::BigInt>();
        Ok(PullbackReport {
            entries,
            excess: b.try_into().expect("excess fits in u64"),
            apparent,
        })
    }
}

impl fmt::Display for OrbifoldSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.cone_orders.iter().map(|o| o.to_string()).collect();
        write!(f, "({} ; {})", self.genus, orders.join(","))
    }
}

/// One point of the cover lying over a cone point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PullbackPoint {
    pub base_point: usize,
    pub ramification: u32,
    pub base_order: u32,
    /// `e/p`: the reciprocal of the pulled-back cone order.
    #[serde(serialize_with = "ser_rat")]
    pub inverse_order: Rat,
}

impl PullbackPoint {
    /// Residual cone order `p/e` when the pulled-back point is still singular.
    pub fn residual_order(&self) -> Option<Rat> {
        (!self.inverse_order.is_integer()).then(|| self.inverse_order.recip())
    }
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Pullback of the cone points of a signature along a cover.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PullbackReport {
    pub entries: Vec<PullbackPoint>,
    /// `Σ (e/p − 1)` over entries with integral `e/p`.
    pub excess: u64,
    /// Every `e/p` is a positive integer.
    pub apparent: bool,
}

impl PullbackReport {
    /// Cone points that survive upstairs, as reciprocal orders `e/p < 1`.
    pub fn residual_inverse_orders(&self) -> Vec<Rat> {
        self.entries
            .iter()
            .filter(|e| !e.inverse_order.is_integer())
            .map(|e| e.inverse_order.clone())
            .collect()
    }

    /// Orbifold Euler characteristic upstairs, given the genus of the cover and
    /// the ramification over non-cone points (one entry per extra critical point).
    pub fn upstairs_euler_characteristic(&self, cover_genus: u32, free_ramification: &[u32]) -> Rat {
        let mut chi = int(2 - 2 * cover_genus as i64);
        for e in &self.entries {
            chi += &e.inverse_order - Rat::one();
        }
        for &e in free_ramification {
            chi += int(e as i64 - 1);
        }
        chi
    }
}
