//! Exact arithmetic in `Z[zeta_k]` for `k in {3, 4, 6}` and the Hermitian
//! adjacency matrices built over it.
//!
//! For these three orders `zeta` satisfies a monic integer quadratic, so
//! every element is `a + b * zeta` with integer `a, b`:
//!
//! | k | reduction            | conjugate of zeta |
//! |---|----------------------|-------------------|
//! | 6 | `zeta^2 = zeta - 1`  | `1 - zeta`        |
//! | 4 | `zeta^2 = -1`        | `-zeta`           |
//! | 3 | `zeta^2 = -zeta - 1` | `-1 - zeta`       |
//!
//! Other orders get floating-point matrices only: the characteristic
//! polynomial of a Hermitian adjacency matrix need not have integer
//! coefficients there.

mod matrix;

pub use matrix::{build_exact_h, build_float_h, ExactHermitianMatrix, ExactMatrix};
pub(crate) use matrix::exact_entry;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("operands have different orders ({0} and {1})")]
    OrderMismatch(u32, u32),
    #[error("exact arithmetic is only available for k in {{3, 4, 6}}, got {0}")]
    UnsupportedOrder(u32),
    #[error("root of unity needs k >= 3 and gcd(power, k) = 1, got k = {k}, power = {power}")]
    InvalidRoot { k: u32, power: u32 },
    #[error("dimension mismatch: {0} x {0} vs {1} x {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
}

/// Order of the root of unity for exact mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Three,
    Four,
    Six,
}

impl Order {
    pub const ALL: [Order; 3] = [Order::Three, Order::Four, Order::Six];

    pub fn k(self) -> u32 {
        match self {
            Order::Three => 3,
            Order::Four => 4,
            Order::Six => 6,
        }
    }

    /// `(t, u)` with `zeta^2 = t * zeta + u`.
    #[inline]
    fn square_rule(self) -> (i64, i64) {
        match self {
            Order::Three => (-1, -1),
            Order::Four => (0, -1),
            Order::Six => (1, -1),
        }
    }

    /// `(c0, c1)` with `conj(zeta) = c0 + c1 * zeta`.
    #[inline]
    fn conj_rule(self) -> (i64, i64) {
        match self {
            Order::Three => (-1, -1),
            Order::Four => (0, -1),
            Order::Six => (1, -1),
        }
    }

    /// The complex root `zeta` stands for.
    ///
    /// For `k = 3` this is `-1/2 - i*sqrt(3)/2`, the root for which the
    /// matrix of an oriented graph is exactly the negative of its `k = 6`
    /// matrix. The other primitive cube root gives the transpose, which is
    /// cospectral.
    pub fn root(self) -> RootOfUnity {
        match self {
            Order::Three => RootOfUnity { k: 3, power: 2 },
            Order::Four => RootOfUnity { k: 4, power: 1 },
            Order::Six => RootOfUnity { k: 6, power: 1 },
        }
    }
}

impl TryFrom<u32> for Order {
    type Error = CycError;

    fn try_from(k: u32) -> Result<Self, CycError> {
        match k {
            3 => Ok(Order::Three),
            4 => Ok(Order::Four),
            6 => Ok(Order::Six),
            _ => Err(CycError::UnsupportedOrder(k)),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.k())
    }
}

/// The primitive root `exp(2 pi i * power / k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    k: u32,
    power: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl RootOfUnity {
    pub fn new(k: u32, power: u32) -> Result<Self, CycError> {
        if k < 3 || gcd(power % k, k) != 1 {
            return Err(CycError::InvalidRoot { k, power });
        }
        Ok(RootOfUnity { k, power: power % k })
    }

    /// `cos(2 pi / k) + i sin(2 pi / k)`, the primitive root with the
    /// largest real part.
    pub fn principal(k: u32) -> Result<Self, CycError> {
        RootOfUnity::new(k, 1)
    }

    /// The root used for order `k`: the exact-mode embedding when
    /// `k in {3, 4, 6}`, the principal root otherwise.
    pub fn for_order(k: u32) -> Result<Self, CycError> {
        match Order::try_from(k) {
            Ok(o) => Ok(o.root()),
            Err(_) => RootOfUnity::principal(k),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn value(&self) -> Complex64 {
        if 12 % self.k == 0 {
            // Twelfth roots have exactly representable real parts.
            let j = (self.power * 12 / self.k) as usize;
            let h = 3f64.sqrt() / 2.0;
            let re = [1.0, h, 0.5, 0.0, -0.5, -h, -1.0, -h, -0.5, 0.0, 0.5, h][j];
            let im = [0.0, 0.5, h, 1.0, h, 0.5, 0.0, -0.5, -h, -1.0, -h, -0.5][j];
            return Complex64::new(re, im);
        }
        let t = 2.0 * PI * self.power as f64 / self.k as f64;
        Complex64::new(t.cos(), t.sin())
    }

    pub fn re(&self) -> f64 {
        self.value().re
    }

    pub fn exact_order(&self) -> Option<Order> {
        Order::try_from(self.k)
            .ok()
            .filter(|o| o.root() == *self)
    }
}

/// `a + b * zeta_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    pub a: i64,
    pub b: i64,
    order: Order,
}

#[inline]
fn ck(x: Option<i64>) -> i64 {
    x.expect("cyclotomic integer overflow")
}

impl CycInt {
    pub const fn new(a: i64, b: i64, order: Order) -> Self {
        CycInt { a, b, order }
    }

    pub const fn zero(order: Order) -> Self {
        CycInt::new(0, 0, order)
    }

    pub const fn one(order: Order) -> Self {
        CycInt::new(1, 0, order)
    }

    pub const fn zeta(order: Order) -> Self {
        CycInt::new(0, 1, order)
    }

    pub const fn from_int(a: i64, order: Order) -> Self {
        CycInt::new(a, 0, order)
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// `Some(a)` when the value is the rational integer `a`.
    pub fn as_integer(&self) -> Option<i64> {
        (self.b == 0).then_some(self.a)
    }

    pub fn conj(self) -> Self {
        let (c0, c1) = self.order.conj_rule();
        CycInt::new(
            ck(self.a.checked_add(ck(self.b.checked_mul(c0)))),
            ck(self.b.checked_mul(c1)),
            self.order,
        )
    }

    /// `|x|^2 = x * conj(x)`, a non-negative rational integer.
    pub fn norm(self) -> i64 {
        let n = self * self.conj();
        debug_assert_eq!(n.b, 0);
        n.a
    }

    pub fn embed(&self) -> Complex64 {
        Complex64::new(self.a as f64, 0.0) + self.order.root().value() * self.b as f64
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(CycInt::one(self.order), |acc, _| acc * self)
    }

    fn check_order(&self, other: &Self) -> Result<(), CycError> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(CycError::OrderMismatch(self.order.k(), other.order.k()))
        }
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self, CycError> {
        self.check_order(&rhs)?;
        Ok(CycInt::new(
            ck(self.a.checked_add(rhs.a)),
            ck(self.b.checked_add(rhs.b)),
            self.order,
        ))
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self, CycError> {
        self.check_order(&rhs)?;
        Ok(CycInt::new(
            ck(self.a.checked_sub(rhs.a)),
            ck(self.b.checked_sub(rhs.b)),
            self.order,
        ))
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self, CycError> {
        self.check_order(&rhs)?;
        let (t, u) = self.order.square_rule();
        // (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2
        let ac = ck(self.a.checked_mul(rhs.a));
        let bd = ck(self.b.checked_mul(rhs.b));
        let mid = ck(ck(self.a.checked_mul(rhs.b)).checked_add(ck(self.b.checked_mul(rhs.a))));
        Ok(CycInt::new(
            ck(ac.checked_add(ck(bd.checked_mul(u)))),
            ck(mid.checked_add(ck(bd.checked_mul(t)))),
            self.order,
        ))
    }

    pub fn scale(self, c: i64) -> Self {
        CycInt::new(ck(self.a.checked_mul(c)), ck(self.b.checked_mul(c)), self.order)
    }
}

// Operator forms panic on mismatched orders; use the `checked_*` methods
// where operands come from untrusted sources.
impl Add for CycInt {
    type Output = CycInt;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for CycInt {
    type Output = CycInt;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).unwrap()
    }
}

impl Mul for CycInt {
    type Output = CycInt;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).unwrap()
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> Self {
        self.scale(-1)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{b}z{}", self.order),
            (a, b) if b < 0 => write!(f, "{a}-{}z{}", -b, self.order),
            (a, b) => write!(f, "{a}+{b}z{}", self.order),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const SIX: Order = Order::Six;

    #[test]
    fn omega_identities() {
        let w = CycInt::zeta(SIX);
        assert_eq!(w.conj(), CycInt::new(1, -1, SIX));
        assert_eq!(w * w.conj(), CycInt::one(SIX));
        assert_eq!(w.pow(3), CycInt::new(-1, 0, SIX));
        assert_eq!(w.pow(2), CycInt::new(-1, 1, SIX));
        assert_eq!(w.pow(4), CycInt::new(0, -1, SIX));
        assert!((CycInt::one(SIX) + w.pow(2) + w.pow(4)).is_zero());
        assert_eq!(w + w.conj(), CycInt::one(SIX));
    }

    #[test]
    fn gaussian_and_eisenstein_units() {
        let i = CycInt::zeta(Order::Four);
        assert_eq!(i * i, CycInt::from_int(-1, Order::Four));
        assert_eq!(i.pow(4), CycInt::one(Order::Four));
        let g = CycInt::zeta(Order::Three);
        assert_eq!(g.pow(3), CycInt::one(Order::Three));
        assert!((CycInt::one(Order::Three) + g + g.pow(2)).is_zero());
        // the k = 3 root is minus omega
        assert!((g.embed() + CycInt::zeta(SIX).embed()).norm() < 1e-15);
    }

    #[test]
    fn mixed_orders_rejected() {
        let a = CycInt::one(SIX);
        let b = CycInt::one(Order::Four);
        assert_eq!(a.checked_mul(b), Err(CycError::OrderMismatch(6, 4)));
        assert_eq!(a.checked_add(b), Err(CycError::OrderMismatch(6, 4)));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_aborts() {
        let _ = CycInt::from_int(i64::MAX, SIX) * CycInt::from_int(2, SIX);
    }

    #[test]
    fn roots_of_unity() {
        assert!(RootOfUnity::new(2, 1).is_err());
        assert!(RootOfUnity::new(6, 2).is_err());
        let r = RootOfUnity::principal(10).unwrap();
        assert!((r.re() - (PI / 5.0).cos()).abs() < 1e-15);
        assert_eq!(RootOfUnity::for_order(3).unwrap().exact_order(), Some(Order::Three));
        assert_eq!(RootOfUnity::principal(3).unwrap().exact_order(), None);
        assert_eq!(RootOfUnity::for_order(12).unwrap(), RootOfUnity::principal(12).unwrap());
    }

    fn arb_cyc() -> impl Strategy<Value = (CycInt, CycInt)> {
        (0usize..3, -1000i64..1000, -1000i64..1000, -1000i64..1000, -1000i64..1000).prop_map(
            |(o, a, b, c, d)| {
                let order = Order::ALL[o];
                (CycInt::new(a, b, order), CycInt::new(c, d, order))
            },
        )
    }

    proptest! {
        #[test]
        fn embedding_is_a_ring_homomorphism((x, y) in arb_cyc()) {
            let lhs = (x * y).embed();
            let rhs = x.embed() * y.embed();
            prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
            prop_assert!(((x + y).embed() - (x.embed() + y.embed())).norm() < 1e-9);
            prop_assert!((x.conj().embed() - x.embed().conj()).norm() < 1e-9);
        }

        #[test]
        fn conjugation_laws((x, y) in arb_cyc()) {
            prop_assert_eq!(x.conj().conj(), x);
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
            let n = x * x.conj();
            prop_assert_eq!(n.b, 0);
            prop_assert!(n.a >= 0);
        }

        #[test]
        fn ring_axioms((x, y) in arb_cyc(), z in -50i64..50) {
            let z = CycInt::new(z, 1 - z, x.order());
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!((x * y) * z, x * (y * z));
            prop_assert_eq!(x * (y + z), x * y + x * z);
            prop_assert_eq!(x - x, CycInt::zero(x.order()));
        }
    }
}
