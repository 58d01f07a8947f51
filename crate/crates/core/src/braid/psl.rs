//! The quotient `B_3 -> PSL(2,Z)` and the Rademacher function.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::BraidWord;
use crate::{Error, Result};

/// An element of `PSL(2,Z)`, stored as the representative `[[a,b],[c,d]]`
/// with `c > 0`, or `c = 0` and `d > 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PslMatrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl PslMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::from_big(a.into(), b.into(), c.into(), d.into())
    }

    pub fn from_big(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::InvalidArgument("determinant is not 1".into()));
        }
        Ok(Self::normalized(a, b, c, d))
    }

    fn normalized(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        let flip = c.is_negative() || (c.is_zero() && d.is_negative());
        if flip {
            PslMatrix {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            PslMatrix { a, b, c, d }
        }
    }

    pub fn identity() -> Self {
        PslMatrix {
            a: BigInt::one(),
            b: BigInt::zero(),
            c: BigInt::zero(),
            d: BigInt::one(),
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries as `i64`, if they fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([self.a.to_i64()?, self.b.to_i64()?, self.c.to_i64()?, self.d.to_i64()?])
    }

    pub fn mul(&self, o: &PslMatrix) -> PslMatrix {
        Self::normalized(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn inverse(&self) -> PslMatrix {
        Self::normalized(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// Finite order elements: the identity and the elliptic classes.
    pub fn is_torsion(&self) -> bool {
        self.trace().abs() < BigInt::from(2) || self.is_identity()
    }
}

impl fmt::Display for PslMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for PslMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for PslMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let e: Vec<String> = self.entries().iter().map(|x| x.to_string()).collect();
        e.serialize(s)
    }
}

fn sigma1() -> PslMatrix {
    PslMatrix::new(1, 1, 0, 1).unwrap()
}

fn sigma2() -> PslMatrix {
    PslMatrix::new(1, 0, -1, 1).unwrap()
}

/// Image of a three-strand word: `sigma_1 -> [[1,1],[0,1]]`, `sigma_2 -> [[1,0],[-1,1]]`.
pub fn psl_image(w: &BraidWord) -> Result<PslMatrix> {
    if w.strands() != 3 {
        return Err(Error::WrongStrandCount(w.strands()));
    }
    let gens = [sigma1(), sigma2()];
    let invs = [gens[0].inverse(), gens[1].inverse()];
    let mut m = PslMatrix::identity();
    for &l in w.letters() {
        let i = l.unsigned_abs() as usize - 1;
        m = m.mul(if l > 0 { &gens[i] } else { &invs[i] });
    }
    Ok(m)
}

/// Dedekind sum `s(h, k)` for `k > 0`, `gcd(h, k) = 1`, by the reciprocity law.
pub fn dedekind_sum(h: &BigInt, k: &BigInt) -> BigRational {
    assert!(k.is_positive(), "dedekind_sum needs k > 0");
    let mut h = h.mod_floor(k);
    let mut k = k.clone();
    let mut acc = BigRational::zero();
    let mut sign = BigRational::one();
    let twelve = BigInt::from(12);
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    // s(h,k) = (h^2 + k^2 + 1) / (12 h k) - 1/4 - s(k mod h, h)
    while !h.is_zero() {
        let term = BigRational::new(&h * &h + &k * &k + BigInt::one(), &twelve * &h * &k) - &quarter;
        acc += &sign * term;
        sign = -sign;
        let next_h = k.mod_floor(&h);
        k = h;
        h = next_h;
    }
    acc
}

/// The classical Rademacher function `Phi`, integer valued, with defect 3.
/// Not homogeneous: it is nonzero on some elliptic elements.
pub fn rademacher_phi(m: &PslMatrix) -> BigInt {
    if m.c.is_zero() {
        // d = 1 after normalization
        return m.b.clone();
    }
    let v = BigRational::new(&m.a + &m.d, m.c.clone())
        - BigRational::from_integer(BigInt::from(12)) * dedekind_sum(&m.d, &m.c);
    assert!(v.is_integer(), "Rademacher function must be integral");
    v.to_integer()
}

/// Homogeneous, conjugation-invariant Rademacher quasi-morphism on `PSL(2,Z)`.
///
/// Equals `Phi(A) - 3 sign(c (a + d))` on parabolic and hyperbolic elements
/// and vanishes on torsion. Takes the value `b` on `[[1,b],[0,1]]`.
pub fn rademacher(m: &PslMatrix) -> i64 {
    if m.is_torsion() {
        return 0;
    }
    let tr = m.trace();
    let correction = 3 * (m.c.signum() * tr.signum()).to_i64().unwrap();
    (rademacher_phi(m) - BigInt::from(correction))
        .to_i64()
        .expect("Rademacher value fits in i64")
}
