//! Lower bounds `log m + log(|phi(g)| / (D + C_K)) <= d([g^m], [K])` for a homogeneous
//! quasi-morphism `phi` with defect at most `D` and `|phi| <= C_K` on `K`.

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::braid::{phi_b3, BraidWord, RADEMACHER_DEFECT_BOUND};
use crate::disk::DiskMap;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Validity {
    #[serde(rename = "exact")]
    Exact,
    /// The defect is an assumed value, not a proven one.
    #[serde(rename = "conditional-on-D")]
    ConditionalOnD,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub target: String,
    pub reference: String,
    pub phi_value: f64,
    pub defect: f64,
    pub c_k: f64,
    pub m: u64,
    pub bound: f64,
    pub validity: Validity,
    /// `|phi(g)| / (D + C_K)` when every input is rational.
    pub exact_ratio: Option<(i64, i64)>,
}

fn formula(phi: f64, d: f64, c_k: f64, m: u64) -> f64 {
    (m as f64).ln() + (phi.abs() / (d + c_k)).ln()
}

impl BoundCertificate {
    /// Recomputes the bound from the stored inputs.
    pub fn recompute(&self) -> f64 {
        match self.exact_ratio {
            Some((n, d)) => (self.m as f64).ln() + (n as f64 / d as f64).ln(),
            None => formula(self.phi_value, self.defect, self.c_k, self.m),
        }
    }

    pub fn verify(&self) -> bool {
        self.recompute().to_bits() == self.bound.to_bits()
    }
}

fn check_inputs(phi: f64, d: f64, c_k: f64, m: u64) -> Result<()> {
    if phi == 0.0 {
        return Err(Error::ZeroValue);
    }
    if !phi.is_finite() || !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidArgument("defect must be positive and finite".into()));
    }
    if !(c_k >= 0.0 && c_k.is_finite()) {
        return Err(Error::InvalidArgument("C_K must be non-negative and finite".into()));
    }
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    Ok(())
}

pub fn bound_certificate(phi: f64, d: f64, c_k: f64, m: u64, validity: Validity) -> Result<BoundCertificate> {
    check_inputs(phi, d, c_k, m)?;
    Ok(BoundCertificate {
        target: format!("g^{m}"),
        reference: "K".into(),
        phi_value: phi,
        defect: d,
        c_k,
        m,
        bound: formula(phi, d, c_k, m),
        validity,
        exact_ratio: None,
    })
}

/// Certificate in `B_3` for `d([g^m], [K])` with the braid quasi-morphism, all values exact.
pub fn braid_certificate(g: &BraidWord, reference: &[BraidWord], m: u64) -> Result<BoundCertificate> {
    if reference.is_empty() {
        return Err(Error::InvalidArgument("reference set is empty".into()));
    }
    let phi = phi_b3(g)?;
    if phi.is_zero() {
        return Err(Error::ZeroValue);
    }
    let c_k = reference
        .iter()
        .map(|h| phi_b3(h).map(|v| v.abs()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .expect("non-empty");
    let d = Rational64::from_integer(RADEMACHER_DEFECT_BOUND);
    let ratio = phi.abs() / (d + c_k);
    let as_f64 = |q: Rational64| q.to_f64().expect("finite rational");
    check_inputs(as_f64(phi), as_f64(d), as_f64(c_k), m)?;
    let bound = (m as f64).ln() + (*ratio.numer() as f64 / *ratio.denom() as f64).ln();
    let names: Vec<String> = reference.iter().map(|h| format!("{:?}", h.letters())).collect();
    Ok(BoundCertificate {
        target: format!("{:?}^{m}", g.letters()),
        reference: names.join(" "),
        phi_value: as_f64(phi),
        defect: as_f64(d),
        c_k: as_f64(c_k),
        m,
        bound,
        validity: Validity::Exact,
        exact_ratio: Some((*ratio.numer(), *ratio.denom())),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AreaBound {
    pub r: f64,
    pub m: u32,
    pub n: u32,
    /// `(2 log r) |m - n|`.
    pub bound: f64,
    pub area_m: f64,
    pub area_n: f64,
}

fn shrunk(f: &DiskMap, r: f64, times: u32) -> Result<DiskMap> {
    let mut g = f.clone();
    for _ in 0..times {
        g = g.shrink(r)?;
    }
    Ok(g)
}

/// Lower bound on `d([s_r^m f], [s_r^n f])` together with the exact support areas it rests on.
pub fn area_bound(f: &DiskMap, r: f64, m: u32, n: u32) -> Result<AreaBound> {
    if !f.is_closed_form() {
        return Err(Error::NoExactArea);
    }
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("shrink factor {r} must exceed 1")));
    }
    let area_m = shrunk(f, r, m)?.support_area()?;
    let area_n = shrunk(f, r, n)?.support_area()?;
    Ok(AreaBound {
        r,
        m,
        n,
        bound: 2.0 * r.ln() * f64::from(m.abs_diff(n)),
        area_m,
        area_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::RadialTwist;

    #[test]
    fn trivial_bounds() {
        let c = bound_certificate(5.0, 3.0, 2.0, 1, Validity::ConditionalOnD).unwrap();
        assert_eq!(c.bound, 0.0);
        let c = bound_certificate(-5.0, 3.0, 2.0, 10, Validity::Exact).unwrap();
        assert_eq!(c.bound, 10f64.ln());
        assert!(c.verify());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            bound_certificate(0.0, 1.0, 0.0, 1, Validity::Exact),
            Err(Error::ZeroValue)
        );
        assert!(bound_certificate(1.0, 0.0, 0.0, 1, Validity::Exact).is_err());
        assert!(bound_certificate(1.0, 1.0, -1.0, 1, Validity::Exact).is_err());
        assert!(bound_certificate(1.0, 1.0, 0.0, 0, Validity::Exact).is_err());
    }

    #[test]
    fn braid_certificate_is_exact() {
        // g = full twist (phi = -6), K = {sigma_1^2} (phi = 0): ratio 6/6
        let g = BraidWord::new(3, vec![1, 2, 1, 2, 1, 2]).unwrap();
        let k = BraidWord::new(3, vec![1, 1]).unwrap();
        let c = braid_certificate(&g, &[k], 4).unwrap();
        assert_eq!(c.exact_ratio, Some((1, 1)));
        assert_eq!(c.bound, 4f64.ln());
        assert_eq!(c.validity, Validity::Exact);
        assert!(c.verify());
        let s1 = BraidWord::new(3, vec![1]).unwrap();
        assert_eq!(braid_certificate(&s1, &[g], 1), Err(Error::ZeroValue));
    }

    #[test]
    fn area_bounds() {
        let t = RadialTwist::new([0.1, 0.0], 0.5, 2.0, 1.0).unwrap();
        let f = DiskMap::twist(t);
        let a = area_bound(&f, 2.0, 1, 4).unwrap();
        assert_eq!(a.bound, 6.0 * 2f64.ln());
        assert_eq!(a.area_m / a.area_n, 64.0);
        assert_eq!(area_bound(&f, 2.0, 3, 3).unwrap().bound, 0.0);
    }
}
