//! Homogeneous quasi-morphisms on `B_3` and their sampled defect.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use super::{linking_numbers, psl_image, rademacher, BraidWord};
use crate::rng::stream_rng;
use crate::{Error, Result};

/// Upper bound on the defect of [`QmSpec::RademacherMinusWrithe`].
///
/// The classical Rademacher function has defect 3 and homogenization at
/// most doubles a defect. The bound is attained:
/// `phi(s1^2 s2^2) - phi(s1^2) - phi(s2^2) = -6`.
pub const RADEMACHER_DEFECT_BOUND: i64 = 6;

/// Which quasi-morphism to evaluate on a braid word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum QmSpec {
    /// `rademacher(psl_image(w)) - rademacher(psl_image(sigma_1)) * writhe(w)`; vanishes on `sigma_1`.
    RademacherMinusWrithe,
    /// The exponent sum, a homomorphism.
    Writhe,
    /// `c12 lk_12 + c13 lk_13 + c23 lk_23`, defined on pure braids only.
    LinkingCombination([Rational64; 3]),
}

impl QmSpec {
    pub fn name(&self) -> &'static str {
        match self {
            QmSpec::RademacherMinusWrithe => "rademacher-minus-writhe",
            QmSpec::Writhe => "writhe",
            QmSpec::LinkingCombination(_) => "linking-combination",
        }
    }

    pub fn evaluate(&self, w: &BraidWord) -> Result<Rational64> {
        match self {
            QmSpec::RademacherMinusWrithe => phi_b3(w),
            QmSpec::Writhe => Ok(Rational64::from_integer(w.writhe())),
            QmSpec::LinkingCombination(c) => {
                let lk = linking_numbers(w)?;
                let n = w.strands();
                let mut v = Rational64::zero();
                for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                    if j < n {
                        v += c[k] * Rational64::from_integer(lk[i][j]);
                    }
                }
                Ok(v)
            }
        }
    }

    /// Value on `sigma_1`, through `sigma_1^2` so that pure-only specs are covered.
    pub fn value_on_sigma1(&self) -> Result<Rational64> {
        let s = BraidWord::new(3, vec![1, 1])?;
        Ok(self.evaluate(&s)? / 2)
    }

    /// Analytic defect bound, when one is known.
    pub fn defect_bound(&self) -> Option<Rational64> {
        match self {
            QmSpec::RademacherMinusWrithe => Some(Rational64::from_integer(RADEMACHER_DEFECT_BOUND)),
            QmSpec::Writhe | QmSpec::LinkingCombination(_) => Some(Rational64::zero()),
        }
    }

    pub fn requires_pure(&self) -> bool {
        matches!(self, QmSpec::LinkingCombination(_))
    }
}

impl fmt::Display for QmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QmSpec::LinkingCombination(c) => write!(f, "linking-combination:{},{},{}", c[0], c[1], c[2]),
            other => write!(f, "{}", other.name()),
        }
    }
}

impl FromStr for QmSpec {
    type Err = Error;

    /// Accepts `rademacher-minus-writhe`, `writhe` and `linking-combination:c12,c13,c23`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rademacher-minus-writhe" => Ok(QmSpec::RademacherMinusWrithe),
            "writhe" => Ok(QmSpec::Writhe),
            _ => {
                let coeffs = s
                    .strip_prefix("linking-combination:")
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown quasi-morphism {s:?}")))?;
                let parsed: Vec<Rational64> = coeffs
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<Rational64>()
                            .map_err(|_| Error::InvalidArgument(format!("bad coefficient {c:?}")))
                    })
                    .collect::<Result<_>>()?;
                let arr: [Rational64; 3] = parsed
                    .try_into()
                    .map_err(|_| Error::InvalidArgument("expected three coefficients".into()))?;
                Ok(QmSpec::LinkingCombination(arr))
            }
        }
    }
}

/// The homogeneous quasi-morphism on `B_3` that vanishes on `sigma_1`.
pub fn phi_b3(w: &BraidWord) -> Result<Rational64> {
    let sigma1 = rademacher(&psl_image(&BraidWord::new(3, vec![1])?)?);
    let r = rademacher(&psl_image(w)?);
    Ok(Rational64::from_integer(r - sigma1 * w.writhe()))
}

/// `phi(w^p) / p` for `p = 1..=p_max`.
pub fn homogenize<F>(phi: F, w: &BraidWord, p_max: u32) -> Result<Vec<Rational64>>
where
    F: Fn(&BraidWord) -> Result<Rational64>,
{
    if p_max == 0 {
        return Err(Error::InvalidArgument("p_max must be at least 1".into()));
    }
    (1..=p_max)
        .map(|p| Ok(phi(&w.pow(p as i64))? / Rational64::from_integer(p as i64)))
        .collect()
}

/// Random braid words on three strands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordSampler {
    pub max_len: usize,
    /// Emit products of conjugated pure generators instead of arbitrary words.
    pub pure: bool,
}

impl Default for WordSampler {
    fn default() -> Self {
        WordSampler {
            max_len: 10,
            pure: false,
        }
    }
}

impl WordSampler {
    pub fn sample<R: Rng>(&self, rng: &mut R) -> BraidWord {
        let len = rng.random_range(1..=self.max_len.max(1));
        let letter = |rng: &mut R| {
            let g = rng.random_range(1..=2);
            if rng.random_bool(0.5) {
                g
            } else {
                -g
            }
        };
        if !self.pure {
            let letters = (0..len).map(|_| letter(rng)).collect();
            return BraidWord::new(3, letters).unwrap();
        }
        let mut out = BraidWord::empty(3);
        for _ in 0..len.div_ceil(3) {
            let g = if rng.random_bool(0.5) { 1 } else { 2 };
            let e = if rng.random_bool(0.5) { 2 } else { -2 };
            let gen = BraidWord::new(3, vec![g; 2]).unwrap().pow(e / 2);
            let u_len = rng.random_range(0..=2);
            let u = BraidWord::new(3, (0..u_len).map(|_| letter(rng)).collect()).unwrap();
            out = out.concat(&gen.conjugate_by(&u));
        }
        out
    }
}

/// Largest sampled `|phi(gh) - phi(g) - phi(h)|`; a lower bound for the defect.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefectEstimate {
    pub value: Rational64,
    pub samples: usize,
    pub seed: u64,
    /// A pair attaining `value`, when it is nonzero.
    pub witness: Option<(BraidWord, BraidWord)>,
}

/// Samples `n` pairs, pair `i` drawn from stream `i` of `seed`.
pub fn defect_sample(spec: &QmSpec, sampler: &WordSampler, n: usize, seed: u64) -> Result<DefectEstimate> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let sampler = WordSampler {
        pure: sampler.pure || spec.requires_pure(),
        ..sampler.clone()
    };
    let mut best = DefectEstimate {
        value: Rational64::zero(),
        samples: n,
        seed,
        witness: None,
    };
    for i in 0..n {
        let mut rng = stream_rng(seed, i as u64);
        let g = sampler.sample(&mut rng);
        let h = sampler.sample(&mut rng);
        let dev = (spec.evaluate(&g.concat(&h))? - spec.evaluate(&g)? - spec.evaluate(&h)?).abs();
        if dev > best.value {
            best.value = dev;
            best.witness = Some((g, h));
        }
    }
    Ok(best)
}
