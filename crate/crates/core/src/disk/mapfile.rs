//! Line-oriented map descriptions.
//!
//! ```text
//! # two twists balanced to zero Calabi invariant
//! twist -0.45 0 0.5 12.566 1
//! twist 0.55 0 0.35 -1 1
//! kercal
//! flow moving-bump 0 0 0.2 0.4 1.0 1 steps=4000 reparam=0.3
//! shrink 2
//! ```
//!
//! * `twist cx cy R amplitude exponent [power]`
//! * `flow radial-bump cx cy R amplitude exponent [steps=N] [reparam=a]`
//! * `flow moving-bump cx cy orbit R amplitude exponent [steps=N] [reparam=a]`
//! * `kercal` replaces a map of exactly two twists by the pair with the second amplitude
//!   solved so that the Calabi invariant vanishes
//! * `shrink r` conjugates everything so far by `p -> p / r`

use super::hamiltonian::{Builtin, HamiltonianFlow};
use super::map::{make_kercal_map, DiskMap, Piece};
use super::twist::RadialTwist;
use crate::{Error, Result};

pub fn parse_map(text: &str) -> Result<DiskMap> {
    let mut map = DiskMap::identity();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |msg: String| Error::MapParse { line, msg };
        let words: Vec<&str> = content.split_whitespace().collect();
        match words[0] {
            "twist" => {
                let nums = numbers(&words[1..]).map_err(err)?;
                if nums.len() != 5 && nums.len() != 6 {
                    return Err(err("twist needs cx cy R amplitude exponent [power]".into()));
                }
                let t =
                    RadialTwist::new([nums[0], nums[1]], nums[2], nums[3], nums[4]).map_err(|e| err(e.to_string()))?;
                let power = match nums.get(5) {
                    Some(&p) if p.fract() == 0.0 && p.abs() < 1e6 => p as i32,
                    Some(p) => return Err(err(format!("power {p} is not an integer"))),
                    None => 1,
                };
                map = DiskMap::twists(&[(t, power)]).compose(&map);
            }
            "flow" => {
                let flow = parse_flow(&words[1..]).map_err(err)?;
                map = DiskMap::flow(flow).compose(&map);
            }
            "kercal" => {
                if words.len() != 1 {
                    return Err(err("kercal takes no arguments".into()));
                }
                let twists: Vec<RadialTwist> = match map.pieces() {
                    [Piece::Twist {
                        twist: a,
                        power: 1,
                        scale: s1,
                    }, Piece::Twist {
                        twist: b,
                        power: 1,
                        scale: s2,
                    }] if *s1 == 1.0 && *s2 == 1.0 => {
                        vec![*a, *b]
                    }
                    _ => return Err(err("kercal needs exactly two unshrunk twists before it".into())),
                };
                map = make_kercal_map(twists[0], twists[1]).map_err(|e| err(e.to_string()))?;
            }
            "shrink" => {
                let nums = numbers(&words[1..]).map_err(err)?;
                if nums.len() != 1 {
                    return Err(err("shrink takes one factor".into()));
                }
                map = map.shrink(nums[0]).map_err(|e| err(e.to_string()))?;
            }
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }
    Ok(map)
}

fn numbers(words: &[&str]) -> std::result::Result<Vec<f64>, String> {
    words
        .iter()
        .map(|w| w.parse::<f64>().map_err(|_| format!("expected a number, got {w:?}")))
        .collect()
}

fn parse_flow(words: &[&str]) -> std::result::Result<HamiltonianFlow, String> {
    let (name, rest) = words.split_first().ok_or("flow needs a built-in name")?;
    let (positional, options): (Vec<&str>, Vec<&str>) = rest.iter().partition(|w| !w.contains('='));
    let nums = numbers(&positional)?;
    let builtin = match (*name, nums.as_slice()) {
        ("radial-bump", &[cx, cy, radius, amplitude, exponent]) => Builtin::RadialBump {
            center: [cx, cy],
            radius,
            amplitude,
            exponent,
        },
        ("moving-bump", &[cx, cy, orbit, radius, amplitude, exponent]) => Builtin::MovingBump {
            center: [cx, cy],
            orbit,
            radius,
            amplitude,
            exponent,
        },
        ("radial-bump", _) => return Err("radial-bump needs cx cy R amplitude exponent".into()),
        ("moving-bump", _) => return Err("moving-bump needs cx cy orbit R amplitude exponent".into()),
        (other, _) => return Err(format!("unknown Hamiltonian {other:?}")),
    };
    let mut flow = HamiltonianFlow::new(builtin).map_err(|e| e.to_string())?;
    for opt in options {
        let (key, value) = opt.split_once('=').expect("partitioned on '='");
        flow = match key {
            "steps" => {
                let n = value
                    .parse::<usize>()
                    .map_err(|_| format!("bad step count {value:?}"))?;
                flow.with_steps(n)
            }
            "reparam" => {
                let a = value
                    .parse::<f64>()
                    .map_err(|_| format!("bad reparametrization {value:?}"))?;
                flow.with_reparam(a)
            }
            other => return Err(format!("unknown flow option {other:?}")),
        }
        .map_err(|e| e.to_string())?;
    }
    Ok(flow)
}
