use super::map::DiskMap;
use super::trace::{trace_loop, Config3, TraceOptions, TrajectoryBundle, COLLISION_TOL};
use crate::braid::BraidWord;
use crate::{Error, Result};

/// Reads the braid word off a bundle by sweeping the x-order of the strands.
///
/// When the strands at positions `i` and `i+1` swap, the word gets `sigma_i` if the strand
/// moving right passes below the other (smaller y) and `sigma_i^-1` otherwise. With this
/// convention a counterclockwise rotation of two points is `sigma^2`.
pub fn braid_of(bundle: &TrajectoryBundle) -> Result<BraidWord> {
    let first = bundle
        .positions
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty bundle".into()))?;
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| first[a][0].total_cmp(&first[b][0]));
    let start = order;
    let mut letters = Vec::new();
    let mut events: Vec<(f64, usize, usize, f64)> = Vec::with_capacity(3);
    for w in bundle.positions.windows(2) {
        let (p0, p1) = (&w[0], &w[1]);
        events.clear();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let dx0 = p0[b][0] - p0[a][0];
            let dx1 = p1[b][0] - p1[a][0];
            if (dx0 >= 0.0) == (dx1 >= 0.0) {
                continue;
            }
            let tau = dx0 / (dx0 - dx1);
            let dy0 = p0[b][1] - p0[a][1];
            let dy1 = p1[b][1] - p1[a][1];
            let dy = dy0 + tau * (dy1 - dy0);
            if dy.abs() < COLLISION_TOL {
                return Err(Error::UnresolvedCrossing(format!(
                    "strands {} and {} coincide in projection",
                    a + 1,
                    b + 1
                )));
            }
            events.push((tau, a, b, dy));
        }
        events.sort_by(|x, y| x.0.total_cmp(&y.0));
        for &(_, a, b, dy) in &events {
            let pa = order.iter().position(|&s| s == a).unwrap();
            let pb = order.iter().position(|&s| s == b).unwrap();
            if pa.abs_diff(pb) != 1 {
                return Err(Error::UnresolvedCrossing(
                    "non-adjacent strands swap within one step".into(),
                ));
            }
            let i = pa.min(pb);
            // dy is y_b - y_a; the left strand moves right
            let left_below = if order[i] == a { dy > 0.0 } else { dy < 0.0 };
            let gen = i as i32 + 1;
            letters.push(if left_below { gen } else { -gen });
            order.swap(i, i + 1);
        }
    }
    if order != start {
        return Err(Error::NotPure);
    }
    let word = BraidWord::new(3, letters)?;
    if !word.is_pure() {
        return Err(Error::NotPure);
    }
    Ok(word)
}

/// Levels tried before giving up on a stable word.
const MAX_REFINEMENTS: u32 = 8;

/// `gamma(f^p; x)`: traces and extracts at doubling resolution until the freely reduced word
/// comes out the same three times in a row.
pub fn pure_braid(f: &DiskMap, x: &Config3, p: usize, basepoint: &Config3, opts: &TraceOptions) -> Result<BraidWord> {
    let mut prev: Option<BraidWord> = None;
    let mut repeats = 0;
    let mut last_err = None;
    for level in opts.level..opts.level + MAX_REFINEMENTS {
        let o = TraceOptions { level, ..*opts };
        let word = match trace_loop(f, x, p, basepoint, &o).and_then(|b| braid_of(&b)) {
            Ok(w) => w.free_reduce(),
            Err(e @ Error::Collision { .. }) => return Err(e),
            Err(e) => {
                last_err = Some(e);
                prev = None;
                repeats = 0;
                continue;
            }
        };
        if prev.as_ref() == Some(&word) {
            repeats += 1;
            if repeats == 2 {
                return Ok(word);
            }
        } else {
            repeats = 0;
        }
        prev = Some(word);
    }
    Err(last_err.unwrap_or_else(|| Error::UnresolvedCrossing("braid word did not stabilize".into())))
}
