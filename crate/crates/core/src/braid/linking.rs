use super::BraidWord;
use crate::{Error, Result};

/// Pairwise linking numbers of a pure braid, strands labelled by starting position.
///
/// Each crossing between strands `i` and `j` contributes half its sign to
/// `lk[i][j]`; for a pure braid the totals are integers.
pub fn linking_numbers(w: &BraidWord) -> Result<Vec<Vec<i64>>> {
    if !w.is_pure() {
        return Err(Error::NotPure);
    }
    let n = w.strands();
    let mut at: Vec<usize> = (0..n).collect();
    let mut twice = vec![vec![0i64; n]; n];
    for &l in w.letters() {
        let p = l.unsigned_abs() as usize - 1;
        let (s, t) = (at[p], at[p + 1]);
        twice[s][t] += l.signum() as i64;
        twice[t][s] += l.signum() as i64;
        at.swap(p, p + 1);
    }
    Ok(twice
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    debug_assert!(x % 2 == 0);
                    x / 2
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BraidWord {
        BraidWord::parse(s, 3).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            linking_numbers(&w("1 1")).unwrap(),
            vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 0]]
        );
        assert_eq!(
            linking_numbers(&w("1 2 1 2 1 2")).unwrap(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
        assert_eq!(linking_numbers(&w("")).unwrap(), vec![vec![0; 3]; 3]);
        assert_eq!(linking_numbers(&w("1")).unwrap_err(), Error::NotPure);
    }

    #[test]
    fn conjugated_generator_links_outer_strands() {
        // sigma_2 sigma_1^2 sigma_2^-1 twists strands 1 and 3
        let lk = linking_numbers(&w("2 1 1 -2")).unwrap();
        assert_eq!(lk[0][2], 1);
        assert_eq!(lk[0][1] + lk[1][2], 0);
    }
}
