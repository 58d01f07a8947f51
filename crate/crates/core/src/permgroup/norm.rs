use serde::Serialize;

use super::GroupTable;
use crate::{Error, Result};

/// The conjugation-generated norm `q_K` on every element of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormTable {
    /// Element indices of the base set `K`.
    pub base: Vec<usize>,
    /// `q[i]` is the norm of element `i`.
    pub q: Vec<u32>,
}

impl NormTable {
    pub fn get(&self, element: usize) -> u32 {
        self.q[element]
    }

    pub fn max(&self) -> u32 {
        self.q.iter().copied().max().unwrap_or(0)
    }
}

/// Computes `q_K(g)` for every `g`: the word length of `g` with respect to
/// the union `S` of the conjugacy classes of `K` and `K^-1`.
///
/// `S` is a normal subset, so each ball `S^m` is a union of conjugacy
/// classes and `x S` and `h x h^-1 S` reach the same classes. The search
/// therefore expands one representative per newly reached class.
pub fn conj_norm(group: &GroupTable, base: &[usize]) -> Result<NormTable> {
    let e = group.identity();
    if base.iter().all(|&k| k == e) {
        return Err(Error::TrivialBase);
    }
    if base.iter().any(|&k| k >= group.order()) {
        return Err(Error::NotInGroup);
    }
    let n_classes = group.conjugacy_classes().len();
    let mut in_gen = vec![false; n_classes];
    for &k in base {
        if k != e {
            in_gen[group.class_of(k)] = true;
            in_gen[group.class_of(group.inv(k))] = true;
        }
    }
    let generators: Vec<usize> = group
        .conjugacy_classes()
        .iter()
        .enumerate()
        .filter(|(c, _)| in_gen[*c])
        .flat_map(|(_, m)| m.iter().copied())
        .collect();

    let mut class_dist = vec![u32::MAX; n_classes];
    class_dist[group.class_of(e)] = 0;
    let mut frontier = vec![group.class_of(e)];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &c in &frontier {
            let x = group.conjugacy_classes()[c][0];
            for &s in &generators {
                let y = group.class_of(group.mul(x, s));
                if class_dist[y] == u32::MAX {
                    class_dist[y] = depth + 1;
                    next.push(y);
                }
            }
        }
        next.sort_unstable();
        frontier = next;
        depth += 1;
    }

    let mut q = vec![0u32; group.order()];
    let mut reached = 0usize;
    for (c, members) in group.conjugacy_classes().iter().enumerate() {
        for &m in members {
            q[m] = class_dist[c];
        }
        if class_dist[c] != u32::MAX {
            reached += members.len();
        }
    }
    if reached < group.order() {
        return Err(Error::NotGenerated {
            reached,
            order: group.order(),
        });
    }
    let mut base = base.to_vec();
    base.sort_unstable();
    base.dedup();
    Ok(NormTable { base, q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::build_group;
    use crate::Permutation;

    fn idx(g: &GroupTable, cycles: &str) -> usize {
        g.index_of(&Permutation::parse_cycles(cycles, g.degree()).unwrap())
            .unwrap()
    }

    #[test]
    fn three_cycles_in_a5() {
        let g = build_group(5, true).unwrap();
        let t = conj_norm(&g, &[idx(&g, "(1 2 3)")]).unwrap();
        assert_eq!(t.get(g.identity()), 0);
        assert_eq!(t.get(idx(&g, "(2 4 5)")), 1);
        assert_eq!(t.get(idx(&g, "(1 3 2)")), 1);
        assert_eq!(t.get(idx(&g, "(1 2)(3 4)")), 2);
        assert_eq!(t.get(idx(&g, "(1 2 3 4 5)")), 2);
    }

    #[test]
    fn non_simple_group_is_not_generated() {
        let g = build_group(4, true).unwrap();
        let err = conj_norm(&g, &[idx(&g, "(1 2)(3 4)")]).unwrap_err();
        assert_eq!(err, Error::NotGenerated { reached: 4, order: 12 });
        assert!(conj_norm(&g, &[idx(&g, "(1 2 3)")]).is_ok());
    }

    #[test]
    fn identity_only_base_is_rejected() {
        let g = build_group(5, true).unwrap();
        assert_eq!(conj_norm(&g, &[0]).unwrap_err(), Error::TrivialBase);
    }
}
