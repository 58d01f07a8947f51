//! Finite permutation groups as exact carriers for conjugation-generated
//! norms and the metric on symmetrized conjugacy classes.

mod metric;
mod norm;
mod qi;

pub use metric::{tsuboi_metric, verify_submultiplicativity, MetricMatrix, SubmultiplicativityReport};
pub use norm::{conj_norm, NormTable};
pub use qi::{qi_diagnostic, DistortionReport};

use std::collections::VecDeque;

use serde::Serialize;

use crate::perm::lehmer_rank;
use crate::{Error, Permutation, Result};

const ABSENT: u32 = u32::MAX;

/// All elements of `S_n` or `A_n`, enumerated in lexicographic order, with
/// the conjugacy-class partition.
#[derive(Debug, Clone)]
pub struct GroupTable {
    degree: usize,
    alternating: bool,
    elements: Vec<Permutation>,
    // Lehmer rank -> element index.
    index: Vec<u32>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

/// A symmetrized conjugacy class `[g]`: the union of the classes of `g` and `g^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymClass {
    /// Lexicographically smallest member.
    pub representative: Permutation,
    pub rep_index: usize,
    /// Sorted element indices.
    pub members: Vec<usize>,
    /// Indices of the one or two conjugacy classes merged into this class.
    pub conj_classes: Vec<usize>,
}

impl SymClass {
    pub fn member_count(&self) -> usize {
        self.members.len()
    }
}

/// Enumerates `A_n` (when `alternating`) or `S_n` for `3 <= degree <= 8`.
pub fn build_group(degree: usize, alternating: bool) -> Result<GroupTable> {
    GroupTable::new(degree, alternating)
}

impl GroupTable {
    pub fn new(degree: usize, alternating: bool) -> Result<Self> {
        if !(3..=8).contains(&degree) {
            return Err(Error::DegreeOutOfRange(degree));
        }
        let mut elements = Vec::new();
        let mut current: Vec<u8> = (0..degree as u8).collect();
        loop {
            let p = Permutation::from_images(current.clone())?;
            if !alternating || p.is_even() {
                elements.push(p);
            }
            if !next_permutation(&mut current) {
                break;
            }
        }
        let factorial: usize = (1..=degree).product();
        let mut index = vec![ABSENT; factorial];
        for (i, p) in elements.iter().enumerate() {
            index[p.rank()] = i as u32;
        }
        let mut table = GroupTable {
            degree,
            alternating,
            elements,
            index,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        table.compute_classes();
        Ok(table)
    }

    fn generators(&self) -> Vec<Permutation> {
        let n = self.degree;
        if self.alternating {
            (3..=n)
                .map(|k| Permutation::parse_cycles(&format!("(1 2 {k})"), n).unwrap())
                .collect()
        } else {
            let long: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            vec![
                Permutation::parse_cycles("(1 2)", n).unwrap(),
                Permutation::parse_cycles(&format!("({})", long.join(" ")), n).unwrap(),
            ]
        }
    }

    fn compute_classes(&mut self) {
        let gens = self.generators();
        let n = self.elements.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            let mut members = vec![start];
            class_of[start] = cid;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for h in &gens {
                    let c = self.elements[i].conjugate_by(h);
                    let j = self.index_of(&c).expect("conjugate stays in the group");
                    if class_of[j] == usize::MAX {
                        class_of[j] = cid;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    /// Index of the identity (always 0 under lexicographic order).
    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        if p.degree() != self.degree {
            return None;
        }
        match self.index[lehmer_rank(p.images())] {
            ABSENT => None,
            i => Some(i as usize),
        }
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let pa = self.elements[a].images();
        let pb = self.elements[b].images();
        let mut buf = [0u8; 8];
        for (k, &j) in pb.iter().enumerate() {
            buf[k] = pa[j as usize];
        }
        self.index[lehmer_rank(&buf[..self.degree])] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index_of(&self.elements[a].inverse()).unwrap()
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Symmetrized classes of non-identity elements, ordered by representative.
    pub fn sym_classes(&self) -> Vec<SymClass> {
        let e = self.identity();
        let mut done = vec![false; self.classes.len()];
        let mut out = Vec::new();
        for (cid, members) in self.classes.iter().enumerate() {
            if done[cid] || members.contains(&e) {
                continue;
            }
            let inv_cid = self.class_of[self.inv(members[0])];
            done[cid] = true;
            done[inv_cid] = true;
            let mut conj_classes = vec![cid];
            let mut all = members.clone();
            if inv_cid != cid {
                conj_classes.push(inv_cid);
                all.extend_from_slice(&self.classes[inv_cid]);
                all.sort_unstable();
            }
            let rep_index = all[0];
            out.push(SymClass {
                representative: self.elements[rep_index].clone(),
                rep_index,
                members: all,
                conj_classes,
            });
        }
        out.sort_by(|a, b| a.representative.cmp(&b.representative));
        out
    }

    /// The symmetrized class containing element `a`, if non-identity.
    pub fn sym_class_of(&self, a: usize) -> Option<SymClass> {
        self.sym_classes()
            .into_iter()
            .find(|c| c.members.binary_search(&a).is_ok())
    }
}

pub fn sym_classes(group: &GroupTable) -> Vec<SymClass> {
    group.sym_classes()
}

fn next_permutation(v: &mut [u8]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_sizes(g: &GroupTable) -> Vec<usize> {
        let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn alternating_orders_and_class_equations() {
        let a3 = build_group(3, true).unwrap();
        assert_eq!(a3.order(), 3);
        let a4 = build_group(4, true).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(class_sizes(&a4), vec![1, 3, 4, 4]);
        let a5 = build_group(5, true).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(class_sizes(&a5), vec![1, 12, 12, 15, 20]);
        let s4 = build_group(4, false).unwrap();
        assert_eq!(class_sizes(&s4), vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn degree_range_is_enforced() {
        assert_eq!(build_group(2, true).unwrap_err(), Error::DegreeOutOfRange(2));
        assert_eq!(build_group(9, true).unwrap_err(), Error::DegreeOutOfRange(9));
    }

    #[test]
    fn elements_are_lexicographic_and_indexed() {
        let g = build_group(5, true).unwrap();
        assert!(g.element(0).is_identity());
        for w in g.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, p) in g.elements().iter().enumerate() {
            assert_eq!(g.index_of(p), Some(i));
        }
        let odd = Permutation::parse_cycles("(1 2)", 5).unwrap();
        assert_eq!(g.index_of(&odd), None);
    }

    #[test]
    fn multiplication_matches_composition() {
        let g = build_group(5, true).unwrap();
        for a in (0..60).step_by(7) {
            for b in (0..60).step_by(5) {
                let c = g.element(a).compose(g.element(b));
                assert_eq!(g.index_of(&c), Some(g.mul(a, b)));
            }
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
        }
    }

    #[test]
    fn symmetrized_class_counts() {
        assert_eq!(build_group(3, true).unwrap().sym_classes().len(), 1);
        assert_eq!(build_group(4, true).unwrap().sym_classes().len(), 2);
        let a5 = build_group(5, true).unwrap().sym_classes();
        assert_eq!(a5.len(), 4);
        let total: usize = a5.iter().map(SymClass::member_count).sum();
        assert_eq!(total, 59);
    }

    #[test]
    fn representative_is_invariant_under_inverse_and_conjugation() {
        let g = build_group(6, true).unwrap();
        let classes = g.sym_classes();
        for c in &classes {
            for &m in c.members.iter().step_by(11) {
                let via_inv = g.sym_class_of(g.inv(m)).unwrap();
                assert_eq!(via_inv.representative, c.representative);
                let h = 17 % g.order();
                let conj = g.mul(g.mul(h, m), g.inv(h));
                assert_eq!(g.sym_class_of(conj).unwrap().representative, c.representative);
            }
        }
    }
}
