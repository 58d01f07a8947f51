//! Norms and metrics checked against a naive product-set computation that shares no code
//! with the class-level search in the crate.

use std::collections::{BTreeSet, HashMap};

use kercal_core::permgroup::{build_group, conj_norm, tsuboi_metric, verify_submultiplicativity};
use proptest::prelude::*;

type Perm = Vec<u8>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // a after b; the order convention does not matter because S is normal
    b.iter().map(|&i| a[i as usize]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

fn even(a: &Perm) -> bool {
    let mut inversions = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn alternating(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Perm, n: usize, out: &mut Vec<Perm>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n as u8 {
            if !prefix.contains(&v) {
                prefix.push(v);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut all = Vec::new();
    rec(&mut Vec::new(), n, &mut all);
    all.into_iter().filter(even).collect()
}

/// `q(g)` for all `g` via the fixpoint of `S^m`, with `S` the conjugates of `k` and `k^-1`.
fn product_set_norms(group: &[Perm], k: &Perm) -> HashMap<Perm, u32> {
    let mut s = BTreeSet::new();
    for h in group {
        let c = compose(&compose(h, k), &invert(h));
        s.insert(invert(&c));
        s.insert(c);
    }
    let identity: Perm = (0..k.len() as u8).collect();
    let mut dist = HashMap::from([(identity.clone(), 0)]);
    let mut ball = BTreeSet::from([identity]);
    let mut m = 0;
    loop {
        m += 1;
        let next: BTreeSet<Perm> = ball.iter().flat_map(|x| s.iter().map(move |y| compose(x, y))).collect();
        let before = dist.len();
        for x in &next {
            dist.entry(x.clone()).or_insert(m);
        }
        if dist.len() == before {
            return dist;
        }
        ball = next;
    }
}

#[test]
fn norms_match_product_set_fixpoint() {
    for n in [5, 6] {
        let table = build_group(n, true).unwrap();
        let naive_group = alternating(n);
        assert_eq!(naive_group.len(), table.order());
        for class in table.sym_classes() {
            let k: Perm = class.representative.images().to_vec();
            let naive = product_set_norms(&naive_group, &k);
            let fast = conj_norm(&table, &[class.rep_index]).unwrap();
            for (i, g) in table.elements().iter().enumerate() {
                assert_eq!(
                    Some(&fast.get(i)),
                    naive.get(g.images()),
                    "A{n}, K = [{}], g = {g}",
                    class.representative
                );
            }
        }
    }
}

#[test]
fn symmetrized_class_counts() {
    // A4: (123) and (132) merge. A5: each 5-cycle class is closed under inversion,
    // so the two stay separate.
    let count = |n| build_group(n, true).unwrap().sym_classes().len();
    assert_eq!(count(4), 2);
    assert_eq!(count(5), 4);
    assert_eq!(count(6), 6);
}

#[test]
fn a5_metric_is_a_metric_with_no_violations() {
    let g = build_group(5, true).unwrap();
    let m = tsuboi_metric(&g).unwrap();
    m.check_axioms().unwrap();
    let sub = verify_submultiplicativity(&g).unwrap();
    assert_eq!(sub.violations, 0);
    assert_eq!(sub.triples_checked, 4 * 4 * 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_conjugation_invariant_and_subadditive(a in 0usize..360, b in 0usize..360, h in 0usize..360, k in 1usize..360) {
        let g = build_group(6, true).unwrap();
        let q = conj_norm(&g, &[k]).unwrap();
        let conj = g.mul(g.mul(h, a), g.inv(h));
        prop_assert_eq!(q.get(a), q.get(conj));
        prop_assert_eq!(q.get(a), q.get(g.inv(a)));
        prop_assert!(q.get(g.mul(a, b)) <= q.get(a) + q.get(b));
    }
}
