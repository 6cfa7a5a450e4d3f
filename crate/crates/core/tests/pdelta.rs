//! `P_Δ` membership, the Lemma 6 scheme and the glue experiment against
//! direct oracles on leaf strings.

use proptest::prelude::*;

use localcert::certify::{run_all, soundness_search_in, SearchConfig};
use localcert::lowerbound::{enumerate_instances, find_collision, glue, glue_demo};
use localcert::schemes::pdelta::{half_len, lemma6_bound};
use localcert::schemes::{pdelta_membership, PDeltaInstance, PDeltaScheme};
use localcert::{BitString, Graph, Scheme};

/// `inst` with the leaves under the right subtree relabeled to spell `right`.
fn with_right_half(inst: &PDeltaInstance, right: &BitString) -> Graph {
    let (_, r) = inst.subtree_roots();
    let leaves = inst.leaves_under(r);
    let labels: Vec<_> = leaves
        .iter()
        .zip(right.iter())
        .map(|(&leaf, bit)| {
            let mut l = inst.graph().label(leaf).unwrap().prefix(inst.graph().label(leaf).unwrap().len() - 1);
            l.push(bit);
            (leaf, l)
        })
        .collect();
    inst.graph().clone().with_labels(labels).unwrap()
}

fn bits(len: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), len).prop_map(BitString::from_bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn membership_is_string_equality(depth in 2usize..5, seed in any::<u64>(), left in bits(8), right in bits(8)) {
        let h = half_len(3, depth).unwrap();
        let (left, right) = (left.prefix(h), right.prefix(h));
        let inst = PDeltaInstance::generate(3, depth, &left, Some(seed)).unwrap();
        let g = with_right_half(&inst, &right);
        prop_assert_eq!(pdelta_membership(&g, 3).member, left == right);
    }

    #[test]
    fn honest_certificates_are_accepted_within_the_bound(depth in 1usize..5, r in 1usize..5, seed in any::<u64>(), half in bits(27), delta in 3usize..5) {
        prop_assume!(half_len(delta, depth).unwrap() <= 27);
        let inst = PDeltaInstance::generate(delta, depth, &half.prefix(half_len(delta, depth).unwrap()), Some(seed)).unwrap();
        let scheme = PDeltaScheme::new(delta, r).unwrap();
        let certs = scheme.prove(inst.graph()).unwrap();
        prop_assert!(run_all(&scheme, inst.graph(), &certs).unwrap().accepted);
        prop_assert!(certs.size() <= lemma6_bound(delta, r, inst.graph().vertex_count()));
    }

    /// Stale certificates of a member never certify a non-member.
    #[test]
    fn stale_certificates_are_rejected(depth in 2usize..5, r in 1usize..4, left in bits(8), right in bits(8)) {
        let h = half_len(3, depth).unwrap();
        let (left, right) = (left.prefix(h), right.prefix(h));
        prop_assume!(left != right);
        let inst = PDeltaInstance::generate(3, depth, &left, None).unwrap();
        let scheme = PDeltaScheme::new(3, r).unwrap();
        let certs = scheme.prove(inst.graph()).unwrap();
        let g = with_right_half(&inst, &right);
        prop_assert!(!run_all(&scheme, &g, &certs).unwrap().accepted);
    }
}

#[test]
fn tiny_non_member_resists_exhaustive_search() {
    // Depth 1: the two leaves must carry equal bits.
    let inst = PDeltaInstance::generate(3, 1, &"0".parse().unwrap(), None).unwrap();
    let g = with_right_half(&inst, &"1".parse().unwrap());
    assert!(!pdelta_membership(&g, 3).member);
    let scheme = PDeltaScheme::new(3, 1).unwrap();
    let candidates = g
        .vertices()
        .map(|v| {
            let mut all: Vec<BitString> = localcert::bits::all_strings_up_to(4).collect();
            for other in [0, 1] {
                let inst = PDeltaInstance::generate(3, 1, &BitString::from_uint(other, 1), None).unwrap();
                all.push(scheme.prove(inst.graph()).unwrap().get(v).unwrap().clone());
            }
            (v, all)
        })
        .collect();
    let out = soundness_search_in(&scheme, &g, &candidates, &SearchConfig::default()).unwrap();
    assert!(out.is_sound(), "{out:?}");
}

#[test]
fn collisions_exist_exactly_when_fingerprints_are_too_few() {
    let instances = enumerate_instances(3, 3).unwrap();
    assert_eq!(instances.len(), 16);
    for (cap, expect) in [(Some(1), true), (Some(2), true), (None, false)] {
        let scheme = PDeltaScheme::with_cap(3, 1, cap).unwrap();
        let search = find_collision(&scheme, &instances, 1).unwrap();
        assert_eq!(search.pair.is_some(), expect, "cap {cap:?}");
        if let Some((i, j)) = search.pair {
            let glued = glue(&scheme, &instances[i], &instances[j]).unwrap();
            assert!(!glued.membership.member);
            assert!(run_all(&scheme, &glued.graph, &glued.certs).unwrap().accepted);
        }
    }
}

#[test]
fn glue_demo_is_deterministic() {
    let a = glue_demo(3, 3, 1, Some(1)).unwrap().0;
    let b = glue_demo(3, 3, 1, Some(1)).unwrap().0;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
