//! Canonical identifiers, the lift and shaving against brute force.

use proptest::prelude::*;

use localcert::certify::run_all;
use localcert::graph::path;
use localcert::paths::{
    canonical_assignment, canonical_rule, compare_with_generic, count_locally_canonical, lift_weak, path_order, shave,
    shaved_size_bound, EvenLength, UniformLabels,
};
use localcert::{BitString, Graph, Scheme, VertexId};

/// Every assignment of values in `1..=n` to the path `1 - 2 - ... - n`
/// that passes the rule at every vertex.
fn brute_canonical(n: usize) -> Vec<Vec<usize>> {
    let mut found = Vec::new();
    let mut js = vec![1usize; n];
    loop {
        let ok = (0..n).all(|i| {
            let mut nb = Vec::new();
            if i > 0 {
                nb.push(js[i - 1]);
            }
            if i + 1 < n {
                nb.push(js[i + 1]);
            }
            canonical_rule(js[i], &nb)
        });
        if ok {
            found.push(js.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                found.sort();
                return found;
            }
            js[k] += 1;
            if js[k] <= n {
                break;
            }
            js[k] = 1;
            k += 1;
        }
    }
}

fn ids() -> impl Strategy<Value = Vec<VertexId>> {
    Just((1..=60).collect::<Vec<VertexId>>()).prop_shuffle()
}

fn scrambled_path(n: usize, ids: &[VertexId]) -> Graph {
    path(n).relabel_ids(|v| ids[v - 1]).unwrap()
}

fn labeled(g: Graph, labels: &[&str]) -> Graph {
    let vs: Vec<_> = g.vertices().collect();
    let order = path_order(&g).unwrap_or(vs);
    g.with_labels(order.into_iter().zip(labels).map(|(v, l)| (v, l.parse::<BitString>().unwrap()))).unwrap()
}

#[test]
fn pruned_enumeration_matches_brute_force() {
    for n in 1..=6 {
        let (count, mut found) = count_locally_canonical(n);
        found.sort();
        assert_eq!(found, brute_canonical(n), "n = {n}");
        assert_eq!(count as usize, found.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_ids_are_positions(n in 1usize..20, perm in ids()) {
        let g = scrambled_path(n, &perm);
        let j = canonical_assignment(&g).unwrap();
        let order = path_order(&g).unwrap();
        for (pos, v) in order.iter().enumerate() {
            prop_assert_eq!(j[v], pos + 1);
        }
        prop_assert!(order[0] <= order[n - 1]);
    }

    #[test]
    fn lifted_verdict_ignores_identifiers(n in 1usize..14, ids in ids()) {
        let lifted = lift_weak(EvenLength);
        let g = scrambled_path(n, &ids);
        match lifted.prove(&g) {
            Ok(certs) => {
                prop_assert!(n % 2 == 0);
                prop_assert!(run_all(&lifted, &g, &certs).unwrap().accepted);
            }
            Err(_) => prop_assert!(n % 2 == 1),
        }
    }

    #[test]
    fn shaved_verdict_is_uniformity(n in 2usize..14, bad in 0usize..14, d in 1usize..4) {
        let shaved = shave(UniformLabels::new(d).unwrap()).unwrap();
        let uniform = labeled(path(n), &vec!["01"; n]);
        let certs = shaved.prove(&uniform).unwrap();
        prop_assert!(run_all(&shaved, &uniform, &certs).unwrap().accepted);
        prop_assert!(certs.size() <= shaved_size_bound(d, n, 0, 2));
        let mut labels = vec!["01"; n];
        labels[bad % n] = "00";
        let deviant = labeled(path(n), &labels);
        prop_assert!(shaved.prove(&deviant).is_err());
        prop_assert!(!run_all(&shaved, &deviant, &certs).unwrap().accepted);
    }
}

#[test]
fn shaving_needs_one_id_field() {
    let base = UniformLabels::new(3).unwrap();
    let mut last = None;
    for n in [8, 32, 128] {
        let row = compare_with_generic(&base, &labeled(path(n), &vec!["1"; n])).unwrap();
        assert_eq!(row.shaved_id_fields, 1);
        assert!(row.generic_id_fields >= 7, "{row:?}");
        assert!(row.shaved_max_bits <= row.shaved_bound && row.generic_max_bits <= row.generic_bound);
        if let Some(prev) = last {
            assert!(row.shaved_max_bits - prev <= 3, "shaved size grows by the log-n field only");
        }
        last = Some(row.shaved_max_bits);
    }
}

#[test]
fn shave_rejects_non_paths() {
    let shaved = shave(UniformLabels::new(2).unwrap()).unwrap();
    assert!(shaved.prove(&localcert::graph::cycle(5)).is_err());
    assert!(shaved.prove(&localcert::graph::star(4)).is_err());
}
