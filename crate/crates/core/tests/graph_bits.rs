//! Bit codes and graph primitives against naive oracles.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use localcert::bits::{all_strings_up_to, count_strings_up_to, gamma_len, idbits, BitReader, BitWriter};
use localcert::graph::{
    certs_from_json, certs_to_json, graph_from_json, graph_from_text, graph_to_json, graph_to_text, induced_view,
    random_bounded_degree, random_labels, random_tree,
};
use localcert::{BitString, Certificates, Graph, VertexId};

/// Textbook Elias gamma of `x + 1`.
fn naive_gamma(x: usize) -> String {
    let bin = format!("{:b}", x + 1);
    format!("{}{bin}", "0".repeat(bin.len() - 1))
}

/// All-pairs distances by repeated relaxation.
fn floyd(g: &Graph) -> BTreeMap<(VertexId, VertexId), usize> {
    let vs: Vec<VertexId> = g.vertices().collect();
    let mut d = BTreeMap::new();
    for &u in &vs {
        for &v in &vs {
            let w = if u == v {
                0
            } else if g.has_edge(u, v) {
                1
            } else {
                usize::MAX / 4
            };
            d.insert((u, v), w);
        }
    }
    for &k in &vs {
        for &i in &vs {
            for &j in &vs {
                let via = d[&(i, k)] + d[&(k, j)];
                if via < d[&(i, j)] {
                    d.insert((i, j), via);
                }
            }
        }
    }
    d
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..14, 2usize..5, any::<u64>(), 0usize..4).prop_map(|(n, deg, seed, bits)| {
        let g = if seed % 2 == 0 { random_tree(n, seed) } else { random_bounded_degree(n, deg, seed).unwrap() };
        random_labels(&g, bits, seed ^ 0xabc)
    })
}

#[test]
fn idbits_matches_the_binary_length() {
    assert_eq!(idbits(0), 0);
    for n in 1..5000usize {
        assert_eq!(idbits(n), format!("{n:b}").len(), "n = {n}");
    }
}

#[test]
fn string_enumeration_is_complete() {
    for max in 0..8 {
        let all: Vec<BitString> = all_strings_up_to(max).collect();
        assert_eq!(all.len() as u64, count_strings_up_to(max));
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), all.len());
        assert!(all.windows(2).all(|w| w[0].len() <= w[1].len()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_matches_the_textbook_code(x in 0usize..100_000) {
        let mut w = BitWriter::new();
        w.write_gamma(x);
        let bits = w.finish();
        prop_assert_eq!(bits.to_string(), naive_gamma(x));
        prop_assert_eq!(bits.len(), gamma_len(x));
        let mut r = BitReader::new(&bits);
        prop_assert_eq!(r.read_gamma(), Some(x));
        prop_assert!(r.is_exhausted());
    }

    #[test]
    fn hex_round_trips(bits in prop::collection::vec(any::<bool>(), 0..70)) {
        let s = BitString::from_bits(bits.clone());
        prop_assert_eq!(BitString::from_hex(&s.to_hex(), bits.len()).unwrap(), s);
    }

    #[test]
    fn bfs_agrees_with_all_pairs_relaxation(g in arb_graph()) {
        let d = floyd(&g);
        for u in g.vertices() {
            let bfs = g.bfs(u);
            for v in g.vertices() {
                let want = d[&(u, v)];
                prop_assert_eq!(bfs.get(&v).copied(), (want < usize::MAX / 4).then_some(want));
            }
        }
    }

    #[test]
    fn views_are_induced_balls(g in arb_graph(), r in 0usize..4) {
        let certs: Certificates = g.vertices().map(|v| (v, BitString::from_uint(v as u64, 8))).collect();
        let d = floyd(&g);
        for v in g.vertices() {
            let view = induced_view(&g, &certs, v, r).unwrap();
            let ball: BTreeSet<VertexId> = g.vertices().filter(|&u| d[&(v, u)] <= r).collect();
            prop_assert_eq!(view.graph().vertices().collect::<BTreeSet<_>>(), ball.clone());
            for &a in &ball {
                prop_assert_eq!(view.cert(a), certs.get(a));
                prop_assert_eq!(view.label(a), g.label(a));
                for &b in &ball {
                    prop_assert_eq!(view.graph().has_edge(a, b), g.has_edge(a, b));
                }
            }
        }
    }

    #[test]
    fn formats_round_trip(g in arb_graph()) {
        prop_assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(graph_from_text(&graph_to_text(&g)).unwrap(), g.clone());
        let certs: Certificates = g.vertices().map(|v| (v, BitString::from_uint((v as u64 * 7) % 32, 5))).collect();
        prop_assert_eq!(certs_from_json(&certs_to_json(&certs)).unwrap(), certs);
    }
}
