use std::collections::BTreeMap;

use crate::graph::{Graph, VertexId};

/// The vertices of a path graph in order, starting from the endpoint with
/// the smaller identifier. `None` unless `g` is a path.
pub fn path_order(g: &Graph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    if n == 0 || g.edge_count() + 1 != n || g.max_degree() > 2 || !g.is_connected() {
        return None;
    }
    let start = g.vertices().find(|&v| g.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&u| Some(u) != prev) {
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    Some(order)
}

/// `J(v)`: position along [`path_order`], starting at 1.
pub fn canonical_assignment(g: &Graph) -> Option<BTreeMap<VertexId, usize>> {
    Some(path_order(g)?.into_iter().enumerate().map(|(i, v)| (v, i + 1)).collect())
}

/// The radius-1 check on positions. Accepted at every vertex of a
/// connected graph iff the graph is a path and `J` numbers it `1..=n` from
/// one end.
pub fn canonical_rule(j: usize, neighbor_js: &[usize]) -> bool {
    let degree = neighbor_js.len();
    if j == 0 || degree > 2 {
        return false;
    }
    if neighbor_js.iter().any(|&x| x + 1 != j && x != j + 1) {
        return false;
    }
    match neighbor_js {
        [] => j == 1,
        [x] => j == 1 || *x + 1 == j,
        [a, b] => j > 1 && a != b,
        _ => false,
    }
}

/// Counts the functions `V → 1..=n` accepted by [`canonical_rule`] at every
/// vertex of `path(n)` (identifiers in path order). Subtrees are cut as
/// soon as a vertex with all neighbors assigned rejects, so the count is
/// exact.
pub fn count_locally_canonical(n: usize) -> (u64, Vec<Vec<usize>>) {
    fn rule_at(i: usize, js: &[usize], n: usize) -> bool {
        let mut nb = Vec::with_capacity(2);
        if i > 0 {
            nb.push(js[i - 1]);
        }
        if i + 1 < n {
            nb.push(js[i + 1]);
        }
        canonical_rule(js[i], &nb)
    }
    fn go(js: &mut Vec<usize>, n: usize, found: &mut Vec<Vec<usize>>) {
        if js.len() == n {
            if rule_at(n - 1, js, n) {
                found.push(js.clone());
            }
            return;
        }
        for x in 1..=n {
            js.push(x);
            let k = js.len();
            if k < 2 || rule_at(k - 2, js, n) {
                go(js, n, found);
            }
            js.pop();
        }
    }
    let mut found = Vec::new();
    if n > 0 {
        go(&mut Vec::with_capacity(n), n, &mut found);
    }
    (found.len() as u64, found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path, random_tree, star};

    #[test]
    fn orders_paths_from_the_smaller_endpoint() {
        let g = path(4).relabel_ids(|v| 5 - v).unwrap();
        assert_eq!(path_order(&g), Some(vec![1, 2, 3, 4]));
        let g = Graph::unlabeled(4, [(3, 1), (1, 4), (4, 2)]).unwrap();
        assert_eq!(path_order(&g), Some(vec![2, 4, 1, 3]));
        assert_eq!(path_order(&path(1)), Some(vec![1]));
        assert_eq!(path_order(&cycle(4)), None);
        assert_eq!(path_order(&star(4)), None);
    }

    #[test]
    fn rule_cases() {
        assert!(canonical_rule(1, &[]));
        assert!(!canonical_rule(2, &[]));
        assert!(canonical_rule(1, &[2]));
        assert!(canonical_rule(5, &[4]));
        assert!(!canonical_rule(5, &[6]));
        assert!(canonical_rule(3, &[2, 4]));
        assert!(canonical_rule(3, &[4, 2]));
        assert!(!canonical_rule(3, &[2, 2]));
        assert!(!canonical_rule(1, &[2, 0]));
        assert!(!canonical_rule(3, &[2, 5]));
        assert!(!canonical_rule(2, &[1, 3, 1]));
    }

    #[test]
    fn only_the_two_path_orders_pass_everywhere() {
        for n in 1..=9 {
            let (count, found) = count_locally_canonical(n);
            let up: Vec<usize> = (1..=n).collect();
            let down: Vec<usize> = (1..=n).rev().collect();
            assert_eq!(count, if n == 1 { 1 } else { 2 }, "n = {n}");
            assert!(found.contains(&up) && found.contains(&down));
        }
    }

    #[test]
    fn trees_that_are_not_paths_have_no_order() {
        for seed in 0..20 {
            let g = random_tree(8, seed);
            assert_eq!(path_order(&g).is_some(), g.max_degree() <= 2);
        }
    }
}
