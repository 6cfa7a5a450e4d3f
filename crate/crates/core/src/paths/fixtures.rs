use crate::certify::{Certificates, Scheme};
use crate::error::{Error, Result};
use crate::graph::{Graph, LocalView};

/// Radius `d`, no certificates: every label within distance `d` equals the
/// center's. On a connected graph this certifies that all labels are equal.
#[derive(Clone, Debug)]
pub struct UniformLabels {
    d: usize,
}

impl UniformLabels {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Input("uniform:d needs d >= 1".into()));
        }
        Ok(UniformLabels { d })
    }
}

impl Scheme for UniformLabels {
    fn name(&self) -> String {
        format!("uniform:{}", self.d)
    }

    fn radius(&self) -> usize {
        self.d
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let mut labels = g.labels().map(|(_, l)| l);
        let first = labels.next();
        if labels.any(|l| Some(l) != first) {
            return Err(Error::not_member(self.name(), "labels differ"));
        }
        Ok(Certificates::empty_for(g))
    }

    fn verify(&self, view: &LocalView) -> bool {
        let own = view.label(view.center());
        view.graph().labels().all(|(_, l)| Some(l) == own)
    }
}

/// A weak scheme: correct only when identifiers number the path `1..=n` in
/// order. The vertex with no successor checks that its identifier, which
/// is then `n`, is even.
#[derive(Clone, Debug, Default)]
pub struct EvenLength;

impl Scheme for EvenLength {
    fn name(&self) -> String {
        "even-n".into()
    }

    fn radius(&self) -> usize {
        1
    }

    fn prove(&self, g: &Graph) -> Result<Certificates> {
        let n = g.vertex_count();
        let in_order = (1..n).all(|v| g.has_edge(v, v + 1)) && g.edge_count() + 1 == n;
        if !in_order {
            return Err(Error::not_member(self.name(), "identifiers do not number a path in order"));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::not_member(self.name(), format!("{n} vertices")));
        }
        Ok(Certificates::empty_for(g))
    }

    fn verify(&self, view: &LocalView) -> bool {
        let v = view.center();
        view.graph().has_edge(v, v + 1) || v.is_multiple_of(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::run_all;
    use crate::graph::path;

    #[test]
    fn uniform_labels_reject_near_a_deviation() {
        let scheme = UniformLabels::new(2).unwrap();
        let g = path(8).with_labels((1..=8).map(|v| (v, "01".parse().unwrap()))).unwrap();
        let certs = scheme.prove(&g).unwrap();
        assert!(run_all(&scheme, &g, &certs).unwrap().accepted);
        let bad = g.clone().with_labels([(5, "11".parse().unwrap())]).unwrap();
        assert!(scheme.prove(&bad).is_err());
        assert_eq!(run_all(&scheme, &bad, &certs).unwrap().rejecting, vec![3, 4, 5, 6, 7]);
    }

    #[test]
    fn even_length_under_canonical_ids() {
        let g = path(6);
        let certs = EvenLength.prove(&g).unwrap();
        assert!(run_all(&EvenLength, &g, &certs).unwrap().accepted);
        let odd = path(5);
        assert_eq!(run_all(&EvenLength, &odd, &Certificates::empty_for(&odd)).unwrap().rejecting, vec![5]);
        assert!(EvenLength.prove(&odd).is_err());
        assert!(EvenLength.prove(&path(4).relabel_ids(|v| 5 - v).unwrap()).is_ok());
    }
}
