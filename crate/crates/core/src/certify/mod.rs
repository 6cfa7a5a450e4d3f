//! Schemes, certificate assignments and the global accept/reject rule.
//!
//! A [`Scheme`] pairs a prover with an `r`-local verifier. The verifier only
//! ever receives a [`LocalView`], so locality is structural. A graph is
//! accepted under an assignment when the verifier accepts at every vertex.

mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::graph::{induced_view, Graph, LocalView, VertexId};

pub use search::{search_space, soundness_search, soundness_search_in, SearchConfig, SoundnessOutcome};

/// A certificate per vertex. Its size is the longest certificate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Certificates(BTreeMap<VertexId, BitString>);

impl Certificates {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every vertex of `g` gets the empty certificate.
    pub fn empty_for(g: &Graph) -> Self {
        g.vertices().map(|v| (v, BitString::new())).collect()
    }

    pub fn get(&self, v: VertexId) -> Option<&BitString> {
        self.0.get(&v)
    }

    pub fn insert(&mut self, v: VertexId, cert: BitString) -> Option<BitString> {
        self.0.insert(v, cert)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &BitString)> + '_ {
        self.0.iter().map(|(&v, c)| (v, c))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.keys().copied()
    }

    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Certificates {
        Certificates(keep.iter().filter_map(|v| self.0.get(v).map(|c| (*v, c.clone()))).collect())
    }

    /// Maximum certificate length in bits.
    pub fn size(&self) -> usize {
        self.0.values().map(BitString::len).max().unwrap_or(0)
    }

    pub fn size_stats(&self) -> SizeStats {
        let lens: Vec<usize> = self.0.values().map(BitString::len).collect();
        SizeStats {
            min: lens.iter().copied().min().unwrap_or(0),
            max: lens.iter().copied().max().unwrap_or(0),
            mean: if lens.is_empty() { 0.0 } else { lens.iter().sum::<usize>() as f64 / lens.len() as f64 },
        }
    }

    /// True when every vertex of `g` has an entry.
    pub fn is_total_on(&self, g: &Graph) -> bool {
        g.vertices().all(|v| self.0.contains_key(&v))
    }

    pub fn into_inner(self) -> BTreeMap<VertexId, BitString> {
        self.0
    }
}

impl FromIterator<(VertexId, BitString)> for Certificates {
    fn from_iter<I: IntoIterator<Item = (VertexId, BitString)>>(iter: I) -> Self {
        Certificates(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeStats {
    pub min: usize,
    pub max: usize,
    pub mean: f64,
}

/// A proof labeling scheme: a radius, a prover and a verifier.
///
/// Verifiers must be pure: the same view always gets the same answer. A
/// verifier that cannot decode a certificate it needs rejects.
pub trait Scheme: Send + Sync {
    fn name(&self) -> String;

    fn radius(&self) -> usize;

    /// Honest certificates for a member of the property. Non-members are a
    /// contract violation reported as [`Error::NotMember`].
    fn prove(&self, g: &Graph) -> Result<Certificates>;

    fn verify(&self, view: &LocalView) -> bool;
}

pub type SchemeRef = Arc<dyn Scheme>;

impl<S: Scheme + ?Sized> Scheme for Arc<S> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn radius(&self) -> usize {
        (**self).radius()
    }
    fn prove(&self, g: &Graph) -> Result<Certificates> {
        (**self).prove(g)
    }
    fn verify(&self, view: &LocalView) -> bool {
        (**self).verify(view)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub accepted: bool,
    pub rejecting: Vec<VertexId>,
}

impl Verdict {
    pub fn from_rejecting(mut rejecting: Vec<VertexId>) -> Self {
        rejecting.sort_unstable();
        rejecting.dedup();
        Verdict { accepted: rejecting.is_empty(), rejecting }
    }
}

/// Runs the verifier at every vertex on its radius-`scheme.radius()` view.
pub fn run_all(scheme: &dyn Scheme, g: &Graph, certs: &Certificates) -> Result<Verdict> {
    if let Some(v) = g.vertices().find(|&v| certs.get(v).is_none()) {
        return Err(Error::Input(format!("certificate assignment has no entry for vertex {v}")));
    }
    let r = scheme.radius();
    let vertices: Vec<VertexId> = g.vertices().collect();
    let rejecting = vertices
        .par_iter()
        .map(|&v| induced_view(g, certs, v, r).map(|view| (!scheme.verify(&view)).then_some(v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict::from_rejecting(rejecting.into_iter().flatten().collect()))
}

#[derive(Clone, Debug)]
pub struct CompletenessFailure {
    pub instance: usize,
    pub vertex: VertexId,
    pub view: LocalView,
}

#[derive(Clone, Debug, Default)]
pub struct CompletenessReport {
    pub instances: usize,
    pub failures: Vec<CompletenessFailure>,
    /// Largest certificate the prover emitted over all instances.
    pub max_cert_bits: usize,
}

impl CompletenessReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Proves and verifies every instance; any rejection is recorded with the
/// rejecting vertex's view. A prover error aborts the check.
pub fn check_completeness<'a>(
    scheme: &dyn Scheme,
    yes_instances: impl IntoIterator<Item = &'a Graph>,
) -> Result<CompletenessReport> {
    let mut report = CompletenessReport::default();
    for (i, g) in yes_instances.into_iter().enumerate() {
        let certs = scheme.prove(g)?;
        report.max_cert_bits = report.max_cert_bits.max(certs.size());
        let verdict = run_all(scheme, g, &certs)?;
        for v in verdict.rejecting {
            let view = induced_view(g, &certs, v, scheme.radius())?;
            report.failures.push(CompletenessFailure { instance: i, vertex: v, view });
        }
        report.instances += 1;
    }
    Ok(report)
}

/// Verifier that accepts everything. Its prover hands out empty certificates.
#[derive(Clone, Debug)]
pub struct AcceptAll {
    pub radius: usize,
}

impl Scheme for AcceptAll {
    fn name(&self) -> String {
        "accept-all".into()
    }
    fn radius(&self) -> usize {
        self.radius
    }
    fn prove(&self, g: &Graph) -> Result<Certificates> {
        Ok(Certificates::empty_for(g))
    }
    fn verify(&self, _: &LocalView) -> bool {
        true
    }
}

/// Verifier that rejects everything; its property is empty.
#[derive(Clone, Debug)]
pub struct RejectAll {
    pub radius: usize,
}

impl Scheme for RejectAll {
    fn name(&self) -> String {
        "reject-all".into()
    }
    fn radius(&self) -> usize {
        self.radius
    }
    fn prove(&self, _: &Graph) -> Result<Certificates> {
        Err(Error::not_member("reject-all", "the property is empty"))
    }
    fn verify(&self, _: &LocalView) -> bool {
        false
    }
}

/// The same scheme declared at a larger radius: the verifier receives the
/// wider view and cuts it back down before delegating.
#[derive(Clone, Debug)]
pub struct Widened<S> {
    inner: S,
    radius: usize,
}

impl<S: Scheme> Widened<S> {
    pub fn new(inner: S, radius: usize) -> Result<Self> {
        if radius < inner.radius() {
            return Err(Error::Input(format!(
                "cannot widen {} from radius {} down to {radius}",
                inner.name(),
                inner.radius()
            )));
        }
        Ok(Widened { inner, radius })
    }
}

impl<S: Scheme> Scheme for Widened<S> {
    fn name(&self) -> String {
        format!("{}@{}", self.inner.name(), self.radius)
    }
    fn radius(&self) -> usize {
        self.radius
    }
    fn prove(&self, g: &Graph) -> Result<Certificates> {
        self.inner.prove(g)
    }
    fn verify(&self, view: &LocalView) -> bool {
        self.inner.verify(&view.restrict(self.inner.radius()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, random_bounded_degree};
    use proptest::prelude::*;

    #[test]
    fn constant_verifiers() {
        let g = path(3);
        let certs = Certificates::empty_for(&g);
        let v = run_all(&AcceptAll { radius: 1 }, &g, &certs).unwrap();
        assert_eq!(v, Verdict { accepted: true, rejecting: vec![] });
        let v = run_all(&RejectAll { radius: 1 }, &g, &certs).unwrap();
        assert_eq!(v, Verdict { accepted: false, rejecting: vec![1, 2, 3] });
    }

    #[test]
    fn partial_assignments_are_an_input_error() {
        let g = path(3);
        let certs: Certificates = [(1, BitString::new())].into_iter().collect();
        assert!(run_all(&AcceptAll { radius: 1 }, &g, &certs).is_err());
    }

    #[test]
    fn size_is_the_longest_certificate() {
        let certs: Certificates =
            [(1, BitString::parse("1").unwrap()), (2, BitString::parse("0110").unwrap())].into_iter().collect();
        assert_eq!(certs.size(), 4);
        let s = certs.size_stats();
        assert_eq!((s.min, s.max), (1, 4));
        assert!((s.mean - 2.5).abs() < 1e-12);
    }

    #[test]
    fn widening_cannot_shrink() {
        assert!(Widened::new(AcceptAll { radius: 2 }, 1).is_err());
        assert_eq!(Widened::new(AcceptAll { radius: 1 }, 3).unwrap().radius(), 3);
    }

    /// Accepts iff the center's certificate equals the XOR-parity of the
    /// certificates it can see; a deterministic function of the view.
    struct ParityProbe;

    impl Scheme for ParityProbe {
        fn name(&self) -> String {
            "parity-probe".into()
        }
        fn radius(&self) -> usize {
            2
        }
        fn prove(&self, g: &Graph) -> Result<Certificates> {
            Ok(Certificates::empty_for(g))
        }
        fn verify(&self, view: &LocalView) -> bool {
            let ones: usize = view.certs().iter().map(|(_, c)| c.iter().filter(|&b| b).count()).sum();
            ones % 2 == view.graph().vertex_count() % 2
        }
    }

    proptest! {
        #[test]
        fn verdicts_depend_only_on_views(n in 2usize..12, seed in any::<u64>()) {
            let g = random_bounded_degree(n, 3, seed).unwrap();
            let certs: Certificates = g
                .vertices()
                .map(|v| (v, BitString::from_uint((v as u64).wrapping_mul(seed) % 8, 3)))
                .collect();
            let first = run_all(&ParityProbe, &g, &certs).unwrap();
            let second = run_all(&ParityProbe, &g, &certs).unwrap();
            prop_assert_eq!(&first, &second);
            for v in g.vertices() {
                let view = induced_view(&g, &certs, v, 2).unwrap();
                let rederived = induced_view(&g, &certs, v, 2).unwrap();
                prop_assert_eq!(ParityProbe.verify(&view), ParityProbe.verify(&rederived));
                prop_assert_eq!(first.rejecting.contains(&v), !ParityProbe.verify(&view));
            }
            prop_assert_eq!(first.accepted, first.rejecting.is_empty());
        }
    }
}
