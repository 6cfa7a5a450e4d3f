//! Packets and their wire format.
//!
//! Layout, all integers most-significant bit first:
//!
//! ```text
//! gamma(count) gamma(w)
//! repeated count times:
//!   origin: w bits      dist: idbits(delta) bits
//!   gamma(|D|)  D: |D| ids of w bits, strictly ascending
//!   gamma(|L|)  L
//!   gamma(|C|)  C
//! ```
//!
//! `gamma(x)` is the Elias-gamma code of `x + 1`. Identifiers are at least 1,
//! so an all-zero id field is malformed. Anything that does not parse exactly,
//! including trailing bits and distances above `delta`, decodes to the empty
//! packet set.

use std::collections::BTreeSet;

use crate::bits::{idbits, BitReader, BitString, BitWriter};
use crate::graph::VertexId;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Packet {
    /// `ω`: the vertex this packet describes.
    pub origin: VertexId,
    /// `d`: claimed distance from the origin to the holder.
    pub dist: usize,
    /// `D`: claimed neighborhood of the origin.
    pub neighbors: BTreeSet<VertexId>,
    /// `L`: claimed label of the origin.
    pub label: BitString,
    /// `C`: claimed base certificate of the origin.
    pub cert: BitString,
}

/// `Σ(P, v)`: packets decoded from one certificate, in wire order.
/// Duplicated origins are representable so that B1 has something to reject.
pub type PacketSet = Vec<Packet>;

/// Encoder and decoder for a fixed `δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PacketCodec {
    delta: usize,
}

/// Widest identifier field the decoder accepts.
const MAX_ID_WIDTH: usize = 63;

impl PacketCodec {
    pub fn new(delta: usize) -> Self {
        PacketCodec { delta }
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn dist_bits(&self) -> usize {
        idbits(self.delta)
    }

    /// Encodes with the narrowest id width that fits every id in `packets`.
    pub fn encode(&self, packets: &[Packet]) -> BitString {
        let widest = packets
            .iter()
            .flat_map(|p| std::iter::once(p.origin).chain(p.neighbors.iter().copied()))
            .max()
            .unwrap_or(0);
        self.encode_with_width(packets, idbits(widest))
    }

    /// Panics if a field does not fit: ids must be in `1..2^width` and
    /// distances at most `δ`.
    pub fn encode_with_width(&self, packets: &[Packet], width: usize) -> BitString {
        let mut w = BitWriter::new();
        w.write_gamma(packets.len());
        w.write_gamma(width);
        for p in packets {
            assert!(p.dist <= self.delta, "packet distance {} exceeds delta {}", p.dist, self.delta);
            write_id(&mut w, p.origin, width);
            w.write_uint(p.dist as u64, self.dist_bits());
            w.write_gamma(p.neighbors.len());
            for &u in &p.neighbors {
                write_id(&mut w, u, width);
            }
            w.write_string(&p.label);
            w.write_string(&p.cert);
        }
        w.finish()
    }

    /// Never fails: malformed input is the empty set.
    pub fn decode(&self, bits: &BitString) -> PacketSet {
        self.try_decode(bits).unwrap_or_default()
    }

    /// `None` on malformed input.
    pub fn try_decode(&self, bits: &BitString) -> Option<PacketSet> {
        let mut r = BitReader::new(bits);
        let count = r.read_gamma()?;
        let width = r.read_gamma()?;
        if width > MAX_ID_WIDTH {
            return None;
        }
        let mut packets = Vec::new();
        for _ in 0..count {
            let origin = read_id(&mut r, width)?;
            let dist = r.read_uint(self.dist_bits())? as usize;
            if dist > self.delta {
                return None;
            }
            let degree = r.read_gamma()?;
            if degree.saturating_mul(width.max(1)) > r.remaining() {
                return None;
            }
            let mut neighbors = BTreeSet::new();
            let mut last = 0;
            for _ in 0..degree {
                let u = read_id(&mut r, width)?;
                if u <= last {
                    return None;
                }
                last = u;
                neighbors.insert(u);
            }
            let label = r.read_string()?;
            let cert = r.read_string()?;
            packets.push(Packet { origin, dist, neighbors, label, cert });
        }
        r.is_exhausted().then_some(packets)
    }
}

fn write_id(w: &mut BitWriter, id: VertexId, width: usize) {
    assert!(id >= 1 && idbits(id) <= width, "id {id} does not fit in {width} bits");
    w.write_uint(id as u64, width);
}

fn read_id(r: &mut BitReader<'_>, width: usize) -> Option<VertexId> {
    let id = r.read_uint(width)? as VertexId;
    (id >= 1).then_some(id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn packet(origin: VertexId, dist: usize, d: &[VertexId], l: &str, c: &str) -> Packet {
        Packet {
            origin,
            dist,
            neighbors: d.iter().copied().collect(),
            label: BitString::parse(l).unwrap(),
            cert: BitString::parse(c).unwrap(),
        }
    }

    #[test]
    fn empty_set_round_trips() {
        let codec = PacketCodec::new(2);
        let bits = codec.encode(&[]);
        assert_eq!(bits.to_string(), "11");
        assert_eq!(codec.try_decode(&bits), Some(vec![]));
    }

    #[test]
    fn single_packet_wire_image() {
        let codec = PacketCodec::new(1);
        let p = packet(1, 0, &[2, 3], "", "01");
        let bits = codec.encode(std::slice::from_ref(&p));
        // count=1, w=2, origin 01, d 0, |D|=2, D 10 11, |L|=0, |C|=2, C 01
        assert_eq!(bits.to_string(), "0100110100111011101101");
        assert_eq!(codec.decode(&bits), vec![p]);
    }

    #[test]
    fn malformed_inputs_decode_to_nothing() {
        let codec = PacketCodec::new(1);
        let good = codec.encode(&[packet(1, 1, &[2], "1", "")]);
        let mut trailing = good.clone();
        trailing.push(false);
        assert!(codec.try_decode(&trailing).is_none());
        assert!(codec.try_decode(&good.prefix(good.len() - 1)).is_none());
        // d = 2 does not fit delta = 1
        assert!(PacketCodec::new(1).try_decode(&PacketCodec::new(3).encode(&[packet(1, 2, &[], "", "")])).is_none());
        // unsorted D
        let mut w = BitWriter::new();
        w.write_gamma(1);
        w.write_gamma(2);
        w.write_uint(1, 2);
        w.write_uint(0, 1);
        w.write_gamma(2);
        w.write_uint(3, 2);
        w.write_uint(2, 2);
        w.write_gamma(0);
        w.write_gamma(0);
        assert!(codec.try_decode(&w.finish()).is_none());
        assert_eq!(codec.decode(&BitString::new()), vec![]);
    }

    #[test]
    fn duplicate_origins_survive_decoding() {
        let codec = PacketCodec::new(2);
        let ps = vec![packet(2, 1, &[1], "", ""), packet(2, 2, &[1], "", "")];
        assert_eq!(codec.decode(&codec.encode(&ps)), ps);
    }

    fn arb_packet(delta: usize) -> impl Strategy<Value = Packet> {
        (
            1usize..200,
            0..=delta,
            prop::collection::btree_set(1usize..200, 0..5),
            prop::collection::vec(any::<bool>(), 0..6),
            prop::collection::vec(any::<bool>(), 0..12),
        )
            .prop_map(|(origin, dist, neighbors, l, c)| Packet {
                origin,
                dist,
                neighbors,
                label: BitString::from_bits(l),
                cert: BitString::from_bits(c),
            })
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(delta in 0usize..5, seed in prop::collection::vec(arb_packet(4), 0..8)) {
            let codec = PacketCodec::new(delta);
            let ps: Vec<Packet> = seed.into_iter().map(|mut p| { p.dist = p.dist.min(delta); p }).collect();
            prop_assert_eq!(codec.decode(&codec.encode(&ps)), ps);
        }

        #[test]
        fn random_bits_never_panic(bits in prop::collection::vec(any::<bool>(), 0..200), delta in 0usize..4) {
            let _ = PacketCodec::new(delta).decode(&BitString::from_bits(bits));
        }
    }
}
