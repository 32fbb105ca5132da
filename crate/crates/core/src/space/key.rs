use std::fmt;

use smallvec::SmallVec;

/// Canonical byte identifier of a vertex in a lazily generated graph.
///
/// Two keys are equal exactly when they name the same vertex. Ordering is
/// plain byte order; the integer encodings below are chosen so that byte
/// order agrees with numeric order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexKey(SmallVec<[u8; 24]>);

impl VertexKey {
    pub fn from_bytes(bytes: &[u8]) -> Self {
        VertexKey(SmallVec::from_slice(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self, hex::FromHexError> {
        Ok(VertexKey::from_bytes(&hex::decode(s)?))
    }

    /// Order-preserving encoding of a signed integer.
    pub fn from_int(n: i64) -> Self {
        let mut w = KeyWriter::new();
        w.int(n);
        w.finish()
    }

    pub fn to_int(&self) -> Option<i64> {
        let mut r = KeyReader::new(self.as_bytes());
        let n = r.int()?;
        r.is_empty().then_some(n)
    }

    pub fn from_ints(ns: &[i64]) -> Self {
        let mut w = KeyWriter::new();
        for &n in ns {
            w.int(n);
        }
        w.finish()
    }

    pub fn to_ints(&self, count: usize) -> Option<Vec<i64>> {
        let mut r = KeyReader::new(self.as_bytes());
        let out = (0..count).map(|_| r.int()).collect::<Option<Vec<_>>>()?;
        r.is_empty().then_some(out)
    }

    /// Length-prefixed concatenation, used for vertices of product graphs.
    pub fn tuple(parts: &[VertexKey]) -> Self {
        let mut w = KeyWriter::new();
        for p in parts {
            w.u32(p.0.len() as u32);
            w.bytes(&p.0);
        }
        w.finish()
    }

    pub fn untuple(&self) -> Option<Vec<VertexKey>> {
        let mut r = KeyReader::new(self.as_bytes());
        let mut out = Vec::new();
        while !r.is_empty() {
            let len = r.u32()? as usize;
            out.push(VertexKey::from_bytes(r.take(len)?));
        }
        Some(out)
    }
}

impl fmt::Debug for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VertexKey({})", self.to_hex())
    }
}

impl fmt::Display for VertexKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl serde::Serialize for VertexKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> serde::Deserialize<'de> for VertexKey {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        VertexKey::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Default)]
pub struct KeyWriter(SmallVec<[u8; 24]>);

impl KeyWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn u8(&mut self, b: u8) -> &mut Self {
        self.0.push(b);
        self
    }

    pub fn u32(&mut self, n: u32) -> &mut Self {
        self.0.extend_from_slice(&n.to_be_bytes());
        self
    }

    /// Sign bit flipped, big endian: byte order equals numeric order.
    pub fn int(&mut self, n: i64) -> &mut Self {
        self.0.extend_from_slice(&((n as u64) ^ (1 << 63)).to_be_bytes());
        self
    }

    pub fn bytes(&mut self, b: &[u8]) -> &mut Self {
        self.0.extend_from_slice(b);
        self
    }

    pub fn finish(&mut self) -> VertexKey {
        VertexKey(std::mem::take(&mut self.0))
    }
}

pub struct KeyReader<'a> {
    buf: &'a [u8],
}

impl<'a> KeyReader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        KeyReader { buf }
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }

    pub fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.buf.len() < n {
            return None;
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Some(head)
    }

    pub fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|b| b[0])
    }

    pub fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_be_bytes(b.try_into().unwrap()))
    }

    pub fn int(&mut self) -> Option<i64> {
        self.take(8)
            .map(|b| (u64::from_be_bytes(b.try_into().unwrap()) ^ (1 << 63)) as i64)
    }
}
