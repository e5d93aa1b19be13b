//! Binary snapshots of group tables.
//!
//! Layout (little endian): magic `IGRP`, `u16` version, `u32` order, `u32`
//! prime (0 when unknown), `u32` generator count, generator indices, then a
//! kind byte. Kind 0 is followed by the `n × n` multiplication table and the
//! inverse table; kind 1 by a length-prefixed UTF-8 construction descriptor.

use std::sync::Arc;

use super::{ClosureConfig, Elem, GroupTable, TableAmbient};
use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"IGRP";
const VERSION: u16 = 1;
/// Largest order written with an explicit table.
pub const MAX_TABLE_ORDER: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Table { table: Vec<Elem>, inv: Vec<Elem> },
    Descriptor(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snapshot {
    pub order: u32,
    pub prime: u32,
    pub gens: Vec<Elem>,
    pub payload: Payload,
}

impl Snapshot {
    pub fn from_table(g: &GroupTable) -> Result<Self> {
        let n = g.order();
        if n > MAX_TABLE_ORDER {
            return Err(Error::Snapshot(format!("order {n} too large for a table snapshot")));
        }
        let table = match g.raw_table() {
            Some(t) => t.to_vec(),
            None => (0..n as Elem).flat_map(|x| (0..n as Elem).map(move |y| g.mul(x, y))).collect(),
        };
        let inv = g.elements().map(|x| g.inv(x)).collect();
        Ok(Self {
            order: n as u32,
            prime: g.prime().unwrap_or(0),
            gens: g.gens().to_vec(),
            payload: Payload::Table { table, inv },
        })
    }

    pub fn from_descriptor(g: &GroupTable, descriptor: String) -> Self {
        Self {
            order: g.order() as u32,
            prime: g.prime().unwrap_or(0),
            gens: g.gens().to_vec(),
            payload: Payload::Descriptor(descriptor),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        for v in [self.order, self.prime, self.gens.len() as u32] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for g in &self.gens {
            out.extend_from_slice(&g.to_le_bytes());
        }
        match &self.payload {
            Payload::Table { table, inv } => {
                out.push(0);
                for v in table.iter().chain(inv) {
                    out.extend_from_slice(&v.to_le_bytes());
                }
            }
            Payload::Descriptor(s) => {
                out.push(1);
                out.extend_from_slice(&(s.len() as u32).to_le_bytes());
                out.extend_from_slice(s.as_bytes());
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { bytes, pos: 0 };
        if r.take(4)? != MAGIC {
            return Err(Error::Snapshot("bad magic".into()));
        }
        let version = u16::from_le_bytes(r.take(2)?.try_into().unwrap());
        if version != VERSION {
            return Err(Error::Snapshot(format!("unsupported version {version}")));
        }
        let order = r.u32()?;
        let prime = r.u32()?;
        let ngens = r.u32()? as usize;
        if order == 0 || ngens > 64 {
            return Err(Error::Snapshot("implausible header".into()));
        }
        let gens = (0..ngens).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
        if gens.iter().any(|&g| g >= order) {
            return Err(Error::Snapshot("generator out of range".into()));
        }
        let payload = match r.take(1)?[0] {
            0 => {
                let n = order as usize;
                if n > MAX_TABLE_ORDER {
                    return Err(Error::Snapshot("table too large".into()));
                }
                let table = (0..n * n).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
                let inv = (0..n).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
                Payload::Table { table, inv }
            }
            1 => {
                let len = r.u32()? as usize;
                let s =
                    std::str::from_utf8(r.take(len)?).map_err(|_| Error::Snapshot("descriptor is not UTF-8".into()))?;
                Payload::Descriptor(s.to_owned())
            }
            k => return Err(Error::Snapshot(format!("unknown payload kind {k}"))),
        };
        if r.pos != bytes.len() {
            return Err(Error::Snapshot("trailing bytes".into()));
        }
        Ok(Self { order, prime, gens, payload })
    }

    /// Rebuild a table snapshot. Element indices are preserved.
    pub fn into_group(self) -> Result<GroupTable> {
        let Payload::Table { table, inv } = self.payload else {
            return Err(Error::Snapshot("descriptor snapshots are rebuilt from their construction".into()));
        };
        let n = self.order as usize;
        let ambient = Arc::new(TableAmbient::new(n, table, inv)?);
        let seeds: Vec<u64> = self.gens.iter().map(|&g| g as u64).collect();
        let cfg = ClosureConfig { max_order: n as u64, ..Default::default() };
        let g = GroupTable::closure(ambient, &seeds, &cfg)?;
        if g.order() != n || g.elements().any(|x| g.key(x) != x as u64) {
            return Err(Error::Snapshot("table does not reproduce the recorded indexing".into()));
        }
        Ok(if self.prime != 0 { g.with_prime(self.prime) } else { g })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(k).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| Error::Snapshot("truncated".into()))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Ambient;

    #[derive(Debug)]
    struct Z9;

    impl Ambient for Z9 {
        fn identity(&self) -> u64 {
            0
        }
        fn mul(&self, a: u64, b: u64) -> u64 {
            (a + b) % 9
        }
        fn inv(&self, a: u64) -> u64 {
            (9 - a) % 9
        }
    }

    #[test]
    fn table_round_trip() {
        let g = GroupTable::closure(Arc::new(Z9), &[2], &ClosureConfig::default()).unwrap();
        let snap = Snapshot::from_table(&g).unwrap();
        let bytes = snap.encode();
        let back = Snapshot::decode(&bytes).unwrap();
        assert_eq!(back, snap);
        let h = back.into_group().unwrap();
        assert_eq!(h.prime(), Some(3));
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(g.mul(x, y), h.mul(x, y));
            }
        }
    }

    #[test]
    fn corrupt_inputs_are_rejected() {
        let g = GroupTable::closure(Arc::new(Z9), &[1], &ClosureConfig::default()).unwrap();
        let bytes = Snapshot::from_table(&g).unwrap().encode();
        assert!(Snapshot::decode(&bytes[..bytes.len() - 1]).is_err());
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(Snapshot::decode(&bad).is_err());
        let mut extra = bytes;
        extra.push(0);
        assert!(Snapshot::decode(&extra).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let g = GroupTable::closure(Arc::new(Z9), &[1], &ClosureConfig::default()).unwrap();
        let snap = Snapshot::from_descriptor(&g, "{\"kind\":\"abelian\"}".into());
        assert_eq!(Snapshot::decode(&snap.encode()).unwrap(), snap);
        assert!(snap.into_group().is_err());
    }
}
