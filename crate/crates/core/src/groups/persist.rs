//! Versioned binary layout for group tables: header, element block, class
//! block. Integers are little-endian and fixed width.

use super::table::{ConjClass, GroupDescriptor, GroupTable};
use super::GroupError;
use crate::algebra::Field;

pub const MAGIC: &[u8; 4] = b"THGT";
pub const FORMAT_VERSION: u32 = 1;

struct Reader<'a> {
    buf: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], GroupError> {
        if self.at + n > self.buf.len() {
            return Err(GroupError::Corrupt("truncated".into()));
        }
        let s = &self.buf[self.at..self.at + n];
        self.at += n;
        Ok(s)
    }
    fn u32(&mut self) -> Result<u32, GroupError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }
    fn u64(&mut self) -> Result<u64, GroupError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
}

/// Serialize a table. `code_version` is stored in the header and checked on load.
pub fn to_bytes(t: &GroupTable, code_version: &str) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    let cv = code_version.as_bytes();
    out.extend_from_slice(&(cv.len() as u32).to_le_bytes());
    out.extend_from_slice(cv);
    let desc = serde_json::to_vec(t.descriptor()).expect("descriptor serializes");
    out.extend_from_slice(&(desc.len() as u32).to_le_bytes());
    out.extend_from_slice(&desc);
    out.extend_from_slice(&(t.dim() as u32).to_le_bytes());
    // element block
    out.extend_from_slice(&t.order().to_le_bytes());
    out.extend_from_slice(t.raw_elements());
    out.extend_from_slice(&(t.generators().len() as u32).to_le_bytes());
    for &g in t.generators() {
        out.extend_from_slice(&g.to_le_bytes());
    }
    // class block
    out.extend_from_slice(&(t.num_classes() as u32).to_le_bytes());
    for c in t.classes() {
        out.extend_from_slice(&c.rep.to_le_bytes());
        out.extend_from_slice(&c.order.to_le_bytes());
        out.extend_from_slice(&c.size.to_le_bytes());
        for &m in &c.members {
            out.extend_from_slice(&m.to_le_bytes());
        }
    }
    out
}

pub fn from_bytes(buf: &[u8], code_version: &str) -> Result<GroupTable, GroupError> {
    let mut r = Reader { buf, at: 0 };
    if r.take(4)? != MAGIC {
        return Err(GroupError::Corrupt("bad magic".into()));
    }
    let fv = r.u32()?;
    if fv != FORMAT_VERSION {
        return Err(GroupError::Corrupt(format!("format version {fv}")));
    }
    let n = r.u32()? as usize;
    let cv = r.take(n)?;
    if cv != code_version.as_bytes() {
        return Err(GroupError::Corrupt("code version mismatch".into()));
    }
    let n = r.u32()? as usize;
    let desc: GroupDescriptor =
        serde_json::from_slice(r.take(n)?).map_err(|e| GroupError::Corrupt(format!("descriptor: {e}")))?;
    let dim = r.u32()? as usize;
    let order = r.u64()? as usize;
    let elems = r.take(order * dim * dim)?.to_vec();
    let ng = r.u32()? as usize;
    let gens = (0..ng).map(|_| r.u32()).collect::<Result<Vec<_>, _>>()?;
    let nc = r.u32()? as usize;
    let mut classes = Vec::with_capacity(nc);
    for _ in 0..nc {
        let rep = r.u32()?;
        let ord = r.u32()?;
        let size = r.u64()?;
        let members = (0..size).map(|_| r.u32()).collect::<Result<Vec<_>, _>>()?;
        classes.push(ConjClass { rep, size, order: ord, members });
    }
    if r.at != buf.len() {
        return Err(GroupError::Corrupt("trailing bytes".into()));
    }
    let field = Field::new(desc.field.p, desc.field.k)?;
    let space = desc.space(&field);
    GroupTable::from_parts(desc, field, dim, elems, gens, classes, space)
}
