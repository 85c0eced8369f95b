//! The index file format.
//!
//! ```text
//! "WCIX" | version: u32 LE | section*
//! section = tag: [u8; 4] | length: u64 LE | crc32: u32 LE | bincode payload
//! ```
//!
//! Sections appear in a fixed order: parameters and alphabet, text, suffix
//! arrays, suffix tree, partition, wildcard layer. The version is checked
//! before any section is read.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use wcindex_core::index::ResolvedParams;
use wcindex_core::partition::PartitionIndex;
use wcindex_core::wildcard::WildcardLayer;
use wcindex_core::{Alphabet, SuffixArrays, SuffixTree, Symbol, TextIndex, WildcardIndex};

use crate::error::{Result, WcError};

pub const MAGIC: [u8; 4] = *b"WCIX";
pub const VERSION: u32 = 1;

const PARAMS: [u8; 4] = *b"PARM";
const TEXT: [u8; 4] = *b"TEXT";
const ARRAYS: [u8; 4] = *b"SUFA";
const TREE: [u8; 4] = *b"TREE";
const PARTITION: [u8; 4] = *b"PART";
const WILDCARD: [u8; 4] = *b"WILD";

#[derive(Serialize, Deserialize)]
struct ParamsBlock {
    params: ResolvedParams,
    alphabet: Vec<u8>,
}

fn tag_name(tag: [u8; 4]) -> String {
    String::from_utf8_lossy(&tag).into_owned()
}

fn write_section<W: Write, T: Serialize>(w: &mut W, tag: [u8; 4], value: &T) -> Result<()> {
    let payload = bincode::serialize(value).map_err(|source| WcError::Decode { tag: tag_name(tag), source })?;
    w.write_all(&tag)?;
    w.write_all(&(payload.len() as u64).to_le_bytes())?;
    w.write_all(&crc32fast::hash(&payload).to_le_bytes())?;
    w.write_all(&payload)?;
    Ok(())
}

fn read_section<R: Read, T: DeserializeOwned>(r: &mut R, tag: [u8; 4]) -> Result<T> {
    let mut found = [0u8; 4];
    r.read_exact(&mut found)?;
    if found != tag {
        return Err(WcError::Section {
            expected: tag_name(tag),
            found: tag_name(found),
        });
    }
    let mut len = [0u8; 8];
    r.read_exact(&mut len)?;
    let mut crc = [0u8; 4];
    r.read_exact(&mut crc)?;
    let len = u64::from_le_bytes(len);
    let mut payload = Vec::new();
    r.take(len).read_to_end(&mut payload)?;
    if payload.len() as u64 != len {
        return Err(std::io::Error::from(std::io::ErrorKind::UnexpectedEof).into());
    }
    if crc32fast::hash(&payload) != u32::from_le_bytes(crc) {
        return Err(WcError::Checksum { tag: tag_name(tag) });
    }
    bincode::deserialize(&payload).map_err(|source| WcError::Decode { tag: tag_name(tag), source })
}

/// Writes `index` in the index file format.
pub fn write_index<W: Write>(w: &mut W, index: &WildcardIndex) -> Result<()> {
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    let text = index.text();
    let block = ParamsBlock {
        params: *index.params(),
        alphabet: text.alphabet().bytes().to_vec(),
    };
    write_section(w, PARAMS, &block)?;
    write_section(w, TEXT, &text.text())?;
    write_section(w, ARRAYS, text.arrays())?;
    write_section(w, TREE, index.tree())?;
    write_section(w, PARTITION, index.partition())?;
    write_section(w, WILDCARD, index.layer())?;
    Ok(())
}

/// Reads an index written by [`write_index`].
pub fn read_index<R: Read>(r: &mut R) -> Result<WildcardIndex> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if magic != MAGIC {
        return Err(WcError::BadMagic);
    }
    let mut version = [0u8; 4];
    r.read_exact(&mut version)?;
    let version = u32::from_le_bytes(version);
    if version != VERSION {
        return Err(WcError::Version {
            found: version,
            expected: VERSION,
        });
    }
    let block: ParamsBlock = read_section(r, PARAMS)?;
    let alphabet = Alphabet::new(block.alphabet)?;
    let symbols: Vec<Symbol> = read_section(r, TEXT)?;
    let arrays: SuffixArrays = read_section(r, ARRAYS)?;
    let text = TextIndex::from_parts(alphabet, symbols, arrays)?;
    let tree: SuffixTree = read_section(r, TREE)?;
    let part: PartitionIndex = read_section(r, PARTITION)?;
    let layer: WildcardLayer = read_section(r, WILDCARD)?;
    Ok(WildcardIndex::from_parts(block.params, text, tree, part, layer)?)
}

pub fn save(path: &Path, index: &WildcardIndex) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_index(&mut w, index)?;
    w.flush()?;
    Ok(())
}

pub fn load(path: &Path) -> Result<WildcardIndex> {
    read_index(&mut BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use wcindex_core::{AlphabetSpec, IndexParams};

    fn banana() -> WildcardIndex {
        let params = IndexParams {
            tau: Some(2),
            lambda: Some(2),
            ..IndexParams::default()
        };
        WildcardIndex::build(b"banana", &AlphabetSpec::Infer, &params).unwrap()
    }

    #[test]
    fn round_trip() {
        let ix = banana();
        let mut buf = Vec::new();
        write_index(&mut buf, &ix).unwrap();
        assert_eq!(&buf[..4], b"WCIX");
        let back = read_index(&mut &buf[..]).unwrap();
        assert_eq!(back, ix);
    }

    #[test]
    fn version_is_checked_first() {
        let mut buf = Vec::new();
        write_index(&mut buf, &banana()).unwrap();
        buf[4] = 9;
        // the sections are scrambled too, but the version error comes first
        for b in &mut buf[8..] {
            *b ^= 0x5a;
        }
        assert!(matches!(read_index(&mut &buf[..]), Err(WcError::Version { found: 9, .. })));
        assert!(matches!(read_index(&mut &b"WCIY"[..]), Err(WcError::BadMagic)));
    }

    #[test]
    fn corrupted_payload_fails_its_checksum() {
        let mut buf = Vec::new();
        write_index(&mut buf, &banana()).unwrap();
        let last = buf.len() - 1;
        buf[last] ^= 1;
        match read_index(&mut &buf[..]) {
            Err(WcError::Checksum { tag }) => assert_eq!(tag, "WILD"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(read_index(&mut &buf[..20]).is_err());
    }
}
