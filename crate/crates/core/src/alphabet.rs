//! Finite alphabets and symbol sequences.

use crate::error::{Error, Result};
use std::sync::Arc;

/// Symbol index within an alphabet.
pub type Sym = u16;

const CANONICAL_LABELS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";

/// A finite alphabet of `size` symbols indexed `0..size`, with optional
/// display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    size: u16,
    labels: Option<Arc<Vec<String>>>,
}

impl Alphabet {
    pub fn new(size: u16) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("alphabet size must be >= 1".into()));
        }
        Ok(Self { size, labels: None })
    }

    /// An alphabet whose labels are the given strings, in index order.
    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("alphabet size must be >= 1".into()));
        }
        if labels.len() > u16::MAX as usize {
            return Err(Error::InvalidParameter("alphabet too large".into()));
        }
        let mut seen = labels.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != labels.len() {
            return Err(Error::InvalidParameter("alphabet labels must be distinct".into()));
        }
        Ok(Self { size: labels.len() as u16, labels: Some(Arc::new(labels)) })
    }

    /// Alphabet built from the characters of `s`, one label per character.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::with_labels(s.chars().map(|c| c.to_string()).collect())
    }

    pub fn size(&self) -> u16 {
        self.size
    }

    /// Display label for a symbol. Falls back to the canonical digit/letter
    /// table for unlabeled alphabets of size <= 36.
    pub fn label(&self, sym: Sym) -> String {
        if let Some(labels) = &self.labels {
            if let Some(l) = labels.get(sym as usize) {
                return l.clone();
            }
        }
        if (sym as usize) < CANONICAL_LABELS.len() && self.size as usize <= CANONICAL_LABELS.len() {
            CANONICAL_LABELS[sym as usize..sym as usize + 1].to_string()
        } else {
            format!("<{sym}>")
        }
    }

    /// Index of a single-character label, if it belongs to this alphabet.
    pub fn index_of_char(&self, ch: char) -> Option<Sym> {
        if let Some(labels) = &self.labels {
            let s = ch.to_string();
            return labels.iter().position(|l| *l == s).map(|i| i as Sym);
        }
        let idx = CANONICAL_LABELS.find(ch)? as u16;
        (idx < self.size).then_some(idx)
    }
}

/// A sequence of symbol indices over a fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    symbols: Vec<Sym>,
    alphabet: Alphabet,
}

impl Sequence {
    pub fn new(symbols: Vec<Sym>, alphabet: Alphabet) -> Result<Self> {
        for &s in &symbols {
            if s >= alphabet.size() {
                return Err(Error::SymbolOutOfRange { symbol: s, alphabet: alphabet.size() });
            }
        }
        Ok(Self { symbols, alphabet })
    }

    /// Parses text with one symbol per character. When no alphabet is given,
    /// the alphabet is the sorted set of distinct characters in the text.
    pub fn from_text(text: &str, alphabet: Option<&Alphabet>) -> Result<Self> {
        let text = text.trim_end_matches(['\n', '\r']);
        let alphabet = match alphabet {
            Some(a) => a.clone(),
            None => {
                let mut chars: Vec<char> = text.chars().collect();
                chars.sort_unstable();
                chars.dedup();
                if chars.is_empty() {
                    Alphabet::new(1)?
                } else {
                    Alphabet::with_labels(chars.iter().map(|c| c.to_string()).collect())?
                }
            }
        };
        let mut symbols = Vec::with_capacity(text.len());
        for ch in text.chars() {
            let sym = alphabet
                .index_of_char(ch)
                .ok_or_else(|| Error::Format(format!("character '{ch}' not in alphabet")))?;
            symbols.push(sym);
        }
        Ok(Self { symbols, alphabet })
    }

    pub fn to_text(&self) -> Result<String> {
        let mut out = String::with_capacity(self.symbols.len());
        for &s in &self.symbols {
            let label = self.alphabet.label(s);
            if label.chars().count() != 1 {
                return Err(Error::Format(format!(
                    "label '{label}' is not a single character; use the raw format"
                )));
            }
            out.push_str(&label);
        }
        Ok(out)
    }

    /// Parses the raw byte format: a 2-byte big-endian alphabet size followed
    /// by one symbol per byte.
    pub fn from_raw_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 2 {
            return Err(Error::Format("raw sequence file shorter than its header".into()));
        }
        let size = u16::from_be_bytes([bytes[0], bytes[1]]);
        if size == 0 || size > 256 {
            return Err(Error::Format(format!("raw header alphabet size {size} out of range 1..=256")));
        }
        let alphabet = Alphabet::new(size)?;
        let symbols: Vec<Sym> = bytes[2..].iter().map(|&b| b as Sym).collect();
        Self::new(symbols, alphabet).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_raw_bytes(&self) -> Result<Vec<u8>> {
        if self.alphabet.size() > 256 {
            return Err(Error::Format("raw format supports alphabets up to 256 symbols".into()));
        }
        let mut out = Vec::with_capacity(2 + self.symbols.len());
        out.extend_from_slice(&self.alphabet.size().to_be_bytes());
        for &s in &self.symbols {
            out.push(s as u8);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Non-overlapping blocks of length `k`, after checking divisibility.
    pub fn blocks(&self, k: usize) -> Result<std::slice::ChunksExact<'_, Sym>> {
        if k == 0 || self.symbols.len() % k != 0 {
            return Err(Error::DivisibilityViolation { divisor: k, len: self.symbols.len() });
        }
        Ok(self.symbols.chunks_exact(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_alphabet() {
        assert!(Alphabet::new(0).is_err());
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(Alphabet::with_labels(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn rejects_out_of_range_symbol() {
        let a = Alphabet::new(2).unwrap();
        assert!(matches!(
            Sequence::new(vec![0, 2], a),
            Err(Error::SymbolOutOfRange { symbol: 2, alphabet: 2 })
        ));
    }

    #[test]
    fn text_round_trip_with_inferred_alphabet() {
        let s = Sequence::from_text("abbabaabbaaabaa", None).unwrap();
        assert_eq!(s.alphabet().size(), 2);
        assert_eq!(s.symbols()[..4], [0, 1, 1, 0]);
        assert_eq!(s.to_text().unwrap(), "abbabaabbaaabaa");
    }

    #[test]
    fn raw_round_trip() {
        let a = Alphabet::new(5).unwrap();
        let s = Sequence::new(vec![0, 4, 2, 2], a).unwrap();
        let bytes = s.to_raw_bytes().unwrap();
        assert_eq!(&bytes[..2], &[0, 5]);
        let back = Sequence::from_raw_bytes(&bytes).unwrap();
        assert_eq!(back.symbols(), s.symbols());
        assert_eq!(back.alphabet().size(), 5);
    }

    #[test]
    fn blocks_require_divisibility() {
        let a = Alphabet::new(2).unwrap();
        let s = Sequence::new(vec![0, 1, 0], a).unwrap();
        assert!(s.blocks(2).is_err());
        assert_eq!(s.blocks(3).unwrap().count(), 1);
    }
}
