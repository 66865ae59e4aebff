//! Exact LZ78 incremental parsing and a bit-faithful block codec.
//!
//! The parser segments its input so that each phrase is the shortest string
//! not previously parsed, with a possibly incomplete final phrase. The codec
//! emits, for the j-th phrase (1-indexed), a pointer to the longest proper
//! prefix phrase in exactly ceil(log2 j) bits (pointer 0 is the empty
//! phrase), followed by the innovation symbol in ceil(log2 beta) bits. An
//! incomplete final phrase emits its pointer only; the decoder detects it
//! because the phrase it points at exactly fills the remaining block length.
//! The code is therefore decodable given the block length `k` and the
//! reproduction alphabet size `beta`, which the enclosing container carries.

use crate::alphabet::{Sequence, Sym};
use crate::bits::{ceil_log2, BitReader, BitString};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// One parsed phrase: the dictionary index of its longest proper prefix and
/// the innovation symbol, absent for an incomplete final phrase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Phrase {
    pub pointer: usize,
    pub innovation: Option<Sym>,
}

/// Result of incremental parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LzParse {
    pub phrases: Vec<Phrase>,
    /// Phrase count, including a possibly incomplete last phrase.
    pub c: usize,
    pub incomplete_last: bool,
}

/// Exact emitted length next to the analytic envelope it must stay under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LzLengths {
    pub exact_bits: u64,
    /// `[c+1] * log2(2 * beta * [c+1])`.
    pub paper_upper: f64,
}

/// Both forms of the code-length envelope at a given phrase count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthBound {
    /// `[c+1] * log2(2 * beta * [c+1])`.
    pub raw: f64,
    /// `c * log2(c) + k_eps(k, beta)`.
    pub decomposed: f64,
    pub k_eps: f64,
}

pub fn incremental_parse(x: &Sequence) -> LzParse {
    parse_slice(x.symbols())
}

/// Incremental parse over raw symbols.
pub fn parse_slice(x: &[Sym]) -> LzParse {
    let mut trie: HashMap<(u32, Sym), u32> = HashMap::new();
    let mut phrases = Vec::new();
    let mut node = 0u32; // dictionary index of the current match, 0 = empty
    let mut next_id = 1u32;
    for &sym in x {
        match trie.get(&(node, sym)) {
            Some(&child) => node = child,
            None => {
                trie.insert((node, sym), next_id);
                phrases.push(Phrase { pointer: node as usize, innovation: Some(sym) });
                next_id += 1;
                node = 0;
            }
        }
    }
    let incomplete_last = node != 0;
    if incomplete_last {
        phrases.push(Phrase { pointer: node as usize, innovation: None });
    }
    LzParse { c: phrases.len(), phrases, incomplete_last }
}

fn symbol_bits(beta: u16) -> usize {
    ceil_log2(beta as u64)
}

/// Emits the code for a parsed sequence.
pub fn lz_encode(x: &Sequence) -> BitString {
    encode_slice(x.symbols(), x.alphabet().size())
}

pub fn encode_slice(x: &[Sym], beta: u16) -> BitString {
    let parse = parse_slice(x);
    let sym_w = symbol_bits(beta);
    let mut out = BitString::new();
    for (j, ph) in parse.phrases.iter().enumerate() {
        out.push_bits(ph.pointer as u64, ceil_log2(j as u64 + 1));
        if let Some(sym) = ph.innovation {
            out.push_bits(sym as u64, sym_w);
        }
    }
    out
}

/// Emitted length in bits, computed without materializing the bitstring.
pub fn lz_code_length(x: &Sequence) -> u64 {
    code_length_slice(x.symbols(), x.alphabet().size())
}

pub fn code_length_slice(x: &[Sym], beta: u16) -> u64 {
    let parse = parse_slice(x);
    let sym_w = symbol_bits(beta) as u64;
    let mut bits = 0u64;
    for (j, ph) in parse.phrases.iter().enumerate() {
        bits += ceil_log2(j as u64 + 1) as u64;
        if ph.innovation.is_some() {
            bits += sym_w;
        }
    }
    bits
}

/// Decodes a code produced by [`encode_slice`] for a block of known length
/// `k` over a `beta`-ary alphabet, consuming exactly the code's bits.
pub fn decode_slice(r: &mut BitReader<'_>, k: usize, beta: u16) -> Result<Vec<Sym>> {
    let sym_w = symbol_bits(beta);
    let mut out: Vec<Sym> = Vec::with_capacity(k);
    // dict[j] = (parent, symbol, length); entry 0 is the empty phrase
    let mut dict: Vec<(usize, Sym, usize)> = vec![(0, 0, 0)];
    let mut scratch = Vec::new();
    while out.len() < k {
        let remaining = k - out.len();
        let j = dict.len();
        let ptr = r.read_bits(ceil_log2(j as u64))? as usize;
        if ptr >= j {
            return Err(Error::Format(format!("phrase pointer {ptr} out of range {j}")));
        }
        let plen = dict[ptr].2;
        if plen > remaining {
            return Err(Error::Format("phrase overruns the block".into()));
        }
        if plen == remaining {
            // incomplete final phrase: the referenced phrase fills the block
            append_phrase(&dict, ptr, &mut scratch, &mut out);
            break;
        }
        let sym = r.read_bits(sym_w)? as Sym;
        if sym >= beta {
            return Err(Error::Format(format!("symbol {sym} out of range {beta}")));
        }
        append_phrase(&dict, ptr, &mut scratch, &mut out);
        out.push(sym);
        dict.push((ptr, sym, plen + 1));
    }
    Ok(out)
}

fn append_phrase(dict: &[(usize, Sym, usize)], idx: usize, scratch: &mut Vec<Sym>, out: &mut Vec<Sym>) {
    scratch.clear();
    let mut cur = idx;
    while cur != 0 {
        let (parent, sym, _) = dict[cur];
        scratch.push(sym);
        cur = parent;
    }
    out.extend(scratch.iter().rev());
}

/// Decodes a standalone bitstring (must be consumed exactly).
pub fn lz_decode(bits: &BitString, k: usize, beta: u16) -> Result<Vec<Sym>> {
    let mut r = bits.reader();
    let out = decode_slice(&mut r, k, beta)?;
    if r.remaining() != 0 {
        return Err(Error::Format("trailing bits after block code".into()));
    }
    Ok(out)
}

/// Exact maximum of the phrase count over all length-`k` sequences from a
/// `beta`-ary alphabet: fill every phrase of length 1, then every phrase of
/// length 2, and so on, plus one final possibly incomplete phrase for any
/// remainder.
pub fn c_max(k: usize, beta: u16) -> u64 {
    assert!(beta >= 1);
    if k == 0 {
        return 0;
    }
    let k = k as u128;
    let beta = beta as u128;
    let mut used: u128 = 0;
    let mut count: u128 = 0;
    let mut level_len: u128 = 1;
    let mut level_size: u128 = beta; // beta^level_len, saturating
    loop {
        let level_cost = level_len.saturating_mul(level_size);
        if used + level_cost > k {
            break;
        }
        used += level_cost;
        count += level_size;
        level_len += 1;
        level_size = level_size.saturating_mul(beta);
    }
    let remainder = k - used;
    if remainder > 0 {
        count += remainder.div_ceil(level_len);
    }
    count as u64
}

/// Additive slack `k * eps(k)` in the decomposed envelope, built from the
/// exact phrase-count maximum:
/// `log2(e) + c_max(k, beta) * log2(2 beta) + log2(2 beta (k + 1))`.
pub fn k_eps(k: usize, beta: u16) -> f64 {
    assert!(k >= 1 && beta >= 1);
    let two_beta = 2.0 * beta as f64;
    std::f64::consts::LOG2_E
        + c_max(k, beta) as f64 * two_beta.log2()
        + (two_beta * (k as f64 + 1.0)).log2()
}

/// Evaluates both envelope forms at phrase count `c`.
pub fn paper_length_bound(c: u64, k: usize, beta: u16) -> Result<LengthBound> {
    if c > c_max(k, beta) {
        return Err(Error::InvalidParameter(format!(
            "phrase count {c} exceeds the maximum {} for k={k}, beta={beta}",
            c_max(k, beta)
        )));
    }
    let cf = c as f64;
    let raw = (cf + 1.0) * (2.0 * beta as f64 * (cf + 1.0)).log2();
    let eps = k_eps(k, beta);
    let clogc = if c <= 1 { 0.0 } else { cf * cf.log2() };
    Ok(LengthBound { raw, decomposed: clogc + eps, k_eps: eps })
}

/// Exact emitted length together with the raw envelope at the input's own
/// phrase count.
pub fn lz_lengths(x: &Sequence) -> LzLengths {
    let beta = x.alphabet().size();
    let c = parse_slice(x.symbols()).c as u64;
    let exact = code_length_slice(x.symbols(), beta);
    let raw = (c as f64 + 1.0) * (2.0 * beta as f64 * (c as f64 + 1.0)).log2();
    LzLengths { exact_bits: exact, paper_upper: raw }
}

/// Exact Kraft sum of `2^(-LZ(x))` over the whole space of `beta^k`
/// sequences. Small (k, beta) only; used by verification suites.
pub fn kraft_sum(k: usize, beta: u16) -> Dyadic {
    let mut sum = Dyadic::zero();
    let mut x = vec![0 as Sym; k];
    loop {
        sum.add_pow2_neg(code_length_slice(&x, beta) as u32);
        // next sequence in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return sum;
            }
            i -= 1;
            if x[i] + 1 < beta {
                x[i] += 1;
                for v in &mut x[i + 1..] {
                    *v = 0;
                }
                break;
            }
        }
        if k == 0 {
            return sum;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::prf::Prf;

    fn seq(text: &str) -> Sequence {
        Sequence::from_text(text, None).unwrap()
    }

    #[test]
    fn parses_abba_string_into_eight_phrases() {
        let parse = incremental_parse(&seq("abbabaabbaaabaa"));
        assert_eq!(parse.c, 8);
        assert!(parse.incomplete_last);
        // phrases: a, b, ba, baa, bb, aa, ab, aa
        let expect = vec![
            Phrase { pointer: 0, innovation: Some(0) },
            Phrase { pointer: 0, innovation: Some(1) },
            Phrase { pointer: 2, innovation: Some(0) },
            Phrase { pointer: 3, innovation: Some(0) },
            Phrase { pointer: 2, innovation: Some(1) },
            Phrase { pointer: 1, innovation: Some(0) },
            Phrase { pointer: 1, innovation: Some(1) },
            Phrase { pointer: 6, innovation: None },
        ];
        assert_eq!(parse.phrases, expect);
    }

    #[test]
    fn single_symbol_is_one_phrase() {
        let parse = parse_slice(&[0]);
        assert_eq!(parse.c, 1);
        assert!(!parse.incomplete_last);
    }

    #[test]
    fn runs_force_growing_phrases() {
        // aaaaaa -> a, aa, aaa
        let parse = parse_slice(&[0, 0, 0, 0, 0, 0]);
        assert_eq!(parse.c, 3);
        assert!(!parse.incomplete_last);
    }

    #[test]
    fn empty_input_parses_to_zero_phrases() {
        let parse = parse_slice(&[]);
        assert_eq!(parse.c, 0);
        assert!(!parse.incomplete_last);
        assert!(encode_slice(&[], 2).is_empty());
        assert_eq!(lz_decode(&BitString::new(), 0, 2).unwrap(), Vec::<Sym>::new());
    }

    #[test]
    fn run_code_length_is_phrase_sum() {
        // aaaaaa over beta = 2: phrases a, aa, aaa, all complete:
        // sum over j = 1..3 of (ceil(log2 j) + 1) = 1 + 2 + 3 = 6.
        let x = Sequence::new(vec![0; 6], Alphabet::new(2).unwrap()).unwrap();
        assert_eq!(lz_code_length(&x), 6);
        assert_eq!(lz_encode(&x).len(), 6);
    }

    #[test]
    fn round_trip_of_known_string() {
        let x = seq("abbabaabbaaabaa");
        let bits = lz_encode(&x);
        let back = lz_decode(&bits, x.len(), 2).unwrap();
        assert_eq!(back, x.symbols());
    }

    #[test]
    fn exhaustive_round_trip_small_blocks() {
        for beta in [1u16, 2, 3] {
            for k in 0..=7usize {
                let total = (beta as u64).pow(k as u32);
                for code in 0..total {
                    let mut v = code;
                    let mut x = vec![0 as Sym; k];
                    for i in (0..k).rev() {
                        x[i] = (v % beta as u64) as Sym;
                        v /= beta as u64;
                    }
                    let bits = encode_slice(&x, beta);
                    assert_eq!(bits.len() as u64, code_length_slice(&x, beta));
                    assert_eq!(lz_decode(&bits, k, beta).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn code_length_matches_encoder_on_random_inputs() {
        let prf = Prf::new(0x1234);
        for trial in 0..1000u64 {
            let beta = 2 + (prf.word(0, trial) % 3) as u16;
            let len = 1 + (prf.word(1, trial) % 200) as usize;
            let x: Vec<Sym> =
                (0..len).map(|i| (prf.word(2, trial * 1000 + i as u64) % beta as u64) as Sym).collect();
            assert_eq!(encode_slice(&x, beta).len() as u64, code_length_slice(&x, beta));
        }
    }

    #[test]
    fn one_symbol_codes_have_equal_length() {
        assert_eq!(code_length_slice(&[0], 2), code_length_slice(&[1], 2));
        assert_eq!(code_length_slice(&[0], 2), 1);
    }

    #[test]
    fn permutation_symmetry() {
        let x: Vec<Sym> = vec![0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 2, 2, 0, 1];
        let swapped: Vec<Sym> = x.iter().map(|&s| [1, 0, 2][s as usize]).collect();
        assert_eq!(parse_slice(&x).c, parse_slice(&swapped).c);
        assert_eq!(code_length_slice(&x, 3), code_length_slice(&swapped, 3));
    }

    #[test]
    fn phrase_count_maximum_values() {
        assert_eq!(c_max(15, 2), 8);
        assert_eq!(c_max(1, 2), 1);
        assert_eq!(c_max(1, 7), 1);
        assert_eq!(c_max(0, 2), 0);
        // unary alphabet: phrases a, aa, aaa, ... cover k
        assert_eq!(c_max(1, 1), 1);
        assert_eq!(c_max(3, 1), 2);
        assert_eq!(c_max(6, 1), 3);
        assert_eq!(c_max(7, 1), 4);
    }

    #[test]
    fn phrase_count_maximum_is_exact_for_small_blocks() {
        for beta in [1u16, 2, 3] {
            for k in 0..=9usize {
                let total = (beta as u64).pow(k as u32);
                let mut best = 0u64;
                for code in 0..total {
                    let mut v = code;
                    let mut x = vec![0 as Sym; k];
                    for i in (0..k).rev() {
                        x[i] = (v % beta as u64) as Sym;
                        v /= beta as u64;
                    }
                    best = best.max(parse_slice(&x).c as u64);
                }
                assert_eq!(c_max(k, beta), best, "k={k} beta={beta}");
            }
        }
    }

    #[test]
    fn envelope_arithmetic() {
        let b = paper_length_bound(1, 4, 2).unwrap();
        assert!((b.raw - 6.0).abs() < 1e-12); // 2 * log2(8)
        let b = paper_length_bound(8, 15, 2).unwrap();
        assert!((b.raw - 9.0 * 36f64.log2()).abs() < 1e-12);
        assert!(paper_length_bound(9, 15, 2).is_err());
    }

    #[test]
    fn exact_bits_stay_under_both_envelopes() {
        for k in 1..=12usize {
            for code in 0..(1u64 << k) {
                let x: Vec<Sym> = (0..k).map(|i| ((code >> (k - 1 - i)) & 1) as Sym).collect();
                let c = parse_slice(&x).c as u64;
                let bits = code_length_slice(&x, 2) as f64;
                let bound = paper_length_bound(c, k, 2).unwrap();
                assert!(bits <= bound.raw + 1e-9, "raw violated at k={k} code={code}");
                assert!(bits <= bound.decomposed + 1e-9, "decomposed violated at k={k} code={code}");
            }
        }
    }

    #[test]
    fn kraft_sum_is_at_most_one_small() {
        for beta in [2u16, 3] {
            for k in 1..=6usize {
                assert!(kraft_sum(k, beta).is_le_one(), "k={k} beta={beta}");
            }
        }
    }

    #[test]
    fn unary_alphabet_round_trip() {
        for k in 1..=9usize {
            let x = vec![0 as Sym; k];
            let bits = encode_slice(&x, 1);
            assert_eq!(lz_decode(&bits, k, 1).unwrap(), x);
        }
    }
}
