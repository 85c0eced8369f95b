//! Reference matchers that share no code with the index.

use wcindex_core::symbols::{SENTINEL, WILDCARD};
use wcindex_core::{Symbol, TextIndex, WildcardPattern};

use crate::error::{Result, WcError};

/// Default cap on the number of concrete patterns [`enumerate`] expands.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Positions where the pattern matches `text` (sentinel included), by
/// direct comparison. Wildcards match any symbol except the sentinel. The
/// empty pattern matches at every position before the sentinel.
pub fn scan(text: &[Symbol], p: &WildcardPattern) -> Vec<usize> {
    let units = p.to_symbols();
    let n = text.len();
    if units.is_empty() {
        return (0..n.saturating_sub(1)).collect();
    }
    if units.len() > n {
        return Vec::new();
    }
    (0..=n - units.len())
        .filter(|&i| {
            units.iter().zip(&text[i..]).all(|(&u, &t)| match u {
                WILDCARD => t != SENTINEL,
                _ => u == t,
            })
        })
        .collect()
}

/// Positions found by expanding every wildcard into each alphabet symbol
/// and searching each of the `sigma^g` concrete patterns in the suffix
/// array.
pub fn enumerate(idx: &TextIndex, p: &WildcardPattern, budget: u64) -> Result<Vec<usize>> {
    let units = p.to_symbols();
    if units.is_empty() {
        return Ok((0..idx.len() - 1).collect());
    }
    let sigma = idx.sigma() as u128;
    let g = p.wildcard_count() as u32;
    let required = sigma.checked_pow(g).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(WcError::Budget { required, budget });
    }
    let holes: Vec<usize> = (0..units.len()).filter(|&i| units[i] == WILDCARD).collect();
    let mut concrete = units.clone();
    for &i in &holes {
        concrete[i] = 1;
    }
    let mut out = Vec::new();
    if sigma == 0 {
        return Ok(out);
    }
    loop {
        out.extend(exact_search(idx, &concrete)?);
        // odometer over the wildcard positions
        let mut k = 0;
        loop {
            if k == holes.len() {
                out.sort_unstable();
                return Ok(out);
            }
            let c = &mut concrete[holes[k]];
            if (*c as u128) < sigma {
                *c += 1;
                break;
            }
            *c = 1;
            k += 1;
        }
    }
}

/// Text positions of `s` by binary search over the suffix array.
pub fn exact_search(idx: &TextIndex, s: &[Symbol]) -> Result<Vec<usize>> {
    let text = idx.text();
    let n = idx.len();
    let prefix = |r: usize| -> Result<&[Symbol]> {
        let p = idx.sa(r)?;
        Ok(&text[p..(p + s.len()).min(n)])
    };
    let (mut lo, mut hi) = (0, n);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if prefix(mid)? < s {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let start = lo;
    hi = n;
    while lo < hi {
        let mid = (lo + hi) / 2;
        if prefix(mid)? == s {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let mut out = (start..lo).map(|r| Ok(idx.sa(r)?)).collect::<Result<Vec<_>>>()?;
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use wcindex_core::{AlphabetSpec, SaSampling};

    fn banana() -> TextIndex {
        TextIndex::build(b"banana", &AlphabetSpec::Infer, SaSampling::Full).unwrap()
    }

    #[test]
    fn scan_examples() {
        let idx = banana();
        let al = idx.alphabet();
        let pat = |s: &[u8]| WildcardPattern::parse(s, al).unwrap();
        assert_eq!(scan(idx.text(), &pat(b"?a")), [0, 2, 4]);
        assert!(scan(idx.text(), &pat(b"x?z")).is_empty());
        assert_eq!(scan(idx.text(), &pat(b"")), [0, 1, 2, 3, 4, 5]);
        assert_eq!(scan(idx.text(), &pat(b"??????")), [0]);
    }

    #[test]
    fn enumerate_examples() {
        let idx = banana();
        let al = idx.alphabet();
        let pat = |s: &[u8]| WildcardPattern::parse(s, al).unwrap();
        assert_eq!(enumerate(&idx, &pat(b"a?a"), DEFAULT_BUDGET).unwrap(), [1, 3]);
        assert_eq!(enumerate(&idx, &pat(b"ana"), DEFAULT_BUDGET).unwrap(), [1, 3]);
        assert_eq!(enumerate(&idx, &pat(b"?"), DEFAULT_BUDGET).unwrap(), [0, 1, 2, 3, 4, 5]);
        assert!(matches!(
            enumerate(&idx, &pat(b"?{13}"), 1_000_000),
            Err(WcError::Budget { required: 1_594_323, .. })
        ));
    }

    #[test]
    fn exact_search_finds_every_occurrence() {
        let idx = banana();
        let s = idx.alphabet().encode_literal(b"na");
        assert_eq!(exact_search(&idx, &s).unwrap(), [2, 4]);
        assert!(exact_search(&idx, &idx.alphabet().encode_literal(b"nb")).unwrap().is_empty());
    }
}
