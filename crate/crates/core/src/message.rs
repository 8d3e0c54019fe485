//! Hex encoding of messages.
//!
//! A message is the full l·n bits of a group element, written as a single
//! lowercase hex integer of exactly ⌈l·n/4⌉ digits, most significant digit
//! first. Bit i of that integer is message bit i; bits (k−1)·n .. k·n−1 are
//! coordinate k (coordinate 1 occupies the least significant bits). Pad bits
//! above l·n−1 must be zero.

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams};

/// Number of hex digits a message for this group takes: ⌈l·n/4⌉.
pub fn hex_width(params: GroupParams) -> usize {
    let bits = params.coordinate_count() * params.field().degree();
    bits.div_ceil(4) as usize
}

/// Parses a message hex string into a group element.
pub fn encode(params: GroupParams, hex: &str) -> Result<GroupElement> {
    let width = hex_width(params);
    if hex.len() != width {
        return Err(Error::parse(
            1,
            format!(
                "message must be exactly {width} hex digits, got {}",
                hex.len()
            ),
        ));
    }
    let mut nibbles = Vec::with_capacity(width);
    for (pos, ch) in hex.chars().enumerate() {
        let v = match ch {
            '0'..='9' => ch as u64 - '0' as u64,
            'a'..='f' => ch as u64 - 'a' as u64 + 10,
            _ => {
                return Err(Error::parse(
                    1,
                    format!("invalid hex digit {ch:?} at position {}", pos + 1),
                ))
            }
        };
        nibbles.push(v);
    }

    let n = params.field().degree();
    let l = params.coordinate_count();
    let total_bits = (n * l) as usize;
    let bit = |i: usize| nibbles[width - 1 - i / 4] >> (i % 4) & 1;

    for i in total_bits..width * 4 {
        if bit(i) != 0 {
            return Err(Error::parse(
                1,
                format!("pad bit {i} is set; only the low {total_bits} bits may be used"),
            ));
        }
    }

    let coords = (0..l)
        .map(|k| {
            let mut bits = 0u64;
            for j in 0..n {
                bits |= bit((k * n + j) as usize) << j;
            }
            params.field().element(bits)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupElement::new(coords)
}

/// Renders a group element as its message hex string. Inverse of [`encode`].
pub fn decode(x: &GroupElement) -> String {
    let params = x.params();
    let n = params.field().degree();
    let width = hex_width(params);
    let mut nibbles = vec![0u64; width];
    for (k, coord) in x.coords().iter().enumerate() {
        for j in 0..n {
            if coord.bits() >> j & 1 == 1 {
                let i = k * n as usize + j as usize;
                nibbles[width - 1 - i / 4] |= 1 << (i % 4);
            }
        }
    }
    nibbles
        .iter()
        .map(|&v| char::from_digit(v as u32, 16).expect("nibble"))
        .collect()
}
