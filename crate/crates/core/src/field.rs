//! Binary field arithmetic for GF(2^n).
//!
//! Elements are polynomials over GF(2) reduced modulo a fixed irreducible
//! polynomial of degree `n`. Bit `i` of the representation is the coefficient
//! of `x^i`, so the all-bits value fits in a `u64` for every supported degree.
//! Addition is XOR, multiplication is shift-and-add with modular reduction,
//! and the Frobenius map `x -> x^2` is applied by repeated squaring.

use crate::error::{Error, Result};
use rand::Rng;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

/// Smallest supported extension degree.
pub const MIN_DEGREE: u32 = 2;
/// Largest supported extension degree. Keeps the exhaustive irreducibility
/// check at construction time cheap (at most 2^13 trial divisions).
pub const MAX_DEGREE: u32 = 24;

/// Default irreducible (primitive) polynomials, one per supported degree,
/// taken from the standard LFSR/primitive-polynomial tables. Entry `i` is the
/// coefficient mask for degree `MIN_DEGREE + i`; e.g. degree 7 is
/// `x^7 + x + 1` = 0b1000_0011 and degree 10 is `x^10 + x^3 + 1`.
const DEFAULT_MODULI: [u64; (MAX_DEGREE - MIN_DEGREE + 1) as usize] = [
    0b111,                       // 2:  x^2 + x + 1
    0b1011,                      // 3:  x^3 + x + 1
    0b1_0011,                    // 4:  x^4 + x + 1
    0b10_0101,                   // 5:  x^5 + x^2 + 1
    0b100_0011,                  // 6:  x^6 + x + 1
    0b1000_0011,                 // 7:  x^7 + x + 1
    0b1_0001_1101,               // 8:  x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001,              // 9:  x^9 + x^4 + 1
    0b100_0000_1001,             // 10: x^10 + x^3 + 1
    0b1000_0000_0101,            // 11: x^11 + x^2 + 1
    0b1_0000_0101_0011,          // 12: x^12 + x^6 + x^4 + x + 1
    0b10_0000_0001_1011,         // 13: x^13 + x^4 + x^3 + x + 1
    0b100_0100_0100_0011,        // 14: x^14 + x^10 + x^6 + x + 1
    0b1000_0000_0000_0011,       // 15: x^15 + x + 1
    0b1_0001_0000_0000_1011,     // 16: x^16 + x^12 + x^3 + x + 1
    0b10_0000_0000_0000_1001,    // 17: x^17 + x^3 + 1
    0b100_0000_0000_1000_0001,   // 18: x^18 + x^7 + 1
    0b1000_0000_0000_0010_0111,  // 19: x^19 + x^5 + x^2 + x + 1
    0b1_0000_0000_0000_0000_1001, // 20: x^20 + x^3 + 1
    0b10_0000_0000_0000_0000_0101, // 21: x^21 + x^2 + 1
    0b100_0000_0000_0000_0000_0011, // 22: x^22 + x + 1
    0b1000_0000_0000_0000_0010_0001, // 23: x^23 + x^5 + 1
    0b1_0000_0000_0000_0000_1000_0111, // 24: x^24 + x^7 + x^2 + x + 1
];

/// A concrete GF(2^n): degree plus irreducible modulus polynomial.
///
/// `FieldSpec` is `Copy` and travels inside every [`FieldElement`], which
/// makes cross-field mixing detectable at the point of use.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    degree: u32,
    modulus: u64,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; 0x{:x})", self.degree, self.modulus)
    }
}

impl FieldSpec {
    /// Builds a field from an explicit modulus. The modulus must have degree
    /// exactly `degree` and be irreducible over GF(2); irreducibility is
    /// verified by exhaustive trial division.
    pub fn new(degree: u32, modulus: u64) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        if 64 - modulus.leading_zeros() != degree + 1 {
            return Err(Error::ModulusDegree { modulus, degree });
        }
        if !is_irreducible(modulus, degree) {
            return Err(Error::ReducibleModulus { modulus });
        }
        Ok(FieldSpec { degree, modulus })
    }

    /// Builds GF(2^n) with the default modulus for that degree.
    pub fn with_default_modulus(degree: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        FieldSpec::new(degree, DEFAULT_MODULI[(degree - MIN_DEGREE) as usize])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Field order q = 2^n.
    pub fn order(&self) -> u64 {
        1 << self.degree
    }

    /// Wraps raw coefficient bits, rejecting values outside [0, 2^n).
    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits >= self.order() {
            return Err(Error::ElementRange {
                bits,
                degree: self.degree,
            });
        }
        Ok(FieldElement { bits, spec: *self })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            bits: 0,
            spec: *self,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            bits: 1,
            spec: *self,
        }
    }

    /// Uniform element of the full field (single RNG draw).
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement {
            bits: rng.random_range(0..self.order()),
            spec: *self,
        }
    }

    /// Uniform element of F_q \ {0} (single RNG draw).
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement {
            bits: rng.random_range(1..self.order()),
            spec: *self,
        }
    }

    /// Number of hex digits in the canonical text form of an element.
    pub fn hex_width(&self) -> usize {
        self.degree.div_ceil(4) as usize
    }

    /// Parses the canonical element text: exactly `hex_width()` lowercase hex
    /// digits, least significant digit last.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        let width = self.hex_width();
        if text.len() != width {
            return Err(Error::parse(
                0,
                format!(
                    "field element must be exactly {width} hex digits, got {:?}",
                    text
                ),
            ));
        }
        let mut bits = 0u64;
        for (pos, c) in text.chars().enumerate() {
            let nibble = match c {
                '0'..='9' => c as u64 - '0' as u64,
                'a'..='f' => c as u64 - 'a' as u64 + 10,
                _ => {
                    return Err(Error::parse(
                        0,
                        format!("invalid hex digit {c:?} at position {}", pos + 1),
                    ))
                }
            };
            bits = (bits << 4) | nibble;
        }
        self.element(bits).map_err(|_| {
            Error::parse(
                0,
                format!("value 0x{bits:x} exceeds GF(2^{})", self.degree),
            )
        })
    }
}

/// Remainder of GF(2)[x] division of `a` by `b` (b != 0).
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros() as i32;
    loop {
        let da = 63 - (a | 1).leading_zeros() as i32;
        if a == 0 || da < db {
            return a;
        }
        a ^= b << (da - db);
    }
}

/// Exhaustive trial division: a degree-n polynomial is irreducible iff no
/// polynomial of degree 1..=n/2 divides it.
fn is_irreducible(modulus: u64, degree: u32) -> bool {
    for d in 1..=degree / 2 {
        for divisor in (1u64 << d)..(1u64 << (d + 1)) {
            if poly_rem(modulus, divisor) == 0 {
                return false;
            }
        }
    }
    true
}

/// An element of GF(2^n). Bit `i` is the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    bits: u64,
    spec: FieldSpec,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈{:?}", self.to_hex(), self.spec)
    }
}

impl FieldElement {
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Multiplicative inverse; the zero element has none.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.bits == 0 {
            return Err(Error::ZeroInverse);
        }
        // a^(q-2) = a^-1 in the multiplicative group of order q-1.
        Ok(self.pow(self.spec.order() - 2))
    }

    fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = self.spec.one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// θ^j: applies the Frobenius map j times, i.e. raises to 2^j.
    /// `frobenius_pow(0)` is the identity and `frobenius_pow(n)` returns the
    /// element unchanged.
    pub fn frobenius_pow(&self, j: u32) -> FieldElement {
        let mut acc = *self;
        for _ in 0..j {
            acc *= acc;
        }
        acc
    }

    /// Canonical text form: lowercase hex, fixed width, least significant
    /// digit (bits 0-3) last.
    pub fn to_hex(&self) -> String {
        format!("{:0>width$x}", self.bits, width = self.spec.hex_width())
    }
}

fn assert_same_field(a: &FieldElement, b: &FieldElement) {
    assert_eq!(
        a.spec, b.spec,
        "field elements from different GF(2^n) instances must not mix"
    );
}

impl Add for FieldElement {
    type Output = FieldElement;

    // In characteristic 2, polynomial addition is coefficient-wise XOR.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        assert_same_field(&self, &rhs);
        FieldElement {
            bits: self.bits ^ rhs.bits,
            spec: self.spec,
        }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        assert_same_field(&self, &rhs);
        let (n, modulus) = (self.spec.degree, self.spec.modulus);
        let top = 1u64 << (n - 1);
        let mut a = self.bits;
        let mut b = rhs.bits;
        let mut acc = 0u64;
        // Schoolbook shift-and-add, reducing after every doubling so the
        // accumulator never exceeds n bits.
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            let carry = a & top != 0;
            a <<= 1;
            if carry {
                a ^= modulus;
            }
        }
        FieldElement {
            bits: acc,
            spec: self.spec,
        }
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(n: u32) -> FieldSpec {
        FieldSpec::with_default_modulus(n).unwrap()
    }

    #[test]
    fn default_moduli_all_construct() {
        for n in MIN_DEGREE..=MAX_DEGREE {
            let spec = gf(n);
            assert_eq!(spec.degree(), n);
            assert_eq!(spec.order(), 1 << n);
        }
    }

    #[test]
    fn required_default_moduli() {
        assert_eq!(gf(7).modulus(), 0b1000_0011); // x^7 + x + 1
        assert_eq!(gf(10).modulus(), 0b100_0000_1001); // x^10 + x^3 + 1
    }

    #[test]
    fn reducible_moduli_rejected() {
        // x^2 + 1 = (x+1)^2 and x^4 + x^2 + 1 = (x^2+x+1)^2.
        assert_eq!(
            FieldSpec::new(2, 0b101),
            Err(Error::ReducibleModulus { modulus: 0b101 })
        );
        assert_eq!(
            FieldSpec::new(4, 0b10101),
            Err(Error::ReducibleModulus { modulus: 0b10101 })
        );
        assert!(matches!(
            FieldSpec::new(3, 0b111),
            Err(Error::ModulusDegree { .. })
        ));
        assert_eq!(FieldSpec::new(30, 0), Err(Error::UnsupportedDegree(30)));
    }

    #[test]
    fn addition_is_xor() {
        // Worked-example vector over GF(2^7): 0001100 + 1011100 = 1010000
        // in bit-0-first notation, i.e. 0x18 ^ 0x1d = 0x05.
        let f = gf(7);
        let a = f.element(0x18).unwrap();
        let b = f.element(0x1d).unwrap();
        assert_eq!((a + b).bits(), 0x05);
        assert_eq!((a + a).bits(), 0);
    }

    #[test]
    fn multiplication_small_field_oracle() {
        // Hand-computed products in GF(2^3) mod x^3 + x + 1.
        let f = gf(3);
        let e = |b: u64| f.element(b).unwrap();
        assert_eq!((e(0b010) * e(0b011)).bits(), 0b110); // x(x+1) = x^2 + x
        assert_eq!((e(0b100) * e(0b010)).bits(), 0b011); // x^2 * x = x + 1
        assert_eq!((e(0b101) * e(0b010)).bits(), 0b001); // (x^2+1)x = 1
        // (x^2+x+1)^2 = x^4 + x^2 + 1 = (x^2+x) + x^2 + 1 = x + 1.
        assert_eq!((e(0b111) * e(0b111)).bits(), 0b011);
    }

    #[test]
    fn multiplication_reduction_cases() {
        // x^6 * x = x^7 = x + 1 mod x^7 + x + 1.
        let f7 = gf(7);
        let x6 = f7.element(0x40).unwrap();
        let x = f7.element(0x02).unwrap();
        assert_eq!((x6 * x).bits(), 0x03);
        assert_eq!((x6 * f7.element(0x04).unwrap()).bits(), 0x06); // x^8 = x^2 + x

        // x^9 * x = x^10 = x^3 + 1 mod x^10 + x^3 + 1.
        let f10 = gf(10);
        let x9 = f10.element(0x200).unwrap();
        assert_eq!((x9 * f10.element(0x002).unwrap()).bits(), 0x009);
    }

    #[test]
    fn inverse_exhaustive_small_fields() {
        for n in MIN_DEGREE..=8 {
            let f = gf(n);
            let one = f.one();
            for bits in 1..f.order() {
                let a = f.element(bits).unwrap();
                assert_eq!(a * a.inv().unwrap(), one, "inverse of 0x{bits:x} in GF(2^{n})");
            }
        }
    }

    #[test]
    fn inverse_known_values_gf8() {
        // Hand-computed inverse table for GF(2^3) mod x^3 + x + 1.
        let f = gf(3);
        for (a, b) in [(1, 1), (2, 5), (3, 6), (4, 7), (5, 2), (6, 3), (7, 4)] {
            assert_eq!(f.element(a).unwrap().inv().unwrap().bits(), b);
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(gf(5).zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn frobenius_squares_and_cycles() {
        let f = gf(3);
        let a = f.element(0b011).unwrap();
        assert_eq!(a.frobenius_pow(0), a);
        assert_eq!(a.frobenius_pow(1).bits(), 0b101); // (x+1)^2 = x^2 + 1
        assert_eq!(a.frobenius_pow(3), a); // a^(2^n) = a

        // Frobenius is additive: (a+b)^2 = a^2 + b^2, exhaustively for n=5.
        let f5 = gf(5);
        for x in 0..f5.order() {
            for y in 0..f5.order() {
                let a = f5.element(x).unwrap();
                let b = f5.element(y).unwrap();
                assert_eq!((a + b).frobenius_pow(1), a.frobenius_pow(1) + b.frobenius_pow(1));
            }
        }
    }

    #[test]
    fn hex_round_trip() {
        let f = gf(7);
        let a = f.element(0x18).unwrap();
        assert_eq!(a.to_hex(), "18");
        assert_eq!(f.parse_element("18").unwrap(), a);
        assert_eq!(f.parse_element("05").unwrap().bits(), 5);

        let f10 = gf(10);
        assert_eq!(f10.element(0x3ff).unwrap().to_hex(), "3ff");
        assert_eq!(f10.parse_element("3ff").unwrap().bits(), 0x3ff);
    }

    #[test]
    fn hex_rejects_bad_input() {
        let f = gf(7);
        assert!(f.parse_element("1").is_err()); // wrong width
        assert!(f.parse_element("123").is_err()); // wrong width
        assert!(f.parse_element("1G").is_err()); // bad digit
        assert!(f.parse_element("ff").is_err()); // 0xff >= 2^7
        let f4 = gf(4);
        assert!(f4.parse_element("g").is_err());
        assert_eq!(f4.parse_element("f").unwrap().bits(), 15);
    }

    #[test]
    fn element_range_enforced() {
        let f = gf(4);
        assert!(f.element(15).is_ok());
        assert_eq!(
            f.element(16),
            Err(Error::ElementRange { bits: 16, degree: 4 })
        );
    }

    #[test]
    #[should_panic(expected = "different GF(2^n)")]
    fn cross_field_mixing_panics() {
        let a = gf(3).one();
        let b = gf(4).one();
        let _ = a + b;
    }
}
