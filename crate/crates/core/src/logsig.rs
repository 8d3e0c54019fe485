//! Logarithmic signatures and covers over GF(2^n).
//!
//! A signature of type (r_1, ..., r_s) with r_i = 2^(k_i) and Σk_i = n is an
//! ordered list of blocks B_i, each holding r_i field elements. An index
//! R in [0, q) selects one row per block through its mixed-radix digits, and
//! the signature maps R to the XOR of the selected rows. The signatures
//! generated here are staircase-tame: block i is zero above its own bit
//! segment, enumerates that segment bijectively, and carries random bits
//! below it, which makes the map a bijection on F_q that can be inverted one
//! block at a time from the top.
//!
//! A cover has the same block shape but holds group elements, and evaluation
//! is the ordered group product of the selected rows.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::group::{GroupElement, GroupParams};
use rand::seq::SliceRandom;
use rand::Rng;
use std::fmt;
use std::ops::Range;

/// Block type (r_1, ..., r_s): every radix a power of two >= 2, stored as the
/// segment bit widths k_i = log2(r_i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignatureType {
    segment_bits: Vec<u32>,
}

impl fmt::Debug for SignatureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let radices: Vec<String> = self.radices().iter().map(u64::to_string).collect();
        write!(f, "({})", radices.join(","))
    }
}

impl SignatureType {
    pub fn from_radices(radices: &[u64]) -> Result<Self> {
        if radices.is_empty() {
            return Err(Error::InvalidArgument("signature type must not be empty".into()));
        }
        let mut segment_bits = Vec::with_capacity(radices.len());
        for &r in radices {
            if r < 2 || !r.is_power_of_two() {
                return Err(Error::InvalidArgument(format!(
                    "block size {r} is not a power of two >= 2"
                )));
            }
            segment_bits.push(r.trailing_zeros());
        }
        Ok(SignatureType { segment_bits })
    }

    pub fn from_segment_bits(segment_bits: Vec<u32>) -> Result<Self> {
        if segment_bits.is_empty() || segment_bits.contains(&0) {
            return Err(Error::InvalidArgument(
                "segment widths must be nonempty and positive".into(),
            ));
        }
        Ok(SignatureType { segment_bits })
    }

    /// The default partition of a `degree`-bit field: four-bit segments
    /// with the remainder in the last segment.
    pub fn chunked(degree: u32) -> Result<Self> {
        let mut segment_bits = Vec::new();
        let mut left = degree;
        while left > 4 {
            segment_bits.push(4);
            left -= 4;
        }
        segment_bits.push(left);
        Self::from_segment_bits(segment_bits)
    }

    pub fn radices(&self) -> Vec<u64> {
        self.segment_bits.iter().map(|&k| 1u64 << k).collect()
    }

    pub fn segment_bits(&self) -> &[u32] {
        &self.segment_bits
    }

    pub fn block_count(&self) -> usize {
        self.segment_bits.len()
    }

    /// Σ k_i; equals n when the type partitions GF(2^n).
    pub fn total_bits(&self) -> u32 {
        self.segment_bits.iter().sum()
    }

    /// Π r_i = 2^total_bits: the size of the index space.
    pub fn index_space(&self) -> u64 {
        1u64 << self.total_bits()
    }

    /// Bit range of 0-based block `i`'s segment.
    pub fn segment_range(&self, i: usize) -> Range<u32> {
        let start: u32 = self.segment_bits[..i].iter().sum();
        start..start + self.segment_bits[i]
    }

    /// Whether this type partitions the bits of `spec`'s field.
    pub fn matches_field(&self, spec: FieldSpec) -> bool {
        self.total_bits() == spec.degree()
    }

    /// Little-endian mixed-radix digits of `r`: digit 1 first, i.e.
    /// j_1 = r mod r_1, j_2 = (r / r_1) mod r_2, ...
    pub fn decompose(&self, r: u64) -> Result<Vec<u64>> {
        if r >= self.index_space() {
            return Err(Error::IndexRange {
                index: r,
                what: "signature index",
                size: self.index_space(),
            });
        }
        let mut rest = r;
        let digits = self
            .segment_bits
            .iter()
            .map(|&k| {
                let d = rest & ((1 << k) - 1);
                rest >>= k;
                d
            })
            .collect();
        Ok(digits)
    }

    /// Inverse of [`decompose`](Self::decompose).
    pub fn compose(&self, digits: &[u64]) -> Result<u64> {
        if digits.len() != self.block_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} digits, got {}",
                self.block_count(),
                digits.len()
            )));
        }
        let mut r = 0u64;
        let mut shift = 0u32;
        for (&d, &k) in digits.iter().zip(&self.segment_bits) {
            if d >= 1 << k {
                return Err(Error::IndexRange {
                    index: d,
                    what: "block row",
                    size: 1 << k,
                });
            }
            r |= d << shift;
            shift += k;
        }
        Ok(r)
    }
}

fn segment_of(bits: u64, range: &Range<u32>) -> u64 {
    (bits >> range.start) & ((1u64 << (range.end - range.start)) - 1)
}

/// One step of a factorization: which row of which block was peeled off and
/// what remained afterwards.
#[derive(Clone, Debug)]
pub struct FactorStep {
    /// 1-based block number, in peel order (last block first).
    pub block: usize,
    pub row_index: u64,
    pub row: FieldElement,
    pub residual_after: FieldElement,
}

/// A staircase-tame logarithmic signature for one group coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogSignature {
    spec: FieldSpec,
    ty: SignatureType,
    /// 1-based group coordinate this signature addresses.
    coordinate: u32,
    blocks: Vec<Vec<FieldElement>>,
}

impl LogSignature {
    /// Generates a staircase-tame signature. Block i enumerates its own bit
    /// segment in index order (row j carries the little-endian bits of j),
    /// stays zero above it, and draws uniform random bits below it; the first
    /// block has no random part. Draw order: blocks first to last, rows in
    /// order, one draw per earlier segment from the lowest up.
    pub fn generate<R: Rng + ?Sized>(
        spec: FieldSpec,
        ty: &SignatureType,
        coordinate: u32,
        rng: &mut R,
    ) -> Result<Self> {
        Self::generate_inner(spec, ty, coordinate, false, rng)
    }

    /// Like [`generate`](Self::generate), but each block visits its segment
    /// patterns in a random order instead of index order (one extra shuffle
    /// draw per block, made before that block's rows).
    pub fn generate_shuffled<R: Rng + ?Sized>(
        spec: FieldSpec,
        ty: &SignatureType,
        coordinate: u32,
        rng: &mut R,
    ) -> Result<Self> {
        Self::generate_inner(spec, ty, coordinate, true, rng)
    }

    fn generate_inner<R: Rng + ?Sized>(
        spec: FieldSpec,
        ty: &SignatureType,
        coordinate: u32,
        shuffle: bool,
        rng: &mut R,
    ) -> Result<Self> {
        if !ty.matches_field(spec) {
            return Err(Error::InvalidArgument(format!(
                "type {ty:?} does not partition the {} bits of {spec:?}",
                spec.degree()
            )));
        }
        if coordinate == 0 {
            return Err(Error::InvalidArgument("coordinate is 1-based".into()));
        }
        let mut blocks = Vec::with_capacity(ty.block_count());
        for i in 0..ty.block_count() {
            let range = ty.segment_range(i);
            let rows = 1u64 << ty.segment_bits[i];
            let mut patterns: Vec<u64> = (0..rows).collect();
            if shuffle {
                patterns.shuffle(rng);
            }
            let mut block = Vec::with_capacity(rows as usize);
            for j in 0..rows {
                let mut bits = patterns[j as usize] << range.start;
                for u in 0..i {
                    let prefix = ty.segment_range(u);
                    bits |= rng.random_range(0..1u64 << ty.segment_bits[u]) << prefix.start;
                }
                block.push(spec.element(bits).expect("segments partition the field"));
            }
            blocks.push(block);
        }
        Ok(LogSignature {
            spec,
            ty: ty.clone(),
            coordinate,
            blocks,
        })
    }

    /// Rebuilds a signature from stored blocks, enforcing the staircase
    /// structure (factorization relies on it).
    pub fn from_blocks(
        spec: FieldSpec,
        ty: SignatureType,
        coordinate: u32,
        blocks: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        if coordinate == 0 {
            return Err(Error::InvalidArgument("coordinate is 1-based".into()));
        }
        let sig = LogSignature {
            spec,
            ty,
            coordinate,
            blocks,
        };
        sig.verify_staircase()?;
        Ok(sig)
    }

    pub fn field(&self) -> FieldSpec {
        self.spec
    }

    pub fn signature_type(&self) -> &SignatureType {
        &self.ty
    }

    /// 1-based group coordinate this signature addresses.
    pub fn coordinate(&self) -> u32 {
        self.coordinate
    }

    pub fn blocks(&self) -> &[Vec<FieldElement>] {
        &self.blocks
    }

    /// Checks the staircase shape: correct block sizes, zero bits above each
    /// block's segment, and a complete set of distinct segment patterns
    /// within each block.
    pub fn verify_staircase(&self) -> Result<()> {
        if !self.ty.matches_field(self.spec) {
            return Err(Error::Integrity(format!(
                "type {:?} does not partition {:?}",
                self.ty, self.spec
            )));
        }
        if self.blocks.len() != self.ty.block_count() {
            return Err(Error::Integrity(format!(
                "expected {} blocks, found {}",
                self.ty.block_count(),
                self.blocks.len()
            )));
        }
        for (i, block) in self.blocks.iter().enumerate() {
            let rows = 1u64 << self.ty.segment_bits[i];
            if block.len() as u64 != rows {
                return Err(Error::Integrity(format!(
                    "block {} must have {rows} rows, found {}",
                    i + 1,
                    block.len()
                )));
            }
            let range = self.ty.segment_range(i);
            let mut seen = vec![false; rows as usize];
            for (j, row) in block.iter().enumerate() {
                if row.spec() != self.spec {
                    return Err(Error::Integrity("row from a different field".into()));
                }
                if row.bits() >> range.end != 0 {
                    return Err(Error::Integrity(format!(
                        "block {} row {j} has bits above its segment",
                        i + 1
                    )));
                }
                let pattern = segment_of(row.bits(), &range) as usize;
                if seen[pattern] {
                    return Err(Error::Integrity(format!(
                        "block {} repeats segment pattern {pattern:b}",
                        i + 1
                    )));
                }
                seen[pattern] = true;
            }
        }
        Ok(())
    }

    /// Exhaustively checks that R -> evaluate(R) hits every field value
    /// exactly once. Costs q evaluations.
    pub fn verify_bijective(&self) -> Result<()> {
        let q = self.ty.index_space();
        let mut seen = vec![false; q as usize];
        for r in 0..q {
            let v = self.evaluate(r)? .bits() as usize;
            if seen[v] {
                return Err(Error::Integrity(format!(
                    "evaluation collides at index {r}"
                )));
            }
            seen[v] = true;
        }
        Ok(())
    }

    /// XOR of the rows selected by the mixed-radix digits of `r`.
    pub fn evaluate(&self, r: u64) -> Result<FieldElement> {
        let digits = self.ty.decompose(r)?;
        let mut acc = self.spec.zero();
        for (block, &j) in self.blocks.iter().zip(&digits) {
            acc += block[j as usize];
        }
        Ok(acc)
    }

    /// Inverts [`evaluate`](Self::evaluate): recovers the unique index whose
    /// row selection XORs to `value`.
    pub fn factorize(&self, value: FieldElement) -> Result<u64> {
        self.factorize_traced(value).map(|(r, _)| r)
    }

    /// Factorizes and records each peeled block for display or auditing.
    ///
    /// Blocks are peeled from the last to the first: the residual's bits in
    /// segment i can only come from block i's row once the higher blocks are
    /// removed, which pins that row down.
    pub fn factorize_traced(&self, value: FieldElement) -> Result<(u64, Vec<FactorStep>)> {
        if value.spec() != self.spec {
            return Err(Error::InvalidArgument(
                "value from a different field".into(),
            ));
        }
        let s = self.ty.block_count();
        let mut residual = value;
        let mut digits = vec![0u64; s];
        let mut steps = Vec::with_capacity(s);
        for i in (0..s).rev() {
            let range = self.ty.segment_range(i);
            let want = segment_of(residual.bits(), &range);
            let found = self.blocks[i]
                .iter()
                .position(|row| segment_of(row.bits(), &range) == want);
            let Some(j) = found else {
                return Err(Error::Integrity(format!(
                    "no row of block {} matches segment pattern {want:b}",
                    i + 1
                )));
            };
            residual += self.blocks[i][j];
            digits[i] = j as u64;
            steps.push(FactorStep {
                block: i + 1,
                row_index: j as u64,
                row: self.blocks[i][j],
                residual_after: residual,
            });
        }
        if !residual.is_zero() {
            return Err(Error::Integrity(
                "nonzero residual after removing every block".into(),
            ));
        }
        Ok((self.ty.compose(&digits)?, steps))
    }
}

/// Same block shape as a signature, but rows are group elements and
/// evaluation is the ordered group product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cover {
    params: GroupParams,
    ty: SignatureType,
    blocks: Vec<Vec<GroupElement>>,
}

impl Cover {
    /// Random cover: every row has all coordinates uniform in F_q \ {0}.
    /// Draw order: blocks first to last, rows in order, coordinates 1..l.
    pub fn generate<R: Rng + ?Sized>(
        params: GroupParams,
        ty: &SignatureType,
        rng: &mut R,
    ) -> Result<Self> {
        if !ty.matches_field(params.field()) {
            return Err(Error::InvalidArgument(format!(
                "type {ty:?} does not partition the {} bits of the base field",
                params.field().degree()
            )));
        }
        let blocks = ty
            .radices()
            .iter()
            .map(|&r| (0..r).map(|_| params.random_all_nonzero(rng)).collect())
            .collect();
        Ok(Cover {
            params,
            ty: ty.clone(),
            blocks,
        })
    }

    /// Rebuilds a cover from stored blocks, enforcing the block shape.
    pub fn from_blocks(
        params: GroupParams,
        ty: SignatureType,
        blocks: Vec<Vec<GroupElement>>,
    ) -> Result<Self> {
        if blocks.len() != ty.block_count() {
            return Err(Error::Integrity(format!(
                "expected {} blocks, found {}",
                ty.block_count(),
                blocks.len()
            )));
        }
        for (i, block) in blocks.iter().enumerate() {
            let rows = 1u64 << ty.segment_bits()[i];
            if block.len() as u64 != rows {
                return Err(Error::Integrity(format!(
                    "block {} must have {rows} rows, found {}",
                    i + 1,
                    block.len()
                )));
            }
            if block.iter().any(|g| g.params() != params) {
                return Err(Error::Integrity(
                    "cover row from a different group".into(),
                ));
            }
        }
        Ok(Cover { params, ty, blocks })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn signature_type(&self) -> &SignatureType {
        &self.ty
    }

    pub fn blocks(&self) -> &[Vec<GroupElement>] {
        &self.blocks
    }

    /// Whether every row has no zero coordinate (true for generated random
    /// covers; not required of derived covers).
    pub fn all_coords_nonzero(&self) -> bool {
        self.blocks
            .iter()
            .flatten()
            .all(|g| g.coords().iter().all(|c| !c.is_zero()))
    }

    /// Ordered group product of the rows selected by `r`'s digits.
    pub fn evaluate(&self, r: u64) -> Result<GroupElement> {
        let digits = self.ty.decompose(r)?;
        let mut acc = self.params.identity();
        for (block, &j) in self.blocks.iter().zip(&digits) {
            acc = acc.mul(&block[j as usize]);
        }
        Ok(acc)
    }
}
