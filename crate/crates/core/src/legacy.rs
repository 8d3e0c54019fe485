//! The earlier two-component scheme this crate's main scheme supersedes.
//!
//! It needs an even coordinate count l. Messages live in the subgroup with
//! the first l/2 coordinates zero. Each stage k = 1..l/2 pairs a tame
//! signature β_k homed at coordinate l/2+k with a cover α_k whose entries
//! are supported on coordinates {k, l/2+k} only, and publishes
//!
//! ```text
//! γ_k[i][j] = t_(i-1)(k)^-1 · f(α_k[i][j]) · e_(l/2+k)(β_k[i][j]) · t_i(k)
//! ```
//!
//! where f shifts the lower half of an element into the upper half:
//! f(S(a_1..a_l)) = S(0,..,0,a_1..a_(l/2)). The ciphertext has only two
//! components, y1 = α'(R)·x and y2 = γ'(R).
//!
//! Keeping the masking inside a single upper-half coordinate per stage is
//! what makes this variant fall to the stage-by-stage scan in
//! [`crate::attack`]; it is retained as the attack target and baseline.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::group::{GroupElement, GroupParams};
use crate::logsig::{Cover, LogSignature, SignatureType};
use rand::Rng;

/// Group shape plus one signature type per stage (l/2 stages).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegacyParams {
    group: GroupParams,
    types: Vec<SignatureType>,
}

impl LegacyParams {
    pub fn new(group: GroupParams, types: Vec<SignatureType>) -> Result<Self> {
        if !group.coordinate_count().is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "the two-component scheme needs an even coordinate count, got l = {}",
                group.coordinate_count()
            )));
        }
        let stages = (group.coordinate_count() / 2) as usize;
        if types.len() != stages {
            return Err(Error::InvalidArgument(format!(
                "need one signature type per stage: {} types for {stages} stages",
                types.len()
            )));
        }
        for (k, ty) in types.iter().enumerate() {
            if !ty.matches_field(group.field()) {
                return Err(Error::InvalidArgument(format!(
                    "type {ty:?} for stage {} does not partition {} bits",
                    k + 1,
                    group.field().degree()
                )));
            }
        }
        Ok(LegacyParams { group, types })
    }

    pub fn group(&self) -> GroupParams {
        self.group
    }

    pub fn types(&self) -> &[SignatureType] {
        &self.types
    }

    pub fn q(&self) -> u64 {
        self.group.field().order()
    }

    /// Number of stages, l/2.
    pub fn stages(&self) -> u32 {
        self.group.coordinate_count() / 2
    }

    fn chain_start(&self, k: u32) -> usize {
        self.types[..(k - 1) as usize]
            .iter()
            .map(SignatureType::block_count)
            .sum()
    }

    fn chain_len(&self) -> usize {
        1 + self
            .types
            .iter()
            .map(SignatureType::block_count)
            .sum::<usize>()
    }

    /// Draws a message: zero on the first l/2 coordinates, random above.
    pub fn random_message<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let spec = self.group.field();
        let half = (self.group.coordinate_count() / 2) as usize;
        let coords: Vec<FieldElement> = (0..self.group.coordinate_count() as usize)
            .map(|i| {
                if i < half {
                    spec.zero()
                } else {
                    spec.random(rng)
                }
            })
            .collect();
        GroupElement::new(coords).expect("valid by construction")
    }

    /// Whether `x` lies in the message subgroup (lower half zero).
    pub fn is_message(&self, x: &GroupElement) -> bool {
        x.params() == self.group
            && x.coords()[..(self.group.coordinate_count() / 2) as usize]
                .iter()
                .all(|c| c.is_zero())
    }
}

/// f: shifts the lower half into the upper half, zeroing the lower half.
pub fn compress(x: &GroupElement) -> GroupElement {
    let params = x.params();
    let half = (params.coordinate_count() / 2) as usize;
    let spec = params.field();
    let mut coords = vec![spec.zero(); params.coordinate_count() as usize];
    coords[half..].copy_from_slice(&x.coords()[..half]);
    GroupElement::new(coords).expect("valid by construction")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegacyPublicKey {
    params: LegacyParams,
    alpha: Vec<Cover>,
    gamma: Vec<Cover>,
}

impl LegacyPublicKey {
    pub fn params(&self) -> &LegacyParams {
        &self.params
    }

    /// Cover for 1-based stage `k`; entries are supported on {k, l/2+k}.
    pub fn alpha(&self, k: u32) -> &Cover {
        &self.alpha[(k - 1) as usize]
    }

    pub fn gamma(&self, k: u32) -> &Cover {
        &self.gamma[(k - 1) as usize]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegacyPrivateKey {
    params: LegacyParams,
    beta: Vec<LogSignature>,
    chain: Vec<GroupElement>,
}

impl LegacyPrivateKey {
    pub fn params(&self) -> &LegacyParams {
        &self.params
    }

    /// Tame signature for stage `k`, homed at coordinate l/2+k.
    pub fn beta(&self, k: u32) -> &LogSignature {
        &self.beta[(k - 1) as usize]
    }

    pub fn chain(&self) -> &[GroupElement] {
        &self.chain
    }

    fn chain_element(&self, k: u32, i: usize) -> &GroupElement {
        &self.chain[self.params.chain_start(k) + i]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegacyKeyPair {
    pub public: LegacyPublicKey,
    pub private: LegacyPrivateKey,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegacyCiphertext {
    pub y1: GroupElement,
    pub y2: GroupElement,
}

/// Generates a legacy key pair.
///
/// Draw order: β_1..β_(l/2); then per stage k, per block, per row, the
/// nonzero values at coordinates k and l/2+k of the α entry; then the chain.
pub fn keygen<R: Rng + ?Sized>(params: &LegacyParams, rng: &mut R) -> Result<LegacyKeyPair> {
    let group = params.group();
    let spec = group.field();
    let l = group.coordinate_count();
    let half = l / 2;

    let beta: Vec<LogSignature> = (1..=params.stages())
        .map(|k| LogSignature::generate(spec, &params.types()[(k - 1) as usize], half + k, rng))
        .collect::<Result<_>>()?;

    let mut alpha = Vec::with_capacity(params.stages() as usize);
    for k in 1..=params.stages() {
        let ty = &params.types()[(k - 1) as usize];
        let blocks = ty
            .radices()
            .iter()
            .map(|&r| {
                (0..r)
                    .map(|_| {
                        let lo = spec.random_nonzero(rng);
                        let hi = spec.random_nonzero(rng);
                        let mut coords = vec![spec.zero(); l as usize];
                        coords[(k - 1) as usize] = lo;
                        coords[(half + k - 1) as usize] = hi;
                        GroupElement::new(coords)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        alpha.push(Cover::from_blocks(group, ty.clone(), blocks)?);
    }

    let chain: Vec<GroupElement> = (0..params.chain_len())
        .map(|_| group.random_all_nonzero(rng))
        .collect();

    let mut gamma = Vec::with_capacity(params.stages() as usize);
    for k in 1..=params.stages() {
        let ki = (k - 1) as usize;
        let start = params.chain_start(k);
        let blocks = alpha[ki]
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, block)| {
                let left = chain[start + i].inverse();
                let right = &chain[start + i + 1];
                block
                    .iter()
                    .zip(&beta[ki].blocks()[i])
                    .map(|(a, &b)| {
                        let e = GroupElement::embedded(group, half + k, b)?;
                        Ok(left.mul(&compress(a)).mul(&e).mul(right))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        gamma.push(Cover::from_blocks(
            group,
            params.types()[ki].clone(),
            blocks,
        )?);
    }

    Ok(LegacyKeyPair {
        public: LegacyPublicKey {
            params: params.clone(),
            alpha,
            gamma,
        },
        private: LegacyPrivateKey {
            params: params.clone(),
            beta,
            chain,
        },
    })
}

/// Encrypts a message from the restricted subgroup (lower half zero).
pub fn encrypt<R: Rng + ?Sized>(
    pk: &LegacyPublicKey,
    x: &GroupElement,
    rng: &mut R,
) -> Result<LegacyCiphertext> {
    if !pk.params().is_message(x) {
        return Err(Error::InvalidArgument(
            "legacy messages must be zero on the first l/2 coordinates".into(),
        ));
    }
    let q = pk.params().q();
    let r: Vec<u64> = (0..pk.params().stages())
        .map(|_| rng.random_range(0..q))
        .collect();
    encrypt_with_indices(pk, x, &r)
}

pub(crate) fn encrypt_with_indices(
    pk: &LegacyPublicKey,
    x: &GroupElement,
    r: &[u64],
) -> Result<LegacyCiphertext> {
    let group = pk.params().group();
    let mut y1 = group.identity();
    let mut y2 = group.identity();
    for k in 1..=pk.params().stages() {
        let ki = (k - 1) as usize;
        y1 = y1.mul(&pk.alpha(k).evaluate(r[ki])?);
        y2 = y2.mul(&pk.gamma(k).evaluate(r[ki])?);
    }
    Ok(LegacyCiphertext { y1: y1.mul(x), y2 })
}

/// Decrypts a two-component ciphertext.
///
/// Round k reads β_k(R_k) off coordinate l/2+k of
/// t_0(k)·y2·T^-1·f(y1), inverts the signature, and peels stage k from both
/// components; after the last stage the y1 residual is the message.
pub fn decrypt(
    pk: &LegacyPublicKey,
    sk: &LegacyPrivateKey,
    ct: &LegacyCiphertext,
) -> Result<GroupElement> {
    let params = sk.params();
    if pk.params() != params {
        return Err(Error::InvalidArgument(
            "public and private keys built for different parameters".into(),
        ));
    }
    let group = params.group();
    if ct.y1.params() != group || ct.y2.params() != group {
        return Err(Error::InvalidArgument(
            "ciphertext from a different group".into(),
        ));
    }
    let half = group.coordinate_count() / 2;

    let t_final_inv = sk.chain().last().expect("chain is never empty").inverse();
    let mut y1 = ct.y1.clone();
    let mut y2 = ct.y2.clone();

    for k in 1..=params.stages() {
        let d = sk.chain_element(k, 0).mul(&y2).mul(&t_final_inv);
        let d_star = d.mul(&compress(&y1));
        for m in 1..=half + k - 1 {
            if !d_star.coord(m).is_zero() {
                return Err(Error::Integrity(format!(
                    "stage {k}: coordinate {m} should be masked out but is nonzero"
                )));
            }
        }
        let v = d_star.coord(half + k);
        let index = sk.beta(k).factorize(v)?;
        y1 = pk.alpha(k).evaluate(index)?.inverse().mul(&y1);
        y2 = pk.gamma(k).evaluate(index)?.inverse().mul(&y2);
    }

    if !y2.is_identity() {
        return Err(Error::Integrity(
            "ciphertext residual did not cancel after the final stage".into(),
        ));
    }
    if !params.is_message(&y1) {
        return Err(Error::Integrity(
            "residual after peeling all stages is not in the message subgroup".into(),
        ));
    }
    Ok(y1)
}
