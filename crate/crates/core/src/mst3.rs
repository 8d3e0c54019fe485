//! The hardened three-component encryption scheme.
//!
//! Private data: one staircase-tame signature β_k per group coordinate and a
//! flat chain of masking elements t_0, t_1, ... with all coordinates nonzero,
//! where consecutive coordinates share their boundary element. Public data:
//! random covers α_k, the masked covers
//!
//! ```text
//! γ_k[i][j] = t_(i-1)(k)^-1 · α_k[i][j] · e_k(β_k[i][j]) · t_i(k)
//! ```
//!
//! (e_k embeds a field value at coordinate k), and a random public
//! permutation π of the coordinate indices.
//!
//! Encryption draws one index R_k per coordinate and publishes
//! y1 = α'(π(R))·x, y2 = γ'(R), y3 = α'(R). Decryption conjugates y2 back
//! with the chain ends, cancels the α part through y3, reads β_k(R_k) off
//! coordinate k, inverts the tame signature to get R_k, and peels that
//! coordinate — the chain telescopes so every round exposes the next
//! coordinate. With all R_k recovered, π is applied and α'(π(R)) stripped
//! from y1.

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupParams};
use crate::logsig::{Cover, LogSignature, SignatureType};
use rand::seq::SliceRandom;
use rand::Rng;

/// Group shape plus one signature type per coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeParams {
    group: GroupParams,
    types: Vec<SignatureType>,
}

impl SchemeParams {
    pub fn new(group: GroupParams, types: Vec<SignatureType>) -> Result<Self> {
        if types.len() != group.coordinate_count() as usize {
            return Err(Error::InvalidArgument(format!(
                "need one signature type per coordinate: {} types for l = {}",
                types.len(),
                group.coordinate_count()
            )));
        }
        for (k, ty) in types.iter().enumerate() {
            if !ty.matches_field(group.field()) {
                return Err(Error::InvalidArgument(format!(
                    "type {ty:?} for coordinate {} does not partition {} bits",
                    k + 1,
                    group.field().degree()
                )));
            }
        }
        Ok(SchemeParams { group, types })
    }

    pub fn group(&self) -> GroupParams {
        self.group
    }

    pub fn types(&self) -> &[SignatureType] {
        &self.types
    }

    /// Field order q = 2^n; also the index space of every coordinate.
    pub fn q(&self) -> u64 {
        self.group.field().order()
    }

    pub fn l(&self) -> u32 {
        self.group.coordinate_count()
    }

    /// Start of coordinate `k`'s segment in the flat masking chain.
    pub(crate) fn chain_start(&self, k: u32) -> usize {
        self.types[..(k - 1) as usize]
            .iter()
            .map(SignatureType::block_count)
            .sum()
    }

    /// Chain length: one element plus one per block across all coordinates.
    pub(crate) fn chain_len(&self) -> usize {
        1 + self
            .types
            .iter()
            .map(SignatureType::block_count)
            .sum::<usize>()
    }
}

/// Public half: the random covers, the masked covers, and π.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PublicKey {
    params: SchemeParams,
    alpha: Vec<Cover>,
    gamma: Vec<Cover>,
    pi: Vec<u32>,
}

impl PublicKey {
    pub fn from_parts(
        params: SchemeParams,
        alpha: Vec<Cover>,
        gamma: Vec<Cover>,
        pi: Vec<u32>,
    ) -> Result<Self> {
        validate_cover_list(&params, &alpha, "alpha")?;
        validate_cover_list(&params, &gamma, "gamma")?;
        validate_pi(&pi, params.l())?;
        Ok(PublicKey {
            params,
            alpha,
            gamma,
            pi,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// Random cover for 1-based coordinate `k`.
    pub fn alpha(&self, k: u32) -> &Cover {
        &self.alpha[(k - 1) as usize]
    }

    /// Masked cover for 1-based coordinate `k`.
    pub fn gamma(&self, k: u32) -> &Cover {
        &self.gamma[(k - 1) as usize]
    }

    /// The public permutation as 1-based images: π(R)_i = R_(pi[i-1]).
    pub fn pi(&self) -> &[u32] {
        &self.pi
    }
}

/// Private half: the tame signatures, the masking chain, and π (kept here
/// too so each key file is self-contained).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrivateKey {
    params: SchemeParams,
    beta: Vec<LogSignature>,
    chain: Vec<GroupElement>,
    pi: Vec<u32>,
}

impl PrivateKey {
    pub fn from_parts(
        params: SchemeParams,
        beta: Vec<LogSignature>,
        chain: Vec<GroupElement>,
        pi: Vec<u32>,
    ) -> Result<Self> {
        if beta.len() != params.l() as usize {
            return Err(Error::InvalidArgument(format!(
                "need {} signatures, got {}",
                params.l(),
                beta.len()
            )));
        }
        for (i, sig) in beta.iter().enumerate() {
            let k = i as u32 + 1;
            if sig.coordinate() != k
                || sig.field() != params.group().field()
                || sig.signature_type() != &params.types()[i]
            {
                return Err(Error::InvalidArgument(format!(
                    "signature {k} does not match the scheme parameters"
                )));
            }
        }
        if chain.len() != params.chain_len() {
            return Err(Error::InvalidArgument(format!(
                "masking chain must have {} elements, got {}",
                params.chain_len(),
                chain.len()
            )));
        }
        for t in &chain {
            if t.params() != params.group() {
                return Err(Error::InvalidArgument(
                    "chain element from a different group".into(),
                ));
            }
            if t.coords().iter().any(|c| c.is_zero()) {
                return Err(Error::InvalidArgument(
                    "chain elements must have all coordinates nonzero".into(),
                ));
            }
        }
        validate_pi(&pi, params.l())?;
        Ok(PrivateKey {
            params,
            beta,
            chain,
            pi,
        })
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    /// Tame signature for 1-based coordinate `k`.
    pub fn beta(&self, k: u32) -> &LogSignature {
        &self.beta[(k - 1) as usize]
    }

    pub fn chain(&self) -> &[GroupElement] {
        &self.chain
    }

    pub fn pi(&self) -> &[u32] {
        &self.pi
    }

    /// t_i(k): chain element `i` of coordinate `k`'s segment (i = 0..=s(k)).
    pub fn chain_element(&self, k: u32, i: usize) -> &GroupElement {
        &self.chain[self.params.chain_start(k) + i]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KeyPair {
    pub public: PublicKey,
    pub private: PrivateKey,
}

/// The three ciphertext components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ciphertext {
    pub y1: GroupElement,
    pub y2: GroupElement,
    pub y3: GroupElement,
}

/// One decryption round's intermediate state, for auditing the readout.
#[derive(Clone, Debug)]
pub struct DecryptRound {
    /// D* = t_0(k) · y2 · T^-1 · y3^-1 for the round's residuals.
    pub d_star: GroupElement,
    /// Coordinate k of D*: equals β_k(R_k) for an untampered ciphertext.
    pub readout: crate::field::FieldElement,
    /// The recovered index R_k.
    pub index: u64,
}

fn validate_pi(pi: &[u32], l: u32) -> Result<()> {
    let mut seen = vec![false; l as usize];
    if pi.len() != l as usize {
        return Err(Error::InvalidArgument(format!(
            "permutation must have {l} entries, got {}",
            pi.len()
        )));
    }
    for &p in pi {
        if p == 0 || p > l || seen[(p - 1) as usize] {
            return Err(Error::InvalidArgument(format!(
                "not a permutation of 1..={l}: {pi:?}"
            )));
        }
        seen[(p - 1) as usize] = true;
    }
    Ok(())
}

fn validate_cover_list(params: &SchemeParams, covers: &[Cover], what: &str) -> Result<()> {
    if covers.len() != params.l() as usize {
        return Err(Error::InvalidArgument(format!(
            "need {} {what} covers, got {}",
            params.l(),
            covers.len()
        )));
    }
    for (i, c) in covers.iter().enumerate() {
        if c.params() != params.group() || c.signature_type() != &params.types()[i] {
            return Err(Error::InvalidArgument(format!(
                "{what} cover {} does not match the scheme parameters",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Applies the permutation: result_i = r[pi[i] - 1].
pub fn apply_pi(pi: &[u32], r: &[u64]) -> Vec<u64> {
    pi.iter().map(|&p| r[(p - 1) as usize]).collect()
}

/// Generates a key pair.
///
/// Draw order (fixed, so equal seeds give identical keys): the signatures
/// β_1..β_l, then the covers α_1..α_l, then the masking chain front to back,
/// then the shuffle for π. The masked covers are computed, not drawn.
pub fn keygen<R: Rng + ?Sized>(params: &SchemeParams, rng: &mut R) -> Result<KeyPair> {
    let group = params.group();
    let spec = group.field();
    let l = params.l();

    let beta: Vec<LogSignature> = (1..=l)
        .map(|k| LogSignature::generate(spec, &params.types()[(k - 1) as usize], k, rng))
        .collect::<Result<_>>()?;
    let alpha: Vec<Cover> = (1..=l)
        .map(|k| Cover::generate(group, &params.types()[(k - 1) as usize], rng))
        .collect::<Result<_>>()?;
    let chain: Vec<GroupElement> = (0..params.chain_len())
        .map(|_| group.random_all_nonzero(rng))
        .collect();
    let mut pi: Vec<u32> = (1..=l).collect();
    pi.shuffle(rng);

    let mut gamma = Vec::with_capacity(l as usize);
    for k in 1..=l {
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
                        let e = GroupElement::embedded(group, k, b)?;
                        Ok(left.mul(a).mul(&e).mul(right))
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

    Ok(KeyPair {
        public: PublicKey::from_parts(params.clone(), alpha, gamma.clone(), pi.clone())?,
        private: PrivateKey::from_parts(params.clone(), beta, chain, pi)?,
    })
}

/// Encrypts a group element.
///
/// Draws R_1..R_l (one uniform index in [0, q) per coordinate, in order) and
/// forms y1 = α_1(R'_1)···α_l(R'_l)·x with R' = π(R), y2 = γ_1(R_1)···γ_l(R_l),
/// y3 = α_1(R_1)···α_l(R_l). The indices are internal; nothing returns them.
pub fn encrypt<R: Rng + ?Sized>(
    pk: &PublicKey,
    x: &GroupElement,
    rng: &mut R,
) -> Result<Ciphertext> {
    if x.params() != pk.params().group() {
        return Err(Error::InvalidArgument(
            "message element from a different group".into(),
        ));
    }
    let q = pk.params().q();
    let r: Vec<u64> = (0..pk.params().l())
        .map(|_| rng.random_range(0..q))
        .collect();
    encrypt_with_indices(pk, x, &r)
}

/// The deterministic part of encryption, shared with tests that need to fix R.
pub(crate) fn encrypt_with_indices(
    pk: &PublicKey,
    x: &GroupElement,
    r: &[u64],
) -> Result<Ciphertext> {
    let params = pk.params();
    let group = params.group();
    let rp = apply_pi(pk.pi(), r);

    let mut y1 = group.identity();
    let mut y2 = group.identity();
    let mut y3 = group.identity();
    for k in 1..=params.l() {
        let ki = (k - 1) as usize;
        y1 = y1.mul(&pk.alpha(k).evaluate(rp[ki])?);
        y2 = y2.mul(&pk.gamma(k).evaluate(r[ki])?);
        y3 = y3.mul(&pk.alpha(k).evaluate(r[ki])?);
    }
    Ok(Ciphertext {
        y1: y1.mul(x),
        y2,
        y3,
    })
}

/// Decrypts, returning the recovered message.
pub fn decrypt(pk: &PublicKey, sk: &PrivateKey, ct: &Ciphertext) -> Result<GroupElement> {
    decrypt_traced(pk, sk, ct).map(|(x, _)| x)
}

/// Decrypts and additionally reports every round's masked readout, which
/// lets callers audit that round k really exposed β_k(R_k) at coordinate k.
pub fn decrypt_traced(
    pk: &PublicKey,
    sk: &PrivateKey,
    ct: &Ciphertext,
) -> Result<(GroupElement, Vec<DecryptRound>)> {
    let params = sk.params();
    if pk.params() != params {
        return Err(Error::InvalidArgument(
            "public and private keys built for different parameters".into(),
        ));
    }
    let group = params.group();
    for y in [&ct.y1, &ct.y2, &ct.y3] {
        if y.params() != group {
            return Err(Error::InvalidArgument(
                "ciphertext from a different group".into(),
            ));
        }
    }

    // Every round conjugates with the final chain element; only that choice
    // telescopes across the shared segment boundaries.
    let t_final_inv = sk.chain().last().expect("chain is never empty").inverse();
    let mut y2 = ct.y2.clone();
    let mut y3 = ct.y3.clone();
    let mut r = Vec::with_capacity(params.l() as usize);
    let mut rounds = Vec::with_capacity(params.l() as usize);

    for k in 1..=params.l() {
        let d = sk.chain_element(k, 0).mul(&y2).mul(&t_final_inv);
        let d_star = d.mul(&y3.inverse());
        for m in 1..k {
            if !d_star.coord(m).is_zero() {
                return Err(Error::Integrity(format!(
                    "round {k}: coordinate {m} should be masked out but is nonzero"
                )));
            }
        }
        let readout = d_star.coord(k);
        let index = sk.beta(k).factorize(readout)?;
        rounds.push(DecryptRound {
            d_star,
            readout,
            index,
        });
        y2 = pk.gamma(k).evaluate(index)?.inverse().mul(&y2);
        y3 = pk.alpha(k).evaluate(index)?.inverse().mul(&y3);
        r.push(index);
    }

    // An honest ciphertext peels down to nothing: y2 and y3 are exactly the
    // products of the recovered rows, so leftover mass means tampering (a
    // forgery confined to the last coordinate would otherwise decode
    // silently, since no later round re-checks it).
    if !y2.is_identity() || !y3.is_identity() {
        return Err(Error::Integrity(
            "ciphertext residual did not cancel after the final round".into(),
        ));
    }

    let rp = apply_pi(pk.pi(), &r);
    let mut masked = group.identity();
    for k in 1..=params.l() {
        masked = masked.mul(&pk.alpha(k).evaluate(rp[(k - 1) as usize])?);
    }
    Ok((masked.inverse().mul(&ct.y1), rounds))
}
