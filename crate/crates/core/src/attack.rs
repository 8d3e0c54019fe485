//! Desk-scale brute-force oracles.
//!
//! These exist to measure attack cost empirically, not to break real keys:
//! hard guards refuse anything beyond toy parameter sizes.
//!
//! * [`sequential_legacy`] — the per-stage scan that defeats the legacy
//!   scheme. Coordinate k of the (peeled) first ciphertext component equals
//!   coordinate k of α_k(R_k), because legacy cover entries vanish on every
//!   other lower-half coordinate; scanning candidates against that coordinate
//!   and confirming against the second component recovers one stage at a
//!   time, at an expected (l/2)·q/2 evaluations total.
//! * [`exhaustive`] — full enumeration of all q^l index tuples against one
//!   component of a three-part ciphertext; the only generic attack left
//!   against the main scheme.
//! * [`shortcut_probe`] — applies the legacy-style first-stage coordinate
//!   scan to the main scheme and reports how many candidates survive; more
//!   than one means the scan cannot isolate the first index.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::group::{GroupElement, GroupParams};
use crate::legacy::{LegacyCiphertext, LegacyPublicKey};
use crate::mst3::{apply_pi, Ciphertext, PublicKey};
use std::collections::HashSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Exhaustive enumeration refuses index spaces larger than this.
pub const EXHAUSTIVE_GUARD: u64 = 1 << 20;

/// The sequential scan refuses q·l larger than this.
pub const SEQUENTIAL_GUARD: u64 = 1 << 16;

/// Cap on stored confirmation-table entries; beyond it the sequential attack
/// falls back to depth-first search with a terminal check only.
const CONFIRM_TABLE_CAP: u64 = 1 << 20;

/// At most this many matching tuples are stored verbatim in a report.
pub const MATCH_CAP: usize = 1 << 12;

/// Result of an attack run.
#[derive(Clone, Debug)]
pub struct AttackReport {
    /// First consistent index tuple, if any candidate matched.
    pub recovered: Option<Vec<u64>>,
    /// Candidate evaluations performed (one cover evaluation + comparison
    /// each); preprocessing such as confirmation tables is not counted.
    pub trials: u64,
    /// Number of consistent candidates encountered.
    pub matches: u64,
    /// The consistent tuples, up to [`MATCH_CAP`] of them, in index order.
    pub matched: Vec<Vec<u64>>,
    /// For the sequential attack: the message recovered by peeling y1.
    pub recovered_message: Option<GroupElement>,
}

fn element_key(g: &GroupElement) -> Vec<u64> {
    g.coords().iter().map(FieldElement::bits).collect()
}

fn digits_of(mut m: u64, q: u64, l: usize) -> Vec<u64> {
    let mut v = Vec::with_capacity(l);
    for _ in 0..l {
        v.push(m % q);
        m /= q;
    }
    v
}

// ---------------------------------------------------------------------------
// Sequential attack on the legacy scheme
// ---------------------------------------------------------------------------

struct SequentialScan<'a> {
    pk: &'a LegacyPublicKey,
    y2: &'a GroupElement,
    q: u64,
    stages: usize,
    /// Memoized coordinate-k values of α_k(c); a fresh entry is one trial.
    memo: Vec<Vec<Option<FieldElement>>>,
    trials: u64,
    /// confirm[i] = keys of all products γ_(i+1)···γ_(stages) over their
    /// index ranges (1-based stage numbers), or None beyond the size cap.
    confirm: Option<Vec<HashSet<Vec<u64>>>>,
    recovered_message: Option<GroupElement>,
}

impl SequentialScan<'_> {
    fn stage_value(&mut self, stage: usize, c: u64) -> Result<FieldElement> {
        if let Some(v) = self.memo[stage][c as usize] {
            return Ok(v);
        }
        let k = stage as u32 + 1;
        let v = self.pk.alpha(k).evaluate(c)?.coord(k);
        self.memo[stage][c as usize] = Some(v);
        self.trials += 1;
        Ok(v)
    }

    /// Depth-first over stages; `y1_cur` is the first component with stages
    /// < `stage` peeled, `q_prod` the γ-product of the chosen prefix.
    fn dfs(
        &mut self,
        stage: usize,
        y1_cur: &GroupElement,
        q_prod: &GroupElement,
        chosen: &mut Vec<u64>,
    ) -> Result<bool> {
        if stage == self.stages {
            if q_prod == self.y2 {
                self.recovered_message = Some(y1_cur.clone());
                return Ok(true);
            }
            return Ok(false);
        }
        let k = stage as u32 + 1;
        let target = y1_cur.coord(k);
        for c in 0..self.q {
            if self.stage_value(stage, c)? != target {
                continue;
            }
            let q_next = q_prod.mul(&self.pk.gamma(k).evaluate(c)?);
            if let Some(tables) = &self.confirm {
                let residual = q_next.inverse().mul(self.y2);
                if !tables[stage + 1].contains(&element_key(&residual)) {
                    continue;
                }
            }
            let y1_next = self.pk.alpha(k).evaluate(c)?.inverse().mul(y1_cur);
            chosen.push(c);
            if self.dfs(stage + 1, &y1_next, &q_next, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Builds confirmation tables: for each prefix length, every achievable
/// suffix product of the public γ covers. Returns None above the size cap.
fn build_confirm_tables(
    pk: &LegacyPublicKey,
    group: GroupParams,
    q: u64,
    stages: usize,
) -> Result<Option<Vec<HashSet<Vec<u64>>>>> {
    let mut projected = 1u64;
    let mut total = 1u64;
    for _ in 1..stages {
        projected = projected.saturating_mul(q);
        total = total.saturating_add(projected);
        if total > CONFIRM_TABLE_CAP {
            return Ok(None);
        }
    }

    let mut sets: Vec<HashSet<Vec<u64>>> = vec![HashSet::new(); stages + 1];
    let mut level = vec![group.identity()];
    sets[stages] = level.iter().map(element_key).collect();
    for i in (1..stages).rev() {
        let k = i as u32 + 1;
        let mut next = Vec::with_capacity(level.len() * q as usize);
        for c in 0..q {
            let g = pk.gamma(k).evaluate(c)?;
            for t in &level {
                next.push(g.mul(t));
            }
        }
        sets[i] = next.iter().map(element_key).collect();
        level = next;
    }
    Ok(Some(sets))
}

/// Recovers the index tuple and message from a legacy ciphertext by the
/// per-stage coordinate scan.
///
/// Stage k scans candidates in ascending order, comparing coordinate k of
/// α_k(candidate) with coordinate k of the peeled first component; matches
/// are confirmed against the second component (so a coordinate collision is
/// rejected instead of derailing the scan) and then peeled. Trials count
/// distinct candidate evaluations; confirmation-table preprocessing is
/// excluded. Fails with an integrity error if no tuple is consistent.
pub fn sequential_legacy(pk: &LegacyPublicKey, ct: &LegacyCiphertext) -> Result<AttackReport> {
    let params = pk.params();
    let group = params.group();
    let q = params.q();
    let l = group.coordinate_count() as u64;
    if q.saturating_mul(l) > SEQUENTIAL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "sequential scan size q*l = {}*{l} exceeds {SEQUENTIAL_GUARD}",
            q
        )));
    }
    if ct.y1.params() != group || ct.y2.params() != group {
        return Err(Error::InvalidArgument(
            "ciphertext from a different group".into(),
        ));
    }
    let stages = params.stages() as usize;

    let confirm = build_confirm_tables(pk, group, q, stages)?;
    let mut scan = SequentialScan {
        pk,
        y2: &ct.y2,
        q,
        stages,
        memo: vec![vec![None; q as usize]; stages],
        trials: 0,
        confirm,
        recovered_message: None,
    };
    let mut chosen = Vec::with_capacity(stages);
    let found = scan.dfs(0, &ct.y1, &group.identity(), &mut chosen)?;
    if !found {
        return Err(Error::Integrity(
            "no index tuple is consistent with the ciphertext".into(),
        ));
    }
    Ok(AttackReport {
        recovered: Some(chosen.clone()),
        trials: scan.trials,
        matches: 1,
        matched: vec![chosen],
        recovered_message: scan.recovered_message,
    })
}

// ---------------------------------------------------------------------------
// Exhaustive attack on the main scheme
// ---------------------------------------------------------------------------

/// Which ciphertext component an exhaustive run compares against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TargetComponent {
    /// α'(π(R))·x — requires the plaintext (known-text attack).
    Y1,
    /// γ'(R).
    Y2,
    /// α'(R).
    Y3,
}

struct ExhaustiveInstance {
    /// tables[k][c] = evaluation of cover k+1 at index c.
    tables: Vec<Vec<GroupElement>>,
    /// Permutation to apply to candidate digits (the y1 component only).
    pi: Option<Vec<u32>>,
    target: GroupElement,
    q: u64,
    l: usize,
    total: u64,
}

impl ExhaustiveInstance {
    fn candidate_matches(&self, m: u64) -> bool {
        let digits = digits_of(m, self.q, self.l);
        let view: Vec<u64> = match &self.pi {
            Some(p) => apply_pi(p, &digits),
            None => digits,
        };
        let mut prod = self.tables[0][view[0] as usize].clone();
        for (table, &d) in self.tables.iter().zip(&view).skip(1) {
            prod = prod.mul(&table[d as usize]);
        }
        prod == self.target
    }
}

fn prepare_exhaustive(
    pk: &PublicKey,
    ct: &Ciphertext,
    component: TargetComponent,
    known_x: Option<&GroupElement>,
) -> Result<ExhaustiveInstance> {
    let params = pk.params();
    let group = params.group();
    let q = params.q();
    let l = params.l() as usize;

    let mut total = 1u64;
    for _ in 0..l {
        total = total.saturating_mul(q);
        if total > EXHAUSTIVE_GUARD {
            return Err(Error::GuardExceeded(format!(
                "index space q^l = {q}^{l} exceeds {EXHAUSTIVE_GUARD}"
            )));
        }
    }
    for y in [&ct.y1, &ct.y2, &ct.y3] {
        if y.params() != group {
            return Err(Error::InvalidArgument(
                "ciphertext from a different group".into(),
            ));
        }
    }

    let evaluate_all = |use_gamma: bool| -> Result<Vec<Vec<GroupElement>>> {
        (1..=l as u32)
            .map(|k| {
                let cover = if use_gamma { pk.gamma(k) } else { pk.alpha(k) };
                (0..q).map(|c| cover.evaluate(c)).collect()
            })
            .collect()
    };

    let (tables, pi, target) = match component {
        TargetComponent::Y1 => {
            let x = known_x.ok_or_else(|| {
                Error::InvalidArgument(
                    "the y1 component can only be attacked with a known plaintext".into(),
                )
            })?;
            if x.params() != group {
                return Err(Error::InvalidArgument(
                    "known plaintext from a different group".into(),
                ));
            }
            (
                evaluate_all(false)?,
                Some(pk.pi().to_vec()),
                ct.y1.mul(&x.inverse()),
            )
        }
        TargetComponent::Y2 => (evaluate_all(true)?, None, ct.y2.clone()),
        TargetComponent::Y3 => (evaluate_all(false)?, None, ct.y3.clone()),
    };

    Ok(ExhaustiveInstance {
        tables,
        pi,
        target,
        q,
        l,
        total,
    })
}

fn exhaustive_report(inst: &ExhaustiveInstance, matched_encoded: Vec<u64>) -> AttackReport {
    let matches = matched_encoded.len() as u64;
    let matched: Vec<Vec<u64>> = matched_encoded
        .iter()
        .take(MATCH_CAP)
        .map(|&m| digits_of(m, inst.q, inst.l))
        .collect();
    AttackReport {
        recovered: matched.first().cloned(),
        trials: inst.total,
        matches,
        matched,
        recovered_message: None,
    }
}

/// Enumerates every index tuple in [0, q)^l against one ciphertext
/// component. Always performs the full q^l scan (that is the measured cost);
/// every matching tuple is reported, collisions included. Refuses index
/// spaces above [`EXHAUSTIVE_GUARD`]. Runs on all cores when the `parallel`
/// feature (default) is enabled.
#[cfg(feature = "parallel")]
pub fn exhaustive(
    pk: &PublicKey,
    ct: &Ciphertext,
    component: TargetComponent,
    known_x: Option<&GroupElement>,
) -> Result<AttackReport> {
    let inst = prepare_exhaustive(pk, ct, component, known_x)?;
    let matched: Vec<u64> = (0..inst.total)
        .into_par_iter()
        .filter(|&m| inst.candidate_matches(m))
        .collect();
    Ok(exhaustive_report(&inst, matched))
}

/// Enumerates every index tuple in [0, q)^l against one ciphertext
/// component; single-threaded build (the `parallel` feature is disabled).
#[cfg(not(feature = "parallel"))]
pub fn exhaustive(
    pk: &PublicKey,
    ct: &Ciphertext,
    component: TargetComponent,
    known_x: Option<&GroupElement>,
) -> Result<AttackReport> {
    exhaustive_sequential(pk, ct, component, known_x)
}

/// Single-threaded [`exhaustive`]; the benchmark baseline, and the only code
/// path when the `parallel` feature is disabled.
pub fn exhaustive_sequential(
    pk: &PublicKey,
    ct: &Ciphertext,
    component: TargetComponent,
    known_x: Option<&GroupElement>,
) -> Result<AttackReport> {
    let inst = prepare_exhaustive(pk, ct, component, known_x)?;
    let matched: Vec<u64> = (0..inst.total)
        .filter(|&m| inst.candidate_matches(m))
        .collect();
    Ok(exhaustive_report(&inst, matched))
}

// ---------------------------------------------------------------------------
// Legacy-style shortcut applied to the main scheme
// ---------------------------------------------------------------------------

/// Applies the legacy first-stage scan to a three-component ciphertext with
/// known plaintext and reports every surviving candidate.
///
/// Coordinate 1 of any product is the plain XOR of the factors' coordinate
/// 1, so the attacker knows τ = coord_1(y1) + coord_1(x) = Σ_k coord_1 of
/// the selected α rows. A first-index candidate c survives if the remaining
/// covers can account for τ + coord_1(α_1(c)); `matches` is the survivor
/// count. More than one survivor means the scan learned nothing decisive —
/// in the legacy scheme the other covers contribute nothing at coordinate 1,
/// which is exactly why this scan isolates its first index there.
pub fn shortcut_probe(
    pk: &PublicKey,
    ct: &Ciphertext,
    x: &GroupElement,
) -> Result<AttackReport> {
    let params = pk.params();
    let group = params.group();
    let q = params.q();
    let l = params.l();
    if q.saturating_mul(l as u64) > SEQUENTIAL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "scan size q*l = {q}*{l} exceeds {SEQUENTIAL_GUARD}"
        )));
    }
    if ct.y1.params() != group || x.params() != group {
        return Err(Error::InvalidArgument(
            "ciphertext or plaintext from a different group".into(),
        ));
    }

    let tau = ct.y1.coord(1) + x.coord(1);
    let mut trials = 0u64;

    // Everything the covers other than the first can contribute at
    // coordinate 1: iterated XOR-sumset of their value sets.
    let mut reachable: HashSet<u64> = HashSet::new();
    reachable.insert(0);
    for k in 2..=l {
        let mut values = HashSet::new();
        for c in 0..q {
            values.insert(pk.alpha(k).evaluate(c)?.coord(1).bits());
            trials += 1;
        }
        reachable = reachable
            .iter()
            .flat_map(|&a| values.iter().map(move |&b| a ^ b))
            .collect();
    }

    let mut matched = Vec::new();
    for c in 0..q {
        let v = pk.alpha(1).evaluate(c)?.coord(1);
        trials += 1;
        if reachable.contains(&(tau + v).bits()) {
            matched.push(vec![c]);
        }
    }

    Ok(AttackReport {
        recovered: matched.first().cloned(),
        trials,
        matches: matched.len() as u64,
        matched,
        recovered_message: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::group::GroupParams;
    use crate::legacy;
    use crate::logsig::SignatureType;
    use crate::mst3;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn legacy_params(n: u32, l: u32, radices: &[u64]) -> legacy::LegacyParams {
        let spec = FieldSpec::with_default_modulus(n).unwrap();
        let group = GroupParams::new(spec, l).unwrap();
        let ty = SignatureType::from_radices(radices).unwrap();
        legacy::LegacyParams::new(group, vec![ty; (l / 2) as usize]).unwrap()
    }

    fn scheme_params(n: u32, l: u32, radices: &[u64]) -> mst3::SchemeParams {
        let spec = FieldSpec::with_default_modulus(n).unwrap();
        let group = GroupParams::new(spec, l).unwrap();
        let ty = SignatureType::from_radices(radices).unwrap();
        mst3::SchemeParams::new(group, vec![ty; l as usize]).unwrap()
    }

    #[test]
    fn sequential_recovers_message_and_indices() {
        let params = legacy_params(4, 4, &[4, 4]);
        let mut rng = ChaCha12Rng::seed_from_u64(2024);
        let keys = legacy::keygen(&params, &mut rng).unwrap();
        let q = params.q();
        for _ in 0..10 {
            let r: Vec<u64> = (0..2).map(|_| rng.random_range(0..q)).collect();
            let x = params.random_message(&mut rng);
            let ct = legacy::encrypt_with_indices(&keys.public, &x, &r).unwrap();
            let report = sequential_legacy(&keys.public, &ct).unwrap();
            assert_eq!(report.recovered.as_deref(), Some(r.as_slice()));
            assert_eq!(report.recovered_message.as_ref(), Some(&x));
            assert!(report.trials <= 32, "trials = {}", report.trials);
            assert!(report.trials >= 2);
            assert_eq!(report.matches, 1);
        }
    }

    #[test]
    fn sequential_trials_track_candidate_positions() {
        // With ascending scans and collision confirmation, the trial count is
        // exactly (R_1 + 1) + (R_2 + 1).
        let params = legacy_params(4, 4, &[4, 4]);
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        let keys = legacy::keygen(&params, &mut rng).unwrap();
        for r in [[0u64, 0], [15, 15], [3, 9]] {
            let x = params.random_message(&mut rng);
            let ct = legacy::encrypt_with_indices(&keys.public, &x, &r).unwrap();
            let report = sequential_legacy(&keys.public, &ct).unwrap();
            assert_eq!(report.trials, r[0] + r[1] + 2);
        }
    }

    #[test]
    fn sequential_rejects_oversized_parameters() {
        let params = legacy_params(16, 6, &[16, 16, 16, 16]);
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        let keys = legacy::keygen(&params, &mut rng).unwrap();
        let x = params.random_message(&mut rng);
        let ct = legacy::encrypt(&keys.public, &x, &mut rng).unwrap();
        assert!(matches!(
            sequential_legacy(&keys.public, &ct),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn sequential_errors_on_inconsistent_ciphertext() {
        let params = legacy_params(4, 4, &[4, 4]);
        let mut rng = ChaCha12Rng::seed_from_u64(40);
        let keys = legacy::keygen(&params, &mut rng).unwrap();
        let x = params.random_message(&mut rng);
        let ct = legacy::encrypt(&keys.public, &x, &mut rng).unwrap();
        // A y2 from a fresh unrelated key almost surely reproduces under no
        // index tuple of this key.
        let other = legacy::keygen(&params, &mut ChaCha12Rng::seed_from_u64(41)).unwrap();
        let foreign = legacy::encrypt(&other.public, &x, &mut rng).unwrap();
        let franken = LegacyCiphertext {
            y1: ct.y1.clone(),
            y2: foreign.y2,
        };
        assert!(matches!(
            sequential_legacy(&keys.public, &franken),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn exhaustive_full_scan_contains_true_indices() {
        let params = scheme_params(2, 2, &[4]);
        let mut rng = ChaCha12Rng::seed_from_u64(600);
        let keys = mst3::keygen(&params, &mut rng).unwrap();
        let q = params.q();
        let r: Vec<u64> = (0..2).map(|_| rng.random_range(0..q)).collect();
        let x = params.group().random(&mut rng);
        let ct = mst3::encrypt_with_indices(&keys.public, &x, &r).unwrap();

        for component in [TargetComponent::Y2, TargetComponent::Y3] {
            let report = exhaustive(&keys.public, &ct, component, None).unwrap();
            assert_eq!(report.trials, 16);
            assert!(report.matches >= 1);
            assert!(report.matched.contains(&r), "{component:?}: {report:?}");
        }

        let with_x = exhaustive(&keys.public, &ct, TargetComponent::Y1, Some(&x)).unwrap();
        assert_eq!(with_x.trials, 16);
        assert!(with_x.matched.contains(&r));
    }

    #[test]
    fn exhaustive_y1_needs_plaintext() {
        let params = scheme_params(2, 2, &[4]);
        let mut rng = ChaCha12Rng::seed_from_u64(601);
        let keys = mst3::keygen(&params, &mut rng).unwrap();
        let x = params.group().random(&mut rng);
        let ct = mst3::encrypt(&keys.public, &x, &mut rng).unwrap();
        assert!(matches!(
            exhaustive(&keys.public, &ct, TargetComponent::Y1, None),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn exhaustive_guard_rejects_large_spaces() {
        let params = scheme_params(10, 4, &[16, 16, 4]);
        let mut rng = ChaCha12Rng::seed_from_u64(602);
        let keys = mst3::keygen(&params, &mut rng).unwrap();
        let x = params.group().random(&mut rng);
        let ct = mst3::encrypt(&keys.public, &x, &mut rng).unwrap();
        assert!(matches!(
            exhaustive(&keys.public, &ct, TargetComponent::Y2, None),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn exhaustive_parallel_and_sequential_agree() {
        let params = scheme_params(3, 2, &[8]);
        let mut rng = ChaCha12Rng::seed_from_u64(603);
        let keys = mst3::keygen(&params, &mut rng).unwrap();
        let x = params.group().random(&mut rng);
        let ct = mst3::encrypt(&keys.public, &x, &mut rng).unwrap();
        for component in [TargetComponent::Y2, TargetComponent::Y3] {
            let a = exhaustive(&keys.public, &ct, component, None).unwrap();
            let b = exhaustive_sequential(&keys.public, &ct, component, None).unwrap();
            assert_eq!(a.trials, b.trials);
            assert_eq!(a.matches, b.matches);
            assert_eq!(a.matched, b.matched);
        }
    }

    #[test]
    fn shortcut_probe_is_ambiguous_on_main_scheme() {
        let params = scheme_params(4, 4, &[4, 4]);
        let mut rng = ChaCha12Rng::seed_from_u64(604);
        for _ in 0..10 {
            let keys = mst3::keygen(&params, &mut rng).unwrap();
            let x = params.group().random(&mut rng);
            let ct = mst3::encrypt(&keys.public, &x, &mut rng).unwrap();
            let report = shortcut_probe(&keys.public, &ct, &x).unwrap();
            assert!(report.matches > 1, "got {} survivors", report.matches);
        }
    }

    #[test]
    fn shortcut_probe_never_rules_out_the_true_index() {
        let params = scheme_params(3, 4, &[8]);
        let mut rng = ChaCha12Rng::seed_from_u64(605);
        let keys = mst3::keygen(&params, &mut rng).unwrap();
        let q = params.q();
        for _ in 0..20 {
            let r: Vec<u64> = (0..4).map(|_| rng.random_range(0..q)).collect();
            let x = params.group().random(&mut rng);
            let ct = mst3::encrypt_with_indices(&keys.public, &x, &r).unwrap();
            let report = shortcut_probe(&keys.public, &ct, &x).unwrap();
            // The scan tests candidates for the *first cover slot*, which by
            // the public permutation holds R'_1 = R_(pi_1).
            let rp = apply_pi(keys.public.pi(), &r);
            assert!(report.matched.contains(&vec![rp[0]]));
        }
    }
}
