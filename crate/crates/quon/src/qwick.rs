//! Scalar q-ordering: the normal-form expansion when every level projector
//! acts as the identity, diagram weights computed two independent ways, and
//! the suite certifying that the diagram weight π matches the block-indexed
//! exponent c of the projector-carrying engine.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::combinatorics::{
    blocks_from_pattern, c_total, diagram_statistics, enumerate_feynman, FeynmanDiagram,
    SignPattern,
};
use crate::symbolic::{normal_order_wick, specialize_scalar, NormalForm, OperatorSymbol, Word};
use crate::{Error, Result, VerifyReport};

/// Term shape in the scalar algebra: as the projector algebra's keys but
/// with no level slot. Positions are 1-based into the operator word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarTermKey {
    pub pairings: Vec<(usize, usize)>,
    pub creators: Vec<usize>,
    pub annihilators: Vec<usize>,
    pub q_exponent: usize,
}

impl Ord for ScalarTermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.pairings.len(), &self.pairings, &self.creators, &self.annihilators)
            .cmp(&(
                other.pairings.len(),
                &other.pairings,
                &other.creators,
                &other.annihilators,
            ))
            .then_with(|| self.q_exponent.cmp(&other.q_exponent))
    }
}

impl PartialOrd for ScalarTermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical sum of scalar terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ScalarNormalForm {
    terms: BTreeMap<ScalarTermKey, i64>,
}

impl ScalarNormalForm {
    pub fn new() -> Self {
        ScalarNormalForm::default()
    }

    pub fn add_term(&mut self, key: ScalarTermKey, multiplicity: i64) {
        if multiplicity == 0 {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += multiplicity;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(multiplicity);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarTermKey, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reads a projector-algebra normal form whose levels have all been
    /// erased (see [`specialize_scalar`]); errors if any level survives.
    pub fn from_specialized(nf: &NormalForm) -> Result<Self> {
        let mut out = ScalarNormalForm::new();
        for (k, mult) in nf.terms() {
            if let Some(level) = k.projector_level {
                return Err(Error::invalid(format!(
                    "term still carries projector level {level}; specialize it first"
                )));
            }
            out.add_term(
                ScalarTermKey {
                    pairings: k.pairings.clone(),
                    creators: k.creators.clone(),
                    annihilators: k.annihilators.clone(),
                    q_exponent: k.q_exponent,
                },
                mult,
            );
        }
        Ok(out)
    }
}

/// Exponent of the fully normally ordered (pairing-free) term:
/// Σ over annihilator positions s of |(s, n] ∩ creator positions|.
pub fn leading_exponent(pattern: &SignPattern) -> usize {
    let creators = pattern.creator_positions();
    pattern
        .annihilator_positions()
        .iter()
        .map(|&s| creators.iter().filter(|&&c| c > s).count())
        .sum()
}

/// Scalar normal ordering of the word with the given sign pattern: one term
/// per diagram of every degree, each weighted q^π with π from
/// [`diagram_statistics`]. The labels only fix the arity — terms are keyed by
/// position.
pub fn qwick_normal_order(pattern: &SignPattern, labels: &[&str]) -> Result<ScalarNormalForm> {
    if labels.len() != pattern.len() {
        return Err(Error::invalid(format!(
            "pattern length {} but {} labels",
            pattern.len(),
            labels.len()
        )));
    }
    let annihilators = pattern.annihilator_positions().len();
    let creators = pattern.creator_positions().len();
    let mut nf = ScalarNormalForm::new();
    for k in 0..=annihilators.min(creators) {
        for gamma in enumerate_feynman(pattern, k) {
            let pi = diagram_statistics(&gamma).pi;
            nf.add_term(
                ScalarTermKey {
                    pairings: gamma.pairs().to_vec(),
                    creators: gamma.unpaired_creators(),
                    annihilators: gamma.unpaired_annihilators(),
                    q_exponent: pi,
                },
                1,
            );
        }
    }
    Ok(nf)
}

/// Second, block-relative computation of the diagram weight. Requires the
/// pattern to start with an annihilator and end with a creator so that the
/// block decomposition exists; agreement with [`diagram_statistics`] is the
/// cross-check for the direct definition.
pub fn blockwise_pi(pattern: &SignPattern, gamma: &FeynmanDiagram) -> Result<usize> {
    if gamma.ground() != pattern {
        return Err(Error::invalid(
            "diagram was built over a different sign pattern".to_string(),
        ));
    }
    let decomposition = blocks_from_pattern(pattern)?;
    let family = decomposition.family();
    let anchors = decomposition.anchors();
    let nblocks = anchors.len();

    let pairs = gamma.pairs();
    let ordinals: Vec<usize> = pairs
        .iter()
        .map(|&(l, _)| {
            anchors
                .binary_search(&l)
                .map(|i| i + 1)
                .map_err(|_| Error::invalid(format!("position {l} is not an anchor")))
        })
        .collect::<Result<_>>()?;
    let paired_creators: BTreeSet<usize> = pairs.iter().map(|&(_, r)| r).collect();
    let paired_anchors: BTreeSet<usize> = pairs.iter().map(|&(l, _)| l).collect();
    let annihilator_positions = pattern.annihilator_positions();

    let mut d1 = 0usize;
    let mut d2 = 0usize;
    for (h, (&(l, r), &j)) in pairs.iter().zip(&ordinals).enumerate() {
        let reach = family.cut(j, r)?;
        d1 += reach
            .iter()
            .filter(|p| pairs[..h].iter().any(|&(_, rp)| rp == **p))
            .count();
        d2 += reach.iter().filter(|p| !paired_creators.contains(p)).count();
        d2 += annihilator_positions
            .iter()
            .filter(|&&a| l < a && a < r && !paired_anchors.contains(&a))
            .count();
    }

    let mut d3 = 0usize;
    for s in 1..=nblocks {
        if ordinals.contains(&s) {
            continue;
        }
        d3 += family
            .union_from(s)?
            .iter()
            .filter(|p| !paired_creators.contains(p))
            .count();
    }
    Ok(d1 + d2 + d3)
}

/// Checks, for every sign pattern with leading annihilator and trailing
/// creator of length ≤ `max_n` (cap 10): the pairing-free exponent equals the
/// block tail-union sum, and every diagram's weight π equals the block
/// exponent c of the corresponding bracket pairing. `max_residual` reports
/// the counterexample count.
pub fn verify_pi_equals_c(max_n: usize) -> Result<VerifyReport> {
    const MAX_N: usize = 10;
    if max_n > MAX_N {
        return Err(Error::CapExceeded {
            what: "verify_pi_equals_c pattern length",
            requested: max_n,
            cap: MAX_N,
        });
    }
    let mut report = VerifyReport::new(
        "pi-equals-c",
        format!("all sign patterns (leading −, trailing +) of length ≤ {max_n}, every diagram degree"),
    );
    let mut mismatches = 0usize;
    for len in 2..=max_n {
        for mask in 0u32..(1 << (len - 2)) {
            let mut signs = vec![0i8; len];
            signs[0] = -1;
            signs[len - 1] = 1;
            for i in 1..len - 1 {
                signs[i] = if mask >> (i - 1) & 1 == 1 { 1 } else { -1 };
            }
            let pattern = SignPattern::new(signs)?;
            let decomposition = blocks_from_pattern(&pattern)?;
            let family = decomposition.family();
            let anchors = decomposition.anchors();
            let nblocks = anchors.len();

            let tail_union_sum: usize = (1..=nblocks)
                .map(|j| family.union_from(j).map(|u| u.len()))
                .sum::<Result<usize>>()?;
            if leading_exponent(&pattern) != tail_union_sum {
                mismatches += 1;
            }

            let creators = pattern.creator_positions().len();
            for k in 0..=nblocks.min(creators) {
                for gamma in enumerate_feynman(&pattern, k) {
                    let pi = diagram_statistics(&gamma).pi;
                    let bracket: Vec<(usize, usize)> = gamma
                        .pairs()
                        .iter()
                        .map(|&(l, r)| {
                            anchors
                                .binary_search(&l)
                                .map(|i| (i + 1, r))
                                .map_err(|_| {
                                    Error::invalid(format!("position {l} is not an anchor"))
                                })
                        })
                        .collect::<Result<_>>()?;
                    if c_total(family, &bracket)? != pi {
                        mismatches += 1;
                    }
                }
            }
        }
    }
    report.record(mismatches as f64, 0.0);
    Ok(report)
}

/// Erasing the levels from the projector-algebra normal form of a
/// projector-free word must reproduce the scalar expansion exactly.
pub fn crosscheck_specialization(w: &Word) -> Result<bool> {
    if !w.is_projector_free() {
        return Err(Error::invalid(
            "specialization cross-check takes projector-free words".to_string(),
        ));
    }
    let via_projector_algebra =
        ScalarNormalForm::from_specialized(&specialize_scalar(&normal_order_wick(w)?))?;
    let direct = qwick_normal_order(&w.sign_pattern(), &w.core_labels())?;
    Ok(via_projector_algebra == direct)
}

/// Specialization sweep: runs [`crosscheck_specialization`] on every
/// projector-free word of length ≤ `max_len` with distinct labels, for each
/// m in `ms`. `max_residual` reports the mismatch count.
pub fn verify_specialization(max_len: usize, ms: &[i64]) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "specialization",
        format!("all projector-free words of length ≤ {max_len}, m ∈ {ms:?}"),
    );
    let mut mismatches = 0usize;
    for &m in ms {
        for len in 1..=max_len {
            for mask in 0u32..(1 << len) {
                let factors: Vec<OperatorSymbol> = (0..len)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            OperatorSymbol::creator(format!("g{}", i + 1))
                        } else {
                            OperatorSymbol::annihilator(format!("f{}", i + 1))
                        }
                    })
                    .collect();
                if !crosscheck_specialization(&Word::new(m, factors)?)? {
                    mismatches += 1;
                }
            }
        }
    }
    report.record(mismatches as f64, 0.0);
    Ok(report)
}
