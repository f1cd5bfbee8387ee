//! Words in creators, annihilators, and level projectors, and two
//! independent normal-ordering engines over them.
//!
//! The closed-form engine expands a word through its block decomposition,
//! bracket pairings, and the c statistic; the rewrite engine applies the
//! defining relations stepwise. They share no expansion code — their
//! agreement is one of the library's core checks.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{c_value, enumerate_bracket, IndexFamily, SignPattern};
use crate::{Error, Result, VerifyReport};

/// Default cap on word length for the ordering engines.
pub const WORD_CAP_DEFAULT: usize = 12;

/// One factor of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OperatorSymbol {
    /// A⁺(label)
    Creator(String),
    /// A(label)
    Annihilator(String),
    /// p\[level\]; any integer level is allowed.
    Projector(i64),
}

impl OperatorSymbol {
    pub fn creator(label: impl Into<String>) -> Self {
        OperatorSymbol::Creator(label.into())
    }

    pub fn annihilator(label: impl Into<String>) -> Self {
        OperatorSymbol::Annihilator(label.into())
    }

    pub fn projector(level: i64) -> Self {
        OperatorSymbol::Projector(level)
    }

    /// +1 for creators, −1 for annihilators, 0 for projectors.
    pub fn signature(&self) -> i64 {
        match self {
            OperatorSymbol::Creator(_) => 1,
            OperatorSymbol::Annihilator(_) => -1,
            OperatorSymbol::Projector(_) => 0,
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            OperatorSymbol::Creator(l) | OperatorSymbol::Annihilator(l) => Some(l),
            OperatorSymbol::Projector(_) => None,
        }
    }

    pub fn is_projector(&self) -> bool {
        matches!(self, OperatorSymbol::Projector(_))
    }
}

/// A product of operator symbols together with the algebra parameter m ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    m: i64,
    factors: Vec<OperatorSymbol>,
}

impl Word {
    pub fn new(m: i64, factors: Vec<OperatorSymbol>) -> Result<Self> {
        if m < 1 {
            return Err(Error::invalid(format!("algebra parameter m={m} must be ≥ 1")));
        }
        Ok(Word { m, factors })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn factors(&self) -> &[OperatorSymbol] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sign pattern of the non-projector factors.
    pub fn sign_pattern(&self) -> SignPattern {
        SignPattern::new(
            self.factors
                .iter()
                .filter(|f| !f.is_projector())
                .map(|f| f.signature() as i8)
                .collect(),
        )
        .expect("signatures are ±1")
    }

    /// Labels of the non-projector factors, in order.
    pub fn core_labels(&self) -> Vec<&str> {
        self.factors.iter().filter_map(|f| f.label()).collect()
    }

    /// True when no factor is a projector token.
    pub fn is_projector_free(&self) -> bool {
        !self.factors.iter().any(|f| f.is_projector())
    }
}

/// Commutes every projector to the front, stepwise: moving left over a
/// factor of signature ε changes the level by +ε; colliding projectors merge
/// to the minimum level. Returns the merged front level (`None` when the
/// word has no projectors) and the projector-free core.
pub fn reduce_projector_prefix(w: &Word) -> (Option<i64>, Word) {
    let mut level: Option<i64> = None;
    let mut sigma = 0i64;
    let mut core = Vec::with_capacity(w.factors.len());
    for f in &w.factors {
        match f {
            OperatorSymbol::Projector(k) => {
                let hoisted = k + sigma;
                level = Some(level.map_or(hoisted, |cur: i64| cur.min(hoisted)));
            }
            op => {
                sigma += op.signature();
                core.push(op.clone());
            }
        }
    }
    (
        level,
        Word {
            m: w.m,
            factors: core,
        },
    )
}

/// Scalar coefficient of one normal-form term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coefficient {
    pub q_exponent: usize,
    /// `None` means no projector factor (the identity).
    pub projector_level: Option<i64>,
    pub multiplicity: i64,
}

/// Key identifying a term shape: formal pairings ⟨·,·⟩ by core-word
/// positions, residual creator and annihilator positions, and the
/// coefficient's exponent/level. Positions are 1-based indices into the
/// projector-stripped core word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermKey {
    pub pairings: Vec<(usize, usize)>,
    pub creators: Vec<usize>,
    pub annihilators: Vec<usize>,
    pub q_exponent: usize,
    pub projector_level: Option<i64>,
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.pairings.len(), &self.pairings, &self.creators, &self.annihilators)
            .cmp(&(
                other.pairings.len(),
                &other.pairings,
                &other.creators,
                &other.annihilators,
            ))
            .then_with(|| self.q_exponent.cmp(&other.q_exponent))
            .then_with(|| self.projector_level.cmp(&other.projector_level))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One realized normal-form term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalTerm {
    pub coefficient: Coefficient,
    pub pairings: Vec<(usize, usize)>,
    pub creators: Vec<usize>,
    pub annihilators: Vec<usize>,
}

/// A canonical sum of normal-form terms for a fixed m. Equality is
/// structural; the term order (pairing count first, then the lexicographic
/// encodings) is part of the canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    m: i64,
    terms: BTreeMap<TermKey, i64>,
}

impl NormalForm {
    pub fn new(m: i64) -> Self {
        NormalForm {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// Adds `multiplicity` copies of the term, merging and dropping zeros.
    pub fn add_term(&mut self, key: TermKey, multiplicity: i64) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn normal_terms(&self) -> Vec<NormalTerm> {
        self.terms()
            .map(|(k, mult)| NormalTerm {
                coefficient: Coefficient {
                    q_exponent: k.q_exponent,
                    projector_level: k.projector_level,
                    multiplicity: mult,
                },
                pairings: k.pairings.clone(),
                creators: k.creators.clone(),
                annihilators: k.annihilators.clone(),
            })
            .collect()
    }

    /// Serializes to the stable JSON schema
    /// `{"m": int, "terms": [{"coeff", "q_exp", "proj_level", "pairings",
    /// "creators", "annihilators"}]}` in canonical term order.
    pub fn to_json(&self) -> String {
        let dto = NormalFormDto {
            m: self.m,
            terms: self
                .terms()
                .map(|(k, mult)| TermDto {
                    coeff: mult,
                    q_exp: k.q_exponent,
                    proj_level: k.projector_level,
                    pairings: k.pairings.clone(),
                    creators: k.creators.clone(),
                    annihilators: k.annihilators.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("normal form serializes")
    }

    /// Parses the [`NormalForm::to_json`] schema; term lists are
    /// re-canonicalized on entry.
    pub fn from_json(text: &str) -> Result<NormalForm> {
        let dto: NormalFormDto = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("normal form JSON: {e}")))?;
        let mut nf = NormalForm::new(dto.m);
        for t in dto.terms {
            let mut pairings = t.pairings;
            pairings.sort_unstable();
            let mut creators = t.creators;
            creators.sort_unstable();
            let mut annihilators = t.annihilators;
            annihilators.sort_unstable();
            nf.add_term(
                TermKey {
                    pairings,
                    creators,
                    annihilators,
                    q_exponent: t.q_exp,
                    projector_level: t.proj_level,
                },
                t.coeff,
            );
        }
        Ok(nf)
    }
}

#[derive(Serialize, Deserialize)]
struct NormalFormDto {
    m: i64,
    terms: Vec<TermDto>,
}

#[derive(Serialize, Deserialize)]
struct TermDto {
    coeff: i64,
    q_exp: usize,
    proj_level: Option<i64>,
    pairings: Vec<(usize, usize)>,
    creators: Vec<usize>,
    annihilators: Vec<usize>,
}

/// Structural equality of two normal forms; errors when the algebra
/// parameters differ (the forms then live in different algebras).
pub fn normal_form_equal(a: &NormalForm, b: &NormalForm) -> Result<bool> {
    if a.m != b.m {
        return Err(Error::invalid(format!(
            "cannot compare normal forms with m={} and m={}",
            a.m, b.m
        )));
    }
    Ok(a.terms == b.terms)
}

/// Replaces every projector level by Absent and re-merges multiplicities.
pub fn specialize_scalar(nf: &NormalForm) -> NormalForm {
    let mut out = NormalForm::new(nf.m);
    for (k, mult) in nf.terms() {
        out.add_term(
            TermKey {
                projector_level: None,
                ..k.clone()
            },
            mult,
        );
    }
    out
}

/// Commutes one annihilator through a run of creators:
/// `(q p_m)^{|I|} A⁺(I) A(f) + Σ_{i∈I} (q p_m)^{|I(i)|} ⟨f, g_i⟩ A⁺(I∖{i})`.
/// Positions refer to the word `A(f) A⁺(g_1) … A⁺(g_n)`; the labels only fix
/// its arity.
pub fn annihilator_through_creators(m: i64, _f: &str, creators: &[&str]) -> NormalForm {
    let n = creators.len();
    let mut nf = NormalForm::new(m);
    let level_for = |exp: usize| if exp >= 1 { Some(m) } else { None };
    nf.add_term(
        TermKey {
            pairings: Vec::new(),
            creators: (2..=n + 1).collect(),
            annihilators: vec![1],
            q_exponent: n,
            projector_level: level_for(n),
        },
        1,
    );
    for i in 1..=n {
        let exp = i - 1;
        nf.add_term(
            TermKey {
                pairings: vec![(1, i + 1)],
                creators: (2..=n + 1).filter(|&pos| pos != i + 1).collect(),
                annihilators: Vec::new(),
                q_exponent: exp,
                projector_level: level_for(exp),
            },
            1,
        );
    }
    nf
}

fn check_word(w: &Word, cap: usize, what: &'static str) -> Result<()> {
    if w.is_empty() {
        return Err(Error::invalid("cannot normal-order an empty word".to_string()));
    }
    if w.len() > cap {
        return Err(Error::CapExceeded {
            what,
            requested: w.len(),
            cap,
        });
    }
    Ok(())
}

/// Closed-form normal ordering through the block expansion. See
/// [`normal_order_wick_with_cap`] for the cap and
/// [`normal_order_wick_with_block_offset`] for the indexing-origin hook.
pub fn normal_order_wick(w: &Word) -> Result<NormalForm> {
    wick_impl(w, WORD_CAP_DEFAULT, 0)
}

/// [`normal_order_wick`] with an explicit word-length cap.
pub fn normal_order_wick_with_cap(w: &Word, cap: usize) -> Result<NormalForm> {
    wick_impl(w, cap, 0)
}

/// [`normal_order_wick`] with the block ordinals starting at `n0 + 1`
/// instead of 1. The result must not depend on `n0`; the offset exists so
/// tests can pin that invariance.
pub fn normal_order_wick_with_block_offset(w: &Word, n0: usize) -> Result<NormalForm> {
    wick_impl(w, WORD_CAP_DEFAULT, n0)
}

fn wick_impl(w: &Word, cap: usize, n0: usize) -> Result<NormalForm> {
    check_word(w, cap, "normal_order_wick word length")?;
    let m = w.m();
    let (front_level, core) = reduce_projector_prefix(w);
    let ops = core.factors();
    let total = ops.len();

    let lead = ops.iter().take_while(|f| f.signature() == 1).count();
    let trail = ops[lead..]
        .iter()
        .rev()
        .take_while(|f| f.signature() == -1)
        .count();
    let middle = &ops[lead..total - trail];

    let merge_front = |level: Option<i64>| match (front_level, level) {
        (None, l) => l,
        (Some(f), None) => Some(f),
        (Some(f), Some(l)) => Some(f.min(l)),
    };

    let mut nf = NormalForm::new(m);
    if middle.is_empty() {
        nf.add_term(
            TermKey {
                pairings: Vec::new(),
                creators: (1..=lead).collect(),
                annihilators: (total - trail + 1..=total).collect(),
                q_exponent: 0,
                projector_level: merge_front(None),
            },
            1,
        );
        return Ok(nf);
    }

    // middle = A(anchor_1) A⁺(block_1) … A(anchor_N) A⁺(block_N)
    let mut anchors: Vec<usize> = Vec::new();
    let mut blocks: Vec<BTreeSet<usize>> = Vec::new();
    for (off, f) in middle.iter().enumerate() {
        let pos = lead + off + 1;
        if f.signature() == -1 {
            anchors.push(pos);
            blocks.push(BTreeSet::new());
        } else {
            blocks
                .last_mut()
                .expect("middle starts with an annihilator")
                .insert(pos);
        }
    }
    let nblocks = blocks.len();
    let family = IndexFamily::with_start(n0, blocks)?;
    let middle_creators = family.union_from(n0 + 1)?;

    // projector level attached to the ordinal-s factor of the expansion
    let level_at = |s: usize| -> i64 {
        let before = family
            .union_range(n0 + 1, s - 1)
            .expect("prefix range valid")
            .len() as i64;
        m + before - ((s - n0) as i64) + 1
    };

    for k in 0..=nblocks {
        for pairing in enumerate_bracket(&family, k) {
            let mut q_exponent = 0usize;
            let mut level: Option<i64> = None;
            for s in n0 + 1..=n0 + nblocks {
                let c = c_value(&family, &pairing, s);
                if c >= 1 {
                    q_exponent += c;
                    let l = level_at(s);
                    level = Some(level.map_or(l, |cur| cur.min(l)));
                }
            }

            let paired_creators: BTreeSet<usize> =
                pairing.iter().map(|&(_, r)| r).collect();
            let paired_anchors: BTreeSet<usize> = pairing
                .iter()
                .map(|&(l, _)| anchors[l - n0 - 1])
                .collect();

            let mut creators: Vec<usize> = (1..=lead).collect();
            creators.extend(
                middle_creators
                    .iter()
                    .copied()
                    .filter(|p| !paired_creators.contains(p)),
            );
            let mut annihilators: Vec<usize> = anchors
                .iter()
                .copied()
                .filter(|p| !paired_anchors.contains(p))
                .collect();
            annihilators.extend(total - trail + 1..=total);

            // prepended creators each raise a present level by one
            let level = merge_front(level.map(|l| l + lead as i64));

            nf.add_term(
                TermKey {
                    pairings: pairing
                        .iter()
                        .map(|&(l, r)| (anchors[l - n0 - 1], r))
                        .collect(),
                    creators,
                    annihilators,
                    q_exponent,
                    projector_level: level,
                },
                1,
            );
        }
    }
    Ok(nf)
}

/// Rewrite-rule normal ordering: hoists projectors stepwise and replaces the
/// leftmost adjacent annihilator–creator pair by its two-term expansion until
/// every summand is normally ordered. Independent of [`normal_order_wick`];
/// their agreement is the engine-equivalence check.
pub fn normal_order_rewrite(w: &Word) -> Result<NormalForm> {
    normal_order_rewrite_with_cap(w, WORD_CAP_DEFAULT)
}

/// [`normal_order_rewrite`] with an explicit word-length cap.
pub fn normal_order_rewrite_with_cap(w: &Word, cap: usize) -> Result<NormalForm> {
    check_word(w, cap, "normal_order_rewrite word length")?;
    let m = w.m();

    #[derive(Clone)]
    enum Sym {
        Op { pos: usize, sig: i64 },
        Proj { level: i64 },
    }

    #[derive(Clone)]
    struct State {
        q_exponent: usize,
        front: Option<i64>,
        syms: Vec<Sym>,
        pairings: Vec<(usize, usize)>,
    }

    let mut pos = 0usize;
    let start = State {
        q_exponent: 0,
        front: None,
        syms: w
            .factors()
            .iter()
            .map(|f| match f {
                OperatorSymbol::Projector(k) => Sym::Proj { level: *k },
                op => {
                    pos += 1;
                    Sym::Op {
                        pos,
                        sig: op.signature(),
                    }
                }
            })
            .collect(),
        pairings: Vec::new(),
    };

    let mut work = vec![start];
    let mut nf = NormalForm::new(m);
    while let Some(mut st) = work.pop() {
        // hoist projectors one swap at a time
        loop {
            let Some(i) = st.syms.iter().position(|s| matches!(s, Sym::Proj { .. })) else {
                break;
            };
            if i == 0 {
                let Sym::Proj { level } = st.syms.remove(0) else {
                    unreachable!()
                };
                st.front = Some(st.front.map_or(level, |f| f.min(level)));
            } else {
                // leftmost projector, so the left neighbor is an operator
                let Sym::Op { sig, .. } = st.syms[i - 1] else {
                    unreachable!()
                };
                let Sym::Proj { level } = &mut st.syms[i] else {
                    unreachable!()
                };
                *level += sig;
                st.syms.swap(i - 1, i);
            }
        }

        // leftmost adjacent annihilator–creator pair
        let site = st.syms.windows(2).position(|pair| {
            matches!(
                (&pair[0], &pair[1]),
                (Sym::Op { sig: -1, .. }, Sym::Op { sig: 1, .. })
            )
        });
        let Some(i) = site else {
            let mut creators = Vec::new();
            let mut annihilators = Vec::new();
            for s in &st.syms {
                let Sym::Op { pos, sig } = s else { unreachable!() };
                if *sig == 1 {
                    creators.push(*pos);
                } else {
                    annihilators.push(*pos);
                }
            }
            let mut pairings = st.pairings;
            pairings.sort_unstable();
            nf.add_term(
                TermKey {
                    pairings,
                    creators,
                    annihilators,
                    q_exponent: st.q_exponent,
                    projector_level: st.front,
                },
                1,
            );
            continue;
        };

        let (a_pos, c_pos) = match (&st.syms[i], &st.syms[i + 1]) {
            (Sym::Op { pos: a, .. }, Sym::Op { pos: c, .. }) => (*a, *c),
            _ => unreachable!(),
        };

        // A(f)A⁺(g) → ⟨f,g⟩ …
        let mut paired = st.clone();
        paired.syms.remove(i + 1);
        paired.syms.remove(i);
        paired.pairings.push((a_pos, c_pos));
        work.push(paired);

        // … + q A⁺(g)A(f)p_m
        let mut swapped = st;
        swapped.q_exponent += 1;
        swapped.syms.swap(i, i + 1);
        swapped.syms.insert(i + 2, Sym::Proj { level: m });
        work.push(swapped);
    }
    Ok(nf)
}

/// Projector handling when evaluating on the vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectorMode {
    /// p_k Φ = Φ iff k ≥ 1 (levels ≤ 0 annihilate, the concrete model).
    Concrete,
    /// Every projector acts as the identity on the vacuum.
    Formal,
}

/// A vacuum expectation: for each pairing set, an integer polynomial in q
/// (exponent → coefficient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VacuumExpectation {
    m: i64,
    terms: BTreeMap<Vec<(usize, usize)>, BTreeMap<usize, i64>>,
}

impl VacuumExpectation {
    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn terms(
        &self,
    ) -> impl Iterator<Item = (&Vec<(usize, usize)>, &BTreeMap<usize, i64>)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// ⟨Φ, w Φ⟩ as a formal pairing polynomial: terms of the wick normal form
/// with no residual operators, filtered by the projector mode.
pub fn vacuum_expectation(w: &Word, mode: ProjectorMode) -> Result<VacuumExpectation> {
    let nf = normal_order_wick(w)?;
    let mut terms: BTreeMap<Vec<(usize, usize)>, BTreeMap<usize, i64>> = BTreeMap::new();
    for (k, mult) in nf.terms() {
        if !k.creators.is_empty() || !k.annihilators.is_empty() {
            continue;
        }
        let keep = match mode {
            ProjectorMode::Formal => true,
            ProjectorMode::Concrete => k.projector_level.map_or(true, |l| l >= 1),
        };
        if !keep {
            continue;
        }
        let poly = terms.entry(k.pairings.clone()).or_default();
        let slot = poly.entry(k.q_exponent).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            poly.remove(&k.q_exponent);
        }
    }
    terms.retain(|_, poly| !poly.is_empty());
    Ok(VacuumExpectation { m: w.m(), terms })
}

/// Deterministic random word: `operator_count` operators (annihilator labels
/// drawn from f1–f3, creator labels from g1–g4) with `projector_count`
/// projector tokens spliced in at random positions, levels in −1..=m+2.
pub fn random_word(
    rng: &mut ChaCha8Rng,
    m: i64,
    operator_count: usize,
    projector_count: usize,
) -> Word {
    const ANNIHILATOR_LABELS: [&str; 3] = ["f1", "f2", "f3"];
    const CREATOR_LABELS: [&str; 4] = ["g1", "g2", "g3", "g4"];
    let mut factors: Vec<OperatorSymbol> = (0..operator_count)
        .map(|_| {
            if rng.gen_bool(0.5) {
                OperatorSymbol::annihilator(*ANNIHILATOR_LABELS.choose(rng).unwrap())
            } else {
                OperatorSymbol::creator(*CREATOR_LABELS.choose(rng).unwrap())
            }
        })
        .collect();
    for _ in 0..projector_count {
        let level = rng.gen_range(-1..=m + 2);
        let at = rng.gen_range(0..=factors.len());
        factors.insert(at, OperatorSymbol::Projector(level));
    }
    Word::new(m, factors).expect("m ≥ 1")
}

/// Engine-equivalence suite: exhaustive over every sign pattern of length
/// ≤ `max_exhaustive_len` (distinct labels, no projectors) for each m in
/// `ms`, plus `random_cases` random words of total length `random_len`
/// containing projector tokens. `max_residual` reports the mismatch count.
pub fn verify_engine_equivalence(
    max_exhaustive_len: usize,
    ms: &[i64],
    random_cases: usize,
    random_len: usize,
    seed: u64,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "wick-vs-rewrite",
        format!(
            "exhaustive len ≤ {max_exhaustive_len}, m ∈ {ms:?}; {random_cases} random len-{random_len} words with projectors, seed {seed}"
        ),
    );
    let mut mismatches = 0usize;

    for &m in ms {
        for len in 1..=max_exhaustive_len {
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
                let w = Word::new(m, factors)?;
                if !engines_agree(&w)? {
                    mismatches += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_cases {
        let m = [1i64, 2, 3, 5][rng.gen_range(0..4)];
        let projector_count = rng.gen_range(1..=2usize);
        let w = random_word(&mut rng, m, random_len - projector_count, projector_count);
        if !engines_agree(&w)? {
            mismatches += 1;
        }
    }

    report.record(mismatches as f64, 0.0);
    Ok(report)
}

fn engines_agree(w: &Word) -> Result<bool> {
    let wick = normal_order_wick(w)?;
    let rewrite = normal_order_rewrite(w)?;
    normal_form_equal(&wick, &rewrite)
}
