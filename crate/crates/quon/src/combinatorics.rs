//! Pair partitions, sign patterns, Feynman diagrams, ordered index families,
//! and the counting statistics that weight normal-ordering expansions.
//!
//! All enumerators emit in lexicographic order of the canonical encoding and
//! refuse sizes beyond their documented caps instead of truncating.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::{Error, Result};

/// Largest half-size accepted by [`enumerate_pair_partitions`].
pub const PAIR_PARTITION_CAP: usize = 8;
/// Largest half-size accepted by [`enumerate_noncrossing`].
pub const NONCROSSING_CAP: usize = 10;
/// Largest half-size accepted by [`enumerate_balanced_patterns`].
pub const BALANCED_PATTERN_CAP: usize = 10;

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid(format!("{what}: half-size must be at least 1")));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what,
            requested: n,
            cap,
        });
    }
    Ok(())
}

/// A permutation of `{1, …, n}` stored as its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from `(σ(1), …, σ(n))`; the images must be a
    /// bijection on `1..=n`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v < 1 || v > n || seen[v] {
                return Err(Error::invalid(format!(
                    "images {images:?} are not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// All of 𝔖ₙ in lexicographic order of the image sequence.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// σ(i) with 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }
}

/// Number of pairs `i < j` with `σ(i) > σ(j)`.
///
/// ```
/// use quon::combinatorics::{inversion_count, Permutation};
/// let p = Permutation::new(vec![3, 2, 1]).unwrap();
/// assert_eq!(inversion_count(&p), 3);
/// ```
pub fn inversion_count(p: &Permutation) -> usize {
    let images = p.images();
    let mut count = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                count += 1;
            }
        }
    }
    count
}

/// A perfect matching of `{1, …, 2n}` stored left-sorted with `l < r` in each
/// pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairPartition {
    pairs: Vec<(usize, usize)>,
}

impl PairPartition {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        let n = pairs.len();
        let mut seen = BTreeSet::new();
        for &(l, r) in &pairs {
            if l >= r {
                return Err(Error::invalid(format!("pair ({l},{r}) must have l < r")));
            }
            seen.insert(l);
            seen.insert(r);
        }
        if seen != (1..=2 * n).collect() {
            return Err(Error::invalid(
                "pairs must form a perfect matching of 1..=2n".to_string(),
            ));
        }
        Ok(PairPartition { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of pairs.
    pub fn half_size(&self) -> usize {
        self.pairs.len()
    }

    /// Number of matched points, `2n`.
    pub fn size(&self) -> usize {
        2 * self.pairs.len()
    }

    /// True when no two pairs interleave as `l_a < l_b < r_a < r_b`.
    pub fn is_noncrossing(&self) -> bool {
        for &(la, ra) in &self.pairs {
            for &(lb, rb) in &self.pairs {
                if la < lb && lb < ra && ra < rb {
                    return false;
                }
            }
        }
        true
    }
}

/// All pair partitions of `{1, …, 2n}`, lexicographic, `(2n−1)!!` of them.
pub fn enumerate_pair_partitions(n: usize) -> Result<Vec<PairPartition>> {
    check_cap("enumerate_pair_partitions", n, PAIR_PARTITION_CAP)?;
    let mut out = Vec::new();
    let mut used = vec![false; 2 * n + 1];
    let mut acc = Vec::with_capacity(n);
    pp_rec(&mut used, &mut acc, &mut out);
    Ok(out)
}

fn pp_rec(
    used: &mut [bool],
    acc: &mut Vec<(usize, usize)>,
    out: &mut Vec<PairPartition>,
) {
    let l = match (1..used.len()).find(|&i| !used[i]) {
        None => {
            out.push(PairPartition { pairs: acc.clone() });
            return;
        }
        Some(l) => l,
    };
    used[l] = true;
    for r in l + 1..used.len() {
        if !used[r] {
            used[r] = true;
            acc.push((l, r));
            pp_rec(used, acc, out);
            acc.pop();
            used[r] = false;
        }
    }
    used[l] = false;
}

/// All non-crossing pair partitions of `{1, …, 2n}`, lexicographic,
/// `Catalan(n)` of them. Enumerated directly (never by filtering
/// [`enumerate_pair_partitions`], whose cap is lower).
pub fn enumerate_noncrossing(n: usize) -> Result<Vec<PairPartition>> {
    check_cap("enumerate_noncrossing", n, NONCROSSING_CAP)?;
    let out = ncpp_segment(1, 2 * n)
        .into_iter()
        .map(|pairs| PairPartition { pairs })
        .collect();
    Ok(out)
}

fn ncpp_segment(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
    if lo > hi {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    // lo must pair inside its own segment; the matched interior and the tail
    // then decompose independently.
    let mut r = lo + 1;
    while r <= hi {
        for inside in ncpp_segment(lo + 1, r - 1) {
            for outside in ncpp_segment(r + 1, hi) {
                let mut pairs = Vec::with_capacity(1 + inside.len() + outside.len());
                pairs.push((lo, r));
                pairs.extend_from_slice(&inside);
                pairs.extend_from_slice(&outside);
                out.push(pairs);
            }
        }
        r += 2;
    }
    out
}

/// A word over `{−1, +1}`: −1 marks annihilators, +1 creators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    signs: Vec<i8>,
}

impl SignPattern {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::invalid("signs must be −1 or +1".to_string()));
        }
        Ok(SignPattern { signs })
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// ε(pos) with 1-based `pos`.
    pub fn sign(&self, pos: usize) -> i8 {
        self.signs[pos - 1]
    }

    /// Total sum 0 and every suffix sum ≥ 0.
    pub fn is_balanced(&self) -> bool {
        let mut suffix = 0i64;
        for &s in self.signs.iter().rev() {
            suffix += s as i64;
            if suffix < 0 {
                return false;
            }
        }
        suffix == 0
    }

    /// Positions `s` with ε(s) = −1, ascending.
    pub fn annihilator_positions(&self) -> Vec<usize> {
        self.positions_of(-1)
    }

    /// Positions `s` with ε(s) = +1, ascending.
    pub fn creator_positions(&self) -> Vec<usize> {
        self.positions_of(1)
    }

    fn positions_of(&self, sign: i8) -> Vec<usize> {
        self.signs
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s == sign)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s == 1 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::invalid(format!(
                    "sign pattern may only contain '+' and '-', found {other:?}"
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        SignPattern::new(signs)
    }
}

/// All ε of length `2n` with total sum 0 and all suffix sums ≥ 0,
/// lexicographic with −1 < +1; `Catalan(n)` of them.
pub fn enumerate_balanced_patterns(n: usize) -> Result<Vec<SignPattern>> {
    check_cap("enumerate_balanced_patterns", n, BALANCED_PATTERN_CAP)?;
    let len = 2 * n;
    let mut out = Vec::new();
    for mask in 0u32..(1 << len) {
        let signs: Vec<i8> = (0..len)
            .map(|i| if mask >> (len - 1 - i) & 1 == 1 { 1 } else { -1 })
            .collect();
        let pat = SignPattern { signs };
        if pat.is_balanced() {
            out.push(pat);
        }
    }
    Ok(out)
}

/// The unique non-crossing pair partition matching −1 openings to +1
/// closings; errors when the pattern is not balanced.
pub fn ncpp_from_pattern(e: &SignPattern) -> Result<PairPartition> {
    if !e.is_balanced() {
        return Err(Error::invalid(format!("pattern {e} is not balanced")));
    }
    let mut stack = Vec::new();
    let mut pairs = Vec::new();
    for (i, &s) in e.signs().iter().enumerate() {
        if s == -1 {
            stack.push(i + 1);
        } else {
            let l = stack.pop().expect("balanced pattern");
            pairs.push((l, i + 1));
        }
    }
    pairs.sort_unstable();
    Ok(PairPartition { pairs })
}

/// The sign pattern with −1 at left endpoints and +1 at right endpoints;
/// inverse of [`ncpp_from_pattern`] on non-crossing partitions.
pub fn pattern_from_ncpp(theta: &PairPartition) -> SignPattern {
    let mut signs = vec![1i8; theta.size()];
    for &(l, _) in theta.pairs() {
        signs[l - 1] = -1;
    }
    SignPattern { signs }
}

/// Number of pairs strictly enclosing pair `k` (1-based index into the
/// left-sorted pair list).
pub fn pair_depth(theta: &PairPartition, k: usize) -> Result<usize> {
    if k < 1 || k > theta.half_size() {
        return Err(Error::invalid(format!(
            "pair index {k} out of range 1..={}",
            theta.half_size()
        )));
    }
    let (lk, rk) = theta.pairs()[k - 1];
    Ok(theta
        .pairs()
        .iter()
        .filter(|&&(l, r)| l < lk && rk < r)
        .count())
}

/// An ordered family of disjoint index blocks `I_1, …, I_N` with every
/// element of a block below every element of any later block. The block
/// ordinals may start at an arbitrary offset (see [`IndexFamily::with_start`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFamily {
    start: usize,
    blocks: Vec<BTreeSet<usize>>,
}

impl IndexFamily {
    /// Family with ordinals `1..=N`.
    pub fn new(blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        Self::with_start(0, blocks)
    }

    /// Family with ordinals `start+1..=start+N`; the contents are unchanged,
    /// only the labels shift.
    pub fn with_start(start: usize, blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        let mut last_max: Option<usize> = None;
        for b in &blocks {
            if let (Some(&mn), Some(&mx)) = (b.first(), b.last()) {
                if let Some(lm) = last_max {
                    if mn <= lm {
                        return Err(Error::invalid(
                            "blocks must be disjoint and completely ordered".to_string(),
                        ));
                    }
                }
                last_max = Some(mx);
            }
        }
        Ok(IndexFamily { start, blocks })
    }

    /// First ordinal minus one; blocks carry ordinals `start+1..=start+N`.
    pub fn start(&self) -> usize {
        self.start
    }

    /// Number of blocks `N`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Last valid ordinal, `start + N`.
    pub fn end(&self) -> usize {
        self.start + self.blocks.len()
    }

    fn slot(&self, j: usize) -> Result<usize> {
        if j <= self.start || j > self.end() {
            return Err(Error::invalid(format!(
                "block ordinal {j} out of range {}..={}",
                self.start + 1,
                self.end()
            )));
        }
        Ok(j - self.start - 1)
    }

    /// Block `I_j` by absolute ordinal.
    pub fn block(&self, j: usize) -> Result<&BTreeSet<usize>> {
        Ok(&self.blocks[self.slot(j)?])
    }

    /// Union `I_j ∪ … ∪ I_h`; empty when `h < j`.
    pub fn union_range(&self, j: usize, h: usize) -> Result<BTreeSet<usize>> {
        if h < j {
            return Ok(BTreeSet::new());
        }
        let (lo, hi) = (self.slot(j)?, self.slot(h)?);
        let mut out = BTreeSet::new();
        for b in &self.blocks[lo..=hi] {
            out.extend(b.iter().copied());
        }
        Ok(out)
    }

    /// Tail union `I_j ∪ … ∪ I_N`.
    pub fn union_from(&self, j: usize) -> Result<BTreeSet<usize>> {
        self.union_range(j, self.end())
    }

    /// Cut set: elements of the tail union strictly below `i`.
    pub fn cut(&self, j: usize, i: usize) -> Result<BTreeSet<usize>> {
        Ok(self
            .union_from(j)?
            .into_iter()
            .filter(|&x| x < i)
            .collect())
    }
}

/// Anchor positions (the −1 positions) together with the creator blocks that
/// follow each anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    anchors: Vec<usize>,
    family: IndexFamily,
}

impl BlockDecomposition {
    pub fn block_count(&self) -> usize {
        self.family.block_count()
    }

    pub fn anchors(&self) -> &[usize] {
        &self.anchors
    }

    pub fn family(&self) -> &IndexFamily {
        &self.family
    }
}

/// Decomposes a pattern with ε(1) = −1 and ε(end) = +1 into anchors and the
/// creator positions strictly between consecutive anchors (the last block
/// runs to the end of the word). Balance is not required.
pub fn blocks_from_pattern(e: &SignPattern) -> Result<BlockDecomposition> {
    if e.is_empty() || e.sign(1) != -1 || e.sign(e.len()) != 1 {
        return Err(Error::invalid(format!(
            "block decomposition needs ε(1) = −1 and ε(end) = +1, got {e}"
        )));
    }
    let anchors = e.annihilator_positions();
    let n = e.len();
    let mut blocks = Vec::with_capacity(anchors.len());
    for (j, &m) in anchors.iter().enumerate() {
        let hi = anchors.get(j + 1).map(|&next| next - 1).unwrap_or(n);
        blocks.push((m + 1..=hi).filter(|&i| e.sign(i) == 1).collect());
    }
    let family = IndexFamily::new(blocks)?;
    Ok(BlockDecomposition { anchors, family })
}

/// A degree-`k` partial matching of annihilator positions to later creator
/// positions with pairwise distinct creators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeynmanDiagram {
    ground: SignPattern,
    pairs: Vec<(usize, usize)>,
}

impl FeynmanDiagram {
    pub fn new(ground: SignPattern, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        let n = ground.len();
        let mut rs = BTreeSet::new();
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::invalid(
                    "left endpoints must be strictly increasing".to_string(),
                ));
            }
        }
        for &(l, r) in &pairs {
            if l < 1 || r > n || l >= r {
                return Err(Error::invalid(format!("pair ({l},{r}) out of range")));
            }
            if ground.sign(l) != -1 || ground.sign(r) != 1 {
                return Err(Error::invalid(format!(
                    "pair ({l},{r}) must match an annihilator to a creator"
                )));
            }
            if !rs.insert(r) {
                return Err(Error::invalid(format!("creator {r} used twice")));
            }
        }
        Ok(FeynmanDiagram { ground, pairs })
    }

    pub fn ground(&self) -> &SignPattern {
        &self.ground
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.len()
    }

    /// γᶜ: positions of either sign not used as a pair endpoint.
    pub fn unpaired(&self) -> BTreeSet<usize> {
        let endpoints: BTreeSet<usize> =
            self.pairs.iter().flat_map(|&(l, r)| [l, r]).collect();
        (1..=self.ground.len())
            .filter(|i| !endpoints.contains(i))
            .collect()
    }

    pub fn unpaired_annihilators(&self) -> Vec<usize> {
        self.unpaired()
            .into_iter()
            .filter(|&i| self.ground.sign(i) == -1)
            .collect()
    }

    pub fn unpaired_creators(&self) -> Vec<usize> {
        self.unpaired()
            .into_iter()
            .filter(|&i| self.ground.sign(i) == 1)
            .collect()
    }
}

/// All degree-`k` Feynman diagrams on `e`, lexicographic in the pair list;
/// empty when `k` exceeds `min(#creators, #annihilators)`. Degree 0 yields
/// the single empty diagram.
pub fn enumerate_feynman(e: &SignPattern, k: usize) -> Vec<FeynmanDiagram> {
    let annihilators = e.annihilator_positions();
    let creators = e.creator_positions();
    let mut out = Vec::new();
    if k > annihilators.len() || k > creators.len() {
        return out;
    }
    let mut pairs = Vec::with_capacity(k);
    let mut used = BTreeSet::new();
    feynman_rec(e, &annihilators, &creators, k, 0, &mut pairs, &mut used, &mut out);
    out.sort_by(|a, b| a.pairs.cmp(&b.pairs));
    out
}

#[allow(clippy::too_many_arguments)]
fn feynman_rec(
    e: &SignPattern,
    annihilators: &[usize],
    creators: &[usize],
    k: usize,
    from: usize,
    pairs: &mut Vec<(usize, usize)>,
    used: &mut BTreeSet<usize>,
    out: &mut Vec<FeynmanDiagram>,
) {
    if pairs.len() == k {
        out.push(FeynmanDiagram {
            ground: e.clone(),
            pairs: pairs.clone(),
        });
        return;
    }
    let remaining = k - pairs.len();
    for (idx, &l) in annihilators.iter().enumerate().skip(from) {
        if annihilators.len() - idx < remaining {
            break;
        }
        let candidates: Vec<usize> = creators
            .iter()
            .copied()
            .filter(|&r| r > l && !used.contains(&r))
            .collect();
        for r in candidates {
            pairs.push((l, r));
            used.insert(r);
            feynman_rec(e, annihilators, creators, k, idx + 1, pairs, used, out);
            used.remove(&r);
            pairs.pop();
        }
    }
}

/// All degree-`k` bracket pairings on an ordered family: ordinals
/// `start < l_1 < … < l_k ≤ start+N`, each `r_h` drawn from the tail union at
/// `l_h`, the `r_h` pairwise distinct. Lexicographic in the pair list; degree
/// 0 yields the single empty pairing.
pub fn enumerate_bracket(family: &IndexFamily, k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    if k > family.block_count() {
        return out;
    }
    let mut pairs = Vec::with_capacity(k);
    let mut used = BTreeSet::new();
    bracket_rec(family, k, family.start() + 1, &mut pairs, &mut used, &mut out);
    out.sort_unstable();
    out
}

fn bracket_rec(
    family: &IndexFamily,
    k: usize,
    from: usize,
    pairs: &mut Vec<(usize, usize)>,
    used: &mut BTreeSet<usize>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if pairs.len() == k {
        out.push(pairs.clone());
        return;
    }
    for l in from..=family.end() {
        if family.end() - l + 1 < k - pairs.len() {
            break;
        }
        let tail = family.union_from(l).expect("ordinal in range");
        let candidates: Vec<usize> =
            tail.into_iter().filter(|r| !used.contains(r)).collect();
        for r in candidates {
            pairs.push((l, r));
            used.insert(r);
            bracket_rec(family, k, l + 1, pairs, used, out);
            used.remove(&r);
            pairs.pop();
        }
    }
}

/// The three diagram statistics and their sum π.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagramStatistics {
    /// Restricted crossing number: pairs `p` with `l_p < l_h < r_p < r_h`.
    pub d1: usize,
    /// Degenerate crossing number: unpaired indices inside some `(l_h, r_h)`.
    pub d2: usize,
    /// Inversions between unpaired annihilators and later unpaired creators.
    pub d3: usize,
    /// d₁ + d₂ + d₃, the exponent of q carried by the diagram's Wick term.
    pub pi: usize,
}

/// Evaluates the three defining sums directly on the diagram.
pub fn diagram_statistics(g: &FeynmanDiagram) -> DiagramStatistics {
    let pairs = g.pairs();
    let unpaired = g.unpaired();

    let mut d1 = 0;
    for &(lh, rh) in pairs {
        for &(lp, rp) in pairs {
            if lp < lh && lh < rp && rp < rh {
                d1 += 1;
            }
        }
    }

    let mut d2 = 0;
    for &(lh, rh) in pairs {
        d2 += unpaired.range(lh + 1..rh).count();
    }

    let mut d3 = 0;
    for &s in &unpaired {
        if g.ground().sign(s) == -1 {
            d3 += unpaired
                .range(s + 1..)
                .filter(|&&c| g.ground().sign(c) == 1)
                .count();
        }
    }

    DiagramStatistics {
        d1,
        d2,
        d3,
        pi: d1 + d2 + d3,
    }
}

fn validate_bracket_pairs(family: &IndexFamily, pairs: &[(usize, usize)]) -> Result<()> {
    let mut rs = BTreeSet::new();
    let mut prev_l = family.start();
    for &(l, r) in pairs {
        if l <= prev_l {
            return Err(Error::invalid(
                "bracket ordinals must be strictly increasing".to_string(),
            ));
        }
        if l > family.end() {
            return Err(Error::invalid(format!(
                "bracket ordinal {l} exceeds the family end {}",
                family.end()
            )));
        }
        if !family.union_from(l)?.contains(&r) {
            return Err(Error::invalid(format!(
                "index {r} is not in the tail union at ordinal {l}"
            )));
        }
        if !rs.insert(r) {
            return Err(Error::invalid(format!("index {r} paired twice")));
        }
        prev_l = l;
    }
    Ok(())
}

/// The block-indexed exponent statistic at ordinal `s` for a bracket pairing.
///
/// Conventions: `l_0 = start`, `l_{k+1} = start+N+1`; at `s = l_p` the cut
/// set at `r_p` is counted, between `l_p` and `l_{p+1}` the full tail union
/// is; in both cases the later matched indices `r_{p+1}, …, r_k` are removed.
pub fn c_statistic(
    family: &IndexFamily,
    pairs: &[(usize, usize)],
    s: usize,
) -> Result<usize> {
    validate_bracket_pairs(family, pairs)?;
    family.slot(s)?;
    Ok(c_value(family, pairs, s))
}

/// Σ over all ordinals of [`c_statistic`].
pub fn c_total(family: &IndexFamily, pairs: &[(usize, usize)]) -> Result<usize> {
    validate_bracket_pairs(family, pairs)?;
    Ok((family.start() + 1..=family.end())
        .map(|s| c_value(family, pairs, s))
        .sum())
}

pub(crate) fn c_value(family: &IndexFamily, pairs: &[(usize, usize)], s: usize) -> usize {
    // p = number of left endpoints ≤ s; pairs are sorted by ordinal
    let p = pairs.iter().take_while(|&&(l, _)| l <= s).count();
    let removed: BTreeSet<usize> = pairs[p..].iter().map(|&(_, r)| r).collect();
    let base = if p > 0 && pairs[p - 1].0 == s {
        family.cut(s, pairs[p - 1].1).expect("ordinal in range")
    } else {
        family.union_from(s).expect("ordinal in range")
    };
    base.difference(&removed).count()
}
