//! Dense matrix model of the truncated deformed Fock space: q-symmetrizers,
//! twisted inner products, creation/annihilation blocks, level projectors,
//! spectral norms, field moments, and the bridge that evaluates symbolic
//! normal forms against direct word application.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{inversion_count, Permutation};
use crate::symbolic::{normal_order_wick, random_word, NormalForm, OperatorSymbol, Word};
use crate::{Error, Result, VerifyReport};

/// Interaction range: finite m, or beyond every built level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MParam {
    Finite(u32),
    Unbounded,
}

impl MParam {
    /// The m actually used at truncation `n_max`: Unbounded acts as
    /// `n_max + 1`, which is exact for every computed quantity.
    pub fn effective(&self, n_max: usize) -> i64 {
        match self {
            MParam::Finite(m) => *m as i64,
            MParam::Unbounded => n_max as i64 + 1,
        }
    }
}

impl fmt::Display for MParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MParam::Finite(m) => write!(f, "{m}"),
            MParam::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Model parameters: deformation q ∈ [−1,1], interaction range m,
/// one-particle dimension d ≤ 4, truncation level n_max ≤ 6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    q: f64,
    m: MParam,
    d: usize,
    n_max: usize,
}

impl FockConfig {
    pub fn new(q: f64, m: MParam, d: usize, n_max: usize) -> Result<Self> {
        if !(-1.0..=1.0).contains(&q) {
            return Err(Error::invalid(format!("q={q} must lie in [−1, 1]")));
        }
        if let MParam::Finite(0) = m {
            return Err(Error::invalid("m must be ≥ 1".to_string()));
        }
        if !(1..=4).contains(&d) {
            return Err(Error::invalid(format!("d={d} must lie in 1..=4")));
        }
        if n_max > 6 {
            return Err(Error::invalid(format!("n_max={n_max} must be ≤ 6")));
        }
        Ok(FockConfig { q, m, d, n_max })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn m(&self) -> MParam {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn effective_m(&self) -> i64 {
        self.m.effective(self.n_max)
    }

    /// d^level.
    pub fn dim(&self, level: usize) -> usize {
        self.d.pow(level as u32)
    }

    fn check_level(&self, level: usize, what: &'static str) -> Result<()> {
        if level > self.n_max {
            return Err(Error::CapExceeded {
                what,
                requested: level,
                cap: self.n_max,
            });
        }
        Ok(())
    }

    fn check_one_particle(&self, f: &[Complex64]) -> Result<()> {
        if f.len() != self.d {
            return Err(Error::invalid(format!(
                "one-particle vector has length {}, expected d={}",
                f.len(),
                self.d
            )));
        }
        Ok(())
    }
}

/// Amplitudes of one n-particle component, row-major over tensor slots with
/// slot 1 outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelVector {
    level: usize,
    amplitudes: DVector<Complex64>,
}

impl LevelVector {
    pub fn new(cfg: &FockConfig, level: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        cfg.check_level(level, "level vector")?;
        if amplitudes.len() != cfg.dim(level) {
            return Err(Error::invalid(format!(
                "level-{level} vector needs {} amplitudes, got {}",
                cfg.dim(level),
                amplitudes.len()
            )));
        }
        Ok(LevelVector {
            level,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub fn vacuum(cfg: &FockConfig) -> Self {
        let _ = cfg;
        LevelVector {
            level: 0,
            amplitudes: DVector::from_element(1, Complex64::new(1.0, 0.0)),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }
}

/// Dense block mapping level `from_level` to level `to_level`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelOperator {
    from_level: usize,
    to_level: usize,
    matrix: DMatrix<Complex64>,
}

impl LevelOperator {
    pub fn from_level(&self) -> usize {
        self.from_level
    }

    pub fn to_level(&self) -> usize {
        self.to_level
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn apply(&self, x: &LevelVector) -> Result<LevelVector> {
        if x.level != self.from_level {
            return Err(Error::invalid(format!(
                "operator expects level {}, vector is at level {}",
                self.from_level, x.level
            )));
        }
        Ok(LevelVector {
            level: self.to_level,
            amplitudes: &self.matrix * &x.amplitudes,
        })
    }
}

fn slot_digits(mut index: usize, d: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0usize; n];
    for t in (0..n).rev() {
        out[t] = index % d;
        index /= d;
    }
    out
}

fn index_of(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &g| acc * d + g)
}

/// The level-n form operator λ_n: for n ≤ m the permutation sum
/// Σ_σ q^{ρ(σ)} P_σ, beyond m the identity on the leading n−m slots tensored
/// with λ_m.
pub fn symmetrizer(cfg: &FockConfig, n: usize) -> Result<LevelOperator> {
    cfg.check_level(n, "symmetrizer level")?;
    let m_eff = cfg.effective_m() as usize;
    let dim = cfg.dim(n);
    let matrix = if n <= 1 {
        DMatrix::identity(dim, dim)
    } else if n <= m_eff {
        let mut matrix = DMatrix::zeros(dim, dim);
        for sigma in Permutation::all(n) {
            let coeff = Complex64::new(cfg.q.powi(inversion_count(&sigma) as i32), 0.0);
            for col in 0..dim {
                let digits = slot_digits(col, cfg.d, n);
                let image: Vec<usize> = (1..=n).map(|t| digits[sigma.image(t) - 1]).collect();
                matrix[(index_of(&image, cfg.d), col)] += coeff;
            }
        }
        matrix
    } else {
        let head = DMatrix::identity(cfg.dim(n - m_eff), cfg.dim(n - m_eff));
        head.kronecker(symmetrizer(cfg, m_eff)?.matrix())
    };
    Ok(LevelOperator {
        from_level: n,
        to_level: n,
        matrix,
    })
}

/// ⟨x, λ_n y⟩ in the plain tensor inner product (antilinear in x).
pub fn inner_product(
    cfg: &FockConfig,
    n: usize,
    x: &LevelVector,
    y: &LevelVector,
) -> Result<Complex64> {
    if x.level != n || y.level != n {
        return Err(Error::invalid(format!(
            "inner product at level {n} got vectors at levels {} and {}",
            x.level, y.level
        )));
    }
    let twisted = symmetrizer(cfg, n)?.apply(y)?;
    Ok(x.amplitudes.dotc(&twisted.amplitudes))
}

/// x ↦ f ⊗ x, level n → n+1.
pub fn creation_matrix(cfg: &FockConfig, f: &[Complex64], n: usize) -> Result<LevelOperator> {
    cfg.check_one_particle(f)?;
    cfg.check_level(n + 1, "creation output level")?;
    let from = cfg.dim(n);
    let mut matrix = DMatrix::zeros(from * cfg.d, from);
    for (a, &amp) in f.iter().enumerate() {
        for col in 0..from {
            matrix[(a * from + col, col)] = amp;
        }
    }
    Ok(LevelOperator {
        from_level: n,
        to_level: n + 1,
        matrix,
    })
}

/// Slot-deleting annihilation, level n → n−1: below the interaction range a
/// q-weighted sum over every slot, above it the first slot only.
pub fn annihilation_matrix(cfg: &FockConfig, f: &[Complex64], n: usize) -> Result<LevelOperator> {
    cfg.check_one_particle(f)?;
    cfg.check_level(n, "annihilation input level")?;
    if n == 0 {
        return Err(Error::invalid(
            "annihilation needs at least one particle".to_string(),
        ));
    }
    let m_eff = cfg.effective_m() as usize;
    let from = cfg.dim(n);
    let mut matrix = DMatrix::zeros(cfg.dim(n - 1), from);
    let slots = if n <= m_eff { n } else { 1 };
    for k in 1..=slots {
        let coeff = Complex64::new(cfg.q.powi(k as i32 - 1), 0.0);
        for col in 0..from {
            let digits = slot_digits(col, cfg.d, n);
            let mut kept = digits.clone();
            let removed = kept.remove(k - 1);
            let row = index_of(&kept, cfg.d);
            matrix[(row, col)] += coeff * f[removed].conj();
        }
    }
    Ok(LevelOperator {
        from_level: n,
        to_level: n - 1,
        matrix,
    })
}

/// Action of the rank projector p_k on level `level`: identity below k, zero
/// from k upward, zero everywhere when k ≤ 0.
pub fn projector_factor(k: i64, level: usize) -> f64 {
    if (level as i64) < k {
        1.0
    } else {
        0.0
    }
}

/// [`projector_factor`] as a level operator.
pub fn level_projector(cfg: &FockConfig, k: i64, n: usize) -> Result<LevelOperator> {
    cfg.check_level(n, "projector level")?;
    let dim = cfg.dim(n);
    let matrix = DMatrix::identity(dim, dim) * Complex64::new(projector_factor(k, n), 0.0);
    Ok(LevelOperator {
        from_level: n,
        to_level: n,
        matrix,
    })
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.iter().map(|z| z / norm).collect();
        }
    }
}

/// Residuals of the model identities on one configuration: adjointness of
/// creation against annihilation under the twisted form, both commutation
/// relations, and positive semidefiniteness of every λ_n. Deterministic
/// (internally seeded random test vectors).
pub fn verify_relations(cfg: &FockConfig) -> VerifyReport {
    let mut report = VerifyReport::new(
        "fock-relations",
        format!(
            "q={}, m={}, d={}, n_max={}; 3 random vector pairs",
            cfg.q, cfg.m, cfg.d, cfg.n_max
        ),
    );
    let m_eff = cfg.effective_m();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1CE);
    let lambdas: Vec<DMatrix<Complex64>> = (0..=cfg.n_max)
        .map(|n| symmetrizer(cfg, n).expect("level within truncation").matrix)
        .collect();

    for _ in 0..3 {
        let f = random_unit(&mut rng, cfg.d);
        let g = random_unit(&mut rng, cfg.d);
        let pairing: Complex64 = f.iter().zip(&g).map(|(a, b)| a.conj() * b).sum();

        // λ_{n−1}·a(f) = A⁺(f)^† λ_n
        for n in 1..=cfg.n_max {
            let lhs = &lambdas[n - 1] * annihilation_matrix(cfg, &f, n).unwrap().matrix();
            let rhs = creation_matrix(cfg, &f, n - 1).unwrap().matrix().adjoint() * &lambdas[n];
            report.record(max_abs(&(lhs - rhs)), 1e-10);
        }

        // A(f)A⁺(g) − q A⁺(g)A(f)p_m = ⟨f,g⟩ levelwise
        for n in 0..cfg.n_max {
            let dim = cfg.dim(n);
            let direct = annihilation_matrix(cfg, &f, n + 1).unwrap().matrix
                * creation_matrix(cfg, &g, n).unwrap().matrix();
            let swapped = if n == 0 {
                DMatrix::zeros(1, 1)
            } else {
                creation_matrix(cfg, &g, n - 1).unwrap().matrix
                    * annihilation_matrix(cfg, &f, n).unwrap().matrix()
            };
            let twist = Complex64::new(cfg.q * projector_factor(m_eff, n), 0.0);
            let residual =
                direct - swapped * twist - DMatrix::identity(dim, dim) * pairing;
            report.record(max_abs(&residual), 1e-10);
        }

        // A(f)P_{[0,k+1)} = P_{[0,k)}A(f)
        for k in -1..=(cfg.n_max as i64) {
            for n in 1..=cfg.n_max {
                let a = annihilation_matrix(cfg, &f, n).unwrap();
                let scale = projector_factor(k + 1, n) - projector_factor(k, n - 1);
                report.record(max_abs(a.matrix()) * scale.abs(), 1e-10);
            }
        }
    }

    // λ_n ⪰ 0
    for lambda in &lambdas {
        let min_eig = lambda
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        report.record((-min_eig).max(0.0), 1e-8);
    }
    report
}

/// [`verify_relations`] over the full parameter grid.
pub fn verify_relations_grid() -> VerifyReport {
    let mut max_residual = 0.0f64;
    let mut pass = true;
    for q in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        for m in [1u32, 2, 3] {
            for d in [2usize, 3] {
                let cfg = FockConfig::new(q, MParam::Finite(m), d, 4)
                    .expect("grid point is a valid configuration");
                let sub = verify_relations(&cfg);
                max_residual = max_residual.max(sub.max_residual);
                pass &= sub.pass;
            }
        }
    }
    VerifyReport {
        suite: "fock-relations".to_string(),
        grid: "q ∈ {−1,−0.5,0,0.5,1} × m ∈ {1,2,3} × d ∈ {2,3}, n_max=4".to_string(),
        max_residual,
        pass,
    }
}

/// ‖A⁺(f)‖ on the truncated model: the supremum over levels n < n_max of the
/// largest generalized singular value of creation with respect to the λ
/// forms, computed on the λ-positive subspace (directions with eigenvalue
/// below 1e−10 discarded). Requires n_max ≥ m+1 so the supremum is attained.
pub fn operator_norm(cfg: &FockConfig, f: &[Complex64]) -> Result<f64> {
    cfg.check_one_particle(f)?;
    match cfg.m {
        MParam::Unbounded => {
            return Err(Error::invalid(
                "operator norm needs finite m with n_max ≥ m+1".to_string(),
            ));
        }
        MParam::Finite(m) => {
            if cfg.n_max < m as usize + 1 {
                return Err(Error::invalid(format!(
                    "operator norm needs n_max ≥ m+1 = {}, got {}",
                    m + 1,
                    cfg.n_max
                )));
            }
        }
    }
    let mut sup = 0.0f64;
    for n in 0..cfg.n_max {
        let lambda_n = symmetrizer(cfg, n)?.matrix;
        let lambda_up = symmetrizer(cfg, n + 1)?.matrix;
        let c = creation_matrix(cfg, f, n)?.matrix;
        let gram = c.adjoint() * lambda_up * &c;

        let eig = lambda_n.symmetric_eigen();
        let kept: Vec<usize> = eig
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v >= 1e-10)
            .map(|(i, _)| i)
            .collect();
        if kept.is_empty() {
            continue;
        }
        let dim = gram.nrows();
        let mut basis = DMatrix::zeros(dim, kept.len());
        for (j, &i) in kept.iter().enumerate() {
            let scale = Complex64::new(1.0 / eig.eigenvalues[i].sqrt(), 0.0);
            basis.set_column(j, &(eig.eigenvectors.column(i) * scale));
        }
        let reduced = basis.adjoint() * &gram * &basis;
        let top = reduced
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        sup = sup.max(top);
    }
    Ok(sup.max(0.0).sqrt())
}

/// Norm-formula sweep: compares [`operator_norm`] against the closed form
/// √(1+q+…+q^{m−1})·‖f‖ for q ≥ 0 and ‖f‖ for q < 0, on the standard grid
/// with n_max = m+2. Residual is the worst relative error.
pub fn verify_norm_grid() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "operator-norm",
        "q ∈ {−1,−0.5,0,0.5,1} × m ∈ {1,2,3} × d ∈ {2,3}, n_max=m+2; unit and scaled vectors"
            .to_string(),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    for q in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        for m in [1u32, 2, 3] {
            for d in [2usize, 3] {
                let cfg = FockConfig::new(q, MParam::Finite(m), d, m as usize + 2)?;
                for scale in [1.0, 1.7] {
                    let f: Vec<Complex64> = random_unit(&mut rng, d)
                        .into_iter()
                        .map(|z| z * scale)
                        .collect();
                    let norm_f = f.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    let expected = if q >= 0.0 {
                        let series: f64 = (0..m).map(|j| q.powi(j as i32)).sum();
                        series.sqrt() * norm_f
                    } else {
                        norm_f
                    };
                    let got = operator_norm(&cfg, &f)?;
                    report.record((got - expected).abs() / expected, 1e-6);
                }
            }
        }
    }
    Ok(report)
}

/// Vacuum moments ⟨Φ, (A(f)+A⁺(f))^k Φ⟩ for k = 1..max_order, by level-wise
/// application on the truncated chain. Exact for max_order ≤ 2·n_max (paths
/// that would cross the truncation need more steps to return).
pub fn field_moments(cfg: &FockConfig, f: &[Complex64], max_order: usize) -> Result<Vec<f64>> {
    cfg.check_one_particle(f)?;
    if max_order > 2 * cfg.n_max {
        return Err(Error::CapExceeded {
            what: "field moment order",
            requested: max_order,
            cap: 2 * cfg.n_max,
        });
    }
    let ups: Vec<DMatrix<Complex64>> = (0..cfg.n_max)
        .map(|n| creation_matrix(cfg, f, n).map(|op| op.matrix))
        .collect::<Result<_>>()?;
    let downs: Vec<DMatrix<Complex64>> = (1..=cfg.n_max)
        .map(|n| annihilation_matrix(cfg, f, n).map(|op| op.matrix))
        .collect::<Result<_>>()?;

    let mut state: Vec<DVector<Complex64>> = (0..=cfg.n_max)
        .map(|n| DVector::zeros(cfg.dim(n)))
        .collect();
    state[0][0] = Complex64::new(1.0, 0.0);

    let mut moments = Vec::with_capacity(max_order);
    for _ in 0..max_order {
        let mut next: Vec<DVector<Complex64>> = (0..=cfg.n_max)
            .map(|n| DVector::zeros(cfg.dim(n)))
            .collect();
        for n in 0..=cfg.n_max {
            if n >= 1 {
                next[n] += &ups[n - 1] * &state[n - 1];
            }
            if n + 1 <= cfg.n_max {
                next[n] += &downs[n] * &state[n + 1];
            }
        }
        state = next;
        moments.push(state[0][0].re);
    }
    Ok(moments)
}

/// Assigns a one-particle vector to each operator label.
pub type Assignment = BTreeMap<String, Vec<Complex64>>;

fn assigned<'a>(
    cfg: &FockConfig,
    assignment: &'a Assignment,
    label: &str,
) -> Result<&'a [Complex64]> {
    let v = assignment
        .get(label)
        .ok_or_else(|| Error::invalid(format!("label \"{label}\" has no assigned vector")))?;
    cfg.check_one_particle(v)?;
    Ok(v)
}

/// A word or normal form realized as level blocks, keyed by input level.
/// Input levels whose application would cross the truncation ceiling are
/// absent; exact zeros (annihilating the vacuum, a vanishing projector) are
/// kept as zero blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct WordOperator {
    blocks: BTreeMap<usize, LevelOperator>,
}

impl WordOperator {
    pub fn block(&self, input_level: usize) -> Option<&LevelOperator> {
        self.blocks.get(&input_level)
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&usize, &LevelOperator)> {
        self.blocks.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// Applies the word factor by factor (rightmost first) on every input level
/// where the application stays within the truncation.
pub fn apply_word(cfg: &FockConfig, w: &Word, assignment: &Assignment) -> Result<WordOperator> {
    if w.m() != cfg.effective_m() {
        return Err(Error::invalid(format!(
            "word algebra parameter m={} does not match the model's effective m={}",
            w.m(),
            cfg.effective_m()
        )));
    }
    for factor in w.factors() {
        if let Some(label) = factor.label() {
            assigned(cfg, assignment, label)?;
        }
    }

    let mut blocks = BTreeMap::new();
    'levels: for n in 0..=cfg.n_max {
        let mut level = n as i64;
        let mut dead = false;
        let mut matrix = DMatrix::identity(cfg.dim(n), cfg.dim(n));
        for factor in w.factors().iter().rev() {
            match factor {
                OperatorSymbol::Creator(label) => {
                    if !dead {
                        if level as usize + 1 > cfg.n_max {
                            continue 'levels; // truncation would lose amplitude
                        }
                        let f = assigned(cfg, assignment, label)?;
                        matrix = creation_matrix(cfg, f, level as usize)?.matrix * matrix;
                    }
                    level += 1;
                }
                OperatorSymbol::Annihilator(label) => {
                    if !dead {
                        if level == 0 {
                            dead = true; // the vacuum is annihilated exactly
                        } else {
                            let f = assigned(cfg, assignment, label)?;
                            matrix =
                                annihilation_matrix(cfg, f, level as usize)?.matrix * matrix;
                        }
                    }
                    level -= 1;
                }
                OperatorSymbol::Projector(k) => {
                    if !dead && projector_factor(*k, level as usize) == 0.0 {
                        dead = true;
                    }
                }
            }
        }
        if level < 0 || level as usize > cfg.n_max {
            continue;
        }
        let to_level = level as usize;
        let matrix = if dead {
            DMatrix::zeros(cfg.dim(to_level), cfg.dim(n))
        } else {
            matrix
        };
        blocks.insert(
            n,
            LevelOperator {
                from_level: n,
                to_level,
                matrix,
            },
        );
    }
    Ok(WordOperator { blocks })
}

/// Realizes a canonical normal form as level blocks: each term contributes
/// multiplicity × q-power × pairing scalars × projector factor times its
/// residual creation/annihilation chain. `core_labels` maps the form's
/// 1-based positions back to operator labels.
pub fn evaluate_normal_form(
    cfg: &FockConfig,
    nf: &NormalForm,
    core_labels: &[&str],
    assignment: &Assignment,
) -> Result<WordOperator> {
    if nf.m() != cfg.effective_m() {
        return Err(Error::invalid(format!(
            "normal form algebra parameter m={} does not match the model's effective m={}",
            nf.m(),
            cfg.effective_m()
        )));
    }
    let mut signature: Option<i64> = None;
    for (key, _) in nf.terms() {
        let sig = key.creators.len() as i64 - key.annihilators.len() as i64;
        if *signature.get_or_insert(sig) != sig {
            return Err(Error::invalid(
                "normal form mixes terms of different total signature".to_string(),
            ));
        }
        for &p in key
            .pairings
            .iter()
            .flat_map(|(a, c)| [a, c])
            .chain(&key.creators)
            .chain(&key.annihilators)
        {
            if p == 0 || p > core_labels.len() {
                return Err(Error::invalid(format!(
                    "term position {p} is outside the {}-factor core word",
                    core_labels.len()
                )));
            }
            assigned(cfg, assignment, core_labels[p - 1])?;
        }
    }
    let Some(signature) = signature else {
        return Ok(WordOperator {
            blocks: BTreeMap::new(),
        });
    };

    let vector_at = |p: usize| -> Result<&[Complex64]> {
        assigned(cfg, assignment, core_labels[p - 1])
    };

    let mut blocks = BTreeMap::new();
    for n in 0..=cfg.n_max {
        let out = n as i64 + signature;
        if out < 0 || out as usize > cfg.n_max {
            continue;
        }
        let to_level = out as usize;
        let mut total = DMatrix::zeros(cfg.dim(to_level), cfg.dim(n));
        for (key, mult) in nf.terms() {
            if n < key.annihilators.len() {
                continue; // annihilates through the vacuum: exact zero
            }
            let mut scalar = Complex64::new(
                mult as f64 * cfg.q.powi(key.q_exponent as i32),
                0.0,
            );
            for &(a, c) in &key.pairings {
                let fa = vector_at(a)?;
                let gc = vector_at(c)?;
                let pairing: Complex64 =
                    fa.iter().zip(gc).map(|(x, y)| x.conj() * y).sum();
                scalar *= pairing;
            }
            if let Some(k) = key.projector_level {
                scalar *= Complex64::new(projector_factor(k, to_level), 0.0);
            }
            if scalar.norm_sqr() == 0.0 {
                continue;
            }
            let mut matrix = DMatrix::identity(cfg.dim(n), cfg.dim(n));
            let mut level = n;
            for &p in key.annihilators.iter().rev() {
                matrix = annihilation_matrix(cfg, vector_at(p)?, level)?.matrix * matrix;
                level -= 1;
            }
            for &p in key.creators.iter().rev() {
                matrix = creation_matrix(cfg, vector_at(p)?, level)?.matrix * matrix;
                level += 1;
            }
            total += matrix * scalar;
        }
        blocks.insert(
            n,
            LevelOperator {
                from_level: n,
                to_level,
                matrix: total,
            },
        );
    }
    Ok(WordOperator { blocks })
}

/// Randomized bridge suite: on random words (projector tokens included) the
/// evaluated wick normal form must reproduce direct application on every
/// level block the truncation keeps. d=2, n_max=4, m ∈ {1,2,3}, q uniform.
pub fn verify_bridge(cases: usize, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "symbolic-numeric-bridge",
        format!("{cases} random words, length ≤ 6, d=2, n_max=4, m ∈ {{1,2,3}}, seed {seed}"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let m = [1i64, 2, 3][rng.gen_range(0..3)];
        let q = rng.gen_range(-1.0..=1.0);
        let cfg = FockConfig::new(q, MParam::Finite(m as u32), 2, 4)?;

        let total_len = rng.gen_range(1..=6usize);
        let projector_count = rng.gen_range(0..=total_len.min(2));
        let w = random_word(&mut rng, m, total_len - projector_count, projector_count);

        let mut assignment = Assignment::new();
        for label in ["f1", "f2", "f3", "g1", "g2", "g3", "g4"] {
            assignment.insert(label.to_string(), random_unit(&mut rng, 2));
        }

        let nf = normal_order_wick(&w)?;
        let labels = w.core_labels();
        let evaluated = evaluate_normal_form(&cfg, &nf, &labels, &assignment)?;
        let direct = apply_word(&cfg, &w, &assignment)?;
        for (n, block) in direct.blocks() {
            let other = evaluated
                .block(*n)
                .expect("evaluation domain covers direct application");
            report.record(max_abs(&(block.matrix() - other.matrix())), 1e-9);
        }
    }
    Ok(report)
}
