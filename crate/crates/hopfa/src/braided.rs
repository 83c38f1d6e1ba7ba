//! The free braided algebra on x_1..x_n and its q-Serre quotient.
//!
//! Monomials are words in the generators; the braiding acts on a pair of
//! words by the product of the q_uv over their letters, and the braided
//! commutator [a, b]_c = ab - q(a, b) ba builds root vectors x_ij and
//! reverse root vectors x_ji by iterated bracketing. Relabelling along the
//! diagram flip carries root vectors over the twisted datum to reverse
//! root vectors, an equality that already holds before imposing any
//! relation.
//!
//! The quotient by the quantum Serre relations is handled by a rewriting
//! system: relations are oriented under the degree-lexicographic order
//! with x_1 < ... < x_n and completed by resolving overlap and inclusion
//! ambiguities up to a degree bound. All relations are homogeneous, so
//! reduction never raises degree and normal forms below the bound are
//! unique once completion stabilizes. Budgets are enforced loudly: a
//! computation that would exceed them is an error, never a wrong answer.
//!
//! Skew-polynomial quotients R_e, one per binary mark e on an interval,
//! admit projections pi_e from the Serre quotient. Projecting N-th powers
//! of reverse root vectors into every R_e and solving the resulting
//! triangular system recovers the PBW coefficients t(c) independently of
//! the rewriting engine; the two routes cross-check each other.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::cyclo::{CycloContext, Scalar};
use crate::datum::{CartanDatum, Root};
use crate::group::GroupAlgebraElement;
use crate::params::{
    all_marks, compositions, omega_inv, sigma_action, t_coefficient, t_mark, tau_mark,
    u_elements, BinaryMark, ParamFamily,
};
use crate::{Error, Result};

/// A monomial of the free algebra: the sequence of generator indices,
/// each in 1..=n.
pub type Word = Vec<u8>;

/// An element of the free braided algebra over a fixed datum: a finitely
/// supported scalar combination of words, with no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidedPoly {
    datum: Arc<CartanDatum>,
    terms: BTreeMap<Word, Scalar>,
}

impl BraidedPoly {
    /// The zero polynomial.
    pub fn zero(d: &CartanDatum) -> BraidedPoly {
        BraidedPoly {
            datum: Arc::new(d.clone()),
            terms: BTreeMap::new(),
        }
    }

    fn zero_shared(datum: &Arc<CartanDatum>) -> BraidedPoly {
        BraidedPoly {
            datum: Arc::clone(datum),
            terms: BTreeMap::new(),
        }
    }

    /// The empty word with coefficient one.
    pub fn unit(d: &CartanDatum) -> BraidedPoly {
        let mut p = BraidedPoly::zero(d);
        p.insert(Vec::new(), Scalar::one(d.context()));
        p
    }

    /// The generator x_l.
    pub fn generator(d: &CartanDatum, l: usize) -> Result<BraidedPoly> {
        if l == 0 || l > d.n() {
            return Err(Error::BadInput(format!(
                "generator index {l} outside 1..={}",
                d.n()
            )));
        }
        let mut p = BraidedPoly::zero(d);
        p.insert(vec![l as u8], Scalar::one(d.context()));
        Ok(p)
    }

    /// The single word w with the given coefficient.
    pub fn monomial(d: &CartanDatum, w: Word, c: Scalar) -> BraidedPoly {
        let mut p = BraidedPoly::zero(d);
        p.insert(w, c);
        p
    }

    /// The datum whose braiding this polynomial is bound to.
    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    fn insert(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    fn assert_same_datum(&self, other: &BraidedPoly) {
        assert!(
            self.datum == other.datum,
            "polynomials over different data cannot be combined"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// The maximal word length, 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn add(&self, other: &BraidedPoly) -> BraidedPoly {
        self.assert_same_datum(other);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> BraidedPoly {
        BraidedPoly {
            datum: Arc::clone(&self.datum),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &BraidedPoly) -> BraidedPoly {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, s: &Scalar) -> BraidedPoly {
        if s.is_zero() {
            return BraidedPoly::zero_shared(&self.datum);
        }
        BraidedPoly {
            datum: Arc::clone(&self.datum),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Concatenation product of the free algebra.
    pub fn mul(&self, other: &BraidedPoly) -> BraidedPoly {
        self.assert_same_datum(other);
        let mut out = BraidedPoly::zero_shared(&self.datum);
        for (w, c) in &self.terms {
            for (v, e) in &other.terms {
                let mut word = w.clone();
                word.extend_from_slice(v);
                out.insert(word, c.mul(e));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> BraidedPoly {
        let mut out = BraidedPoly::unit(&self.datum);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The braided commutator [self, other]_c = ab - q(a, b) ba, extended
    /// bilinearly with the braiding factor prod q_{uv} over letter pairs.
    pub fn braided_commutator(&self, other: &BraidedPoly) -> BraidedPoly {
        self.assert_same_datum(other);
        let mut out = self.mul(other);
        for (w, c) in &self.terms {
            for (v, e) in &other.terms {
                let factor = braiding_factor(&self.datum, w, v);
                let mut word = v.clone();
                word.extend_from_slice(w);
                out.insert(word, factor.mul(c).mul(e).neg());
            }
        }
        out
    }
}

/// prod_{u in a, v in b} q_{uv}, the scalar the braiding produces when the
/// word a moves past the word b.
fn braiding_factor(d: &CartanDatum, a: &Word, b: &Word) -> Scalar {
    let mut f = Scalar::one(d.context());
    for &u in a {
        for &v in b {
            f = f.mul(d.q_ij(u as usize, v as usize));
        }
    }
    f
}

/// The root vector x_ij, bracketed as [x_i, x_{i+1,j}]_c with
/// x_{i,i+1} = x_i.
pub fn root_vector(d: &CartanDatum, r: Root) -> BraidedPoly {
    let (i, j) = (r.i(), r.j());
    if j == i + 1 {
        return BraidedPoly::generator(d, i).expect("root indices are in range");
    }
    let head = BraidedPoly::generator(d, i).expect("root indices are in range");
    let tail = root_vector(d, Root::new(i + 1, j).expect("valid root"));
    head.braided_commutator(&tail)
}

/// The reverse root vector x_ji, bracketed as [x_{j-1}, x_{j-1,i}]_c with
/// x_{i+1,i} = x_i.
pub fn reverse_root_vector(d: &CartanDatum, r: Root) -> BraidedPoly {
    let (i, j) = (r.i(), r.j());
    if j == i + 1 {
        return BraidedPoly::generator(d, i).expect("root indices are in range");
    }
    let head = BraidedPoly::generator(d, j - 1).expect("root indices are in range");
    let tail = reverse_root_vector(d, Root::new(i, j - 1).expect("valid root"));
    head.braided_commutator(&tail)
}

/// The relabelling x_l -> x_{sigma(l)} from polynomials over the twist of
/// d to polynomials over d. It is an algebra map because the twisted
/// braiding matrix is exactly the flip-conjugated one, and it carries the
/// root vector at (i, j) over the twist to the reverse root vector of d at
/// the flipped interval, an identity that holds in the free algebra.
pub fn relabel_sigma(d: &CartanDatum, p: &BraidedPoly) -> Result<BraidedPoly> {
    let twisted = d.twist();
    if *p.datum() != twisted {
        return Err(Error::Structural(
            "relabelling expects a polynomial over the twist of the target datum".into(),
        ));
    }
    let n = d.n() as u8;
    let mut out = BraidedPoly::zero(d);
    for (w, c) in p.terms() {
        let word: Word = w.iter().map(|&u| n - u + 1).collect();
        out.insert(word, c.clone());
    }
    Ok(out)
}

/// One oriented homogeneous rule: the leading word rewrites to a strictly
/// deglex-smaller polynomial of the same degree.
#[derive(Clone, Debug)]
struct RewriteRule {
    lhs: Word,
    rhs: BTreeMap<Word, Scalar>,
}

/// The quantum Serre relations of type A_n oriented under deglex and
/// completed up to a degree bound. Once built the system is immutable;
/// normal-form queries are safe from multiple threads and memoize the
/// reductions of queried words.
pub struct RewriteSystem {
    datum: Arc<CartanDatum>,
    degree_bound: usize,
    rules: Vec<RewriteRule>,
    cache: Mutex<HashMap<Word, Arc<BTreeMap<Word, Scalar>>>>,
}

/// Completion stops after this many rules with a budget error; the Serre
/// ideal of type A_n at desk scale stays far below it.
const MAX_RULES: usize = 512;
/// Cap on full completion passes before giving up.
const MAX_PASSES: usize = 64;

/// Builds the rewriting system for the Serre ideal of the datum, resolving
/// all ambiguities whose overlap words fit within the degree bound.
pub fn build_rewrite_system(d: &CartanDatum, degree_bound: usize) -> Result<RewriteSystem> {
    if degree_bound < 2 {
        return Err(Error::BadInput(format!(
            "degree bound {degree_bound} is too small to hold any relation"
        )));
    }
    let datum = Arc::new(d.clone());
    let ctx = d.context();
    let one = Scalar::one(ctx);
    let q = d.q().clone();
    let n = d.n();
    let mut rules: Vec<RewriteRule> = Vec::new();

    // Adjacent Serre relations ad_c(x_i)^2(x_j) = 0 for |i - j| = 1 expand
    // to x_i^2 x_j - q_ij (1 + q) x_i x_j x_i + q q_ij^2 x_j x_i^2.
    for l in 1..n {
        let (a, b) = (l as u8, (l + 1) as u8);
        // i = l+1 > j = l: the leading word is x_{l+1}^2 x_l.
        let q_ij = d.q_ij(l + 1, l).clone();
        let mut rhs = BTreeMap::new();
        rhs.insert(vec![b, a, b], q_ij.mul(&one.add(&q)));
        rhs.insert(vec![a, b, b], q.mul(&q_ij).mul(&q_ij).neg());
        rules.push(RewriteRule {
            lhs: vec![b, b, a],
            rhs,
        });
        // i = l < j = l+1: solve the relation for the leading word
        // x_{l+1} x_l^2.
        let q_ij = d.q_ij(l, l + 1).clone();
        let scale = q.mul(&q_ij).mul(&q_ij).inv().expect("q factors are units");
        let mut rhs = BTreeMap::new();
        rhs.insert(vec![a, b, a], q_ij.mul(&one.add(&q)).mul(&scale));
        rhs.insert(vec![a, a, b], scale.neg());
        rules.push(RewriteRule {
            lhs: vec![b, a, a],
            rhs,
        });
    }
    // Distant pairs commute up to the braiding factor.
    for u in 1..=n {
        for v in 1..=n {
            if u >= v + 2 {
                let mut rhs = BTreeMap::new();
                rhs.insert(vec![v as u8, u as u8], d.q_ij(u, v).clone());
                rules.push(RewriteRule {
                    lhs: vec![u as u8, v as u8],
                    rhs,
                });
            }
        }
    }

    complete(&mut rules, degree_bound, ctx)?;
    rules.sort_by(|a, b| deglex(&a.lhs, &b.lhs));
    Ok(RewriteSystem {
        datum,
        degree_bound,
        rules,
        cache: Mutex::new(HashMap::new()),
    })
}

/// Degree-lexicographic comparison with x_1 < x_2 < ... < x_n.
fn deglex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The leftmost, lowest-index rule application position in w, if any.
fn find_reduction(rules: &[RewriteRule], w: &Word) -> Option<(usize, usize)> {
    for pos in 0..w.len() {
        for (idx, rule) in rules.iter().enumerate() {
            if w.len() - pos >= rule.lhs.len() && w[pos..pos + rule.lhs.len()] == rule.lhs[..] {
                return Some((idx, pos));
            }
        }
    }
    None
}

/// Applies one rule at one position, returning the substituted terms.
fn one_step(w: &Word, rule: &RewriteRule, pos: usize) -> Vec<(Word, Scalar)> {
    let mut out = Vec::with_capacity(rule.rhs.len());
    for (t, c) in &rule.rhs {
        let mut word = Vec::with_capacity(w.len() - rule.lhs.len() + t.len());
        word.extend_from_slice(&w[..pos]);
        word.extend_from_slice(t);
        word.extend_from_slice(&w[pos + rule.lhs.len()..]);
        out.push((word, c.clone()));
    }
    out
}

/// Fully reduces a term map under the rules. Terms are processed from the
/// deglex-largest down; every substitution strictly decreases the word, so
/// each distinct word is handled at most once.
fn reduce_terms(
    rules: &[RewriteRule],
    terms: impl IntoIterator<Item = (Word, Scalar)>,
    cache: Option<&Mutex<HashMap<Word, Arc<BTreeMap<Word, Scalar>>>>>,
) -> BTreeMap<Word, Scalar> {
    let mut work: BTreeMap<(usize, Word), Scalar> = BTreeMap::new();
    for (w, c) in terms {
        merge_term(&mut work, w, c);
    }
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    while let Some(((_, w), c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        if let Some(cache) = cache {
            if let Some(hit) = cache.lock().expect("rewrite cache poisoned").get(&w) {
                for (t, e) in hit.iter() {
                    let s = c.mul(e);
                    match out.entry(t.clone()) {
                        std::collections::btree_map::Entry::Vacant(en) => {
                            if !s.is_zero() {
                                en.insert(s);
                            }
                        }
                        std::collections::btree_map::Entry::Occupied(mut en) => {
                            let acc = en.get().add(&s);
                            if acc.is_zero() {
                                en.remove();
                            } else {
                                en.insert(acc);
                            }
                        }
                    }
                }
                continue;
            }
        }
        match find_reduction(rules, &w) {
            None => match out.entry(w) {
                std::collections::btree_map::Entry::Vacant(en) => {
                    en.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut en) => {
                    let acc = en.get().add(&c);
                    if acc.is_zero() {
                        en.remove();
                    } else {
                        en.insert(acc);
                    }
                }
            },
            Some((idx, pos)) => {
                for (word, e) in one_step(&w, &rules[idx], pos) {
                    merge_term(&mut work, word, c.mul(&e));
                }
            }
        }
    }
    out
}

fn merge_term(work: &mut BTreeMap<(usize, Word), Scalar>, w: Word, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let key = (w.len(), w);
    match work.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                e.insert(s);
            }
        }
    }
}

/// Orients a reduced nonzero homogeneous polynomial into a rule: the
/// deglex-leading word rewrites to the negated, leading-coefficient-scaled
/// tail.
fn orient(mut terms: BTreeMap<Word, Scalar>) -> RewriteRule {
    let lhs = terms
        .keys()
        .max_by(|a, b| deglex(a, b))
        .expect("nonzero polynomial")
        .clone();
    let lc = terms.remove(&lhs).expect("leading term present");
    let lc_inv = lc.inv().expect("leading coefficient is nonzero");
    let rhs = terms
        .into_iter()
        .map(|(w, c)| (w, c.mul(&lc_inv).neg()))
        .collect();
    RewriteRule { lhs, rhs }
}

/// All ambiguity words for the ordered rule pair (a, b): proper overlaps
/// (a suffix of a.lhs equals a prefix of b.lhs) and inclusions of b.lhs
/// inside a.lhs. Each entry carries the positions where a and b apply.
fn ambiguities(a: &RewriteRule, b: &RewriteRule, same: bool) -> Vec<(Word, usize, usize)> {
    let mut out = Vec::new();
    let (la, lb) = (a.lhs.len(), b.lhs.len());
    for k in 1..la.min(lb) {
        if a.lhs[la - k..] == b.lhs[..k] {
            let mut w = a.lhs.clone();
            w.extend_from_slice(&b.lhs[k..]);
            out.push((w, 0, la - k));
        }
    }
    if lb <= la {
        for p in 0..=la - lb {
            if same && p == 0 && lb == la {
                continue;
            }
            if a.lhs[p..p + lb] == b.lhs[..] {
                out.push((a.lhs.clone(), 0, p));
            }
        }
    }
    out
}

/// Knuth-Bendix style completion: resolve every ambiguity whose word fits
/// the degree bound, orienting nonzero S-polynomial residues into new
/// rules, and inter-reduce until stable.
fn complete(
    rules: &mut Vec<RewriteRule>,
    degree_bound: usize,
    ctx: &Arc<CycloContext>,
) -> Result<()> {
    for _pass in 0..MAX_PASSES {
        let mut changed = false;
        // Resolve ambiguities against the current snapshot.
        let mut idx_a = 0;
        while idx_a < rules.len() {
            let mut idx_b = 0;
            while idx_b < rules.len() {
                let pairs = ambiguities(&rules[idx_a], &rules[idx_b], idx_a == idx_b);
                for (w, pos_a, pos_b) in pairs {
                    if w.len() > degree_bound {
                        continue;
                    }
                    let left = one_step(&w, &rules[idx_a], pos_a);
                    let right = one_step(&w, &rules[idx_b], pos_b);
                    let nf_left = reduce_terms(rules, left, None);
                    let mut diff = nf_left;
                    for (word, c) in reduce_terms(rules, right, None) {
                        match diff.entry(word) {
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(c.neg());
                            }
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let s = e.get().sub(&c);
                                if s.is_zero() {
                                    e.remove();
                                } else {
                                    e.insert(s);
                                }
                            }
                        }
                    }
                    if !diff.is_empty() {
                        rules.push(orient(diff));
                        changed = true;
                        if rules.len() > MAX_RULES {
                            return Err(Error::BudgetExceeded(format!(
                                "rewrite completion produced more than {MAX_RULES} rules"
                            )));
                        }
                    }
                }
                idx_b += 1;
            }
            idx_a += 1;
        }
        // Inter-reduce: drop rules that became redundant and renormalize
        // the rest against their peers.
        let mut idx = 0;
        while idx < rules.len() {
            let rule = rules.remove(idx);
            let mut terms: BTreeMap<Word, Scalar> = rule.rhs.clone();
            for c in terms.values_mut() {
                *c = c.neg();
            }
            terms.insert(rule.lhs.clone(), Scalar::one(ctx));
            let nf = reduce_terms(rules, terms, None);
            if nf.is_empty() {
                // Redundant: already implied by the others.
                changed = true;
                continue;
            }
            let reoriented = orient(nf);
            if reoriented.lhs != rule.lhs || reoriented.rhs != rule.rhs {
                changed = true;
            }
            rules.insert(idx, reoriented);
            idx += 1;
        }
        if !changed {
            return Ok(());
        }
    }
    Err(Error::BudgetExceeded(format!(
        "rewrite completion did not stabilize within {MAX_PASSES} passes"
    )))
}

impl RewriteSystem {
    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// True when no rule applies anywhere in the word.
    pub fn is_normal_word(&self, w: &Word) -> bool {
        find_reduction(&self.rules, w).is_none()
    }

    /// The memoized normal form of a single word.
    fn word_nf(&self, w: &Word) -> Arc<BTreeMap<Word, Scalar>> {
        if let Some(hit) = self
            .cache
            .lock()
            .expect("rewrite cache poisoned")
            .get(w)
        {
            return Arc::clone(hit);
        }
        let ctx = self.datum.context();
        let nf = Arc::new(reduce_terms(
            &self.rules,
            [(w.clone(), Scalar::one(ctx))],
            Some(&self.cache),
        ));
        self.cache
            .lock()
            .expect("rewrite cache poisoned")
            .insert(w.clone(), Arc::clone(&nf));
        nf
    }

    /// The unique fully reduced representative of p modulo the Serre
    /// ideal. Exceeding the degree bound is an error: uniqueness is only
    /// certified below it.
    pub fn normal_form(&self, p: &BraidedPoly) -> Result<BraidedPoly> {
        assert!(
            *p.datum() == *self.datum,
            "polynomial over a different datum"
        );
        if p.degree() > self.degree_bound {
            return Err(Error::BudgetExceeded(format!(
                "degree {} exceeds the rewrite bound {}",
                p.degree(),
                self.degree_bound
            )));
        }
        let mut out = BraidedPoly::zero_shared(&self.datum);
        for (w, c) in p.terms() {
            let nf = self.word_nf(w);
            for (t, e) in nf.iter() {
                out.insert(t.clone(), c.mul(e));
            }
        }
        Ok(out)
    }
}

/// The skew-polynomial quotient attached to a mark e on the interval
/// (i, j): generators x_i..x_{j-1}, each adjacent pair straightened by the
/// q-factor the mark selects, distant pairs by the plain braiding factor.
pub struct SkewAlgebra {
    datum: Arc<CartanDatum>,
    mark: BinaryMark,
}

/// An element of a skew algebra in straightened form: exponent vectors
/// for x_i^{a_i} ... x_{j-1}^{a_{j-1}} with scalar coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewPoly {
    lo: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl SkewPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Option<&Scalar> {
        self.terms.get(exps)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(en) => {
                en.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut en) => {
                let s = en.get().add(&c);
                if s.is_zero() {
                    en.remove();
                } else {
                    en.insert(s);
                }
            }
        }
    }
}

impl SkewAlgebra {
    /// The algebra R_e for the given mark.
    pub fn new(d: &CartanDatum, mark: BinaryMark) -> SkewAlgebra {
        SkewAlgebra {
            datum: Arc::new(d.clone()),
            mark,
        }
    }

    pub fn mark(&self) -> &BinaryMark {
        &self.mark
    }

    /// Interval endpoints (i, j): generators are x_i..x_{j-1}.
    fn span(&self) -> (usize, usize) {
        let r = self.mark.root();
        (r.i(), r.j())
    }

    fn width(&self) -> usize {
        let (i, j) = self.span();
        j - i
    }

    /// The factor p with x_hi x_lo = p x_lo x_hi in this algebra, hi > lo.
    pub fn swap_factor(&self, hi: usize, lo: usize) -> Scalar {
        assert!(hi > lo, "swap factor needs a descending pair");
        if hi >= lo + 2 {
            return self.datum.q_ij(hi, lo).clone();
        }
        if self.mark.value(lo) {
            self.datum
                .q_ij(lo, hi)
                .inv()
                .expect("braiding entries are roots of unity")
        } else {
            self.datum.q_ij(hi, lo).clone()
        }
    }

    pub fn zero(&self) -> SkewPoly {
        SkewPoly {
            lo: self.span().0,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(&self) -> SkewPoly {
        let mut p = self.zero();
        p.insert(vec![0; self.width()], Scalar::one(self.datum.context()));
        p
    }

    pub fn monomial(&self, exps: Vec<u32>, c: Scalar) -> SkewPoly {
        assert_eq!(exps.len(), self.width(), "exponent vector width mismatch");
        let mut p = self.zero();
        p.insert(exps, c);
        p
    }

    pub fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            out.insert(e.clone(), c.neg());
        }
        out
    }

    pub fn scalar_mul(&self, a: &SkewPoly, s: &Scalar) -> SkewPoly {
        let mut out = self.zero();
        for (e, c) in &a.terms {
            out.insert(e.clone(), c.mul(s));
        }
        out
    }

    /// Straightened product: exponents add, and every letter of b crossing
    /// a strictly larger letter of a contributes one swap factor.
    pub fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        let lo = self.span().0;
        let width = self.width();
        let mut out = self.zero();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let mut factor = ca.mul(cb);
                for u in 0..width {
                    if eb[u] == 0 {
                        continue;
                    }
                    for v in u + 1..width {
                        if ea[v] == 0 {
                            continue;
                        }
                        let crossings = (eb[u] as i64) * (ea[v] as i64);
                        factor = factor.mul(
                            &self
                                .swap_factor(lo + v, lo + u)
                                .pow(crossings)
                                .expect("nonnegative power"),
                        );
                    }
                }
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(exps, factor);
            }
        }
        out
    }

    pub fn pow(&self, a: &SkewPoly, k: u32) -> SkewPoly {
        let mut out = self.unit();
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// The projection pi_e: letters outside the interval map to zero, the
    /// rest are straightened left to right.
    pub fn project(&self, p: &BraidedPoly) -> SkewPoly {
        assert!(
            *p.datum() == *self.datum,
            "polynomial over a different datum"
        );
        let (i, j) = self.span();
        let width = self.width();
        let mut out = self.zero();
        'word: for (w, c) in p.terms() {
            let mut exps = vec![0u32; width];
            let mut factor = c.clone();
            for &letter in w {
                let l = letter as usize;
                if l < i || l >= j {
                    continue 'word;
                }
                let u = l - i;
                for v in u + 1..width {
                    if exps[v] > 0 {
                        factor = factor.mul(
                            &self
                                .swap_factor(i + v, i + u)
                                .pow(exps[v] as i64)
                                .expect("nonnegative power"),
                        );
                    }
                }
                exps[u] += 1;
            }
            out.insert(exps, factor);
        }
        out
    }
}

/// Strategy for checking the PBW expansion of N-th powers of reverse root
/// vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReverseMode {
    /// Full normal-form computation in the Serre quotient: exponential in
    /// the degree but assumption-free.
    Rewrite,
    /// Projection into every skew algebra R_e plus a triangular solve for
    /// the coefficients: polynomial cost, scales to larger roots.
    SkewOracle,
}

/// Checks x_ji^N = sum over compositions c of (i, j) of t(c) times the
/// ordered product of x_{c_t c_{t+1}}^N, in the requested mode.
pub fn verify_mainreverse(
    d: &CartanDatum,
    r: Root,
    mode: ReverseMode,
    degree_bound: usize,
) -> Result<bool> {
    let nn = d.order_n() as u32;
    match mode {
        ReverseMode::Rewrite => {
            let rs = build_rewrite_system(d, degree_bound)?;
            let lhs = reverse_root_vector(d, r).pow(nn);
            let mut rhs = BraidedPoly::zero(d);
            for c in compositions(r.i(), r.j()) {
                let mut term = BraidedPoly::unit(d);
                for step in c.steps() {
                    term = term.mul(&root_vector(d, step).pow(nn));
                }
                rhs = rhs.add(&term.scalar_mul(&t_coefficient(d, &c)));
            }
            Ok(rs.normal_form(&lhs.sub(&rhs))?.is_zero())
        }
        ReverseMode::SkewOracle => {
            let (i, j) = (r.i(), r.j());
            if j == i + 1 {
                // x_i^N = x_i^N with the single coefficient t = 1.
                return Ok(true);
            }
            let xrev = reverse_root_vector(d, r);
            let width = j - i;
            let top = BinaryMark::all_ones(i, j);
            // Project the reverse root vector into every R_f. Away from
            // the all-ones mark it must vanish identically.
            let mut lambda = Scalar::zero(d.context());
            for f in all_marks(i, j) {
                let alg = SkewAlgebra::new(d, f.clone());
                let pf = alg.project(&xrev);
                if f == top {
                    let pn = alg.pow(&pf, nn);
                    if pn.support_len() > 1 {
                        return Err(Error::Internal(
                            "power of a one-line projection spread out".into(),
                        ));
                    }
                    if let Some(c) = pn.coeff(&vec![nn; width]) {
                        lambda = c.clone();
                    } else if !pn.is_zero() {
                        return Err(Error::Internal(
                            "projection power landed off the full monomial".into(),
                        ));
                    }
                } else if !pf.is_zero() {
                    return Ok(false);
                }
            }
            // Solve sum_{e <= f} t~_e tau_e = d_f with d_f zero away from
            // the all-ones mark, in increasing zero count.
            let mut marks = all_marks(i, j);
            marks.sort_by_key(|m| (m.zero_count(), m.clone()));
            let mut solved: Vec<(BinaryMark, Scalar)> = Vec::new();
            for f in marks {
                let mut s = if f == top {
                    lambda.clone()
                } else {
                    Scalar::zero(d.context())
                };
                for (e, te) in &solved {
                    if e.below(&f) {
                        s = s.sub(&te.mul(&tau_mark(d, e)));
                    }
                }
                let tf = s.div(&tau_mark(d, &f))?;
                solved.push((f, tf));
            }
            for (e, te) in &solved {
                if *te != t_mark(d, e) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Checks the degree-one expansion of a reverse root vector in the Serre
/// quotient:
///
///   x_ji = (-q)^{j-i-1} (prod_{i <= k < l < j} q_lk)
///          sum_{(i_1..i_r)} (q^{-1} - 1)^{r-2} x_{i_1 i_2} ... x_{i_{r-1} i_r}.
pub fn verify_degree1(d: &CartanDatum, r: Root, degree_bound: usize) -> Result<bool> {
    let rs = build_rewrite_system(d, degree_bound)?;
    let (i, j) = (r.i(), r.j());
    let ctx = d.context();
    let lhs = reverse_root_vector(d, r);
    let qinv_m1 = d.q().inv()?.sub(&Scalar::one(ctx));
    let mut sum = BraidedPoly::zero(d);
    for c in compositions(i, j) {
        let mut term = BraidedPoly::unit(d);
        for step in c.steps() {
            term = term.mul(&root_vector(d, step));
        }
        let coeff = qinv_m1
            .pow(c.len() as i64 - 2)
            .expect("nonnegative power");
        sum = sum.add(&term.scalar_mul(&coeff));
    }
    let mut pre = d
        .q()
        .neg()
        .pow((j - i - 1) as i64)
        .expect("nonnegative power");
    for k in i..j {
        for l in k + 1..j {
            pre = pre.mul(d.q_ij(l, k));
        }
    }
    Ok(rs.normal_form(&lhs.sub(&sum.scalar_mul(&pre)))?.is_zero())
}

/// Checks one root of the compatibility between the diagram action and the
/// twisted u-elements: u over the twist at (i, j) of the flipped family
/// equals the expansion of x_{~i ~j}^N with each x_{kl}^N replaced by
/// u_kl(mu), evaluated in the group algebra.
pub fn mainsystem1_check(d: &CartanDatum, mu: &ParamFamily, r: Root) -> Result<bool> {
    let image = sigma_action(d, mu)?;
    let twisted = d.twist();
    let u_twisted = u_elements(&twisted, &image);
    let lhs = &u_twisted[&r];
    let rev = d.reverse_root(r);
    let u = u_elements(d, mu);
    let ctx = d.context();
    let group = d.group();
    let mut rhs = GroupAlgebraElement::zero();
    for c in compositions(rev.i(), rev.j()) {
        let mut prod = GroupAlgebraElement::one(ctx, group);
        for step in c.steps() {
            prod = prod.mul(&u[&step], group);
        }
        rhs = rhs.add(&prod.scalar_mul(&t_coefficient(d, &c)));
    }
    Ok(lhs.sub(&rhs).is_zero())
}

/// Convenience used by tests and the verification suites: the braided
/// polynomial x_e^N for a mark e, the ordered product of the N-th powers
/// of the root vectors along omega^{-1}(e).
pub fn mark_power(d: &CartanDatum, e: &BinaryMark, nn: u32) -> BraidedPoly {
    let c = omega_inv(e);
    let mut out = BraidedPoly::unit(d);
    for step in c.steps() {
        out = out.mul(&root_vector(d, step).pow(nn));
    }
    out
}


#[cfg(test)]
mod rewrite_tests {
    use super::*;
    use crate::sampling::{free_chain, free_example, linking_example, minimal_datum};

    fn x(d: &CartanDatum, l: usize) -> BraidedPoly {
        BraidedPoly::generator(d, l).unwrap()
    }

    /// ad_c(x_i)^m(x_j) as iterated braided commutators.
    fn ad_pow(d: &CartanDatum, i: usize, m: u32, j: usize) -> BraidedPoly {
        let mut acc = x(d, j);
        for _ in 0..m {
            acc = x(d, i).braided_commutator(&acc);
        }
        acc
    }

    #[test]
    fn serre_relations_reduce_to_zero() {
        let d = free_chain(3);
        let rs = build_rewrite_system(&d, 6).unwrap();
        for (i, j) in [(1usize, 2usize), (2, 1), (2, 3), (3, 2)] {
            let rel = ad_pow(&d, i, 2, j);
            assert!(rs.normal_form(&rel).unwrap().is_zero(), "adjacent {i},{j}");
        }
        for (i, j) in [(1usize, 3usize), (3, 1)] {
            let rel = ad_pow(&d, i, 1, j);
            assert!(rs.normal_form(&rel).unwrap().is_zero(), "distant {i},{j}");
        }
    }

    #[test]
    fn rank_two_normal_word_counts_match_pbw_dimensions() {
        // Type A_2 with all roots of height <= 2: dimensions of the graded
        // pieces of the PBW basis are 1, 2, 4, 6, 9 in degrees 0..=4.
        let d = free_example();
        let rs = build_rewrite_system(&d, 6).unwrap();
        let expected = [1usize, 2, 4, 6, 9];
        for (deg, want) in expected.iter().enumerate() {
            let mut count = 0;
            let mut word = vec![1u8; deg];
            loop {
                if rs.is_normal_word(&word) {
                    count += 1;
                }
                // Odometer over {1, 2}^deg.
                let mut pos = deg;
                loop {
                    if pos == 0 {
                        break;
                    }
                    if word[pos - 1] == 1 {
                        word[pos - 1] = 2;
                        break;
                    }
                    word[pos - 1] = 1;
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
            }
            assert_eq!(count, *want, "degree {deg}");
        }
    }

    #[test]
    fn rank_three_normal_word_counts_match_pbw_dimensions() {
        // Type A_3: six roots of heights 1,1,1,2,2,3 give the Hilbert
        // series 1/((1-t)^3 (1-t^2)^2 (1-t^3)) = 1 + 3t + 8t^2 + 17t^3 +
        // 33t^4 + ...
        let d = minimal_datum(3, 3);
        let rs = build_rewrite_system(&d, 6).unwrap();
        let expected = [1usize, 3, 8, 17, 33];
        for (deg, want) in expected.iter().enumerate() {
            let mut count = 0;
            let total = 3usize.pow(deg as u32);
            for code in 0..total {
                let mut w = Vec::with_capacity(deg);
                let mut c = code;
                for _ in 0..deg {
                    w.push((c % 3 + 1) as u8);
                    c /= 3;
                }
                if rs.is_normal_word(&w) {
                    count += 1;
                }
            }
            assert_eq!(count, *want, "degree {deg}");
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear() {
        let d = free_chain(3);
        let rs = build_rewrite_system(&d, 8).unwrap();
        let p = reverse_root_vector(&d, Root::new(1, 4).unwrap())
            .mul(&x(&d, 2))
            .add(&x(&d, 3).pow(2).mul(&x(&d, 1)));
        let n1 = rs.normal_form(&p).unwrap();
        let n2 = rs.normal_form(&n1).unwrap();
        assert_eq!(n1, n2);
        let q = x(&d, 2).mul(&x(&d, 1)).scalar_mul(&Scalar::from_i64(d.context(), 4));
        let sum_nf = rs.normal_form(&p.add(&q)).unwrap();
        assert_eq!(sum_nf, n1.add(&rs.normal_form(&q).unwrap()));
    }

    #[test]
    fn normal_form_rejects_degrees_over_the_bound() {
        let d = free_example();
        let rs = build_rewrite_system(&d, 4).unwrap();
        let p = x(&d, 1).pow(5);
        assert!(matches!(
            rs.normal_form(&p),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn root_vectors_bracket_independently_of_the_split() {
        let d = free_chain(3);
        let rs = build_rewrite_system(&d, 6).unwrap();
        let x12 = root_vector(&d, Root::new(1, 2).unwrap());
        let x13 = root_vector(&d, Root::new(1, 3).unwrap());
        let x24 = root_vector(&d, Root::new(2, 4).unwrap());
        let x34 = root_vector(&d, Root::new(3, 4).unwrap());
        let via_2 = x12.braided_commutator(&x24);
        let via_3 = x13.braided_commutator(&x34);
        assert_eq!(
            rs.normal_form(&via_2).unwrap(),
            rs.normal_form(&via_3).unwrap()
        );
        assert_eq!(
            rs.normal_form(&via_2).unwrap(),
            rs.normal_form(&root_vector(&d, Root::new(1, 4).unwrap())).unwrap()
        );
        let x42 = reverse_root_vector(&d, Root::new(2, 4).unwrap());
        let x21 = reverse_root_vector(&d, Root::new(1, 2).unwrap());
        let x43 = reverse_root_vector(&d, Root::new(3, 4).unwrap());
        let x31 = reverse_root_vector(&d, Root::new(1, 3).unwrap());
        let rev_via_2 = x42.braided_commutator(&x21);
        let rev_via_3 = x43.braided_commutator(&x31);
        assert_eq!(
            rs.normal_form(&rev_via_2).unwrap(),
            rs.normal_form(&rev_via_3).unwrap()
        );
        assert_eq!(
            rs.normal_form(&rev_via_2).unwrap(),
            rs.normal_form(&reverse_root_vector(&d, Root::new(1, 4).unwrap()))
                .unwrap()
        );
    }

    #[test]
    fn reverse_power_expansion_verifies_in_rank_two() {
        for d in [free_example(), linking_example(), minimal_datum(2, 3)] {
            let r = Root::new(1, 3).unwrap();
            assert_eq!(
                verify_mainreverse(&d, r, ReverseMode::Rewrite, 9).unwrap(),
                true
            );
        }
    }

    #[test]
    fn degree_one_expansion_verifies_for_small_roots() {
        let d2 = free_example();
        assert!(verify_degree1(&d2, Root::new(1, 3).unwrap(), 5).unwrap());
        let d3 = free_chain(3);
        for r in d3.positive_roots() {
            assert!(verify_degree1(&d3, r, 6).unwrap(), "root {r}");
        }
    }
}

#[cfg(test)]
mod skew_tests {
    use super::*;
    use crate::sampling::{free_chain, free_example, linking_example, minimal_datum};

    fn x(d: &CartanDatum, l: usize) -> BraidedPoly {
        BraidedPoly::generator(d, l).unwrap()
    }

    #[test]
    fn projection_is_an_algebra_map() {
        let d = free_chain(3);
        let a = root_vector(&d, Root::new(1, 3).unwrap())
            .add(&x(&d, 3).mul(&x(&d, 1)));
        let b = reverse_root_vector(&d, Root::new(1, 4).unwrap())
            .add(&BraidedPoly::unit(&d).scalar_mul(&Scalar::from_i64(d.context(), 2)));
        for f in all_marks(1, 4) {
            let alg = SkewAlgebra::new(&d, f);
            let lhs = alg.project(&a.mul(&b));
            let rhs = alg.mul(&alg.project(&a), &alg.project(&b));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projection_drops_letters_outside_the_interval() {
        let d = free_chain(3);
        // Marks on (1, 3) span generators x_1, x_2 only.
        for f in all_marks(1, 3) {
            let alg = SkewAlgebra::new(&d, f);
            assert!(alg.project(&x(&d, 3)).is_zero());
            assert!(alg.project(&x(&d, 1).mul(&x(&d, 3))).is_zero());
            assert!(!alg.project(&x(&d, 1).mul(&x(&d, 2))).is_zero());
        }
    }

    #[test]
    fn forward_root_vectors_vanish_under_marks_with_an_interior_one() {
        let d = free_chain(4);
        for f in all_marks(1, 5) {
            let alg = SkewAlgebra::new(&d, f.clone());
            for r in d.positive_roots() {
                if r.height() < 2 {
                    continue;
                }
                let hit = (r.i()..=r.j() - 2).any(|l| f.value(l));
                if hit {
                    assert!(
                        alg.project(&root_vector(&d, r)).is_zero(),
                        "x_{r} under {f:?}"
                    );
                }
                let hit_zero = (r.i()..=r.j() - 2).any(|l| !f.value(l));
                if hit_zero {
                    assert!(
                        alg.project(&reverse_root_vector(&d, r)).is_zero(),
                        "reverse x_{r} under {f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn straight_marks_project_root_vectors_onto_a_line() {
        // With f identically zero on [k, l-2], pi_f(x_kl) =
        // (1 - q^{-1})^{l-k-1} x_k ... x_{l-1}.
        let d = free_chain(3);
        let ctx = d.context();
        let scale_base = Scalar::one(ctx).sub(&d.q().inv().unwrap());
        for f in all_marks(1, 4) {
            let alg = SkewAlgebra::new(&d, f.clone());
            for r in d.positive_roots() {
                if (r.i()..=r.j().saturating_sub(2)).any(|l| f.value(l)) {
                    continue;
                }
                let p = alg.project(&root_vector(&d, r));
                let expected_coeff = scale_base
                    .pow(r.height() as i64 - 1)
                    .unwrap();
                let mut exps = vec![0u32; 3];
                for l in r.i()..r.j() {
                    exps[l - 1] = 1;
                }
                assert_eq!(p.support_len(), 1, "x_{r} under {f:?}");
                assert_eq!(p.coeff(&exps), Some(&expected_coeff));
            }
        }
    }

    #[test]
    fn top_mark_projects_reverse_root_vectors_onto_a_line() {
        // pi_(1)(x_ji) = (q - 1)^{j-i-1} (prod_{i<=k<l<j} q_lk) x_i...x_{j-1}.
        let d = free_chain(3);
        let ctx = d.context();
        let qm1 = d.q().sub(&Scalar::one(ctx));
        for r in d.positive_roots() {
            if r.height() < 2 {
                continue;
            }
            let (i, j) = (r.i(), r.j());
            let alg = SkewAlgebra::new(&d, BinaryMark::all_ones(i, j));
            let p = alg.project(&reverse_root_vector(&d, r));
            let mut expected = qm1.pow(r.height() as i64 - 1).unwrap();
            for k in i..j {
                for l in k + 1..j {
                    expected = expected.mul(d.q_ij(l, k));
                }
            }
            let exps = vec![1u32; j - i];
            assert_eq!(p.support_len(), 1, "reverse x_{r}");
            assert_eq!(p.coeff(&exps), Some(&expected));
        }
        // Height-two instance pinned by hand: pi_(1)(x_{i+2,i}) =
        // (q - 1) q_{i+1,i} x_i x_{i+1}.
        let r = Root::new(1, 3).unwrap();
        let alg = SkewAlgebra::new(&d, BinaryMark::all_ones(1, 3));
        let p = alg.project(&reverse_root_vector(&d, r));
        assert_eq!(
            p.coeff(&vec![1, 1]),
            Some(&qm1.mul(d.q_ij(2, 1)))
        );
    }

    #[test]
    fn ordered_products_power_up_with_crossing_factors() {
        // (x_i ... x_{m})^N = prod_{k<l} p_lk^{N(N-1)/2} x_i^N ... x_m^N
        // in any of the skew algebras, for any exponent N.
        for (d, i, j) in [
            (free_example(), 1usize, 3usize),
            (free_chain(3), 1, 4),
            (free_chain(4), 1, 5),
        ] {
            for f in all_marks(i, j) {
                let alg = SkewAlgebra::new(&d, f);
                let width = j - i;
                let mut line = alg.unit();
                for u in 0..width {
                    let mut exps = vec![0u32; width];
                    exps[u] = 1;
                    line = alg.mul(&line, &alg.monomial(exps, Scalar::one(d.context())));
                }
                for nn in [2u32, 3, 5] {
                    let lhs = alg.pow(&line, nn);
                    let mut factor = Scalar::one(d.context());
                    let half = (nn as i64) * (nn as i64 - 1) / 2;
                    for u in 0..width {
                        for v in u + 1..width {
                            factor = factor.mul(
                                &alg.swap_factor(i + v, i + u).pow(half).unwrap(),
                            );
                        }
                    }
                    let rhs = alg.monomial(vec![nn; width], factor);
                    assert_eq!(lhs, rhs, "width {width}, exponent {nn}");
                }
            }
        }
    }

    #[test]
    fn mark_powers_project_triangularly() {
        // pi_f(x_e^N) = tau_e x_i^N ... x_{j-1}^N when e <= f, else 0.
        for (d, i, j) in [(minimal_datum(2, 5), 1usize, 3usize), (free_chain(3), 1, 4)] {
            let nn = d.order_n() as u32;
            let width = j - i;
            for e in all_marks(i, j) {
                let pe = mark_power(&d, &e, nn);
                for f in all_marks(i, j) {
                    let alg = SkewAlgebra::new(&d, f.clone());
                    let p = alg.project(&pe);
                    if e.below(&f) {
                        let exps = vec![nn; width];
                        assert_eq!(p.support_len(), 1, "e={e:?} f={f:?}");
                        assert_eq!(
                            p.coeff(&exps),
                            Some(&tau_mark(&d, &e)),
                            "e={e:?} f={f:?}"
                        );
                    } else {
                        assert!(p.is_zero(), "e={e:?} f={f:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn reverse_powers_project_onto_the_top_coefficient() {
        // pi_(1)(x_ji^N) = t_(1) x_i^N ... x_{j-1}^N.
        for (d, roots) in [
            (minimal_datum(2, 3), vec![Root::new(1, 3).unwrap()]),
            (minimal_datum(2, 5), vec![Root::new(1, 3).unwrap()]),
            (
                free_chain(3),
                vec![
                    Root::new(1, 3).unwrap(),
                    Root::new(2, 4).unwrap(),
                    Root::new(1, 4).unwrap(),
                ],
            ),
        ] {
            let nn = d.order_n() as u32;
            for r in roots {
                let (i, j) = (r.i(), r.j());
                let top = BinaryMark::all_ones(i, j);
                let alg = SkewAlgebra::new(&d, top.clone());
                let p = alg.pow(&alg.project(&reverse_root_vector(&d, r)), nn);
                let exps = vec![nn; j - i];
                assert_eq!(p.support_len(), 1, "root {r}");
                assert_eq!(p.coeff(&exps), Some(&t_mark(&d, &top)), "root {r}");
            }
        }
    }

    #[test]
    fn skew_oracle_confirms_the_reverse_power_expansion() {
        for d in [free_example(), linking_example(), minimal_datum(2, 5)] {
            let r = Root::new(1, 3).unwrap();
            assert!(verify_mainreverse(&d, r, ReverseMode::SkewOracle, 9).unwrap());
        }
        let d = free_chain(3);
        for r in d.positive_roots() {
            assert!(
                verify_mainreverse(&d, r, ReverseMode::SkewOracle, 12).unwrap(),
                "root {r}"
            );
        }
    }

    #[test]
    fn both_verification_modes_agree_in_rank_two() {
        let d = free_example();
        let r = Root::new(1, 3).unwrap();
        let a = verify_mainreverse(&d, r, ReverseMode::Rewrite, 9).unwrap();
        let b = verify_mainreverse(&d, r, ReverseMode::SkewOracle, 9).unwrap();
        assert_eq!(a, b);
        assert!(a);
    }
}
