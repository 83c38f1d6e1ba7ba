//! Finite abelian groups presented by cyclic factor lists, their
//! characters, group algebras, tensor squares, and constrained
//! isomorphism enumeration.
//!
//! A group is (m_1, ..., m_k) with each m_t >= 2; elements and characters
//! are exponent tuples against that same factor list. Characters evaluate
//! through a fixed cyclotomic context whose conductor is a multiple of
//! the group exponent.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::cyclo::{CycloContext, Scalar};
use crate::params::compositions;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
}

/// Exponent tuple (a_1, ..., a_k), componentwise reduced mod the factors
/// of the group that created it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    exp: Vec<u64>,
}

impl GroupElement {
    pub fn exps(&self) -> &[u64] {
        &self.exp
    }
}

/// Character in coordinates dual to the factor list:
/// chi(g) = zeta_L^(sum_t a_t b_t L/m_t).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Character {
    exp: Vec<u64>,
}

impl Character {
    pub fn exps(&self) -> &[u64] {
        &self.exp
    }
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<FiniteAbelianGroup> {
        if factors.iter().any(|&m| m < 2) {
            return Err(Error::Structural(format!(
                "cyclic factors must all be >= 2, got {:?}",
                factors
            )));
        }
        let order: u128 = factors.iter().map(|&m| m as u128).product();
        if order > u64::MAX as u128 {
            return Err(Error::Structural("group order overflows u64".into()));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &m| num_integer::lcm(acc, m))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            exp: vec![0; self.factors.len()],
        }
    }

    fn check_len(&self, len: usize, what: &str) -> Result<()> {
        if len != self.factors.len() {
            return Err(Error::Structural(format!(
                "{what} has {len} components but the group has {} factors",
                self.factors.len()
            )));
        }
        Ok(())
    }

    /// Builds an element from possibly unreduced (or negative) exponents.
    pub fn try_element(&self, exps: &[i64]) -> Result<GroupElement> {
        self.check_len(exps.len(), "element")?;
        let exp = exps
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| a.rem_euclid(m as i64) as u64)
            .collect();
        Ok(GroupElement { exp })
    }

    /// Like `try_element` but panics on a length mismatch; for internal
    /// construction where the shape is known.
    pub fn element(&self, exps: &[i64]) -> GroupElement {
        self.try_element(exps).expect("element shape mismatch")
    }

    /// Panics when the element does not belong to this group's shape;
    /// all elements are created reduced, so only lengths can disagree.
    fn check_member(&self, a: &GroupElement) {
        assert_eq!(
            a.exp.len(),
            self.factors.len(),
            "element from a different group"
        );
        debug_assert!(a.exp.iter().zip(&self.factors).all(|(&x, &m)| x < m));
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.check_member(a);
        self.check_member(b);
        let exp = a
            .exp
            .iter()
            .zip(&b.exp)
            .zip(&self.factors)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        GroupElement { exp }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        self.check_member(a);
        let exp = a
            .exp
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        GroupElement { exp }
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        self.check_member(a);
        let exp = a
            .exp
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| {
                let r = (x as i128 * k as i128).rem_euclid(m as i128);
                r as u64
            })
            .collect();
        GroupElement { exp }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.exp.iter().all(|&x| x == 0)
    }

    /// Exact multiplicative order: lcm_t m_t / gcd(a_t, m_t).
    pub fn order_of(&self, a: &GroupElement) -> u64 {
        self.check_member(a);
        a.exp
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| m / num_integer::gcd(x, m))
            .fold(1, num_integer::lcm)
    }

    /// All elements in lexicographic exponent order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut cur = vec![0u64; self.factors.len()];
        loop {
            out.push(GroupElement { exp: cur.clone() });
            let mut t = self.factors.len();
            loop {
                if t == 0 {
                    return out;
                }
                t -= 1;
                cur[t] += 1;
                if cur[t] < self.factors[t] {
                    break;
                }
                cur[t] = 0;
                if t == 0 {
                    return out;
                }
            }
            // carry handled; continue from most significant changed digit
            for v in cur[t + 1..].iter_mut() {
                *v = 0;
            }
        }
    }

    pub fn try_character(&self, exps: &[i64]) -> Result<Character> {
        self.check_len(exps.len(), "character")?;
        let exp = exps
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| a.rem_euclid(m as i64) as u64)
            .collect();
        Ok(Character { exp })
    }

    pub fn character(&self, exps: &[i64]) -> Character {
        self.try_character(exps).expect("character shape mismatch")
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            exp: vec![0; self.factors.len()],
        }
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        let exp = a
            .exp
            .iter()
            .zip(&b.exp)
            .zip(&self.factors)
            .map(|((&x, &y), &m)| (x + y) % m)
            .collect();
        Character { exp }
    }

    pub fn char_pow(&self, a: &Character, k: i64) -> Character {
        let exp = a
            .exp
            .iter()
            .zip(&self.factors)
            .map(|(&x, &m)| (x as i128 * k as i128).rem_euclid(m as i128) as u64)
            .collect();
        Character { exp }
    }

    pub fn char_is_trivial(&self, a: &Character) -> bool {
        a.exp.iter().all(|&x| x == 0)
    }

    /// chi(g) = zeta_L^(sum_t a_t b_t L/m_t); the conductor of `ctx`
    /// must be a multiple of the group exponent.
    pub fn char_eval(&self, ctx: &Arc<CycloContext>, chi: &Character, g: &GroupElement) -> Scalar {
        self.check_member(g);
        assert_eq!(chi.exp.len(), self.factors.len(), "character from a different group");
        let cond = ctx.conductor();
        assert_eq!(
            cond % self.exponent().max(1),
            0,
            "conductor does not admit the group exponent"
        );
        let mut e: u128 = 0;
        for ((&a, &b), &m) in g.exp.iter().zip(&chi.exp).zip(&self.factors) {
            e += a as u128 * b as u128 % m as u128 * (cond / m) as u128;
            e %= cond as u128;
        }
        Scalar::root_of_unity(ctx, cond, e as i64).expect("conductor divides itself")
    }
}

/// Finitely supported k[Γ] element; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<GroupElement, Scalar>,
}

impl GroupAlgebraElement {
    pub fn zero() -> GroupAlgebraElement {
        GroupAlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(g: GroupElement, c: Scalar) -> GroupAlgebraElement {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(g, c);
        }
        GroupAlgebraElement { terms }
    }

    /// The unit 1·identity.
    pub fn one(ctx: &Arc<CycloContext>, group: &FiniteAbelianGroup) -> GroupAlgebraElement {
        GroupAlgebraElement::from_term(group.identity(), Scalar::one(ctx))
    }

    /// 1 - g, the recurring telescoping factor.
    pub fn one_minus(
        ctx: &Arc<CycloContext>,
        group: &FiniteAbelianGroup,
        g: &GroupElement,
    ) -> GroupAlgebraElement {
        GroupAlgebraElement::one(ctx, group).sub(&GroupAlgebraElement::from_term(
            g.clone(),
            Scalar::one(ctx),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Scalar)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, g: &GroupElement) -> Option<&Scalar> {
        self.terms.get(g)
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            match terms.get_mut(g) {
                Some(v) => {
                    let s = v.add(c);
                    if s.is_zero() {
                        terms.remove(g);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    terms.insert(g.clone(), c.clone());
                }
            }
        }
        GroupAlgebraElement { terms }
    }

    pub fn neg(&self) -> GroupAlgebraElement {
        GroupAlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, s: &Scalar) -> GroupAlgebraElement {
        if s.is_zero() {
            return GroupAlgebraElement::zero();
        }
        GroupAlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (g.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Convolution product in k[Γ].
    pub fn mul(
        &self,
        other: &GroupAlgebraElement,
        group: &FiniteAbelianGroup,
    ) -> GroupAlgebraElement {
        let mut acc = GroupAlgebraElement::zero();
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                let gh = group.mul(g, h);
                let cd = c.mul(d);
                acc = acc.add(&GroupAlgebraElement::from_term(gh, cd));
            }
        }
        acc
    }

    /// The coalgebra map determined by g -> g ⊗ g.
    pub fn coproduct(&self) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| ((g.clone(), g.clone()), c.clone()))
                .collect(),
        }
    }
}

/// Finitely supported element of k[Γ] ⊗ k[Γ].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(GroupElement, GroupElement), Scalar>,
}

impl TensorElement {
    pub fn zero() -> TensorElement {
        TensorElement {
            terms: BTreeMap::new(),
        }
    }

    /// a ⊗ b for group algebra factors, bilinearly.
    pub fn from_factors(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> TensorElement {
        let mut terms = BTreeMap::new();
        for (g, c) in &a.terms {
            for (h, d) in &b.terms {
                let cd = c.mul(d);
                if !cd.is_zero() {
                    terms.insert((g.clone(), h.clone()), cd);
                }
            }
        }
        TensorElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GroupElement, GroupElement), &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            match terms.get_mut(k) {
                Some(v) => {
                    let s = v.add(c);
                    if s.is_zero() {
                        terms.remove(k);
                    } else {
                        *v = s;
                    }
                }
                None => {
                    terms.insert(k.clone(), c.clone());
                }
            }
        }
        TensorElement { terms }
    }

    pub fn neg(&self) -> TensorElement {
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, s: &Scalar) -> TensorElement {
        if s.is_zero() {
            return TensorElement::zero();
        }
        TensorElement {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.mul(s)))
                .collect(),
        }
    }

    /// Componentwise product (a⊗b)(c⊗d) = ac ⊗ bd.
    pub fn mul(&self, other: &TensorElement, group: &FiniteAbelianGroup) -> TensorElement {
        let mut acc = TensorElement::zero();
        for ((g1, g2), c) in &self.terms {
            for ((h1, h2), d) in &other.terms {
                let k = (group.mul(g1, h1), group.mul(g2, h2));
                let cd = c.mul(d);
                if cd.is_zero() {
                    continue;
                }
                let mut t = TensorElement::zero();
                t.terms.insert(k, cd);
                acc = acc.add(&t);
            }
        }
        acc
    }
}

/// Homomorphism between groups-with-factor-lists, given by the images of
/// the source generators e_1, ..., e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHomomorphism {
    images: Vec<GroupElement>,
}

impl GroupHomomorphism {
    pub fn new(images: Vec<GroupElement>) -> GroupHomomorphism {
        GroupHomomorphism { images }
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    /// Well-definedness: the image of each generator must have order
    /// dividing that generator's factor.
    pub fn is_well_defined(&self, src: &FiniteAbelianGroup, dst: &FiniteAbelianGroup) -> bool {
        self.images.len() == src.rank()
            && self
                .images
                .iter()
                .zip(src.factors())
                .all(|(img, &m)| m % dst.order_of(img) == 0)
    }

    pub fn apply(&self, dst: &FiniteAbelianGroup, a: &GroupElement) -> GroupElement {
        assert_eq!(a.exps().len(), self.images.len(), "element shape mismatch");
        let mut out = dst.identity();
        for (img, &e) in self.images.iter().zip(a.exps()) {
            out = dst.mul(&out, &dst.pow(img, e as i64));
        }
        out
    }

    /// Bijectivity via the size of the generated subgroup.
    pub fn is_bijective(&self, src: &FiniteAbelianGroup, dst: &FiniteAbelianGroup) -> bool {
        src.order() == dst.order() && subgroup_order(dst, &self.images) == dst.order()
    }
}

/// Order of the subgroup generated by `gens`.
fn subgroup_order(group: &FiniteAbelianGroup, gens: &[GroupElement]) -> u64 {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(group.identity());
    let mut frontier = vec![group.identity()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = group.mul(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len() as u64
}

/// All bijective homomorphisms src -> dst sending a to b for every
/// constraint pair (a, b), in lexicographic order of image tuples.
///
/// Brute force over generator images, pruned by element orders, by the
/// largest subgroup still reachable, and by constraints as soon as all
/// generators they involve are assigned. Feasible at the supported
/// scale (|Γ| <= 200).
pub fn enumerate_isomorphisms(
    src: &FiniteAbelianGroup,
    dst: &FiniteAbelianGroup,
    constraints: &[(GroupElement, GroupElement)],
) -> Vec<GroupHomomorphism> {
    if src.order() != dst.order() {
        return Vec::new();
    }
    // Constraint (a, b) can be checked once generators 1..=depth(a) are
    // assigned, where depth is the last nonzero coordinate of a.
    let mut by_depth: Vec<Vec<(GroupElement, GroupElement)>> = vec![Vec::new(); src.rank() + 1];
    for (a, b) in constraints {
        assert_eq!(a.exps().len(), src.rank(), "constraint source shape");
        assert_eq!(b.exps().len(), dst.rank(), "constraint target shape");
        let depth = a
            .exps()
            .iter()
            .rposition(|&x| x != 0)
            .map(|p| p + 1)
            .unwrap_or(0);
        by_depth[depth].push((a.clone(), b.clone()));
    }
    // phi(identity) = identity must hold for depth-0 constraints.
    for (_, b) in &by_depth[0] {
        if !dst.is_identity(b) {
            return Vec::new();
        }
    }

    let all = dst.elements();
    let candidates: Vec<Vec<GroupElement>> = src
        .factors()
        .iter()
        .map(|&m| {
            all.iter()
                .filter(|y| m % dst.order_of(y) == 0)
                .cloned()
                .collect()
        })
        .collect();

    // Maximal possible growth of the generated subgroup from depth k on.
    let tail_bound: Vec<u128> = {
        let mut v = vec![1u128; src.rank() + 1];
        for t in (0..src.rank()).rev() {
            v[t] = v[t + 1] * src.factors()[t] as u128;
        }
        v
    };

    let mut out = Vec::new();
    let mut images: Vec<GroupElement> = Vec::with_capacity(src.rank());
    dfs(
        src,
        dst,
        &candidates,
        &by_depth,
        &tail_bound,
        &mut images,
        &mut out,
    );
    out
}

fn dfs(
    src: &FiniteAbelianGroup,
    dst: &FiniteAbelianGroup,
    candidates: &[Vec<GroupElement>],
    by_depth: &[Vec<(GroupElement, GroupElement)>],
    tail_bound: &[u128],
    images: &mut Vec<GroupElement>,
    out: &mut Vec<GroupHomomorphism>,
) {
    let k = images.len();
    if k == src.rank() {
        let phi = GroupHomomorphism::new(images.clone());
        if phi.is_bijective(src, dst) {
            out.push(phi);
        }
        return;
    }
    'cand: for y in &candidates[k] {
        images.push(y.clone());
        // Constraints fully determined by the first k+1 generators.
        for (a, b) in &by_depth[k + 1] {
            let mut img = dst.identity();
            for (im, &e) in images.iter().zip(a.exps()) {
                img = dst.mul(&img, &dst.pow(im, e as i64));
            }
            if &img != b {
                images.pop();
                continue 'cand;
            }
        }
        // Surjectivity still possible?
        let reach = subgroup_order(dst, images) as u128 * tail_bound[k + 1];
        if reach < dst.order() as u128 {
            images.pop();
            continue;
        }
        dfs(src, dst, candidates, by_depth, tail_bound, images, out);
        images.pop();
    }
}

/// Checks the group algebra identity
///   Σ_{(k_1..k_r) ∈ I_1m} (-1)^r (1 - h_{k_{r-1},k_r})
///     = Σ_{(k_1..k_r) ∈ I_1m} (-1)^r (1 - h_{k_1,k_1+1}) ··· (1 - h_{k_{r-1},k_{r-1}+1})
/// for a family h_{st} (1 <= s < t <= m) satisfying the cocycle-style
/// precondition h_{rs} h_{s,s+1} = h_{r,s+1} for r ∈ {1, 2}.
pub fn telescoping_sum_check(
    ctx: &Arc<CycloContext>,
    group: &FiniteAbelianGroup,
    m: usize,
    h: &dyn Fn(usize, usize) -> GroupElement,
) -> Result<bool> {
    if m < 2 {
        return Err(Error::BadInput("telescoping check needs m >= 2".into()));
    }
    for r in 1..=2usize {
        for s in (r + 1)..m {
            if group.mul(&h(r, s), &h(s, s + 1)) != h(r, s + 1) {
                return Err(Error::BadInput(format!(
                    "h({r},{s})·h({s},{}) != h({r},{}): family is not multiplicative",
                    s + 1,
                    s + 1
                )));
            }
        }
    }
    let one = Scalar::one(ctx);
    let sign = |r: usize| {
        if r % 2 == 0 {
            one.clone()
        } else {
            one.neg()
        }
    };
    let mut lhs = GroupAlgebraElement::zero();
    let mut rhs = GroupAlgebraElement::zero();
    for c in compositions(1, m) {
        let pts = c.points();
        let r = c.len();
        let last = GroupAlgebraElement::one_minus(ctx, group, &h(pts[r - 2], pts[r - 1]));
        lhs = lhs.add(&last.scalar_mul(&sign(r)));

        let mut prod = GroupAlgebraElement::one(ctx, group);
        for &kt in &pts[..r - 1] {
            let f = GroupAlgebraElement::one_minus(ctx, group, &h(kt, kt + 1));
            prod = prod.mul(&f, group);
        }
        rhs = rhs.add(&prod.scalar_mul(&sign(r)));
    }
    Ok(lhs == rhs)
}
