//! Root parameter families mu and their combinatorics.
//!
//! Positive roots of type A_n are intervals (i, j) with 1 <= i < j <= n+1.
//! A family mu assigns a scalar to every root; the group algebra elements
//! u_ij(mu), the normalization map, the diagram-flip action, and the PBW
//! coefficients t(c) for N-th powers of reverse root vectors are all
//! computed here. Compositions of an interval and binary marks on it are
//! the indexing combinatorics shared by those operations.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cyclo::{CycloContext, Scalar};
use crate::datum::{CartanDatum, Root};
use crate::group::{GroupAlgebraElement, TensorElement};
use crate::{Error, Result};

/// A strictly increasing integer sequence (i_1, ..., i_r) with fixed
/// endpoints; the index set I_ij runs over all of these with i_1 = i,
/// i_r = j.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(points: Vec<usize>) -> Result<Composition> {
        if points.len() < 2 || !points.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::BadInput(format!(
                "not a strictly increasing sequence of length >= 2: {:?}",
                points
            )));
        }
        Ok(Composition(points))
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    /// Number of entries r.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// Consecutive pairs (i_t, i_{t+1}) as roots.
    pub fn steps(&self) -> impl Iterator<Item = Root> + '_ {
        self.0.windows(2).map(|w| Root::new(w[0], w[1]).unwrap())
    }
}

/// All of I_ij in lexicographic order of the point sequences.
pub fn compositions(i: usize, j: usize) -> Vec<Composition> {
    assert!(i < j, "compositions need i < j");
    let interior: Vec<usize> = ((i + 1)..j).collect();
    let mut out = Vec::with_capacity(1 << interior.len());
    for mask in 0u64..(1 << interior.len()) {
        let mut pts = vec![i];
        for (b, &p) in interior.iter().enumerate() {
            if mask >> b & 1 == 1 {
                pts.push(p);
            }
        }
        pts.push(j);
        out.push(Composition(pts));
    }
    out.sort();
    out
}

/// A function e : [i, j-2] -> {0, 1} attached to the root (i, j), as used
/// to index the skew group algebras R_e.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BinaryMark {
    lo: usize,
    bits: Vec<bool>,
}

impl BinaryMark {
    /// Mark on [i, j-2] from explicit bits; bits.len() must be j-i-1.
    pub fn new(i: usize, j: usize, bits: Vec<bool>) -> Result<BinaryMark> {
        if j < i + 2 || bits.len() != j - i - 1 {
            return Err(Error::BadInput(format!(
                "mark on ({i},{j}) needs exactly {} bits, got {}",
                j.saturating_sub(i + 1),
                bits.len()
            )));
        }
        Ok(BinaryMark { lo: i, bits })
    }

    /// The all-ones mark (1) on the root (i, j).
    pub fn all_ones(i: usize, j: usize) -> BinaryMark {
        BinaryMark {
            lo: i,
            bits: vec![true; j - i - 1],
        }
    }

    /// The all-zeros mark (0) on the root (i, j).
    pub fn all_zeros(i: usize, j: usize) -> BinaryMark {
        BinaryMark {
            lo: i,
            bits: vec![false; j - i - 1],
        }
    }

    /// Domain endpoints [lo, hi] = [i, j-2].
    pub fn domain(&self) -> (usize, usize) {
        (self.lo, self.lo + self.bits.len() - 1)
    }

    /// The root (i, j) this mark is attached to.
    pub fn root(&self) -> Root {
        Root::new(self.lo, self.lo + self.bits.len() + 1).unwrap()
    }

    pub fn value(&self, l: usize) -> bool {
        assert!(
            l >= self.lo && l < self.lo + self.bits.len(),
            "mark evaluated outside its domain"
        );
        self.bits[l - self.lo]
    }

    /// |e| = number of zeros.
    pub fn zero_count(&self) -> usize {
        self.bits.iter().filter(|b| !**b).count()
    }

    /// Positions l with e(l) = 0.
    pub fn zero_positions(&self) -> Vec<usize> {
        (0..self.bits.len())
            .filter(|&k| !self.bits[k])
            .map(|k| self.lo + k)
            .collect()
    }

    /// Partial order: e <= f iff every zero of e is a zero of f.
    pub fn below(&self, other: &BinaryMark) -> bool {
        assert_eq!(self.lo, other.lo);
        assert_eq!(self.bits.len(), other.bits.len());
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(e, f)| *e || !*f)
    }
}

/// All 2^(j-i-1) marks on the root (i, j), in a fixed deterministic order.
pub fn all_marks(i: usize, j: usize) -> Vec<BinaryMark> {
    assert!(j >= i + 2);
    let len = j - i - 1;
    let mut out = Vec::with_capacity(1 << len);
    for mask in 0u64..(1 << len) {
        let bits = (0..len).map(|b| mask >> b & 1 == 1).collect();
        out.push(BinaryMark { lo: i, bits });
    }
    out.sort();
    out
}

/// Omega(i_1, ..., i_r): the mark with e(l) = 1 exactly when
/// l ∈ {i_2 - 1, ..., i_{r-1} - 1}.
pub fn omega(c: &Composition) -> BinaryMark {
    let i = c.first();
    let j = c.last();
    let mut bits = vec![false; j - i - 1];
    let pts = c.points();
    for &p in &pts[1..pts.len() - 1] {
        bits[p - 1 - i] = true;
    }
    BinaryMark { lo: i, bits }
}

/// Inverse of `omega` on its image: recovers the composition whose
/// interior points are { l + 1 : e(l) = 1 }.
pub fn omega_inv(e: &BinaryMark) -> Composition {
    let root = e.root();
    let mut pts = vec![root.i()];
    for (k, &b) in e.bits.iter().enumerate() {
        if b {
            pts.push(e.lo + k + 1);
        }
    }
    pts.push(root.j());
    Composition(pts)
}

/// A sparse assignment of scalars to positive roots; roots absent from the
/// map carry the value zero. No invariant ties a family to a particular
/// datum: the linking conditions (R1)/(R2)/(R3) are predicates evaluated by
/// `check_conditions`, not constructor requirements.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamFamily {
    entries: BTreeMap<Root, Scalar>,
}

impl ParamFamily {
    /// The zero family.
    pub fn zero() -> ParamFamily {
        ParamFamily {
            entries: BTreeMap::new(),
        }
    }

    /// Builds a family from (root, value) pairs, dropping explicit zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (Root, Scalar)>) -> ParamFamily {
        let mut fam = ParamFamily::zero();
        for (r, v) in entries {
            fam.set(r, v);
        }
        fam
    }

    /// Sets mu_r = v, removing the entry when v = 0 so that equality of
    /// families is equality of maps.
    pub fn set(&mut self, r: Root, v: Scalar) {
        if v.is_zero() {
            self.entries.remove(&r);
        } else {
            self.entries.insert(r, v);
        }
    }

    /// The stored value at r, if nonzero.
    pub fn entry(&self, r: Root) -> Option<&Scalar> {
        self.entries.get(&r)
    }

    /// mu_r, with absent roots reading as zero.
    pub fn get(&self, r: Root, ctx: &Arc<CycloContext>) -> Scalar {
        self.entries
            .get(&r)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(ctx))
    }

    /// The nonzero entries in root order.
    pub fn entries(&self) -> impl Iterator<Item = (&Root, &Scalar)> {
        self.entries.iter()
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Outcome of evaluating the three linking conditions on a family.
///
/// (R1): mu_ij = 0 whenever g_ij^N = 1.
/// (R2): mu_ij = 0 whenever chi_ij^N != 1.
/// (R3): u_ij(mu) = 0 whenever chi_ij^N != 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub r1: bool,
    pub r2: bool,
    pub r3: bool,
}

impl ConditionReport {
    /// True when all three conditions hold.
    pub fn all(&self) -> bool {
        self.r1 && self.r2 && self.r3
    }
}

/// Evaluates (R1), (R2) and (R3) exactly; (R3) is computed from the group
/// algebra elements u_ij(mu), not inferred from (R2).
pub fn check_conditions(d: &CartanDatum, mu: &ParamFamily) -> ConditionReport {
    let group = d.group();
    let nn = d.order_n() as i64;
    let mut r1 = true;
    let mut r2 = true;
    for r in d.positive_roots() {
        let nonzero = mu.entry(r).is_some_and(|s| !s.is_zero());
        if !nonzero {
            continue;
        }
        if group.is_identity(&group.pow(&d.interval_element(r), nn)) {
            r1 = false;
        }
        if !group.char_is_trivial(&group.char_pow(&d.interval_character(r), nn)) {
            r2 = false;
        }
    }
    let u = u_elements(d, mu);
    let mut r3 = true;
    for r in d.positive_roots() {
        if group.char_is_trivial(&group.char_pow(&d.interval_character(r), nn)) {
            continue;
        }
        if !u[&r].is_zero() {
            r3 = false;
        }
    }
    ConditionReport { r1, r2, r3 }
}

/// mu(i_1, ..., i_r) = mu_{i_1 i_2} ... mu_{i_{r-1} i_r}, the product of the
/// family along the steps of a composition.
pub fn mu_path(mu: &ParamFamily, c: &Composition, ctx: &Arc<CycloContext>) -> Scalar {
    let mut acc = Scalar::one(ctx);
    for step in c.steps() {
        match mu.entry(step) {
            Some(v) => acc = acc.mul(v),
            None => return Scalar::zero(ctx),
        }
    }
    acc
}

/// (q - 1)^N for the datum's q and N.
fn q_minus_one_pow_n(d: &CartanDatum) -> Scalar {
    let one = Scalar::one(d.context());
    d.q()
        .sub(&one)
        .pow(d.order_n() as i64)
        .expect("nonnegative power")
}

/// The group algebra elements u_ij(mu), computed by induction on j - i:
///
///   u_ij(mu) = mu_ij (1 - g_ij^N) + sum_{i<p<j} (q-1)^N mu_ip u_pj(mu).
///
/// The map is total on families; no linking condition is required here.
pub fn u_elements(d: &CartanDatum, mu: &ParamFamily) -> BTreeMap<Root, GroupAlgebraElement> {
    let ctx = d.context();
    let group = d.group();
    let nn = d.order_n() as i64;
    let qm1n = q_minus_one_pow_n(d);
    let mut out: BTreeMap<Root, GroupAlgebraElement> = BTreeMap::new();
    let mut roots = d.positive_roots();
    roots.sort_by_key(|r| r.height());
    for r in roots {
        let (i, j) = (r.i(), r.j());
        let g_n = group.pow(&d.interval_element(r), nn);
        let mut acc =
            GroupAlgebraElement::one_minus(ctx, group, &g_n).scalar_mul(&mu.get(r, ctx));
        for p in i + 1..j {
            let mu_ip = match mu.entry(Root::new(i, p).expect("valid root")) {
                Some(v) => v,
                None => continue,
            };
            let u_pj = &out[&Root::new(p, j).expect("valid root")];
            acc = acc.add(&u_pj.scalar_mul(&qm1n.mul(mu_ip)));
        }
        out.insert(r, acc);
    }
    out
}

/// The closed-form expansion of u_ij(mu):
///
///   u_ij(mu) = sum_{(i_1..i_r) in I_ij} (q-1)^{N(r-2)} mu(i_1..i_r)
///              (1 - g_{i_{r-1} i_r}^N).
///
/// This must agree with `u_elements` on every family; it is kept as an
/// independent route for cross-checking the inductive computation.
pub fn u_elements_closed_form(
    d: &CartanDatum,
    mu: &ParamFamily,
) -> BTreeMap<Root, GroupAlgebraElement> {
    let ctx = d.context();
    let group = d.group();
    let nn = d.order_n() as i64;
    let one = Scalar::one(ctx);
    let qm1 = d.q().sub(&one);
    let mut out = BTreeMap::new();
    for root in d.positive_roots() {
        let mut acc = GroupAlgebraElement::zero();
        for c in compositions(root.i(), root.j()) {
            let m = mu_path(mu, &c, ctx);
            if m.is_zero() {
                continue;
            }
            let r = c.len() as i64;
            let coeff = qm1.pow(nn * (r - 2)).expect("nonnegative power").mul(&m);
            let pts = c.points();
            let last = Root::new(pts[pts.len() - 2], pts[pts.len() - 1]).expect("valid root");
            let g_n = group.pow(&d.interval_element(last), nn);
            acc = acc.add(&GroupAlgebraElement::one_minus(ctx, group, &g_n).scalar_mul(&coeff));
        }
        out.insert(root, acc);
    }
    out
}

/// Checks the coproduct identity characterizing the u_ij inside k[Gamma],
/// for every positive root:
///
///   Delta(u_ij) = u_ij (x) 1 + g_ij^N (x) u_ij
///                 + sum_{i<p<j} (q-1)^N u_ip g_pj^N (x) u_pj.
///
/// Roots missing from the map read as zero.
pub fn coproduct_check(d: &CartanDatum, u: &BTreeMap<Root, GroupAlgebraElement>) -> bool {
    let ctx = d.context();
    let group = d.group();
    let nn = d.order_n() as i64;
    let one = Scalar::one(ctx);
    let qm1n = q_minus_one_pow_n(d);
    let unit = GroupAlgebraElement::one(ctx, group);
    let zero = GroupAlgebraElement::zero();
    let at = |r: Root| u.get(&r).unwrap_or(&zero);
    for r in d.positive_roots() {
        let (i, j) = (r.i(), r.j());
        let u_ij = at(r);
        let lhs = u_ij.coproduct();
        let g_n = GroupAlgebraElement::from_term(
            group.pow(&d.interval_element(r), nn),
            one.clone(),
        );
        let mut rhs = TensorElement::from_factors(u_ij, &unit)
            .add(&TensorElement::from_factors(&g_n, u_ij));
        for p in i + 1..j {
            let u_ip = at(Root::new(i, p).expect("valid root"));
            let u_pj = at(Root::new(p, j).expect("valid root"));
            let g_pj_n = GroupAlgebraElement::from_term(
                group.pow(
                    &d.interval_element(Root::new(p, j).expect("valid root")),
                    nn,
                ),
                one.clone(),
            );
            let left = u_ip.mul(&g_pj_n, group).scalar_mul(&qm1n);
            rhs = rhs.add(&TensorElement::from_factors(&left, u_pj));
        }
        if !lhs.sub(&rhs).is_zero() {
            return false;
        }
    }
    true
}

/// Extracts the unique scalar c with w = c (1 - h) in k[Gamma], given
/// h != 1. A failure here signals an implementation bug upstream: the
/// normalization recursion guarantees w lies on that line.
fn extract_line_coefficient(
    ctx: &Arc<CycloContext>,
    d: &CartanDatum,
    w: &GroupAlgebraElement,
    h: &crate::group::GroupElement,
) -> Result<Scalar> {
    if w.is_zero() {
        return Ok(Scalar::zero(ctx));
    }
    let id = d.group().identity();
    let c = w
        .coeff(&id)
        .cloned()
        .unwrap_or_else(|| Scalar::zero(ctx));
    let line = GroupAlgebraElement::one_minus(ctx, d.group(), h).scalar_mul(&c);
    if w.sub(&line).is_zero() {
        Ok(c)
    } else {
        Err(Error::Internal(format!(
            "normalization residue at support size {} is not a multiple of 1 - g^N",
            w.support_len()
        )))
    }
}

/// The normalization map: the unique family mu' satisfying (R1) with
/// u_ij(mu') = u_ij(mu) for every root. Computed by induction on j - i:
/// mu'_ij = 0 where g_ij^N = 1, and otherwise mu'_ij is read off from
///
///   u_ij(mu) - sum_{i<p<j} (q-1)^N mu'_ip u_pj(mu) = mu'_ij (1 - g_ij^N),
///
/// using that u_pj(mu') = u_pj(mu) for the already-normalized tails.
pub fn normalize(d: &CartanDatum, mu: &ParamFamily) -> Result<ParamFamily> {
    let ctx = d.context();
    let group = d.group();
    let nn = d.order_n() as i64;
    let qm1n = q_minus_one_pow_n(d);
    let u = u_elements(d, mu);
    let mut nu = ParamFamily::zero();
    let mut roots = d.positive_roots();
    roots.sort_by_key(|r| r.height());
    for r in roots {
        let (i, j) = (r.i(), r.j());
        let g_n = group.pow(&d.interval_element(r), nn);
        if group.is_identity(&g_n) {
            continue;
        }
        let mut w = u[&r].clone();
        for p in i + 1..j {
            let nu_ip = match nu.entry(Root::new(i, p).expect("valid root")) {
                Some(v) => v.clone(),
                None => continue,
            };
            let u_pj = &u[&Root::new(p, j).expect("valid root")];
            w = w.sub(&u_pj.scalar_mul(&qm1n.mul(&nu_ip)));
        }
        let c = extract_line_coefficient(ctx, d, &w, &g_n)?;
        nu.set(r, c);
    }
    Ok(nu)
}

/// The diagram-flip action on parameter families:
///
///   sigma_ij(mu) = tau_{~j,~i} (-1)^{j-i+1}
///                  sum_{(i_1..i_r) in I_ij} (q-1)^{N(r-2)} mu(~i_r, ..., ~i_1),
///
/// where ~i = n + 2 - i. The result is indexed for the twisted datum.
/// Requires (R2); a violating entry is reported as an input error.
pub fn sigma_action(d: &CartanDatum, mu: &ParamFamily) -> Result<ParamFamily> {
    let group = d.group();
    let nn = d.order_n() as i64;
    for r in d.positive_roots() {
        let trivial = group.char_is_trivial(&group.char_pow(&d.interval_character(r), nn));
        if !trivial && mu.entry(r).is_some_and(|s| !s.is_zero()) {
            return Err(Error::ConditionViolation {
                condition: "R2",
                i: r.i(),
                j: r.j(),
            });
        }
    }
    let ctx = d.context();
    let one = Scalar::one(ctx);
    let qm1 = d.q().sub(&one);
    let mut out = ParamFamily::zero();
    for r in d.positive_roots() {
        let (i, j) = (r.i(), r.j());
        let mut sum = Scalar::zero(ctx);
        for c in compositions(i, j) {
            let rr = c.len() as i64;
            let pts: Vec<usize> = c.points().iter().rev().map(|&p| d.tilde(p)).collect();
            let reversed = Composition::new(pts).expect("tilde reverses monotonically");
            let m = mu_path(mu, &reversed, ctx);
            if m.is_zero() {
                continue;
            }
            let coeff = qm1.pow(nn * (rr - 2)).expect("nonnegative power");
            sum = sum.add(&coeff.mul(&m));
        }
        let tau = d.tau(d.reverse_root(r));
        let signed = if (j - i + 1) % 2 == 0 { sum } else { sum.neg() };
        out.set(r, tau.mul(&signed));
    }
    Ok(out)
}

/// The PBW coefficient attached to a composition (i_1, ..., i_r) of (i, j):
///
///   t(i_1..i_r) = (-1)^{j-i-r+1} (q-1)^{N(r-2)}
///                 tau(i_1..i_r)^{-(N-1)/2} tau_ij^{(N+1)/2}.
///
/// N is odd, so both half-integer exponents are integers.
pub fn t_coefficient(d: &CartanDatum, c: &Composition) -> Scalar {
    let ctx = d.context();
    let nn = d.order_n() as i64;
    let r = c.len() as i64;
    let (i, j) = (c.first(), c.last());
    let one = Scalar::one(ctx);
    let qm1 = d.q().sub(&one);
    let a = qm1.pow(nn * (r - 2)).expect("nonnegative power");
    let b = d
        .tau_path(c)
        .pow(-((nn - 1) / 2))
        .expect("tau values are roots of unity");
    let t = d
        .tau(Root::new(i, j).expect("valid root"))
        .pow((nn + 1) / 2)
        .expect("nonnegative power");
    let unsigned = a.mul(&b).mul(&t);
    // Sign (-1)^{j-i-r+1}; a composition has at most j-i+1 points, so the
    // exponent is a natural number.
    if (j - i + 1 - r as usize) % 2 == 0 {
        unsigned
    } else {
        unsigned.neg()
    }
}

/// tau_e = (q-1)^{N |e|} tau(i_1..i_r)^{(N-1)/2} for e = Omega(i_1..i_r).
pub fn tau_mark(d: &CartanDatum, e: &BinaryMark) -> Scalar {
    let nn = d.order_n() as i64;
    let one = Scalar::one(d.context());
    let qm1 = d.q().sub(&one);
    let c = omega_inv(e);
    qm1.pow(nn * e.zero_count() as i64)
        .expect("nonnegative power")
        .mul(
            &d.tau_path(&c)
                .pow((nn - 1) / 2)
                .expect("nonnegative power"),
        )
}

/// t_e = (-1)^{|e|} tau_e^{-1} (q-1)^{N(j-i-1)} tau_ij^{(N+1)/2}; under
/// e = Omega(c) this equals `t_coefficient(d, c)`.
pub fn t_mark(d: &CartanDatum, e: &BinaryMark) -> Scalar {
    let nn = d.order_n() as i64;
    let one = Scalar::one(d.context());
    let qm1 = d.q().sub(&one);
    let root = e.root();
    let (i, j) = (root.i(), root.j());
    let a = tau_mark(d, e)
        .inv()
        .expect("tau_e is a product of roots of unity and (q-1) powers");
    let b = qm1
        .pow(nn * (j - i - 1) as i64)
        .expect("nonnegative power");
    let t = d.tau(root).pow((nn + 1) / 2).expect("nonnegative power");
    let unsigned = a.mul(&b).mul(&t);
    if e.zero_count() % 2 == 0 {
        unsigned
    } else {
        unsigned.neg()
    }
}

/// Interval-product scaling: (s . mu)_ij = s_ij mu_ij with
/// s_ij = prod_{i <= l < j} s_l. The sequence must cover every support
/// root and contain no zeros.
pub fn scale(mu: &ParamFamily, s: &[Scalar]) -> Result<ParamFamily> {
    for (l, v) in s.iter().enumerate() {
        if v.is_zero() {
            return Err(Error::BadInput(format!(
                "scaling entry s_{} is zero",
                l + 1
            )));
        }
    }
    let mut out = ParamFamily::zero();
    for (r, v) in mu.entries() {
        if r.j() - 1 > s.len() {
            return Err(Error::BadInput(format!(
                "scaling sequence of length {} cannot reach root {}",
                s.len(),
                r
            )));
        }
        let mut val = v.clone();
        for l in r.i()..r.j() {
            val = val.mul(&s[l - 1]);
        }
        out.set(*r, val);
    }
    Ok(out)
}

#[cfg(test)]
mod comb_tests {
    use super::*;

    #[test]
    fn compositions_are_lexicographic_and_complete() {
        let cs = compositions(1, 4);
        let pts: Vec<&[usize]> = cs.iter().map(|c| c.points()).collect();
        assert_eq!(
            pts,
            vec![
                &[1usize, 2, 3, 4][..],
                &[1, 2, 4],
                &[1, 3, 4],
                &[1, 4],
            ]
        );
        assert_eq!(compositions(2, 3).len(), 1);
        assert_eq!(compositions(1, 6).len(), 16);
    }

    #[test]
    fn omega_and_inverse_are_mutually_inverse() {
        for (i, j) in [(1usize, 3usize), (1, 5), (2, 6)] {
            for c in compositions(i, j) {
                let e = omega(&c);
                assert_eq!(omega_inv(&e), c);
            }
            // omega is a bijection I_ij -> marks
            let mut seen: Vec<BinaryMark> = compositions(i, j).iter().map(omega).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), compositions(i, j).len());
            assert_eq!(seen.len(), all_marks(i, j).len());
        }
    }

    #[test]
    fn extreme_marks_match_extreme_compositions() {
        // The full chain maps to (1); the bare interval maps to (0).
        let full = Composition::new((1..=5).collect()).unwrap();
        assert_eq!(omega(&full), BinaryMark::all_ones(1, 5));
        let bare = Composition::new(vec![1, 5]).unwrap();
        assert_eq!(omega(&bare), BinaryMark::all_zeros(1, 5));
        // |(1)| = 0 and |(0)| = j - i - 1 = r-independent zero counts.
        assert_eq!(BinaryMark::all_ones(1, 5).zero_count(), 0);
        assert_eq!(BinaryMark::all_zeros(1, 5).zero_count(), 3);
    }

    #[test]
    fn zero_count_complements_interior_size() {
        // |Omega(i_1..i_r)| = j - i - r + 1.
        for c in compositions(1, 6) {
            let e = omega(&c);
            assert_eq!(e.zero_count() as i64, 6 - 1 - c.len() as i64 + 1);
        }
    }

    #[test]
    fn mark_order_is_zero_set_inclusion() {
        let marks = all_marks(1, 5);
        for e in &marks {
            assert!(e.below(e));
            assert!(BinaryMark::all_ones(1, 5).below(e));
            assert!(e.below(&BinaryMark::all_zeros(1, 5)));
        }
    }

    #[test]
    fn alternating_sum_over_compositions_vanishes() {
        // Σ_{I_ij} (-1)^r = 0 whenever j - i >= 2.
        for (i, j) in [(1usize, 3usize), (1, 5), (2, 9)] {
            let s: i64 = compositions(i, j)
                .iter()
                .map(|c| if c.len() % 2 == 0 { 1 } else { -1 })
                .sum();
            assert_eq!(s, 0, "({i},{j})");
        }
    }

    #[test]
    fn alternating_sum_below_a_non_top_mark_vanishes() {
        // Σ_{e <= f} (-1)^{|e|} = 0 for every f != (1).
        for (i, j) in [(1usize, 3usize), (1, 5), (3, 8)] {
            for f in all_marks(i, j) {
                if f == BinaryMark::all_ones(i, j) {
                    continue;
                }
                let s: i64 = all_marks(i, j)
                    .iter()
                    .filter(|e| e.below(&f))
                    .map(|e| if e.zero_count() % 2 == 0 { 1 } else { -1 })
                    .sum();
                assert_eq!(s, 0);
            }
        }
    }
}
