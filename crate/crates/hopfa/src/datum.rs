//! Cartan data of type A_n: the group, the elements g_i, the characters
//! chi_i, validation of the braiding constraints, interval products,
//! the scalars tau, and the diagram flip.
//!
//! The Cartan matrix is always the type A_n matrix (2 on the diagonal,
//! -1 between neighbours, 0 elsewhere); it is implicit in the index
//! arithmetic and never stored.

use std::sync::Arc;

use crate::cyclo::{CycloContext, Scalar};
use crate::group::{Character, FiniteAbelianGroup, GroupElement};
use crate::params::Composition;
use crate::{Error, Result};

/// Positive root alpha_ij of type A_n: an interval (i, j) with
/// 1 <= i < j <= n+1. The derived lexicographic order realizes the
/// convex ordering used for PBW monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    i: usize,
    j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Result<Root> {
        if i < 1 || i >= j {
            return Err(Error::BadInput(format!("not a root interval: ({i},{j})")));
        }
        Ok(Root { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Height j - i (number of simple roots in the interval).
    pub fn height(&self) -> usize {
        self.j - self.i
    }

    /// All positive roots for rank n, in lexicographic order.
    pub fn all(n: usize) -> Vec<Root> {
        let mut out = Vec::with_capacity(n * (n + 1) / 2);
        for i in 1..=n {
            for j in (i + 1)..=(n + 1) {
                out.push(Root { i, j });
            }
        }
        out
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A validated datum of Cartan type A_n.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    ctx: Arc<CycloContext>,
    group: FiniteAbelianGroup,
    g: Vec<GroupElement>,
    chi: Vec<Character>,
    qij: Vec<Vec<Scalar>>,
    q: Scalar,
    order_n: u64,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor() == other.ctx.conductor()
            && self.group == other.group
            && self.g == other.g
            && self.chi == other.chi
    }
}
impl Eq for CartanDatum {}

/// The type A_n Cartan matrix entry a_ij.
pub fn cartan_entry(i: usize, j: usize) -> i64 {
    if i == j {
        2
    } else if i.abs_diff(j) == 1 {
        -1
    } else {
        0
    }
}

impl CartanDatum {
    /// Validates and builds a datum. The conductor of `ctx` must be a
    /// multiple of the group exponent (so that characters evaluate);
    /// q and N are always recomputed, never trusted from input.
    pub fn build(
        ctx: &Arc<CycloContext>,
        group: FiniteAbelianGroup,
        g: Vec<GroupElement>,
        chi: Vec<Character>,
    ) -> Result<CartanDatum> {
        let n = g.len();
        if n < 2 {
            return Err(Error::InvalidDatum(format!("rank must be >= 2, got {n}")));
        }
        if chi.len() != n {
            return Err(Error::InvalidDatum(format!(
                "{} elements but {} characters",
                n,
                chi.len()
            )));
        }
        let expo = group.exponent().max(1);
        if ctx.conductor() % expo != 0 {
            return Err(Error::InvalidDatum(format!(
                "conductor {} does not admit the group exponent {}",
                ctx.conductor(),
                expo
            )));
        }

        let qij: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| group.char_eval(ctx, &chi[j], &g[i]))
                    .collect()
            })
            .collect();

        let q = qij[0][0].clone();
        for (i, row) in qij.iter().enumerate() {
            if row[i] != q {
                return Err(Error::InvalidDatum(format!(
                    "q_{}{} = {} differs from q_11 = {}",
                    i + 1,
                    i + 1,
                    row[i],
                    q
                )));
            }
        }
        let order_n = q
            .multiplicative_order()
            .ok_or_else(|| Error::Internal("character value is not a root of unity".into()))?;
        if order_n == 1 {
            return Err(Error::InvalidDatum("q = 1 is not allowed".into()));
        }
        if order_n % 2 == 0 {
            return Err(Error::EvenOrder { order: order_n });
        }

        let qinv = q.inv().expect("root of unity is invertible");
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let prod = qij[i][j].mul(&qij[j][i]);
                let expect_inverse = i.abs_diff(j) == 1;
                let ok = if expect_inverse {
                    prod == qinv
                } else {
                    prod.is_one()
                };
                if !ok {
                    return Err(Error::InvalidDatum(format!(
                        "q_{}{}·q_{}{} = {} violates the linking condition",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        prod
                    )));
                }
            }
        }

        Ok(CartanDatum {
            ctx: ctx.clone(),
            group,
            g,
            chi,
            qij,
            q,
            order_n,
        })
    }

    pub fn n(&self) -> usize {
        self.g.len()
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// g_i, 1-based.
    pub fn g(&self, i: usize) -> &GroupElement {
        &self.g[i - 1]
    }

    /// chi_i, 1-based.
    pub fn chi(&self, i: usize) -> &Character {
        &self.chi[i - 1]
    }

    pub fn gens(&self) -> &[GroupElement] {
        &self.g
    }

    pub fn chars(&self) -> &[Character] {
        &self.chi
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    /// The odd order N > 1 of q.
    pub fn order_n(&self) -> u64 {
        self.order_n
    }

    /// q_ij = chi_j(g_i), 1-based.
    pub fn q_ij(&self, i: usize, j: usize) -> &Scalar {
        &self.qij[i - 1][j - 1]
    }

    pub fn positive_roots(&self) -> Vec<Root> {
        Root::all(self.n())
    }

    fn check_root(&self, r: Root) {
        assert!(r.j <= self.n() + 1, "root {r} out of range for n = {}", self.n());
    }

    /// Interval products (g_ij, chi_ij) = (Π_{i<=l<j} g_l, Π chi_l).
    pub fn interval(&self, r: Root) -> (GroupElement, Character) {
        self.check_root(r);
        let mut g = self.group.identity();
        let mut chi = self.group.trivial_character();
        for l in r.i..r.j {
            g = self.group.mul(&g, self.g(l));
            chi = self.group.char_mul(&chi, self.chi(l));
        }
        (g, chi)
    }

    pub fn interval_element(&self, r: Root) -> GroupElement {
        self.interval(r).0
    }

    pub fn interval_character(&self, r: Root) -> Character {
        self.interval(r).1
    }

    /// tau_ij = Π_{i <= k < l < j} q_lk^N.
    pub fn tau(&self, r: Root) -> Scalar {
        self.check_root(r);
        let n_exp = self.order_n as i64;
        let mut acc = Scalar::one(&self.ctx);
        for k in r.i..r.j {
            for l in (k + 1)..r.j {
                acc = acc.mul(
                    &self
                        .q_ij(l, k)
                        .pow(n_exp)
                        .expect("nonzero root of unity"),
                );
            }
        }
        acc
    }

    /// Equivalent form Π_{i < l < j} chi_il^N(g_l); used as a cross-check
    /// of `tau`.
    pub fn tau_alt(&self, r: Root) -> Scalar {
        self.check_root(r);
        let mut acc = Scalar::one(&self.ctx);
        for l in (r.i + 1)..r.j {
            let chi_il = self.interval_character(Root { i: r.i, j: l });
            let powed = self.group.char_pow(&chi_il, self.order_n as i64);
            acc = acc.mul(&self.group.char_eval(&self.ctx, &powed, self.g(l)));
        }
        acc
    }

    /// tau(i_1, ..., i_r) = tau_{i_1 i_2} tau_{i_2 i_3} ··· tau_{i_{r-1} i_r}.
    pub fn tau_path(&self, c: &Composition) -> Scalar {
        let mut acc = Scalar::one(&self.ctx);
        for step in c.steps() {
            acc = acc.mul(&self.tau(step));
        }
        acc
    }

    /// sigma(i) = n - i + 1 on {1, ..., n}.
    pub fn sigma(&self, i: usize) -> usize {
        assert!((1..=self.n()).contains(&i));
        self.n() - i + 1
    }

    /// tilde(i) = n - i + 2 on {1, ..., n+1}.
    pub fn tilde(&self, i: usize) -> usize {
        assert!((1..=self.n() + 1).contains(&i));
        self.n() + 2 - i
    }

    /// The root (tilde(j), tilde(i)) in normalized (min, max) form; tilde
    /// reverses order, so this is again a positive root.
    pub fn reverse_root(&self, r: Root) -> Root {
        self.check_root(r);
        Root {
            i: self.tilde(r.j),
            j: self.tilde(r.i),
        }
    }

    /// The flipped datum D^sigma: g_i -> g_{sigma(i)}, chi_i -> chi_{sigma(i)}.
    pub fn twist(&self) -> CartanDatum {
        let g = self.g.iter().rev().cloned().collect();
        let chi = self.chi.iter().rev().cloned().collect();
        CartanDatum::build(&self.ctx, self.group.clone(), g, chi)
            .expect("flip of a valid datum is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{free_example, linking_example};

    #[test]
    fn linking_example_is_valid() {
        let d = linking_example();
        assert_eq!(d.n(), 2);
        assert_eq!(d.order_n(), 3);
        let q = Scalar::root_of_unity(d.context(), 3, 2).unwrap();
        assert_eq!(d.q(), &q);
    }

    #[test]
    fn trivial_character_breaks_diagonal() {
        let ctx = CycloContext::new(9);
        let group = FiniteAbelianGroup::new(vec![9, 3]).unwrap();
        let g1 = group.element(&[1, 1]);
        let g2 = group.element(&[-1, 1]);
        let chi1 = group.character(&[3, 1]);
        let trivial = group.trivial_character();
        let err = CartanDatum::build(&ctx, group, vec![g1, g2], vec![chi1, trivial]);
        match err {
            Err(Error::InvalidDatum(msg)) => assert!(msg.contains("q_22"), "{msg}"),
            other => panic!("expected invalid datum, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn even_order_is_unsupported() {
        let ctx = CycloContext::new(4);
        let group = FiniteAbelianGroup::new(vec![4, 4]).unwrap();
        let g1 = group.element(&[1, 0]);
        let g2 = group.element(&[0, 1]);
        let chi1 = group.character(&[2, 3]);
        let chi2 = group.character(&[1, 2]);
        match CartanDatum::build(&ctx, group, vec![g1, g2], vec![chi1, chi2]) {
            Err(Error::EvenOrder { order: 2 }) => {}
            other => panic!("expected even-order rejection, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn rank_one_is_rejected() {
        let ctx = CycloContext::new(3);
        let group = FiniteAbelianGroup::new(vec![3]).unwrap();
        let g1 = group.element(&[1]);
        let chi1 = group.character(&[1]);
        assert!(matches!(
            CartanDatum::build(&ctx, group, vec![g1], vec![chi1]),
            Err(Error::InvalidDatum(_))
        ));
    }

    #[test]
    fn broken_linking_is_rejected() {
        // Same shape as the linking example but chi_2 perturbed so that
        // q_22 = q still holds while q_12 q_21 != q^{-1}.
        let ctx = CycloContext::new(9);
        let group = FiniteAbelianGroup::new(vec![9, 3]).unwrap();
        let g1 = group.element(&[1, 1]);
        let g2 = group.element(&[-1, 1]);
        let chi1 = group.character(&[3, 1]);
        let chi2 = group.character(&[0, 2]);
        match CartanDatum::build(&ctx, group, vec![g1, g2], vec![chi1, chi2]) {
            Err(Error::InvalidDatum(msg)) => assert!(msg.contains("linking"), "{msg}"),
            other => panic!("expected linking violation, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn singleton_intervals_are_the_generators() {
        let d = linking_example();
        for i in 1..=d.n() {
            let r = Root::new(i, i + 1).unwrap();
            let (g, chi) = d.interval(r);
            assert_eq!(&g, d.g(i));
            assert_eq!(&chi, d.chi(i));
        }
    }

    #[test]
    fn interval_product_collapses_in_linking_example() {
        let d = linking_example();
        let r = Root::new(1, 3).unwrap();
        let g13 = d.interval_element(r);
        // g1 g2 = (gh)(g^{-1}h) = h^2
        assert_eq!(g13, d.group().element(&[0, 2]));
        assert!(d.group().is_identity(&d.group().pow(&g13, 3)));
    }

    #[test]
    fn intervals_are_multiplicative() {
        for d in [linking_example(), free_example()] {
            for r in d.positive_roots() {
                for l in (r.i() + 1)..r.j() {
                    let left = Root::new(r.i(), l).unwrap();
                    let right = Root::new(l, r.j()).unwrap();
                    assert_eq!(
                        d.interval_element(r),
                        d.group()
                            .mul(&d.interval_element(left), &d.interval_element(right))
                    );
                    assert_eq!(
                        d.interval_character(r),
                        d.group()
                            .char_mul(&d.interval_character(left), &d.interval_character(right))
                    );
                }
            }
        }
    }

    #[test]
    fn tau_of_simple_roots_is_one() {
        let d = linking_example();
        for i in 1..=d.n() {
            assert!(d.tau(Root::new(i, i + 1).unwrap()).is_one());
        }
    }

    #[test]
    fn tau_13_in_linking_example() {
        // tau_13 = q_21^3 = chi_1(g_2)^3 and chi_1(g_2) = 1 here.
        let d = linking_example();
        assert!(d.q_ij(2, 1).is_one());
        assert!(d.tau(Root::new(1, 3).unwrap()).is_one());
    }

    #[test]
    fn tau_forms_agree() {
        for d in [linking_example(), free_example()] {
            for r in d.positive_roots() {
                assert_eq!(d.tau(r), d.tau_alt(r), "root {r}");
            }
        }
    }

    #[test]
    fn tau_path_of_bare_interval_is_tau() {
        let d = free_example();
        let r = Root::new(1, 3).unwrap();
        let c = Composition::new(vec![1, 3]).unwrap();
        assert_eq!(d.tau_path(&c), d.tau(r));
        let chain = Composition::new(vec![1, 2, 3]).unwrap();
        assert!(d.tau_path(&chain).is_one());
    }

    #[test]
    fn flip_is_an_involution() {
        for d in [linking_example(), free_example()] {
            let dd = d.twist().twist();
            assert_eq!(d, dd);
            assert_eq!(d.twist().q(), d.q());
            assert_eq!(d.twist().order_n(), d.order_n());
        }
    }

    #[test]
    fn flipped_intervals_are_reversed_intervals() {
        for d in [linking_example(), free_example()] {
            let ds = d.twist();
            for r in d.positive_roots() {
                let rr = d.reverse_root(r);
                assert_eq!(ds.interval_element(r), d.interval_element(rr));
                assert_eq!(ds.interval_character(r), d.interval_character(rr));
            }
        }
    }

    #[test]
    fn flipped_tau_is_inverse_tau() {
        for d in [linking_example(), free_example()] {
            let ds = d.twist();
            for r in d.positive_roots() {
                let rr = d.reverse_root(r);
                assert!(ds.tau(rr).mul(&d.tau(r)).is_one(), "root {r}");
            }
        }
    }

    #[test]
    fn tilde_reverses_and_involutes() {
        let d = linking_example();
        let n = d.n();
        for i in 1..=(n + 1) {
            assert_eq!(d.tilde(d.tilde(i)), i);
        }
        for i in 1..=n {
            assert_eq!(d.sigma(i), d.tilde(i + 1));
            assert_eq!(d.sigma(d.sigma(i)), i);
        }
    }
}
