//! The Hopf-isomorphism decision procedure, automorphism reports, and
//! iso-class partitioning.
//!
//! An isomorphism u(D', mu') -> u(D, mu) is a triple (phi, rho, s): a
//! group isomorphism phi matched to the generators and characters up to
//! the diagram part rho (identity or the flip), and nonzero scalars
//! s_1..s_n rescaling the generators. The scalars only enter through
//! s_ij^N with s_ij the product over the interval [i, j), so over an
//! algebraically closed field the decision reduces to a multiplicative
//! feasibility problem for t = s^N: the required values t_ij are ratios
//! of parameter entries, and a solution exists iff every integer relation
//! among the interval vectors is respected by the ratios. Interval
//! matrices have the consecutive-ones property and are therefore totally
//! unimodular, so the solution set for t is a torus of rank n minus the
//! support rank with no torsion obstruction; the finite part of the
//! solution set for s itself comes from the N-th roots and is measured by
//! the elementary divisors of N times the support matrix.
//!
//! The flip case never compares against the raw sigma-image of mu, which
//! can fail the torsion condition (R1); it compares against its
//! normalization, which generates the same root-vector relations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::cyclo::Scalar;
use crate::datum::{CartanDatum, Root};
use crate::group::{enumerate_isomorphisms, GroupHomomorphism};
use crate::lattice::{left_kernel, smith, IntMat};
use crate::params::{normalize, sigma_action, ParamFamily};
use crate::{Error, Result};

/// The multiplicative constraints a diagonal rescaling must satisfy: the
/// required values t_ij = s_ij^N on the support of the reference family,
/// plus the rank of the free torus of solutions.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingPattern {
    required: BTreeMap<Root, Scalar>,
    free_rank: usize,
}

impl ScalingPattern {
    /// Required value per support root; roots outside the support are
    /// unconstrained.
    pub fn required(&self) -> &BTreeMap<Root, Scalar> {
        &self.required
    }

    /// Dimension of the torus of admissible t (equivalently s) families.
    pub fn free_rank(&self) -> usize {
        self.free_rank
    }
}

/// Which diagram symmetry the generator relabelling uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramPart {
    Identity,
    Sigma,
}

/// One isomorphism shape: the group part, the diagram part, and the
/// scaling constraints. Every choice of scalars solving the pattern
/// yields an isomorphism with this shape.
#[derive(Clone, Debug)]
pub struct IsoWitness {
    pub rho: DiagramPart,
    pub phi: GroupHomomorphism,
    pub scaling: ScalingPattern,
}

/// The integer row e_i + ... + e_{j-1} of the interval of r inside Z^n.
fn interval_row(n: usize, r: Root) -> Vec<i64> {
    let mut row = vec![0i64; n];
    for l in r.i()..r.j() {
        row[l - 1] = 1;
    }
    row
}

/// Decides existence of t in (k^x)^n with mu_target = t . mu_ref, where
/// t_ij is the interval product of the t_l. Returns the required values
/// on the support together with the free rank, or None when the zero
/// patterns differ or a kernel relation among the intervals is violated.
pub fn solve_scaling(
    d: &CartanDatum,
    mu_ref: &ParamFamily,
    mu_target: &ParamFamily,
) -> Option<ScalingPattern> {
    let ctx = d.context();
    let n = d.n();
    let mut support: Vec<Root> = Vec::new();
    let mut ratios: Vec<Scalar> = Vec::new();
    for r in d.positive_roots() {
        let a = mu_ref.get(r, ctx);
        let b = mu_target.get(r, ctx);
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => {
                support.push(r);
                ratios.push(b.div(&a).expect("support entries are nonzero"));
            }
            _ => return None,
        }
    }
    let rows: Vec<Vec<i64>> = support.iter().map(|&r| interval_row(n, r)).collect();
    let m = IntMat::from_rows(&rows);
    for c in left_kernel(&m) {
        let mut prod = Scalar::one(ctx);
        for (coef, ratio) in c.iter().zip(&ratios) {
            let e = coef.to_i64().expect("kernel exponent fits in i64");
            if e != 0 {
                prod = prod.mul(&ratio.pow(e).expect("ratios are invertible"));
            }
        }
        if prod != Scalar::one(ctx) {
            return None;
        }
    }
    let rank = if support.is_empty() { 0 } else { smith(&m).rank() };
    Some(ScalingPattern {
        required: support.into_iter().zip(ratios).collect(),
        free_rank: n - rank,
    })
}

/// Root-vector parameter families must satisfy both linking conditions
/// before the classification applies; pinpoint the first offence.
fn require_conditions(d: &CartanDatum, mu: &ParamFamily) -> Result<()> {
    let group = d.group();
    let nn = d.order_n() as i64;
    for r in d.positive_roots() {
        if !mu.entry(r).is_some_and(|s| !s.is_zero()) {
            continue;
        }
        if group.is_identity(&group.pow(&d.interval_element(r), nn)) {
            return Err(Error::ConditionViolation {
                condition: "R1",
                i: r.i(),
                j: r.j(),
            });
        }
        if !group.char_is_trivial(&group.char_pow(&d.interval_character(r), nn)) {
            return Err(Error::ConditionViolation {
                condition: "R2",
                i: r.i(),
                j: r.j(),
            });
        }
    }
    Ok(())
}

/// The group isomorphisms Gamma' -> Gamma matching generators and
/// characters through the diagram part rho.
fn data_isomorphisms(
    d: &CartanDatum,
    d2: &CartanDatum,
    rho: DiagramPart,
) -> Vec<GroupHomomorphism> {
    let n = d.n();
    let target = |i: usize| match rho {
        DiagramPart::Identity => i,
        DiagramPart::Sigma => d.sigma(i),
    };
    let constraints: Vec<_> = (1..=n)
        .map(|i| (d2.g(i).clone(), d.g(target(i)).clone()))
        .collect();
    let mut phis = enumerate_isomorphisms(d2.group(), d.group(), &constraints);
    let ctx = d.context();
    let gens: Vec<_> = (0..d2.group().rank())
        .map(|t| {
            let mut e = vec![0i64; d2.group().rank()];
            e[t] = 1;
            d2.group().element(&e)
        })
        .collect();
    phis.retain(|phi| {
        (1..=n).all(|i| {
            gens.iter().all(|gen| {
                let lhs = d2.group().char_eval(d2.context(), d2.chi(i), gen);
                let image = phi.apply(d.group(), gen);
                let rhs = d.group().char_eval(ctx, d.chi(target(i)), &image);
                lhs == rhs
            })
        })
    });
    phis
}

/// All isomorphism shapes u(d2, mu2) -> u(d, mu), empty iff the Hopf
/// algebras are not isomorphic. Both families must be root-vector
/// parameters (conditions (R1) and (R2)); normalize first otherwise.
pub fn hopf_isomorphisms(
    d: &CartanDatum,
    mu: &ParamFamily,
    d2: &CartanDatum,
    mu2: &ParamFamily,
) -> Result<Vec<IsoWitness>> {
    if d.n() != d2.n() {
        return Err(Error::BadInput(format!(
            "rank mismatch: {} vs {}",
            d.n(),
            d2.n()
        )));
    }
    if d.context().conductor() != d2.context().conductor() {
        return Err(Error::BadInput(
            "data must share one cyclotomic context; reload them over a common conductor".into(),
        ));
    }
    require_conditions(d, mu)?;
    require_conditions(d2, mu2)?;
    let mut out = Vec::new();
    let untwisted = data_isomorphisms(d, d2, DiagramPart::Identity);
    if !untwisted.is_empty() {
        if let Some(pattern) = solve_scaling(d, mu, mu2) {
            for phi in untwisted {
                out.push(IsoWitness {
                    rho: DiagramPart::Identity,
                    phi,
                    scaling: pattern.clone(),
                });
            }
        }
    }
    let twisted = data_isomorphisms(d, d2, DiagramPart::Sigma);
    if !twisted.is_empty() {
        let reference = normalize(&d.twist(), &sigma_action(d, mu)?)?;
        if let Some(pattern) = solve_scaling(d, &reference, mu2) {
            for phi in twisted {
                out.push(IsoWitness {
                    rho: DiagramPart::Sigma,
                    phi,
                    scaling: pattern.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Structure of the Hopf automorphism group: every admissible shape, the
/// rank of the free scaling torus, and the order of the finite scaling
/// part attached to each shape.
#[derive(Clone, Debug)]
pub struct AutomorphismReport {
    pub witnesses: Vec<IsoWitness>,
    pub free_rank: usize,
    pub scaling_torsion: BigInt,
}

impl AutomorphismReport {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Exact group order when finite: shapes times scaling solutions per
    /// shape.
    pub fn order(&self) -> Option<BigInt> {
        if self.is_finite() {
            Some(BigInt::from(self.witnesses.len()) * &self.scaling_torsion)
        } else {
            None
        }
    }
}

/// The automorphism group of u(d, mu) as shapes plus scaling structure.
/// The scaling solutions for each shape form (free torus) x (finite
/// part); the finite part has order equal to the product of the
/// elementary divisors of N times the support-interval matrix.
pub fn automorphism_group(d: &CartanDatum, mu: &ParamFamily) -> Result<AutomorphismReport> {
    let witnesses = hopf_isomorphisms(d, mu, d, mu)?;
    let n = d.n();
    let support: Vec<Root> = d
        .positive_roots()
        .into_iter()
        .filter(|&r| mu.entry(r).is_some_and(|s| !s.is_zero()))
        .collect();
    let rows: Vec<Vec<i64>> = support
        .iter()
        .map(|&r| {
            interval_row(n, r)
                .into_iter()
                .map(|x| x * d.order_n() as i64)
                .collect()
        })
        .collect();
    let (free_rank, torsion) = if rows.is_empty() {
        (n, BigInt::one())
    } else {
        let sm = smith(&IntMat::from_rows(&rows));
        let torsion = sm
            .elementary_divisors()
            .iter()
            .fold(BigInt::one(), |acc, x| acc * x);
        (n - sm.rank(), torsion)
    };
    Ok(AutomorphismReport {
        witnesses,
        free_rank,
        scaling_torsion: torsion,
    })
}

/// Whether the datum admits a flip-twisted self-identification, making
/// the sigma branch of the class criterion available.
pub fn twist_equivalent(d: &CartanDatum) -> bool {
    !data_isomorphisms(d, d, DiagramPart::Sigma).is_empty()
}

/// Partitions families over one datum into Hopf isomorphism classes.
/// Classes are listed by ascending smallest member index.
pub fn iso_classes(d: &CartanDatum, mus: &[ParamFamily]) -> Result<Vec<Vec<usize>>> {
    for mu in mus {
        require_conditions(d, mu)?;
    }
    let sigma_branch = twist_equivalent(d);
    let twisted = d.twist();
    let mut sigma_refs: Vec<Option<ParamFamily>> = Vec::with_capacity(mus.len());
    for mu in mus {
        if sigma_branch {
            sigma_refs.push(Some(normalize(&twisted, &sigma_action(d, mu)?)?));
        } else {
            sigma_refs.push(None);
        }
    }
    let related = |a: usize, b: usize| -> bool {
        if solve_scaling(d, &mus[a], &mus[b]).is_some() {
            return true;
        }
        match &sigma_refs[a] {
            Some(reference) => solve_scaling(d, reference, &mus[b]).is_some(),
            None => false,
        }
    };
    // Union-find over the family indices.
    let mut parent: Vec<usize> = (0..mus.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for a in 0..mus.len() {
        for b in a + 1..mus.len() {
            if related(a, b) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[rb.max(ra)] = rb.min(ra);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..mus.len() {
        let root = find(&mut parent, x);
        classes.entry(root).or_default().push(x);
    }
    Ok(classes.into_values().collect())
}


#[cfg(test)]
mod iso_tests {
    use super::*;
    use crate::params::scale;
    use crate::sampling::{free_chain, free_example, linking_example};

    fn root(i: usize, j: usize) -> Root {
        Root::new(i, j).unwrap()
    }

    fn family(d: &CartanDatum, entries: &[((usize, usize), i64)]) -> ParamFamily {
        ParamFamily::from_entries(
            entries
                .iter()
                .map(|&((i, j), v)| (root(i, j), Scalar::from_i64(d.context(), v))),
        )
    }

    fn identity_hom(d: &CartanDatum) -> GroupHomomorphism {
        let rank = d.group().rank();
        GroupHomomorphism::new(
            (0..rank)
                .map(|t| {
                    let mut e = vec![0i64; rank];
                    e[t] = 1;
                    d.group().element(&e)
                })
                .collect(),
        )
    }

    #[test]
    fn self_isomorphisms_contain_the_identity_witness() {
        let d = free_example();
        let mu = family(&d, &[((1, 2), 1), ((2, 3), 2), ((1, 3), 7)]);
        let witnesses = hopf_isomorphisms(&d, &mu, &d, &mu).unwrap();
        let id = identity_hom(&d);
        assert!(witnesses.iter().any(|w| {
            w.rho == DiagramPart::Identity
                && w.phi == id
                && w.scaling
                    .required()
                    .values()
                    .all(|v| v == &Scalar::one(d.context()))
        }));
    }

    #[test]
    fn flip_images_are_isomorphic_with_trivial_scaling() {
        // For the running example and the free chain, (D, mu) and
        // (D^sigma, normalized sigma-image) are isomorphic via the flip
        // with all scalars equal to one.
        for (d, mu) in [
            (linking_example(), family(&linking_example(), &[((1, 2), 1), ((2, 3), 1)])),
            (
                free_chain(3),
                family(
                    &free_chain(3),
                    &[((1, 2), 1), ((2, 3), 2), ((3, 4), 3), ((1, 4), 4)],
                ),
            ),
        ] {
            let twisted = d.twist();
            let image = normalize(&twisted, &sigma_action(&d, &mu).unwrap()).unwrap();
            let witnesses = hopf_isomorphisms(&d, &mu, &twisted, &image).unwrap();
            let flips: Vec<_> = witnesses
                .iter()
                .filter(|w| w.rho == DiagramPart::Sigma)
                .collect();
            assert!(!flips.is_empty(), "rank {}", d.n());
            assert!(flips.iter().any(|w| {
                w.phi == identity_hom(&d)
                    && w.scaling
                        .required()
                        .values()
                        .all(|v| v == &Scalar::one(d.context()))
            }));
        }
    }

    #[test]
    fn rescaled_families_are_isomorphic_both_ways() {
        let d = free_example();
        let ctx = d.context();
        let mu = family(&d, &[((1, 2), 1), ((2, 3), 1), ((1, 3), 1)]);
        let s = vec![Scalar::from_i64(ctx, 2), Scalar::from_i64(ctx, 3)];
        let scaled = scale(&mu, &s).unwrap();
        let forward = hopf_isomorphisms(&d, &mu, &d, &scaled).unwrap();
        assert!(!forward.is_empty());
        let witness = &forward[0];
        assert_eq!(
            witness.scaling.required()[&root(1, 3)],
            Scalar::from_i64(ctx, 6)
        );
        let backward = hopf_isomorphisms(&d, &scaled, &d, &mu).unwrap();
        assert!(!backward.is_empty());
        // The inverse witness inverts every required value.
        assert_eq!(
            backward[0].scaling.required()[&root(1, 3)],
            Scalar::from_i64(ctx, 6).inv().unwrap()
        );
    }

    #[test]
    fn kernel_obstructions_separate_hopf_algebras() {
        let d = free_example();
        let mu = family(&d, &[((1, 2), 1), ((2, 3), 1), ((1, 3), 1)]);
        let other = family(&d, &[((1, 2), 1), ((2, 3), 1), ((1, 3), 5)]);
        let forward = hopf_isomorphisms(&d, &mu, &d, &other).unwrap();
        let backward = hopf_isomorphisms(&d, &other, &d, &mu).unwrap();
        assert!(forward.is_empty());
        assert!(backward.is_empty());
    }

    #[test]
    fn torsion_violations_are_rejected_with_direction() {
        let d = linking_example();
        // g_13^3 = 1, so a nonzero entry at (1, 3) violates (R1).
        let bad = family(&d, &[((1, 3), 1)]);
        let good = family(&d, &[((1, 2), 1)]);
        match hopf_isomorphisms(&d, &bad, &d, &good) {
            Err(Error::ConditionViolation { condition, i, j }) => {
                assert_eq!(condition, "R1");
                assert_eq!((i, j), (1, 3));
            }
            other => panic!("expected a condition violation, got {other:?}"),
        }
    }

    #[test]
    fn rank_mismatch_is_a_bad_input() {
        let d2 = free_example();
        let d3 = free_chain(3);
        assert!(matches!(
            hopf_isomorphisms(&d2, &ParamFamily::zero(), &d3, &ParamFamily::zero()),
            Err(Error::BadInput(_))
        ));
    }

    #[test]
    fn automorphisms_of_full_support_are_finite() {
        let d = free_example();
        let mu = family(&d, &[((1, 2), 1), ((2, 3), 1), ((1, 3), 1)]);
        let report = automorphism_group(&d, &mu).unwrap();
        assert_eq!(report.free_rank, 0);
        assert!(report.is_finite());
        // Total unimodularity: the finite scaling part is N^rank = 9.
        assert_eq!(report.scaling_torsion, BigInt::from(9));
        assert_eq!(
            report.order(),
            Some(BigInt::from(report.witnesses.len()) * BigInt::from(9))
        );
    }

    #[test]
    fn automorphisms_of_the_zero_family_keep_the_full_torus() {
        let d = free_example();
        let report = automorphism_group(&d, &ParamFamily::zero()).unwrap();
        assert_eq!(report.free_rank, 2);
        assert!(!report.is_finite());
        assert_eq!(report.order(), None);
    }

    #[test]
    fn single_interval_support_leaves_one_free_direction() {
        let d = free_example();
        let mu = family(&d, &[((1, 2), 1)]);
        let report = automorphism_group(&d, &mu).unwrap();
        assert_eq!(report.free_rank, 1);
        assert_eq!(report.scaling_torsion, BigInt::from(3));
    }

    #[test]
    fn nonzero_simple_entries_force_a_finite_group() {
        let d = free_chain(3);
        let mu = family(&d, &[((1, 2), 1), ((2, 3), 1), ((3, 4), 1)]);
        let report = automorphism_group(&d, &mu).unwrap();
        assert_eq!(report.free_rank, 0);
        assert_eq!(report.scaling_torsion, BigInt::from(27));
    }
}

#[cfg(test)]
mod class_tests {
    use super::*;
    use crate::params::scale;
    use crate::sampling::{free_example, linking_example};

    fn root(i: usize, j: usize) -> Root {
        Root::new(i, j).unwrap()
    }

    fn family(d: &CartanDatum, entries: &[((usize, usize), i64)]) -> ParamFamily {
        ParamFamily::from_entries(
            entries
                .iter()
                .map(|&((i, j), v)| (root(i, j), Scalar::from_i64(d.context(), v))),
        )
    }

    #[test]
    fn duplicates_and_rescalings_share_a_class() {
        let d = free_example();
        let ctx = d.context();
        let mu = family(&d, &[((1, 2), 1), ((2, 3), 1), ((1, 3), 1)]);
        let s = vec![Scalar::from_i64(ctx, 5), Scalar::from_i64(ctx, 1)];
        let scaled = scale(&mu, &s).unwrap();
        let other = family(&d, &[((1, 2), 1), ((2, 3), 1), ((1, 3), 3)]);
        let classes =
            iso_classes(&d, &[mu.clone(), mu.clone(), scaled, other]).unwrap();
        assert_eq!(classes, vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn fixed_simple_entries_with_distinct_long_entries_split_into_classes() {
        // The hypotheses of the infinite-classes corollary hold for the
        // unconstrained example: g_l^3 != 1, chi_l^3 = 1, g_13^3 != 1.
        // Families with mu_12 = mu_23 = 1 and pairwise distinct mu_13
        // are pairwise non-isomorphic, up to the sigma branch.
        let d = free_example();
        let mus: Vec<ParamFamily> = (0..10)
            .map(|c| family(&d, &[((1, 2), 1), ((2, 3), 1), ((1, 3), c)]))
            .collect();
        let classes = iso_classes(&d, &mus).unwrap();
        assert!(classes.len() >= 5, "got {} classes", classes.len());
    }

    #[test]
    fn pairwise_verdicts_form_an_equivalence_relation() {
        let d = linking_example();
        let ctx = d.context();
        let base = family(&d, &[((1, 2), 1), ((2, 3), 1)]);
        let mut pool = vec![
            ParamFamily::zero(),
            base.clone(),
            scale(
                &base,
                &[Scalar::from_i64(ctx, 2), Scalar::from_i64(ctx, 7)],
            )
            .unwrap(),
            family(&d, &[((1, 2), 1)]),
            family(&d, &[((2, 3), 4)]),
            family(&d, &[((1, 2), 3), ((2, 3), 5)]),
        ];
        // The normalized flip image is supported on the simple roots with
        // braiding-product values, and is also a valid family over d.
        pool.push(normalize(&d.twist(), &sigma_action(&d, &base).unwrap()).unwrap());
        let classes = iso_classes(&d, &pool).unwrap();
        let class_of = |x: usize| classes.iter().position(|c| c.contains(&x)).unwrap();
        for a in 0..pool.len() {
            for b in 0..pool.len() {
                for c in 0..pool.len() {
                    if class_of(a) == class_of(b) && class_of(b) == class_of(c) {
                        assert_eq!(class_of(a), class_of(c));
                    }
                }
            }
        }
        // Every class member relates to the class representative directly.
        for class in &classes {
            let rep = class[0];
            for &x in class {
                let direct = solve_scaling(&d, &pool[rep], &pool[x]).is_some()
                    || (twist_equivalent(&d)
                        && solve_scaling(
                            &d,
                            &normalize(&d.twist(), &sigma_action(&d, &pool[rep]).unwrap())
                                .unwrap(),
                            &pool[x],
                        )
                        .is_some());
                assert!(direct, "member {x} of class {rep}");
            }
        }
    }
}
