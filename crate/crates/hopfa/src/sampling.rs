//! Seeded generation of valid data and parameter families, plus a few
//! fixed small data used across tests, fixtures, and the verification
//! suites.

use std::sync::Arc;

use num_integer::Integer;
use rand::Rng;

use crate::cyclo::{CycloContext, Scalar};
use crate::datum::{cartan_entry, CartanDatum};
use crate::group::FiniteAbelianGroup;
use crate::params::ParamFamily;

/// The running small example over Γ = Z/9 × Z/3 with N = 3, q = zeta_3^2:
/// g_1 = g·h, g_2 = g^{-1}·h, chi_1(g) = chi_1(h) = zeta_3,
/// chi_2(g) = zeta_3^{-2}, chi_2(h) = 1. Mixed torsion: g_1^3 != 1 but
/// (g_1 g_2)^3 = 1.
pub fn linking_example() -> CartanDatum {
    let ctx = CycloContext::new(9);
    let group = FiniteAbelianGroup::new(vec![9, 3]).unwrap();
    let g1 = group.element(&[1, 1]);
    let g2 = group.element(&[-1, 1]);
    let chi1 = group.character(&[3, 1]);
    let chi2 = group.character(&[3, 0]);
    CartanDatum::build(&ctx, group, vec![g1, g2], vec![chi1, chi2]).unwrap()
}

/// n = 2 over Γ = Z/9 × Z/9 with N = 3: every interval g_ij has
/// g_ij^3 != 1 while all chi_l^3 = 1, so no parameter entry is forced
/// to zero.
pub fn free_example() -> CartanDatum {
    let ctx = CycloContext::new(9);
    let group = FiniteAbelianGroup::new(vec![9, 9]).unwrap();
    let g1 = group.element(&[1, 0]);
    let g2 = group.element(&[0, 1]);
    let chi1 = group.character(&[3, 0]);
    let chi2 = group.character(&[6, 3]);
    CartanDatum::build(&ctx, group, vec![g1, g2], vec![chi1, chi2]).unwrap()
}

/// Rank-n chain over Γ = (Z/9)^n with N = 3 generalizing `free_example`:
/// g_i = e_i and chi_j has exponents 3 at j, 6 at j-1, 0 elsewhere. Every
/// interval has g_ij^3 != 1 and chi_ij^3 = 1, so arbitrary parameter
/// families satisfy both linking conditions.
pub fn free_chain(n: usize) -> CartanDatum {
    assert!(n >= 2);
    let ctx = CycloContext::new(9);
    let group = FiniteAbelianGroup::new(vec![9; n]).unwrap();
    let g: Vec<_> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            group.element(&e)
        })
        .collect();
    let chi: Vec<_> = (0..n)
        .map(|j| {
            let mut exps = vec![0i64; n];
            exps[j] = 3;
            if j > 0 {
                exps[j - 1] = 6;
            }
            group.character(&exps)
        })
        .collect();
    CartanDatum::build(&ctx, group, g, chi).expect("chain datum is valid")
}

/// A minimal-conductor datum of rank n for braiding order N (odd):
/// Γ = (Z/N)^n, g_i = e_i, chi_j(e_i) = q^(a_ij (N+1)/2) with q = zeta_N,
/// where (a_ij) is the type A_n Cartan matrix. Every chi^N is trivial
/// and every g_ij^N = 1; the braiding matrix is the symmetric one.
pub fn minimal_datum(n: usize, order: u64) -> CartanDatum {
    assert!(n >= 2);
    assert!(order > 1 && order % 2 == 1);
    let ctx: Arc<CycloContext> = CycloContext::new(order);
    let group = FiniteAbelianGroup::new(vec![order; n]).unwrap();
    let half = ((order + 1) / 2) as i64;
    let g: Vec<_> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            group.element(&e)
        })
        .collect();
    let chi: Vec<_> = (0..n)
        .map(|j| {
            let exps: Vec<i64> = (0..n)
                .map(|i| crate::datum::cartan_entry(i + 1, j + 1) * half)
                .collect();
            group.character(&exps)
        })
        .collect();
    CartanDatum::build(&ctx, group, g, chi).expect("minimal datum is valid")
}

/// Uniformly random unit modulo `order`.
fn random_unit(rng: &mut impl Rng, order: u64) -> i64 {
    loop {
        let w = rng.random_range(1..order as i64);
        if w.gcd(&(order as i64)) == 1 {
            return w;
        }
    }
}

/// Braiding-exponent matrix c with c_ii = w, c_ij + c_ji = -w for adjacent
/// pairs and 0 for distant ones, all modulo `order`. Any such matrix, read
/// as q_ij = zeta^{c_ij}, satisfies the two compatibility conditions a
/// rank-n datum imposes on its braiding.
fn random_braiding_exponents(
    rng: &mut impl Rng,
    n: usize,
    order: u64,
    w: i64,
) -> Vec<Vec<i64>> {
    let m = order as i64;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = w.rem_euclid(m);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let target = if j == i + 1 { -w } else { 0 };
            let cij = rng.random_range(0..m);
            c[i][j] = cij;
            c[j][i] = (target - cij).rem_euclid(m);
        }
    }
    c
}

/// Random invertible change of basis of (Z/order)^m, returned together with
/// its inverse: a product of shears and one unit row scaling, with the
/// inverse maintained operation by operation.
fn random_basis_change(
    rng: &mut impl Rng,
    m: usize,
    order: u64,
) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let md = order as i64;
    let mut p = vec![vec![0i64; m]; m];
    let mut pinv = vec![vec![0i64; m]; m];
    for i in 0..m {
        p[i][i] = 1;
        pinv[i][i] = 1;
    }
    if m >= 2 {
        for _ in 0..(2 * m) {
            let i = rng.random_range(0..m);
            let mut j = rng.random_range(0..m - 1);
            if j >= i {
                j += 1;
            }
            let c = rng.random_range(0..md);
            // p <- E p with E the shear row_i += c row_j; pinv <- pinv E^{-1}.
            for s in 0..m {
                p[i][s] = (p[i][s] + c * p[j][s]).rem_euclid(md);
            }
            for row in pinv.iter_mut() {
                row[j] = (row[j] - c * row[i]).rem_euclid(md);
            }
        }
    }
    let i = rng.random_range(0..m);
    let u = random_unit(rng, order);
    let uinv = crate::lattice::mod_inverse(&u.into(), &md.into())
        .and_then(|v| i64::try_from(v).ok())
        .expect("unit is invertible");
    for s in 0..m {
        p[i][s] = (p[i][s] * u).rem_euclid(md);
    }
    for row in pinv.iter_mut() {
        row[i] = (row[i] * uinv).rem_euclid(md);
    }
    (p, pinv)
}

fn matvec(mat: &[Vec<i64>], v: &[i64], modulus: i64) -> Vec<i64> {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * b)
                .sum::<i64>()
                .rem_euclid(modulus)
        })
        .collect()
}

fn transpose_matvec(mat: &[Vec<i64>], v: &[i64], modulus: i64) -> Vec<i64> {
    let m = mat.len();
    (0..m)
        .map(|r| {
            (0..m)
                .map(|s| mat[s][r] * v[s])
                .sum::<i64>()
                .rem_euclid(modulus)
        })
        .collect()
}

/// Seeded random rank-n datum with q of odd order `order`, over an abelian
/// group of order at most 200. The braiding exponents are drawn freely
/// within the compatibility constraints, then the presentation is scrambled
/// by a random group automorphism so the generators are not simply the
/// standard basis. Supports order^n <= 200 directly and (n, order) = (4, 5)
/// through a rank-3 group; other shapes do not fit in the size bound.
pub fn random_datum(rng: &mut impl Rng, n: usize, order: u64) -> CartanDatum {
    assert!(n >= 2, "datum rank must be at least 2");
    assert!(order >= 3 && order % 2 == 1, "q must have odd order >= 3");
    let md = order as i64;
    let w = random_unit(rng, order);
    // Group rank m, generator exponent vectors, and character exponent
    // vectors, before scrambling.
    let (m, g_exps, chi_exps) = if (order as u128).pow(n as u32) <= 200 {
        let c = random_braiding_exponents(rng, n, order, w);
        let g: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                e
            })
            .collect();
        let chi: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| c[i][j]).collect()).collect();
        (n, g, chi)
    } else if n == 4 && order == 5 {
        // (Z/5)^3 with g_4 = g_1 g_2^2 g_3^3: the symmetric braiding
        // 3w·a_ij works over this group, and any antisymmetric twist of it
        // automatically stays realizable because the twist cancels from the
        // one linear relation the generators satisfy.
        let half = ((order + 1) / 2) as i64;
        let mut c = vec![vec![0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = (half * w * cartan_entry(i + 1, j + 1)).rem_euclid(md);
            }
        }
        let d12 = rng.random_range(0..md);
        let d13 = rng.random_range(0..md);
        let d23 = rng.random_range(0..md);
        let mut d = vec![vec![0i64; 4]; 4];
        d[0][1] = d12;
        d[1][0] = -d12;
        d[0][2] = d13;
        d[2][0] = -d13;
        d[1][2] = d23;
        d[2][1] = -d23;
        for j in 0..3 {
            d[3][j] = d[0][j] + 2 * d[1][j] + 3 * d[2][j];
            d[j][3] = -d[3][j];
        }
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = (c[i][j] + d[i][j]).rem_euclid(md);
            }
        }
        let g = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 2, 3],
        ];
        // chi_j is determined on the basis by the first three rows of c;
        // the fourth row is consistent by construction.
        let chi: Vec<Vec<i64>> = (0..4).map(|j| (0..3).map(|i| c[i][j]).collect()).collect();
        (3, g, chi)
    } else {
        panic!("no group of order <= 200 supports rank {n} with q-order {order}");
    };
    let (p, pinv) = random_basis_change(rng, m, order);
    let ctx = CycloContext::new(order);
    let group = FiniteAbelianGroup::new(vec![order; m]).unwrap();
    let g: Vec<_> = g_exps
        .iter()
        .map(|e| group.element(&matvec(&p, e, md)))
        .collect();
    let chi: Vec<_> = chi_exps
        .iter()
        .map(|y| group.character(&transpose_matvec(&pinv, y, md)))
        .collect();
    CartanDatum::build(&ctx, group, g, chi).expect("constructed datum is valid")
}

/// Random nonzero scalar of the shape m·zeta_L^a with 1 <= m <= 5.
fn random_nonzero_scalar(rng: &mut impl Rng, ctx: &Arc<CycloContext>) -> Scalar {
    let l = ctx.conductor();
    let root = Scalar::root_of_unity(ctx, l, rng.random_range(0..l as i64)).unwrap();
    root.mul(&Scalar::from_i64(ctx, rng.random_range(1..=5)))
}

/// Seeded random family satisfying the character-torsion condition: zero
/// wherever chi_ij^N != 1, and elsewhere zero with probability 1/4 or a
/// random nonzero scalar.
pub fn random_r2_family(rng: &mut impl Rng, d: &CartanDatum) -> ParamFamily {
    let nn = d.order_n() as i64;
    let mut mu = ParamFamily::zero();
    for r in d.positive_roots() {
        let (_, chi) = d.interval(r);
        if !d.group().char_is_trivial(&d.group().char_pow(&chi, nn)) {
            continue;
        }
        if rng.random_range(0..4) == 0 {
            continue;
        }
        mu.set(r, random_nonzero_scalar(rng, d.context()));
    }
    mu
}

/// Seeded random family satisfying both torsion conditions: additionally
/// zero wherever g_ij^N = 1, as the isomorphism procedure requires. Over a
/// group of exponent N this is always the zero family; mixed torsion such
/// as `free_chain` leaves room for nonzero entries.
pub fn random_parameter_family(rng: &mut impl Rng, d: &CartanDatum) -> ParamFamily {
    let nn = d.order_n() as i64;
    let mut mu = ParamFamily::zero();
    for r in d.positive_roots() {
        let (g, chi) = d.interval(r);
        if !d.group().char_is_trivial(&d.group().char_pow(&chi, nn)) {
            continue;
        }
        if d.group().is_identity(&d.group().pow(&g, nn)) {
            continue;
        }
        if rng.random_range(0..4) == 0 {
            continue;
        }
        mu.set(r, random_nonzero_scalar(rng, d.context()));
    }
    mu
}
