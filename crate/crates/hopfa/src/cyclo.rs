//! Exact arithmetic in the cyclotomic field Q(zeta_L).
//!
//! A session fixes one conductor L (the exponent of the group involved,
//! or the lcm of two exponents when comparing data over different
//! groups). Scalars are dense coordinate vectors over Q in the power
//! basis 1, z, ..., z^(phi(L)-1), where z = zeta_L and phi is Euler's
//! totient; reduction is modulo the L-th cyclotomic polynomial, which is
//! irreducible over Q, so the representation is canonical and equality
//! is coefficientwise.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Coefficients of the n-th cyclotomic polynomial, ascending degree,
/// computed by exact division of x^n - 1 by the lower cyclotomics.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut memo: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for (e, phi_e) in &memo {
            if d % e == 0 {
                num = int_poly_div_exact(&num, phi_e);
            }
        }
        memo.push((d, num));
    }
    memo.pop().unwrap().1
}

/// Exact division of integer polynomials; panics if division is inexact.
/// Divisors here are cyclotomic polynomials, hence monic.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (idx, dc) in den.iter().enumerate() {
                let sub = &c * dc;
                rem[k + idx] -= sub;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    quot
}

/// Shared per-session data for Q(zeta_L) arithmetic.
pub struct CycloContext {
    conductor: u64,
    degree: usize,
    /// reduction[k] = coordinates of z^(degree + k), for k in 0..degree-1.
    reduction: Vec<Vec<BigRational>>,
}

impl fmt::Debug for CycloContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloContext(L = {})", self.conductor)
    }
}

impl CycloContext {
    pub fn new(conductor: u64) -> Arc<CycloContext> {
        assert!(conductor >= 1, "conductor must be positive");
        let phi = cyclotomic_polynomial(conductor);
        let degree = phi.len() - 1;
        // z^degree = -(phi_0 + phi_1 z + ... + phi_{degree-1} z^{degree-1})
        let base: Vec<BigRational> = phi[..degree]
            .iter()
            .map(|c| BigRational::from_integer(-c.clone()))
            .collect();
        let mut reduction = Vec::with_capacity(degree.saturating_sub(1).max(1));
        reduction.push(base);
        for k in 1..degree.saturating_sub(1).max(1) {
            // z^(degree+k) = z * z^(degree+k-1)
            let prev = &reduction[k - 1];
            let mut next = vec![BigRational::zero(); degree];
            let overflow = prev[degree - 1].clone();
            for i in 1..degree {
                next[i] = prev[i - 1].clone();
            }
            if !overflow.is_zero() {
                for i in 0..degree {
                    let add = &overflow * &reduction[0][i];
                    next[i] += add;
                }
            }
            reduction.push(next);
        }
        Arc::new(CycloContext {
            conductor,
            degree,
            reduction,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree of Q(zeta_L) over Q, i.e. phi(L).
    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// An element of Q(zeta_L) in canonical reduced form.
#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<CycloContext>,
    c: Vec<BigRational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.conductor == other.ctx.conductor && self.c == other.c
    }
}
impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

impl Scalar {
    fn new_reduced(ctx: Arc<CycloContext>, c: Vec<BigRational>) -> Scalar {
        debug_assert_eq!(c.len(), ctx.degree);
        Scalar { ctx, c }
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn zero(ctx: &Arc<CycloContext>) -> Scalar {
        Scalar::new_reduced(ctx.clone(), vec![BigRational::zero(); ctx.degree])
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Scalar {
        Scalar::from_rational(ctx, BigRational::one())
    }

    pub fn from_i64(ctx: &Arc<CycloContext>, v: i64) -> Scalar {
        Scalar::from_rational(ctx, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(ctx: &Arc<CycloContext>, v: BigRational) -> Scalar {
        let mut c = vec![BigRational::zero(); ctx.degree];
        c[0] = v;
        Scalar::new_reduced(ctx.clone(), c)
    }

    /// zeta_order^exp as an element of Q(zeta_L); fails unless order | L.
    pub fn root_of_unity(ctx: &Arc<CycloContext>, order: u64, exp: i64) -> Result<Scalar> {
        if order == 0 || ctx.conductor % order != 0 {
            return Err(Error::ConductorMismatch {
                order,
                conductor: ctx.conductor,
            });
        }
        let e = exp.rem_euclid(order as i64) as u64;
        Ok(Scalar::zeta_power(ctx, e * (ctx.conductor / order)))
    }

    /// z^k reduced, for k taken modulo L.
    fn zeta_power(ctx: &Arc<CycloContext>, k: u64) -> Scalar {
        let k = (k % ctx.conductor) as usize;
        if k < ctx.degree {
            let mut c = vec![BigRational::zero(); ctx.degree];
            c[k] = BigRational::one();
            return Scalar::new_reduced(ctx.clone(), c);
        }
        // Multiply down from the reduction table.
        let mut acc = vec![BigRational::zero(); 2 * ctx.degree];
        acc[k.min(2 * ctx.degree - 1)] = BigRational::one();
        if k <= 2 * ctx.degree - 2 {
            return Scalar::new_reduced(ctx.clone(), reduce(ctx, acc));
        }
        // k can exceed 2*degree - 2 (e.g. L = 9, degree 6, k = 8): peel
        // one factor of z at a time from z^(2*degree-2).
        let mut s = Scalar::zeta_power(ctx, (2 * ctx.degree - 2) as u64);
        let z = Scalar::zeta_power(ctx, 1);
        for _ in 0..(k - (2 * ctx.degree - 2)) {
            s = s.mul(&z);
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational part if the scalar is rational, else `None`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn check_ctx(&self, other: &Scalar) {
        assert_eq!(
            self.ctx.conductor, other.ctx.conductor,
            "scalars from different cyclotomic contexts"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_ctx(other);
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a + b)
            .collect();
        Scalar::new_reduced(self.ctx.clone(), c)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_ctx(other);
        let c = self
            .c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| a - b)
            .collect();
        Scalar::new_reduced(self.ctx.clone(), c)
    }

    pub fn neg(&self) -> Scalar {
        let c = self.c.iter().map(|a| -a.clone()).collect();
        Scalar::new_reduced(self.ctx.clone(), c)
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_ctx(other);
        let d = self.ctx.degree;
        let mut acc = vec![BigRational::zero(); 2 * d];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let add = a * b;
                acc[i + j] += add;
            }
        }
        Scalar::new_reduced(self.ctx.clone(), reduce(&self.ctx, acc))
    }

    /// Multiplicative inverse; `Err(DivisionByZero)` on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.ctx.degree == 1 {
            return Ok(Scalar::from_rational(
                &self.ctx,
                BigRational::one() / self.c[0].clone(),
            ));
        }
        // Extended Euclid in Q[z] against the (irreducible) minimal
        // polynomial of z gives s * self + t * phi = g with g a nonzero
        // constant, so self^{-1} = s / g.
        let phi: Vec<BigRational> = {
            let ints = cyclotomic_polynomial(self.ctx.conductor);
            ints.into_iter()
                .map(BigRational::from_integer)
                .collect()
        };
        let (g, s, _) = poly_ext_gcd(&trim(self.c.clone()), &phi);
        assert_eq!(g.len(), 1, "cyclotomic polynomial must be coprime to a nonzero reduced scalar");
        let ginv = BigRational::one() / g[0].clone();
        let mut c = vec![BigRational::zero(); self.ctx.degree];
        for (i, v) in s.iter().enumerate() {
            c[i] = v * &ginv;
        }
        Ok(Scalar::new_reduced(self.ctx.clone(), c))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut e = e as u64;
        let mut acc = Scalar::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Order in the multiplicative group when the scalar is a root of
    /// unity, else `None`. Any root of unity in Q(zeta_L) has order
    /// dividing lcm(2, L), so the search is bounded.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let bound = num_integer::lcm(2, self.ctx.conductor);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Parses the text form produced by `Display`.
    pub fn parse(ctx: &Arc<CycloContext>, input: &str) -> Result<Scalar> {
        parse_scalar(ctx, input)
    }
}

/// Reduces a raw coefficient vector of length <= 2*degree into the basis.
fn reduce(ctx: &Arc<CycloContext>, mut acc: Vec<BigRational>) -> Vec<BigRational> {
    let d = ctx.degree;
    for k in (d..acc.len()).rev() {
        if acc[k].is_zero() {
            continue;
        }
        let coef = std::mem::replace(&mut acc[k], BigRational::zero());
        let row = &ctx.reduction[k - d];
        for i in 0..d {
            let add = &coef * &row[i];
            acc[i] += add;
        }
    }
    acc.truncate(d);
    acc
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

/// Extended gcd of polynomials over Q: returns (g, s, t) with
/// s*a + t*b = g, all ascending-degree coefficient vectors.
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let zero = || vec![BigRational::zero()];
    let one = || vec![BigRational::one()];
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    (r0, s0, t0)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    assert!(!(b.len() == 1 && b[0].is_zero()), "division by zero polynomial");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); a.len() - db];
    let lead = b[db].clone();
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if !c.is_zero() {
            quot[k] = c.clone();
            for (idx, bc) in b.iter().enumerate() {
                let sub = &c * bc;
                rem[k + idx] -= sub;
            }
        }
    }
    (trim(quot), trim(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let add = x * y;
            out[i + j] += add;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

impl fmt::Display for Scalar {
    /// Text form like `1/2 + 3*z^2 - z^5`, where z = zeta_L. Zero prints
    /// as `0`. The form round-trips through `Scalar::parse`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, coef) in self.c.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let neg = coef.is_negative();
            let mag = coef.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if k == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !unit {
                    write!(f, "{}*", mag)?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", k)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn parse_scalar(ctx: &Arc<CycloContext>, input: &str) -> Result<Scalar> {
    let err = |reason: &str| Error::ScalarParse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let mut acc = Scalar::zero(ctx);
    let s: Vec<char> = input.chars().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < s.len() && s[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == s.len() {
        return Err(err("empty input"));
    }
    let mut sign_next: i64 = 1;
    let mut expect_term = true;
    while i < s.len() {
        if expect_term {
            // optional sign directly before a term (unary minus)
            if s[i] == '-' {
                sign_next = -sign_next;
                i += 1;
                skip_ws(&mut i);
                continue;
            }
            if s[i] == '+' {
                i += 1;
                skip_ws(&mut i);
                continue;
            }
            // term: rational ['*' z-part] | z-part
            let mut coef = BigRational::one();
            let mut saw_number = false;
            if s[i].is_ascii_digit() {
                saw_number = true;
                let num = read_uint(&s, &mut i).ok_or_else(|| err("bad integer"))?;
                let mut den = BigInt::one();
                skip_ws(&mut i);
                if i < s.len() && s[i] == '/' {
                    i += 1;
                    skip_ws(&mut i);
                    den = read_uint(&s, &mut i).ok_or_else(|| err("bad denominator"))?;
                    if den.is_zero() {
                        return Err(err("zero denominator"));
                    }
                }
                coef = BigRational::new(num, den);
            }
            let mut power: u64 = 0;
            skip_ws(&mut i);
            if saw_number && i < s.len() && s[i] == '*' {
                i += 1;
                skip_ws(&mut i);
                if i >= s.len() || s[i] != 'z' {
                    return Err(err("expected z after '*'"));
                }
            }
            if i < s.len() && s[i] == 'z' {
                i += 1;
                power = 1;
                if i < s.len() && s[i] == '^' {
                    i += 1;
                    skip_ws(&mut i);
                    let p = read_uint(&s, &mut i).ok_or_else(|| err("bad exponent"))?;
                    power = u64::try_from(p).map_err(|_| err("exponent too large"))?;
                }
            } else if !saw_number {
                return Err(err("expected a number or z"));
            }
            if sign_next < 0 {
                coef = -coef;
            }
            let term = Scalar::from_rational(ctx, coef)
                .mul(&Scalar::zeta_power(ctx, power % ctx.conductor));
            acc = acc.add(&term);
            sign_next = 1;
            expect_term = false;
            skip_ws(&mut i);
        } else {
            match s[i] {
                '+' => {
                    sign_next = 1;
                    i += 1;
                    expect_term = true;
                    skip_ws(&mut i);
                }
                '-' => {
                    sign_next = -1;
                    i += 1;
                    expect_term = true;
                    skip_ws(&mut i);
                }
                _ => return Err(err("expected '+' or '-' between terms")),
            }
        }
    }
    if expect_term {
        return Err(err("dangling operator"));
    }
    Ok(acc)
}

fn read_uint(s: &[char], i: &mut usize) -> Option<BigInt> {
    let start = *i;
    while *i < s.len() && s[*i].is_ascii_digit() {
        *i += 1;
    }
    if *i == start {
        return None;
    }
    BigInt::from_str(&s[start..*i].iter().collect::<String>()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polynomials_match_tables() {
        assert_eq!(cyclotomic_polynomial(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_polynomial(3),
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_polynomial(9),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(0),
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn roots_of_unity_reduce_canonically() {
        let ctx = CycloContext::new(9);
        let one = Scalar::root_of_unity(&ctx, 3, 3).unwrap();
        assert!(one.is_one());
        let z8 = Scalar::root_of_unity(&ctx, 9, -1).unwrap();
        assert_eq!(z8, Scalar::root_of_unity(&ctx, 9, 8).unwrap());

        let ctx6 = CycloContext::new(6);
        let m1 = Scalar::root_of_unity(&ctx6, 6, 3).unwrap();
        assert_eq!(m1, Scalar::from_i64(&ctx6, -1));
    }

    #[test]
    fn order_must_divide_conductor() {
        let ctx = CycloContext::new(9);
        match Scalar::root_of_unity(&ctx, 2, 1) {
            Err(Error::ConductorMismatch { order: 2, conductor: 9 }) => {}
            other => panic!("expected conductor mismatch, got {:?}", other),
        }
    }

    #[test]
    fn primitive_root_sums_vanish() {
        // 1 + zeta_3 + zeta_3^2 = 0 in canonical form.
        let ctx = CycloContext::new(3);
        let z = Scalar::root_of_unity(&ctx, 3, 1).unwrap();
        let sum = Scalar::one(&ctx).add(&z).add(&z.mul(&z));
        assert!(sum.is_zero());
    }

    #[test]
    fn multiplicative_orders() {
        let ctx = CycloContext::new(9);
        let z = Scalar::root_of_unity(&ctx, 9, 1).unwrap();
        assert_eq!(z.multiplicative_order(), Some(9));
        assert_eq!(z.pow(3).unwrap().multiplicative_order(), Some(3));
        assert_eq!(Scalar::from_i64(&ctx, -1).multiplicative_order(), Some(2));
        assert_eq!(Scalar::from_i64(&ctx, 2).multiplicative_order(), None);
        assert_eq!(Scalar::zero(&ctx).multiplicative_order(), None);
    }

    #[test]
    fn inverse_and_division() {
        let ctx = CycloContext::new(9);
        let z = Scalar::root_of_unity(&ctx, 9, 1).unwrap();
        let a = Scalar::from_rational(&ctx, rat(3, 2)).add(&z.pow(4).unwrap());
        let ainv = a.inv().unwrap();
        assert!(a.mul(&ainv).is_one());
        assert!(Scalar::zero(&ctx).inv().is_err());
        assert!(a.div(&Scalar::zero(&ctx)).is_err());
    }

    #[test]
    fn geometric_difference_power_identity() {
        // (1 - q^{-1})^N = (q - 1)^N whenever q^N = 1.
        for (conductor, order) in [(3u64, 3u64), (5, 5), (15, 3), (15, 5), (9, 3)] {
            let ctx = CycloContext::new(conductor);
            let q = Scalar::root_of_unity(&ctx, order, 1).unwrap();
            let n = order as i64;
            let lhs = Scalar::one(&ctx).sub(&q.inv().unwrap()).pow(n).unwrap();
            let rhs = q.sub(&Scalar::one(&ctx)).pow(n).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn odd_order_halfway_power_is_trivial() {
        // q^(N(N-1)/2) = 1 for q of odd order N.
        for order in [3u64, 5, 9, 15] {
            let ctx = CycloContext::new(order);
            let q = Scalar::root_of_unity(&ctx, order, 1).unwrap();
            let e = (order * (order - 1) / 2) as i64;
            assert!(q.pow(e).unwrap().is_one());
        }
    }

    #[test]
    fn display_examples() {
        let ctx = CycloContext::new(9);
        let z = Scalar::root_of_unity(&ctx, 9, 1).unwrap();
        let s = Scalar::from_rational(&ctx, rat(1, 2))
            .add(&Scalar::from_i64(&ctx, 3).mul(&z.pow(2).unwrap()))
            .sub(&z.pow(5).unwrap());
        assert_eq!(s.to_string(), "1/2 + 3*z^2 - z^5");
        assert_eq!(Scalar::zero(&ctx).to_string(), "0");
        assert_eq!(Scalar::from_i64(&ctx, -7).to_string(), "-7");
        assert_eq!(z.to_string(), "z");
    }

    #[test]
    fn parse_examples() {
        let ctx = CycloContext::new(9);
        let z = Scalar::root_of_unity(&ctx, 9, 1).unwrap();
        assert_eq!(Scalar::parse(&ctx, "z").unwrap(), z);
        assert_eq!(Scalar::parse(&ctx, "-z^2").unwrap(), z.pow(2).unwrap().neg());
        assert_eq!(Scalar::parse(&ctx, " 2/3 ").unwrap(), Scalar::from_rational(&ctx, rat(2, 3)));
        assert_eq!(
            Scalar::parse(&ctx, "1/2 + 3*z^2 - z^5").unwrap(),
            Scalar::from_rational(&ctx, rat(1, 2))
                .add(&Scalar::from_i64(&ctx, 3).mul(&z.pow(2).unwrap()))
                .sub(&z.pow(5).unwrap())
        );
        // Exponents beyond the basis reduce.
        assert_eq!(Scalar::parse(&ctx, "z^9").unwrap(), Scalar::one(&ctx));
        assert!(Scalar::parse(&ctx, "").is_err());
        assert!(Scalar::parse(&ctx, "1 +").is_err());
        assert!(Scalar::parse(&ctx, "q").is_err());
        assert!(Scalar::parse(&ctx, "1/0").is_err());
    }

    #[test]
    fn display_parse_round_trip_dense() {
        let ctx = CycloContext::new(12);
        let z = Scalar::root_of_unity(&ctx, 12, 1).unwrap();
        let mut s = Scalar::zero(&ctx);
        for (k, c) in [(0i64, rat(-3, 4)), (1, rat(1, 1)), (2, rat(-1, 1)), (3, rat(7, 5))] {
            s = s.add(&Scalar::from_rational(&ctx, c).mul(&z.pow(k).unwrap()));
        }
        let text = s.to_string();
        assert_eq!(Scalar::parse(&ctx, &text).unwrap(), s);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn scalar_strategy(ctx: Arc<CycloContext>) -> impl Strategy<Value = Scalar> {
            let d = ctx.degree();
            proptest::collection::vec((-6i64..=6, 1i64..=4), d).prop_map(move |cs| {
                let mut s = Scalar::zero(&ctx);
                let z = Scalar::root_of_unity(&ctx, ctx.conductor(), 1).unwrap();
                for (k, (n, dnm)) in cs.into_iter().enumerate() {
                    let c = Scalar::from_rational(&ctx, rat(n, dnm));
                    s = s.add(&c.mul(&z.pow(k as i64).unwrap()));
                }
                s
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn field_axioms_hold(
                (a, b, c) in {
                    let ctx = CycloContext::new(9);
                    (scalar_strategy(ctx.clone()), scalar_strategy(ctx.clone()), scalar_strategy(ctx))
                }
            ) {
                prop_assert_eq!(a.add(&b), b.add(&a));
                prop_assert_eq!(a.mul(&b), b.mul(&a));
                prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                prop_assert!(a.sub(&a).is_zero());
                if !a.is_zero() {
                    prop_assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }

            #[test]
            fn text_form_round_trips(
                a in {
                    let ctx = CycloContext::new(12);
                    scalar_strategy(ctx)
                }
            ) {
                let ctx = a.context().clone();
                let text = a.to_string();
                let back = Scalar::parse(&ctx, &text).unwrap();
                prop_assert_eq!(back, a);
            }

            #[test]
            fn root_powers_multiply_additively(e1 in -20i64..20, e2 in -20i64..20) {
                let ctx = CycloContext::new(15);
                let z = Scalar::root_of_unity(&ctx, 15, 1).unwrap();
                let lhs = z.pow(e1).unwrap().mul(&z.pow(e2).unwrap());
                prop_assert_eq!(lhs, z.pow(e1 + e2).unwrap());
            }
        }
    }
}
