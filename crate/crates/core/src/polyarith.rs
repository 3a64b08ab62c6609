//! Univariate polynomial arithmetic over `GF(r^m)`, with complete
//! factorization into monic irreducibles.
//!
//! Factorization runs squarefree decomposition (with the char-p descent
//! `f = g(t^r) => f = h^r`), then distinct-degree splitting, then
//! equal-degree splitting; the equal-degree stage draws its random split
//! candidates from an explicitly seeded stream, and the factor list is
//! sorted canonically, so results are reproducible byte for byte.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::ffield::{factor_u64, FieldElement, FieldSpec};

/// Dense little-endian coefficient vector; trailing zeros are stripped, so
/// the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Polynomial {
        Polynomial {
            coeffs: vec![FieldElement::ONE],
        }
    }

    pub fn x() -> Polynomial {
        Polynomial {
            coeffs: vec![FieldElement::ZERO, FieldElement::ONE],
        }
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        Polynomial::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Polynomial {
        while coeffs.last() == Some(&FieldElement::ZERO) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElement::ONE]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FieldElement::ONE
    }

    pub fn add(&self, k: &FieldSpec, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect();
        Polynomial::from_coeffs(cs)
    }

    pub fn neg(&self, k: &FieldSpec) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| k.neg(c)).collect(),
        }
    }

    pub fn sub(&self, k: &FieldSpec, other: &Polynomial) -> Polynomial {
        self.add(k, &other.neg(k))
    }

    pub fn mul(&self, k: &FieldSpec, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut cs = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                cs[i + j] = k.add(cs[i + j], k.mul(a, b));
            }
        }
        Polynomial::from_coeffs(cs)
    }

    pub fn scale(&self, k: &FieldSpec, c: FieldElement) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divmod(&self, k: &FieldSpec, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::domain("polynomial division by zero"))?;
        let lead_inv = k.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![FieldElement::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let c = k.mul(*rem.last().unwrap(), lead_inv);
            let shift = rem.len() - 1 - dd;
            if !c.is_zero() {
                quo[shift] = c;
                for (j, &mc) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] = k.sub(rem[shift + j], k.mul(c, mc));
                }
            }
            rem.pop();
            while rem.last() == Some(&FieldElement::ZERO) {
                rem.pop();
            }
        }
        Ok((Polynomial::from_coeffs(quo), Polynomial::from_coeffs(rem)))
    }

    pub fn rem(&self, k: &FieldSpec, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(k, divisor)?.1)
    }

    /// Leading coefficient and the monic rescaling `(lc, self / lc)`.
    pub fn make_monic(&self, k: &FieldSpec) -> Result<(FieldElement, Polynomial)> {
        let lc = self.leading();
        if lc.is_zero() {
            return Err(Error::domain("cannot make the zero polynomial monic"));
        }
        Ok((lc, self.scale(k, k.inv(lc)?)))
    }

    pub fn eval(&self, k: &FieldSpec, at: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = k.add(k.mul(acc, at), c);
        }
        acc
    }

    pub fn derivative(&self, k: &FieldSpec) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let cs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| k.mul(k.from_int(i as i64 + 1), c))
            .collect();
        Polynomial::from_coeffs(cs)
    }

    /// Canonical order: by degree, then coefficients from the highest degree
    /// down (in packed element order). Total on normalized polynomials.
    pub fn cmp_canonical(&self, other: &Polynomial) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn render(&self, k: &FieldSpec, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coeff = k.render(c);
            let term = match i {
                0 => coeff,
                1 if c == FieldElement::ONE => var.to_string(),
                1 => format!("{coeff}*{var}"),
                _ if c == FieldElement::ONE => format!("{var}^{i}"),
                _ => format!("{coeff}*{var}^{i}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(k: &FieldSpec, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(k, &b)?;
        a = b;
        b = r;
    }
    if a.is_zero() {
        Ok(a)
    } else {
        Ok(a.make_monic(k)?.1)
    }
}

/// `base^e mod modulus` by square and multiply.
pub fn pow_mod(k: &FieldSpec, base: &Polynomial, mut e: u64, modulus: &Polynomial) -> Result<Polynomial> {
    let mut base = base.rem(k, modulus)?;
    let mut acc = Polynomial::one().rem(k, modulus)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(k, &base).rem(k, modulus)?;
        }
        base = base.mul(k, &base).rem(k, modulus)?;
        e >>= 1;
    }
    Ok(acc)
}

/// `t^{q_k^d} mod modulus`, by iterating the `q_k`-power map `d` times.
/// Avoids forming the out-of-range exponent `q_k^d`.
fn frobenius_iterate(k: &FieldSpec, d: usize, modulus: &Polynomial) -> Result<Polynomial> {
    let mut h = Polynomial::x().rem(k, modulus)?;
    for _ in 0..d {
        h = pow_mod(k, &h, k.cardinality(), modulus)?;
    }
    Ok(h)
}

/// Rabin's test: `f` of degree `d` is irreducible over `k` iff
/// `t^{q^d} = t mod f` and `gcd(t^{q^{d/l}} - t, f) = 1` for each prime `l | d`.
pub fn is_irreducible(k: &FieldSpec, f: &Polynomial) -> Result<bool> {
    let d = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(d) => d,
    };
    let f = f.make_monic(k)?.1;
    let x = Polynomial::x();
    let full = frobenius_iterate(k, d, &f)?;
    if full != x.rem(k, &f)? {
        return Ok(false);
    }
    for (l, _) in factor_u64(d as u64) {
        let part = frobenius_iterate(k, d / l as usize, &f)?;
        let g = gcd(k, &part.sub(k, &x), &f)?;
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A nonzero polynomial as `unit * prod f_i^{e_i}` with the `f_i` monic
/// irreducible, sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(Polynomial, u32)>,
}

impl Factorization {
    /// Multiply back out; inverse of [`factor`] on its output.
    pub fn product(&self, k: &FieldSpec) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit);
        for (f, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(k, f);
            }
        }
        acc
    }
}

/// Complete factorization of a nonzero polynomial. The `seed` fixes the
/// random stream used by equal-degree splitting; any seed yields the same
/// (canonically sorted) result, just via a different route.
pub fn factor(k: &FieldSpec, f: &Polynomial, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let (unit, monic) = f.make_monic(k)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(Polynomial, u32)> = Vec::new();
    for (sqf, mult) in squarefree_parts(k, &monic)? {
        for (irr, inner) in distinct_degree(k, &sqf, &mut rng)? {
            merge_factor(&mut factors, irr, inner * mult);
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0));
    Ok(Factorization { unit, factors })
}

fn merge_factor(factors: &mut Vec<(Polynomial, u32)>, f: Polynomial, e: u32) {
    for (g, ge) in factors.iter_mut() {
        if *g == f {
            *ge += e;
            return;
        }
    }
    factors.push((f, e));
}

/// Squarefree decomposition of a monic polynomial as `(g_i, e_i)` pairs with
/// the `g_i` squarefree, pairwise coprime, and `prod g_i^{e_i} = f`.
fn squarefree_parts(k: &FieldSpec, f: &Polynomial) -> Result<Vec<(Polynomial, u32)>> {
    if f.is_one() {
        return Ok(Vec::new());
    }
    let r = k.characteristic();
    let df = f.derivative(k);
    if df.is_zero() {
        // f = g(t^r) = h(t)^r with h_i = f_{ri}^{q/r}
        let g = rth_root(k, f);
        let mut out = squarefree_parts(k, &g)?;
        for part in out.iter_mut() {
            part.1 *= r as u32;
        }
        return Ok(out);
    }
    let mut c = gcd(k, f, &df)?;
    let mut w = f.divmod(k, &c)?.0;
    let mut out = Vec::new();
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd(k, &w, &c)?;
        let z = w.divmod(k, &y)?.0;
        if !z.is_one() {
            out.push((z, i));
        }
        w = y;
        c = c.divmod(k, &w)?.0;
        i += 1;
    }
    if !c.is_one() {
        let g = rth_root(k, &c);
        for (h, e) in squarefree_parts(k, &g)? {
            out.push((h, e * r as u32));
        }
    }
    Ok(out)
}

/// Inverse Frobenius on a polynomial of the form `g(t^r)`.
fn rth_root(k: &FieldSpec, f: &Polynomial) -> Polynomial {
    let r = k.characteristic() as usize;
    let root_exp = k.cardinality() / k.characteristic();
    let cs = f
        .coeffs()
        .iter()
        .step_by(r)
        .map(|&c| k.pow_u(c, root_exp))
        .collect();
    Polynomial::from_coeffs(cs)
}

/// Distinct-degree then equal-degree splitting of a monic squarefree `f`.
/// Returns the monic irreducible factors, each with multiplicity 1.
fn distinct_degree(
    k: &FieldSpec,
    f: &Polynomial,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Vec<(Polynomial, u32)>> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = Polynomial::x().rem(k, &rest)?;
    let mut d = 0usize;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(k, &h, k.cardinality(), &rest)?;
        let g = gcd(k, &h.sub(k, &Polynomial::x()), &rest)?;
        if !g.is_one() {
            for irr in equal_degree(k, &g, d, rng)? {
                out.push((irr, 1));
            }
            rest = rest.divmod(k, &g)?.0;
            h = h.rem(k, &rest)?;
        }
    }
    if let Some(rd) = rest.degree() {
        if rd > 0 {
            out.push((rest, 1));
        }
    }
    Ok(out)
}

/// Cantor-Zassenhaus split of a monic product of distinct irreducibles of
/// equal degree `d`. Odd characteristic uses the norm-then-square-root
/// probe `a^{(1 + q + ... + q^{d-1})(q-1)/2}`; characteristic 2 uses the
/// additive trace `sum a^{2^i}`.
fn equal_degree(
    k: &FieldSpec,
    f: &Polynomial,
    d: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<Vec<Polynomial>> {
    let deg = f.degree().unwrap_or(0);
    if deg == d {
        return Ok(vec![f.clone()]);
    }
    loop {
        let a = random_poly_below(k, deg, rng);
        if a.is_constant() {
            continue;
        }
        let probe = if k.characteristic() == 2 {
            let steps = d as u32 * k.degree();
            let mut term = a.rem(k, f)?;
            let mut acc = term.clone();
            for _ in 1..steps {
                term = term.mul(k, &term).rem(k, f)?;
                acc = acc.add(k, &term);
            }
            acc
        } else {
            let mut norm = Polynomial::one();
            let mut term = a.rem(k, f)?;
            for _ in 0..d {
                norm = norm.mul(k, &term).rem(k, f)?;
                term = pow_mod(k, &term, k.cardinality(), f)?;
            }
            let half = (k.cardinality() - 1) / 2;
            pow_mod(k, &norm, half, f)?.sub(k, &Polynomial::one())
        };
        let g = gcd(k, &probe, f)?;
        let gd = g.degree().unwrap_or(0);
        if gd == 0 || gd == deg {
            continue;
        }
        let rest = f.divmod(k, &g)?.0;
        let mut out = equal_degree(k, &g, d, rng)?;
        out.extend(equal_degree(k, &rest, d, rng)?);
        return Ok(out);
    }
}

fn random_poly_below(k: &FieldSpec, deg: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Polynomial {
    let cs = (0..deg)
        .map(|_| FieldElement::from_packed(rng.next_u64() % k.cardinality()))
        .collect();
    Polynomial::from_coeffs(cs)
}

/// For monic `f` of degree `d` and a scalar `zeta`, write `f(zeta * t)` as
/// `unit * g(t)` with `g` monic: `unit = zeta^d`, `g_i = f_i zeta^{i-d}`.
pub fn substitute_scale(k: &FieldSpec, f: &Polynomial, zeta: FieldElement) -> Result<(FieldElement, Polynomial)> {
    if !f.is_monic() {
        return Err(Error::domain("substitute_scale expects a monic polynomial"));
    }
    let d = f.degree().unwrap() as u64;
    let unit = k.pow_u(zeta, d);
    let zeta_inv_d = k.inv(unit)?;
    let mut power = FieldElement::ONE;
    let mut cs = Vec::with_capacity(f.coeffs().len());
    for &c in f.coeffs() {
        cs.push(k.mul(c, k.mul(power, zeta_inv_d)));
        power = k.mul(power, zeta);
    }
    Ok((unit, Polynomial::from_coeffs(cs)))
}
