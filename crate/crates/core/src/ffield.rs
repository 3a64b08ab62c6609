//! Exact arithmetic in a finite field `k = GF(r^m)`.
//!
//! Elements are stored packed: the coefficient vector `(c_0, ..., c_{m-1})`
//! of the residue modulo the field's defining polynomial, encoded as the
//! integer `sum c_i r^i`. All operations go through a [`FieldSpec`], which
//! fixes `r`, `m` and the modulus and eagerly precomputes the canonical
//! generator of `k^x` (and a discrete-log table on small fields). Values
//! are immutable and operations are pure, so specs and elements can be
//! shared freely across threads.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::polyarith::{self, Polynomial};

/// Default ceiling on the field cardinality `r^m`.
pub const DEFAULT_FIELD_CAP: u64 = 1_000_000;

/// Fields up to this size get an eager exhaustive discrete-log table;
/// larger ones use Pohlig-Hellman with baby-step giant-step per call.
const DLOG_TABLE_MAX: u64 = 1024;

/// An element of `GF(r^m)`, packed as `sum c_i r^i` with `c_i` the
/// little-endian coefficients of the residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed integer value `sum c_i r^i`; the enumeration order of the field.
    pub fn packed(self) -> u64 {
        self.0
    }

    pub fn from_packed(v: u64) -> FieldElement {
        FieldElement(v)
    }
}

/// Description of `k = GF(r^m)`: characteristic, degree, defining modulus.
///
/// The canonical modulus is the lexicographically least monic irreducible of
/// degree `m` over `GF(r)` (coefficients compared from the highest degree
/// down), so field construction is reproducible; an explicit modulus may be
/// supplied instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    r: u64,
    m: u32,
    modulus: Vec<u64>,
    q: u64,
    unit_factors: Vec<(u64, u32)>,
    generator: FieldElement,
    dlog_table: Vec<u32>,
}

impl FieldSpec {
    /// `GF(r^m)` with the canonical modulus and the default size cap.
    pub fn new(r: u64, m: u32) -> Result<FieldSpec> {
        FieldSpec::with_options(r, m, None, DEFAULT_FIELD_CAP)
    }

    /// `GF(r^m)` with an explicit little-endian monic modulus of degree `m`.
    pub fn with_modulus(r: u64, m: u32, modulus: Vec<u64>) -> Result<FieldSpec> {
        FieldSpec::with_options(r, m, Some(modulus), DEFAULT_FIELD_CAP)
    }

    pub fn with_options(
        r: u64,
        m: u32,
        modulus: Option<Vec<u64>>,
        cap: u64,
    ) -> Result<FieldSpec> {
        if !is_prime(r) {
            return Err(Error::unsupported(format!(
                "field characteristic {r} is not prime"
            )));
        }
        if m == 0 {
            return Err(Error::unsupported("field degree m must be positive"));
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q
                .checked_mul(r)
                .filter(|&v| v <= cap)
                .ok_or_else(|| {
                    Error::unsupported(format!(
                        "field cardinality {r}^{m} exceeds the cap {cap}"
                    ))
                })?;
        }
        let modulus = match modulus {
            Some(cs) => {
                let cs: Vec<u64> = cs.iter().map(|&c| c % r).collect();
                if cs.len() != m as usize + 1 || *cs.last().unwrap() != 1 {
                    return Err(Error::unsupported(format!(
                        "modulus must be monic of degree {m} (got {} coefficients)",
                        cs.len()
                    )));
                }
                if m > 1 && !prime_field_irreducible(r, &cs)? {
                    return Err(Error::unsupported(
                        "supplied modulus is reducible over the prime field",
                    ));
                }
                cs
            }
            None => canonical_modulus(r, m)?,
        };
        let unit_factors = factor_u64(q - 1);
        let mut spec = FieldSpec {
            r,
            m,
            modulus,
            q,
            unit_factors,
            generator: FieldElement::ONE,
            dlog_table: Vec::new(),
        };
        spec.generator = spec.search_generator();
        if spec.q <= DLOG_TABLE_MAX {
            spec.dlog_table = spec.build_dlog_table();
        }
        Ok(spec)
    }

    pub fn characteristic(&self) -> u64 {
        self.r
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Little-endian coefficients of the defining modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field cardinality `q_k = r^m`.
    pub fn cardinality(&self) -> u64 {
        self.q
    }

    pub fn name(&self) -> String {
        if self.m == 1 {
            format!("GF({})", self.r)
        } else {
            format!("GF({}^{})", self.r, self.m)
        }
    }

    // ----- element encoding -----

    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut v = a.0;
        let mut out = vec![0u64; self.m as usize];
        for slot in out.iter_mut() {
            *slot = v % self.r;
            v /= self.r;
        }
        out
    }

    pub fn from_coeffs(&self, cs: &[u64]) -> Result<FieldElement> {
        if cs.len() > self.m as usize {
            return Err(Error::domain(format!(
                "coefficient literal of length {} in a degree-{} field",
                cs.len(),
                self.m
            )));
        }
        let mut v = 0u64;
        for &c in cs.iter().rev() {
            v = v * self.r + c % self.r;
        }
        Ok(FieldElement(v))
    }

    /// Embed an integer into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.r as i64) as u64)
    }

    pub fn render(&self, a: FieldElement) -> String {
        if self.m == 1 {
            format!("{}", a.0)
        } else {
            let cs = self.coeffs(a);
            let body: Vec<String> = cs.iter().map(|c| format!("{c}")).collect();
            format!("[{}]", body.join(","))
        }
    }

    /// All field elements in enumeration (packed) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    // ----- arithmetic -----

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement((a.0 + b.0) % self.r);
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let cs: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.r).collect();
        self.from_coeffs(&cs).expect("length preserved")
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement((self.r - a.0) % self.r);
        }
        let cs: Vec<u64> = self.coeffs(a).iter().map(|&c| (self.r - c) % self.r).collect();
        self.from_coeffs(&cs).expect("length preserved")
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            return FieldElement(a.0 * b.0 % self.r);
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let deg = self.m as usize;
        let mut prod = vec![0u64; 2 * deg - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.r;
            }
        }
        // reduce by the monic modulus
        for i in (deg..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &mc) in self.modulus.iter().enumerate().take(deg) {
                let idx = i - deg + j;
                prod[idx] = (prod[idx] + c * (self.r - mc)) % self.r;
            }
        }
        prod.truncate(deg);
        self.from_coeffs(&prod).expect("reduced")
    }

    /// `a^e` for a nonnegative exponent; `0^0 = 1`.
    pub fn pow_u(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer exponent; negative exponents invert first.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            Ok(self.pow_u(a, e as u64))
        } else {
            let inv = self.inv(a)?;
            Ok(self.pow_u(inv, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::domain(format!("division by zero in {}", self.name())));
        }
        Ok(self.pow_u(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    // ----- multiplicative structure -----

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldElement) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::domain("order of zero is undefined"));
        }
        let mut ord = self.q - 1;
        for &(l, _) in &self.unit_factors {
            while ord.is_multiple_of(l) && self.pow_u(a, ord / l) == FieldElement::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    fn search_generator(&self) -> FieldElement {
        let n = self.q - 1;
        for v in 1..self.q {
            let a = FieldElement(v);
            let primitive = self
                .unit_factors
                .iter()
                .all(|&(l, _)| self.pow_u(a, n / l) != FieldElement::ONE);
            if primitive {
                return a;
            }
        }
        // n = 1: the trivial group, generated by 1
        FieldElement::ONE
    }

    /// The least generator of `k^x` in enumeration order.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    /// `zeta_n = g^{(q_k - 1)/n}`, a primitive `n`-th root of unity.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 || !(self.q - 1).is_multiple_of(n) {
            return Err(Error::unsupported(format!(
                "no primitive {n}-th root of unity in {}: {n} does not divide q_k - 1 = {}",
                self.name(),
                self.q - 1
            )));
        }
        Ok(self.pow_u(self.generator, (self.q - 1) / n))
    }

    /// `u in k^{xp}`, by the criterion `u^{(q_k-1)/p} = 1`.
    pub fn is_pth_power(&self, u: FieldElement, p: u64) -> Result<bool> {
        if u.is_zero() {
            return Err(Error::domain("p-th power test on zero"));
        }
        if p == 0 || !(self.q - 1).is_multiple_of(p) {
            return Err(Error::domain(format!(
                "p = {p} does not divide q_k - 1 = {}",
                self.q - 1
            )));
        }
        Ok(self.pow_u(u, (self.q - 1) / p) == FieldElement::ONE)
    }

    /// The character `chi: k^x -> F_p` with kernel `k^{xp}`, defined by
    /// `u^{(q_k-1)/p} = zeta_p^{chi(u)}`.
    pub fn unit_character(&self, u: FieldElement, p: u64, zeta_p: FieldElement) -> Result<u64> {
        if u.is_zero() {
            return Err(Error::domain("unit character of zero"));
        }
        if p == 0 || !(self.q - 1).is_multiple_of(p) {
            return Err(Error::domain(format!(
                "p = {p} does not divide q_k - 1 = {}",
                self.q - 1
            )));
        }
        let w = self.pow_u(u, (self.q - 1) / p);
        let mut z = FieldElement::ONE;
        for j in 0..p {
            if z == w {
                return Ok(j);
            }
            z = self.mul(z, zeta_p);
        }
        Err(Error::domain(
            "zeta_p is not a primitive p-th root of unity",
        ))
    }

    /// The p-th root of `u` whose discrete log base `g` is the least
    /// nonnegative solution of `p * x = dlog(u) mod q_k - 1`.
    pub fn pth_root(&self, u: FieldElement, p: u64) -> Result<FieldElement> {
        if !self.is_pth_power(u, p)? {
            return Err(Error::domain(format!(
                "{} is not a p-th power in {}",
                self.render(u),
                self.name()
            )));
        }
        let d = self.dlog(u)?;
        debug_assert_eq!(d % p, 0);
        Ok(self.pow_u(self.generator, d / p))
    }

    /// Discrete logarithm base the canonical generator.
    pub fn dlog(&self, u: FieldElement) -> Result<u64> {
        if u.is_zero() {
            return Err(Error::domain("discrete log of zero"));
        }
        if !self.dlog_table.is_empty() {
            return Ok(self.dlog_table[u.0 as usize] as u64);
        }
        self.dlog_pohlig_hellman(u)
    }

    fn build_dlog_table(&self) -> Vec<u32> {
        let mut table = vec![0u32; self.q as usize];
        let mut acc = FieldElement::ONE;
        for e in 0..self.q - 1 {
            table[acc.0 as usize] = e as u32;
            acc = self.mul(acc, self.generator);
        }
        table
    }

    fn dlog_pohlig_hellman(&self, u: FieldElement) -> Result<u64> {
        let n = self.q - 1;
        let mut residues: Vec<(u64, u64)> = Vec::new();
        for &(l, e) in &self.unit_factors {
            let pe = l.pow(e);
            let g_i = self.pow_u(self.generator, n / pe);
            let h_i = self.pow_u(u, n / pe);
            // digit by digit in the order-l quotients
            let gamma = self.pow_u(g_i, pe / l);
            let mut x = 0u64;
            let mut lk = 1u64;
            for k in 0..e {
                let shift = pe / (lk * l);
                let g_inv_x = self.pow_u(self.inv(g_i)?, x);
                let c = self.pow_u(self.mul(h_i, g_inv_x), shift);
                let d = self
                    .bsgs(gamma, c, l)
                    .ok_or_else(|| Error::invariant("BSGS digit not found"))?;
                x += d * lk;
                lk *= l;
                let _ = k;
            }
            residues.push((x, pe));
        }
        crt(&residues).ok_or_else(|| Error::invariant("CRT combination failed"))
    }

    /// Baby-step giant-step for `base^x = target` in a subgroup of order `n`.
    fn bsgs(&self, base: FieldElement, target: FieldElement, n: u64) -> Option<u64> {
        let mstep = n.isqrt() + 1;
        let mut baby: BTreeMap<u64, u64> = BTreeMap::new();
        let mut acc = FieldElement::ONE;
        for j in 0..mstep {
            baby.entry(acc.0).or_insert(j);
            acc = self.mul(acc, base);
        }
        let factor = self.pow_u(self.inv(base).ok()?, mstep);
        let mut gamma = target;
        for i in 0..=n / mstep + 1 {
            if let Some(&j) = baby.get(&gamma.0) {
                return Some((i * mstep + j) % n.max(1));
            }
            gamma = self.mul(gamma, factor);
        }
        None
    }
}

/// Trial-division primality; adequate for the supported field sizes.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0u32;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn crt(residues: &[(u64, u64)]) -> Option<u64> {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(a, n) in residues {
        let (a, n) = (a as u128, n as u128);
        // solve x' = x mod modulus, x' = a mod n
        let diff = (a + n - x % n) % n;
        let inv = mod_inverse(modulus % n, n)?;
        x += modulus * ((diff * inv) % n);
        modulus *= n;
    }
    Some((x % modulus) as u64)
}

fn mod_inverse(a: u128, n: u128) -> Option<u128> {
    if n == 1 {
        return Some(0);
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u128)
}

/// Lexicographically least monic irreducible of degree `m` over `GF(r)`
/// (coefficients compared from the highest degree down).
fn canonical_modulus(r: u64, m: u32) -> Result<Vec<u64>> {
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    let mut count: u64 = 1;
    for _ in 0..m {
        count = count.saturating_mul(r);
    }
    for v in 0..count {
        let mut cs = Vec::with_capacity(m as usize + 1);
        let mut x = v;
        for _ in 0..m {
            cs.push(x % r);
            x /= r;
        }
        cs.push(1);
        if prime_field_irreducible(r, &cs)? {
            return Ok(cs);
        }
    }
    Err(Error::invariant(format!(
        "no irreducible of degree {m} over GF({r})"
    )))
}

fn prime_field_irreducible(r: u64, cs: &[u64]) -> Result<bool> {
    let prime = FieldSpec::with_options(r, 1, None, u64::MAX)?;
    let poly = Polynomial::from_coeffs(
        cs.iter().map(|&c| FieldElement::from_packed(c % r)).collect(),
    );
    polyarith::is_irreducible(&prime, &poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf5_basic_arith() {
        let k = FieldSpec::new(5, 1).unwrap();
        let two = k.from_int(2);
        let three = k.from_int(3);
        assert_eq!(k.mul(two, three), FieldElement::ONE);
        assert_eq!(k.inv(k.from_int(4)).unwrap(), k.from_int(4));
        assert!(k.div(two, FieldElement::ZERO).is_err());
    }

    #[test]
    fn gf9_modulus_relation() {
        // canonical GF(9) = GF(3)[u]/(u^2 + 1), so u * u = -1 = 2
        let k = FieldSpec::new(3, 2).unwrap();
        assert_eq!(k.modulus(), &[1, 0, 1]);
        let u = k.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(k.mul(u, u), k.from_int(2));
    }

    #[test]
    fn canonical_generators() {
        for (r, g) in [(5u64, 2u64), (7, 3), (2, 1), (3, 2), (11, 2), (19, 2)] {
            let k = FieldSpec::new(r, 1).unwrap();
            assert_eq!(k.generator().packed(), g, "generator of GF({r})");
        }
    }

    #[test]
    fn roots_of_unity() {
        let k5 = FieldSpec::new(5, 1).unwrap();
        assert_eq!(k5.primitive_root_of_unity(4).unwrap(), k5.from_int(2));
        assert_eq!(k5.primitive_root_of_unity(1).unwrap(), FieldElement::ONE);
        let k7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(k7.primitive_root_of_unity(3).unwrap(), k7.from_int(2));
        assert!(k7.primitive_root_of_unity(5).is_err());
    }

    #[test]
    fn pth_power_criterion() {
        let k5 = FieldSpec::new(5, 1).unwrap();
        assert!(k5.is_pth_power(k5.from_int(4), 2).unwrap());
        assert!(!k5.is_pth_power(k5.from_int(2), 2).unwrap());
        let k7 = FieldSpec::new(7, 1).unwrap();
        assert!(k7.is_pth_power(k7.from_int(6), 3).unwrap());
        assert!(k5.is_pth_power(FieldElement::ZERO, 2).is_err());
    }

    #[test]
    fn unit_character_values() {
        let k5 = FieldSpec::new(5, 1).unwrap();
        let zeta2 = k5.from_int(4);
        assert_eq!(k5.unit_character(k5.from_int(4), 2, zeta2).unwrap(), 0);
        assert_eq!(k5.unit_character(k5.from_int(2), 2, zeta2).unwrap(), 1);
        let k7 = FieldSpec::new(7, 1).unwrap();
        let zeta3 = k7.primitive_root_of_unity(3).unwrap();
        assert_eq!(k7.unit_character(k7.from_int(2), 3, zeta3).unwrap(), 2);
    }

    #[test]
    fn character_is_additive_with_pth_power_kernel() {
        for (r, p) in [(5u64, 2u64), (7, 3), (13, 3), (19, 3)] {
            let k = FieldSpec::new(r, 1).unwrap();
            let zeta_p = k.primitive_root_of_unity(p).unwrap();
            for u in 1..r {
                let u = k.from_int(u as i64);
                let chi_u = k.unit_character(u, p, zeta_p).unwrap();
                assert_eq!(chi_u == 0, k.is_pth_power(u, p).unwrap());
                for w in 1..r {
                    let w = k.from_int(w as i64);
                    let chi_w = k.unit_character(w, p, zeta_p).unwrap();
                    let chi_uw = k.unit_character(k.mul(u, w), p, zeta_p).unwrap();
                    assert_eq!(chi_uw, (chi_u + chi_w) % p);
                }
            }
        }
    }

    #[test]
    fn pth_root_tiebreak() {
        let k5 = FieldSpec::new(5, 1).unwrap();
        // dlog base 2: 4 = 2^2, roots of 4 are {2, 3}; least solution of
        // 2x = 2 mod 4 is x = 1, so the root is 2^1 = 2.
        assert_eq!(k5.pth_root(k5.from_int(4), 2).unwrap(), k5.from_int(2));
        let k7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(k7.pth_root(FieldElement::ONE, 3).unwrap(), FieldElement::ONE);
        assert!(k7.pth_root(k7.from_int(2), 3).is_err());
        for u in 1..7 {
            let u = k7.from_int(u);
            let cube = k7.pow_u(u, 3);
            let root = k7.pth_root(cube, 3).unwrap();
            assert_eq!(k7.pow_u(root, 3), cube);
        }
    }

    #[test]
    fn root_of_unity_exact_order() {
        for (r, m, n) in [(5u64, 1u32, 4u64), (7, 1, 6), (3, 2, 8), (19, 1, 9), (2, 3, 7)] {
            let k = FieldSpec::new(r, m).unwrap();
            let z = k.primitive_root_of_unity(n).unwrap();
            assert_eq!(k.order_of(z).unwrap(), n);
        }
    }

    #[test]
    fn dlog_roundtrip_exhaustive() {
        // covers both the eager-table path (q <= 1024) and Pohlig-Hellman
        for (r, m) in [(5u64, 1u32), (7, 1), (3, 2), (2, 5), (1009, 1), (97, 2), (3, 7)] {
            let k = FieldSpec::new(r, m).unwrap();
            assert!(k.cardinality() <= 10_000);
            let g = k.generator();
            for u in k.elements().skip(1) {
                let d = k.dlog(u).unwrap();
                assert_eq!(k.pow_u(g, d), u, "dlog roundtrip in {}", k.name());
            }
        }
    }

    #[test]
    fn size_cap_enforced() {
        assert!(FieldSpec::new(1_000_003, 1).is_err());
        assert!(FieldSpec::with_options(1_000_003, 1, None, 2_000_000).is_ok());
    }

    #[test]
    fn extension_field_arith() {
        let k = FieldSpec::new(2, 3).unwrap();
        // canonical modulus of degree 3 over GF(2) is x^3 + x + 1
        assert_eq!(k.modulus(), &[1, 1, 0, 1]);
        let u = k.from_coeffs(&[0, 1]).unwrap();
        let u3 = k.pow_u(u, 3);
        assert_eq!(u3, k.from_coeffs(&[1, 1]).unwrap());
        for a in k.elements().skip(1) {
            assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElement::ONE);
        }
    }
}
