//! The Kummer extension `E_B = E(B^{1/p})` as a formal radical extension,
//! its Galois group `N_B` with the `G`-action by conjugation, the pairing
//! `N_B x B/E^{xp} -> mu_p`, and the end-to-end verification that both
//! sides of the pairing carry the same `F_p[G]`-module structure.
//!
//! `N_B` is never materialized as automorphisms of an explicit field tower:
//! an automorphism is its exponent vector on the radical symbols `r_i`
//! (`r_i -> zeta_p^{tau_i} r_i`), and the lift `sigma~` of `sigma` acts on
//! formal monomials `u * prod r_i^{a_i}` through exact factored arithmetic
//! in `E`. Everything downstream of that is small linear algebra.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fpgmod::{
    annihilator_exponent, cyclic_decompose, dual_module, span_closure, ClassModule, JordanType,
};
use crate::linalg::{Echelon, Matrix};
use crate::ratfield::{FactoredElement, GaloisContext, KummerClass};

/// An element of `N_B = Gal(E_B/E)`: the exponent vector of its action
/// `r_i -> zeta_p^{tau_i} r_i`. Composition is componentwise addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisAutomorphism(pub Vec<u64>);

impl GaloisAutomorphism {
    pub fn identity(n: usize) -> GaloisAutomorphism {
        GaloisAutomorphism(vec![0; n])
    }

    pub fn standard(n: usize, i: usize) -> GaloisAutomorphism {
        let mut v = vec![0; n];
        v[i] = 1;
        GaloisAutomorphism(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn compose(&self, p: u64, other: &GaloisAutomorphism) -> GaloisAutomorphism {
        GaloisAutomorphism(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        )
    }
}

/// `E_B` presented by radical symbols: an ordered basis `[b_1],...,[b_n]`
/// of `B/E^{xp}` (concatenated Jordan chains `[a], [xa], ...` per cyclic
/// summand) with `r_i^p = b_i` held formally.
#[derive(Debug, Clone)]
pub struct RadicalExtension {
    classes: Vec<KummerClass>,
    elements: Vec<FactoredElement>,
    /// `(first index, length)` of each chain, lengths weakly decreasing.
    summands: Vec<(usize, u64)>,
    module: ClassModule,
    /// chain vectors in ambient class-space coordinates, one row per basis
    chain_ambient: Vec<Vec<u64>>,
    /// chain vectors in the module's echelon basis coordinates
    chain_module: Vec<Vec<u64>>,
}

/// One fixed lift `sigma~` of `sigma` to `E_B`: `sigma~(r_i) =
/// e_i * prod_j r_j^{c_ij}` where `sigma(b_i) = (prod_j b_j^{c_ij}) e_i^p`
/// holds exactly in `E^x`.
#[derive(Debug, Clone)]
pub struct LiftData {
    c: Matrix,
    e: Vec<FactoredElement>,
}

impl LiftData {
    pub fn exponents(&self) -> &Matrix {
        &self.c
    }

    pub fn corrections(&self) -> &[FactoredElement] {
        &self.e
    }

    /// The lift differing from this one by `r_i -> zeta_p^{twist_i} r_i`
    /// corrections; same `c`, units of `e_i` multiplied by `zeta_p^{twist_i}`.
    pub fn twisted(&self, ctx: &GaloisContext, twist: &[u64]) -> LiftData {
        let k = ctx.field();
        let e = self
            .e
            .iter()
            .zip(twist)
            .map(|(e, &j)| {
                let unit = FactoredElement::from_unit(k.pow_u(ctx.zeta_p(), j))
                    .expect("root of unity is nonzero");
                e.mul(k, &unit)
            })
            .collect();
        LiftData { c: self.c.clone(), e }
    }

    /// Re-check the defining identity `sigma(b_i) = (prod b_j^{c_ij}) e_i^p`
    /// by exact factored multiplication.
    pub fn verify_identity(&self, ctx: &GaloisContext, ext: &RadicalExtension) -> bool {
        let k = ctx.field();
        let p = ctx.p();
        for i in 0..ext.n() {
            let mut prod = self.e[i].pow(k, p as i64);
            for (j, b) in ext.elements.iter().enumerate() {
                prod = prod.mul(k, &b.pow(k, self.c.get(i, j) as i64));
            }
            if prod != ext.elements[i].sigma(ctx) {
                return false;
            }
        }
        true
    }
}

/// A formal monomial `coeff * prod r_j^{exps_j}` in the radicals, kept in
/// normal form with exponents in `0..p` (overflow folds into the
/// coefficient via `r_j^p = b_j`).
#[derive(Debug, Clone, PartialEq, Eq)]
struct RadicalMonomial {
    coeff: FactoredElement,
    exps: Vec<u64>,
}

impl RadicalMonomial {
    fn radical(n: usize, i: usize) -> RadicalMonomial {
        let mut exps = vec![0; n];
        exps[i] = 1;
        RadicalMonomial {
            coeff: FactoredElement::one(),
            exps,
        }
    }

    fn is_radical(&self, i: usize) -> bool {
        self.coeff.is_one()
            && self
                .exps
                .iter()
                .enumerate()
                .all(|(j, &e)| e == u64::from(j == i))
    }
}

fn rows_matrix(p: u64, rows: &[Vec<u64>], cols: usize) -> Matrix {
    if rows.is_empty() {
        Matrix::zero(p, 0, cols)
    } else {
        Matrix::from_rows(p, rows.to_vec())
    }
}

/// Build the radical extension and one canonical lift from a generating set
/// of `B`. The basis is the concatenation of deterministic Jordan chains of
/// the class module.
pub fn build_extension(
    ctx: &GaloisContext,
    generators: &[FactoredElement],
) -> Result<(RadicalExtension, LiftData)> {
    let classes: Vec<KummerClass> = generators.iter().map(|g| KummerClass::of(ctx, g)).collect();
    let module = span_closure(ctx, &classes)?;
    let chains = cyclic_decompose(&module.presentation(ctx)?)?;
    assemble_extension(ctx, module, &chains)
}

/// Build from explicit chain generators given in module-basis coordinates.
pub fn assemble_extension(
    ctx: &GaloisContext,
    module: ClassModule,
    chains: &[(Vec<u64>, u64)],
) -> Result<(RadicalExtension, LiftData)> {
    let p = ctx.p();
    let n = module.dim();
    let ambient_dim = module.space().dim();
    let x_mod = module.x_module().clone();
    let mut summands = Vec::new();
    let mut chain_module = Vec::new();
    for (g, h) in chains {
        summands.push((chain_module.len(), *h));
        let mut w = g.clone();
        for _ in 0..*h {
            chain_module.push(w.clone());
            w = x_mod.mul_vec(&w);
        }
    }
    if chain_module.len() != n {
        return Err(Error::invariant("chain basis size differs from module dimension"));
    }
    let basis_rows = rows_matrix(p, module.basis_vectors(), ambient_dim);
    let chain_ambient: Vec<Vec<u64>> = chain_module
        .iter()
        .map(|v| basis_rows.transpose().mul_vec(v))
        .collect();
    let mut indep = Echelon::new(p, ambient_dim);
    for v in &chain_ambient {
        indep.insert(v);
    }
    if indep.rank() != n {
        return Err(Error::invariant("chain classes are not independent"));
    }
    let classes: Vec<KummerClass> = chain_ambient
        .iter()
        .map(|v| module.space().class_from_vec(ctx, v))
        .collect();
    let elements: Vec<FactoredElement> = classes.iter().map(|c| c.representative(ctx)).collect();
    let ext = RadicalExtension {
        classes,
        elements,
        summands,
        module,
        chain_ambient,
        chain_module,
    };
    let lift = ext.canonical_lift(ctx)?;
    if !lift.verify_identity(ctx, &ext) {
        return Err(Error::invariant("lift identity failed re-verification"));
    }
    Ok((ext, lift))
}

impl RadicalExtension {
    pub fn n(&self) -> usize {
        self.classes.len()
    }

    pub fn basis_classes(&self) -> &[KummerClass] {
        &self.classes
    }

    pub fn basis_elements(&self) -> &[FactoredElement] {
        &self.elements
    }

    pub fn summands(&self) -> &[(usize, u64)] {
        &self.summands
    }

    pub fn module(&self) -> &ClassModule {
        &self.module
    }

    /// Chain lengths `(l_1, l_2, ...)`, the Jordan type of `B/E^{xp}` as
    /// realized by the decomposition.
    pub fn summand_type(&self) -> JordanType {
        JordanType::new(self.summands.iter().map(|s| s.1).collect())
    }

    /// Coordinates of a class in the chain basis `[b_1..b_n]`.
    pub fn coordinates(&self, ctx: &GaloisContext, c: &KummerClass) -> Result<Vec<u64>> {
        let v = self.module.space().vectorize(c)?;
        rows_matrix(ctx.p(), &self.chain_ambient, self.module.space().dim())
            .transpose()
            .solve(&v)
            .ok_or_else(|| Error::domain("class lies outside B/E^{xp}"))
    }

    /// The Kummer pairing `<tau, c> = tau(c^{1/p})/c^{1/p}` as an exponent
    /// of `zeta_p`: bilinear, and the identity matrix on (basis tau, basis
    /// class) pairs by construction.
    pub fn pairing(
        &self,
        ctx: &GaloisContext,
        tau: &GaloisAutomorphism,
        c: &KummerClass,
    ) -> Result<u64> {
        let coords = self.coordinates(ctx, c)?;
        Ok(coords
            .iter()
            .zip(&tau.0)
            .fold(0u64, |acc, (&a, &t)| (acc + a * t) % ctx.p()))
    }

    /// Canonical lift: `c_i` = chain coordinates of `class(sigma(b_i))`,
    /// `e_i` = the deterministic p-th root of `sigma(b_i) / prod b_j^{c_ij}`.
    fn canonical_lift(&self, ctx: &GaloisContext) -> Result<LiftData> {
        let k = ctx.field();
        let p = ctx.p();
        let n = self.n();
        let mut c = Matrix::zero(p, n, n);
        let mut e = Vec::with_capacity(n);
        for i in 0..n {
            let sb = self.elements[i].sigma(ctx);
            let coords = self
                .coordinates(ctx, &KummerClass::of(ctx, &sb))
                .map_err(|_| Error::invariant("sigma(b_i) left the module"))?;
            let mut prod = FactoredElement::one();
            for (j, &cij) in coords.iter().enumerate() {
                c.set(i, j, cij);
                prod = prod.mul(k, &self.elements[j].pow(k, cij as i64));
            }
            let quotient = sb.mul(k, &prod.inv(k));
            let root = quotient
                .pth_root(k, p)
                .map_err(|_| Error::invariant("lift correction is not a p-th power"))?;
            e.push(root);
        }
        Ok(LiftData { c, e })
    }

    fn monomial_mul(
        &self,
        ctx: &GaloisContext,
        a: &RadicalMonomial,
        b: &RadicalMonomial,
    ) -> RadicalMonomial {
        let k = ctx.field();
        let p = ctx.p();
        let mut coeff = a.coeff.mul(k, &b.coeff);
        let mut exps = Vec::with_capacity(a.exps.len());
        for (j, (&x, &y)) in a.exps.iter().zip(&b.exps).enumerate() {
            let s = x + y;
            if s >= p {
                exps.push(s - p);
                coeff = coeff.mul(k, &self.elements[j]);
            } else {
                exps.push(s);
            }
        }
        RadicalMonomial { coeff, exps }
    }

    /// Apply `sigma~` to a formal monomial.
    fn monomial_sigma(
        &self,
        ctx: &GaloisContext,
        lift: &LiftData,
        m: &RadicalMonomial,
    ) -> RadicalMonomial {
        let n = self.n();
        let mut acc = RadicalMonomial {
            coeff: m.coeff.sigma(ctx),
            exps: vec![0; n],
        };
        for (j, &a) in m.exps.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sr = RadicalMonomial {
                coeff: lift.e[j].clone(),
                exps: lift.c.row(j).to_vec(),
            };
            for _ in 0..a {
                acc = self.monomial_mul(ctx, &acc, &sr);
            }
        }
        acc
    }

    /// Matrix `A` of the conjugation action `tau -> sigma~ tau sigma~^{-1}`
    /// on exponent vectors: `A[i][j]` is the `r_j`-exponent of
    /// `sigma~^{-1}(r_i)`, found by iterating `sigma~` until it returns to
    /// the identity (at some multiple of `p^l`, at most `p^{l+1}`).
    pub fn conjugation_matrix(&self, ctx: &GaloisContext, lift: &LiftData) -> Result<Matrix> {
        let p = ctx.p();
        let n = self.n();
        let bound = ctx.q() * p;
        let mut cur: Vec<RadicalMonomial> = (0..n).map(|i| RadicalMonomial::radical(n, i)).collect();
        for step in 1..=bound {
            let prev = cur.clone();
            for m in cur.iter_mut() {
                *m = self.monomial_sigma(ctx, lift, m);
            }
            let radicals_fixed = cur.iter().enumerate().all(|(i, m)| m.is_radical(i));
            if radicals_fixed && step % ctx.q() == 0 {
                // sigma~^step = id on E_B, so sigma~^{-1}(r_i) = prev[i]
                let mut a = Matrix::zero(p, n, n);
                for (i, m) in prev.iter().enumerate() {
                    for (j, &e) in m.exps.iter().enumerate() {
                        a.set(i, j, e);
                    }
                }
                return Ok(a);
            }
        }
        Err(Error::invariant(
            "lift did not return to the identity within p^{l+1} steps",
        ))
    }

    /// The dual-formula route to the same action: in the chain basis,
    /// `sigma` acts on the class module by `S`; on `N_B` it must act by
    /// `transpose(S^{-1})`. Independent of the conjugation route.
    pub fn dual_action_matrix(&self, ctx: &GaloisContext) -> Result<Matrix> {
        let p = ctx.p();
        let s_mod = self
            .module
            .x_module()
            .add(&Matrix::identity(p, self.module.dim()));
        let t = rows_matrix(p, &self.chain_module, self.module.dim()).transpose();
        let t_inv = t.inverse()?;
        let s_chain = t_inv.mul(&s_mod).mul(&t);
        Ok(s_chain.inverse()?.transpose())
    }
}

/// Conjugation action on a single automorphism.
pub fn sigma_on_n(
    ctx: &GaloisContext,
    ext: &RadicalExtension,
    lift: &LiftData,
    tau: &GaloisAutomorphism,
) -> Result<GaloisAutomorphism> {
    let a = ext.conjugation_matrix(ctx, lift)?;
    Ok(GaloisAutomorphism(a.mul_vec(&tau.0)))
}

/// The `rho` data of a nontrivial class `[a]` with annihilator exponent
/// `s`: on the sub-extension with chain basis `[a], [xa], ..., [x^{s-1}a]`,
/// `rho(1)` is the automorphism `(0,...,0,1)` and
/// `rho(x^k) = X_N^k rho(1)`. The kernel of `rho` must be `<x^s>`.
#[derive(Debug, Clone)]
pub struct RhoData {
    pub s: u64,
    /// `values[k]` = exponent vector of `rho(x^k)`, for `k = 0..=s`.
    pub values: Vec<Vec<u64>>,
}

impl RhoData {
    /// `rho(x^k) != id` for `k < s` and `rho(x^s) = id`.
    pub fn kernel_ok(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(k, v)| (k as u64 == self.s) != v.iter().any(|&c| c != 0))
    }

    /// Wherever `rho(x^k)` has last nonzero component at index `i > 0`,
    /// component `i-1` of `rho(x^{k+1})` equals minus component `i` of
    /// `rho(x^k)`.
    pub fn component_relation_ok(&self, p: u64) -> bool {
        for k in 0..self.values.len() - 1 {
            let cur = &self.values[k];
            let next = &self.values[k + 1];
            if let Some(i) = cur.iter().rposition(|&c| c != 0) {
                if i > 0 && next[i - 1] != (p - cur[i]) % p {
                    return false;
                }
            }
        }
        true
    }
}

pub fn rho_map(ctx: &GaloisContext, a: &FactoredElement) -> Result<RhoData> {
    let class = KummerClass::of(ctx, a);
    if class.is_trivial() {
        return Err(Error::domain("rho is defined only for nontrivial classes"));
    }
    let s = annihilator_exponent(ctx, &class);
    let module = span_closure(ctx, core::slice::from_ref(&class))?;
    if module.dim() as u64 != s {
        return Err(Error::invariant(
            "cyclic module dimension disagrees with annihilator exponent",
        ));
    }
    let g = module
        .express(&module.space().vectorize(&class)?)
        .ok_or_else(|| Error::invariant("generator missing from its own span"))?;
    let (ext, lift) = assemble_extension(ctx, module, &[(g, s)])?;
    let n = ext.n();
    let a_mat = ext.conjugation_matrix(ctx, &lift)?;
    let x_n = a_mat.sub(&Matrix::identity(ctx.p(), n));
    let mut values = Vec::with_capacity(s as usize + 1);
    let mut v = vec![0u64; n];
    v[n - 1] = 1;
    for _ in 0..=s {
        values.push(v.clone());
        v = x_n.mul_vec(&v);
    }
    Ok(RhoData { s, values })
}

/// `N[1] = {tau : <tau, [b]> = 0 for all b in B[1]}` where `B[1]` drops the
/// chosen cyclic summand; plus the complementary `N_{B[1]}` cut out by the
/// summand itself.
pub struct SplitData {
    pub n1_basis: Vec<Vec<u64>>,
    pub rest_basis: Vec<Vec<u64>>,
}

pub fn n1_submodule(ctx: &GaloisContext, ext: &RadicalExtension, summand: usize) -> Result<SplitData> {
    let p = ctx.p();
    let n = ext.n();
    let (start, len) = *ext
        .summands()
        .get(summand)
        .ok_or_else(|| Error::domain("no such cyclic summand"))?;
    let in_summand = |j: usize| j >= start && j < start + len as usize;
    // pairing of tau with basis class b_j reads off tau_j, so the condition
    // "<tau, b> = 0 for b in the complementary summands" is a kernel system
    let mut rows_n1 = Vec::new();
    let mut rows_rest = Vec::new();
    for j in 0..n {
        let mut row = vec![0u64; n];
        row[j] = 1;
        if in_summand(j) {
            rows_rest.push(row);
        } else {
            rows_n1.push(row);
        }
    }
    let n1_basis = rows_matrix(p, &rows_n1, n).kernel_basis();
    let rest_basis = rows_matrix(p, &rows_rest, n).kernel_basis();
    Ok(SplitData { n1_basis, rest_basis })
}

/// Outcome of one named verification step.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

impl CheckResult {
    fn ok(name: &'static str) -> CheckResult {
        CheckResult {
            name,
            pass: true,
            witness: None,
        }
    }

    fn fail(name: &'static str, witness: String) -> CheckResult {
        CheckResult {
            name,
            pass: false,
            witness: Some(witness),
        }
    }

    fn of(name: &'static str, pass: bool, witness: impl FnOnce() -> String) -> CheckResult {
        if pass {
            CheckResult::ok(name)
        } else {
            CheckResult::fail(name, witness())
        }
    }
}

/// Full verification outcome for one instance.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// rendered representatives of the chain basis of `B/E^{xp}`
    pub basis: Vec<String>,
    pub jordan_type_module: JordanType,
    pub jordan_type_galois: Option<JordanType>,
    pub closure_grew: bool,
    pub checks: Vec<CheckResult>,
    pub verdict: bool,
}

/// Run every structural check of the relative Kummer correspondence on the
/// module generated by `generators`:
/// lift identity and lift independence, pairing non-degeneracy /
/// representative independence / equivariance, nilpotency of the `G`-action
/// on `N_B`, equality of Jordan types on both sides of the pairing, the
/// `rho` kernel and component claims per cyclic summand, the
/// `N[1] + N_{B[1]}` splitting, and the agreement of the conjugation action
/// with the twisted-dual matrix route.
pub fn verify_relative_kummer(
    ctx: &GaloisContext,
    generators: &[FactoredElement],
) -> Result<VerificationReport> {
    let k = ctx.field();
    let p = ctx.p();
    let (ext, lift) = build_extension(ctx, generators)?;
    let n = ext.n();
    let mut checks: Vec<CheckResult> = Vec::new();

    // 1. lift identity
    checks.push(CheckResult::of(
        "lift_identity",
        lift.verify_identity(ctx, &ext),
        || String::from("sigma(b_i) != (prod b_j^{c_ij}) e_i^p"),
    ));

    // 2. lift independence: conjugation unchanged under zeta_p twists
    let conj = ext.conjugation_matrix(ctx, &lift)?;
    let mut lift_indep = true;
    let mut lift_witness = String::new();
    let mut twists: Vec<Vec<u64>> = vec![vec![1; n]];
    if n > 0 {
        twists.push({
            let mut t = vec![0; n];
            t[0] = 1;
            t
        });
    }
    for twist in &twists {
        let other = lift.twisted(ctx, twist);
        if !other.verify_identity(ctx, &ext) {
            // a twisted lift is still a lift of sigma
            lift_indep = false;
            lift_witness = format!("twist {twist:?} broke the lift identity");
            break;
        }
        let conj2 = ext.conjugation_matrix(ctx, &other)?;
        if conj2 != conj {
            lift_indep = false;
            lift_witness = format!("conjugation differs under twist {twist:?}");
            break;
        }
    }
    checks.push(CheckResult::of("lift_independence", lift_indep, || lift_witness));

    // 3. pairing is the identity matrix on basis pairs (non-degeneracy)
    let mut pairing_id = true;
    let mut pairing_witness = String::new();
    'outer: for i in 0..n {
        let tau = GaloisAutomorphism::standard(n, i);
        for (j, b) in ext.basis_classes().iter().enumerate() {
            let v = ext.pairing(ctx, &tau, b)?;
            if v != u64::from(i == j) {
                pairing_id = false;
                pairing_witness = format!("<e_{i}, [b_{j}]> = {v}");
                break 'outer;
            }
        }
    }
    checks.push(CheckResult::of("pairing_identity_matrix", pairing_id, || {
        pairing_witness
    }));

    // 4. pairing is independent of the class representative
    let mut rep_indep = true;
    let mut rep_witness = String::new();
    'rep: for (j, b) in ext.basis_classes().iter().enumerate().take(3) {
        let w = crate::ratfield::parse_ratfunc(k, &format!("t+{j}"))
            .expect("t+c parses");
        let perturbed = ext.basis_elements()[j].mul(k, &w.pow(k, p as i64));
        let c2 = KummerClass::of(ctx, &perturbed);
        for i in 0..n {
            let tau = GaloisAutomorphism::standard(n, i);
            if ext.pairing(ctx, &tau, &c2)? != ext.pairing(ctx, &tau, b)? {
                rep_indep = false;
                rep_witness = format!("representative of [b_{j}] changed the pairing");
                break 'rep;
            }
        }
    }
    checks.push(CheckResult::of(
        "pairing_representative_independence",
        rep_indep,
        || rep_witness,
    ));

    // 5. equivariance: <sigma(tau), sigma([b])> = <tau, [b]>
    let mut equivariant = true;
    let mut equi_witness = String::new();
    'equi: for i in 0..n {
        let tau = GaloisAutomorphism::standard(n, i);
        let stau = GaloisAutomorphism(conj.mul_vec(&tau.0));
        for (j, be) in ext.basis_elements().iter().enumerate() {
            let sb = KummerClass::of(ctx, &be.sigma(ctx));
            let lhs = ext.pairing(ctx, &stau, &sb)?;
            let rhs = u64::from(i == j);
            if lhs != rhs {
                equivariant = false;
                equi_witness =
                    format!("<sigma(e_{i}), sigma[b_{j}]> = {lhs}, expected {rhs}");
                break 'equi;
            }
        }
    }
    checks.push(CheckResult::of("pairing_equivariance", equivariant, || equi_witness));

    // 6. x = sigma - 1 is nilpotent on N_B
    let x_n = conj.sub(&Matrix::identity(p, n));
    let nilpotent = x_n.pow(ctx.q()).is_zero();
    checks.push(CheckResult::of("galois_x_nilpotent", nilpotent, || {
        String::from("(A - I)^q != 0 on N_B")
    }));

    let jordan_type_module = ext.summand_type();
    let module_pres = ext.module().presentation(ctx)?;
    debug_assert_eq!(jordan_type_module, module_pres.jordan_type());

    let jordan_type_galois = if nilpotent {
        Some(JordanType::of_nilpotent(&x_n, ctx.q())?)
    } else {
        None
    };

    // 7. the main comparison: same Jordan type on both sides
    match &jordan_type_galois {
        Some(jt) => checks.push(CheckResult::of(
            "jordan_type_match",
            *jt == jordan_type_module,
            || {
                format!(
                    "module {} vs galois {}",
                    jordan_type_module.render(),
                    jt.render()
                )
            },
        )),
        None => checks.push(CheckResult::fail(
            "jordan_type_match",
            String::from("galois action not nilpotent"),
        )),
    }

    // 8-9. rho per cyclic summand
    let mut rho_kernel = true;
    let mut rho_component = true;
    let mut rho_witness = String::new();
    let mut comp_witness = String::new();
    for (idx, (start, len)) in ext.summands().iter().enumerate() {
        let a = &ext.basis_elements()[*start];
        let rho = rho_map(ctx, a)?;
        if rho.s != *len {
            rho_kernel = false;
            rho_witness = format!("summand {idx}: s = {} but chain length {len}", rho.s);
            break;
        }
        if !rho.kernel_ok() {
            rho_kernel = false;
            rho_witness = format!("summand {idx}: kernel is not <x^{}>", rho.s);
            break;
        }
        if !rho.component_relation_ok(p) {
            rho_component = false;
            comp_witness = format!("summand {idx}: component relation fails");
        }
    }
    checks.push(CheckResult::of("rho_kernel", rho_kernel, || rho_witness));
    checks.push(CheckResult::of("rho_component_relation", rho_component, || {
        comp_witness
    }));

    // 10-11. N[1] + N_{B[1]} splitting
    let mut decomposition = true;
    let mut decomp_witness = String::new();
    let mut n1_type_ok = true;
    let mut n1_type_witness = String::new();
    if !ext.summands().is_empty() {
        let split = n1_submodule(ctx, &ext, 0)?;
        let l1 = ext.summands()[0].1;
        if split.n1_basis.len() as u64 != l1 || split.n1_basis.len() + split.rest_basis.len() != n
        {
            decomposition = false;
            decomp_witness = format!(
                "dim N[1] = {}, dim N_B[1] = {}, expected {l1} + {}",
                split.n1_basis.len(),
                split.rest_basis.len(),
                n as u64 - l1
            );
        }
        if decomposition {
            // zero intersection
            let mut both = Echelon::new(p, n);
            for v in split.n1_basis.iter().chain(&split.rest_basis) {
                both.insert(v);
            }
            if both.rank() != n {
                decomposition = false;
                decomp_witness = String::from("N[1] and N_B[1] intersect nontrivially");
            }
            // G-stability of both parts
            for (label, basis) in [("N[1]", &split.n1_basis), ("N_B[1]", &split.rest_basis)] {
                let mut span = Echelon::new(p, n);
                for v in basis {
                    span.insert(v);
                }
                for v in basis {
                    if !span.contains(&conj.mul_vec(v)) {
                        decomposition = false;
                        decomp_witness = format!("{label} is not closed under sigma");
                    }
                }
            }
        }
        // jordan type of N[1] equals (l_1)
        if decomposition && nilpotent {
            let idxs: Vec<usize> = (ext.summands()[0].0..ext.summands()[0].0 + l1 as usize).collect();
            let mut restricted = Matrix::zero(p, idxs.len(), idxs.len());
            let mut leaks = false;
            for (col, &j) in idxs.iter().enumerate() {
                let img = x_n.col(j);
                for (i, &v) in img.iter().enumerate() {
                    match idxs.iter().position(|&a| a == i) {
                        Some(row) => restricted.set(row, col, v),
                        None if v != 0 => leaks = true,
                        None => {}
                    }
                }
            }
            if leaks {
                n1_type_ok = false;
                n1_type_witness = String::from("x-action leaks out of N[1] coordinates");
            } else {
                let jt = JordanType::of_nilpotent(&restricted, ctx.q())?;
                if jt != JordanType::new(vec![l1]) {
                    n1_type_ok = false;
                    n1_type_witness = format!("jordan_type(N[1]) = {}", jt.render());
                }
            }
        }
    }
    checks.push(CheckResult::of("decomposition", decomposition, || decomp_witness));
    checks.push(CheckResult::of("n1_jordan_type", n1_type_ok, || n1_type_witness));

    // 12. conjugation route equals the twisted-dual matrix route
    let dual_formula = ext.dual_action_matrix(ctx)?;
    checks.push(CheckResult::of(
        "conjugation_dual_agreement",
        conj == dual_formula,
        || String::from("conjugation matrix differs from transpose(S^{-1})"),
    ));

    // 13. dual-module path gives the same type
    let dual_type = dual_module(&module_pres).jordan_type();
    match &jordan_type_galois {
        Some(jt) => checks.push(CheckResult::of(
            "dual_path_jordan_type",
            dual_type == *jt,
            || format!("dual {} vs galois {}", dual_type.render(), jt.render()),
        )),
        None => checks.push(CheckResult::fail(
            "dual_path_jordan_type",
            String::from("galois action not nilpotent"),
        )),
    }

    let verdict = checks.iter().all(|c| c.pass);
    Ok(VerificationReport {
        basis: ext
            .basis_elements()
            .iter()
            .map(|b| b.render(k))
            .collect(),
        jordan_type_module,
        jordan_type_galois,
        closure_grew: ext.module().closure_grew(),
        checks,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldSpec;
    use crate::ratfield::parse_ratfunc;

    fn ctx(p: u64, l: u32, r: u64) -> GaloisContext {
        GaloisContext::new(p, l, FieldSpec::new(r, 1).unwrap()).unwrap()
    }

    fn elems(c: &GaloisContext, ss: &[&str]) -> Vec<FactoredElement> {
        ss.iter()
            .map(|s| parse_ratfunc(c.field(), s).unwrap())
            .collect()
    }

    #[test]
    fn extension_of_t_over_gf5() {
        let c = ctx(2, 2, 5);
        let (ext, lift) = build_extension(&c, &elems(&c, &["t"])).unwrap();
        assert_eq!(ext.n(), 2);
        assert_eq!(ext.summands(), &[(0, 2)]);
        let k = c.field();
        assert_eq!(ext.basis_elements()[0], parse_ratfunc(k, "t").unwrap());
        assert_eq!(ext.basis_elements()[1], parse_ratfunc(k, "2").unwrap());
        // sigma(t) = 2t = b_1 b_2 * 1^2
        assert_eq!(lift.exponents().row(0), &[1, 1]);
        assert!(lift.corrections()[0].is_one());
        // conjugation action: A = [[1,1],[0,1]]
        let a = ext.conjugation_matrix(&c, &lift).unwrap();
        assert_eq!(a, Matrix::from_rows(2, vec![vec![1, 1], vec![0, 1]]));
        // dual-formula route agrees
        assert_eq!(a, ext.dual_action_matrix(&c).unwrap());
    }

    #[test]
    fn pth_power_generators_give_empty_extension() {
        let c = ctx(2, 2, 5);
        let (ext, _) = build_extension(&c, &elems(&c, &["4", "t^2"])).unwrap();
        assert_eq!(ext.n(), 0);
        assert!(ext.summands().is_empty());
    }

    #[test]
    fn pairing_basics() {
        let c = ctx(3, 1, 7);
        let (ext, _) = build_extension(&c, &elems(&c, &["t", "t+1"])).unwrap();
        let n = ext.n();
        assert_eq!(n, 5); // type (3,2) per the module computation
        for i in 0..n {
            let tau = GaloisAutomorphism::standard(n, i);
            for (j, b) in ext.basis_classes().iter().enumerate() {
                assert_eq!(
                    ext.pairing(&c, &tau, b).unwrap(),
                    u64::from(i == j)
                );
            }
        }
        // bilinearity: <e_0 + e_1, [b_0 b_1]> = 2
        let tau = GaloisAutomorphism::standard(n, 0).compose(3, &GaloisAutomorphism::standard(n, 1));
        let prod = ext.basis_classes()[0].mul(&c, &ext.basis_classes()[1]);
        assert_eq!(ext.pairing(&c, &tau, &prod).unwrap(), 2);
        // trivial class pairs to zero
        assert_eq!(ext.pairing(&c, &tau, &KummerClass::trivial()).unwrap(), 0);
        // classes outside B are rejected (t+3 is not in the orbit closure
        // of {t, t+1}, which is {t, t+1, t+4, t+2} over GF(7))
        let outside = KummerClass::of(&c, &parse_ratfunc(c.field(), "t+3").unwrap());
        assert!(ext.pairing(&c, &tau, &outside).is_err());
    }

    #[test]
    fn sigma_on_n_fixed_point_and_twists() {
        let c = ctx(2, 2, 5);
        let (ext, lift) = build_extension(&c, &elems(&c, &["2"])).unwrap();
        // constants are sigma-fixed: conjugation is the identity
        let a = ext.conjugation_matrix(&c, &lift).unwrap();
        assert_eq!(a, Matrix::identity(2, 1));
        let tau = GaloisAutomorphism::standard(1, 0);
        assert_eq!(sigma_on_n(&c, &ext, &lift, &tau).unwrap(), tau);
        // identity automorphism maps to itself always
        let c2 = ctx(2, 2, 5);
        let (ext2, lift2) = build_extension(&c2, &elems(&c2, &["t"])).unwrap();
        let id = GaloisAutomorphism::identity(2);
        assert_eq!(sigma_on_n(&c2, &ext2, &lift2, &id).unwrap(), id);
        // every zeta_p twist of the lift gives the same action
        let base = ext2.conjugation_matrix(&c2, &lift2).unwrap();
        for twist in [[1u64, 0], [0, 1], [1, 1]] {
            let other = lift2.twisted(&c2, &twist);
            assert!(other.verify_identity(&c2, &ext2));
            assert_eq!(ext2.conjugation_matrix(&c2, &other).unwrap(), base);
        }
    }

    #[test]
    fn rho_examples() {
        // s = 1: constant nonsquare
        let c = ctx(2, 2, 5);
        let rho = rho_map(&c, &elems(&c, &["2"])[0]).unwrap();
        assert_eq!(rho.s, 1);
        assert_eq!(rho.values, vec![vec![1], vec![0]]);
        assert!(rho.kernel_ok());
        // GF(7), p=3, a=t: s=2; component 0 of rho(x) = -1 = 2 mod 3
        let c7 = ctx(3, 1, 7);
        let rho = rho_map(&c7, &elems(&c7, &["t"])[0]).unwrap();
        assert_eq!(rho.s, 2);
        assert_eq!(rho.values[0], vec![0, 1]);
        assert_eq!(rho.values[1][0], 2);
        assert!(rho.kernel_ok());
        assert!(rho.component_relation_ok(3));
        // GF(5), p=2, a=t: rho(x) != id, rho(x^2) = id
        let rho = rho_map(&c, &elems(&c, &["t"])[0]).unwrap();
        assert_eq!(rho.s, 2);
        assert!(rho.values[1].iter().any(|&v| v != 0));
        assert!(rho.values[2].iter().all(|&v| v == 0));
        // trivial class rejected
        assert!(rho_map(&c, &elems(&c, &["4"])[0]).is_err());
    }

    #[test]
    fn n1_split_on_two_summands() {
        let c = ctx(2, 2, 5);
        let (ext, lift) = build_extension(&c, &elems(&c, &["t", "t+1"])).unwrap();
        assert_eq!(ext.summand_type(), JordanType::new(vec![4, 2]));
        let split = n1_submodule(&c, &ext, 0).unwrap();
        assert_eq!(split.n1_basis.len(), 4);
        assert_eq!(split.rest_basis.len(), 2);
        // tau in N[1] kills every basis class of B[1] under the pairing
        for v in &split.n1_basis {
            let tau = GaloisAutomorphism(v.clone());
            for j in 4..6 {
                assert_eq!(ext.pairing(&c, &tau, &ext.basis_classes()[j]).unwrap(), 0);
            }
        }
        // both parts are closed under the conjugation action
        let conj = ext.conjugation_matrix(&c, &lift).unwrap();
        for basis in [&split.n1_basis, &split.rest_basis] {
            let mut span = Echelon::new(2, ext.n());
            for w in basis {
                span.insert(w);
            }
            for v in basis {
                assert!(span.contains(&conj.mul_vec(v)));
            }
        }
    }

    #[test]
    fn verify_hand_checked_instances() {
        // (p=2, l=2, GF(5), <t>) -> (2)
        let c = ctx(2, 2, 5);
        let r = verify_relative_kummer(&c, &elems(&c, &["t"])).unwrap();
        assert!(r.verdict, "failing checks: {:?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        assert_eq!(r.jordan_type_module, JordanType::new(vec![2]));
        assert_eq!(r.jordan_type_galois, Some(JordanType::new(vec![2])));
        // (p=3, l=1, GF(7), <t>) -> (2)
        let c7 = ctx(3, 1, 7);
        let r = verify_relative_kummer(&c7, &elems(&c7, &["t"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.jordan_type_module, JordanType::new(vec![2]));
        // (p=2, l=2, GF(5), <2>) -> (1)
        let r = verify_relative_kummer(&c, &elems(&c, &["2"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.jordan_type_module, JordanType::new(vec![1]));
        assert_eq!(r.jordan_type_galois, Some(JordanType::new(vec![1])));
    }

    #[test]
    fn verify_multi_summand_instances() {
        let c = ctx(2, 2, 5);
        let r = verify_relative_kummer(&c, &elems(&c, &["t", "t+1"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.jordan_type_module, JordanType::new(vec![4, 2]));
        let c7 = ctx(3, 1, 7);
        let r = verify_relative_kummer(&c7, &elems(&c7, &["t", "t+1"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.jordan_type_module, JordanType::new(vec![3, 2]));
        let c11 = ctx(5, 1, 11);
        let r = verify_relative_kummer(&c11, &elems(&c11, &["t", "3*(t+1)"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.jordan_type_module, JordanType::new(vec![5, 2]));
        let c19 = ctx(3, 2, 19);
        let r = verify_relative_kummer(&c19, &elems(&c19, &["t"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.jordan_type_module, JordanType::new(vec![2]));
    }

    #[test]
    fn verify_empty_module() {
        let c = ctx(2, 2, 5);
        let r = verify_relative_kummer(&c, &elems(&c, &["4"])).unwrap();
        assert!(r.verdict);
        assert_eq!(r.jordan_type_module, JordanType::new(vec![]));
        assert_eq!(r.jordan_type_galois, Some(JordanType::new(vec![])));
        let r = verify_relative_kummer(&c, &[]).unwrap();
        assert!(r.verdict);
        assert_eq!(r.basis.len(), 0);
    }

    #[test]
    fn check_names_are_stable() {
        let c = ctx(2, 1, 3);
        let r = verify_relative_kummer(&c, &elems(&c, &["t"])).unwrap();
        let names: Vec<&str> = r.checks.iter().map(|c| c.name).collect();
        assert_eq!(
            names,
            vec![
                "lift_identity",
                "lift_independence",
                "pairing_identity_matrix",
                "pairing_representative_independence",
                "pairing_equivariance",
                "galois_x_nilpotent",
                "jordan_type_match",
                "rho_kernel",
                "rho_component_relation",
                "decomposition",
                "n1_jordan_type",
                "conjugation_dual_agreement",
                "dual_path_jordan_type",
            ]
        );
        assert!(r.verdict);
    }
}
