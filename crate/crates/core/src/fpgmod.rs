//! Modules over `A = F_p[G] = F_p[x]/(x^q)` for the cyclic group
//! `G = <sigma>` of order `q = p^l`, with `x = sigma - 1`.
//!
//! A module is carried as a basis plus the nilpotent matrix of `x`; the
//! Jordan type (multiset of cyclic summand dimensions, recovered from the
//! rank sequence of powers of `x`) is the canonical isomorphism invariant
//! used for every structure verdict. Duals carry the twisted action
//! `(g theta)(m) = theta(g^{-1} m)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::ratfield::{ClassSpace, GaloisContext, KummerClass};

/// An element of `A = F_p[x]/(x^q)`: coefficient of `x^i` at index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    p: u64,
    coeffs: Vec<u64>,
}

impl GroupAlgebraElement {
    pub fn zero(p: u64, q: u64) -> GroupAlgebraElement {
        GroupAlgebraElement {
            p,
            coeffs: vec![0; q as usize],
        }
    }

    pub fn one(p: u64, q: u64) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(p, q);
        e.coeffs[0] = 1;
        e
    }

    pub fn x(p: u64, q: u64) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(p, q);
        e.coeffs[1] = 1;
        e
    }

    pub fn from_coeffs(p: u64, q: u64, cs: &[u64]) -> GroupAlgebraElement {
        let mut e = GroupAlgebraElement::zero(p, q);
        for (i, &c) in cs.iter().enumerate().take(q as usize) {
            e.coeffs[i] = c % p;
        }
        e
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Least `i` with a nonzero coefficient of `x^i`; the ideal generated
    /// by the element is `<x^i>`.
    pub fn least_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        GroupAlgebraElement {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| (a + b) % self.p)
                .collect(),
        }
    }

    /// Product, truncated at `x^q`.
    pub fn mul(&self, other: &GroupAlgebraElement) -> GroupAlgebraElement {
        let q = self.coeffs.len();
        let mut cs = vec![0u64; q];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if i + j < q {
                    cs[i + j] = (cs[i + j] + a * b) % self.p;
                }
            }
        }
        GroupAlgebraElement { p: self.p, coeffs: cs }
    }

    /// Act on a module vector through the matrix of `x`:
    /// `sum c_i X^i v`.
    pub fn apply(&self, x: &Matrix, v: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; v.len()];
        let mut power: Vec<u64> = v.iter().map(|&a| a % self.p).collect();
        for &c in &self.coeffs {
            if c != 0 {
                for (a, &w) in acc.iter_mut().zip(&power) {
                    *a = (*a + c * w) % self.p;
                }
            }
            power = x.mul_vec(&power);
        }
        acc
    }
}

/// A finitely generated `A`-module: labeled basis and the matrix of `x`.
#[derive(Debug, Clone)]
pub struct ModulePresentation {
    p: u64,
    q: u64,
    labels: Vec<String>,
    x: Matrix,
}

impl ModulePresentation {
    pub fn new(p: u64, q: u64, labels: Vec<String>, x: Matrix) -> Result<ModulePresentation> {
        if x.nrows() != x.ncols() || x.nrows() != labels.len() {
            return Err(Error::invariant("presentation dimensions disagree"));
        }
        if !x.pow(q).is_zero() {
            return Err(Error::invariant(format!(
                "x-action is not nilpotent of index <= q = {q}"
            )));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(Error::invariant("duplicate basis labels"));
            }
        }
        Ok(ModulePresentation { p, q, labels, x })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn x_matrix(&self) -> &Matrix {
        &self.x
    }

    /// Matrix of `sigma = x + 1`.
    pub fn sigma_matrix(&self) -> Matrix {
        self.x.add(&Matrix::identity(self.p, self.dim()))
    }

    pub fn jordan_type(&self) -> JordanType {
        JordanType::of_nilpotent(&self.x, self.q).expect("nilpotency checked at construction")
    }
}

/// Weakly decreasing cyclic summand dimensions; a complete isomorphism
/// invariant for finitely generated `A`-modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanType(Vec<u64>);

impl JordanType {
    pub fn new(mut parts: Vec<u64>) -> JordanType {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts.retain(|&s| s > 0);
        JordanType(parts)
    }

    pub fn parts(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Type of a nilpotent matrix from its rank sequence: the number of
    /// parts `>= j` equals `rank(X^{j-1}) - rank(X^j)`.
    pub fn of_nilpotent(x: &Matrix, q: u64) -> Result<JordanType> {
        let n = x.nrows();
        let mut counts = Vec::new();
        let mut prev_rank = n;
        let mut power = Matrix::identity(x.modulus(), n);
        for _ in 0..q {
            if prev_rank == 0 {
                break;
            }
            power = power.mul(x);
            let r = power.rank();
            counts.push((prev_rank - r) as u64);
            prev_rank = r;
        }
        if prev_rank != 0 {
            return Err(Error::invariant(format!(
                "matrix is not nilpotent of index <= {q}"
            )));
        }
        if counts.is_empty() {
            return Ok(JordanType::new(Vec::new()));
        }
        let mut parts = Vec::new();
        let height = counts.len() as u64;
        for i in 0..counts[0] {
            let size = (1..=height).filter(|&j| counts[j as usize - 1] > i).count() as u64;
            parts.push(size);
        }
        let jt = JordanType::new(parts);
        debug_assert_eq!(jt.dim(), n as u64);
        Ok(jt)
    }

    pub fn render(&self) -> String {
        let body: Vec<String> = self.0.iter().map(|s| format!("{s}")).collect();
        format!("({})", body.join(","))
    }
}

/// The `A`-submodule of `E^x/E^{xp}` generated by a set of classes: the
/// smallest subspace containing them and stable under the `x`-action.
///
/// Carries the ambient sigma-closed coordinate space, a reduced echelon
/// basis of the submodule (canonical: independent of generator order), and
/// the matrix of `x` in that basis.
#[derive(Debug, Clone)]
pub struct ClassModule {
    space: ClassSpace,
    basis: Vec<Vec<u64>>,
    x_ambient: Matrix,
    x_module: Matrix,
    closure_grew: bool,
}

/// Close the span of `generators` under the `x`-action.
pub fn span_closure(ctx: &GaloisContext, generators: &[KummerClass]) -> Result<ClassModule> {
    let p = ctx.p();
    let space = ClassSpace::spanning(ctx, generators);
    let x_ambient = space.x_matrix(ctx);
    let mut span = Echelon::new(p, space.dim());
    for g in generators {
        span.insert(&space.vectorize(g)?);
    }
    let input_rank = span.rank();
    // worklist closure: apply x to every basis row until the span is stable
    loop {
        let images: Vec<Vec<u64>> = span
            .basis()
            .iter()
            .map(|v| x_ambient.mul_vec(v))
            .collect();
        let before = span.rank();
        for img in images {
            span.insert(&img);
        }
        if span.rank() == before {
            break;
        }
    }
    let basis: Vec<Vec<u64>> = span.basis().to_vec();
    let dim = basis.len();
    // express x on the module basis: column i solves B^T y = X b_i
    let bt = Matrix::from_rows(p, basis.clone()).transpose();
    let mut x_module = Matrix::zero(p, dim, dim);
    for (i, b) in basis.iter().enumerate() {
        let img = x_ambient.mul_vec(b);
        let y = bt
            .solve(&img)
            .ok_or_else(|| Error::invariant("span closure is not x-stable"))?;
        for (j, &c) in y.iter().enumerate() {
            x_module.set(j, i, c);
        }
    }
    Ok(ClassModule {
        space,
        basis,
        x_ambient,
        x_module,
        closure_grew: dim > input_rank,
    })
}

impl ClassModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space(&self) -> &ClassSpace {
        &self.space
    }

    /// Reduced echelon basis vectors in ambient coordinates.
    pub fn basis_vectors(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn basis_classes(&self, ctx: &GaloisContext) -> Vec<KummerClass> {
        self.basis
            .iter()
            .map(|v| self.space.class_from_vec(ctx, v))
            .collect()
    }

    pub fn x_ambient(&self) -> &Matrix {
        &self.x_ambient
    }

    pub fn x_module(&self) -> &Matrix {
        &self.x_module
    }

    /// Whether the x-closure strictly enlarged the input span.
    pub fn closure_grew(&self) -> bool {
        self.closure_grew
    }

    /// Coordinates of an ambient vector in the module basis, if it lies in
    /// the module.
    pub fn express(&self, ambient: &[u64]) -> Option<Vec<u64>> {
        let p = self.x_ambient.modulus();
        Matrix::from_rows(p, self.basis.clone())
            .transpose()
            .solve(ambient)
    }

    pub fn contains(&self, ambient: &[u64]) -> bool {
        self.express(ambient).is_some()
    }

    pub fn presentation(&self, ctx: &GaloisContext) -> Result<ModulePresentation> {
        let labels = self
            .basis_classes(ctx)
            .iter()
            .map(|c| c.representative(ctx).render(ctx.field()))
            .collect();
        ModulePresentation::new(ctx.p(), ctx.q(), labels, self.x_module.clone())
    }
}

/// Least `s >= 0` with `x^s [a]` trivial; works entirely at the class level
/// (no coordinates), so it cross-checks the matrix route.
pub fn annihilator_exponent(ctx: &GaloisContext, c: &KummerClass) -> u64 {
    let mut c = c.clone();
    let mut s = 0u64;
    while !c.is_trivial() {
        c = c.x_action(ctx);
        s += 1;
        debug_assert!(s <= ctx.q(), "x-action failed to annihilate within q steps");
    }
    s
}

/// Deterministic Jordan chain decomposition of a nilpotent presentation.
///
/// Returns `(generator, height)` pairs, heights weakly decreasing, such
/// that the vectors `x^j g_i` for `0 <= j < height_i` form a basis. At
/// each height `h` the fresh generators are chosen, in lexicographic
/// order, as a complement of `ker x^{h-1} + x ker x^{h+1}` inside
/// `ker x^h`.
pub fn cyclic_decompose(m: &ModulePresentation) -> Result<Vec<(Vec<u64>, u64)>> {
    let x = m.x_matrix();
    let n = m.dim();
    let p = m.p();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut powers = vec![Matrix::identity(p, n)];
    while !powers.last().unwrap().is_zero() {
        if powers.len() > m.q() as usize {
            return Err(Error::invariant("x-action not nilpotent within q"));
        }
        let next = powers.last().unwrap().mul(x);
        powers.push(next);
    }
    let t = powers.len() - 1; // nilpotency index: x^t = 0, x^{t-1} != 0
    let kernel = |h: usize| -> Vec<Vec<u64>> {
        if h == 0 {
            Vec::new()
        } else {
            powers[h.min(t)].kernel_basis()
        }
    };
    let mut all_chains = Echelon::new(p, n);
    let mut gens: Vec<(Vec<u64>, u64)> = Vec::new();
    for h in (1..=t).rev() {
        let mut grown = Echelon::new(p, n);
        for v in kernel(h - 1) {
            grown.insert(&v);
        }
        for v in kernel(h + 1) {
            grown.insert(&x.mul_vec(&v));
        }
        let mut candidates = kernel(h);
        candidates.sort();
        for v in candidates {
            if grown.insert(&v) {
                let mut w = v.clone();
                for _ in 0..h {
                    all_chains.insert(&w);
                    w = x.mul_vec(&w);
                }
                gens.push((v, h as u64));
            }
        }
    }
    if all_chains.rank() != n {
        return Err(Error::invariant("jordan chains do not span the module"));
    }
    Ok(gens)
}

/// The twisted dual `Hom(M, F_p)` with `(g theta)(m) = theta(g^{-1} m)`:
/// on the dual basis, `sigma` acts by `transpose(S^{-1})` for `S = X + I`,
/// so `x_dual = transpose(S^{-1}) - I`. `S^{-1}` is the finite Neumann sum
/// `sum_j (-X)^j`.
pub fn dual_module(m: &ModulePresentation) -> ModulePresentation {
    let n = m.dim();
    let p = m.p();
    let x = m.x_matrix();
    let neg_x = x.scale(p - 1);
    let mut s_inv = Matrix::identity(p, n);
    let mut term = Matrix::identity(p, n);
    loop {
        term = term.mul(&neg_x);
        if term.is_zero() {
            break;
        }
        s_inv = s_inv.add(&term);
    }
    let x_dual = s_inv.transpose().sub(&Matrix::identity(p, n));
    let labels = (0..n).map(|i| format!("theta_{i}")).collect();
    ModulePresentation::new(p, m.q(), labels, x_dual)
        .expect("dual of a nilpotent action is nilpotent")
}

/// For a cyclic module in the standard chain basis `{g, xg, ..., x^{l-1}g}`
/// (so `X` is the subdiagonal shift), the functional `f` with
/// `f(x^i g) = 0` for `i < l-1` and `f(x^{l-1} g) = 1` generates the whole
/// twisted dual. Returns `f`'s dual coordinates after checking both the
/// shape precondition and the generation property.
pub fn dual_generator(m: &ModulePresentation) -> Result<Vec<u64>> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::domain("dual generator of the zero module"));
    }
    let x = m.x_matrix();
    for j in 0..n {
        for i in 0..n {
            let expect = u64::from(i == j + 1);
            if x.get(i, j) != expect {
                return Err(Error::domain(
                    "module is not in standard cyclic chain basis",
                ));
            }
        }
    }
    let mut f = vec![0u64; n];
    f[n - 1] = 1;
    let dual = dual_module(m);
    let xd = dual.x_matrix();
    let mut span = Echelon::new(m.p(), n);
    let mut w = f.clone();
    let mut last_nonzero = f.clone();
    for _ in 0..n {
        span.insert(&w);
        last_nonzero = w.clone();
        w = xd.mul_vec(&w);
    }
    if span.rank() != n || last_nonzero.iter().all(|&c| c == 0) {
        return Err(Error::invariant(
            "dual functional does not generate the dual module",
        ));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FieldSpec;
    use crate::ratfield::parse_ratfunc;

    fn ctx_2_2_gf5() -> GaloisContext {
        GaloisContext::new(2, 2, FieldSpec::new(5, 1).unwrap()).unwrap()
    }

    fn ctx_3_1_gf7() -> GaloisContext {
        GaloisContext::new(3, 1, FieldSpec::new(7, 1).unwrap()).unwrap()
    }

    fn class(ctx: &GaloisContext, s: &str) -> KummerClass {
        KummerClass::of(ctx, &parse_ratfunc(ctx.field(), s).unwrap())
    }

    fn shift_block(p: u64, n: usize) -> Matrix {
        let mut x = Matrix::zero(p, n, n);
        for i in 1..n {
            x.set(i, i - 1, 1);
        }
        x
    }

    #[test]
    fn algebra_truncates_at_q() {
        let x = GroupAlgebraElement::x(2, 4);
        let x3 = x.mul(&x).mul(&x);
        assert_eq!(x3.least_index(), Some(3));
        assert!(x3.mul(&x).is_zero());
        let one = GroupAlgebraElement::one(2, 4);
        assert_eq!(one.mul(&x3), x3);
    }

    #[test]
    fn span_closure_of_t_over_gf5() {
        let ctx = ctx_2_2_gf5();
        let m = span_closure(&ctx, &[class(&ctx, "t")]).unwrap();
        assert_eq!(m.dim(), 2);
        assert!(m.closure_grew());
        let classes = m.basis_classes(&ctx);
        assert_eq!(classes[0], class(&ctx, "t"));
        assert_eq!(classes[1], class(&ctx, "2"));
        assert_eq!(
            *m.x_module(),
            Matrix::from_rows(2, vec![vec![0, 0], vec![1, 0]])
        );
        assert_eq!(m.presentation(&ctx).unwrap().jordan_type(), JordanType::new(vec![2]));
    }

    #[test]
    fn span_closure_edge_cases() {
        let ctx = ctx_2_2_gf5();
        let empty = span_closure(&ctx, &[]).unwrap();
        assert_eq!(empty.dim(), 0);
        assert_eq!(
            empty.presentation(&ctx).unwrap().jordan_type(),
            JordanType::new(vec![])
        );
        // duplicate generators: same module
        let a = span_closure(&ctx, &[class(&ctx, "t")]).unwrap();
        let b = span_closure(&ctx, &[class(&ctx, "t"), class(&ctx, "t")]).unwrap();
        assert_eq!(a.basis_vectors(), b.basis_vectors());
    }

    #[test]
    fn span_is_generator_order_independent() {
        let ctx = ctx_3_1_gf7();
        let a = span_closure(&ctx, &[class(&ctx, "t"), class(&ctx, "t+1")]).unwrap();
        let b = span_closure(&ctx, &[class(&ctx, "t+1"), class(&ctx, "t")]).unwrap();
        assert_eq!(a.basis_vectors(), b.basis_vectors());
        assert_eq!(a.x_module(), b.x_module());
    }

    #[test]
    fn annihilator_exponents() {
        let ctx = ctx_2_2_gf5();
        assert_eq!(annihilator_exponent(&ctx, &KummerClass::trivial()), 0);
        assert_eq!(annihilator_exponent(&ctx, &class(&ctx, "t")), 2);
        assert_eq!(annihilator_exponent(&ctx, &class(&ctx, "2")), 1);
        let ctx7 = ctx_3_1_gf7();
        assert_eq!(annihilator_exponent(&ctx7, &class(&ctx7, "t")), 2);
    }

    #[test]
    fn jordan_type_examples() {
        let z = Matrix::zero(5, 3, 3);
        assert_eq!(
            JordanType::of_nilpotent(&z, 5).unwrap(),
            JordanType::new(vec![1, 1, 1])
        );
        let b = shift_block(2, 4);
        assert_eq!(JordanType::of_nilpotent(&b, 4).unwrap(), JordanType::new(vec![4]));
        // non-nilpotent within q rejected
        let id = Matrix::identity(3, 2);
        assert!(JordanType::of_nilpotent(&id, 9).is_err());
        // block sizes (2,1): ranks 3 -> 1 -> 0
        let mut x = Matrix::zero(3, 3, 3);
        x.set(1, 0, 1);
        assert_eq!(JordanType::of_nilpotent(&x, 3).unwrap(), JordanType::new(vec![2, 1]));
    }

    #[test]
    fn decompose_standard_block() {
        let p = ModulePresentation::new(
            2,
            4,
            vec!["a".into(), "b".into(), "c".into()],
            shift_block(2, 3),
        )
        .unwrap();
        let gens = cyclic_decompose(&p).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0], (vec![1, 0, 0], 3));
        assert!(cyclic_decompose(
            &ModulePresentation::new(2, 4, vec![], Matrix::zero(2, 0, 0)).unwrap()
        )
        .unwrap()
        .is_empty());
    }

    #[test]
    fn decompose_matches_jordan_type_and_spans() {
        // two blocks (2,1) over p=3 plus a scrambled copy
        let mut x = Matrix::zero(3, 3, 3);
        x.set(1, 0, 1);
        let pres = ModulePresentation::new(
            3,
            9,
            vec!["a".into(), "b".into(), "c".into()],
            x.clone(),
        )
        .unwrap();
        let gens = cyclic_decompose(&pres).unwrap();
        let dims: Vec<u64> = gens.iter().map(|g| g.1).collect();
        assert_eq!(JordanType::new(dims), pres.jordan_type());
        // chains form a basis
        let mut span = Echelon::new(3, 3);
        for (g, h) in &gens {
            let mut w = g.clone();
            for _ in 0..*h {
                span.insert(&w);
                w = x.mul_vec(&w);
            }
        }
        assert_eq!(span.rank(), 3);
    }

    #[test]
    fn dual_module_small_cases() {
        // X = 0 is self-dual on the nose
        let z = ModulePresentation::new(3, 3, vec!["a".into(), "b".into()], Matrix::zero(3, 2, 2))
            .unwrap();
        assert!(dual_module(&z).x_matrix().is_zero());
        // single block of size 2, p = 2: x_dual = [[0,1],[0,0]]
        let b = ModulePresentation::new(2, 4, vec!["g".into(), "xg".into()], shift_block(2, 2))
            .unwrap();
        let d = dual_module(&b);
        assert_eq!(
            *d.x_matrix(),
            Matrix::from_rows(2, vec![vec![0, 1], vec![0, 0]])
        );
        assert_eq!(d.jordan_type(), JordanType::new(vec![2]));
    }

    #[test]
    fn dual_preserves_jordan_type_on_class_modules() {
        let ctx = ctx_2_2_gf5();
        for gens in [vec!["t"], vec!["t", "t+1"], vec!["2*t^3", "t+2"]] {
            let cs: Vec<KummerClass> = gens.iter().map(|s| class(&ctx, s)).collect();
            let m = span_closure(&ctx, &cs).unwrap().presentation(&ctx).unwrap();
            assert_eq!(m.jordan_type(), dual_module(&m).jordan_type());
            assert_eq!(
                dual_module(&dual_module(&m)).jordan_type(),
                m.jordan_type()
            );
        }
    }

    #[test]
    fn dual_generator_spans() {
        for (p, q, l) in [(2u64, 4u64, 1usize), (2, 4, 2), (2, 4, 4), (3, 3, 3), (5, 5, 4)] {
            let labels = (0..l).map(|i| format!("v{i}")).collect();
            let m = ModulePresentation::new(p, q, labels, shift_block(p, l)).unwrap();
            let f = dual_generator(&m).unwrap();
            let mut expect = vec![0u64; l];
            expect[l - 1] = 1;
            assert_eq!(f, expect);
        }
        // non-standard basis rejected
        let m = ModulePresentation::new(2, 4, vec!["a".into(), "b".into()], Matrix::zero(2, 2, 2))
            .unwrap();
        assert!(dual_generator(&m).is_err());
    }

    #[test]
    fn sigma_matrix_of_presentation() {
        let m = ModulePresentation::new(2, 4, vec!["g".into(), "xg".into()], shift_block(2, 2))
            .unwrap();
        assert_eq!(
            m.sigma_matrix(),
            Matrix::from_rows(2, vec![vec![1, 0], vec![1, 1]])
        );
        assert_eq!(m.sigma_matrix().pow(4), Matrix::identity(2, 2));
    }
}
