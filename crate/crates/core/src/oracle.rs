//! Deliberately naive second routes to results the main modules compute by
//! formula: twisted-dual action by direct functional evaluation, Jordan
//! types by enumerating vector heights, p-th power tests by exhausting the
//! field. Tests compare the fast paths against these; none of this is used
//! by the fast paths themselves.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::error::Result;
use crate::ffield::{FieldElement, FieldSpec};
use crate::fpgmod::{JordanType, ModulePresentation};
use crate::linalg::Matrix;

/// Matrix of `x = sigma - 1` on the twisted dual, entry by entry: the
/// `(i, j)` entry is `(sigma.theta_i)(e_j) - theta_i(e_j)` where
/// `(sigma.theta)(m) = theta(sigma^{-1} m)` and `sigma^{-1}` is realized as
/// `sigma^{q-1}` by repeated application. No series expansion involved.
pub fn dual_x_by_evaluation(m: &ModulePresentation) -> Matrix {
    let p = m.p();
    let n = m.dim();
    let s = m.sigma_matrix();
    let mut x = Matrix::zero(p, n, n);
    // column b of the result holds the dual coordinates of x.theta_b,
    // whose a-th coordinate is (x.theta_b)(e_a) = theta_b(sigma^{-1} e_a)
    // - theta_b(e_a)
    for a in 0..n {
        let mut v = vec![0u64; n];
        v[a] = 1;
        for _ in 0..m.q() - 1 {
            v = s.mul_vec(&v);
        }
        for (b, &vb) in v.iter().enumerate() {
            let entry = (vb + p - u64::from(a == b)) % p;
            x.set(a, b, entry);
        }
    }
    x
}

/// Jordan type read off from the heights of every single vector of the
/// space: `dim ker(x^j)` is the p-logarithm of the number of vectors killed
/// by `x^j`, and the number of parts of size >= j is the difference of
/// consecutive kernel dimensions. Only sensible for `p^n` small.
pub fn jordan_type_by_enumeration(x: &Matrix, q: u64) -> Result<JordanType> {
    let p = x.modulus();
    let n = x.nrows();
    let total = (p as u128).pow(n as u32);
    assert!(total <= 1 << 20, "enumeration oracle called on a large space");
    let mut kernel_dims = vec![0u64; q as usize + 1];
    for idx in 0..total {
        // decode idx as a vector over F_p
        let mut v = Vec::with_capacity(n);
        let mut rest = idx;
        for _ in 0..n {
            v.push((rest % p as u128) as u64);
            rest /= p as u128;
        }
        let mut height = 0u64;
        while v.iter().any(|&c| c != 0) {
            v = x.mul_vec(&v);
            height += 1;
            if height > q {
                return Err(crate::error::Error::invariant(
                    "enumeration found a vector of height above q",
                ));
            }
        }
        for j in height..=q {
            kernel_dims[j as usize] += 1;
        }
    }
    // counts -> p-logs
    let log_p = |count: u64| -> u64 {
        let mut d = 0;
        let mut acc = 1u64;
        while acc < count {
            acc *= p;
            d += 1;
        }
        d
    };
    let dims: Vec<u64> = kernel_dims.iter().map(|&c| log_p(c)).collect();
    let mut parts = Vec::new();
    for j in 1..dims.len() {
        let ge_j = dims[j] - dims[j - 1];
        for i in 0..ge_j {
            if parts.len() <= i as usize {
                parts.push(0);
            }
            let slot = &mut parts[i as usize];
            *slot += 1;
        }
    }
    Ok(JordanType::new(parts))
}

/// Brute-force p-th power test: try every field element.
pub fn is_pth_power_by_enumeration(k: &FieldSpec, u: FieldElement, p: u64) -> bool {
    k.elements().any(|w| k.pow_u(w, p) == u)
}

/// Single nilpotent Jordan block of size `s` in the standard chain basis,
/// as a module presentation over `F_p[x]/(x^q)`.
pub fn single_block(p: u64, q: u64, s: usize) -> ModulePresentation {
    let mut x = Matrix::zero(p, s, s);
    for i in 1..s {
        x.set(i, i - 1, 1);
    }
    let labels = (0..s).map(|i| alloc::format!("m{i}")).collect::<Vec<String>>();
    ModulePresentation::new(p, q, labels, x).expect("shift block is nilpotent")
}

/// Seeded random nilpotent module: a random partition with parts at most
/// `q`, conjugated by a random invertible matrix. Returns the presentation
/// together with the partition it was built from.
pub fn random_nilpotent(
    p: u64,
    q: u64,
    max_dim: usize,
    seed: u64,
) -> (ModulePresentation, JordanType) {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = (rng.next_u64() % (max_dim as u64 + 1)) as usize;
    let mut parts = Vec::new();
    let mut remaining = n as u64;
    while remaining > 0 {
        let cap = q.min(remaining);
        let part = 1 + rng.next_u64() % cap;
        parts.push(part);
        remaining -= part;
    }
    let jt = JordanType::new(parts);
    let mut x = Matrix::zero(p, n, n);
    let mut offset = 0usize;
    for &part in jt.parts() {
        for i in 1..part as usize {
            x.set(offset + i, offset + i - 1, 1);
        }
        offset += part as usize;
    }
    // random change of basis
    let t = loop {
        let mut cand = Matrix::zero(p, n, n);
        for i in 0..n {
            for j in 0..n {
                cand.set(i, j, rng.next_u64() % p);
            }
        }
        if cand.rank() == n {
            break cand;
        }
    };
    let x_conj = t.mul(&x).mul(&t.inverse().expect("t is invertible"));
    let labels = (0..n).map(|i| alloc::format!("m{i}")).collect::<Vec<String>>();
    let pres = ModulePresentation::new(p, q, labels, x_conj).expect("conjugate stays nilpotent");
    (pres, jt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgmod::{cyclic_decompose, dual_module};

    #[test]
    fn dual_oracle_agrees_on_single_blocks() {
        for (p, q) in [(2, 2), (2, 4), (3, 3), (3, 9)] {
            for s in 1..=q.min(4) as usize {
                let m = single_block(p, q, s);
                assert_eq!(
                    dual_x_by_evaluation(&m),
                    *dual_module(&m).x_matrix(),
                    "p={p} q={q} s={s}"
                );
            }
        }
    }

    #[test]
    fn dual_oracle_agrees_on_random_modules() {
        for seed in 0..40 {
            for (p, q) in [(2, 2), (2, 4), (3, 3), (3, 9)] {
                let (m, _) = random_nilpotent(p, q, 4, seed);
                assert_eq!(dual_x_by_evaluation(&m), *dual_module(&m).x_matrix());
            }
        }
    }

    #[test]
    fn enumeration_jordan_type_matches_rank_route() {
        for seed in 0..25 {
            for (p, q) in [(2, 4), (3, 3)] {
                let (m, jt) = random_nilpotent(p, q, 4, seed);
                let by_rank = m.jordan_type();
                let by_enum = jordan_type_by_enumeration(m.x_matrix(), q).unwrap();
                assert_eq!(by_rank, jt);
                assert_eq!(by_enum, jt);
            }
        }
    }

    #[test]
    fn decompose_recovers_planted_partition() {
        for seed in 0..25 {
            let (m, jt) = random_nilpotent(3, 9, 6, seed);
            let chains = cyclic_decompose(&m).unwrap();
            let found = JordanType::new(chains.iter().map(|c| c.1).collect());
            assert_eq!(found, jt);
        }
    }

    #[test]
    fn pth_power_enumeration_matches_character_route() {
        for (r, m, p) in [(5, 1, 2), (7, 1, 3), (3, 2, 2), (11, 1, 5)] {
            let k = FieldSpec::new(r, m).unwrap();
            for u in k.elements() {
                if u.is_zero() {
                    continue;
                }
                assert_eq!(
                    is_pth_power_by_enumeration(&k, u, p),
                    k.is_pth_power(u, p).unwrap(),
                    "GF({r}^{m}), u = {}",
                    k.render(u)
                );
            }
        }
    }
}
