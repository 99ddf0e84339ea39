//! Truncated bivariate generating functions and the 2×2 transfer matrices
//! `T_q`, `U_q` that build them one level at a time.
//!
//! With `F_p = Σ ζ_p({a}^m, b, {c}^n) x^m y^n`, `G_p = Σ ζ_p({c}^n) y^n` and
//! the star analogues `F*_p = Σ ζ*_p({c}^m, b, {a}^n) x^m y^n`,
//! `G*_p = Σ ζ*_p({a}^n) y^n`:
//!
//! ```text
//! (F_p, G_p)ᵀ   = T_p ... T_1 (0, 1)ᵀ
//! (F*_p, G*_p)ᵀ = U_p ... U_1 (0, 1)ᵀ
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use super::{inv_pow, zeta_star_trunc, zeta_trunc};
use crate::indices::Index;

/// Exponents `(a, b, c)` of the family `({a}^m, b, {c}^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Abc {
    pub a: u32,
    pub b: u32,
    pub c: u32,
}

impl Abc {
    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Abc { a, b, c }
    }
}

/// Truncation caps: degree in `x` at most `max_x`, in `y` at most `max_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Caps {
    pub max_x: usize,
    pub max_y: usize,
}

impl Caps {
    pub const fn new(max_x: usize, max_y: usize) -> Self {
        Caps { max_x, max_y }
    }

    fn swapped(self) -> Caps {
        Caps::new(self.max_y, self.max_x)
    }
}

/// A polynomial in commuting `x, y` with every monomial beyond the caps dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct GFPoly {
    caps: Caps,
    // row-major: coeffs[m * (max_y + 1) + n] is the coefficient of x^m y^n
    coeffs: Vec<Rational>,
}

impl GFPoly {
    pub fn zero(caps: Caps) -> Self {
        GFPoly {
            caps,
            coeffs: vec![Rational::new(); (caps.max_x + 1) * (caps.max_y + 1)],
        }
    }

    pub fn constant(caps: Caps, value: Rational) -> Self {
        let mut p = GFPoly::zero(caps);
        p.coeffs[0] = value;
        p
    }

    pub fn one(caps: Caps) -> Self {
        GFPoly::constant(caps, Rational::from(1))
    }

    /// `c0 + c1·x`.
    pub fn linear_x(caps: Caps, c0: Rational, c1: Rational) -> Self {
        let mut p = GFPoly::constant(caps, c0);
        p.set(1, 0, c1);
        p
    }

    /// `c0 + c1·y`.
    pub fn linear_y(caps: Caps, c0: Rational, c1: Rational) -> Self {
        let mut p = GFPoly::constant(caps, c0);
        p.set(0, 1, c1);
        p
    }

    /// `(1 - r·x)^{-1}` expanded to the cap.
    pub fn geometric_x(caps: Caps, r: &Rational) -> Self {
        let mut p = GFPoly::zero(caps);
        let mut term = Rational::from(1);
        for m in 0..=caps.max_x {
            p.set(m, 0, term.clone());
            term *= r;
        }
        p
    }

    /// `(1 - r·y)^{-1}` expanded to the cap.
    pub fn geometric_y(caps: Caps, r: &Rational) -> Self {
        let mut p = GFPoly::zero(caps);
        let mut term = Rational::from(1);
        for n in 0..=caps.max_y {
            p.set(0, n, term.clone());
            term *= r;
        }
        p
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Coefficient of `x^m y^n`; zero beyond the caps.
    pub fn coeff(&self, m: usize, n: usize) -> Rational {
        if m > self.caps.max_x || n > self.caps.max_y {
            return Rational::new();
        }
        self.coeffs[self.slot(m, n)].clone()
    }

    fn set(&mut self, m: usize, n: usize, value: Rational) {
        if m <= self.caps.max_x && n <= self.caps.max_y {
            let slot = self.slot(m, n);
            self.coeffs[slot] = value;
        }
    }

    fn slot(&self, m: usize, n: usize) -> usize {
        m * (self.caps.max_y + 1) + n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// `F(x, y) -> F(-y, -x)`; the caps swap accordingly.
    pub fn swap_negate(&self) -> GFPoly {
        let mut out = GFPoly::zero(self.caps.swapped());
        for m in 0..=self.caps.max_x {
            for n in 0..=self.caps.max_y {
                let c = self.coeff(m, n);
                out.set(n, m, if (m + n) % 2 == 0 { c } else { -c });
            }
        }
        out
    }

    fn check_caps(&self, other: &GFPoly) {
        assert_eq!(self.caps, other.caps, "generating-function caps differ");
    }
}

impl fmt::Debug for GFPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for m in 0..=self.caps.max_x {
            for n in 0..=self.caps.max_y {
                let c = &self.coeffs[self.slot(m, n)];
                if *c != 0 {
                    terms.push(format!("{c}·x^{m}y^{n}"));
                }
            }
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "GFPoly[{}]", terms.join(" + "))
    }
}

impl Add for &GFPoly {
    type Output = GFPoly;

    fn add(self, rhs: &GFPoly) -> GFPoly {
        self.check_caps(rhs);
        GFPoly {
            caps: self.caps,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| Rational::from(a + b))
                .collect(),
        }
    }
}

impl Sub for &GFPoly {
    type Output = GFPoly;

    fn sub(self, rhs: &GFPoly) -> GFPoly {
        self + &(-rhs)
    }
}

impl Neg for &GFPoly {
    type Output = GFPoly;

    fn neg(self) -> GFPoly {
        GFPoly {
            caps: self.caps,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }
}

impl Mul for &GFPoly {
    type Output = GFPoly;

    fn mul(self, rhs: &GFPoly) -> GFPoly {
        self.check_caps(rhs);
        let caps = self.caps;
        let mut out = GFPoly::zero(caps);
        for m1 in 0..=caps.max_x {
            for n1 in 0..=caps.max_y {
                let c1 = &self.coeffs[self.slot(m1, n1)];
                if *c1 == 0 {
                    continue;
                }
                for m2 in 0..=caps.max_x - m1 {
                    for n2 in 0..=caps.max_y - n1 {
                        let c2 = &rhs.coeffs[rhs.slot(m2, n2)];
                        if *c2 != 0 {
                            let slot = out.slot(m1 + m2, n1 + n2);
                            out.coeffs[slot] += Rational::from(c1 * c2);
                        }
                    }
                }
            }
        }
        out
    }
}

/// A 2×2 matrix of truncated generating functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GFMatrix(pub [[GFPoly; 2]; 2]);

impl GFMatrix {
    pub fn identity(caps: Caps) -> Self {
        GFMatrix([
            [GFPoly::one(caps), GFPoly::zero(caps)],
            [GFPoly::zero(caps), GFPoly::one(caps)],
        ])
    }

    pub fn apply(&self, v: &[GFPoly; 2]) -> [GFPoly; 2] {
        let m = &self.0;
        [
            &(&m[0][0] * &v[0]) + &(&m[0][1] * &v[1]),
            &(&m[1][0] * &v[0]) + &(&m[1][1] * &v[1]),
        ]
    }
}

impl Mul for &GFMatrix {
    type Output = GFMatrix;

    fn mul(self, rhs: &GFMatrix) -> GFMatrix {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        GFMatrix([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }
}

/// `T_q = [[1 + x/q^a, 1/q^b], [0, 1 + y/q^c]]`.
pub fn gf_step_t(q: u64, abc: Abc, caps: Caps) -> GFMatrix {
    let one = || Rational::from(1);
    GFMatrix([
        [
            GFPoly::linear_x(caps, one(), inv_pow(q, abc.a)),
            GFPoly::constant(caps, inv_pow(q, abc.b)),
        ],
        [
            GFPoly::zero(caps),
            GFPoly::linear_y(caps, one(), inv_pow(q, abc.c)),
        ],
    ])
}

/// `U_q = (1 - x/q^c)^{-1} (1 - y/q^a)^{-1} [[1 - y/q^a, 1/q^b], [0, 1 - x/q^c]]`,
/// with the scalar prefactor cancelled entrywise and expanded geometrically.
pub fn gf_step_u(q: u64, abc: Abc, caps: Caps) -> GFMatrix {
    let gx = GFPoly::geometric_x(caps, &inv_pow(q, abc.c));
    let gy = GFPoly::geometric_y(caps, &inv_pow(q, abc.a));
    let corner = &(&gx * &gy) * &GFPoly::constant(caps, inv_pow(q, abc.b));
    GFMatrix([[gx, corner], [GFPoly::zero(caps), gy]])
}

fn run_steps(p: u64, caps: Caps, step: impl Fn(u64) -> GFMatrix) -> (GFPoly, GFPoly) {
    let mut v = [GFPoly::zero(caps), GFPoly::one(caps)];
    for q in 1..=p {
        v = step(q).apply(&v);
    }
    let [f, g] = v;
    (f, g)
}

/// `(F_p, G_p)`.
pub fn generating_pair(p: u64, abc: Abc, caps: Caps) -> (GFPoly, GFPoly) {
    run_steps(p, caps, |q| gf_step_t(q, abc, caps))
}

/// `(F*_p, G*_p)`.
pub fn generating_pair_star(p: u64, abc: Abc, caps: Caps) -> (GFPoly, GFPoly) {
    run_steps(p, caps, |q| gf_step_u(q, abc, caps))
}

/// LHS − RHS of
/// `ζ*_p({c}^m, b, {a}^n) = Σ_{k<=m, l<=n} (-1)^{k+l} ζ_p({a}^l, b, {c}^k) ζ*_p({c}^{m-k}) ζ*_p({a}^{n-l})`,
/// evaluated exactly. Always zero.
pub fn ccbaa_residual(p: u64, m: u32, n: u32, abc: Abc) -> Rational {
    let Abc { a, b, c } = abc;
    let repeat = |part: u32, count: u32| Index::new(vec![part; count as usize]).expect("positive");
    let lhs = zeta_star_trunc(&repeat(c, m).with(b).concat(&repeat(a, n)), p);
    let star_c: Vec<Rational> = (0..=m).map(|i| zeta_star_trunc(&repeat(c, i), p)).collect();
    let star_a: Vec<Rational> = (0..=n).map(|i| zeta_star_trunc(&repeat(a, i), p)).collect();
    let mut rhs = Rational::new();
    for k in 0..=m {
        for l in 0..=n {
            let strict = zeta_trunc(&repeat(a, l).with(b).concat(&repeat(c, k)), p);
            let term = strict * &star_c[(m - k) as usize] * &star_a[(n - l) as usize];
            if (k + l) % 2 == 0 {
                rhs += term;
            } else {
                rhs -= term;
            }
        }
    }
    lhs - rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAPS: Caps = Caps::new(3, 3);

    #[test]
    fn first_step_applied_to_unit_vector() {
        let (f, g) = generating_pair(1, Abc::new(2, 1, 2), CAPS);
        assert_eq!(f, GFPoly::one(CAPS));
        assert_eq!(
            g,
            GFPoly::linear_y(CAPS, Rational::from(1), Rational::from(1))
        );
    }

    #[test]
    fn level_zero() {
        let (f, g) = generating_pair(0, Abc::new(2, 1, 2), CAPS);
        assert!(f.is_zero());
        assert_eq!(g, GFPoly::one(CAPS));
        let (fs, gs) = generating_pair_star(0, Abc::new(2, 1, 2), CAPS);
        assert!(fs.is_zero());
        assert_eq!(gs, GFPoly::one(CAPS));
    }

    #[test]
    fn u_inverts_the_star_recursion_matrix() {
        // U_q · [[1 - x/q^c, -1/q^b], [0, 1 - y/q^a]] = I up to the caps.
        let abc = Abc::new(2, 3, 2);
        for q in 1..4 {
            let one = || Rational::from(1);
            let m = GFMatrix([
                [
                    GFPoly::linear_x(CAPS, one(), -inv_pow(q, abc.c)),
                    GFPoly::constant(CAPS, -inv_pow(q, abc.b)),
                ],
                [
                    GFPoly::zero(CAPS),
                    GFPoly::linear_y(CAPS, one(), -inv_pow(q, abc.a)),
                ],
            ]);
            let prod = &gf_step_u(q, abc, CAPS) * &m;
            assert_eq!(prod, GFMatrix::identity(CAPS));
        }
    }

    #[test]
    fn matrix_product_matches_iterated_application() {
        let abc = Abc::new(2, 1, 2);
        let mut acc = GFMatrix::identity(CAPS);
        for q in 1..=4 {
            acc = &gf_step_t(q, abc, CAPS) * &acc;
        }
        let v = acc.apply(&[GFPoly::zero(CAPS), GFPoly::one(CAPS)]);
        let (f, g) = generating_pair(4, abc, CAPS);
        assert_eq!(v, [f, g]);
    }

    #[test]
    fn ccbaa_examples() {
        for m in 0..3 {
            for n in 0..3 {
                assert_eq!(ccbaa_residual(0, m, n, Abc::new(2, 1, 2)), 0);
            }
        }
        assert_eq!(ccbaa_residual(5, 1, 1, Abc::new(2, 1, 2)), 0);
        assert_eq!(ccbaa_residual(4, 2, 0, Abc::new(2, 3, 2)), 0);
    }

    #[test]
    fn truncation_drops_high_degrees() {
        let caps = Caps::new(1, 1);
        let x = GFPoly::linear_x(caps, Rational::new(), Rational::from(1));
        assert!((&x * &x).is_zero());
        assert_eq!(x.coeff(5, 0), 0);
    }
}
