//! The harmonic algebra: words over `{x, y}`, the harmonic (stuffle)
//! product on `H¹ = Q + H y`, the automorphism `γ` and the map `d`, and the
//! truncated evaluation maps `Z_p`, `Z*_p`.
//!
//! Words in `H¹` factor uniquely into letters `z_k = x^{k-1} y`, which is how
//! they correspond to indices.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::indices::Index;
use crate::truncated::{zeta_star_trunc, zeta_trunc, Abc};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

/// A word over `{x, y}`, ordered by length first and then lexicographically
/// with `x < y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// `z_k = x^{k-1} y`.
    pub fn z(k: u32) -> Self {
        assert!(k >= 1, "z_k needs k >= 1");
        let mut letters = vec![Letter::X; k as usize - 1];
        letters.push(Letter::Y);
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_h1(&self) -> bool {
        self.0.last().is_none_or(|&l| l == Letter::Y)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                _ => Err(Error::Parse {
                    what: "word",
                    input: s.to_string(),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// `z_{k1} ... z_{kn}`; the empty index maps to the empty word.
pub fn word_from_index(index: &Index) -> Word {
    let mut letters = Vec::with_capacity(index.weight() as usize);
    for &k in index.parts() {
        letters.extend(std::iter::repeat_n(Letter::X, k as usize - 1));
        letters.push(Letter::Y);
    }
    Word(letters)
}

/// Inverse of [`word_from_index`] on `H¹`.
pub fn index_from_word(word: &Word) -> Result<Index> {
    if !word.in_h1() {
        return Err(Error::NotInH1(word.to_string()));
    }
    let mut parts = Vec::new();
    let mut k = 1;
    for &l in &word.0 {
        match l {
            Letter::X => k += 1,
            Letter::Y => {
                parts.push(k);
                k = 1;
            }
        }
    }
    Index::new(parts)
}

/// A finite `Q`-linear combination of words. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly(BTreeMap<Word, Rational>);

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        NCPoly::from(Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.0.get(word).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.0.iter()
    }

    pub fn in_h1(&self) -> bool {
        self.0.keys().all(Word::in_h1)
    }

    pub fn add_term(&mut self, word: Word, c: Rational) {
        if c == 0 {
            return;
        }
        match self.0.entry(word) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn scale(&self, c: &Rational) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, d) in self.terms() {
            out.add_term(w.clone(), Rational::from(c * d));
        }
        out
    }

    /// Concatenation product in `Q<x, y>`.
    pub fn concat(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.concat(v), Rational::from(a * b));
            }
        }
        out
    }

    fn require_h1(&self) -> Result<()> {
        match self.0.keys().find(|w| !w.in_h1()) {
            Some(w) => Err(Error::NotInH1(w.to_string())),
            None => Ok(()),
        }
    }
}

impl From<Word> for NCPoly {
    fn from(word: Word) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(word, Rational::from(1));
        p
    }
}

impl From<&Index> for NCPoly {
    fn from(index: &Index) -> Self {
        NCPoly::from(word_from_index(index))
    }
}

impl fmt::Display for NCPoly {
    /// `c1·w1 + c2·w2 - ...` in graded-lex order; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms().enumerate() {
            match (i, *c < 0) {
                (0, false) => write!(f, "{c}·{w}")?,
                (0, true) => write!(f, "-{}·{w}", Rational::from(-c))?,
                (_, false) => write!(f, " + {c}·{w}")?,
                (_, true) => write!(f, " - {}·{w}", Rational::from(-c))?,
            }
        }
        Ok(())
    }
}

type Terms = BTreeMap<Vec<u32>, Integer>;
type StuffleMemo = HashMap<(Vec<u32>, Vec<u32>), Rc<Terms>>;

thread_local! {
    // Keyed by the lexicographically ordered pair, since * is commutative.
    static STUFFLE_MEMO: RefCell<StuffleMemo> = RefCell::new(HashMap::new());
}

// Harmonic product of two indices as an integer combination of indices:
// z_k u * z_l v = z_k (u * z_l v) + z_l (z_k u * v) + z_{k+l} (u * v).
fn stuffle(u: &[u32], v: &[u32]) -> Rc<Terms> {
    if u.is_empty() || v.is_empty() {
        let mut t = Terms::new();
        t.insert(
            if u.is_empty() { v.to_vec() } else { u.to_vec() },
            Integer::from(1),
        );
        return Rc::new(t);
    }
    let key = if u <= v {
        (u.to_vec(), v.to_vec())
    } else {
        (v.to_vec(), u.to_vec())
    };
    if let Some(hit) = STUFFLE_MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let mut out = Terms::new();
    let mut push = |head: u32, tail: &Terms| {
        for (w, c) in tail {
            let mut word = Vec::with_capacity(w.len() + 1);
            word.push(head);
            word.extend_from_slice(w);
            *out.entry(word).or_default() += c;
        }
    };
    push(u[0], &stuffle(&u[1..], v));
    push(v[0], &stuffle(u, &v[1..]));
    push(u[0] + v[0], &stuffle(&u[1..], &v[1..]));
    let out = Rc::new(out);
    STUFFLE_MEMO.with(|m| m.borrow_mut().insert(key, out.clone()));
    out
}

/// The harmonic product `u * v`, extended bilinearly; `1 * w = w * 1 = w`.
pub fn harmonic_product(u: &NCPoly, v: &NCPoly) -> Result<NCPoly> {
    u.require_h1()?;
    v.require_h1()?;
    let mut out = NCPoly::zero();
    for (wu, cu) in u.terms() {
        let iu = index_from_word(wu)?;
        for (wv, cv) in v.terms() {
            let iv = index_from_word(wv)?;
            let coeff = Rational::from(cu * cv);
            for (w, c) in stuffle(iu.parts(), iv.parts()).iter() {
                let index = Index::new(w.clone())?;
                out.add_term(word_from_index(&index), Rational::from(&coeff * c));
            }
        }
    }
    Ok(out)
}

fn gamma_word(word: &[Letter]) -> NCPoly {
    let mut out = NCPoly::one();
    let x = NCPoly::from(Word(vec![Letter::X]));
    let x_plus_y = x.add(&NCPoly::from(Word(vec![Letter::Y])));
    for &l in word {
        out = out.concat(match l {
            Letter::X => &x,
            Letter::Y => &x_plus_y,
        });
    }
    out
}

/// The algebra automorphism with `γ(x) = x`, `γ(y) = x + y`.
pub fn gamma_map(u: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in u.terms() {
        out = out.add(&gamma_word(&w.0).scale(c));
    }
    out
}

/// `d(1) = 1`, `d(w y) = γ(w) y`.
pub fn d_map(u: &NCPoly) -> Result<NCPoly> {
    u.require_h1()?;
    let y = NCPoly::from(Word(vec![Letter::Y]));
    let mut out = NCPoly::zero();
    for (w, c) in u.terms() {
        let image = match w.0.split_last() {
            None => NCPoly::one(),
            Some((_, head)) => gamma_word(head).concat(&y),
        };
        out = out.add(&image.scale(c));
    }
    Ok(out)
}

fn evaluate(u: &NCPoly, p: u64, eval: fn(&Index, u64) -> Rational) -> Result<Rational> {
    u.require_h1()?;
    let mut total = Rational::new();
    for (w, c) in u.terms() {
        total += eval(&index_from_word(w)?, p) * c;
    }
    Ok(total)
}

/// `Z_p`: linear extension of `z_{k1}...z_{kn} -> ζ_p(k1, ..., kn)`.
pub fn zp_eval(u: &NCPoly, p: u64) -> Result<Rational> {
    evaluate(u, p, zeta_trunc)
}

/// `Z*_p`: linear extension of `z_{k1}...z_{kn} -> ζ*_p(k1, ..., kn)`.
pub fn zp_star_eval(u: &NCPoly, p: u64) -> Result<Rational> {
    evaluate(u, p, zeta_star_trunc)
}

fn z_power(k: u32, count: u32) -> NCPoly {
    NCPoly::from(&Index::new(vec![k; count as usize]).expect("k >= 1"))
}

/// LHS − RHS of
/// `d(z_c^m z_b z_a^n) = Σ_{k<=m, l<=n} (-1)^{k+l} z_a^l z_b z_c^k * d(z_c^{m-k}) * d(z_a^{n-l})`.
/// Always the zero polynomial.
pub fn prop23_residual(m: u32, n: u32, abc: Abc) -> NCPoly {
    let Abc { a, b, c } = abc;
    let zb = NCPoly::from(Word::z(b));
    let lhs = d_map(&z_power(c, m).concat(&zb).concat(&z_power(a, n))).expect("in H1");
    let d_c: Vec<NCPoly> = (0..=m)
        .map(|i| d_map(&z_power(c, i)).expect("in H1"))
        .collect();
    let d_a: Vec<NCPoly> = (0..=n)
        .map(|i| d_map(&z_power(a, i)).expect("in H1"))
        .collect();
    let mut rhs = NCPoly::zero();
    for k in 0..=m {
        for l in 0..=n {
            let head = z_power(a, l).concat(&zb).concat(&z_power(c, k));
            let term = harmonic_product(&head, &d_c[(m - k) as usize])
                .and_then(|t| harmonic_product(&t, &d_a[(n - l) as usize]))
                .expect("operands in H1");
            let sign = if (k + l) % 2 == 0 { 1 } else { -1 };
            rhs = rhs.add(&term.scale(&Rational::from(sign)));
        }
    }
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn poly(terms: &[(&str, i64)]) -> NCPoly {
        let mut p = NCPoly::zero();
        for &(s, c) in terms {
            p.add_term(w(s), Rational::from(c));
        }
        p
    }

    fn idx(s: &str) -> Index {
        s.parse().unwrap()
    }

    #[test]
    fn index_word_correspondence() {
        assert_eq!(word_from_index(&idx("2,1")), w("xyy"));
        assert_eq!(word_from_index(&idx("3")), w("xxy"));
        assert_eq!(word_from_index(&Index::empty()), Word::empty());
        assert_eq!(index_from_word(&w("xyy")).unwrap(), idx("2,1"));
        assert_eq!(index_from_word(&w("y")).unwrap(), idx("1"));
        assert!(matches!(index_from_word(&w("xx")), Err(Error::NotInH1(_))));
    }

    #[test]
    fn product_examples() {
        let z2 = poly(&[("xy", 1)]);
        let z1 = poly(&[("y", 1)]);
        assert_eq!(
            harmonic_product(&z2, &z2).unwrap(),
            poly(&[("xyxy", 2), ("xxxy", 1)])
        );
        assert_eq!(
            harmonic_product(&z2, &z1).unwrap(),
            poly(&[("xyy", 1), ("yxy", 1), ("xxy", 1)])
        );
        let any = poly(&[("xyy", 3), ("y", -1)]);
        assert_eq!(harmonic_product(&NCPoly::one(), &any).unwrap(), any);
        assert_eq!(harmonic_product(&any, &NCPoly::one()).unwrap(), any);
    }

    #[test]
    fn product_rejects_non_h1() {
        assert!(harmonic_product(&poly(&[("yx", 1)]), &NCPoly::one()).is_err());
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_map(&poly(&[("x", 1)])), poly(&[("x", 1)]));
        assert_eq!(gamma_map(&poly(&[("y", 1)])), poly(&[("x", 1), ("y", 1)]));
        assert_eq!(
            gamma_map(&poly(&[("xy", 1)])),
            poly(&[("xx", 1), ("xy", 1)])
        );
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_map(&poly(&[("xy", 1)])).unwrap(), poly(&[("xy", 1)]));
        assert_eq!(
            d_map(&poly(&[("xyy", 1)])).unwrap(),
            poly(&[("xxy", 1), ("xyy", 1)])
        );
        assert_eq!(
            d_map(&poly(&[("yy", 1)])).unwrap(),
            poly(&[("xy", 1), ("yy", 1)])
        );
        assert_eq!(d_map(&NCPoly::one()).unwrap(), NCPoly::one());
        assert!(d_map(&poly(&[("yx", 1)])).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let z2z1 = poly(&[("xyy", 1)]);
        assert_eq!(zp_eval(&z2z1, 2).unwrap(), Rational::from((1, 4)));
        assert_eq!(zp_star_eval(&z2z1, 2).unwrap(), Rational::from((11, 8)));
        assert_eq!(zp_eval(&NCPoly::one(), 0).unwrap(), 1);
    }

    #[test]
    fn prop23_small_cases() {
        assert!(prop23_residual(0, 0, Abc::new(2, 2, 2)).is_zero());
        assert!(prop23_residual(1, 0, Abc::new(2, 1, 2)).is_zero());
        assert!(prop23_residual(1, 1, Abc::new(2, 3, 2)).is_zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(NCPoly::zero().to_string(), "0");
        assert_eq!(
            poly(&[("xxxy", 1), ("xyxy", 2), ("y", -3)]).to_string(),
            "-3·y + 1·xxxy + 2·xyxy"
        );
        assert_eq!(w("yxy").to_string(), "yxy");
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn graded_lex_order() {
        let mut words = [w("y"), w("xx"), w("x"), w("xy"), w("1")];
        words.sort();
        let shown: Vec<String> = words.iter().map(Word::to_string).collect();
        assert_eq!(shown, ["1", "x", "y", "xx", "xy"]);
    }
}
