//! Arithmetic in the family `U_6n = <a, b | a^(2n) = b^3 = 1, bab = a>`.
//!
//! Every element has a unique canonical word `a^u b^v` with `0 <= u < 2n` and
//! `0 <= v < 3`. The defining relation gives `b a = a b^2`, so moving `b^v`
//! past `a^u` turns it into `b^(v * 2^u)`; since `2^u mod 3` only depends on
//! the parity of `u`, multiplication is a constant-time operation on the
//! exponent pair.

use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the group order for table-driven (brute force) work.
pub const DEFAULT_ORACLE_LIMIT: u64 = 300;

/// The family parameter `n` of `U_6n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupParams {
    n: u64,
}

/// A canonical word `a^u b^v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    a_exp: u64,
    b_exp: u8,
}

impl Element {
    pub const IDENTITY: Element = Element { a_exp: 0, b_exp: 0 };

    pub fn a_exp(self) -> u64 {
        self.a_exp
    }

    pub fn b_exp(self) -> u8 {
        self.b_exp
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = match self.a_exp {
            0 => None,
            1 => Some("a".to_string()),
            u => Some(format!("a^{u}")),
        };
        let b = match self.b_exp {
            0 => None,
            1 => Some("b".to_string()),
            v => Some(format!("b^{v}")),
        };
        match (a, b) {
            (None, None) => f.write_str("e"),
            (Some(a), None) => f.write_str(&a),
            (None, Some(b)) => f.write_str(&b),
            (Some(a), Some(b)) => write!(f, "{a} {b}"),
        }
    }
}

/// `2^u mod 3`: the factor picked up by a power of `b` moving right past `a^u`.
#[inline]
fn twist(u: u64) -> u64 {
    if u % 2 == 0 {
        1
    } else {
        2
    }
}

impl GroupParams {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(n));
        }
        Ok(GroupParams { n })
    }

    pub fn n(self) -> u64 {
        self.n
    }

    /// Order of the generator `a`.
    pub fn two_n(self) -> u64 {
        2 * self.n
    }

    /// Order of the whole group.
    pub fn order(self) -> u64 {
        6 * self.n
    }

    /// Builds the canonical element for `a^u b^v`, reducing both exponents.
    pub fn element(self, u: u64, v: u64) -> Element {
        Element {
            a_exp: u % self.two_n(),
            b_exp: (v % 3) as u8,
        }
    }

    pub fn identity(self) -> Element {
        Element::IDENTITY
    }

    pub fn a(self) -> Element {
        self.element(1, 0)
    }

    pub fn b(self) -> Element {
        self.element(0, 1)
    }

    pub fn multiply(self, x: Element, y: Element) -> Element {
        let v = u64::from(x.b_exp) * twist(y.a_exp) + u64::from(y.b_exp);
        // a_exp < 2n, so the sum cannot overflow for any representable n
        self.element(x.a_exp + y.a_exp, v)
    }

    /// `(a^u b^v)^-1 = b^(3-v) a^(2n-u)`, brought back to canonical form.
    pub fn inverse(self, x: Element) -> Element {
        let u = (self.two_n() - x.a_exp) % self.two_n();
        let v = (3 - u64::from(x.b_exp)) * twist(u);
        self.element(u, v)
    }

    /// `x^k` by the closed forms for powers of canonical words.
    pub fn power(self, x: Element, k: u64) -> Element {
        if k == 0 {
            return Element::IDENTITY;
        }
        let two_n = self.two_n();
        let u = mul_mod(x.a_exp, k, two_n);
        let v = u64::from(x.b_exp);
        if v == 0 {
            self.element(u, 0)
        } else if x.a_exp % 2 == 0 {
            self.element(u, v * (k % 3))
        } else if k % 2 == 0 {
            self.element(u, 0)
        } else {
            self.element(u, v)
        }
    }

    /// `g^-1 h g`.
    pub fn conjugate(self, h: Element, g: Element) -> Element {
        self.multiply(self.multiply(self.inverse(g), h), g)
    }

    /// All `6n` elements in lexicographic `(a_exp, b_exp)` order.
    pub fn all_elements(self) -> Vec<Element> {
        (0..self.two_n())
            .flat_map(|u| (0..3u8).map(move |v| Element { a_exp: u, b_exp: v }))
            .collect()
    }

    /// Position of `x` in [`GroupParams::all_elements`].
    pub fn index_of(self, x: Element) -> usize {
        (x.a_exp * 3 + u64::from(x.b_exp)) as usize
    }

    pub fn check_oracle_limit(self, limit: u64) -> Result<()> {
        if self.order() > limit {
            Err(Error::OracleLimitExceeded {
                order: self.order(),
                limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn cayley_table(self, limit: u64) -> Result<CayleyTable> {
        CayleyTable::new(self, limit)
    }

    /// Parses the text form of an element (`e`, `a^3 b`, `b^2`, `a`, ...).
    ///
    /// Exponents may use either the zero-based or the one-based convention
    /// (`a^(2n)` is accepted as the identity); the result is always reduced.
    pub fn parse_element(self, input: &str) -> Result<Element> {
        let err = |reason: &str| Error::ParseElement {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        if compact == "e" || compact == "1" {
            return Ok(Element::IDENTITY);
        }

        let mut rest = compact.as_str();
        let mut a_exp = None;
        let mut b_exp = None;
        while let Some(letter) = rest.chars().next() {
            rest = &rest[letter.len_utf8()..];
            let exp = if let Some(tail) = rest.strip_prefix('^') {
                let (digits, tail) = split_exponent(tail).ok_or_else(|| err("bad exponent"))?;
                rest = tail;
                digits
            } else {
                1
            };
            match letter {
                'a' if a_exp.is_none() && b_exp.is_none() => a_exp = Some(exp),
                'b' if b_exp.is_none() => b_exp = Some(exp),
                'a' | 'b' => return Err(err("expected canonical order a^u b^v")),
                _ => return Err(err("unexpected character")),
            }
        }
        Ok(self.element(a_exp.unwrap_or(0), b_exp.unwrap_or(0)))
    }
}

/// Splits a leading exponent, accepting `3` or `{3}`.
fn split_exponent(s: &str) -> Option<(u64, &str)> {
    let (body, rest) = if let Some(inner) = s.strip_prefix('{') {
        let close = inner.find('}')?;
        (&inner[..close], &inner[close + 1..])
    } else {
        let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
        (&s[..end], &s[end..])
    };
    if body.is_empty() {
        return None;
    }
    body.parse().ok().map(|e| (e, rest))
}

fn mul_mod(x: u64, k: u64, m: u64) -> u64 {
    ((u128::from(x) * u128::from(k)) % u128::from(m)) as u64
}

/// Full multiplication table, indexed by [`GroupParams::index_of`].
#[derive(Debug, Clone)]
pub struct CayleyTable {
    params: GroupParams,
    elements: Vec<Element>,
    products: Vec<u32>,
    inverses: Vec<u32>,
}

impl CayleyTable {
    pub fn new(params: GroupParams, limit: u64) -> Result<Self> {
        params.check_oracle_limit(limit)?;
        let elements = params.all_elements();
        let size = elements.len();
        let mut products = Vec::with_capacity(size * size);
        for &x in &elements {
            for &y in &elements {
                products.push(params.index_of(params.multiply(x, y)) as u32);
            }
        }
        let inverses = elements
            .iter()
            .map(|&x| params.index_of(params.inverse(x)) as u32)
            .collect();
        Ok(CayleyTable {
            params,
            elements,
            products,
            inverses,
        })
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    #[inline]
    pub fn product_index(&self, i: usize, j: usize) -> usize {
        self.products[i * self.elements.len() + j] as usize
    }

    #[inline]
    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    pub fn product(&self, x: Element, y: Element) -> Element {
        let i = self.params.index_of(x);
        let j = self.params.index_of(y);
        self.elements[self.product_index(i, j)]
    }

    /// Row `i` as element indices.
    pub fn row(&self, i: usize) -> &[u32] {
        let size = self.elements.len();
        &self.products[i * size..(i + 1) * size]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> GroupParams {
        GroupParams::new(n).unwrap()
    }

    /// Reduces a word in the letters a, b by repeatedly applying `ba -> ab^2`.
    /// Independent of the one-step normalization in `multiply`.
    fn rewrite_word(params: GroupParams, word: &str) -> Element {
        let mut letters: Vec<char> = word.chars().collect();
        loop {
            let pos = letters.windows(2).position(|w| w == ['b', 'a']);
            match pos {
                Some(i) => {
                    letters.splice(i..i + 2, ['a', 'b', 'b']);
                }
                None => break,
            }
        }
        let u = letters.iter().filter(|&&c| c == 'a').count() as u64;
        let v = letters.iter().filter(|&&c| c == 'b').count() as u64;
        params.element(u, v)
    }

    fn word_of(x: Element) -> String {
        "a".repeat(x.a_exp() as usize) + &"b".repeat(x.b_exp() as usize)
    }

    #[test]
    fn rejects_zero_parameter() {
        assert_eq!(GroupParams::new(0), Err(Error::InvalidParameter(0)));
        let g = p(5);
        assert_eq!((g.two_n(), g.order()), (10, 30));
    }

    #[test]
    fn identity_is_zero_pair() {
        for n in [1, 7] {
            let e = p(n).identity();
            assert_eq!((e.a_exp(), e.b_exp()), (0, 0));
        }
        let g = p(2);
        for x in g.all_elements() {
            assert_eq!(g.multiply(g.identity(), x), x);
        }
    }

    #[test]
    fn multiply_examples() {
        let g = p(2);
        assert_eq!(g.multiply(g.b(), g.a()), g.element(1, 2));
        for n in 1..6 {
            let g = p(n);
            for u1 in 0..g.two_n() {
                for u2 in 0..g.two_n() {
                    assert_eq!(
                        g.multiply(g.element(u1, 0), g.element(u2, 0)),
                        g.element(u1 + u2, 0)
                    );
                }
            }
        }
        let g = p(1);
        assert_eq!(g.multiply(g.element(1, 1), g.element(1, 1)), g.identity());
    }

    #[test]
    fn multiply_agrees_with_letter_rewriting() {
        for n in 1..=4 {
            let g = p(n);
            for x in g.all_elements() {
                for y in g.all_elements() {
                    let word = word_of(x) + &word_of(y);
                    assert_eq!(g.multiply(x, y), rewrite_word(g, &word), "n={n} {x}*{y}");
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        for n in 1..6 {
            assert_eq!(p(n).inverse(Element::IDENTITY), Element::IDENTITY);
        }
        let g = p(1);
        assert_eq!(g.inverse(g.element(1, 1)), g.element(1, 1));
        let g = p(3);
        let x = g.element(2, 1);
        let found: Vec<_> = g
            .all_elements()
            .into_iter()
            .filter(|&y| g.multiply(x, y).is_identity())
            .collect();
        assert_eq!(found, vec![g.inverse(x)]);
    }

    #[test]
    fn power_examples() {
        let g = p(3);
        assert_eq!(g.power(g.element(2, 1), 2), g.element(4, 2));
        let g = p(1);
        assert_eq!(g.power(g.element(1, 1), 2), g.identity());
        for n in 1..5 {
            let g = p(n);
            for x in g.all_elements() {
                assert_eq!(g.power(x, 1), x);
                assert_eq!(g.power(x, 0), g.identity());
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let g = p(1);
        assert_eq!(g.conjugate(g.b(), g.a()), g.element(0, 2));
        for n in 1..4 {
            let g = p(n);
            for x in g.all_elements() {
                assert_eq!(g.conjugate(x, g.identity()), x);
                assert_eq!(g.conjugate(g.identity(), x), g.identity());
            }
        }
    }

    #[test]
    fn defining_relations_hold() {
        for n in 1..=20 {
            let g = p(n);
            assert!(g.power(g.b(), 3).is_identity());
            assert!(g.power(g.a(), g.two_n()).is_identity());
            assert_eq!(g.multiply(g.multiply(g.b(), g.a()), g.b()), g.a());
        }
    }

    #[test]
    fn element_listing() {
        assert_eq!(p(1).all_elements().len(), 6);
        let els = p(4).all_elements();
        assert_eq!(els.len(), 24);
        assert_eq!(els[0], Element::IDENTITY);
        let g = p(2);
        let els = g.all_elements();
        for &x in &els {
            assert!(els.contains(&g.inverse(x)));
            for &y in &els {
                assert!(els.contains(&g.multiply(x, y)));
            }
        }
        for (i, &x) in els.iter().enumerate() {
            assert_eq!(g.index_of(x), i);
        }
    }

    #[test]
    fn cayley_table_is_latin_square() {
        let t = p(1).cayley_table(DEFAULT_ORACLE_LIMIT).unwrap();
        assert_eq!(t.len(), 6);
        for i in 0..t.len() {
            let mut row: Vec<u32> = t.row(i).to_vec();
            row.sort_unstable();
            assert_eq!(row, (0..6).collect::<Vec<u32>>());
            let mut col: Vec<usize> = (0..t.len()).map(|j| t.product_index(j, i)).collect();
            col.sort_unstable();
            assert_eq!(col, (0..6).collect::<Vec<usize>>());
        }
        let g = p(2);
        let t = g.cayley_table(DEFAULT_ORACLE_LIMIT).unwrap();
        for x in g.all_elements() {
            for y in g.all_elements() {
                assert_eq!(t.product(x, y), g.multiply(x, y));
            }
        }
    }

    #[test]
    fn cayley_table_respects_limit() {
        assert_eq!(
            p(51).cayley_table(300).unwrap_err(),
            Error::OracleLimitExceeded {
                order: 306,
                limit: 300
            }
        );
        assert!(p(50).cayley_table(300).is_ok());
    }

    #[test]
    fn text_format() {
        let g = p(3);
        assert_eq!(g.identity().to_string(), "e");
        assert_eq!(g.element(3, 0).to_string(), "a^3");
        assert_eq!(g.element(0, 2).to_string(), "b^2");
        assert_eq!(g.element(3, 1).to_string(), "a^3 b");
        assert_eq!(g.element(1, 1).to_string(), "a b");
        for x in g.all_elements() {
            assert_eq!(g.parse_element(&x.to_string()).unwrap(), x);
        }
        assert_eq!(g.parse_element("  a^3b ").unwrap(), g.element(3, 1));
        assert_eq!(g.parse_element("a ^ {2} b^2").unwrap(), g.element(2, 2));
        assert_eq!(g.parse_element("a^6").unwrap(), g.identity());
        assert_eq!(g.parse_element("b^3").unwrap(), g.identity());
        assert!(g.parse_element("b a").is_err());
        assert!(g.parse_element("a^").is_err());
        assert!(g.parse_element("c").is_err());
        assert!(g.parse_element("").is_err());
    }
}
