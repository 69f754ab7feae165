use std::fmt;

use super::ManifoldError;

/// A freely reduced word: `(generator, nonzero exponent)` pairs with no two
/// adjacent pairs sharing a generator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(String, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(symbol: &str) -> Self {
        Word::power(symbol, 1)
    }

    pub fn power(symbol: &str, exponent: i64) -> Self {
        Word::from_letters([(symbol.to_string(), exponent)])
    }

    /// Builds a word and freely reduces it.
    pub fn from_letters(letters: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (sym, exp) in letters {
            push_reduced(&mut out, sym, exp);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(|(s, _)| s.as_str())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.letters.clone();
        for (sym, exp) in &other.letters {
            push_reduced(&mut out, sym.clone(), *exp);
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|(s, e)| (s.clone(), -e)).collect() }
    }

    /// `w^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::empty(), |acc, _| acc.concat(&base))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.concat(b).concat(&a.inverse()).concat(&b.inverse())
    }

    /// Sum of exponents of `symbol`.
    pub fn exponent_sum(&self, symbol: &str) -> i64 {
        self.letters.iter().filter(|(s, _)| s == symbol).map(|(_, e)| e).sum()
    }

    /// Parses `f^2*z`, `t*f*t^-1`; `1` or the empty string is the identity.
    /// Whitespace is rejected.
    pub fn parse(text: &str) -> Result<Word, ManifoldError> {
        let malformed = || ManifoldError::MalformedWord(text.to_string());
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for factor in text.split('*') {
            let (sym, exp) = match factor.split_once('^') {
                Some((s, e)) => {
                    let digits = e.strip_prefix('-').unwrap_or(e);
                    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                        return Err(malformed());
                    }
                    (s, e.parse::<i64>().map_err(|_| malformed())?)
                }
                None => (factor, 1),
            };
            if !is_symbol(sym) {
                return Err(malformed());
            }
            letters.push((sym.to_string(), exp));
        }
        Ok(Word::from_letters(letters))
    }
}

pub(crate) fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn push_reduced(out: &mut Vec<(String, i64)>, sym: String, exp: i64) {
    if exp == 0 {
        return;
    }
    match out.last_mut() {
        Some((last, e)) if *last == sym => {
            *e += exp;
            if *e == 0 {
                out.pop();
            }
        }
        _ => out.push((sym, exp)),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (sym, exp)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *exp == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{exp}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = Word::parse("t*f*t^-1*z^-1*f^-3").unwrap();
        assert_eq!(w.to_string(), "t*f*t^-1*z^-1*f^-3");
        assert_eq!(Word::parse("f^2*z").unwrap().letters().len(), 2);
        assert_eq!(Word::parse("f*f*z^0").unwrap().to_string(), "f^2");
        assert!(Word::parse("1").unwrap().is_empty());
        for bad in ["f ^2", "f^", "^2", "f**z", "f^+2", "2f", "f^2 ", "f^x"] {
            assert!(Word::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn free_reduction() {
        let w = Word::parse("x*y").unwrap();
        assert!(w.concat(&w.inverse()).is_empty());
        let c = Word::commutator(&Word::generator("x"), &Word::generator("x"));
        assert!(c.is_empty());
        assert_eq!(Word::generator("f").pow(-2).to_string(), "f^-2");
    }
}
