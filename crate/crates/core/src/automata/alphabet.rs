use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Ordinal of a symbol within its [`Alphabet`].
pub type Symbol = usize;

/// A word over an alphabet, stored as symbol ordinals.
pub type Word = Vec<Symbol>;

/// Finite, ordered set of distinct symbols.
///
/// The position of a symbol is its ordinal. Every lexicographic comparison in
/// the crate uses this ordinal order, so it is fixed once the alphabet exists.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    /// Builds an alphabet keeping the given order.
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '|' || c == '#') {
                return Err(Error::InvalidArgument(format!("`{s}` is not a valid symbol")));
            }
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols, index })
    }

    /// Builds an alphabet whose order is the sorted order of the symbol strings.
    /// Duplicates are collapsed.
    pub fn sorted<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        symbols.sort();
        symbols.dedup();
        Self::new(symbols)
    }

    /// `prefix` followed by a zero-padded counter, e.g. `i00, i01, ...`.
    /// Padding keeps string order and ordinal order identical.
    pub fn numbered(prefix: &str, len: usize) -> Result<Self> {
        let width = len.saturating_sub(1).to_string().len();
        Self::new((0..len).map(|i| format!("{prefix}{i:0width$}")))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, ordinal: Symbol) -> &str {
        &self.symbols[ordinal]
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn ordinal(&self, symbol: &str) -> Result<Symbol> {
        self.index
            .get(symbol)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    /// Parses a whitespace separated word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace().map(|s| self.ordinal(s)).collect()
    }

    pub fn word_from<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word> {
        symbols.iter().map(|s| self.ordinal(s.as_ref())).collect()
    }

    /// Renders a word with single spaces between symbols; `ε` for the empty word.
    pub fn display_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        self.join(word)
    }

    /// Space separated symbols; empty string for the empty word.
    pub fn join(&self, word: &[Symbol]) -> String {
        word.iter()
            .map(|&s| self.symbols[s].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.symbols).finish()
    }
}

/// Length-lexicographic ("shortlex") comparison of two words.
pub fn shortlex(a: &[Symbol], b: &[Symbol]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A word ordered by [`shortlex`]: shorter first, then by symbol ordinal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct StateWord(pub Word);

impl StateWord {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn extended(&self, symbol: Symbol) -> Self {
        let mut w = self.0.clone();
        w.push(symbol);
        Self(w)
    }

    pub fn concat(&self, suffix: &[Symbol]) -> Self {
        let mut w = self.0.clone();
        w.extend_from_slice(suffix);
        Self(w)
    }
}

impl Ord for StateWord {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for StateWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Word> for StateWord {
    fn from(w: Word) -> Self {
        Self(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order_matches_examples() {
        // a=0, b=1: b < aa and aaa < aba
        assert!(StateWord(vec![1]) < StateWord(vec![0, 0]));
        assert!(StateWord(vec![0, 0, 0]) < StateWord(vec![0, 1, 0]));
        assert!(StateWord::empty() < StateWord(vec![0]));
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(Error::EmptyAlphabet));
        assert_eq!(Alphabet::new(["a", "a"]), Err(Error::DuplicateSymbol("a".into())));
        assert!(Alphabet::new(["a|b"]).is_err());
    }

    #[test]
    fn numbered_sorts_like_ordinals() {
        let a = Alphabet::numbered("i", 25).unwrap();
        let resorted = Alphabet::sorted(a.symbols().to_vec()).unwrap();
        assert_eq!(a, resorted);
        assert_eq!(a.symbol(3), "i03");
    }
}
