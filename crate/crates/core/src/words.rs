//! Free-group words over a named edge alphabet.
//!
//! A [`Word`] is always freely reduced. Raw letter sequences (for example an
//! edge path that backtracks) live in [`Path`] and become words only through
//! [`tighten`].

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter on edge #{edge} lies outside an alphabet of {size} edges")]
    AlphabetMismatch { edge: usize, size: usize },
    #[error("edge `{0}` has no image")]
    UndefinedEdge(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("malformed token `{0}`")]
    BadToken(String),
    #[error("invalid edge name `{0}`")]
    BadEdgeName(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
}

/// Index of an edge inside its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// An edge traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: EdgeId,
    pub inverted: bool,
}

impl Letter {
    pub fn forward(edge: EdgeId) -> Self {
        Letter { edge, inverted: false }
    }

    pub fn backward(edge: EdgeId) -> Self {
        Letter { edge, inverted: true }
    }

    pub fn inverse(self) -> Self {
        Letter { edge: self.edge, inverted: !self.inverted }
    }

    /// +1 for a forward traversal, -1 for a backward one.
    pub fn sign(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }
}

/// Ordered set of edge names. Letters refer to edges by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, EdgeId>,
}

pub fn is_valid_edge_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out = Alphabet { names: Vec::new(), index: HashMap::new() };
        for name in names {
            let name = name.into();
            if !is_valid_edge_name(&name) {
                return Err(WordError::BadEdgeName(name));
            }
            if out.index.contains_key(&name) {
                return Err(WordError::DuplicateEdge(name));
            }
            out.index.insert(name.clone(), EdgeId(out.names.len()));
            out.names.push(name);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, edge: EdgeId) -> &str {
        &self.names[edge.0]
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.names.len()).map(EdgeId)
    }

    /// Looks up a forward letter by edge name.
    ///
    /// Panics if the name is unknown; meant for building fixed words.
    pub fn letter(&self, name: &str) -> Letter {
        Letter::forward(self.edge(name).unwrap_or_else(|| panic!("unknown edge `{name}`")))
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.edge.0 < self.names.len()
    }

    /// Parses the whitespace-separated token format (`a x0 y0^-1`) into a raw path.
    pub fn parse_path(&self, text: &str) -> Result<Path, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, inverted) = match token.strip_suffix("^-1") {
                Some(name) => (name, true),
                None => (token, false),
            };
            if !is_valid_edge_name(name) {
                return Err(WordError::BadToken(token.to_string()));
            }
            let edge = self.edge(name).ok_or_else(|| WordError::UnknownEdge(name.to_string()))?;
            letters.push(Letter { edge, inverted });
        }
        Ok(Path(letters))
    }

    /// Parses and freely reduces.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        Ok(self.parse_path(text)?.tighten())
    }

    pub fn render(&self, letters: &[Letter]) -> String {
        let mut out = String::new();
        for (i, l) in letters.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(self.name(l.edge));
            if l.inverted {
                out.push_str("^-1");
            }
        }
        out
    }
}

/// A finite letter sequence with no reducedness guarantee, e.g. an edge path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Path(pub Vec<Letter>);

impl Path {
    pub fn tighten(&self) -> Word {
        Word::from_letters(self.0.iter().copied())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Word> for Path {
    fn from(w: Word) -> Self {
        Path(w.0)
    }
}

impl Deref for Path {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut stack: Vec<Letter> = Vec::new();
        for l in letters {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word(stack)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// Freely reduces `raw`, rejecting letters that do not belong to `alphabet`.
pub fn tighten(alphabet: &Alphabet, raw: &[Letter]) -> Result<Word, WordError> {
    if let Some(bad) = raw.iter().find(|l| !alphabet.contains(**l)) {
        return Err(WordError::AlphabetMismatch { edge: bad.edge.0, size: alphabet.len() });
    }
    Ok(Word::from_letters(raw.iter().copied()))
}

/// A cyclically reduced word, read up to rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclicWord(Vec<Letter>);

/// How one cyclic word is obtained from another: `target` equals `source`
/// (or its inverse, when `inverted`) rotated left by `rotation` letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicMatch {
    pub rotation: usize,
    pub inverted: bool,
}

impl CyclicWord {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    /// Lexicographically least rotation.
    pub fn canonical(&self) -> Vec<Letter> {
        rotate(&self.0, least_rotation(&self.0))
    }

    /// Canonical representative of the class of `self` under rotation and inversion.
    pub fn canonical_unoriented(&self) -> Vec<Letter> {
        let fwd = self.canonical();
        let bwd = self.inverse().canonical();
        fwd.min(bwd)
    }

    /// Finds a rotation (and optionally an inversion) carrying `self` onto `other`.
    pub fn find_match(&self, other: &CyclicWord, up_to_inversion: bool) -> Option<CyclicMatch> {
        if self.len() != other.len() {
            return None;
        }
        let n = self.len();
        if n == 0 {
            return Some(CyclicMatch { rotation: 0, inverted: false });
        }
        let target_shift = least_rotation(&other.0);
        let target = rotate(&other.0, target_shift);
        let try_source = |source: &[Letter], inverted: bool| {
            let shift = least_rotation(source);
            (rotate(source, shift) == target)
                .then(|| CyclicMatch { rotation: (shift + n - target_shift) % n, inverted })
        };
        try_source(&self.0, false).or_else(|| {
            if up_to_inversion {
                try_source(&self.inverse().0, true)
            } else {
                None
            }
        })
    }
}

/// Splits `w` as `conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (CyclicWord, Word) {
    let letters = w.letters();
    let n = letters.len();
    let mut strip = 0;
    while 2 * strip + 1 < n && letters[strip] == letters[n - 1 - strip].inverse() {
        strip += 1;
    }
    (CyclicWord(letters[strip..n - strip].to_vec()), Word(letters[..strip].to_vec()))
}

pub fn cyclically_equal(u: &CyclicWord, v: &CyclicWord, up_to_inversion: bool) -> bool {
    u.find_match(v, up_to_inversion).is_some()
}

/// Substitutes each letter of `w` by the image of its edge (inverted for
/// backward letters) and reduces the result.
pub fn apply_morphism(
    alphabet: &Alphabet,
    images: &[Word],
    w: &[Letter],
) -> Result<Word, WordError> {
    let mut raw = Vec::new();
    for l in w {
        let image = images
            .get(l.edge.0)
            .ok_or_else(|| WordError::UndefinedEdge(edge_label(alphabet, l.edge)))?;
        if l.inverted {
            raw.extend(image.iter().rev().map(|x| x.inverse()));
        } else {
            raw.extend(image.iter().copied());
        }
    }
    Ok(Word::from_letters(raw))
}

fn edge_label(alphabet: &Alphabet, edge: EdgeId) -> String {
    if edge.0 < alphabet.len() {
        alphabet.name(edge).to_string()
    } else {
        format!("#{}", edge.0)
    }
}

fn rotate<T: Clone>(s: &[T], by: usize) -> Vec<T> {
    s[by..].iter().chain(s[..by].iter()).cloned().collect()
}

/// Start index of the least rotation (two-pointer minimal rotation, linear time).
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match s[(i + k) % n].cmp(&s[(j + k) % n]) {
            std::cmp::Ordering::Equal => k += 1,
            std::cmp::Ordering::Greater => {
                i += k + 1;
                if i <= j {
                    i = j + 1;
                }
                k = 0;
            }
            std::cmp::Ordering::Less => {
                j += k + 1;
                if j <= i {
                    j = i + 1;
                }
                k = 0;
            }
        }
    }
    i.min(j).min(n.saturating_sub(1))
}

/// Displays letters with the alphabet's names.
pub struct Rendered<'a> {
    pub alphabet: &'a Alphabet,
    pub letters: &'a [Letter],
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.render(self.letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new(["a", "b", "x", "y", "x0", "y0"]).unwrap()
    }

    fn cyc(al: &Alphabet, s: &str) -> CyclicWord {
        let w = al.parse_word(s).unwrap();
        let (core, conj) = cyclic_reduce(&w);
        assert!(conj.is_empty());
        core
    }

    #[test]
    fn cancellation() {
        let al = abc();
        assert!(al.parse_word("a a^-1").unwrap().is_empty());
        let w = al.parse_word("a x0 y0 y0^-1 x0^-1").unwrap();
        assert_eq!(al.render(&w), "a");
    }

    #[test]
    fn tighten_rejects_foreign_letters() {
        let al = Alphabet::new(["a"]).unwrap();
        let raw = [Letter::forward(EdgeId(0)), Letter::forward(EdgeId(3))];
        assert_eq!(
            tighten(&al, &raw),
            Err(WordError::AlphabetMismatch { edge: 3, size: 1 })
        );
    }

    #[test]
    fn cyclic_reduction() {
        let al = abc();
        let w = al.parse_word("a b a^-1").unwrap();
        let (core, conj) = cyclic_reduce(&w);
        assert_eq!(al.render(core.letters()), "b");
        assert_eq!(al.render(&conj), "a");
        let (core, conj) = cyclic_reduce(&Word::empty());
        assert!(core.is_empty() && conj.is_empty());
    }

    #[test]
    fn rotations_and_inverses() {
        let al = abc();
        assert!(cyclically_equal(&cyc(&al, "x y"), &cyc(&al, "y x"), false));
        assert!(!cyclically_equal(&cyc(&al, "x y"), &cyc(&al, "y^-1 x^-1"), false));
        assert!(cyclically_equal(&cyc(&al, "x y"), &cyc(&al, "y^-1 x^-1"), true));
        let m = cyc(&al, "a b x").find_match(&cyc(&al, "x a b"), false).unwrap();
        assert_eq!(m, CyclicMatch { rotation: 2, inverted: false });
    }

    #[test]
    fn parse_errors() {
        let al = abc();
        assert_eq!(al.parse_path("q"), Err(WordError::UnknownEdge("q".into())));
        assert_eq!(al.parse_path("a^2"), Err(WordError::BadToken("a^2".into())));
        assert!(Alphabet::new(["0a"]).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(al.parse_path("").unwrap().is_empty());
    }

    #[test]
    fn morphism_missing_image() {
        let al = abc();
        let images = vec![al.parse_word("b").unwrap()];
        let w = al.parse_word("a b").unwrap();
        assert_eq!(apply_morphism(&al, &images, &w), Err(WordError::UndefinedEdge("b".into())));
    }

    fn letters(n_edges: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0..n_edges, any::<bool>()), 0..max_len).prop_map(|v| {
            v.into_iter().map(|(e, inverted)| Letter { edge: EdgeId(e), inverted }).collect()
        })
    }

    fn brute_least_rotation(s: &[Letter]) -> Vec<Letter> {
        (0..s.len().max(1)).map(|r| rotate(s, r.min(s.len()))).min().unwrap_or_default()
    }

    proptest! {
        #[test]
        fn least_rotation_matches_brute_force(s in letters(3, 12)) {
            prop_assert_eq!(rotate(&s, least_rotation(&s)), brute_least_rotation(&s));
        }

        #[test]
        fn cyclic_reduce_recomposes(s in letters(3, 20)) {
            let w = Word::from_letters(s);
            let (core, conj) = cyclic_reduce(&w);
            let back = conj.concat(&core.to_word()).concat(&conj.inverse());
            prop_assert_eq!(back, w);
            if core.len() > 1 {
                prop_assert_ne!(core.letters()[0], core.letters()[core.len() - 1].inverse());
            }
        }

        #[test]
        fn text_round_trip(s in letters(6, 20)) {
            let al = abc();
            let w = Word::from_letters(s);
            prop_assert_eq!(al.parse_word(&al.render(&w)).unwrap(), w);
        }

        #[test]
        fn morphism_is_multiplicative(u in letters(3, 10), v in letters(3, 10),
                                      imgs in prop::collection::vec(letters(3, 5), 3)) {
            let al = Alphabet::new(["a", "b", "c"]).unwrap();
            let images: Vec<Word> = imgs.into_iter().map(Word::from_letters).collect();
            let (u, v) = (Word::from_letters(u), Word::from_letters(v));
            let lhs = apply_morphism(&al, &images, &u.concat(&v)).unwrap();
            let rhs = apply_morphism(&al, &images, &u).unwrap()
                .concat(&apply_morphism(&al, &images, &v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn cyclic_equality_is_an_equivalence(s in letters(3, 10), r1 in 0usize..10, r2 in 0usize..10,
                                             inv in any::<bool>()) {
            let (core, _) = cyclic_reduce(&Word::from_letters(s));
            let n = core.len().max(1);
            let u = core.clone();
            let v = CyclicWord(rotate(core.letters(), r1 % n % core.len().max(1)));
            let v = if inv { v.inverse() } else { v };
            let w = CyclicWord(rotate(v.letters(), r2 % v.len().max(1)));
            prop_assert!(cyclically_equal(&u, &u, false));
            prop_assert!(cyclically_equal(&u, &v, true));
            prop_assert!(cyclically_equal(&v, &u, true));
            prop_assert!(cyclically_equal(&v, &w, true));
            prop_assert!(cyclically_equal(&u, &w, true));
            if let Some(m) = u.find_match(&w, true) {
                let src = if m.inverted { u.inverse() } else { u.clone() };
                prop_assert_eq!(rotate(src.letters(), m.rotation), w.letters().to_vec());
            }
        }
    }
}
