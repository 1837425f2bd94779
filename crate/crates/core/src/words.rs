//! Letters and the two word types built from them: linear words and
//! cyclically reduced cyclic words stored in canonical rotation.
//!
//! The alphabet of rank `n` has `2n` letters: generators `a1..an` and their
//! inverses `A1..An`. Letters are totally ordered
//!
//! ```text
//! a1 < A1 < a2 < A2 < ... < an < An
//! ```
//!
//! and every cyclic word is stored as the lexicographically least rotation
//! of its (unique) cyclically reduced form, so equality of free homotopy
//! classes is plain structural equality.
//!
//! Text grammar: a word is letter tokens separated by `.` or whitespace,
//! where `a<k>` is a generator and `A<k>` its inverse, e.g. `a1.a1.A2`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use thiserror::Error;

/// Errors from parsing or constructing words.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("bad token `{0}`: expected a<k> or A<k> with k >= 1")]
    BadToken(String),
    #[error("the word reduces to the trivial class")]
    TrivialClass,
}

/// One symbol of the alphabet: the generator `a<k>` when unbarred, its
/// inverse `A<k>` when barred.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    /// Letter for generator `index` (1-based); `barred` selects the inverse.
    pub fn new(index: usize, barred: bool) -> Letter {
        assert!(index >= 1, "generator index is 1-based");
        assert!(index <= u16::MAX as usize / 2, "generator index too large");
        Letter((2 * (index - 1) + usize::from(barred)) as u16)
    }

    pub fn index(self) -> usize {
        self.0 as usize / 2 + 1
    }

    pub fn is_barred(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    /// Dense code in `0..2n` following the letter order.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_code(code: usize) -> Letter {
        debug_assert!(code <= u16::MAX as usize);
        Letter(code as u16)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.is_barred() { 'A' } else { 'a' };
        write!(f, "{}{}", tag, self.index())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse the dotted letter grammar shared by words and surface symbols.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let mut letters = Vec::new();
    for token in text.split(|c: char| c == '.' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        letters.push(parse_token(token)?);
    }
    if letters.is_empty() {
        return Err(WordError::Empty);
    }
    Ok(letters)
}

fn parse_token(token: &str) -> Result<Letter, WordError> {
    let bad = || WordError::BadToken(token.to_string());
    let mut chars = token.chars();
    let barred = match chars.next() {
        Some('a') => false,
        Some('A') => true,
        _ => return Err(bad()),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let index: usize = digits.parse().map_err(|_| bad())?;
    if index < 1 || index > u16::MAX as usize / 2 {
        return Err(bad());
    }
    Ok(Letter::new(index, barred))
}

fn write_dotted(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(".")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A finite (possibly non-reduced) sequence of letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearWord(Vec<Letter>);

impl LinearWord {
    pub fn new(letters: Vec<Letter>) -> LinearWord {
        LinearWord(letters)
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

    /// No letter is immediately followed by its inverse.
    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    /// Reverse the word and bar every letter.
    pub fn inverse(&self) -> LinearWord {
        LinearWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl fmt::Display for LinearWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_dotted(f, &self.0)
    }
}

impl FromStr for LinearWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(LinearWord(parse_letters(s)?))
    }
}

/// A non-trivial free homotopy class: a cyclically reduced cyclic word,
/// stored as the lexicographically least rotation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Cyclically reduce `tokens` and rotate the result to canonical form.
    ///
    /// Free reduction first, then repeated trimming of inverse first/last
    /// pairs; `TrivialClass` if everything cancels.
    pub fn reduce(tokens: &[Letter]) -> Result<CyclicWord, WordError> {
        if tokens.is_empty() {
            return Err(WordError::Empty);
        }
        let mut stack: Vec<Letter> = Vec::with_capacity(tokens.len());
        for &l in tokens {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        // Trim inverse first/last pairs; the interior stays reduced because
        // only the ends are removed.
        let (mut lo, mut hi) = (0usize, stack.len());
        while hi - lo >= 2 && stack[hi - 1] == stack[lo].inverse() {
            lo += 1;
            hi -= 1;
        }
        if lo == hi {
            return Err(WordError::TrivialClass);
        }
        Ok(CyclicWord::from_reduced(stack[lo..hi].to_vec()))
    }

    /// Canonicalize letters that are already cyclically reduced.
    ///
    /// Construction sites that produce provably reduced output (cobracket
    /// cuts, bracket splices) go through here so that an unexpected
    /// reduction is an assertion failure rather than a silent fix.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> CyclicWord {
        assert!(!letters.is_empty(), "cyclic word must be non-empty");
        assert!(
            is_cyclically_reduced(&letters),
            "letters are not cyclically reduced: {:?}",
            letters
        );
        let k = least_rotation(&letters);
        let mut rotated = Vec::with_capacity(letters.len());
        rotated.extend_from_slice(&letters[k..]);
        rotated.extend_from_slice(&letters[..k]);
        CyclicWord { letters: rotated }
    }

    /// Wrap letters that are already in canonical rotation.
    pub(crate) fn from_canonical(letters: Vec<Letter>) -> CyclicWord {
        debug_assert!(is_cyclically_reduced(&letters));
        debug_assert_eq!(least_rotation(&letters), 0);
        CyclicWord { letters }
    }

    /// Letter count; a cyclic word is never empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Letters of the canonical rotation.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at periodic position `i` (indices reduce mod the length).
    pub fn letter_at(&self, i: usize) -> Letter {
        self.letters[i % self.letters.len()]
    }

    /// The class of the reversed loop.
    pub fn inverse(&self) -> CyclicWord {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        // The inverse of a cyclically reduced word is cyclically reduced.
        CyclicWord::from_reduced(inv)
    }

    /// `k`-th power, `k >= 1` (panics on zero; negative powers are
    /// `w.inverse().pow(k)`).
    pub fn pow(&self, k: usize) -> CyclicWord {
        assert!(k >= 1, "power exponent must be >= 1");
        let mut letters = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            letters.extend_from_slice(&self.letters);
        }
        CyclicWord::from_reduced(letters)
    }

    /// The primitive word `r` and multiplicity `m >= 1` with `self = r^m`.
    pub fn primitive_root(&self) -> (CyclicWord, usize) {
        let n = self.len();
        for period in 1..=n {
            if !n.is_multiple_of(period) {
                continue;
            }
            if (period..n).all(|i| self.letters[i] == self.letters[i - period]) {
                // A prefix of the least rotation of a periodic word is the
                // least rotation of the period.
                let root = CyclicWord::from_reduced(self.letters[..period].to_vec());
                return (root, n / period);
            }
        }
        unreachable!("period n always matches");
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    /// Occurrence letters: `len` letters read periodically from `start`.
    ///
    /// Panics unless `start < self.len()` and `len >= 1`.
    pub fn subword(&self, start: usize, len: usize) -> LinearWord {
        assert!(start < self.len(), "subword start out of range");
        assert!(len >= 1, "subword length must be >= 1");
        LinearWord(self.arc(start, len))
    }

    /// Periodic arc letters; a length of zero yields an empty buffer.
    pub(crate) fn arc(&self, start: usize, len: usize) -> Vec<Letter> {
        (0..len).map(|i| self.letter_at(start + i)).collect()
    }

    /// Exponent-sum vector over generators `1..=rank`.
    ///
    /// Panics if the word uses a generator index above `rank`.
    pub fn homology(&self, rank: usize) -> HomologyVector {
        let mut v = vec![0i64; rank];
        for l in &self.letters {
            assert!(l.index() <= rank, "letter {l} outside rank-{rank} alphabet");
            v[l.index() - 1] += if l.is_barred() { -1 } else { 1 };
        }
        HomologyVector(v)
    }

    /// Largest generator index appearing in the word.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_dotted(f, &self.letters)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c({self})")
    }
}

/// Serializes as the dotted display form, e.g. `"a1.A2"`.
impl serde::Serialize for CyclicWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for CyclicWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CyclicWord::reduce(&parse_letters(s)?)
    }
}

/// Order by length, then lexicographically on the canonical rotation; this
/// is the order used for term collection and serialization.
impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exponent sums of a word over generators `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyVector(Vec<i64>);

impl HomologyVector {
    pub fn zero(rank: usize) -> HomologyVector {
        HomologyVector(vec![0; rank])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> HomologyVector {
        HomologyVector(self.0.iter().map(|&x| x * k).collect())
    }
}

impl Add for HomologyVector {
    type Output = HomologyVector;

    fn add(self, rhs: HomologyVector) -> HomologyVector {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        HomologyVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for HomologyVector {
    type Output = HomologyVector;

    fn neg(self) -> HomologyVector {
        HomologyVector(self.0.iter().map(|&x| -x).collect())
    }
}

fn is_cyclically_reduced(letters: &[Letter]) -> bool {
    if letters.is_empty() {
        return false;
    }
    let n = letters.len();
    (0..n).all(|i| letters[(i + 1) % n] != letters[i].inverse())
}

/// Index of the lexicographically least rotation (two-pointer scan, O(n)).
pub(crate) fn least_rotation(letters: &[Letter]) -> usize {
    let n = letters.len();
    let at = |i: usize| letters[i % n];
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        match at(i + k).cmp(&at(j + k)) {
            Ordering::Equal => {
                k += 1;
                continue;
            }
            Ordering::Greater => i += k + 1,
            Ordering::Less => j += k + 1,
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// Does `letters` equal its least rotation? (Periodic words tie; any tie
/// means the stored rotation is already a least one.)
fn is_canonical_rotation(letters: &[Letter]) -> bool {
    let n = letters.len();
    let k = least_rotation(letters);
    k == 0 || (0..n).all(|i| letters[i] == letters[(i + k) % n])
}

/// Visit, in lexicographic order, every canonical cyclic word of exactly
/// `len` letters over rank `rank` that extends the fixed `prefix`.
///
/// `prefix` must be non-empty, freely reduced, and min-led (no letter below
/// its first); those are exactly the prefixes [`canonical_prefixes`] emits.
pub(crate) fn visit_canonical(
    rank: usize,
    len: usize,
    prefix: &mut Vec<Letter>,
    visit: &mut dyn FnMut(&[Letter]),
) {
    debug_assert!(!prefix.is_empty() && prefix.len() <= len);
    if prefix.len() == len {
        let closes = len == 1 || prefix[len - 1] != prefix[0].inverse();
        if closes && is_canonical_rotation(prefix) {
            visit(prefix);
        }
        return;
    }
    let first = prefix[0].code();
    let banned = prefix.last().unwrap().inverse().code();
    for code in first..2 * rank {
        if code == banned {
            continue;
        }
        prefix.push(Letter::from_code(code));
        visit_canonical(rank, len, prefix, visit);
        prefix.pop();
    }
}

/// The DFS roots that partition all canonical words of length `len`:
/// single letters for `len == 1`, valid two-letter prefixes otherwise.
/// Concatenating the visits of all roots in order yields every canonical
/// word of that length exactly once, lexicographically.
pub(crate) fn canonical_prefixes(rank: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut roots = Vec::new();
    for f in 0..2 * rank {
        let first = Letter::from_code(f);
        if len == 1 {
            roots.push(vec![first]);
            continue;
        }
        for s in f..2 * rank {
            let second = Letter::from_code(s);
            if second != first.inverse() {
                roots.push(vec![first, second]);
            }
        }
    }
    roots
}

/// All canonical cyclically reduced words over rank `rank` of length
/// `1..=max_len`, ordered by length and then lexicographically.
pub fn reduced_words(rank: usize, max_len: usize) -> ReducedWords {
    assert!(rank >= 1, "alphabet rank must be >= 1");
    ReducedWords {
        rank,
        max_len,
        len: 1,
        roots: canonical_prefixes(rank, 1),
        root_idx: 0,
        buffer: Vec::new(),
        buffer_idx: 0,
    }
}

/// Streaming enumeration of canonical words; see [`reduced_words`].
///
/// Words are produced one DFS root at a time, so peak memory is one root's
/// share of a single length class.
pub struct ReducedWords {
    rank: usize,
    max_len: usize,
    len: usize,
    roots: Vec<Vec<Letter>>,
    root_idx: usize,
    buffer: Vec<CyclicWord>,
    buffer_idx: usize,
}

impl Iterator for ReducedWords {
    type Item = CyclicWord;

    fn next(&mut self) -> Option<CyclicWord> {
        loop {
            if self.buffer_idx < self.buffer.len() {
                let w = self.buffer[self.buffer_idx].clone();
                self.buffer_idx += 1;
                return Some(w);
            }
            if self.len > self.max_len {
                return None;
            }
            if self.root_idx == self.roots.len() {
                self.len += 1;
                if self.len > self.max_len {
                    return None;
                }
                self.roots = canonical_prefixes(self.rank, self.len);
                self.root_idx = 0;
                continue;
            }
            let mut prefix = self.roots[self.root_idx].clone();
            self.root_idx += 1;
            self.buffer.clear();
            self.buffer_idx = 0;
            let buffer = &mut self.buffer;
            visit_canonical(self.rank, self.len, &mut prefix, &mut |letters| {
                buffer.push(CyclicWord::from_canonical(letters.to_vec()));
            });
        }
    }
}
