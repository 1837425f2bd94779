//! Linked pairs: the combinatorial crossings between loops.
//!
//! A crossing of loops is witnessed by a pair of linear subwords that
//! traverse it, one from each loop (or two from the same loop for a
//! self-crossing). A pair `(P, Q)` of freely reduced words of length at
//! least two is *linked* in exactly one of three shapes, each decided by
//! the orientation function of the surface symbol:
//!
//! * **short**: both words have length two and the four letters
//!   `P1^-1, Q1^-1, P2, Q2` sit in a strict cyclic order around the
//!   symbol; the sign is that order's orientation.
//! * **parallel**: `P = p Y q` and `Q = r Y s` share the interior `Y`
//!   (so the strands run side by side along `Y` and must cross at one
//!   end); linked when the two end triples give the same orientation.
//! * **antiparallel**: `P = p Y q` and `Q = r Y^-1 s` share the interior
//!   up to inversion (the strands run along `Y` in opposite directions).
//!
//! Linked words always have equal lengths, which the enumerators exploit.
//! `LP1(w)` collects linked pairs of subword occurrences of a single
//! word (self-crossings); `LP2(v, w)` collects linked pairs with the
//! first word read in a power of `v` and the second in a power of `w`
//! (crossings between the loops), over windows just wide enough to hold
//! every linked pair.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::surface::SurfaceSymbol;
use crate::words::{CyclicWord, Letter, LinearWord};

/// The three shapes of linked pair, serialized as kinds 1, 2, 3.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum PairKind {
    /// Both subwords of length two, no shared interior.
    Short,
    /// Equal interiors: the strands share `Y` with the same direction.
    Parallel,
    /// Inverse interiors: the strands share `Y` in opposite directions.
    Antiparallel,
}

impl PairKind {
    pub fn as_u8(self) -> u8 {
        match self {
            PairKind::Short => 1,
            PairKind::Parallel => 2,
            PairKind::Antiparallel => 3,
        }
    }
}

/// A subword occurrence: `len` letters read periodically from `start`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Occurrence {
    pub start: usize,
    pub len: usize,
}

impl Occurrence {
    pub fn new(start: usize, len: usize) -> Occurrence {
        Occurrence { start, len }
    }
}

/// A classified linked pair with its sign and cached letter positions.
///
/// `p` is an occurrence in the first word, `q` in the second (for
/// self-linked pairs both refer to the same word). The cached positions
/// are the host-word indices (mod the host length) of the first and last
/// letters of each occurrence; the cobracket and bracket constructions
/// are pure index arithmetic on them.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinkedPair {
    pub kind: PairKind,
    pub p: Occurrence,
    pub q: Occurrence,
    pub sign: i8,
    p_first: usize,
    p_last: usize,
    q_first: usize,
    q_last: usize,
}

impl LinkedPair {
    fn new(
        kind: PairKind,
        sign: i8,
        p: Occurrence,
        q: Occurrence,
        p_host: usize,
        q_host: usize,
    ) -> LinkedPair {
        LinkedPair {
            kind,
            p,
            q,
            sign,
            p_first: p.start % p_host,
            p_last: (p.start + p.len - 1) % p_host,
            q_first: q.start % q_host,
            q_last: (q.start + q.len - 1) % q_host,
        }
    }

    /// Host position of the first letter of `p`.
    pub fn p_first(&self) -> usize {
        self.p_first
    }

    /// Host position of the last letter of `p`.
    pub fn p_last(&self) -> usize {
        self.p_last
    }

    pub fn q_first(&self) -> usize {
        self.q_first
    }

    pub fn q_last(&self) -> usize {
        self.q_last
    }

    /// Shared-interior length (zero for short pairs).
    pub fn interior_len(&self) -> usize {
        self.p.len - 2
    }
}

impl Serialize for LinkedPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("LinkedPair", 6)?;
        s.serialize_field("kind", &self.kind.as_u8())?;
        s.serialize_field("p_start", &self.p.start)?;
        s.serialize_field("p_len", &self.p.len)?;
        s.serialize_field("q_start", &self.q.start)?;
        s.serialize_field("q_len", &self.q.len)?;
        s.serialize_field("sign", &self.sign)?;
        s.end()
    }
}

/// Classify a pair of freely reduced linear words (lengths at least two):
/// the pair's shape and sign if linked, `None` otherwise.
pub fn classify(
    p: &LinearWord,
    q: &LinearWord,
    symbol: &SurfaceSymbol,
) -> Option<(PairKind, i8)> {
    debug_assert!(p.is_freely_reduced() && q.is_freely_reduced());
    let pl = p.letters();
    let ql = q.letters();
    classify_core(symbol, pl.len(), &|i| pl[i], ql.len(), &|i| ql[i])
}

/// Shape and sign of `(P, Q)` given by letter accessors; `None` when the
/// pair is not linked. The accessors let the enumerators classify
/// occurrences in place, without materializing subwords.
fn classify_core(
    symbol: &SurfaceSymbol,
    p_len: usize,
    p_at: &dyn Fn(usize) -> Letter,
    q_len: usize,
    q_at: &dyn Fn(usize) -> Letter,
) -> Option<(PairKind, i8)> {
    debug_assert!(p_len >= 2 && q_len >= 2);
    if p_len == 2 && q_len == 2 {
        let sign = symbol.orientation(&[
            p_at(0).inverse(),
            q_at(0).inverse(),
            p_at(1),
            q_at(1),
        ]);
        return (sign != 0).then_some((PairKind::Short, sign));
    }
    if p_len != q_len || p_len < 3 {
        return None;
    }
    let last = p_len - 1;
    // Interior of P is positions 1..last; x1 and x2 are its end letters.
    let x1 = p_at(1);
    let x2 = p_at(last - 1);
    if (1..last).all(|i| q_at(i) == p_at(i)) {
        // Parallel: same interior. The strands enter together and leave
        // together, so they cross exactly when both end triples wind the
        // same way around the symbol.
        if p_at(0) == q_at(0) || p_at(last) == q_at(last) {
            return None;
        }
        let s1 = symbol.orientation(&[p_at(0).inverse(), q_at(0).inverse(), x1]);
        let s2 = symbol.orientation(&[p_at(last), q_at(last), x2.inverse()]);
        debug_assert!(
            symbol.strict_orientation() || (s1 != 0 && s2 != 0),
            "end triples of a parallel candidate have distinct letters"
        );
        return (s1 == s2 && s1 != 0).then_some((PairKind::Parallel, s1));
    }
    if (1..last).all(|i| q_at(i) == p_at(p_len - 1 - i).inverse()) {
        // Antiparallel: interior of Q is the inverse of the interior of P.
        if p_at(0) == q_at(last).inverse() || p_at(last) == q_at(0).inverse() {
            return None;
        }
        let s1 = symbol.orientation(&[q_at(last), p_at(0).inverse(), x1]);
        let s2 = symbol.orientation(&[q_at(0).inverse(), p_at(last), x2.inverse()]);
        debug_assert!(
            symbol.strict_orientation() || (s1 != 0 && s2 != 0),
            "end triples of an antiparallel candidate have distinct letters"
        );
        return (s1 == s2 && s1 != 0).then_some((PairKind::Antiparallel, s1));
    }
    None
}

fn classify_occurrences(
    v: &CyclicWord,
    p: Occurrence,
    w: &CyclicWord,
    q: Occurrence,
    symbol: &SurfaceSymbol,
) -> Option<LinkedPair> {
    let (kind, sign) = classify_core(
        symbol,
        p.len,
        &|i| v.letter_at(p.start + i),
        q.len,
        &|i| w.letter_at(q.start + i),
    )?;
    Some(LinkedPair::new(kind, sign, p, q, v.len(), w.len()))
}

/// Re-derive the classification of a stored pair against host words:
/// true when the occurrences are in range and classifying them
/// reproduces the stored kind, sign, and cached positions. Used to
/// reject pairs that did not originate from the matching enumeration.
pub(crate) fn pair_matches(
    v: &CyclicWord,
    w: &CyclicWord,
    pair: &LinkedPair,
    symbol: &SurfaceSymbol,
) -> bool {
    if pair.p.start >= v.len() || pair.q.start >= w.len() {
        return false;
    }
    if pair.p.len < 2 || pair.q.len < 2 {
        return false;
    }
    match classify_occurrences(v, pair.p, w, pair.q, symbol) {
        Some(rebuilt) => rebuilt == *pair,
        None => false,
    }
}

/// Self-linked pairs of `w`: ordered pairs of distinct subword
/// occurrences (lengths `2..=l(w)`) that are linked. Sorted by
/// `(p.start, p.len, q.start, q.len)`.
pub fn self_linked_pairs(w: &CyclicWord, symbol: &SurfaceSymbol) -> Vec<LinkedPair> {
    let pairs = self_linked_pairs_capped(w, symbol, w.len());
    debug_assert!(pairs.len() <= w.len() * (w.len().saturating_sub(1)));
    debug_assert!(
        pairs.len().is_multiple_of(2),
        "self-linked pairs come in mirrored couples"
    );
    pairs
}

/// Diagnostic variant of [`self_linked_pairs`] with an explicit subword
/// length cap. The default cap `l(w)` is complete for loops on a
/// surface; sweeping the cap higher and finding nothing new is a useful
/// sanity check, which the test suite performs.
pub fn self_linked_pairs_capped(
    w: &CyclicWord,
    symbol: &SurfaceSymbol,
    max_subword_len: usize,
) -> Vec<LinkedPair> {
    let m = w.len();
    let mut pairs = Vec::new();
    for len in 2..=max_subword_len.max(1) {
        for p_start in 0..m {
            for q_start in 0..m {
                if p_start == q_start {
                    continue;
                }
                let p = Occurrence::new(p_start, len);
                let q = Occurrence::new(q_start, len);
                if let Some(pair) = classify_occurrences(w, p, w, q, symbol) {
                    pairs.push(pair);
                }
            }
        }
    }
    pairs.sort_by_key(|pr| (pr.p.start, pr.p.len, pr.q.start, pr.q.len));
    pairs
}

/// Largest power exponent whose window can hold a linked subword:
/// `j < 2 + l(other) / l(host)`, as an exact integer bound.
fn power_cap(host: usize, other: usize) -> usize {
    (2 * host + other - 1) / host
}

/// Linked pairs between distinct loops: `P` read in a power of `v`
/// (start reduced mod `l(v)`), `Q` read in a power of `w`. Sorted by
/// `(p.start, p.len, q.start, q.len)`.
pub fn linked_pairs(
    v: &CyclicWord,
    w: &CyclicWord,
    symbol: &SurfaceSymbol,
) -> Vec<LinkedPair> {
    linked_pairs_slack(v, w, symbol, 0)
}

/// [`linked_pairs`] with the power windows widened by `slack` extra
/// powers on each side. The default windows are complete; widening them
/// is a diagnostic that must not add pairs, which the test suite checks.
pub fn linked_pairs_slack(
    v: &CyclicWord,
    w: &CyclicWord,
    symbol: &SurfaceSymbol,
    slack: usize,
) -> Vec<LinkedPair> {
    let lv = v.len();
    let lw = w.len();
    let p_cap = (power_cap(lv, lw) + slack) * lv;
    let q_cap = (power_cap(lw, lv) + slack) * lw;
    let mut pairs = Vec::new();
    for len in 2..=p_cap.min(q_cap) {
        for p_start in 0..lv {
            for q_start in 0..lw {
                let p = Occurrence::new(p_start, len);
                let q = Occurrence::new(q_start, len);
                if let Some(pair) = classify_occurrences(v, p, w, q, symbol) {
                    pairs.push(pair);
                }
            }
        }
    }
    pairs.sort_by_key(|pr| (pr.p.start, pr.p.len, pr.q.start, pr.q.len));
    debug_assert!(pairs.len() <= lv * lw, "linked pair count bound");
    pairs
}
