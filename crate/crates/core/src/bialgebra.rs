//! The loop bracket and cobracket, and the Lie bialgebra axioms they
//! satisfy.
//!
//! Both operations are sums over linked pairs. A self-linked pair of `w`
//! is a self-crossing; resolving it cuts `w` into two loops, and the
//! cobracket is the signed sum of the resulting ordered tensors. A linked
//! pair between `v` and `w` is a crossing of the two loops; splicing
//! rewires them into a single loop, and the bracket is the signed sum of
//! the results.
//!
//! Sums live in the free integer module on canonical cyclic words
//! ([`FormalSum`]), its tensor square ([`TensorSum`]) and cube
//! ([`TripleSum`]). Coefficients are arbitrary-precision integers; no
//! floating point or rational arithmetic appears anywhere.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::linking::{self, LinkedPair, PairKind};
use crate::surface::SurfaceSymbol;
use crate::words::CyclicWord;

/// Errors from the cut and splice constructions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("pair does not originate from the linked-pair enumeration of the given word(s)")]
    ForeignPair,
}

fn number(c: &BigInt) -> Value {
    let n: serde_json::Number = serde_json::from_str(&c.to_string())
        .expect("integer literal is a valid JSON number");
    Value::Number(n)
}

fn write_terms<K>(
    f: &mut fmt::Formatter<'_>,
    terms: &BTreeMap<K, BigInt>,
    mut key: impl FnMut(&K) -> String,
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        if i == 0 {
            write!(f, "{c}*{}", key(k))?;
        } else if c.is_negative() {
            write!(f, " - {}*{}", c.magnitude(), key(k))?;
        } else {
            write!(f, " + {c}*{}", key(k))?;
        }
    }
    Ok(())
}

fn bump<K: Ord>(terms: &mut BTreeMap<K, BigInt>, key: K, delta: BigInt) {
    if delta.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(delta);
        }
        Entry::Occupied(mut slot) => {
            *slot.get_mut() += delta;
            if slot.get().is_zero() {
                slot.remove();
            }
        }
    }
}

/// An integer formal sum of canonical cyclic words. No zero coefficients
/// are stored, and iteration follows the canonical word order (length,
/// then lexicographic), so equal sums are structurally equal.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FormalSum {
    terms: BTreeMap<CyclicWord, BigInt>,
}

impl FormalSum {
    pub fn zero() -> FormalSum {
        FormalSum::default()
    }

    pub fn term(word: CyclicWord, coeff: impl Into<BigInt>) -> FormalSum {
        let mut s = FormalSum::zero();
        s.add_term(word, coeff);
        s
    }

    pub fn add_term(&mut self, word: CyclicWord, coeff: impl Into<BigInt>) {
        bump(&mut self.terms, word, coeff.into());
    }

    pub fn add_sum(&mut self, other: &FormalSum) {
        for (w, c) in &other.terms {
            bump(&mut self.terms, w.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &FormalSum, factor: &BigInt) {
        for (w, c) in &other.terms {
            bump(&mut self.terms, w.clone(), c * factor);
        }
    }

    pub fn negated(&self) -> FormalSum {
        FormalSum {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct words with non-zero coefficient.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms counted with multiplicity: the sum of `|coeff|`.
    pub fn abs_coeff_sum(&self) -> BigUint {
        self.terms.values().map(|c| c.magnitude().clone()).sum()
    }

    pub fn coeff(&self, word: &CyclicWord) -> BigInt {
        self.terms.get(word).cloned().unwrap_or(BigInt::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclicWord, &BigInt)> {
        self.terms.iter()
    }

    /// `[{"word": "...", "coeff": n}, ...]` in canonical term order; an
    /// empty array is the zero sum.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(w, c)| json!({"word": w.to_string(), "coeff": number(c)}))
                .collect(),
        )
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |w| w.to_string())
    }
}

/// An integer formal sum of ordered tensors of two cyclic words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorSum {
    terms: BTreeMap<(CyclicWord, CyclicWord), BigInt>,
}

impl TensorSum {
    pub fn zero() -> TensorSum {
        TensorSum::default()
    }

    pub fn add_term(
        &mut self,
        left: CyclicWord,
        right: CyclicWord,
        coeff: impl Into<BigInt>,
    ) {
        bump(&mut self.terms, (left, right), coeff.into());
    }

    pub fn add_sum(&mut self, other: &TensorSum) {
        for (k, c) in &other.terms {
            bump(&mut self.terms, k.clone(), c.clone());
        }
    }

    pub fn negated(&self) -> TensorSum {
        TensorSum {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    /// The flip `s(u (x) v) = v (x) u`.
    pub fn swapped(&self) -> TensorSum {
        TensorSum {
            terms: self
                .terms
                .iter()
                .map(|((u, v), c)| ((v.clone(), u.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn abs_coeff_sum(&self) -> BigUint {
        self.terms.values().map(|c| c.magnitude().clone()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(CyclicWord, CyclicWord), &BigInt)> {
        self.terms.iter()
    }

    /// `[{"left": "...", "right": "...", "coeff": n}, ...]` sorted
    /// canonically; an empty array is the zero sum.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((u, v), c)| {
                    json!({
                        "left": u.to_string(),
                        "right": v.to_string(),
                        "coeff": number(c)
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for TensorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |(u, v)| format!("({u} (x) {v})"))
    }
}

/// An integer formal sum of ordered triple tensors; only the co-Jacobi
/// residual lives here.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TripleSum {
    terms: BTreeMap<(CyclicWord, CyclicWord, CyclicWord), BigInt>,
}

impl TripleSum {
    pub fn zero() -> TripleSum {
        TripleSum::default()
    }

    pub fn add_term(
        &mut self,
        a: CyclicWord,
        b: CyclicWord,
        c: CyclicWord,
        coeff: impl Into<BigInt>,
    ) {
        bump(&mut self.terms, (a, b, c), coeff.into());
    }

    pub fn add_sum(&mut self, other: &TripleSum) {
        for (k, c) in &other.terms {
            bump(&mut self.terms, k.clone(), c.clone());
        }
    }

    /// The cyclic rotation `w(u (x) v (x) w) = w (x) u (x) v`.
    pub fn rotated(&self) -> TripleSum {
        TripleSum {
            terms: self
                .terms
                .iter()
                .map(|((u, v, w), c)| ((w.clone(), u.clone(), v.clone()), c.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for TripleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.terms, |(u, v, w)| format!("({u} (x) {v} (x) {w})"))
    }
}

/// Cut a loop at a self-crossing: the two loops obtained by resolving
/// the crossing witnessed by `pair` in `w`, in the order (turn left from
/// the end of `p`, then the rest).
///
/// For short and parallel pairs the crossing sits between the last
/// letters of the two strands: the word splits into the arc from the end
/// of `p` up to the end of `q`, and the complementary arc. For
/// antiparallel pairs the strands cross twice around the shared interior
/// and the two loops are the arcs outside it, ends included.
///
/// Both parts are guaranteed non-empty and emerge cyclically reduced;
/// the construction asserts this rather than re-reducing. A pair that
/// does not originate from the self-linked enumeration of `w` is
/// rejected as [`PairError::ForeignPair`].
pub fn resolve(
    w: &CyclicWord,
    pair: &LinkedPair,
    symbol: &SurfaceSymbol,
) -> Result<(CyclicWord, CyclicWord), PairError> {
    let m = w.len();
    let same_occurrence = pair.p == pair.q;
    if same_occurrence
        || pair.p.len > m
        || pair.q.len > m
        || !linking::pair_matches(w, w, pair, symbol)
    {
        return Err(PairError::ForeignPair);
    }
    let (first, second) = match pair.kind {
        PairKind::Short | PairKind::Parallel => {
            let cut_a = pair.p_last();
            let cut_b = pair.q_last();
            debug_assert_ne!(cut_a, cut_b, "distinct end letters sit at distinct positions");
            let len_a = (cut_b + m - cut_a) % m;
            (w.arc(cut_a, len_a), w.arc(cut_b, m - len_a))
        }
        PairKind::Antiparallel => {
            let len_a = (pair.q_first() + m - pair.p_last()) % m + 1;
            let len_b = (pair.p_first() + m - pair.q_last()) % m + 1;
            (w.arc(pair.p_last(), len_a), w.arc(pair.q_last(), len_b))
        }
    };
    let w1 = CyclicWord::from_reduced(first);
    let w2 = CyclicWord::from_reduced(second);
    debug_assert_eq!(
        w1.homology(symbol.rank()) + w2.homology(symbol.rank()),
        w.homology(symbol.rank()),
        "cutting preserves homology"
    );
    Ok((w1, w2))
}

/// Splice two loops at a crossing: the single loop obtained by rewiring
/// `v` and `w` at the crossing witnessed by `pair` from the linked-pair
/// enumeration of `(v, w)`.
///
/// For short and parallel pairs the result reads all of `v` from the end
/// of `p` followed by all of `w` from the end of `q`, and emerges
/// cyclically reduced (asserted, not re-reduced). Antiparallel pairs
/// share an interior `Y` that the splice walks only once. When `Y` fits
/// strictly inside both loops, each side contributes its arc outside `Y`
/// and the result again needs no reduction. When `Y` wraps around either
/// loop, the splice reads both loops in full from the crossing and the
/// overlap cancels in the reduction; the pair's end conditions keep the
/// result non-trivial.
pub fn splice(
    v: &CyclicWord,
    w: &CyclicWord,
    pair: &LinkedPair,
    symbol: &SurfaceSymbol,
) -> Result<CyclicWord, PairError> {
    if !linking::pair_matches(v, w, pair, symbol) {
        return Err(PairError::ForeignPair);
    }
    let interior = pair.interior_len();
    let spliced = match pair.kind {
        PairKind::Short | PairKind::Parallel => {
            let mut letters = v.arc(pair.p_last(), v.len());
            letters.extend(w.arc(pair.q_last(), w.len()));
            CyclicWord::from_reduced(letters)
        }
        PairKind::Antiparallel if interior < v.len() && interior < w.len() => {
            let mut letters = v.arc(pair.p_last(), v.len() - interior);
            letters.extend(w.arc(pair.q_last(), w.len() - interior));
            CyclicWord::from_reduced(letters)
        }
        PairKind::Antiparallel => {
            let mut letters = v.arc(pair.p_last(), v.len());
            letters.extend(w.arc((pair.q_first() + 1) % w.len(), w.len()));
            CyclicWord::reduce(&letters)
                .expect("a linked antiparallel pair never swallows both loops")
        }
    };
    debug_assert_eq!(
        spliced.homology(symbol.rank()),
        v.homology(symbol.rank()) + w.homology(symbol.rank()),
        "splicing adds homology"
    );
    Ok(spliced)
}

/// The cobracket of `w`: the signed sum of resolved self-crossings,
/// `sum sign(pair) * (w1 (x) w2)` over the self-linked pairs of `w`.
pub fn cobracket(w: &CyclicWord, symbol: &SurfaceSymbol) -> TensorSum {
    let mut sum = TensorSum::zero();
    for pair in linking::self_linked_pairs(w, symbol) {
        let (w1, w2) = resolve(w, &pair, symbol)
            .expect("enumerated pairs resolve");
        sum.add_term(w1, w2, pair.sign as i64);
    }
    sum
}

/// The bracket of `v` and `w`: the signed sum of spliced crossings,
/// `sum sign(pair) * spliced` over the linked pairs of `(v, w)`.
pub fn bracket(v: &CyclicWord, w: &CyclicWord, symbol: &SurfaceSymbol) -> FormalSum {
    bracket_slack(v, w, symbol, 0)
}

/// [`bracket`] over widened enumeration windows; see
/// [`linking::linked_pairs_slack`]. Widening must not change the value.
pub fn bracket_slack(
    v: &CyclicWord,
    w: &CyclicWord,
    symbol: &SurfaceSymbol,
    slack: usize,
) -> FormalSum {
    let mut sum = FormalSum::zero();
    for pair in linking::linked_pairs_slack(v, w, symbol, slack) {
        let spliced = splice(v, w, &pair, symbol).expect("enumerated pairs splice");
        sum.add_term(spliced, pair.sign as i64);
    }
    sum
}

/// Bracket extended bilinearly to formal sums.
pub fn bracket_sums(a: &FormalSum, b: &FormalSum, symbol: &SurfaceSymbol) -> FormalSum {
    let mut sum = FormalSum::zero();
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            sum.add_scaled(&bracket(u, v, symbol), &(cu * cv));
        }
    }
    sum
}

/// Cobracket extended linearly to formal sums.
pub fn cobracket_sum(a: &FormalSum, symbol: &SurfaceSymbol) -> TensorSum {
    let mut sum = TensorSum::zero();
    for (u, cu) in a.iter() {
        for ((x, y), c) in cobracket(u, symbol).iter() {
            sum.add_term(x.clone(), y.clone(), cu * c);
        }
    }
    sum
}

/// `[t, b]` for a tensor sum `t`: the bracket acts as a derivation in
/// each tensor slot, `[u (x) v, b] = [u, b] (x) v + u (x) [v, b]`.
fn bracket_tensor_word(t: &TensorSum, b: &CyclicWord, symbol: &SurfaceSymbol) -> TensorSum {
    let mut sum = TensorSum::zero();
    for ((u, v), c) in t.iter() {
        for (g, cg) in bracket(u, b, symbol).iter() {
            sum.add_term(g.clone(), v.clone(), c * cg);
        }
        for (g, cg) in bracket(v, b, symbol).iter() {
            sum.add_term(u.clone(), g.clone(), c * cg);
        }
    }
    sum
}

/// `[a, t]` for a tensor sum `t`: `[a, u (x) v] = [a, u] (x) v + u (x) [a, v]`.
fn bracket_word_tensor(a: &CyclicWord, t: &TensorSum, symbol: &SurfaceSymbol) -> TensorSum {
    let mut sum = TensorSum::zero();
    for ((u, v), c) in t.iter() {
        for (g, cg) in bracket(a, u, symbol).iter() {
            sum.add_term(g.clone(), v.clone(), c * cg);
        }
        for (g, cg) in bracket(a, v, symbol).iter() {
            sum.add_term(u.clone(), g.clone(), c * cg);
        }
    }
    sum
}

/// The six Lie bialgebra identities, checkable pointwise on sample words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    /// `[a, b] + [b, a] = 0`.
    Skew,
    /// `[a, [b, c]] + [c, [a, b]] + [b, [c, a]] = 0`.
    Jacobi,
    /// `s(delta a) + delta a = 0`.
    CoSkew,
    /// `(1 + w + w^2)(1 (x) delta)(delta a) = 0`.
    CoJacobi,
    /// `delta [a, b] = [delta a, b] + [a, delta b]`.
    Compatibility,
    /// `[,] after delta = 0`.
    Involutive,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [
        Axiom::Skew,
        Axiom::Jacobi,
        Axiom::CoSkew,
        Axiom::CoJacobi,
        Axiom::Compatibility,
        Axiom::Involutive,
    ];

    /// How many sample words the identity quantifies over.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Skew | Axiom::Compatibility => 2,
            Axiom::Jacobi => 3,
            Axiom::CoSkew | Axiom::CoJacobi | Axiom::Involutive => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Skew => "skew",
            Axiom::Jacobi => "jacobi",
            Axiom::CoSkew => "co-skew",
            Axiom::CoJacobi => "co-jacobi",
            Axiom::Compatibility => "compatibility",
            Axiom::Involutive => "involutive",
        }
    }
}

/// The residual of an axiom instance; zero means the identity held.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Residual {
    Sum(FormalSum),
    Tensor(TensorSum),
    Triple(TripleSum),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Sum(s) => s.is_zero(),
            Residual::Tensor(s) => s.is_zero(),
            Residual::Triple(s) => s.is_zero(),
        }
    }

    pub fn term_count(&self) -> usize {
        match self {
            Residual::Sum(s) => s.term_count(),
            Residual::Tensor(s) => s.term_count(),
            Residual::Triple(s) => s.term_count(),
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Sum(s) => s.fmt(f),
            Residual::Tensor(s) => s.fmt(f),
            Residual::Triple(s) => s.fmt(f),
        }
    }
}

/// One axiom instance: the sample words and the residual they produced.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub words: Vec<CyclicWord>,
    pub residual: Residual,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Evaluate `axiom` on `words` (exactly `axiom.arity()` of them) over
/// `symbol`, returning the witnesses and the exact residual.
pub fn check_axiom(
    axiom: Axiom,
    symbol: &SurfaceSymbol,
    words: &[CyclicWord],
) -> AxiomCheck {
    assert_eq!(
        words.len(),
        axiom.arity(),
        "axiom {} takes {} word(s)",
        axiom.name(),
        axiom.arity()
    );
    let residual = match axiom {
        Axiom::Skew => {
            let (a, b) = (&words[0], &words[1]);
            let mut r = bracket(a, b, symbol);
            r.add_sum(&bracket(b, a, symbol));
            Residual::Sum(r)
        }
        Axiom::Jacobi => {
            let (a, b, c) = (&words[0], &words[1], &words[2]);
            let single = |w: &CyclicWord| FormalSum::term(w.clone(), 1);
            let mut r = bracket_sums(&single(a), &bracket(b, c, symbol), symbol);
            r.add_sum(&bracket_sums(&single(c), &bracket(a, b, symbol), symbol));
            r.add_sum(&bracket_sums(&single(b), &bracket(c, a, symbol), symbol));
            Residual::Sum(r)
        }
        Axiom::CoSkew => {
            let d = cobracket(&words[0], symbol);
            let mut r = d.swapped();
            r.add_sum(&d);
            Residual::Tensor(r)
        }
        Axiom::CoJacobi => {
            let d = cobracket(&words[0], symbol);
            let mut once = TripleSum::zero();
            for ((u, v), c) in d.iter() {
                for ((x, y), cd) in cobracket(v, symbol).iter() {
                    once.add_term(u.clone(), x.clone(), y.clone(), c * cd);
                }
            }
            let mut r = once.clone();
            let rot = once.rotated();
            r.add_sum(&rot);
            r.add_sum(&rot.rotated());
            Residual::Triple(r)
        }
        Axiom::Compatibility => {
            let (a, b) = (&words[0], &words[1]);
            let mut r = cobracket_sum(&bracket(a, b, symbol), symbol);
            r.add_sum(&bracket_tensor_word(&cobracket(a, symbol), b, symbol).negated());
            r.add_sum(&bracket_word_tensor(a, &cobracket(b, symbol), symbol).negated());
            Residual::Tensor(r)
        }
        Axiom::Involutive => {
            let mut r = FormalSum::zero();
            for ((u, v), c) in cobracket(&words[0], symbol).iter() {
                r.add_scaled(&bracket(u, v, symbol), c);
            }
            Residual::Sum(r)
        }
    };
    AxiomCheck {
        axiom,
        words: words.to_vec(),
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::{self_linked_pairs, Occurrence};

    fn cw(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    fn genus2() -> SurfaceSymbol {
        SurfaceSymbol::from_genus_boundary(2, 1).unwrap()
    }

    fn torus() -> SurfaceSymbol {
        SurfaceSymbol::from_genus_boundary(1, 1).unwrap()
    }

    fn sphere3() -> SurfaceSymbol {
        SurfaceSymbol::from_genus_boundary(0, 3).unwrap()
    }

    fn find_pair(
        pairs: &[LinkedPair],
        w: &CyclicWord,
        p_text: &str,
        q_text: &str,
    ) -> LinkedPair {
        let p: Vec<_> = crate::words::parse_letters(p_text).unwrap();
        let q: Vec<_> = crate::words::parse_letters(q_text).unwrap();
        *pairs
            .iter()
            .find(|pr| {
                w.arc(pr.p.start, pr.p.len) == p && w.arc(pr.q.start, pr.q.len) == q
            })
            .expect("pair with the given letters")
    }

    #[test]
    fn resolving_a_short_pair_cuts_between_strand_ends() {
        let o = genus2();
        let w = cw("a1.a2.A3.a1.a1.a3.A2.a1");
        let pairs = self_linked_pairs(&w, &o);
        let pair = find_pair(&pairs, &w, "a2.A3", "A3.a1");
        let (w1, w2) = resolve(&w, &pair, &o).unwrap();
        assert_eq!(w1, cw("A3"));
        assert_eq!(w2, cw("a1.a1.a3.A2.a1.a1.a2"));
    }

    #[test]
    fn resolving_an_antiparallel_pair_keeps_both_ends() {
        let o = genus2();
        let w = cw("a1.a2.A3.a1.a1.a3.A2.a1");
        let pairs = self_linked_pairs(&w, &o);
        let pair = find_pair(&pairs, &w, "a1.a2.A3.a1", "a1.a3.A2.a1");
        let (w1, w2) = resolve(&w, &pair, &o).unwrap();
        assert_eq!(w1, cw("a1.a1"));
        assert_eq!(w2, cw("a1.a1"));
    }

    #[test]
    fn resolving_a_parallel_pair() {
        let o = genus2();
        let w = cw("a1.a2.A3.a1.a1.a3.A2.a1");
        let pairs = self_linked_pairs(&w, &o);
        let pair = find_pair(&pairs, &w, "A3.a1.a1", "a1.a1.a3");
        let (w1, w2) = resolve(&w, &pair, &o).unwrap();
        assert_eq!(w1, cw("a1"));
        assert_eq!(w2, cw("a3.A2.a1.a1.a2.A3.a1"));
    }

    #[test]
    fn foreign_pairs_are_rejected() {
        let o = genus2();
        let w = cw("a1.A3.a2");
        let other = cw("a1.a1.a2.a2");
        let pairs = self_linked_pairs(&w, &o);
        assert!(!pairs.is_empty());
        for pair in &pairs {
            // Same word: fine. Different word: rejected.
            assert!(resolve(&w, pair, &o).is_ok());
            assert_eq!(resolve(&other, pair, &o), Err(PairError::ForeignPair));
        }
    }

    #[test]
    fn cobracket_of_generator_powers_vanishes() {
        let o = sphere3();
        for s in ["a1", "a2", "a1.a1", "a2.a2.a2"] {
            assert!(cobracket(&cw(s), &o).is_zero(), "{s}");
        }
    }

    #[test]
    fn cobracket_cancellation_on_the_punctured_torus() {
        // Two mirrored self-crossings resolve to the same tensor and
        // cancel, even though the word is not simple.
        let o = torus();
        assert!(cobracket(&cw("a1.a1.a2.a2"), &o).is_zero());
    }

    #[test]
    fn bracket_of_torus_generators() {
        let o = torus();
        assert_eq!(
            bracket(&cw("a1"), &cw("a2"), &o),
            FormalSum::term(cw("a1.a2"), 1)
        );
    }

    #[test]
    fn bracket_with_antiparallel_splices() {
        let o = genus2();
        let sum = bracket(&cw("a1.a2.a2.a3"), &cw("A2.A2"), &o);
        assert_eq!(sum, FormalSum::term(cw("a1.a3"), -2));
        assert_eq!(sum.to_string(), "-2*a1.a3");
    }

    #[test]
    fn bracket_cancels_on_the_three_punctured_sphere() {
        let o = sphere3();
        let v = cw("a1.A2.A2");
        let w = cw("a1.A2");
        assert!(bracket(&v, &w, &o).is_zero());
        assert_eq!(linking::linked_pairs(&v, &w, &o).len(), 2);
    }

    #[test]
    fn splicing_a_wrapping_antiparallel_pair() {
        // The shared interior (length 3) wraps all the way around `v`
        // (length 2), so this splice runs through the reduction path.
        let o = sphere3();
        let v = cw("a1.A2");
        let w = cw("a1.a2.A1.a2.a2");
        let sum = bracket(&v, &w, &o);
        assert_eq!(sum.coeff(&cw("a1.a2.a2")), (-1).into());
        assert_eq!(sum.coeff(&cw("a1.a1.a2.A1.a2")), 1.into());
        assert_eq!(sum.coeff(&cw("a1.a2.a1.A2.A1.a2.a2")), 1.into());
        assert_eq!(sum.coeff(&cw("a1.a2.A1.A2.a1.a2.a2")), (-1).into());
        assert_eq!(sum.term_count(), 4);
        let h = v.homology(o.rank()) + w.homology(o.rank());
        for (term, _) in sum.iter() {
            assert_eq!(term.homology(o.rank()), h.clone());
        }
    }

    #[test]
    fn formal_sum_collects_and_serializes() {
        let mut s = FormalSum::zero();
        s.add_term(cw("a1.a3"), -1);
        s.add_term(cw("a2"), 2);
        s.add_term(cw("a1.a3"), -1);
        assert_eq!(s.term_count(), 2);
        assert_eq!(s.abs_coeff_sum(), 4u32.into());
        assert_eq!(
            s.to_json().to_string(),
            r#"[{"coeff":2,"word":"a2"},{"coeff":-2,"word":"a1.a3"}]"#
        );
        assert_eq!(s.to_string(), "2*a2 - 2*a1.a3");
        s.add_term(cw("a2"), -2);
        s.add_term(cw("a1.a3"), 2);
        assert!(s.is_zero());
        assert_eq!(s.to_json().to_string(), "[]");
        assert_eq!(s.to_string(), "0");
    }

    #[test]
    fn tensor_sum_swap_and_display() {
        let mut t = TensorSum::zero();
        t.add_term(cw("a1"), cw("a2"), 1);
        assert_eq!(t.to_string(), "1*(a1 (x) a2)");
        assert_eq!(t.swapped().to_string(), "1*(a2 (x) a1)");
        let mut cancel = t.clone();
        cancel.add_term(cw("a1"), cw("a2"), -1);
        assert!(cancel.is_zero());
    }

    #[test]
    fn axiom_arities_and_names() {
        assert_eq!(Axiom::ALL.len(), 6);
        let o = torus();
        let a = cw("a1.a2");
        let b = cw("a1");
        let c = cw("a2.a2");
        for axiom in Axiom::ALL {
            let words: Vec<CyclicWord> = [a.clone(), b.clone(), c.clone()]
                .into_iter()
                .take(axiom.arity())
                .collect();
            let check = check_axiom(axiom, &o, &words);
            assert!(
                check.passed(),
                "{} failed on {:?} with residual {}",
                axiom.name(),
                check.words,
                check.residual
            );
        }
    }

    #[test]
    fn axioms_hold_on_a_word_with_crossings() {
        // The cobracket of this word is genuinely non-zero, so the co-side
        // identities are exercised beyond the empty sum.
        let o = genus2();
        let a = cw("a1.a2.A3.a1.a1.a3.A2.a1");
        let b = cw("a2.A3");
        let c = cw("a3");
        assert!(!cobracket(&a, &o).is_zero());
        for axiom in Axiom::ALL {
            let words: Vec<CyclicWord> = [a.clone(), b.clone(), c.clone()]
                .into_iter()
                .take(axiom.arity())
                .collect();
            let check = check_axiom(axiom, &o, &words);
            assert!(
                check.passed(),
                "{} failed with residual {}",
                axiom.name(),
                check.residual
            );
        }
    }

    #[test]
    fn bracket_is_antisymmetric_on_samples() {
        let o = genus2();
        let samples = [
            (cw("a1.a2.a2.a3"), cw("A2.A2")),
            (cw("a1.A3"), cw("a2.A4")),
            (cw("a1.a1.a2"), cw("a3")),
        ];
        for (v, w) in samples {
            let vw = bracket(&v, &w, &o);
            let wv = bracket(&w, &v, &o);
            assert_eq!(vw, wv.negated(), "[{v},{w}] = -[{w},{v}]");
        }
    }

    #[test]
    fn self_bracket_vanishes() {
        let o = genus2();
        for s in ["a1", "a1.a2", "a1.a2.A3.a1", "a1.A3.a2"] {
            assert!(bracket(&cw(s), &cw(s), &o).is_zero(), "{s}");
        }
    }

    #[test]
    fn occurrence_pairs_respect_start_mod_len() {
        // Both occurrences of the repeated strand in a square word give
        // pairs; resolve accepts each.
        let o = torus();
        let w = cw("a1.a1.a2.a2");
        let pairs = self_linked_pairs(&w, &o);
        assert_eq!(pairs.len(), 2);
        assert_eq!(
            (pairs[0].p, pairs[0].q),
            (Occurrence::new(0, 2), Occurrence::new(2, 2))
        );
        for pair in &pairs {
            let (w1, w2) = resolve(&w, pair, &o).unwrap();
            assert_eq!((w1, w2), (cw("a1.a2"), cw("a1.a2")));
        }
    }
}
