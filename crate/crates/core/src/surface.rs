//! Surface symbols: the gluing data of a compact oriented surface with
//! non-empty boundary, and the cyclic orientation function they induce.
//!
//! A symbol of rank `n` is a cyclic word in which each of the `2n`
//! alphabet letters appears exactly once. Reading it around a `4n`-gon
//! whose sides alternate between labeled and unlabeled edges, and gluing
//! each labeled edge to the edge carrying the inverse letter (orientably),
//! produces a surface whose boundary is swept by the unlabeled edges.
//!
//! The symbol also orders the letters around the lone interior vertex,
//! which is what [`SurfaceSymbol::orientation`] measures: a tuple of
//! distinct letters maps to `+1` or `-1` when its cyclic order agrees or
//! disagrees with the symbol, and to `0` otherwise. With positions
//! `p[0..k]` of the letters in a fixed linear representative, the tuple is
//! orientation-compatible exactly when the cyclic sequence of positions has
//! a single descent (`+1`) and reversed exactly when all steps but one
//! descend (`-1`).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::words::{parse_letters, Letter, WordError};

/// Errors from building surface data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("bad surface symbol: {0}")]
    BadSymbol(String),
    #[error("bad surface preset: {0}")]
    BadSurface(String),
}

/// Genus, boundary count, and Euler characteristic read off a symbol.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SurfaceInvariants {
    pub euler_characteristic: i64,
    pub boundary_components: usize,
    pub genus: usize,
}

/// The gluing symbol of a surface with boundary; see the module docs.
///
/// The rotation given at construction is retained as the fixed linear
/// representative (the orientation function is rotation-invariant, so the
/// choice is free, but keeping it makes displays predictable).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SurfaceSymbol {
    letters: Vec<Letter>,
    rank: usize,
    position: Vec<u16>,
    strict_orientation: bool,
}

impl SurfaceSymbol {
    /// Validate that `letters` uses each letter of a rank-`n` alphabet
    /// exactly once (`n` = half the length).
    pub fn new(letters: Vec<Letter>) -> Result<SurfaceSymbol, SurfaceError> {
        let bad = |msg: String| Err(SurfaceError::BadSymbol(msg));
        if letters.is_empty() || !letters.len().is_multiple_of(2) {
            return bad(format!(
                "symbol length must be a positive even number, got {}",
                letters.len()
            ));
        }
        let rank = letters.len() / 2;
        let mut position = vec![u16::MAX; 2 * rank];
        for (i, l) in letters.iter().enumerate() {
            if l.index() > rank {
                return bad(format!("letter {l} exceeds rank {rank}"));
            }
            if position[l.code()] != u16::MAX {
                return bad(format!("letter {l} appears more than once"));
            }
            position[l.code()] = i as u16;
        }
        // Length 2n with 2n distinct in-range letters covers the alphabet.
        Ok(SurfaceSymbol {
            letters,
            rank,
            position,
            strict_orientation: false,
        })
    }

    /// Parse the dotted grammar, e.g. `a1.a2.A1.A2`.
    pub fn parse(text: &str) -> Result<SurfaceSymbol, SurfaceError> {
        let letters = parse_letters(text).map_err(|e: WordError| {
            SurfaceError::BadSymbol(format!("unparsable symbol: {e}"))
        })?;
        SurfaceSymbol::new(letters)
    }

    /// Standard symbol for the surface of the given genus and boundary
    /// count: `g` handle blocks `a b A B` followed by `n - 2g` blocks
    /// `x X`, over rank `n = 2g + b - 1`.
    ///
    /// The construction is self-validated against the boundary tracer: a
    /// preset whose traced invariants disagree with the request is a
    /// `BadSurface` error rather than a wrong surface.
    pub fn from_genus_boundary(
        genus: usize,
        boundary: usize,
    ) -> Result<SurfaceSymbol, SurfaceError> {
        let bad = |msg: String| Err(SurfaceError::BadSurface(msg));
        if boundary == 0 {
            return bad("surface must have boundary".to_string());
        }
        let rank = 2 * genus + boundary - 1;
        if rank < 1 {
            return bad(format!(
                "genus {genus} with {boundary} boundary component(s) has no handles or punctures to carry generators"
            ));
        }
        let mut letters = Vec::with_capacity(2 * rank);
        for h in 0..genus {
            let a = 2 * h + 1;
            let b = 2 * h + 2;
            letters.push(Letter::new(a, false));
            letters.push(Letter::new(b, false));
            letters.push(Letter::new(a, true));
            letters.push(Letter::new(b, true));
        }
        for i in 2 * genus + 1..=rank {
            letters.push(Letter::new(i, false));
            letters.push(Letter::new(i, true));
        }
        let symbol = SurfaceSymbol::new(letters)
            .expect("preset symbol uses each letter once");
        let inv = symbol.invariants();
        if inv.genus != genus || inv.boundary_components != boundary {
            return bad(format!(
                "preset self-validation failed: traced ({}, {}) for requested ({genus}, {boundary})",
                inv.genus, inv.boundary_components
            ));
        }
        Ok(symbol)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The fixed linear representative.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Position of `l` in the fixed representative; panics for letters
    /// outside the symbol's alphabet.
    pub fn position(&self, l: Letter) -> usize {
        match self.position.get(l.code()) {
            Some(&p) => p as usize,
            None => panic!("letter {l} outside the rank-{} alphabet", self.rank),
        }
    }

    /// Strict mode additionally sends cyclically non-reduced tuples to 0;
    /// see [`SurfaceSymbol::orientation`].
    pub fn with_strict_orientation(mut self, strict: bool) -> SurfaceSymbol {
        self.strict_orientation = strict;
        self
    }

    pub fn strict_orientation(&self) -> bool {
        self.strict_orientation
    }

    /// Cyclic orientation of a tuple of at least three letters: `+1` when
    /// the distinct letters occur around the symbol in this cyclic order,
    /// `-1` when in the reversed order, `0` otherwise (any repeated
    /// letter, or any other cyclic arrangement).
    ///
    /// In strict mode the tuple must also be cyclically reduced (no letter
    /// cyclically adjacent to its own inverse), else the value is 0.
    ///
    /// Panics if the tuple is shorter than three letters or mentions a
    /// letter outside the symbol's alphabet.
    pub fn orientation(&self, letters: &[Letter]) -> i8 {
        let k = letters.len();
        assert!(k >= 3, "orientation takes at least three letters");
        if self.strict_orientation {
            let reduced = (0..k).all(|i| letters[(i + 1) % k] != letters[i].inverse());
            if !reduced {
                return 0;
            }
        }
        let mut small = [0usize; 8];
        let mut large;
        let pos: &mut [usize] = if k <= 8 {
            &mut small[..k]
        } else {
            large = vec![0usize; k];
            &mut large
        };
        for (i, &l) in letters.iter().enumerate() {
            pos[i] = self.position(l);
        }
        // Repeated letters: no injective map into the symbol exists.
        for i in 0..k {
            for j in i + 1..k {
                if pos[i] == pos[j] {
                    return 0;
                }
            }
        }
        let descents = (0..k).filter(|&i| pos[i] > pos[(i + 1) % k]).count();
        if descents == 1 {
            1
        } else if descents == k - 1 {
            -1
        } else {
            0
        }
    }

    /// Genus, boundary components, and Euler characteristic, by walking
    /// the boundary of the glued `4n`-gon.
    ///
    /// Polygon edge `2i` carries letter `i` of the symbol; odd edges are
    /// unlabeled boundary arcs. Labeled edges glue in inverse pairs, so
    /// the successor of an unlabeled edge `e` is `partner(e + 1) + 1`:
    /// step onto the following labeled edge, jump through the gluing, and
    /// land on the next unlabeled edge. Boundary components are the cycles
    /// of that permutation; the Euler characteristic of a one-vertex,
    /// `n`-edge, one-face complex is `1 - n`.
    pub fn invariants(&self) -> SurfaceInvariants {
        let n = self.rank;
        let sides = 4 * n;
        // partner(2i) = 2 * position(inverse of letter at i).
        let partner = |edge: usize| -> usize {
            debug_assert!(edge.is_multiple_of(2));
            2 * self.position(self.letters[edge / 2].inverse())
        };
        let mut seen = vec![false; sides];
        let mut components = 0usize;
        for start in (1..sides).step_by(2) {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                e = (partner((e + 1) % sides) + 1) % sides;
            }
        }
        let euler = 1 - n as i64;
        let two_genus = (n + 1)
            .checked_sub(components)
            .expect("boundary count never exceeds rank + 1");
        assert!(two_genus.is_multiple_of(2), "orientable gluing parity");
        SurfaceInvariants {
            euler_characteristic: euler,
            boundary_components: components,
            genus: two_genus / 2,
        }
    }
}

impl fmt::Display for SurfaceSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}
