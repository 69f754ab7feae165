use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ManifoldError, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    /// One block glued to itself.
    Loop,
    /// Two blocks glued along one torus.
    Edge,
}

impl Case {
    pub fn parse(s: &str) -> Result<Case, ManifoldError> {
        match s {
            "loop" => Ok(Case::Loop),
            "edge" => Ok(Case::Edge),
            other => Err(ManifoldError::UnknownCase(other.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Case::Loop => "loop",
            Case::Edge => "edge",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `B = [[a, b], [c, d]]` with `|det B| = 1` and `b ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GluingMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub case: Case,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Invert,
    NegateRow1,
    NegateRow2,
    NegateColumn1,
    NegateColumn2,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Move::Invert => "invert",
            Move::NegateRow1 => "negate-row-1",
            Move::NegateRow2 => "negate-row-2",
            Move::NegateColumn1 => "negate-column-1",
            Move::NegateColumn2 => "negate-column-2",
        })
    }
}

const SIGN_MOVES: [Move; 4] = [Move::NegateRow1, Move::NegateRow2, Move::NegateColumn1, Move::NegateColumn2];

impl GluingMatrix {
    pub fn new(case: Case, a: i64, b: i64, c: i64, d: i64) -> Result<Self, ManifoldError> {
        let det = a
            .checked_mul(d)
            .zip(b.checked_mul(c))
            .and_then(|(x, y)| x.checked_sub(y))
            .ok_or_else(|| ManifoldError::InvalidGluing("entries too large".into()))?;
        if det.abs() != 1 {
            return Err(ManifoldError::InvalidGluing(format!("det = {det}, expected +1 or -1")));
        }
        if b == 0 {
            return Err(ManifoldError::InvalidGluing("b = 0".into()));
        }
        Ok(GluingMatrix { a, b, c, d, case })
    }

    /// Parses `a,b,c,d` (row-major).
    pub fn parse(case: Case, text: &str) -> Result<Self, ManifoldError> {
        let entries: Vec<i64> = text
            .split(',')
            .map(|s| s.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ManifoldError::InvalidGluing(format!("malformed matrix {text:?}")))?;
        match entries[..] {
            [a, b, c, d] => GluingMatrix::new(case, a, b, c, d),
            _ => Err(ManifoldError::InvalidGluing(format!("expected 4 entries, got {}", entries.len()))),
        }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        GluingMatrix { a: det * self.d, b: -det * self.b, c: -det * self.c, d: det * self.a, case: self.case }
    }

    pub fn apply(&self, mv: Move) -> Self {
        let GluingMatrix { a, b, c, d, case } = *self;
        match mv {
            Move::Invert => self.inverse(),
            Move::NegateRow1 => GluingMatrix { a: -a, b: -b, c, d, case },
            Move::NegateRow2 => GluingMatrix { a, b, c: -c, d: -d, case },
            Move::NegateColumn1 => GluingMatrix { a: -a, b, c: -c, d, case },
            Move::NegateColumn2 => GluingMatrix { a, b: -b, c, d: -d, case },
        }
    }

    pub fn replay(&self, moves: &[Move]) -> Self {
        moves.iter().fold(*self, |m, &mv| m.apply(mv))
    }

    /// Whether the entries satisfy the edge normal form `a ≥ 1`, `b ≥ 1`, `c, d ≥ 0`.
    pub fn is_edge_normalized(&self) -> bool {
        self.a >= 1 && self.b >= 1 && self.c >= 0 && self.d >= 0
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Output of [`normalize_gluing`]; `moves` replays `input` to `matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub input: GluingMatrix,
    pub matrix: GluingMatrix,
    pub moves: Vec<Move>,
    /// Loop case: whether `a − d ≥ 2` holds for `matrix`. Always `true` for edges.
    pub difference_at_least_two: bool,
}

/// Edge: invert when `a = 0`, then apply the smallest set of row/column
/// negations (in the order row 1, row 2, column 1, column 2) making every
/// entry nonnegative. Loop: invert only if that achieves `a − d ≥ 2`.
pub fn normalize_gluing(b: &GluingMatrix) -> Result<Normalized, ManifoldError> {
    match b.case {
        Case::Edge => {
            if b.a == 0 && b.d == 0 {
                return Err(ManifoldError::NpcNoNormalForm);
            }
            let mut moves = Vec::new();
            let mut m = *b;
            if m.a == 0 {
                moves.push(Move::Invert);
                m = m.inverse();
            }
            let signs = (0..16u32)
                .filter_map(|mask| {
                    let chosen: Vec<Move> =
                        SIGN_MOVES.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &mv)| mv).collect();
                    let out = m.replay(&chosen);
                    out.is_edge_normalized().then_some(chosen)
                })
                .min_by_key(|chosen| (chosen.len(), chosen.iter().map(|mv| SIGN_MOVES.iter().position(|x| x == mv)).collect::<Vec<_>>()))
                .expect("a sign normalization exists whenever a != 0 and |det| = 1");
            m = m.replay(&signs);
            moves.extend(signs);
            Ok(Normalized { input: *b, matrix: m, moves, difference_at_least_two: true })
        }
        Case::Loop => {
            let (matrix, moves) = if b.a - b.d >= 2 {
                (*b, vec![])
            } else if b.inverse().a - b.inverse().d >= 2 {
                (b.inverse(), vec![Move::Invert])
            } else {
                (*b, vec![])
            };
            Ok(Normalized { input: *b, matrix, moves, difference_at_least_two: matrix.a - matrix.d >= 2 })
        }
    }
}

/// Edge: nonpositively curved iff `a = d = 0`. Loop: iff `|a − d| ≥ 2`.
pub fn npc_check(b: &GluingMatrix) -> bool {
    match b.case {
        Case::Edge => b.a == 0 && b.d == 0,
        Case::Loop => (b.a - b.d).abs() >= 2,
    }
}

/// The group elements proven virtually unipotent for `b`.
///
/// Loop (requires `det = −1`, `b ≠ 0`, `a − d ≥ 2`): `f^{a−1} z^b`.
/// Edge (requires `a ≥ 1`, `b ≥ 1`, `c, d ≥ 0`): `z` if `c = 0`, `f` if
/// `c > 0 = d`, both `f` and `z` if `c, d > 0`.
pub fn certificate_words(b: &GluingMatrix) -> Result<Vec<Word>, ManifoldError> {
    let refuse = |what: &str| Err(ManifoldError::HypothesisViolated(what.to_string()));
    match b.case {
        Case::Loop => {
            if b.det() != -1 {
                return refuse("det B = -1");
            }
            if b.a - b.d < 2 {
                return refuse("a - d >= 2");
            }
            Ok(vec![Word::power("f", b.a - 1).concat(&Word::power("z", b.b))])
        }
        Case::Edge => {
            if b.a < 1 {
                return refuse("a >= 1");
            }
            if b.b < 1 {
                return refuse("b >= 1");
            }
            if b.c < 0 {
                return refuse("c >= 0");
            }
            if b.d < 0 {
                return refuse("d >= 0");
            }
            Ok(match (b.c, b.d) {
                (0, _) => vec![Word::generator("z")],
                (_, 0) => vec![Word::generator("f")],
                _ => vec![Word::generator("f"), Word::generator("z")],
            })
        }
    }
}
