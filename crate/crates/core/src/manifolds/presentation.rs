//! Finite presentations of the fundamental groups.
//!
//! Relations `L = R` are stored as relators `L · R⁻¹`, freely reduced.
//! Commutators are `[x, y] = x y x⁻¹ y⁻¹`.

use std::fmt;

use super::{Case, GluingMatrix, ManifoldError, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    /// Name of the relation, e.g. `(3)` or `(II:x1)`.
    pub label: String,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    /// `None` for presentations not built from a gluing matrix.
    pub case: Option<Case>,
    pub genus: usize,
    pub genus2: Option<usize>,
    pub gluing: Option<GluingMatrix>,
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
}

fn product_of_commutators(xs: &[String], ys: &[String]) -> Word {
    xs.iter()
        .zip(ys)
        .fold(Word::empty(), |acc, (x, y)| acc.concat(&Word::commutator(&Word::generator(x), &Word::generator(y))))
}

fn relation(label: &str, lhs: Word, rhs: Word) -> Relator {
    Relator { label: label.to_string(), word: lhs.concat(&rhs.inverse()) }
}

fn commutes(label: &str, x: &str, y: &str) -> Relator {
    Relator { label: label.to_string(), word: Word::commutator(&Word::generator(x), &Word::generator(y)) }
}

fn surface_generators(prefix_x: &str, prefix_y: &str, g: usize) -> (Vec<String>, Vec<String>) {
    ((1..=g).map(|i| format!("{prefix_x}{i}")).collect(), (1..=g).map(|i| format!("{prefix_y}{i}")).collect())
}

/// Loop (genus `g ≥ 0`): generators `x1, y1, …, z, zp, f, t` and relators
/// `(1) z zp = ∏[xi, yi]`, `(2) [xi, f] = [yi, f] = [z, f] = 1`,
/// `(3) t f t⁻¹ = f^a z^b`, `(4) t zp t⁻¹ = f^c z^d`.
///
/// Edge (`g, g' ≥ 1`): generators `x1, y1, …, z, f, xp1, yp1, …, zp, fp` and
/// relators `(I) z = ∏[xi, yi]`, `(II) [xi, f] = [yi, f] = 1`,
/// `(III) zp = ∏[xpi, ypi]`, `(IV) [xpi, fp] = [ypi, fp] = 1`,
/// `(V) fp = f^a z^b`, `(VI) zp = f^c z^d`.
pub fn build_presentation(
    case: Case,
    genus: usize,
    genus2: Option<usize>,
    b: &GluingMatrix,
) -> Result<Presentation, ManifoldError> {
    if b.case != case {
        return Err(ManifoldError::CaseMismatch);
    }
    let fz = |p: i64, q: i64| Word::power("f", p).concat(&Word::power("z", q));
    let (xs, ys) = surface_generators("x", "y", genus);
    let mut generators: Vec<String> = xs.iter().zip(&ys).flat_map(|(x, y)| [x.clone(), y.clone()]).collect();
    let mut relators = Vec::new();
    match case {
        Case::Loop => {
            if genus2.is_some() {
                return Err(ManifoldError::InvalidGenus("loop presentations take a single genus".into()));
            }
            generators.extend(["z", "zp", "f", "t"].map(String::from));
            relators.push(relation(
                "(1)",
                Word::generator("z").concat(&Word::generator("zp")),
                product_of_commutators(&xs, &ys),
            ));
            for (x, y) in xs.iter().zip(&ys) {
                relators.push(commutes(&format!("(2:{x})"), x, "f"));
                relators.push(commutes(&format!("(2:{y})"), y, "f"));
            }
            relators.push(commutes("(2:z)", "z", "f"));
            let t = Word::generator("t");
            let conj = |s: &str| t.concat(&Word::generator(s)).concat(&t.inverse());
            relators.push(relation("(3)", conj("f"), fz(b.a, b.b)));
            relators.push(relation("(4)", conj("zp"), fz(b.c, b.d)));
        }
        Case::Edge => {
            let g2 = genus2.ok_or_else(|| ManifoldError::InvalidGenus("edge presentations need a second genus".into()))?;
            if genus < 1 || g2 < 1 {
                return Err(ManifoldError::InvalidGenus("edge presentations need g >= 1 and g' >= 1".into()));
            }
            let (xps, yps) = surface_generators("xp", "yp", g2);
            generators.extend(["z", "f"].map(String::from));
            generators.extend(xps.iter().zip(&yps).flat_map(|(x, y)| [x.clone(), y.clone()]));
            generators.extend(["zp", "fp"].map(String::from));
            relators.push(relation("(I)", Word::generator("z"), product_of_commutators(&xs, &ys)));
            for (x, y) in xs.iter().zip(&ys) {
                relators.push(commutes(&format!("(II:{x})"), x, "f"));
                relators.push(commutes(&format!("(II:{y})"), y, "f"));
            }
            relators.push(relation("(III)", Word::generator("zp"), product_of_commutators(&xps, &yps)));
            for (x, y) in xps.iter().zip(&yps) {
                relators.push(commutes(&format!("(IV:{x})"), x, "fp"));
                relators.push(commutes(&format!("(IV:{y})"), y, "fp"));
            }
            relators.push(relation("(V)", Word::generator("fp"), fz(b.a, b.b)));
            relators.push(relation("(VI)", Word::generator("zp"), fz(b.c, b.d)));
        }
    }
    Ok(Presentation { case: Some(case), genus, genus2, gluing: Some(*b), generators, relators })
}

/// The integral Heisenberg group `⟨x, y, z | z = [x, y], [x, z] = [y, z] = 1⟩`.
pub fn heisenberg_presentation() -> Presentation {
    Presentation {
        case: None,
        genus: 0,
        genus2: None,
        gluing: None,
        generators: ["x", "y", "z"].map(String::from).to_vec(),
        relators: vec![
            relation("(H1)", Word::generator("z"), Word::commutator(&Word::generator("x"), &Word::generator("y"))),
            commutes("(H2)", "x", "z"),
            commutes("(H3)", "y", "z"),
        ],
    }
}

impl Presentation {
    pub fn has_generator(&self, symbol: &str) -> bool {
        self.generators.iter().any(|g| g == symbol)
    }

    /// Errors on the first symbol of `w` that is not a generator.
    pub fn check_word(&self, w: &Word) -> Result<(), ManifoldError> {
        match w.symbols().find(|s| !self.has_generator(s)) {
            Some(s) => Err(ManifoldError::UnknownGenerator(s.to_string())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators: {}", self.generators.join(", "))?;
        for r in &self.relators {
            writeln!(f, "{} {}", r.label, r.word)?;
        }
        Ok(())
    }
}
