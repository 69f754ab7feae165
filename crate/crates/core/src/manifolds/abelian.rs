//! First homology `H₁ = ℤ^{generators} / ⟨abelianized relators⟩` via Smith normal form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ManifoldError, Presentation, Word};
use crate::linalg::{smith_normal_form, IntMatrix};

/// `H₁ ≅ ℤ/t_1 ⊕ … ⊕ ℤ/t_j ⊕ ℤ^free_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizedGroup {
    pub free_rank: usize,
    pub torsion_divisors: Vec<BigInt>,
    /// Image of each generator: torsion coordinates (reduced) then free coordinates.
    pub projection: BTreeMap<String, Vec<BigInt>>,
    generators: Vec<String>,
    /// Columns of `V` for the torsion and free coordinates, in output order.
    coordinate_columns: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianImage {
    pub group: AbelianizedGroup,
    pub image: Vec<BigInt>,
    /// All free coordinates vanish.
    pub is_torsion: bool,
    pub is_zero: bool,
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relator_matrix(p: &Presentation) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = p
        .relators
        .iter()
        .map(|r| p.generators.iter().map(|g| BigInt::from(r.word.exponent_sum(g))).collect())
        .collect();
    IntMatrix::new(rows.len(), p.generators.len(), rows.into_iter().flatten().collect(), BigInt::zero())
        .expect("rectangular")
}

impl AbelianizedGroup {
    pub fn of(p: &Presentation) -> Self {
        let n = p.generators.len();
        let snf = smith_normal_form(&relator_matrix(p));
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let mut torsion_cols = Vec::new();
        let mut free_cols = Vec::new();
        for i in 0..n {
            let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            let col = snf.v.column(i);
            if d.is_zero() {
                free_cols.push(col);
            } else if d > BigInt::one() {
                torsion.push(d);
                torsion_cols.push(col);
            }
        }
        let free_rank = free_cols.len();
        torsion_cols.extend(free_cols);
        let mut group = AbelianizedGroup {
            free_rank,
            torsion_divisors: torsion,
            projection: BTreeMap::new(),
            generators: p.generators.clone(),
            coordinate_columns: torsion_cols,
        };
        for g in &p.generators {
            let img = group.coordinates(&Word::generator(g));
            group.projection.insert(g.clone(), img);
        }
        group
    }

    /// Coordinates of `w` (which must use only known generators).
    fn coordinates(&self, w: &Word) -> Vec<BigInt> {
        let v: Vec<BigInt> = self.generators.iter().map(|g| BigInt::from(w.exponent_sum(g))).collect();
        self.coordinate_columns
            .iter()
            .enumerate()
            .map(|(k, col)| {
                let x: BigInt = v.iter().zip(col).map(|(a, b)| a * b).sum();
                match self.torsion_divisors.get(k) {
                    Some(d) => x.mod_floor(d),
                    None => x,
                }
            })
            .collect()
    }
}

/// Image of `w` in `H₁` of `p`.
pub fn abelianization_image(p: &Presentation, w: &Word) -> Result<AbelianImage, ManifoldError> {
    p.check_word(w)?;
    let group = AbelianizedGroup::of(p);
    let image = group.coordinates(w);
    let t = group.torsion_divisors.len();
    let is_torsion = image[t..].iter().all(Zero::is_zero);
    let is_zero = image.iter().all(Zero::is_zero);
    Ok(AbelianImage { group, image, is_torsion, is_zero })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::{build_presentation, heisenberg_presentation, Case, GluingMatrix};

    #[test]
    fn loop_example() {
        let b = GluingMatrix::new(Case::Loop, 3, 1, 4, 1).unwrap();
        let p = build_presentation(Case::Loop, 1, None, &b).unwrap();
        let r = abelianization_image(&p, &Word::parse("f^2*z").unwrap()).unwrap();
        assert_eq!(r.group.free_rank, 4);
        assert!(r.group.torsion_divisors.is_empty());
        assert!(r.is_zero && r.is_torsion);
        let t = abelianization_image(&p, &Word::generator("t")).unwrap();
        assert!(!t.is_torsion);
    }

    #[test]
    fn edge_example() {
        let b = GluingMatrix::new(Case::Edge, 1, 1, 1, 0).unwrap();
        let p = build_presentation(Case::Edge, 1, Some(1), &b).unwrap();
        let r = abelianization_image(&p, &Word::generator("f")).unwrap();
        assert_eq!(r.group.free_rank, 4);
        assert!(r.is_zero);
        assert!(abelianization_image(&p, &Word::empty()).unwrap().is_zero);
        assert!(matches!(
            abelianization_image(&p, &Word::generator("q")),
            Err(ManifoldError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn torsion_detected() {
        // loop with a = 3, d = -1 gives relation matrix with torsion in the (f, z) part
        let b = GluingMatrix::new(Case::Loop, 3, 2, 1, 1).unwrap();
        let p = build_presentation(Case::Loop, 0, None, &b).unwrap();
        let g = AbelianizedGroup::of(&p);
        let r = abelianization_image(&p, &Word::parse("f^2*z^2").unwrap()).unwrap();
        assert!(r.is_torsion, "{g:?}");
        let h = abelianization_image(&heisenberg_presentation(), &Word::generator("z")).unwrap();
        assert!(h.is_zero);
        assert_eq!(h.group.free_rank, 2);
    }
}
