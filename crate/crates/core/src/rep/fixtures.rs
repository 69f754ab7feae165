//! Small representations used by tests, the CLI corpus and the examples.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::Representation;
use crate::arith::{CycloField, CycloNumber};
use crate::linalg::FieldMatrix;
use crate::manifolds::{Case, GluingMatrix};

pub fn int_matrix(field: &Arc<CycloField>, rows: &[&[i64]]) -> FieldMatrix {
    let rows = rows.iter().map(|r| r.iter().map(|&x| CycloNumber::from_int(field, x)).collect()).collect();
    FieldMatrix::from_rows(rows, CycloNumber::zero(field)).expect("rectangular")
}

fn scalar(value: &CycloNumber) -> FieldMatrix {
    FieldMatrix::diagonal(std::slice::from_ref(value), CycloNumber::zero(value.field()))
}

fn build(field: &Arc<CycloField>, dim: usize, images: Vec<(&str, FieldMatrix)>) -> Representation {
    let images: BTreeMap<String, FieldMatrix> = images.into_iter().map(|(s, m)| (s.to_string(), m)).collect();
    Representation::new(field, dim, images).expect("valid fixture")
}

/// Upper unitriangular `x`, `y` and `z = [x, y]` over ℚ.
pub fn heisenberg_standard() -> Representation {
    let q = CycloField::rationals();
    let x = int_matrix(&q, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let y = int_matrix(&q, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
    let z = commutator(&x, &y);
    build(&q, 3, vec![("x", x), ("y", y), ("z", z)])
}

fn commutator(x: &FieldMatrix, y: &FieldMatrix) -> FieldMatrix {
    let (xi, yi) = (x.inverse().expect("invertible"), y.inverse().expect("invertible"));
    x.mul(y).and_then(|m| m.mul(&xi)).and_then(|m| m.mul(&yi)).expect("square")
}

/// `g ↦ (ρ(g)⁻¹)ᵀ`.
pub fn heisenberg_dual() -> Representation {
    let std = heisenberg_standard();
    let images = std.images().iter().map(|(s, m)| (s.as_str(), m.inverse().expect("invertible").transpose())).collect();
    build(&std.field, 3, images)
}

/// The standard representation plus the character `x ↦ 2, y ↦ 1, z ↦ 1`.
pub fn heisenberg_with_character() -> Representation {
    let std = heisenberg_standard();
    let q = std.field.clone();
    let character = build(
        &q,
        1,
        vec![("x", int_matrix(&q, &[&[2]])), ("y", int_matrix(&q, &[&[1]])), ("z", int_matrix(&q, &[&[1]]))],
    );
    std.direct_sum(&character).expect("same generators")
}

pub fn heisenberg_fixtures() -> Vec<(&'static str, Representation)> {
    vec![
        ("standard", heisenberg_standard()),
        ("dual", heisenberg_dual()),
        ("standard+character", heisenberg_with_character()),
    ]
}

/// `B = [[3, 1], [4, 1]]`, the loop gluing used throughout the fixtures.
pub fn loop_gluing() -> GluingMatrix {
    GluingMatrix::new(Case::Loop, 3, 1, 4, 1).expect("valid gluing")
}

fn loop_scalars(field: &Arc<CycloField>, f: CycloNumber, z: CycloNumber, t: i64) -> Representation {
    let one = CycloNumber::one(field);
    let zp = z.inverse().expect("nonzero");
    let images = vec![
        ("x1", scalar(&one)),
        ("y1", scalar(&one)),
        ("z", scalar(&z)),
        ("zp", scalar(&zp)),
        ("f", scalar(&f)),
        ("t", scalar(&CycloNumber::from_int(field, t))),
    ];
    build(field, 1, images).with_presentation(Case::Loop, 1, None, loop_gluing()).expect("loop generators")
}

/// Genus-1 loop character over ℚ: `f ↦ f_value`, `t ↦ 2`, everything else
/// `↦ 1`. Satisfies the relations only for `f_value = 1`.
pub fn loop_character(f_value: i64) -> Representation {
    let q = CycloField::rationals();
    loop_scalars(&q, CycloNumber::from_int(&q, f_value), CycloNumber::one(&q), 2)
}

/// Over `Q(ζ_4)`: `f ↦ i`, `z ↦ f^{-2} = −1`, `z' ↦ −1`, `t ↦ 2`.
pub fn loop_character_cyclotomic() -> Representation {
    let field = CycloField::new(4).expect("conductor 4");
    let i = CycloNumber::zeta(&field);
    loop_scalars(&field, i, CycloNumber::from_int(&field, -1), 2)
}

/// Sum of the trivial-`f` character and [`loop_character_cyclotomic`] over `Q(ζ_4)`.
pub fn loop_character_sum() -> Representation {
    let field = CycloField::new(4).expect("conductor 4");
    let first = loop_scalars(&field, CycloNumber::one(&field), CycloNumber::one(&field), 2);
    first.direct_sum(&loop_character_cyclotomic()).expect("same generators")
}

/// Every generator of the genus-1 loop group `↦` the `n × n` identity.
pub fn trivial_loop(n: usize) -> Representation {
    let q = CycloField::rationals();
    let id = FieldMatrix::identity(n, CycloNumber::zero(&q));
    let images = ["x1", "y1", "z", "zp", "f", "t"].into_iter().map(|s| (s, id.clone())).collect();
    build(&q, n, images).with_presentation(Case::Loop, 1, None, loop_gluing()).expect("loop generators")
}

/// Every generator of the genus-(1, 1) edge group with `B = [[1, 1], [1, 0]]` `↦` the identity.
pub fn trivial_edge(n: usize) -> Representation {
    let q = CycloField::rationals();
    let id = FieldMatrix::identity(n, CycloNumber::zero(&q));
    let images = ["x1", "y1", "z", "f", "xp1", "yp1", "zp", "fp"].into_iter().map(|s| (s, id.clone())).collect();
    let b = GluingMatrix::new(Case::Edge, 1, 1, 1, 0).expect("valid gluing");
    build(&q, n, images).with_presentation(Case::Edge, 1, Some(1), b).expect("edge generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifolds::heisenberg_presentation;
    use crate::rep::verify_relations;

    #[test]
    fn fixtures_satisfy_their_relations() {
        let h = heisenberg_presentation();
        for (name, rho) in heisenberg_fixtures() {
            assert!(verify_relations(&rho, &h).unwrap().passed(), "{name}");
        }
        for rho in [loop_character(1), loop_character_cyclotomic(), loop_character_sum(), trivial_loop(2), trivial_edge(2)] {
            assert!(verify_relations(&rho, &rho.presentation().unwrap()).unwrap().passed());
        }
    }
}
