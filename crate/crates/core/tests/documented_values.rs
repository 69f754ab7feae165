//! Worked values for each module, with derived values recomputed here by
//! independent means (long division, kernel by hand-rolled elimination,
//! direct evaluation).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use vucert::arith::{
    cyclotomic_poly, galois_norm, is_cyclotomic_product, kronecker_oracle, CycloField, CycloNumber, CycloPolynomial,
    IntPolynomial, Ring,
};
use vucert::engine::{
    build_system, check_forcing, discriminant_audit, forced_forms, BlockPattern, LinearForm, Outcome, Var,
};
use vucert::linalg::{
    char_poly, forces_zero, generalized_eigenspace, simultaneous_block_triangularize, smith_normal_form, FieldMatrix,
    IntMatrix, RatMatrix,
};
use vucert::manifolds::{
    abelianization_image, build_presentation, certificate_words, normalize_gluing, npc_check, Case, GluingMatrix, Move,
    Word,
};
use vucert::rep::{analyze_word, extract_block_data, fixtures, is_vu_matrix, verify_relations};

fn gluing(case: Case, e: [i64; 4]) -> GluingMatrix {
    GluingMatrix::new(case, e[0], e[1], e[2], e[3]).unwrap()
}

fn int_coeffs(p: &IntPolynomial) -> Vec<i64> {
    p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

/// Exact division by a monic polynomial; panics on a nonzero remainder.
fn div_exact(p: &[i64], q: &[i64]) -> Vec<i64> {
    let mut rem = p.to_vec();
    let mut quot = vec![0; p.len() - q.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + q.len() - 1];
        quot[i] = c;
        for (j, &x) in q.iter().enumerate() {
            rem[i + j] -= c * x;
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "not divisible");
    quot
}

#[test]
fn twelfth_cyclotomic_by_long_division() {
    let mut x12_minus_1 = vec![0i64; 13];
    x12_minus_1[0] = -1;
    x12_minus_1[12] = 1;
    let divisors = [vec![-1, 1], vec![1, 1], vec![1, 1, 1], vec![1, 0, 1], vec![1, -1, 1]];
    let expected = divisors.iter().fold(x12_minus_1, |p, d| div_exact(&p, d));
    assert_eq!(expected, vec![1, 0, -1, 0, 1]);
    assert_eq!(int_coeffs(&cyclotomic_poly(12)), expected);
}

#[test]
fn peeling_and_kronecker_examples() {
    let golden = IntPolynomial::from_i64s(&[-1, -1, 1]);
    assert_eq!(is_cyclotomic_product(&golden).unwrap(), None);
    assert!(!kronecker_oracle(&golden).unwrap());
    let phi5 = IntPolynomial::from_i64s(&[1, 1, 1, 1, 1]);
    assert_eq!(is_cyclotomic_product(&phi5).unwrap(), Some(vec![5]));
    // (x^5 - 1) / (x - 1)
    assert_eq!(div_exact(&[-1, 0, 0, 0, 0, 1], &[-1, 1]), vec![1, 1, 1, 1, 1]);
}

#[test]
fn norm_of_linear_factor_over_gaussian_field() {
    let field = CycloField::new(4).unwrap();
    let i = CycloNumber::zeta(&field);
    let p = CycloPolynomial::new(vec![i.neg_ref(), CycloNumber::one(&field)], CycloNumber::zero(&field));
    let norm = galois_norm(&p).unwrap();
    // (x - i)(x + i) = x^2 + 1
    let expected: Vec<BigRational> = [1, 0, 1].iter().map(|&c| BigRational::from_integer(c.into())).collect();
    assert_eq!(norm.coeffs(), expected.as_slice());
}

#[test]
fn inverse_of_one_plus_zeta3() {
    let field = CycloField::new(3).unwrap();
    let z = CycloNumber::zeta(&field);
    let one_plus = CycloNumber::one(&field).checked_add(&z).unwrap();
    let inv = one_plus.inverse().unwrap();
    assert_eq!(inv, z.neg_ref());
    assert!(one_plus.checked_mul(&inv).unwrap().is_one());
}

fn rat_matrix(rows: &[&[i64]]) -> RatMatrix {
    let rows = rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    RatMatrix::from_rows(rows, BigRational::zero()).unwrap()
}

#[test]
fn heisenberg_x_char_poly_and_jordan_eigenspace() {
    let x = rat_matrix(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let chi = char_poly(&x).unwrap();
    let cube: Vec<BigRational> = [-1, 3, -3, 1].iter().map(|&c| BigRational::from_integer(c.into())).collect();
    assert_eq!(chi.coeffs(), cube.as_slice());
    let jordan = rat_matrix(&[&[1, 1], &[0, 1]]);
    let shifted = jordan.sub(&RatMatrix::identity(2, BigRational::zero())).unwrap();
    assert!(shifted.mul(&shifted).unwrap().is_zero());
    assert_eq!(generalized_eigenspace(&jordan, &BigRational::one()).unwrap().len(), 2);
}

fn field_diag(field: &std::sync::Arc<CycloField>, d: &[i64]) -> FieldMatrix {
    FieldMatrix::diagonal(&d.iter().map(|&x| CycloNumber::from_int(field, x)).collect::<Vec<_>>(), CycloNumber::zero(field))
}

#[test]
fn triangularization_grid_and_conjugation_invariance() {
    let q = CycloField::rationals();
    let (p, pp, id) = (field_diag(&q, &[1, 1, 2]), field_diag(&q, &[3, 4, 4]), field_diag(&q, &[1, 1, 1]));
    let n = |x| CycloNumber::from_int(&q, x);
    let (eigs, eigs_p) = ([n(1), n(2)], [n(3), n(4)]);
    let tri = simultaneous_block_triangularize(&p, &pp, &id, &eigs, &eigs_p).unwrap();
    assert_eq!(tri.layout.dims, vec![vec![1, 1], vec![0, 1]]);
    let c0 = fixtures::int_matrix(&q, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]);
    let conj = |m: &FieldMatrix| m.conjugate_by(&c0).unwrap();
    let again = simultaneous_block_triangularize(&conj(&p), &conj(&pp), &conj(&id), &eigs, &eigs_p).unwrap();
    assert_eq!(again.layout.dims, tri.layout.dims);
}

fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

#[test]
fn smith_examples() {
    let d = |m: &[&[i64]]| smith_normal_form(&int_matrix(m)).diagonal();
    assert_eq!(d(&[&[2, 0], &[0, 3]]), vec![BigInt::from(1), BigInt::from(6)]);
    assert_eq!(d(&[&[2, 1], &[4, 2]]), vec![BigInt::from(1), BigInt::from(0)]);
}

/// Rational kernel by Gaussian elimination over `BigRational`.
fn kernel(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(rank, p);
        let lead = m[rank][c].clone();
        m[rank].iter_mut().for_each(|x| *x = &*x / &lead);
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[rank].clone();
                m[i].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][free].clone();
            }
            v
        })
        .collect()
}

fn vanishes_on_kernel(form: &[i64], basis: &[Vec<BigRational>]) -> bool {
    basis.iter().all(|v| v.iter().zip(form).map(|(x, &c)| x * BigRational::from_integer(c.into())).sum::<BigRational>().is_zero())
}

#[test]
fn loop_targets_forced_through_auxiliary_columns() {
    let b = gluing(Case::Loop, [3, 1, 4, 1]);
    let n = BlockPattern::parse(Case::Loop, "1,1;1,1").unwrap();
    let system = build_system(&b, &n).unwrap();
    // Two λ and four μ: the pattern has four occupied cells.
    assert_eq!(system.variables.len(), 6);
    assert_eq!(system.rows.len(), 6);
    let nv = system.variables.len();
    let targets: Vec<LinearForm> = n
        .occupied()
        .into_iter()
        .map(|(r, s)| {
            let mut f = LinearForm::zero(nv);
            f.0[system.var_index(Var::Lambda(r))] += 2;
            f.0[system.var_index(Var::Mu(r, s))] += 1;
            f
        })
        .collect();
    let mut rows: Vec<Vec<i64>> = system.small_rows().into_iter().map(|mut r| {
        r.resize(nv + targets.len(), 0);
        r
    }).collect();
    for (j, t) in targets.iter().enumerate() {
        let mut row = t.0.clone();
        row.resize(nv + targets.len(), 0);
        row[nv + j] = -1;
        rows.push(row);
    }
    let aux: Vec<usize> = (nv..nv + targets.len()).collect();
    let m = IntMatrix::from_i64_rows(&rows).unwrap();
    assert!(forces_zero(&m, &aux).unwrap());
    assert!(forced_forms(&system, &targets).unwrap().iter().all(|&f| f));
    let basis = kernel(&system.small_rows(), nv);
    assert!(targets.iter().all(|t| vanishes_on_kernel(&t.0, &basis)));
    // λ1 = λ2 on every solution
    let mut diff = vec![0; nv];
    diff[0] = 1;
    diff[1] = -1;
    assert!(vanishes_on_kernel(&diff, &basis));
}

#[test]
fn gluing_normalization_examples() {
    let norm = normalize_gluing(&gluing(Case::Edge, [-1, 2, 0, 1])).unwrap();
    assert_eq!(norm.matrix.entries(), [1, 2, 0, 1]);
    // negating the first column alone already gives nonnegative entries
    assert_eq!(norm.moves, vec![Move::NegateColumn1]);
    let b = gluing(Case::Edge, [0, 1, 1, 3]);
    let norm = normalize_gluing(&b).unwrap();
    assert_eq!(norm.moves.first(), Some(&Move::Invert));
    let [a, bb, c, d] = norm.matrix.entries();
    assert!(a != 0 && a >= 0 && bb >= 0 && c >= 0 && d >= 0);
    // B⁻¹ = [[-3, 1], [1, 0]] since det B = -1
    let inv = b.inverse();
    assert_eq!(inv.entries(), [-3, 1, 1, 0]);
    assert_eq!(inv.replay(&norm.moves[1..]), norm.matrix);
}

#[test]
fn npc_and_certificate_examples() {
    assert!(npc_check(&gluing(Case::Edge, [0, 1, 1, 0])));
    assert!(!npc_check(&gluing(Case::Edge, [1, 1, 1, 0])));
    assert!(npc_check(&gluing(Case::Loop, [3, 1, 4, 1])));
    let words = |case, e| certificate_words(&gluing(case, e)).unwrap().iter().map(ToString::to_string).collect::<Vec<_>>();
    assert_eq!(words(Case::Loop, [3, 1, 4, 1]), ["f^2*z"]);
    assert_eq!(words(Case::Edge, [1, 3, 0, 1]), ["z"]);
    assert_eq!(words(Case::Edge, [2, 1, 1, 1]), ["f", "z"]);
}

#[test]
fn presentation_shapes() {
    let p = build_presentation(Case::Loop, 1, None, &gluing(Case::Loop, [3, 1, 4, 1])).unwrap();
    assert_eq!(p.generators, ["x1", "y1", "z", "zp", "f", "t"]);
    let labels: Vec<&str> = p.relators.iter().map(|r| r.label.as_str()).collect();
    assert_eq!(labels, ["(1)", "(2:x1)", "(2:y1)", "(2:z)", "(3)", "(4)"]);
    let p = build_presentation(Case::Edge, 1, Some(1), &gluing(Case::Edge, [1, 1, 1, 0])).unwrap();
    assert_eq!(p.generators.len(), 8);
    assert_eq!(p.relators.len(), 8);
    assert_eq!(p.relators.iter().filter(|r| r.label.starts_with("(II") && !r.label.starts_with("(III")).count(), 2);
    assert_eq!(p.relators.iter().filter(|r| r.label.starts_with("(IV")).count(), 2);
}

#[test]
fn homology_examples() {
    let b = gluing(Case::Loop, [3, 1, 4, 1]);
    let p = build_presentation(Case::Loop, 1, None, &b).unwrap();
    let img = abelianization_image(&p, &Word::parse("f^2*z").unwrap()).unwrap();
    assert_eq!((img.group.free_rank, img.group.torsion_divisors.len()), (4, 0));
    assert!(img.is_zero);
    // (2, 1) = 1·(2, 1) + 0·(4, 2): a row of the abelianized gluing block
    let block = int_matrix(&[&[2, 1], &[4, 2]]);
    assert_eq!(smith_normal_form(&block).diagonal(), vec![BigInt::from(1), BigInt::from(0)]);
    let p = build_presentation(Case::Edge, 1, Some(1), &gluing(Case::Edge, [1, 1, 1, 0])).unwrap();
    let img = abelianization_image(&p, &Word::generator("f")).unwrap();
    assert_eq!(img.group.free_rank, 4);
    assert!(img.is_zero);
}

#[test]
fn loop_forcing_examples() {
    let b = gluing(Case::Loop, [3, 1, 4, 1]);
    let v = check_forcing(&b, &BlockPattern::parse(Case::Loop, "1,1;1,1").unwrap()).unwrap();
    assert_eq!(v.outcome, Outcome::ForcedVU);
    assert!(v.oracle_confirmed);
    assert!(v.trace.iter().any(|l| l == "balance 1 with mu eliminated: 2*l1 + 2*l2 = 4*l1"));
    let v = check_forcing(&b, &BlockPattern::parse(Case::Loop, "1,0;0,1").unwrap()).unwrap();
    assert_eq!(v.outcome, Outcome::Decomposable);
    let system = build_system(&b, &BlockPattern::parse(Case::Loop, "1,0;0,1").unwrap()).unwrap();
    let basis = kernel(&system.small_rows(), system.variables.len());
    assert!(basis.iter().any(|v| v[0] != v[1]));
    let w = v.witness.expect("unequal lambda witness");
    assert_ne!(w[0], w[1]);
}

#[test]
fn edge_forcing_examples() {
    let b = gluing(Case::Edge, [1, 1, 1, 0]);
    let n = BlockPattern::parse(Case::Edge, "1,1;1,1").unwrap();
    let v = check_forcing(&b, &n).unwrap();
    assert_eq!(v.outcome, Outcome::ForcedVU);
    assert_eq!(v.targets, ["l1", "l2"]);
    let system = build_system(&b, &n).unwrap();
    assert_eq!(system.variables.len(), 8);
    let basis = kernel(&system.small_rows(), 8);
    for r in 0..2 {
        let mut f = vec![0; 8];
        f[system.var_index(Var::Lambda(r))] = 1;
        assert!(vanishes_on_kernel(&f, &basis));
    }
}

#[test]
fn discriminant_examples() {
    for (e, expected) in [([2, 1, 1, 1], -4), ([1, 2, 1, 1], -7)] {
        let b = gluing(Case::Edge, e);
        let [a, bb, c, d] = e;
        let direct = ((a * d - bb * c) - 3 * bb * c) * a * d;
        assert_eq!(direct, expected);
        let audit = discriminant_audit(&b);
        assert_eq!(audit.value, expected as i128);
        assert!(audit.claim_holds && audit.strictly_negative);
    }
}

#[test]
fn representation_examples() {
    let rho = fixtures::loop_character(1);
    assert!(verify_relations(&rho, &rho.presentation().unwrap()).unwrap().passed());
    let report = analyze_word(&rho, &Word::parse("f^2*z").unwrap()).unwrap();
    assert!(report.verdict);
    assert_eq!(report.witness_order, Some(1));
    assert!(rho.evaluate(&Word::parse("f^2*z").unwrap()).unwrap().is_identity());

    let h = fixtures::heisenberg_standard();
    let z = is_vu_matrix(h.image("z").unwrap()).unwrap();
    assert!(z.verdict);
    assert_eq!(z.cyclotomic_multiset, Some(vec![1, 1, 1]));

    let field = CycloField::new(6).unwrap();
    let m = FieldMatrix::diagonal(
        &[CycloNumber::zeta(&field), CycloNumber::zeta_pow(&field, 5)],
        CycloNumber::zero(&field),
    );
    let r = is_vu_matrix(&m).unwrap();
    assert_eq!((r.cyclotomic_multiset, r.witness_order), (Some(vec![6, 6]), Some(6)));

    let c = fixtures::loop_character_cyclotomic();
    let data = extract_block_data(&c, &c.presentation().unwrap()).unwrap();
    assert_eq!(data.pattern.to_string(), "1");
    assert!(data.residues_ok());
    let sum = fixtures::loop_character_sum();
    let data = extract_block_data(&sum, &sum.presentation().unwrap()).unwrap();
    assert_eq!(data.pattern.k(), 2);
    assert_eq!(data.pattern.to_string(), "1,0;0,1");
}
