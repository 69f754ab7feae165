use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::RepError;
use crate::arith::{format_rational, parse_rational, CycloField, CycloNumber};
use crate::linalg::FieldMatrix;
use crate::manifolds::{build_presentation, is_symbol, Case, GluingMatrix, Presentation, Word};

/// `ρ: Γ → GL(n, Q(ζ_m))` given by generator images.
#[derive(Clone, Debug)]
pub struct Representation {
    pub field: Arc<CycloField>,
    pub dimension: usize,
    pub case: Option<Case>,
    pub genus: Option<usize>,
    pub genus2: Option<usize>,
    pub gluing: Option<GluingMatrix>,
    images: BTreeMap<String, FieldMatrix>,
    inverses: BTreeMap<String, FieldMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpec {
    conductor: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    field: FieldSpec,
    dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    case: Option<Case>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    genus2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gluing: Option<[i64; 4]>,
    generators: BTreeMap<String, Vec<Vec<Vec<String>>>>,
}

impl Representation {
    /// Validates shapes, field membership and invertibility of every image.
    pub fn new(
        field: &Arc<CycloField>,
        dimension: usize,
        images: BTreeMap<String, FieldMatrix>,
    ) -> Result<Self, RepError> {
        if dimension == 0 {
            return Err(RepError::Format("dimension must be positive".to_string()));
        }
        let mut inverses = BTreeMap::new();
        for (sym, m) in &images {
            if !is_symbol(sym) {
                return Err(RepError::Format(format!("invalid generator symbol {sym:?}")));
            }
            if m.rows() != dimension || m.cols() != dimension {
                return Err(RepError::Format(format!(
                    "image of {sym} is {}x{}, expected {dimension}x{dimension}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.entries().iter().any(|e| e.conductor() != field.conductor()) || m.zero_elem().conductor() != field.conductor() {
                return Err(RepError::Format(format!("image of {sym} has entries outside Q(zeta_{})", field.conductor())));
            }
            let inv = m.inverse().map_err(|_| RepError::Singular(sym.clone()))?;
            inverses.insert(sym.clone(), inv);
        }
        Ok(Representation {
            field: field.clone(),
            dimension,
            case: None,
            genus: None,
            genus2: None,
            gluing: None,
            images,
            inverses,
        })
    }

    /// Attaches presentation data. Every generator symbol must belong to the
    /// presentation; missing ones are reported by [`verify_relations`].
    pub fn with_presentation(
        mut self,
        case: Case,
        genus: usize,
        genus2: Option<usize>,
        gluing: GluingMatrix,
    ) -> Result<Self, RepError> {
        let p = build_presentation(case, genus, genus2, &gluing)?;
        if let Some(sym) = self.images.keys().find(|s| !p.has_generator(s)) {
            return Err(RepError::UnknownGenerator(sym.clone()));
        }
        self.case = Some(case);
        self.genus = Some(genus);
        self.genus2 = genus2;
        self.gluing = Some(gluing);
        Ok(self)
    }

    pub fn images(&self) -> &BTreeMap<String, FieldMatrix> {
        &self.images
    }

    pub fn image(&self, symbol: &str) -> Result<&FieldMatrix, RepError> {
        self.images.get(symbol).ok_or_else(|| RepError::UnknownGenerator(symbol.to_string()))
    }

    pub fn identity(&self) -> FieldMatrix {
        FieldMatrix::identity(self.dimension, CycloNumber::zero(&self.field))
    }

    pub fn presentation(&self) -> Result<Presentation, RepError> {
        match (self.case, self.genus, self.gluing) {
            (Some(case), Some(genus), Some(b)) => Ok(build_presentation(case, genus, self.genus2, &b)?),
            _ => Err(RepError::NoPresentation),
        }
    }

    pub fn evaluate(&self, w: &Word) -> Result<FieldMatrix, RepError> {
        let mut acc = self.identity();
        for (sym, e) in w.letters() {
            let base = if *e > 0 { self.images.get(sym) } else { self.inverses.get(sym) }
                .ok_or_else(|| RepError::UnknownGenerator(sym.clone()))?;
            let e = u32::try_from(e.unsigned_abs()).map_err(|_| RepError::Format(format!("exponent of {sym} too large")))?;
            acc = acc.mul(&base.pow(e)?)?;
        }
        Ok(acc)
    }

    /// Every image replaced by `C·ρ(g)·C⁻¹`.
    pub fn conjugated(&self, c: &FieldMatrix) -> Result<Self, RepError> {
        let images = self.images.iter().map(|(s, m)| Ok((s.clone(), m.conjugate_by(c)?))).collect::<Result<_, RepError>>()?;
        let mut out = Representation::new(&self.field, self.dimension, images)?;
        out.case = self.case;
        out.genus = self.genus;
        out.genus2 = self.genus2;
        out.gluing = self.gluing;
        Ok(out)
    }

    /// Block-diagonal sum over the same generators and field.
    pub fn direct_sum(&self, other: &Representation) -> Result<Self, RepError> {
        if self.field.conductor() != other.field.conductor() {
            return Err(RepError::Format("direct summands live over different fields".to_string()));
        }
        if self.images.keys().ne(other.images.keys()) {
            return Err(RepError::GeneratorMismatch("direct summands have different generators".to_string()));
        }
        let zero = CycloNumber::zero(&self.field);
        let images = self
            .images
            .iter()
            .map(|(s, m)| (s.clone(), FieldMatrix::block_diagonal(&[m.clone(), other.images[s].clone()], zero.clone())))
            .collect();
        let mut out = Representation::new(&self.field, self.dimension + other.dimension, images)?;
        out.case = self.case;
        out.genus = self.genus;
        out.genus2 = self.genus2;
        out.gluing = self.gluing;
        Ok(out)
    }

    pub fn from_json_str(text: &str) -> Result<Self, RepError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| RepError::Format(e.to_string()))?;
        let field = CycloField::new(doc.field.conductor)?;
        let mut images = BTreeMap::new();
        for (sym, rows) in doc.generators {
            if rows.len() != doc.dimension {
                return Err(RepError::Format(format!("image of {sym} has {} rows, expected {}", rows.len(), doc.dimension)));
            }
            let parsed = rows
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|entry| {
                            let coeffs = entry.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
                            CycloNumber::from_coeffs(&field, coeffs)
                        })
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if parsed.iter().any(|r| r.len() != doc.dimension) {
                return Err(RepError::Format(format!("image of {sym} is not {0}x{0}", doc.dimension)));
            }
            images.insert(sym, FieldMatrix::from_rows(parsed, CycloNumber::zero(&field))?);
        }
        let rep = Representation::new(&field, doc.dimension, images)?;
        match (doc.case, doc.genus, doc.gluing) {
            (None, None, None) if doc.genus2.is_none() => Ok(rep),
            (Some(case), Some(genus), Some([a, b, c, d])) => {
                let gluing = GluingMatrix::new(case, a, b, c, d)?;
                rep.with_presentation(case, genus, doc.genus2, gluing)
            }
            _ => Err(RepError::Format("case, genus and gluing must be given together".to_string())),
        }
    }

    pub fn to_json_string(&self) -> String {
        let generators = self
            .images
            .iter()
            .map(|(s, m)| {
                let rows = m
                    .to_rows()
                    .iter()
                    .map(|row| row.iter().map(|e| e.coeffs().iter().map(format_rational).collect()).collect())
                    .collect();
                (s.clone(), rows)
            })
            .collect();
        let doc = Document {
            field: FieldSpec { conductor: self.field.conductor() },
            dimension: self.dimension,
            case: self.case,
            genus: self.genus,
            genus2: self.genus2,
            gluing: self.gluing.map(|g| g.entries()),
            generators,
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor() == other.field.conductor()
            && self.dimension == other.dimension
            && self.case == other.case
            && self.genus == other.genus
            && self.genus2 == other.genus2
            && self.gluing == other.gluing
            && self.images == other.images
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorFailure {
    pub label: String,
    pub word: Word,
    /// The relator's image, which should have been the identity.
    pub residue: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checked: usize,
    pub failures: Vec<RelatorFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates every relator of `p` under `ρ`.
pub fn verify_relations(rho: &Representation, p: &Presentation) -> Result<RelationReport, RepError> {
    let ours: BTreeSet<&str> = rho.images.keys().map(String::as_str).collect();
    let theirs: BTreeSet<&str> = p.generators.iter().map(String::as_str).collect();
    if ours != theirs {
        let missing = theirs.difference(&ours).join(", ");
        let extra = ours.difference(&theirs).join(", ");
        return Err(RepError::GeneratorMismatch(format!("missing [{missing}], unexpected [{extra}]")));
    }
    let mut failures = Vec::new();
    for rel in &p.relators {
        let value = rho.evaluate(&rel.word)?;
        if !value.is_identity() {
            failures.push(RelatorFailure { label: rel.label.clone(), word: rel.word.clone(), residue: value.to_string() });
        }
    }
    Ok(RelationReport { checked: p.relators.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::fixtures;

    #[test]
    fn trivial_representation_round_trips() {
        let text = r#"{"field":{"conductor":1},"dimension":1,"generators":{"x":[[["1"]]]}}"#;
        let rho = Representation::from_json_str(text).unwrap();
        let out = rho.to_json_string();
        let again = Representation::from_json_str(&out).unwrap();
        assert_eq!(rho, again);
        assert_eq!(out, again.to_json_string());
    }

    #[test]
    fn document_errors() {
        let long = r#"{"field":{"conductor":4},"dimension":1,"generators":{"x":[[["1","0","0"]]]}}"#;
        assert!(matches!(
            Representation::from_json_str(long),
            Err(RepError::Arith(crate::arith::ArithError::CoefficientLength { expected: 2, found: 3 }))
        ));
        let singular = r#"{"field":{"conductor":1},"dimension":1,"generators":{"x":[[["0"]]]}}"#;
        assert!(matches!(Representation::from_json_str(singular), Err(RepError::Singular(s)) if s == "x"));
        let bad = r#"{"field":{"conductor":1},"dimension":1,"generators":{"x":[[["1/0"]]]}}"#;
        assert!(matches!(Representation::from_json_str(bad), Err(RepError::Arith(_))));
        let unknown = r#"{"field":{"conductor":1},"dimension":1,"case":"loop","genus":0,"gluing":[3,1,4,1],
            "generators":{"q":[[["1"]]]}}"#;
        assert!(matches!(Representation::from_json_str(unknown), Err(RepError::UnknownGenerator(s)) if s == "q"));
    }

    #[test]
    fn loop_character_relations() {
        let good = fixtures::loop_character(1);
        let p = good.presentation().unwrap();
        assert!(verify_relations(&good, &p).unwrap().passed());
        let bad = fixtures::loop_character(2);
        let report = verify_relations(&bad, &p).unwrap();
        assert!(report.failures.iter().any(|f| f.label == "(3)" && f.residue == "[1/4]"));
    }

    #[test]
    fn generator_mismatch() {
        let rho = fixtures::heisenberg_standard();
        let b = GluingMatrix::new(Case::Loop, 3, 1, 4, 1).unwrap();
        let p = build_presentation(Case::Loop, 0, None, &b).unwrap();
        assert!(matches!(verify_relations(&rho, &p), Err(RepError::GeneratorMismatch(_))));
    }
}
