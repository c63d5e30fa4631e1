//! The JSON curve document accepted by `level3 classify`.
//!
//! ```json
//! {
//!   "field": { "kind": "prime", "p": 7 },
//!   "curve": { "a1": "3*3", "a2": "0", "a3": "3^3 - 1", "a4": "0", "a6": "0" },
//!   "P": ["0", "0", "1"],
//!   "Q": ["1", "1", "1"]
//! }
//! ```
//!
//! `kind` is `prime` (needs `p`), `prime_square` (needs `p`; `modulus_poly`
//! optionally gives a monic irreducible quadratic, low degree first) or
//! `Q_omega`. Coefficients are exact literals; the symbol `a` names the
//! adjoined root in `F_{p^2}` and `w` names omega in Q(w).

use level3_core::exact_rings::{CubeRoots, FiniteField, QOmega, Ring};
use level3_core::literal;
use level3_core::pairing_classify::{classify, ClassificationInput, ClassificationOutput};
use level3_core::weierstrass::{ProjPoint, WeierstrassCurve};
use level3_core::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: FieldKind,
    #[serde(default)]
    pub p: Option<u32>,
    #[serde(default)]
    pub modulus_poly: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
pub enum FieldKind {
    #[serde(rename = "prime")]
    Prime,
    #[serde(rename = "prime_square")]
    PrimeSquare,
    #[serde(rename = "Q_omega")]
    QOmega,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub a6: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInputDoc {
    pub field: FieldSpec,
    pub curve: CurveSpec,
    #[serde(rename = "P")]
    pub p: [String; 3],
    #[serde(rename = "Q")]
    pub q: [String; 3],
}

/// [`ClassificationOutput`] with every ring element rendered as a literal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDoc {
    pub field: String,
    pub nu: String,
    pub omega: String,
    pub transform: TransformDoc,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformDoc {
    pub u: String,
    pub r: String,
    pub s: String,
    pub t: String,
}

/// Errors tagged by where they came from, so the caller can pick an exit code.
#[derive(Debug)]
pub enum InputError {
    /// Bad JSON, bad literals or a bad field: the document itself is wrong.
    Document(String),
    /// A well-formed document the classification rejects.
    Math(Error),
}

impl CurveInputDoc {
    pub fn from_json(src: &str) -> std::result::Result<Self, InputError> {
        serde_json::from_str(src).map_err(|e| InputError::Document(e.to_string()))
    }

    fn build<R: Ring>(
        &self,
        ctx: &R,
        symbols: &[(&str, R)],
    ) -> std::result::Result<ClassificationInput<R>, InputError> {
        let lit = |what: &str, src: &str| {
            literal::eval_str(src, ctx, symbols)
                .map_err(|e| InputError::Document(format!("{what}: {e}")))
        };
        let c = &self.curve;
        let curve = WeierstrassCurve::new(
            lit("a1", &c.a1)?,
            lit("a2", &c.a2)?,
            lit("a3", &c.a3)?,
            lit("a4", &c.a4)?,
            lit("a6", &c.a6)?,
        );
        let point =
            |name: &str, xyz: &[String; 3]| -> std::result::Result<ProjPoint<R>, InputError> {
                Ok(ProjPoint::new(
                    lit(&format!("{name}.x"), &xyz[0])?,
                    lit(&format!("{name}.y"), &xyz[1])?,
                    lit(&format!("{name}.z"), &xyz[2])?,
                ))
            };
        Ok(ClassificationInput {
            curve,
            p: point("P", &self.p)?,
            q: point("Q", &self.q)?,
        })
    }

    fn finite_field(&self) -> Result<FiniteField> {
        let p = self
            .field
            .p
            .ok_or_else(|| Error::InvalidField("field.p is required".into()))?;
        match (self.field.kind, &self.field.modulus_poly) {
            (FieldKind::Prime, None) => FiniteField::prime(p),
            (FieldKind::PrimeSquare, None) => FiniteField::extension(p, 2),
            (FieldKind::PrimeSquare, Some(m)) if m.len() == 3 => {
                FiniteField::with_modulus(p, m.clone())
            }
            (FieldKind::PrimeSquare, Some(_)) => Err(Error::InvalidField(
                "modulus_poly must have three coefficients".into(),
            )),
            _ => Err(Error::InvalidField(
                "modulus_poly only applies to prime_square".into(),
            )),
        }
    }

    /// Parses the document and classifies it.
    pub fn classify(&self) -> std::result::Result<OutputDoc, InputError> {
        if self.field.kind == FieldKind::QOmega {
            if self.field.p.is_some() || self.field.modulus_poly.is_some() {
                return Err(InputError::Document(
                    "Q_omega takes no p or modulus_poly".into(),
                ));
            }
            let input = self.build(&QOmega::from_int(0), &[("w", QOmega::omega())])?;
            return render("Q(w)".into(), &input);
        }
        let k = self
            .finite_field()
            .map_err(|e| InputError::Document(e.to_string()))?;
        if k.characteristic() == 3 {
            return Err(InputError::Document("characteristic 3 is excluded".into()));
        }
        let input = self.build(&k.zero(), &[("a", k.generator())])?;
        render(format!("F_{}", k.order()), &input)
    }
}

fn render<R: Ring + CubeRoots>(
    field: String,
    input: &ClassificationInput<R>,
) -> std::result::Result<OutputDoc, InputError> {
    let ClassificationOutput {
        nu,
        omega,
        transform,
        verified,
    } = classify(input).map_err(InputError::Math)?;
    Ok(OutputDoc {
        field,
        nu: nu.to_string(),
        omega: omega.to_string(),
        transform: TransformDoc {
            u: transform.u.to_string(),
            r: transform.r.to_string(),
            s: transform.s.to_string(),
            t: transform.t.to_string(),
        },
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use level3_core::exact_rings::FinElem;
    use level3_core::pairing_classify::canonical_input;

    fn doc_for(kind: &str, p: Option<u32>, input: &ClassificationInput<impl Ring>) -> String {
        let c = input.curve.coefficients().map(ToString::to_string);
        let pt = |q: &ProjPoint<_>| q.coords().map(ToString::to_string);
        serde_json::json!({
            "field": { "kind": kind, "p": p },
            "curve": { "a1": c[0], "a2": c[1], "a3": c[2], "a4": c[3], "a6": c[4] },
            "P": pt(&input.p),
            "Q": pt(&input.q),
        })
        .to_string()
    }

    #[test]
    fn canonical_prime_field() {
        let k = FiniteField::prime(7).unwrap();
        let input = canonical_input(&k.from_int(3), &k.from_int(2)).unwrap();
        let out = CurveInputDoc::from_json(&doc_for("prime", Some(7), &input))
            .unwrap()
            .classify()
            .unwrap();
        assert_eq!(
            (out.nu.as_str(), out.omega.as_str(), out.verified),
            ("3", "2", true)
        );
        assert_eq!(out.transform.u, "1");
    }

    #[test]
    fn canonical_prime_square_and_q_omega() {
        let k = FiniteField::extension(5, 2).unwrap();
        let omega: FinElem = k.one().primitive_cube_roots()[0].clone();
        let nu = k.generator();
        let input = canonical_input(&nu, &omega).unwrap();
        let out = CurveInputDoc::from_json(&doc_for("prime_square", Some(5), &input))
            .unwrap()
            .classify()
            .unwrap();
        assert_eq!(out.nu, nu.to_string());
        assert!(out.verified);

        let input = canonical_input(&QOmega::from_int(2), &QOmega::omega()).unwrap();
        let out = CurveInputDoc::from_json(&doc_for("Q_omega", None, &input))
            .unwrap()
            .classify()
            .unwrap();
        assert_eq!(out.nu, "2");
        assert!(out.verified);
    }

    #[test]
    fn document_errors() {
        assert!(matches!(
            CurveInputDoc::from_json("{"),
            Err(InputError::Document(_))
        ));
        let k = FiniteField::prime(7).unwrap();
        let input = canonical_input(&k.from_int(3), &k.from_int(2)).unwrap();
        let good = doc_for("prime", Some(7), &input);
        let bad_literal = good.replacen("\"a2\":\"0\"", "\"a2\":\"1.5\"", 1);
        let e = CurveInputDoc::from_json(&bad_literal)
            .unwrap()
            .classify()
            .unwrap_err();
        assert!(
            matches!(e, InputError::Document(ref m) if m.contains("a2") && m.contains("byte 1")),
            "{e:?}"
        );
        let char3 = good.replace("\"p\":7", "\"p\":3");
        assert!(matches!(
            CurveInputDoc::from_json(&char3).unwrap().classify(),
            Err(InputError::Document(_))
        ));
    }
}
