//! Verification manifests.
//!
//! A manifest is a TOML document. Top-level keys come first, then tables:
//!
//! ```text
//! name       = <string>                      required
//! variables  = [<string>, ...]               required with `equation`
//! equation   = <polynomial text>             optional; needs [ambient]
//! expected_quotient_points = <integer>       optional, compared but never asserted
//!
//! [ambient]
//! kind    = "projective" | "product" | "weighted"
//! dims    = [<integer>, ...]                 projective: [n]; product: one entry per factor
//! weights = [<integer>, ...]                 weighted only, one per variable
//!
//! [action]                                   optional
//! order   = <integer >= 1>
//! weights = [<integer>, ...]                 one per variable, reduced mod order
//!
//! [smoothing]                                optional
//! perturbation = <polynomial text>
//!
//! [[singular_points]]                        optional, repeatable
//! coordinates = [[<coord>, ...], ...]        one list per factor; <coord> is an
//!                                            integer or a string such as "1/2"
//!
//! [[quotient_points]]                        optional, repeatable
//! order   = <integer >= 1>
//! weights = [<integer>, <integer>, <integer>]
//!
//! [claims]                                   optional; string values, recorded only
//! <key> = <string>
//!
//! [[germs]]                                  optional, repeatable
//! name      = <string>
//! variables = [<string>, ...]
//! equations = [<polynomial text>, ...]
//! expected_tjurina = <integer>               optional
//! submodule = [[<polynomial text>, ...], ...] optional; one vector per generator,
//!                                            one entry per equation
//! family    = [<polynomial text>, ...]       optional; one term per equation, in
//!                                            the germ variables and `s`
//! [germs.action]                             optional, as [action]
//! ```
//!
//! Polynomial text uses `+ - * ^`, parentheses, integer and `p/q` coefficients,
//! and only the declared variable names. A manifest must drive at least one
//! run: `equation` with `[ambient]`, or one or more `[[germs]]`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;
use thiserror::Error;

use crate::equiv::CyclicAction;
use crate::geom::pipeline::{ExampleInput, GermInput, QuotientPointClaim};
use crate::geom::AmbientSpace;
use crate::poly::{parse, Polynomial, Rational};

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed manifest: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl ToString) -> ManifestError {
    ManifestError::Invalid {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    name: String,
    #[serde(default)]
    variables: Vec<String>,
    equation: Option<String>,
    expected_quotient_points: Option<usize>,
    ambient: Option<RawAmbient>,
    action: Option<RawAction>,
    smoothing: Option<RawSmoothing>,
    #[serde(default)]
    singular_points: Vec<RawPoint>,
    #[serde(default)]
    quotient_points: Vec<RawAction>,
    #[serde(default)]
    claims: BTreeMap<String, String>,
    #[serde(default)]
    germs: Vec<RawGerm>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAmbient {
    kind: String,
    #[serde(default)]
    dims: Vec<usize>,
    #[serde(default)]
    weights: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    order: u32,
    weights: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSmoothing {
    perturbation: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawCoord {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    coordinates: Vec<Vec<RawCoord>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGerm {
    name: String,
    variables: Vec<String>,
    equations: Vec<String>,
    expected_tjurina: Option<usize>,
    #[serde(default)]
    submodule: Vec<Vec<String>>,
    family: Option<Vec<String>>,
    action: Option<RawAction>,
}

/// A validated manifest.
#[derive(Debug, Clone)]
pub struct VerificationManifest {
    pub name: String,
    pub example: Option<ExampleInput>,
    pub germs: Vec<GermInput>,
}

impl VerificationManifest {
    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
            path: path.display().to_string(),
            source,
        })?;
        text.parse()
    }
}

impl FromStr for VerificationManifest {
    type Err = ManifestError;

    fn from_str(text: &str) -> Result<Self, ManifestError> {
        let raw: RawManifest = toml::from_str(text)?;
        validate(raw)
    }
}

fn poly(field: &str, text: &str, vars: &[String]) -> Result<Polynomial, ManifestError> {
    parse(text, vars).map_err(|e| invalid(field, e))
}

fn action(field: &str, raw: &RawAction, n: usize) -> Result<CyclicAction, ManifestError> {
    if raw.weights.len() != n {
        return Err(invalid(
            format!("{field}.weights"),
            format!("expected {n} weights, got {}", raw.weights.len()),
        ));
    }
    CyclicAction::new(raw.order, &raw.weights).map_err(|e| invalid(field, e))
}

fn check_names(field: &str, vars: &[String]) -> Result<(), ManifestError> {
    if vars.is_empty() {
        return Err(invalid(field, "no variables declared"));
    }
    for (i, v) in vars.iter().enumerate() {
        let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(invalid(field, format!("invalid variable name {v:?}")));
        }
        if vars[..i].contains(v) {
            return Err(invalid(field, format!("variable {v:?} declared twice")));
        }
    }
    Ok(())
}

fn ambient(raw: &RawAmbient, n: usize) -> Result<AmbientSpace, ManifestError> {
    let amb = match raw.kind.as_str() {
        "projective" => match raw.dims.as_slice() {
            [d] => AmbientSpace::projective(*d),
            _ => return Err(invalid("ambient.dims", "projective needs exactly one dimension")),
        },
        "product" => AmbientSpace::product(&raw.dims),
        "weighted" => AmbientSpace::weighted(&raw.weights),
        other => return Err(invalid("ambient.kind", format!("unknown kind {other:?}"))),
    }
    .map_err(|e| invalid("ambient", e))?;
    if amb.nvars() != n {
        return Err(invalid(
            "variables",
            format!("ambient has {} coordinates, {n} variables declared", amb.nvars()),
        ));
    }
    Ok(amb)
}

fn point(
    i: usize,
    raw: &RawPoint,
    amb: &AmbientSpace,
) -> Result<Vec<Rational>, ManifestError> {
    let field = format!("singular_points[{i}]");
    let sizes: Vec<usize> = amb.factors().iter().map(Vec::len).collect();
    let got: Vec<usize> = raw.coordinates.iter().map(Vec::len).collect();
    if sizes != got {
        return Err(invalid(
            field,
            format!("coordinate blocks have sizes {got:?}, ambient factors {sizes:?}"),
        ));
    }
    let mut pt = vec![Rational::default(); amb.nvars()];
    for (factor, block) in amb.factors().iter().zip(&raw.coordinates) {
        for (&j, c) in factor.iter().zip(block) {
            pt[j] = match c {
                RawCoord::Int(n) => Rational::from_integer((*n).into()),
                RawCoord::Text(t) => Rational::from_str(t.trim())
                    .map_err(|_| invalid(&field, format!("bad coordinate {t:?}")))?,
            };
        }
    }
    Ok(pt)
}

fn germ(i: usize, raw: &RawGerm) -> Result<GermInput, ManifestError> {
    let field = format!("germs[{i}]");
    check_names(&format!("{field}.variables"), &raw.variables)?;
    if raw.variables.iter().any(|v| v == "s") && raw.family.is_some() {
        return Err(invalid(
            format!("{field}.variables"),
            "\"s\" is reserved for the family parameter",
        ));
    }
    if raw.equations.is_empty() {
        return Err(invalid(format!("{field}.equations"), "no equations"));
    }
    let d = raw.equations.len();
    let equations = raw
        .equations
        .iter()
        .map(|t| poly(&format!("{field}.equations"), t, &raw.variables))
        .collect::<Result<Vec<_>, _>>()?;
    let mut submodule = Vec::new();
    for (k, v) in raw.submodule.iter().enumerate() {
        if v.len() != d {
            return Err(invalid(
                format!("{field}.submodule[{k}]"),
                format!("expected {d} components, got {}", v.len()),
            ));
        }
        submodule.push(
            v.iter()
                .map(|t| poly(&format!("{field}.submodule[{k}]"), t, &raw.variables))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let family = match &raw.family {
        Some(h) => {
            if h.len() != d {
                return Err(invalid(
                    format!("{field}.family"),
                    format!("expected {d} terms, got {}", h.len()),
                ));
            }
            let mut with_s = raw.variables.clone();
            with_s.push("s".into());
            Some(
                h.iter()
                    .map(|t| poly(&format!("{field}.family"), t, &with_s))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        }
        None => None,
    };
    let action = raw
        .action
        .as_ref()
        .map(|a| action(&format!("{field}.action"), a, raw.variables.len()))
        .transpose()?;
    Ok(GermInput {
        name: raw.name.clone(),
        vars: raw.variables.clone(),
        equations,
        action,
        submodule,
        family,
        expected_tjurina: raw.expected_tjurina,
    })
}

fn validate(raw: RawManifest) -> Result<VerificationManifest, ManifestError> {
    let example = match (&raw.equation, &raw.ambient) {
        (None, None) => None,
        (Some(_), None) => return Err(invalid("ambient", "an equation needs an [ambient] table")),
        (None, Some(_)) => return Err(invalid("equation", "[ambient] given without an equation")),
        (Some(eq), Some(amb_raw)) => {
            check_names("variables", &raw.variables)?;
            let vars = &raw.variables;
            let amb = ambient(amb_raw, vars.len())?;
            let equation = poly("equation", eq, vars)?;
            let act = raw
                .action
                .as_ref()
                .map(|a| action("action", a, vars.len()))
                .transpose()?;
            let perturbation = raw
                .smoothing
                .as_ref()
                .map(|s| poly("smoothing.perturbation", &s.perturbation, vars))
                .transpose()?;
            let claimed = if raw.singular_points.is_empty() {
                None
            } else {
                Some(
                    raw.singular_points
                        .iter()
                        .enumerate()
                        .map(|(i, p)| point(i, p, &amb))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            };
            let mut quotient_points = Vec::new();
            for (i, q) in raw.quotient_points.iter().enumerate() {
                if q.order == 0 {
                    return Err(invalid(format!("quotient_points[{i}].order"), "must be positive"));
                }
                quotient_points.push(QuotientPointClaim {
                    r: q.order,
                    weights: q.weights.clone(),
                });
            }
            Some(ExampleInput {
                name: raw.name.clone(),
                ambient: amb,
                vars: vars.clone(),
                equation,
                action: act,
                claimed_singular: claimed,
                perturbation,
                quotient_points,
                expected_quotient_count: raw.expected_quotient_points,
                claims: raw.claims.clone(),
            })
        }
    };
    if example.is_none() {
        let stray = [
            ("action", raw.action.is_some()),
            ("smoothing", raw.smoothing.is_some()),
            ("singular_points", !raw.singular_points.is_empty()),
            ("quotient_points", !raw.quotient_points.is_empty()),
        ];
        if let Some((field, _)) = stray.iter().find(|(_, present)| *present) {
            return Err(invalid(*field, "only meaningful together with an equation"));
        }
    }
    let germs = raw
        .germs
        .iter()
        .enumerate()
        .map(|(i, g)| germ(i, g))
        .collect::<Result<Vec<_>, _>>()?;
    if example.is_none() && germs.is_empty() {
        return Err(invalid("manifest", "nothing to run: give an equation or [[germs]]"));
    }
    Ok(VerificationManifest {
        name: raw.name,
        example,
        germs,
    })
}
