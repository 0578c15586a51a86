//! Model files, presets, and seeded model generation.
//!
//! A model file is JSON. Rationals are strings such as `"3"` or `"-2/5"` so
//! that nothing passes through floating point:
//!
//! ```json
//! {
//!   "name": "hopf-s3",
//!   "n": 1,
//!   "s": 1,
//!   "lambdas": ["1"],
//!   "base_dims": [1, 0, 1],
//!   "l_maps": [[["1"]], [], []]
//! }
//! ```
//!
//! `l_maps[p]` lists the rows of `L: H^p -> H^{p+2}` (`dims[p+2]` rows of
//! `dims[p]` entries; no rows when `p + 2 > 2n`).

use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, InvariantComplex};
use crate::lefschetz::{
    generate_hlp_module, generate_non_hlp_module, random_primitive_dims, standard, LefschetzError,
    LefschetzModule,
};
use crate::linalg::{int, ratio, Matrix, Rational};

pub const MAX_N: usize = 6;
pub const MAX_S: usize = 4;
pub const MAX_PRIMITIVE_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("{0}")]
    Range(String),
}

fn field_error(field: impl Into<String>, message: impl ToString) -> ModelError {
    ModelError::Field {
        field: field.into(),
        message: message.to_string(),
    }
}

/// Parses `"a"` or `"a/b"` exactly.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    if let Some((_, den)) = text.split_once('/') {
        if den
            .trim()
            .trim_start_matches(['+', '-'])
            .chars()
            .all(|c| c == '0')
        {
            return Err(format!("`{text}` has a zero denominator"));
        }
    }
    Rational::from_str(text).map_err(|_| format!("`{text}` is not a rational number"))
}

pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    pub s: usize,
    pub lambdas: Vec<String>,
    pub base_dims: Vec<usize>,
    pub l_maps: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<String>>>,
}

impl ModelFile {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("model files serialize");
        out.push('\n');
        out
    }

    pub fn from_parts(
        base: &LefschetzModule,
        lambdas: &[Rational],
        name: Option<String>,
        description: Option<String>,
        seed: Option<u64>,
    ) -> Self {
        ModelFile {
            name,
            description,
            seed,
            n: base.n(),
            s: lambdas.len(),
            lambdas: lambdas.iter().map(format_rational).collect(),
            base_dims: base.dims().to_vec(),
            l_maps: base
                .l_maps()
                .iter()
                .map(|m| {
                    m.to_rows()
                        .iter()
                        .map(|row| row.iter().map(format_rational).collect())
                        .collect()
                })
                .collect(),
            labels: base.labels().map(<[_]>::to_vec),
        }
    }

    pub fn lambdas(&self) -> Result<Vec<Rational>, ModelError> {
        self.lambdas
            .iter()
            .enumerate()
            .map(|(i, t)| parse_rational(t).map_err(|m| field_error(format!("lambdas[{i}]"), m)))
            .collect()
    }

    /// Validated base module.
    pub fn base(&self) -> Result<LefschetzModule, ModelError> {
        let top = 2 * self.n;
        if self.base_dims.len() != top + 1 {
            return Err(field_error(
                "base_dims",
                format!(
                    "expected {} entries (degrees 0..=2n), found {}",
                    top + 1,
                    self.base_dims.len()
                ),
            ));
        }
        if self.l_maps.len() != top + 1 {
            return Err(field_error(
                "l_maps",
                format!(
                    "expected {} matrices (degrees 0..=2n), found {}",
                    top + 1,
                    self.l_maps.len()
                ),
            ));
        }
        let mut maps = Vec::with_capacity(top + 1);
        for (p, rows) in self.l_maps.iter().enumerate() {
            let cols = self.base_dims[p];
            let expected_rows = self.base_dims.get(p + 2).copied().unwrap_or(0);
            if rows.len() != expected_rows {
                return Err(field_error(
                    format!("l_maps[{p}]"),
                    format!("expected {expected_rows} rows, found {}", rows.len()),
                ));
            }
            let mut parsed = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                if row.len() != cols {
                    return Err(field_error(
                        format!("l_maps[{p}][{i}]"),
                        format!("expected {cols} entries, found {}", row.len()),
                    ));
                }
                parsed.push(
                    row.iter()
                        .enumerate()
                        .map(|(j, t)| {
                            parse_rational(t)
                                .map_err(|m| field_error(format!("l_maps[{p}][{i}][{j}]"), m))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            maps.push(
                Matrix::from_rows(cols, parsed)
                    .map_err(|e| field_error(format!("l_maps[{p}]"), e))?,
            );
        }
        let module = LefschetzModule::new(self.n, self.base_dims.clone(), maps)
            .map_err(|e| field_error("l_maps", e))?;
        match &self.labels {
            None => Ok(module),
            Some(labels) => {
                let shape_ok = labels.len() == top + 1
                    && labels
                        .iter()
                        .zip(&self.base_dims)
                        .all(|(l, &d)| l.len() == d);
                if !shape_ok {
                    return Err(field_error(
                        "labels",
                        "must list one label per basis class in every degree",
                    ));
                }
                Ok(module.with_labels(labels.clone()))
            }
        }
    }

    /// Validated model complex.
    pub fn to_complex(&self) -> Result<InvariantComplex, ModelError> {
        if self.s == 0 {
            return Err(field_error("s", "must be at least 1"));
        }
        if self.lambdas.len() != self.s {
            return Err(field_error(
                "lambdas",
                format!(
                    "expected {} entries (one per η), found {}",
                    self.s,
                    self.lambdas.len()
                ),
            ));
        }
        let lambdas = self.lambdas()?;
        InvariantComplex::build_model(self.base()?, self.s, lambdas).map_err(|e| match e {
            ComplexError::CorankTooLarge(_) => field_error("s", e),
            other => field_error("model", other),
        })
    }
}

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub build: fn() -> (LefschetzModule, Vec<Rational>),
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "hopf-s3",
        description: "S^3 as the Hopf circle bundle over CP^1: base H(CP^1) = Q[w]/(w^2), L = cup with w, s = 1, dη = ω",
        build: || (standard::cp1(), vec![int(1)]),
    },
    Preset {
        name: "s5",
        description: "S^5 over CP^2: base H(CP^2) = Q[w]/(w^3), L = cup with w, s = 1, dη = ω",
        build: || (standard::cp2(), vec![int(1)]),
    },
    Preset {
        name: "s2xs3",
        description: "S^2 x S^3 over S^2 x S^2: base H = Q[a,b]/(a^2,b^2), L = cup with a+b, s = 1, dη = ω",
        build: || (standard::s2_x_s2(), vec![int(1)]),
    },
    Preset {
        name: "torus-t3",
        description: "T^3 as a flat circle bundle over T^2: base H(T^2) = Λ(x,y), L = cup with x∧y, s = 1, closed η",
        build: || (standard::t2(), vec![int(0)]),
    },
    Preset {
        name: "torus-t4",
        description: "T^4 as a flat T^2 bundle over T^2: base H(T^2) = Λ(x,y), L = cup with x∧y, s = 2, closed η's",
        build: || (standard::t2(), vec![int(0), int(0)]),
    },
    Preset {
        name: "s3xs1",
        description: "S^3 x S^1 over CP^1: base H(CP^1), s = 2, dη_1 = dη_2 = ω",
        build: || (standard::cp1(), vec![int(1), int(1)]),
    },
];

pub fn preset(name: &str) -> Result<ModelFile, ModelError> {
    let p = PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| ModelError::UnknownPreset(name.to_string()))?;
    let (base, lambdas) = (p.build)();
    Ok(ModelFile::from_parts(
        &base,
        &lambdas,
        Some(p.name.to_string()),
        Some(p.description.to_string()),
        None,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    S,
    C,
    Mixed,
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "S" | "s" => Ok(ModelKind::S),
            "C" | "c" => Ok(ModelKind::C),
            "mixed" => Ok(ModelKind::Mixed),
            other => Err(format!(
                "unknown model type `{other}` (expected S, C or mixed)"
            )),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ModelKind::S => "S",
            ModelKind::C => "C",
            ModelKind::Mixed => "mixed",
        })
    }
}

#[derive(Debug, Clone)]
pub struct GenerateOptions {
    pub seed: u64,
    pub n: usize,
    pub s: usize,
    pub max_primitive_dim: usize,
    pub kind: ModelKind,
    pub lambdas: Option<Vec<Rational>>,
}

/// Seeded model: the base is a randomly conjugated free hard Lefschetz
/// module; for `C` models it loses hard Lefschetz on a coin flip.
pub fn generate_model(opts: &GenerateOptions) -> Result<ModelFile, ModelError> {
    if opts.n > MAX_N {
        return Err(ModelError::Range(format!("n must be at most {MAX_N}")));
    }
    if opts.s == 0 || opts.s > MAX_S {
        return Err(ModelError::Range(format!("s must lie in 1..={MAX_S}")));
    }
    if opts.max_primitive_dim == 0 || opts.max_primitive_dim > MAX_PRIMITIVE_DIM {
        return Err(ModelError::Range(format!(
            "max primitive dimension must lie in 1..={MAX_PRIMITIVE_DIM}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pdims = random_primitive_dims(&mut rng, opts.n, opts.max_primitive_dim);
    let base_seed: u64 = rng.gen();
    let break_hlp = opts.kind == ModelKind::C && rng.gen_bool(0.5);
    let base = if break_hlp {
        match generate_non_hlp_module(base_seed, opts.n, &pdims) {
            Ok(m) => m,
            Err(LefschetzError::NothingToBreak) => {
                generate_hlp_module(base_seed, opts.n, &pdims).expect("valid")
            }
            Err(e) => return Err(ModelError::Range(e.to_string())),
        }
    } else {
        generate_hlp_module(base_seed, opts.n, &pdims).expect("valid primitive dimensions")
    };
    let lambdas = match &opts.lambdas {
        Some(l) => {
            if l.len() != opts.s {
                return Err(ModelError::Range(format!(
                    "expected {} lambdas, found {}",
                    opts.s,
                    l.len()
                )));
            }
            let fits = match opts.kind {
                ModelKind::S => l.iter().all(|x| *x == int(1)),
                ModelKind::C => l.iter().all(|x| *x == int(0)),
                ModelKind::Mixed => true,
            };
            if !fits {
                return Err(ModelError::Range(format!(
                    "lambdas do not fit model type {}",
                    opts.kind
                )));
            }
            l.clone()
        }
        None => match opts.kind {
            ModelKind::S => vec![int(1); opts.s],
            ModelKind::C => vec![int(0); opts.s],
            ModelKind::Mixed => (0..opts.s)
                .map(|_| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
                .collect(),
        },
    };
    let name = format!(
        "generated-{}-n{}-s{}-seed{}",
        opts.kind, opts.n, opts.s, opts.seed
    );
    let description = format!(
        "seeded random model, primitive dimensions {:?}{}",
        pdims,
        if break_hlp {
            ", one Lefschetz block broken"
        } else {
            ""
        }
    );
    Ok(ModelFile::from_parts(
        &base,
        &lambdas,
        Some(name),
        Some(description),
        Some(opts.seed),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-2/4").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn presets_round_trip() {
        for p in PRESETS {
            let m = preset(p.name).unwrap();
            let again = ModelFile::from_json(&m.to_json()).unwrap();
            assert_eq!(m, again);
            let c = again.to_complex().unwrap();
            let (base, lambdas) = (p.build)();
            assert_eq!(c.base(), &base);
            assert_eq!(c.lambdas(), lambdas.as_slice());
        }
        assert_eq!(
            preset("cp3").unwrap_err(),
            ModelError::UnknownPreset("cp3".into())
        );
    }

    #[test]
    fn diagnostics_name_the_field() {
        let mut m = preset("hopf-s3").unwrap();
        m.l_maps[0] = vec![vec!["1".into(), "2".into()]];
        assert!(
            matches!(m.to_complex(), Err(ModelError::Field { field, .. }) if field == "l_maps[0][0]")
        );
        let mut m = preset("hopf-s3").unwrap();
        m.lambdas = vec!["x".into()];
        assert!(
            matches!(m.to_complex(), Err(ModelError::Field { field, .. }) if field == "lambdas[0]")
        );
        let err = ModelFile::from_json("{\n  \"n\": 1,\n  \"s\": }").unwrap_err();
        assert!(matches!(err, ModelError::Syntax { line: 3, .. }));
    }

    #[test]
    fn generation_is_deterministic() {
        let opts = GenerateOptions {
            seed: 42,
            n: 2,
            s: 2,
            max_primitive_dim: 2,
            kind: ModelKind::Mixed,
            lambdas: None,
        };
        assert_eq!(
            generate_model(&opts).unwrap().to_json(),
            generate_model(&opts).unwrap().to_json()
        );
        let c = generate_model(&GenerateOptions {
            kind: ModelKind::C,
            ..opts.clone()
        })
        .unwrap();
        assert!(c.lambdas.iter().all(|l| l == "0"));
        assert!(generate_model(&GenerateOptions {
            n: 7,
            ..opts.clone()
        })
        .is_err());
        assert!(generate_model(&GenerateOptions { s: 0, ..opts }).is_err());
    }
}
