// Copyright 2026 The sg-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! TOML experiment plans and preparation lists.
//!
//! ```toml
//! seed = 2022
//! n_particles = 100000
//! source = "unpolarized"
//! # or: source = { amp0_re = 1.0, amp0_im = 0.0, amp1_re = 0.0, amp1_im = 0.0 }
//!
//! [[stages]]
//! theta = 0.0          # radians, [0, pi]
//! phi = 0.0            # radians
//! port = "+"           # "+" or "-" (also +1 / -1)
//! ```
//!
//! A preparation list has the same stage shape under `[[preparations]]` and
//! optional top-level `n_particles` and `seed`; without `n_particles` the
//! table is computed exactly. Unknown keys are errors. Every error carries the
//! 1-based line of the offending value.

use std::ops::Range;

use num_complex::Complex64;
use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::qubit::{Direction, Port, PureState};
use crate::simulator::{ExperimentPlan, SgStage, Source};
use crate::tol;

/// Accepted deviation of a source spinor's squared norm from 1.
pub const SOURCE_NORM_TOLERANCE: f64 = 1e-6;

#[derive(Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Float(f64),
}

impl Number {
    fn value(&self) -> f64 {
        match *self {
            Number::Int(i) => i as f64,
            Number::Float(f) => f,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawPort {
    Text(String),
    Sign(i64),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSeed {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpinor {
    amp0_re: Number,
    amp0_im: Number,
    amp1_re: Number,
    amp1_im: Number,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSource {
    Named(String),
    Spinor(RawSpinor),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStage {
    theta: Spanned<Number>,
    phi: Spanned<Number>,
    port: Spanned<RawPort>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlan {
    source: Spanned<RawSource>,
    stages: Spanned<Vec<Spanned<RawStage>>>,
    n_particles: Spanned<i64>,
    seed: Spanned<RawSeed>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPreparations {
    preparations: Spanned<Vec<Spanned<RawStage>>>,
    n_particles: Option<Spanned<i64>>,
    seed: Option<Spanned<RawSeed>>,
}

/// Preparation buttons plus optional sampling settings.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparationList {
    pub preparations: Vec<SgStage>,
    /// `None` means exact probabilities.
    pub n_particles: Option<u64>,
    pub seed: u64,
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn line(&self, span: &Range<usize>) -> usize {
        let end = span.start.min(self.text.len());
        1 + self.text.as_bytes()[..end]
            .iter()
            .filter(|&&b| b == b'\n')
            .count()
    }

    fn err(
        &self,
        span: &Range<usize>,
        key: impl Into<String>,
        message: impl Into<String>,
    ) -> Error {
        Error::Parse {
            line: self.line(span),
            key: key.into(),
            message: message.into(),
        }
    }

    fn toml_err(&self, e: toml::de::Error, key: &str) -> Error {
        let line = e.span().map_or(1, |s| self.line(&s));
        Error::Parse {
            line,
            key: key.to_string(),
            message: e.message().trim().to_string(),
        }
    }

    fn number(&self, n: &Spanned<Number>, key: &str) -> Result<f64> {
        let v = n.get_ref().value();
        if !v.is_finite() {
            return Err(self.err(&n.span(), key, "must be a finite number"));
        }
        Ok(v)
    }

    fn stage(&self, raw: &Spanned<RawStage>, key: &str) -> Result<SgStage> {
        let s = raw.get_ref();
        let theta_key = format!("{key}.theta");
        let theta = self.number(&s.theta, &theta_key)?;
        let phi = self.number(&s.phi, &format!("{key}.phi"))?;
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(self.err(
                &s.theta.span(),
                theta_key,
                format!("theta = {theta} is outside [0, pi]; angles are radians"),
            ));
        }
        let direction =
            Direction::new(theta, phi).map_err(|e| self.err(&raw.span(), key, e.to_string()))?;
        let port_key = format!("{key}.port");
        let port = match s.port.get_ref() {
            RawPort::Text(t) => match t.as_str() {
                "+" | "+1" => Port::Plus,
                "-" | "-1" => Port::Minus,
                other => {
                    return Err(self.err(
                        &s.port.span(),
                        port_key,
                        format!("expected \"+\" or \"-\", got \"{other}\""),
                    ))
                }
            },
            RawPort::Sign(i) => Port::from_sign(*i)
                .map_err(|e| self.err(&s.port.span(), port_key, e.to_string()))?,
        };
        Ok(SgStage::new(direction, port))
    }

    fn stages(&self, raw: &Spanned<Vec<Spanned<RawStage>>>, key: &str) -> Result<Vec<SgStage>> {
        if raw.get_ref().is_empty() {
            return Err(self.err(&raw.span(), key, "at least one entry is required"));
        }
        raw.get_ref()
            .iter()
            .enumerate()
            .map(|(i, s)| self.stage(s, &format!("{key}[{i}]")))
            .collect()
    }

    fn seed(&self, raw: &Spanned<RawSeed>) -> Result<u64> {
        match raw.get_ref() {
            RawSeed::Int(i) => {
                u64::try_from(*i).map_err(|_| self.err(&raw.span(), "seed", "must be non-negative"))
            }
            RawSeed::Text(t) => t.parse::<u64>().map_err(|_| {
                self.err(
                    &raw.span(),
                    "seed",
                    format!("\"{t}\" is not an unsigned 64-bit integer"),
                )
            }),
        }
    }

    fn count(&self, raw: &Spanned<i64>) -> Result<u64> {
        match u64::try_from(*raw.get_ref()) {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(self.err(&raw.span(), "n_particles", "must be a positive integer")),
        }
    }

    fn source(&self, raw: &Spanned<RawSource>) -> Result<Source> {
        match raw.get_ref() {
            RawSource::Named(name) if name == "unpolarized" => Ok(Source::Unpolarized),
            RawSource::Named(name) => Err(self.err(
                &raw.span(),
                "source",
                format!("expected \"unpolarized\" or an amplitude table, got \"{name}\""),
            )),
            RawSource::Spinor(s) => {
                let parts = [
                    ("source.amp0_re", &s.amp0_re),
                    ("source.amp0_im", &s.amp0_im),
                    ("source.amp1_re", &s.amp1_re),
                    ("source.amp1_im", &s.amp1_im),
                ];
                let mut v = [0.0; 4];
                for (slot, (key, n)) in v.iter_mut().zip(parts) {
                    *slot = n.value();
                    if !slot.is_finite() {
                        return Err(self.err(&raw.span(), key, "must be a finite number"));
                    }
                }
                let a0 = Complex64::new(v[0], v[1]);
                let a1 = Complex64::new(v[2], v[3]);
                let norm_sq = a0.norm_sqr() + a1.norm_sqr();
                if (norm_sq - 1.0).abs() > SOURCE_NORM_TOLERANCE.max(tol::VALIDITY) {
                    return Err(self.err(
                        &raw.span(),
                        "source",
                        format!("amplitudes are not normalized (|amp0|^2 + |amp1|^2 = {norm_sq})"),
                    ));
                }
                let state = PureState::normalized(a0, a1)
                    .map_err(|e| self.err(&raw.span(), "source", e.to_string()))?;
                Ok(Source::Fixed(state))
            }
        }
    }
}

/// Parses and validates an experiment plan.
pub fn parse_plan(text: &str) -> Result<ExperimentPlan> {
    let ctx = Ctx { text };
    let raw: RawPlan = toml::from_str(text).map_err(|e| ctx.toml_err(e, "plan"))?;
    let stages = ctx.stages(&raw.stages, "stages")?;
    let n = ctx.count(&raw.n_particles)?;
    let seed = ctx.seed(&raw.seed)?;
    let source = ctx.source(&raw.source)?;
    ExperimentPlan::new(stages, n, seed, source)
        .map_err(|e| ctx.err(&raw.stages.span(), "plan", e.to_string()))
}

/// Parses a list of preparation buttons.
pub fn parse_preparations(text: &str) -> Result<PreparationList> {
    let ctx = Ctx { text };
    let raw: RawPreparations = toml::from_str(text).map_err(|e| ctx.toml_err(e, "preparations"))?;
    let preparations = ctx.stages(&raw.preparations, "preparations")?;
    let n_particles = raw.n_particles.as_ref().map(|n| ctx.count(n)).transpose()?;
    let seed = raw
        .seed
        .as_ref()
        .map(|s| ctx.seed(s))
        .transpose()?
        .unwrap_or(0);
    Ok(PreparationList {
        preparations,
        n_particles,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_STAGE: &str = r#"
seed = 7
n_particles = 100
source = "unpolarized"

[[stages]]
theta = 0.0
phi = 0.0
port = "+"

[[stages]]
theta = 1.5707963267948966
phi = 0
port = -1
"#;

    #[test]
    fn parses_two_stage_plan() {
        let plan = parse_plan(TWO_STAGE).unwrap();
        assert_eq!(plan.stages().len(), 2);
        assert_eq!(plan.seed(), 7);
        assert_eq!(plan.n_particles(), 100);
        assert_eq!(plan.source(), Source::Unpolarized);
        assert_eq!(plan.stages()[1].selected_port, Port::Minus);
    }

    #[test]
    fn theta_out_of_range_names_key_and_line() {
        let text = TWO_STAGE.replace("theta = 0.0", "theta = 7.0");
        match parse_plan(&text) {
            Err(Error::Parse { line, key, .. }) => {
                assert_eq!(key, "stages[0].theta");
                assert_eq!(line, 7);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_rejected() {
        let text = format!("{TWO_STAGE}\nextra = 1\n");
        assert!(matches!(parse_plan(&text), Err(Error::Parse { .. })));
        let text = TWO_STAGE.replacen("port = \"+\"", "port = \"+\"\ncolour = 3", 1);
        let err = parse_plan(&text).unwrap_err().to_string();
        assert!(err.contains("colour"), "{err}");
    }

    #[test]
    fn fixed_source() {
        let text = TWO_STAGE.replace(
            "source = \"unpolarized\"",
            "source = { amp0_re = 0.0, amp0_im = 0.0, amp1_re = 0.0, amp1_im = 1.0 }",
        );
        let plan = parse_plan(&text).unwrap();
        assert_eq!(plan.source(), Source::Fixed(PureState::one()));
        let bad = TWO_STAGE.replace(
            "source = \"unpolarized\"",
            "source = { amp0_re = 1.0, amp0_im = 0.0, amp1_re = 1.0, amp1_im = 0.0 }",
        );
        assert!(parse_plan(&bad).is_err());
    }

    #[test]
    fn other_validation_errors() {
        assert!(parse_plan(&TWO_STAGE.replace("n_particles = 100", "n_particles = 0")).is_err());
        assert!(parse_plan(&TWO_STAGE.replace("seed = 7", "seed = -7")).is_err());
        assert!(parse_plan(&TWO_STAGE.replace("port = -1", "port = 2")).is_err());
        assert!(parse_plan(&TWO_STAGE.replace("\"unpolarized\"", "\"hot\"")).is_err());
        assert!(
            parse_plan("seed = 1\nn_particles = 1\nsource = \"unpolarized\"\nstages = []\n")
                .is_err()
        );
        assert!(parse_plan("this is not toml").is_err());
        let big = TWO_STAGE.replace("seed = 7", "seed = \"18446744073709551615\"");
        assert_eq!(parse_plan(&big).unwrap().seed(), u64::MAX);
    }

    #[test]
    fn preparation_lists() {
        let text = "[[preparations]]\ntheta = 0\nphi = 0\nport = \"+\"\n\n[[preparations]]\ntheta = 3.141592653589793\nphi = 0\nport = \"+\"\n";
        let list = parse_preparations(text).unwrap();
        assert_eq!(list.preparations.len(), 2);
        assert_eq!(list.n_particles, None);
        let sampled = format!("n_particles = 1000\nseed = 3\n{text}");
        let list = parse_preparations(&sampled).unwrap();
        assert_eq!((list.n_particles, list.seed), (Some(1000), 3));
    }
}
