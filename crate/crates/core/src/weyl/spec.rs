//! Textual and JSON descriptions of subgroups.
//!
//! Text form: generators separated by whitespace or commas. A generator is
//! either a word over `a, b, c, r, s` (each letter optionally followed by an
//! exponent `2`, `^2`, `^-1` or a `'` for the inverse; `e` is the identity),
//! or a permutation of the lines in cycle notation with adjacent cycles,
//! e.g. `(E1 Q1)(E2 Q2)`.
//!
//! JSON form:
//!
//! ```json
//! { "generators": [ { "word": "abcs" },
//!                   { "cycles": "(E1 Q1)(E2 Q2)(E3 Q3)(E4 Q4)(E5 Q5)(E6 Q6)" },
//!                   { "matrix": [[1,0,0,0,0,0,0], ...] } ] }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::isometry::{IsometryRecord, Matrix};
use super::named::named_element;
use super::{Isometry, LinePerm, Subgroup, WeylError};
use crate::lattice::{LineLabel, LINE_COUNT};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("generator {index}: {source}")]
    Invalid {
        index: usize,
        #[source]
        source: WeylError,
    },
    #[error("invalid JSON subgroup spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] WeylError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorSpec {
    Word(String),
    Cycles(String),
    Matrix(Box<Matrix>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupSpec {
    pub generators: Vec<GeneratorSpec>,
}

/// A subgroup as written into reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub order: usize,
    pub generators: Vec<IsometryRecord>,
}

impl From<&Subgroup> for SubgroupRecord {
    fn from(g: &Subgroup) -> Self {
        SubgroupRecord {
            order: g.order(),
            generators: g.generators().iter().map(IsometryRecord::from).collect(),
        }
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse {
        position,
        message: message.into(),
    }
}

/// Evaluate a word such as `a^2b` or `abcs`; `offset` shifts reported
/// positions.
pub fn parse_word(word: &str, offset: usize) -> Result<Isometry, SpecError> {
    let chars: Vec<(usize, char)> = word.char_indices().collect();
    let mut acc = Isometry::identity();
    let mut k = 0;
    if chars.is_empty() {
        return Err(parse_err(offset, "empty word"));
    }
    while k < chars.len() {
        let (pos, ch) = chars[k];
        let letter = match ch {
            'a' | 'b' | 'c' | 'r' | 's' => named_element(&ch.to_string())?,
            'e' | '1' if k == 0 && chars.len() == 1 => Isometry::identity(),
            _ => {
                return Err(parse_err(
                    offset + pos,
                    format!("unexpected character {ch:?}"),
                ))
            }
        };
        k += 1;
        let mut exponent: i64 = 1;
        if k < chars.len() {
            let (epos, next) = chars[k];
            if next == '\'' {
                exponent = -1;
                k += 1;
            } else if next == '^' || next.is_ascii_digit() {
                if next == '^' {
                    k += 1;
                }
                let start = k;
                if k < chars.len() && chars[k].1 == '-' {
                    k += 1;
                }
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                let text: String = chars[start..k].iter().map(|(_, c)| c).collect();
                exponent = text
                    .parse()
                    .map_err(|_| parse_err(offset + epos, format!("bad exponent {text:?}")))?;
            }
        }
        let order = letter.order() as i64;
        let e = exponent.rem_euclid(order) as u32;
        acc = acc.compose(&letter.pow(e));
    }
    Ok(acc)
}

/// Parse cycle notation over line labels.
pub fn parse_cycles(text: &str, offset: usize) -> Result<Isometry, SpecError> {
    let mut p = LinePerm::identity().0;
    let mut moved = [false; LINE_COUNT];
    let mut rest = text;
    let mut pos = offset;
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(parse_err(pos, "expected '('"));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| parse_err(pos, "unclosed cycle"))?;
        let body = &rest[1..close];
        let mut labels = Vec::new();
        for tok in body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let l: LineLabel = tok
                .parse()
                .map_err(|_| parse_err(pos, format!("unknown line label {tok:?}")))?;
            if moved[l.index()] {
                return Err(parse_err(pos, format!("label {l} appears twice")));
            }
            moved[l.index()] = true;
            labels.push(l);
        }
        for k in 0..labels.len() {
            p[labels[k].index()] = labels[(k + 1) % labels.len()].index() as u8;
        }
        pos += close + 1;
        rest = &rest[close + 1..];
    }
    Isometry::from_perm(LinePerm(p)).map_err(|e| parse_err(offset, e.to_string()))
}

/// Parse the text form into generator specs.
pub fn parse_text(text: &str) -> Result<SubgroupSpec, SpecError> {
    let bytes = text.as_bytes();
    let mut generators = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        let start = i;
        if c == '(' {
            // consume adjacent cycles
            while i < bytes.len() && bytes[i] == b'(' {
                match text[i..].find(')') {
                    Some(off) => i += off + 1,
                    None => return Err(parse_err(i, "unclosed cycle")),
                }
            }
            let chunk = &text[start..i];
            parse_cycles(chunk, start)?;
            generators.push(GeneratorSpec::Cycles(chunk.to_string()));
        } else {
            while i < bytes.len() {
                let c = bytes[i] as char;
                if c.is_whitespace() || c == ',' || c == '(' {
                    break;
                }
                i += 1;
            }
            let chunk = &text[start..i];
            parse_word(chunk, start)?;
            generators.push(GeneratorSpec::Word(chunk.to_string()));
        }
    }
    Ok(SubgroupSpec { generators })
}

/// Accept either the JSON form (leading `{`) or the text form.
pub fn parse_spec(input: &str) -> Result<SubgroupSpec, SpecError> {
    if input.trim_start().starts_with('{') {
        Ok(serde_json::from_str(input)?)
    } else {
        parse_text(input)
    }
}

impl GeneratorSpec {
    pub fn to_isometry(&self) -> Result<Isometry, SpecError> {
        match self {
            GeneratorSpec::Word(w) => parse_word(w, 0),
            GeneratorSpec::Cycles(c) => parse_cycles(c, 0),
            GeneratorSpec::Matrix(m) => Ok(Isometry::from_matrix(**m)?),
        }
    }
}

impl SubgroupSpec {
    pub fn generator_isometries(&self) -> Result<Vec<Isometry>, SpecError> {
        self.generators
            .iter()
            .enumerate()
            .map(|(index, g)| {
                g.to_isometry().map_err(|e| match e {
                    SpecError::Group(source) => SpecError::Invalid { index, source },
                    other => other,
                })
            })
            .collect()
    }

    pub fn resolve(&self) -> Result<Subgroup, SpecError> {
        Ok(Subgroup::generate(&self.generator_isometries()?)?)
    }
}

/// Parse and generate in one step.
pub fn subgroup_from_spec(input: &str) -> Result<Subgroup, SpecError> {
    parse_spec(input)?.resolve()
}
