use super::{ConvexBody, Shape};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Textual body descriptor: `disc:R`, `ellipse:a,b`, `cw:w,b3` or
/// `trig:a0[,ak,bk]*`.
#[derive(Debug, Clone, PartialEq)]
pub struct BodySpec {
    text: String,
    shape: Shape,
}

impl BodySpec {
    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Validates the shape and builds the body.
    pub fn build(&self) -> Result<ConvexBody> {
        Ok(ConvexBody::new(self.shape.clone())?.with_label(self.text.clone()))
    }
}

impl fmt::Display for BodySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::BodyParse {
        position,
        message: message.into(),
    }
}

/// Comma-separated reals starting at byte offset `start`.
fn parse_reals(s: &str, start: usize) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut pos = start;
    for field in s.split(',') {
        let trimmed = field.trim();
        let lead = field.len() - field.trim_start().len();
        if trimmed.is_empty() {
            return Err(parse_err(pos + lead, "expected a number"));
        }
        let ok_chars = trimmed
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E'));
        let value = if ok_chars { trimmed.parse::<f64>().ok() } else { None };
        match value {
            Some(v) if v.is_finite() => out.push(v),
            _ => return Err(parse_err(pos + lead, format!("invalid number '{trimmed}'"))),
        }
        pos += field.len() + 1;
    }
    Ok(out)
}

impl FromStr for BodySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let colon = text
            .find(':')
            .ok_or_else(|| parse_err(text.len(), "expected '<kind>:<parameters>'"))?;
        let kind = &text[..colon];
        let args = parse_reals(&text[colon + 1..], colon + 1)?;
        let count = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(parse_err(
                    colon + 1,
                    format!("'{kind}' takes {want} parameter(s), got {}", args.len()),
                ))
            }
        };
        let positive = |v: f64, name: &str| {
            if v > 0.0 {
                Ok(v)
            } else {
                Err(parse_err(colon + 1, format!("{name} must be positive, got {v}")))
            }
        };
        let shape = match kind {
            "disc" => {
                count(1)?;
                Shape::Disc {
                    radius: positive(args[0], "radius")?,
                }
            }
            "ellipse" => {
                count(2)?;
                Shape::Ellipse {
                    a: positive(args[0], "semi-axis a")?,
                    b: positive(args[1], "semi-axis b")?,
                }
            }
            "cw" => {
                count(2)?;
                Shape::Trig {
                    a0: 0.5 * positive(args[0], "width")?,
                    harmonics: vec![(0.0, 0.0), (0.0, 0.0), (args[1], 0.0)],
                }
            }
            "trig" => {
                if args.len() % 2 != 1 {
                    return Err(parse_err(
                        colon + 1,
                        "'trig' takes a0 followed by (ak, bk) pairs",
                    ));
                }
                Shape::Trig {
                    a0: positive(args[0], "a0")?,
                    harmonics: args[1..].chunks(2).map(|c| (c[0], c[1])).collect(),
                }
            }
            other => return Err(parse_err(0, format!("unknown body kind '{other}'"))),
        };
        Ok(BodySpec {
            text: text.to_string(),
            shape,
        })
    }
}
