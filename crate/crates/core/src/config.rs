//! TOML configuration: group, bicharacter, graded basis, shape, and size bounds.
//!
//! ```toml
//! name = "super (1|1)"
//!
//! [group]
//! factors = [2]
//!
//! [bicharacter]
//! expmat = [[1]]
//!
//! [space]
//! degrees = ["0", "1"]
//!
//! [shape]
//! summands = [[1, 1]]
//!
//! [bounds]
//! truncation = 4
//! ```

use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::group::{Bicharacter, FiniteAbelianGroup};
use crate::picture::Bounds;
use crate::sym::MixedShape;
use crate::tensor::GradedSpace;

#[derive(Debug, Clone)]
pub struct Config {
    pub name: String,
    pub chi: Bicharacter,
    pub space: GradedSpace,
    pub shape: MixedShape,
    pub bounds: Bounds,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    name: Option<String>,
    group: RawGroup,
    bicharacter: RawBicharacter,
    space: RawSpace,
    shape: Option<RawShape>,
    bounds: Option<RawBounds>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    factors: Spanned<Vec<u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBicharacter {
    expmat: Spanned<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    degrees: Spanned<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShape {
    summands: Spanned<Vec<(usize, usize)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    max_n: Option<usize>,
    max_dim: Option<usize>,
    truncation: Option<usize>,
}

fn line_of(text: &str, span: Range<usize>) -> usize {
    text[..span.start.min(text.len())].matches('\n').count() + 1
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}:{msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Config> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| line_of(text, s));
            Error::Config(format!("{line}: {}", e.message()))
        })?;
        let at = |span: Range<usize>, msg: String| {
            Error::Config(format!("{}: {msg}", line_of(text, span)))
        };

        let group = FiniteAbelianGroup::new(raw.group.factors.get_ref().clone())
            .map_err(|e| at(raw.group.factors.span(), e.to_string()))?;
        let expmat = &raw.bicharacter.expmat;
        let chi = Bicharacter::new(group, expmat.get_ref().clone())
            .map_err(|e| at(expmat.span(), e.to_string()))?;
        let report = chi.validate();
        if let Some(v) = report.violations.first() {
            return Err(at(expmat.span(), format!("invalid bicharacter: {v}")));
        }

        let degrees = &raw.space.degrees;
        let parsed: Vec<&str> = degrees.get_ref().iter().map(String::as_str).collect();
        let space = GradedSpace::from_residues(chi.clone(), &parsed)
            .map_err(|e| at(degrees.span(), e.to_string()))?;

        let shape = match &raw.shape {
            Some(s) => MixedShape::new(space.clone(), s.summands.get_ref().clone())
                .map_err(|e| at(s.summands.span(), e.to_string()))?,
            None => MixedShape::new(space.clone(), vec![(1, 1)])?,
        };

        let mut bounds = Bounds::default();
        if let Some(b) = raw.bounds {
            bounds.max_n = b.max_n.unwrap_or(bounds.max_n);
            bounds.max_dim = b.max_dim.unwrap_or(bounds.max_dim);
            bounds.truncation = b.truncation.unwrap_or(bounds.truncation);
        }
        if space.dim() > bounds.max_dim {
            return Err(at(
                degrees.span(),
                format!(
                    "dim V = {} exceeds max_dim = {}",
                    space.dim(),
                    bounds.max_dim
                ),
            ));
        }
        Ok(Config {
            name: raw.name.unwrap_or_else(|| "unnamed".into()),
            chi,
            space,
            shape,
            bounds,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPER: &str = r#"
name = "super"
[group]
factors = [2]
[bicharacter]
expmat = [[1]]
[space]
degrees = ["0", "1"]
"#;

    #[test]
    fn loads_super_matrix_case() {
        let c = Config::parse(SUPER).unwrap();
        assert_eq!((c.space.m(), c.space.n()), (1, 1));
        assert_eq!(c.shape.summands(), &[(1, 1)]);
        assert_eq!(c.bounds, Bounds::default());
    }

    #[test]
    fn reports_lines() {
        let bad = SUPER.replace("[[1]]", "[[1], [2]]");
        let msg = Config::parse(&bad).unwrap_err().to_string();
        assert!(msg.contains("6:"), "{msg}");
        let skew = SUPER.replace("factors = [2]", "factors = [4]");
        let msg = Config::parse(&skew).unwrap_err().to_string();
        assert!(msg.contains("invalid bicharacter"), "{msg}");
        let order = SUPER.replace(r#"["0", "1"]"#, r#"["1", "0"]"#);
        assert!(Config::parse(&order).is_err());
        assert!(Config::parse("[group]\nfactors = 2")
            .unwrap_err()
            .to_string()
            .contains("2:"));
    }
}
